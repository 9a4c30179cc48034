//! Small named groups, built as closures of permutations or of integer
//! matrices modulo a prime. Used as isomorphism targets.

use super::table::{close, AbstractGroup};

fn perm_group(degree: usize, gens: &[Vec<usize>]) -> AbstractGroup {
    let id: Vec<usize> = (0..degree).collect();
    // (x·y)(i) = y(x(i)): apply x first
    let (_, g) = close(id, gens, |x: &Vec<usize>, y: &Vec<usize>| Ok(x.iter().map(|&i| y[i]).collect()), |x| x.clone(), usize::MAX)
        .expect("finite permutation group");
    g
}

type ModMat = Vec<Vec<i64>>;

fn matrix_group(p: i64, gens: &[ModMat]) -> AbstractGroup {
    let k = gens[0].len();
    let id: ModMat = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    let mul = |a: &ModMat, b: &ModMat| -> crate::Result<ModMat> {
        Ok((0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum::<i64>().rem_euclid(p)).collect())
            .collect())
    };
    let gens: Vec<ModMat> = gens.iter().map(|g| g.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect()).collect();
    let (_, g) = close(id, &gens, mul, |x| x.clone(), usize::MAX).expect("finite matrix group");
    g
}

pub fn trivial() -> AbstractGroup {
    AbstractGroup::trivial()
}

pub fn cyclic(n: usize) -> AbstractGroup {
    if n == 1 {
        return trivial();
    }
    perm_group(n, &[(0..n).map(|i| (i + 1) % n).collect()])
}

/// Product of cyclic groups of the given orders.
pub fn abelian(orders: &[usize]) -> AbstractGroup {
    orders.iter().fold(trivial(), |acc, &k| acc.direct_product(&cyclic(k)))
}

pub fn klein() -> AbstractGroup {
    abelian(&[2, 2])
}

/// Dihedral group of order `2m`.
pub fn dihedral(m: usize) -> AbstractGroup {
    if m == 1 {
        return cyclic(2);
    }
    if m == 2 {
        return klein();
    }
    let rot: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
    let refl: Vec<usize> = (0..m).map(|i| (m - i) % m).collect();
    perm_group(m, &[rot, refl])
}

pub fn symmetric3() -> AbstractGroup {
    dihedral(3)
}

pub fn alternating4() -> AbstractGroup {
    perm_group(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

pub fn quaternion() -> AbstractGroup {
    matrix_group(3, &[vec![vec![0, -1], vec![1, 0]], vec![vec![1, 1], vec![1, -1]]])
}

pub fn sl23() -> AbstractGroup {
    matrix_group(3, &[vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![1, 1]]])
}

/// Affine maps `v ↦ Lv + t` of 𝔽₃² with `L` ranging over `⟨linear⟩`.
fn c3sq_by(linear: [[i64; 2]; 2]) -> AbstractGroup {
    let aff = |l: [[i64; 2]; 2], t: [i64; 2]| vec![vec![l[0][0], l[0][1], t[0]], vec![l[1][0], l[1][1], t[1]], vec![0, 0, 1]];
    let id = [[1, 0], [0, 1]];
    matrix_group(3, &[aff(id, [1, 0]), aff(id, [0, 1]), aff(linear, [0, 0])])
}

/// C₃² ⋊ C₂ with C₂ acting by −1.
pub fn c3sq_c2() -> AbstractGroup {
    c3sq_by([[-1, 0], [0, -1]])
}

/// C₃² ⋊ C₄ with C₄ acting by `(0 −1; 1 0)`.
pub fn c3sq_c4() -> AbstractGroup {
    c3sq_by([[0, -1], [1, 0]])
}

/// Named lookup for the CLI and verdict tables.
pub fn by_name(name: &str) -> Option<AbstractGroup> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    let g = match compact.as_str() {
        "trivial" | "c1" | "1" => trivial(),
        "klein" | "c2xc2" | "c2^2" | "v4" => klein(),
        "s3" | "d3" => symmetric3(),
        "a4" => alternating4(),
        "q8" => quaternion(),
        "sl(2,3)" | "sl23" => sl23(),
        "c3^2" | "c3xc3" => abelian(&[3, 3]),
        "c3^2:c2" | "c3^2xc2" | "c3^2|c2" | "c3^2rtimesc2" => c3sq_c2(),
        "c3^2:c4" | "c3^2|c4" | "c3^2rtimesc4" => c3sq_c4(),
        "c2xc4" => abelian(&[2, 4]),
        _ => {
            if let Some(n) = compact.strip_prefix('c').and_then(|s| s.parse::<usize>().ok()) {
                if (1..=1000).contains(&n) {
                    return Some(cyclic(n));
                }
            }
            if let Some(m) = compact.strip_prefix('d').and_then(|s| s.parse::<usize>().ok()) {
                if (1..=500).contains(&m) {
                    return Some(dihedral(m));
                }
            }
            return None;
        }
    };
    Some(g)
}
