//! Exact 3×3 linear algebra over a single cyclotomic field.
//!
//! Every function here assumes its inputs already share one conductor.

use crate::cyclo::CycNum;
use crate::error::{Error, Result};

pub type Vec3 = [CycNum; 3];
pub type Mat3 = [[CycNum; 3]; 3];

pub fn map3<T, U>(v: &[T; 3], f: impl Fn(&T) -> U) -> [U; 3] {
    [f(&v[0]), f(&v[1]), f(&v[2])]
}

pub fn mat_map(m: &Mat3, f: impl Fn(&CycNum) -> CycNum) -> Mat3 {
    [map3(&m[0], &f), map3(&m[1], &f), map3(&m[2], &f)]
}

pub fn try_mat_map(m: &Mat3, f: impl Fn(&CycNum) -> Result<CycNum>) -> Result<Mat3> {
    let row = |r: &[CycNum; 3]| -> Result<Vec3> { Ok([f(&r[0])?, f(&r[1])?, f(&r[2])?]) };
    Ok([row(&m[0])?, row(&m[1])?, row(&m[2])?])
}

pub fn identity(n: u64) -> Mat3 {
    let z = || CycNum::zero(n);
    let o = || CycNum::one(n);
    [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]]
}

pub fn diag(a: CycNum, b: CycNum, c: CycNum) -> Mat3 {
    let n = a.conductor();
    let z = || CycNum::zero(n);
    [[a, z(), z()], [z(), b, z()], [z(), z(), c]]
}

/// Common conductor of all entries.
pub fn mat_conductor(m: &Mat3) -> Result<u64> {
    let mut n = 1;
    for row in m {
        for x in row {
            n = crate::cyclo::join_conductors(n, x.conductor())?;
        }
    }
    Ok(n)
}

pub fn mat_embed(m: &Mat3, n: u64) -> Result<Mat3> {
    try_mat_map(m, |x| x.embed(n))
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let entry = |i: usize, j: usize| {
        let mut acc: Option<CycNum> = None;
        for k in 0..3 {
            if a[i][k].is_zero() || b[k][j].is_zero() {
                continue;
            }
            let t = &a[i][k] * &b[k][j];
            acc = Some(match acc {
                None => t,
                Some(s) => &s + &t,
            });
        }
        acc.unwrap_or_else(|| CycNum::zero(a[i][0].conductor()))
    };
    [
        [entry(0, 0), entry(0, 1), entry(0, 2)],
        [entry(1, 0), entry(1, 1), entry(1, 2)],
        [entry(2, 0), entry(2, 1), entry(2, 2)],
    ]
}

pub fn mat_vec(a: &Mat3, v: &Vec3) -> Vec3 {
    let row = |i: usize| &(&(&a[i][0] * &v[0]) + &(&a[i][1] * &v[1])) + &(&a[i][2] * &v[2]);
    [row(0), row(1), row(2)]
}

pub fn transpose(a: &Mat3) -> Mat3 {
    let e = |i: usize, j: usize| a[j][i].clone();
    [[e(0, 0), e(0, 1), e(0, 2)], [e(1, 0), e(1, 1), e(1, 2)], [e(2, 0), e(2, 1), e(2, 2)]]
}

fn minor(a: &Mat3, r0: usize, r1: usize, c0: usize, c1: usize) -> CycNum {
    &(&a[r0][c0] * &a[r1][c1]) - &(&a[r0][c1] * &a[r1][c0])
}

pub fn det(a: &Mat3) -> CycNum {
    let t0 = &a[0][0] * &minor(a, 1, 2, 1, 2);
    let t1 = &a[0][1] * &minor(a, 1, 2, 0, 2);
    let t2 = &a[0][2] * &minor(a, 1, 2, 0, 1);
    &(&t0 - &t1) + &t2
}

/// Adjugate, so that `a · adj(a) = det(a) · I`.
pub fn adjugate(a: &Mat3) -> Mat3 {
    let c = |r: usize, s: usize| {
        // cofactor of entry (r, s), placed at (s, r)
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != s).collect();
        let m = minor(a, rows[0], rows[1], cols[0], cols[1]);
        if (r + s) % 2 == 1 {
            -m
        } else {
            m
        }
    };
    [[c(0, 0), c(1, 0), c(2, 0)], [c(0, 1), c(1, 1), c(2, 1)], [c(0, 2), c(1, 2), c(2, 2)]]
}

pub fn inverse(a: &Mat3) -> Result<Mat3> {
    let d = det(a);
    if d.is_zero() {
        return Err(Error::Singular);
    }
    let di = d.inv()?;
    Ok(mat_map(&adjugate(a), |x| x * &di))
}

pub fn trace(a: &Mat3) -> CycNum {
    &(&a[0][0] + &a[1][1]) + &a[2][2]
}

/// Sum of the principal 2×2 minors (second characteristic coefficient).
pub fn principal_minor_sum(a: &Mat3) -> CycNum {
    &(&minor(a, 0, 1, 0, 1) + &minor(a, 0, 2, 0, 2)) + &minor(a, 1, 2, 1, 2)
}

/// Coefficients `(t1, t2, δ)` of the characteristic polynomial `x³ − t1 x² + t2 x − δ`.
pub fn char_coeffs(a: &Mat3) -> (CycNum, CycNum, CycNum) {
    (trace(a), principal_minor_sum(a), det(a))
}

pub fn char_eval(coeffs: &(CycNum, CycNum, CycNum), x: &CycNum) -> CycNum {
    let (t1, t2, d) = coeffs;
    // ((x − t1) x + t2) x − δ
    let s = x - t1;
    let s = &(&s * x) + t2;
    &(&s * x) - d
}

pub fn cross(u: &Vec3, v: &Vec3) -> Vec3 {
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

pub fn dot(u: &Vec3, v: &Vec3) -> CycNum {
    &(&(&u[0] * &v[0]) + &(&u[1] * &v[1])) + &(&u[2] * &v[2])
}

pub fn det_cols(u: &Vec3, v: &Vec3, w: &Vec3) -> CycNum {
    dot(&cross(u, v), w)
}

/// Basis of the null space, from reduced row echelon form.
pub fn kernel(a: &Mat3) -> Vec<Vec3> {
    let n = a[0][0].conductor();
    let mut m: Vec<Vec<CycNum>> = a.iter().map(|r| r.to_vec()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..3 {
        let Some(p) = (row..3).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for j in 0..3 {
            m[row][j] = &m[row][j] * &inv;
        }
        for r in 0..3 {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..3 {
                    let t = &f * &m[row][j];
                    m[r][j] = &m[r][j] - &t;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == 3 {
            break;
        }
    }
    let free: Vec<usize> = (0..3).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v: Vec<CycNum> = (0..3).map(|_| CycNum::zero(n)).collect();
            v[f] = CycNum::one(n);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[r][f];
            }
            [v[0].clone(), v[1].clone(), v[2].clone()]
        })
        .collect()
}

/// Null space of a `rows × cols` matrix given row by row, all entries at
/// conductor `n`.
pub fn null_space(rows: &[Vec<CycNum>], cols: usize, n: u64) -> Vec<Vec<CycNum>> {
    let mut m: Vec<Vec<CycNum>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for j in 0..cols {
            m[row][j] = &m[row][j] * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..cols {
                    let t = &f * &m[row][j];
                    m[r][j] = &m[r][j] - &t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v: Vec<CycNum> = (0..cols).map(|_| CycNum::zero(n)).collect();
            v[f] = CycNum::one(n);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[r][f];
            }
            v
        })
        .collect()
}

pub fn rank(a: &Mat3) -> usize {
    3 - kernel(a).len()
}
