//! The Hessian matrices M₀…M₅ over ℚ(ζ₃), the groups H₁…H₅ they generate,
//! and the configuration of twelve points fixed by elements of H₁.

use std::collections::HashMap;

use crate::cyclo::{join_conductors, CycNum, GaloisElt};
use crate::error::Result;
use crate::groups::{close, AbstractGroup, ProjGroup};
use crate::linalg;
use crate::projgeom::{ProjMat, ProjPoint};
use crate::rational::Rat;

pub const HESSIAN_ORDERS: [usize; 5] = [9, 18, 36, 72, 216];

pub const MATRIX_LITERALS: [&str; 6] = [
    "[[1,0,0],[0,z(3),0],[0,0,z(3)^2]]",
    "[[0,0,1],[1,0,0],[0,1,0]]",
    "[[1,0,0],[0,0,1],[0,1,0]]",
    "[[1,1,1],[1,z(3),z(3)^2],[1,z(3)^2,z(3)]]",
    "[[1,1,z(3)],[1,z(3),1],[z(3)^2,z(3),z(3)]]",
    "[[1,0,0],[0,1,0],[0,0,z(3)]]",
];

pub fn matrix(i: usize) -> ProjMat {
    ProjMat::parse(MATRIX_LITERALS[i]).expect("valid literal").embed(3).expect("conductor 3")
}

/// Closure of `M₀ … M_i`, for `i` in 1..=5.
pub fn hessian_group(i: usize) -> Result<ProjGroup> {
    assert!((1..=5).contains(&i), "Hessian groups are H1..H5");
    let gens: Vec<ProjMat> = (0..=i).map(matrix).collect();
    ProjGroup::closure(&gens)
}

/// Three non-collinear points fixed by a cyclic subgroup of H₁.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub generator: ProjMat,
    pub points: Vec<ProjPoint>,
}

#[derive(Clone, Debug)]
pub struct HessianLibrary {
    pub matrices: Vec<ProjMat>,
    /// `groups[i - 1]` is H_i.
    pub groups: Vec<ProjGroup>,
}

impl HessianLibrary {
    pub fn build() -> Result<HessianLibrary> {
        let matrices = (0..6).map(matrix).collect();
        let groups = (1..=5).map(hessian_group).collect::<Result<_>>()?;
        Ok(HessianLibrary { matrices, groups })
    }

    pub fn m(&self, i: usize) -> &ProjMat {
        &self.matrices[i]
    }

    pub fn h(&self, i: usize) -> &ProjGroup {
        &self.groups[i - 1]
    }

    /// `H_j / H_i`.
    pub fn quotient(&self, j: usize, i: usize) -> Result<AbstractGroup> {
        Ok(self.h(j).quotient(self.h(i))?.0)
    }

    /// For each i, whether the stated identity for σ(M_i) holds, with σ the
    /// automorphism ζ₃ ↦ ζ₃².
    pub fn galois_identity_check(&self) -> Result<[bool; 6]> {
        let sigma = GaloisElt::new(3, 2)?;
        let bar = |i: usize| self.m(i).galois(&sigma);
        let m = |i: usize| self.m(i);
        Ok([
            bar(0)?.proj_eq(&m(0).inverse()),
            bar(1)?.proj_eq(m(1)),
            bar(2)?.proj_eq(m(2)),
            bar(3)?.proj_eq(&m(3).inverse()),
            bar(4)?.proj_eq(&m(4).mul(m(3))?),
            bar(5)?.proj_eq(&m(5).inverse()),
        ])
    }

    /// The four triangles, one per cyclic subgroup of H₁, in order of
    /// discovery among the elements of H₁.
    pub fn triangles(&self) -> Result<Vec<Triangle>> {
        let h1 = self.h(1);
        let t = h1.table();
        let mut covered = vec![false; h1.order()];
        covered[0] = true;
        let mut out = Vec::new();
        for i in 1..h1.order() {
            if covered[i] {
                continue;
            }
            for j in t.generated(&[i]) {
                covered[j] = true;
            }
            let g = h1.element(i).clone();
            let points = g.fixed_locus()?.points().to_vec();
            out.push(Triangle { generator: g, points });
        }
        Ok(out)
    }

    /// Common conductor of all twelve points.
    fn point_conductor(tris: &[Triangle]) -> Result<u64> {
        tris.iter().flat_map(|t| &t.points).try_fold(3, |acc, p| join_conductors(acc, p.conductor()))
    }

    /// Permutation of the triangles induced by `g`.
    pub fn triangle_permutation(&self, tris: &[Triangle], g: &ProjMat) -> Result<Vec<usize>> {
        let n = join_conductors(Self::point_conductor(tris)?, g.conductor())?;
        let mut which: HashMap<Vec<Rat>, usize> = HashMap::new();
        for (k, t) in tris.iter().enumerate() {
            for p in &t.points {
                which.insert(p.key_at(n)?, k);
            }
        }
        tris.iter()
            .map(|t| {
                let q = g.apply_point(&t.points[0])?;
                Ok(*which.get(&q.key_at(n)?).expect("triangles are permuted"))
            })
            .collect()
    }

    /// Image of `g` in the symmetric group on the four triangles.
    pub fn triangle_action(&self, g: &ProjGroup) -> Result<AbstractGroup> {
        let tris = self.triangles()?;
        let perms: Vec<Vec<usize>> =
            g.generators().iter().map(|m| self.triangle_permutation(&tris, m)).collect::<Result<_>>()?;
        let id: Vec<usize> = (0..tris.len()).collect();
        let (_, image) = close(id, &perms, |x: &Vec<usize>, y: &Vec<usize>| Ok(x.iter().map(|&i| y[i]).collect()), |x| x.clone(), usize::MAX)?;
        Ok(image)
    }

    pub fn h4_klein_action(&self) -> Result<AbstractGroup> {
        self.triangle_action(self.h(4))
    }

    /// Lines through two points of different triangles, each checked to meet
    /// every triangle exactly once. Returns `(lines checked, lines passing)`.
    pub fn cross_triangle_lines(&self) -> Result<(usize, usize)> {
        let tris = self.triangles()?;
        let mut checked = 0;
        let mut passing = 0;
        for a in 0..tris.len() {
            for b in a + 1..tris.len() {
                for p in &tris[a].points {
                    for q in &tris[b].points {
                        let line = p.line_through(q)?;
                        checked += 1;
                        let ok = tris.iter().all(|t| t.points.iter().filter(|x| line.contains(x)).count() == 1);
                        passing += usize::from(ok);
                    }
                }
            }
        }
        Ok((checked, passing))
    }

    /// Whether every triangle together with any point of another triangle
    /// has no three collinear points.
    pub fn general_position(&self) -> Result<bool> {
        let tris = self.triangles()?;
        let n = Self::point_conductor(&tris)?;
        for (i, t) in tris.iter().enumerate() {
            for (j, u) in tris.iter().enumerate() {
                if i == j {
                    continue;
                }
                for q in &u.points {
                    let mut pts: Vec<linalg::Vec3> = t.points.iter().map(|p| p.coords_at(n)).collect::<Result<_>>()?;
                    pts.push(q.coords_at(n)?);
                    for skip in 0..4 {
                        let tri: Vec<&linalg::Vec3> = pts.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, v)| v).collect();
                        if linalg::det_cols(tri[0], tri[1], tri[2]).is_zero() {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// The twelve points of the configuration.
    pub fn configuration_points(&self) -> Result<Vec<ProjPoint>> {
        Ok(self.triangles()?.into_iter().flat_map(|t| t.points).collect())
    }
}

/// ζ₃ as an element of ℚ(ζ₃).
pub fn zeta3() -> CycNum {
    CycNum::zeta(3, 1)
}
