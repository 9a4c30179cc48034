//! Canonical presentations of abelian subgroups, recognition of the small
//! Hessian groups up to conjugacy, coarse type labels, and the
//! critical/lucky decision.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::arith::{lcm, two_adic};
use crate::cyclo::{check_conductor, CycNum};
use crate::error::{Error, Result};
use crate::groups::ProjGroup;
use crate::linalg::{self, Mat3, Vec3};
use crate::projgeom::{ProjMat, ProjPoint};

/// The base field, reduced to the one property the decision depends on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldProfile {
    pub label: String,
    pub has_zeta12: bool,
}

impl FieldProfile {
    pub fn new(label: &str, has_zeta12: bool) -> FieldProfile {
        FieldProfile { label: label.to_string(), has_zeta12 }
    }

    pub fn rationals() -> FieldProfile {
        FieldProfile::new("Q", false)
    }

    /// Accepts `Q`, `R`, `Q(zeta12)`, `C` and `custom` (no ζ₁₂ unless
    /// overridden by the caller).
    pub fn parse(s: &str) -> Result<FieldProfile> {
        let has = match s.trim() {
            "Q" | "R" | "custom" => false,
            "Q(zeta12)" | "C" | "Qbar" => true,
            other => return Err(Error::Parse(format!("unknown field {other:?}"))),
        };
        Ok(FieldProfile::new(s.trim(), has))
    }
}

/// Parameters `(a, n, d)` such that the group is generated by
/// diag(ζ_a,1,1), diag(1,ζ_a,1), diag(ζ_{an}, ζ_{an}^d, 1) once coordinate
/// `i` of the template is placed at coordinate `permutation[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbelianPresentation {
    pub a: u64,
    pub n: u64,
    pub d: u64,
    pub permutation: [usize; 3],
}

impl AbelianPresentation {
    pub fn exponent(&self) -> u64 {
        self.a * self.n
    }

    /// d² − d + 1 ≡ 0 (mod n).
    pub fn eisenstein(&self) -> bool {
        let (n, d) = (self.n, self.d % self.n.max(1));
        (d * d + n - d + 1) % n == 0
    }

    pub fn clause_one(&self) -> bool {
        self.eisenstein() && self.exponent() % 3 == 0
    }

    /// `n = 2^b·m` with `m` odd, `b ≥ min_b`, d² ≡ 1 (mod m), d ≡ ±1 (mod 2^b).
    pub fn clause_two(&self, min_b: u32) -> bool {
        let b = two_adic(self.n);
        let odd = self.n >> b;
        let two = 1u64 << b;
        b >= min_b && (self.d * self.d) % odd == 1 % odd && {
            let r = self.d % two;
            r == 1 % two || r == two - 1
        }
    }

    /// Diagonal generators of the template, permuted into place.
    pub fn generators(&self) -> Vec<ProjMat> {
        let e = self.exponent();
        let place = |t: [CycNum; 3]| -> ProjMat {
            let mut v: Vec<CycNum> = vec![CycNum::one(e); 3];
            for (i, x) in t.into_iter().enumerate() {
                v[self.permutation[i]] = x;
            }
            ProjMat::diag(&v[0], &v[1], &v[2]).expect("nonzero diagonal").embed(e).expect("template conductor")
        };
        let za = CycNum::zeta_in(self.a, e, 1);
        let one = CycNum::one(e);
        vec![
            place([za.clone(), one.clone(), one.clone()]),
            place([one.clone(), za, one.clone()]),
            place([CycNum::zeta(e, 1), CycNum::zeta(e, self.d as i64), one]),
        ]
    }
}

impl fmt::Display for AbelianPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, n={}, d={}, perm={:?})", self.a, self.n, self.d, self.permutation)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HessianLabel {
    H1,
    H2,
    H3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagonalization {
    /// Columns are common eigenvectors.
    Diagonal { basis: Mat3 },
    Hessian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Critical,
    Lucky,
    Neither,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Critical => "critical",
            Status::Lucky => "lucky",
            Status::Neither => "neither",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Presentation(AbelianPresentation),
    Hessian(HessianLabel),
}

/// Outcome when the second abelian clause also admits b = 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternativeReading {
    pub status: Status,
    pub rule: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalityVerdict {
    pub status: Status,
    pub rule: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_zero_reading: Option<AlternativeReading>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MbdLabel {
    A,
    B,
    C,
    D,
    E,
    #[serde(rename = "abelian-diagonal")]
    AbelianDiagonal,
    H1,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MbdType {
    pub label: MbdLabel,
    pub detail: String,
}

pub const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Finite-order lifts of the generators and their eigenvalues, all over one
/// conductor.
struct Eigenframe {
    n: u64,
    lifts: Vec<Mat3>,
    spectra: Vec<Vec<CycNum>>,
}

fn generators_or_identity(g: &ProjGroup) -> Vec<ProjMat> {
    let gens: Vec<ProjMat> = g.generators().iter().filter(|m| !m.is_identity()).cloned().collect();
    if gens.is_empty() {
        vec![ProjMat::identity(g.conductor())]
    } else {
        gens
    }
}

fn eigenframe(g: &ProjGroup) -> Result<Eigenframe> {
    let raw: Vec<(Mat3, u64, Vec<CycNum>)> = generators_or_identity(g).iter().map(|m| m.spectrum()).collect::<Result<_>>()?;
    let n = check_conductor(raw.iter().fold(g.conductor(), |acc, r| lcm(acc, r.1)))?;
    let mut lifts = Vec::new();
    let mut spectra = Vec::new();
    for (a, _, eig) in raw {
        lifts.push(linalg::mat_embed(&a, n)?);
        spectra.push(eig.iter().map(|x| x.embed(n)).collect::<Result<_>>()?);
    }
    Ok(Eigenframe { n, lifts, spectra })
}

/// Subspaces on which every matrix acts by a scalar, from successive
/// intersections of eigenspaces.
fn common_eigenspaces(mats: &[Mat3], spectra: &[Vec<CycNum>], n: u64) -> Vec<Vec<Vec3>> {
    let mut spaces: Vec<Vec<Vec3>> = vec![linalg::identity(n).to_vec()];
    for (a, eig) in mats.iter().zip(spectra) {
        let mut next = Vec::new();
        for basis in &spaces {
            for mu in eig {
                let shifted: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| if i == j { &a[i][j] - mu } else { a[i][j].clone() }));
                let images: Vec<Vec3> = basis.iter().map(|b| linalg::mat_vec(&shifted, b)).collect();
                let rows: Vec<Vec<CycNum>> = (0..3).map(|r| images.iter().map(|v| v[r].clone()).collect()).collect();
                let sub: Vec<Vec3> = linalg::null_space(&rows, basis.len(), n)
                    .into_iter()
                    .map(|x| {
                        std::array::from_fn(|r| {
                            x.iter().zip(basis).fold(CycNum::zero(n), |acc, (c, b)| &acc + &(c * &b[r]))
                        })
                    })
                    .collect();
                if !sub.is_empty() {
                    next.push(sub);
                }
            }
        }
        spaces = next;
    }
    spaces
}

fn is_diagonal(m: &Mat3) -> bool {
    (0..3).all(|i| (0..3).all(|j| i == j || m[i][j].is_zero()))
}

fn lifts_commute(lifts: &[Mat3]) -> bool {
    lifts.iter().enumerate().all(|(i, a)| lifts[i + 1..].iter().all(|b| linalg::mat_mul(a, b) == linalg::mat_mul(b, a)))
}

/// Common eigenbasis of an abelian group, or the certificate that it is the
/// non-diagonalizable C₃² (order 9, exponent 3, no common fixed point).
pub fn diagonalize_abelian(g: &ProjGroup) -> Result<Diagonalization> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if g.generators().iter().all(|m| is_diagonal(m.lift())) {
        return Ok(Diagonalization::Diagonal { basis: linalg::identity(g.conductor()) });
    }
    let frame = eigenframe(g)?;
    let spaces = common_eigenspaces(&frame.lifts, &frame.spectra, frame.n);
    if lifts_commute(&frame.lifts) {
        let cols: Vec<Vec3> = spaces.into_iter().flatten().collect();
        if cols.len() != 3 {
            return Err(Error::Unclassifiable(format!("{} common eigenvectors for commuting lifts", cols.len())));
        }
        let basis: Mat3 = std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r].clone()));
        return Ok(Diagonalization::Diagonal { basis });
    }
    if g.order() == 9 && g.table().exponent() == 3 && spaces.is_empty() {
        return Ok(Diagonalization::Hessian);
    }
    Err(Error::Unclassifiable(format!(
        "abelian group of order {} with non-commuting lifts and {} common eigenspaces",
        g.order(),
        spaces.len()
    )))
}

/// Discrete logarithm of a root of unity of order dividing `e`.
fn root_exponent(x: &CycNum, e: u64) -> Result<u64> {
    (0..e)
        .find(|&k| CycNum::zeta(e, k as i64) == *x)
        .ok_or_else(|| Error::Unclassifiable("diagonal ratio is not a root of unity of the group exponent".into()))
}

/// Exponent pairs (relative to the third coordinate) of every element of a
/// diagonal group, expressed in `basis`.
fn exponent_pairs(g: &ProjGroup, basis: &Mat3) -> Result<(u64, HashSet<(u64, u64)>)> {
    let e = g.table().exponent();
    let gens = generators_or_identity(g);
    let n = gens.iter().try_fold(linalg::mat_conductor(basis)?, |acc, m| crate::cyclo::join_conductors(acc, m.conductor()))?;
    let p = linalg::mat_embed(basis, n)?;
    let pinv = linalg::inverse(&p)?;
    let mut steps = Vec::new();
    for m in &gens {
        let d = linalg::mat_mul(&linalg::mat_mul(&pinv, &linalg::mat_embed(m.lift(), n)?), &p);
        if !is_diagonal(&d) {
            return Err(Error::NotDiagonal);
        }
        let x = root_exponent(&d[0][0].div(&d[2][2])?, e)?;
        let y = root_exponent(&d[1][1].div(&d[2][2])?, e)?;
        steps.push((x, y));
    }
    let mut seen = HashSet::from([(0, 0)]);
    let mut queue = VecDeque::from([(0, 0)]);
    while let Some((x, y)) = queue.pop_front() {
        for &(s, t) in &steps {
            let next = ((x + s) % e, (y + t) % e);
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    if seen.len() != g.order() {
        return Err(Error::Unclassifiable(format!("exponent lattice of size {} for a group of order {}", seen.len(), g.order())));
    }
    Ok((e, seen))
}

fn presentations_from(order: usize, e: u64, pairs: &HashSet<(u64, u64)>) -> Vec<AbelianPresentation> {
    let order = order as u64;
    if order % e != 0 {
        return Vec::new();
    }
    let a = order / e;
    if e % a != 0 {
        return Vec::new();
    }
    let n = e / a;
    let mut out = Vec::new();
    for perm in PERMUTATIONS {
        let moved: HashSet<(u64, u64)> = pairs
            .iter()
            .map(|&(x, y)| {
                let t = [x, y, 0];
                ((t[perm[0]] + e - t[perm[2]]) % e, (t[perm[1]] + e - t[perm[2]]) % e)
            })
            .collect();
        if !moved.contains(&(n % e, 0)) || !moved.contains(&(0, n % e)) {
            continue;
        }
        for d in 0..e {
            if moved.contains(&(1 % e, d)) {
                out.push(AbelianPresentation { a, n, d, permutation: perm });
            }
        }
    }
    out
}

/// All template presentations of a group whose generators are diagonal.
pub fn abelian_presentations(g: &ProjGroup) -> Result<Vec<AbelianPresentation>> {
    if !g.generators().iter().all(|m| is_diagonal(m.lift())) {
        return Err(Error::NotDiagonal);
    }
    let (e, pairs) = exponent_pairs(g, &linalg::identity(g.conductor()))?;
    Ok(presentations_from(g.order(), e, &pairs))
}

/// Presentations of an abelian group after diagonalizing it; `None` for
/// the non-diagonalizable C₃².
pub fn presentations_up_to_conjugacy(g: &ProjGroup) -> Result<Option<Vec<AbelianPresentation>>> {
    match diagonalize_abelian(g)? {
        Diagonalization::Hessian => Ok(None),
        Diagonalization::Diagonal { basis } => {
            let (e, pairs) = exponent_pairs(g, &basis)?;
            Ok(Some(presentations_from(g.order(), e, &pairs)))
        }
    }
}

fn is_hessian_c3sq(g: &ProjGroup) -> Result<bool> {
    Ok(g.order() == 9 && g.is_abelian() && g.table().exponent() == 3 && diagonalize_abelian(g)? == Diagonalization::Hessian)
}

/// Normal subgroups of order 9 that are conjugate to H₁.
fn hessian_kernels(g: &ProjGroup) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for k in g.table().normal_subgroups_of_order(9) {
        if is_hessian_c3sq(&g.subgroup(&k)?)? {
            out.push(k);
        }
    }
    Ok(out)
}

pub fn recognize_hessian(g: &ProjGroup) -> Option<HessianLabel> {
    match g.order() {
        9 => is_hessian_c3sq(g).ok()?.then_some(HessianLabel::H1),
        18 | 36 => {
            let t = g.table();
            for k in hessian_kernels(g).ok()? {
                let Ok((q, proj)) = t.quotient(&k) else { continue };
                if q.exponent() != q.order() as u64 {
                    continue;
                }
                let Some(x) = (0..t.order()).find(|&x| q.element_order(proj[x]) == q.order() as u64) else {
                    continue;
                };
                // x² must invert the kernel; for C₂ that is x itself acting by −1.
                let y = if q.order() == 2 { x } else { t.mul(x, x) };
                if k.iter().all(|&s| t.conj(y, s) == t.inv(s)) {
                    return Some(if q.order() == 2 { HessianLabel::H2 } else { HessianLabel::H3 });
                }
            }
            None
        }
        _ => None,
    }
}

fn decide(pres: &[AbelianPresentation], min_b: u32) -> (Status, String, Option<Witness>) {
    if let Some(p) = pres.iter().find(|p| p.clause_one()) {
        return (Status::Critical, "definition-clause-1".into(), Some(Witness::Presentation(*p)));
    }
    if let Some(p) = pres.iter().find(|p| p.clause_two(min_b)) {
        let rule = if min_b == 0 { "definition-clause-2-b0" } else { "definition-clause-2" };
        return (Status::Critical, rule.into(), Some(Witness::Presentation(*p)));
    }
    if let Some(p) = pres.iter().find(|p| p.eisenstein()) {
        return (Status::Neither, "lucky-exclusion-clause-1".into(), Some(Witness::Presentation(*p)));
    }
    (Status::Lucky, "definition-lucky".into(), None)
}

pub fn criticality(g: &ProjGroup, field: &FieldProfile) -> Result<CriticalityVerdict> {
    let verdict = |status, rule: &str, witness| CriticalityVerdict { status, rule: rule.into(), witness, b_zero_reading: None };
    if g.is_abelian() {
        let Some(pres) = presentations_up_to_conjugacy(g)? else {
            return Ok(verdict(Status::Neither, "lucky-exclusion-H1", Some(Witness::Hessian(HessianLabel::H1))));
        };
        let (status, rule, witness) = decide(&pres, 1);
        let (alt_status, alt_rule, _) = decide(&pres, 0);
        let b_zero_reading = (alt_status != status).then_some(AlternativeReading { status: alt_status, rule: alt_rule });
        return Ok(CriticalityVerdict { status, rule, witness, b_zero_reading });
    }
    Ok(match recognize_hessian(g) {
        Some(HessianLabel::H2) => verdict(Status::Critical, "definition-H2", Some(Witness::Hessian(HessianLabel::H2))),
        Some(HessianLabel::H3) if !field.has_zeta12 => verdict(Status::Critical, "definition-H3", Some(Witness::Hessian(HessianLabel::H3))),
        Some(HessianLabel::H3) => verdict(Status::Lucky, "definition-H3-zeta12", Some(Witness::Hessian(HessianLabel::H3))),
        _ => verdict(Status::Lucky, "definition-lucky", None),
    })
}

fn has_fixed_point_off_invariant_line(g: &ProjGroup) -> Result<bool> {
    let frame = eigenframe(g)?;
    let points = common_eigenspaces(&frame.lifts, &frame.spectra, frame.n);
    if points.is_empty() {
        return Ok(false);
    }
    let duals: Vec<Mat3> = frame.lifts.iter().map(|a| linalg::transpose(&linalg::adjugate(a))).collect();
    let dual_spectra: Vec<Vec<CycNum>> = frame
        .lifts
        .iter()
        .zip(&frame.spectra)
        .map(|(a, eig)| {
            let det = linalg::det(a);
            eig.iter().map(|mu| det.div(mu)).collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let lines = common_eigenspaces(&duals, &dual_spectra, frame.n);
    Ok(points.iter().flatten().any(|p| lines.iter().flatten().any(|l| !linalg::dot(l, p).is_zero())))
}

/// Orbits of size three spanning the plane, with whether some generator
/// acts on them as a transposition.
fn invariant_triangles(g: &ProjGroup) -> Result<Vec<(Vec<ProjPoint>, bool)>> {
    let mut candidates = Vec::new();
    for m in g.elements().iter().filter(|m| !m.is_identity()) {
        candidates.extend(m.fixed_locus()?.points().iter().cloned());
    }
    let n = candidates.iter().try_fold(g.conductor(), |acc, p| crate::cyclo::join_conductors(acc, p.conductor()))?;
    let mut seen: HashMap<Vec<crate::rational::Rat>, ()> = HashMap::new();
    let gens = generators_or_identity(g);
    let mut out = Vec::new();
    for p in candidates {
        if seen.contains_key(&p.key_at(n)?) {
            continue;
        }
        let mut orbit = vec![p.clone()];
        let mut i = 0;
        while i < orbit.len() && orbit.len() <= 3 {
            for m in &gens {
                let q = m.apply_point(&orbit[i])?;
                if !orbit.contains(&q) {
                    orbit.push(q);
                }
            }
            i += 1;
        }
        for q in &orbit {
            seen.insert(q.key_at(n)?, ());
        }
        if orbit.len() != 3 {
            continue;
        }
        let cols: Vec<Vec3> = orbit.iter().map(|q| q.coords_at(n)).collect::<Result<_>>()?;
        if linalg::det_cols(&cols[0], &cols[1], &cols[2]).is_zero() {
            continue;
        }
        let mut transposition = false;
        for m in &gens {
            let fixed = orbit.iter().map(|q| m.apply_point(q).map(|r| r == *q)).collect::<Result<Vec<bool>>>()?;
            transposition |= fixed.iter().filter(|&&f| f).count() == 1;
        }
        out.push((orbit, transposition));
    }
    Ok(out)
}

/// Coarse type in the classical list of finite subgroups of PGL₃.
pub fn mbd_type(g: &ProjGroup) -> Result<MbdType> {
    let mbd = |label, detail: String| Ok(MbdType { label, detail });
    if g.is_abelian() {
        return match diagonalize_abelian(g)? {
            Diagonalization::Hessian => mbd(MbdLabel::H1, "non-diagonalizable C3^2".into()),
            Diagonalization::Diagonal { .. } => mbd(MbdLabel::AbelianDiagonal, format!("order {}", g.order())),
        };
    }
    if has_fixed_point_off_invariant_line(g)? {
        return mbd(MbdLabel::A, "common fixed point off a common invariant line".into());
    }
    let order = g.order();
    if [36, 72, 216].contains(&order) {
        if let Some(k) = hessian_kernels(g)?.first() {
            return mbd(MbdLabel::D, format!("order {order}, normal Hessian C3^2 of index {}", order / k.len()));
        }
    }
    if [60, 168, 360].contains(&order) {
        let t = g.table();
        if t.derived_subgroup().len() == order && t.center().len() == 1 {
            return mbd(MbdLabel::E, format!("simple of order {order}"));
        }
    }
    if let Some((_, transposition)) = invariant_triangles(g)?.into_iter().next() {
        let hessian = if recognize_hessian(g) == Some(HessianLabel::H2) { "; Hessian H2" } else { "" };
        return if transposition {
            mbd(MbdLabel::C, format!("invariant triangle, kernel of order {}, image S3{hessian}", order / 6))
        } else {
            mbd(MbdLabel::B, format!("invariant triangle, kernel of order {}, image C3", order / 3))
        };
    }
    Err(Error::Unclassifiable(format!("order {order}: no fixed flag, Hessian kernel, simple structure or invariant triangle")))
}
