//! Projective 3×3 matrices, points and lines over cyclotomic fields.
//!
//! A [`ProjMat`] keeps a working lift used for products and eigen
//! computations. The canonical representative, obtained by scaling the first
//! nonzero entry (row-major) to 1, is built on demand: over large conductors
//! the inverse of that entry is expensive. Equality cross-multiplies lifts,
//! and hashing uses the entry ratios reduced modulo a fixed prime.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::arith::{gcd, lcm, mod_inverse};
use crate::cyclo::{check_conductor, join_conductors, CycNum, GaloisElt};
use crate::error::{Error, Result};
use crate::groups::ProjGroup;
use crate::linalg::{self, Mat3, Vec3};
use crate::parse::parse_matrix;
use crate::rational::Rat;

pub const DEFAULT_ORDER_BOUND: u64 = 2000;

#[derive(Clone, Debug)]
pub struct ProjMat {
    conductor: u64,
    lift: Mat3,
    canon: OnceLock<Mat3>,
    fingerprint: [u64; 9],
}

/// Hash key of a projective class: hashes the fingerprint, compares exactly.
#[derive(Clone, Debug)]
pub struct ProjKey(ProjMat);

impl Hash for ProjKey {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.conductor.hash(state);
        self.0.fingerprint.hash(state);
    }
}

impl PartialEq for ProjKey {
    fn eq(&self, other: &ProjKey) -> bool {
        self.0.proj_eq(&other.0)
    }
}

impl Eq for ProjKey {}

/// Ratios `m_ij / pivot` reduced modulo the conductor's fixed prime.
fn ratio_residues(n: u64, m: &Mat3) -> Option<[u64; 9]> {
    let residue = |x: &CycNum| -> Option<(u64, u64)> {
        if x.conductor() == n {
            x.reduce_mod_prime()
        } else {
            x.embed(n).ok()?.reduce_mod_prime()
        }
    };
    let (pivot, p) = residue(first_nonzero(m))?;
    let inv = mod_inverse(pivot, p)?;
    let mut out = [0u64; 9];
    for (o, x) in out.iter_mut().zip(m.iter().flatten()) {
        *o = residue(x)?.0 * inv % p;
    }
    Some(out)
}

fn first_nonzero(m: &Mat3) -> &CycNum {
    m.iter().flatten().find(|x| !x.is_zero()).expect("invertible matrix has a nonzero entry")
}

fn canonical(m: &Mat3) -> Mat3 {
    let first = first_nonzero(m);
    if first.is_one() {
        return m.clone();
    }
    let inv = first.inv().expect("nonzero");
    linalg::mat_map(m, |x| x * &inv)
}

/// `Some(λ)` when `m = λ I`.
fn scalar_of(m: &Mat3) -> Option<CycNum> {
    for i in 0..3 {
        for j in 0..3 {
            if i != j && !m[i][j].is_zero() {
                return None;
            }
        }
    }
    (m[0][0] == m[1][1] && m[1][1] == m[2][2]).then(|| m[0][0].clone())
}

impl ProjMat {
    /// Entries are embedded into their common conductor.
    pub fn new(entries: Mat3) -> Result<ProjMat> {
        let n = linalg::mat_conductor(&entries)?;
        let lift = linalg::mat_embed(&entries, n)?;
        if linalg::det(&lift).is_zero() {
            return Err(Error::Singular);
        }
        Ok(Self::from_lift(n, lift))
    }

    fn from_lift(conductor: u64, lift: Mat3) -> ProjMat {
        let canon = OnceLock::new();
        // The ratios are class invariants; when this lift cannot be reduced,
        // the canonical representative decides.
        let fingerprint = ratio_residues(conductor, &lift).unwrap_or_else(|| {
            let c = canon.get_or_init(|| canonical(&lift));
            ratio_residues(conductor, c).unwrap_or([u64::MAX; 9])
        });
        ProjMat { conductor, lift, canon, fingerprint }
    }

    pub fn parse(s: &str) -> Result<ProjMat> {
        Self::new(parse_matrix(s)?)
    }

    pub fn identity(n: u64) -> ProjMat {
        Self::from_lift(n, linalg::identity(n))
    }

    pub fn diag(a: &CycNum, b: &CycNum, c: &CycNum) -> Result<ProjMat> {
        let n = join_conductors(join_conductors(a.conductor(), b.conductor())?, c.conductor())?;
        Self::new(linalg::diag(a.embed(n)?, b.embed(n)?, c.embed(n)?))
    }

    /// Matrix with integer entries.
    pub fn from_ints(rows: [[i64; 3]; 3]) -> Result<ProjMat> {
        let e = |i: usize, j: usize| CycNum::int(rows[i][j]);
        Self::new([[e(0, 0), e(0, 1), e(0, 2)], [e(1, 0), e(1, 1), e(1, 2)], [e(2, 0), e(2, 1), e(2, 2)]])
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn lift(&self) -> &Mat3 {
        &self.lift
    }

    pub fn canonical(&self) -> &Mat3 {
        self.canon.get_or_init(|| canonical(&self.lift))
    }

    pub fn embed(&self, n: u64) -> Result<ProjMat> {
        if n == self.conductor {
            return Ok(self.clone());
        }
        Ok(Self::from_lift(n, linalg::mat_embed(&self.lift, n)?))
    }

    /// Hash key of the projective class at this matrix's own conductor.
    pub fn key(&self) -> ProjKey {
        ProjKey(self.clone())
    }

    pub fn is_identity(&self) -> bool {
        scalar_of(&self.lift).is_some()
    }

    /// `A ~ B` iff `A · b_p = B · a_p` at the common pivot position `p`.
    pub fn proj_eq(&self, other: &ProjMat) -> bool {
        if self.conductor != other.conductor {
            let Ok(n) = join_conductors(self.conductor, other.conductor) else { return false };
            return match (self.embed(n), other.embed(n)) {
                (Ok(a), Ok(b)) => a.proj_eq(&b),
                _ => false,
            };
        }
        if self.fingerprint != other.fingerprint {
            return false;
        }
        let (a, b) = (self.lift.iter().flatten(), other.lift.iter().flatten());
        if a.clone().zip(b.clone()).any(|(x, y)| x.is_zero() != y.is_zero()) {
            return false;
        }
        let (pa, pb) = (first_nonzero(&self.lift), first_nonzero(&other.lift));
        a.zip(b).all(|(x, y)| x.is_zero() || &(x * pb) == &(y * pa))
    }

    pub fn mul(&self, other: &ProjMat) -> Result<ProjMat> {
        if self.conductor == other.conductor {
            return Ok(Self::from_lift(self.conductor, linalg::mat_mul(&self.lift, &other.lift)));
        }
        let n = join_conductors(self.conductor, other.conductor)?;
        self.embed(n)?.mul(&other.embed(n)?)
    }

    /// Inverse via the adjugate, which keeps finite-order lifts finite-order.
    pub fn inverse(&self) -> ProjMat {
        Self::from_lift(self.conductor, linalg::adjugate(&self.lift))
    }

    pub fn pow(&self, e: i64) -> ProjMat {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = ProjMat::identity(self.conductor);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).expect("same conductor");
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).expect("same conductor");
            }
        }
        acc
    }

    /// Inverse of the lift itself, so `A · A⁻¹ = I` on the nose.
    pub fn exact_inverse(&self) -> Result<ProjMat> {
        Ok(Self::from_lift(self.conductor, linalg::inverse(&self.lift)?))
    }

    /// `h · self · h⁻¹`, with the exact inverse so a finite-order lift stays
    /// finite-order.
    pub fn conjugate_by(&self, h: &ProjMat) -> Result<ProjMat> {
        h.mul(self)?.mul(&h.exact_inverse()?)
    }

    /// Apply a Galois automorphism entrywise.
    pub fn galois(&self, sigma: &GaloisElt) -> Result<ProjMat> {
        let lift = linalg::try_mat_map(&self.lift, |x| sigma.apply(x))?;
        Ok(Self::from_lift(sigma.conductor(), lift))
    }

    pub fn proj_order(&self) -> Result<u64> {
        self.proj_order_bounded(DEFAULT_ORDER_BOUND)
    }

    pub fn proj_order_bounded(&self, bound: u64) -> Result<u64> {
        Ok(self.order_and_scalar(bound)?.0)
    }

    /// Least `m` with `lift^m = λ I`, together with `λ`.
    fn order_and_scalar(&self, bound: u64) -> Result<(u64, CycNum)> {
        let mut p = self.lift.clone();
        for m in 1..=bound {
            if let Some(l) = scalar_of(&p) {
                return Ok((m, l));
            }
            p = linalg::mat_mul(&p, &self.lift);
        }
        Err(Error::OrderBoundExceeded { bound })
    }

    /// A lift `A` with `A^m` a root-of-unity scalar, where `m` is the
    /// projective order. May live over a larger conductor.
    pub fn finite_lift(&self) -> Result<ProjMat> {
        let (m, lambda) = self.order_and_scalar(DEFAULT_ORDER_BOUND)?;
        if lambda.root_of_unity_order().is_some() {
            return Ok(self.clone());
        }
        let canon = Self::from_lift(self.conductor, self.canonical().clone());
        let (_, lc) = canon.order_and_scalar(m)?;
        if lc.root_of_unity_order().is_some() {
            return Ok(canon);
        }
        if gcd(3, m) == 1 {
            // det(A)^m = λ³, so A · λ^k / det^s has m-th power 1 when 3s = 1 + km.
            let s = if m == 1 { 1 } else { mod_inverse(3, m).expect("coprime") };
            let k = ((3 * s - 1) / m) as i64;
            let det = linalg::det(&self.lift);
            let c = lambda.pow(k)?.div(&det.pow(s as i64)?)?;
            let lift = linalg::mat_map(&self.lift, |x| x * &c);
            return Ok(Self::from_lift(self.conductor, lift));
        }
        self.trace_normalized(m, &lambda)
    }

    /// Recover an eigenvalue μ from traces of powers, then scale by μ⁻¹.
    fn trace_normalized(&self, m: u64, lambda: &CycNum) -> Result<ProjMat> {
        let n = join_conductors(self.conductor, m)?;
        let a = linalg::mat_embed(&self.lift, n)?;
        let coeffs = linalg::char_coeffs(&a);
        let lambda = lambda.embed(n)?;
        let mut power = a.clone();
        let mut tries = 0;
        for j in 1..m {
            if j > 1 {
                power = linalg::mat_mul(&power, &a);
            }
            if gcd(j, m) != 1 {
                continue;
            }
            let t = linalg::trace(&power);
            if t.is_zero() {
                continue;
            }
            tries += 1;
            if tries > 3 {
                break;
            }
            let u = mod_inverse(j, m).expect("coprime") as i64;
            let v = (1 - u * j as i64) / m as i64;
            // μ = (t / w)^u · λ^v for w = 1 + ζ^e1 + ζ^e2 the other eigenvalues' ratio sum.
            let base = &t.pow(u)? * &lambda.pow(v)?;
            for e1 in 0..m as i64 {
                for e2 in e1..m as i64 {
                    let w = &(&CycNum::one(n) + &CycNum::zeta_in(m, n, e1)) + &CycNum::zeta_in(m, n, e2);
                    if w.is_zero() {
                        continue;
                    }
                    let mu = base.div(&w.pow(u)?)?;
                    if linalg::char_eval(&coeffs, &mu).is_zero() {
                        let c = mu.inv()?;
                        return Ok(Self::from_lift(n, linalg::mat_map(&a, |x| x * &c)));
                    }
                }
            }
        }
        Err(Error::NonCyclotomicSpectrum)
    }

    pub fn apply_point(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let n = join_conductors(self.conductor, p.conductor())?;
        let a = linalg::mat_embed(&self.lift, n)?;
        let v = p.coords_at(n)?;
        ProjPoint::new(linalg::mat_vec(&a, &v))
    }

    /// Lines transform by the inverse transpose.
    pub fn apply_line(&self, l: &ProjLine) -> Result<ProjLine> {
        let it = linalg::transpose(&linalg::adjugate(&self.lift));
        let n = join_conductors(self.conductor, l.0.conductor())?;
        let a = linalg::mat_embed(&it, n)?;
        Ok(ProjLine(ProjPoint::new(linalg::mat_vec(&a, &l.0.coords_at(n)?))?))
    }

    /// Eigenvalues of the finite-order lift, as `(lift, conductor, [μ])`.
    pub fn spectrum(&self) -> Result<(Mat3, u64, Vec<CycNum>)> {
        let f = self.finite_lift()?;
        let (m, lambda) = f.order_and_scalar(DEFAULT_ORDER_BOUND)?;
        let mut t = lambda.root_of_unity_order().ok_or(Error::NonCyclotomicSpectrum)?;
        // Rescale by a root of unity of the current field with c^m = λ⁻¹ when
        // one exists, so the eigenvalues are m-th roots of unity.
        let w = lcm(2, f.conductor);
        let target = lambda.inv()?.embed(lcm(w, lambda.conductor()))?;
        let mut lift = f.lift.clone();
        if t > 1 {
            if let Some(c) = (0..w as i64).map(|k| CycNum::zeta_in(w, target.conductor(), k)).find(|c| c.pow(m as i64).ok().as_ref() == Some(&target)) {
                let c = c.embed(lcm(f.conductor, c.conductor()))?;
                let base = linalg::mat_embed(&f.lift, c.conductor())?;
                lift = std::array::from_fn(|i| std::array::from_fn(|j| &base[i][j] * &c));
                t = 1;
            }
        }
        let mt = m * t;
        let n = check_conductor(lcm(linalg::mat_conductor(&lift)?, mt))?;
        let a = linalg::mat_embed(&lift, n)?;
        let coeffs = linalg::char_coeffs(&a);
        let mut eig = Vec::new();
        for k in 0..mt as i64 {
            let mu = CycNum::zeta_in(mt, n, k);
            if linalg::char_eval(&coeffs, &mu).is_zero() {
                eig.push(mu);
                if eig.len() == 3 {
                    break;
                }
            }
        }
        Ok((a, n, eig))
    }

    /// Projectivized eigenspaces, each verified fixed.
    pub fn fixed_locus(&self) -> Result<FixedLocus> {
        if self.is_identity() {
            return Ok(FixedLocus::WholePlane);
        }
        let (a, _, eig) = self.spectrum()?;
        let mut points = Vec::new();
        let mut lines = Vec::new();
        for mu in eig {
            let shifted = shift(&a, &mu);
            let ker = linalg::kernel(&shifted);
            match ker.len() {
                1 => points.push(ProjPoint::new(ker[0].clone())?),
                2 => lines.push(ProjLine(ProjPoint::new(linalg::cross(&ker[0], &ker[1]))?)),
                _ => unreachable!("non-identity element with a 3-dimensional eigenspace"),
            }
        }
        for p in &points {
            if self.apply_point(p)? != *p {
                return Err(Error::NotFixed);
            }
        }
        for l in &lines {
            if self.apply_line(l)? != *l {
                return Err(Error::NotFixed);
            }
        }
        Ok(FixedLocus::Finite { points, lines })
    }

    /// Exponents of the tangent action at a fixed point `p`, relative to
    /// ζ_m with `m` the projective order.
    ///
    /// The two characters are ordered by the position of the first nonzero
    /// coordinate of their eigenvectors, which for diagonal matrices is the
    /// coordinate order.
    pub fn tangent_characters(&self, p: &ProjPoint) -> Result<TangentChars> {
        if self.apply_point(p)? != *p {
            return Err(Error::NotFixed);
        }
        if self.is_identity() {
            return Ok(TangentChars { order: 1, chars: (0, 0) });
        }
        let f = self.finite_lift()?;
        let m = f.proj_order()?;
        let n = join_conductors(join_conductors(f.conductor, p.conductor())?, m)?;
        let a = linalg::mat_embed(&f.lift, n)?;
        let v = p.coords_at(n)?;
        let i = v.iter().position(|x| !x.is_zero()).expect("nonzero point");
        let mu = linalg::mat_vec(&a, &v)[i].div(&v[i])?;
        let (t1, t2, _) = linalg::char_coeffs(&a);
        // x³ − t1 x² + t2 x − δ = (x − μ)(x² + B x + C)
        let b = &mu - &t1;
        let c = &t2 + &(&mu * &b);
        let mut found: Vec<(u64, usize)> = Vec::new();
        for k in 0..m {
            let nu = &mu * &CycNum::zeta_in(m, n, k as i64);
            let q = &(&(&nu * &nu) + &(&b * &nu)) + &c;
            if q.is_zero() {
                let ker = linalg::kernel(&shift(&a, &nu));
                let pos = ker
                    .iter()
                    .find(|w| !proportional(w, &v))
                    .or(ker.first())
                    .and_then(|w| w.iter().position(|x| !x.is_zero()))
                    .unwrap_or(3);
                found.push((k, pos));
            }
        }
        let chars = match found.as_slice() {
            [(k, _)] => (*k, *k),
            [x, y] => {
                let (x, y) = if (y.1, y.0) < (x.1, x.0) { (y, x) } else { (x, y) };
                (x.0, y.0)
            }
            _ => return Err(Error::NonCyclotomicSpectrum),
        };
        Ok(TangentChars { order: m, chars })
    }
}

fn shift(a: &Mat3, mu: &CycNum) -> Mat3 {
    let mut s = a.clone();
    for (i, row) in s.iter_mut().enumerate() {
        row[i] = &row[i] - mu;
    }
    s
}

fn proportional(u: &Vec3, v: &Vec3) -> bool {
    linalg::cross(u, v).iter().all(CycNum::is_zero)
}

impl PartialEq for ProjMat {
    fn eq(&self, other: &ProjMat) -> bool {
        self.proj_eq(other)
    }
}

impl Eq for ProjMat {}

/// Matrix literal of the canonical representative.
impl fmt::Display for ProjMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.canonical().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[{},{},{}]", row[0], row[1], row[2])?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TangentChars {
    pub order: u64,
    pub chars: (u64, u64),
}

/// A point of ℙ², first nonzero coordinate equal to 1.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: Vec3,
}

impl ProjPoint {
    pub fn new(v: Vec3) -> Result<ProjPoint> {
        let n = join_conductors(join_conductors(v[0].conductor(), v[1].conductor())?, v[2].conductor())?;
        let v = [v[0].embed(n)?, v[1].embed(n)?, v[2].embed(n)?];
        let first = v.iter().find(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
        if first.is_one() {
            return Ok(ProjPoint { coords: v });
        }
        let inv = first.inv()?;
        Ok(ProjPoint { coords: linalg::map3(&v, |x| x * &inv) })
    }

    pub fn from_ints(v: [i64; 3]) -> Result<ProjPoint> {
        Self::new([CycNum::int(v[0]), CycNum::int(v[1]), CycNum::int(v[2])])
    }

    pub fn coords(&self) -> &Vec3 {
        &self.coords
    }

    pub fn conductor(&self) -> u64 {
        self.coords[0].conductor()
    }

    pub fn coords_at(&self, n: u64) -> Result<Vec3> {
        Ok([self.coords[0].embed(n)?, self.coords[1].embed(n)?, self.coords[2].embed(n)?])
    }

    pub fn key_at(&self, n: u64) -> Result<Vec<Rat>> {
        Ok(self.coords_at(n)?.iter().flat_map(|x| x.coeffs().iter().cloned()).collect())
    }

    pub fn line_through(&self, other: &ProjPoint) -> Result<ProjLine> {
        let n = join_conductors(self.conductor(), other.conductor())?;
        Ok(ProjLine(ProjPoint::new(linalg::cross(&self.coords_at(n)?, &other.coords_at(n)?))?))
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &ProjPoint) -> bool {
        self.coords.iter().zip(&other.coords).all(|(a, b)| a == b)
    }
}

impl Eq for ProjPoint {}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// A line, by its dual coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjLine(pub ProjPoint);

impl ProjLine {
    pub fn contains(&self, p: &ProjPoint) -> bool {
        let n = lcm(self.0.conductor(), p.conductor());
        match (self.0.coords_at(n), p.coords_at(n)) {
            (Ok(l), Ok(q)) => linalg::dot(&l, &q).is_zero(),
            _ => false,
        }
    }
}

/// Fixed points and pointwise-fixed lines of a projective transformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedLocus {
    /// The identity fixes everything.
    WholePlane,
    Finite { points: Vec<ProjPoint>, lines: Vec<ProjLine> },
}

impl FixedLocus {
    pub fn points(&self) -> &[ProjPoint] {
        match self {
            FixedLocus::WholePlane => &[],
            FixedLocus::Finite { points, .. } => points,
        }
    }

    pub fn lines(&self) -> &[ProjLine] {
        match self {
            FixedLocus::WholePlane => &[],
            FixedLocus::Finite { lines, .. } => lines,
        }
    }
}

/// Orbit of `p`, in order of first discovery.
pub fn orbit(g: &ProjGroup, p: &ProjPoint) -> Result<Vec<ProjPoint>> {
    let n = join_conductors(g.conductor(), p.conductor())?;
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for m in g.elements() {
        let q = m.apply_point(p)?;
        if seen.insert(q.key_at(n)?) {
            out.push(q);
        }
    }
    Ok(out)
}

/// Subgroup of elements fixing `p`.
pub fn stabilizer(g: &ProjGroup, p: &ProjPoint) -> Result<ProjGroup> {
    let mut members = Vec::new();
    for (i, m) in g.elements().iter().enumerate() {
        if m.apply_point(p)? == *p {
            members.push(i);
        }
    }
    g.subgroup(&members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> CycNum {
        CycNum::zeta(n, k)
    }

    fn pt(v: [i64; 3]) -> ProjPoint {
        ProjPoint::from_ints(v).unwrap()
    }

    #[test]
    fn scalar_equivalence() {
        let a = ProjMat::diag(&CycNum::int(1), &z(3, 1), &z(3, 2)).unwrap();
        let b = ProjMat::diag(&z(3, 1), &z(3, 2), &CycNum::int(1)).unwrap();
        assert!(a.proj_eq(&b));
        assert!(a.proj_eq(&a));
        let id = ProjMat::identity(1);
        let c = ProjMat::diag(&CycNum::int(1), &CycNum::int(1), &z(3, 1)).unwrap();
        assert!(!id.embed(3).unwrap().proj_eq(&c));
    }

    #[test]
    fn orders() {
        let m1 = ProjMat::from_ints([[0, 0, 1], [1, 0, 0], [0, 1, 0]]).unwrap();
        assert_eq!(m1.proj_order().unwrap(), 3);
        assert_eq!(ProjMat::identity(1).proj_order().unwrap(), 1);
        let m7 = ProjMat::diag(&CycNum::int(1), &z(7, 1), &z(7, 3)).unwrap();
        assert_eq!(m7.proj_order().unwrap(), 7);
        let inf = ProjMat::from_ints([[1, 1, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(inf.proj_order_bounded(50), Err(Error::OrderBoundExceeded { bound: 50 }));
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(ProjMat::from_ints([[1, 2, 0], [2, 4, 0], [0, 0, 1]]).unwrap_err(), Error::Singular);
    }

    #[test]
    fn fixed_locus_of_diagonals() {
        let g = ProjMat::diag(&z(5, 1), &z(5, 2), &CycNum::int(1)).unwrap();
        let fl = g.fixed_locus().unwrap();
        assert_eq!(fl.lines().len(), 0);
        let expected = [pt([1, 0, 0]), pt([0, 1, 0]), pt([0, 0, 1])];
        assert_eq!(fl.points().len(), 3);
        for p in &expected {
            assert!(fl.points().contains(p));
        }
        let h = ProjMat::diag(&z(4, 1), &z(4, 1), &CycNum::int(1)).unwrap();
        let fl = h.fixed_locus().unwrap();
        assert_eq!(fl.points(), &[pt([0, 0, 1])]);
        assert_eq!(fl.lines(), &[ProjLine(pt([0, 0, 1]))]);
        assert!(fl.lines()[0].contains(&pt([1, 1, 0])));
        assert_eq!(ProjMat::identity(1).fixed_locus().unwrap(), FixedLocus::WholePlane);
    }

    #[test]
    fn fixed_locus_of_non_diagonal() {
        let m1 = ProjMat::from_ints([[0, 0, 1], [1, 0, 0], [0, 1, 0]]).unwrap();
        let fl = m1.fixed_locus().unwrap();
        assert_eq!(fl.points().len(), 3);
        assert!(fl.points().contains(&pt([1, 1, 1])));
        // A matrix whose only lifts over ℚ(ζ_3) have non-root-of-unity powers.
        let m3 = ProjMat::parse("[[1,1,1],[1,z(3),z(3)^2],[1,z(3)^2,z(3)]]").unwrap();
        assert_eq!(m3.proj_order().unwrap(), 4);
        let fl = m3.fixed_locus().unwrap();
        let total = fl.points().len() + fl.lines().len();
        assert!(total >= 2);
        for p in fl.points() {
            assert_eq!(m3.apply_point(p).unwrap(), *p);
        }
    }

    #[test]
    fn non_cyclotomic_spectrum() {
        let m = ProjMat::from_ints([[0, 0, 2], [1, 0, 0], [0, 1, 0]]).unwrap();
        assert_eq!(m.proj_order().unwrap(), 3);
        assert_eq!(m.fixed_locus().unwrap_err(), Error::NonCyclotomicSpectrum);
    }

    #[test]
    fn scaled_lift_is_normalized() {
        // √3 · M₀ over ℚ(ζ_12); its cube is a non-root-of-unity scalar.
        let s3 = &z(12, 1) + &z(12, 11);
        let m = ProjMat::diag(&s3, &(&s3 * &z(3, 1)), &(&s3 * &z(3, 2))).unwrap();
        let f = m.finite_lift().unwrap();
        assert!(f.proj_eq(&m));
        assert_eq!(m.fixed_locus().unwrap().points().len(), 3);
    }

    #[test]
    fn tangent_characters_diagonal() {
        for (n, d) in [(5u64, 2i64), (7, 3), (8, 3), (4, 1), (6, 5)] {
            let g = ProjMat::diag(&z(n, 1), &z(n, d), &CycNum::int(1)).unwrap();
            let m = n as i64;
            let tc = g.tangent_characters(&pt([0, 0, 1])).unwrap();
            assert_eq!(tc, TangentChars { order: n, chars: (1, d.rem_euclid(m) as u64) });
            let tc = g.tangent_characters(&pt([0, 1, 0])).unwrap();
            let expect = ((1 - d).rem_euclid(m) as u64, (-d).rem_euclid(m) as u64);
            assert_eq!(tc.chars, expect, "n={n} d={d}");
        }
        let id = ProjMat::identity(1);
        assert_eq!(id.tangent_characters(&pt([1, 2, 3])).unwrap(), TangentChars { order: 1, chars: (0, 0) });
        let g = ProjMat::diag(&z(5, 1), &z(5, 2), &CycNum::int(1)).unwrap();
        assert_eq!(g.tangent_characters(&pt([1, 1, 0])).unwrap_err(), Error::NotFixed);
    }

    #[test]
    fn galois_conjugation() {
        let m0 = ProjMat::diag(&CycNum::int(1), &z(3, 1), &z(3, 2)).unwrap();
        let s = GaloisElt::new(3, 2).unwrap();
        assert!(m0.galois(&s).unwrap().proj_eq(&m0.inverse()));
    }

    #[test]
    fn display_round_trip() {
        let m = ProjMat::parse("[[2,0,0],[0,2*z(3),0],[1,0,z(3)^2]]").unwrap();
        assert!(ProjMat::parse(&m.to_string()).unwrap().proj_eq(&m));
    }
}
