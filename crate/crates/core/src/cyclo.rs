//! Exact arithmetic in cyclotomic fields ℚ(ζ_N).
//!
//! An element is stored as its coordinate vector over the power basis
//! `1, ζ_N, …, ζ_N^{φ(N)-1}`, i.e. as a polynomial reduced modulo the N-th
//! cyclotomic polynomial Φ_N. Because Φ_N is the minimal polynomial of ζ_N
//! this form is unique, and equality at a fixed conductor is a plain vector
//! comparison. Operands with different conductors are embedded into the
//! least common multiple before any arithmetic.
//!
//! The conductor ceiling (default 10,080) bounds every field ever built.
//! Fallible entry points report [`Error::ConductorOverflow`]; the operator
//! impls panic instead, since they cannot return a `Result`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::{divisors, gcd, lcm, totient};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::rational::{gcd_i128, Rat};

mod modular;

pub const DEFAULT_CONDUCTOR_CEILING: u64 = 10_080;

static CONDUCTOR_CEILING: AtomicU64 = AtomicU64::new(DEFAULT_CONDUCTOR_CEILING);

pub fn conductor_ceiling() -> u64 {
    CONDUCTOR_CEILING.load(Ordering::Relaxed)
}

/// Process-wide; affects every subsequent construction.
pub fn set_conductor_ceiling(ceiling: u64) {
    CONDUCTOR_CEILING.store(ceiling.max(1), Ordering::Relaxed);
}

pub fn check_conductor(n: u64) -> Result<u64> {
    let ceiling = conductor_ceiling();
    if n == 0 || n > ceiling {
        Err(Error::ConductorOverflow { conductor: n, ceiling })
    } else {
        Ok(n)
    }
}

/// Least common conductor of two fields, respecting the ceiling.
pub fn join_conductors(a: u64, b: u64) -> Result<u64> {
    check_conductor(lcm(a, b))
}

type PolyCache = RwLock<HashMap<u64, Arc<Vec<i64>>>>;

fn poly_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients of Φ_n, constant term first; monic of degree φ(n).
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    if let Some(p) = poly_cache().read().expect("poisoned cache").get(&n) {
        return p.clone();
    }
    // x^n - 1 = prod_{d | n} Φ_d
    let mut num: Vec<i128> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        num = exact_div_monic(&num, &phi_d);
    }
    let poly: Vec<i64> = num
        .into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect();
    let poly = Arc::new(poly);
    poly_cache()
        .write()
        .expect("poisoned cache")
        .insert(n, poly.clone());
    poly
}

fn exact_div_monic(num: &[i128], den: &[i64]) -> Vec<i128> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i128; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        q[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d as i128;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Reduce a polynomial in ζ_n (any length) modulo Φ_n.
fn reduce_mod_phi(mut poly: Vec<Rat>, n: u64) -> Vec<Rat> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    if poly.len() > deg {
        for k in (deg..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut poly[k]);
            for (i, &p) in phi[..deg].iter().enumerate() {
                if p != 0 {
                    let t = c.mul_int(p);
                    poly[k - deg + i] = &poly[k - deg + i] - &t;
                }
            }
        }
        poly.truncate(deg);
    } else {
        poly.resize(deg, Rat::ZERO);
    }
    poly
}

fn integral(coeffs: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let parts: Vec<(BigInt, BigInt)> = coeffs.iter().map(Rat::parts).collect();
    let den = parts.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
    (parts.into_iter().map(|(num, d)| num * (&den / d)).collect(), den)
}

fn small_integral(coeffs: &[Rat]) -> Option<(Vec<i128>, i128)> {
    let mut den: i128 = 1;
    for c in coeffs {
        let Rat::Small(_, d) = c else { return None };
        let d = *d as i128;
        den = den.checked_mul(d / gcd_i128(den, d))?;
    }
    let ints = coeffs
        .iter()
        .map(|c| match c {
            Rat::Small(num, d) => (*num as i128).checked_mul(den / *d as i128),
            Rat::Big(_) => None,
        })
        .collect::<Option<_>>()?;
    Some((ints, den))
}

/// [`mul_integral`] in machine integers; `None` on overflow.
fn mul_small(a: &[Rat], b: &[Rat], n: u64) -> Option<Vec<Rat>> {
    let (a, da) = small_integral(a)?;
    let (b, db) = small_integral(b)?;
    let deg = a.len();
    let mut prod = vec![0i128; 2 * deg - 1];
    for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
        for (j, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
            prod[i + j] = prod[i + j].checked_add(x.checked_mul(y)?)?;
        }
    }
    let phi = cyclotomic_polynomial(n);
    for k in (deg..prod.len()).rev() {
        let c = std::mem::take(&mut prod[k]);
        if c == 0 {
            continue;
        }
        for (i, &p) in phi[..deg].iter().enumerate().filter(|(_, p)| **p != 0) {
            prod[k - deg + i] = prod[k - deg + i].checked_sub(c.checked_mul(p as i128)?)?;
        }
    }
    let den = da.checked_mul(db)?;
    prod.truncate(deg);
    Some(prod.into_iter().map(|c| Rat::from_i128(c, den)).collect())
}

/// Product over a common denominator, so big coefficients are reduced once
/// at the end rather than after every term.
fn mul_integral(a: &[Rat], b: &[Rat], n: u64) -> Vec<Rat> {
    let (a, da) = integral(a);
    let (b, db) = integral(b);
    let deg = a.len();
    let mut prod = vec![BigInt::zero(); 2 * deg - 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            prod[i + j] += x * y;
        }
    }
    let phi = cyclotomic_polynomial(n);
    for k in (deg..prod.len()).rev() {
        if prod[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut prod[k]);
        for (i, &p) in phi[..deg].iter().enumerate().filter(|(_, p)| **p != 0) {
            prod[k - deg + i] -= &c * p;
        }
    }
    let den = da * db;
    prod.truncate(deg);
    prod.into_iter().map(|c| Rat::from_big(BigRational::new(c, den.clone()))).collect()
}

/// An element of ℚ(ζ_N) in canonical reduced form.
#[derive(Clone, Debug)]
pub struct CycNum {
    conductor: u64,
    coeffs: Vec<Rat>,
}

impl CycNum {
    /// Canonicalize `Σ raw[i] ζ_N^i`; `raw` may be longer than φ(N).
    pub fn from_poly(conductor: u64, raw: Vec<Rat>) -> Result<CycNum> {
        check_conductor(conductor)?;
        Ok(Self::from_poly_unchecked(conductor, raw))
    }

    fn from_poly_unchecked(conductor: u64, mut raw: Vec<Rat>) -> CycNum {
        if raw.len() > conductor as usize {
            // ζ_N^N = 1
            let mut folded = vec![Rat::ZERO; conductor as usize];
            for (i, c) in raw.into_iter().enumerate() {
                let j = i % conductor as usize;
                folded[j] = &folded[j] + &c;
            }
            raw = folded;
        }
        CycNum { conductor, coeffs: reduce_mod_phi(raw, conductor) }
    }

    pub fn zero(conductor: u64) -> CycNum {
        CycNum { conductor, coeffs: vec![Rat::ZERO; totient(conductor) as usize] }
    }

    pub fn one(conductor: u64) -> CycNum {
        Self::rational_in(conductor, Rat::ONE)
    }

    pub fn rational(r: Rat) -> CycNum {
        CycNum { conductor: 1, coeffs: vec![r] }
    }

    pub fn int(n: i64) -> CycNum {
        Self::rational(Rat::from_int(n))
    }

    pub fn rational_in(conductor: u64, r: Rat) -> CycNum {
        let mut coeffs = vec![Rat::ZERO; totient(conductor) as usize];
        coeffs[0] = r;
        CycNum { conductor, coeffs }
    }

    /// ζ_n^k, reduced.
    pub fn zeta(n: u64, k: i64) -> CycNum {
        Self::zeta_in(n, n, k)
    }

    /// ζ_n^k as an element of ℚ(ζ_m); requires `n | m`.
    pub fn zeta_in(n: u64, m: u64, k: i64) -> CycNum {
        assert!(n > 0 && m % n == 0, "zeta_{n} is not in Q(zeta_{m})");
        let e = (k.rem_euclid(n as i64) as u64) * (m / n);
        Self::monomial(m, e, Rat::ONE)
    }

    fn monomial(n: u64, e: u64, c: Rat) -> CycNum {
        let deg = totient(n);
        if e < deg {
            let mut coeffs = vec![Rat::ZERO; deg as usize];
            coeffs[e as usize] = c;
            return CycNum { conductor: n, coeffs };
        }
        let mut raw = vec![Rat::ZERO; e as usize + 1];
        raw[e as usize] = c;
        Self::from_poly_unchecked(n, raw)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The rational value, when this element lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(Rat::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// `Some((i, c))` when the element is `c ζ_N^i` for a single basis index.
    fn as_monomial(&self) -> Option<(usize, &Rat)> {
        let mut found = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((i, c));
            }
        }
        found
    }

    /// Same element in ℚ(ζ_M).
    pub fn embed(&self, m: u64) -> Result<CycNum> {
        if m % self.conductor != 0 {
            return Err(Error::NotDivisible { from: self.conductor, to: m });
        }
        check_conductor(m)?;
        Ok(self.embed_unchecked(m))
    }

    fn embed_unchecked(&self, m: u64) -> CycNum {
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut raw = vec![Rat::ZERO; (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        Self::from_poly_unchecked(m, raw)
    }

    /// Embed both operands into their common field.
    pub fn unify(a: &CycNum, b: &CycNum) -> Result<(CycNum, CycNum)> {
        let m = join_conductors(a.conductor, b.conductor)?;
        Ok((a.embed_unchecked(m), b.embed_unchecked(m)))
    }

    fn unify_or_panic<'a>(a: &'a CycNum, b: &'a CycNum) -> (std::borrow::Cow<'a, CycNum>, std::borrow::Cow<'a, CycNum>) {
        use std::borrow::Cow;
        if a.conductor == b.conductor {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let m = join_conductors(a.conductor, b.conductor).unwrap_or_else(|e| panic!("{e}"));
        (Cow::Owned(a.embed_unchecked(m)), Cow::Owned(b.embed_unchecked(m)))
    }

    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.conductor;
        if let Some((i, c)) = self.as_monomial() {
            let c = c.recip().expect("nonzero");
            let e = (n - i as u64) % n;
            return Ok(Self::monomial(n, e, c));
        }
        if totient(n) > 2 {
            let phi = cyclotomic_polynomial(n);
            for coeffs in modular::candidates(&self.coeffs, &phi, n) {
                let y = CycNum { conductor: n, coeffs };
                if (&y * self).is_one() {
                    return Ok(y);
                }
            }
        }
        // x⁻¹ = (∏_{σ≠1} σ(x)) / N(x), where the norm N(x) is rational.
        let mut others = CycNum::one(n);
        for k in 2..n {
            if gcd(k, n) == 1 {
                let s = GaloisElt { conductor: n, exponent: k };
                others = &others * &s.apply(self)?;
            }
        }
        let norm = &others * self;
        let norm = norm.as_rational().ok_or(Error::DivisionByZero)?;
        Ok(others.scale(&norm.recip().ok_or(Error::DivisionByZero)?))
    }

    /// Image under a fixed reduction `ℤ[ζ_N] → 𝔽_p` depending only on the
    /// conductor; `None` when a denominator is divisible by p.
    pub fn reduce_mod_prime(&self) -> Option<(u64, u64)> {
        let (p, w) = modular::reduction_point(self.conductor);
        Some((modular::evaluate(&self.coeffs, p, w)?, p))
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<CycNum> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one(self.conductor);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, r: &Rat) -> CycNum {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Apply σ_k : ζ_N ↦ ζ_N^k, with N this element's conductor.
    pub fn galois(&self, k: i64) -> Result<CycNum> {
        GaloisElt::new(self.conductor, k)?.apply(self)
    }

    /// Complex conjugate, σ_{-1}.
    pub fn conj(&self) -> CycNum {
        self.galois(-1).expect("-1 is always a unit")
    }

    /// Multiplicative order when the element is a root of unity.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        // The roots of unity in ℚ(ζ_N) are exactly the lcm(2, N)-th ones.
        let l = lcm(2, self.conductor);
        if !self.pow(l as i64).ok()?.is_one() {
            return None;
        }
        divisors(l).into_iter().find(|&d| self.pow(d as i64).map(|p| p.is_one()).unwrap_or(false))
    }

    /// Floating-point value at ζ_N = exp(2πi/N), as `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
            let t = std::f64::consts::TAU * i as f64 / n;
            let v = c.to_f64();
            (re + v * t.cos(), im + v * t.sin())
        })
    }

    /// Equality key for hashing at a fixed conductor.
    pub fn key(&self) -> &[Rat] {
        &self.coeffs
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &CycNum) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        match CycNum::unify(self, other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for CycNum {}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let (a, b) = CycNum::unify_or_panic(self, rhs);
        CycNum {
            conductor: a.conductor,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        let (a, b) = CycNum::unify_or_panic(self, rhs);
        CycNum {
            conductor: a.conductor,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        let (a, b) = CycNum::unify_or_panic(self, rhs);
        let n = a.conductor;
        if let Some(r) = a.as_rational() {
            return b.scale(r);
        }
        if let Some(r) = b.as_rational() {
            return a.scale(r);
        }
        let coeffs = mul_small(&a.coeffs, &b.coeffs, n).unwrap_or_else(|| mul_integral(&a.coeffs, &b.coeffs, n));
        CycNum { conductor: n, coeffs }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

/// Prints in the scalar input syntax, e.g. `1 + 2*z(3)^1`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coeff = if abs.is_integer() { abs.to_string() } else { format!("({abs})") };
            if i == 0 {
                write!(f, "{coeff}")?;
            } else if abs.is_one() {
                write!(f, "z({})^{}", self.conductor, i)?;
            } else {
                write!(f, "{coeff}*z({})^{}", self.conductor, i)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The automorphism σ_k : ζ_N ↦ ζ_N^k of ℚ(ζ_N).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisElt {
    conductor: u64,
    exponent: u64,
}

impl GaloisElt {
    pub fn new(conductor: u64, k: i64) -> Result<GaloisElt> {
        let exponent = k.rem_euclid(conductor as i64) as u64;
        if gcd(exponent, conductor) != 1 && conductor != 1 {
            return Err(Error::BadExponent { exponent: k, conductor });
        }
        Ok(GaloisElt { conductor, exponent: if conductor == 1 { 0 } else { exponent } })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GaloisElt) -> GaloisElt {
        assert_eq!(self.conductor, other.conductor, "mismatched conductors");
        GaloisElt {
            conductor: self.conductor,
            exponent: (self.exponent * other.exponent) % self.conductor,
        }
    }

    /// The element's conductor must divide this automorphism's conductor.
    pub fn apply(&self, x: &CycNum) -> Result<CycNum> {
        let n = self.conductor;
        let x = x.embed(n)?;
        if n == 1 {
            return Ok(x);
        }
        let mut raw = vec![Rat::ZERO; n as usize];
        for (i, c) in x.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let j = (i as u64 * self.exponent % n) as usize;
                raw[j] = &raw[j] + c;
            }
        }
        Ok(CycNum::from_poly_unchecked(n, raw))
    }
}
