//! Multi-modular inversion in ℚ(ζ_N).
//!
//! Over a prime p ≡ 1 (mod N) the cyclotomic polynomial splits into linear
//! factors, so inversion mod p is pointwise on the φ(N) roots followed by
//! Lagrange interpolation. Residues are combined by CRT and lifted back with
//! rational reconstruction; the caller checks the candidate exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::arith::{factorize, gcd, is_prime, mod_inverse};
use crate::rational::Rat;

const PRIME_FLOOR: u64 = 1 << 30;
const MAX_PRIMES: usize = 400;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// A primitive n-th root of unity mod p, where n | p - 1.
fn primitive_root_of_unity(n: u64, p: u64) -> u64 {
    let primes: Vec<u64> = factorize(n).into_iter().map(|(q, _)| q).collect();
    (2..p)
        .map(|h| pow_mod(h, (p - 1) / n, p))
        .find(|&w| primes.iter().all(|&q| pow_mod(w, n / q, p) != 1))
        .expect("p ≡ 1 mod n has primitive n-th roots")
}

/// Successive primes `p ≡ 1 (mod n)` above the floor.
fn primes_one_mod(n: u64) -> impl Iterator<Item = u64> {
    let start = PRIME_FLOOR / n + 1;
    (start..).map(move |k| k * n + 1).filter(|&p| is_prime(p))
}

fn residue(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.try_into().expect("residue fits")
}

/// Inverse of `Σ a_i ζ^i` mod p as a coefficient vector, or `None` when p is
/// unlucky (the element vanishes at some root).
fn invert_mod_p(a: &[u64], phi: &[i64], n: u64, p: u64) -> Option<Vec<u64>> {
    let deg = a.len();
    let w = primitive_root_of_unity(n, p);
    let poly: Vec<u64> = phi.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
    let mut out = vec![0u64; deg];
    let mut quotient = vec![0u64; deg];
    for k in (1..n).chain(std::iter::once(n)).filter(|&k| gcd(k % n, n) == 1) {
        let r = pow_mod(w, k, p);
        // value of the element at r, Horner
        let v = a.iter().rev().fold(0, |acc, &c| (mul_mod(acc, r, p) + c) % p);
        let v_inv = mod_inverse(v, p)?;
        // poly / (X - r) by synthetic division, leading coefficient first
        let mut carry = 0;
        for i in (0..deg).rev() {
            carry = (poly[i + 1] + mul_mod(carry, r, p)) % p;
            quotient[i] = carry;
        }
        let q_at_r = quotient.iter().rev().fold(0, |acc, &c| (mul_mod(acc, r, p) + c) % p);
        let scale = mul_mod(v_inv, mod_inverse(q_at_r, p)?, p);
        for (o, &q) in out.iter_mut().zip(&quotient) {
            *o = (*o + mul_mod(scale, q, p)) % p;
        }
    }
    Some(out)
}

/// Fixed prime `p ≡ 1 (mod n)` with a primitive n-th root `w` mod p.
pub(super) fn reduction_point(n: u64) -> (u64, u64) {
    type Cache = RwLock<HashMap<u64, (u64, u64)>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(&pw) = cache.read().expect("poisoned cache").get(&n) {
        return pw;
    }
    let p = primes_one_mod(n).next().expect("infinitely many primes");
    let pw = (p, primitive_root_of_unity(n, p));
    cache.write().expect("poisoned cache").insert(n, pw);
    pw
}

/// `Σ c_i w^i mod p`, or `None` when a denominator is divisible by p.
pub(super) fn evaluate(coeffs: &[Rat], p: u64, w: u64) -> Option<u64> {
    let residue_of = |c: &Rat| -> Option<u64> {
        let (num, den) = c.parts();
        Some(mul_mod(residue(&num, p), mod_inverse(residue(&den, p), p)?, p))
    };
    let mut acc = 0;
    for c in coeffs.iter().rev() {
        acc = (mul_mod(acc, w, p) + if c.is_zero() { 0 } else { residue_of(c)? }) % p;
    }
    Some(acc)
}

/// Smallest `a/b ≡ u (mod m)` with both parts below `sqrt(m/2)`.
fn reconstruct(u: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1) = (r1, r2);
        (t0, t1) = (t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(if t1.is_negative() { (-r1, -t1) } else { (r1, t1) })
}

/// Candidate inverses of `x` (coefficients over the power basis of ℚ(ζ_n)),
/// attempted at geometrically spaced prime counts. The caller verifies.
pub(super) fn candidates(x: &[Rat], phi: &[i64], n: u64) -> impl Iterator<Item = Vec<Rat>> {
    let parts: Vec<(BigInt, BigInt)> = x.iter().map(Rat::parts).collect();
    let den = parts.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
    let ints: Vec<BigInt> = parts.iter().map(|(num, d)| num * (&den / d)).collect();
    let phi = phi.to_vec();

    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); ints.len()];
    let mut used = 0usize;
    let mut next_attempt = 1usize;
    primes_one_mod(n).take(MAX_PRIMES).filter_map(move |p| {
        let a: Vec<u64> = ints.iter().map(|c| residue(c, p)).collect();
        let inv = invert_mod_p(&a, &phi, n, p)?;
        // CRT: acc ≡ old (mod modulus), acc ≡ inv (mod p)
        let m_inv = mod_inverse(residue(&modulus, p), p).expect("coprime moduli");
        for (c, &r) in acc.iter_mut().zip(&inv) {
            let diff = (r + p - residue(c, p)) % p;
            let t = mul_mod(diff, m_inv, p);
            *c += &modulus * BigInt::from(t);
        }
        modulus *= BigInt::from(p);
        used += 1;
        if used < next_attempt {
            return None;
        }
        next_attempt = used + used / 4 + 1;
        let recon: Vec<(BigInt, BigInt)> = acc.iter().map(|c| reconstruct(c, &modulus)).collect::<Option<_>>()?;
        let coeffs = recon
            .into_iter()
            .map(|(num, d)| Rat::from_big(num_rational::BigRational::new(num * &den, d)))
            .collect();
        Some(coeffs)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        // -3/7 mod m
        let u = (BigInt::from(-3) * BigInt::from(7).modinv(&m).unwrap()).mod_floor(&m);
        assert_eq!(reconstruct(&u, &m), Some((BigInt::from(-3), BigInt::from(7))));
    }

    #[test]
    fn roots_have_exact_order() {
        for n in [3u64, 8, 12, 45] {
            let p = primes_one_mod(n).next().unwrap();
            let w = primitive_root_of_unity(n, p);
            assert_eq!(pow_mod(w, n, p), 1);
            assert!((1..n).all(|k| pow_mod(w, k, p) != 1));
        }
    }
}
