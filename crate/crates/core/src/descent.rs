//! Verdict procedures for descent of plane curves and cycles to the field
//! of moduli, and the quotient-singularity rules they rely on.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{gcd, mod_inverse, prime_power_divisors, two_adic};
use crate::classify::{self, FieldProfile, Status};
use crate::error::{Error, Result};
use crate::groups::reference;
use crate::groups::{AbstractGroup, ProjGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    DescendsToP2,
    DescendsToBrauerSeveri,
    PossibleObstruction,
    OutOfTheoremScope,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::DescendsToP2 => "DESCENDS_TO_P2",
            Outcome::DescendsToBrauerSeveri => "DESCENDS_TO_BRAUER_SEVERI",
            Outcome::PossibleObstruction => "POSSIBLE_OBSTRUCTION",
            Outcome::OutOfTheoremScope => "OUT_OF_THEOREM_SCOPE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub rule: String,
    pub constraints: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(outcome: Outcome, rule: &str) -> Verdict {
        Verdict { outcome, rule: rule.into(), constraints: Vec::new(), notes: Vec::new() }
    }

    fn with(mut self, constraint: String) -> Verdict {
        self.constraints.push(constraint);
        self
    }
}

/// Automorphism data of a curve: an embedded group, or only its abstract
/// isomorphism type.
#[derive(Clone, Debug)]
pub enum Aut {
    Embedded(ProjGroup),
    Abstract(AbstractGroup),
}

impl Aut {
    fn table(&self) -> AbstractGroup {
        match self {
            Aut::Embedded(g) => g.to_abstract(),
            Aut::Abstract(t) => t.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CurveQuery {
    pub degree: u64,
    pub aut: Aut,
    pub field: FieldProfile,
}

/// `C_a × C_{2an}` with third generator diag(ζ_{2an}, ζ_{2an}^e, 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ObstructionForm {
    pub a: u64,
    pub n: u64,
    pub e: u64,
}

impl ObstructionForm {
    /// e ≡ ±1 modulo every prime power dividing 2n.
    pub fn residue_condition(&self) -> bool {
        prime_power_divisors(2 * self.n).into_iter().all(|q| {
            let r = self.e % q;
            r == 1 % q || r == q - 1
        })
    }

    /// The divisibility constraint on the degree, or the violated statement.
    pub fn divisibility(&self, degree: u64) -> std::result::Result<String, String> {
        if self.a != 1 {
            let m = 2 * self.a * self.n;
            if degree % m == 0 {
                Ok(format!("2an = {m} divides d = {degree}"))
            } else {
                Err(format!("2an = {m} does not divide d = {degree}"))
            }
        } else {
            let m = 4 * self.n;
            let p = degree * degree.saturating_sub(2);
            if p % m == 0 {
                Ok(format!("4n = {m} divides d(d-2) = {p}"))
            } else {
                Err(format!("4n = {m} does not divide d(d-2) = {p}"))
            }
        }
    }

    pub fn invariants(&self) -> Vec<u64> {
        let big = 2 * self.a * self.n;
        if self.a == 1 {
            vec![big]
        } else {
            vec![self.a, big]
        }
    }
}

/// Obstruction forms matching the group, from its embedding when known and
/// otherwise from its abelian invariants (where e = 1 always qualifies).
fn obstruction_forms(aut: &Aut) -> Result<Vec<ObstructionForm>> {
    match aut {
        Aut::Embedded(g) => {
            if !g.is_abelian() {
                return Ok(Vec::new());
            }
            let Some(pres) = classify::presentations_up_to_conjugacy(g)? else {
                return Ok(Vec::new());
            };
            let mut out: Vec<ObstructionForm> = pres
                .iter()
                .filter(|p| p.n % 2 == 0)
                .map(|p| ObstructionForm { a: p.a, n: p.n / 2, e: p.d })
                .filter(ObstructionForm::residue_condition)
                .collect();
            out.sort();
            out.dedup();
            Ok(out)
        }
        Aut::Abstract(t) => {
            let Some(inv) = t.abelian_invariants() else { return Ok(Vec::new()) };
            let (a, m) = match inv.as_slice() {
                [m] => (1, *m),
                [a, m] => (*a, *m),
                _ => return Ok(Vec::new()),
            };
            if m % (2 * a) != 0 {
                return Ok(Vec::new());
            }
            Ok(vec![ObstructionForm { a, n: m / (2 * a), e: 1 }])
        }
    }
}

fn is_c2(t: &AbstractGroup) -> bool {
    t.order() == 2
}

pub fn verdict_curve(q: &CurveQuery) -> Result<Verdict> {
    let d = q.degree;
    if d % 3 == 0 {
        return Err(Error::DegreeDivisibleBy3(d));
    }
    if d < 3 {
        return Ok(Verdict::new(Outcome::OutOfTheoremScope, "smooth-plane-curve-degree-at-least-3"));
    }
    if gcd(d, 6) == 1 {
        return Ok(Verdict::new(Outcome::DescendsToP2, "theorem-degree-prime-to-6").with(format!("gcd({d}, 6) = 1")));
    }
    let forms = obstruction_forms(&q.aut)?;
    if forms.is_empty() {
        return Ok(Verdict::new(Outcome::DescendsToP2, "theorem-degree-prime-to-3-form")
            .with("automorphism group is not of the form C_a x C_2an with e = ±1 mod q for q | 2n".into()));
    }
    let mut violated = Vec::new();
    for f in &forms {
        match f.divisibility(d) {
            Ok(c) => {
                let mut v = Verdict::new(Outcome::PossibleObstruction, "theorem-degree-prime-to-3-divisibility")
                    .with(format!("form a = {}, n = {}, e = {}", f.a, f.n, f.e))
                    .with(c);
                if d == 4 && !is_c2(&q.aut.table()) {
                    v.notes.push("not realizable: among these forms only C2 is the automorphism group of a smooth plane quartic".into());
                }
                return Ok(v);
            }
            Err(c) => violated.push(c),
        }
    }
    violated.sort();
    violated.dedup();
    let mut v = Verdict::new(Outcome::DescendsToP2, "theorem-degree-prime-to-3-divisibility");
    v.constraints = violated;
    Ok(v)
}

pub fn verdict_quartic(aut: &AbstractGroup) -> Verdict {
    if is_c2(aut) {
        Verdict::new(Outcome::PossibleObstruction, "corollary-quartics").with("aut = C2".into())
    } else {
        Verdict::new(Outcome::DescendsToP2, "corollary-quartics").with("aut is not C2".into())
    }
}

/// The seven sextic exceptions, by name.
pub fn sextic_exceptions() -> Vec<(&'static str, AbstractGroup)> {
    vec![
        ("C2", reference::cyclic(2)),
        ("C3", reference::cyclic(3)),
        ("C4", reference::cyclic(4)),
        ("C6", reference::cyclic(6)),
        ("C3^2", reference::abelian(&[3, 3])),
        ("C3^2:C2", reference::c3sq_c2()),
        ("C3^2:C4", reference::c3sq_c4()),
    ]
}

pub fn verdict_sextic(aut: &AbstractGroup, field: &FieldProfile) -> Verdict {
    if let Some((name, _)) = sextic_exceptions().into_iter().find(|(_, g)| g.is_isomorphic(aut)) {
        if name == "C3^2:C4" && field.has_zeta12 {
            return Verdict::new(Outcome::DescendsToP2, "theorem-sextics-zeta12").with("sqrt(3), sqrt(-1) in k".into());
        }
        return Verdict::new(Outcome::PossibleObstruction, "theorem-sextics-exceptions").with(format!("aut = {name}"));
    }
    if aut.order() == 1 || aut.is_isomorphic(&reference::klein()) {
        return Verdict::new(Outcome::DescendsToBrauerSeveri, "theorem-sextics").with("aut trivial or C2^2".into());
    }
    Verdict::new(Outcome::DescendsToP2, "theorem-sextics-plane").with("aut outside the exceptions, nontrivial, not C2^2".into())
}

pub fn verdict_cycle(g: &ProjGroup, field: &FieldProfile) -> Result<Verdict> {
    let c = classify::criticality(g, field)?;
    let (outcome, rule) = match c.status {
        Status::Critical => (Outcome::PossibleObstruction, "theorem-cycles-critical"),
        Status::Lucky => (Outcome::DescendsToP2, "theorem-cycles-lucky"),
        Status::Neither => (Outcome::DescendsToBrauerSeveri, "theorem-cycles-not-critical"),
    };
    Ok(Verdict::new(outcome, rule).with(format!("{} ({})", c.status, c.rule)))
}

/// Cyclic quotient singularity 1/m(i, j).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CyclicSingularity {
    pub m: u64,
    pub chars: (u64, u64),
}

impl CyclicSingularity {
    pub fn new(m: u64, i: u64, j: u64) -> CyclicSingularity {
        let m = m.max(1);
        CyclicSingularity { m, chars: (i % m, j % m) }
    }

    /// Rescaled to `(1, d)` when one character is a unit.
    pub fn normalized(&self) -> Option<u64> {
        let (i, j) = self.chars;
        if let Some(inv) = mod_inverse(i, self.m) {
            return Some(j * inv % self.m);
        }
        mod_inverse(j, self.m).map(|inv| i * inv % self.m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TypeR {
    R,
    NotNecessarilyR,
    Unknown,
}

pub fn type_r_cyclic(s: &CyclicSingularity) -> TypeR {
    let m = s.m;
    if m == 1 || m == 3 || m % 2 == 1 {
        return TypeR::R;
    }
    match s.normalized() {
        Some(d) if (d * d) % m != 1 % m => TypeR::R,
        _ => TypeR::Unknown,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum R2 {
    R2(String),
    Unknown,
}

/// Group types asserted to be R₂: dihedral of order ≥ 6, C₇, S₃ × C₃ (the
/// stabilizer shape in H₅), and extensions of S₃ by C_a × C_a.
pub fn r2_group_lookup(g: &AbstractGroup) -> R2 {
    let n = g.order();
    if n >= 6 && n % 2 == 0 && g.is_isomorphic(&reference::dihedral(n / 2)) {
        return R2::R2(format!("dihedral of order {n}"));
    }
    if n == 7 {
        return R2::R2("C7".into());
    }
    if n == 18 && g.is_isomorphic(&reference::symmetric3().direct_product(&reference::cyclic(3))) {
        return R2::R2("S3 x C3".into());
    }
    if n % 6 == 0 {
        let k = n / 6;
        let a = (1..=k as u64).find(|a| a * a == k as u64);
        if let Some(a) = a.filter(|&a| a > 1) {
            for sub in g.normal_subgroups_of_order(k) {
                let Ok((s, _)) = g.subgroup(&sub) else { continue };
                if s.abelian_invariants() != Some(vec![a, a]) {
                    continue;
                }
                if let Ok((q, _)) = g.quotient(&sub) {
                    if q.is_isomorphic(&reference::symmetric3()) {
                        return R2::R2(format!("extension of S3 by C{a} x C{a}"));
                    }
                }
            }
        }
    }
    R2::Unknown
}

/// Abelian invariants of every obstruction form whose degree constraint
/// holds for `degree`.
pub fn obstruction_invariants(degree: u64) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    for a in 1..=degree.max(1) {
        let n_max = if a == 1 { degree * degree } else { degree };
        for n in 1..=n_max {
            let modulus = 2 * a * n;
            for e in 0..modulus {
                let f = ObstructionForm { a, n, e };
                if f.residue_condition() && f.divisibility(degree).is_ok() {
                    out.insert(f.invariants());
                    break;
                }
            }
        }
    }
    out
}

/// Result of comparing the two parameterizations of the even-order
/// obstruction family over all `(a, N, e)` with `a·N ≤ limit`, `N` even.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub limit: u64,
    pub compared: usize,
    pub mismatches: Vec<(u64, u64, u64)>,
}

pub fn cross_check_clause_two(limit: u64) -> CrossCheck {
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for a in 1..=limit {
        for big in (2..=limit / a).step_by(2) {
            let m = a * big;
            let b = two_adic(big);
            let odd = big >> b;
            let two = 1u64 << b;
            for e in 0..m {
                let theorem = ObstructionForm { a, n: big / 2, e }.residue_condition();
                let r = e % two;
                let definition = (e * e) % odd == 1 % odd && (r == 1 % two || r == two - 1);
                compared += 1;
                if theorem != definition {
                    mismatches.push((a, big, e));
                }
            }
        }
    }
    CrossCheck { limit, compared, mismatches }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::CycNum;
    use crate::hessian::HessianLibrary;
    use crate::projgeom::{self, ProjMat};

    fn diag_group(e: u64, gens: &[(i64, i64)]) -> ProjGroup {
        let mats: Vec<ProjMat> = gens.iter().map(|&(x, y)| ProjMat::diag(&CycNum::zeta(e, x), &CycNum::zeta(e, y), &CycNum::one(e)).unwrap()).collect();
        ProjGroup::closure(&mats).unwrap()
    }

    fn curve(d: u64, aut: Aut) -> CurveQuery {
        CurveQuery { degree: d, aut, field: FieldProfile::rationals() }
    }

    #[test]
    fn curves() {
        let c2 = diag_group(2, &[(1, 1)]);
        assert_eq!(verdict_curve(&curve(5, Aut::Embedded(c2.clone()))).unwrap().outcome, Outcome::DescendsToP2);
        assert_eq!(verdict_curve(&curve(25, Aut::Abstract(reference::cyclic(2)))).unwrap().rule, "theorem-degree-prime-to-6");
        let v = verdict_curve(&curve(4, Aut::Embedded(c2))).unwrap();
        assert_eq!(v.outcome, Outcome::PossibleObstruction);
        assert!(v.notes.is_empty());
        let v = verdict_curve(&curve(4, Aut::Abstract(reference::abelian(&[2, 4])))).unwrap();
        assert_eq!(v.outcome, Outcome::PossibleObstruction);
        assert_eq!(v.notes.len(), 1);
        assert_eq!(verdict_curve(&curve(6, Aut::Abstract(reference::cyclic(2)))).unwrap_err(), Error::DegreeDivisibleBy3(6));
        // C₆ fails the divisibility constraint at degree 4: 4·3 ∤ 8.
        let v = verdict_curve(&curve(4, Aut::Abstract(reference::cyclic(6)))).unwrap();
        assert_eq!(v.outcome, Outcome::DescendsToP2);
        assert!(!v.constraints.is_empty());
        // Odd-order groups never have the form.
        assert_eq!(verdict_curve(&curve(4, Aut::Abstract(reference::cyclic(3)))).unwrap().rule, "theorem-degree-prime-to-3-form");
        // Embedded C₄ = ⟨diag(ζ₄, ζ₄³, 1)⟩ at d = 8: 4·2 | 48.
        assert_eq!(verdict_curve(&curve(8, Aut::Embedded(diag_group(4, &[(1, 3)])))).unwrap().outcome, Outcome::PossibleObstruction);
    }

    #[test]
    fn quartics() {
        assert_eq!(verdict_quartic(&reference::cyclic(2)).outcome, Outcome::PossibleObstruction);
        assert_eq!(verdict_quartic(&reference::symmetric3()).outcome, Outcome::DescendsToP2);
        assert_eq!(verdict_quartic(&reference::trivial()).outcome, Outcome::DescendsToP2);
        let expected: BTreeSet<Vec<u64>> = [vec![2], vec![4], vec![2, 4]].into_iter().collect();
        assert_eq!(obstruction_invariants(4), expected);
    }

    #[test]
    fn sextics() {
        let q = FieldProfile::rationals();
        assert_eq!(verdict_sextic(&reference::cyclic(6), &q).outcome, Outcome::PossibleObstruction);
        assert_eq!(verdict_sextic(&reference::symmetric3(), &q).outcome, Outcome::DescendsToP2);
        assert_eq!(verdict_sextic(&reference::c3sq_c4(), &q).outcome, Outcome::PossibleObstruction);
        assert_eq!(verdict_sextic(&reference::c3sq_c4(), &FieldProfile::parse("Q(zeta12)").unwrap()).outcome, Outcome::DescendsToP2);
        assert_eq!(verdict_sextic(&reference::klein(), &q).outcome, Outcome::DescendsToBrauerSeveri);
        assert_eq!(verdict_sextic(&reference::trivial(), &q).outcome, Outcome::DescendsToBrauerSeveri);
        assert_eq!(sextic_exceptions().len(), 7);
    }

    #[test]
    fn cycles() {
        let lib = HessianLibrary::build().unwrap();
        let q = FieldProfile::rationals();
        assert_eq!(verdict_cycle(lib.h(2), &q).unwrap().outcome, Outcome::PossibleObstruction);
        assert_eq!(verdict_cycle(lib.h(5), &q).unwrap().outcome, Outcome::DescendsToP2);
        assert_eq!(verdict_cycle(lib.h(1), &q).unwrap().outcome, Outcome::DescendsToBrauerSeveri);
    }

    #[test]
    fn cyclic_singularities() {
        assert_eq!(type_r_cyclic(&CyclicSingularity::new(7, 1, 3)), TypeR::R);
        assert_eq!(type_r_cyclic(&CyclicSingularity::new(1, 0, 0)), TypeR::R);
        assert_eq!(type_r_cyclic(&CyclicSingularity::new(8, 1, 3)), TypeR::Unknown);
        assert_eq!(type_r_cyclic(&CyclicSingularity::new(8, 1, 5)), TypeR::Unknown);
        assert_eq!(type_r_cyclic(&CyclicSingularity::new(8, 1, 2)), TypeR::R);
        assert_eq!(type_r_cyclic(&CyclicSingularity::new(4, 1, 1)), TypeR::Unknown);
        assert_eq!(type_r_cyclic(&CyclicSingularity::new(10, 1, 3)), TypeR::R);
        // (3, 1) rescales to (1, 7) mod 10.
        assert_eq!(CyclicSingularity::new(10, 3, 1).normalized(), Some(7));
    }

    #[test]
    fn r2_types() {
        assert!(matches!(r2_group_lookup(&reference::symmetric3()), R2::R2(_)));
        assert!(matches!(r2_group_lookup(&reference::dihedral(7)), R2::R2(_)));
        assert!(matches!(r2_group_lookup(&reference::cyclic(7)), R2::R2(_)));
        assert_eq!(r2_group_lookup(&reference::quaternion()), R2::Unknown);
        assert_eq!(r2_group_lookup(&reference::klein()), R2::Unknown);
        let lib = HessianLibrary::build().unwrap();
        let p = lib.configuration_points().unwrap()[0].clone();
        let stab = projgeom::stabilizer(lib.h(5), &p).unwrap();
        assert_eq!(stab.order(), 18);
        assert_eq!(r2_group_lookup(stab.table()), R2::R2("S3 x C3".into()));
        let stab4 = projgeom::stabilizer(lib.h(4), &p).unwrap();
        assert!(matches!(r2_group_lookup(stab4.table()), R2::R2(_)));
    }

    #[test]
    fn parameterizations_agree() {
        let c = cross_check_clause_two(60);
        assert!(c.compared > 0);
        assert!(c.mismatches.is_empty(), "{:?}", &c.mismatches[..c.mismatches.len().min(5)]);
    }

    #[test]
    fn prime_to_six_always_descends() {
        let lib = HessianLibrary::build().unwrap();
        for d in [5, 7, 11, 13, 25, 35] {
            for i in 1..=5 {
                let v = verdict_curve(&curve(d, Aut::Embedded(lib.h(i).clone()))).unwrap();
                assert_eq!(v.outcome, Outcome::DescendsToP2);
            }
        }
    }
}
