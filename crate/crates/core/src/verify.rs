//! Registered assertion lists replayed by `moduli verify <scope>`.

use std::fmt::Display;
use std::str::FromStr;

use serde::Serialize;

use crate::classify::{self, FieldProfile, Status};
use crate::cyclo::CycNum;
use crate::descent::{self, Aut, CurveQuery, Outcome};
use crate::error::{Error, Result};
use crate::groups::{reference, ProjGroup};
use crate::hessian::{self, HessianLibrary, HESSIAN_ORDERS};
use crate::projgeom::ProjMat;
use crate::torsor;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    Hessian,
    Lemmas,
    Torsor,
    Verdicts,
}

impl Scope {
    pub const NAMES: [&'static str; 5] = ["all", "hessian", "lemmas", "torsor", "verdicts"];
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scope> {
        Ok(match s {
            "all" => Scope::All,
            "hessian" => Scope::Hessian,
            "lemmas" => Scope::Lemmas,
            "torsor" => Scope::Torsor,
            "verdicts" => Scope::Verdicts,
            _ => return Err(Error::Parse(format!("unknown scope {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub results: Vec<Assertion>,
    pub exit_status: i32,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.exit_status == 0
    }

    /// One line per assertion.
    pub fn lines(&self) -> Vec<String> {
        self.results
            .iter()
            .map(|a| {
                if a.pass {
                    format!("{}: pass", a.name)
                } else {
                    format!("{}: FAIL (expected {}, got {})", a.name, a.expected, a.got)
                }
            })
            .collect()
    }
}

#[derive(Default)]
struct Checks {
    results: Vec<Assertion>,
}

impl Checks {
    fn eq<T: Display + PartialEq>(&mut self, name: &str, expected: T, got: T) {
        let pass = expected == got;
        self.results.push(Assertion { name: name.into(), expected: expected.to_string(), got: got.to_string(), pass });
    }

    fn truth(&mut self, name: &str, got: bool) {
        self.eq(name, true, got);
    }

    /// Records a computation that errored.
    fn failed(&mut self, name: &str, e: &Error) {
        self.results.push(Assertion { name: name.into(), expected: "no error".into(), got: e.to_string(), pass: false });
    }
}

pub fn run(scope: Scope) -> RunReport {
    let name = Scope::NAMES[match scope {
        Scope::All => 0,
        Scope::Hessian => 1,
        Scope::Lemmas => 2,
        Scope::Torsor => 3,
        Scope::Verdicts => 4,
    }];
    let mut c = Checks::default();
    match HessianLibrary::build() {
        Ok(lib) => {
            let sections: &[fn(&mut Checks, &HessianLibrary) -> Result<()>] = match scope {
                Scope::All => &[hessian_checks, lemma_checks, torsor_checks, verdict_checks],
                Scope::Hessian => &[hessian_checks],
                Scope::Lemmas => &[lemma_checks],
                Scope::Torsor => &[torsor_checks],
                Scope::Verdicts => &[verdict_checks],
            };
            for section in sections {
                if let Err(e) = section(&mut c, &lib) {
                    c.failed("section completed", &e);
                }
            }
        }
        Err(e) => c.failed("Hessian library built", &e),
    }
    let exit_status = i32::from(c.results.iter().any(|a| !a.pass));
    RunReport { command: format!("verify {name}"), results: c.results, exit_status }
}

fn hessian_checks(c: &mut Checks, lib: &HessianLibrary) -> Result<()> {
    for (i, &order) in HESSIAN_ORDERS.iter().enumerate() {
        c.eq(&format!("|H{}| = {order}", sub(i + 1)), order, lib.h(i + 1).order());
    }
    let named = [
        (4, 1, "Q₈", reference::quaternion()),
        (5, 2, "A₄", reference::alternating4()),
        (3, 1, "C₄", reference::cyclic(4)),
        (4, 2, "C₂²", reference::klein()),
        (5, 1, "SL(2,3)", reference::sl23()),
    ];
    for (j, i, label, target) in named {
        c.truth(&format!("H{}/H{} ≅ {label}", sub(j), sub(i)), lib.quotient(j, i)?.is_isomorphic(&target));
    }
    c.truth("H₁ ≅ C₃²", lib.h(1).to_abstract().is_isomorphic(&reference::abelian(&[3, 3])));
    let galois = lib.galois_identity_check()?;
    for (i, ok) in galois.iter().enumerate() {
        c.truth(&format!("Galois identity for M{}", sub(i)), *ok);
    }
    let tris = lib.triangles()?;
    c.eq("triangles fixed by cyclic subgroups of H₁", 4, tris.len());
    c.eq("configuration points", 12, tris.iter().map(|t| t.points.len()).sum::<usize>());
    c.eq("cross-triangle lines meeting each triangle once", "54/54".to_string(), {
        let (checked, passing) = lib.cross_triangle_lines()?;
        format!("{passing}/{checked}")
    });
    c.truth("triangles in general position", lib.general_position()?);
    c.truth("H₄ acts on the triangles through C₂²", lib.h4_klein_action()?.is_isomorphic(&reference::klein()));
    c.truth("H₅ acts on the triangles through A₄", lib.triangle_action(lib.h(5))?.is_isomorphic(&reference::alternating4()));
    Ok(())
}

fn lemma_checks(c: &mut Checks, lib: &HessianLibrary) -> Result<()> {
    let h5 = lib.h(5);
    let n1 = h5.normalizer_in(lib.h(1))?;
    c.truth("normalizer_in(H₅,H₁) = H₅", n1.order() == h5.order());
    let n3 = h5.normalizer_in(lib.h(3))?;
    c.truth("normalizer_in(H₅,H₃) = H₄", n3.order() == 72 && lib.h(4).elements().iter().all(|m| n3.contains(m)));
    c.eq("Sylow-3 count of H₄", 1, lib.h(4).sylow_count(3)?);

    for (l, i, j) in [(6, 1, 2), (6, 2, 4), (4, 1, 2), (5, 1, 3), (3, 1, 2), (3, 2, 1)] {
        let shape = diagonal_centralizer(&ambient_group(l)?, l, i, j)?;
        let name = format!("centralizer of diag(ζ{l}^{i}, ζ{l}^{j}, 1) matches the diagonal rule");
        c.truth(&name, shape.matches_rule());
    }

    let m7 = order_seven_matrix();
    let m1 = hessian::matrix(1);
    c.eq("proj_order(M₇) = 7", 7, m7.proj_order()?);
    let frag = ProjGroup::closure(&[m7.clone(), m1.clone()])?;
    c.eq("|⟨M₇, M₁⟩| = 21", 21, frag.order());
    c.eq("Sylow-7 count in ⟨M₇, M₁⟩ = 1", 1, frag.sylow_count(7)?);
    c.truth("M₁·M₇·M₁⁻¹ ≡ M₇⁴", m1.mul(&m7)?.mul(&m1.inverse())?.proj_eq(&m7.pow(4)));
    c.truth("M₁⁻¹·M₇·M₁ ≡ M₇²", m1.inverse().mul(&m7)?.mul(&m1)?.proj_eq(&m7.pow(2)));
    c.eq("centralizer of M₇ in ⟨M₇, M₁⟩ has order 7", 7, frag.centralizer(&m7)?.order());

    let q = FieldProfile::rationals();
    let trivial = ProjGroup::trivial();
    c.eq("trivial group: neither", Status::Neither, classify::criticality(&trivial, &q)?.status);
    c.eq("H₁: neither", Status::Neither, classify::criticality(lib.h(1), &q)?.status);
    c.eq("H₂: critical", Status::Critical, classify::criticality(lib.h(2), &q)?.status);
    c.eq("H₃ over ℚ: critical", Status::Critical, classify::criticality(lib.h(3), &q)?.status);
    let z12 = FieldProfile::new("Q(zeta12)", true);
    c.eq("H₃ with ζ₁₂: lucky", Status::Lucky, classify::criticality(lib.h(3), &z12)?.status);
    c.eq("H₄: lucky", Status::Lucky, classify::criticality(lib.h(4), &q)?.status);
    c.eq("H₅: lucky", Status::Lucky, classify::criticality(lib.h(5), &q)?.status);
    c.eq("H₁ is the non-diagonalizable abelian group", "Some(H1)".to_string(), format!("{:?}", classify::recognize_hessian(lib.h(1))));
    Ok(())
}

fn torsor_checks(c: &mut Checks, lib: &HessianLibrary) -> Result<()> {
    let (e, a) = torsor::e_group();
    c.eq("|E| = 27", 27, e.order());
    c.eq("E has exponent 3", 3, e.exponent());
    c.truth("E is nonabelian", !e.is_abelian());
    let mut center = e.center();
    center.sort_unstable();
    c.truth("center of E is A", center == a);
    let mut derived = e.derived_subgroup();
    derived.sort_unstable();
    c.truth("derived subgroup of E is A", derived == a);
    c.truth("E is nonsplit over A", !torsor::complement_exists(&e, &a));

    let problems = [
        ("c1-3n family (1,3,2)", torsor::build_family_c1_3n(1, 3, 2)?),
        ("c1-3a family (3,1,2)", torsor::build_family_c1_3a(3, 1, 2)?),
        ("c2 family (1,1,1,1)", torsor::build_family_c2(1, 1, 1, 1)?),
        ("H₂ family", torsor::build_family_h2(lib)?),
    ];
    for (label, p) in &problems {
        c.truth(&format!("{label} target generates N/G"), p.target_generates_quotient());
        for (check, ok) in &p.checks {
            c.truth(&format!("{label}: {check}"), *ok);
        }
        c.eq(&format!("{label} lift_exists = false"), false, torsor::commuting_lift_exists(p));
        c.eq(&format!("{label} Q x G control lifts"), true, torsor::commuting_lift_exists(&p.direct_product_control()?));
    }
    for sign in [1, -1] {
        let (e, a) = torsor::e_pm(1, sign);
        let (q, _) = e.quotient(&a)?;
        c.truth(&format!("E({sign:+})/A({sign:+}) ≅ C₂² at b = 1"), q.is_isomorphic(&reference::klein()));
        let p = torsor::ExtensionProblem::new("E", e, a, (0, 0))?;
        c.truth(&format!("no abelian subgroup of E({sign:+}) surjects at b = 1"), !torsor::abelian_surjection_exists(&p));
    }
    c.eq("H¹ on Klein with swap", 1, torsor::h1_c2(&torsor::klein_with_swap()).len());
    c.eq("H¹ on C₂ with trivial action", 2, torsor::h1_c2(&torsor::InvolutionAction::trivial(reference::cyclic(2))).len());
    Ok(())
}

fn verdict_checks(c: &mut Checks, lib: &HessianLibrary) -> Result<()> {
    let q = FieldProfile::rationals();
    for (d, g) in [(25, lib.h(5)), (5, lib.h(2)), (7, lib.h(1))] {
        let v = descent::verdict_curve(&CurveQuery { degree: d, aut: Aut::Embedded(g.clone()), field: q.clone() })?;
        c.eq(&format!("degree {d} curve descends to P²"), Outcome::DescendsToP2, v.outcome);
    }
    let got: Vec<String> = descent::obstruction_invariants(4).into_iter().map(|v| format!("{v:?}")).collect();
    c.eq("quartic obstruction invariants", "[2], [2, 4], [4]".to_string(), got.join(", "));
    c.eq("quartic with C₂ may be obstructed", Outcome::PossibleObstruction, descent::verdict_quartic(&reference::cyclic(2)).outcome);
    c.eq("quartic with C₃ descends", Outcome::DescendsToP2, descent::verdict_quartic(&reference::cyclic(3)).outcome);
    c.eq("sextic with trivial group", Outcome::DescendsToBrauerSeveri, descent::verdict_sextic(&reference::trivial(), &q).outcome);
    c.eq("sextic with C₅ descends", Outcome::DescendsToP2, descent::verdict_sextic(&reference::cyclic(5), &q).outcome);
    c.eq("sextic with C₃ is an exception", Outcome::PossibleObstruction, descent::verdict_sextic(&reference::cyclic(3), &q).outcome);
    c.eq("cycle with H₂ may be obstructed", Outcome::PossibleObstruction, descent::verdict_cycle(lib.h(2), &q)?.outcome);
    c.eq("cycle with H₅ descends", Outcome::DescendsToP2, descent::verdict_cycle(lib.h(5), &q)?.outcome);
    let cross = descent::cross_check_clause_two(60);
    c.eq("clause-2 parameterizations agree up to an = 60", 0, cross.mismatches.len());
    Ok(())
}

fn sub(i: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    i.to_string().chars().map(|d| DIGITS[d.to_digit(10).unwrap_or(0) as usize]).collect()
}

/// diag(1, ζ₇, ζ₇³).
pub fn order_seven_matrix() -> ProjMat {
    ProjMat::diag(&CycNum::int(1), &CycNum::zeta(7, 1), &CycNum::zeta(7, 3)).expect("invertible")
}

/// Diagonal elements of order dividing `l` together with all permutation
/// matrices; order 6l².
pub fn ambient_group(l: u64) -> Result<ProjGroup> {
    let one = CycNum::one(l);
    let z = CycNum::zeta_in(l, l, 1);
    let gens = [
        ProjMat::diag(&z, &one, &one)?,
        ProjMat::diag(&one, &z, &one)?,
        ProjMat::from_ints([[0, 0, 1], [1, 0, 0], [0, 1, 0]])?,
        ProjMat::from_ints([[1, 0, 0], [0, 0, 1], [0, 1, 0]])?,
    ];
    ProjGroup::closure(&gens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CentralizerShape {
    /// Whether {α, β} = {ζ₃, ζ₃²}.
    pub exceptional: bool,
    pub order: usize,
    pub diagonal: bool,
    pub has_order_three_permutation: bool,
}

impl CentralizerShape {
    /// Diagonal exactly, except in the exceptional case where it gains an
    /// order-3 permutation.
    pub fn matches_rule(&self) -> bool {
        if self.exceptional {
            !self.diagonal && self.has_order_three_permutation
        } else {
            self.diagonal
        }
    }
}

/// Centralizer of diag(ζ_l^i, ζ_l^j, 1) inside `ambient`.
pub fn diagonal_centralizer(ambient: &ProjGroup, l: u64, i: u64, j: u64) -> Result<CentralizerShape> {
    let alpha = CycNum::zeta_in(l, l, i as i64);
    let beta = CycNum::zeta_in(l, l, j as i64);
    let g = ProjMat::diag(&alpha, &beta, &CycNum::one(l))?;
    let cent = ambient.centralizer(&g)?;
    let diag = |m: &ProjMat| {
        let a = m.lift();
        (0..3).all(|r| (0..3).all(|s| r == s || a[r][s].is_zero()))
    };
    let perm = |m: &ProjMat| {
        let a = m.lift();
        (0..3).all(|r| (0..3).filter(|&s| !a[r][s].is_zero()).count() == 1)
    };
    let c1 = ProjMat::from_ints([[0, 0, 1], [1, 0, 0], [0, 1, 0]])?;
    let c2 = c1.inverse();
    let has_cycle = cent.elements().iter().any(|m| perm(m) && !diag(m) && (m.proj_eq(&c1) || m.proj_eq(&c2)));
    let (ai, bj) = ((3 * i) % l, (3 * j) % l);
    let exceptional = l % 3 == 0 && ai == 0 && bj == 0 && {
        let (x, y) = ((i / (l / 3)) % 3, (j / (l / 3)) % 3);
        (x, y) == (1, 2) || (x, y) == (2, 1)
    };
    Ok(CentralizerShape { exceptional, order: cent.order(), diagonal: cent.elements().iter().all(diag), has_order_three_permutation: has_cycle })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scopes_parse() {
        for name in Scope::NAMES {
            assert!(name.parse::<Scope>().is_ok());
        }
        assert!("everything".parse::<Scope>().is_err());
    }

    #[test]
    fn required_lines_present() {
        let hessian = run(Scope::Hessian).lines();
        assert!(hessian.contains(&"|H₅| = 216: pass".to_string()), "{hessian:?}");
        let lemmas = run(Scope::Lemmas).lines();
        assert!(lemmas.contains(&"normalizer_in(H₅,H₁) = H₅: pass".to_string()), "{lemmas:?}");
        let torsor = run(Scope::Torsor).lines();
        assert!(torsor.contains(&"H₂ family lift_exists = false: pass".to_string()), "{torsor:?}");
    }

    #[test]
    fn every_scope_passes() {
        for scope in [Scope::Hessian, Scope::Lemmas, Scope::Torsor, Scope::Verdicts] {
            let r = run(scope);
            let failing: Vec<_> = r.lines().into_iter().filter(|l| !l.ends_with(": pass")).collect();
            assert!(r.passed(), "{failing:?}");
        }
    }

    #[test]
    fn ambient_order() {
        assert_eq!(ambient_group(4).unwrap().order(), 6 * 16);
    }

    #[test]
    fn exceptional_centralizer() {
        let amb = ambient_group(3).unwrap();
        let s = diagonal_centralizer(&amb, 3, 1, 2).unwrap();
        assert!(s.exceptional && !s.diagonal && s.has_order_three_permutation);
        assert_eq!(s.order, 27);
        let s = diagonal_centralizer(&ambient_group(6).unwrap(), 6, 1, 2).unwrap();
        assert!(!s.exceptional && s.diagonal);
    }
}
