use std::collections::HashSet;

use proptest::prelude::*;

use super::reference::*;
use super::*;
use crate::cyclo::CycNum;
use crate::hessian;

fn m7() -> ProjMat {
    ProjMat::diag(&CycNum::int(1), &CycNum::zeta(7, 1), &CycNum::zeta(7, 3)).unwrap()
}

fn m1() -> ProjMat {
    hessian::matrix(1)
}

/// Oracle: Sylow subgroups as distinct subgroups of order p^k generated by
/// at most two elements.
fn sylow_count_by_enumeration(g: &AbstractGroup, p: u64) -> usize {
    let target = sylow_order(g.order(), p).unwrap() as usize;
    let pelts: Vec<usize> = (0..g.order()).filter(|&x| is_p_power(g.element_order(x), p)).collect();
    let mut found = HashSet::new();
    for &a in &pelts {
        for &b in &pelts {
            let s = g.generated(&[a, b]);
            if s.len() == target {
                found.insert(s);
            }
        }
    }
    found.len()
}

fn is_p_power(mut x: u64, p: u64) -> bool {
    while x % p == 0 {
        x /= p;
    }
    x == 1
}

#[test]
fn closure_examples() {
    assert_eq!(ProjGroup::trivial().order(), 1);
    assert_eq!(ProjGroup::closure(&[ProjMat::identity(1)]).unwrap().order(), 1);
    assert_eq!(ProjGroup::closure(&[hessian::matrix(0), m1()]).unwrap().order(), 9);
    let infinite = ProjMat::from_ints([[1, 1, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
    assert_eq!(
        ProjGroup::closure_with_ceiling(&[infinite], 50).unwrap_err(),
        Error::OrderCeilingExceeded { ceiling: 50 }
    );
}

#[test]
fn order_21_fragment() {
    let g = ProjGroup::closure(&[m7(), m1()]).unwrap();
    assert_eq!(g.order(), 21);
    // diag(ζ, ζ³, 1) by direct expansion
    let conj = m1().inverse().mul(&m7()).unwrap().mul(&m1()).unwrap();
    assert!(conj.proj_eq(&m7().pow(2)));
    assert!(!conj.proj_eq(&m7().pow(4)));
    let other = m1().mul(&m7()).unwrap().mul(&m1().inverse()).unwrap();
    assert!(other.proj_eq(&m7().pow(4)));
    assert_eq!(g.sylow_count(7).unwrap(), 1);
    assert_eq!(sylow_count_by_enumeration(g.table(), 7), 1);
    let c = g.centralizer(&m7()).unwrap();
    assert_eq!(c.order(), 7);
    assert!(c.contains(&m7()));
    assert_eq!(g.centralizer(&hessian::matrix(2)).unwrap_err(), Error::NotAMember);
    assert_eq!(g.sylow_count(5).unwrap_err(), Error::PrimeDoesNotDivide { prime: 5, order: 21 });
}

#[test]
fn sylow_counts_match_enumeration() {
    for (g, p) in [(alternating4(), 2), (alternating4(), 3), (symmetric3(), 2), (dihedral(5), 2), (sl23(), 3), (sl23(), 2), (c3sq_c4(), 2), (cyclic(12), 2)] {
        assert_eq!(g.sylow_count(p).unwrap(), sylow_count_by_enumeration(&g, p), "order {} p {p}", g.order());
    }
    assert_eq!(alternating4().sylow_count(3).unwrap(), 4);
    assert_eq!(symmetric3().sylow_count(2).unwrap(), 3);
}

#[test]
fn quotient_basics() {
    let g = sl23();
    let all: Vec<usize> = (0..g.order()).collect();
    let (q, _) = g.quotient(&all).unwrap();
    assert_eq!(q.order(), 1);
    let (q, proj) = g.quotient(&g.center()).unwrap();
    assert!(q.is_isomorphic(&alternating4()));
    for a in 0..g.order() {
        for b in 0..g.order() {
            assert_eq!(proj[g.mul(a, b)], q.mul(proj[a], proj[b]));
        }
    }
    let s3 = symmetric3();
    let two = s3.generated(&[(1..6).find(|&x| s3.element_order(x) == 2).unwrap()]);
    assert_eq!(s3.quotient(&two).unwrap_err(), Error::NotNormal);
}

#[test]
fn abelian_invariants() {
    assert_eq!(abelian(&[2, 4]).abelian_invariants(), Some(vec![2, 4]));
    assert_eq!(abelian(&[2, 3]).abelian_invariants(), Some(vec![6]));
    assert_eq!(abelian(&[6, 4]).abelian_invariants(), Some(vec![2, 12]));
    assert_eq!(abelian(&[3, 3, 3]).abelian_invariants(), Some(vec![3, 3, 3]));
    assert_eq!(trivial().abelian_invariants(), Some(vec![]));
    assert_eq!(symmetric3().abelian_invariants(), None);
}

#[test]
fn table_validation_and_json() {
    assert!(AbstractGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
    assert!(AbstractGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
    // Latin square with identity that is not associative.
    let bad = vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
    assert!(AbstractGroup::from_table(bad).is_err());
    let g = c3sq_c2();
    let back = AbstractGroup::from_json(&g.to_json()).unwrap();
    assert_eq!(back, g);
    assert_eq!(g.to_json()["size"], 18);
}

#[test]
fn normal_subgroups() {
    let g = alternating4();
    assert_eq!(g.normal_subgroups_of_order(4).len(), 1);
    assert_eq!(g.normal_subgroups_of_order(3).len(), 0);
    assert_eq!(c3sq_c4().normal_subgroups_of_order(9).len(), 1);
}

#[test]
fn fingerprint_of_trivial() {
    let f = trivial().fingerprint();
    assert_eq!(f.order, 1);
    assert!(f.abelian);
}

#[test]
fn conjugated_group_keeps_table() {
    let g = ProjGroup::closure(&[hessian::matrix(0), m1()]).unwrap();
    let h = g.conjugate_by(&hessian::matrix(3)).unwrap();
    assert_eq!(h.order(), 9);
    for (i, e) in h.elements().iter().enumerate() {
        assert_eq!(h.index_of(e), Some(i));
    }
    let regenerated = ProjGroup::closure(h.generators()).unwrap();
    assert_eq!(regenerated.order(), 9);
    assert!(h.elements().iter().all(|e| regenerated.contains(e)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fingerprint_invariant_under_relabeling(which in 0usize..6, seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let g = [sl23(), c3sq_c4(), quaternion(), alternating4(), dihedral(6), abelian(&[2, 6])][which].clone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut rest: Vec<usize> = (1..g.order()).collect();
        rest.shuffle(&mut rng);
        let mut perm = vec![0];
        perm.extend(rest);
        let h = g.relabel(&perm);
        prop_assert!(AbstractGroup::from_table((0..h.order()).map(|a| (0..h.order()).map(|b| h.mul(a, b)).collect()).collect()).is_ok());
        prop_assert_eq!(g.fingerprint(), h.fingerprint());
        prop_assert!(g.is_isomorphic(&h));
    }

    #[test]
    fn lagrange_for_generated_subgroups(which in 0usize..4, a in 0usize..1000, b in 0usize..1000) {
        let g = [sl23(), c3sq_c4(), alternating4(), dihedral(7)][which].clone();
        let s = g.generated(&[a % g.order(), b % g.order()]);
        prop_assert_eq!(g.order() % s.len(), 0);
        prop_assert!(g.is_subgroup(&s));
    }
}
