//! Extension problems N → N/G ≅ Q with a target commuting pair in Q, and
//! exhaustive searches for commuting lifts. A continuous homomorphism from
//! Ẑ² to a finite group is the same as a commuting pair of elements, so a
//! Ẑ²-torsor lifts through N exactly when the pair does.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{close, reference, AbstractGroup};
use crate::hessian::HessianLibrary;

pub const DEFAULT_FAMILY_CEILING: usize = 5000;

#[derive(Clone, Debug)]
pub struct ExtensionProblem {
    pub name: String,
    pub group: AbstractGroup,
    /// Sorted element indices of the normal subgroup G.
    pub normal: Vec<usize>,
    pub quotient: AbstractGroup,
    /// Image in the quotient of each element of N.
    pub projection: Vec<usize>,
    pub target: (usize, usize),
    /// Structural facts established while building the family.
    pub checks: Vec<(String, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProblemSummary {
    pub family: String,
    #[serde(rename = "order_N")]
    pub order_n: usize,
    pub order_g: usize,
    pub quotient: QuotientSummary,
    pub lift_exists: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientSummary {
    pub order: usize,
    pub abelian_invariants: Option<Vec<u64>>,
}

impl ExtensionProblem {
    /// Problem with target pair given by elements of N.
    pub fn new(name: &str, group: AbstractGroup, normal: Vec<usize>, lifts: (usize, usize)) -> Result<ExtensionProblem> {
        let (quotient, projection) = group.quotient(&normal)?;
        let target = (projection[lifts.0], projection[lifts.1]);
        if !quotient.commute(target.0, target.1) {
            return Err(Error::InvalidTable("target pair does not commute".into()));
        }
        let mut normal = normal;
        normal.sort_unstable();
        Ok(ExtensionProblem { name: name.into(), group, normal, quotient, projection, target, checks: Vec::new() })
    }

    pub fn target_generates_quotient(&self) -> bool {
        self.quotient.generated(&[self.target.0, self.target.1]).len() == self.quotient.order()
    }

    /// Same N with G = N; the quotient is trivial and any pair lifts.
    pub fn with_full_normal(&self) -> Result<ExtensionProblem> {
        let all: Vec<usize> = (0..self.group.order()).collect();
        ExtensionProblem::new(&format!("{} (G = N)", self.name), self.group.clone(), all, (0, 0))
    }

    /// N replaced by Q × G with the target lifted inside the Q factor.
    pub fn direct_product_control(&self) -> Result<ExtensionProblem> {
        let (sub, _) = self.group.subgroup(&self.normal)?;
        let q = &self.quotient;
        let product = q.direct_product(&sub);
        let k = sub.order();
        let normal: Vec<usize> = (0..k).collect();
        ExtensionProblem::new(&format!("{} (Q x G)", self.name), product, normal, (self.target.0 * k, self.target.1 * k))
    }

    fn preimages(&self, q: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&x| self.projection[x] == q).collect()
    }

    pub fn summary(&self) -> ProblemSummary {
        ProblemSummary {
            family: self.name.clone(),
            order_n: self.group.order(),
            order_g: self.normal.len(),
            quotient: QuotientSummary { order: self.quotient.order(), abelian_invariants: self.quotient.abelian_invariants() },
            lift_exists: commuting_lift_exists(self),
        }
    }
}

/// Whether some commuting `x, y ∈ N` map to the target pair.
pub fn commuting_lift_exists(p: &ExtensionProblem) -> bool {
    let xs = p.preimages(p.target.0);
    let ys = p.preimages(p.target.1);
    xs.iter().any(|&x| ys.iter().any(|&y| p.group.commute(x, y)))
}

/// Whether an abelian subgroup of N maps onto the quotient, i.e. some
/// commuting pair has images generating it. Valid for 2-generated quotients.
pub fn abelian_surjection_exists(p: &ExtensionProblem) -> bool {
    let n = p.group.order();
    let q = &p.quotient;
    (0..n).any(|x| {
        (x..n).any(|y| p.group.commute(x, y) && q.generated(&[p.projection[x], p.projection[y]]).len() == q.order())
    })
}

/// Whether `normal` has a complement generated by at most two elements.
pub fn complement_exists(g: &AbstractGroup, normal: &[usize]) -> bool {
    let index = g.order() / normal.len();
    let inside: HashSet<usize> = normal.iter().copied().collect();
    let mut seen = HashSet::new();
    for x in 0..g.order() {
        for y in x..g.order() {
            let h = g.generated(&[x, y]);
            if h.len() == index && seen.insert(h.clone()) && h.iter().all(|e| *e == 0 || !inside.contains(e)) {
                return true;
            }
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Perm {
    /// Conjugation by the cyclic permutation matrix: (t₀, t₁, t₂) ↦ (t₂, t₀, t₁).
    Cycle,
    /// Swap of the first two coordinates.
    Swap,
}

impl Perm {
    fn order(self) -> u8 {
        match self {
            Perm::Cycle => 3,
            Perm::Swap => 2,
        }
    }

    fn apply(self, t: [u64; 3]) -> [u64; 3] {
        match self {
            Perm::Cycle => [t[2], t[0], t[1]],
            Perm::Swap => [t[1], t[0], t[2]],
        }
    }
}

type Torus = [u64; 3];

/// Elements of (C_m³/Δ) ⋊ ⟨perm⟩, torus part normalized to t₂ = 0.
#[derive(Clone, Copy, Debug)]
struct Semidirect {
    m: u64,
    perm: Perm,
}

impl Semidirect {
    fn norm(&self, t: Torus) -> Torus {
        let m = self.m;
        [(t[0] + m - t[2] % m) % m, (t[1] + m - t[2] % m) % m, 0]
    }

    fn act(&self, k: u8, mut t: Torus) -> Torus {
        for _ in 0..k {
            t = self.perm.apply(t);
        }
        t
    }

    fn mul(&self, a: &(Torus, u8), b: &(Torus, u8)) -> (Torus, u8) {
        let moved = self.act(a.1, b.0);
        let t = [a.0[0] + moved[0], a.0[1] + moved[1], a.0[2] + moved[2]];
        (self.norm(t), (a.1 + b.1) % self.perm.order())
    }

    fn span(&self, gens: &[Torus]) -> HashSet<Torus> {
        let gens: Vec<Torus> = gens.iter().map(|&g| self.norm(g)).collect();
        let mut seen = HashSet::from([[0, 0, 0]]);
        let mut queue = VecDeque::from([[0, 0, 0]]);
        while let Some(t) = queue.pop_front() {
            for g in &gens {
                let s = self.norm([t[0] + g[0], t[1] + g[1], 0]);
                if seen.insert(s) {
                    queue.push_back(s);
                }
            }
        }
        seen
    }

    fn stable(&self, set: &HashSet<Torus>) -> bool {
        set.iter().all(|&t| set.contains(&self.norm(self.perm.apply(t))))
    }

    /// `torus_span ⋊ ⟨perm⟩` with the indices of `normal_span × {1}`.
    fn build(
        &self,
        torus_gens: &[Torus],
        normal_gens: &[Torus],
        ceiling: usize,
    ) -> Result<(Vec<(Torus, u8)>, AbstractGroup, Vec<usize>)> {
        let n0 = self.span(torus_gens);
        let order = n0.len() * self.perm.order() as usize;
        if order > ceiling {
            return Err(Error::CeilingExceeded { order, ceiling });
        }
        let mut gens: Vec<(Torus, u8)> = torus_gens.iter().map(|&t| (self.norm(t), 0)).collect();
        gens.push(([0, 0, 0], 1));
        let (elements, table) = close(([0, 0, 0], 0u8), &gens, |a, b| Ok(self.mul(a, b)), |x| *x, ceiling)?;
        let g = self.span(normal_gens);
        let normal = elements.iter().enumerate().filter(|(_, (t, k))| *k == 0 && g.contains(t)).map(|(i, _)| i).collect();
        Ok((elements, table, normal))
    }
}

fn find(elements: &[(Torus, u8)], x: (Torus, u8)) -> usize {
    elements.iter().position(|e| *e == x).expect("element of the constructed group")
}

fn eisenstein(d: u64, n: u64) -> bool {
    (d * d - d + 1) % n == 0
}

/// Clause-1 family with 3 | n: N = N₀ ⋊ C₃ with N₀ = ⟨G, C_{3a}³/Δ⟩.
pub fn build_family_c1_3n(a: u64, n: u64, d: u64) -> Result<ExtensionProblem> {
    build_family_c1_3n_with_ceiling(a, n, d, DEFAULT_FAMILY_CEILING)
}

pub fn build_family_c1_3n_with_ceiling(a: u64, n: u64, d: u64, ceiling: usize) -> Result<ExtensionProblem> {
    if a == 0 || n == 0 || n % 3 != 0 || !eisenstein(d, n) {
        return Err(Error::BadCongruence(format!("need 3 | n and d^2 - d + 1 = 0 mod n (a={a}, n={n}, d={d})")));
    }
    if n % 9 == 0 || d % 3 != 2 {
        return Err(Error::BadCongruence(format!("expected 9 ∤ n and d = 2 mod 3 (n={n}, d={d})")));
    }
    let m = a * n;
    let s = Semidirect { m, perm: Perm::Cycle };
    let g_gens = [[n, 0, 0], [0, n, 0], [1, d, 0]];
    let n0_gens = [[n, 0, 0], [0, n, 0], [1, d, 0], [n / 3, 0, 0], [0, n / 3, 0]];
    let g_set = s.span(&g_gens);
    let stable = s.stable(&g_set);
    let (elements, table, normal) = s.build(&n0_gens, &g_gens, ceiling)?;
    // C_{an} → C₃ is reduction of exponents mod 3.
    let reduce = |t: &Torus| -> (u64, u64) { (t[0] % 3, t[1] % 3) };
    let image_g: BTreeSet<(u64, u64)> = g_set.iter().map(reduce).collect();
    let image_n0: BTreeSet<(u64, u64)> = elements.iter().filter(|(_, k)| *k == 0).map(|(t, _)| reduce(t)).collect();
    let expected_a: BTreeSet<(u64, u64)> = [(0, 0), (1, 2), (2, 1)].into_iter().collect();
    let mut p = ExtensionProblem::new(
        &format!("c1-3n a={a} n={n} d={d}"),
        table,
        normal,
        (find(&elements, ([0, 0, 0], 1)), find(&elements, (s.norm([n / 3, 0, 0]), 0))),
    )?;
    p.checks = vec![
        ("G is stable under the cyclic permutation".into(), stable),
        ("G maps onto <(1,2,0)> in C3^3/Δ".into(), image_g == expected_a),
        ("N0 maps onto C3^3/Δ".into(), image_n0.len() == 9),
    ];
    Ok(p)
}

/// Clause-1 family with 3 ∤ n, 3 | a: N₀ = ⟨(3n,0,0), (0,3n,0), (1,d,0)⟩
/// inside C_{3an}³/Δ, extended by C₃.
pub fn build_family_c1_3a(a: u64, n: u64, d: u64) -> Result<ExtensionProblem> {
    build_family_c1_3a_with_ceiling(a, n, d, DEFAULT_FAMILY_CEILING)
}

pub fn build_family_c1_3a_with_ceiling(a: u64, n: u64, d: u64, ceiling: usize) -> Result<ExtensionProblem> {
    if a == 0 || n == 0 || n % 3 == 0 || a % 3 != 0 || !eisenstein(d, 3 * n) {
        return Err(Error::BadCongruence(format!("need 3 ∤ n, 3 | a and d^2 - d + 1 = 0 mod 3n (a={a}, n={n}, d={d})")));
    }
    let m = 3 * a * n;
    let s = Semidirect { m, perm: Perm::Cycle };
    let n0_gens = [[3 * n, 0, 0], [0, 3 * n, 0], [1, d, 0]];
    // G = ⟨diag(ζ_a,1,1), diag(1,ζ_a,1), diag(ζ_an, ζ_an^d, 1)⟩ at level 3an.
    let g_gens = [[3 * n, 0, 0], [0, 3 * n, 0], [3, 3 * d, 0]];
    let g_set = s.span(&g_gens);
    let (elements, table, normal) = s.build(&n0_gens, &g_gens, ceiling)?;
    let fixed: Vec<Torus> = elements.iter().filter(|(t, k)| *k == 0 && s.norm(Perm::Cycle.apply(*t)) == *t).map(|(t, _)| *t).collect();
    let third = m / 3;
    let in_c3 = fixed.iter().all(|t| t[0] % third == 0 && t[1] % third == 0);
    let in_g = fixed.iter().all(|t| g_set.contains(t));
    let mut p = ExtensionProblem::new(
        &format!("c1-3a a={a} n={n} d={d}"),
        table,
        normal,
        (find(&elements, ([0, 0, 0], 1)), find(&elements, (s.norm([1, d, 0]), 0))),
    )?;
    p.checks = vec![
        ("G is stable under the cyclic permutation".into(), s.stable(&g_set)),
        ("C3-fixed elements of N0 lie in C3^3/Δ".into(), in_c3),
        ("C3-fixed elements of N0 lie in G".into(), in_g),
        ("no abelian subgroup of N maps onto N/G".into(), !abelian_surjection_exists(&p)),
    ];
    Ok(p)
}

/// Clause-2 family: N₀ = ⟨G, diag(ζ_{2a},1,1)⟩ and N = N₀ ⋊ C₂ with C₂
/// swapping the first two coordinates.
pub fn build_family_c2(a: u64, b: u32, n: u64, d: u64) -> Result<ExtensionProblem> {
    build_family_c2_with_ceiling(a, b, n, d, DEFAULT_FAMILY_CEILING)
}

pub fn build_family_c2_with_ceiling(a: u64, b: u32, n: u64, d: u64, ceiling: usize) -> Result<ExtensionProblem> {
    let two = 1u64.checked_shl(b).unwrap_or(0);
    let sign_ok = two != 0 && (d % two == 1 % two || d % two == two - 1);
    if a == 0 || b == 0 || n % 2 == 0 || (d * d) % n != 1 % n || !sign_ok {
        return Err(Error::BadCongruence(format!("need n odd, b >= 1, d^2 = 1 mod n, d = ±1 mod 2^b (a={a}, b={b}, n={n}, d={d})")));
    }
    let m = a * two * n;
    let s = Semidirect { m, perm: Perm::Swap };
    let g_gens = [[two * n, 0, 0], [0, two * n, 0], [1, d, 0]];
    let extra = [(two / 2) * n, 0, 0];
    let n0_gens = [g_gens[0], g_gens[1], g_gens[2], extra];
    let g_set = s.span(&g_gens);
    let (elements, table, normal) = s.build(&n0_gens, &g_gens, ceiling)?;
    let mut p = ExtensionProblem::new(
        &format!("c2 a={a} b={b} n={n} d={d}"),
        table,
        normal,
        (find(&elements, ([0, 0, 0], 1)), find(&elements, (s.norm(extra), 0))),
    )?;
    p.checks = vec![
        ("G is stable under the swap".into(), s.stable(&g_set)),
        ("G has index 2 in N0".into(), s.span(&n0_gens).len() == 2 * g_set.len()),
    ];
    Ok(p)
}

/// H₄ over H₂, with target the images of M₃ and M₄.
pub fn build_family_h2(lib: &HessianLibrary) -> Result<ExtensionProblem> {
    let h4 = lib.h(4);
    let normal = h4.member_indices(lib.h(2))?;
    let x = h4.index_of(lib.m(3)).ok_or(Error::NotAMember)?;
    let y = h4.index_of(lib.m(4)).ok_or(Error::NotAMember)?;
    ExtensionProblem::new("h2", h4.to_abstract(), normal, (x, y))
}

/// (C₃³/Δ) ⋊ C₃ with the subgroup A = ⟨(1,2,0)⟩.
pub fn e_group() -> (AbstractGroup, Vec<usize>) {
    let s = Semidirect { m: 3, perm: Perm::Cycle };
    let (elements, table, _) = s.build(&[[1, 0, 0], [0, 1, 0]], &[], usize::MAX).expect("order 27");
    let mut a: Vec<usize> = [[0, 0, 0], [1, 2, 0], [2, 1, 0]].iter().map(|&t| find(&elements, (t, 0))).collect();
    a.sort_unstable();
    (table, a)
}

/// E_{±1} ⊂ C_{2^b}² ⋊ C₂ (swap) and A_{±1} = ⟨(1, ±1, 0)⟩.
pub fn e_pm(b: u32, sign: i64) -> (AbstractGroup, Vec<usize>) {
    let two = 1u64 << b;
    let s = Semidirect { m: two, perm: Perm::Swap };
    let second = if sign >= 0 { 1 } else { two - 1 };
    // The torus of C_{2^b}² ⋊ C₂ is embedded in C_{2^b}³/Δ with third coordinate 0.
    let gens = [[1, second % two, 0], [(two / 2) % two, 0, 0]];
    let (elements, table, _) = s.build(&gens, &[], usize::MAX).expect("finite");
    let a_set = s.span(&[[1, second % two, 0]]);
    let mut a: Vec<usize> = elements.iter().enumerate().filter(|(_, (t, k))| *k == 0 && a_set.contains(t)).map(|(i, _)| i).collect();
    a.sort_unstable();
    (table, a)
}

/// An involutive automorphism σ of a finite group A.
#[derive(Clone, Debug)]
pub struct InvolutionAction {
    pub group: AbstractGroup,
    pub sigma: Vec<usize>,
}

impl InvolutionAction {
    pub fn new(group: AbstractGroup, sigma: Vec<usize>) -> Result<InvolutionAction> {
        let n = group.order();
        if sigma.len() != n || sigma.iter().any(|&x| x >= n) {
            return Err(Error::InvalidInvolution("map has the wrong size".into()));
        }
        if (0..n).any(|x| sigma[sigma[x]] != x) {
            return Err(Error::InvalidInvolution("σ² ≠ id".into()));
        }
        for x in 0..n {
            for y in 0..n {
                if sigma[group.mul(x, y)] != group.mul(sigma[x], sigma[y]) {
                    return Err(Error::InvalidInvolution("σ is not a homomorphism".into()));
                }
            }
        }
        Ok(InvolutionAction { group, sigma })
    }

    pub fn trivial(group: AbstractGroup) -> InvolutionAction {
        let sigma = (0..group.order()).collect();
        InvolutionAction { group, sigma }
    }
}

/// H¹(C₂, A): cocycles z with z·σ(z) = e modulo z ~ b·z·σ(b)⁻¹, returned
/// as the smallest index in each class.
pub fn h1_c2(action: &InvolutionAction) -> Vec<usize> {
    let g = &action.group;
    let s = &action.sigma;
    let cocycles: Vec<usize> = (0..g.order()).filter(|&z| g.mul(z, s[z]) == 0).collect();
    let mut class_of: HashMap<usize, usize> = HashMap::new();
    let mut reps = Vec::new();
    for &z in &cocycles {
        if class_of.contains_key(&z) {
            continue;
        }
        reps.push(z);
        for b in 0..g.order() {
            let w = g.mul(g.mul(b, z), g.inv(s[b]));
            class_of.entry(w).or_insert(z);
        }
    }
    reps
}

/// Klein group with the swap of its two C₂ factors.
pub fn klein_with_swap() -> InvolutionAction {
    // Index a·2 + b for (a, b) in C₂ × C₂.
    InvolutionAction::new(reference::klein(), vec![0, 2, 1, 3]).expect("swap is an involution")
}

#[cfg(test)]
mod tests;
