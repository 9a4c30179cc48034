//! Finite groups given by an explicit multiplication table.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, lcm};
use crate::error::{Error, Result};

/// Group on `0..n` with identity `0`; `table[a * n + b] = a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractGroup {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
}

/// Isomorphism invariants.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupFingerprint {
    pub order: usize,
    /// element order → number of elements of that order
    pub order_histogram: BTreeMap<u64, usize>,
    pub abelian: bool,
    pub center_order: usize,
    pub derived_order: usize,
    pub class_count: usize,
    pub abelian_invariants: Option<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    size: usize,
    table: Vec<Vec<u32>>,
}

/// Breadth-first closure of `gens` under right multiplication.
///
/// Returns the elements (identity first) and the full multiplication table,
/// which is filled in from the right-generator table without further calls
/// to `mul`.
pub fn close<T, K, M, F>(identity: T, gens: &[T], mul: M, key: F, ceiling: usize) -> Result<(Vec<T>, AbstractGroup)>
where
    K: Hash + Eq,
    M: Fn(&T, &T) -> Result<T>,
    F: Fn(&T) -> K,
{
    let mut elements = vec![identity];
    let mut index: HashMap<K, usize> = HashMap::new();
    index.insert(key(&elements[0]), 0);
    let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
    let k = gens.len();
    let mut right: Vec<u32> = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        for (gi, g) in gens.iter().enumerate() {
            let y = mul(&elements[i], g)?;
            let ky = key(&y);
            let j = match index.get(&ky) {
                Some(&j) => j,
                None => {
                    let j = elements.len();
                    if j >= ceiling {
                        return Err(Error::OrderCeilingExceeded { ceiling });
                    }
                    index.insert(ky, j);
                    elements.push(y);
                    parent.push((i, gi));
                    j
                }
            };
            right.push(j as u32);
        }
        i += 1;
    }
    let n = elements.len();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        table[a * n] = a as u32;
        for b in 1..n {
            let (pb, gb) = parent[b];
            let t = table[a * n + pb] as usize;
            table[a * n + b] = right[t * k + gb];
        }
    }
    Ok((elements, AbstractGroup::from_flat_unchecked(n, table)))
}

impl AbstractGroup {
    /// Validates shape, identity, inverses and associativity.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<AbstractGroup> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {a} has length {}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidTable(format!("entry {x} out of range")));
                }
                flat.push(x as u32);
            }
        }
        for a in 0..n {
            if flat[a] as usize != a || flat[a * n] as usize != a {
                return Err(Error::InvalidTable("index 0 is not the identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            let row = &flat[a * n..(a + 1) * n];
            let mut seen = vec![false; n];
            for &x in row {
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::InvalidTable(format!("row {a} repeats an element")));
                }
            }
            inv[a] = row.iter().position(|&x| x == 0).expect("row is a permutation") as u32;
        }
        let g = AbstractGroup { n, table: flat, inv };
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                        return Err(Error::InvalidTable(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Caller guarantees the group axioms.
    pub fn from_flat_unchecked(n: usize, table: Vec<u32>) -> AbstractGroup {
        let inv = (0..n)
            .map(|a| table[a * n..(a + 1) * n].iter().position(|&x| x == 0).expect("inverse exists") as u32)
            .collect();
        AbstractGroup { n, table, inv }
    }

    pub fn trivial() -> AbstractGroup {
        AbstractGroup { n: 1, table: vec![0], inv: vec![0] }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let table = (0..self.n).map(|a| self.table[a * self.n..(a + 1) * self.n].to_vec()).collect();
        serde_json::to_value(TableJson { size: self.n, table }).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<AbstractGroup> {
        let t: TableJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if t.table.len() != t.size {
            return Err(Error::InvalidTable("size does not match table".into()));
        }
        Self::from_table(t.table.into_iter().map(|r| r.into_iter().map(|x| x as usize).collect()).collect())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.n).fold(1, |acc, a| lcm(acc, self.element_order(a)))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.commute(a, b)))
    }

    pub fn centralizer(&self, set: &[usize]) -> Vec<usize> {
        (0..self.n).filter(|&g| set.iter().all(|&x| self.commute(g, x))).collect()
    }

    pub fn center(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.n).collect();
        self.centralizer(&all)
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.n).filter(|&i| seen[i]).collect()
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let s: HashSet<usize> = set.iter().copied().collect();
        s.contains(&0) && set.iter().all(|&a| set.iter().all(|&b| s.contains(&self.mul(a, self.inv(b)))))
    }

    fn require_subgroup(&self, set: &[usize]) -> Result<()> {
        if set.iter().any(|&x| x >= self.n) || !self.is_subgroup(set) {
            return Err(Error::NotASubgroup);
        }
        Ok(())
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let mut s = vec![false; self.n];
        for &x in set {
            s[x] = true;
        }
        (0..self.n).all(|g| set.iter().all(|&x| s[self.conj(g, x)]))
    }

    pub fn normalizer(&self, set: &[usize]) -> Vec<usize> {
        let mut s = vec![false; self.n];
        for &x in set {
            s[x] = true;
        }
        (0..self.n).filter(|&g| set.iter().all(|&x| s[self.conj(g, x)])).collect()
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.n];
        let mut classes = Vec::new();
        for x in 0..self.n {
            if assigned[x] {
                continue;
            }
            let class: BTreeSet<usize> = (0..self.n).map(|g| self.conj(g, x)).collect();
            for &y in &class {
                assigned[y] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut comms = BTreeSet::new();
        for a in 0..self.n {
            for b in 0..self.n {
                comms.insert(self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))));
            }
        }
        self.generated(&comms.into_iter().collect::<Vec<_>>())
    }

    /// Restriction of the table to a subgroup, with the sorted member list
    /// giving the new index → old index map.
    pub fn subgroup(&self, set: &[usize]) -> Result<(AbstractGroup, Vec<usize>)> {
        self.require_subgroup(set)?;
        let mut members: Vec<usize> = set.to_vec();
        members.sort_unstable();
        members.dedup();
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let k = members.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &members {
            for &b in &members {
                table.push(pos[&self.mul(a, b)] as u32);
            }
        }
        Ok((AbstractGroup::from_flat_unchecked(k, table), members))
    }

    /// `G/H` with the projection `G → G/H`. Cosets are numbered by their
    /// smallest member, so the identity coset is 0.
    pub fn quotient(&self, normal: &[usize]) -> Result<(AbstractGroup, Vec<usize>)> {
        self.require_subgroup(normal)?;
        if !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let mut proj = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n {
            if proj[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &h in normal {
                proj[self.mul(g, h)] = c;
            }
        }
        let k = reps.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                table.push(proj[self.mul(a, b)] as u32);
            }
        }
        Ok((AbstractGroup::from_flat_unchecked(k, table), proj))
    }

    /// Same group with element `i` renamed `perm[i]`; `perm[0]` must be 0.
    pub fn relabel(&self, perm: &[usize]) -> AbstractGroup {
        assert_eq!(perm[0], 0, "identity must stay at index 0");
        let mut table = vec![0u32; self.n * self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                table[perm[a] * self.n + perm[b]] = perm[self.mul(a, b)] as u32;
            }
        }
        AbstractGroup::from_flat_unchecked(self.n, table)
    }

    pub fn order_histogram(&self) -> BTreeMap<u64, usize> {
        let mut h = BTreeMap::new();
        for a in 0..self.n {
            *h.entry(self.element_order(a)).or_insert(0) += 1;
        }
        h
    }

    /// Invariant factors `d₁ | d₂ | …` (trivial factors dropped), or `None`
    /// for nonabelian groups.
    pub fn abelian_invariants(&self) -> Option<Vec<u64>> {
        if !self.is_abelian() {
            return None;
        }
        let orders: Vec<u64> = (0..self.n).map(|a| self.element_order(a)).collect();
        let mut per_prime: Vec<Vec<u64>> = Vec::new();
        for (p, _) in factorize(self.n as u64) {
            // #{x : x^{p^k} = 1} = p^{Σ min(k, e_i)}; read off the e_i.
            let mut counts = vec![0u32];
            let mut pk = 1u64;
            loop {
                pk *= p;
                let c = orders.iter().filter(|&&o| pk % o == 0).count();
                let e = log_p(c as u64, p);
                if e == *counts.last().expect("nonempty") {
                    break;
                }
                counts.push(e);
            }
            // counts[k] = Σ min(k, e_i); the number of e_i ≥ k is counts[k] − counts[k−1].
            let ge: Vec<u32> = counts.windows(2).map(|w| w[1] - w[0]).collect();
            let mut exps = Vec::new();
            for k in 0..ge.len() {
                let next = ge.get(k + 1).copied().unwrap_or(0);
                for _ in 0..(ge[k] - next) {
                    exps.push(p.pow(k as u32 + 1));
                }
            }
            exps.sort_unstable();
            per_prime.push(exps);
        }
        // Combine largest with largest.
        let len = per_prime.iter().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for exps in &per_prime {
            for (i, &q) in exps.iter().rev().enumerate() {
                factors[len - 1 - i] *= q;
            }
        }
        Some(factors)
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        GroupFingerprint {
            order: self.n,
            order_histogram: self.order_histogram(),
            abelian: self.is_abelian(),
            center_order: self.center().len(),
            derived_order: self.derived_subgroup().len(),
            class_count: self.conjugacy_classes().len(),
            abelian_invariants: self.abelian_invariants(),
        }
    }

    /// Greedy generating set, preferring elements of large order.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<(u64, usize)> = (1..self.n).map(|a| (self.element_order(a), a)).collect();
        by_order.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        let mut gens = Vec::new();
        let mut inside = vec![false; self.n];
        inside[0] = true;
        for (_, a) in by_order {
            if inside[a] {
                continue;
            }
            gens.push(a);
            for x in self.generated(&gens) {
                inside[x] = true;
            }
            if inside.iter().all(|&b| b) {
                break;
            }
        }
        gens
    }

    /// An isomorphism `self → other` as an index map, if one exists.
    pub fn isomorphism_to(&self, other: &AbstractGroup) -> Option<Vec<usize>> {
        if self.fingerprint() != other.fingerprint() {
            return None;
        }
        let gens = self.small_generating_set();
        // BFS words for self over `gens`.
        let mut parent = vec![(usize::MAX, 0usize); self.n];
        let mut order = vec![0usize];
        parent[0] = (0, 0);
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for (gi, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if parent[y].0 == usize::MAX {
                    parent[y] = (x, gi);
                    order.push(y);
                }
            }
            i += 1;
        }
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                (0..other.n).filter(|&b| other.element_order(b) == o).collect()
            })
            .collect();
        let mut images = vec![0usize; gens.len()];
        self.search_images(other, &gens, &order, &parent, &candidates, &mut images, 0)
    }

    #[allow(clippy::too_many_arguments)]
    fn search_images(
        &self,
        other: &AbstractGroup,
        gens: &[usize],
        order: &[usize],
        parent: &[(usize, usize)],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        depth: usize,
    ) -> Option<Vec<usize>> {
        if depth == gens.len() {
            let mut map = vec![usize::MAX; self.n];
            map[0] = 0;
            for &y in &order[1..] {
                let (x, gi) = parent[y];
                map[y] = other.mul(map[x], images[gi]);
            }
            let mut hit = vec![false; other.n];
            for &m in &map {
                if std::mem::replace(&mut hit[m], true) {
                    return None;
                }
            }
            for x in 0..self.n {
                for (gi, &g) in gens.iter().enumerate() {
                    if map[self.mul(x, g)] != other.mul(map[x], images[gi]) {
                        return None;
                    }
                }
            }
            return Some(map);
        }
        for &c in &candidates[depth] {
            // Commutation between generators must be preserved.
            if (0..depth).any(|j| self.commute(gens[j], gens[depth]) != other.commute(images[j], c)) {
                continue;
            }
            images[depth] = c;
            if let Some(m) = self.search_images(other, gens, order, parent, candidates, images, depth + 1) {
                return Some(m);
            }
        }
        None
    }

    pub fn is_isomorphic(&self, other: &AbstractGroup) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// One Sylow p-subgroup, grown inside successive normalizers.
    pub fn sylow_subgroup(&self, p: u64) -> Result<Vec<usize>> {
        let target = sylow_order(self.n, p).ok_or(Error::PrimeDoesNotDivide { prime: p, order: self.n })?;
        let mut sub = vec![0usize];
        while (sub.len() as u64) < target {
            let norm = self.normalizer(&sub);
            let mut inside = vec![false; self.n];
            for &x in &sub {
                inside[x] = true;
            }
            let g = norm
                .iter()
                .copied()
                .find(|&g| !inside[g] && inside[self.pow(g, p)])
                .expect("Cauchy's theorem in N(P)/P");
            let mut gens = sub.clone();
            gens.push(g);
            sub = self.generated(&gens);
        }
        Ok(sub)
    }

    /// Number of Sylow p-subgroups, counted as distinct conjugates of one.
    pub fn sylow_count(&self, p: u64) -> Result<usize> {
        let sub = self.sylow_subgroup(p)?;
        let conjugates: HashSet<Vec<usize>> = (0..self.n)
            .map(|g| {
                let mut c: Vec<usize> = sub.iter().map(|&x| self.conj(g, x)).collect();
                c.sort_unstable();
                c
            })
            .collect();
        Ok(conjugates.len())
    }

    /// Normal subgroups of order `k`, as unions of conjugacy classes.
    pub fn normal_subgroups_of_order(&self, k: usize) -> Vec<Vec<usize>> {
        if k == 0 || self.n % k != 0 {
            return Vec::new();
        }
        let classes: Vec<Vec<usize>> = self.conjugacy_classes().into_iter().filter(|c| c[0] != 0).collect();
        let mut out = Vec::new();
        let mut chosen = vec![0usize];
        self.class_unions(&classes, 0, k, &mut chosen, &mut out);
        out
    }

    fn class_unions(&self, classes: &[Vec<usize>], from: usize, k: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == k {
            if self.is_subgroup(chosen) {
                let mut s = chosen.clone();
                s.sort_unstable();
                out.push(s);
            }
            return;
        }
        for i in from..classes.len() {
            let c = &classes[i];
            if chosen.len() + c.len() > k || k % (self.element_order(c[0]) as usize) != 0 {
                continue;
            }
            let before = chosen.len();
            chosen.extend_from_slice(c);
            self.class_unions(classes, i + 1, k, chosen, out);
            chosen.truncate(before);
        }
    }

    /// Direct product; element `(a, b)` has index `a * |other| + b`.
    pub fn direct_product(&self, other: &AbstractGroup) -> AbstractGroup {
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let (a1, a2) = (a / n2, a % n2);
                let (b1, b2) = (b / n2, b % n2);
                table[a * n + b] = (self.mul(a1, b1) * n2 + other.mul(a2, b2)) as u32;
            }
        }
        AbstractGroup::from_flat_unchecked(n, table)
    }
}

fn log_p(mut x: u64, p: u64) -> u32 {
    let mut e = 0;
    while x > 1 {
        debug_assert_eq!(x % p, 0);
        x /= p;
        e += 1;
    }
    e
}

/// Largest power of `p` dividing `n`, when `p | n`.
pub fn sylow_order(n: usize, p: u64) -> Option<u64> {
    let n = n as u64;
    if p < 2 || n % p != 0 {
        return None;
    }
    let mut q = 1;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        q *= p;
    }
    Some(q)
}
