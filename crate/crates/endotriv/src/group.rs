//! Finite permutation groups, their full subgroup lattices, conjugacy classes
//! of subgroups, normalizers, and coset quotients.
//!
//! Everything is enumerated explicitly: groups here are desk scale (order a
//! few hundred at most) and correctness is the only performance target.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_ORDER_CAP: usize = 4000;
pub const DEFAULT_SUBGROUP_CAP: usize = 10000;

/// A finite group of permutations, fully enumerated.
///
/// Elements are sorted lexicographically by image vector, so element index 0
/// is always the identity and the ordering is reproducible across runs.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// `words[i]` is a shortest decomposition of element `i` as a product of
    /// generators, outermost first: `i = gens[w[0]] ∘ gens[w[1]] ∘ …`.
    words: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
    mul_table: Option<Vec<Vec<u32>>>,
}

impl PermGroup {
    /// Enumerates the closure of `generators` under composition.
    pub fn enumerate(degree: usize, generators: Vec<Perm>, order_cap: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator degree {} does not match group degree {degree}",
                    g.degree()
                )));
            }
        }
        let id = Perm::identity(degree);
        let mut found: HashMap<Perm, Vec<usize>> = HashMap::new();
        found.insert(id.clone(), vec![]);
        let mut queue = VecDeque::new();
        queue.push_back(id);
        while let Some(e) = queue.pop_front() {
            let word_e = found[&e].clone();
            for (i, g) in generators.iter().enumerate() {
                let f = g.compose(&e);
                if !found.contains_key(&f) {
                    if found.len() + 1 > order_cap {
                        return Err(Error::OrderCapExceeded {
                            cap: order_cap,
                            reached: found.len() + 1,
                        });
                    }
                    let mut w = Vec::with_capacity(word_e.len() + 1);
                    w.push(i);
                    w.extend_from_slice(&word_e);
                    found.insert(f.clone(), w);
                    queue.push_back(f);
                }
            }
        }
        let mut elements: Vec<Perm> = found.keys().cloned().collect();
        elements.sort();
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let words: Vec<Vec<usize>> = elements.iter().map(|p| found[p].clone()).collect();
        let inverses: Vec<usize> = elements.iter().map(|p| index[&p.inverse()]).collect();
        let orders = elements
            .iter()
            .map(|p| {
                let mut q = p.clone();
                let mut k = 1;
                while !q.is_identity() {
                    q = p.compose(&q);
                    k += 1;
                }
                k
            })
            .collect();
        let mul_table = if elements.len() <= 1024 {
            let table = elements
                .iter()
                .map(|a| {
                    elements
                        .iter()
                        .map(|b| index[&a.compose(b)] as u32)
                        .collect()
                })
                .collect();
            Some(table)
        } else {
            None
        };
        Ok(PermGroup {
            degree,
            generators,
            elements,
            index,
            words,
            inverses,
            orders,
            mul_table,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn element_index(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    /// Index of the product `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul_table {
            Some(t) => t[a][b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    /// Conjugate `g x g⁻¹` by element index.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverses[g])
    }

    /// Word for element `i` in terms of generator indices (outermost first).
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    /// Renders the word of element `i` as e.g. `g0*g2` (identity is `e`).
    pub fn word_string(&self, i: usize) -> String {
        if self.words[i].is_empty() {
            "e".to_string()
        } else {
            self.words[i]
                .iter()
                .map(|k| format!("g{k}"))
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    /// Closure of a set of element indices under the group operation.
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut members: BTreeSet<usize> = BTreeSet::new();
        members.insert(0);
        let mut queue: VecDeque<usize> = seed.iter().copied().collect();
        for &s in seed {
            members.insert(s);
        }
        while let Some(e) = queue.pop_front() {
            let snapshot: Vec<usize> = members.iter().copied().collect();
            for s in snapshot {
                for prod in [self.mul(e, s), self.mul(s, e)] {
                    if members.insert(prod) {
                        queue.push_back(prod);
                    }
                }
            }
            let inv = self.inverses[e];
            if members.insert(inv) {
                queue.push_back(inv);
            }
        }
        members.into_iter().collect()
    }
}

/// A subgroup, stored as the sorted list of parent element indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    pub members: Vec<usize>,
    pub order: usize,
}

impl Subgroup {
    fn new(members: Vec<usize>) -> Self {
        let order = members.len();
        Subgroup { members, order }
    }

    pub fn contains(&self, e: usize) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&e| other.contains(e))
    }
}

/// One conjugacy class of subgroups: the representative is the least member
/// under the (order, member-list) ordering; `members` lists all subgroup
/// indices in the class.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    pub rep: usize,
    pub members: Vec<usize>,
}

/// The full subgroup lattice of a group, with conjugacy classes, normalizers
/// and the subconjugacy relation on class representatives.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    pub subgroups: Vec<Subgroup>,
    /// `inclusion[a][b]` iff subgroup `a` ⊆ subgroup `b`.
    pub inclusion: Vec<Vec<bool>>,
    pub classes: Vec<SubgroupClass>,
    pub class_of: Vec<usize>,
    /// Index (into `subgroups`) of the normalizer of each subgroup.
    pub normalizers: Vec<usize>,
    /// `subconjugacy[i][j]` iff some conjugate of classes[i].rep lies in
    /// classes[j].rep.
    pub subconjugacy: Vec<Vec<bool>>,
}

impl SubgroupLattice {
    /// Enumerates all subgroups bottom-up: all cyclic subgroups first, then
    /// closure under pairwise joins until stable.
    pub fn build(g: &PermGroup, subgroup_cap: usize) -> Result<Self> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(vec![0]);
        for e in 0..g.order() {
            seen.insert(g.closure(&[e]));
        }
        loop {
            let current: Vec<Vec<usize>> = seen.iter().cloned().collect();
            let before = seen.len();
            for i in 0..current.len() {
                for j in (i + 1)..current.len() {
                    let mut seed = current[i].clone();
                    seed.extend_from_slice(&current[j]);
                    let join = g.closure(&seed);
                    seen.insert(join);
                    if seen.len() > subgroup_cap {
                        return Err(Error::SubgroupCapExceeded(subgroup_cap));
                    }
                }
            }
            if seen.len() == before {
                break;
            }
        }
        let mut subgroups: Vec<Subgroup> = seen.into_iter().map(Subgroup::new).collect();
        subgroups.sort_by(|a, b| (a.order, &a.members).cmp(&(b.order, &b.members)));
        let by_members: HashMap<Vec<usize>, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members.clone(), i))
            .collect();

        let n = subgroups.len();
        let mut inclusion = vec![vec![false; n]; n];
        for a in 0..n {
            for b in 0..n {
                inclusion[a][b] = subgroups[a].order <= subgroups[b].order
                    && subgroups[a].is_subset_of(&subgroups[b]);
            }
        }

        // conjugation orbits
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<SubgroupClass> = Vec::new();
        for s in 0..n {
            if class_of[s] != usize::MAX {
                continue;
            }
            let mut orbit = BTreeSet::new();
            orbit.insert(s);
            let mut queue = vec![s];
            while let Some(t) = queue.pop() {
                for gidx in 0..g.order() {
                    let conj: Vec<usize> = {
                        let mut v: Vec<usize> = subgroups[t]
                            .members
                            .iter()
                            .map(|&x| g.conj(gidx, x))
                            .collect();
                        v.sort_unstable();
                        v
                    };
                    let c = by_members[&conj];
                    if orbit.insert(c) {
                        queue.push(c);
                    }
                }
            }
            let members: Vec<usize> = orbit.into_iter().collect();
            let rep = members[0];
            let class_idx = classes.len();
            for &m in &members {
                class_of[m] = class_idx;
            }
            classes.push(SubgroupClass { rep, members });
        }

        let normalizers: Vec<usize> = (0..n)
            .map(|s| {
                let mut norm: Vec<usize> = (0..g.order())
                    .filter(|&gidx| {
                        subgroups[s]
                            .members
                            .iter()
                            .all(|&x| subgroups[s].contains(g.conj(gidx, x)))
                    })
                    .collect();
                norm.sort_unstable();
                by_members[&norm]
            })
            .collect();

        let nc = classes.len();
        let mut subconjugacy = vec![vec![false; nc]; nc];
        for (i, ci) in classes.iter().enumerate() {
            for (j, cj) in classes.iter().enumerate() {
                subconjugacy[i][j] = ci
                    .members
                    .iter()
                    .any(|&m| inclusion[m][cj.rep]);
            }
        }

        Ok(SubgroupLattice {
            subgroups,
            inclusion,
            classes,
            class_of,
            normalizers,
            subconjugacy,
        })
    }

    pub fn subgroup_index(&self, members: &[usize]) -> Option<usize> {
        self.subgroups
            .binary_search_by(|s| (s.order, s.members.as_slice()).cmp(&(members.len(), members)))
            .ok()
    }

    pub fn trivial_index(&self) -> usize {
        0
    }

    pub fn full_index(&self) -> usize {
        self.subgroups.len() - 1
    }
}

/// A group together with its subgroup lattice; the shared context for all
/// higher-level computations.
#[derive(Debug)]
pub struct GroupData {
    pub group: PermGroup,
    pub lattice: SubgroupLattice,
}

impl GroupData {
    pub fn new(group: PermGroup) -> Result<Self> {
        Self::with_subgroup_cap(group, DEFAULT_SUBGROUP_CAP)
    }

    pub fn with_subgroup_cap(group: PermGroup, subgroup_cap: usize) -> Result<Self> {
        let lattice = SubgroupLattice::build(&group, subgroup_cap)?;
        Ok(GroupData { group, lattice })
    }

    /// True if the subgroup (by index) is cyclic.
    pub fn subgroup_is_cyclic(&self, s: usize) -> bool {
        let sub = &self.lattice.subgroups[s];
        sub.members
            .iter()
            .any(|&e| self.group.element_order(e) == sub.order)
    }

    /// A small generating set of the subgroup, greedy by element index.
    pub fn subgroup_generators(&self, s: usize) -> Vec<usize> {
        let sub = &self.lattice.subgroups[s];
        let mut gens: Vec<usize> = Vec::new();
        let mut span: Vec<usize> = vec![0];
        for &e in &sub.members {
            if span.binary_search(&e).is_err() {
                gens.push(e);
                let mut seed = gens.clone();
                seed.push(0);
                span = self.group.closure(&seed);
                if span.len() == sub.order {
                    break;
                }
            }
        }
        gens
    }

    /// Is `n` (subgroup index) normal in `h` (subgroup index)?
    pub fn is_normal_in(&self, n: usize, h: usize) -> bool {
        if !self.lattice.inclusion[n][h] {
            return false;
        }
        let nn = &self.lattice.subgroups[n];
        self.lattice.subgroups[h]
            .members
            .iter()
            .all(|&g| nn.members.iter().all(|&x| nn.contains(self.group.conj(g, x))))
    }

    /// Double coset representatives for `A\G/B` (subgroup indices), each the
    /// minimal element index of its double coset, in ascending order.
    pub fn double_coset_reps(&self, a: usize, b: usize) -> Vec<usize> {
        let asub = &self.lattice.subgroups[a];
        let bsub = &self.lattice.subgroups[b];
        let mut assigned = vec![false; self.group.order()];
        let mut reps = Vec::new();
        for x in 0..self.group.order() {
            if assigned[x] {
                continue;
            }
            reps.push(x);
            for &p in &asub.members {
                let px = self.group.mul(p, x);
                for &q in &bsub.members {
                    assigned[self.group.mul(px, q)] = true;
                }
            }
        }
        reps
    }

    /// Returns the subgroup index of `x⁻¹ S x` for subgroup index `s`.
    pub fn conjugate_subgroup(&self, s: usize, x: usize) -> usize {
        let xi = self.group.inv(x);
        let mut v: Vec<usize> = self.lattice.subgroups[s]
            .members
            .iter()
            .map(|&e| self.group.conj(xi, e))
            .collect();
        v.sort_unstable();
        self.lattice.subgroup_index(&v).expect("conjugate must be in lattice")
    }
}

/// Multiplication table of a quotient group `h/n`, with cosets listed by
/// ascending minimal representative.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    /// Each coset as a sorted list of parent element indices.
    pub cosets: Vec<Vec<usize>>,
    pub mult: Vec<Vec<usize>>,
    pub order: usize,
    /// Coset index containing each parent element (only elements of `h`).
    coset_of: HashMap<usize, usize>,
}

impl QuotientGroup {
    /// Forms `h/n`; rejects when `n` is not normal in `h`.
    pub fn new(data: &GroupData, h: usize, n: usize) -> Result<Self> {
        if !data.lattice.inclusion[n][h] {
            return Err(Error::NotContained);
        }
        if !data.is_normal_in(n, h) {
            return Err(Error::NotNormal);
        }
        let hsub = &data.lattice.subgroups[h];
        let nsub = &data.lattice.subgroups[n];
        let mut coset_of: HashMap<usize, usize> = HashMap::new();
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for &x in &hsub.members {
            if coset_of.contains_key(&x) {
                continue;
            }
            let mut coset: Vec<usize> =
                nsub.members.iter().map(|&m| data.group.mul(x, m)).collect();
            coset.sort_unstable();
            let idx = cosets.len();
            for &y in &coset {
                coset_of.insert(y, idx);
            }
            cosets.push(coset);
        }
        // cosets are discovered in ascending order of minimal representative
        // because hsub.members is sorted
        let order = cosets.len();
        let mut mult = vec![vec![0usize; order]; order];
        for i in 0..order {
            for j in 0..order {
                mult[i][j] = coset_of[&data.group.mul(cosets[i][0], cosets[j][0])];
            }
        }
        Ok(QuotientGroup {
            cosets,
            mult,
            order,
            coset_of,
        })
    }

    pub fn coset_of(&self, parent_element: usize) -> Option<usize> {
        self.coset_of.get(&parent_element).copied()
    }

    pub fn identity(&self) -> usize {
        self.coset_of[&0]
    }

    pub fn coset_order(&self, i: usize) -> usize {
        let id = self.identity();
        let mut x = i;
        let mut k = 1;
        while x != id {
            x = self.mult[i][x];
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (0..self.order).all(|j| self.mult[i][j] == self.mult[j][i]))
    }

    /// Realizes the quotient as a permutation group via its left-regular
    /// action. Returns the group and, for each coset index, the index of the
    /// corresponding element in the new group's canonical element order.
    pub fn to_perm_group(&self) -> (PermGroup, Vec<usize>) {
        let perms: Vec<Perm> = (0..self.order)
            .map(|i| Perm::from_images(self.mult[i].clone()).expect("rows of a group table are bijections"))
            .collect();
        let g = PermGroup::enumerate(self.order, perms.clone(), self.order)
            .expect("regular representation closes on itself");
        let map = perms
            .iter()
            .map(|p| g.element_index(p).expect("regular element present"))
            .collect();
        (g, map)
    }
}

/// Small-group isomorphism type recognition, as far as the condition systems
/// need it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoType {
    Cyclic(usize),
    ElementaryAbelian(u64, u32),
    Quaternion8,
    Other,
}

/// Recognizes cyclic groups of any order, elementary-abelian rank 2, and the
/// quaternion group of order 8; everything else is `Other`.
pub fn iso_type_small(q: &QuotientGroup) -> IsoType {
    let n = q.order;
    if (0..n).any(|i| q.coset_order(i) == n) {
        return IsoType::Cyclic(n);
    }
    if let Some(p) = exact_prime_square(n) {
        if q.is_abelian() && (0..n).all(|i| i == q.identity() || q.coset_order(i) == p as usize) {
            return IsoType::ElementaryAbelian(p, 2);
        }
    }
    if n == 8 && !q.is_abelian() {
        let involutions = (0..n).filter(|&i| q.coset_order(i) == 2).count();
        if involutions == 1 {
            return IsoType::Quaternion8;
        }
    }
    IsoType::Other
}

fn exact_prime_square(n: usize) -> Option<u64> {
    let r = (n as f64).sqrt().round() as usize;
    for p in r.saturating_sub(1)..=r + 1 {
        if p >= 2 && p * p == n && is_prime(p as u64) {
            return Some(p as u64);
        }
    }
    None
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: usize, p: u64) -> usize {
    let mut m = n;
    let mut q = 1usize;
    while m.is_multiple_of(p as usize) {
        m /= p as usize;
        q *= p as usize;
    }
    q
}

pub fn is_p_power(n: usize, p: u64) -> bool {
    p_part(n, p) == n
}

/// Prime factorization of `n` as (prime, exponent) pairs, ascending.
pub fn factorize(n: usize) -> Vec<(u64, u32)> {
    let mut n = n as u64;
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Invariant factors (each > 1, ascending divisibility) of the p′-part of the
/// abelianization of `g`: the structure of `Hom(G, k^×)` over a sufficiently
/// large field of characteristic `p`.
pub fn hom_to_units_order(data: &GroupData, p: u64) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let g = &data.group;
    // commutator subgroup
    let mut seed = Vec::new();
    for a in 0..g.order() {
        for b in 0..g.order() {
            let comm = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
            if comm != 0 {
                seed.push(comm);
            }
        }
    }
    seed.sort_unstable();
    seed.dedup();
    let derived = g.closure(&seed);
    let d_idx = data
        .lattice
        .subgroup_index(&derived)
        .expect("derived subgroup is in the lattice");
    let ab = QuotientGroup::new(data, data.lattice.full_index(), d_idx)?;

    // For each prime q ≠ p, read off the exponent partition of the q-part
    // from fixed-point counts #{x : x^{q^j} = 1}.
    let mut partitions: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (q, e_max) in factorize(ab.order) {
        if q == p {
            continue;
        }
        let mut counts = vec![0usize; e_max as usize + 1];
        for i in 0..ab.order {
            let ord = ab.coset_order(i);
            for (j, c) in counts.iter_mut().enumerate() {
                let qj = (q as usize).pow(j as u32);
                if qj.is_multiple_of(ord) {
                    *c += 1;
                }
            }
        }
        // counts[j] = q^{Σ min(j, a_i)}; differences of logs give the
        // conjugate partition of the exponents a_1 ≥ a_2 ≥ …
        let logs: Vec<u32> = counts
            .iter()
            .map(|&c| {
                let mut l = 0;
                let mut c = c as u64;
                while c.is_multiple_of(q) {
                    c /= q;
                    l += 1;
                }
                l
            })
            .collect();
        let mut exps: Vec<u32> = Vec::new();
        for j in 1..logs.len() {
            let cnt = logs[j] - logs[j - 1]; // #{i : a_i ≥ j}
            while exps.len() < cnt as usize {
                exps.push(0);
            }
            for a in exps.iter_mut().take(cnt as usize) {
                *a += 1;
            }
        }
        if !exps.is_empty() {
            partitions.insert(q, exps);
        }
    }
    let k = partitions.values().map(|v| v.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..k)
        .map(|i| {
            partitions
                .iter()
                .map(|(q, exps)| exps.get(i).map_or(1, |&a| q.pow(a)))
                .product()
        })
        .collect();
    factors.retain(|&d| d > 1);
    factors.reverse(); // ascending divisibility d_1 | d_2 | …
    Ok(factors)
}
