//! Borel-Smith and oriented Artin-Borel-Smith condition systems over the
//! p-subgroup classes, the sublattices of superclass functions they cut out,
//! the Dade quotient D^Ω as invariant factors, and the classification of the
//! endotrivial-complex group.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::{
    factorize, hom_to_units_order, is_p_power, is_prime, iso_type_small, GroupData, IsoType,
    QuotientGroup,
};
use crate::intmat::{
    lattice_quotient, solve_congruence_lattice, AbelianInvariants, IntegerLattice,
};
use crate::superclass::{PSubposet, SuperclassFn};

/// Where a condition row came from: the subquotient or chain that generated
/// it, recorded by p-class positions (and chain data for Artin rows).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowProvenance {
    /// T/S elementary abelian of rank 2.
    ElementaryAbelianRank2 { s: usize, t: usize },
    /// T/S cyclic of odd prime order; Ŝ = T.
    CyclicOddP { s: usize, t: usize },
    /// T/S cyclic of order 4; Ŝ the intermediate subgroup.
    CyclicOrder4 { s: usize, shat: usize, t: usize },
    /// T/S quaternion of order 8; Ŝ/S its unique order-2 subgroup.
    Quaternion8 { s: usize, shat: usize, t: usize },
    /// Chain L ◁ K ◁ H with H/K ≅ Z/q^r acting on K/L with kernel q^l.
    Artin {
        l: usize,
        k: usize,
        h_order: usize,
        q: u64,
        r: u32,
        kernel_exp: u32,
    },
}

/// A system of integer equalities and congruences on superclass functions.
#[derive(Debug, Clone, Default)]
pub struct ConditionSystem {
    pub n_classes: usize,
    pub equalities: Vec<(Vec<i64>, RowProvenance)>,
    pub congruences: Vec<(Vec<i64>, u64, RowProvenance)>,
}

impl ConditionSystem {
    fn push_equality(&mut self, row: Vec<i64>, prov: RowProvenance) {
        if !self.equalities.iter().any(|(r, _)| *r == row) {
            self.equalities.push((row, prov));
        }
    }

    fn push_congruence(&mut self, row: Vec<i64>, modulus: u64, prov: RowProvenance) {
        if !self
            .congruences
            .iter()
            .any(|(r, m, _)| *r == row && *m == modulus)
        {
            self.congruences.push((row, modulus, prov));
        }
    }

    pub fn merge(&self, other: &ConditionSystem) -> ConditionSystem {
        assert_eq!(self.n_classes, other.n_classes);
        let mut out = self.clone();
        for (row, prov) in &other.equalities {
            out.push_equality(row.clone(), prov.clone());
        }
        for (row, m, prov) in &other.congruences {
            out.push_congruence(row.clone(), *m, prov.clone());
        }
        out
    }

    /// Checks `f` against every row; returns the indices of violated rows as
    /// (is_congruence, position).
    pub fn check(&self, f: &SuperclassFn) -> Result<Vec<(bool, usize)>> {
        if f.values.len() != self.n_classes {
            return Err(Error::LengthMismatch {
                got: f.values.len(),
                want: self.n_classes,
            });
        }
        let mut violated = Vec::new();
        for (i, (row, _)) in self.equalities.iter().enumerate() {
            let dot: i64 = row.iter().zip(&f.values).map(|(a, b)| a * b).sum();
            if dot != 0 {
                violated.push((false, i));
            }
        }
        for (i, (row, m, _)) in self.congruences.iter().enumerate() {
            let dot: i64 = row.iter().zip(&f.values).map(|(a, b)| a * b).sum();
            if dot.rem_euclid(*m as i64) != 0 {
                violated.push((true, i));
            }
        }
        Ok(violated)
    }

    pub fn passes(&self, f: &SuperclassFn) -> Result<bool> {
        Ok(self.check(f)?.is_empty())
    }

    pub fn solution_lattice(&self) -> Result<IntegerLattice> {
        let equalities: Vec<Vec<i64>> = self.equalities.iter().map(|(r, _)| r.clone()).collect();
        let congruences: Vec<(Vec<i64>, u64)> = self
            .congruences
            .iter()
            .map(|(r, m, _)| (r.clone(), *m))
            .collect();
        solve_congruence_lattice(self.n_classes, &equalities, &congruences)
    }
}

fn class_position(data: &GroupData, poset: &PSubposet, subgroup: usize) -> usize {
    poset
        .position_of_subgroup(data, subgroup)
        .expect("subgroup of a p-subgroup is a p-subgroup")
}

/// Enumerates every subquotient (T, S) of p-subgroups with S ⊴ T and emits
/// the Borel-Smith condition rows: the rank-2 elementary abelian linear
/// relation, and the mod-2 / mod-4 congruences for cyclic (odd p or order 4)
/// and quaternion quotients. Conjugate subquotients produce identical rows
/// and are deduplicated.
pub fn borel_smith_system(data: &GroupData, poset: &PSubposet) -> Result<ConditionSystem> {
    let p = poset.p;
    let n = poset.len();
    let mut sys = ConditionSystem {
        n_classes: n,
        ..Default::default()
    };
    let p_subgroups: Vec<usize> = (0..data.lattice.subgroups.len())
        .filter(|&s| is_p_power(data.lattice.subgroups[s].order, p))
        .collect();
    for &t in &p_subgroups {
        for &s in &p_subgroups {
            if s == t || !data.lattice.inclusion[s][t] || !data.is_normal_in(s, t) {
                continue;
            }
            let quotient = QuotientGroup::new(data, t, s)?;
            match iso_type_small(&quotient) {
                IsoType::ElementaryAbelian(q, 2) if q == p => {
                    let mut row = vec![0i64; n];
                    row[class_position(data, poset, s)] += 1;
                    for &y in &p_subgroups {
                        if y != s
                            && y != t
                            && data.lattice.inclusion[s][y]
                            && data.lattice.inclusion[y][t]
                        {
                            row[class_position(data, poset, y)] -= 1;
                        }
                    }
                    row[class_position(data, poset, t)] += p as i64;
                    sys.push_equality(
                        row,
                        RowProvenance::ElementaryAbelianRank2 {
                            s: class_position(data, poset, s),
                            t: class_position(data, poset, t),
                        },
                    );
                }
                IsoType::Cyclic(m) if m == p as usize && p != 2 => {
                    // Ŝ/S is all of T/S here, so the congruence ties S to T
                    let (sp, tp) = (
                        class_position(data, poset, s),
                        class_position(data, poset, t),
                    );
                    let mut row = vec![0i64; n];
                    row[sp] += 1;
                    row[tp] -= 1;
                    sys.push_congruence(row, 2, RowProvenance::CyclicOddP { s: sp, t: tp });
                }
                IsoType::Cyclic(4) => {
                    // Ŝ is the unique subgroup with S < Ŝ < T of index 2 in T
                    let shat = p_subgroups
                        .iter()
                        .copied()
                        .find(|&y| {
                            data.lattice.subgroups[y].order == 2 * data.lattice.subgroups[s].order
                                && data.lattice.inclusion[s][y]
                                && data.lattice.inclusion[y][t]
                        })
                        .expect("Z/4 quotient has a middle subgroup");
                    let (sp, hp) = (
                        class_position(data, poset, s),
                        class_position(data, poset, shat),
                    );
                    let mut row = vec![0i64; n];
                    row[sp] += 1;
                    row[hp] -= 1;
                    sys.push_congruence(
                        row,
                        2,
                        RowProvenance::CyclicOrder4 {
                            s: sp,
                            shat: hp,
                            t: class_position(data, poset, t),
                        },
                    );
                }
                IsoType::Quaternion8 => {
                    // Ŝ/S is the unique order-2 subgroup of T/S ≅ Q8
                    let mids: Vec<usize> = p_subgroups
                        .iter()
                        .copied()
                        .filter(|&y| {
                            data.lattice.subgroups[y].order == 2 * data.lattice.subgroups[s].order
                                && data.lattice.inclusion[s][y]
                                && data.lattice.inclusion[y][t]
                        })
                        .collect();
                    assert_eq!(mids.len(), 1, "Q8 has a unique involution");
                    let (sp, hp) = (
                        class_position(data, poset, s),
                        class_position(data, poset, mids[0]),
                    );
                    let mut row = vec![0i64; n];
                    row[sp] += 1;
                    row[hp] -= 1;
                    sys.push_congruence(
                        row,
                        4,
                        RowProvenance::Quaternion8 {
                            s: sp,
                            shat: hp,
                            t: class_position(data, poset, t),
                        },
                    );
                }
                _ => {}
            }
        }
    }
    Ok(sys)
}

/// Enumerates chains L ◁ K ◁ H ≤ N_G(L) with K a cyclic p-group, |K/L| = p,
/// and H/K cyclic of prime-power order q^r (q ≠ p, r ≥ 1) acting
/// nontrivially on K/L with kernel of order q^l, and emits the oriented
/// congruence f(L) ≡ f(K) mod 2q^{r−l}.
///
/// Chains on which H/K acts trivially contribute nothing: their congruence
/// carries no orientation data, and at p = 2 every chain is of this kind
/// because Z/2 has no nontrivial automorphism.
pub fn artin_system(data: &GroupData, poset: &PSubposet) -> Result<ConditionSystem> {
    let p = poset.p;
    let n = poset.len();
    let mut sys = ConditionSystem {
        n_classes: n,
        ..Default::default()
    };
    let subgroup_count = data.lattice.subgroups.len();
    for k in 0..subgroup_count {
        let k_order = data.lattice.subgroups[k].order;
        if !is_p_power(k_order, p) || !k_order.is_multiple_of(p as usize) || !data.subgroup_is_cyclic(k) {
            continue;
        }
        for l in 0..subgroup_count {
            if data.lattice.subgroups[l].order * (p as usize) != k_order
                || !data.lattice.inclusion[l][k]
            {
                continue;
            }
            // L ◁ K is automatic for K cyclic, but keep the check honest
            if !data.is_normal_in(l, k) {
                continue;
            }
            let normalizer_l = data.lattice.normalizers[l];
            for h in 0..subgroup_count {
                if h == k
                    || !data.lattice.inclusion[k][h]
                    || !data.lattice.inclusion[h][normalizer_l]
                    || !data.is_normal_in(k, h)
                {
                    continue;
                }
                let index = data.lattice.subgroups[h].order / k_order;
                let factors = factorize(index);
                if factors.len() != 1 || factors[0].0 == p {
                    continue;
                }
                let (q, r) = factors[0];
                let quotient = QuotientGroup::new(data, h, k)?;
                if !matches!(iso_type_small(&quotient), IsoType::Cyclic(_)) {
                    continue;
                }
                // kernel of the conjugation action of H/K on K/L: cosets xK
                // with x k x⁻¹ k⁻¹ ∈ L for all k ∈ K
                let lsub = &data.lattice.subgroups[l];
                let kernel_size = (0..quotient.order)
                    .filter(|&c| {
                        let x = quotient.cosets[c][0];
                        data.lattice.subgroups[k].members.iter().all(|&km| {
                            let comm = data
                                .group
                                .mul(data.group.conj(x, km), data.group.inv(km));
                            lsub.contains(comm)
                        })
                    })
                    .count();
                let kernel_exp = factorize(kernel_size)
                    .first()
                    .map_or(0, |&(_, e)| e);
                debug_assert!(is_p_power(kernel_size, q));
                if kernel_exp == r {
                    continue; // trivial action
                }
                let modulus = 2 * q.pow(r - kernel_exp);
                let (lp, kp) = (
                    class_position(data, poset, l),
                    class_position(data, poset, k),
                );
                let mut row = vec![0i64; n];
                row[lp] += 1;
                row[kp] -= 1;
                sys.push_congruence(
                    row,
                    modulus,
                    RowProvenance::Artin {
                        l: lp,
                        k: kp,
                        h_order: data.lattice.subgroups[h].order,
                        q,
                        r,
                        kernel_exp,
                    },
                );
            }
        }
    }
    Ok(sys)
}

/// The lattice CF_b of Borel-Smith functions inside Z^{p-classes}.
pub fn cfb_lattice(data: &GroupData, poset: &PSubposet) -> Result<IntegerLattice> {
    borel_smith_system(data, poset)?.solution_lattice()
}

/// The lattice CF_{ba+} of oriented Artin-Borel-Smith functions.
pub fn cfba_lattice(data: &GroupData, poset: &PSubposet) -> Result<IntegerLattice> {
    let sys = borel_smith_system(data, poset)?.merge(&artin_system(data, poset)?);
    sys.solution_lattice()
}

/// Invariant factors of D^Ω = CF(G,p)/CF_{ba+}(G,p), the subgroup of the
/// Dade group generated by relative syzygies, realized as the cokernel of
/// the kernel lattice of the Bouc homomorphism.
pub fn dade_omega_invariants(data: &GroupData, poset: &PSubposet) -> Result<AbelianInvariants> {
    let cfba = cfba_lattice(data, poset)?;
    Ok(lattice_quotient(poset.len(), &cfba))
}

/// The abstract group of endotrivial complexes: free of rank `rank CF_b`,
/// with torsion `Hom(G, k^×)` (the p′-part of the abelianization).
pub fn classify_endotrivial_group(data: &GroupData, poset: &PSubposet) -> Result<AbelianInvariants> {
    let free_rank = cfb_lattice(data, poset)?.rank();
    let torsion = hom_to_units_order(data, poset.p)?
        .into_iter()
        .map(BigInt::from)
        .collect();
    Ok(AbelianInvariants { torsion, free_rank })
}

/// Real representations of a cyclic p-group, named by their fixed-point
/// dimension behavior.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CyclicRealRep {
    Trivial,
    /// Only for p = 2: the generator acts by −1 on a line.
    Sign,
    /// The plane rotation through 2πj/n.
    Rotation(usize),
}

/// The dimension function H ↦ dim V^H of a real representation of a cyclic
/// p-group, as a superclass function over its subgroup (= p-class) chain.
pub fn real_dim_function_cyclic(
    data: &GroupData,
    poset: &PSubposet,
    rep: CyclicRealRep,
) -> Result<SuperclassFn> {
    let n = data.group.order();
    if !is_prime(poset.p) || !is_p_power(n, poset.p) || !data.subgroup_is_cyclic(data.lattice.full_index())
    {
        return Err(Error::NotCyclicPGroup);
    }
    let orders: Vec<usize> = poset
        .reps
        .iter()
        .map(|&r| data.lattice.subgroups[r].order)
        .collect();
    let values = match rep {
        CyclicRealRep::Trivial => vec![1i64; poset.len()],
        CyclicRealRep::Sign => {
            if poset.p != 2 {
                return Err(Error::NotCyclicPGroup);
            }
            orders
                .iter()
                .map(|&d| i64::from((n / d).is_multiple_of(2)))
                .collect()
        }
        CyclicRealRep::Rotation(j) => {
            if j == 0 || j >= n {
                return Err(Error::NotCyclicPGroup);
            }
            orders.iter().map(|&d| 2 * i64::from(j % d == 0)).collect()
        }
    };
    Ok(SuperclassFn::new(poset.p, values))
}
