//! The Burnside ring of a p-group through its table of marks: exact
//! multiplication by mark pullback, unit enumeration, the exponential map
//! from superclass functions, and the Tornehave / Lefschetz-surjectivity
//! verifications.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::borel_smith::cfb_lattice;
use crate::complex::{build_from_hmarks, lefschetz, verify_endotrivial, h_marks};
use crate::error::{Error, Result};
use crate::fpmat::FpMatrix;
use crate::group::{is_p_power, GroupData};
use crate::superclass::{PSubposet, SuperclassFn};

pub const UNIT_CLASS_GUARD: usize = 20;

/// A virtual G-set: integer coefficients over the canonical subgroup-class
/// ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnsideElement {
    pub coefficients: Vec<i64>,
}

impl BurnsideElement {
    pub fn basis(n_classes: usize, class: usize) -> Self {
        let mut coefficients = vec![0; n_classes];
        coefficients[class] = 1;
        BurnsideElement { coefficients }
    }

    pub fn identity(data: &GroupData) -> Self {
        let n = data.lattice.classes.len();
        BurnsideElement::basis(n, n - 1)
    }
}

/// The table of marks: `M[k][h] = |(G/H)^K|` over class representatives,
/// upper triangular under the canonical ascending ordering.
pub fn table_of_marks(data: &GroupData) -> Vec<Vec<i64>> {
    let classes = &data.lattice.classes;
    classes
        .iter()
        .map(|ck| {
            let k_rep = &data.lattice.subgroups[ck.rep];
            classes
                .iter()
                .map(|ch| {
                    // count cosets gH with g⁻¹Kg ⊆ H
                    let h_rep = &data.lattice.subgroups[ch.rep];
                    let mut assigned = vec![false; data.group.order()];
                    let mut count = 0i64;
                    for g in 0..data.group.order() {
                        if assigned[g] {
                            continue;
                        }
                        for &m in &h_rep.members {
                            assigned[data.group.mul(g, m)] = true;
                        }
                        let gi = data.group.inv(g);
                        if k_rep
                            .members
                            .iter()
                            .all(|&x| h_rep.contains(data.group.conj(gi, x)))
                        {
                            count += 1;
                        }
                    }
                    count
                })
                .collect()
        })
        .collect()
}

/// Mark vector of a virtual G-set: the table of marks applied to its
/// coefficient vector.
pub fn marks_of(marks_table: &[Vec<i64>], x: &BurnsideElement) -> Vec<i64> {
    marks_table
        .iter()
        .map(|row| row.iter().zip(&x.coefficients).map(|(a, b)| a * b).sum())
        .collect()
}

/// Pulls a mark vector back to Burnside coefficients by triangular
/// back-substitution; `None` when the pullback is not integral.
pub fn coefficients_from_marks(marks_table: &[Vec<i64>], marks: &[i64]) -> Option<Vec<i64>> {
    let n = marks.len();
    let mut coeffs = vec![0i64; n];
    for h in (0..n).rev() {
        let mut acc = marks[h];
        for j in (h + 1)..n {
            acc -= marks_table[h][j] * coeffs[j];
        }
        let diag = marks_table[h][h];
        if acc % diag != 0 {
            return None;
        }
        coeffs[h] = acc / diag;
    }
    // upper rows must also be consistent; triangularity guarantees it, and a
    // zero structure violation would surface here
    let check = marks_of(marks_table, &BurnsideElement { coefficients: coeffs.clone() });
    if check != marks {
        return None;
    }
    Some(coeffs)
}

/// Exact product in the Burnside ring: marks multiply pointwise and the
/// result pulls back integrally.
pub fn multiply(
    marks_table: &[Vec<i64>],
    a: &BurnsideElement,
    b: &BurnsideElement,
) -> BurnsideElement {
    let ma = marks_of(marks_table, a);
    let mb = marks_of(marks_table, b);
    let prod: Vec<i64> = ma.iter().zip(&mb).map(|(x, y)| x * y).collect();
    let coefficients = coefficients_from_marks(marks_table, &prod)
        .expect("product of Burnside elements is a Burnside element");
    BurnsideElement { coefficients }
}

/// All units of the Burnside ring: the ±1 mark vectors whose pullback is
/// integral, enumerated exhaustively (guarded at 2^20 candidates).
pub fn units(data: &GroupData, marks_table: &[Vec<i64>]) -> Result<Vec<BurnsideElement>> {
    let n = data.lattice.classes.len();
    if n > UNIT_CLASS_GUARD {
        return Err(Error::UnitGuardExceeded(n));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let marks: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        if let Some(coefficients) = coefficients_from_marks(marks_table, &marks) {
            out.push(BurnsideElement { coefficients });
        }
    }
    Ok(out)
}

/// The exponential map K ↦ (−1)^{f(K)}, defined over p-groups where
/// subgroup classes coincide with p-subgroup classes.
pub fn exponential(data: &GroupData, f: &SuperclassFn) -> Result<Vec<i64>> {
    if !is_p_power(data.group.order(), f.p) {
        return Err(Error::NotPGroup);
    }
    if f.values.len() != data.lattice.classes.len() {
        return Err(Error::LengthMismatch {
            got: f.values.len(),
            want: data.lattice.classes.len(),
        });
    }
    Ok(f.values
        .iter()
        .map(|&v| if v.rem_euclid(2) == 0 { 1 } else { -1 })
        .collect())
}

/// The image of the exponential map over the Borel-Smith lattice: sign
/// vectors spanned (in F_2) by the reduced lattice basis.
fn exponential_image(data: &GroupData, poset: &PSubposet) -> Result<BTreeSet<Vec<i64>>> {
    let lat = cfb_lattice(data, poset)?;
    let n = poset.len();
    let basis_mod2: Vec<Vec<u64>> = (0..lat.basis.cols)
        .map(|c| {
            (0..n)
                .map(|r| {
                    let v: num_bigint::BigInt = lat.basis.at(r, c) % 2;
                    u64::from(v != num_bigint::BigInt::ZERO)
                })
                .collect()
        })
        .collect();
    let mut image = BTreeSet::new();
    let k = basis_mod2.len();
    assert!(k <= 24, "exponential image enumeration stays desk scale");
    for mask in 0u32..(1 << k) {
        let mut parity = vec![0u64; n];
        for (j, basis_vec) in basis_mod2.iter().enumerate() {
            if mask >> j & 1 == 1 {
                for (r, b) in basis_vec.iter().enumerate() {
                    parity[r] ^= b;
                }
            }
        }
        image.insert(parity.iter().map(|&b| if b == 1 { -1 } else { 1 }).collect());
    }
    Ok(image)
}

/// Set equality between the exponential image of the Borel-Smith lattice and
/// the mark vectors of the Burnside units.
pub fn tornehave_check(data: &GroupData, poset: &PSubposet) -> Result<bool> {
    if !is_p_power(data.group.order(), poset.p) {
        return Err(Error::NotPGroup);
    }
    let marks_table = table_of_marks(data);
    let unit_marks: BTreeSet<Vec<i64>> = units(data, &marks_table)?
        .iter()
        .map(|u| marks_of(&marks_table, u))
        .collect();
    Ok(exponential_image(data, poset)? == unit_marks)
}

/// Outcome of the constructive confirmation for one unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructiveOutcome {
    /// A complex was built; its Lefschetz marks equal the unit's marks.
    Confirmed,
    /// The tensor product would exceed the budget; skipped, not failed.
    SkippedBudget,
    /// The product complex is not itself endotrivial (its Lefschetz invariant
    /// sees the non-cap summands), so the mark comparison does not apply.
    SkippedNonEndotrivial,
}

#[derive(Debug, Clone)]
pub struct LefschetzSurjectivityReport {
    pub pass: bool,
    /// For each unit: the Borel-Smith preimage found by the F_2 solve, and
    /// the constructive outcome.
    pub per_unit: Vec<(Vec<i64>, SuperclassFn, ConstructiveOutcome)>,
}

/// For every unit u, solves exponential(f) = marks(u) for f in the
/// Borel-Smith lattice over F_2, then, wherever the tensor budget allows and
/// the built product is genuinely endotrivial, rebuilds a complex with
/// those marks and confirms its Lefschetz invariant has the unit's marks.
pub fn lefschetz_surjectivity_check(
    data: &Arc<GroupData>,
    poset: &PSubposet,
    budget: usize,
) -> Result<LefschetzSurjectivityReport> {
    if !is_p_power(data.group.order(), poset.p) {
        return Err(Error::NotPGroup);
    }
    let marks_table = table_of_marks(data);
    let lat = cfb_lattice(data, poset)?;
    let n = poset.len();
    // F_2 system: columns are reduced basis vectors
    let mut basis_mat = FpMatrix::zero(2, n, lat.basis.cols);
    for c in 0..lat.basis.cols {
        for r in 0..n {
            let v: num_bigint::BigInt = lat.basis.at(r, c) % 2;
            basis_mat.set(r, c, u64::from(v != num_bigint::BigInt::ZERO));
        }
    }
    let mut per_unit = Vec::new();
    let mut pass = true;
    for unit in units(data, &marks_table)? {
        let marks = marks_of(&marks_table, &unit);
        let target: Vec<u64> = marks.iter().map(|&m| u64::from(m == -1)).collect();
        let Some(solution) = basis_mat.solve(&target) else {
            pass = false;
            continue;
        };
        // integral Borel-Smith preimage: 0/1 combination of the basis
        let mut f = vec![0i64; n];
        for (c, &use_col) in solution.iter().enumerate() {
            if use_col == 1 {
                for (r, fv) in f.iter_mut().enumerate() {
                    *fv += i64::try_from(&(lat.basis.at(r, c).clone())).expect("basis entry fits i64");
                }
            }
        }
        let f = SuperclassFn::new(poset.p, f);
        debug_assert_eq!(exponential(data, &f)?, marks);
        let outcome = match build_from_hmarks(data, poset, &f, budget) {
            Err(Error::BudgetExceeded { .. }) => ConstructiveOutcome::SkippedBudget,
            Err(e) => return Err(e),
            Ok(complex) => {
                if verify_endotrivial(&complex, poset)? {
                    let lambda = BurnsideElement {
                        coefficients: lefschetz(&complex)?,
                    };
                    assert_eq!(
                        marks_of(&marks_table, &lambda),
                        marks,
                        "Lefschetz marks of an endotrivial preimage must equal the unit's"
                    );
                    debug_assert_eq!(
                        exponential(data, &h_marks(&complex, poset)?.marks().unwrap())?,
                        marks
                    );
                    ConstructiveOutcome::Confirmed
                } else {
                    ConstructiveOutcome::SkippedNonEndotrivial
                }
            }
        };
        per_unit.push((marks, f, outcome));
    }
    Ok(LefschetzSurjectivityReport { pass, per_unit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::complex::{DEFAULT_TENSOR_BUDGET, PermComplex};

    fn setup(g: crate::group::PermGroup, p: u64) -> (Arc<GroupData>, PSubposet) {
        let data = Arc::new(GroupData::new(g).unwrap());
        let poset = PSubposet::new(&data, p).unwrap();
        (data, poset)
    }

    #[test]
    fn marks_examples() {
        let (c2, _) = setup(builtins::cyclic(2), 2);
        let t = table_of_marks(&c2);
        assert_eq!(marks_of(&t, &BurnsideElement::basis(2, 0)), vec![2, 0]);
        assert_eq!(marks_of(&t, &BurnsideElement::basis(2, 1)), vec![1, 1]);

        let (c3, _) = setup(builtins::cyclic(3), 3);
        let t = table_of_marks(&c3);
        assert_eq!(marks_of(&t, &BurnsideElement::basis(2, 0)), vec![3, 0]);
        assert_eq!(marks_of(&t, &BurnsideElement::basis(2, 1)), vec![1, 1]);

        // [G/G] has all marks one
        let (d8, _) = setup(builtins::dihedral(8).unwrap(), 2);
        let t = table_of_marks(&d8);
        let n = d8.lattice.classes.len();
        assert_eq!(marks_of(&t, &BurnsideElement::basis(n, n - 1)), vec![1; n]);
    }

    #[test]
    fn table_is_triangular_with_normalizer_diagonal() {
        for g in [builtins::dihedral(8).unwrap(), builtins::quaternion8()] {
            let data = Arc::new(GroupData::new(g).unwrap());
            let t = table_of_marks(&data);
            let n = data.lattice.classes.len();
            for k in 0..n {
                for h in 0..n {
                    if t[k][h] != 0 {
                        assert!(data.lattice.subconjugacy[k][h]);
                    }
                }
                let rep = data.lattice.classes[k].rep;
                let norm = data.lattice.normalizers[rep];
                assert_eq!(
                    t[k][k],
                    (data.lattice.subgroups[norm].order / data.lattice.subgroups[rep].order)
                        as i64
                );
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let (c2, _) = setup(builtins::cyclic(2), 2);
        let t = table_of_marks(&c2);
        let free = BurnsideElement::basis(2, 0);
        let sq = multiply(&t, &free, &free);
        assert_eq!(sq.coefficients, vec![2, 0]);

        let one = BurnsideElement::identity(&c2);
        assert_eq!(multiply(&t, &one, &free), free);

        let (c3, _) = setup(builtins::cyclic(3), 3);
        let t = table_of_marks(&c3);
        let free = BurnsideElement::basis(2, 0);
        assert_eq!(multiply(&t, &free, &free).coefficients, vec![3, 0]);
    }

    /// Independent oracle for products of basis elements: decompose the
    /// product G-set (G/H) × (G/K) into orbits directly.
    fn orbit_product(data: &Arc<GroupData>, h: usize, k: usize) -> Vec<i64> {
        let poset_free = crate::complex::BasedGSet::coset_space(data, h);
        let other = crate::complex::BasedGSet::coset_space(data, k);
        let points = poset_free.points * other.points;
        let action: Vec<Vec<usize>> = (0..data.group.order())
            .map(|e| {
                (0..points)
                    .map(|xy| {
                        let (x, y) = (xy / other.points, xy % other.points);
                        poset_free.action[e][x] * other.points + other.action[e][y]
                    })
                    .collect()
            })
            .collect();
        let set = crate::complex::BasedGSet { points, action };
        let mut coeffs = vec![0i64; data.lattice.classes.len()];
        let mut seen = vec![false; points];
        for x in 0..points {
            if seen[x] {
                continue;
            }
            for y in set.orbit_of(x) {
                seen[y] = true;
            }
            let stab = set.stabilizer_members(x);
            let sub = data.lattice.subgroup_index(&stab).unwrap();
            coeffs[data.lattice.class_of[sub]] += 1;
        }
        coeffs
    }

    #[test]
    fn multiply_matches_orbit_decomposition_oracle() {
        for g in [builtins::cyclic(4), builtins::klein(), builtins::dihedral(8).unwrap()] {
            let data = Arc::new(GroupData::new(g).unwrap());
            let t = table_of_marks(&data);
            let n = data.lattice.classes.len();
            for a in 0..n {
                for b in 0..n {
                    let via_marks = multiply(
                        &t,
                        &BurnsideElement::basis(n, a),
                        &BurnsideElement::basis(n, b),
                    );
                    let via_orbits = orbit_product(
                        &data,
                        data.lattice.classes[a].rep,
                        data.lattice.classes[b].rep,
                    );
                    assert_eq!(via_marks.coefficients, via_orbits);
                }
            }
        }
    }

    #[test]
    fn unit_counts() {
        let (c2, _) = setup(builtins::cyclic(2), 2);
        let t = table_of_marks(&c2);
        let us = units(&c2, &t).unwrap();
        assert_eq!(us.len(), 4);
        let mark_set: BTreeSet<Vec<i64>> = us.iter().map(|u| marks_of(&t, u)).collect();
        assert!(mark_set.contains(&vec![-1, 1]));

        let (c3, _) = setup(builtins::cyclic(3), 3);
        let t = table_of_marks(&c3);
        assert_eq!(units(&c3, &t).unwrap().len(), 2);

        let (c4, _) = setup(builtins::cyclic(4), 2);
        let t = table_of_marks(&c4);
        assert_eq!(units(&c4, &t).unwrap().len(), 4);
    }

    #[test]
    fn minus_identity_is_always_a_unit() {
        for g in [builtins::cyclic(9), builtins::quaternion8()] {
            let data = Arc::new(GroupData::new(g).unwrap());
            let t = table_of_marks(&data);
            let us = units(&data, &t).unwrap();
            let n = data.lattice.classes.len();
            let mut minus_one = vec![0i64; n];
            minus_one[n - 1] = -1;
            assert!(us.iter().any(|u| u.coefficients == minus_one));
        }
    }

    #[test]
    fn units_square_to_identity() {
        let (d8, _) = setup(builtins::dihedral(8).unwrap(), 2);
        let t = table_of_marks(&d8);
        let one = BurnsideElement::identity(&d8);
        for u in units(&d8, &t).unwrap() {
            assert_eq!(multiply(&t, &u, &u), one);
        }
    }

    #[test]
    fn exponential_examples() {
        let (c2, _) = setup(builtins::cyclic(2), 2);
        assert_eq!(
            exponential(&c2, &SuperclassFn::new(2, vec![1, 0])).unwrap(),
            vec![-1, 1]
        );
        assert_eq!(
            exponential(&c2, &SuperclassFn::new(2, vec![2, 0])).unwrap(),
            vec![1, 1]
        );
        let (c3, _) = setup(builtins::cyclic(3), 3);
        assert_eq!(
            exponential(&c3, &SuperclassFn::new(3, vec![1, 1])).unwrap(),
            vec![-1, -1]
        );
    }

    #[test]
    fn exponential_is_multiplicative() {
        let (q8, _) = setup(builtins::quaternion8(), 2);
        let n = q8.lattice.classes.len();
        let f = SuperclassFn::new(2, (0..n as i64).collect());
        let g = SuperclassFn::new(2, (0..n).map(|i| 3 - i as i64).collect());
        let lhs = exponential(&q8, &f.add(&g)).unwrap();
        let ef = exponential(&q8, &f).unwrap();
        let eg = exponential(&q8, &g).unwrap();
        let rhs: Vec<i64> = ef.iter().zip(&eg).map(|(a, b)| a * b).collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tornehave_small_fixtures() {
        for (g, p) in [
            (builtins::cyclic(2), 2u64),
            (builtins::cyclic(3), 3),
            (builtins::cyclic(4), 2),
        ] {
            let (data, poset) = setup(g, p);
            assert!(tornehave_check(&data, &poset).unwrap());
        }
    }

    #[test]
    fn lefschetz_surjectivity_c2_end_to_end() {
        let (c2, poset) = setup(builtins::cyclic(2), 2);
        let report = lefschetz_surjectivity_check(&c2, &poset, DEFAULT_TENSOR_BUDGET).unwrap();
        assert!(report.pass);
        assert_eq!(report.per_unit.len(), 4);
        // every unit of C2 is constructively confirmed
        assert!(report
            .per_unit
            .iter()
            .all(|(_, _, oc)| *oc == ConstructiveOutcome::Confirmed));
        // the spec's worked example: marks (−1, 1) comes from f = (1, 0)
        let entry = report
            .per_unit
            .iter()
            .find(|(m, _, _)| m == &vec![-1, 1])
            .unwrap();
        assert_eq!(entry.1.values, vec![1, 0]);
    }

    #[test]
    fn lefschetz_is_multiplicative_under_tensor() {
        let (c4, poset) = setup(builtins::cyclic(4), 2);
        let t = table_of_marks(&c4);
        for (qa, qb) in [(0usize, 1usize), (1, 2), (0, 0)] {
            let a = PermComplex::syzygy(&c4, &poset, qa);
            let b = PermComplex::syzygy(&c4, &poset, qb);
            let la = BurnsideElement { coefficients: lefschetz(&a).unwrap() };
            let lb = BurnsideElement { coefficients: lefschetz(&b).unwrap() };
            let lab = BurnsideElement {
                coefficients: lefschetz(&a.tensor(&b)).unwrap(),
            };
            assert_eq!(lab, multiply(&t, &la, &lb));
        }
    }

    #[test]
    fn lefschetz_marks_match_exponential_on_endotrivial_complexes() {
        let (c4, poset) = setup(builtins::cyclic(4), 2);
        let t = table_of_marks(&c4);
        let f = SuperclassFn::new(2, vec![1, 1, 1]);
        let c = build_from_hmarks(&c4, &poset, &f, DEFAULT_TENSOR_BUDGET).unwrap();
        assert!(verify_endotrivial(&c, &poset).unwrap());
        let lambda = BurnsideElement {
            coefficients: lefschetz(&c).unwrap(),
        };
        assert_eq!(marks_of(&t, &lambda), exponential(&c4, &f).unwrap());
        // and the spec's hand value: Λ = −[C4/C4]
        assert_eq!(lambda.coefficients, vec![0, 0, -1]);
        let _ = PermComplex::unit(&c4, 2);
    }
}
