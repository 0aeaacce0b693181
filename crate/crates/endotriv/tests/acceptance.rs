//! The acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them on success). All
//! comparisons are exact integer equality.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;

use endotriv::biset::{self, quotient_context, subgroup_context};
use endotriv::borel_smith::{
    artin_system, borel_smith_system, cfb_lattice, cfba_lattice, dade_omega_invariants,
};
use endotriv::burnside::{
    exponential, lefschetz_surjectivity_check, marks_of, multiply, table_of_marks,
    tornehave_check, units, BurnsideElement, ConstructiveOutcome,
};
use endotriv::complex::{
    build_from_hmarks, h_marks, lefschetz, verify_endotrivial, PermComplex,
};
use endotriv::group::{is_p_power, GroupData};
use endotriv::module::{free_summand_count, homology_module};
use endotriv::superclass::{PSubposet, SuperclassFn};
use endotriv::{builtins, Error};

fn report(number: u32, name: &str, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) => println!("acceptance {number:02} {name}: PASS ({elapsed:.2?})"),
        Err(cause) => {
            println!("acceptance {number:02} {name}: FAIL ({elapsed:.2?})");
            std::panic::resume_unwind(cause);
        }
    }
}

fn setup(g: endotriv::PermGroup, p: u64) -> (Arc<GroupData>, PSubposet) {
    let data = Arc::new(GroupData::new(g).unwrap());
    let poset = PSubposet::new(&data, p).unwrap();
    (data, poset)
}

/// The p-group fixture battery with its natural prime.
fn p_group_fixtures() -> Vec<(&'static str, endotriv::PermGroup, u64)> {
    vec![
        ("C2", builtins::cyclic(2), 2),
        ("C3", builtins::cyclic(3), 3),
        ("C4", builtins::cyclic(4), 2),
        ("C8", builtins::cyclic(8), 2),
        ("C9", builtins::cyclic(9), 3),
        ("V4", builtins::klein(), 2),
        ("C3xC3", builtins::elementary_abelian(3, 2).unwrap(), 3),
        ("D8", builtins::dihedral(8).unwrap(), 2),
        ("Q8", builtins::quaternion8(), 2),
    ]
}

struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    fn in_range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

#[test]
fn criterion_01_rank_formula() {
    report(1, "rank of CF_b equals cyclic subgroup class count", || {
        for (name, g, p) in p_group_fixtures() {
            let (data, poset) = setup(g, p);
            let cyclic_classes = (0..poset.len())
                .filter(|&i| data.subgroup_is_cyclic(poset.reps[i]))
                .count();
            let rank = cfb_lattice(&data, &poset).unwrap().rank();
            assert_eq!(rank, cyclic_classes, "fixture {name}");
        }
    });
}

#[test]
fn criterion_02_dade_quotients() {
    report(2, "Dade quotient is Z/4 for S3 at 3 and Z/8 for F20 at 5", || {
        let (s3, poset) = setup(builtins::s3(), 3);
        let inv = dade_omega_invariants(&s3, &poset).unwrap();
        assert_eq!(inv.free_rank, 0);
        assert_eq!(inv.torsion, vec![BigInt::from(4)]);

        let (f20, poset) = setup(builtins::frobenius20(), 5);
        let inv = dade_omega_invariants(&f20, &poset).unwrap();
        assert_eq!(inv.free_rank, 0);
        assert_eq!(inv.torsion, vec![BigInt::from(8)]);
    });
}

#[test]
fn criterion_03_kernel_sandwich() {
    report(3, "CF_ba+ ⊆ CF_b everywhere, equality at p = 2", || {
        let mut fixtures = p_group_fixtures();
        fixtures.push(("S3@3", builtins::s3(), 3));
        fixtures.push(("S3@2", builtins::s3(), 2));
        fixtures.push(("F20@5", builtins::frobenius20(), 5));
        for (name, g, p) in fixtures {
            let (data, poset) = setup(g, p);
            let cfb = cfb_lattice(&data, &poset).unwrap();
            let cfba = cfba_lattice(&data, &poset).unwrap();
            assert!(cfb.contains_lattice(&cfba), "containment fails for {name}");
            let is_2_group = is_p_power(data.group.order(), 2);
            if p == 2 && (is_2_group || name == "S3@2") {
                assert_eq!(cfb, cfba, "p = 2 equality fails for {name}");
            }
        }
    });
}

#[test]
fn criterion_04_hmark_reproduction() {
    report(4, "marks of every syzygy complex reproduce ω_Q", || {
        let mut fixtures = p_group_fixtures();
        fixtures.push(("S3@3", builtins::s3(), 3));
        fixtures.push(("S3@2", builtins::s3(), 2));
        fixtures.push(("F20@5", builtins::frobenius20(), 5));
        for (name, g, p) in fixtures {
            let (data, poset) = setup(g, p);
            for q in 0..poset.len() {
                let complex = PermComplex::syzygy(&data, &poset, q);
                let got = h_marks(&complex, &poset)
                    .unwrap()
                    .marks()
                    .unwrap_or_else(|| panic!("{name} class {q} not concentrated"));
                assert_eq!(got.values, poset.omega(q).values, "fixture {name}, class {q}");
            }
        }
    });
}

#[test]
fn criterion_05_reconstruction_round_trip() {
    report(5, "25 random mark vectors rebuild exactly per small fixture", || {
        // sampling budget: vectors whose predicted size exceeds it are
        // resampled, so every accepted vector exists within the default
        // engine budget
        const SAMPLE_BUDGET: usize = 1500;
        let fixtures: Vec<(&str, endotriv::PermGroup, u64)> = vec![
            ("C2", builtins::cyclic(2), 2),
            ("C3", builtins::cyclic(3), 3),
            ("C4", builtins::cyclic(4), 2),
            ("V4", builtins::klein(), 2),
            ("C8", builtins::cyclic(8), 2),
            ("D8", builtins::dihedral(8).unwrap(), 2),
            ("Q8", builtins::quaternion8(), 2),
            ("S3@3", builtins::s3(), 3),
            ("S3@2", builtins::s3(), 2),
        ];
        let mut rng = Lcg(0x5DEECE66D);
        for (name, g, p) in fixtures {
            let (data, poset) = setup(g, p);
            let mut accepted = 0;
            let mut attempts = 0;
            while accepted < 25 {
                attempts += 1;
                assert!(attempts < 20000, "sampling stalled on {name}");
                let f = SuperclassFn::new(
                    p,
                    (0..poset.len()).map(|_| rng.in_range(-2, 2)).collect(),
                );
                let complex = match build_from_hmarks(&data, &poset, &f, SAMPLE_BUDGET) {
                    Ok(c) => c,
                    Err(Error::BudgetExceeded { .. }) => continue,
                    Err(e) => panic!("unexpected error on {name}: {e}"),
                };
                let marks = h_marks(&complex, &poset).unwrap();
                assert!(marks.all_concentrated, "{name}: {:?} not concentrated", f.values);
                assert_eq!(marks.marks().unwrap().values, f.values, "fixture {name}");
                accepted += 1;
            }
        }
    });
}

#[test]
fn criterion_06_endotriviality_dichotomy() {
    report(6, "free-summand certificate separates Borel-Smith marks", || {
        for (g, p) in [(builtins::cyclic(3), 3u64), (builtins::cyclic(5), 5)] {
            let (data, poset) = setup(g, p);
            // f = (2, 0) is Borel-Smith: homology at the trivial class is
            // k ⊕ free (projective-free dimension exactly 1)
            let f = SuperclassFn::new(p, vec![2, 0]);
            let complex = build_from_hmarks(&data, &poset, &f, 20000).unwrap();
            let h = homology_module(&complex, 2).unwrap();
            let (a, projective_free) = free_summand_count(&h, &data).unwrap();
            assert!(a >= 1);
            assert_eq!(projective_free, 1, "p = {p}");

            // f = (1, 0) violates the mod-2 congruence: the homology is not
            // k ⊕ free
            let f = SuperclassFn::new(p, vec![1, 0]);
            let complex = build_from_hmarks(&data, &poset, &f, 20000).unwrap();
            let h = homology_module(&complex, 1).unwrap();
            let (_, projective_free) = free_summand_count(&h, &data).unwrap();
            assert_ne!(projective_free, 1, "p = {p}");
        }

        // over C2, f = (1, 0) is Borel-Smith and genuinely endotrivial
        let (c2, poset) = setup(builtins::cyclic(2), 2);
        let f = SuperclassFn::new(2, vec![1, 0]);
        let complex = build_from_hmarks(&c2, &poset, &f, 20000).unwrap();
        assert!(verify_endotrivial(&complex, &poset).unwrap());
    });
}

#[test]
fn criterion_07_tornehave_and_lefschetz_surjectivity() {
    report(7, "Tornehave equality and Lefschetz surjectivity", || {
        const CONSTRUCTIVE_BUDGET: usize = 4000;
        let fixtures: Vec<(&str, endotriv::PermGroup, u64)> = vec![
            ("C2", builtins::cyclic(2), 2),
            ("C4", builtins::cyclic(4), 2),
            ("V4", builtins::klein(), 2),
            ("C8", builtins::cyclic(8), 2),
            ("D8", builtins::dihedral(8).unwrap(), 2),
            ("Q8", builtins::quaternion8(), 2),
            ("C3", builtins::cyclic(3), 3),
            ("C9", builtins::cyclic(9), 3),
        ];
        for (name, g, p) in fixtures {
            let (data, poset) = setup(g, p);
            assert!(tornehave_check(&data, &poset).unwrap(), "fixture {name}");
            let surj = lefschetz_surjectivity_check(&data, &poset, CONSTRUCTIVE_BUDGET).unwrap();
            assert!(surj.pass, "fixture {name}");
            // constructive confirmation ran (and asserted the mark match
            // internally) wherever the budget and endotriviality allow;
            // every fixture confirms at least the identity unit
            let confirmed = surj
                .per_unit
                .iter()
                .filter(|(_, _, oc)| *oc == ConstructiveOutcome::Confirmed)
                .count();
            assert!(confirmed >= 1, "fixture {name}");
        }
    });
}

#[test]
fn criterion_08_coset_well_defined() {
    report(8, "marks depend only on ω coefficients, mod CF_ba+ shifts", || {
        let fixtures: Vec<(&str, endotriv::PermGroup, u64, Vec<i64>)> = vec![
            ("C4", builtins::cyclic(4), 2, vec![2, 1, 1]),
            ("V4", builtins::klein(), 2, vec![1, 1, 0, 0, 0]),
            ("C9", builtins::cyclic(9), 3, vec![2, 1, 1]),
            ("Q8", builtins::quaternion8(), 2, vec![1, 1, 1, 1, 1, 1]),
        ];
        let mut rng = Lcg(0xC0FFEE);
        for (name, g, p, f_values) in fixtures {
            let (data, poset) = setup(g, p);
            let f = SuperclassFn::new(p, f_values);
            let reference = build_from_hmarks(&data, &poset, &f, 20000).unwrap();
            let reference_marks = h_marks(&reference, &poset).unwrap().marks().unwrap();
            assert_eq!(reference_marks.values, f.values);

            // shuffled tensor order gives the same marks
            let b = poset.mobius_inversion(&f).unwrap();
            let mut factors: Vec<PermComplex> = Vec::new();
            for (pos, &coeff) in b.values.iter().enumerate() {
                let base = PermComplex::syzygy(&data, &poset, pos);
                let factor = if coeff >= 0 { base } else { base.dual() };
                for _ in 0..coeff.unsigned_abs() {
                    factors.push(factor.clone());
                }
            }
            for k in (1..factors.len()).rev() {
                factors.swap(k, (rng.next() % (k as u64 + 1)) as usize);
            }
            let mut shuffled = PermComplex::unit(&data, p);
            for factor in &factors {
                shuffled = shuffled.tensor(factor);
            }
            let shuffled_marks = h_marks(&shuffled, &poset).unwrap().marks().unwrap();
            assert_eq!(shuffled_marks.values, f.values, "fixture {name}");

            // shifting by a CF_ba+ basis vector moves the marks inside the
            // same coset
            let cfba = cfba_lattice(&data, &poset).unwrap();
            let shift: Vec<i64> = cfba
                .basis
                .col(0)
                .iter()
                .map(|x| i64::try_from(x).unwrap())
                .collect();
            let f_shifted = SuperclassFn::new(
                p,
                f.values.iter().zip(&shift).map(|(a, b)| a + b).collect(),
            );
            let shifted = build_from_hmarks(&data, &poset, &f_shifted, 20000).unwrap();
            let shifted_marks = h_marks(&shifted, &poset).unwrap().marks().unwrap();
            let difference: Vec<i64> = shifted_marks
                .values
                .iter()
                .zip(&reference_marks.values)
                .map(|(a, b)| a - b)
                .collect();
            assert!(cfba.contains_i64(&difference), "fixture {name}");
        }
    });
}

#[test]
fn criterion_09_biset_closure_and_consistency() {
    report(9, "biset images stay Borel-Smith; def/res match the engine", || {
        // closure under res, inf, def, ind between fixture pairs
        let (c4, poset_c4) = setup(builtins::cyclic(4), 2);
        let c2_in_c4 = (0..c4.lattice.subgroups.len())
            .find(|&s| c4.lattice.subgroups[s].order == 2)
            .unwrap();
        let sub_ctx = subgroup_context(&c4, 2, c2_in_c4).unwrap();
        let quot_ctx = quotient_context(&c4, 2, c2_in_c4).unwrap();
        let cfb_c4 = cfb_lattice(&c4, &poset_c4).unwrap();
        let bs_c2 = borel_smith_system(&sub_ctx.data, &sub_ctx.poset).unwrap();
        let bs_c4 = borel_smith_system(&c4, &poset_c4).unwrap();
        let bs_quot = borel_smith_system(&quot_ctx.data, &quot_ctx.poset).unwrap();
        for col in 0..cfb_c4.basis.cols {
            let f = SuperclassFn::new(
                2,
                cfb_c4.basis.col(col).iter().map(|x| i64::try_from(x).unwrap()).collect(),
            );
            let restricted = biset::res(&c4, &poset_c4, &sub_ctx, &f).unwrap();
            assert!(bs_c2.passes(&restricted).unwrap());
            let deflated = biset::def(&c4, &poset_c4, &quot_ctx, c2_in_c4, &f).unwrap();
            assert!(bs_quot.passes(&deflated).unwrap());
        }
        let cfb_c2 = cfb_lattice(&sub_ctx.data, &sub_ctx.poset).unwrap();
        for col in 0..cfb_c2.basis.cols {
            let f = SuperclassFn::new(
                2,
                cfb_c2.basis.col(col).iter().map(|x| i64::try_from(x).unwrap()).collect(),
            );
            let induced = biset::ind(&c4, &poset_c4, &sub_ctx, c2_in_c4, &f).unwrap();
            assert!(bs_c4.passes(&induced).unwrap());
        }
        let cfb_quot = cfb_lattice(&quot_ctx.data, &quot_ctx.poset).unwrap();
        for col in 0..cfb_quot.basis.cols {
            let f = SuperclassFn::new(
                2,
                cfb_quot.basis.col(col).iter().map(|x| i64::try_from(x).unwrap()).collect(),
            );
            let inflated = biset::inf(&c4, &poset_c4, &quot_ctx, &f).unwrap();
            assert!(bs_c4.passes(&inflated).unwrap());
        }

        // V4 against its three C2 quotients
        let (v4, poset_v4) = setup(builtins::klein(), 2);
        let cfb_v4 = cfb_lattice(&v4, &poset_v4).unwrap();
        for n_pos in 1..4 {
            let n = poset_v4.reps[n_pos];
            let ctx = quotient_context(&v4, 2, n).unwrap();
            let target_bs = borel_smith_system(&ctx.data, &ctx.poset).unwrap();
            for col in 0..cfb_v4.basis.cols {
                let f = SuperclassFn::new(
                    2,
                    cfb_v4.basis.col(col).iter().map(|x| i64::try_from(x).unwrap()).collect(),
                );
                let deflated = biset::def(&v4, &poset_v4, &ctx, n, &f).unwrap();
                assert!(target_bs.passes(&deflated).unwrap());
            }
        }

        // S3 at 3 against its Sylow C3
        let (s3, poset_s3) = setup(builtins::s3(), 3);
        let c3_in_s3 = (0..s3.lattice.subgroups.len())
            .find(|&s| s3.lattice.subgroups[s].order == 3)
            .unwrap();
        let ctx = subgroup_context(&s3, 3, c3_in_s3).unwrap();
        let bs_c3 = borel_smith_system(&ctx.data, &ctx.poset).unwrap();
        let bs_s3 = borel_smith_system(&s3, &poset_s3).unwrap();
        let cfb_s3 = cfb_lattice(&s3, &poset_s3).unwrap();
        for col in 0..cfb_s3.basis.cols {
            let f = SuperclassFn::new(
                3,
                cfb_s3.basis.col(col).iter().map(|x| i64::try_from(x).unwrap()).collect(),
            );
            let restricted = biset::res(&s3, &poset_s3, &ctx, &f).unwrap();
            assert!(bs_c3.passes(&restricted).unwrap());
        }
        let cfb_c3 = cfb_lattice(&ctx.data, &ctx.poset).unwrap();
        for col in 0..cfb_c3.basis.cols {
            let f = SuperclassFn::new(
                3,
                cfb_c3.basis.col(col).iter().map(|x| i64::try_from(x).unwrap()).collect(),
            );
            let induced = biset::ind(&s3, &poset_s3, &ctx, c3_in_s3, &f).unwrap();
            assert!(bs_s3.passes(&induced).unwrap());
        }

        // def and res agree with the Brauer construction and restriction of
        // actual syzygy complexes
        let consistency_fixtures: Vec<(endotriv::PermGroup, u64)> = vec![
            (builtins::cyclic(4), 2),
            (builtins::klein(), 2),
            (builtins::s3(), 3),
        ];
        for (g, p) in consistency_fixtures {
            let (data, poset) = setup(g, p);
            for q in 0..poset.len() {
                let complex = PermComplex::syzygy(&data, &poset, q);
                let marks = h_marks(&complex, &poset).unwrap().marks().unwrap();
                // deflation along every normal p-subgroup
                for n_pos in 0..poset.len() {
                    let n = poset.reps[n_pos];
                    if !data.is_normal_in(n, data.lattice.full_index()) {
                        continue;
                    }
                    let ctx = quotient_context(&data, p, n).unwrap();
                    let expected = biset::def(&data, &poset, &ctx, n, &marks).unwrap();
                    let quotient_complex = complex.brauer(n).unwrap();
                    let got = h_marks(&quotient_complex, &ctx.poset)
                        .unwrap()
                        .marks()
                        .unwrap();
                    assert_eq!(got.values, expected.values);
                }
                // restriction to every subgroup
                for h in 0..data.lattice.subgroups.len() {
                    let ctx = subgroup_context(&data, p, h).unwrap();
                    let expected = biset::res(&data, &poset, &ctx, &marks).unwrap();
                    let restricted = complex.restrict(h).unwrap();
                    let got = h_marks(&restricted, &ctx.poset).unwrap().marks().unwrap();
                    assert_eq!(got.values, expected.values);
                }
            }
        }
    });
}

/// Fixed-point count of P on the coset space G/R, by direct enumeration.
fn coset_fixed_points(data: &GroupData, p_sub: usize, r: usize) -> usize {
    let p_members = &data.lattice.subgroups[p_sub].members;
    let r_sub = &data.lattice.subgroups[r];
    let mut assigned = vec![false; data.group.order()];
    let mut count = 0;
    for g in 0..data.group.order() {
        if assigned[g] {
            continue;
        }
        for &m in &r_sub.members {
            assigned[data.group.mul(g, m)] = true;
        }
        let gi = data.group.inv(g);
        if p_members.iter().all(|&x| r_sub.contains(data.group.conj(gi, x))) {
            count += 1;
        }
    }
    count
}

/// Fixed points of P on the coset space H/R inside the parent, where
/// P ≤ H and R ≤ H.
fn coset_fixed_points_in_subgroup(data: &GroupData, p_sub: usize, h: usize, r: usize) -> usize {
    let p_members = &data.lattice.subgroups[p_sub].members;
    let h_members = data.lattice.subgroups[h].members.clone();
    let r_sub = &data.lattice.subgroups[r];
    let mut assigned = vec![false; data.group.order()];
    let mut count = 0;
    for &y in &h_members {
        if assigned[y] {
            continue;
        }
        for &m in &r_sub.members {
            assigned[data.group.mul(y, m)] = true;
        }
        let yi = data.group.inv(y);
        if p_members.iter().all(|&x| r_sub.contains(data.group.conj(yi, x))) {
            count += 1;
        }
    }
    count
}

#[test]
fn criterion_10_property_suites() {
    report(10, "cross-module property battery", || {
        // induction-Brauer dimension identity on (G, H) fixture pairs:
        // dim (Ind_H^G k[H/R])(P) matches the double-coset sum
        let pairs: Vec<(endotriv::PermGroup, u64, usize)> = vec![
            (builtins::s3(), 3, 3),
            (builtins::cyclic(4), 2, 2),
            (builtins::dihedral(8).unwrap(), 2, 4),
        ];
        for (g, p, h_order) in pairs {
            let (data, poset) = setup(g, p);
            let h = (0..data.lattice.subgroups.len())
                .find(|&s| data.lattice.subgroups[s].order == h_order)
                .unwrap();
            let h_subgroups: Vec<usize> = (0..data.lattice.subgroups.len())
                .filter(|&r| data.lattice.inclusion[r][h])
                .collect();
            for &r in &h_subgroups {
                for pos in 0..poset.len() {
                    let p_sub = poset.reps[pos];
                    let normalizer = data.lattice.normalizers[p_sub];
                    // Ind_H^G k[H/R] = k[G/R], so the left side is |(G/R)^P|
                    let lhs = coset_fixed_points(&data, p_sub, r);
                    let mut rhs = 0usize;
                    for x in data.double_coset_reps(normalizer, h) {
                        // ˣH = xHx⁻¹ must contain P
                        let xinv = data.group.inv(x);
                        let conj_h = data.conjugate_subgroup(h, xinv);
                        if !data.lattice.inclusion[p_sub][conj_h] {
                            continue;
                        }
                        let conj_r = data.conjugate_subgroup(r, xinv);
                        let inter: Vec<usize> = data.lattice.subgroups[normalizer]
                            .members
                            .iter()
                            .copied()
                            .filter(|&e| data.lattice.subgroups[conj_h].contains(e))
                            .collect();
                        let index = data.lattice.subgroups[normalizer].order / inter.len();
                        rhs += index
                            * coset_fixed_points_in_subgroup(&data, p_sub, conj_h, conj_r);
                    }
                    assert_eq!(lhs, rhs, "order(H) = {h_order}, order(R) = {}, class {pos}",
                        data.lattice.subgroups[r].order);
                }
            }
        }

        // mark homomorphism is multiplicative on random pairs
        let (d8, _) = setup(builtins::dihedral(8).unwrap(), 2);
        let table = table_of_marks(&d8);
        let n = d8.lattice.classes.len();
        let mut rng = Lcg(0xFEEDFACE);
        for _ in 0..100 {
            let a = BurnsideElement {
                coefficients: (0..n).map(|_| rng.in_range(-3, 3)).collect(),
            };
            let b = BurnsideElement {
                coefficients: (0..n).map(|_| rng.in_range(-3, 3)).collect(),
            };
            let prod = multiply(&table, &a, &b);
            let expected: Vec<i64> = marks_of(&table, &a)
                .iter()
                .zip(marks_of(&table, &b))
                .map(|(x, y)| x * y)
                .collect();
            assert_eq!(marks_of(&table, &prod), expected);
        }

        // Lefschetz marks equal the exponential of the marks on endotrivial
        // complexes built by the engine
        for (g, p, f_values) in [
            (builtins::cyclic(2), 2u64, vec![1, 0]),
            (builtins::cyclic(4), 2, vec![1, 1, 1]),
            (builtins::cyclic(4), 2, vec![2, 0, 0]),
        ] {
            let (data, poset) = setup(g, p);
            let f = SuperclassFn::new(p, f_values);
            let complex = build_from_hmarks(&data, &poset, &f, 20000).unwrap();
            if verify_endotrivial(&complex, &poset).unwrap() {
                let table = table_of_marks(&data);
                let lambda = BurnsideElement {
                    coefficients: lefschetz(&complex).unwrap(),
                };
                assert_eq!(
                    marks_of(&table, &lambda),
                    exponential(&data, &f).unwrap()
                );
            }
        }

        // every unit squares to the identity on the largest 2-group fixture
        let one = BurnsideElement::identity(&d8);
        for u in units(&d8, &table).unwrap() {
            assert_eq!(multiply(&table, &u, &u), one);
        }

        // the oriented Artin system is empty at p = 2 on every 2-group
        for (name, g, p) in p_group_fixtures() {
            if p != 2 {
                continue;
            }
            let (data, poset) = setup(g, p);
            assert!(
                artin_system(&data, &poset).unwrap().congruences.is_empty(),
                "fixture {name}"
            );
        }
    });
}
