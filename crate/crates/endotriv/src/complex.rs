//! Bounded chain complexes of G-set-based permutation modules over F_p:
//! relative syzygy complexes, tensor products, duals, Brauer constructions,
//! homology marks, and reconstruction of a complex from its marks.
//!
//! Terms stay honest G-sets throughout; only the differentials live in the
//! world of F_p matrices. Every constructor re-verifies d² = 0 and
//! equivariance of all differentials.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fpmat::{fp_homology_dim, FpMatrix};
use crate::group::{is_p_power, p_part, GroupData, QuotientGroup};
use crate::superclass::{PSubposet, SuperclassFn};

pub const DEFAULT_TENSOR_BUDGET: usize = 20000;

/// A finite G-set with a chosen basis ordering: `action[e][x]` is the image
/// of point `x` under group element `e`.
#[derive(Debug, Clone)]
pub struct BasedGSet {
    pub points: usize,
    pub action: Vec<Vec<usize>>,
}

impl BasedGSet {
    fn assert_is_action(&self, data: &GroupData) {
        let g = &data.group;
        assert_eq!(self.action.len(), g.order());
        for (x, &img) in self.action[0].iter().enumerate() {
            assert_eq!(img, x, "identity must act trivially");
        }
        // generator-driven compatibility extends to the whole table
        for gen in g.generators() {
            let gi = g.element_index(gen).unwrap();
            for e in 0..g.order() {
                let ge = g.mul(gi, e);
                for x in 0..self.points {
                    assert_eq!(
                        self.action[ge][x], self.action[gi][self.action[e][x]],
                        "action is not a homomorphism"
                    );
                }
            }
        }
    }

    pub fn single_point(data: &GroupData) -> BasedGSet {
        BasedGSet {
            points: 1,
            action: vec![vec![0]; data.group.order()],
        }
    }

    /// The left coset space G/Q for a subgroup index `q`, cosets ordered by
    /// ascending minimal representative.
    pub fn coset_space(data: &GroupData, q: usize) -> BasedGSet {
        let g = &data.group;
        let qsub = &data.lattice.subgroups[q];
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..g.order() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for &m in &qsub.members {
                coset_of[g.mul(x, m)] = idx;
            }
        }
        let action = (0..g.order())
            .map(|e| reps.iter().map(|&x| coset_of[g.mul(e, x)]).collect())
            .collect();
        let set = BasedGSet {
            points: reps.len(),
            action,
        };
        set.assert_is_action(data);
        set
    }

    pub fn orbit_of(&self, x: usize) -> Vec<usize> {
        let mut orbit: Vec<usize> = self.action.iter().map(|row| row[x]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit
    }

    pub fn stabilizer_members(&self, x: usize) -> Vec<usize> {
        (0..self.action.len())
            .filter(|&e| self.action[e][x] == x)
            .collect()
    }

    pub fn fixed_points(&self, members: &[usize]) -> Vec<usize> {
        (0..self.points)
            .filter(|&x| members.iter().all(|&m| self.action[m][x] == x))
            .collect()
    }
}

/// A bounded complex of based permutation modules with equivariant F_p
/// differentials. `diffs[i]` maps the term in degree `i` to degree `i − 1`
/// and is stored only when both terms are nonzero.
#[derive(Debug, Clone)]
pub struct PermComplex {
    pub data: Arc<GroupData>,
    pub p: u64,
    pub terms: BTreeMap<i64, BasedGSet>,
    pub diffs: BTreeMap<i64, FpMatrix>,
}

impl PermComplex {
    /// The tensor unit k concentrated in degree 0.
    pub fn unit(data: &Arc<GroupData>, p: u64) -> PermComplex {
        let mut terms = BTreeMap::new();
        terms.insert(0, BasedGSet::single_point(data));
        let c = PermComplex {
            data: Arc::clone(data),
            p,
            terms,
            diffs: BTreeMap::new(),
        };
        c.assert_valid();
        c
    }

    pub fn term_dim(&self, degree: i64) -> usize {
        self.terms.get(&degree).map_or(0, |t| t.points)
    }

    pub fn total_points(&self) -> usize {
        self.terms.values().map(|t| t.points).sum()
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let min = *self.terms.keys().next()?;
        let max = *self.terms.keys().last()?;
        Some((min, max))
    }

    /// The differential out of `degree`, materializing zero matrices at the
    /// boundary.
    pub fn differential(&self, degree: i64) -> FpMatrix {
        match self.diffs.get(&degree) {
            Some(d) => d.clone(),
            None => FpMatrix::zero(self.p, self.term_dim(degree - 1), self.term_dim(degree)),
        }
    }

    fn assert_valid(&self) {
        for set in self.terms.values() {
            set.assert_is_action(&self.data);
        }
        for (&i, d) in &self.diffs {
            assert_eq!(d.rows, self.term_dim(i - 1));
            assert_eq!(d.cols, self.term_dim(i));
            // equivariance against every generator
            let src = &self.terms[&i];
            let dst = &self.terms[&(i - 1)];
            for gen in self.data.group.generators() {
                let gi = self.data.group.element_index(gen).unwrap();
                for r in 0..d.rows {
                    for c in 0..d.cols {
                        assert_eq!(
                            d.at(dst.action[gi][r], src.action[gi][c]),
                            d.at(r, c),
                            "differential is not equivariant"
                        );
                    }
                }
            }
        }
        for (&i, d) in &self.diffs {
            if let Some(next) = self.diffs.get(&(i + 1)) {
                assert!(d.mul(next).is_zero(), "d² ≠ 0 at degree {}", i + 1);
            }
        }
    }

    /// The relative syzygy complex for the p-class at `class_pos`: the
    /// augmentation k[G/Q] → k with k in degree 0, except that a Sylow class
    /// gives k concentrated in degree 1.
    pub fn syzygy(data: &Arc<GroupData>, poset: &PSubposet, class_pos: usize) -> PermComplex {
        let rep = poset.reps[class_pos];
        let sylow_order = p_part(data.group.order(), poset.p);
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        if data.lattice.subgroups[rep].order == sylow_order {
            terms.insert(1, BasedGSet::single_point(data));
        } else {
            let cosets = BasedGSet::coset_space(data, rep);
            let aug = FpMatrix::from_rows(poset.p, &[vec![1; cosets.points]]);
            terms.insert(1, cosets);
            terms.insert(0, BasedGSet::single_point(data));
            diffs.insert(1, aug);
        }
        let c = PermComplex {
            data: Arc::clone(data),
            p: poset.p,
            terms,
            diffs,
        };
        c.assert_valid();
        c
    }

    /// Koszul-signed tensor product over the same group.
    pub fn tensor(&self, other: &PermComplex) -> PermComplex {
        assert!(
            Arc::ptr_eq(&self.data, &other.data)
                || self.data.group.elements() == other.data.group.elements(),
            "tensor factors must share a group"
        );
        assert_eq!(self.p, other.p);
        let p = self.p;
        let g_order = self.data.group.order();

        // blocks of degree n: (i, j = n − i, column offset), i ascending
        let mut blocks: BTreeMap<i64, Vec<(i64, i64, usize)>> = BTreeMap::new();
        for (&i, xi) in &self.terms {
            for (&j, yj) in &other.terms {
                let entry = blocks.entry(i + j).or_default();
                let offset = entry
                    .last()
                    .map_or(0, |&(a, b, o)| o + self.terms[&a].points * other.terms[&b].points);
                let _ = (xi, yj);
                entry.push((i, j, offset));
            }
        }
        let mut terms: BTreeMap<i64, BasedGSet> = BTreeMap::new();
        for (&n, blk) in &blocks {
            let size: usize = blk
                .iter()
                .map(|&(i, j, _)| self.terms[&i].points * other.terms[&j].points)
                .sum();
            let mut action = vec![vec![0usize; size]; g_order];
            for &(i, j, off) in blk {
                let xi = &self.terms[&i];
                let yj = &other.terms[&j];
                for (e, row) in action.iter_mut().enumerate() {
                    for x in 0..xi.points {
                        for y in 0..yj.points {
                            row[off + x * yj.points + y] =
                                off + xi.action[e][x] * yj.points + yj.action[e][y];
                        }
                    }
                }
            }
            terms.insert(n, BasedGSet { points: size, action });
        }

        let offset_of = |n: i64, i: i64| -> Option<usize> {
            blocks
                .get(&n)
                .and_then(|blk| blk.iter().find(|&&(a, _, _)| a == i).map(|&(_, _, o)| o))
        };
        let mut diffs: BTreeMap<i64, FpMatrix> = BTreeMap::new();
        for (&n, blk) in &blocks {
            let rows = terms.get(&(n - 1)).map_or(0, |t| t.points);
            let cols = terms[&n].points;
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut d = FpMatrix::zero(p, rows, cols);
            let mut nonzero = false;
            for &(i, j, off) in blk {
                let xi = &self.terms[&i];
                let yj = &other.terms[&j];
                if let Some(da) = self.diffs.get(&i) {
                    let tgt = offset_of(n - 1, i - 1).expect("block (i−1, j) exists");
                    let yl = yj.points;
                    for r in 0..da.rows {
                        for c in 0..da.cols {
                            let v = da.at(r, c);
                            if v != 0 {
                                nonzero = true;
                                for y in 0..yl {
                                    d.set(tgt + r * yl + y, off + c * yl + y, v);
                                }
                            }
                        }
                    }
                }
                if let Some(db) = other.diffs.get(&j) {
                    let tgt = offset_of(n - 1, i).expect("block (i, j−1) exists");
                    let sign = if i.rem_euclid(2) == 0 { 1 } else { p - 1 };
                    let yl_new = other.terms[&(j - 1)].points;
                    for s in 0..db.rows {
                        for t in 0..db.cols {
                            let v = db.at(s, t);
                            if v != 0 {
                                nonzero = true;
                                let signed = (v * sign) % p;
                                for x in 0..xi.points {
                                    d.set(tgt + x * yl_new + s, off + x * yj.points + t, signed);
                                }
                            }
                        }
                    }
                }
            }
            if nonzero {
                diffs.insert(n, d);
            }
        }
        let c = PermComplex {
            data: Arc::clone(&self.data),
            p,
            terms,
            diffs,
        };
        c.assert_valid();
        c
    }

    /// The dual complex: the term in degree −i is the (self-dual) basis of
    /// the term in degree i; the differential arriving in degree −i is
    /// (−1)^i times the transpose of d_i.
    pub fn dual(&self) -> PermComplex {
        let terms: BTreeMap<i64, BasedGSet> =
            self.terms.iter().map(|(&i, t)| (-i, t.clone())).collect();
        let mut diffs = BTreeMap::new();
        for (&i, d) in &self.diffs {
            let sign = if i.rem_euclid(2) == 0 { 1 } else { self.p - 1 };
            diffs.insert(1 - i, d.transpose().scale(sign));
        }
        let c = PermComplex {
            data: Arc::clone(&self.data),
            p: self.p,
            terms,
            diffs,
        };
        c.assert_valid();
        c
    }

    /// Restriction to the subgroup at lattice index `h`, over that subgroup
    /// realized as its own permutation group.
    pub fn restrict(&self, h: usize) -> Result<PermComplex> {
        let (sub_data, element_map) = subgroup_as_group(&self.data, h)?;
        let terms: BTreeMap<i64, BasedGSet> = self
            .terms
            .iter()
            .map(|(&i, t)| {
                let action = element_map
                    .iter()
                    .map(|&parent_e| t.action[parent_e].clone())
                    .collect();
                (
                    i,
                    BasedGSet {
                        points: t.points,
                        action,
                    },
                )
            })
            .collect();
        let c = PermComplex {
            data: sub_data,
            p: self.p,
            terms,
            diffs: self.diffs.clone(),
        };
        c.assert_valid();
        Ok(c)
    }

    /// The Brauer construction at the p-subgroup with lattice index `s`:
    /// fixed basis points of every term with the induced N_G(S)/S action and
    /// the restricted differentials.
    pub fn brauer(&self, s: usize) -> Result<PermComplex> {
        if !is_p_power(self.data.lattice.subgroups[s].order, self.p) {
            return Err(Error::NotPGroup);
        }
        let normalizer = self.data.lattice.normalizers[s];
        let (quot_data, quotient, coset_of_element) =
            quotient_as_group(&self.data, normalizer, s)?;
        let members = self.data.lattice.subgroups[s].members.clone();

        let mut fixed: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (&i, t) in &self.terms {
            fixed.insert(i, t.fixed_points(&members));
        }
        let mut terms: BTreeMap<i64, BasedGSet> = BTreeMap::new();
        for (&i, t) in &self.terms {
            let fix = &fixed[&i];
            if fix.is_empty() {
                continue;
            }
            let position: BTreeMap<usize, usize> =
                fix.iter().enumerate().map(|(a, &x)| (x, a)).collect();
            let action: Vec<Vec<usize>> = (0..quot_data.group.order())
                .map(|e| {
                    let coset = coset_of_element[e];
                    let rep = quotient.cosets[coset][0];
                    fix.iter().map(|&x| position[&t.action[rep][x]]).collect()
                })
                .collect();
            terms.insert(
                i,
                BasedGSet {
                    points: fix.len(),
                    action,
                },
            );
        }
        let mut diffs = BTreeMap::new();
        for (&i, d) in &self.diffs {
            let (Some(rows), Some(cols)) = (fixed.get(&(i - 1)), fixed.get(&i)) else {
                continue;
            };
            if rows.is_empty() || cols.is_empty() {
                continue;
            }
            let sub = d.submatrix(rows, cols);
            if !sub.is_zero() {
                diffs.insert(i, sub);
            }
        }
        let c = PermComplex {
            data: quot_data,
            p: self.p,
            terms,
            diffs,
        };
        c.assert_valid();
        Ok(c)
    }

    /// Homology dimensions at every degree in the support, as (degree, dim)
    /// pairs for the nonzero ones.
    pub fn homology_dims(&self) -> Result<Vec<(i64, usize)>> {
        let Some((lo, hi)) = self.degree_range() else {
            return Ok(vec![]);
        };
        let mut out = Vec::new();
        for i in lo..=hi {
            if self.term_dim(i) == 0 {
                continue;
            }
            let d_out = self.differential(i);
            let d_in = self.differential(i + 1);
            let h = fp_homology_dim(&d_in, &d_out)?;
            if h > 0 {
                out.push((i, h));
            }
        }
        Ok(out)
    }

    /// Euler characteristic from the terms.
    pub fn euler_characteristic(&self) -> i64 {
        self.terms
            .iter()
            .map(|(&i, t)| {
                let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
                sign * t.points as i64
            })
            .sum()
    }
}

/// Homology of the Brauer quotient at one p-class.
#[derive(Debug, Clone)]
pub struct ClassHomology {
    pub homology: Vec<(i64, usize)>,
    pub concentrated: bool,
    pub h_mark: Option<i64>,
    pub h_dim: Option<usize>,
}

/// Homology marks of a complex across all p-subgroup classes.
#[derive(Debug, Clone)]
pub struct HMarkReport {
    pub p: u64,
    pub per_class: Vec<ClassHomology>,
    pub all_concentrated: bool,
}

impl HMarkReport {
    /// The mark vector, defined only when every class is concentrated.
    pub fn marks(&self) -> Option<SuperclassFn> {
        if !self.all_concentrated {
            return None;
        }
        Some(SuperclassFn::new(
            self.p,
            self.per_class.iter().map(|c| c.h_mark.unwrap()).collect(),
        ))
    }
}

/// Computes the Brauer quotient at every p-class representative and records
/// where its homology lives.
pub fn h_marks(c: &PermComplex, poset: &PSubposet) -> Result<HMarkReport> {
    let mut per_class = Vec::with_capacity(poset.len());
    for pos in 0..poset.len() {
        let quotient = c.brauer(poset.reps[pos])?;
        let homology = quotient.homology_dims()?;
        let concentrated = homology.len() == 1;
        let (h_mark, h_dim) = if concentrated {
            (Some(homology[0].0), Some(homology[0].1))
        } else {
            (None, None)
        };
        per_class.push(ClassHomology {
            homology,
            concentrated,
            h_mark,
            h_dim,
        });
    }
    let all_concentrated = per_class.iter().all(|c| c.concentrated);
    Ok(HMarkReport {
        p: poset.p,
        per_class,
        all_concentrated,
    })
}

/// A complex is endotrivial exactly when every Brauer quotient has homology
/// concentrated in one degree with dimension one.
pub fn verify_endotrivial(c: &PermComplex, poset: &PSubposet) -> Result<bool> {
    let report = h_marks(c, poset)?;
    Ok(report.all_concentrated && report.per_class.iter().all(|h| h.h_dim == Some(1)))
}

/// The relative variant: concentration everywhere, with the dimension-one
/// requirement only at Sylow classes.
pub fn verify_endosplit_trivial_vfg(c: &PermComplex, poset: &PSubposet) -> Result<bool> {
    let report = h_marks(c, poset)?;
    if !report.all_concentrated {
        return Ok(false);
    }
    let sylow = poset.sylow_position(&c.data);
    Ok(report.per_class[sylow].h_dim == Some(1))
}

/// Predicted total basis-point count of `⊗_Q C_Q^{|b_Q|}`.
fn predict_total_points(data: &GroupData, poset: &PSubposet, b: &[i64]) -> u128 {
    let sylow_order = p_part(data.group.order(), poset.p);
    let mut total: u128 = 1;
    for (pos, &coeff) in b.iter().enumerate() {
        let order = data.lattice.subgroups[poset.reps[pos]].order;
        let factor: u128 = if order == sylow_order {
            1
        } else {
            (data.group.order() / order) as u128 + 1
        };
        for _ in 0..coeff.unsigned_abs() {
            total = total.saturating_mul(factor);
        }
    }
    total
}

/// Builds `⊗_Q C_Q^{⊗ b_Q}` for `b` the Möbius inversion of `f`, using duals
/// for negative exponents, and verifies that the marks of the result equal
/// `f` on the nose.
pub fn build_from_hmarks(
    data: &Arc<GroupData>,
    poset: &PSubposet,
    f: &SuperclassFn,
    budget: usize,
) -> Result<PermComplex> {
    let b = poset.mobius_inversion(f)?;
    let predicted = predict_total_points(data, poset, &b.values);
    if predicted > budget as u128 {
        return Err(Error::BudgetExceeded {
            predicted,
            budget,
        });
    }
    let mut acc = PermComplex::unit(data, poset.p);
    for (pos, &coeff) in b.values.iter().enumerate() {
        if coeff == 0 {
            continue;
        }
        let base = PermComplex::syzygy(data, poset, pos);
        let factor = if coeff > 0 { base } else { base.dual() };
        for _ in 0..coeff.unsigned_abs() {
            acc = acc.tensor(&factor);
        }
    }
    let report = h_marks(&acc, poset)?;
    let marks = report.marks().expect("syzygy products have concentrated homology");
    assert_eq!(marks.values, f.values, "reconstructed marks must match");
    Ok(acc)
}

/// Virtual G-set class vector of the alternating sum of terms, indexed by
/// the full subgroup-class list; only defined over p-groups where terms are
/// genuinely transitive-sum permutation modules.
pub fn lefschetz(c: &PermComplex) -> Result<Vec<i64>> {
    if !is_p_power(c.data.group.order(), c.p) {
        return Err(Error::NotPGroup);
    }
    let n_classes = c.data.lattice.classes.len();
    let mut coeffs = vec![0i64; n_classes];
    for (&degree, set) in &c.terms {
        let sign = if degree.rem_euclid(2) == 0 { 1 } else { -1 };
        let mut seen = vec![false; set.points];
        for x in 0..set.points {
            if seen[x] {
                continue;
            }
            for y in set.orbit_of(x) {
                seen[y] = true;
            }
            let stab = set.stabilizer_members(x);
            let sub = c
                .data
                .lattice
                .subgroup_index(&stab)
                .expect("stabilizer is a subgroup");
            coeffs[c.data.lattice.class_of[sub]] += sign;
        }
    }
    Ok(coeffs)
}

/// Realizes the subgroup at lattice index `h` as a standalone group.
/// Returns its data and, for each new element index, the parent element
/// index it corresponds to.
pub fn subgroup_as_group(data: &Arc<GroupData>, h: usize) -> Result<(Arc<GroupData>, Vec<usize>)> {
    let perms: Vec<crate::perm::Perm> = data.lattice.subgroups[h]
        .members
        .iter()
        .map(|&e| data.group.element(e).clone())
        .collect();
    let sub_group = crate::group::PermGroup::enumerate(
        data.group.degree(),
        perms,
        data.lattice.subgroups[h].order,
    )?;
    let element_map: Vec<usize> = sub_group
        .elements()
        .iter()
        .map(|p| data.group.element_index(p).expect("subgroup element lies in parent"))
        .collect();
    Ok((Arc::new(GroupData::new(sub_group)?), element_map))
}

/// Realizes the quotient `h/n` as a standalone permutation group via its
/// regular action. Returns the data, the coset table, and for each new
/// element index the coset it corresponds to.
pub fn quotient_as_group(
    data: &Arc<GroupData>,
    h: usize,
    n: usize,
) -> Result<(Arc<GroupData>, QuotientGroup, Vec<usize>)> {
    let quotient = QuotientGroup::new(data, h, n)?;
    let (perm_group, coset_to_element) = quotient.to_perm_group();
    let mut element_to_coset = vec![0usize; quotient.order];
    for (coset, &e) in coset_to_element.iter().enumerate() {
        element_to_coset[e] = coset;
    }
    Ok((
        Arc::new(GroupData::new(perm_group)?),
        quotient,
        element_to_coset,
    ))
}
