//! Superclass functions on conjugacy classes of p-subgroups, the ω basis of
//! fixed-point indicator functions, and exact Möbius inversion between the ω
//! and idempotent bases.
//!
//! All vector indexing downstream of this module uses the canonical class
//! ordering fixed here: ascending subgroup order, ties broken by the least
//! representative.

use crate::error::{Error, Result};
use crate::group::{is_p_power, is_prime, p_part, GroupData};

/// An integer function on conjugacy classes of p-subgroups, stored on class
/// representatives in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperclassFn {
    pub p: u64,
    pub values: Vec<i64>,
}

impl SuperclassFn {
    pub fn new(p: u64, values: Vec<i64>) -> Self {
        SuperclassFn { p, values }
    }

    pub fn zero(p: u64, len: usize) -> Self {
        SuperclassFn {
            p,
            values: vec![0; len],
        }
    }

    pub fn add(&self, other: &SuperclassFn) -> SuperclassFn {
        assert_eq!(self.values.len(), other.values.len());
        SuperclassFn {
            p: self.p,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> SuperclassFn {
        SuperclassFn {
            p: self.p,
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

/// The conjugacy classes of p-subgroups of a group, in canonical order, with
/// the subconjugacy indicator matrix `W` and its exact integer inverse.
///
/// `W[r][q] = 1` iff class `r` is subconjugate to class `q`; the columns of
/// `W` are the ω functions and the entries of `W⁻¹` are the Möbius values
/// μ(P,Q) of the class poset.
#[derive(Debug, Clone)]
pub struct PSubposet {
    pub p: u64,
    /// Indices into the full lattice's class list.
    pub class_indices: Vec<usize>,
    /// Subgroup index (in the lattice) of each class representative.
    pub reps: Vec<usize>,
    pub subconjugacy: Vec<Vec<bool>>,
    pub omega_matrix: Vec<Vec<i64>>,
    pub mobius: Vec<Vec<i64>>,
}

impl PSubposet {
    pub fn new(data: &GroupData, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        // classes are already sorted by (order, least representative), so the
        // filtered list inherits the canonical ordering
        let class_indices: Vec<usize> = (0..data.lattice.classes.len())
            .filter(|&c| {
                let o = data.lattice.subgroups[data.lattice.classes[c].rep].order;
                is_p_power(o, p)
            })
            .collect();
        let reps: Vec<usize> = class_indices
            .iter()
            .map(|&c| data.lattice.classes[c].rep)
            .collect();
        let n = class_indices.len();
        let subconjugacy: Vec<Vec<bool>> = class_indices
            .iter()
            .map(|&ci| {
                class_indices
                    .iter()
                    .map(|&cj| data.lattice.subconjugacy[ci][cj])
                    .collect()
            })
            .collect();
        let omega_matrix: Vec<Vec<i64>> = (0..n)
            .map(|r| (0..n).map(|q| i64::from(subconjugacy[r][q])).collect())
            .collect();
        let mobius = invert_unitriangular(&omega_matrix);
        Ok(PSubposet {
            p,
            class_indices,
            reps,
            subconjugacy,
            omega_matrix,
            mobius,
        })
    }

    pub fn len(&self) -> usize {
        self.class_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_indices.is_empty()
    }

    /// Position of a lattice subgroup index's class in this poset, if it is a
    /// p-subgroup.
    pub fn position_of_subgroup(&self, data: &GroupData, subgroup: usize) -> Option<usize> {
        let class = data.lattice.class_of[subgroup];
        self.class_indices.iter().position(|&c| c == class)
    }

    /// The position of the Sylow class (the unique maximal one).
    pub fn sylow_position(&self, data: &GroupData) -> usize {
        let sylow_order = p_part(data.group.order(), self.p);
        (0..self.len())
            .find(|&i| data.lattice.subgroups[self.reps[i]].order == sylow_order)
            .expect("a Sylow p-subgroup class always exists")
    }

    /// ω_Q: the indicator of subconjugacy to class `q` (column `q` of `W`).
    pub fn omega(&self, q: usize) -> SuperclassFn {
        SuperclassFn {
            p: self.p,
            values: (0..self.len()).map(|r| self.omega_matrix[r][q]).collect(),
        }
    }

    /// Coefficients `b` with `e_Q = Σ_P b_P ω_P`: column `q` of `W⁻¹`.
    pub fn idempotent_basis_coeffs(&self, q: usize) -> SuperclassFn {
        SuperclassFn {
            p: self.p,
            values: (0..self.len()).map(|r| self.mobius[r][q]).collect(),
        }
    }

    /// Writes `f = Σ_P b_P ω_P`, returning `b = W⁻¹·f`.
    pub fn mobius_inversion(&self, f: &SuperclassFn) -> Result<SuperclassFn> {
        if f.values.len() != self.len() {
            return Err(Error::LengthMismatch {
                got: f.values.len(),
                want: self.len(),
            });
        }
        Ok(SuperclassFn {
            p: self.p,
            values: mat_vec(&self.mobius, &f.values),
        })
    }

    /// `W·b`, the inverse of `mobius_inversion`.
    pub fn omega_combination(&self, b: &SuperclassFn) -> SuperclassFn {
        SuperclassFn {
            p: self.p,
            values: mat_vec(&self.omega_matrix, &b.values),
        }
    }
}

pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Exact inverse of a unitriangular integer matrix by back-substitution.
fn invert_unitriangular(w: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = w.len();
    for (i, row) in w.iter().enumerate() {
        assert_eq!(row[i], 1, "matrix is not unitriangular");
        for (j, &v) in row.iter().enumerate().take(i) {
            assert_eq!(v, 0, "matrix is not upper triangular in row {i}, col {j}");
        }
    }
    let mut inv = vec![vec![0i64; n]; n];
    for q in 0..n {
        // solve W·x = e_q from the bottom up
        let mut x = vec![0i64; n];
        for r in (0..n).rev() {
            let mut acc = i64::from(r == q);
            for k in (r + 1)..n {
                acc -= w[r][k] * x[k];
            }
            x[r] = acc;
        }
        for r in 0..n {
            inv[r][q] = x[r];
        }
    }
    inv
}
