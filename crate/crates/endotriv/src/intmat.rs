//! Exact integer matrices: column Hermite normal form, Smith invariant
//! factors, integer kernels, and sublattices of Z^n cut out by equalities and
//! congruences.
//!
//! Entries are arbitrary precision. Intermediate Hermite entries can blow
//! past any fixed width even on small inputs, and matrices here never exceed
//! a few dozen rows, so there is no reason to risk overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &x) in row.iter().enumerate() {
                *m.at_mut(i, j) = BigInt::from(x);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols_i64(cols: &[Vec<i64>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        let mut m = IntMatrix::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r);
            for (i, &x) in col.iter().enumerate() {
                *m.at_mut(i, j) = BigInt::from(x);
            }
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }

    pub fn col(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = self.at(i, k) * other.at(k, j);
                    *out.at_mut(i, j) += add;
                }
            }
        }
        out
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    /// col_j -= q * col_k
    fn submul_col(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let sub = q * self.at(r, k);
            *self.at_mut(r, j) -= sub;
        }
    }

    fn col_is_zero(&self, c: usize) -> bool {
        (0..self.rows).all(|r| self.at(r, c).is_zero())
    }
}

/// Reduces `m` in place to column echelon form by unimodular column
/// operations, mirroring every operation in `transform` when provided.
/// Returns the number of pivot columns (the rank); pivot columns come first,
/// remaining columns are zero.
fn column_reduce(m: &mut IntMatrix, mut transform: Option<&mut IntMatrix>) -> usize {
    let mut pivot_col = 0;
    for row in 0..m.rows {
        if pivot_col == m.cols {
            break;
        }
        loop {
            // pick the column ≥ pivot_col with the smallest nonzero entry in
            // this row
            let mut best: Option<(usize, BigInt)> = None;
            for c in pivot_col..m.cols {
                let v = m.at(row, c);
                if !v.is_zero() {
                    let a = v.abs();
                    if best.as_ref().is_none_or(|(_, b)| a < *b) {
                        best = Some((c, a));
                    }
                }
            }
            let Some((bc, _)) = best else { break };
            m.swap_cols(pivot_col, bc);
            if let Some(t) = transform.as_deref_mut() {
                t.swap_cols(pivot_col, bc);
            }
            let mut done = true;
            for c in (pivot_col + 1)..m.cols {
                if !m.at(row, c).is_zero() {
                    let q = m.at(row, c) / m.at(row, pivot_col);
                    m.submul_col(c, pivot_col, &q);
                    if let Some(t) = transform.as_deref_mut() {
                        t.submul_col(c, pivot_col, &q);
                    }
                    if !m.at(row, c).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m.at(row, pivot_col).is_zero() {
            continue;
        }
        if m.at(row, pivot_col).is_negative() {
            m.negate_col(pivot_col);
            if let Some(t) = transform.as_deref_mut() {
                t.negate_col(pivot_col);
            }
        }
        // reduce earlier columns in this pivot row to the range [0, pivot)
        let pivot = m.at(row, pivot_col).clone();
        for c in 0..pivot_col {
            let q = m.at(row, c).div_floor(&pivot);
            m.submul_col(c, pivot_col, &q);
            if let Some(t) = transform.as_deref_mut() {
                t.submul_col(c, pivot_col, &q);
            }
        }
        pivot_col += 1;
    }
    pivot_col
}

/// Column Hermite normal form of `m`: the canonical basis matrix of the
/// column span, with zero columns dropped. Pivots are positive and entries
/// left of each pivot are reduced into `[0, pivot)`, so two matrices span the
/// same lattice exactly when their forms are equal.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    let mut work = m.clone();
    let rank = column_reduce(&mut work, None);
    let mut out = IntMatrix::zero(m.rows, rank);
    for c in 0..rank {
        for r in 0..m.rows {
            *out.at_mut(r, c) = work.at(r, c).clone();
        }
    }
    out
}

/// A basis of the integer kernel `{x : m·x = 0}`, as columns.
pub fn kernel(m: &IntMatrix) -> IntMatrix {
    let mut work = m.clone();
    let mut transform = IntMatrix::identity(m.cols);
    let rank = column_reduce(&mut work, Some(&mut transform));
    let mut out = IntMatrix::zero(m.cols, m.cols - rank);
    for (k, c) in (rank..m.cols).enumerate() {
        debug_assert!(work.col_is_zero(c));
        for r in 0..m.cols {
            *out.at_mut(r, k) = transform.at(r, c).clone();
        }
    }
    out
}

/// Invariant factors of a free abelian quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianInvariants {
    /// Torsion invariant factors `d_1 | d_2 | …`, each > 1, ascending.
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants {
            torsion: vec![],
            free_rank: 0,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|d| u64::try_from(d).expect("invariant factor fits u64"))
            .collect()
    }
}

/// Smith normal form diagonal of `m` (positive, with the divisibility chain),
/// including trailing structure implicitly: returns only the nonzero
/// diagonal entries.
fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let rows = a.rows;
    let cols = a.cols;
    let mut diag: Vec<BigInt> = Vec::new();
    let mut t = 0;
    'outer: while t < rows.min(cols) {
        // find the smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize, BigInt)> = None;
        for r in t..rows {
            for c in t..cols {
                let v = a.at(r, c);
                if !v.is_zero() {
                    let abs = v.abs();
                    if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                        best = Some((r, c, abs));
                    }
                }
            }
        }
        let Some((br, bc, _)) = best else {
            break 'outer;
        };
        // move it to (t, t)
        for r in 0..rows {
            a.entries.swap(r * cols + t, r * cols + bc);
        }
        for c in 0..cols {
            a.entries.swap(t * cols + c, br * cols + c);
        }
        // clear row t and column t
        let mut dirty = false;
        for c in (t + 1)..cols {
            if !a.at(t, c).is_zero() {
                let q = a.at(t, c) / a.at(t, t);
                a.submul_col(c, t, &q);
                if !a.at(t, c).is_zero() {
                    dirty = true;
                }
            }
        }
        for r in (t + 1)..rows {
            if !a.at(r, t).is_zero() {
                let q = (a.at(r, t) / a.at(t, t)).clone();
                if !q.is_zero() {
                    for c in 0..cols {
                        let sub = &q * a.at(t, c);
                        *a.at_mut(r, c) -= sub;
                    }
                }
                if !a.at(r, t).is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue 'outer;
        }
        // enforce that the pivot divides everything below-right; if not,
        // fold the offending row into row t and redo
        let pivot = a.at(t, t).clone();
        for r in (t + 1)..rows {
            for c in (t + 1)..cols {
                if !(a.at(r, c) % &pivot).is_zero() {
                    for cc in 0..cols {
                        let add = a.at(r, cc).clone();
                        *a.at_mut(t, cc) += add;
                    }
                    continue 'outer;
                }
            }
        }
        diag.push(pivot.abs());
        t += 1;
    }
    diag
}

/// Invariant factors of the cokernel `Z^rows / colspan(m)`.
pub fn snf_invariants(m: &IntMatrix) -> AbelianInvariants {
    let diag = smith_diagonal(m);
    let free_rank = m.rows - diag.len();
    let torsion = diag.into_iter().filter(|d| *d > BigInt::one()).collect();
    AbelianInvariants { torsion, free_rank }
}

/// A sublattice of Z^n held as its column Hermite basis; equal lattices have
/// identical bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    pub ambient_rank: usize,
    pub basis: IntMatrix,
}

impl IntegerLattice {
    pub fn from_generators(ambient_rank: usize, generators: &IntMatrix) -> Self {
        assert_eq!(generators.rows, ambient_rank);
        IntegerLattice {
            ambient_rank,
            basis: hnf(generators),
        }
    }

    pub fn full(ambient_rank: usize) -> Self {
        IntegerLattice {
            ambient_rank,
            basis: IntMatrix::identity(ambient_rank),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.cols
    }

    /// Index of the lattice in Z^n when finite (full rank), else None.
    pub fn index_in_ambient(&self) -> Option<BigInt> {
        if self.rank() != self.ambient_rank {
            return None;
        }
        let mut det = BigInt::one();
        for c in 0..self.basis.cols {
            // column HNF of a full-rank lattice is square triangular
            let mut pivot = BigInt::zero();
            for r in 0..self.basis.rows {
                if !self.basis.at(r, c).is_zero() {
                    pivot = self.basis.at(r, c).clone();
                    break;
                }
            }
            det *= pivot;
        }
        Some(det.abs())
    }

    /// Exact membership by back-substitution against the Hermite basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient_rank);
        let mut v: Vec<BigInt> = v.to_vec();
        for c in 0..self.basis.cols {
            let pivot_row = (0..self.basis.rows)
                .find(|&r| !self.basis.at(r, c).is_zero())
                .expect("basis columns are nonzero");
            let pivot = self.basis.at(pivot_row, c);
            let (q, rem) = v[pivot_row].div_rem(pivot);
            if !rem.is_zero() {
                return false;
            }
            for r in 0..self.basis.rows {
                let sub = &q * self.basis.at(r, c);
                v[r] -= sub;
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.contains(&big)
    }

    /// True if every basis vector of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &IntegerLattice) -> bool {
        (0..other.basis.cols).all(|c| self.contains(&other.basis.col(c)))
    }
}

/// The lattice `{f ∈ Z^n : eq·f = 0 for all equality rows, row·f ≡ 0 mod m
/// for all congruence rows}`, solved through the integer kernel of the
/// stacked system with one auxiliary column per modulus.
pub fn solve_congruence_lattice(
    n: usize,
    equalities: &[Vec<i64>],
    congruences: &[(Vec<i64>, u64)],
) -> Result<IntegerLattice> {
    for row in equalities.iter().chain(congruences.iter().map(|(r, _)| r)) {
        if row.len() != n {
            return Err(Error::LengthMismatch {
                got: row.len(),
                want: n,
            });
        }
    }
    let k = congruences.len();
    let mut system = IntMatrix::zero(equalities.len() + k, n + k);
    for (i, row) in equalities.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            *system.at_mut(i, j) = BigInt::from(x);
        }
    }
    for (i, (row, modulus)) in congruences.iter().enumerate() {
        assert!(*modulus >= 1);
        let r = equalities.len() + i;
        for (j, &x) in row.iter().enumerate() {
            *system.at_mut(r, j) = BigInt::from(x);
        }
        *system.at_mut(r, n + i) = -BigInt::from(*modulus);
    }
    let ker = kernel(&system);
    // project kernel vectors onto the first n coordinates
    let mut proj = IntMatrix::zero(n, ker.cols);
    for c in 0..ker.cols {
        for r in 0..n {
            *proj.at_mut(r, c) = ker.at(r, c).clone();
        }
    }
    Ok(IntegerLattice::from_generators(n, &proj))
}

/// Invariant factors of `Z^n / sub`.
pub fn lattice_quotient(n: usize, sub: &IntegerLattice) -> AbelianInvariants {
    assert_eq!(sub.ambient_rank, n);
    snf_invariants(&sub.basis)
}
