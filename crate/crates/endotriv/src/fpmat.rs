//! Dense linear algebra over the prime field F_p: rank, kernels, solving,
//! and homology dimensions of two composable differentials.
//!
//! Matrices are dense throughout. The tensor budget keeps term dimensions in
//! the low thousands, where dense elimination stays well inside memory and
//! time limits; switch to a sparse representation only if that budget is
//! ever raised past ~10^4.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = FpMatrix::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut m = FpMatrix::zero(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x.rem_euclid(p as i64) as u64);
            }
        }
        m
    }

    /// Permutation matrix sending basis vector `j` to basis vector `perm[j]`.
    pub fn from_permutation(p: u64, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = FpMatrix::zero(p, n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, 1);
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = FpMatrix::zero(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c));
            }
        }
        out
    }

    pub fn scale(&self, s: u64) -> FpMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = mulmod(*e, s % self.p, self.p);
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = (*e + *o) % self.p;
        }
        out
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let mut out = FpMatrix::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.at(i, j) + mulmod(a, other.at(k, j), self.p)) % self.p;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for c in 0..self.cols {
                    acc = (acc + mulmod(self.at(r, c), v[c], self.p)) % self.p;
                }
                acc
            })
            .collect()
    }

    /// Restriction to the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> FpMatrix {
        let mut out = FpMatrix::zero(self.p, rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                out.set(ri, ci, self.at(r, c));
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_echelon().len()
    }

    /// In-place row echelon reduction; returns the pivot column of each
    /// pivot row.
    fn row_echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.at(r, col) != 0) else {
                continue;
            };
            for c in 0..self.cols {
                let tmp = self.at(row, c);
                self.set(row, c, self.at(pr, c));
                self.set(pr, c, tmp);
            }
            let inv = invmod(self.at(row, col), self.p);
            for c in 0..self.cols {
                self.set(row, c, mulmod(self.at(row, c), inv, self.p));
            }
            for r in 0..self.rows {
                if r != row && self.at(r, col) != 0 {
                    let f = self.at(r, col);
                    for c in 0..self.cols {
                        let v = (self.at(r, c) + self.p - mulmod(f, self.at(row, c), self.p) % self.p)
                            % self.p;
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// A basis of `{x : self·x = 0}`, one vector per column.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.row_echelon();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u64; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    // reduced echelon: x_pc = -m[r][fc]
                    v[pc] = (self.p - m.at(r, fc)) % self.p;
                }
                v
            })
            .collect()
    }

    /// A basis of the column space: the columns of `self` at pivot positions.
    pub fn image_basis(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.row_echelon();
        pivots
            .iter()
            .map(|&c| (0..self.rows).map(|r| self.at(r, c)).collect())
            .collect()
    }

    /// Solves `self·x = b`, returning any solution.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FpMatrix::zero(self.p, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c));
            }
            aug.set(r, self.cols, b[r] % self.p);
        }
        let pivots = aug.row_echelon();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![0u64; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols);
        }
        Some(x)
    }
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn invmod(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime and a ≠ 0 mod p
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

pub fn fp_rank(m: &FpMatrix) -> usize {
    m.rank()
}

pub fn fp_kernel_dim(m: &FpMatrix) -> usize {
    m.cols - m.rank()
}

/// Homology dimension `dim ker(d_out) − rank(d_in)` for composable
/// differentials `d_in: A → B`, `d_out: B → C`; rejects `d_out∘d_in ≠ 0`.
pub fn fp_homology_dim(d_in: &FpMatrix, d_out: &FpMatrix) -> Result<usize> {
    assert_eq!(d_out.cols, d_in.rows, "differentials are not composable");
    if !d_out.mul(d_in).is_zero() {
        return Err(Error::NonComplex);
    }
    Ok(fp_kernel_dim(d_out) - d_in.rank())
}
