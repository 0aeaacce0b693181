//! F_p modules with explicit generator action, materialized homology of
//! permutation complexes, and the norm-rank certificate for free summands
//! over p-groups.

use crate::complex::PermComplex;
use crate::error::{Error, Result};
use crate::fpmat::FpMatrix;
use crate::group::{is_p_power, GroupData};

/// A finite-dimensional F_p representation given by one matrix per group
/// generator, acting on the left.
#[derive(Debug, Clone)]
pub struct FpModule {
    pub p: u64,
    pub dim: usize,
    pub generator_action: Vec<FpMatrix>,
}

impl FpModule {
    /// Matrix of an arbitrary group element, as the product along its word.
    pub fn element_matrix(&self, data: &GroupData, element: usize) -> FpMatrix {
        let mut m = FpMatrix::identity(self.p, self.dim);
        for &gen in data.group.word(element) {
            m = m.mul(&self.generator_action[gen]);
        }
        m
    }

    /// Verifies that generator matrices assemble into a group homomorphism:
    /// the matrix of g·e equals the matrix of g times the matrix of e for
    /// every element e and generator g.
    pub fn check_representation(&self, data: &GroupData) -> bool {
        let matrices: Vec<FpMatrix> = (0..data.group.order())
            .map(|e| self.element_matrix(data, e))
            .collect();
        (0..data.group.generators().len()).all(|g| {
            let gi = data
                .group
                .element_index(&data.group.generators()[g])
                .unwrap();
            (0..data.group.order()).all(|e| {
                self.generator_action[g].mul(&matrices[e]) == matrices[data.group.mul(gi, e)]
            })
        })
    }

    /// The norm element Σ_g g acting on the module.
    pub fn norm_matrix(&self, data: &GroupData) -> FpMatrix {
        let mut norm = FpMatrix::zero(self.p, self.dim, self.dim);
        for e in 0..data.group.order() {
            norm = norm.add(&self.element_matrix(data, e));
        }
        norm
    }
}

/// Over a p-group, the rank `a` of the norm element counts the free
/// summands: returns `(a, dim − a·|G|)`, the projective-free dimension being
/// what is left after splitting off `a` copies of the regular module.
pub fn free_summand_count(module: &FpModule, data: &GroupData) -> Result<(usize, usize)> {
    if !is_p_power(data.group.order(), module.p) {
        return Err(Error::NotPGroup);
    }
    assert!(module.check_representation(data), "generator matrices must define a representation");
    let a = module.norm_matrix(data).rank();
    Ok((a, module.dim - a * data.group.order()))
}

/// Materializes `H_degree(c)` as an `FpModule`: kernel and image bases are
/// computed over F_p and the permutation action of each generator is pushed
/// to the subquotient.
pub fn homology_module(c: &PermComplex, degree: i64) -> Result<FpModule> {
    let p = c.p;
    let d_out = c.differential(degree);
    let d_in = c.differential(degree + 1);
    if !d_out.mul(&d_in).is_zero() {
        return Err(Error::NonComplex);
    }
    let n = c.term_dim(degree);
    let kernel = d_out.kernel_basis();
    let image = d_in.image_basis();

    // choose homology representatives: kernel vectors that add pivots beyond
    // the image columns
    let m = image.len();
    let mut combined = FpMatrix::zero(p, n, m + kernel.len());
    for (j, v) in image.iter().chain(kernel.iter()).enumerate() {
        for (i, &x) in v.iter().enumerate() {
            combined.set(i, j, x);
        }
    }
    let mut reduced = combined.clone();
    let pivots = reduced_pivots(&mut reduced);
    let reps: Vec<Vec<u64>> = pivots
        .iter()
        .filter(|&&c| c >= m)
        .map(|&c| kernel[c - m].clone())
        .collect();
    let h_dim = reps.len();

    // solve basis: image columns followed by representatives
    let mut solve_basis = FpMatrix::zero(p, n, m + h_dim);
    for (j, v) in image.iter().chain(reps.iter()).enumerate() {
        for (i, &x) in v.iter().enumerate() {
            solve_basis.set(i, j, x);
        }
    }
    let term = &c.terms[&degree];
    let generator_action = c
        .data
        .group
        .generators()
        .iter()
        .map(|gen| {
            let gi = c.data.group.element_index(gen).unwrap();
            let mut mat = FpMatrix::zero(p, h_dim, h_dim);
            for (col, rep) in reps.iter().enumerate() {
                // permute the representative, then express it in the
                // image ⊕ representative basis
                let mut moved = vec![0u64; n];
                for (x, &v) in rep.iter().enumerate() {
                    moved[term.action[gi][x]] = v;
                }
                let sol = solve_basis
                    .solve(&moved)
                    .expect("moved representative stays in the kernel");
                for row in 0..h_dim {
                    mat.set(row, col, sol[m + row]);
                }
            }
            mat
        })
        .collect();
    Ok(FpModule {
        p,
        dim: h_dim,
        generator_action,
    })
}

fn reduced_pivots(m: &mut FpMatrix) -> Vec<usize> {
    // row-echelon pivots of a copy, via the public API
    let mut pivots = Vec::new();
    let mut row = 0;
    let rows = m.rows;
    let cols = m.cols;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(pr) = (row..rows).find(|&r| m.at(r, col) != 0) else {
            continue;
        };
        for c in 0..cols {
            let tmp = m.at(row, c);
            m.set(row, c, m.at(pr, c));
            m.set(pr, c, tmp);
        }
        let inv = crate::fpmat::invmod(m.at(row, col), m.p);
        for c in 0..cols {
            m.set(row, c, crate::fpmat::mulmod(m.at(row, c), inv, m.p));
        }
        for r in 0..rows {
            if r != row && m.at(r, col) != 0 {
                let f = m.at(r, col);
                for c in 0..cols {
                    let v = (m.at(r, c) + m.p
                        - crate::fpmat::mulmod(f, m.at(row, c), m.p))
                        % m.p;
                    m.set(r, c, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}
