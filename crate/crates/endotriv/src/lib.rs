//! Exact computation of the classification apparatus of endotrivial
//! complexes for a finite group G at a prime p: the subgroup lattice and its
//! p-subposet, superclass-function lattices under Borel-Smith and oriented
//! Artin-Borel-Smith conditions, the Dade quotient D^Ω as invariant factors,
//! Burnside-ring units and Lefschetz invariants, and a chain-complex engine
//! over F_p that builds relative syzygy complexes, takes Brauer quotients,
//! and reconstructs a complex from its homology marks.
//!
//! Everything is exact integer or F_p arithmetic; floating point never
//! appears. Inputs are desk scale by design (group order in the hundreds).

// matrix code indexes several parallel structures with one counter
#![allow(clippy::needless_range_loop)]

pub mod biset;
pub mod borel_smith;
pub mod builtins;
pub mod burnside;
pub mod complex;
pub mod error;
pub mod fpmat;
pub mod group;
pub mod groupfile;
pub mod intmat;
pub mod module;
pub mod perm;
pub mod superclass;

pub use borel_smith::{
    artin_system, borel_smith_system, cfb_lattice, cfba_lattice, classify_endotrivial_group,
    dade_omega_invariants, ConditionSystem, CyclicRealRep, RowProvenance,
};
pub use complex::{
    build_from_hmarks, h_marks, lefschetz, verify_endosplit_trivial_vfg, verify_endotrivial,
    BasedGSet, HMarkReport, PermComplex, DEFAULT_TENSOR_BUDGET,
};
pub use error::{Error, Result};
pub use fpmat::{fp_homology_dim, fp_kernel_dim, fp_rank, FpMatrix};
pub use group::{
    hom_to_units_order, is_prime, iso_type_small, GroupData, IsoType, PermGroup, QuotientGroup,
    Subgroup, SubgroupLattice,
};
pub use intmat::{
    hnf, lattice_quotient, snf_invariants, solve_congruence_lattice, AbelianInvariants, IntMatrix,
    IntegerLattice,
};
pub use module::{free_summand_count, homology_module, FpModule};
pub use perm::Perm;
pub use superclass::{PSubposet, SuperclassFn};
