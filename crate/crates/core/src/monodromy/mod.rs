//! Intersection lattices of vanishing cycles, Picard–Lefschetz monodromy,
//! Weyl group representations and Dynkin folding.

mod coxeter;
mod folding;
mod intmatrix;
mod lattice;

use thiserror::Error;

pub use coxeter::{
    braid_relation_check, coxeter_element_order, coxeter_number, enumerate_group, group_order_bfs,
    involution_check, weyl_generators, BraidCheck, CoxeterDatum, DynkinType, GroupOrder, DEFAULT_BFS_CAP,
};
pub use folding::{
    automorphism_witness, automorphisms_from_spec, fold, identify_cartan, quotient_rank_check, FoldingDatum,
};
pub use intmatrix::IntMatrix;
pub use lattice::{
    picard_lefschetz_matrix, pl_reflection, reordered_form, variation_matrix, IntersectionLattice, Parity,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonodromyError {
    #[error("unknown Dynkin type '{0}'")]
    UnknownType(String),
    #[error("'{0}' is not crystallographic and has no integer Cartan matrix")]
    NonCrystallographic(String),
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("type {0} is not simply laced")]
    NotSimplyLaced(String),
    #[error("bad intersection form: {0}")]
    FormShape(String),
    #[error("reflection needs self-intersection -2, cycle {index} has {value}")]
    UnsupportedSelfIntersection { index: usize, value: i64 },
    #[error("Picard–Lefschetz reflections are only implemented for even middle dimension")]
    OddParity,
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("expected size {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("not a diagram automorphism: Cartan entry ({}, {}) is not preserved", .i + 1, .j + 1)]
    NotADiagramAutomorphism { i: usize, j: usize },
    #[error("nodes {} and {} are adjacent but lie in one orbit", .i + 1, .j + 1)]
    AdjacentOrbit { i: usize, j: usize },
    #[error("unsupported automorphism {0}")]
    UnknownAutomorphism(String),
    #[error("automorphism group exceeds the enumeration cap")]
    GroupTooLarge,
}
