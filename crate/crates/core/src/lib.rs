//! Exact computations around vanishing cycles of involutive map germs:
//! polynomial algebra, Gröbner elimination, Poisson brackets, discriminants,
//! Picard–Lefschetz monodromy and Steinberg maps.

pub mod polycore;
pub mod groebner;
pub mod symplectic;
pub mod singularity;
pub mod monodromy;
pub mod steinberg;
