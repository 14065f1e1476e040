//! Exact integer linear algebra for periodic point sets: Smith normal
//! forms, coset descriptions, lattice points in boxes and below bounds,
//! positivity of lattices and minimal coset points in orthants.

pub mod hilbert;
pub mod lattice;
mod matrix;
pub mod polyhedron;
pub mod snf;

pub use lattice::{
    coset_constraints, minimal_orthant_points, points_below, points_in_box, positivity_check,
    Congruence, CosetSystem, Equality, IntVec, Lattice,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, Smith};
