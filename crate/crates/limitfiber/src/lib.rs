//! Limit combinatorics of one-parameter families of hyperplane arrangements
//! over k((z)): lattices in the affine building, membranes, matroid
//! decompositions, special fibers and a tropical cross-check.

pub mod building;
pub mod matroid;
pub mod membrane;
pub mod scalar;
pub mod specialfiber;
pub mod tropical;
