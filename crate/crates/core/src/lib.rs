//! Exact decision procedure for equivariant unirationality of del Pezzo
//! surfaces of degree at least 3.
//!
//! A surface is given as an explicit projective model (the plane, a quadric,
//! a cubic surface, or an intersection of two quadrics in `P^4`) together with
//! a finite group of projective transformations with cyclotomic entries. The
//! surface is `G`-unirational exactly when every abelian subgroup of `G` has a
//! fixed point on it; [`classify::decide`] checks this on the maximal abelian
//! subgroups and labels every failure with one of the four obstruction types.

pub mod cyclo;
pub mod linalg;
pub mod groups;
pub mod geometry;
pub mod fixedlocus;
pub mod families;
pub mod classify;
pub mod lines;
pub mod cli;
