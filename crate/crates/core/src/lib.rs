//! Exact-arithmetic toolkit for ribbon graphs and their topological Tutte
//! polynomials.
//!
//! A ribbon graph is stored as a rotation system (cyclic half-edge order at
//! each vertex) with a twist flag per edge. On top of the plain graphs sit
//! coloured ribbon graphs: a partition of the vertices together with a
//! partition of the canonical boundary components. The crate computes the
//! polynomial invariants of these objects (`T_ps`, `T_s`, `T_cps`, `T_cs`,
//! the eleven-variable universal form `U`, the normalised form `P`, and the
//! Bollobás–Riordan and Krushkal polynomials) by three independent routes:
//! subset state sums, recursive deletion-contraction, and quasi-tree
//! (resolution-tree) expansion. All arithmetic is exact; polynomial
//! exponents live in (1/2)·Z.

pub mod activities;
pub mod colouring;
pub mod evaluators;
pub mod fixtures;
pub mod halfint;
pub mod invariants;
pub mod io;
pub mod multigraph;
pub mod poly;
pub mod random;
pub mod ribbon;
pub mod selfcheck;

mod gem;

pub use colouring::{ColouredRibbonGraph, Partition};
pub use halfint::HalfInt;
pub use multigraph::MultiGraph;
pub use poly::HalfPoly;
pub use ribbon::{BoundaryComponent, EdgeId, End, Half, RibbonGraph, Side, SideFlag};
