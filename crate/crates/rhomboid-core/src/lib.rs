//! Square-rhomboid graphs and their algebraic expressions.
//!
//! A labeled two-terminal DAG (st-dag) induces a *canonical expression*: the
//! sum, over all source-to-sink paths, of the product of edge labels along
//! each path. For the square-rhomboid family this crate generates far shorter
//! *factored* expressions by recursive vertex decomposition, and provides the
//! machinery to prove them equivalent to the canonical one and to predict
//! their literal counts.
//!
//! The crate is split into four modules:
//!
//! * [`graph`]: graph families (square rhomboid, full square rhomboid,
//!   Fibonacci, free-form), path enumeration, and the canonical expression.
//! * [`expr`]: expression trees, normalization, expansion to monomials,
//!   modular evaluation, equivalence checks, and text round-trip.
//! * [`vdm`]: the two decomposition methods (two-vertex and one-vertex)
//!   plus their combination, generating factored expressions for any
//!   rhomboid subgraph shape.
//! * [`analysis`]: literal-count recurrences, closed forms, complexity
//!   tables, and generator-vs-prediction cross-checks.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the companion CLI
//! crate carries all IO and file formats.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod analysis;
pub mod expr;
pub mod graph;
pub mod vdm;

pub use expr::{Expr, MonomialMultiset};
pub use graph::{EdgeLabel, Family, Series, StDag, Tier, VertexRef};
pub use vdm::{Method, Shape, ShapeClass, SubgraphSpec};
