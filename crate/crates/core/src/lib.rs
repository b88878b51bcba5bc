//! Discrepancy of symmetric products of hypergraphs.
//!
//! For a hypergraph `H = ([n], E)` the `d`-fold symmetric product `Δ^d H`
//! lives on `[n]^d` and has one edge `E^d` per base edge. This crate provides
//! exact `c`-color discrepancy, the simplex decomposition of `[n]^d`, three
//! coloring constructions that carry a good coloring of `H` (or of a lower
//! power) up to `Δ^d H`, and the arithmetic and small exhaustive searches
//! behind the matching lower bounds.
//!
//! ```
//! use symdisc::{constructions, hypergraph::{disc_exact, Hypergraph}, product};
//!
//! let h = Hypergraph::new(3, vec![vec![1, 2, 3], vec![1, 2]]).unwrap();
//! let (base, psi) = disc_exact(&h, 3).unwrap();
//! let chi = constructions::simplex_balanced_coloring(&psi, 3).unwrap();
//! let lifted = product::product_disc_of_coloring(&h, &chi, product::DEFAULT_PRODUCT_CAP).unwrap();
//! assert_eq!(lifted, base);
//! ```

pub mod arith;
pub mod bounds;
pub mod constructions;
pub mod document;
pub mod error;
pub mod format;
pub mod hypergraph;
pub mod product;
pub mod simplex;
pub mod verify;

pub use error::{Error, Result};
pub use hypergraph::{Coloring, DiscValue, Hypergraph};
pub use product::ProductColoring;
pub use simplex::SimplexId;
