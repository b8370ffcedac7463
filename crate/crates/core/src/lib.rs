//! Exact thin loop groups of finite simplicial complexes.
//!
//! A piecewise-linear loop on a complex embedded in rational space is stored
//! as the word of its vertices. Deleting a vertex that is collinear with its
//! two neighbours inside one simplex never changes the thin class of the
//! loop, and every word reduces to a unique word where no such deletion
//! applies. Those reduced words form a group under concatenation
//! ([`ThinClass`]), which acts freely on reduced paths ([`ThinPath`]) with
//! the endpoint as projection.
//!
//! ```
//! use std::sync::Arc;
//! use thinloop::{fixtures, thin, PlWord, WordKind};
//!
//! let c = Arc::new(fixtures::hollow3());
//! let w = PlWord::from_vertex_ids(&c, &["A", "B", "C", "A", "B", "A"], WordKind::Loop).unwrap();
//! let g = thin::core(&w).unwrap();
//! assert_eq!(g.word().len(), 4);
//! assert!(g.mul(&g.inv()).unwrap().is_identity());
//! ```

pub mod bundle;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod geometry;
pub mod random;
pub mod scalar;
pub mod thin;
pub mod word;

pub use bundle::{act, endpoint, lift, local_triv, local_triv_inv, path_core, ThinPath};
pub use error::{Error, Result};
pub use geometry::{between, build_complex, ComplexSpec, Point, Simplex, SimplicialComplex};
pub use scalar::Scalar;
pub use thin::{core, cyclic_core, FreeThinClass, ReductionTrace, Rule, ThinClass};
pub use word::{
    evaluate, is_uniform, make_word, uniform_breakpoints, uniformize_homotopy, PlWord, Subdivision,
    UniformParam, WordKind,
};
