//! Decision diagrams for topological minor embeddings and for subgraph
//! families closed under topological minors.
//!
//! ```
//! use tmdd::graph::complete_graph;
//! use tmdd::pipeline::{ftm_subgraphs, GraphClass};
//!
//! let planar = ftm_subgraphs(&complete_graph(5), &GraphClass::Planar.into());
//! assert_eq!(planar.count().to_u64(), Some(1023));
//! ```

pub mod build;
pub mod cfbs;
pub mod ddops;
pub mod error;
pub mod graph;
pub mod mdd;
pub mod oracle;
pub mod pipeline;
pub mod profiles;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/diagrams.md")]
    mod diagrams {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/profiles.md")]
    mod profiles {}
    #[doc = include_str!("../../../book/src/classes.md")]
    mod classes {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
