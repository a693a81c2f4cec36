//! Unsupervised K-nearest neighbor (UNN) regression.
//!
//! Embeds `N` patterns onto equidistant slots of a one-dimensional latent
//! line so that KNN regression from latent neighbors reconstructs each
//! pattern well. The objective is the data space reconstruction error
//! (DSRE), the mean squared residual between patterns and their
//! reconstructions.
//!
//! - [`knn`]: reconstructions and the DSRE
//! - [`embed`]: greedy insertion strategies UNN 1 and UNN 2
//! - [`oracle`]: exhaustive optimum for small `N`
//! - [`datasets`]: S-curve benchmark generators
//! - [`io`]: dataset and ordering CSV formats
//! - [`report`]: DSRE comparison tables and SVG plots
//!
//! ```
//! use unn::{dsre, embed, Dataset, EmbedConfig, LatentOrdering, Strategy};
//!
//! let data = Dataset::from_rows(&[[3.0], [1.0], [0.0], [2.0]]).unwrap();
//! let init = dsre(&LatentOrdering::identity(4), &data, 2).unwrap();
//! let result = embed(&data, &EmbedConfig::new(2, Strategy::Unn1)).unwrap();
//! assert!(result.final_dsre <= init);
//! ```

pub mod bench;
pub mod cli;
pub mod data;
pub mod datasets;
pub mod embed;
pub mod error;
pub mod io;
pub mod knn;
pub mod latent;
pub mod oracle;
pub mod report;

pub use data::Dataset;
pub use datasets::{generate, GenSpec, Shape};
pub use embed::{embed, Criterion, EmbedConfig, EmbedResult, InsertionOrder, Strategy};
pub use error::{Result, UnnError};
pub use knn::{dsre, knn_reconstruct, pointwise_error, DsreValue};
pub use latent::{latent_neighbors, LatentOrdering, NeighborSet};
pub use oracle::{brute_force, OracleResult};
