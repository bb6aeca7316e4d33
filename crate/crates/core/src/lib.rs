//! Extremal multiplicative Sidon-type sets.
//!
//! * [`pair_sidon`]: largest `{a,b}`-multiplicative subsets of `[n]` and their
//!   exact density `b/(b+gcd(a,b))`.
//! * [`components`] and [`density`]: the component structure of the graph
//!   behind `{{a},{b,c}}`-multiplicative sets and a certified interval for
//!   their maximum density.
//! * [`oracle`]: independent brute-force checks of both.
//! * [`cli`]: the `multsidon` command line.

pub mod cli;
pub mod components;
pub mod density;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod pair_sidon;

pub use components::{ComponentId, ComponentKind, GridComponent, TripleParams, TruncatedComponent};
pub use density::{approximate_density, DensityInterval};
pub use error::{Error, Result};
pub use pair_sidon::{ExtremalPairSet, PairParams};
