//! Weighted dual graphs of curve models, their Laplacians, weight functions
//! and essential skeleta, computed with exact rational arithmetic.

pub mod dot;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod model_ops;
pub mod potential;
pub mod scalar;
pub mod skeleton;
pub mod weight;

pub use error::{Error, Result};
pub use graph::{GraphPoint, MetricKind, WeightedDualGraph};
pub use scalar::Scalar;

/// Arbitrary-precision rationals; the default scalar.
pub type Rational = num_rational::BigRational;
pub type Graph = WeightedDualGraph<Rational>;
pub type Point = GraphPoint<Rational>;
pub type Divisor = potential::GraphDivisor<Rational>;
pub type PlFn = potential::PlFunction<Rational>;
pub type Locus = potential::SubgraphLocus<Rational>;
