//! Exact computation with plane algebroid curves and hypersurface
//! singularities over fields of arbitrary characteristic.
//!
//! The crate provides, over ℚ, prime fields and their finite extensions:
//!
//! * truncated multivariate power series with explicit precision tracking
//!   ([`series`]),
//! * branch parametrizations and Hamburger-Noether expansions ([`hncurve`]),
//! * resolution invariants: multiplicity sequences, characteristic
//!   exponents, intersection multiplicities and equisingularity types
//!   ([`estype`]),
//! * Milnor and Tjurina numbers via exact jet-saturation linear algebra
//!   ([`localalg`]),
//! * finite-determinacy bounds, tangent images of the right, contact and
//!   matrix group actions ([`determinacy`]),
//! * recognition of ADE singularities and the right/contact simplicity
//!   tests ([`classify`]),
//! * one-parameter families of parametrizations, elimination to the
//!   equation, and equisingularity sampling ([`deform`]).
//!
//! All arithmetic is exact; precision-limited answers are reported as such
//! rather than silently truncated. See the `examples/` directory for one
//! runnable walk-through per capability, and [`cli`] for the request
//! grammar used by the `algebroid` binary.

pub mod classify;
pub mod cli;
pub mod coeff;
pub mod deform;
pub mod determinacy;
mod error;
pub mod estype;
pub mod hncurve;
pub(crate) mod linalg;
pub mod localalg;
pub mod series;

pub use coeff::{FieldCtx, FieldElem, FieldEmbedding, FieldKind};
pub use error::{Error, Result};
pub use estype::EsType;
pub use hncurve::{HNExpansion, Parametrization};
pub use localalg::{LocalIdeal, LocalSubmodule, QuotientDim};
pub use series::{JetSpace, Prec, Series, SeriesOrd};
