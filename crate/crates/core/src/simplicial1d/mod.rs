//! Simplicial dynamics on interval complexes, in exact rational arithmetic.
//!
//! In one dimension a subdivision `K*` of `K` is proper exactly when every
//! `K` edge is split: a `K*` edge equal to a whole `K` edge would meet its two
//! disjoint endpoints. Nested carriers of a point are totally ordered here,
//! so roundoff needs no tie-breaking between minimal carriers.

pub mod coding;
pub mod complex;
pub mod examples;
pub mod norm;
pub mod report;
pub mod roundoff;
pub mod system;

pub use coding::{code_h_1d, refine, verify_pushforward, BirkhoffReport, Refinement};
pub use complex::{barycentric, d_k, Barycentric, Carrier, IntervalComplex};
pub use norm::{column_stochastic_norm_bound, NormCheck};
pub use report::tractability_report_pl;
pub use roundoff::{nondegenerate_repair, roundoff, Roundoff};
pub use system::{build_system, pl_eval, theta, SimplicialMap1D, SimplicialSystem1D};
