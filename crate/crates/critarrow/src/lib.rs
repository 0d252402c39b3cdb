//! Exact lattice-polyhedral analysis of simplicial toric singularities.
//!
//! Given a simplicial cone `sigma` over the standard lattice and a nonzero
//! lattice element `w` of it, this crate decides the dimension of the minimal
//! cone containing `w` in the subdivision fan of the normalized limit
//! F-blowup of the associated toric variety: equivalently, the codimension
//! of the center of the divisor `E_w` on the (normalization of the) G-Hilbert
//! scheme. The decision procedure enumerates the vectors of bounded-length
//! critical arrows exactly, with no floating point anywhere.
//!
//! The crate also evaluates the sufficiency criteria for such vectors to
//! exist (level-1 lattice points, the per-ray witness polytope, the volume
//! inequality for abelian quotients), classifies three-dimensional cyclic
//! quotients, and drives exhaustive scans over cone families.
//!
//! ```
//! use critarrow::{analyze, Limits, SimplicialCone, Vector};
//!
//! let cone = SimplicialCone::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]])?;
//! let report = analyze(&cone, &Vector::from_ints(&[1, 1, 1]), &Limits::default())?;
//! assert_eq!(report.dim_tau, 1);
//! assert_eq!(report.center_dim, 2);
//! # Ok::<(), critarrow::Error>(())
//! ```

pub mod cone;
pub mod crit;
pub mod error;
pub mod exact;
mod kernel;
pub mod limits;
pub mod parse;
pub mod quotient;
pub mod report;
pub mod scan;

pub use cone::{HilbertBasis, LevelOnePoints, MinimalFace, SimplicialCone, Singularity};
pub use crit::{
    analyze, delta_cone, diameter_bound, polytope_condition, validate_arrow, volume_criterion,
    AnalysisReport, ArrowRecord, CritProfile, DeltaCone, LevelOneStatus, PolytopeOutcome,
    VolumeReport,
};
pub use error::{Error, Result};
pub use exact::{lattice_basis_from_generators, span_dims, Int, Matrix, Rat, Vector};
pub use limits::Limits;
pub use quotient::{
    analyze_quotient, build_quotient, classify_cyclic_3d, terminal_hilbert_basis, CanonicalCase,
    CyclicGenerator, QuotientAnalysis, QuotientDatum,
};
pub use report::{analysis_text, quotient_text, QuotientReport};
pub use scan::{run_scan, ScanRecord, ScanSpec, ScanSummary};
