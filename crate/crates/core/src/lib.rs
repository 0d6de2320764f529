//! Classification machinery for planar (perfect nonlinear) power maps
//! `x -> x^m` over odd-characteristic finite fields.

pub mod bipoly;
pub mod bounds;
pub mod curve;
pub mod factor;
pub mod gf;
pub mod pntest;

pub use bipoly::BiPoly;
pub use bounds::{
    bound_report, classify_m, normalize_m, profile, BoundReport, Classification, PAdicProfile,
    Verdict, Via,
};
pub use curve::{build_family, verify_table1, CurveFamily, Table1Report};
pub use factor::{
    bounded_factor_search, sigma_orbit_analysis, weil_band_check, BandReport, FactorizationResult,
};
pub use gf::{FieldCtx, FieldElement};
pub use pntest::{is_pn, known_family, scan, weil_threshold, Mode, PnResult, ScanReport};
