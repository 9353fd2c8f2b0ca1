//! Associated primes of `Ext^i(M, N/I^n N)` over the `(i, n)` grid, their
//! eventual periodicity, socle series and complexity.

pub mod primes;
pub mod scan;
pub mod series;

pub use primes::{
    annihilator, associated_primes, colon_submodule, is_associated_prime, monomial_prime_candidates,
    PrimeCertificate, PrimeIdeal,
};
pub use scan::{
    ass_scan, cx_stability_scan, detect_stabilization, AssScanReport, Cell, CxEntry, CxScan, ScanContext,
    Stabilization,
};
pub use series::{cx_from_series, fit_bivariate, socle_series_check, CxFit, FitStatus, SeriesFit, SocleSeriesCheck, TailPolynomial};
