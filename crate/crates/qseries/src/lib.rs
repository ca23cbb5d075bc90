//! Truncated formal power series over exact and modular coefficient rings,
//! plus the q-series layer built on top of them: Euler products, theta
//! functions, eta quotients, arithmetic-progression dissections, counting
//! oracles and a congruence verifier for overpartition families.
//!
//! Key entry points:
//!
//! * [`series::Series`] and [`series::make_series`] — the core arithmetic.
//! * [`qseries`] — `f_k`, `phi`, `psi`, general theta series, eta quotients
//!   and the generating functions of the counting families.
//! * [`dissection`] — progression extraction and the dissection identity
//!   catalog.
//! * [`oracle`] — independent enumeration / dynamic-programming counters used
//!   to certify the generating functions.
//! * [`verifier`] — congruence claims, suites and divisibility scans, with
//!   machine-readable reports in [`report`].

pub mod dissection;
pub mod oracle;
pub mod qseries;
pub mod report;
pub mod series;
pub mod verifier;
pub mod wide;

pub use dissection::{extract_ap, identity_catalog, verify_identity, IdentityId};
pub use oracle::{cross_check, dp_count, enum_count, CountMethod, OracleResult};
pub use qseries::{family_series, EtaQuotient, FamilySpec};
pub use report::{Counterexample, Status, VerificationReport};
pub use series::{make_series, CoeffRing, Series, SeriesError, MAX_MODULUS};
pub use verifier::{
    fixture_false_claim, run_claims, run_suite, scan_divisibility, Claim, ClaimKind, ScanResult,
    SeriesExpr, Suite,
};
pub use wide::I256;
