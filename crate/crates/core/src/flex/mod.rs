//! Root classification, the balanced test and the flexibility verdict.

pub mod balance;
pub mod lp;
pub mod verdict;

pub use balance::{balanced, certificate_residual, BalanceCertificate, BalanceOutcome, BalanceProblem};
pub use verdict::{
    classify_pn, smooth_point_check, smoothness_of_rep, verdict, virtual_dimension, FlexibilityReport, PnSplit,
    RootSummary, SmoothnessReport, Verdict,
};
