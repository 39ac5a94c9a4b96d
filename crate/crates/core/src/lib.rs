//! Numerical flexibility and rigidity checks for surface group
//! representations into classical real Lie groups.
//!
//! Each capability has a runnable example:
//!
//! ```text
//! cargo run --example lie_model            # real forms and Killing forms
//! cargo run --example root_decomposition   # roots of a torus, orbits, root vectors
//! cargo run --example surface_cohomology   # H^0, H^1, H^2 of surface group modules
//! cargo run --example toledo_invariants    # cup-product signatures and Toledo numbers
//! cargo run --example balanced_lp          # the balanced condition with certificates
//! cargo run --example flexibility_verdict  # full pipeline on a catalog case
//! cargo run --example catalog_table        # expected centralizers and verdicts
//! cargo run --example splitso_blocks       # block decomposition of o(m, q)
//! cargo run --example conjugation_limit    # limits of e^{-tu} g e^{tu}
//! cargo run --example perturbed_fuchsian   # deformations and the Milnor-Wood bound
//! cargo run --example cli_json             # the command-line front end in process
//! ```

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod config;
pub mod error;
pub mod flex;
pub mod lie;
pub mod roots;
pub mod surface;
pub mod toledo;
