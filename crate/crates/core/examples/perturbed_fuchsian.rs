//! Random deformations of a Fuchsian representation keep the Milnor-Wood
//! bound and the signature class of the standard module.

use flexcheck::config::Config;
use flexcheck::lie::{build_classical, Family};
use flexcheck::surface::perturbed_fuchsian;
use flexcheck::cli::standard_toledo_report;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> flexcheck::error::Result<()> {
    let cfg = Config::default();
    let model = build_classical(&Family::Sl { n: 2 }, &cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for eps in [0.0, 0.01, 0.05] {
        let rep = perturbed_fuchsian(2, eps, &mut rng, &cfg.tol)?;
        let report = standard_toledo_report(&model, &rep, &cfg)?;
        for e in &report.entries {
            println!(
                "eps {eps:<5} relator {:.1e} signature {:?} T {:?} slack {:.3}",
                rep.relator_residual(),
                e.summary.signature,
                e.summary.toledo,
                e.summary.milnor_wood_slack
            );
        }
    }
    Ok(())
}
