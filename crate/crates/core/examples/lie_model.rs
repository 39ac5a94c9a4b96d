//! Build classical real forms and inspect their Killing forms.

use flexcheck::algebra::linalg;
use flexcheck::config::Config;
use flexcheck::lie::{build_classical, Family};

fn main() -> flexcheck::error::Result<()> {
    let cfg = Config::default();
    let families = [
        Family::Sl { n: 2 },
        Family::So { p: 4, q: 1 },
        Family::Su { p: 2, q: 1 },
        Family::Sp { p: 2, q: 1 },
        Family::SpReal { n: 2 },
    ];
    for family in families {
        let model = build_classical(&family, &cfg)?;
        let ev = linalg::symmetric_eigenvalues(model.killing_matrix());
        let pos = ev.iter().filter(|e| **e > 0.0).count();
        let neg = ev.iter().filter(|e| **e < 0.0).count();
        println!(
            "{:<10} ambient {:>2}x{:<2} dim {:>2}  Killing signature ({pos}, {neg})",
            model.name(),
            model.ambient(),
            model.ambient(),
            model.dim()
        );
    }
    Ok(())
}
