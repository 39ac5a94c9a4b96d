//! Block decomposition of o(m, q) over R, C and H along a split p + (m - p).

use flexcheck::catalog::{splitso, AmbientField};
use flexcheck::config::Config;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> flexcheck::error::Result<()> {
    let cfg = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for (m, q, field, p) in [
        (4, 1, AmbientField::Real, 2),
        (3, 1, AmbientField::Complex, 1),
        (2, 1, AmbientField::Quaternion, 1),
    ] {
        let split = splitso(m, q, field, p, &cfg)?;
        let (a, b, h) = split.dims();
        let (x, y) = (split.random_hom(&mut rng), split.random_hom(&mut rng));
        println!(
            "{:<10} p = {p}: blocks {a} + {b} + {h}, closed form residual {:.1e}",
            split.model.name(),
            split.bracket_residual(&x, &y)?
        );
    }
    Ok(())
}
