//! Restricted root decomposition of su(2,1) under the center of the
//! centralizer of a complex-line Fuchsian representation.

use flexcheck::catalog;
use flexcheck::config::Config;
use flexcheck::lie::{center_of, centralizer, Generator};
use flexcheck::roots::decompose;

fn main() -> flexcheck::error::Result<()> {
    let cfg = Config::default();
    let case = catalog::case_by_name("su21-cline")?;
    let model = case.model(&cfg)?;
    let rep = catalog::representation(&case, 2, &cfg)?;
    let gens: Vec<Generator> = rep.images().iter().cloned().map(Generator::Group).collect();
    let z = centralizer(&model, &gens)?;
    let c = center_of(&z)?;
    let decomp = decompose(&model, &c, &cfg)?;
    println!("centralizer dim {}, torus dim {}, zero space dim {}", z.dim(), c.dim(), decomp.zero_space().ncols());
    for d in decomp.roots() {
        let values: Vec<String> = d.values.iter().map(|z| format!("{:.4}{:+.4}i", z.re + 0.0, z.im)).collect();
        println!(
            "root [{}] {:?}: real dim {}, orbit size {}, root vector residual {:.1e}",
            values.join(", "),
            d.kind,
            d.real_dim(),
            d.members.len(),
            decomp.root_vector_residual(d)
        );
    }
    println!("orthogonality residual {:.1e}", decomp.orthogonality_residual());
    Ok(())
}
