//! Signatures and Toledo invariants of root representations along the
//! complex-line family su(m,1).

use flexcheck::catalog;
use flexcheck::config::Config;
use flexcheck::lie::{center_of, centralizer, Generator};
use flexcheck::roots::decompose;
use flexcheck::toledo::oriented_root_form;

fn main() -> flexcheck::error::Result<()> {
    let cfg = Config::default();
    for name in ["su21-cline", "su31-cline", "su41-cline", "so41-rplane"] {
        let case = catalog::case_by_name(name)?;
        let model = case.model(&cfg)?;
        let rep = catalog::representation(&case, 2, &cfg)?;
        let gens: Vec<Generator> = rep.images().iter().cloned().map(Generator::Group).collect();
        let c = center_of(&centralizer(&model, &gens)?)?;
        let decomp = decompose(&model, &c, &cfg)?;
        for d in decomp.roots() {
            let r = oriented_root_form(&rep, &decomp, &d.values, &cfg)?;
            println!(
                "{name:<12} {:?} root dim {:>2} h1 {:>2} signature {:?} T {:?} slack {:.3}",
                r.kind,
                r.root_space_dim,
                r.dim_h1,
                r.signature(),
                r.toledo(),
                r.milnor_wood_slack()
            );
        }
    }
    Ok(())
}
