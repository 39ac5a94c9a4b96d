//! Group cohomology dimensions of surface group modules.

use flexcheck::config::Config;
use flexcheck::lie::{build_classical, Family};
use flexcheck::surface::{fuchsian_sl2, CohomologyWorkspace, Module};

fn main() -> flexcheck::error::Result<()> {
    let cfg = Config::default();
    let model = build_classical(&Family::Sl { n: 2 }, &cfg)?;
    for genus in 2..=4 {
        let rep = fuchsian_sl2(genus, &cfg.tol)?;
        let modules = [
            ("trivial", Module::trivial(1, 2 * genus as usize)),
            ("standard", Module::standard(&rep)),
            ("adjoint", Module::adjoint(&model, &rep)?),
        ];
        for (name, module) in modules {
            let ws = CohomologyWorkspace::new(rep.presentation(), module, &cfg.tol)?;
            println!(
                "genus {genus} {name:<8} h0 {} h1 {:>2} h2 {}  z1 {:>2} b1 {}  Euler defect {}",
                ws.dim_h0(),
                ws.dim_h1(),
                ws.dim_h2(),
                ws.dim_z1(),
                ws.dim_b1(),
                ws.euler_defect()
            );
        }
    }
    Ok(())
}
