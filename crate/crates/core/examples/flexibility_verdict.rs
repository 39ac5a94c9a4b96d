//! Full verdict pipeline on a catalog case. Pass a case name to pick one.

use flexcheck::catalog;
use flexcheck::config::Config;
use flexcheck::flex::verdict;

fn main() -> flexcheck::error::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "su21-cline".into());
    let cfg = Config::default();
    let case = catalog::case_by_name(&name)?;
    let model = case.model(&cfg)?;
    let rep = catalog::representation(&case, 2, &cfg)?;
    let report = verdict(&model, &rep, &cfg)?;
    println!("{} in {} (dim {}), genus {}", case.name, report.ambient, report.dim_g, report.genus);
    println!("centralizer dim {}, center dim {}, reductive {}", report.centralizer_dim, report.center_dim, report.reductive);
    for r in &report.roots {
        println!("  {:?} dim {} T {:?} definite {}", r.kind, r.root_space_dim, r.toledo, r.definite);
    }
    println!("P {:?}", report.p);
    println!("N {:?}", report.n);
    println!("verdict: {}", report.verdict);
    for note in &report.notes {
        println!("note: {note}");
    }
    Ok(())
}
