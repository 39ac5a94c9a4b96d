//! Expected centralizers and verdicts for every catalog case.

use flexcheck::catalog;

fn main() {
    println!("{:<14} {:<22} {:>6} {:>6}  verdict", "case", "centralizer", "dim", "center");
    for case in catalog::cases() {
        let e = catalog::expected_table(&case);
        let tag = if e.computed { "" } else { " (not computed)" };
        println!(
            "{:<14} {:<22} {:>6} {:>6}  {}{tag}",
            case.name, e.centralizer, e.centralizer_dim, e.center_dim, e.verdict
        );
    }
}
