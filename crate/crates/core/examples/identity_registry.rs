//! Runs every registered identity check with its defaults, except the
//! slow three-way ζ~ comparison, which gets a smaller series.

use binconv::checks::{run, CheckParams, REGISTRY};

fn main() {
    let mut failed = 0;
    for id in REGISTRY {
        let mut p = CheckParams::default();
        if id.name == "cor5_1" {
            p.terms = Some(10_000_000);
            p.tol = Some(1e-7);
        }
        match run(id.name, &p) {
            Ok(r) => {
                println!(
                    "{} {:<13} {}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.identity,
                    r.witness.unwrap_or(r.detail)
                );
                failed += usize::from(!r.pass);
            }
            Err(e) => {
                println!("ERR  {:<13} {e}", id.name);
                failed += 1;
            }
        }
    }
    std::process::exit(i32::from(failed > 0));
}
