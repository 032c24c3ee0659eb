//! Runs every built-in fixture and prints its checked facts.
use nicety::corpus::{get_fixture, list_fixtures, run_fixture, RunOptions};

fn main() -> nicety::Result<()> {
    let mut failed = 0;
    for name in list_fixtures() {
        let fx = get_fixture(name)?;
        let r = run_fixture(&fx, &RunOptions::default());
        println!("{} {name}: {}", if r.passed() { "PASS" } else { "FAIL" }, fx.description);
        for o in &r.outcomes {
            println!("    {} [{:?}] {}", if o.passed { "ok  " } else { "FAIL" }, o.provenance, o.description);
        }
        failed += usize::from(!r.passed());
    }
    println!("{failed} fixture(s) failed");
    Ok(())
}
