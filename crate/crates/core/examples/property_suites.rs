//! Runs the randomized property suites at reduced size.

use grodiag::error::Result;
use grodiag::suites::{run_all, Scale};

pub fn run() -> Result<()> {
    let reports = run_all(1, Scale::quick());
    for r in &reports {
        println!("{r}");
    }
    assert!(reports.iter().all(|r| r.passed()));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
