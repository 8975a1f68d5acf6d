// Truncation maps converge uniformly to the identity on the hyperspace,
// with the geometric bound 1/2^m.

use hyperlab::{run_suite, Suite, SuiteConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SuiteConfig { depth: Some(8), ..SuiteConfig::new(Suite::ZmapConvergence).with_trials(200) };
    let report = run_suite(&cfg)?;
    println!("{:>3}  {:>12}  {:>12}", "m", "max H", "1/2^m");
    for row in &report.profile {
        println!("{:>3}  {:>12.6e}  {:>12.6e}", row.index, row.measured, row.bound);
    }
    println!("{}", report.summary());
    assert!(report.pass);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
