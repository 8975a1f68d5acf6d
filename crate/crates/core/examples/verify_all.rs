// Every verification suite with a shared seed, reduced trial counts.

use hyperlab::{run_all, Suite, SuiteConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::var("HYPERLAB_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(7);
    let cfg = SuiteConfig::new(Suite::MetricAxioms).with_seed(seed).with_trials(50);
    let all = run_all(&cfg)?;
    for report in &all.reports {
        println!("{}", report.summary());
    }
    println!("aggregate: {}", if all.pass { "PASS" } else { "FAIL" });
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
