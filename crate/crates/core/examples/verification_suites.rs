//! Seeded verification suites and their reports.

use qhomalg::generate::Profile;
use qhomalg::suites::{run_suite, Suite, SuiteConfig};

fn main() {
    let config = SuiteConfig::new(42, Profile::Small);
    for suite in [Suite::QCombinatorics, Suite::Simplicial, Suite::Derham] {
        let report = run_suite(suite, &config);
        println!("{report}");
    }
    // restrict to one order and a fixed number of instances
    let config = SuiteConfig { order: Some(2), instances: Some(3), ..config };
    let report = run_suite(Suite::Gauge, &config);
    println!("{}", report.to_json());
}
