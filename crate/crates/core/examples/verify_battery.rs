//! The invariant battery on a reduced sample.

use treedepth::experiments::{verify_suite, VerifyConfig};

fn main() {
    let cfg = VerifyConfig { graphs: 50, ..VerifyConfig::new(42) };
    let report = verify_suite(&cfg);
    print!("{report}");
    assert!(report.passed());
}
