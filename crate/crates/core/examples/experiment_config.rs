//! Run an experiment from key = value text and print the records CSV.

use treedepth::experiments::{check_records, run_experiment, write_records, ExperimentConfig};

const CONFIG: &str = "\
# supercritical sparse graphs
regime = sparse_super
c = 2
n = 10, 14, 18
trials = 4
seed = 7
";

fn main() {
    let cfg = ExperimentConfig::parse(CONFIG).unwrap();
    let records = run_experiment(&cfg).unwrap();
    write_records(&mut std::io::stdout(), &records, cfg.timing).unwrap();
    let violations = check_records(&records);
    eprintln!("{} records, {} violations", records.len(), violations.len());
}
