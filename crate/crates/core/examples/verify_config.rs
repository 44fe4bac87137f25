//! Parses a configuration, runs selected suites and prints the TSV report.

use curvhomo::config::parse_config;
use curvhomo::report::Format;
use curvhomo::suites::{run_selected, SuiteId};

const CONFIG: &str = "\
s = 2
f1 = u^3
f2 = 2u^3 - u
seed = 42
samples = 20
point.1 = u:1,1 t:0,2 v:5,5
";

fn main() {
    let cfg = match parse_config(CONFIG) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("config error: {e}");
            std::process::exit(2);
        }
    };
    let report = run_selected(&cfg, &[SuiteId::Model, SuiteId::Curvature, SuiteId::Invariants]);
    print!("{}", report.emit(Format::Tsv));
    let summary = report.summary();
    eprintln!("{} checks, {} pass, {} fail", summary.total, summary.pass, summary.fail);
}
