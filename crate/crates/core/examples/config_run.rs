//! Runs a command from a flat config file and round-trips the JSON report.
//!
//! `cargo run --release --example config_run -- path/to/run.conf`

use cyquot::report::{cmd_quotients, Format, Report, RunConfig};

const SAMPLE: &str = "\
family = d4
subgroup = (0, 1/2, 0); (τ/2, τ/2, τ′/2)
format = json
";

fn main() {
    let text = match std::env::args().nth(1) {
        Some(p) => std::fs::read_to_string(p).expect("config file"),
        None => SAMPLE.to_string(),
    };
    let cfg = RunConfig::parse(&text).unwrap_or_else(|e| panic!("{e}"));
    let report = cmd_quotients(&cfg).unwrap_or_else(|e| panic!("{e}"));
    let json = report.render(Format::Json);
    print!("{json}");
    let back = Report::from_json(&json).expect("parse back");
    assert_eq!(back, report);
    print!("{}", back.render(Format::Markdown));
}
