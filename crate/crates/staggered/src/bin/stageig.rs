use clap::Parser;
use staggered_walk::cli::{run, RunConfig};

fn main() {
    let cfg = RunConfig::parse();
    std::process::exit(run(cfg));
}
