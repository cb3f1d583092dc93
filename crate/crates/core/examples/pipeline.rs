//! Samples a family until a member is certified non-special.
//!
//! `cargo run --release --example pipeline -- e6 0 10`

use std::time::Instant;

use fourfold::family::FamilyTag;
use fourfold::pipeline::{run_pipeline, PipelineError, RunOptions};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let family: FamilyTag = args.first().map_or("e6", |s| s).parse().expect("family tag");
    let seed: u64 = args.get(1).map_or(0, |s| s.parse().expect("seed"));
    let attempts: u32 = args.get(2).map_or(10, |s| s.parse().expect("attempts"));

    let start = Instant::now();
    let opts = RunOptions { record_timings: true, ..RunOptions::default() };
    match run_pipeline(family, seed, attempts, 100, &opts) {
        Ok(out) => {
            for a in &out.attempts {
                println!("seed {:>4}: {:?} {:?}", a.seed, a.verdict, a.stopped.as_ref().map(|s| &s.reason));
            }
            let d = &out.dossier;
            println!("certified seed {} in {:.1?}", d.seed, start.elapsed());
            println!("{}", d.input.form);
            if let Some(c) = d.unique_chi() {
                println!("chi = {}", c.chi);
                println!("witness = {:?}", c.irreducibility_witness);
            }
            for t in &d.timings {
                println!("  {:?}: {:.2}s", t.stage, t.seconds);
            }
        }
        Err(PipelineError::AttemptsExhausted { log }) => {
            for a in &log {
                println!("seed {:>4}: {:?} {:?}", a.seed, a.verdict, a.stopped.as_ref().map(|s| &s.reason));
            }
            println!("nothing certified");
        }
        Err(e) => println!("{e}"),
    }
}
