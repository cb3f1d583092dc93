//! Characteristic polynomials of the bundled examples from counts up to
//! `m = 11`, compared with the bundled polynomials.

use std::time::Instant;

use fourfold::fixtures::FIXTURES;
use fourfold::pipeline::{run_cubic, RunOptions};

fn main() {
    for fx in FIXTURES.iter() {
        let start = Instant::now();
        let d = run_cubic(&fx.fourfold(), 1, &RunOptions::default());
        print!("{:>10} ({:.1?}): ", fx.tag.cli_name(), start.elapsed());
        if let Some(stop) = &d.stopped {
            println!("stopped at {:?}: {}", stop.stage, stop.reason);
            continue;
        }
        let c = d.unique_chi().expect("e_11 is nonzero for these examples");
        let agrees = fx.printed_chi().map(|p| p == c.chi);
        println!("{:?}, witness {:?}, matches bundled polynomial: {:?}", d.verdict.unwrap(), c.irreducibility_witness, agrees);
        println!("            chi = {}", c.chi);
    }
}
