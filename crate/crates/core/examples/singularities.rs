//! Singularity analysis of the hyperplane section `x5 = 0` of every bundled example.

use std::time::Instant;

use fourfold::fixtures::FIXTURES;
use fourfold::singularity::full_report;
use rand::SeedableRng;

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for fx in &FIXTURES {
        let cubic = fx.fourfold();
        let start = Instant::now();
        let report = full_report(&cubic.section(), false, &mut rng).expect("isolated singularities");
        let labels: Vec<String> = report.labels().iter().map(|l| l.to_string()).collect();
        println!(
            "{:>10}: tau = {:>2}, points = {}, labels = {:?}, residual = {:?}  ({:.2?})",
            fx.tag.cli_name(),
            report.global_tau,
            report.geometric_points,
            labels,
            report.residual,
            start.elapsed()
        );
        for p in &report.points {
            let basis: Vec<String> = p.t1_basis.iter().map(|m| m.to_string()).collect();
            println!("            [{}] {} basis {{{}}}", p.point.join(":"), p.classification.label, basis.join(", "));
        }
    }
}
