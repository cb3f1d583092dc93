//! Rank of the global-to-local deformation map for every bundled example,
//! with the modular-direction test at the T333 point.

use fourfold::deformation::{deformation_report, phi_rank_global};
use fourfold::fixtures::FIXTURES;
use fourfold::singularity::full_report;
use rand::SeedableRng;

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for fx in &FIXTURES {
        let cubic = fx.fourfold();
        let report = full_report(&cubic.section(), false, &mut rng).expect("isolated singularities");
        let deformation = match deformation_report(&cubic, &report) {
            Ok(d) => d,
            Err(e) => {
                println!("{:>10}: {e}", fx.tag.cli_name());
                continue;
            }
        };
        let global = phi_rank_global(&cubic, report.hilbert.stable_from + 1, &mut rng);
        println!("{:>10}: rank(phi) = {} (global route {})", fx.tag.cli_name(), deformation.rank, global);
        for p in &deformation.points {
            println!("            [{}] T1 basis {{{}}}", p.point.join(":"), p.tau_basis.join(", "));
        }
        if let Some(m) = &deformation.modular {
            println!("            weights [{}], modular direction in image: {}", m.weights.join(", "), m.in_image);
        }
    }
}
