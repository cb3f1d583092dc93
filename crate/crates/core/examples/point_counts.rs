//! Point counts of a bundled example over `F_{2^m}` through its conic bundle.
//!
//! `cargo run --release --example point_counts -- d6 9`

use std::time::Instant;

use fourfold::family::FamilyTag;
use fourfold::fixtures::fixture;
use fourfold::zeta::charpoly::trace_from_count;
use fourfold::zeta::line::lines_on;
use fourfold::zeta::{count_points, count_points_brute, find_line, good_reduction, reduce_mod_2};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let tag: FamilyTag = args.first().map_or("t333", |s| s).parse().expect("family tag");
    let mmax: u32 = args.get(1).map_or(8, |s| s.parse().expect("mmax"));

    let mut r = reduce_mod_2(&fixture(tag).fourfold()).expect("odd denominators");
    println!("reduction: {}", r.form());
    if !good_reduction(&mut r) {
        println!("singular mod 2, nothing to count");
        return;
    }
    let w = find_line(&r).expect("a line over F_2");
    println!("{} lines over F_2, using {:?}", lines_on(&r).len(), w.original_line());

    println!("{:>3} {:>22} {:>10} {:>9}", "m", "N", "trace", "seconds");
    for m in 1..=mmax {
        let start = Instant::now();
        let rec = count_points(&r, &w, m, 0).expect("count");
        let secs = start.elapsed().as_secs_f64();
        if m <= 3 {
            assert_eq!(rec.n, count_points_brute(&r, m).expect("brute").n);
        }
        let t = trace_from_count(m, rec.n).expect("trace");
        println!("{m:>3} {:>22} {:>10} {secs:>9.3}", rec.n, t.to_string());
    }
}
