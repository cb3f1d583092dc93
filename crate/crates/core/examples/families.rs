//! One random member of each family, and the dimension audit.

use fourfold::family::{audit_dimensions, sample, schema, FamilyTag};

fn main() {
    let seed: u64 = std::env::args().nth(1).map_or(7, |s| s.parse().expect("seed"));
    for tag in FamilyTag::ALL {
        let c = sample(tag, seed, 100);
        println!("{tag} (expects {}):", tag.expected_labels().join("+"));
        println!("  {}", c.form);
        let s = schema(tag);
        println!("  {} fixed terms, {} free slots", s.fixed_terms.len(), s.free_slots.len());
    }
    println!();
    println!("{:>10} {:>4} {:>4} {:>6}", "family", "p_K", "d_K", "dim D");
    for tag in FamilyTag::ALL {
        let a = audit_dimensions(tag, 5, seed, 100);
        println!("{:>10} {:>4} {:>4} {:>6}", tag.cli_name(), a.p_k, a.d_k, a.dim_d_k);
    }
}
