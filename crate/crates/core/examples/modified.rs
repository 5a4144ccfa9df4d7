//! The standard and modified constructions side by side.

use schf::code::adhoc_lookup;
use schf::reference::published_schf;
use schf::{cardinality, CodeSpec};

fn main() -> schf::Result<()> {
    println!("{:>4} {:>6} {:>10} {:>10} {:>10}", "dim", "d", "standard", "modified", "published");
    for (dim, d) in [(4, 1.0), (4, 0.5), (4, 0.4), (4, 0.3), (4, 0.2), (8, 0.5), (8, 0.3), (16, 0.5)] {
        let standard = cardinality(&CodeSpec::standard(dim, d)?)?;
        let modified = cardinality(&CodeSpec::modified(dim, d)?)?;
        let published = published_schf(dim as u32, d).map_or("-".to_string(), |m| m.to_string());
        println!("{dim:>4} {d:>6} {standard:>10} {modified:>10} {published:>10}");
    }
    for d in [1.0, 1.2, 1.5] {
        println!("explicit code at d = {d}: {:?}", adhoc_lookup(4, d)?);
    }
    Ok(())
}
