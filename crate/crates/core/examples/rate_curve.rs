//! Rate per dimension as the minimum distance shrinks, as plot-ready CSV.

use schf::density::binary_rate;
use schf::{cardinality, CodeSpec};

fn main() -> schf::Result<()> {
    println!("dim,d,M,R");
    for dim in [4, 8, 16, 32] {
        for i in 0..=20 {
            let d = 0.1 + 0.04 * i as f64;
            let m = cardinality(&CodeSpec::modified(dim, d)?)?;
            println!("{dim},{d:.2},{m},{:.6}", binary_rate(&m, dim as u32));
        }
    }
    Ok(())
}
