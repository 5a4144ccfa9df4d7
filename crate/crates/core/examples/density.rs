//! Density of finite codes against the asymptotic center density.

use schf::density::{asymptotic_cardinality, asymptotic_center_density, DensityReport};
use schf::{cardinality, CodeSpec};

fn main() -> schf::Result<()> {
    for k in 2..=5 {
        let c = asymptotic_center_density(k)?;
        println!("dim {:2}: center density {c} = {:.6e}", 1 << k, c.value());
    }
    println!();
    for d in [0.5, 0.1, 0.01, 0.001] {
        let spec = CodeSpec::standard(4, d)?;
        let m = cardinality(&spec)?;
        let report = DensityReport::new(&m, 4, d)?;
        println!(
            "d = {d:<6} M = {:>12}  asymptotic {:.4e}  density {:.4}  center {:.6}",
            report.cardinality,
            asymptotic_cardinality(2, d)?,
            report.density,
            report.center_density
        );
    }
    Ok(())
}
