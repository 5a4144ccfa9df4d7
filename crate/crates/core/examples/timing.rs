//! Per-word decode time of the three decoders on the codes of the timing comparison.

use schf::channel::{timing_probe, TimingConfig};
use schf::CodeSpec;

fn main() -> schf::Result<()> {
    for (dim, d) in [(4, 0.7), (4, 0.5), (8, 0.7)] {
        let report = timing_probe(&TimingConfig::new(CodeSpec::standard(dim, d)?, 10_000))?;
        print!("C({dim}, {d}):");
        for row in &report.rows {
            print!("  {} {:.3} us", row.decoder, row.mean_ns / 1e3);
        }
        println!();
    }
    Ok(())
}
