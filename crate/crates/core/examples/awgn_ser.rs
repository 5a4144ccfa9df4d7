//! Symbol error rate of the three decoders over an AWGN channel.

use schf::channel::{simulate, DecoderKind, SimConfig};
use schf::CodeSpec;

fn main() -> schf::Result<()> {
    let spec = CodeSpec::standard(4, 0.5)?;
    let snr: Vec<f64> = (0..=8).map(|i| 8.0 + 2.0 * i as f64).collect();
    println!("C(152, 4, 0.5), 10000 trials per point");
    println!("{:>6} {:>12} {:>12} {:>12}", "SNR", "suboptimal", "refined", "ml");
    let reports = DecoderKind::ALL
        .iter()
        .map(|&kind| simulate(&SimConfig::new(spec, snr.clone(), 10_000, 2024, kind)))
        .collect::<schf::Result<Vec<_>>>()?;
    for (i, s) in snr.iter().enumerate() {
        println!(
            "{s:>6.1} {:>12.4e} {:>12.4e} {:>12.4e}",
            reports[0].rows[i].ser, reports[1].rows[i].ser, reports[2].rows[i].ser
        );
    }
    Ok(())
}
