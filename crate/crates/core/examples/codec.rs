//! Encode an index, perturb the codeword, decode it back.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use schf::decoder::{decode, DecodeConfig};
use schf::{build_tables, CodeSpec};

fn main() -> schf::Result<()> {
    let tables = build_tables(&CodeSpec::standard(8, 0.5)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    for index in [0, 1234, 2607] {
        let word = tables.encode(index)?;
        let y: Vec<f64> = word.coords.iter().map(|x| x + 0.05 * rng.sample::<f64, _>(StandardNormal)).collect();
        let plain = decode(&y, &tables, &DecodeConfig::default())?;
        let refined = decode(&y, &tables, &DecodeConfig::refined())?;
        println!(
            "sent {index:4}  decoded {:4} (residual {:.4})  refined {:4} (residual {:.4})",
            plain.index, plain.residual, refined.index, refined.residual
        );
    }
    Ok(())
}
