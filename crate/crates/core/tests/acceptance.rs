//! The ten acceptance criteria. Each prints one PASS/FAIL line; the test fails if
//! any criterion does. Run with `cargo test --test acceptance`.

use std::f64::consts::PI;
use std::io::Write;
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;

use schf::channel::{simulate_with, timing_probe_with, DecoderKind, SimConfig, TimingConfig};
use schf::decoder::{decode, DecodeConfig};
use schf::density::{asymptotic_cardinality, asymptotic_center_density, cap_area, sphere_surface};
use schf::{build_tables, cardinality, CodeSpec, CodeTables};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn card(dim: usize, d: f64) -> BigUint {
    cardinality(&CodeSpec::standard(dim, d).unwrap()).unwrap()
}

fn to_f64(m: &BigUint) -> f64 {
    m.to_string().parse().unwrap()
}

fn exact_cardinalities() -> Outcome {
    let mut slowest = 0.0f64;
    for (dim, d, expected) in [(4, 1.0, 16u32), (4, 0.7, 52), (4, 0.5, 152), (8, 0.7, 360), (8, 0.5, 2608)] {
        let start = Instant::now();
        let m = card(dim, d);
        let secs = start.elapsed().as_secs_f64();
        slowest = slowest.max(secs);
        if m != BigUint::from(expected) {
            return Err(format!("card({dim},{d}) = {m}, expected {expected}"));
        }
        if secs >= 1.0 {
            return Err(format!("card({dim},{d}) took {secs:.2} s"));
        }
    }
    Ok(format!("16 52 152 360 2608, slowest {:.1} ms", slowest * 1e3))
}

fn min_distance(tables: &CodeTables) -> f64 {
    let dim = tables.spec.dim;
    let p = tables.points_flat(50_000).unwrap();
    let m = p.len() / dim;
    (0..m)
        .into_par_iter()
        .map(|i| {
            let a = &p[i * dim..(i + 1) * dim];
            (i + 1..m)
                .map(|j| a.iter().zip(&p[j * dim..(j + 1) * dim]).map(|(x, y)| (x - y) * (x - y)).sum::<f64>())
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min)
        .sqrt()
}

fn minimum_distance_grid() -> Outcome {
    let mut checked = Vec::new();
    let mut skipped = Vec::new();
    for dim in [4usize, 8, 16] {
        let ds: &[f64] = if dim == 4 { &[1.5, 1.0, 0.7, 0.5, 0.3] } else { &[1.5, 1.0, 0.7, 0.5] };
        for &d in ds {
            for spec in [CodeSpec::standard(dim, d).unwrap(), CodeSpec::modified(dim, d).unwrap()] {
                let tables = build_tables(&spec).unwrap();
                if tables.len() > 50_000 {
                    skipped.push(format!("{:?}({dim},{d})={}", spec.variant, tables.len()));
                    continue;
                }
                if tables.len() < 2 {
                    continue;
                }
                let got = min_distance(&tables);
                if got < d - 1e-9 {
                    return Err(format!("{:?} C({}, {dim}, {d}) has min distance {got}", spec.variant, tables.len()));
                }
                checked.push(tables.len());
            }
        }
    }
    Ok(format!("{} codes checked, largest M = {}, skipped above cap: {}", checked.len(), checked.iter().max().unwrap(), skipped.join(" ")))
}

fn center_densities() -> Outcome {
    let s3 = 3f64.sqrt();
    let expected = [1.0 / (4.0 * s3), 1.0 / 96.0, 1.0 / 18432.0, 1.0 / 679477248.0];
    let mut shown = Vec::new();
    for (k, want) in (2..=5).zip(expected) {
        let c = asymptotic_center_density(k).unwrap();
        let rel = (c.value() - want).abs() / want;
        if rel > 1e-15 {
            return Err(format!("k = {k}: {} vs {want}, relative error {rel:e}", c.value()));
        }
        shown.push(c.to_string());
    }
    Ok(shown.join(", "))
}

fn density_convergence() -> Outcome {
    let start = Instant::now();
    let m = card(4, 1e-3);
    let secs = start.elapsed().as_secs_f64();
    let ratio = to_f64(&m) * 5e-4f64.powi(3) / (2.0 * PI * PI) * (4.0 * 3f64.sqrt());
    if (ratio - 1.0).abs() > 0.02 {
        return Err(format!("M = {m}, ratio to 1/(4√3) is {ratio}"));
    }
    if secs >= 10.0 {
        return Err(format!("took {secs:.1} s"));
    }
    Ok(format!("M = {m}, ratio {ratio:.5}, {secs:.2} s"))
}

fn upper_bound_sanity() -> Outcome {
    let m = to_f64(&card(8, 0.01));
    let bound = asymptotic_cardinality(3, 0.01).unwrap();
    let published = 4.28e15;
    if m > 1.02 * bound {
        return Err(format!("M = {m:e} above 1.02 x asymptotic {bound:e}"));
    }
    if m < 0.8 * published {
        return Err(format!("M = {m:e} below 80% of {published:e}"));
    }
    Ok(format!("M = {m:.4e}, asymptotic {bound:.4e}, {:.1}% of published {published:e}", 100.0 * m / published))
}

fn round_trip() -> Outcome {
    let start = Instant::now();
    for (dim, d) in [(8, 0.5), (4, 0.5)] {
        let tables = build_tables(&CodeSpec::standard(dim, d).unwrap()).unwrap();
        for cfg in [DecodeConfig::default(), DecodeConfig::refined()] {
            let bad = (0..tables.len())
                .into_par_iter()
                .filter(|&a| decode(&tables.encode(a).unwrap().coords, &tables, &cfg).unwrap().index != a)
                .count();
            if bad > 0 {
                return Err(format!("{bad} indices of C({}, {dim}, {d}) fail with {cfg:?}", tables.len()));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 30.0 {
        return Err(format!("took {secs:.1} s"));
    }
    Ok(format!("2608 + 152 indices, both settings, {secs:.2} s"))
}

fn decoder_quality() -> Outcome {
    let spec = CodeSpec::standard(4, 0.5).unwrap();
    let tables = build_tables(&spec).unwrap();
    let snr: Vec<f64> = (0..=24).map(|i| 10.0 + 0.5 * i as f64).collect();
    let run = |kind| simulate_with(&SimConfig::new(spec, snr.clone(), 10_000, 20_240_601, kind), &tables).unwrap();
    let (ml, refined, plain) = (run(DecoderKind::Ml), run(DecoderKind::SuboptimalRefined), run(DecoderKind::Suboptimal));
    let mut grid = Vec::new();
    let mut worst = 0.0f64;
    for (i, &db) in snr.iter().enumerate() {
        let m = ml.rows[i].ser;
        if !(1e-3..=1e-1).contains(&m) {
            continue;
        }
        grid.push(db);
        if ml.rows[i].ml_violations > 0 {
            return Err(format!("ML erred inside the packing radius at {db} dB"));
        }
        let r = refined.rows[i].ser;
        let p = plain.rows[i].ser;
        worst = worst.max(r / m);
        if r > 1.5 * m {
            return Err(format!("{db} dB: refined {r} above 1.5 x ML {m}"));
        }
        if p < m {
            return Err(format!("{db} dB: unrefined {p} below ML {m}"));
        }
    }
    if grid.is_empty() {
        return Err("no SNR point with ML SER in [1e-3, 1e-1]".into());
    }
    Ok(format!(
        "{} SNR points in {}..{} dB, worst refined/ML ratio {worst:.3}",
        grid.len(),
        grid[0],
        grid[grid.len() - 1]
    ))
}

fn cap_areas() -> Outcome {
    let mut worst = 0.0f64;
    for i in 1..=20 {
        let d = 0.1 * i as f64;
        let want = 2.0 * PI * (1.0 - (d / 2.0).asin().cos());
        let got = cap_area(3, d).unwrap();
        worst = worst.max((got - want).abs());
    }
    for n in 2..=16 {
        let err = (cap_area(n, 2.0).unwrap() - sphere_surface(n) / 2.0).abs();
        worst = worst.max(err);
    }
    if worst > 1e-9 {
        return Err(format!("largest error {worst:e}"));
    }
    Ok(format!("largest error {worst:.1e}"))
}

fn modified_targets() -> Outcome {
    let m1 = cardinality(&CodeSpec::modified(4, 1.0).unwrap()).unwrap();
    let m05 = cardinality(&CodeSpec::modified(4, 0.5).unwrap()).unwrap();
    if m1 < BigUint::from(24u8) {
        return Err(format!("modified (4,1) = {m1}, below 24"));
    }
    if m05 < BigUint::from(152u8) {
        return Err(format!("modified (4,0.5) = {m05}, below 152"));
    }
    Ok(format!("modified (4,1) = {m1}, modified (4,0.5) = {m05} (published 168)"))
}

fn timing_ordering() -> Outcome {
    let spec = CodeSpec::standard(8, 0.7).unwrap();
    let tables = build_tables(&spec).unwrap();
    let cfg = TimingConfig { batches: 40, ..TimingConfig::new(spec, 10_000) };
    // Batch-mean minimum: each batch is a mean over 250 decodes, and the fastest
    // batch is the one least disturbed by the scheduler.
    let mut last = String::new();
    for _ in 0..3 {
        let r = timing_probe_with(&cfg, &tables).unwrap();
        let t = |k| r.get(k).unwrap();
        let (s, f, m) = (t(DecoderKind::Suboptimal), t(DecoderKind::SuboptimalRefined), t(DecoderKind::Ml));
        last = format!(
            "per word: suboptimal {:.0} ns, refined {:.0} ns, ml {:.0} ns (means {:.0}, {:.0}, {:.0})",
            s.min_ns, f.min_ns, m.min_ns, s.mean_ns, f.mean_ns, m.mean_ns
        );
        if s.min_ns <= f.min_ns && f.min_ns <= m.min_ns {
            return Ok(last);
        }
    }
    Err(last)
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("exact cardinalities", exact_cardinalities),
        ("minimum distance", minimum_distance_grid),
        ("asymptotic center densities", center_densities),
        ("density convergence", density_convergence),
        ("upper bound sanity", upper_bound_sanity),
        ("codec round trip", round_trip),
        ("decoder quality", decoder_quality),
        ("cap areas", cap_areas),
        ("modified variant", modified_targets),
        ("timing ordering", timing_ordering),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let line = match check() {
            Ok(detail) => format!("criterion {:2} PASS {name}: {detail}\n", i + 1),
            Err(detail) => {
                failed.push(i + 1);
                format!("criterion {:2} FAIL {name}: {detail}\n", i + 1)
            }
        };
        // Straight to the stream so the lines survive output capture.
        std::io::stderr().write_all(line.as_bytes()).unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
