//! Decoding a received vector to the index of a nearby codeword.
//!
//! The foliation decoder reads the leaf angle from the block norms, snaps it to
//! the nearest stored leaf and recurses into both halves; in `R⁴` the torus
//! angles are rounded to the layout grid. With `refine` set, a candidate farther
//! than `d/2` from the received direction triggers a search of `breadth` adjacent
//! leaves on each side, at every level, keeping the candidate with the largest
//! inner product. A candidate within `d/2` is the unique nearest codeword, so the
//! early stop never changes the outcome of the search.

use serde::Serialize;

use crate::code::{build_tables, CodeSpec, CodeTables, Codeword, LeafRow, LeafTable, RowContent, SubRef, TableBody};
use crate::torus4::TorusLayout;
use crate::error::{Error, Result};
use crate::torus4::diagonal_round;

pub use crate::torus4::angles_from_point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DecodeConfig {
    /// Adjacent leaves searched on each side when refining.
    pub breadth: usize,
    pub refine: bool,
}

impl Default for DecodeConfig {
    fn default() -> Self {
        DecodeConfig { breadth: 1, refine: false }
    }
}

impl DecodeConfig {
    pub fn refined() -> Self {
        DecodeConfig { breadth: 1, refine: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    pub index: u128,
    pub codeword: Codeword,
    /// `‖y/‖y‖ - x̂‖`.
    pub residual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Distance between a unit vector and `y/‖y‖`, given their inner product with `y`.
fn residual_from(inner: f64, y_norm: f64) -> f64 {
    (2.0 - 2.0 * inner / y_norm).max(0.0).sqrt()
}

fn check_input(y: &[f64], dim: usize) -> Result<f64> {
    if y.len() != dim {
        return Err(Error::Domain(format!("received vector has length {}, expected {dim}", y.len())));
    }
    if y.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("received vector has non-finite entries".into()));
    }
    let n = norm(y);
    if n == 0.0 {
        return Err(Error::Domain("cannot decode the zero vector".into()));
    }
    Ok(n)
}

/// Decodes `y` against a code given by its tables.
pub fn decode(y: &[f64], tables: &CodeTables, cfg: &DecodeConfig) -> Result<DecodeResult> {
    let y_norm = check_input(y, tables.spec.dim)?;
    let mut point = vec![0.0; y.len()];
    let index = Decoder { tables, cfg }.sub(0, SubRef::Table(0), y, &mut point);
    let residual = residual_from(dot(y, &point), y_norm);
    Ok(DecodeResult { index, codeword: Codeword { index, coords: point }, residual })
}

/// Decodes `y ∈ R⁴` against the standard code at distance `d`.
pub fn decode4(y: &[f64; 4], d: f64, cfg: &DecodeConfig) -> Result<DecodeResult> {
    let tables = build_tables(&CodeSpec::standard(4, d)?)?;
    decode(y, &tables, cfg)
}

struct Decoder<'a> {
    tables: &'a CodeTables,
    cfg: &'a DecodeConfig,
}

impl Decoder<'_> {
    /// Decodes `y` in the subcode `sub` of node `pos`, writing the chosen point.
    fn sub(&self, pos: usize, sub: SubRef, y: &[f64], out: &mut [f64]) -> u128 {
        let SubRef::Table(t) = sub else {
            out.fill(0.0);
            out[0] = 1.0;
            return 0;
        };
        let table = self.tables.table(pos, t);
        let rows = match &table.body {
            TableBody::Adhoc(code) => {
                let a = ml_argmax(code.points(y.len()).iter().map(|p| dot(p, y)));
                code.write_point(a, out);
                return a as u128;
            }
            TableBody::Leaves { rows, .. } => rows,
        };
        let h = y.len() / 2;
        let (na, nb) = (norm(&y[..h]), norm(&y[h..]));
        let r0 = nearest_row(rows, nb.atan2(na));
        // Block phases of a four-dimensional `y`, shared by every candidate row.
        let mut phases = None;
        let mut best = self.row(pos, table, r0, y, &mut phases, out);
        if !self.cfg.refine || self.cfg.breadth == 0 {
            return best;
        }
        let y_norm = na.hypot(nb);
        let mut best_inner = dot(y, out);
        if y_norm == 0.0 || residual_from(best_inner, y_norm) < table.dmin / 2.0 {
            return best;
        }
        let mut stack = [0.0; 16];
        let mut heap = Vec::new();
        let cand = if y.len() <= stack.len() {
            &mut stack[..y.len()]
        } else {
            heap.resize(y.len(), 0.0);
            &mut heap[..]
        };
        let lo = r0.saturating_sub(self.cfg.breadth);
        let hi = (r0 + self.cfg.breadth).min(rows.len() - 1);
        for r in (lo..=hi).filter(|&r| r != r0) {
            // No point of leaf `r` has a larger inner product with `y` than this.
            let (s, c) = rows[r].leaf_radii();
            if na * c + nb * s < best_inner - 1e-12 * y_norm {
                continue;
            }
            let a = self.row(pos, table, r, y, &mut phases, cand);
            let inner = dot(y, cand);
            if inner > best_inner {
                best_inner = inner;
                best = a;
                out.copy_from_slice(cand);
            }
        }
        best
    }

    /// Nearest layout point by rounding; when refining, and the point is at least
    /// `d/2` away, the `breadth` circles on each side are rounded onto as well.
    #[allow(clippy::too_many_arguments)]
    fn torus(
        &self,
        d: f64,
        row: &LeafRow,
        layout: TorusLayout,
        swapped: bool,
        xi1: f64,
        xi2: f64,
        y: &[f64],
        out: &mut [f64],
    ) -> u64 {
        let place = |a: u64, out: &mut [f64]| {
            let p = layout.embed_with(a, row.radii());
            if swapped {
                out.copy_from_slice(&[p[2], p[3], p[0], p[1]]);
            } else {
                out.copy_from_slice(&p);
            }
        };
        let k0 = layout.nearest_circle(xi2);
        let mut best = layout.round_on_circle(xi1, k0);
        place(best, out);
        let n = layout.n_circles;
        if !self.cfg.refine || self.cfg.breadth == 0 || n == 1 {
            return best;
        }
        let y_norm = norm(y);
        let mut best_inner = dot(y, out);
        if y_norm == 0.0 || residual_from(best_inner, y_norm) < d / 2.0 {
            return best;
        }
        let reach = (self.cfg.breadth as u64).min((n - 1) / 2);
        let mut cand = [0.0; 4];
        for step in 1..=reach {
            for k in [(k0 + step) % n, (k0 + n - step) % n] {
                let a = layout.round_on_circle(xi1, k);
                place(a, &mut cand);
                let inner = dot(y, &cand);
                if inner > best_inner {
                    best_inner = inner;
                    best = a;
                    out.copy_from_slice(&cand);
                }
            }
        }
        // An even circle count leaves one circle opposite `k0` at the full reach.
        if n.is_multiple_of(2) && (self.cfg.breadth as u64) >= n / 2 {
            let a = layout.round_on_circle(xi1, (k0 + n / 2) % n);
            place(a, &mut cand);
            if dot(y, &cand) > best_inner {
                best = a;
                out.copy_from_slice(&cand);
            }
        }
        best
    }

    /// Projects `y` onto row `r`, returning the table index of the chosen point.
    fn row(
        &self,
        pos: usize,
        table: &LeafTable,
        r: usize,
        y: &[f64],
        phases: &mut Option<[f64; 2]>,
        out: &mut [f64],
    ) -> u128 {
        let row = &table.rows()[r];
        let (local, a1, a2) = match row.content {
            RowContent::Torus { layout, swapped } => {
                let [pa, pb] = *phases.get_or_insert_with(|| [y[1].atan2(y[0]), y[3].atan2(y[2])]);
                let (xi1, xi2) = if swapped { (pb, pa) } else { (pa, pb) };
                let local = self.torus(table.dmin, row, layout, swapped, xi1, xi2, y, out);
                return table.prefix(r) + local as u128;
            }
            RowContent::Diagonal { count } => {
                let local = diagonal_round(row.eta, count, &[y[0], y[1], y[2], y[3]]) as u128;
                (local, local, 0)
            }
            RowContent::Product { cos, sin, .. } => {
                let h = y.len() / 2;
                let (lo, hi) = out.split_at_mut(h);
                let a1 = self.sub(2 * pos + 1, cos, &y[..h], lo);
                let a2 = self.sub(2 * pos + 2, sin, &y[h..], hi);
                // The halves already hold the unit subcode points.
                let (s, c) = row.radii();
                lo.iter_mut().for_each(|x| *x *= c);
                hi.iter_mut().for_each(|x| *x *= s);
                return table.prefix(r) + a2 * row.m1 + a1;
            }
        };
        self.tables.write_row(pos, row, local, a1, a2, out);
        table.prefix(r) + local
    }
}

/// The row whose angle is closest to `eta`, lower row on ties.
fn nearest_row(rows: &[LeafRow], eta: f64) -> usize {
    let i = rows.partition_point(|r| r.eta.value() < eta);
    if i == 0 {
        return 0;
    }
    if i == rows.len() {
        return rows.len() - 1;
    }
    if eta - rows[i - 1].eta.value() <= rows[i].eta.value() - eta {
        i - 1
    } else {
        i
    }
}

/// Index of the largest score, lowest index on ties.
fn ml_argmax(scores: impl Iterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, s) in scores.enumerate() {
        if s > best.1 {
            best = (i, s);
        }
    }
    best.0
}

/// Maximum-likelihood decoding over an explicit codebook: the codeword with the
/// largest inner product with `y`, lowest index on ties.
pub fn decode_ml(codebook: &[Codeword], y: &[f64]) -> Result<u128> {
    if codebook.is_empty() {
        return Err(Error::Domain("empty codebook".into()));
    }
    let i = ml_argmax(codebook.iter().map(|w| dot(&w.coords, y)));
    Ok(codebook[i].index)
}

/// Exhaustive decoder holding the whole codebook in one contiguous buffer.
#[derive(Debug, Clone)]
pub struct MlDecoder {
    dim: usize,
    points: Vec<f64>,
}

impl MlDecoder {
    pub fn new(tables: &CodeTables, cap: u128) -> Result<Self> {
        Ok(MlDecoder { dim: tables.spec.dim, points: tables.points_flat(cap)? })
    }

    pub fn len(&self) -> usize {
        self.points.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, a: usize) -> &[f64] {
        &self.points[a * self.dim..(a + 1) * self.dim]
    }

    pub fn decode(&self, y: &[f64]) -> u128 {
        ml_argmax(self.points.chunks_exact(self.dim).map(|p| dot(p, y))) as u128
    }

    pub fn decode_full(&self, y: &[f64]) -> Result<DecodeResult> {
        let y_norm = check_input(y, self.dim)?;
        let index = self.decode(y);
        let coords = self.point(index as usize).to_vec();
        let residual = residual_from(dot(y, &coords), y_norm);
        Ok(DecodeResult { index, codeword: Codeword { index, coords }, residual })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{enumerate, DEFAULT_ENUMERATION_CAP};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn tables(dim: usize, d: f64) -> CodeTables {
        build_tables(&CodeSpec::standard(dim, d).unwrap()).unwrap()
    }

    fn random_direction(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = norm(&v);
        v.into_iter().map(|x| x / n).collect()
    }

    #[test]
    fn noiseless_round_trip_r4() {
        for cfg in [DecodeConfig::default(), DecodeConfig::refined()] {
            for a in 0..16u128 {
                let t = tables(4, 1.0);
                let y = t.encode(a).unwrap().coords;
                let r = decode4(&[y[0], y[1], y[2], y[3]], 1.0, &cfg).unwrap();
                assert_eq!(r.index, a);
                assert!(r.residual < 1e-7);
                assert_eq!(r.codeword, t.encode(a).unwrap());
            }
        }
    }

    #[test]
    fn clamps_to_existing_leaf() {
        // η = π/2 snaps to the only leaf. The dead first pair makes every point of
        // the nearest circle optimal, so compare distances rather than indices.
        let y = [0.0, 0.0, 0.6, 0.8];
        let r = decode4(&y, 1.0, &DecodeConfig::default()).unwrap();
        let t = tables(4, 1.0);
        let ml = MlDecoder::new(&t, DEFAULT_ENUMERATION_CAP).unwrap().decode_full(&y).unwrap();
        assert!((r.residual - ml.residual).abs() < 1e-12);
        assert_eq!(r.index / 4, ml.index / 4);
    }

    #[test]
    fn small_noise_matches_ml() {
        let t = tables(4, 1.0);
        let ml = MlDecoder::new(&t, DEFAULT_ENUMERATION_CAP).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let a = rng.random_range(0..16u128);
            let z = random_direction(&mut rng, 4);
            let y: Vec<f64> = t.encode(a).unwrap().coords.iter().zip(&z).map(|(x, n)| x + 0.1 * n).collect();
            let r = decode(&y, &t, &DecodeConfig::default()).unwrap();
            assert_eq!(r.index, ml.decode(&y));
        }
    }

    #[test]
    fn refinement_and_ml_dominance() {
        for (dim, d) in [(4, 0.5), (8, 0.7), (8, 0.5)] {
            let t = tables(dim, d);
            let ml = MlDecoder::new(&t, DEFAULT_ENUMERATION_CAP).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..500 {
                let y = random_direction(&mut rng, dim);
                let plain = decode(&y, &t, &DecodeConfig::default()).unwrap();
                let mut last = plain.residual;
                for breadth in 1..4 {
                    let r = decode(&y, &t, &DecodeConfig { breadth, refine: true }).unwrap();
                    assert!(r.residual <= last + 1e-12);
                    last = r.residual;
                    assert_eq!(r.codeword, t.encode(r.index).unwrap());
                }
                let best = ml.decode_full(&y).unwrap();
                assert!(best.residual <= last + 1e-12);
            }
        }
    }

    #[test]
    fn degenerate_blocks() {
        let t = tables(8, 0.5);
        for y in [[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.3, 0.0]] {
            for cfg in [DecodeConfig::default(), DecodeConfig::refined()] {
                let r = decode(&y, &t, &cfg).unwrap();
                assert!(r.index < t.len());
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let t = tables(4, 1.0);
        assert!(decode(&[0.0; 4], &t, &DecodeConfig::default()).is_err());
        assert!(decode(&[1.0; 3], &t, &DecodeConfig::default()).is_err());
        assert!(decode(&[f64::NAN, 0.0, 0.0, 1.0], &t, &DecodeConfig::default()).is_err());
    }

    #[test]
    fn ml_over_codebook() {
        let t = tables(4, 0.7);
        let book = enumerate(&t, DEFAULT_ENUMERATION_CAP).unwrap();
        let ml = MlDecoder::new(&t, DEFAULT_ENUMERATION_CAP).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for w in &book {
            assert_eq!(decode_ml(&book, &w.coords).unwrap(), w.index);
        }
        for _ in 0..200 {
            let y = random_direction(&mut rng, 4);
            let by_dist = book
                .iter()
                .map(|w| w.coords.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum::<f64>())
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap()
                .0 as u128;
            assert_eq!(decode_ml(&book, &y).unwrap(), by_dist);
            assert_eq!(ml.decode(&y), by_dist);
        }
        assert!(decode_ml(&[], &[1.0]).is_err());
    }

    #[test]
    fn modified_codes_round_trip() {
        for (dim, d) in [(4, 1.0), (4, 0.5), (8, 0.7), (8, 1.2)] {
            let t = build_tables(&CodeSpec::modified(dim, d).unwrap()).unwrap();
            for a in 0..t.len() {
                let y = t.encode(a).unwrap().coords;
                assert_eq!(decode(&y, &t, &DecodeConfig::default()).unwrap().index, a, "dim {dim} d {d}");
            }
        }
    }
}
