//! Random presence-zone coverage of the fabric.
//!
//! Each of `Q` square zones with side `s = ceil(sqrt(B))` is placed
//! uniformly at random on the `a x b` fabric. `P[x][y]` is the chance a
//! single zone covers ULB `(x, y)`; `E[S_q]` is the expected number of ULBs
//! covered by exactly `q` zones.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("binomial({n}, {k}) is out of range")]
pub struct BinomialRangeError {
    pub n: usize,
    pub k: usize,
}

/// `C(n, k)` by the multiplicative recurrence `f(n, k) = f(n, k-1) * (n-k+1) / k`.
///
/// Exact for every result below 2^53 because each intermediate product is
/// divisible by `k`.
pub fn binomial(n: usize, k: usize) -> Result<f64, BinomialRangeError> {
    if k > n {
        return Err(BinomialRangeError { n, k });
    }
    Ok(BinomialRow::new(n).nth(k).expect("k <= n"))
}

/// Iterator over `C(n, 0), C(n, 1), ..., C(n, n)` via the same recurrence.
#[derive(Debug, Clone)]
pub struct BinomialRow {
    n: usize,
    k: usize,
    current: f64,
}

impl BinomialRow {
    pub fn new(n: usize) -> Self {
        BinomialRow { n, k: 0, current: 1.0 }
    }
}

impl Iterator for BinomialRow {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        if self.k > self.n {
            return None;
        }
        let out = self.current;
        self.k += 1;
        self.current = self.current * (self.n + 1 - self.k) as f64 / self.k as f64;
        Some(out)
    }
}

/// Smallest integer side whose square holds area `b` (at least 1).
pub fn zone_side(area: f64) -> usize {
    assert!(area.is_finite() && area >= 0.0, "zone area must be finite");
    let mut s = area.sqrt().ceil().max(1.0) as usize;
    while s > 1 && ((s - 1) * (s - 1)) as f64 >= area {
        s -= 1;
    }
    while ((s * s) as f64) < area {
        s += 1;
    }
    s
}

/// Single-zone coverage probabilities over the fabric.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageGrid {
    pub width: usize,
    pub length: usize,
    /// Zone side after clamping to the fabric.
    pub side: usize,
    /// True when `ceil(sqrt(B))` exceeded `min(a, b)` and was clamped.
    pub clamped: bool,
    /// Row-major by `x`: `cells[(x - 1) * length + (y - 1)]`.
    pub cells: Vec<f64>,
}

impl CoverageGrid {
    /// Probabilities for a zone of average area `area` on an `a x b` fabric.
    pub fn new(width: usize, length: usize, area: f64) -> Self {
        assert!(width >= 1 && length >= 1, "fabric must be at least 1x1");
        let raw = zone_side(area);
        let limit = width.min(length);
        let clamped = raw > limit;
        if clamped {
            log::warn!(
                "presence zone side {raw} exceeds fabric {width}x{length}; clamping to {limit}"
            );
        }
        Self::with_side(width, length, raw.min(limit), clamped)
    }

    /// Probabilities for an explicit zone side `1 <= side <= min(a, b)`.
    pub fn with_side(width: usize, length: usize, side: usize, clamped: bool) -> Self {
        assert!(side >= 1 && side <= width.min(length), "zone must fit the fabric");
        let placements = ((width - side + 1) * (length - side + 1)) as f64;
        let span = |pos: usize, extent: usize| {
            pos.min(extent - pos + 1).min(side).min(extent - side + 1)
        };
        let mut cells = Vec::with_capacity(width * length);
        for x in 1..=width {
            let sx = span(x, width);
            for y in 1..=length {
                cells.push((sx * span(y, length)) as f64 / placements);
            }
        }
        CoverageGrid {
            width,
            length,
            side,
            clamped,
            cells,
        }
    }

    /// `P[x][y]`, 1-indexed.
    pub fn get(&self, x: usize, y: usize) -> f64 {
        assert!((1..=self.width).contains(&x) && (1..=self.length).contains(&y));
        self.cells[(x - 1) * self.length + (y - 1)]
    }

    pub fn area(&self) -> usize {
        self.width * self.length
    }

    /// `E[S_q]` for each `q` in `qs` with `zones` independent zones.
    ///
    /// `qs` must be ascending and within `0..=zones`.
    pub fn expected_coverage(&self, zones: usize, qs: std::ops::RangeInclusive<usize>) -> Vec<f64> {
        assert!(*qs.end() <= zones, "occupancy above zone count");
        let binom: Vec<f64> = BinomialRow::new(zones).take(qs.end() + 1).collect();
        // Cells share few distinct probabilities; evaluate each once and
        // weight by multiplicity. log(1 - P) is None where P == 1.
        let mut sorted = self.cells.clone();
        sorted.sort_unstable_by(f64::total_cmp);
        let levels: Vec<(f64, f64, Option<f64>)> = sorted
            .chunk_by(|a, b| a == b)
            .map(|run| {
                let p = run[0];
                (p, run.len() as f64, (p < 1.0).then(|| (-p).ln_1p()))
            })
            .collect();
        qs.map(|q| {
            let rest = zones - q;
            let sum: f64 = levels
                .iter()
                .map(|&(p, mult, lm)| {
                    let hit = p.powi(q as i32);
                    let miss = match lm {
                        Some(l) => (rest as f64 * l).exp(),
                        None if rest == 0 => 1.0,
                        None => 0.0,
                    };
                    mult * hit * miss
                })
                .sum();
            binom[q] * sum
        })
        .collect()
    }
}
