//! Hypervolume and objective normalisation.

use crate::error::{invalid, Error, Result};
use rand::Rng;

/// Exact area dominated by `points` and bounded below by `reference`.
///
/// Points that do not strictly exceed the reference in both objectives add
/// nothing and are ignored.
pub fn hypervolume_2d<T: AsRef<[f64]>>(points: &[T], reference: [f64; 2]) -> Result<f64> {
    let mut pts = Vec::with_capacity(points.len());
    for p in points {
        let p = p.as_ref();
        if p.len() != 2 {
            return Err(Error::UnsupportedDimension(p.len()));
        }
        if p[0] > reference[0] && p[1] > reference[1] {
            pts.push((p[0], p[1]));
        }
    }
    pts.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));
    let mut area = 0.0;
    let mut floor = reference[1];
    for (x, y) in pts {
        if y > floor {
            area += (x - reference[0]) * (y - floor);
            floor = y;
        }
    }
    Ok(area)
}

/// Exclusive hypervolume contribution of each member of a mutually
/// non-dominated bi-objective set: the rectangle between the point and its
/// two neighbours along the front. Results are in input order.
pub fn contributions_2d<T: AsRef<[f64]>>(front: &[T], reference: [f64; 2]) -> Vec<f64> {
    let xy = |i: usize| (front[i].as_ref()[0], front[i].as_ref()[1]);
    let mut order: Vec<usize> = (0..front.len()).collect();
    order.sort_by(|&a, &b| {
        let (ax, ay) = xy(a);
        let (bx, by) = xy(b);
        ax.total_cmp(&bx).then(by.total_cmp(&ay))
    });
    let mut out = vec![0.0; front.len()];
    for (pos, &i) in order.iter().enumerate() {
        let (x, y) = xy(i);
        let left = if pos == 0 { reference[0] } else { xy(order[pos - 1]).0 };
        let below = order.get(pos + 1).map_or(reference[1], |&j| xy(j).1);
        out[i] = (x - left).max(0.0) * (y - below).max(0.0);
    }
    out
}

/// Monte-Carlo estimate of the dominated volume inside the box spanned by
/// `reference` and the per-objective maxima of `points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub value: f64,
    pub std_error: f64,
}

pub fn hypervolume_mc<T, R>(points: &[T], reference: &[f64], samples: usize, rng: &mut R) -> Result<MonteCarloEstimate>
where
    T: AsRef<[f64]>,
    R: Rng + ?Sized,
{
    let m = reference.len();
    if m < 2 {
        return Err(Error::UnsupportedDimension(m));
    }
    if points.is_empty() {
        return Ok(MonteCarloEstimate { value: 0.0, std_error: 0.0 });
    }
    if samples == 0 {
        return Err(invalid("Monte-Carlo hypervolume needs at least one sample"));
    }
    let mut upper = reference.to_vec();
    for p in points {
        let p = p.as_ref();
        if p.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: p.len() });
        }
        for (u, &v) in upper.iter_mut().zip(p) {
            *u = u.max(v);
        }
    }
    let volume: f64 = upper.iter().zip(reference).map(|(u, r)| u - r).product();
    if volume <= 0.0 {
        return Ok(MonteCarloEstimate { value: 0.0, std_error: 0.0 });
    }

    let mut sample = vec![0.0; m];
    let mut hits = 0usize;
    for _ in 0..samples {
        for ((s, &lo), &hi) in sample.iter_mut().zip(reference).zip(&upper) {
            *s = if hi > lo { rng.gen_range(lo..hi) } else { lo };
        }
        let covered = points.iter().any(|p| p.as_ref().iter().zip(&sample).all(|(v, s)| v >= s));
        hits += covered as usize;
    }
    let frac = hits as f64 / samples as f64;
    Ok(MonteCarloEstimate { value: frac * volume, std_error: volume * (frac * (1.0 - frac) / samples as f64).sqrt() })
}

/// Per-objective positive divisors used to map objectives into `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationSpec {
    scales: Vec<f64>,
}

impl NormalizationSpec {
    pub fn new(scales: Vec<f64>) -> Result<Self> {
        if scales.is_empty() {
            return Err(Error::Config("normalisation needs at least one scale".into()));
        }
        if let Some(s) = scales.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
            return Err(Error::Config(format!("normalisation scale {s} must be positive")));
        }
        Ok(Self { scales })
    }

    pub fn identity(m: usize) -> Self {
        Self { scales: vec![1.0; m] }
    }

    /// Scales by the per-objective maxima over `points`. Objectives whose
    /// maximum is not positive keep scale 1.
    pub fn from_maxima<T: AsRef<[f64]>>(points: &[T], m: usize) -> Self {
        let mut scales = vec![f64::NEG_INFINITY; m];
        for p in points {
            for (s, &v) in scales.iter_mut().zip(p.as_ref()) {
                *s = s.max(v);
            }
        }
        for s in &mut scales {
            if !(s.is_finite() && *s > 0.0) {
                *s = 1.0;
            }
        }
        Self { scales }
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }
}

pub fn normalize<T: AsRef<[f64]>>(points: &[T], spec: &NormalizationSpec) -> Vec<Vec<f64>> {
    points.iter().map(|p| p.as_ref().iter().zip(&spec.scales).map(|(v, s)| v / s).collect()).collect()
}
