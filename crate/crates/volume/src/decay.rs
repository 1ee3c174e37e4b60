use serde::{Deserialize, Serialize};

use crate::sampling::{box_volume, sample_box, Estimate};
use crate::{ConvexBody, Result, SplitMatrix, VolumeError};

/// Hits below this count make a log-volume estimate useless.
const MIN_HITS: u64 = 30;

/// Hit-or-miss estimate of `vol(e^{tA} C ∩ C)`, sampling the intersection
/// of the bounding boxes of `C` and `e^{tA} C`.
pub fn mc_intersection_volume(
    a: &SplitMatrix,
    t: f64,
    body: &ConvexBody,
    samples: u64,
    seed: u64,
) -> Result<Estimate> {
    if body.dim() != a.dim() {
        return Err(VolumeError::DimensionMismatch(format!(
            "matrix is {0}x{0}, body has dimension {1}",
            a.dim(),
            body.dim()
        )));
    }
    if samples < 1000 {
        return Err(VolumeError::InvalidParameters("need at least 1000 samples".into()));
    }
    let forward = a.exp(t)?;
    let back = a.exp(-t)?;
    let widths: Vec<f64> = body
        .half_widths()
        .iter()
        .zip(body.half_widths_under(&forward))
        .map(|(u, v)| u.min(v))
        .collect();
    let d = a.dim();
    let m = sample_box(&widths, samples, seed, |x| {
        if !body.contains(x) {
            return [0.0];
        }
        let y: Vec<f64> = (0..d).map(|i| (0..d).map(|j| back[(i, j)] * x[j]).sum()).collect();
        [if body.contains(&y) { 1.0 } else { 0.0 }]
    });
    let (value, stderr) = m.linear([1.0], box_volume(&widths));
    Ok(Estimate {
        value,
        stderr,
        hits: m.sum[0].round() as u64,
        samples,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayOptions {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
    pub samples: u64,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for DecayOptions {
    fn default() -> Self {
        DecayOptions {
            t_min: 0.0,
            t_max: 3.0,
            points: 10,
            samples: 100_000,
            seed: 7,
            tolerance: 0.1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub ts: Vec<f64>,
    pub volumes: Vec<Estimate>,
    /// `log vol(e^{tA} C ∩ C) - t Tr(A) / 2`
    pub corrected_log_volumes: Vec<f64>,
    /// Delta-method standard errors of the log volumes.
    pub log_stderrs: Vec<f64>,
    /// Index of the first point used by the fit.
    pub tail_start: usize,
    pub fitted_slope: f64,
    pub predicted_slope: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl DecayFit {
    /// Whitespace-separated `t  log-volume  stderr` rows.
    pub fn gnuplot_data(&self) -> String {
        let mut s = String::from("# t corrected_log_volume stderr\n");
        for ((t, y), e) in self.ts.iter().zip(&self.corrected_log_volumes).zip(&self.log_stderrs) {
            s.push_str(&format!("{t} {y} {e}\n"));
        }
        s
    }
}

fn ols_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Fits the slope of the trace-corrected log volume over the last two
/// thirds of `t` and compares it with `-rho(A)`.
pub fn verify_decay(a: &SplitMatrix, body: &ConvexBody, opts: &DecayOptions) -> Result<DecayFit> {
    if opts.points < 3 || opts.t_max <= opts.t_min {
        return Err(VolumeError::InvalidParameters("need at least 3 points and t_max > t_min".into()));
    }
    let step = (opts.t_max - opts.t_min) / (opts.points - 1) as f64;
    let ts: Vec<f64> = (0..opts.points).map(|i| opts.t_min + step * i as f64).collect();
    let mut volumes = Vec::with_capacity(ts.len());
    for (i, &t) in ts.iter().enumerate() {
        let seed = opts.seed ^ (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let est = mc_intersection_volume(a, t, body, opts.samples, seed)?;
        if est.hits < MIN_HITS {
            return Err(VolumeError::TooFewHits {
                t,
                hits: est.hits,
                samples: est.samples,
            });
        }
        volumes.push(est);
    }
    let half_trace = a.trace() / 2.0;
    let corrected: Vec<f64> = ts.iter().zip(&volumes).map(|(t, v)| v.value.ln() - t * half_trace).collect();
    let log_stderrs = volumes.iter().map(|v| v.stderr / v.value).collect();
    let tail_start = opts.points / 3;
    let fitted_slope = ols_slope(&ts[tail_start..], &corrected[tail_start..]);
    let predicted_slope = -a.rho();
    Ok(DecayFit {
        ts,
        volumes,
        corrected_log_volumes: corrected,
        log_stderrs,
        tail_start,
        fitted_slope,
        predicted_slope,
        tolerance: opts.tolerance,
        pass: (fitted_slope - predicted_slope).abs() <= opts.tolerance,
    })
}
