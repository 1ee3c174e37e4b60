use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::sampling::{box_volume, sample_box};
use crate::{ConvexBody, Result, VolumeError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranslateCheck {
    pub shift: Vec<f64>,
    /// `vol((B + v) ∩ B')`
    pub left: f64,
    /// `vol(B ∩ B')`
    pub right: f64,
    /// Standard error of `left - right`, from the paired samples.
    pub stderr: f64,
    pub pass: bool,
}

/// Both volumes are estimated from the same uniform points of the bounding
/// box of `B'`, so their difference has a paired standard error. Passes
/// when `left <= right + 3 stderr`.
pub fn check_brunn_translate(
    b: &ConvexBody,
    b2: &ConvexBody,
    v: &[f64],
    samples: u64,
    seed: u64,
) -> Result<TranslateCheck> {
    let d = b.dim();
    if b2.dim() != d || v.len() != d {
        return Err(VolumeError::DimensionMismatch("bodies and shift must share a dimension".into()));
    }
    if samples < 1000 {
        return Err(VolumeError::InvalidParameters("need at least 1000 samples".into()));
    }
    let widths = b2.half_widths();
    let m = sample_box(&widths, samples, seed, |x| {
        if !b2.contains(x) {
            return [0.0, 0.0];
        }
        let shifted: Vec<f64> = x.iter().zip(v).map(|(a, s)| a - s).collect();
        [f64::from(u8::from(b.contains(&shifted))), f64::from(u8::from(b.contains(x)))]
    });
    let scale = box_volume(&widths);
    let (left, _) = m.linear([1.0, 0.0], scale);
    let (right, _) = m.linear([0.0, 1.0], scale);
    let (diff, stderr) = m.linear([1.0, -1.0], scale);
    Ok(TranslateCheck {
        shift: v.to_vec(),
        left,
        right,
        stderr,
        pass: diff <= 3.0 * stderr,
    })
}

/// `conv(±v_i)` for `d..=d+3` generators uniform in `[-1, 1]^d`.
pub fn random_symmetric_polytope<R: Rng>(d: usize, rng: &mut R) -> ConvexBody {
    loop {
        let k = d + rng.gen_range(0..=3);
        let gens: Vec<Vec<f64>> = (0..k).map(|_| (0..d).map(|_| rng.gen_range(-1.0..=1.0)).collect()).collect();
        if let Ok(p) = ConvexBody::symmetric_polytope(gens) {
            return p;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub dim: usize,
    pub trials: usize,
    pub passes: usize,
    pub checks: Vec<TranslateCheck>,
}

/// Random pairs of symmetric polytopes with random shifts.
pub fn translate_suite(dim: usize, trials: usize, samples: u64, seed: u64) -> Result<SuiteReport> {
    if dim == 0 {
        return Err(VolumeError::InvalidParameters("dimension must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::with_capacity(trials);
    for _ in 0..trials {
        let b = random_symmetric_polytope(dim, &mut rng);
        let b2 = random_symmetric_polytope(dim, &mut rng);
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let trial_seed: u64 = rng.gen();
        checks.push(check_brunn_translate(&b, &b2, &v, samples, trial_seed)?);
    }
    Ok(SuiteReport {
        dim,
        trials,
        passes: checks.iter().filter(|c| c.pass).count(),
        checks,
    })
}
