use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// The sample budget is always cut into this many streams.
pub(crate) const CHUNKS: u64 = 32;

/// A Monte Carlo volume estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub hits: u64,
    pub samples: u64,
}

fn stream(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

/// First and second moments of a vector-valued score over uniform points
/// of the box `[-w, w]`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Moments<const K: usize> {
    pub sum: [f64; K],
    pub cross: [[f64; K]; K],
    pub n: u64,
}

impl<const K: usize> Moments<K> {
    fn zero() -> Self {
        Moments {
            sum: [0.0; K],
            cross: [[0.0; K]; K],
            n: 0,
        }
    }

    fn merge(mut self, o: Self) -> Self {
        for i in 0..K {
            self.sum[i] += o.sum[i];
            for j in 0..K {
                self.cross[i][j] += o.cross[i][j];
            }
        }
        self.n += o.n;
        self
    }

    /// Mean and standard error of `sum_k c_k score_k`, times `scale`.
    pub fn linear(&self, c: [f64; K], scale: f64) -> (f64, f64) {
        let n = self.n as f64;
        let mean: f64 = (0..K).map(|i| c[i] * self.sum[i]).sum::<f64>() / n;
        let second: f64 = (0..K)
            .flat_map(|i| (0..K).map(move |j| (i, j)))
            .map(|(i, j)| c[i] * c[j] * self.cross[i][j])
            .sum::<f64>()
            / n;
        let var = ((second - mean * mean) * n / (n - 1.0).max(1.0)).max(0.0);
        (scale * mean, scale * (var / n).sqrt())
    }
}

/// Samples are split into [`CHUNKS`] streams with derived seeds and merged
/// in stream order, so the result is independent of the thread count.
pub(crate) fn sample_box<const K: usize, F>(widths: &[f64], samples: u64, seed: u64, score: F) -> Moments<K>
where
    F: Fn(&[f64]) -> [f64; K] + Sync,
{
    (0..CHUNKS)
        .into_par_iter()
        .map(|c| {
            let n = samples / CHUNKS + u64::from(c < samples % CHUNKS);
            let mut rng = stream(seed, c);
            let mut x = vec![0.0; widths.len()];
            let mut m = Moments::zero();
            m.n = n;
            for _ in 0..n {
                for (xi, w) in x.iter_mut().zip(widths) {
                    *xi = if *w > 0.0 { rng.gen_range(-*w..=*w) } else { 0.0 };
                }
                let v = score(&x);
                for i in 0..K {
                    m.sum[i] += v[i];
                    for j in 0..K {
                        m.cross[i][j] += v[i] * v[j];
                    }
                }
            }
            m
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Moments::zero(), Moments::merge)
}

/// Volume of the box `[-w, w]`.
pub(crate) fn box_volume(widths: &[f64]) -> f64 {
    widths.iter().map(|w| 2.0 * w).product()
}
