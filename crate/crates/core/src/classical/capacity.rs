use super::ClassicalChannel;
use crate::error::{Error, Result};

const MAX_ITERS: usize = 100_000;
const GAP: f64 = 1e-9;

/// Capacity in bits of a discrete memoryless channel w[out][in] by
/// Blahut–Arimoto. Stops once the upper and lower capacity estimates differ
/// by less than 1e-9.
pub fn blahut_arimoto(ch: &ClassicalChannel<f64>) -> Result<f64> {
    let (nx, ny) = (ch.inputs(), ch.outputs());
    for x in 0..nx {
        let s: f64 = (0..ny).map(|y| *ch.p(y, x)).sum();
        if (s - 1.0).abs() > 1e-9 || (0..ny).any(|y| *ch.p(y, x) < 0.0) {
            return Err(Error::Probability(format!("column {x} is not a distribution")));
        }
    }
    let mut r = vec![1.0 / nx as f64; nx];
    let mut lower = 0.0;
    for _ in 0..MAX_ITERS {
        let q: Vec<f64> = (0..ny).map(|y| (0..nx).map(|x| r[x] * ch.p(y, x)).sum()).collect();
        // D(x) = Σ_y w(y|x) log₂(w(y|x)/q(y))
        let dx: Vec<f64> = (0..nx)
            .map(|x| {
                (0..ny)
                    .filter(|&y| *ch.p(y, x) > 0.0)
                    .map(|y| ch.p(y, x) * (ch.p(y, x) / q[y]).log2())
                    .sum()
            })
            .collect();
        let z: f64 = (0..nx).map(|x| r[x] * dx[x].exp2()).sum();
        lower = z.log2();
        let upper = dx.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if upper - lower < GAP {
            return Ok(lower.max(0.0));
        }
        for x in 0..nx {
            r[x] *= dx[x].exp2() / z;
        }
    }
    Ok(lower.max(0.0))
}
