//! Seeded random generation.
//!
//! All randomness flows through [`RngStream`], a ChaCha8 generator keyed by a
//! 64-bit seed and a 64-bit stream id. The derived draws are pinned by this
//! module rather than delegated to distribution crates, so that a given
//! (seed, stream) reproduces bit-exactly across platforms and versions:
//! uniforms take the top 53 bits of `next_u64`, normals use Box–Muller on two
//! uniforms (cosine branch only), gamma uses the Marsaglia–Tsang squeeze for
//! shape >= 1 with the `U^{1/a}` boost below shape 1.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::wreath::WreathElement;

/// A reproducible random stream.
pub struct RngStream {
    rng: ChaCha8Rng,
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RngStream { rng, seed, stream }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `[0, 1)` with 53-bit resolution.
    pub fn uniform01(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..n` without modulo bias.
    pub fn uniform_below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - (u64::MAX - n + 1) % n;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % n;
            }
        }
    }

    /// Standard normal via Box–Muller (cosine branch).
    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform01(); // in (0, 1]
        let u2 = self.uniform01();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    pub fn exponential(&mut self) -> f64 {
        -(1.0 - self.uniform01()).ln()
    }

    /// Gamma(shape, 1) via Marsaglia–Tsang.
    pub fn gamma(&mut self, shape: f64) -> Result<f64> {
        if !(shape > 0.0) {
            return Err(Error::NonPositiveParameter(format!("gamma shape {shape}")));
        }
        if shape < 1.0 {
            let boost = self.uniform01().max(f64::MIN_POSITIVE).powf(1.0 / shape);
            return Ok(self.gamma(shape + 1.0)? * boost);
        }
        let d = shape - 1.0 / 3.0;
        let c = 1.0 / (9.0 * d).sqrt();
        loop {
            let x = self.normal();
            let t = 1.0 + c * x;
            if t <= 0.0 {
                continue;
            }
            let v = t * t * t;
            let u = self.uniform01();
            if u < 1.0 - 0.0331 * x.powi(4) {
                return Ok(d * v);
            }
            if u > 0.0 && u.ln() < 0.5 * x * x + d * (1.0 - v + v.ln()) {
                return Ok(d * v);
            }
        }
    }
}

/// A finite colored particle configuration: `(color, coordinate)` pairs with
/// nonzero coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoredConfiguration {
    pub points: Vec<(usize, f64)>,
}

impl ColoredConfiguration {
    pub fn new(points: Vec<(usize, f64)>) -> Result<Self> {
        if points.iter().any(|&(_, x)| x == 0.0 || !x.is_finite()) {
            return Err(Error::Parse(
                "coordinates must be finite and nonzero".into(),
            ));
        }
        Ok(ColoredConfiguration { points })
    }
}

fn positive_f64_params(t: &[f64]) -> Result<()> {
    if t.is_empty() || t.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::NonPositiveParameter(format!("{t:?}")));
    }
    Ok(())
}

/// One growth step of the Ewens process: extends a level-`m` element to
/// level `m+1`. New fixed points carry weight `t_{class(h)}` for each
/// `h ∈ G`; each of the `m·|G|` (position, inserted weight) insertion pairs
/// carries weight 1. Insertion is the projection preimage, so projecting the
/// result returns the input element.
fn ewens_grow_step(
    g: &FiniteGroup,
    x: &WreathElement,
    t: &[f64],
    rng: &mut RngStream,
) -> WreathElement {
    let m = x.n();
    let order = g.order as f64;
    let class_weight: f64 = (0..g.k()).map(|l| g.class_len(l) as f64 * t[l]).sum();
    let total = order * m as f64 + class_weight;
    let u = rng.uniform01() * total;
    let mut weights = x.weights.clone();
    let mut perm = x.perm.clone();
    if u < order * m as f64 {
        // insertion: uniform over (position, weight) pairs
        let idx = rng.uniform_below((m * g.order) as u64) as usize;
        let j = idx / g.order;
        let h = idx % g.order;
        let target = perm[j];
        weights[target] = g.mul(weights[target], g.inv(h));
        weights.push(h);
        perm[j] = m;
        perm.push(target);
    } else {
        // new fixed point with weight h, chosen proportionally to t_{class(h)}
        let mut u = u - order * m as f64;
        let mut h = g.order - 1;
        for cand in 0..g.order {
            let w = t[g.class_of[cand]];
            if u < w {
                h = cand;
                break;
            }
            u -= w;
        }
        weights.push(h);
        perm.push(m);
    }
    WreathElement { weights, perm }
}

/// The whole growth trajectory `x_1, ..., x_n`; consecutive levels are
/// compatible under the canonical projection by construction.
pub fn sample_ewens_trajectory(
    g: &FiniteGroup,
    n: usize,
    t: &[f64],
    rng: &mut RngStream,
) -> Result<Vec<WreathElement>> {
    positive_f64_params(t)?;
    if t.len() != g.k() {
        return Err(Error::SizeMismatch(format!(
            "{} parameters vs k={}",
            t.len(),
            g.k()
        )));
    }
    let mut out = Vec::with_capacity(n);
    let mut x = WreathElement {
        weights: vec![],
        perm: vec![],
    };
    for _ in 0..n {
        x = ewens_grow_step(g, &x, t, rng);
        out.push(x.clone());
    }
    Ok(out)
}

/// A single Ewens-distributed element of `G ~ S(n)`.
pub fn sample_ewens_wreath(
    g: &FiniteGroup,
    n: usize,
    t: &[f64],
    rng: &mut RngStream,
) -> Result<WreathElement> {
    Ok(sample_ewens_trajectory(g, n, t, rng)?
        .pop()
        .expect("n >= 1"))
}

/// A draw from the multiple Poisson–Dirichlet distribution: independent
/// GEM(t_l) stick-breaking per color (sorted descending, truncated at the
/// residual tolerance), scaled by a Dirichlet(t_1..t_k) vector.
#[derive(Debug, Clone)]
pub struct MultiPdSample {
    pub deltas: Vec<f64>,
    /// Per color: `δ^{(l)}` times the sorted stick weights.
    pub weights: Vec<Vec<f64>>,
}

pub const DEFAULT_STICK_RESIDUAL: f64 = 1e-12;

pub fn sample_multiple_pd(
    t: &[f64],
    residual_tol: f64,
    rng: &mut RngStream,
) -> Result<MultiPdSample> {
    positive_f64_params(t)?;
    let k = t.len();
    // Dirichlet deltas from normalized gammas
    let gammas: Vec<f64> = t.iter().map(|&tl| rng.gamma(tl)).collect::<Result<_>>()?;
    let total: f64 = gammas.iter().sum();
    let deltas: Vec<f64> = gammas.iter().map(|x| x / total).collect();

    let mut weights = Vec::with_capacity(k);
    for l in 0..k {
        let mut sticks = Vec::new();
        let mut residual = 1.0f64;
        while residual > residual_tol && sticks.len() < 100_000 {
            // Beta(1, t_l) by inverse CDF
            let b = 1.0 - (1.0 - rng.uniform01()).powf(1.0 / t[l]);
            sticks.push(residual * b);
            residual *= 1.0 - b;
        }
        sticks.sort_by(|a, b| b.partial_cmp(a).unwrap());
        weights.push(sticks.iter().map(|w| w * deltas[l]).collect());
    }
    Ok(MultiPdSample { deltas, weights })
}

/// Gamma lifting: multiplies all color-`l` coordinates by an independent
/// Gamma(t_l, 1) draw.
pub fn lift_sample(
    config: &ColoredConfiguration,
    t: &[f64],
    rng: &mut RngStream,
) -> Result<ColoredConfiguration> {
    positive_f64_params(t)?;
    let scales: Vec<f64> = t.iter().map(|&tl| rng.gamma(tl)).collect::<Result<_>>()?;
    let points = config
        .points
        .iter()
        .map(|&(l, x)| {
            if l >= t.len() {
                return Err(Error::IndexOutOfRange(format!("color {l}")));
            }
            Ok((l, x * scales[l]))
        })
        .collect::<Result<Vec<_>>>()?;
    ColoredConfiguration::new(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::bundled;
    use crate::measures::ewens_pushforward;
    use crate::multipartition::enumerate_multipartitions;
    use crate::scalar::Scalar;
    use crate::wreath::{cycle_type, project};
    use std::collections::HashMap;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let mut a = RngStream::new(42, 0);
        let mut b = RngStream::new(42, 0);
        let mut c = RngStream::new(42, 1);
        let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        let zs: Vec<u64> = (0..8).map(|_| c.next_u64()).collect();
        assert_eq!(xs, ys);
        assert_ne!(xs, zs);
    }

    #[test]
    fn gamma_moments() {
        let mut rng = RngStream::new(7, 0);
        for &shape in &[0.5f64, 1.0, 2.5] {
            let n = 50_000;
            let mut sum = 0.0;
            for _ in 0..n {
                sum += rng.gamma(shape).unwrap();
            }
            let mean = sum / n as f64;
            let sigma = (shape / n as f64).sqrt();
            assert!(
                (mean - shape).abs() < 5.0 * sigma,
                "shape {shape}: mean {mean}"
            );
        }
        assert!(rng.gamma(0.0).is_err());
    }

    #[test]
    fn ewens_sampler_is_deterministic() {
        let g = bundled::z2();
        let t = [1.0, 2.0];
        let mut r1 = RngStream::new(123, 5);
        let mut r2 = RngStream::new(123, 5);
        let x = sample_ewens_wreath(&g, 4, &t, &mut r1).unwrap();
        let y = sample_ewens_wreath(&g, 4, &t, &mut r2).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn trajectory_is_projection_compatible() {
        let g = bundled::s3();
        let t = [1.0, 0.5, 2.0];
        let mut rng = RngStream::new(9, 0);
        for _ in 0..50 {
            let traj = sample_ewens_trajectory(&g, 5, &t, &mut rng).unwrap();
            for w in traj.windows(2) {
                assert_eq!(project(&g, &w[1]).unwrap(), w[0]);
            }
        }
    }

    #[test]
    fn ewens_sampler_matches_exact_table() {
        let g = bundled::z2();
        let t = [1.0, 2.0];
        let exact = ewens_pushforward(&g, 3, &[Scalar::from_int(1), Scalar::from_int(2)]).unwrap();
        let n_samples = 200_000usize;
        let mut rng = RngStream::new(2024, 0);
        let mut counts: HashMap<String, usize> = HashMap::new();
        for _ in 0..n_samples {
            let x = sample_ewens_wreath(&g, 3, &t, &mut rng).unwrap();
            *counts.entry(cycle_type(&g, &x).to_string()).or_default() += 1;
        }
        let support = enumerate_multipartitions(3, 2);
        let mut tv = 0.0f64;
        for mp in &support {
            let p = exact.get(mp).re_f64();
            let freq = counts.get(&mp.to_string()).copied().unwrap_or(0) as f64 / n_samples as f64;
            tv += (p - freq).abs();
        }
        tv /= 2.0;
        let bound = 5.0 * (support.len() as f64 / n_samples as f64).sqrt();
        assert!(tv < bound, "TV {tv} vs bound {bound}");
    }

    #[test]
    fn projected_samples_match_direct_samples_distributionally() {
        // two-sample chi-square between projected level-3 samples and direct
        // level-2 samples over the classes of Y_2^{(2)}
        let g = bundled::z2();
        let t = [1.0, 2.0];
        let n_samples = 100_000usize;
        let mut counts_a: HashMap<String, f64> = HashMap::new();
        let mut counts_b: HashMap<String, f64> = HashMap::new();
        let mut ra = RngStream::new(31, 0);
        let mut rb = RngStream::new(31, 1);
        for _ in 0..n_samples {
            let high = sample_ewens_wreath(&g, 3, &t, &mut ra).unwrap();
            let low = project(&g, &high).unwrap();
            *counts_a
                .entry(cycle_type(&g, &low).to_string())
                .or_default() += 1.0;
            let direct = sample_ewens_wreath(&g, 2, &t, &mut rb).unwrap();
            *counts_b
                .entry(cycle_type(&g, &direct).to_string())
                .or_default() += 1.0;
        }
        let mut stat = 0.0f64;
        for mp in enumerate_multipartitions(2, 2) {
            let a = counts_a.get(&mp.to_string()).copied().unwrap_or(0.0);
            let b = counts_b.get(&mp.to_string()).copied().unwrap_or(0.0);
            if a + b > 0.0 {
                stat += (a - b) * (a - b) / (a + b);
            }
        }
        // chi-square 0.999 quantile at 4 degrees of freedom
        assert!(stat < 18.467, "chi-square statistic {stat}");
    }

    #[test]
    fn multiple_pd_masses() {
        let t = [1.0, 3.0];
        let mut rng = RngStream::new(5, 0);
        let n = 20_000;
        let mut delta_mean = [0.0f64; 2];
        for _ in 0..n {
            let s = sample_multiple_pd(&t, DEFAULT_STICK_RESIDUAL, &mut rng).unwrap();
            for l in 0..2 {
                delta_mean[l] += s.deltas[l];
                // sticks sorted descending, mass below delta
                let total: f64 = s.weights[l].iter().sum();
                assert!(total <= s.deltas[l] + 1e-9);
                for w in s.weights[l].windows(2) {
                    assert!(w[0] >= w[1]);
                }
            }
            let grand: f64 = s.weights.iter().flatten().sum();
            assert!(grand <= 1.0 + 1e-9);
            assert!(grand > 1.0 - 1e-6); // truncation residual only
        }
        for l in 0..2 {
            delta_mean[l] /= n as f64;
            let expect = t[l] / 4.0;
            assert!(
                (delta_mean[l] - expect).abs() < 0.01,
                "delta mean {l}: {}",
                delta_mean[l]
            );
        }
    }

    #[test]
    fn poisson_dirichlet_largest_part() {
        // PD(1): E[first coordinate] is the Golomb–Dickman constant 0.62433
        let mut rng = RngStream::new(77, 0);
        let n = 20_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let s = sample_multiple_pd(&[1.0], DEFAULT_STICK_RESIDUAL, &mut rng).unwrap();
            sum += s.weights[0][0];
        }
        let mean = sum / n as f64;
        assert!((mean - 0.6243).abs() < 0.01, "largest-part mean {mean}");
    }

    #[test]
    fn lifting_scales_colors() {
        let mut rng = RngStream::new(11, 0);
        let empty = ColoredConfiguration::new(vec![]).unwrap();
        assert_eq!(lift_sample(&empty, &[1.0], &mut rng).unwrap(), empty);

        // single point at 1/2 with t=1: lifted coordinate is Exp(1)/2
        let config = ColoredConfiguration::new(vec![(0, 0.5)]).unwrap();
        let n = 50_000;
        let mut sum = 0.0;
        for _ in 0..n {
            sum += lift_sample(&config, &[1.0], &mut rng).unwrap().points[0].1;
        }
        let mean = sum / n as f64;
        assert!(
            (mean - 0.5).abs() < 3.0 * 0.5 / (n as f64).sqrt() * 2.0,
            "mean {mean}"
        );

        // negative coordinates stay negative
        let config = ColoredConfiguration::new(vec![(0, -0.25), (1, 0.75)]).unwrap();
        let lifted = lift_sample(&config, &[2.0, 0.5], &mut rng).unwrap();
        assert!(lifted.points[0].1 < 0.0);
        assert!(lifted.points[1].1 > 0.0);
    }
}
