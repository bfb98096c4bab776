//! Frequency-selective channel simulation and least-squares channel
//! estimation against the closed-form minimum MSE.
//!
//! ## Model
//!
//! Each of the `N_t` transmit antennas sends its training row through an
//! independent `(λ+1)`-tap channel with uniform power delay profile
//! (`h_{n,l} ~ CN(0,1)` i.i.d.).  With the cyclic prefix restored, the
//! single receive antenna observes, over `t = 0..L_total-1`,
//!
//! ```text
//! y(t) = Σ_{n=1}^{N_t} Σ_{l=0}^{λ} h_{n,l} · x_n((t-l) mod L_total) + w(t)
//! ```
//!
//! where `w(t)` is complex Gaussian with total variance `σ_w²` per sample.
//! The least-squares estimate regresses `y` on the `N_t·(λ+1)` cyclic
//! shifts of the training rows; when the training matrix satisfies the
//! periodic optimality conditions, `XᴴX = E·I` and the per-coefficient
//! error floor is exactly `σ_w²/E`.
//!
//! ## Calibration
//!
//! `E_b/N_0` maps to `σ_w²` through `E_b/N_0 = E / (2σ_w²·D·(λ+θ))` with
//! `D = N_t/N_active` (noise density `N_0 = 2σ_w²`).  Substituting back
//! into the floor gives `minimum MSE = (2·D·(λ+θ)·E_b/N_0)^{-1}`.  The
//! per-antenna length implied by this bookkeeping, `D·(λ+θ)`, differs from
//! the assembled matrix length `J·(Dθ+λ)`; both conventions are exposed
//! and the former is the default.

use nalgebra::{Complex, DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::training::TrainingMatrix;

/// How the energy-per-bit calibration counts the training length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum LengthConvention {
    /// `L = (N_t/N_active)·(λ+θ)`, the stated calibration (default).
    #[default]
    PerAntenna,
    /// `L = L_total = J·(D·θ+λ)`, the assembled matrix width.
    TotalLength,
}

/// One realization of the `N_t × (λ+1)` channel taps.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    /// `taps[n][l]` = `h_{n,l}`.
    pub taps: Vec<Vec<Complex64>>,
}

impl ChannelRealization {
    /// Draw i.i.d. `CN(0,1)` taps (variance split evenly across re/im).
    pub fn sample(n_t: usize, lambda: usize, rng: &mut impl Rng) -> Self {
        let scale = 0.5f64.sqrt();
        let taps = (0..n_t)
            .map(|_| {
                (0..=lambda)
                    .map(|_| {
                        Complex64::new(
                            scale * rng.sample::<f64, _>(StandardNormal),
                            scale * rng.sample::<f64, _>(StandardNormal),
                        )
                    })
                    .collect()
            })
            .collect();
        ChannelRealization { taps }
    }

    pub fn n_t(&self) -> usize {
        self.taps.len()
    }

    pub fn lambda(&self) -> usize {
        self.taps[0].len() - 1
    }
}

/// Received vector: cyclic convolution of every row with its channel, plus
/// complex Gaussian noise of total variance `σ_w²` per sample.
pub fn transmit(
    omega: &TrainingMatrix,
    h: &ChannelRealization,
    sigma_w2: f64,
    rng: &mut impl Rng,
) -> Result<Vec<Complex64>> {
    if h.n_t() != omega.n_t() || h.lambda() != omega.lambda() {
        return Err(Error::InvalidParameter(format!(
            "channel shape ({}, {}) does not match training matrix ({}, {})",
            h.n_t(),
            h.lambda(),
            omega.n_t(),
            omega.lambda()
        )));
    }
    let l = omega.l_total();
    let mut y = vec![Complex64::new(0.0, 0.0); l];
    for (row, taps) in omega.rows().iter().zip(&h.taps) {
        for (lag, &tap) in taps.iter().enumerate() {
            // y(t) += h_{n,lag} · x_n((t - lag) mod L)
            for t in 0..l {
                y[t] += tap * row[(t + l - lag) % l];
            }
        }
    }
    let noise_scale = (sigma_w2 / 2.0).sqrt();
    for v in &mut y {
        *v += Complex64::new(
            noise_scale * rng.sample::<f64, _>(StandardNormal),
            noise_scale * rng.sample::<f64, _>(StandardNormal),
        );
    }
    Ok(y)
}

/// Precomputed least-squares solver for a fixed training matrix.
pub struct LsSolver {
    n_t: usize,
    lambda: usize,
    /// `(XᴴX)⁻¹Xᴴ` (pseudo-inverse when rank deficient).
    g: DMatrix<Complex<f64>>,
    /// True when X lost column rank and a pseudo-inverse was substituted.
    pub rank_deficient: bool,
    pub rank: usize,
}

impl LsSolver {
    /// Build the regression matrix X whose columns are the cyclic shifts
    /// by `l = 0..λ` of each training row, and precompute its
    /// (pseudo-)inverse.
    pub fn new(omega: &TrainingMatrix) -> Result<Self> {
        let n_t = omega.n_t();
        let lambda = omega.lambda();
        let l = omega.l_total();
        let cols = n_t * (lambda + 1);
        if cols > l {
            return Err(Error::RankDeficient { rank: l, cols });
        }
        let mut x = DMatrix::<Complex<f64>>::zeros(l, cols);
        for n in 0..n_t {
            let row = &omega.rows()[n];
            for lag in 0..=lambda {
                let col = n * (lambda + 1) + lag;
                for t in 0..l {
                    x[(t, col)] = row[(t + l - lag) % l];
                }
            }
        }
        let svd = x.clone().svd(true, true);
        let smax = svd.singular_values.max();
        let eps = smax * 1e-10 * l as f64;
        let rank = svd.singular_values.iter().filter(|&&s| s > eps).count();
        let rank_deficient = rank < cols;
        let g = svd
            .pseudo_inverse(eps)
            .map_err(|e| Error::InvalidParameter(format!("SVD failed: {e}")))?;
        Ok(LsSolver {
            n_t,
            lambda,
            g,
            rank_deficient,
            rank,
        })
    }

    /// `ĥ = argmin ‖y − X·h‖²`, returned as `N_t × (λ+1)` taps.
    pub fn estimate(&self, y: &[Complex64]) -> Vec<Vec<Complex64>> {
        let yv = DVector::from_iterator(y.len(), y.iter().map(|z| Complex::new(z.re, z.im)));
        let est = &self.g * yv;
        (0..self.n_t)
            .map(|n| {
                (0..=self.lambda)
                    .map(|lag| {
                        let v = est[n * (self.lambda + 1) + lag];
                        Complex64::new(v.re, v.im)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Closed-form minimum MSE `(2·(N_t/N_active)·(λ+θ)·ebn0)^{-1}`.
pub fn min_mse(n_t: usize, n_active: usize, lambda: usize, theta: usize, ebn0_linear: f64) -> f64 {
    let d = n_t as f64 / n_active as f64;
    1.0 / (2.0 * d * (lambda + theta) as f64 * ebn0_linear)
}

/// Noise variance implied by an `E_b/N_0` target for a given training
/// matrix: inverts `E_b/N_0 = E / (N_0·L)` with `N_0 = 2σ_w²` and `L`
/// chosen by the convention.
pub fn sigma_w2_for(omega: &TrainingMatrix, ebn0_linear: f64, convention: LengthConvention) -> f64 {
    let e = omega.energy();
    let len = match convention {
        LengthConvention::PerAntenna => {
            (omega.n_t() as f64 / omega.n_active() as f64)
                * (omega.lambda() + omega.theta()) as f64
        }
        LengthConvention::TotalLength => omega.l_total() as f64,
    };
    e / (2.0 * ebn0_linear * len)
}

/// Monte-Carlo campaign configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimConfig {
    /// `E_b/N_0` sweep points in dB.
    pub ebn0_db: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub convention: LengthConvention,
}

/// One sweep point of a campaign.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimPoint {
    pub ebn0_db: f64,
    pub mse: f64,
    pub stderr: f64,
    pub min_mse: f64,
    pub trials: usize,
}

/// Monte-Carlo result: one point per `E_b/N_0` value.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimResult {
    pub points: Vec<SimPoint>,
}

impl SimResult {
    /// CSV with columns `ebn0_db, mse, stderr, min_mse, trials`.
    pub fn to_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "ebn0_db,mse,stderr,min_mse,trials")?;
        for p in &self.points {
            writeln!(
                w,
                "{},{},{},{},{}",
                p.ebn0_db, p.mse, p.stderr, p.min_mse, p.trials
            )?;
        }
        Ok(())
    }
}

/// Derive a per-trial RNG from the master seed by counter, so results are
/// independent of scheduling.
fn trial_rng(seed: u64, point: usize, trial: usize) -> ChaCha8Rng {
    let mut z = seed ^ (point as u64).wrapping_mul(0x9e3779b97f4a7c15)
        ^ (trial as u64).wrapping_mul(0xd1b54a32d192ed03);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

/// Per-coefficient squared estimation error for one trial.
fn trial_error(
    omega: &TrainingMatrix,
    solver: &LsSolver,
    sigma_w2: f64,
    rng: &mut impl Rng,
) -> f64 {
    let h = ChannelRealization::sample(omega.n_t(), omega.lambda(), rng);
    let y = transmit(omega, &h, sigma_w2, rng).expect("shapes match by construction");
    let est = solver.estimate(&y);
    let mut err = 0.0;
    for (hn, en) in h.taps.iter().zip(&est) {
        for (ht, et) in hn.iter().zip(en) {
            err += (ht - et).norm_sqr();
        }
    }
    err / (omega.n_t() * (omega.lambda() + 1)) as f64
}

/// Run the Monte-Carlo sweep: per point, derive `σ_w²`, average the
/// per-coefficient squared error over fresh channel + noise draws, and
/// report the closed-form minimum alongside.
pub fn run_campaign(omega: &TrainingMatrix, cfg: &SimConfig) -> Result<SimResult> {
    if cfg.trials < 1 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    if cfg.ebn0_db.is_empty() {
        return Err(Error::InvalidParameter("empty E_b/N_0 sweep".into()));
    }
    let solver = LsSolver::new(omega)?;
    let points = cfg
        .ebn0_db
        .iter()
        .enumerate()
        .map(|(pi, &db)| {
            let ebn0 = 10f64.powf(db / 10.0);
            let sigma_w2 = sigma_w2_for(omega, ebn0, cfg.convention);
            let errs: Vec<f64> = (0..cfg.trials)
                .into_par_iter()
                .map(|t| trial_error(omega, &solver, sigma_w2, &mut trial_rng(cfg.seed, pi, t)))
                .collect();
            let mean = errs.iter().sum::<f64>() / errs.len() as f64;
            let var = errs.iter().map(|e| (e - mean).powi(2)).sum::<f64>()
                / (errs.len().saturating_sub(1).max(1)) as f64;
            SimPoint {
                ebn0_db: db,
                mse: mean,
                stderr: (var / errs.len() as f64).sqrt(),
                min_mse: min_mse(
                    omega.n_t(),
                    omega.n_active(),
                    omega.lambda(),
                    omega.theta(),
                    ebn0,
                ),
                trials: cfg.trials,
            }
        })
        .collect();
    Ok(SimResult { points })
}
