//! Code sets, the SZCCS/GCP verifiers, the optimality bound and the
//! parameter-preserving transforms.
//!
//! A `(K, M, L, Z)` symmetrical Z-complementary code set (SZCCS) is a set
//! of `K` codes, each a collection of `M` length-`L` sequences, whose
//! correlation sums vanish on a *symmetric* zero-correlation zone:
//!
//! * **C1** — every code's aperiodic auto-correlation sum is zero for
//!   `|u| ∈ T1 ∪ T2`, where `T1 = {1, …, Z}` (front end) and
//!   `T2 = {L-Z, …, L-1}` (tail end);
//! * **C2** — every pair of distinct codes has zero cross-correlation sum
//!   for `|u| ∈ {0} ∪ T1 ∪ T2`.
//!
//! The set size obeys `K ≤ floor(M·L / (Z+1))`; a set meeting the bound
//! with equality is *optimal*.  When `Z ≥ (L-1)/2` the two zones cover
//! every shift and the set degenerates to a mutually orthogonal
//! complementary code set (MOCCS).
//!
//! Verification runs in exact integer arithmetic whenever the sequence
//! alphabet embeds in the Gaussian integers (q dividing 4); larger lengths
//! use an FFT profile whose values are rounded back to integers with a
//! checked residue, so verdicts stay bit-exact.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corr::{
    self, set_ccf_sum_exact, GaussInt, CorrelationProfile, FFT_CROSSOVER, ZERO_TOL_PER_LEN,
};
use crate::error::{Error, Result};
use crate::gbf::UnimodularSequence;

/// Classification tag attached to a set by a verifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Gcp,
    Zcc,
    Zccs,
    Szccs,
    Moccs,
    Unverified,
}

/// Arithmetic used by a verifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithmeticMode {
    /// Exact for q dividing 4, floating otherwise.
    Auto,
    /// Exact integer arithmetic; errors when unrepresentable.
    Exact,
    /// Floating point with the crate-wide zero tolerance.
    Float,
}

/// A `K × M` array of equal-length sequences with optional per-code scales.
///
/// Scales support the P1 transform (multiply code `k` by a nonzero
/// constant `c_k`).  Because every correlation sum of scaled codes is the
/// unscaled sum times `c_k·conj(c_j) ≠ 0`, zero-verdicts are computed on
/// the stored exponents (exactly, when possible) regardless of scale;
/// reported violation values include the scale factor.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeSet {
    q: u32,
    codes: Vec<Vec<UnimodularSequence>>,
    scales: Vec<Complex64>,
    /// Declared ZCZ width, set by a successful verification.
    z: Option<usize>,
    kind: SetKind,
    #[serde(default)]
    provenance: BTreeMap<String, String>,
}

impl CodeSet {
    /// Build an unverified set from a rectangular array of sequences.
    pub fn from_codes(codes: Vec<Vec<UnimodularSequence>>) -> Result<Self> {
        if codes.is_empty() || codes[0].is_empty() {
            return Err(Error::InvalidParameter("empty code set".into()));
        }
        let m = codes[0].len();
        let l = codes[0][0].len();
        let q = codes[0][0].q();
        for code in &codes {
            if code.len() != m {
                return Err(Error::LengthMismatch {
                    left: code.len(),
                    right: m,
                });
            }
            for seq in code {
                if seq.len() != l {
                    return Err(Error::LengthMismatch {
                        left: seq.len(),
                        right: l,
                    });
                }
                if seq.q() != q {
                    return Err(Error::InvalidParameter(format!(
                        "mixed moduli in code set: {} vs {q}",
                        seq.q()
                    )));
                }
            }
        }
        let k = codes.len();
        Ok(CodeSet {
            q,
            codes,
            scales: vec![Complex64::new(1.0, 0.0); k],
            z: None,
            kind: SetKind::Unverified,
            provenance: BTreeMap::new(),
        })
    }

    /// Re-validate invariants after deserialization.
    pub fn validate(&self) -> Result<()> {
        let rebuilt = CodeSet::from_codes(self.codes.clone())?;
        if self.scales.len() != rebuilt.scales.len() {
            return Err(Error::LengthMismatch {
                left: self.scales.len(),
                right: rebuilt.scales.len(),
            });
        }
        if self.scales.iter().any(|c| c.norm() == 0.0) {
            return Err(Error::InvalidParameter("zero code scale".into()));
        }
        Ok(())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of codes K.
    pub fn num_codes(&self) -> usize {
        self.codes.len()
    }

    /// Sequences per code M.
    pub fn members_per_code(&self) -> usize {
        self.codes[0].len()
    }

    /// Sequence length L.
    pub fn seq_len(&self) -> usize {
        self.codes[0][0].len()
    }

    pub fn z(&self) -> Option<usize> {
        self.z
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn codes(&self) -> &[Vec<UnimodularSequence>] {
        &self.codes
    }

    pub fn sequence(&self, code: usize, member: usize) -> &UnimodularSequence {
        &self.codes[code][member]
    }

    pub fn scales(&self) -> &[Complex64] {
        &self.scales
    }

    pub fn provenance(&self) -> &BTreeMap<String, String> {
        &self.provenance
    }

    pub fn set_provenance(&mut self, key: &str, value: impl ToString) {
        self.provenance.insert(key.into(), value.to_string());
    }

    /// Complex rendering of sequence `(code, member)` including the code scale.
    pub fn render(&self, code: usize, member: usize) -> Vec<Complex64> {
        let c = self.scales[code];
        self.codes[code][member]
            .render_complex()
            .into_iter()
            .map(|z| z * c)
            .collect()
    }

    /// P1 transform: multiply code `k` by nonzero `c_k`.  Preserves the
    /// verified kind and parameters.
    pub fn transform_scale(&self, c: &[Complex64]) -> Result<CodeSet> {
        if c.len() != self.num_codes() {
            return Err(Error::LengthMismatch {
                left: c.len(),
                right: self.num_codes(),
            });
        }
        if let Some(i) = c.iter().position(|z| z.norm() == 0.0) {
            return Err(Error::InvalidParameter(format!("zero scalar for code {i}")));
        }
        let mut out = self.clone();
        for (s, f) in out.scales.iter_mut().zip(c) {
            *s *= f;
        }
        Ok(out)
    }

    /// P2 transform: reverse every sequence.  Preserves the verified kind
    /// and parameters.
    pub fn transform_reverse(&self) -> CodeSet {
        let mut out = self.clone();
        for code in &mut out.codes {
            for seq in code {
                *seq = seq.reversed();
            }
        }
        out
    }

    /// Verify the SZCCS conditions at width `z` and tag the set on success.
    pub fn verify_and_tag(&mut self, z: usize) -> Result<VerificationReport> {
        let report = self.verify_szccs(z)?;
        if report.pass {
            self.z = Some(z);
            self.kind = if z >= self.seq_len().saturating_sub(1).div_ceil(2) {
                SetKind::Moccs
            } else {
                SetKind::Szccs
            };
        }
        Ok(report)
    }

    /// Verify the SZCCS conditions at width `z` (auto arithmetic).
    pub fn verify_szccs(&self, z: usize) -> Result<VerificationReport> {
        self.verify_szccs_with_mode(z, ArithmeticMode::Auto)
    }

    /// Verify as a MOCCS: the symmetric zones at `Z = ceil((L-1)/2)` cover
    /// every shift, so no separate code path is needed.
    pub fn verify_moccs(&self) -> Result<VerificationReport> {
        self.verify_szccs(self.seq_len().saturating_sub(1).div_ceil(2))
    }

    /// Verify the SZCCS conditions at width `z` with an explicit arithmetic
    /// mode.
    pub fn verify_szccs_with_mode(
        &self,
        z: usize,
        mode: ArithmeticMode,
    ) -> Result<VerificationReport> {
        let l = self.seq_len();
        if z < 1 || z > l - 1 {
            return Err(Error::InvalidParameter(format!(
                "Z={z} outside 1..={}",
                l - 1
            )));
        }
        let engine = PairSums::compute(self, mode)?;
        let k = self.num_codes();

        // Shift admissibility masks over u >= 0 (negative shifts follow from
        // conjugate symmetry because all ordered pairs are checked).
        let auto_ok: Vec<bool> = (0..l)
            .map(|u| (0..k).all(|i| engine.is_zero(i, i, u)))
            .collect();
        let cross_ok: Vec<bool> = (0..l)
            .map(|u| (0..k).all(|i| (0..k).filter(|&j| j != i).all(|j| engine.is_zero(i, j, u))))
            .collect();
        let shift_ok = |u: usize| auto_ok[u] && cross_ok[u];

        // Maximal contiguous admissible runs from the front (u = 1..) and
        // the tail (u = L-1 down); the symmetric ZCZ width is their minimum.
        let zcz_front = if cross_ok[0] {
            (1..l).take_while(|&u| shift_ok(u)).count()
        } else {
            0
        };
        let zcz_tail = if cross_ok[0] {
            (1..l).take_while(|&t| shift_ok(l - t)).count()
        } else {
            0
        };
        let max_z = zcz_front.min(zcz_tail);
        let pass = z <= max_z;

        let mut violations = Vec::new();
        if !pass {
            let mut zone: Vec<usize> = (1..=z).chain(l - z..l).collect();
            zone.sort_unstable();
            zone.dedup();
            'outer: for i in 0..k {
                for j in 0..k {
                    let shifts: &[usize] = if i == j { &zone } else { &[] };
                    let cross_zone: Vec<usize> = if i == j {
                        shifts.to_vec()
                    } else {
                        std::iter::once(0).chain(zone.iter().copied()).collect()
                    };
                    for &u in &cross_zone {
                        if !engine.is_zero(i, j, u) {
                            let scale = self.scales[i] * self.scales[j].conj();
                            let v = engine.value(i, j, u) * scale;
                            violations.push(Violation {
                                code_a: i,
                                code_b: j,
                                shift: u as i64,
                                re: v.re,
                                im: v.im,
                                magnitude: v.norm(),
                            });
                            if violations.len() >= 1000 {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }

        let (max_k, _) = bound_check(k as u64, self.members_per_code() as u64, l as u64, z as u64);
        Ok(VerificationReport {
            pass,
            zcz_front,
            zcz_tail,
            max_z,
            optimal: pass && k as u64 == max_k,
            exact: engine.exact,
            violations,
        })
    }

    /// Full set-level correlation-sum profile between codes `a` and `b`
    /// (scales included), for inspection and CSV export.
    pub fn pair_profile(&self, a: usize, b: usize) -> Result<CorrelationProfile> {
        let l = self.seq_len();
        let m = self.members_per_code();
        let mut values = vec![Complex64::new(0.0, 0.0); 2 * l - 1];
        for mem in 0..m {
            let x = self.render(a, mem);
            let y = self.render(b, mem);
            let p = corr::full_profile(&x, &y)?;
            for (idx, v) in values.iter_mut().enumerate() {
                *v += p.at(idx as i64 - (l as i64 - 1));
            }
        }
        Ok(CorrelationProfile::new(l, values))
    }
}

/// Theorem-1 set-size bound: `max_K = floor(M·L/(Z+1))`; a set with
/// `K = max_K` is optimal.
pub fn bound_check(k: u64, m: u64, l: u64, z: u64) -> (u64, bool) {
    let max_k = m * l / (z + 1);
    (max_k, k == max_k)
}

/// Golay complementary pair check: auto-correlation sums vanish at every
/// nonzero shift.
pub fn verify_gcp(a: &UnimodularSequence, b: &UnimodularSequence) -> Result<VerificationReport> {
    let set = CodeSet::from_codes(vec![vec![a.clone(), b.clone()]])?;
    let l = set.seq_len();
    if l < 2 {
        return Err(Error::InvalidParameter(
            "GCP verification needs length >= 2".into(),
        ));
    }
    let engine = PairSums::compute(&set, ArithmeticMode::Auto)?;
    let mut violations = Vec::new();
    for u in 1..l {
        if !engine.is_zero(0, 0, u) {
            let v = engine.value(0, 0, u);
            violations.push(Violation {
                code_a: 0,
                code_b: 0,
                shift: u as i64,
                re: v.re,
                im: v.im,
                magnitude: v.norm(),
            });
        }
    }
    let pass = violations.is_empty();
    let run = (1..l).take_while(|&u| engine.is_zero(0, 0, u)).count();
    let tail = (1..l).take_while(|&t| engine.is_zero(0, 0, l - t)).count();
    Ok(VerificationReport {
        pass,
        zcz_front: run,
        zcz_tail: tail,
        max_z: run.min(tail),
        optimal: pass,
        exact: engine.exact,
        violations,
    })
}

/// Outcome of a verification run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pass: bool,
    /// Maximal verified front-end zone width (contiguous from u = 1).
    pub zcz_front: usize,
    /// Maximal verified tail-end zone width (contiguous from u = L-1).
    pub zcz_tail: usize,
    /// Maximal symmetric Z for which the set passes (0 = none).
    pub max_z: usize,
    /// Whether K meets the Theorem-1 bound at the requested Z.
    pub optimal: bool,
    /// True when the verdict was computed in exact integer arithmetic.
    pub exact: bool,
    /// Nonzero correlation sums inside the requested zone, at nonnegative
    /// shifts (negative shifts follow by conjugate symmetry); capped at
    /// 1000 entries.
    pub violations: Vec<Violation>,
}

/// One offending correlation sum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    pub code_a: usize,
    pub code_b: usize,
    pub shift: i64,
    pub re: f64,
    pub im: f64,
    pub magnitude: f64,
}

/// Precomputed set correlation sums `C_{S_i,S_j}(u)` for all ordered code
/// pairs and `u ∈ [0, L)`.
struct PairSums {
    k: usize,
    l: usize,
    /// Row-major `[i][j]` profiles of length L.
    sums: Vec<Vec<Complex64>>,
    exact: bool,
    tol: f64,
}

impl PairSums {
    fn compute(set: &CodeSet, mode: ArithmeticMode) -> Result<PairSums> {
        let exact_available = 4 % set.q() == 0;
        let exact = match mode {
            ArithmeticMode::Auto => exact_available,
            ArithmeticMode::Float => false,
            ArithmeticMode::Exact => {
                if !exact_available {
                    return Err(Error::ExactUnavailable(set.q()));
                }
                true
            }
        };
        let k = set.num_codes();
        let l = set.seq_len();
        let pairs: Vec<(usize, usize)> =
            (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();

        let sums: Vec<Vec<Complex64>> = if exact && l <= FFT_CROSSOVER {
            let rendered: Vec<Vec<Vec<GaussInt>>> = set
                .codes
                .iter()
                .map(|code| {
                    code.iter()
                        .map(|s| s.render_exact().expect("q divides 4"))
                        .collect()
                })
                .collect();
            pairs
                .par_iter()
                .map(|&(i, j)| {
                    (0..l as i64)
                        .map(|u| {
                            set_ccf_sum_exact(&rendered[i], &rendered[j], u)
                                .expect("uniform lengths")
                                .to_complex()
                        })
                        .collect()
                })
                .collect()
        } else {
            let rendered: Vec<Vec<Vec<Complex64>>> = set
                .codes
                .iter()
                .map(|code| code.iter().map(|s| s.render_complex()).collect())
                .collect();
            pairs
                .par_iter()
                .map(|&(i, j)| -> Result<Vec<Complex64>> {
                    let mut acc = vec![Complex64::new(0.0, 0.0); l];
                    for m in 0..set.members_per_code() {
                        let p = if l > FFT_CROSSOVER {
                            corr::profile_fft(&rendered[i][m], &rendered[j][m])?
                        } else {
                            corr::profile_naive(&rendered[i][m], &rendered[j][m])?
                        };
                        for (u, v) in acc.iter_mut().enumerate() {
                            *v += p.at(u as i64);
                        }
                    }
                    if exact {
                        // Values are Gaussian integers bounded by M·L; round
                        // the FFT output back, falling back to exact
                        // accumulation if the residue is ever suspicious.
                        for v in acc.iter_mut() {
                            if (v.re - v.re.round()).abs() > 0.25
                                || (v.im - v.im.round()).abs() > 0.25
                            {
                                let ga: Vec<Vec<GaussInt>> = set.codes[i]
                                    .iter()
                                    .map(|s| s.render_exact().expect("q divides 4"))
                                    .collect();
                                let gb: Vec<Vec<GaussInt>> = set.codes[j]
                                    .iter()
                                    .map(|s| s.render_exact().expect("q divides 4"))
                                    .collect();
                                acc = (0..l as i64)
                                    .map(|u| {
                                        set_ccf_sum_exact(&ga, &gb, u)
                                            .expect("uniform lengths")
                                            .to_complex()
                                    })
                                    .collect();
                                return Ok(acc);
                            }
                            *v = Complex64::new(v.re.round(), v.im.round());
                        }
                    }
                    Ok(acc)
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(PairSums {
            k,
            l,
            sums,
            exact,
            tol: ZERO_TOL_PER_LEN * l as f64 * set.members_per_code() as f64,
        })
    }

    fn value(&self, i: usize, j: usize, u: usize) -> Complex64 {
        debug_assert!(u < self.l && i < self.k && j < self.k);
        self.sums[i * self.k + j][u]
    }

    fn is_zero(&self, i: usize, j: usize, u: usize) -> bool {
        let v = self.value(i, j, u);
        if self.exact {
            v.re == 0.0 && v.im == 0.0
        } else {
            v.norm() <= self.tol
        }
    }
}
