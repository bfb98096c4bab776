//! Sparse training matrices for generalized spatial modulation (GSM) and
//! their optimality criteria.
//!
//! A `(N_t, N_active, λ, J, θ)` training matrix Ω has one row per transmit
//! antenna and `L_total = J·(D·θ + λ)` columns, where `D = N_t/N_active`.
//! It is assembled from a *seed family* of unimodular sequences
//! `a_{k,j}` (`k = 1..N_active`, `j = 1..J`, each of length θ) as
//!
//! ```text
//! Ω = ( Ω_1 | 0_{N_t×λ} | Ω_2 | 0_{N_t×λ} | … | Ω_J | 0_{N_t×λ} )
//! ```
//!
//! where block `Ω_j` stacks, for `n = 0..D-1`, the right-cyclic shift by
//! `n·θ` of `(X_j ‖ 0_{N_active×(D-1)θ})` and `X_j` stacks the rows
//! `a_{1,j} … a_{N_active,j}` — a staircase of active bursts separated by
//! silent stretches, with λ-wide all-zero "zero-time-slot" columns closing
//! each block.  Every row carries energy `E = J·θ`.
//!
//! The least-squares channel estimator attains the MSE floor `σ_w²/E` iff
//! the rows satisfy the periodic conditions `φ_{x_i,x_j}(u) = E·δ_{ij}δ_{u0}`
//! for `0 ≤ u ≤ λ` (the "eq3" check below).  On the seed family this is
//! equivalent to three aperiodic conditions:
//!
//! * **eq5** — auto sums: `Σ_j ρ_{a_{k,j}}(u) = 0` for `1 ≤ u ≤ λ`;
//! * **eq6** — cross sums: `Σ_j ρ_{a_{k,j},a_{k',j}}(u) = 0` for `k ≠ k'`,
//!   `0 ≤ |u| ≤ λ`;
//! * **eq7** — staggered sums: `Σ_j ρ_{a_{k,j},a_{k',j}}(θ-u) = 0` for
//!   `1 ≤ u ≤ λ`, over **all** pairs including `k = k'` (the `k = k'`
//!   instances supply the tail-end condition that makes the equivalence
//!   with eq3 close).
//!
//! A family meeting eq5-eq7 for `λ ≤ Z` is exactly an
//! `(N_active, J, θ, Z)`-SZCCS read code-by-code.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::codeset::CodeSet;
use crate::corr::{aperiodic_ccf, periodic_ccf, ZERO_TOL_PER_LEN};
use crate::error::{Error, Result};

/// Seed family type: `family[k][j]` is the length-θ sequence `a_{k+1,j+1}`.
pub type SeedFamily = Vec<Vec<Vec<Complex64>>>;

/// A sparse GSM training matrix.  Silent entries are literal zeros; active
/// entries are unimodular symbols.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainingMatrix {
    rows: Vec<Vec<Complex64>>,
    n_t: usize,
    n_active: usize,
    lambda: usize,
    j_blocks: usize,
    theta: usize,
    family: SeedFamily,
}

impl TrainingMatrix {
    /// Assemble Ω from an explicit seed family.
    pub fn from_family(family: SeedFamily, n_t: usize, lambda: usize) -> Result<Self> {
        let n_active = family.len();
        if n_active == 0 {
            return Err(Error::InvalidParameter("empty seed family".into()));
        }
        if n_t == 0 || n_t % n_active != 0 {
            return Err(Error::InvalidParameter(format!(
                "N_active = {n_active} must divide N_t = {n_t}"
            )));
        }
        let j_blocks = family[0].len();
        if j_blocks == 0 {
            return Err(Error::InvalidParameter("seed family has no blocks".into()));
        }
        let theta = family[0][0].len();
        if theta == 0 {
            return Err(Error::InvalidParameter("empty seed sequence".into()));
        }
        for row in &family {
            if row.len() != j_blocks {
                return Err(Error::LengthMismatch {
                    left: row.len(),
                    right: j_blocks,
                });
            }
            for seq in row {
                if seq.len() != theta {
                    return Err(Error::LengthMismatch {
                        left: seq.len(),
                        right: theta,
                    });
                }
                if let Some(i) = seq.iter().position(|z| z.norm() == 0.0) {
                    return Err(Error::ZeroEntry(i));
                }
            }
        }
        let d = n_t / n_active;
        let block_width = d * theta + lambda;
        let l_total = j_blocks * block_width;
        let mut rows = vec![vec![Complex64::new(0.0, 0.0); l_total]; n_t];
        for j in 0..j_blocks {
            for n in 0..d {
                for k in 0..n_active {
                    let row = n * n_active + k;
                    let start = j * block_width + n * theta;
                    rows[row][start..start + theta].copy_from_slice(&family[k][j]);
                }
            }
        }
        Ok(TrainingMatrix {
            rows,
            n_t,
            n_active,
            lambda,
            j_blocks,
            theta,
            family,
        })
    }

    /// Assemble Ω from the first `N_active` codes of a code set (or an
    /// explicit code selection), reading code `k`'s member `j` as `a_{k,j}`.
    pub fn build_omega(
        set: &CodeSet,
        n_t: usize,
        n_active: usize,
        lambda: usize,
        selection: Option<&[usize]>,
    ) -> Result<Self> {
        let picks: Vec<usize> = match selection {
            Some(s) => s.to_vec(),
            None => (0..n_active).collect(),
        };
        if picks.len() != n_active {
            return Err(Error::InvalidParameter(format!(
                "expected {n_active} code indices, got {}",
                picks.len()
            )));
        }
        if let Some(&bad) = picks.iter().find(|&&c| c >= set.num_codes()) {
            return Err(Error::IndexOutOfRange {
                index: bad as u64,
                limit: set.num_codes() as u64,
            });
        }
        let family: SeedFamily = picks
            .iter()
            .map(|&k| {
                (0..set.members_per_code())
                    .map(|j| set.render(k, j))
                    .collect()
            })
            .collect();
        TrainingMatrix::from_family(family, n_t, lambda)
    }

    /// `t` horizontal copies of Ω (`J' = t·J`, `E' = t·E`).
    pub fn enlarge(&self, t: usize) -> Result<Self> {
        if t < 1 {
            return Err(Error::InvalidParameter("t must be >= 1".into()));
        }
        let family: SeedFamily = self
            .family
            .iter()
            .map(|row| {
                std::iter::repeat(row.clone())
                    .take(t)
                    .flatten()
                    .collect::<Vec<_>>()
            })
            .collect();
        TrainingMatrix::from_family(family, self.n_t, self.lambda)
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.rows
    }

    pub fn family(&self) -> &SeedFamily {
        &self.family
    }

    pub fn n_t(&self) -> usize {
        self.n_t
    }

    pub fn n_active(&self) -> usize {
        self.n_active
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn j_blocks(&self) -> usize {
        self.j_blocks
    }

    pub fn theta(&self) -> usize {
        self.theta
    }

    pub fn l_total(&self) -> usize {
        self.rows[0].len()
    }

    /// Training energy per row, `E = J·θ`.
    pub fn energy(&self) -> f64 {
        (self.j_blocks * self.theta) as f64
    }

    /// Evaluate the three aperiodic seed criteria and the periodic row
    /// condition.
    pub fn check_criteria(&self) -> CriteriaReport {
        let mut report = check_family_criteria(&self.family, self.lambda);
        let (eq3_ok, mut v3) = self.check_periodic_rows();
        report.eq3_ok = eq3_ok;
        report.violations.append(&mut v3);
        report.violations.truncate(1000);
        report
    }

    /// The eq3 check: `φ_{x_i,x_j}(u) = E·δ_{ij}δ_{u0}` over the cyclic
    /// `L_total`-column window, for `0 ≤ u ≤ λ` and all ordered row pairs.
    fn check_periodic_rows(&self) -> (bool, Vec<CriteriaViolation>) {
        let e = self.energy();
        let tol = ZERO_TOL_PER_LEN * self.l_total() as f64;
        let mut violations = Vec::new();
        for i in 0..self.n_t {
            for j in 0..self.n_t {
                for u in 0..=self.lambda as i64 {
                    let phi = periodic_ccf(&self.rows[i], &self.rows[j], u)
                        .expect("rows have uniform length");
                    let expect = if i == j && u == 0 {
                        Complex64::new(e, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    if (phi - expect).norm() > tol {
                        violations.push(CriteriaViolation {
                            criterion: Criterion::Eq3,
                            k: i,
                            k2: j,
                            shift: u,
                            magnitude: (phi - expect).norm(),
                        });
                    }
                }
            }
        }
        (violations.is_empty(), violations)
    }

    /// CSV rows; silent entries as `0`, active entries as `re+imj`.
    pub fn to_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|z| {
                    if z.norm() == 0.0 {
                        "0".to_string()
                    } else {
                        format!("{}{:+}j", z.re, z.im)
                    }
                })
                .collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// Which optimality condition a violation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Eq5,
    Eq6,
    Eq7,
    Eq3,
}

/// One offending correlation value in a criteria check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriteriaViolation {
    pub criterion: Criterion,
    pub k: usize,
    pub k2: usize,
    pub shift: i64,
    pub magnitude: f64,
}

/// Verdicts of the training optimality criteria.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriteriaReport {
    pub eq5_ok: bool,
    pub eq6_ok: bool,
    pub eq7_ok: bool,
    pub eq3_ok: bool,
    pub violations: Vec<CriteriaViolation>,
}

impl CriteriaReport {
    /// The matrix is optimal iff all four conditions hold.
    pub fn is_optimal(&self) -> bool {
        self.eq5_ok && self.eq6_ok && self.eq7_ok && self.eq3_ok
    }
}

/// Check eq5-eq7 on a bare seed family (the general form accepted without
/// a builder).  `eq3_ok` is reported true here and only meaningful after
/// the row-level check in [`TrainingMatrix::check_criteria`].
pub fn check_family_criteria(family: &SeedFamily, lambda: usize) -> CriteriaReport {
    let n_active = family.len();
    let j_blocks = family.first().map_or(0, |r| r.len());
    let theta = family
        .first()
        .and_then(|r| r.first())
        .map_or(0, |s| s.len());
    let tol = ZERO_TOL_PER_LEN * (theta * j_blocks.max(1)) as f64;
    let sum = |k: usize, k2: usize, u: i64| -> Complex64 {
        (0..j_blocks)
            .map(|j| {
                aperiodic_ccf(&family[k][j], &family[k2][j], u).expect("uniform seed lengths")
            })
            .sum()
    };
    let mut violations = Vec::new();
    let mut eq5_ok = true;
    let mut eq6_ok = true;
    let mut eq7_ok = true;

    for k in 0..n_active {
        // eq5: auto-correlation sums in the front zone.
        for u in 1..=lambda as i64 {
            let v = sum(k, k, u);
            if v.norm() > tol {
                eq5_ok = false;
                violations.push(CriteriaViolation {
                    criterion: Criterion::Eq5,
                    k,
                    k2: k,
                    shift: u,
                    magnitude: v.norm(),
                });
            }
        }
        for k2 in 0..n_active {
            // eq6: cross-correlation sums for distinct rows at |u| <= λ.
            // Checking all ordered pairs at u >= 0 covers negative shifts
            // by conjugate symmetry.
            if k != k2 {
                for u in 0..=lambda as i64 {
                    let v = sum(k, k2, u);
                    if v.norm() > tol {
                        eq6_ok = false;
                        violations.push(CriteriaViolation {
                            criterion: Criterion::Eq6,
                            k,
                            k2,
                            shift: u,
                            magnitude: v.norm(),
                        });
                    }
                }
            }
            // eq7: staggered sums at shift θ-u, including k = k2.
            for u in 1..=lambda as i64 {
                let v = sum(k, k2, theta as i64 - u);
                if v.norm() > tol {
                    eq7_ok = false;
                    violations.push(CriteriaViolation {
                        criterion: Criterion::Eq7,
                        k,
                        k2,
                        shift: theta as i64 - u,
                        magnitude: v.norm(),
                    });
                }
            }
        }
    }
    violations.truncate(1000);
    CriteriaReport {
        eq5_ok,
        eq6_ok,
        eq7_ok,
        eq3_ok: true,
        violations,
    }
}
