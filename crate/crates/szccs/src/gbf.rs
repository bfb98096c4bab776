//! Generalized Boolean functions over Z_q and their unimodular sequences.
//!
//! A generalized Boolean function (GBF) maps `{0,1}^m` to `Z_q`.  It is
//! stored sparsely as a multilinear polynomial: a set of monomials (each a
//! set of variable indices in `1..=m`) with coefficients in `Z_q`, plus a
//! constant term.  Evaluating the function over the natural enumeration of
//! its domain and exponentiating `ξ_q = exp(2πi/q)` yields a unimodular
//! sequence of length up to `2^m`.
//!
//! ## Bit order
//!
//! The integer argument `i` is expanded as `i = Σ_k i_k 2^{k-1}`, so `x_1`
//! is the *least* significant bit and `x_m` the most significant.  Every
//! construction and test in this crate uses this single convention.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A multilinear polynomial from `{0,1}^m` to `Z_q` (q even).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gbf {
    q: u32,
    m: u32,
    /// Monomials keyed by their sorted, deduplicated variable-index set
    /// (1-based).  The empty set is never a key; it lives in `constant`.
    terms: BTreeMap<Vec<u32>, u32>,
    constant: u32,
}

impl Gbf {
    /// The zero function over `m` variables with even modulus `q`.
    pub fn new(q: u32, m: u32) -> Result<Self> {
        if q < 2 || q % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "q must be an even integer >= 2, got {q}"
            )));
        }
        if m < 1 || m > 62 {
            return Err(Error::InvalidParameter(format!(
                "m must be in 1..=62, got {m}"
            )));
        }
        Ok(Gbf {
            q,
            m,
            terms: BTreeMap::new(),
            constant: 0,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn constant(&self) -> u32 {
        self.constant
    }

    /// Iterate over `(variable index set, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u32)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// Add `coeff * Π_{k in vars} x_k` (mod q).  An empty `vars` adds to the
    /// constant.  Repeated indices collapse (`x_k² = x_k` on `{0,1}`).
    pub fn add_term(&mut self, vars: &[u32], coeff: u32) -> Result<()> {
        let mut key: Vec<u32> = vars.to_vec();
        key.sort_unstable();
        key.dedup();
        if let Some(&bad) = key.iter().find(|&&v| v < 1 || v > self.m) {
            return Err(Error::InvalidParameter(format!(
                "variable index x{bad} outside 1..={}",
                self.m
            )));
        }
        let coeff = coeff % self.q;
        if key.is_empty() {
            self.constant = (self.constant + coeff) % self.q;
            return Ok(());
        }
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry = (*entry + coeff) % self.q;
        if *entry == 0 {
            self.terms.remove(&key);
        }
        Ok(())
    }

    /// Builder-style [`add_term`](Self::add_term).
    pub fn with_term(mut self, vars: &[u32], coeff: u32) -> Result<Self> {
        self.add_term(vars, coeff)?;
        Ok(self)
    }

    /// Coefficient-wise sum (mod q) of two functions over the same domain.
    pub fn add(&self, other: &Gbf) -> Result<Gbf> {
        if self.q != other.q || self.m != other.m {
            return Err(Error::InvalidParameter(format!(
                "cannot add GBFs over different domains: (q={},m={}) vs (q={},m={})",
                self.q, self.m, other.q, other.m
            )));
        }
        let mut out = self.clone();
        for (vars, coeff) in other.terms() {
            out.add_term(vars, coeff)?;
        }
        out.constant = (out.constant + other.constant) % out.q;
        Ok(out)
    }

    /// Evaluate at `i ∈ [0, 2^m)`, reading bit `k-1` of `i` as `x_k`.
    pub fn evaluate(&self, i: u64) -> Result<u32> {
        let limit = 1u64 << self.m;
        if i >= limit {
            return Err(Error::IndexOutOfRange { index: i, limit });
        }
        let mut acc: u64 = self.constant as u64;
        for (vars, coeff) in &self.terms {
            if vars.iter().all(|&v| (i >> (v - 1)) & 1 == 1) {
                acc += *coeff as u64;
            }
        }
        Ok((acc % self.q as u64) as u32)
    }

    /// The full truth table of length `2^m`.
    pub fn truth_table(&self) -> Vec<u32> {
        (0..(1u64 << self.m))
            .map(|i| self.evaluate(i).expect("index within domain"))
            .collect()
    }

    /// The length-`l` unimodular sequence `ψ(f^{(l)})`: the first `l`
    /// entries of `ξ_q^{f(i)}`, stored as exponents.
    pub fn to_sequence(&self, l: usize) -> Result<UnimodularSequence> {
        let limit = 1usize << self.m;
        if l < 1 || l > limit {
            return Err(Error::InvalidParameter(format!(
                "sequence length {l} outside 1..={limit}"
            )));
        }
        let exponents = (0..l as u64)
            .map(|i| self.evaluate(i).expect("index within domain"))
            .collect();
        UnimodularSequence::new(self.q, exponents)
    }

    /// The full-length sequence `ψ(f)` of length `2^m`.
    pub fn to_full_sequence(&self) -> UnimodularSequence {
        self.to_sequence(1 << self.m).expect("2^m is valid")
    }
}

impl fmt::Display for Gbf {
    /// Text form `q=2 m=4 : 1*x1x2 + 1*x2x3 + 3`.
    ///
    /// Terms are emitted in sorted monomial order, the constant last as a
    /// bare number.  When any variable index exceeds 9, indices inside a
    /// monomial are `*`-separated to stay unambiguous (`1*x2*x12`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} m={} :", self.q, self.m)?;
        let mut first = true;
        let wide = self.terms.keys().flatten().any(|&v| v > 9);
        for (vars, coeff) in &self.terms {
            write!(f, "{} {coeff}*", if first { "" } else { " +" })?;
            for (pos, v) in vars.iter().enumerate() {
                if wide && pos > 0 {
                    write!(f, "*")?;
                }
                write!(f, "x{v}")?;
            }
            first = false;
        }
        if self.constant != 0 || first {
            write!(f, "{} {}", if first { "" } else { " +" }, self.constant)?;
        }
        Ok(())
    }
}

impl FromStr for Gbf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |msg: &str| Error::Parse(format!("GBF text `{s}`: {msg}"));
        let (head, body) = s
            .split_once(':')
            .ok_or_else(|| parse_err("missing `:` separator"))?;
        let mut q = None;
        let mut m = None;
        for tok in head.split_whitespace() {
            if let Some(v) = tok.strip_prefix("q=") {
                q = Some(v.parse::<u32>().map_err(|e| parse_err(&e.to_string()))?);
            } else if let Some(v) = tok.strip_prefix("m=") {
                m = Some(v.parse::<u32>().map_err(|e| parse_err(&e.to_string()))?);
            } else {
                return Err(parse_err(&format!("unexpected header token `{tok}`")));
            }
        }
        let q = q.ok_or_else(|| parse_err("missing q="))?;
        let m = m.ok_or_else(|| parse_err("missing m="))?;
        let mut gbf = Gbf::new(q, m)?;
        let body = body.trim();
        if body.is_empty() {
            return Ok(gbf);
        }
        for term in body.split('+') {
            let term = term.trim().replace('*', " ");
            let mut coeff: Option<u32> = None;
            let mut vars: Vec<u32> = Vec::new();
            for piece in term.split_whitespace() {
                if let Some(rest) = piece.strip_prefix('x') {
                    // Concatenated variables like `x1x2` are split greedily.
                    for idx in rest.split('x') {
                        vars.push(idx.parse().map_err(|_| {
                            parse_err(&format!("bad variable index in `{piece}`"))
                        })?);
                    }
                } else {
                    let c: u32 = piece
                        .parse()
                        .map_err(|_| parse_err(&format!("bad coefficient `{piece}`")))?;
                    coeff = Some(match coeff {
                        None => c,
                        Some(_) => return Err(parse_err("two coefficients in one term")),
                    });
                }
            }
            gbf.add_term(&vars, coeff.unwrap_or(1))?;
        }
        Ok(gbf)
    }
}

/// A bijection `π` on `{1..m}`, stored as the image list `π(1)..π(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &v in &images {
            if v < 1 || v as usize > m || seen[v as usize] {
                return Err(Error::InvalidParameter(format!(
                    "images {images:?} are not a bijection on 1..={m}"
                )));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(m: u32) -> Self {
        Permutation {
            images: (1..=m).collect(),
        }
    }

    /// `π(k)` for 1-based `k`.
    pub fn apply(&self, k: u32) -> u32 {
        self.images[(k - 1) as usize]
    }

    pub fn m(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }
}

/// A length-L vector of `Z_q` exponents representing `ξ_q^{e(i)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodularSequence {
    q: u32,
    exponents: Vec<u32>,
}

impl UnimodularSequence {
    pub fn new(q: u32, exponents: Vec<u32>) -> Result<Self> {
        if q < 1 {
            return Err(Error::InvalidParameter("q must be >= 1".into()));
        }
        if exponents.is_empty() {
            return Err(Error::InvalidParameter("empty sequence".into()));
        }
        Ok(UnimodularSequence {
            q,
            exponents: exponents.into_iter().map(|e| e % q).collect(),
        })
    }

    /// Build a ±1 (q=2) sequence from signs; `true` means `-1`.
    pub fn from_signs(negatives: &[bool]) -> Result<Self> {
        UnimodularSequence::new(2, negatives.iter().map(|&n| n as u32).collect())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// `exp(2πi·e/q)` per entry; exact ±1 / ±i for q ∈ {1,2,4}.
    pub fn render_complex(&self) -> Vec<Complex64> {
        self.exponents
            .iter()
            .map(|&e| match (4 * e as u64 / self.q as u64, (4 * e as u64) % self.q as u64) {
                (0, 0) => Complex64::new(1.0, 0.0),
                (1, 0) => Complex64::new(0.0, 1.0),
                (2, 0) => Complex64::new(-1.0, 0.0),
                (3, 0) => Complex64::new(0.0, -1.0),
                _ => Complex64::from_polar(
                    1.0,
                    2.0 * std::f64::consts::PI * e as f64 / self.q as f64,
                ),
            })
            .collect()
    }

    /// Exact Gaussian-integer rendering; available iff q divides 4.
    pub fn render_exact(&self) -> Option<Vec<crate::corr::GaussInt>> {
        if 4 % self.q != 0 {
            return None;
        }
        let scale = 4 / self.q;
        Some(
            self.exponents
                .iter()
                .map(|&e| crate::corr::GaussInt::unit(((e * scale) % 4) as u8))
                .collect(),
        )
    }

    /// The reversed sequence.
    pub fn reversed(&self) -> Self {
        let mut exponents = self.exponents.clone();
        exponents.reverse();
        UnimodularSequence {
            q: self.q,
            exponents,
        }
    }
}
