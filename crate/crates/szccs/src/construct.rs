//! Sequence-family generators: Golay pairs from quadratic Boolean
//! functions, the two SZCCS constructions, and the baseline families used
//! by the numerical experiments (Zadoff-Chu, random binary, the printed
//! cross-Z-complementary pair).
//!
//! All algebraic constructions share the same skeleton: a quadratic "path"
//! form `(q/2)·Σ x_{π(s)}x_{π(s+1)}` plus arbitrary linear terms, with
//! carefully chosen (q/2)-weighted offsets distinguishing codes within a
//! set.

use num_complex::Complex64;
use rand::Rng;

use crate::codeset::{bound_check, CodeSet};
use crate::error::{Error, Result};
use crate::gbf::{Gbf, Permutation, UnimodularSequence};

/// Which companion sequence completes the Golay pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma1Variant {
    /// `b = a + (q/2)·x_{π(1)}`.
    B,
    /// `c = a + (q/2)·x_{π(m)}` — the other endpoint of the quadratic
    /// chain.  (Offsetting a non-endpoint variable does not, in general,
    /// yield a complementary mate.)
    C,
}

/// The base quadratic `a(x) = (q/2)·Σ_{k=1}^{m-1} x_{π(k)}x_{π(k+1)} +
/// Σ c_k x_k + c` used by the Golay-pair construction.
fn golay_base(q: u32, pi: &Permutation, coeffs: &[u32], constant: u32) -> Result<Gbf> {
    let m = pi.m();
    if coeffs.len() != m as usize {
        return Err(Error::InvalidParameter(format!(
            "expected {m} linear coefficients, got {}",
            coeffs.len()
        )));
    }
    let mut f = Gbf::new(q, m)?;
    for k in 1..m {
        f.add_term(&[pi.apply(k), pi.apply(k + 1)], q / 2)?;
    }
    for k in 1..=m {
        f.add_term(&[k], coeffs[(k - 1) as usize])?;
    }
    f.add_term(&[], constant)?;
    Ok(f)
}

/// Golay complementary pair of length `2^m` from a quadratic form.
///
/// Returns `(ψ(a), ψ(b))` with `b = a + (q/2)x_{π(1)}` (variant B) or
/// `(ψ(a), ψ(c))` with `c = a + (q/2)x_{π(m)}` (variant C).
pub fn lemma1_gcp(
    q: u32,
    pi: &Permutation,
    coeffs: &[u32],
    constant: u32,
    variant: Lemma1Variant,
) -> Result<(UnimodularSequence, UnimodularSequence)> {
    let a = golay_base(q, pi, coeffs, constant)?;
    let m = pi.m();
    let offset_var = match variant {
        Lemma1Variant::B => pi.apply(1),
        Lemma1Variant::C => pi.apply(m),
    };
    let b = a.clone().with_term(&[offset_var], q / 2)?;
    Ok((a.to_full_sequence(), b.to_full_sequence()))
}

/// Parameters of the optimal `(8, 2, 2^m, 2^{m-2}-1)`-SZCCS construction.
#[derive(Debug, Clone)]
pub struct Theorem2Params {
    pub q: u32,
    pub m: u32,
    pub pi: Permutation,
    /// Linear coefficients `μ_1..μ_m`.
    pub mu: Vec<u32>,
    /// Constant term `μ`.
    pub mu0: u32,
}

impl Theorem2Params {
    /// Validate `q` even, `m ≥ 4`, `{π(m-1), π(m)} = {m-1, m}` and
    /// `{π(1..m-2)} = {1..m-2}` (the latter pins the front-end zone width;
    /// it is what makes the zone symmetric at `Z = 2^{m-2}-1`).
    pub fn validate(&self) -> Result<()> {
        if self.q < 2 || self.q % 2 != 0 {
            return Err(Error::InvalidParameter("q must be even".into()));
        }
        if self.m < 4 {
            return Err(Error::InvalidParameter(format!(
                "m must be >= 4, got {}",
                self.m
            )));
        }
        if self.pi.m() != self.m {
            return Err(Error::InvalidParameter(
                "permutation size does not match m".into(),
            ));
        }
        let mut last_two = [self.pi.apply(self.m - 1), self.pi.apply(self.m)];
        last_two.sort_unstable();
        if last_two != [self.m - 1, self.m] {
            return Err(Error::InvalidParameter(format!(
                "permutation must satisfy {{pi(m-1), pi(m)}} = {{{}, {}}}",
                self.m - 1,
                self.m
            )));
        }
        if self.mu.len() != self.m as usize {
            return Err(Error::InvalidParameter(format!(
                "expected {} linear coefficients, got {}",
                self.m,
                self.mu.len()
            )));
        }
        Ok(())
    }

    /// Draw a uniformly random valid parameter set for given `(q, m)`.
    pub fn random(q: u32, m: u32, rng: &mut impl Rng) -> Result<Self> {
        if m < 4 {
            return Err(Error::InvalidParameter("m must be >= 4".into()));
        }
        let mut head: Vec<u32> = (1..=m - 2).collect();
        for i in (1..head.len()).rev() {
            head.swap(i, rng.gen_range(0..=i));
        }
        let mut tail = vec![m - 1, m];
        if rng.gen::<bool>() {
            tail.swap(0, 1);
        }
        head.extend(tail);
        let pi = Permutation::new(head)?;
        let mu = (0..m).map(|_| rng.gen_range(0..q)).collect();
        let p = Theorem2Params {
            q,
            m,
            pi,
            mu,
            mu0: rng.gen_range(0..q),
        };
        p.validate()?;
        Ok(p)
    }
}

/// The eight offset selectors `D_1..D_8` of the optimal construction.
pub const OFFSET_TABLE: [(u8, u8, u8, u8); 8] = [
    (0, 0, 0, 0),
    (1, 0, 1, 0),
    (1, 1, 0, 0),
    (0, 1, 1, 0),
    (0, 0, 0, 1),
    (1, 0, 1, 1),
    (1, 1, 0, 1),
    (0, 1, 1, 1),
];

/// The Boolean-function pairs `(a_k, b_k)` of the optimal construction,
/// exposed for white-box testing of the cancellation argument.
pub fn theorem2_gbfs(p: &Theorem2Params) -> Result<Vec<(Gbf, Gbf)>> {
    p.validate()?;
    let (q, m) = (p.q, p.m);
    let h = q / 2;
    let mut f = Gbf::new(q, m)?;
    for s in 1..=m - 2 {
        f.add_term(&[p.pi.apply(s), p.pi.apply(s + 1)], h)?;
    }
    for s in 1..=m {
        f.add_term(&[s], p.mu[(s - 1) as usize])?;
    }
    f.add_term(&[], p.mu0)?;

    let pm2 = p.pi.apply(m - 2);
    let pm1 = p.pi.apply(m - 1);
    let pm = p.pi.apply(m);
    let mut out = Vec::with_capacity(8);
    for &(d1, d2, d3, d4) in &OFFSET_TABLE {
        let mut a = f.clone();
        if d1 == 1 {
            a.add_term(&[pm2], h)?;
            a.add_term(&[pm2, pm], h)?;
        }
        if d2 == 1 {
            a.add_term(&[pm1], h)?;
            a.add_term(&[pm2, pm], h)?;
        }
        if d3 == 1 {
            a.add_term(&[pm], h)?;
            a.add_term(&[pm1, pm], h)?;
        }
        if d4 == 1 {
            a.add_term(&[pm1], h)?;
            a.add_term(&[pm2, pm], h)?;
            a.add_term(&[pm1, pm], h)?;
        }
        let b = a.clone().with_term(&[p.pi.apply(1)], h)?;
        out.push((a, b));
    }
    Ok(out)
}

/// Optimal `(8, 2, 2^m, 2^{m-2}-1)`-SZCCS.
pub fn theorem2_szccs(p: &Theorem2Params) -> Result<CodeSet> {
    let codes = theorem2_gbfs(p)?
        .into_iter()
        .map(|(a, b)| vec![a.to_full_sequence(), b.to_full_sequence()])
        .collect();
    let mut set = CodeSet::from_codes(codes)?;
    let l = set.seq_len() as u64;
    let z = (1u64 << (p.m - 2)) - 1;
    let (max_k, optimal) = bound_check(8, 2, l, z);
    debug_assert!(optimal, "bound says max K = {max_k}");
    set.set_provenance("family", "quadratic-offset-octet");
    set.set_provenance("q", p.q);
    set.set_provenance("m", p.m);
    set.set_provenance("target_z", z);
    Ok(set)
}

/// Parameters of the non-power-of-two `(2, 2, 2^{m-1}+2^v, 2^v-1)`-SZCCS
/// construction.
#[derive(Debug, Clone)]
pub struct Theorem3Params {
    pub q: u32,
    pub m: u32,
    /// Zone exponent: `1 ≤ v < m-1`, giving `Z = 2^v - 1`.
    pub v: u32,
    pub pi: Permutation,
    /// Coefficients `λ_1..λ_{m-1}` of the `x_{π(s)}·x_m` cross terms.
    /// Entries with `s < v` must be zero (see [`Self::validate`]).
    pub lambda: Vec<u32>,
    /// Linear coefficients `μ_1..μ_m`.
    pub mu: Vec<u32>,
    /// Constant term `μ`.
    pub mu0: u32,
}

impl Theorem3Params {
    pub fn validate(&self) -> Result<()> {
        if self.q < 2 || self.q % 2 != 0 {
            return Err(Error::InvalidParameter("q must be even".into()));
        }
        if self.m < 3 {
            return Err(Error::InvalidParameter(format!(
                "m must be >= 3, got {}",
                self.m
            )));
        }
        if self.v < 1 || self.v >= self.m - 1 {
            return Err(Error::InvalidParameter(format!(
                "v={} outside 1..={}",
                self.v,
                self.m - 2
            )));
        }
        if self.pi.m() != self.m {
            return Err(Error::InvalidParameter(
                "permutation size does not match m".into(),
            ));
        }
        let mut front: Vec<u32> = (1..=self.v).map(|k| self.pi.apply(k)).collect();
        front.sort_unstable();
        if front != (1..=self.v).collect::<Vec<_>>() {
            return Err(Error::InvalidParameter(format!(
                "permutation must satisfy {{pi(1..v)}} = {{1..{}}}",
                self.v
            )));
        }
        if self.pi.apply(self.m) != self.m {
            return Err(Error::InvalidParameter(
                "permutation must satisfy pi(m) = m".into(),
            ));
        }
        if self.lambda.len() != (self.m - 1) as usize {
            return Err(Error::InvalidParameter(format!(
                "expected {} lambda coefficients, got {}",
                self.m - 1,
                self.lambda.len()
            )));
        }
        // The cross coefficients that touch the front zone must vanish:
        // a nonzero λ_s with s < v breaks the zone after truncation
        // (exhaustive checks over q ∈ {2,4}, m ≤ 5 show the verdict flips
        // on exactly this condition).
        for s in 1..self.v {
            if self.lambda[(s - 1) as usize] != 0 {
                return Err(Error::InvalidParameter(format!(
                    "lambda_{s} must be 0 for s < v = {}",
                    self.v
                )));
            }
        }
        if self.mu.len() != self.m as usize {
            return Err(Error::InvalidParameter(format!(
                "expected {} linear coefficients, got {}",
                self.m,
                self.mu.len()
            )));
        }
        Ok(())
    }

    /// Draw a uniformly random valid parameter set for given `(q, m, v)`.
    pub fn random(q: u32, m: u32, v: u32, rng: &mut impl Rng) -> Result<Self> {
        if m < 3 || v < 1 || v >= m - 1 {
            return Err(Error::InvalidParameter("need m >= 3, 1 <= v < m-1".into()));
        }
        let mut front: Vec<u32> = (1..=v).collect();
        for i in (1..front.len()).rev() {
            front.swap(i, rng.gen_range(0..=i));
        }
        let mut middle: Vec<u32> = (v + 1..m).collect();
        for i in (1..middle.len().max(1)).rev() {
            middle.swap(i, rng.gen_range(0..=i));
        }
        front.extend(middle);
        front.push(m);
        let pi = Permutation::new(front)?;
        let p = Theorem3Params {
            q,
            m,
            v,
            pi,
            lambda: (1..m)
                .map(|s| if s < v { 0 } else { rng.gen_range(0..q) })
                .collect(),
            mu: (0..m).map(|_| rng.gen_range(0..q)).collect(),
            mu0: rng.gen_range(0..q),
        };
        p.validate()?;
        Ok(p)
    }
}

/// The Boolean-function quadruples `(a_k, b_k, c_k, d_k)` of the
/// non-power-of-two construction, before truncation.
pub fn theorem3_gbfs(p: &Theorem3Params) -> Result<Vec<[Gbf; 4]>> {
    p.validate()?;
    let (q, m) = (p.q, p.m);
    let h = q / 2;
    let mut g = Gbf::new(q, m)?;
    for s in 1..=m - 2 {
        g.add_term(&[p.pi.apply(s), p.pi.apply(s + 1)], h)?;
    }
    for s in 1..=m - 1 {
        g.add_term(&[p.pi.apply(s), m], p.lambda[(s - 1) as usize])?;
    }
    for s in 1..=m {
        g.add_term(&[s], p.mu[(s - 1) as usize])?;
    }
    g.add_term(&[], p.mu0)?;

    let mut out = Vec::with_capacity(2);
    for k in 0..2u32 {
        let mut a = g.clone();
        if k == 1 {
            a.add_term(&[m - 1], h)?;
            a.add_term(&[m, p.pi.apply(p.v)], h)?;
        }
        let b = a.clone().with_term(&[p.pi.apply(1)], h)?;
        let c = a.clone().with_term(&[m], h)?;
        let d = c.clone().with_term(&[p.pi.apply(1)], h)?;
        out.push([a, b, c, d]);
    }
    Ok(out)
}

/// The pair of `(2, 2, 2^{m-1}+2^v, 2^v-1)`-SZCCSs `(S, S')` with
/// `S_k = {ψ(a_k), ψ(b_k)}` and `S'_k = {ψ(c_k), ψ(d_k)}`, truncated to
/// length `L = 2^{m-1} + 2^v`.
pub fn theorem3_szccs(p: &Theorem3Params) -> Result<(CodeSet, CodeSet)> {
    let l = (1usize << (p.m - 1)) + (1usize << p.v);
    let quads = theorem3_gbfs(p)?;
    let build = |pick: [usize; 2]| -> Result<CodeSet> {
        let codes = quads
            .iter()
            .map(|quad| {
                Ok(vec![
                    quad[pick[0]].to_sequence(l)?,
                    quad[pick[1]].to_sequence(l)?,
                ])
            })
            .collect::<Result<Vec<_>>>()?;
        let mut set = CodeSet::from_codes(codes)?;
        set.set_provenance("family", "truncated-quadratic-pair");
        set.set_provenance("q", p.q);
        set.set_provenance("m", p.m);
        set.set_provenance("v", p.v);
        set.set_provenance("target_z", (1u32 << p.v) - 1);
        Ok(set)
    };
    Ok((build([0, 1])?, build([2, 3])?))
}

/// Zadoff-Chu sequence of length `L` with root `r` coprime to `L`:
/// `s(n) = exp(-jπ·r·n²/L)` for even `L`, `exp(-jπ·r·n(n+1)/L)` for odd.
///
/// Returned as exponents over `Z_{2L}` (even `L`) or `Z_L` (odd `L`), so
/// downstream arithmetic sees an exact unimodular alphabet.
pub fn zadoff_chu(l: usize, root: u64) -> Result<UnimodularSequence> {
    if l == 0 {
        return Err(Error::InvalidParameter("length must be positive".into()));
    }
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    if gcd(root, l as u64) != 1 {
        return Err(Error::InvalidParameter(format!(
            "root {root} not coprime to length {l}"
        )));
    }
    let (q, exps): (u32, Vec<u32>) = if l % 2 == 0 {
        // exp(-jπ r n²/L) = ξ_{2L}^{-r n²}
        let q = 2 * l as u64;
        (
            q as u32,
            (0..l as u64)
                .map(|n| ((q - (root * ((n * n) % q)) % q) % q) as u32)
                .collect(),
        )
    } else {
        // exp(-jπ r n(n+1)/L) = ξ_L^{-r n(n+1)/2}
        let q = l as u64;
        (
            q as u32,
            (0..q)
                .map(|n| {
                    let t = (n * (n + 1) / 2) % q;
                    ((q - (root * t) % q) % q) as u32
                })
                .collect(),
        )
    };
    UnimodularSequence::new(q, exps)
}

/// Seedable, platform-independent random ±1 sequence.  The generator is a
/// splitmix-style 64-bit mixer; each entry takes the sign of one output bit.
pub fn random_binary(l: usize, seed: u64) -> Result<UnimodularSequence> {
    if l == 0 {
        return Err(Error::InvalidParameter("length must be positive".into()));
    }
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    UnimodularSequence::new(2, (0..l).map(|_| (next() >> 63) as u32).collect())
}

/// The printed `(16, 8)` cross-Z-complementary pair used as the
/// spatial-modulation training baseline.
pub fn czcp_fixture() -> (UnimodularSequence, UnimodularSequence) {
    let a = [1, 1, 1, -1, 1, 1, -1, 1, 1, -1, 1, 1, 1, -1, -1, -1];
    let b = [1, 1, 1, -1, 1, 1, -1, 1, -1, 1, -1, -1, -1, 1, 1, 1];
    let to_seq = |v: &[i32]| {
        UnimodularSequence::new(2, v.iter().map(|&x| (x < 0) as u32).collect())
            .expect("fixture is nonempty")
    };
    (to_seq(&a), to_seq(&b))
}

/// Render a slice of ±1 / complex entries for the fixture-style tests.
pub fn to_complex(seq: &UnimodularSequence) -> Vec<Complex64> {
    seq.render_complex()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codeset::verify_gcp;
    use crate::corr::periodic_ccf;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lemma1_smallest_cases() {
        // m=2, identity, zero linear: a = x1x2 -> (1,1,1,-1); b adds x1.
        let pi = Permutation::identity(2);
        let (a, b) = lemma1_gcp(2, &pi, &[0, 0], 0, Lemma1Variant::B).unwrap();
        assert_eq!(a.exponents(), &[0, 0, 0, 1]);
        assert_eq!(b.exponents(), &[0, 1, 0, 0]);
        assert!(verify_gcp(&a, &b).unwrap().pass);

        // m=1 gives a length-2 GCP.
        let pi = Permutation::identity(1);
        let (a, b) = lemma1_gcp(2, &pi, &[0], 0, Lemma1Variant::B).unwrap();
        assert_eq!(a.len(), 2);
        assert!(verify_gcp(&a, &b).unwrap().pass);
    }

    #[test]
    fn lemma1_randomized_q4() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for trial in 0..100 {
            let m = 3;
            let mut images: Vec<u32> = (1..=m).collect();
            for i in (1..images.len()).rev() {
                images.swap(i, rng.gen_range(0..=i));
            }
            let pi = Permutation::new(images).unwrap();
            let coeffs: Vec<u32> = (0..m).map(|_| rng.gen_range(0..4)).collect();
            let variant = if rng.gen() { Lemma1Variant::B } else { Lemma1Variant::C };
            let (a, b) = lemma1_gcp(4, &pi, &coeffs, rng.gen_range(0..4), variant).unwrap();
            let rep = verify_gcp(&a, &b).unwrap();
            assert!(rep.pass, "trial {trial} failed: {:?}", rep.violations);
        }
    }

    #[test]
    fn lemma1_rejects_odd_q() {
        let pi = Permutation::identity(2);
        assert!(lemma1_gcp(3, &pi, &[0, 0], 0, Lemma1Variant::B).is_err());
    }

    #[test]
    fn theorem2_base_code_relates_to_lemma1_pair() {
        // D_1 = 0, so code 1 is built from the bare quadratic f.  The f
        // chain stops at m-2: adding back the missing (π(m-1), π(m)) edge
        // must reproduce the Lemma-1 Golay pair with the same coefficients.
        let p = Theorem2Params {
            q: 4,
            m: 5,
            pi: Permutation::identity(5),
            mu: vec![1, 0, 3, 2, 1],
            mu0: 2,
        };
        let set = theorem2_szccs(&p).unwrap();
        let (la, lb) = lemma1_gcp(p.q, &p.pi, &p.mu, p.mu0, Lemma1Variant::B).unwrap();
        let edge = [p.pi.apply(p.m - 1), p.pi.apply(p.m)];
        let gbfs = theorem2_gbfs(&p).unwrap();
        let patched_a = gbfs[0].0.clone().with_term(&edge, p.q / 2).unwrap();
        let patched_b = gbfs[0].1.clone().with_term(&edge, p.q / 2).unwrap();
        assert_eq!(patched_a.to_full_sequence(), la);
        assert_eq!(patched_b.to_full_sequence(), lb);
        // Code 1 itself has the full front zone of a complementary pair
        // only up to the symmetric zone; its set auto-sum is still zero on
        // the whole target zone.
        let rep = set.verify_szccs((1 << (p.m - 2)) - 1).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn theorem2_small_instance_verifies() {
        let p = Theorem2Params {
            q: 2,
            m: 4,
            pi: Permutation::identity(4),
            mu: vec![0; 4],
            mu0: 0,
        };
        let mut set = theorem2_szccs(&p).unwrap();
        let rep = set.verify_and_tag(3).unwrap();
        assert!(rep.pass && rep.optimal && rep.exact);
        assert_eq!(rep.max_z, 3);
        assert_eq!(set.z(), Some(3));
    }

    #[test]
    fn theorem2_validates_permutation_constraint() {
        // pi must keep {m-1, m} in the last two slots.
        let p = Theorem2Params {
            q: 2,
            m: 4,
            pi: Permutation::new(vec![4, 2, 3, 1]).unwrap(),
            mu: vec![0; 4],
            mu0: 0,
        };
        assert!(theorem2_szccs(&p).is_err());
    }

    #[test]
    fn theorem3_small_instances_verify() {
        // Exhaustive shift check on the smallest case m=3, v=1 -> (2,2,6,1).
        let p = Theorem3Params {
            q: 2,
            m: 3,
            v: 1,
            pi: Permutation::identity(3),
            lambda: vec![0, 0],
            mu: vec![0; 3],
            mu0: 0,
        };
        let (s, s2) = theorem3_szccs(&p).unwrap();
        assert_eq!(s.seq_len(), 6);
        assert!(s.verify_szccs(1).unwrap().pass);
        assert!(s2.verify_szccs(1).unwrap().pass);

        // m=5, v=3 -> the (2,2,24,7) pair; not optimal (bound gives 6).
        let p = Theorem3Params {
            q: 2,
            m: 5,
            v: 3,
            pi: Permutation::identity(5),
            lambda: vec![0; 4],
            mu: vec![0; 5],
            mu0: 0,
        };
        let (s, s2) = theorem3_szccs(&p).unwrap();
        assert_eq!(s.seq_len(), 24);
        let rep = s.verify_szccs(7).unwrap();
        assert!(rep.pass && !rep.optimal);
        assert!(s2.verify_szccs(7).unwrap().pass);
    }

    #[test]
    fn theorem3_v_eq_m_minus_2_is_shorter_than_theorem2_at_same_z() {
        let m = 5u32;
        let v = m - 2;
        let l3 = (1usize << (m - 1)) + (1usize << v);
        let l2 = 1usize << m;
        assert!(l3 < l2);
        let p = Theorem3Params {
            q: 2,
            m,
            v,
            pi: Permutation::identity(m),
            lambda: vec![0; (m - 1) as usize],
            mu: vec![0; m as usize],
            mu0: 0,
        };
        let (s, _) = theorem3_szccs(&p).unwrap();
        assert_eq!(s.seq_len(), l3);
        assert!(s.verify_szccs((1 << v) - 1).unwrap().pass);
    }

    #[test]
    fn zadoff_chu_basics() {
        let s = zadoff_chu(32, 1).unwrap();
        let z = s.render_complex();
        assert!((z[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(z.len(), 32);
        assert!(zadoff_chu(32, 2).is_err());
        // Entry n matches the closed form.
        for (n, zn) in z.iter().enumerate() {
            let expect = Complex64::from_polar(1.0, -std::f64::consts::PI * (n * n) as f64 / 32.0);
            assert!((zn - expect).norm() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn zadoff_chu_ideal_periodic_autocorrelation() {
        for &(l, root) in &[(32usize, 3u64), (32, 7), (15, 2), (17, 5)] {
            let s = zadoff_chu(l, root).unwrap().render_complex();
            for u in 1..l as i64 {
                let v = periodic_ccf(&s, &s, u).unwrap();
                assert!(v.norm() < 1e-9, "L={l} root={root} u={u} -> {v}");
            }
        }
    }

    #[test]
    fn random_binary_deterministic_and_balanced() {
        let a = random_binary(32, 7).unwrap();
        let b = random_binary(32, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_binary(32, 8).unwrap());
        assert_eq!(a.len(), 32);
        // Empirical mean of entries over many draws is ~0.
        let mut sum = 0f64;
        let mut count = 0f64;
        for seed in 0..1000u64 {
            let s = random_binary(10, seed).unwrap();
            for &e in s.exponents() {
                sum += if e == 0 { 1.0 } else { -1.0 };
                count += 1.0;
            }
        }
        assert!((sum / count).abs() < 0.05);
    }

    #[test]
    fn czcp_fixture_matches_printed_pair() {
        let (a, b) = czcp_fixture();
        assert_eq!(a.len(), 16);
        assert_eq!(b.len(), 16);
        let av: Vec<f64> = a.render_complex().iter().map(|z| z.re).collect();
        assert_eq!(
            av,
            vec![1., 1., 1., -1., 1., 1., -1., 1., 1., -1., 1., 1., 1., -1., -1., -1.]
        );
        let bv: Vec<f64> = b.render_complex().iter().map(|z| z.re).collect();
        assert_eq!(
            bv,
            vec![1., 1., 1., -1., 1., 1., -1., 1., -1., 1., -1., -1., -1., 1., 1., 1.]
        );
    }
}
