//! Tail-swap maps on finite symbol words.
//!
//! Infinite sequences over `V` are modeled by finite prefixes; every map here
//! reports an explicit error when the stored prefix is too short instead of
//! truncating. Positions are 1-based throughout, as in `s = (s_1, s_2, ...)`.
//!
//! Given a good subgraph `(u, w, p, q, p*, q*)` of order `k`:
//!
//! * `tau_n(s)` is the start of the `n`-th occurrence (overlaps allowed) of
//!   `upw` or `uqw` in `s`;
//! * `omega_n` swaps `p` and `q` in that occurrence;
//! * `psi_n omega_n` drops the first `2k` symbols and replaces the swapped
//!   middle by `q p* q` (or `p q* p`), keeping every symbol past the block in
//!   place;
//! * `alpha(s, t)` is the free-group discrepancy between two eventually
//!   shift-equal sequences.

use std::fmt;

use num_traits::{One, Zero};
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::admissibility::{Block, GoodSubgraphCertificate};
use crate::chain::{MarkovSystem, StationaryDistribution};
use crate::freegroup::ReducedWord;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TailError {
    #[error("insufficient occurrences: needed {needed}, found {found}")]
    InsufficientOccurrences { needed: usize, found: usize },
    #[error("occurrence index must be at least 1")]
    ZeroIndex,
    #[error("degenerate window: tau = {tau} <= 2k = {two_k}")]
    DegenerateWindow { tau: usize, two_k: usize },
    #[error("word is not in the image of omega_{n}")]
    NotInImage { n: usize },
    #[error("shifted pair does not agree at position {position}")]
    InconsistentPair { position: usize },
    #[error("shifted pair index N + p = {0} is negative")]
    NegativeStart(i64),
}

/// The `n`-th occurrence of a swap block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Occurrence {
    /// 1-based start position (the `u`).
    pub position: usize,
    pub block: Block,
}

fn occurrences<'a>(
    s: &'a [usize],
    cert: &GoodSubgraphCertificate,
) -> impl Iterator<Item = Occurrence> + 'a {
    let upw = cert.block(Block::P);
    let uqw = cert.block(Block::Q);
    let len = cert.k + 2;
    (0..s.len().saturating_sub(len - 1)).filter_map(move |i| {
        let window = &s[i..i + len];
        let block = if window == upw.as_slice() {
            Block::P
        } else if window == uqw.as_slice() {
            Block::Q
        } else {
            return None;
        };
        Some(Occurrence {
            position: i + 1,
            block,
        })
    })
}

/// `tau_n(s)` together with which block occurs there.
pub fn tau(s: &[usize], cert: &GoodSubgraphCertificate, n: usize) -> Result<Occurrence, TailError> {
    if n == 0 {
        return Err(TailError::ZeroIndex);
    }
    let mut found = 0;
    for occ in occurrences(s, cert) {
        found += 1;
        if found == n {
            return Ok(occ);
        }
    }
    Err(TailError::InsufficientOccurrences { needed: n, found })
}

/// Swaps `p` and `q` at the `n`-th occurrence.
pub fn omega(s: &[usize], cert: &GoodSubgraphCertificate, n: usize) -> Result<Vec<usize>, TailError> {
    let occ = tau(s, cert, n)?;
    let replacement = match occ.block {
        Block::P => &cert.q,
        Block::Q => &cert.p,
    };
    let mut out = s.to_vec();
    out[occ.position..occ.position + cert.k].copy_from_slice(replacement);
    Ok(out)
}

/// `psi_n omega_n (s)` computed from `s`.
pub fn psi_omega(
    s: &[usize],
    cert: &GoodSubgraphCertificate,
    n: usize,
) -> Result<Vec<usize>, TailError> {
    let occ = tau(s, cert, n)?;
    let k = cert.k;
    if occ.position <= 2 * k {
        return Err(TailError::DegenerateWindow {
            tau: occ.position,
            two_k: 2 * k,
        });
    }
    let t = occ.position;
    let middle: [&[usize]; 3] = match occ.block {
        Block::P => [&cert.q, &cert.p_star, &cert.q],
        Block::Q => [&cert.p, &cert.q_star, &cert.p],
    };
    // s_[2k+1, tau] middle s_[tau+k+1, ..]
    let mut out = Vec::with_capacity(s.len());
    out.extend_from_slice(&s[2 * k..t]);
    for part in middle {
        out.extend_from_slice(part);
    }
    out.extend_from_slice(&s[t + k..]);
    Ok(out)
}

/// `psi_n` applied to a word `t` in the image of `omega_n`.
pub fn psi(t: &[usize], cert: &GoodSubgraphCertificate, n: usize) -> Result<Vec<usize>, TailError> {
    let s = omega(t, cert, n)?;
    if omega(&s, cert, n)? != t {
        return Err(TailError::NotInImage { n });
    }
    psi_omega(&s, cert, n)
}

/// Left shift by `count` symbols.
pub fn shift(s: &[usize], count: usize) -> Vec<usize> {
    s.get(count..).unwrap_or(&[]).to_vec()
}

/// Two words with `left_{p+i} = right_i` for every stored `i >= agree_from`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedPair {
    left: Vec<usize>,
    right: Vec<usize>,
    shift: i64,
    agree_from: usize,
}

impl ShiftedPair {
    pub fn new(
        left: Vec<usize>,
        right: Vec<usize>,
        shift: i64,
        agree_from: usize,
    ) -> Result<Self, TailError> {
        let start = agree_from as i64 + shift;
        if start < 0 {
            return Err(TailError::NegativeStart(start));
        }
        for i in agree_from.max(1)..=right.len() {
            let j = i as i64 + shift;
            if j < 1 || j as usize > left.len() {
                continue;
            }
            if left[j as usize - 1] != right[i - 1] {
                return Err(TailError::InconsistentPair { position: i });
            }
        }
        Ok(Self {
            left,
            right,
            shift,
            agree_from,
        })
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn agree_from(&self) -> usize {
        self.agree_from
    }

    /// The same pair with a larger agreement index.
    pub fn with_agree_from(&self, agree_from: usize) -> Result<Self, TailError> {
        Self::new(self.left.clone(), self.right.clone(), self.shift, agree_from)
    }
}

/// `L(left_1 .. left_{N+p}) * L(right_1 .. right_N)^-1`.
pub fn alpha(pair: &ShiftedPair, m: &MarkovSystem) -> Result<ReducedWord, TailError> {
    let n = pair.agree_from;
    let left_end = (n as i64 + pair.shift) as usize;
    if left_end > pair.left.len() {
        return Err(TailError::InsufficientOccurrences {
            needed: left_end,
            found: pair.left.len(),
        });
    }
    if n > pair.right.len() {
        return Err(TailError::InsufficientOccurrences {
            needed: n,
            found: pair.right.len(),
        });
    }
    let mut out = m.path_label(&pair.left[..left_end]);
    out.append(&m.path_label(&pair.right[..n]).invert());
    Ok(out)
}

/// `1/n` where `n` is the first position at which the words differ.
///
/// Words agreeing on their whole common prefix are at distance 0; on finite
/// truncations this only says they agree as far as they are stored.
pub fn word_distance(s: &[usize], t: &[usize]) -> Rational {
    match s.iter().zip(t).position(|(a, b)| a != b) {
        Some(i) => rational::ratio(1, i as i64 + 1),
        None => Rational::zero(),
    }
}

/// Bounds on the weight ratios of the swap maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RnBound {
    /// Largest ratio between the `upw` and `uqw` block weights (either way round).
    pub omega_ratio: Rational,
    /// Largest ratio for `psi omega`, including the `2k` dropped transitions.
    pub psi_ratio: Rational,
    /// `max(1, omega_ratio, psi_ratio)`.
    pub c: Rational,
}

/// Explicit constant `C` with every swapped-prefix weight ratio in `[1/C, C]`.
///
/// A prefix through the end of an occurrence at `tau` has weight
/// `weight(s_1..s_tau) * weight(block)`. Swapping `p`, `q` only changes the
/// block factor. The `psi omega` image replaces `weight(s_1..s_{2k+1})`
/// (between `min^2k` and `max^2k` over positive entries) and the block by the
/// `u q p* q w` (or `u p q* p w`) weight.
pub fn rn_bound(m: &MarkovSystem, cert: &GoodSubgraphCertificate) -> RnBound {
    let upw = cert.block(Block::P);
    let uqw = cert.block(Block::Q);
    let w_p = m.sequence_weight(&upw);
    let w_q = m.sequence_weight(&uqw);
    let omega_ratio = max_ratio(&w_p, &w_q);

    let positive: Vec<&Rational> = m
        .matrix()
        .iter()
        .flatten()
        .filter(|e| rational::is_positive(e))
        .collect();
    let min_e = positive.iter().copied().min().expect("stochastic rows").clone();
    let max_e = positive.iter().copied().max().expect("stochastic rows").clone();
    let two_k = 2 * cert.k as i32;
    let lo = num_traits::pow::Pow::pow(&min_e, two_k as u32);
    let hi = num_traits::pow::Pow::pow(&max_e, two_k as u32);

    let psi_block = |which: Block| {
        let (a, b) = match which {
            Block::P => (&cert.q, &cert.p_star),
            Block::Q => (&cert.p, &cert.q_star),
        };
        let seq: Vec<usize> = std::iter::once(cert.u)
            .chain(a.iter().copied())
            .chain(b.iter().copied())
            .chain(a.iter().copied())
            .chain(std::iter::once(cert.w))
            .collect();
        m.sequence_weight(&seq)
    };
    let mut psi_ratio = Rational::one();
    for (which, w_block) in [(Block::P, &w_p), (Block::Q, &w_q)] {
        let w_psi = psi_block(which);
        // ratio = w_psi / (x * w_block) for x in [lo, hi]
        let upper = &w_psi / (&lo * w_block);
        let lower = &w_psi / (&hi * w_block);
        psi_ratio = psi_ratio.max(upper).max(lower.recip());
    }
    let c = Rational::one().max(omega_ratio.clone()).max(psi_ratio.clone());
    RnBound {
        omega_ratio,
        psi_ratio,
        c,
    }
}

fn max_ratio(a: &Rational, b: &Rational) -> Rational {
    let r = a / b;
    if r >= Rational::one() {
        r
    } else {
        r.recip()
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Exact finite-word checks of the swap-map estimates for one word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop22Report {
    pub n: usize,
    pub tau: usize,
    pub alpha_psi: String,
    pub alpha_shift: String,
    pub checks: Vec<CheckOutcome>,
}

impl Prop22Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// A `psi omega` implementation, pluggable so the checker can be mutation tested.
pub type PsiOmegaFn = dyn Fn(&[usize], &GoodSubgraphCertificate, usize) -> Result<Vec<usize>, TailError>;

pub fn check_prop22(
    m: &MarkovSystem,
    cert: &GoodSubgraphCertificate,
    s: &[usize],
    n: usize,
) -> Result<Prop22Report, TailError> {
    check_prop22_with(m, cert, s, n, &psi_omega)
}

pub fn check_prop22_with(
    m: &MarkovSystem,
    cert: &GoodSubgraphCertificate,
    s: &[usize],
    n: usize,
    psi_omega_impl: &PsiOmegaFn,
) -> Result<Prop22Report, TailError> {
    let k = cert.k;
    let occ = tau(s, cert, n)?;
    let t = occ.position;
    if t <= 2 * k {
        return Err(TailError::DegenerateWindow { tau: t, two_k: 2 * k });
    }
    if t + k + 1 > s.len() {
        return Err(TailError::InsufficientOccurrences {
            needed: t + k + 1,
            found: s.len(),
        });
    }
    let alphabet = m.alphabet();
    let om = omega(s, cert, n)?;
    let po = psi_omega_impl(s, cert, n)?;
    let shifted = shift(&om, 2 * k);
    let mut checks = Vec::new();
    let mut record = |name: &'static str, passed: bool, detail: String| {
        checks.push(CheckOutcome {
            name,
            passed,
            detail,
        })
    };

    // (1) d(psi omega s, sigma^2k omega s) <= 1/(tau - k)
    let d1 = word_distance(&po, &shifted);
    let b1 = rational::ratio(1, (t - k) as i64);
    record("distance_psi_shift", d1 <= b1, format!("{d1} <= {b1}"));

    // (2) d(s, omega s) <= 1/tau
    let d2 = word_distance(s, &om);
    let b2 = rational::ratio(1, t as i64);
    record("distance_omega", d2 <= b2, format!("{d2} <= {b2}"));

    // omega is an involution and only touches the swapped middle.
    let back = omega(&om, cert, n).ok();
    record(
        "omega_involution",
        back.as_deref() == Some(s),
        format!("tau_n(omega s) = {:?}", tau(&om, cert, n).ok().map(|o| o.position)),
    );
    let local = s
        .iter()
        .zip(&om)
        .enumerate()
        .all(|(i, (a, b))| a == b || (t + 1..=t + k).contains(&(i + 1)));
    record("omega_locality", local, format!("changes confined to [{}, {}]", t + 1, t + k));

    // psi omega s agrees with omega s past tau.
    let tail_ok = po.len() == om.len() && po[t..] == om[t..];
    record("psi_tail_agreement", tail_ok, format!("positions > {t}"));

    // (4) alpha(psi omega s, omega s) = alpha(sigma^2k omega s, s)
    let pair_psi = ShiftedPair::new(po.clone(), om.clone(), 0, t + 1);
    let pair_shift = ShiftedPair::new(shifted.clone(), s.to_vec(), -(2 * k as i64), t + k + 1);
    let (alpha_psi, alpha_shift) = match (pair_psi, pair_shift) {
        (Ok(a), Ok(b)) => (alpha(&a, m)?, alpha(&b, m)?),
        (a, b) => {
            let why = a.err().or(b.err()).map(|e| e.to_string()).unwrap_or_default();
            record("cocycle_identity", false, why);
            return Ok(Prop22Report {
                n,
                tau: t,
                alpha_psi: String::new(),
                alpha_shift: String::new(),
                checks,
            });
        }
    };
    let fa = alphabet.format(&alpha_psi);
    let fb = alphabet.format(&alpha_shift);
    record("cocycle_identity", alpha_psi == alpha_shift, format!("{fa} = {fb}"));

    // Weight ratios of the swapped prefixes lie in [1/C, C].
    let bound = rn_bound(m, cert);
    let c = &bound.c;
    let c_inv = c.recip();
    let end = t + k + 1;
    let base = m.sequence_weight(&s[..end]);
    if rational::is_positive(&base) {
        let r_omega = m.sequence_weight(&om[..end]) / &base;
        record(
            "rn_ratio_omega",
            c_inv <= r_omega && &r_omega <= c,
            format!("{r_omega} in [{c_inv}, {c}]"),
        );
        let r_psi = m.sequence_weight(&po[..end]) / &base;
        record(
            "rn_ratio_psi",
            c_inv <= r_psi && &r_psi <= c,
            format!("{r_psi} in [{c_inv}, {c}]"),
        );
    } else {
        record("rn_ratio_omega", false, "word is not a directed path".into());
    }

    Ok(Prop22Report {
        n,
        tau: t,
        alpha_psi: fa,
        alpha_shift: fb,
        checks,
    })
}

/// Samples a length-`len` prefix from the Markov measure: `s_len ~ nu`, then
/// `s_i ~ P[s_{i+1}][.]`.
pub fn sample_word<R: Rng>(
    m: &MarkovSystem,
    nu: &StationaryDistribution,
    len: usize,
    rng: &mut R,
) -> Vec<usize> {
    if len == 0 {
        return Vec::new();
    }
    let last = WeightedIndex::new(nu.weights().iter().map(rational::to_f64))
        .expect("positive stationary weights");
    let rows: Vec<WeightedIndex<f64>> = m
        .matrix()
        .iter()
        .map(|row| WeightedIndex::new(row.iter().map(rational::to_f64)).expect("stochastic row"))
        .collect();
    let mut out = vec![0; len];
    out[len - 1] = last.sample(rng);
    for i in (0..len - 1).rev() {
        out[i] = rows[out[i + 1]].sample(rng);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    /// Sampled words discarded for lacking `n` complete occurrences.
    pub resampled: usize,
    pub first_failure: Option<Prop22Report>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.passed == self.trials
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{} passed, {} failed, {} resampled",
            self.passed, self.trials, self.failed, self.resampled
        )
    }
}

/// Runs [`check_prop22`] on `trials` sampled words of length `word_len`,
/// using occurrence index `n` (at least `2k + 2`). Deterministic in `seed`.
pub fn run_suite(
    m: &MarkovSystem,
    cert: &GoodSubgraphCertificate,
    trials: usize,
    word_len: usize,
    n: usize,
    seed: u64,
) -> Result<SuiteReport, crate::chain::ChainError> {
    let nu = m.stationary_distribution()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport {
        trials,
        passed: 0,
        failed: 0,
        resampled: 0,
        first_failure: None,
    };
    // Bail out of hopeless resampling (e.g. blocks of zero probability).
    let max_resamples = 1000 * trials.max(1);
    while report.passed + report.failed < trials {
        let s = sample_word(m, &nu, word_len, &mut rng);
        match check_prop22(m, cert, &s, n) {
            Ok(r) if r.passed() => report.passed += 1,
            Ok(r) => {
                report.failed += 1;
                report.first_failure.get_or_insert(r);
            }
            Err(_) => {
                report.resampled += 1;
                if report.resampled > max_resamples {
                    report.failed = trials - report.passed;
                    break;
                }
            }
        }
    }
    Ok(report)
}
