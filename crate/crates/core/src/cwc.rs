//! Binary constant-weight codes: data model and verification.
//!
//! Codewords are kept as sorted supports (the indices of their ones), which
//! is far more compact than bitmaps for the sparse codes built here.

use crate::error::{Error, Result};
use crate::real::{log2_biguint, Fixed};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CwCodeword {
    blocklength: u64,
    support: Vec<u64>,
}

impl CwCodeword {
    /// Builds a codeword from an arbitrary list of one-positions.
    /// Duplicates are rejected; order does not matter.
    pub fn new(blocklength: u64, mut support: Vec<u64>) -> Result<Self> {
        support.sort_unstable();
        if support.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCodeword("repeated support index".into()));
        }
        if let Some(&last) = support.last() {
            if last >= blocklength {
                return Err(Error::InvalidCodeword(format!(
                    "index {last} outside blocklength {blocklength}"
                )));
            }
        }
        Ok(CwCodeword {
            blocklength,
            support,
        })
    }

    pub(crate) fn from_sorted(blocklength: u64, support: Vec<u64>) -> Self {
        debug_assert!(support.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(support.last().is_none_or(|&l| l < blocklength));
        CwCodeword {
            blocklength,
            support,
        }
    }

    pub fn blocklength(&self) -> u64 {
        self.blocklength
    }

    pub fn support(&self) -> &[u64] {
        &self.support
    }

    pub fn weight(&self) -> u64 {
        self.support.len() as u64
    }

    pub fn contains(&self, pos: u64) -> bool {
        self.support.binary_search(&pos).is_ok()
    }

    /// Dense 0/1 rendering, mostly for tests and small examples.
    pub fn to_bit_string(&self) -> String {
        let mut s = vec![b'0'; self.blocklength as usize];
        for &i in &self.support {
            s[i as usize] = b'1';
        }
        String::from_utf8(s).unwrap()
    }
}

/// Number of positions where both codewords carry a one.
pub fn cross_correlation(a: &CwCodeword, b: &CwCodeword) -> Result<u64> {
    if a.blocklength != b.blocklength {
        return Err(Error::BlocklengthMismatch(
            a.blocklength as usize,
            b.blocklength as usize,
        ));
    }
    Ok(sorted_intersection(&a.support, &b.support))
}

pub(crate) fn sorted_intersection(a: &[u64], b: &[u64]) -> u64 {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Code size kept as `base^exponent` so that doubly-exponential sizes never
/// need to be materialised to take logarithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSize {
    pub base: u64,
    pub exponent: u64,
}

impl CodeSize {
    pub fn exact(n: u64) -> Self {
        CodeSize {
            base: n,
            exponent: 1,
        }
    }

    pub fn power(base: u64, exponent: u64) -> Self {
        CodeSize { base, exponent }
    }

    pub fn value(&self) -> BigUint {
        Pow::pow(BigUint::from(self.base), self.exponent)
    }

    /// The value when it fits in a `u64`.
    pub fn to_u64(&self) -> Option<u64> {
        let e = u32::try_from(self.exponent).ok()?;
        self.base.checked_pow(e)
    }

    /// `self^k`, i.e. the size after an outer code of dimension `k`.
    pub fn pow(&self, k: u64) -> CodeSize {
        if self.base <= 1 {
            return self.clone();
        }
        CodeSize {
            base: self.base,
            exponent: self.exponent * k,
        }
    }

    /// log2 of the size, computed as `exponent * log2(base)`.
    pub fn log2(&self, frac_bits: u32) -> Fixed {
        log2_biguint(&BigUint::from(self.base), frac_bits).mul_int(self.exponent as i64)
    }

    pub fn same_value(&self, other: &CodeSize) -> bool {
        match (self.to_u64(), other.to_u64()) {
            (Some(a), Some(b)) => a == b,
            _ => self.value() == other.value(),
        }
    }
}

impl fmt::Display for CodeSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{}^{}", self.base, self.exponent)
        }
    }
}

/// Parameters `(S, N, W, K)` of a binary constant-weight code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeParams {
    pub s: u64,
    pub n: CodeSize,
    pub w: u64,
    pub k: u64,
}

impl CodeParams {
    pub fn new(s: u64, n: CodeSize, w: u64, k: u64) -> Result<Self> {
        if !(k <= w && w <= s) {
            return Err(Error::DegenerateParams(format!(
                "need 0 <= K <= W <= S, got S={s} W={w} K={k}"
            )));
        }
        if n.base == 0 {
            return Err(Error::DegenerateParams("N must be at least 1".into()));
        }
        Ok(CodeParams { s, n, w, k })
    }

    pub fn small(s: u64, n: u64, w: u64, k: u64) -> Result<Self> {
        Self::new(s, CodeSize::exact(n), w, k)
    }
}

impl Serialize for CodeParams {
    fn serialize<Sr: Serializer>(&self, ser: Sr) -> std::result::Result<Sr::Ok, Sr::Error> {
        let mut st = ser.serialize_struct("CodeParams", 6)?;
        st.serialize_field("S", &self.s)?;
        st.serialize_field("N", &self.n.value().to_string())?;
        st.serialize_field("N_base", &self.n.base)?;
        st.serialize_field("N_exponent", &self.n.exponent)?;
        st.serialize_field("W", &self.w)?;
        st.serialize_field("K", &self.k)?;
        st.end()
    }
}

/// Minimum distance `2(W - K)` of a code with the given parameters.
pub fn min_distance_from_params(params: &CodeParams) -> u64 {
    2 * (params.w - params.k)
}

#[derive(Debug, Clone)]
pub struct CwcFamily {
    blocklength: u64,
    codewords: Vec<CwCodeword>,
    claimed: CodeParams,
}

impl CwcFamily {
    pub fn new(blocklength: u64, codewords: Vec<CwCodeword>, claimed: CodeParams) -> Result<Self> {
        if codewords.is_empty() {
            return Err(Error::DegenerateFamily("family has no codewords".into()));
        }
        Ok(CwcFamily {
            blocklength,
            codewords,
            claimed,
        })
    }

    pub fn blocklength(&self) -> u64 {
        self.blocklength
    }

    pub fn codewords(&self) -> &[CwCodeword] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn claimed(&self) -> &CodeParams {
        &self.claimed
    }

    /// Keeps the first `n` codewords and updates the claimed size.
    pub(crate) fn truncate(mut self, n: usize) -> Self {
        self.codewords.truncate(n);
        self.claimed.n = CodeSize::exact(n as u64);
        self
    }

    /// Parameters actually exhibited: `(S, N, W, K_actual)`, taking the
    /// largest weight. Intended for constant-weight families.
    pub fn actual_params(&self) -> CodeParams {
        let report = verify_cwc(self);
        CodeParams {
            s: self.blocklength,
            n: CodeSize::exact(self.len() as u64),
            w: report.w_max,
            k: report.k_actual,
        }
    }
}

/// On-disk family format shared by `construct` and `verify`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FamilyFile {
    pub blocklength: u64,
    pub codewords: Vec<Vec<u64>>,
    pub claimed: ClaimedParams,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[allow(non_snake_case)]
pub struct ClaimedParams {
    pub S: u64,
    pub N: u64,
    pub W: u64,
    pub K: u64,
}

impl FamilyFile {
    pub fn from_family(fam: &CwcFamily) -> Result<Self> {
        let c = fam.claimed();
        let n =
            c.n.to_u64()
                .ok_or_else(|| Error::CodeTooLarge(c.n.to_string()))?;
        Ok(FamilyFile {
            blocklength: fam.blocklength,
            codewords: fam.codewords.iter().map(|c| c.support.clone()).collect(),
            claimed: ClaimedParams {
                S: c.s,
                N: n,
                W: c.w,
                K: c.k,
            },
        })
    }

    pub fn into_family(self) -> Result<CwcFamily> {
        let claimed = CodeParams::small(
            self.claimed.S,
            self.claimed.N,
            self.claimed.W,
            self.claimed.K,
        )?;
        let words = self
            .codewords
            .into_iter()
            .map(|s| CwCodeword::new(self.blocklength, s))
            .collect::<Result<Vec<_>>>()?;
        CwcFamily::new(self.blocklength, words, claimed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub blocklength: u64,
    pub n: u64,
    pub w_min: u64,
    pub w_max: u64,
    /// Largest overlap over distinct pairs (0 for a single codeword).
    pub k_actual: u64,
    /// A pair attaining `k_actual`, if there are at least two codewords.
    pub attaining_pair: Option<(usize, usize)>,
    pub min_distance: Option<u64>,
    pub claimed: CodeParams,
    pub pass: bool,
    pub failures: Vec<String>,
}

/// Exhaustive check of a family against its claimed parameters.
/// Mismatches are recorded in the report, never raised.
pub fn verify_cwc(fam: &CwcFamily) -> VerificationReport {
    let words = &fam.codewords;
    let mut failures = Vec::new();
    let w_min = words.iter().map(CwCodeword::weight).min().unwrap_or(0);
    let w_max = words.iter().map(CwCodeword::weight).max().unwrap_or(0);

    for (j, c) in words.iter().enumerate() {
        if c.blocklength != fam.blocklength {
            failures.push(format!("codeword {j} has blocklength {}", c.blocklength));
        }
    }

    let mut k_actual = 0;
    let mut attaining_pair = None;
    let mut min_distance: Option<u64> = None;
    for a in 0..words.len() {
        for b in a + 1..words.len() {
            let g = sorted_intersection(&words[a].support, &words[b].support);
            if attaining_pair.is_none() || g > k_actual {
                k_actual = g;
                attaining_pair = Some((a, b));
            }
            let d = words[a].weight() + words[b].weight() - 2 * g;
            min_distance = Some(min_distance.map_or(d, |m| m.min(d)));
        }
    }

    let claimed = fam.claimed.clone();
    if claimed.s != fam.blocklength {
        failures.push(format!(
            "blocklength {} != claimed S {}",
            fam.blocklength, claimed.s
        ));
    }
    if claimed.n.to_u64() != Some(words.len() as u64) {
        failures.push(format!(
            "{} codewords != claimed N {}",
            words.len(),
            claimed.n
        ));
    }
    if w_min != claimed.w || w_max != claimed.w {
        failures.push(format!(
            "weights in [{w_min}, {w_max}] != claimed W {}",
            claimed.w
        ));
    }
    if k_actual > claimed.k {
        failures.push(format!(
            "overlap {k_actual} exceeds claimed K {}",
            claimed.k
        ));
    }

    VerificationReport {
        blocklength: fam.blocklength,
        n: words.len() as u64,
        w_min,
        w_max,
        k_actual,
        attaining_pair,
        min_distance,
        pass: failures.is_empty(),
        claimed,
        failures,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CyclicCorrelations {
    pub max_auto: u64,
    pub max_cross: u64,
}

/// Maximum cyclic auto-correlation (nonzero shifts) and cross-correlation
/// (all shifts, distinct pairs) of a family.
///
/// The correlation of supports A and B at shift t counts pairs (a, b) with
/// b - a = t mod S, so each pair costs O(W^2) rather than O(S W).
pub fn cyclic_correlations(fam: &CwcFamily) -> CyclicCorrelations {
    let s = fam.blocklength;
    let mut counts = vec![0u64; s as usize];
    let mut touched = Vec::new();
    let mut peak = |a: &[u64], b: &[u64], skip_zero: bool| -> u64 {
        let mut best = 0;
        for &x in a {
            for &y in b {
                let t = ((y + s - x) % s) as usize;
                if counts[t] == 0 {
                    touched.push(t);
                }
                counts[t] += 1;
            }
        }
        for &t in &touched {
            if !(skip_zero && t == 0) {
                best = best.max(counts[t]);
            }
            counts[t] = 0;
        }
        touched.clear();
        best
    };

    let words = &fam.codewords;
    let mut max_auto = 0;
    let mut max_cross = 0;
    for (j, c) in words.iter().enumerate() {
        max_auto = max_auto.max(peak(&c.support, &c.support, true));
        for d in &words[j + 1..] {
            max_cross = max_cross.max(peak(&c.support, &d.support, false));
        }
    }
    CyclicCorrelations {
        max_auto,
        max_cross,
    }
}

/// The three quantities that tend to (1, 1, 0) for ID-optimal code sequences.
#[derive(Debug, Clone)]
pub struct OptimalityMetrics {
    /// log W / log S
    pub weight_factor: Fixed,
    /// log log N / log S
    pub second_order_rate: Fixed,
    /// K / W exactly
    pub overlap_fraction: BigRational,
}

pub fn optimality_metrics(params: &CodeParams, frac_bits: u32) -> Result<OptimalityMetrics> {
    if params.s < 2 || params.w < 1 {
        return Err(Error::DegenerateParams("need S >= 2 and W >= 1".into()));
    }
    let log_n = params.n.log2(frac_bits);
    if !log_n.is_positive() {
        return Err(Error::DegenerateParams("need N >= 2".into()));
    }
    let log_s = log2_biguint(&BigUint::from(params.s), frac_bits);
    let log_w = log2_biguint(&BigUint::from(params.w), frac_bits);
    let loglog_n = log_n.log2().expect("positive");
    Ok(OptimalityMetrics {
        weight_factor: log_w.div(&log_s),
        second_order_rate: loglog_n.div(&log_s),
        overlap_fraction: BigRational::new(BigInt::from(params.k), BigInt::from(params.w)),
    })
}

/// Renders an exact rational as `num/den` (or just `num` for integers).
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
