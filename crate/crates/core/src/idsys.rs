//! Identification over the noiseless binary channel.
//!
//! Identifier `i` is sent by drawing one of the `W` support positions of its
//! codeword uniformly at random; receiver `i'` accepts when the received
//! position lies in the support of its own codeword. With the identity
//! channel the transmitted position is the received one, so type-I errors
//! never happen and the type-II error of the pair is `gamma_{i,i'} / W`.

use crate::concat::ConcatSpec;
use crate::cwc::{cross_correlation, CodeParams, CwCodeword, CwcFamily};
use crate::error::{Error, Result};
use crate::real::{log2_biguint, sig12, Fixed};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::cmp::Ordering;

/// Default number of fractional bits for metrics.
pub const DEFAULT_PRECISION_BITS: u32 = 96;

#[derive(Debug, Clone)]
enum Codebook {
    Family(CwcFamily),
    Concat(Box<ConcatSpec>),
}

/// A CWC-based ID code on the noiseless channel; `N_ID = N_cw`.
#[derive(Debug, Clone)]
pub struct IdCode {
    codebook: Codebook,
    params: CodeParams,
}

impl IdCode {
    pub fn from_family(fam: CwcFamily) -> Self {
        let params = fam.actual_params();
        IdCode {
            codebook: Codebook::Family(fam),
            params,
        }
    }

    pub fn from_concat(spec: ConcatSpec) -> Self {
        let params = spec.params().clone();
        IdCode {
            codebook: Codebook::Concat(Box::new(spec)),
            params,
        }
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn size(&self) -> BigUint {
        match &self.codebook {
            Codebook::Family(f) => BigUint::from(f.len()),
            Codebook::Concat(c) => c.size(),
        }
    }

    pub fn codeword(&self, id: &BigUint) -> Result<CwCodeword> {
        match &self.codebook {
            Codebook::Family(f) => id
                .to_usize()
                .and_then(|i| f.codewords().get(i))
                .cloned()
                .ok_or_else(|| Error::IdentifierOutOfRange {
                    id: id.to_string(),
                    size: f.len().to_string(),
                }),
            Codebook::Concat(c) => c.codeword(id),
        }
    }

    fn pair(&self, i: &BigUint, i_prime: &BigUint) -> Result<(CwCodeword, CwCodeword)> {
        if i == i_prime {
            return Err(Error::SameIdentifier);
        }
        Ok((self.codeword(i)?, self.codeword(i_prime)?))
    }
}

/// Exact probability that receiver `i'` accepts when `i` is sent.
pub fn exact_pairwise_type2(code: &IdCode, i: &BigUint, i_prime: &BigUint) -> Result<BigRational> {
    let (ci, cj) = code.pair(i, i_prime)?;
    let g = cross_correlation(&ci, &cj)?;
    Ok(BigRational::new(BigInt::from(g), BigInt::from(ci.weight())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimulationOutcome {
    pub trials: u64,
    pub seed: u64,
    /// Trials in which receiver `i` rejected its own identifier.
    pub type1_errors: u64,
    /// Trials in which receiver `i'` accepted.
    pub type2_errors: u64,
}

impl SimulationOutcome {
    pub fn type1_rate(&self) -> f64 {
        self.type1_errors as f64 / self.trials as f64
    }

    pub fn type2_rate(&self) -> f64 {
        self.type2_errors as f64 / self.trials as f64
    }
}

/// Monte-Carlo run of the randomized encoder and both receivers' tests.
/// Bit-reproducible for a given seed.
pub fn simulate_id(
    code: &IdCode,
    i: &BigUint,
    i_prime: &BigUint,
    trials: u64,
    seed: u64,
) -> Result<SimulationOutcome> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let (ci, cj) = code.pair(i, i_prime)?;
    let support = ci.support();
    if support.is_empty() {
        return Err(Error::DegenerateParams(
            "codeword of weight 0 cannot be sent".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SimulationOutcome {
        trials,
        seed,
        type1_errors: 0,
        type2_errors: 0,
    };
    for _ in 0..trials {
        let sent = support[rng.random_range(0..support.len())];
        // noiseless channel
        let received = sent;
        if !ci.contains(received) {
            out.type1_errors += 1;
        }
        if cj.contains(received) {
            out.type2_errors += 1;
        }
    }
    Ok(out)
}

/// Blocklength, rate and type-II exponent on the noiseless channel.
#[derive(Debug, Clone)]
pub struct IdMetrics {
    /// log2 S
    pub n_id: Fixed,
    /// log2 log2 N / n_id
    pub r_id: Fixed,
    /// -log2(K / W) / n_id; `None` means +infinity (K = 0)
    pub e2: Option<Fixed>,
    /// 1 - (r_id + 2 e2); `None` means -infinity (K = 0)
    pub tradeoff_gap: Option<Fixed>,
}

impl IdMetrics {
    pub fn to_json(&self) -> Value {
        json!({
            "n_id": sig12(self.n_id.to_f64()),
            "r_id": sig12(self.r_id.to_f64()),
            "e2": self.e2.as_ref().map_or(json!("+inf"), |v| json!(sig12(v.to_f64()))),
            "tradeoff_gap": self.tradeoff_gap.as_ref().map_or(json!("-inf"), |v| json!(sig12(v.to_f64()))),
        })
    }
}

pub fn id_metrics(params: &CodeParams, frac_bits: u32) -> Result<IdMetrics> {
    if params.s < 2 || params.w < 1 || params.k > params.w {
        return Err(Error::DegenerateParams(
            "need S >= 2, W >= 1, K <= W".into(),
        ));
    }
    let n_small = params.n.to_u64();
    if params.n.base < 2 || n_small.is_some_and(|n| n < 4) {
        return Err(Error::DegenerateParams("need N >= 4".into()));
    }
    let n_id = log2_biguint(&BigUint::from(params.s), frac_bits);
    let loglog = params.n.log2(frac_bits).log2().expect("log2 N > 0");
    let r_id = loglog.div(&n_id);
    let (e2, gap) = if params.k == 0 {
        (None, None)
    } else {
        let neg_log_lambda = log2_biguint(&BigUint::from(params.w), frac_bits)
            .sub(&log2_biguint(&BigUint::from(params.k), frac_bits));
        let e2 = neg_log_lambda.div(&n_id);
        let gap = Fixed::from_int(1, frac_bits).sub(&r_id.add(&e2.mul_int(2)));
        (Some(e2), Some(gap))
    };
    Ok(IdMetrics {
        n_id,
        r_id,
        e2,
        tradeoff_gap: gap,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TradeoffRow {
    pub r_id: f64,
    pub e2: f64,
    /// r_id + 2 e2
    pub sum: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TradeoffReport {
    pub rows: Vec<TradeoffRow>,
    pub holds: usize,
    pub violations: usize,
    /// Entries with an infinite exponent, which the check does not cover.
    pub skipped: usize,
}

/// Compares `r_id + 2 e2` against the capacity 1 of the binary noiseless
/// channel. The comparison is done in fixed point; the `f64` columns are for
/// display.
pub fn tradeoff_check(metrics: &[IdMetrics]) -> TradeoffReport {
    let mut rows = Vec::new();
    let mut skipped = 0;
    for m in metrics {
        let Some(e2) = &m.e2 else {
            skipped += 1;
            continue;
        };
        let sum = m.r_id.add(&e2.mul_int(2));
        let one = Fixed::from_int(1, sum.frac_bits());
        rows.push(TradeoffRow {
            r_id: sig12(m.r_id.to_f64()),
            e2: sig12(e2.to_f64()),
            sum: sig12(sum.to_f64()),
            holds: sum.cmp_value(&one) != Ordering::Greater,
        });
    }
    let holds = rows.iter().filter(|r| r.holds).count();
    TradeoffReport {
        violations: rows.len() - holds,
        holds,
        rows,
        skipped,
    }
}

/// `lambda_2` bound `K / W` used for the exponent.
pub fn overlap_fraction(params: &CodeParams) -> BigRational {
    BigRational::new(BigInt::from(params.k), BigInt::from(params.w))
}

/// `3 sqrt(r (1 - r) / trials)`, the tolerance used for empirical type-II rates.
pub fn three_sigma(rate: &BigRational, trials: u64) -> f64 {
    let r = rate.to_f64().unwrap_or(0.0);
    3.0 * (r * (1.0 - r) / trials as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{modified_prime_cwc, prime_sequence_cwc};
    use crate::cwc::CodeSize;
    use crate::rs::{RsSpec, RsVariant};

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn disjoint_pair_never_confused() {
        let code = IdCode::from_family(modified_prime_cwc(5).unwrap());
        assert_eq!(
            exact_pairwise_type2(&code, &big(0), &big(3)).unwrap(),
            BigRational::from_integer(0.into())
        );
        let sim = simulate_id(&code, &big(0), &big(3), 500, 7).unwrap();
        assert_eq!((sim.type1_errors, sim.type2_errors), (0, 0));
        assert_eq!(
            exact_pairwise_type2(&code, &big(1), &big(1)).unwrap_err(),
            Error::SameIdentifier
        );
        assert!(exact_pairwise_type2(&code, &big(1), &big(5)).is_err());
    }

    #[test]
    fn attaining_pair_has_quarter_rate() {
        let spec = ConcatSpec::new(
            modified_prime_cwc(5).unwrap(),
            &[RsSpec::new(5, 2, RsVariant::Standard).unwrap()],
        )
        .unwrap();
        let code = IdCode::from_concat(spec);
        let quarter = BigRational::new(1.into(), 4.into());
        let mut found = false;
        for a in 0..25u64 {
            for b in 0..25u64 {
                if a != b {
                    let r = exact_pairwise_type2(&code, &big(a), &big(b)).unwrap();
                    assert!(r <= quarter);
                    found |= r == quarter;
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn single_trial_is_zero_or_one() {
        let code = IdCode::from_family(prime_sequence_cwc(5).unwrap());
        let sim = simulate_id(&code, &big(1), &big(2), 1, 3).unwrap();
        assert!(sim.type2_rate() == 0.0 || sim.type2_rate() == 1.0);
        assert_eq!(sim, simulate_id(&code, &big(1), &big(2), 1, 3).unwrap());
        assert!(simulate_id(&code, &big(1), &big(2), 0, 3).is_err());
    }

    #[test]
    fn metrics_regression() {
        let p = CodeParams::new(1920, CodeSize::power(5, 4), 384, 112).unwrap();
        let m = id_metrics(&p, 96).unwrap();
        assert!((m.n_id.to_f64() - 10.9069).abs() < 1e-3);
        assert!((m.r_id.to_f64() - 0.2948).abs() < 1e-3);
        assert!((m.e2.as_ref().unwrap().to_f64() - 0.1630).abs() < 1e-3);
        assert!((m.tradeoff_gap.as_ref().unwrap().to_f64() - 0.379).abs() < 1e-3);
    }

    #[test]
    fn metric_edge_cases() {
        let full = CodeParams::small(64, 16, 8, 8).unwrap();
        assert!(id_metrics(&full, 96).unwrap().e2.unwrap().is_zero());
        let disjoint = CodeParams::small(64, 16, 8, 0).unwrap();
        let m = id_metrics(&disjoint, 96).unwrap();
        assert!(m.e2.is_none() && m.tradeoff_gap.is_none());
        assert_eq!(m.to_json()["e2"], json!("+inf"));
        assert!(id_metrics(&CodeParams::small(64, 3, 8, 1).unwrap(), 96).is_err());
    }

    #[test]
    fn tradeoff_rows() {
        let p = CodeParams::new(1920, CodeSize::power(5, 4), 384, 112).unwrap();
        let full = CodeParams::small(64, 16, 8, 8).unwrap();
        let zero = CodeParams::small(64, 16, 8, 0).unwrap();
        let ms: Vec<_> = [p, full, zero]
            .iter()
            .map(|p| id_metrics(p, 96).unwrap())
            .collect();
        let rep = tradeoff_check(&ms);
        assert_eq!(rep.rows.len(), 2);
        assert_eq!(rep.skipped, 1);
        assert!((rep.rows[0].sum - 0.621).abs() < 1e-3);
        assert!(rep.rows[0].holds);
        // e2 = 0: reduces to r_id = log2(4)/6 <= 1
        assert_eq!(rep.rows[1].sum, rep.rows[1].r_id);
        assert_eq!(rep.holds, 2);
    }
}
