//! Inner constant-weight codes: prime sequences, their modified form, the
//! norm-equation optical orthogonal code, and pulse position modulation.

use crate::cwc::{CodeParams, CodeSize, CwCodeword, CwcFamily};
use crate::error::{Error, Result};
use crate::field::{is_prime, FieldCtx, FieldElem, DEFAULT_FIELD_CAP};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSequence {
    pub p: u64,
    pub multiplier: u64,
    /// `symbols[s] = multiplier * s mod p`
    pub symbols: Vec<u64>,
}

impl PrimeSequence {
    pub fn digits(&self) -> String {
        self.symbols
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(if self.p > 10 { "," } else { "" })
    }
}

pub fn prime_sequences(p: u64) -> Result<Vec<PrimeSequence>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok((0..p)
        .map(|j| PrimeSequence {
            p,
            multiplier: j,
            symbols: (0..p).map(|s| j * s % p).collect(),
        })
        .collect())
}

/// Maps symbol `v` at position `s` to a one at index `p*s + v`.
pub fn one_hot(seq: &[u64], p: u64) -> Result<CwCodeword> {
    let mut support = Vec::with_capacity(seq.len());
    for (s, &v) in seq.iter().enumerate() {
        if v >= p {
            return Err(Error::SymbolOutOfRange { symbol: v, p });
        }
        support.push(p * s as u64 + v);
    }
    Ok(CwCodeword::from_sorted(p * seq.len() as u64, support))
}

/// One-hot encoded prime sequences: every pair overlaps in exactly the
/// leading zero symbol, so the family is `(p^2, p, p, 1)`. Cyclic
/// auto-correlation is `p - 1` except for the all-zero sequence, whose
/// support is periodic with period `p` and so peaks at `p`.
pub fn prime_sequence_cwc(p: u64) -> Result<CwcFamily> {
    let words = prime_sequences(p)?
        .iter()
        .map(|seq| one_hot(&seq.symbols, p))
        .collect::<Result<Vec<_>>>()?;
    let k = if p > 1 { 1 } else { 0 };
    CwcFamily::new(p * p, words, CodeParams::small(p * p, p, p, k)?)
}

/// Prime sequences with the common leading zero removed, then one-hot
/// encoded: a `(p^2 - p, p, p - 1, 0)` code.
pub fn modified_prime_cwc(p: u64) -> Result<CwcFamily> {
    let words = prime_sequences(p)?
        .iter()
        .map(|seq| one_hot(&seq.symbols[1..], p))
        .collect::<Result<Vec<_>>>()?;
    let s = p * (p - 1);
    CwcFamily::new(s, words, CodeParams::small(s, p, p - 1, 0)?)
}

/// Norm-equation code over GF(p^{2m}).
///
/// For `i` in `[1, p^m - 2]` the codeword support is the set of discrete
/// logarithms of the nonzero `x` with `(x - 1)^{p^m + 1} = alpha^{i (p^m + 1)}`.
/// All field elements are scanned once; each left-hand side is matched
/// against the table of right-hand sides.
pub fn construction2_cwc(p: u64, m: u32) -> Result<CwcFamily> {
    construction2_with_cap(p, m, DEFAULT_FIELD_CAP)
}

pub fn construction2_with_cap(p: u64, m: u32, cap: u64) -> Result<CwcFamily> {
    let field = FieldCtx::with_cap(p, 2 * m, cap)?;
    construction2_in(&field)
}

/// Same as [`construction2_cwc`] in a caller-provided field of even degree.
pub fn construction2_in(field: &FieldCtx) -> Result<CwcFamily> {
    let p = field.characteristic();
    if !field.degree().is_multiple_of(2) {
        return Err(Error::InvalidArgument("field degree must be even".into()));
    }
    let pm = p.pow(field.degree() / 2);
    let q = field.size();
    let s = q - 1;
    let e = pm + 1;
    if pm < 3 {
        return Err(Error::DegenerateParams(format!(
            "p^m = {pm} leaves no codewords"
        )));
    }
    let n = pm - 2;

    let rhs: HashMap<FieldElem, u64> = (1..=n)
        .map(|i| (field.pow(field.alpha(), i * e), i))
        .collect();
    if rhs.len() as u64 != n {
        return Err(Error::Internal("right-hand sides are not distinct".into()));
    }

    let mut supports: Vec<Vec<u64>> = vec![Vec::new(); n as usize];
    for x in field.elements() {
        let lhs = field.pow(field.sub(x, FieldElem::ONE), e);
        if let Some(&i) = rhs.get(&lhs) {
            if x.is_zero() {
                return Err(Error::Internal(format!(
                    "x = 0 solves the norm equation for i = {i}"
                )));
            }
            supports[(i - 1) as usize].push(field.discrete_log(x)? % s);
        }
    }

    let mut words = Vec::with_capacity(n as usize);
    for (idx, mut sup) in supports.into_iter().enumerate() {
        if sup.len() as u64 != e {
            return Err(Error::Internal(format!(
                "i = {} has {} solutions, expected {e}",
                idx + 1,
                sup.len()
            )));
        }
        sup.sort_unstable();
        words.push(CwCodeword::from_sorted(s, sup));
    }
    CwcFamily::new(s, words, CodeParams::small(s, n, e, 0)?)
}

/// Keeps the codewords for `i = 1..=target`.
pub fn construction2_truncated(p: u64, m: u32, target: u64) -> Result<CwcFamily> {
    let fam = construction2_cwc(p, m)?;
    let size = fam.len() as u64;
    if target > size {
        return Err(Error::TargetTooLarge { target, size });
    }
    if target == 0 {
        return Err(Error::InvalidArgument(
            "truncation target must be positive".into(),
        ));
    }
    Ok(fam.truncate(target as usize))
}

/// Pulse position modulation: `q` singleton codewords, `(q, q, 1, 0)`.
pub fn ppm_cwc(q: u64) -> Result<CwcFamily> {
    if q < 2 {
        return Err(Error::InvalidArgument("PPM needs q >= 2".into()));
    }
    let words = (0..q)
        .map(|i| CwCodeword::from_sorted(q, vec![i]))
        .collect();
    CwcFamily::new(q, words, CodeParams::new(q, CodeSize::exact(q), 1, 0)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwc::verify_cwc;

    #[test]
    fn prime_sequences_small() {
        let seqs: Vec<String> = prime_sequences(5)
            .unwrap()
            .iter()
            .map(|s| s.digits())
            .collect();
        assert_eq!(seqs, ["00000", "01234", "02413", "03142", "04321"]);
        let seqs: Vec<String> = prime_sequences(2)
            .unwrap()
            .iter()
            .map(|s| s.digits())
            .collect();
        assert_eq!(seqs, ["00", "01"]);
        let seqs: Vec<String> = prime_sequences(3)
            .unwrap()
            .iter()
            .map(|s| s.digits())
            .collect();
        assert_eq!(seqs, ["000", "012", "021"]);
        assert_eq!(prime_sequences(9).unwrap_err(), Error::NotPrime(9));
    }

    #[test]
    fn one_hot_examples() {
        let c = one_hot(&[0, 1, 2, 3, 4], 5).unwrap();
        assert_eq!(c.to_bit_string(), "1000001000001000001000001");
        assert_eq!(c.support(), &[0, 6, 12, 18, 24]);
        assert_eq!(one_hot(&[0], 2).unwrap().to_bit_string(), "10");
        assert_eq!(one_hot(&[2, 1], 3).unwrap().support(), &[2, 4]);
        assert_eq!(
            one_hot(&[3], 3).unwrap_err(),
            Error::SymbolOutOfRange { symbol: 3, p: 3 }
        );
    }

    #[test]
    fn modified_prime_small() {
        let f = modified_prime_cwc(2).unwrap();
        assert_eq!(f.codewords()[0].support(), &[0]);
        assert_eq!(f.codewords()[1].support(), &[1]);
        let f = modified_prime_cwc(5).unwrap();
        assert_eq!(f.codewords()[1].support(), &[1, 7, 13, 19]);
        assert_eq!(f.codewords()[0].support(), &[0, 5, 10, 15]);
        for p in [2, 3, 5, 7] {
            assert!(verify_cwc(&modified_prime_cwc(p).unwrap()).pass);
        }
    }

    #[test]
    fn construction2_gf16() {
        let f = construction2_cwc(2, 2).unwrap();
        let r = verify_cwc(&f);
        assert!(r.pass, "{:?}", r.failures);
        assert_eq!((r.blocklength, r.n, r.w_max, r.k_actual), (15, 2, 5, 0));
    }

    /// Independent oracle: literal evaluation of both sides with repeated
    /// multiplication, for every x and every i.
    #[test]
    fn construction2_matches_brute_force() {
        for (p, m) in [(2u64, 2u32), (3, 2), (2, 3)] {
            let field = FieldCtx::new(p, 2 * m).unwrap();
            let pm = p.pow(m);
            let slow_pow =
                |x: FieldElem, e: u64| (0..e).fold(FieldElem::ONE, |acc, _| field.mul(acc, x));
            let fam = construction2_cwc(p, m).unwrap();
            for i in 1..=pm - 2 {
                let rhs = slow_pow(slow_pow(field.alpha(), i), pm + 1);
                let mut expect: Vec<u64> = field
                    .elements()
                    .filter(|&x| {
                        !x.is_zero() && slow_pow(field.sub(x, FieldElem::ONE), pm + 1) == rhs
                    })
                    .map(|x| field.discrete_log(x).unwrap())
                    .collect();
                expect.sort_unstable();
                assert_eq!(
                    fam.codewords()[(i - 1) as usize].support(),
                    expect.as_slice(),
                    "p={p} m={m} i={i}"
                );
            }
        }
    }

    #[test]
    fn truncation() {
        let f = construction2_truncated(2, 3, 5).unwrap();
        assert_eq!(f.len(), 5);
        assert!(verify_cwc(&f).pass);
        assert_eq!(construction2_truncated(3, 2, 7).unwrap().len(), 7);
        assert_eq!(
            construction2_truncated(2, 2, 3).unwrap_err(),
            Error::TargetTooLarge { target: 3, size: 2 }
        );
    }

    #[test]
    fn ppm() {
        let f = ppm_cwc(2).unwrap();
        assert_eq!(f.codewords()[0].to_bit_string(), "10");
        assert_eq!(f.codewords()[1].to_bit_string(), "01");
        let r = verify_cwc(&ppm_cwc(5).unwrap());
        assert!(r.pass);
        assert_eq!(r.k_actual, 0);
        assert!(ppm_cwc(1).is_err());
    }
}
