//! Upper bounds on the size of binary constant-weight codes, evaluated in
//! exact integer and rational arithmetic.

use crate::cwc::{sorted_intersection, CwcFamily};
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Default cap on the moment order searched by [`best_correlation_bound`].
pub const DEFAULT_ELL_MAX: u64 = 8;

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `C_{l,u} = sum_{k=0}^{u} (-1)^k binom(u, k) (u - k)^l`, the number of
/// surjections from an `l`-set onto a `u`-set.
pub fn surjection_count(ell: u64, u: u64) -> BigInt {
    let mut total = BigInt::zero();
    for k in 0..=u {
        let term = BigInt::from(binomial(u, k)) * Pow::pow(BigInt::from(u - k), ell);
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Wraps `inner` in the puncturing recursion
/// `floor(S/W floor((S-1)/(W-1) ... floor((S-depth+1)/(W-depth+1) inner)))`.
fn johnson_wrap(s: u64, w: u64, depth: u64, inner: BigUint) -> BigUint {
    (0..depth)
        .rev()
        .fold(inner, |acc, i| acc * (s - i) / (w - i))
}

/// Nested-floor Johnson bound for an `(S, ?, W, K)` code.
pub fn johnson_bound(s: u64, w: u64, k: u64) -> Result<BigUint> {
    if !(k <= w && w <= s) {
        return Err(Error::DegenerateParams(format!(
            "need 0 <= K <= W <= S, got S={s} W={w} K={k}"
        )));
    }
    if k == w {
        return Err(Error::DegenerateParams(
            "K = W leaves the innermost ratio undefined".into(),
        ));
    }
    let innermost = BigUint::from((s - k) / (w - k));
    Ok(johnson_wrap(s, w, k, innermost))
}

/// The innermost correlation-moment term for `S' = S - d'`, `W' = W - d'`,
/// `K' = K - d'`, or `None` when its denominator is not positive.
pub fn correlation_innermost(s: u64, w: u64, k: u64, ell: u64, dprime: u64) -> Option<BigRational> {
    let (sp, wp, kp) = (s - dprime, w - dprime, k - dprime);
    let k_pow = BigRational::from_integer(Pow::pow(BigInt::from(kp), ell));
    let mut moment = BigRational::zero();
    for u in 1..=ell {
        let bw = BigInt::from(binomial(wp, u));
        if bw.is_zero() {
            continue;
        }
        let bs = BigInt::from(binomial(sp, u));
        moment += BigRational::new(&bw * &bw * surjection_count(ell, u), bs);
    }
    let denom = moment - &k_pow;
    if !denom.is_positive() {
        return None;
    }
    let numer = BigRational::from_integer(Pow::pow(BigInt::from(wp), ell)) - k_pow;
    Some(numer / denom)
}

/// Correlation-moment bound of order `ell` recursed at depth `d'`.
pub fn correlation_bound(s: u64, w: u64, k: u64, ell: u64, dprime: u64) -> Result<Option<BigUint>> {
    if !(k < w && w <= s) {
        return Err(Error::DegenerateParams(format!(
            "need 0 <= K < W <= S, got S={s} W={w} K={k}"
        )));
    }
    if dprime == 0 || dprime > k {
        return Err(Error::InvalidDPrime { dprime, k });
    }
    if ell == 0 {
        return Err(Error::InvalidArgument(
            "moment order must be positive".into(),
        ));
    }
    Ok(correlation_innermost(s, w, k, ell, dprime).map(|t| {
        let floor = t.floor().to_integer();
        johnson_wrap(s, w, dprime, floor.to_biguint().unwrap_or_default())
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrelationBest {
    #[serde(serialize_with = "ser_big")]
    pub bound: BigUint,
    pub ell: u64,
    pub dprime: u64,
}

/// Minimum of [`correlation_bound`] over `ell in [1, ell_max]`,
/// `d' in [1, K]`; ties go to the smallest `ell`, then the smallest `d'`.
pub fn best_correlation_bound(
    s: u64,
    w: u64,
    k: u64,
    ell_max: u64,
) -> Result<Option<CorrelationBest>> {
    let mut best: Option<CorrelationBest> = None;
    for ell in 1..=ell_max {
        for dprime in 1..=k {
            if let Some(b) = correlation_bound(s, w, k, ell, dprime)? {
                if best.as_ref().is_none_or(|cur| b < cur.bound) {
                    best = Some(CorrelationBest {
                        bound: b,
                        ell,
                        dprime,
                    });
                }
            }
        }
    }
    Ok(best)
}

/// `m_l = (sum_{j, j'} gamma_{j,j'}^l - N W^l) / (N (N - 1))`.
pub fn correlation_moment(fam: &CwcFamily, ell: u64) -> Result<BigRational> {
    let n = fam.len() as u64;
    if n < 2 {
        return Err(Error::DegenerateFamily(
            "moment needs at least two codewords".into(),
        ));
    }
    let words = fam.codewords();
    let mut off_diag = BigInt::zero();
    for a in 0..words.len() {
        for b in a + 1..words.len() {
            let g = sorted_intersection(words[a].support(), words[b].support());
            off_diag += Pow::pow(BigInt::from(g), ell) * 2;
        }
    }
    let diag: BigInt = words
        .iter()
        .map(|c| Pow::pow(BigInt::from(c.weight()), ell))
        .sum();
    let w = fam.claimed().w;
    let total = off_diag + diag - BigInt::from(n) * Pow::pow(BigInt::from(w), ell);
    Ok(BigRational::new(total, BigInt::from(n * (n - 1))))
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_opt_big<S: serde::Serializer>(
    v: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_some(&b.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(rename = "S")]
    pub s: u64,
    #[serde(rename = "W")]
    pub w: u64,
    #[serde(rename = "K")]
    pub k: u64,
    #[serde(serialize_with = "ser_opt_big")]
    pub johnson: Option<BigUint>,
    #[serde(serialize_with = "ser_opt_big")]
    pub correlation: Option<BigUint>,
    pub best_ell: Option<u64>,
    pub best_dprime: Option<u64>,
    /// Minimum of the available bounds; absent only when `K = W`.
    #[serde(serialize_with = "ser_opt_big")]
    pub n_id_bound: Option<BigUint>,
}

/// Both bounds and their minimum. For `K = 0` only the Johnson bound applies
/// since `d'` ranges over the empty set; for `K = W` neither applies.
pub fn bound_report(s: u64, w: u64, k: u64, ell_max: u64) -> Result<BoundReport> {
    if !(k <= w && w <= s) {
        return Err(Error::DegenerateParams(format!(
            "need 0 <= K <= W <= S, got S={s} W={w} K={k}"
        )));
    }
    if k == w {
        return Ok(BoundReport {
            s,
            w,
            k,
            johnson: None,
            correlation: None,
            best_ell: None,
            best_dprime: None,
            n_id_bound: None,
        });
    }
    let johnson = johnson_bound(s, w, k)?;
    let corr = if k >= 1 {
        best_correlation_bound(s, w, k, ell_max)?
    } else {
        None
    };
    let n_id_bound = match &corr {
        Some(c) if c.bound < johnson => c.bound.clone(),
        _ => johnson.clone(),
    };
    Ok(BoundReport {
        s,
        w,
        k,
        johnson: Some(johnson),
        best_ell: corr.as_ref().map(|c| c.ell),
        best_dprime: corr.as_ref().map(|c| c.dprime),
        correlation: corr.map(|c| c.bound),
        n_id_bound: Some(n_id_bound),
    })
}

/// Largest number of identifiers a CWC-based ID code with these `(S, W, K)`
/// can carry: the smaller of the two bounds.
pub fn id_size_bound(s: u64, w: u64, k: u64, ell_max: u64) -> Result<BigUint> {
    bound_report(s, w, k, ell_max)?
        .n_id_bound
        .ok_or_else(|| Error::DegenerateParams("K = W admits no bound".into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceBound {
    /// Smallest overlap compatible with the requested size.
    pub k_star: u64,
    /// Lower bound `2 (W - K*)` on the minimum distance.
    pub d_min: u64,
}

/// Smallest `K*` whose size bound admits `n` codewords, turned into the
/// distance bound `d >= 2 (W - K*)`. At `K* = W` the only constraint left is
/// that codewords be distinct, i.e. `n <= binom(S, W)`.
pub fn min_distance_lower_bound(
    s: u64,
    n: &BigUint,
    w: u64,
    ell_max: u64,
) -> Result<DistanceBound> {
    if w == 0 || w > s {
        return Err(Error::DegenerateParams(format!(
            "need 1 <= W <= S, got S={s} W={w}"
        )));
    }
    for k in 0..w {
        if &id_size_bound(s, w, k, ell_max)? >= n {
            return Ok(DistanceBound {
                k_star: k,
                d_min: 2 * (w - k),
            });
        }
    }
    if &binomial(s, w) >= n {
        return Ok(DistanceBound {
            k_star: w,
            d_min: 0,
        });
    }
    Err(Error::Infeasible(n.to_string()))
}

/// Rounds a positive rational down, mainly for display.
pub fn floor_to_u64(r: &BigRational) -> Option<u64> {
    r.numer().div_floor(r.denom()).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{modified_prime_cwc, prime_sequence_cwc};
    use crate::cwc::{CodeParams, CwCodeword};

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Counts onto maps [l] -> [u] by enumerating all u^l functions.
    fn surjections_brute(ell: u64, u: u64) -> u64 {
        let total = u.pow(ell as u32);
        (0..total)
            .filter(|&f| {
                let mut hit = vec![false; u as usize];
                let mut x = f;
                for _ in 0..ell {
                    hit[(x % u) as usize] = true;
                    x /= u;
                }
                hit.iter().all(|&h| h)
            })
            .count() as u64
    }

    #[test]
    fn surjections() {
        assert_eq!(surjection_count(1, 1), BigInt::from(1));
        assert_eq!(surjection_count(2, 2), BigInt::from(2));
        assert_eq!(surjection_count(3, 2), BigInt::from(6));
        for ell in 1..=6 {
            for u in 1..=ell {
                assert_eq!(
                    surjection_count(ell, u),
                    BigInt::from(surjections_brute(ell, u)),
                    "({ell},{u})"
                );
            }
            let fact: u64 = (1..=ell).product();
            assert_eq!(surjection_count(ell, ell), BigInt::from(fact));
        }
    }

    #[test]
    fn falling_moment_identity() {
        for ell in 1..=6 {
            for x in 0..=20u64 {
                let lhs: BigInt = (1..=ell)
                    .map(|u| BigInt::from(binomial(x, u)) * surjection_count(ell, u))
                    .sum();
                assert_eq!(lhs, BigInt::from(x).pow(ell as u32));
            }
        }
    }

    #[test]
    fn johnson_examples() {
        assert_eq!(johnson_bound(7, 3, 1).unwrap(), big(7));
        assert_eq!(johnson_bound(9, 9, 3).unwrap(), big(1));
        assert_eq!(johnson_bound(4, 2, 0).unwrap(), big(2));
        assert_eq!(johnson_bound(20, 4, 0).unwrap(), big(5));
        assert_eq!(johnson_bound(7, 3, 0).unwrap(), big(2));
        assert!(johnson_bound(7, 3, 3).is_err());
    }

    #[test]
    fn correlation_example() {
        let t = correlation_innermost(20, 4, 1, 1, 1).unwrap();
        assert_eq!(t, BigRational::new(19.into(), 3.into()));
        assert_eq!(correlation_bound(20, 4, 1, 1, 1).unwrap(), Some(big(30)));
        assert!(correlation_bound(20, 4, 1, 1, 2).is_err());
        let best = best_correlation_bound(20, 4, 1, 4).unwrap().unwrap();
        assert!(best.bound <= big(30));
        assert_eq!(best.dprime, 1);
    }

    #[test]
    fn infeasible_denominator() {
        let mut found = false;
        for s in 3..30u64 {
            for w in 2..s {
                for k in 1..w {
                    for ell in 1..4 {
                        if correlation_bound(s, w, k, ell, 1).unwrap().is_none() {
                            found = true;
                        }
                    }
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn distance_lower_bound_examples() {
        assert_eq!(
            min_distance_lower_bound(20, &big(5), 4, 8).unwrap(),
            DistanceBound {
                k_star: 0,
                d_min: 8
            }
        );
        assert_eq!(
            min_distance_lower_bound(7, &big(7), 3, 8).unwrap(),
            DistanceBound {
                k_star: 1,
                d_min: 4
            }
        );
        assert_eq!(
            min_distance_lower_bound(10, &big(1), 3, 8).unwrap().d_min,
            6
        );
        assert_eq!(
            min_distance_lower_bound(4, &big(6), 2, 8).unwrap().k_star,
            1
        );
        assert!(matches!(
            min_distance_lower_bound(4, &big(7), 2, 8),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn id_size_bound_k_zero_is_johnson() {
        assert_eq!(id_size_bound(20, 4, 0, 8).unwrap(), big(5));
        let r = bound_report(20, 4, 0, 8).unwrap();
        assert!(r.correlation.is_none());
        assert!(id_size_bound(20, 4, 1, 4).unwrap() <= big(30));
    }

    #[test]
    fn moments() {
        let fam = modified_prime_cwc(5).unwrap();
        for ell in 1..=4 {
            assert!(correlation_moment(&fam, ell).unwrap().is_zero());
        }
        let fam = prime_sequence_cwc(5).unwrap();
        assert_eq!(correlation_moment(&fam, 3).unwrap(), BigRational::one());
        let c = CwCodeword::new(6, vec![0, 2, 4]).unwrap();
        let dup = CwcFamily::new(
            6,
            vec![c.clone(), c],
            CodeParams::small(6, 2, 3, 3).unwrap(),
        )
        .unwrap();
        assert_eq!(
            correlation_moment(&dup, 2).unwrap(),
            BigRational::from_integer(9.into())
        );
        let single = CwcFamily::new(
            6,
            vec![CwCodeword::new(6, vec![1]).unwrap()],
            CodeParams::small(6, 1, 1, 0).unwrap(),
        )
        .unwrap();
        assert!(correlation_moment(&single, 1).is_err());
    }
}
