//! Concatenation of an inner constant-weight code with a chain of outer
//! Reed-Solomon codes.
//!
//! An inner `(S, N, W, K)` code combined with an outer `(n, k, d)` code over
//! GF(N) gives `(S n, N^k, W n, W (n - d) + K n)`. Outer symbol `v` selects
//! inner codeword `v` (identity alignment), so the whole chain is fixed by
//! the canonical orderings of the inner family and the RS encoders.

use crate::construct::{construction2_cwc, construction2_truncated, modified_prime_cwc, ppm_cwc};
use crate::cwc::{
    optimality_metrics, CodeParams, CodeSize, CwCodeword, CwcFamily, OptimalityMetrics,
};
use crate::error::{Error, Result};
use crate::field::{is_prime, is_prime_power};
use crate::real::{log2_biguint, Fixed};
use crate::rs::{message_digits, BlockParams, RsEncoder, RsSpec, RsVariant};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

fn overflow(what: &str) -> Error {
    Error::DegenerateParams(format!("{what} overflows 64 bits"))
}

/// Parameters of `inner` concatenated with an outer `(n, k, d)` code.
pub fn concat_params(inner: &CodeParams, outer: BlockParams) -> Result<CodeParams> {
    if outer.d > outer.n || outer.k == 0 {
        return Err(Error::InvalidDimension(format!("outer code {outer:?}")));
    }
    let s = inner.s.checked_mul(outer.n).ok_or_else(|| overflow("S"))?;
    let w = inner.w.checked_mul(outer.n).ok_or_else(|| overflow("W"))?;
    let k = inner
        .w
        .checked_mul(outer.n - outer.d)
        .and_then(|a| inner.k.checked_mul(outer.n).and_then(|b| a.checked_add(b)))
        .ok_or_else(|| overflow("K"))?;
    CodeParams::new(s, inner.n.pow(outer.k), w, k)
}

/// [`concat_params`] with the check that the outer field size equals the
/// inner code size.
pub fn concat_with_rs(inner: &CodeParams, outer: &RsSpec) -> Result<CodeParams> {
    if !inner.n.same_value(&CodeSize::exact(outer.q)) {
        return Err(Error::FieldSizeMismatch {
            outer: outer.q.to_string(),
            inner: inner.n.to_string(),
        });
    }
    concat_params(inner, outer.params())
}

/// Folds [`concat_with_rs`] over a chain of outer codes, innermost first.
pub fn compose_params(inner: &CodeParams, outers: &[RsSpec]) -> Result<CodeParams> {
    outers
        .iter()
        .try_fold(inner.clone(), |acc, o| concat_with_rs(&acc, o))
}

/// The two outer codes of a doubly concatenated scheme: GF(q) of dimension
/// `k_o`, then GF(q^{k_o}) of dimension `k_oo`.
pub fn outer_chain(q: u64, k_o: u64, k_oo: u64, variant: RsVariant) -> Result<[RsSpec; 2]> {
    let first = RsSpec::new(q, k_o, variant)?;
    let q2 = u32::try_from(k_o)
        .ok()
        .and_then(|e| q.checked_pow(e))
        .ok_or_else(|| overflow("second outer field size"))?;
    let second = RsSpec::new(q2, k_oo, variant)?;
    Ok([first, second])
}

fn check_c1_variant(variant: RsVariant) -> Result<()> {
    if variant == RsVariant::Extended {
        return Err(Error::InvalidArgument(
            "closed-form parameters exist for standard and doubly-extended outer codes only".into(),
        ));
    }
    Ok(())
}

/// Closed-form parameters of modified prime sequences doubly concatenated
/// with two outer RS codes (standard or doubly-extended).
pub fn construction1_full_params(
    p: u64,
    k_o: u64,
    k_oo: u64,
    variant: RsVariant,
) -> Result<CodeParams> {
    check_c1_variant(variant)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    // dimension bounds are those of the two outer codes
    outer_chain(p, k_o, k_oo, variant)?;
    let big = || overflow("parameter");
    let pk = p.checked_pow(k_o as u32).ok_or_else(big)?;
    let (a, b) = match variant {
        RsVariant::DoublyExtended => (p * p - 1, pk + 1),
        _ => ((p - 1) * (p - 1), pk - 1),
    };
    let w = a.checked_mul(b).ok_or_else(big)?;
    let s = p.checked_mul(w).ok_or_else(big)?;
    let k = a
        .checked_mul(k_oo - 1)
        .and_then(|x| (p - 1).checked_mul(k_o - 1)?.checked_mul(b)?.checked_add(x))
        .ok_or_else(big)?;
    CodeParams::new(s, CodeSize::power(p, k_o * k_oo), w, k)
}

/// Inner parameters of the norm-equation code, optionally truncated.
fn construction2_inner(p: u64, m: u32, truncate: Option<u64>) -> Result<CodeParams> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pm = p.checked_pow(m).ok_or_else(|| overflow("p^m"))?;
    if pm < 3 {
        return Err(Error::DegenerateParams(format!(
            "p^m = {pm} leaves no codewords"
        )));
    }
    let natural = pm - 2;
    let n = match truncate {
        None => {
            if is_prime_power(natural).is_none() {
                return Err(Error::NotPrimePower(natural));
            }
            natural
        }
        Some(t) => {
            if t > natural {
                return Err(Error::TargetTooLarge {
                    target: t,
                    size: natural,
                });
            }
            if is_prime_power(t).is_none() {
                return Err(Error::NotPrimePower(t));
            }
            t
        }
    };
    let s = pm.checked_mul(pm).ok_or_else(|| overflow("p^{2m}"))? - 1;
    CodeParams::small(s, n, pm + 1, 0)
}

pub fn construction2_full_params(
    p: u64,
    m: u32,
    k_o: u64,
    k_oo: u64,
    variant: RsVariant,
    truncate: Option<u64>,
) -> Result<CodeParams> {
    let inner = construction2_inner(p, m, truncate)?;
    let q = inner.n.base;
    compose_params(&inner, &outer_chain(q, k_o, k_oo, variant)?)
}

/// PPM inner code with two outer codes (extended RS in the usual benchmark).
pub fn ppm_bench_params(q: u64, k_o: u64, k_oo: u64, variant: RsVariant) -> Result<CodeParams> {
    if is_prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    let inner = CodeParams::small(q, q, 1, 0)?;
    compose_params(&inner, &outer_chain(q, k_o, k_oo, variant)?)
}

/// An inner family plus a chain of outer encoders, innermost first.
#[derive(Debug, Clone)]
pub struct ConcatSpec {
    inner: CwcFamily,
    outers: Vec<RsEncoder>,
    /// blocklength of the code below each outer level
    block_sizes: Vec<u64>,
    params: CodeParams,
}

impl ConcatSpec {
    pub fn new(inner: CwcFamily, outers: &[RsSpec]) -> Result<Self> {
        let inner_params = CodeParams::new(
            inner.blocklength(),
            CodeSize::exact(inner.len() as u64),
            inner.claimed().w,
            inner.claimed().k,
        )?;
        let params = compose_params(&inner_params, outers)?;
        let encoders = outers
            .iter()
            .map(|&s| RsEncoder::new(s))
            .collect::<Result<Vec<_>>>()?;
        let mut block_sizes = Vec::with_capacity(outers.len());
        let mut s = inner.blocklength();
        for o in outers {
            block_sizes.push(s);
            s *= o.length();
        }
        Ok(ConcatSpec {
            inner,
            outers: encoders,
            block_sizes,
            params,
        })
    }

    pub fn construction1(p: u64, k_o: u64, k_oo: u64, variant: RsVariant) -> Result<Self> {
        Self::new(modified_prime_cwc(p)?, &outer_chain(p, k_o, k_oo, variant)?)
    }

    pub fn construction2(
        p: u64,
        m: u32,
        k_o: u64,
        k_oo: u64,
        variant: RsVariant,
        truncate: Option<u64>,
    ) -> Result<Self> {
        let inner = match truncate {
            Some(t) => construction2_truncated(p, m, t)?,
            None => construction2_cwc(p, m)?,
        };
        let q = inner.len() as u64;
        Self::new(inner, &outer_chain(q, k_o, k_oo, variant)?)
    }

    pub fn ppm_bench(q: u64, k_o: u64, k_oo: u64, variant: RsVariant) -> Result<Self> {
        Self::new(ppm_cwc(q)?, &outer_chain(q, k_o, k_oo, variant)?)
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn inner(&self) -> &CwcFamily {
        &self.inner
    }

    /// Total number of identifiers, materialised.
    pub fn size(&self) -> BigUint {
        self.params.n.value()
    }

    /// Support of the codeword for identifier `id`.
    pub fn codeword(&self, id: &BigUint) -> Result<CwCodeword> {
        let size = self.size();
        if id >= &size {
            return Err(Error::IdentifierOutOfRange {
                id: id.to_string(),
                size: size.to_string(),
            });
        }
        let mut support = Vec::with_capacity(self.params.w as usize);
        match self.outers.last() {
            None => {
                let idx = id.to_usize().expect("inner index fits");
                support.extend_from_slice(self.inner.codewords()[idx].support());
            }
            Some(top) => {
                let q = top.spec().q;
                let mut rest = id.clone();
                let mut digits = Vec::with_capacity(top.spec().k as usize);
                for _ in 0..top.spec().k {
                    let (d, r) = rest.div_rem(&BigUint::from(q));
                    digits.push(r.to_u64().expect("digit < q"));
                    rest = d;
                }
                debug_assert!(rest.is_zero());
                let msg: Vec<_> = digits.into_iter().map(crate::field::FieldElem).collect();
                let symbols = top.encode(&msg)?;
                let level = self.outers.len() - 1;
                for (t, sym) in symbols.into_iter().enumerate() {
                    self.push_level(
                        level,
                        sym.value(),
                        t as u64 * self.block_sizes[level],
                        &mut support,
                    )?;
                }
            }
        }
        debug_assert!(support.windows(2).all(|w| w[0] < w[1]));
        Ok(CwCodeword::from_sorted(self.params.s, support))
    }

    /// Appends the support of codeword `index` of the code below outer
    /// level `level`, shifted by `offset`.
    fn push_level(&self, level: usize, index: u64, offset: u64, out: &mut Vec<u64>) -> Result<()> {
        if level == 0 {
            let cw = &self.inner.codewords()[index as usize];
            out.extend(cw.support().iter().map(|&i| i + offset));
            return Ok(());
        }
        let enc = &self.outers[level - 1];
        let msg = message_digits(index, enc.spec().q, enc.spec().k as usize);
        let block = self.block_sizes[level - 1];
        for (t, sym) in enc.encode(&msg)?.into_iter().enumerate() {
            self.push_level(level - 1, sym.value(), offset + t as u64 * block, out)?;
        }
        Ok(())
    }

    /// Every codeword, in identifier order, for codes of at most `limit`
    /// codewords.
    pub fn enumerate(&self, limit: u64) -> Result<CwcFamily> {
        let n = self
            .params
            .n
            .to_u64()
            .filter(|&n| n <= limit)
            .ok_or_else(|| Error::CodeTooLarge(self.params.n.to_string()))?;
        let words = (0..n)
            .map(|i| self.codeword(&BigUint::from(i)))
            .collect::<Result<Vec<_>>>()?;
        CwcFamily::new(self.params.s, words, self.params.clone())
    }
}

/// Finite stand-ins for the four asymptotic conditions on `(p, k_o, k_oo)`
/// together with the three ID-optimality metrics of the resulting code.
#[derive(Debug, Clone)]
pub struct OptimalityReport {
    pub log2_koo: Fixed,
    pub log2_koo_over_ko: Fixed,
    pub ko_over_p: BigRational,
    pub koo_over_p_ko: BigRational,
    pub params: CodeParams,
    pub metrics: OptimalityMetrics,
}

pub fn id_optimality_report(
    p: u64,
    k_o: u64,
    k_oo: u64,
    frac_bits: u32,
) -> Result<OptimalityReport> {
    let params = construction1_full_params(p, k_o, k_oo, RsVariant::Standard)?;
    let log2_koo = log2_biguint(&BigUint::from(k_oo), frac_bits);
    let log2_koo_over_ko = log2_koo.div(&Fixed::from_int(k_o, frac_bits));
    let p_ko = BigInt::from(p).pow(k_o as u32);
    Ok(OptimalityReport {
        log2_koo,
        log2_koo_over_ko,
        ko_over_p: BigRational::new(k_o.into(), p.into()),
        koo_over_p_ko: BigRational::new(k_oo.into(), p_ko),
        metrics: optimality_metrics(&params, frac_bits)?,
        params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwc::verify_cwc;

    #[test]
    fn concat_formula_arithmetic() {
        let inner = CodeParams::small(20, 5, 4, 0).unwrap();
        let got = concat_params(&inner, BlockParams { n: 4, k: 2, d: 3 }).unwrap();
        assert_eq!(
            got,
            CodeParams::new(80, CodeSize::power(5, 2), 16, 4).unwrap()
        );

        let ppm = CodeParams::small(23, 23, 1, 0).unwrap();
        let got = concat_with_rs(&ppm, &RsSpec::new(23, 2, RsVariant::Extended).unwrap()).unwrap();
        assert_eq!((got.s, got.w, got.k), (529, 23, 1));

        // repetition-like outer code: n - d = 0
        let inner = CodeParams::small(12, 4, 3, 1).unwrap();
        let got = concat_params(&inner, BlockParams { n: 5, k: 1, d: 5 }).unwrap();
        assert_eq!(got.k, 5);
    }

    #[test]
    fn field_size_must_match() {
        let inner = CodeParams::small(20, 5, 4, 0).unwrap();
        let err =
            concat_with_rs(&inner, &RsSpec::new(7, 2, RsVariant::Standard).unwrap()).unwrap_err();
        assert!(matches!(err, Error::FieldSizeMismatch { .. }));
    }

    #[test]
    fn construction1_closed_form_examples() {
        let c = construction1_full_params(5, 2, 2, RsVariant::Standard).unwrap();
        assert_eq!((c.s, c.w, c.k), (1920, 384, 112));
        assert_eq!(c.n.value(), BigUint::from(625u32));
        let c = construction1_full_params(5, 2, 2, RsVariant::DoublyExtended).unwrap();
        assert_eq!((c.s, c.w, c.k), (3120, 624, 128));
        for p in [3, 5, 7] {
            assert_eq!(
                construction1_full_params(p, 1, 1, RsVariant::Standard)
                    .unwrap()
                    .k,
                0
            );
        }
        assert!(construction1_full_params(5, 4, 1, RsVariant::Standard).is_err());
        assert!(construction1_full_params(5, 2, 2, RsVariant::Extended).is_err());
    }

    #[test]
    fn construction2_params() {
        let c = construction2_full_params(5, 2, 2, 2, RsVariant::Standard, None).unwrap();
        assert_eq!(c.s, 624 * 22 * (23 * 23 - 1));
        assert_eq!(c.n, CodeSize::power(23, 4));
        assert_eq!(
            construction2_full_params(2, 3, 1, 1, RsVariant::Standard, None).unwrap_err(),
            Error::NotPrimePower(6)
        );
        assert_eq!(
            construction2_full_params(3, 2, 1, 1, RsVariant::Standard, None)
                .unwrap()
                .k,
            0
        );
        // truncating 6 -> 5 makes the chain valid
        assert!(construction2_full_params(2, 3, 2, 2, RsVariant::Standard, Some(5)).is_ok());
    }

    #[test]
    fn single_outer_enumeration() {
        let spec = ConcatSpec::new(
            modified_prime_cwc(5).unwrap(),
            &[RsSpec::new(5, 2, RsVariant::Standard).unwrap()],
        )
        .unwrap();
        let fam = spec.enumerate(100).unwrap();
        let r = verify_cwc(&fam);
        assert!(r.pass, "{:?}", r.failures);
        assert_eq!(
            (r.blocklength, r.n, r.w_min, r.w_max, r.k_actual),
            (80, 25, 16, 16, 4)
        );
        // id 0 is the zero message: inner codeword 0 in every block
        let zero = spec.codeword(&BigUint::zero()).unwrap();
        let base = modified_prime_cwc(5).unwrap().codewords()[0]
            .support()
            .to_vec();
        let expect: Vec<u64> = (0..4)
            .flat_map(|t| base.iter().map(move |&i| i + 20 * t))
            .collect();
        assert_eq!(zero.support(), expect.as_slice());
        assert!(spec.codeword(&BigUint::from(25u32)).is_err());
    }

    #[test]
    fn two_level_codeword_blocks() {
        let spec = ConcatSpec::construction1(3, 1, 2, RsVariant::DoublyExtended).unwrap();
        let params = spec.params().clone();
        assert_eq!(
            params,
            construction1_full_params(3, 1, 2, RsVariant::DoublyExtended).unwrap()
        );
        let fam = spec.enumerate(1000).unwrap();
        let r = verify_cwc(&fam);
        assert!(r.pass, "{:?}", r.failures);
    }

    #[test]
    fn optimality_report_values() {
        let r = id_optimality_report(5, 2, 2, 96).unwrap();
        assert_eq!(r.log2_koo.to_f64(), 1.0);
        assert_eq!(r.log2_koo_over_ko.to_f64(), 0.5);
        assert_eq!(r.ko_over_p, BigRational::new(2.into(), 5.into()));
        assert_eq!(r.koo_over_p_ko, BigRational::new(2.into(), 25.into()));
        assert!(id_optimality_report(5, 1, 1, 96)
            .unwrap()
            .log2_koo
            .is_zero());
    }
}
