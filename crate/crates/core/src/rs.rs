//! Reed-Solomon outer codes in evaluation form.
//!
//! Evaluation points are `alpha^0, ..., alpha^{q-2}`; the extended code adds
//! the point 0, and the doubly-extended code further appends the coefficient
//! of `x^{k-1}` (evaluation at infinity).

use crate::error::{Error, Result};
use crate::field::{is_prime_power, FieldCtx, FieldElem};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RsVariant {
    Standard,
    Extended,
    DoublyExtended,
}

impl FromStr for RsVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" | "rs" => Ok(RsVariant::Standard),
            "extended" | "ext" => Ok(RsVariant::Extended),
            "doubly_extended" | "doubly-extended" | "dext" | "dext_rs" => {
                Ok(RsVariant::DoublyExtended)
            }
            other => Err(Error::InvalidArgument(format!(
                "unknown RS variant {other:?}"
            ))),
        }
    }
}

impl fmt::Display for RsVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RsVariant::Standard => "standard",
            RsVariant::Extended => "extended",
            RsVariant::DoublyExtended => "doubly_extended",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RsSpec {
    pub q: u64,
    pub k: u64,
    pub variant: RsVariant,
}

/// `(n, k, d)` of a block code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockParams {
    pub n: u64,
    pub k: u64,
    pub d: u64,
}

impl RsSpec {
    pub fn new(q: u64, k: u64, variant: RsVariant) -> Result<Self> {
        if is_prime_power(q).is_none() {
            return Err(Error::NotPrimePower(q));
        }
        let ok = match variant {
            RsVariant::Standard => k >= 1 && k + 1 < q,
            RsVariant::Extended | RsVariant::DoublyExtended => k >= 1 && k <= q,
        };
        if !ok {
            return Err(Error::InvalidDimension(format!(
                "k = {k} not allowed for {variant} RS over GF({q})"
            )));
        }
        Ok(RsSpec { q, k, variant })
    }

    pub fn length(&self) -> u64 {
        match self.variant {
            RsVariant::Standard => self.q - 1,
            RsVariant::Extended => self.q,
            RsVariant::DoublyExtended => self.q + 1,
        }
    }

    pub fn params(&self) -> BlockParams {
        let n = self.length();
        BlockParams {
            n,
            k: self.k,
            d: n - self.k + 1,
        }
    }
}

pub fn rs_params(spec: &RsSpec) -> BlockParams {
    spec.params()
}

/// Encoder bound to a field of matching size.
#[derive(Debug, Clone)]
pub struct RsEncoder {
    spec: RsSpec,
    field: FieldCtx,
    points: Vec<FieldElem>,
}

impl RsEncoder {
    pub fn new(spec: RsSpec) -> Result<Self> {
        let (p, m) = is_prime_power(spec.q).ok_or(Error::NotPrimePower(spec.q))?;
        Self::with_field(spec, FieldCtx::new(p, m)?)
    }

    pub fn with_field(spec: RsSpec, field: FieldCtx) -> Result<Self> {
        if field.size() != spec.q {
            return Err(Error::InvalidArgument(format!(
                "field of size {} for RS over GF({})",
                field.size(),
                spec.q
            )));
        }
        let mut points: Vec<FieldElem> = (0..spec.q - 1).map(|i| field.exp(i)).collect();
        if spec.variant != RsVariant::Standard {
            points.push(FieldElem::ZERO);
        }
        Ok(RsEncoder {
            spec,
            field,
            points,
        })
    }

    pub fn spec(&self) -> &RsSpec {
        &self.spec
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    /// Encodes `message` (coefficients, constant term first).
    pub fn encode(&self, message: &[FieldElem]) -> Result<Vec<FieldElem>> {
        let k = self.spec.k as usize;
        if message.len() != k {
            return Err(Error::MessageLengthMismatch {
                expected: k,
                got: message.len(),
            });
        }
        for &c in message {
            self.field.elem(c.0)?;
        }
        let f = &self.field;
        let mut out: Vec<FieldElem> = self
            .points
            .iter()
            .map(|&x| {
                message
                    .iter()
                    .rev()
                    .fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
            })
            .collect();
        if self.spec.variant == RsVariant::DoublyExtended {
            out.push(message[k - 1]);
        }
        Ok(out)
    }

    /// Message for integer index `idx`: `k` base-`q` digits, little-endian.
    pub fn message_from_index(&self, idx: u64) -> Vec<FieldElem> {
        message_digits(idx, self.spec.q, self.spec.k as usize)
    }
}

pub(crate) fn message_digits(mut idx: u64, q: u64, k: usize) -> Vec<FieldElem> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(FieldElem(idx % q));
        idx /= q;
    }
    out
}

/// Encodes a message given as raw integers.
pub fn rs_codeword(spec: &RsSpec, message: &[u64]) -> Result<Vec<u64>> {
    let enc = RsEncoder::new(*spec)?;
    let msg: Vec<FieldElem> = message
        .iter()
        .map(|&v| enc.field().elem(v))
        .collect::<Result<_>>()?;
    Ok(enc
        .encode(&msg)?
        .into_iter()
        .map(FieldElem::value)
        .collect())
}

/// Largest code enumerated by [`exhaustive_min_distance`].
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

/// Minimum nonzero codeword weight over the whole code.
pub fn exhaustive_min_distance(spec: &RsSpec) -> Result<u64> {
    let total = spec
        .q
        .checked_pow(spec.k as u32)
        .filter(|&t| t <= EXHAUSTIVE_LIMIT)
        .ok_or_else(|| Error::CodeTooLarge(format!("{}^{}", spec.q, spec.k)))?;
    let enc = RsEncoder::new(*spec)?;
    let mut best = u64::MAX;
    for idx in 1..total {
        let cw = enc.encode(&enc.message_from_index(idx))?;
        let w = cw.iter().filter(|c| !c.is_zero()).count() as u64;
        best = best.min(w);
    }
    Ok(best)
}
