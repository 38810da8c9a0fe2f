//! Exact rational scalars and the q-combinatorics built on them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{QlhError, Result};

/// Exact, always-reduced rational number.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Integer power, negative exponents allowed for nonzero bases.
pub fn pow(x: &Scalar, e: i64) -> Scalar {
    if e >= 0 {
        num_traits::pow::Pow::pow(x, e as u64)
    } else {
        num_traits::pow::Pow::pow(&x.recip(), (-e) as u64)
    }
}

/// First `len` entries of the Cauchy product sum_{i+j=n} a_i b_j, computed
/// over integers after clearing denominators (one reduction per entry).
pub fn convolve(a: &[Scalar], b: &[Scalar], len: usize) -> Vec<Scalar> {
    let clear = |v: &[Scalar]| -> (Vec<BigInt>, BigInt) {
        let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        (ints, l)
    };
    let (ai, la) = clear(a);
    let (bi, lb) = clear(b);
    let den = la * lb;
    (0..len)
        .map(|n| {
            let lo = n.saturating_sub(bi.len().saturating_sub(1));
            let hi = n.min(ai.len().saturating_sub(1));
            let mut acc = BigInt::zero();
            if !ai.is_empty() && !bi.is_empty() {
                for i in lo..=hi {
                    if !ai[i].is_zero() {
                        acc += &ai[i] * &bi[n - i];
                    }
                }
            }
            Scalar::new(acc, den.clone())
        })
        .collect()
}

/// Parses "p/q" or "p". Zero denominators are rejected.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || QlhError::Parse(format!("not a rational: {text:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(QlhError::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Scalar::new(n, d))
        }
        None => Ok(Scalar::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// A validated q: not 0, 1 or -1, so q^n != 1 for every n >= 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QParam(Scalar);

impl QParam {
    pub fn new(candidate: Scalar) -> Result<Self> {
        if candidate.is_zero() || candidate.abs().is_one() {
            return Err(QlhError::RootOfUnity(candidate));
        }
        Ok(QParam(candidate))
    }

    pub fn value(&self) -> &Scalar {
        &self.0
    }

    pub fn inv(&self) -> QParam {
        QParam(self.0.recip())
    }

    pub fn pow(&self, e: i64) -> Scalar {
        pow(&self.0, e)
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn validate_q(candidate: Scalar) -> Result<QParam> {
    QParam::new(candidate)
}

/// [n]_q = (q^n - 1)/(q - 1), for any integer n (negative n included).
pub fn qbracket(n: i64, q: &QParam) -> Scalar {
    (q.pow(n) - Scalar::one()) / (q.value() - Scalar::one())
}

/// (a; q)_n = prod_{k=1}^{n} (1 - a q^{k-1}).
pub fn qpochhammer(a: &Scalar, q: &QParam, n: usize) -> Scalar {
    let mut acc = Scalar::one();
    let mut qk = Scalar::one();
    for _ in 0..n {
        acc *= Scalar::one() - a * &qk;
        qk *= q.value();
    }
    acc
}
