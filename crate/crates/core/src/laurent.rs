//! Truncated formal Laurent series in descending powers of z.
//!
//! A series stores coefficients for powers top, top-1, ... . An *exact*
//! series (a polynomial) is zero below its stored range; an inexact one is
//! unknown there, and every operation keeps the tightest floor it can prove.

use num_traits::{One, Zero};

use crate::error::{QlhError, Result};
use crate::form::MomentForm;
use crate::poly::Poly;
use crate::scalar::{convolve, pow, qbracket, QParam, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    top: i64,
    /// coeffs[i] multiplies z^{top - i}
    coeffs: Vec<Scalar>,
    exact: bool,
}

impl LaurentSeries {
    /// Inexact series with known coefficients for powers top..=top-len+1.
    pub fn new(top: i64, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(QlhError::EmptyOverlap);
        }
        Ok(LaurentSeries {
            top,
            coeffs,
            exact: false,
        })
    }

    /// A polynomial in z, viewed as an exact series.
    pub fn from_poly(p: &Poly) -> Self {
        match p.degree() {
            None => LaurentSeries {
                top: 0,
                coeffs: vec![],
                exact: true,
            },
            Some(d) => LaurentSeries {
                top: d as i64,
                coeffs: p.coeffs().iter().rev().cloned().collect(),
                exact: true,
            },
        }
    }

    /// The exact monomial c z^k (k may be negative).
    pub fn monomial(k: i64, c: Scalar) -> Self {
        LaurentSeries {
            top: k,
            coeffs: vec![c],
            exact: true,
        }
    }

    /// S(u)(z) = -sum_n (u)_n z^{-n-1}.
    pub fn stieltjes(u: &MomentForm) -> Self {
        LaurentSeries {
            top: -1,
            coeffs: u.moments().iter().map(|m| -m).collect(),
            exact: false,
        }
    }

    pub fn top(&self) -> i64 {
        self.top
    }

    fn low(&self) -> i64 {
        self.top - self.coeffs.len() as i64 + 1
    }

    /// Lowest power with a known coefficient; None when exact.
    pub fn floor(&self) -> Option<i64> {
        (!self.exact).then(|| self.low())
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Coefficient of z^k, or None if it lies below the floor.
    pub fn coeff(&self, k: i64) -> Option<Scalar> {
        if k > self.top {
            return Some(Scalar::zero());
        }
        if k >= self.low() {
            return Some(self.coeffs[(self.top - k) as usize].clone());
        }
        self.exact.then(Scalar::zero)
    }

    /// (power, coefficient) pairs over the known range, descending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.top - i as i64, c))
    }

    fn build(
        top: i64,
        floor: Option<i64>,
        exact_low: i64,
        get: impl Fn(i64) -> Scalar,
    ) -> Result<Self> {
        let (low, exact) = match floor {
            Some(f) => (f, false),
            None => (exact_low, true),
        };
        if !exact && low > top {
            return Err(QlhError::EmptyOverlap);
        }
        let coeffs = if low > top {
            vec![]
        } else {
            (low..=top).rev().map(get).collect()
        };
        Ok(LaurentSeries { top, coeffs, exact })
    }

    pub fn add(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        let floor = match (self.floor(), other.floor()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let top = self.top.max(other.top);
        let low = self.low().min(other.low());
        Self::build(top, floor, low, |k| {
            self.coeff(k).unwrap_or_default() + other.coeff(k).unwrap_or_default()
        })
    }

    pub fn neg(&self) -> LaurentSeries {
        LaurentSeries {
            top: self.top,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            exact: self.exact,
        }
    }

    pub fn sub(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> LaurentSeries {
        LaurentSeries {
            top: self.top,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            exact: self.exact,
        }
    }

    pub fn mul(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        let top = self.top + other.top;
        let floor = match (self.floor(), other.floor()) {
            (Some(fa), Some(fb)) => Some((fa + other.top).max(fb + self.top)),
            (Some(fa), None) => Some(fa + other.top),
            (None, Some(fb)) => Some(fb + self.top),
            (None, None) => None,
        };
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            if floor.is_some_and(|f| f > top) {
                return Err(QlhError::EmptyOverlap);
            }
            let n = floor.map_or(0, |f| (top - f + 1) as usize);
            return Ok(LaurentSeries {
                top,
                coeffs: vec![Scalar::zero(); n],
                exact: floor.is_none(),
            });
        }
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if let Some(f) = floor {
            if f > top {
                return Err(QlhError::EmptyOverlap);
            }
            len = len.min((top - f + 1) as usize);
        }
        let full = convolve(&self.coeffs, &other.coeffs, len);
        Ok(LaurentSeries {
            top,
            coeffs: full,
            exact: floor.is_none(),
        })
    }

    pub fn mul_poly(&self, p: &Poly) -> Result<LaurentSeries> {
        self.mul(&LaurentSeries::from_poly(p))
    }

    /// H_q: z^k -> [k]_q z^{k-1}, with [k]_q = (q^k - 1)/(q - 1) for all k.
    pub fn hq(&self, q: &QParam) -> LaurentSeries {
        LaurentSeries {
            top: self.top - 1,
            coeffs: self.terms().map(|(k, c)| qbracket(k, q) * c).collect(),
            exact: self.exact,
        }
    }

    /// h_a: coefficient of z^k times a^k.
    pub fn ha(&self, a: &Scalar) -> Result<LaurentSeries> {
        if a.is_zero() {
            return Err(QlhError::ZeroDilation);
        }
        Ok(LaurentSeries {
            top: self.top,
            coeffs: self.terms().map(|(k, c)| pow(a, k) * c).collect(),
            exact: self.exact,
        })
    }

    /// Drops leading zero coefficients.
    pub fn trimmed(&self) -> LaurentSeries {
        let skip = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let keep = if self.exact {
            skip
        } else {
            skip.min(self.coeffs.len().saturating_sub(1))
        };
        LaurentSeries {
            top: self.top - keep as i64,
            coeffs: self.coeffs[keep..].to_vec(),
            exact: self.exact,
        }
    }

    /// 1/S. Needs a nonzero leading coefficient; an exact input yields a
    /// result computed down to `min_floor`.
    pub fn reciprocal(&self, min_floor: i64) -> Result<LaurentSeries> {
        let s = self.trimmed();
        if s.coeffs.is_empty() || s.coeffs[0].is_zero() {
            return Err(QlhError::InvalidParameter(
                "series has no invertible leading term".into(),
            ));
        }
        let t = s.top;
        let top = -t;
        let floor = match s.floor() {
            Some(f) => (top - (t - f)).max(min_floor),
            None => min_floor,
        };
        if floor > top {
            return Err(QlhError::EmptyOverlap);
        }
        let n = (top - floor + 1) as usize;
        let c0inv = s.coeffs[0].recip();
        let mut out: Vec<Scalar> = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = if j == 0 {
                Scalar::one()
            } else {
                Scalar::zero()
            };
            for i in 1..=j.min(s.coeffs.len() - 1) {
                acc -= &s.coeffs[i] * &out[j - i];
            }
            out.push(acc * &c0inv);
        }
        Ok(LaurentSeries {
            top,
            coeffs: out,
            exact: false,
        })
    }

    /// Keeps powers >= low; fails if the series is not known that far down.
    pub fn truncate(&self, low: i64) -> Result<LaurentSeries> {
        if let Some(f) = self.floor() {
            if f > low {
                return Err(QlhError::InsufficientOrder {
                    needed: (-low).max(0) as usize,
                    available: (-f).max(0) as usize,
                });
            }
        }
        if low > self.top {
            return Err(QlhError::EmptyOverlap);
        }
        Self::build(self.top, Some(low), low, |k| self.coeff(k).unwrap())
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Highest power with a nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<(i64, Scalar)> {
        self.terms()
            .find(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
    }
}
