//! Dense univariate polynomials over exact rationals, with the q-derivative
//! H_q, the dilation h_a and the divided difference theta_c.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{QlhError, Result};
use crate::scalar::{int, qbracket, QParam, Scalar};

/// Ascending coefficients; empty means the zero polynomial (degree -inf).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// x
    pub fn x() -> Self {
        Poly::monomial(1, Scalar::one())
    }

    /// c x^k
    pub fn monomial(k: usize, c: Scalar) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// x - c
    pub fn linear_root(c: &Scalar) -> Self {
        Poly::new(vec![-c.clone(), Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer, None standing for -inf.
    pub fn deg(&self) -> Option<i64> {
        self.degree().map(|d| d as i64)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lead().recip())
    }

    /// Multiplication by x^k.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Scalar::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(v)
    }

    /// (H_q f)(x) = (f(qx) - f(x)) / ((q-1)x); x^k -> [k]_q x^{k-1}.
    pub fn hq(&self, q: &QParam) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| qbracket(i as i64, q) * c)
                .collect(),
        )
    }

    /// (h_a f)(x) = f(ax).
    pub fn ha(&self, a: &Scalar) -> Result<Poly> {
        if a.is_zero() {
            return Err(QlhError::ZeroDilation);
        }
        Ok(self.dilate(a))
    }

    pub(crate) fn dilate(&self, a: &Scalar) -> Poly {
        let mut p = Scalar::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            v.push(c * &p);
            p *= a;
        }
        Poly::new(v)
    }

    /// (theta_c f)(x) = (f(x) - f(c)) / (x - c), by synthetic division.
    pub fn theta(&self, c: &Scalar) -> Poly {
        let n = self.coeffs.len();
        if n <= 1 {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); n - 1];
        let mut acc = Scalar::zero();
        for i in (1..n).rev() {
            acc = acc * c + &self.coeffs[i];
            out[i - 1] = acc.clone();
        }
        Poly::new(out)
    }

    /// f = quot * g + rem with deg rem < deg g.
    pub fn divrem(&self, g: &Poly) -> Result<(Poly, Poly)> {
        let dg = g.degree().ok_or(QlhError::DivisionByZeroPoly)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead_inv = g.lead().recip();
        let mut quot = vec![Scalar::zero(); rem.len() - dg];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dg] * &lead_inv;
            if !c.is_zero() {
                for (j, gj) in g.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * gj;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dg);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// All coefficients of odd powers vanish.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// All coefficients of even powers vanish.
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Zero::is_zero)
    }

    /// Rational roots with multiplicities, sorted ascending.
    pub fn rational_roots(&self) -> Vec<(Scalar, usize)> {
        self.factor_rational().0
    }

    /// Splits f = lead * prod (x - c)^m * rest where `rest` is monic and has
    /// no rational roots. Returns the roots and `rest`.
    pub fn factor_rational(&self) -> (Vec<(Scalar, usize)>, Poly) {
        assert!(!self.is_zero(), "rational_roots of the zero polynomial");
        let mut f = self.monic();
        let mut roots = Vec::new();
        let mut zero_mult = 0;
        while f.coeff(0).is_zero() && f.degree().unwrap_or(0) > 0 {
            f = f.theta(&Scalar::zero());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((Scalar::zero(), zero_mult));
        }
        if f.degree().unwrap_or(0) > 0 {
            let ints = primitive_integer(&f);
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            let ps = divisors(&a0);
            let qs = divisors(&an);
            let mut cands: Vec<Scalar> = Vec::new();
            for p in &ps {
                for qd in &qs {
                    let r = Scalar::new(p.clone(), qd.clone());
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
            cands.sort();
            cands.dedup();
            for c in cands {
                let mut m = 0;
                while f.degree().unwrap_or(0) > 0 && f.eval(&c).is_zero() {
                    f = f.theta(&c);
                    m += 1;
                }
                if m > 0 {
                    roots.push((c, m));
                }
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        (roots, f.monic())
    }
}

/// Integer coefficients of a primitive multiple of f.
fn primitive_integer(f: &Poly) -> Vec<BigInt> {
    let l = f
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|c| (c * Scalar::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // prime factorisation by trial division; inputs here are small
    let mut m = n.clone();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += 1;
    }
    if m > BigInt::one() {
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

fn add_coeffs(a: &[Scalar], b: &[Scalar], sign: bool) -> Poly {
    let n = a.len().max(b.len());
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Scalar::zero);
        let y = b.get(i).cloned().unwrap_or_else(Scalar::zero);
        v.push(if sign { x + y } else { x - y });
    }
    Poly::new(v)
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Polynomial with given rational coefficients, ascending.
#[macro_export]
macro_rules! poly {
    ($($c:expr),* $(,)?) => {
        $crate::poly::Poly::new(vec![$($c),*])
    };
}
