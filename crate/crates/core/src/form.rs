//! Truncated moment functionals and their operator algebra.
//!
//! A form is stored by its moments (u)_0..(u)_N. Every operation records the
//! exact order of its output; reading past it is an error, never a zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{QlhError, Result};
use crate::poly::Poly;
use crate::scalar::{convolve, qbracket, QParam, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MomentForm {
    moments: Vec<Scalar>,
}

impl MomentForm {
    /// A form of order `moments.len() - 1`; need not be normalized.
    pub fn new(moments: Vec<Scalar>) -> Result<Self> {
        if moments.is_empty() {
            return Err(QlhError::InvalidParameter(
                "a form needs at least one moment".into(),
            ));
        }
        Ok(MomentForm { moments })
    }

    /// A user-declared form: (u)_0 must be 1.
    pub fn normalized(moments: Vec<Scalar>) -> Result<Self> {
        let u = MomentForm::new(moments)?;
        if !u.is_normalized() {
            return Err(QlhError::InvalidParameter(format!(
                "form is not normalized: (u)_0 = {}",
                u.moments[0]
            )));
        }
        Ok(u)
    }

    pub fn zero(order: usize) -> Self {
        MomentForm {
            moments: vec![Scalar::zero(); order + 1],
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.moments[0].is_one()
    }

    pub fn order(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn moments(&self) -> &[Scalar] {
        &self.moments
    }

    pub fn moment(&self, n: usize) -> Result<&Scalar> {
        self.moments.get(n).ok_or(QlhError::InsufficientOrder {
            needed: n,
            available: self.order(),
        })
    }

    pub fn truncate(&self, order: usize) -> Result<MomentForm> {
        self.require(order)?;
        Ok(MomentForm {
            moments: self.moments[..=order].to_vec(),
        })
    }

    fn require(&self, n: usize) -> Result<()> {
        if n > self.order() {
            return Err(QlhError::InsufficientOrder {
                needed: n,
                available: self.order(),
            });
        }
        Ok(())
    }

    /// delta_c: moments c^n.
    pub fn dirac(c: &Scalar, order: usize) -> Self {
        let mut v = Vec::with_capacity(order + 1);
        let mut p = Scalar::one();
        for _ in 0..=order {
            v.push(p.clone());
            p *= c;
        }
        MomentForm { moments: v }
    }

    /// delta': <delta', x^n> = -n 0^{n-1}.
    pub fn dirac_prime(order: usize) -> Self {
        let mut u = MomentForm::zero(order);
        if order >= 1 {
            u.moments[1] = -Scalar::one();
        }
        u
    }

    pub fn add(&self, other: &MomentForm) -> Result<MomentForm> {
        self.same_order(other)?;
        Ok(MomentForm {
            moments: self
                .moments
                .iter()
                .zip(&other.moments)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &MomentForm) -> Result<MomentForm> {
        self.same_order(other)?;
        Ok(MomentForm {
            moments: self
                .moments
                .iter()
                .zip(&other.moments)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> MomentForm {
        MomentForm {
            moments: self.moments.iter().map(|a| a * c).collect(),
        }
    }

    fn same_order(&self, other: &MomentForm) -> Result<()> {
        if self.order() != other.order() {
            return Err(QlhError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// <u, f>.
    pub fn pair(&self, f: &Poly) -> Result<Scalar> {
        if let Some(d) = f.degree() {
            self.require(d)?;
        }
        Ok(f.coeffs()
            .iter()
            .zip(&self.moments)
            .map(|(a, b)| a * b)
            .sum())
    }

    /// (H_q u)_n = -[n]_q (u)_{n-1}.
    pub fn hq(&self, q: &QParam) -> MomentForm {
        let mut v = vec![Scalar::zero()];
        for n in 1..=self.order() {
            v.push(-qbracket(n as i64, q) * &self.moments[n - 1]);
        }
        MomentForm { moments: v }
    }

    /// (h_a u)_n = a^n (u)_n.
    pub fn ha(&self, a: &Scalar) -> Result<MomentForm> {
        if a.is_zero() {
            return Err(QlhError::ZeroDilation);
        }
        Ok(self.dilate(a))
    }

    pub(crate) fn dilate(&self, a: &Scalar) -> MomentForm {
        let mut p = Scalar::one();
        let mut v = Vec::with_capacity(self.moments.len());
        for m in &self.moments {
            v.push(m * &p);
            p *= a;
        }
        MomentForm { moments: v }
    }

    /// (f u)_n = sum_j f_j (u)_{n+j}; loses deg f moments of order.
    pub fn mul_poly(&self, f: &Poly) -> Result<MomentForm> {
        let d = match f.degree() {
            None => return Ok(MomentForm::zero(self.order())),
            Some(d) => d,
        };
        self.require(d)?;
        let order = self.order() - d;
        let moments = (0..=order)
            .map(|n| {
                f.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c * &self.moments[n + j])
                    .sum()
            })
            .collect();
        Ok(MomentForm { moments })
    }

    /// ((x-c)^{-1} u)_n = sum_{k<n} c^{n-1-k} (u)_k. Entry n only needs
    /// moments below n, so the result has order N+1.
    pub fn div_xc(&self, c: &Scalar) -> MomentForm {
        let mut v = vec![Scalar::zero()];
        let mut acc = Scalar::zero();
        for m in &self.moments {
            acc = acc * c + m;
            v.push(acc.clone());
        }
        MomentForm { moments: v }
    }

    /// x^{-1} u.
    pub fn div_x(&self) -> MomentForm {
        self.div_xc(&Scalar::zero())
    }

    /// (uv)_n = sum_k (u)_k (v)_{n-k}.
    pub fn cauchy(&self, v: &MomentForm) -> Result<MomentForm> {
        self.same_order(v)?;
        let moments = convolve(&self.moments, &v.moments, self.order() + 1);
        Ok(MomentForm { moments })
    }

    /// Convolution inverse: u u^{-1} = delta_0.
    pub fn inverse(&self) -> Result<MomentForm> {
        let u0 = &self.moments[0];
        if u0.is_zero() {
            return Err(QlhError::NonInvertible);
        }
        let inv0 = u0.recip();
        let mut w: Vec<Scalar> = vec![inv0.clone()];
        for n in 1..=self.order() {
            let s: Scalar = (1..=n).map(|k| &self.moments[k] * &w[n - k]).sum();
            w.push(-s * &inv0);
        }
        Ok(MomentForm { moments: w })
    }

    /// The polynomial u f: coefficient i is sum_{j>=i} (u)_{j-i} f_j.
    pub fn poly_product(&self, f: &Poly) -> Result<Poly> {
        let d = match f.degree() {
            None => return Ok(Poly::zero()),
            Some(d) => d,
        };
        self.require(d)?;
        Ok(Poly::new(
            (0..=d)
                .map(|i| {
                    (i..=d)
                        .map(|j| &self.moments[j - i] * f.coeffs()[j].clone())
                        .sum()
                })
                .collect(),
        ))
    }

    /// u theta_0 f: coefficient i is sum_{j>i} (u)_{j-1-i} f_j.
    pub fn theta0_product(&self, f: &Poly) -> Result<Poly> {
        self.poly_product(&f.theta(&Scalar::zero()))
    }

    /// Hankel determinant det((u)_{i+j})_{i,j=0..n}, by fraction-free
    /// elimination on the integer-scaled matrix.
    pub fn hankel(&self, n: usize) -> Result<Scalar> {
        self.require(2 * n)?;
        let l = self.moments[..=2 * n]
            .iter()
            .fold(BigInt::one(), |acc, m| acc.lcm(m.denom()));
        let scaled: Vec<BigInt> = self.moments[..=2 * n]
            .iter()
            .map(|m| (m * Scalar::from_integer(l.clone())).to_integer())
            .collect();
        let size = n + 1;
        let mut a: Vec<Vec<BigInt>> = (0..size)
            .map(|i| (0..size).map(|j| scaled[i + j].clone()).collect())
            .collect();
        let det = bareiss(&mut a);
        Ok(Scalar::new(det, num_traits::pow(l, size)))
    }
}

fn bareiss(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Three-term recurrence coefficients: `betas[k]` is beta_k (k >= 0) and
/// `gammas[k]` is gamma_{k+1} (all nonzero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RecurrencePair {
    pub betas: Vec<Scalar>,
    pub gammas: Vec<Scalar>,
}

impl RecurrencePair {
    pub fn new(betas: Vec<Scalar>, gammas: Vec<Scalar>) -> Result<Self> {
        if let Some(k) = gammas.iter().position(Zero::is_zero) {
            return Err(QlhError::InvalidParameter(format!(
                "gamma_{} vanishes",
                k + 1
            )));
        }
        Ok(RecurrencePair { betas, gammas })
    }

    pub fn beta(&self, k: usize) -> Result<&Scalar> {
        self.betas
            .get(k)
            .ok_or_else(|| QlhError::InsufficientCoefficients(format!("beta_{k}")))
    }

    /// gamma_k for k >= 1.
    pub fn gamma(&self, k: usize) -> Result<&Scalar> {
        assert!(k >= 1, "gamma index starts at 1");
        self.gammas
            .get(k - 1)
            .ok_or_else(|| QlhError::InsufficientCoefficients(format!("gamma_{k}")))
    }

    /// Coefficients of the associated sequence: (beta_{n+1}), (gamma_{n+2}).
    pub fn shifted(&self) -> RecurrencePair {
        RecurrencePair {
            betas: self.betas.iter().skip(1).cloned().collect(),
            gammas: self.gammas.iter().skip(1).cloned().collect(),
        }
    }

    /// beta_n -> beta_n / a, gamma_n -> gamma_n / a^2.
    pub fn rescaled(&self, a: &Scalar) -> RecurrencePair {
        let a2 = a * a;
        RecurrencePair {
            betas: self.betas.iter().map(|b| b / a).collect(),
            gammas: self.gammas.iter().map(|g| g / &a2).collect(),
        }
    }
}

/// Normalized moments (u)_0..(u)_N of the form orthogonalising the
/// recurrence, via weighted Motzkin paths:
/// c_{n+1,k} = c_{n,k-1} + beta_k c_{n,k} + gamma_{k+1} c_{n,k+1}, (u)_n = c_{n,0}.
/// Needs beta_0..beta_{(N-1)/2} and gamma_1..gamma_{N/2}.
pub fn moments_from_recurrence(r: &RecurrencePair, order: usize) -> Result<MomentForm> {
    if order >= 1 {
        r.beta((order - 1) / 2)?;
    }
    if order >= 2 {
        r.gamma(order / 2)?;
    }
    let mut row: Vec<Scalar> = vec![Scalar::one()];
    let mut moments = vec![Scalar::one()];
    for n in 0..order {
        // heights above N-n-1 can no longer return to 0 in time
        let top = (n + 1).min(order - n - 1);
        let mut next = vec![Scalar::zero(); top + 1];
        for (k, slot) in next.iter_mut().enumerate() {
            let mut v = Scalar::zero();
            if k >= 1 && k - 1 < row.len() {
                v += &row[k - 1];
            }
            if k < row.len() {
                v += r.beta(k)? * &row[k];
            }
            if k + 1 < row.len() {
                v += r.gamma(k + 1)? * &row[k + 1];
            }
            *slot = v;
        }
        moments.push(next[0].clone());
        row = next;
    }
    MomentForm::new(moments)
}

/// Chebyshev algorithm: beta_n for 2n+1 <= N and gamma_n for 2n <= N.
/// Fails with NotRegular(k) at the first vanishing Hankel determinant.
pub fn recurrence_from_moments(u: &MomentForm) -> Result<RecurrencePair> {
    let mu = u.moments();
    let big_n = u.order();
    if mu[0].is_zero() {
        return Err(QlhError::NotRegular(0));
    }
    // sigma[k][l] = <u, x^l P_k>, valid for l + k <= N
    let mut prev: Vec<Scalar> = vec![Scalar::zero(); big_n + 1];
    let mut cur: Vec<Scalar> = mu.to_vec();
    let mut betas: Vec<Scalar> = Vec::new();
    let mut gammas: Vec<Scalar> = Vec::new();
    if big_n >= 1 {
        betas.push(&mu[1] / &mu[0]);
    }
    let mut k = 1;
    while 2 * k <= big_n {
        let alpha = betas[k - 1].clone();
        let g = if k == 1 {
            Scalar::zero()
        } else {
            gammas[k - 2].clone()
        };
        let mut next = vec![Scalar::zero(); big_n + 1];
        for l in k..=big_n - k {
            next[l] = &cur[l + 1] - &alpha * &cur[l] - &g * &prev[l];
        }
        if next[k].is_zero() {
            return Err(QlhError::NotRegular(k));
        }
        gammas.push(&next[k] / &cur[k - 1]);
        if 2 * k < big_n {
            betas.push(&next[k + 1] / &next[k] - &cur[k] / &cur[k - 1]);
        }
        prev = cur;
        cur = next;
        k += 1;
    }
    Ok(RecurrencePair { betas, gammas })
}

/// Checks regularity through the Chebyshev route; returns the largest n
/// with Delta_n verified nonzero.
pub fn verified_hankel_range(u: &MomentForm) -> Result<usize> {
    recurrence_from_moments(u)?;
    Ok(u.order() / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn ints(v: &[i64]) -> MomentForm {
        MomentForm::new(v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn catalan_pair(m: usize) -> RecurrencePair {
        RecurrencePair::new(vec![int(0); m], vec![int(1); m]).unwrap()
    }

    #[test]
    fn dirac_forms() {
        assert_eq!(MomentForm::dirac(&int(0), 3), ints(&[1, 0, 0, 0]));
        assert_eq!(MomentForm::dirac(&int(1), 3), ints(&[1, 1, 1, 1]));
        assert_eq!(MomentForm::dirac(&int(2), 3), ints(&[1, 2, 4, 8]));
        assert_eq!(MomentForm::dirac_prime(3), ints(&[0, -1, 0, 0]));
    }

    #[test]
    fn hq_form_examples() {
        let q = QParam::new(int(2)).unwrap();
        assert_eq!(MomentForm::dirac(&int(0), 3).hq(&q), ints(&[0, -1, 0, 0]));
        let ones = MomentForm::dirac(&int(1), 5);
        assert_eq!(ones.hq(&q).moments()[3], int(-7));
        assert!(ones.hq(&q).moments()[0].is_zero());
    }

    #[test]
    fn ha_form_examples() {
        let u = ints(&[1, 3, -2, 5]);
        assert_eq!(u.ha(&int(1)).unwrap(), u);
        assert_eq!(
            MomentForm::dirac(&int(3), 4).ha(&frac(1, 2)).unwrap(),
            MomentForm::dirac(&frac(3, 2), 4)
        );
        assert_eq!(u.ha(&int(5)).unwrap().ha(&frac(1, 5)).unwrap(), u);
        assert_eq!(u.ha(&int(0)), Err(QlhError::ZeroDilation));
    }

    #[test]
    fn mul_poly_examples() {
        let u = ints(&[1, 3, -2, 5, 7]);
        assert_eq!(u.mul_poly(&Poly::one()).unwrap(), u);
        assert_eq!(u.mul_poly(&Poly::x()).unwrap(), ints(&[3, -2, 5, 7]));
        let c = frac(2, 3);
        let d = MomentForm::dirac(&c, 6);
        assert_eq!(
            d.mul_poly(&Poly::linear_root(&c)).unwrap(),
            MomentForm::zero(5)
        );
        assert!(matches!(
            u.mul_poly(&Poly::monomial(5, int(1))),
            Err(QlhError::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn div_xc_examples() {
        let u = ints(&[1, 3, -2, 5, 7]);
        let w = u.div_x();
        assert_eq!(w, ints(&[0, 1, 3, -2, 5, 7]));
        let c = frac(-1, 2);
        // (x - c)((x - c)^{-1} u) = u
        let back = u.div_xc(&c).mul_poly(&Poly::linear_root(&c)).unwrap();
        assert_eq!(back, u);
        // (x - c)^{-1}((x - c) u) = u - (u)_0 delta_c
        let lhs = u.mul_poly(&Poly::linear_root(&c)).unwrap().div_xc(&c);
        let rhs = u
            .truncate(4)
            .unwrap()
            .sub(&MomentForm::dirac(&c, 4))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cauchy_and_inverse() {
        let u = ints(&[1, 3, -2, 5, 7]);
        assert_eq!(u.cauchy(&MomentForm::dirac(&int(0), 4)).unwrap(), u);
        let ones = MomentForm::dirac(&int(1), 5);
        assert_eq!(ones.cauchy(&ones).unwrap(), ints(&[1, 2, 3, 4, 5, 6]));
        let inv = u.inverse().unwrap();
        assert_eq!(inv.moments()[1], int(-3));
        assert_eq!(inv.moments()[2], int(9 + 2));
        assert_eq!(u.cauchy(&inv).unwrap(), MomentForm::dirac(&int(0), 4));
        assert_eq!(inv.inverse().unwrap(), u);
        assert_eq!(ints(&[0, 1]).inverse(), Err(QlhError::NonInvertible));
        assert!(matches!(
            u.cauchy(&ones),
            Err(QlhError::OrderMismatch { .. })
        ));
    }

    #[test]
    fn poly_products() {
        let u = ints(&[1, 3, -2, 5]);
        let f = Poly::from_ints(&[2, -1, 4]);
        assert_eq!(MomentForm::dirac(&int(0), 3).poly_product(&f).unwrap(), f);
        assert_eq!(u.poly_product(&Poly::one()).unwrap(), Poly::one());
        let ones = MomentForm::dirac(&int(1), 3);
        assert_eq!(
            ones.poly_product(&Poly::monomial(2, int(1))).unwrap(),
            Poly::from_ints(&[1, 1, 1])
        );
        assert!(u.theta0_product(&Poly::from_ints(&[9])).unwrap().is_zero());
        assert_eq!(
            MomentForm::dirac(&int(0), 3).theta0_product(&f).unwrap(),
            f.theta(&int(0))
        );
        let g = u.theta0_product(&Poly::monomial(4, int(1))).unwrap();
        assert_eq!(g.degree(), Some(3));
        assert_eq!(g.lead(), int(1));
    }

    #[test]
    fn hankel_examples() {
        let cat = ints(&[1, 0, 1, 0, 2, 0, 5]);
        assert_eq!(cat.hankel(0).unwrap(), int(1));
        assert_eq!(cat.hankel(1).unwrap(), int(1));
        assert_eq!(cat.hankel(2).unwrap(), int(1));
        assert_eq!(MomentForm::dirac(&int(0), 4).hankel(1).unwrap(), int(0));
        assert!(cat.hankel(4).is_err());
        let u = MomentForm::new(vec![
            frac(1, 2),
            frac(1, 3),
            frac(1, 4),
            frac(1, 5),
            frac(1, 6),
        ])
        .unwrap();
        // Hilbert-type matrix: det [[1/2,1/3],[1/3,1/4]] = 1/8 - 1/9 = 1/72
        assert_eq!(u.hankel(1).unwrap(), frac(1, 72));
    }

    #[test]
    fn recurrence_round_trip() {
        let cat = moments_from_recurrence(&catalan_pair(4), 6).unwrap();
        assert_eq!(cat, ints(&[1, 0, 1, 0, 2, 0, 5]));
        let r = recurrence_from_moments(&cat).unwrap();
        assert_eq!(r.betas, vec![int(0); 3]);
        assert_eq!(r.gammas, vec![int(1); 3]);
        let c = frac(5, 3);
        let shifted = RecurrencePair::new(vec![c.clone(); 3], vec![int(2); 3]).unwrap();
        assert_eq!(
            moments_from_recurrence(&shifted, 4).unwrap().moments()[1],
            c
        );
        assert_eq!(
            recurrence_from_moments(&MomentForm::dirac(&int(1), 6)),
            Err(QlhError::NotRegular(1))
        );
    }

    #[test]
    fn moments_need_enough_coefficients() {
        let r = RecurrencePair::new(vec![int(0); 2], vec![int(1); 2]).unwrap();
        assert!(moments_from_recurrence(&r, 4).is_ok());
        assert!(matches!(
            moments_from_recurrence(&r, 6),
            Err(QlhError::InsufficientCoefficients(_))
        ));
    }
}
