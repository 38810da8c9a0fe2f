//! Monic orthogonal sequences, associated polynomials and the structure
//! relation Phi H_q P_{n+1} - h_q(B P_n^(1)) = sum_{nu} lambda_{n,nu} P_nu.

use num_traits::Zero;

use crate::equation::Triplet;
use crate::error::{QlhError, Result};
use crate::form::{recurrence_from_moments, MomentForm, RecurrencePair};
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mops {
    pub polys: Vec<Poly>,
    pub source: RecurrencePair,
}

/// P_0..P_m from P_{n+1} = (x - beta_n) P_n - gamma_n P_{n-1}.
pub fn mops_from_recurrence(r: &RecurrencePair, m: usize) -> Result<Mops> {
    let mut polys = vec![Poly::one()];
    for n in 0..m {
        let mut next = (Poly::x() - Poly::constant(r.beta(n)?.clone())) * &polys[n];
        if n >= 1 {
            next = next - polys[n - 1].scale(r.gamma(n)?);
        }
        polys.push(next);
    }
    Ok(Mops {
        polys,
        source: r.clone(),
    })
}

/// P_n^(1) = u theta_0 P_{n+1} for n = 0..m-1.
pub fn associated_polys(m: &Mops, u: &MomentForm) -> Result<Mops> {
    let polys = m.polys[1..]
        .iter()
        .map(|p| u.theta0_product(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(Mops {
        polys,
        source: m.source.shifted(),
    })
}

/// Values P_0(x)..P_m(x) of the sequence defined by r.
pub fn eval_sequence(r: &RecurrencePair, x: &Scalar, m: usize) -> Result<Vec<Scalar>> {
    let mut v = vec![Scalar::from_integer(1.into())];
    for n in 0..m {
        let mut next = (x - r.beta(n)?) * &v[n];
        if n >= 1 {
            next -= r.gamma(n)? * &v[n - 1];
        }
        v.push(next);
    }
    Ok(v)
}

/// Coefficients of f in the monic basis, by descending back-substitution.
pub fn expand_in_basis(f: &Poly, basis: &[Poly]) -> Result<Vec<Scalar>> {
    let d = match f.degree() {
        None => return Ok(vec![]),
        Some(d) => d,
    };
    if d >= basis.len() {
        return Err(QlhError::InsufficientCoefficients(format!(
            "basis element of degree {d}"
        )));
    }
    let mut rest = f.clone();
    let mut out = vec![Scalar::zero(); d + 1];
    for k in (0..=d).rev() {
        let c = rest.coeff(k);
        if !c.is_zero() {
            rest = rest - basis[k].scale(&c);
        }
        out[k] = c;
    }
    Ok(out)
}

/// lambda_{n,nu} for nu = 0..=deg, using the given MOPS of u.
pub fn structure_coeffs_with(
    m: &Mops,
    u: &MomentForm,
    t: &Triplet,
    n: usize,
) -> Result<Vec<Scalar>> {
    let p = m
        .polys
        .get(n + 1)
        .ok_or_else(|| QlhError::InsufficientCoefficients(format!("P_{}", n + 1)))?;
    let p1 = u.theta0_product(p)?;
    let f = &t.phi * p.hq(&t.q) - (&t.b * &p1).dilate(t.q.value());
    expand_in_basis(&f, &m.polys)
}

/// lambda_{n,nu} with the MOPS recovered from the moments of u.
pub fn structure_coeffs(u: &MomentForm, t: &Triplet, n: usize) -> Result<Vec<Scalar>> {
    let d = t.phi.degree().unwrap().max(t.b.degree().unwrap_or(0));
    let r = recurrence_from_moments(u)?;
    let m = mops_from_recurrence(&r, n + d + 1)?;
    structure_coeffs_with(&m, u, t, n)
}

/// lambda_{n,nu} = 0 for nu < n - s, and lambda_{n,n-s} != 0.
pub fn band_holds(lambda: &[Scalar], n: usize, s: usize) -> bool {
    if n < s {
        return false;
    }
    let lo = n - s;
    lambda.len() > lo && lambda[..lo].iter().all(Zero::is_zero) && !lambda[lo].is_zero()
}
