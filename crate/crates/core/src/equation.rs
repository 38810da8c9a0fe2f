//! The q-difference equation H_q(Phi u) + Psi u + B (x^{-1} u h_q u) = 0:
//! residuals, class computation by successive reduction, parity,
//! moment solving and dilation covariance.

use num_traits::{One, Zero};

use crate::error::{QlhError, Result};
use crate::form::{recurrence_from_moments, MomentForm};
use crate::poly::Poly;
use crate::scalar::{pow, qbracket, QParam, Scalar};

/// (Phi, Psi, B, q) with Phi monic and nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triplet {
    pub phi: Poly,
    pub psi: Poly,
    pub b: Poly,
    pub q: QParam,
}

impl Triplet {
    /// Builds the triplet, dividing the whole equation by lead(phi).
    pub fn new(phi: Poly, psi: Poly, b: Poly, q: QParam) -> Result<Self> {
        if phi.is_zero() {
            return Err(QlhError::InvalidParameter("phi must be nonzero".into()));
        }
        let k = phi.lead().recip();
        Ok(Triplet {
            phi: phi.scale(&k),
            psi: psi.scale(&k),
            b: b.scale(&k),
            q,
        })
    }

    /// s = max(deg Psi - 1, max(deg Phi, deg B) - 2).
    pub fn class_bound(&self) -> i64 {
        let t = self.phi.deg().unwrap();
        let mut s = t - 2;
        if let Some(p) = self.psi.deg() {
            s = s.max(p - 1);
        }
        if let Some(r) = self.b.deg() {
            s = s.max(r - 2);
        }
        s
    }

    /// Offset e such that residual entry n reaches moment index n + e.
    pub fn reach(&self) -> i64 {
        let mut e = self.phi.deg().unwrap() - 1;
        if let Some(p) = self.psi.deg() {
            e = e.max(p);
        }
        if let Some(r) = self.b.deg() {
            e = e.max(r - 1);
        }
        e
    }

    /// Largest residual index computable from a form of the given order.
    pub fn max_residual_index(&self, order: usize) -> Option<usize> {
        let top = order as i64 - self.reach();
        (top >= 0).then_some(top as usize)
    }

    pub fn is_semiclassical(&self) -> bool {
        self.b.is_zero()
    }
}

/// Entry n: <H_q(Phi u) + Psi u + B x^{-1}(u h_q u), x^n>; `qp` holds the
/// powers of q needed by the quadratic part.
fn residual_entry(u: &[Scalar], t: &Triplet, qp: &[Scalar], n: usize) -> Scalar {
    let mut acc = Scalar::zero();
    if n >= 1 {
        let phiu: Scalar = t
            .phi
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| c * &u[n - 1 + j])
            .sum();
        acc -= qbracket(n as i64, &t.q) * phiu;
    }
    for (j, c) in t.psi.coeffs().iter().enumerate() {
        acc += c * &u[n + j];
    }
    for (j, c) in t.b.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc += c * quadratic_entry(u, qp, n + j);
        }
    }
    acc
}

fn q_powers(q: &QParam, len: usize) -> Vec<Scalar> {
    let mut qp = vec![Scalar::one()];
    for k in 1..len.max(1) {
        let next = &qp[k - 1] * q.value();
        qp.push(next);
    }
    qp
}

/// (x^{-1}(u h_q u))_m = sum_{k<m} q^{m-1-k} (u)_k (u)_{m-1-k}.
fn quadratic_entry(u: &[Scalar], qp: &[Scalar], m: usize) -> Scalar {
    if m == 0 {
        return Scalar::zero();
    }
    let j = m - 1;
    (0..=j).map(|k| &u[k] * &qp[j - k] * &u[j - k]).sum()
}

/// Residual entries 0..=upto of the equation on u.
pub fn residual(u: &MomentForm, t: &Triplet, upto: usize) -> Result<Vec<Scalar>> {
    let avail = t.max_residual_index(u.order());
    if avail.is_none_or(|a| upto > a) {
        return Err(QlhError::InsufficientOrder {
            needed: (upto as i64 + t.reach()).max(0) as usize,
            available: u.order(),
        });
    }
    let m = u.moments();
    let wlen = upto + t.b.degree().unwrap_or(0);
    let qp = q_powers(&t.q, wlen);
    Ok((0..=upto).map(|n| residual_entry(m, t, &qp, n)).collect())
}

/// Residual over the whole computable range.
pub fn full_residual(u: &MomentForm, t: &Triplet) -> Result<Vec<Scalar>> {
    let top = t
        .max_residual_index(u.order())
        .ok_or(QlhError::InsufficientOrder {
            needed: t.reach().max(0) as usize,
            available: u.order(),
        })?;
    residual(u, t, top)
}

/// Fails with the first nonzero residual entry.
pub fn check_residual(u: &MomentForm, t: &Triplet) -> Result<usize> {
    let r = full_residual(u, t)?;
    if let Some((index, value)) = r.iter().enumerate().find(|(_, v)| !v.is_zero()) {
        return Err(QlhError::NotSatisfied {
            index,
            value: value.clone(),
        });
    }
    Ok(r.len() - 1)
}

/// Multiplies the equation by chi: ((h_q chi) Phi, chi Psi - Phi H_q chi, chi B).
pub fn multiply_chi(t: &Triplet, chi: &Poly) -> Result<Triplet> {
    if chi.is_zero() {
        return Err(QlhError::DivisionByZeroPoly);
    }
    let phi = chi.dilate(t.q.value()) * &t.phi;
    let psi = chi * &t.psi - &t.phi * chi.hq(&t.q);
    let b = chi * &t.b;
    Triplet::new(phi, psi, b, t.q.clone())
}

/// Witnesses of one reduction attempt at a root c of Phi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub root: Scalar,
    pub r: Scalar,
    pub b: Scalar,
    pub bracket: Scalar,
}

impl Reduction {
    pub fn succeeds(&self) -> bool {
        self.r.is_zero() && self.b.is_zero() && self.bracket.is_zero()
    }
}

/// The reduced triplet (Phi_c, Psi_cq, B_cq) of the decomposition
/// Phi = (x-c)Phi_c, q Psi + Phi_c = (x-cq)Psi_cq + r, q B = (x-cq)B_cq + b,
/// together with the constants r and b. No moment condition is checked.
pub fn decompose_at(t: &Triplet, c: &Scalar) -> Result<(Triplet, Scalar, Scalar)> {
    if !t.phi.eval(c).is_zero() {
        return Err(QlhError::NotARoot(c.clone()));
    }
    let q = t.q.value();
    let phi_c = t.phi.theta(c);
    let lin = Poly::linear_root(&(c * q));
    let (psi_cq, r) = (t.psi.scale(q) + &phi_c).divrem(&lin)?;
    let (b_cq, b) = t.b.scale(q).divrem(&lin)?;
    let reduced = Triplet::new(phi_c, psi_cq, b_cq, t.q.clone())?;
    Ok((reduced, r.coeff(0), b.coeff(0)))
}

/// Attempts to simplify the equation by (x - c). Returns the witnesses and,
/// when all three vanish, the reduced triplet.
pub fn reduce_once(
    u: &MomentForm,
    t: &Triplet,
    c: &Scalar,
) -> Result<(Reduction, Option<Triplet>)> {
    let (reduced, r, b) = decompose_at(t, c)?;
    let q = t.q.value();
    let cq = c * q;
    let lin_part = t.psi.theta(&cq).scale(q) + t.phi.theta(c).theta(&cq);
    let mut bracket = u.pair(&lin_part)?;
    let quad = t.b.theta(&cq).theta(&Scalar::zero());
    if !quad.is_zero() {
        let uhu = u.cauchy(&u.dilate(t.q.value()))?;
        bracket += uhu.pair(&quad)? * q;
    }
    let red = Reduction {
        root: c.clone(),
        r,
        b,
        bracket,
    };
    let out = red.succeeds().then_some(reduced);
    Ok((red, out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub class_value: i64,
    pub minimal_triplet: Triplet,
    /// Successful reductions, in the order applied.
    pub reductions: Vec<Reduction>,
    /// Failed attempts on the final triplet (one per distinct rational root).
    pub final_attempts: Vec<Reduction>,
    /// Monic factor of the final Phi without rational roots, if nonconstant.
    pub unreduced_nonrational_factors: Vec<Poly>,
    /// Residual verified zero for n = 0..=verified_residual_to.
    pub verified_residual_to: usize,
    /// Hankel determinants verified nonzero for n = 0..=verified_hankel_to.
    pub verified_hankel_to: usize,
}

impl ClassReport {
    pub fn is_semiclassical(&self) -> bool {
        self.minimal_triplet.is_semiclassical()
    }
}

/// Reduces at rational roots of Phi (ascending) until no reduction applies.
pub fn compute_class(u: &MomentForm, t: &Triplet) -> Result<ClassReport> {
    recurrence_from_moments(u)?;
    let verified_hankel_to = u.order() / 2;
    let verified_residual_to = check_residual(u, t)?;
    let mut cur = t.clone();
    let mut reductions = Vec::new();
    let final_attempts = loop {
        let mut attempts = Vec::new();
        let mut next = None;
        for (c, _) in cur.phi.rational_roots() {
            let (red, out) = reduce_once(u, &cur, &c)?;
            if let Some(reduced) = out {
                reductions.push(red);
                next = Some(reduced);
                break;
            }
            attempts.push(red);
        }
        match next {
            Some(n) => cur = n,
            None => break attempts,
        }
    };
    let (_, rest) = cur.phi.factor_rational();
    let unreduced = if rest.degree().unwrap_or(0) > 0 {
        vec![rest]
    } else {
        vec![]
    };
    Ok(ClassReport {
        class_value: cur.class_bound(),
        minimal_triplet: cur,
        reductions,
        final_attempts,
        unreduced_nonrational_factors: unreduced,
        verified_residual_to,
        verified_hankel_to,
    })
}

/// s odd: Phi, B odd and Psi even; s even: Phi, B even and Psi odd.
pub fn parity_check(t: &Triplet, class_value: i64) -> bool {
    if class_value.rem_euclid(2) == 1 {
        t.phi.is_odd() && t.b.is_odd() && t.psi.is_even()
    } else {
        t.phi.is_even() && t.b.is_even() && t.psi.is_odd()
    }
}

/// Solves the equation for the moments. `seeds` are (u)_1, (u)_2, ...;
/// (u)_0 = 1. Each residual entry n determines (u)_{n+e}; where that index is
/// already known, the entry is checked instead.
pub fn pearson_solve(t: &Triplet, seeds: &[Scalar], order: usize) -> Result<MomentForm> {
    let e = t.reach();
    if e < 0 {
        return Err(QlhError::NonAdmissible(0));
    }
    let e = e as usize;
    let mut u: Vec<Scalar> = std::iter::once(Scalar::one())
        .chain(seeds.iter().cloned())
        .collect();
    u.truncate(order + 1);
    let bdeg = t.b.degree().unwrap_or(0);
    let mut n = 0;
    while n + e <= order {
        let m = n + e;
        if m > u.len() {
            return Err(QlhError::MissingSeed(u.len()));
        }
        let known = m < u.len();
        if !known {
            u.push(Scalar::zero());
        }
        let qp = q_powers(&t.q, n + bdeg);
        let e0 = residual_entry(&u, t, &qp, n);
        if known {
            if !e0.is_zero() {
                return Err(QlhError::NonAdmissible(n));
            }
        } else {
            u[m] = Scalar::one();
            let lead = residual_entry(&u, t, &qp, n) - &e0;
            if lead.is_zero() {
                return Err(QlhError::NonAdmissible(n));
            }
            u[m] = -e0 / lead;
        }
        n += 1;
    }
    if u.len() < order + 1 {
        return Err(QlhError::MissingSeed(u.len()));
    }
    MomentForm::new(u)
}

/// The equation satisfied by h_{a^{-1}} u: Phi(ax)/a^t, a^{1-t} Psi(ax), B(ax)/a^t.
pub fn shift_triplet(t: &Triplet, a: &Scalar) -> Result<Triplet> {
    if a.is_zero() {
        return Err(QlhError::ZeroDilation);
    }
    let deg = t.phi.deg().unwrap();
    let k = pow(a, -deg);
    Ok(Triplet {
        phi: t.phi.ha(a)?.scale(&k),
        psi: t.psi.ha(a)?.scale(&(&k * a)),
        b: t.b.ha(a)?.scale(&k),
        q: t.q.clone(),
    })
}
