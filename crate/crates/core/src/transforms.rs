//! Co-recursive, associated and inverse forms: moment-side constructions and
//! the transformed equations.

use num_traits::{One, Zero};

use crate::equation::Triplet;
use crate::error::{QlhError, Result};
use crate::form::{moments_from_recurrence, recurrence_from_moments, MomentForm, RecurrencePair};
use crate::poly::Poly;
use crate::riccati::RiccatiData;
use crate::scalar::{int, Scalar};
use crate::structure::eval_sequence;

/// Divides by K = lead(Phi); Psi follows from C and Phi.
fn normalize(raw: RiccatiData) -> Result<(Triplet, RiccatiData)> {
    if raw.phi.is_zero() {
        return Err(QlhError::DegenerateLeading);
    }
    let r = raw.scaled(&raw.phi.lead().recip());
    Ok((r.triplet()?, r))
}

/// u^[mu] = u (delta_0 - mu x^{-1} u)^{-1}.
pub fn corecursive_moments(u: &MomentForm, mu: &Scalar) -> Result<MomentForm> {
    let n = u.order();
    let w = MomentForm::dirac(&Scalar::zero(), n).sub(&u.div_x().truncate(n)?.scale(mu))?;
    u.cauchy(&w.inverse()?)
}

/// K Phi = Phi + mu(1-q) x h_q D, K B = B - mu C + mu^2 D, K C = C - 2 mu D,
/// K D = D, K Psi = Psi + mu(q^{-1} D + h_q D).
pub fn corecursive_triplet(
    t: &Triplet,
    r: &RiccatiData,
    mu: &Scalar,
) -> Result<(Triplet, RiccatiData)> {
    let q = r.q.value();
    let hd = r.d.dilate(q);
    let raw = RiccatiData {
        phi: &r.phi + (Poly::x() * &hd).scale(&(mu * (int(1) - q))),
        b: &r.b - r.c.scale(mu) + r.d.scale(&(mu * mu)),
        c: &r.c - r.d.scale(&(mu * int(2))),
        d: r.d.clone(),
        q: r.q.clone(),
    };
    if raw.phi.is_zero() {
        return Err(QlhError::DegenerateLeading);
    }
    let k = raw.phi.lead();
    let psi = (&t.psi + (r.d.scale(&q.recip()) + hd).scale(mu)).scale(&k.recip());
    let (mut tr, rr) = normalize(raw)?;
    debug_assert_eq!(tr.psi, psi);
    tr.psi = psi;
    Ok((tr, rr))
}

/// Moments of u^(1): the recurrence shifted by one.
pub fn associated_moments(r: &RecurrencePair, order: usize) -> Result<MomentForm> {
    moments_from_recurrence(&r.shifted(), order)
}

/// Equation of u^(1) from the Riccati data (Phi, B, C, D) of u:
/// K Phi1 = Phi + (q-1) x [(qx - beta0) h_q D - h_q C], K B1 = gamma1 D,
/// K C1 = ((q^{-1}+1) x - 2 beta0) D - C,
/// K D1 = (B + (q^{-1}x - beta0)(x - beta0) D - (q^{-1}x - beta0) C - h_{q^{-1}} Phi) / gamma1.
pub fn associated_triplet(
    r: &RiccatiData,
    beta0: &Scalar,
    gamma1: &Scalar,
) -> Result<(Triplet, RiccatiData)> {
    if gamma1.is_zero() {
        return Err(QlhError::InvalidParameter("gamma_1 must be nonzero".into()));
    }
    let q = r.q.value();
    let qi = q.recip();
    let x = Poly::x();
    let x_b0 = Poly::new(vec![-beta0.clone(), int(1)]);
    let qx_b0 = Poly::new(vec![-beta0.clone(), q.clone()]);
    let qix_b0 = Poly::new(vec![-beta0.clone(), qi.clone()]);
    let raw = RiccatiData {
        phi: &r.phi + (&x * (qx_b0 * r.d.dilate(q) - r.c.dilate(q))).scale(&(q - int(1))),
        b: r.d.scale(gamma1),
        c: Poly::new(vec![-beta0 * int(2), &qi + int(1)]) * &r.d - &r.c,
        d: (&r.b + &qix_b0 * &x_b0 * &r.d - &qix_b0 * &r.c - r.phi.dilate(&qi))
            .scale(&gamma1.recip()),
        q: r.q.clone(),
    };
    normalize(raw)
}

/// Convolution inverse u^{-1}.
pub fn inverse_moments(u: &MomentForm) -> Result<MomentForm> {
    u.inverse()
}

/// Equation of u^{-1} from the Riccati data (Phi1, B1, C1, D1) of u^(1),
/// using x^2 u^{-1} = -gamma1 u^(1):
/// K Phi = -x^2 [gamma1 Phi1 + (1-q) x (qx - beta0) h_q B1],
/// K B = q^{-2} x^4 B1,
/// K C = B1 [x^2 (q^{-1}x - beta0) + q^{-2} x^2 (x - beta0)] - gamma1 x^2 C1
///       + gamma1 (q^{-1}+1) x h_{q^{-1}} Phi1,
/// K D = B1 (x - beta0)(q^{-1}x - beta0) - gamma1 (x - beta0) C1 + gamma1^2 D1
///       + gamma1 h_{q^{-1}} Phi1.
pub fn inverse_triplet(
    r1: &RiccatiData,
    gamma1: &Scalar,
    beta0: &Scalar,
) -> Result<(Triplet, RiccatiData)> {
    let q = r1.q.value();
    let qi = q.recip();
    let qi2 = &qi * &qi;
    let x = Poly::x();
    let x2 = Poly::monomial(2, int(1));
    let x_b0 = Poly::new(vec![-beta0.clone(), int(1)]);
    let qx_b0 = Poly::new(vec![-beta0.clone(), q.clone()]);
    let qix_b0 = Poly::new(vec![-beta0.clone(), qi.clone()]);
    let hphi = r1.phi.dilate(&qi);
    let raw = RiccatiData {
        phi: -(&x2 * (r1.phi.scale(gamma1) + (&x * qx_b0 * r1.b.dilate(q)).scale(&(int(1) - q)))),
        b: (Poly::monomial(4, int(1)) * &r1.b).scale(&qi2),
        c: &r1.b * (&x2 * &qix_b0 + (&x2 * &x_b0).scale(&qi2)) - (&x2 * &r1.c).scale(gamma1)
            + (&x * &hphi).scale(&(gamma1 * (&qi + int(1)))),
        d: &r1.b * &x_b0 * &qix_b0 - (&x_b0 * &r1.c).scale(gamma1)
            + r1.d.scale(&(gamma1 * gamma1))
            + hphi.scale(gamma1),
        q: r1.q.clone(),
    };
    normalize(raw)
}

struct InverseData {
    rec: RecurrencePair,
    ui1: Scalar,
    p1: Vec<Scalar>,
    /// p2[k] = P^(2)_{k-1}(0), with P^(2)_{-1} = 0
    p2: Vec<Scalar>,
    /// r1[n] = <u^(1), (P^(1)_n)^2> = gamma_2 ... gamma_{n+1}
    r1: Vec<Scalar>,
    deltas: Vec<Scalar>,
}

fn inverse_data(u: &MomentForm, upto: Option<usize>) -> Result<InverseData> {
    let rec = recurrence_from_moments(u)?;
    let nb = rec.betas.len();
    let ng = rec.gammas.len();
    let avail = nb.min(ng).checked_sub(1);
    let top = match (avail, upto) {
        (None, _) => {
            return Err(QlhError::InsufficientOrder {
                needed: 2,
                available: u.order(),
            })
        }
        (Some(a), Some(w)) if w > a => {
            return Err(QlhError::InsufficientOrder {
                needed: 2 * w + 2,
                available: u.order(),
            })
        }
        (Some(a), Some(w)) => w.min(a),
        (Some(a), None) => a,
    };
    let ui1 = -u.moment(1)?.clone();
    let s1 = rec.shifted();
    let s2 = s1.shifted();
    // P^(1)_n(0) needs beta_1..beta_n; keep one extra where available
    let m1 = (top + 1).min(nb.saturating_sub(1));
    let p1 = eval_sequence(&s1, &Scalar::zero(), m1)?;
    let mut p2 = vec![Scalar::zero()];
    p2.extend(eval_sequence(&s2, &Scalar::zero(), top.saturating_sub(1))?);
    p2.truncate(top + 1);
    let gamma1 = rec.gamma(1)?.clone();
    let mut r1 = vec![Scalar::one()];
    for n in 1..=top {
        let next = &r1[n - 1] * rec.gamma(n + 1)?;
        r1.push(next);
    }
    let mut deltas = Vec::with_capacity(top + 1);
    let mut sum = gamma1.clone();
    for n in 0..=top {
        let t = &gamma1 * &p2[n] - &ui1 * &p1[n];
        sum += &t * &t / &r1[n];
        deltas.push(&r1[n] * &sum);
    }
    Ok(InverseData {
        rec,
        ui1,
        p1,
        p2,
        r1,
        deltas,
    })
}

/// Delta_n = <u^(1), (P^(1)_n)^2> { gamma1 + sum_{nu<=n}
///   (gamma1 P^(2)_{nu-1}(0) - (u^{-1})_1 P^(1)_nu(0))^2 / <u^(1), (P^(1)_nu)^2> };
/// u^{-1} is regular iff every Delta_n is nonzero.
pub fn inverse_regularity(u: &MomentForm, upto: usize) -> Result<Vec<Scalar>> {
    Ok(inverse_data(u, Some(upto))?.deltas)
}

/// Connection coefficients with P^(1): P^(-)_1 = P^(1)_1 + b_0 and
/// P^(-)_{n+2} = P^(1)_{n+2} + b_{n+1} P^(1)_{n+1} + a_n P^(1)_n.
pub fn inverse_connection(u: &MomentForm) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    let d = inverse_data(u, None)?;
    connection(&d)
}

fn connection(d: &InverseData) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    let gamma1 = d.rec.gamma(1)?.clone();
    let mut bs = vec![d.rec.beta(1)? - &d.ui1];
    let mut as_ = Vec::new();
    for n in 0..d.deltas.len() {
        if d.deltas[n].is_zero() {
            return Err(QlhError::NotRegular(n + 1));
        }
        if n + 1 < d.deltas.len() {
            as_.push(&d.deltas[n + 1] / &d.deltas[n]);
        }
        if n + 1 < d.p1.len() && n + 1 < d.p2.len() && n + 2 < d.rec.betas.len() {
            let left = &d.ui1 * &d.p1[n] - &gamma1 * &d.p2[n];
            let right = &d.ui1 * &d.p1[n + 1] - &gamma1 * &d.p2[n + 1];
            bs.push(&d.rec.betas[n + 2] - left * right / &d.deltas[n]);
        }
    }
    let _ = &d.r1;
    Ok((bs, as_))
}

/// Partial sums Lambda_n = sum_{nu<=n} prod_{k<=nu} gamma_{2k+1}/gamma_{2k+2}.
pub fn lambda_sums(r: &RecurrencePair, count: usize) -> Result<Vec<Scalar>> {
    let mut out = Vec::with_capacity(count);
    let mut prod = Scalar::one();
    let mut sum = Scalar::zero();
    for k in 0..count {
        prod *= r.gamma(2 * k + 1)? / r.gamma(2 * k + 2)?;
        sum += &prod;
        out.push(sum.clone());
    }
    Ok(out)
}

/// Recurrence coefficients of u^{-1}. The general route goes through the
/// Delta_n; the symmetric route (all beta zero) uses
/// gamma^(-)_1 = -gamma_1, gamma^(-)_{2n+2} = a_{2n},
/// gamma^(-)_{2n+3} = gamma_{2n+2} gamma_{2n+3} / a_{2n},
/// a_{2n} = (1 + Lambda_n)/(1 + Lambda_{n-1}) gamma_{2n+2}.
pub fn inverse_recurrence(u: &MomentForm, symmetric: bool) -> Result<RecurrencePair> {
    if symmetric {
        let rec = recurrence_from_moments(u)?;
        if rec.betas.iter().any(|b| !b.is_zero()) {
            return Err(QlhError::InvalidParameter("form is not symmetric".into()));
        }
        let ng = rec.gammas.len();
        let lam = lambda_sums(&rec, ng / 2)?;
        let mut gammas = vec![-rec.gamma(1)?.clone()];
        let mut prev = Scalar::one();
        for (n, l) in lam.iter().enumerate() {
            let cur = Scalar::one() + l;
            if cur.is_zero() {
                return Err(QlhError::NotRegular(2 * n + 2));
            }
            let a = &cur / &prev * rec.gamma(2 * n + 2)?;
            gammas.push(a.clone());
            if 2 * n + 3 <= ng {
                gammas.push(rec.gamma(2 * n + 2)? * rec.gamma(2 * n + 3)? / &a);
            }
            prev = cur;
        }
        let betas = vec![Scalar::zero(); rec.betas.len()];
        return Ok(RecurrencePair { betas, gammas });
    }
    let d = inverse_data(u, None)?;
    let (bs, _) = connection(&d)?;
    let mut betas = vec![d.ui1.clone()];
    for n in 0..bs.len().saturating_sub(1) {
        betas.push(&d.rec.betas[n + 2] + &bs[n] - &bs[n + 1]);
    }
    let dl = &d.deltas;
    let mut gammas = vec![-dl[0].clone()];
    if dl.len() > 1 {
        gammas.push(d.rec.gamma(1)? * &dl[1] / (&dl[0] * &dl[0]));
    }
    for n in 0..dl.len().saturating_sub(2) {
        gammas.push(&dl[n + 2] * &dl[n] / (&dl[n + 1] * &dl[n + 1]) * d.rec.gamma(n + 2)?);
    }
    Ok(RecurrencePair { betas, gammas })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equation::full_residual;
    use crate::fixtures::qclassical_triplet;
    use crate::riccati::cd_from_triplet;
    use crate::scalar::{frac, QParam};

    fn qc(q: &QParam, n: usize) -> (MomentForm, Triplet) {
        let t = qclassical_triplet(q).unwrap();
        (crate::equation::pearson_solve(&t, &[], n).unwrap(), t)
    }

    #[test]
    fn corecursive_identity_at_zero() {
        let q = QParam::new(int(2)).unwrap();
        let (u, t) = qc(&q, 12);
        assert_eq!(corecursive_moments(&u, &Scalar::zero()).unwrap(), u);
        let r = cd_from_triplet(&t, &u).unwrap();
        let (t0, r0) = corecursive_triplet(&t, &r, &Scalar::zero()).unwrap();
        assert_eq!((t0, r0), (t, r));
    }

    #[test]
    fn corecursive_first_moment() {
        let u = MomentForm::new(vec![int(1), frac(2, 3), int(5), int(-1), frac(7, 2)]).unwrap();
        let mu = frac(-5, 4);
        let v = corecursive_moments(&u, &mu).unwrap();
        assert_eq!(v.moments()[1], frac(2, 3) + &mu);
    }

    #[test]
    fn corecursive_degenerate() {
        let q = QParam::new(frac(1, 3)).unwrap();
        let (u, t) = qc(&q, 12);
        let r = cd_from_triplet(&t, &u).unwrap();
        assert_eq!(
            corecursive_triplet(&t, &r, &int(-3)),
            Err(QlhError::DegenerateLeading)
        );
    }

    #[test]
    fn transformed_equations_hold() {
        for q in [
            QParam::new(int(2)).unwrap(),
            QParam::new(frac(1, 3)).unwrap(),
        ] {
            let (u, t) = qc(&q, 40);
            let r = cd_from_triplet(&t, &u).unwrap();
            let mu = frac(1, 2);
            let (tc, _) = corecursive_triplet(&t, &r, &mu).unwrap();
            let uc = corecursive_moments(&u, &mu).unwrap();
            assert!(full_residual(&uc, &tc).unwrap().iter().all(Zero::is_zero));
            let rec = recurrence_from_moments(&u).unwrap();
            let (ta, ra) =
                associated_triplet(&r, rec.beta(0).unwrap(), rec.gamma(1).unwrap()).unwrap();
            let ua = associated_moments(&rec, 36).unwrap();
            assert!(full_residual(&ua, &ta).unwrap().iter().all(Zero::is_zero));
            let (ti, _) =
                inverse_triplet(&ra, rec.gamma(1).unwrap(), rec.beta(0).unwrap()).unwrap();
            let ui = inverse_moments(&u).unwrap();
            assert!(full_residual(&ui, &ti).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn inverse_recurrence_general_matches_chebyshev() {
        let q = QParam::new(frac(1, 3)).unwrap();
        let (u, _) = qc(&q, 30);
        let direct = recurrence_from_moments(&inverse_moments(&u).unwrap()).unwrap();
        let via = inverse_recurrence(&u, false).unwrap();
        let nb = via.betas.len().min(direct.betas.len());
        let ng = via.gammas.len().min(direct.gammas.len());
        assert!(nb >= 12 && ng >= 12);
        assert_eq!(via.betas[..nb], direct.betas[..nb]);
        assert_eq!(via.gammas[..ng], direct.gammas[..ng]);
    }
}
