//! The q-Riccati form of the equation on the Stieltjes series S = S(u):
//! (h_{q^-1} Phi)(H_{q^-1} S) = B S (h_{q^-1} S) + C S + D.

use num_traits::Zero;

use crate::equation::{decompose_at, Triplet};
use crate::error::{QlhError, Result};
use crate::form::{recurrence_from_moments, MomentForm};
use crate::laurent::LaurentSeries;
use crate::poly::Poly;
use crate::scalar::QParam;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RiccatiData {
    pub phi: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
    pub q: QParam,
}

impl RiccatiData {
    /// Psi = -q^{-1}(C + H_{q^{-1}} Phi).
    pub fn psi(&self) -> Poly {
        let qi = self.q.inv();
        (&self.c + self.phi.hq(&qi)).scale(&-qi.value().clone())
    }

    pub fn triplet(&self) -> Result<Triplet> {
        Triplet::new(self.phi.clone(), self.psi(), self.b.clone(), self.q.clone())
    }

    /// max(deg B - 2, deg C - 1, deg D), None if all three vanish.
    pub fn class_bound(&self) -> Option<i64> {
        [
            self.b.deg().map(|d| d - 2),
            self.c.deg().map(|d| d - 1),
            self.d.deg(),
        ]
        .into_iter()
        .flatten()
        .max()
    }

    /// Divides all four polynomials by k.
    pub fn scaled(&self, k: &crate::scalar::Scalar) -> RiccatiData {
        RiccatiData {
            phi: self.phi.scale(k),
            b: self.b.scale(k),
            c: self.c.scale(k),
            d: self.d.scale(k),
            q: self.q.clone(),
        }
    }
}

/// C = -H_{q^-1} Phi - q Psi,
/// D = -(H_{q^-1}(u theta_0 Phi) + q u theta_0 Psi + q (u h_q u) theta_0^2 B).
pub fn cd_from_triplet(t: &Triplet, u: &MomentForm) -> Result<RiccatiData> {
    let q = t.q.value();
    let qi = t.q.inv();
    let c = -t.phi.hq(&qi) - t.psi.scale(q);
    let mut d = u.theta0_product(&t.phi)?.hq(&qi) + u.theta0_product(&t.psi)?.scale(q);
    let b2 = t.b.theta(&Zero::zero()).theta(&Zero::zero());
    if !b2.is_zero() {
        let ord = b2.degree().unwrap();
        let uu = u.truncate(ord)?;
        let uhu = uu.cauchy(&uu.ha(q)?)?;
        d = d + uhu.poly_product(&b2)?.scale(q);
    }
    Ok(RiccatiData {
        phi: t.phi.clone(),
        b: t.b.clone(),
        c,
        d: -d,
        q: t.q.clone(),
    })
}

/// Left minus right side of the Riccati equation, on powers >= low.
pub fn riccati_residual(u: &MomentForm, r: &RiccatiData, low: i64) -> Result<LaurentSeries> {
    let full = riccati_residual_full(u, r)?;
    full.truncate(low)
}

/// The residual over its whole provable range.
pub fn riccati_residual_full(u: &MomentForm, r: &RiccatiData) -> Result<LaurentSeries> {
    let qi = r.q.inv();
    let s = LaurentSeries::stieltjes(u);
    let lhs = s.hq(&qi).mul_poly(&r.phi.dilate(qi.value()))?;
    let quad = s.mul(&s.ha(qi.value())?)?.mul_poly(&r.b)?;
    let lin = s.mul_poly(&r.c)?;
    let rhs = quad.add(&lin)?.add(&LaurentSeries::from_poly(&r.d))?;
    lhs.sub(&rhs)
}

/// Class through the Riccati criterion: a rational root c of Phi is removable
/// exactly when B(cq) = C(cq) = D(cq) = 0. The data are rebuilt from the
/// reduced triplet after each removal.
pub fn riccati_class(r: &RiccatiData, u: &MomentForm) -> Result<i64> {
    recurrence_from_moments(u)?;
    let res = riccati_residual_full(u, r)?;
    if let Some((k, v)) = res.first_nonzero() {
        return Err(QlhError::NotSatisfied {
            index: (-k).max(0) as usize,
            value: v,
        });
    }
    let mut cur = r.clone();
    'outer: loop {
        for (c, _) in cur.phi.rational_roots() {
            let cq = &c * cur.q.value();
            if cur.b.eval(&cq).is_zero() && cur.c.eval(&cq).is_zero() && cur.d.eval(&cq).is_zero() {
                let (reduced, _, _) = decompose_at(&cur.triplet()?, &c)?;
                cur = cd_from_triplet(&reduced, u)?;
                continue 'outer;
            }
        }
        break;
    }
    cur.class_bound()
        .ok_or_else(|| QlhError::InvalidParameter("B, C and D all vanish".into()))
}
