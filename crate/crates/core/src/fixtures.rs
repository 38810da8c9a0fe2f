//! Named families of forms used throughout the test suites and the CLI.

use num_traits::{One, Zero};

use crate::equation::{pearson_solve, Triplet};
use crate::error::{QlhError, Result};
use crate::form::{moments_from_recurrence, MomentForm, RecurrencePair};
use crate::poly::Poly;
use crate::scalar::{int, QParam, Scalar};

/// Symmetric Brenke-type recurrence: beta_n = 0,
/// gamma_{2n+1} = q^{2n+2}(1 - b q^{2n}), gamma_{2n+2} = b q^{2n+2}(1 - q^{2n+2}).
/// Returns `count` betas and gammas.
pub fn brenke_recurrence(b: &Scalar, q: &QParam, count: usize) -> Result<RecurrencePair> {
    let mut gammas = Vec::with_capacity(count);
    for k in 1..=count {
        let n = ((k - 1) / 2) as i64;
        let g = if k % 2 == 1 {
            q.pow(2 * n + 2) * (Scalar::one() - b * q.pow(2 * n))
        } else {
            b * q.pow(2 * n + 2) * (Scalar::one() - q.pow(2 * n + 2))
        };
        gammas.push(g);
    }
    RecurrencePair::new(vec![Scalar::zero(); count], gammas)
}

/// H_q(x u) - (b(q-1))^{-1}(q^{-2} x^2 + b - 1) u = 0.
pub fn brenke_triplet(b: &Scalar, q: &QParam) -> Result<Triplet> {
    let k = -(b * (q.value() - int(1))).recip();
    let psi = Poly::new(vec![&k * (b - int(1)), Scalar::zero(), &k * q.pow(-2)]);
    Triplet::new(Poly::x(), psi, Poly::zero(), q.clone())
}

fn check_brenke_params(b: &Scalar, q: &QParam, order: usize) -> Result<()> {
    if b.is_zero() || b == q.value() {
        return Err(QlhError::InvalidParameter(format!("b = {b} is excluded")));
    }
    for n in 0..=order as i64 {
        if *b == q.pow(-2 * n) {
            return Err(QlhError::InvalidParameter(format!(
                "b = q^(-{}) is excluded",
                2 * n
            )));
        }
    }
    Ok(())
}

/// Brenke form of order N: moments from the recurrence, checked against the
/// moments solved from the equation with (u)_1 = 0.
pub fn brenke_fixture(
    b: &Scalar,
    q: &QParam,
    order: usize,
) -> Result<(MomentForm, Triplet, RecurrencePair)> {
    check_brenke_params(b, q, order)?;
    let r = brenke_recurrence(b, q, order / 2 + 2)?;
    let t = brenke_triplet(b, q)?;
    let from_rec = moments_from_recurrence(&r, order)?;
    let from_eq = pearson_solve(&t, &[Scalar::zero()], order)?;
    if from_rec != from_eq {
        let n = (0..=order)
            .find(|&n| from_rec.moments()[n] != from_eq.moments()[n])
            .unwrap();
        return Err(QlhError::NotSatisfied {
            index: n,
            value: &from_rec.moments()[n] - &from_eq.moments()[n],
        });
    }
    Ok((from_rec, t, r))
}

/// H_q(x u) + (q-1)^{-1}(x - 1) u = 0, whose moments are q^{n(n-1)/2}.
pub fn qclassical_triplet(q: &QParam) -> Result<Triplet> {
    let k = (q.value() - int(1)).recip();
    Triplet::new(
        Poly::x(),
        Poly::new(vec![-k.clone(), k]),
        Poly::zero(),
        q.clone(),
    )
}

/// Moments solved from an arbitrary equation plus seeds.
pub fn pearson_fixture(t: &Triplet, seeds: &[Scalar], order: usize) -> Result<MomentForm> {
    pearson_solve(t, seeds, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, qpochhammer};

    #[test]
    fn brenke_low_moments() {
        for (b, q) in [(int(3), int(2)), (int(5), frac(1, 3))] {
            let q = QParam::new(q).unwrap();
            let (u, _, _) = brenke_fixture(&b, &q, 12).unwrap();
            let m = u.moments();
            assert!(m[1].is_zero());
            assert_eq!(m[2], q.pow(2) * (int(1) - &b));
            assert_eq!(m[4], q.pow(4) * (int(1) - &b) * (int(1) - &b * q.pow(2)));
            assert_eq!(
                m[4],
                q.pow(4) * qpochhammer(&b, &QParam::new(q.pow(2)).unwrap(), 2)
            );
        }
    }

    #[test]
    fn brenke_parameter_guard() {
        let q = QParam::new(int(2)).unwrap();
        assert!(brenke_fixture(&int(0), &q, 6).is_err());
        assert!(brenke_fixture(&int(2), &q, 6).is_err());
        assert!(brenke_fixture(&frac(1, 16), &q, 6).is_err());
    }

    #[test]
    fn qclassical_moments() {
        let q = QParam::new(int(2)).unwrap();
        let u = pearson_fixture(&qclassical_triplet(&q).unwrap(), &[], 8).unwrap();
        let want: Vec<Scalar> = (0..=8).map(|n: i64| q.pow(n * (n - 1) / 2)).collect();
        assert_eq!(u.moments(), &want[..]);
    }
}
