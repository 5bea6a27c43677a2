//! Exact residual checks for algebraic Painleve VI solutions parametrized on an
//! elliptic curve.
//!
//! A solution is a pair of functions `q`, `t` on a curve `w^2 = R(s)`, with `t`
//! a Belyi map. Derivatives in `t` go through the parametrization:
//! `dq/dt = q'(s) / t'(s)`, with `'` the derivation `d/ds` extended to `w` by
//! `w' = R' w / (2R)`. The residual of
//!
//! ```text
//! q_tt = 1/2 (1/q + 1/(q-1) + 1/(q-t)) q_t^2 - (1/t + 1/(t-1) + 1/(q-t)) q_t
//!      + q(q-1)(q-t)/(t^2(t-1)^2)
//!        (alpha + beta t/q^2 + gamma (t-1)/(q-1)^2 + delta t(t-1)/(q-t)^2)
//! ```
//!
//! is computed exactly in the quadratic extension and must vanish identically.

use crate::curve::{j_invariant, CurveError};
use crate::field::{AlgebraicNumber, Rat};
use crate::poly::{PolyError, UniPoly};
use crate::quadext::{QuadExtElement, QuadExtError};
use crate::ratfun::RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PviParams {
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
    pub delta: Rat,
}

impl PviParams {
    pub fn new(alpha: Rat, beta: Rat, gamma: Rat, delta: Rat) -> Self {
        PviParams { alpha, beta, gamma, delta }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PainleveError {
    #[error("t is constant along the parametrization, d/dt is undefined")]
    DegenerateParametrization,
    #[error("q and t are parametrized on different curves")]
    MixedCurves,
    #[error(transparent)]
    Extension(#[from] QuadExtError),
    #[error(transparent)]
    Algebra(#[from] PolyError),
}

/// An algebraic solution candidate `(q(s, w), t(s, w))` on `w^2 = R(s)`.
#[derive(Debug, Clone)]
pub struct AlgebraicSolution {
    label: String,
    q: QuadExtElement,
    t: QuadExtElement,
    params: PviParams,
}

impl AlgebraicSolution {
    pub fn new(
        label: impl Into<String>,
        q: QuadExtElement,
        t: QuadExtElement,
        params: PviParams,
    ) -> Result<Self, PainleveError> {
        if q.modulus() != t.modulus() {
            return Err(PainleveError::MixedCurves);
        }
        Ok(AlgebraicSolution { label: label.into(), q, t, params })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn q(&self) -> &QuadExtElement {
        &self.q
    }

    pub fn t(&self) -> &QuadExtElement {
        &self.t
    }

    pub fn params(&self) -> &PviParams {
        &self.params
    }

    /// Right-hand side `R` of the parametrizing curve `w^2 = R(s)`.
    pub fn curve(&self) -> &UniPoly {
        self.t.modulus()
    }

    pub fn curve_j(&self) -> Result<AlgebraicNumber, CurveError> {
        j_invariant(self.curve())
    }
}

/// Exact residual of the second-order equation; zero iff the pair solves it.
pub fn pvi_residual(sol: &AlgebraicSolution) -> Result<QuadExtElement, PainleveError> {
    let q = &sol.q;
    let t = &sol.t;
    let field = q.modulus().field().clone();
    let modulus = q.modulus().clone();
    let konst = |r: Rat| -> Result<QuadExtElement, QuadExtError> {
        QuadExtElement::from_ratfun(
            RationalFunction::constant(field.from_rat(r)),
            modulus.clone(),
        )
    };

    let tp = t.derivative()?;
    if tp.is_zero() {
        return Err(PainleveError::DegenerateParametrization);
    }
    let qt = q.derivative()?.div(&tp)?;
    let qtt = qt.derivative()?.div(&tp)?;

    let one = konst(crate::field::rat_i(1))?;
    let qm1 = q.sub(&one)?;
    let tm1 = t.sub(&one)?;
    let qmt = q.sub(t)?;

    let qt2 = qt.mul(&qt)?;
    let sum1 = q.inv()?.add(&qm1.inv()?)?.add(&qmt.inv()?)?;
    let term1 = sum1.mul(&qt2)?.mul(&konst(crate::field::rat(1, 2))?)?;

    let sum2 = t.inv()?.add(&tm1.inv()?)?.add(&qmt.inv()?)?;
    let term2 = sum2.mul(&qt)?;

    let prefactor = q
        .mul(&qm1)?
        .mul(&qmt)?
        .div(&t.mul(t)?.mul(&tm1.mul(&tm1)?)?)?;
    let inner = konst(sol.params.alpha.clone())?
        .add(&konst(sol.params.beta.clone())?.mul(&t.div(&q.mul(q)?)?)?)?
        .add(&konst(sol.params.gamma.clone())?.mul(&tm1.div(&qm1.mul(&qm1)?)?)?)?
        .add(&konst(sol.params.delta.clone())?.mul(&t.mul(&tm1)?.div(&qmt.mul(&qmt)?)?)?)?;
    let term3 = prefactor.mul(&inner)?;

    Ok(qtt.sub(&term1)?.add(&term2)?.sub(&term3)?)
}

/// Check that `f` is of the shape `1/2 + sqrt(1 - inner)/2` on its own curve:
/// `(2f - 1)^2` must collapse to the rational function `1 - inner`.
pub fn verify_qform(
    f: &QuadExtElement,
    inner: &RationalFunction,
) -> Result<bool, PainleveError> {
    let field = inner.field();
    let one = QuadExtElement::from_ratfun(RationalFunction::one(field), f.modulus().clone())?;
    let g = f.add(f)?.sub(&one)?;
    let g2 = g.mul(&g)?;
    let target = RationalFunction::one(field).sub(inner)?;
    Ok(g2.v().is_zero() && g2.u() == &target)
}

/// Build `1/2 + sqrt(1 - inner)/2` on `w^2 = modulus`, requiring the square
/// root to exist there: `(1 - inner)/modulus` must be a perfect square in the
/// rational function field. `positive` selects the branch of that square root.
pub fn qform_on_curve(
    inner: &RationalFunction,
    modulus: &UniPoly,
    positive: bool,
) -> Option<QuadExtElement> {
    let field = inner.field();
    let radicand = RationalFunction::one(field)
        .sub(inner)
        .ok()?
        .div(&RationalFunction::from_poly(modulus.clone()))
        .ok()?;
    let mut v = radicand.sqrt()?.scale(&field.from_rat(crate::field::rat(1, 2)));
    if !positive {
        v = v.neg();
    }
    let half = RationalFunction::constant(field.from_rat(crate::field::rat(1, 2)));
    QuadExtElement::new(half, v, modulus.clone()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_i, Field};

    fn q() -> Field {
        Field::rationals()
    }

    fn ints(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_ints(&q(), coeffs)
    }

    fn rf(num: UniPoly, den: UniPoly) -> RationalFunction {
        RationalFunction::new(num, den).unwrap()
    }

    /// w^2 = s (s + 8)(4s + 5)
    fn curve13() -> UniPoly {
        &(&ints(&[0, 1]) * &ints(&[8, 1])) * &ints(&[5, 4])
    }

    fn half_plus(v: RationalFunction, modulus: UniPoly) -> QuadExtElement {
        let half = RationalFunction::constant(q().from_rat(rat(1, 2)));
        QuadExtElement::new(half, v, modulus).unwrap()
    }

    /// q = 1/2 + s (2s^3 + 6s^2 - 63s - 350) / (30 w (s + 2))
    fn q13() -> QuadExtElement {
        let num = &ints(&[0, 1]) * &ints(&[-350, -63, 6, 2]);
        let den = &ints(&[2, 1]).scale(&q().from_int(30)) * &curve13();
        half_plus(rf(num, den), curve13())
    }

    /// t = 1/2 + (s + 8)(2s^4 - 8s^3 - 42s^2 - 170s - 25) / (54 w (4s + 5))
    fn t13() -> QuadExtElement {
        let num = &ints(&[8, 1]) * &ints(&[-25, -170, -42, -8, 2]);
        let den = &ints(&[5, 4]).scale(&q().from_int(54)) * &curve13();
        half_plus(rf(num, den), curve13())
    }

    fn params13() -> PviParams {
        PviParams::new(rat(1, 18), rat(-2, 25), rat(2, 25), rat(21, 50))
    }

    /// -4 (s-1)^4 (s+5)^2 (s-10)(s+2) / ((4s+5)(s^3 + 60s + 20)^2)
    fn inner14() -> RationalFunction {
        let num = (&(&ints(&[-1, 1]).pow(4) * &ints(&[5, 1]).pow(2))
            * &(&ints(&[-10, 1]) * &ints(&[2, 1])))
            .scale(&q().from_int(-4));
        let den = &ints(&[5, 4]) * &ints(&[20, 60, 0, 1]).pow(2);
        rf(num, den)
    }

    #[test]
    fn solution_thirteen_has_zero_residual() {
        let sol = AlgebraicSolution::new("#13", q13(), t13(), params13()).unwrap();
        let res = pvi_residual(&sol).unwrap();
        assert!(res.is_zero(), "residual: {}", res.display("s"));
        assert_eq!(sol.curve_j().unwrap(), q().from_rat(rat(702595369, 72900)));
    }

    #[test]
    fn solution_fourteen_shares_the_curve_and_solves_its_equation() {
        let q14 = qform_on_curve(&inner14(), &curve13(), true).unwrap();
        let params = PviParams::new(rat(2, 9), rat(-1, 50), rat(1, 50), rat(12, 25));
        let sol = AlgebraicSolution::new("#14", q14, t13(), params).unwrap();
        let res = pvi_residual(&sol).unwrap();
        assert!(res.is_zero(), "residual: {}", res.display("s"));
    }

    #[test]
    fn perturbed_parameters_leave_a_nonzero_residual() {
        let params = PviParams::new(rat(1, 17), rat(-2, 25), rat(2, 25), rat(21, 50));
        let sol = AlgebraicSolution::new("#13 off", q13(), t13(), params).unwrap();
        assert!(!pvi_residual(&sol).unwrap().is_zero());
    }

    #[test]
    fn published_expressions_are_quadratic_correspondences() {
        // t13 over r13 = -4 (s-1)^5 (s+5)^3 (s-10) / (729 s (4s+5)^3)
        let r13_num = (&(&ints(&[-1, 1]).pow(5) * &ints(&[5, 1]).pow(3)) * &ints(&[-10, 1]))
            .scale(&q().from_int(-4));
        let r13_den = (&ints(&[0, 1]) * &ints(&[5, 4]).pow(3)).scale(&q().from_int(729));
        let r13 = rf(r13_num, r13_den);
        assert!(verify_qform(&t13(), &r13).unwrap());

        // q13 over -4 (s-1)^2 (s+5)^2 (s-10)(s^2+8s+36) / (225 (s+8)(4s+5)(s+2)^2)
        let q13_num = (&(&ints(&[-1, 1]).pow(2) * &ints(&[5, 1]).pow(2))
            * &(&ints(&[-10, 1]) * &ints(&[36, 8, 1])))
            .scale(&q().from_int(-4));
        let q13_den = (&(&ints(&[8, 1]) * &ints(&[5, 4])) * &ints(&[2, 1]).pow(2))
            .scale(&q().from_int(225));
        assert!(verify_qform(&q13(), &rf(q13_num, q13_den)).unwrap());

        // q14 over its inner map
        let q14 = qform_on_curve(&inner14(), &curve13(), true).unwrap();
        assert!(verify_qform(&q14, &inner14()).unwrap());

        // the dual map 1/r13 lands on w^2 = (s-1)(s+5)(s+8)(s-10); note the
        // leading 4 (1 - 1/r13 works out to (s+8) N^2 / (4 (s-1)^5 (s+5)^3 (s-10)))
        let dual_curve = &(&ints(&[-1, 1]) * &ints(&[5, 1])) * &(&ints(&[8, 1]) * &ints(&[-10, 1]));
        let tdual_num = ints(&[-25, -170, -42, -8, 2]);
        let tdual_den = (&(&ints(&[-1, 1]).pow(3) * &ints(&[5, 1]).pow(2)) * &ints(&[-10, 1]))
            .scale(&q().from_int(4));
        let tdual = half_plus(rf(tdual_num, tdual_den), dual_curve.clone());
        let r13_inv = r13.inv().unwrap();
        assert!(verify_qform(&tdual, &r13_inv).unwrap());
        assert_eq!(
            j_invariant(&dual_curve).unwrap(),
            q().from_rat(rat(148176, 25))
        );
    }

    #[test]
    fn constant_parametrization_is_rejected() {
        let t = QuadExtElement::from_ratfun(
            RationalFunction::constant(q().from_rat(rat_i(2))),
            curve13(),
        )
        .unwrap();
        let sol = AlgebraicSolution::new("bad", q13(), t, params13()).unwrap();
        assert!(matches!(
            pvi_residual(&sol),
            Err(PainleveError::DegenerateParametrization)
        ));
    }

    #[test]
    fn mixed_curves_are_rejected() {
        let other = ints(&[0, 1, 0, 1]);
        let t = QuadExtElement::w(other).unwrap();
        assert!(matches!(
            AlgebraicSolution::new("bad", q13(), t, params13()),
            Err(PainleveError::MixedCurves)
        ));
    }
}
