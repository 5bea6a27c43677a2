//! Invariants of genus-one curves `y^2 = D(x)` for `D` of degree 3 or 4.
//!
//! For `D = a*x^4 + b*x^3 + c*x^2 + d*x + e` (cubics take `a = 0`) the classical
//! binary-quartic invariants are
//!
//! ```text
//! I = 12ae - 3bd + c^2
//! J = 72ace + 9bcd - 27ad^2 - 27b^2e - 2c^3
//! ```
//!
//! and the j-invariant is `j = 6912 I^3 / (4I^3 - J^2)`, normalized so that
//! `y^2 = x^3 - x` has `j = 1728`. The curve is smooth exactly when `4I^3 != J^2`
//! (equivalently, `D` squarefree), and `j` is unchanged by `x -> x + c`,
//! `x -> c*x` and by constant rescaling of `D`, so comparing j-invariants of monic
//! radicands is meaningful even when the underlying curves differ by a twist.

use crate::field::{AlgebraicNumber, Field, FieldError};
use crate::poly::UniPoly;

#[derive(Debug, thiserror::Error)]
pub enum CurveError {
    #[error("curve is singular: 4I^3 = J^2")]
    SingularCurve,
    #[error("expected a polynomial of degree 3 or 4, got degree {found}")]
    WrongDegree { found: usize },
    #[error("j-invariants live in different number fields")]
    IncomparableFields,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The degree-2 and degree-3 invariants of a binary quartic.
#[derive(Debug, Clone)]
pub struct QuarticInvariants {
    pub i: AlgebraicNumber,
    pub j: AlgebraicNumber,
}

/// A short Weierstrass model `Y^2 = X^3 + pX + q` together with its j-invariant.
#[derive(Debug, Clone)]
pub struct WeierstrassModel {
    pub p: AlgebraicNumber,
    pub q: AlgebraicNumber,
    pub j: AlgebraicNumber,
}

/// The invariants `I`, `J` of `D` (degree 3 or 4; lower coefficients may vanish).
pub fn quartic_invariants(d: &UniPoly) -> Result<QuarticInvariants, CurveError> {
    let deg = d.deg0();
    if !(3..=4).contains(&deg) || d.is_zero() {
        return Err(CurveError::WrongDegree { found: deg });
    }
    let [e, dd, c, b, a] = [0, 1, 2, 3, 4].map(|k| d.coeff(k));
    let field = d.field();
    let n = |k: i64| field.from_int(k);

    let t12ae = &(&n(12) * &a) * &e;
    let t3bd = &(&n(3) * &b) * &dd;
    let i = &(&t12ae - &t3bd) + &(&c * &c);

    let t72ace = &(&(&n(72) * &a) * &c) * &e;
    let t9bcd = &(&(&n(9) * &b) * &c) * &dd;
    let t27ad2 = &(&n(27) * &a) * &(&dd * &dd);
    let t27b2e = &(&(&n(27) * &b) * &b) * &e;
    let t2c3 = &n(2) * &c.pow(3);
    let j = &(&(&(&t72ace + &t9bcd) - &t27ad2) - &t27b2e) - &t2c3;
    Ok(QuarticInvariants { i, j })
}

/// `6912 I^3 / (4I^3 - J^2)`, failing on singular input.
pub fn j_invariant(d: &UniPoly) -> Result<AlgebraicNumber, CurveError> {
    let QuarticInvariants { i, j } = quartic_invariants(d)?;
    let field = d.field();
    let i3 = i.pow(3);
    let disc = &(&field.from_int(4) * &i3) - &j.pow(2);
    if disc.is_zero() {
        return Err(CurveError::SingularCurve);
    }
    Ok(&(&field.from_int(6912) * &i3) * &disc.inv()?)
}

/// The j-faithful short model `(p, q) = (-27I, -27J)`.
pub fn to_weierstrass(d: &UniPoly) -> Result<WeierstrassModel, CurveError> {
    let j = j_invariant(d)?;
    let QuarticInvariants { i, j: jj } = quartic_invariants(d)?;
    let m27 = d.field().from_int(-27);
    Ok(WeierstrassModel { p: &m27 * &i, q: &m27 * &jj, j })
}

impl WeierstrassModel {
    /// The right-hand side `X^3 + pX + q` as a polynomial.
    pub fn rhs(&self) -> UniPoly {
        let field = self.p.field().clone();
        UniPoly::from_coeffs(
            &field,
            vec![self.q.clone(), self.p.clone(), field.zero(), field.one()],
        )
    }
}

/// Smallest common field of two coefficient fields; only identical fields or
/// a rationals/extension pair are comparable.
fn common_field(a: &Field, b: &Field) -> Result<Field, CurveError> {
    if a == b {
        Ok(a.clone())
    } else if a.is_rationals() {
        Ok(b.clone())
    } else if b.is_rationals() {
        Ok(a.clone())
    } else {
        Err(CurveError::IncomparableFields)
    }
}

fn lift_element(x: &AlgebraicNumber, field: &Field) -> Result<AlgebraicNumber, CurveError> {
    if x.field() == field {
        return Ok(x.clone());
    }
    match x.as_rat() {
        Some(q) => Ok(field.from_rat(q.clone())),
        None => Err(CurveError::IncomparableFields),
    }
}

/// Exact j-equality of `y^2 = d1` and `y^2 = d2` in a common field.
pub fn same_j(d1: &UniPoly, d2: &UniPoly) -> Result<bool, CurveError> {
    let field = common_field(d1.field(), d2.field())?;
    let j1 = lift_element(&j_invariant(d1)?, &field)?;
    let j2 = lift_element(&j_invariant(d2)?, &field)?;
    Ok(j1 == j2)
}

/// Exact j-equality of `y^2 = d` against an already-computed j value.
pub fn same_j_value(d: &UniPoly, j: &AlgebraicNumber) -> Result<bool, CurveError> {
    let field = common_field(d.field(), j.field())?;
    let j1 = lift_element(&j_invariant(d)?, &field)?;
    let j2 = lift_element(j, &field)?;
    Ok(j1 == j2)
}
