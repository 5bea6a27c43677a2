//! The quadratic extension `F(s)[w] / (w^2 - R(s))` of a rational function field.
//!
//! Elements are `u + v*w` with `u`, `v` rational functions in `s` and `R` a fixed
//! squarefree nonconstant polynomial (the hyperelliptic curve `w^2 = R(s)`).
//! Differentiation uses `dw/ds = R'(s) / (2 w) = R'(s) w / (2 R(s))`.

use crate::poly::{PolyError, UniPoly};
use crate::ratfun::RationalFunction;
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum QuadExtError {
    #[error("modulus must be squarefree and nonconstant")]
    NonSquarefreeModulus,
    #[error("division by zero in quadratic extension")]
    DivisionByZero,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `u + v*w` on the curve `w^2 = modulus(s)`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExtElement {
    u: RationalFunction,
    v: RationalFunction,
    modulus: UniPoly,
}

impl QuadExtElement {
    pub fn new(
        u: RationalFunction,
        v: RationalFunction,
        modulus: UniPoly,
    ) -> Result<Self, QuadExtError> {
        if modulus.is_constant() || !modulus.is_squarefree()? {
            return Err(QuadExtError::NonSquarefreeModulus);
        }
        assert!(u.field() == v.field() && u.field() == modulus.field(), "mixed fields");
        Ok(QuadExtElement { u, v, modulus })
    }

    /// A plain rational function viewed on the curve.
    pub fn from_ratfun(u: RationalFunction, modulus: UniPoly) -> Result<Self, QuadExtError> {
        let v = RationalFunction::zero(u.field());
        Self::new(u, v, modulus)
    }

    /// The square root `w` itself.
    pub fn w(modulus: UniPoly) -> Result<Self, QuadExtError> {
        let field = modulus.field().clone();
        Self::new(
            RationalFunction::zero(&field),
            RationalFunction::one(&field),
            modulus,
        )
    }

    pub fn u(&self) -> &RationalFunction {
        &self.u
    }

    pub fn v(&self) -> &RationalFunction {
        &self.v
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    fn check(&self, rhs: &Self) {
        assert!(self.modulus == rhs.modulus, "elements on different curves");
    }

    fn lift(&self, u: RationalFunction, v: RationalFunction) -> Self {
        QuadExtElement { u, v, modulus: self.modulus.clone() }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, QuadExtError> {
        self.check(rhs);
        Ok(self.lift(self.u.add(&rhs.u)?, self.v.add(&rhs.v)?))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, QuadExtError> {
        self.check(rhs);
        Ok(self.lift(self.u.sub(&rhs.u)?, self.v.sub(&rhs.v)?))
    }

    pub fn neg(&self) -> Self {
        self.lift(self.u.neg(), self.v.neg())
    }

    /// Galois conjugate `u - v*w`.
    pub fn conjugate(&self) -> Self {
        self.lift(self.u.clone(), self.v.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, QuadExtError> {
        self.check(rhs);
        let r = RationalFunction::from_poly(self.modulus.clone());
        let u = self.u.mul(&rhs.u)?.add(&self.v.mul(&rhs.v)?.mul(&r)?)?;
        let v = self.u.mul(&rhs.v)?.add(&self.v.mul(&rhs.u)?)?;
        Ok(self.lift(u, v))
    }

    /// Norm `u^2 - v^2 R` down to the rational function field.
    pub fn norm(&self) -> Result<RationalFunction, QuadExtError> {
        let r = RationalFunction::from_poly(self.modulus.clone());
        Ok(self.u.mul(&self.u)?.sub(&self.v.mul(&self.v)?.mul(&r)?)?)
    }

    pub fn inv(&self) -> Result<Self, QuadExtError> {
        // norm vanishes only for the zero element: R squarefree of degree >= 1
        // cannot be a square in F(s)
        let n = self.norm()?;
        if n.is_zero() {
            return Err(QuadExtError::DivisionByZero);
        }
        let ninv = n.inv()?;
        Ok(self.lift(self.u.mul(&ninv)?, self.v.neg().mul(&ninv)?))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, QuadExtError> {
        self.mul(&rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, QuadExtError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let field = self.u.field().clone();
        let mut acc = self.lift(
            RationalFunction::one(&field),
            RationalFunction::zero(&field),
        );
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Derivative with respect to `s` on the curve:
    /// `(u + v w)' = u' + (v' + v R' / (2R)) w`.
    pub fn derivative(&self) -> Result<Self, QuadExtError> {
        let field = self.u.field().clone();
        let r = RationalFunction::from_poly(self.modulus.clone());
        let rp = RationalFunction::from_poly(self.modulus.derivative());
        let two = RationalFunction::constant(field.from_int(2));
        let correction = self.v.mul(&rp)?.div(&two.mul(&r)?)?;
        Ok(self.lift(self.u.derivative()?, self.v.derivative()?.add(&correction)?))
    }

    /// Approximate evaluation on the chosen branch of `w = sqrt(R(s))`.
    /// Requires rational coefficients and `R(s) >= 0`.
    pub fn eval_f64(&self, s: f64, positive_branch: bool) -> Option<f64> {
        let r = self.modulus.eval_f64(s)?;
        if r < 0.0 {
            return None;
        }
        let w = if positive_branch { r.sqrt() } else { -r.sqrt() };
        Some(self.u.eval_f64(s)? + self.v.eval_f64(s)? * w)
    }

    pub fn display(&self, var: &str) -> String {
        if self.v.is_zero() {
            return self.u.display(var);
        }
        if self.u.is_zero() {
            return format!("({}) * w", self.v.display(var));
        }
        format!("({}) + ({}) * w", self.u.display(var), self.v.display(var))
    }
}

impl fmt::Debug for QuadExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} where w^2 = {}", self.display("s"), self.modulus.display("s"))
    }
}
