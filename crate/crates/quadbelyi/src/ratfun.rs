//! Rational functions in one variable over a [`Field`], kept reduced.
//!
//! Invariants: numerator and denominator are coprime and the denominator is monic
//! (zero is `0/1`). All arithmetic is checked so that zero-divisor failures from a
//! reducible field declaration propagate as errors instead of panicking.

use crate::field::{AlgebraicNumber, Field};
use crate::poly::{PolyError, UniPoly};
use std::fmt;

/// A reduced rational function `num/den`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    /// Build and reduce; fails on a zero denominator.
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let g = num.gcd(&den)?;
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        if !den.is_monic() {
            let lc_inv = den.leading_coeff().unwrap().inv()?;
            den = den.scale(&lc_inv);
            num = num.scale(&lc_inv);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        let den = UniPoly::one(p.field());
        RationalFunction { num: p, den }
    }

    pub fn constant(a: AlgebraicNumber) -> Self {
        Self::from_poly(UniPoly::constant(a))
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_poly(UniPoly::zero(field))
    }

    pub fn one(field: &Field) -> Self {
        Self::from_poly(UniPoly::one(field))
    }

    pub fn x(field: &Field) -> Self {
        Self::from_poly(UniPoly::x(field))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The constant value, if this is one.
    pub fn as_constant(&self) -> Option<AlgebraicNumber> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Degree as a map `P^1 -> P^1`: `max(deg num, deg den)`.
    pub fn map_degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    /// Square root, when one exists in the same function field. Both the
    /// numerator and denominator must have all-even multiplicities and the
    /// leading unit must be a rational square; the branch with a positive
    /// rational leading unit is returned.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let field = self.field();
        let dn = self.num.squarefree_decomposition().ok()?;
        let dd = self.den.squarefree_decomposition().ok()?;
        if dn.factors.iter().any(|(_, m)| m % 2 == 1)
            || dd.factors.iter().any(|(_, m)| m % 2 == 1)
        {
            return None;
        }
        let root = dn.unit.rational_sqrt()?;
        let num = dn.square_root_part(field).scale(&field.from_rat(root));
        let den = dd.square_root_part(field);
        Some(RationalFunction::new(num, den).expect("square root of a nonzero denominator"))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, PolyError> {
        Self::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, PolyError> {
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, PolyError> {
        if rhs.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn inv(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, a: &AlgebraicNumber) -> Self {
        if a.is_zero() {
            return Self::zero(self.field());
        }
        RationalFunction { num: self.num.scale(a), den: self.den.clone() }
    }

    pub fn pow(&self, e: i64) -> Result<Self, PolyError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut acc = Self::one(self.field());
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

    pub fn derivative(&self) -> Result<Self, PolyError> {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// Evaluate at a point; fails at poles.
    pub fn eval(&self, x: &AlgebraicNumber) -> Result<AlgebraicNumber, PolyError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(&self.num.eval(x) * &d.inv()?)
    }

    /// Approximate evaluation; requires rational coefficients.
    pub fn eval_f64(&self, x: f64) -> Option<f64> {
        Some(self.num.eval_f64(x)? / self.den.eval_f64(x)?)
    }

    pub fn display(&self, var: &str) -> String {
        if self.den.is_constant() {
            return self.num.display(var);
        }
        format!("({}) / ({})", self.num.display(var), self.den.display(var))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}
