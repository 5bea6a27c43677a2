//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored ascending with no trailing zeros; the zero polynomial has
//! an empty coefficient vector. Division and gcd are exact; gcds are returned monic.
//! [`UniPoly::squarefree_decomposition`] implements Yun's algorithm (characteristic 0).

use crate::field::{AlgebraicNumber, Field, FieldError, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial division by zero")]
    DivisionByZero,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A univariate polynomial over a fixed coefficient field.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    c: Vec<AlgebraicNumber>,
}

impl UniPoly {
    pub fn zero(field: &Field) -> Self {
        UniPoly { field: field.clone(), c: vec![] }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(value: AlgebraicNumber) -> Self {
        let field = value.field().clone();
        let c = if value.is_zero() { vec![] } else { vec![value] };
        UniPoly { field, c }
    }

    /// The monomial `x`.
    pub fn x(field: &Field) -> Self {
        UniPoly { field: field.clone(), c: vec![field.zero(), field.one()] }
    }

    pub fn from_coeffs(field: &Field, coeffs: Vec<AlgebraicNumber>) -> Self {
        for a in &coeffs {
            assert!(a.field() == field, "coefficient from wrong field");
        }
        let mut p = UniPoly { field: field.clone(), c: coeffs };
        p.trim();
        p
    }

    /// Polynomial with rational coefficients (ascending), coerced into `field`.
    pub fn from_rats(field: &Field, coeffs: &[Rat]) -> Self {
        let c = coeffs.iter().map(|q| field.from_rat(q.clone())).collect();
        Self::from_coeffs(field, c)
    }

    /// Convenience for integer coefficient lists (ascending).
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&n| field.from_int(n)).collect();
        Self::from_coeffs(field, c)
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|a| a.is_zero()) {
            self.c.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[AlgebraicNumber] {
        &self.c
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> AlgebraicNumber {
        self.c.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    /// Degree with `deg 0 = 0` for the zero polynomial.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> Option<&AlgebraicNumber> {
        self.c.last()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|a| a.is_one())
    }

    pub fn eval(&self, x: &AlgebraicNumber) -> AlgebraicNumber {
        let mut acc = self.field.zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    /// Approximate evaluation; requires all coefficients rational.
    pub fn eval_f64(&self, x: f64) -> Option<f64> {
        let mut acc = 0.0;
        for a in self.c.iter().rev() {
            acc = acc * x + a.to_f64()?;
        }
        Some(acc)
    }

    pub fn derivative(&self) -> UniPoly {
        if self.c.len() <= 1 {
            return UniPoly::zero(&self.field);
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.scale(&crate::field::rat_i(i as i64)))
            .collect();
        UniPoly::from_coeffs(&self.field, c)
    }

    pub fn scale(&self, a: &AlgebraicNumber) -> UniPoly {
        if a.is_zero() {
            return UniPoly::zero(&self.field);
        }
        UniPoly {
            field: self.field.clone(),
            c: self.c.iter().map(|b| b * a).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Composition `self(other(x))` by Horner's scheme.
    pub fn compose(&self, other: &UniPoly) -> UniPoly {
        assert!(self.field == *other.field(), "mixed-field composition");
        let mut acc = UniPoly::zero(&self.field);
        for a in self.c.iter().rev() {
            acc = &(&acc * other) + &UniPoly::constant(a.clone());
        }
        acc
    }

    pub fn monic(&self) -> Result<UniPoly, PolyError> {
        match self.leading_coeff() {
            None => Ok(self.clone()),
            Some(lc) if lc.is_one() => Ok(self.clone()),
            Some(lc) => {
                let inv = lc.inv()?;
                Ok(self.scale(&inv))
            }
        }
    }

    /// Quotient and remainder; `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), PolyError> {
        assert!(self.field == *divisor.field(), "mixed-field polynomial arithmetic");
        let db = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lc_inv = divisor.leading_coeff().unwrap().inv()?;
        let mut r = self.c.clone();
        let mut q = vec![self.field.zero(); self.c.len().saturating_sub(db).max(1)];
        while r.len() > db {
            let top = r.last().unwrap().clone();
            let dr = r.len() - 1;
            if top.is_zero() {
                r.pop();
                continue;
            }
            let coef = &top * &lc_inv;
            let shift = dr - db;
            for i in 0..db {
                let t = &coef * &divisor.c[i];
                r[shift + i] = &r[shift + i] - &t;
            }
            r.pop();
            q[shift] = coef;
        }
        let q = UniPoly::from_coeffs(&self.field, q);
        let r = UniPoly::from_coeffs(&self.field, r);
        Ok((q, r))
    }

    /// Exact division; panics if the remainder is nonzero (internal invariant).
    pub fn exact_div(&self, divisor: &UniPoly) -> Result<UniPoly, PolyError> {
        let (q, r) = self.divrem(divisor)?;
        assert!(r.is_zero(), "exact_div with nonzero remainder");
        Ok(q)
    }

    /// Monic greatest common divisor (1 for coprime inputs, 0 only if both are 0).
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly, PolyError> {
        let mut a = self.normalized_for_gcd()?;
        let mut b = other.normalized_for_gcd()?;
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = std::mem::replace(&mut b, r.normalized_for_gcd()?);
        }
        a.monic()
    }

    /// Scale to keep coefficients small during gcd chains: integer-primitive over `Q`,
    /// monic over extensions.
    fn normalized_for_gcd(&self) -> Result<UniPoly, PolyError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.field.is_rationals() {
            let mut den = BigInt::one();
            for a in &self.c {
                let q = a.as_rat().unwrap();
                den = den.lcm(q.denom());
            }
            let mut num = BigInt::zero();
            for a in &self.c {
                let q = a.as_rat().unwrap();
                num = num.gcd(&(q.numer() * &den / q.denom()));
            }
            let scale = Rat::new(den, num);
            Ok(self.scale(&self.field.from_rat(scale)))
        } else {
            self.monic()
        }
    }

    pub fn is_squarefree(&self) -> Result<bool, PolyError> {
        Ok(self.gcd(&self.derivative())?.is_constant())
    }

    /// Yun's squarefree decomposition: `self = unit * prod factors[i].0 ^ factors[i].1`
    /// with monic, squarefree, pairwise coprime factors, listed by ascending multiplicity.
    pub fn squarefree_decomposition(&self) -> Result<SquarefreeDecomposition, PolyError> {
        let unit = self
            .leading_coeff()
            .cloned()
            .unwrap_or_else(|| self.field.zero());
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        let f = self.monic()?;
        let mut factors = Vec::new();
        if f.is_constant() {
            return Ok(SquarefreeDecomposition { unit, factors });
        }
        let fp = f.derivative();
        let g = f.gcd(&fp)?;
        let mut c = f.exact_div(&g)?;
        let mut d = &fp.exact_div(&g)? - &c.derivative();
        let mut i = 1usize;
        while !c.is_constant() {
            let a = c.gcd(&d)?;
            if !a.is_constant() {
                factors.push((a.clone(), i));
            }
            c = c.exact_div(&a)?;
            d = &d.exact_div(&a)? - &c.derivative();
            i += 1;
        }
        Ok(SquarefreeDecomposition { unit, factors })
    }

    /// Render in the given variable, descending powers.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let (sign, body) = coeff_term(a, var, i);
            if out.is_empty() {
                if sign == '-' {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push(' ');
                out.push(sign);
                out.push(' ');
                out.push_str(&body);
            }
        }
        out
    }
}

/// Sign and magnitude rendering of `a * x^i`.
fn coeff_term(a: &AlgebraicNumber, var: &str, i: usize) -> (char, String) {
    let pow = match i {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{i}"),
    };
    if let Some(q) = a.as_rat() {
        let sign = if q.is_negative() { '-' } else { '+' };
        let mag = q.abs();
        let body = if i == 0 {
            format!("{mag}")
        } else if mag.is_one() {
            pow
        } else {
            format!("{mag}*{pow}")
        };
        (sign, body)
    } else {
        let body = if i == 0 {
            format!("({a})")
        } else {
            format!("({a})*{pow}")
        };
        ('+', body)
    }
}

/// Result of Yun's algorithm.
#[derive(Debug, Clone)]
pub struct SquarefreeDecomposition {
    /// Leading coefficient of the input.
    pub unit: AlgebraicNumber,
    /// `(monic factor, multiplicity)` by ascending multiplicity.
    pub factors: Vec<(UniPoly, usize)>,
}

impl SquarefreeDecomposition {
    /// Multiply the decomposition back together.
    pub fn product(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m as u32);
        }
        acc
    }

    /// Product of odd-multiplicity factors (the squarefree radicand).
    pub fn odd_part(&self, field: &Field) -> UniPoly {
        let mut acc = UniPoly::one(field);
        for (f, m) in &self.factors {
            if m % 2 == 1 {
                acc = &acc * f;
            }
        }
        acc
    }

    /// Product of `factor^(multiplicity/2)` (the extracted square root).
    pub fn square_root_part(&self, field: &Field) -> UniPoly {
        let mut acc = UniPoly::one(field);
        for (f, m) in &self.factors {
            if m / 2 > 0 {
                acc = &acc * &f.pow((m / 2) as u32);
            }
        }
        acc
    }
}

impl std::ops::Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        assert!(self.field == *rhs.field(), "mixed-field polynomial arithmetic");
        let n = self.c.len().max(rhs.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.c.get(i);
            let b = rhs.c.get(i);
            c.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UniPoly::from_coeffs(&self.field, c)
    }
}

impl std::ops::Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            field: self.field.clone(),
            c: self.c.iter().map(|a| -a).collect(),
        }
    }
}

impl std::ops::Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        assert!(self.field == *rhs.field(), "mixed-field polynomial arithmetic");
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut c = vec![self.field.zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UniPoly::from_coeffs(&self.field, c)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}
