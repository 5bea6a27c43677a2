//! Exact coefficient fields: the rationals and explicit number fields `Q(theta)`.
//!
//! A [`Field`] is either `Q` or `Q[theta]/(m(theta))` for a declared monic minimal
//! polynomial `m`. Elements ([`AlgebraicNumber`]) are coefficient vectors of length
//! `deg m` over `Q`. Reducibility of `m` is not checked eagerly: inverting an element
//! that shares a factor with `m` fails with [`FieldError::ZeroDivisor`], which is how
//! bad field declarations surface.
//!
//! Mixed-field arithmetic is a programming error and panics; callers coerce rationals
//! into a field explicitly with [`Field::from_rat`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Exact rational scalar used for all coefficients.
pub type Rat = BigRational;

/// `n` as a [`Rat`].
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a [`Rat`].
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    /// The element is a zero divisor: the declared minimal polynomial is reducible
    /// and the element shares the printed monic factor with it.
    #[error("zero divisor: minimal polynomial has factor {factor}")]
    ZeroDivisor { factor: String },
    #[error("invalid minimal polynomial: {0}")]
    InvalidMinPoly(String),
}

#[derive(Debug, PartialEq, Eq)]
enum FieldRepr {
    Rationals,
    Extension {
        generator: String,
        /// Monic, ascending coefficients, length `degree + 1`, degree >= 2.
        min_poly: Vec<Rat>,
    },
}

/// A coefficient field: `Q` or a declared extension `Q(theta)`.
///
/// Cloning is cheap (shared representation). Two fields are equal when both are `Q`
/// or when generator name and minimal polynomial agree.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldRepr::Rationals => write!(f, "Q"),
            FieldRepr::Extension { generator, min_poly } => {
                write!(f, "Q({generator}) with {} = 0", poly_display(min_poly, generator))
            }
        }
    }
}

static RATIONALS: OnceLock<Field> = OnceLock::new();

impl Field {
    /// The field of rational numbers.
    pub fn rationals() -> Field {
        RATIONALS.get_or_init(|| Field(Arc::new(FieldRepr::Rationals))).clone()
    }

    /// `Q[gen]/(min_poly)`; `min_poly` ascending, must be monic of degree >= 2.
    pub fn extension(generator: &str, min_poly: Vec<Rat>) -> Result<Field, FieldError> {
        let mut mp = min_poly;
        while mp.last().is_some_and(|c| c.is_zero()) {
            mp.pop();
        }
        if mp.len() < 3 {
            return Err(FieldError::InvalidMinPoly("degree must be at least 2".into()));
        }
        if !mp.last().unwrap().is_one() {
            return Err(FieldError::InvalidMinPoly("must be monic".into()));
        }
        Ok(Field(Arc::new(FieldRepr::Extension {
            generator: generator.to_string(),
            min_poly: mp,
        })))
    }

    /// Quadratic field `Q(gen)` with `gen^2 = d`.
    pub fn quadratic(generator: &str, d: i64) -> Field {
        Field::extension(generator, vec![rat_i(-d), rat_i(0), rat_i(1)]).expect("valid quadratic")
    }

    /// Extension degree over `Q` (1 for the rationals).
    pub fn degree(&self) -> usize {
        match &*self.0 {
            FieldRepr::Rationals => 1,
            FieldRepr::Extension { min_poly, .. } => min_poly.len() - 1,
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(&*self.0, FieldRepr::Rationals)
    }

    pub fn generator_name(&self) -> Option<&str> {
        match &*self.0 {
            FieldRepr::Rationals => None,
            FieldRepr::Extension { generator, .. } => Some(generator),
        }
    }

    /// Minimal polynomial coefficients (ascending), if this is an extension.
    pub fn min_poly(&self) -> Option<&[Rat]> {
        match &*self.0 {
            FieldRepr::Rationals => None,
            FieldRepr::Extension { min_poly, .. } => Some(min_poly),
        }
    }

    pub fn zero(&self) -> AlgebraicNumber {
        self.from_rat(Rat::zero())
    }

    pub fn one(&self) -> AlgebraicNumber {
        self.from_rat(Rat::one())
    }

    pub fn from_int(&self, n: i64) -> AlgebraicNumber {
        self.from_rat(rat_i(n))
    }

    pub fn from_rat(&self, q: Rat) -> AlgebraicNumber {
        let mut c = vec![Rat::zero(); self.degree()];
        c[0] = q;
        AlgebraicNumber { field: self.clone(), c }
    }

    /// The generator `theta` as an element, if this is an extension.
    pub fn generator(&self) -> Option<AlgebraicNumber> {
        if self.degree() < 2 {
            return None;
        }
        let mut c = vec![Rat::zero(); self.degree()];
        c[1] = Rat::one();
        Some(AlgebraicNumber { field: self.clone(), c })
    }

    /// Element with the given coefficient vector in the power basis (ascending,
    /// padded or reduced as needed).
    pub fn element(&self, coeffs: Vec<Rat>) -> AlgebraicNumber {
        let d = self.degree();
        if coeffs.len() <= d {
            let mut c = coeffs;
            c.resize(d, Rat::zero());
            return AlgebraicNumber { field: self.clone(), c };
        }
        let mut c = coeffs;
        match &*self.0 {
            FieldRepr::Rationals => {
                assert!(c[1..].iter().all(|x| x.is_zero()), "non-rational coefficients over Q");
                c.truncate(1);
            }
            FieldRepr::Extension { min_poly, .. } => {
                reduce_mod(&mut c, min_poly);
                c.resize(d, Rat::zero());
            }
        }
        AlgebraicNumber { field: self.clone(), c }
    }
}

/// Reduce `c` modulo the monic polynomial `m` in place.
fn reduce_mod(c: &mut Vec<Rat>, m: &[Rat]) {
    let d = m.len() - 1;
    while c.len() > d {
        let top = c.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = c.len() - d;
        for (i, mi) in m[..d].iter().enumerate() {
            let t = &top * mi;
            c[shift + i] -= t;
        }
    }
}

/// An element of a [`Field`], in the power basis of the generator.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraicNumber {
    field: Field,
    c: Vec<Rat>,
}

impl AlgebraicNumber {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Coefficients in the power basis (length = field degree).
    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// The value as a rational, if the generator does not occur.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    fn check_field(&self, other: &AlgebraicNumber) {
        assert!(
            self.field == other.field,
            "mixed-field arithmetic: {:?} vs {:?}",
            self.field,
            other.field
        );
    }

    pub fn inv(&self) -> Result<AlgebraicNumber, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match &*self.field.0 {
            FieldRepr::Rationals => Ok(self.field.from_rat(self.c[0].recip())),
            FieldRepr::Extension { min_poly, generator } => {
                let (g, u) = poly_half_xgcd(&self.c, min_poly);
                if poly_deg(&g) > Some(0) {
                    let monic = poly_monic(&g);
                    return Err(FieldError::ZeroDivisor {
                        factor: poly_display(&monic, generator),
                    });
                }
                let g0 = g[0].recip();
                let coeffs = u.into_iter().map(|x| x * &g0).collect();
                Ok(self.field.element(coeffs))
            }
        }
    }

    pub fn div(&self, other: &AlgebraicNumber) -> Result<AlgebraicNumber, FieldError> {
        self.check_field(other);
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> AlgebraicNumber {
        let mut acc = self.field.one();
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

    /// Scale by a rational.
    pub fn scale(&self, q: &Rat) -> AlgebraicNumber {
        AlgebraicNumber {
            field: self.field.clone(),
            c: self.c.iter().map(|x| x * q).collect(),
        }
    }

    /// Is this a square of a rational? Returns the positive root when the element is a
    /// rational perfect square.
    pub fn rational_sqrt(&self) -> Option<Rat> {
        let q = self.as_rat()?;
        if q.is_negative() {
            return None;
        }
        let num = q.numer().sqrt();
        let den = q.denom().sqrt();
        if &(&num * &num) == q.numer() && &(&den * &den) == q.denom() {
            Some(Rat::new(num, den))
        } else {
            None
        }
    }

    /// Approximate value when rational.
    pub fn to_f64(&self) -> Option<f64> {
        use num_traits::ToPrimitive;
        self.as_rat().and_then(|q| q.to_f64())
    }
}

impl std::ops::Add for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn add(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self.check_field(rhs);
        AlgebraicNumber {
            field: self.field.clone(),
            c: self.c.iter().zip(&rhs.c).map(|(a, b)| a + b).collect(),
        }
    }
}

impl std::ops::Sub for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn sub(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self.check_field(rhs);
        AlgebraicNumber {
            field: self.field.clone(),
            c: self.c.iter().zip(&rhs.c).map(|(a, b)| a - b).collect(),
        }
    }
}

impl std::ops::Neg for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        AlgebraicNumber {
            field: self.field.clone(),
            c: self.c.iter().map(|a| -a).collect(),
        }
    }
}

impl std::ops::Mul for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn mul(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self.check_field(rhs);
        let d = self.field.degree();
        if d == 1 {
            return self.field.from_rat(&self.c[0] * &rhs.c[0]);
        }
        let mut prod = vec![Rat::zero(); 2 * d - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        self.field.element(prod)
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gen = self.field.generator_name().unwrap_or("?");
        write!(f, "{}", poly_display(&self.c, gen))
    }
}

// ---- small polynomial helpers over Q (used for field arithmetic only) ----

fn poly_deg(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_monic(p: &[Rat]) -> Vec<Rat> {
    let d = poly_deg(p).expect("nonzero");
    let lc = p[d].recip();
    p[..=d].iter().map(|c| c * &lc).collect()
}

/// Remainder and quotient of `a` by nonzero `b` over `Q`.
fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = poly_deg(b).expect("division by zero polynomial");
    let mut r = a.to_vec();
    let mut q = vec![Rat::zero(); a.len().saturating_sub(db).max(1)];
    while let Some(dr) = poly_deg(&r) {
        if dr < db {
            break;
        }
        let coef = &r[dr] / &b[db];
        let shift = dr - db;
        for i in 0..=db {
            let t = &coef * &b[i];
            r[shift + i] -= t;
        }
        q[shift] = coef;
    }
    (poly_trim(q), poly_trim(r))
}

/// Extended gcd returning `(g, u)` with `u*a = g (mod m)`.
fn poly_half_xgcd(a: &[Rat], m: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r0 = m.to_vec();
    let mut r1 = poly_trim(a.to_vec());
    let mut u0: Vec<Rat> = vec![];
    let mut u1: Vec<Rat> = vec![Rat::one()];
    while poly_deg(&r1).is_some() {
        let (q, r) = poly_divrem(&r0, &r1);
        let u = poly_sub(&u0, &poly_mul(&q, &u1));
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u);
    }
    (r0, u0)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Rat::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rat::zero);
        out.push(x - y);
    }
    poly_trim(out)
}

/// Human-readable polynomial in the named variable, descending powers.
pub(crate) fn poly_display(c: &[Rat], var: &str) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, coef) in c.iter().enumerate().rev() {
        if coef.is_zero() {
            continue;
        }
        let mag = coef.abs();
        let sign = if coef.is_negative() { "-" } else { "+" };
        let term = match i {
            0 => format!("{mag}"),
            _ => {
                let pow = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
                if mag.is_one() {
                    pow
                } else {
                    format!("{mag}*{pow}")
                }
            }
        };
        if parts.is_empty() {
            parts.push(if sign == "-" { format!("-{term}") } else { term });
        } else {
            parts.push(format!(" {sign} {term}"));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.concat()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt10() -> Field {
        Field::quadratic("t", 10)
    }

    #[test]
    fn rational_field_basics() {
        let q = Field::rationals();
        let a = q.from_rat(rat(3, 4));
        let b = q.from_rat(rat(-2, 5));
        assert_eq!((&a * &b).as_rat().unwrap(), &rat(-3, 10));
        assert_eq!((&a + &b).as_rat().unwrap(), &rat(7, 20));
        assert_eq!(a.inv().unwrap().as_rat().unwrap(), &rat(4, 3));
    }

    #[test]
    fn quadratic_norm() {
        let f = sqrt10();
        let t = f.generator().unwrap();
        let a = &f.from_int(3) + &t;
        let b = &f.from_int(3) - &t;
        assert_eq!((&a * &b).as_rat().unwrap(), &rat_i(-1));
    }

    #[test]
    fn inverse_multiplies_back_to_one() {
        let f = sqrt10();
        let t = f.generator().unwrap();
        for (p, q, r) in [(1i64, 1i64, 1i64), (3, -2, 7), (0, 5, 3), (-4, 9, 2)] {
            let a = &f.from_rat(rat(p, r)) + &t.scale(&rat(q, r));
            if a.is_zero() {
                continue;
            }
            let inv = a.inv().unwrap();
            assert!((&a * &inv).is_one(), "a * a^-1 != 1 for {a}");
        }
    }

    #[test]
    fn cubic_field_reduction() {
        // mu^3 = mu^2 - 4 mu - 2
        let f = Field::extension("mu", vec![rat_i(2), rat_i(4), rat_i(-1), rat_i(1)]).unwrap();
        let mu = f.generator().unwrap();
        let cube = mu.pow(3);
        let expect = f.element(vec![rat_i(-2), rat_i(-4), rat_i(1)]);
        assert_eq!(cube, expect);
        let inv = cube.inv().unwrap();
        assert!((&cube * &inv).is_one());
    }

    #[test]
    fn zero_divisor_detected() {
        // reducible: t^2 - 1 = (t-1)(t+1)
        let f = Field::extension("t", vec![rat_i(-1), rat_i(0), rat_i(1)]).unwrap();
        let bad = &f.generator().unwrap() + &f.one();
        match bad.inv() {
            Err(FieldError::ZeroDivisor { factor }) => assert_eq!(factor, "t + 1"),
            other => panic!("expected zero divisor, got {other:?}"),
        }
    }

    #[test]
    fn division_by_zero() {
        let q = Field::rationals();
        assert!(matches!(q.zero().inv(), Err(FieldError::DivisionByZero)));
    }

    #[test]
    fn rational_sqrt() {
        let q = Field::rationals();
        assert_eq!(q.from_rat(rat(9, 4)).rational_sqrt(), Some(rat(3, 2)));
        assert_eq!(q.from_rat(rat(2, 1)).rational_sqrt(), None);
        assert_eq!(q.from_rat(rat(-9, 4)).rational_sqrt(), None);
        assert_eq!(q.from_int(486).rational_sqrt(), None);
        assert_eq!(q.from_rat(rat(486, 6)).rational_sqrt(), Some(rat_i(9)));
    }

    #[test]
    #[should_panic(expected = "mixed-field")]
    fn mixed_field_panics() {
        let a = Field::rationals().one();
        let b = sqrt10().one();
        let _ = &a + &b;
    }

    #[test]
    fn display_descending() {
        let f = sqrt10();
        let x = f.element(vec![rat(-1, 2), rat_i(3)]);
        assert_eq!(format!("{x}"), "3*t - 1/2");
    }
}
