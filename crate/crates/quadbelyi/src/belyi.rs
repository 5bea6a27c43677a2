//! Exact verification that a rational map is a Belyi map.
//!
//! A nonconstant rational map `P/Q` of degree `n = max(deg P, deg Q)` is Belyi when
//! its only critical values are `0`, `1` and `infinity`. On genus 0 the total
//! ramification over all values is exactly `2n - 2`, so it suffices to check that
//! the three special fibers already account for all of it:
//!
//! ```text
//! sum over the fibers {0, 1, inf} of (multiplicity - 1)  =  2n - 2.
//! ```
//!
//! Multiplicity data comes from squarefree decompositions of `P`, `Q - P` and `Q`.
//! The point `x = infinity` is handled by degree bookkeeping: it lies over `0`
//! (`deg P < deg Q`), over `infinity` (`deg P > deg Q`), over `1` (equal degrees
//! with equal leading coefficients), or over a fourth value (equal degrees
//! otherwise). In the last case any ramification at infinity is invisible to the
//! three fibers and surfaces as a saturation deficit, which is exactly right: a
//! critical value outside `{0, 1, infinity}` disqualifies the map.

use crate::field::Field;
use crate::passport::{Partition, Passport};
use crate::poly::{PolyError, UniPoly};
use crate::ratfun::RationalFunction;

#[derive(Debug, thiserror::Error)]
pub enum BelyiError {
    #[error("constant maps have no ramification structure")]
    ConstantMap,
    #[error("not a Belyi map: ramification saturation misses by {deficit}")]
    NotBelyi { deficit: usize },
    #[error(transparent)]
    Algebra(#[from] PolyError),
}

/// Which special fiber the point `x = infinity` belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialValue {
    Zero,
    One,
    Infinity,
}

/// Multiplicity structure of the three special fibers.
///
/// Each fiber lists `(multiplicity, monic squarefree factor)` pairs by ascending
/// multiplicity; a factor of degree `d` stands for `d` distinct points. `infinity`
/// records where the point `x = infinity` lives and with what multiplicity, or
/// `None` when it sits over a fourth value (necessarily unramified for a verified
/// map).
#[derive(Debug, Clone)]
pub struct FiberStructure {
    pub over0: Vec<(usize, UniPoly)>,
    pub over1: Vec<(usize, UniPoly)>,
    pub overinf: Vec<(usize, UniPoly)>,
    pub infinity: Option<(SpecialValue, usize)>,
}

impl FiberStructure {
    /// The ramification partition of one fiber, including the infinite point.
    pub fn partition(&self, fiber: SpecialValue) -> Partition {
        let list = match fiber {
            SpecialValue::Zero => &self.over0,
            SpecialValue::One => &self.over1,
            SpecialValue::Infinity => &self.overinf,
        };
        let mut parts = Vec::new();
        for (m, f) in list {
            parts.extend(std::iter::repeat(*m).take(f.deg0()));
        }
        if let Some((place, m)) = &self.infinity {
            if *place == fiber {
                parts.push(*m);
            }
        }
        Partition::new(parts)
    }

    /// Total ramification `sum (multiplicity - 1)` across the three fibers.
    pub fn total_ramification(&self) -> usize {
        let lists = [&self.over0, &self.over1, &self.overinf];
        let finite: usize = lists
            .iter()
            .flat_map(|list| list.iter())
            .map(|(m, f)| (m - 1) * f.deg0())
            .sum();
        finite + self.infinity.map_or(0, |(_, m)| m - 1)
    }
}

/// A verified Belyi map.
#[derive(Debug, Clone)]
pub struct BelyiMap {
    field: Field,
    phi: RationalFunction,
    degree: usize,
    passport: Passport,
    fibers: FiberStructure,
}

impl BelyiMap {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn phi(&self) -> &RationalFunction {
        &self.phi
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn passport(&self) -> &Passport {
        &self.passport
    }

    pub fn fibers(&self) -> &FiberStructure {
        &self.fibers
    }
}

fn decompose(p: &UniPoly) -> Result<Vec<(usize, UniPoly)>, PolyError> {
    let mut out = Vec::new();
    for (f, m) in p.squarefree_decomposition()?.factors {
        out.push((m, f));
    }
    Ok(out)
}

/// Check the three-fiber saturation criterion and emit the passport.
pub fn verify_belyi(phi: &RationalFunction) -> Result<BelyiMap, BelyiError> {
    if phi.is_constant() {
        return Err(BelyiError::ConstantMap);
    }
    let p = phi.num();
    let q = phi.den();
    let r1 = q - p;
    if r1.is_zero() || p.is_zero() {
        return Err(BelyiError::ConstantMap);
    }
    let n = phi.map_degree();
    let (dp, dq) = (p.deg0(), q.deg0());

    // q is monic, so equal leading coefficients mean lc(p) = 1
    let infinity = match dp.cmp(&dq) {
        std::cmp::Ordering::Less => Some((SpecialValue::Zero, dq - dp)),
        std::cmp::Ordering::Greater => Some((SpecialValue::Infinity, dp - dq)),
        std::cmp::Ordering::Equal if p.is_monic() => Some((SpecialValue::One, n - r1.deg0())),
        std::cmp::Ordering::Equal => None,
    };

    let fibers = FiberStructure {
        over0: decompose(p)?,
        over1: decompose(&r1)?,
        overinf: decompose(q)?,
        infinity,
    };

    let total = fibers.total_ramification();
    assert!(total <= 2 * n - 2, "fiber ramification exceeds the Hurwitz bound");
    if total < 2 * n - 2 {
        return Err(BelyiError::NotBelyi { deficit: 2 * n - 2 - total });
    }

    let passport = Passport::new(
        fibers.partition(SpecialValue::Zero),
        fibers.partition(SpecialValue::One),
        fibers.partition(SpecialValue::Infinity),
    )
    .expect("saturated fibers partition the degree");
    debug_assert_eq!(passport.degree(), n);
    debug_assert_eq!(passport.genus().ok(), Some(0));

    Ok(BelyiMap {
        field: phi.field().clone(),
        phi: phi.clone(),
        degree: n,
        passport,
        fibers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn q() -> Field {
        Field::rationals()
    }

    fn rf(num: UniPoly, den: UniPoly) -> RationalFunction {
        RationalFunction::new(num, den).unwrap()
    }

    fn ints(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_ints(&q(), coeffs)
    }

    pub(crate) fn psi9() -> RationalFunction {
        // -(x^3 + 45x - 450)^3 / (2916 (3x - 5)^4)
        let num = ints(&[-450, 45, 0, 1]).pow(3).scale(&q().from_int(-1));
        let den = ints(&[-5, 3]).pow(4).scale(&q().from_int(2916));
        rf(num, den)
    }

    pub(crate) fn psi8() -> RationalFunction {
        // 64 (4x - 5)^3 / (x^2 - 10)^4
        let num = ints(&[-5, 4]).pow(3).scale(&q().from_int(64));
        let den = ints(&[-10, 0, 1]).pow(4);
        rf(num, den)
    }

    #[test]
    fn squaring_map() {
        let m = verify_belyi(&rf(ints(&[0, 0, 1]), ints(&[1]))).unwrap();
        assert_eq!(m.degree(), 2);
        assert_eq!(m.passport(), &"[2/1^2/2]".parse().unwrap());
        assert_eq!(m.fibers().infinity, Some((SpecialValue::Infinity, 2)));
    }

    #[test]
    fn degree_nine_map_has_its_published_passport() {
        let m = verify_belyi(&psi9()).unwrap();
        assert_eq!(m.degree(), 9);
        assert_eq!(m.passport(), &"[3^3 / 2^3 1^3 / 5 4]".parse().unwrap());
        assert_eq!(m.fibers().infinity, Some((SpecialValue::Infinity, 5)));
    }

    #[test]
    fn degree_eight_map_has_its_published_passport() {
        let m = verify_belyi(&psi8()).unwrap();
        assert_eq!(m.passport(), &"[5 3 / 2^2 1^4 / 4^2]".parse().unwrap());
        // infinity is the order-5 zero
        assert_eq!(m.fibers().infinity, Some((SpecialValue::Zero, 5)));
    }

    #[test]
    fn polynomial_with_critical_values_elsewhere_is_rejected() {
        // x^3 - 3x has critical values 2 and -2
        let err = verify_belyi(&rf(ints(&[0, -3, 0, 1]), ints(&[1]))).unwrap_err();
        assert!(matches!(err, BelyiError::NotBelyi { deficit: 2 }));
    }

    #[test]
    fn infinity_over_one_when_degrees_and_leads_agree() {
        // x^2 / (x^2 - 1) ramifies over 1 at infinity
        let m = verify_belyi(&rf(ints(&[0, 0, 1]), ints(&[-1, 0, 1]))).unwrap();
        assert_eq!(m.passport(), &"[2/2/1^2]".parse().unwrap());
        assert_eq!(m.fibers().infinity, Some((SpecialValue::One, 2)));
    }

    #[test]
    fn hidden_ramification_over_a_fourth_value_shows_as_deficit() {
        // 2x^2 / (x^2 - 1) is critical over the value 2 at infinity
        let err = verify_belyi(&rf(ints(&[0, 0, 2]), ints(&[-1, 0, 1]))).unwrap_err();
        assert!(matches!(err, BelyiError::NotBelyi { deficit: 1 }));
    }

    #[test]
    fn constant_maps_are_rejected() {
        let e = verify_belyi(&RationalFunction::constant(q().from_int(5))).unwrap_err();
        assert!(matches!(e, BelyiError::ConstantMap));
    }

    #[test]
    fn fiber_partitions_sum_to_the_degree() {
        let m = verify_belyi(&psi9()).unwrap();
        for f in [SpecialValue::Zero, SpecialValue::One, SpecialValue::Infinity] {
            assert_eq!(m.fibers().partition(f).sum(), 9);
        }
    }
}
