//! The quadratic correspondence taking a genus-zero Belyi map `phi0 = P/Q` to
//! `phi1 = 1/2 + sqrt(1 - phi0)/2` on a genus-one curve.
//!
//! Writing `(Q - P) * Q = c * S^2 * D` with `D` monic squarefree (Yun), the square
//! root of `1 - phi0 = (Q - P)/Q` lives on the curve `y^2 = c * D(x)`:
//! `sqrt(1 - phi0) = S y / Q`, hence `phi1 = 1/2 + (S / 2Q) y`. When `c` is a
//! rational square it is folded into `S` and the curve is `y^2 = D`. The double
//! cover of the x-line branches at the roots of `D`, plus the point at infinity
//! when `deg((Q - P) Q)` is odd; the effective branch count
//! `deg D + [infinity branched]` decides the outcome:
//!
//! - `0`: `phi1` is itself rational (degenerate, reported with the explicit map);
//! - `2`: the cover is another genus-zero curve and `phi1` is not regular on any
//!   genus-one model;
//! - `4`: genus one, and the branch locus is exactly the set forced by the fiber
//!   structure of `phi0` (simple points over 1 and odd-order poles).
//!
//! Points over 1 of multiplicity 3 or more break the construction (the lifted map
//! would be critical over the non-special value 1/2) and are reported the same way
//! as a wrong branch locus.

use crate::belyi::{BelyiMap, SpecialValue};
use crate::field::AlgebraicNumber;
use crate::passport::Passport;
use crate::poly::{PolyError, UniPoly};
use crate::quadext::{QuadExtElement, QuadExtError};
use crate::ratfun::RationalFunction;

#[derive(Debug, thiserror::Error)]
pub enum QcorrError {
    #[error(
        "square root of 1 - phi0 is not regular on a genus-one curve: \
         the branch locus has effective degree {effective_degree}, and a Belyi \
         correspondence needs exactly 4 branch points with at most double points over 1"
    )]
    NotRegularOnCurve {
        /// Monic squarefree radicand that actually appears under the root.
        d: UniPoly,
        infinity_branched: bool,
        effective_degree: usize,
    },
    #[error("the correspondence degenerates to a rational map")]
    DegenerateRational { phi1: RationalFunction },
    #[error(transparent)]
    Algebra(#[from] PolyError),
    #[error(transparent)]
    Extension(#[from] QuadExtError),
}

/// Genus of the curve carrying the correspondence, by effective branch count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrespondenceGenus {
    ZeroRational,
    ZeroConic,
    One,
}

impl CorrespondenceGenus {
    /// `0 -> rational, 1-2 -> conic, 3-4 -> genus one`, anything larger is out of
    /// range for this construction.
    pub fn from_effective_degree(ed: usize) -> Option<Self> {
        match ed {
            0 => Some(CorrespondenceGenus::ZeroRational),
            1..=2 => Some(CorrespondenceGenus::ZeroConic),
            3..=4 => Some(CorrespondenceGenus::One),
            _ => None,
        }
    }
}

/// A successful correspondence: `phi1 = 1/2 + (S / 2Q) y` on `y^2 = unit * D`.
#[derive(Debug, Clone)]
pub struct QCorrespondence {
    phi0: RationalFunction,
    unit: AlgebraicNumber,
    s: UniPoly,
    d: UniPoly,
    infinity_branched: bool,
    phi1: QuadExtElement,
    genus1_passport: Passport,
}

impl QCorrespondence {
    /// The genus-zero input map.
    pub fn phi0(&self) -> &RationalFunction {
        &self.phi0
    }

    /// Constant `c` with `(Q - P) Q = c S^2 D`; `1` whenever `c` was a rational
    /// square (it is then folded into `S`).
    pub fn unit(&self) -> &AlgebraicNumber {
        &self.unit
    }

    pub fn s(&self) -> &UniPoly {
        &self.s
    }

    /// Monic squarefree radicand; the curve is `y^2 = unit * D`.
    pub fn d(&self) -> &UniPoly {
        &self.d
    }

    pub fn infinity_branched(&self) -> bool {
        self.infinity_branched
    }

    /// Right-hand side `unit * D` of the curve equation.
    pub fn curve(&self) -> UniPoly {
        self.d.scale(&self.unit)
    }

    /// `phi1` as `u + v y` with `u = 1/2`, `v = S/(2Q)`, `y^2 = unit * D`.
    pub fn phi1(&self) -> &QuadExtElement {
        &self.phi1
    }

    pub fn genus1_passport(&self) -> &Passport {
        &self.genus1_passport
    }

    /// Always genus one for a constructed value; lower genera surface as errors.
    pub fn genus(&self) -> CorrespondenceGenus {
        CorrespondenceGenus::One
    }

    /// Effective branch count `deg D + [infinity branched]`.
    pub fn effective_degree(&self) -> usize {
        self.d.deg0() + usize::from(self.infinity_branched)
    }

    /// Exact check of `(2 phi1 - 1)^2 = 1 - phi0`, i.e. `4 v^2 (unit D) = 1 - phi0`.
    pub fn identity_holds(&self) -> bool {
        check_identity(&self.phi0, self.phi1.v(), &self.curve())
    }
}

fn check_identity(phi0: &RationalFunction, v: &RationalFunction, curve: &UniPoly) -> bool {
    let field = phi0.field();
    let lhs = match v
        .mul(v)
        .and_then(|vv| vv.mul(&RationalFunction::from_poly(curve.clone())))
    {
        Ok(x) => x.scale(&field.from_int(4)),
        Err(_) => return false,
    };
    match RationalFunction::one(field).sub(phi0) {
        Ok(rhs) => lhs == rhs,
        Err(_) => false,
    }
}

/// Push one fiber point of multiplicity `m` into the genus-one infinity fiber:
/// an unbranched pole of order `2b` has two preimages of order `b`, a branched
/// pole of odd order `c` one preimage of order `c`.
fn push_pole(parts: &mut Vec<usize>, m: usize) {
    if m % 2 == 0 {
        parts.push(m / 2);
        parts.push(m / 2);
    } else {
        parts.push(m);
    }
}

/// Build the correspondence for a verified genus-zero Belyi map.
pub fn q_correspond(m: &BelyiMap) -> Result<QCorrespondence, QcorrError> {
    let phi0 = m.phi();
    let field = m.field();
    let p = phi0.num();
    let q = phi0.den();

    let g = &(q - p) * q;
    let decomp = g.squarefree_decomposition()?;
    let d = decomp.odd_part(field);
    let mut s = decomp.square_root_part(field);
    let mut unit = decomp.unit.clone();
    if let Some(r) = unit.rational_sqrt() {
        s = s.scale(&field.from_rat(r));
        unit = field.one();
    }
    let infinity_branched = g.deg0() % 2 == 1;
    let effective_degree = d.deg0() + usize::from(infinity_branched);

    let two_q = q.scale(&field.from_int(2));
    let v = RationalFunction::new(s.clone(), two_q)?;

    if effective_degree == 0 {
        if unit.is_one() {
            let half = RationalFunction::constant(field.from_rat(crate::field::rat(1, 2)));
            let phi1 = half.add(&v)?;
            // 4 phi1 (1 - phi1) = phi0
            let back = phi1
                .mul(&RationalFunction::one(field).sub(&phi1)?)?
                .scale(&field.from_int(4));
            assert_eq!(&back, phi0, "degenerate correspondence identity failed");
            return Err(QcorrError::DegenerateRational { phi1 });
        }
        // the two rational branches differ by a non-square constant factor and do
        // not live in the base function field; report the (constant) branch locus
        return Err(QcorrError::NotRegularOnCurve { d, infinity_branched, effective_degree });
    }

    let fibers = m.fibers();
    let whites_ok = fibers.over1.iter().all(|(mult, _)| *mult <= 2)
        && !matches!(fibers.infinity, Some((SpecialValue::One, mw)) if mw > 2);
    if effective_degree != 4 || !whites_ok {
        return Err(QcorrError::NotRegularOnCurve { d, infinity_branched, effective_degree });
    }

    // genus-one passport: zeros of phi0 keep their multiplicity in both fibers
    // over 0 and over 1 (their two preimages split), poles fold per push_pole
    let mut a_parts = Vec::new();
    for (mult, f) in &fibers.over0 {
        a_parts.extend(std::iter::repeat(*mult).take(f.deg0()));
    }
    let mut inf_parts = Vec::new();
    for (mult, f) in &fibers.overinf {
        for _ in 0..f.deg0() {
            push_pole(&mut inf_parts, *mult);
        }
    }
    match fibers.infinity {
        Some((SpecialValue::Zero, mz)) => a_parts.push(mz),
        Some((SpecialValue::Infinity, mp)) => push_pole(&mut inf_parts, mp),
        _ => {}
    }
    let genus1_passport = Passport::new(
        crate::passport::Partition::new(a_parts.clone()),
        crate::passport::Partition::new(a_parts),
        crate::passport::Partition::new(inf_parts),
    )
    .expect("pole folding preserves the degree");
    assert_eq!(genus1_passport.genus().ok(), Some(1), "folded passport must have genus one");

    // independent route: the passport-level prediction must agree
    let shape = crate::passport::predict_genus1_passport(m.passport())
        .expect("a saturated genus-zero passport with a regular branch locus folds");
    assert!(!shape.degenerate, "regular branch locus cannot be the degenerate shape");
    assert_eq!(shape.genus1, genus1_passport, "fiber-level and passport-level folds disagree");

    let curve = d.scale(&unit);
    let half = RationalFunction::constant(field.from_rat(crate::field::rat(1, 2)));
    let phi1 = QuadExtElement::new(half, v.clone(), curve.clone())?;
    assert!(
        check_identity(phi0, &v, &curve),
        "correspondence identity (2 phi1 - 1)^2 = 1 - phi0 failed"
    );

    Ok(QCorrespondence {
        phi0: phi0.clone(),
        unit,
        s,
        d,
        infinity_branched,
        phi1,
        genus1_passport,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belyi::verify_belyi;
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

    fn psi9() -> BelyiMap {
        let num = ints(&[-450, 45, 0, 1]).pow(3).scale(&q().from_int(-1));
        let den = ints(&[-5, 3]).pow(4).scale(&q().from_int(2916));
        verify_belyi(&rf(num, den)).unwrap()
    }

    fn psi8() -> BelyiMap {
        let num = ints(&[-5, 4]).pow(3).scale(&q().from_int(64));
        let den = ints(&[-10, 0, 1]).pow(4);
        verify_belyi(&rf(num, den)).unwrap()
    }

    #[test]
    fn degree_nine_correspondence() {
        let c = q_correspond(&psi9()).unwrap();
        assert_eq!(c.d(), &ints(&[-900, 180, 6, 1]));
        assert!(c.unit().is_one());
        assert!(c.infinity_branched());
        assert_eq!(c.effective_degree(), 4);
        assert_eq!(c.genus1_passport(), &"[3^3 / 3^3 / 5 2^2]".parse().unwrap());
        // published prefactor of the square root
        let v = rf(ints(&[315, -9, -3, 1]), ints(&[-5, 3]).pow(2).scale(&q().from_int(108)));
        assert_eq!(c.phi1().v(), &v);
        assert!(c.identity_holds());
        assert_eq!(
            crate::curve::j_invariant(c.d()).unwrap(),
            q().from_rat(rat(8429568, 15625))
        );
    }

    #[test]
    fn degree_eight_correspondence() {
        let c = q_correspond(&psi8()).unwrap();
        assert_eq!(c.d(), &ints(&[500, -200, -40, 4, 1]));
        assert!(!c.infinity_branched());
        assert_eq!(c.genus1_passport(), &"[5 3 / 5 3 / 2^4]".parse().unwrap());
        let v = rf(ints(&[6, -2, 1]), ints(&[-10, 0, 1]).pow(2).scale(&q().from_int(2)));
        assert_eq!(c.phi1().v(), &v);
        assert!(c.identity_holds());
        assert_eq!(crate::curve::j_invariant(c.d()).unwrap(), q().from_int(-5000));
    }

    #[test]
    fn even_cut_structure_stops_at_a_conic() {
        // x^2 / (x^2 - 1): both poles are simple, the branch locus is only degree 2
        let m = verify_belyi(&rf(ints(&[0, 0, 1]), ints(&[-1, 0, 1]))).unwrap();
        match q_correspond(&m) {
            Err(QcorrError::NotRegularOnCurve { d, infinity_branched, effective_degree }) => {
                assert_eq!(d, ints(&[-1, 0, 1]));
                assert!(!infinity_branched);
                assert_eq!(effective_degree, 2);
                assert_eq!(
                    CorrespondenceGenus::from_effective_degree(effective_degree),
                    Some(CorrespondenceGenus::ZeroConic)
                );
            }
            other => panic!("expected a conic obstruction, got {other:?}"),
        }
    }

    #[test]
    fn mixed_parity_cuts_are_not_regular_on_the_curve() {
        // over Q(sqrt(10)): (-25 - 7t)(8x + 3 - 3t)^3 / (125 x^4 (x^2 + 4x - 2 - 2t)^2)
        let f = Field::quadratic("t", 10);
        let el = |r: i64, s: Vec<crate::field::Rat>| -> AlgebraicNumber {
            let mut c = vec![rat_i(r)];
            c.extend(s);
            f.element(c)
        };
        let lin = UniPoly::from_coeffs(&f, vec![el(3, vec![rat_i(-3)]), f.from_int(8)]);
        let num = lin.pow(3).scale(&el(-25, vec![rat_i(-7)]));
        let quad = UniPoly::from_coeffs(
            &f,
            vec![el(-2, vec![rat_i(-2)]), f.from_int(4), f.one()],
        );
        let den = (&UniPoly::x(&f).pow(4) * &quad.pow(2)).scale(&f.from_int(125));
        let m = verify_belyi(&RationalFunction::new(num, den).unwrap()).unwrap();
        assert_eq!(m.passport(), &"[5 3 / 2^3 1^2 / 4 2^2]".parse().unwrap());

        match q_correspond(&m) {
            Err(QcorrError::NotRegularOnCurve { d, effective_degree, .. }) => {
                // only the two simple points over 1 branch; the quadratic is exactly
                // x^2 + (2 + 6t/5) x - 1 - 4t/5
                let p2 = UniPoly::from_coeffs(
                    &f,
                    vec![el(-1, vec![rat(-4, 5)]), el(2, vec![rat(6, 5)]), f.one()],
                );
                assert_eq!(d, p2);
                assert_eq!(d.deg0(), 2);
                assert_eq!(effective_degree, 2);
            }
            other => panic!("expected an irregular square root, got {other:?}"),
        }
    }

    #[test]
    fn all_even_structure_degenerates_to_a_rational_map() {
        // -(x^2 - 1)^4 / (16 x^2 (x^2 + 1)^2)
        let num = ints(&[-1, 0, 1]).pow(4).scale(&q().from_int(-1));
        let den = (&ints(&[0, 0, 1]) * &ints(&[1, 0, 1]).pow(2)).scale(&q().from_int(16));
        let m = verify_belyi(&rf(num, den)).unwrap();
        assert_eq!(m.passport(), &"[4^2 / 2^4 / 2^4]".parse().unwrap());
        match q_correspond(&m) {
            Err(QcorrError::DegenerateRational { phi1 }) => {
                assert_eq!(phi1, rf(ints(&[1, 4, 6, 4, 1]), ints(&[0, 8, 0, 8])));
            }
            other => panic!("expected a rational degeneration, got {other:?}"),
        }
    }

    #[test]
    fn degree_twelve_all_even_map_degenerates() {
        // -4 (x^2 + 1)^3 / (x^4 (x^4 + 3x^2 + 3)^2)
        let num = ints(&[1, 0, 1]).pow(3).scale(&q().from_int(-4));
        let den = &ints(&[0, 0, 0, 0, 1]) * &ints(&[3, 0, 3, 0, 1]).pow(2);
        let m = verify_belyi(&rf(num, den)).unwrap();
        assert_eq!(m.passport(), &"[3^2 6 / 2^6 / 2^4 4]".parse().unwrap());
        match q_correspond(&m) {
            Err(QcorrError::DegenerateRational { phi1 }) => {
                let expected =
                    rf(ints(&[1, 0, 1]).pow(3), &ints(&[0, 0, 1]) * &ints(&[3, 0, 3, 0, 1]));
                assert_eq!(phi1, expected);
                let other = RationalFunction::one(&q()).sub(&phi1).unwrap();
                assert_eq!(other, rf(ints(&[-1]), &ints(&[0, 0, 1]) * &ints(&[3, 0, 3, 0, 1])));
            }
            other => panic!("expected a rational degeneration, got {other:?}"),
        }
    }

    #[test]
    fn quadratic_field_correspondence_keeps_an_unfolded_unit() {
        // over Q(sqrt(7)): -(9x - 4r - 29)^3 (x - 2r - 4)^4 / ((4r + 29)(7x - 10r - 32)^4)
        let f = Field::quadratic("r", 7);
        let el = |a: i64, b: i64| f.element(vec![rat_i(a), rat_i(b)]);
        let cubic_lin = UniPoly::from_coeffs(&f, vec![el(-29, -4), f.from_int(9)]);
        let quartic_lin = UniPoly::from_coeffs(&f, vec![el(-4, -2), f.one()]);
        let num = (&cubic_lin.pow(3) * &quartic_lin.pow(4)).scale(&f.from_int(-1));
        let den_lin = UniPoly::from_coeffs(&f, vec![el(-32, -10), f.from_int(7)]);
        let den = den_lin.pow(4).scale(&el(29, 4));
        let m = verify_belyi(&RationalFunction::new(num, den).unwrap()).unwrap();
        assert_eq!(m.passport(), &"[4 3 / 2^2 1^3 / 4 3]".parse().unwrap());

        let c = q_correspond(&m).unwrap();
        // published curve y^2 = x (x^2 - (4r + 7) x + 16r + 35), up to a square unit
        let d = UniPoly::from_coeffs(&f, vec![f.zero(), el(35, 16), el(-7, -4), f.one()]);
        assert_eq!(c.d(), &d);
        assert!(c.infinity_branched());
        assert!(!c.unit().is_one());
        assert_eq!(c.genus1_passport(), &"[4 3 / 4 3 / 3 2^2]".parse().unwrap());
        assert!(c.identity_holds());
    }
}
