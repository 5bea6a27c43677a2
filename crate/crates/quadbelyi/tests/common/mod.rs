//! Floating-point oracles shared by the integration tests. Everything here
//! goes through `f64`/`Complex64` arithmetic only, independently of the exact
//! routines under test.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use quadbelyi::field::{AlgebraicNumber, Field, Rat};
use quadbelyi::painleve::AlgebraicSolution;
use quadbelyi::poly::UniPoly;

pub fn rat_f64(q: &Rat) -> f64 {
    q.to_f64().expect("rational fits in f64")
}

fn horner(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// All complex roots of a polynomial with ascending coefficients, by
/// Durand-Kerner iteration.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    assert!(deg >= 1 && coeffs[deg].norm() > 0.0, "needs a nonzero leading coefficient");
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / coeffs[deg]).collect();
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..500 {
        let mut shift = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            let delta = horner(&monic, z[i]) / denom;
            z[i] -= delta;
            shift = shift.max(delta.norm());
        }
        if shift < 1e-14 {
            break;
        }
    }
    z
}

/// The complex embeddings of a field, as images of its generator. The
/// rationals get the single placeholder embedding `0`.
pub fn embeddings(field: &Field) -> Vec<Complex64> {
    match field.min_poly() {
        None => vec![Complex64::new(0.0, 0.0)],
        Some(mp) => {
            let coeffs: Vec<Complex64> =
                mp.iter().map(|q| Complex64::new(rat_f64(q), 0.0)).collect();
            complex_roots(&coeffs)
        }
    }
}

/// Value of an algebraic number under the embedding sending the generator to `g`.
pub fn embed(a: &AlgebraicNumber, g: Complex64) -> Complex64 {
    a.coeffs()
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, c| acc * g + Complex64::new(rat_f64(c), 0.0))
}

pub fn embed_poly(p: &UniPoly, g: Complex64) -> Vec<Complex64> {
    p.coeffs().iter().map(|c| embed(c, g)).collect()
}

fn cross_ratio(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    ((a - c) * (b - d)) / ((b - c) * (a - d))
}

/// j-invariant of `y^2 = d(x)` from the cross-ratio of the branch points; for
/// a cubic `d` the fourth branch point is at infinity.
pub fn j_cross_ratio(d: &UniPoly, g: Complex64) -> Complex64 {
    let coeffs = embed_poly(d, g);
    let e = complex_roots(&coeffs);
    let lambda = match e.len() {
        // fourth branch point at infinity: the cross ratio degenerates to a
        // ratio of differences
        3 => (e[0] - e[2]) / (e[1] - e[2]),
        4 => cross_ratio(e[0], e[1], e[2], e[3]),
        n => panic!("the branch locus has {n} finite points, need 3 or 4"),
    };
    let one = Complex64::new(1.0, 0.0);
    256.0 * (lambda * lambda - lambda + one).powu(3)
        / (lambda * lambda * (lambda - one).powu(2))
}

/// Painleve VI residual at `s` on the branch `w = +sqrt(R(s))`, with all
/// derivatives taken by five-point central differences of step `h`. `None`
/// when the curve is negative somewhere on the stencil.
pub fn pvi_fd_residual(sol: &AlgebraicSolution, s: f64, h: f64) -> Option<f64> {
    let qv = |x: f64| sol.q().eval_f64(x, true);
    let tv = |x: f64| sol.t().eval_f64(x, true);

    let stencil = |f: &dyn Fn(f64) -> Option<f64>| -> Option<[f64; 5]> {
        Some([f(s - 2.0 * h)?, f(s - h)?, f(s)?, f(s + h)?, f(s + 2.0 * h)?])
    };
    let d1 = |v: &[f64; 5]| (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h);
    let d2 = |v: &[f64; 5]| (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h);

    let qs = stencil(&qv)?;
    let ts = stencil(&tv)?;
    let (q, t) = (qs[2], ts[2]);
    let (qp, tp) = (d1(&qs), d1(&ts));
    let (qpp, tpp) = (d2(&qs), d2(&ts));
    if tp.abs() < 1e-12 {
        return None;
    }
    let qt = qp / tp;
    let qtt = (qpp * tp - qp * tpp) / (tp * tp * tp);

    let p = sol.params();
    let (alpha, beta) = (rat_f64(&p.alpha), rat_f64(&p.beta));
    let (gamma, delta) = (rat_f64(&p.gamma), rat_f64(&p.delta));
    let rhs = 0.5 * (1.0 / q + 1.0 / (q - 1.0) + 1.0 / (q - t)) * qt * qt
        - (1.0 / t + 1.0 / (t - 1.0) + 1.0 / (q - t)) * qt
        + q * (q - 1.0) * (q - t) / (t * t * (t - 1.0) * (t - 1.0))
            * (alpha + beta * t / (q * q)
                + gamma * (t - 1.0) / ((q - 1.0) * (q - 1.0))
                + delta * t * (t - 1.0) / ((q - t) * (q - t)));
    Some(qtt - rhs)
}
