//! Involutions of a dessin and the quotient construction they induce.
//!
//! A color-swap involution `pi` conjugates `sigma0` to `sigma1` and back; a
//! color-preserving one commutes with both. Either kind is determined by the image
//! of edge 0, so the search propagates each candidate image along the edge orbit.
//! On a genus 1 surface an involution realizing a half-turn fixes exactly 4 points;
//! the combinatorial count of fixed structures detects which involutions qualify.

use super::{Dessin, DessinError};
use crate::perm::Perm;

#[derive(Clone, Debug)]
pub struct InvolutionReport {
    pub perm: Perm,
    pub fixed_edges: usize,
    /// Black (resp. white) vertices mapped to themselves. Always 0 for a color
    /// swap, which sends every black vertex to a white one.
    pub invariant_blacks: usize,
    pub invariant_whites: usize,
    pub invariant_faces: usize,
    /// Fixed points of a geometric realization: edge midpoints plus face centers
    /// for a color swap; vertices plus face centers for a color-preserving map.
    pub fixed_structures: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryClass {
    AntiSymmetric,
    CentrallySymmetric,
    Both,
    Neither,
}

#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub color_swap_involutions: Vec<InvolutionReport>,
    pub color_preserving_involutions: Vec<InvolutionReport>,
    pub classification: SymmetryClass,
}

/// Build the unique `g` with `g(0) = img0`, `g a0 = b0 g` and `g a1 = b1 g`,
/// if one exists.
fn propagate(a0: &[usize], a1: &[usize], b0: &[usize], b1: &[usize], img0: usize) -> Option<Perm> {
    let n = a0.len();
    let mut g = vec![usize::MAX; n];
    let mut hit = vec![false; n];
    let mut stack = vec![0usize];
    g[0] = img0;
    hit[img0] = true;
    while let Some(x) = stack.pop() {
        for (a, b) in [(a0, b0), (a1, b1)] {
            let (y, want) = (a[x], b[g[x]]);
            if g[y] == usize::MAX {
                if hit[want] {
                    return None;
                }
                g[y] = want;
                hit[want] = true;
                stack.push(y);
            } else if g[y] != want {
                return None;
            }
        }
    }
    debug_assert!(g.iter().all(|&x| x != usize::MAX), "edge action is transitive");
    Perm::from_images(g)
}

/// All permutations commuting with both rotations (the automorphism group of the
/// dessin). Acts freely on edges when nontrivial; includes the identity.
pub fn pair_automorphisms(d: &Dessin) -> Vec<Perm> {
    let s0 = d.sigma0().images();
    let s1 = d.sigma1().images();
    (0..d.degree()).filter_map(|i| propagate(s0, s1, s0, s1, i)).collect()
}

pub fn classify_symmetries(d: &Dessin) -> SymmetryReport {
    let n = d.degree();
    let s0 = d.sigma0().images();
    let s1 = d.sigma1().images();
    let faces = d.faces();
    let mut face_of = vec![0usize; n];
    for (i, f) in faces.iter().enumerate() {
        for &e in f {
            face_of[e] = i;
        }
    }
    let s1inv = d.sigma1().inverse();

    let mut color_swap_involutions = Vec::new();
    let mut color_preserving_involutions = Vec::new();
    for img0 in 0..n {
        if let Some(p) = propagate(s0, s1, s1, s0, img0) {
            if p.is_involution() {
                // faces map through sigma1^-1 . pi; a face is invariant iff its
                // image face index is unchanged
                let fixed_edges = (0..n).filter(|&e| p.apply(e) == e).count();
                let invariant_faces = faces
                    .iter()
                    .enumerate()
                    .filter(|(i, f)| face_of[s1inv.apply(p.apply(f[0]))] == *i)
                    .count();
                color_swap_involutions.push(InvolutionReport {
                    perm: p,
                    fixed_edges,
                    invariant_blacks: 0,
                    invariant_whites: 0,
                    invariant_faces,
                    fixed_structures: fixed_edges + invariant_faces,
                });
            }
        }
        if let Some(p) = propagate(s0, s1, s0, s1, img0) {
            if p.is_involution() {
                let fixed_edges = (0..n).filter(|&e| p.apply(e) == e).count();
                let count_invariant = |cycles: &[Vec<usize>], of: &dyn Fn(usize) -> usize| {
                    cycles.iter().enumerate().filter(|(i, c)| of(p.apply(c[0])) == *i).count()
                };
                let blacks = d.blacks();
                let whites = d.whites();
                let mut black_of = vec![0usize; n];
                for (i, b) in blacks.iter().enumerate() {
                    for &e in b {
                        black_of[e] = i;
                    }
                }
                let mut white_of = vec![0usize; n];
                for (i, w) in whites.iter().enumerate() {
                    for &e in w {
                        white_of[e] = i;
                    }
                }
                let invariant_blacks = count_invariant(&blacks, &|e| black_of[e]);
                let invariant_whites = count_invariant(&whites, &|e| white_of[e]);
                let invariant_faces = count_invariant(&faces, &|e| face_of[e]);
                color_preserving_involutions.push(InvolutionReport {
                    perm: p,
                    fixed_edges,
                    invariant_blacks,
                    invariant_whites,
                    invariant_faces,
                    fixed_structures: invariant_blacks + invariant_whites + invariant_faces,
                });
            }
        }
    }

    let anti = color_swap_involutions.iter().any(|r| r.fixed_structures == 4);
    // the identity fixes every cell, not 4 isolated points; only a genuine
    // half-turn counts
    let central = color_preserving_involutions
        .iter()
        .any(|r| !r.perm.is_identity() && r.fixed_structures == 4);
    let classification = match (anti, central) {
        (true, true) => SymmetryClass::Both,
        (true, false) => SymmetryClass::AntiSymmetric,
        (false, true) => SymmetryClass::CentrallySymmetric,
        (false, false) => SymmetryClass::Neither,
    };
    SymmetryReport { color_swap_involutions, color_preserving_involutions, classification }
}

/// Quotient a genus 1 dessin by a color-swap involution with 4 fixed structures.
///
/// Every edge is subdivided by a valency-2 white vertex, the original vertices are
/// all recolored black, and dart orbits under the extended involution become the
/// edges of the genus 0 quotient. Fixed edges of `pi` descend to valency-1 whites.
pub fn quotient_by_antisymmetry(d1: &Dessin, pi: &Perm) -> Result<Dessin, DessinError> {
    let n = d1.degree();
    if pi.degree() != n {
        return Err(DessinError::InvalidSymmetry(format!(
            "involution degree {} does not match dessin degree {}",
            pi.degree(),
            n
        )));
    }
    if d1.genus() != 1 {
        return Err(DessinError::WrongGenus { expected: 1, found: d1.genus() });
    }
    if !pi.is_involution() {
        return Err(DessinError::InvalidSymmetry("not an involution".into()));
    }
    if d1.sigma0().conjugate_by(pi) != *d1.sigma1() {
        return Err(DessinError::InvalidSymmetry(
            "does not swap the black and white rotations".into(),
        ));
    }
    let report = classify_symmetries(d1);
    let fixed = report
        .color_swap_involutions
        .iter()
        .find(|r| r.perm == *pi)
        .map(|r| r.fixed_structures)
        .expect("conjugation relations already checked");
    if fixed != 4 {
        return Err(DessinError::InvalidSymmetry(format!(
            "fixed-structure count is {fixed}, need 4"
        )));
    }

    // darts: 2e at the black end of edge e, 2e+1 at the white end; the involution
    // acts freely on darts, swapping ends
    let s0 = d1.sigma0().images();
    let s1 = d1.sigma1().images();
    let dart_rot = |dart: usize| -> usize {
        let (e, s) = (dart / 2, dart % 2);
        if s == 0 {
            2 * s0[e]
        } else {
            2 * s1[e] + 1
        }
    };
    let dart_pi = |dart: usize| -> usize {
        let (e, s) = (dart / 2, dart % 2);
        2 * pi.apply(e) + (1 - s)
    };

    // orbit labels: one edge of the quotient per dart pair
    let mut orbit = vec![usize::MAX; 2 * n];
    let mut count = 0;
    for dart in 0..2 * n {
        if orbit[dart] == usize::MAX {
            orbit[dart] = count;
            orbit[dart_pi(dart)] = count;
            count += 1;
        }
    }
    debug_assert_eq!(count, n);

    let mut q0 = vec![usize::MAX; n];
    let mut q1 = vec![usize::MAX; n];
    for dart in 0..2 * n {
        // rotation at subdivision midpoints swaps the two halves of an edge
        let mid = (dart ^ 1) as usize;
        q0[orbit[dart]] = orbit[dart_rot(dart)];
        q1[orbit[dart]] = orbit[mid];
    }
    let sigma0 = Perm::from_images(q0).expect("induced rotation permutes orbits");
    let sigma1 = Perm::from_images(q1).expect("induced rotation permutes orbits");
    let q = Dessin::new(sigma0, sigma1).expect("quotient of a connected dessin is connected");
    assert_eq!(q.genus(), 0, "quotient by a 4-point involution is a sphere");
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{dessin, deg9_genus0};
    use super::*;
    use crate::dessin::{enumerate_dessins, lift_double_cover, LiftMode};
    use crate::passport::Passport;

    #[test]
    fn single_edge_reports_the_identity_swap() {
        let d = dessin(1, &[], &[]);
        let rep = classify_symmetries(&d);
        assert_eq!(rep.color_swap_involutions.len(), 1);
        let r = &rep.color_swap_involutions[0];
        assert!(r.perm.is_identity());
        assert_eq!(r.fixed_structures, 2); // one edge midpoint, one face center
        assert_eq!(rep.classification, SymmetryClass::Neither);
    }

    #[test]
    fn lifted_dessin_is_anti_symmetric() {
        let lift = lift_double_cover(&deg9_genus0(), LiftMode::Strict).unwrap();
        let rep = classify_symmetries(&lift.upstairs);
        assert!(rep
            .color_swap_involutions
            .iter()
            .any(|r| r.perm == lift.deck_involution && r.fixed_structures == 4));
        assert!(matches!(
            rep.classification,
            SymmetryClass::AntiSymmetric | SymmetryClass::Both
        ));
    }

    #[test]
    fn some_genus1_dessins_have_no_anti_symmetry() {
        let p: Passport = "[3^2 5 / 3^2 5 / 2^4 3]".parse().unwrap();
        let ds = enumerate_dessins(&p).unwrap();
        assert!(!ds.is_empty());
        assert!(ds
            .iter()
            .any(|d| classify_symmetries(d).color_swap_involutions.is_empty()));
    }

    #[test]
    fn quotient_inverts_the_lift() {
        let d0 = deg9_genus0();
        let lift = lift_double_cover(&d0, LiftMode::Strict).unwrap();
        let q = quotient_by_antisymmetry(&lift.upstairs, &lift.deck_involution).unwrap();
        assert!(q.is_isomorphic(&d0));
        assert_eq!(q.passport().to_string(), "[3^3 / 2^3 1^3 / 5 4]");
    }

    #[test]
    fn quotient_round_trip_across_a_passport() {
        let p: Passport = "[3^2 4 / 2^4 1^2 / 3^2 4]".parse().unwrap();
        for d0 in enumerate_dessins(&p).unwrap() {
            let lift = lift_double_cover(&d0, LiftMode::Strict).unwrap();
            let q = quotient_by_antisymmetry(&lift.upstairs, &lift.deck_involution).unwrap();
            assert!(q.is_isomorphic(&d0));
        }
    }

    #[test]
    fn quotient_validates_its_involution() {
        let d0 = deg9_genus0();
        let lift = lift_double_cover(&d0, LiftMode::Strict).unwrap();
        let n = lift.upstairs.degree();
        match quotient_by_antisymmetry(&lift.upstairs, &Perm::identity(n)) {
            Err(DessinError::InvalidSymmetry(_)) => {}
            other => panic!("expected invalid symmetry, got {other:?}"),
        }
        match quotient_by_antisymmetry(&d0, &Perm::identity(d0.degree())) {
            Err(DessinError::WrongGenus { expected: 1, found: 0 }) => {}
            other => panic!("expected genus error, got {other:?}"),
        }
    }

    #[test]
    fn automorphisms_act_freely() {
        let p: Passport = "[3^2 4 / 2^4 1^2 / 3^2 4]".parse().unwrap();
        for d in enumerate_dessins(&p).unwrap() {
            for g in pair_automorphisms(&d) {
                if !g.is_identity() {
                    assert!((0..d.degree()).all(|e| g.apply(e) != e));
                }
            }
        }
    }
}
