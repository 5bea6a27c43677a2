//! Branched double cover of a genus 0 dessin, contracted back to a genus 1 dessin.
//!
//! The cover has two sheets per edge. A sign `eps(e)` per edge records whether the
//! rotation at the white end of `e` crosses sheets; the signs solve a binary linear
//! system with one parity constraint per white vertex and per face (branched cycles
//! get odd total sign). Upstairs every white vertex must have valency 2; each is
//! contracted to a single edge and the remaining vertices are two-colored to restore
//! a bipartite structure. The deck transformation survives as a color-swapping
//! involution of the result.

use super::{Dessin, DessinError};
use crate::perm::Perm;
use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub enum LiftMode {
    /// Branch over every valency-1 white vertex and every odd face.
    Strict,
    /// Branch over every valency-1 white vertex and exactly the listed faces
    /// (indices into [`Dessin::faces`]). Exists to exhibit parity obstructions.
    ChosenBranch { faces: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct LiftResult {
    /// The contracted cover: degree equal to the input, genus 1.
    pub upstairs: Dessin,
    /// Color-swapping involution of `upstairs` induced by the sheet exchange.
    pub deck_involution: Perm,
    /// Edges of `upstairs` fixed by the deck involution (lifted valency-1 whites).
    pub branch_edges: Vec<usize>,
    /// Indices into `upstairs.faces()` of the deck-invariant faces.
    pub branch_faces: Vec<usize>,
}

pub fn lift_double_cover(d0: &Dessin, mode: LiftMode) -> Result<LiftResult, DessinError> {
    lift_double_cover_gauged(d0, mode, &[])
}

/// Like [`lift_double_cover`], but flips the sheets above the listed black vertices
/// (indices into [`Dessin::blacks`]) before building the cover. Every gauge choice
/// yields an isomorphic result: the sign solution space is a coset of exactly these
/// sheet relabelings.
pub fn lift_double_cover_gauged(
    d0: &Dessin,
    mode: LiftMode,
    gauge_blacks: &[usize],
) -> Result<LiftResult, DessinError> {
    let n = d0.degree();
    if d0.genus() != 0 {
        return Err(DessinError::WrongGenus { expected: 0, found: d0.genus() });
    }
    assert!(n <= 127, "sign system uses single-word bit masks");
    let whites = d0.whites();
    let faces = d0.faces();

    let branch_whites: Vec<usize> =
        (0..whites.len()).filter(|&i| whites[i].len() == 1).collect();
    let branch_faces_down: Vec<usize> = match &mode {
        LiftMode::Strict => (0..faces.len()).filter(|&i| faces[i].len() % 2 == 1).collect(),
        LiftMode::ChosenBranch { faces: chosen } => {
            let mut set = BTreeSet::new();
            for &i in chosen {
                if i >= faces.len() {
                    return Err(DessinError::BadFaceIndex(i));
                }
                set.insert(i);
            }
            set.into_iter().collect()
        }
    };
    let count = branch_whites.len() + branch_faces_down.len();
    if count != 4 {
        return Err(DessinError::BranchCountError { found: count });
    }

    // parity constraints: one row per white vertex and per face
    let mut rows: Vec<(u128, bool)> = Vec::with_capacity(whites.len() + faces.len());
    for (i, w) in whites.iter().enumerate() {
        let mask = w.iter().fold(0u128, |m, &e| m | 1 << e);
        rows.push((mask, branch_whites.binary_search(&i).is_ok()));
    }
    for (i, f) in faces.iter().enumerate() {
        let mask = f.iter().fold(0u128, |m, &e| m | 1 << e);
        rows.push((mask, branch_faces_down.binary_search(&i).is_ok()));
    }
    let mut eps = solve_f2(n, rows).ok_or(DessinError::SingularSystem)?;

    // apply the gauge: flip the sign of every edge with exactly one endpoint sheet relabeled
    let blacks = d0.blacks();
    let mut black_of = vec![0usize; n];
    for (i, b) in blacks.iter().enumerate() {
        for &e in b {
            black_of[e] = i;
        }
    }
    let mut flip = vec![false; blacks.len()];
    for &b in gauge_blacks {
        assert!(b < blacks.len(), "gauge black index out of range");
        flip[b] = true;
    }
    let s0 = d0.sigma0().images();
    let s1 = d0.sigma1().images();
    for e in 0..n {
        if flip[black_of[e]] != flip[black_of[s1[e]]] {
            eps ^= 1 << e;
        }
    }

    // cover on darts 2e+s (edge e, sheet s)
    let mut t0 = vec![0usize; 2 * n];
    let mut t1 = vec![0usize; 2 * n];
    for e in 0..n {
        let x = (eps >> e & 1) as usize;
        for s in 0..2 {
            t0[2 * e + s] = 2 * s0[e] + s;
            t1[2 * e + s] = 2 * s1[e] + (s ^ x);
        }
    }

    // upstairs whites must all be valency 2; each becomes one edge of the result
    let mut white_of = vec![usize::MAX; 2 * n];
    let mut white_dart = Vec::with_capacity(n);
    for d in 0..2 * n {
        if white_of[d] != usize::MAX {
            continue;
        }
        let mut len = 0;
        let mut x = d;
        let w = white_dart.len();
        while white_of[x] == usize::MAX {
            white_of[x] = w;
            x = t1[x];
            len += 1;
        }
        if len != 2 {
            return Err(DessinError::WhiteValency { valency: len });
        }
        white_dart.push(d);
    }
    debug_assert_eq!(white_dart.len(), n);

    // upstairs blacks, then a two-coloring of them through the contracted edges
    let mut ublack_of = vec![usize::MAX; 2 * n];
    let mut ublack_count = 0;
    for d in 0..2 * n {
        if ublack_of[d] != usize::MAX {
            continue;
        }
        let mut x = d;
        while ublack_of[x] == usize::MAX {
            ublack_of[x] = ublack_count;
            x = t0[x];
        }
        ublack_count += 1;
    }
    let mut color = vec![u8::MAX; ublack_count];
    let mut stack = vec![ublack_of[0]];
    color[ublack_of[0]] = 0;
    while let Some(b) = stack.pop() {
        for d in 0..2 * n {
            if ublack_of[d] != b {
                continue;
            }
            let other = ublack_of[t1[d]];
            if color[other] == u8::MAX {
                color[other] = 1 - color[b];
                stack.push(other);
            } else if color[other] == color[b] {
                return Err(DessinError::ParityObstruction);
            }
        }
    }
    assert!(color.iter().all(|&c| c != u8::MAX), "branched cover is connected");

    // rotations of contracted edges at each color class
    let base = color[ublack_of[0]];
    let mut new_s0 = vec![0usize; n];
    let mut new_s1 = vec![0usize; n];
    for d in 0..2 * n {
        let (w, w2) = (white_of[d], white_of[t0[d]]);
        if color[ublack_of[d]] == base {
            new_s0[w] = w2;
        } else {
            new_s1[w] = w2;
        }
    }
    let sigma0 = Perm::from_images(new_s0).expect("one dart per edge in each color class");
    let sigma1 = Perm::from_images(new_s1).expect("one dart per edge in each color class");
    let upstairs = Dessin::new(sigma0, sigma1).expect("cover of a connected dessin is connected");
    assert_eq!(upstairs.genus(), 1, "double cover branched at 4 points has genus 1");

    // deck transformation: swap sheets, dart 2e+s -> 2e+(1-s)
    let deck_img: Vec<usize> = (0..n).map(|w| white_of[white_dart[w] ^ 1]).collect();
    let deck_involution = Perm::from_images(deck_img).expect("sheet swap permutes edges");
    debug_assert!(deck_involution.is_involution());
    debug_assert_eq!(
        upstairs.sigma0().conjugate_by(&deck_involution),
        *upstairs.sigma1(),
        "deck swaps the two colors"
    );

    let branch_edges: Vec<usize> =
        (0..n).filter(|&w| deck_involution.apply(w) == w).collect();
    let upfaces = upstairs.faces();
    let mut face_of = vec![0usize; n];
    for (i, f) in upfaces.iter().enumerate() {
        for &e in f {
            face_of[e] = i;
        }
    }
    let s1inv = upstairs.sigma1().inverse();
    let branch_faces: Vec<usize> = (0..upfaces.len())
        .filter(|&i| face_of[s1inv.apply(deck_involution.apply(upfaces[i][0]))] == i)
        .collect();
    assert_eq!(
        branch_edges.len() + branch_faces.len(),
        4,
        "deck involution fixes exactly the four branch structures"
    );

    Ok(LiftResult { upstairs, deck_involution, branch_edges, branch_faces })
}

/// Solve the binary system: each row is (membership mask, parity). Returns any
/// particular solution, with free variables set to zero.
fn solve_f2(n: usize, mut rows: Vec<(u128, bool)>) -> Option<u128> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i].0 >> col & 1 == 1) else {
            continue;
        };
        rows.swap(r, pr);
        let (pm, pb) = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.0 >> col & 1 == 1 {
                row.0 ^= pm;
                row.1 ^= pb;
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    if rows[r..].iter().any(|&(m, b)| m == 0 && b) {
        return None;
    }
    let mut x = 0u128;
    for &(row, col) in &pivots {
        if rows[row].1 {
            x |= 1 << col;
        }
    }
    Some(x)
}
