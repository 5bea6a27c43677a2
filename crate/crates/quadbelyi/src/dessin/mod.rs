//! Dessins d'enfants as transitive permutation pairs, with canonical forms,
//! enumeration up to isomorphism, symmetry detection, double-cover lifts and
//! quotients by an anti-symmetry.
//!
//! A dessin of degree `n` is a pair `(sigma0, sigma1)` of permutations of the edge
//! set `{0, .., n-1}`: `sigma0` rotates edges counterclockwise around black vertices
//! (the fiber over 0), `sigma1` around white vertices (the fiber over 1). Faces are
//! the cycles of `sigmaInf = (sigma0 sigma1)^-1`. Permutations are 0-indexed in
//! memory; the text format is 1-indexed.

mod enumerate;
mod lift;
mod symmetry;

pub use enumerate::{enumerate_dessins, enumerate_dessins_brute, enumerate_dessins_with, EnumOptions, FixedFiber};
pub use lift::{lift_double_cover, lift_double_cover_gauged, LiftMode, LiftResult};
pub use symmetry::{classify_symmetries, pair_automorphisms, quotient_by_antisymmetry, InvolutionReport, SymmetryClass, SymmetryReport};

use crate::passport::{Partition, Passport};
use crate::perm::{is_transitive, Perm};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum DessinError {
    #[error("sigma0 and sigma1 act on different numbers of edges")]
    SizeMismatch,
    #[error("the pair does not act transitively (dessin is disconnected)")]
    NotTransitive,
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("dessin file: {0}")]
    Format(String),
    #[error("enumeration degree {degree} exceeds the configured bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("expected a genus {expected} dessin, got genus {found}")]
    WrongGenus { expected: usize, found: usize },
    #[error("branch set has {found} points, need exactly 4")]
    BranchCountError { found: usize },
    #[error("white vertex of valency {valency}: the double cover does not contract to a dessin")]
    WhiteValency { valency: usize },
    #[error("contracted double cover is not bipartite")]
    ParityObstruction,
    #[error("sign system is inconsistent")]
    SingularSystem,
    #[error("branch face index {0} out of range")]
    BadFaceIndex(usize),
    #[error("invalid anti-symmetry: {0}")]
    InvalidSymmetry(String),
}

/// A connected bipartite map on an oriented surface, encoded by edge permutations.
#[derive(Clone, PartialEq, Eq)]
pub struct Dessin {
    sigma0: Perm,
    sigma1: Perm,
}

impl Dessin {
    pub fn new(sigma0: Perm, sigma1: Perm) -> Result<Self, DessinError> {
        if sigma0.degree() != sigma1.degree() {
            return Err(DessinError::SizeMismatch);
        }
        if !is_transitive(&[&sigma0, &sigma1], sigma0.degree()) {
            return Err(DessinError::NotTransitive);
        }
        Ok(Dessin { sigma0, sigma1 })
    }

    /// Number of edges.
    pub fn degree(&self) -> usize {
        self.sigma0.degree()
    }

    pub fn sigma0(&self) -> &Perm {
        &self.sigma0
    }

    pub fn sigma1(&self) -> &Perm {
        &self.sigma1
    }

    /// `(sigma0 sigma1)^-1`, whose cycles are the faces.
    pub fn sigma_inf(&self) -> Perm {
        self.sigma0.compose(&self.sigma1).inverse()
    }

    /// Black vertices as edge cycles, ordered by smallest edge.
    pub fn blacks(&self) -> Vec<Vec<usize>> {
        self.sigma0.cycles()
    }

    /// White vertices as edge cycles, ordered by smallest edge.
    pub fn whites(&self) -> Vec<Vec<usize>> {
        self.sigma1.cycles()
    }

    /// Faces as edge cycles of `sigmaInf`, ordered by smallest edge.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.sigma_inf().cycles()
    }

    /// Cycle types over 0, 1 and infinity.
    pub fn passport(&self) -> Passport {
        let p = Passport::new(
            Partition::new(self.sigma0.cycle_type()),
            Partition::new(self.sigma1.cycle_type()),
            Partition::new(self.sigma_inf().cycle_type()),
        );
        p.expect("fibers of one dessin always have equal degree")
    }

    /// Genus from the Euler count; always a non-negative integer for a valid dessin.
    pub fn genus(&self) -> usize {
        let n = self.degree() as i64;
        let c = (self.blacks().len() + self.whites().len() + self.faces().len()) as i64;
        let chi = c - n;
        debug_assert!((n + c) % 2 == 0 && chi <= 2, "invalid Euler count");
        ((2 - chi) / 2) as usize
    }

    /// Canonical relabeling invariant: minimum over base edges of the breadth-first
    /// relabeled image tables of `(sigma0, sigma1)`. Equal iff isomorphic.
    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.degree();
        assert!(n <= u16::MAX as usize, "degree too large for canonical form");
        let mut best: Option<Vec<u16>> = None;
        let mut new_of = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        for base in 0..n {
            new_of.iter_mut().for_each(|x| *x = usize::MAX);
            order.clear();
            new_of[base] = 0;
            order.push(base);
            let mut head = 0;
            while head < order.len() {
                let e = order[head];
                head += 1;
                for nb in [self.sigma0.apply(e), self.sigma1.apply(e)] {
                    if new_of[nb] == usize::MAX {
                        new_of[nb] = order.len();
                        order.push(nb);
                    }
                }
            }
            debug_assert_eq!(order.len(), n, "BFS must reach every edge");
            let mut cand = Vec::with_capacity(2 * n);
            for &e in &order {
                cand.push(new_of[self.sigma0.apply(e)] as u16);
            }
            for &e in &order {
                cand.push(new_of[self.sigma1.apply(e)] as u16);
            }
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        CanonicalForm(best.unwrap_or_default())
    }

    /// Isomorphism test via canonical forms (simultaneous conjugacy).
    pub fn is_isomorphic(&self, other: &Dessin) -> bool {
        self.degree() == other.degree() && self.canonical_form() == other.canonical_form()
    }

    /// The relabeled copy realizing the canonical form.
    pub fn canonicalize(&self) -> Dessin {
        let form = self.canonical_form();
        form.to_dessin().expect("canonical form of a valid dessin is valid")
    }

    /// Relabel edges by `g`: conjugates both permutations.
    pub fn relabel(&self, g: &Perm) -> Dessin {
        Dessin {
            sigma0: self.sigma0.conjugate_by(g),
            sigma1: self.sigma1.conjugate_by(g),
        }
    }

    /// Serialize to the dessin text format (JSON object, 1-indexed images).
    pub fn to_file_string(&self, label: Option<&str>) -> String {
        let file = DessinFile {
            degree: self.degree(),
            sigma0: self.sigma0.images().iter().map(|&x| x + 1).collect(),
            sigma1: self.sigma1.images().iter().map(|&x| x + 1).collect(),
            label: label.map(str::to_string),
        };
        serde_json::to_string(&file).expect("dessin serialization cannot fail")
    }

    /// Parse the dessin text format. Returns the dessin and its optional label.
    pub fn from_file_string(text: &str) -> Result<(Dessin, Option<String>), DessinError> {
        let file: DessinFile =
            serde_json::from_str(text).map_err(|e| DessinError::Format(e.to_string()))?;
        let n = file.degree;
        let to_perm = |name: &str, v: &[usize]| -> Result<Perm, DessinError> {
            if v.len() != n {
                return Err(DessinError::Format(format!(
                    "{name} has {} entries, degree is {n}",
                    v.len()
                )));
            }
            if let Some(&bad) = v.iter().find(|&&x| x < 1 || x > n) {
                return Err(DessinError::Format(format!(
                    "{name} entry {bad} out of range 1..={n}"
                )));
            }
            Perm::from_images(v.iter().map(|&x| x - 1).collect())
                .ok_or_else(|| DessinError::NotAPermutation(name.to_string()))
        };
        let sigma0 = to_perm("sigma0", &file.sigma0)?;
        let sigma1 = to_perm("sigma1", &file.sigma1)?;
        Ok((Dessin::new(sigma0, sigma1)?, file.label))
    }
}

impl std::fmt::Debug for Dessin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Dessin {{ sigma0: {:?}, sigma1: {:?}, passport: {} }}",
            self.sigma0,
            self.sigma1,
            self.passport()
        )
    }
}

#[derive(Serialize, Deserialize)]
struct DessinFile {
    degree: usize,
    sigma0: Vec<usize>,
    sigma1: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// Canonical byte string deciding isomorphism.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm(Vec<u16>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|x| x.to_be_bytes()).collect()
    }

    /// Rebuild the dessin the form encodes.
    pub fn to_dessin(&self) -> Result<Dessin, DessinError> {
        let n = self.0.len() / 2;
        let img = |half: &[u16]| -> Result<Perm, DessinError> {
            Perm::from_images(half.iter().map(|&x| x as usize).collect())
                .ok_or_else(|| DessinError::NotAPermutation("canonical form".into()))
        };
        Dessin::new(img(&self.0[..n])?, img(&self.0[n..])?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn dessin(n: usize, c0: &[Vec<usize>], c1: &[Vec<usize>]) -> Dessin {
        Dessin::new(
            Perm::from_cycles(n, c0).unwrap(),
            Perm::from_cycles(n, c1).unwrap(),
        )
        .unwrap()
    }

    /// A genus-0 dessin with passport [3^3 / 2^3 1^3 / 5 4]:
    /// sigma0 = (0 1 2)(3 4 5)(6 7 8), sigma1 = (2 3)(5 6)(8 1).
    pub(crate) fn deg9_genus0() -> Dessin {
        dessin(
            9,
            &[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]],
            &[vec![2, 3], vec![5, 6], vec![8, 1]],
        )
    }

    #[test]
    fn single_edge_dessin() {
        let d = dessin(1, &[], &[]);
        assert_eq!(d.passport().to_string(), "[1 / 1 / 1]");
        assert_eq!(d.genus(), 0);
    }

    #[test]
    fn deg9_passport_and_genus() {
        let d = deg9_genus0();
        assert_eq!(d.passport().to_string(), "[3^3 / 2^3 1^3 / 5 4]");
        assert_eq!(d.genus(), 0);
    }

    #[test]
    fn torus_passport_genus1() {
        // sigma0 = (0 1 2 3), sigma1 = (0 2 1 3): single black, single white
        let d = dessin(4, &[vec![0, 1, 2, 3]], &[vec![0, 2, 1, 3]]);
        assert_eq!(d.genus(), 1);
    }

    #[test]
    fn canonical_form_invariant_under_relabeling() {
        let d = deg9_genus0();
        let g = Perm::from_images(vec![4, 7, 0, 2, 8, 6, 1, 3, 5]).unwrap();
        let r = d.relabel(&g);
        assert_eq!(d.canonical_form(), r.canonical_form());
        assert!(d.is_isomorphic(&r));
        assert_eq!(d.passport(), r.passport());
    }

    #[test]
    fn canonicalize_is_stable() {
        let d = deg9_genus0();
        let c = d.canonicalize();
        assert_eq!(c.canonical_form(), d.canonical_form());
        assert_eq!(c.canonicalize(), c);
    }

    #[test]
    fn file_roundtrip_matches_spec_example() {
        let text = r#"{"degree":3,"sigma0":[2,3,1],"sigma1":[1,2,3],"label":"star"}"#;
        let (d, label) = Dessin::from_file_string(text).unwrap();
        assert_eq!(label.as_deref(), Some("star"));
        assert_eq!(d.sigma0().images(), &[1, 2, 0]);
        assert!(d.sigma1().is_identity());
        assert_eq!(d.to_file_string(label.as_deref()), text);
    }

    #[test]
    fn file_rejects_bad_data() {
        assert!(Dessin::from_file_string(r#"{"degree":3,"sigma0":[2,3],"sigma1":[1,2,3]}"#).is_err());
        assert!(Dessin::from_file_string(r#"{"degree":3,"sigma0":[2,3,4],"sigma1":[1,2,3]}"#).is_err());
        assert!(Dessin::from_file_string(r#"{"degree":3,"sigma0":[2,2,1],"sigma1":[1,2,3]}"#).is_err());
        // disconnected
        assert!(matches!(
            Dessin::from_file_string(r#"{"degree":2,"sigma0":[1,2],"sigma1":[1,2]}"#),
            Err(DessinError::NotTransitive)
        ));
    }
}
