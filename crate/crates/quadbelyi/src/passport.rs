//! Ramification passports `[over 0 / over 1 / over infinity]`, genus arithmetic, and
//! the correspondent-passport calculus.
//!
//! A genus-one passport of the anti-symmetric shape `[A / A / B^2 C]` corresponds to
//! genus-zero candidates `[A / 2^l 1^k / B~ C]` where `B~` doubles every part of `B`,
//! `|C| = 4 - k`, and `2l + k = n`. In strict mode all parts of `C` are odd (the four
//! odd branch points of the double cover); degenerate mode additionally admits
//! `k = 0` with `C = 2^4` exactly, where the correspondence factors through a degree-2
//! rational map instead of a genus-one curve.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, thiserror::Error)]
pub enum PassportError {
    #[error("fibers have unequal degrees: {0:?}")]
    UnequalDegrees(Vec<usize>),
    #[error("Euler characteristic is odd: genus is not an integer")]
    NonIntegerGenus,
    #[error("negative genus: no covering has this passport")]
    NegativeGenus,
    #[error("expected a genus-{expected} passport, found genus {found}")]
    WrongGenus { expected: usize, found: usize },
    #[error("inconsistent decomposition: {0}")]
    InconsistentDecomposition(String),
    #[error("passport parse error: {0}")]
    Parse(String),
}

/// An integer partition, parts descending, all parts >= 1. May be empty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        assert!(parts.iter().all(|&p| p >= 1), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplicity of each distinct part, descending by part.
    pub fn counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Every part doubled.
    pub fn doubled(&self) -> Partition {
        Partition::new(self.0.iter().map(|&p| 2 * p).collect())
    }

    /// Multiset union.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::new(parts)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl fmt::Display for Partition {
    /// Grouped descending: `2^4 1^3`, single parts without exponent.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts = self.counts();
        let mut first = true;
        for (&part, &count) in counts.iter().rev() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if count == 1 {
                write!(f, "{part}")?;
            } else {
                write!(f, "{part}^{count}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Partition {
    type Err = PassportError;

    /// Accepts `4 3 3`, `4 3^2`, or mixed; order free.
    fn from_str(s: &str) -> Result<Self, PassportError> {
        let mut parts = Vec::new();
        for tok in s.split_whitespace() {
            let (base, count) = match tok.split_once('^') {
                Some((b, c)) => {
                    let count: usize = c
                        .parse()
                        .map_err(|_| PassportError::Parse(format!("bad exponent in '{tok}'")))?;
                    (b, count)
                }
                None => (tok, 1),
            };
            let base: usize = base
                .parse()
                .map_err(|_| PassportError::Parse(format!("bad part '{tok}'")))?;
            if base == 0 || count == 0 {
                return Err(PassportError::Parse(format!("zero part in '{tok}'")));
            }
            parts.extend(std::iter::repeat(base).take(count));
        }
        Ok(Partition::new(parts))
    }
}

/// The three ramification partitions of a Belyi map, over 0, 1 and infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Passport {
    over0: Partition,
    over1: Partition,
    overinf: Partition,
}

impl Passport {
    pub fn new(over0: Partition, over1: Partition, overinf: Partition) -> Result<Self, PassportError> {
        let sums = vec![over0.sum(), over1.sum(), overinf.sum()];
        if sums[0] != sums[1] || sums[1] != sums[2] {
            return Err(PassportError::UnequalDegrees(sums));
        }
        Ok(Passport { over0, over1, overinf })
    }

    pub fn over0(&self) -> &Partition {
        &self.over0
    }

    pub fn over1(&self) -> &Partition {
        &self.over1
    }

    pub fn overinf(&self) -> &Partition {
        &self.overinf
    }

    pub fn fiber(&self, i: usize) -> &Partition {
        match i {
            0 => &self.over0,
            1 => &self.over1,
            2 => &self.overinf,
            _ => panic!("fiber index out of range"),
        }
    }

    pub fn degree(&self) -> usize {
        self.over0.sum()
    }

    /// Genus from the Euler formula `2 - 2g = c0 + c1 + cinf - n`.
    pub fn genus(&self) -> Result<usize, PassportError> {
        let n = self.degree() as i64;
        let c = (self.over0.len() + self.over1.len() + self.overinf.len()) as i64;
        let chi = c - n; // = 2 - 2g
        if (n + c) % 2 != 0 {
            return Err(PassportError::NonIntegerGenus);
        }
        if chi > 2 {
            return Err(PassportError::NegativeGenus);
        }
        Ok(((2 - chi) / 2) as usize)
    }

    fn expect_genus(&self, expected: usize) -> Result<(), PassportError> {
        let found = self.genus()?;
        if found != expected {
            return Err(PassportError::WrongGenus { expected, found });
        }
        Ok(())
    }
}

impl fmt::Display for Passport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} / {} / {}]", self.over0, self.over1, self.overinf)
    }
}

impl fmt::Debug for Passport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Passport {
    type Err = PassportError;

    fn from_str(s: &str) -> Result<Self, PassportError> {
        let inner = s.trim();
        let inner = inner.strip_prefix('[').unwrap_or(inner);
        let inner = inner.strip_suffix(']').unwrap_or(inner);
        let fibers: Vec<&str> = inner.split('/').collect();
        if fibers.len() != 3 {
            return Err(PassportError::Parse(format!(
                "expected three fibers separated by '/', found {}",
                fibers.len()
            )));
        }
        Passport::new(fibers[0].parse()?, fibers[1].parse()?, fibers[2].parse()?)
    }
}

/// One way of matching a genus-one passport `[A / A / B^2 C]` with a genus-zero
/// passport `[A / 2^l 1^k / B~ C]` under the quadratic correspondence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceShape {
    pub genus1: Passport,
    pub genus0: Passport,
    /// Parts appearing twice over infinity upstairs (even poles downstairs, halved).
    pub b: Partition,
    /// Parts appearing once over infinity upstairs (the demanded branch poles).
    pub c: Partition,
    /// Simple points over 1 downstairs (demanded branch points of the cover).
    pub k: usize,
    /// Double points over 1 downstairs.
    pub ell: usize,
    /// True for the `k = 0`, `C = 2^4` splitting where the correspondence
    /// degenerates to a rational map.
    pub degenerate: bool,
}

/// All correspondent genus-zero passports of a genus-one passport.
///
/// Strict splittings (all parts of `C` odd) are always produced; with
/// `include_degenerate` the `k = 0`, `C = 2^4` splitting is added. Returns an empty
/// list when the passport does not have the `[A / A / B^2 C]` shape. Deterministic
/// order: strict before degenerate, then ascending `k`, then display order.
pub fn correspondent_passports(
    p1: &Passport,
    include_degenerate: bool,
) -> Result<Vec<CorrespondenceShape>, PassportError> {
    p1.expect_genus(1)?;
    if p1.over0 != p1.over1 {
        return Ok(Vec::new());
    }
    let n = p1.degree();
    let mut out = Vec::new();
    for (c_part, rest) in sub_multisets_up_to(&p1.overinf, 4) {
        let k = 4 - c_part.len();
        if n < k || (n - k) % 2 != 0 {
            continue;
        }
        let ell = (n - k) / 2;
        let b = match rest.halved_multiset() {
            Some(b) => b,
            None => continue,
        };
        let strict = c_part.iter().all(|p| p % 2 == 1);
        let degenerate_split = k == 0 && c_part.parts() == [2, 2, 2, 2];
        if !strict && !(include_degenerate && degenerate_split) {
            continue;
        }
        let over1 = Partition::new(
            std::iter::repeat(2)
                .take(ell)
                .chain(std::iter::repeat(1).take(k))
                .collect(),
        );
        let genus0 = Passport::new(
            p1.over0.clone(),
            over1,
            b.doubled().union(&c_part),
        )?;
        debug_assert_eq!(genus0.genus().ok(), Some(0));
        out.push(CorrespondenceShape {
            genus1: p1.clone(),
            genus0,
            b,
            c: c_part,
            k,
            ell,
            degenerate: !strict,
        });
    }
    out.sort_by(|x, y| {
        (x.degenerate, x.k, format!("{}", x.genus0))
            .cmp(&(y.degenerate, y.k, format!("{}", y.genus0)))
    });
    Ok(out)
}

/// The genus-one passport predicted for a genus-zero passport of the shape
/// `[A / 2^l 1^k / B~ C]` under the quadratic correspondence.
pub fn predict_genus1_passport(p0: &Passport) -> Result<CorrespondenceShape, PassportError> {
    p0.expect_genus(0)?;
    let n = p0.degree();
    let counts1 = p0.over1.counts();
    if counts1.keys().any(|&p| p > 2) {
        return Err(PassportError::InconsistentDecomposition(
            "fiber over 1 must consist of parts 1 and 2 only".into(),
        ));
    }
    let k = counts1.get(&1).copied().unwrap_or(0);
    let ell = counts1.get(&2).copied().unwrap_or(0);
    debug_assert_eq!(2 * ell + k, n);
    let odd: Vec<usize> = p0.overinf.iter().filter(|p| p % 2 == 1).collect();
    let even: Vec<usize> = p0.overinf.iter().filter(|p| p % 2 == 0).collect();
    let (b, c, degenerate) = if odd.len() == 4usize.saturating_sub(k) && odd.len() + k == 4 {
        // strict: C = odd poles, B = even poles halved
        let b = Partition::new(even.iter().map(|&p| p / 2).collect());
        (b, Partition::new(odd), false)
    } else if k == 0 && odd.is_empty() {
        // degenerate: C = 2^4 must be available
        let twos = p0.overinf.iter().filter(|&p| p == 2).count();
        if twos < 4 {
            return Err(PassportError::InconsistentDecomposition(format!(
                "k = 0 needs four odd poles or four poles of order 2, found {}",
                Partition::new(odd)
            )));
        }
        let mut rest: Vec<usize> = p0.overinf.iter().collect();
        for _ in 0..4 {
            let pos = rest.iter().position(|&p| p == 2).unwrap();
            rest.remove(pos);
        }
        let b = Partition::new(rest.iter().map(|&p| p / 2).collect());
        (b, Partition::new(vec![2, 2, 2, 2]), true)
    } else {
        return Err(PassportError::InconsistentDecomposition(format!(
            "expected {} odd poles for k = {k}, found {}",
            4usize.saturating_sub(k),
            odd.len()
        )));
    };
    let overinf1 = b.union(&b).union(&c);
    let genus1 = Passport::new(p0.over0.clone(), p0.over0.clone(), overinf1)?;
    genus1.expect_genus(1).map_err(|_| {
        PassportError::InconsistentDecomposition("predicted passport does not have genus 1".into())
    })?;
    Ok(CorrespondenceShape {
        genus1,
        genus0: p0.clone(),
        b,
        c,
        k,
        ell,
        degenerate,
    })
}

impl Partition {
    /// Halve as a multiset: every part's multiplicity must be even; take each part
    /// half as many times (not halving the part values).
    fn halved_multiset(&self) -> Option<Partition> {
        let counts = self.counts();
        let mut parts = Vec::new();
        for (&p, &c) in &counts {
            if c % 2 != 0 {
                return None;
            }
            parts.extend(std::iter::repeat(p).take(c / 2));
        }
        Some(Partition::new(parts))
    }
}

/// All sub-multisets of `z` with at most `max` elements, paired with the complement.
fn sub_multisets_up_to(z: &Partition, max: usize) -> Vec<(Partition, Partition)> {
    let counts: Vec<(usize, usize)> = z.counts().into_iter().collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        counts: &[(usize, usize)],
        idx: usize,
        left: usize,
        chosen: &mut Vec<usize>,
        z: &Partition,
        out: &mut Vec<(Partition, Partition)>,
    ) {
        if idx == counts.len() {
            let c = Partition::new(chosen.clone());
            let mut rest: Vec<usize> = z.parts().to_vec();
            for &x in chosen.iter() {
                let pos = rest.iter().position(|&y| y == x).unwrap();
                rest.remove(pos);
            }
            out.push((c, Partition::new(rest)));
            return;
        }
        let (value, count) = counts[idx];
        for take in 0..=count.min(left) {
            for _ in 0..take {
                chosen.push(value);
            }
            rec(counts, idx + 1, left - take, chosen, z, out);
            for _ in 0..take {
                chosen.pop();
            }
        }
    }
    rec(&counts, 0, max, &mut chosen, z, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(s: &str) -> Passport {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let p = pp("[5 3 / 2^2 1^4 / 4^2]");
        assert_eq!(p.to_string(), "[5 3 / 2^2 1^4 / 4^2]");
        let q = pp("5 3/2 2 1 1 1 1/4 4");
        assert_eq!(p, q);
        assert_eq!(pp("[3^2 4 / 2^4 1^2 / 3^2 4]").to_string(), "[4 3^2 / 2^4 1^2 / 4 3^2]");
    }

    #[test]
    fn genus_arithmetic() {
        assert_eq!(pp("[3^3 / 2^3 1^3 / 5 4]").genus().unwrap(), 0);
        assert_eq!(pp("[3^3 / 3^3 / 5 2^2]").genus().unwrap(), 1);
        assert_eq!(pp("[4^2 / 2^4 / 2^4]").genus().unwrap(), 0);
        assert_eq!(pp("[5 3 / 5 3 / 2^4]").genus().unwrap(), 1);
        assert!(matches!(
            pp("[1^2 / 1^2 / 1^2]").genus(),
            Err(PassportError::NegativeGenus)
        ));
        assert!(matches!(
            pp("[1^2 / 1^2 / 2]").genus(),
            Err(PassportError::NonIntegerGenus)
        ));
    }

    #[test]
    fn unequal_degrees_rejected() {
        assert!(matches!(
            "[3 / 2 1 / 4]".parse::<Passport>(),
            Err(PassportError::UnequalDegrees(_))
        ));
    }

    fn shapes(p: &str, degenerate: bool) -> Vec<String> {
        correspondent_passports(&pp(p), degenerate)
            .unwrap()
            .into_iter()
            .map(|s| s.genus0.to_string())
            .collect()
    }

    #[test]
    fn correspondents_of_53_2222() {
        assert_eq!(shapes("[5 3 / 5 3 / 2^4]", false), vec!["[5 3 / 2^2 1^4 / 4^2]"]);
        assert_eq!(
            shapes("[5 3 / 5 3 / 2^4]", true),
            vec!["[5 3 / 2^2 1^4 / 4^2]", "[5 3 / 2^4 / 2^4]"]
        );
    }

    #[test]
    fn correspondents_of_336_26() {
        assert_eq!(
            shapes("[3^2 6 / 3^2 6 / 2^6]", true),
            vec!["[6 3^2 / 2^4 1^4 / 4^3]", "[6 3^2 / 2^6 / 4 2^4]"]
        );
    }

    #[test]
    fn correspondents_of_543_26() {
        assert_eq!(
            shapes("[5 4 3 / 5 4 3 / 2^6]", true),
            vec!["[5 4 3 / 2^4 1^4 / 4^3]", "[5 4 3 / 2^6 / 4 2^4]"]
        );
    }

    #[test]
    fn correspondents_of_334_3322() {
        assert_eq!(
            shapes("[3^2 4 / 3^2 4 / 3^2 2^2]", true),
            vec!["[4 3^2 / 2^4 1^2 / 4 3^2]", "[4 3^2 / 2^3 1^4 / 6 4]"]
        );
    }

    #[test]
    fn no_correspondents_for_334_2224() {
        // a k = 0 split with C = {4,2,2,2} exists but is neither strict nor 2^4
        assert_eq!(shapes("[3^2 4 / 3^2 4 / 2^3 4]", false), Vec::<String>::new());
        assert_eq!(shapes("[3^2 4 / 3^2 4 / 2^3 4]", true), Vec::<String>::new());
    }

    #[test]
    fn asymmetric_passport_has_no_correspondents() {
        assert_eq!(shapes("[5 3 / 4 4 / 2^4]", true), Vec::<String>::new());
    }

    #[test]
    fn non_genus1_input_rejected() {
        assert!(matches!(
            correspondent_passports(&pp("[3^3 / 2^3 1^3 / 5 4]"), false),
            Err(PassportError::WrongGenus { expected: 1, found: 0 })
        ));
    }

    #[test]
    fn predict_inverts_correspond() {
        for (p1, degenerate) in [
            ("[5 3 / 5 3 / 2^4]", true),
            ("[3^2 6 / 3^2 6 / 2^6]", true),
            ("[5 4 3 / 5 4 3 / 2^6]", true),
            ("[3^2 4 / 3^2 4 / 3^2 2^2]", false),
            ("[3^3 / 3^3 / 5 2^2]", false),
            ("[5 3 1 / 5 3 1 / 5 3 1]", false),
        ] {
            for shape in correspondent_passports(&pp(p1), degenerate).unwrap() {
                let back = predict_genus1_passport(&shape.genus0).unwrap();
                assert_eq!(back.genus1, shape.genus1, "for {}", shape.genus0);
                assert_eq!(back.b, shape.b);
                assert_eq!(back.c, shape.c);
                assert_eq!(back.degenerate, shape.degenerate);
            }
        }
    }

    #[test]
    fn predict_rejects_bad_shapes() {
        // one odd pole where k = 1 demands three
        assert!(matches!(
            predict_genus1_passport(&pp("[3 2 / 2^2 1 / 4 1]")),
            Err(PassportError::InconsistentDecomposition(_))
        ));
        // fiber over 1 contains a 3
        assert!(matches!(
            predict_genus1_passport(&pp("[4 3 1 / 3 3 2 / 4 2 1 1]")),
            Err(PassportError::InconsistentDecomposition(_))
        ));
    }

    #[test]
    fn predict_degenerate_case() {
        let s = predict_genus1_passport(&pp("[5 3 / 2^4 / 2^4]")).unwrap();
        assert!(s.degenerate);
        assert_eq!(s.genus1, pp("[5 3 / 5 3 / 2^4]"));
        assert!(s.b.is_empty());
    }
}
