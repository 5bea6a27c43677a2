//! Permutations on `{0, .., n-1}` and conjugacy-class enumeration.
//!
//! The composition convention throughout the crate is `(a * b)(x) = a(b(x))`:
//! apply `b` first, then `a`.

use std::fmt;

/// A permutation of `{0, .., n-1}`, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<usize>,
}

impl Perm {
    /// Identity on `n` points.
    pub fn identity(n: usize) -> Self {
        Perm { img: (0..n).collect() }
    }

    /// Build from an image table; returns `None` unless it is a bijection.
    pub fn from_images(img: Vec<usize>) -> Option<Self> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &x in &img {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm { img })
    }

    /// Build from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut img: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                if x >= n || touched[x] {
                    return None;
                }
                touched[x] = true;
                img[x] = cyc[(i + 1) % cyc.len()];
            }
        }
        Some(Perm { img })
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.img[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.img
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_involution(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| self.img[x] == i)
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x] = i;
        }
        Perm { img }
    }

    /// `self * other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm { img: other.img.iter().map(|&x| self.img[x]).collect() }
    }

    /// Conjugate `g * self * g^-1`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        let mut img = vec![0; self.img.len()];
        for (x, &gx) in g.img.iter().enumerate() {
            img[gx] = g.img[self.img[x]];
        }
        Perm { img }
    }

    /// Disjoint cycles ordered by smallest element, each starting at its smallest element.
    /// Fixed points are included as length-1 cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.img.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.img[x];
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle lengths in descending order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        let mut wrote = false;
        for cyc in &cycles {
            if cyc.len() == 1 {
                continue;
            }
            wrote = true;
            write!(f, "(")?;
            for (i, x) in cyc.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Does the group generated by `perms` act transitively on `{0, .., n-1}`?
pub fn is_transitive(perms: &[&Perm], n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for p in perms {
            for y in [p.apply(x), p.inverse_image(x)] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
    }
    count == n
}

impl Perm {
    /// Preimage of `x` (linear scan avoided by the inverse table in hot paths).
    fn inverse_image(&self, x: usize) -> usize {
        self.img.iter().position(|&y| y == x).expect("bijection")
    }
}

/// Enumerate every permutation of `{0, .., n-1}` with the given cycle type.
///
/// The visitor is called once per permutation, with a reusable scratch value.
/// Cycle type is given as a multiset of lengths (any order, sum must be `n`).
pub fn for_each_in_class<F: FnMut(&Perm)>(n: usize, cycle_type: &[usize], f: &mut F) {
    assert_eq!(cycle_type.iter().sum::<usize>(), n, "cycle type must sum to degree");
    // remaining[l] = number of cycles of length l still to place
    let mut remaining = vec![0usize; n + 1];
    for &l in cycle_type {
        remaining[l] += 1;
    }
    let mut img = vec![usize::MAX; n];
    let mut used = vec![false; n];
    rec_class(&mut img, &mut used, &mut remaining, f);
}

fn rec_class<F: FnMut(&Perm)>(
    img: &mut Vec<usize>,
    used: &mut Vec<bool>,
    remaining: &mut Vec<usize>,
    f: &mut F,
) {
    let n = img.len();
    let anchor = match used.iter().position(|&u| !u) {
        Some(a) => a,
        None => {
            let p = Perm { img: img.clone() };
            f(&p);
            return;
        }
    };
    used[anchor] = true;
    for l in 1..=n {
        if remaining[l] == 0 {
            continue;
        }
        remaining[l] -= 1;
        rec_cycle(img, used, remaining, anchor, anchor, l - 1, f);
        remaining[l] += 1;
    }
    used[anchor] = false;
}

/// Extend the cycle anchored at `anchor`, currently ending at `last`, by `left` more points.
fn rec_cycle<F: FnMut(&Perm)>(
    img: &mut Vec<usize>,
    used: &mut Vec<bool>,
    remaining: &mut Vec<usize>,
    anchor: usize,
    last: usize,
    left: usize,
    f: &mut F,
) {
    if left == 0 {
        img[last] = anchor;
        rec_class(img, used, remaining, f);
        img[last] = usize::MAX;
        return;
    }
    let n = img.len();
    // cycles of equal length are anchored at increasing minima, so any unused
    // point larger than the anchor may extend the cycle
    for next in (anchor + 1)..n {
        if used[next] {
            continue;
        }
        used[next] = true;
        img[last] = next;
        rec_cycle(img, used, remaining, anchor, next, left - 1, f);
        img[last] = usize::MAX;
        used[next] = false;
    }
}

/// Enumerate all `n!` permutations of `{0, .., n-1}`.
pub fn for_each_perm<F: FnMut(&Perm)>(n: usize, f: &mut F) {
    let mut img = Vec::with_capacity(n);
    let mut used = vec![false; n];
    rec_all(n, &mut img, &mut used, f);
}

fn rec_all<F: FnMut(&Perm)>(n: usize, img: &mut Vec<usize>, used: &mut Vec<bool>, f: &mut F) {
    if img.len() == n {
        let p = Perm { img: img.clone() };
        f(&p);
        return;
    }
    for x in 0..n {
        if used[x] {
            continue;
        }
        used[x] = true;
        img.push(x);
        rec_all(n, img, used, f);
        img.pop();
        used[x] = false;
    }
}

/// Number of permutations of `{0, .., n-1}` with the given cycle type.
pub fn class_size(n: usize, cycle_type: &[usize]) -> u128 {
    let mut counts = vec![0u128; n + 1];
    for &l in cycle_type {
        counts[l] += 1;
    }
    let mut size: u128 = (1..=n as u128).product();
    for (l, &m) in counts.iter().enumerate().skip(1) {
        for _ in 0..m {
            size /= l as u128;
        }
        for k in 1..=m {
            size /= k;
        }
    }
    size
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(img: &[usize]) -> Perm {
        Perm::from_images(img.to_vec()).unwrap()
    }

    #[test]
    fn compose_applies_right_first() {
        // a = (0 1), b = (1 2); (a*b)(1) = a(2) = 2, (a*b)(2) = a(1) = 0
        let a = p(&[1, 0, 2]);
        let b = p(&[0, 2, 1]);
        let ab = a.compose(&b);
        assert_eq!(ab.images(), &[1, 2, 0]);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = p(&[3, 0, 2, 4, 1]);
        assert!(a.compose(&a.inverse()).is_identity());
        assert!(a.inverse().compose(&a).is_identity());
    }

    #[test]
    fn cycles_and_type() {
        let a = Perm::from_cycles(6, &[vec![0, 3, 1], vec![2, 5]]).unwrap();
        assert_eq!(a.cycles(), vec![vec![0, 3, 1], vec![2, 5], vec![4]]);
        assert_eq!(a.cycle_type(), vec![3, 2, 1]);
    }

    #[test]
    fn conjugate_matches_compose() {
        let a = p(&[1, 2, 0, 4, 3]);
        let g = p(&[2, 0, 3, 1, 4]);
        let lhs = a.conjugate_by(&g);
        let rhs = g.compose(&a).compose(&g.inverse());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn transitivity() {
        let a = Perm::from_cycles(4, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(4, &[vec![2, 3]]).unwrap();
        assert!(!is_transitive(&[&a, &b], 4));
        let c = Perm::from_cycles(4, &[vec![1, 2]]).unwrap();
        assert!(is_transitive(&[&a, &b, &c], 4));
    }

    #[test]
    fn class_enumeration_counts() {
        // class sizes in S_4: type [2,1,1] -> 6, [2,2] -> 3, [3,1] -> 8, [4] -> 6
        for (t, expect) in [
            (vec![2usize, 1, 1], 6usize),
            (vec![2, 2], 3),
            (vec![3, 1], 8),
            (vec![4], 6),
        ] {
            let mut seen = std::collections::HashSet::new();
            for_each_in_class(4, &t, &mut |q| {
                assert_eq!(q.cycle_type(), {
                    let mut s = t.clone();
                    s.sort_unstable_by(|a, b| b.cmp(a));
                    s
                });
                assert!(seen.insert(q.clone()), "duplicate emitted");
            });
            assert_eq!(seen.len(), expect);
            assert_eq!(class_size(4, &t) as usize, expect);
        }
    }

    #[test]
    fn all_perms_count() {
        let mut count = 0usize;
        for_each_perm(5, &mut |_| count += 1);
        assert_eq!(count, 120);
    }

    #[test]
    fn class_size_large() {
        // 4^3 in S_12: 12!/(4^3 * 3!)
        assert_eq!(class_size(12, &[4, 4, 4]), 1_247_400);
    }
}
