//! Enumeration of dessins with a given passport, one per isomorphism class.
//!
//! Strategy: fix one representative of the chosen fiber's conjugacy class, enumerate
//! the full class of a partner fiber, solve the third permutation from
//! `sigma0 sigma1 sigmaInf = id`, filter by cycle type and transitivity, and dedupe
//! by canonical form. Every isomorphism class contains a triple whose fixed
//! coordinate equals the chosen representative, so the sweep is complete.

use super::{CanonicalForm, Dessin, DessinError};
use crate::passport::Passport;
use crate::perm::{class_size, for_each_in_class, for_each_perm, Perm};
use std::collections::BTreeMap;

/// Which fiber's conjugacy class is pinned to a fixed representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedFiber {
    /// Pin the smallest class (fewest candidates for the partner sweep).
    Auto,
    Over0,
    Over1,
    OverInf,
}

#[derive(Clone, Debug)]
pub struct EnumOptions {
    pub max_degree: usize,
    pub fixed: FixedFiber,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { max_degree: 14, fixed: FixedFiber::Auto }
    }
}

/// Enumerate all dessins with the passport, up to isomorphism, in canonical order.
pub fn enumerate_dessins(p: &Passport) -> Result<Vec<Dessin>, DessinError> {
    enumerate_dessins_with(p, &EnumOptions::default())
}

pub fn enumerate_dessins_with(
    p: &Passport,
    opts: &EnumOptions,
) -> Result<Vec<Dessin>, DessinError> {
    let n = p.degree();
    if n > opts.max_degree {
        return Err(DessinError::DegreeTooLarge { degree: n, bound: opts.max_degree });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let types: Vec<Vec<usize>> = (0..3).map(|i| p.fiber(i).parts().to_vec()).collect();
    let sizes: Vec<u128> = types.iter().map(|t| class_size(n, t)).collect();
    let fixed_idx = match opts.fixed {
        FixedFiber::Over0 => 0,
        FixedFiber::Over1 => 1,
        FixedFiber::OverInf => 2,
        FixedFiber::Auto => (0..3).min_by_key(|&i| (sizes[i], i)).unwrap(),
    };
    let partner_idx = (0..3)
        .filter(|&i| i != fixed_idx)
        .min_by_key(|&i| (sizes[i], i))
        .unwrap();
    let third_idx = 3 - fixed_idx - partner_idx;

    // fixed representative: consecutive cycles in declared (descending) part order
    let mut cycles = Vec::new();
    let mut next = 0;
    for &len in &types[fixed_idx] {
        cycles.push((next..next + len).collect::<Vec<_>>());
        next += len;
    }
    let rep = Perm::from_cycles(n, &cycles).expect("representative is valid");

    let mut found: BTreeMap<CanonicalForm, Dessin> = BTreeMap::new();
    let mut check = TripleChecker::new(n, &types[third_idx]);
    for_each_in_class(n, &types[partner_idx], &mut |q| {
        if let Some(d) = check.complete(fixed_idx, &rep, partner_idx, q) {
            found.entry(d.canonical_form()).or_insert_with(|| d.canonicalize());
        }
    });
    Ok(found.into_values().collect())
}

/// Reference enumerator: fixes a representative over 0 and sweeps all of `S_n` for
/// `sigma1`. Quadratically slower; used to cross-check the class-sweep enumerator.
pub fn enumerate_dessins_brute(p: &Passport) -> Result<Vec<Dessin>, DessinError> {
    let n = p.degree();
    const BOUND: usize = 10;
    if n > BOUND {
        return Err(DessinError::DegreeTooLarge { degree: n, bound: BOUND });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut cycles = Vec::new();
    let mut next = 0;
    for &len in p.over0().parts() {
        cycles.push((next..next + len).collect::<Vec<_>>());
        next += len;
    }
    let rep = Perm::from_cycles(n, &cycles).expect("representative is valid");
    let want1 = p.over1().parts().to_vec();
    let mut found: BTreeMap<CanonicalForm, Dessin> = BTreeMap::new();
    let mut check = TripleChecker::new(n, p.overinf().parts());
    for_each_perm(n, &mut |q| {
        if q.cycle_type() != want1 {
            return;
        }
        if let Some(d) = check.complete(0, &rep, 1, q) {
            found.entry(d.canonical_form()).or_insert_with(|| d.canonicalize());
        }
    });
    Ok(found.into_values().collect())
}

/// Scratch space for completing and validating a candidate triple.
struct TripleChecker {
    n: usize,
    third: Vec<usize>,
    invq: Vec<usize>,
    /// expected cycle-length counts for the third permutation
    template: Vec<i32>,
    counts: Vec<i32>,
    seen: Vec<u64>,
    stamp: u64,
    stack: Vec<usize>,
}

impl TripleChecker {
    fn new(n: usize, third_type: &[usize]) -> Self {
        let mut template = vec![0i32; n + 1];
        for &l in third_type {
            template[l] += 1;
        }
        TripleChecker {
            n,
            third: vec![0; n],
            invq: vec![0; n],
            template,
            counts: vec![0; n + 1],
            seen: vec![0; n],
            stamp: 0,
            stack: Vec::with_capacity(n),
        }
    }

    /// Fill `self.third` so that `sigma0 sigma1 sigmaInf = id`, check its cycle type
    /// and the transitivity of the pair, and build the dessin on success.
    fn complete(
        &mut self,
        fixed_idx: usize,
        fixed: &Perm,
        partner_idx: usize,
        q: &Perm,
    ) -> Option<Dessin> {
        let n = self.n;
        let f = fixed.images();
        let qi = q.images();
        match (fixed_idx, partner_idx) {
            // third = sigmaInf = (sigma0 sigma1)^-1
            (0, 1) => {
                for y in 0..n {
                    self.third[f[qi[y]]] = y;
                }
            }
            (1, 0) => {
                for y in 0..n {
                    self.third[qi[f[y]]] = y;
                }
            }
            // third = sigma1: sigma1(sigmaInf(y)) = sigma0^-1(y)
            (0, 2) => {
                for (i, &x) in f.iter().enumerate() {
                    self.invq[x] = i;
                }
                for y in 0..n {
                    self.third[qi[y]] = self.invq[y];
                }
            }
            (2, 0) => {
                for (i, &x) in qi.iter().enumerate() {
                    self.invq[x] = i;
                }
                for y in 0..n {
                    self.third[f[y]] = self.invq[y];
                }
            }
            // third = sigma0 = (sigma1 sigmaInf)^-1
            (1, 2) => {
                for y in 0..n {
                    self.third[f[qi[y]]] = y;
                }
            }
            (2, 1) => {
                for y in 0..n {
                    self.third[qi[f[y]]] = y;
                }
            }
            _ => unreachable!("fixed and partner fibers must differ"),
        }
        if !self.third_type_matches() {
            return None;
        }
        // identify sigma0 and sigma1 among (fixed, q, third)
        let pick = |idx: usize| -> Vec<usize> {
            if idx == fixed_idx {
                f.to_vec()
            } else if idx == partner_idx {
                qi.to_vec()
            } else {
                self.third.clone()
            }
        };
        let s0 = pick(0);
        let s1 = pick(1);
        if !self.transitive(&s0, &s1) {
            return None;
        }
        let sigma0 = Perm::from_images(s0).expect("constructed images are a bijection");
        let sigma1 = Perm::from_images(s1).expect("constructed images are a bijection");
        Some(Dessin::new(sigma0, sigma1).expect("transitivity checked"))
    }

    fn third_type_matches(&mut self) -> bool {
        self.counts.copy_from_slice(&self.template);
        self.stamp += 1;
        let stamp = self.stamp;
        for start in 0..self.n {
            if self.seen[start] == stamp {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while self.seen[x] != stamp {
                self.seen[x] = stamp;
                x = self.third[x];
                len += 1;
            }
            self.counts[len] -= 1;
            if self.counts[len] < 0 {
                return false;
            }
        }
        true
    }

    fn transitive(&mut self, s0: &[usize], s1: &[usize]) -> bool {
        self.stamp += 1;
        let stamp = self.stamp;
        self.stack.clear();
        self.stack.push(0);
        self.seen[0] = stamp;
        let mut reached = 1;
        while let Some(x) = self.stack.pop() {
            for y in [s0[x], s1[x]] {
                if self.seen[y] != stamp {
                    self.seen[y] = stamp;
                    self.stack.push(y);
                    reached += 1;
                }
            }
        }
        reached == self.n
    }
}
