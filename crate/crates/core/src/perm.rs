//! Permutations of the vertex set `0..n`.
//!
//! Generators of sparse graphs tend to move very few points, so a
//! permutation stores only its moved points, sorted by source vertex.
//! [`Permutation::images`] expands to the dense image array when needed.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: usize,
    // (v, image(v)) for every v with image(v) != v, ascending by v
    moved: Vec<(u32, u32)>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            n,
            moved: Vec::new(),
        }
    }

    /// Builds a permutation from its dense image array, `images[v] = α(v)`.
    pub fn from_images(images: &[u32]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut moved = Vec::new();
        for (v, &w) in images.iter().enumerate() {
            let wi = w as usize;
            if wi >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {w} of {v} out of range (n = {n})"
                )));
            }
            if std::mem::replace(&mut seen[wi], true) {
                return Err(Error::InvalidPermutation(format!("{w} is hit twice")));
            }
            if wi != v {
                moved.push((v as u32, w));
            }
        }
        Ok(Permutation { n, moved })
    }

    /// Builds a permutation from `(v, α(v))` pairs; unlisted points are fixed.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut moved: Vec<(u32, u32)> = pairs.into_iter().filter(|(v, w)| v != w).collect();
        moved.sort_unstable();
        for w in moved.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidPermutation(format!(
                    "vertex {} has two images",
                    w[0].0
                )));
            }
        }
        let mut targets: Vec<u32> = moved.iter().map(|&(_, w)| w).collect();
        targets.sort_unstable();
        let sources = moved.iter().map(|&(v, _)| v);
        // a bijection moves exactly the points it maps onto
        if !targets.iter().copied().eq(sources) {
            return Err(Error::InvalidPermutation(
                "moved points are not closed under the map".into(),
            ));
        }
        if let Some(&(v, w)) = moved
            .iter()
            .find(|&&(v, w)| v as usize >= n || w as usize >= n)
        {
            return Err(Error::InvalidPermutation(format!(
                "pair {v} -> {w} out of range (n = {n})"
            )));
        }
        Ok(Permutation { n, moved })
    }

    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (i, &v) in cycle.iter().enumerate() {
                if v as usize >= n {
                    return Err(Error::InvalidPermutation(format!(
                        "vertex {v} out of range (n = {n})"
                    )));
                }
                if std::mem::replace(&mut seen[v as usize], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "vertex {v} appears in more than one cycle position"
                    )));
                }
                pairs.push((v, cycle[(i + 1) % cycle.len()]));
            }
        }
        Permutation::from_pairs(n, pairs)
    }

    /// Parses cycle notation such as `(0 2 1)(3 4)` or `()`.
    ///
    /// Whitespace and commas both separate entries inside a cycle.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::InvalidPermutation(format!(
                    "expected '(' at {rest:?}"
                )));
            };
            let Some(close) = body.find(')') else {
                return Err(Error::InvalidPermutation("unterminated cycle".into()));
            };
            let cycle = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad vertex {t:?}")))
                })
                .collect::<Result<Vec<u32>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_cycles(n, &cycles)
    }

    /// `moved` must be sorted, free of fixed points and describe a bijection.
    pub(crate) fn from_moved_unchecked(n: usize, moved: Vec<(u32, u32)>) -> Self {
        debug_assert!(Permutation::from_pairs(n, moved.iter().copied()).is_ok());
        Permutation { n, moved }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image(&self, v: u32) -> u32 {
        match self.moved.binary_search_by_key(&v, |&(s, _)| s) {
            Ok(i) => self.moved[i].1,
            Err(_) => v,
        }
    }

    pub fn images(&self) -> Vec<u32> {
        let mut out: Vec<u32> = (0..self.n as u32).collect();
        for &(v, w) in &self.moved {
            out[v as usize] = w;
        }
        out
    }

    /// Moved points with their images, ascending by source.
    pub fn moved_pairs(&self) -> &[(u32, u32)] {
        &self.moved
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.moved.iter().map(|&(v, _)| v)
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }

    pub fn inverse(&self) -> Permutation {
        let mut moved: Vec<(u32, u32)> = self.moved.iter().map(|&(v, w)| (w, v)).collect();
        moved.sort_unstable();
        Permutation { n: self.n, moved }
    }

    /// `self ∘ inner`: first apply `inner`, then `self`.
    pub fn compose(&self, inner: &Permutation) -> Result<Permutation> {
        if self.n != inner.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: inner.n,
            });
        }
        let mut points: Vec<u32> = self.support().chain(inner.support()).collect();
        points.sort_unstable();
        points.dedup();
        let moved = points
            .into_iter()
            .map(|v| (v, self.image(inner.image(v))))
            .filter(|(v, w)| v != w)
            .collect();
        Ok(Permutation { n: self.n, moved })
    }

    /// Disjoint cycles in canonical order: each cycle starts at its smallest
    /// element, cycles ascend by that element, fixed points are omitted.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut cycles = Vec::new();
        let mut done = std::collections::HashSet::new();
        for &(start, _) in &self.moved {
            if done.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            done.insert(start);
            let mut v = self.image(start);
            while v != start {
                done.insert(v);
                cycle.push(v);
                v = self.image(v);
            }
            cycles.push(cycle);
        }
        cycles
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, v) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycle_notation_is_canonical() {
        let p = Permutation::from_images(&[2, 0, 1]).unwrap();
        assert_eq!(p.to_string(), "(0 2 1)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        let q = Permutation::from_cycles(6, &[vec![4, 3], vec![5, 1, 2]]).unwrap();
        assert_eq!(q.to_string(), "(1 2 5)(3 4)");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Permutation::parse_cycles("(0 1", 3).is_err());
        assert!(Permutation::parse_cycles("(0 1)(1 2)", 3).is_err());
        assert!(Permutation::parse_cycles("(0 3)", 3).is_err());
        assert!(Permutation::parse_cycles("0 1", 3).is_err());
        assert_eq!(
            Permutation::parse_cycles(" ( ) ", 3).unwrap(),
            Permutation::identity(3)
        );
    }

    #[test]
    fn from_images_rejects_non_bijection() {
        assert!(Permutation::from_images(&[0, 0, 1]).is_err());
        assert!(Permutation::from_images(&[0, 3, 1]).is_err());
        assert!(Permutation::from_pairs(3, [(0, 1)]).is_err());
    }

    #[test]
    fn compose_applies_inner_first() {
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let ba = b.compose(&a).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(ba.image(0), 2);
        assert_eq!(ba.image(1), 0);
        assert_eq!(ba.image(2), 1);
    }

    fn arb_perm(max_n: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_n)
            .prop_flat_map(|n| Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::from_images(&v).unwrap())
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(p in arb_perm(12)) {
            let back = Permutation::parse_cycles(&p.to_string(), p.n()).unwrap();
            prop_assert_eq!(back, p);
        }

        #[test]
        fn inverse_cancels(p in arb_perm(12)) {
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
            prop_assert_eq!(Permutation::from_images(&p.images()).unwrap(), p);
        }
    }
}
