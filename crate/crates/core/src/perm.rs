use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Permutation of the letters `1..=d`, stored in 1-based array form:
/// `images[i - 1]` is the image of letter `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(d: usize) -> Self {
        Perm((1..=d as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in &images {
            if x == 0 || x as usize > d || seen[x as usize - 1] {
                return Err(Error::schema("perm", format!("{images:?} is not a bijection of 1..={d}")));
            }
            seen[x as usize - 1] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation from disjoint cycles of 1-based letters.
    pub fn from_cycles(d: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (1..=d as u32).collect();
        for cyc in cycles {
            for (i, &x) in cyc.iter().enumerate() {
                let next = cyc[(i + 1) % cyc.len()];
                if x == 0 || x as usize > d {
                    return Err(Error::schema("perm", format!("letter {x} out of range")));
                }
                images[x as usize - 1] = next;
            }
        }
        Perm::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, letter: u32) -> u32 {
        self.0[letter as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.apply(x)).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize - 1] = i as u32 + 1;
        }
        Perm(inv)
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// True for odd permutations.
    pub fn is_odd(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        let mut transpositions = 0;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize - 1;
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 1
    }

    /// The orbit of `letter`, starting at `letter`.
    pub fn orbit(&self, letter: u32) -> Vec<u32> {
        let mut out = vec![letter];
        let mut x = self.apply(letter);
        while x != letter {
            out.push(x);
            x = self.apply(x);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        let mut seen = vec![false; self.0.len()];
        for start in 1..=self.0.len() as u32 {
            if seen[start as usize - 1] || self.apply(start) == start {
                continue;
            }
            let orbit = self.orbit(start);
            for &x in &orbit {
                seen[x as usize - 1] = true;
            }
            let body: Vec<String> = orbit.iter().map(u32::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_applies_right_first() {
        let s = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        let t = Perm::from_cycles(3, &[&[2, 3]]).unwrap();
        // (s∘t)(2) = s(3) = 3
        assert_eq!(s.compose(&t).apply(2), 3);
        assert_eq!(s.compose(&s), Perm::identity(3));
        assert_eq!(t.compose(&t.inverse()), Perm::identity(3));
    }

    #[test]
    fn parity_and_powers() {
        let c = Perm::from_cycles(4, &[&[1, 2, 3, 4]]).unwrap();
        assert!(c.is_odd());
        assert!(!c.pow(2).is_odd());
        assert_eq!(c.pow(4), Perm::identity(4));
        assert_eq!(c.pow(-1), c.inverse());
        assert_eq!(c.pow(7), c.inverse());
        assert_eq!(c.to_string(), "(1 2 3 4)");
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![1, 1]).is_err());
        assert!(Perm::from_images(vec![0, 1]).is_err());
        assert!(Perm::from_images(vec![2, 3]).is_err());
    }
}
