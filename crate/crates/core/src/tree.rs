//! Vertices, cones and complete antichains of the rooted `d`-ary tree.
//!
//! Letters are 1-based. A vertex is the address of the cone of infinite
//! words extending it; the root (empty vertex) addresses the whole boundary.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree(usize);

impl Degree {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::BadDegree(d));
        }
        Ok(Degree(d))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(Vec<u32>);

impl Vertex {
    pub fn root() -> Self {
        Vertex(Vec::new())
    }

    /// Builds a vertex after checking every letter lies in `1..=d`.
    pub fn new(d: Degree, letters: Vec<u32>) -> Result<Self> {
        let v = Vertex(letters);
        v.check(d)?;
        Ok(v)
    }

    /// Builds a vertex without range checks. Letters must be in `1..=d`
    /// for whatever degree the vertex is later used with.
    pub fn from_letters(letters: Vec<u32>) -> Self {
        Vertex(letters)
    }

    pub fn check(&self, d: Degree) -> Result<()> {
        match self.0.iter().find(|&&l| l == 0 || l as usize > d.get()) {
            Some(&letter) => Err(Error::LetterOutOfRange { letter, degree: d.get() }),
            None => Ok(()),
        }
    }

    #[inline]
    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &Vertex) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_proper_prefix_of(&self, other: &Vertex) -> bool {
        self.len() < other.len() && self.is_prefix_of(other)
    }

    pub fn comparable(&self, other: &Vertex) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn child(&self, letter: u32) -> Vertex {
        let mut v = self.0.clone();
        v.push(letter);
        Vertex(v)
    }

    pub fn concat(&self, suffix: &[u32]) -> Vertex {
        let mut v = Vec::with_capacity(self.len() + suffix.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(suffix);
        Vertex(v)
    }

    /// The part of `self` after `prefix`, if `prefix` is a prefix of `self`.
    pub fn strip_prefix(&self, prefix: &Vertex) -> Option<&[u32]> {
        self.0.strip_prefix(prefix.0.as_slice())
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.0
    }

    /// All vertices of length exactly `len`, in lexicographic order.
    pub fn all_of_length(d: Degree, len: usize) -> Vec<Vertex> {
        let mut out = vec![Vertex::root()];
        for _ in 0..len {
            out = out
                .iter()
                .flat_map(|v| (1..=d.get() as u32).map(move |l| v.child(l)))
                .collect();
        }
        out
    }
}

impl From<Vec<u32>> for Vertex {
    fn from(v: Vec<u32>) -> Self {
        Vertex(v)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

/// A complete antichain: finitely many pairwise incomparable cones covering
/// the boundary. The order of cones is significant and preserved.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Antichain {
    degree: Degree,
    cones: Vec<Vertex>,
}

impl Antichain {
    pub fn root(degree: Degree) -> Self {
        Antichain { degree, cones: vec![Vertex::root()] }
    }

    pub(crate) fn from_trusted(degree: Degree, cones: Vec<Vertex>) -> Self {
        debug_assert!(check_complete_antichain(degree, &cones).is_ok());
        Antichain { degree, cones }
    }

    #[inline]
    pub fn degree(&self) -> Degree {
        self.degree
    }

    #[inline]
    pub fn cones(&self) -> &[Vertex] {
        &self.cones
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.cones.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn into_cones(self) -> Vec<Vertex> {
        self.cones
    }

    /// Index of the cone containing `v`, if `v` is deep enough to lie in one.
    pub fn locate(&self, v: &Vertex) -> Option<usize> {
        self.cones.iter().position(|w| w.is_prefix_of(v))
    }
}

/// Checks pairwise incomparability of `vs` (no completeness requirement).
pub fn check_incomparable(vs: &[Vertex]) -> Result<()> {
    let mut sorted: Vec<&Vertex> = vs.iter().collect();
    sorted.sort();
    // In lexicographic order, every extension of `u` directly follows `u`.
    for pair in sorted.windows(2) {
        if pair[0].is_prefix_of(pair[1]) {
            return Err(Error::NotAntichain(pair[0].clone(), pair[1].clone()));
        }
    }
    Ok(())
}

pub fn check_complete_antichain(d: Degree, vs: &[Vertex]) -> Result<Antichain> {
    for v in vs {
        v.check(d)?;
    }
    check_incomparable(vs)?;
    // sum_i d^-|w_i| == 1  <=>  sum_i d^(L - |w_i|) == d^L
    let depth = vs.iter().map(Vertex::len).max().unwrap_or(0);
    let base = BigUint::from(d.get());
    let mut numer = BigUint::zero();
    for v in vs {
        numer += base.pow((depth - v.len()) as u32);
    }
    let denom = base.pow(depth as u32);
    if numer != denom {
        let g = num_integer::Integer::gcd(&numer, &denom);
        let (n, dd) = if g.is_zero() { (numer, BigUint::one()) } else { (&numer / &g, &denom / &g) };
        return Err(Error::Incomplete { numer: n.to_string(), denom: dd.to_string() });
    }
    Ok(Antichain { degree: d, cones: vs.to_vec() })
}

/// The coarsest complete antichain refining both `a` and `b`.
///
/// Cones appear grouped by the cone of `a` they refine, in `a`'s order.
pub fn common_refinement(a: &Antichain, b: &Antichain) -> Antichain {
    assert_eq!(a.degree, b.degree, "antichains over different degrees");
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    for u in &a.cones {
        for v in &b.cones {
            if v.is_prefix_of(u) {
                out.push(u.clone());
                break;
            } else if u.is_prefix_of(v) {
                out.push(v.clone());
            }
        }
    }
    Antichain::from_trusted(a.degree, out)
}

/// Pairwise incomparable vertices which, together with `vs`, form a complete
/// antichain. Returned in lexicographic order.
pub fn cone_complement(d: Degree, vs: &[Vertex]) -> Result<Vec<Vertex>> {
    for v in vs {
        v.check(d)?;
    }
    check_incomparable(vs)?;
    let mut out = Vec::new();
    let mut stack = vec![Vertex::root()];
    while let Some(w) = stack.pop() {
        if vs.contains(&w) {
            continue;
        }
        if vs.iter().any(|v| w.is_proper_prefix_of(v)) {
            for l in (1..=d.get() as u32).rev() {
                stack.push(w.child(l));
            }
        } else {
            out.push(w);
        }
    }
    Ok(out)
}
