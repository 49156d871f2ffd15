//! Elements of the Röver–Nekrashevych group `V_d(G)`.
//!
//! An element is a list of cone pairs `(w_i, g_i, w'_i)`: the domain cones
//! `w_i` and range cones `w'_i` each form a complete antichain, and the
//! boundary point `w_i·ω` is sent to `w'_i·g_i(ω)`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::abelian::{AbClass, FinAbPresentation};
use crate::error::{Error, Result};
use crate::ssgroup::{Budget, Equality, SSPresentation, Triviality};
use crate::tree::{check_complete_antichain, common_refinement, Antichain, Vertex};
use crate::word::GroupWord;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConePair {
    pub domain: Vertex,
    pub range: Vertex,
    pub decoration: GroupWord,
}

#[derive(Debug, Clone)]
pub struct VElement {
    group: Arc<SSPresentation>,
    pairs: Vec<ConePair>,
}

impl PartialEq for VElement {
    /// Structural equality: same group and the same list of cone pairs.
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group) && self.pairs == other.pairs
    }
}

impl VElement {
    pub fn new(
        group: Arc<SSPresentation>,
        domain: Vec<Vertex>,
        range: Vec<Vertex>,
        decorations: Vec<GroupWord>,
    ) -> Result<Self> {
        if domain.len() != range.len() || domain.len() != decorations.len() {
            return Err(Error::MalformedElement(format!(
                "{} domain cones, {} range cones, {} decorations",
                domain.len(),
                range.len(),
                decorations.len()
            )));
        }
        let d = group.degree();
        check_complete_antichain(d, &domain)?;
        check_complete_antichain(d, &range)?;
        for w in &decorations {
            group.check_word(w)?;
        }
        let pairs = domain
            .into_iter()
            .zip(range)
            .zip(decorations)
            .map(|((domain, range), decoration)| ConePair { domain, range, decoration })
            .collect();
        Ok(VElement { group, pairs })
    }

    pub(crate) fn from_pairs(group: Arc<SSPresentation>, pairs: Vec<ConePair>) -> Self {
        let e = VElement { group, pairs };
        debug_assert!(check_complete_antichain(e.group.degree(), &e.domain_cones()).is_ok());
        debug_assert!(check_complete_antichain(e.group.degree(), &e.range_cones()).is_ok());
        e
    }

    pub fn identity(group: Arc<SSPresentation>) -> Self {
        VElement::single_cone(group, GroupWord::identity())
    }

    /// The element acting as `g` on the whole tree.
    pub fn single_cone(group: Arc<SSPresentation>, g: GroupWord) -> Self {
        let pair = ConePair { domain: Vertex::root(), range: Vertex::root(), decoration: g };
        VElement { group, pairs: vec![pair] }
    }

    #[inline]
    pub fn group(&self) -> &Arc<SSPresentation> {
        &self.group
    }

    #[inline]
    pub fn pairs(&self) -> &[ConePair] {
        &self.pairs
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn domain_cones(&self) -> Vec<Vertex> {
        self.pairs.iter().map(|p| p.domain.clone()).collect()
    }

    pub fn range_cones(&self) -> Vec<Vertex> {
        self.pairs.iter().map(|p| p.range.clone()).collect()
    }

    pub fn decorations(&self) -> Vec<GroupWord> {
        self.pairs.iter().map(|p| p.decoration.clone()).collect()
    }

    pub fn domain(&self) -> Antichain {
        Antichain::from_trusted(self.group.degree(), self.domain_cones())
    }

    pub fn range(&self) -> Antichain {
        Antichain::from_trusted(self.group.degree(), self.range_cones())
    }

    fn same_group(&self, other: &VElement) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Splits pair `index` (0-based) into `d` pairs using the wreath
    /// recursion of its decoration. The homeomorphism is unchanged.
    pub fn expand(&self, index: usize) -> Result<VElement> {
        let mut e = self.clone();
        e.expand_in_place(index)?;
        Ok(e)
    }

    fn expand_in_place(&mut self, index: usize) -> Result<()> {
        let len = self.pairs.len();
        let pair = self.pairs.get(index).ok_or(Error::IndexOutOfRange { index, len })?.clone();
        let rec = self.group.word_recursion(&pair.decoration)?;
        let children = rec.states.into_iter().enumerate().map(|(j, state)| {
            let letter = j as u32 + 1;
            ConePair {
                domain: pair.domain.child(letter),
                range: pair.range.child(rec.perm.apply(letter)),
                decoration: state,
            }
        });
        self.pairs.splice(index..=index, children);
        Ok(())
    }

    /// Expands pairs until every domain cone belongs to `target`, which
    /// must refine the current domain antichain.
    fn refine_domain_to(&mut self, target: &HashSet<Vertex>) {
        let mut i = 0;
        while i < self.pairs.len() {
            if target.contains(&self.pairs[i].domain) {
                i += 1;
            } else {
                self.expand_in_place(i).expect("decorations were validated");
            }
        }
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &VElement) -> Result<VElement> {
        self.same_group(other)?;
        let common: HashSet<Vertex> =
            common_refinement(&other.range(), &self.domain()).into_cones().into_iter().collect();
        // Refining the range of `other` is refining the domain of its inverse.
        let mut q = other.invert();
        q.refine_domain_to(&common);
        let q = q.invert();
        let mut p = self.clone();
        p.refine_domain_to(&common);
        let by_domain: HashMap<&Vertex, &ConePair> = p.pairs.iter().map(|pair| (&pair.domain, pair)).collect();
        let pairs = q
            .pairs
            .iter()
            .map(|qp| {
                let pp = by_domain[&qp.range];
                ConePair {
                    domain: qp.domain.clone(),
                    range: pp.range.clone(),
                    decoration: pp.decoration.mul(&qp.decoration),
                }
            })
            .collect();
        Ok(VElement::from_pairs(self.group.clone(), pairs))
    }

    pub fn invert(&self) -> VElement {
        let pairs = self
            .pairs
            .iter()
            .map(|p| ConePair { domain: p.range.clone(), range: p.domain.clone(), decoration: p.decoration.inverse() })
            .collect();
        VElement { group: self.group.clone(), pairs }
    }

    /// Image of a vertex lying below some domain cone.
    pub fn apply(&self, v: &Vertex) -> Result<Vertex> {
        v.check(self.group.degree())?;
        let pair = self
            .pairs
            .iter()
            .find(|p| p.domain.is_prefix_of(v))
            .ok_or_else(|| Error::Unresolved(v.clone()))?;
        let suffix = v.strip_prefix(&pair.domain).expect("prefix");
        let moved = self.group.act_unchecked(&pair.decoration, suffix);
        Ok(pair.range.concat(moved.letters()))
    }

    /// Sign of the cone permutation: domain cones in lexicographic order
    /// matched against the lexicographic ranks of their range cones.
    pub fn cone_permutation_is_odd(&self) -> bool {
        let mut by_domain: Vec<usize> = (0..self.pairs.len()).collect();
        by_domain.sort_by(|&a, &b| self.pairs[a].domain.cmp(&self.pairs[b].domain));
        let mut by_range: Vec<usize> = (0..self.pairs.len()).collect();
        by_range.sort_by(|&a, &b| self.pairs[a].range.cmp(&self.pairs[b].range));
        let mut range_rank = vec![0; self.pairs.len()];
        for (rank, &i) in by_range.iter().enumerate() {
            range_rank[i] = rank;
        }
        let images: Vec<u32> = by_domain.iter().map(|&i| range_rank[i] as u32 + 1).collect();
        crate::perm::Perm::from_images(images).expect("bijection").is_odd()
    }

    /// Class in the abelianization `q` of `V_d(G)` (as returned by
    /// [`crate::abelian::abelianize_v`]).
    pub fn ab_class(&self, q: &FinAbPresentation) -> AbClass {
        let mut acc = q.group.zero();
        for p in &self.pairs {
            acc = q.group.add(&acc, &q.class_of_word(&p.decoration));
        }
        if q.sign_image.is_some() && self.cone_permutation_is_odd() {
            acc = q.group.add(&acc, &q.sign_class());
        }
        acc
    }

    pub fn in_commutator(&self, q: &FinAbPresentation) -> bool {
        self.ab_class(q).is_zero()
    }

    /// Compares two elements as homeomorphisms. Cone mismatches give
    /// `Distinct` outright; decorations go through the bounded word problem,
    /// and when that runs out of budget, through a portrait check of the
    /// given depth.
    pub fn equal_bounded(&self, other: &VElement, depth: usize, budget: Budget) -> Result<Equality> {
        let c = other.invert().compose(self)?;
        if c.pairs.iter().any(|p| p.domain != p.range) {
            return Ok(Equality::Distinct);
        }
        let mut unknown = false;
        for p in &c.pairs {
            match self.group.is_trivial_bounded(&p.decoration, budget) {
                Triviality::Trivial => {}
                Triviality::Nontrivial => return Ok(Equality::Distinct),
                Triviality::Unknown => {
                    if moves_within(&self.group, &p.decoration, depth) {
                        return Ok(Equality::Distinct);
                    }
                    unknown = true;
                }
            }
        }
        Ok(if unknown { Equality::Unknown } else { Equality::Equal })
    }

    /// Best-effort simplification: merges full sibling families of pairs
    /// with trivial decorations whose ranges are the matching children of a
    /// common vertex.
    pub fn reduce(&self) -> VElement {
        let d = self.group.degree().get() as u32;
        let mut pairs = self.pairs.clone();
        loop {
            let index: HashMap<&Vertex, usize> = pairs.iter().enumerate().map(|(i, p)| (&p.domain, i)).collect();
            let mut merge: Option<(usize, Vec<usize>, ConePair)> = None;
            for (i, p) in pairs.iter().enumerate() {
                let (Some((&1, dparent)), Some((&1, rparent))) =
                    (p.domain.letters().split_last(), p.range.letters().split_last())
                else {
                    continue;
                };
                let dparent = Vertex::from_letters(dparent.to_vec());
                let rparent = Vertex::from_letters(rparent.to_vec());
                let family: Option<Vec<usize>> = (1..=d)
                    .map(|j| {
                        index.get(&dparent.child(j)).copied().filter(|&k| {
                            pairs[k].range == rparent.child(j) && pairs[k].decoration.is_identity()
                        })
                    })
                    .collect();
                if let Some(family) = family {
                    let merged = ConePair { domain: dparent, range: rparent, decoration: GroupWord::identity() };
                    merge = Some((i, family, merged));
                    break;
                }
            }
            let Some((first, family, merged)) = merge else { break };
            let drop: HashSet<usize> = family.into_iter().collect();
            let mut next = Vec::with_capacity(pairs.len() + 1 - drop.len());
            for (k, p) in pairs.into_iter().enumerate() {
                if k == first {
                    next.push(merged.clone());
                } else if !drop.contains(&k) {
                    next.push(p);
                }
            }
            pairs = next;
        }
        VElement { group: self.group.clone(), pairs }
    }
}

/// True if `w` has a state with nontrivial root permutation at some level
/// below `depth`.
fn moves_within(g: &SSPresentation, w: &GroupWord, depth: usize) -> bool {
    let mut best: HashMap<GroupWord, usize> = HashMap::new();
    let mut stack = vec![(w.clone(), depth)];
    while let Some((cur, remaining)) = stack.pop() {
        if remaining == 0 || cur.is_identity() || best.get(&cur).is_some_and(|&r| r >= remaining) {
            continue;
        }
        let rec = g.word_recursion(&cur).expect("validated word");
        if !rec.perm.is_identity() {
            return true;
        }
        best.insert(cur, remaining);
        stack.extend(rec.states.into_iter().map(|s| (s, remaining - 1)));
    }
    false
}
