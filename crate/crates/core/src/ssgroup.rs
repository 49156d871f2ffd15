//! Self-similar group presentations and the wreath-recursion calculus.
//!
//! Convention: automorphisms act on the left, `g(i·u) = σ(i)·g_i(u)`, and
//! products compose as functions, `(gh)(x) = g(h(x))`. With
//! `g ↔ σ(g_1,…,g_d)` and `h ↔ τ(h_1,…,h_d)` this gives
//! `gh ↔ στ(g_{τ(1)}h_1, …, g_{τ(d)}h_d)` and
//! `g⁻¹ ↔ σ⁻¹((g_{σ⁻¹(1)})⁻¹, …)`.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::tree::{Degree, Vertex};
use crate::word::{GroupWord, Syllable};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathRecursion {
    pub perm: Perm,
    pub states: Vec<GroupWord>,
}

impl WreathRecursion {
    pub fn identity(d: Degree) -> Self {
        WreathRecursion { perm: Perm::identity(d.get()), states: vec![GroupWord::identity(); d.get()] }
    }

    /// Product `self · other` (apply `other` first).
    pub fn mul(&self, other: &WreathRecursion) -> WreathRecursion {
        let states = (0..other.states.len())
            .map(|i| {
                let moved = other.perm.apply(i as u32 + 1) as usize - 1;
                self.states[moved].mul(&other.states[i])
            })
            .collect();
        WreathRecursion { perm: self.perm.compose(&other.perm), states }
    }

    pub fn inverse(&self) -> WreathRecursion {
        let inv = self.perm.inverse();
        let states = (1..=self.states.len() as u32)
            .map(|j| self.states[inv.apply(j) as usize - 1].inverse())
            .collect();
        WreathRecursion { perm: inv, states }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.states.iter().all(GroupWord::is_identity)
    }
}

/// A self-similar group given by one wreath recursion per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSPresentation {
    degree: Degree,
    gen_names: Vec<String>,
    recursions: Vec<WreathRecursion>,
    relators: Vec<GroupWord>,
    inverse_recursions: Vec<WreathRecursion>,
}

impl SSPresentation {
    pub fn new(
        degree: Degree,
        gen_names: Vec<String>,
        recursions: Vec<WreathRecursion>,
        relators: Vec<GroupWord>,
    ) -> Result<Self> {
        if gen_names.len() != recursions.len() {
            return Err(Error::schema(
                "recursions",
                format!("{} generators but {} recursions", gen_names.len(), recursions.len()),
            ));
        }
        for (i, name) in gen_names.iter().enumerate() {
            if name.is_empty() || name.contains(|c: char| c.is_whitespace() || c == ',' || c == '^') {
                return Err(Error::schema(format!("generators[{i}]"), format!("invalid generator name {name:?}")));
            }
            if gen_names[..i].contains(name) {
                return Err(Error::schema(format!("generators[{i}]"), format!("duplicate generator {name:?}")));
            }
        }
        let n = gen_names.len() as u32;
        for (name, rec) in gen_names.iter().zip(&recursions) {
            if rec.perm.degree() != degree.get() || rec.states.len() != degree.get() {
                return Err(Error::schema(
                    format!("recursions.{name}"),
                    format!("expected a permutation and {} states for degree {}", degree, degree),
                ));
            }
            for (j, s) in rec.states.iter().enumerate() {
                if let Some(g) = s.max_gen().filter(|&g| g >= n) {
                    return Err(Error::schema(
                        format!("recursions.{name}.states[{j}]"),
                        format!("unknown generator index {g}"),
                    ));
                }
            }
        }
        for (j, r) in relators.iter().enumerate() {
            if let Some(g) = r.max_gen().filter(|&g| g >= n) {
                return Err(Error::schema(format!("relators[{j}]"), format!("unknown generator index {g}")));
            }
        }
        let inverse_recursions = recursions.iter().map(WreathRecursion::inverse).collect();
        Ok(SSPresentation { degree, gen_names, recursions, relators, inverse_recursions })
    }

    /// The group with no generators acting on the `d`-ary tree.
    pub fn trivial(degree: Degree) -> Self {
        SSPresentation::new(degree, Vec::new(), Vec::new(), Vec::new()).expect("trivial presentation")
    }

    #[inline]
    pub fn degree(&self) -> Degree {
        self.degree
    }

    #[inline]
    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    #[inline]
    pub fn num_gens(&self) -> usize {
        self.gen_names.len()
    }

    #[inline]
    pub fn recursions(&self) -> &[WreathRecursion] {
        &self.recursions
    }

    #[inline]
    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }

    pub fn with_relators(&self, relators: Vec<GroupWord>) -> Result<Self> {
        SSPresentation::new(self.degree, self.gen_names.clone(), self.recursions.clone(), relators)
    }

    pub fn gen_index(&self, name: &str) -> Result<u32> {
        self.gen_names
            .iter()
            .position(|g| g == name)
            .map(|i| i as u32)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Parses one token: `g`, `g^-1` or `g^k`.
    pub fn parse_token(&self, token: &str) -> Result<Syllable> {
        let (name, exp) = match token.split_once('^') {
            Some((name, e)) => {
                let exp = e
                    .parse::<i64>()
                    .map_err(|_| Error::schema("word", format!("bad exponent in token {token:?}")))?;
                (name, exp)
            }
            None => (token, 1),
        };
        Ok(Syllable { gen: self.gen_index(name)?, exp })
    }

    /// Parses a word of space- or comma-separated tokens. `1` or an empty
    /// string denotes the identity.
    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        let tokens = text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty() && *t != "1");
        tokens.map(|t| self.parse_token(t)).collect::<Result<Vec<_>>>().map(GroupWord::from_syllables)
    }

    /// Expanded tokens (`g` / `g^-1`), one per letter.
    pub fn word_tokens(&self, w: &GroupWord) -> Vec<String> {
        w.letters()
            .map(|(g, inv)| {
                let name = &self.gen_names[g as usize];
                if inv {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect()
    }

    pub fn format_word(&self, w: &GroupWord) -> String {
        w.display(&self.gen_names).to_string()
    }

    pub fn check_word(&self, w: &GroupWord) -> Result<()> {
        match w.max_gen() {
            Some(g) if g as usize >= self.num_gens() => Err(Error::UnknownGenerator(format!("#{g}"))),
            _ => Ok(()),
        }
    }

    /// Image of `letter` under `gen^exp` and the state of `gen^exp` there.
    pub fn syllable_state(&self, s: Syllable, letter: u32) -> (u32, GroupWord) {
        let rec = if s.exp > 0 {
            &self.recursions[s.gen as usize]
        } else {
            &self.inverse_recursions[s.gen as usize]
        };
        let k = s.exp.unsigned_abs();
        let orbit = rec.perm.orbit(letter);
        let len = orbit.len() as u64;
        let (q, r) = ((k / len) as i64, (k % len) as usize);
        // state_x(g^k) = g_{σ^{k-1}(x)} ⋯ g_{σ(x)} g_x, with k = q·len + r
        let partial = orbit[..r]
            .iter()
            .rev()
            .fold(GroupWord::identity(), |acc, &x| acc.mul(&rec.states[x as usize - 1]));
        let state = if q == 0 {
            partial
        } else {
            let cycle = orbit
                .iter()
                .rev()
                .fold(GroupWord::identity(), |acc, &x| acc.mul(&rec.states[x as usize - 1]));
            partial.mul(&cycle.pow(q))
        };
        (orbit[r], state)
    }

    /// Image of `letter` under `w` and the state of `w` at `letter`.
    pub fn state_at(&self, w: &GroupWord, letter: u32) -> (u32, GroupWord) {
        let mut x = letter;
        let mut parts = Vec::with_capacity(w.syllables().len());
        for &s in w.syllables().iter().rev() {
            let (y, st) = self.syllable_state(s, x);
            parts.push(st);
            x = y;
        }
        let state = parts.iter().rev().fold(GroupWord::identity(), |acc, p| acc.mul(p));
        (x, state)
    }

    pub fn word_recursion(&self, w: &GroupWord) -> Result<WreathRecursion> {
        self.check_word(w)?;
        Ok(self.recursion_unchecked(w))
    }

    fn recursion_unchecked(&self, w: &GroupWord) -> WreathRecursion {
        let d = self.degree.get() as u32;
        let mut images = Vec::with_capacity(d as usize);
        let mut states = Vec::with_capacity(d as usize);
        for x in 1..=d {
            let (y, s) = self.state_at(w, x);
            images.push(y);
            states.push(s);
        }
        WreathRecursion { perm: Perm::from_images(images).expect("word induces a bijection"), states }
    }

    pub fn act(&self, w: &GroupWord, v: &Vertex) -> Result<Vertex> {
        self.check_word(w)?;
        v.check(self.degree)?;
        Ok(self.act_unchecked(w, v.letters()))
    }

    pub(crate) fn act_unchecked(&self, w: &GroupWord, letters: &[u32]) -> Vertex {
        let mut out = Vec::with_capacity(letters.len());
        let mut cur = w.clone();
        for &x in letters {
            if cur.is_identity() {
                out.push(x);
                continue;
            }
            let (y, s) = self.state_at(&cur, x);
            out.push(y);
            cur = s;
        }
        Vertex::from_letters(out)
    }

    pub fn portrait(&self, w: &GroupWord, depth: usize) -> Result<Portrait> {
        self.check_word(w)?;
        Ok(self.portrait_unchecked(w, depth))
    }

    fn portrait_unchecked(&self, w: &GroupWord, depth: usize) -> Portrait {
        if depth == 0 {
            return Portrait::Leaf;
        }
        let rec = self.recursion_unchecked(w);
        let children = rec.states.iter().map(|s| self.portrait_unchecked(s, depth - 1)).collect();
        Portrait::Node { perm: rec.perm, children }
    }

    /// Semi-decides triviality by exploring the closure of `{w}` under taking
    /// level-1 states. Each freely reduced word is visited once.
    pub fn is_trivial_bounded(&self, w: &GroupWord, budget: Budget) -> Triviality {
        if self.check_word(w).is_err() {
            return Triviality::Unknown;
        }
        let mut visited: HashSet<GroupWord> = HashSet::new();
        let mut queue = VecDeque::from([w.clone()]);
        let mut exhausted = false;
        while let Some(cur) = queue.pop_front() {
            if cur.is_identity() || visited.contains(&cur) {
                continue;
            }
            if cur.letter_len() > budget.max_len {
                exhausted = true;
                continue;
            }
            if visited.len() >= budget.max_words {
                return Triviality::Unknown;
            }
            let rec = self.recursion_unchecked(&cur);
            if !rec.perm.is_identity() {
                return Triviality::Nontrivial;
            }
            visited.insert(cur);
            queue.extend(rec.states.into_iter().filter(|s| !s.is_identity() && !visited.contains(s)));
        }
        if exhausted {
            Triviality::Unknown
        } else {
            Triviality::Trivial
        }
    }

    pub fn equal_bounded(&self, u: &GroupWord, v: &GroupWord, budget: Budget) -> Equality {
        self.is_trivial_bounded(&u.mul(&v.inverse()), budget).into()
    }
}

/// Limits for the bounded word problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_words: usize,
    pub max_len: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_words: 10_000, max_len: 512 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Triviality {
    Trivial,
    Nontrivial,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equality {
    Equal,
    Distinct,
    Unknown,
}

impl From<Triviality> for Equality {
    fn from(t: Triviality) -> Self {
        match t {
            Triviality::Trivial => Equality::Equal,
            Triviality::Nontrivial => Equality::Distinct,
            Triviality::Unknown => Equality::Unknown,
        }
    }
}

/// Finite-depth truncation of a tree automorphism: the root permutation and
/// the portraits of the level-1 states. A depth-`k` portrait determines the
/// action on all vertices of length at most `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Portrait {
    Leaf,
    Node { perm: Perm, children: Vec<Portrait> },
}

impl Portrait {
    pub fn depth(&self) -> usize {
        match self {
            Portrait::Leaf => 0,
            Portrait::Node { children, .. } => 1 + children.first().map_or(0, Portrait::depth),
        }
    }

    /// Applies the truncated automorphism; `None` if `v` is deeper than the portrait.
    pub fn apply(&self, v: &Vertex) -> Option<Vertex> {
        let mut node = self;
        let mut out = Vec::with_capacity(v.len());
        for &x in v.letters() {
            match node {
                Portrait::Leaf => return None,
                Portrait::Node { perm, children } => {
                    out.push(perm.apply(x));
                    node = &children[x as usize - 1];
                }
            }
        }
        Some(Vertex::from_letters(out))
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            Portrait::Leaf => true,
            Portrait::Node { perm, children } => perm.is_identity() && children.iter().all(Portrait::is_trivial),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn odometer_recursions() {
        let g = fixtures::odometer();
        let rec = g.word_recursion(&g.parse_word("a a").unwrap()).unwrap();
        assert!(rec.perm.is_identity());
        assert_eq!(rec.states, vec![g.parse_word("a").unwrap(); 2]);
        let rec = g.word_recursion(&g.parse_word("a^-1").unwrap()).unwrap();
        assert_eq!(rec.perm.images(), &[2, 1]);
        assert_eq!(rec.states, vec![g.parse_word("a^-1").unwrap(), GroupWord::identity()]);
        let rec = g.word_recursion(&GroupWord::identity()).unwrap();
        assert!(rec.is_identity());
    }

    #[test]
    fn act_examples() {
        let odo = fixtures::odometer();
        let a = odo.parse_word("a").unwrap();
        assert_eq!(odo.act(&a, &Vertex::from(vec![2, 2, 1])).unwrap(), Vertex::from(vec![1, 1, 2]));
        let gr = fixtures::grigorchuk();
        let b = gr.parse_word("b").unwrap();
        assert_eq!(gr.act(&b, &Vertex::from(vec![1, 1])).unwrap(), Vertex::from(vec![1, 2]));
        let v = Vertex::from(vec![2, 1, 2, 2]);
        assert_eq!(gr.act(&GroupWord::identity(), &v).unwrap(), v);
        assert!(matches!(odo.parse_word("z"), Err(Error::UnknownGenerator(_))));
        assert!(matches!(odo.act(&GroupWord::generator(3), &v), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn portrait_examples() {
        let odo = fixtures::odometer();
        let p = odo.portrait(&odo.parse_word("a").unwrap(), 2).unwrap();
        let Portrait::Node { perm, children } = &p else { panic!() };
        assert_eq!(perm.images(), &[2, 1]);
        assert!(children[0].is_trivial());
        let Portrait::Node { perm, .. } = &children[1] else { panic!() };
        assert_eq!(perm.images(), &[2, 1]);
        assert_eq!(p.depth(), 2);

        let gr = fixtures::grigorchuk();
        assert!(gr.portrait(&GroupWord::identity(), 3).unwrap().is_trivial());
        let p = gr.portrait(&gr.parse_word("a").unwrap(), 1).unwrap();
        let Portrait::Node { perm, children } = &p else { panic!() };
        assert_eq!(perm.images(), &[2, 1]);
        assert!(children.iter().all(|c| *c == Portrait::Leaf));
    }

    #[test]
    fn triviality_examples() {
        let gr = fixtures::grigorchuk();
        let b = Budget::default();
        assert_eq!(gr.is_trivial_bounded(&gr.parse_word("b c d").unwrap(), b), Triviality::Trivial);
        assert_eq!(gr.equal_bounded(&gr.parse_word("b c").unwrap(), &gr.parse_word("d").unwrap(), b), Equality::Equal);
        let odo = fixtures::odometer();
        assert_eq!(odo.is_trivial_bounded(&odo.parse_word("a a").unwrap(), b), Triviality::Nontrivial);
        assert_eq!(odo.is_trivial_bounded(&odo.parse_word("a a^-1").unwrap(), b), Triviality::Trivial);
        assert_eq!(odo.equal_bounded(&odo.parse_word("a").unwrap(), &GroupWord::identity(), b), Equality::Distinct);
        let aa = odo.parse_word("a a").unwrap();
        assert_eq!(odo.equal_bounded(&aa, &aa, b), Equality::Equal);
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let odo = fixtures::odometer();
        let tiny = Budget { max_words: 10_000, max_len: 4 };
        // a^64 has trivial root permutations down to level 6 but is too long.
        assert_eq!(odo.is_trivial_bounded(&GroupWord::power_of(0, 64), tiny), Triviality::Unknown);
        let few = Budget { max_words: 1, max_len: 512 };
        assert_eq!(odo.is_trivial_bounded(&GroupWord::power_of(0, 64), few), Triviality::Unknown);
    }

    #[test]
    fn large_powers_via_cycles() {
        let odo = fixtures::odometer();
        // a^(2^20) fixes every vertex of length 20 and moves the 21st letter.
        let w = GroupWord::power_of(0, 1 << 20);
        let v = Vertex::from(vec![1; 21]);
        let mut expect = vec![1; 21];
        expect[20] = 2;
        assert_eq!(odo.act(&w, &v).unwrap(), Vertex::from(expect));
    }
}
