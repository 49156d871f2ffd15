//! Freely reduced words over a finite generating set.
//!
//! Words are kept in syllable form `g^k`: adjacent syllables always have
//! different generators and no exponent is zero, which is exactly the
//! freely reduced normal form. Long powers such as `a^1000000` stay compact.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub gen: u32,
    pub exp: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord(Vec<Syllable>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub fn generator(gen: u32) -> Self {
        GroupWord(vec![Syllable { gen, exp: 1 }])
    }

    pub fn power_of(gen: u32, exp: i64) -> Self {
        let mut w = GroupWord::identity();
        w.push(Syllable { gen, exp });
        w
    }

    /// Reduces a sequence of `(generator, sign)` letters.
    pub fn from_letters<I: IntoIterator<Item = (u32, bool)>>(letters: I) -> Self {
        let mut w = GroupWord::identity();
        for (gen, inverse) in letters {
            w.push(Syllable { gen, exp: if inverse { -1 } else { 1 } });
        }
        w
    }

    pub fn from_syllables<I: IntoIterator<Item = Syllable>>(syllables: I) -> Self {
        let mut w = GroupWord::identity();
        for s in syllables {
            w.push(s);
        }
        w
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    /// Length as a word in generators and their inverses.
    pub fn letter_len(&self) -> u64 {
        self.0.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    /// Expanded letters as `(generator, is_inverse)`.
    pub fn letters(&self) -> impl Iterator<Item = (u32, bool)> + '_ {
        self.0
            .iter()
            .flat_map(|s| std::iter::repeat_n((s.gen, s.exp < 0), s.exp.unsigned_abs() as usize))
    }

    /// Appends a syllable, cancelling and merging at the boundary.
    pub fn push(&mut self, s: Syllable) {
        if s.exp == 0 {
            return;
        }
        match self.0.last_mut() {
            Some(last) if last.gen == s.gen => {
                last.exp += s.exp;
                if last.exp == 0 {
                    self.0.pop();
                }
            }
            _ => self.0.push(s),
        }
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut out = self.clone();
        for &s in &other.0 {
            out.push(s);
        }
        out
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|s| Syllable { gen: s.gen, exp: -s.exp }).collect())
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        if let [s] = self.0.as_slice() {
            return GroupWord::power_of(s.gen, s.exp * k);
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = GroupWord::identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Exponent sum of each of the first `ngens` generators.
    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut out = vec![0; ngens];
        for s in &self.0 {
            out[s.gen as usize] += s.exp;
        }
        out
    }

    pub fn max_gen(&self) -> Option<u32> {
        self.0.iter().map(|s| s.gen).max()
    }

    /// Renders the word with the given generator names, e.g. `a^-1 s a`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a GroupWord,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return write!(f, "1");
        }
        for (i, s) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = self.names.get(s.gen as usize).map(String::as_str).unwrap_or("?");
            match s.exp {
                1 => write!(f, "{name}")?,
                e => write!(f, "{name}^{e}")?,
            }
        }
        Ok(())
    }
}
