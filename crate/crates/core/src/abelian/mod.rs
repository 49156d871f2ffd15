//! Abelianizations of self-similar groups and of their Röver–Nekrashevych
//! groups, the search for a duplication factor making the latter finite,
//! and the duplication itself.

mod snf;

pub use snf::{snf, IntMatrix, SnfResult};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::perm::Perm;
use crate::ssgroup::{SSPresentation, WreathRecursion};
use crate::tree::Degree;
use crate::word::GroupWord;

/// `ℤ/f_1 ⊕ … ⊕ ℤ/f_k ⊕ ℤ^rank` with `f_1 | f_2 | … | f_k`, all `f_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbGroup {
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

/// Coordinates of an element of an [`AbGroup`]; torsion coordinates lie in `0..f_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbClass(pub Vec<BigInt>);

impl AbGroup {
    pub fn trivial() -> Self {
        AbGroup { factors: Vec::new(), rank: 0 }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.factors.len() + self.rank
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty() && self.rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.factors.iter().product())
    }

    pub fn zero(&self) -> AbClass {
        AbClass(vec![BigInt::zero(); self.dim()])
    }

    pub fn reduce(&self, mut c: AbClass) -> AbClass {
        for (x, f) in c.0.iter_mut().zip(&self.factors) {
            *x = x.mod_floor(f);
        }
        c
    }

    pub fn add(&self, a: &AbClass, b: &AbClass) -> AbClass {
        self.reduce(AbClass(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
    }

    pub fn scale(&self, a: &AbClass, k: &BigInt) -> AbClass {
        self.reduce(AbClass(a.0.iter().map(|x| x * k).collect()))
    }

    pub fn neg(&self, a: &AbClass) -> AbClass {
        self.scale(a, &-BigInt::one())
    }
}

impl AbClass {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// An abelian group together with the images of named generators, and for
/// odd-degree V-abelianizations, the image of the extra sign generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinAbPresentation {
    pub group: AbGroup,
    pub gen_names: Vec<String>,
    pub gen_images: Vec<AbClass>,
    pub sign_image: Option<AbClass>,
}

impl FinAbPresentation {
    /// Additive extension of the generator map to words.
    pub fn class_of_word(&self, w: &GroupWord) -> AbClass {
        let mut acc = self.group.zero();
        for s in w.syllables() {
            acc = self.group.add(&acc, &self.group.scale(&self.gen_images[s.gen as usize], &BigInt::from(s.exp)));
        }
        acc
    }

    /// Class of the sign generator; zero when there is none.
    pub fn sign_class(&self) -> AbClass {
        self.sign_image.clone().unwrap_or_else(|| self.group.zero())
    }
}

/// `ℤ^ngens` modulo the row span of `relations`, with the images of the
/// standard basis vectors.
pub fn quotient(relations: &IntMatrix) -> (AbGroup, Vec<AbClass>) {
    let ngens = relations.cols();
    let r = snf(relations);
    // x ↦ x·V carries the row span of the relations onto the span of s_j e_j.
    let diag = |j: usize| if j < r.s.rows() { r.s.get(j, j).clone() } else { BigInt::zero() };
    let kept: Vec<usize> = (0..ngens).filter(|&j| !diag(j).is_one()).collect();
    let factors: Vec<BigInt> = kept.iter().map(|&j| diag(j)).filter(|f| !f.is_zero()).collect();
    let group = AbGroup { rank: kept.len() - factors.len(), factors };
    let images = (0..ngens)
        .map(|i| group.reduce(AbClass(kept.iter().map(|&j| r.v.get(i, j).clone()).collect())))
        .collect();
    (group, images)
}

fn exponent_row(w: &GroupWord, width: usize) -> Vec<BigInt> {
    let n = w.max_gen().map_or(0, |g| g as usize + 1).max(width);
    let mut row: Vec<BigInt> = w.exponent_sums(n).into_iter().map(BigInt::from).collect();
    row.resize(width, BigInt::zero());
    row
}

/// Relator exponent-sum matrix, one row per relator.
pub fn relator_matrix(g: &SSPresentation) -> IntMatrix {
    let n = g.num_gens();
    let rows: Vec<Vec<BigInt>> = g.relators().iter().map(|r| exponent_row(r, n)).collect();
    IntMatrix::from_rows(n, &rows)
}

pub fn abelianize_group(g: &SSPresentation) -> FinAbPresentation {
    let (group, gen_images) = quotient(&relator_matrix(g));
    FinAbPresentation { group, gen_names: g.gen_names().to_vec(), gen_images, sign_image: None }
}

/// Sum of the abelianized level-1 states of a recursion, as exponent sums.
fn state_sum(rec: &WreathRecursion, n: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); n];
    for s in &rec.states {
        for (a, e) in acc.iter_mut().zip(exponent_row(s, n)) {
            *a += e;
        }
    }
    acc
}

/// Full relation matrix of the V-abelianization, over generators of `g`
/// (plus a trailing sign coordinate when the degree is odd): the relators,
/// then one row `ā_i − Σ_j (ā_i)_j [− sgn σ_i]` per generator, then `2·sgn`.
pub fn v_relation_matrix(g: &SSPresentation) -> IntMatrix {
    let n = g.num_gens();
    let odd = g.degree().get() % 2 == 1;
    let width = n + usize::from(odd);
    let mut rows: Vec<Vec<BigInt>> = g.relators().iter().map(|r| exponent_row(r, width)).collect();
    for (i, rec) in g.recursions().iter().enumerate() {
        let mut row: Vec<BigInt> = state_sum(rec, n).into_iter().map(|x| -x).collect();
        row[i] += 1;
        if odd {
            row.push(if rec.perm.is_odd() { -BigInt::one() } else { BigInt::zero() });
        }
        rows.push(row);
    }
    if odd {
        let mut row = vec![BigInt::zero(); width];
        row[n] = BigInt::from(2);
        rows.push(row);
    }
    IntMatrix::from_rows(width, &rows)
}

pub fn abelianize_v(g: &SSPresentation) -> FinAbPresentation {
    let n = g.num_gens();
    let (group, mut images) = quotient(&v_relation_matrix(g));
    let sign_image = (images.len() > n).then(|| images.pop().expect("sign coordinate"));
    FinAbPresentation { group, gen_names: g.gen_names().to_vec(), gen_images: images, sign_image }
}

/// The matrix whose `i`-th column is the sum of the abelianized level-1
/// states of generator `i`, over the free abelian group on the generators.
pub fn state_sum_matrix(g: &SSPresentation) -> IntMatrix {
    let n = g.num_gens();
    let mut a = IntMatrix::zeros(n, n);
    for (i, rec) in g.recursions().iter().enumerate() {
        for (j, x) in state_sum(rec, n).into_iter().enumerate() {
            a.set(j, i, x);
        }
    }
    a
}

/// Smallest even `m ≥ 2` with `det(I − m·A) ≠ 0`. Relators are ignored.
pub fn find_even_m(g: &SSPresentation) -> u64 {
    let a = state_sum_matrix(g);
    let n = a.rows();
    let mut m: u64 = 2;
    loop {
        let mut b = IntMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                let v = b.get(i, j) - a.get(i, j) * BigInt::from(m);
                b.set(i, j, v);
            }
        }
        if !b.determinant().is_zero() {
            return m;
        }
        m += 2;
    }
}

/// The same group acting on the `m·d`-ary tree: `σ` acts on each block of
/// `d` letters and the states repeat `m` times.
pub fn duplicate(g: &SSPresentation, m: usize) -> SSPresentation {
    assert!(m >= 1, "duplication factor must be positive");
    if m == 1 {
        return g.clone();
    }
    let d = g.degree().get();
    let degree = Degree::new(m * d).expect("degree");
    let recursions = g
        .recursions()
        .iter()
        .map(|rec| {
            let images = (0..m)
                .flat_map(|k| rec.perm.images().iter().map(move |&x| (k * d) as u32 + x))
                .collect();
            WreathRecursion {
                perm: Perm::from_images(images).expect("block permutation"),
                states: (0..m).flat_map(|_| rec.states.iter().cloned()).collect(),
            }
        })
        .collect();
    SSPresentation::new(degree, g.gen_names().to_vec(), recursions, g.relators().to_vec())
        .expect("duplicated presentation")
}

/// True when the abelian group is free of rank equal to its number of
/// generators and every generator maps to a distinct basis vector.
pub fn is_free_on_generators(p: &FinAbPresentation) -> bool {
    p.group.factors.is_empty()
        && p.group.rank == p.gen_images.len()
        && IntMatrix::from_rows(p.group.rank, &p.gen_images.iter().map(|c| c.0.clone()).collect::<Vec<_>>())
            .determinant()
            .abs()
            .is_one()
}
