#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use nekra_core::fixtures;
use nekra_core::perm::Perm;
use nekra_core::rovernek::VElement;
use nekra_core::ssgroup::{SSPresentation, WreathRecursion};
use nekra_core::tree::{Degree, Vertex};
use nekra_core::virtend::{AffineElem, Ring, RingElem};
use nekra_core::word::{GroupWord, Syllable};

pub fn v(letters: &[u32]) -> Vertex {
    Vertex::from_letters(letters.to_vec())
}

pub fn random_word(rng: &mut StdRng, ngens: usize, max_len: usize) -> GroupWord {
    if ngens == 0 {
        return GroupWord::identity();
    }
    let len = rng.gen_range(0..=max_len);
    GroupWord::from_letters((0..len).map(|_| (rng.gen_range(0..ngens as u32), rng.gen_bool(0.5))))
}

pub fn random_vertex(rng: &mut StdRng, d: usize, len: usize) -> Vertex {
    Vertex::from_letters((0..len).map(|_| rng.gen_range(1..=d as u32)).collect())
}

pub fn random_perm(rng: &mut StdRng, d: usize) -> Perm {
    let mut images: Vec<u32> = (1..=d as u32).collect();
    images.shuffle(rng);
    Perm::from_images(images).unwrap()
}

/// A random presentation with short state words and no relators.
pub fn random_group(rng: &mut StdRng) -> SSPresentation {
    let d = rng.gen_range(2..=4);
    let n = rng.gen_range(1..=3);
    let names = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let recursions = (0..n)
        .map(|_| WreathRecursion {
            perm: random_perm(rng, d),
            states: (0..d).map(|_| random_word(rng, n, 2)).collect(),
        })
        .collect();
    SSPresentation::new(Degree::new(d).unwrap(), names, recursions, Vec::new()).unwrap()
}

pub fn shipped_groups() -> Vec<(&'static str, SSPresentation)> {
    vec![
        ("odometer", fixtures::odometer()),
        ("grigorchuk", fixtures::grigorchuk()),
        ("dinf", fixtures::dinf()),
        ("odometer_mirrored", fixtures::odometer_mirrored()),
    ]
}

/// A complete antichain with `1 + splits·(d−1)` cones, grown by splitting
/// random leaves of the root.
pub fn random_antichain(rng: &mut StdRng, d: usize, splits: usize) -> Vec<Vertex> {
    let mut cones = vec![Vertex::root()];
    for _ in 0..splits {
        let i = rng.gen_range(0..cones.len());
        let w = cones.swap_remove(i);
        cones.extend((1..=d as u32).map(|x| w.child(x)));
    }
    cones.shuffle(rng);
    cones
}

pub fn random_velement(rng: &mut StdRng, group: &Arc<SSPresentation>, max_splits: usize) -> VElement {
    let d = group.degree().get();
    let splits = rng.gen_range(0..=max_splits);
    let domain = random_antichain(rng, d, splits);
    let range = random_antichain(rng, d, splits);
    let decorations = domain.iter().map(|_| random_word(rng, group.num_gens(), 3)).collect();
    VElement::new(group.clone(), domain, range, decorations).unwrap()
}

/// Ball of radius `r` in the generators, as words, one per freely reduced word.
pub fn ball(ngens: usize, r: usize) -> Vec<GroupWord> {
    let mut out = vec![GroupWord::identity()];
    let mut frontier = vec![GroupWord::identity()];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &frontier {
            for gen in 0..ngens as u32 {
                for exp in [1, -1] {
                    let mut x = w.clone();
                    x.push(Syllable { gen, exp });
                    if x.letter_len() == w.letter_len() + 1 {
                        next.push(x);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Determinant by cofactor expansion, for small oracle matrices.
pub fn det_oracle(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det_oracle(&minor)
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors through determinantal divisors: `s_k = D_k / D_{k−1}`
/// where `D_k` is the gcd of all `k×k` minors.
pub fn invariant_factors_oracle(m: &[Vec<i128>], cols: usize) -> Vec<i128> {
    let rows = m.len();
    let mut out = Vec::new();
    let mut prev = 1;
    for k in 1..=rows.min(cols) {
        let mut dk = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                dk = gcd(dk, det_oracle(&minor));
            }
        }
        if dk == 0 {
            out.extend(std::iter::repeat_n(0, rows.min(cols) - out.len()));
            return out;
        }
        out.push(dk / prev);
        prev = dk;
    }
    out
}

/// `(torsion factors > 1, free rank)` of `ℤ^cols / rowspan(m)` from the oracle.
pub fn quotient_oracle(m: &[Vec<i128>], cols: usize) -> (Vec<BigInt>, usize) {
    let inv = invariant_factors_oracle(m, cols);
    let nonzero: Vec<i128> = inv.iter().copied().filter(|&x| x != 0).collect();
    let torsion = nonzero.iter().filter(|&&x| x > 1).map(|&x| BigInt::from(x)).collect();
    (torsion, cols - nonzero.len())
}

pub fn random_ring_elem(rng: &mut StdRng, ring: &Ring, max_exp: u32, max_num: i64) -> RingElem {
    ring.elem(rng.gen_range(-max_num..=max_num), rng.gen_range(0..=max_exp))
}

/// Random element with every entry `num/m^exp`, `exp ≤ max_exp`,
/// `|num| ≤ max_num`, the matrix drawn until its determinant is a unit.
pub fn random_affine(rng: &mut StdRng, ring: &Ring, n: usize, max_exp: u32, max_num: i64) -> AffineElem {
    loop {
        let a = (0..n).map(|_| random_ring_elem(rng, ring, max_exp, max_num)).collect();
        let gamma = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if rng.gen_bool(0.3) {
                            if i == j { RingElem::one() } else { RingElem::zero() }
                        } else {
                            random_ring_elem(rng, ring, max_exp, max_num)
                        }
                    })
                    .collect()
            })
            .collect();
        if let Ok(e) = AffineElem::new(ring, a, gamma) {
            return e;
        }
    }
}
