//! Embeddings into commutator subgroups of Röver–Nekrashevych groups.
//!
//! The chain built here is
//! `G ↪ (G/H) ≀ H ↪ [V_{d'}(G), V_{d'}(G)]`, where `H` is the kernel of
//! `G → V_{d'}(G)^{ab}` and the second map places the `H`-coordinates in
//! disjoint cones `1^i 2` permuted by a prefix-replacement action of `G/H`.
//!
//! Wreath products use the law `(f; v)(g; u) = (fg; x ↦ v(gx)·u(x))`, which
//! is what composing `P_f ∘ C_v` with `P_g ∘ C_u` produces when `P` permutes
//! the cones by left translation and `C_v` acts by `v(x)` in cone `x`.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::abelian::{abelianize_v, duplicate, find_even_m, AbClass, FinAbPresentation};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::rovernek::{ConePair, VElement};
use crate::ssgroup::SSPresentation;
use crate::tree::{cone_complement, Vertex};
use crate::word::{GroupWord, Syllable};

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroupTable {
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 || identity >= n {
            return Err(Error::BadGroupTable("empty table or identity out of range".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::BadGroupTable("table is not n×n over 0..n".into()));
        }
        #[allow(clippy::needless_range_loop)]
        for a in 0..n {
            if table[identity][a] != a || table[a][identity] != a {
                return Err(Error::BadGroupTable(format!("{identity} is not an identity")));
            }
            if !(0..n).any(|b| table[a][b] == identity) {
                return Err(Error::BadGroupTable(format!("{a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::BadGroupTable(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroupTable { table, identity })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroupTable::new(table, 0).expect("cyclic group")
    }

    /// The group generated by `gens` under composition; elements are
    /// numbered in order of discovery starting from the identity.
    pub fn generated_by(gens: &[Perm]) -> Result<Self> {
        let d = gens.first().map_or(1, Perm::degree);
        let mut elems = vec![Perm::identity(d)];
        let mut index: HashMap<Perm, usize> = HashMap::from([(Perm::identity(d), 0)]);
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let next = g.compose(&elems[i]);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elems.len());
                    elems.push(next);
                }
            }
            i += 1;
        }
        let table = elems.iter().map(|a| elems.iter().map(|b| index[&a.compose(b)]).collect()).collect();
        FiniteGroupTable::new(table, 0)
    }

    pub fn symmetric3() -> Self {
        let gens = [
            Perm::from_cycles(3, &[&[1, 2]]).expect("perm"),
            Perm::from_cycles(3, &[&[1, 2, 3]]).expect("perm"),
        ];
        FiniteGroupTable::generated_by(&gens).expect("S_3")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == self.identity).expect("validated table")
    }

    /// Position of each element in the fixed bijection with the cones
    /// `1^i 2`: the identity first, then the remaining elements in table order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order()];
        let mut next = 1;
        for (x, p) in pos.iter_mut().enumerate() {
            if x != self.identity {
                *p = next;
                next += 1;
            }
        }
        pos
    }
}

/// `1^i 2`.
fn spine_cone(i: usize) -> Vertex {
    let mut letters = vec![1; i];
    letters.push(2);
    Vertex::from_letters(letters)
}

/// The element acting as `e` inside the cone `w`, conjugated by the prefix
/// map `ω ↦ wω`, and trivially outside it.
pub fn into_cone(e: &VElement, w: &Vertex) -> VElement {
    if w.is_root() {
        return e.clone();
    }
    let mut pairs: Vec<ConePair> = e
        .pairs()
        .iter()
        .map(|p| ConePair {
            domain: w.concat(p.domain.letters()),
            range: w.concat(p.range.letters()),
            decoration: p.decoration.clone(),
        })
        .collect();
    let outside = cone_complement(e.group().degree(), std::slice::from_ref(w)).expect("single vertex");
    pairs.extend(outside.into_iter().map(|c| ConePair { domain: c.clone(), range: c, decoration: GroupWord::identity() }));
    VElement::from_pairs(e.group().clone(), pairs)
}

/// Images of `F` in `V_d(G)` permuting the cones `w_1, …, w_n` (`w_i = 1^i 2`)
/// by left translation; odd cone permutations also swap `1^{n+1} 2` and
/// `1^{n+2} 2`, so every image is an even permutation of cones.
pub fn finite_prefix_action(table: &FiniteGroupTable, group: &Arc<SSPresentation>) -> Vec<VElement> {
    let n = table.order();
    let pos = table.positions();
    let spine: Vec<Vertex> = (1..=n).map(spine_cone).collect();
    let parity = [spine_cone(n + 1), spine_cone(n + 2)];
    let mut used: Vec<Vertex> = spine.clone();
    used.extend(parity.iter().cloned());
    let rest = cone_complement(group.degree(), &used).expect("spine cones are incomparable");
    (0..n)
        .map(|f| {
            let images: Vec<u32> = (0..n).map(|x| pos[table.mul(f, x)] as u32 + 1).collect();
            let mut moved = vec![0u32; n];
            for x in 0..n {
                moved[pos[x]] = images[x];
            }
            let odd = Perm::from_images(moved).expect("translation is a bijection").is_odd();
            let mut pairs: Vec<ConePair> = (0..n)
                .map(|x| ConePair {
                    domain: spine[pos[x]].clone(),
                    range: spine[pos[table.mul(f, x)]].clone(),
                    decoration: GroupWord::identity(),
                })
                .collect();
            let (c1, c2) = if odd { (&parity[1], &parity[0]) } else { (&parity[0], &parity[1]) };
            pairs.push(ConePair { domain: parity[0].clone(), range: c1.clone(), decoration: GroupWord::identity() });
            pairs.push(ConePair { domain: parity[1].clone(), range: c2.clone(), decoration: GroupWord::identity() });
            pairs.extend(rest.iter().map(|c| ConePair { domain: c.clone(), range: c.clone(), decoration: GroupWord::identity() }));
            VElement::from_pairs(group.clone(), pairs)
        })
        .collect()
}

/// Precomputed data for embedding `F ≀ [V_d(G), V_d(G)]` into `[V_d(G), V_d(G)]`.
#[derive(Debug, Clone)]
pub struct WreathEmbedding {
    table: FiniteGroupTable,
    group: Arc<SSPresentation>,
    prefix: Vec<VElement>,
    cones: Vec<Vertex>,
}

impl WreathEmbedding {
    pub fn new(table: FiniteGroupTable, group: Arc<SSPresentation>) -> Self {
        let prefix = finite_prefix_action(&table, &group);
        let pos = table.positions();
        let cones = (0..table.order()).map(|x| spine_cone(pos[x] + 1)).collect();
        WreathEmbedding { table, group, prefix, cones }
    }

    pub fn table(&self) -> &FiniteGroupTable {
        &self.table
    }

    pub fn prefix_images(&self) -> &[VElement] {
        &self.prefix
    }

    /// The cone `w_x` carrying coordinate `x`.
    pub fn cone(&self, x: usize) -> &Vertex {
        &self.cones[x]
    }

    /// Image of `(f; v)`: the prefix action of `f` after the product of the
    /// coordinates `v[x]` placed in their cones. Every `v[x]` must lie in
    /// the commutator subgroup according to `q`.
    pub fn embed(&self, f: usize, v: &[VElement], q: &FinAbPresentation) -> Result<VElement> {
        if v.len() != self.table.order() {
            return Err(Error::MalformedElement(format!(
                "{} wreath coordinates for a group of order {}",
                v.len(),
                self.table.order()
            )));
        }
        if let Some(x) = v.iter().position(|e| !e.in_commutator(q)) {
            return Err(Error::NotInCommutator(x));
        }
        let mut pairs = Vec::new();
        for (x, e) in v.iter().enumerate() {
            let w = &self.cones[x];
            pairs.extend(e.pairs().iter().map(|p| ConePair {
                domain: w.concat(p.domain.letters()),
                range: w.concat(p.range.letters()),
                decoration: p.decoration.clone(),
            }));
        }
        let rest = cone_complement(self.group.degree(), &self.cones).expect("spine cones are incomparable");
        pairs.extend(rest.into_iter().map(|c| ConePair { domain: c.clone(), range: c, decoration: GroupWord::identity() }));
        let coords = VElement::from_pairs(self.group.clone(), pairs);
        self.prefix[f].compose(&coords)
    }
}

pub fn wreath_embed(
    table: &FiniteGroupTable,
    images: &[VElement],
    f: usize,
    q: &FinAbPresentation,
) -> Result<VElement> {
    let group = images.first().map(|e| e.group().clone()).ok_or_else(|| {
        Error::MalformedElement("no wreath coordinates".into())
    })?;
    WreathEmbedding::new(table.clone(), group).embed(f, images, q)
}

/// An element `(top; bottom)` of `F ≀ G` with `F` given by a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathElem {
    pub top: usize,
    pub bottom: Vec<GroupWord>,
}

impl WreathElem {
    pub fn mul(&self, other: &WreathElem, table: &FiniteGroupTable) -> WreathElem {
        let bottom = (0..table.order())
            .map(|x| self.bottom[table.mul(other.top, x)].mul(&other.bottom[x]))
            .collect();
        WreathElem { top: table.mul(self.top, other.top), bottom }
    }

    pub fn identity(table: &FiniteGroupTable) -> WreathElem {
        WreathElem { top: table.identity(), bottom: vec![GroupWord::identity(); table.order()] }
    }
}

const MAX_QUOTIENT_CLASSES: usize = 1 << 20;

/// The Kaloujnine–Krasner embedding `G ↪ (G/H) ≀ H` for `H` the kernel of
/// the abelianization map `mu: G → Q`.
#[derive(Debug, Clone)]
pub struct KaloujnineKrasner {
    mu: FinAbPresentation,
    classes: Vec<AbClass>,
    index: HashMap<AbClass, usize>,
    transversal: Vec<GroupWord>,
    table: FiniteGroupTable,
}

impl KaloujnineKrasner {
    /// Enumerates the image of `G` in `Q` by breadth-first search over
    /// words, trying generators in order with each inverse after its
    /// generator, so every transversal word is the lexicographically first
    /// among the shortest words in its class.
    pub fn new(num_gens: usize, mu: FinAbPresentation) -> Result<Self> {
        if !mu.group.is_finite() {
            return Err(Error::InfiniteQuotient(mu.group.rank));
        }
        let zero = mu.group.zero();
        let mut classes = vec![zero.clone()];
        let mut index = HashMap::from([(zero, 0)]);
        let mut transversal = vec![GroupWord::identity()];
        let tokens: Vec<Syllable> =
            (0..num_gens as u32).flat_map(|gen| [Syllable { gen, exp: 1 }, Syllable { gen, exp: -1 }]).collect();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for &t in &tokens {
                let step = mu.group.scale(&mu.gen_images[t.gen as usize], &t.exp.into());
                let c = mu.group.add(&classes[i], &step);
                if index.contains_key(&c) {
                    continue;
                }
                if classes.len() >= MAX_QUOTIENT_CLASSES {
                    return Err(Error::TransversalNotFound(classes.len()));
                }
                let mut w = transversal[i].clone();
                w.push(t);
                index.insert(c.clone(), classes.len());
                queue.push_back(classes.len());
                classes.push(c);
                transversal.push(w);
            }
        }
        let table = classes
            .iter()
            .map(|a| classes.iter().map(|b| index[&mu.group.add(a, b)]).collect())
            .collect();
        let table = FiniteGroupTable::new(table, 0)?;
        Ok(KaloujnineKrasner { mu, classes, index, transversal, table })
    }

    pub fn table(&self) -> &FiniteGroupTable {
        &self.table
    }

    pub fn transversal(&self) -> &[GroupWord] {
        &self.transversal
    }

    pub fn classes(&self) -> &[AbClass] {
        &self.classes
    }

    pub fn mu(&self) -> &FinAbPresentation {
        &self.mu
    }

    /// Index `[G : H]`.
    pub fn index(&self) -> usize {
        self.classes.len()
    }

    pub fn quotient_element(&self, g: &GroupWord) -> usize {
        self.index[&self.mu.class_of_word(g)]
    }

    /// `g ↦ (π(g); x ↦ t_{π(g)x}⁻¹ · g · t_x)`.
    pub fn embed(&self, g: &GroupWord) -> Result<WreathElem> {
        let top = self.quotient_element(g);
        let bottom = (0..self.index())
            .map(|x| {
                let h = self.transversal[self.table.mul(top, x)].inverse().mul(g).mul(&self.transversal[x]);
                if self.mu.class_of_word(&h).is_zero() {
                    Ok(h)
                } else {
                    Err(Error::NotInKernel(h.display(&self.mu.gen_names).to_string()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WreathElem { top, bottom })
    }
}

pub fn kk_embed(g: &SSPresentation, mu: &FinAbPresentation, w: &GroupWord) -> Result<WreathElem> {
    KaloujnineKrasner::new(g.num_gens(), mu.clone())?.embed(w)
}

/// The embedding of a finitely presented self-similar group into the
/// commutator subgroup of a Röver–Nekrashevych group with finite
/// abelianization.
#[derive(Debug, Clone)]
pub struct BhPipeline {
    /// Degree `d' = m·d` of the tree the group finally acts on.
    pub d_prime: usize,
    /// Duplication factor; 1 when `V_d(G)` already has finite abelianization.
    pub m: u64,
    /// The group acting on the `d'`-ary tree.
    pub group: Arc<SSPresentation>,
    /// Abelianization of `V_{d'}(G)`.
    pub q: FinAbPresentation,
    pub kk: KaloujnineKrasner,
    wreath: Option<WreathEmbedding>,
}

/// Summary of a pipeline run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineReport {
    pub d_prime: usize,
    pub m: u64,
    pub q: FinAbPresentation,
    pub index_h: usize,
    pub transversal: Vec<GroupWord>,
}

impl BhPipeline {
    pub fn new(g: &SSPresentation) -> Result<Self> {
        let (m, group) = if abelianize_v(g).group.is_finite() {
            (1, g.clone())
        } else {
            let m = find_even_m(g);
            (m, duplicate(g, m as usize))
        };
        let q = abelianize_v(&group);
        if !q.group.is_finite() {
            return Err(Error::AbelianizationStillInfinite(m));
        }
        let group = Arc::new(group);
        let kk = KaloujnineKrasner::new(group.num_gens(), q.clone())?;
        let wreath = (!q.group.is_trivial()).then(|| WreathEmbedding::new(kk.table().clone(), group.clone()));
        Ok(BhPipeline { d_prime: group.degree().get(), m, group, q, kk, wreath })
    }

    pub fn embed(&self, g: &GroupWord) -> Result<VElement> {
        self.group.check_word(g)?;
        let Some(wreath) = &self.wreath else {
            return Ok(VElement::single_cone(self.group.clone(), g.clone()));
        };
        let w = self.kk.embed(g)?;
        let coords: Vec<VElement> =
            w.bottom.into_iter().map(|h| VElement::single_cone(self.group.clone(), h)).collect();
        wreath.embed(w.top, &coords, &self.q)
    }

    pub fn report(&self) -> PipelineReport {
        PipelineReport {
            d_prime: self.d_prime,
            m: self.m,
            q: self.q.clone(),
            index_h: self.kk.index(),
            transversal: self.kk.transversal().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::abelianize_v;
    use crate::fixtures;
    use crate::ssgroup::{Budget, Equality};
    use crate::tree::Degree;

    fn v(l: &[u32]) -> Vertex {
        Vertex::from_letters(l.to_vec())
    }

    fn trivial(d: usize) -> Arc<SSPresentation> {
        Arc::new(SSPresentation::trivial(Degree::new(d).unwrap()))
    }

    #[test]
    fn tables_validate() {
        assert_eq!(FiniteGroupTable::symmetric3().order(), 6);
        assert!(FiniteGroupTable::new(vec![vec![0, 1], vec![1, 1]], 0).is_err());
        assert!(FiniteGroupTable::new(vec![vec![0, 1], vec![1, 0]], 1).is_err());
        let s3 = FiniteGroupTable::symmetric3();
        for a in 0..6 {
            assert_eq!(s3.mul(a, s3.inverse(a)), s3.identity());
        }
    }

    #[test]
    fn into_cone_examples() {
        let t = trivial(2);
        let id = VElement::identity(t.clone());
        let e = into_cone(&id, &v(&[1, 2]));
        assert_eq!(e.equal_bounded(&id, 6, Budget::default()).unwrap(), Equality::Equal);

        let swap = VElement::new(t.clone(), vec![v(&[1]), v(&[2])], vec![v(&[2]), v(&[1])], vec![GroupWord::identity(); 2]).unwrap();
        let e = into_cone(&swap, &v(&[1, 2]));
        assert_eq!(e.apply(&v(&[1, 2, 1, 2])).unwrap(), v(&[1, 2, 2, 2]));
        assert_eq!(e.apply(&v(&[1, 2, 2])).unwrap(), v(&[1, 2, 1]));
        assert_eq!(e.apply(&v(&[1, 1, 2])).unwrap(), v(&[1, 1, 2]));
        assert_eq!(e.apply(&v(&[2, 1])).unwrap(), v(&[2, 1]));

        let f = into_cone(&swap, &v(&[2]));
        let ef = e.compose(&f).unwrap();
        let fe = f.compose(&e).unwrap();
        assert_eq!(ef.equal_bounded(&fe, 8, Budget::default()).unwrap(), Equality::Equal);
    }

    #[test]
    fn prefix_action_examples() {
        let t = trivial(2);
        let z2 = finite_prefix_action(&FiniteGroupTable::cyclic(2), &t);
        let g = &z2[1];
        assert_eq!(g.apply(&v(&[1, 2])).unwrap(), v(&[1, 1, 2]));
        assert_eq!(g.apply(&v(&[1, 1, 2])).unwrap(), v(&[1, 2]));
        assert_eq!(g.apply(&v(&[1, 1, 1, 2])).unwrap(), v(&[1, 1, 1, 1, 2]));
        assert_eq!(g.apply(&v(&[1, 1, 1, 1, 2])).unwrap(), v(&[1, 1, 1, 2]));
        assert_eq!(g.apply(&v(&[2])).unwrap(), v(&[2]));

        let z3 = finite_prefix_action(&FiniteGroupTable::cyclic(3), &t);
        let g = &z3[1];
        assert_eq!(g.apply(&v(&[1, 2])).unwrap(), v(&[1, 1, 2]));
        assert_eq!(g.apply(&v(&[1, 1, 2])).unwrap(), v(&[1, 1, 1, 2]));
        assert_eq!(g.apply(&v(&[1, 1, 1, 2])).unwrap(), v(&[1, 2]));
        // no parity swap for a 3-cycle
        assert_eq!(g.apply(&v(&[1, 1, 1, 1, 2])).unwrap(), v(&[1, 1, 1, 1, 2]));

        let one = finite_prefix_action(&FiniteGroupTable::cyclic(1), &t);
        assert_eq!(one.len(), 1);
        let id = VElement::identity(t.clone());
        assert_eq!(one[0].equal_bounded(&id, 8, Budget::default()).unwrap(), Equality::Equal);
    }

    #[test]
    fn prefix_action_lands_in_commutator_for_odd_degree() {
        let t3 = trivial(3);
        let q = abelianize_v(&t3);
        for e in finite_prefix_action(&FiniteGroupTable::cyclic(2), &t3) {
            assert!(e.in_commutator(&q));
        }
    }

    #[test]
    fn wreath_embed_rejects_non_commutators() {
        let dinf = Arc::new(fixtures::dinf());
        let q = abelianize_v(&dinf);
        let a = VElement::single_cone(dinf.clone(), dinf.parse_word("a").unwrap());
        let id = VElement::identity(dinf.clone());
        let table = FiniteGroupTable::cyclic(2);
        assert_eq!(wreath_embed(&table, &[id.clone(), a], 1, &q), Err(Error::NotInCommutator(1)));
        let e = wreath_embed(&table, &[id.clone(), id.clone()], 0, &q).unwrap();
        assert_eq!(e.equal_bounded(&id, 8, Budget::default()).unwrap(), Equality::Equal);
    }

    #[test]
    fn kk_on_dinf() {
        let dinf = fixtures::dinf();
        let q = abelianize_v(&dinf);
        let kk = KaloujnineKrasner::new(dinf.num_gens(), q.clone()).unwrap();
        assert_eq!(kk.index(), 2);
        assert_eq!(kk.transversal(), &[GroupWord::identity(), dinf.parse_word("a").unwrap()]);
        let w = kk.embed(&dinf.parse_word("a").unwrap()).unwrap();
        assert_eq!(w, WreathElem { top: 1, bottom: vec![GroupWord::identity(), dinf.parse_word("a a").unwrap()] });
        let w = kk_embed(&dinf, &q, &dinf.parse_word("s").unwrap()).unwrap();
        assert_eq!(
            w,
            WreathElem { top: 1, bottom: vec![dinf.parse_word("a^-1 s").unwrap(), dinf.parse_word("s a").unwrap()] }
        );
    }

    #[test]
    fn kk_with_trivial_quotient() {
        let gr = fixtures::grigorchuk();
        let q = abelianize_v(&gr);
        let g = gr.parse_word("a b a c").unwrap();
        let w = kk_embed(&gr, &q, &g).unwrap();
        assert_eq!(w, WreathElem { top: 0, bottom: vec![g] });
    }

    #[test]
    fn kk_rejects_infinite_quotient() {
        let odo = fixtures::odometer();
        let q = abelianize_v(&odo);
        assert!(matches!(kk_embed(&odo, &q, &GroupWord::identity()), Err(Error::InfiniteQuotient(1))));
    }

    #[test]
    fn pipeline_shapes() {
        let p = BhPipeline::new(&fixtures::dinf()).unwrap();
        assert_eq!((p.d_prime, p.m, p.kk.index()), (2, 1, 2));
        let p = BhPipeline::new(&fixtures::odometer()).unwrap();
        assert_eq!((p.d_prime, p.m), (4, 2));
        assert!(p.q.group.is_trivial());
        let a = p.group.parse_word("a").unwrap();
        assert_eq!(p.embed(&a).unwrap(), VElement::single_cone(p.group.clone(), a));
        let p = BhPipeline::new(&fixtures::grigorchuk()).unwrap();
        assert_eq!((p.d_prime, p.m), (2, 1));
        assert!(p.q.group.is_trivial());
    }
}
