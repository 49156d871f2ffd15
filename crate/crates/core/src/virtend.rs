//! Self-similar actions of `R^n ⋊ GL_n(R)` for `R = ℤ[1/m]` coming from the
//! virtual endomorphism `φ(v) = v/p` defined on `(pR)^n`.
//!
//! Vertices of the tree are sequences over the transversal `T = {0,…,p−1}^n`.
//! A letter `ℓ ∈ 1..=p^n` encodes the digits of `ℓ − 1` in base `p`, the first
//! coordinate being the most significant. A vertex `t₁t₂…t_k` stands for the
//! coset `t₁ + p·t₂ + … + p^{k−1}·t_k + p^k R^n`; a pure translation
//! `(a, 1)` acting on the zero path spells out the base-`p` digits of `a`.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abelian::IntMatrix;
use crate::error::{Error, Result};
use crate::ssgroup::SSPresentation;
use crate::tree::{Degree, Vertex};
use crate::word::GroupWord;

/// `num / m^exp`, normalized so that `m ∤ num` whenever `exp > 0`, and
/// `exp = 0` for zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    pub num: BigInt,
    pub exp: u32,
}

impl RingElem {
    pub fn zero() -> Self {
        RingElem { num: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        RingElem::int(1)
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        RingElem { num: n.into(), exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// The ring `ℤ[1/m]`; `m = 1` gives `ℤ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    m: u64,
    primes: Vec<u64>,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

impl Ring {
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadRing("m must be at least 1".into()));
        }
        Ok(Ring { m, primes: prime_factors(m) })
    }

    pub fn integers() -> Self {
        Ring { m: 1, primes: Vec::new() }
    }

    #[inline]
    pub fn m(&self) -> u64 {
        self.m
    }

    fn m_pow(&self, e: u32) -> BigInt {
        num_traits::pow(BigInt::from(self.m), e as usize)
    }

    /// Builds `num / m^exp` in normal form.
    pub fn elem(&self, num: impl Into<BigInt>, exp: u32) -> RingElem {
        let mut num = num.into();
        let mut exp = if self.m == 1 { 0 } else { exp };
        if self.m == 1 && exp == 0 {
            return RingElem { num, exp };
        }
        if num.is_zero() {
            return RingElem::zero();
        }
        let m = BigInt::from(self.m);
        while exp > 0 {
            let (q, r) = num.div_rem(&m);
            if !r.is_zero() {
                break;
            }
            num = q;
            exp -= 1;
        }
        RingElem { num, exp }
    }

    pub fn normalize(&self, x: &RingElem) -> RingElem {
        self.elem(x.num.clone(), x.exp)
    }

    pub fn add(&self, x: &RingElem, y: &RingElem) -> RingElem {
        let e = x.exp.max(y.exp);
        let num = &x.num * self.m_pow(e - x.exp) + &y.num * self.m_pow(e - y.exp);
        self.elem(num, e)
    }

    pub fn neg(&self, x: &RingElem) -> RingElem {
        RingElem { num: -&x.num, exp: x.exp }
    }

    pub fn sub(&self, x: &RingElem, y: &RingElem) -> RingElem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &RingElem, y: &RingElem) -> RingElem {
        self.elem(&x.num * &y.num, x.exp + y.exp)
    }

    /// Units of `ℤ[1/m]` are `±` products of primes dividing `m`.
    pub fn is_unit(&self, x: &RingElem) -> bool {
        self.integer_is_unit(&x.num)
    }

    fn integer_is_unit(&self, n: &BigInt) -> bool {
        if n.is_zero() {
            return false;
        }
        let mut n = n.abs();
        for &q in &self.primes {
            let q = BigInt::from(q);
            while (&n % &q).is_zero() {
                n /= &q;
            }
        }
        n.is_one()
    }

    /// `1/n` for an integer unit `n`.
    fn integer_inverse(&self, n: &BigInt) -> Option<RingElem> {
        if !self.integer_is_unit(n) {
            return None;
        }
        let mut e = 0;
        let mut mp = BigInt::one();
        while !(&mp % n).is_zero() {
            mp *= self.m;
            e += 1;
        }
        Some(self.elem(mp / n, e))
    }

    pub fn inverse(&self, x: &RingElem) -> Option<RingElem> {
        let inv = self.integer_inverse(&x.num)?;
        Some(self.mul(&inv, &RingElem::int(self.m_pow(x.exp))))
    }

    /// `v_p` of `x`; `None` for zero. Requires `p ∤ m`.
    pub fn p_valuation(&self, x: &RingElem, p: u64) -> Option<u32> {
        if x.is_zero() {
            return None;
        }
        let p = BigInt::from(p);
        let mut n = x.num.abs();
        let mut v = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            v += 1;
        }
        Some(v)
    }

    /// Image of `x` in `ℤ/p`, in `0..p`. Requires `p ∤ m`.
    pub fn mod_p(&self, x: &RingElem, p: u64) -> u64 {
        let pb = BigInt::from(p);
        let m_inv = BigInt::from(self.m).modpow(&BigInt::from(p - 2), &pb);
        let r = x.num.mod_floor(&pb) * m_inv.modpow(&BigInt::from(x.exp), &pb);
        r.mod_floor(&pb).to_u64().expect("residue fits")
    }

    /// `x / p`, assuming `p | x` in `R`.
    fn div_p(&self, x: &RingElem, p: u64) -> RingElem {
        let (q, r) = x.num.div_rem(&BigInt::from(p));
        debug_assert!(r.is_zero(), "{x:?} not divisible by {p}");
        self.elem(q, x.exp)
    }

    pub fn display<'a>(&'a self, x: &'a RingElem) -> RingDisplay<'a> {
        RingDisplay { ring: self, x }
    }
}

pub struct RingDisplay<'a> {
    ring: &'a Ring,
    x: &'a RingElem,
}

impl fmt::Display for RingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.exp == 0 {
            write!(f, "{}", self.x.num)
        } else {
            write!(f, "{}/{}", self.x.num, self.ring.m_pow(self.x.exp))
        }
    }
}

/// Ring `ℤ[1/m]`, prime `p ∤ m`, dimension `n`; the tree has degree `p^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtEndSpec {
    pub ring: Ring,
    pub p: u64,
    pub n: usize,
}

impl VirtEndSpec {
    pub fn new(m: u64, p: u64, n: usize) -> Result<Self> {
        let ring = Ring::new(m)?;
        if !is_prime(p) {
            return Err(Error::BadRing(format!("p = {p} is not prime")));
        }
        if m.is_multiple_of(p) {
            return Err(Error::BadRing(format!("p = {p} divides m = {m}")));
        }
        if n == 0 {
            return Err(Error::BadRing("dimension must be at least 1".into()));
        }
        let d = (p as u128).checked_pow(n as u32).filter(|&d| d <= u32::MAX as u128);
        if d.is_none() {
            return Err(Error::BadRing(format!("degree {p}^{n} is too large")));
        }
        Ok(VirtEndSpec { ring, p, n })
    }

    pub fn degree(&self) -> Degree {
        Degree::new(self.p.pow(self.n as u32) as usize).expect("p ≥ 2")
    }

    /// Digits of `letter − 1` in base `p`, most significant first.
    pub fn decode_letter(&self, letter: u32) -> Result<Vec<u64>> {
        let d = self.degree().get();
        if letter == 0 || letter as usize > d {
            return Err(Error::BadLetter { letter, degree: d });
        }
        let mut x = (letter - 1) as u64;
        let mut t = vec![0; self.n];
        for slot in t.iter_mut().rev() {
            *slot = x % self.p;
            x /= self.p;
        }
        Ok(t)
    }

    pub fn encode_letter(&self, t: &[u64]) -> u32 {
        (t.iter().fold(0, |acc, &x| acc * self.p + x) + 1) as u32
    }
}

/// `(a, γ) ∈ R^n ⋊ GL_n(R)` acting by `v ↦ a + γv`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineElem {
    pub a: Vec<RingElem>,
    pub gamma: Vec<Vec<RingElem>>,
}

/// Integer matrix `m^E·γ` together with `E`.
fn clear_denominators(ring: &Ring, gamma: &[Vec<RingElem>]) -> (IntMatrix, u32) {
    let n = gamma.len();
    let e = gamma.iter().flatten().map(|x| x.exp).max().unwrap_or(0);
    let rows: Vec<Vec<BigInt>> = gamma
        .iter()
        .map(|row| row.iter().map(|x| &x.num * ring.m_pow(e - x.exp)).collect())
        .collect();
    (IntMatrix::from_rows(n, &rows), e)
}

fn minor(mat: &IntMatrix, skip_row: usize, skip_col: usize) -> IntMatrix {
    let n = mat.rows();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .filter(|&i| i != skip_row)
        .map(|i| (0..n).filter(|&j| j != skip_col).map(|j| mat.get(i, j).clone()).collect())
        .collect();
    IntMatrix::from_rows(n - 1, &rows)
}

impl AffineElem {
    pub fn new(ring: &Ring, a: Vec<RingElem>, gamma: Vec<Vec<RingElem>>) -> Result<Self> {
        let n = a.len();
        if gamma.len() != n || gamma.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedElement(format!("translation of length {n} needs an {n}×{n} matrix")));
        }
        let a = a.iter().map(|x| ring.normalize(x)).collect();
        let gamma: Vec<Vec<RingElem>> = gamma.iter().map(|r| r.iter().map(|x| ring.normalize(x)).collect()).collect();
        let det = Self::det_of(ring, &gamma);
        if !ring.is_unit(&det) {
            return Err(Error::NotInvertible(format!("determinant {} is not a unit", ring.display(&det))));
        }
        Ok(AffineElem { a, gamma })
    }

    pub fn identity(n: usize) -> Self {
        AffineElem::translation(vec![RingElem::zero(); n])
    }

    pub fn translation(a: Vec<RingElem>) -> Self {
        let n = a.len();
        let gamma = (0..n)
            .map(|i| (0..n).map(|j| if i == j { RingElem::one() } else { RingElem::zero() }).collect())
            .collect();
        AffineElem { a, gamma }
    }

    /// `(0, γ)`.
    pub fn linear(ring: &Ring, gamma: Vec<Vec<RingElem>>) -> Result<Self> {
        let n = gamma.len();
        AffineElem::new(ring, vec![RingElem::zero(); n], gamma)
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineElem::identity(self.dim())
    }

    fn det_of(ring: &Ring, gamma: &[Vec<RingElem>]) -> RingElem {
        let (int, e) = clear_denominators(ring, gamma);
        ring.elem(int.determinant(), e * gamma.len() as u32)
    }

    pub fn determinant(&self, ring: &Ring) -> RingElem {
        Self::det_of(ring, &self.gamma)
    }

    /// `γ·v`.
    pub fn apply_linear(&self, ring: &Ring, v: &[RingElem]) -> Vec<RingElem> {
        self.gamma
            .iter()
            .map(|row| row.iter().zip(v).fold(RingElem::zero(), |acc, (g, x)| ring.add(&acc, &ring.mul(g, x))))
            .collect()
    }

    /// `a + γ·v`.
    pub fn apply(&self, ring: &Ring, v: &[RingElem]) -> Vec<RingElem> {
        self.apply_linear(ring, v).iter().zip(&self.a).map(|(x, a)| ring.add(x, a)).collect()
    }

    /// `(a₁, γ₁)(a₂, γ₂) = (a₁ + γ₁a₂, γ₁γ₂)`.
    pub fn mul(&self, other: &AffineElem, ring: &Ring) -> AffineElem {
        let n = self.dim();
        let a = self.apply(ring, &other.a);
        let gamma = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(RingElem::zero(), |acc, k| {
                            ring.add(&acc, &ring.mul(&self.gamma[i][k], &other.gamma[k][j]))
                        })
                    })
                    .collect()
            })
            .collect();
        AffineElem { a, gamma }
    }

    pub fn inverse(&self, ring: &Ring) -> AffineElem {
        let n = self.dim();
        let (int, e) = clear_denominators(ring, &self.gamma);
        let det = int.determinant();
        let det_inv = ring.integer_inverse(&det).expect("validated on construction");
        // γ⁻¹ = m^E · adj(m^E γ) / det(m^E γ)
        let scale = ring.mul(&det_inv, &RingElem::int(ring.m_pow(e)));
        let gamma_inv: Vec<Vec<RingElem>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = if n == 1 { BigInt::one() } else { minor(&int, j, i).determinant() };
                        let c = if (i + j) % 2 == 1 { -c } else { c };
                        ring.mul(&scale, &RingElem::int(c))
                    })
                    .collect()
            })
            .collect();
        let lin = AffineElem { a: vec![RingElem::zero(); n], gamma: gamma_inv };
        let a = lin.apply_linear(ring, &self.a).iter().map(|x| ring.neg(x)).collect();
        AffineElem { a, gamma: lin.gamma }
    }

    pub fn pow(&self, k: &BigInt, ring: &Ring) -> AffineElem {
        let mut base = if k.is_negative() { self.inverse(ring) } else { self.clone() };
        let mut k = k.abs();
        let mut acc = AffineElem::identity(self.dim());
        let two = BigInt::from(2);
        while !k.is_zero() {
            if k.is_odd() {
                acc = acc.mul(&base, ring);
            }
            base = base.mul(&base, ring);
            k /= &two;
        }
        acc
    }
}

/// First-level state: `t' = (a + γt) mod p`, and the state at `t` is
/// `((a + γt − t')/p, γ)`.
pub fn affine_state(spec: &VirtEndSpec, e: &AffineElem, t: &[u64]) -> (Vec<u64>, AffineElem) {
    let ring = &spec.ring;
    let tv: Vec<RingElem> = t.iter().map(|&x| RingElem::int(x)).collect();
    let image = e.apply(ring, &tv);
    let t_new: Vec<u64> = image.iter().map(|x| ring.mod_p(x, spec.p)).collect();
    let a = image
        .iter()
        .zip(&t_new)
        .map(|(x, &r)| ring.div_p(&ring.sub(x, &RingElem::int(r)), spec.p))
        .collect();
    (t_new, AffineElem { a, gamma: e.gamma.clone() })
}

pub fn affine_act(spec: &VirtEndSpec, e: &AffineElem, v: &Vertex) -> Result<Vertex> {
    let mut state = e.clone();
    let mut out = Vec::with_capacity(v.len());
    for &letter in v.letters() {
        let t = spec.decode_letter(letter)?;
        let (t_new, next) = affine_state(spec, &state, &t);
        out.push(spec.encode_letter(&t_new));
        state = next;
    }
    Ok(Vertex::from_letters(out))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Faithfulness {
    Moved(Vertex),
    Unknown,
}

const MAX_FIXED_VERTICES: usize = 1 << 20;

/// Breadth-first search for the lexicographically first moved vertex of
/// minimal depth. Subtrees below a fixed vertex with trivial state are skipped.
pub fn faithfulness_search(spec: &VirtEndSpec, e: &AffineElem, max_depth: usize) -> Result<Faithfulness> {
    if e.is_identity() {
        return Err(Error::IdentityInput);
    }
    let d = spec.degree().get() as u32;
    let mut level: VecDeque<(Vertex, AffineElem)> = VecDeque::from([(Vertex::root(), e.clone())]);
    for _ in 0..max_depth {
        let mut next = VecDeque::new();
        for (v, state) in level {
            for letter in 1..=d {
                let t = spec.decode_letter(letter)?;
                let (t_new, s) = affine_state(spec, &state, &t);
                let child = v.child(letter);
                if t_new != t {
                    return Ok(Faithfulness::Moved(child));
                }
                if !s.is_identity() {
                    if next.len() >= MAX_FIXED_VERTICES {
                        return Ok(Faithfulness::Unknown);
                    }
                    next.push_back((child, s));
                }
            }
        }
        if next.is_empty() {
            // every state became trivial: the element is trivial on the tree
            return Ok(Faithfulness::Unknown);
        }
        level = next;
    }
    Ok(Faithfulness::Unknown)
}

/// Largest `k` with `a ∈ (p^k R)^n`; `None` for the zero vector.
pub fn properness_valuation(spec: &VirtEndSpec, a: &[RingElem]) -> Option<u32> {
    a.iter().filter_map(|x| spec.ring.p_valuation(x, spec.p)).min()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub generator: String,
    pub vertex: Vertex,
    pub affine: Vertex,
    pub symbolic: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub depth: usize,
    pub vertices_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn first_mismatch_depth(&self) -> Option<usize> {
        self.mismatches.iter().map(|m| m.vertex.len()).min()
    }
}

/// Compares the affine action of each named generator with the symbolic
/// action of the generator of the same name on every vertex of depth
/// `1..=depth`.
pub fn crosscheck_symbolic(
    spec: &VirtEndSpec,
    gens: &[(String, AffineElem)],
    sym: &SSPresentation,
    depth: usize,
) -> Result<CrosscheckReport> {
    let d = spec.degree();
    if sym.degree() != d {
        return Err(Error::GroupMismatch);
    }
    let mut report = CrosscheckReport { depth, vertices_checked: 0, mismatches: Vec::new() };
    for (name, e) in gens {
        let word = GroupWord::generator(sym.gen_index(name)?);
        for len in 1..=depth {
            for v in Vertex::all_of_length(d, len) {
                let affine = affine_act(spec, e, &v)?;
                let symbolic = sym.act(&word, &v)?;
                report.vertices_checked += 1;
                if affine != symbolic {
                    report.mismatches.push(Mismatch { generator: name.clone(), vertex: v, affine, symbolic });
                }
            }
        }
    }
    Ok(report)
}

/// Values of the finitely many generators in the presentation of
/// `ℤ[1/m]^n ⋊ GL_n(ℤ[1/m])`: translations `x0[j] = e_j`, the diagonal
/// matrices `gamma_j[j]` with `1/m` in entry `j`, and further matrix
/// generators `gl_gens`.
#[derive(Debug, Clone)]
pub struct RelatorAssignment {
    pub x0: Vec<AffineElem>,
    pub gamma_j: Vec<AffineElem>,
    pub gl_gens: Vec<(String, AffineElem)>,
}

impl RelatorAssignment {
    pub fn standard(spec: &VirtEndSpec, gl_gens: Vec<(String, AffineElem)>) -> Result<Self> {
        let ring = &spec.ring;
        if ring.m() < 2 {
            return Err(Error::BadRing("relator families need m ≥ 2".into()));
        }
        let n = spec.n;
        let unit = |j: usize| -> Vec<RingElem> {
            (0..n).map(|i| if i == j { RingElem::one() } else { RingElem::zero() }).collect()
        };
        let x0 = (0..n).map(|j| AffineElem::translation(unit(j))).collect();
        let gamma_j = (0..n)
            .map(|j| {
                let mut g = AffineElem::identity(n).gamma;
                g[j][j] = ring.elem(1, 1);
                AffineElem::linear(ring, g)
            })
            .collect::<Result<_>>()?;
        Ok(RelatorAssignment { x0, gamma_j, gl_gens })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorCheck {
    pub family: u8,
    pub label: String,
    pub identity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorReport {
    pub checks: Vec<RelatorCheck>,
}

impl RelatorReport {
    pub fn all_identity(&self) -> bool {
        self.checks.iter().all(|c| c.identity)
    }
}

/// Evaluates the relator families
/// (1) `γ_j x0(j)^m γ_j⁻¹ = x0(j)`,
/// (2) `γ_j` and `x0(j)` commute with `γ_ℓ` and `x0(ℓ)` for `j ≠ ℓ`,
/// (3) `γ x0(j) γ⁻¹ = γ*x0(j)` for every matrix generator `γ`,
/// where `γ*x0(j)` is written as a product of `x_k(ℓ)^c = γ_ℓ^k x0(ℓ)^c γ_ℓ^{-k}`
/// over the entries `c/m^k` of column `j` of `γ`.
pub fn relator_verify(spec: &VirtEndSpec, asg: &RelatorAssignment) -> Result<RelatorReport> {
    let ring = &spec.ring;
    let n = spec.n;
    if asg.x0.len() != n || asg.gamma_j.len() != n {
        return Err(Error::MalformedElement(format!("assignment needs {n} translations and {n} diagonal generators")));
    }
    let conj = |g: &AffineElem, x: &AffineElem| g.mul(x, ring).mul(&g.inverse(ring), ring);
    let commutator = |x: &AffineElem, y: &AffineElem| {
        x.mul(y, ring).mul(&x.inverse(ring), ring).mul(&y.inverse(ring), ring)
    };
    let mut checks = Vec::new();
    let m = BigInt::from(ring.m());

    for j in 0..n {
        let lhs = conj(&asg.gamma_j[j], &asg.x0[j].pow(&m, ring));
        let rel = lhs.mul(&asg.x0[j].inverse(ring), ring);
        checks.push(RelatorCheck { family: 1, label: format!("g{0} x{0}^m g{0}^-1 = x{0}", j + 1), identity: rel.is_identity() });
    }

    for j in 0..n {
        for l in j + 1..n {
            let left = [("g", &asg.gamma_j[j]), ("x", &asg.x0[j])];
            let right = [("g", &asg.gamma_j[l]), ("x", &asg.x0[l])];
            for (ln, le) in left {
                for (rn, re) in right {
                    checks.push(RelatorCheck {
                        family: 2,
                        label: format!("[{ln}{}, {rn}{}]", j + 1, l + 1),
                        identity: commutator(le, re).is_identity(),
                    });
                }
            }
        }
    }

    let mut gens: Vec<(String, &AffineElem)> =
        asg.gamma_j.iter().enumerate().map(|(j, g)| (format!("g{}", j + 1), g)).collect();
    gens.extend(asg.gl_gens.iter().map(|(name, g)| (name.clone(), g)));
    for (name, g) in gens {
        for j in 0..n {
            let lhs = conj(g, &asg.x0[j]);
            let mut rhs = AffineElem::identity(n);
            for l in 0..n {
                let c = &g.gamma[l][j];
                let mut x = asg.x0[l].pow(&c.num, ring);
                for _ in 0..c.exp {
                    x = conj(&asg.gamma_j[l], &x);
                }
                rhs = rhs.mul(&x, ring);
            }
            let rel = lhs.mul(&rhs.inverse(ring), ring);
            checks.push(RelatorCheck {
                family: 3,
                label: format!("{name} x{0} {name}^-1 = {name}*x{0}", j + 1),
                identity: rel.is_identity(),
            });
        }
    }
    Ok(RelatorReport { checks })
}
