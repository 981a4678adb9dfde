//! The Lambrechts–Stanley CDGA G_A(U) = (A^{⊗U} ⊗ e_n^∨(U)) / (ι_i(a)ω_ij = ι_j(a)ω_ij)
//! with dω_ij = ι_ij(Δ_A).
//!
//! Normal form: an admissible monomial in the ω's, plus one A-basis label
//! per connected block, attached to the block's minimum vertex. The
//! canonical word of a basis element is
//!
//!   ι_{m_1}(a_1) ⋯ ι_{m_r}(a_r) · α_{s_1} ⋯ α_{s_t} · ω_{e_1} ⋯ ω_{e_q}
//!
//! with blocks in order of their minima, α's (framed model only) by vertex
//! and ω's in admissible order. Unit labels are omitted from words.

pub mod cocompose;
pub mod s3;

use crate::combination::Combination;
use crate::en_dual::{admissible_monomials, blocks, normal_form, Edge};
use crate::error::Error;
use crate::linalg::{betti_numbers, CochainComplex, Poincare, SparseMatrix, SparseVec};
use crate::pd_algebra::PdAlgebra;
use crate::rational::{one, Rational};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

/// Generators of G_A(U) (and of the framed model).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    Iota(u8, u16),
    Alpha(u8),
    Omega(u8, u8),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LsBasis {
    pub edges: Vec<Edge>,
    /// One A-basis index per block, blocks ordered by minimum vertex.
    pub labels: Vec<u16>,
    /// Bitmask of vertices carrying α (framed model only).
    pub alphas: u32,
}

pub type LsElement = Combination<LsBasis>;

/// Ambient data of G_A(U) with U = {0, …, k−1}. The same machinery serves
/// e_n^∨(U) (label algebra = point, zero differential) and the framed model.
#[derive(Clone, Copy, Debug)]
pub struct LsModel<'a> {
    pub alg: &'a PdAlgebra,
    pub n: i32,
    pub k: usize,
    pub framed: bool,
    zero_differential: bool,
}

impl<'a> LsModel<'a> {
    pub fn new(alg: &'a PdAlgebra, k: usize) -> Self {
        LsModel { alg, n: alg.dim(), k, framed: false, zero_differential: false }
    }

    /// e_n^∨(k), as a model with trivial labels and d = 0.
    pub fn en(n: i32, k: usize) -> LsModel<'static> {
        LsModel { alg: crate::pd_algebra::point_ref(), n, k, framed: false, zero_differential: true }
    }

    pub fn framed(alg: &'a PdAlgebra, k: usize) -> Self {
        LsModel { alg, n: alg.dim(), k, framed: true, zero_differential: false }
    }

    /// fe_n^∨(k): e_n^∨(k) with α generators, d = 0.
    pub fn framed_en(n: i32, k: usize) -> LsModel<'static> {
        LsModel { alg: crate::pd_algebra::point_ref(), n, k, framed: true, zero_differential: true }
    }

    pub fn with_arity(&self, k: usize) -> Self {
        LsModel { k, ..*self }
    }

    pub fn gen_degree(&self, g: &Gen) -> i32 {
        match g {
            Gen::Iota(_, a) => self.alg.degree(*a as usize),
            Gen::Alpha(_) => 1,
            Gen::Omega(..) => self.n - 1,
        }
    }

    pub fn word_degree(&self, w: &[Gen]) -> i32 {
        w.iter().map(|g| self.gen_degree(g)).sum()
    }

    pub fn degree(&self, b: &LsBasis) -> i64 {
        let labels: i32 = b.labels.iter().map(|a| self.alg.degree(*a as usize)).sum();
        (b.edges.len() as i64) * (self.n as i64 - 1) + labels as i64 + b.alphas.count_ones() as i64
    }

    pub fn word(&self, b: &LsBasis) -> Vec<Gen> {
        let blk = blocks(self.k, &b.edges);
        let mut mins = vec![usize::MAX; b.labels.len()];
        for v in (0..self.k).rev() {
            mins[blk[v]] = v;
        }
        let unit = self.alg.unit() as u16;
        let mut w: Vec<Gen> = Vec::new();
        for (blk_id, a) in b.labels.iter().enumerate() {
            if *a != unit {
                w.push(Gen::Iota(mins[blk_id] as u8, *a));
            }
        }
        for v in 0..self.k {
            if b.alphas & (1 << v) != 0 {
                w.push(Gen::Alpha(v as u8));
            }
        }
        w.extend(b.edges.iter().map(|(i, j)| Gen::Omega(*i, *j)));
        w
    }

    /// The basis element 1 (all labels unit, no edges).
    pub fn unit(&self) -> LsBasis {
        LsBasis { edges: vec![], labels: vec![self.alg.unit() as u16; self.k], alphas: 0 }
    }

    /// Reduces an arbitrary word in the generators to normal form.
    pub fn reduce(&self, word: &[Gen]) -> Result<LsElement, Error> {
        for g in word {
            let vs: &[u8] = match g {
                Gen::Iota(v, a) => {
                    if *a as usize >= self.alg.size() {
                        return Err(Error::InvalidArgument(format!("label index {a} outside the algebra basis")));
                    }
                    &[*v]
                }
                Gen::Alpha(v) => {
                    if !self.framed {
                        return Err(Error::InvalidArgument("α generators exist only in the framed model".into()));
                    }
                    &[*v]
                }
                Gen::Omega(u, v) => {
                    if u == v {
                        return Err(Error::InvalidArgument(format!("ω_{u}{v} is not a generator")));
                    }
                    &[*u, *v]
                }
            };
            for v in vs {
                if *v as usize >= self.k {
                    return Err(Error::VertexOutOfRange { vertex: *v as usize, size: self.k });
                }
            }
        }
        Ok(self.reduce_unchecked(word))
    }

    pub(crate) fn reduce_unchecked(&self, word: &[Gen]) -> LsElement {
        let class = |g: &Gen| match g {
            Gen::Iota(..) => 0,
            Gen::Alpha(_) => 1,
            Gen::Omega(..) => 2,
        };
        // Stable partition into labels | α's | ω's, with Koszul signs.
        let mut odd = false;
        for i in 0..word.len() {
            for j in i + 1..word.len() {
                if class(&word[i]) > class(&word[j]) && (self.gen_degree(&word[i]) * self.gen_degree(&word[j])) % 2 != 0 {
                    odd = !odd;
                }
            }
        }
        let unit = self.alg.unit() as u16;
        let labels: Vec<(u8, u16)> = word
            .iter()
            .filter_map(|g| match g {
                Gen::Iota(v, a) if *a != unit => Some((*v, *a)),
                _ => None,
            })
            .collect();
        let mut alphas: Vec<u8> = word.iter().filter_map(|g| if let Gen::Alpha(v) = g { Some(*v) } else { None }).collect();
        let omegas: Vec<Edge> = word.iter().filter_map(|g| if let Gen::Omega(u, v) = g { Some((*u, *v)) } else { None }).collect();

        for i in 1..alphas.len() {
            let mut j = i;
            while j > 0 && alphas[j - 1] > alphas[j] {
                alphas.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if alphas.windows(2).any(|w| w[0] == w[1]) {
            return LsElement::new();
        }
        let alpha_mask = alphas.iter().fold(0u32, |m, v| m | (1 << v));

        let mut out = LsElement::new();
        for (edges, c) in normal_form(self.n, &omegas) {
            let blk = blocks(self.k, &edges);
            let nb = blk.iter().max().map_or(0, |m| m + 1);
            // Labels migrate to their block; sort by block (stable) with signs.
            let mut seq: Vec<(usize, u16)> = labels.iter().map(|(v, a)| (blk[*v as usize], *a)).collect();
            let mut s = odd;
            for i in 1..seq.len() {
                let mut j = i;
                while j > 0 && seq[j - 1].0 > seq[j].0 {
                    if (self.alg.degree(seq[j - 1].1 as usize) * self.alg.degree(seq[j].1 as usize)) % 2 != 0 {
                        s = !s;
                    }
                    seq.swap(j - 1, j);
                    j -= 1;
                }
            }
            let mut per_block: Vec<SparseVec> = vec![vec![(self.alg.unit(), one())]; nb];
            for (b, a) in seq {
                per_block[b] = self.alg.mul_vec(&per_block[b], &vec![(a as usize, one())]);
            }
            if per_block.iter().any(|v| v.is_empty()) {
                continue;
            }
            let base = Rational::from(c) * crate::rational::sign(s);
            let mut partial: Vec<(Vec<u16>, Rational)> = vec![(Vec::new(), base)];
            for v in &per_block {
                let mut next = Vec::with_capacity(partial.len() * v.len());
                for (ls, c0) in &partial {
                    for (a, c1) in v {
                        let mut l = ls.clone();
                        l.push(*a as u16);
                        next.push((l, c0 * c1));
                    }
                }
                partial = next;
            }
            for (labels, c) in partial {
                out.add_term(LsBasis { edges: edges.clone(), labels, alphas: alpha_mask }, c);
            }
        }
        out
    }

    /// Product in G_A(U).
    pub fn multiply(&self, x: &LsElement, y: &LsElement) -> LsElement {
        let mut out = LsElement::new();
        for (bx, cx) in x.iter() {
            let wx = self.word(bx);
            for (by, cy) in y.iter() {
                let mut w = wx.clone();
                w.extend(self.word(by));
                out.add_scaled(&self.reduce_unchecked(&w), &(cx * cy));
            }
        }
        out
    }

    /// d on a word, as the derivation dι(a) = ι(d_A a), dω_ij = ι_ij(Δ_A),
    /// dα_u = ι_u(e_A), expanded into words (not yet reduced).
    pub fn differential_words(&self, w: &[Gen]) -> Vec<(Vec<Gen>, Rational)> {
        let mut out = Vec::new();
        if self.zero_differential {
            return out;
        }
        let mut deg = 0;
        for (p, g) in w.iter().enumerate() {
            let s = crate::rational::sign(deg % 2 != 0);
            let mut splice = |mid: Vec<Gen>, c: Rational| {
                let mut t = w[..p].to_vec();
                t.extend(mid);
                t.extend_from_slice(&w[p + 1..]);
                out.push((t, c * &s));
            };
            match g {
                Gen::Iota(v, a) => {
                    for (b, c) in self.alg.d(*a as usize) {
                        splice(vec![Gen::Iota(*v, *b as u16)], c.clone());
                    }
                }
                Gen::Omega(i, j) => {
                    for ((x, y), c) in self.alg.diagonal().iter() {
                        splice(vec![Gen::Iota(*i, *x as u16), Gen::Iota(*j, *y as u16)], c.clone());
                    }
                }
                Gen::Alpha(u) => {
                    for (x, c) in self.alg.euler_class() {
                        splice(vec![Gen::Iota(*u, *x as u16)], c.clone());
                    }
                }
            }
            deg += self.gen_degree(g);
        }
        out
    }

    pub fn differential_basis(&self, b: &LsBasis) -> LsElement {
        let mut out = LsElement::new();
        for (w, c) in self.differential_words(&self.word(b)) {
            out.add_scaled(&self.reduce_unchecked(&w), &c);
        }
        out
    }

    pub fn differential(&self, x: &LsElement) -> LsElement {
        x.map_linear(|b| self.differential_basis(b))
    }

    /// All basis elements, by degree, in deterministic order.
    pub fn basis(&self) -> BTreeMap<i64, Vec<LsBasis>> {
        let mut out: BTreeMap<i64, Vec<LsBasis>> = BTreeMap::new();
        let na = self.alg.size() as u16;
        for edges in admissible_monomials(self.k) {
            let nb = blocks(self.k, &edges).iter().max().map_or(0, |m| m + 1);
            let mut labelings: Vec<Vec<u16>> = vec![Vec::new()];
            for _ in 0..nb {
                labelings = labelings
                    .into_iter()
                    .flat_map(|l| (0..na).map(move |a| {
                        let mut l = l.clone();
                        l.push(a);
                        l
                    }))
                    .collect();
            }
            let masks: Vec<u32> = if self.framed { (0..1u32 << self.k).collect() } else { vec![0] };
            for labels in labelings {
                for &alphas in &masks {
                    let b = LsBasis { edges: edges.clone(), labels: labels.clone(), alphas };
                    out.entry(self.degree(&b)).or_default().push(b);
                }
            }
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    }

    pub fn complex(&self) -> Result<LsComplex, Error> {
        LsComplex::build(self.basis(), |b| self.degree(b), |b| self.differential_basis(b))
    }

    pub fn betti(&self) -> Result<Poincare, Error> {
        betti_numbers(&self.complex()?.complex)
    }

    /// Relabels vertices by `map` (old vertex → new vertex) into `target`.
    pub fn relabel(&self, b: &LsBasis, map: &[u8], target: &LsModel) -> LsElement {
        let w: Vec<Gen> = self
            .word(b)
            .into_iter()
            .map(|g| match g {
                Gen::Iota(v, a) => Gen::Iota(map[v as usize], a),
                Gen::Alpha(v) => Gen::Alpha(map[v as usize]),
                Gen::Omega(u, v) => Gen::Omega(map[u as usize], map[v as usize]),
            })
            .collect();
        target.reduce_unchecked(&w)
    }

    pub fn render_basis(&self, b: &LsBasis) -> String {
        let w = self.word(b);
        if w.is_empty() {
            return "1".into();
        }
        let names = self.alg.names();
        w.iter()
            .map(|g| match g {
                Gen::Iota(v, a) => format!("ι{}({})", v + 1, names[*a as usize]),
                Gen::Alpha(v) => format!("α{}", v + 1),
                Gen::Omega(u, v) => format!("ω{}{}", u + 1, v + 1),
            })
            .collect::<Vec<_>>()
            .join("·")
    }

    pub fn render(&self, x: &LsElement) -> String {
        render_combination(x.iter().map(|(b, c)| (self.render_basis(b), c)))
    }
}

pub(crate) fn render_combination<'c>(terms: impl Iterator<Item = (String, &'c Rational)>) -> String {
    let mut s = String::new();
    for (n, (t, c)) in terms.enumerate() {
        let neg = *c < 0;
        let a = if neg { -c.clone() } else { c.clone() };
        if n == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if a != one() {
            let _ = write!(s, "{a}·");
        }
        s.push_str(&t);
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

/// A complex together with its graded basis and a lookup table.
#[derive(Clone, Debug)]
pub struct LsComplex<K = LsBasis> {
    pub basis: BTreeMap<i64, Vec<K>>,
    pub index: HashMap<K, (i64, usize)>,
    pub complex: CochainComplex,
}

impl<K: Clone + Ord + std::hash::Hash + std::fmt::Debug> LsComplex<K> {
    /// Assembles d degree by degree; a term outside the basis or in the wrong
    /// degree is an internal error.
    pub fn build(
        basis: BTreeMap<i64, Vec<K>>,
        degree: impl Fn(&K) -> i64,
        d: impl Fn(&K) -> Combination<K>,
    ) -> Result<Self, Error> {
        let mut index = HashMap::new();
        let mut complex = CochainComplex::new();
        for (deg, v) in &basis {
            complex.set_dim(*deg, v.len());
            for (i, b) in v.iter().enumerate() {
                index.insert(b.clone(), (*deg, i));
            }
        }
        for (deg, v) in &basis {
            let rows = basis.get(&(deg + 1)).map_or(0, Vec::len);
            let mut cols = Vec::with_capacity(v.len());
            for b in v {
                let db = d(b);
                let mut col = Vec::with_capacity(db.len());
                for (t, c) in db.iter() {
                    match index.get(t) {
                        Some((td, i)) if *td == deg + 1 => col.push((*i, c.clone())),
                        _ => {
                            return Err(Error::Internal(format!(
                                "d({b:?}) in degree {deg} produced {t:?} (degree {})",
                                degree(t)
                            )))
                        }
                    }
                }
                cols.push(col);
            }
            if rows > 0 || cols.iter().any(|c| !c.is_empty()) {
                complex.set_differential(*deg, SparseMatrix::from_columns(rows, cols));
            }
        }
        Ok(LsComplex { basis, index, complex })
    }

    /// Coordinates of a combination in degree `deg`.
    pub fn coordinates(&self, deg: i64, x: &Combination<K>) -> Result<SparseVec, Error> {
        let mut v = Vec::with_capacity(x.len());
        for (b, c) in x.iter() {
            match self.index.get(b) {
                Some((d, i)) if *d == deg => v.push((*i, c.clone())),
                _ => return Err(Error::Internal(format!("{b:?} is not a basis element of degree {deg}"))),
            }
        }
        v.sort_by_key(|e| e.0);
        Ok(v)
    }
}

pub fn ls_complex(a: &PdAlgebra, k: usize) -> Result<CochainComplex, Error> {
    Ok(LsModel::new(a, k).complex()?.complex)
}

pub fn betti(a: &PdAlgebra, k: usize) -> Result<Poincare, Error> {
    LsModel::new(a, k).betti()
}
