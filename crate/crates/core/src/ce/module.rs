//! The arity-wise CE complex of A ⊗ L_n. A block is s(a ⊗ w) with w a
//! left-normed Lie word on a set of letters; a CE element on U is a product
//! of blocks whose letter sets partition U, ordered by minimum letter.
//!
//! Degrees (cohomological): letters have degree 1 − n, the bracket degree
//! 0, labels their degree in A, and the shift −1. A block on s letters
//! labelled a therefore has degree |a| − 1 − s(n − 1); it pairs with an LS
//! block labelled b with |a| + |b| = n and s − 1 edges, of degree
//! (n − 1)(s − 1) + |b|, so the total degrees are opposite.

use super::engine::{ce_degree, ce_differential, DgLie};
use super::lie::{basis_words, bracket, LieElement};
use crate::combination::Combination;
use crate::error::Error;
use crate::linalg::{betti_numbers, verify_complex, Poincare};
use crate::ls_model::LsComplex;
use crate::pd_algebra::PdAlgebra;
use crate::rational::{one, sign};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CeBlock {
    /// Left-normed word, minimum letter first (so blocks sort by minimum).
    pub word: Vec<u8>,
    pub label: u16,
}

pub type CeBasis = Vec<CeBlock>;

/// A ⊗ L_n with n = dim A.
pub struct ArityLie<'a> {
    pub alg: &'a PdAlgebra,
    pub n: i32,
}

impl<'a> ArityLie<'a> {
    pub fn new(alg: &'a PdAlgebra) -> Self {
        ArityLie { alg, n: alg.dim() }
    }

    fn word_degree(&self, w: &[u8]) -> i64 {
        w.len() as i64 * (1 - self.n as i64)
    }
}

impl DgLie for ArityLie<'_> {
    type Elem = CeBlock;

    fn degree(&self, x: &CeBlock) -> i64 {
        self.alg.degree(x.label as usize) as i64 + self.word_degree(&x.word)
    }

    /// [a ⊗ w, a′ ⊗ w′] = (−1)^{|w||a′|} aa′ ⊗ [w, w′].
    fn bracket(&self, x: &CeBlock, y: &CeBlock) -> Combination<CeBlock> {
        let s = sign((self.word_degree(&x.word) * self.alg.degree(y.label as usize) as i64) % 2 != 0);
        let w = bracket(self.n, &LieElement::single(x.word.clone(), one()), &LieElement::single(y.word.clone(), one()));
        let labels = self.alg.mul(x.label as usize, y.label as usize);
        let mut out = Combination::new();
        for (word, c) in w.iter() {
            for (a, c2) in labels {
                out.add_term(CeBlock { word: word.clone(), label: *a as u16 }, c * c2 * &s);
            }
        }
        out
    }

    fn d(&self, x: &CeBlock) -> Combination<CeBlock> {
        self.alg.d(x.label as usize).iter().map(|(a, c)| (CeBlock { word: x.word.clone(), label: *a as u16 }, c.clone())).collect()
    }
}

/// Set partitions of 0..k, blocks sorted by minimum.
pub fn set_partitions(k: usize) -> Vec<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    let mut assign = vec![0usize; k];
    fn rec(i: usize, k: usize, max: usize, assign: &mut Vec<usize>, out: &mut Vec<Vec<Vec<u8>>>) {
        if i == k {
            let mut blocks = vec![Vec::new(); max];
            for (v, b) in assign.iter().enumerate() {
                blocks[*b].push(v as u8);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=max {
            assign[i] = b;
            rec(i + 1, k, max.max(b + 1), assign, out);
        }
    }
    rec(0, k, 0, &mut assign, &mut out);
    out
}

/// The CE basis on U = {0..k}, graded by CE degree.
pub fn ce_basis(alg: &PdAlgebra, k: usize) -> BTreeMap<i64, Vec<CeBasis>> {
    let lie = ArityLie::new(alg);
    let mut out: BTreeMap<i64, Vec<CeBasis>> = BTreeMap::new();
    for blocks in set_partitions(k) {
        let choices: Vec<Vec<CeBlock>> = blocks
            .iter()
            .map(|b| {
                basis_words(b)
                    .into_iter()
                    .flat_map(|w| (0..alg.size() as u16).map(move |a| CeBlock { word: w.clone(), label: a }))
                    .collect()
            })
            .collect();
        let mut partial: Vec<CeBasis> = vec![vec![]];
        for c in &choices {
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    c.iter().map(move |b| {
                        let mut p = p.clone();
                        p.push(b.clone());
                        p
                    })
                })
                .collect();
        }
        for m in partial {
            out.entry(ce_degree(&lie, &m)).or_default().push(m);
        }
    }
    for v in out.values_mut() {
        v.sort();
    }
    out
}

pub fn ce_module_complex(alg: &PdAlgebra, k: usize) -> Result<LsComplex<CeBasis>, Error> {
    let lie = ArityLie::new(alg);
    LsComplex::build(ce_basis(alg, k), |m| ce_degree(&lie, m), |m| ce_differential(&lie, m))
}

pub fn ce_module_betti(alg: &PdAlgebra, k: usize) -> Result<Poincare, Error> {
    let cx = ce_module_complex(alg, k)?;
    if !verify_complex(&cx.complex)?.passed() {
        return Err(Error::Internal("CE module differential does not square to zero".into()));
    }
    betti_numbers(&cx.complex)
}

pub fn render_basis(alg: &PdAlgebra, m: &CeBasis) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|b| {
            let w = super::lie::LieExpr::left_normed(&b.word);
            format!("s({}⊗{})", alg.names()[b.label as usize], render_expr(&w))
        })
        .collect::<Vec<_>>()
        .join("·")
}

fn render_expr(e: &super::lie::LieExpr) -> String {
    match e {
        super::lie::LieExpr::Letter(x) => format!("x{}", x + 1),
        super::lie::LieExpr::Bracket(a, b) => format!("[{},{}]", render_expr(a), render_expr(b)),
    }
}
