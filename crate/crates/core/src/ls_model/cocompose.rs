//! The right e_n^∨-comodule structure G_A(U) → G_A(U/W) ⊗ e_n^∨(W), and the
//! framed variant fG_A(U) → fG_A(U/W) ⊗ fe_n^∨(W).
//!
//! Vertex conventions: U/W lists U∖W in increasing order followed by the
//! collapsed vertex *; the W factor lists W in increasing order.

use super::{Gen, LsBasis, LsElement, LsModel};
use crate::combination::Combination;
use crate::error::Error;
use crate::rational::{one, sign, Rational};

pub type TensorLs = Combination<(LsBasis, LsBasis)>;

/// Left/right models and vertex maps for a given W (bitmask over U).
#[derive(Clone, Copy, Debug)]
pub struct Split<'a> {
    pub left: LsModel<'a>,
    pub right: LsModel<'static>,
    pub w: u32,
    k: usize,
}

impl<'a> Split<'a> {
    pub fn new(model: &LsModel<'a>, w: u32) -> Result<Self, Error> {
        if model.k < 32 && w >> model.k != 0 {
            return Err(Error::InvalidArgument(format!("W = {w:#b} is not a subset of U = {{1..{}}}", model.k)));
        }
        let wn = w.count_ones() as usize;
        let right = if model.framed { LsModel::framed_en(model.n, wn) } else { LsModel::en(model.n, wn) };
        Ok(Split { left: model.with_arity(model.k - wn + 1), right, w, k: model.k })
    }

    fn star(&self) -> u8 {
        (self.left.k - 1) as u8
    }

    fn in_w(&self, v: u8) -> bool {
        self.w & (1 << v) != 0
    }

    /// Position of v in U∖W or in W.
    fn pos(&self, v: u8) -> u8 {
        let below = (1u32 << v) - 1;
        if self.in_w(v) {
            (self.w & below).count_ones() as u8
        } else {
            (!self.w & below).count_ones() as u8
        }
    }

    fn left_vertex(&self, v: u8) -> u8 {
        if self.in_w(v) {
            self.star()
        } else {
            self.pos(v)
        }
    }

    /// Image of one generator: a sum of (left word, right word, coefficient).
    fn image(&self, g: &Gen) -> Vec<(Vec<Gen>, Vec<Gen>, Rational)> {
        match *g {
            Gen::Iota(v, a) => vec![(vec![Gen::Iota(self.left_vertex(v), a)], vec![], one())],
            Gen::Alpha(v) if self.in_w(v) => vec![
                (vec![Gen::Alpha(self.star())], vec![], one()),
                (vec![], vec![Gen::Alpha(self.pos(v))], one()),
            ],
            Gen::Alpha(v) => vec![(vec![Gen::Alpha(self.pos(v))], vec![], one())],
            Gen::Omega(u, v) if self.in_w(u) && self.in_w(v) => {
                let mut out = vec![(vec![], vec![Gen::Omega(self.pos(u), self.pos(v))], one())];
                if self.left.framed {
                    out.insert(0, (vec![Gen::Alpha(self.star())], vec![], one()));
                }
                out
            }
            Gen::Omega(u, v) => vec![(vec![Gen::Omega(self.left_vertex(u), self.left_vertex(v))], vec![], one())],
        }
    }

    /// The algebra map on a word: product of generator images with the
    /// Koszul rule (x⊗y)(x'⊗y') = (−1)^{|y||x'|} xx'⊗yy'.
    pub fn apply_word(&self, word: &[Gen]) -> TensorLs {
        let mut partial: Vec<(Vec<Gen>, Vec<Gen>, Rational, i32)> = vec![(vec![], vec![], one(), 0)];
        for g in word {
            let img = self.image(g);
            let mut next = Vec::with_capacity(partial.len() * img.len());
            for (l, r, c, dr) in &partial {
                for (li, ri, ci) in &img {
                    let dl = self.left.word_degree(li);
                    let s = sign((dr * dl) % 2 != 0);
                    let mut l2 = l.clone();
                    l2.extend_from_slice(li);
                    let mut r2 = r.clone();
                    r2.extend_from_slice(ri);
                    next.push((l2, r2, c * ci * s, dr + self.right.word_degree(ri)));
                }
            }
            partial = next;
        }
        let mut out = TensorLs::new();
        for (l, r, c, _) in partial {
            let lx = self.left.reduce_unchecked(&l);
            if lx.is_zero() {
                continue;
            }
            let rx = self.right.reduce_unchecked(&r);
            for (bl, cl) in lx.iter() {
                for (br, cr) in rx.iter() {
                    out.add_term((bl.clone(), br.clone()), &c * cl * cr);
                }
            }
        }
        out
    }

    pub fn apply_basis(&self, model: &LsModel, b: &LsBasis) -> TensorLs {
        debug_assert_eq!(model.k, self.k);
        self.apply_word(&model.word(b))
    }

    pub fn apply(&self, model: &LsModel, x: &LsElement) -> TensorLs {
        let mut out = TensorLs::new();
        for (b, c) in x.iter() {
            out.add_scaled(&self.apply_basis(model, b), c);
        }
        out
    }
}

/// ∘^∨_W on x ∈ G_A(U). Refuses unless χ(A) = 0; the framed model is exempt.
pub fn cocompose(model: &LsModel, w: u32, x: &LsElement) -> Result<TensorLs, Error> {
    let chi = model.alg.euler_characteristic();
    if !model.framed && chi != 0 && model.alg.size() > 1 {
        return Err(Error::NonzeroEuler(chi));
    }
    Ok(Split::new(model, w)?.apply(model, x))
}

/// (d ⊗ 1 ± 1 ⊗ d) on G_A(U/W) ⊗ e_n^∨(W); the cooperad side has d = 0.
pub fn tensor_differential(left: &LsModel, t: &TensorLs) -> TensorLs {
    let mut out = TensorLs::new();
    for ((l, r), c) in t.iter() {
        for (dl, cl) in left.differential_basis(l).iter() {
            out.add_term((dl.clone(), r.clone()), c * cl);
        }
    }
    out
}

/// Applies the second-stage cocompositions of both coassociativity routes.
///
/// Route A: split along W, then split the e_n^∨(W) factor along W′ ⊂ W.
/// Route B: split along W′, then split G_A(U/W′) along (W∖W′) ∪ {*}.
/// Both land in G_A(U/W) ⊗ e_n^∨(W/W′) ⊗ e_n^∨(W′).
pub fn coassociativity_defect(model: &LsModel, w: u32, w2: u32, b: &LsBasis) -> Result<bool, Error> {
    assert_eq!(w2 & !w, 0, "W′ must be a subset of W");
    let outer = Split::new(model, w)?;
    let wn = w.count_ones() as usize;
    // W′ as a subset of W (positions within W).
    let w2_in_w = (0..model.k as u8).filter(|v| w2 & (1 << v) != 0).fold(0u32, |m, v| m | (1 << outer.pos(v)));
    let inner_a = Split::new(&outer.right, w2_in_w)?;

    let mut route_a: Combination<(LsBasis, LsBasis, LsBasis)> = Combination::new();
    for ((l, r), c) in outer.apply_basis(model, b).iter() {
        debug_assert_eq!(outer.right.k, wn);
        for ((r1, r2), c2) in inner_a.apply_basis(&outer.right, r).iter() {
            route_a.add_term((l.clone(), r1.clone(), r2.clone()), c * c2);
        }
    }

    let first = Split::new(model, w2)?;
    // (W∖W′) ∪ {*} inside U/W′.
    let mut mid = 1u32 << first.star();
    for v in 0..model.k as u8 {
        if w & (1 << v) != 0 && w2 & (1 << v) == 0 {
            mid |= 1 << first.pos(v);
        }
    }
    let second = Split::new(&first.left, mid)?;
    let mut route_b: Combination<(LsBasis, LsBasis, LsBasis)> = Combination::new();
    for ((l, r), c) in first.apply_basis(model, b).iter() {
        for ((l1, l2), c2) in second.apply_basis(&first.left, l).iter() {
            route_b.add_term((l1.clone(), l2.clone(), r.clone()), c * c2);
        }
    }
    Ok(route_a != route_b)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComoduleReport {
    pub arity: usize,
    pub basis_size: usize,
    pub subsets: usize,
    pub chain_map_failures: usize,
    pub coassociativity_pairs: usize,
    pub coassociativity_failures: usize,
    pub counit_failures: usize,
}

impl ComoduleReport {
    pub fn passed(&self) -> bool {
        self.chain_map_failures == 0 && self.coassociativity_failures == 0 && self.counit_failures == 0
    }
}

/// Exhaustive comodule checks on G_A(k): chain map for all W,
/// coassociativity for all W′ ⊆ W, and the counit for singletons W.
pub fn comodule_checks(alg: &crate::pd_algebra::PdAlgebra, k: usize) -> Result<ComoduleReport, Error> {
    let chi = alg.euler_characteristic();
    if chi != 0 {
        return Err(Error::NonzeroEuler(chi));
    }
    let model = LsModel::new(alg, k);
    let basis: Vec<LsBasis> = model.basis().into_values().flatten().collect();
    let mut rep = ComoduleReport { arity: k, basis_size: basis.len(), subsets: 1 << k, ..Default::default() };
    for w in 0..(1u32 << k) {
        let split = Split::new(&model, w)?;
        for b in &basis {
            let lhs = split.apply(&model, &model.differential_basis(b));
            let rhs = tensor_differential(&split.left, &split.apply_basis(&model, b));
            if lhs != rhs {
                rep.chain_map_failures += 1;
            }
        }
        let mut w2 = w;
        loop {
            rep.coassociativity_pairs += 1;
            for b in &basis {
                if coassociativity_defect(&model, w, w2, b)? {
                    rep.coassociativity_failures += 1;
                }
            }
            if w2 == 0 {
                break;
            }
            w2 = (w2 - 1) & w;
        }
        if w.count_ones() == 1 {
            let v = w.trailing_zeros() as u8;
            let unit = split.right.unit();
            // Undo the relabelling U → U/{v}: * goes back to v.
            let back: Vec<u8> = (0..k as u8).map(|p| if p == k as u8 - 1 { v } else if p < v { p } else { p + 1 }).collect();
            for b in &basis {
                let img = split.apply_basis(&model, b);
                let mut restored = LsElement::new();
                for ((l, r), c) in img.iter() {
                    if *r == unit {
                        restored.add_scaled(&split.left.relabel(l, &back, &model), c);
                    } else {
                        rep.counit_failures += 1;
                    }
                }
                if restored != LsElement::single(b.clone(), one()) {
                    rep.counit_failures += 1;
                }
            }
        }
    }
    Ok(rep)
}
