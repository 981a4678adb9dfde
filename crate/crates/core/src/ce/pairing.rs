//! The pairing ⟨G_A(U), CE(A ⊗ L_n)(U)⟩ → ℚ.
//!
//! The LS word is regrouped by the blocks of the CE element (Koszul signs);
//! each group ι(b)·T pairs with s(a ⊗ w) as ε(b·a)·⟨T, w⟩, and groups of
//! different blocks are combined with the Koszul sign of the interleaving.
//! An LS edge joining two CE blocks, or a group whose edges do not span
//! its block, gives 0 — so elements of different partitions are
//! orthogonal without a special case.
//!
//! ⟨T, w⟩ for a left-normed word w = [w′, x]: x must be a leaf of T; its
//! edge, oriented away from x and moved to the front, is removed and the
//! rest pairs with w′. (Orienting it towards x breaks ⟨dx, y⟩ = ±⟨x, dy⟩
//! for odd n.)

use super::module::{ce_basis, ArityLie, CeBasis};
use super::engine::{ce_degree, ce_differential};
use crate::combination::Combination;
use crate::error::Error;
use crate::linalg::{rank, SparseMatrix, SparseVec};
use crate::ls_model::{Gen, LsBasis, LsElement, LsModel};
use crate::pd_algebra::PdAlgebra;
use crate::rational::{is_zero, one, sign, zero, Rational};

/// ⟨T, w⟩ for a tree monomial T (edges in word order) and a left-normed word.
pub fn tree_pairing(n: i32, edges: &[(u8, u8)], word: &[u8]) -> Rational {
    if word.len() == 1 {
        return if edges.is_empty() { one() } else { zero() };
    }
    if edges.len() != word.len() - 1 {
        return zero();
    }
    let x = *word.last().unwrap();
    let incident: Vec<usize> = (0..edges.len()).filter(|&i| edges[i].0 == x || edges[i].1 == x).collect();
    let [idx] = incident[..] else { return zero() };
    let (p, q) = edges[idx];
    let other = if p == x { q } else { p };
    if !word[..word.len() - 1].contains(&other) {
        return zero();
    }
    let mut odd = (n - 1) % 2 != 0 && idx % 2 == 1;
    if q == x && n % 2 != 0 {
        odd = !odd;
    }
    let mut rest = edges.to_vec();
    rest.remove(idx);
    sign(odd) * tree_pairing(n, &rest, &word[..word.len() - 1])
}

/// Pairing of an LS basis element with a CE basis element on the same U.
pub fn pair_basis(model: &LsModel, b: &LsBasis, y: &CeBasis) -> Rational {
    let alg = model.alg;
    let n = model.n;
    let lie = ArityLie::new(alg);
    let mut block_of = vec![usize::MAX; model.k];
    for (i, blk) in y.iter().enumerate() {
        for v in &blk.word {
            block_of[*v as usize] = i;
        }
    }
    if block_of.contains(&usize::MAX) || b.alphas != 0 {
        return zero();
    }
    let word = model.word(b);
    let mut group = Vec::with_capacity(word.len());
    for g in &word {
        group.push(match g {
            Gen::Iota(v, _) => block_of[*v as usize],
            Gen::Omega(i, j) if block_of[*i as usize] == block_of[*j as usize] => block_of[*i as usize],
            Gen::Omega(..) => return zero(),
            Gen::Alpha(_) => return zero(),
        });
    }
    // Stable regrouping by block.
    let mut odd = false;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if group[i] > group[j] && (model.gen_degree(&word[i]) * model.gen_degree(&word[j])) % 2 != 0 {
                odd = !odd;
            }
        }
    }
    let mut total = sign(odd);
    let mut x_degrees = Vec::with_capacity(y.len());
    for (bi, blk) in y.iter().enumerate() {
        let mut label: SparseVec = vec![(alg.unit(), one())];
        let mut edges = Vec::new();
        let mut deg = 0i64;
        for (g, gi) in word.iter().zip(&group) {
            if *gi != bi {
                continue;
            }
            deg += model.gen_degree(g) as i64;
            match g {
                Gen::Iota(_, a) => label = alg.mul_vec(&label, &vec![(*a as usize, one())]),
                Gen::Omega(i, j) => edges.push((*i, *j)),
                Gen::Alpha(_) => unreachable!(),
            }
        }
        let t = tree_pairing(n, &edges, &blk.word);
        if is_zero(&t) {
            return zero();
        }
        let e = alg.eps_vec(&alg.mul_vec(&label, &vec![(blk.label as usize, one())]));
        if is_zero(&e) {
            return zero();
        }
        let tree_deg = edges.len() as i64 * (n as i64 - 1);
        let a_deg = alg.degree(blk.label as usize) as i64;
        total *= t * e * sign((tree_deg * a_deg) % 2 != 0);
        x_degrees.push(deg);
    }
    // ⟨X_1⋯X_r, Y_1⋯Y_r⟩ = (−1)^{Σ_{i<j} |X_j||Y_i|} Π ⟨X_i, Y_i⟩.
    let y_degrees: Vec<i64> = y.iter().map(|blk| ce_degree(&lie, std::slice::from_ref(blk))).collect();
    let mut par = 0i64;
    for i in 0..y.len() {
        for j in i + 1..y.len() {
            par += x_degrees[j] * y_degrees[i];
        }
    }
    total * sign(par.rem_euclid(2) != 0)
}

pub fn pair(model: &LsModel, x: &LsElement, y: &Combination<CeBasis>) -> Rational {
    let mut s = zero();
    for (b, c) in x.iter() {
        for (m, c2) in y.iter() {
            s += pair_basis(model, b, m) * c * c2;
        }
    }
    s
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairingReport {
    pub k: usize,
    /// Per LS degree D: (dim G_A(k)^D, dim CE^{−D}, rank of the pairing).
    pub blocks: Vec<(i64, usize, usize, usize)>,
    pub nondegenerate: bool,
    pub chain_pairs: usize,
    pub chain_failures: usize,
    pub mismatch_pairs: usize,
    pub mismatch_failures: usize,
}

impl PairingReport {
    pub fn passed(&self) -> bool {
        self.nondegenerate && self.chain_failures == 0 && self.mismatch_failures == 0
    }
}

fn partition_of(model: &LsModel, b: &LsBasis) -> Vec<usize> {
    crate::en_dual::blocks(model.k, &b.edges)
}

fn ce_partition(k: usize, y: &CeBasis) -> Vec<usize> {
    let mut p = vec![0; k];
    for (i, blk) in y.iter().enumerate() {
        for v in &blk.word {
            p[*v as usize] = i;
        }
    }
    p
}

/// Nondegeneracy per degree, ⟨dx, y⟩ = (−1)^{|x|}⟨x, dy⟩ on all basis
/// pairs, and vanishing across different partitions.
pub fn pairing_checks(alg: &PdAlgebra, k: usize) -> Result<PairingReport, Error> {
    let model = LsModel::new(alg, k);
    let lie = ArityLie::new(alg);
    let ls = model.basis();
    let ce = ce_basis(alg, k);
    let mut rep = PairingReport { k, nondegenerate: true, ..Default::default() };
    let mut degrees: Vec<i64> = ls.keys().copied().collect();
    degrees.extend(ce.keys().map(|d| -d));
    degrees.sort();
    degrees.dedup();
    let (empty_ls, empty_ce) = (Vec::new(), Vec::new());
    for &d in &degrees {
        let rows = ls.get(&d).unwrap_or(&empty_ls);
        let cols = ce.get(&-d).unwrap_or(&empty_ce);
        let mut columns = Vec::with_capacity(cols.len());
        for y in cols {
            let py = ce_partition(k, y);
            let mut col = Vec::new();
            for (i, b) in rows.iter().enumerate() {
                let v = pair_basis(&model, b, y);
                if partition_of(&model, b) != py {
                    rep.mismatch_pairs += 1;
                    if !is_zero(&v) {
                        rep.mismatch_failures += 1;
                    }
                }
                if !is_zero(&v) {
                    col.push((i, v));
                }
            }
            columns.push(col);
        }
        let r = rank(&SparseMatrix::from_columns(rows.len(), columns));
        if rows.len() != cols.len() || r != rows.len() {
            rep.nondegenerate = false;
        }
        rep.blocks.push((d, rows.len(), cols.len(), r));

        // Chain compatibility: x in degree d, y in CE degree −d−1.
        let ys = ce.get(&(-d - 1)).unwrap_or(&empty_ce);
        let dys: Vec<Combination<CeBasis>> = ys.iter().map(|y| ce_differential(&lie, y)).collect();
        for b in rows {
            let dx = model.differential_basis(b);
            let xb = LsElement::single(b.clone(), one());
            for (y, dy) in ys.iter().zip(&dys) {
                rep.chain_pairs += 1;
                let lhs = pair(&model, &dx, &Combination::single(y.clone(), one()));
                let rhs = pair(&model, &xb, dy) * sign(d.rem_euclid(2) != 0);
                if lhs != rhs {
                    rep.chain_failures += 1;
                }
            }
        }
    }
    Ok(rep)
}
