//! Cocomposition Δ_W: Graphs(U) → Graphs(U/W) ⊗ Graphs_n(W).
//!
//! For each set J' of internal vertices, the full subgraph on W ⊔ J' is cut
//! out (unlabelled, on the right); on the left, W ⊔ J' collapses to the
//! external vertex * (last in U/W), which carries the product of their
//! labels. Edges leaving W ⊔ J' are re-attached to *. The map is applied
//! factor by factor on the orientation word, with Koszul signs for the
//! tensor product.

use super::{Flavor, Graph, GraphCtx, GraphSum, F};
use crate::combination::Combination;
use crate::error::Error;
use crate::rational::{one, sign, Rational};

pub type TensorGraph = Combination<(Graph, Graph)>;

fn check(ctx: &GraphCtx, g: &Graph, w: u32) -> Result<(), Error> {
    if w >> g.ext != 0 {
        return Err(Error::InvalidArgument(format!("W = {w:#b} is not a subset of the {} external vertices", g.ext)));
    }
    if ctx.flavor == Flavor::GraphsA && ctx.alg.size() > 1 {
        let chi = ctx.alg.euler_characteristic();
        if chi != 0 {
            return Err(Error::NonzeroEuler(chi));
        }
    }
    Ok(())
}

/// Δ_W on one graph. `ctx` is the flavor of the U/W factor; the W factor
/// is always unlabelled Graphs_n.
pub fn cocompose_graph(ctx: &GraphCtx, g: &Graph, w: u32) -> Result<TensorGraph, Error> {
    check(ctx, g, w)?;
    let right_ctx = GraphCtx::unlabeled(ctx.n);
    let ext = g.ext;
    let in_w = |v: u8| v < ext && w >> v & 1 == 1;
    let w_count = w.count_ones() as u8;
    let left_ext = ext - w_count + 1;
    let star = left_ext - 1;
    let word = ctx.word(g);
    let mut out = TensorGraph::new();
    for jmask in 0u32..1 << g.int {
        let in_j = |v: u8| v >= ext && jmask >> (v - ext) & 1 == 1;
        let in_s = |v: u8| in_w(v) || in_j(v);
        let j_count = jmask.count_ones() as u8;
        let mut lmap = vec![0u8; (ext + g.int) as usize];
        let mut rmap = vec![0u8; (ext + g.int) as usize];
        let (mut li, mut ri, mut lint, mut rint) = (0u8, 0u8, 0u8, 0u8);
        for v in 0..ext + g.int {
            if v < ext {
                if in_w(v) {
                    rmap[v as usize] = ri;
                    ri += 1;
                    lmap[v as usize] = star;
                } else {
                    lmap[v as usize] = li;
                    li += 1;
                }
            } else if in_j(v) {
                rmap[v as usize] = w_count + rint;
                rint += 1;
                lmap[v as usize] = star;
            } else {
                lmap[v as usize] = left_ext + lint;
                lint += 1;
            }
        }
        let mut left: Vec<F> = Vec::new();
        let mut right: Vec<F> = Vec::new();
        let mut parity = 0i64;
        let mut right_deg = 0i64;
        for f in &word {
            let d = ctx.factor_degree(f) as i64;
            let goes_right = match *f {
                F::Marker(q) => in_j(q),
                F::Label(..) => false,
                F::Edge(p, q) => in_s(p) && in_s(q),
            };
            if goes_right {
                right.push(match *f {
                    F::Marker(q) => F::Marker(rmap[q as usize]),
                    F::Edge(p, q) => F::Edge(rmap[p as usize], rmap[q as usize]),
                    F::Label(..) => unreachable!(),
                });
                right_deg += d;
            } else {
                parity += right_deg * d;
                left.push(match *f {
                    F::Marker(q) => F::Marker(lmap[q as usize]),
                    F::Label(v, a) => F::Label(lmap[v as usize], a),
                    F::Edge(p, q) => F::Edge(lmap[p as usize], lmap[q as usize]),
                });
            }
        }
        let l = ctx.reduce(left_ext, g.int - j_count, &left);
        if l.is_zero() {
            continue;
        }
        let r = right_ctx.reduce(w_count, j_count, &right);
        let s = sign(parity % 2 != 0);
        for (a, ca) in l.iter() {
            for (b, cb) in r.iter() {
                out.add_term((a.clone(), b.clone()), ca * cb * &s);
            }
        }
    }
    Ok(out)
}

pub fn cocompose(ctx: &GraphCtx, x: &GraphSum, w: u32) -> Result<TensorGraph, Error> {
    let mut out = TensorGraph::new();
    for (g, c) in x.iter() {
        out.add_scaled(&cocompose_graph(ctx, g, w)?, c);
    }
    Ok(out)
}

/// d(x ⊗ y) = dx ⊗ y + (−1)^{|x|} x ⊗ dy.
pub fn tensor_differential(left: &GraphCtx, right: &GraphCtx, t: &TensorGraph) -> TensorGraph {
    let mut out = TensorGraph::new();
    for ((a, b), c) in t.iter() {
        for (da, c1) in left.differential_basis(a).iter() {
            out.add_term((da.clone(), b.clone()), c * c1);
        }
        let s = sign(left.degree(a) % 2 != 0);
        for (db, c2) in right.differential_basis(b).iter() {
            out.add_term((a.clone(), db.clone()), c * c2 * &s);
        }
    }
    out
}

/// Whether Δ_W commutes with the differentials on `g`.
pub fn chain_compatible(ctx: &GraphCtx, g: &Graph, w: u32) -> Result<bool, Error> {
    let right = GraphCtx::unlabeled(ctx.n);
    let lhs = tensor_differential(ctx, &right, &cocompose_graph(ctx, g, w)?);
    let rhs = cocompose(ctx, &ctx.differential_basis(g), w)?;
    Ok(lhs == rhs)
}

/// Inserts `inner` (on W) at the vertex * of `outer` (on U/W, * last),
/// summing over the ways to re-attach the edges at *. Only for unlabelled
/// graphs. The result lives on U with |U| = outer.ext − 1 + inner.ext.
pub fn insert(ctx: &GraphCtx, outer: &Graph, inner: &Graph, w: u32) -> GraphSum {
    debug_assert_eq!(ctx.flavor, Flavor::GraphsN);
    let ext = outer.ext - 1 + inner.ext;
    let star = outer.ext - 1;
    let mut omap = vec![0u8; (outer.ext + outer.int) as usize];
    let mut imap = vec![0u8; (inner.ext + inner.int) as usize];
    let (mut oi, mut ii) = (0usize, 0usize);
    for v in 0..ext {
        if w >> v & 1 == 1 {
            imap[ii] = v;
            ii += 1;
        } else {
            omap[oi] = v;
            oi += 1;
        }
    }
    for q in 0..outer.int {
        omap[(outer.ext + q) as usize] = ext + q;
    }
    for q in 0..inner.int {
        imap[(inner.ext + q) as usize] = ext + outer.int + q;
    }
    let targets: Vec<u8> = imap.clone();
    let mut words: Vec<(Vec<F>, Rational)> = vec![(Vec::new(), one())];
    for f in ctx.word(outer) {
        let choices: Vec<F> = match f {
            F::Marker(q) => vec![F::Marker(omap[q as usize])],
            F::Label(..) => panic!("insert is only defined for unlabelled graphs"),
            F::Edge(p, q) if p == star => targets.iter().map(|t| F::Edge(*t, omap[q as usize])).collect(),
            F::Edge(p, q) if q == star => targets.iter().map(|t| F::Edge(omap[p as usize], *t)).collect(),
            F::Edge(p, q) => vec![F::Edge(omap[p as usize], omap[q as usize])],
        };
        words = words
            .into_iter()
            .flat_map(|(wd, c)| {
                choices.iter().map(move |f| {
                    let mut wd = wd.clone();
                    wd.push(*f);
                    (wd, c.clone())
                })
            })
            .collect();
    }
    let tail: Vec<F> = ctx
        .word(inner)
        .into_iter()
        .map(|f| match f {
            F::Marker(q) => F::Marker(imap[q as usize]),
            F::Edge(p, q) => F::Edge(imap[p as usize], imap[q as usize]),
            F::Label(..) => panic!("insert is only defined for unlabelled graphs"),
        })
        .collect();
    let mut out = GraphSum::new();
    for (mut wd, c) in words {
        wd.extend_from_slice(&tail);
        out.add_scaled(&ctx.reduce(ext, outer.int + inner.int, &wd), &c);
    }
    out
}

/// Every summand c·G1⊗G2 of Δ_W(g) re-inserts to a sum in which g occurs
/// with the sign of c.
pub fn reinsertion_consistent(ctx: &GraphCtx, g: &Graph, w: u32) -> Result<bool, Error> {
    for ((a, b), c) in cocompose_graph(ctx, g, w)?.iter() {
        let back = insert(ctx, a, b, w);
        match back.get(g) {
            Some(x) if (*x > 0) == (*c > 0) => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}
