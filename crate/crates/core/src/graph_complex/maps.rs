//! Maps out of the graph complexes: ρ* into the LS model and the projection
//! of Graphs_n onto e_n^∨.

use super::{Flavor, Graph, GraphCtx, GraphSum};
use crate::error::Error;
use crate::ls_model::{Gen, LsElement, LsModel};

fn graph_to_ls(ctx: &GraphCtx, g: &Graph, model: &LsModel) -> LsElement {
    if g.int > 0 {
        return LsElement::new();
    }
    let unit = ctx.alg.unit() as u16;
    let mut w: Vec<Gen> = Vec::new();
    for (v, a) in g.labels.iter().enumerate() {
        if *a != unit {
            w.push(Gen::Iota(v as u8, *a));
        }
    }
    w.extend(g.edges.iter().map(|(p, q)| Gen::Omega(*p, *q)));
    model.reduce_unchecked(&w)
}

fn check_arity(g: &GraphSum, k: usize) -> Result<(), Error> {
    match g.keys().find(|h| h.ext as usize != k) {
        Some(h) => Err(Error::DimensionMismatch(format!("graph with {} external vertices, model arity {k}", h.ext))),
        None => Ok(()),
    }
}

/// ρ*: Graphs_A(U) → G_A(U). Graphs with internal vertices go to zero;
/// edges become ω and labels ι.
pub fn rho_star(ctx: &GraphCtx, g: &GraphSum, model: &LsModel) -> Result<LsElement, Error> {
    if ctx.flavor != Flavor::GraphsA || model.alg.name() != ctx.alg.name() || model.n != ctx.n || model.framed {
        return Err(Error::InvalidArgument("rho_star needs a graphs_A context and the unframed LS model of the same algebra".into()));
    }
    check_arity(g, model.k)?;
    Ok(g.map_linear(|h| graph_to_ls(ctx, h, model)))
}

/// Graphs_n(U) → e_n^∨(U), killing graphs with internal vertices.
pub fn en_projection(ctx: &GraphCtx, g: &GraphSum, k: usize) -> Result<LsElement, Error> {
    if ctx.flavor != Flavor::GraphsN {
        return Err(Error::InvalidArgument("en_projection needs a graphs_n context".into()));
    }
    check_arity(g, k)?;
    let model = LsModel::en(ctx.n, k);
    Ok(g.map_linear(|h| graph_to_ls(ctx, h, &model)))
}
