//! Exhaustive enumeration of canonical graphs within size caps.

use super::{Flavor, Graph, GraphCtx};
use std::collections::BTreeSet;

/// Edge multisets on `nv` vertices of size ≤ `max_edges`, sorted, without
/// loops; repeated pairs only when `multi`.
fn edge_sets(nv: u8, max_edges: usize, multi: bool) -> Vec<Vec<(u8, u8)>> {
    let pairs: Vec<(u8, u8)> = (0..nv).flat_map(|p| (p + 1..nv).map(move |q| (p, q))).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(pairs: &[(u8, u8)], start: usize, max: usize, multi: bool, cur: &mut Vec<(u8, u8)>, out: &mut Vec<Vec<(u8, u8)>>) {
        out.push(cur.clone());
        if cur.len() == max {
            return;
        }
        for i in start..pairs.len() {
            cur.push(pairs[i]);
            rec(pairs, if multi { i } else { i + 1 }, max, multi, cur, out);
            cur.pop();
        }
    }
    rec(&pairs, 0, max_edges, multi, &mut cur, &mut out);
    out
}

fn every_internal_reaches_external(ext: u8, nv: u8, edges: &[(u8, u8)]) -> bool {
    let comp = crate::en_dual::blocks(nv as usize, edges);
    (ext..nv).all(|v| (0..ext).any(|u| comp[u as usize] == comp[v as usize]))
}

/// All nonzero canonical graphs with exactly `ext` external vertices, at most
/// `max_internal` internal vertices and at most `max_edges` edges. Graphs
/// with a purely internal component are excluded (they reduce away).
pub fn enumerate(ctx: &GraphCtx, ext: u8, max_internal: u8, max_edges: usize) -> Vec<Graph> {
    let unit = ctx.alg.unit() as u16;
    let labels_per_vertex: Vec<u16> = match ctx.flavor {
        Flavor::GraphsN => vec![unit],
        Flavor::GraphsA => (0..ctx.alg.size() as u16).collect(),
    };
    let mut out = BTreeSet::new();
    for int in 0..=max_internal {
        let nv = ext + int;
        // Skeletons up to isomorphism first, then labellings.
        let mut skeletons = BTreeSet::new();
        for edges in edge_sets(nv, max_edges, ctx.multi_edges_allowed()) {
            if !every_internal_reaches_external(ext, nv, &edges) {
                continue;
            }
            // Skeleton canonical form ignoring signs (an odd skeleton can
            // still carry labellings that are even).
            let g = Graph { ext, int, edges, labels: vec![unit; nv as usize] };
            skeletons.insert(skeleton_key(&g));
        }
        for edges in skeletons {
            let mut labels = vec![labels_per_vertex[0]; nv as usize];
            loop {
                let g = Graph { ext, int, edges: edges.clone(), labels: labels.clone() };
                for (h, _) in ctx.canonicalize(&g).iter() {
                    out.insert(h.clone());
                }
                // Odometer over labellings.
                let mut i = 0;
                loop {
                    if i == nv as usize {
                        break;
                    }
                    let pos = labels_per_vertex.iter().position(|a| *a == labels[i]).unwrap();
                    if pos + 1 < labels_per_vertex.len() {
                        labels[i] = labels_per_vertex[pos + 1];
                        break;
                    }
                    labels[i] = labels_per_vertex[0];
                    i += 1;
                }
                if i == nv as usize {
                    break;
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Lexicographically least edge list over relabellings of internal vertices.
fn skeleton_key(g: &Graph) -> Vec<(u8, u8)> {
    let ext = g.ext;
    super::permutations(g.int as usize)
        .iter()
        .map(|(perm, _)| {
            let map = |v: u8| if v < ext { v } else { ext + perm[(v - ext) as usize] };
            let mut e: Vec<(u8, u8)> = g
                .edges
                .iter()
                .map(|(p, q)| {
                    let (p, q) = (map(*p), map(*q));
                    (p.min(q), p.max(q))
                })
                .collect();
            e.sort();
            e
        })
        .min()
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_set_counts() {
        // 3 vertices, 3 pairs: subsets of size ≤ 2 is 1 + 3 + 3.
        assert_eq!(edge_sets(3, 2, false).len(), 7);
        // Multisets of size ≤ 2: 1 + 3 + 6.
        assert_eq!(edge_sets(3, 2, true).len(), 10);
    }
}
