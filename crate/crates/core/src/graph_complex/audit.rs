//! Degree-count audit: connected purely-internal graphs whose bivalent
//! vertices carry labels of degree ≥ 2 have positive degree once n ≥ 4.

use crate::pd_algebra::PdAlgebra;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AuditGraph {
    pub vertices: u8,
    pub edges: Vec<(u8, u8)>,
    /// Degree of the label at each vertex.
    pub label_degrees: Vec<i32>,
    pub degree: i64,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub n: i32,
    pub max_vertices: u8,
    /// Vertex-numbered graphs inspected, and their admissible labellings.
    pub graphs: usize,
    pub labelled: usize,
    pub min_degree: Option<i64>,
    /// Graphs of degree ≤ 0 with their cheapest admissible labelling.
    pub witnesses: Vec<AuditGraph>,
}

impl AuditReport {
    /// For n ≥ 4 every graph has positive degree; below that the audit only
    /// reports.
    pub fn passed(&self) -> bool {
        self.n < 4 || self.min_degree.is_none_or(|d| d > 0)
    }

    pub fn has_theta_witness(&self) -> bool {
        self.witnesses.iter().any(|w| w.vertices == 2 && w.edges == vec![(0, 1); 3] && w.degree == 0)
    }
}

fn connected(k: u8, edges: &[(u8, u8)]) -> bool {
    crate::en_dual::blocks(k as usize, edges).iter().all(|b| *b == 0)
}

fn canonical_skeleton(k: u8, edges: &[(u8, u8)]) -> Vec<(u8, u8)> {
    super::permutations(k as usize)
        .iter()
        .map(|(perm, _)| {
            let mut e: Vec<(u8, u8)> = edges
                .iter()
                .map(|(p, q)| {
                    let (p, q) = (perm[*p as usize], perm[*q as usize]);
                    (p.min(q), p.max(q))
                })
                .collect();
            e.sort();
            e
        })
        .min()
        .unwrap()
}

/// Enumerates connected loop-free graphs on 2..=max_vertices internal
/// vertices (multiple edges only for odd n) with all valences ≥ 2, labelled
/// from `a` so that bivalent vertices carry degree ≥ 2. The degree
/// E(n−1) − kn + Σ|labels| grows with the edge count E, so E stops one past
/// the largest value that can still reach degree ≤ 0. Every labelling is
/// counted; the cheapest one realises the minimum and is the one evaluated.
/// Graphs are enumerated as vertex-numbered edge multisets; only the
/// witnesses are reduced up to isomorphism.
pub fn vanishing_audit(n: i32, max_vertices: u8, a: &PdAlgebra) -> AuditReport {
    let mut degrees: Vec<i32> = (0..a.size()).map(|i| a.degree(i)).collect();
    degrees.sort();
    let multi = n % 2 != 0;
    let mut report = AuditReport { n, max_vertices, graphs: 0, labelled: 0, min_degree: None, witnesses: Vec::new() };
    let mut witnesses = BTreeSet::new();
    for k in 2..=max_vertices {
        let kn = k as i64 * n as i64;
        let max_e = if n > 1 { (kn / (n as i64 - 1)) as usize + 1 } else { 0 };
        let pairs: Vec<(u8, u8)> = (0..k).flat_map(|p| (p + 1..k).map(move |q| (p, q))).collect();
        let mut visit = |edges: &[(u8, u8)]| {
            if edges.len() < k as usize || !connected(k, edges) {
                return;
            }
            let mut val = vec![0; k as usize];
            for (p, q) in edges {
                val[*p as usize] += 1;
                val[*q as usize] += 1;
            }
            if val.iter().any(|v| *v < 2) {
                return;
            }
            let allowed: Vec<usize> = val.iter().map(|v| degrees.iter().filter(|d| *v > 2 || **d >= 2).count()).collect();
            if allowed.contains(&0) {
                return;
            }
            report.graphs += 1;
            report.labelled += allowed.iter().product::<usize>();
            let cheapest: Vec<i32> = val.iter().map(|v| *degrees.iter().find(|d| *v > 2 || **d >= 2).unwrap()).collect();
            let d = edges.len() as i64 * (n as i64 - 1) - kn + cheapest.iter().map(|x| *x as i64).sum::<i64>();
            report.min_degree = Some(report.min_degree.map_or(d, |m| m.min(d)));
            if d <= 0 {
                witnesses.insert((k, canonical_skeleton(k, edges), d));
            }
        };
        let mut cur = Vec::new();
        fn rec(pairs: &[(u8, u8)], start: usize, max_e: usize, multi: bool, cur: &mut Vec<(u8, u8)>, visit: &mut dyn FnMut(&[(u8, u8)])) {
            visit(cur);
            if cur.len() == max_e {
                return;
            }
            for i in start..pairs.len() {
                cur.push(pairs[i]);
                rec(pairs, if multi { i } else { i + 1 }, max_e, multi, cur, visit);
                cur.pop();
            }
        }
        rec(&pairs, 0, max_e, multi, &mut cur, &mut visit);
    }
    for (k, edges, d) in witnesses {
        let mut val = vec![0; k as usize];
        for (p, q) in &edges {
            val[*p as usize] += 1;
            val[*q as usize] += 1;
        }
        let label_degrees = val.iter().map(|v| *degrees.iter().find(|d| *v > 2 || **d >= 2).unwrap()).collect();
        report.witnesses.push(AuditGraph { vertices: k, edges, label_degrees, degree: d });
    }
    report
}
