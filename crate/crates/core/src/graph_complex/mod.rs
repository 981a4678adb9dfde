//! Finite pieces of the graph complexes Graphs_n (unlabelled) and Graphs_A
//! (A-labelled, loop-free, ε-reduced).
//!
//! Orientation model: a graph is the graded-commutative word
//!
//!   x_{q_1} ⋯ x_{q_i} · ι_{v_1}(a_1) ⋯ ι_{v_s}(a_s) · e_{p_1 q_1} ⋯ e_{p_r q_r}
//!
//! where x_q marks internal vertex q (degree −n), ι_v(a) is a non-unit label
//! and e_pq an edge (degree n−1, e_qp = (−1)^n e_pq). All sign rules —
//! edge flips, edge transpositions for even n, internal-vertex
//! transpositions for odd n, label Koszul signs — follow from reordering
//! this word.

pub mod audit;
pub mod cocompose;
pub mod enumerate;
pub mod maps;

use crate::combination::Combination;
use crate::error::Error;
use crate::linalg::SparseVec;
use crate::pd_algebra::PdAlgebra;
use crate::rational::{one, sign, Rational};
use std::collections::HashMap;
use std::sync::OnceLock;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    /// External vertices are 0..ext, internal ones ext..ext+int.
    pub ext: u8,
    pub int: u8,
    /// Oriented low → high, sorted.
    pub edges: Vec<(u8, u8)>,
    /// One label per vertex (the unit when unlabelled).
    pub labels: Vec<u16>,
}

pub type GraphSum = Combination<Graph>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Unlabelled; contraction only; dead ends are not contractible.
    GraphsN,
    /// A-labelled; d_A + d_split + d_contr with dead ends contractible,
    /// followed by ε-reduction.
    GraphsA,
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "graphs_n" | "n" => Ok(Flavor::GraphsN),
            "graphs_A" | "graphs_a" | "A" | "a" => Ok(Flavor::GraphsA),
            _ => Err(Error::InvalidArgument(format!("unknown flavor `{s}` (expected graphs_n or graphs_A)"))),
        }
    }
}

/// Word factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum F {
    Marker(u8),
    Label(u8, u16),
    Edge(u8, u8),
}

/// Sign choices left implicit by the construction. Over S² and S³ exactly
/// one uniform choice gives d² = 0 and makes ρ* a chain map; the tests
/// check that flipping any relevant bit breaks one of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conventions {
    /// Whether the split term's Koszul sign counts the internal markers in
    /// front of the edge.
    pub split_counts_markers: bool,
    /// Z_ε(x_q ι_q(a)) = ε(a) if true, Z_ε(ι_q(a) x_q) = ε(a) otherwise.
    pub eps_marker_first: bool,
    /// d_contr carries an extra (−1)^{n+1} relative to d_split.
    pub contraction_twist: bool,
}

pub const CONVENTIONS: Conventions = Conventions { split_counts_markers: true, eps_marker_first: true, contraction_twist: true };

#[derive(Clone, Copy, Debug)]
pub struct GraphCtx<'a> {
    pub n: i32,
    pub alg: &'a PdAlgebra,
    pub flavor: Flavor,
    pub conv: Conventions,
}

/// Permutations of 0..m with their parities, lexicographic.
fn permutations(m: usize) -> &'static [(Vec<u8>, bool)] {
    static CACHE: OnceLock<Vec<Vec<(Vec<u8>, bool)>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        (0..=7)
            .map(|m| {
                let mut out = Vec::new();
                let mut cur = Vec::new();
                fn rec(m: usize, cur: &mut Vec<u8>, out: &mut Vec<(Vec<u8>, bool)>) {
                    if cur.len() == m {
                        let inv = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).filter(|&(i, j)| cur[i] > cur[j]).count();
                        out.push((cur.clone(), inv % 2 == 1));
                        return;
                    }
                    for v in 0..m as u8 {
                        if !cur.contains(&v) {
                            cur.push(v);
                            rec(m, cur, out);
                            cur.pop();
                        }
                    }
                }
                rec(m, &mut cur, &mut out);
                out
            })
            .collect()
    });
    &all[m]
}

impl<'a> GraphCtx<'a> {
    pub fn unlabeled(n: i32) -> GraphCtx<'static> {
        GraphCtx { n, alg: crate::pd_algebra::point_ref(), flavor: Flavor::GraphsN, conv: CONVENTIONS }
    }

    /// Labelled flavor; the algebra's formal dimension must equal n so that
    /// d_split is homogeneous.
    pub fn labeled(alg: &'a PdAlgebra) -> Self {
        GraphCtx { n: alg.dim(), alg, flavor: Flavor::GraphsA, conv: CONVENTIONS }
    }

    pub fn new(n: i32, alg: &'a PdAlgebra, flavor: Flavor) -> Result<Self, Error> {
        match flavor {
            Flavor::GraphsN => Ok(GraphCtx { n, alg: crate::pd_algebra::point_ref(), flavor, conv: CONVENTIONS }),
            Flavor::GraphsA if alg.dim() == n => Ok(GraphCtx::labeled(alg)),
            Flavor::GraphsA => Err(Error::InvalidArgument(format!(
                "graphs_A needs n = dim A (n = {n}, dim A = {}): otherwise d_split is not homogeneous",
                alg.dim()
            ))),
        }
    }

    fn unit(&self) -> u16 {
        self.alg.unit() as u16
    }

    /// Repeated edges have even degree only for odd n.
    fn multi_edges_allowed(&self) -> bool {
        self.n % 2 != 0
    }

    pub fn factor_degree(&self, f: &F) -> i32 {
        match f {
            F::Marker(_) => -self.n,
            F::Label(_, a) => self.alg.degree(*a as usize),
            F::Edge(..) => self.n - 1,
        }
    }

    pub fn degree(&self, g: &Graph) -> i64 {
        let labels: i64 = g.labels.iter().map(|a| self.alg.degree(*a as usize) as i64).sum();
        g.edges.len() as i64 * (self.n as i64 - 1) - g.int as i64 * self.n as i64 + labels
    }

    /// The canonical word of a graph.
    pub fn word(&self, g: &Graph) -> Vec<F> {
        let mut w: Vec<F> = (g.ext..g.ext + g.int).map(F::Marker).collect();
        let unit = self.unit();
        for (v, a) in g.labels.iter().enumerate() {
            if *a != unit {
                w.push(F::Label(v as u8, *a));
            }
        }
        w.extend(g.edges.iter().map(|(p, q)| F::Edge(*p, *q)));
        w
    }

    /// Graph with no edges and unit labels.
    pub fn empty(&self, ext: u8) -> Graph {
        Graph { ext, int: 0, edges: vec![], labels: vec![self.unit(); ext as usize] }
    }

    /// Reduces an arbitrary word on `ext` externals and `int` internals
    /// (each internal marker present exactly once) to canonical graphs.
    pub fn reduce(&self, ext: u8, int: u8, word: &[F]) -> GraphSum {
        let class = |f: &F| match f {
            F::Marker(_) => 0,
            F::Label(..) => 1,
            F::Edge(..) => 2,
        };
        let mut odd = false;
        for i in 0..word.len() {
            for j in i + 1..word.len() {
                if class(&word[i]) > class(&word[j]) && (self.factor_degree(&word[i]) * self.factor_degree(&word[j])) % 2 != 0 {
                    odd = !odd;
                }
            }
        }
        // Markers: each swap costs (−1)^{n·n}.
        let mut markers: Vec<u8> = word.iter().filter_map(|f| if let F::Marker(q) = f { Some(*q) } else { None }).collect();
        for i in 1..markers.len() {
            let mut j = i;
            while j > 0 && markers[j - 1] > markers[j] {
                markers.swap(j - 1, j);
                if self.n % 2 != 0 {
                    odd = !odd;
                }
                j -= 1;
            }
        }
        debug_assert!(markers.iter().copied().eq(ext..ext + int), "markers {markers:?} for ext {ext} int {int}");

        let nv = (ext + int) as usize;
        let unit = self.unit();
        let mut labels: Vec<(u8, u16)> = word
            .iter()
            .filter_map(|f| match f {
                F::Label(v, a) if *a != unit => Some((*v, *a)),
                _ => None,
            })
            .collect();
        for i in 1..labels.len() {
            let mut j = i;
            while j > 0 && labels[j - 1].0 > labels[j].0 {
                if (self.alg.degree(labels[j - 1].1 as usize) * self.alg.degree(labels[j].1 as usize)) % 2 != 0 {
                    odd = !odd;
                }
                labels.swap(j - 1, j);
                j -= 1;
            }
        }

        let mut edges: Vec<(u8, u8)> = word.iter().filter_map(|f| if let F::Edge(p, q) = f { Some((*p, *q)) } else { None }).collect();
        for e in edges.iter_mut() {
            if e.0 == e.1 {
                return GraphSum::new();
            }
            if e.0 > e.1 {
                *e = (e.1, e.0);
                if self.n % 2 != 0 {
                    odd = !odd;
                }
            }
        }
        for i in 1..edges.len() {
            let mut j = i;
            while j > 0 && edges[j - 1] > edges[j] {
                edges.swap(j - 1, j);
                if self.n % 2 == 0 {
                    odd = !odd;
                }
                j -= 1;
            }
        }
        if edges.windows(2).any(|w| w[0] == w[1]) && !self.multi_edges_allowed() {
            return GraphSum::new();
        }

        let mut per_vertex: Vec<SparseVec> = vec![vec![(self.alg.unit(), one())]; nv];
        for (v, a) in &labels {
            per_vertex[*v as usize] = self.alg.mul_vec(&per_vertex[*v as usize], &vec![(*a as usize, one())]);
        }
        let mut partial: Vec<(Vec<u16>, Rational)> = vec![(Vec::new(), sign(odd))];
        for v in &per_vertex {
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
        let mut out = GraphSum::new();
        for (labels, c) in partial {
            let g = Graph { ext, int, edges: edges.clone(), labels };
            if let Some((g, s)) = self.eps_reduce(g) {
                if let Some((g, s2)) = self.canonicalize_normalized(&g) {
                    out.add_term(g, c * s * s2);
                }
            }
        }
        out
    }

    /// Removes purely internal components: a single vertex labelled a
    /// becomes the scalar ε(a), anything larger is zero. In the
    /// unlabelled flavor every internal component is zero.
    fn eps_reduce(&self, mut g: Graph) -> Option<(Graph, Rational)> {
        let mut coeff = one();
        loop {
            let nv = (g.ext + g.int) as usize;
            let comp = crate::en_dual::blocks(nv, &g.edges);
            let ncomp = comp.iter().max().map_or(0, |m| m + 1);
            let mut has_ext = vec![false; ncomp];
            let mut size = vec![0usize; ncomp];
            for v in 0..nv {
                size[comp[v]] += 1;
                if v < g.ext as usize {
                    has_ext[comp[v]] = true;
                }
            }
            let Some(c) = (0..ncomp).find(|&c| !has_ext[c]) else { return Some((g, coeff)) };
            if self.flavor == Flavor::GraphsN || size[c] > 1 {
                return None;
            }
            let q = (0..nv).find(|&v| comp[v] == c).unwrap();
            let a = g.labels[q] as usize;
            let e = self.alg.eps(a).clone();
            if crate::rational::is_zero(&e) {
                return None;
            }
            // Bring x_q to the front, then ι_q(a) right behind it.
            let n = self.n as i64;
            let before_markers = (q - g.ext as usize) as i64;
            let mut parity = n * before_markers;
            if a != self.alg.unit() {
                let da = self.alg.degree(a) as i64;
                let labels_before: i64 = g.labels[..q].iter().map(|b| self.alg.degree(*b as usize) as i64).sum();
                parity += da * (n * (g.int as i64 - 1) + labels_before);
                if !self.conv.eps_marker_first {
                    parity += da * n;
                }
            }
            coeff *= e * sign(parity.rem_euclid(2) == 1);
            g.labels.remove(q);
            g.int -= 1;
            for (x, y) in g.edges.iter_mut() {
                if *x as usize > q {
                    *x -= 1;
                }
                if *y as usize > q {
                    *y -= 1;
                }
            }
        }
    }

    /// Minimises over permutations of the internal vertices. The input must
    /// already have sorted, oriented edges; returns None for graphs that are
    /// odd under an automorphism.
    fn canonicalize_normalized(&self, g: &Graph) -> Option<(Graph, Rational)> {
        if g.int <= 1 {
            return Some((g.clone(), one()));
        }
        let ext = g.ext;
        let unit = self.unit();
        let mut best: Option<(Graph, bool)> = None;
        let mut clash = false;
        for (perm, perm_odd) in permutations(g.int as usize) {
            let map = |v: u8| if v < ext { v } else { ext + perm[(v - ext) as usize] };
            let mut odd = *perm_odd && self.n % 2 != 0;
            // Labels: the word lists them by old vertex; re-sort by new vertex.
            let mut seq: Vec<(u8, u16)> = g
                .labels
                .iter()
                .enumerate()
                .filter(|(_, a)| **a != unit)
                .map(|(v, a)| (map(v as u8), *a))
                .collect();
            for i in 1..seq.len() {
                let mut j = i;
                while j > 0 && seq[j - 1].0 > seq[j].0 {
                    if (self.alg.degree(seq[j - 1].1 as usize) * self.alg.degree(seq[j].1 as usize)) % 2 != 0 {
                        odd = !odd;
                    }
                    seq.swap(j - 1, j);
                    j -= 1;
                }
            }
            let mut labels = vec![unit; g.labels.len()];
            for (v, a) in &seq {
                labels[*v as usize] = *a;
            }
            let mut edges: Vec<(u8, u8)> = g
                .edges
                .iter()
                .map(|(p, q)| {
                    let (p, q) = (map(*p), map(*q));
                    if p > q {
                        if self.n % 2 != 0 {
                            odd = !odd;
                        }
                        (q, p)
                    } else {
                        (p, q)
                    }
                })
                .collect();
            for i in 1..edges.len() {
                let mut j = i;
                while j > 0 && edges[j - 1] > edges[j] {
                    edges.swap(j - 1, j);
                    if self.n % 2 == 0 {
                        odd = !odd;
                    }
                    j -= 1;
                }
            }
            let cand = Graph { ext, int: g.int, edges, labels };
            match &best {
                None => best = Some((cand, odd)),
                Some((b, bo)) => match cand.cmp(b) {
                    std::cmp::Ordering::Less => {
                        best = Some((cand, odd));
                        clash = false;
                    }
                    std::cmp::Ordering::Equal if *bo != odd => clash = true,
                    _ => {}
                },
            }
        }
        // A clash found before a later, smaller candidate is irrelevant; only
        // clashes on the final minimum count, which the reset above ensures.
        if clash {
            return None;
        }
        best.map(|(g, o)| (g, sign(o)))
    }

    /// Canonical form of an arbitrary graph description.
    pub fn canonicalize(&self, g: &Graph) -> GraphSum {
        self.reduce(g.ext, g.int, &self.word(g))
    }

    fn valence(g: &Graph, v: u8) -> usize {
        g.edges.iter().filter(|(p, q)| *p == v || *q == v).count()
    }

    pub fn is_dead_end(g: &Graph, e: (u8, u8)) -> bool {
        let internal_univalent = |v: u8| v >= g.ext && Self::valence(g, v) == 1;
        internal_univalent(e.0) || internal_univalent(e.1)
    }

    pub fn differential_basis(&self, g: &Graph) -> GraphSum {
        let mut out = GraphSum::new();
        for part in self.differential_parts(g).iter() {
            out.add(part);
        }
        out
    }

    /// The pieces d_A, d_split, d_contr of the differential on one graph
    /// (the first two vanish in the unlabelled flavor).
    pub fn differential_parts(&self, g: &Graph) -> [GraphSum; 3] {
        let w = self.word(g);
        let mut d_a = GraphSum::new();
        let mut split = GraphSum::new();
        let mut contr = GraphSum::new();
        let degs: Vec<i32> = w.iter().map(|f| self.factor_degree(f)).collect();
        let marker_deg: i32 = -self.n * g.int as i32;

        if self.flavor == Flavor::GraphsA {
            let mut prefix = 0i32;
            for (p, f) in w.iter().enumerate() {
                match f {
                    F::Label(v, a) => {
                        for (b, c) in self.alg.d(*a as usize) {
                            let mut t = w.clone();
                            t[p] = F::Label(*v, *b as u16);
                            d_a.add_scaled(&self.reduce(g.ext, g.int, &t), &(c * sign(prefix % 2 != 0)));
                        }
                    }
                    F::Edge(u, v) => {
                        let pre = if self.conv.split_counts_markers { prefix } else { prefix - marker_deg };
                        for ((x, y), c) in self.alg.diagonal().iter() {
                            let mut t = w[..p].to_vec();
                            t.push(F::Label(*u, *x as u16));
                            t.push(F::Label(*v, *y as u16));
                            t.extend_from_slice(&w[p + 1..]);
                            split.add_scaled(&self.reduce(g.ext, g.int, &t), &(c * sign(pre % 2 != 0)));
                        }
                    }
                    F::Marker(_) => {}
                }
                prefix += degs[p];
            }
        }

        // Contraction of e_pq (q internal, q > p): bring x_q and then e_pq to
        // the front, drop both, and rename q to p.
        let n = self.n as i64;
        let labels_deg: i64 = g.labels.iter().map(|a| self.alg.degree(*a as usize) as i64).sum();
        for (idx, &(p, q)) in g.edges.iter().enumerate() {
            if q < g.ext {
                continue;
            }
            if self.flavor == Flavor::GraphsN && Self::is_dead_end(g, (p, q)) {
                continue;
            }
            // Contracting one copy of a repeated edge turns the others into loops.
            if g.edges.iter().filter(|e| **e == (p, q)).count() > 1 {
                continue;
            }
            let mut parity = n * (q - g.ext) as i64 + if self.conv.contraction_twist { n + 1 } else { 0 };
            parity += (n - 1) * (n * (g.int as i64 - 1) + labels_deg + (n - 1) * idx as i64);
            let rename = |v: u8| {
                if v == q {
                    p
                } else if v > q {
                    v - 1
                } else {
                    v
                }
            };
            let mut t: Vec<F> = Vec::with_capacity(w.len());
            for f in &w {
                match *f {
                    F::Marker(m) if m == q => {}
                    F::Marker(m) => t.push(F::Marker(rename(m))),
                    F::Label(v, a) => t.push(F::Label(rename(v), a)),
                    F::Edge(a, b) if (a, b) == (p, q) => {}
                    F::Edge(a, b) => t.push(F::Edge(rename(a), rename(b))),
                }
            }
            contr.add_scaled(&self.reduce(g.ext, g.int - 1, &t), &sign(parity.rem_euclid(2) == 1));
        }
        [d_a, split, contr]
    }

    pub fn differential(&self, x: &GraphSum) -> GraphSum {
        x.map_linear(|g| self.differential_basis(g))
    }
}

/// Memoised differential, for d² checks over large enumerations.
pub struct DiffCache<'c, 'a> {
    ctx: &'c GraphCtx<'a>,
    memo: HashMap<Graph, GraphSum>,
}

impl<'c, 'a> DiffCache<'c, 'a> {
    pub fn new(ctx: &'c GraphCtx<'a>) -> Self {
        DiffCache { ctx, memo: HashMap::new() }
    }

    pub fn get(&mut self, g: &Graph) -> GraphSum {
        if let Some(d) = self.memo.get(g) {
            return d.clone();
        }
        let d = self.ctx.differential_basis(g);
        self.memo.insert(g.clone(), d.clone());
        d
    }

    pub fn d_squared(&mut self, g: &Graph) -> GraphSum {
        let first = self.get(g);
        let mut out = GraphSum::new();
        for (h, c) in first.iter() {
            out.add_scaled(&self.get(h), c);
        }
        out
    }
}

#[cfg(test)]
mod tests;

#[derive(Clone, Debug, Default)]
pub struct RangeReport {
    pub ext: u8,
    pub graphs: usize,
    pub d2_failures: Vec<Graph>,
    /// Graphs on which ρ* (graphs_A) or the e_n^∨ projection (graphs_n)
    /// fails to commute with the differentials.
    pub chain_map_failures: Vec<Graph>,
}

impl RangeReport {
    pub fn passed(&self) -> bool {
        self.d2_failures.is_empty() && self.chain_map_failures.is_empty()
    }
}

/// Exhaustive d² and chain-map checks over all graphs with `ext` external
/// vertices within the bounds, spread over the available cores.
pub fn check_range(ctx: &GraphCtx, ext: u8, max_internal: u8, max_edges: usize) -> RangeReport {
    let graphs = enumerate::enumerate(ctx, ext, max_internal, max_edges);
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(16);
    let chunk = graphs.len().div_ceil(threads).max(1);
    let mut report = RangeReport { ext, graphs: graphs.len(), ..Default::default() };
    let parts: Vec<(Vec<Graph>, Vec<Graph>)> = std::thread::scope(|s| {
        let handles: Vec<_> = graphs
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    let mut cache = DiffCache::new(ctx);
                    let model = crate::ls_model::LsModel::new(ctx.alg, ext as usize);
                    let (mut d2, mut chain) = (Vec::new(), Vec::new());
                    for g in part {
                        if !cache.d_squared(g).is_zero() {
                            d2.push(g.clone());
                        }
                        let d = cache.get(g);
                        let ok = match ctx.flavor {
                            Flavor::GraphsA => {
                                let lhs = maps::rho_star(ctx, &d, &model);
                                let rhs = maps::rho_star(ctx, &GraphSum::single(g.clone(), one()), &model).map(|x| model.differential(&x));
                                matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r)
                            }
                            Flavor::GraphsN => maps::en_projection(ctx, &d, ext as usize).is_ok_and(|x| x.is_zero()),
                        };
                        if !ok {
                            chain.push(g.clone());
                        }
                    }
                    (d2, chain)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    for (d2, chain) in parts {
        report.d2_failures.extend(d2);
        report.chain_map_failures.extend(chain);
    }
    report
}
