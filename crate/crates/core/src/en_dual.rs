//! The cohomology cooperad e_n^∨: generators ω_uv of degree n−1 subject to
//! ω_vu = (−1)^n ω_uv, ω_uv² = 0 and the Arnold relation. Monomials are
//! rewritten to admissible form: every edge (i, j) has i < j and the right
//! endpoints strictly increase.

use crate::linalg::Poincare;
use std::cell::RefCell;
use std::collections::HashMap;

pub type Edge = (u8, u8);

/// Integer combination of admissible monomials.
pub type EnTerms = Vec<(Vec<Edge>, i64)>;

pub fn is_admissible(edges: &[Edge]) -> bool {
    edges.iter().all(|(i, j)| i < j) && edges.windows(2).all(|w| w[0].1 < w[1].1)
}

/// Sort key of the canonical order: by right endpoint, then left.
fn key(e: &Edge) -> (u8, u8) {
    (e.1, e.0)
}

thread_local! {
    static CACHE: RefCell<[HashMap<Vec<Edge>, EnTerms>; 2]> = RefCell::new([HashMap::new(), HashMap::new()]);
}

/// Orients and sorts a word of ω's. Returns the sign, or `None` when the word
/// is zero (a repeated edge) or ill-formed (a loop).
pub fn orient_and_sort(n: i32, edges: &mut [Edge]) -> Option<i64> {
    let even = n % 2 == 0;
    let mut s = 1i64;
    for e in edges.iter_mut() {
        if e.0 == e.1 {
            return None;
        }
        if e.0 > e.1 {
            *e = (e.1, e.0);
            if !even {
                s = -s;
            }
        }
    }
    // Insertion sort; each transposition of two ω's costs (−1)^{(n−1)²}.
    for i in 1..edges.len() {
        let mut j = i;
        while j > 0 && key(&edges[j - 1]) > key(&edges[j]) {
            edges.swap(j - 1, j);
            if even {
                s = -s;
            }
            j -= 1;
        }
    }
    if edges.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(s)
}

/// Normal form of an arbitrary word ω_{e_1}⋯ω_{e_r}.
pub fn normal_form(n: i32, word: &[Edge]) -> EnTerms {
    let mut w = word.to_vec();
    let Some(s) = orient_and_sort(n, &mut w) else { return Vec::new() };
    let mut out = normal_form_sorted(n, w);
    if s < 0 {
        for t in out.iter_mut() {
            t.1 = -t.1;
        }
    }
    out
}

fn normal_form_sorted(n: i32, w: Vec<Edge>) -> EnTerms {
    if is_admissible(&w) {
        return vec![(w, 1)];
    }
    let parity = (n.rem_euclid(2)) as usize;
    if let Some(hit) = CACHE.with(|c| c.borrow()[parity].get(&w).cloned()) {
        return hit;
    }
    // Largest repeated right endpoint j, with ω_aj ω_bj adjacent (a < b):
    // ω_aj ω_bj = ω_ab ω_bj + (−1)^n ω_aj ω_ab.
    let p = (0..w.len() - 1).rev().find(|&p| w[p].1 == w[p + 1].1).expect("non-admissible sorted word");
    let (a, b, j) = (w[p].0, w[p + 1].0, w[p].1);
    let mut acc: HashMap<Vec<Edge>, i64> = HashMap::new();
    let sn = if n % 2 == 0 { 1 } else { -1 };
    for (pair, c) in [([(a, b), (b, j)], 1i64), ([(a, j), (a, b)], sn)] {
        let mut t = w.clone();
        t[p] = pair[0];
        t[p + 1] = pair[1];
        for (m, v) in normal_form(n, &t) {
            *acc.entry(m).or_insert(0) += c * v;
        }
    }
    let mut out: EnTerms = acc.into_iter().filter(|(_, v)| *v != 0).collect();
    out.sort();
    CACHE.with(|c| c.borrow_mut()[parity].insert(w, out.clone()));
    out
}

/// All admissible monomials on k vertices: vertex j ≥ 1 either has no edge
/// ending at it or one edge from some i < j.
pub fn admissible_monomials(k: usize) -> Vec<Vec<Edge>> {
    let mut out = vec![Vec::new()];
    for j in 1..k {
        let mut next = Vec::new();
        for m in &out {
            next.push(m.clone());
            for i in 0..j {
                let mut e = m.clone();
                e.push((i as u8, j as u8));
                next.push(e);
            }
        }
        out = next;
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Basis of e_n^∨(k) together with its Poincaré polynomial.
pub fn en_dual_basis(n: i32, k: usize) -> (Vec<Vec<Edge>>, Poincare) {
    let basis = admissible_monomials(k);
    let mut p = Poincare::new();
    for m in &basis {
        p.add(m.len() as i64 * (n as i64 - 1), 1);
    }
    (basis, p)
}

/// ∏_{i=1}^{k−1} (1 + i t^{n−1}).
pub fn expected_polynomial(n: i32, k: usize) -> Poincare {
    let mut p = Poincare::one();
    for i in 1..k {
        p = p.mul(&Poincare::from_pairs([(0, 1), (n as i64 - 1, i as i64)]));
    }
    p
}

/// Connected components as a block index per vertex, blocks numbered by
/// their minimum vertex.
pub fn blocks(k: usize, edges: &[Edge]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, *a as usize), find(&mut parent, *b as usize));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut id = vec![usize::MAX; k];
    let mut out = vec![0; k];
    let mut next = 0;
    for v in 0..k {
        let r = find(&mut parent, v);
        if id[r] == usize::MAX {
            id[r] = next;
            next += 1;
        }
        out[v] = id[r];
    }
    out
}

/// Admissible monomials whose graph is connected (a single block).
pub fn connected_monomials(k: usize) -> Vec<Vec<Edge>> {
    admissible_monomials(k).into_iter().filter(|m| k == 0 || m.len() == k - 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_and_square() {
        for n in 2..5 {
            let s = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(normal_form(n, &[(1, 0)]), vec![(vec![(0, 1)], s)]);
            assert!(normal_form(n, &[(0, 1), (0, 1)]).is_empty());
            assert!(normal_form(n, &[(0, 1), (1, 0)]).is_empty());
        }
    }

    #[test]
    fn arnold_rewrite() {
        for n in 2..5 {
            let sn = if n % 2 == 0 { 1 } else { -1 };
            let mut expect = vec![(vec![(0, 1), (1, 2)], 1), (vec![(0, 1), (0, 2)], sn * if n % 2 == 0 { -1 } else { 1 })];
            expect.sort();
            assert_eq!(normal_form(n, &[(0, 2), (1, 2)]), expect);
        }
    }

    #[test]
    fn counts_match_factorial_and_product() {
        for n in 2..5 {
            for k in 0..7 {
                let (b, p) = en_dual_basis(n, k);
                assert_eq!(b.len(), (1..=k).product::<usize>().max(1));
                assert_eq!(p, expected_polynomial(n, k));
            }
        }
        assert_eq!(en_dual_basis(2, 3).1, Poincare::from_pairs([(0, 1), (1, 3), (2, 2)]));
        assert_eq!(connected_monomials(4).len(), 6);
    }

    #[test]
    fn blocks_by_minimum() {
        assert_eq!(blocks(4, &[(1, 3)]), vec![0, 1, 2, 1]);
        assert_eq!(blocks(3, &[(0, 2), (1, 2)]), vec![0, 0, 0]);
    }
}
