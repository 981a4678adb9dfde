//! Chevalley–Eilenberg chains of a dg Lie algebra g, graded cohomologically:
//! Sym(g[1]) with sx of degree |x| − 1 and the coderivation extending
//! ℓ₁(sx) = −s(dx) and ℓ₂(sx, sy) = (−1)^{|x|} s[x, y]. Both parts raise
//! degree by one.

use crate::combination::Combination;
use crate::rational::{sign, Rational};
use std::fmt::Debug;
use std::hash::Hash;

pub trait DgLie {
    type Elem: Ord + Clone + Debug + Hash;
    fn degree(&self, x: &Self::Elem) -> i64;
    fn bracket(&self, x: &Self::Elem, y: &Self::Elem) -> Combination<Self::Elem>;
    fn d(&self, x: &Self::Elem) -> Combination<Self::Elem>;
}

/// A monomial of Sym(g[1]): generators in nondecreasing order.
pub type Monomial<E> = Vec<E>;
pub type CeChain<E> = Combination<Monomial<E>>;

fn shifted_odd<L: DgLie>(lie: &L, x: &L::Elem) -> bool {
    (lie.degree(x) - 1) % 2 != 0
}

pub fn ce_degree<L: DgLie>(lie: &L, m: &[L::Elem]) -> i64 {
    m.iter().map(|x| lie.degree(x) - 1).sum()
}

/// Sorts a word of generators with Koszul signs; None if an odd generator
/// repeats.
pub fn canonical<L: DgLie>(lie: &L, mut w: Vec<L::Elem>) -> Option<(Monomial<L::Elem>, Rational)> {
    let mut odd = false;
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            if shifted_odd(lie, &w[j - 1]) && shifted_odd(lie, &w[j]) {
                odd = !odd;
            }
            w.swap(j - 1, j);
            j -= 1;
        }
    }
    if w.windows(2).any(|p| p[0] == p[1] && shifted_odd(lie, &p[0])) {
        return None;
    }
    Some((w, sign(odd)))
}

pub fn ce_differential<L: DgLie>(lie: &L, m: &[L::Elem]) -> CeChain<L::Elem> {
    let mut out = CeChain::new();
    let par: Vec<i64> = m.iter().map(|x| (lie.degree(x) - 1).rem_euclid(2)).collect();
    let mut push = |w: Vec<L::Elem>, c: Rational| {
        if let Some((w, s)) = canonical(lie, w) {
            out.add_term(w, c * s);
        }
    };
    let mut prefix = 0;
    for i in 0..m.len() {
        for (y, c) in lie.d(&m[i]).iter() {
            let mut w = m.to_vec();
            w[i] = y.clone();
            push(w, -c * sign(prefix % 2 != 0));
        }
        prefix += par[i];
    }
    for i in 0..m.len() {
        let before_i: i64 = par[..i].iter().sum();
        for j in i + 1..m.len() {
            let before_j: i64 = par[..j].iter().sum::<i64>() - par[i];
            let koszul = par[i] * before_i + par[j] * before_j;
            let ell = sign((koszul + lie.degree(&m[i])).rem_euclid(2) != 0);
            let rest: Vec<L::Elem> = m.iter().enumerate().filter(|(l, _)| *l != i && *l != j).map(|(_, x)| x.clone()).collect();
            for (z, c) in lie.bracket(&m[i], &m[j]).iter() {
                let mut w = Vec::with_capacity(rest.len() + 1);
                w.push(z.clone());
                w.extend(rest.iter().cloned());
                push(w, c * &ell);
            }
        }
    }
    out
}

pub fn ce_chain_differential<L: DgLie>(lie: &L, x: &CeChain<L::Elem>) -> CeChain<L::Elem> {
    x.map_linear(|m| ce_differential(lie, m))
}
