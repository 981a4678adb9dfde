//! Multilinear parts of free graded Lie algebras: Lie_n(U) with letters of
//! degree 1 − n, in the left-normed basis [[…[x_m, x_σ2], …], x_σk] with m
//! the minimum letter.
//!
//! Normal forms go through the free associative algebra: a multilinear Lie
//! polynomial P equals Σ_u P[m·u] · ℓ(m·u), since the left-normed word ℓ(m·u)
//! expands to m·u plus words not starting with m.

use crate::combination::Combination;
use crate::error::Error;
use crate::rational::{one, sign};

/// Associative words, and Lie elements as combinations of left-normed words
/// (stored as their letter sequence, minimum first).
pub type Assoc = Combination<Vec<u8>>;
pub type LieElement = Combination<Vec<u8>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieExpr {
    Letter(u8),
    Bracket(Box<LieExpr>, Box<LieExpr>),
}

impl LieExpr {
    pub fn bracket(a: LieExpr, b: LieExpr) -> LieExpr {
        LieExpr::Bracket(Box::new(a), Box::new(b))
    }

    pub fn letters(&self) -> Vec<u8> {
        match self {
            LieExpr::Letter(x) => vec![*x],
            LieExpr::Bracket(a, b) => {
                let mut l = a.letters();
                l.extend(b.letters());
                l
            }
        }
    }

    /// The left-normed bracket of a letter sequence.
    pub fn left_normed(word: &[u8]) -> LieExpr {
        let mut e = LieExpr::Letter(word[0]);
        for x in &word[1..] {
            e = LieExpr::bracket(e, LieExpr::Letter(*x));
        }
        e
    }
}

fn letter_odd(n: i32) -> bool {
    (n - 1) % 2 != 0
}

fn mul(x: &Assoc, y: &Assoc) -> Assoc {
    let mut out = Assoc::new();
    for (u, a) in x.iter() {
        for (v, b) in y.iter() {
            let mut w = u.clone();
            w.extend_from_slice(v);
            out.add_term(w, a * b);
        }
    }
    out
}

/// [X, Y] = XY − (−1)^{|X||Y|} YX for homogeneous X, Y on `lx`, `ly` letters.
fn commutator(n: i32, x: &Assoc, lx: usize, y: &Assoc, ly: usize) -> Assoc {
    let mut out = mul(x, y);
    let odd = letter_odd(n) && lx % 2 == 1 && ly % 2 == 1;
    out.add_scaled(&mul(y, x), &-sign(odd));
    out
}

pub fn expand(n: i32, e: &LieExpr) -> Assoc {
    match e {
        LieExpr::Letter(x) => Assoc::single(vec![*x], one()),
        LieExpr::Bracket(a, b) => commutator(n, &expand(n, a), a.letters().len(), &expand(n, b), b.letters().len()),
    }
}

pub fn expand_element(n: i32, x: &LieElement) -> Assoc {
    let mut out = Assoc::new();
    for (w, c) in x.iter() {
        out.add_scaled(&expand(n, &LieExpr::left_normed(w)), c);
    }
    out
}

/// Reads off the left-normed coordinates of a multilinear Lie polynomial.
pub fn from_assoc(p: &Assoc) -> LieElement {
    let Some(m) = p.keys().next().and_then(|w| w.iter().min().copied()) else { return LieElement::new() };
    p.iter().filter(|(w, _)| w[0] == m).map(|(w, c)| (w.clone(), c.clone())).collect()
}

pub fn lie_normal_form(n: i32, e: &LieExpr) -> Result<LieElement, Error> {
    let mut l = e.letters();
    l.sort();
    if l.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument(format!("repeated letter in a Lie word on {l:?}")));
    }
    Ok(from_assoc(&expand(n, e)))
}

/// Bracket of Lie elements on disjoint letter sets.
pub fn bracket(n: i32, x: &LieElement, y: &LieElement) -> LieElement {
    let lx = x.keys().next().map_or(0, Vec::len);
    let ly = y.keys().next().map_or(0, Vec::len);
    from_assoc(&commutator(n, &expand_element(n, x), lx, &expand_element(n, y), ly))
}

/// Left-normed basis words on a sorted letter set.
pub fn basis_words(letters: &[u8]) -> Vec<Vec<u8>> {
    let Some((&m, rest)) = letters.split_first() else { return vec![] };
    let mut out = Vec::new();
    let mut cur = vec![m];
    fn rec(rest: &[u8], used: &mut Vec<bool>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == rest.len() + 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            if !used[i] {
                used[i] = true;
                cur.push(rest[i]);
                rec(rest, used, cur, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(rest, &mut vec![false; rest.len()], &mut cur, &mut out);
    out
}

/// All bracketings of all orderings of the letters (for brute-force checks).
pub fn all_bracketings(letters: &[u8]) -> Vec<LieExpr> {
    if letters.len() == 1 {
        return vec![LieExpr::Letter(letters[0])];
    }
    let mut out = Vec::new();
    let k = letters.len();
    // Split into two nonempty ordered halves by subset.
    for mask in 1..(1u32 << k) - 1 {
        let left: Vec<u8> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| letters[i]).collect();
        let right: Vec<u8> = (0..k).filter(|i| mask >> i & 1 == 0).map(|i| letters[i]).collect();
        for a in all_bracketings(&left) {
            for b in all_bracketings(&right) {
                out.push(LieExpr::bracket(a.clone(), b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rank, SparseMatrix};
    use crate::rational::int;
    use std::collections::BTreeMap;

    #[test]
    fn two_letters() {
        for n in [2, 3] {
            let e = LieExpr::bracket(LieExpr::Letter(0), LieExpr::Letter(1));
            assert_eq!(lie_normal_form(n, &e).unwrap(), LieElement::single(vec![0, 1], one()));
            let f = LieExpr::bracket(LieExpr::Letter(1), LieExpr::Letter(0));
            // Letters of degree 1 − n: odd for even n, where [y, x] = [x, y].
            let s = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(lie_normal_form(n, &f).unwrap(), LieElement::single(vec![0, 1], int(s)));
        }
    }

    #[test]
    fn jacobi_example() {
        // [[x2, x3], x1] for odd n (ordinary signs): by Jacobi it is
        // −[x1, [x2, x3]] = −[[x1, x2], x3] + [[x1, x3], x2].
        let e = LieExpr::bracket(LieExpr::bracket(LieExpr::Letter(1), LieExpr::Letter(2)), LieExpr::Letter(0));
        let nf = lie_normal_form(3, &e).unwrap();
        let mut want = LieElement::new();
        want.add_term(vec![0, 1, 2], int(-1));
        want.add_term(vec![0, 2, 1], int(1));
        assert_eq!(nf, want);
    }

    #[test]
    fn repeated_letters_rejected() {
        let e = LieExpr::bracket(LieExpr::Letter(1), LieExpr::Letter(1));
        assert!(lie_normal_form(2, &e).is_err());
    }

    #[test]
    fn span_has_factorial_dimension_and_normal_forms_are_exact() {
        for n in [2, 3] {
            for k in 1..=4u8 {
                let letters: Vec<u8> = (0..k).collect();
                let exprs = all_bracketings(&letters);
                // Independent: rank of the expansions in the associative algebra.
                let mut index = BTreeMap::new();
                let mut cols = Vec::new();
                for e in &exprs {
                    let p = expand(n, e);
                    let col: Vec<(usize, _)> = p
                        .iter()
                        .map(|(w, c)| {
                            let l = index.len();
                            (*index.entry(w.clone()).or_insert(l), c.clone())
                        })
                        .collect();
                    cols.push(col);
                    let nf = lie_normal_form(n, e).unwrap();
                    assert_eq!(expand_element(n, &nf), p, "n={n} {e:?}");
                }
                let mut cols: Vec<_> = cols.into_iter().map(|mut c| {
                    c.sort_by_key(|(i, _)| *i);
                    c
                }).collect();
                cols.retain(|c| !c.is_empty());
                let m = SparseMatrix::from_columns(index.len(), cols);
                let fact: usize = (1..k as usize).product();
                assert_eq!(rank(&m), fact, "n={n} k={k}");
                assert_eq!(basis_words(&letters).len(), fact);
            }
        }
    }
}
