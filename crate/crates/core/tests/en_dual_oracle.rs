//! Independent check of the e_n^∨ rewriting: the quotient of the free
//! graded-commutative algebra on the ω_ij (with ω² = 0) by the Arnold ideal
//! is computed by brute-force linear algebra, degree by degree.

use confmodel::en_dual::{en_dual_basis, normal_form, Edge};
use confmodel::linalg::{Echelon, SparseVec};
use confmodel::rational::int;
use std::collections::BTreeMap;

struct Free {
    n: i32,
    gens: Vec<Edge>,
}

type Elem = BTreeMap<Vec<usize>, i64>;

impl Free {
    fn new(n: i32, k: usize) -> Self {
        let mut gens = Vec::new();
        for i in 0..k as u8 {
            for j in i + 1..k as u8 {
                gens.push((i, j));
            }
        }
        Free { n, gens }
    }

    fn gen(&self, u: u8, v: u8) -> Elem {
        let (e, s) = if u < v { ((u, v), 1) } else { ((v, u), if self.n % 2 == 0 { 1 } else { -1 }) };
        let g = self.gens.iter().position(|x| *x == e).unwrap();
        BTreeMap::from([(vec![g], s)])
    }

    fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let odd = self.n % 2 == 0;
        let mut out = Elem::new();
        for (s, a) in x {
            for (t, b) in y {
                if s.iter().any(|g| t.contains(g)) {
                    continue;
                }
                let inv = s.iter().map(|p| t.iter().filter(|q| *q < p).count()).sum::<usize>();
                let sign = if odd && inv % 2 == 1 { -1 } else { 1 };
                let mut m: Vec<usize> = s.iter().chain(t.iter()).copied().collect();
                m.sort();
                *out.entry(m).or_insert(0) += sign * a * b;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn word(&self, edges: &[Edge]) -> Elem {
        edges.iter().fold(BTreeMap::from([(vec![], 1)]), |acc, (u, v)| self.mul(&acc, &self.gen(*u, *v)))
    }

    fn subsets(&self, r: usize) -> Vec<Vec<usize>> {
        fn rec(start: usize, m: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == r {
                out.push(cur.clone());
                return;
            }
            for g in start..m {
                cur.push(g);
                rec(g + 1, m, r, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, self.gens.len(), r, &mut Vec::new(), &mut out);
        out
    }
}

fn to_vec(index: &BTreeMap<Vec<usize>, usize>, x: &Elem) -> SparseVec {
    let mut v: SparseVec = x.iter().map(|(m, c)| (index[m], int(*c))).collect();
    v.sort_by_key(|e| e.0);
    v
}

#[test]
fn quotient_dimensions_and_normal_forms_agree_with_brute_force() {
    for n in [2, 3] {
        for k in 1..=5usize {
            let f = Free::new(n, k);
            let (_, poly) = en_dual_basis(n, k);
            let mut arnold = Vec::new();
            for u in 0..k as u8 {
                for v in u + 1..k as u8 {
                    for w in v + 1..k as u8 {
                        let mut rel = f.mul(&f.gen(u, v), &f.gen(v, w));
                        for (m, c) in f.mul(&f.gen(v, w), &f.gen(w, u)).into_iter().chain(f.mul(&f.gen(w, u), &f.gen(u, v))) {
                            *rel.entry(m).or_insert(0) += c;
                        }
                        rel.retain(|_, c| *c != 0);
                        arnold.push(rel);
                    }
                }
            }
            for r in 0..k {
                let monos = f.subsets(r);
                let index: BTreeMap<Vec<usize>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
                let mut ideal = Echelon::new();
                if r >= 2 {
                    for rel in &arnold {
                        for m in f.subsets(r - 2) {
                            let x = f.mul(rel, &BTreeMap::from([(m, 1)]));
                            ideal.insert(to_vec(&index, &x));
                        }
                    }
                }
                let quotient = monos.len() - ideal.rank();
                assert_eq!(quotient as i64, poly.coeff(r as i64 * (n as i64 - 1)), "n={n} k={k} r={r}");

                // word − NF(word) lies in the ideal.
                for m in &monos {
                    let edges: Vec<Edge> = m.iter().map(|g| f.gens[*g]).collect();
                    let mut diff = f.word(&edges);
                    for (adm, c) in normal_form(n, &edges) {
                        for (mm, cc) in f.word(&adm) {
                            *diff.entry(mm).or_insert(0) -= c * cc;
                        }
                    }
                    diff.retain(|_, c| *c != 0);
                    let rem = ideal.reduce(to_vec(&index, &diff));
                    assert!(rem.is_empty(), "n={n} k={k} word {edges:?}");
                }
            }
        }
    }
}
