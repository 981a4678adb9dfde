//! Finite-dimensional graded Lie algebras g and the CE complex of A ⊗ g,
//! truncated to symmetric words of length ≤ cap (the bracket part shortens
//! words, so the truncation is a subcomplex).

use super::engine::{canonical, ce_degree, ce_differential, DgLie, Monomial};
use crate::combination::Combination;
use crate::error::Error;
use crate::linalg::{betti_numbers, Poincare, SparseVec};
use crate::ls_model::LsComplex;
use crate::pd_algebra::PdAlgebra;
use crate::rational::{int, sign};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteLieAlgebra {
    pub name: String,
    pub names: Vec<String>,
    pub degrees: Vec<i32>,
    /// bracket[i][j] = [e_i, e_j].
    pub bracket: Vec<Vec<SparseVec>>,
}

impl FiniteLieAlgebra {
    /// Validates degrees, graded antisymmetry and the graded Jacobi identity
    /// on all basis triples.
    pub fn new(name: &str, names: Vec<String>, degrees: Vec<i32>, bracket: Vec<Vec<SparseVec>>) -> Result<Self, Error> {
        let n = names.len();
        if degrees.len() != n || bracket.len() != n || bracket.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidLie(format!("{name}: bracket table must be {n}×{n} with {n} degrees")));
        }
        let g = FiniteLieAlgebra { name: name.into(), names, degrees, bracket };
        for i in 0..n {
            for j in 0..n {
                for (k, _) in &g.bracket[i][j] {
                    if *k >= n {
                        return Err(Error::InvalidLie(format!("[{}, {}] has an out-of-range term", g.names[i], g.names[j])));
                    }
                    if g.degrees[*k] != g.degrees[i] + g.degrees[j] {
                        return Err(Error::InvalidLie(format!("[{}, {}] is not homogeneous", g.names[i], g.names[j])));
                    }
                }
                let mut sym = g.bracket[i][j].clone();
                let s = sign((g.degrees[i] * g.degrees[j]) % 2 != 0);
                sym = crate::linalg::axpy(&sym, &s, &g.bracket[j][i]);
                if !sym.is_empty() {
                    return Err(Error::InvalidLie(format!("antisymmetry fails for ({}, {})", g.names[i], g.names[j])));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // [x,[y,z]] − [[x,y],z] − (−1)^{|x||y|}[y,[x,z]]
                    let mut v = g.bracket_vec(&[(x, int(1))], &g.bracket[y][z]);
                    v = crate::linalg::axpy(&v, &int(-1), &g.bracket_vec(&g.bracket[x][y], &[(z, int(1))]));
                    let s = -sign((g.degrees[x] * g.degrees[y]) % 2 != 0);
                    v = crate::linalg::axpy(&v, &s, &g.bracket_vec(&[(y, int(1))], &g.bracket[x][z]));
                    if !v.is_empty() {
                        return Err(Error::InvalidLie(format!(
                            "Jacobi fails on ({}, {}, {})",
                            g.names[x], g.names[y], g.names[z]
                        )));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn bracket_vec(&self, x: &[(usize, crate::Rational)], y: &[(usize, crate::Rational)]) -> SparseVec {
        let mut acc: BTreeMap<usize, crate::Rational> = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in &self.bracket[*i][*j] {
                    *acc.entry(*k).or_default() += a * b * c;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !crate::rational::is_zero(c)).collect()
    }

    pub fn abelian(dim: usize) -> Self {
        let names = (1..=dim).map(|i| format!("x{i}")).collect();
        FiniteLieAlgebra::new(&format!("abelian:{dim}"), names, vec![0; dim], vec![vec![vec![]; dim]; dim]).unwrap()
    }

    /// The 2-dimensional non-abelian Lie algebra [e, f] = f.
    pub fn affine() -> Self {
        let b = vec![vec![vec![], vec![(1, int(1))]], vec![vec![(1, int(-1))], vec![]]];
        FiniteLieAlgebra::new("affine", vec!["e".into(), "f".into()], vec![0, 0], b).unwrap()
    }

    /// sl₂ in the basis h, e, f.
    pub fn sl2() -> Self {
        let (h, e, f) = (0, 1, 2);
        let mut b = vec![vec![vec![]; 3]; 3];
        b[h][e] = vec![(e, int(2))];
        b[e][h] = vec![(e, int(-2))];
        b[h][f] = vec![(f, int(-2))];
        b[f][h] = vec![(f, int(2))];
        b[e][f] = vec![(h, int(1))];
        b[f][e] = vec![(h, int(-1))];
        FiniteLieAlgebra::new("sl2", vec!["h".into(), "e".into(), "f".into()], vec![0, 0, 0], b).unwrap()
    }

    /// `abelian:N`, `affine`, `sl2`.
    pub fn builtin(name: &str) -> Result<Self, Error> {
        match name {
            "affine" | "nonabelian:2" => Ok(Self::affine()),
            "sl2" => Ok(Self::sl2()),
            _ => match name.strip_prefix("abelian:").map(str::parse::<usize>) {
                Some(Ok(d)) => Ok(Self::abelian(d)),
                _ => Err(Error::UnknownBuiltin(format!("{name} (expected abelian:N, affine or sl2)"))),
            },
        }
    }
}

/// A ⊗ g with [a ⊗ x, b ⊗ y] = (−1)^{|x||b|} ab ⊗ [x, y] and d = d_A ⊗ 1.
pub struct TensorLie<'a> {
    pub alg: &'a PdAlgebra,
    pub g: &'a FiniteLieAlgebra,
}

impl DgLie for TensorLie<'_> {
    /// (basis index in A, basis index in g)
    type Elem = (u16, u16);

    fn degree(&self, x: &(u16, u16)) -> i64 {
        self.alg.degree(x.0 as usize) as i64 + self.g.degrees[x.1 as usize] as i64
    }

    fn bracket(&self, x: &(u16, u16), y: &(u16, u16)) -> Combination<(u16, u16)> {
        let s = sign((self.g.degrees[x.1 as usize] * self.alg.degree(y.0 as usize)) % 2 != 0);
        let mut out = Combination::new();
        for (a, c1) in self.alg.mul(x.0 as usize, y.0 as usize) {
            for (k, c2) in &self.g.bracket[x.1 as usize][y.1 as usize] {
                out.add_term((*a as u16, *k as u16), c1 * c2 * &s);
            }
        }
        out
    }

    fn d(&self, x: &(u16, u16)) -> Combination<(u16, u16)> {
        self.alg.d(x.0 as usize).iter().map(|(a, c)| ((*a as u16, x.1), c.clone())).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CeHomology {
    pub cap: usize,
    /// Graded dimensions of the truncated complex.
    pub chains: Poincare,
    pub homology: Poincare,
}

pub fn ce_complex(a: &PdAlgebra, g: &FiniteLieAlgebra, cap: usize) -> Result<LsComplex<Monomial<(u16, u16)>>, Error> {
    if cap < 1 {
        return Err(Error::InvalidArgument("the word-length cap must be at least 1".into()));
    }
    let lie = TensorLie { alg: a, g };
    let gens: Vec<(u16, u16)> = (0..a.size() as u16).flat_map(|i| (0..g.dim() as u16).map(move |j| (i, j))).collect();
    let mut basis: BTreeMap<i64, Vec<Monomial<(u16, u16)>>> = BTreeMap::new();
    let mut cur = Vec::new();
    fn rec(lie: &TensorLie, gens: &[(u16, u16)], start: usize, cap: usize, cur: &mut Vec<(u16, u16)>, out: &mut BTreeMap<i64, Vec<Monomial<(u16, u16)>>>) {
        if let Some((m, _)) = canonical(lie, cur.clone()) {
            out.entry(ce_degree(lie, &m)).or_default().push(m);
        } else {
            return;
        }
        if cur.len() == cap {
            return;
        }
        for i in start..gens.len() {
            cur.push(gens[i]);
            rec(lie, gens, i, cap, cur, out);
            cur.pop();
        }
    }
    rec(&lie, &gens, 0, cap, &mut cur, &mut basis);
    LsComplex::build(basis, |m| ce_degree(&lie, m), |m| ce_differential(&lie, m))
}

pub fn ce_homology(a: &PdAlgebra, g: &FiniteLieAlgebra, cap: usize) -> Result<CeHomology, Error> {
    let cx = ce_complex(a, g, cap)?;
    Ok(CeHomology { cap, chains: cx.complex.dimension_polynomial(), homology: betti_numbers(&cx.complex)? })
}
