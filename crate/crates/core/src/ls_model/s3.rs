//! The explicit comparison H*(S³) ⊗ e_3^∨(k) → G_{H*(S³)}(k+1):
//! υ⊗1 ↦ ι_0(υ), 1⊗ω_ij ↦ ω_ij + ω_0i − ω_0j, extended multiplicatively.
//! Source vertices are 1..k, the extra target vertex is 0.

use super::{Gen, LsElement, LsModel};
use crate::en_dual::{admissible_monomials, Edge};
use crate::error::Error;
use crate::linalg::{betti_numbers, rank, SparseMatrix};
use crate::pd_algebra::PdAlgebra;
use crate::rational::{int, one, Rational};
use std::collections::BTreeMap;

/// Source basis element: a label of H*(S³) (0 = 1, 1 = υ) and an admissible
/// monomial on vertices 0..k−1 (standing for 1..k).
pub type SourceBasis = (u16, Vec<Edge>);

fn image_words(label: u16, edges: &[Edge]) -> Vec<(Vec<Gen>, Rational)> {
    let mut partial: Vec<(Vec<Gen>, Rational)> = vec![(vec![Gen::Iota(0, label)], one())];
    for (i, j) in edges {
        let (i, j) = (i + 1, j + 1);
        let terms = [(Gen::Omega(i, j), 1), (Gen::Omega(0, i), 1), (Gen::Omega(0, j), -1)];
        partial = partial
            .into_iter()
            .flat_map(|(w, c)| {
                terms.iter().map(move |(g, s)| {
                    let mut w = w.clone();
                    w.push(*g);
                    (w, &c * int(*s))
                })
            })
            .collect();
    }
    partial
}

pub fn comparison_map(target: &LsModel, label: u16, edges: &[Edge]) -> LsElement {
    let mut out = LsElement::new();
    for (w, c) in image_words(label, edges) {
        out.add_scaled(&target.reduce_unchecked(&w), &c);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S3Report {
    pub k: usize,
    /// f kills ω_ij² and every Arnold relation.
    pub well_defined: bool,
    /// d(f(x)) = 0 for every source basis element.
    pub chain_map: bool,
    /// Per degree: (dim of source, Betti number of target, rank of the induced map).
    pub degrees: BTreeMap<i64, (usize, i64, usize)>,
    pub quasi_isomorphism: bool,
}

impl S3Report {
    pub fn passed(&self) -> bool {
        self.well_defined && self.chain_map && self.quasi_isomorphism
    }
}

pub fn s3_comparison(k: usize) -> Result<S3Report, Error> {
    let s3 = crate::pd_algebra::sphere(3)?;
    s3_comparison_with(&s3, k)
}

fn s3_comparison_with(s3: &PdAlgebra, k: usize) -> Result<S3Report, Error> {
    let target = LsModel::new(s3, k + 1);
    let f_omega = |i: u8, j: u8| comparison_map(&target, 0, &[(i, j)]);

    let mut well_defined = true;
    for i in 0..k as u8 {
        for j in i + 1..k as u8 {
            let x = f_omega(i, j);
            well_defined &= target.multiply(&x, &x).is_zero();
            // ω_ji ↦ (−1)^3 f(ω_ij).
            let mut flipped = comparison_map(&target, 0, &[(j, i)]);
            flipped.add(&x);
            well_defined &= flipped.is_zero();
            for l in j + 1..k as u8 {
                let mut sum = LsElement::new();
                for (a, b) in [((i, j), (j, l)), ((j, l), (l, i)), ((l, i), (i, j))] {
                    sum.add(&target.multiply(&comparison_map(&target, 0, &[a]), &comparison_map(&target, 0, &[b])));
                }
                well_defined &= sum.is_zero();
            }
        }
    }

    let complex = target.complex()?;
    let betti = betti_numbers(&complex.complex)?;
    let mut source: BTreeMap<i64, Vec<SourceBasis>> = BTreeMap::new();
    for m in admissible_monomials(k) {
        for label in 0..2u16 {
            let deg = 2 * m.len() as i64 + 3 * label as i64;
            source.entry(deg).or_default().push((label, m.clone()));
        }
    }

    let mut chain_map = true;
    let mut quasi = true;
    let mut degrees = BTreeMap::new();
    for (deg, xs) in &source {
        let mut cols = Vec::new();
        for (label, m) in xs {
            let y = comparison_map(&target, *label, m);
            chain_map &= target.differential(&y).is_zero();
            cols.push(complex.coordinates(*deg, &y)?);
        }
        let rows = complex.complex.dim(*deg);
        let f = SparseMatrix::from_columns(rows, cols);
        let boundary = complex.complex.differential(deg - 1).cloned().unwrap_or_else(|| {
            SparseMatrix::zeros(rows, complex.complex.dim(deg - 1))
        });
        let r_b = rank(&boundary);
        let r_all = rank(&boundary.hstack(&f));
        let induced = r_all - r_b;
        let b = betti.coeff(*deg);
        quasi &= induced == xs.len() && b == xs.len() as i64;
        degrees.insert(*deg, (xs.len(), b, induced));
    }
    // Target cohomology must be concentrated where the source lives.
    for (deg, b) in betti.pairs() {
        if !source.contains_key(&deg) && b != 0 {
            quasi = false;
            degrees.insert(deg, (0, b, 0));
        }
    }
    Ok(S3Report { k, well_defined, chain_map, degrees, quasi_isomorphism: quasi })
}

pub fn render_source(x: &SourceBasis) -> String {
    let mut parts = Vec::new();
    if x.0 == 1 {
        parts.push("υ".to_string());
    }
    for (i, j) in &x.1 {
        parts.push(format!("ω{}{}", i + 1, j + 1));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("·")
    }
}
