//! Exact sparse linear algebra over ℚ and cohomology of graded cochain
//! complexes. Everything is degree-local: a complex is never assembled into
//! one big matrix.

use crate::error::Error;
use crate::rational::{is_zero, Rational};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Sorted by index, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// `a + f·b` for sorted sparse vectors.
pub fn axpy(a: &[(usize, Rational)], f: &Rational, b: &[(usize, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + f * &b[j].1;
            if !is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row-echelon accumulator: each stored row is normalised to leading
/// coefficient 1 and is keyed by its leading index.
#[derive(Default, Clone, Debug)]
pub struct Echelon {
    pivots: HashMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `v` against the stored rows; returns the remainder.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut start = 0;
        while start < v.len() {
            let (lead, c) = (v[start].0, v[start].1.clone());
            match self.pivots.get(&lead) {
                Some(row) => {
                    let tail = axpy(&v[start..], &-c, row);
                    v.truncate(start);
                    v.extend(tail);
                }
                None => start += 1,
            }
        }
        v
    }

    /// Inserts `v`; returns whether it was independent of the stored rows.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = v;
        loop {
            let Some((lead, c)) = v.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(row) => v = axpy(&v, &-c, row),
                None => {
                    if c != crate::rational::one() {
                        let inv = Rational::from(1) / c;
                        for e in v.iter_mut() {
                            e.1 *= &inv;
                        }
                    }
                    self.pivots.insert(lead, v);
                    return true;
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.columns[i].push((i, crate::rational::one()));
        }
        m
    }

    /// Columns are sorted and zero-stripped on the way in.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|mut c| {
                c.sort_by_key(|e| e.0);
                let mut out: SparseVec = Vec::with_capacity(c.len());
                for (i, v) in c {
                    assert!(i < rows, "row index {i} out of range {rows}");
                    match out.last_mut() {
                        Some(last) if last.0 == i => last.1 += v,
                        _ => out.push((i, v)),
                    }
                }
                out.retain(|e| !is_zero(&e.1));
                out
            })
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for (i, j, v) in entries {
            assert!(j < cols, "column index {j} out of range {cols}");
            columns[j].push((i, v));
        }
        Self::from_columns(rows, columns)
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, Rational::from(v))));
        Self::from_entries(r, c, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, Rational)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.columns[j]
            .binary_search_by_key(&i, |e| e.0)
            .map(|p| self.columns[j][p].1.clone())
            .unwrap_or_else(|_| crate::rational::zero())
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols);
        let col = &mut self.columns[j];
        match col.binary_search_by_key(&i, |e| e.0) {
            Ok(p) if is_zero(&v) => {
                col.remove(p);
            }
            Ok(p) => col[p].1 = v,
            Err(_) if is_zero(&v) => {}
            Err(p) => col.insert(p, (i, v)),
        }
    }

    /// Entries in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.columns.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (i, j, v) in self.entries() {
            columns[i].push((j, v.clone()));
        }
        SparseMatrix { rows: self.cols, cols: self.rows, columns }
    }

    /// `self · v` for a sparse column vector.
    pub fn apply(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (j, c) in v {
            for (i, x) in &self.columns[*j] {
                *acc.entry(*i).or_insert_with(crate::rational::zero) += c * x;
            }
        }
        acc.into_iter().filter(|(_, v)| !is_zero(v)).collect()
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, Error> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        Ok(SparseMatrix { rows: self.rows, cols: other.cols, columns })
    }

    /// Columns side by side.
    pub fn hstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, other.rows);
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        SparseMatrix { rows: self.rows, cols: self.cols + other.cols, columns }
    }

    /// Reindex rows and columns: entry (i, j) moves to (row_perm[i], col_perm[j]).
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        let entries = self.entries().map(|(i, j, v)| (row_perm[i], col_perm[j], v.clone()));
        SparseMatrix::from_entries(self.rows, self.cols, entries)
    }
}

/// Exact rank over ℚ. Sparse columns are fed to an echelon accumulator,
/// sparsest first to limit fill-in.
pub fn rank(m: &SparseMatrix) -> usize {
    let mut order: Vec<usize> = (0..m.cols).filter(|&j| !m.columns[j].is_empty()).collect();
    order.sort_by_key(|&j| (m.columns[j].len(), j));
    let mut ech = Echelon::new();
    for j in order {
        ech.insert(m.columns[j].clone());
        if ech.rank() == m.rows {
            break;
        }
    }
    ech.rank()
}

/// Inverse of a square dense matrix, `None` when singular.
pub fn invert_dense(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { crate::rational::one() } else { crate::rational::zero() }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !is_zero(&a[r][col]))?;
        a.swap(col, p);
        inv.swap(col, p);
        let f = Rational::from(1) / a[col][col].clone();
        for j in 0..n {
            a[col][j] *= &f;
            inv[col][j] *= &f;
        }
        for r in 0..n {
            if r != col && !is_zero(&a[r][col]) {
                let g = a[r][col].clone();
                for j in 0..n {
                    let (x, y) = (&a[col][j] * &g, &inv[col][j] * &g);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    Some(inv)
}

/// Finite graded dimensions, keyed by degree. Coefficients are signed so
/// that products and Euler characteristics stay in the same type.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poincare {
    coeffs: BTreeMap<i64, i64>,
}

impl Poincare {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_pairs([(0, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::new();
        for (d, c) in pairs {
            p.add(d, c);
        }
        p
    }

    pub fn add(&mut self, degree: i64, c: i64) {
        let e = self.coeffs.entry(degree).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&degree);
        }
    }

    pub fn coeff(&self, degree: i64) -> i64 {
        self.coeffs.get(&degree).copied().unwrap_or(0)
    }

    pub fn pairs(&self) -> Vec<(i64, i64)> {
        self.coeffs.iter().map(|(d, c)| (*d, *c)).collect()
    }

    pub fn mul(&self, other: &Poincare) -> Poincare {
        let mut out = Poincare::new();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &other.coeffs {
                out.add(d1 + d2, c1 * c2);
            }
        }
        out
    }

    pub fn total(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Value at t = −1.
    pub fn euler(&self) -> i64 {
        self.coeffs.iter().map(|(d, c)| if d.rem_euclid(2) == 0 { *c } else { -*c }).sum()
    }
}

impl fmt::Display for Poincare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in &self.coeffs {
            let (neg, a) = (*c < 0, c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match d {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{d}"),
            };
            match (a, mono.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{mono}")?,
                _ => write!(f, "{a}{mono}")?,
            }
        }
        Ok(())
    }
}

/// Integer-graded cochain complex; `d_k` maps degree k to degree k+1.
/// Absent degrees are zero spaces, absent differentials are zero maps.
#[derive(Clone, Debug, Default)]
pub struct CochainComplex {
    dims: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, SparseMatrix>,
}

/// One degree where d∘d fails, with a column of d_{k+1}·d_k that is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D2Failure {
    pub degree: i64,
    pub column: usize,
    pub witness: SparseVec,
}

#[derive(Clone, Debug, Default)]
pub struct ComplexReport {
    pub degrees_checked: Vec<i64>,
    pub failures: Vec<D2Failure>,
}

impl ComplexReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl CochainComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_dim(&mut self, degree: i64, dim: usize) {
        if dim == 0 {
            self.dims.remove(&degree);
        } else {
            self.dims.insert(degree, dim);
        }
    }

    pub fn set_differential(&mut self, degree: i64, d: SparseMatrix) {
        self.diffs.insert(degree, d);
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn differential(&self, degree: i64) -> Option<&SparseMatrix> {
        self.diffs.get(&degree)
    }

    pub fn differentials(&self) -> impl Iterator<Item = (i64, &SparseMatrix)> {
        self.diffs.iter().map(|(k, m)| (*k, m))
    }

    pub fn differential_mut(&mut self, degree: i64) -> Option<&mut SparseMatrix> {
        self.diffs.get_mut(&degree)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn dimension_polynomial(&self) -> Poincare {
        Poincare::from_pairs(self.dims.iter().map(|(d, n)| (*d, *n as i64)))
    }

    fn check_shapes(&self) -> Result<(), Error> {
        for (k, m) in &self.diffs {
            if m.cols() != self.dim(*k) || m.rows() != self.dim(k + 1) {
                return Err(Error::DimensionMismatch(format!(
                    "d_{k} is {}x{} but degrees {k}, {} have dimensions {}, {}",
                    m.rows(),
                    m.cols(),
                    k + 1,
                    self.dim(*k),
                    self.dim(k + 1)
                )));
            }
        }
        Ok(())
    }

    pub fn rank_of(&self, degree: i64) -> usize {
        self.diffs.get(&degree).map_or(0, rank)
    }
}

pub fn verify_complex(c: &CochainComplex) -> Result<ComplexReport, Error> {
    c.check_shapes()?;
    let mut report = ComplexReport::default();
    for (k, dk) in &c.diffs {
        let Some(dk1) = c.diffs.get(&(k + 1)) else { continue };
        report.degrees_checked.push(*k);
        for j in 0..dk.cols() {
            let w = dk1.apply(dk.column(j));
            if !w.is_empty() {
                report.failures.push(D2Failure { degree: *k, column: j, witness: w });
                break;
            }
        }
    }
    Ok(report)
}

/// dim ker d_k − rank d_{k−1} in every degree. Refuses when d² ≠ 0.
pub fn betti_numbers(c: &CochainComplex) -> Result<Poincare, Error> {
    let report = verify_complex(c)?;
    if let Some(f) = report.failures.first() {
        return Err(Error::NotAComplex { degree: f.degree, column: f.column });
    }
    let ranks: BTreeMap<i64, usize> = c.diffs.keys().map(|k| (*k, c.rank_of(*k))).collect();
    let r = |k: i64| ranks.get(&k).copied().unwrap_or(0);
    let mut p = Poincare::new();
    for (k, n) in &c.dims {
        let b = *n as i64 - r(*k) as i64 - r(k - 1) as i64;
        p.add(*k, b);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&SparseMatrix::identity(3)), 3);
        assert_eq!(rank(&SparseMatrix::from_dense(&[vec![1, 2, 3], vec![2, 4, 6]])), 1);
        assert_eq!(rank(&SparseMatrix::from_dense(&[vec![0, 1], vec![1, 0], vec![1, 1]])), 2);
    }

    #[test]
    fn echelon_reduce_gives_remainder() {
        let mut e = Echelon::new();
        assert!(e.insert(vec![(0, int(2)), (1, int(2))]));
        assert!(!e.insert(vec![(0, int(1)), (1, int(1))]));
        let r = e.reduce(vec![(0, int(1)), (2, int(5))]);
        assert_eq!(r, vec![(1, int(-1)), (2, int(5))]);
    }

    #[test]
    fn complexes_and_betti() {
        let mut c = CochainComplex::new();
        c.set_dim(0, 1);
        c.set_dim(1, 1);
        c.set_differential(0, SparseMatrix::identity(1));
        assert!(verify_complex(&c).unwrap().passed());
        assert_eq!(betti_numbers(&c).unwrap(), Poincare::new());

        c.set_differential(0, SparseMatrix::zeros(1, 1));
        assert_eq!(betti_numbers(&c).unwrap(), Poincare::from_pairs([(0, 1), (1, 1)]));
    }

    #[test]
    fn corrupted_complex_reports_witness() {
        let mut c = CochainComplex::new();
        for k in 0..3 {
            c.set_dim(k, 1);
        }
        c.set_differential(0, SparseMatrix::identity(1));
        c.set_differential(1, SparseMatrix::identity(1));
        let r = verify_complex(&c).unwrap();
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].witness, vec![(0, int(1))]);
        assert!(betti_numbers(&c).is_err());
    }

    #[test]
    fn shape_mismatch_is_structural_error() {
        let mut c = CochainComplex::new();
        c.set_dim(0, 2);
        c.set_dim(1, 1);
        c.set_differential(0, SparseMatrix::zeros(1, 1));
        assert!(matches!(verify_complex(&c), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inverse_of_small_matrix() {
        let m = vec![vec![int(0), int(1)], vec![int(1), int(1)]];
        let inv = invert_dense(&m).unwrap();
        assert_eq!(inv, vec![vec![int(-1), int(1)], vec![int(1), int(0)]]);
        assert!(invert_dense(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
    }

    #[test]
    fn poincare_display() {
        let p = Poincare::from_pairs([(0, 1), (2, 3), (3, 1)]);
        assert_eq!(p.to_string(), "1 + 3t^2 + t^3");
        assert_eq!(p.euler(), 3);
        assert_eq!(Poincare::from_pairs([(-1, 1), (1, -2)]).to_string(), "t^-1 - 2t");
    }
}
