//! Finite-dimensional Poincaré duality CDGAs (A, d, ε): validation, the
//! diagonal class Δ_A, the Euler class and Künneth products.

use crate::combination::Combination;
use crate::error::Error;
use crate::linalg::{betti_numbers, invert_dense, CochainComplex, SparseMatrix, SparseVec};
use crate::rational::{is_zero, one, sign, zero, Rational};
use std::collections::BTreeMap;
use std::fmt::Write;

/// Unvalidated algebra data. Products are a full `size × size` table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawAlgebra {
    pub name: String,
    pub dimension: i32,
    pub names: Vec<String>,
    pub degrees: Vec<i32>,
    pub unit: usize,
    pub products: Vec<Vec<SparseVec>>,
    pub differential: Vec<SparseVec>,
    /// ε on each basis element; must vanish off the top degree.
    pub pairing: Vec<Rational>,
}

/// Element of A ⊗ A on pairs of basis indices.
pub type TensorElement = Combination<(usize, usize)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdFailure {
    pub identity: String,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdReport {
    pub checked: Vec<&'static str>,
    pub failure: Option<PdFailure>,
}

impl PdReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// A validated Poincaré duality CDGA together with its derived data.
#[derive(Clone, Debug)]
pub struct PdAlgebra {
    raw: RawAlgebra,
    vol: SparseVec,
    dual: Vec<SparseVec>,
    diagonal: TensorElement,
    chi: i64,
    euler_class: SparseVec,
}

fn normalize(v: BTreeMap<usize, Rational>) -> SparseVec {
    v.into_iter().filter(|(_, c)| !is_zero(c)).collect()
}

impl RawAlgebra {
    pub fn size(&self) -> usize {
        self.names.len()
    }

    fn name_of(&self, i: usize) -> String {
        self.names.get(i).cloned().unwrap_or_else(|| format!("#{i}"))
    }

    fn mul_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in &self.products[*i][*j] {
                    *acc.entry(*k).or_insert_with(zero) += a * b * c;
                }
            }
        }
        normalize(acc)
    }

    fn d_vec(&self, x: &SparseVec) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            for (k, c) in &self.differential[*i] {
                *acc.entry(*k).or_insert_with(zero) += a * c;
            }
        }
        normalize(acc)
    }

    fn eps_vec(&self, x: &SparseVec) -> Rational {
        let mut s = zero();
        for (i, a) in x {
            s += a * &self.pairing[*i];
        }
        s
    }

    fn basis_in_degree(&self, k: i32) -> Vec<usize> {
        (0..self.size()).filter(|&i| self.degrees[i] == k).collect()
    }

    fn render(&self, v: &SparseVec) -> String {
        render_vec(&self.names, v)
    }
}

pub(crate) fn render_vec(names: &[String], v: &SparseVec) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (n, (i, c)) in v.iter().enumerate() {
        let neg = *c < 0;
        let a = if neg { -c.clone() } else { c.clone() };
        if n == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if a != one() {
            let _ = write!(s, "{a}·");
        }
        s.push_str(&names[*i]);
    }
    s
}

fn unit_vec(i: usize) -> SparseVec {
    vec![(i, one())]
}

/// Checks every defining identity in a fixed order and stops at the first
/// failure, reporting the basis elements involved.
pub fn verify_pd(raw: &RawAlgebra) -> PdReport {
    let mut checked = Vec::new();
    let fail = |checked: Vec<&'static str>, identity: &str, witness: Vec<String>| PdReport {
        checked,
        failure: Some(PdFailure { identity: identity.to_string(), witness }),
    };
    let d = raw.size();
    let n = raw.dimension;

    checked.push("shape");
    if raw.degrees.len() != d
        || raw.pairing.len() != d
        || raw.differential.len() != d
        || raw.products.len() != d
        || raw.products.iter().any(|r| r.len() != d)
        || raw.unit >= d
        || n < 0
    {
        return fail(checked, "table sizes agree with the basis", vec![]);
    }
    let in_range = |v: &SparseVec| v.iter().all(|(i, _)| *i < d);
    if !raw.products.iter().flatten().all(in_range) || !raw.differential.iter().all(in_range) {
        return fail(checked, "indices within the basis", vec![]);
    }

    checked.push("degrees in [0, n]");
    for i in 0..d {
        if raw.degrees[i] < 0 || raw.degrees[i] > n {
            return fail(checked, "0 ≤ |a| ≤ n", vec![raw.name_of(i)]);
        }
    }

    checked.push("connected");
    if raw.degrees[raw.unit] != 0 {
        return fail(checked, "the unit has degree 0", vec![raw.name_of(raw.unit)]);
    }
    if let Some(i) = (0..d).find(|&i| i != raw.unit && raw.degrees[i] == 0) {
        return fail(checked, "degree 0 is spanned by the unit", vec![raw.name_of(i)]);
    }

    checked.push("product homogeneity");
    for i in 0..d {
        for j in 0..d {
            for (k, _) in &raw.products[i][j] {
                if raw.degrees[*k] != raw.degrees[i] + raw.degrees[j] {
                    return fail(checked, "|ab| = |a| + |b|", vec![raw.name_of(i), raw.name_of(j), raw.name_of(*k)]);
                }
            }
        }
    }

    checked.push("unit law");
    for i in 0..d {
        if raw.products[raw.unit][i] != unit_vec(i) || raw.products[i][raw.unit] != unit_vec(i) {
            return fail(checked, "1·a = a = a·1", vec![raw.name_of(i)]);
        }
    }

    checked.push("graded commutativity");
    for i in 0..d {
        for j in 0..d {
            let s = sign(raw.degrees[i] * raw.degrees[j] % 2 != 0);
            let lhs = &raw.products[i][j];
            let rhs: SparseVec = raw.products[j][i].iter().map(|(k, c)| (*k, c * &s)).collect();
            if *lhs != rhs {
                return fail(checked, "ab = (−1)^{|a||b|} ba", vec![raw.name_of(i), raw.name_of(j)]);
            }
        }
    }

    checked.push("associativity");
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let l = raw.mul_vec(&raw.products[i][j], &unit_vec(k));
                let r = raw.mul_vec(&unit_vec(i), &raw.products[j][k]);
                if l != r {
                    return fail(checked, "(ab)c = a(bc)", vec![raw.name_of(i), raw.name_of(j), raw.name_of(k)]);
                }
            }
        }
    }

    checked.push("differential degree");
    for i in 0..d {
        for (k, _) in &raw.differential[i] {
            if raw.degrees[*k] != raw.degrees[i] + 1 {
                return fail(checked, "|da| = |a| + 1", vec![raw.name_of(i), raw.name_of(*k)]);
            }
        }
    }

    checked.push("d² = 0");
    for i in 0..d {
        if !raw.d_vec(&raw.differential[i]).is_empty() {
            return fail(checked, "d(da) = 0", vec![raw.name_of(i)]);
        }
    }

    checked.push("Leibniz rule");
    for i in 0..d {
        for j in 0..d {
            let lhs = raw.d_vec(&raw.products[i][j]);
            let t1 = raw.mul_vec(&raw.differential[i], &unit_vec(j));
            let t2 = raw.mul_vec(&unit_vec(i), &raw.differential[j]);
            let s = sign(raw.degrees[i] % 2 != 0);
            let rhs = crate::linalg::axpy(&t1, &s, &t2);
            if lhs != rhs {
                return fail(checked, "d(ab) = da·b + (−1)^{|a|} a·db", vec![raw.name_of(i), raw.name_of(j)]);
            }
        }
    }

    checked.push("ε supported in degree n");
    for i in 0..d {
        if raw.degrees[i] != n && !is_zero(&raw.pairing[i]) {
            return fail(checked, "ε vanishes below the top degree", vec![raw.name_of(i)]);
        }
    }

    checked.push("ε ∘ d = 0");
    for i in 0..d {
        if !is_zero(&raw.eps_vec(&raw.differential[i])) {
            return fail(checked, "ε(da) = 0", vec![raw.name_of(i)]);
        }
    }

    checked.push("nondegenerate pairing");
    for k in 0..=n {
        let (lo, hi) = (raw.basis_in_degree(k), raw.basis_in_degree(n - k));
        if lo.len() != hi.len() {
            return fail(
                checked,
                "A^k ⊗ A^{n−k} → ℚ is square",
                vec![format!("degree {k}: {} vs {}", lo.len(), hi.len())],
            );
        }
        if lo.is_empty() {
            continue;
        }
        let m = pairing_matrix(raw, &lo, &hi);
        if invert_dense(&m).is_none() {
            return fail(checked, "A^k ⊗ A^{n−k} → ℚ is nondegenerate", vec![format!("degree {k}")]);
        }
    }
    if raw.basis_in_degree(n).len() != 1 {
        return fail(checked, "the top degree is one-dimensional", vec![]);
    }

    PdReport { checked, failure: None }
}

fn pairing_matrix(raw: &RawAlgebra, lo: &[usize], hi: &[usize]) -> Vec<Vec<Rational>> {
    lo.iter()
        .map(|&i| hi.iter().map(|&j| raw.eps_vec(&raw.products[i][j])).collect())
        .collect()
}

fn cohomology_of(raw: &RawAlgebra) -> CochainComplex {
    let mut c = CochainComplex::new();
    let mut index = vec![0; raw.size()];
    for k in 0..=raw.dimension {
        let b = raw.basis_in_degree(k);
        for (p, &i) in b.iter().enumerate() {
            index[i] = p;
        }
        c.set_dim(k as i64, b.len());
    }
    for k in 0..raw.dimension {
        let src = raw.basis_in_degree(k);
        let cols = src
            .iter()
            .map(|&i| raw.differential[i].iter().map(|(t, v)| (index[*t], v.clone())).collect())
            .collect();
        c.set_differential(k as i64, SparseMatrix::from_columns(raw.basis_in_degree(k + 1).len(), cols));
    }
    c
}

impl PdAlgebra {
    /// Validates and computes the derived data (dual basis, vol, Δ, χ).
    pub fn new(raw: RawAlgebra) -> Result<PdAlgebra, Error> {
        let report = verify_pd(&raw);
        if let Some(f) = report.failure {
            return Err(Error::InvalidAlgebra(format!(
                "{}: {} fails{}",
                raw.name,
                f.identity,
                if f.witness.is_empty() { String::new() } else { format!(" at ({})", f.witness.join(", ")) }
            )));
        }
        let n = raw.dimension;
        let top = raw.basis_in_degree(n);
        let vol = vec![(top[0], one() / raw.pairing[top[0]].clone())];

        // a_i^∨ = Σ_l (P^{-1})_{l i} b_l, so that ε(a_i a_j^∨) = δ_ij.
        let mut dual = vec![Vec::new(); raw.size()];
        for k in 0..=n {
            let (lo, hi) = (raw.basis_in_degree(k), raw.basis_in_degree(n - k));
            if lo.is_empty() {
                continue;
            }
            let inv = invert_dense(&pairing_matrix(&raw, &lo, &hi)).expect("validated");
            for (p, &i) in lo.iter().enumerate() {
                let mut v: SparseVec = hi.iter().enumerate().map(|(l, &b)| (b, inv[l][p].clone())).collect();
                v.retain(|e| !is_zero(&e.1));
                v.sort_by_key(|e| e.0);
                dual[i] = v;
            }
        }

        let mut diagonal = TensorElement::new();
        for i in 0..raw.size() {
            let s = sign(raw.degrees[i] % 2 != 0);
            for (j, c) in &dual[i] {
                diagonal.add_term((i, *j), c * &s);
            }
        }

        let chi = betti_numbers(&cohomology_of(&raw))?.euler();
        let mut mu = BTreeMap::new();
        for ((x, y), c) in diagonal.iter() {
            for (k, v) in &raw.products[*x][*y] {
                *mu.entry(*k).or_insert_with(zero) += c * v;
            }
        }
        let euler_class = normalize(mu);
        let expected: SparseVec = vol.iter().map(|(i, v)| (*i, v * Rational::from(chi))).filter(|e| !is_zero(&e.1)).collect();
        if euler_class != expected {
            return Err(Error::Internal(format!(
                "{}: μ(Δ) = {} but χ·vol = {}",
                raw.name,
                raw.render(&euler_class),
                raw.render(&expected)
            )));
        }
        Ok(PdAlgebra { raw, vol, dual, diagonal, chi, euler_class })
    }

    pub fn raw(&self) -> &RawAlgebra {
        &self.raw
    }

    pub fn name(&self) -> &str {
        &self.raw.name
    }

    /// Formal dimension n.
    pub fn dim(&self) -> i32 {
        self.raw.dimension
    }

    pub fn size(&self) -> usize {
        self.raw.size()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.raw.degrees[i]
    }

    pub fn names(&self) -> &[String] {
        &self.raw.names
    }

    pub fn unit(&self) -> usize {
        self.raw.unit
    }

    pub fn mul(&self, i: usize, j: usize) -> &SparseVec {
        &self.raw.products[i][j]
    }

    pub fn d(&self, i: usize) -> &SparseVec {
        &self.raw.differential[i]
    }

    pub fn has_differential(&self) -> bool {
        self.raw.differential.iter().any(|v| !v.is_empty())
    }

    pub fn eps(&self, i: usize) -> &Rational {
        &self.raw.pairing[i]
    }

    pub fn eps_vec(&self, v: &SparseVec) -> Rational {
        self.raw.eps_vec(v)
    }

    pub fn mul_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.raw.mul_vec(x, y)
    }

    pub fn vol(&self) -> &SparseVec {
        &self.vol
    }

    pub fn dual(&self, i: usize) -> &SparseVec {
        &self.dual[i]
    }

    pub fn diagonal(&self) -> &TensorElement {
        &self.diagonal
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.chi
    }

    /// μ(Δ_A) = χ(A)·vol_A.
    pub fn euler_class(&self) -> &SparseVec {
        &self.euler_class
    }

    pub fn basis_in_degree(&self, k: i32) -> Vec<usize> {
        self.raw.basis_in_degree(k)
    }

    /// Betti numbers of (A, d).
    pub fn cohomology(&self) -> crate::linalg::Poincare {
        betti_numbers(&cohomology_of(&self.raw)).expect("validated")
    }

    pub fn render(&self, v: &SparseVec) -> String {
        self.raw.render(v)
    }

    pub fn render_tensor(&self, t: &TensorElement) -> String {
        render_tensor(&self.raw.names, t)
    }

    fn tensor_d(&self, t: &TensorElement) -> TensorElement {
        let mut out = TensorElement::new();
        for ((x, y), c) in t.iter() {
            for (dx, v) in self.d(*x) {
                out.add_term((*dx, *y), c * v);
            }
            let s = sign(self.degree(*x) % 2 != 0);
            for (dy, v) in self.d(*y) {
                out.add_term((*x, *dy), c * v * &s);
            }
        }
        out
    }

    /// The identities satisfied by Δ_A, each evaluated exactly.
    pub fn diagonal_checks(&self) -> Vec<(&'static str, bool)> {
        let delta = &self.diagonal;
        let n = self.dim();
        let homogeneous = delta.keys().all(|(x, y)| self.degree(*x) + self.degree(*y) == n);
        let cocycle = self.tensor_d(delta).is_zero();
        let mut flipped = TensorElement::new();
        for ((x, y), c) in delta.iter() {
            flipped.add_term((*y, *x), c * sign((self.degree(*x) * self.degree(*y)) % 2 != 0));
        }
        let symmetric = flipped == delta.scaled(&sign(n % 2 != 0));
        let mut commutes = true;
        for a in 0..self.size() {
            let mut diff = TensorElement::new();
            for ((x, y), c) in delta.iter() {
                for (k, v) in self.mul(a, *x) {
                    diff.add_term((*k, *y), c * v);
                }
                let s = sign((self.degree(a) * self.degree(*x)) % 2 != 0);
                for (k, v) in self.mul(a, *y) {
                    diff.add_term((*x, *k), -(c * v * &s));
                }
            }
            commutes &= diff.is_zero();
        }
        let euler = {
            let mut mu = BTreeMap::new();
            for ((x, y), c) in delta.iter() {
                for (k, v) in self.mul(*x, *y) {
                    *mu.entry(*k).or_insert_with(zero) += c * v;
                }
            }
            let expect: SparseVec = self
                .vol
                .iter()
                .map(|(i, v)| (*i, v * Rational::from(self.chi)))
                .filter(|e| !is_zero(&e.1))
                .collect();
            normalize(mu) == expect
        };
        vec![
            ("Δ has degree n", homogeneous),
            ("dΔ = 0", cocycle),
            ("Δ^21 = (−1)^n Δ", symmetric),
            ("(a⊗1)Δ = (1⊗a)Δ", commutes),
            ("μ(Δ) = χ·vol", euler),
        ]
    }
}

pub fn render_tensor(names: &[String], t: &TensorElement) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let wrap = |s: &str| if s.contains('⊗') { format!("({s})") } else { s.to_string() };
    let mut s = String::new();
    for (n, ((x, y), c)) in t.iter().enumerate() {
        let neg = *c < 0;
        let a = if neg { -c.clone() } else { c.clone() };
        if n == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if a != one() {
            let _ = write!(s, "{a}·");
        }
        let _ = write!(s, "{}⊗{}", wrap(&names[*x]), wrap(&names[*y]));
    }
    s
}

pub fn diagonal_class(a: &PdAlgebra) -> &TensorElement {
    a.diagonal()
}

pub fn euler_characteristic(a: &PdAlgebra) -> i64 {
    a.euler_characteristic()
}

fn monomial_table(degrees: &[i32], prod: impl Fn(usize, usize) -> SparseVec) -> Vec<Vec<SparseVec>> {
    (0..degrees.len()).map(|i| (0..degrees.len()).map(|j| prod(i, j)).collect()).collect()
}

/// Shared instance of [`point`], used as the label algebra of e_n^∨.
pub fn point_ref() -> &'static PdAlgebra {
    static POINT: std::sync::OnceLock<PdAlgebra> = std::sync::OnceLock::new();
    POINT.get_or_init(point)
}

/// H*(point): the ground field, formal dimension 0.
pub fn point() -> PdAlgebra {
    PdAlgebra::new(RawAlgebra {
        name: "point".into(),
        dimension: 0,
        names: vec!["1".into()],
        degrees: vec![0],
        unit: 0,
        products: vec![vec![unit_vec(0)]],
        differential: vec![vec![]],
        pairing: vec![one()],
    })
    .expect("point algebra")
}

pub fn sphere(n: i32) -> Result<PdAlgebra, Error> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("sphere:{n}: only simply connected spheres (n ≥ 2) are supported")));
    }
    let degrees = vec![0, n];
    let products = monomial_table(&degrees, |i, j| if i + j <= 1 { unit_vec(i + j) } else { vec![] });
    PdAlgebra::new(RawAlgebra {
        name: format!("sphere:{n}"),
        dimension: n,
        names: vec!["1".into(), "υ".into()],
        degrees,
        unit: 0,
        products,
        differential: vec![vec![]; 2],
        pairing: vec![zero(), one()],
    })
}

/// H*(ℂP^m) = ℚ[c]/(c^{m+1}), |c| = 2.
pub fn complex_projective(m: i32) -> Result<PdAlgebra, Error> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("cp:{m}: need m ≥ 1")));
    }
    let m = m as usize;
    let degrees: Vec<i32> = (0..=m).map(|i| 2 * i as i32).collect();
    let names = (0..=m)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "c".to_string(),
            _ => format!("c^{i}"),
        })
        .collect();
    let products = monomial_table(&degrees, |i, j| if i + j <= m { unit_vec(i + j) } else { vec![] });
    let mut pairing = vec![zero(); m + 1];
    pairing[m] = one();
    PdAlgebra::new(RawAlgebra {
        name: format!("cp:{m}"),
        dimension: 2 * m as i32,
        names,
        degrees,
        unit: 0,
        products,
        differential: vec![vec![]; m + 1],
        pairing,
    })
}

/// Künneth product with Koszul signs: (a⊗b)(a'⊗b') = (−1)^{|b||a'|} aa'⊗bb'.
pub fn tensor_product(a: &PdAlgebra, b: &PdAlgebra) -> PdAlgebra {
    let (ra, rb) = (a.raw(), b.raw());
    let (da, db) = (ra.size(), rb.size());
    let idx = |i: usize, j: usize| i * db + j;
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    let mut pairing = Vec::new();
    for i in 0..da {
        for j in 0..db {
            names.push(match (i == ra.unit, j == rb.unit) {
                (true, true) => "1".to_string(),
                _ => format!("{}⊗{}", ra.names[i], rb.names[j]),
            });
            degrees.push(ra.degrees[i] + rb.degrees[j]);
            pairing.push(&ra.pairing[i] * &rb.pairing[j]);
        }
    }
    let size = da * db;
    let mut products = vec![vec![Vec::new(); size]; size];
    for (i, j) in (0..da).flat_map(|i| (0..db).map(move |j| (i, j))) {
        for (k, l) in (0..da).flat_map(|k| (0..db).map(move |l| (k, l))) {
            let s = sign((rb.degrees[j] * ra.degrees[k]) % 2 != 0);
            let mut acc = BTreeMap::new();
            for (p, x) in &ra.products[i][k] {
                for (q, y) in &rb.products[j][l] {
                    *acc.entry(idx(*p, *q)).or_insert_with(zero) += x * y * &s;
                }
            }
            products[idx(i, j)][idx(k, l)] = normalize(acc);
        }
    }
    let mut differential = vec![Vec::new(); size];
    for i in 0..da {
        for j in 0..db {
            let mut acc = BTreeMap::new();
            for (p, x) in &ra.differential[i] {
                *acc.entry(idx(*p, j)).or_insert_with(zero) += x.clone();
            }
            let s = sign(ra.degrees[i] % 2 != 0);
            for (q, y) in &rb.differential[j] {
                *acc.entry(idx(i, *q)).or_insert_with(zero) += y * &s;
            }
            differential[idx(i, j)] = normalize(acc);
        }
    }
    PdAlgebra::new(RawAlgebra {
        name: format!("product:{},{}", wrap_name(&ra.name), wrap_name(&rb.name)),
        dimension: ra.dimension + rb.dimension,
        names,
        degrees,
        unit: idx(ra.unit, rb.unit),
        products,
        differential,
        pairing,
    })
    .expect("tensor product of Poincaré duality algebras is Poincaré duality")
}

fn wrap_name(s: &str) -> String {
    if s.contains(',') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

/// `point`, `sphere:N`, `cp:M` (or `complex_projective:M`) and
/// `product:X,Y`, where parentheses may group nested products.
pub fn builtin(name: &str) -> Result<PdAlgebra, Error> {
    let name = name.trim();
    if let Some(inner) = name.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        return builtin(inner);
    }
    let (head, arg) = name.split_once(':').unwrap_or((name, ""));
    let int_arg = || arg.trim().parse::<i32>().map_err(|_| Error::UnknownBuiltin(name.to_string()));
    match head {
        "point" if arg.is_empty() => Ok(point()),
        "sphere" => sphere(int_arg()?),
        "cp" | "complex_projective" => complex_projective(int_arg()?),
        "product" => {
            let mut depth = 0;
            let mut split = None;
            for (p, ch) in arg.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => {
                        split = Some(p);
                        break;
                    }
                    _ => {}
                }
            }
            let p = split.ok_or_else(|| Error::UnknownBuiltin(name.to_string()))?;
            Ok(tensor_product(&builtin(&arg[..p])?, &builtin(&arg[p + 1..])?))
        }
        _ => Err(Error::UnknownBuiltin(name.to_string())),
    }
}

/// The built-ins exercised by the validation suites.
pub fn standard_builtins() -> Vec<&'static str> {
    vec![
        "sphere:2",
        "sphere:3",
        "sphere:4",
        "sphere:5",
        "sphere:6",
        "sphere:7",
        "cp:2",
        "cp:3",
        "product:sphere:2,sphere:3",
        "product:sphere:2,sphere:2",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn tensor(a: &PdAlgebra, terms: &[(&str, &str, i64)]) -> TensorElement {
        let find = |s: &str| a.names().iter().position(|x| x == s).unwrap();
        terms.iter().map(|(x, y, c)| ((find(x), find(y)), int(*c))).collect()
    }

    #[test]
    fn sphere_diagonals() {
        let s2 = sphere(2).unwrap();
        assert_eq!(s2.diagonal(), &tensor(&s2, &[("υ", "1", 1), ("1", "υ", 1)]));
        assert_eq!(s2.render_tensor(s2.diagonal()), "1⊗υ + υ⊗1");
        let s3 = sphere(3).unwrap();
        assert_eq!(s3.diagonal(), &tensor(&s3, &[("1", "υ", 1), ("υ", "1", -1)]));
    }

    #[test]
    fn cp2_diagonal_and_euler() {
        let cp2 = complex_projective(2).unwrap();
        assert_eq!(cp2.diagonal(), &tensor(&cp2, &[("1", "c^2", 1), ("c", "c", 1), ("c^2", "1", 1)]));
        assert_eq!(cp2.euler_characteristic(), 3);
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(sphere(3).unwrap().euler_characteristic(), 0);
        let s2 = sphere(2).unwrap();
        assert_eq!(s2.euler_characteristic(), 2);
        assert_eq!(s2.euler_class(), &vec![(1, int(2))]);
    }

    #[test]
    fn degenerate_pairing_rejected() {
        let mut raw = sphere(2).unwrap().raw().clone();
        raw.pairing[1] = zero();
        let r = verify_pd(&raw);
        assert_eq!(r.failure.unwrap().identity, "A^k ⊗ A^{n−k} → ℚ is nondegenerate");
    }

    #[test]
    fn disconnected_factor_rejected() {
        // S⁰: two points, both classes in degree 0.
        let raw = RawAlgebra {
            name: "S0".into(),
            dimension: 0,
            names: vec!["1".into(), "p".into()],
            degrees: vec![0, 0],
            unit: 0,
            products: vec![vec![unit_vec(0), unit_vec(1)], vec![unit_vec(1), unit_vec(1)]],
            differential: vec![vec![]; 2],
            pairing: vec![zero(), one()],
        };
        assert!(matches!(PdAlgebra::new(raw), Err(Error::InvalidAlgebra(m)) if m.contains("degree 0 is spanned by the unit")));
    }

    #[test]
    fn products_of_spheres() {
        let a = builtin("product:sphere:2,sphere:3").unwrap();
        assert_eq!(a.dim(), 5);
        assert_eq!(a.euler_characteristic(), 0);
        let b = builtin("product:sphere:2,sphere:2").unwrap();
        assert_eq!(b.euler_characteristic(), 4);
        assert_eq!(b.cohomology(), crate::linalg::Poincare::from_pairs([(0, 1), (2, 2), (4, 1)]));
        let c = builtin("product:(product:sphere:2,sphere:2),sphere:3").unwrap();
        assert_eq!(c.dim(), 7);
    }

    #[test]
    fn builtin_names() {
        let s4 = builtin("sphere:4").unwrap();
        assert_eq!(s4.degree(1), 4);
        assert_eq!(s4.eps(1), &one());
        let cp2 = builtin("complex_projective:2").unwrap();
        assert!(cp2.mul(1, 2).is_empty());
        assert!(matches!(builtin("sphere:1"), Err(Error::InvalidArgument(_))));
        assert!(matches!(builtin("torus:2"), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn diagonal_identities_hold_for_builtins() {
        for name in standard_builtins() {
            let a = builtin(name).unwrap();
            for (what, ok) in a.diagonal_checks() {
                assert!(ok, "{name}: {what}");
            }
        }
    }
}
