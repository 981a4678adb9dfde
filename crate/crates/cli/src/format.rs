//! On-disk formats: algebra files and Lie algebra files (JSON, versioned).
//!
//! Coefficients are JSON integers or strings `"p"` / `"p/q"`. Products with
//! the unit are implied, and so is the product in reverse order (by graded
//! commutativity, resp. antisymmetry for brackets). Anything unlisted is 0.

use confmodel::ce::FiniteLieAlgebra;
use confmodel::linalg::SparseVec;
use confmodel::pd_algebra::RawAlgebra;
use confmodel::rational::{is_zero, parse, sign, Rational};
use serde::Deserialize;
use std::collections::{BTreeMap, HashMap};
use std::path::Path;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    /// serde_json reports line and column.
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{path}: {msg}")]
    Invalid { path: String, msg: String },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    fn value(&self) -> Result<Rational, String> {
        match self {
            Coeff::Int(v) => Ok(Rational::from(*v)),
            Coeff::Text(s) => parse(s).ok_or_else(|| format!("bad coefficient `{s}`")),
        }
    }
}

/// (left, right, [(basis, coefficient)])
pub type Table = Vec<(String, String, Vec<(String, Coeff)>)>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub name: String,
    pub degree: i32,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format: u32,
    pub name: String,
    pub dimension: i32,
    pub basis: Vec<BasisEntry>,
    pub unit: String,
    #[serde(default)]
    pub products: Table,
    /// (top-degree basis element, ε of it)
    pub pairing: Vec<(String, Coeff)>,
    #[serde(default)]
    pub differential: Vec<(String, Vec<(String, Coeff)>)>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraFile {
    pub format: u32,
    pub name: String,
    pub basis: Vec<BasisEntry>,
    /// (x, y, [x, y])
    #[serde(default)]
    pub brackets: Table,
}

struct Names(HashMap<String, usize>);

impl Names {
    fn new(basis: &[BasisEntry]) -> Result<Self, String> {
        let mut m = HashMap::new();
        for (i, b) in basis.iter().enumerate() {
            if m.insert(b.name.clone(), i).is_some() {
                return Err(format!("duplicate basis element `{}`", b.name));
            }
        }
        Ok(Names(m))
    }

    fn get(&self, s: &str) -> Result<usize, String> {
        self.0.get(s).copied().ok_or_else(|| format!("unknown basis element `{s}`"))
    }

    fn vector(&self, terms: &[(String, Coeff)]) -> Result<SparseVec, String> {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (b, c) in terms {
            *acc.entry(self.get(b)?).or_default() += c.value()?;
        }
        Ok(acc.into_iter().filter(|(_, c)| !is_zero(c)).collect())
    }
}

fn scale(v: &SparseVec, c: &Rational) -> SparseVec {
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// Fills `table[i][j]` and the implied `table[j][i] = s·v`, rejecting
/// contradictory entries.
fn fill(table: &mut [Vec<Option<SparseVec>>], i: usize, j: usize, v: SparseVec, s: &Rational, what: &str) -> Result<(), String> {
    let rev = scale(&v, s);
    for (a, b, val) in [(i, j, v), (j, i, rev)] {
        match &table[a][b] {
            Some(old) if *old != val => return Err(format!("conflicting {what} for entries {a}, {b}")),
            _ => table[a][b] = Some(val),
        }
    }
    Ok(())
}

impl AlgebraFile {
    pub fn to_raw(&self) -> Result<RawAlgebra, String> {
        if self.format != FORMAT_VERSION {
            return Err(format!("unsupported format version {} (expected {FORMAT_VERSION})", self.format));
        }
        let names = Names::new(&self.basis)?;
        let d = self.basis.len();
        let degrees: Vec<i32> = self.basis.iter().map(|b| b.degree).collect();
        let unit = names.get(&self.unit)?;
        let mut table: Vec<Vec<Option<SparseVec>>> = vec![vec![None; d]; d];
        for x in 0..d {
            let v = vec![(x, Rational::from(1))];
            table[unit][x] = Some(v.clone());
            table[x][unit] = Some(v);
        }
        for (l, r, terms) in &self.products {
            let (i, j) = (names.get(l)?, names.get(r)?);
            let s = sign((degrees[i] * degrees[j]).rem_euclid(2) == 1);
            fill(&mut table, i, j, names.vector(terms)?, &s, "products")?;
        }
        let mut pairing = vec![Rational::from(0); d];
        for (b, c) in &self.pairing {
            pairing[names.get(b)?] = c.value()?;
        }
        let mut differential = vec![SparseVec::new(); d];
        for (b, terms) in &self.differential {
            differential[names.get(b)?] = names.vector(terms)?;
        }
        Ok(RawAlgebra {
            name: self.name.clone(),
            dimension: self.dimension,
            names: self.basis.iter().map(|b| b.name.clone()).collect(),
            degrees,
            unit,
            products: table.into_iter().map(|r| r.into_iter().map(Option::unwrap_or_default).collect()).collect(),
            differential,
            pairing,
        })
    }
}

impl LieAlgebraFile {
    pub fn to_lie(&self) -> Result<FiniteLieAlgebra, String> {
        if self.format != FORMAT_VERSION {
            return Err(format!("unsupported format version {} (expected {FORMAT_VERSION})", self.format));
        }
        let names = Names::new(&self.basis)?;
        let d = self.basis.len();
        let degrees: Vec<i32> = self.basis.iter().map(|b| b.degree).collect();
        let mut table: Vec<Vec<Option<SparseVec>>> = vec![vec![None; d]; d];
        for (l, r, terms) in &self.brackets {
            let (i, j) = (names.get(l)?, names.get(r)?);
            let s = -sign((degrees[i] * degrees[j]).rem_euclid(2) == 1);
            fill(&mut table, i, j, names.vector(terms)?, &s, "brackets")?;
        }
        let bracket = table.into_iter().map(|r| r.into_iter().map(Option::unwrap_or_default).collect()).collect();
        FiniteLieAlgebra::new(&self.name, self.basis.iter().map(|b| b.name.clone()).collect(), degrees, bracket)
            .map_err(|e| e.to_string())
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, FormatError> {
    let p = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: p.clone(), source })?;
    serde_json::from_str(&text).map_err(|source| FormatError::Json { path: p, source })
}

pub fn load_algebra(path: &Path) -> Result<RawAlgebra, FormatError> {
    let f: AlgebraFile = read_json(path)?;
    f.to_raw().map_err(|msg| FormatError::Invalid { path: path.display().to_string(), msg })
}

pub fn load_lie(path: &Path) -> Result<FiniteLieAlgebra, FormatError> {
    let f: LieAlgebraFile = read_json(path)?;
    f.to_lie().map_err(|msg| FormatError::Invalid { path: path.display().to_string(), msg })
}
