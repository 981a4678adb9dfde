//! Sparse formal linear combinations with exact coefficients.

use crate::rational::{is_zero, Rational};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for Combination<K> {
    fn default() -> Self {
        Combination { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Combination<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: K, coeff: Rational) -> Self {
        let mut c = Self::new();
        c.add_term(key, coeff);
        c
    }

    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if is_zero(&coeff) {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &Rational) {
        if is_zero(factor) {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn add(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn sub(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), -c);
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, factor);
        out
    }

    pub fn get(&self, key: &K) -> Option<&Rational> {
        self.terms.get(key)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Apply a linear map given on basis elements.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Combination<L>) -> Combination<L> {
        let mut out = Combination::new();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }
}

impl<K: Ord> IntoIterator for Combination<K> {
    type Item = (K, Rational);
    type IntoIter = std::collections::btree_map::IntoIter<K, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for Combination<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut c = Self::new();
        for (k, v) in iter {
            c.add_term(k, v);
        }
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn cancellation_removes_terms() {
        let mut c = Combination::single("a", int(2));
        c.add_term("b", int(1));
        c.add_term("a", int(-2));
        assert_eq!(c.len(), 1);
        assert!(c.get(&"a").is_none());
        c.sub(&Combination::single("b", int(1)));
        assert!(c.is_zero());
    }
}
