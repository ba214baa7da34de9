use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::Zero;

use super::Simplex;
use crate::exactla::Rational;

/// Rational chain: a finite formal sum of oriented simplices of one degree.
/// Each simplex is oriented by its increasing vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Chain {
    degree: usize,
    coeffs: BTreeMap<Simplex, Rational>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Simplex, Rational)>>(
        degree: usize,
        terms: I,
    ) -> Self {
        let mut c = Self::zero(degree);
        for (s, x) in terms {
            c.add_term(s, &x);
        }
        c
    }

    /// Adds `x·s`. Panics if `s` has the wrong dimension.
    pub fn add_term(&mut self, s: Simplex, x: &Rational) {
        assert_eq!(
            s.dim(),
            self.degree,
            "simplex dimension differs from chain degree"
        );
        if x.is_zero() {
            return;
        }
        match self.coeffs.entry(s) {
            Entry::Vacant(e) => {
                e.insert(x.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += x;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficient(&self, s: &Simplex) -> Rational {
        self.coeffs.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &Rational)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Simplex> {
        self.coeffs.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (s, x) in other.iter() {
            out.add_term(s.clone(), x);
        }
        out
    }

    pub fn scaled(&self, c: &Rational) -> Chain {
        Chain::from_terms(self.degree, self.iter().map(|(s, x)| (s.clone(), x * c)))
    }
}

/// Rational cochain: a functional on the simplices of one degree, stored by
/// its nonzero values.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cochain(Chain);

impl Cochain {
    pub fn zero(degree: usize) -> Self {
        Cochain(Chain::zero(degree))
    }

    pub fn from_values<I: IntoIterator<Item = (Simplex, Rational)>>(
        degree: usize,
        values: I,
    ) -> Self {
        Cochain(Chain::from_terms(degree, values))
    }

    pub(crate) fn from_chain(c: Chain) -> Self {
        Cochain(c)
    }

    pub(crate) fn as_chain(&self) -> &Chain {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn value(&self, s: &Simplex) -> Rational {
        self.0.coefficient(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &Rational)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `⟨φ, c⟩`; zero when degrees differ.
    pub fn eval(&self, chain: &Chain) -> Rational {
        if chain.degree() != self.degree() {
            return Rational::zero();
        }
        let mut acc = Rational::zero();
        for (s, x) in chain.iter() {
            if let Some(y) = self.0.coeffs.get(s) {
                acc += x * y;
            }
        }
        acc
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        Cochain(self.0.add(&other.0))
    }

    pub fn scaled(&self, c: &Rational) -> Cochain {
        Cochain(self.0.scaled(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    #[test]
    fn terms_cancel() {
        let s = Simplex::new(vec![0, 1]);
        let mut c = Chain::zero(1);
        c.add_term(s.clone(), &int(2));
        c.add_term(s.clone(), &int(-2));
        assert!(c.is_zero());
        let phi = Cochain::from_values(1, [(s.clone(), int(3))]);
        assert_eq!(phi.eval(&Chain::from_terms(1, [(s, int(2))])), int(6));
    }
}
