//! Sparse bivariate polynomials in x, y over an exact field, and square
//! polynomial matrices (carriers for matrix factorizations).

use std::collections::BTreeMap;

use crate::field::Field;

/// Exponent pair (degree in x, degree in y).
pub type Mono = (u32, u32);

/// A sparse polynomial: monomial -> nonzero coefficient.
#[derive(Debug, Clone)]
pub struct Poly<F: Field> {
    pub terms: BTreeMap<Mono, F::Elem>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn monomial(field: &F, xdeg: u32, ydeg: u32, coeff: F::Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !field.is_zero(&coeff) {
            terms.insert((xdeg, ydeg), coeff);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, field: &F, mono: Mono, coeff: F::Elem) {
        if field.is_zero(&coeff) {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = field.add(e.get(), &coeff);
                if field.is_zero(&s) {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    pub fn add(&self, field: &F, other: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(field, m, c.clone());
        }
        out
    }

    pub fn mul(&self, field: &F, other: &Poly<F>) -> Poly<F> {
        let mut out = Poly::zero();
        for (&(ax, ay), ac) in &self.terms {
            for (&(bx, by), bc) in &other.terms {
                out.add_term(field, (ax + bx, ay + by), field.mul(ac, bc));
            }
        }
        out
    }

    pub fn neg(&self, field: &F) -> Poly<F> {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = field.neg(c);
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }
}

/// A rectangular matrix of polynomials.
#[derive(Debug, Clone)]
pub struct PolyMatrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Poly<F>>,
}

impl<F: Field> PartialEq for PolyMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl<F: Field> PolyMatrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: (0..rows * cols).map(|_| Poly::zero()).collect(),
        }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Poly<F>>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        PolyMatrix { rows, cols, entries }
    }

    pub fn at(&self, r: usize, c: usize) -> &Poly<F> {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly<F>) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn mul(&self, field: &F, other: &PolyMatrix<F>) -> PolyMatrix<F> {
        assert_eq!(self.cols, other.rows);
        let mut out = PolyMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Poly::zero();
                for k in 0..self.cols {
                    acc = acc.add(field, &self.at(r, k).mul(field, other.at(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    /// Checks that the matrix equals `p * Id`.
    pub fn is_scalar(&self, _field: &F, p: &Poly<F>) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                let want = if r == c { p.clone() } else { Poly::zero() };
                if self.at(r, c) != &want {
                    return false;
                }
            }
        }
        true
    }
}

/// A matrix factorization of `f`: a pair of square matrices with
/// `phi * psi = psi * phi = f * Id`.
#[derive(Debug, Clone)]
pub struct MatrixFactorization<F: Field> {
    pub phi: PolyMatrix<F>,
    pub psi: PolyMatrix<F>,
}

impl<F: Field> MatrixFactorization<F> {
    /// Constructor asserts the factorization identity exactly.
    pub fn new(field: &F, phi: PolyMatrix<F>, psi: PolyMatrix<F>, f: &Poly<F>) -> Self {
        assert_eq!(phi.rows, phi.cols);
        assert_eq!(psi.rows, psi.cols);
        assert_eq!(phi.rows, psi.rows);
        assert!(
            phi.mul(field, &psi).is_scalar(field, f),
            "phi * psi != f * Id"
        );
        assert!(
            psi.mul(field, &phi).is_scalar(field, f),
            "psi * phi != f * Id"
        );
        MatrixFactorization { phi, psi }
    }

    pub fn size(&self) -> usize {
        self.phi.rows
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use crate::field::QiField;
    use proptest::prelude::*;

    fn poly_strategy() -> impl Strategy<Value = Poly<QiField>> {
        proptest::collection::vec(((0u32..4, 0u32..4), -5i64..5), 0..6).prop_map(|terms| {
            let f = QiField;
            let mut p = Poly::zero();
            for (m, c) in terms {
                p.add_term(&f, m, f.from_int(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn mul_associates_and_distributes(
            a in poly_strategy(),
            b in poly_strategy(),
            c in poly_strategy()
        ) {
            let f = QiField;
            prop_assert_eq!(
                a.mul(&f, &b).mul(&f, &c),
                a.mul(&f, &b.mul(&f, &c))
            );
            prop_assert_eq!(
                a.mul(&f, &b.add(&f, &c)),
                a.mul(&f, &b).add(&f, &a.mul(&f, &c))
            );
        }
    }
}
