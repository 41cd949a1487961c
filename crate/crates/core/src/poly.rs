//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept sorted in strictly descending monomial order with no zero
//! coefficients, so representations are canonical and equality is structural.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::field::Field;
use crate::matrix::Matrix;
use crate::monomial::{Monomial, MonomialOrder};

/// Errors from polynomial construction and arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    MixedFields,
    MixedVariableSets { left: usize, right: usize },
    MixedOrders,
    ZeroPolynomial,
    NotHomogeneous,
    NotQuadratic,
    EvenCharacteristic,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::MixedFields => write!(f, "operands belong to different coefficient fields"),
            PolyError::MixedVariableSets { left, right } => {
                write!(
                    f,
                    "operands have different variable counts ({left} vs {right})"
                )
            }
            PolyError::MixedOrders => write!(f, "operands carry different monomial orders"),
            PolyError::ZeroPolynomial => write!(f, "the zero polynomial is not allowed here"),
            PolyError::NotHomogeneous => write!(f, "polynomial is not homogeneous"),
            PolyError::NotQuadratic => write!(f, "polynomial is not a quadratic form"),
            PolyError::EvenCharacteristic => write!(f, "operation needs characteristic != 2"),
        }
    }
}

/// Lightweight description of a polynomial ring k[x1..xn] with a term order.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyRing<K: Field> {
    pub field: K,
    pub nvars: usize,
    pub order: MonomialOrder,
}

impl<K: Field> PolyRing<K> {
    pub fn new(field: K, nvars: usize, order: MonomialOrder) -> Self {
        PolyRing {
            field,
            nvars,
            order,
        }
    }

    pub fn zero(&self) -> Polynomial<K> {
        Polynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            order: self.order,
            terms: Vec::new(),
        }
    }

    pub fn constant(&self, c: K::Elem) -> Polynomial<K> {
        self.monomial_term(Monomial::one(self.nvars), c)
    }

    pub fn one(&self) -> Polynomial<K> {
        self.constant(self.field.one())
    }

    pub fn var(&self, i: usize) -> Polynomial<K> {
        assert!(i < self.nvars, "variable index out of range");
        self.monomial_term(Monomial::var(self.nvars, i), self.field.one())
    }

    pub fn monomial_term(&self, m: Monomial, c: K::Elem) -> Polynomial<K> {
        assert_eq!(m.nvars(), self.nvars);
        let mut p = self.zero();
        if !self.field.is_zero(&c) {
            p.terms.push((m, c));
        }
        p
    }

    pub fn from_terms(&self, terms: Vec<(Monomial, K::Elem)>) -> Polynomial<K> {
        let mut p = self.zero();
        for (m, c) in terms {
            p.add_term(&m, &c);
        }
        p
    }

    /// Sum of c_i * x_i for a coefficient vector; handy for linear forms.
    pub fn linear_form(&self, coeffs: &[K::Elem]) -> Polynomial<K> {
        assert_eq!(coeffs.len(), self.nvars);
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::var(self.nvars, i), c.clone()))
            .collect();
        self.from_terms(terms)
    }
}

/// A sparse polynomial tied to its field, variable count and term order.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<K: Field> {
    field: K,
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, K::Elem)>,
}

impl<K: Field> Polynomial<K> {
    pub fn ring(&self) -> PolyRing<K> {
        PolyRing {
            field: self.field.clone(),
            nvars: self.nvars,
            order: self.order,
        }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, K::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &K::Elem)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// The common degree if homogeneous (zero counts as homogeneous of any
    /// degree and reports None).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        if self.terms.iter().all(|(m, _)| m.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn coeff(&self, m: &Monomial) -> K::Elem {
        match self.terms.binary_search_by(|(tm, _)| self.order.cmp(m, tm)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// Add c * m in place, keeping the representation canonical.
    pub fn add_term(&mut self, m: &Monomial, c: &K::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.binary_search_by(|(tm, _)| self.order.cmp(m, tm)) {
            Ok(i) => {
                let s = self.field.add(&self.terms[i].1, c);
                if self.field.is_zero(&s) {
                    self.terms.remove(i);
                } else {
                    self.terms[i].1 = s;
                }
            }
            Err(i) => self.terms.insert(i, (m.clone(), c.clone())),
        }
    }

    fn compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::MixedFields);
        }
        if self.nvars != other.nvars {
            return Err(PolyError::MixedVariableSets {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.order != other.order {
            return Err(PolyError::MixedOrders);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        let mut out = self.ring().zero();
        out.terms = merge_terms(&self.field, self.order, &self.terms, &other.terms, false);
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        let mut out = self.ring().zero();
        out.terms = merge_terms(&self.field, self.order, &self.terms, &other.terms, true);
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.compatible(other)?;
        let mut prods: Vec<(Monomial, K::Elem)> =
            Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                prods.push((m1.mul(m2), self.field.mul(c1, c2)));
            }
        }
        let order = self.order;
        prods.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out = self.ring().zero();
        for (m, c) in prods {
            match out.terms.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc = self.field.add(lc, &c);
                    if self.field.is_zero(lc) {
                        out.terms.pop();
                    }
                }
                _ => {
                    if !self.field.is_zero(&c) {
                        out.terms.push((m, c));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for (_, c) in &mut out.terms {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        if self.field.is_zero(c) {
            return self.ring().zero();
        }
        let mut out = self.clone();
        for (_, tc) in &mut out.terms {
            *tc = self.field.mul(tc, c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.ring().one();
        for _ in 0..e {
            acc = acc.try_mul(self).expect("same ring");
        }
        acc
    }

    /// self -= c * m * g, the inner step of polynomial division. Both term
    /// lists are merged in one pass.
    pub fn sub_scaled_shifted(&mut self, c: &K::Elem, m: &Monomial, g: &Self) {
        debug_assert!(self.compatible(g).is_ok());
        let shifted: Vec<(Monomial, K::Elem)> = g
            .terms
            .iter()
            .map(|(gm, gc)| (gm.mul(m), self.field.mul(gc, c)))
            .collect();
        self.terms = merge_terms(&self.field, self.order, &self.terms, &shifted, true);
    }

    pub fn make_monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = self.field.inv(lc).expect("leading coefficient nonzero");
                self.scale(&inv)
            }
        }
    }

    /// The homogeneous component of total degree d.
    pub fn homogeneous_component(&self, d: u32) -> Self {
        let mut out = self.ring().zero();
        out.terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .cloned()
            .collect();
        out
    }

    /// The nonzero homogeneous component of lowest degree.
    pub fn initial_form(&self) -> Result<Self, PolyError> {
        let dmin = self
            .terms
            .iter()
            .map(|(m, _)| m.degree())
            .min()
            .ok_or(PolyError::ZeroPolynomial)?;
        Ok(self.homogeneous_component(dmin))
    }

    /// Second-partials matrix of a quadratic form: 2*coeff(x_i^2) on the
    /// diagonal, coeff(x_i x_j) off it.
    pub fn hessian(&self) -> Result<Matrix<K>, PolyError> {
        if self.field.characteristic() == 2 {
            return Err(PolyError::EvenCharacteristic);
        }
        if !self.terms.iter().all(|(m, _)| m.degree() == 2) {
            return Err(PolyError::NotQuadratic);
        }
        let n = self.nvars;
        let mut h = Matrix::zero(self.field.clone(), n, n);
        let two = self.field.from_i64(2);
        for (m, c) in &self.terms {
            let vars: Vec<usize> = (0..n).filter(|&i| m.exp(i) > 0).collect();
            match vars.as_slice() {
                [i] => h.set(*i, *i, self.field.mul(&two, c)),
                [i, j] => {
                    h.set(*i, *j, c.clone());
                    h.set(*j, *i, c.clone());
                }
                _ => unreachable!("degree-2 monomial involves at most two variables"),
            }
        }
        Ok(h)
    }

    /// Substitute images[i] for x_i. Images must live in a common ring.
    pub fn substitute(&self, images: &[Polynomial<K>]) -> Polynomial<K> {
        assert_eq!(images.len(), self.nvars);
        let target = images
            .first()
            .map(|p| p.ring())
            .unwrap_or_else(|| self.ring());
        let mut out = target.zero();
        for (m, c) in &self.terms {
            let mut term = target.constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term = term.try_mul(&images[i].pow(e)).expect("same ring");
                }
            }
            out = out.try_add(&term).expect("same ring");
        }
        out
    }

    /// Reinterpret the coefficients in another field through `map`.
    pub fn map_field<K2: Field>(
        &self,
        field: K2,
        mut map: impl FnMut(&K::Elem) -> K2::Elem,
    ) -> Polynomial<K2> {
        let ring = PolyRing::new(field, self.nvars, self.order);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), map(c)))
            .collect();
        ring.from_terms(terms)
    }

    /// Coefficient vector with respect to a monomial list (e.g. a graded
    /// component basis); panics if a term's monomial is missing.
    pub fn coords(&self, basis_index: impl Fn(&Monomial) -> usize, len: usize) -> Vec<K::Elem> {
        let mut v = vec![self.field.zero(); len];
        for (m, c) in &self.terms {
            v[basis_index(m)] = c.clone();
        }
        v
    }
}

fn merge_terms<K: Field>(
    field: &K,
    order: MonomialOrder,
    a: &[(Monomial, K::Elem)],
    b: &[(Monomial, K::Elem)],
    subtract: bool,
) -> Vec<(Monomial, K::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let c = if subtract {
                    field.neg(&b[j].1)
                } else {
                    b[j].1.clone()
                };
                out.push((b[j].0.clone(), c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if subtract {
                    field.sub(&a[i].1, &b[j].1)
                } else {
                    field.add(&a[i].1, &b[j].1)
                };
                if !field.is_zero(&c) {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (m, c) in &b[j..] {
        let c = if subtract { field.neg(c) } else { c.clone() };
        out.push((m.clone(), c));
    }
    out
}

impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let cs = self.field.elem_to_string(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, String::from(rest)),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn qring(n: usize) -> PolyRing<Rationals> {
        PolyRing::new(Rationals, n, MonomialOrder::Grevlex)
    }

    #[test]
    fn difference_of_squares() {
        let r = qring(2);
        let (x1, x2) = (r.var(0), r.var(1));
        let lhs = x1
            .try_add(&x2)
            .unwrap()
            .try_mul(&x1.try_sub(&x2).unwrap())
            .unwrap();
        let rhs = x1.pow(2).try_sub(&x2.pow(2)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiply_by_zero_annihilates() {
        let r = qring(3);
        let f = r.var(0).try_add(&r.var(2).pow(3)).unwrap();
        assert!(f.try_mul(&r.zero()).unwrap().is_zero());
    }

    #[test]
    fn nine_term_quadric_expansion() {
        // (x1+x2+x4)(x2+x3+x5) expanded by schoolbook multiplication
        let r = qring(5);
        let f1 = r
            .var(0)
            .try_add(&r.var(1))
            .unwrap()
            .try_add(&r.var(3))
            .unwrap();
        let f2 = r
            .var(1)
            .try_add(&r.var(2))
            .unwrap()
            .try_add(&r.var(4))
            .unwrap();
        let prod = f1.try_mul(&f2).unwrap();
        // oracle: accumulate the nine pairwise products one by one
        let mut expected = r.zero();
        for i in [0usize, 1, 3] {
            for j in [1usize, 2, 4] {
                expected = expected
                    .try_add(&r.var(i).try_mul(&r.var(j)).unwrap())
                    .unwrap();
            }
        }
        assert_eq!(prod, expected);
        assert_eq!(prod.num_terms(), 9);
        assert_eq!(prod.homogeneous_degree(), Some(2));
    }

    #[test]
    fn mixed_context_errors() {
        let r2 = qring(2);
        let r3 = qring(3);
        assert_eq!(
            r2.var(0).try_add(&r3.var(0)).unwrap_err(),
            PolyError::MixedVariableSets { left: 2, right: 3 }
        );
        let f5 = PolyRing::new(PrimeField::new(5).unwrap(), 2, MonomialOrder::Grevlex);
        let f7 = PolyRing::new(PrimeField::new(7).unwrap(), 2, MonomialOrder::Grevlex);
        assert_eq!(
            f5.var(0).try_add(&f7.var(0)).unwrap_err(),
            PolyError::MixedFields
        );
        let lexr: PolyRing<Rationals> = PolyRing::new(Rationals, 2, MonomialOrder::Lex);
        assert_eq!(
            r2.var(0).try_add(&lexr.var(0)).unwrap_err(),
            PolyError::MixedOrders
        );
    }

    #[test]
    fn hessian_of_x1x2() {
        let r = qring(2);
        let f = r.var(0).try_mul(&r.var(1)).unwrap();
        let h = f.hessian().unwrap();
        assert_eq!(h.get(0, 0), &Rationals.zero());
        assert_eq!(h.get(0, 1), &Rationals.one());
        assert_eq!(h.get(1, 0), &Rationals.one());
        assert_eq!(h.rank(), 2);
    }

    #[test]
    fn hessian_of_square_has_rank_one() {
        let r = qring(4);
        let h = r.var(0).pow(2).hessian().unwrap();
        assert_eq!(h.get(0, 0), &Rationals.from_i64(2));
        assert_eq!(h.rank(), 1);
    }

    #[test]
    fn hessian_rank_three_example() {
        // x1^2 - x2*x3 -> [[2,0,0],[0,0,-1],[0,-1,0]], rank 3 by row reduction
        let r = qring(3);
        let f = r
            .var(0)
            .pow(2)
            .try_sub(&r.var(1).try_mul(&r.var(2)).unwrap())
            .unwrap();
        let h = f.hessian().unwrap();
        assert_eq!(h.get(0, 0), &Rationals.from_i64(2));
        assert_eq!(h.get(1, 2), &Rationals.from_i64(-1));
        assert_eq!(h.get(1, 1), &Rationals.zero());
        assert_eq!(h.rank(), 3);
    }

    #[test]
    fn hessian_rejects_non_quadratics() {
        let r = qring(2);
        assert_eq!(r.var(0).hessian().unwrap_err(), PolyError::NotQuadratic);
        let f = r.var(0).pow(2).try_add(&r.var(1)).unwrap();
        assert_eq!(f.hessian().unwrap_err(), PolyError::NotQuadratic);
    }

    #[test]
    fn initial_form_examples() {
        let r = qring(3);
        let x1 = r.var(0);
        let f = x1.try_add(&x1.try_mul(&r.var(1)).unwrap()).unwrap();
        assert_eq!(f.initial_form().unwrap(), x1);
        // homogeneous fixed point
        let g = r.var(1).pow(2);
        assert_eq!(g.initial_form().unwrap(), g);
        assert_eq!(
            r.zero().initial_form().unwrap_err(),
            PolyError::ZeroPolynomial
        );
        // (1+x1)(x2+x3) - (x2+x3) = x1*x2 + x1*x3
        let s = r.var(1).try_add(&r.var(2)).unwrap();
        let lhs = r
            .one()
            .try_add(&r.var(0))
            .unwrap()
            .try_mul(&s)
            .unwrap()
            .try_sub(&s)
            .unwrap();
        let expected = r.var(0).try_mul(&s).unwrap();
        assert_eq!(lhs.initial_form().unwrap(), expected);
    }

    #[test]
    fn display_round_trip_shape() {
        let r = qring(3);
        let f = r
            .var(0)
            .pow(2)
            .try_sub(&r.var(1).try_mul(&r.var(2)).unwrap())
            .unwrap();
        assert_eq!(alloc::format!("{f}"), "x1^2 - x2*x3");
        let half = r.constant(Rationals.from_ratio(1, 2));
        let g = half.try_mul(&r.var(2)).unwrap();
        assert_eq!(alloc::format!("{g}"), "1/2*x3");
    }
}
