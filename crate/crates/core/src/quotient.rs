//! Graded artinian quotient rings R = k[x1..xn]/a as finite-dimensional
//! algebras: per-degree monomial bases, normal-form multiplication, Hilbert
//! data, Loewy length, colon ideals and annihilators, minimal generator
//! counts, and exact-zero-divisor testing.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Field;
use crate::groebner::{buchberger, GroebnerBasis};
use crate::matrix::{Matrix, Subspace};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientError {
    /// The staircase has an infinite ray along this variable (0-based).
    NotArtinian {
        ray: usize,
    },
    NotHomogeneous,
    ZeroElement,
    UnitElement,
}

impl fmt::Display for QuotientError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientError::NotArtinian { ray } => {
                write!(
                    f,
                    "quotient is not artinian: powers of x{} survive",
                    ray + 1
                )
            }
            QuotientError::NotHomogeneous => write!(f, "homogeneous input required"),
            QuotientError::ZeroElement => write!(f, "element is zero"),
            QuotientError::UnitElement => write!(f, "element is a unit"),
        }
    }
}

/// An element of a quotient ring, stored as its canonical normal-form
/// representative.
#[derive(Clone, PartialEq, Debug)]
pub struct RingElement<K: Field> {
    poly: Polynomial<K>,
}

impl<K: Field> RingElement<K> {
    pub fn poly(&self) -> &Polynomial<K> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.poly.degree()
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.poly.homogeneous_degree()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.poly.is_homogeneous()
    }

    /// Lies in the maximal ideal (no constant term)?
    pub fn in_maximal_ideal(&self) -> bool {
        self.poly.terms().iter().all(|(m, _)| m.degree() > 0)
    }
}

impl<K: Field> fmt::Display for RingElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// The graded artinian algebra R = P/a for a homogeneous ideal a with finite
/// staircase, with per-degree standard monomial bases.
#[derive(Clone, Debug)]
pub struct QuotientRing<K: Field> {
    ambient: PolyRing<K>,
    gb: GroebnerBasis<K>,
    presentation: Vec<Polynomial<K>>,
    bases: Vec<Vec<Monomial>>,
    index: Vec<BTreeMap<Monomial, usize>>,
}

impl<K: Field> QuotientRing<K> {
    /// Build P/(gens); fails when some generator is inhomogeneous or the
    /// quotient is not finite dimensional.
    pub fn new(ambient: PolyRing<K>, gens: &[Polynomial<K>]) -> Result<Self, QuotientError> {
        if gens.iter().any(|g| !g.is_homogeneous()) {
            return Err(QuotientError::NotHomogeneous);
        }
        let gb = buchberger(gens, &ambient);
        if let Some(ray) = gb.infinite_ray() {
            return Err(QuotientError::NotArtinian { ray });
        }
        let mut bases = Vec::new();
        let mut d = 0u32;
        loop {
            let sm = gb.standard_monomials(d);
            if sm.is_empty() && d > 0 {
                break;
            }
            bases.push(sm);
            d += 1;
        }
        let index = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
            .collect();
        Ok(QuotientRing {
            ambient,
            gb,
            presentation: gens.to_vec(),
            bases,
            index,
        })
    }

    pub fn ambient(&self) -> &PolyRing<K> {
        &self.ambient
    }

    pub fn field(&self) -> &K {
        &self.ambient.field
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars
    }

    pub fn groebner(&self) -> &GroebnerBasis<K> {
        &self.gb
    }

    /// The generators the ring was constructed from.
    pub fn presentation(&self) -> &[Polynomial<K>] {
        &self.presentation
    }

    /// Largest d with R_d != 0.
    pub fn top_degree(&self) -> u32 {
        (self.bases.len() - 1) as u32
    }

    pub fn dim_at(&self, d: i64) -> usize {
        if d < 0 || d >= self.bases.len() as i64 {
            0
        } else {
            self.bases[d as usize].len()
        }
    }

    pub fn basis_at(&self, d: u32) -> &[Monomial] {
        static EMPTY: &[Monomial] = &[];
        if (d as usize) < self.bases.len() {
            &self.bases[d as usize]
        } else {
            EMPTY
        }
    }

    pub fn hilbert_series(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.bases.iter().map(|b| b.len()).sum()
    }

    /// Least l with m^l = 0; for a graded artinian ring this is the top
    /// nonzero degree plus one.
    pub fn loewy_length(&self) -> u32 {
        self.top_degree() + 1
    }

    pub fn element(&self, poly: &Polynomial<K>) -> RingElement<K> {
        RingElement {
            poly: self.gb.normal_form(poly),
        }
    }

    pub fn zero_elem(&self) -> RingElement<K> {
        RingElement {
            poly: self.ambient.zero(),
        }
    }

    pub fn one_elem(&self) -> RingElement<K> {
        self.element(&self.ambient.one())
    }

    pub fn var_elem(&self, i: usize) -> RingElement<K> {
        self.element(&self.ambient.var(i))
    }

    pub fn add(&self, a: &RingElement<K>, b: &RingElement<K>) -> RingElement<K> {
        RingElement {
            poly: a.poly.try_add(&b.poly).expect("same ring"),
        }
    }

    pub fn sub(&self, a: &RingElement<K>, b: &RingElement<K>) -> RingElement<K> {
        RingElement {
            poly: a.poly.try_sub(&b.poly).expect("same ring"),
        }
    }

    pub fn neg(&self, a: &RingElement<K>) -> RingElement<K> {
        RingElement { poly: a.poly.neg() }
    }

    pub fn mul(&self, a: &RingElement<K>, b: &RingElement<K>) -> RingElement<K> {
        let prod = a.poly.try_mul(&b.poly).expect("same ring");
        self.element(&prod)
    }

    pub fn scale(&self, a: &RingElement<K>, c: &K::Elem) -> RingElement<K> {
        RingElement {
            poly: a.poly.scale(c),
        }
    }

    /// Determinant of a square matrix of ring elements by cofactor expansion.
    pub fn det(&self, entries: &[Vec<RingElement<K>>]) -> RingElement<K> {
        let n = entries.len();
        assert!(entries.iter().all(|row| row.len() == n));
        if n == 0 {
            return self.one_elem();
        }
        if n == 1 {
            return entries[0][0].clone();
        }
        let mut acc = self.zero_elem();
        for (j, top) in entries[0].iter().enumerate() {
            if top.is_zero() {
                continue;
            }
            let minor: Vec<Vec<RingElement<K>>> = entries[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, e)| e.clone())
                        .collect()
                })
                .collect();
            let cof = self.mul(top, &self.det(&minor));
            acc = if j % 2 == 0 {
                self.add(&acc, &cof)
            } else {
                self.sub(&acc, &cof)
            };
        }
        acc
    }

    /// Coordinates of the degree-d homogeneous component of an element.
    pub fn coords_at(&self, e: &RingElement<K>, d: i64) -> Vec<K::Elem> {
        let f = self.field();
        let dim = self.dim_at(d);
        let mut v = vec![f.zero(); dim];
        if dim == 0 {
            return v;
        }
        let idx = &self.index[d as usize];
        for (m, c) in e.poly.terms() {
            if m.degree() as i64 == d {
                v[idx[m]] = c.clone();
            }
        }
        v
    }

    pub fn elem_from_coords(&self, d: u32, coords: &[K::Elem]) -> RingElement<K> {
        let basis = self.basis_at(d);
        assert_eq!(coords.len(), basis.len());
        let terms = basis.iter().cloned().zip(coords.iter().cloned()).collect();
        RingElement {
            poly: self.ambient.from_terms(terms),
        }
    }

    /// Matrix of multiplication by a homogeneous element e: R_d -> R_{d+deg e}.
    pub fn mult_matrix(&self, e: &RingElement<K>, d: u32) -> Matrix<K> {
        let de = e.homogeneous_degree().expect("homogeneous multiplier") as i64;
        let rows = self.dim_at(d as i64 + de);
        let cols = self.dim_at(d as i64);
        let mut m = Matrix::zero(self.field().clone(), rows, cols);
        for (j, mono) in self.basis_at(d).iter().enumerate() {
            let b = RingElement {
                poly: self.ambient.monomial_term(mono.clone(), self.field().one()),
            };
            let prod = self.mul(&b, e);
            for (i, c) in self.coords_at(&prod, d as i64 + de).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Hilbert function of R/I as a coefficient list.
    pub fn quotient_hilbert(&self, ideal: &RingIdeal<K>) -> Vec<usize> {
        let mut out: Vec<usize> = (0..=self.top_degree() as i64)
            .map(|d| self.dim_at(d) - ideal.dim_at(d))
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }
}

/// A homogeneous ideal of a quotient ring, held both as generators and as
/// canonical per-degree coordinate subspaces.
#[derive(Clone, Debug)]
pub struct RingIdeal<K: Field> {
    gens: Vec<RingElement<K>>,
    subspaces: Vec<Subspace<K>>,
}

impl<K: Field> RingIdeal<K> {
    pub fn new(ring: &QuotientRing<K>, gens: &[RingElement<K>]) -> Result<Self, QuotientError> {
        if gens.iter().any(|g| !g.is_homogeneous()) {
            return Err(QuotientError::NotHomogeneous);
        }
        let field = ring.field().clone();
        let top = ring.top_degree();
        let mut subspaces: Vec<Subspace<K>> = (0..=top as i64)
            .map(|d| Subspace::empty(field.clone(), ring.dim_at(d)))
            .collect();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let e = g.homogeneous_degree().unwrap();
            for d in e..=top {
                for m in ring.basis_at(d - e) {
                    let mono = RingElement {
                        poly: ring.ambient.monomial_term(m.clone(), field.one()),
                    };
                    let prod = ring.mul(&mono, g);
                    subspaces[d as usize].insert(ring.coords_at(&prod, d as i64));
                }
            }
        }
        Ok(RingIdeal {
            gens: gens.iter().filter(|g| !g.is_zero()).cloned().collect(),
            subspaces,
        })
    }

    pub fn zero(ring: &QuotientRing<K>) -> Self {
        RingIdeal::new(ring, &[]).expect("zero ideal")
    }

    pub fn maximal(ring: &QuotientRing<K>) -> Self {
        let gens: Vec<RingElement<K>> = (0..ring.nvars()).map(|i| ring.var_elem(i)).collect();
        RingIdeal::new(ring, &gens).expect("maximal ideal")
    }

    /// m^k as an ideal; for a standard graded ring this is everything in
    /// degrees >= k.
    pub fn power_of_maximal(ring: &QuotientRing<K>, k: u32) -> Self {
        let mut gens = Vec::new();
        for m in ring.basis_at(k) {
            gens.push(RingElement {
                poly: ring.ambient.monomial_term(m.clone(), ring.field().one()),
            });
        }
        RingIdeal::new(ring, &gens).expect("power of maximal ideal")
    }

    /// Construct directly from per-degree subspaces (must be an ideal, i.e.
    /// closed under multiplication into higher degrees); extracts minimal
    /// generators for the `gens` list.
    fn from_subspaces(ring: &QuotientRing<K>, subspaces: Vec<Subspace<K>>) -> Self {
        let gens = minimal_generators_of_family(ring, &subspaces);
        RingIdeal { gens, subspaces }
    }

    pub fn generators(&self) -> &[RingElement<K>] {
        &self.gens
    }

    pub fn dim_at(&self, d: i64) -> usize {
        if d < 0 || d >= self.subspaces.len() as i64 {
            0
        } else {
            self.subspaces[d as usize].dim()
        }
    }

    pub fn subspace_at(&self, d: u32) -> Option<&Subspace<K>> {
        self.subspaces.get(d as usize)
    }

    pub fn total_dim(&self) -> usize {
        self.subspaces.iter().map(|s| s.dim()).sum()
    }

    pub fn hilbert(&self) -> Vec<usize> {
        self.subspaces.iter().map(|s| s.dim()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.subspaces.iter().all(|s| s.dim() == 0)
    }

    pub fn is_whole_ring(&self, ring: &QuotientRing<K>) -> bool {
        (0..=ring.top_degree() as i64).all(|d| self.dim_at(d) == ring.dim_at(d))
    }

    pub fn contains(&self, ring: &QuotientRing<K>, e: &RingElement<K>) -> bool {
        let top = ring.top_degree();
        (0..=top as i64).all(|d| {
            let v = ring.coords_at(e, d);
            if v.iter().all(|c| ring.field().is_zero(c)) {
                return true;
            }
            self.subspaces[d as usize].contains(&v)
        })
    }

    pub fn equals(&self, other: &RingIdeal<K>) -> bool {
        self.subspaces == other.subspaces
    }

    pub fn contains_ideal(&self, other: &RingIdeal<K>) -> bool {
        other
            .subspaces
            .iter()
            .zip(&self.subspaces)
            .all(|(o, s)| o.is_subspace_of(s))
    }

    /// Minimal generators extracted degree by degree (graded Nakayama).
    pub fn minimal_generators(&self, ring: &QuotientRing<K>) -> Vec<RingElement<K>> {
        minimal_generators_of_family(ring, &self.subspaces)
    }

    /// nu(J) = dim_k J/mJ.
    pub fn min_gens_count(&self, ring: &QuotientRing<K>) -> usize {
        self.minimal_generators(ring).len()
    }

    /// The ideal m*J.
    pub fn times_maximal(&self, ring: &QuotientRing<K>) -> RingIdeal<K> {
        let field = ring.field().clone();
        let top = ring.top_degree() as i64;
        let mut subspaces: Vec<Subspace<K>> = (0..=top)
            .map(|d| Subspace::empty(field.clone(), ring.dim_at(d)))
            .collect();
        for d in 1..=top {
            let lower = &self.subspaces[(d - 1) as usize];
            for v in lower.basis() {
                let e = ring.elem_from_coords((d - 1) as u32, v);
                for i in 0..ring.nvars() {
                    let prod = ring.mul(&ring.var_elem(i), &e);
                    subspaces[d as usize].insert(ring.coords_at(&prod, d));
                }
            }
        }
        RingIdeal::from_subspaces(ring, subspaces)
    }

    /// Colon ideal (self : other) = { r : r * other inside self }.
    pub fn colon(&self, ring: &QuotientRing<K>, other: &RingIdeal<K>) -> RingIdeal<K> {
        let field = ring.field().clone();
        let top = ring.top_degree() as i64;
        let mut subspaces = Vec::new();
        for d in 0..=top {
            let dim = ring.dim_at(d);
            let mut rows: Vec<Vec<K::Elem>> = Vec::new();
            for g in &other.gens {
                let e = g.homogeneous_degree().unwrap() as i64;
                let target = d + e;
                let tdim = ring.dim_at(target);
                let mult = ring.mult_matrix(g, d as u32);
                // conditions: reduce(column image) mod self_{d+e} must vanish
                let sub = if target <= top {
                    Some(&self.subspaces[target as usize])
                } else {
                    None
                };
                // build rows of the condition matrix, one per target coordinate
                let mut cols: Vec<Vec<K::Elem>> = Vec::new();
                for j in 0..dim {
                    let img: Vec<K::Elem> = (0..tdim).map(|i| mult.get(i, j).clone()).collect();
                    let red = match sub {
                        Some(s) => s.reduce(img),
                        None => img,
                    };
                    cols.push(red);
                }
                for i in 0..tdim {
                    let row: Vec<K::Elem> = cols.iter().map(|c| c[i].clone()).collect();
                    if row.iter().any(|c| !field.is_zero(c)) {
                        rows.push(row);
                    }
                }
            }
            let kernel = if rows.is_empty() {
                Subspace::full(field.clone(), dim)
            } else {
                let m = Matrix::from_rows(field.clone(), dim, rows);
                Subspace::from_spanning(field.clone(), dim, m.nullspace())
            };
            subspaces.push(kernel);
        }
        RingIdeal::from_subspaces(ring, subspaces)
    }
}

fn minimal_generators_of_family<K: Field>(
    ring: &QuotientRing<K>,
    subspaces: &[Subspace<K>],
) -> Vec<RingElement<K>> {
    let mut gens = Vec::new();
    for d in 0..subspaces.len() {
        let cur = &subspaces[d];
        if cur.dim() == 0 {
            continue;
        }
        // R_1 * (previous degree component); equals the degree-d part of the
        // ideal generated below degree d because the family is an ideal
        let mut seen = Subspace::empty(ring.field().clone(), ring.dim_at(d as i64));
        if d > 0 {
            for v in subspaces[d - 1].basis() {
                let e = ring.elem_from_coords((d - 1) as u32, v);
                for i in 0..ring.nvars() {
                    let prod = ring.mul(&ring.var_elem(i), &e);
                    seen.insert(ring.coords_at(&prod, d as i64));
                }
            }
        }
        for v in cur.basis() {
            if seen.insert(v.clone()) {
                gens.push(ring.elem_from_coords(d as u32, v));
            }
        }
    }
    gens
}

/// A minimal presentation of the quotient S = R/I as a standard graded
/// algebra: new variables are a basis of S_1, and relations are the kernels
/// of the multiplication maps onto each graded component. Relations live in
/// degrees 2..=top(S)+1; beyond that every kernel is generated below.
pub fn minimal_presentation<K: Field>(
    ring: &QuotientRing<K>,
    ideal: &RingIdeal<K>,
) -> Result<QuotientRing<K>, QuotientError> {
    let field = ring.field().clone();
    let s_hilbert = ring.quotient_hilbert(ideal);
    let s_dim = |d: usize| s_hilbert.get(d).copied().unwrap_or(0);
    let m = s_dim(1);
    let top_s = s_hilbert.len().saturating_sub(1);
    let new_ring = PolyRing::new(field.clone(), m, ring.ambient.order);

    // basis of S_1: unit coordinate vectors of R_1 that survive modulo I_1
    let mut span = match ideal.subspace_at(1) {
        Some(s) => s.clone(),
        None => Subspace::empty(field.clone(), ring.dim_at(1)),
    };
    let mut lifts: Vec<RingElement<K>> = Vec::new();
    for i in 0..ring.dim_at(1) {
        let mut v = vec![field.zero(); ring.dim_at(1)];
        v[i] = field.one();
        if span.insert(v.clone()) {
            lifts.push(ring.elem_from_coords(1, &v));
        }
    }
    debug_assert_eq!(lifts.len(), m);

    // coordinates in S_d: reduce mod I_d, keep complement positions
    let s_coords = |e: &RingElement<K>, d: usize| -> Vec<K::Elem> {
        let raw = ring.coords_at(e, d as i64);
        match ideal.subspace_at(d as u32) {
            Some(sub) => {
                let reduced = sub.reduce(raw);
                (0..reduced.len())
                    .filter(|p| !sub.pivots().contains(p))
                    .map(|p| reduced[p].clone())
                    .collect()
            }
            None => raw,
        }
    };

    let mut relations: Vec<Polynomial<K>> = Vec::new();
    let mut prev_kernel: Vec<Polynomial<K>> = Vec::new();
    for d in 2..=top_s + 1 {
        let monos = crate::monomial::Monomial::all_of_degree(m, d as u32, new_ring.order);
        let cols = monos.len();
        if cols == 0 {
            break;
        }
        // evaluate each monomial in R and project to S
        let mut mat = Matrix::zero(field.clone(), s_dim(d), cols);
        for (j, mono) in monos.iter().enumerate() {
            let mut img = ring.one_elem();
            for (i, &e) in mono.exps().iter().enumerate() {
                for _ in 0..e {
                    img = ring.mul(&img, &lifts[i]);
                }
            }
            for (i, c) in s_coords(&img, d).into_iter().enumerate() {
                mat.set(i, j, c);
            }
        }
        let kernel = mat.nullspace();
        let kernel_polys: Vec<Polynomial<K>> = kernel
            .iter()
            .map(|v| new_ring.from_terms(monos.iter().cloned().zip(v.iter().cloned()).collect()))
            .collect();
        // new relations: kernel modulo multiples of lower relations
        let index: BTreeMap<&crate::monomial::Monomial, usize> =
            monos.iter().enumerate().map(|(i, mo)| (mo, i)).collect();
        let mut seen = Subspace::empty(field.clone(), cols);
        for r in &prev_kernel {
            for i in 0..m {
                let prod = r.try_mul(&new_ring.var(i)).expect("same ring");
                seen.insert(prod.coords(|mm| index[mm], cols));
            }
        }
        for (v, poly) in kernel.iter().zip(&kernel_polys) {
            if seen.insert(v.clone()) {
                relations.push(poly.clone());
            }
        }
        prev_kernel = kernel_polys;
    }
    let presented = QuotientRing::new(new_ring, &relations)?;
    debug_assert_eq!(presented.hilbert_series(), s_hilbert);
    Ok(presented)
}

/// Annihilator (0 : e).
pub fn annihilator<K: Field>(ring: &QuotientRing<K>, e: &RingElement<K>) -> RingIdeal<K> {
    let principal = RingIdeal::new(ring, core::slice::from_ref(e)).expect("homogeneous element");
    RingIdeal::zero(ring).colon(ring, &principal)
}

/// Socle (0 : m).
pub fn socle<K: Field>(ring: &QuotientRing<K>) -> RingIdeal<K> {
    RingIdeal::zero(ring).colon(ring, &RingIdeal::maximal(ring))
}

/// Exact-zero-divisor test: x is an exact zero-divisor iff (0:x) is
/// principal, generated by some y with (0:y) = (x). Returns such a y.
///
/// The Hilbert-function identity H_{(0:x)}(d) = H_{R/(x)}(d - deg y), which
/// expresses (0:x) = yR = (R/(x))(-deg y), is re-verified on success.
pub fn is_exact_zero_divisor<K: Field>(
    ring: &QuotientRing<K>,
    x: &RingElement<K>,
) -> Result<Option<RingElement<K>>, QuotientError> {
    if x.is_zero() {
        return Err(QuotientError::ZeroElement);
    }
    if !x.in_maximal_ideal() {
        return Err(QuotientError::UnitElement);
    }
    if !x.is_homogeneous() {
        return Err(QuotientError::NotHomogeneous);
    }
    let ann_x = annihilator(ring, x);
    let gens = ann_x.minimal_generators(ring);
    if gens.len() != 1 {
        return Ok(None);
    }
    let y = gens.into_iter().next().unwrap();
    let ann_y = annihilator(ring, &y);
    let ideal_x = RingIdeal::new(ring, core::slice::from_ref(x)).expect("homogeneous");
    if !ann_y.equals(&ideal_x) {
        return Ok(None);
    }
    // numerical check of (0:x) = (R/(x))(-deg y)
    let dy = y.homogeneous_degree().unwrap() as i64;
    let top = ring.top_degree() as i64;
    for d in 0..=top {
        let lhs = ann_x.dim_at(d);
        let e = d - dy;
        let rhs = if e < 0 {
            0
        } else {
            ring.dim_at(e) - ideal_x.dim_at(e)
        };
        assert_eq!(
            lhs, rhs,
            "annihilator Hilbert function mismatch at degree {d}"
        );
    }
    Ok(Some(y))
}

/// Render a Hilbert series as `[a0, a1, ...]`.
pub fn hilbert_string(h: &[usize]) -> String {
    let inner: Vec<String> = h.iter().map(|c| alloc::format!("{c}")).collect();
    alloc::format!("[{}]", inner.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_polynomial;
    use alloc::format;

    pub fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("x{i}")).collect()
    }

    pub fn example_ring<K: Field>(field: K) -> QuotientRing<K> {
        let ring = PolyRing::new(field, 5, MonomialOrder::Grevlex);
        let ns = names(5);
        let gens: Vec<_> = [
            "x1^2-x2*x3",
            "x2^2-x3*x5",
            "x3^2-x1*x4",
            "x4^2",
            "x5^2",
            "x3*x4",
            "x2*x5",
            "x4*x5",
        ]
        .iter()
        .map(|s| parse_polynomial(&ring, &ns, s).unwrap())
        .collect();
        QuotientRing::new(ring, &gens).unwrap()
    }

    fn b101() -> QuotientRing<PrimeField> {
        example_ring(PrimeField::new(101).unwrap())
    }

    fn elem<K: Field>(r: &QuotientRing<K>, s: &str) -> RingElement<K> {
        let ns = names(r.nvars());
        r.element(&parse_polynomial(r.ambient(), &ns, s).unwrap())
    }

    #[test]
    fn hilbert_series_of_example() {
        let b = b101();
        assert_eq!(b.hilbert_series(), vec![1, 5, 7, 3]);
        assert_eq!(b.total_dim(), 16);
        assert_eq!(b.loewy_length(), 4);
        let bq = example_ring(Rationals);
        assert_eq!(bq.hilbert_series(), vec![1, 5, 7, 3]);
    }

    #[test]
    fn tiny_quotients() {
        let r1 = PolyRing::new(Rationals, 1, MonomialOrder::Grevlex);
        let sq = QuotientRing::new(r1.clone(), &[r1.var(0).pow(2)]).unwrap();
        assert_eq!(sq.hilbert_series(), vec![1, 1]);
        assert_eq!(sq.loewy_length(), 2);
        let field = QuotientRing::new(r1.clone(), &[r1.var(0)]).unwrap();
        assert_eq!(field.hilbert_series(), vec![1]);
        assert_eq!(field.loewy_length(), 1);
    }

    #[test]
    fn non_artinian_is_rejected() {
        let r = PolyRing::new(Rationals, 3, MonomialOrder::Grevlex);
        let err = QuotientRing::new(r.clone(), &[r.var(0), r.var(1)]).unwrap_err();
        assert_eq!(err, QuotientError::NotArtinian { ray: 2 });
    }

    #[test]
    fn quotient_by_ideal_hilbert() {
        let b = b101();
        let i = RingIdeal::new(&b, &[elem(&b, "x1+x2+x4"), elem(&b, "x2+x3+x5")]).unwrap();
        assert_eq!(b.quotient_hilbert(&i), vec![1, 3]);
    }

    #[test]
    fn colon_dualities_with_delta() {
        // Delta = x1x2 - x1x3 - x1x4 + x2x3 + x2x4 - x3x5 is the normal form
        // of det [[x1-x2, x4], [-x3+x4+2x5, x2-x3-x4]] (expanded by hand)
        let b = b101();
        let delta = elem(&b, "x1*x2 - x1*x3 - x1*x4 + x2*x3 + x2*x4 - x3*x5");
        let det = b.det(&[
            vec![elem(&b, "x1-x2"), elem(&b, "x4")],
            vec![elem(&b, "-x3+x4+2*x5"), elem(&b, "x2-x3-x4")],
        ]);
        assert_eq!(det, delta);
        let i = RingIdeal::new(&b, &[elem(&b, "x1+x2+x4"), elem(&b, "x2+x3+x5")]).unwrap();
        let ann_i = RingIdeal::zero(&b).colon(&b, &i);
        let principal_delta = RingIdeal::new(&b, &[delta.clone()]).unwrap();
        assert!(ann_i.equals(&principal_delta));
        let ann_delta = annihilator(&b, &delta);
        assert!(ann_delta.equals(&i));
    }

    #[test]
    fn annihilator_in_dual_numbers() {
        let r1 = PolyRing::new(Rationals, 2, MonomialOrder::Grevlex);
        let ring = QuotientRing::new(r1.clone(), &[r1.var(0).pow(2), r1.var(1).pow(2)]).unwrap();
        let x1 = ring.var_elem(0);
        let ann = annihilator(&ring, &x1);
        let principal = RingIdeal::new(&ring, &[x1]).unwrap();
        assert!(ann.equals(&principal));
    }

    #[test]
    fn minimal_generator_counts() {
        let b = b101();
        let i = RingIdeal::new(&b, &[elem(&b, "x1+x2+x4"), elem(&b, "x2+x3+x5")]).unwrap();
        assert_eq!(i.min_gens_count(&b), 2);
        assert_eq!(RingIdeal::maximal(&b).min_gens_count(&b), 5);
        assert_eq!(RingIdeal::power_of_maximal(&b, 3).min_gens_count(&b), 3);
    }

    #[test]
    fn rank_nullity_of_multiplication() {
        let b = b101();
        for x in ["x1", "x1+x2+x4", "x1*x2", "x3*x5 - x2*x4"] {
            let e = elem(&b, x);
            let ann = annihilator(&b, &e);
            let image = RingIdeal::new(&b, &[e.clone()]).unwrap();
            assert_eq!(
                ann.total_dim() + image.total_dim(),
                b.total_dim(),
                "failed for {x}"
            );
        }
    }

    #[test]
    fn socle_is_top_component_here() {
        let b = b101();
        let s = socle(&b);
        assert_eq!(s.dim_at(3), 3);
        // for B the socle is exactly the top component
        assert_eq!(s.total_dim(), 3);
    }

    #[test]
    fn exact_zero_divisor_examples() {
        // x in k[x]/(x^2) is self-complementary
        let r1 = PolyRing::new(Rationals, 1, MonomialOrder::Grevlex);
        let ring = QuotientRing::new(r1.clone(), &[r1.var(0).pow(2)]).unwrap();
        let x = ring.var_elem(0);
        let y = is_exact_zero_divisor(&ring, &x).unwrap().unwrap();
        assert_eq!(y, x);

        // x1+x2 in k[x1,x2]/(x1^2,x2^2) pairs with x1-x2
        let r2 = PolyRing::new(Rationals, 2, MonomialOrder::Grevlex);
        let ci = QuotientRing::new(r2.clone(), &[r2.var(0).pow(2), r2.var(1).pow(2)]).unwrap();
        let s = ci.element(&r2.var(0).try_add(&r2.var(1)).unwrap());
        let y = is_exact_zero_divisor(&ci, &s).unwrap().unwrap();
        let d = ci.element(&r2.var(0).try_sub(&r2.var(1)).unwrap());
        let ideal_y = RingIdeal::new(&ci, &[y.clone()]).unwrap();
        let ideal_d = RingIdeal::new(&ci, &[d]).unwrap();
        assert!(ideal_y.equals(&ideal_d));
        // symmetry of the pair
        let back = is_exact_zero_divisor(&ci, &y).unwrap().unwrap();
        let ideal_back = RingIdeal::new(&ci, &[back]).unwrap();
        let ideal_s = RingIdeal::new(&ci, &[s]).unwrap();
        assert!(ideal_back.equals(&ideal_s));

        // f1 in B is not an exact zero-divisor
        let b = b101();
        let f1 = elem(&b, "x1+x2+x4");
        assert!(is_exact_zero_divisor(&b, &f1).unwrap().is_none());

        // errors
        assert_eq!(
            is_exact_zero_divisor(&b, &b.zero_elem()).unwrap_err(),
            QuotientError::ZeroElement
        );
        assert_eq!(
            is_exact_zero_divisor(&b, &b.one_elem()).unwrap_err(),
            QuotientError::UnitElement
        );
    }

    #[test]
    fn minimal_presentation_of_quotients() {
        let b = b101();
        let i = RingIdeal::new(&b, &[elem(&b, "x1+x2+x4"), elem(&b, "x2+x3+x5")]).unwrap();
        let s = minimal_presentation(&b, &i).unwrap();
        assert_eq!(s.nvars(), 3);
        assert_eq!(s.hilbert_series(), vec![1, 3]);
        // all six quadric monomials vanish in S
        assert_eq!(s.groebner().generators().len(), 6);

        // quotient by the maximal ideal is the field
        let mi = RingIdeal::maximal(&b);
        let k = minimal_presentation(&b, &mi).unwrap();
        assert_eq!(k.nvars(), 0);
        assert_eq!(k.hilbert_series(), vec![1]);

        // quotient by zero reproduces the ring
        let z = RingIdeal::zero(&b);
        let again = minimal_presentation(&b, &z).unwrap();
        assert_eq!(again.hilbert_series(), b.hilbert_series());
        assert_eq!(again.nvars(), 5);
    }

    #[test]
    fn x4_annihilator_is_not_principal() {
        let b = b101();
        let x4 = elem(&b, "x4");
        let ann = annihilator(&b, &x4);
        assert!(ann.min_gens_count(&b) > 1);
        assert!(is_exact_zero_divisor(&b, &x4).unwrap().is_none());
    }
}
