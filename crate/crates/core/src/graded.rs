//! Graded free modules over an artinian quotient ring, maps of such modules
//! given by matrices of ring elements, their degree-wise component matrices,
//! kernels, and minimal generators of graded submodule families.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;
use crate::matrix::{Matrix, Subspace};
use crate::quotient::{QuotientRing, RingElement};

/// F = R(-s_1) + ... + R(-s_k): a free module described by its generator
/// degrees. Shifts may be negative (dualized modules).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub shifts: Vec<i64>,
}

impl FreeModule {
    pub fn new(shifts: Vec<i64>) -> Self {
        FreeModule { shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    /// Dimension of the internal-degree-d component over k.
    pub fn dim_at<K: Field>(&self, ring: &QuotientRing<K>, d: i64) -> usize {
        self.shifts.iter().map(|s| ring.dim_at(d - s)).sum()
    }

    /// Degrees d where some component could be nonzero.
    pub fn degree_range<K: Field>(&self, ring: &QuotientRing<K>) -> impl Iterator<Item = i64> {
        let lo = self.shifts.iter().copied().min().unwrap_or(0);
        let hi = self.shifts.iter().copied().max().unwrap_or(0) + ring.top_degree() as i64;
        lo..=hi
    }

    /// Offsets of each generator block inside the degree-d coordinate vector.
    pub fn block_offsets<K: Field>(&self, ring: &QuotientRing<K>, d: i64) -> Vec<usize> {
        let mut offs = Vec::with_capacity(self.shifts.len());
        let mut acc = 0;
        for s in &self.shifts {
            offs.push(acc);
            acc += ring.dim_at(d - s);
        }
        offs
    }
}

/// A graded map G -> F between free modules: entry (r, c) is a homogeneous
/// ring element of degree shifts_G[c] - shifts_F[r] (or zero).
#[derive(Clone, Debug)]
pub struct ElemMatrix<K: Field> {
    pub source: FreeModule,
    pub target: FreeModule,
    /// row-major entries, rows = target rank, cols = source rank
    pub entries: Vec<RingElement<K>>,
}

impl<K: Field> ElemMatrix<K> {
    pub fn new(source: FreeModule, target: FreeModule, entries: Vec<RingElement<K>>) -> Self {
        assert_eq!(entries.len(), source.rank() * target.rank());
        ElemMatrix {
            source,
            target,
            entries,
        }
    }

    pub fn entry(&self, r: usize, c: usize) -> &RingElement<K> {
        &self.entries[r * self.source.rank() + c]
    }

    /// Degrees are consistent: every nonzero entry is homogeneous of degree
    /// source_shift - target_shift.
    pub fn degrees_consistent(&self) -> bool {
        for r in 0..self.target.rank() {
            for c in 0..self.source.rank() {
                let e = self.entry(r, c);
                if e.is_zero() {
                    continue;
                }
                let want = self.source.shifts[c] - self.target.shifts[r];
                if e.homogeneous_degree().map(|d| d as i64) != Some(want) {
                    return false;
                }
            }
        }
        true
    }

    /// Entries all lie in the maximal ideal (no unit entries).
    pub fn entries_in_maximal_ideal(&self) -> bool {
        self.entries.iter().all(|e| e.in_maximal_ideal())
    }

    /// Matrix product self * other (composition of maps).
    pub fn compose(&self, ring: &QuotientRing<K>, other: &ElemMatrix<K>) -> ElemMatrix<K> {
        assert_eq!(self.source.shifts, other.target.shifts);
        let rows = self.target.rank();
        let mid = self.source.rank();
        let cols = other.source.rank();
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let mut acc = ring.zero_elem();
                for m in 0..mid {
                    let prod = ring.mul(self.entry(r, m), other.entry(m, c));
                    acc = ring.add(&acc, &prod);
                }
                entries.push(acc);
            }
        }
        ElemMatrix {
            source: other.source.clone(),
            target: self.target.clone(),
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// The k-linear component at internal degree d, acting on coordinates.
    pub fn component_matrix(&self, ring: &QuotientRing<K>, d: i64) -> Matrix<K> {
        let field = ring.field().clone();
        let src_dim = self.source.dim_at(ring, d);
        let tgt_dim = self.target.dim_at(ring, d);
        let tgt_offsets = self.target.block_offsets(ring, d);
        let mut m = Matrix::zero(field.clone(), tgt_dim, src_dim);
        let mut col = 0;
        for (c, sc) in self.source.shifts.iter().enumerate() {
            let e = d - sc;
            if ring.dim_at(e) == 0 {
                continue;
            }
            for mono in ring.basis_at(e as u32) {
                let unit = ring.element(&ring.ambient().monomial_term(mono.clone(), field.one()));
                for (r, tr) in self.target.shifts.iter().enumerate() {
                    let entry = self.entry(r, c);
                    if entry.is_zero() {
                        continue;
                    }
                    let img = ring.mul(entry, &unit);
                    let coords = ring.coords_at(&img, d - tr);
                    for (i, v) in coords.into_iter().enumerate() {
                        m.set(tgt_offsets[r] + i, col, v);
                    }
                }
                col += 1;
            }
        }
        debug_assert_eq!(col, src_dim);
        m
    }

    /// Kernel as a graded submodule family over all relevant degrees.
    pub fn kernel(&self, ring: &QuotientRing<K>) -> SubmoduleFamily<K> {
        let field = ring.field().clone();
        let mut per_degree = BTreeMap::new();
        for d in self.source.degree_range(ring) {
            let dim = self.source.dim_at(ring, d);
            if dim == 0 {
                continue;
            }
            let m = self.component_matrix(ring, d);
            let ker = Subspace::from_spanning(field.clone(), dim, m.nullspace());
            per_degree.insert(d, ker);
        }
        SubmoduleFamily {
            ambient: self.source.clone(),
            per_degree,
        }
    }

    /// Column span as a graded submodule family of the target.
    pub fn image(&self, ring: &QuotientRing<K>) -> SubmoduleFamily<K> {
        let field = ring.field().clone();
        let mut per_degree = BTreeMap::new();
        for d in self.target.degree_range(ring) {
            let dim = self.target.dim_at(ring, d);
            if dim == 0 {
                continue;
            }
            let m = self.component_matrix(ring, d);
            let cols: Vec<Vec<K::Elem>> = (0..m.cols())
                .map(|j| (0..m.rows()).map(|i| m.get(i, j).clone()).collect())
                .collect();
            per_degree.insert(d, Subspace::from_spanning(field.clone(), dim, cols));
        }
        SubmoduleFamily {
            ambient: self.target.clone(),
            per_degree,
        }
    }
}

/// Per-degree subspaces of a free module, assumed closed under
/// multiplication by ring variables (a graded submodule).
#[derive(Clone, Debug)]
pub struct SubmoduleFamily<K: Field> {
    pub ambient: FreeModule,
    pub per_degree: BTreeMap<i64, Subspace<K>>,
}

impl<K: Field> SubmoduleFamily<K> {
    pub fn dim_at(&self, d: i64) -> usize {
        self.per_degree.get(&d).map(|s| s.dim()).unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.per_degree.values().map(|s| s.dim()).sum()
    }

    /// Convert a degree-d coordinate vector into a vector of ring elements
    /// (one per ambient generator).
    pub fn vector_to_elements(
        &self,
        ring: &QuotientRing<K>,
        d: i64,
        v: &[K::Elem],
    ) -> Vec<RingElement<K>> {
        let offsets = self.ambient.block_offsets(ring, d);
        self.ambient
            .shifts
            .iter()
            .enumerate()
            .map(|(k, s)| {
                let e = d - s;
                let dim = ring.dim_at(e);
                if dim == 0 {
                    return ring.zero_elem();
                }
                ring.elem_from_coords(e as u32, &v[offsets[k]..offsets[k] + dim])
            })
            .collect()
    }

    /// x_i * (degree d-1 subspace) summed over i, inside degree d; this is
    /// the degree-d part of the submodule generated below d.
    fn generated_from_below(&self, ring: &QuotientRing<K>, d: i64) -> Subspace<K> {
        let field = ring.field().clone();
        let dim = self.ambient.dim_at(ring, d);
        let mut out = Subspace::empty(field.clone(), dim);
        let Some(lower) = self.per_degree.get(&(d - 1)) else {
            return out;
        };
        let offsets_lo = self.ambient.block_offsets(ring, d - 1);
        let offsets_hi = self.ambient.block_offsets(ring, d);
        for v in lower.basis() {
            for i in 0..ring.nvars() {
                let xi = ring.var_elem(i);
                let mut w = vec![field.zero(); dim];
                for (k, s) in self.ambient.shifts.iter().enumerate() {
                    let e = d - 1 - s;
                    let ld = ring.dim_at(e);
                    if ld == 0 {
                        continue;
                    }
                    let part =
                        ring.elem_from_coords(e as u32, &v[offsets_lo[k]..offsets_lo[k] + ld]);
                    let prod = ring.mul(&xi, &part);
                    let coords = ring.coords_at(&prod, e + 1);
                    for (t, c) in coords.into_iter().enumerate() {
                        w[offsets_hi[k] + t] = c;
                    }
                }
                out.insert(w);
            }
        }
        out
    }

    /// Minimal generators modulo an optional second family (e.g. boundaries
    /// when extracting homology generators): per degree, a basis of
    /// self_d / (x * self_{d-1} + other_d), lowest degrees first, chosen by
    /// reduced-row-echelon pivots.
    pub fn minimal_generators_mod(
        &self,
        ring: &QuotientRing<K>,
        other: Option<&SubmoduleFamily<K>>,
    ) -> Vec<(i64, Vec<K::Elem>)> {
        let mut gens = Vec::new();
        for (&d, sub) in &self.per_degree {
            if sub.dim() == 0 {
                continue;
            }
            let mut seen = self.generated_from_below(ring, d);
            if let Some(o) = other {
                if let Some(os) = o.per_degree.get(&d) {
                    for v in os.basis() {
                        seen.insert(v.clone());
                    }
                }
            }
            for v in sub.basis() {
                if seen.insert(v.clone()) {
                    gens.push((d, v.clone()));
                }
            }
        }
        gens
    }

    pub fn minimal_generators(&self, ring: &QuotientRing<K>) -> Vec<(i64, Vec<K::Elem>)> {
        self.minimal_generators_mod(ring, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::monomial::MonomialOrder;
    use crate::poly::PolyRing;
    use crate::Field;

    fn truncated_line() -> QuotientRing<Rationals> {
        let r = PolyRing::new(Rationals, 1, MonomialOrder::Grevlex);
        QuotientRing::new(r.clone(), &[r.var(0).pow(3)]).unwrap()
    }

    #[test]
    fn component_matrix_of_multiplication() {
        // R = k[x]/(x^3); map R(-1) -> R given by x
        let ring = truncated_line();
        let x = ring.var_elem(0);
        let m = ElemMatrix::new(
            FreeModule::new(vec![1]),
            FreeModule::new(vec![0]),
            vec![x.clone()],
        );
        assert!(m.degrees_consistent());
        assert_eq!(m.component_matrix(&ring, 1).rank(), 1);
        assert_eq!(m.component_matrix(&ring, 3).rows(), 0);
        let ker = m.kernel(&ring);
        // kernel = x^2 * R(-1), concentrated in internal degree 3
        assert_eq!(ker.dim_at(3), 1);
        assert_eq!(ker.total_dim(), 1);
        let gens = ker.minimal_generators(&ring);
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].0, 3);
        let elems = ker.vector_to_elements(&ring, 3, &gens[0].1);
        let xx = ring.mul(&x, &x);
        assert_eq!(elems, vec![xx]);
    }

    #[test]
    fn compose_to_zero() {
        let ring = truncated_line();
        let x = ring.var_elem(0);
        let d1 = ElemMatrix::new(
            FreeModule::new(vec![1]),
            FreeModule::new(vec![0]),
            vec![x.clone()],
        );
        let d2 = ElemMatrix::new(
            FreeModule::new(vec![3]),
            FreeModule::new(vec![1]),
            vec![ring.mul(&x, &x)],
        );
        let prod = d1.compose(&ring, &d2);
        assert!(prod.is_zero());
    }

    #[test]
    fn image_family_matches_ideal() {
        let ring = truncated_line();
        let x = ring.var_elem(0);
        let m = ElemMatrix::new(FreeModule::new(vec![1]), FreeModule::new(vec![0]), vec![x]);
        let img = m.image(&ring);
        assert_eq!(img.dim_at(0), 0);
        assert_eq!(img.dim_at(1), 1);
        assert_eq!(img.dim_at(2), 1);
        assert_eq!(img.total_dim(), 2);
    }

    #[test]
    fn minimal_generators_use_nakayama() {
        // submodule (x) + (x^2) of R: a single generator in degree 1
        let ring = truncated_line();
        let x = ring.var_elem(0);
        let m = ElemMatrix::new(
            FreeModule::new(vec![1, 2]),
            FreeModule::new(vec![0]),
            vec![x.clone(), ring.mul(&x, &x)],
        );
        let img = m.image(&ring);
        let gens = img.minimal_generators(&ring);
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].0, 1);
        let f = Rationals;
        assert_eq!(gens[0].1, vec![f.one()]);
    }
}
