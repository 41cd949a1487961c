//! The quadratic dual A^! = T(V*)/(R^perp) of a commutative quadratic
//! algebra A = T(V)/(R), truncated to degree 3, with multiplication tensors
//! and the degree-2 graded commutant (the computational stand-in for the
//! degree-2 center of the homotopy Lie algebra).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::Field;
use crate::matrix::{Matrix, Subspace};
use crate::quotient::QuotientRing;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualError {
    NotQuadraticPresentation,
    EvenCharacteristic,
    /// The commutant computation is only trusted for char 0 or p > 3.
    SmallCharacteristic,
}

impl fmt::Display for DualError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualError::NotQuadraticPresentation => {
                write!(f, "presentation must consist of quadrics")
            }
            DualError::EvenCharacteristic => write!(f, "characteristic 2 is unsupported"),
            DualError::SmallCharacteristic => {
                write!(f, "characteristic must be 0 or greater than 3")
            }
        }
    }
}

/// Degree <= 3 part of the quadratic dual, with graded components held as
/// quotients of tensor powers by canonical reduced subspaces.
pub struct QuadraticDual<K: Field> {
    field: K,
    n: usize,
    /// R^perp inside V* tensor V*
    rel2: Subspace<K>,
    /// R^perp tensor V* + V* tensor R^perp inside V*^(tensor 3)
    rel3: Subspace<K>,
    nonpivot2: Vec<usize>,
    nonpivot3: Vec<usize>,
    /// [i*n + j] -> class of t_i t_j in A!_2
    mul11: Vec<Vec<K::Elem>>,
    /// [i*dim2 + u] -> class of t_i * (basis u) in A!_3
    mul12: Vec<Vec<K::Elem>>,
    /// [u*n + i] -> class of (basis u) * t_i in A!_3
    mul21: Vec<Vec<K::Elem>>,
}

impl<K: Field> QuadraticDual<K> {
    /// Build the dual from a ring presented by quadrics. The relation space
    /// R is spanned by the commutators and symmetric lifts of the quadrics.
    pub fn new(ring: &QuotientRing<K>) -> Result<Self, DualError> {
        Self::from_presentation(ring.field().clone(), ring.nvars(), ring.presentation())
    }

    /// Build the dual of any commutative quadratic presentation (the ring
    /// need not be artinian; an empty relation list gives the dual of the
    /// polynomial ring, i.e. the exterior algebra).
    pub fn from_presentation(
        field: K,
        n: usize,
        quadrics: &[crate::poly::Polynomial<K>],
    ) -> Result<Self, DualError> {
        if field.characteristic() == 2 {
            return Err(DualError::EvenCharacteristic);
        }
        if quadrics.iter().any(|g| g.homogeneous_degree() != Some(2)) {
            return Err(DualError::NotQuadraticPresentation);
        }
        let nn = n * n;

        // relation space of A inside V tensor V
        let mut relations = Subspace::empty(field.clone(), nn);
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![field.zero(); nn];
                v[i * n + j] = field.one();
                v[j * n + i] = field.neg(&field.one());
                relations.insert(v);
            }
        }
        for g in quadrics {
            let mut v = vec![field.zero(); nn];
            for (m, c) in g.terms() {
                let vars: Vec<usize> = (0..n).filter(|&i| m.exp(i) > 0).collect();
                match vars.as_slice() {
                    [i] => v[i * n + i] = field.add(&v[i * n + i], c),
                    [i, j] => v[i * n + j] = field.add(&v[i * n + j], c),
                    _ => unreachable!("quadric monomials involve at most two variables"),
                }
            }
            relations.insert(v);
        }

        // R^perp: nullspace of the relation matrix
        let rel_matrix = Matrix::from_rows(field.clone(), nn, relations.basis().to_vec());
        let rperp_basis = rel_matrix.nullspace();
        let rel2 = Subspace::from_spanning(field.clone(), nn, rperp_basis.clone());

        // degree-3 relations: R^perp tensor V* + V* tensor R^perp
        let nnn = nn * n;
        let mut rel3 = Subspace::empty(field.clone(), nnn);
        for r in &rperp_basis {
            for k in 0..n {
                let mut right = vec![field.zero(); nnn];
                let mut left = vec![field.zero(); nnn];
                for (ij, c) in r.iter().enumerate() {
                    if !field.is_zero(c) {
                        right[ij * n + k] = c.clone();
                        left[k * nn + ij] = c.clone();
                    }
                }
                rel3.insert(right);
                rel3.insert(left);
            }
        }

        let nonpivot2 = complement_positions(nn, rel2.pivots());
        let nonpivot3 = complement_positions(nnn, rel3.pivots());

        let mut dual = QuadraticDual {
            field,
            n,
            rel2,
            rel3,
            nonpivot2,
            nonpivot3,
            mul11: Vec::new(),
            mul12: Vec::new(),
            mul21: Vec::new(),
        };
        dual.build_multiplication();
        Ok(dual)
    }

    fn build_multiplication(&mut self) {
        let n = self.n;
        let nn = n * n;
        let f = self.field.clone();
        for i in 0..n {
            for j in 0..n {
                let mut v = vec![f.zero(); nn];
                v[i * n + j] = f.one();
                self.mul11.push(self.project2(v));
            }
        }
        let dim2 = self.dim(2);
        for i in 0..n {
            for u in 0..dim2 {
                let lift = self.lift2(u);
                let mut w = vec![f.zero(); nn * n];
                for (ij, c) in lift.iter().enumerate() {
                    if !f.is_zero(c) {
                        w[i * nn + ij] = c.clone();
                    }
                }
                self.mul12.push(self.project3(w));
            }
        }
        for u in 0..dim2 {
            let lift = self.lift2(u);
            for i in 0..n {
                let mut w = vec![f.zero(); nn * n];
                for (ij, c) in lift.iter().enumerate() {
                    if !f.is_zero(c) {
                        w[ij * n + i] = c.clone();
                    }
                }
                self.mul21.push(self.project3(w));
            }
        }
    }

    pub fn dims(&self) -> [usize; 4] {
        [1, self.n, self.dim(2), self.dim(3)]
    }

    pub fn dim(&self, component: usize) -> usize {
        match component {
            0 => 1,
            1 => self.n,
            2 => self.n * self.n - self.rel2.dim(),
            3 => self.n * self.n * self.n - self.rel3.dim(),
            _ => 0,
        }
    }

    /// Class coordinates of a raw tensor in A!_2.
    pub fn project2(&self, v: Vec<K::Elem>) -> Vec<K::Elem> {
        let r = self.rel2.reduce(v);
        self.nonpivot2.iter().map(|&p| r[p].clone()).collect()
    }

    /// Class coordinates of a raw tensor in A!_3.
    pub fn project3(&self, v: Vec<K::Elem>) -> Vec<K::Elem> {
        let r = self.rel3.reduce(v);
        self.nonpivot3.iter().map(|&p| r[p].clone()).collect()
    }

    /// The canonical lift of an A!_2 basis class back into V* tensor V*.
    fn lift2(&self, u: usize) -> Vec<K::Elem> {
        let mut v = vec![self.field.zero(); self.n * self.n];
        v[self.nonpivot2[u]] = self.field.one();
        v
    }

    /// Product t_i * t_j in A!_2 coordinates.
    pub fn mul_generators(&self, i: usize, j: usize) -> &[K::Elem] {
        &self.mul11[i * self.n + j]
    }

    /// Product t_i * z for z in A!_2 coordinates.
    pub fn mul_left(&self, i: usize, z: &[K::Elem]) -> Vec<K::Elem> {
        let f = &self.field;
        let dim2 = self.dim(2);
        let dim3 = self.dim(3);
        let mut out = vec![f.zero(); dim3];
        for (u, c) in z.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let img = &self.mul12[i * dim2 + u];
            for t in 0..dim3 {
                out[t] = f.add(&out[t], &f.mul(c, &img[t]));
            }
        }
        out
    }

    /// Product z * t_i for z in A!_2 coordinates.
    pub fn mul_right(&self, z: &[K::Elem], i: usize) -> Vec<K::Elem> {
        let f = &self.field;
        let dim3 = self.dim(3);
        let mut out = vec![f.zero(); dim3];
        for (u, c) in z.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let img = &self.mul21[u * self.n + i];
            for t in 0..dim3 {
                out[t] = f.add(&out[t], &f.mul(c, &img[t]));
            }
        }
        out
    }

    /// Associativity of the stored tensors on all triples of generators.
    pub fn associativity_holds(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    let jk = self.mul_generators(j, k).to_vec();
                    let a = self.mul_left(i, &jk);
                    let ij = self.mul_generators(i, j).to_vec();
                    let b = self.mul_right(&ij, k);
                    if a != b {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Basis of {z in A!_2 : z t - t z = 0 in A!_3 for all t in A!_1}.
    /// Requires characteristic 0 or > 3.
    pub fn degree2_commutant(&self) -> Result<Vec<Vec<K::Elem>>, DualError> {
        let p = self.field.characteristic();
        if p == 2 {
            return Err(DualError::EvenCharacteristic);
        }
        if p == 3 {
            return Err(DualError::SmallCharacteristic);
        }
        let f = self.field.clone();
        let dim2 = self.dim(2);
        let dim3 = self.dim(3);
        let mut rows: Vec<Vec<K::Elem>> = Vec::new();
        for i in 0..self.n {
            // columns are basis vectors of A!_2; rows are A!_3 coordinates
            let mut cols: Vec<Vec<K::Elem>> = Vec::with_capacity(dim2);
            for u in 0..dim2 {
                let mut z = vec![f.zero(); dim2];
                z[u] = f.one();
                let lhs = self.mul_right(&z, i);
                let rhs = self.mul_left(i, &z);
                cols.push(lhs.iter().zip(&rhs).map(|(a, b)| f.sub(a, b)).collect());
            }
            for t in 0..dim3 {
                let row: Vec<K::Elem> = cols.iter().map(|c| c[t].clone()).collect();
                if row.iter().any(|c| !f.is_zero(c)) {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return Ok(Subspace::full(f, dim2).basis().to_vec());
        }
        let m = Matrix::from_rows(f.clone(), dim2, rows);
        Ok(m.nullspace())
    }

    /// Class of t_i^2 in A!_2.
    pub fn generator_square_class(&self, i: usize) -> Vec<K::Elem> {
        self.mul_generators(i, i).to_vec()
    }

    /// Does the class lie inside the span of the given A!_2 vectors?
    pub fn in_span(&self, vectors: &[Vec<K::Elem>], class: &[K::Elem]) -> bool {
        let sub = Subspace::from_spanning(self.field.clone(), self.dim(2), vectors.to_vec());
        sub.contains(class)
    }
}

fn complement_positions(ambient: usize, pivots: &[usize]) -> Vec<usize> {
    (0..ambient).filter(|i| !pivots.contains(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_polynomial;
    use crate::poly::PolyRing;
    use alloc::format;
    use alloc::string::String;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("x{i}")).collect()
    }

    fn b101() -> QuotientRing<PrimeField> {
        let ring = PolyRing::new(PrimeField::new(101).unwrap(), 5, MonomialOrder::Grevlex);
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

    #[test]
    fn dual_dimensions_of_the_example() {
        let b = b101();
        let dual = QuadraticDual::new(&b).unwrap();
        assert_eq!(dual.dims(), [1, 5, 18, 58]);
        assert!(dual.associativity_holds());
        // duality of dimensions: dim A!_2 = n^2 - dim A_2
        assert_eq!(dual.dim(2), 25 - b.dim_at(2));
    }

    #[test]
    fn commutant_of_the_example_is_one_dimensional() {
        let b = b101();
        let dual = QuadraticDual::new(&b).unwrap();
        let center = dual.degree2_commutant().unwrap();
        assert_eq!(center.len(), 1);
        // the square of the first dual generator spans it
        let sq = dual.generator_square_class(0);
        assert!(dual.in_span(&center, &sq));
        assert!(sq.iter().any(|c| *c != 0));
    }

    #[test]
    fn dual_of_hypersurface_is_polynomial_line() {
        let r1 = PolyRing::new(Rationals, 1, MonomialOrder::Grevlex);
        let ring = QuotientRing::new(r1.clone(), &[r1.var(0).pow(2)]).unwrap();
        let dual = QuadraticDual::new(&ring).unwrap();
        assert_eq!(dual.dims(), [1, 1, 1, 1]);
        let center = dual.degree2_commutant().unwrap();
        assert_eq!(center.len(), 1);
    }

    #[test]
    fn dual_of_ci_has_center_of_rank_two() {
        let r2 = PolyRing::new(Rationals, 2, MonomialOrder::Grevlex);
        let ci = QuotientRing::new(r2.clone(), &[r2.var(0).pow(2), r2.var(1).pow(2)]).unwrap();
        let dual = QuadraticDual::new(&ci).unwrap();
        // dual components grow like the Poincare series of the CI
        assert_eq!(dual.dims(), [1, 2, 3, 4]);
        // brute-force oracle: z = a s^2 + b t^2 + c st commutes with s and t
        // iff c = 0, so the commutant has rank 2 (= number of relations)
        let center = dual.degree2_commutant().unwrap();
        assert_eq!(center.len(), 2);
        assert!(dual.associativity_holds());
        for i in 0..2 {
            assert!(dual.in_span(&center, &dual.generator_square_class(i)));
        }
    }

    #[test]
    fn polynomial_ring_dual_is_exterior() {
        // k[x1,x2] with no quadric relations: the dual is the exterior
        // algebra on two generators, dims (2, 1, 0) in degrees 1..3
        let dual = QuadraticDual::from_presentation(Rationals, 2, &[]).unwrap();
        assert_eq!(dual.dims(), [1, 2, 1, 0]);
        assert!(dual.associativity_holds());
    }

    #[test]
    fn square_zero_algebra_dual_is_tensor_algebra() {
        let r2: PolyRing<Rationals> = PolyRing::new(Rationals, 2, MonomialOrder::Grevlex);
        let gens = alloc::vec![
            r2.var(0).pow(2),
            r2.var(0).try_mul(&r2.var(1)).unwrap(),
            r2.var(1).pow(2)
        ];
        let ring = QuotientRing::new(r2, &gens).unwrap();
        let dual = QuadraticDual::new(&ring).unwrap();
        assert_eq!(dual.dims(), [1, 2, 4, 8]);
    }

    #[test]
    fn rejects_non_quadratic_presentations() {
        let r1 = PolyRing::new(Rationals, 1, MonomialOrder::Grevlex);
        let ring = QuotientRing::new(r1.clone(), &[r1.var(0).pow(3)]).unwrap();
        let err = QuadraticDual::new(&ring)
            .err()
            .expect("cubic relation must be rejected");
        assert_eq!(err, DualError::NotQuadraticPresentation);
    }

    #[test]
    fn hilbert_duality_against_the_ring() {
        use crate::series::PowerSeries;
        let b = b101();
        let dual = QuadraticDual::new(&b).unwrap();
        let h = PowerSeries::from_dims(&b.hilbert_series(), 4);
        let hd = PowerSeries::from_dims(&[dual.dim(0), dual.dim(1), dual.dim(2), dual.dim(3)], 4);
        let prod = h.alternate().mul(&hd);
        assert_eq!(prod, PowerSeries::one(4));
    }
}
