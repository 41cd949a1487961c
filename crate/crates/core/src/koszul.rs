//! Koszul complexes on element sequences over artinian graded rings:
//! homology with bidegree bookkeeping, grade, quasi-complete-intersection
//! certification, the two-generated exactness criterion, and exact
//! zero-divisor searches (enumerative and symbolic).

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Field, PrimeField};
use crate::graded::{ElemMatrix, FreeModule, SubmoduleFamily};
use crate::groebner::ideal_containment;
use crate::matrix::Subspace;
use crate::poly::{PolyRing, Polynomial};
use crate::quotient::{annihilator, QuotientRing, RingElement, RingIdeal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KoszulError {
    ZeroElementInSequence,
    NotMinimal {
        nu: usize,
        length: usize,
    },
    NotHomogeneous,
    NotInMaximalIdeal,
    DegreeMismatch,
    ZeroIdeal,
    WholeRing,
    /// The symbolic search needs a presentation by quadrics only.
    NotEquigeneratedQuadrics,
}

impl fmt::Display for KoszulError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KoszulError::ZeroElementInSequence => write!(f, "sequence contains zero"),
            KoszulError::NotMinimal { nu, length } => {
                write!(
                    f,
                    "sequence of length {length} generates an ideal with nu = {nu}"
                )
            }
            KoszulError::NotHomogeneous => write!(f, "homogeneous elements required"),
            KoszulError::NotInMaximalIdeal => write!(f, "elements must lie in the maximal ideal"),
            KoszulError::DegreeMismatch => write!(f, "inconsistent degrees in matrix data"),
            KoszulError::ZeroIdeal => write!(f, "the zero ideal is not allowed here"),
            KoszulError::WholeRing => write!(f, "the unit ideal is not allowed here"),
            KoszulError::NotEquigeneratedQuadrics => {
                write!(
                    f,
                    "symbolic search needs a presentation by quadrics of degree 2"
                )
            }
        }
    }
}

/// The Koszul complex E on a minimal homogeneous sequence f_1..f_n, with
/// exterior basis weighted by deg v_i = deg f_i so the differentials
/// preserve internal degree.
pub struct KoszulComplex<'r, K: Field> {
    ring: &'r QuotientRing<K>,
    seq: Vec<RingElement<K>>,
    subsets: Vec<Vec<Vec<usize>>>,
    modules: Vec<FreeModule>,
    /// boundaries[p-1] is the differential E_p -> E_{p-1}
    boundaries: Vec<ElemMatrix<K>>,
}

impl<'r, K: Field> KoszulComplex<'r, K> {
    pub fn new(ring: &'r QuotientRing<K>, seq: &[RingElement<K>]) -> Result<Self, KoszulError> {
        if seq.iter().any(|f| f.is_zero()) {
            return Err(KoszulError::ZeroElementInSequence);
        }
        if seq.iter().any(|f| !f.is_homogeneous()) {
            return Err(KoszulError::NotHomogeneous);
        }
        if seq.iter().any(|f| !f.in_maximal_ideal()) {
            return Err(KoszulError::NotInMaximalIdeal);
        }
        let ideal = RingIdeal::new(ring, seq).expect("homogeneous sequence");
        let nu = ideal.min_gens_count(ring);
        if nu != seq.len() {
            return Err(KoszulError::NotMinimal {
                nu,
                length: seq.len(),
            });
        }
        let n = seq.len();
        let weights: Vec<i64> = seq
            .iter()
            .map(|f| f.homogeneous_degree().unwrap() as i64)
            .collect();
        let mut subsets: Vec<Vec<Vec<usize>>> = Vec::with_capacity(n + 1);
        for p in 0..=n {
            subsets.push(subsets_of_size(n, p));
        }
        let modules: Vec<FreeModule> = subsets
            .iter()
            .map(|level| {
                FreeModule::new(
                    level
                        .iter()
                        .map(|s| s.iter().map(|&i| weights[i]).sum())
                        .collect(),
                )
            })
            .collect();
        let mut boundaries = Vec::with_capacity(n);
        for p in 1..=n {
            let src = &subsets[p];
            let tgt = &subsets[p - 1];
            let tindex: BTreeMap<&Vec<usize>, usize> =
                tgt.iter().enumerate().map(|(i, s)| (s, i)).collect();
            let mut entries = vec![ring.zero_elem(); src.len() * tgt.len()];
            for (c, s) in src.iter().enumerate() {
                for (pos, &i) in s.iter().enumerate() {
                    let rest: Vec<usize> = s.iter().copied().filter(|&j| j != i).collect();
                    let r = tindex[&rest];
                    let term = if pos % 2 == 0 {
                        seq[i].clone()
                    } else {
                        ring.neg(&seq[i])
                    };
                    entries[r * src.len() + c] = term;
                }
            }
            let m = ElemMatrix::new(modules[p].clone(), modules[p - 1].clone(), entries);
            debug_assert!(m.degrees_consistent());
            boundaries.push(m);
        }
        let complex = KoszulComplex {
            ring,
            seq: seq.to_vec(),
            subsets,
            modules,
            boundaries,
        };
        // d o d = 0 at every level
        for p in 2..=n {
            let sq = complex.boundaries[p - 2].compose(ring, &complex.boundaries[p - 1]);
            assert!(sq.is_zero(), "koszul differential does not square to zero");
        }
        Ok(complex)
    }

    pub fn length(&self) -> usize {
        self.seq.len()
    }

    pub fn sequence(&self) -> &[RingElement<K>] {
        &self.seq
    }

    pub fn ring(&self) -> &QuotientRing<K> {
        self.ring
    }

    pub fn module(&self, p: usize) -> &FreeModule {
        &self.modules[p]
    }

    pub fn boundary(&self, p: usize) -> Option<&ElemMatrix<K>> {
        if p == 0 || p > self.length() {
            None
        } else {
            Some(&self.boundaries[p - 1])
        }
    }

    fn cycles(&self, p: usize) -> SubmoduleFamily<K> {
        match self.boundary(p) {
            Some(d) => d.kernel(self.ring),
            None => {
                // p = 0: everything is a cycle
                let free = self.modules[p].clone();
                let field = self.ring.field().clone();
                let mut per_degree = BTreeMap::new();
                for d in free.degree_range(self.ring) {
                    let dim = free.dim_at(self.ring, d);
                    if dim > 0 {
                        per_degree.insert(d, Subspace::full(field.clone(), dim));
                    }
                }
                SubmoduleFamily {
                    ambient: free,
                    per_degree,
                }
            }
        }
    }

    fn boundaries_family(&self, p: usize) -> Option<SubmoduleFamily<K>> {
        self.boundary(p + 1).map(|d| d.image(self.ring))
    }

    pub fn homology_report(&self) -> HomologyReport<K> {
        let n = self.length();
        let mut levels = Vec::with_capacity(n + 1);
        let mut z1 = None;
        let mut b1 = None;
        for p in 0..=n {
            let z = self.cycles(p);
            let b = self.boundaries_family(p);
            let mut dims = BTreeMap::new();
            for d in self.modules[p].degree_range(self.ring) {
                let zc = z.dim_at(d);
                let bc = b.as_ref().map(|f| f.dim_at(d)).unwrap_or(0);
                if zc == 0 && bc == 0 {
                    continue;
                }
                dims.insert(
                    d,
                    HomologyDims {
                        cycles: zc,
                        boundaries: bc,
                        homology: zc - bc,
                    },
                );
            }
            if p == 1 {
                z1 = Some(z);
                b1 = b;
            }
            levels.push(dims);
        }
        let z1 = z1.expect("n >= 1");
        let h1_generators = z1
            .minimal_generators_mod(self.ring, b1.as_ref())
            .into_iter()
            .map(|(d, v)| (d, z1.vector_to_elements(self.ring, d, &v)))
            .collect();
        HomologyReport {
            levels,
            h1_generators,
        }
    }

    /// Coordinates of mu * (z_{T1} ^ ... ^ z_{Tp}) in the degree-d component
    /// of E_p, where each z is given by its coefficient vector on v_1..v_n.
    fn wedge_coords(
        &self,
        cycles: &[Vec<RingElement<K>>],
        chosen: &[usize],
        mu: &RingElement<K>,
        d: i64,
    ) -> Vec<K::Elem> {
        let ring = self.ring;
        let p = chosen.len();
        let free = &self.modules[p];
        let offsets = free.block_offsets(ring, d);
        let field = ring.field().clone();
        let mut out = vec![field.zero(); free.dim_at(ring, d)];
        for (si, s) in self.subsets[p].iter().enumerate() {
            // minor of the coefficient matrix: rows s, columns chosen
            let sub: Vec<Vec<RingElement<K>>> = s
                .iter()
                .map(|&i| chosen.iter().map(|&j| cycles[j][i].clone()).collect())
                .collect();
            let minor = ring.det(&sub);
            let val = ring.mul(&minor, mu);
            if val.is_zero() {
                continue;
            }
            let coords = ring.coords_at(&val, d - free.shifts[si]);
            for (t, c) in coords.into_iter().enumerate() {
                out[offsets[si] + t] = c;
            }
        }
        out
    }
}

fn subsets_of_size(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    rec(0, n, p, &mut cur, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyDims {
    pub cycles: usize,
    pub boundaries: usize,
    pub homology: usize,
}

/// Per-level, per-internal-degree dimensions of cycles, boundaries and
/// homology, plus chosen minimal generating cycles of H_1.
pub struct HomologyReport<K: Field> {
    /// levels[p] maps internal degree -> dims
    pub levels: Vec<BTreeMap<i64, HomologyDims>>,
    /// (internal degree, coefficients on v_1..v_n)
    pub h1_generators: Vec<(i64, Vec<RingElement<K>>)>,
}

impl<K: Field> HomologyReport<K> {
    pub fn total_cycles(&self, p: usize) -> usize {
        self.levels[p].values().map(|d| d.cycles).sum()
    }

    pub fn total_boundaries(&self, p: usize) -> usize {
        self.levels[p].values().map(|d| d.boundaries).sum()
    }

    pub fn total_homology(&self, p: usize) -> usize {
        self.levels[p].values().map(|d| d.homology).sum()
    }

    pub fn homology_at(&self, p: usize, d: i64) -> usize {
        self.levels[p].get(&d).map(|x| x.homology).unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.levels
            .iter()
            .enumerate()
            .map(|(p, dims)| {
                let h: i64 = dims.values().map(|x| x.homology as i64).sum();
                if p % 2 == 0 {
                    h
                } else {
                    -h
                }
            })
            .sum()
    }

    /// n - max{p : H_p != 0}; equals grade for a minimal sequence.
    pub fn grade(&self) -> usize {
        let n = self.levels.len() - 1;
        let top = (0..=n)
            .rev()
            .find(|&p| self.total_homology(p) > 0)
            .unwrap_or(0);
        n - top
    }
}

/// grade of an ideal = n - max{p : H_p(E) != 0} on a Koszul complex built
/// from a minimal generating sequence.
pub fn grade<K: Field>(ring: &QuotientRing<K>, ideal: &RingIdeal<K>) -> Result<usize, KoszulError> {
    if ideal.is_zero() {
        return Err(KoszulError::ZeroIdeal);
    }
    if ideal.is_whole_ring(ring) {
        return Err(KoszulError::WholeRing);
    }
    let gens = ideal.minimal_generators(ring);
    let complex = KoszulComplex::new(ring, &gens)?;
    Ok(complex.homology_report().grade())
}

/// Evidence of the annihilator dualities carried by a certificate.
#[derive(Clone, Debug)]
pub struct AnnDuality {
    pub ann_ideal_is_principal_delta: bool,
    pub ann_delta_is_ideal: bool,
    pub delta_in_mn: bool,
    pub delta_multiplication_kernel_is_ideal: bool,
    pub delta_multiplication_image_is_ann: bool,
}

impl AnnDuality {
    pub fn all_hold(&self) -> bool {
        self.ann_ideal_is_principal_delta
            && self.ann_delta_is_ideal
            && self.delta_in_mn
            && self.delta_multiplication_kernel_is_ideal
            && self.delta_multiplication_image_is_ann
    }
}

/// A quasi-complete-intersection certificate for a grade-zero ideal.
pub struct QciCertificate<K: Field> {
    pub n: usize,
    /// chosen cycles z_j as (internal degree, coefficients on v_1..v_n)
    pub cycles: Vec<(i64, Vec<RingElement<K>>)>,
    /// a[i][j] with z_j = sum_i a[i][j] v_i
    pub matrix_a: Vec<Vec<RingElement<K>>>,
    pub delta: RingElement<K>,
    pub grade: usize,
    pub s_hilbert: Vec<usize>,
    pub duality: AnnDuality,
    pub report: HomologyReport<K>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QciRefutation {
    /// nu(H_1) differs from nu(I) (impossible for grade-zero q.c.i.).
    H1MinGens {
        expected: usize,
        found: usize,
    },
    /// H_1 is not free over S: Hilbert mismatch at this internal degree.
    H1NotFree {
        degree: i64,
    },
    /// lambda_p fails to be bijective at this bidegree.
    Lambda {
        p: usize,
        degree: i64,
    },
    AnnihilatorDuality,
}

impl fmt::Display for QciRefutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QciRefutation::H1MinGens { expected, found } => {
                write!(f, "H_1 needs {found} generators, expected {expected}")
            }
            QciRefutation::H1NotFree { degree } => {
                write!(f, "H_1 is not free over R/I (mismatch in degree {degree})")
            }
            QciRefutation::Lambda { p, degree } => {
                write!(f, "lambda_{p} is not bijective in degree {degree}")
            }
            QciRefutation::AnnihilatorDuality => write!(f, "annihilator duality fails"),
        }
    }
}

pub enum QciOutcome<K: Field> {
    Certificate(Box<QciCertificate<K>>),
    Refuted(QciRefutation),
}

impl<K: Field> QciOutcome<K> {
    pub fn certificate(&self) -> Option<&QciCertificate<K>> {
        match self {
            QciOutcome::Certificate(c) => Some(c),
            QciOutcome::Refuted(_) => None,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, QciOutcome::Certificate(_))
    }
}

/// Decide whether the ideal generated by a minimal homogeneous sequence is a
/// quasi-complete intersection, for artinian (grade-zero) rings.
///
/// The certificate verifies: H_1 minimally generated by n cycles, H_1 free
/// over S = R/I by degree-wise Hilbert comparison against the surjection
/// S^n -> H_1, and each lambda_p bijective by degree-wise rank. On success
/// it also carries Delta = det(A) and the annihilator dualities.
pub fn qci_check<K: Field>(
    ring: &QuotientRing<K>,
    seq: &[RingElement<K>],
) -> Result<QciOutcome<K>, KoszulError> {
    let complex = KoszulComplex::new(ring, seq)?;
    let n = complex.length();
    let report = complex.homology_report();
    let ideal = RingIdeal::new(ring, seq).expect("homogeneous");
    let s_hilbert = ring.quotient_hilbert(&ideal);
    let s_dim = |e: i64| -> usize {
        if e < 0 || e >= s_hilbert.len() as i64 {
            0
        } else {
            s_hilbert[e as usize]
        }
    };

    if report.h1_generators.len() != n {
        return Ok(QciOutcome::Refuted(QciRefutation::H1MinGens {
            expected: n,
            found: report.h1_generators.len(),
        }));
    }
    let cycle_degrees: Vec<i64> = report.h1_generators.iter().map(|(d, _)| *d).collect();

    // freeness of H_1: dim H_1,d must match a free S-module on the cycles
    for d in complex.module(1).degree_range(ring) {
        let expected: usize = cycle_degrees.iter().map(|&cd| s_dim(d - cd)).sum();
        if report.homology_at(1, d) != expected {
            return Ok(QciOutcome::Refuted(QciRefutation::H1NotFree { degree: d }));
        }
    }

    // lambda_p bijectivity, degree by degree, via wedges of the cycles
    let cycles: Vec<Vec<RingElement<K>>> = report
        .h1_generators
        .iter()
        .map(|(_, v)| v.clone())
        .collect();
    let field = ring.field().clone();
    for p in 2..=n {
        let choices = subsets_of_size(n, p);
        let boundaries = complex.boundaries_family(p);
        for d in complex.module(p).degree_range(ring) {
            let h_dim = report.homology_at(p, d);
            let domain_dim: usize = choices
                .iter()
                .map(|t| {
                    let shift: i64 = t.iter().map(|&j| cycle_degrees[j]).sum();
                    s_dim(d - shift)
                })
                .sum();
            if domain_dim != h_dim {
                return Ok(QciOutcome::Refuted(QciRefutation::Lambda { p, degree: d }));
            }
            if h_dim == 0 {
                continue;
            }
            // rank of the images modulo boundaries
            let dim = complex.module(p).dim_at(ring, d);
            let mut span = Subspace::empty(field.clone(), dim);
            if let Some(b) = &boundaries {
                if let Some(sub) = b.per_degree.get(&d) {
                    for v in sub.basis() {
                        span.insert(v.clone());
                    }
                }
            }
            let b_dim = span.dim();
            for t in &choices {
                let shift: i64 = t.iter().map(|&j| cycle_degrees[j]).sum();
                let e = d - shift;
                if e < 0 || ring.dim_at(e) == 0 {
                    continue;
                }
                for mono in ring.basis_at(e as u32) {
                    let mu = ring.element(&ring.ambient().monomial_term(mono.clone(), field.one()));
                    let w = complex.wedge_coords(&cycles, t, &mu, d);
                    span.insert(w);
                }
            }
            let rank = span.dim() - b_dim;
            if rank != h_dim {
                return Ok(QciOutcome::Refuted(QciRefutation::Lambda { p, degree: d }));
            }
        }
    }

    // matrix A and Delta
    let mut matrix_a: Vec<Vec<RingElement<K>>> = vec![vec![ring.zero_elem(); n]; n];
    for (j, (_, coeffs)) in report.h1_generators.iter().enumerate() {
        for (i, a) in coeffs.iter().enumerate() {
            assert!(a.in_maximal_ideal(), "syzygy coefficients must lie in m");
            matrix_a[i][j] = a.clone();
        }
    }
    let delta = ring.det(&matrix_a);

    // annihilator dualities (Delta generates (0:I), and (0:Delta) = I)
    let ann_i = RingIdeal::zero(ring).colon(ring, &ideal);
    let duality = if delta.is_zero() {
        AnnDuality {
            ann_ideal_is_principal_delta: false,
            ann_delta_is_ideal: false,
            delta_in_mn: true,
            delta_multiplication_kernel_is_ideal: false,
            delta_multiplication_image_is_ann: false,
        }
    } else {
        let principal_delta =
            RingIdeal::new(ring, core::slice::from_ref(&delta)).expect("homogeneous");
        let ann_delta = annihilator(ring, &delta);
        AnnDuality {
            ann_ideal_is_principal_delta: ann_i.equals(&principal_delta),
            ann_delta_is_ideal: ann_delta.equals(&ideal),
            delta_in_mn: delta
                .poly()
                .terms()
                .iter()
                .all(|(m, _)| m.degree() as usize >= n),
            // multiplication by Delta: kernel = I and image = (0:I)
            delta_multiplication_kernel_is_ideal: ann_delta.equals(&ideal),
            delta_multiplication_image_is_ann: principal_delta.equals(&ann_i),
        }
    };
    if !duality.all_hold() {
        return Ok(QciOutcome::Refuted(QciRefutation::AnnihilatorDuality));
    }

    Ok(QciOutcome::Certificate(Box::new(QciCertificate {
        n,
        cycles: report.h1_generators.clone(),
        matrix_a,
        delta,
        grade: report.grade(),
        s_hilbert,
        duality,
        report,
    })))
}

/// The two-generated grade-zero criterion: elements a, b, c, d in m make
/// the six-term complex
/// R^4 -> R^3 -> R^2 -> R -> R -> R^2 exact, with d_0 = [ad-bc],
/// d_1 = [f1 f2], d_2 = [[-f2, a, b], [f1, c, d]] and the printed d_3.
/// Returns true exactly when the complex is exact at the four interior spots.
pub fn two_generated_criterion<K: Field>(
    ring: &QuotientRing<K>,
    f1: &RingElement<K>,
    f2: &RingElement<K>,
    a: &RingElement<K>,
    b: &RingElement<K>,
    c: &RingElement<K>,
    d: &RingElement<K>,
) -> Result<bool, KoszulError> {
    for f in [f1, f2] {
        if f.is_zero() {
            return Err(KoszulError::ZeroElementInSequence);
        }
    }
    for e in [f1, f2, a, b, c, d] {
        if !e.is_homogeneous() {
            return Err(KoszulError::NotHomogeneous);
        }
        if !e.in_maximal_ideal() {
            return Err(KoszulError::NotInMaximalIdeal);
        }
    }
    let e1 = f1.homogeneous_degree().unwrap() as i64;
    let e2 = f2.homogeneous_degree().unwrap() as i64;
    if e1 != e2 {
        return Err(KoszulError::DegreeMismatch);
    }
    let e = e1;
    let deg_or =
        |x: &RingElement<K>, y: &RingElement<K>, default: i64| -> Result<i64, KoszulError> {
            let dx = x.homogeneous_degree().map(|v| v as i64);
            let dy = y.homogeneous_degree().map(|v| v as i64);
            match (dx, dy) {
                (Some(u), Some(v)) if u != v => Err(KoszulError::DegreeMismatch),
                (Some(u), _) => Ok(u),
                (_, Some(v)) => Ok(v),
                (None, None) => Ok(default),
            }
        };
    // columns (a, c) and (b, d) must be homogeneous of one degree each
    let alpha = deg_or(a, c, 1)?;
    let beta = deg_or(b, d, 1)?;

    let g0 = FreeModule::new(vec![0]);
    let g1 = FreeModule::new(vec![e, e]);
    let g2 = FreeModule::new(vec![2 * e, e + alpha, e + beta]);
    let g3 = FreeModule::new(vec![
        2 * e + alpha,
        2 * e + beta,
        2 * e + alpha,
        2 * e + beta,
    ]);
    let h0 = FreeModule::new(vec![-(alpha + beta)]);
    let h1 = FreeModule::new(vec![-(alpha + beta) - e, -(alpha + beta) - e]);

    let delta = ring.sub(&ring.mul(a, d), &ring.mul(b, c));
    let d0 = ElemMatrix::new(g0.clone(), h0.clone(), vec![delta]);
    let d1 = ElemMatrix::new(g1.clone(), g0.clone(), vec![f1.clone(), f2.clone()]);
    let d1t = ElemMatrix::new(h0.clone(), h1.clone(), vec![f1.clone(), f2.clone()]);
    let d2 = ElemMatrix::new(
        g2.clone(),
        g1.clone(),
        vec![
            ring.neg(f2),
            a.clone(),
            b.clone(),
            f1.clone(),
            c.clone(),
            d.clone(),
        ],
    );
    let d3 = ElemMatrix::new(
        g3.clone(),
        g2.clone(),
        vec![
            ring.neg(c),
            ring.neg(d),
            a.clone(),
            b.clone(),
            f1.clone(),
            ring.zero_elem(),
            f2.clone(),
            ring.zero_elem(),
            ring.zero_elem(),
            f1.clone(),
            ring.zero_elem(),
            f2.clone(),
        ],
    );
    for m in [&d0, &d1, &d1t, &d2, &d3] {
        if !m.degrees_consistent() {
            return Err(KoszulError::DegreeMismatch);
        }
    }

    // must be a complex at all; otherwise the witness fails outright
    if !d1.compose(ring, &d2).is_zero()
        || !d2.compose(ring, &d3).is_zero()
        || !d0.compose(ring, &d1).is_zero()
        || !d1t.compose(ring, &d0).is_zero()
    {
        return Ok(false);
    }

    // exactness at the four interior spots by degree-wise rank counts
    let spots: [(&ElemMatrix<K>, &ElemMatrix<K>, &FreeModule); 4] = [
        (&d3, &d2, &g2),
        (&d2, &d1, &g1),
        (&d1, &d0, &g0),
        (&d0, &d1t, &h0),
    ];
    for (incoming, outgoing, middle) in spots {
        for deg in middle.degree_range(ring) {
            let dim = middle.dim_at(ring, deg);
            if dim == 0 {
                continue;
            }
            let rank_in = incoming.component_matrix(ring, deg).rank();
            let rank_out = outgoing.component_matrix(ring, deg).rank();
            if rank_in + rank_out != dim {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A verified exact pair found by enumeration.
pub struct ExactPair<K: Field> {
    pub x: RingElement<K>,
    pub y: RingElement<K>,
}

/// Result of an enumerative exact-zero-divisor search.
pub struct EzdEnumeration<K: Field> {
    pub pairs: Vec<ExactPair<K>>,
    pub candidates_tested: u64,
}

/// Test all projective representatives of homogeneous candidates of degree
/// 1..=max_degree (inside the given ideal when provided) with the
/// exact-zero-divisor predicate. Finite fields only.
pub fn ezd_search_enumerate(
    ring: &QuotientRing<PrimeField>,
    inside: Option<&RingIdeal<PrimeField>>,
    max_degree: u32,
) -> EzdEnumeration<PrimeField> {
    let p = ring.field().modulus();
    let mut pairs = Vec::new();
    let mut tested = 0u64;
    for d in 1..=max_degree.min(ring.top_degree()) {
        // coordinate basis of the candidate space at degree d
        let basis: Vec<RingElement<PrimeField>> = match inside {
            Some(ideal) => ideal
                .subspace_at(d)
                .map(|s| {
                    s.basis()
                        .iter()
                        .map(|v| ring.elem_from_coords(d, v))
                        .collect()
                })
                .unwrap_or_default(),
            None => ring
                .basis_at(d)
                .iter()
                .map(|m| ring.element(&ring.ambient().monomial_term(m.clone(), 1)))
                .collect(),
        };
        let k = basis.len();
        if k == 0 {
            continue;
        }
        let mut coords = vec![0u64; k];
        for lead in 0..k {
            // representatives: zeros before `lead`, one at `lead`, then free
            coords.fill(0);
            coords[lead] = 1;
            loop {
                let mut x = ring.zero_elem();
                for (t, &ct) in coords.iter().enumerate() {
                    if ct != 0 {
                        x = ring.add(&x, &ring.scale(&basis[t], &ct));
                    }
                }
                tested += 1;
                if let Ok(Some(y)) = crate::quotient::is_exact_zero_divisor(ring, &x) {
                    pairs.push(ExactPair { x, y });
                }
                // odometer over the free positions after `lead`
                let mut t = k;
                loop {
                    if t == lead + 1 {
                        break;
                    }
                    t -= 1;
                    coords[t] += 1;
                    if coords[t] < p {
                        break;
                    }
                    coords[t] = 0;
                }
                if (lead + 1..k).all(|i| coords[i] == 0) {
                    break;
                }
            }
        }
    }
    EzdEnumeration {
        pairs,
        candidates_tested: tested,
    }
}

/// The symbolic factorization obstruction for a ring presented by quadrics:
/// a bilinear system in parameters (a_1..a_s, c_1..c_n) whose nontrivial
/// solutions are exactly the products F*G of a linear form F from the given
/// span and a linear form G that land inside the presentation ideal. When
/// some power of ((a)(c)) is contained in the system ideal, no such product
/// exists over any extension field, and the ring (or the ideal the span
/// generates) has no exact zero-divisors.
pub struct FactorObstruction<K: Field> {
    /// ring k[a_1..a_s, c_1..c_n]
    pub parameter_ring: PolyRing<K>,
    pub system: Vec<Polynomial<K>>,
    /// least power e in 1..=3 with ((a)(c))^e inside the system ideal
    pub certified_power: Option<u32>,
}

impl<K: Field> FactorObstruction<K> {
    pub fn certified_none_exist(&self) -> bool {
        self.certified_power.is_some()
    }
}

/// Build the factorization-obstruction system. `span` gives ambient linear
/// forms spanning the allowed F side (e.g. lifts of an ideal's linear
/// generators); None means all of R_1.
pub fn ezd_factor_obstruction<K: Field>(
    ring: &QuotientRing<K>,
    span: Option<&[Polynomial<K>]>,
) -> Result<FactorObstruction<K>, KoszulError> {
    if ring
        .presentation()
        .iter()
        .any(|g| g.homogeneous_degree() != Some(2))
    {
        return Err(KoszulError::NotEquigeneratedQuadrics);
    }
    let n = ring.nvars();
    let ambient = ring.ambient();
    let default_span: Vec<Polynomial<K>>;
    let lifts: &[Polynomial<K>] = match span {
        Some(l) => {
            if l.iter().any(|f| f.homogeneous_degree() != Some(1)) {
                return Err(KoszulError::NotHomogeneous);
            }
            l
        }
        None => {
            default_span = (0..n).map(|i| ambient.var(i)).collect();
            &default_span
        }
    };
    let s = lifts.len();
    let field = ring.field().clone();
    let params = PolyRing::new(field.clone(), s + n, ambient.order);
    let r2 = ring.dim_at(2);
    // expressions: coordinates of NF(L_i * x_j) over the degree-2 basis,
    // assembled into bilinear forms in a_i c_j
    let mut exprs: Vec<Polynomial<K>> = vec![params.zero(); r2];
    for (i, lift) in lifts.iter().enumerate() {
        for j in 0..n {
            let prod = ring.element(&lift.try_mul(&ambient.var(j)).expect("same ring"));
            let coords = ring.coords_at(&prod, 2);
            let aicj = params
                .var(i)
                .try_mul(&params.var(s + j))
                .expect("same ring");
            for (t, coef) in coords.into_iter().enumerate() {
                exprs[t] = exprs[t].try_add(&aicj.scale(&coef)).expect("same ring");
            }
        }
    }
    exprs.retain(|e| !e.is_zero());

    // products a_i * c_j generate ((a)(c)); try small powers
    let prods: Vec<Polynomial<K>> = (0..s)
        .flat_map(|i| {
            let params = &params;
            (0..n).map(move |j| {
                params
                    .var(i)
                    .try_mul(&params.var(s + j))
                    .expect("same ring")
            })
        })
        .collect();
    let mut certified_power = None;
    let mut power_gens = prods.clone();
    for e in 1..=3u32 {
        if ideal_containment(&power_gens, &exprs, &params) {
            certified_power = Some(e);
            break;
        }
        if e < 3 {
            let mut next = Vec::new();
            for g in &power_gens {
                for q in &prods {
                    let prod = g.try_mul(q).expect("same ring");
                    if !next.contains(&prod) {
                        next.push(prod);
                    }
                }
            }
            power_gens = next;
        }
    }
    Ok(FactorObstruction {
        parameter_ring: params,
        system: exprs,
        certified_power,
    })
}

/// Render the certificate as a structured text report.
pub fn render_certificate<K: Field>(cert: &QciCertificate<K>) -> String {
    let mut out = String::new();
    out.push_str(&alloc::format!("n = {}\n", cert.n));
    out.push_str("A =\n");
    for row in &cert.matrix_a {
        let cells: Vec<String> = row.iter().map(|e| alloc::format!("{e}")).collect();
        out.push_str(&alloc::format!("  [{}]\n", cells.join(", ")));
    }
    out.push_str(&alloc::format!("Delta = {}\n", cert.delta));
    out.push_str(&alloc::format!("grade = {}\n", cert.grade));
    out.push_str(&alloc::format!(
        "S Hilbert = {}\n",
        crate::quotient::hilbert_string(&cert.s_hilbert)
    ));
    for p in 0..cert.report.levels.len() {
        out.push_str(&alloc::format!(
            "H_{p}: total {} (cycles {}, boundaries {})\n",
            cert.report.total_homology(p),
            cert.report.total_cycles(p),
            cert.report.total_boundaries(p)
        ));
    }
    out.push_str(&alloc::format!(
        "(0:I) = (Delta): {}\n(0:Delta) = I: {}\nDelta in m^n: {}\n",
        cert.duality.ann_ideal_is_principal_delta,
        cert.duality.ann_delta_is_ideal,
        cert.duality.delta_in_mn
    ));
    out
}
