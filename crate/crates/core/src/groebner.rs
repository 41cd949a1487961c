//! Buchberger's algorithm with the classical pair-skipping criteria, normal
//! forms, standard monomials, membership and containment tests, and the
//! irrelevant-primary (finite staircase) decision.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::field::Field;
use crate::matrix::Subspace;
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};

/// A reduced Groebner basis: generators are monic, no term of any generator
/// is divisible by another generator's leading monomial, and the list is
/// sorted descending by leading monomial. This representation is canonical
/// for the ideal and the order.
#[derive(Clone, PartialEq, Debug)]
pub struct GroebnerBasis<K: Field> {
    ring: PolyRing<K>,
    gens: Vec<Polynomial<K>>,
    staircase: Vec<Monomial>,
}

impl<K: Field> GroebnerBasis<K> {
    pub fn ring(&self) -> &PolyRing<K> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<K>] {
        &self.gens
    }

    /// Leading monomials of the generators.
    pub fn staircase(&self) -> &[Monomial] {
        &self.staircase
    }

    /// Full normal form: the remainder is supported on standard monomials
    /// only, and the map is idempotent.
    pub fn normal_form(&self, f: &Polynomial<K>) -> Polynomial<K> {
        reduce_full(f, &self.gens)
    }

    pub fn contains(&self, f: &Polynomial<K>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Monomials of degree d outside the staircase; their count is the
    /// Hilbert function of the quotient at d (for homogeneous ideals).
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        Monomial::all_of_degree(self.ring.nvars, d, self.ring.order)
            .into_iter()
            .filter(|m| !self.staircase.iter().any(|lm| lm.divides(m)))
            .collect()
    }

    /// A variable whose powers all stay outside the staircase, if any.
    /// The quotient is finite dimensional exactly when there is none.
    pub fn infinite_ray(&self) -> Option<usize> {
        (0..self.ring.nvars).find(|&i| {
            !self.staircase.iter().any(|m| {
                m.exps()
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| (j == i) || e == 0)
            })
        })
    }
}

/// Reduced Groebner basis by Buchberger's algorithm.
///
/// Pair selection follows the normal strategy (smallest lcm degree first,
/// ties by pair index). Pairs of two monomials and pairs with coprime
/// leading terms are skipped, as is any pair covered by the chain criterion.
pub fn buchberger<K: Field>(gens: &[Polynomial<K>], ring: &PolyRing<K>) -> GroebnerBasis<K> {
    let mut basis: Vec<Polynomial<K>> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let m = g.make_monic();
            if !basis.contains(&m) {
                basis.push(m);
            }
        }
    }
    // (lcm degree, i, j) with i < j; BTreeSet pops the normal-strategy minimum
    let mut pending: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let key = |basis: &[Polynomial<K>], i: usize, j: usize| {
        let a = basis[i].leading_monomial().unwrap();
        let b = basis[j].leading_monomial().unwrap();
        (a.lcm(b).degree(), i, j)
    };
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pending.insert(key(&basis, i, j));
        }
    }
    while let Some(&entry) = pending.iter().next() {
        pending.remove(&entry);
        let (_, i, j) = entry;
        let (fi, fj) = (&basis[i], &basis[j]);
        let lmi = fi.leading_monomial().unwrap().clone();
        let lmj = fj.leading_monomial().unwrap().clone();
        // a pair of monomials has S-polynomial zero
        if fi.num_terms() == 1 && fj.num_terms() == 1 {
            continue;
        }
        // Buchberger's coprimality criterion
        if lmi.coprime(&lmj) {
            continue;
        }
        let lcm = lmi.lcm(&lmj);
        // chain criterion: some other leading monomial divides the lcm and
        // both companion pairs were already handled
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let lmk = basis[k].leading_monomial().unwrap();
            if !lmk.divides(&lcm) {
                return false;
            }
            let (a, b) = (k.min(i), k.max(i));
            let (c, d) = (k.min(j), k.max(j));
            !pending.contains(&key(&basis, a, b)) && !pending.contains(&key(&basis, c, d))
        });
        if chain {
            continue;
        }
        // S-polynomial of two monic generators
        let s = {
            let a = shift(fi, &lmi.quotient(&lcm));
            let b = shift(fj, &lmj.quotient(&lcm));
            a.try_sub(&b).expect("same ring")
        };
        let s = reduce_full(&s, &basis);
        if !s.is_zero() {
            let s = s.make_monic();
            basis.push(s);
            let newest = basis.len() - 1;
            for t in 0..newest {
                pending.insert(key(&basis, t, newest));
            }
        }
    }
    finalize(basis, ring)
}

fn shift<K: Field>(f: &Polynomial<K>, m: &Monomial) -> Polynomial<K> {
    let terms = f
        .terms()
        .iter()
        .map(|(tm, tc)| (tm.mul(m), tc.clone()))
        .collect();
    f.ring().from_terms(terms)
}

fn reduce_full<K: Field>(f: &Polynomial<K>, basis: &[Polynomial<K>]) -> Polynomial<K> {
    let ring = f.ring();
    let mut work = f.clone();
    let mut rem = ring.zero();
    'outer: while let Some((lm, lc)) = work.leading_term() {
        let (lm, lc) = (lm.clone(), lc.clone());
        for g in basis {
            if g.is_zero() {
                continue;
            }
            let glm = g.leading_monomial().unwrap();
            if glm.divides(&lm) {
                work.sub_scaled_shifted(&lc, &glm.quotient(&lm), g);
                continue 'outer;
            }
        }
        // move the leading term to the remainder
        rem.add_term(&lm, &lc);
        let single = ring.monomial_term(lm, lc);
        work = work.try_sub(&single).expect("same ring");
    }
    rem
}

/// Minimalize and interreduce a basis whose S-pairs all reduce to zero.
fn finalize<K: Field>(mut basis: Vec<Polynomial<K>>, ring: &PolyRing<K>) -> GroebnerBasis<K> {
    basis.retain(|g| !g.is_zero());
    // minimal: drop any generator whose leading monomial another divides
    let mut keep: Vec<Polynomial<K>> = Vec::new();
    'cand: for i in 0..basis.len() {
        let lmi = basis[i].leading_monomial().unwrap();
        for (j, other) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            let lmj = other.leading_monomial().unwrap();
            if lmj.divides(lmi) && (lmj != lmi || j < i) {
                continue 'cand;
            }
        }
        keep.push(basis[i].clone());
    }
    // interreduce tails
    let mut reduced: Vec<Polynomial<K>> = keep.clone();
    for i in 0..reduced.len() {
        let others: Vec<Polynomial<K>> = reduced
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        reduced[i] = reduce_full(&reduced[i], &others).make_monic();
    }
    reduced.retain(|g| !g.is_zero());
    reduced.sort_by(|a, b| {
        ring.order
            .cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
    });
    let staircase = reduced
        .iter()
        .map(|g| g.leading_monomial().unwrap().clone())
        .collect();
    GroebnerBasis {
        ring: ring.clone(),
        gens: reduced,
        staircase,
    }
}

/// Outcome of testing a polynomial against an ideal and its maximal-ideal
/// multiple.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeneratorClass {
    NotInIdeal,
    MinimalGenerator,
    InMTimesIdeal,
}

impl GeneratorClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            GeneratorClass::NotInIdeal => "not-in-ideal",
            GeneratorClass::MinimalGenerator => "minimal-generator",
            GeneratorClass::InMTimesIdeal => "in-m-times-ideal",
        }
    }
}

/// Classify g against the ideal a = (gens): outside, minimal generator
/// (g in a but not in m*a), or inside m*a.
pub fn minimal_generator_test<K: Field>(
    g: &Polynomial<K>,
    gens: &[Polynomial<K>],
    ring: &PolyRing<K>,
) -> GeneratorClass {
    let gb = buchberger(gens, ring);
    if !gb.contains(g) {
        return GeneratorClass::NotInIdeal;
    }
    let mut m_times: Vec<Polynomial<K>> = Vec::new();
    for gen in gens {
        for i in 0..ring.nvars {
            m_times.push(gen.try_mul(&ring.var(i)).expect("same ring"));
        }
    }
    let gb_m = buchberger(&m_times, ring);
    if gb_m.contains(g) {
        GeneratorClass::InMTimesIdeal
    } else {
        GeneratorClass::MinimalGenerator
    }
}

/// Does the ideal generated by `a_gens` sit inside the one generated by
/// `b_gens`?
pub fn ideal_containment<K: Field>(
    a_gens: &[Polynomial<K>],
    b_gens: &[Polynomial<K>],
    ring: &PolyRing<K>,
) -> bool {
    let gb = buchberger(b_gens, ring);
    a_gens.iter().all(|g| gb.contains(g))
}

/// Decide whether a homogeneous ideal is primary to (x1..xn) by staircase
/// finiteness. On success also returns the least N with (x)^N inside the
/// ideal; on failure the witness is a variable ray surviving the staircase.
pub fn is_irrelevant_primary<K: Field>(
    gens: &[Polynomial<K>],
    ring: &PolyRing<K>,
) -> (bool, Option<u32>) {
    let gb = buchberger(gens, ring);
    if gb.infinite_ray().is_some() {
        return (false, None);
    }
    // finite staircase: scan degrees until no standard monomials remain
    let mut d = 0;
    let mut last_nonzero = 0;
    loop {
        let count = gb.standard_monomials(d).len();
        if count > 0 {
            last_nonzero = d;
        } else {
            break;
        }
        d += 1;
    }
    (true, Some(last_nonzero + 1))
}

/// Minimal number of generators of a homogeneous ideal of the polynomial
/// ring: sum over generator degrees d of dim J_d - dim (pJ)_d, computed with
/// graded linear algebra.
pub fn poly_ideal_min_gens<K: Field>(gens: &[Polynomial<K>], ring: &PolyRing<K>) -> usize {
    let degs: BTreeSet<u32> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.homogeneous_degree().expect("homogeneous generators"))
        .collect();
    let mut nu = 0;
    for &d in &degs {
        let basis = Monomial::all_of_degree(ring.nvars, d, ring.order);
        let index: alloc::collections::BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let dim = basis.len();
        let mut full = Subspace::empty(ring.field.clone(), dim);
        let mut proper = Subspace::empty(ring.field.clone(), dim);
        for g in gens {
            let e = g.homogeneous_degree().expect("homogeneous generators");
            if e > d {
                continue;
            }
            for m in Monomial::all_of_degree(ring.nvars, d - e, ring.order) {
                let prod = shift(g, &m);
                let v = prod.coords(|mm| index[mm], dim);
                if !m.is_one() {
                    proper.insert(v.clone());
                }
                full.insert(v);
            }
        }
        nu += full.dim() - proper.dim();
    }
    nu
}

/// Human-readable serialization: the sorted generator list, one per line.
pub fn render_basis<K: Field>(gb: &GroebnerBasis<K>) -> String {
    let mut out = String::new();
    for g in gb.generators() {
        out.push_str(&alloc::format!("{g}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_polynomial;
    use alloc::format;
    use alloc::vec::Vec;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("x{i}")).collect()
    }

    fn bring() -> (PolyRing<PrimeField>, Vec<Polynomial<PrimeField>>) {
        let ring = PolyRing::new(PrimeField::new(101).unwrap(), 5, MonomialOrder::Grevlex);
        let ns = names(5);
        let gens = [
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
        (ring, gens)
    }

    #[test]
    fn running_example_is_its_own_basis() {
        let (ring, gens) = bring();
        let gb = buchberger(&gens, &ring);
        assert_eq!(gb.generators().len(), 8);
        let mut sorted_in = gens.clone();
        sorted_in.sort_by(|a, b| {
            ring.order
                .cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
        });
        assert_eq!(gb.generators(), sorted_in.as_slice());
        // fixed point under re-running
        let gb2 = buchberger(gb.generators(), &ring);
        assert_eq!(gb2.generators(), gb.generators());
    }

    #[test]
    fn principal_monomial_ideal() {
        let ring: PolyRing<Rationals> = PolyRing::new(Rationals, 2, MonomialOrder::Grevlex);
        let gb = buchberger(&[ring.var(0)], &ring);
        assert_eq!(gb.generators(), &[ring.var(0)]);
    }

    #[test]
    fn completion_adds_a_cubic() {
        // {x1^2 - x2^2, x1*x2} completes with x2^3:
        // S(x1^2-x2^2, x1x2) = x2*(x1^2-x2^2) - x1*(x1x2) = -x2^3 (manual S-polynomial)
        let ring: PolyRing<Rationals> = PolyRing::new(Rationals, 2, MonomialOrder::Grevlex);
        let f = ring.var(0).pow(2).try_sub(&ring.var(1).pow(2)).unwrap();
        let g = ring.var(0).try_mul(&ring.var(1)).unwrap();
        let gb = buchberger(&[f, g], &ring);
        let cubic = ring.var(1).pow(3);
        assert!(gb.generators().contains(&cubic));
        assert!(gb.contains(&cubic));
    }

    #[test]
    fn normal_form_examples() {
        let (ring, gens) = bring();
        let gb = buchberger(&gens, &ring);
        let ns = names(5);
        let x2sq = parse_polynomial(&ring, &ns, "x2^2").unwrap();
        let x3x5 = parse_polynomial(&ring, &ns, "x3*x5").unwrap();
        assert_eq!(gb.normal_form(&x2sq), x3x5);
        for g in &gens {
            assert!(gb.normal_form(g).is_zero());
        }
        // idempotence and membership of f - nf(f)
        let f = parse_polynomial(&ring, &ns, "x1^2*x3 + x2*x4 + x5").unwrap();
        let nf = gb.normal_form(&f);
        assert_eq!(gb.normal_form(&nf), nf);
        assert!(gb.contains(&f.try_sub(&nf).unwrap()));
    }

    #[test]
    fn standard_monomials_of_running_example() {
        let (ring, gens) = bring();
        let gb = buchberger(&gens, &ring);
        let deg2: Vec<String> = gb
            .standard_monomials(2)
            .iter()
            .map(|m| format!("{m}"))
            .collect();
        assert_eq!(
            deg2,
            ["x1*x2", "x1*x3", "x2*x3", "x1*x4", "x2*x4", "x1*x5", "x3*x5"]
                .iter()
                .map(|s| String::from(*s))
                .collect::<Vec<_>>()
        );
        let deg3: Vec<String> = gb
            .standard_monomials(3)
            .iter()
            .map(|m| format!("{m}"))
            .collect();
        assert_eq!(deg3.len(), 3);
        for m in ["x1*x2*x3", "x1*x2*x4", "x1*x3*x5"] {
            assert!(deg3.contains(&String::from(m)));
        }
        assert!(gb.standard_monomials(4).is_empty());
    }

    #[test]
    fn irrelevant_primary_of_squares() {
        for n in 1..=4usize {
            let ring: PolyRing<Rationals> = PolyRing::new(Rationals, n, MonomialOrder::Grevlex);
            let gens: Vec<_> = (0..n).map(|i| ring.var(i).pow(2)).collect();
            let (primary, nn) = is_irrelevant_primary(&gens, &ring);
            assert!(primary);
            // oracle: m^(n+1) = 0 while x1...xn is a nonzero standard monomial
            assert_eq!(nn, Some(n as u32 + 1));
        }
    }

    #[test]
    fn non_primary_has_ray() {
        let ring: PolyRing<Rationals> = PolyRing::new(Rationals, 3, MonomialOrder::Grevlex);
        let (primary, n) = is_irrelevant_primary(&[ring.var(0), ring.var(1)], &ring);
        assert!(!primary);
        assert_eq!(n, None);
        let gb = buchberger(&[ring.var(0), ring.var(1)], &ring);
        assert_eq!(gb.infinite_ray(), Some(2));
    }

    #[test]
    fn generator_classification() {
        let (ring, gens) = bring();
        let ns = names(5);
        let g1 = parse_polynomial(&ring, &ns, "x1^2-x2*x3").unwrap();
        assert_eq!(
            minimal_generator_test(&g1, &gens, &ring),
            GeneratorClass::MinimalGenerator
        );
        let xg = g1.try_mul(&ring.var(0)).unwrap();
        assert_eq!(
            minimal_generator_test(&xg, &gens, &ring),
            GeneratorClass::InMTimesIdeal
        );
        // (x1+x2+x4)(x2+x3+x5) is not in the ideal; independent check: its
        // normal form has nonzero coordinates on standard monomials
        let f1 = parse_polynomial(&ring, &ns, "x1+x2+x4").unwrap();
        let f2 = parse_polynomial(&ring, &ns, "x2+x3+x5").unwrap();
        let prod = f1.try_mul(&f2).unwrap();
        assert_eq!(
            minimal_generator_test(&prod, &gens, &ring),
            GeneratorClass::NotInIdeal
        );
    }

    #[test]
    fn containment_examples() {
        let ring: PolyRing<Rationals> = PolyRing::new(Rationals, 1, MonomialOrder::Grevlex);
        let x = ring.var(0);
        assert!(ideal_containment(&[x.pow(2)], &[x.clone()], &ring));
        assert!(!ideal_containment(&[x.clone()], &[x.pow(2)], &ring));
    }

    #[test]
    fn min_gens_of_polynomial_ideals() {
        let (ring, gens) = bring();
        assert_eq!(poly_ideal_min_gens(&gens, &ring), 8);
        // J = c + (f1, f2) has nu(J) = 8 as well
        let ns = names(5);
        let mut j = gens.clone();
        j.push(parse_polynomial(&ring, &ns, "x1+x2+x4").unwrap());
        j.push(parse_polynomial(&ring, &ns, "x2+x3+x5").unwrap());
        assert_eq!(poly_ideal_min_gens(&j, &ring), 8);
    }

    #[test]
    fn basis_count_independent_of_generating_set() {
        // same ideal from different generators gives identical staircases
        let ring: PolyRing<Rationals> = PolyRing::new(Rationals, 2, MonomialOrder::Grevlex);
        let f = ring.var(0).pow(2).try_sub(&ring.var(1).pow(2)).unwrap();
        let g = ring.var(0).try_mul(&ring.var(1)).unwrap();
        let gb1 = buchberger(&[f.clone(), g.clone()], &ring);
        let sum = f.try_add(&g).unwrap();
        let gb2 = buchberger(&[f, sum], &ring);
        for d in 0..6 {
            assert_eq!(
                gb1.standard_monomials(d).len(),
                gb2.standard_monomials(d).len()
            );
        }
    }
}
