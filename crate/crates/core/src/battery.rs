//! A seeded randomized invariant suite over small artinian rings: ring
//! axioms for polynomial arithmetic, normal-form and standard-monomial
//! invariants, quotient-ring dimension identities, and Koszul/q.c.i.
//! consistency checks. Runs standalone from a single seed so failures are
//! reproducible.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::field::PrimeField;
use crate::generic::trial_rng;
use crate::groebner::buchberger;
use crate::koszul::{qci_check, KoszulComplex, QciOutcome};
use crate::matrix::Matrix;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial};
use crate::quotient::{annihilator, is_exact_zero_divisor, QuotientRing, RingIdeal};

pub struct BatteryReport {
    pub instances: u32,
    pub failures: Vec<String>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Run `instances` randomized checks; instance i draws from stream (seed, i).
pub fn run_invariant_battery(seed: u64, instances: u32) -> BatteryReport {
    let mut failures = Vec::new();
    for i in 0..instances {
        if let Err(msg) = run_instance(seed, i as u64) {
            failures.push(format!("instance {i}: {msg}"));
        }
    }
    BatteryReport {
        instances,
        failures,
    }
}

fn run_instance(seed: u64, stream: u64) -> Result<(), String> {
    let mut rng = trial_rng(seed, stream);
    let primes = [5u64, 7, 101];
    let p = primes[(rng.next_u64() % 3) as usize];
    let field = PrimeField::new(p).expect("odd prime");
    let n = 1 + (rng.next_u64() % 4) as usize;
    let ring = PolyRing::new(field, n, MonomialOrder::Grevlex);

    let rand_poly = |rng: &mut crate::generic::ExperimentRng, deg: u32| -> Polynomial<PrimeField> {
        let monos = Monomial::all_of_degree(n, deg, ring.order);
        let terms: Vec<(Monomial, u64)> = monos
            .into_iter()
            .filter_map(|m| {
                let c = rng.next_u64() % p;
                (c != 0).then_some((m, c))
            })
            .collect();
        ring.from_terms(terms)
    };

    // --- polynomial ring axioms ---
    {
        let da = 1 + (rng.next_u64() % 3) as u32;
        let a = rand_poly(&mut rng, da);
        let db = 1 + (rng.next_u64() % 3) as u32;
        let b = rand_poly(&mut rng, db);
        let dc = 1 + (rng.next_u64() % 3) as u32;
        let c = rand_poly(&mut rng, dc);
        let ab = a.try_mul(&b).map_err(|e| format!("{e}"))?;
        let ba = b.try_mul(&a).map_err(|e| format!("{e}"))?;
        if ab != ba {
            return Err(String::from("multiplication is not commutative"));
        }
        let left = ab.try_mul(&c).unwrap();
        let right = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        if left != right {
            return Err(String::from("multiplication is not associative"));
        }
        let dist_l = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let dist_r = ab.try_add(&a.try_mul(&c).unwrap()).unwrap();
        if dist_l != dist_r {
            return Err(String::from("distributivity fails"));
        }
        // initial form is multiplicative on nonzero products
        if !a.is_zero() && !b.is_zero() && !ab.is_zero() {
            let lhs = ab.initial_form().unwrap();
            let rhs = a
                .initial_form()
                .unwrap()
                .try_mul(&b.initial_form().unwrap())
                .unwrap();
            if !rhs.is_zero() && lhs != rhs {
                return Err(String::from("initial form is not multiplicative"));
            }
        }
    }

    // --- hessian rank is invariant under invertible linear substitution ---
    if n >= 2 {
        let q = rand_poly(&mut rng, 2);
        if !q.is_zero() {
            let h = q.hessian().map_err(|e| format!("{e}"))?;
            let r0 = h.rank();
            let change = random_invertible_change(&ring, &mut rng);
            let moved = q.substitute(&change);
            let r1 = moved.hessian().map_err(|e| format!("{e}"))?.rank();
            if r0 != r1 {
                return Err(format!(
                    "hessian rank changed under substitution: {r0} vs {r1}"
                ));
            }
        }
    }

    // --- an artinian quotient: squares of variables plus random forms ---
    let mut gens: Vec<Polynomial<PrimeField>> = Vec::new();
    for i in 0..n {
        let e = 1 + (rng.next_u64() % 3) as u32;
        gens.push(ring.var(i).pow(e));
    }
    let extra = rng.next_u64() % 3;
    for _ in 0..extra {
        let dg = 1 + (rng.next_u64() % 3) as u32;
        let g = rand_poly(&mut rng, dg);
        if !g.is_zero() {
            gens.push(g);
        }
    }
    let gb = buchberger(&gens, &ring);
    // normal form: f - nf(f) lies in the ideal, nf is idempotent
    let df = 1 + (rng.next_u64() % 3) as u32;
    let f = rand_poly(&mut rng, df);
    let nf = gb.normal_form(&f);
    if gb.normal_form(&nf) != nf {
        return Err(String::from("normal form is not idempotent"));
    }
    if !gb.contains(&f.try_sub(&nf).unwrap()) {
        return Err(String::from("f - nf(f) is not in the ideal"));
    }
    // re-running Buchberger on a reduced basis is a fixed point
    let gb2 = buchberger(gb.generators(), &ring);
    if gb2.generators() != gb.generators() {
        return Err(String::from(
            "reduced basis is not a Buchberger fixed point",
        ));
    }
    // standard monomial counts do not depend on the generating set
    let mut augmented = gens.clone();
    let vi = rng.next_u64() as usize % n;
    let mix = gens[0]
        .try_mul(&ring.var(vi))
        .unwrap()
        .try_add(&gens[gens.len() - 1])
        .unwrap();
    augmented.push(mix);
    let gb3 = buchberger(&augmented, &ring);
    for d in 0..=4 {
        if gb.standard_monomials(d).len() != gb3.standard_monomials(d).len() {
            return Err(format!("standard monomial count differs at degree {d}"));
        }
    }

    let quotient = QuotientRing::new(ring.clone(), &gens).map_err(|e| format!("{e}"))?;
    // Hilbert coefficients sum to the total dimension
    let h = quotient.hilbert_series();
    if h.iter().sum::<usize>() != quotient.total_dim() {
        return Err(String::from("Hilbert series does not sum to dimension"));
    }
    if quotient.loewy_length() != quotient.top_degree() + 1 {
        return Err(String::from("Loewy length mismatch"));
    }
    // socle contains the top component
    let socle = crate::quotient::socle(&quotient);
    let top = quotient.top_degree();
    if socle.dim_at(top as i64) != quotient.dim_at(top as i64) {
        return Err(String::from("socle misses part of the top component"));
    }
    // rank-nullity for a few homogeneous elements
    for d in 1..=quotient.top_degree().min(2) {
        let cand = rand_poly(&mut rng, d);
        let x = quotient.element(&cand);
        if x.is_zero() {
            continue;
        }
        let ann = annihilator(&quotient, &x);
        let image = RingIdeal::new(&quotient, core::slice::from_ref(&x)).unwrap();
        if ann.total_dim() + image.total_dim() != quotient.total_dim() {
            return Err(format!("rank-nullity fails for {x}"));
        }
        // exact-pair symmetry when a complement exists
        if let Ok(Some(y)) = is_exact_zero_divisor(&quotient, &x) {
            let back = is_exact_zero_divisor(&quotient, &y)
                .map_err(|e| format!("{e}"))?
                .ok_or_else(|| String::from("exact pair is not symmetric"))?;
            let ix = RingIdeal::new(&quotient, core::slice::from_ref(&x)).unwrap();
            let iback = RingIdeal::new(&quotient, &[back]).unwrap();
            if !ix.equals(&iback) {
                return Err(String::from("complement of complement differs from (x)"));
            }
        }
    }

    // --- Koszul complex on the variable images ---
    if quotient.dim_at(1) == n as usize {
        let vars: Vec<_> = (0..n).map(|i| quotient.var_elem(i)).collect();
        let complex = KoszulComplex::new(&quotient, &vars).map_err(|e| format!("{e}"))?;
        let report = complex.homology_report();
        if report.euler_characteristic() != 0 {
            return Err(String::from("Koszul Euler characteristic is nonzero"));
        }
        // q.c.i. certificates must satisfy the grade identity and dualities
        if let QciOutcome::Certificate(cert) =
            qci_check(&quotient, &vars).map_err(|e| format!("{e}"))?
        {
            let ideal = RingIdeal::new(&quotient, &vars).unwrap();
            let nu = ideal.min_gens_count(&quotient);
            let h1 = cert.report.h1_generators.len();
            if nu != h1 + cert.grade {
                return Err(String::from("grade identity fails on a certificate"));
            }
            if !cert.duality.all_hold() {
                return Err(String::from("annihilator duality fails on a certificate"));
            }
            // dim H_1 = nu(I) * dim(R/I)
            let s_total: usize = cert.s_hilbert.iter().sum();
            if cert.report.total_homology(1) != nu * s_total {
                return Err(String::from("H_1 is not free of the expected rank"));
            }
        }
    }
    Ok(())
}

fn random_invertible_change(
    ring: &PolyRing<PrimeField>,
    rng: &mut crate::generic::ExperimentRng,
) -> Vec<Polynomial<PrimeField>> {
    let n = ring.nvars;
    let p = ring.field.modulus();
    loop {
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.next_u64() % p).collect())
            .collect();
        let m = Matrix::from_rows(ring.field, n, rows.clone());
        if m.rank() == n {
            return rows.into_iter().map(|r| ring.linear_form(&r)).collect();
        }
    }
}
