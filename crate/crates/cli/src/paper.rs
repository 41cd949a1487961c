//! The pinned regression ledger: the toolkit's reference values, run end
//! to end with exact arithmetic and reported as one pass/fail line per
//! criterion.

use serde_json::{json, Value};

use qci_core::battery::run_invariant_battery;
use qci_core::dual::QuadraticDual;
use qci_core::field::{Field, PrimeField, Rationals};
use qci_core::generic::{run_experiment, witness_matrix_check, ExperimentConfig};
use qci_core::groebner::buchberger;
use qci_core::koszul::{
    ezd_factor_obstruction, ezd_search_enumerate, qci_check, two_generated_criterion,
    KoszulComplex, QciOutcome,
};
use qci_core::monomial::MonomialOrder;
use qci_core::parse::parse_polynomial;
use qci_core::poly::{PolyRing, Polynomial};
use qci_core::quotient::{minimal_presentation, QuotientRing, RingElement, RingIdeal};
use qci_core::resolution::{
    ambient_betti, embeddedness_obstruction, is_complete_intersection, is_koszul_up_to,
    minimal_resolution, tate_betti_pattern, Embeddedness,
};
use qci_core::series::{deviations, poincare_from_koszul, PowerSeries};

pub const EXAMPLE_RELATIONS: [&str; 8] = [
    "x1^2-x2*x3",
    "x2^2-x3*x5",
    "x3^2-x1*x4",
    "x4^2",
    "x5^2",
    "x3*x4",
    "x2*x5",
    "x4*x5",
];
pub const EXAMPLE_IDEAL: [&str; 2] = ["x1+x2+x4", "x2+x3+x5"];

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl CriterionResult {
    fn ok(id: u32, name: &str, details: String) -> Self {
        CriterionResult {
            id,
            name: name.to_string(),
            passed: true,
            details,
        }
    }

    fn fail(id: u32, name: &str, details: String) -> Self {
        CriterionResult {
            id,
            name: name.to_string(),
            passed: false,
            details,
        }
    }
}

fn names5() -> Vec<String> {
    (1..=5).map(|i| format!("x{i}")).collect()
}

pub fn example_ring<K: Field>(field: K) -> QuotientRing<K> {
    let pring = PolyRing::new(field, 5, MonomialOrder::Grevlex);
    let ns = names5();
    let gens: Vec<Polynomial<K>> = EXAMPLE_RELATIONS
        .iter()
        .map(|s| parse_polynomial(&pring, &ns, s).expect("pinned relation parses"))
        .collect();
    QuotientRing::new(pring, &gens).expect("the example ring is artinian")
}

pub fn example_element<K: Field>(ring: &QuotientRing<K>, text: &str) -> RingElement<K> {
    ring.element(&parse_polynomial(ring.ambient(), &names5(), text).expect("pinned element"))
}

fn example_sequence<K: Field>(ring: &QuotientRing<K>) -> Vec<RingElement<K>> {
    EXAMPLE_IDEAL
        .iter()
        .map(|s| example_element(ring, s))
        .collect()
}

/// A check with its own pass flag and message, folded into a criterion.
struct Checks {
    lines: Vec<String>,
    ok: bool,
}

impl Checks {
    fn new() -> Self {
        Checks {
            lines: Vec::new(),
            ok: true,
        }
    }

    fn expect<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, got: T, want: T) {
        if got == want {
            self.lines.push(format!("{label}: {got:?}"));
        } else {
            self.ok = false;
            self.lines
                .push(format!("{label}: got {got:?}, want {want:?}"));
        }
    }

    fn assert(&mut self, label: &str, cond: bool) {
        if cond {
            self.lines.push(format!("{label}: ok"));
        } else {
            self.ok = false;
            self.lines.push(format!("{label}: FAILED"));
        }
    }

    fn into_result(self, id: u32, name: &str) -> CriterionResult {
        let details = self.lines.join("; ");
        if self.ok {
            CriterionResult::ok(id, name, details)
        } else {
            CriterionResult::fail(id, name, details)
        }
    }
}

pub fn criterion_1() -> CriterionResult {
    let name = "Hilbert series of the example ring over QQ, F5, F101, F32003";
    let mut c = Checks::new();
    let want = vec![1usize, 5, 7, 3];
    c.expect(
        "H over QQ",
        example_ring(Rationals).hilbert_series(),
        want.clone(),
    );
    for p in [5u64, 101, 32003] {
        let ring = example_ring(PrimeField::new(p).unwrap());
        c.expect(&format!("H over F{p}"), ring.hilbert_series(), want.clone());
    }
    let ring = example_ring(PrimeField::new(101).unwrap());
    let ideal = RingIdeal::new(&ring, &example_sequence(&ring)).unwrap();
    c.expect("H of R/I", ring.quotient_hilbert(&ideal), vec![1, 3]);
    c.into_result(1, name)
}

pub fn criterion_2(prime: u64) -> CriterionResult {
    let name = "the eight relations are their own reduced Groebner basis";
    let mut c = Checks::new();
    let field = PrimeField::new(prime).unwrap();
    let pring = PolyRing::new(field, 5, MonomialOrder::Grevlex);
    let ns = names5();
    let gens: Vec<Polynomial<PrimeField>> = EXAMPLE_RELATIONS
        .iter()
        .map(|s| parse_polynomial(&pring, &ns, s).unwrap())
        .collect();
    let gb = buchberger(&gens, &pring);
    c.expect("basis size", gb.generators().len(), 8);
    let mut monic_sorted: Vec<Polynomial<PrimeField>> =
        gens.iter().map(|g| g.make_monic()).collect();
    monic_sorted.sort_by(|a, b| {
        pring
            .order
            .cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
    });
    c.assert(
        "basis equals input up to monic scaling",
        gb.generators() == monic_sorted,
    );
    let gb2 = buchberger(gb.generators(), &pring);
    c.assert(
        "fixed point under re-running",
        gb2.generators() == gb.generators(),
    );
    let deg2: Vec<String> = gb
        .standard_monomials(2)
        .iter()
        .map(|m| m.to_string())
        .collect();
    c.expect(
        "standard monomials in degree 2",
        deg2,
        [
            "x1*x2", "x1*x3", "x2*x3", "x1*x4", "x2*x4", "x1*x5", "x3*x5",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
    );
    let mut deg3: Vec<String> = gb
        .standard_monomials(3)
        .iter()
        .map(|m| m.to_string())
        .collect();
    deg3.sort();
    c.expect(
        "standard monomials in degree 3",
        deg3,
        vec!["x1*x2*x3".into(), "x1*x2*x4".into(), "x1*x3*x5".into()],
    );
    c.expect("degree 4 is empty", gb.standard_monomials(4).len(), 0);
    c.into_result(2, name)
}

pub fn criterion_3(prime: u64) -> CriterionResult {
    let name = "Koszul homology of (f1, f2): dims (20, 12, 8, 4), free over R/I";
    let mut c = Checks::new();
    let ring = example_ring(PrimeField::new(prime).unwrap());
    let seq = example_sequence(&ring);
    let complex = KoszulComplex::new(&ring, &seq).unwrap();
    let report = complex.homology_report();
    c.expect("dim Z_1", report.total_cycles(1), 20);
    c.expect("dim B_1", report.total_boundaries(1), 12);
    c.expect("dim H_1", report.total_homology(1), 8);
    c.expect("dim H_2", report.total_homology(2), 4);
    c.expect("Euler characteristic", report.euler_characteristic(), 0);
    // per-degree cycle/boundary counts under deg v_i = deg f_i
    let z: Vec<usize> = (2..=4).map(|d| report.levels[1][&d].cycles).collect();
    c.expect("Z_1 per degree (2,3,4)", z, vec![3, 11, 6]);
    let b: Vec<usize> = (2..=4).map(|d| report.levels[1][&d].boundaries).collect();
    c.expect("B_1 per degree (2,3,4)", b, vec![1, 5, 6]);
    // freeness through the certificate: H_1 = S^2 and H_2 = S
    match qci_check(&ring, &seq).unwrap() {
        QciOutcome::Certificate(cert) => {
            c.expect("S Hilbert function", cert.s_hilbert.clone(), vec![1, 3]);
            let s_total: usize = cert.s_hilbert.iter().sum();
            c.expect("dim H_1 = 2 dim S", report.total_homology(1), 2 * s_total);
            c.expect("dim H_2 = dim S", report.total_homology(2), s_total);
        }
        QciOutcome::Refuted(r) => c.assert(&format!("certificate exists ({r})"), false),
    }
    c.into_result(3, name)
}

pub fn criterion_4(prime: u64) -> CriterionResult {
    let name = "q.c.i. certificate with annihilator dualities and the 2-generated criterion";
    let mut c = Checks::new();
    let ring = example_ring(PrimeField::new(prime).unwrap());
    let seq = example_sequence(&ring);
    let outcome = qci_check(&ring, &seq).unwrap();
    let certified = outcome.is_certified();
    c.assert("qci_check certifies I", certified);
    if let QciOutcome::Certificate(cert) = &outcome {
        c.assert("(0:I) = (Delta)", cert.duality.ann_ideal_is_principal_delta);
        c.assert("(0:Delta) = I", cert.duality.ann_delta_is_ideal);
        c.expect(
            "Delta is homogeneous of degree",
            cert.delta.homogeneous_degree(),
            Some(2),
        );
        c.assert("Delta in m^2", cert.duality.delta_in_mn);
        c.assert(
            "Delta not in m^3",
            cert.delta
                .poly()
                .terms()
                .iter()
                .all(|(m, _)| m.degree() == 2)
                && !cert.delta.is_zero(),
        );
    }
    let ok = two_generated_criterion(
        &ring,
        &example_element(&ring, "x1+x2+x4"),
        &example_element(&ring, "x2+x3+x5"),
        &example_element(&ring, "x1-x2"),
        &example_element(&ring, "x4"),
        &example_element(&ring, "-x3+x4+2*x5"),
        &example_element(&ring, "x2-x3-x4"),
    )
    .unwrap();
    c.assert("two-generated criterion with the pinned witnesses", ok);
    c.expect("criterion agrees with qci_check", ok, certified);
    c.into_result(4, name)
}

pub fn criterion_5() -> CriterionResult {
    let name = "no exact zero-divisors inside I: enumeration over F5 and symbolic certificate";
    let mut c = Checks::new();
    let ring5 = example_ring(PrimeField::new(5).unwrap());
    let ideal = RingIdeal::new(&ring5, &example_sequence(&ring5)).unwrap();
    let found = ezd_search_enumerate(&ring5, Some(&ideal), 2);
    c.expect(
        "pairs found by enumeration (degrees <= 2)",
        found.pairs.len(),
        0,
    );
    c.assert(
        "enumeration covered candidates",
        found.candidates_tested > 19000,
    );
    // symbolic certificate over QQ
    let ringq = example_ring(Rationals);
    let ns = names5();
    let lifts: Vec<Polynomial<Rationals>> = EXAMPLE_IDEAL
        .iter()
        .map(|s| parse_polynomial(ringq.ambient(), &ns, s).unwrap())
        .collect();
    let obs = ezd_factor_obstruction(&ringq, Some(&lifts)).unwrap();
    c.expect("seven expressions", obs.system.len(), 7);
    c.expect("containment power", obs.certified_power, Some(2));
    c.into_result(5, name)
}

pub fn criterion_6(prime: u64) -> CriterionResult {
    let name = "Poincare coefficients, deviations, degree-2 commutant, non-embeddedness";
    let mut c = Checks::new();
    let h = PowerSeries::from_integers(&[1, 5, 7, 3]);
    let p = poincare_from_koszul(&h, 4).unwrap();
    let coeffs: Vec<i64> = (0..4).map(|i| p.coeff_i64(i).unwrap_or(-1)).collect();
    c.expect("Poincare coefficients", coeffs, vec![1, 5, 18, 58]);
    let p6 = poincare_from_koszul(&h, 6).unwrap();
    c.expect("deviations", deviations(&p6, 3).unwrap(), vec![5, 8, 8]);
    let ring = example_ring(PrimeField::new(prime).unwrap());
    let dual = QuadraticDual::new(&ring).unwrap();
    c.expect("dual dimensions", dual.dims(), [1, 5, 18, 58]);
    let center = dual.degree2_commutant().unwrap();
    c.expect("degree-2 commutant dimension", center.len(), 1);
    c.assert(
        "square of the first dual generator spans it",
        dual.in_span(&center, &dual.generator_square_class(0)),
    );
    let seq = example_sequence(&ring);
    if let QciOutcome::Certificate(cert) = qci_check(&ring, &seq).unwrap() {
        let verdict = embeddedness_obstruction(&ring, &cert, 4).unwrap();
        c.expect(
            "embeddedness obstruction",
            verdict,
            Embeddedness::NotEmbedded {
                complexity: 2,
                zeta2: 1,
            },
        );
    } else {
        c.assert("certificate exists", false);
    }
    c.into_result(6, name)
}

pub fn criterion_7() -> CriterionResult {
    let name = "ambient betti (1,8,20,23,13,3) at F101, F32003, QQ; not CI; Koszul to 4";
    let mut c = Checks::new();
    let want = vec![1usize, 8, 20, 23, 13, 3];
    for p in [101u64, 32003] {
        let ring = example_ring(PrimeField::new(p).unwrap());
        c.expect(
            &format!("betti over F{p}"),
            ambient_betti(&ring).unwrap(),
            want.clone(),
        );
        c.expect(
            &format!("complete intersection over F{p}"),
            is_complete_intersection(&ring).unwrap(),
            false,
        );
        c.assert(
            &format!("Koszul up to 4 over F{p}"),
            is_koszul_up_to(&ring, 4),
        );
    }
    let ringq = example_ring(Rationals);
    c.expect("betti over QQ", ambient_betti(&ringq).unwrap(), want);
    c.expect(
        "complete intersection over QQ",
        is_complete_intersection(&ringq).unwrap(),
        false,
    );
    c.assert("Koszul up to 4 over QQ", is_koszul_up_to(&ringq, 4));
    c.into_result(7, name)
}

pub fn criterion_8(prime: u64) -> CriterionResult {
    let name = "Tate pattern: betti of R/I is (1,2,3,4,5); principal pairs give constant betti";
    let mut c = Checks::new();
    let ring = example_ring(PrimeField::new(prime).unwrap());
    let ideal = RingIdeal::new(&ring, &example_sequence(&ring)).unwrap();
    let table = minimal_resolution(&ring, &ideal, 4);
    c.expect(
        "betti of R/I up to degree 4",
        table.totals(),
        vec![1, 2, 3, 4, 5],
    );
    c.expect(
        "series coefficients (1+z)^2/(1-z^2)^2",
        tate_betti_pattern(2, 5),
        vec![1, 2, 3, 4, 5],
    );
    c.expect(
        "degenerate pattern n=1",
        tate_betti_pattern(1, 5),
        vec![1; 5],
    );
    // principal exact zero-divisors resolve with constant betti numbers
    let r1 = PolyRing::new(Rationals, 1, MonomialOrder::Grevlex);
    let hyper = QuotientRing::new(r1.clone(), &[r1.var(0).pow(2)]).unwrap();
    let px = RingIdeal::new(&hyper, &[hyper.var_elem(0)]).unwrap();
    c.expect(
        "betti over k[x]/(x^2) of R/(x)",
        minimal_resolution(&hyper, &px, 4).totals(),
        vec![1; 5],
    );
    let r2 = PolyRing::new(Rationals, 2, MonomialOrder::Grevlex);
    let ci = QuotientRing::new(r2.clone(), &[r2.var(0).pow(2), r2.var(1).pow(2)]).unwrap();
    let sum = ci.element(&r2.var(0).try_add(&r2.var(1)).unwrap());
    let psum = RingIdeal::new(&ci, &[sum]).unwrap();
    c.expect(
        "betti of R/(x1+x2) over the two-variable CI",
        minimal_resolution(&ci, &psum, 4).totals(),
        vec![1; 5],
    );
    c.into_result(8, name)
}

pub fn criterion_9(prime: u64) -> CriterionResult {
    let name = "Loewy bounds on the certified corpus; nu(I)=2, ll=4, nu(m)=5, nu(m^3)=3";
    let mut c = Checks::new();
    let ring = example_ring(PrimeField::new(prime).unwrap());
    c.expect("Loewy length of B", ring.loewy_length(), 4);
    let ideal = RingIdeal::new(&ring, &example_sequence(&ring)).unwrap();
    c.expect("nu(I)", ideal.min_gens_count(&ring), 2);
    c.expect("nu(m)", RingIdeal::maximal(&ring).min_gens_count(&ring), 5);
    c.expect(
        "nu(m^3)",
        RingIdeal::power_of_maximal(&ring, 3).min_gens_count(&ring),
        3,
    );

    // Theorem bounds over the certified corpus: nu(I) <= ll - 1 always, and
    // nu(I) <= ll - 2 when R/I is not a complete intersection
    let r1 = PolyRing::new(Rationals, 1, MonomialOrder::Grevlex);
    let hyper = QuotientRing::new(r1.clone(), &[r1.var(0).pow(2)]).unwrap();
    let r2 = PolyRing::new(Rationals, 2, MonomialOrder::Grevlex);
    let ci = QuotientRing::new(r2.clone(), &[r2.var(0).pow(2), r2.var(1).pow(2)]).unwrap();

    check_loewy_bounds(&mut c, "B with I=(f1,f2)", &ring, &example_sequence(&ring));
    check_loewy_bounds(&mut c, "k[x]/(x^2) with (x)", &hyper, &[hyper.var_elem(0)]);
    check_loewy_bounds(
        &mut c,
        "2-variable CI with m",
        &ci,
        &[ci.var_elem(0), ci.var_elem(1)],
    );
    let sum = ci.element(&r2.var(0).try_add(&r2.var(1)).unwrap());
    check_loewy_bounds(&mut c, "2-variable CI with (x1+x2)", &ci, &[sum]);
    c.into_result(9, name)
}

fn check_loewy_bounds<K: Field>(
    c: &mut Checks,
    label: &str,
    ring: &QuotientRing<K>,
    seq: &[RingElement<K>],
) {
    let outcome = qci_check(ring, seq).unwrap();
    let QciOutcome::Certificate(_) = outcome else {
        c.assert(&format!("{label}: certificate exists"), false);
        return;
    };
    let ideal = RingIdeal::new(ring, seq).unwrap();
    let nu = ideal.min_gens_count(ring);
    let ll = ring.loewy_length() as usize;
    c.assert(&format!("{label}: nu(I) <= ll - 1"), nu < ll);
    // detect complete intersection of R/I through a minimal presentation
    let s = minimal_presentation(ring, &ideal).unwrap();
    let ci = is_complete_intersection(&s).unwrap();
    if !ci {
        c.assert(
            &format!("{label}: nu(I) <= ll - 2 (R/I not CI)"),
            nu + 2 <= ll,
        );
    } else {
        c.assert(
            &format!("{label}: R/I is CI, only the generic bound applies"),
            true,
        );
    }
}

pub fn criterion_10(prime: u64, seed: u64) -> CriterionResult {
    let name = "generic quadrics: pairs at n=3,4; none at n=5";
    let mut c = Checks::new();
    for n in [3usize, 4] {
        let report = run_experiment(&ExperimentConfig {
            n,
            prime,
            trials: 25,
            seed,
        });
        let regular = report.trials.iter().filter(|t| t.regular).count();
        c.expect(&format!("n={n}: regular trials"), regular, 25);
        c.assert(
            &format!("n={n}: every trial certifies X-membership exactly"),
            report.trials.iter().all(|t| t.pencil_reducible_exact),
        );
        c.expect(&format!("n={n}: anomalies"), report.anomaly_count(), 0);
        let pairs = report.pairs_found();
        let existence_only = report
            .trials
            .iter()
            .filter(|t| t.existence_without_witness)
            .count();
        let ext = report
            .trials
            .iter()
            .filter(|t| t.pair_over_extension)
            .count();
        if n == 3 {
            c.expect("n=3: verified pairs", pairs, 25);
        } else {
            // over a fixed finite field the 0-dimensional reducible locus can
            // lack rational points; every trial must either verify a pair or
            // certify existence without a witness
            c.expect(
                "n=4: every trial verified or existence-certified",
                pairs + existence_only,
                25,
            );
            c.assert("n=4: at least one verified pair", pairs >= 1);
            c.lines.push(format!(
                "n=4 breakdown: {pairs} pairs ({ext} over F_p^2), {existence_only} existence-only"
            ));
        }
    }
    let report = run_experiment(&ExperimentConfig {
        n: 5,
        prime,
        trials: 25,
        seed,
    });
    let regular = report.trials.iter().filter(|t| t.regular).count();
    c.expect("n=5: regular trials", regular, 25);
    c.expect("n=5: exact zero-divisors found", report.pairs_found(), 0);
    let flagged: Vec<String> = report
        .trials
        .iter()
        .flat_map(|t| t.anomalies.iter().cloned())
        .collect();
    c.assert(
        &format!("n=5: no anomalies (flagged: {flagged:?})"),
        flagged.is_empty(),
    );
    c.into_result(10, name)
}

pub fn criterion_11(prime: u64) -> CriterionResult {
    let name = "witness matrices: I_3(W_5), I_3(W_6) primary; I_3(W_4) not";
    let mut c = Checks::new();
    let field = PrimeField::new(prime).unwrap();
    c.expect("W_5", witness_matrix_check(field, 5), true);
    c.expect("W_6", witness_matrix_check(field, 6), true);
    c.expect("W_4", witness_matrix_check(field, 4), false);
    c.into_result(11, name)
}

pub fn criterion_12(seed: u64) -> CriterionResult {
    let name = "randomized invariant battery: 100 instances";
    let mut c = Checks::new();
    let report = run_invariant_battery(seed, 100);
    c.expect("instances", report.instances, 100);
    c.assert(
        &format!("no failures ({:?})", report.failures),
        report.passed(),
    );
    c.into_result(12, name)
}

/// Run the whole pinned ledger. `prime` selects the main working prime
/// (criteria that pin other fields keep them regardless).
pub fn run_paper(prime: u64, seed: u64) -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(prime),
        criterion_3(prime),
        criterion_4(prime),
        criterion_5(),
        criterion_6(prime),
        criterion_7(),
        criterion_8(prime),
        criterion_9(prime),
        criterion_10(prime, seed),
        criterion_11(prime),
        criterion_12(seed),
    ]
}

pub fn ledger_text(results: &[CriterionResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&format!(
            "[{}] criterion {:>2}: {}\n      {}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.details
        ));
    }
    let passed = results.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} criteria passed\n", results.len()));
    out
}

pub fn ledger_json(results: &[CriterionResult], prime: u64, seed: u64) -> Value {
    json!({
        "schema": "qci.ledger/1",
        "version": env!("CARGO_PKG_VERSION"),
        "command": "paper",
        "prime": prime,
        "seed": seed,
        "criteria": results
            .iter()
            .map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "details": r.details}))
            .collect::<Vec<_>>(),
        "passed": results.iter().filter(|r| r.passed).count(),
        "total": results.len(),
    })
}
