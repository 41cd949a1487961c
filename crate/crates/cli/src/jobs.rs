//! Job construction and dispatch: build rings and ideals from parsed specs,
//! run the requested computation over the right coefficient field, and
//! assemble deterministic text and JSON reports.

use anyhow::{anyhow, bail, Result};
use serde_json::{json, Value};

use qci_core::dual::QuadraticDual;
use qci_core::field::{Field, PrimeField, Rationals, SqrtField};
use qci_core::generic::{run_experiment, witness_matrix_check, ExperimentConfig};
use qci_core::groebner::render_basis;
use qci_core::koszul::{
    ezd_factor_obstruction, ezd_search_enumerate, qci_check, render_certificate, KoszulComplex,
    QciOutcome,
};
use qci_core::monomial::MonomialOrder;
use qci_core::parse::parse_polynomial;
use qci_core::poly::{PolyRing, Polynomial};
use qci_core::quotient::{hilbert_string, QuotientRing, RingElement, RingIdeal};
use qci_core::resolution::{
    ambient_betti, embeddedness_obstruction, is_complete_intersection, minimal_resolution,
};

use crate::grammar::{line_col, FieldSpec, GrammarError, RingSpec};

pub const SCHEMA: &str = "qci.report/1";

/// A finished computation: human text, structured document, and outcome
/// flags for exit-code mapping.
pub struct Report {
    pub text: String,
    pub json: Value,
    /// mathematically negative outcome (refutation / nothing found)
    pub negative: bool,
    /// verification failure that should never happen (exit code 3)
    pub inconsistent: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            negative: false,
            inconsistent: false,
        }
    }
}

fn envelope(command: &str, ring: Option<&RingSpec>, order: MonomialOrder) -> Value {
    let mut v = json!({
        "schema": SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "order": order.name(),
    });
    if let Some(r) = ring {
        v["ring"] = json!(r.source);
        v["field"] = json!(r.field.to_string());
    }
    v
}

/// A ring together with its surface variable names and generator texts.
pub struct BuiltRing<K: Field> {
    pub ring: QuotientRing<K>,
    pub names: Vec<String>,
}

impl<K: Field> BuiltRing<K> {
    pub fn parse_poly(&self, text: &str) -> Result<Polynomial<K>> {
        parse_polynomial(self.ring.ambient(), &self.names, text)
            .map_err(|e| anyhow!("in polynomial `{text}`: {e}"))
    }

    pub fn parse_elements(&self, texts: &[String]) -> Result<Vec<RingElement<K>>> {
        texts
            .iter()
            .map(|t| Ok(self.ring.element(&self.parse_poly(t)?)))
            .collect()
    }
}

pub fn build_ring<K: Field>(
    field: K,
    spec: &RingSpec,
    order: MonomialOrder,
) -> Result<BuiltRing<K>> {
    let pring = PolyRing::new(field, spec.names.len(), order);
    let gens: Result<Vec<Polynomial<K>>> = spec
        .gen_texts
        .iter()
        .map(|t| {
            parse_polynomial(&pring, &spec.names, t).map_err(|e| {
                let (l, c) = line_col(t, e.pos);
                anyhow!(GrammarError {
                    line: l,
                    col: c,
                    message: format!("in `{t}`: {}", e.message)
                })
            })
        })
        .collect();
    let ring =
        QuotientRing::new(pring, &gens?).map_err(|e| anyhow!("cannot build quotient: {e}"))?;
    Ok(BuiltRing {
        ring,
        names: spec.names.clone(),
    })
}

/// Run `f` with the ring built over the field named in the spec.
pub fn with_ring<T>(
    spec: &RingSpec,
    order: MonomialOrder,
    f: impl FnOnce(&dyn RingOps) -> Result<T>,
) -> Result<T> {
    match spec.field {
        FieldSpec::Rational => {
            let built = build_ring(Rationals, spec, order)?;
            f(&RatOps { built })
        }
        FieldSpec::Prime(p) => {
            let field = PrimeField::new(p).map_err(|e| anyhow!("bad field: {e}"))?;
            let built = build_ring(field, spec, order)?;
            f(&FpOps { built })
        }
    }
}

/// Field-erased surface over the operations the CLI needs. Each method
/// produces report fragments; the generic work happens in `run_over`.
pub trait RingOps {
    fn hilbert(&self, ideal_texts: Option<&[String]>) -> Result<(Value, String)>;
    fn gb(&self) -> Result<(Value, String)>;
    fn koszul(&self, ideal_texts: &[String]) -> Result<(Value, String)>;
    fn qci(&self, ideal_texts: &[String]) -> Result<(Value, String, bool)>;
    fn ezd(
        &self,
        ideal_texts: Option<&[String]>,
        deg_bound: u32,
        mode: EzdMode,
    ) -> Result<(Value, String, bool)>;
    fn dual(&self) -> Result<(Value, String)>;
    fn resolve(&self, ideal_texts: Option<&[String]>, hd_bound: usize) -> Result<(Value, String)>;
    fn betti_ambient(&self) -> Result<(Value, String)>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EzdMode {
    Enumerate,
    Symbolic,
    Both,
}

struct FpOps {
    built: BuiltRing<PrimeField>,
}

struct RatOps {
    built: BuiltRing<Rationals>,
}

impl RingOps for FpOps {
    fn hilbert(&self, ideal_texts: Option<&[String]>) -> Result<(Value, String)> {
        hilbert_report(&self.built, ideal_texts)
    }
    fn gb(&self) -> Result<(Value, String)> {
        gb_report(&self.built)
    }
    fn koszul(&self, ideal_texts: &[String]) -> Result<(Value, String)> {
        koszul_report(&self.built, ideal_texts)
    }
    fn qci(&self, ideal_texts: &[String]) -> Result<(Value, String, bool)> {
        qci_report(&self.built, ideal_texts)
    }
    fn ezd(
        &self,
        ideal_texts: Option<&[String]>,
        deg_bound: u32,
        mode: EzdMode,
    ) -> Result<(Value, String, bool)> {
        let mut out = json!({});
        let mut text = String::new();
        let mut found_any = false;
        let mut certified_none = false;
        if mode != EzdMode::Symbolic {
            let inside = match ideal_texts {
                Some(t) => Some(
                    RingIdeal::new(&self.built.ring, &self.built.parse_elements(t)?)
                        .map_err(|e| anyhow!("{e}"))?,
                ),
                None => None,
            };
            let res = ezd_search_enumerate(&self.built.ring, inside.as_ref(), deg_bound);
            let pairs: Vec<Value> = res
                .pairs
                .iter()
                .map(|p| json!({"x": p.x.to_string(), "y": p.y.to_string()}))
                .collect();
            found_any |= !res.pairs.is_empty();
            text.push_str(&format!(
                "enumerative search (degrees <= {deg_bound}): {} verified pair(s), {} candidates\n",
                res.pairs.len(),
                res.candidates_tested
            ));
            for p in &res.pairs {
                text.push_str(&format!("  ({}, {})\n", p.x, p.y));
            }
            out["enumerate"] = json!({
                "pairs": pairs,
                "candidates_tested": res.candidates_tested,
                "degree_bound": deg_bound,
            });
        }
        if mode != EzdMode::Enumerate {
            let (v, t, certified) = symbolic_fragment(&self.built, ideal_texts)?;
            out["symbolic"] = v;
            text.push_str(&t);
            certified_none = certified;
        }
        Ok((out, text, !found_any && !certified_none))
    }
    fn dual(&self) -> Result<(Value, String)> {
        dual_report(&self.built)
    }
    fn resolve(&self, ideal_texts: Option<&[String]>, hd_bound: usize) -> Result<(Value, String)> {
        resolve_report(&self.built, ideal_texts, hd_bound)
    }
    fn betti_ambient(&self) -> Result<(Value, String)> {
        ambient_report(&self.built)
    }
}

impl RingOps for RatOps {
    fn hilbert(&self, ideal_texts: Option<&[String]>) -> Result<(Value, String)> {
        hilbert_report(&self.built, ideal_texts)
    }
    fn gb(&self) -> Result<(Value, String)> {
        gb_report(&self.built)
    }
    fn koszul(&self, ideal_texts: &[String]) -> Result<(Value, String)> {
        koszul_report(&self.built, ideal_texts)
    }
    fn qci(&self, ideal_texts: &[String]) -> Result<(Value, String, bool)> {
        qci_report(&self.built, ideal_texts)
    }
    fn ezd(
        &self,
        ideal_texts: Option<&[String]>,
        _deg_bound: u32,
        mode: EzdMode,
    ) -> Result<(Value, String, bool)> {
        if mode == EzdMode::Enumerate {
            bail!("unsupported mode: enumerative search needs a finite coefficient field");
        }
        let (v, t, certified) = symbolic_fragment(&self.built, ideal_texts)?;
        Ok((json!({"symbolic": v}), t, !certified))
    }
    fn dual(&self) -> Result<(Value, String)> {
        dual_report(&self.built)
    }
    fn resolve(&self, ideal_texts: Option<&[String]>, hd_bound: usize) -> Result<(Value, String)> {
        resolve_report(&self.built, ideal_texts, hd_bound)
    }
    fn betti_ambient(&self) -> Result<(Value, String)> {
        ambient_report(&self.built)
    }
}

fn hilbert_report<K: Field>(
    built: &BuiltRing<K>,
    ideal_texts: Option<&[String]>,
) -> Result<(Value, String)> {
    let h = built.ring.hilbert_series();
    let mut v = json!({
        "hilbert": h,
        "total_dimension": built.ring.total_dim(),
        "loewy_length": built.ring.loewy_length(),
    });
    let mut text = format!(
        "H_R = {}  (dim {}, Loewy length {})\n",
        hilbert_string(&h),
        built.ring.total_dim(),
        built.ring.loewy_length()
    );
    if let Some(texts) = ideal_texts {
        let ideal = RingIdeal::new(&built.ring, &built.parse_elements(texts)?)
            .map_err(|e| anyhow!("{e}"))?;
        let hq = built.ring.quotient_hilbert(&ideal);
        text.push_str(&format!("H_R/I = {}\n", hilbert_string(&hq)));
        v["hilbert_quotient"] = json!(hq);
    }
    Ok((v, text))
}

fn gb_report<K: Field>(built: &BuiltRing<K>) -> Result<(Value, String)> {
    let gb = built.ring.groebner();
    let gens: Vec<String> = gb.generators().iter().map(|g| g.to_string()).collect();
    let staircase: Vec<String> = gb.staircase().iter().map(|m| m.to_string()).collect();
    let mut std_monomials = Vec::new();
    for d in 0..=built.ring.top_degree() {
        let ms: Vec<String> = built
            .ring
            .basis_at(d)
            .iter()
            .map(|m| m.to_string())
            .collect();
        std_monomials.push(json!({"degree": d, "monomials": ms}));
    }
    let text = format!(
        "reduced Groebner basis ({} generators):\n{}staircase: {}\n",
        gens.len(),
        render_basis(gb),
        staircase.join(", ")
    );
    Ok((
        json!({"generators": gens, "staircase": staircase, "standard_monomials": std_monomials}),
        text,
    ))
}

fn koszul_report<K: Field>(
    built: &BuiltRing<K>,
    ideal_texts: &[String],
) -> Result<(Value, String)> {
    let seq = built.parse_elements(ideal_texts)?;
    let complex = KoszulComplex::new(&built.ring, &seq).map_err(|e| anyhow!("{e}"))?;
    let report = complex.homology_report();
    let n = seq.len();
    let mut levels = Vec::new();
    let mut text = String::new();
    for p in 0..=n {
        let mut per_degree = Vec::new();
        for (d, dims) in &report.levels[p] {
            per_degree.push(json!({
                "degree": d,
                "cycles": dims.cycles,
                "boundaries": dims.boundaries,
                "homology": dims.homology,
            }));
        }
        text.push_str(&format!(
            "H_{p}: total {} (cycles {}, boundaries {})\n",
            report.total_homology(p),
            report.total_cycles(p),
            report.total_boundaries(p)
        ));
        for (d, dims) in &report.levels[p] {
            if dims.cycles + dims.boundaries > 0 {
                text.push_str(&format!(
                    "  degree {d}: Z {} B {} H {}\n",
                    dims.cycles, dims.boundaries, dims.homology
                ));
            }
        }
        levels.push(json!({
            "p": p,
            "total_cycles": report.total_cycles(p),
            "total_boundaries": report.total_boundaries(p),
            "total_homology": report.total_homology(p),
            "per_degree": per_degree,
        }));
    }
    text.push_str(&format!(
        "Euler characteristic: {}\n",
        report.euler_characteristic()
    ));
    let h1: Vec<Value> = report
        .h1_generators
        .iter()
        .map(|(d, v)| {
            json!({
                "degree": d,
                "coefficients": v.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok((
        json!({
            "levels": levels,
            "euler_characteristic": report.euler_characteristic(),
            "h1_minimal_generators": h1,
        }),
        text,
    ))
}

fn qci_report<K: Field>(
    built: &BuiltRing<K>,
    ideal_texts: &[String],
) -> Result<(Value, String, bool)> {
    let seq = built.parse_elements(ideal_texts)?;
    let outcome = qci_check(&built.ring, &seq).map_err(|e| anyhow!("{e}"))?;
    match outcome {
        QciOutcome::Certificate(cert) => {
            let a: Vec<Vec<String>> = cert
                .matrix_a
                .iter()
                .map(|row| row.iter().map(|e| e.to_string()).collect())
                .collect();
            let v = json!({
                "qci": true,
                "n": cert.n,
                "grade": cert.grade,
                "matrix_a": a,
                "delta": cert.delta.to_string(),
                "s_hilbert": cert.s_hilbert,
                "duality": {
                    "ann_ideal_is_principal_delta": cert.duality.ann_ideal_is_principal_delta,
                    "ann_delta_is_ideal": cert.duality.ann_delta_is_ideal,
                    "delta_in_mn": cert.duality.delta_in_mn,
                },
                "homology_totals": (0..=cert.n)
                    .map(|p| cert.report.total_homology(p))
                    .collect::<Vec<_>>(),
            });
            let text = format!("q.c.i. certificate\n{}", render_certificate(&cert));
            Ok((v, text, false))
        }
        QciOutcome::Refuted(r) => {
            let v = json!({"qci": false, "refutation": r.to_string()});
            Ok((v, format!("not a q.c.i. ideal: {r}\n"), true))
        }
    }
}

fn symbolic_fragment<K: Field>(
    built: &BuiltRing<K>,
    ideal_texts: Option<&[String]>,
) -> Result<(Value, String, bool)> {
    let lifts: Option<Vec<Polynomial<K>>> = match ideal_texts {
        Some(ts) => Some(
            ts.iter()
                .map(|t| built.parse_poly(t))
                .collect::<Result<_>>()?,
        ),
        None => None,
    };
    let obs = ezd_factor_obstruction(&built.ring, lifts.as_deref()).map_err(|e| anyhow!("{e}"))?;
    let system: Vec<String> = obs.system.iter().map(|e| e.to_string()).collect();
    let certified = obs.certified_none_exist();
    let text = match obs.certified_power {
        Some(e) => format!(
            "symbolic obstruction: only trivial factorizations; (span * linear)^{e} is contained in the {}-expression ideal\n",
            system.len()
        ),
        None => format!(
            "symbolic obstruction: inconclusive ({} expressions; no small power containment)\n",
            system.len()
        ),
    };
    Ok((
        json!({"system": system, "certified_power": obs.certified_power}),
        text,
        certified,
    ))
}

fn dual_report<K: Field>(built: &BuiltRing<K>) -> Result<(Value, String)> {
    let dual = QuadraticDual::new(&built.ring).map_err(|e| anyhow!("{e}"))?;
    let dims = dual.dims();
    let center = dual.degree2_commutant().map_err(|e| anyhow!("{e}"))?;
    let basis: Vec<Vec<String>> = center
        .iter()
        .map(|v| v.iter().map(|c| format!("{c:?}")).collect())
        .collect();
    let text = format!(
        "quadratic dual dimensions (degrees 0..3): {:?}\ndegree-2 commutant dimension: {}\n",
        dims,
        center.len()
    );
    Ok((
        json!({
            "dims": dims,
            "commutant_dimension": center.len(),
            "commutant_basis": basis,
            "associative": dual.associativity_holds(),
        }),
        text,
    ))
}

fn resolve_report<K: Field>(
    built: &BuiltRing<K>,
    ideal_texts: Option<&[String]>,
    hd_bound: usize,
) -> Result<(Value, String)> {
    let ideal = match ideal_texts {
        Some(ts) => {
            RingIdeal::new(&built.ring, &built.parse_elements(ts)?).map_err(|e| anyhow!("{e}"))?
        }
        None => RingIdeal::maximal(&built.ring),
    };
    let table = minimal_resolution(&built.ring, &ideal, hd_bound);
    let entries: Vec<Value> = table
        .entries
        .iter()
        .filter(|(_, v)| **v > 0)
        .map(|(&(i, j), &v)| json!({"i": i, "j": j, "beta": v}))
        .collect();
    let text = format!(
        "graded betti numbers up to homological degree {hd_bound}:\n{}totals: {:?}\n",
        table.render(),
        table.totals()
    );
    Ok((
        json!({"entries": entries, "totals": table.totals(), "hd_bound": hd_bound}),
        text,
    ))
}

fn ambient_report<K: Field>(built: &BuiltRing<K>) -> Result<(Value, String)> {
    let betti = ambient_betti(&built.ring).map_err(|e| anyhow!("{e}"))?;
    let ci = is_complete_intersection(&built.ring).map_err(|e| anyhow!("{e}"))?;
    let text = format!(
        "betti numbers over the polynomial ambient: {betti:?}\ncomplete intersection: {ci}\n"
    );
    Ok((json!({"betti": betti, "complete_intersection": ci}), text))
}

/// Obstruction report bundling the q.c.i. certificate with the dual-center
/// comparison; needs the sequence of ideal generators.
pub fn obstruction_report<K: SqrtField>(
    built: &BuiltRing<K>,
    ideal_texts: &[String],
    koszul_bound: usize,
) -> Result<(Value, String, bool)> {
    let seq = built.parse_elements(ideal_texts)?;
    let outcome = qci_check(&built.ring, &seq).map_err(|e| anyhow!("{e}"))?;
    let QciOutcome::Certificate(cert) = outcome else {
        bail!("embeddedness obstruction needs a q.c.i. certificate");
    };
    let verdict =
        embeddedness_obstruction(&built.ring, &cert, koszul_bound).map_err(|e| anyhow!("{e}"))?;
    let (v, t, negative) = match verdict {
        qci_core::resolution::Embeddedness::NotEmbedded { complexity, zeta2 } => (
            json!({"verdict": "not-embedded", "complexity": complexity, "zeta2": zeta2}),
            format!("not embedded: cx = {complexity} > {zeta2} = rank zeta^2 (proxy)\n"),
            false,
        ),
        qci_core::resolution::Embeddedness::Inconclusive { complexity, zeta2 } => (
            json!({"verdict": "inconclusive", "complexity": complexity, "zeta2": zeta2}),
            format!("inconclusive: cx = {complexity} <= {zeta2} = rank zeta^2 (proxy)\n"),
            true,
        ),
    };
    Ok((v, t, negative))
}

/// Top-level dispatch used by the binary.
#[allow(clippy::too_many_arguments)]
pub fn run_command(
    command: &str,
    ring_text: Option<&str>,
    ideal_text: Option<&str>,
    order: MonomialOrder,
    deg_bound: u32,
    hd_bound: usize,
    mode: EzdMode,
) -> Result<Report> {
    let ring_spec = match ring_text {
        Some(t) => Some(crate::grammar::parse_ring_spec(t)?),
        None => None,
    };
    let ideal_gens: Option<Vec<String>> = match ideal_text {
        Some(t) => Some(crate::grammar::parse_ideal_spec(t)?),
        None => None,
    };
    let spec = ring_spec
        .as_ref()
        .ok_or_else(|| anyhow!("this command needs --ring"))?;
    let mut envelope = envelope(command, Some(spec), order);
    if let Some(i) = ideal_text {
        envelope["ideal"] = json!(i.trim());
    }
    let report = match command {
        "hilbert" => {
            let (v, t) = with_ring(spec, order, |ops| ops.hilbert(ideal_gens.as_deref()))?;
            envelope["result"] = v;
            Report::new(t, envelope)
        }
        "gb" => {
            let (v, t) = with_ring(spec, order, |ops| ops.gb())?;
            envelope["result"] = v;
            Report::new(t, envelope)
        }
        "koszul" => {
            let gens = ideal_gens.ok_or_else(|| anyhow!("koszul needs --ideal"))?;
            let (v, t) = with_ring(spec, order, |ops| ops.koszul(&gens))?;
            envelope["result"] = v;
            Report::new(t, envelope)
        }
        "qci" => {
            let gens = ideal_gens.ok_or_else(|| anyhow!("qci needs --ideal"))?;
            let (v, t, negative) = with_ring(spec, order, |ops| ops.qci(&gens))?;
            envelope["result"] = v;
            let mut r = Report::new(t, envelope);
            r.negative = negative;
            r
        }
        "ezd" => {
            let (v, t, negative) = with_ring(spec, order, |ops| {
                ops.ezd(ideal_gens.as_deref(), deg_bound, mode)
            })?;
            envelope["result"] = v;
            let mut r = Report::new(t, envelope);
            r.negative = negative;
            r
        }
        "dual" => {
            let (v, t) = with_ring(spec, order, |ops| ops.dual())?;
            envelope["result"] = v;
            Report::new(t, envelope)
        }
        "resolve" => {
            let (v, t) = with_ring(spec, order, |ops| {
                ops.resolve(ideal_gens.as_deref(), hd_bound)
            })?;
            envelope["result"] = v;
            Report::new(t, envelope)
        }
        "betti-ambient" => {
            let (v, t) = with_ring(spec, order, |ops| ops.betti_ambient())?;
            envelope["result"] = v;
            Report::new(t, envelope)
        }
        other => bail!("unknown command {other}"),
    };
    Ok(report)
}

/// The quadrics experiment report (finite fields only).
pub fn quadrics_report(n: usize, prime: u64, trials: u64, seed: u64) -> Result<Report> {
    if n == 0 {
        bail!("n must be positive");
    }
    PrimeField::new(prime).map_err(|e| anyhow!("bad prime: {e}"))?;
    let config = ExperimentConfig {
        n,
        prime,
        trials,
        seed,
    };
    let report = run_experiment(&config);
    let mut trials_json = Vec::new();
    let mut text = format!(
        "quadrics experiment: n = {n}, p = {prime}, trials = {trials}, seed = {seed}, rng = chacha8 (stream = trial)\n"
    );
    for t in &report.trials {
        let pair = t
            .exact_pair
            .as_ref()
            .map(|(x, y)| json!({"x": x, "y": y, "over_extension": t.pair_over_extension}));
        trials_json.push(json!({
            "trial": t.trial,
            "discards": t.discards,
            "regular": t.regular,
            "pencil_reducible_exact": t.pencil_reducible_exact,
            "pencil_witness": t.pencil_witness,
            "exact_pair": pair,
            "existence_without_witness": t.existence_without_witness,
            "candidates_scanned": t.candidates_scanned,
            "anomalies": t.anomalies,
        }));
        let status = match (&t.exact_pair, t.existence_without_witness) {
            (Some((x, y)), _) => format!(
                "pair ({x}, {y}){}",
                if t.pair_over_extension {
                    " over F_p^2"
                } else {
                    ""
                }
            ),
            (None, true) => "existence certified, no F_p witness".to_string(),
            (None, false) => "no reducible pencil".to_string(),
        };
        text.push_str(&format!(
            "trial {:>2}: discards {} regular {} in-X {} | {}{}\n",
            t.trial,
            t.discards,
            t.regular,
            t.pencil_reducible_exact,
            status,
            if t.anomalies.is_empty() {
                String::new()
            } else {
                format!(" ANOMALIES: {}", t.anomalies.join("; "))
            }
        ));
    }
    let pairs = report.pairs_found();
    let anomalies = report.anomaly_count();
    text.push_str(&format!(
        "aggregate: {pairs}/{} trials with verified pairs, {} existence-only, {anomalies} anomalies\n",
        report.trials.len(),
        report.trials.iter().filter(|t| t.existence_without_witness).count(),
    ));
    let json = json!({
        "schema": "qci.experiment/1",
        "version": env!("CARGO_PKG_VERSION"),
        "command": "quadrics",
        "config": {
            "n": n, "prime": prime, "trials": trials, "seed": seed,
            "rng": "chacha8 seed_from_u64; trial stream via set_stream",
        },
        "trials": trials_json,
        "aggregate": {
            "pairs_found": pairs,
            "existence_without_witness": report.trials.iter().filter(|t| t.existence_without_witness).count(),
            "anomalies": anomalies,
        },
    });
    let mut r = Report::new(text, json);
    r.negative = pairs == 0;
    r.inconsistent = report.trials.iter().any(|t| {
        t.anomalies
            .iter()
            .any(|a| a.contains("internal inconsistency"))
    });
    Ok(r)
}

/// Witness-matrix check over F_p.
pub fn witness_report(n: usize, prime: u64) -> Result<Report> {
    let field = PrimeField::new(prime).map_err(|e| anyhow!("bad prime: {e}"))?;
    let primary = witness_matrix_check(field, n);
    let text = format!("I_3(W_{n}) primary to the irrelevant ideal over F{prime}: {primary}\n");
    let json = json!({
        "schema": SCHEMA,
        "version": env!("CARGO_PKG_VERSION"),
        "command": "witness-matrix",
        "n": n,
        "prime": prime,
        "primary": primary,
    });
    let mut r = Report::new(text, json);
    r.negative = !primary;
    Ok(r)
}
