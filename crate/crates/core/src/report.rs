//! Structured reports shared by the command-line front end and the tests.
//!
//! Every pipeline returns a [`Report`] with the fields `command`, `inputs`,
//! `perK`, `classification`, `badEps` and `verdict`, plus optional free-form
//! `details`. [`Report::to_text`] renders the human-readable form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Element, PDAlgebra};
use crate::fibration::{BuildError, EpsChoice, FibrationField, FibrationSpec, TotalSpaceRing};
use crate::fixtures;
use crate::lefschetz::{classify, surj_inj_consistency, Classification, LefschetzError, LefschetzReport, SymbolicRank};
use crate::moment::{zero_level_probe, LieAlgebraBasis, LieGroup, MomentError};
use crate::ringfile::emit_ring;
use crate::scalars::{EpsFraction, EpsPoly, Field, Rational};

/// One Lefschetz map of one ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PerK {
    pub ring: String,
    pub k: usize,
    pub source_degree: usize,
    pub target_degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub isomorphism: bool,
    /// Rendered kernel basis.
    pub kernel: Vec<String>,
    /// Monic polynomial in ε whose roots contain the parameters where this
    /// map loses rank; only present over Q(ε).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_drop: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdict {
    pub holds: bool,
    pub summary: String,
    /// Machine-readable list of the properties that failed.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub per_k: Vec<PerK>,
    pub classification: Value,
    pub bad_eps: Value,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
    /// Extra lines for the text rendering only.
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            per_k: Vec::new(),
            classification: Value::Null,
            bad_eps: Value::Null,
            verdict: Verdict { holds: true, summary: String::new(), failures: Vec::new() },
            details: Value::Null,
            notes: Vec::new(),
        }
    }

    fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    fn require(&mut self, ok: bool, failure: impl Into<String>) {
        if !ok {
            self.verdict.holds = false;
            self.verdict.failures.push(failure.into());
        }
    }

    fn conclude(&mut self, holds_summary: &str, violated_summary: &str) {
        self.verdict.summary =
            if self.verdict.holds { holds_summary } else { violated_summary }.to_string();
    }

    /// 0 when every asserted property holds, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.verdict.holds {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for (k, v) in &self.inputs {
            writeln!(out, "  {k}: {}", compact(v)).unwrap();
        }
        if !self.per_k.is_empty() {
            writeln!(out, "Lefschetz maps:").unwrap();
            let width = self.per_k.iter().map(|p| p.ring.len()).max().unwrap_or(4).max(4);
            writeln!(
                out,
                "  {:width$}  {:>2}  {:>9}  {:>7}  {:>4}  {:>6}  {:>3}  rank drop",
                "ring", "k", "degrees", "dims", "rank", "kernel", "iso"
            )
            .unwrap();
            for p in &self.per_k {
                writeln!(
                    out,
                    "  {:width$}  {:>2}  {:>9}  {:>7}  {:>4}  {:>6}  {:>3}  {}",
                    p.ring,
                    p.k,
                    format!("{}->{}", p.source_degree, p.target_degree),
                    format!("{}->{}", p.source_dim, p.target_dim),
                    p.rank,
                    p.kernel_dim,
                    if p.isomorphism { "yes" } else { "no" },
                    p.rank_drop.as_deref().unwrap_or("-"),
                )
                .unwrap();
                for v in &p.kernel {
                    writeln!(out, "  {:width$}      kernel: {v}", "").unwrap();
                }
            }
        }
        write_value(&mut out, "classification", &self.classification);
        write_value(&mut out, "badEps", &self.bad_eps);
        for line in &self.notes {
            writeln!(out, "{line}").unwrap();
        }
        let status = if self.verdict.holds { "HOLDS" } else { "VIOLATED" };
        writeln!(out, "verdict: {status}: {}", self.verdict.summary).unwrap();
        for f in &self.verdict.failures {
            writeln!(out, "  failure: {f}").unwrap();
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn write_value(out: &mut String, label: &str, v: &Value) {
    match v {
        Value::Null => {}
        Value::Object(map) => {
            writeln!(out, "{label}:").unwrap();
            for (k, v) in map {
                writeln!(out, "  {k}: {}", compact(v)).unwrap();
            }
        }
        other => writeln!(out, "{label}: {}", compact(other)).unwrap(),
    }
}

/// Rows of `report`, with kernel vectors rendered in the ring's basis.
pub fn per_k_rows<F: Field>(a: &PDAlgebra<F>, report: &LefschetzReport<F>) -> Vec<PerK> {
    report
        .per_k
        .iter()
        .map(|map| {
            let range = a.basis().range(map.source_degree);
            PerK {
                ring: a.name().to_string(),
                k: map.k,
                source_degree: map.source_degree,
                target_degree: map.target_degree,
                source_dim: map.source_dim,
                target_dim: map.target_dim,
                rank: map.rank,
                kernel_dim: map.kernel.dim(),
                isomorphism: map.is_isomorphism(),
                kernel: map
                    .kernel
                    .vectors
                    .iter()
                    .map(|v| a.render(&Element::from_terms(range.clone().zip(v.iter().cloned()))))
                    .collect(),
                rank_drop: map.rank_drop.as_ref().map(|d| d.polynomial.to_string()),
            }
        })
        .collect()
}

/// Full axiom scan.
pub fn axioms<F: Field>(a: &PDAlgebra<F>) -> Report {
    let mut r = Report::new("axioms").input("ring", a.name()).input("scalars", F::MODE.to_string());
    let scan = a.check_axioms();
    for v in &scan.violations {
        r.require(false, v.to_string());
    }
    r.details = json!({ "violations": scan.violations, "dimension": a.dim() });
    r.conclude("all algebra axioms hold", "algebra axioms violated");
    r
}

/// Nondegeneracy of every pairing `H^k × H^{top−k} → Q`.
pub fn duality<F: Field>(a: &PDAlgebra<F>) -> Report {
    let mut r = Report::new("duality").input("ring", a.name()).input("scalars", F::MODE.to_string());
    let d = a.check_poincare_duality();
    for e in &d.entries {
        r.notes.push(format!(
            "  H^{} x H^{}: dims {} x {}, det {}, {}",
            e.k,
            a.top_degree() - e.k,
            e.dim,
            e.dual_dim,
            e.determinant.as_deref().unwrap_or("-"),
            if e.nondegenerate { "nondegenerate" } else { "DEGENERATE" }
        ));
        r.require(e.nondegenerate, format!("pairing in degree {} is degenerate", e.k));
    }
    r.details = json!({ "pairings": d.entries });
    r.conclude("Poincaré duality holds", "Poincaré duality fails");
    r
}

fn classification_value(report: &LefschetzReport<impl Field>) -> Value {
    Value::String(report.classification.to_string())
}

fn bad_eps_value(p: &Option<EpsPoly>) -> Value {
    p.as_ref().map_or(Value::Null, |p| Value::String(p.to_string()))
}

/// Lefschetz maps of `omega`. The asserted property is the rank/kernel
/// cross-check; the classification itself is the result.
pub fn lefschetz<F: SymbolicRank>(a: &PDAlgebra<F>, omega: &Element<F>) -> Result<Report, LefschetzError> {
    let mut r = Report::new("lefschetz")
        .input("ring", a.name())
        .input("omega", a.render(omega))
        .input("scalars", F::MODE.to_string());
    let report = classify(a, omega)?;
    let consistency = surj_inj_consistency(a, omega)?;
    r.per_k = per_k_rows(a, &report);
    r.classification = classification_value(&report);
    r.bad_eps = bad_eps_value(&report.bad_eps);
    for e in &consistency.entries {
        r.require(e.dims_match && e.consistent, format!("rank/kernel cross-check fails at k = {}", e.k));
    }
    r.conclude(
        &format!("classification {}", report.classification),
        "Lefschetz map cross-check failed",
    );
    Ok(r)
}

fn check_total_space<F: FibrationField>(r: &mut Report, ring: &TotalSpaceRing<F>) -> LefschetzReport<F> {
    let a = &ring.algebra;
    let n = ring.fiber_dim();
    r.require(a.dim() == ring.base.dim() * (n + 1), format!("{}: dimension {} is not rank(B)(n+1)", a.name(), a.dim()));
    r.require(ring.relation_holds(), format!("{}: u^(n+1) relation fails", a.name()));
    let u = ring.u();
    let lhs = a.power(&u, n + 2);
    let b = &ring.betas;
    let rhs = ring.lift(&b.beta4.add(&ring.base.multiply(&b.beta2, &b.beta2)), n);
    r.require(lhs == rhs, format!("{}: u^(n+2) = (b4 + b2^2) u^n fails", a.name()));
    let axioms = a.check_axioms();
    r.require(axioms.passed(), format!("{}: {} axiom violations", a.name(), axioms.violations.len()));
    r.require(a.check_poincare_duality().passed(), format!("{}: Poincaré duality fails", a.name()));
    let report = classify(a, &ring.omega_total).expect("omega total has degree 2");
    let consistency = surj_inj_consistency(a, &ring.omega_total).expect("omega total has degree 2");
    r.require(consistency.passed(), format!("{}: rank/kernel cross-check fails", a.name()));
    r.per_k.extend(per_k_rows(a, &report));
    report
}

fn spec_inputs(r: Report, spec: &FibrationSpec) -> Report {
    r.input("base", spec.base.name())
        .input("chern", spec.base.render(&spec.chern))
        .input("fiberDim", spec.fiber_dim)
        .input("epsilon", spec.eps.to_string())
}

/// Builds the total space and checks it is a Poincaré-duality algebra obeying
/// its defining relation. The emitted ring is in `details.ring`.
pub fn build(spec: &FibrationSpec) -> Result<Report, BuildError> {
    let mut r = spec_inputs(Report::new("build"), spec);
    let (name, dim, text) = match spec.eps {
        EpsChoice::Symbolic => {
            let ring = TotalSpaceRing::<EpsFraction>::build(spec)?;
            let report = check_total_space(&mut r, &ring);
            r.classification = classification_value(&report);
            r.bad_eps = bad_eps_value(&report.bad_eps);
            (ring.algebra.name().to_string(), ring.algebra.dim(), emit_ring(&ring.algebra))
        }
        EpsChoice::Value(_) => {
            let ring = TotalSpaceRing::<Rational>::build(spec)?;
            let report = check_total_space(&mut r, &ring);
            r.classification = classification_value(&report);
            (ring.algebra.name().to_string(), ring.algebra.dim(), emit_ring(&ring.algebra))
        }
    };
    r.notes.push(format!("total space {name}: dimension {dim}"));
    r.notes.push(format!("ring file:\n{}", text.trim_end()));
    r.details = json!({ "dimension": dim, "ring": text });
    r.conclude("total space is a Poincaré-duality algebra", "total space construction check failed");
    Ok(r)
}

/// Symbolic builds for each fibre dimension, with the rational roots of badEps.
pub fn genericity(
    base: &PDAlgebra<Rational>,
    chern: &Element<Rational>,
    fiber_dims: &[usize],
) -> Result<Report, BuildError> {
    let mut r = Report::new("genericity")
        .input("base", base.name())
        .input("chern", base.render(chern))
        .input("fiberDims", fiber_dims.to_vec());
    let mut classes = serde_json::Map::new();
    let mut bad = serde_json::Map::new();
    let mut roots = serde_json::Map::new();
    for &n in fiber_dims {
        let spec = FibrationSpec::new(base.clone(), chern.clone(), n, EpsChoice::Symbolic)?;
        let ring = TotalSpaceRing::<EpsFraction>::build(&spec)?;
        let report = classify(&ring.algebra, &ring.omega_total).expect("omega total has degree 2");
        r.per_k.extend(per_k_rows(&ring.algebra, &report));
        let key = format!("n={n}");
        classes.insert(key.clone(), report.classification.to_string().into());
        r.require(
            report.classification == Classification::StrongLefschetz,
            format!("n = {n}: generic classification is {}", report.classification),
        );
        let poly = report.bad_eps.clone().unwrap_or_else(EpsPoly::one);
        bad.insert(key.clone(), poly.to_string().into());
        let rr = poly.rational_roots()?;
        roots.insert(
            key,
            json!({
                "rationalRoots": rr.distinct().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "residual": rr.residual.to_string(),
            }),
        );
    }
    r.classification = Value::Object(classes);
    r.bad_eps = Value::Object(bad);
    r.notes.push(format!("badEps rational roots: {}", Value::Object(roots.clone())));
    r.details = json!({ "roots": roots });
    r.conclude(
        "strong Lefschetz for every ε outside the roots of badEps",
        "not generically strong Lefschetz",
    );
    Ok(r)
}

/// Seeded zero-level probe of the standard moment map.
pub fn moment(group: LieGroup, n: usize, samples: usize, seed: u64) -> Result<Report, MomentError> {
    let mut r = Report::new("moment")
        .input("group", group.to_string())
        .input("n", n)
        .input("samples", samples)
        .input("seed", seed);
    let basis = LieAlgebraBasis::new(group, n)?;
    let probe = zero_level_probe(&basis, samples, seed)?;
    r.require(probe.counterexamples.is_empty(), format!("{} nonzero vectors in the zero level", probe.counterexamples.len()));
    r.require(probe.non_real_samples == 0, "non-real pairing");
    r.require(probe.scaling_failures == 0, "t^2 scaling law fails");
    r.require(probe.weyl_failures == 0, "Weyl permutation invariance fails");
    r.require(probe.zero_maps_to_zero, "psi(0) is not zero");
    r.notes.push(probe.to_string());
    r.details = serde_json::to_value(&probe).expect("probe is serializable");
    r.conclude("no zero-level counterexamples found (sampling evidence, not a proof)", "moment probe failed");
    Ok(r)
}

/// Full pipeline: the base is not Lefschetz, every total space is strong
/// Lefschetz over Q(ε) with badEps vanishing only at 0, and the same holds
/// after specializing to ε = 1.
pub fn reproduce_theorem1(fiber_dims: &[usize]) -> Result<Report, BuildError> {
    let base = fixtures::gompf_formal();
    let w = base.basis_element("w")?;
    let c = base.basis_element("c")?;
    let mut r = Report::new("reproduce-theorem1")
        .input("base", base.name())
        .input("omega", "w")
        .input("chern", "c")
        .input("fiberDims", fiber_dims.to_vec())
        .input("specializeAt", "1");
    let mut classes = serde_json::Map::new();
    let mut bad = serde_json::Map::new();

    let base_report = classify(&base, &w).expect("w has degree 2");
    r.per_k.extend(per_k_rows(&base, &base_report));
    classes.insert(base.name().to_string(), base_report.classification.to_string().into());
    let m = base.basis().half_dim();
    let middle = base_report.map(m - 1).expect("m ≥ 1");
    r.require(
        middle.rank == 0 && middle.source_dim == 2,
        format!("base: k = {} map has rank {} on a {}-dimensional space", m - 1, middle.rank, middle.source_dim),
    );
    r.require(
        base_report.classification == Classification::Neither,
        format!("base: expected neither, got {}", base_report.classification),
    );

    let one = Rational::one();
    for &n in fiber_dims {
        let spec = FibrationSpec::new(base.clone(), c.clone(), n, EpsChoice::Symbolic)?;
        let ring = TotalSpaceRing::<EpsFraction>::build(&spec)?;
        let report = check_total_space(&mut r, &ring);
        let name = ring.algebra.name().to_string();
        classes.insert(name.clone(), report.classification.to_string().into());
        r.require(
            report.classification == Classification::StrongLefschetz,
            format!("{name}: expected strongLefschetz over Q(ε), got {}", report.classification),
        );
        let poly = report.bad_eps.clone().unwrap_or_else(EpsPoly::one);
        bad.insert(format!("n={n}"), poly.to_string().into());
        let rr = poly.rational_roots()?;
        r.require(
            rr.distinct() == vec![Rational::zero()],
            format!("n = {n}: badEps {poly} does not have 0 as its only rational root"),
        );

        let special = ring.specialize(&one)?;
        let special_report = check_total_space(&mut r, &special);
        classes.insert(special.algebra.name().to_string(), special_report.classification.to_string().into());
        r.require(
            special_report.classification == Classification::StrongLefschetz,
            format!("n = {n}, ε = 1: expected strongLefschetz, got {}", special_report.classification),
        );
    }
    r.classification = Value::Object(classes);
    r.bad_eps = Value::Object(bad);
    r.conclude(
        "base is not Lefschetz; every total space is strong Lefschetz for ε outside the roots of badEps",
        "reproduction failed",
    );
    Ok(r)
}
