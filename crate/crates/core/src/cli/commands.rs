//! The six report-producing commands.

use serde_json::{json, Map, Value};

use super::doc::{Kind, Loaded};
use super::report::{matrix, scalar, vectors, Report, Status};
use crate::cartan::{KForm, OneForm, VectorField};
use crate::error::GcError;
use crate::exact::{monomial_in, CMatrix, GaussianRational, PolyMatrix, Polynomial, Rational, Subspace};
use crate::field::FieldGC;
use crate::linear::{ConstantGC, PairingSpace, RandomGc};
use crate::linearize::{
    abelian, constant_b_transform, first_order_data, non_abelian_plane, normalize_point, real_model_checks, AdClass,
    ComplexLieAlgebra, LieInvariants,
};
use crate::normal_form::{
    extend_bfield, extension_identities, ftc_identity, step3_bfield, FlowIdentity, LeafFamilyB, ProductChart,
};

const MAX_RESIDUALS: usize = 16;
const RANDOM_PAIRS: usize = 4;
const RANDOM_SEED: u64 = 0x6763;

fn matrix_residuals(m: &PolyMatrix) -> Vec<String> {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| !m[(i, j)].is_zero())
        .take(MAX_RESIDUALS)
        .map(|(i, j)| format!("({i}, {j}): {}", m[(i, j)]))
        .collect()
}

fn form_residuals(k: &KForm) -> Vec<String> {
    let names = k.vars().names();
    k.components()
        .take(MAX_RESIDUALS)
        .map(|(idx, c)| {
            let basis: Vec<String> = idx.iter().map(|&i| format!("d{}", names[i])).collect();
            if basis.is_empty() {
                c.to_string()
            } else {
                format!("{}: {c}", basis.join("^"))
            }
        })
        .collect()
}

fn one_form_residuals(label: &str, xi: &OneForm) -> Option<String> {
    (!xi.is_zero()).then(|| format!("{label}: {xi}"))
}

fn poly_matrix_value(m: &PolyMatrix) -> Value {
    json!((0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn form_value(k: &KForm) -> Value {
    Value::String(k.to_string())
}

fn vector_value(v: &[GaussianRational]) -> Value {
    json!(v.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn gcerror_status(e: &GcError) -> Status {
    match e {
        GcError::Unsupported(_) => Status::Unsupported,
        GcError::Constraint { .. } | GcError::Precondition(_) | GcError::LieAlgebra(_) | GcError::NotTransverse => {
            Status::Fail
        }
        _ => Status::Error,
    }
}

fn origin(d: usize) -> Vec<Rational> {
    vec![Rational::from_integer(0.into()); d]
}

/// Residuals of `reality`, `square`, `pairing` and `blocks`.
fn constraint_checks(report: &mut Report, m: &PolyMatrix, d: usize) -> bool {
    let z = m.zero_elem().clone();
    let gram = PolyMatrix::from_constant(&PairingSpace::new(d).gram(), &z);
    let id = PolyMatrix::identity(2 * d, &z);
    let reality = m.map(&z, Polynomial::im);
    let square = m.try_mul(m).and_then(|s| s.try_add(&id)).expect("square shapes");
    let pairing =
        m.transpose().try_mul(&gram).and_then(|p| p.try_mul(m)).and_then(|p| p.try_sub(&gram)).expect("shapes");
    let j = m.block(0, 0, d, d);
    let pi = m.block(0, d, d, d);
    let sigma = m.block(d, 0, d, d);
    let k = m.block(d, d, d, d);
    let mut blocks = Vec::new();
    for (label, r) in [
        ("lower-right + upper-left transpose", k.try_add(&j.transpose())),
        ("upper-right skew part", pi.try_add(&pi.transpose())),
        ("lower-left skew part", sigma.try_add(&sigma.transpose())),
    ] {
        blocks.extend(matrix_residuals(&r.expect("square blocks")).into_iter().map(|s| format!("{label} {s}")));
    }
    let entries = [
        ("reality", matrix_residuals(&reality), "the matrix has real entries"),
        ("square", matrix_residuals(&square), "J² + I = 0"),
        ("pairing", matrix_residuals(&pairing), "Jᵀ G J = G for the pairing G"),
        ("blocks", blocks, "block form [[J, π], [σ, −Jᵀ]] with π, σ skew"),
    ];
    let mut ok = true;
    for (name, residuals, detail) in entries {
        ok &= residuals.is_empty();
        report.residual_check(name, residuals, detail);
    }
    ok
}

fn field_of(report: &mut Report, doc: &Loaded) -> Option<FieldGC> {
    report.op("gc_field.from_matrix");
    if !constraint_checks(report, &doc.matrix, doc.dim) {
        return None;
    }
    match FieldGC::from_matrix(doc.matrix.clone(), doc.dim) {
        Ok(g) => Some(g),
        Err(e) => {
            report.error("structure", e.to_string());
            None
        }
    }
}

fn the_point(doc: &Loaded, flag: Option<&Vec<Rational>>) -> Vec<Rational> {
    flag.cloned().or_else(|| doc.point.clone()).unwrap_or_else(|| origin(doc.dim))
}

/// The constant structure of the document, evaluated at the point for fields.
fn constant_of(report: &mut Report, doc: &Loaded, point: &[Rational]) -> Option<ConstantGC> {
    let g = field_of(report, doc)?;
    let r = match (doc.kind, doc.constant_matrix()) {
        (Kind::Constant, Some(m)) => {
            report.op("gc_linear.from_automorphism");
            ConstantGC::from_automorphism(&m, &PairingSpace::new(doc.dim))
        }
        _ => {
            report.op("gc_field.evaluate_at");
            report.output("point", json!(point.iter().map(ToString::to_string).collect::<Vec<_>>()));
            g.evaluate_at(point)
        }
    };
    match r {
        Ok(c) => Some(c),
        Err(e) => {
            report.error("structure", e.to_string());
            None
        }
    }
}

fn epsilon_outputs(report: &mut Report, g: &ConstantGC) {
    report.op("gc_linear.extract_es");
    report.output("eigenspace", vectors(g.eigenspace()));
    report.output("rank", json!(g.rank()));
    match g.extract_es() {
        Ok(es) => {
            report.output("e_space", vectors(&es.e_space));
            report.output("epsilon", matrix(&es.eps));
            report.output("s_space", vectors(&es.s_space));
            report.output("omega", matrix(&es.omega));
        }
        Err(e) => report.error("epsilon_data", e.to_string()),
    }
}

fn bivector_value(g: &FieldGC) -> Value {
    let pi = g.poisson();
    let names = g.vars().names();
    let mut map = Map::new();
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let c = pi.component(i, j);
            if !c.is_zero() {
                map.insert(format!("{{{}, {}}}", names[i], names[j]), Value::String(c.to_string()));
            }
        }
    }
    Value::Object(map)
}

pub fn check(report: &mut Report, doc: &Loaded, point: Option<&Vec<Rational>>) {
    let Some(g) = field_of(report, doc) else { return };
    let d = g.dim();
    report.op("gc_field.nijenhuis");
    report.op("gc_field.nijenhuis_check");
    report.op("cartan_calc.courant");
    report.op("cartan_calc.pairing");
    let failures = g.nijenhuis_failures();
    let frame_ok = failures.is_empty();
    let labels: Vec<String> = (0..d)
        .map(|k| format!("d/d{}", g.vars().names()[k]))
        .chain(g.vars().names()[..d].iter().map(|n| format!("d{n}")))
        .collect();
    let residuals =
        failures.iter().take(MAX_RESIDUALS).map(|&(a, b)| format!("N({}, {}) ≠ 0", labels[a], labels[b])).collect();
    report.check("integrability", Status::from_bool(frame_ok), residuals, "Courant-Nijenhuis tensor on frame pairs");
    let mut rng = RandomGc::rng(RANDOM_SEED);
    let random = g.nijenhuis_random_check(&mut rng, RANDOM_PAIRS, 1);
    report.pass_if(
        "integrability_agreement",
        frame_ok == (random.nonzero == 0),
        format!(
            "frame pairs {}, random pairs nonzero on {}/{}",
            if frame_ok { "vanish" } else { "fail" },
            random.nonzero,
            random.pairs
        ),
    );
    report.op("gc_field.check_xi_identities");
    report.op("gc_field.hamiltonian_pair");
    let coords: Vec<Polynomial> = (0..d).map(|k| Polynomial::var(g.vars(), k)).collect();
    let names = g.vars().names();
    let mut xi = Vec::new();
    for i in 0..d {
        for j in i..d {
            let r = g.check_xi_identities(&coords[i], &coords[j]);
            let tag = format!("{}, {}", names[i], names[j]);
            xi.extend(one_form_residuals(&format!("product rule ({tag})"), &r.product_rule));
            xi.extend(one_form_residuals(&format!("bracket rule ({tag})"), &r.bracket_rule));
        }
    }
    if frame_ok {
        report.residual_check("xi_identities", xi, "product and bracket rules for ξ on coordinate pairs");
    } else {
        report.check("xi_identities", Status::Unsupported, xi, "needs an integrable structure");
    }
    report.op("gc_field.check_flow_epsilon");
    let mut flow = Vec::new();
    let mut unsupported = None;
    for (k, f) in coords.iter().enumerate() {
        match g.check_flow_epsilon(f) {
            Ok(r) => flow.extend(form_residuals(&r.residual).into_iter().map(|s| format!("{}: {s}", names[k]))),
            Err(e) => {
                unsupported = Some(e);
                break;
            }
        }
    }
    match unsupported {
        Some(e) => report.check("flow_epsilon", gcerror_status(&e), Vec::new(), e.to_string()),
        None if frame_ok => report.residual_check("flow_epsilon", flow, "L_{X_f} ε = dξ_f for coordinate functions"),
        None => report.check("flow_epsilon", Status::Unsupported, flow, "needs an integrable structure"),
    }
    report.op("gc_field.poisson");
    report.output("poisson", bivector_value(&g));
    let m = the_point(doc, point);
    report.op("gc_field.rank_at");
    let Some(c) = constant_of(report, doc, &m) else { return };
    report.op("gc_linear.from_subspace");
    let round_trip = ConstantGC::from_subspace(c.eigenspace(), &c.space()).map(|r| r == c);
    match round_trip {
        Ok(ok) => report.pass_if("eigenspace_round_trip", ok, "the +i-eigenspace determines the structure"),
        Err(e) => report.check("eigenspace_round_trip", gcerror_status(&e), Vec::new(), e.to_string()),
    }
    epsilon_outputs(report, &c);
}

pub fn poisson(report: &mut Report, doc: &Loaded, degree: u32) {
    let Some(g) = field_of(report, doc) else { return };
    let d = g.dim();
    report.op("gc_field.poisson");
    report.op("gc_field.poisson_bracket");
    report.op("gc_field.jacobiator");
    let pi = g.poisson();
    report.output("poisson", bivector_value(&g));
    report.output("matrix", poly_matrix_value(pi.matrix()));
    let names = g.vars().names();
    let mut hamiltonians = Map::new();
    let mut mismatches = Vec::new();
    for i in 0..d {
        let xi = Polynomial::var(g.vars(), i);
        hamiltonians.insert(names[i].clone(), Value::String(pi.hamiltonian(&xi).to_string()));
        for j in 0..d {
            let b = pi.bracket(&xi, &Polynomial::var(g.vars(), j));
            if b != pi.component(i, j) {
                mismatches.push(format!("{{{}, {}}}: {b}", names[i], names[j]));
            }
        }
    }
    report.output("hamiltonian_fields", Value::Object(hamiltonians));
    report.residual_check("bracket_components", mismatches, "{xᵢ, xⱼ} agrees with the bivector components");
    let suite = pi.jacobiator_suite(degree);
    let residuals = suite
        .failures
        .iter()
        .take(MAX_RESIDUALS)
        .map(|&(a, b, c)| {
            let m: Vec<Polynomial> = [a, b, c].iter().map(|&k| monomial_in(g.vars(), &suite.monomials[k])).collect();
            format!("{{{}, {}, {}}}: {}", m[0], m[1], m[2], pi.jacobiator(&m[0], &m[1], &m[2]))
        })
        .collect();
    report.residual_check(
        "jacobi",
        residuals,
        format!("{} failing of {} monomial triples up to degree {degree}", suite.failures.len(), suite.triples),
    );
}

pub fn decompose(report: &mut Report, doc: &Loaded, point: Option<&Vec<Rational>>) {
    let m = the_point(doc, point);
    let Some(g) = constant_of(report, doc, &m) else { return };
    report.op("gc_linear.decompose");
    report.op("gc_linear.splitting_bfield");
    let dec = match g.decompose() {
        Ok(dec) => dec,
        Err(e) => {
            report.check("decompose", gcerror_status(&e), Vec::new(), e.to_string());
            return;
        }
    };
    report.output("s0", vectors(&dec.s0));
    report.output("w", vectors(&dec.w));
    report.output("b", matrix(&dec.b));
    report.output("rank", json!(g.rank()));
    report.pass_if("b_real_skew", dec.b.is_real() && dec.b.is_skew(), "B is a real 2-form");
    report.pass_if(
        "b_vanishes_on_factors",
        ConstantGC::form_vanishes_on(&dec.b, &dec.s0) && ConstantGC::form_vanishes_on(&dec.b, &dec.w),
        "B vanishes on S0 and on W",
    );
    report.op("gc_linear.b_transform");
    report.op("gc_linear.induced_subspace");
    report.op("gc_linear.direct_sum");
    let outcome = (|| -> crate::Result<(bool, bool, bool, bool)> {
        let t = g.b_transform(&dec.b)?;
        let product = t.is_product_of(&dec.s0, &dec.w)?;
        let on_s0 = t.induced_structure(&dec.s0)?;
        let on_w = t.induced_structure(&dec.w)?;
        let s0_symplectic = on_s0.rank() == dec.s0.dim();
        let w_complex = on_w.extract_es()?.s_space.is_zero();
        // columns: basis of S0 then of W
        let mut cols = dec.s0.basis_vectors();
        cols.extend(dec.w.basis_vectors());
        let adapted = CMatrix::from_cvecs(cols, g.n()).transpose();
        let sum = ConstantGC::direct_sum(&on_s0, &on_w).push_forward(&adapted)?;
        Ok((product, s0_symplectic, w_complex, sum == t))
    })();
    match outcome {
        Ok((product, s0_symplectic, w_complex, sum)) => {
            report.pass_if("product", product, "exp(B) L is the product of the structures induced on S0 and W");
            report.pass_if("s0_symplectic", s0_symplectic, "the induced structure on S0 is symplectic");
            report.pass_if("w_complex", w_complex, "the induced structure on W is of complex type");
            report.pass_if("direct_sum", sum, "exp(B) L equals the direct sum of the induced structures");
        }
        Err(e) => report.check("product", gcerror_status(&e), Vec::new(), e.to_string()),
    }
}

pub fn orthcomp(report: &mut Report, doc: &Loaded, point: Option<&Vec<Rational>>, w: &Subspace) {
    let m = the_point(doc, point);
    let Some(g) = constant_of(report, doc, &m) else { return };
    report.output("subspace", vectors(w));
    report.op("gc_linear.induced_subspace");
    report.op("gc_linear.gc_subspace_criterion");
    report.op("gc_linear.orth_complement");
    let outcome = (|| -> crate::Result<()> {
        let ind = g.induced_subspace(w)?;
        let criterion = g.gc_subspace_criterion(w)?;
        report.output("l_w", vectors(&ind.l_w));
        report.output("is_gc", json!(ind.is_gc));
        report.pass_if(
            "criterion_matches_definition",
            criterion == ind.is_gc,
            format!("criterion {criterion}, L_W ∩ conj L_W = 0 is {}", ind.is_gc),
        );
        let c_w = g.orth_complement(w)?;
        report.output("orth_complement", vectors(&c_w));
        let es = g.extract_es()?;
        if w.sum(&es.s_space)?.is_full() {
            let oracle = g.omega_orthogonal(w)?;
            report.output("omega_orthogonal", vectors(&oracle));
            report.pass_if("omega_oracle", oracle == c_w, "C_W equals the ω-orthogonal of W ∩ S inside S");
        } else {
            report.check(
                "omega_oracle",
                Status::Unsupported,
                Vec::new(),
                "W + S ≠ V; the ω-description does not apply",
            );
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        report.check("orth_complement", gcerror_status(&e), Vec::new(), e.to_string());
    }
}

/// A name for the isomorphism class; complete in complex dimension `≤ 3`.
pub fn class_label(inv: &LieInvariants) -> String {
    if inv.derived_dim == 0 {
        return format!("abelian C^{}", inv.dim);
    }
    match (inv.dim, inv.derived_dim) {
        (2, 1) => "non-abelian plane".into(),
        (3, 1) if inv.derived_in_center => "Heisenberg".into(),
        (3, 1) => "non-abelian plane + C".into(),
        (3, 3) => "sl(2, C)".into(),
        (3, 2) => match &inv.ad_on_derived {
            Some(AdClass::Scalar) => "C^2 x| C, scalar action".into(),
            Some(AdClass::NonScalar { trace_squared_over_det: Some(r) }) => {
                format!("C^2 x| C, tr^2/det = {r}")
            }
            _ => "C^2 x| C, singular action".into(),
        },
        (n, _) => format!("non-abelian, complex dimension {n}"),
    }
}

fn constants_value(alg: &ComplexLieAlgebra) -> Value {
    let c = alg.structure_constants();
    let n = alg.n_complex();
    let mut map = Map::new();
    for i in 0..n {
        for j in i + 1..n {
            if c[i][j].iter().any(|x| !x.is_zero()) {
                map.insert(format!("[e{}, e{}]", i + 1, j + 1), vector_value(&c[i][j]));
            }
        }
    }
    Value::Object(map)
}

fn invariants_value(inv: &LieInvariants) -> Value {
    let ad = match &inv.ad_on_derived {
        None => Value::Null,
        Some(AdClass::Scalar) => json!("scalar"),
        Some(AdClass::NonScalar { trace_squared_over_det }) => {
            json!({ "trace_squared_over_det": trace_squared_over_det.as_ref().map(scalar) })
        }
    };
    json!({
        "dim": inv.dim,
        "derived_dim": inv.derived_dim,
        "center_dim": inv.center_dim,
        "derived_in_center": inv.derived_in_center,
        "second_derived_dim": inv.second_derived_dim,
        "lower_central_dim": inv.lower_central_dim,
        "ad_on_derived": ad,
    })
}

pub fn linearize(report: &mut Report, doc: &Loaded, point: Option<&Vec<Rational>>) {
    let m = the_point(doc, point);
    let Some(g) = field_of(report, doc) else { return };
    let Some(g0) = constant_of(report, doc, &m) else { return };
    report.op("gc_field.rank_at");
    report.pass_if("rank_zero", g0.rank() == 0, format!("Poisson tensor has rank {} at the point", g0.rank()));
    if g0.rank() != 0 {
        return;
    }
    report.op("linearize.normalize_point");
    report.op("linearize.linearize");
    report.op("gc_field.b_transform");
    let b = match normalize_point(&g0) {
        Ok(b) => b,
        Err(e) => {
            report.check("normalize", gcerror_status(&e), Vec::new(), e.to_string());
            return;
        }
    };
    report.output("b", matrix(&b));
    let data = constant_b_transform(&g, &b).and_then(|t| first_order_data(&t, &m));
    let (real, a) = match data {
        Ok(x) => x,
        Err(e) => {
            report.check("first_order", gcerror_status(&e), Vec::new(), e.to_string());
            return;
        }
    };
    report.output("a", matrix(&a));
    let checks = match real_model_checks(&real, &a) {
        Ok(c) => c,
        Err(e) => {
            report.error("first_order", e.to_string());
            return;
        }
    };
    for (name, ok) in checks.entries() {
        report.pass_if(name, ok, "");
    }
    if !checks.all() {
        return;
    }
    let alg = match ComplexLieAlgebra::from_real(real, a) {
        Ok(alg) => alg,
        Err(e) => {
            report.check("lie_algebra", gcerror_status(&e), Vec::new(), e.to_string());
            return;
        }
    };
    let inv = alg.invariants();
    report.output("complex_dim", json!(alg.n_complex()));
    report.output("structure_constants", constants_value(&alg));
    report.output("complex_basis", matrix(alg.complex_basis()));
    report.output("invariants", invariants_value(&inv));
    report.output("class", Value::String(class_label(&inv)));
    if alg.n_complex() <= 2 {
        let model = if alg.is_abelian() { abelian(alg.n_complex()) } else { non_abelian_plane() };
        match alg.isomorphism_witness(&model) {
            Some(t) => {
                report.output("witness", matrix(&t));
                report.pass_if(
                    "witness",
                    alg.is_isomorphism(&model, &t),
                    "explicit isomorphism onto the model algebra",
                );
            }
            None => report.pass_if("witness", false, "no isomorphism onto the model algebra"),
        }
    }
}

fn chart_value(chart: &ProductChart) -> Value {
    json!(chart.vars().names()[..chart.dim()].to_vec())
}

pub fn normalform(report: &mut Report, doc: &Loaded) {
    let Some((chart, family)) = doc.chart.as_ref() else {
        report.error("chart", "normalform needs a chart declaration");
        return;
    };
    report.output("chart", chart_value(chart));
    if let Some(rows) = family {
        report.op("normal_form.extend_bfield");
        match LeafFamilyB::new(chart, rows.clone()) {
            Ok(fam) => {
                let b = extend_bfield(chart, &fam);
                report.output("b_extended", form_value(&b));
                let ids = extension_identities(chart, &b);
                for (k, failures) in ids.by_fiber_count.iter().enumerate() {
                    let residuals = failures
                        .iter()
                        .take(MAX_RESIDUALS)
                        .map(|((i, j, l), v)| format!("dB'({i}, {j}, {l}): {v}"))
                        .collect();
                    report.residual_check(
                        &format!("extension_fiber_{k}"),
                        residuals,
                        format!("dB' on triples with {k} fiber fields"),
                    );
                }
                report.pass_if("extension_leaf", ids.leaf_restriction_vanishes, "B' vanishes on each leaf");
                report.pass_if("extension_slice", ids.slice_restriction_vanishes, "B' vanishes on the slice p = q = 0");
                report.pass_if("extension_closed", ids.closed, "dB' = 0");
            }
            Err(e) => report.check("extension", gcerror_status(&e), Vec::new(), e.to_string()),
        }
    }
    let Some(g) = field_of(report, doc) else { return };
    report.op("gc_field.hamiltonian_pair");
    report.op("normal_form.step3_bfield");
    report.op("normal_form.ftc_identity");
    report.op("cartan_calc.d");
    report.op("cartan_calc.iota");
    report.op("cartan_calc.lie_derivative");
    let p = Polynomial::var(chart.vars(), 0);
    let q = Polynomial::var(chart.vars(), 1);
    let (x_p, xi_p): (VectorField, OneForm) = g.hamiltonian_pair(&p);
    let (x_q, xi_q) = g.hamiltonian_pair(&q);
    report.output("x_p", Value::String(x_p.to_string()));
    report.output("x_q", Value::String(x_q.to_string()));
    report.output("xi_p", Value::String(xi_p.to_string()));
    report.output("xi_q", Value::String(xi_q.to_string()));
    report.pass_if(
        "chart_flows",
        x_p == chart.x_p() && x_q == chart.x_q(),
        "X_p and X_q are the coordinate translations of the chart",
    );
    let step3 = match step3_bfield(chart, &xi_p, &xi_q) {
        Ok(s) => s,
        Err(GcError::Constraint { identity, detail }) => {
            report.check("preconditions", Status::Fail, vec![detail], format!("`{identity}` fails"));
            return;
        }
        Err(e) => {
            report.check("preconditions", gcerror_status(&e), Vec::new(), e.to_string());
            return;
        }
    };
    report.pass_if("preconditions", true, "relations between ξ_p, ξ_q and the flows");
    report.output("b", form_value(&step3.b));
    for (name, residual) in step3.report.residuals() {
        report.residual_check(name, form_residuals(residual), "");
    }
    report.pass_if(
        "closed_via_flows",
        step3.report.closed_via_flows,
        "i_{X_p}dB = i_{X_q}dB = 0 and dB vanishes on the fibers",
    );
    report.pass_if("routes_agree", step3.report.routes_agree(), "both closedness routes give the same verdict");
    let mut ftc = Vec::new();
    for (label, which) in [("along X_p", FlowIdentity::AlongXp), ("along X_q", FlowIdentity::AlongXq)] {
        match ftc_identity(chart, &step3.b, which) {
            Ok(r) => ftc.extend(form_residuals(&r).into_iter().map(|s| format!("{label}: {s}"))),
            Err(e) => ftc.push(format!("{label}: {e}")),
        }
    }
    report.residual_check("ftc", ftc, "flow-integral identities for B");
    match g.b_transform(&step3.b.neg()) {
        Ok(restored) => {
            report.output("restored_poisson", bivector_value(&restored));
            report.pass_if("restored_integrable", restored.nijenhuis_check(), "exp(−B) of the structure is integrable");
            let n = chart.dim();
            let base = [0, 1, n, n + 1];
            let jm = restored.jmat();
            let mixed: Vec<String> = (0..2 * n)
                .flat_map(|a| (0..2 * n).map(move |b| (a, b)))
                .filter(|(a, b)| base.contains(a) != base.contains(b) && !jm[(*a, *b)].is_zero())
                .take(MAX_RESIDUALS)
                .map(|(a, b)| format!("({a}, {b}): {}", jm[(a, b)]))
                .collect();
            report.residual_check("restored_splits", mixed, "exp(−B) preserves the base and fiber summands");
        }
        Err(e) => report.check("restored_integrable", gcerror_status(&e), Vec::new(), e.to_string()),
    }
}
