//! Identity suites shared by the integration tests and the acceptance target.
#![allow(dead_code)]

use gckit::cartan::KForm;
use gckit::exact::{monomial_in, parse_polynomial, random_polynomial, rat, CMatrix, GaussianRational, Subspace};
use gckit::field::{corpus, holomorphic_poisson, CorpusEntry, FieldGC};
use gckit::linear::{random_real_subspace, random_skew, ConstantGC, RandomGc, RandomStructure};
use gckit::linearize::{abelian, linearize, linearize_normalized, non_abelian_plane, ComplexLieAlgebra};
use gckit::normal_form::{
    extend_bfield, extension_identities, ftc_identity, round_trip, round_trip_fixture, Fiber, FlowIdentity,
    LeafFamilyB, ProductChart,
};
use gckit::GcError;
use rand::{Rng, RngExt};

/// Verdict of one suite with a one-line summary.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: String) -> Self {
        Self { passed, detail }
    }
}

fn dot(a: &[GaussianRational], b: &[GaussianRational]) -> GaussianRational {
    a.iter().zip(b).fold(GaussianRational::zero(), |acc, (x, y)| &acc + &(x * y))
}

/// `uᵀ·m·v`.
fn form(m: &CMatrix, u: &[GaussianRational], v: &[GaussianRational]) -> GaussianRational {
    dot(u, &m.apply(v))
}

pub fn integrable_corpus() -> Vec<CorpusEntry> {
    corpus().into_iter().filter(|e| e.integrable).collect()
}

// ---- Poisson bivector ------------------------------------------------------

/// Jacobiator of every monomial triple of degree `≤ 3` on every integrable
/// member.
pub fn jacobi_suite() -> Outcome {
    let members = integrable_corpus();
    let mut triples = 0;
    let mut bad = Vec::new();
    for e in &members {
        let s = e.gc.poisson().jacobiator_suite(3);
        triples += s.triples;
        if !s.holds() {
            bad.push(format!("{} ({} failures)", e.name, s.failures.len()));
        }
    }
    let passed = members.len() >= 20 && bad.is_empty();
    Outcome::new(passed, format!("{} members, {triples} triples, failing: {bad:?}", members.len()))
}

// ---- Hamiltonian pairs -----------------------------------------------------

/// Product and bracket rules for random pairs of degree `≤ 2`; the flow rule
/// for `ε` on members with `det π ≢ 0`, `Unsupported` on the others.
pub fn hamiltonian_suite(pairs_per_member: usize) -> Outcome {
    let mut rng = RandomGc::rng(0x1d);
    let mut bad = Vec::new();
    let (mut pairs, mut full, mut unsupported) = (0, 0, 0);
    for e in integrable_corpus() {
        let d = e.gc.dim();
        for _ in 0..pairs_per_member {
            let f = random_polynomial(&mut rng, e.gc.vars(), d, 2);
            let h = random_polynomial(&mut rng, e.gc.vars(), d, 2);
            pairs += 1;
            if !e.gc.check_xi_identities(&f, &h).holds() {
                bad.push(format!("{}: xi identities", e.name));
            }
        }
        let det_vanishes = e.gc.pi_block().det_expansion().is_zero();
        for _ in 0..3 {
            let f = random_polynomial(&mut rng, e.gc.vars(), d, 2);
            match e.gc.check_flow_epsilon(&f) {
                Ok(r) if !det_vanishes && r.holds() => full += 1,
                Err(GcError::Unsupported(_)) if det_vanishes => unsupported += 1,
                other => bad.push(format!("{}: flow rule {:?}", e.name, other.map(|r| r.holds()))),
            }
        }
    }
    Outcome::new(
        bad.is_empty() && full > 0 && unsupported > 0,
        format!("{pairs} pairs, {full} flow checks, {unsupported} unsupported, failures: {bad:?}"),
    )
}

// ---- GC subspaces ----------------------------------------------------------

fn random_b_fields(rng: &mut impl Rng, n: usize, count: usize) -> Vec<CMatrix> {
    (0..count).map(|_| random_skew(rng, n, 3)).collect()
}

#[derive(Debug, Default)]
struct CriterionTally {
    cases: usize,
    gc: usize,
    disagreements: usize,
    b_variance: usize,
    completion_failures: usize,
}

impl CriterionTally {
    fn record(&mut self, g: &ConstantGC, transformed: &[ConstantGC], w: &Subspace) {
        self.cases += 1;
        let by_definition = g.induced_subspace(w).unwrap().is_gc;
        let (symplectic, splits) = g.criterion_parts(w).unwrap();
        if by_definition != (symplectic && splits) {
            self.disagreements += 1;
        }
        if by_definition {
            self.gc += 1;
        }
        let s = g.extract_es().unwrap().s_space;
        if symplectic && w.sum(&s).unwrap().is_full() && !by_definition {
            self.completion_failures += 1;
        }
        for t in transformed {
            let def = t.induced_subspace(w).unwrap().is_gc;
            let crit = t.gc_subspace_criterion(w).unwrap();
            if def != by_definition || crit != by_definition {
                self.b_variance += 1;
            }
        }
    }

    fn clean(&self) -> bool {
        self.disagreements == 0 && self.b_variance == 0 && self.completion_failures == 0
    }
}

/// The real subspace `frame·(U ⊕ span{w, Jw})` of a generated structure, with
/// `U` a symplectic plane of the symplectic factor when it exists: a GC
/// subspace by construction.
fn product_gc_subspace(rng: &mut impl Rng, s: &RandomStructure, a: usize, c: usize) -> Subspace {
    let n = a + c;
    let small = |rng: &mut dyn FnMut() -> i64| GaussianRational::from_int(rng());
    let mut vectors = Vec::new();
    let omega = s.product.extract_es().unwrap();
    if a >= 2 && rng.random_range(0..2) == 0 {
        loop {
            let mut draw = || rng.random_range(-2..=2);
            let u: Vec<GaussianRational> =
                (0..n).map(|k| if k < a { small(&mut draw) } else { GaussianRational::zero() }).collect();
            let v: Vec<GaussianRational> =
                (0..n).map(|k| if k < a { small(&mut draw) } else { GaussianRational::zero() }).collect();
            if omega.omega_on(&u, &v).is_some_and(|x| !x.is_zero()) {
                vectors.push(u);
                vectors.push(v);
                break;
            }
        }
    }
    if c >= 2 {
        let j = s.product.j_block();
        for _ in 0..rng.random_range(0..=c / 2) {
            let w: Vec<GaussianRational> = (0..n)
                .map(|k| {
                    if k >= a {
                        GaussianRational::from_int(rng.random_range(-2..=2))
                    } else {
                        GaussianRational::zero()
                    }
                })
                .collect();
            vectors.push(j.apply(&w));
            vectors.push(w);
        }
    }
    Subspace::span(n, vectors).image(&s.frame)
}

/// Definition versus criterion on every coordinate subspace of generated
/// structures in dimensions 2 to 6 and on 100 subspaces in dimension 8, each
/// re-checked under 20 random B-transforms.
pub fn criterion_suite() -> Outcome {
    let mut rng = RandomGc::rng(0xb2);
    let mut exhaustive = CriterionTally::default();
    for (a, c) in [(2, 0), (0, 2), (4, 0), (2, 2), (0, 4), (6, 0), (4, 2), (2, 4), (0, 6)] {
        let n = a + c;
        let s = RandomGc::new(a, c).generate(&mut rng);
        let transformed: Vec<ConstantGC> =
            random_b_fields(&mut rng, n, 20).iter().map(|b| s.gc.b_transform(b).unwrap()).collect();
        for mask in 0u32..1 << n {
            let idx: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
            exhaustive.record(&s.gc, &transformed, &Subspace::coordinate(n, &idx));
        }
    }
    let mut random = CriterionTally::default();
    let shapes = [(8, 0), (6, 2), (4, 4), (2, 6), (0, 8)];
    for k in 0..100 {
        let (a, c) = shapes[k % shapes.len()];
        let s = RandomGc::new(a, c).generate(&mut rng);
        let w = if k % 2 == 0 {
            let dim = rng.random_range(1..8);
            random_real_subspace(&mut rng, 8, dim)
        } else {
            product_gc_subspace(&mut rng, &s, a, c)
        };
        let transformed: Vec<ConstantGC> =
            random_b_fields(&mut rng, 8, 20).iter().map(|b| s.gc.b_transform(b).unwrap()).collect();
        random.record(&s.gc, &transformed, &w);
    }
    let passed = exhaustive.clean() && random.clean() && random.gc > 0 && random.gc < random.cases;
    Outcome::new(passed, format!("coordinate {exhaustive:?}; dimension 8 {random:?}"))
}

// ---- splitting B-field -----------------------------------------------------

/// A random real complement of `s` in `ℚⁿ`.
pub fn random_complement(rng: &mut impl Rng, s: &Subspace) -> Subspace {
    let n = s.ambient_dim();
    loop {
        let w = random_real_subspace(rng, n, n - s.dim());
        if w.sum(s).unwrap().is_full() {
            return w;
        }
    }
}

/// `{v ∈ S : ω(v, u) = 0 ∀ u ∈ U}` from `(S, ω)` of `g`, `U ⊆ V` real.
pub fn omega_complement_oracle(g: &ConstantGC, u: &Subspace) -> Subspace {
    let es = g.extract_es().unwrap();
    let n = g.n();
    let us = u.intersect(&es.s_space).unwrap();
    let s_rows = es.s_space.basis_vectors();
    // unknown coefficients c over the basis of S
    let rows: Vec<Vec<GaussianRational>> =
        us.basis_vectors().iter().map(|t| s_rows.iter().map(|s| es.omega_on(s, t).unwrap()).collect()).collect();
    if rows.is_empty() {
        return es.s_space;
    }
    let kernel = CMatrix::from_cvecs(rows, s_rows.len()).kernel();
    let vectors = kernel
        .row_vecs()
        .iter()
        .map(|c| {
            (0..n)
                .map(|k| c.iter().zip(&s_rows).fold(GaussianRational::zero(), |acc, (ca, s)| &acc + &(ca * &s[k])))
                .collect()
        })
        .collect();
    Subspace::span(n, vectors)
}

/// `(S0, W)` with `S0 ⊆ S` and `S0 ⊥_ω S ∩ W`.
fn splitting_pair(rng: &mut impl Rng, g: &ConstantGC) -> (Subspace, Subspace) {
    let s = g.extract_es().unwrap().s_space;
    if s.dim() >= 4 && (s.is_full() || rng.random_range(0..2) == 0) {
        // a symplectic plane of S and its ω-complement plus a complement of S
        let es = g.extract_es().unwrap();
        let rows = s.basis_vectors();
        loop {
            let comb = |rng: &mut _| -> Vec<GaussianRational> {
                let c: Vec<i64> = rows.iter().map(|_| RngExt::random_range(rng, -2..=2)).collect();
                (0..g.n())
                    .map(|k| {
                        rows.iter()
                            .zip(&c)
                            .fold(GaussianRational::zero(), |acc, (r, &x)| &acc + &r[k].scale(&rat(x, 1)))
                    })
                    .collect()
            };
            let u = comb(rng);
            let v = comb(rng);
            if es.omega_on(&u, &v).unwrap().is_zero() {
                continue;
            }
            let s0 = Subspace::span(g.n(), vec![u, v]);
            let w = omega_complement_oracle(g, &s0).sum(&random_complement(rng, &s)).unwrap();
            return (s0, w);
        }
    }
    let w = random_complement(rng, &s);
    (s, w)
}

/// A nonzero real form vanishing on `s0` and on `w`.
fn cross_form(rng: &mut impl Rng, s0: &Subspace, w: &Subspace) -> CMatrix {
    let n = s0.ambient_dim();
    let (k0, k1) = (s0.dim(), w.dim());
    let mut cols = s0.basis_vectors();
    cols.extend(w.basis_vectors());
    let m_inv = CMatrix::from_cvecs(cols, n).transpose().inverse().unwrap();
    loop {
        let x = CMatrix::from_fn(k0, k1, &GaussianRational::zero(), |_, _| {
            GaussianRational::from_int(rng.random_range(-2..=2))
        });
        if x.is_zero() {
            continue;
        }
        let adapted = CMatrix::from_fn(n, n, &GaussianRational::zero(), |i, j| {
            if i < k0 && j >= k0 {
                x[(i, j - k0)].clone()
            } else if i >= k0 && j < k0 {
                -x[(j, i - k0)].clone()
            } else {
                GaussianRational::zero()
            }
        });
        return m_inv.transpose().try_mul(&adapted).unwrap().try_mul(&m_inv).unwrap();
    }
}

fn vanishes_on(b: &CMatrix, sub: &Subspace) -> bool {
    let rows = sub.basis_vectors();
    rows.iter().all(|u| rows.iter().all(|v| form(b, u, v).is_zero()))
}

/// Splitting B-field on 50 generated instances: restrictions, block-diagonal
/// transform, determinism, and a cross-term mutation that must break it.
pub fn splitting_suite() -> Outcome {
    let mut rng = RandomGc::rng(0x5b);
    let shapes = [(2, 2), (4, 2), (2, 4), (4, 4), (6, 2), (2, 6), (4, 0), (6, 0)];
    let (mut ok, mut caught, mut mutated) = (0, 0, 0);
    let mut notes = Vec::new();
    for k in 0..50 {
        let (a, c) = shapes[k % shapes.len()];
        let s = RandomGc::new(a, c).generate(&mut rng);
        let (s0, w) = splitting_pair(&mut rng, &s.gc);
        let b = s.gc.splitting_bfield(&s0, &w).unwrap();
        let again = s.gc.splitting_bfield(&s0, &w).unwrap();
        let split = s.gc.b_transform(&b).unwrap();
        let good = b == again
            && b.is_real()
            && b.is_skew()
            && vanishes_on(&b, &s0)
            && vanishes_on(&b, &w)
            && split.is_product_of(&s0, &w).unwrap();
        if good {
            ok += 1;
        } else {
            notes.push(k);
        }
        if s0.dim() > 0 && w.dim() > 0 {
            mutated += 1;
            let perturbed = b.try_add(&cross_form(&mut rng, &s0, &w)).unwrap();
            if !s.gc.b_transform(&perturbed).unwrap().is_product_of(&s0, &w).unwrap() {
                caught += 1;
            }
        }
    }
    // one trivial factor: the B-field must vanish
    let mut trivial = 0;
    for (a, c) in [(0, 2), (0, 4), (2, 0), (4, 0)] {
        let s = RandomGc::new(a, c).generate(&mut rng);
        let sp = s.gc.extract_es().unwrap().s_space;
        let w = sp.standard_complement();
        let b = s.gc.splitting_bfield(&sp, &w).unwrap();
        if b.is_zero() && s.gc.is_product_of(&sp, &w).unwrap() {
            trivial += 1;
        }
    }
    Outcome::new(
        ok == 50 && mutated == 50 && caught == 50 && trivial == 4,
        format!(
            "{ok}/50 split, mutations detected {caught}/{mutated}, trivial splittings {trivial}/4, failing instances {notes:?}"
        ),
    )
}

// ---- orthogonal complement -------------------------------------------------

/// `orth_complement` against the ω-orthogonal oracle on 100 instances with
/// `W + S = V`, and invariance under a further B-transform.
pub fn orth_suite() -> Outcome {
    let mut rng = RandomGc::rng(0x03);
    let shapes = [(2, 2), (4, 0), (4, 2), (2, 4), (6, 0), (4, 4), (6, 2), (2, 0)];
    let (mut matches, mut invariant) = (0, 0);
    for k in 0..100 {
        let (a, c) = shapes[k % shapes.len()];
        let n = a + c;
        let s = RandomGc::new(a, c).generate(&mut rng);
        let sp = s.gc.extract_es().unwrap().s_space;
        let extra = rng.random_range(0..=a);
        let w = random_complement(&mut rng, &sp).sum(&random_real_subspace(&mut rng, n, extra)).unwrap();
        let c_w = s.gc.orth_complement(&w).unwrap();
        if c_w == omega_complement_oracle(&s.gc, &w) {
            matches += 1;
        }
        let moved = s.gc.b_transform(&random_skew(&mut rng, n, 3)).unwrap();
        if moved.orth_complement(&w).unwrap() == c_w {
            invariant += 1;
        }
    }
    Outcome::new(matches == 100 && invariant == 100, format!("oracle {matches}/100, B-invariance {invariant}/100"))
}

// ---- local normal form -----------------------------------------------------

pub fn normal_form_suite() -> Outcome {
    let mut notes = Vec::new();
    let families: [(usize, [&[&str]; 2]); 3] = [
        (2, [&["1", "-2"], &["3/2", "0"]]),
        (2, [&["r2", "r1"], &["2*r1 - r2", "0"]]),
        (3, [&["r2*r3", "r1^2", "r3 - r1*r2"], &["r3^2", "r1*r3", "r2^2 + 1"]]),
    ];
    for (d, rows) in families {
        let chart = ProductChart::new(d);
        let cross =
            rows.iter().map(|r| r.iter().map(|s| parse_polynomial(s, chart.vars()).unwrap()).collect()).collect();
        let b = extend_bfield(&chart, &LeafFamilyB::new(&chart, cross).unwrap());
        let ids = extension_identities(&chart, &b);
        for k in 0..4 {
            if !ids.identity_holds(k) {
                notes.push(format!("extension identity {k} on fiber dimension {d}"));
            }
        }
    }
    let chart = ProductChart::new(2);
    let mut rng = RandomGc::rng(0x4a);
    let mut ftc = 0;
    for _ in 0..20 {
        let mut tau = KForm::zero(chart.vars(), 4, 2);
        for i in 0..4 {
            for j in i + 1..4 {
                tau = tau.add(&KForm::elementary(&random_polynomial(&mut rng, chart.vars(), 4, 3), 4, &[i, j]));
            }
        }
        if [FlowIdentity::AlongXp, FlowIdentity::AlongXq]
            .iter()
            .all(|&w| ftc_identity(&chart, &tau, w).unwrap().is_zero())
        {
            ftc += 1;
        }
    }
    if ftc != 20 {
        notes.push(format!("ftc {ftc}/20"));
    }
    for fiber in [Fiber::Complex, Fiber::Symplectic] {
        let r = round_trip(&round_trip_fixture(fiber)).unwrap();
        for (name, residual) in r.step3.report.residuals() {
            if !residual.is_zero() {
                notes.push(format!("{fiber:?}: {name}"));
            }
        }
        if !r.holds() {
            notes.push(format!("{fiber:?}: round trip"));
        }
    }
    Outcome::new(notes.is_empty(), format!("extension 3 families, ftc {ftc}/20, round trips 2, failures: {notes:?}"))
}

// ---- linearization ---------------------------------------------------------

/// Small Gaussian rationals `(a + bi)/2`, `|a|, |b| ≤ 2`.
fn small_scalars() -> Vec<GaussianRational> {
    let mut out = Vec::new();
    for re in -2..=2 {
        for im in -2..=2 {
            out.push(GaussianRational::new(rat(re, 2), rat(im, 2)));
        }
    }
    out
}

/// A basis `(u, v)` with `[u, v] = u`, found by search over small entries.
pub fn search_plane_basis(alg: &ComplexLieAlgebra) -> Option<(Vec<GaussianRational>, Vec<GaussianRational>)> {
    let small = small_scalars();
    for a in &small {
        for b in &small {
            for c in &small {
                for d in &small {
                    if (&(a * d) - &(b * c)).is_zero() {
                        continue;
                    }
                    let u = vec![a.clone(), b.clone()];
                    let v = vec![c.clone(), d.clone()];
                    if alg.bracket(&u, &v) == u {
                        return Some((u, v));
                    }
                }
            }
        }
    }
    None
}

pub fn linearize_suite() -> Outcome {
    let mut notes = Vec::new();
    let mut applicable = 0;
    for e in integrable_corpus() {
        let Some(m) = &e.rank_zero_point else { continue };
        applicable += 1;
        match linearize_normalized(&e.gc, m) {
            Ok(lin) if lin.algebra.checks().all() => {}
            Ok(_) => notes.push(format!("{}: checks", e.name)),
            Err(err) => notes.push(format!("{}: {err}", e.name)),
        }
    }
    let zero = vec![rat(0, 1); 4];
    let hol = linearize(&holomorphic_poisson(), &zero).unwrap();
    let searched = search_plane_basis(&hol).is_some();
    let plane = searched && hol.isomorphic(&non_abelian_plane()).unwrap();
    let cx = FieldGC::from_constant(&ConstantGC::standard_complex(4), holomorphic_poisson().vars());
    let flat = linearize(&cx, &zero).unwrap();
    let is_abelian = flat.is_abelian() && flat.isomorphic(&abelian(2)).unwrap();
    Outcome::new(
        notes.is_empty() && plane && is_abelian,
        format!("{applicable} rank-zero members, non-abelian plane {plane}, abelian {is_abelian}, failures: {notes:?}"),
    )
}

// ---- integrability guard ---------------------------------------------------

pub fn integrability_suite() -> Outcome {
    let mut rng = RandomGc::rng(0x8);
    let mut notes = Vec::new();
    let members = corpus();
    for e in &members {
        let r = e.gc.integrability(&mut rng, 50, 2);
        if !r.agree() || r.frame_pairs_vanish != e.integrable {
            notes.push(format!(
                "{}: frame {} random {}/{}",
                e.name, r.frame_pairs_vanish, r.random.nonzero, r.random.pairs
            ));
        }
    }
    Outcome::new(notes.is_empty(), format!("{} members x 50 pairs, disagreements: {notes:?}", members.len()))
}

/// Monomials of degree `≤ deg` as polynomials on `g`.
pub fn monomials(g: &FieldGC, deg: u32) -> Vec<gckit::exact::Polynomial> {
    gckit::exact::monomials_up_to(g.dim(), deg).iter().map(|m| monomial_in(g.vars(), m)).collect()
}

// ---- command-line front end ------------------------------------------------

/// `(command, fixture, extra arguments, expected exit code)`.
pub const CLI_CASES: &[(&str, &str, &[&str], i32)] = &[
    ("check", "symplectic_plane", &[], 0),
    ("check", "bad_square", &[], 1),
    ("check", "holomorphic_poisson", &[], 0),
    ("check", "non_integrable", &[], 1),
    ("check", "malformed", &[], 2),
    ("poisson", "holomorphic_poisson", &["--degree", "2"], 0),
    ("poisson", "non_integrable", &["--degree", "2"], 1),
    ("decompose", "mixed_constant", &[], 0),
    ("decompose", "holomorphic_poisson", &["--point", "1,0,0,0"], 0),
    ("orthcomp", "mixed_constant", &["--subspace", "W"], 0),
    ("orthcomp", "mixed_constant", &["--subspace", "line"], 0),
    ("orthcomp", "mixed_constant", &["--subspace", "tilted"], 0),
    ("orthcomp", "mixed_constant", &["--subspace", "missing"], 2),
    ("linearize", "holomorphic_poisson", &[], 0),
    ("linearize", "symplectic_plane", &[], 1),
    ("normalform", "product_chart", &[], 0),
    ("normalform", "symplectic_plane", &[], 2),
];

/// Library operations every command set must reach.
pub const REQUIRED_OPERATIONS: &[&str] = &[
    "gc_linear.from_automorphism",
    "gc_linear.from_subspace",
    "gc_linear.extract_es",
    "gc_linear.b_transform",
    "gc_linear.induced_subspace",
    "gc_linear.gc_subspace_criterion",
    "gc_linear.orth_complement",
    "gc_linear.splitting_bfield",
    "gc_linear.decompose",
    "gc_linear.direct_sum",
    "gc_field.nijenhuis",
    "gc_field.nijenhuis_check",
    "gc_field.poisson",
    "gc_field.poisson_bracket",
    "gc_field.jacobiator",
    "gc_field.hamiltonian_pair",
    "gc_field.check_xi_identities",
    "gc_field.check_flow_epsilon",
    "gc_field.evaluate_at",
    "gc_field.rank_at",
    "normal_form.extend_bfield",
    "normal_form.ftc_identity",
    "normal_form.step3_bfield",
    "linearize.normalize_point",
    "linearize.linearize",
];

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(format!("{name}.json"))
}

/// Runs the binary; returns stdout and the exit code.
pub fn run_cli(command: &str, name: &str, extra: &[&str]) -> (Vec<u8>, i32) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_gckit"))
        .arg(command)
        .arg("--input")
        .arg(fixture(name))
        .args(extra)
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

/// Every case twice: byte-identical reports, expected exit codes, all six
/// commands, all required operations.
pub fn cli_suite() -> Outcome {
    let mut notes = Vec::new();
    let mut commands = std::collections::BTreeSet::new();
    let mut operations = std::collections::BTreeSet::new();
    for &(cmd, name, extra, expected) in CLI_CASES {
        let (first, code) = run_cli(cmd, name, extra);
        let (second, code2) = run_cli(cmd, name, extra);
        if first != second || code != code2 {
            notes.push(format!("{cmd} {name}: reports differ between runs"));
        }
        if code != expected {
            notes.push(format!("{cmd} {name}: exit {code}, expected {expected}"));
        }
        match serde_json::from_slice::<serde_json::Value>(&first) {
            Ok(v) => {
                if v["schema"] != 1 || v["command"] != cmd {
                    notes.push(format!("{cmd} {name}: bad header"));
                }
                for op in v["operations"].as_array().into_iter().flatten() {
                    operations.insert(op.as_str().unwrap_or_default().to_string());
                }
            }
            Err(e) => notes.push(format!("{cmd} {name}: report is not JSON: {e}")),
        }
        commands.insert(cmd);
    }
    let missing: Vec<&&str> = REQUIRED_OPERATIONS.iter().filter(|op| !operations.contains(**op)).collect();
    if !missing.is_empty() {
        notes.push(format!("unreached operations {missing:?}"));
    }
    if commands.len() != 6 {
        notes.push(format!("commands exercised: {commands:?}"));
    }
    Outcome::new(
        notes.is_empty(),
        format!(
            "{} cases x 2 runs, {} commands, {} operations, failures: {notes:?}",
            CLI_CASES.len(),
            commands.len(),
            operations.len()
        ),
    )
}
