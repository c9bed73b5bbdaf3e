//! Named structures used by the identity suites.

use std::sync::Arc;

use super::FieldGC;
use crate::cartan::KForm;
use crate::exact::{parse_polynomial, PolyMatrix, Polynomial, Rational, Variables};
use crate::linear::{ConstantGC, RandomGc};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub gc: FieldGC,
    /// Whether the structure is expected to be integrable.
    pub integrable: bool,
    /// A point where the Poisson block vanishes, if any is known.
    pub rank_zero_point: Option<Vec<Rational>>,
}

fn poly_matrix(vars: &Arc<Variables>, rows: &[&[&str]]) -> PolyMatrix {
    let z = Polynomial::zero(vars);
    let parsed =
        rows.iter().map(|r| r.iter().map(|s| parse_polynomial(s, vars).expect("fixture entry")).collect()).collect();
    PolyMatrix::from_rows(parsed, &z).expect("rectangular fixture")
}

fn block_matrix(j: &PolyMatrix, pi: &PolyMatrix) -> PolyMatrix {
    let z = PolyMatrix::zeros(j.rows(), j.rows(), j.zero_elem());
    PolyMatrix::from_blocks(j, pi, &z, &j.transpose().neg()).expect("square blocks")
}

/// The complex structure `J∂x = ∂y` on ℝ⁴ `(x₁, y₁, x₂, y₂)` deformed by a
/// Poisson block linear in the coordinates, built from `β = z₁ ∂z₁∧∂z₂`.
///
/// The candidates are the real and imaginary parts of `4β` (as bivector
/// component matrices); the first one satisfying every algebraic constraint
/// and the frame-pair integrability check is returned.
pub fn holomorphic_poisson() -> FieldGC {
    let vars = Variables::new(["x1", "y1", "x2", "y2"]);
    let j = ConstantGC::standard_complex(4).j_block();
    let j = PolyMatrix::from_constant(&j, &Polynomial::zero(&vars));
    // component matrices P[a][b] = {x_b, x_a} of Re(4β) and Im(4β)
    let re: &[&[&str]] =
        &[&["0", "0", "-x1", "-y1"], &["0", "0", "-y1", "x1"], &["x1", "y1", "0", "0"], &["y1", "-x1", "0", "0"]];
    let im: &[&[&str]] =
        &[&["0", "0", "-y1", "x1"], &["0", "0", "x1", "y1"], &["y1", "-x1", "0", "0"], &["-x1", "-y1", "0", "0"]];
    for candidate in [im, re] {
        let jmat = block_matrix(&j, &poly_matrix(&vars, candidate));
        if let Ok(g) = FieldGC::from_matrix(jmat, 4) {
            if g.nijenhuis_check() {
                return g;
            }
        }
    }
    panic!("no candidate Poisson block passes the constraints");
}

/// `ω = dx₁∧dx₂ + dx₃∧dx₄ + 2x₂ dx₂∧dx₄`: closed, with unit Pfaffian.
pub fn polynomial_symplectic() -> FieldGC {
    let vars = Variables::coordinates(4);
    let omega = poly_matrix(
        &vars,
        &[&["0", "1", "0", "0"], &["-1", "0", "0", "2*x2"], &["0", "0", "0", "1"], &["0", "-2*x2", "-1", "0"]],
    );
    FieldGC::symplectic_from_gram(&omega).expect("unit Pfaffian")
}

/// `ω = dx₁∧dx₂ + x₁ dx₂∧dx₃ + dx₃∧dx₄`: nondegenerate with unit Pfaffian but
/// `dω = dx₁∧dx₂∧dx₃ ≠ 0`.
pub fn non_integrable_symplectic() -> FieldGC {
    let vars = Variables::coordinates(4);
    let omega = poly_matrix(
        &vars,
        &[&["0", "1", "0", "0"], &["-1", "0", "x1", "0"], &["0", "-x1", "0", "1"], &["0", "0", "-1", "0"]],
    );
    FieldGC::symplectic_from_gram(&omega).expect("unit Pfaffian")
}

fn constant_b(vars: &Arc<Variables>, d: usize, entries: &[(usize, usize, &str)]) -> KForm {
    let mut b = KForm::zero(vars, d, 2);
    for &(i, j, c) in entries {
        b = b.add(&KForm::elementary(&parse_polynomial(c, vars).unwrap(), d, &[i, j]));
    }
    b
}

fn origin(d: usize) -> Vec<Rational> {
    vec![Rational::from_integer(0.into()); d]
}

/// Integrable structures in dimensions 2 to 6 plus one non-integrable member.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let mut push = |name: String, gc: FieldGC, integrable: bool, rank_zero_point: Option<Vec<Rational>>| {
        out.push(CorpusEntry { name, gc, integrable, rank_zero_point })
    };
    for d in [2, 4, 6] {
        let vars = Variables::coordinates(d);
        push(format!("symplectic-{d}"), FieldGC::from_constant(&ConstantGC::standard_symplectic(d), &vars), true, None);
        push(
            format!("complex-{d}"),
            FieldGC::from_constant(&ConstantGC::standard_complex(d), &vars),
            true,
            Some(origin(d)),
        );
    }
    let shapes = [(2, 0), (0, 2), (2, 2), (4, 0), (0, 4), (2, 2), (2, 4), (4, 2), (0, 6), (6, 0)];
    let mut rng = RandomGc::rng(0x5eed);
    for (k, &(a, c)) in shapes.iter().enumerate() {
        let s = RandomGc::new(a, c).generate(&mut rng);
        let vars = Variables::coordinates(a + c);
        let point = (a == 0).then(|| origin(a + c));
        push(format!("random-{k}-s{a}c{c}"), FieldGC::from_constant(&s.gc, &vars), true, point);
    }
    let poly_sym = polynomial_symplectic();
    let vars4 = poly_sym.vars().clone();
    push("polynomial-symplectic".into(), poly_sym.clone(), true, None);
    let b = constant_b(&vars4, 4, &[(0, 2, "1"), (1, 3, "-2"), (0, 3, "1/2")]);
    push("polynomial-symplectic-b".into(), poly_sym.b_transform(&b).unwrap(), true, None);
    let hol = holomorphic_poisson();
    let hvars = hol.vars().clone();
    push("holomorphic-poisson".into(), hol.clone(), true, Some(origin(4)));
    let hb = constant_b(&hvars, 4, &[(0, 1, "1"), (2, 3, "3"), (0, 3, "-1")]);
    push("holomorphic-poisson-b".into(), hol.b_transform(&hb).unwrap(), true, Some(origin(4)));
    // B = d(x₁² dx₃) is closed and non-constant
    let cx = FieldGC::from_constant(&ConstantGC::standard_complex(4), &vars4);
    let closed = KForm::elementary(&parse_polynomial("2*x1", &vars4).unwrap(), 4, &[0, 2]);
    push("complex-closed-b".into(), cx.b_transform(&closed).unwrap(), true, Some(origin(4)));
    push("non-integrable-symplectic".into(), non_integrable_symplectic(), false, None);
    out
}
