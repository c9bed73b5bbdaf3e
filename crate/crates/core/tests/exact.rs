use gckit::exact::{
    parse_polynomial, random_polynomial, rat, rref, CMatrix, GaussianRational, Polynomial, Subspace, Variables,
};
use gckit::linear::RandomGc;
use gckit::CoreError;
use proptest::prelude::*;
use rand::{Rng, RngExt};

fn gi(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(rat(re, 1), rat(im, 1))
}

fn random_gaussian(rng: &mut impl Rng, bound: i64) -> GaussianRational {
    gi(rng.random_range(-bound..=bound), rng.random_range(-bound..=bound))
}

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, &GaussianRational::zero(), |_, _| random_gaussian(rng, 2))
}

/// A matrix of rank at most `r`, as a product `(rows × r)·(r × cols)`.
fn low_rank(rng: &mut impl Rng, rows: usize, cols: usize, r: usize) -> CMatrix {
    random_matrix(rng, rows, r).try_mul(&random_matrix(rng, r, cols)).unwrap()
}

fn random_subspace(rng: &mut impl Rng, n: usize) -> Subspace {
    let k = rng.random_range(0..=n);
    let r = rng.random_range(0..=k);
    Subspace::row_space(&low_rank(rng, k, n, r))
}

/// Leibniz determinant over all permutations.
fn leibniz_det(m: &[Vec<GaussianRational>]) -> GaussianRational {
    fn go(m: &[Vec<GaussianRational>], row: usize, used: &mut Vec<bool>, sign: bool) -> GaussianRational {
        if row == m.len() {
            return if sign { -GaussianRational::one() } else { GaussianRational::one() };
        }
        let mut acc = GaussianRational::zero();
        let mut inversions = 0;
        for c in (0..m.len()).rev() {
            if used[c] {
                inversions += 1;
                continue;
            }
            if !m[row][c].is_zero() {
                used[c] = true;
                let sub = go(m, row + 1, used, sign ^ (inversions % 2 == 1));
                used[c] = false;
                acc += &(&m[row][c] * &sub);
            }
        }
        acc
    }
    go(m, 0, &mut vec![false; m.len()], false)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Largest `k` with a nonzero `k × k` minor.
fn minor_rank(m: &CMatrix) -> usize {
    let max = m.rows().min(m.cols());
    (1..=max)
        .rev()
        .find(|&k| {
            subsets(m.rows(), k).iter().any(|rs| {
                subsets(m.cols(), k).iter().any(|cs| {
                    let sub: Vec<Vec<GaussianRational>> =
                        rs.iter().map(|&r| cs.iter().map(|&c| m[(r, c)].clone()).collect()).collect();
                    !leibniz_det(&sub).is_zero()
                })
            })
        })
        .unwrap_or(0)
}

#[test]
fn rref_examples() {
    assert_eq!(rref(&CMatrix::cidentity(2)), CMatrix::cidentity(2));
    assert_eq!(rref(&CMatrix::from_ints(&[&[0, 1], &[0, 2]])), CMatrix::from_ints(&[&[0, 1], &[0, 0]]));
}

#[test]
fn leibniz_oracle_agrees_with_elimination_determinant() {
    let mut rng = RandomGc::rng(1);
    for n in 1..=5 {
        let m = random_matrix(&mut rng, n, n);
        assert_eq!(leibniz_det(&m.row_vecs()), m.det());
    }
}

#[test]
fn rank_matches_minor_oracle() {
    let mut rng = RandomGc::rng(2);
    for trial in 0..40 {
        let r = trial % 6;
        let m = low_rank(&mut rng, 5, 5, r.max(1)).scale(&if r == 0 {
            GaussianRational::zero()
        } else {
            GaussianRational::one()
        });
        let (reduced, pivots) = m.rref_with_pivots();
        assert_eq!(m.rank(), minor_rank(&m));
        assert_eq!(pivots.len(), m.rank());
        assert_eq!(Subspace::row_space(&reduced), Subspace::row_space(&m));
        assert_eq!(rref(&reduced), reduced);
    }
}

#[test]
fn degenerate_pairing_is_rejected() {
    let a = Subspace::coordinate(3, &[0]);
    let g = CMatrix::from_ints(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
    assert_eq!(a.annihilator(&g), Err(CoreError::DegeneratePairing));
    assert!(matches!(a.annihilator(&CMatrix::cidentity(2)), Err(CoreError::Shape(_))));
}

#[test]
fn mixing_variable_sets_is_an_error() {
    let a = Variables::coordinates(2);
    let b = Variables::new(["p", "q"]);
    let f = Polynomial::var(&a, 0);
    let g = Polynomial::var(&b, 0);
    assert!(matches!(f.try_add(&g), Err(CoreError::VariableMismatch { .. })));
    assert!(matches!(f.try_mul(&g), Err(CoreError::VariableMismatch { .. })));
}

#[test]
fn text_grammar_round_trips() {
    let vars = Variables::coordinates(3);
    for s in ["3/2*x1^2*x2 - x3 + 1/4", "i*x1 - (2 - 3*i)*x2^3", "0", "x1*x1*x1 - x1^3 + 7"] {
        let f = parse_polynomial(s, &vars).unwrap();
        assert_eq!(parse_polynomial(&f.to_string(), &vars).unwrap(), f, "{s}");
    }
    let f = parse_polynomial(" 3/2 * x1^2 * x2 ", &vars).unwrap();
    assert_eq!(f, parse_polynomial("3/2*x1^2*x2", &vars).unwrap());
    assert!(parse_polynomial("x4", &vars).is_err());
    assert!(parse_polynomial("1/0", &vars).is_err());
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6).prop_map(|(a, b, c, d)| GaussianRational::new(rat(a, b), rat(c, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dimension_formula(seed in 0u64..10_000, n in 1usize..=12) {
        let mut rng = RandomGc::rng(seed);
        let a = random_subspace(&mut rng, n);
        let b = random_subspace(&mut rng, n);
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(s.contains_subspace(&a) && s.contains_subspace(&b));
        prop_assert!(a.contains_subspace(&i) && b.contains_subspace(&i));
    }

    #[test]
    fn double_annihilator(seed in 0u64..10_000, n in 1usize..=8) {
        let mut rng = RandomGc::rng(seed);
        let a = random_subspace(&mut rng, n);
        let g = loop {
            let m = random_matrix(&mut rng, n, n);
            let sym = m.try_add(&m.transpose()).unwrap();
            if !sym.det().is_zero() {
                break sym;
            }
        };
        let ann = a.annihilator(&g).unwrap();
        prop_assert_eq!(ann.dim(), n - a.dim());
        prop_assert_eq!(ann.annihilator(&g).unwrap(), a);
    }

    #[test]
    fn field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
            prop_assert_eq!(&b * &b.inv().unwrap(), GaussianRational::one());
        }
        prop_assert_eq!(a.norm_sqr(), (&a * &a.conj()).re);
    }

    #[test]
    fn polynomial_ring_axioms(seed in 0u64..10_000) {
        let mut rng = RandomGc::rng(seed);
        let vars = Variables::coordinates(3);
        let f = random_polynomial(&mut rng, &vars, 3, 3);
        let g = random_polynomial(&mut rng, &vars, 3, 2);
        let h = random_polynomial(&mut rng, &vars, 3, 2);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
        for k in 0..3 {
            let lhs = (&f * &g).diff(k);
            let rhs = &(&f.diff(k) * &g) + &(&f * &g.diff(k));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(f.antiderivative(k).diff(k), f.clone());
        }
        let point = [rat(1, 2), rat(-3, 1), rat(2, 3)];
        prop_assert_eq!((&f * &g).eval(&point), &f.eval(&point) * &g.eval(&point));
        prop_assert_eq!(f.conj().conj(), f.clone());
    }

    #[test]
    fn matrix_inverse_and_transpose(seed in 0u64..10_000, n in 1usize..=5) {
        let mut rng = RandomGc::rng(seed);
        let a = random_matrix(&mut rng, n, n);
        let b = random_matrix(&mut rng, n, n);
        prop_assert_eq!(a.try_mul(&b).unwrap().transpose(), b.transpose().try_mul(&a.transpose()).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap().det(), &a.det() * &b.det());
        if !a.det().is_zero() {
            prop_assert_eq!(a.try_mul(&a.inverse().unwrap()).unwrap(), CMatrix::cidentity(n));
            prop_assert_eq!(a.adjugate(), a.inverse().unwrap().scale(&a.det()));
        } else {
            prop_assert_eq!(a.inverse(), Err(CoreError::Singular));
        }
    }
}
