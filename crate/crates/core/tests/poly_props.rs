use kms_core::linalg::Matrix;
use kms_core::poly::{buchberger, interval_eval, monomials_of_degree, variety_only_origin, Interval, IntervalBox, Monomial, Polynomial};
use kms_core::scalar::{rat, Rational};
use proptest::prelude::*;

const VARS: usize = 3;

fn rational() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=2).prop_map(|(p, q)| rat(p, q))
}

fn homogeneous(degree: u32) -> impl Strategy<Value = Polynomial> {
    let monos = monomials_of_degree(VARS, degree);
    prop::collection::vec(prop_oneof![2 => Just(rat(0, 1)), 1 => rational()], monos.len())
        .prop_map(move |cs| Polynomial::from_terms(VARS, monos.iter().cloned().zip(cs)))
}

fn nonzero_homogeneous(degree: u32) -> impl Strategy<Value = Polynomial> {
    homogeneous(degree).prop_filter("nonzero", |p| !p.is_zero())
}

/// Degree-`d` membership by linear algebra: `f ∈ I_d = span{m·g : deg m = d − deg g}`.
/// Exact for homogeneous generators.
fn macaulay_member(f: &Polynomial, gens: &[Polynomial], d: u32) -> bool {
    let basis = monomials_of_degree(VARS, d);
    let column = |p: &Polynomial| basis.iter().map(|m| p.coeff(m)).collect::<Vec<_>>();
    let mut cols = Vec::new();
    for g in gens {
        let dg = g.total_degree().unwrap();
        if dg > d {
            continue;
        }
        for m in monomials_of_degree(VARS, d - dg) {
            cols.push(column(&g.mul_term(&m, &rat(1, 1))));
        }
    }
    if cols.is_empty() {
        return f.is_zero();
    }
    let span = Matrix::from_columns(basis.len(), &cols);
    let with_f = Matrix::from_columns(basis.len(), &[cols.clone(), vec![column(f)]].concat());
    span.rank() == with_f.rank()
}

fn ideal() -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec((1u32..=2).prop_flat_map(nonzero_homogeneous), 1..=3)
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), VARS)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn generators_are_members(gens in ideal()) {
        let gb = buchberger(&gens).unwrap();
        prop_assert!(gb.is_groebner());
        for g in &gens {
            prop_assert!(gb.reduce(g).is_zero());
        }
    }

    #[test]
    fn membership_agrees_with_linear_algebra(gens in ideal(), f in homogeneous(3), coeffs in prop::collection::vec(homogeneous(1), 3)) {
        let gb = buchberger(&gens).unwrap();
        prop_assert_eq!(gb.contains(&f), macaulay_member(&f, &gens, 3));
        // a combination of generators with cofactors of degree 3 − deg g
        let mut member = Polynomial::zero(VARS);
        for (g, c) in gens.iter().zip(&coeffs) {
            let c = if g.total_degree() == Some(2) { c.clone() } else { c.mul(c) };
            member = member.add(&c.mul(g));
        }
        prop_assert!(gb.contains(&member));
        prop_assert!(macaulay_member(&member, &gens, 3));
    }

    #[test]
    fn interval_eval_is_sound(p in (1u32..=3).prop_flat_map(homogeneous), lo in point(), width in prop::collection::vec(0i64..=4, VARS), samples in prop::collection::vec(prop::collection::vec(0i64..=8, VARS), 20)) {
        let bx = IntervalBox(lo.iter().zip(&width).map(|(l, w)| Interval::new(l.clone(), l + rat(*w, 2)).unwrap()).collect());
        let enclosure = interval_eval(&p, &bx).unwrap();
        for s in samples {
            // s/8 of the way across each side
            let x: Vec<Rational> = lo.iter().zip(&width).zip(&s).map(|((l, w), t)| l + rat(*w, 2) * rat(*t, 8)).collect();
            prop_assert!(bx.contains(&x));
            prop_assert!(enclosure.contains(&p.eval(&x).unwrap()));
        }
    }

    #[test]
    fn independent_linear_forms_cut_out_the_origin(m in prop::collection::vec(rational(), VARS * VARS)) {
        let rows: Vec<Vec<Rational>> = m.chunks(VARS).map(|r| r.to_vec()).collect();
        let rank = Matrix::from_rows(&rows).rank();
        let forms: Vec<Polynomial> = rows
            .iter()
            .map(|r| Polynomial::from_terms(VARS, (0..VARS).map(|i| (Monomial::var(VARS, i), r[i].clone()))))
            .filter(|p| !p.is_zero())
            .collect();
        prop_assert_eq!(variety_only_origin(&forms).unwrap(), rank == VARS);
    }
}

#[test]
fn interval_soundness_on_a_thousand_points() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let x = |i| Polynomial::var(VARS, i);
    // x³ − 2xy z + y² − 1/3
    let p = x(0).pow(3).sub(&x(0).mul(&x(1)).mul(&x(2)).scale(&rat(2, 1))).add(&x(1).pow(2)).sub(&Polynomial::constant(VARS, rat(1, 3)));
    let bx = IntervalBox(vec![
        Interval::new(rat(-1, 2), rat(1, 1)).unwrap(),
        Interval::new(rat(0, 1), rat(3, 4)).unwrap(),
        Interval::new(rat(-2, 1), rat(-1, 1)).unwrap(),
    ]);
    let enclosure = interval_eval(&p, &bx).unwrap();
    for _ in 0..1000 {
        let pt: Vec<Rational> = bx
            .0
            .iter()
            .map(|iv| iv.lo.clone() + iv.width() * rat(rng.gen_range(0..=1000), 1000))
            .collect();
        assert!(enclosure.contains(&p.eval(&pt).unwrap()));
    }
}
