use super::catalog::*;
use super::*;
use crate::linalg::Subspace;
use crate::scalar::{int, rat};

fn v(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| int(x)).collect()
}

fn outer(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

#[test]
fn curl_at_e3_on_e11() {
    let c = curl(3).unwrap();
    let img = c.symbol_eval(&v(&[0, 0, 1])).unwrap().apply(&unit_matrix(3, 0, 0)).unwrap();
    assert_eq!(img, v(&[0, -1, 0, 0, 0, 0, 0, 0, 0]));
}

#[test]
fn symbol_vanishes_at_origin() {
    for name in ["curl", "div", "inc", "divdiv3", "sym grad"] {
        let op = operator(name, 3).unwrap();
        assert!(op.symbol_eval(&v(&[0, 0, 0])).unwrap().matrix.is_zero(), "{name}");
    }
}

#[test]
fn div_of_identity() {
    let d = div(3).unwrap();
    assert_eq!(d.symbol_eval(&v(&[1, 2, 3])).unwrap().apply(&identity_vec(3)).unwrap(), v(&[1, 2, 3]));
}

#[test]
fn anti_entries() {
    let a = anti(&v(&[1, 2, 3]));
    assert_eq!(a.to_rows(), vec![v(&[0, -3, 2]), v(&[3, 0, -1]), v(&[-2, 1, 0])]);
}

#[test]
fn restriction_to_skew_matrices() {
    let c = curl(3).unwrap();
    let skew = part_map("sym", 3).unwrap().kernel();
    assert_eq!(skew.dim(), 3);
    let r = c.restrict(&skew).unwrap();
    let xi = v(&[2, -1, 5]);
    let a = v(&[1, 3, -2]);
    let p = anti(&a).entries().to_vec();
    let coords = skew.basis_matrix().solve(&p).unwrap();
    let got = r.symbol_eval(&xi).unwrap().apply(&coords).unwrap();
    // ξ⊗a − ⟨a,ξ⟩𝟙
    let ip: Rational = a.iter().zip(&xi).map(|(x, y)| x * y).sum();
    let mut expect = outer(&xi, &a);
    for i in 0..3 {
        expect[i * 3 + i] -= &ip;
    }
    assert_eq!(got, expect);
}

#[test]
fn restriction_to_full_and_zero() {
    let c = curl(3).unwrap();
    let full = c.restrict(&Subspace::full(9)).unwrap();
    let xi = v(&[1, 2, 3]);
    assert_eq!(full.symbol_eval(&xi).unwrap().matrix, c.symbol_eval(&xi).unwrap().matrix);
    let zero = c.restrict(&Subspace::zero(9)).unwrap();
    assert_eq!(zero.domain().dim, 0);
    assert!(c.restrict(&Subspace::full(4)).is_err());
}

#[test]
fn postcompose_sym_curl() {
    let c = curl(3).unwrap();
    let sym = part_map("sym", 3).unwrap();
    let sc = c.postcompose(&sym).unwrap();
    let xi = v(&[1, -2, 3]);
    let p = v(&[1, 2, 0, -1, 4, 7, 3, 0, 5]);
    let pa = Matrix::new(3, 3, p.clone()).mul(&anti(&xi)).unwrap();
    let expect = sym.apply(pa.entries()).unwrap();
    assert_eq!(sc.symbol_eval(&xi).unwrap().apply(&p).unwrap(), expect);
    let id = part_map("id", 3).unwrap();
    assert_eq!(c.postcompose(&id).unwrap(), c);
}

#[test]
fn inc_of_identity() {
    let op = inc().unwrap();
    assert_eq!(op.order(), 2);
    let xi = v(&[1, 2, -3]);
    let got = op.symbol_eval(&xi).unwrap().apply(&identity_vec(3)).unwrap();
    let n2: Rational = xi.iter().map(|x| x * x).sum();
    let mut expect: Vec<Rational> = outer(&xi, &xi).into_iter().map(|x| -x).collect();
    for i in 0..3 {
        expect[i * 3 + i] += &n2;
    }
    assert_eq!(got, expect);
    let tr = part_map("tr", 3).unwrap().apply(&got).unwrap();
    assert_eq!(tr, vec![n2 * int(2)]);
    assert!(part_map("skew", 3).unwrap().apply(&got).unwrap().iter().all(|x| *x == int(0)));
}

#[test]
fn gradient_operators() {
    let sym = part_map("sym", 3).unwrap();
    let g = gradient_operator(&sym, 3).unwrap();
    let img = g.symbol_eval(&v(&[1, 0, 0])).unwrap().apply(&v(&[0, 1, 0])).unwrap();
    let mut expect = vec![int(0); 9];
    expect[3] = rat(1, 2);
    expect[1] = rat(1, 2);
    assert_eq!(img, expect);

    let id = gradient_operator(&part_map("id", 3).unwrap(), 3).unwrap();
    assert!(id.symbol_eval(&v(&[1, 1, 0])).unwrap().kernel().is_trivial());

    let tr = gradient_operator(&part_map("tr", 3).unwrap(), 3).unwrap();
    let xi = v(&[1, 2, 2]);
    let k = tr.symbol_eval(&xi).unwrap().kernel();
    assert_eq!(k.dim(), 2);
    assert!(k.orth_complement().contains(&xi));
}

#[test]
fn part_map_kernels() {
    let dims = [("id", 0), ("dev", 1), ("sym", 3), ("devsym", 4), ("skewtr", 5), ("skew", 6), ("tr", 8)];
    for (name, d) in dims {
        assert_eq!(part_map(name, 3).unwrap().kernel().dim(), d, "{name}");
    }
    assert!(part_map("dev", 3).unwrap().apply(&identity_vec(3)).unwrap().iter().all(|x| *x == int(0)));
    let s = v(&[1, 2, 3, 2, 5, 6, 3, 6, 9]);
    assert!(part_map("skew", 3).unwrap().apply(&s).unwrap().iter().all(|x| *x == int(0)));
    assert!(part_map("skew+tr", 3).is_ok());
    assert!(matches!(part_map("bogus", 3), Err(Error::UnknownName(_))));
}

#[test]
fn compose_label_mismatch() {
    let c = curl(3).unwrap();
    let d2 = div(2).unwrap();
    assert!(compose_ops(&d2, &c).is_err());
    assert!(c.postcompose(&part_map("sym", 2).unwrap()).is_err());
}

#[test]
fn json_round_trip_is_bit_exact() {
    for name in ["curl", "dev sym curl", "inc", "divdiv3", "sym grad"] {
        let op = operator(name, 3).unwrap();
        let s = serde_json::to_string(&op).unwrap();
        let back: HomOperator = serde_json::from_str(&s).unwrap();
        assert_eq!(back, op);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
    let pm = part_map("devsym", 3).unwrap();
    let s = serde_json::to_string(&pm).unwrap();
    assert_eq!(serde_json::from_str::<PartMap>(&s).unwrap(), pm);
}

#[test]
fn json_rejects_bad_order() {
    let mut doc: OperatorDoc = curl(3).unwrap().into();
    doc.coefficients[0].alpha = vec![2, 0, 0];
    assert!(HomOperator::try_from(doc).is_err());
}

#[test]
fn divdiv3_on_multiples_of_identity() {
    let op = divdiv3().unwrap();
    let xi = v(&[1, 2, 3]);
    assert_eq!(op.symbol_eval(&xi).unwrap().apply(&identity_vec(3)).unwrap(), v(&[5, 9]));
}
