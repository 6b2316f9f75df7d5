use edr_core::kaplansky::{kap_smith2x2, kap_w, smithmxn};
use edr_core::matrix::strict_maps;
use edr_core::smith::{
    compare_invariant_factors, determinantal_divisor, smith, smith_seq, verify_smith,
};
use edr_core::{
    BezoutDomain, Edr, FpPoly, GcdDomain, IndexMap, Integers, Matrix, Presentation, QPoly, Ring,
    Strategy,
};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::strategy::Strategy as Gen;

fn zm(m: usize, n: usize, v: &[i64]) -> Matrix<BigInt> {
    Matrix::from_i64(&Integers, m, n, v)
}

fn int_matrix(max: usize, bound: i64) -> impl Gen<Value = Matrix<BigInt>> {
    (1..=max, 1..=max).prop_flat_map(move |(m, n)| {
        proptest::collection::vec(-bound..=bound, m * n).prop_map(move |v| zm(m, n, &v))
    })
}

fn fp_matrix(max: usize) -> impl Gen<Value = Matrix<<FpPoly as Ring>::Elem>> {
    (1..=max, 1..=max).prop_flat_map(|(m, n)| {
        proptest::collection::vec(proptest::collection::vec(0i64..5, 0..=4), m * n).prop_map(
            move |v| {
                let r = FpPoly::new(5).unwrap();
                Matrix::from_vec(m, n, v.iter().map(|c| r.from_ints(c)).collect()).unwrap()
            },
        )
    })
}

/// Unimodular matrix built from random elementary operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Matrix<BigInt> {
    let r = Integers;
    let mut u = Matrix::identity(&r, n);
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            u.scale_row(&r, i, &BigInt::from(-1));
        } else {
            u.axpy_rows(&r, i, j, &BigInt::from(c));
        }
    }
    u
}

fn ops() -> impl Gen<Value = Vec<(usize, usize, i64)>> {
    proptest::collection::vec((0usize..6, 0usize..6, -3i64..=3), 0..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_strategy_gives_a_smith_form_over_z(m in int_matrix(6, 50)) {
        let r = Integers;
        let reference = smith(&r, &m, Strategy::Euclidean).unwrap();
        for s in Strategy::ALL {
            let res = smith(&r, &m, s).unwrap();
            prop_assert!(verify_smith(&r, &m, &res).all_pass(), "{s}: {:?}", verify_smith(&r, &m, &res));
            prop_assert_eq!(&res.d, &reference.d);
        }
    }

    #[test]
    fn every_strategy_gives_a_smith_form_over_f5(m in fp_matrix(4)) {
        let r = FpPoly::new(5).unwrap();
        let reference = smith(&r, &m, Strategy::Euclidean).unwrap();
        let bound = m.rows().min(m.cols());
        for s in Strategy::ALL {
            let res = smith(&r, &m, s).unwrap();
            prop_assert!(verify_smith(&r, &m, &res).all_pass());
            prop_assert!(compare_invariant_factors(&r, &res.d, &reference.d, bound));
        }
        let d = smith_seq(&r, &reference.d, bound);
        let mut prod = r.one();
        for k in 1..=bound {
            prod = r.mul(&prod, &d[k - 1]);
            prop_assert!(r.associates(&prod, &determinantal_divisor(&r, &m, k).unwrap()));
        }
    }

    #[test]
    fn binet_cauchy_over_z(k in 1usize..=3, l in 1usize..=6, seed in proptest::collection::vec(-9i64..=9, 36)) {
        let r = Integers;
        let m = zm(k, l, &seed[..k * l]);
        let n = zm(l, k, &seed[36 - k * l..]);
        let lhs = m.mul(&r, &n).unwrap().determinant(&r).unwrap();
        let id = IndexMap::identity(k);
        let rhs = strict_maps(k, l).iter().fold(BigInt::from(0), |acc, f| {
            acc + m.minor(&r, &id, f).unwrap() * n.minor(&r, f, &id).unwrap()
        });
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kermx_is_complete(m in int_matrix(5, 6), ys in proptest::collection::vec(-5i64..=5, 5), xs in proptest::collection::vec(-5i64..=5, 5)) {
        let e = Edr::new(Integers).unwrap();
        let r = Integers;
        let k = e.kermx(&m).unwrap();
        prop_assert!(k.mul(&r, &m).unwrap().is_zero(&r));
        let y = zm(1, m.rows(), &ys[..m.rows()]);
        let x = y.mul(&r, &k).unwrap();
        prop_assert!(e.solve_xm_eq_b(&k, &x).unwrap().is_some());
        let x = zm(1, m.rows(), &xs[..m.rows()]);
        let in_kernel = x.mul(&r, &m).unwrap().is_zero(&r);
        prop_assert_eq!(e.solve_xm_eq_b(&k, &x).unwrap().is_some(), in_kernel);
    }

    #[test]
    fn cokermx_is_complete(m in int_matrix(5, 6), xs in proptest::collection::vec(-5i64..=5, 5)) {
        let e = Edr::new(Integers).unwrap();
        let r = Integers;
        let c = e.cokermx(&m).unwrap();
        prop_assert!(m.mul(&r, &c).unwrap().is_zero(&r));
        let x = zm(m.cols(), 1, &xs[..m.cols()]);
        let in_kernel = m.mul(&r, &x).unwrap().is_zero(&r);
        let member = e.solve_xm_eq_b(&c.transpose(), &x.transpose()).unwrap().is_some();
        prop_assert_eq!(member, in_kernel);
    }

    #[test]
    fn solve_returns_exact_solutions(m in int_matrix(4, 5), b in proptest::collection::vec(-8i64..=8, 8)) {
        let e = Edr::new(Integers).unwrap();
        let r = Integers;
        let b = zm(2, m.cols(), &b[..2 * m.cols()]);
        if let Some(x) = e.solve_xm_eq_b(&m, &b).unwrap() {
            prop_assert_eq!(x.mul(&r, &m).unwrap(), b);
        }
    }

    #[test]
    fn decompose_is_invariant(m in int_matrix(5, 10), u in ops(), v in ops()) {
        let e = Edr::new(Integers).unwrap();
        let r = Integers;
        let um = unimodular(m.rows(), &u).mul(&r, &m).unwrap().mul(&r, &unimodular(m.cols(), &v)).unwrap();
        let a = Presentation::new(m);
        let b = Presentation::new(um);
        prop_assert_eq!(e.decompose(&a).unwrap(), e.decompose(&b).unwrap());
        prop_assert!(e.is_isomorphic(&a, &a).unwrap());
        prop_assert!(e.is_isomorphic(&b, &a).unwrap());
    }

    #[test]
    fn stabilization_preserves_isomorphism(m in int_matrix(4, 10), other in int_matrix(4, 10)) {
        let e = Edr::new(Integers).unwrap();
        let r = Integers;
        let grow = |x: &Matrix<BigInt>| {
            Matrix::block_mx(&Matrix::identity(&r, 1), &Matrix::zeros(&r, 1, x.cols()), &Matrix::zeros(&r, x.rows(), 1), x).unwrap()
        };
        let (a, b) = (Presentation::new(m.clone()), Presentation::new(other.clone()));
        let sa = Presentation::new(grow(&m));
        prop_assert!(e.is_isomorphic(&a, &sa).unwrap());
        prop_assert_eq!(e.is_isomorphic(&a, &b).unwrap(), e.is_isomorphic(&sa, &b).unwrap());
        prop_assert_eq!(e.is_isomorphic(&a, &b).unwrap(), e.is_isomorphic(&b, &a).unwrap());
    }

    #[test]
    fn kaplansky_over_f5(a in proptest::collection::vec(0i64..5, 0..4), b in proptest::collection::vec(0i64..5, 0..4), c in proptest::collection::vec(0i64..5, 0..4)) {
        let r = FpPoly::new(5).unwrap();
        let (a, b, c) = (r.from_ints(&a), r.from_ints(&b), r.from_ints(&c));
        prop_assume!(r.is_unit(&r.gcd(&a, &r.gcd(&b, &c))));
        let w = kap_w(&r, &a, &b, &c).unwrap();
        let pa = r.mul(&w.p, &a);
        let s = r.add(&r.mul(&w.p, &b), &r.mul(&w.q, &c));
        prop_assert!(r.is_unit(&r.gcd(&pa, &s)));
        prop_assert_eq!(r.add(&r.mul(&w.x1, &pa), &r.mul(&w.y1, &s)), r.one());
    }
}

#[test]
fn smithmxn_over_qpoly() {
    let r = QPoly::new();
    let p = |c: &[i64]| r.from_ints(c);
    let m = Matrix::from_vec(
        3,
        3,
        vec![
            p(&[0, 1]),
            p(&[1, 1]),
            p(&[2]),
            p(&[0, 0, 1]),
            p(&[1]),
            p(&[-1, 1]),
            p(&[0, 1]),
            p(&[1, 1]),
            p(&[2]),
        ],
    )
    .unwrap();
    let res = smithmxn(&r, &m, &|r, m| kap_smith2x2(r, m)).unwrap();
    assert!(verify_smith(&r, &m, &res).all_pass());
    let e = smith(&r, &m, Strategy::Euclidean).unwrap();
    assert_eq!(res.d, e.d);
    assert_eq!(r.egcdr(&p(&[0, 1]), &p(&[1])).g, r.one());
}
