use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use uawa_core::linalg::ExactMatrix;
use uawa_core::ncalgebra::{parse_ncpoly, print_ncpoly, RewriteSystem, DEFAULT_DEGREE_CAP};
use uawa_core::repkit::{assemble, burnside_exact, burnside_irreducible, burnside_rank_modp};
use uawa_core::samples::{random_ncpoly, rng};
use uawa_core::text::{parse_qexpr, print_qexpr};
use uawa_core::{make_field, Cyc, Field, FieldExt};

const ORDERS: [u32; 8] = [3, 5, 6, 7, 8, 9, 10, 12];

fn elem(field: &Field, raw: &[(i64, i64)]) -> Cyc {
    let coeffs: Vec<BigRational> =
        raw.iter().map(|&(n, m)| BigRational::new(BigInt::from(n), BigInt::from(m))).collect();
    Cyc::from_rationals(field, &coeffs)
}

fn order_and_coeffs() -> impl Strategy<Value = (u32, Vec<(i64, i64)>)> {
    (prop::sample::select(ORDERS.to_vec()), prop::collection::vec((-9i64..=9, 1i64..=6), 1..14))
}

fn small_matrix(field: &Field, n: usize, raw: &[i64]) -> ExactMatrix {
    let rows = (0..n).map(|i| (0..n).map(|j| field.int(raw[i * n + j])).collect()).collect();
    ExactMatrix::from_rows(field, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_is_two_sided((d, raw) in order_and_coeffs()) {
        let f = make_field(d).unwrap();
        let x = elem(&f, &raw);
        prop_assume!(!x.is_zero());
        let y = x.inv().unwrap();
        prop_assert!((&x * &y).is_one());
        prop_assert!((&y * &x).is_one());
    }

    #[test]
    fn reduction_is_idempotent((d, raw) in order_and_coeffs()) {
        let f = make_field(d).unwrap();
        let x = elem(&f, &raw);
        let r = x.reduced();
        prop_assert_eq!(r.reduced(), r.clone());
        prop_assert_eq!(r, x.clone());
        prop_assert_eq!(&x * &f.q_power(d as i64), x);
    }

    #[test]
    fn qexpr_round_trip((d, raw) in order_and_coeffs()) {
        let f = make_field(d).unwrap();
        let x = elem(&f, &raw);
        let s = print_qexpr(&x);
        prop_assert_eq!(parse_qexpr(&f, &s).unwrap(), x);
    }

    #[test]
    fn ncpoly_round_trip(d in prop::sample::select(vec![3u32, 5, 8]), seed in 0u64..1000) {
        let f = make_field(d).unwrap();
        let p = random_ncpoly(&f, &mut rng(seed), 5, 4);
        prop_assert_eq!(parse_ncpoly(&f, &print_ncpoly(&p)).unwrap(), p);
    }

    #[test]
    fn modp_rank_bounds_exact_rank(d in prop::sample::select(vec![3u32, 5, 6]), n in 1usize..=3,
                                   raw in prop::collection::vec(-2i64..=2, 18)) {
        let f = make_field(d).unwrap();
        let a = small_matrix(&f, n, &raw[..n * n]);
        let b = small_matrix(&f, n, &raw[9..9 + n * n]);
        let rep = assemble(a, b, f.int(1) + f.q()).unwrap();
        let (irr, rank) = burnside_exact(&rep);
        let fast = burnside_rank_modp(&rep).unwrap();
        prop_assert!(fast <= rank);
        prop_assert_eq!(burnside_irreducible(&rep).0, irr);
        let sum = rep.direct_sum(&rep).unwrap();
        prop_assert!(!burnside_irreducible(&sum).0);
    }
}

#[test]
fn normal_form_is_idempotent() {
    let f = make_field(5).unwrap();
    let sys = RewriteSystem::shared(&f, DEFAULT_DEGREE_CAP).unwrap();
    let mut r = rng(7);
    for _ in 0..40 {
        let p = random_ncpoly(&f, &mut r, 5, 3);
        let nf = sys.normal_form(&p).unwrap();
        assert_eq!(sys.normal_form(&nf).unwrap(), nf);
    }
}
