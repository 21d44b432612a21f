use num_rational::BigRational;
use podles::calculus::{calibration, Form, Frame};
use podles::hermitian::{codifferential, hodge, inner, inner_via_hodge, laplacian, metric, Flavor};
use podles::lefschetz::{lefschetz_dual, lefschetz_l};
use podles::qalgebra::star;
use podles::verify::{build_block, Sector};
use podles::Scalar;
use proptest::prelude::*;

/// Genuine forms from blocks 0 and 2.
fn basis() -> Vec<Form> {
    [0, 2].iter().flat_map(|n| build_block(*n).basis().to_vec()).collect()
}

fn forms() -> impl Strategy<Value = Form> {
    let all = basis();
    let n = all.len();
    proptest::collection::vec((0..n, -3i64..=3, -3i64..=3), 1..4).prop_map(move |terms| {
        terms.into_iter().fold(Form::zero(), |acc, (k, re, im)| {
            let c = &Scalar::from_int(re) + &(&Scalar::from_int(im) * &Scalar::i());
            &acc + &all[k].scale(&c)
        })
    })
}

fn at(x: &Scalar, n: i64, d: i64) -> num_complex::Complex<BigRational> {
    x.specialize(&BigRational::new(n.into(), d.into())).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn metric_is_hermitian(w in forms(), v in forms()) {
        prop_assert_eq!(star(&metric(&w, &v)), metric(&v, &w));
        prop_assert_eq!(inner(&w, &v).conj(), inner(&v, &w));
    }

    #[test]
    fn inner_product_is_positive(w in forms()) {
        prop_assume!(!w.is_zero());
        for (n, d) in [(1, 2), (7, 10), (1, 1)] {
            let x = at(&inner(&w, &w), n, d);
            prop_assert!(x.im == BigRational::from_integer(0.into()));
            prop_assert!(x.re > BigRational::from_integer(0.into()));
        }
    }

    #[test]
    fn inner_product_routes_agree(w in forms(), v in forms()) {
        prop_assert_eq!(inner(&w, &v), inner_via_hodge(&w, &v));
    }

    #[test]
    fn codifferentials_are_adjoint(w in forms(), v in forms()) {
        let cal = calibration();
        for fl in Flavor::ALL {
            let dw = match fl {
                Flavor::D => cal.differential(&w),
                Flavor::Del => cal.del(&w),
                Flavor::Dbar => cal.dbar(&w),
            };
            prop_assert_eq!(inner(&dw, &v), inner(&w, &codifferential(&v, fl)));
        }
    }

    #[test]
    fn lefschetz_pair_is_adjoint(w in forms(), v in forms()) {
        prop_assert_eq!(inner(&lefschetz_l(&w), &v), inner(&w, &lefschetz_dual(&v)));
    }

    #[test]
    fn hodge_map_is_an_isometry(w in forms(), v in forms()) {
        prop_assert_eq!(inner(&hodge(&w), &hodge(&v)), inner(&w, &v));
    }
}

#[test]
fn distinct_blocks_are_orthogonal() {
    let blocks: Vec<_> = (0..=4).map(build_block).collect();
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            for x in a.basis() {
                for y in b.basis() {
                    assert!(inner(x, y).is_zero(), "{x} vs {y}");
                }
            }
        }
    }
}

/// By covariance and irreducibility the Laplacian is a scalar on each block
/// of functions, and the Hodge map carries that scalar to the top forms.
#[test]
fn laplacian_is_a_scalar_on_function_blocks() {
    for n in [2, 4] {
        let b = build_block(n);
        let idx = b.sector_indices(Sector::Omega0);
        let first = &b.basis()[idx[0]];
        let lap = laplacian(first, Flavor::D);
        let ratio = {
            let top = b.algebra.iter().find(|w| w.right_weight == 0).unwrap().top;
            let x = lap.coeff(Frame::One).coefficient(&top);
            let y = first.coeff(Frame::One).coefficient(&top);
            &x / &y
        };
        assert!(!ratio.is_zero());
        for &i in idx {
            let f = &b.basis()[i];
            assert_eq!(laplacian(f, Flavor::D), f.scale(&ratio));
            let top = hodge(f);
            assert_eq!(laplacian(&top, Flavor::D), top.scale(&ratio));
        }
    }
}
