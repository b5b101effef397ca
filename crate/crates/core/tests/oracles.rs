mod common;

use proptest::prelude::*;

use common::*;
use tubular::checks::default_presentation;
use tubular::curve::{monoid_witness, positive_coset_elements, psi, psi_inverse};
use tubular::field::Field;
use tubular::grading::Deg;
use tubular::string_group::WeightSeq;

fn arb_weights() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(2i64..7, 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn component_dims_match_koszul_count(ws in arb_weights(), l in -3i64..8, seed in any::<u64>()) {
        let w = WeightSeq::new(&ws).unwrap();
        let coeffs: Vec<i64> = w.weights().iter().enumerate()
            .map(|(i, &p)| ((seed >> (8 * i)) as i64).rem_euclid(p))
            .collect();
        let x = w.normal_form(l, &coeffs).unwrap();
        let pres = default_presentation(&w, Field::Rational, &[]).unwrap();
        prop_assert_eq!(pres.component_basis(&x).len() as i64, ci_dim(&x));
    }

    #[test]
    fn psi_matches_search(t in 0usize..4, n in -3i64..6, a in 0i64..12) {
        let w = WeightSeq::parse(TUBULAR[t]).unwrap();
        let a = a % w.lcm();
        let x = psi_inverse(&w, Deg { n, a });
        prop_assert_eq!(h_coordinates(&x, 8), Some((n, a)));
        prop_assert_eq!(psi(&x).unwrap(), Deg { n, a });
    }

    #[test]
    fn witnesses_reconstruct(t in 0usize..4, n in 0i64..12, a in 0i64..12) {
        let w = WeightSeq::parse(TUBULAR[t]).unwrap();
        let x = psi_inverse(&w, Deg { n, a: a % w.lcm() });
        let gens = positive_coset_elements(&w).unwrap();
        match monoid_witness(&x).unwrap() {
            Some(c) => {
                let sum = gens.iter().zip(&c).fold(w.zero(), |acc, (g, &k)| &acc + &g.smul(k as i64));
                prop_assert_eq!(sum, x);
            }
            None => prop_assert!(x.phi() < 0),
        }
    }
}

#[test]
fn plane_cubic_hilbert_function() {
    for t in TYPES {
        let tag = tubular::curve::CurveTag::parse(t).unwrap();
        let field = Field::Rational;
        let lambda = (t == "2222").then(|| field.parse_scalar("5/3").unwrap());
        let ty = tubular::curve::CurveType::new(tag, lambda, field).unwrap();
        for n in 0..=20i64 {
            let want = binomial(n + 2, 2) - binomial(n - 1, 2);
            assert_eq!(ty.basis(n as u32).len() as i64, want, "{t}, n = {n}");
        }
    }
}

#[test]
fn koszul_count_of_small_components() {
    let w = WeightSeq::parse("2,2,2,2").unwrap();
    assert_eq!(ci_dim(&elem(&w, "c")), 2);
    assert_eq!(ci_dim(&elem(&w, "x1 + x2 + x3 + x4")), 1);
    assert_eq!(ci_dim(&elem(&w, "-c")), 0);
}
