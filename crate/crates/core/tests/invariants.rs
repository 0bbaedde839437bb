//! Property tests for the structural invariants: axiom validity of the
//! constructors, bisection-group laws, quotient reconstruction, and the
//! *-algebra identities under random coefficients.

use groupoids::algebra::{convolve, involution, GroupoidFunction};
use groupoids::bisections::{bisection_group, enumerate_bisections, reconstruct};
use groupoids::group::FiniteGroup;
use groupoids::groupoid::{
    c2_4, direct_product, group_groupoid, pair_groupoid, verify_groupoid_axioms, FiniteGroupoid,
};
use groupoids::Limits;
use num_complex::Complex64;
use proptest::prelude::*;

fn limits() -> Limits {
    Limits::default()
}

/// A small corpus groupoid chosen by index; keeps the strategy shrinkable.
fn corpus_groupoid(which: usize) -> FiniteGroupoid {
    match which {
        0 => pair_groupoid(1).unwrap(),
        1 => pair_groupoid(2).unwrap(),
        2 => pair_groupoid(3).unwrap(),
        3 => c2_4(),
        4 => group_groupoid(&FiniteGroup::cyclic(3)),
        5 => group_groupoid(&FiniteGroup::klein()),
        _ => direct_product(
            &pair_groupoid(2).unwrap(),
            &group_groupoid(&FiniteGroup::cyclic(3)),
        ),
    }
}

proptest! {
    #[test]
    fn constructors_satisfy_the_groupoid_axioms(which in 0usize..7) {
        let g = corpus_groupoid(which);
        let report = verify_groupoid_axioms(&g, &limits());
        prop_assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn pair_groupoid_bisection_group_is_symmetric(n in 1usize..5) {
        let g = pair_groupoid(n).unwrap();
        let bg = bisection_group(&g, &limits()).unwrap();
        let factorial: usize = (1..=n).product();
        prop_assert_eq!(bg.elements.len(), factorial);
        prop_assert!(bg.group.is_isomorphic_to(&FiniteGroup::symmetric(n)));
    }

    #[test]
    fn bisection_group_laws(which in 0usize..7, i in 0usize..64, j in 0usize..64) {
        let g = corpus_groupoid(which);
        let bs = enumerate_bisections(&g, &limits()).unwrap();
        let (i, j) = (i % bs.len(), j % bs.len());
        let prod = bs[i].compose(&g, &bs[j]);
        // φ_{b∘b'} = φ_b ∘ φ_{b'}
        let (pi, pj, pp) = (
            bs[i].permutation(&g),
            bs[j].permutation(&g),
            prod.permutation(&g),
        );
        for x in 0..g.n_objects() {
            prop_assert_eq!(pp[x], pi[pj[x]]);
        }
        // inverses cancel
        let e = groupoids::bisections::Bisection::identity(&g);
        prop_assert_eq!(bs[i].compose(&g, &bs[i].inverse(&g)), e.clone());
        prop_assert_eq!(bs[i].inverse(&g).compose(&g, &bs[i]), e);
    }

    #[test]
    fn reconstruction_round_trips(which in 0usize..7) {
        let g = corpus_groupoid(which);
        if g.is_connected() {
            let rec = reconstruct(&g, &limits()).unwrap();
            prop_assert!(rec.report.all_pass(), "{}", rec.report);
            prop_assert!(rec.iso.is_some());
        }
    }

    #[test]
    fn convolution_is_associative_and_star_antimultiplicative(
        re in proptest::collection::vec(-4.0f64..4.0, 8),
        im in proptest::collection::vec(-4.0f64..4.0, 8),
        re2 in proptest::collection::vec(-4.0f64..4.0, 8),
        im2 in proptest::collection::vec(-4.0f64..4.0, 8),
    ) {
        let g = c2_4();
        let f = GroupoidFunction::from_values(
            &g,
            re.iter().zip(&im).map(|(&r, &i)| Complex64::new(r, i)).collect(),
        ).unwrap();
        let h = GroupoidFunction::from_values(
            &g,
            re2.iter().zip(&im2).map(|(&r, &i)| Complex64::new(r, i)).collect(),
        ).unwrap();
        let u = groupoids::algebra::unit_function(&g);
        let lhs = convolve(&g, &convolve(&g, &f, &h).unwrap(), &u).unwrap();
        let rhs = convolve(&g, &f, &convolve(&g, &h, &u).unwrap()).unwrap();
        prop_assert!(lhs.approx_eq(&rhs));
        let star_prod = involution(&g, &convolve(&g, &f, &h).unwrap());
        let prod_star = convolve(&g, &involution(&g, &h), &involution(&g, &f)).unwrap();
        prop_assert!(star_prod.approx_eq(&prod_star));
        prop_assert!(involution(&g, &involution(&g, &f)).approx_eq(&f));
    }
}
