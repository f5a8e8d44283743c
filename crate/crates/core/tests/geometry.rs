use proptest::prelude::*;

use qtoric_core::analogous::{classify_shift, framing_vectors, is_interior, ShiftClass};
use qtoric_core::quasitoric::builders::{cp, r_polytope};
use qtoric_core::quasitoric::sum::box_sum;
use qtoric_core::rational::{self, int, ratio};
use qtoric_core::{HPolytope, Rational};

fn polytopes() -> Vec<HPolytope> {
    let hex = box_sum(&cp(2).unwrap(), &cp(2).unwrap()).unwrap();
    vec![HPolytope::simplex(3), HPolytope::cube(3), r_polytope(1, 3).unwrap(), r_polytope(2, 2).unwrap(), hex.geometry().unwrap().clone()]
}

#[test]
fn framing_is_independent_at_every_vertex() {
    for p in polytopes() {
        let k = p.num_facets() - p.dim();
        for v in p.vertices() {
            let f = framing_vectors(&p, &v.point).unwrap();
            assert_eq!(rational::rank(&f), k, "vertex {:?}", v.facets);
        }
    }
}

#[test]
fn barycenter_is_interior() {
    for p in polytopes() {
        let q = p.num_vertices() as i64;
        let bary: Vec<Rational> = (0..p.dim()).map(|i| p.vertices().iter().map(|v| v.point[i].clone()).sum::<Rational>() / int(q)).collect();
        assert!(is_interior(&p, &bary));
        assert!(!is_interior(&p, &p.vertices()[0].point));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn small_shifts_are_actual(which in 0usize..5, h in prop::collection::vec(-1000i64..=1000, 8)) {
        let p = &polytopes()[which];
        let shift: Vec<Rational> = h.iter().take(p.num_facets()).map(|&x| ratio(x, 1_000_000)).collect();
        prop_assume!(shift.len() == p.num_facets());
        prop_assert_eq!(classify_shift(p, &shift).unwrap(), ShiftClass::Actual);
    }
}
