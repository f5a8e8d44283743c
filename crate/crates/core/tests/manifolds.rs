use proptest::prelude::*;

use qtoric_core::cohomology::{chern_numbers, partitions, presentation};
use qtoric_core::io::{from_json, to_json, OmniDesc};
use qtoric_core::quasitoric::builders::*;
use qtoric_core::quasitoric::sum::{add_cobordism, box_sum, connected_sum, difsi_normalize};
use qtoric_core::quasitoric::validate_dichar;
use qtoric_core::{Error, OmniQT};

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed form for projective space: the total Chern class is `(1 + x)^{n+1}`
/// and `⟨xⁿ, μ⟩ = 1`.
fn cp_number(n: usize, partition: &[usize]) -> i64 {
    partition.iter().map(|&i| binomial(n as i64 + 1, i as i64)).product()
}

/// `(S²)ⁿ`: `c = Π (1 + 2x_i)` with `x_i² = 0`, so `c_ω` counts ordered ways to
/// distribute the `n` distinct factors into blocks of sizes `ω`, times `2ⁿ`.
fn cube_number(n: usize, partition: &[usize]) -> i64 {
    let mut left = n as i64;
    let mut ways = 1;
    for &i in partition {
        ways *= binomial(left, i as i64);
        left -= i as i64;
    }
    ways << n
}

#[test]
fn projective_spaces_match_closed_form() {
    for n in 1..=4 {
        let c = chern_numbers(&cp(n).unwrap()).unwrap();
        for p in partitions(n) {
            assert_eq!(c.get(&p), Some(cp_number(n, &p)), "cp({n}) partition {p:?}");
        }
    }
}

#[test]
fn sphere_products_match_closed_form() {
    for n in 1..=4 {
        let c = chern_numbers(&cube(n).unwrap()).unwrap();
        for p in partitions(n) {
            assert_eq!(c.get(&p), Some(cube_number(n, &p)), "cube({n}) partition {p:?}");
        }
    }
}

#[test]
fn bounding_cube_has_zero_numbers() {
    for n in 2..=4 {
        assert!(chern_numbers(&s_product(n).unwrap()).unwrap().all_zero());
    }
}

#[test]
fn euler_characteristic_is_vertex_count() {
    let samples = [cp(3).unwrap(), b_rs(1, 3).unwrap(), b_rs(2, 3).unwrap(), bounded_flag(3).unwrap(), box_sum(&cp(2).unwrap(), &cube(2).unwrap()).unwrap()];
    for m in samples {
        let betti = presentation(&m).unwrap().betti_numbers().unwrap();
        assert_eq!(betti.iter().sum::<usize>(), m.num_vertices());
        assert_eq!(betti.first(), Some(&1));
        assert_eq!(betti.last(), Some(&1));
    }
}

#[test]
fn b_rs_counts() {
    for (r, s) in [(1, 2), (1, 3), (2, 3), (1, 4)] {
        let m = b_rs(r, s).unwrap();
        assert_eq!((m.dim(), m.num_facets()), (r + s - 1, 2 * r + s));
        assert_eq!(m.num_vertices(), (1 << r) * s);
        assert!(validate_dichar(m.polytope(), m.lambda()).unwrap().is_ok());
    }
    assert!(matches!(b_rs(2, 2), Err(Error::BadParameters(_))));
}

#[test]
fn sums_in_dimension_three_drop_geometry() {
    let m = box_sum(&cp(3).unwrap(), &cube(3).unwrap()).unwrap();
    assert!(m.geometry().is_none());
    assert_eq!(m.num_facets(), 4 + 6 + 6 - 6);
    let m = box_sum(&cp(2).unwrap(), &cube(2).unwrap()).unwrap();
    assert!(m.geometry().unwrap().is_normal_form());
}

#[test]
fn normalized_difsi_keeps_the_class() {
    for m in [cp(2).unwrap(), cp(2).unwrap().reverse_orientation(), cp(3).unwrap()] {
        let d = difsi_normalize(&m).unwrap();
        assert_eq!(d.sign_sum(), m.sign_sum());
        assert!(d.q_plus() > 0 && d.q_minus() > 0);
        let (cm, cd) = (chern_numbers(&m).unwrap(), chern_numbers(&d).unwrap());
        assert_eq!(cm.values, cd.values);
    }
    // the pentagon keeps four positive vertices and one negative
    let d = difsi_normalize(&cp(2).unwrap()).unwrap();
    assert_eq!((d.num_vertices(), d.q_minus()), (5, 1));
}

fn instance(k: usize) -> OmniQT {
    match k % 6 {
        0 => cp(2).unwrap(),
        1 => cube(2).unwrap(),
        2 => s_product(2).unwrap(),
        3 => cp_eps(2, &[1, -1]).unwrap(),
        4 => bott_tower(2, &[vec![], vec![2]]).unwrap(),
        _ => cp(2).unwrap().reverse_orientation(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reversal_negates_every_number(k in 0usize..6) {
        let m = instance(k);
        let c = chern_numbers(&m).unwrap();
        let r = chern_numbers(&m.reverse_orientation()).unwrap();
        for ((p, x), (q, y)) in c.values.iter().zip(&r.values) {
            prop_assert_eq!(p, q);
            prop_assert_eq!(*x, -*y);
        }
    }

    #[test]
    fn addition_is_additive_and_roundtrips(a in 0usize..6, b in 0usize..6) {
        let (ma, mb) = (instance(a), instance(b));
        let sum = add_cobordism(&ma, &mb).unwrap();
        let (ca, cb, cs) = (chern_numbers(&ma).unwrap(), chern_numbers(&mb).unwrap(), chern_numbers(&sum).unwrap());
        for ((x, y), z) in ca.values.iter().zip(&cb.values).zip(&cs.values) {
            prop_assert_eq!(x.1 + y.1, z.1);
        }
        prop_assert_eq!(sum.sign_sum(), ma.sign_sum() + mb.sign_sum());
        let back: OmniDesc = from_json(&to_json(&OmniDesc::from(&sum))).unwrap();
        prop_assert_eq!(back.to_omniqt().unwrap(), sum);
    }

    #[test]
    fn connected_sum_counts(a in 0usize..6, b in 0usize..6) {
        let (ma, mut mb) = (instance(a), instance(b));
        if ma.initial_sign() == mb.initial_sign() {
            mb = mb.reverse_orientation();
        }
        let s = connected_sum(&ma, &mb).unwrap();
        prop_assert_eq!(s.num_vertices(), ma.num_vertices() + mb.num_vertices() - 2);
        prop_assert_eq!(s.num_facets(), ma.num_facets() + mb.num_facets() - 2);
        prop_assert_eq!(chern_numbers(&s).unwrap().top(), s.sign_sum());
    }
}
