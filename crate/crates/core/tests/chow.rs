use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use quintic_core::chow::{pbundle_intersection, ChowClass, ChowRing};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn derived_relations_for_small_chern_numbers() {
    for c1 in -10..=10 {
        for c2 in -10..=10 {
            let ring = ChowRing::new(c1, c2);
            let xi = ChowClass::xi();
            let a = ChowClass::a();
            assert_eq!(ring.degree(&xi.mul(&xi).mul(&a)), q(c1));
            assert_eq!(ring.degree(&xi.mul(&xi).mul(&xi)), q(c1 * c1 - c2));
            assert_eq!(ring.degree(&xi.mul(&a).mul(&a)), q(1));
            assert_eq!(ring.degree(&a.mul(&a).mul(&a)), q(0));
        }
    }
}

#[test]
fn displayed_table() {
    let k: ChowClass = "-2xi - 4A".parse().unwrap();
    let g: ChowClass = "xi + A".parse().unwrap();
    let n = |a: &ChowClass, b: &ChowClass, c: &ChowClass| {
        pbundle_intersection(-1, 3, &[a.clone(), b.clone(), c.clone()]).unwrap()
    };
    assert_eq!(n(&k, &k, &k), q(-32));
    assert_eq!(n(&k, &k, &g), q(4));
    assert_eq!(n(&k, &g, &g), q(2));
    assert_eq!(n(&g, &g, &g), q(-2));
}

#[test]
fn canonical_class_identity() {
    let k: ChowClass = "-2xi - 4A".parse().unwrap();
    let g: ChowClass = "xi + A".parse().unwrap();
    let rhs = g.add(&ChowClass::a()).scale(&q(-2));
    assert_eq!(k, rhs);
}

fn divisor() -> impl Strategy<Value = ChowClass> {
    (-5i64..=5, -5i64..=5).prop_map(|(u, v)| ChowClass::divisor(u, v))
}

proptest! {
    #[test]
    fn reduction_is_confluent(c1 in -6i64..=6, c2 in -6i64..=6, a in divisor(), b in divisor(), c in divisor()) {
        let ring = ChowRing::new(c1, c2);
        let left = ring.mul(&ring.mul(&a, &b), &c);
        let right = ring.mul(&a, &ring.mul(&b, &c));
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left, ring.reduce(&a.mul(&b).mul(&c)));
        let perm = ring.degree(&c.mul(&a).mul(&b));
        prop_assert_eq!(pbundle_intersection(c1, c2, &[a, b, c]).unwrap(), perm);
    }
}
