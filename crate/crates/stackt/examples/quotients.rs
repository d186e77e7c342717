//! Quotient groupoids: arrows are pairs (group element, arrow out of
//! the translate).

use stackt::{
    b0_groupoid, check_equivalence, left_translation_action, pi_equivariance_check,
    product_groupoid, quotient_groupoid, trivial_action, FiniteGroup, FiniteGroupoid,
};

fn main() {
    let z2 = FiniteGroup::cyclic(2);

    // A point modulo G is the classifying groupoid of G.
    let point = trivial_action(&z2, &FiniteGroupoid::terminal());
    let q = quotient_groupoid(&point).unwrap();
    let bg = b0_groupoid(&z2);
    let same = check_equivalence(&q.space, &bg, 10_000).unwrap().is_equivalent();
    println!("point / Z2 is b0(Z2): {same}");

    // A trivial action contributes the classifying groupoid as a
    // factor: M / G is M x b0(G).
    let m = b0_groupoid(&FiniteGroup::cyclic(3));
    let q = quotient_groupoid(&trivial_action(&z2, &m)).unwrap();
    let expected = product_groupoid(&m, &bg);
    let same = check_equivalence(&q.space, &expected, 10_000).unwrap().is_equivalent();
    println!("b0(Z3) / trivial Z2 is b0(Z3) x b0(Z2): {same}");

    // A free transitive action collapses: every hom set of the quotient
    // is a singleton, so the quotient is a point.
    let s3 = FiniteGroup::symmetric(3);
    let q = quotient_groupoid(&left_translation_action(&s3)).unwrap();
    let sizes: Vec<usize> = (0..q.space.objects)
        .map(|y| q.space.hom(0, y).len())
        .collect();
    println!("S3 translating itself: hom sizes from object 0 = {sizes:?}");
    let same = check_equivalence(&q.space, &FiniteGroupoid::terminal(), 10_000)
        .unwrap()
        .is_equivalent();
    println!("quotient is a point: {same}");

    // The projection onto the quotient carries a canonical invariance
    // structure; the check verifies it arrow by arrow.
    let ok = pi_equivariance_check(&point, &quotient_groupoid(&point).unwrap()).is_valid();
    println!("projection invariance structure validates: {ok}");
}
