//! Deciding equivalence: of groupoids, and of actions through an
//! equivariance family.

use stackt::{
    actions_equivalent, b0_groupoid, check_equivalence, conjugation_twist_action,
    transport_action, trivial_action, ActionEquivalence, FiniteGroup, FiniteGroupoid,
};

fn main() {
    // Groupoid equivalence ignores how many copies of each isomorphism
    // class are present.
    let pair = FiniteGroupoid::pair_groupoid(3);
    let point = FiniteGroupoid::terminal();
    let verdict = check_equivalence(&pair, &point, 10_000).unwrap();
    println!("pair groupoid on 3 objects is a point: {}", verdict.is_equivalent());

    // A transported action stays equivalent to its base: the search
    // finds an equivariance family over the identity functor.
    let q8 = FiniteGroup::quaternion();
    let base = trivial_action(&FiniteGroup::cyclic(2), &b0_groupoid(&q8));
    let moved = transport_action(&base, &[2]).unwrap();
    match actions_equivalent(&moved, &base, 1_000_000).unwrap() {
        ActionEquivalence::Equivalent(m) => {
            println!("transported action equivalent to base, sigma[1] = {:?}", m.sigma[1])
        }
        other => println!("unexpected verdict: {other:?}"),
    }

    // The conjugation twist is not equivalent to the trivial action of
    // the same group on the same groupoid.
    let (twist, conj) = conjugation_twist_action(&q8, &[0, 1]).unwrap();
    let trivial = trivial_action(&conj.quotient.group, &twist.space);
    let verdict = actions_equivalent(&twist, &trivial, 1_000_000).unwrap();
    println!(
        "conjugation twist equivalent to trivial: {}",
        matches!(verdict, ActionEquivalence::Equivalent(_))
    );
}
