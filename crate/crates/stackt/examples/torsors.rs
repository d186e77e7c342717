//! The torsor description of the quotient: free transitive carriers
//! with an equivariant map into the space.

use stackt::{
    b0_groupoid, canonical_equivariant_map, compare_quotients, torsor_quotient_groupoid,
    transport_action, trivial_action, validate_equivariant_map, validate_torsor, FiniteGroup,
    Torsor,
};

fn main() {
    let z2 = FiniteGroup::cyclic(2);

    // The canonical carrier: the group translating itself.
    let torsor = Torsor::left_translation(&z2);
    println!("left-translation torsor valid: {}", validate_torsor(&z2, &torsor).is_valid());

    // Every object of the space yields a canonical equivariant map: the
    // orbit map, with the coherence isos as equivariance family.
    let weak = transport_action(
        &trivial_action(&z2, &b0_groupoid(&FiniteGroup::cyclic(3))),
        &[1],
    )
    .unwrap();
    let canon = canonical_equivariant_map(&weak, 0).unwrap();
    println!(
        "canonical equivariant map valid: {}",
        validate_equivariant_map(&weak, &canon).is_valid()
    );

    // Materializing all equivariant maps and their morphisms gives a
    // groupoid equivalent to the quotient, just fatter.
    let tq = torsor_quotient_groupoid(&weak, 100_000).unwrap();
    println!(
        "torsor quotient: {} objects, {} arrows",
        tq.groupoid.objects,
        tq.groupoid.arrows.len()
    );

    // The comparison functor sends x to its orbit map; it is an
    // equivalence, checked either on the materialized groupoid or
    // structurally when that would be too large.
    let cmp = compare_quotients(&weak, 100_000).unwrap();
    println!("quotient and torsor description equivalent: {}", cmp.equivalent);
    println!(
        "quotient side: {} objects, {} arrows",
        cmp.quotient.space.objects,
        cmp.quotient.space.arrows.len()
    );
}
