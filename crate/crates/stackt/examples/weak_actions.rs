//! Build weak actions and validate their coherence exhaustively.

use stackt::{
    b0_groupoid, lifting_gerbe_action, transport_action, trivial_action, validate_action,
    FiniteGroup,
};

fn main() {
    // A strict action: Z/2 acting trivially on the one-object groupoid
    // of Z/3. Coherence and unit isos are all identities.
    let z2 = FiniteGroup::cyclic(2);
    let space = b0_groupoid(&FiniteGroup::cyclic(3));
    let strict = trivial_action(&z2, &space);
    println!("trivial action valid: {}", validate_action(&strict).is_valid());
    println!("trivial action strict: {}", strict.is_strict());

    // Transporting along an arrow family conjugates every functor
    // separately, so the result is a genuinely weak action that is
    // still equivalent to the input.
    let weak = transport_action(&strict, &[1]).unwrap();
    println!("transported valid: {}", validate_action(&weak).is_valid());
    println!("transported strict: {}", weak.is_strict());

    // A weak action that is not a disguised strict one: the quotient of
    // the quaternion group by its center acting on the one-object
    // groupoid of the center, with the extension's factor set as
    // coherence.
    let gerbe = lifting_gerbe_action(&FiniteGroup::quaternion(), &[0, 1]).unwrap();
    println!("gerbe valid: {}", validate_action(&gerbe.action).is_valid());
    println!("gerbe strict: {}", gerbe.action.is_strict());

    // A single bad coherence entry is pinpointed by coordinates.
    let mut broken = trivial_action(&FiniteGroup::cyclic(3), &space);
    broken.alpha[1][1].components[0] = 1;
    let report = validate_action(&broken);
    println!("corrupted action valid: {}", report.is_valid());
    for v in report.violations.iter().take(2) {
        println!("  {v}");
    }
}
