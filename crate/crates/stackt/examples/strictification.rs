//! Replace a weak action by an equivalent strict one.

use stackt::{
    b0_groupoid, is_equivalence, strictify, transport_action, trivial_action, validate_g_morphism,
    FiniteGroup,
};

fn main() {
    // Start strict, transport to get a genuinely weak action.
    let s3 = FiniteGroup::symmetric(3);
    let base = trivial_action(&s3, &b0_groupoid(&FiniteGroup::cyclic(3)));
    let weak = transport_action(&base, &[1]).unwrap();
    println!("input strict: {}", weak.is_strict());

    // The replacement groupoid has one object per (group element,
    // object) pair, and the group now acts strictly by translating the
    // first coordinate.
    let s = strictify(&weak).unwrap();
    println!("output strict: {}", s.strict.is_strict());
    println!(
        "objects: {} = {} x {}",
        s.strict.space.objects,
        weak.group.order(),
        weak.space.objects
    );

    // The comparison collapses (g, x) back to g.x; it is an equivariant
    // equivalence, so nothing was lost.
    let ok = validate_g_morphism(&s.strict, &s.comparison, &weak).is_valid();
    println!("comparison is a valid equivariant morphism: {ok}");
    let equiv = is_equivalence(&s.strict.space, &s.comparison.f, &weak.space);
    println!("comparison is an equivalence: {equiv}");
}
