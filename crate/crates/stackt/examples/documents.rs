//! The document format: canonical text, exact round-trips, and
//! positioned parse errors.

use stackt::{
    b0_groupoid, parse_spec, serialize_spec, trivial_action, Error, FiniteGroup, SpecDocument,
};

fn main() {
    let action = trivial_action(
        &FiniteGroup::cyclic(2),
        &b0_groupoid(&FiniteGroup::cyclic(3)),
    );
    let doc = SpecDocument::action(action);
    let text = serialize_spec(&doc);
    println!("serialized {} bytes", text.len());
    println!("{}", text.lines().take(4).collect::<Vec<_>>().join("\n"));

    // Canonical text round-trips byte for byte.
    let parsed = parse_spec(&text).unwrap();
    assert_eq!(parsed, doc);
    assert_eq!(serialize_spec(&parsed), text);
    println!("round-trip exact: true");

    // Parse errors carry the position.
    match parse_spec(&text[..text.len() / 3]) {
        Err(Error::Parse { line, column, .. }) => {
            println!("truncated document rejected at line {line}, column {column}")
        }
        other => println!("unexpected: {other:?}"),
    }

    // Shape problems are named before any validator runs.
    let mut broken = doc.clone();
    if let stackt::Payload::Action { action } = &mut broken.payload {
        action.alpha[1].pop();
    }
    match parse_spec(&serialize_spec(&broken)) {
        Err(Error::Semantic { detail }) => println!("semantic rejection: {detail}"),
        other => println!("unexpected: {other:?}"),
    }
}
