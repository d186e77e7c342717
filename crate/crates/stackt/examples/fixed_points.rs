//! Fixed points of weak actions: linearization families and the
//! quaternion obstruction.

use stackt::{
    b0_groupoid, conjugation_twist_action, enumerate_fixed_objects, enumerate_homs,
    fixed_point_groupoid, lifting_gerbe_action, trivial_action, FiniteGroup,
};

fn main() {
    // For a trivial action of G on the one-object groupoid of H, a
    // fixed point is a homomorphism G -> H, so the fixed-point groupoid
    // is b0(H) times the discrete set Hom(G, H).
    let g = FiniteGroup::cyclic(2);
    let h = FiniteGroup::cyclic(4);
    let action = trivial_action(&g, &b0_groupoid(&h));
    let fp = fixed_point_groupoid(&action).unwrap();
    println!(
        "fixed points of trivial Z/2 on b0(Z/4): {} objects, |Hom| = {}",
        fp.groupoid.objects,
        enumerate_homs(&g, &h).len()
    );

    // The strict conjugation twist of Q/Z on b0(Q) has fixed points:
    // the crossed homomorphisms, the constant identity family among
    // them.
    let q = FiniteGroup::quaternion();
    let (twist, _) = conjugation_twist_action(&q, &[0, 1]).unwrap();
    let crossed = enumerate_fixed_objects(&twist, 0).unwrap();
    println!("conjugation twist of Q/Z on b0(Q): {} linearizations", crossed.len());

    // The obstruction lives one level down: a fixed point of the
    // lifting gerbe of Z -> Q -> Q/Z would be a homomorphic section of
    // the projection, i.e. a Klein four subgroup of Q. There is none,
    // so the fixed-point groupoid is empty.
    let gerbe = lifting_gerbe_action(&q, &[0, 1]).unwrap();
    let fixed = fixed_point_groupoid(&gerbe.action).unwrap();
    println!("lifting gerbe of Q: {} fixed objects", fixed.groupoid.objects);

    // The same gerbe over a split extension is nonempty: V4 -> Z/2
    // splits.
    let v4 = stackt::klein_four();
    let split = lifting_gerbe_action(&v4, &[0, 1]).unwrap();
    let fixed = fixed_point_groupoid(&split.action).unwrap();
    println!("lifting gerbe of V4: {} fixed objects", fixed.groupoid.objects);
}
