//! Deterministic corpus of small actions: named strict bases on groups
//! of order at most 8 and groupoids with at most 6 objects, transported
//! along seeded pseudorandom arrow families into genuinely weak
//! actions. Everything here is reproducible from the seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{
    action_from_gset, b0_groupoid, conjugation_twist_action, left_translation_action,
    lifting_gerbe_action, transport_action, trivial_action, twist_action, WeakAction,
};
use crate::group::FiniteGroup;
use crate::groupoid::{product_groupoid, FiniteGroupoid};

/// A named action fixture.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub action: WeakAction,
}

impl Fixture {
    fn new(name: &str, action: WeakAction) -> Self {
        Fixture { name: name.to_string(), action }
    }
}

/// The Klein four group as an explicit table.
pub fn klein_four() -> FiniteGroup {
    FiniteGroup {
        table: (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect(),
    }
}

/// The groups of order at most 8 exercised throughout the corpus.
pub fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("z2", FiniteGroup::cyclic(2)),
        ("z3", FiniteGroup::cyclic(3)),
        ("z4", FiniteGroup::cyclic(4)),
        ("v4", klein_four()),
        ("z6", FiniteGroup::cyclic(6)),
        ("s3", FiniteGroup::symmetric(3)),
        ("q8", FiniteGroup::quaternion()),
    ]
}

/// Strict (or already weak but untransported) starting points.
pub fn base_fixtures() -> Vec<Fixture> {
    let mut bases = Vec::new();
    let b0_z3 = b0_groupoid(&FiniteGroup::cyclic(3));
    for (name, g) in small_groups() {
        bases.push(Fixture::new(
            &format!("trivial-{name}-b0z3"),
            trivial_action(&g, &b0_z3),
        ));
        // The translation space is the group itself, so order 8 would
        // push past the corpus object bound.
        if g.order() <= 6 {
            bases.push(Fixture::new(
                &format!("left-translation-{name}"),
                left_translation_action(&g),
            ));
        }
    }
    for (name, g) in [
        ("z2", FiniteGroup::cyclic(2)),
        ("z4", FiniteGroup::cyclic(4)),
        ("s3", FiniteGroup::symmetric(3)),
    ] {
        bases.push(Fixture::new(
            &format!("trivial-{name}-pair2"),
            trivial_action(&g, &FiniteGroupoid::pair_groupoid(2)),
        ));
    }
    bases.push(Fixture::new(
        "trivial-z2-b0z2xdiscrete3",
        trivial_action(
            &FiniteGroup::cyclic(2),
            &product_groupoid(&b0_groupoid(&FiniteGroup::cyclic(2)), &FiniteGroupoid::discrete(3)),
        ),
    ));
    bases.push(Fixture::new(
        "trivial-z3-b0z4",
        trivial_action(&FiniteGroup::cyclic(3), &b0_groupoid(&FiniteGroup::cyclic(4))),
    ));
    bases.push(Fixture::new(
        "trivial-v4-b0q8",
        trivial_action(&klein_four(), &b0_groupoid(&FiniteGroup::quaternion())),
    ));
    // Permutation actions on discrete spaces.
    bases.push(Fixture::new(
        "gset-z2-swap2",
        action_from_gset(&FiniteGroup::cyclic(2), &[vec![0, 1], vec![1, 0]]).unwrap(),
    ));
    bases.push(Fixture::new(
        "gset-s3-points3",
        action_from_gset(
            &FiniteGroup::symmetric(3),
            &s3_point_permutations(),
        )
        .unwrap(),
    ));
    // Twists of one-object groupoids by automorphism families.
    let z4 = FiniteGroup::cyclic(4);
    bases.push(Fixture::new(
        "twist-z2-inverts-z4",
        twist_action(&[vec![0, 1, 2, 3], vec![0, 3, 2, 1]], &FiniteGroup::cyclic(2), &z4).unwrap(),
    ));
    bases.push(Fixture::new(
        "conjugation-twist-q8",
        conjugation_twist_action(&FiniteGroup::quaternion(), &[0, 1]).unwrap().0,
    ));
    // Gerbes of central extensions: genuinely weak from the start.
    bases.push(Fixture::new(
        "gerbe-q8",
        lifting_gerbe_action(&FiniteGroup::quaternion(), &[0, 1]).unwrap().action,
    ));
    bases.push(Fixture::new(
        "gerbe-z4",
        lifting_gerbe_action(&FiniteGroup::cyclic(4), &[0, 2]).unwrap().action,
    ));
    bases
}

/// The symmetric group on three letters acting on those letters, with
/// the permutation of group element g read off from the group table.
fn s3_point_permutations() -> Vec<Vec<usize>> {
    // Elements of symmetric(3) are indexed permutations; recover each
    // one's action on points from how it permutes the two generators'
    // cosets is overkill at this size: list them directly.
    vec![
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![2, 1, 0],
    ]
}

/// Draw a transport family: one arrow out of every object, targets
/// forming a bijection. Falls back to identities when a draw cannot be
/// completed.
fn random_transport_family(space: &FiniteGroupoid, rng: &mut ChaCha8Rng) -> Vec<usize> {
    'attempt: for _ in 0..64 {
        let mut family = Vec::with_capacity(space.objects);
        let mut hit = vec![false; space.objects];
        for x in 0..space.objects {
            let out: Vec<usize> = (0..space.arrows.len())
                .filter(|&f| space.src(f) == x && !hit[space.tgt(f)])
                .collect();
            if out.is_empty() {
                continue 'attempt;
            }
            let pick = out[rng.gen_range(0..out.len())];
            hit[space.tgt(pick)] = true;
            family.push(pick);
        }
        return family;
    }
    space.identities.clone()
}

/// The full deterministic corpus: every base fixture plus `transports`
/// seeded transports of each.
pub fn corpus(seed: u64, transports: usize) -> Vec<Fixture> {
    let mut fixtures = Vec::new();
    for (i, base) in base_fixtures().into_iter().enumerate() {
        for t in 0..transports {
            let mut rng = ChaCha8Rng::seed_from_u64(
                seed ^ ((i as u64) << 20) ^ ((t as u64) << 40),
            );
            let j = random_transport_family(&base.action.space, &mut rng);
            let transported = transport_action(&base.action, &j)
                .expect("drawn family is a valid transport");
            fixtures.push(Fixture::new(&format!("{}~t{}", base.name, t + 1), transported));
        }
        fixtures.push(base);
    }
    fixtures
}
