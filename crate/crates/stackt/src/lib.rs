//! Finite groupoids, weak actions of finite groups on them, and the
//! constructions attached to such actions: strictification, fixed
//! points, quotients, and the torsor description of quotients.
//!
//! Everything is finite and fully materialized: groupoids are arrow
//! tables, actions are tables of functors and coherence isomorphisms,
//! and every validator checks every axiom instance exhaustively.

pub mod action;
pub mod error;
pub mod fixed_points;
pub mod fixtures;
pub mod group;
pub mod groupoid;
pub mod io;
pub mod quotient;
pub mod report;
pub mod strictify;
pub mod suite;

pub use action::{
    action_from_gset, actions_equivalent, b0_groupoid, compose_g_morphisms,
    conjugation_twist_action, from_lax_presheaf, lax_composition_report, left_translation_action,
    lifting_gerbe_action, strict_action, to_lax_presheaf, transport_action, transport_witness,
    trivial_action, twist_action, validate_2g_morphism, validate_action, validate_g_morphism,
    ActionEquivalence, G2Morphism, GMorphism, LaxPresheaf, LiftingGerbe, WeakAction,
};
pub use error::{Error, Result};
pub use fixed_points::{
    canonical_inclusion, enumerate_fixed_objects, fixed_point_groupoid, is_essentially_trivial,
    validate_fixed_object, FixedObject, FixedPointGroupoid,
};
pub use fixtures::{base_fixtures, corpus, klein_four, small_groups, Fixture};
pub use group::{
    automorphism_group, conjugation_action, enumerate_homs, group_isomorphism, groups_isomorphic,
    quotient_group, validate_hom, AutomorphismGroup, ConjugationAction, FiniteGroup, GroupHom,
    Quotient,
};
pub use groupoid::{
    automorphism_group_of_object, check_equivalence, is_equivalence, product_groupoid,
    skeletonize, validate_functor, validate_nat_iso, Arrow, EquivalenceVerdict, FiniteGroupoid,
    GroupoidFunctor, NaturalIso, Skeleton,
};
pub use io::{parse_spec, serialize_spec, Payload, SpecDocument, FORMAT_VERSION};
pub use quotient::{
    canonical_equivariant_map, compare_quotients, enumerate_equivariant_maps,
    pi_equivariance_check, quotient_groupoid, torsor_quotient_groupoid, validate_equivariant_map,
    validate_equivariant_morphism, validate_torsor, EquivariantMap, EquivariantMorphism,
    QuotientComparison, QuotientGroupoid, Torsor, TorsorQuotient,
};
pub use report::{Report, Violation};
pub use strictify::{strictify, strictify_morphism, Strictification};
pub use suite::{run_paper_suite, SuiteCheck, SuiteReport};
