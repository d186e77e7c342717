//! The fixed-point groupoid of a weak action.
//!
//! An object is a pair (x, lin) of an object with a linearization
//! family `lin[g] : x -> g.x` satisfying the coherence-corrected
//! cocycle `a(g,h)@x . g.lin[h] . lin[g] = lin[gh]`; for strict actions
//! this is the plain cocycle `g.lin[h] . lin[g] = lin[gh]`. Morphisms
//! (x, lin) -> (y, lin') are arrows `phi : x -> y` intertwining the two
//! families. The forgetful functor to the underlying groupoid is
//! faithful, and its canonical equivariance family exhibits the trivial
//! action on the fixed points as a G-morphism into the input.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::action::{trivial_action, GMorphism, WeakAction};
use crate::error::{Error, Result};
use crate::groupoid::{is_equivalence, Arrow, FiniteGroupoid, GroupoidFunctor};
use crate::report::{Report, Violation};

/// An object of the underlying groupoid with a linearization family.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FixedObject {
    pub object: usize,
    /// `lin[g] : object -> g.object`, one arrow per group element.
    pub lin: Vec<usize>,
}

/// Exhaustive check of the linearization axioms.
pub fn validate_fixed_object(a: &WeakAction, fo: &FixedObject) -> Report {
    let mut report = Report::new();
    let n = a.group.order();
    let x = fo.object;
    if x >= a.space.objects || fo.lin.len() != n {
        report.push(Violation::Malformed {
            detail: format!("expected object < {} and {n} arrows", a.space.objects),
        });
        return report;
    }
    for (g, &l) in fo.lin.iter().enumerate() {
        if l >= a.space.arrows.len() || a.space.src(l) != x || a.space.tgt(l) != a.act_obj(g, x) {
            report.push(Violation::ComponentEndpoints { object: g });
        }
    }
    if !report.is_valid() {
        return report;
    }
    // the identity element carries the inverse of the unit component
    if Some(fo.lin[0]) != a.space.inverse(a.unit_at(x)) {
        report.push(Violation::LinearizationCocycle { g: 0, h: 0 });
    }
    for g in 0..n {
        for h in 0..n {
            let lhs = a.space.then(
                a.space.then(fo.lin[g], a.act_arr(g, fo.lin[h])).unwrap(),
                a.alpha_at(g, h, x),
            );
            if lhs != Some(fo.lin[a.group.mul(g, h)]) {
                report.push(Violation::LinearizationCocycle { g, h });
            }
        }
    }
    report
}

/// All linearization families on one object, in lexicographic order.
///
/// Backtracking over per-element arrow choices with the cocycle as
/// pruning; the component at the identity is forced by the unit.
pub fn enumerate_fixed_objects(a: &WeakAction, x: usize) -> Result<Vec<FixedObject>> {
    if x >= a.space.objects {
        return Err(Error::UnknownObject { object: x });
    }
    let n = a.group.order();
    let mut lin = vec![usize::MAX; n];
    lin[0] = a
        .space
        .inverse(a.unit_at(x))
        .ok_or(Error::NotInvertible { index: x })?;
    let mut found = Vec::new();

    fn consistent(a: &WeakAction, x: usize, lin: &[usize]) -> bool {
        let n = a.group.order();
        for g in 0..n {
            for h in 0..n {
                let gh = a.group.mul(g, h);
                if lin[g] == usize::MAX || lin[h] == usize::MAX || lin[gh] == usize::MAX {
                    continue;
                }
                let lhs = a.space.then(
                    a.space.then(lin[g], a.act_arr(g, lin[h])).unwrap_or(usize::MAX),
                    a.alpha_at(g, h, x),
                );
                if lhs != Some(lin[gh]) {
                    return false;
                }
            }
        }
        true
    }

    fn search(a: &WeakAction, x: usize, g: usize, lin: &mut Vec<usize>, found: &mut Vec<FixedObject>) {
        let n = a.group.order();
        if g == n {
            found.push(FixedObject { object: x, lin: lin.clone() });
            return;
        }
        for cand in a.space.hom(x, a.act_obj(g, x)) {
            lin[g] = cand;
            if consistent(a, x, lin) {
                search(a, x, g + 1, lin, found);
            }
            lin[g] = usize::MAX;
        }
    }

    if consistent(a, x, &lin) {
        search(a, x, 1, &mut lin, &mut found);
    }
    Ok(found)
}

/// The fixed-point groupoid, its objects, and the forgetful functor.
#[derive(Debug, Clone)]
pub struct FixedPointGroupoid {
    /// All fixed objects, lexicographic in (object, family).
    pub objects: Vec<FixedObject>,
    pub groupoid: FiniteGroupoid,
    /// Forgets the linearization; faithful by construction.
    pub epsilon: GroupoidFunctor,
}

/// Build the fixed-point groupoid of a validated action.
pub fn fixed_point_groupoid(a: &WeakAction) -> Result<FixedPointGroupoid> {
    a.require_valid("weak action")?;
    let mut objects = Vec::new();
    for x in 0..a.space.objects {
        objects.extend(enumerate_fixed_objects(a, x)?);
    }
    let n = a.group.order();
    let intertwines = |i: usize, j: usize, phi: usize| -> bool {
        (0..n).all(|g| {
            a.space.then(phi, objects[j].lin[g])
                == a.space.then(objects[i].lin[g], a.act_arr(g, phi))
        })
    };
    let mut arrows = Vec::new();
    let mut underlying = Vec::new();
    let mut index = BTreeMap::new();
    for i in 0..objects.len() {
        for j in 0..objects.len() {
            for phi in a.space.hom(objects[i].object, objects[j].object) {
                if intertwines(i, j, phi) {
                    index.insert((i, j, phi), arrows.len());
                    arrows.push(Arrow { src: i, tgt: j });
                    underlying.push(phi);
                }
            }
        }
    }
    let identities = (0..objects.len())
        .map(|i| index[&(i, i, a.space.identities[objects[i].object])])
        .collect();
    let mut compose = BTreeMap::new();
    for (f1, a1) in arrows.iter().enumerate() {
        for (f2, a2) in arrows.iter().enumerate() {
            if a2.src != a1.tgt {
                continue;
            }
            let chi = a
                .space
                .then(underlying[f1], underlying[f2])
                .ok_or_else(|| Error::EndpointMismatch {
                    detail: format!("underlying composite undefined for ({f1}, {f2})"),
                })?;
            compose.insert((f1, f2), index[&(a1.src, a2.tgt, chi)]);
        }
    }
    let groupoid = FiniteGroupoid {
        objects: objects.len(),
        arrows,
        identities,
        compose,
    };
    let epsilon = GroupoidFunctor {
        object_map: objects.iter().map(|o| o.object).collect(),
        arrow_map: underlying,
    };
    Ok(FixedPointGroupoid { objects, groupoid, epsilon })
}

/// The canonical G-morphism from the trivial action on the fixed
/// points into the input: the forgetful functor with
/// `sigma[g][(x, lin)] = lin[g]^-1`.
pub fn canonical_inclusion(a: &WeakAction, fp: &FixedPointGroupoid) -> GMorphism {
    GMorphism {
        f: fp.epsilon.clone(),
        sigma: (0..a.group.order())
            .map(|g| {
                fp.objects
                    .iter()
                    .map(|o| a.space.inverse(o.lin[g]).expect("linearizations invert"))
                    .collect()
            })
            .collect(),
    }
}

/// True iff the canonical inclusion of the fixed points is an
/// equivalence of groupoids, i.e. the action is carried, up to the
/// canonical comparison, by its own fixed points with trivial action.
pub fn is_essentially_trivial(a: &WeakAction) -> Result<bool> {
    let fp = fixed_point_groupoid(a)?;
    let inclusion = canonical_inclusion(a, &fp);
    let trivial = trivial_action(&a.group, &fp.groupoid);
    let report = crate::action::validate_g_morphism(&trivial, &inclusion, a);
    if !report.is_valid() {
        return Err(Error::Invalid { what: "canonical inclusion", report });
    }
    Ok(is_equivalence(&fp.groupoid, &inclusion.f, &a.space))
}
