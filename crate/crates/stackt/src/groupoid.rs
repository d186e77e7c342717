//! Finite groupoids, functors, natural isomorphisms, and a decision
//! procedure for equivalence.
//!
//! Objects and arrows are dense integer indices with a canonical
//! ordering; all tables are index-based. The composition table is keyed
//! by `(f, g)` for `tgt(f) == src(g)` and stores "f then g", i.e. the
//! categorical composite `g . f`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{group_isomorphism, FiniteGroup, IsoSearch};
use crate::report::{Report, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroupoid {
    pub objects: usize,
    pub arrows: Vec<Arrow>,
    /// One designated identity arrow per object.
    pub identities: Vec<usize>,
    /// `(f, g) -> f then g`, defined exactly on composable pairs.
    #[serde(with = "compose_table")]
    pub compose: BTreeMap<(usize, usize), usize>,
}

mod compose_table {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        table: &BTreeMap<(usize, usize), usize>,
        ser: S,
    ) -> Result<S::Ok, S::Error> {
        let entries: Vec<[usize; 3]> = table.iter().map(|(&(f, g), &h)| [f, g, h]).collect();
        entries.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> Result<BTreeMap<(usize, usize), usize>, D::Error> {
        let entries: Vec<[usize; 3]> = Vec::deserialize(de)?;
        Ok(entries.into_iter().map(|[f, g, h]| ((f, g), h)).collect())
    }
}

impl FiniteGroupoid {
    /// The groupoid with one object per element and only identity arrows.
    pub fn discrete(elements: usize) -> Self {
        FiniteGroupoid {
            objects: elements,
            arrows: (0..elements).map(|i| Arrow { src: i, tgt: i }).collect(),
            identities: (0..elements).collect(),
            compose: (0..elements).map(|i| ((i, i), i)).collect(),
        }
    }

    /// The one-object, one-arrow groupoid.
    pub fn terminal() -> Self {
        Self::discrete(1)
    }

    pub fn empty() -> Self {
        Self::discrete(0)
    }

    /// All hom-sets singletons: any two objects uniquely isomorphic.
    pub fn pair_groupoid(elements: usize) -> Self {
        let n = elements;
        let arrow = |s: usize, t: usize| s * n + t;
        let arrows = (0..n * n)
            .map(|i| Arrow { src: i / n, tgt: i % n })
            .collect();
        let identities = (0..n).map(|i| arrow(i, i)).collect();
        let mut compose = BTreeMap::new();
        for s in 0..n {
            for m in 0..n {
                for t in 0..n {
                    compose.insert((arrow(s, m), arrow(m, t)), arrow(s, t));
                }
            }
        }
        FiniteGroupoid { objects: n, arrows, identities, compose }
    }

    /// Composite "f then g" (categorical `g . f`), if composable.
    pub fn then(&self, f: usize, g: usize) -> Option<usize> {
        self.compose.get(&(f, g)).copied()
    }

    pub fn src(&self, f: usize) -> usize {
        self.arrows[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.arrows[f].tgt
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    /// Arrows x -> y, in ascending index order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&f| self.arrows[f].src == x && self.arrows[f].tgt == y)
            .collect()
    }

    /// Arrows x -> y; errors on out-of-range objects.
    pub fn isom_set(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        if x >= self.objects {
            return Err(Error::UnknownObject { object: x });
        }
        if y >= self.objects {
            return Err(Error::UnknownObject { object: y });
        }
        Ok(self.hom(x, y))
    }

    /// The two-sided inverse of `f`, if the table provides one.
    pub fn inverse(&self, f: usize) -> Option<usize> {
        let Arrow { src, tgt } = self.arrows[f];
        (0..self.arrows.len()).find(|&g| {
            self.arrows[g].src == tgt
                && self.arrows[g].tgt == src
                && self.then(f, g) == Some(self.identities[src])
                && self.then(g, f) == Some(self.identities[tgt])
        })
    }

    pub fn objects_isomorphic(&self, x: usize, y: usize) -> bool {
        self.arrows.iter().any(|a| a.src == x && a.tgt == y)
    }

    /// Exhaustive check of all groupoid axioms. Shape problems (indices
    /// out of range, entries on non-composable pairs) are reported as
    /// `Malformed`, distinct from axiom violations.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let n_arr = self.arrows.len();

        if self.identities.len() != self.objects {
            report.push(Violation::Malformed {
                detail: format!(
                    "expected {} identity arrows, found {}",
                    self.objects,
                    self.identities.len()
                ),
            });
            return report;
        }
        let mut shape_ok = true;
        for (i, a) in self.arrows.iter().enumerate() {
            if a.src >= self.objects || a.tgt >= self.objects {
                report.push(Violation::Malformed {
                    detail: format!("arrow {i} has endpoints outside 0..{}", self.objects),
                });
                shape_ok = false;
            }
        }
        for (x, &e) in self.identities.iter().enumerate() {
            if e >= n_arr {
                report.push(Violation::Malformed {
                    detail: format!("identity of object {x} is arrow {e}, out of range"),
                });
                shape_ok = false;
            } else if self.arrows[e].src != x || self.arrows[e].tgt != x {
                report.push(Violation::Malformed {
                    detail: format!("identity of object {x} is not an endo-arrow of {x}"),
                });
                shape_ok = false;
            }
        }
        for (&(f, g), &h) in &self.compose {
            if f >= n_arr || g >= n_arr || h >= n_arr {
                report.push(Violation::Malformed {
                    detail: format!("composition entry ({f}, {g}) -> {h} out of range"),
                });
                shape_ok = false;
            }
        }
        if !shape_ok {
            return report;
        }
        for (&(f, g), &h) in &self.compose {
            if self.arrows[f].tgt != self.arrows[g].src {
                report.push(Violation::Malformed {
                    detail: format!("composition entry on non-composable pair ({f}, {g})"),
                });
            } else if self.arrows[h].src != self.arrows[f].src
                || self.arrows[h].tgt != self.arrows[g].tgt
            {
                report.push(Violation::CompositeEndpoints { fst: f, snd: g });
            }
        }
        // totality over composable pairs
        for f in 0..n_arr {
            for g in 0..n_arr {
                if self.arrows[f].tgt == self.arrows[g].src
                    && !self.compose.contains_key(&(f, g))
                {
                    report.push(Violation::CompositeEndpoints { fst: f, snd: g });
                }
            }
        }
        // units
        for f in 0..n_arr {
            let s = self.arrows[f].src;
            let t = self.arrows[f].tgt;
            if self.then(self.identities[s], f) != Some(f) {
                report.push(Violation::UnitFailure { object: s, arrow: f });
            }
            if self.then(f, self.identities[t]) != Some(f) {
                report.push(Violation::UnitFailure { object: t, arrow: f });
            }
        }
        // associativity
        for f in 0..n_arr {
            for g in 0..n_arr {
                if self.arrows[f].tgt != self.arrows[g].src {
                    continue;
                }
                for h in 0..n_arr {
                    if self.arrows[g].tgt != self.arrows[h].src {
                        continue;
                    }
                    let left = self.then(f, g).and_then(|fg| self.then(fg, h));
                    let right = self.then(g, h).and_then(|gh| self.then(f, gh));
                    if left.is_none() || right.is_none() || left != right {
                        report.push(Violation::Associativity { fst: f, mid: g, lst: h });
                    }
                }
            }
        }
        // inverses
        for f in 0..n_arr {
            if self.inverse(f).is_none() {
                report.push(Violation::MissingInverse { arrow: f });
            }
        }
        report
    }

    /// Validate and turn a non-empty report into an error.
    pub fn require_valid(&self, what: &'static str) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::Invalid { what, report })
        }
    }
}

/// Componentwise product of two groupoids.
///
/// Object `(i, j)` is index `i * b.objects + j`; same layout for arrows.
pub fn product_groupoid(a: &FiniteGroupoid, b: &FiniteGroupoid) -> FiniteGroupoid {
    let bo = b.objects;
    let ba = b.arrows.len();
    let arrows = a
        .arrows
        .iter()
        .flat_map(|fa| {
            b.arrows.iter().map(move |fb| Arrow {
                src: fa.src * bo + fb.src,
                tgt: fa.tgt * bo + fb.tgt,
            })
        })
        .collect();
    let identities = (0..a.objects)
        .flat_map(|i| (0..bo).map(move |j| (i, j)))
        .map(|(i, j)| a.identities[i] * ba + b.identities[j])
        .collect();
    let mut compose = BTreeMap::new();
    for (&(fa, ga), &ha) in &a.compose {
        for (&(fb, gb), &hb) in &b.compose {
            compose.insert((fa * ba + fb, ga * ba + gb), ha * ba + hb);
        }
    }
    FiniteGroupoid { objects: a.objects * bo, arrows, identities, compose }
}

/// A functor between finite groupoids, as total index maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidFunctor {
    pub object_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl GroupoidFunctor {
    pub fn identity(g: &FiniteGroupoid) -> Self {
        GroupoidFunctor {
            object_map: (0..g.objects).collect(),
            arrow_map: (0..g.arrows.len()).collect(),
        }
    }

    /// The constant functor onto `object` of `tgt`.
    pub fn constant(src: &FiniteGroupoid, tgt: &FiniteGroupoid, object: usize) -> Self {
        GroupoidFunctor {
            object_map: vec![object; src.objects],
            arrow_map: vec![tgt.identities[object]; src.arrows.len()],
        }
    }

    pub fn obj(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn arr(&self, f: usize) -> usize {
        self.arrow_map[f]
    }

    /// `self` then `next` (composition of functors).
    pub fn then(&self, next: &GroupoidFunctor) -> GroupoidFunctor {
        GroupoidFunctor {
            object_map: self.object_map.iter().map(|&x| next.object_map[x]).collect(),
            arrow_map: self.arrow_map.iter().map(|&f| next.arrow_map[f]).collect(),
        }
    }
}

/// Exhaustive functoriality check of `f : src -> tgt`.
pub fn validate_functor(
    src: &FiniteGroupoid,
    f: &GroupoidFunctor,
    tgt: &FiniteGroupoid,
) -> Report {
    let mut report = Report::new();
    if f.object_map.len() != src.objects || f.arrow_map.len() != src.arrows.len() {
        report.push(Violation::Malformed {
            detail: format!(
                "functor maps have lengths ({}, {}), expected ({}, {})",
                f.object_map.len(),
                f.arrow_map.len(),
                src.objects,
                src.arrows.len()
            ),
        });
        return report;
    }
    if f.object_map.iter().any(|&x| x >= tgt.objects)
        || f.arrow_map.iter().any(|&a| a >= tgt.arrows.len())
    {
        report.push(Violation::Malformed {
            detail: "functor maps into out-of-range indices".to_string(),
        });
        return report;
    }
    for (i, a) in src.arrows.iter().enumerate() {
        let img = &tgt.arrows[f.arrow_map[i]];
        if img.src != f.object_map[a.src] || img.tgt != f.object_map[a.tgt] {
            report.push(Violation::FunctorEndpoints { arrow: i });
        }
    }
    for x in 0..src.objects {
        if f.arrow_map[src.identities[x]] != tgt.identities[f.object_map[x]] {
            report.push(Violation::FunctorIdentity { object: x });
        }
    }
    for (&(u, v), &w) in &src.compose {
        if tgt.then(f.arrow_map[u], f.arrow_map[v]) != Some(f.arrow_map[w]) {
            report.push(Violation::FunctorComposition { fst: u, snd: v });
        }
    }
    report
}

/// A natural isomorphism between two parallel functors, given by one
/// component arrow of the target per source object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalIso {
    pub components: Vec<usize>,
}

impl NaturalIso {
    /// The identity transformation on `f`.
    pub fn identity_on(src: &FiniteGroupoid, f: &GroupoidFunctor, tgt: &FiniteGroupoid) -> Self {
        NaturalIso {
            components: (0..src.objects)
                .map(|x| tgt.identities[f.object_map[x]])
                .collect(),
        }
    }

    pub fn at(&self, x: usize) -> usize {
        self.components[x]
    }
}

/// Exhaustive naturality check of `n : f => g` for `f, g : src -> tgt`.
pub fn validate_nat_iso(
    src: &FiniteGroupoid,
    f: &GroupoidFunctor,
    g: &GroupoidFunctor,
    tgt: &FiniteGroupoid,
    n: &NaturalIso,
) -> Report {
    let mut report = Report::new();
    if n.components.len() != src.objects {
        report.push(Violation::Malformed {
            detail: format!(
                "expected {} components, found {}",
                src.objects,
                n.components.len()
            ),
        });
        return report;
    }
    if n.components.iter().any(|&c| c >= tgt.arrows.len()) {
        report.push(Violation::Malformed {
            detail: "component arrow index out of range".to_string(),
        });
        return report;
    }
    for x in 0..src.objects {
        let c = &tgt.arrows[n.components[x]];
        if c.src != f.object_map[x] || c.tgt != g.object_map[x] {
            report.push(Violation::ComponentEndpoints { object: x });
        }
    }
    if !report.is_valid() {
        return report;
    }
    for (i, a) in src.arrows.iter().enumerate() {
        let left = tgt.then(n.components[a.src], g.arrow_map[i]);
        let right = tgt.then(f.arrow_map[i], n.components[a.tgt]);
        if left.is_none() || left != right {
            report.push(Violation::Naturality { arrow: i });
        }
    }
    report
}

/// A skeleton together with the equivalence onto it.
#[derive(Debug, Clone)]
pub struct Skeleton {
    pub groupoid: FiniteGroupoid,
    /// Original object represented by each skeleton object.
    pub reps: Vec<usize>,
    /// Skeleton object (isomorphism class) of each original object.
    pub class_of: Vec<usize>,
    /// Chosen iso `rep(class_of(x)) -> x` in the original groupoid.
    pub witness: Vec<usize>,
    /// Projection original -> skeleton.
    pub to_skeleton: GroupoidFunctor,
    /// Inclusion skeleton -> original.
    pub from_skeleton: GroupoidFunctor,
}

/// One object per isomorphism class (least-index representative), with
/// functors witnessing the equivalence in both directions.
pub fn skeletonize(g: &FiniteGroupoid) -> Result<Skeleton> {
    g.require_valid("groupoid")?;
    let mut class_of = vec![usize::MAX; g.objects];
    let mut reps = Vec::new();
    for x in 0..g.objects {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for y in x..g.objects {
            if class_of[y] == usize::MAX && g.objects_isomorphic(x, y) {
                class_of[y] = c;
            }
        }
    }
    // least-index iso rep -> x
    let witness: Vec<usize> = (0..g.objects)
        .map(|x| g.hom(reps[class_of[x]], x)[0])
        .collect();

    let kept: Vec<usize> = (0..g.arrows.len())
        .filter(|&f| {
            reps.binary_search(&g.arrows[f].src).is_ok()
                && reps.binary_search(&g.arrows[f].tgt).is_ok()
        })
        .collect();
    let mut sk_index = vec![usize::MAX; g.arrows.len()];
    for (i, &f) in kept.iter().enumerate() {
        sk_index[f] = i;
    }
    let obj_index = |x: usize| reps.binary_search(&x).unwrap();
    let skeleton = FiniteGroupoid {
        objects: reps.len(),
        arrows: kept
            .iter()
            .map(|&f| Arrow {
                src: obj_index(g.arrows[f].src),
                tgt: obj_index(g.arrows[f].tgt),
            })
            .collect(),
        identities: reps.iter().map(|&x| sk_index[g.identities[x]]).collect(),
        compose: g
            .compose
            .iter()
            .filter(|(&(f, h), _)| sk_index[f] != usize::MAX && sk_index[h] != usize::MAX)
            .map(|(&(f, h), &w)| ((sk_index[f], sk_index[h]), sk_index[w]))
            .collect(),
    };
    let from_skeleton = GroupoidFunctor {
        object_map: reps.clone(),
        arrow_map: kept.clone(),
    };
    let to_skeleton = GroupoidFunctor {
        object_map: class_of.clone(),
        arrow_map: (0..g.arrows.len())
            .map(|f| {
                let a = &g.arrows[f];
                let jx = witness[a.src];
                let jy_inv = g.inverse(witness[a.tgt]).expect("valid groupoid");
                let w = g.then(g.then(jx, f).unwrap(), jy_inv).unwrap();
                sk_index[w]
            })
            .collect(),
    };
    Ok(Skeleton { groupoid: skeleton, reps, class_of, witness, to_skeleton, from_skeleton })
}

/// The automorphism group of `x`, as a multiplication table over the
/// arrows of `hom(x, x)` with the identity arrow as element 0.
///
/// The convention matches the delooping of a group: `m(a, b)` is the
/// composite "b then a".
pub fn automorphism_group_of_object(g: &FiniteGroupoid, x: usize) -> (FiniteGroup, Vec<usize>) {
    let mut elems = g.hom(x, x);
    let id = g.identities[x];
    elems.retain(|&a| a != id);
    elems.insert(0, id);
    let pos = |a: usize| elems.iter().position(|&b| b == a).unwrap();
    let n = elems.len();
    let mut table = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = pos(g.then(elems[j], elems[i]).expect("hom-set closed"));
        }
    }
    (FiniteGroup { table }, elems)
}

/// Outcome of the equivalence decision procedure.
#[derive(Debug, Clone)]
pub enum EquivalenceVerdict {
    /// Equivalent, with a witnessing functor `a -> b` that is essentially
    /// surjective and fully faithful.
    Equivalent(GroupoidFunctor),
    NotEquivalent,
    /// Search budget exceeded before a decision was reached.
    Indeterminate,
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equivalent(_))
    }
}

/// Decide whether two finite groupoids are equivalent.
///
/// Both sides are skeletonized; equivalent skeletal groupoids are
/// isomorphic, and a skeletal groupoid is a disjoint union of
/// automorphism groups, so the decision reduces to matching isomorphism
/// classes with isomorphic automorphism groups. `budget` caps the nodes
/// explored by the group-isomorphism searches.
pub fn check_equivalence(
    a: &FiniteGroupoid,
    b: &FiniteGroupoid,
    budget: usize,
) -> Result<EquivalenceVerdict> {
    let sk_a = skeletonize(a)?;
    let sk_b = skeletonize(b)?;
    if sk_a.reps.len() != sk_b.reps.len() {
        return Ok(EquivalenceVerdict::NotEquivalent);
    }
    let n = sk_a.reps.len();
    let auts_a: Vec<_> = (0..n)
        .map(|i| automorphism_group_of_object(&sk_a.groupoid, i))
        .collect();
    let auts_b: Vec<_> = (0..n)
        .map(|i| automorphism_group_of_object(&sk_b.groupoid, i))
        .collect();

    let mut search = IsoSearch::new(budget);
    // Greedy class-by-class matching. Group isomorphism is an equivalence
    // relation, so if class i matches two candidates those candidates
    // also match each other and the greedy choice is safe.
    let mut used = vec![false; n];
    let mut assignment = vec![usize::MAX; n];
    let mut isos = vec![Vec::new(); n];
    for i in 0..n {
        let mut found = false;
        for j in 0..n {
            if used[j] {
                continue;
            }
            match group_isomorphism(&auts_a[i].0, &auts_b[j].0, &mut search) {
                Ok(Some(map)) => {
                    used[j] = true;
                    assignment[i] = j;
                    isos[i] = map;
                    found = true;
                    break;
                }
                Ok(None) => {}
                Err(_) => return Ok(EquivalenceVerdict::Indeterminate),
            }
        }
        if !found {
            return Ok(EquivalenceVerdict::NotEquivalent);
        }
    }

    // Assemble the witness sk_a -> sk_b, then conjugate by the
    // projections to get a -> b.
    let sk_arrows = sk_a.groupoid.arrows.clone();
    let mut arrow_map = vec![usize::MAX; sk_arrows.len()];
    for (i, (aut_a, elems_a)) in auts_a.iter().enumerate() {
        let j = assignment[i];
        let elems_b = &auts_b[j].1;
        let _ = aut_a;
        for (e, &arr) in elems_a.iter().enumerate() {
            arrow_map[arr] = elems_b[isos[i][e]];
        }
    }
    let sk_functor = GroupoidFunctor {
        object_map: assignment,
        arrow_map,
    };
    let witness = sk_a
        .to_skeleton
        .then(&sk_functor)
        .then(&sk_b.from_skeleton);
    Ok(EquivalenceVerdict::Equivalent(witness))
}

/// Direct check that `f : src -> tgt` is an equivalence: a valid functor
/// that is fully faithful and essentially surjective.
pub fn is_equivalence(src: &FiniteGroupoid, f: &GroupoidFunctor, tgt: &FiniteGroupoid) -> bool {
    if !validate_functor(src, f, tgt).is_valid() {
        return false;
    }
    for x in 0..src.objects {
        for y in 0..src.objects {
            let dom = src.hom(x, y);
            let mut images: Vec<usize> = dom.iter().map(|&a| f.arrow_map[a]).collect();
            images.sort_unstable();
            images.dedup();
            if images.len() != dom.len() {
                return false; // not faithful
            }
            let cod = tgt.hom(f.object_map[x], f.object_map[y]);
            if images.len() != cod.len() {
                return false; // not full
            }
        }
    }
    (0..tgt.objects).all(|o| {
        (0..src.objects).any(|x| tgt.objects_isomorphic(f.object_map[x], o))
    })
}
