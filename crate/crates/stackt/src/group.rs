//! Finite groups by multiplication table, standard constructions,
//! automorphism groups, and homomorphism enumeration.
//!
//! Element 0 is always the identity. `table[a][b]` is the product `a * b`;
//! for permutation-flavoured groups the product is "apply b, then a".

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Report, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul(a, b) == 0 && self.mul(b, a) == 0)
            .expect("valid group")
    }

    pub fn trivial() -> Self {
        FiniteGroup { table: vec![vec![0]] }
    }

    /// Z/n with addition; element 1 generates.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        FiniteGroup {
            table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
        }
    }

    /// Componentwise product; element `(a, b)` is index `a * |B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let nb = b.order();
        let n = a.order() * nb;
        FiniteGroup {
            table: (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                        .collect()
                })
                .collect(),
        }
    }

    /// The quaternion group {±1, ±i, ±j, ±k}; index 2s+2a encodes sign s
    /// on axis a in order (1, i, j, k).
    pub fn quaternion() -> Self {
        // axis products and signs for e,i,j,k
        const AXIS: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
        const SIGN: [[i32; 4]; 4] = [
            [1, 1, 1, 1],
            [1, -1, 1, -1],
            [1, -1, -1, 1],
            [1, 1, -1, -1],
        ];
        let idx = |sign: i32, axis: usize| if sign == 1 { 2 * axis } else { 2 * axis + 1 };
        let table = (0..8)
            .map(|x: usize| {
                (0..8)
                    .map(|y: usize| {
                        let (sx, ax) = (if x % 2 == 0 { 1 } else { -1 }, x / 2);
                        let (sy, ay) = (if y % 2 == 0 { 1 } else { -1 }, y / 2);
                        idx(sx * sy * SIGN[ax][ay], AXIS[ax][ay])
                    })
                    .collect()
            })
            .collect();
        FiniteGroup { table }
    }

    /// The symmetric group on n letters; elements are the permutations of
    /// 0..n in lexicographic order, so the identity is element 0. The
    /// product `p * q` applies q first.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let pos = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| pos(&(0..n).map(|x| p[q[x]]).collect()))
                    .collect()
            })
            .collect();
        FiniteGroup { table }
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&z| (0..self.order()).all(|a| self.mul(z, a) == self.mul(a, z)))
            .collect()
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let n = self.order();
        for a in 0..n {
            if self.table[a].len() != n {
                report.push(Violation::Malformed {
                    detail: format!("row {a} has length {}", self.table[a].len()),
                });
                return report;
            }
            for b in 0..n {
                if self.table[a][b] >= n {
                    report.push(Violation::Malformed {
                        detail: format!("entry ({a}, {b}) out of range"),
                    });
                    return report;
                }
            }
        }
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                report.push(Violation::UnitFailure { object: 0, arrow: a });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        report.push(Violation::Associativity { fst: a, mid: b, lst: c });
                    }
                }
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| self.mul(a, b) == 0 && self.mul(b, a) == 0) {
                report.push(Violation::MissingInverse { arrow: a });
            }
        }
        report
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// A homomorphism between finite groups, as a total element map.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupHom {
    pub map: Vec<usize>,
}

impl GroupHom {
    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.map.len().max(self.map.iter().max().map_or(0, |m| m + 1))];
        self.map.iter().all(|&v| {
            if seen[v] {
                false
            } else {
                seen[v] = true;
                true
            }
        })
    }

    pub fn is_surjective(&self, target_order: usize) -> bool {
        let mut seen = vec![false; target_order];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.iter().all(|&s| s)
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.map.len()).filter(|&a| self.map[a] == 0).collect()
    }
}

pub fn validate_hom(src: &FiniteGroup, h: &GroupHom, tgt: &FiniteGroup) -> Report {
    let mut report = Report::new();
    if h.map.len() != src.order() {
        report.push(Violation::Malformed {
            detail: format!("hom map has length {}, expected {}", h.map.len(), src.order()),
        });
        return report;
    }
    if h.map.iter().any(|&v| v >= tgt.order()) {
        report.push(Violation::Malformed { detail: "hom maps out of range".into() });
        return report;
    }
    if h.map[0] != 0 {
        report.push(Violation::FunctorIdentity { object: 0 });
    }
    for a in 0..src.order() {
        for b in 0..src.order() {
            if h.map[src.mul(a, b)] != tgt.mul(h.map[a], h.map[b]) {
                report.push(Violation::FunctorComposition { fst: a, snd: b });
            }
        }
    }
    report
}

fn is_subgroup(g: &FiniteGroup, subset: &[usize]) -> bool {
    if !subset.contains(&0) {
        return false;
    }
    subset.iter().all(|&a| {
        a < g.order()
            && subset.contains(&g.inv(a))
            && subset.iter().all(|&b| subset.contains(&g.mul(a, b)))
    })
}

fn is_normal(g: &FiniteGroup, subset: &[usize]) -> bool {
    subset
        .iter()
        .all(|&n| (0..g.order()).all(|a| subset.contains(&g.mul(g.mul(a, n), g.inv(a)))))
}

/// A quotient by a normal subgroup: the group of cosets (ordered by
/// least member, so the coset of the identity is element 0) together
/// with the projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: GroupHom,
    pub cosets: Vec<Vec<usize>>,
}

pub fn quotient_group(g: &FiniteGroup, subgroup: &[usize]) -> Result<Quotient> {
    let mut subgroup: Vec<usize> = subgroup.to_vec();
    subgroup.sort_unstable();
    subgroup.dedup();
    if !is_subgroup(g, &subgroup) {
        return Err(Error::NotASubgroup);
    }
    if !is_normal(g, &subgroup) {
        return Err(Error::NotNormal);
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for a in 0..g.order() {
        if coset_of[a] != usize::MAX {
            continue;
        }
        let mut coset: Vec<usize> = subgroup.iter().map(|&n| g.mul(a, n)).collect();
        coset.sort_unstable();
        let c = cosets.len();
        for &m in &coset {
            coset_of[m] = c;
        }
        cosets.push(coset);
    }
    let table = cosets
        .iter()
        .map(|ca| {
            cosets
                .iter()
                .map(|cb| coset_of[g.mul(ca[0], cb[0])])
                .collect()
        })
        .collect();
    Ok(Quotient {
        group: FiniteGroup { table },
        projection: GroupHom { map: coset_of },
        cosets,
    })
}

/// All automorphisms of `g`, in lexicographic order of the element map
/// (so the identity automorphism is element 0), together with the
/// composition table where the product applies the right factor first.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    pub group: FiniteGroup,
    /// Element maps; `maps[t][x]` is the action of automorphism t on x.
    pub maps: Vec<Vec<usize>>,
}

pub fn automorphism_group(g: &FiniteGroup) -> AutomorphismGroup {
    let n = g.order();
    let mut maps: Vec<Vec<usize>> = Vec::new();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut used = vec![false; n];
    used[0] = true;
    fn rec(
        g: &FiniteGroup,
        next: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = g.order();
        if next == n {
            out.push(map.clone());
            return;
        }
        'candidates: for v in 0..n {
            if used[v] || g.element_order(v) != g.element_order(next) {
                continue;
            }
            map[next] = v;
            for a in 0..=next {
                for b in 0..=next {
                    let p = g.mul(a, b);
                    if map[a] != usize::MAX && map[b] != usize::MAX && map[p] != usize::MAX {
                        if map[p] != g.mul(map[a], map[b]) {
                            map[next] = usize::MAX;
                            continue 'candidates;
                        }
                    }
                }
            }
            used[v] = true;
            rec(g, next + 1, map, used, out);
            used[v] = false;
            map[next] = usize::MAX;
        }
    }
    rec(g, 1, &mut map, &mut used, &mut maps);
    maps.sort();
    let pos = |m: &Vec<usize>| maps.iter().position(|q| q == m).unwrap();
    let table = maps
        .iter()
        .map(|f| {
            maps.iter()
                .map(|h| pos(&(0..n).map(|x| f[h[x]]).collect()))
                .collect()
        })
        .collect();
    AutomorphismGroup { group: FiniteGroup { table }, maps }
}

/// Exactly all homomorphisms `g -> h`, in lexicographic map order.
pub fn enumerate_homs(g: &FiniteGroup, h: &FiniteGroup) -> Vec<GroupHom> {
    let n = g.order();
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    fn rec(
        g: &FiniteGroup,
        h: &FiniteGroup,
        next: usize,
        map: &mut Vec<usize>,
        out: &mut Vec<GroupHom>,
    ) {
        if next == g.order() {
            out.push(GroupHom { map: map.clone() });
            return;
        }
        'candidates: for v in 0..h.order() {
            // the image order must divide the element order
            if g.element_order(next) % h.element_order(v) != 0 {
                continue;
            }
            map[next] = v;
            for a in 0..=next {
                for b in 0..=next {
                    let p = g.mul(a, b);
                    if map[p] != usize::MAX && map[p] != h.mul(map[a], map[b]) {
                        map[next] = usize::MAX;
                        continue 'candidates;
                    }
                }
            }
            rec(g, h, next + 1, map, out);
            map[next] = usize::MAX;
        }
    }
    rec(g, h, 1, &mut map, &mut out);
    out
}

/// The action of `q / z` on `q` by conjugation, for a central subgroup z.
#[derive(Debug, Clone)]
pub struct ConjugationAction {
    pub quotient: Quotient,
    /// One automorphism of q per quotient element (conjugation by the
    /// least coset representative; central z makes this independent of
    /// the representative).
    pub automorphisms: Vec<Vec<usize>>,
}

impl ConjugationAction {
    pub fn is_faithful(&self) -> bool {
        let n = self.automorphisms.len();
        (0..n).all(|i| (0..n).all(|j| i == j || self.automorphisms[i] != self.automorphisms[j]))
    }
}

pub fn conjugation_action(q: &FiniteGroup, central: &[usize]) -> Result<ConjugationAction> {
    let mut z: Vec<usize> = central.to_vec();
    z.sort_unstable();
    z.dedup();
    if !is_subgroup(q, &z) {
        return Err(Error::NotASubgroup);
    }
    let center = q.center();
    if !z.iter().all(|c| center.contains(c)) {
        return Err(Error::NotCentral);
    }
    let quotient = quotient_group(q, &z)?;
    let automorphisms = quotient
        .cosets
        .iter()
        .map(|coset| {
            let r = coset[0];
            (0..q.order()).map(|x| q.mul(q.mul(r, x), q.inv(r))).collect()
        })
        .collect();
    Ok(ConjugationAction { quotient, automorphisms })
}

/// Node-budgeted backtracking state shared across isomorphism searches.
#[derive(Debug)]
pub struct IsoSearch {
    pub budget: usize,
    pub nodes: usize,
}

impl IsoSearch {
    pub fn new(budget: usize) -> Self {
        IsoSearch { budget, nodes: 0 }
    }

    fn visit(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Error::BudgetExceeded)
        } else {
            Ok(())
        }
    }
}

/// Search for a group isomorphism `a -> b`. Returns the canonical
/// (lexicographically least) witness when one exists.
pub fn group_isomorphism(
    a: &FiniteGroup,
    b: &FiniteGroup,
    search: &mut IsoSearch,
) -> Result<Option<Vec<usize>>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    let n = a.order();
    let mut profile_a: Vec<usize> = (0..n).map(|x| a.element_order(x)).collect();
    let mut profile_b: Vec<usize> = (0..n).map(|x| b.element_order(x)).collect();
    let orders_a = profile_a.clone();
    let orders_b = profile_b.clone();
    profile_a.sort_unstable();
    profile_b.sort_unstable();
    if profile_a != profile_b {
        return Ok(None);
    }
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut used = vec![false; n];
    used[0] = true;
    fn rec(
        a: &FiniteGroup,
        b: &FiniteGroup,
        orders_a: &[usize],
        orders_b: &[usize],
        next: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        search: &mut IsoSearch,
    ) -> Result<bool> {
        if next == a.order() {
            return Ok(true);
        }
        'candidates: for v in 0..b.order() {
            if used[v] || orders_a[next] != orders_b[v] {
                continue;
            }
            search.visit()?;
            map[next] = v;
            for x in 0..=next {
                for y in 0..=next {
                    let p = a.mul(x, y);
                    if map[x] != usize::MAX && map[y] != usize::MAX && map[p] != usize::MAX {
                        if map[p] != b.mul(map[x], map[y]) {
                            map[next] = usize::MAX;
                            continue 'candidates;
                        }
                    }
                }
            }
            used[v] = true;
            if rec(a, b, orders_a, orders_b, next + 1, map, used, search)? {
                return Ok(true);
            }
            used[v] = false;
            map[next] = usize::MAX;
        }
        Ok(false)
    }
    if rec(a, b, &orders_a, &orders_b, 1, &mut map, &mut used, search)? {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

/// Isomorphism verdict with a fresh default budget.
pub fn groups_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    group_isomorphism(a, b, &mut IsoSearch::new(1_000_000))
        .map(|w| w.is_some())
        .unwrap_or(false)
}
