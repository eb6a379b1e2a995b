//! Čech cocycles on posets and the bridge to net cocycles and to locally
//! constant cocycles on a finite point model.
//!
//! A Čech cocycle on a poset `P` is a family `ξ_(a ã)` of maps on the
//! overlaps `{o : a ≤ o, ã ≤ o}`, locally constant, with
//! `ξ_(â ã)(o) ξ_(ã a)(o) = ξ_(â a)(o)`. Read on `P = K°`, the overlap is
//! `{o : o ≤ a, o ≤ ã in K}`.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::cohomology::{cochains_equivalent, Cochain1};
use crate::error::{Error, Result};
use crate::groups::{Group, GroupElement};
use crate::poset::{Elem, Poset};
use crate::simplicial::Complex;

/// A Čech 1-cocycle (or candidate) on the poset of `complex`.
#[derive(Clone, Debug)]
pub struct CechCocycle {
    complex: Arc<Complex>,
    group: Arc<Group>,
    /// Dense `n³`, entry `(a·n + ã)·n + o`.
    values: Vec<Option<GroupElement>>,
}

impl PartialEq for CechCocycle {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
            && self.complex.poset() == other.complex.poset()
            && *self.group == *other.group
    }
}

impl Eq for CechCocycle {}

/// `{o : a ≤ o, ã ≤ o}`.
pub fn overlap(poset: &Poset, a: Elem, a_tilde: Elem) -> Vec<Elem> {
    poset.elements().filter(|&o| poset.leq(a, o) && poset.leq(a_tilde, o)).collect()
}

impl CechCocycle {
    /// Fills every overlap with `f(a, ã, o)`.
    pub fn from_fn<F>(complex: Arc<Complex>, group: Arc<Group>, f: F) -> Self
    where
        F: Fn(Elem, Elem, Elem) -> GroupElement,
    {
        let p = complex.poset();
        let n = p.len();
        let mut values = vec![None; n * n * n];
        for a in p.elements() {
            for at in p.elements() {
                for o in overlap(p, a, at) {
                    values[(a.index() * n + at.index()) * n + o.index()] = Some(f(a, at, o));
                }
            }
        }
        CechCocycle { complex, group, values }
    }

    /// Builds from explicit `(a, ã, o, value)` entries; every overlap point
    /// must be covered exactly once. Validity is checked by [`Self::violations`].
    pub fn from_entries(
        complex: Arc<Complex>,
        group: Arc<Group>,
        entries: &[(Elem, Elem, Elem, GroupElement)],
    ) -> Result<Self> {
        let p = complex.poset();
        let n = p.len();
        let mut values = vec![None; n * n * n];
        for &(a, at, o, g) in entries {
            p.check(a)?;
            p.check(at)?;
            p.check(o)?;
            group.check(g)?;
            if !(p.leq(a, o) && p.leq(at, o)) {
                return Err(Error::InvalidCech(format!(
                    "{} is outside the overlap of ({},{})",
                    p.label(o),
                    p.label(a),
                    p.label(at)
                )));
            }
            let slot = (a.index() * n + at.index()) * n + o.index();
            if values[slot].replace(g).is_some() {
                return Err(Error::InvalidCech(format!(
                    "({},{}) at {} given twice",
                    p.label(a),
                    p.label(at),
                    p.label(o)
                )));
            }
        }
        let missing = p
            .elements()
            .flat_map(|a| p.elements().map(move |at| (a, at)))
            .flat_map(|(a, at)| overlap(p, a, at).into_iter().map(move |o| (a, at, o)))
            .find(|&(a, at, o)| values[(a.index() * n + at.index()) * n + o.index()].is_none());
        if let Some((a, at, o)) = missing {
            return Err(Error::InvalidCech(format!(
                "missing value for ({},{}) at {}",
                p.label(a),
                p.label(at),
                p.label(o)
            )));
        }
        Ok(CechCocycle { complex, group, values })
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn poset(&self) -> &Poset {
        self.complex.poset()
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    /// `ξ_(a ã)(o)`; `None` outside the overlap.
    pub fn value(&self, a: Elem, a_tilde: Elem, o: Elem) -> Option<GroupElement> {
        let n = self.poset().len();
        self.values[(a.index() * n + a_tilde.index()) * n + o.index()]
    }

    fn at(&self, a: Elem, a_tilde: Elem, o: Elem) -> GroupElement {
        self.value(a, a_tilde, o).expect("inside the overlap")
    }

    /// All `(a, ã, o, value)` entries in canonical order.
    pub fn entries(&self) -> Vec<(Elem, Elem, Elem, GroupElement)> {
        let p = self.poset();
        let mut out = Vec::new();
        for a in p.elements() {
            for at in p.elements() {
                for o in overlap(p, a, at) {
                    out.push((a, at, o, self.at(a, at, o)));
                }
            }
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().flatten().all(|&g| g == self.group.identity())
    }

    /// Descriptions of failed local constancy and cocycle relations.
    pub fn violations(&self) -> Vec<String> {
        let p = self.poset();
        let g = &self.group;
        let mut out = Vec::new();
        for a in p.elements() {
            for at in p.elements() {
                let ov = overlap(p, a, at);
                if !p.is_locally_constant(|o| self.at(a, at, o), &ov).unwrap_or(false) {
                    out.push(format!(
                        "xi ({},{}) is not locally constant",
                        p.label(a),
                        p.label(at)
                    ));
                }
                for ah in p.elements() {
                    for o in overlap(p, a, at).into_iter().filter(|&o| p.leq(ah, o)) {
                        if g.mul(self.at(ah, at, o), self.at(at, a, o)) != self.at(ah, a, o) {
                            out.push(format!(
                                "cocycle relation fails for ({},{},{}) at {}",
                                p.label(ah),
                                p.label(at),
                                p.label(a),
                                p.label(o)
                            ));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }
}

/// `z^c_(a ã)(o) = z(a; a, o) z(ã; ã, o)⁻¹` on the opposite poset.
pub fn to_cech(z: &Cochain1) -> Result<CechCocycle> {
    if !z.is_cocycle() {
        return Err(Error::NotCocycle);
    }
    let g = z.group();
    let dual = Complex::new(z.poset().dual()).into_shared();
    Ok(CechCocycle::from_fn(dual, g.clone(), |a, at, o| {
        g.mul(z.nerve_value(a, o), g.inv(z.nerve_value(at, o)))
    }))
}

/// `ξⁿ(b) = ξ_(∂₀b, ∂₁b)(|b|)`.
pub fn to_net(xi: &CechCocycle) -> Result<Cochain1> {
    if let Some(v) = xi.violations().into_iter().next() {
        return Err(Error::InvalidCech(v));
    }
    let c = xi.complex.clone();
    Ok(Cochain1::from_fn(c.clone(), xi.group.clone(), |e| {
        let b = c.edge(e);
        xi.at(b.face0(), b.face1(), b.support())
    }))
}

/// `z° = (z^c)ⁿ`, a cocycle on the opposite poset.
pub fn circle_map(z: &Cochain1) -> Result<Cochain1> {
    to_net(&to_cech(z)?)
}

/// True iff `z°° = z` on every 1-simplex.
pub fn verify_double_circle(z: &Cochain1) -> Result<bool> {
    let back = circle_map(&circle_map(z)?)?;
    Ok(back.poset() == z.poset() && back.values() == z.values())
}

/// A family `u_a` with `ξ′_(a ã)(o) u_ã = u_a ξ_(a ã)(o)`. Each `u_a` is
/// constant because every overlap `{o : a ≤ o}` has a least element.
pub fn cech_equivalent(xi: &CechCocycle, xi_prime: &CechCocycle) -> Result<Option<Vec<GroupElement>>> {
    if xi.poset() != xi_prime.poset() || *xi.group != *xi_prime.group {
        return Err(Error::Mismatch("Čech cocycles live over different data".into()));
    }
    let (n, n_prime) = (to_net(xi)?, to_net(xi_prime)?);
    let n_prime = n_prime.with_group(n.group().clone())?;
    let Some(f) = cochains_equivalent(&n_prime, &n)? else {
        return Ok(None);
    };
    let u = f.values().to_vec();
    let g = &xi.group;
    let ok = xi.entries().into_iter().all(|(a, at, o, x)| {
        g.mul(xi_prime.at(a, at, o), u[at.index()]) == g.mul(u[a.index()], x)
    });
    Ok(ok.then_some(u))
}

/// Entries `(i, j, x, g)` indexed by positions in a cover and a point.
pub type LcEntries = Vec<(usize, usize, Elem, GroupElement)>;

/// A locally constant cocycle `(A, f)` on the point model of a poset `P`:
/// points are the maximal elements of `P` (the minimal elements of the
/// underlying `K` when `P = K°`) and a point `x` lies in `a` iff `a ≤ x`.
#[derive(Clone, Debug)]
pub struct LcCocycle {
    complex: Arc<Complex>,
    group: Arc<Group>,
    cover: Vec<Elem>,
    /// `(i, j, x) ↦ f_(a_i a_j)(x)` for `x` in both cover elements.
    values: LcEntries,
}

/// Points of the model.
pub fn points(poset: &Poset) -> Vec<Elem> {
    poset.maximal_elements()
}

fn contains(poset: &Poset, a: Elem, x: Elem) -> bool {
    poset.leq(a, x)
}

/// Component label (least member) of the comparability component of
/// `overlap(a, ã)` containing `x`.
fn component_of(poset: &Poset, a: Elem, a_tilde: Elem, x: Elem) -> Elem {
    let ov = overlap(poset, a, a_tilde);
    poset
        .components_of(&ov)
        .into_iter()
        .find(|c| c.contains(&x))
        .map(|c| c[0])
        .expect("x lies in the overlap")
}

impl LcCocycle {
    pub fn cover(&self) -> &[Elem] {
        &self.cover
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn poset(&self) -> &Poset {
        self.complex.poset()
    }

    /// `f_(a a′)(x)` for cover positions `i, j`.
    pub fn value(&self, i: usize, j: usize, x: Elem) -> Option<GroupElement> {
        self.values.iter().find(|&&(a, b, y, _)| a == i && b == j && y == x).map(|v| v.3)
    }

    pub fn entries(&self) -> &[(usize, usize, Elem, GroupElement)] {
        &self.values
    }

    /// Builds from explicit values; checks coverage, pointwise cocycle
    /// relations and local constancy.
    pub fn new(
        complex: Arc<Complex>,
        group: Arc<Group>,
        cover: Vec<Elem>,
        values: Vec<(usize, usize, Elem, GroupElement)>,
    ) -> Result<Self> {
        check_cover(complex.poset(), &cover)?;
        let lc = LcCocycle { complex, group, cover, values };
        let p = lc.poset();
        let g = &lc.group;
        let k = lc.cover.len();
        for x in points(p) {
            let inside: Vec<usize> = (0..k).filter(|&i| contains(p, lc.cover[i], x)).collect();
            for &i in &inside {
                for &j in &inside {
                    if lc.value(i, j, x).is_none() {
                        return Err(Error::InvalidCech(format!("missing lc value at {}", p.label(x))));
                    }
                    for &l in &inside {
                        let lhs = g.mul(lc.value(l, j, x).unwrap(), lc.value(j, i, x).unwrap());
                        if lhs != lc.value(l, i, x).unwrap() {
                            return Err(Error::InvalidCech("lc cocycle relation fails".into()));
                        }
                    }
                }
            }
        }
        for &(i, j, x, v) in &lc.values {
            for &(i2, j2, y, w) in &lc.values {
                if i == i2
                    && j == j2
                    && v != w
                    && component_of(p, lc.cover[i], lc.cover[j], x)
                        == component_of(p, lc.cover[i], lc.cover[j], y)
                {
                    return Err(Error::InvalidCech("lc value is not locally constant".into()));
                }
            }
        }
        Ok(lc)
    }
}

fn check_cover(poset: &Poset, cover: &[Elem]) -> Result<()> {
    for &a in cover {
        poset.check(a)?;
    }
    for x in points(poset) {
        if !cover.iter().any(|&a| contains(poset, a, x)) {
            return Err(Error::NotACover(poset.label(x).to_string()));
        }
    }
    Ok(())
}

/// `ξ^lc_(a a′)(x) = ξ_(a a′)(o)` for any `o` in the overlap containing `x`.
pub fn to_locally_constant(xi: &CechCocycle, cover: &[Elem]) -> Result<LcCocycle> {
    let p = xi.poset();
    check_cover(p, cover)?;
    if let Some(v) = xi.violations().into_iter().next() {
        return Err(Error::InvalidCech(v));
    }
    let mut values = Vec::new();
    for (i, &a) in cover.iter().enumerate() {
        for (j, &b) in cover.iter().enumerate() {
            for x in points(p).into_iter().filter(|&x| contains(p, a, x) && contains(p, b, x)) {
                values.push((i, j, x, xi.at(a, b, x)));
            }
        }
    }
    LcCocycle::new(xi.complex.clone(), xi.group.clone(), cover.to_vec(), values)
}

/// The family `v_(a ã)(x) = ξ_(a ã)(x)` relating the lc cocycles of one
/// Čech cocycle on two covers, keyed by cover positions.
pub fn cover_change_witness(
    xi: &CechCocycle,
    cover: &[Elem],
    other: &[Elem],
) -> LcEntries {
    let p = xi.poset();
    let mut out = Vec::new();
    for (i, &a) in cover.iter().enumerate() {
        for (j, &b) in other.iter().enumerate() {
            for x in points(p).into_iter().filter(|&x| contains(p, a, x) && contains(p, b, x)) {
                out.push((i, j, x, xi.at(a, b, x)));
            }
        }
    }
    out
}

/// Checks `v_(a ã)(x) f̃_(ã ã′)(x) v_(a′ ã′)(x)⁻¹ = f_(a a′)(x)`.
pub fn check_lc_witness(
    f: &LcCocycle,
    f_tilde: &LcCocycle,
    witness: &[(usize, usize, Elem, GroupElement)],
) -> bool {
    let g = &f.group;
    let v = |i: usize, j: usize, x: Elem| {
        witness.iter().find(|w| w.0 == i && w.1 == j && w.2 == x).map(|w| w.3)
    };
    let p = f.poset();
    for x in points(p) {
        let ins: Vec<usize> = (0..f.cover.len()).filter(|&i| contains(p, f.cover[i], x)).collect();
        let tins: Vec<usize> =
            (0..f_tilde.cover.len()).filter(|&i| contains(p, f_tilde.cover[i], x)).collect();
        for &a in &ins {
            for &a2 in &ins {
                for &t in &tins {
                    for &t2 in &tins {
                        let (Some(v1), Some(v2)) = (v(a, t, x), v(a2, t2, x)) else {
                            return false;
                        };
                        let lhs = g.mul(g.mul(v1, f_tilde.value(t, t2, x).unwrap()), g.inv(v2));
                        if lhs != f.value(a, a2, x).unwrap() {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Searches for a locally constant witness `v` relating `(Ã, f̃)` to `(A, f)`.
/// Unknowns are one group element per `(a, ã)` and component of their
/// overlap meeting the points; each relation fixes one unknown from another,
/// so every connected block is solved by trying all values at one unknown.
pub fn lc_equivalent(
    f: &LcCocycle,
    f_tilde: &LcCocycle,
) -> Result<Option<LcEntries>> {
    if f.poset() != f_tilde.poset() || *f.group != *f_tilde.group {
        return Err(Error::Mismatch("lc cocycles live over different data".into()));
    }
    let p = f.poset();
    let g = &f.group;
    let pts = points(p);
    // Unknown for (i, t, x): indexed through its component label.
    let mut keys: Vec<(usize, usize, Elem)> = Vec::new();
    let mut slots: Vec<(usize, usize, Elem, usize)> = Vec::new();
    for (i, &a) in f.cover.iter().enumerate() {
        for (t, &at) in f_tilde.cover.iter().enumerate() {
            for &x in pts.iter().filter(|&&x| contains(p, a, x) && contains(p, at, x)) {
                let key = (i, t, component_of(p, a, at, x));
                let id = match keys.iter().position(|k| *k == key) {
                    Some(id) => id,
                    None => {
                        keys.push(key);
                        keys.len() - 1
                    }
                };
                slots.push((i, t, x, id));
            }
        }
    }
    let var = |i: usize, t: usize, x: Elem| {
        slots.iter().find(|s| s.0 == i && s.1 == t && s.2 == x).map(|s| s.3)
    };
    // v_X · c1 = c2 · v_Y, i.e. v_Y = c2⁻¹ v_X c1.
    let mut constraints: Vec<(usize, GroupElement, GroupElement, usize)> = Vec::new();
    for &x in &pts {
        let ins: Vec<usize> = (0..f.cover.len()).filter(|&i| contains(p, f.cover[i], x)).collect();
        let tins: Vec<usize> =
            (0..f_tilde.cover.len()).filter(|&i| contains(p, f_tilde.cover[i], x)).collect();
        for &a in &ins {
            for &a2 in &ins {
                for &t in &tins {
                    for &t2 in &tins {
                        let (vx, vy) = (var(a, t, x).unwrap(), var(a2, t2, x).unwrap());
                        let c1 = f_tilde.value(t, t2, x).unwrap();
                        let c2 = f.value(a, a2, x).unwrap();
                        constraints.push((vx, c1, c2, vy));
                    }
                }
            }
        }
    }
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); keys.len()];
    for (k, c) in constraints.iter().enumerate() {
        adjacency[c.0].push(k);
        adjacency[c.3].push(k);
    }
    let mut solution: Vec<Option<GroupElement>> = vec![None; keys.len()];
    for root in 0..keys.len() {
        if solution[root].is_some() {
            continue;
        }
        let mut found = None;
        for start in g.elements() {
            let mut trial = solution.clone();
            if propagate(g, &constraints, &adjacency, root, start, &mut trial) {
                found = Some(trial);
                break;
            }
        }
        match found {
            Some(s) => solution = s,
            None => return Ok(None),
        }
    }
    let witness: Vec<_> =
        slots.iter().map(|&(i, t, x, id)| (i, t, x, solution[id].expect("solved"))).collect();
    Ok(check_lc_witness(f, f_tilde, &witness).then_some(witness))
}

fn propagate(
    g: &Group,
    constraints: &[(usize, GroupElement, GroupElement, usize)],
    adjacency: &[Vec<usize>],
    root: usize,
    start: GroupElement,
    solution: &mut [Option<GroupElement>],
) -> bool {
    solution[root] = Some(start);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &k in &adjacency[v] {
            let (x, c1, c2, y) = constraints[k];
            match (solution[x], solution[y]) {
                (Some(vx), Some(vy)) => {
                    if g.mul(vx, c1) != g.mul(c2, vy) {
                        return false;
                    }
                }
                (Some(vx), None) => {
                    solution[y] = Some(g.mul(g.mul(g.inv(c2), vx), c1));
                    queue.push_back(y);
                }
                (None, Some(vy)) => {
                    solution[x] = Some(g.mul(g.mul(c2, vy), g.inv(c1)));
                    queue.push_back(x);
                }
                (None, None) => unreachable!("one end was just assigned"),
            }
        }
    }
    true
}
