//! Oracles recomputed from first principles, independent of the library's
//! cached faces and triangle tables.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use netbundle::cohomology::classify_cocycles;
use netbundle::{Cochain1, Complex, Execution, Group, GroupElement, Poset, Simplex};

pub const BUDGET: u128 = 1 << 24;

pub fn group(spec: &str) -> Arc<Group> {
    Group::parse(spec).unwrap().into_shared()
}

pub fn shared(p: Poset) -> Arc<Complex> {
    Complex::new(p).into_shared()
}

pub fn reps(c: &Arc<Complex>, g: &Arc<Group>) -> Vec<Cochain1> {
    classify_cocycles(c, g, BUDGET, Execution::default())
        .unwrap()
        .classes
        .into_iter()
        .map(|k| k.cocycle)
        .collect()
}

fn edge_value(u: &Cochain1, b: &Simplex) -> GroupElement {
    u.value(u.complex().index_of(b).unwrap())
}

/// `u(∂₀c) u(∂₂c) u(∂₁c)⁻¹` for every 2-simplex, faces taken from the
/// simplex itself.
pub fn curvature_oracle(u: &Cochain1) -> HashMap<Simplex, GroupElement> {
    let g = u.group();
    u.complex()
        .simplices(2)
        .unwrap()
        .into_iter()
        .map(|t| {
            let f = |i| edge_value(u, &t.face(i).unwrap());
            let w = g.mul(g.mul(f(0), f(2)), g.inv(f(1)));
            (t, w)
        })
        .collect()
}

pub fn is_cocycle_oracle(u: &Cochain1) -> bool {
    curvature_oracle(u).values().all(|&w| w == GroupElement::IDENTITY)
}

/// Number of 3-simplices where `w(∂₀d) w(∂₂d) ≠ ad(u(∂₀∂₁d)) w(∂₃d) · w(∂₁d)`.
pub fn bianchi_oracle(u: &Cochain1) -> usize {
    let g = u.group();
    let w = curvature_oracle(u);
    u.complex()
        .simplices(3)
        .unwrap()
        .into_iter()
        .filter(|d| {
            let face = |i| w[&d.face(i).unwrap()];
            let e = edge_value(u, &d.face(1).unwrap().face(0).unwrap());
            let lhs = g.mul(face(0), face(2));
            let rhs = g.mul(g.mul(g.mul(e, face(3)), g.inv(e)), face(1));
            lhs != rhs
        })
        .count()
}

/// Number of conjugacy classes, by orbit counting on the multiplication.
pub fn conjugacy_class_count(g: &Group) -> usize {
    let mut seen = vec![false; g.order()];
    let mut count = 0;
    for x in g.elements() {
        if seen[x.index()] {
            continue;
        }
        count += 1;
        for h in g.elements() {
            let y = g.mul(g.mul(h, x), g.inv(h));
            seen[y.index()] = true;
        }
    }
    count
}

/// `f(∂₀b) ṽ(b) = v(b) f(∂₁b)` on every simplex.
pub fn morphism_oracle(f: &[GroupElement], source: &Cochain1, target: &Cochain1) -> bool {
    let g = target.group();
    let c = target.complex();
    (0..c.edge_count()).all(|e| {
        let b = c.edge(e);
        g.mul(f[b.face0().index()], source.value(e)) == g.mul(target.value(e), f[b.face1().index()])
    })
}

pub fn specs() -> [&'static str; 5] {
    ["Z2", "Z3", "Z4", "Z6", "S3"]
}
