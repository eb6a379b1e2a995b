//! 1-cochains, connections, cocycles, curvature and their equivalences.
//!
//! A [`Cochain1`] assigns a group element to every 1-simplex. It is a
//! connection when it is reverse-symmetric and satisfies the cocycle identity
//! on nerve triangles, and a cocycle when the identity
//! `z(∂₀c) z(∂₂c) = z(∂₁c)` holds on every triangle. A [`Morphism0`] `f` from
//! `ṽ` to `v` satisfies `f(∂₀b) ṽ(b) = v(b) f(∂₁b)`.

mod classify;
mod dictionary;
mod holonomy;

pub use classify::{
    brute_force_classes, classify_cocycles, classify_with_oracle, flat_cocycle_from_hom,
    hom_of_cocycle, Classification, CocycleClass, OracleReport, ORACLE_LIMIT,
};
pub use dictionary::{
    gamma, gamma_morphism, reconstruct_bundle, upsilon, upsilon_morphism, Reconstruction,
};
pub use holonomy::{
    holonomy, is_reducible, reduce_to_holonomy, restricted_holonomy, Holonomy, Reduction,
};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{Group, GroupElement, GroupHom};
use crate::poset::{Elem, Poset};
use crate::simplicial::{Complex, Path};

impl Complex {
    pub fn into_shared(self) -> Arc<Complex> {
        Arc::new(self)
    }
}

fn same_base(a: &Arc<Complex>, b: &Arc<Complex>) -> bool {
    Arc::ptr_eq(a, b) || a.poset() == b.poset()
}

/// A map from `Σ̃₁(K)` to `G`, indexed like [`Complex::edges`].
#[derive(Clone, Debug)]
pub struct Cochain1 {
    complex: Arc<Complex>,
    group: Arc<Group>,
    values: Vec<GroupElement>,
}

impl PartialEq for Cochain1 {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
            && same_base(&self.complex, &other.complex)
            && *self.group == *other.group
    }
}

impl Eq for Cochain1 {}

impl Cochain1 {
    pub fn new(complex: Arc<Complex>, group: Arc<Group>, values: Vec<GroupElement>) -> Result<Self> {
        if values.len() != complex.edge_count() {
            return Err(Error::PartialCochain {
                missing: complex.edge_count().saturating_sub(values.len()),
            });
        }
        for &g in &values {
            group.check(g)?;
        }
        Ok(Cochain1 { complex, group, values })
    }

    pub fn from_fn<F: FnMut(usize) -> GroupElement>(
        complex: Arc<Complex>,
        group: Arc<Group>,
        f: F,
    ) -> Self {
        let values = (0..complex.edge_count()).map(f).collect();
        Cochain1 { complex, group, values }
    }

    /// The trivial cochain `ι`.
    pub fn trivial(complex: Arc<Complex>, group: Arc<Group>) -> Self {
        let e = group.identity();
        Cochain1::from_fn(complex, group, |_| e)
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

    pub fn values(&self) -> &[GroupElement] {
        &self.values
    }

    #[inline]
    pub fn value(&self, e: usize) -> GroupElement {
        self.values[e]
    }

    pub fn set(&mut self, e: usize, g: GroupElement) {
        self.values[e] = g;
    }

    /// Value on the nerve simplex `(a, ã)`.
    pub fn nerve_value(&self, a: Elem, a_tilde: Elem) -> GroupElement {
        self.values[self.complex.nerve_index(a, a_tilde).expect("ã ≤ a")]
    }

    /// `v(p) = v(bₙ)⋯v(b₁)`.
    pub fn evaluate_path(&self, p: &Path) -> Result<GroupElement> {
        self.complex.path(p.edges().to_vec())?;
        Ok(self.evaluate_edges(p.edges()))
    }

    /// Product over edges listed in application order.
    pub(crate) fn evaluate_edges(&self, edges: &[usize]) -> GroupElement {
        edges.iter().fold(self.group.identity(), |acc, &e| self.group.mul(self.values[e], acc))
    }

    /// `v(∂₀c) v(∂₂c) v(∂₁c)⁻¹` for triangle `t`.
    #[inline]
    pub(crate) fn defect(&self, t: usize) -> GroupElement {
        let g = &self.group;
        let [f0, f1, f2] = self.complex.triangle_faces(t);
        g.mul(g.mul(self.values[f0], self.values[f2]), g.inv(self.values[f1]))
    }

    /// Triangles on which the cocycle identity fails.
    pub fn cocycle_violations(&self) -> Vec<usize> {
        (0..self.complex.triangles().len()).filter(|&t| self.defect(t) != self.group.identity()).collect()
    }

    pub fn is_cocycle(&self) -> bool {
        (0..self.complex.triangles().len()).all(|t| self.defect(t) == self.group.identity())
    }

    /// Edges breaking reverse symmetry and nerve triangles breaking the
    /// cocycle identity.
    pub fn connection_violations(&self) -> (Vec<usize>, Vec<usize>) {
        let g = &self.group;
        let edges = (0..self.complex.edge_count())
            .filter(|&e| self.values[self.complex.reverse_index(e)] != g.inv(self.values[e]))
            .collect();
        let triangles = (0..self.complex.triangles().len())
            .filter(|&t| self.complex.is_nerve_triangle(t) && self.defect(t) != g.identity())
            .collect();
        (edges, triangles)
    }

    pub fn is_connection(&self) -> bool {
        let (e, t) = self.connection_violations();
        e.is_empty() && t.is_empty()
    }

    pub(crate) fn require_connection(&self) -> Result<()> {
        if self.is_connection() {
            Ok(())
        } else {
            Err(Error::NotConnection)
        }
    }

    pub(crate) fn require_cocycle(&self) -> Result<()> {
        if self.is_cocycle() {
            Ok(())
        } else {
            Err(Error::NotCocycle)
        }
    }

    /// The cocycle agreeing with the connection `self` on the nerve:
    /// `z(b) = u(|b|; |b|, ∂₀b)⁻¹ u(|b|; |b|, ∂₁b)`.
    pub fn induced_cocycle(&self) -> Result<Cochain1> {
        self.require_connection()?;
        let g = &self.group;
        let c = &self.complex;
        Ok(Cochain1::from_fn(c.clone(), g.clone(), |e| {
            let b = c.edge(e);
            let s = b.support();
            g.mul(g.inv(self.nerve_value(s, b.face0())), self.nerve_value(s, b.face1()))
        }))
    }

    /// `ũ(b) = f(∂₀b)⁻¹ u(b) f(∂₁b)`, so that `f` is a morphism from the
    /// result to `self`.
    pub fn gauge(&self, f: &Morphism0) -> Result<Cochain1> {
        self.check_compatible_morphism(f)?;
        let g = &self.group;
        let c = &self.complex;
        Ok(Cochain1::from_fn(c.clone(), g.clone(), |e| {
            let b = c.edge(e);
            g.mul(g.mul(g.inv(f.value(b.face0())), self.values[e]), f.value(b.face1()))
        }))
    }

    fn check_compatible_morphism(&self, f: &Morphism0) -> Result<()> {
        if !same_base(&self.complex, &f.complex) || *self.group != *f.group {
            return Err(Error::Mismatch("cochain and morphism live over different data".into()));
        }
        Ok(())
    }

    /// `γ ∘ v`.
    pub fn pushforward(&self, gamma: &GroupHom) -> Result<Cochain1> {
        if **gamma.source() != *self.group {
            return Err(Error::SpecMismatch(format!(
                "homomorphism source {} differs from {}",
                gamma.source().descriptor(),
                self.group.descriptor()
            )));
        }
        let values = self.values.iter().map(|&x| gamma.apply(x)).collect();
        Ok(Cochain1 { complex: self.complex.clone(), group: gamma.target().clone(), values })
    }

    /// Rewrites the cochain over a group equal to its own (for instance a
    /// freshly parsed copy), keeping the values.
    pub fn with_group(&self, group: Arc<Group>) -> Result<Cochain1> {
        if *group != *self.group {
            return Err(Error::SpecMismatch(group.descriptor()));
        }
        Ok(Cochain1 { complex: self.complex.clone(), group, values: self.values.clone() })
    }
}

/// A map from `Σ̃₀(K)` to `G`.
#[derive(Clone, Debug)]
pub struct Morphism0 {
    complex: Arc<Complex>,
    group: Arc<Group>,
    values: Vec<GroupElement>,
}

impl PartialEq for Morphism0 {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
            && same_base(&self.complex, &other.complex)
            && *self.group == *other.group
    }
}

impl Eq for Morphism0 {}

impl Morphism0 {
    pub fn new(complex: Arc<Complex>, group: Arc<Group>, values: Vec<GroupElement>) -> Result<Self> {
        if values.len() != complex.poset().len() {
            return Err(Error::PartialCochain {
                missing: complex.poset().len().saturating_sub(values.len()),
            });
        }
        for &g in &values {
            group.check(g)?;
        }
        Ok(Morphism0 { complex, group, values })
    }

    /// The identity arrow: constantly `e`.
    pub fn identity(complex: Arc<Complex>, group: Arc<Group>) -> Self {
        let values = vec![group.identity(); complex.poset().len()];
        Morphism0 { complex, group, values }
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn values(&self) -> &[GroupElement] {
        &self.values
    }

    #[inline]
    pub fn value(&self, a: Elem) -> GroupElement {
        self.values[a.index()]
    }

    /// True iff `f(∂₀b) ṽ(b) = v(b) f(∂₁b)` for every 1-simplex.
    pub fn is_morphism(&self, source: &Cochain1, target: &Cochain1) -> bool {
        self.violations(source, target).is_empty()
    }

    /// Edges on which the morphism condition fails.
    pub fn violations(&self, source: &Cochain1, target: &Cochain1) -> Vec<usize> {
        let g = &self.group;
        let c = &self.complex;
        (0..c.edge_count())
            .filter(|&e| {
                let b = c.edge(e);
                g.mul(self.value(b.face0()), source.value(e))
                    != g.mul(target.value(e), self.value(b.face1()))
            })
            .collect()
    }

    /// Pointwise product `self · first`, a morphism from the source of
    /// `first` to the target of `self`.
    pub fn compose(&self, first: &Morphism0) -> Morphism0 {
        let g = &self.group;
        let values =
            self.values.iter().zip(&first.values).map(|(&a, &b)| g.mul(a, b)).collect();
        Morphism0 { complex: self.complex.clone(), group: self.group.clone(), values }
    }

    /// Pointwise inverse, a morphism in the opposite direction.
    pub fn inverse(&self) -> Morphism0 {
        let values = self.values.iter().map(|&a| self.group.inv(a)).collect();
        Morphism0 { complex: self.complex.clone(), group: self.group.clone(), values }
    }

    /// `γ ∘ f`.
    pub fn pushforward(&self, gamma: &GroupHom) -> Result<Morphism0> {
        if **gamma.source() != *self.group {
            return Err(Error::SpecMismatch(gamma.source().descriptor()));
        }
        let values = self.values.iter().map(|&x| gamma.apply(x)).collect();
        Ok(Morphism0 { complex: self.complex.clone(), group: gamma.target().clone(), values })
    }

    /// `(df)(b) = f(∂₀b) f(∂₁b)⁻¹`.
    pub fn coboundary(&self) -> Cochain1 {
        let g = &self.group;
        let c = &self.complex;
        Cochain1::from_fn(c.clone(), g.clone(), |e| {
            let b = c.edge(e);
            g.mul(self.value(b.face0()), g.inv(self.value(b.face1())))
        })
    }
}

/// Searches for a morphism from `u_hat` to `u`, i.e. `f` with
/// `f(∂₀b) û(b) = u(b) f(∂₁b)`. Tries every value at the first element and
/// propagates along a spanning tree.
pub fn cochains_equivalent(u: &Cochain1, u_hat: &Cochain1) -> Result<Option<Morphism0>> {
    if !same_base(&u.complex, &u_hat.complex) || *u.group != *u_hat.group {
        return Err(Error::Mismatch("cochains live over different data".into()));
    }
    let c = &u.complex;
    let g = &u.group;
    c.poset().require_connected()?;
    let base = Elem::new(0);
    let tree = c.tree_paths(base)?;
    // Order the vertices so each tree parent precedes its children.
    let mut order: Vec<Elem> = c.poset().elements().collect();
    order.sort_by_key(|x| tree[x.index()].len());
    for start in g.elements() {
        let mut f = vec![g.identity(); c.poset().len()];
        f[base.index()] = start;
        for &x in &order[1..] {
            let e = *tree[x.index()].last().expect("non-base vertex");
            let from = c.edge(e).face1();
            f[x.index()] = g.mul(g.mul(u.value(e), f[from.index()]), g.inv(u_hat.value(e)));
        }
        let m = Morphism0 { complex: c.clone(), group: g.clone(), values: f };
        if m.is_morphism(u_hat, u) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// `w_u(c) = u(∂₀c) u(∂₂c) u(∂₁c)⁻¹` on every triangle, with its connection.
#[derive(Clone, Debug)]
pub struct Curvature2 {
    connection: Cochain1,
    values: Vec<GroupElement>,
}

/// A 3-simplex on which the Bianchi identity fails, with both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BianchiViolation {
    pub tetrahedron: usize,
    pub lhs: GroupElement,
    pub rhs: GroupElement,
}

impl Curvature2 {
    pub fn new(u: &Cochain1) -> Result<Curvature2> {
        u.require_connection()?;
        let values = (0..u.complex.triangles().len()).map(|t| u.defect(t)).collect();
        Ok(Curvature2 { connection: u.clone(), values })
    }

    pub fn connection(&self) -> &Cochain1 {
        &self.connection
    }

    pub fn values(&self) -> &[GroupElement] {
        &self.values
    }

    pub fn value(&self, t: usize) -> GroupElement {
        self.values[t]
    }

    pub fn is_flat(&self) -> bool {
        self.values.iter().all(|&w| w == self.connection.group.identity())
    }

    /// Triangles with nontrivial curvature.
    pub fn support(&self) -> Vec<usize> {
        let e = self.connection.group.identity();
        (0..self.values.len()).filter(|&t| self.values[t] != e).collect()
    }

    /// Checks `w(∂₀d) w(∂₂d) = ad(u(∂₀₁d))(w(∂₃d)) w(∂₁d)` on every 3-simplex.
    pub fn bianchi_violations(&self) -> Vec<BianchiViolation> {
        let u = &self.connection;
        let g = &u.group;
        u.complex
            .tetrahedra()
            .iter()
            .enumerate()
            .filter_map(|(i, d)| {
                let w = |k: usize| self.values[d.faces[k]];
                let lhs = g.mul(w(0), w(2));
                let rhs = g.mul(g.conj(u.value(d.edge01), w(3)), w(1));
                (lhs != rhs).then_some(BianchiViolation { tetrahedron: i, lhs, rhs })
            })
            .collect()
    }
}

/// The curvature of a connection.
pub fn curvature(u: &Cochain1) -> Result<Curvature2> {
    Curvature2::new(u)
}

/// Bianchi report for a connection; empty when the identity holds everywhere.
pub fn bianchi_check(u: &Cochain1) -> Result<Vec<BianchiViolation>> {
    Ok(Curvature2::new(u)?.bianchi_violations())
}

/// `(df)(b) = f(∂₀b) f(∂₁b)⁻¹`.
pub fn coboundary0(f: &Morphism0) -> Cochain1 {
    f.coboundary()
}

/// A nonflat connection obtained by changing one reverse-symmetric pair of
/// values of the trivial cocycle off the nerve, with a triangle of nontrivial
/// curvature. `None` when no such perturbation is curved.
pub fn find_nonflat(complex: &Arc<Complex>, group: &Arc<Group>) -> Result<Option<(Cochain1, usize)>> {
    complex.poset().require_connected()?;
    let base = Cochain1::trivial(complex.clone(), group.clone());
    for e in 0..complex.edge_count() {
        let r = complex.reverse_index(e);
        if complex.is_nerve_edge(e) || complex.is_nerve_edge(r) || r < e {
            continue;
        }
        for x in group.elements().skip(1) {
            if r == e && group.inv(x) != x {
                continue;
            }
            let mut u = base.clone();
            u.set(e, x);
            u.set(r, group.inv(x));
            if !u.is_connection() {
                continue;
            }
            if let Some(&t) = Curvature2::new(&u)?.support().first() {
                return Ok(Some((u, t)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groups::GroupSpec;

    fn setup(poset: Poset, spec: GroupSpec) -> (Arc<Complex>, Arc<Group>) {
        (Complex::new(poset).into_shared(), Group::new(&spec).unwrap().into_shared())
    }

    #[test]
    fn trivial_cochain_is_a_cocycle() {
        let (c, g) = setup(fixtures::circ4(), GroupSpec::Cyclic(2));
        let iota = Cochain1::trivial(c, g);
        assert!(iota.is_cocycle());
        assert!(iota.is_connection());
        assert!(curvature(&iota).unwrap().is_flat());
        assert!(bianchi_check(&iota).unwrap().is_empty());
    }

    #[test]
    fn coboundaries() {
        let (c, g) = setup(fixtures::circ4(), GroupSpec::Symmetric(3));
        let f = Morphism0::new(
            c.clone(),
            g.clone(),
            (0..4).map(|i| GroupElement::from_index(i + 1)).collect(),
        )
        .unwrap();
        let df = coboundary0(&f);
        assert!(df.is_cocycle());
        let iota = Cochain1::trivial(c.clone(), g.clone());
        assert!(f.is_morphism(&iota, &df));
        assert!(cochains_equivalent(&df, &iota).unwrap().is_some());
        let constant = Morphism0::new(c.clone(), g.clone(), vec![GroupElement::from_index(3); 4]).unwrap();
        assert_eq!(constant.coboundary(), iota);
    }

    #[test]
    fn partial_cochains_are_rejected() {
        let (c, g) = setup(fixtures::chain3(), GroupSpec::Cyclic(2));
        assert_eq!(
            Cochain1::new(c, g, vec![GroupElement::IDENTITY; 3]).unwrap_err(),
            Error::PartialCochain { missing: 11 }
        );
    }

    #[test]
    fn reverse_symmetry_is_checked() {
        let (c, g) = setup(fixtures::circ4(), GroupSpec::Cyclic(3));
        let mut u = Cochain1::trivial(c.clone(), g);
        let e = (0..c.edge_count()).find(|&e| c.reverse_index(e) != e).unwrap();
        u.set(e, GroupElement::from_index(1));
        assert!(!u.is_connection());
        assert_eq!(u.induced_cocycle().unwrap_err(), Error::NotConnection);
    }

    #[test]
    fn circle_nonflat_example() {
        let (c, g) = setup(fixtures::circ4(), GroupSpec::Cyclic(2));
        let (u, t) = find_nonflat(&c, &g).unwrap().unwrap();
        assert!(u.is_connection());
        assert!(!u.is_cocycle());
        assert_ne!(curvature(&u).unwrap().value(t), g.identity());
        let z = u.induced_cocycle().unwrap();
        assert!(z.is_cocycle());
        assert_eq!(z, Cochain1::trivial(c.clone(), g.clone()));
        let (_, trivial) = setup(fixtures::circ4(), GroupSpec::Cyclic(1));
        assert!(find_nonflat(&c, &trivial).unwrap().is_none());
    }

    #[test]
    fn morphisms_compose_and_invert() {
        let (c, g) = setup(fixtures::chain3(), GroupSpec::Cyclic(5));
        let f = Morphism0::new(c.clone(), g.clone(), (0..3).map(GroupElement::from_index).collect()).unwrap();
        let h = Morphism0::new(c.clone(), g.clone(), vec![GroupElement::from_index(2); 3]).unwrap();
        let iota = Cochain1::trivial(c.clone(), g.clone());
        let v = iota.gauge(&f.inverse()).unwrap();
        assert!(f.is_morphism(&iota, &v));
        assert!(f.inverse().is_morphism(&v, &iota));
        let w = v.gauge(&h.inverse()).unwrap();
        assert!(h.compose(&f).is_morphism(&iota, &w));
    }
}
