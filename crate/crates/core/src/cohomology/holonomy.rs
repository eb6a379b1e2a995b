use super::{Cochain1, Curvature2, Morphism0};
use crate::error::Result;
use crate::groups::{GroupElement, Subgroup};
use crate::poset::Elem;

/// Holonomy and restricted holonomy at a base element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Holonomy {
    pub base: Elem,
    pub full: Subgroup,
    pub restricted: Subgroup,
}

/// A gauge transform of a connection into its holonomy group.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub subgroup: Subgroup,
    pub reduced: Cochain1,
    /// Morphism from `reduced` to the original connection.
    pub witness: Morphism0,
}

/// `W(x) = u(tree path base → x)`.
fn tree_transport(u: &Cochain1, base: Elem) -> Result<Vec<GroupElement>> {
    let tree = u.complex().tree_paths(base)?;
    Ok(tree.iter().map(|p| u.evaluate_edges(p)).collect())
}

fn holonomy_generators(u: &Cochain1, w: &[GroupElement]) -> Vec<GroupElement> {
    let g = u.group();
    let c = u.complex();
    let mut gens: Vec<GroupElement> = (0..c.edge_count())
        .map(|e| {
            let b = c.edge(e);
            g.mul(g.mul(g.inv(w[b.face0().index()]), u.value(e)), w[b.face1().index()])
        })
        .collect();
    gens.sort();
    gens.dedup();
    gens
}

/// The subgroup of values of `u` on loops at `base`.
pub fn holonomy(u: &Cochain1, base: Elem) -> Result<Subgroup> {
    u.require_connection()?;
    u.poset().check(base)?;
    let w = tree_transport(u, base)?;
    u.group().subgroup_generated(&holonomy_generators(u, &w))
}

/// The normal closure, inside the holonomy, of the curvature values carried
/// back to `base` along tree paths.
pub fn restricted_holonomy(u: &Cochain1, base: Elem) -> Result<Subgroup> {
    u.require_connection()?;
    u.poset().check(base)?;
    let g = u.group();
    let w = tree_transport(u, base)?;
    let full = g.subgroup_generated(&holonomy_generators(u, &w))?;
    let curv = Curvature2::new(u)?;
    let c = u.complex();
    let mut gens: Vec<GroupElement> = (0..c.triangles().len())
        .map(|t| {
            // The curvature of c is a loop at its vertex 2.
            let at = w[c.triangles()[t].value(0b100).index()];
            g.mul(g.mul(g.inv(at), curv.value(t)), at)
        })
        .collect();
    gens.sort();
    gens.dedup();
    g.normal_closure(&gens, &full)
}

impl Holonomy {
    pub fn compute(u: &Cochain1, base: Elem) -> Result<Holonomy> {
        Ok(Holonomy {
            base,
            full: holonomy(u, base)?,
            restricted: restricted_holonomy(u, base)?,
        })
    }

    pub fn restricted_is_normal(&self, u: &Cochain1) -> bool {
        u.group().is_normal_in(&self.restricted, &self.full)
    }
}

/// `ũ(b) = W(∂₀b)⁻¹ u(b) W(∂₁b)`, valued in the holonomy group at `base`,
/// with `W` as the morphism from `ũ` to `u`.
pub fn reduce_to_holonomy(u: &Cochain1, base: Elem) -> Result<Reduction> {
    u.require_connection()?;
    u.poset().check(base)?;
    let w = tree_transport(u, base)?;
    let subgroup = u.group().subgroup_generated(&holonomy_generators(u, &w))?;
    let witness = Morphism0::new(u.complex().clone(), u.group().clone(), w)?;
    let reduced = u.gauge(&witness)?;
    Ok(Reduction { subgroup, reduced, witness })
}

/// A reduction to a proper subgroup, if one exists. Any cochain equivalent
/// to `u` takes values generating a conjugate of a group containing the
/// holonomy, so the holonomy reduction is proper exactly when some
/// reduction is.
pub fn is_reducible(u: &Cochain1) -> Result<Option<Reduction>> {
    let r = reduce_to_holonomy(u, Elem::new(0))?;
    Ok((!r.subgroup.is_whole()).then_some(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{classify_cocycles, find_nonflat};
    use crate::groups::{Group, GroupHom, GroupSpec};
    use crate::{fixtures, Complex, Execution};
    use std::sync::Arc;

    #[test]
    fn flat_circle_holonomy_is_the_image() {
        let c = Complex::new(fixtures::circ4()).into_shared();
        let g = Group::new(&GroupSpec::Cyclic(6)).unwrap().into_shared();
        let cl = classify_cocycles(&c, &g, 1 << 20, Execution::Sequential).unwrap();
        for class in &cl.classes {
            let image = g.subgroup_generated(&class.hom).unwrap();
            for base in c.poset().elements() {
                let h = Holonomy::compute(&class.cocycle, base).unwrap();
                assert_eq!(h.full, image);
                assert!(h.restricted.is_trivial());
            }
        }
    }

    #[test]
    fn reduction_into_subgroup() {
        let c = Complex::new(fixtures::circ4()).into_shared();
        let g = Group::new(&GroupSpec::Cyclic(6)).unwrap().into_shared();
        let cl = classify_cocycles(&c, &g, 1 << 20, Execution::Sequential).unwrap();
        let two = cl.classes.iter().find(|k| k.hom.iter().any(|x| x.index() == 2)).unwrap();
        let r = is_reducible(&two.cocycle).unwrap().unwrap();
        assert_eq!(r.subgroup.len(), 3);
        assert!(r.reduced.values().iter().all(|&x| r.subgroup.contains(x)));
        assert!(r.witness.is_morphism(&r.reduced, &two.cocycle));
        let inc = GroupHom::inclusion(g.clone(), &r.subgroup);
        let sub = inc.source().clone();
        let small = Cochain1::from_fn(c.clone(), sub, |e| inc.preimage(r.reduced.value(e)).unwrap());
        let back = small.pushforward(&inc).unwrap();
        assert!(crate::cohomology::cochains_equivalent(&two.cocycle, &back).unwrap().is_some());
        let iota = Cochain1::trivial(c.clone(), g.clone());
        let r0 = reduce_to_holonomy(&iota, Elem::new(0)).unwrap();
        assert_eq!(r0.reduced, iota);
    }

    #[test]
    fn curved_connection_has_restricted_holonomy() {
        let c = Complex::new(fixtures::circ4()).into_shared();
        let g: Arc<Group> = Group::new(&GroupSpec::Symmetric(3)).unwrap().into_shared();
        let (u, _) = find_nonflat(&c, &g).unwrap().unwrap();
        let h = Holonomy::compute(&u, Elem::new(0)).unwrap();
        assert!(!h.restricted.is_trivial());
        assert!(h.restricted_is_normal(&u));
        assert!(h.restricted.is_subset_of(&h.full));
    }
}
