//! Translating between bundle data and cochains through local charts.

use std::sync::Arc;

use super::{Cochain1, Morphism0};
use crate::bundles::{BundleConnection, BundleMorphism, NetBundle, PrincipalNetBundle, Trivialization};
use crate::cech::to_net;
use crate::error::{Error, Result};
use crate::groups::GroupElement;

/// A principal bundle rebuilt from a cocycle with its standard charts.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub bundle: Arc<PrincipalNetBundle>,
    pub trivialization: Trivialization,
}

impl Reconstruction {
    /// The cocycle of the charts, `z_θ(b) = z_(∂₀b ∂₁b)(|b|)`.
    pub fn cocycle(&self) -> Result<Cochain1> {
        to_net(&self.trivialization.transition_functions())
    }
}

/// Builds the principal bundle of a cocycle `z`. The fibre over `o` is `G`,
/// where the class of `(o, g, a)` sits at `z(o; o, a) g`; `J_(a,ã)` is left
/// multiplication by `z(a; a, ã)` and `G` acts by right multiplication.
/// The chart at `a` is anchored at the identity, so its transition
/// functions return `z`.
pub fn reconstruct_bundle(z: &Cochain1) -> Result<Reconstruction> {
    z.require_cocycle()?;
    let c = z.complex().clone();
    let g = z.group().clone();
    let p = c.poset();
    let mut maps = Vec::new();
    for a in p.elements() {
        for at in p.elements().filter(|&at| p.lt(at, a)) {
            let left = z.nerve_value(a, at);
            maps.push(((a, at), g.elements().map(|x| g.mul(left, x).index()).collect()));
        }
    }
    let nb = NetBundle::new(c.clone(), vec![g.order(); p.len()], maps)?;
    let bundle = Arc::new(PrincipalNetBundle::with_index_action(nb, g.clone())?);
    bundle.require_valid()?;
    let trivialization = Trivialization::from_parts(bundle.clone(), vec![0; p.len()]);
    Ok(Reconstruction { bundle, trivialization })
}

/// `Γ(θ, U)(b) = θ_(∂₀b)⁻¹ U(b) θ_(∂₁b)(∂₁b, e)`.
pub fn gamma(theta: &Trivialization, connection: &BundleConnection) -> Result<Cochain1> {
    let pb = theta.bundle();
    if let Some(v) = connection.validate(pb.bundle(), Some(pb)).first() {
        return Err(Error::InvalidBundle(v.describe(pb.complex())));
    }
    let c = pb.complex().clone();
    let e = pb.group().identity();
    Ok(Cochain1::from_fn(c.clone(), pb.group().clone(), |i| {
        let b = c.edge(i);
        let start = theta.chart(b.face1(), b.face1(), e);
        theta.chart_inverse(b.face0(), b.face0(), connection.map(i)[start])
    }))
}

/// `Υ(θ, u)(b) = θ_(∂₀b) ∘ ℓ(u(b)) ∘ θ_(∂₁b)⁻¹`. Requires `u` to be a
/// connection whose induced cocycle is the cocycle of the charts.
pub fn upsilon(theta: &Trivialization, u: &Cochain1) -> Result<BundleConnection> {
    u.require_connection()?;
    let pb = theta.bundle();
    let zt = to_net(&theta.transition_functions())?;
    if u.poset() != zt.poset() || **u.group() != **zt.group() {
        return Err(Error::Mismatch("connection and bundle live over different data".into()));
    }
    if u.induced_cocycle()?.values() != zt.values() {
        return Err(Error::WrongInducedCocycle);
    }
    let g = pb.group();
    let c = pb.complex();
    let maps = c
        .edges()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            (0..pb.bundle().fibre_size(b.face1()))
                .map(|x| {
                    let h = theta.chart_inverse(b.face1(), b.face1(), x);
                    theta.chart(b.face0(), b.face0(), g.mul(u.value(i), h))
                })
                .collect()
        })
        .collect();
    Ok(BundleConnection::new(maps))
}

/// `Γ(F)_a = θ_a⁻¹ F(θ̂_a(a, e))` for `F` from the bundle of `source` to
/// the bundle of `target`.
pub fn gamma_morphism(
    source: &Trivialization,
    target: &Trivialization,
    morphism: &BundleMorphism,
) -> Result<Morphism0> {
    let (ps, pt) = (source.bundle(), target.bundle());
    if ps.complex().poset() != pt.complex().poset() || **ps.group() != **pt.group() {
        return Err(Error::Mismatch("bundles live over different data".into()));
    }
    if let Some(v) = morphism.validate_principal(ps, pt).first() {
        return Err(Error::InvalidBundle(v.describe(ps.complex())));
    }
    let e = ps.group().identity();
    let values: Vec<GroupElement> = ps
        .complex()
        .poset()
        .elements()
        .map(|a| target.chart_inverse(a, a, morphism.apply(a, source.chart(a, a, e))))
        .collect();
    Morphism0::new(pt.complex().clone(), pt.group().clone(), values)
}

/// `Υ(m)(ψ) = θ_a(a, m_a g)` where `θ̂_a⁻¹(ψ) = (a, g)`.
pub fn upsilon_morphism(
    source: &Trivialization,
    target: &Trivialization,
    m: &Morphism0,
) -> Result<BundleMorphism> {
    let (ps, pt) = (source.bundle(), target.bundle());
    if ps.complex().poset() != pt.complex().poset()
        || **ps.group() != **pt.group()
        || **m.group() != **pt.group()
    {
        return Err(Error::Mismatch("bundles live over different data".into()));
    }
    let g = pt.group();
    let maps = ps
        .complex()
        .poset()
        .elements()
        .map(|a| {
            (0..ps.bundle().fibre_size(a))
                .map(|x| target.chart(a, a, g.mul(m.value(a), source.chart_inverse(a, a, x))))
                .collect()
        })
        .collect();
    Ok(BundleMorphism::new(maps))
}
