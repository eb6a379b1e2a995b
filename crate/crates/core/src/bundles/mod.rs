//! Net bundles and principal net bundles as explicit finite data.
//!
//! Fibre points over `a` are numbered `0..fibre_size(a)` and written
//! `a#i`. The net structure `J` holds one bijection per nerve 1-simplex
//! `(a, ã)`, mapping the fibre over `ã` to the fibre over `a`.
//!
//! Charts, sections from a point and transition functions are indexed over
//! stars `{o : a ≤ o}`: the chart formula `θ_a(o, g) = J_(o,a)(φ_a)·g`
//! needs `a ≤ o`.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::cech::CechCocycle;
use crate::error::{Error, Result};
use crate::groups::{Group, GroupElement, Subgroup};
use crate::poset::{Elem, Poset};
use crate::simplicial::{Complex, Path};

/// A point of the total space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FibrePoint {
    pub base: Elem,
    pub index: usize,
}

impl FibrePoint {
    pub fn label(&self, poset: &Poset) -> String {
        format!("{}#{}", poset.label(self.base), self.index)
    }
}

/// One failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `J_(a,ã)` is not a bijection between the fibres.
    NotBijective { a: Elem, a_tilde: Elem },
    /// `J_(a,a)` is not the identity.
    NotIdentity { a: Elem },
    /// `J_(v2,v1) J_(v1,v0) ≠ J_(v2,v0)`.
    NotComposing { chain: [Elem; 3] },
    FibreSize { a: Elem, expected: usize, found: usize },
    /// `ψ·g = ψ` with `g ≠ e`.
    NotFree { point: FibrePoint, g: GroupElement },
    NotTransitive { a: Elem },
    /// `ψ·e ≠ ψ` or `(ψ·g)·h ≠ ψ·(gh)`.
    NotAnAction { point: FibrePoint },
    /// `J(ψ·g) ≠ J(ψ)·g`.
    NotEquivariant { a: Elem, a_tilde: Elem, point: FibrePoint, g: GroupElement },
    ConnectionNotBijective { edge: usize },
    /// `U(b̄) ≠ U(b)⁻¹`.
    ConnectionNotReversible { edge: usize },
    /// `U(b) ≠ J_b` on a nerve simplex.
    ConnectionDiffersFromJ { edge: usize },
    ConnectionNotEquivariant { edge: usize },
    MorphismNotBijective { a: Elem },
    MorphismBreaksJ { a: Elem, a_tilde: Elem },
    MorphismNotEquivariant { point: FibrePoint, g: GroupElement },
    SectionBreaksJ { a: Elem, a_tilde: Elem },
}

impl Violation {
    /// A one-line description using element ids.
    pub fn describe(&self, complex: &Complex) -> String {
        let p = complex.poset();
        let l = |e: &Elem| p.label(*e).to_string();
        let edge = |e: &usize| complex.edge(*e).display(p).to_string();
        match self {
            Violation::NotBijective { a, a_tilde } => {
                format!("J ({},{}) is not a bijection", l(a), l(a_tilde))
            }
            Violation::NotIdentity { a } => format!("J ({},{}) is not the identity", l(a), l(a)),
            Violation::NotComposing { chain: [v0, v1, v2] } => format!(
                "J ({},{}) J ({},{}) != J ({},{})",
                l(v2),
                l(v1),
                l(v1),
                l(v0),
                l(v2),
                l(v0)
            ),
            Violation::FibreSize { a, expected, found } => {
                format!("fibre over {} has {found} points, expected {expected}", l(a))
            }
            Violation::NotFree { point, g } => {
                format!("action fixes {} by non-identity #{}", point.label(p), g.index())
            }
            Violation::NotTransitive { a } => format!("action is not transitive over {}", l(a)),
            Violation::NotAnAction { point } => {
                format!("action is not a right action at {}", point.label(p))
            }
            Violation::NotEquivariant { a, a_tilde, point, g } => format!(
                "J ({},{}) does not commute with #{} at {}",
                l(a),
                l(a_tilde),
                g.index(),
                point.label(p)
            ),
            Violation::ConnectionNotBijective { edge: e } => {
                format!("connection on {} is not a bijection", edge(e))
            }
            Violation::ConnectionNotReversible { edge: e } => {
                format!("connection on {} is not inverted by the reverse", edge(e))
            }
            Violation::ConnectionDiffersFromJ { edge: e } => {
                format!("connection on nerve simplex {} differs from J", edge(e))
            }
            Violation::ConnectionNotEquivariant { edge: e } => {
                format!("connection on {} is not equivariant", edge(e))
            }
            Violation::MorphismNotBijective { a } => {
                format!("morphism is not bijective over {}", l(a))
            }
            Violation::MorphismBreaksJ { a, a_tilde } => {
                format!("morphism does not commute with J ({},{})", l(a), l(a_tilde))
            }
            Violation::MorphismNotEquivariant { point, g } => {
                format!("morphism is not equivariant at {} for #{}", point.label(p), g.index())
            }
            Violation::SectionBreaksJ { a, a_tilde } => {
                format!("section does not commute with J ({},{})", l(a), l(a_tilde))
            }
        }
    }
}

fn is_bijection(map: &[usize], target: usize) -> bool {
    if map.len() != target {
        return false;
    }
    let mut seen = vec![false; target];
    map.iter().all(|&x| x < target && !std::mem::replace(&mut seen[x], true))
}

fn invert_map(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (i, &x) in map.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// A net bundle: finite fibres and the net structure `J`.
#[derive(Clone, Debug)]
pub struct NetBundle {
    complex: Arc<Complex>,
    fibres: Vec<usize>,
    /// Dense `n × n`; entry `a·n + ã` is `J_(a,ã)` when `ã ≤ a`.
    j: Vec<Option<Vec<usize>>>,
}

impl NetBundle {
    /// Builds a bundle from fibre sizes and the maps `J_(a,ã)` for `ã < a`.
    /// Reflexive maps default to the identity unless given.
    pub fn new(
        complex: Arc<Complex>,
        fibres: Vec<usize>,
        maps: Vec<((Elem, Elem), Vec<usize>)>,
    ) -> Result<NetBundle> {
        let poset = complex.poset();
        let n = poset.len();
        if fibres.len() != n {
            return Err(Error::InvalidBundle("one fibre size per element expected".into()));
        }
        if fibres.contains(&0) {
            return Err(Error::EmptyFibre);
        }
        let mut j: Vec<Option<Vec<usize>>> = vec![None; n * n];
        for a in poset.elements() {
            j[a.index() * n + a.index()] = Some((0..fibres[a.index()]).collect());
        }
        let mut given = vec![false; n * n];
        for ((a, at), map) in maps {
            poset.check(a)?;
            poset.check(at)?;
            if !poset.leq(at, a) {
                return Err(Error::InvalidBundle(format!(
                    "J ({},{}) is not indexed by a nerve simplex",
                    poset.label(a),
                    poset.label(at)
                )));
            }
            let slot = a.index() * n + at.index();
            if std::mem::replace(&mut given[slot], true) {
                return Err(Error::InvalidBundle(format!(
                    "J ({},{}) given twice",
                    poset.label(a),
                    poset.label(at)
                )));
            }
            if map.len() != fibres[at.index()] {
                return Err(Error::InvalidBundle(format!(
                    "J ({},{}) has the wrong domain size",
                    poset.label(a),
                    poset.label(at)
                )));
            }
            j[slot] = Some(map);
        }
        for a in poset.elements() {
            for at in poset.elements() {
                if poset.lt(at, a) && j[a.index() * n + at.index()].is_none() {
                    return Err(Error::InvalidBundle(format!(
                        "J ({},{}) missing",
                        poset.label(a),
                        poset.label(at)
                    )));
                }
            }
        }
        Ok(NetBundle { complex, fibres, j })
    }

    /// `K × X` with identity transport.
    pub fn product(complex: Arc<Complex>, fibre_size: usize) -> Result<NetBundle> {
        if fibre_size == 0 {
            return Err(Error::EmptyFibre);
        }
        let poset = complex.poset();
        let mut maps = Vec::new();
        for a in poset.elements() {
            for at in poset.elements().filter(|&at| poset.lt(at, a)) {
                maps.push(((a, at), (0..fibre_size).collect()));
            }
        }
        let fibres = vec![fibre_size; poset.len()];
        NetBundle::new(complex, fibres, maps)
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn poset(&self) -> &Poset {
        self.complex.poset()
    }

    pub fn fibre_size(&self, a: Elem) -> usize {
        self.fibres[a.index()]
    }

    pub fn points(&self) -> impl Iterator<Item = FibrePoint> + '_ {
        self.poset()
            .elements()
            .flat_map(move |a| (0..self.fibres[a.index()]).map(move |index| FibrePoint { base: a, index }))
    }

    /// `J_(a,ã)` as an index map, for `ã ≤ a`.
    pub fn j(&self, a: Elem, a_tilde: Elem) -> Option<&[usize]> {
        self.j.get(a.index() * self.poset().len() + a_tilde.index())?.as_deref()
    }

    fn j_map(&self, a: Elem, a_tilde: Elem) -> &[usize] {
        self.j(a, a_tilde).expect("nerve simplex")
    }

    /// Every violated axiom: bijectivity, `J_σ₀a = id`, composition on
    /// nerve 2-simplices.
    pub fn validate(&self) -> Vec<Violation> {
        let p = self.poset();
        let mut out = Vec::new();
        for a in p.elements() {
            if self.j_map(a, a).iter().enumerate().any(|(i, &x)| i != x) {
                out.push(Violation::NotIdentity { a });
            }
            for at in p.elements().filter(|&at| p.leq(at, a)) {
                if !is_bijection(self.j_map(a, at), self.fibre_size(a))
                    || self.fibre_size(a) != self.fibre_size(at)
                {
                    out.push(Violation::NotBijective { a, a_tilde: at });
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for v0 in p.elements() {
            for v1 in p.elements().filter(|&v1| p.leq(v0, v1)) {
                for v2 in p.elements().filter(|&v2| p.leq(v1, v2)) {
                    let (outer, inner, direct) =
                        (self.j_map(v2, v1), self.j_map(v1, v0), self.j_map(v2, v0));
                    if (0..inner.len()).any(|i| outer[inner[i]] != direct[i]) {
                        out.push(Violation::NotComposing { chain: [v0, v1, v2] });
                    }
                }
            }
        }
        out
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidBundle(v.describe(&self.complex))),
        }
    }

    /// The order `ψ ≤ φ` iff `π(ψ) ≤ π(φ)` and `J` carries `ψ` to `φ`.
    /// Points are named `a#i`.
    pub fn total_order(&self) -> Result<Poset> {
        self.require_valid()?;
        let p = self.poset();
        let names: Vec<String> = self.points().map(|x| x.label(p)).collect();
        let mut covers = Vec::new();
        for a in p.elements() {
            for at in p.elements().filter(|&at| p.lt(at, a)) {
                for (i, &x) in self.j_map(a, at).iter().enumerate() {
                    covers.push((
                        FibrePoint { base: at, index: i }.label(p),
                        FibrePoint { base: a, index: x }.label(p),
                    ));
                }
            }
        }
        Poset::new(&format!("{}.total", p.name()), &names, &covers)
    }

    /// Restriction to a down-closed, connected subset.
    pub fn restrict(&self, open: &[Elem]) -> Result<NetBundle> {
        let (sub, keep) = self.restricted_base(open)?;
        let fibres = keep.iter().map(|&a| self.fibre_size(a)).collect();
        let mut maps = Vec::new();
        for (i, &a) in keep.iter().enumerate() {
            for (k, &at) in keep.iter().enumerate() {
                if self.poset().lt(at, a) {
                    maps.push(((Elem::new(i), Elem::new(k)), self.j_map(a, at).to_vec()));
                }
            }
        }
        NetBundle::new(Complex::new(sub).into_shared(), fibres, maps)
    }

    fn restricted_base(&self, open: &[Elem]) -> Result<(Poset, Vec<Elem>)> {
        let p = self.poset();
        for &a in open {
            p.check(a)?;
        }
        if !p.is_open(open) {
            return Err(Error::NotOpen);
        }
        let (sub, keep) = p.induced(open)?;
        sub.require_connected()?;
        Ok((sub, keep))
    }

    /// `Z(b) = J_(|b|,∂₀b)⁻¹ J_(|b|,∂₁b)`, the unique flat connection.
    pub fn flat_connection(&self) -> Result<BundleConnection> {
        self.require_valid()?;
        let c = &self.complex;
        let maps = c
            .edges()
            .iter()
            .map(|b| {
                let s = b.support();
                let up = self.j_map(s, b.face1());
                let down = invert_map(self.j_map(s, b.face0()));
                up.iter().map(|&x| down[x]).collect()
            })
            .collect();
        Ok(BundleConnection { maps })
    }

    /// Some fibre point over `a`.
    fn check_point(&self, x: FibrePoint) -> Result<FibrePoint> {
        self.poset().check(x.base)?;
        if x.index >= self.fibre_size(x.base) {
            return Err(Error::UnknownElement(x.label(self.poset())));
        }
        Ok(x)
    }

    /// `σ(o) = J_(o,a)(φ)` over the star of `a`.
    pub fn section_from_point(&self, point: FibrePoint) -> Result<Section> {
        let point = self.check_point(point)?;
        let a = point.base;
        let p = self.poset();
        let values = p
            .elements()
            .map(|o| p.leq(a, o).then(|| self.j_map(o, a)[point.index]))
            .collect();
        Ok(Section { values })
    }

    /// Some section over the whole base, found by anchoring every point over
    /// the least element and transporting along a spanning tree.
    pub fn global_section(&self) -> Result<Option<Section>> {
        self.require_valid()?;
        let p = self.poset();
        p.require_connected()?;
        let base = Elem::new(0);
        let tree = self.complex.tree_paths(base)?;
        let mut order: Vec<Elem> = p.elements().collect();
        order.sort_by_key(|x| tree[x.index()].len());
        for anchor in 0..self.fibre_size(base) {
            let mut values = vec![None; p.len()];
            values[base.index()] = Some(anchor);
            for &x in &order[1..] {
                let b = self.complex.edge(*tree[x.index()].last().expect("non-base vertex"));
                let from = values[b.face1().index()].expect("parent first");
                let (s, parent) = (b.support(), b.face1());
                let v = if s == x {
                    self.j_map(x, parent)[from]
                } else {
                    invert_map(self.j_map(parent, x))[from]
                };
                values[x.index()] = Some(v);
            }
            let section = Section { values };
            if section.violations(self).is_empty() {
                return Ok(Some(section));
            }
        }
        Ok(None)
    }

    /// Parallel transport `U(bₙ)∘⋯∘U(b₁)` as an index map.
    pub fn parallel_transport(&self, u: &BundleConnection, path: &Path) -> Result<Vec<usize>> {
        self.complex.path(path.edges().to_vec())?;
        let start = path.start(&self.complex);
        let mut map: Vec<usize> = (0..self.fibre_size(start)).collect();
        for &e in path.edges() {
            map = map.iter().map(|&x| u.maps[e][x]).collect();
        }
        Ok(map)
    }
}

/// A principal net bundle: a net bundle with a free, fibrewise transitive
/// right action commuting with `J`.
#[derive(Clone, Debug)]
pub struct PrincipalNetBundle {
    bundle: NetBundle,
    group: Arc<Group>,
    /// Per element: `action[a][i·|G| + g]` is the index of `(a#i)·g`.
    action: Vec<Vec<usize>>,
}

impl PrincipalNetBundle {
    pub fn new(bundle: NetBundle, group: Arc<Group>, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = bundle.poset().len();
        if action.len() != n {
            return Err(Error::InvalidBundle("one action table per element expected".into()));
        }
        for a in bundle.poset().elements() {
            let size = bundle.fibre_size(a);
            let table = &action[a.index()];
            if table.len() != size * group.order() || table.iter().any(|&x| x >= size) {
                return Err(Error::InvalidBundle(format!(
                    "action table over {} is malformed",
                    bundle.poset().label(a)
                )));
            }
        }
        Ok(PrincipalNetBundle { bundle, group, action })
    }

    /// Identifies the points over each element with group elements by index
    /// and acts by right translation: `(a#i)·h = a#(ih)`.
    pub fn with_index_action(bundle: NetBundle, group: Arc<Group>) -> Result<Self> {
        let p = bundle.poset();
        if let Some(a) = p.elements().find(|&a| bundle.fibre_size(a) != group.order()) {
            return Err(Error::InvalidBundle(format!(
                "fibre over {} does not match the group order",
                p.label(a)
            )));
        }
        let action = p
            .elements()
            .map(|_| {
                group
                    .elements()
                    .flat_map(|i| group.elements().map(move |h| (i, h)))
                    .map(|(i, h)| group.mul(i, h).index())
                    .collect()
            })
            .collect();
        PrincipalNetBundle::new(bundle, group, action)
    }

    /// `K × G` with `(o, g)·h = (o, gh)`.
    pub fn product(complex: Arc<Complex>, group: Arc<Group>) -> Result<Self> {
        let bundle = NetBundle::product(complex, group.order())?;
        PrincipalNetBundle::with_index_action(bundle, group)
    }

    pub fn bundle(&self) -> &NetBundle {
        &self.bundle
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn complex(&self) -> &Arc<Complex> {
        self.bundle.complex()
    }

    /// `ψ·g`.
    #[inline]
    pub fn act(&self, a: Elem, index: usize, g: GroupElement) -> usize {
        self.action[a.index()][index * self.group.order() + g.index()]
    }

    /// The unique `g` with `from·g = to` in one fibre, when the action is free.
    pub fn difference(&self, a: Elem, from: usize, to: usize) -> Option<GroupElement> {
        self.group.elements().find(|&g| self.act(a, from, g) == to)
    }

    /// Net-bundle axioms plus the principal ones.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.bundle.validate();
        let g = &self.group;
        let p = self.bundle.poset();
        for a in p.elements() {
            let size = self.bundle.fibre_size(a);
            if size != g.order() {
                out.push(Violation::FibreSize { a, expected: g.order(), found: size });
                continue;
            }
            for i in 0..size {
                let point = FibrePoint { base: a, index: i };
                if self.act(a, i, g.identity()) != i {
                    out.push(Violation::NotAnAction { point });
                    continue;
                }
                if g.elements().any(|x| {
                    g.elements().any(|y| self.act(a, self.act(a, i, x), y) != self.act(a, i, g.mul(x, y)))
                }) {
                    out.push(Violation::NotAnAction { point });
                }
                if let Some(x) = g.elements().skip(1).find(|&x| self.act(a, i, x) == i) {
                    out.push(Violation::NotFree { point, g: x });
                }
            }
            let mut reached = vec![false; size];
            for x in g.elements() {
                reached[self.act(a, 0, x)] = true;
            }
            if reached.iter().any(|r| !r) {
                out.push(Violation::NotTransitive { a });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for a in p.elements() {
            for at in p.elements().filter(|&at| p.lt(at, a)) {
                let jm = self.bundle.j_map(a, at);
                'points: for i in 0..self.bundle.fibre_size(at) {
                    for x in g.elements() {
                        if jm[self.act(at, i, x)] != self.act(a, jm[i], x) {
                            let point = FibrePoint { base: at, index: i };
                            out.push(Violation::NotEquivariant { a, a_tilde: at, point, g: x });
                            break 'points;
                        }
                    }
                }
            }
        }
        out
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidBundle(v.describe(self.complex()))),
        }
    }

    pub fn restrict(&self, open: &[Elem]) -> Result<PrincipalNetBundle> {
        let (_, keep) = self.bundle.restricted_base(open)?;
        let bundle = self.bundle.restrict(open)?;
        let action = keep.iter().map(|&a| self.action[a.index()].clone()).collect();
        PrincipalNetBundle::new(bundle, self.group.clone(), action)
    }

    /// `θ_a(o, g) = J_(o,a)(φ_a)·g` with one anchor point per element.
    pub fn local_trivialization(self: &Arc<Self>, anchors: &[usize]) -> Result<Trivialization> {
        self.require_valid()?;
        let p = self.bundle.poset();
        if anchors.len() != p.len() {
            return Err(Error::BadAnchor("one anchor per element expected".into()));
        }
        for a in p.elements() {
            if anchors[a.index()] >= self.bundle.fibre_size(a) {
                return Err(Error::BadAnchor(format!("anchor over {} out of range", p.label(a))));
            }
        }
        Ok(Trivialization { bundle: self.clone(), anchors: anchors.to_vec() })
    }

    /// Holonomy at `point`: the `g` with `point·g` reachable from `point`
    /// by transport along 1-simplices.
    pub fn holonomy(&self, u: &BundleConnection, point: FibrePoint) -> Result<Subgroup> {
        let point = self.bundle.check_point(point)?;
        let c = self.complex();
        c.poset().require_connected()?;
        let sizes: Vec<usize> = c.poset().elements().map(|a| self.bundle.fibre_size(a)).collect();
        let offsets: Vec<usize> = sizes
            .iter()
            .scan(0, |acc, &s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect();
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); sizes.len()];
        for (e, b) in c.edges().iter().enumerate() {
            out_edges[b.face1().index()].push(e);
        }
        let total: usize = sizes.iter().sum();
        let mut seen = vec![false; total];
        seen[offsets[point.base.index()] + point.index] = true;
        let mut queue = VecDeque::from([point]);
        while let Some(x) = queue.pop_front() {
            for &e in &out_edges[x.base.index()] {
                let to = FibrePoint { base: c.edge(e).face0(), index: u.maps[e][x.index] };
                let slot = offsets[to.base.index()] + to.index;
                if !seen[slot] {
                    seen[slot] = true;
                    queue.push_back(to);
                }
            }
        }
        let a = point.base;
        let gens: Vec<GroupElement> = (0..sizes[a.index()])
            .filter(|&i| seen[offsets[a.index()] + i])
            .filter_map(|i| self.difference(a, point.index, i))
            .collect();
        self.group.subgroup_generated(&gens)
    }
}

/// A connection: one fibre bijection per 1-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleConnection {
    maps: Vec<Vec<usize>>,
}

impl BundleConnection {
    pub fn new(maps: Vec<Vec<usize>>) -> Self {
        BundleConnection { maps }
    }

    /// `U(b)` for edge index `e`.
    pub fn map(&self, e: usize) -> &[usize] {
        &self.maps[e]
    }

    /// Bijectivity, `U(b̄) = U(b)⁻¹`, `U = J` on the nerve, and equivariance
    /// when a group acts.
    pub fn validate(&self, bundle: &NetBundle, principal: Option<&PrincipalNetBundle>) -> Vec<Violation> {
        let c = bundle.complex();
        let mut out = Vec::new();
        if self.maps.len() != c.edge_count() {
            return vec![Violation::ConnectionNotBijective { edge: self.maps.len().min(c.edge_count()) }];
        }
        for (e, b) in c.edges().iter().enumerate() {
            let m = &self.maps[e];
            if m.len() != bundle.fibre_size(b.face1())
                || !is_bijection(m, bundle.fibre_size(b.face0()))
            {
                out.push(Violation::ConnectionNotBijective { edge: e });
                continue;
            }
            let r = &self.maps[c.reverse_index(e)];
            if r.len() != m.len() || (0..m.len()).any(|i| r.get(m[i]) != Some(&i)) {
                out.push(Violation::ConnectionNotReversible { edge: e });
            }
            if c.is_nerve_edge(e) && bundle.j_map(b.face0(), b.face1()) != m.as_slice() {
                out.push(Violation::ConnectionDiffersFromJ { edge: e });
            }
            if let Some(pb) = principal {
                let g = pb.group();
                let broken = (0..m.len()).any(|i| {
                    g.elements().any(|x| m[pb.act(b.face1(), i, x)] != pb.act(b.face0(), m[i], x))
                });
                if broken {
                    out.push(Violation::ConnectionNotEquivariant { edge: e });
                }
            }
        }
        out
    }

    /// Triangles with `U(∂₀c)∘U(∂₂c) ≠ U(∂₁c)`.
    pub fn curvature_support(&self, complex: &Complex) -> Vec<usize> {
        (0..complex.triangles().len())
            .filter(|&t| {
                let [f0, f1, f2] = complex.triangle_faces(t);
                (0..self.maps[f2].len()).any(|i| self.maps[f0][self.maps[f2][i]] != self.maps[f1][i])
            })
            .collect()
    }

    pub fn is_flat(&self, complex: &Complex) -> bool {
        self.curvature_support(complex).is_empty()
    }
}

/// Charts `θ_a` over the stars of a principal bundle.
#[derive(Clone, Debug)]
pub struct Trivialization {
    bundle: Arc<PrincipalNetBundle>,
    anchors: Vec<usize>,
}

impl Trivialization {
    pub(crate) fn from_parts(bundle: Arc<PrincipalNetBundle>, anchors: Vec<usize>) -> Self {
        Trivialization { bundle, anchors }
    }

    pub fn bundle(&self) -> &Arc<PrincipalNetBundle> {
        &self.bundle
    }

    pub fn anchors(&self) -> &[usize] {
        &self.anchors
    }

    /// `θ_a(o, g)`, defined for `a ≤ o`.
    pub fn chart(&self, a: Elem, o: Elem, g: GroupElement) -> usize {
        let nb = self.bundle.bundle();
        let start = nb.j_map(o, a)[self.anchors[a.index()]];
        self.bundle.act(o, start, g)
    }

    /// The group coordinate of a point over `o` in the chart at `a ≤ o`.
    pub fn chart_inverse(&self, a: Elem, o: Elem, index: usize) -> GroupElement {
        let start = self.bundle.bundle().j_map(o, a)[self.anchors[a.index()]];
        self.bundle.difference(o, start, index).expect("free transitive action")
    }

    /// Charts map the first factor to the base, are bijective, equivariant
    /// and intertwine the product transport with `J`.
    pub fn check(&self) -> bool {
        let nb = self.bundle.bundle();
        let p = nb.poset();
        let g = self.bundle.group();
        p.elements().all(|a| {
            p.elements().filter(|&o| p.leq(a, o)).all(|o| {
                let image: Vec<usize> = g.elements().map(|x| self.chart(a, o, x)).collect();
                let equivariant = g.elements().all(|x| {
                    g.elements().all(|h| self.bundle.act(o, self.chart(a, o, x), h) == self.chart(a, o, g.mul(x, h)))
                });
                let transport = p.elements().filter(|&o2| p.leq(o, o2)).all(|o2| {
                    g.elements().all(|x| nb.j_map(o2, o)[self.chart(a, o, x)] == self.chart(a, o2, x))
                });
                is_bijection(&image, nb.fibre_size(o)) && equivariant && transport
            })
        })
    }

    /// `z_(ã a)(o)` with `θ_ã⁻¹ θ_a (o, g) = (o, z_(ã a)(o) g)` on the
    /// common star, as a Čech cocycle over the base.
    pub fn transition_functions(&self) -> CechCocycle {
        let nb = self.bundle.bundle();
        let e = self.bundle.group().identity();
        CechCocycle::from_fn(nb.complex().clone(), self.bundle.group().clone(), |at, a, o| {
            self.chart_inverse(at, o, self.chart(a, o, e))
        })
    }

    /// `s_a(o) = θ_a⁻¹(σ(o))` on the part of the section's domain above `a`.
    pub fn local_representative(&self, section: &Section, a: Elem) -> Vec<(Elem, GroupElement)> {
        let p = self.bundle.bundle().poset();
        p.elements()
            .filter(|&o| p.leq(a, o))
            .filter_map(|o| section.value(o).map(|i| (o, self.chart_inverse(a, o, i))))
            .collect()
    }
}

/// A section over part of the base: at most one point per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    values: Vec<Option<usize>>,
}

impl Section {
    pub fn new(values: Vec<Option<usize>>) -> Self {
        Section { values }
    }

    pub fn value(&self, a: Elem) -> Option<usize> {
        self.values.get(a.index()).copied().flatten()
    }

    pub fn domain(&self) -> Vec<Elem> {
        (0..self.values.len()).filter(|&i| self.values[i].is_some()).map(Elem::new).collect()
    }

    /// Nerve simplices inside the domain on which `J_b σ(∂₁b) ≠ σ(∂₀b)`.
    pub fn violations(&self, bundle: &NetBundle) -> Vec<Violation> {
        let p = bundle.poset();
        let mut out = Vec::new();
        for a in p.elements() {
            for at in p.elements().filter(|&at| p.lt(at, a)) {
                if let (Some(hi), Some(lo)) = (self.value(a), self.value(at)) {
                    if bundle.j_map(a, at)[lo] != hi {
                        out.push(Violation::SectionBreaksJ { a, a_tilde: at });
                    }
                }
            }
        }
        out
    }
}

/// A fibre-preserving map between bundles over the same base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleMorphism {
    maps: Vec<Vec<usize>>,
}

impl BundleMorphism {
    pub fn new(maps: Vec<Vec<usize>>) -> Self {
        BundleMorphism { maps }
    }

    pub fn identity(bundle: &NetBundle) -> Self {
        BundleMorphism {
            maps: bundle.poset().elements().map(|a| (0..bundle.fibre_size(a)).collect()).collect(),
        }
    }

    /// The image over `a` of point `i`.
    pub fn apply(&self, a: Elem, i: usize) -> usize {
        self.maps[a.index()][i]
    }

    /// `f ∘ g`.
    pub fn compose(&self, first: &BundleMorphism) -> BundleMorphism {
        let maps = first
            .maps
            .iter()
            .zip(&self.maps)
            .map(|(g, f)| g.iter().map(|&x| f[x]).collect())
            .collect();
        BundleMorphism { maps }
    }

    /// Commutation with `J`; for principal bundles also equivariance and
    /// bijectivity.
    pub fn validate(&self, source: &NetBundle, target: &NetBundle) -> Vec<Violation> {
        self.validate_inner(source, target, None)
    }

    pub fn validate_principal(
        &self,
        source: &PrincipalNetBundle,
        target: &PrincipalNetBundle,
    ) -> Vec<Violation> {
        self.validate_inner(source.bundle(), target.bundle(), Some((source, target)))
    }

    fn validate_inner(
        &self,
        source: &NetBundle,
        target: &NetBundle,
        principal: Option<(&PrincipalNetBundle, &PrincipalNetBundle)>,
    ) -> Vec<Violation> {
        let p = source.poset();
        let mut out = Vec::new();
        for a in p.elements() {
            let m = &self.maps[a.index()];
            let size = target.fibre_size(a);
            let well_formed = m.len() == source.fibre_size(a) && m.iter().all(|&x| x < size);
            if !well_formed || (principal.is_some() && !is_bijection(m, size)) {
                out.push(Violation::MorphismNotBijective { a });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for a in p.elements() {
            for at in p.elements().filter(|&at| p.lt(at, a)) {
                let (js, jt) = (source.j_map(a, at), target.j_map(a, at));
                if (0..js.len()).any(|i| self.apply(a, js[i]) != jt[self.apply(at, i)]) {
                    out.push(Violation::MorphismBreaksJ { a, a_tilde: at });
                }
            }
        }
        if let Some((ps, pt)) = principal {
            let g = ps.group();
            for point in source.points() {
                let a = point.base;
                if let Some(x) = g.elements().find(|&x| {
                    self.apply(a, ps.act(a, point.index, x)) != pt.act(a, self.apply(a, point.index), x)
                }) {
                    out.push(Violation::MorphismNotEquivariant { point, g: x });
                }
            }
        }
        out
    }

    /// True iff `f ∘ U_source(b) = U_target(b) ∘ f` for every 1-simplex.
    pub fn intertwines(&self, complex: &Complex, source: &BundleConnection, target: &BundleConnection) -> bool {
        complex.edges().iter().enumerate().all(|(e, b)| {
            (0..source.maps[e].len()).all(|i| {
                self.apply(b.face0(), source.maps[e][i]) == target.maps[e][self.apply(b.face1(), i)]
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groups::GroupSpec;

    fn z(n: u32) -> Arc<Group> {
        Group::new(&GroupSpec::Cyclic(n)).unwrap().into_shared()
    }

    fn circle() -> Arc<Complex> {
        Complex::new(fixtures::circ4()).into_shared()
    }

    #[test]
    fn product_bundles_are_valid() {
        let c = Complex::new(fixtures::chain3()).into_shared();
        let b = NetBundle::product(c.clone(), 2).unwrap();
        assert!(b.validate().is_empty());
        let p = c.poset();
        let (x, z_) = (p.elem("x").unwrap(), p.elem("z").unwrap());
        assert_eq!(b.j(z_, x).unwrap(), &[0, 1]);
        let pb = PrincipalNetBundle::product(circle(), z(2)).unwrap();
        assert!(pb.validate().is_empty());
        assert_eq!(pb.act(Elem::new(0), 1, GroupElement::from_index(1)), 0);
        assert_eq!(NetBundle::product(c, 0).unwrap_err(), Error::EmptyFibre);
    }

    #[test]
    fn broken_composition_is_named() {
        let c = Complex::new(fixtures::chain3()).into_shared();
        let p = c.poset().clone();
        let (x, y, zz) = (p.elem("x").unwrap(), p.elem("y").unwrap(), p.elem("z").unwrap());
        let b = NetBundle::new(
            c.clone(),
            vec![2, 2, 2],
            vec![((y, x), vec![0, 1]), ((zz, y), vec![0, 1]), ((zz, x), vec![1, 0])],
        )
        .unwrap();
        assert_eq!(b.validate(), vec![Violation::NotComposing { chain: [x, y, zz] }]);
        assert!(b.validate()[0].describe(&c).contains("J (z,y) J (y,x)"));
    }

    #[test]
    fn non_free_action_is_named() {
        let c = Complex::new(Poset::new("pt", &["o"], &[]).unwrap()).into_shared();
        let g = z(2);
        let nb = NetBundle::product(c, 2).unwrap();
        let pb = PrincipalNetBundle::new(nb, g, vec![vec![0, 0, 1, 1]]).unwrap();
        let v = pb.validate();
        assert!(v.iter().any(|x| matches!(x, Violation::NotFree { .. })));
    }

    #[test]
    fn total_order_of_product() {
        let c = Complex::new(fixtures::chain3()).into_shared();
        let b = NetBundle::product(c, 2).unwrap();
        let t = b.total_order().unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t.connected_components().len(), 2);
        let (x0, x1) = (t.elem("x#0").unwrap(), t.elem("x#1").unwrap());
        assert!(!t.comparable(x0, x1));
        assert!(t.leq(x0, t.elem("z#0").unwrap()));
    }

    #[test]
    fn restrictions() {
        let c = circle();
        let b = NetBundle::product(c.clone(), 3).unwrap();
        let p = c.poset();
        let (a, pp, q) = (p.elem("A").unwrap(), p.elem("p").unwrap(), p.elem("q").unwrap());
        let r = b.restrict(&[a, pp, q]).unwrap();
        assert_eq!(r.poset().len(), 3);
        assert!(r.validate().is_empty());
        assert_eq!(b.restrict(&[pp]).unwrap().poset().len(), 1);
        assert_eq!(b.restrict(&[a]).unwrap_err(), Error::NotOpen);
        assert_eq!(b.restrict(&[pp, q]).unwrap_err(), Error::NotConnected);
    }

    #[test]
    fn flat_connection_of_product_is_identity() {
        let c = circle();
        let pb = PrincipalNetBundle::product(c.clone(), z(3)).unwrap();
        let zc = pb.bundle().flat_connection().unwrap();
        assert!(zc.validate(pb.bundle(), Some(&pb)).is_empty());
        assert!(zc.is_flat(&c));
        for e in 0..c.edge_count() {
            assert_eq!(zc.map(e), &[0, 1, 2]);
        }
        let h = pb.holonomy(&zc, FibrePoint { base: Elem::new(0), index: 0 }).unwrap();
        assert!(h.is_trivial());
    }

    #[test]
    fn product_sections_and_charts() {
        let c = circle();
        let pb = Arc::new(PrincipalNetBundle::product(c.clone(), z(2)).unwrap());
        let s = pb.bundle().global_section().unwrap().unwrap();
        assert!(c.poset().elements().all(|a| s.value(a) == Some(0)));
        let theta = pb.local_trivialization(&[0; 4]).unwrap();
        assert!(theta.check());
        let xi = theta.transition_functions();
        assert!(xi.is_trivial());
        for a in c.poset().elements() {
            let rep = theta.local_representative(&s, a);
            assert!(rep.iter().all(|&(_, g)| g == GroupElement::IDENTITY));
        }
        assert!(matches!(pb.local_trivialization(&[0, 0, 5, 0]), Err(Error::BadAnchor(_))));
    }

    #[test]
    fn morphism_checks() {
        let c = Complex::new(fixtures::chain3()).into_shared();
        let pb = PrincipalNetBundle::product(c.clone(), z(2)).unwrap();
        let id = BundleMorphism::identity(pb.bundle());
        assert!(id.validate_principal(&pb, &pb).is_empty());
        assert_eq!(id.compose(&id), id);
        let scramble = BundleMorphism::new(vec![vec![1, 0], vec![0, 1], vec![0, 1]]);
        assert!(scramble
            .validate(pb.bundle(), pb.bundle())
            .iter()
            .any(|v| matches!(v, Violation::MorphismBreaksJ { .. })));
    }
}
