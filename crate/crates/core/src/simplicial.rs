//! The symmetric simplicial set of a poset in degrees 0 to 3, its nerve,
//! paths, elementary homotopies and a presentation of the fundamental group.
//!
//! An n-simplex is a monotone map from the nonempty subsets of `{0..n}` into
//! the poset, stored as one value per subset bitmask. For a 1-simplex `b` the
//! value at `{1}` is `∂₀b`, at `{0}` is `∂₁b` and at `{0,1}` the support `|b|`;
//! it is written `(|b|; ∂₀b, ∂₁b)` and read as an arrow from `∂₁b` to `∂₀b`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groups::{Letter, Word};
use crate::poset::{Elem, Poset};

pub const MAX_DEGREE: usize = 3;

/// A simplex of the symmetric simplicial set, degree 0 to 3.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    values: Vec<Elem>,
}

fn mask_count(degree: usize) -> usize {
    (1 << (degree + 1)) - 1
}

/// The image of `mask` under the injection `{0..n-1} → {0..n}` that skips `i`.
fn coface_mask(mask: usize, i: usize) -> usize {
    let low = mask & ((1 << i) - 1);
    let high = (mask >> i) << (i + 1);
    low | high
}

impl Simplex {
    /// Builds a simplex from its per-mask values (index `mask - 1`),
    /// checking monotonicity.
    pub fn from_values(poset: &Poset, values: Vec<Elem>) -> Result<Simplex> {
        let degree = match values.len() {
            1 => 0,
            3 => 1,
            7 => 2,
            15 => 3,
            _ => return Err(Error::DegreeOutOfRange(values.len())),
        };
        for &v in &values {
            poset.check(v)?;
        }
        let s = Simplex { values };
        for mask in 1..=mask_count(degree) {
            for bit in 0..=degree {
                let sup = mask | (1 << bit);
                if sup != mask && !poset.leq(s.value(mask), s.value(sup)) {
                    return Err(Error::Mismatch("simplex values are not monotone".into()));
                }
            }
        }
        Ok(s)
    }

    /// The 1-simplex `(support; face0, face1)`.
    pub fn edge(poset: &Poset, support: Elem, face0: Elem, face1: Elem) -> Result<Simplex> {
        Simplex::from_values(poset, vec![face1, face0, support])
    }

    /// A 0-simplex.
    pub fn vertex(a: Elem) -> Simplex {
        Simplex { values: vec![a] }
    }

    /// `σ₀a = (a; a, a)`.
    pub fn degenerate(a: Elem) -> Simplex {
        Simplex { values: vec![a, a, a] }
    }

    pub fn degree(&self) -> usize {
        match self.values.len() {
            1 => 0,
            3 => 1,
            7 => 2,
            _ => 3,
        }
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    /// The value at a nonempty subset given as a bitmask.
    pub fn value(&self, mask: usize) -> Elem {
        self.values[mask - 1]
    }

    /// `|x|`: the value at the full subset.
    pub fn support(&self) -> Elem {
        *self.values.last().expect("simplices are nonempty")
    }

    pub fn face(&self, i: usize) -> Result<Simplex> {
        let n = self.degree();
        if n == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, degree: n });
        }
        let values = (1..=mask_count(n - 1)).map(|m| self.value(coface_mask(m, i))).collect();
        Ok(Simplex { values })
    }

    /// `∂₀b` of a 1-simplex.
    pub fn face0(&self) -> Elem {
        self.values[1]
    }

    /// `∂₁b` of a 1-simplex.
    pub fn face1(&self) -> Elem {
        self.values[0]
    }

    /// `b̄ = τ₀b`: exchanges the two vertices of a 1-simplex.
    pub fn reverse(&self) -> Result<Simplex> {
        if self.degree() != 1 {
            return Err(Error::DegreeOutOfRange(self.degree()));
        }
        Ok(Simplex { values: vec![self.values[1], self.values[0], self.values[2]] })
    }

    /// Renders with element ids: `(o; a, b)` in degree 1, `[v1 v2 ...]` otherwise.
    pub fn display<'a>(&'a self, poset: &'a Poset) -> impl fmt::Display + 'a {
        SimplexDisplay { simplex: self, poset }
    }
}

struct SimplexDisplay<'a> {
    simplex: &'a Simplex,
    poset: &'a Poset,
}

impl fmt::Display for SimplexDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poset;
        let s = self.simplex;
        match s.degree() {
            0 => write!(f, "{}", p.label(s.support())),
            1 => write!(
                f,
                "({}; {}, {})",
                p.label(s.support()),
                p.label(s.face0()),
                p.label(s.face1())
            ),
            _ => {
                write!(f, "[")?;
                for (i, v) in s.values.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", p.label(*v))?;
                }
                write!(f, "]")
            }
        }
    }
}

/// All monotone maps from the subsets of `{0..n}` into the poset, sorted by
/// their values read from the full subset downwards.
fn monotone_maps(poset: &Poset, n: usize) -> Vec<Simplex> {
    let count = mask_count(n);
    let mut out = Vec::new();
    let mut values = vec![Elem::new(0); count];
    fn assign(
        poset: &Poset,
        n: usize,
        mask: usize,
        values: &mut Vec<Elem>,
        out: &mut Vec<Simplex>,
    ) {
        if mask == 0 {
            out.push(Simplex { values: values.clone() });
            return;
        }
        for e in poset.elements() {
            let fits = (0..=n).all(|bit| {
                let sup = mask | (1 << bit);
                sup == mask || poset.leq(e, values[sup - 1])
            });
            if fits {
                values[mask - 1] = e;
                assign(poset, n, mask - 1, values, out);
            }
        }
    }
    assign(poset, n, count, &mut values, &mut out);
    out
}

/// A chain `v₀ ≤ v₁ ≤ … ≤ vₙ` of the nerve.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NerveSimplex {
    chain: Vec<Elem>,
}

impl NerveSimplex {
    pub fn new(poset: &Poset, chain: Vec<Elem>) -> Result<Self> {
        if chain.is_empty() || chain.len() > MAX_DEGREE + 1 {
            return Err(Error::DegreeOutOfRange(chain.len().saturating_sub(1)));
        }
        for w in chain.windows(2) {
            if !poset.leq(poset.check(w[0])?, poset.check(w[1])?) {
                return Err(Error::Mismatch("nerve chain is not increasing".into()));
            }
        }
        Ok(NerveSimplex { chain })
    }

    /// The nerve 1-simplex `(a, ã)` with `ã ≤ a`.
    pub fn pair(poset: &Poset, a: Elem, a_tilde: Elem) -> Result<Self> {
        NerveSimplex::new(poset, vec![a_tilde, a])
    }

    pub fn degree(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn chain(&self) -> &[Elem] {
        &self.chain
    }

    /// The symmetric simplex sending a subset `S` to `v_{max S}`.
    pub fn include(&self) -> Simplex {
        let n = self.degree();
        let values = (1..=mask_count(n))
            .map(|m: usize| self.chain[(usize::BITS - 1 - m.leading_zeros()) as usize])
            .collect();
        Simplex { values }
    }
}

/// A path `bₙ * ⋯ * b₁`, stored in application order (`edges[0] = b₁`) as
/// indices into [`Complex::edges`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    edges: Vec<usize>,
}

impl Path {
    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    /// Never true: paths have at least one edge.
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `∂₁p`.
    pub fn start(&self, complex: &Complex) -> Elem {
        complex.edge(self.edges[0]).face1()
    }

    /// `∂₀p`.
    pub fn end(&self, complex: &Complex) -> Elem {
        complex.edge(*self.edges.last().expect("paths are nonempty")).face0()
    }

    pub fn display<'a>(&'a self, complex: &'a Complex) -> impl fmt::Display + 'a {
        PathDisplay { path: self, complex }
    }
}

struct PathDisplay<'a> {
    path: &'a Path,
    complex: &'a Complex,
}

impl fmt::Display for PathDisplay<'_> {
    /// Written as `bₙ * ⋯ * b₁`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &e) in self.path.edges.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{}", self.complex.edge(e).display(self.complex.poset()))?;
        }
        Ok(())
    }
}

/// Direction of an elementary homotopy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// `∂₁c ↦ ∂₀c * ∂₂c`.
    Expand,
    /// `∂₀c * ∂₂c ↦ ∂₁c`.
    Contract,
}

/// A 3-simplex with the indices of its faces.
#[derive(Clone, Debug)]
pub struct Tetrahedron {
    pub simplex: Simplex,
    /// Triangle indices of `∂₀d, ∂₁d, ∂₂d, ∂₃d`.
    pub faces: [usize; 4],
    /// Edge index of `∂₀∂₁d`.
    pub edge01: usize,
}

/// The simplices of a poset up to degree 3 with cached face incidences.
#[derive(Debug)]
pub struct Complex {
    poset: Poset,
    edges: Vec<Simplex>,
    edge_index: HashMap<(Elem, Elem, Elem), usize>,
    reverse: Vec<usize>,
    nerve_edge: Vec<bool>,
    triangles: Vec<Simplex>,
    triangle_faces: Vec<[usize; 3]>,
    by_face1: Vec<Vec<usize>>,
    by_faces20: HashMap<(usize, usize), Vec<usize>>,
    tetrahedra: OnceLock<Vec<Tetrahedron>>,
}

impl Complex {
    pub fn new(poset: Poset) -> Complex {
        let edges = monotone_maps(&poset, 1);
        let edge_index: HashMap<_, _> = edges
            .iter()
            .enumerate()
            .map(|(i, b)| ((b.support(), b.face0(), b.face1()), i))
            .collect();
        let reverse = edges
            .iter()
            .map(|b| edge_index[&(b.support(), b.face1(), b.face0())])
            .collect();
        let nerve_edge = edges.iter().map(|b| b.support() == b.face0()).collect();
        let triangles = monotone_maps(&poset, 2);
        let lookup = |s: &Simplex| edge_index[&(s.support(), s.face0(), s.face1())];
        let triangle_faces: Vec<[usize; 3]> = triangles
            .iter()
            .map(|c| {
                let f = |i| lookup(&c.face(i).expect("degree 2"));
                [f(0), f(1), f(2)]
            })
            .collect();
        let mut by_face1 = vec![Vec::new(); edges.len()];
        let mut by_faces20: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (t, f) in triangle_faces.iter().enumerate() {
            by_face1[f[1]].push(t);
            by_faces20.entry((f[2], f[0])).or_default().push(t);
        }
        Complex {
            poset,
            edges,
            edge_index,
            reverse,
            nerve_edge,
            triangles,
            triangle_faces,
            by_face1,
            by_faces20,
            tetrahedra: OnceLock::new(),
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// The complex of the opposite poset.
    pub fn dual(&self) -> Complex {
        Complex::new(self.poset.dual())
    }

    /// `Σ̃ₙ(K)` in canonical order. Degree 3 is computed on first use.
    pub fn simplices(&self, n: usize) -> Result<Vec<Simplex>> {
        match n {
            0 => Ok(self.poset.elements().map(Simplex::vertex).collect()),
            1 => Ok(self.edges.clone()),
            2 => Ok(self.triangles.clone()),
            3 => Ok(self.tetrahedra().iter().map(|t| t.simplex.clone()).collect()),
            _ => Err(Error::DegreeOutOfRange(n)),
        }
    }

    pub fn edges(&self) -> &[Simplex] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Simplex {
        &self.edges[i]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Index of `(support; face0, face1)` in [`Complex::edges`].
    pub fn edge_index(&self, support: Elem, face0: Elem, face1: Elem) -> Option<usize> {
        self.edge_index.get(&(support, face0, face1)).copied()
    }

    pub fn index_of(&self, b: &Simplex) -> Result<usize> {
        if b.degree() != 1 {
            return Err(Error::DegreeOutOfRange(b.degree()));
        }
        self.edge_index(b.support(), b.face0(), b.face1()).ok_or_else(|| {
            Error::UnknownEdge(b.display(&self.poset).to_string())
        })
    }

    /// Index of the nerve simplex `(a, ã)`, embedded as `(a; a, ã)`.
    pub fn nerve_index(&self, a: Elem, a_tilde: Elem) -> Option<usize> {
        self.edge_index(a, a, a_tilde)
    }

    pub fn degenerate_index(&self, a: Elem) -> usize {
        self.edge_index[&(a, a, a)]
    }

    pub fn reverse_index(&self, i: usize) -> usize {
        self.reverse[i]
    }

    /// True iff edge `i` lies in the image of the nerve (`|b| = ∂₀b`).
    pub fn is_nerve_edge(&self, i: usize) -> bool {
        self.nerve_edge[i]
    }

    pub fn triangles(&self) -> &[Simplex] {
        &self.triangles
    }

    /// Edge indices of `∂₀c, ∂₁c, ∂₂c`.
    pub fn triangle_faces(&self, t: usize) -> [usize; 3] {
        self.triangle_faces[t]
    }

    /// True iff triangle `t` is the image of a nerve 2-simplex.
    pub fn is_nerve_triangle(&self, t: usize) -> bool {
        let c = &self.triangles[t];
        // S ↦ v_{max S}: values at {2},{0,2},{1,2} agree with the support,
        // and the value at {0,1} agrees with the value at {1}.
        let top = c.support();
        c.value(0b100) == top && c.value(0b101) == top && c.value(0b110) == top
            && c.value(0b011) == c.value(0b010)
    }

    /// Triangles whose `∂₁` is edge `e`.
    pub fn triangles_with_face1(&self, e: usize) -> &[usize] {
        &self.by_face1[e]
    }

    /// Triangles with `∂₂c = first` and `∂₀c = second`.
    pub fn triangles_with_faces(&self, first: usize, second: usize) -> &[usize] {
        self.by_faces20.get(&(first, second)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `Σ̃₃(K)` with face indices, built on first use.
    pub fn tetrahedra(&self) -> &[Tetrahedron] {
        self.tetrahedra.get_or_init(|| {
            let tri_index: HashMap<&Simplex, usize> =
                self.triangles.iter().enumerate().map(|(i, c)| (c, i)).collect();
            monotone_maps(&self.poset, 3)
                .into_iter()
                .map(|d| {
                    let face = |i| tri_index[&d.face(i).expect("degree 3")];
                    let e = d.face(1).and_then(|c| c.face(0)).expect("degree 3");
                    let edge01 = self.edge_index[&(e.support(), e.face0(), e.face1())];
                    let faces = [face(0), face(1), face(2), face(3)];
                    Tetrahedron { simplex: d, faces, edge01 }
                })
                .collect()
        })
    }

    /// The nerve simplices of degree `n`, in canonical order of their chains
    /// read from the top.
    pub fn nerve_simplices(&self, n: usize) -> Result<Vec<NerveSimplex>> {
        if n > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(n));
        }
        let mut chains: Vec<Vec<Elem>> = self.poset.elements().map(|a| vec![a]).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for chain in &chains {
                let top = *chain.last().expect("nonempty");
                for b in self.poset.elements().filter(|&b| self.poset.leq(top, b)) {
                    let mut c = chain.clone();
                    c.push(b);
                    next.push(c);
                }
            }
            chains = next;
        }
        let mut out: Vec<NerveSimplex> =
            chains.into_iter().map(|chain| NerveSimplex { chain }).collect();
        out.sort_by(|x, y| x.chain.iter().rev().cmp(y.chain.iter().rev()));
        Ok(out)
    }

    /// Builds a path from edges given in application order.
    pub fn path(&self, edges: Vec<usize>) -> Result<Path> {
        if edges.is_empty() {
            return Err(Error::EndpointMismatch);
        }
        for &e in &edges {
            if e >= self.edges.len() {
                return Err(Error::UnknownEdge(format!("#{e}")));
            }
        }
        for w in edges.windows(2) {
            if self.edges[w[0]].face0() != self.edges[w[1]].face1() {
                return Err(Error::EndpointMismatch);
            }
        }
        Ok(Path { edges })
    }

    /// The one-edge path `σ₀a`.
    pub fn trivial_path(&self, a: Elem) -> Path {
        Path { edges: vec![self.degenerate_index(a)] }
    }

    /// `p̄`: reversed edges in reverse order.
    pub fn reverse_path(&self, p: &Path) -> Path {
        Path { edges: p.edges.iter().rev().map(|&e| self.reverse[e]).collect() }
    }

    /// `p * q`: first `q`, then `p`. Requires `∂₀q = ∂₁p`.
    pub fn compose_paths(&self, p: &Path, q: &Path) -> Result<Path> {
        if q.end(self) != p.start(self) {
            return Err(Error::EndpointMismatch);
        }
        let mut edges = q.edges.clone();
        edges.extend_from_slice(&p.edges);
        Ok(Path { edges })
    }

    /// Applies one elementary homotopy at position `i` using triangle `t`.
    pub fn homotopy_step(&self, p: &Path, i: usize, t: usize, direction: Move) -> Result<Path> {
        let [f0, f1, f2] = *self.triangle_faces.get(t).ok_or(Error::PatternMismatch(i))?;
        let mut edges = p.edges.clone();
        match direction {
            Move::Expand => {
                if edges.get(i) != Some(&f1) {
                    return Err(Error::PatternMismatch(i));
                }
                edges.splice(i..=i, [f2, f0]);
            }
            Move::Contract => {
                if edges.get(i) != Some(&f2) || edges.get(i + 1) != Some(&f0) {
                    return Err(Error::PatternMismatch(i));
                }
                edges.splice(i..i + 2, [f1]);
            }
        }
        Ok(Path { edges })
    }

    /// Every homotopy move applicable to `p`, in order of position, direction
    /// and triangle.
    pub fn applicable_moves(&self, p: &Path) -> Vec<(usize, usize, Move)> {
        let mut out = Vec::new();
        for (i, &e) in p.edges.iter().enumerate() {
            out.extend(self.by_face1[e].iter().map(|&t| (i, t, Move::Expand)));
            if let Some(&next) = p.edges.get(i + 1) {
                out.extend(self.triangles_with_faces(e, next).iter().map(|&t| (i, t, Move::Contract)));
            }
        }
        out
    }

    /// Breadth-first spanning tree of the comparability graph rooted at
    /// `base`. Entry `x` is the path from `base` to `x` as nerve edges in
    /// application order (empty for `base`).
    pub fn tree_paths(&self, base: Elem) -> Result<Vec<Vec<usize>>> {
        self.poset.check(base)?;
        self.poset.require_connected()?;
        let n = self.poset.len();
        let mut paths: Vec<Option<Vec<usize>>> = vec![None; n];
        paths[base.index()] = Some(Vec::new());
        let mut queue = VecDeque::from([base]);
        while let Some(x) = queue.pop_front() {
            for y in self.poset.elements() {
                if paths[y.index()].is_none() && self.poset.comparable(x, y) {
                    let top = if self.poset.leq(x, y) { y } else { x };
                    let step = self.edge_index[&(top, y, x)];
                    let mut path = paths[x.index()].clone().expect("visited");
                    path.push(step);
                    paths[y.index()] = Some(path);
                    queue.push_back(y);
                }
            }
        }
        Ok(paths.into_iter().map(|p| p.expect("connected")).collect())
    }

    /// The undirected 1-skeleton: one edge per support and unordered pair of
    /// distinct faces, given by its canonically oriented simplex (face1 the
    /// smaller element).
    pub fn skeleton(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&i| {
                let b = &self.edges[i];
                b.face1() < b.face0()
            })
            .collect()
    }
}

/// A finite presentation of `π₁(K, basepoint)`.
#[derive(Clone, Debug)]
pub struct Presentation {
    basepoint: Elem,
    tree: Vec<Vec<usize>>,
    generators: Vec<usize>,
    words: Vec<Word>,
    relators: Vec<Word>,
}

fn free_reduce(word: Word) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for l in word {
        if out.last() == Some(&l.inverted()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn invert(word: &[Letter]) -> Word {
    word.iter().rev().map(|l| l.inverted()).collect()
}

impl Presentation {
    pub fn new(complex: &Complex, basepoint: Elem) -> Result<Presentation> {
        let tree = complex.tree_paths(basepoint)?;
        let mut on_tree = vec![false; complex.edge_count()];
        for path in &tree {
            for &e in path {
                on_tree[e] = true;
                on_tree[complex.reverse_index(e)] = true;
            }
        }
        let generators: Vec<usize> =
            complex.skeleton().into_iter().filter(|&e| !on_tree[e]).collect();
        let gen_of: HashMap<usize, u32> =
            generators.iter().enumerate().map(|(g, &e)| (e, g as u32)).collect();
        let words: Vec<Word> = (0..complex.edge_count())
            .map(|e| {
                if let Some(&g) = gen_of.get(&e) {
                    vec![Letter { generator: g, inverse: false }]
                } else if let Some(&g) = gen_of.get(&complex.reverse_index(e)) {
                    vec![Letter { generator: g, inverse: true }]
                } else {
                    Vec::new()
                }
            })
            .collect();
        let mut relators: Vec<Word> = Vec::new();
        for t in 0..complex.triangles().len() {
            let [f0, f1, f2] = complex.triangle_faces(t);
            let mut w = words[f0].clone();
            w.extend_from_slice(&words[f2]);
            w.extend(invert(&words[f1]));
            let w = free_reduce(w);
            if !w.is_empty() && !relators.contains(&w) {
                relators.push(w);
            }
        }
        Ok(Presentation { basepoint, tree, generators, words, relators })
    }

    pub fn basepoint(&self) -> Elem {
        self.basepoint
    }

    /// Tree path from the basepoint to `x`, as edge indices in application order.
    pub fn tree_path(&self, x: Elem) -> &[usize] {
        &self.tree[x.index()]
    }

    /// Edge indices of the generators (canonically oriented skeleton edges).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// The generator word of edge `e`; empty on tree and self-reverse edges.
    pub fn word(&self, e: usize) -> &Word {
        &self.words[e]
    }

    /// The word of a path: the words of its edges, last edge leftmost, freely reduced.
    pub fn path_word(&self, p: &Path) -> Word {
        free_reduce(p.edges.iter().rev().flat_map(|&e| self.words[e].iter().copied()).collect())
    }

    /// `tree(∂₀b)⁻¹ * b * tree(∂₁b)`, a loop at the basepoint.
    pub fn loop_of_edge(&self, complex: &Complex, e: usize) -> Result<Path> {
        if e >= complex.edge_count() {
            return Err(Error::UnknownEdge(format!("#{e}")));
        }
        let b = complex.edge(e);
        let mut edges = self.tree[b.face1().index()].clone();
        edges.push(e);
        edges.extend(self.tree[b.face0().index()].iter().rev().map(|&x| complex.reverse_index(x)));
        complex.path(edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn el(p: &Poset, id: &str) -> Elem {
        p.elem(id).unwrap()
    }

    #[test]
    fn edge_counts() {
        assert_eq!(Complex::new(fixtures::chain3()).edges().len(), 14);
        assert_eq!(Complex::new(fixtures::circ4()).edges().len(), 20);
        let single = Complex::new(Poset::new("pt", &["o"], &[]).unwrap());
        assert_eq!(single.simplices(2).unwrap().len(), 1);
        assert_eq!(single.simplices(3).unwrap().len(), 1);
        assert_eq!(single.simplices(4), Err(Error::DegreeOutOfRange(4)));
    }

    #[test]
    fn canonical_edge_order() {
        let c = Complex::new(fixtures::chain3());
        let keys: Vec<_> = c.edges().iter().map(|b| (b.support(), b.face0(), b.face1())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn faces_and_identities() {
        let k = fixtures::circ4();
        let (a, p, q) = (el(&k, "A"), el(&k, "p"), el(&k, "q"));
        let b = Simplex::edge(&k, a, p, q).unwrap();
        assert_eq!(b.face(0).unwrap(), Simplex::vertex(p));
        assert_eq!(b.face(1).unwrap(), Simplex::vertex(q));
        assert_eq!(b.face(2), Err(Error::IndexOutOfRange { index: 2, degree: 1 }));
        let cx = Complex::new(k);
        for c in cx.triangles() {
            for j in 1..=2 {
                for i in 0..j {
                    let lhs = c.face(j).unwrap().face(i).unwrap();
                    let rhs = c.face(i).unwrap().face(j - 1).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
        let d = Simplex::degenerate(a);
        assert_eq!(d.face0(), a);
        assert_eq!(d.face1(), a);
    }

    #[test]
    fn reverses() {
        let k = fixtures::circ4();
        let (a, p, q) = (el(&k, "A"), el(&k, "p"), el(&k, "q"));
        let b = Simplex::edge(&k, a, p, q).unwrap();
        assert_eq!(b.reverse().unwrap(), Simplex::edge(&k, a, q, p).unwrap());
        let s = Simplex::edge(&k, a, p, p).unwrap();
        assert_eq!(s.reverse().unwrap(), s);
        assert_eq!(Simplex::degenerate(a).reverse().unwrap(), Simplex::degenerate(a));
        let cx = Complex::new(k);
        let e1 = cx.index_of(&Simplex::edge(cx.poset(), a, p, q).unwrap()).unwrap();
        let e2 = cx.index_of(&Simplex::edge(cx.poset(), el(cx.poset(), "B"), q, p).unwrap()).unwrap();
        let path = cx.path(vec![e1, e2]).unwrap();
        let rev = cx.reverse_path(&path);
        assert_eq!(rev.edges(), &[cx.reverse_index(e2), cx.reverse_index(e1)]);
        assert_eq!(cx.reverse_path(&rev), path);
    }

    #[test]
    fn nerve_embedding() {
        let c = Complex::new(fixtures::chain3());
        assert_eq!(c.nerve_simplices(1).unwrap().len(), 6);
        let k = Complex::new(fixtures::circ4());
        assert_eq!(k.nerve_simplices(1).unwrap().len(), 8);
        let p = c.poset();
        let (x, y) = (el(p, "x"), el(p, "y"));
        let ns = NerveSimplex::pair(p, y, x).unwrap();
        assert_eq!(ns.include(), Simplex::edge(p, y, y, x).unwrap());
        for cx in [&c, &k] {
            let mut images: Vec<Simplex> =
                cx.nerve_simplices(1).unwrap().iter().map(NerveSimplex::include).collect();
            images.sort();
            let mut nerve: Vec<Simplex> = (0..cx.edge_count())
                .filter(|&i| cx.is_nerve_edge(i))
                .map(|i| cx.edge(i).clone())
                .collect();
            nerve.sort();
            assert_eq!(images, nerve);
            let tris: Vec<Simplex> =
                cx.nerve_simplices(2).unwrap().iter().map(NerveSimplex::include).collect();
            let flagged = (0..cx.triangles().len()).filter(|&t| cx.is_nerve_triangle(t)).count();
            assert_eq!(tris.len(), flagged);
            for s in &tris {
                let t = cx.triangles().iter().position(|c| c == s).unwrap();
                assert!(cx.is_nerve_triangle(t));
                assert_eq!(s.support(), *ns_top(s));
            }
        }
    }

    fn ns_top(s: &Simplex) -> &Elem {
        s.values().last().unwrap()
    }

    #[test]
    fn path_composition() {
        let c = Complex::new(fixtures::chain3());
        let p = c.poset();
        let (x, y, z) = (el(p, "x"), el(p, "y"), el(p, "z"));
        let b1 = c.nerve_index(y, x).unwrap();
        let b2 = c.nerve_index(z, y).unwrap();
        let (p1, p2) = (c.path(vec![b1]).unwrap(), c.path(vec![b2]).unwrap());
        let joined = c.compose_paths(&p2, &p1).unwrap();
        assert_eq!(joined.edges(), &[b1, b2]);
        assert_eq!(joined.start(&c), x);
        assert_eq!(joined.end(&c), z);
        assert_eq!(c.compose_paths(&p1, &p2), Err(Error::EndpointMismatch));
        let with_loop = c.compose_paths(&p1, &c.trivial_path(x)).unwrap();
        assert_eq!(with_loop.len(), 2);
        assert!(c.path(vec![b2, b1]).is_err());
    }

    #[test]
    fn homotopy_moves_invert() {
        let c = Complex::new(fixtures::circ4());
        for t in 0..c.triangles().len() {
            let [_, f1, _] = c.triangle_faces(t);
            let p = c.path(vec![f1]).unwrap();
            let q = c.homotopy_step(&p, 0, t, Move::Expand).unwrap();
            assert_eq!(q.len(), 2);
            assert_eq!(c.homotopy_step(&q, 0, t, Move::Contract).unwrap(), p);
        }
        let p = c.trivial_path(el(c.poset(), "p"));
        let bad = (0..c.triangles().len()).find(|&t| c.triangle_faces(t)[1] != p.edges()[0]).unwrap();
        assert_eq!(c.homotopy_step(&p, 0, bad, Move::Expand), Err(Error::PatternMismatch(0)));
    }

    #[test]
    fn skeleton_size() {
        assert_eq!(Complex::new(fixtures::circ4()).skeleton().len(), 6);
        assert_eq!(Complex::new(fixtures::chain3()).skeleton().len(), 4);
    }

    #[test]
    fn presentation_shape() {
        let c = Complex::new(fixtures::circ4());
        let base = el(c.poset(), "A");
        let pres = Presentation::new(&c, base).unwrap();
        assert_eq!(pres.generators().len(), 3);
        for path in c.poset().elements().map(|x| pres.tree_path(x)) {
            for &e in path {
                assert!(pres.word(e).is_empty());
            }
        }
        for e in 0..c.edge_count() {
            let b = c.edge(e);
            if b.face0() == b.face1() {
                assert!(pres.word(e).is_empty());
            }
            let lp = pres.loop_of_edge(&c, e).unwrap();
            assert_eq!(lp.start(&c), base);
            assert_eq!(lp.end(&c), base);
            assert_eq!(&pres.path_word(&lp), pres.word(e));
        }
        assert!(pres.loop_of_edge(&c, 999).is_err());
        let two = Poset::new("two", &["a", "b"], &[]).unwrap();
        assert!(matches!(
            Presentation::new(&Complex::new(two), Elem::new(0)),
            Err(Error::NotConnected)
        ));
    }

    #[test]
    fn tetrahedra_faces_are_consistent() {
        let c = Complex::new(fixtures::chain3());
        for t in c.tetrahedra() {
            for (i, &f) in t.faces.iter().enumerate() {
                assert_eq!(t.simplex.face(i).unwrap(), c.triangles()[f]);
            }
            let e = c.edge(t.edge01);
            assert_eq!(*e, t.simplex.face(0).unwrap().face(0).unwrap());
        }
    }
}
