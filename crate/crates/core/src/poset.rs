//! Finite posets, the down-set topology and locally constant functions.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// An element of a [`Poset`], identified by its position in the canonical
/// (lexicographic by name) order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u32);

impl Elem {
    pub fn new(index: usize) -> Self {
        Elem(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite partially ordered set.
///
/// Elements are stored sorted by name and the order relation is kept as a
/// dense reflexive-transitive matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    name: String,
    names: Vec<String>,
    leq: Vec<bool>,
}

/// `V_a`: every element below `anchor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DownSet {
    pub anchor: Elem,
    pub members: Vec<Elem>,
}

impl DownSet {
    pub fn contains(&self, e: Elem) -> bool {
        self.members.binary_search(&e).is_ok()
    }
}

impl Poset {
    /// Builds a poset from a list of element ids and cover pairs `(lesser, greater)`.
    /// The order is the reflexive-transitive closure of the covers.
    pub fn new<S: AsRef<str>>(name: &str, elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let mut names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        names.sort();
        for pair in names.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateElement(pair[0].clone()));
            }
        }
        let n = names.len();
        let lookup = |s: &str| {
            names
                .binary_search_by(|probe| probe.as_str().cmp(s))
                .map_err(|_| Error::UnknownElement(s.to_string()))
        };
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let (lo, hi) = (lookup(lo.as_ref())?, lookup(hi.as_ref())?);
            leq[lo * n + hi] = true;
        }
        // Warshall closure; n is small.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::CycleDetected(names[i].clone(), names[j].clone()));
                }
            }
        }
        Ok(Poset { name: name.to_string(), names, leq })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.len()).map(Elem::new)
    }

    pub fn label(&self, e: Elem) -> &str {
        &self.names[e.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.names
    }

    /// Looks an element up by id.
    pub fn elem(&self, id: &str) -> Result<Elem> {
        self.names
            .binary_search_by(|probe| probe.as_str().cmp(id))
            .map(Elem::new)
            .map_err(|_| Error::UnknownElement(id.to_string()))
    }

    pub(crate) fn check(&self, e: Elem) -> Result<Elem> {
        if e.index() < self.len() {
            Ok(e)
        } else {
            Err(Error::UnknownElement(format!("#{}", e.index())))
        }
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.index() * self.len() + b.index()]
    }

    #[inline]
    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn comparable(&self, a: Elem, b: Elem) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// The opposite poset. Element indices are preserved, so data indexed by
    /// [`Elem`] carries over unchanged.
    pub fn dual(&self) -> Poset {
        let n = self.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[j * n + i] = self.leq[i * n + j];
            }
        }
        let name = match self.name.strip_suffix(".dual") {
            Some(base) => base.to_string(),
            None => format!("{}.dual", self.name),
        };
        Poset { name, names: self.names.clone(), leq }
    }

    pub(crate) fn below(&self, a: Elem) -> Vec<Elem> {
        self.elements().filter(|&x| self.leq(x, a)).collect()
    }

    pub(crate) fn above(&self, a: Elem) -> Vec<Elem> {
        self.elements().filter(|&x| self.leq(a, x)).collect()
    }

    pub fn down_set(&self, a: Elem) -> Result<DownSet> {
        let a = self.check(a)?;
        Ok(DownSet { anchor: a, members: self.below(a) })
    }

    /// The elements above `a`, i.e. the down-set of `a` in the dual poset.
    /// Bundle charts and Čech overlaps are indexed over these.
    pub fn star(&self, a: Elem) -> Result<Vec<Elem>> {
        let a = self.check(a)?;
        Ok(self.above(a))
    }

    /// `{V_a : a ∈ K}` in canonical order.
    pub fn fundamental_covering(&self) -> Vec<DownSet> {
        self.elements().map(|a| DownSet { anchor: a, members: self.below(a) }).collect()
    }

    pub fn is_upward_directed(&self) -> bool {
        let elems: Vec<Elem> = self.elements().collect();
        elems.iter().all(|&a| {
            elems.iter().all(|&b| elems.iter().any(|&c| self.leq(a, c) && self.leq(b, c)))
        })
    }

    pub fn is_downward_directed(&self) -> bool {
        let elems: Vec<Elem> = self.elements().collect();
        elems.iter().all(|&a| {
            elems.iter().all(|&b| elems.iter().any(|&c| self.leq(c, a) && self.leq(c, b)))
        })
    }

    /// Components of the comparability graph restricted to `subset`, each
    /// sorted, ordered by their least element.
    pub fn components_of(&self, subset: &[Elem]) -> Vec<Vec<Elem>> {
        let members: BTreeSet<Elem> = subset.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &members {
            if !seen.insert(start) {
                continue;
            }
            let mut component = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in &members {
                    if !seen.contains(&y) && self.comparable(x, y) {
                        seen.insert(y);
                        component.push(y);
                        queue.push_back(y);
                    }
                }
            }
            component.sort();
            out.push(component);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<Vec<Elem>> {
        let all: Vec<Elem> = self.elements().collect();
        self.components_of(&all)
    }

    /// Pathwise connected and nonempty.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// `EmptyPoset` or `NotConnected` unless the poset is connected.
    pub fn require_connected(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyPoset);
        }
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(())
    }

    /// True iff `f(o) = f(õ)` for every comparable pair inside `domain`.
    pub fn is_locally_constant<V, F>(&self, f: F, domain: &[Elem]) -> Result<bool>
    where
        V: PartialEq,
        F: Fn(Elem) -> V,
    {
        for &e in domain {
            self.check(e)?;
        }
        for (i, &a) in domain.iter().enumerate() {
            for &b in &domain[i + 1..] {
                if self.comparable(a, b) && f(a) != f(b) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn minimal_elements(&self) -> Vec<Elem> {
        self.elements().filter(|&a| !self.elements().any(|b| self.lt(b, a))).collect()
    }

    pub fn maximal_elements(&self) -> Vec<Elem> {
        self.elements().filter(|&a| !self.elements().any(|b| self.lt(a, b))).collect()
    }

    /// Covering pairs `(lesser, greater)` of the Hasse diagram.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.lt(a, b) && !self.elements().any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// True iff `subset` is closed downwards (an open set of the topology
    /// generated by the down-sets).
    pub fn is_open(&self, subset: &[Elem]) -> bool {
        subset.iter().all(|&a| self.below(a).iter().all(|x| subset.contains(x)))
    }

    /// The induced subposet on `subset`. Returns the subposet and, for each of
    /// its elements, the corresponding element of `self`.
    pub fn induced(&self, subset: &[Elem]) -> Result<(Poset, Vec<Elem>)> {
        let mut keep: Vec<Elem> = subset.to_vec();
        for &e in &keep {
            self.check(e)?;
        }
        keep.sort();
        keep.dedup();
        let n = keep.len();
        let mut leq = vec![false; n * n];
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                leq[i * n + j] = self.leq(a, b);
            }
        }
        let names = keep.iter().map(|&e| self.names[e.index()].clone()).collect();
        Ok((Poset { name: format!("{}.sub", self.name), names, leq }, keep))
    }
}

impl fmt::Display for Poset {
    /// Writes the line-oriented text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "poset {}", self.name)?;
        write!(f, "elements")?;
        for name in &self.names {
            write!(f, " {name}")?;
        }
        writeln!(f)?;
        for (a, b) in self.covers() {
            writeln!(f, "cover {} < {}", self.label(a), self.label(b))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ids(p: &Poset, set: &[Elem]) -> Vec<String> {
        set.iter().map(|&e| p.label(e).to_string()).collect()
    }

    #[test]
    fn chain_closure_is_transitive() {
        let p = fixtures::chain3();
        let (x, z) = (p.elem("x").unwrap(), p.elem("z").unwrap());
        assert!(p.leq(x, z));
        assert!(!p.leq(z, x));
    }

    #[test]
    fn circle_tops_are_incomparable() {
        let p = fixtures::circ4();
        let (a, b) = (p.elem("A").unwrap(), p.elem("B").unwrap());
        assert!(!p.comparable(a, b));
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = Poset::new("bad", &["x", "y"], &[("x", "y"), ("y", "x")]).unwrap_err();
        assert!(matches!(err, Error::CycleDetected(..)));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Poset::new("d", &["x", "x"], &[]).unwrap_err(),
            Error::DuplicateElement("x".into())
        );
        assert_eq!(
            Poset::new("u", &["x"], &[("x", "w")]).unwrap_err(),
            Error::UnknownElement("w".into())
        );
    }

    #[test]
    fn dual_examples() {
        let c = fixtures::chain3().dual();
        let (x, y, z) = (c.elem("x").unwrap(), c.elem("y").unwrap(), c.elem("z").unwrap());
        assert!(c.leq(z, y) && c.leq(y, x));
        let d = fixtures::circ4().dual();
        assert_eq!(ids(&d, &d.minimal_elements()), ["A", "B"]);
        assert_eq!(ids(&d, &d.maximal_elements()), ["p", "q"]);
        let anti = Poset::new("anti", &["a", "b"], &[]).unwrap();
        assert_eq!(anti.dual().dual(), anti);
        assert_eq!(anti.dual().leq, anti.leq);
    }

    #[test]
    fn down_sets() {
        let c = fixtures::chain3();
        assert_eq!(ids(&c, &c.down_set(c.elem("y").unwrap()).unwrap().members), ["x", "y"]);
        let k = fixtures::circ4();
        assert_eq!(ids(&k, &k.down_set(k.elem("A").unwrap()).unwrap().members), ["A", "p", "q"]);
        let p = k.elem("p").unwrap();
        assert_eq!(k.down_set(p).unwrap().members, vec![p]);
        assert!(matches!(k.down_set(Elem::new(9)), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn fundamental_coverings() {
        let c = fixtures::chain3();
        let cov: Vec<Vec<String>> =
            c.fundamental_covering().iter().map(|d| ids(&c, &d.members)).collect();
        assert_eq!(cov, vec![vec!["x"], vec!["x", "y"], vec!["x", "y", "z"]]);
        let k = fixtures::circ4();
        // canonical order is A, B, p, q
        let cov: Vec<Vec<String>> =
            k.fundamental_covering().iter().map(|d| ids(&k, &d.members)).collect();
        assert_eq!(cov, vec![vec!["A", "p", "q"], vec!["B", "p", "q"], vec!["p"], vec!["q"]]);
        let single = Poset::new("pt", &["o"], &[]).unwrap();
        assert_eq!(single.fundamental_covering().len(), 1);
    }

    #[test]
    fn directedness() {
        let d = fixtures::diamond();
        assert!(d.is_upward_directed() && d.is_downward_directed());
        let k = fixtures::circ4();
        assert!(!k.is_upward_directed() && !k.is_downward_directed());
        let c = fixtures::chain3();
        assert!(c.is_upward_directed() && c.is_downward_directed());
        let v = fixtures::vee();
        assert!(!v.is_upward_directed() && v.is_downward_directed());
    }

    #[test]
    fn components() {
        assert_eq!(fixtures::circ4().connected_components().len(), 1);
        let two = Poset::new("two", &["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]).unwrap();
        assert_eq!(two.connected_components().len(), 2);
        assert!(!two.is_connected());
        let empty = Poset::new::<&str>("empty", &[], &[]).unwrap();
        assert!(empty.connected_components().is_empty());
        assert_eq!(empty.require_connected(), Err(Error::EmptyPoset));
    }

    #[test]
    fn local_constancy() {
        let c = fixtures::chain3();
        let all: Vec<Elem> = c.elements().collect();
        assert!(c.is_locally_constant(|_| 0, &all).unwrap());
        let (x, y) = (c.elem("x").unwrap(), c.elem("y").unwrap());
        assert!(!c.is_locally_constant(|e| (e == y) as u8, &[x, y]).unwrap());
        let k = fixtures::circ4();
        let (p, q) = (k.elem("p").unwrap(), k.elem("q").unwrap());
        assert!(k.is_locally_constant(|e| (e == q) as u8, &[p, q]).unwrap());
        assert!(k.is_locally_constant(|_| 0, &[Elem::new(7)]).is_err());
    }

    #[test]
    fn minimal() {
        let k = fixtures::circ4();
        assert_eq!(ids(&k, &k.minimal_elements()), ["p", "q"]);
        let c = fixtures::chain3();
        assert_eq!(ids(&c, &c.minimal_elements()), ["x"]);
        let anti = Poset::new("anti", &["a", "b", "c"], &[]).unwrap();
        assert_eq!(anti.minimal_elements().len(), 3);
    }

    #[test]
    fn hasse_and_openness() {
        let c = fixtures::chain3();
        assert_eq!(c.covers().len(), 2);
        let k = fixtures::circ4();
        let (a, p, q) = (k.elem("A").unwrap(), k.elem("p").unwrap(), k.elem("q").unwrap());
        assert!(k.is_open(&[a, p, q]));
        assert!(!k.is_open(&[a, p]));
    }
}
