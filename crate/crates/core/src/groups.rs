//! Finite coefficient groups.
//!
//! A [`Group`] is built from a [`GroupSpec`] (cyclic, symmetric, direct
//! product) or carved out of another group as a [`Subgroup`]. Elements are
//! [`GroupElement`] indices into the canonical enumeration, identity first.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// Largest group order accepted for full enumeration.
pub const MAX_ORDER: usize = 10_000;
const TABLE_LIMIT: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u32),
    Symmetric(u32),
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    /// Order of the described group, saturating on overflow.
    pub fn order(&self) -> u128 {
        match self {
            GroupSpec::Cyclic(n) => *n as u128,
            GroupSpec::Symmetric(n) => (1..=*n as u128).fold(1u128, |acc, k| acc.saturating_mul(k)),
            GroupSpec::Product(parts) => {
                parts.iter().fold(1u128, |acc, p| acc.saturating_mul(p.order()))
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Product(parts) => {
                write!(f, "prod(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Cursor { src: s.as_bytes(), pos: 0 };
        let spec = parser.spec()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(Error::InvalidGroup(format!("trailing input in `{s}`")));
        }
        Ok(spec)
    }
}

/// A human-facing element description.
///
/// Permutations are one-line image lists on `0..n`; composition is
/// `(στ)(i) = σ(τ(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElementLiteral {
    Residue(u32),
    Perm(Vec<u32>),
    Tuple(Vec<ElementLiteral>),
}

impl fmt::Display for ElementLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementLiteral::Residue(r) => write!(f, "{r}"),
            ElementLiteral::Perm(images) => {
                write!(f, "perm(")?;
                for (i, x) in images.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            ElementLiteral::Tuple(parts) => {
                write!(f, "(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for ElementLiteral {
    type Err = Error;

    /// Accepts `3`, `perm(1 0 2)`, `(1,2)` and the bare tuple form `1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Cursor { src: s.as_bytes(), pos: 0 };
        let first = parser.literal()?;
        parser.skip_ws();
        let lit = if parser.peek() == Some(b',') {
            let mut parts = vec![first];
            while parser.eat(b',') {
                parts.push(parser.literal()?);
            }
            ElementLiteral::Tuple(parts)
        } else {
            first
        };
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(Error::InvalidGroup(format!("trailing input in literal `{s}`")));
        }
        Ok(lit)
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::InvalidGroup(format!("expected `{}` at offset {}", c as char, self.pos)))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::InvalidGroup(format!("expected a number at offset {start}")))
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        if self.keyword("prod") {
            self.expect(b'(')?;
            let mut parts = vec![self.spec()?];
            while self.eat(b',') {
                parts.push(self.spec()?);
            }
            self.expect(b')')?;
            Ok(GroupSpec::Product(parts))
        } else if self.keyword("Z") {
            Ok(GroupSpec::Cyclic(self.number()?))
        } else if self.keyword("S") {
            Ok(GroupSpec::Symmetric(self.number()?))
        } else {
            Err(Error::InvalidGroup(format!("unknown group at offset {}", self.pos)))
        }
    }

    fn literal(&mut self) -> Result<ElementLiteral> {
        if self.keyword("perm") {
            self.expect(b'(')?;
            let mut images = Vec::new();
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                images.push(self.number()?);
            }
            self.expect(b')')?;
            Ok(ElementLiteral::Perm(images))
        } else if self.eat(b'(') {
            let mut parts = vec![self.literal()?];
            while self.eat(b',') {
                parts.push(self.literal()?);
            }
            self.expect(b')')?;
            Ok(ElementLiteral::Tuple(parts))
        } else {
            Ok(ElementLiteral::Residue(self.number()?))
        }
    }
}

/// An element of a [`Group`]: its index in the canonical enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GroupElement(pub(crate) u32);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        GroupElement(i as u32)
    }
}

#[derive(Debug)]
enum Repr {
    Cyclic(u32),
    Symmetric(u32),
    Product(Vec<Arc<Group>>),
    Sub { ambient: Arc<Group>, members: Vec<GroupElement> },
}

/// A finite group with a canonical element enumeration.
#[derive(Debug)]
pub struct Group {
    repr: Repr,
    order: usize,
    inverses: Vec<u32>,
    table: Option<Vec<u16>>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.descriptor() == other.descriptor()
    }
}

impl Eq for Group {}

fn factorial(n: u32) -> usize {
    (1..=n as usize).product()
}

fn perm_rank(p: &[u32]) -> usize {
    let n = p.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        rank += smaller * factorial((n - 1 - i) as u32);
    }
    rank
}

fn perm_unrank(n: u32, mut rank: usize) -> Vec<u32> {
    let mut pool: Vec<u32> = (0..n).collect();
    let mut out = Vec::with_capacity(n as usize);
    for i in (0..n).rev() {
        let f = factorial(i);
        out.push(pool.remove(rank / f));
        rank %= f;
    }
    out
}

impl Group {
    pub fn new(spec: &GroupSpec) -> Result<Group> {
        let order = spec.order();
        if order == 0 {
            return Err(Error::InvalidGroup(format!("{spec} has no elements")));
        }
        if order > MAX_ORDER as u128 {
            return Err(Error::InvalidGroup(format!(
                "{spec} has order {order}, above the limit {MAX_ORDER}"
            )));
        }
        let repr = match spec {
            GroupSpec::Cyclic(n) => Repr::Cyclic(*n),
            GroupSpec::Symmetric(n) => Repr::Symmetric(*n),
            GroupSpec::Product(parts) => {
                if parts.is_empty() {
                    return Err(Error::InvalidGroup("empty product".into()));
                }
                Repr::Product(
                    parts.iter().map(|p| Group::new(p).map(Arc::new)).collect::<Result<_>>()?,
                )
            }
        };
        Ok(Group::finish(repr, order as usize))
    }

    /// Parses a spec string such as `prod(Z2,S3)` and builds the group.
    pub fn parse(spec: &str) -> Result<Group> {
        Group::new(&spec.parse()?)
    }

    /// The group structure of a subgroup, with its own canonical enumeration
    /// (ambient order restricted to the members).
    pub fn from_subgroup(ambient: &Arc<Group>, sub: &Subgroup) -> Group {
        let members = sub.members.clone();
        Group::finish(Repr::Sub { ambient: ambient.clone(), members: members.clone() }, members.len())
    }

    fn finish(repr: Repr, order: usize) -> Group {
        let mut g = Group { repr, order, inverses: Vec::new(), table: None };
        g.inverses = (0..order).map(|i| g.slow_inv(i as u32)).collect();
        if order <= TABLE_LIMIT {
            let mut table = vec![0u16; order * order];
            for a in 0..order {
                for b in 0..order {
                    table[a * order + b] = g.slow_mul(a as u32, b as u32) as u16;
                }
            }
            g.table = Some(table);
        }
        g
    }

    pub fn into_shared(self) -> Arc<Group> {
        Arc::new(self)
    }

    /// The spec this group was built from; `None` for subgroup-derived groups.
    pub fn spec(&self) -> Option<GroupSpec> {
        match &self.repr {
            Repr::Cyclic(n) => Some(GroupSpec::Cyclic(*n)),
            Repr::Symmetric(n) => Some(GroupSpec::Symmetric(*n)),
            Repr::Product(parts) => {
                parts.iter().map(|p| p.spec()).collect::<Option<Vec<_>>>().map(GroupSpec::Product)
            }
            Repr::Sub { .. } => None,
        }
    }

    /// A stable textual name: the spec string, or `sub(<ambient>;<members>)`.
    pub fn descriptor(&self) -> String {
        match &self.repr {
            Repr::Sub { ambient, members } => {
                let list: Vec<String> = members.iter().map(|m| ambient.format(*m)).collect();
                format!("sub({};{})", ambient.descriptor(), list.join(" "))
            }
            _ => self.spec().map(|s| s.to_string()).unwrap_or_default(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + Clone {
        (0..self.order as u32).map(GroupElement)
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        g.index() < self.order
    }

    pub(crate) fn check(&self, g: GroupElement) -> Result<GroupElement> {
        if self.contains(g) {
            Ok(g)
        } else {
            Err(Error::SpecMismatch(format!(
                "element #{} outside {}",
                g.index(),
                self.descriptor()
            )))
        }
    }

    #[inline]
    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        match &self.table {
            Some(t) => GroupElement(t[a.index() * self.order + b.index()] as u32),
            None => GroupElement(self.slow_mul(a.0, b.0)),
        }
    }

    #[inline]
    pub fn inv(&self, a: GroupElement) -> GroupElement {
        GroupElement(self.inverses[a.index()])
    }

    /// `ad(g)(h) = g h g⁻¹`.
    #[inline]
    pub fn conj(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// Checked product: fails with `SpecMismatch` on foreign elements.
    pub fn multiply(&self, a: GroupElement, b: GroupElement) -> Result<GroupElement> {
        Ok(self.mul(self.check(a)?, self.check(b)?))
    }

    /// Checked inverse.
    pub fn inverse(&self, a: GroupElement) -> Result<GroupElement> {
        Ok(self.inv(self.check(a)?))
    }

    pub fn product<I: IntoIterator<Item = GroupElement>>(&self, items: I) -> GroupElement {
        items.into_iter().fold(self.identity(), |acc, g| self.mul(acc, g))
    }

    pub fn element_order(&self, g: GroupElement) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    fn mixed_radix(parts: &[Arc<Group>], mut i: u32) -> Vec<u32> {
        let mut digits = vec![0; parts.len()];
        for (k, p) in parts.iter().enumerate().rev() {
            digits[k] = i % p.order as u32;
            i /= p.order as u32;
        }
        digits
    }

    fn from_digits(parts: &[Arc<Group>], digits: &[u32]) -> u32 {
        parts.iter().zip(digits).fold(0, |acc, (p, &d)| acc * p.order as u32 + d)
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        match &self.repr {
            Repr::Cyclic(n) => (a + b) % n,
            Repr::Symmetric(n) => {
                let (s, t) = (perm_unrank(*n, a as usize), perm_unrank(*n, b as usize));
                let st: Vec<u32> = t.iter().map(|&i| s[i as usize]).collect();
                perm_rank(&st) as u32
            }
            Repr::Product(parts) => {
                let (da, db) = (Self::mixed_radix(parts, a), Self::mixed_radix(parts, b));
                let dc: Vec<u32> = parts
                    .iter()
                    .enumerate()
                    .map(|(k, p)| p.mul(GroupElement(da[k]), GroupElement(db[k])).0)
                    .collect();
                Self::from_digits(parts, &dc)
            }
            Repr::Sub { ambient, members } => {
                let c = ambient.mul(members[a as usize], members[b as usize]);
                members.binary_search(&c).expect("subgroup closed under products") as u32
            }
        }
    }

    fn slow_inv(&self, a: u32) -> u32 {
        match &self.repr {
            Repr::Cyclic(n) => (n - a) % n,
            Repr::Symmetric(n) => {
                let s = perm_unrank(*n, a as usize);
                let mut inv = vec![0; s.len()];
                for (i, &x) in s.iter().enumerate() {
                    inv[x as usize] = i as u32;
                }
                perm_rank(&inv) as u32
            }
            Repr::Product(parts) => {
                let d = Self::mixed_radix(parts, a);
                let di: Vec<u32> =
                    parts.iter().enumerate().map(|(k, p)| p.inv(GroupElement(d[k])).0).collect();
                Self::from_digits(parts, &di)
            }
            Repr::Sub { ambient, members } => {
                let c = ambient.inv(members[a as usize]);
                members.binary_search(&c).expect("subgroup closed under inverses") as u32
            }
        }
    }

    /// The literal naming `g`. Subgroup-derived groups use ambient literals.
    pub fn literal(&self, g: GroupElement) -> ElementLiteral {
        match &self.repr {
            Repr::Cyclic(_) => ElementLiteral::Residue(g.0),
            Repr::Symmetric(n) => ElementLiteral::Perm(perm_unrank(*n, g.index())),
            Repr::Product(parts) => {
                let d = Self::mixed_radix(parts, g.0);
                ElementLiteral::Tuple(
                    parts.iter().zip(d).map(|(p, x)| p.literal(GroupElement(x))).collect(),
                )
            }
            Repr::Sub { ambient, members } => ambient.literal(members[g.index()]),
        }
    }

    pub fn element(&self, lit: &ElementLiteral) -> Result<GroupElement> {
        let bad = || Error::InvalidGroup(format!("`{lit}` is not an element of {}", self.descriptor()));
        match (&self.repr, lit) {
            (Repr::Cyclic(n), ElementLiteral::Residue(r)) if r < n => Ok(GroupElement(*r)),
            (Repr::Symmetric(n), ElementLiteral::Perm(images)) => {
                let mut seen = vec![false; *n as usize];
                if images.len() != *n as usize {
                    return Err(bad());
                }
                for &x in images {
                    if x >= *n || std::mem::replace(&mut seen[x as usize], true) {
                        return Err(bad());
                    }
                }
                Ok(GroupElement(perm_rank(images) as u32))
            }
            (Repr::Product(parts), ElementLiteral::Tuple(items)) if parts.len() == items.len() => {
                let digits = parts
                    .iter()
                    .zip(items)
                    .map(|(p, l)| p.element(l).map(|e| e.0))
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupElement(Self::from_digits(parts, &digits)))
            }
            (Repr::Sub { ambient, members }, _) => {
                let a = ambient.element(lit)?;
                members.binary_search(&a).map(|i| GroupElement(i as u32)).map_err(|_| bad())
            }
            _ => Err(bad()),
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        self.element(&text.parse()?)
    }

    pub fn format(&self, g: GroupElement) -> String {
        self.literal(g).to_string()
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { ambient_order: self.order, members: vec![self.identity()] }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { ambient_order: self.order, members: self.elements().collect() }
    }

    /// The smallest subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[GroupElement]) -> Result<Subgroup> {
        for &g in gens {
            self.check(g)?;
        }
        Ok(self.closure(gens))
    }

    fn closure(&self, gens: &[GroupElement]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y.index()] {
                    seen[y.index()] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup {
            ambient_order: self.order,
            members: self.elements().filter(|g| seen[g.index()]).collect(),
        }
    }

    /// The smallest subgroup of `ambient` containing `gens` and stable under
    /// conjugation by `ambient`.
    pub fn normal_closure(&self, gens: &[GroupElement], ambient: &Subgroup) -> Result<Subgroup> {
        for &g in gens {
            self.check(g)?;
            if !ambient.contains(g) {
                return Err(Error::NotContained);
            }
        }
        let mut conjugates = BTreeSet::new();
        for &h in &ambient.members {
            for &g in gens {
                conjugates.insert(self.conj(h, g));
            }
        }
        Ok(self.closure(&conjugates.into_iter().collect::<Vec<_>>()))
    }

    /// `g H g⁻¹`.
    pub fn conjugate_subgroup(&self, g: GroupElement, sub: &Subgroup) -> Subgroup {
        let mut members: Vec<GroupElement> = sub.members.iter().map(|&h| self.conj(g, h)).collect();
        members.sort();
        Subgroup { ambient_order: self.order, members }
    }

    /// Some `g` with `g A g⁻¹ = B`.
    pub fn subgroups_conjugate(&self, a: &Subgroup, b: &Subgroup) -> Option<GroupElement> {
        if a.len() != b.len() {
            return None;
        }
        self.elements().find(|&g| a.members.iter().all(|&h| b.contains(self.conj(g, h))))
    }

    pub fn is_normal_in(&self, sub: &Subgroup, ambient: &Subgroup) -> bool {
        sub.members.iter().all(|&h| ambient.contains(h))
            && ambient
                .members
                .iter()
                .all(|&g| sub.members.iter().all(|&h| sub.contains(self.conj(g, h))))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, in order of least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<GroupElement>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for x in self.elements() {
            if seen[x.index()] {
                continue;
            }
            let class: BTreeSet<GroupElement> = self.elements().map(|g| self.conj(g, x)).collect();
            for c in &class {
                seen[c.index()] = true;
            }
            out.push(class.into_iter().collect());
        }
        out
    }
}

/// A subgroup, stored as the sorted list of its members.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    ambient_order: usize,
    members: Vec<GroupElement>,
}

impl Subgroup {
    pub fn contains(&self, g: GroupElement) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn members(&self) -> &[GroupElement] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Never true: a subgroup contains the identity.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.ambient_order
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&g| other.contains(g))
    }
}

/// One letter of a word over presentation generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn inverted(self) -> Letter {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

pub type Word = Vec<Letter>;

/// Product of the letters left to right under `images`.
pub fn evaluate_word(group: &Group, word: &[Letter], images: &[GroupElement]) -> GroupElement {
    word.iter().fold(group.identity(), |acc, l| {
        let g = images[l.generator as usize];
        group.mul(acc, if l.inverse { group.inv(g) } else { g })
    })
}

/// Enumerates every assignment of generators to `group` satisfying all
/// relators, in lexicographic order of the image vectors.
pub fn enumerate_homomorphisms(
    generators: usize,
    relators: &[Word],
    group: &Group,
    budget: u128,
    exec: Execution,
) -> Result<Vec<Vec<GroupElement>>> {
    let required = (group.order() as u128).saturating_pow(generators as u32);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    if generators == 0 {
        let ok = relators.iter().all(|r| r.is_empty());
        return Ok(if ok { vec![Vec::new()] } else { Vec::new() });
    }
    // Relators become checkable once their largest generator is assigned.
    let mut by_depth: Vec<Vec<&Word>> = vec![Vec::new(); generators];
    for r in relators {
        if let Some(top) = r.iter().map(|l| l.generator as usize).max() {
            by_depth[top].push(r);
        }
    }
    let firsts: Vec<GroupElement> = group.elements().collect();
    let chunks = par::map_collect(exec, &firsts, |&g0| {
        let mut out = Vec::new();
        let mut images = vec![group.identity(); generators];
        images[0] = g0;
        if by_depth[0].iter().all(|r| evaluate_word(group, r, &images) == group.identity()) {
            extend(group, &by_depth, 1, &mut images, &mut out);
        }
        out
    });
    Ok(chunks.into_iter().flatten().collect())
}

fn extend(
    group: &Group,
    by_depth: &[Vec<&Word>],
    depth: usize,
    images: &mut Vec<GroupElement>,
    out: &mut Vec<Vec<GroupElement>>,
) {
    if depth == images.len() {
        out.push(images.clone());
        return;
    }
    for g in group.elements() {
        images[depth] = g;
        if by_depth[depth].iter().all(|r| evaluate_word(group, r, images) == group.identity()) {
            extend(group, by_depth, depth + 1, images, out);
        }
    }
}

/// Some `g` with `g h1(γ) g⁻¹ = h2(γ)` for every generator, least first.
pub fn homs_conjugate(
    group: &Group,
    h1: &[GroupElement],
    h2: &[GroupElement],
) -> Option<GroupElement> {
    if h1.len() != h2.len() {
        return None;
    }
    group.elements().find(|&g| h1.iter().zip(h2).all(|(&a, &b)| group.conj(g, a) == b))
}

/// The lexicographically least conjugate of a homomorphism.
pub fn canonical_conjugate(group: &Group, h: &[GroupElement]) -> Vec<GroupElement> {
    group
        .elements()
        .map(|g| h.iter().map(|&x| group.conj(g, x)).collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// A group homomorphism given by its full image table.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<Group>,
    target: Arc<Group>,
    images: Vec<GroupElement>,
}

impl GroupHom {
    /// Validates the homomorphism property exhaustively.
    pub fn new(source: Arc<Group>, target: Arc<Group>, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::SpecMismatch("image table has the wrong length".into()));
        }
        for &g in &images {
            target.check(g)?;
        }
        for a in source.elements() {
            for b in source.elements() {
                let lhs = images[source.mul(a, b).index()];
                if lhs != target.mul(images[a.index()], images[b.index()]) {
                    return Err(Error::SpecMismatch("map is not a homomorphism".into()));
                }
            }
        }
        Ok(GroupHom { source, target, images })
    }

    pub fn identity(group: Arc<Group>) -> Self {
        let images = group.elements().collect();
        GroupHom { source: group.clone(), target: group, images }
    }

    /// The inclusion of a subgroup, with the subgroup as its own group.
    pub fn inclusion(ambient: Arc<Group>, sub: &Subgroup) -> Self {
        let source = Arc::new(Group::from_subgroup(&ambient, sub));
        GroupHom { source, target: ambient, images: sub.members.clone() }
    }

    /// The map sending everything to the identity.
    pub fn trivial(source: Arc<Group>, target: Arc<Group>) -> Self {
        let images = vec![target.identity(); source.order()];
        GroupHom { source, target, images }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GroupHom) -> Result<GroupHom> {
        if *first.target != *self.source {
            return Err(Error::SpecMismatch("composable homomorphisms required".into()));
        }
        let images = first.images.iter().map(|&g| self.images[g.index()]).collect();
        Ok(GroupHom { source: first.source.clone(), target: self.target.clone(), images })
    }

    pub fn source(&self) -> &Arc<Group> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Group> {
        &self.target
    }

    pub fn apply(&self, g: GroupElement) -> GroupElement {
        self.images[g.index()]
    }

    /// Preimage of a target element under an injective hom.
    pub fn preimage(&self, g: GroupElement) -> Option<GroupElement> {
        self.images.iter().position(|&x| x == g).map(GroupElement::from_index)
    }
}

/// Index of each literal rendering, used by parsers of value tables.
pub fn literal_index(group: &Group) -> HashMap<String, GroupElement> {
    group.elements().map(|g| (group.format(g), g)).collect()
}
