//! Line-oriented text formats for posets, principal bundles, cochains and
//! Čech cocycles.
//!
//! Blank lines and `#` comments are ignored everywhere. Syntax problems are
//! reported as [`ParseError`] with a 1-based line number; data that parses
//! but violates an invariant is reported as the underlying [`Error`].

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use crate::bundles::{NetBundle, PrincipalNetBundle};
use crate::cech::{overlap, CechCocycle};
use crate::cohomology::Cochain1;
use crate::error::Error;
use crate::groups::{Group, GroupElement};
use crate::poset::{Elem, Poset};
use crate::simplicial::Complex;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] Error),
}

pub type LoadResult<T> = std::result::Result<T, LoadError>;

fn err<T>(line: usize, message: impl Into<String>) -> LoadResult<T> {
    Err(ParseError { line, message: message.into() }.into())
}

/// Nonblank lines with comments removed, paired with line numbers. A
/// comment starts at a `#` at the beginning of a line or after whitespace,
/// so fibre points such as `a#0` survive.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let cut = l
            .char_indices()
            .find(|&(k, c)| c == '#' && (k == 0 || l[..k].ends_with(char::is_whitespace)))
            .map_or(l.len(), |(k, _)| k);
        let l = l[..cut].trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Parses the poset format: `poset <name>`, `elements <id> ...`, then
/// `cover <id> < <id>` lines.
pub fn parse_poset(text: &str) -> LoadResult<Poset> {
    let mut it = lines(text);
    let Some((ln, head)) = it.next() else {
        return err(1, "empty input, expected `poset <name>`");
    };
    let name = match head.split_whitespace().collect::<Vec<_>>()[..] {
        ["poset", name] => name.to_string(),
        _ => return err(ln, "expected `poset <name>`"),
    };
    let Some((ln, elems)) = it.next() else {
        return err(ln + 1, "expected `elements ...`");
    };
    let mut words = elems.split_whitespace();
    if words.next() != Some("elements") {
        return err(ln, "expected `elements ...`");
    }
    let elements: Vec<&str> = words.collect();
    let mut seen = std::collections::HashSet::new();
    for e in &elements {
        if !seen.insert(*e) {
            return err(ln, format!("duplicate element `{e}`"));
        }
        if e.contains(['(', ')', ',', ';', '<']) {
            return err(ln, format!("invalid element id `{e}`"));
        }
    }
    let mut covers = Vec::new();
    for (ln, l) in it {
        let Some(rest) = l.strip_prefix("cover") else {
            return err(ln, format!("unexpected line `{l}`"));
        };
        let parts: Vec<&str> = rest.split('<').map(str::trim).collect();
        if parts.len() != 2 || parts.iter().any(|p| p.is_empty() || p.contains(char::is_whitespace)) {
            return err(ln, "expected `cover <id> < <id>`");
        }
        for p in &parts {
            if !seen.contains(p) {
                return err(ln, format!("unknown element `{p}`"));
            }
        }
        covers.push((parts[0], parts[1]));
    }
    Ok(Poset::new(&name, &elements, &covers)?)
}

/// The header `<kind> <name> over <poset> group <spec>` shared by the data
/// formats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Header {
    pub kind: String,
    pub name: String,
    pub poset: String,
    pub group: String,
}

impl fmt::Display for Header {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} over {} group {}", self.kind, self.name, self.poset, self.group)
    }
}

/// Reads the header of a bundle, cochain or Čech file.
pub fn read_header(text: &str) -> LoadResult<Header> {
    let Some((ln, head)) = lines(text).next() else {
        return err(1, "empty input");
    };
    match head.split_whitespace().collect::<Vec<_>>()[..] {
        [kind @ ("bundle" | "cochain" | "cech"), name, "over", poset, "group", ref spec @ ..]
            if !spec.is_empty() =>
        {
            Ok(Header {
                kind: kind.into(),
                name: name.into(),
                poset: poset.into(),
                group: spec.concat(),
            })
        }
        _ => err(ln, "expected `<bundle|cochain|cech> <name> over <poset> group <spec>`"),
    }
}

fn check_header(text: &str, kind: &str, poset: &Poset) -> LoadResult<(Header, Arc<Group>)> {
    let h = read_header(text)?;
    if h.kind != kind {
        return err(1, format!("expected a {kind} file, found {}", h.kind));
    }
    if h.poset != poset.name() {
        return err(1, format!("file is over `{}`, not `{}`", h.poset, poset.name()));
    }
    let group = Group::parse(&h.group).map_err(|e| ParseError { line: 1, message: e.to_string() })?;
    Ok((h, group.into_shared()))
}

fn elem(poset: &Poset, line: usize, id: &str) -> LoadResult<Elem> {
    poset.elem(id.trim()).map_err(|_| ParseError { line, message: format!("unknown element `{}`", id.trim()) }.into())
}

fn literal(group: &Group, line: usize, text: &str) -> LoadResult<GroupElement> {
    group
        .parse_element(text.trim())
        .map_err(|e| ParseError { line, message: e.to_string() }.into())
}

/// Splits `<kw> (<inside>) <rest>` into inside and rest.
fn bracketed<'a>(line: &'a str, kw: &str) -> Option<(&'a str, &'a str)> {
    let rest = line.strip_prefix(kw)?.trim_start();
    let rest = rest.strip_prefix('(')?;
    let close = rest.find(')')?;
    Some((&rest[..close], rest[close + 1..].trim()))
}

fn fibre_point(poset: &Poset, line: usize, token: &str) -> LoadResult<(Elem, usize)> {
    let Some((a, i)) = token.trim().rsplit_once('#') else {
        return err(line, format!("expected a fibre point `<element>#<index>`, found `{token}`"));
    };
    let index = i.parse().map_err(|_| ParseError { line, message: format!("bad fibre index `{i}`") })?;
    Ok((elem(poset, line, a)?, index))
}

/// Parses a principal bundle. Fibres are indexed by the group elements and
/// the group acts by right multiplication on indices.
pub fn parse_bundle(text: &str, complex: Arc<Complex>) -> LoadResult<PrincipalNetBundle> {
    let poset = complex.poset().clone();
    let (_, group) = check_header(text, "bundle", &poset)?;
    let size = group.order();
    let mut maps: BTreeMap<(Elem, Elem), Vec<Option<usize>>> = BTreeMap::new();
    let mut first_line: BTreeMap<(Elem, Elem), usize> = BTreeMap::new();
    for (ln, l) in lines(text).skip(1) {
        let Some((inside, rest)) = bracketed(l, "J") else {
            return err(ln, "expected `J (<a>,<ã>) : <point> -> <point>`");
        };
        let Some((x, y)) = inside.split_once(',') else {
            return err(ln, "expected `(<a>,<ã>)`");
        };
        let (a, at) = (elem(&poset, ln, x)?, elem(&poset, ln, y)?);
        let Some(rest) = rest.strip_prefix(':') else {
            return err(ln, "expected `:` after the simplex");
        };
        let Some((from, to)) = rest.split_once("->") else {
            return err(ln, "expected `<point> -> <point>`");
        };
        let (fb, fi) = fibre_point(&poset, ln, from)?;
        let (tb, ti) = fibre_point(&poset, ln, to)?;
        if fb != at || tb != a {
            return err(ln, "J (<a>,<ã>) maps points over ã to points over a");
        }
        if fi >= size || ti >= size {
            return err(ln, format!("fibre index out of range for a group of order {size}"));
        }
        if !poset.lt(at, a) {
            return err(ln, "J is given on nerve simplices (ã,a) with ã < a");
        }
        first_line.entry((a, at)).or_insert(ln);
        let slot = &mut maps.entry((a, at)).or_insert_with(|| vec![None; size])[fi];
        if slot.replace(ti).is_some() {
            return err(ln, format!("{} given twice", l));
        }
    }
    let mut full = Vec::new();
    for ((a, at), m) in maps {
        let Some(m) = m.into_iter().collect::<Option<Vec<usize>>>() else {
            return err(first_line[&(a, at)], format!(
                "J ({},{}) is not total",
                poset.label(a),
                poset.label(at)
            ));
        };
        full.push(((a, at), m));
    }
    let nb = NetBundle::new(complex, vec![size; poset.len()], full)?;
    let pb = PrincipalNetBundle::with_index_action(nb, group)?;
    pb.require_valid()?;
    Ok(pb)
}

pub fn format_bundle(name: &str, bundle: &PrincipalNetBundle) -> String {
    let p = bundle.complex().poset();
    let mut out = format!("bundle {name} over {} group {}\n", p.name(), bundle.group().descriptor());
    for a in p.elements() {
        for at in p.elements().filter(|&at| p.lt(at, a)) {
            for (i, &x) in bundle.bundle().j(a, at).expect("nerve").iter().enumerate() {
                let _ = writeln!(
                    out,
                    "J ({},{}) : {}#{i} -> {}#{x}",
                    p.label(a),
                    p.label(at),
                    p.label(at),
                    p.label(a)
                );
            }
        }
    }
    out
}

/// Parses a cochain; every 1-simplex must be given exactly once.
pub fn parse_cochain(text: &str, complex: Arc<Complex>) -> LoadResult<Cochain1> {
    let poset = complex.poset().clone();
    let (_, group) = check_header(text, "cochain", &poset)?;
    let mut values: Vec<Option<GroupElement>> = vec![None; complex.edge_count()];
    for (ln, l) in lines(text).skip(1) {
        let Some((inside, rest)) = bracketed(l, "val") else {
            return err(ln, "expected `val (<support>; <face0>, <face1>) = <element>`");
        };
        let Some((s, faces)) = inside.split_once(';') else {
            return err(ln, "expected `(<support>; <face0>, <face1>)`");
        };
        let Some((f0, f1)) = faces.split_once(',') else {
            return err(ln, "expected `(<support>; <face0>, <face1>)`");
        };
        let (s, f0, f1) = (elem(&poset, ln, s)?, elem(&poset, ln, f0)?, elem(&poset, ln, f1)?);
        let Some(e) = complex.edge_index(s, f0, f1) else {
            return err(ln, format!("({inside}) is not a 1-simplex"));
        };
        let Some(lit) = rest.strip_prefix('=') else {
            return err(ln, "expected `= <element>`");
        };
        if values[e].replace(literal(&group, ln, lit)?).is_some() {
            return err(ln, format!("({inside}) given twice"));
        }
    }
    let missing = values.iter().filter(|v| v.is_none()).count();
    if missing > 0 {
        return Err(Error::PartialCochain { missing }.into());
    }
    Ok(Cochain1::new(complex, group, values.into_iter().map(Option::unwrap).collect())?)
}

pub fn format_cochain(name: &str, z: &Cochain1) -> String {
    let c = z.complex();
    let p = c.poset();
    let mut out = format!("cochain {name} over {} group {}\n", p.name(), z.group().descriptor());
    for (e, b) in c.edges().iter().enumerate() {
        let _ = writeln!(out, "val {} = {}", b.display(p), z.group().format(z.value(e)));
    }
    out
}

/// Parses a Čech cocycle; every overlap point must be given exactly once.
/// Validity of the cocycle is checked separately.
pub fn parse_cech(text: &str, complex: Arc<Complex>) -> LoadResult<CechCocycle> {
    let poset = complex.poset().clone();
    let (_, group) = check_header(text, "cech", &poset)?;
    let mut entries = Vec::new();
    for (ln, l) in lines(text).skip(1) {
        let Some((inside, rest)) = bracketed(l, "xi") else {
            return err(ln, "expected `xi (<a>,<ã>) at <o> = <element>`");
        };
        let Some((x, y)) = inside.split_once(',') else {
            return err(ln, "expected `(<a>,<ã>)`");
        };
        let (a, at) = (elem(&poset, ln, x)?, elem(&poset, ln, y)?);
        let Some((o, lit)) = rest.strip_prefix("at").and_then(|r| r.split_once('=')) else {
            return err(ln, "expected `at <o> = <element>`");
        };
        let o = elem(&poset, ln, o)?;
        if !overlap(&poset, a, at).contains(&o) {
            return err(ln, format!("{} is not in the overlap of ({inside})", poset.label(o)));
        }
        entries.push((a, at, o, literal(&group, ln, lit)?));
    }
    Ok(CechCocycle::from_entries(complex, group, &entries)?)
}

pub fn format_cech(name: &str, xi: &CechCocycle) -> String {
    let p = xi.poset();
    let mut out = format!("cech {name} over {} group {}\n", p.name(), xi.group().descriptor());
    for (a, at, o, g) in xi.entries() {
        let _ = writeln!(
            out,
            "xi ({},{}) at {} = {}",
            p.label(a),
            p.label(at),
            p.label(o),
            xi.group().format(g)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn poset_round_trip() {
        for p in fixtures::all() {
            assert_eq!(parse_poset(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn poset_errors_carry_lines() {
        let e = parse_poset("poset t\nelements a b\n\ncover a < c\n").unwrap_err();
        assert_eq!(e, LoadError::Parse(ParseError { line: 4, message: "unknown element `c`".into() }));
        let e = parse_poset("# c\nposet t\nelements a a\n").unwrap_err();
        assert!(matches!(e, LoadError::Parse(ParseError { line: 3, .. })));
        let e = parse_poset("poset t\nelements a b\ncover a < b\ncover b < a\n").unwrap_err();
        assert!(matches!(e, LoadError::Invalid(Error::CycleDetected(..))));
        assert!(parse_poset("").is_err());
    }

    #[test]
    fn cochain_round_trip_and_totality() {
        let c = Complex::new(fixtures::circ4()).into_shared();
        let g = Group::parse("S3").unwrap().into_shared();
        let z = Cochain1::from_fn(c.clone(), g.clone(), |e| GroupElement::from_index(e % 6));
        let text = format_cochain("z", &z);
        assert_eq!(parse_cochain(&text, c.clone()).unwrap(), z);
        let cut: String = text.lines().take(5).map(|l| format!("{l}\n")).collect();
        assert!(matches!(parse_cochain(&cut, c.clone()), Err(LoadError::Invalid(Error::PartialCochain { .. }))));
        let bad = text.replacen("val (A; A, A)", "val (A; A A)", 1);
        assert!(matches!(parse_cochain(&bad, c), Err(LoadError::Parse(_))));
    }

    #[test]
    fn bundle_and_cech_round_trip() {
        let c = Complex::new(fixtures::chain3()).into_shared();
        let g = Group::parse("Z3").unwrap().into_shared();
        let pb = PrincipalNetBundle::product(c.clone(), g.clone()).unwrap();
        let text = format_bundle("b", &pb);
        assert!(text.contains("J (z,x) : x#2 -> z#2"));
        let back = parse_bundle(&text, c.clone()).unwrap();
        assert_eq!(format_bundle("b", &back), text);
        let dual = Complex::new(fixtures::chain3().dual()).into_shared();
        let xi = CechCocycle::from_fn(dual.clone(), g, |_, _, _| GroupElement::IDENTITY);
        let text = format_cech("xi", &xi);
        assert_eq!(parse_cech(&text, dual.clone()).unwrap(), xi);
        let bad = text.replacen(" at ", " on ", 1);
        assert!(matches!(parse_cech(&bad, dual), Err(LoadError::Parse(_))));
    }
}
