use std::sync::Arc;

use super::{cochains_equivalent, Cochain1};
use crate::error::{Error, Result};
use crate::groups::{self, Group, GroupElement};
use crate::par::{self, Execution};
use crate::poset::Elem;
use crate::simplicial::{Complex, Presentation};

/// Cap on `|G|^{|Σ̃₁|}` for the exhaustive oracle.
pub const ORACLE_LIMIT: u128 = 1 << 24;

/// One equivalence class of cocycles.
#[derive(Clone, Debug)]
pub struct CocycleClass {
    /// Lexicographically least hom in the conjugacy class.
    pub hom: Vec<GroupElement>,
    /// Number of homs in the class.
    pub size: usize,
    /// Tree-gauge representative.
    pub cocycle: Cochain1,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub presentation: Presentation,
    pub hom_count: usize,
    pub classes: Vec<CocycleClass>,
}

impl Classification {
    /// Index of the class containing a cocycle.
    pub fn class_of(&self, z: &Cochain1) -> Result<usize> {
        let h = hom_of_cocycle(&self.presentation, z)?;
        let key = groups::canonical_conjugate(z.group(), &h);
        self.classes
            .iter()
            .position(|c| c.hom == key)
            .ok_or_else(|| Error::Mismatch("cocycle class not found".into()))
    }
}

/// The tree-gauge cocycle of a hom: each edge gets the image of its word.
pub fn flat_cocycle_from_hom(
    complex: &Arc<Complex>,
    group: &Arc<Group>,
    pres: &Presentation,
    images: &[GroupElement],
) -> Result<Cochain1> {
    if images.len() != pres.generators().len() {
        return Err(Error::Mismatch("one image per generator expected".into()));
    }
    let z = Cochain1::from_fn(complex.clone(), group.clone(), |e| {
        groups::evaluate_word(group, pres.word(e), images)
    });
    z.require_cocycle()?;
    Ok(z)
}

/// The hom `γ ↦ z(loop of γ)` of a cocycle.
pub fn hom_of_cocycle(pres: &Presentation, z: &Cochain1) -> Result<Vec<GroupElement>> {
    z.require_cocycle()?;
    pres.generators()
        .iter()
        .map(|&e| {
            let lp = pres.loop_of_edge(z.complex(), e)?;
            Ok(z.evaluate_edges(lp.edges()))
        })
        .collect()
}

/// Classifies cocycles up to equivalence through homs of the fundamental
/// group modulo conjugation. Classes are ordered by their canonical hom.
pub fn classify_cocycles(
    complex: &Arc<Complex>,
    group: &Arc<Group>,
    budget: u128,
    exec: Execution,
) -> Result<Classification> {
    let pres = Presentation::new(complex, Elem::new(0))?;
    let homs = groups::enumerate_homomorphisms(
        pres.generators().len(),
        pres.relators(),
        group,
        budget,
        exec,
    )?;
    let keys = par::map_collect(exec, &homs, |h| groups::canonical_conjugate(group, h));
    let mut sorted = keys.clone();
    sorted.sort();
    let mut classes: Vec<CocycleClass> = Vec::new();
    for key in sorted {
        match classes.last_mut() {
            Some(last) if last.hom == key => last.size += 1,
            _ => {
                let cocycle = flat_cocycle_from_hom(complex, group, &pres, &key)?;
                classes.push(CocycleClass { hom: key, size: 1, cocycle });
            }
        }
    }
    Ok(Classification { presentation: pres, hom_count: homs.len(), classes })
}

/// Result of the exhaustive cochain oracle.
#[derive(Clone, Debug)]
pub struct OracleReport {
    pub cochains_scanned: u128,
    pub cocycle_count: usize,
    pub representatives: Vec<Cochain1>,
}

/// Enumerates every cochain, keeps the cocycles and buckets them by
/// [`cochains_equivalent`]. Limited to [`ORACLE_LIMIT`] cochains.
pub fn brute_force_classes(
    complex: &Arc<Complex>,
    group: &Arc<Group>,
    exec: Execution,
) -> Result<OracleReport> {
    complex.poset().require_connected()?;
    let n = group.order() as u128;
    let edges = complex.edge_count();
    let required = n.saturating_pow(edges as u32);
    if required > ORACLE_LIMIT {
        return Err(Error::BudgetExceeded { required, budget: ORACLE_LIMIT });
    }
    let decode = |mut index: u64| -> Vec<GroupElement> {
        (0..edges)
            .map(|_| {
                let d = index % n as u64;
                index /= n as u64;
                GroupElement::from_index(d as usize)
            })
            .collect()
    };
    let cocycles = par::range_filter_map(exec, required as u64, |i| {
        let z = Cochain1 { complex: complex.clone(), group: group.clone(), values: decode(i) };
        z.is_cocycle().then_some(z)
    });
    let mut representatives: Vec<Cochain1> = Vec::new();
    for z in &cocycles {
        let mut known = false;
        for r in &representatives {
            if cochains_equivalent(r, z)?.is_some() {
                known = true;
                break;
            }
        }
        if !known {
            representatives.push(z.clone());
        }
    }
    Ok(OracleReport { cochains_scanned: required, cocycle_count: cocycles.len(), representatives })
}

/// [`classify_cocycles`] together with the exhaustive oracle and a flag
/// telling whether both agree: same class count, and every oracle class
/// hits a distinct presentation class.
pub fn classify_with_oracle(
    complex: &Arc<Complex>,
    group: &Arc<Group>,
    budget: u128,
    exec: Execution,
) -> Result<(Classification, OracleReport, bool)> {
    let classification = classify_cocycles(complex, group, budget, exec)?;
    let oracle = brute_force_classes(complex, group, exec)?;
    let mut hit: Vec<usize> = oracle
        .representatives
        .iter()
        .map(|z| classification.class_of(z))
        .collect::<Result<_>>()?;
    hit.sort();
    hit.dedup();
    let agree = hit.len() == oracle.representatives.len()
        && oracle.representatives.len() == classification.classes.len();
    Ok((classification, oracle, agree))
}
