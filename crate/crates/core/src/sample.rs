//! Seeded random cochains, morphisms and paths for property checks and the
//! command line.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cohomology::{flat_cocycle_from_hom, Cochain1, Morphism0};
use crate::error::Result;
use crate::groups::{self, Group, GroupElement};
use crate::par::Execution;
use crate::poset::Elem;
use crate::simplicial::{Complex, Move, Path, Presentation};

/// Draws random data over one complex and group.
#[derive(Clone, Debug)]
pub struct Sampler {
    complex: Arc<Complex>,
    group: Arc<Group>,
    presentation: Presentation,
    homs: Vec<Vec<GroupElement>>,
    /// Edges `e ≤ reverse(e)` whose pair avoids the nerve.
    free_pairs: Vec<usize>,
}

impl Sampler {
    pub fn new(complex: Arc<Complex>, group: Arc<Group>, budget: u128) -> Result<Sampler> {
        let presentation = Presentation::new(&complex, Elem::new(0))?;
        let homs = groups::enumerate_homomorphisms(
            presentation.generators().len(),
            presentation.relators(),
            &group,
            budget,
            Execution::Sequential,
        )?;
        let free_pairs = (0..complex.edge_count())
            .filter(|&e| {
                let r = complex.reverse_index(e);
                e <= r && !complex.is_nerve_edge(e) && !complex.is_nerve_edge(r)
            })
            .collect();
        Ok(Sampler { complex, group, presentation, homs, free_pairs })
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn element<R: Rng>(&self, rng: &mut R) -> GroupElement {
        GroupElement::from_index(rng.gen_range(0..self.group.order()))
    }

    pub fn random_morphism0<R: Rng>(&self, rng: &mut R) -> Morphism0 {
        let values = (0..self.complex.poset().len()).map(|_| self.element(rng)).collect();
        Morphism0::new(self.complex.clone(), self.group.clone(), values).expect("sized")
    }

    /// Any cochain, not necessarily a connection.
    pub fn random_cochain<R: Rng>(&self, rng: &mut R) -> Cochain1 {
        Cochain1::from_fn(self.complex.clone(), self.group.clone(), |_| self.element(rng))
    }

    /// A uniformly chosen hom, realised in tree gauge and moved by a random
    /// gauge transformation.
    pub fn random_cocycle<R: Rng>(&self, rng: &mut R) -> Cochain1 {
        let hom = self.homs.choose(rng).expect("the trivial hom exists");
        let z = flat_cocycle_from_hom(&self.complex, &self.group, &self.presentation, hom)
            .expect("homs give cocycles");
        z.gauge(&self.random_morphism0(rng)).expect("same data")
    }

    /// A random cocycle with up to three reverse-symmetric pairs of values
    /// off the nerve replaced at random. Always a connection.
    pub fn random_connection<R: Rng>(&self, rng: &mut R) -> Cochain1 {
        let mut u = self.random_cocycle(rng);
        if self.free_pairs.is_empty() {
            return u;
        }
        for _ in 0..rng.gen_range(0..=3) {
            let e = *self.free_pairs.choose(rng).expect("nonempty");
            let r = self.complex.reverse_index(e);
            let mut x = self.element(rng);
            if e == r {
                let involutions: Vec<GroupElement> =
                    self.group.elements().filter(|&g| self.group.inv(g) == g).collect();
                x = *involutions.choose(rng).expect("identity");
            }
            u.set(e, x);
            u.set(r, self.group.inv(x));
        }
        u
    }

    /// A random path of `len` edges, each step leaving the current end.
    pub fn random_path<R: Rng>(&self, rng: &mut R, start: Elem, len: usize) -> Path {
        let c = &self.complex;
        let mut edges = Vec::with_capacity(len);
        let mut at = start;
        for _ in 0..len.max(1) {
            let out: Vec<usize> = (0..c.edge_count()).filter(|&e| c.edge(e).face1() == at).collect();
            let e = *out.choose(rng).expect("degenerate edge exists");
            at = c.edge(e).face0();
            edges.push(e);
        }
        c.path(edges).expect("consecutive edges")
    }

    /// Applies `steps` random elementary homotopies, returning every stage.
    pub fn random_homotopy<R: Rng>(&self, rng: &mut R, path: &Path, steps: usize) -> Vec<Path> {
        let c = &self.complex;
        let mut out = vec![path.clone()];
        let mut p = path.clone();
        for _ in 0..steps {
            let moves: Vec<(usize, usize, Move)> =
                c.applicable_moves(&p).into_iter().filter(|m| m.2 == Move::Expand || p.len() > 1).collect();
            let Some(&(i, t, m)) = moves.choose(rng) else {
                break;
            };
            // Keep paths short so long runs stay cheap.
            if m == Move::Expand && p.len() > 12 {
                continue;
            }
            p = c.homotopy_step(&p, i, t, m).expect("applicable move");
            out.push(p.clone());
        }
        out
    }
}
