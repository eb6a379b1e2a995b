//! Bundles, connections, curvature, holonomy and non-Abelian 1-cohomology
//! over finite partially ordered sets.
//!
//! The base space is a finite [`Poset`]. Its symmetric simplicial set
//! (monotone maps from the subset posets into the base) is cached in a
//! [`Complex`]; cochains, bundles and Čech data all refer to one.
//!
//! ```
//! use netbundle::{fixtures, Complex, Group, GroupSpec, Execution};
//! use netbundle::cohomology::classify_cocycles;
//!
//! let circle = Complex::new(fixtures::circ4()).into_shared();
//! let z3 = Group::new(&GroupSpec::Cyclic(3)).unwrap().into_shared();
//! let classes = classify_cocycles(&circle, &z3, 1_000_000, Execution::default()).unwrap();
//! assert_eq!(classes.classes.len(), 3);
//! ```

pub mod bundles;
pub mod cech;
pub mod cohomology;
pub mod error;
pub mod fixtures;
pub mod groups;
pub mod io;
pub mod par;
pub mod poset;
pub mod sample;
pub mod simplicial;

pub use error::{Error, Result};
pub use groups::{Group, GroupElement, GroupHom, GroupSpec, Subgroup};
pub use par::Execution;
pub use poset::{DownSet, Elem, Poset};
pub use simplicial::{Complex, NerveSimplex, Path, Presentation, Simplex};
pub use cohomology::{Cochain1, Curvature2, Morphism0};
