//! Combinatorics of the repetitive polygon model for the categories
//! `C_{n,p}`.
//!
//! The crate models indecomposable objects as diagonals `(i, j, k)` of a
//! regular `p(n+2)`-gon split into `p` regions, and provides:
//!
//! - the functors rho, tau and shift with their inverses, and the
//!   Ext/Hom/crossing support predicates ([`polygon`]);
//! - diagonal sets as bit vectors, Ptolemy checking with diagnostics,
//!   Horn-rule closure and the four perp operators ([`sets`]);
//! - rigid / maximal rigid / cluster-tilting recognition and torsion-pair
//!   assembly ([`classify`]);
//! - exhaustive enumeration by bit-parallel powerset scan and by lectic
//!   next-closure, structural generation of cluster-tilting sets, maximal
//!   clique enumeration, and orbit reduction ([`enumerate`]);
//! - the translation quiver of diagonals with a stable-translation
//!   validator and DOT/JSON export ([`quiver`]);
//! - differential oracles transcribed from the defining clause lists
//!   ([`oracle`]);
//! - SVG/TikZ figures of the polygon with its region arcs ([`draw`]).

mod bits;

pub mod classify;
pub mod draw;
pub mod enumerate;
pub mod oracle;
pub mod polygon;
pub mod quiver;
pub mod sets;

pub use classify::{
    classify, is_cluster_tilting, is_maximal_rigid, is_rigid, torsion_pair_of,
    ClassificationReport, NotPtolemyError, TorsionPair,
};
pub use enumerate::{
    count_ptolemy, enumerate_cluster_tilting, enumerate_maximal_rigid, enumerate_ptolemy,
    orbit_reduce, run_request, EnumError, Enumeration, EnumerationRequest, Generator, Mode,
    OrbitRep, Target, DEFAULT_BIT_CAP,
};
pub use polygon::{Diagonal, Functor, FunctorKind, ModelError, PolygonParams};
pub use quiver::{build_ar_quiver, export_quiver, ArQuiver, MeshReport, QuiverFormat};
pub use sets::{required_connectors, DiagonalSet, PairTable, PtClause, PtolemyViolation};
