//! Executable combinatorics for removing double points of immersed surfaces
//! by tubing over neighbourhoods of embedded trees.
//!
//! The crate is organised bottom-up:
//!
//! * [`trees`]: locally bipartitioned trees, bicolourings, canonical codes.
//! * [`links`]: planar-diagram link codes, Hopf links, connected sums,
//!   the associated link of a tree and exact Kauffman bracket / Jones
//!   polynomials.
//! * [`surfaces`]: a combinatorial model of normally immersed surfaces and
//!   plumbings, plus the two tree-embedding constructions.
//! * [`tubing`]: excision of tree neighbourhoods and annulus gluing with
//!   Euler characteristic bookkeeping.
//! * [`theorems`]: end-to-end certification pipelines and certificates.
//! * [`knotdata`]: knot-table ingestion.

pub mod knotdata;
pub mod links;
pub mod surfaces;
pub mod theorems;
pub mod trees;
pub mod tubing;
pub mod unionfind;

pub use knotdata::{load_knot_csv, parse_knot_csv, KnotRecord, KnotTable, RejectedRow};
pub use links::{
    amphichiral_evidence, associated_link, connected_sum, hopf_link, jones, kauffman_bracket, BracketOptions,
    LaurentPoly, LinkDiagram, LinkError,
};
pub use surfaces::{
    embed_in_connected, embed_in_plumbing, lift_forest, link_of_embedding, make_immersed_disc, make_plumbing,
    verify_embedding, AbstractSurface, ImmersedSurface, PlumbingTree, SuitableEmbedding,
};
pub use theorems::{
    certify, certify_norman, certify_slice_in_plumbing, clasp_chain, en_bound, k3_plumbing, verify_certificate,
    Certificate, Manifold, ManifoldModel, Verdict,
};
pub use trees::{
    bipartitions_from_bicolouring, canonical_code, compatible_bicolouring, enumerate_lbtrees, is_isomorphic,
    validate_lbtree, Bicolouring, LBTree, Tree,
};
pub use tubing::{excise, orient_result, tube, ExcisedSurface, TubingResult};
