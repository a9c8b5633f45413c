//! Exact-arithmetic invariants of totally oriented Klein graphs.
//!
//! A Klein graph is a trivalent spatial graph whose edges carry a 3-coloring
//! (every vertex meets all three colors). Deleting one color and smoothing the
//! vertices yields three bicolored links; this crate computes their exact
//! signatures, nullities and linking numbers through a braid pipeline, derives
//! the orientation data of the graph (edge signs, vertex types, the signed
//! seam-vertex count), evaluates orbifold Euler characteristics of abstract
//! foam descriptors, and combines everything into certified lower bounds on
//! Klein unknotting numbers and Klein Gordian distances.
//!
//! All invariant arithmetic is exact: integers and arbitrary-precision
//! rationals only, no floating point.
//!
//! Diagrams are exchanged in the `.ksg` text format, documented in
//! [`ksg`]. Conventions fixed by this crate (the underlying theory does not
//! mandate them) are documented where they are defined:
//!
//! * crossing slots are listed counterclockwise with slots `{0,2}` the
//!   under-strand and `{1,3}` the over-strand ([`diagram`]);
//! * crossing signs follow the right-hand rule ([`link`]);
//! * triply negative vertices of cyclic type RGB count as `+1` ([`orient`]).

pub mod bounds;
pub mod braid;
pub mod corpus;
pub mod diagram;
pub mod foam;
pub mod invariants;
pub mod ksg;
pub mod link;
pub mod orient;
pub mod rat;
pub mod seifert;
pub mod transform;

pub use bounds::BoundsReport;
pub use diagram::{ArcId, Color, ColoredDiagram, DiagramNode, Edge, EdgeId};
pub use foam::{ChangeScript, FoamDescriptor, LedgerReport};
pub use invariants::KleinInvariants;
pub use link::{LinkDiagram, OrientedLinkDiagram};
pub use orient::TotalOrientation;
pub use rat::Rat;
pub use seifert::{BraidWord, LinkSignatureBundle, SeifertData};
