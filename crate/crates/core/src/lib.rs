//! Process calculus workbench: a small language with deadlock, action
//! prefix, choice, interleaving merge, and prefix iteration; strong,
//! branching, and weak bisimilarity; weak norms and depths; and parallel
//! decomposition of processes into indecomposable components, analysed
//! through partial commutative monoids of bisimilarity classes.

pub mod decomp;
pub mod equiv;
pub mod generate;
mod graph;
pub mod lts;
pub mod monoid;
pub mod norms;
pub mod order;
pub mod syntax;

pub use equiv::{equivalent, Semantics};
pub use lts::{build_lts, Lts};
pub use syntax::{format_expr, parse_expr, Action, ProcessExpr};
