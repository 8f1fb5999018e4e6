//! Group-theoretic enumeration of Hopf-Galois structures on separable field
//! extensions, with minimality classification.

pub mod catalog;
pub mod engine;
pub mod error;
pub mod group;
pub mod groupspec;
pub mod minimality;
pub mod perm;
pub mod report;

pub use engine::{coset_action, CosetAction, ExtensionProblem, HGStructure, Limits};
pub use error::{Error, Result};
pub use group::{FiniteGroup, Subgroup};
pub use minimality::{classify, classify_with, ClassificationReport};
pub use perm::{Perm, PermSet};
pub use report::{resolve_problem, ReportDocument, SubgroupSpec};
