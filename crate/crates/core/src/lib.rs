//! Restricted wreath products `D ≀_Ω Q`, a decision procedure for the
//! infinite-conjugacy-class property, and checkable certificates for both
//! outcomes.
//!
//! - [`group`]: the catalog of base groups and their property oracles.
//! - [`qset`]: Q-sets with structural orbit, kernel and freeness oracles.
//! - [`wreath`]: arithmetic in `D^(Ω) ⋊ Q`.
//! - [`decision`]: the icc verdict.
//! - [`witness`]: finite invariant sets and injective conjugate families.
//! - [`oracle`]: an independent bounded conjugacy-class explorer.

pub mod decision;
pub mod element;
pub mod error;
pub mod group;
pub mod oracle;
pub mod parse;
pub mod qset;
pub mod tri;
pub mod witness;
pub mod wreath;

pub use decision::{decide_icc, decide_icc_free, IccVerdict};
pub use element::Element;
pub use error::{Error, Result};
pub use group::{ClassReport, ClassStatus, Group, GroupKind, IccStatus, Provenance};
pub use oracle::{enumerate_class, WreathClassReport, WreathClassStatus};
pub use qset::{Carrier, KernelReport, OmegaPoint, OrbitReport, OrbitStatus, QSet};
pub use tri::Tri;
pub use witness::{Certificate, FamilyKind, FiniteClassCertificate, InfiniteFamilyCertificate};
pub use wreath::{FinSuppMap, WreathElement, WreathGroup};
