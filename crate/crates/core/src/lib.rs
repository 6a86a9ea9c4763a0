//! Construction, search and verification of integer quadruples that are
//! simultaneously regular D(n₁)- and D(n₂)-quadruples for distinct nonzero
//! squares n₁, n₂, and D(0)-quadruples as well.
//!
//! The pipeline runs from a three-parameter family of rational D(1)-triples,
//! through a quartic whose square values make the product `abcd` a square,
//! to a family of elliptic curves over ℚ on which odd multiples of a known
//! point yield valid quadruples. Everything is exact rational arithmetic.
//!
//! - [`exactnum`]: big integers, rationals, square detection
//! - [`dncore`]: the D(n) domain model, regularity, equivalence
//! - [`param`]: the triple parametrization and the quartics in `x` and `t₃`
//! - [`ecurve`]: the curve, its group law and named points
//! - [`families`]: point → quadruple pipeline and the two closed-form families
//! - [`search`]: parallel brute-force search over small-height parameters

pub mod dncore;
pub mod ecurve;
pub mod error;
pub mod exactnum;
pub mod families;
pub mod param;
pub mod poly;
pub mod search;

pub use dncore::{
    certify_doubly_regular, check_dn, class_key, equivalent, normalize, scale_regularity_reduction,
    verify_dn, verify_rat_d1, Certificate, DnWitness, Quad, RatQuad, PAIRS,
};
pub use ecurve::{CurveK, CurvePoint};
pub use error::{Error, Result};
pub use exactnum::{int, rat, Int, Rat};
pub use families::{ClosedFormFamily, FamilyId, FamilyInstance, PairStatus, Provenance};
pub use param::{KmChart, QuarticT3, QuarticX, TripleParams};
pub use search::{SearchConfig, SearchHit, SearchOutcome};
