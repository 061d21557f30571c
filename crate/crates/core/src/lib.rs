//! Exact computations with groupoids internal to finite sets.
//!
//! The crate decides essential, Morita and Morita-homotopy equivalence of
//! finite groupoids, composes bibundles, glues descent data over finite
//! covers and computes the geometric complexity `c_geo` by exact covering
//! search.
//!
//! ```
//! use std::sync::Arc;
//!
//! use grpd::{are_morita_equivalent, build, cgeo, ExtNat, FinGroup};
//!
//! let pair = Arc::new(build::pair(3));
//! let point = Arc::new(build::point(&FinGroup::trivial()));
//! let z = are_morita_equivalent(&pair, &point).unwrap().expect("one orbit, trivial isotropy");
//! assert!(z.is_equivalence());
//! assert_eq!(z.len(), 3);
//! assert_eq!(cgeo(&pair).cgeo, ExtNat::Finite(1));
//! ```

#![allow(clippy::needless_range_loop)]

pub mod bibundle;
pub mod cocylinder;
pub mod complexity;
pub mod corpus;
pub mod descent;
pub mod functor;
pub mod group;
pub mod groupoid;
pub mod homotopy;
pub mod nat;
pub mod setcover;
pub mod skeleton;
pub mod text;

pub use bibundle::{
    are_morita_equivalent, bibundles_isomorphic, functor_to_bibundle, is_principal, tensor,
    unit_bibundle, Bibundle, BibundleError, GroupoidAction, Principality, Side,
};
pub use cocylinder::{cocylinder, Cocylinder};
pub use complexity::{
    cgeo, exists_deformation, is_transitive, is_weak_point_subgroupoid, locus_key,
    morita_point_check, orbits, point_groupoid, relative_cgeo, CgeoReport, ComplexityError, ExtNat,
    OrbitPartition, PointCheck, Subgroupoid, WeakPoint,
};
pub use descent::{
    check_cocycle, check_subcanonical, descend, glue, Bundle, CocycleFailure, Cover, DescentDatum,
    DescentError, Glued, Piece,
};
pub use functor::{compose_functors, enumerate_functors, FunctorError, StrictArrow};
pub use group::FinGroup;
pub use groupoid::{build, validate_groupoid, Arr, FinGroupoid, GroupoidError, Obj, RawGroupoid};
pub use homotopy::{
    are_morita_homotopy_equivalent, homotopy_pullback, is_essential_equivalence,
    is_essential_homotopy_equivalence, Cospan, HomotopyError, MoritaSpan, Pullback,
};
pub use nat::{are_homotopic, NatError, NatTrans};
pub use skeleton::{skeleton_equal, skeletonize, Skeleton, SkeletonEntry};
pub use text::{parse, Library, TextError};
