//! Construction, recognition, decomposition and enumeration of
//! `(n-3)`-perfect sets.

pub mod corner;
pub mod decompose;
pub mod enumerate;
pub mod profile;
pub mod recognize;

pub use corner::{
    construction2_partition, corner_preimage, corner_set, cyclic_isotopies, lift_set, slender_perfect_sets, CornerError,
};
pub use decompose::{decompose, Component};
pub use enumerate::{enumerate_perfect_sets, EnumerateOptions, Enumeration};
pub use profile::{is_slender, perfect_by_slices, slice_profile, Line, LineKind, SliceProfile};
pub use recognize::{recognize, CornerInflationCertificate, Rejection};
