//! Exact arithmetic for interval exchanges with flips on the circle `R/Z`,
//! taken modulo finitely supported permutations.
//!
//! Coordinates live in `Q` or a real quadratic field `Q(√m)`, so every
//! comparison is decided exactly. The crate covers the group law on map
//! classes, their Keane normal forms, the action on the two-sided blow-up of
//! the circle, lifts to genuine permutations, and a set of named
//! constructions (partial rotations, flips, commutators with rotations).

pub mod blowup;
pub mod constructions;
pub mod error;
pub mod io;
pub mod lifts;
pub mod maps;
pub mod numeric;
pub mod random;
pub mod verify;

pub use error::{Error, Result};
pub use maps::{Branch, Interval, Isometry, KeaneForm, MapClass, MapKind, Orientation, Side};
pub use numeric::{CirclePoint, FieldSpec, Scalar, SubgroupPresentation};
