//! Piecewise isometric classes of the circle: construction, group law,
//! Keane normal forms and analytic attributes.

mod analysis;
mod class;
mod interval;
mod keane;

pub use analysis::{rotation_class, ArcSet, ClosedArc, Gap, MapKind};
pub use class::MapClass;
pub use interval::{Branch, Interval, Isometry, Orientation, Side};
pub use keane::{
    compose_permutations, from_keane, invert_permutation, keane_form, permute_lengths, KeaneForm,
};
