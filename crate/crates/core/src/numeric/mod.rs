//! Exact coordinates: scalars in `Q(√m)`, points of the circle `R/Z`, and
//! membership in finitely generated subgroups of the circle.

mod circle;
mod lattice;
mod scalar;

pub use circle::{circle_compare, geodesic_dist, reduce_mod1, CirclePoint};
pub use lattice::{hermite_normal_form, lambda_contains, lattice_contains, SubgroupPresentation};
pub use scalar::{FieldSpec, Scalar};
