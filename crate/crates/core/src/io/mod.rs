//! Text input and output: canonical serializations, expressions, documents and SVG plots.

mod cursor;
mod document;
mod expr;
mod svg;
mod text;

pub use document::{parse_document, serialize_document, Document};
pub use expr::{default_lift, parse_lift_expr, parse_map_expr, parse_value, Bindings, Value};
pub use svg::{branch_segments, plot_svg, Panel, Segment, MAX_PANELS};
pub use text::{
    parse_lift, parse_map, parse_scalar, parse_sided_point, serialize_lift, serialize_map,
    serialize_scalar, serialize_sided_point,
};
