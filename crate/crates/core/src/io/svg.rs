//! Graphs of map classes as SVG, one unit-square panel per map.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lifts::Lift;
use crate::maps::{Branch, MapClass, Orientation};
use crate::numeric::{CirclePoint, Scalar};

pub const MAX_PANELS: usize = 8;

const SIDE: f64 = 200.0;
const MARGIN: f64 = 24.0;
const TITLE: f64 = 18.0;
const RADIUS: f64 = 3.0;

pub struct Panel {
    pub title: String,
    pub map: MapClass,
    /// Values of a chosen lift, drawn as filled dots.
    pub lift: Option<Lift>,
}

impl Panel {
    pub fn new(title: impl Into<String>, map: MapClass) -> Self {
        Panel {
            title: title.into(),
            map,
            lift: None,
        }
    }

    pub fn with_lift(title: impl Into<String>, lift: Lift) -> Self {
        Panel {
            title: title.into(),
            map: lift.class().clone(),
            lift: Some(lift),
        }
    }
}

/// A straight piece of graph from `(x0, y0)` to `(x1, y1)` inside the unit square.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub x0: Scalar,
    pub y0: Scalar,
    pub x1: Scalar,
    pub y1: Scalar,
}

/// Cuts a branch where its domain or its image crosses 0.
pub fn branch_segments(b: &Branch) -> Vec<Segment> {
    let lo = b.domain.lo().value().clone();
    let len = b.domain.length();
    let mut cuts = vec![Scalar::zero(), len.clone()];
    let mut add = |d: Scalar| {
        if d.is_positive() && d < len {
            cuts.push(d);
        }
    };
    add(CirclePoint::new(-lo.clone()).into_value());
    let y_lo = b.iso.apply(b.domain.lo()).into_value();
    match b.eps() {
        Orientation::Preserving => add(CirclePoint::new(-y_lo.clone()).into_value()),
        Orientation::Reversing => add(if y_lo.is_zero() {
            Scalar::zero()
        } else {
            y_lo.clone()
        }),
    }
    cuts.sort();
    cuts.dedup();
    let sign = Scalar::int(b.eps().sign());
    cuts.windows(2)
        .map(|w| {
            let x0 = (&lo + &w[0]).fract();
            let x1 = &x0 + &(&w[1] - &w[0]);
            let start = b.iso.apply(&CirclePoint::new(x0.clone())).into_value();
            // a reversed piece starting at image 0 descends from 1
            let y0 = if b.eps() == Orientation::Reversing && start.is_zero() {
                Scalar::one()
            } else {
                start
            };
            let y1 = &y0 + &(&sign * &(&w[1] - &w[0]));
            Segment { x0, y0, x1, y1 }
        })
        .collect()
}

fn px(v: &Scalar, origin: f64, flip: bool) -> f64 {
    let t = v.to_f64();
    if flip {
        origin + SIDE * (1.0 - t)
    } else {
        origin + SIDE * t
    }
}

fn circle(out: &mut String, cx: f64, cy: f64, filled: bool) {
    let fill = if filled { "black" } else { "white" };
    let _ = writeln!(
        out,
        r#"  <circle cx="{cx:.3}" cy="{cy:.3}" r="{RADIUS}" fill="{fill}" stroke="black" stroke-width="1"/>"#
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Deterministic SVG with one panel per map, left to right.
pub fn plot_svg(panels: &[Panel]) -> Result<String> {
    if panels.is_empty() || panels.len() > MAX_PANELS {
        return Err(Error::BadParameters(format!(
            "between 1 and {MAX_PANELS} panels"
        )));
    }
    let width = MARGIN + panels.len() as f64 * (SIDE + MARGIN);
    let height = TITLE + SIDE + 2.0 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    for (k, panel) in panels.iter().enumerate() {
        let ox = MARGIN + k as f64 * (SIDE + MARGIN);
        let oy = MARGIN + TITLE;
        let _ = writeln!(
            out,
            r#"  <text x="{:.3}" y="{:.3}" font-family="serif" font-size="14" text-anchor="middle">{}</text>"#,
            ox + SIDE / 2.0,
            MARGIN + TITLE / 2.0,
            escape(&panel.title)
        );
        let _ = writeln!(
            out,
            r##"  <rect x="{ox:.3}" y="{oy:.3}" width="{SIDE:.3}" height="{SIDE:.3}" fill="none" stroke="#888" stroke-width="1"/>"##
        );
        let mut ends = Vec::new();
        for b in panel.map.branches() {
            for s in branch_segments(b) {
                let (x0, y0) = (px(&s.x0, ox, false), px(&s.y0, oy, true));
                let (x1, y1) = (px(&s.x1, ox, false), px(&s.y1, oy, true));
                let _ = writeln!(
                    out,
                    r#"  <line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}" stroke="black" stroke-width="1.5"/>"#
                );
                ends.push((x0, y0));
                ends.push((x1, y1));
            }
        }
        for (x, y) in ends {
            circle(&mut out, x, y, false);
        }
        if let Some(l) = &panel.lift {
            for (x, y) in l.table() {
                circle(
                    &mut out,
                    px(x.value(), ox, false),
                    px(y.value(), oy, true),
                    true,
                );
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_132_flip, rotation};
    use crate::lifts::enumerate_hyperclean_lifts;

    fn segs(f: &MapClass) -> Vec<Segment> {
        f.branches().iter().flat_map(branch_segments).collect()
    }

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn identity_is_one_diagonal() {
        let s = segs(&MapClass::identity());
        assert_eq!(
            s,
            vec![Segment {
                x0: r(0, 1),
                y0: r(0, 1),
                x1: r(1, 1),
                y1: r(1, 1)
            }]
        );
    }

    #[test]
    fn rotation_is_two_parallel_segments() {
        let s = segs(&rotation(CirclePoint::ratio(1, 3)));
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|g| &g.y1 - &g.y0 == &g.x1 - &g.x0));
        assert_eq!(
            s[0],
            Segment {
                x0: r(0, 1),
                y0: r(1, 3),
                x1: r(2, 3),
                y1: r(1, 1)
            }
        );
    }

    #[test]
    fn flip_132_has_one_descending_segment() {
        let f = make_132_flip(&CirclePoint::ratio(1, 3), &CirclePoint::ratio(2, 3)).unwrap();
        let s = segs(&f);
        assert_eq!(s.len(), 3);
        assert_eq!(s.iter().filter(|g| g.y1 < g.y0).count(), 1);
        assert_eq!(
            s[0],
            Segment {
                x0: r(0, 1),
                y0: r(1, 3),
                x1: r(1, 3),
                y1: r(0, 1)
            }
        );
    }

    #[test]
    fn global_flip_descends_from_one() {
        let f = MapClass::full(crate::maps::Isometry::reflection(CirclePoint::zero()));
        assert_eq!(
            segs(&f),
            vec![Segment {
                x0: r(0, 1),
                y0: r(1, 1),
                x1: r(1, 1),
                y1: r(0, 1)
            }]
        );
    }

    #[test]
    fn output_is_deterministic() {
        let f = make_132_flip(&CirclePoint::ratio(1, 3), &CirclePoint::ratio(2, 3)).unwrap();
        let l = enumerate_hyperclean_lifts(&f).unwrap().remove(0);
        let mk =
            || plot_svg(&[Panel::new("f", f.clone()), Panel::with_lift("q", l.clone())]).unwrap();
        let a = mk();
        assert_eq!(a, mk());
        assert_eq!(a.matches("<line").count(), 6);
        assert_eq!(a.matches(r#"fill="black""#).count(), 3);
        assert!(plot_svg(&[]).is_err());
    }
}
