//! Text forms of scalars, maps, lifts and sided points.
//!
//! ```text
//! scalar ::= term (("+"|"-") term)*          term ::= int ("/" int)? ("*" "sqrt(" int ")")? | "sqrt(" int ")"
//! map    ::= piece (";" piece)*               piece ::= "[" scalar "," scalar ")" "->" ("+"|"-") "x" (("+"|"-") scalar)?
//! lift   ::= map ("\n" "@" scalar "->" scalar)*
//! sided  ::= scalar "^" ("+"|"-")
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{BigInt, BigRational, Zero};

use super::cursor::Cursor;
use crate::blowup::SidedPoint;
use crate::error::{Error, Result};
use crate::lifts::Lift;
use crate::maps::{Branch, Interval, Isometry, MapClass, Orientation, Side};
use crate::numeric::{CirclePoint, FieldSpec, Scalar};

fn rational(cur: &mut Cursor) -> Result<BigRational> {
    let num = cur.digits().ok_or_else(|| cur.error("expected a number"))?;
    let num: BigInt = num.parse().expect("digits");
    let mark = cur.mark();
    if cur.eat('/') {
        let Some(den) = cur.digits() else {
            cur.reset(mark);
            return Err(cur.error("expected a denominator after '/'"));
        };
        let den: BigInt = den.parse().expect("digits");
        if den.is_zero() {
            return Err(cur.error("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    } else {
        Ok(BigRational::from_integer(num))
    }
}

fn sqrt_radicand(cur: &mut Cursor, field: FieldSpec) -> Result<()> {
    cur.expect_str("sqrt(")?;
    let m = cur
        .digits()
        .ok_or_else(|| cur.error("expected a radicand"))?;
    let m: u32 = m.parse().map_err(|_| cur.error("radicand too large"))?;
    if field.is_rational() || m != field.m() {
        return Err(Error::FieldMismatch(format!(
            "sqrt({m}) in a document over field {}",
            field.m()
        )));
    }
    cur.expect(')')
}

pub(crate) fn scalar(cur: &mut Cursor, field: FieldSpec) -> Result<Scalar> {
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    let mut first = true;
    loop {
        let mark = cur.mark();
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            break;
        };
        // a sign followed by something that is not a term ends the scalar
        match cur.peek() {
            Some(c) if c.is_ascii_digit() || c == 's' => {}
            _ if first => return Err(cur.error("expected a number")),
            _ => {
                cur.reset(mark);
                break;
            }
        }
        let (r, is_sqrt) = if cur.peek() == Some('s') {
            sqrt_radicand(cur, field)?;
            (BigRational::from_integer(1.into()), true)
        } else {
            let r = rational(cur)?;
            if cur.eat('*') {
                sqrt_radicand(cur, field)?;
                (r, true)
            } else {
                (r, false)
            }
        };
        let r = if negative { -r } else { r };
        if is_sqrt {
            b += r;
        } else {
            a += r;
        }
        first = false;
    }
    Scalar::new(a, b, field)
}

fn finish<T>(cur: &mut Cursor, v: T) -> Result<T> {
    cur.expect_end()?;
    Ok(v)
}

pub fn parse_scalar(text: &str, field: FieldSpec) -> Result<Scalar> {
    let mut cur = Cursor::new(text, 1, 0);
    let s = scalar(&mut cur, field)?;
    finish(&mut cur, s)
}

pub fn serialize_scalar(s: &Scalar) -> String {
    s.to_string()
}

fn piece(cur: &mut Cursor, field: FieldSpec) -> Result<Branch> {
    cur.skip_ws();
    let start = cur.mark();
    cur.expect('[')?;
    let lo = scalar(cur, field)?;
    cur.expect(',')?;
    let hi = scalar(cur, field)?;
    cur.expect(')')?;
    cur.expect_str("->")?;
    let eps = if cur.eat('+') {
        Orientation::Preserving
    } else if cur.eat('-') {
        Orientation::Reversing
    } else {
        return Err(cur.error("expected '+x' or '-x'"));
    };
    if cur.peek_raw() != Some('x') {
        return Err(cur.error("expected 'x'"));
    }
    cur.bump();
    let t = match cur.peek() {
        Some('+' | '-') => scalar(cur, field)?,
        _ => Scalar::zero(),
    };
    let domain = if &hi - &lo == Scalar::one() {
        Interval::full()
    } else {
        Interval::new(CirclePoint::new(lo), CirclePoint::new(hi))
            .map_err(|_| cur.error_at(start, "empty interval"))?
    };
    Ok(Branch::new(domain, Isometry::new(eps, CirclePoint::new(t))))
}

pub(crate) fn map(cur: &mut Cursor, field: FieldSpec) -> Result<MapClass> {
    let mut branches = vec![piece(cur, field)?];
    while cur.eat(';') {
        branches.push(piece(cur, field)?);
    }
    MapClass::from_branches(branches)
}

pub fn parse_map(text: &str, field: FieldSpec) -> Result<MapClass> {
    let mut cur = Cursor::new(text, 1, 0);
    let m = map(&mut cur, field)?;
    finish(&mut cur, m)
}

/// Real representative of a branch offset: the image of a translated arc
/// starts in `[0,1)`, and a reflected arc starts its image in `[0,1)`.
fn offset_repr(b: &Branch) -> Scalar {
    let lo = b.domain.lo().value();
    if b.domain.is_full() {
        let t = b.t().value().clone();
        return if b.eps().is_preserving() {
            t
        } else {
            t + Scalar::one()
        };
    }
    let img = b.image();
    match b.eps() {
        Orientation::Preserving => img.lo().value() - lo,
        Orientation::Reversing => img.lo().value() + &(lo + &b.domain.length()),
    }
}

fn write_piece(out: &mut String, b: &Branch) {
    let lo = b.domain.lo().value();
    let hi = if b.domain.is_full() || b.domain.hi().is_zero() {
        lo + &b.domain.length()
    } else {
        b.domain.hi().value().clone()
    };
    let sign = if b.eps().is_preserving() { '+' } else { '-' };
    let _ = write!(out, "[{lo},{hi}) -> {sign}x");
    let t = offset_repr(b);
    if !t.is_zero() {
        let text = t.to_string();
        let _ = if text.starts_with('-') {
            write!(out, "{text}")
        } else {
            write!(out, "+{text}")
        };
    }
}

pub fn serialize_map(f: &MapClass) -> String {
    let mut out = String::new();
    for (i, b) in f.branches().iter().enumerate() {
        if i > 0 {
            out.push_str(" ; ");
        }
        write_piece(&mut out, b);
    }
    out
}

pub(crate) fn table_line(cur: &mut Cursor, field: FieldSpec) -> Result<(CirclePoint, CirclePoint)> {
    cur.expect('@')?;
    let x = scalar(cur, field)?;
    cur.expect_str("->")?;
    let y = scalar(cur, field)?;
    cur.expect_end()?;
    Ok((CirclePoint::new(x), CirclePoint::new(y)))
}

pub fn parse_lift(text: &str, field: FieldSpec) -> Result<Lift> {
    let mut cls = None;
    let mut table = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let body = strip_comment(line);
        if body.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(body, i + 1, 0);
        if cls.is_none() {
            let m = map(&mut cur, field)?;
            cur.expect_end()?;
            cls = Some(m);
        } else {
            let (x, y) = table_line(&mut cur, field)?;
            if table.insert(x, y).is_some() {
                return Err(cur.error("repeated point"));
            }
        }
    }
    let cls = cls.ok_or_else(|| Cursor::new("", 1, 0).error("expected a map"))?;
    Lift::new(cls, table)
}

pub fn serialize_lift(l: &Lift) -> String {
    let mut out = serialize_map(l.class());
    for (x, y) in l.table() {
        let _ = write!(out, "\n@ {x} -> {y}");
    }
    out
}

pub(crate) fn sided(cur: &mut Cursor, field: FieldSpec) -> Result<SidedPoint> {
    let x = scalar(cur, field)?;
    cur.expect('^')?;
    let side = match cur.bump() {
        Some('+') => Side::Plus,
        Some('-') => Side::Minus,
        _ => return Err(cur.error("expected '+' or '-' after '^'")),
    };
    Ok(SidedPoint::new(CirclePoint::new(x), side))
}

pub fn parse_sided_point(text: &str, field: FieldSpec) -> Result<SidedPoint> {
    let mut cur = Cursor::new(text, 1, 0);
    let p = sided(&mut cur, field)?;
    finish(&mut cur, p)
}

pub fn serialize_sided_point(p: &SidedPoint) -> String {
    p.to_string()
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{global_flip, make_132_flip, make_triple_flip, rotation};
    use crate::lifts::enumerate_hyperclean_lifts;

    fn q() -> FieldSpec {
        FieldSpec::default()
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("1/3", q()).unwrap(), Scalar::ratio(1, 3));
        assert_eq!(parse_scalar("-2/4", q()).unwrap(), Scalar::ratio(-1, 2));
        let s = parse_scalar("1/4-1/8*sqrt(2)", q()).unwrap();
        assert_eq!(s, Scalar::ratio(1, 4) - Scalar::sqrt_term(1, 8, 2));
        assert_eq!(parse_scalar(&s.to_string(), q()).unwrap(), s);
        assert_eq!(
            parse_scalar("sqrt(2) - 1", q()).unwrap(),
            Scalar::sqrt_term(1, 1, 2) - Scalar::one()
        );
        assert!(matches!(
            parse_scalar("sqrt(3)", q()),
            Err(Error::FieldMismatch(_))
        ));
        assert!(matches!(
            parse_scalar("1/0", q()),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_scalar("1/3 x", q()),
            Err(Error::Syntax { col: 5, .. })
        ));
    }

    #[test]
    fn irrational_offsets_roundtrip() {
        for t in ["sqrt(2)-1", "0-1/8*sqrt(2)", "1/2-1/8*sqrt(2)"] {
            let f = rotation(CirclePoint::new(parse_scalar(t, q()).unwrap()));
            assert_eq!(parse_map(&serialize_map(&f), q()).unwrap(), f, "{t}");
        }
        assert_eq!(
            serialize_map(&rotation(CirclePoint::new(
                parse_scalar("sqrt(2)-1", q()).unwrap()
            ))),
            "[0,1) -> +x-1+1/1*sqrt(2)"
        );
    }

    #[test]
    fn maps() {
        let f = parse_map("[0,1) -> +x+1/3", q()).unwrap();
        assert_eq!(f, rotation(CirclePoint::ratio(1, 3)));
        assert_eq!(serialize_map(&f), "[0,1) -> +x+1/3");
        let phi = "[0,1/4) -> +x+1/4 ; [1/4,1/2) -> +x-1/4 ; [1/2,1) -> +x";
        assert_eq!(serialize_map(&parse_map(phi, q()).unwrap()), phi);
        assert_eq!(serialize_map(&global_flip()), "[0,1) -> -x+1");
        let f132 = make_132_flip(&CirclePoint::ratio(1, 3), &CirclePoint::ratio(2, 3)).unwrap();
        assert_eq!(
            serialize_map(&f132),
            "[0,1/3) -> -x+1/3 ; [1/3,2/3) -> +x+1/3 ; [2/3,1) -> +x-1/3"
        );
        let t = make_triple_flip(
            &Scalar::ratio(1, 2),
            &Scalar::ratio(1, 4),
            &Scalar::ratio(1, 4),
        )
        .unwrap();
        assert_eq!(parse_map(&serialize_map(&t), q()).unwrap(), t);
        assert!(matches!(
            parse_map("[0,1/2) -> +x ; [1/4,1) -> +x", q()),
            Err(Error::Overlap(_))
        ));
        assert!(matches!(
            parse_map("[0,1/2) -> +y", q()),
            Err(Error::Syntax { col: 13, .. })
        ));
    }

    #[test]
    fn wrapping_and_irrational_pieces() {
        let text = "[1/4,3/4) -> +x+1/2 ; [3/4,1/4) -> -x+3/2";
        let f = parse_map(text, q()).unwrap();
        assert_eq!(f.eval(&CirclePoint::ratio(7, 8)), CirclePoint::ratio(5, 8));
        assert_eq!(parse_map(&serialize_map(&f), q()).unwrap(), f);
        let r = rotation(CirclePoint::new(Scalar::sqrt_term(1, 1, 2) - Scalar::one()));
        let g = f.conjugate_by(&r);
        let text = serialize_map(&g);
        assert!(text.contains("sqrt(2)"));
        assert_eq!(parse_map(&text, q()).unwrap(), g);
    }

    #[test]
    fn lifts_and_points() {
        let f = make_132_flip(&CirclePoint::ratio(1, 3), &CirclePoint::ratio(2, 3)).unwrap();
        for l in enumerate_hyperclean_lifts(&f).unwrap() {
            let text = serialize_lift(&l);
            assert_eq!(text.lines().count(), 4);
            assert_eq!(parse_lift(&text, q()).unwrap(), l);
        }
        let p = parse_sided_point("1/3^-", q()).unwrap();
        assert_eq!(p, SidedPoint::minus(CirclePoint::ratio(1, 3)));
        assert_eq!(serialize_sided_point(&p), "1/3^-");
        assert!(parse_sided_point("1/3", q()).is_err());
    }
}
