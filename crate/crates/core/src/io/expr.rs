//! Map and lift expressions: literals, names bound in a document, and builders.
//!
//! ```text
//! expr ::= map-literal | name | builder "(" args ")"
//! ```
//!
//! Map builders: `id`, `rot(t)`, `xchg(lo,hi,lo,hi)`, `prot(lo,hi,theta)`,
//! `flip`, `flip-on(lo,hi)`, `f132(a,b)`, `f3(l1,l2,l3)`,
//! `arbsmall(rho,eps,eta,lambda,lambda')`, `compose(e,...)`, `inv(e)`,
//! `pow(e,n)`, `conj(e,r)`.
//! Lift builders: `left(e)`, `right(e)`, `hc(e,k)`, `lcompose(l,...)`, `linv(l)`.

use std::collections::BTreeMap;

use super::cursor::Cursor;
use super::text::{map, scalar};
use crate::constructions as c;
use crate::error::{Error, Result};
use crate::lifts::{
    enumerate_hyperclean_lifts, left_lift, lift_compose, lift_invert, right_lift, Lift,
};
use crate::maps::{Interval, MapClass};
use crate::numeric::{CirclePoint, FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Map(MapClass),
    Lift(Lift),
}

impl Value {
    pub fn class(&self) -> &MapClass {
        match self {
            Value::Map(m) => m,
            Value::Lift(l) => l.class(),
        }
    }

    /// A lift: the stored one, else the left-continuous representative, else
    /// the first hyper-clean lift.
    pub fn to_lift(&self) -> Result<Lift> {
        match self {
            Value::Lift(l) => Ok(l.clone()),
            Value::Map(m) => default_lift(m),
        }
    }
}

pub fn default_lift(m: &MapClass) -> Result<Lift> {
    match left_lift(m) {
        Ok(l) => Ok(l),
        Err(_) => enumerate_hyperclean_lifts(m)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::NotBijective("no hyper-clean lift".into())),
    }
}

pub type Bindings = BTreeMap<String, Value>;

pub(crate) struct Parser<'a, 'b> {
    pub cur: Cursor<'a>,
    pub field: FieldSpec,
    pub env: &'b Bindings,
}

impl Parser<'_, '_> {
    fn scalar(&mut self) -> Result<Scalar> {
        scalar(&mut self.cur, self.field)
    }

    fn point(&mut self) -> Result<CirclePoint> {
        Ok(CirclePoint::new(self.scalar()?))
    }

    fn interval(&mut self) -> Result<Interval> {
        let at = self.cur.mark();
        let lo = self.scalar()?;
        self.cur.expect(',')?;
        let hi = self.scalar()?;
        if &hi - &lo == Scalar::one() {
            return Ok(Interval::full());
        }
        Interval::new(CirclePoint::new(lo), CirclePoint::new(hi))
            .map_err(|_| self.cur.error_at(at, "empty interval"))
    }

    fn comma(&mut self) -> Result<()> {
        self.cur.expect(',')
    }

    fn index(&mut self) -> Result<usize> {
        let d = self
            .cur
            .digits()
            .ok_or_else(|| self.cur.error("expected an index"))?;
        d.parse().map_err(|_| self.cur.error("index too large"))
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        let mut out = vec![item(self)?];
        while self.cur.eat(',') {
            out.push(item(self)?);
        }
        Ok(out)
    }

    pub fn value(&mut self) -> Result<Value> {
        if self.cur.peek() == Some('[') {
            return Ok(Value::Map(map(&mut self.cur, self.field)?));
        }
        let at = self.cur.mark();
        let name = self
            .cur
            .ident()
            .ok_or_else(|| self.cur.error("expected a map expression"))?;
        if !self.cur.eat('(') {
            return match name.as_str() {
                "id" => Ok(Value::Map(MapClass::identity())),
                "flip" => Ok(Value::Map(c::global_flip())),
                _ => self
                    .env
                    .get(&name)
                    .cloned()
                    .ok_or_else(|| self.cur.error_at(at, format!("unknown name '{name}'"))),
            };
        }
        let v = match name.as_str() {
            "rot" => Value::Map(c::rotation(self.point()?)),
            "xchg" => {
                let i = self.interval()?;
                self.comma()?;
                let j = self.interval()?;
                Value::Map(c::exchange(&i, &j)?)
            }
            "prot" => {
                let i = self.interval()?;
                self.comma()?;
                let theta = self.scalar()?;
                Value::Map(c::partial_rotation(&i, &theta))
            }
            "flip-on" => Value::Map(c::flip_on(&self.interval()?)),
            "f132" => {
                let a = self.point()?;
                self.comma()?;
                let b = self.point()?;
                Value::Map(c::make_132_flip(&a, &b)?)
            }
            "f3" => {
                let l = self.list(|p| p.scalar())?;
                if l.len() != 3 {
                    return Err(self.cur.error("f3 takes three lengths"));
                }
                Value::Map(c::make_triple_flip(&l[0], &l[1], &l[2])?)
            }
            "arbsmall" => {
                let rho = self.point()?;
                self.comma()?;
                let eps = self.scalar()?;
                self.comma()?;
                let eta = self.scalar()?;
                self.comma()?;
                let lambda = self.point()?;
                self.comma()?;
                let lambda_prime = self.point()?;
                Value::Map(c::arbsmall(&rho, &eps, &eta, &lambda, &lambda_prime)?)
            }
            "compose" => {
                let fs = self.list(|p| p.map_value())?;
                Value::Map(
                    fs.iter()
                        .fold(MapClass::identity(), |acc, f| acc.compose(f)),
                )
            }
            "inv" => Value::Map(self.map_value()?.invert()),
            "pow" => {
                let f = self.map_value()?;
                self.comma()?;
                let neg = self.cur.eat('-');
                let n = self.index()? as i64;
                Value::Map(f.pow(if neg { -n } else { n }))
            }
            "conj" => {
                let f = self.map_value()?;
                self.comma()?;
                let r = self.map_value()?;
                Value::Map(f.conjugate_by(&r))
            }
            "left" => Value::Lift(left_lift(&self.map_value()?)?),
            "right" => Value::Lift(right_lift(&self.map_value()?)?),
            "hc" => {
                let f = self.map_value()?;
                self.comma()?;
                let k = self.index()?;
                let all = enumerate_hyperclean_lifts(&f)?;
                let n = all.len();
                Value::Lift(all.into_iter().nth(k).ok_or_else(|| {
                    Error::BadParameters(format!(
                        "lift index {k} out of range ({n} hyper-clean lifts)"
                    ))
                })?)
            }
            "lcompose" => {
                let ls = self.list(|p| p.value()?.to_lift())?;
                Value::Lift(
                    ls.iter()
                        .fold(Lift::identity(), |acc, l| lift_compose(&acc, l)),
                )
            }
            "linv" => Value::Lift(lift_invert(&self.value()?.to_lift()?)),
            _ => return Err(self.cur.error_at(at, format!("unknown builder '{name}'"))),
        };
        self.cur.expect(')')?;
        Ok(v)
    }

    fn map_value(&mut self) -> Result<MapClass> {
        Ok(self.value()?.class().clone())
    }
}

pub fn parse_value(text: &str, field: FieldSpec, env: &Bindings) -> Result<Value> {
    let mut p = Parser {
        cur: Cursor::new(text, 1, 0),
        field,
        env,
    };
    let v = p.value()?;
    p.cur.expect_end()?;
    Ok(v)
}

pub fn parse_map_expr(text: &str, field: FieldSpec, env: &Bindings) -> Result<MapClass> {
    Ok(parse_value(text, field, env)?.class().clone())
}

pub fn parse_lift_expr(text: &str, field: FieldSpec, env: &Bindings) -> Result<Lift> {
    parse_value(text, field, env)?.to_lift()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{exchange, make_132_flip, rotation};
    use crate::io::text::serialize_map;

    fn eval(text: &str) -> Result<MapClass> {
        parse_map_expr(text, FieldSpec::default(), &Bindings::new())
    }

    #[test]
    fn builders() {
        assert_eq!(
            eval("rot(1/3)").unwrap(),
            rotation(CirclePoint::ratio(1, 3))
        );
        let x = eval("xchg(0,1/4, 1/4,1/2)").unwrap();
        assert_eq!(
            x,
            exchange(
                &Interval::ratio((0, 1), (1, 4)).unwrap(),
                &Interval::ratio((1, 4), (1, 2)).unwrap()
            )
            .unwrap()
        );
        assert!(eval("pow(prot(0,1/2,1/8), 4)").unwrap().is_identity());
        assert!(eval("compose(flip, flip)").unwrap().is_identity());
        assert_eq!(
            eval("f132(1/3,2/3)").unwrap(),
            make_132_flip(&CirclePoint::ratio(1, 3), &CirclePoint::ratio(2, 3)).unwrap()
        );
        assert!(eval("compose(inv(rot(1/5)), rot(1/5))")
            .unwrap()
            .is_identity());
        let lit = eval(&format!("compose({}, rot(0))", serialize_map(&x))).unwrap();
        assert_eq!(lit, x);
        assert!(eval("rot(sqrt(2)-1)").is_ok());
        assert!(matches!(eval("nope(1)"), Err(Error::Syntax { col: 1, .. })));
        assert!(matches!(eval("rot(1/3"), Err(Error::Syntax { .. })));
        assert!(matches!(
            eval("xchg(0,1/4,1/4,1)"),
            Err(Error::LengthMismatch(_))
        ));
    }

    #[test]
    fn lifts_and_names() {
        let mut env = Bindings::new();
        env.insert("f".into(), Value::Map(eval("f132(1/3,2/3)").unwrap()));
        let field = FieldSpec::default();
        let q = parse_lift_expr("hc(f, 0)", field, &env).unwrap();
        assert_eq!(q.class(), env["f"].class());
        let id = parse_lift_expr("lcompose(hc(f,0), hc(f,1))", field, &env).unwrap();
        assert!(id.is_identity());
        assert!(parse_lift_expr("left(f)", field, &env).is_err());
        assert!(parse_lift_expr("hc(f, 2)", field, &env).is_err());
        assert!(matches!(
            parse_map_expr("g", field, &env),
            Err(Error::Syntax { .. })
        ));
    }
}
