//! Flat text documents binding names to maps and lifts.
//!
//! ```text
//! # comment
//! field 2
//! phi = [0,1/4) -> +x+1/4 ; [1/4,1/2) -> +x-1/4 ; [1/2,1) -> +x
//! r = rot(1/3)
//! lift q = [0,1/3) -> -x+1/3 ; [1/3,2/3) -> +x+1/3 ; [2/3,1) -> +x-1/3
//! @ 0 -> 1/3
//! @ 1/3 -> 2/3
//! @ 2/3 -> 0
//! ```
//!
//! `@` lines attach table entries to the lift bound just before them. The
//! right-hand side of any binding may be an expression over earlier names.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::cursor::Cursor;
use super::expr::{Bindings, Parser, Value};
use super::text::{serialize_lift, serialize_map, strip_comment, table_line};
use crate::error::{Error, Result};
use crate::lifts::Lift;
use crate::numeric::{CirclePoint, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub field: FieldSpec,
    /// Bindings in source order.
    pub order: Vec<String>,
    pub bindings: Bindings,
}

impl Document {
    pub fn new(field: FieldSpec) -> Self {
        Document {
            field,
            order: Vec::new(),
            bindings: BTreeMap::new(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.bindings.get(name)
    }

    pub fn insert(&mut self, name: &str, v: Value) -> Result<()> {
        if self.bindings.contains_key(name) {
            return Err(Error::BadParameters(format!("duplicate binding '{name}'")));
        }
        self.order.push(name.to_string());
        self.bindings.insert(name.to_string(), v);
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Value)> {
        self.order.iter().map(|n| (n.as_str(), &self.bindings[n]))
    }
}

/// A lift binding whose table is still being read.
struct PendingLift {
    name: String,
    line: usize,
    value: Value,
    table: BTreeMap<CirclePoint, CirclePoint>,
}

/// Parses a document; `default_field` applies when there is no `field` line.
pub fn parse_document(text: &str, default_field: FieldSpec) -> Result<Document> {
    let mut doc = Document::new(default_field);
    let mut seen_binding = false;
    let mut pending: Option<PendingLift> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(body, line, 0);
        if cur.peek() == Some('@') {
            let Some(p) = pending.as_mut() else {
                return Err(cur.error("'@' line without a preceding lift binding"));
            };
            let (x, y) = table_line(&mut cur, doc.field)?;
            if p.table.insert(x, y).is_some() {
                return Err(cur.error_at(0, "repeated point"));
            }
            continue;
        }
        flush(&mut doc, pending.take())?;
        let at = cur.mark();
        let word = cur.ident().ok_or_else(|| cur.error("expected a binding"))?;
        if word == "field" {
            if seen_binding {
                return Err(cur.error_at(at, "'field' must precede all bindings"));
            }
            let m = cur
                .digits()
                .ok_or_else(|| cur.error("expected the radicand"))?;
            let m: u32 = m.parse().map_err(|_| cur.error("radicand too large"))?;
            cur.expect_end()?;
            doc.field = FieldSpec::new(m)?;
            continue;
        }
        let is_lift = word == "lift";
        let name = if is_lift {
            cur.ident().ok_or_else(|| cur.error("expected a name"))?
        } else {
            word
        };
        if doc.bindings.contains_key(&name) {
            return Err(cur.error_at(at, format!("duplicate binding '{name}'")));
        }
        cur.expect('=')?;
        let mut p = Parser {
            cur,
            field: doc.field,
            env: &doc.bindings,
        };
        let value = p.value()?;
        p.cur.expect_end()?;
        seen_binding = true;
        if is_lift {
            pending = Some(PendingLift {
                name,
                line,
                value,
                table: BTreeMap::new(),
            });
        } else {
            doc.insert(&name, value)?;
        }
    }
    flush(&mut doc, pending)?;
    Ok(doc)
}

fn flush(doc: &mut Document, pending: Option<PendingLift>) -> Result<()> {
    let Some(p) = pending else {
        return Ok(());
    };
    let lift = match (&p.value, p.table.is_empty()) {
        (Value::Lift(l), true) => l.clone(),
        (v, _) => {
            let mut table = match v {
                Value::Lift(l) => l.table().clone(),
                Value::Map(_) => BTreeMap::new(),
            };
            table.extend(p.table);
            Lift::new(v.class().clone(), table).map_err(|e| match e {
                Error::InvalidLift(m) | Error::NotBijective(m) => {
                    Error::InvalidLift(format!("line {}: {m}", p.line))
                }
                other => other,
            })?
        }
    };
    doc.insert(&p.name, Value::Lift(lift))
}

pub fn serialize_document(doc: &Document) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field {}", doc.field.m());
    for (name, v) in doc.iter() {
        match v {
            Value::Map(m) => {
                let _ = writeln!(out, "{name} = {}", serialize_map(m));
            }
            Value::Lift(l) => {
                let _ = writeln!(out, "lift {name} = {}", serialize_lift(l));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifts::lift_order;

    const DOC: &str = "\
# the 132-flip and one of its lifts
field 2
f = [0,1/3) -> -x+1/3 ; [1/3,2/3) -> +x+1/3 ; [2/3,1) -> +x-1/3
r = rot(1/3)
lift q = f
@ 0 -> 1/3   # trailing comment
@ 1/3 -> 2/3
@ 2/3 -> 0
lift h = hc(f, 1)
";

    #[test]
    fn parse_and_roundtrip() {
        let doc = parse_document(DOC, FieldSpec::rationals()).unwrap();
        assert_eq!(doc.field.m(), 2);
        assert_eq!(doc.order, vec!["f", "r", "q", "h"]);
        let Value::Lift(q) = doc.get("q").unwrap() else {
            panic!()
        };
        assert_eq!(lift_order(q, 10), Some(6));
        let text = serialize_document(&doc);
        assert_eq!(parse_document(&text, FieldSpec::rationals()).unwrap(), doc);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_document("f = rot(1/3)\nf = rot(1/4)\n", FieldSpec::default()).unwrap_err();
        assert!(matches!(
            err,
            Error::Syntax {
                line: 2,
                col: 1,
                ..
            }
        ));
        let err = parse_document("@ 0 -> 0\n", FieldSpec::default()).unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }));
        let err = parse_document("f = rot(1/3)\nfield 3\n", FieldSpec::default()).unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }));
        let err = parse_document("g = [0,1/2) -> +x ; [1/2,1) -> +y\n", FieldSpec::default())
            .unwrap_err();
        assert!(matches!(
            err,
            Error::Syntax {
                line: 1,
                col: 33,
                ..
            }
        ));
        let err =
            parse_document("lift q = f132(1/3,2/3)\n@ 0 -> 0\n", FieldSpec::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidLift(_)));
    }
}
