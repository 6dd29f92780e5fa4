//! The series interchange format.
//!
//! ```text
//! {"arity":n,
//!  "rect":{"qMin":"a/b","qMax":"a/b","windows":[["lo","hi"],...]},
//!  "terms":[{"q":"a/b","x":["a/b",...],"c":"p/q"},...]}
//! ```
//!
//! Rationals are lowest-term strings (`"5"`, `"-25/24"`); terms are sorted
//! by (q-exponent, x-exponents) ascending. Emission is hand-rolled so the
//! byte layout is stable for golden files. A reparsed series carries fully
//! conservative support bookkeeping: exactness inside the rectangle is
//! retained, everything else is forgotten.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::Value;

use super::{Edges, Floor, MSeries, Monomial, Rect, Window};
use crate::error::Error;
use crate::rat::Rat;

pub(crate) fn write_rat(out: &mut String, r: &Rat) {
    out.push('"');
    let _ = write!(out, "{r}");
    out.push('"');
}

pub(crate) fn write_monomial(out: &mut String, m: &Monomial) {
    out.push_str("{\"q\":");
    write_rat(out, &m.q);
    out.push_str(",\"x\":[");
    for (i, e) in m.xs.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_rat(out, e);
    }
    out.push_str("]}");
}

pub(crate) fn write_rect(out: &mut String, r: &Rect) {
    out.push_str("{\"qMin\":");
    write_rat(out, &r.q_min);
    out.push_str(",\"qMax\":");
    write_rat(out, &r.q_max);
    out.push_str(",\"windows\":[");
    for (i, w) in r.windows.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('[');
        write_rat(out, &w.lo);
        out.push(',');
        write_rat(out, &w.hi);
        out.push(']');
    }
    out.push_str("]}");
}

impl MSeries {
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{{\"arity\":{},\"rect\":", self.arity());
        write_rect(&mut out, self.validity());
        out.push_str(",\"terms\":[");
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("{\"q\":");
            write_rat(&mut out, &m.q);
            out.push_str(",\"x\":[");
            for (j, e) in m.xs.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                write_rat(&mut out, e);
            }
            out.push_str("],\"c\":");
            write_rat(&mut out, c);
            out.push('}');
        }
        out.push_str("]}");
        out
    }

    pub fn from_json(text: &str) -> Result<MSeries, Error> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::BadJson(e.to_string()))?;
        MSeries::from_json_value(&v)
    }

    pub fn from_json_value(v: &Value) -> Result<MSeries, Error> {
        let bad = |msg: &str| Error::BadJson(msg.to_string());
        let arity = v
            .get("arity")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing arity"))? as usize;
        if arity > 3 {
            return Err(bad("arity above 3"));
        }
        let rect = parse_rect(v.get("rect").ok_or_else(|| bad("missing rect"))?, arity)?;
        let mut terms = BTreeMap::new();
        let list = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing terms"))?;
        for t in list {
            let (m, c) = parse_term(t, arity)?;
            if !rect.contains(&m) {
                return Err(bad("term outside the rectangle"));
            }
            if !c.is_zero() && terms.insert(m, c).is_some() {
                return Err(bad("duplicate term"));
            }
        }
        Ok(MSeries::from_raw_parts(
            arity,
            terms,
            rect,
            Floor::NegInf,
            vec![Edges::UNKNOWN; arity],
            vec![None; arity],
        ))
    }
}

pub(crate) fn parse_rat_value(v: &Value) -> Result<Rat, Error> {
    match v {
        Value::String(s) => Rat::parse(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_int(i))
            } else {
                Err(Error::BadRational(n.to_string()))
            }
        }
        other => Err(Error::BadRational(other.to_string())),
    }
}

pub(crate) fn parse_rect(v: &Value, arity: usize) -> Result<Rect, Error> {
    let bad = |msg: &str| Error::BadJson(msg.to_string());
    let q_min = parse_rat_value(v.get("qMin").ok_or_else(|| bad("rect missing qMin"))?)?;
    let q_max = parse_rat_value(v.get("qMax").ok_or_else(|| bad("rect missing qMax"))?)?;
    if q_min > q_max {
        return Err(bad("rect has qMin above qMax"));
    }
    let ws = v
        .get("windows")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("rect missing windows"))?;
    if ws.len() != arity {
        return Err(bad("window count does not match arity"));
    }
    let mut windows = Vec::with_capacity(arity);
    for w in ws {
        let pair = w.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("bad window"))?;
        let lo = parse_rat_value(&pair[0])?;
        let hi = parse_rat_value(&pair[1])?;
        if lo > hi {
            return Err(bad("window lo above hi"));
        }
        windows.push(Window::new(lo, hi));
    }
    Ok(Rect::new(q_min, q_max, windows))
}

pub(crate) fn parse_monomial(v: &Value, arity: usize) -> Result<Monomial, Error> {
    let bad = |msg: &str| Error::BadJson(msg.to_string());
    let q = parse_rat_value(v.get("q").ok_or_else(|| bad("term missing q"))?)?;
    let xs = v
        .get("x")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("term missing x"))?;
    if xs.len() != arity {
        return Err(bad("x-exponent count does not match arity"));
    }
    let xs = xs.iter().map(parse_rat_value).collect::<Result<Vec<_>, _>>()?;
    Ok(Monomial::new(q, xs))
}

fn parse_term(v: &Value, arity: usize) -> Result<(Monomial, Rat), Error> {
    let bad = |msg: &str| Error::BadJson(msg.to_string());
    let m = parse_monomial(v, arity)?;
    let c = parse_rat_value(v.get("c").ok_or_else(|| bad("term missing c"))?)?;
    Ok((m, c))
}
