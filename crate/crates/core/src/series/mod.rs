//! Truncated multivariate Laurent series with exact rational coefficients.
//!
//! An [`MSeries`] stores finitely many terms of a formal series in `q` and
//! up to three auxiliary variables, on a rational exponent lattice. The
//! stored data is tagged with a validity [`Rect`]: inside the rectangle
//! the stored coefficients are asserted to equal the true coefficients of
//! the represented series; outside it nothing is claimed. Every operation
//! propagates validity conservatively, so a coefficient read inside the
//! rectangle of any derived series is exact.
//!
//! Two refinements travel with the data and make the conservative rules
//! usable in practice:
//!
//! * per-variable *completeness* flags ([`Edges`]): a side is complete
//!   when the true series has no terms beyond that window edge with
//!   q-exponent at most `qMax`, so nothing relevant was cut away there;
//! * q-support floors ([`Floor`], [`RowFloor`]): certified lower bounds
//!   on the q-exponents of the true series, globally and per row.
//!
//! Neither refinement appears in the serialized form; a reparsed series
//! carries fully conservative flags.

mod json;
mod mul;
mod products;
mod rowfloor;

pub use products::{geometric_inverse, pochhammer};
pub use rowfloor::{Floor, RowFloor};

pub(crate) use json::{parse_monomial, parse_rat_value, write_monomial, write_rat, write_rect};

use std::collections::BTreeMap;

use crate::error::Error;
use crate::rat::Rat;

/// Exponent vector of a single term: one q-exponent plus one rational
/// exponent per variable. Ordering is lexicographic by (q, x-exponents),
/// which fixes term order in serialized output and in difference reports.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub q: Rat,
    pub xs: Vec<Rat>,
}

impl Monomial {
    pub fn new(q: Rat, xs: Vec<Rat>) -> Self {
        Monomial { q, xs }
    }

    pub fn unit(arity: usize) -> Self {
        Monomial {
            q: Rat::zero(),
            xs: vec![Rat::zero(); arity],
        }
    }

    /// q^e with all x-exponents zero.
    pub fn q_power(e: Rat, arity: usize) -> Self {
        Monomial {
            q: e,
            xs: vec![Rat::zero(); arity],
        }
    }

    /// x_var^e with zero q-exponent.
    pub fn x_power(var: usize, e: Rat, arity: usize) -> Self {
        let mut xs = vec![Rat::zero(); arity];
        xs[var] = e;
        Monomial { q: Rat::zero(), xs }
    }

    pub fn arity(&self) -> usize {
        self.xs.len()
    }

    pub fn is_unit(&self) -> bool {
        self.q.is_zero() && self.xs.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial {
            q: &self.q + &other.q,
            xs: self
                .xs
                .iter()
                .zip(&other.xs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn pow(&self, n: u64) -> Monomial {
        let k = Rat::from_int(n as i64);
        Monomial {
            q: &self.q * &k,
            xs: self.xs.iter().map(|e| e * &k).collect(),
        }
    }

    pub fn inverse(&self) -> Monomial {
        Monomial {
            q: -&self.q,
            xs: self.xs.iter().map(|e| -e).collect(),
        }
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "q^{}", self.q)?;
        for (i, e) in self.xs.iter().enumerate() {
            write!(f, " x{}^{}", i + 1, e)?;
        }
        Ok(())
    }
}

/// Closed interval of exponents for one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: Rat,
    pub hi: Rat,
}

impl Window {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "window lo must not exceed hi");
        Window { lo, hi }
    }

    /// Symmetric window `[-w, w]`.
    pub fn symmetric(w: i64) -> Self {
        Window::new(Rat::from_int(-w.abs()), Rat::from_int(w.abs()))
    }

    pub fn point(e: Rat) -> Self {
        Window::new(e.clone(), e)
    }

    pub fn contains(&self, e: &Rat) -> bool {
        self.lo <= *e && *e <= self.hi
    }

    pub fn intersect(&self, other: &Window) -> Option<Window> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then(|| Window::new(lo, hi))
    }

    pub fn translate(&self, d: &Rat) -> Window {
        Window::new(&self.lo + d, &self.hi + d)
    }
}

/// The rectangle on which a series' stored coefficients are exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rect {
    pub q_min: Rat,
    pub q_max: Rat,
    pub windows: Vec<Window>,
}

impl Rect {
    pub fn new(q_min: Rat, q_max: Rat, windows: Vec<Window>) -> Self {
        assert!(q_min <= q_max, "qMin must not exceed qMax");
        Rect { q_min, q_max, windows }
    }

    /// `[0, q_max]` with the same symmetric window `[-w, w]` on every variable.
    pub fn upto(q_max: Rat, w: i64, arity: usize) -> Self {
        Rect::new(Rat::zero(), q_max, vec![Window::symmetric(w); arity])
    }

    pub fn arity(&self) -> usize {
        self.windows.len()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        if m.q < self.q_min || m.q > self.q_max {
            return false;
        }
        m.xs.len() == self.windows.len()
            && m.xs.iter().zip(&self.windows).all(|(e, w)| w.contains(e))
    }

    pub fn intersect(&self, other: &Rect) -> Option<Rect> {
        if self.arity() != other.arity() {
            return None;
        }
        let q_min = self.q_min.clone().max(other.q_min.clone());
        let q_max = self.q_max.clone().min(other.q_max.clone());
        if q_min > q_max {
            return None;
        }
        let windows = self
            .windows
            .iter()
            .zip(&other.windows)
            .map(|(a, b)| a.intersect(b))
            .collect::<Option<Vec<_>>>()?;
        Some(Rect::new(q_min, q_max, windows))
    }

    pub fn is_subset_of(&self, outer: &Rect) -> bool {
        self.arity() == outer.arity()
            && outer.q_min <= self.q_min
            && self.q_max <= outer.q_max
            && self
                .windows
                .iter()
                .zip(&outer.windows)
                .all(|(inner, out)| out.lo <= inner.lo && inner.hi <= out.hi)
    }

    pub fn translate(&self, m: &Monomial) -> Rect {
        debug_assert_eq!(self.arity(), m.arity());
        Rect::new(
            &self.q_min + &m.q,
            &self.q_max + &m.q,
            self.windows
                .iter()
                .zip(&m.xs)
                .map(|(w, d)| w.translate(d))
                .collect(),
        )
    }
}

/// Completeness of one variable's window edges: a side is complete when
/// the true series has no terms beyond that edge with q-exponent <= qMax.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edges {
    pub complete_lo: bool,
    pub complete_hi: bool,
}

impl Edges {
    pub const COMPLETE: Edges = Edges { complete_lo: true, complete_hi: true };
    pub const UNKNOWN: Edges = Edges { complete_lo: false, complete_hi: false };
}

/// Outcome of an exact comparison on a rectangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    FirstDifference {
        monomial: Monomial,
        left: Rat,
        right: Rat,
    },
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }
}

/// A truncated formal series: finitely many exact terms plus the
/// rectangle on which they are the truth.
#[derive(Clone, Debug)]
pub struct MSeries {
    arity: usize,
    terms: BTreeMap<Monomial, Rat>,
    validity: Rect,
    q_floor: Floor,
    edges: Vec<Edges>,
    row_floors: Vec<Option<RowFloor>>,
}

impl MSeries {
    /// The genuinely zero series, exact everywhere inside `rect`.
    pub fn zero(rect: Rect) -> Self {
        let arity = rect.arity();
        MSeries {
            arity,
            terms: BTreeMap::new(),
            validity: rect,
            q_floor: Floor::PosInf,
            edges: vec![Edges::COMPLETE; arity],
            row_floors: vec![None; arity],
        }
    }

    /// The constant series 1 on `rect` (which must contain the unit monomial).
    pub fn one(rect: Rect) -> Self {
        let arity = rect.arity();
        let mut s = MSeries::zero(rect);
        let unit = Monomial::unit(arity);
        assert!(s.validity.contains(&unit), "rect must contain the unit monomial");
        s.terms.insert(unit, Rat::one());
        s.q_floor = Floor::Finite(Rat::zero());
        s.row_floors = vec![Some(RowFloor::zero()); arity];
        s
    }

    /// A single monomial with coefficient `c`.
    pub fn monomial(m: Monomial, c: Rat, rect: Rect) -> Self {
        let arity = rect.arity();
        assert_eq!(m.arity(), arity);
        assert!(rect.contains(&m), "rect must contain the monomial");
        let mut s = MSeries::zero(rect);
        if !c.is_zero() {
            s.q_floor = Floor::Finite(m.q.clone());
            s.row_floors = (0..arity)
                .map(|v| {
                    Some(RowFloor::zero().translate(&m.q, &m.xs[v]))
                })
                .collect();
            s.terms.insert(m, c);
        }
        s
    }

    /// Assemble a series from parts whose validity the caller has derived.
    ///
    /// Callers own the exactness argument: every closed-form enumeration in
    /// this crate that claims a rectangle documents why the claim holds.
    pub(crate) fn from_raw_parts(
        arity: usize,
        terms: BTreeMap<Monomial, Rat>,
        validity: Rect,
        q_floor: Floor,
        edges: Vec<Edges>,
        row_floors: Vec<Option<RowFloor>>,
    ) -> Self {
        debug_assert_eq!(validity.arity(), arity);
        debug_assert_eq!(edges.len(), arity);
        debug_assert_eq!(row_floors.len(), arity);
        debug_assert!(terms.iter().all(|(m, c)| validity.contains(m) && !c.is_zero()));
        MSeries { arity, terms, validity, q_floor, edges, row_floors }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn validity(&self) -> &Rect {
        &self.validity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_data_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Result<Rat, Error> {
        if !self.validity.contains(m) {
            return Err(Error::OutsideValidity(m.to_string()));
        }
        Ok(self.terms.get(m).cloned().unwrap_or_else(Rat::zero))
    }

    pub fn q_floor(&self) -> &Floor {
        &self.q_floor
    }

    pub(crate) fn edges(&self) -> &[Edges] {
        &self.edges
    }

    pub(crate) fn row_floor(&self, var: usize) -> Option<&RowFloor> {
        self.row_floors[var].as_ref()
    }

    pub(crate) fn set_row_floor(&mut self, var: usize, f: Option<RowFloor>) {
        self.row_floors[var] = f;
    }

    pub(crate) fn set_q_floor(&mut self, f: Floor) {
        self.q_floor = f;
    }

    pub(crate) fn set_edges(&mut self, var: usize, e: Edges) {
        self.edges[var] = e;
    }

    fn check_arity(&self, other: &MSeries) -> Result<(), Error> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        Ok(())
    }

    /// Stored extreme x-exponents for one variable, if any term is stored.
    pub(crate) fn stored_x_range(&self, var: usize) -> Option<(Rat, Rat)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.xs[var].clone();
        let mut hi = lo.clone();
        for m in it {
            let e = &m.xs[var];
            if *e < lo {
                lo = e.clone();
            }
            if *e > hi {
                hi = e.clone();
            }
        }
        Some((lo, hi))
    }

    pub fn add(&self, other: &MSeries) -> Result<MSeries, Error> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &MSeries) -> Result<MSeries, Error> {
        self.combine(other, true)
    }

    fn combine(&self, other: &MSeries, negate: bool) -> Result<MSeries, Error> {
        self.check_arity(other)?;
        let rect = self
            .validity
            .intersect(&other.validity)
            .ok_or(Error::EmptyRect)?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if rect.contains(m) {
                terms.insert(m.clone(), c.clone());
            }
        }
        for (m, c) in &other.terms {
            if !rect.contains(m) {
                continue;
            }
            let c = if negate { -c } else { c.clone() };
            match terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += &c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        let edges = (0..self.arity)
            .map(|v| {
                let w = &rect.windows[v];
                let lost = |s: &MSeries, side_hi: bool| {
                    s.terms.iter().any(|(m, _)| {
                        m.q <= rect.q_max
                            && if side_hi { m.xs[v] > w.hi } else { m.xs[v] < w.lo }
                    })
                };
                Edges {
                    complete_lo: self.edges[v].complete_lo
                        && other.edges[v].complete_lo
                        && !lost(self, false)
                        && !lost(other, false),
                    complete_hi: self.edges[v].complete_hi
                        && other.edges[v].complete_hi
                        && !lost(self, true)
                        && !lost(other, true),
                }
            })
            .collect();
        let row_floors = (0..self.arity)
            .map(|v| match (&self.row_floors[v], &other.row_floors[v]) {
                (Some(f), Some(g)) => f.lower_min(g),
                _ => None,
            })
            .collect();
        Ok(MSeries {
            arity: self.arity,
            terms,
            validity: rect,
            q_floor: self.q_floor.clone().min(other.q_floor.clone()),
            edges,
            row_floors,
        })
    }

    pub fn negate(&self) -> MSeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MSeries {
        if c.is_zero() {
            return MSeries::zero(self.validity.clone());
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    /// Multiply every term (and the rectangle) by a monomial.
    pub fn monomial_shift(&self, m: &Monomial) -> MSeries {
        assert_eq!(m.arity(), self.arity);
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.mul(m), c.clone()))
            .collect();
        let row_floors = (0..self.arity)
            .map(|v| {
                self.row_floors[v]
                    .as_ref()
                    .map(|f| f.translate(&m.q, &m.xs[v]))
            })
            .collect();
        MSeries {
            arity: self.arity,
            terms,
            validity: self.validity.translate(m),
            q_floor: self.q_floor.shift(&m.q),
            edges: self.edges.clone(),
            row_floors,
        }
    }

    /// Restrict the validity claim to `rect` (intersected), dropping
    /// terms that fall outside.
    pub fn restrict(&self, rect: &Rect) -> Result<MSeries, Error> {
        if rect.arity() != self.arity {
            return Err(Error::ArityMismatch(self.arity, rect.arity()));
        }
        let new = self.validity.intersect(rect).ok_or(Error::EmptyRect)?;
        let mut out = self.clone();
        out.terms.retain(|m, _| new.contains(m));
        for v in 0..self.arity {
            let w = &new.windows[v];
            let lost_lo = self
                .terms
                .iter()
                .any(|(m, _)| m.q <= new.q_max && m.xs[v] < w.lo);
            let lost_hi = self
                .terms
                .iter()
                .any(|(m, _)| m.q <= new.q_max && m.xs[v] > w.hi);
            out.edges[v] = Edges {
                complete_lo: self.edges[v].complete_lo && !lost_lo,
                complete_hi: self.edges[v].complete_hi && !lost_hi,
            };
        }
        out.validity = new;
        Ok(out)
    }

    /// Substitute `x_var -> x_var * q^t`: each term `q^a x^b` becomes
    /// `q^{a + t b} x^b`. The output rectangle is the largest one whose
    /// preimage lies in the input rectangle.
    pub fn shear(&self, var: usize, t: &Rat) -> Result<MSeries, Error> {
        if var >= self.arity {
            return Err(Error::BadVariable(var, self.arity));
        }
        if t.is_zero() {
            return Ok(self.clone());
        }
        let w = &self.validity.windows[var];
        let (shift_min, shift_max) = {
            let a = t * &w.lo;
            let b = t * &w.hi;
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        };
        let q_max = &self.validity.q_max + &shift_min;
        // rows certified zero below their floor stay fully known below
        // qMin; without that certificate the preimage rule applies
        let rows_known_down = self.row_floors[var]
            .as_ref()
            .map(|f| f.min_on(&w.lo, &w.hi) >= self.validity.q_min)
            .unwrap_or(false);
        let q_min = if rows_known_down {
            &self.validity.q_min + &shift_min
        } else {
            &self.validity.q_min + &shift_max
        };
        if q_min > q_max {
            return Err(Error::EmptyRect);
        }
        let rect = Rect::new(q_min, q_max, self.validity.windows.clone());
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut k = m.clone();
            k.q = &k.q + &(t * &m.xs[var]);
            if rect.contains(&k) {
                terms.insert(k, c.clone());
            }
        }
        let mut edges = self.edges.clone();
        for (v, e) in edges.iter_mut().enumerate() {
            if v == var {
                // beyond-hi rows keep escaping in q only when the shear
                // pushes them further up, and mirrored for the low side
                e.complete_hi = e.complete_hi && !t.is_negative();
                e.complete_lo = e.complete_lo && !t.is_positive();
            } else {
                *e = Edges::UNKNOWN;
            }
        }
        let row_floors: Vec<Option<RowFloor>> = (0..self.arity)
            .map(|v| {
                if v == var {
                    self.row_floors[v].as_ref().map(|f| f.shear(t))
                } else {
                    None
                }
            })
            .collect();
        let q_floor = row_floors[var]
            .as_ref()
            .map(|f| f.global_min())
            .unwrap_or(Floor::NegInf);
        let q_floor = if self.terms.is_empty() && self.q_floor == Floor::PosInf {
            Floor::PosInf
        } else {
            q_floor
        };
        Ok(MSeries {
            arity: self.arity,
            terms,
            validity: rect,
            q_floor,
            edges,
            row_floors,
        })
    }

    /// All terms with the given exact exponent of one variable, as a
    /// series in the remaining variables.
    pub fn row_extract(&self, var: usize, e: &Rat) -> Result<MSeries, Error> {
        if var >= self.arity {
            return Err(Error::BadVariable(var, self.arity));
        }
        if !self.validity.windows[var].contains(e) {
            return Err(Error::OutsideWindow(e.to_string(), var));
        }
        let mut windows = self.validity.windows.clone();
        windows.remove(var);
        let rect = Rect::new(
            self.validity.q_min.clone(),
            self.validity.q_max.clone(),
            windows,
        );
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.xs[var] == *e {
                let mut xs = m.xs.clone();
                xs.remove(var);
                terms.insert(Monomial::new(m.q.clone(), xs), c.clone());
            }
        }
        let mut edges = self.edges.clone();
        edges.remove(var);
        let mut row_floors = self.row_floors.clone();
        let extracted = row_floors.remove(var);
        let q_floor = match extracted {
            Some(f) => self.q_floor.clone().min(Floor::PosInf).max_with(f.eval(e)),
            None => self.q_floor.clone(),
        };
        Ok(MSeries {
            arity: self.arity - 1,
            terms,
            validity: rect,
            q_floor,
            edges,
            row_floors,
        })
    }

    /// Exact coefficient comparison on `rect`, which must lie inside both
    /// validity rectangles. Reports the lexicographically first differing
    /// monomial.
    pub fn equal_on(&self, other: &MSeries, rect: &Rect) -> Result<Comparison, Error> {
        self.check_arity(other)?;
        if !rect.is_subset_of(&self.validity) {
            return Err(Error::OutsideValidity(format!(
                "left validity {:?} does not cover the requested rectangle",
                self.validity
            )));
        }
        if !rect.is_subset_of(&other.validity) {
            return Err(Error::OutsideValidity(format!(
                "right validity {:?} does not cover the requested rectangle",
                other.validity
            )));
        }
        let mut keys: Vec<&Monomial> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .filter(|m| rect.contains(m))
            .collect();
        keys.sort();
        keys.dedup();
        for m in keys {
            let a = self.terms.get(m).cloned().unwrap_or_else(Rat::zero);
            let b = other.terms.get(m).cloned().unwrap_or_else(Rat::zero);
            if a != b {
                return Ok(Comparison::FirstDifference {
                    monomial: m.clone(),
                    left: a,
                    right: b,
                });
            }
        }
        Ok(Comparison::Equal)
    }

    /// Lower the validity q_min: sound when the current q_min already
    /// sits at or below the true q-floor, so the gained region holds only
    /// zero coefficients.
    pub(crate) fn extend_q_min_to(&mut self, new_min: &Rat) {
        if *new_min >= self.validity.q_min {
            return;
        }
        let can = match &self.q_floor {
            Floor::Finite(f) => self.validity.q_min <= *f,
            Floor::PosInf => true,
            Floor::NegInf => false,
        };
        if can {
            self.validity.q_min = new_min.clone();
        }
    }

    /// Widen a window: sound on each side that is complete, since the
    /// gained region then holds only zero coefficients below qMax.
    pub(crate) fn extend_window_to(&self, var: usize, w: &Window) -> Result<MSeries, Error> {
        let cur = &self.validity.windows[var];
        let e = self.edges[var];
        if (w.lo < cur.lo && !e.complete_lo) || (w.hi > cur.hi && !e.complete_hi) {
            return Err(Error::OutsideValidity(
                "cannot widen an incomplete window".to_string(),
            ));
        }
        let mut out = self.clone();
        out.validity.windows[var] =
            Window::new(w.lo.clone().min(cur.lo.clone()), w.hi.clone().max(cur.hi.clone()));
        Ok(out)
    }

    /// Re-embed into a larger arity: old variable `i` becomes variable
    /// `var_map[i]`; fresh variables get the point window {0}.
    pub fn promote(&self, arity: usize, var_map: &[usize]) -> MSeries {
        assert_eq!(var_map.len(), self.arity);
        assert!(var_map.iter().all(|&v| v < arity));
        let mut windows = vec![Window::point(Rat::zero()); arity];
        let mut edges = vec![Edges::COMPLETE; arity];
        let mut row_floors: Vec<Option<RowFloor>> = self
            .q_floor
            .finite()
            .map(|f| vec![Some(RowFloor::new(f.clone(), Rat::zero(), Rat::zero())); arity])
            .unwrap_or_else(|| vec![None; arity]);
        for (i, &v) in var_map.iter().enumerate() {
            windows[v] = self.validity.windows[i].clone();
            edges[v] = self.edges[i];
            row_floors[v] = self.row_floors[i].clone();
        }
        let rect = Rect::new(
            self.validity.q_min.clone(),
            self.validity.q_max.clone(),
            windows,
        );
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut xs = vec![Rat::zero(); arity];
                for (i, &v) in var_map.iter().enumerate() {
                    xs[v] = m.xs[i].clone();
                }
                (Monomial::new(m.q.clone(), xs), c.clone())
            })
            .collect();
        MSeries {
            arity,
            terms,
            validity: rect,
            q_floor: self.q_floor.clone(),
            edges,
            row_floors,
        }
    }
}

impl Floor {
    fn max_with(self, other: Rat) -> Floor {
        match self {
            Floor::Finite(a) => Floor::Finite(a.max(other)),
            Floor::NegInf => Floor::Finite(other),
            Floor::PosInf => Floor::PosInf,
        }
    }
}
