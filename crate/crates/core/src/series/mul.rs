//! Series multiplication with conservative validity propagation.
//!
//! The output rectangle is the largest one on which every contributing
//! pair of true-series terms is certified to lie inside the operands'
//! rectangles:
//!
//! * `qMax_out = min(qMax_a + floor_b, qMax_b + floor_a)` — a term above
//!   an operand's qMax lands above this bound once the other factor's
//!   q-floor is added;
//! * per window side, an incomplete edge of one operand caps the output
//!   window at `edge + nearest stored exponent of the other operand`,
//!   since terms beyond an incomplete edge can carry q-exponents within
//!   range;
//! * two incomplete edges facing each other (one operand open above, the
//!   other open below in the same variable) leave no safe output at all.
//!
//! Multiplication therefore requires finite q-floors and validity
//! rectangles extending down to them; all constructors guarantee both.

use std::collections::BTreeMap;

use super::{Edges, Floor, MSeries, Rect, Window};
use crate::error::Error;
use crate::rat::Rat;

impl MSeries {
    pub fn mul(&self, other: &MSeries) -> Result<MSeries, Error> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch(self.arity(), other.arity()));
        }
        // a genuinely zero factor gives a genuinely zero product
        if self.q_floor == Floor::PosInf || other.q_floor == Floor::PosInf {
            let rect = self
                .validity
                .intersect(&other.validity)
                .ok_or(Error::EmptyRect)?;
            return Ok(MSeries::zero(rect));
        }
        let (fa, fb) = match (self.q_floor.finite(), other.q_floor.finite()) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            _ => return Err(Error::EmptyRect),
        };
        // validity must reach each operand's floor, otherwise unknown
        // low-q terms could contribute anywhere
        if self.validity.q_min > fa || other.validity.q_min > fb {
            return Err(Error::EmptyRect);
        }
        let q_max = (&self.validity.q_max + &fb).min(&other.validity.q_max + &fa);
        let q_min = &fa + &fb;
        if q_min > q_max {
            return Err(Error::EmptyRect);
        }

        let mut windows = Vec::with_capacity(self.arity());
        let mut edges = Vec::with_capacity(self.arity());
        for v in 0..self.arity() {
            let wa = &self.validity.windows[v];
            let wb = &other.validity.windows[v];
            let ea = self.edges[v];
            let eb = other.edges[v];
            if (!ea.complete_hi && !eb.complete_lo) || (!ea.complete_lo && !eb.complete_hi) {
                return Err(Error::EmptyRect);
            }
            let sa = self.stored_x_range(v);
            let sb = other.stored_x_range(v);
            let cap_lo = &wa.lo + &wb.lo;
            let cap_hi = &wa.hi + &wb.hi;
            let mut hi = cap_hi.clone();
            let mut lo = cap_lo.clone();
            if !ea.complete_hi {
                if let Some((blo, _)) = &sb {
                    hi = hi.min(&wa.hi + blo);
                }
            }
            if !eb.complete_hi {
                if let Some((alo, _)) = &sa {
                    hi = hi.min(&wb.hi + alo);
                }
            }
            if !ea.complete_lo {
                if let Some((_, bhi)) = &sb {
                    lo = lo.max(&wa.lo + bhi);
                }
            }
            if !eb.complete_lo {
                if let Some((_, ahi)) = &sa {
                    lo = lo.max(&wb.lo + ahi);
                }
            }
            if lo > hi {
                return Err(Error::EmptyRect);
            }
            edges.push(Edges {
                complete_lo: ea.complete_lo && eb.complete_lo && lo == cap_lo,
                complete_hi: ea.complete_hi && eb.complete_hi && hi == cap_hi,
            });
            windows.push(Window::new(lo, hi));
        }
        let rect = Rect::new(q_min, q_max, windows);

        let mut terms: BTreeMap<super::Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            // no pair with this term can re-enter the rectangle
            if &ma.q + &fb > rect.q_max {
                continue;
            }
            for (mb, cb) in &other.terms {
                let q = &ma.q + &mb.q;
                if q > rect.q_max {
                    break; // BTreeMap order is (q, xs)-lexicographic
                }
                let m = ma.mul(mb);
                if !rect.contains(&m) {
                    continue;
                }
                let c = ca * cb;
                match terms.entry(m) {
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
        }

        let row_floors = (0..self.arity())
            .map(|v| match (&self.row_floors[v], &other.row_floors[v]) {
                (Some(f), Some(g)) => f.inf_conv(g),
                _ => None,
            })
            .collect();

        Ok(MSeries {
            arity: self.arity(),
            terms,
            validity: rect,
            q_floor: Floor::Finite(&fa + &fb),
            edges,
            row_floors,
        })
    }
}
