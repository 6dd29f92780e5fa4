//! Geometric series and q-Pochhammer products, expanded exactly on a
//! rectangle.

use std::collections::BTreeMap;

use super::{Edges, Floor, MSeries, Monomial, Rect, RowFloor};
use crate::error::Error;
use crate::rat::Rat;

/// Expand `1/(1 - c m) = sum_{i>=0} c^i m^i` truncated to `rect`.
///
/// The iterates move linearly in every exponent, so once one leaves the
/// rectangle it never returns; the stored terms are exactly the iterates
/// inside, and the whole rectangle is valid.
pub fn geometric_inverse(m: &Monomial, coeff: &Rat, rect: &Rect) -> Result<MSeries, Error> {
    let arity = rect.arity();
    if m.arity() != arity {
        return Err(Error::ArityMismatch(m.arity(), arity));
    }
    if m.is_unit() {
        return Err(Error::UnitMonomial);
    }
    // the iterate indices still inside the rectangle form a bounded set
    let mut i_max: Option<Rat> = None;
    {
        let mut constrain = |e: &Rat, lo: &Rat, hi: &Rat| {
            let bound = if e.is_positive() {
                hi / e
            } else if e.is_negative() {
                lo / e
            } else {
                return;
            };
            i_max = Some(match i_max.take() {
                None => bound,
                Some(b) => b.min(bound),
            });
        };
        constrain(&m.q, &rect.q_min, &rect.q_max);
        for (e, w) in m.xs.iter().zip(&rect.windows) {
            constrain(e, &w.lo, &w.hi);
        }
    }
    use num_traits::ToPrimitive;
    let i_max = i_max
        .expect("non-unit monomial has a nonzero exponent")
        .floor_int()
        .to_i64()
        .ok_or_else(|| Error::NonExiting(m.to_string()))?;

    let mut terms = BTreeMap::new();
    if i_max >= 0 && !coeff.is_zero() {
        let mut cur = Monomial::unit(arity);
        let mut c = Rat::one();
        for _ in 0..=i_max {
            if rect.contains(&cur) {
                terms.insert(cur.clone(), c.clone());
            }
            cur = cur.mul(m);
            c = &c * coeff;
        }
    }

    let q_floor = if m.q.is_negative() {
        Floor::NegInf
    } else {
        Floor::Finite(Rat::zero())
    };
    // completeness: does a true iterate sit beyond a window edge with q <= qMax?
    let mut edges = Vec::with_capacity(arity);
    for (v, w) in rect.windows.iter().enumerate() {
        let e = &m.xs[v];
        let beyond_reachable = |hi_side: bool| -> bool {
            let first: num_bigint::BigInt = if hi_side {
                if !e.is_positive() {
                    return false;
                }
                (&w.hi / e).floor_int() + 1
            } else {
                if !e.is_negative() {
                    return false;
                }
                (&w.lo / e).floor_int() + 1
            };
            let first = match first.to_i64() {
                Some(i) => i.max(0),
                None => return false,
            };
            if m.q.is_positive() {
                &m.q * &Rat::from_int(first) <= rect.q_max
            } else if m.q.is_zero() {
                rect.q_max >= Rat::zero()
            } else {
                true // q-exponents sink past the edge without bound
            }
        };
        edges.push(Edges {
            complete_lo: !beyond_reachable(false),
            complete_hi: !beyond_reachable(true),
        });
    }
    let row_floors = (0..arity)
        .map(|v| {
            let e = &m.xs[v];
            if e.is_zero() {
                if m.q.is_negative() {
                    None
                } else {
                    Some(RowFloor::zero())
                }
            } else {
                // every term sits on the line q = (m.q / e) * n
                Some(RowFloor::new(Rat::zero(), &m.q / e, Rat::zero()))
            }
        })
        .collect();
    Ok(MSeries::from_raw_parts(
        arity,
        terms,
        rect.clone(),
        q_floor,
        edges,
        row_floors,
    ))
}

/// Expand `prod_{i>=0} (1 - c a q^i)^{sign}` truncated to `rect`, where
/// `sign` is -1 when `inverted`.
///
/// Exactly the factors whose monomial `a q^i` can still contribute below
/// `qMax` are multiplied in; all windows must contain 0 so that factor
/// powers leave them monotonically.
pub fn pochhammer(a: &Monomial, coeff: &Rat, rect: &Rect, inverted: bool) -> Result<MSeries, Error> {
    let arity = rect.arity();
    if a.arity() != arity {
        return Err(Error::ArityMismatch(a.arity(), arity));
    }
    let zero = Rat::zero();
    if rect.q_max < zero || rect.windows.iter().any(|w| !w.contains(&zero)) {
        return Err(Error::EmptyRect);
    }
    if coeff.is_zero() {
        return Ok(one_like(rect));
    }
    let x_trivial = a.xs.iter().all(|e| e.is_zero());
    if a.q.is_negative() && x_trivial {
        return Err(Error::InfiniteFactors);
    }
    // an x-part outside the windows moves farther out with every power
    if !a.xs.iter().zip(&rect.windows).all(|(e, w)| w.contains(e)) {
        return Ok(one_like(rect));
    }

    // working rectangle reaches every factor's q-floor
    let work = Rect::new(
        rect.q_min.clone().min(zero.clone()).min(a.q.clone()),
        rect.q_max.clone(),
        rect.windows.clone(),
    );
    let mut product = one_like(&work);
    let mut i = 0i64;
    loop {
        let mi_q = &a.q + &Rat::from_int(i);
        if mi_q > work.q_max {
            break;
        }
        let mi = Monomial::new(mi_q, a.xs.clone());
        let factor = if inverted {
            if !mi.q.is_positive() && x_trivial {
                return Err(Error::InfiniteFactors);
            }
            geometric_inverse(&mi, coeff, &work)?
        } else {
            binomial_factor(&mi, coeff, &work)
        };
        product = product.mul(&factor)?.restrict(&work)?;
        i += 1;
    }
    product.restrict(rect)
}

/// The two-term series `1 - c m` on `rect`.
fn binomial_factor(m: &Monomial, coeff: &Rat, rect: &Rect) -> MSeries {
    let arity = rect.arity();
    let mut terms = BTreeMap::new();
    let unit = Monomial::unit(arity);
    if rect.contains(&unit) {
        terms.insert(unit, Rat::one());
    }
    if rect.contains(m) && !coeff.is_zero() {
        terms.insert(m.clone(), -coeff.clone());
    }
    let edges = (0..arity)
        .map(|v| Edges {
            complete_lo: rect.windows[v].lo <= m.xs[v].clone().min(Rat::zero()),
            complete_hi: m.xs[v].clone().max(Rat::zero()) <= rect.windows[v].hi,
        })
        .collect();
    let row_floors = (0..arity)
        .map(|v| {
            let e = &m.xs[v];
            if e.is_zero() {
                Some(RowFloor::new(
                    m.q.clone().min(Rat::zero()),
                    Rat::zero(),
                    Rat::zero(),
                ))
            } else {
                Some(RowFloor::new(Rat::zero(), &m.q / e, Rat::zero()))
            }
        })
        .collect();
    MSeries::from_raw_parts(
        arity,
        terms,
        rect.clone(),
        Floor::Finite(m.q.clone().min(Rat::zero())),
        edges,
        row_floors,
    )
}

fn one_like(rect: &Rect) -> MSeries {
    let arity = rect.arity();
    let mut terms = BTreeMap::new();
    let unit = Monomial::unit(arity);
    if rect.contains(&unit) {
        terms.insert(unit, Rat::one());
    }
    MSeries::from_raw_parts(
        arity,
        terms,
        rect.clone(),
        Floor::Finite(Rat::zero()),
        vec![Edges::COMPLETE; arity],
        vec![Some(RowFloor::zero()); arity],
    )
}
