//! Spectral flow on characters, the coset transforms, and the
//! three-variable branching verifier.
//!
//! Spectral flow by `theta` multiplies the prefactor by the block shift
//! and shears the body, `x -> x q^theta`. The coset transforms act row
//! by row: `omega_plus` multiplies the x^n-row by `q^{n^2/2}` and maps
//! the prefactor `(h, j) -> (h - j^2/(k+2), 2j/(k+2))`; `omega_minus`
//! inverts both. Rows outside the truncation window are unknown, so the
//! output qMax is capped at the smallest q-exponent an unknown row's
//! image could reach; with certified row floors that cap is exact, and
//! it is the single most delicate rectangle rule in the crate.

use std::collections::BTreeMap;

use crate::charlib::{Character, CharKind, Side, Sign};
use crate::error::Error;
use crate::rat::Rat;
use crate::series::{Edges, Floor, MSeries, Monomial, Rect, RowFloor};

mod branching;
pub use branching::{verify_branching, verify_branching_with_signs, BranchingReport, FockSigns};

fn floor_max(a: Floor, b: Floor) -> Floor {
    use Floor::*;
    match (a, b) {
        (PosInf, _) | (_, PosInf) => PosInf,
        (NegInf, f) | (f, NegInf) => f,
        (Finite(x), Finite(y)) => Finite(x.max(y)),
    }
}

/// Twist a character by the spectral flow automorphism of its side.
pub fn spectral_flow(chr: &Character, theta: i64) -> Result<Character, Error> {
    let ctx = chr.ctx.as_ref().ok_or(Error::MissingContext)?;
    if theta == 0 {
        return Ok(chr.clone());
    }
    let k = ctx.k().clone();
    let t = Rat::from_int(theta);
    let (h, j) = (chr.h().clone(), chr.j().clone());
    let (dh, dj) = match chr.side {
        Side::Affine => (
            // j*theta + k*theta^2/4
            &(&j * &t) + &(&(&k * &(&t * &t)) / &Rat::from_int(4)),
            &(&k * &t) / &Rat::from_int(2),
        ),
        Side::N2 => (
            // j*theta + k*theta^2 / (2(k+2))
            &(&j * &t) + &(&(&k * &(&t * &t)) / &(&Rat::from_int(2) * &ctx.k_plus_2())),
            &(&k * &t) / &ctx.k_plus_2(),
        ),
        Side::Heisenberg => return Err(Error::WrongSide("affine or N=2")),
    };
    let prefactor = Monomial::new(&h + &dh, vec![&j + &dj]);
    let block = (prefactor.q.clone(), prefactor.xs[0].clone());
    let body = chr.body().shear(0, &t)?;
    Ok(Character::assemble(
        chr.ctx.clone(),
        CharKind::Derived,
        chr.side,
        prefactor,
        body,
        block,
    ))
}

/// Multiply row `n` by `q^{s n^2/2}` and recompute the rectangle.
///
/// Validity: row `n` of the output is exact on the shifted interval; the
/// rectangle intersects those over the window, extended downward where
/// row floors certify zeros. For `s = +1`, unknown rows beyond the
/// window land at `q >= n^2/2 + rowfloor(n)`; qMax is capped below the
/// smallest such image so the output never claims an unverified
/// coefficient.
fn row_quadratic_map(body: &MSeries, s: i64) -> Result<MSeries, Error> {
    debug_assert!(s == 1 || s == -1);
    let two = Rat::from_int(2);
    let rect = body.validity().clone();
    let w = rect.windows[0].clone();
    let sq = |r: &Rat| -> Rat { &(r * r) / &two };
    let (lo_sq, hi_sq) = (sq(&w.lo), sq(&w.hi));
    let zero = Rat::zero();
    let min_nsq = if w.lo <= zero && zero <= w.hi {
        Rat::zero()
    } else {
        lo_sq.clone().min(hi_sq.clone())
    };
    let max_nsq = lo_sq.max(hi_sq);
    let (shift_min, shift_max) = if s == 1 {
        (min_nsq, max_nsq)
    } else {
        (-max_nsq, -min_nsq)
    };

    let floor = body.row_floor(0).cloned();
    let rows_known_down = floor
        .as_ref()
        .map(|f| f.min_on(&w.lo, &w.hi) >= rect.q_min)
        .unwrap_or(false);
    let q_min = if rows_known_down {
        &rect.q_min + &shift_min
    } else {
        &rect.q_min + &shift_max
    };
    let mut q_max = &rect.q_max + &shift_min;

    let shifted_floor = floor.as_ref().map(|f| f.row_quadratic_shift(s));
    let e = body.edges()[0];
    // smallest q-exponent an image of a row beyond one window edge can
    // reach, from the best available certificate
    let beyond_min = |side_hi: bool| -> Floor {
        let complete = if side_hi { e.complete_hi } else { e.complete_lo };
        let one = num_bigint::BigInt::from(1);
        let edge = if side_hi {
            Rat::from_big(w.hi.floor_int() + &one, one.clone())
        } else {
            Rat::from_big(w.lo.ceil_int() - &one, one.clone())
        };
        let mut best = Floor::NegInf;
        if complete && s == 1 {
            // beyond-edge rows start above qMax; images move up by n^2/2
            let nsq = RowFloor::new(rect.q_max.clone(), Rat::zero(), Rat::one());
            best = floor_max(best, nsq.min_beyond(&edge, side_hi));
        }
        if let Some(f) = &shifted_floor {
            best = floor_max(best, f.min_beyond(&edge, side_hi));
        }
        best
    };
    let mut complete = [false, false];
    for (i, side_hi) in [(0usize, false), (1usize, true)] {
        match beyond_min(side_hi) {
            Floor::PosInf => complete[i] = true,
            Floor::Finite(m) => {
                if s == 1 {
                    // cap qMax so no unknown image intrudes on the claim
                    q_max = q_max.min(m.clone());
                }
                complete[i] = m > q_max;
            }
            Floor::NegInf => {
                if s == 1 {
                    return Err(Error::EmptyRect);
                }
                complete[i] = false;
            }
        }
    }
    if q_min > q_max {
        return Err(Error::EmptyRect);
    }
    let out_rect = Rect::new(q_min, q_max.clone(), vec![w]);
    let mut terms = BTreeMap::new();
    for (m, c) in body.terms() {
        let n = &m.xs[0];
        let q = &m.q + &(&(&Rat::from_int(s) * &(n * n)) / &two);
        let k = Monomial::new(q, m.xs.clone());
        if out_rect.contains(&k) {
            terms.insert(k, c.clone());
        }
    }
    let q_floor = shifted_floor
        .as_ref()
        .map(|f| f.global_min())
        .unwrap_or(Floor::NegInf);
    let q_floor = if body.is_data_zero() && *body.q_floor() == Floor::PosInf {
        Floor::PosInf
    } else {
        q_floor
    };
    Ok(MSeries::from_raw_parts(
        1,
        terms,
        out_rect,
        q_floor,
        vec![Edges { complete_lo: complete[0], complete_hi: complete[1] }],
        vec![shifted_floor],
    ))
}

/// The coset transform from the affine to the N=2 side:
/// `(h, j) -> (h - j^2/(k+2), 2j/(k+2))`, row `n` times `q^{n^2/2}`.
pub fn omega_plus(chr: &Character) -> Result<Character, Error> {
    let ctx = chr.ctx.as_ref().ok_or(Error::MissingContext)?;
    if chr.side != Side::Affine {
        return Err(Error::WrongSide("affine"));
    }
    let kp2 = ctx.k_plus_2();
    let (h, j) = (chr.h().clone(), chr.j().clone());
    let h_out = &h - &(&(&j * &j) / &kp2);
    let j_out = &(&Rat::from_int(2) * &j) / &kp2;
    let body = row_quadratic_map(chr.body(), 1)?;
    let prefactor = Monomial::new(h_out.clone(), vec![j_out.clone()]);
    Ok(Character::assemble(
        chr.ctx.clone(),
        CharKind::Derived,
        Side::N2,
        prefactor,
        body,
        (h_out, j_out),
    ))
}

/// `Omega^+` with a shifted reference weight `j - offset`, realized as
/// N=2 spectral flow by `offset` after the plain transform.
pub fn omega_plus_at(chr: &Character, offset: i64) -> Result<Character, Error> {
    spectral_flow(&omega_plus(chr)?, offset)
}

/// The coset transform from the N=2 to the affine side: the inverse
/// prefactor map, row `n` times `q^{-n^2/2}`.
pub fn omega_minus(chr: &Character) -> Result<Character, Error> {
    let ctx = chr.ctx.as_ref().ok_or(Error::MissingContext)?;
    if chr.side != Side::N2 {
        return Err(Error::WrongSide("N=2"));
    }
    let kp2 = ctx.k_plus_2();
    let (hp, jp) = (chr.h().clone(), chr.j().clone());
    let j_out = &(&jp * &kp2) / &Rat::from_int(2);
    let h_out = &hp + &(&(&j_out * &j_out) / &kp2);
    let body = row_quadratic_map(chr.body(), -1)?;
    let prefactor = Monomial::new(h_out.clone(), vec![j_out.clone()]);
    Ok(Character::assemble(
        chr.ctx.clone(),
        CharKind::Derived,
        Side::Affine,
        prefactor,
        body,
        (h_out, j_out),
    ))
}

/// Rebuild a constructor-produced character on another rectangle.
pub(crate) fn reconstruct_at(chr: &Character, rect: &Rect) -> Result<Character, Error> {
    let ctx = chr.ctx.as_ref().ok_or(Error::MissingContext)?;
    match chr.kind {
        CharKind::AffineVerma => crate::charlib::verma_affine(ctx, chr.j(), rect),
        CharKind::RelaxedVerma => crate::charlib::relaxed_verma(ctx, chr.h(), chr.j(), rect),
        CharKind::N2Verma => crate::charlib::verma_n2(ctx, chr.h(), chr.j(), rect),
        CharKind::ChiralVerma => crate::charlib::chiral_verma(ctx, chr.j(), Sign::Plus, rect),
        CharKind::AntichiralVerma => crate::charlib::chiral_verma(ctx, chr.j(), Sign::Minus, rect),
        _ => Err(Error::WrongSide("constructor-produced")),
    }
}

#[cfg(test)]
mod tests;
