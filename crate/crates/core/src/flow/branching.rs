//! The three-variable branching verifier.
//!
//! For a flowed base character it compares, coefficient by coefficient
//! on a requested rectangle, the two sides of the decomposition of the
//! pulled-back triple tensor product:
//!
//! * the decomposition side: a double sum over integer Fock charges
//!   `(n, m)`, each summand a flow-twisted copy of the base character
//!   times the two Fock prefactors `q^{+n^2/2} y^{-n}` and
//!   `q^{-m^2/2} z^{m}` (with the side's monomial dressing);
//! * the pullback side: the base character with `x` replaced by the
//!   product of all three variables, times the two lattice characters
//!   under the weight dictionary of the coset embedding.
//!
//! All enumeration bounds come from the requested windows: the y- and
//! z-windows bound the Fock charges outright, and the needed base
//! q-depth grows as `qMax + |theta+n+m| * (x-window radius)`; both are
//! computed here and the base is rebuilt on the padded rectangle. The
//! assembled maps are exact finite objects, so multiplying in the shared
//! Heisenberg factor `1/(q;q)^2` and comparing stays within the
//! conservative rectangle rules.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::ToPrimitive;

use super::reconstruct_at;
use crate::charlib::{fock_char, Character, Side, Sign};
use crate::error::Error;
use crate::rat::Rat;
use crate::series::{pochhammer, Edges, Floor, MSeries, Monomial, Rect, Window};

/// Which sign each Fock weight carries; flipping one is the negative
/// control that must break the identity.
#[derive(Clone, Copy, Debug)]
pub struct FockSigns {
    pub plus: Sign,
    pub minus: Sign,
}

impl FockSigns {
    pub fn standard() -> Self {
        FockSigns { plus: Sign::Plus, minus: Sign::Minus }
    }
}

#[derive(Clone, Debug)]
pub struct BranchingReport {
    pub rect: Rect,
    pub equal: bool,
    pub first_difference: Option<(Monomial, Rat, Rat)>,
    /// Number of `(n, m)` summands on the decomposition side.
    pub term_counts: usize,
}

impl BranchingReport {
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\"rect\":");
        crate::series::write_rect(&mut out, &self.rect);
        let _ = write!(out, ",\"equal\":{}", self.equal);
        if let Some((m, l, r)) = &self.first_difference {
            out.push_str(",\"firstDifference\":{\"monomial\":");
            crate::series::write_monomial(&mut out, m);
            out.push_str(",\"lhs\":");
            crate::series::write_rat(&mut out, l);
            out.push_str(",\"rhs\":");
            crate::series::write_rat(&mut out, r);
            out.push('}');
        }
        let _ = write!(out, ",\"termCounts\":{}}}", self.term_counts);
        out
    }
}

pub fn verify_branching(
    side: Side,
    base: &Character,
    theta: i64,
    rect3: &Rect,
) -> Result<BranchingReport, Error> {
    verify_branching_with_signs(side, base, theta, rect3, FockSigns::standard())
}

pub fn verify_branching_with_signs(
    side: Side,
    base: &Character,
    theta: i64,
    rect3: &Rect,
    signs: FockSigns,
) -> Result<BranchingReport, Error> {
    if rect3.arity() != 3 {
        return Err(Error::ArityMismatch(rect3.arity(), 3));
    }
    if base.side != side || side == Side::Heisenberg {
        return Err(Error::WrongSide(match side {
            Side::Affine => "affine",
            _ => "N=2",
        }));
    }
    match side {
        Side::Affine => verify_affine(base, theta, rect3, signs),
        Side::N2 => verify_n2(base, theta, rect3, signs),
        Side::Heisenberg => unreachable!(),
    }
}

fn int_range(lo: &Rat, hi: &Rat) -> std::ops::RangeInclusive<i64> {
    let a = lo.ceil_int().to_i64().unwrap_or(0);
    let b = hi.floor_int().to_i64().unwrap_or(-1);
    a..=b
}

/// Fock prefactor `(q-weight, charge)` for the given sign and charge.
fn fock_prefactor(sign: Sign, w: i64) -> (Rat, Rat) {
    let w = Rat::from_int(w);
    let rect = Rect::new(Rat::zero(), Rat::zero(), vec![Window::point(w.clone())]);
    let f = fock_char(sign, &w, &rect).expect("point fock character");
    (f.h().clone(), f.j().clone())
}

struct Accum {
    map: BTreeMap<Monomial, Rat>,
    min_q: Option<Rat>,
}

impl Accum {
    fn new() -> Self {
        Accum { map: BTreeMap::new(), min_q: None }
    }

    fn push(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        self.min_q = Some(match self.min_q.take() {
            None => m.q.clone(),
            Some(b) => b.min(m.q.clone()),
        });
        match self.map.entry(m) {
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

    /// Package as an exact finite object on the reduced rectangle.
    fn into_series(self, reduced: &Rect) -> MSeries {
        let q_floor = match &self.min_q {
            Some(m) => Floor::Finite(m.clone()),
            None => Floor::PosInf,
        };
        let q_min = self
            .min_q
            .unwrap_or_else(|| reduced.q_min.clone())
            .min(reduced.q_min.clone());
        let rect = Rect::new(q_min, reduced.q_max.clone(), reduced.windows.clone());
        MSeries::from_raw_parts(
            3,
            self.map,
            rect,
            q_floor,
            vec![Edges::COMPLETE; 3],
            vec![None; 3],
        )
    }
}

/// Multiply the shared Heisenberg factor `1/(q;q)^2` into a finite side,
/// reattach the global prefactor and compare on `rect3`.
fn finish(
    lhs: Accum,
    rhs: Accum,
    term_counts: usize,
    prefactor: &Monomial,
    rect3: &Rect,
) -> Result<BranchingReport, Error> {
    let reduced = rect3.translate(&prefactor.inverse());
    let sides = [lhs.into_series(&reduced), rhs.into_series(&reduced)]
        .into_iter()
        .map(|s| {
            let floor = s.validity().q_min.clone();
            let euler = pochhammer(
                &Monomial::q_power(Rat::one(), 3),
                &Rat::one(),
                &Rect::new(
                    floor.clone().min(Rat::zero()),
                    &reduced.q_max - &floor,
                    vec![Window::point(Rat::zero()); 3],
                ),
                true,
            )?;
            let euler_sq = euler.mul(&euler)?;
            let mut full = s.mul(&euler_sq)?;
            full.extend_q_min_to(&reduced.q_min);
            Ok(full.monomial_shift(prefactor))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let cmp = sides[0].equal_on(&sides[1], rect3)?;
    let (equal, first_difference) = match cmp {
        crate::series::Comparison::Equal => (true, None),
        crate::series::Comparison::FirstDifference { monomial, left, right } => {
            (false, Some((monomial, left, right)))
        }
    };
    Ok(BranchingReport {
        rect: rect3.clone(),
        equal,
        first_difference,
        term_counts,
    })
}

fn verify_affine(
    base: &Character,
    theta: i64,
    rect3: &Rect,
    signs: FockSigns,
) -> Result<BranchingReport, Error> {
    let ctx = base.ctx.clone().ok_or(Error::MissingContext)?;
    let k = ctx.k().clone();
    let kp2 = ctx.k_plus_2();
    let two = Rat::from_int(2);
    let half_k = &k / &two;
    let (h, j) = (base.h().clone(), base.j().clone());
    let th = Rat::from_int(theta);

    // global prefactor q^{h + j*theta + k theta^2/4} (xyz)^{j + k theta/2}
    let pref_q = &(&h + &(&j * &th)) + &(&(&k * &(&th * &th)) / &Rat::from_int(4));
    let pref_x = &j + &(&half_k * &th);
    let prefactor = Monomial::new(pref_q, vec![pref_x.clone(), pref_x.clone(), pref_x]);
    let reduced = rect3.translate(&prefactor.inverse());
    let (xw, yw, zw) = (&reduced.windows[0], &reduced.windows[1], &reduced.windows[2]);
    let q_hi = reduced.q_max.clone();

    // decomposition side: y carries exactly -n, z carries m + k(n+m)/2
    let mut pairs = Vec::new();
    for n in int_range(&-yw.hi.clone(), &-yw.lo.clone()) {
        let kn_half = &half_k * &Rat::from_int(n);
        let m_lo = &(&zw.lo - &kn_half) * &(&two / &kp2);
        let m_hi = &(&zw.hi - &kn_half) * &(&two / &kp2);
        for m in int_range(&m_lo, &m_hi) {
            pairs.push((n, m));
        }
    }

    // padded base request covering every pair
    let mut f_win: Option<Window> = None;
    let mut f_qmax = Rat::zero();
    let mut pair_data = Vec::new();
    for &(n, m) in &pairs {
        let t = theta + n + m;
        let (fq_p, _) = fock_prefactor(signs.plus, -n);
        let (fq_m, _) = fock_prefactor(signs.minus, m);
        let dq = &fq_p + &fq_m;
        let shift = &half_k * &Rat::from_int(n + m);
        let w = Window::new(&xw.lo - &shift, &xw.hi - &shift);
        let depth = |b: &Rat| -> Rat { &(&q_hi - &dq) - &(&Rat::from_int(t) * b) };
        f_qmax = f_qmax.max(depth(&w.lo)).max(depth(&w.hi));
        f_win = Some(match f_win.take() {
            None => w.clone(),
            Some(u) => Window::new(u.lo.min(w.lo.clone()), u.hi.max(w.hi.clone())),
        });
        pair_data.push((n, m, t, dq, shift));
    }

    // pullback side bounds: s = x - z, r = b - y
    let s_range: Vec<i64> = int_range(&(&xw.lo - &zw.hi), &(&xw.hi - &zw.lo)).collect();
    let mut b_lo: Option<Rat> = None;
    let mut b_hi: Option<Rat> = None;
    for &s in &s_range {
        let s = Rat::from_int(s);
        for x in [&xw.lo, &xw.hi] {
            for y in [&yw.lo, &yw.hi] {
                // b = (x + k(y+s)/2) * 2/(k+2)
                let b = &(x + &(&half_k * &(y + &s))) * &(&two / &kp2);
                b_lo = Some(match b_lo.take() {
                    None => b.clone(),
                    Some(v) => v.min(b.clone()),
                });
                b_hi = Some(match b_hi.take() {
                    None => b.clone(),
                    Some(v) => v.max(b),
                });
            }
        }
    }
    if let (Some(lo), Some(hi)) = (&b_lo, &b_hi) {
        for b in int_range(lo, hi) {
            let br = Rat::from_int(b);
            for &s in &s_range {
                let sr = Rat::from_int(s);
                // least |r| with y = b - r inside the y-window
                let r_lo = &br - &yw.hi;
                let r_hi = &br - &yw.lo;
                let r_best = if r_lo.is_positive() {
                    r_lo.clone()
                } else if r_hi.is_negative() {
                    r_hi.clone()
                } else {
                    Rat::zero()
                };
                let depth = &(&(&q_hi - &(&Rat::from_int(theta) * &br))
                    - &(&(&r_best * &r_best) / &two))
                    + &(&(&sr * &sr) / &two);
                f_qmax = f_qmax.max(depth);
            }
        }
        let w = Window::new(b_lo.clone().unwrap(), b_hi.clone().unwrap());
        f_win = Some(match f_win.take() {
            None => w.clone(),
            Some(u) => Window::new(u.lo.min(w.lo.clone()), u.hi.max(w.hi.clone())),
        });
    }

    let f_rect = Rect::new(
        Rat::zero(),
        f_qmax.max(Rat::zero()),
        vec![f_win.unwrap_or_else(|| Window::point(Rat::zero()))],
    );
    let f = reconstruct_at(base, &f_rect)?.body().clone();

    // assemble the decomposition side
    let mut lhs = Accum::new();
    for (n, m, t, dq, shift) in &pair_data {
        let t_r = Rat::from_int(*t);
        let y = Rat::from_int(-n);
        let z = &Rat::from_int(*m) + shift;
        if !yw.contains(&y) || !zw.contains(&z) {
            continue;
        }
        for (mono, c) in f.terms() {
            let b = &mono.xs[0];
            let q = &(dq + &mono.q) + &(&t_r * b);
            if q > q_hi {
                continue;
            }
            let x = b + shift;
            if !xw.contains(&x) {
                continue;
            }
            lhs.push(Monomial::new(q, vec![x, y.clone(), z.clone()]), c.clone());
        }
    }

    // assemble the pullback side
    let mut rhs = Accum::new();
    let th_r = Rat::from_int(theta);
    for &s in &s_range {
        let sr = Rat::from_int(s);
        let s_sq = &(&sr * &sr) / &two;
        for (mono, c) in f.terms() {
            let b = &mono.xs[0];
            for r in int_range(&(b - &yw.hi), &(b - &yw.lo)) {
                let rr = Rat::from_int(r);
                let q = &(&(&mono.q + &(&th_r * b)) + &(&(&rr * &rr) / &two)) - &s_sq;
                if q > q_hi {
                    continue;
                }
                let x = b + &(&half_k * &(&rr - &sr));
                let y = b - &rr;
                let z = &x - &sr;
                if !xw.contains(&x) || !yw.contains(&y) || !zw.contains(&z) {
                    continue;
                }
                rhs.push(Monomial::new(q, vec![x, y, z]), c.clone());
            }
        }
    }

    finish(lhs, rhs, pair_data.len(), &prefactor, rect3)
}

fn verify_n2(
    base: &Character,
    theta: i64,
    rect3: &Rect,
    signs: FockSigns,
) -> Result<BranchingReport, Error> {
    let ctx = base.ctx.clone().ok_or(Error::MissingContext)?;
    let k = ctx.k().clone();
    let kp2 = ctx.k_plus_2();
    let two = Rat::from_int(2);
    let half_k = &k / &two;
    let gamma = &k / &kp2;
    let (ht, jt) = (base.h().clone(), base.j().clone());
    // the matching affine-side weight: j = j~ (k+2)/2
    let j_aff = &(&jt * &kp2) / &two;
    let th = Rat::from_int(theta);

    // global prefactor q^{h~ + j~ theta + k theta^2/(2(k+2))}
    //   x^{j~ + k theta/(k+2)} (yz)^{j + k theta/2}
    let pref_q = &(&ht + &(&jt * &th)) + &(&(&k * &(&th * &th)) / &(&two * &kp2));
    let pref_x = &jt + &(&(&k * &th) / &kp2);
    let pref_yz = &j_aff + &(&half_k * &th);
    let prefactor = Monomial::new(pref_q, vec![pref_x, pref_yz.clone(), pref_yz]);
    let reduced = rect3.translate(&prefactor.inverse());
    let (xw, yw, zw) = (&reduced.windows[0], &reduced.windows[1], &reduced.windows[2]);
    let q_hi = reduced.q_max.clone();

    // decomposition side: z carries (k+2)m/2, y carries km/2 - n
    let mut pairs = Vec::new();
    for m in int_range(&(&zw.lo * &(&two / &kp2)), &(&zw.hi * &(&two / &kp2))) {
        let km_half = &half_k * &Rat::from_int(m);
        for n in int_range(&(&km_half - &yw.hi), &(&km_half - &yw.lo)) {
            pairs.push((n, m));
        }
    }

    let mut g_win: Option<Window> = None;
    let mut g_qmax = Rat::zero();
    let mut pair_data = Vec::new();
    for &(n, m) in &pairs {
        let t = theta + n + m;
        let (gq_p, _) = fock_prefactor(signs.plus, -n);
        let (gq_m, _) = fock_prefactor(signs.minus, m);
        let dq = &gq_p + &gq_m;
        let shift = &(&k * &Rat::from_int(n + m)) / &kp2; // x-dressing k l/(k+2)
        let w = Window::new(&xw.lo - &shift, &xw.hi - &shift);
        let depth = |b: &Rat| -> Rat { &(&q_hi - &dq) - &(&Rat::from_int(t) * b) };
        g_qmax = g_qmax.max(depth(&w.lo)).max(depth(&w.hi));
        g_win = Some(match g_win.take() {
            None => w.clone(),
            Some(u) => Window::new(u.lo.min(w.lo.clone()), u.hi.max(w.hi.clone())),
        });
        pair_data.push((n, m, t, dq, shift));
    }

    // pullback side: sigma = b + s with (k+2) sigma/2 in the z-window
    let sigma_range: Vec<i64> =
        int_range(&(&zw.lo * &(&two / &kp2)), &(&zw.hi * &(&two / &kp2))).collect();
    let mut b_lo: Option<Rat> = None;
    let mut b_hi: Option<Rat> = None;
    for &sg in &sigma_range {
        let sg = Rat::from_int(sg);
        for x in [&xw.lo, &xw.hi] {
            for y in [&yw.lo, &yw.hi] {
                // b = x - k sigma/2 + gamma y
                let b = &(x - &(&half_k * &sg)) + &(&gamma * y);
                b_lo = Some(match b_lo.take() {
                    None => b.clone(),
                    Some(v) => v.min(b.clone()),
                });
                b_hi = Some(match b_hi.take() {
                    None => b.clone(),
                    Some(v) => v.max(b),
                });
            }
        }
    }
    if let (Some(lo), Some(hi)) = (&b_lo, &b_hi) {
        for b in int_range(lo, hi) {
            let br = Rat::from_int(b);
            for &sg in &sigma_range {
                let sg_r = Rat::from_int(sg);
                let st = &sg_r - &br; // s = sigma - b
                let r_mid = &br + &(&half_k * &sg_r);
                let r_lo = &r_mid - &yw.hi;
                let r_hi = &r_mid - &yw.lo;
                let r_best = if r_lo.is_positive() {
                    r_lo.clone()
                } else if r_hi.is_negative() {
                    r_hi.clone()
                } else {
                    Rat::zero()
                };
                let depth = &(&(&q_hi - &(&th * &br)) - &(&(&r_best * &r_best) / &two))
                    + &(&(&st * &st) / &two);
                g_qmax = g_qmax.max(depth);
            }
        }
        let w = Window::new(b_lo.clone().unwrap(), b_hi.clone().unwrap());
        g_win = Some(match g_win.take() {
            None => w.clone(),
            Some(u) => Window::new(u.lo.min(w.lo.clone()), u.hi.max(w.hi.clone())),
        });
    }

    let g_rect = Rect::new(
        Rat::zero(),
        g_qmax.max(Rat::zero()),
        vec![g_win.unwrap_or_else(|| Window::point(Rat::zero()))],
    );
    let g = reconstruct_at(base, &g_rect)?.body().clone();

    let mut lhs = Accum::new();
    for (n, m, t, dq, shift) in &pair_data {
        let t_r = Rat::from_int(*t);
        let km_half = &half_k * &Rat::from_int(*m);
        let y = &km_half - &Rat::from_int(*n);
        let z = &km_half + &Rat::from_int(*m);
        if !yw.contains(&y) || !zw.contains(&z) {
            continue;
        }
        for (mono, c) in g.terms() {
            let b = &mono.xs[0];
            let q = &(dq + &mono.q) + &(&t_r * b);
            if q > q_hi {
                continue;
            }
            let x = b + shift;
            if !xw.contains(&x) {
                continue;
            }
            lhs.push(Monomial::new(q, vec![x, y.clone(), z.clone()]), c.clone());
        }
    }

    let mut rhs = Accum::new();
    for &sg in &sigma_range {
        let sg_r = Rat::from_int(sg);
        let z = &(&kp2 * &sg_r) / &two;
        if !zw.contains(&z) {
            continue;
        }
        for (mono, c) in g.terms() {
            let b = &mono.xs[0];
            let st = &sg_r - b; // s = sigma - b
            let s_sq = &(&st * &st) / &two;
            let r_mid = b + &(&half_k * &sg_r);
            for r in int_range(&(&r_mid - &yw.hi), &(&r_mid - &yw.lo)) {
                let rr = Rat::from_int(r);
                let q = &(&(&mono.q + &(&th * b)) + &(&(&rr * &rr) / &two)) - &s_sq;
                if q > q_hi {
                    continue;
                }
                let x = b + &(&gamma * &(&rr + &st));
                let y = &r_mid - &rr;
                if !xw.contains(&x) || !yw.contains(&y) {
                    continue;
                }
                rhs.push(Monomial::new(q, vec![x, y, z.clone()]), c.clone());
            }
        }
    }

    finish(lhs, rhs, pair_data.len(), &prefactor, rect3)
}
