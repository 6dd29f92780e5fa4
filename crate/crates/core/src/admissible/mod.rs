//! Admissible-level data, Verma-type resolutions with q-order cutoffs,
//! irreducible characters as alternating sums, and the closed double-sum
//! character formula with its three-way cross-check.
//!
//! At level `k = -2 + p/p'` the irreducible `L(r, s)` has a two-sided
//! resolution by Verma modules `M(n, m) = M_{(n-1)/2 - (p/p')(m/2), k}`:
//! degree `d` contributes `M(l)` for `l = +-d`, where even `l` gives
//! `M(p l + r, s)` and odd `l` gives `M(p(l+1) - r, s)`. Applying the
//! coset transform at the head weight turns it into the BGG-type
//! resolution on the N=2 side, whose terms are spectral-flow twists of
//! chiral Verma modules following the same indexing with flow `(n'-r)/2`
//! for `n' = 2*flow + r`. Summing the closed forms of the twisted terms
//! gives the double-sum formula implemented in [`phi_double_sum`]; the
//! three routes must agree coefficient-for-coefficient.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::charlib::{
    chiral_verma, euler_inv_cubed, normalize, verma_affine, Character, CharKind, HighestWeight,
    LevelContext, Side, Sign, ThetaForm,
};
use crate::error::Error;
use crate::flow::{omega_plus, spectral_flow};
use crate::rat::Rat;
use crate::series::{
    geometric_inverse, Comparison, Edges, Floor, MSeries, Monomial, Rect, RowFloor, Window,
};

/// A coprime admissible label `(p, p')` with `1 <= r <= p-1` and
/// `0 <= s <= p'-1`.
///
/// `(p, p') = (2, 1)` gives level `k = 0`; the simple vertex algebra
/// degenerates there, but every character computation in this module
/// stays well defined, so the label is accepted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdmissibleLabel {
    pub p: i64,
    pub pp: i64,
    pub r: i64,
    pub s: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

impl AdmissibleLabel {
    pub fn new(p: i64, pp: i64, r: i64, s: i64) -> Result<Self, Error> {
        if p < 2 || pp < 1 || gcd(p, pp) != 1 || r < 1 || r > p - 1 || s < 0 || s > pp - 1 {
            return Err(Error::BadLabel(format!("(p, p', r, s) = ({p}, {pp}, {r}, {s})")));
        }
        Ok(AdmissibleLabel { p, pp, r, s })
    }

    /// `k = -2 + p/p'`.
    pub fn level(&self) -> Rat {
        &Rat::from_int(-2) + &Rat::new(self.p, self.pp)
    }

    pub fn context(&self) -> LevelContext {
        LevelContext::new(self.level()).expect("admissible level is never -2")
    }

    /// Head sl2-weight `j0 = (r-1)/2 - (p/p')(s/2)`.
    pub fn head_j(&self) -> Rat {
        &Rat::new(self.r - 1, 2) - &(&Rat::new(self.p, self.pp) * &Rat::new(self.s, 2))
    }

    /// `p'/p` as a rational.
    fn pp_over_p(&self) -> Rat {
        Rat::new(self.pp, self.p)
    }

    /// N=2 weight of `M+(n, s)`: `j2 = (p'/p)(n-1) - s`.
    pub fn n2_weight(&self, n: i64) -> Rat {
        &(&self.pp_over_p() * &Rat::from_int(n - 1)) - &Rat::from_int(self.s)
    }
}

/// One term of a Malikov or BGG resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionTerm {
    pub sign: i64,
    pub params: HighestWeight,
    pub flow: i64,
}

impl ResolutionTerm {
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{{\"sign\":{},\"h\":", self.sign);
        crate::series::write_rat(&mut out, &self.params.h);
        out.push_str(",\"j\":");
        crate::series::write_rat(&mut out, &self.params.j);
        let _ = write!(out, ",\"flow\":{}}}", self.flow);
        out
    }
}

/// Verma index `n` of `M(l)` resp. `M+(l)`: even `l -> p l + r`,
/// odd `l -> p(l+1) - r`.
fn verma_index(label: &AdmissibleLabel, l: i64) -> i64 {
    if l % 2 == 0 {
        label.p * l + label.r
    } else {
        label.p * (l + 1) - label.r
    }
}

/// Spectral-flow amount of the N=2 term `M+(l)`: `(n - r)/2` for
/// `n = verma_index(l)`, i.e. `p l/2` (even) or `p(l+1)/2 - r` (odd).
fn n2_flow(label: &AdmissibleLabel, l: i64) -> i64 {
    (verma_index(label, l) - label.r) / 2
}

/// Affine resolution terms with relative conformal weight at most `q_max`.
///
/// Degrees are scanned until their least relative weight passes `q_max`;
/// that minimum grows quadratically and is asserted monotone.
pub fn malikov_terms(label: &AdmissibleLabel, q_max: &Rat) -> Vec<ResolutionTerm> {
    let ctx = label.context();
    let j0 = label.head_j();
    let d0 = ctx.delta(&j0);
    let rel = |l: i64| -> (Rat, Rat) {
        let j = &Rat::new(verma_index(label, l) - 1, 2)
            - &(&Rat::new(label.p, label.pp) * &Rat::new(label.s, 2));
        let rel = &ctx.delta(&j) - &d0;
        (j, rel)
    };
    let mut terms = vec![ResolutionTerm {
        sign: 1,
        params: HighestWeight { h: d0.clone(), j: j0 },
        flow: 0,
    }];
    let mut prev_min: Option<Rat> = None;
    for d in 1.. {
        let sign = if d % 2 == 0 { 1 } else { -1 };
        let mut degree_min: Option<Rat> = None;
        for l in [d, -d] {
            let (j, rel_d) = rel(l);
            degree_min = Some(match degree_min.take() {
                None => rel_d.clone(),
                Some(m) => m.min(rel_d.clone()),
            });
            if rel_d <= *q_max {
                terms.push(ResolutionTerm {
                    sign,
                    params: HighestWeight { h: ctx.delta(&j), j },
                    flow: 0,
                });
            }
        }
        let degree_min = degree_min.unwrap();
        if let Some(prev) = &prev_min {
            assert!(
                degree_min >= *prev,
                "resolution weights must grow with the degree"
            );
        }
        if degree_min > *q_max {
            break;
        }
        prev_min = Some(degree_min);
    }
    terms
}

/// Relative q-order of the N=2 term with flow `theta`:
/// `(p'/p)[(theta + 1/2 + j0)^2 - (1/2 + j0)^2]`.
fn n2_relative_order(label: &AdmissibleLabel, theta: i64) -> Rat {
    let j0 = label.head_j();
    let half = Rat::new(1, 2);
    let base = &half + &j0;
    let shifted = &Rat::from_int(theta) + &base;
    &label.pp_over_p() * &(&(&shifted * &shifted) - &(&base * &base))
}

/// BGG-type resolution terms on the N=2 side, cut off at `q_max`.
pub fn bgg_terms(label: &AdmissibleLabel, q_max: &Rat) -> Vec<ResolutionTerm> {
    let head_j2 = label.n2_weight(label.r);
    let mut terms = vec![ResolutionTerm {
        sign: 1,
        params: HighestWeight {
            h: &head_j2 / &Rat::from_int(2),
            j: head_j2,
        },
        flow: 0,
    }];
    let mut prev_min: Option<Rat> = None;
    for d in 1.. {
        let sign = if d % 2 == 0 { 1 } else { -1 };
        let mut degree_min: Option<Rat> = None;
        for l in [d, -d] {
            let theta = n2_flow(label, l);
            let rel_d = n2_relative_order(label, theta);
            degree_min = Some(match degree_min.take() {
                None => rel_d.clone(),
                Some(m) => m.min(rel_d.clone()),
            });
            if rel_d <= *q_max {
                let j2 = label.n2_weight(verma_index(label, l));
                terms.push(ResolutionTerm {
                    sign,
                    params: HighestWeight {
                        h: &j2 / &Rat::from_int(2),
                        j: j2,
                    },
                    flow: theta,
                });
            }
        }
        let degree_min = degree_min.unwrap();
        if let Some(prev) = &prev_min {
            assert!(
                degree_min >= *prev,
                "resolution orders must grow with the degree"
            );
        }
        if degree_min > *q_max {
            break;
        }
        prev_min = Some(degree_min);
    }
    terms
}

/// Alternating sum of characters aligned to the head prefactor. Every
/// term must cover the head-relative rectangle `rect`.
fn alternating_sum(
    terms: Vec<(i64, Character)>,
    head: Monomial,
    rect: &Rect,
) -> Result<MSeries, Error> {
    let mut acc: Option<MSeries> = None;
    for (sign, chr) in terms {
        let delta = chr.prefactor().mul(&head.inverse());
        let mut body = chr.body().monomial_shift(&delta);
        body = body.restrict(rect)?;
        if sign < 0 {
            body = body.negate();
        }
        acc = Some(match acc {
            None => body,
            Some(a) => a.add(&body)?,
        });
    }
    acc.ok_or(Error::EmptyRect)
}

/// Irreducible affine character `L(r, s)` as the alternating sum of the
/// Malikov resolution, exact on the head-relative rectangle.
pub fn irreducible_affine_char(label: &AdmissibleLabel, rect: &Rect) -> Result<Character, Error> {
    let ctx = label.context();
    let j0 = label.head_j();
    let head = Monomial::new(ctx.delta(&j0), vec![j0.clone()]);
    let terms = malikov_terms(label, &rect.q_max);
    let mut built = Vec::with_capacity(terms.len());
    for t in &terms {
        // the term's body is needed on the head rectangle shifted by its
        // own offset (an integer x-shift and a nonnegative q-shift)
        let dq = &t.params.h - &head.q;
        let dx = &t.params.j - &head.xs[0];
        let w = &rect.windows[0];
        let term_rect = Rect::new(
            (&rect.q_min - &dq).min(Rat::zero()),
            &rect.q_max - &dq,
            vec![Window::new(&w.lo - &dx, &w.hi - &dx)],
        );
        built.push((t.sign, verma_affine(&ctx, &t.params.j, &term_rect)?));
    }
    let body = alternating_sum(built, head.clone(), rect)?;
    let block = (head.q.clone(), head.xs[0].clone());
    Ok(Character::assemble(
        Some(ctx),
        CharKind::Derived,
        Side::Affine,
        head,
        body,
        block,
    ))
}

/// Irreducible N=2 character `L(r, s)` as the alternating sum of
/// spectral-flowed chiral Verma characters, exact on the head-relative
/// rectangle. Not normalized; see [`crate::charlib::normalize`].
pub fn irreducible_n2_char(label: &AdmissibleLabel, rect: &Rect) -> Result<Character, Error> {
    let ctx = label.context();
    let head_j2 = label.n2_weight(label.r);
    let head = Monomial::new(&head_j2 / &Rat::from_int(2), vec![head_j2.clone()]);
    let terms = bgg_terms(label, &rect.q_max);
    let mut built = Vec::with_capacity(terms.len());
    for t in &terms {
        let flowed_pref = flowed_chiral_prefactor(&ctx, &t.params.j, t.flow);
        let dq = &flowed_pref.q - &head.q;
        let dx = &flowed_pref.xs[0] - &head.xs[0];
        debug_assert!(dx.is_integer(), "resolution terms stay on the block lattice");
        let w = &rect.windows[0];
        let reach = {
            let lo = (&w.lo - &dx).abs();
            let hi = (&w.hi - &dx).abs();
            lo.max(hi)
        };
        let theta_abs = Rat::from_int(t.flow.abs());
        let inner_qmax = (&(&rect.q_max - &dq) + &(&theta_abs * &reach)).max(Rat::zero());
        let inner = Rect::new(
            Rat::zero(),
            inner_qmax,
            vec![Window::new(&w.lo - &dx, &w.hi - &dx)],
        );
        let chi = chiral_verma(&ctx, &t.params.j, Sign::Plus, &inner)?;
        built.push((t.sign, spectral_flow(&chi, t.flow)?));
    }
    let body = alternating_sum(built, head.clone(), rect)?;
    let block = (head.q.clone(), head.xs[0].clone());
    Ok(Character::assemble(
        Some(ctx),
        CharKind::Derived,
        Side::N2,
        head,
        body,
        block,
    ))
}

/// Prefactor of the flowed chiral Verma `M+_{j2}` twisted by `theta`.
fn flowed_chiral_prefactor(ctx: &LevelContext, j2: &Rat, theta: i64) -> Monomial {
    let t = Rat::from_int(theta);
    let h = j2 / &Rat::from_int(2);
    let kp2 = ctx.k_plus_2();
    let k = ctx.k();
    let q = &(&h + &(j2 * &t)) + &(&(k * &(&t * &t)) / &(&Rat::from_int(2) * &kp2));
    let x = j2 + &(&(k * &t) / &kp2);
    Monomial::new(q, vec![x])
}

/// Normalized closed form of the flowed chiral Verma character:
/// `q^{-(p'/p) j0^2} x^{2 p' j0/p} (theta/eta^3)
///  q^{(p'/p)(theta+1/2+j0)^2} / (1 + x q^{theta+1/2})`,
/// with the last factor expanded in the direction that exits the
/// rectangle (upward in x for `theta >= 0`, reciprocal otherwise).
pub fn twisted_chiral_closed_form(
    label: &AdmissibleLabel,
    theta: i64,
    rect: &Rect,
) -> Result<Character, Error> {
    let ctx = label.context();
    let j0 = label.head_j();
    let ppp = label.pp_over_p();
    let half = Rat::new(1, 2);
    let exponent = {
        let v = &(&Rat::from_int(theta) + &half) + &j0;
        &ppp * &(&v * &v)
    };
    let pref_q = &(-&(&ppp * &(&j0 * &j0)) - &Rat::new(1, 8)) + &exponent;
    let pref_x = &(&Rat::from_int(2) * &ppp) * &j0;
    let prefactor = Monomial::new(pref_q, vec![pref_x]);

    let q_max = rect.q_max.clone();
    let t_half = &Rat::from_int(theta) + &half;
    // geometric expansion of 1/(1 + x q^{theta+1/2})
    let reach = (&q_max / &t_half.abs()).floor_int().to_i64().unwrap_or(0).max(0);
    let geom = if theta >= 0 {
        let g_rect = Rect::new(
            rect.q_min.clone().min(Rat::zero()),
            q_max.clone(),
            vec![Window::new(Rat::zero(), Rat::from_int(reach))],
        );
        geometric_inverse(&Monomial::new(t_half.clone(), vec![Rat::one()]), &-Rat::one(), &g_rect)?
    } else {
        // 1/(1+u) = u^{-1} sum (-u^{-1})^i with u = x q^{theta+1/2}
        let u_inv = Monomial::new(-t_half.clone(), vec![-Rat::one()]);
        let g_rect = Rect::new(
            rect.q_min.clone().min(Rat::zero()),
            q_max.clone(),
            vec![Window::new(Rat::from_int(-reach - 1), Rat::zero())],
        );
        geometric_inverse(&u_inv, &-Rat::one(), &g_rect)?.monomial_shift(&u_inv)
    };
    let g_win = geom.validity().windows[0].clone();
    let reach_i = g_win
        .lo
        .abs()
        .max(g_win.hi.abs())
        .ceil_int()
        .to_i64()
        .unwrap_or(0);
    let w_req = rect.windows[0]
        .hi
        .abs()
        .max(rect.windows[0].lo.abs())
        .ceil_int()
        .to_i64()
        .unwrap_or(0);
    let th_w = (w_req + reach_i).max(diag_reach(&q_max));
    let th_rect = Rect::new(
        rect.q_min.clone().min(Rat::zero()),
        q_max.clone(),
        vec![Window::symmetric(th_w)],
    );
    let th = crate::charlib::theta(&th_rect, ThetaForm::Product)?;
    let euler3 = euler_inv_cubed(&Rect::new(
        th_rect.q_min.clone(),
        q_max.clone(),
        vec![Window::point(Rat::zero())],
    ))?;
    let mut body = th.mul(&euler3)?.mul(&geom)?.restrict(rect)?;
    body.extend_q_min_to(&rect.q_min);
    let block = (prefactor.q.clone(), prefactor.xs[0].clone());
    Ok(Character::assemble(
        Some(ctx),
        CharKind::Derived,
        Side::N2,
        prefactor,
        body,
        block,
    ))
}

fn diag_reach(q_max: &Rat) -> i64 {
    let mut w = 0i64;
    while Rat::from_int((w + 1) * (w + 1)) <= &Rat::from_int(2) * q_max {
        w += 1;
    }
    w
}

/// The double-sum expansion of the meromorphic character kernel:
/// `(sum_{n,m>=0} - sum_{n,m<0}) (-x)^m phi^{n,m}(q)` with
/// `phi^{n,m} = q^{(p'/p)(pn+1/2+j0)^2 + (pn+1/2)m}
///            - q^{(p'/p)(pn+p-r+1/2+j0)^2 + (pn+p-r+1/2)m}`.
///
/// Every exponent in both quadrants is nonnegative, so the series floor
/// is 0; quadrant scans stop once past the quadratic vertices with all
/// exponents above qMax. The full double sum is a specialization of a
/// rank-one mock theta function of type A(1,0); no mock-modular
/// machinery is implemented here.
pub fn phi_double_sum(label: &AdmissibleLabel, rect: &Rect) -> Result<MSeries, Error> {
    if rect.arity() != 1 {
        return Err(Error::ArityMismatch(rect.arity(), 1));
    }
    let j0 = label.head_j();
    let ppp = label.pp_over_p();
    let half = Rat::new(1, 2);
    // quadratic offsets carry j0; the linear m-part does not
    let alpha = (half.clone(), &half + &j0);
    let beta = {
        let d = Rat::from_int(label.p - label.r);
        (&d + &alpha.0, &d + &alpha.1)
    };
    let expo = |c: &(Rat, Rat), n: i64, m: i64| -> Rat {
        let pn = Rat::from_int(label.p * n);
        let quad = &pn + &c.1;
        let lin = &pn + &c.0;
        &(&ppp * &(&quad * &quad)) + &(&lin * &Rat::from_int(m))
    };
    let q_max = rect.q_max.clone();
    let mut acc = crate::series::MSeries::zero(rect.clone());
    let mut push = |q: Rat, m: i64, coeff: i64| -> Result<(), Error> {
        let mono = Monomial::new(q, vec![Rat::from_int(m)]);
        if !rect.contains(&mono) {
            return Ok(());
        }
        let term = MSeries::monomial(mono, Rat::from_int(coeff), rect.clone());
        acc = acc.add(&term)?;
        Ok(())
    };
    // vertex of (p'/p)(pn + c_q)^2 + (pn + c_l) m in the variable pn
    let past_vertices = |n: i64, m: i64, upward: bool| -> bool {
        let vertex = |c: &(Rat, Rat)| -> Rat {
            // pn* = -c_q - m/(2 p'/p)
            &(-&c.1) - &(&Rat::from_int(m) / &(&Rat::from_int(2) * &ppp))
        };
        let pn = Rat::from_int(label.p * n);
        if upward {
            pn >= vertex(&alpha) && pn >= vertex(&beta)
        } else {
            pn <= vertex(&alpha) && pn <= vertex(&beta)
        }
    };
    let w = &rect.windows[0];
    let m_lo = w.lo.ceil_int().to_i64().unwrap();
    let m_hi = w.hi.floor_int().to_i64().unwrap();
    for m in m_lo..=m_hi {
        let (n0, upward, quadrant_sign) = if m >= 0 { (0i64, true, 1i64) } else { (-1, false, -1) };
        let coeff = quadrant_sign * if m % 2 == 0 { 1 } else { -1 };
        let mut n = n0;
        loop {
            let e1 = expo(&alpha, n, m);
            let e2 = expo(&beta, n, m);
            debug_assert!(!e1.is_negative() && !e2.is_negative());
            let done = e1 > q_max && e2 > q_max && past_vertices(n, m, upward);
            if e1 <= q_max {
                push(e1, m, coeff)?;
            }
            if e2 <= q_max {
                push(e2, m, -coeff)?;
            }
            if done {
                break;
            }
            n += if upward { 1 } else { -1 };
        }
    }
    // the full double sum over Z^2 never dips below q = 0
    let mut out = acc;
    out.set_q_floor(Floor::Finite(Rat::zero()));
    out.set_row_floor(0, Some(RowFloor::zero()));
    // completeness: rows just beyond the window still under qMax?
    let row_min = |m: i64| -> Rat {
        let (n0, upward) = if m >= 0 { (0i64, true) } else { (-1, false) };
        let mut best: Option<Rat> = None;
        let mut n = n0;
        loop {
            let e = expo(&alpha, n, m).min(expo(&beta, n, m));
            best = Some(match best.take() {
                None => e.clone(),
                Some(b) => b.min(e.clone()),
            });
            if e > q_max && past_vertices(n, m, upward) {
                break;
            }
            n += if upward { 1 } else { -1 };
        }
        best.unwrap()
    };
    out.set_edges(
        0,
        Edges {
            complete_lo: row_min(m_lo - 1) > q_max,
            complete_hi: row_min(m_hi + 1) > q_max,
        },
    );
    Ok(out)
}

/// The normalized irreducible N=2 character via the double-sum formula:
/// `q^{-(p'/p) j0^2} x^{2p' j0/p} (theta/eta^3) Phi`.
pub fn fsst_character(label: &AdmissibleLabel, rect: &Rect) -> Result<Character, Error> {
    let ctx = label.context();
    let j0 = label.head_j();
    let ppp = label.pp_over_p();
    let pref_q = -&(&(&ppp * &(&j0 * &j0)) + &Rat::new(1, 8));
    let pref_x = &(&Rat::from_int(2) * &ppp) * &j0;
    let prefactor = Monomial::new(pref_q, vec![pref_x]);

    let q_max = rect.q_max.clone();
    let d = diag_reach(&q_max);
    let w_req = rect.windows[0]
        .hi
        .abs()
        .max(rect.windows[0].lo.abs())
        .ceil_int()
        .to_i64()
        .unwrap_or(0);
    let wide = Rect::new(
        rect.q_min.clone().min(Rat::zero()),
        q_max.clone(),
        vec![Window::symmetric(w_req + d)],
    );
    let th = crate::charlib::theta(&wide, ThetaForm::Product)?;
    let phi = phi_double_sum(label, &wide)?;
    let euler3 = euler_inv_cubed(&Rect::new(
        wide.q_min.clone(),
        q_max.clone(),
        vec![Window::point(Rat::zero())],
    ))?;
    let mut body = th.mul(&euler3)?.mul(&phi)?.restrict(rect)?;
    body.extend_q_min_to(&rect.q_min);
    let block = (prefactor.q.clone(), prefactor.xs[0].clone());
    Ok(Character::assemble(
        Some(ctx),
        CharKind::Derived,
        Side::N2,
        prefactor,
        body,
        block,
    ))
}

/// One pairwise comparison of the crosscheck.
#[derive(Clone, Debug)]
pub struct PairCheck {
    pub pair: &'static str,
    pub equal: bool,
    pub first_difference: Option<(Monomial, Rat, Rat)>,
}

#[derive(Clone, Debug)]
pub struct CrosscheckReport {
    pub label: AdmissibleLabel,
    pub checks: Vec<PairCheck>,
}

impl CrosscheckReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.equal)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let _ = write!(
            out,
            "{{\"label\":{{\"p\":{},\"pp\":{},\"r\":{},\"s\":{}}},\"checks\":[",
            self.label.p, self.label.pp, self.label.r, self.label.s
        );
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{{\"pair\":\"{}\",\"equal\":{}", c.pair, c.equal);
            if let Some((m, l, r)) = &c.first_difference {
                out.push_str(",\"firstDifference\":{\"monomial\":");
                crate::series::write_monomial(&mut out, m);
                out.push_str(",\"lhs\":");
                crate::series::write_rat(&mut out, l);
                out.push_str(",\"rhs\":");
                crate::series::write_rat(&mut out, r);
                out.push('}');
            }
            out.push('}');
        }
        out.push_str("]}");
        out
    }
}

/// Run the three-way comparison: double-sum formula vs BGG alternating
/// sum vs the coset transform of the Malikov alternating sum, all on the
/// head-anchored rectangle of depth `q_max` and window `+-w`.
pub fn crosscheck_report(
    label: &AdmissibleLabel,
    q_max: i64,
    w: i64,
) -> Result<CrosscheckReport, Error> {
    let ctx = label.context();
    let qm = Rat::from_int(q_max);
    let rect = Rect::new(Rat::zero(), qm.clone(), vec![Window::symmetric(w)]);

    // the double-sum prefactor sits (p'/p)(j0 + 1/2)^2 below the head
    // vector, so that route needs the extra depth
    let phi_route = {
        let j0 = label.head_j();
        let v = &j0 + &Rat::new(1, 2);
        let extra = &label.pp_over_p() * &(&v * &v);
        let deep = Rect::new(Rat::zero(), &qm + &extra, vec![Window::symmetric(w)]);
        fsst_character(label, &deep)?
    };
    let bgg_route = normalize(&irreducible_n2_char(label, &rect)?)?;
    let malikov_route = {
        // the coset transform needs the window wide enough that unknown
        // rows' images start above q_max
        let w_aff = w.max(diag_reach(&qm));
        let aff_rect = Rect::new(Rat::zero(), qm.clone(), vec![Window::symmetric(w_aff)]);
        let aff = irreducible_affine_char(label, &aff_rect)?;
        normalize(&omega_plus(&aff)?)?
    };
    let _ = &ctx;

    // absolute rectangle anchored at the normalized head vector
    let anchor = bgg_route.prefactor().clone();
    let target = Rect::new(
        anchor.q.clone(),
        &anchor.q + &qm,
        vec![Window::new(
            &anchor.xs[0] - &Rat::from_int(w),
            &anchor.xs[0] + &Rat::from_int(w),
        )],
    );
    let mut checks = Vec::new();
    let mut run = |pair: &'static str, a: &Character, b: &Character| -> Result<(), Error> {
        let cmp = a.equal_on(b, &target)?;
        let (equal, first_difference) = match cmp {
            Comparison::Equal => (true, None),
            Comparison::FirstDifference { monomial, left, right } => {
                (false, Some((monomial, left, right)))
            }
        };
        checks.push(PairCheck { pair, equal, first_difference });
        Ok(())
    };
    run("phi-vs-bgg", &phi_route, &bgg_route)?;
    run("bgg-vs-malikov", &bgg_route, &malikov_route)?;
    run("phi-vs-malikov", &phi_route, &malikov_route)?;
    Ok(CrosscheckReport { label: *label, checks })
}

/// Crosscheck a batch of labels in parallel.
pub fn crosscheck_batch(
    labels: &[AdmissibleLabel],
    q_max: i64,
    w: i64,
) -> Vec<Result<CrosscheckReport, Error>> {
    use rayon::prelude::*;
    labels
        .par_iter()
        .map(|l| crosscheck_report(l, q_max, w))
        .collect()
}
