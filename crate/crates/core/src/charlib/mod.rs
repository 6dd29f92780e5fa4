//! Characters of the modules in play: Verma and relaxed Verma over
//! affine sl2, Verma and (anti)chiral Verma over the N=2 algebra,
//! Heisenberg Fock and rank-one lattice modules, plus the theta and eta
//! series and block-lattice bookkeeping.
//!
//! A [`Character`] is a prefactor monomial `q^h x^j` times a body series
//! whose x-exponents live on the integer lattice relative to the
//! prefactor. The body of every Verma-type module is a pure product read
//! off from the PBW basis of its negative modes; those products are not
//! printed in the source material, so each constructor is verified
//! against a brute-force monomial enumeration in the test suite.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::error::Error;
use crate::rat::Rat;
use crate::series::{
    pochhammer, Comparison, Edges, Floor, MSeries, Monomial, Rect, RowFloor, Window,
};

/// Level bookkeeping: `k`, `kappa^2 = 2/(k+2)` and `c_k = 3k/(k+2)`,
/// all exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelContext {
    k: Rat,
    kappa_sq: Rat,
    c: Rat,
}

impl LevelContext {
    pub fn new(k: Rat) -> Result<Self, Error> {
        let kp2 = &k + &Rat::from_int(2);
        if kp2.is_zero() {
            return Err(Error::CriticalLevel);
        }
        let kappa_sq = &Rat::from_int(2) / &kp2;
        let c = &(&Rat::from_int(3) * &k) / &kp2;
        Ok(LevelContext { k, kappa_sq, c })
    }

    /// Recover the level from an N=2 central charge via `c = 3k/(k+2)`.
    pub fn from_central_charge(c: Rat) -> Result<Self, Error> {
        let denom = &Rat::from_int(3) - &c;
        if denom.is_zero() {
            return Err(Error::CriticalLevel);
        }
        LevelContext::new(&(&Rat::from_int(2) * &c) / &denom)
    }

    pub fn k(&self) -> &Rat {
        &self.k
    }

    pub fn kappa_sq(&self) -> &Rat {
        &self.kappa_sq
    }

    pub fn central_charge(&self) -> &Rat {
        &self.c
    }

    pub fn k_plus_2(&self) -> Rat {
        &self.k + &Rat::from_int(2)
    }

    /// `Delta_j = j(j+1)/(k+2)`, the conformal weight of the affine
    /// highest-weight vector of sl2-weight `j`.
    pub fn delta(&self, j: &Rat) -> Rat {
        &(j * &(j + &Rat::one())) / &self.k_plus_2()
    }
}

/// Highest-weight data `(h, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeight {
    pub h: Rat,
    pub j: Rat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Affine,
    N2,
    Heisenberg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn rat(self) -> Rat {
        match self {
            Sign::Plus => Rat::one(),
            Sign::Minus => -Rat::one(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharKind {
    AffineVerma,
    RelaxedVerma,
    N2Verma,
    ChiralVerma,
    AntichiralVerma,
    FockPlus,
    FockMinus,
    LatticePlus,
    LatticeMinus,
    Derived,
}

impl CharKind {
    pub fn name(self) -> &'static str {
        match self {
            CharKind::AffineVerma => "affine-verma",
            CharKind::RelaxedVerma => "relaxed-verma",
            CharKind::N2Verma => "n2-verma",
            CharKind::ChiralVerma => "chiral-verma",
            CharKind::AntichiralVerma => "antichiral-verma",
            CharKind::FockPlus => "fock-plus",
            CharKind::FockMinus => "fock-minus",
            CharKind::LatticePlus => "lattice-plus",
            CharKind::LatticeMinus => "lattice-minus",
            CharKind::Derived => "derived",
        }
    }

    pub fn from_name(s: &str) -> Option<CharKind> {
        Some(match s {
            "affine-verma" => CharKind::AffineVerma,
            "relaxed-verma" => CharKind::RelaxedVerma,
            "n2-verma" => CharKind::N2Verma,
            "chiral-verma" => CharKind::ChiralVerma,
            "antichiral-verma" => CharKind::AntichiralVerma,
            "fock-plus" => CharKind::FockPlus,
            "fock-minus" => CharKind::FockMinus,
            "lattice-plus" => CharKind::LatticePlus,
            "lattice-minus" => CharKind::LatticeMinus,
            "derived" => CharKind::Derived,
            _ => return None,
        })
    }

    fn side(self) -> Side {
        match self {
            CharKind::AffineVerma | CharKind::RelaxedVerma => Side::Affine,
            CharKind::N2Verma | CharKind::ChiralVerma | CharKind::AntichiralVerma => Side::N2,
            CharKind::FockPlus
            | CharKind::FockMinus
            | CharKind::LatticePlus
            | CharKind::LatticeMinus => Side::Heisenberg,
            CharKind::Derived => Side::Affine,
        }
    }
}

/// A formal character: `q^h x^j` times a body on the integer lattice.
#[derive(Clone, Debug)]
pub struct Character {
    pub ctx: Option<LevelContext>,
    pub kind: CharKind,
    pub side: Side,
    prefactor: Monomial,
    body: MSeries,
    block: (Rat, Rat),
}

impl Character {
    pub(crate) fn assemble(
        ctx: Option<LevelContext>,
        kind: CharKind,
        side: Side,
        prefactor: Monomial,
        body: MSeries,
        block: (Rat, Rat),
    ) -> Self {
        debug_assert_eq!(prefactor.arity(), 1);
        debug_assert_eq!(body.arity(), 1);
        Character { ctx, kind, side, prefactor, body, block }
    }

    /// Assemble a derived character from a prefactor and a body whose
    /// x-exponents are integers relative to it.
    pub fn new_derived(
        ctx: Option<LevelContext>,
        side: Side,
        prefactor: Monomial,
        body: MSeries,
    ) -> Self {
        let block = (prefactor.q.clone(), prefactor.xs[0].clone());
        Character::assemble(ctx, CharKind::Derived, side, prefactor, body, block)
    }

    pub fn prefactor(&self) -> &Monomial {
        &self.prefactor
    }

    pub fn h(&self) -> &Rat {
        &self.prefactor.q
    }

    pub fn j(&self) -> &Rat {
        &self.prefactor.xs[0]
    }

    pub fn body(&self) -> &MSeries {
        &self.body
    }

    pub fn block(&self) -> &(Rat, Rat) {
        &self.block
    }

    pub(crate) fn body_mut(&mut self) -> &mut MSeries {
        &mut self.body
    }

    /// Restrict the body's validity claim (body coordinates).
    pub fn restrict_body(&self, rect: &Rect) -> Result<Character, Error> {
        let body = self.body.restrict(rect)?;
        let mut out = self.clone();
        out.body = body;
        Ok(out)
    }

    /// The character as one absolute series, prefactor multiplied in.
    pub fn to_series(&self) -> MSeries {
        self.body.monomial_shift(&self.prefactor)
    }

    /// Exact comparison of two characters as absolute series, on a
    /// rectangle in absolute exponents.
    pub fn equal_on(&self, other: &Character, rect: &Rect) -> Result<Comparison, Error> {
        self.to_series().equal_on(&other.to_series(), rect)
    }

    /// The rectangle of the body, translated to absolute exponents.
    pub fn absolute_validity(&self) -> Rect {
        self.body.validity().translate(&self.prefactor)
    }
}

/// Dedekind eta: `q^{1/24} (q;q)_inf`. The rectangle bounds the
/// Pochhammer part; the 1/24 shift moves it along.
pub fn eta(rect: &Rect) -> Result<MSeries, Error> {
    let p = pochhammer(&Monomial::q_power(Rat::one(), rect.arity()), &Rat::one(), rect, false)?;
    Ok(p.monomial_shift(&Monomial::q_power(Rat::new(1, 24), rect.arity())))
}

/// `1/(q;q)^3` (the eta-cube denominator without its `q^{1/8}` shift).
pub(crate) fn euler_inv_cubed(rect: &Rect) -> Result<MSeries, Error> {
    let p = pochhammer(&Monomial::q_power(Rat::one(), rect.arity()), &Rat::one(), rect, true)?;
    p.mul(&p)?.mul(&p)?.restrict(rect)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaForm {
    Product,
    Sum,
}

/// Jacobi theta `sum_m q^{m^2/2} x^m`, either as the triple product
/// `(-xq^{1/2};q)(-x^{-1}q^{1/2};q)(q;q)` or as the lattice sum.
pub fn theta(rect: &Rect, form: ThetaForm) -> Result<MSeries, Error> {
    if rect.arity() != 1 {
        return Err(Error::ArityMismatch(rect.arity(), 1));
    }
    match form {
        ThetaForm::Sum => {
            let mut s = lattice_sum(Sign::Plus, rect);
            s.set_row_floor(0, Some(RowFloor::new(Rat::zero(), Rat::zero(), Rat::one())));
            Ok(s)
        }
        ThetaForm::Product => {
            let w_hi = diag_window(&rect.q_max).max(window_reach(rect, true));
            let w_lo = diag_window(&rect.q_max).max(window_reach(rect, false));
            let q_work = rect.q_min.clone().min(Rat::zero());
            let half = Rat::new(1, 2);
            let plus = pochhammer(
                &Monomial::new(half.clone(), vec![Rat::one()]),
                &-Rat::one(),
                &Rect::new(q_work.clone(), rect.q_max.clone(), vec![Window::new(Rat::zero(), Rat::from_int(w_hi))]),
                false,
            )?;
            let minus = pochhammer(
                &Monomial::new(half, vec![-Rat::one()]),
                &-Rat::one(),
                &Rect::new(q_work.clone(), rect.q_max.clone(), vec![Window::new(Rat::from_int(-w_lo), Rat::zero())]),
                false,
            )?;
            let euler = pochhammer(
                &Monomial::q_power(Rat::one(), 1),
                &Rat::one(),
                &Rect::new(q_work, rect.q_max.clone(), vec![Window::point(Rat::zero())]),
                false,
            )?;
            let mut out = plus.mul(&minus)?.mul(&euler)?.restrict(rect)?;
            out.extend_q_min_to(&rect.q_min);
            out.set_row_floor(0, Some(RowFloor::new(Rat::zero(), Rat::zero(), Rat::one())));
            Ok(out)
        }
    }
}

/// Integer reach of the window of `rect` on one side of zero.
fn window_reach(rect: &Rect, hi: bool) -> i64 {
    let w = &rect.windows[0];
    let v = if hi { w.hi.floor_int() } else { -w.lo.ceil_int() };
    v.to_i64().unwrap_or(0).max(0)
}

/// Smallest `W >= 0` such that integer rows beyond `|W|` start above
/// `q_max` on the diagonal `q >= n^2/2`.
fn diag_window(q_max: &Rat) -> i64 {
    let mut w = 0i64;
    let two = Rat::from_int(2);
    while Rat::from_int((w + 1) * (w + 1)) <= &two * q_max {
        w += 1;
    }
    w
}

/// `sum_{l in window} q^{s l^2/2} x^l`, flagged as the full lattice sum
/// over Z: a side is complete only when the first row beyond it already
/// starts above qMax.
fn lattice_sum(sign: Sign, rect: &Rect) -> MSeries {
    let two = Rat::from_int(2);
    let s = sign.rat();
    let mut terms = BTreeMap::new();
    let lo = rect.windows[0].lo.ceil_int().to_i64().unwrap();
    let hi = rect.windows[0].hi.floor_int().to_i64().unwrap();
    for l in lo..=hi {
        let q = &(&s * &Rat::from_int(l * l)) / &two;
        let m = Monomial::new(q, vec![Rat::from_int(l)]);
        if rect.contains(&m) {
            terms.insert(m, Rat::one());
        }
    }
    let beyond = |edge: i64| -> bool {
        &(&s * &Rat::from_int(edge * edge)) / &two <= rect.q_max
    };
    let edges = vec![Edges {
        complete_lo: !beyond(lo - 1),
        complete_hi: !beyond(hi + 1),
    }];
    let q_floor = match sign {
        Sign::Plus => Floor::Finite(Rat::zero()),
        Sign::Minus => Floor::NegInf,
    };
    let row_floor = RowFloor::new(Rat::zero(), Rat::zero(), s);
    MSeries::from_raw_parts(1, terms, rect.clone(), q_floor, edges, vec![Some(row_floor)])
}

/// The affine Verma body `1/[(q;q)(xq;q)(x^{-1};q)]`, exact on `rect`.
/// Internal factors live on padded windows so the conservative product
/// claim covers the requested rectangle.
fn affine_verma_body(rect: &Rect) -> Result<MSeries, Error> {
    let q_work = rect.q_min.clone().min(Rat::zero());
    let q_max = rect.q_max.clone();
    let w2 = window_reach(rect, true).max(q_max.ceil_int().to_i64().unwrap_or(0)).max(0);
    let l3 = rect.windows[0].lo.floor_int().to_i64().unwrap_or(0).min(0) - w2;
    let p1 = pochhammer(
        &Monomial::q_power(Rat::one(), 1),
        &Rat::one(),
        &Rect::new(q_work.clone(), q_max.clone(), vec![Window::point(Rat::zero())]),
        true,
    )?;
    let p2 = pochhammer(
        &Monomial::new(Rat::one(), vec![Rat::one()]),
        &Rat::one(),
        &Rect::new(q_work.clone(), q_max.clone(), vec![Window::new(Rat::zero(), Rat::from_int(w2))]),
        true,
    )?;
    let p3 = pochhammer(
        &Monomial::new(Rat::zero(), vec![-Rat::one()]),
        &Rat::one(),
        &Rect::new(q_work, q_max, vec![Window::new(Rat::from_int(l3), Rat::zero())]),
        true,
    )?;
    let mut body = p1.mul(&p2)?.mul(&p3)?.restrict(rect)?;
    body.extend_q_min_to(&rect.q_min);
    body.set_row_floor(0, Some(RowFloor::zero()));
    Ok(body)
}

/// Verma module over affine sl2 of sl2-weight `j`: prefactor
/// `q^{Delta_j} x^j`, PBW body over `E_{-n}, H_{-n} (n>=1)` and
/// `F_{-n} (n>=0)`.
pub fn verma_affine(ctx: &LevelContext, j: &Rat, rect: &Rect) -> Result<Character, Error> {
    let body = affine_verma_body(rect)?;
    let h = ctx.delta(j);
    let prefactor = Monomial::new(h.clone(), vec![j.clone()]);
    Ok(Character::assemble(
        Some(ctx.clone()),
        CharKind::AffineVerma,
        Side::Affine,
        prefactor,
        body,
        (h, j.clone()),
    ))
}

/// Relaxed Verma module: `q^h x^j (sum_n x^n) / (q;q)^3`. Its q^0 row is
/// infinite in both x-directions; the window is the only cutoff.
pub fn relaxed_verma(ctx: &LevelContext, h: &Rat, j: &Rat, rect: &Rect) -> Result<Character, Error> {
    let q_work = rect.q_min.clone().min(Rat::zero());
    let work = Rect::new(q_work, rect.q_max.clone(), rect.windows.clone());
    let lo = work.windows[0].lo.ceil_int().to_i64().unwrap();
    let hi = work.windows[0].hi.floor_int().to_i64().unwrap();
    let mut terms = BTreeMap::new();
    for n in lo..=hi {
        terms.insert(Monomial::new(Rat::zero(), vec![Rat::from_int(n)]), Rat::one());
    }
    let row_sum = MSeries::from_raw_parts(
        1,
        terms,
        work.clone(),
        Floor::Finite(Rat::zero()),
        vec![Edges::UNKNOWN],
        vec![Some(RowFloor::zero())],
    );
    let euler3 = euler_inv_cubed(&Rect::new(
        work.q_min.clone(),
        work.q_max.clone(),
        vec![Window::point(Rat::zero())],
    ))?;
    let mut body = row_sum.mul(&euler3)?.restrict(rect)?;
    body.extend_q_min_to(&rect.q_min);
    body.set_row_floor(0, Some(RowFloor::zero()));
    let prefactor = Monomial::new(h.clone(), vec![j.clone()]);
    Ok(Character::assemble(
        Some(ctx.clone()),
        CharKind::RelaxedVerma,
        Side::Affine,
        prefactor,
        body,
        (h.clone(), j.clone()),
    ))
}

/// Body `(-x q^{a_plus}; q)(-x^{-1} q^{a_minus}; q) / (q;q)^2` shared by
/// the N=2 Verma and (anti)chiral Verma characters. Fermionic rows enter
/// on or above the diagonal `q = n^2/2`.
fn n2_body(a_plus: Rat, a_minus: Rat, rect: &Rect) -> Result<MSeries, Error> {
    let q_work = rect.q_min.clone().min(Rat::zero());
    let q_max = rect.q_max.clone();
    let w_hi = diag_window(&q_max).max(window_reach(rect, true));
    let w_lo = diag_window(&q_max).max(window_reach(rect, false));
    let gplus = pochhammer(
        &Monomial::new(a_plus, vec![Rat::one()]),
        &-Rat::one(),
        &Rect::new(q_work.clone(), q_max.clone(), vec![Window::new(Rat::zero(), Rat::from_int(w_hi))]),
        false,
    )?;
    let gminus = pochhammer(
        &Monomial::new(a_minus, vec![-Rat::one()]),
        &-Rat::one(),
        &Rect::new(q_work.clone(), q_max.clone(), vec![Window::new(Rat::from_int(-w_lo), Rat::zero())]),
        false,
    )?;
    let euler_sq = {
        let e = pochhammer(
            &Monomial::q_power(Rat::one(), 1),
            &Rat::one(),
            &Rect::new(q_work, q_max, vec![Window::point(Rat::zero())]),
            true,
        )?;
        e.mul(&e)?
    };
    let mut body = gplus.mul(&gminus)?.mul(&euler_sq)?.restrict(rect)?;
    body.extend_q_min_to(&rect.q_min);
    body.set_row_floor(0, Some(RowFloor::new(Rat::zero(), Rat::zero(), Rat::one())));
    Ok(body)
}

/// Verma module over the N=2 algebra with weights `(h, j)`.
pub fn verma_n2(ctx: &LevelContext, h: &Rat, j: &Rat, rect: &Rect) -> Result<Character, Error> {
    let half = Rat::new(1, 2);
    let body = n2_body(half.clone(), half, rect)?;
    let prefactor = Monomial::new(h.clone(), vec![j.clone()]);
    Ok(Character::assemble(
        Some(ctx.clone()),
        CharKind::N2Verma,
        Side::N2,
        prefactor,
        body,
        (h.clone(), j.clone()),
    ))
}

/// Chiral (`h = +j/2`, with G^+_{-1/2} quotiented away) or anti-chiral
/// (`h = -j/2`, G^-_{-1/2} removed) Verma module of J_0-weight `j`.
pub fn chiral_verma(ctx: &LevelContext, j: &Rat, side: Sign, rect: &Rect) -> Result<Character, Error> {
    let half = Rat::new(1, 2);
    let three_half = Rat::new(3, 2);
    let (a_plus, a_minus, h, kind) = match side {
        Sign::Plus => (three_half, half.clone(), &half * j, CharKind::ChiralVerma),
        Sign::Minus => (half.clone(), three_half, -(&half * j), CharKind::AntichiralVerma),
    };
    let body = n2_body(a_plus, a_minus, rect)?;
    let prefactor = Monomial::new(h.clone(), vec![j.clone()]);
    Ok(Character::assemble(
        Some(ctx.clone()),
        kind,
        Side::N2,
        prefactor,
        body,
        (h, j.clone()),
    ))
}

/// Heisenberg Fock character in the reduced rational charge `w`:
/// prefactor `q^{+-w^2/2} x^w`, body `1/(q;q)`.
pub fn fock_char(sign: Sign, w: &Rat, rect: &Rect) -> Result<Character, Error> {
    let two = Rat::from_int(2);
    let h = &(&sign.rat() * &(w * w)) / &two;
    let q_work = rect.q_min.clone().min(Rat::zero());
    let euler = pochhammer(
        &Monomial::q_power(Rat::one(), 1),
        &Rat::one(),
        &Rect::new(q_work, rect.q_max.clone(), vec![Window::point(Rat::zero())]),
        true,
    )?;
    let mut body = euler.extend_window_to(0, &rect.windows[0])?;
    body.extend_q_min_to(&rect.q_min);
    let prefactor = Monomial::new(h.clone(), vec![w.clone()]);
    Ok(Character::assemble(
        None,
        match sign {
            Sign::Plus => CharKind::FockPlus,
            Sign::Minus => CharKind::FockMinus,
        },
        Side::Heisenberg,
        prefactor,
        body,
        (h, w.clone()),
    ))
}

/// Lattice superalgebra character `sum_l q^{+-l^2/2} x^l / (q;q)`.
pub fn lattice_char(sign: Sign, rect: &Rect) -> Result<Character, Error> {
    let floor_win = match sign {
        Sign::Plus => Rat::zero(),
        Sign::Minus => {
            let reach = window_reach(rect, true).max(window_reach(rect, false));
            -(&Rat::from_int(reach * reach) / &Rat::from_int(2))
        }
    };
    let q_work = rect.q_min.clone().min(floor_win.clone()).min(Rat::zero());
    let work = Rect::new(q_work.clone(), rect.q_max.clone(), rect.windows.clone());
    let lsum = lattice_sum(sign, &work);
    // multiply a finite windowed surrogate: the Heisenberg factor is
    // x-trivial, so inside the window the product equals the character
    let mut windowed = lsum.clone();
    windowed.set_q_floor(Floor::Finite(floor_win.clone()));
    windowed.set_edges(0, Edges::COMPLETE);
    // partitions must reach down the sunken rows: depth qMax - floor
    let euler = pochhammer(
        &Monomial::q_power(Rat::one(), 1),
        &Rat::one(),
        &Rect::new(
            q_work,
            &rect.q_max - &floor_win,
            vec![Window::point(Rat::zero())],
        ),
        true,
    )?;
    let mut body = windowed.mul(&euler)?.restrict(rect)?;
    // restore the truth about the full lattice sum over Z
    body.set_q_floor(lsum.q_floor().clone());
    body.set_edges(0, lsum.edges()[0]);
    body.set_row_floor(0, Some(RowFloor::new(Rat::zero(), Rat::zero(), sign.rat())));
    Ok(Character::assemble(
        None,
        match sign {
            Sign::Plus => CharKind::LatticePlus,
            Sign::Minus => CharKind::LatticeMinus,
        },
        Side::Heisenberg,
        Monomial::unit(1),
        body,
        (Rat::zero(), Rat::zero()),
    ))
}

/// Do `(h1, j1)` and `(h2, j2)` label the same block?
///
/// The affine block lattice is `Z^2`; the N=2 lattice is
/// `{(a + b/2, b) : a, b in Z}`.
pub fn same_block(side: Side, a: &(Rat, Rat), b: &(Rat, Rat)) -> bool {
    let dh = &a.0 - &b.0;
    let dj = &a.1 - &b.1;
    match side {
        Side::Affine => dh.is_integer() && dj.is_integer(),
        Side::N2 => {
            let half = Rat::new(1, 2);
            dj.is_integer() && (&dh - &(&half * &dj)).is_integer()
        }
        Side::Heisenberg => dh.is_integer() && dj.is_zero(),
    }
}

/// Shift the prefactor by `q^{-c/24}`. The block label is untouched: it
/// names the module, not its normalized character.
pub fn normalize(chr: &Character) -> Result<Character, Error> {
    let ctx = chr.ctx.as_ref().ok_or(Error::MissingContext)?;
    let shift = -(ctx.central_charge() / &Rat::from_int(24));
    let mut out = chr.clone();
    out.prefactor = out.prefactor.mul(&Monomial::new(shift, vec![Rat::zero()]));
    Ok(out)
}

/// Serialize a character in the interchange format.
pub fn character_to_json(chr: &Character) -> String {
    let mut out = String::new();
    let _ = write!(out, "{{\"kind\":\"{}\",\"ctx\":", chr.kind.name());
    match &chr.ctx {
        Some(ctx) => {
            out.push_str("{\"k\":");
            crate::series::write_rat(&mut out, ctx.k());
            out.push('}');
        }
        None => out.push_str("null"),
    }
    out.push_str(",\"prefactor\":");
    crate::series::write_monomial(&mut out, chr.prefactor());
    out.push_str(",\"body\":");
    out.push_str(&chr.body().to_json());
    out.push_str(",\"block\":[");
    crate::series::write_rat(&mut out, &chr.block().0);
    out.push(',');
    crate::series::write_rat(&mut out, &chr.block().1);
    out.push_str("]}");
    out
}

/// Parse a character from the interchange format. Support bookkeeping is
/// conservative except where the named kind pins it down.
pub fn character_from_json(text: &str) -> Result<Character, Error> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::BadJson(e.to_string()))?;
    let bad = |m: &str| Error::BadJson(m.to_string());
    let kind = v
        .get("kind")
        .and_then(serde_json::Value::as_str)
        .and_then(CharKind::from_name)
        .ok_or_else(|| bad("missing or unknown kind"))?;
    let ctx = match v.get("ctx") {
        None | Some(serde_json::Value::Null) => None,
        Some(c) => {
            let k = crate::series::parse_rat_value(c.get("k").ok_or_else(|| bad("ctx missing k"))?)?;
            Some(LevelContext::new(k)?)
        }
    };
    let prefactor =
        crate::series::parse_monomial(v.get("prefactor").ok_or_else(|| bad("missing prefactor"))?, 1)?;
    let body = MSeries::from_json_value(v.get("body").ok_or_else(|| bad("missing body"))?)?;
    if body.arity() != 1 {
        return Err(bad("character body must have arity 1"));
    }
    let block = {
        let b = v
            .get("block")
            .and_then(serde_json::Value::as_array)
            .filter(|b| b.len() == 2)
            .ok_or_else(|| bad("missing block"))?;
        (
            crate::series::parse_rat_value(&b[0])?,
            crate::series::parse_rat_value(&b[1])?,
        )
    };
    let side = kind.side();
    let mut chr = Character::assemble(ctx, kind, side, prefactor, body, block);
    restore_known_support(&mut chr);
    Ok(chr)
}

/// Reinstate the support bookkeeping a constructor of this kind would
/// have produced; parsed `derived` characters stay fully conservative.
fn restore_known_support(chr: &mut Character) {
    let floor = match chr.kind {
        CharKind::AffineVerma | CharKind::RelaxedVerma | CharKind::FockPlus | CharKind::FockMinus => {
            Some(RowFloor::zero())
        }
        CharKind::N2Verma
        | CharKind::ChiralVerma
        | CharKind::AntichiralVerma
        | CharKind::LatticePlus => Some(RowFloor::new(Rat::zero(), Rat::zero(), Rat::one())),
        CharKind::LatticeMinus => Some(RowFloor::new(Rat::zero(), Rat::zero(), -Rat::one())),
        CharKind::Derived => None,
    };
    if let Some(f) = floor {
        let q_floor = f.global_min();
        chr.body_mut().set_row_floor(0, Some(f));
        chr.body_mut().set_q_floor(q_floor);
    }
}

#[cfg(test)]
mod tests;
