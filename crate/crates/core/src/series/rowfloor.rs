//! Quadratic lower bounds on the q-support of series rows.
//!
//! For a series in `q` and one tracked variable `x`, a [`RowFloor`]
//! `(a, b, c)` certifies that every term of the *untruncated* series with
//! x-exponent `n` has q-exponent at least `a + b*n + c*n^2/2`, for all
//! `n`. Constructors know these bounds in closed form; transforms update
//! them (a shear adds to `b`, the coset row maps shift `c` by one). They
//! are what lets rectangle propagation bound contributions from rows the
//! truncation never stored.

use crate::rat::Rat;

/// Global q-floor of a series: a lower bound on every term's q-exponent.
///
/// `PosInf` marks the genuinely zero series (no terms at all); `NegInf`
/// means no finite bound is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Floor {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl Floor {
    pub fn min(self, other: Floor) -> Floor {
        use Floor::*;
        match (self, other) {
            (NegInf, _) | (_, NegInf) => NegInf,
            (PosInf, f) | (f, PosInf) => f,
            (Finite(a), Finite(b)) => Finite(a.min(b)),
        }
    }

    /// Floor of a product: q-exponents add. A zero factor zeroes the product.
    pub fn add(&self, other: &Floor) -> Floor {
        use Floor::*;
        match (self, other) {
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }

    pub fn shift(&self, d: &Rat) -> Floor {
        match self {
            Floor::Finite(a) => Floor::Finite(a + d),
            f => f.clone(),
        }
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Floor::Finite(a) => Some(a),
            _ => None,
        }
    }
}

/// `floor(n) = a + b*n + c*n^2/2`, a valid lower bound for every row `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowFloor {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl RowFloor {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Self {
        RowFloor { a, b, c }
    }

    /// The flat bound `q >= 0` used by every PBW-product body.
    pub fn zero() -> Self {
        RowFloor::new(Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn eval(&self, n: &Rat) -> Rat {
        &self.a + &(&self.b * n) + &(&self.c * &(&(n * n) / &Rat::from_int(2)))
    }

    /// Minimum of the bound over all real `n` (a fortiori over the lattice).
    pub fn global_min(&self) -> Floor {
        if self.c.is_positive() {
            // vertex of the parabola: a - b^2/(2c)
            let two = Rat::from_int(2);
            Floor::Finite(&self.a - &(&(&self.b * &self.b) / &(&two * &self.c)))
        } else if self.c.is_zero() {
            if self.b.is_zero() {
                Floor::Finite(self.a.clone())
            } else {
                Floor::NegInf
            }
        } else {
            Floor::NegInf
        }
    }

    /// Bound after translating rows by `eps` and q by `dq`:
    /// `floor'(n) = floor(n - eps) + dq`.
    pub fn translate(&self, dq: &Rat, eps: &Rat) -> RowFloor {
        let two = Rat::from_int(2);
        let a = &(&self.a - &(&self.b * eps)) + &(&(&self.c * &(eps * eps)) / &two) + dq.clone();
        let b = &self.b - &(&self.c * eps);
        RowFloor::new(a, b, self.c.clone())
    }

    /// Bound after the shear `q^e x^n -> q^{e + t n} x^n`.
    pub fn shear(&self, t: &Rat) -> RowFloor {
        RowFloor::new(self.a.clone(), &self.b + t, self.c.clone())
    }

    /// Bound after multiplying row `n` by `q^{s * n^2/2}` (`s` is +1 or -1).
    pub fn row_quadratic_shift(&self, s: i64) -> RowFloor {
        RowFloor::new(self.a.clone(), self.b.clone(), &self.c + &Rat::from_int(s))
    }

    /// Lower bound for a product: the infimal convolution
    /// `min over u+v=n of f(u) + g(v)`, relaxed over real splits.
    pub fn inf_conv(&self, other: &RowFloor) -> Option<RowFloor> {
        let two = Rat::from_int(2);
        if self.c.is_negative() || other.c.is_negative() {
            return None;
        }
        match (self.c.is_zero(), other.c.is_zero()) {
            (true, true) => {
                if self.b == other.b {
                    Some(RowFloor::new(&self.a + &other.a, self.b.clone(), Rat::zero()))
                } else {
                    None
                }
            }
            (true, false) => {
                // min over w of g-part: a1 + a2 - (b1-b2)^2/(2 c2), slope b1
                let d = &self.b - &other.b;
                let a = &(&self.a + &other.a) - &(&(&d * &d) / &(&two * &other.c));
                Some(RowFloor::new(a, self.b.clone(), Rat::zero()))
            }
            (false, true) => other.inf_conv(self),
            (false, false) => {
                let csum = &self.c + &other.c;
                let d = &self.b - &other.b;
                let a = &(&self.a + &other.a) - &(&(&d * &d) / &(&two * &csum));
                let b = &(&(&self.b * &other.c) + &(&other.b * &self.c)) / &csum;
                let c = &(&self.c * &other.c) / &csum;
                Some(RowFloor::new(a, b, c))
            }
        }
    }

    /// A single quadratic lying below both bounds (for sums of series).
    pub fn lower_min(&self, other: &RowFloor) -> Option<RowFloor> {
        if self.b == other.b && self.c == other.c {
            return Some(RowFloor::new(
                self.a.clone().min(other.a.clone()),
                self.b.clone(),
                self.c.clone(),
            ));
        }
        // fall back to the flat bound min(global minima)
        match (self.global_min(), other.global_min()) {
            (Floor::Finite(x), Floor::Finite(y)) => {
                Some(RowFloor::new(x.min(y), Rat::zero(), Rat::zero()))
            }
            _ => None,
        }
    }

    /// Minimum of the bound over a closed interval (real relaxation).
    pub fn min_on(&self, lo: &Rat, hi: &Rat) -> Rat {
        let ends = self.eval(lo).min(self.eval(hi));
        if self.c.is_positive() {
            let vertex = -(&self.b / &self.c);
            if *lo <= vertex && vertex <= *hi {
                if let Floor::Finite(m) = self.global_min() {
                    return m;
                }
            }
        }
        ends
    }

    /// Minimum of the bound over the integers of one side of a window:
    /// rows `n >= from` (when `upward`) or `n <= from`.
    pub fn min_beyond(&self, from: &Rat, upward: bool) -> Floor {
        if self.c.is_negative() {
            return Floor::NegInf;
        }
        if self.c.is_zero() {
            let towards_min = if upward { self.b.is_negative() } else { self.b.is_positive() };
            return if self.b.is_zero() || !towards_min {
                Floor::Finite(self.eval(from))
            } else {
                Floor::NegInf
            };
        }
        // parabola vertex at n* = -b/c
        let vertex = -(&self.b / &self.c);
        let best = if upward {
            if vertex <= *from {
                self.eval(from)
            } else {
                // nearest integers around the vertex, clamped to the side
                let lo = Rat::from_big(vertex.floor_int(), 1.into()).max(from.clone());
                let hi = Rat::from_big(vertex.ceil_int(), 1.into()).max(from.clone());
                self.eval(&lo).min(self.eval(&hi))
            }
        } else if vertex >= *from {
            self.eval(from)
        } else {
            let lo = Rat::from_big(vertex.floor_int(), 1.into()).min(from.clone());
            let hi = Rat::from_big(vertex.ceil_int(), 1.into()).min(from.clone());
            self.eval(&lo).min(self.eval(&hi))
        };
        Floor::Finite(best)
    }
}
