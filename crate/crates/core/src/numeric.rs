//! Floating evaluation of truncated characters at complex points.
//!
//! Exactness lives upstream; everything here is demonstrative double
//! precision. Rational powers use the principal branch throughout:
//! `q^{a/b} := exp((a/b) Log q)`.

use num_complex::Complex64;

use crate::charlib::Character;
use crate::error::Error;
use crate::rat::Rat;
use crate::series::MSeries;

#[derive(Clone, Copy, Debug)]
pub struct EvalPoint {
    pub q: Complex64,
    pub x: Complex64,
}

impl EvalPoint {
    pub fn new(q: Complex64, x: Complex64) -> Self {
        EvalPoint { q, x }
    }

    pub fn real(q: f64, x: f64) -> Self {
        EvalPoint { q: Complex64::new(q, 0.0), x: Complex64::new(x, 0.0) }
    }
}

/// Inside the convergence region: `0 < |q| < 1` and
/// `|q|^{1/2} < |x| < |q|^{-1/2}`.
pub fn in_region_a(p: &EvalPoint) -> bool {
    let qn = p.q.norm();
    let xn = p.x.norm();
    qn > 0.0 && qn < 1.0 && qn.sqrt() < xn && xn < 1.0 / qn.sqrt()
}

fn cpow(base: Complex64, e: &Rat) -> Complex64 {
    if e.is_zero() {
        return Complex64::new(1.0, 0.0);
    }
    (base.ln() * e.to_f64()).exp()
}

/// Evaluate a truncated series; the sum is finite by construction.
pub fn eval_series(s: &MSeries, q: Complex64, xs: &[Complex64]) -> Complex64 {
    assert_eq!(xs.len(), s.arity());
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, c) in s.terms() {
        let mut term = cpow(q, &m.q);
        for (e, x) in m.xs.iter().zip(xs) {
            term *= cpow(*x, e);
        }
        acc += term * c.to_f64();
    }
    acc
}

pub fn eval(chr: &Character, p: &EvalPoint) -> Complex64 {
    let pre = cpow(p.q, chr.h()) * cpow(p.x, chr.j());
    pre * eval_series(chr.body(), p.q, &[p.x])
}

#[derive(Clone, Debug)]
pub struct StabilizationReport {
    pub orders: Vec<i64>,
    pub values: Vec<Complex64>,
    /// Successive relative differences; entry i compares orders i and i+1.
    pub diffs: Vec<f64>,
    pub stabilizes: bool,
}

impl StabilizationReport {
    /// CSV with columns: order, value-re, value-im, successive-relative-diff.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("order,value-re,value-im,successive-relative-diff\n");
        for (i, order) in self.orders.iter().enumerate() {
            let v = self.values[i];
            let diff = if i == 0 {
                String::new()
            } else {
                format!("{:e}", self.diffs[i - 1])
            };
            out.push_str(&format!("{},{:e},{:e},{}\n", order, v.re, v.im, diff));
        }
        out
    }
}

/// Evaluate a truncation family at increasing orders and report the
/// successive relative differences; the family stabilizes when the last
/// difference drops below 1e-8.
pub fn stabilization<F>(
    family: F,
    p: &EvalPoint,
    orders: &[i64],
) -> Result<StabilizationReport, Error>
where
    F: Fn(i64) -> Result<Character, Error>,
{
    let mut values = Vec::with_capacity(orders.len());
    for &o in orders {
        let chr = family(o)?;
        values.push(eval(&chr, p));
    }
    let mut diffs = Vec::new();
    for pair in values.windows(2) {
        let scale = pair[1].norm().max(1e-300);
        diffs.push((pair[1] - pair[0]).norm() / scale);
    }
    let stabilizes = diffs.last().map(|d| *d < 1e-8).unwrap_or(false);
    Ok(StabilizationReport { orders: orders.to_vec(), values, diffs, stabilizes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charlib::{eta, relaxed_verma, verma_n2, LevelContext};
    use crate::rat::rat;
    use crate::series::{Monomial, Rect, Window};

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn region_membership() {
        assert!(in_region_a(&EvalPoint::real(0.09, 1.0)));
        assert!(!in_region_a(&EvalPoint::real(0.25, 2.1))); // |q|^{-1/2} = 2
        assert!(!in_region_a(&EvalPoint::real(1.0, 1.0)));
    }

    #[test]
    fn eta_matches_direct_product() {
        let rect = Rect::new(r(0), r(50), vec![Window::point(r(0))]);
        let e = eta(&rect).unwrap();
        let q = 0.1f64;
        let truncated = eval_series(&e, Complex64::new(q, 0.0), &[Complex64::new(1.0, 0.0)]);
        let mut direct = q.powf(1.0 / 24.0);
        for n in 1..=50 {
            direct *= 1.0 - q.powi(n);
        }
        assert!((truncated.re - direct).abs() / direct.abs() < 1e-12);
        assert!(truncated.im.abs() < 1e-14);
    }

    #[test]
    fn theta_sum_and_product_agree_numerically() {
        use crate::charlib::{theta, ThetaForm};
        let rect = Rect::new(r(0), r(30), vec![Window::symmetric(10)]);
        let p = theta(&rect, ThetaForm::Product).unwrap();
        let s = theta(&rect, ThetaForm::Sum).unwrap();
        let q = Complex64::new(0.1, 0.0);
        let x = Complex64::new(1.2, 0.0);
        let vp = eval_series(&p, q, &[x]);
        let vs = eval_series(&s, q, &[x]);
        assert!((vp - vs).norm() / vp.norm() < 1e-10);
    }

    #[test]
    fn eval_is_linear() {
        let c = LevelContext::new(r(1)).unwrap();
        let rect = Rect::new(r(0), r(8), vec![Window::symmetric(4)]);
        let a = relaxed_verma(&c, &r(0), &r(0), &rect).unwrap();
        let b = verma_n2(&c, &rat(1, 3), &rat(-1, 2), &rect).unwrap();
        let p = EvalPoint::real(0.07, 1.05);
        let va = eval(&a, &p);
        let vb = eval(&b, &p);
        // sum of absolute series evaluates to the sum of values
        let sa = a.to_series();
        let sb = b.to_series();
        let sum = sa.add(&sb).unwrap();
        let vsum = eval_series(&sum, p.q, &[p.x]);
        let direct = {
            // restrict both to the common rectangle before comparing
            let rect = sa.validity().intersect(sb.validity()).unwrap();
            let ra = sa.restrict(&rect).unwrap();
            let rb = sb.restrict(&rect).unwrap();
            eval_series(&ra, p.q, &[p.x]) + eval_series(&rb, p.q, &[p.x])
        };
        assert!((vsum - direct).norm() <= 1e-12 * direct.norm().max(1.0));
        let _ = (va, vb);
    }

    #[test]
    fn fsst_and_bgg_values_agree_at_three_points() {
        use charkit_core_points::*;
        mod charkit_core_points {
            pub use crate::admissible::{fsst_character, irreducible_n2_char, AdmissibleLabel};
            pub use crate::charlib::normalize;
        }
        let lab = AdmissibleLabel::new(3, 1, 1, 0).unwrap();
        let rect = Rect::new(r(0), r(15), vec![Window::symmetric(6)]);
        let fsst = fsst_character(&lab, &rect).unwrap();
        let bgg = normalize(&irreducible_n2_char(&lab, &rect).unwrap()).unwrap();
        for (q, x) in [(0.08, 1.1), (0.05, 0.9), (0.1, 1.3)] {
            let p = EvalPoint::real(q, x);
            assert!(in_region_a(&p));
            let a = eval(&fsst, &p);
            let b = eval(&bgg, &p);
            assert!((a - b).norm() / b.norm() < 1e-8, "at ({q}, {x})");
        }
    }

    #[test]
    fn constant_character_evaluates_to_one() {
        let c = LevelContext::new(r(1)).unwrap();
        let rect = Rect::new(r(0), r(2), vec![Window::symmetric(1)]);
        let chr = crate::charlib::Character::assemble(
            Some(c),
            crate::charlib::CharKind::Derived,
            crate::charlib::Side::Affine,
            Monomial::unit(1),
            crate::series::MSeries::one(rect),
            (r(0), r(0)),
        );
        let v = eval(&chr, &EvalPoint::real(0.3, 0.7));
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }
}
