//! Named verification suites behind `verify` in the CLI and the
//! acceptance tests. Each suite owns the padding of internal rectangles
//! so its final comparisons are exact on the requested box.

use std::fmt::Write as _;

use crate::charlib::{
    relaxed_verma, theta, verma_affine, verma_n2, Character, LevelContext, Side, Sign, ThetaForm,
};
use crate::error::Error;
use crate::flow::{omega_minus, omega_plus, spectral_flow, verify_branching, FockSigns,
    verify_branching_with_signs,
};
use crate::rat::{rat, Rat};
use crate::series::{Comparison, Rect, Window};

#[derive(Clone, Debug)]
pub struct SuiteCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{{\"suite\":\"{}\",\"pass\":{},\"checks\":[", self.suite, self.pass());
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(
                out,
                "{{\"name\":{},\"pass\":{}",
                serde_json::to_string(&c.name).unwrap(),
                c.pass
            );
            if !c.detail.is_empty() {
                let _ = write!(out, ",\"detail\":{}", serde_json::to_string(&c.detail).unwrap());
            }
            out.push('}');
        }
        out.push_str("]}");
        out
    }
}

fn check_from_comparison(name: String, cmp: Comparison) -> SuiteCheck {
    match cmp {
        Comparison::Equal => SuiteCheck { name, pass: true, detail: String::new() },
        Comparison::FirstDifference { monomial, left, right } => SuiteCheck {
            name,
            pass: false,
            detail: format!("first difference at {monomial}: {left} vs {right}"),
        },
    }
}

fn r(n: i64) -> Rat {
    Rat::from_int(n)
}

fn box_rect(q_max: i64, w: i64) -> Rect {
    Rect::new(Rat::zero(), r(q_max), vec![Window::symmetric(w)])
}

/// Smallest `W >= floor` with `(W+1)^2/2 - slope (W+1) >= need`.
fn guard_window(need: i64, slope: i64, floor: i64) -> i64 {
    (floor.max(0)..)
        .find(|&w| (w + 1) * (w + 1) - 2 * slope * (w + 1) >= 2 * need)
        .unwrap()
}

fn restrict_window(chr: &Character, w: i64) -> Result<Character, Error> {
    let v = chr.body().validity().clone();
    let body = chr
        .body()
        .restrict(&Rect::new(v.q_min, v.q_max, vec![Window::symmetric(w)]))?;
    let mut out = chr.clone();
    *out.body_mut() = body;
    Ok(out)
}

/// Jacobi triple product: theta in product form equals theta in sum
/// form, exactly on the requested box.
pub fn triple_product(q_max: i64, w: i64) -> Result<SuiteReport, Error> {
    let rect = box_rect(q_max, w);
    let prod = theta(&rect, ThetaForm::Product)?;
    let sum = theta(&rect, ThetaForm::Sum)?;
    let cmp = prod.equal_on(&sum, &rect)?;
    Ok(SuiteReport {
        suite: "triple-product",
        checks: vec![check_from_comparison(
            format!("theta product = theta sum (qmax {q_max}, window +-{w})"),
            cmp,
        )],
    })
}

/// Both coset round trips are the identity on constructor characters.
pub fn roundtrip(q_max: i64, w: i64) -> Result<SuiteReport, Error> {
    let ctx = LevelContext::new(r(1))?;
    let mut checks = Vec::new();

    // affine side: omega_minus . omega_plus = id
    let w1 = guard_window(q_max + w * w, 0, w);
    let q_in = q_max + (w * w + 1) / 2; // q_max + ceil(w^2/2)
    let forward: [(&str, Character); 2] = [
        ("relaxed Verma (0,0)", relaxed_verma(&ctx, &r(0), &r(0), &box_rect(q_in, w1))?),
        ("affine Verma j=1/2", verma_affine(&ctx, &rat(1, 2), &box_rect(q_in, w1))?),
    ];
    for (name, base) in forward {
        let up = restrict_window(&omega_plus(&base)?, w)?;
        let back = omega_minus(&up)?;
        let target = box_rect(q_max, w).translate(base.prefactor());
        let cmp = back.equal_on(&base, &target)?;
        checks.push(check_from_comparison(
            format!("omega_minus . omega_plus = id on {name}"),
            cmp,
        ));
    }

    // N=2 side: omega_plus . omega_minus = id
    let w2 = guard_window(q_max, 0, w);
    let q_in2 = q_max + w2 * w2; // generous: omega_minus drops w2^2/2
    let reverse: [(&str, Character); 2] = [
        ("N=2 Verma (0,0)", verma_n2(&ctx, &r(0), &r(0), &box_rect(q_in2, w2))?),
        (
            "N=2 Verma (-1/7, 2/3)",
            verma_n2(&ctx, &rat(-1, 7), &rat(2, 3), &box_rect(q_in2, w2))?,
        ),
    ];
    for (name, base) in reverse {
        let down = omega_minus(&base)?;
        let back = restrict_window(&omega_plus(&down)?, w)?;
        let target = box_rect(q_max, w).translate(base.prefactor());
        let cmp = back.equal_on(&base, &target)?;
        checks.push(check_from_comparison(
            format!("omega_plus . omega_minus = id on {name}"),
            cmp,
        ));
    }
    Ok(SuiteReport { suite: "roundtrip", checks })
}

/// The branching identity for the P7 matrix of bases, flows and levels,
/// plus the sign-flipped negative control.
pub fn branching(q_max: i64, w: i64) -> Result<SuiteReport, Error> {
    let mut checks = Vec::new();
    let rect3 = Rect::new(
        r(-(q_max + w * w)),
        r(q_max),
        vec![Window::symmetric(w); 3],
    );
    for k in [r(1), rat(1, 3)] {
        let ctx = LevelContext::new(k.clone())?;
        let bases: Vec<(&str, Side, Character)> = vec![
            (
                "relaxed Verma (0,0)",
                Side::Affine,
                relaxed_verma(&ctx, &r(0), &r(0), &box_rect(q_max, w))?,
            ),
            (
                "affine Verma j=0",
                Side::Affine,
                verma_affine(&ctx, &r(0), &box_rect(q_max, w))?,
            ),
            (
                "N=2 Verma (0,0)",
                Side::N2,
                verma_n2(&ctx, &r(0), &r(0), &box_rect(q_max, w))?,
            ),
        ];
        for (name, side, base) in bases {
            for theta in [-1i64, 0, 1] {
                let report = verify_branching(side, &base, theta, &rect3)?;
                checks.push(SuiteCheck {
                    name: format!("branching {name}, k = {k}, theta = {theta}"),
                    pass: report.equal,
                    detail: report
                        .first_difference
                        .map(|(m, l, rr)| format!("first difference at {m}: {l} vs {rr}"))
                        .unwrap_or_default(),
                });
            }
        }
    }
    // negative control: flipping a Fock weight sign must break it
    let ctx = LevelContext::new(r(1))?;
    let base = relaxed_verma(&ctx, &r(0), &r(0), &box_rect(q_max, w))?;
    let flipped = FockSigns { plus: Sign::Minus, minus: Sign::Minus };
    let control = verify_branching_with_signs(Side::Affine, &base, 0, &rect3, flipped)?;
    checks.push(SuiteCheck {
        name: "negative control (flipped Fock sign) fails".to_string(),
        pass: !control.equal && control.first_difference.is_some(),
        detail: String::new(),
    });
    Ok(SuiteReport { suite: "branching", checks })
}

/// Spectral-flow equivariance of the coset transform over the grid
/// `a, b in [-2, 2]`.
pub fn flow_equivariance(q_max: i64, w: i64) -> Result<SuiteReport, Error> {
    let ctx = LevelContext::new(r(1))?;
    let mut checks = Vec::new();
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            // left: flow_{a+b} after omega_plus
            let n2 = q_max + (a + b).abs() * w;
            let w2 = guard_window(n2, 0, w);
            let base_l = relaxed_verma(&ctx, &r(0), &r(0), &box_rect(n2, w2))?;
            let left =
                spectral_flow(&restrict_window(&omega_plus(&base_l)?, w)?, a + b)?;
            // right: omega_plus at the shifted weight after flow_a
            let n1 = q_max + b.abs() * w;
            let w1 = guard_window(n1, a.abs(), w);
            let q1 = n1 + a.abs() * w1;
            let base_r = relaxed_verma(&ctx, &r(0), &r(0), &box_rect(q1, w1))?;
            let flowed = spectral_flow(&base_r, a)?;
            let right = spectral_flow(&restrict_window(&omega_plus(&flowed)?, w)?, b)?;

            let target = Rect::new(
                left.h().clone(),
                left.h() + &r(q_max),
                vec![Window::new(left.j() - &r(w), left.j() + &r(w))],
            );
            let pass = left.prefactor() == right.prefactor();
            let cmp = left.equal_on(&right, &target)?;
            let mut check = check_from_comparison(format!("equivariance a = {a}, b = {b}"), cmp);
            check.pass &= pass;
            checks.push(check);
        }
    }
    Ok(SuiteReport { suite: "flow-equivariance", checks })
}

/// Wrap the admissible three-way crosscheck as a suite.
pub fn crosscheck(
    label: &crate::admissible::AdmissibleLabel,
    q_max: i64,
    w: i64,
) -> Result<SuiteReport, Error> {
    let report = crate::admissible::crosscheck_report(label, q_max, w)?;
    let checks = report
        .checks
        .iter()
        .map(|c| SuiteCheck {
            name: format!(
                "{} at (p,p',r,s) = ({},{},{},{})",
                c.pair, label.p, label.pp, label.r, label.s
            ),
            pass: c.equal,
            detail: c
                .first_difference
                .as_ref()
                .map(|(m, l, rr)| format!("first difference at {m}: {l} vs {rr}"))
                .unwrap_or_default(),
        })
        .collect();
    Ok(SuiteReport { suite: "crosscheck", checks })
}
