use super::*;
use crate::charlib::{
    chiral_verma, relaxed_verma, verma_affine, verma_n2, LevelContext, Side, Sign,
};
use crate::rat::rat;
use crate::series::Window;

fn r(n: i64) -> Rat {
    Rat::from_int(n)
}

fn ctx(k_num: i64, k_den: i64) -> LevelContext {
    LevelContext::new(rat(k_num, k_den)).unwrap()
}

fn box_rect(q_max: i64, w: i64) -> Rect {
    Rect::new(r(0), r(q_max), vec![Window::symmetric(w)])
}

/// A bare prefactor character q^h x^j with body 1.
fn monomial_char(c: &LevelContext, side: Side, h: Rat, j: Rat, q_max: i64, w: i64) -> Character {
    let rect = box_rect(q_max, w);
    let body = MSeries::one(rect);
    let block = (h.clone(), j.clone());
    Character::assemble(
        Some(c.clone()),
        CharKind::Derived,
        side,
        Monomial::new(h, vec![j]),
        body,
        block,
    )
}

#[test]
fn flow_by_zero_is_identity() {
    let c = ctx(1, 1);
    let chr = relaxed_verma(&c, &r(0), &r(0), &box_rect(3, 2)).unwrap();
    let f = spectral_flow(&chr, 0).unwrap();
    assert_eq!(f.prefactor(), chr.prefactor());
    let rect = chr.absolute_validity();
    assert!(chr.equal_on(&f, &rect).unwrap().is_equal());
}

#[test]
fn affine_flow_prefactor_formula() {
    // theta = 1 at k = 1 sends q^h x^j to q^{h + j + 1/4} x^{j + 1/2}
    let c = ctx(1, 1);
    let chr = monomial_char(&c, Side::Affine, rat(1, 3), rat(1, 5), 4, 2);
    let f = spectral_flow(&chr, 1).unwrap();
    assert_eq!(*f.h(), &rat(1, 3) + &(&rat(1, 5) + &rat(1, 4)));
    assert_eq!(*f.j(), &rat(1, 5) + &rat(1, 2));
}

#[test]
fn n2_flow_prefactor_formula() {
    // theta = 1 at k = 1: q-shift j + k/(2(k+2)) = j + 1/6, x-shift 1/3
    let c = ctx(1, 1);
    let chr = monomial_char(&c, Side::N2, r(0), rat(1, 2), 4, 2);
    let f = spectral_flow(&chr, 1).unwrap();
    assert_eq!(*f.h(), &rat(1, 2) + &rat(1, 6));
    assert_eq!(*f.j(), &rat(1, 2) + &rat(1, 3));
}

#[test]
fn flow_composes_on_relaxed_verma() {
    let c = ctx(1, 1);
    // inner padding: each shear costs |theta| * window
    let chr = relaxed_verma(&c, &r(0), &r(0), &box_rect(10, 3)).unwrap();
    let two_steps = spectral_flow(&spectral_flow(&chr, 1).unwrap(), 1).unwrap();
    let one_step = spectral_flow(&chr, 2).unwrap();
    assert_eq!(two_steps.prefactor(), one_step.prefactor());
    let rect = two_steps
        .absolute_validity()
        .intersect(&one_step.absolute_validity())
        .unwrap();
    assert!(rect.q_max >= &rect.q_min + &r(4));
    assert!(two_steps.equal_on(&one_step, &rect).unwrap().is_equal());
}

#[test]
fn omega_plus_on_single_row() {
    let c = ctx(1, 1);
    let chr = monomial_char(&c, Side::Affine, rat(1, 2), r(1), 4, 2);
    let o = omega_plus(&chr).unwrap();
    // (h, j) -> (h - j^2/3, 2j/3) at k = 1
    assert_eq!(*o.h(), &rat(1, 2) - &rat(1, 3));
    assert_eq!(*o.j(), rat(2, 3));
    assert_eq!(o.side, Side::N2);
    // row 0 carries no q-shift
    assert_eq!(o.body().coeff(&Monomial::unit(1)).unwrap(), r(1));
}

#[test]
fn omega_plus_of_relaxed_is_n2_verma() {
    let c = ctx(1, 1);
    let rect = box_rect(6, 3);
    let relaxed = relaxed_verma(&c, &r(0), &r(0), &rect).unwrap();
    let image = omega_plus(&relaxed).unwrap();
    let expect = verma_n2(&c, &r(0), &r(0), &rect).unwrap();
    assert!(image.equal_on(&expect, &rect).unwrap().is_equal());
}

#[test]
fn omega_plus_of_affine_verma_is_chiral_verma() {
    // cpair(2): Omega^+ (M_{j,k}) = chiral Verma of weight 2j/(k+2)
    for (j, k) in [(r(0), r(1)), (rat(1, 2), r(1)), (rat(-1, 2), rat(1, 3))] {
        let c = LevelContext::new(k).unwrap();
        let rect = box_rect(6, 4);
        let verma = verma_affine(&c, &j, &rect).unwrap();
        let image = omega_plus(&verma).unwrap();
        let jj = &(&r(2) * &j) / &c.k_plus_2();
        let expect = chiral_verma(&c, &jj, Sign::Plus, &rect).unwrap();
        assert_eq!(image.h(), expect.h());
        assert_eq!(image.j(), expect.j());
        let cmp_rect = rect.translate(expect.prefactor());
        assert!(
            image.equal_on(&expect, &cmp_rect).unwrap().is_equal(),
            "j = {j}"
        );
    }
}

#[test]
fn omega_roundtrip_small() {
    // forward: padded so the return lands exactly on [0, 3] x (+-2)
    let c = ctx(1, 1);
    let q_max = r(3);
    let w = 2i64;
    // (W+1)^2/2 >= q_max + w^2/2 = 5 -> W = 3
    let relaxed = relaxed_verma(&c, &r(0), &r(0), &Rect::new(r(0), r(5), vec![Window::symmetric(3)])).unwrap();
    let up = omega_plus(&relaxed).unwrap();
    let up = restrict_window(&up, w);
    let back = omega_minus(&up).unwrap();
    let rect = Rect::new(r(0), q_max, vec![Window::symmetric(w)]);
    assert!(back.equal_on(&relaxed, &rect).unwrap().is_equal());
    assert_eq!(back.h(), relaxed.h());
    assert_eq!(back.j(), relaxed.j());
}

fn restrict_window(chr: &Character, w: i64) -> Character {
    let v = chr.body().validity().clone();
    let body = chr
        .body()
        .restrict(&Rect::new(v.q_min.clone(), v.q_max.clone(), vec![Window::symmetric(w)]))
        .unwrap();
    let mut out = chr.clone();
    *out.body_mut() = body;
    out
}

#[test]
fn branching_relaxed_affine_theta_zero() {
    let c = ctx(1, 1);
    let base = relaxed_verma(&c, &r(0), &r(0), &box_rect(4, 3)).unwrap();
    let rect3 = Rect::new(r(-10), r(4), vec![Window::symmetric(3); 3]);
    let report = verify_branching(Side::Affine, &base, 0, &rect3).unwrap();
    assert!(report.equal, "difference: {:?}", report.first_difference);
    assert!(report.term_counts > 0);
}

#[test]
fn branching_negative_control_reports_difference() {
    let c = ctx(1, 1);
    let base = relaxed_verma(&c, &r(0), &r(0), &box_rect(4, 3)).unwrap();
    let rect3 = Rect::new(r(0), r(4), vec![Window::symmetric(3); 3]);
    for flipped in [
        FockSigns { plus: Sign::Minus, minus: Sign::Minus },
        FockSigns { plus: Sign::Plus, minus: Sign::Plus },
    ] {
        let report =
            verify_branching_with_signs(Side::Affine, &base, 0, &rect3, flipped).unwrap();
        assert!(!report.equal);
        let (m, _, _) = report.first_difference.expect("difference expected");
        assert!(rect3.contains(&m));
    }
}

#[test]
fn branching_report_serializes() {
    let c = ctx(1, 1);
    let base = relaxed_verma(&c, &r(0), &r(0), &box_rect(2, 2)).unwrap();
    let rect3 = Rect::new(r(-4), r(2), vec![Window::symmetric(2); 3]);
    let report = verify_branching(Side::Affine, &base, 0, &rect3).unwrap();
    let json = report.to_json();
    assert!(json.contains("\"equal\":true"));
    assert!(json.contains("\"termCounts\""));
    assert!(json.contains("\"rect\""));
}

#[test]
fn branching_n2_theta_one() {
    let c = ctx(1, 1);
    let base = verma_n2(&c, &r(0), &r(0), &box_rect(4, 3)).unwrap();
    let rect3 = Rect::new(r(-10), r(4), vec![Window::symmetric(3); 3]);
    let report = verify_branching(Side::N2, &base, 1, &rect3).unwrap();
    assert!(report.equal, "difference: {:?}", report.first_difference);
}

#[test]
fn flow_equivariance_single_case() {
    // Delta^{a+b} . Omega^+ = Omega^+_{j + ka/2 - b} . Delta^a at (a, b) = (1, -1)
    let c = ctx(1, 1);
    let (a, b) = (1i64, -1i64);
    let q_max = 3i64;
    let w = 2i64;
    // left: omega on [0, N2] x (+-W2), then restrict and flow by a + b
    let n2 = q_max + (a + b).unsigned_abs() as i64 * w;
    let w2 = (1..).find(|&ww: &i64| (ww + 1) * (ww + 1) >= 2 * n2 && ww >= w).unwrap();
    let base_l = relaxed_verma(&c, &r(0), &r(0), &box_rect(n2, w2)).unwrap();
    let left = spectral_flow(&restrict_window(&omega_plus(&base_l).unwrap(), w), a + b).unwrap();
    // right: flow by a, omega, restrict, flow by b
    let n1 = q_max + b.unsigned_abs() as i64 * w;
    let w1 = (1..)
        .find(|&ww: &i64| (ww + 1) * (ww + 1) - 2 * a.abs() * (ww + 1) >= 2 * n1 && ww >= w)
        .unwrap();
    let q1 = n1 + a.abs() * w1;
    let base_r = relaxed_verma(&c, &r(0), &r(0), &box_rect(q1, w1)).unwrap();
    let flowed = spectral_flow(&base_r, a).unwrap();
    let right = spectral_flow(&restrict_window(&omega_plus(&flowed).unwrap(), w), b).unwrap();

    assert_eq!(left.prefactor(), right.prefactor());
    let target = Rect::new(
        left.h().clone(),
        left.h() + &r(q_max),
        vec![Window::new(left.j() - &r(w), left.j() + &r(w))],
    );
    assert!(left.equal_on(&right, &target).unwrap().is_equal());
}
