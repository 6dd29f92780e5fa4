use super::*;
use crate::rat::rat;

fn r(n: i64) -> Rat {
    Rat::from_int(n)
}

fn ctx(k_num: i64, k_den: i64) -> LevelContext {
    LevelContext::new(rat(k_num, k_den)).unwrap()
}

fn rect(q_max: Rat, w: i64) -> Rect {
    Rect::new(Rat::zero(), q_max, vec![Window::symmetric(w)])
}

fn row(s: &MSeries, q: Rat, x: i64) -> Rat {
    s.coeff(&Monomial::new(q, vec![r(x)])).unwrap()
}

#[test]
fn level_context_constants() {
    let c = ctx(1, 1);
    assert_eq!(*c.kappa_sq(), rat(2, 3));
    assert_eq!(*c.central_charge(), r(1));
    assert_eq!(c.delta(&r(0)), r(0));
    assert_eq!(c.delta(&rat(1, 2)), rat(1, 4));
    assert!(LevelContext::new(r(-2)).is_err());
    // c = 3(1 - 2p'/p) for (p, p') = (3, 1) is 1, i.e. k = 1
    let from_c = LevelContext::from_central_charge(r(1)).unwrap();
    assert_eq!(*from_c.k(), r(1));
}

#[test]
fn theta_sum_small_window() {
    let s = theta(&rect(r(2), 2), ThetaForm::Sum).unwrap();
    assert_eq!(row(&s, r(0), 0), r(1));
    assert_eq!(row(&s, rat(1, 2), 1), r(1));
    assert_eq!(row(&s, rat(1, 2), -1), r(1));
    assert_eq!(row(&s, r(2), 2), r(1));
    assert_eq!(row(&s, r(2), -2), r(1));
    assert_eq!(s.term_count(), 5);
}

#[test]
fn eta_two_terms_at_qmax_one() {
    let e = eta(&Rect::new(r(0), r(1), vec![Window::point(r(0))])).unwrap();
    assert_eq!(e.term_count(), 2);
    assert_eq!(e.coeff(&Monomial::q_power(rat(1, 24), 1)).unwrap(), r(1));
    assert_eq!(e.coeff(&Monomial::q_power(rat(25, 24), 1)).unwrap(), r(-1));
}

#[test]
fn jacobi_triple_product_small() {
    let rect = rect(r(8), 4);
    let prod = theta(&rect, ThetaForm::Product).unwrap();
    let sum = theta(&rect, ThetaForm::Sum).unwrap();
    assert!(prod.equal_on(&sum, &rect).unwrap().is_equal());
}

#[test]
fn affine_verma_low_rows() {
    let c = ctx(1, 1);
    let chr = verma_affine(&c, &r(0), &rect(r(4), 4)).unwrap();
    assert_eq!(*chr.h(), r(0)); // Delta_0 = 0
    // q^0 row: the F_0-string
    for m in 0..=4 {
        assert_eq!(row(chr.body(), r(0), -m), r(1));
    }
    for m in 1..=4 {
        assert_eq!(row(chr.body(), r(0), m), r(0));
    }
    // q^1 row at x-shift 0: H_{-1} and E_{-1} F_0
    assert_eq!(row(chr.body(), r(1), 0), r(2));
    // q^1 row at x-shift 1: E_{-1}
    assert_eq!(row(chr.body(), r(1), 1), r(1));
}

#[test]
fn relaxed_verma_rows() {
    let c = ctx(1, 1);
    let chr = relaxed_verma(&c, &r(0), &r(0), &rect(r(4), 3)).unwrap();
    assert!(chr.prefactor().is_unit());
    for n in -3..=3 {
        assert_eq!(row(chr.body(), r(0), n), r(1), "q^0 row at {n}");
        assert_eq!(row(chr.body(), r(1), n), r(3), "q^1 row at {n}");
    }
}

#[test]
fn n2_and_chiral_verma_half_level_rows() {
    let c = ctx(1, 1);
    let full = verma_n2(&c, &r(0), &r(0), &rect(r(2), 2)).unwrap();
    assert_eq!(row(full.body(), rat(1, 2), 1), r(1));
    assert_eq!(row(full.body(), rat(1, 2), -1), r(1));
    assert_eq!(row(full.body(), r(0), 0), r(1));
    let chi = chiral_verma(&c, &r(0), Sign::Plus, &rect(r(2), 2)).unwrap();
    assert_eq!(row(chi.body(), rat(1, 2), 1), r(0));
    assert_eq!(row(chi.body(), rat(1, 2), -1), r(1));
    assert_eq!(row(chi.body(), r(0), 0), r(1));
    let anti = chiral_verma(&c, &r(0), Sign::Minus, &rect(r(2), 2)).unwrap();
    assert_eq!(row(anti.body(), rat(1, 2), 1), r(1));
    assert_eq!(row(anti.body(), rat(1, 2), -1), r(0));
}

#[test]
fn chiral_prefactor_is_half_j() {
    let c = ctx(1, 1);
    let chi = chiral_verma(&c, &rat(2, 3), Sign::Plus, &rect(r(1), 1)).unwrap();
    assert_eq!(*chi.h(), rat(1, 3));
    let anti = chiral_verma(&c, &rat(2, 3), Sign::Minus, &rect(r(1), 1)).unwrap();
    assert_eq!(*anti.h(), rat(-1, 3));
}

#[test]
fn n2_body_is_theta_over_euler_cubed() {
    let c = ctx(1, 1);
    let box4 = rect(r(4), 3);
    let chr = verma_n2(&c, &r(0), &r(0), &box4).unwrap();
    let th = theta(&box4, ThetaForm::Sum).unwrap();
    let e3 = euler_inv_cubed(&Rect::new(r(0), r(4), vec![Window::point(r(0))])).unwrap();
    let combined = th.mul(&e3).unwrap();
    assert!(chr.body().equal_on(&combined, &box4).unwrap().is_equal());
}

#[test]
fn fock_prefactors() {
    let vac = fock_char(Sign::Plus, &r(0), &rect(r(3), 1)).unwrap();
    assert!(vac.prefactor().is_unit());
    for (e, c) in [(0, 1), (1, 1), (2, 2), (3, 3)] {
        assert_eq!(row(vac.body(), r(e), 0), r(c));
    }
    let plus = fock_char(Sign::Plus, &r(1), &rect(r(1), 2)).unwrap();
    assert_eq!(*plus.h(), rat(1, 2));
    assert_eq!(*plus.j(), r(1));
    let minus = fock_char(Sign::Minus, &r(1), &rect(r(1), 2)).unwrap();
    assert_eq!(*minus.h(), rat(-1, 2));
}

#[test]
fn lattice_rows() {
    let vp = lattice_char(Sign::Plus, &rect(r(3), 3)).unwrap();
    assert_eq!(row(vp.body(), rat(1, 2), 1), r(1));
    assert_eq!(row(vp.body(), rat(1, 2), -1), r(1));
    assert_eq!(row(vp.body(), r(0), 1), r(0));
    let vm = lattice_char(
        Sign::Minus,
        &Rect::new(r(-3), r(2), vec![Window::symmetric(2)]),
    )
    .unwrap();
    assert_eq!(row(vm.body(), r(-2), 2), r(1));
    assert_eq!(row(vm.body(), r(-2), -2), r(1));
    // x-shift 0 row of both: the partition series
    for (e, c) in [(0, 1), (1, 1), (2, 2)] {
        assert_eq!(row(vp.body(), r(e), 0), r(c));
        assert_eq!(row(vm.body(), r(e), 0), r(c));
    }
}

#[test]
fn block_lattices() {
    assert!(same_block(Side::Affine, &(r(0), r(0)), &(r(3), r(-2))));
    assert!(!same_block(Side::Affine, &(r(0), r(0)), &(rat(1, 2), r(0))));
    assert!(same_block(Side::N2, &(r(0), r(0)), &(rat(1, 2), r(1))));
    assert!(!same_block(Side::N2, &(r(0), r(0)), &(rat(1, 2), r(0))));
}

#[test]
fn constructors_respect_block_lattice() {
    // j = 0 and j = 2 are linked by a singular vector at k = 1: one block
    let c = ctx(1, 1);
    let a = verma_affine(&c, &r(0), &rect(r(2), 2)).unwrap();
    let b = verma_affine(&c, &r(2), &rect(r(2), 2)).unwrap();
    assert!(same_block(Side::Affine, a.block(), b.block()));
    let n = verma_n2(&c, &r(0), &r(0), &rect(r(2), 2)).unwrap();
    let m = verma_n2(&c, &rat(3, 2), &r(1), &rect(r(2), 2)).unwrap();
    assert!(same_block(Side::N2, n.block(), m.block()));
}

#[test]
fn normalize_shifts_by_c_over_24() {
    let c1 = ctx(1, 1); // c = 1
    let chr = verma_affine(&c1, &r(0), &rect(r(1), 1)).unwrap();
    let n = normalize(&chr).unwrap();
    assert_eq!(n.h().clone(), rat(-1, 24));
    let c0 = ctx(0, 1); // c = 0
    let chr0 = verma_affine(&c0, &r(0), &rect(r(1), 1)).unwrap();
    let n0 = normalize(&chr0).unwrap();
    assert_eq!(n0.h().clone(), r(0));
}

#[test]
fn character_json_round_trip() {
    let c = ctx(1, 3);
    let chr = verma_n2(&c, &rat(-1, 7), &rat(2, 7), &rect(r(3), 2)).unwrap();
    let text = character_to_json(&chr);
    let back = character_from_json(&text).unwrap();
    assert_eq!(back.kind, CharKind::N2Verma);
    assert_eq!(back.ctx.as_ref().unwrap().k(), c.k());
    let r1 = chr.absolute_validity();
    assert!(chr.equal_on(&back, &r1).unwrap().is_equal());
    assert_eq!(character_to_json(&back), text);
}
