//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! The oracles here are independent of the implementation paths they
//! check: PBW characters are recomputed by brute-force monomial
//! enumeration over the generator lists, the Euler product against the
//! pentagonal-number series, and the partition series against a direct
//! count.

use std::collections::BTreeMap;

use charkit_core::admissible::{crosscheck_batch, fsst_character, irreducible_n2_char, twisted_chiral_closed_form, AdmissibleLabel};
use charkit_core::charlib::{
    chiral_verma, fock_char, lattice_char, normalize, relaxed_verma, verma_affine, verma_n2,
    Character, LevelContext, Sign,
};
use charkit_core::flow::{omega_plus, spectral_flow};
use charkit_core::numeric::{eval, in_region_a, stabilization, EvalPoint};
use charkit_core::rat::{rat, Rat};
use charkit_core::series::{pochhammer, Monomial, Rect, Window};
use charkit_core::suites;

fn r(n: i64) -> Rat {
    Rat::from_int(n)
}

fn box_rect(q_max: i64, w: i64) -> Rect {
    Rect::new(r(0), r(q_max), vec![Window::symmetric(w)])
}

// ---------------------------------------------------------------------
// brute-force PBW oracle
// ---------------------------------------------------------------------

#[derive(Clone, Copy)]
struct Mode {
    q_num: i64, // level in half-units: q = q_num / 2
    x: i64,
    fermionic: bool,
}

fn mode(q_num: i64, x: i64, fermionic: bool) -> Mode {
    Mode { q_num, x, fermionic }
}

/// Count monomials in the free (super)algebra over `modes` by
/// (2*level, x-weight), up to level `q_max2 / 2`.
fn pbw_counts(modes: &[Mode], q_max2: i64, x_cap: i64) -> BTreeMap<(i64, i64), u64> {
    fn rec(
        modes: &[Mode],
        idx: usize,
        q2: i64,
        x: i64,
        q_max2: i64,
        x_cap: i64,
        out: &mut BTreeMap<(i64, i64), u64>,
    ) {
        if idx == modes.len() {
            *out.entry((q2, x)).or_insert(0) += 1;
            return;
        }
        let m = modes[idx];
        let max_mult = if m.fermionic {
            1
        } else if m.q_num > 0 {
            (q_max2 - q2) / m.q_num
        } else {
            // zero-level modes move x only; cap by the window plus the
            // largest opposite drift the leveled modes can buy
            2 * x_cap + q_max2
        };
        for mult in 0..=max_mult {
            let nq = q2 + mult * m.q_num;
            if nq > q_max2 {
                break;
            }
            rec(modes, idx + 1, nq, x + mult * m.x, q_max2, x_cap, out);
        }
    }
    let mut out = BTreeMap::new();
    rec(modes, 0, 0, 0, q_max2, x_cap, &mut out);
    out
}

fn affine_modes(levels: i64) -> Vec<Mode> {
    let mut v = vec![mode(0, -1, false)]; // F_0
    for n in 1..=levels {
        v.push(mode(2 * n, 1, false)); // E_{-n}
        v.push(mode(2 * n, 0, false)); // H_{-n}
        v.push(mode(2 * n, -1, false)); // F_{-n}
    }
    v
}

fn n2_modes(levels: i64, g_plus_from: i64, g_minus_from: i64) -> Vec<Mode> {
    // g_*_from are the first half-odd mode numerators (1 for r=1/2, 3 for 3/2)
    let mut v = Vec::new();
    for n in 1..=levels {
        v.push(mode(2 * n, 0, false)); // L_{-n}
        v.push(mode(2 * n, 0, false)); // J_{-n}
    }
    let mut g = g_plus_from;
    while g <= 2 * levels {
        v.push(mode(g, 1, true)); // G^+_{-g/2}
        g += 2;
    }
    let mut g = g_minus_from;
    while g <= 2 * levels {
        v.push(mode(g, -1, true)); // G^-_{-g/2}
        g += 2;
    }
    v
}

fn oracle_coeff(counts: &BTreeMap<(i64, i64), u64>, q2: i64, x: i64) -> Rat {
    Rat::from_int(*counts.get(&(q2, x)).unwrap_or(&0) as i64)
}

fn assert_body_matches_oracle(
    name: &str,
    chr: &Character,
    counts: &BTreeMap<(i64, i64), u64>,
    half_lattice: bool,
    window: i64,
) {
    let step = if half_lattice { 1 } else { 2 };
    let mut q2 = 0;
    while q2 <= 8 {
        for x in -window..=window {
            let m = Monomial::new(rat(q2, 2), vec![r(x)]);
            let got = chr.body().coeff(&m).unwrap();
            let want = oracle_coeff(counts, q2, x);
            assert_eq!(got, want, "{name}: level {q2}/2, weight {x}");
        }
        q2 += step;
    }
}

#[test]
fn p1_pbw_oracle_for_every_constructor() {
    let ctx = LevelContext::new(r(1)).unwrap();
    let rect = box_rect(4, 4);

    let verma = verma_affine(&ctx, &r(0), &rect).unwrap();
    assert_body_matches_oracle("affine Verma", &verma, &pbw_counts(&affine_modes(4), 8, 4), false, 4);

    // relaxed Verma: one-dimensional zero-row in every weight, so each
    // window column carries the total of a no-F0 enumeration
    let relaxed = relaxed_verma(&ctx, &r(0), &r(0), &rect).unwrap();
    let free = pbw_counts(&affine_modes(4)[1..].to_vec(), 8, 4);
    let mut column: BTreeMap<i64, u64> = BTreeMap::new();
    for ((q2, _), c) in &free {
        *column.entry(*q2).or_insert(0) += c;
    }
    for q2 in (0..=8).step_by(2) {
        for x in -4..=4i64 {
            let got = relaxed.body().coeff(&Monomial::new(rat(q2, 2), vec![r(x)])).unwrap();
            assert_eq!(got, Rat::from_int(*column.get(&q2).unwrap_or(&0) as i64));
        }
    }

    let n2 = verma_n2(&ctx, &r(0), &r(0), &rect).unwrap();
    assert_body_matches_oracle("N=2 Verma", &n2, &pbw_counts(&n2_modes(4, 1, 1), 8, 4), true, 4);

    let chi = chiral_verma(&ctx, &r(0), Sign::Plus, &rect).unwrap();
    assert_body_matches_oracle("chiral Verma", &chi, &pbw_counts(&n2_modes(4, 3, 1), 8, 4), true, 4);

    let anti = chiral_verma(&ctx, &r(0), Sign::Minus, &rect).unwrap();
    assert_body_matches_oracle(
        "anti-chiral Verma",
        &anti,
        &pbw_counts(&n2_modes(4, 1, 3), 8, 4),
        true,
        4,
    );

    // Fock: Heisenberg body, prefactor +-w^2/2
    let heis = pbw_counts(
        &(1..=4).map(|n| mode(2 * n, 0, false)).collect::<Vec<_>>(),
        8,
        4,
    );
    for (sign, w) in [(Sign::Plus, rat(1, 2)), (Sign::Minus, r(1)), (Sign::Plus, r(0))] {
        let f = fock_char(sign, &w, &rect).unwrap();
        let expect_h = &(&sign.rat() * &(&w * &w)) / &r(2);
        assert_eq!(*f.h(), expect_h);
        assert_eq!(*f.j(), w);
        for q2 in (0..=8).step_by(2) {
            assert_eq!(
                f.body().coeff(&Monomial::new(rat(q2, 2), vec![r(0)])).unwrap(),
                oracle_coeff(&heis, q2, 0)
            );
        }
    }

    // lattice characters: charge l at +-l^2/2 tensor the Heisenberg part
    for sign in [Sign::Plus, Sign::Minus] {
        let rect = Rect::new(r(-8), r(4), vec![Window::symmetric(4)]);
        let v = lattice_char(sign, &rect).unwrap();
        for l in -4..=4i64 {
            for lvl in 0..=4i64 {
                let base = &(&sign.rat() * &r(l * l)) / &r(2);
                let q = &base + &r(lvl);
                let m = Monomial::new(q, vec![r(l)]);
                if !rect.contains(&m) {
                    continue; // V+ rows climb out of the box quickly
                }
                let got = v.body().coeff(&m).unwrap();
                assert_eq!(got, oracle_coeff(&heis, 2 * lvl, 0), "{sign:?} l={l} lvl={lvl}");
            }
        }
    }
    println!("P1 PBW oracle (all constructor kinds, level <= 4, window +-4): PASS");
}

#[test]
fn p2_pentagonal_and_partition_oracles() {
    // (q;q)_inf vs the pentagonal-number series up to q^50
    let rect = Rect::new(r(0), r(50), vec![Window::point(r(0))]);
    let euler = pochhammer(&Monomial::q_power(r(1), 1), &r(1), &rect, false).unwrap();
    let mut pentagonal: BTreeMap<i64, i64> = BTreeMap::new();
    for k in -10..=10i64 {
        if k == 0 {
            continue;
        }
        let e = k * (3 * k - 1) / 2;
        if e <= 50 {
            pentagonal.insert(e, if k % 2 == 0 { 1 } else { -1 });
        }
    }
    pentagonal.insert(0, 1);
    for e in 0..=50i64 {
        let got = euler.coeff(&Monomial::q_power(r(e), 1)).unwrap();
        assert_eq!(got, Rat::from_int(*pentagonal.get(&e).unwrap_or(&0)), "q^{e}");
    }

    // 1/(q;q)_inf vs directly counted partitions up to q^30
    let rect = Rect::new(r(0), r(30), vec![Window::point(r(0))]);
    let inv = pochhammer(&Monomial::q_power(r(1), 1), &r(1), &rect, true).unwrap();
    fn count_partitions(n: i64, max_part: i64) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max_part.min(n)).map(|p| count_partitions(n - p, p)).sum()
    }
    for n in 0..=30i64 {
        let got = inv.coeff(&Monomial::q_power(r(n), 1)).unwrap();
        assert_eq!(got, Rat::from_int(count_partitions(n, n) as i64), "p({n})");
    }
    assert_eq!(count_partitions(30, 30), 5604);
    println!("P2 pentagonal-number and partition oracles (qMax 50 / 30): PASS");
}

#[test]
fn p3_jacobi_triple_product() {
    let report = suites::triple_product(20, 20).unwrap();
    assert!(report.pass(), "{}", report.to_json());
    println!("P3 Jacobi triple product (qMax 20, window +-20): PASS");
}

#[test]
fn p4_coset_of_affine_verma_is_chiral_verma() {
    for (j, k) in [(r(0), r(1)), (rat(1, 2), r(1)), (rat(-1, 2), rat(1, 3))] {
        let ctx = LevelContext::new(k.clone()).unwrap();
        let rect = box_rect(6, 4);
        let image = omega_plus(&verma_affine(&ctx, &j, &rect).unwrap()).unwrap();
        let jj = &(&r(2) * &j) / &ctx.k_plus_2();
        let expect = chiral_verma(&ctx, &jj, Sign::Plus, &rect).unwrap();
        assert_eq!(image.prefactor(), expect.prefactor(), "(j, k) = ({j}, {k})");
        let target = rect.translate(expect.prefactor());
        assert!(
            image.equal_on(&expect, &target).unwrap().is_equal(),
            "(j, k) = ({j}, {k})"
        );
    }
    println!("P4 omega_plus(affine Verma) = chiral Verma (three (j,k) pairs, qMax 6, window +-4): PASS");
}

#[test]
fn p5_coset_round_trips() {
    let report = suites::roundtrip(5, 3).unwrap();
    assert!(report.pass(), "{}", report.to_json());
    println!("P5 coset round trips (qMax 5, window +-3): PASS");
}

#[test]
fn p6_spectral_flow_composition_and_prefactor() {
    let ctx = LevelContext::new(r(1)).unwrap();
    let w = 2i64;
    let q_target = 3i64;
    for t1 in -3..=3i64 {
        for t2 in -3..=3i64 {
            let inner = q_target + (t1.abs() + t2.abs() + (t1 + t2).abs()) * w;
            let bases = [
                relaxed_verma(&ctx, &r(0), &r(0), &box_rect(inner, w)).unwrap(),
                verma_n2(&ctx, &r(0), &r(0), &box_rect(inner, w)).unwrap(),
            ];
            for base in bases {
                let two = spectral_flow(&spectral_flow(&base, t1).unwrap(), t2).unwrap();
                let one = spectral_flow(&base, t1 + t2).unwrap();
                assert_eq!(two.prefactor(), one.prefactor(), "({t1}, {t2})");
                let rect = two
                    .absolute_validity()
                    .intersect(&one.absolute_validity())
                    .unwrap();
                assert!(&rect.q_max - &rect.q_min >= r(q_target), "({t1}, {t2})");
                assert!(two.equal_on(&one, &rect).unwrap().is_equal(), "({t1}, {t2})");
            }
        }
    }
    // the twisted prefactor formula on bare monomials, both sides
    for (k, h, j, side) in [
        (r(1), rat(1, 3), rat(1, 5), charkit_core::charlib::Side::Affine),
        (rat(1, 3), rat(-1, 2), rat(2, 7), charkit_core::charlib::Side::N2),
    ] {
        let c = LevelContext::new(k.clone()).unwrap();
        let chr = Character::new_derived(
            Some(c.clone()),
            side,
            Monomial::new(h.clone(), vec![j.clone()]),
            charkit_core::series::MSeries::one(box_rect(2, 1)),
        );
        for theta in -3..=3i64 {
            let t = r(theta);
            let f = spectral_flow(&chr, theta).unwrap();
            let (dh, dj) = match side {
                charkit_core::charlib::Side::Affine => (
                    &(&j * &t) + &(&(&k * &(&t * &t)) / &r(4)),
                    &(&k * &t) / &r(2),
                ),
                _ => (
                    &(&j * &t) + &(&(&k * &(&t * &t)) / &(&r(2) * &c.k_plus_2())),
                    &(&k * &t) / &c.k_plus_2(),
                ),
            };
            assert_eq!(*f.h(), &h + &dh);
            assert_eq!(*f.j(), &j + &dj);
        }
    }
    println!("P6 spectral-flow composition law and twisted prefactors (theta in [-3,3]^2): PASS");
}

#[test]
fn p7_branching_identity_with_negative_control() {
    let report = suites::branching(4, 3).unwrap();
    assert!(report.pass(), "{}", report.to_json());
    assert_eq!(report.checks.len(), 19); // 3 bases x 3 flows x 2 levels + control
    println!("P7 branching identity (3 bases, theta in -1..1, k in {{1, 1/3}}, qMax 4, windows +-3) + negative control: PASS");
}

#[test]
fn p8_flow_equivariance_grid() {
    let report = suites::flow_equivariance(4, 3).unwrap();
    assert!(report.pass(), "{}", report.to_json());
    assert_eq!(report.checks.len(), 25);
    println!("P8 flow equivariance (a, b in [-2,2]^2, qMax 4, window +-3): PASS");
}

#[test]
fn p9_three_way_crosscheck() {
    let labels: Vec<AdmissibleLabel> = [
        (3, 1, 1, 0),
        (5, 1, 2, 0),
        (5, 1, 1, 0),
        (3, 2, 1, 0),
        (3, 2, 1, 1),
    ]
    .into_iter()
    .map(|(p, pp, rr, s)| AdmissibleLabel::new(p, pp, rr, s).unwrap())
    .collect();
    for result in crosscheck_batch(&labels, 10, 6) {
        let report = result.unwrap();
        assert!(report.pass(), "{}", report.to_json());
    }
    println!("P9 three-way crosscheck (5 labels, qMax 10, window +-6): PASS");
}

#[test]
fn p10_twisted_chiral_closed_form() {
    for (p, pp, rr, s) in [(3, 1, 1, 0), (3, 2, 1, 1)] {
        let lab = AdmissibleLabel::new(p, pp, rr, s).unwrap();
        let ctx = lab.context();
        for theta in -3..=3i64 {
            let (q_max, w) = (5i64, 3i64);
            let tw = twisted_chiral_closed_form(&lab, theta, &box_rect(q_max + 10, w + 4)).unwrap();
            let j2 = lab.n2_weight(2 * theta + lab.r);
            let reach = w + 4;
            let inner = q_max + 10 + theta.abs() * reach;
            let chi = chiral_verma(&ctx, &j2, Sign::Plus, &box_rect(inner, reach)).unwrap();
            let flowed = normalize(&spectral_flow(&chi, theta).unwrap()).unwrap();
            let anchor = flowed.prefactor().clone();
            let target = Rect::new(
                anchor.q.clone(),
                &anchor.q + &r(q_max),
                vec![Window::new(&anchor.xs[0] - &r(w), &anchor.xs[0] + &r(w))],
            );
            assert!(
                tw.equal_on(&flowed, &target).unwrap().is_equal(),
                "label ({p},{pp},{rr},{s}), theta = {theta}"
            );
        }
    }
    println!("P10 closed-form twisted chiral Verma = normalize(flow(chiral Verma)), theta in [-3,3], qMax 5: PASS");
}

#[test]
fn p11_numeric_stabilization_and_divergence() {
    let point = EvalPoint::real(0.08, 1.1);
    assert!(in_region_a(&point));
    let ctx = LevelContext::new(r(1)).unwrap();
    let lab = AdmissibleLabel::new(3, 1, 1, 0).unwrap();
    let orders = [20i64, 30, 40];
    let diag = |o: i64| (1..).find(|w| (w + 1) * (w + 1) > 2 * o).unwrap() + 1;

    let n2_family = |o: i64| normalize(&verma_n2(&ctx, &r(0), &r(0), &box_rect(o, diag(o)))?);
    let n2 = stabilization(n2_family, &point, &orders).unwrap();
    assert!(n2.stabilizes, "diffs {:?}", n2.diffs);

    let fsst_family = |o: i64| fsst_character(&lab, &box_rect(o, diag(o)));
    let fsst = stabilization(fsst_family, &point, &orders).unwrap();
    assert!(fsst.stabilizes, "diffs {:?}", fsst.diffs);

    // the stabilized double-sum and BGG values agree
    let bgg = normalize(&irreducible_n2_char(&lab, &box_rect(40, diag(40))).unwrap()).unwrap();
    let v_bgg = eval(&bgg, &point);
    let v_fsst = *fsst.values.last().unwrap();
    assert!((v_bgg - v_fsst).norm() / v_fsst.norm() < 1e-8);

    // window-coupled relaxed partial sums blow past 10^3 by order 40
    let relaxed_family =
        |o: i64| relaxed_verma(&ctx, &r(0), &r(0), &box_rect(o, 2 * o));
    let relaxed = stabilization(relaxed_family, &point, &orders).unwrap();
    assert!(!relaxed.stabilizes);
    assert!(relaxed.values.last().unwrap().norm() > 1e3);
    println!("P11 numerics: N=2 and double-sum characters stabilize (< 1e-8), fsst = BGG at the point, relaxed partial sums exceed 1e3: PASS");
}
