use num_traits::Zero;
use proptest::prelude::*;

use swd_invariants::diffops::{
    iterated_nabla1, iterated_nabla1_binomial, nabla_chain, permutation_sum, poly_from_kernel, SeqFn,
};
use swd_invariants::invariants::{
    cobordism_invariant_blown, compare_evaluators, degree_admissible, witten_invariant, CoeffTable,
    InvariantQuery,
};
use swd_invariants::lattice::{Class, HClass, Lattice};
use swd_invariants::manifold::{example_xqn, FourManifold, SwTable};
use swd_invariants::polyalg::{polarize_slot, Poly, UniPoly};
use swd_invariants::rational::{int, rat};
use swd_invariants::{Parity, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn rationals(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(rational(), n)
}

fn ints(n: usize, r: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-r..=r, n)
}

fn xqn(q: i64, n: usize) -> FourManifold {
    example_xqn(q, n).unwrap()
}

fn named(x: &FourManifold, s: &str) -> Class {
    x.named(s).cloned().unwrap()
}

/// Homogeneous polynomial of the given degree in `nv` variables from raw picks.
fn homogeneous(nv: usize, degree: u32, picks: &[(usize, i64)]) -> Poly {
    let mut f = Poly::zero(nv);
    for chunk in picks.chunks(degree.max(1) as usize) {
        let mut e = vec![0u32; nv];
        for &(v, _) in chunk.iter().take(degree as usize) {
            e[v % nv] += 1;
        }
        if e.iter().sum::<u32>() == degree {
            f = f.add(&Poly::monomial(nv, e, int(chunk[0].1)));
        }
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairing_is_symmetric(a in ints(24, 5), b in ints(24, 5)) {
        let x = xqn(2, 1);
        let l = x.lattice();
        let (a, b) = (Class(a), Class(b));
        prop_assert_eq!(l.pair(&a, &b).unwrap(), l.pair(&b, &a).unwrap());
    }

    #[test]
    fn characteristic_classes(v in ints(25, 4), w in ints(25, 4)) {
        let x = xqn(2, 2);
        let l = x.lattice();
        let k = &named(&x, "K0") + &(2 * &Class(v));
        prop_assert!(l.is_characteristic(&k));
        prop_assert_eq!((l.square(&k).unwrap() - l.sigma()).rem_euclid(8), 0);
        let w = Class(w);
        prop_assert_eq!((l.square(&w).unwrap() + l.pair(&w, &k).unwrap()).rem_euclid(2), 0);
        prop_assert!(l.eps(&w, &k).is_ok());
    }

    #[test]
    fn orientation_identity(v in ints(25, 3), w in ints(25, 3), u in ints(25, 3)) {
        let x = xqn(2, 2);
        let l = x.lattice();
        let k0 = named(&x, "K0");
        let k = &k0 + &(2 * &Class(v));
        let w = Class(w);
        let lam = &w - &(&k0 + &(2 * &Class(u)));
        prop_assert!(swd_invariants::invariants::orientation_identity_check(l, &w, &lam, &k).unwrap());
    }

    #[test]
    fn orthogonal_positive_class(pos in 2usize..5, neg in 1usize..5, odd in ints(8, 3)) {
        let mut diag = vec![1; pos];
        diag.extend(std::iter::repeat(-1).take(neg));
        let l = Lattice::diagonal(&diag).unwrap();
        let k = Class((0..diag.len()).map(|i| 2 * odd[i] + 1).collect());
        let lam = l.find_orthogonal_positive(&k).unwrap();
        prop_assert_eq!(l.pair(&lam, &k).unwrap(), 0);
        prop_assert!(l.square(&lam).unwrap() > 0);
    }

    #[test]
    fn evaluation_is_a_ring_map(
        a in proptest::collection::vec((0usize..3, -5i64..=5), 6),
        b in proptest::collection::vec((0usize..3, -5i64..=5), 6),
        pt in rationals(3),
    ) {
        let f = homogeneous(3, 2, &a);
        let g = homogeneous(3, 3, &b);
        let (fv, gv) = (f.evaluate(&pt).unwrap(), g.evaluate(&pt).unwrap());
        prop_assert_eq!(f.mul(&g).evaluate(&pt).unwrap(), &fv * &gv);
        prop_assert_eq!(f.add(&g).evaluate(&pt).unwrap(), fv + gv);
    }

    #[test]
    fn polarize_slot_linear_and_homogeneous(
        d in 1u32..6,
        picks in proptest::collection::vec((0usize..4, 1i64..=5), 20),
        e1 in rationals(4), e2 in rationals(4), h in rationals(4), s in rational(), t in rational(),
    ) {
        let f = homogeneous(4, d, &picks);
        prop_assume!(!f.is_zero());
        let (e1, e2, h) = (HClass(e1), HClass(e2), HClass(h));
        let comb = HClass(e1.0.iter().zip(&e2.0).map(|(a, b)| &s * a + &t * b).collect());
        let lhs = polarize_slot(&f, &comb, &h).unwrap();
        let rhs = &s * polarize_slot(&f, &e1, &h).unwrap() + &t * polarize_slot(&f, &e2, &h).unwrap();
        prop_assert_eq!(lhs, rhs);
        let scaled = polarize_slot(&f, &e1, &h.scaled(&s)).unwrap();
        let mut want = polarize_slot(&f, &e1, &h).unwrap();
        for _ in 1..d {
            want *= &s;
        }
        prop_assert_eq!(scaled, want);
    }

    #[test]
    fn permutation_sum_matches_chain(
        vals in rationals(61),
        p in ints(4, 5),
        q in proptest::collection::vec(0u8..2, 4),
        n in 1usize..=4,
    ) {
        let f = SeqFn::from_table(-30, vals);
        let qp: Vec<Parity> = q[..n].iter().map(|&b| Parity::from(b)).collect();
        let chain = nabla_chain(&p[..n], &qp, &f).unwrap();
        let (lo, hi) = chain.window();
        for x in lo..=hi {
            prop_assert_eq!(chain.at(x).unwrap(), permutation_sum(&f, x, &p[..n], &qp).unwrap());
        }
    }

    #[test]
    fn binomial_route_matches_composition(vals in rationals(81), lam in 1i64..=4, n in 0usize..=6) {
        let f = SeqFn::from_table(-40, vals);
        let g = iterated_nabla1(lam, n, &f);
        let (lo, hi) = g.window();
        for x in lo..=hi {
            prop_assert_eq!(g.at(x).unwrap(), iterated_nabla1_binomial(lam, n, &f, x).unwrap());
        }
    }

    #[test]
    fn kernel_round_trip(coeffs in rationals(5), deg in 0usize..5, lam in prop::sample::select(vec![1i64, 2, 4])) {
        let mut c = coeffs[..=deg].to_vec();
        if c[deg].is_zero() {
            c[deg] = int(1);
        }
        let p = UniPoly::new(c);
        let samples: Vec<Rational> = (0..=2 * deg as i64 + 2).map(|t| p.eval(&int(t))).collect();
        let got = poly_from_kernel(lam, deg + 1, &samples).unwrap();
        prop_assert_eq!(got.degree(), Some(deg));
        prop_assert_eq!(got, p);
    }

    #[test]
    fn witten_vanishes_off_the_admissible_degrees(delta in 0u32..14, m in 0u32..3, h in rationals(24)) {
        prop_assume!(2 * m <= delta);
        let x = xqn(2, 1);
        let w = named(&x, "K0");
        let w_sq = x.lattice().square(&w).unwrap();
        let v = witten_invariant(&x, &InvariantQuery::new(w, delta, m, HClass(h))).unwrap();
        if !degree_admissible(x.chi_h(), w_sq, i64::from(delta)) {
            prop_assert!(v.is_zero());
        }
    }

    #[test]
    fn evaluators_are_linear_in_sw(a in ints(4, 5), b in ints(4, 5), h in rationals(25), seed in 0u64..1000) {
        let x = xqn(2, 2);
        let sign = if x.chi_h() % 2 == 0 { 1 } else { -1 };
        let table = |vals: &[i64]| {
            let mut t = SwTable::new();
            for (k, &v) in x.fundamental_domain().iter().zip(vals) {
                t.insert(k.clone(), v);
                t.insert(-k, sign * v);
            }
            x.with_sw(t).unwrap()
        };
        let sum: Vec<i64> = a.iter().zip(&b).map(|(p, q)| p + q).collect();
        let (xa, xb, xs) = (table(&a), table(&b), table(&sum));
        let q = InvariantQuery::new(named(&x, "K0"), 5, 1, HClass(h));
        let lam = 2 * &(&named(&x, "f1") + &named(&x, "f2"));
        let t = CoeffTable::new(x.chi_h(), x.c1sq() - 1, x.lattice().square(&lam).unwrap(), 1, seed);
        let w = |y: &FourManifold| witten_invariant(y, &q).unwrap();
        let c = |y: &FourManifold| cobordism_invariant_blown(y, &q, &lam, &t).unwrap();
        prop_assert_eq!(w(&xs), w(&xa) + w(&xb));
        prop_assert_eq!(c(&xs), c(&xa) + c(&xb));
    }

    #[test]
    fn coefficient_kernel_and_parity(seed in any::<u64>(), q in 2i64..=3, nb in 2i64..=4, m in 0u32..=1, y in 0i64..12) {
        let t = CoeffTable::new(q, q - nb - 3, y, m, seed);
        let n = t.n();
        for p in 1..n as u32 {
            for (j, k) in [(0, 0), (1, 2), (3, 1)] {
                let row = t.row(p, j, k);
                let f = SeqFn::new(-80, 80, move |v| row.eval(&int(v)));
                for x in -3..=3 {
                    prop_assert!(iterated_nabla1_binomial(4, (n - i64::from(p)) as usize, &f, 4 * x).unwrap().is_zero());
                }
            }
        }
        for i in 0..n as u32 {
            let row = t.row(i, 1, 1);
            for u in 0..(n - i64::from(i)) as usize {
                if (u as i64 - n - i64::from(i)).rem_euclid(2) == 0 {
                    prop_assert!(row.coeff(u).is_zero());
                }
            }
        }
    }

    #[test]
    fn cobordism_value_is_seed_independent_on_fixtures(
        s1 in any::<u64>(), s2 in any::<u64>(), h in rationals(26), b in 1i64..=2, m in 0u32..=1,
    ) {
        let x = xqn(2, 3);
        let lam = (2 * b) * &(&named(&x, "f1") + &named(&x, "f2"));
        let q = InvariantQuery::new(named(&x, "K0"), 6 + 4 * m, m, HClass(h));
        let rep = compare_evaluators(&x, &q, &lam, &[s1, s2]).unwrap();
        prop_assert!(rep.equal && rep.seed_independent);
    }

    #[test]
    fn manifold_json_round_trip(vals in ints(4, 9)) {
        let x = xqn(3, 2);
        let mut t = SwTable::new();
        for (k, &v) in x.fundamental_domain().iter().zip(&vals) {
            t.insert(k.clone(), v);
            t.insert(-k, -v);
        }
        let y = x.with_sw(t).unwrap();
        let text = serde_json::to_string(&y).unwrap();
        let back: FourManifold = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &y);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}

#[test]
fn blow_up_invariants_on_fixtures() {
    for q in [2, 3] {
        for n in 0..=3 {
            let x = xqn(q, n);
            let xt = x.blow_up().unwrap();
            assert_eq!(xt.chi_h(), x.chi_h());
            assert_eq!(xt.c1sq(), x.c1sq() - 1);
            assert_eq!(xt.c(), x.c() + 1);
            assert!(xt.has_simple_type());
            let l = x.lattice();
            for k in x.basic_classes() {
                assert!(l.is_characteristic(&k));
                assert_eq!(l.square(&k).unwrap(), q - n as i64 - 3);
            }
            let sign = if q % 2 == 0 { 1 } else { -1 };
            for (k, v) in xt.sw().iter() {
                assert_eq!(xt.sw().get(&-k), sign * v);
            }
        }
    }
}
