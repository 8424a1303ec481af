// Values stated outright for the model manifolds and the small operators.

use num_traits::Zero;
use swd_invariants::diffops::{nabla, poly_from_kernel, z2_scale, SeqFn};
use swd_invariants::invariants::{
    check_cobordism_conditions, degree_admissible, p_factor, CoeffTable,
};
use swd_invariants::lattice::{Class, HClass, Lattice};
use swd_invariants::manifold::{example_xq, example_xqn, nu, FourManifold, SwTable};
use swd_invariants::polyalg::{check_algebraic_independence, polarize_slot, FormPoly, Poly, UniPoly};
use swd_invariants::rational::{int, rat};
use swd_invariants::Parity;

fn named(x: &FourManifold, s: &str) -> Class {
    x.named(s).cloned().unwrap()
}

#[test]
fn orthogonal_positive_on_small_diagonal() {
    let l = Lattice::diagonal(&[1, 1, 1, -1]).unwrap();
    let lam = l.find_orthogonal_positive(&Class(vec![1, 1, 1, 1])).unwrap();
    assert_eq!(lam, Class(vec![1, -1, 0, 0]));
    assert_eq!(l.square(&lam).unwrap(), 2);
    assert_eq!(l.pair(&lam, &Class(vec![1, 1, 1, 1])).unwrap(), 0);
}

#[test]
fn model_characteristic_numbers() {
    let x = example_xq(2).unwrap().manifold;
    assert_eq!((x.chi_h(), x.c1sq(), x.c()), (2, -1, 3));
    for q in 2..=4 {
        for n in 0..=3 {
            let x = example_xqn(q, n).unwrap();
            let n = n as i64;
            assert_eq!((x.chi_h(), x.c1sq(), x.c()), (q, q - n - 3, n + 3));
        }
    }
}

#[test]
fn nu_weights() {
    assert_eq!(nu(&Class(vec![0, 0])), rat(1, 2));
    assert_eq!(nu(&Class(vec![1, 1])), int(1));
}

#[test]
fn blow_up_of_a_conjugate_pair() {
    for (q, s) in [(2, 5), (3, -2)] {
        let fx = example_xq(q).unwrap();
        let x = fx.manifold.with_sw({
            let mut t = SwTable::new();
            t.insert(fx.k.clone(), s);
            t.insert(-&fx.k, if q % 2 == 0 { s } else { -s });
            t
        }).unwrap();
        let xt = x.blow_up().unwrap();
        let e = xt.lattice().basis(x.lattice().rank());
        let k = fx.k.extend(1);
        let conj = if q % 2 == 0 { 1 } else { -1 };
        assert_eq!(xt.basic_classes().len(), 4);
        assert_eq!(xt.sw().get(&(&k + &e)), s);
        assert_eq!(xt.sw().get(&(&k - &e)), s);
        assert_eq!(xt.sw().get(&(&(-&k) + &e)), conj * s);
        assert_eq!(xt.sw().get(&(&(-&k) - &e)), conj * s);
    }
}

#[test]
fn small_c_is_always_superconformal() {
    for q in [2, 3, 4] {
        let x = example_xq(q).unwrap().manifold;
        assert!(x.c() <= 3);
        assert!(x.is_scst(&named(&x, "K")).unwrap());
    }
}

#[test]
fn hyperbolic_pair_in_the_model() {
    for q in 2..=5 {
        let fx = example_xq(q).unwrap();
        let l = fx.manifold.lattice();
        assert_eq!(l.pair(&fx.f1, &fx.f2).unwrap(), 1);
        assert_eq!(l.square(&fx.f1).unwrap(), 0);
        assert_eq!(l.square(&fx.f2).unwrap(), 0);
        assert_eq!(l.pair(&fx.f1, &fx.k).unwrap(), 0);
        assert_eq!(l.pair(&fx.f2, &fx.k).unwrap(), 0);
    }
}

#[test]
fn blown_up_basic_classes_keep_their_value() {
    let x = example_xqn(3, 3).unwrap();
    let k = named(&x, "K");
    let fx = example_xq(3).unwrap();
    let base = fx.manifold.sw().get(&fx.k);
    assert_ne!(base, 0);
    for kp in x.basic_classes() {
        let v = x.sw().get(&kp);
        // K_φ = ±(K + Σ ±e_u): value SW'(K) up to the conjugation sign
        assert!(v == base || v == -base);
        let positive_k = kp.0[..k.len() - 3] == k.0[..k.len() - 3];
        if positive_k {
            assert_eq!(v, base);
        }
    }
}

#[test]
fn exceptional_slot_closed_form() {
    // ⟨K−e*,·⟩³⟨Λ,·⟩Q on X_2 # CP²-bar: factor 3·(−1)^{1+1}/6.
    let fx = example_xq(2).unwrap();
    let x = &fx.manifold;
    let xt = x.blow_up().unwrap();
    let e = xt.lattice().basis(x.lattice().rank());
    let lam = 2 * &(&fx.f1 + &fx.f2);
    let form = FormPoly::new(
        xt.lattice().clone(),
        vec![&fx.k.extend(1) - &e, lam.extend(1)],
        Poly::monomial(3, vec![3, 1, 1], int(1)),
    )
    .unwrap();
    let h = HClass((0..x.lattice().rank() as i64).map(|i| rat(i % 3 - 1, 2)).collect());
    let l = x.lattice();
    let kh = l.eval(&fx.k, &h).unwrap();
    let want = rat(3, 6) * &kh * &kh * l.eval(&lam, &h).unwrap() * l.qform(&h).unwrap();
    assert_eq!(polarize_slot(&form, &e.to_h(), &h.extend(1)).unwrap(), want);
}

#[test]
fn extraction_generators_are_independent() {
    for n in 2..=4 {
        let x = example_xqn(2, n).unwrap();
        let k = named(&x, "K");
        let e: Vec<Class> = (1..=n).map(|u| named(&x, &format!("e{u}"))).collect();
        let lam = &(3 * &named(&x, "f1")) + &named(&x, "f2");
        let mut t = vec![&k + &e[0], &k - &e[0]];
        t.extend(e[1..].iter().cloned());
        t.push(lam);
        assert!(check_algebraic_independence(x.lattice(), &t, true).unwrap());
    }
}

#[test]
fn single_difference_on_constants() {
    let c = rat(5, 3);
    let cc = c.clone();
    let f = SeqFn::new(-10, 10, move |_| cc.clone());
    let odd = nabla(Parity::ODD, 3, &f);
    let even = nabla(Parity::EVEN, 3, &f);
    for x in -5..=5 {
        assert!(odd.at(x).unwrap().is_zero());
        assert_eq!(even.at(x).unwrap(), int(2) * &c);
    }
}

#[test]
fn z2_times_integer() {
    assert_eq!(z2_scale(Parity::EVEN, 7), 0);
    assert_eq!(z2_scale(Parity::ODD, 7), 7);
    assert_eq!(z2_scale(Parity::ODD, -3), -3);
}

#[test]
fn constant_on_the_grid_is_degree_zero() {
    let samples = vec![rat(4, 7); 3];
    let p = poly_from_kernel(2, 1, &samples).unwrap();
    assert_eq!(p, UniPoly::constant(rat(4, 7)));
    assert_eq!(p.degree(), Some(0));
}

#[test]
fn admissible_degrees_follow_c() {
    for (q, n) in [(2, 0), (2, 2), (3, 1), (3, 3)] {
        let x = example_xqn(q, n).unwrap();
        let w = named(&x, "K0");
        let w_sq = x.lattice().square(&w).unwrap();
        for d in 0..16 {
            assert_eq!(degree_admissible(q, w_sq, d), (d - x.c()).rem_euclid(4) == 0);
        }
    }
}

#[test]
fn cobordism_condition_on_i_lambda() {
    let x = example_xqn(2, 2).unwrap();
    let w = named(&x, "K0");
    let lam = 2 * &(&named(&x, "f1") + &named(&x, "f2"));
    // I(Λ) = 8 + 5 + 8 = 21
    let e = check_cobordism_conditions(&x, &w, &lam, 21, 0).unwrap_err();
    assert!(e.is_precondition());
    assert!(e.to_string().contains("I(Λ)"), "{e}");
    assert!(check_cobordism_conditions(&x, &w, &lam, 17, 0).is_ok());
}

#[test]
fn parity_factor() {
    assert_eq!(p_factor(&[1, 0, 1], &[1, 2, 3]).unwrap(), 8);
    assert_eq!(p_factor(&[1, 0, 1], &[1, 1, 3]).unwrap(), 0);
}

#[test]
fn table_rows_at_and_above_n_are_closed_form() {
    // χ_h = 2, c₁² = −3: n = 2, b̃_{i,0,k} = (i+2k)!/(k! i!) 2^{m−k−2}.
    let t = CoeffTable::new(2, -3, 4, 1, 9);
    assert_eq!(t.n(), 2);
    assert_eq!(t.eval(2, 0, 0, 6), rat(1, 2));
    assert_eq!(t.eval(2, 0, 1, -4), rat(3, 1));
    assert!(t.eval(3, 1, 0, 0).is_zero());
}
