use deltaring::dideal::delta_close;
use deltaring::exec::case_rng;
use deltaring::fixtures;
use deltaring::poly::{Poly, PolyRing};
use deltaring::sample::{random_nonzero, random_poly};
use deltaring::scalar::Field;
use deltaring::svdp::TensorRing;
use deltaring::text::{parse_poly, print_poly};
use deltaring::traj::{is_leaf, simplicity_scan, trajectory, SimplicityVerdict};
use proptest::prelude::*;

fn ring_for(k: u8) -> std::sync::Arc<PolyRing> {
    let field = match k % 3 {
        0 => Field::Q,
        1 => Field::fp(7).unwrap(),
        _ => Field::fp(2).unwrap(),
    };
    PolyRing::new(field, ["x", "y", "z"]).unwrap()
}

/// Rational coefficients exercise the `a/b` literal path.
fn with_fractions(p: &Poly, den: i64) -> Poly {
    let ring = p.ring();
    match ring.field() {
        Field::Q => p.scale(&ring.field().from_i64(den).inv()),
        _ => p.clone(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>(), k in any::<u8>(), den in 1i64..6) {
        let ring = ring_for(k);
        let mut rng = case_rng(seed, 0);
        let p = with_fractions(&random_poly(&ring, &mut rng, 5, 6, 9), den);
        let text = print_poly(&p);
        let back = parse_poly(&text, &ring).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(print_poly(&back), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn fiber_equals_contraction(seed in any::<u64>(), c in prop::sample::select(vec![0i64, 1, -1, 2])) {
        let t = TensorRing::over(&["u", "v"]).unwrap();
        let real = t.realization();
        let mut rng = case_rng(seed, 0);
        let elems = vec![random_nonzero(real.ring(), &mut rng, 3, 3, 3)];
        let j = delta_close(&real.ideal(elems).unwrap(), real, 5).unwrap();
        prop_assume!(j.certified);
        let c = Field::Q.from_i64(c);
        let fiber = t.fiber_j_ideal(&j.result, &c).unwrap();
        prop_assert!(fiber.same_as(&t.contract_ideal(&j.result).unwrap()).unwrap());
    }

    #[test]
    fn reduction_certificates_recompose(seed in any::<u64>()) {
        let t = TensorRing::over(&["u", "v"]).unwrap();
        let real = t.realization();
        let mut rng = case_rng(seed, 1);
        let i = deltaring::ideal::Ideal::new(t.base(), vec![random_nonzero(t.base(), &mut rng, 2, 3, 3)]).unwrap();
        let j = t.extend_ideal(&i).unwrap();
        let mut x = Poly::zero(real.ring());
        for g in j.gens() {
            x = &x + &(g * &random_poly(real.ring(), &mut rng, 3, 4, 3));
        }
        let xe = t.elem(&x).unwrap();
        let cert = t.svdp_reduce(&xe, &j).unwrap();
        prop_assert_eq!(t.recompose(&cert).unwrap(), xe);
        for (a, _) in &cert {
            prop_assert!(i.contains(a).unwrap());
        }
    }
}

#[test]
fn leaves_are_their_own_trajectory() {
    for s in fixtures::char0_schemes().unwrap() {
        let d = if s.ring.ring().nvars() == 1 { 6 } else { 4 };
        let trajs: Vec<_> = s.fixtures.iter().map(|f| trajectory(&f.ideal, &s, d).unwrap()).collect();
        for (f, tr) in s.fixtures.iter().zip(&trajs) {
            let lifted = s.ring.lift(&f.ideal).unwrap();
            assert!(tr.contained && lifted.contains_ideal(&tr.final_ideal).unwrap(), "{}/{}", s.name, f.name);
            if is_leaf(&f.ideal, &s).unwrap() {
                assert_eq!(tr.steps(), 0, "{}/{}", s.name, f.name);
                assert!(tr.final_ideal.same_as(&lifted).unwrap());
            }
        }
        // p ⊆ q implies p# ⊆ q#
        for (a, ta) in s.fixtures.iter().zip(&trajs) {
            for (b, tb) in s.fixtures.iter().zip(&trajs) {
                if s.ring.lift(&b.ideal).unwrap().contains_ideal(&a.ideal).unwrap() {
                    assert!(tb.final_ideal.contains_ideal(&ta.final_ideal).unwrap(), "{}: {} vs {}", s.name, a.name, b.name);
                }
            }
        }
    }
}

#[test]
fn the_line_has_no_proper_closure() {
    let s = fixtures::line_scheme().unwrap();
    let mut rng = case_rng(5, 0);
    let samples: Vec<Poly> = (0..60).map(|_| random_nonzero(s.ring.ring(), &mut rng, 6, 4, 5)).collect();
    assert!(matches!(simplicity_scan(&s, &samples, 7).unwrap(), SimplicityVerdict::SimpleConsistent));
}
