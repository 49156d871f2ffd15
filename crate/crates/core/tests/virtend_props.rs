mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{random_affine, random_ring_elem, random_vertex};
use nekra_core::virtend::{affine_act, faithfulness_search, AffineElem, Faithfulness, RingElem, VirtEndSpec};

/// Residue of `num/m^exp` modulo a prime, via Fermat inverses in `i128`.
fn residue_oracle(x: &RingElem, m: u64, p: u64) -> u64 {
    let p = p as i128;
    let pow = |mut b: i128, mut e: u64| {
        let mut acc = 1i128;
        b = b.rem_euclid(p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let m_inv = pow(m as i128, p as u64 - 2);
    let num = i128::try_from(&x.num).unwrap().rem_euclid(p);
    (num * pow(m_inv, x.exp as u64) % p) as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn affine_action_is_a_left_action(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let spec = VirtEndSpec::new(6, 5, 2).unwrap();
        let e1 = random_affine(&mut rng, &spec.ring, 2, 2, 50);
        let e2 = random_affine(&mut rng, &spec.ring, 2, 2, 50);
        let prod = e1.mul(&e2, &spec.ring);
        for _ in 0..4 {
            let x = random_vertex(&mut rng, 25, 8);
            let lhs = affine_act(&spec, &prod, &x).unwrap();
            let rhs = affine_act(&spec, &e1, &affine_act(&spec, &e2, &x).unwrap()).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            let back = affine_act(&spec, &e1.inverse(&spec.ring), &affine_act(&spec, &e1, &x).unwrap()).unwrap();
            prop_assert_eq!(back, x);
        }
    }

    #[test]
    fn residues_are_ring_homomorphic(seed: u64, p in prop::sample::select(vec![5u64, 7, 11, 13])) {
        let mut rng = StdRng::seed_from_u64(seed);
        let spec = VirtEndSpec::new(6, p, 1).unwrap();
        let r = &spec.ring;
        let x = random_ring_elem(&mut rng, r, 3, 1000);
        let y = random_ring_elem(&mut rng, r, 3, 1000);
        prop_assert_eq!(r.mod_p(&x, p), residue_oracle(&x, 6, p));
        prop_assert_eq!(r.mod_p(&r.add(&x, &y), p), (r.mod_p(&x, p) + r.mod_p(&y, p)) % p);
        prop_assert_eq!(r.mod_p(&r.mul(&x, &y), p), (r.mod_p(&x, p) * r.mod_p(&y, p)) % p);
        prop_assert_eq!(r.mod_p(&r.neg(&x), p), (p - r.mod_p(&x, p)) % p);
    }

    #[test]
    fn inverse_is_two_sided(seed: u64) {
        let mut rng = StdRng::seed_from_u64(seed);
        let spec = VirtEndSpec::new(6, 5, 2).unwrap();
        let e = random_affine(&mut rng, &spec.ring, 2, 2, 50);
        prop_assert!(e.mul(&e.inverse(&spec.ring), &spec.ring).is_identity());
        prop_assert!(e.inverse(&spec.ring).mul(&e, &spec.ring).is_identity());
    }
}

#[test]
fn translations_by_prime_powers_move_at_valuation_plus_one() {
    let mut rng = StdRng::seed_from_u64(31);
    for (m, p) in [(1u64, 2u64), (1, 3), (6, 5), (10, 7)] {
        let spec = VirtEndSpec::new(m, p, 1).unwrap();
        for k in 0..6u32 {
            let unit: i64 = loop {
                let u = rng.gen_range(1..40);
                if u % p as i64 != 0 {
                    break u;
                }
            };
            let a = spec.ring.elem(BigInt::from(p).pow(k) * unit, rng.gen_range(0..2));
            let e = AffineElem::translation(vec![a]);
            match faithfulness_search(&spec, &e, 12).unwrap() {
                Faithfulness::Moved(v) => assert_eq!(v.len(), k as usize + 1, "m={m} p={p} k={k}"),
                Faithfulness::Unknown => panic!("no moved vertex for p^{k}"),
            }
        }
    }
}
