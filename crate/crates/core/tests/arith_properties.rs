use eistwist::arith::{
    gcd, inv_mod, is_prime, kronecker, mul_mod, pow_mod, primes_between, smallest_primitive_root,
    sqrt_mod, LogMap,
};
use proptest::prelude::*;

const LEVELS: [(u64, u64); 5] = [(11, 5), (31, 5), (211, 5), (29, 7), (1871, 5)];

fn level() -> impl Strategy<Value = (u64, u64)> {
    prop::sample::select(LEVELS.to_vec())
}

fn euler(a: i64, q: u64) -> i8 {
    let a = a.rem_euclid(q as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (q - 1) / 2, q) == 1 {
        1
    } else {
        -1
    }
}

#[test]
fn primality_matches_trial_division() {
    let naive = |n: u64| {
        n >= 2
            && (2..n)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    };
    for n in 0..5000 {
        assert_eq!(is_prime(n), naive(n), "{n}");
    }
    assert_eq!(primes_between(10, 30), [11, 13, 17, 19, 23, 29]);
}

proptest! {
    #[test]
    fn kronecker_matches_euler(a in -10_000i64..10_000, q in prop::sample::select(vec![3u64, 5, 7, 11, 13, 31, 211, 9931])) {
        prop_assert_eq!(kronecker(a, q), euler(a, q));
    }

    #[test]
    fn kronecker_periodic_in_fundamental_d(d in prop::sample::select(vec![5i64, 8, 12, 13, 17, 21, 24, 28, -3, -4, -7, -8, -15, -20]), n in 1u64..500) {
        let m = d.unsigned_abs();
        prop_assert_eq!(kronecker(d, n), kronecker(d, n + m));
    }

    #[test]
    fn kronecker_multiplicative(d in prop::sample::select(vec![5i64, 12, 13, -3, -4, -23, -47]), a in 1u64..200, b in 1u64..200) {
        prop_assert_eq!(kronecker(d, a * b), kronecker(d, a) * kronecker(d, b));
    }

    #[test]
    fn square_roots(x in 1u64..9931, q in prop::sample::select(vec![7u64, 11, 13, 17, 1871, 4621, 9931])) {
        let a = mul_mod(x % q, x % q, q);
        prop_assume!(a != 0);
        let r = sqrt_mod(a as i64, q).unwrap();
        prop_assert_eq!(mul_mod(r, r, q), a);
        prop_assert!(r <= q - r);
    }

    #[test]
    fn inverses(a in -100_000i64..100_000, q in prop::sample::select(vec![5u64, 11, 9931])) {
        prop_assume!(a.rem_euclid(q as i64) != 0);
        let i = inv_mod(a, q).unwrap();
        prop_assert_eq!(mul_mod(a.rem_euclid(q as i64) as u64, i, q), 1);
    }

    #[test]
    fn log_is_a_homomorphism((n, p) in level(), a in 1i64..100_000, b in 1i64..100_000) {
        prop_assume!(a % n as i64 != 0 && b % n as i64 != 0);
        let log = LogMap::new(n, p).unwrap();
        let ab = (a as u64 % n) * (b as u64 % n) % n;
        prop_assert_eq!(log.log(ab as i64).unwrap(), (log.log(a).unwrap() + log.log(b).unwrap()) % p);
        let g = log.generator();
        let e = log.dlog(a).unwrap();
        prop_assert_eq!(pow_mod(g, e, n), a as u64 % n);
    }

    #[test]
    fn log_kernel_is_pth_powers((n, p) in level(), x in 1u64..10_000) {
        prop_assume!(x % n != 0);
        let log = LogMap::new(n, p).unwrap();
        let is_pth_power = pow_mod(x % n, (n - 1) / p, n) == 1;
        prop_assert_eq!(log.log(x as i64).unwrap() == 0, is_pth_power);
    }

    #[test]
    fn logs_for_different_generators_are_proportional((n, p) in level(), x in 2u64..1000) {
        prop_assume!(x % n != 0);
        let g0 = smallest_primitive_root(n);
        let g1 = (g0..n).skip(1).find(|&g| gcd(g as i64, n as i64) == 1 && LogMap::with_generator(n, p, g).is_ok()).unwrap();
        let a = LogMap::with_generator(n, p, g0).unwrap();
        let b = LogMap::with_generator(n, p, g1).unwrap();
        // log_b = c * log_a with c = log_b(g0)
        let c = b.log(g0 as i64).unwrap();
        prop_assert!(c != 0);
        prop_assert_eq!(b.log(x as i64).unwrap(), a.log(x as i64).unwrap() * c % p);
    }
}
