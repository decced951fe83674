use binconv::algebra::{
    binomial_convolve, binomial_inverse, binomial_power, builtins, dirichlet_convolve,
    from_dirichlet_side, pointwise_product, to_dirichlet_side, ArithFn,
};
use binconv::cli::spec::parse;
use binconv::multiplicativity::{classify, multinomial_identity_lhs};
use binconv::numeric::{factorize, LogLinear};
use binconv::semimult::{decompose, SemimultDecomposition};
use binconv::Rational;
use num::{One, Zero};
use proptest::prelude::*;

const N: u64 = 48;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

fn table() -> impl Strategy<Value = ArithFn> {
    prop::collection::vec(rational(), N as usize).prop_map(|v| ArithFn::from_table("t", v).unwrap())
}

fn invertible() -> impl Strategy<Value = ArithFn> {
    prop::collection::vec(rational(), N as usize).prop_map(|mut v| {
        if v[0].is_zero() {
            v[0] = Rational::one();
        }
        ArithFn::from_table("t", v).unwrap()
    })
}

fn same(a: &ArithFn, b: &ArithFn) -> bool {
    a.values(N).unwrap() == b.values(N).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn binomial_convolution_is_commutative_and_associative(f in table(), g in table(), h in table()) {
        prop_assert!(same(&binomial_convolve(&f, &g), &binomial_convolve(&g, &f)));
        prop_assert!(same(
            &binomial_convolve(&binomial_convolve(&f, &g), &h),
            &binomial_convolve(&f, &binomial_convolve(&g, &h)),
        ));
        prop_assert!(same(&binomial_convolve(&f, &builtins::delta()), &f));
    }

    #[test]
    fn xi_transports_convolutions(f in table(), g in table()) {
        let lhs = to_dirichlet_side(&binomial_convolve(&f, &g));
        let rhs = dirichlet_convolve(&to_dirichlet_side(&f), &to_dirichlet_side(&g));
        prop_assert!(same(&lhs, &rhs));
        prop_assert!(same(&from_dirichlet_side(&to_dirichlet_side(&f)), &f));
    }

    #[test]
    fn inverse_cancels(f in invertible()) {
        let inv = binomial_inverse(&f).unwrap();
        prop_assert!(same(&binomial_convolve(&f, &inv), &builtins::delta()));
        prop_assert!(same(&binomial_power(&f, -1).unwrap(), &inv));
    }

    #[test]
    fn powers_add(f in invertible(), j in -2i64..=2, k in -2i64..=2) {
        let lhs = binomial_convolve(&binomial_power(&f, j).unwrap(), &binomial_power(&f, k).unwrap());
        prop_assert!(same(&lhs, &binomial_power(&f, j + k).unwrap()));
    }

    #[test]
    fn multiplicativity_is_preserved(a in rational(), b in rational()) {
        let f = builtins::r_omega(a);
        let g = pointwise_product(&builtins::r_omega(b), &builtins::tau());
        let h = binomial_convolve(&f, &g);
        prop_assert!(classify(&h, N).unwrap().is_multiplicative);
    }

    #[test]
    fn multinomial_theorem(n in 1u64..3000, xs in prop::collection::vec(rational(), 1..=4)) {
        let omega = factorize(n).unwrap().big_omega();
        let total: Rational = xs.iter().sum();
        prop_assert_eq!(multinomial_identity_lhs(n, &xs).unwrap(), num::pow::Pow::pow(&total, omega as u64));
    }

    #[test]
    fn semimultiplicative_round_trip(a in 1u64..=8, c in rational(), r in rational()) {
        prop_assume!(!c.is_zero());
        let dec = SemimultDecomposition::new(a, c.clone(), builtins::r_omega(r.clone())).unwrap();
        let back = decompose(&dec.to_fn(), 60).unwrap();
        prop_assert_eq!(back.a, a);
        prop_assert_eq!(back.c, c);
        for n in 1..=60 / a {
            prop_assert_eq!(back.f_prime.eval(n).unwrap(), dec.f_prime.eval(n).unwrap());
        }
    }

    #[test]
    fn log_of_products(m in 1u64..100_000, n in 1u64..100_000) {
        let mut sum = LogLinear::log_of(m).unwrap();
        sum += &LogLinear::log_of(n).unwrap();
        prop_assert_eq!(sum, LogLinear::log_of(m * n).unwrap());
        let f = LogLinear::log_of(m * n).unwrap().to_f64();
        prop_assert!((f - ((m * n) as f64).ln()).abs() <= 1e-9 * f.max(1.0));
    }

    #[test]
    fn spec_display_reparses(depth in 0usize..3, seed in any::<u64>()) {
        let leaves = ["I", "mu", "lambda", "xi", "tau", "mu2", "nr:2", "romega:-3/2", "delta"];
        let mut s = leaves[(seed % leaves.len() as u64) as usize].to_string();
        let mut x = seed;
        for _ in 0..depth {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            s = match x % 4 {
                0 => format!("binv({s})"),
                1 => format!("bconv({s}, lambda)"),
                2 => format!("bpow:-2({s})"),
                _ => format!("toxi( {s} )"),
            };
        }
        let e = parse(&s).unwrap();
        prop_assert_eq!(parse(&e.to_string()).unwrap().to_string(), e.to_string());
    }
}
