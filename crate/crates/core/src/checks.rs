//! A registry of named identity checks, each reproducible from a seed.
//!
//! Every check returns a [`CheckReport`]; `pass` is `false` exactly when some
//! expected outcome was not observed, and `witness` names the first one.

use num::complex::Complex64;
use num::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    binomial_convolve, binomial_inverse, binomial_inverse_via_isomorphism, builtins,
    dirichlet_convolve, dirichlet_inverse, from_dirichlet_side, q, ratio, to_dirichlet_side,
    ArithFn, Flags,
};
use crate::error::{invalid, Result};
use crate::inversion::{
    arithmetic_invert, arithmetic_transform_fn, boxdot_compose_check, boxdot_fn,
    boxdot_linearity_exact, downward_transform_fn, finite_downward_invert, inverse_certificate,
    invert_boxdot, summability_side_condition, DecayingFn, DomainFn, DownwardFn, Flow, OrbitDecay,
};
use crate::multiplicativity::{
    check_distributivity, check_power_characterization, classify,
    closed_form_inverse_prime_supported, is_liouville_self_inverse, lambda_self_inverse_family,
    multinomial_identity_lhs, InverseMode,
};
use crate::numeric::{factorize, Rational};
use crate::semimult::{
    binomial_convolve_semimult_params, class_s_function, decompose,
    dirichlet_convolve_semimult_params, SemimultDecomposition,
};
use crate::series::{
    capital_xi, chebyshev_psi_direct, chebyshev_theta_direct, egf_convolution_check, egf_outer_sum,
    egf_partial, euler_product_exp_dirichlet, exp_dirichlet_partial, exp_dirichlet_product_check,
    log_derivative_check, mangoldt, mangoldt_factorization_check, mangoldt_tilde, prime_zeta,
    verify_log_identities, zeta_tilde, zeta_tilde_routes, GrowthCertificate, SeriesFn,
    DEFAULT_EXPONENT_CUTOFF, DEFAULT_PRIME_CUTOFF,
};

/// A registered identity.
#[derive(Debug, Clone, Copy)]
pub struct Identity {
    pub name: &'static str,
    pub summary: &'static str,
    run: fn(&CheckParams) -> Result<Verdict>,
}

/// Knobs shared by all checks; each check reads the ones it needs and
/// falls back to its own default.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckParams {
    /// Upper end of the range checked.
    pub bound: Option<u64>,
    pub samples: Option<usize>,
    /// A single argument (e.g. for `mangoldt_ids`).
    pub n: Option<u64>,
    pub s: Option<f64>,
    pub z: Option<f64>,
    /// Number of series terms.
    pub terms: Option<u64>,
    pub tol: Option<f64>,
    /// Prime cutoff for Euler products.
    pub sieve_bound: Option<u64>,
    pub seed: u64,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams {
            bound: None,
            samples: None,
            n: None,
            s: None,
            z: None,
            terms: None,
            tol: None,
            sieve_bound: None,
            seed: 1,
        }
    }
}

impl CheckParams {
    fn bound(&self, default: u64) -> u64 {
        self.bound.unwrap_or(default)
    }
    fn samples(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
    fn s(&self, default: f64) -> f64 {
        self.s.unwrap_or(default)
    }
    fn terms(&self, default: u64) -> u64 {
        self.terms.unwrap_or(default)
    }
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub identity: String,
    pub pass: bool,
    /// The first expectation that failed.
    pub witness: Option<String>,
    pub detail: String,
}

#[derive(Debug, Default)]
struct Verdict {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Verdict {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

pub const REGISTRY: &[Identity] = &[
    Identity {
        name: "isom",
        summary: "f∘g = ξ(f/ξ * g/ξ) and f*g = (fξ∘gξ)/ξ on random tables",
        run: isom,
    },
    Identity {
        name: "bininv",
        summary: "binomial inverses of I, ξ, μ; recursive vs isomorphism inverses",
        run: bininv,
    },
    Identity {
        name: "thm2_3",
        summary: "closed-form inverses of prime-supported multiplicative functions",
        run: thm2_3,
    },
    Identity {
        name: "thm3_1",
        summary: "multiplicative multinomial theorem and Σ Π multinomials = k^Ω",
        run: thm3_1,
    },
    Identity {
        name: "thm3_2",
        summary: "f^{k∘} = k^Ω f characterizes complete multiplicativity",
        run: thm3_2,
    },
    Identity {
        name: "thm3_3",
        summary: "f(g∘h) = fg∘fh characterizes complete multiplicativity",
        run: thm3_3,
    },
    Identity {
        name: "thm4_1",
        summary: "parameters (a, c, F') of convolutions of semimultiplicative functions",
        run: thm4_1,
    },
    Identity {
        name: "thm5_1",
        summary: "D̃(f,s) D̃(g,s) = D̃(f∘g,s)",
        run: thm5_1,
    },
    Identity {
        name: "thm5_2",
        summary: "D̃(f,s) = exp(Σ_p f(p) p^-s) for completely multiplicative f",
        run: thm5_2,
    },
    Identity {
        name: "cor5_1",
        summary: "ζ̃ three ways and D̃(n^r,s) = ζ̃(s-r)",
        run: cor5_1,
    },
    Identity {
        name: "cor5_2",
        summary: "D̃(r^Ω,s) = exp(r ζ_P(s))",
        run: cor5_2,
    },
    Identity {
        name: "mangoldt_ids",
        summary: "Λ̃∘I = log, composite zero-sums, θ and ψ",
        run: mangoldt_ids,
    },
    Identity {
        name: "thm6_1",
        summary: "P̃(f∘g,z) = Σ_k f(k)/ξ(k) P̃(g,z^k)",
        run: thm6_1,
    },
    Identity {
        name: "cor6_1",
        summary: "Ξ identities and x+x²+x³ < Ξ(x) <= x/(1-x)",
        run: cor6_1,
    },
    Identity {
        name: "thm7_1",
        summary: "flow axioms and the algebra of ⊡",
        run: thm7_1,
    },
    Identity {
        name: "thm7_2",
        summary: "Möbius-type inversion along the power flow",
        run: thm7_2,
    },
    Identity {
        name: "thm7_3",
        summary: "finite inversion Σ_{n<=x} along x/n, exactly",
        run: thm7_3,
    },
    Identity {
        name: "thm7_4",
        summary: "inversion of f(n) = Σ_m h(m)/ξ(m) g(mn)",
        run: thm7_4,
    },
    Identity {
        name: "cor7_1",
        summary: "h = I, h^{-1∘} = λ round trip with summability side condition",
        run: cor7_1,
    },
];

/// Names of all registered identities.
pub fn names() -> Vec<&'static str> {
    REGISTRY.iter().map(|i| i.name).collect()
}

pub fn lookup(name: &str) -> Option<&'static Identity> {
    REGISTRY.iter().find(|i| i.name == name)
}

/// Runs a registered identity.
pub fn run(name: &str, params: &CheckParams) -> Result<CheckReport> {
    let id = lookup(name).ok_or_else(|| {
        invalid(format!(
            "unknown identity `{name}`; valid names: {}",
            names().join(", ")
        ))
    })?;
    let v = (id.run)(params)?;
    Ok(CheckReport {
        identity: id.name.to_string(),
        pass: v.failures.is_empty(),
        witness: v.failures.first().cloned(),
        detail: v.notes.join("; "),
    })
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn random_table(rng: &mut ChaCha8Rng, bound: u64, invertible: bool) -> Result<ArithFn> {
    let mut vals: Vec<Rational> = (0..bound).map(|_| random_rational(rng)).collect();
    if invertible && vals[0].is_zero() {
        vals[0] = q(1);
    }
    ArithFn::from_table("table", vals)
}

fn first_mismatch(a: &ArithFn, b: &ArithFn, bound: u64) -> Result<Option<u64>> {
    let (va, vb) = (a.values(bound)?, b.values(bound)?);
    Ok(va
        .iter()
        .zip(&vb)
        .position(|(x, y)| x != y)
        .map(|i| i as u64 + 1))
}

fn isom(p: &CheckParams) -> Result<Verdict> {
    let bound = p.bound(300);
    let samples = p.samples(10);
    let mut rng = p.rng();
    let mut v = Verdict::default();
    for i in 0..samples {
        let (f, g) = (
            random_table(&mut rng, bound, false)?,
            random_table(&mut rng, bound, false)?,
        );
        let lhs = binomial_convolve(&f, &g);
        let rhs = from_dirichlet_side(&dirichlet_convolve(
            &to_dirichlet_side(&f),
            &to_dirichlet_side(&g),
        ));
        let m = first_mismatch(&lhs, &rhs, bound)?;
        v.expect(m.is_none(), || {
            format!("∘ law fails for pair {i} at n = {}", m.unwrap_or(0))
        });
        let lhs = dirichlet_convolve(&f, &g);
        let rhs = to_dirichlet_side(&binomial_convolve(
            &from_dirichlet_side(&f),
            &from_dirichlet_side(&g),
        ));
        let m = first_mismatch(&lhs, &rhs, bound)?;
        v.expect(m.is_none(), || {
            format!("* law fails for pair {i} at n = {}", m.unwrap_or(0))
        });
    }
    v.note(format!("{samples} pairs on 1..={bound}"));
    Ok(v)
}

fn bininv(p: &CheckParams) -> Result<Verdict> {
    let bound = p.bound(500);
    let mut v = Verdict::default();
    let known = [
        (builtins::one(), builtins::liouville()),
        (builtins::xi(), builtins::moebius()),
        (builtins::moebius(), builtins::xi()),
    ];
    for (f, inv) in &known {
        let m = first_mismatch(&binomial_inverse(f)?, inv, bound)?;
        v.expect(m.is_none(), || {
            format!(
                "{}^-1∘ != {} at n = {}",
                f.name(),
                inv.name(),
                m.unwrap_or(0)
            )
        });
    }
    let tb = bound.min(300);
    let mut rng = p.rng();
    let samples = p.samples(20);
    for i in 0..samples {
        let f = random_table(&mut rng, tb, true)?;
        let m = first_mismatch(
            &binomial_inverse(&f)?,
            &binomial_inverse_via_isomorphism(&f)?,
            tb,
        )?;
        v.expect(m.is_none(), || {
            format!(
                "inverse paths differ for sample {i} at n = {}",
                m.unwrap_or(0)
            )
        });
    }
    v.note(format!(
        "known inverses on 1..={bound}; {samples} random tables on 1..={tb}"
    ));
    Ok(v)
}

/// Multiplicative with `f(p) = r` and `f(p^a) = 0` for `a >= 2`.
pub fn prime_supported(r: Rational) -> ArithFn {
    ArithFn::prime_independent(
        format!("f(p)={r}"),
        move |a| {
            Ok(match a {
                0 => q(1),
                1 => r.clone(),
                _ => q(0),
            })
        },
        Flags::multiplicative(),
    )
}

fn thm2_3(p: &CheckParams) -> Result<Verdict> {
    let bound = p.bound(300);
    let mut v = Verdict::default();
    let mut fams = vec![builtins::moebius(), builtins::mu_squared()];
    fams.extend([q(-2), q(3), ratio(5, 2)].into_iter().map(prime_supported));
    for f in &fams {
        for (mode, generic) in [
            (InverseMode::Binomial, binomial_inverse(f)?),
            (InverseMode::Dirichlet, dirichlet_inverse(f)?),
        ] {
            let closed = closed_form_inverse_prime_supported(f, mode, bound)?;
            let m = first_mismatch(&closed, &generic, bound)?;
            v.expect(m.is_none(), || {
                format!(
                    "{mode:?} closed form of {} fails at n = {}",
                    f.name(),
                    m.unwrap_or(0)
                )
            });
        }
    }
    v.note(format!("{} functions on 1..={bound}", fams.len()));
    Ok(v)
}

fn thm3_1(p: &CheckParams) -> Result<Verdict> {
    let n_max = p.bound(5000);
    let samples = p.samples(100);
    let mut rng = p.rng();
    let mut v = Verdict::default();
    for _ in 0..samples {
        let n = rng.gen_range(1..=n_max);
        let k = rng.gen_range(1..=4usize);
        let xs: Vec<Rational> = (0..k).map(|_| random_rational(&mut rng)).collect();
        let omega = factorize(n)?.big_omega() as u64;
        let total: Rational = xs.iter().sum();
        let lhs = multinomial_identity_lhs(n, &xs)?;
        v.expect(lhs == num::pow::Pow::pow(&total, omega), || {
            format!("n = {n}, xs = {}", join(&xs))
        });
        let ones = multinomial_identity_lhs(n, &vec![q(1); k])?;
        v.expect(ones == num::pow::Pow::pow(&q(k as i64), omega), || {
            format!("multinomial sum ≠ {k}^Ω({n})")
        });
    }
    v.note(format!("{samples} samples, n <= {n_max}, k <= 4"));
    Ok(v)
}

fn join(xs: &[Rational]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn thm3_2(p: &CheckParams) -> Result<Verdict> {
    let bound = p.bound(300);
    let mut v = Verdict::default();
    for f in [builtins::one(), builtins::liouville()] {
        for k in [2, 3, -2] {
            let out = check_power_characterization(&f, k, bound)?;
            v.expect(out.holds, || {
                format!("{} fails for k = {k} at {:?}", f.name(), out.witness)
            });
        }
    }
    let out = check_power_characterization(&builtins::xi(), 2, bound)?;
    v.expect(!out.holds, || {
        "ξ unexpectedly satisfies the power law".into()
    });
    if let Some(w) = out.witness {
        v.note(format!("ξ fails for k = 2 at n = {w}"));
    }
    let fam = lambda_self_inverse_family(|e| q(e as i64), 8)?;
    let inv = is_liouville_self_inverse(&fam, bound)?;
    v.expect(inv.holds, || {
        format!("family member has f^-1∘ ≠ λf at {:?}", inv.witness)
    });
    let report = classify(&fam, bound)?;
    v.expect(!report.is_completely_multiplicative, || {
        "family member is completely multiplicative".into()
    });
    v.note(format!(
        "self-inverse family member not completely multiplicative at {:?}",
        report.first_violation
    ));
    Ok(v)
}

fn thm3_3(p: &CheckParams) -> Result<Verdict> {
    let bound = p.bound(200);
    let samples = p.samples(20);
    let mut rng = p.rng();
    let mut v = Verdict::default();
    let mut pairs = Vec::with_capacity(samples);
    for _ in 0..samples {
        pairs.push((
            random_table(&mut rng, bound, false)?,
            random_table(&mut rng, bound, false)?,
        ));
    }
    let out = check_distributivity(&builtins::liouville(), &pairs, bound)?;
    v.expect(out.holds, || {
        format!("λ fails at (pair, n) = {:?}", out.witness)
    });
    let out = check_distributivity(
        &builtins::xi(),
        &[(builtins::moebius(), builtins::xi())],
        bound,
    )?;
    v.expect(!out.holds, || {
        "ξ unexpectedly distributes over (μ, ξ)".into()
    });
    if let Some((_, n)) = out.witness {
        v.note(format!("ξ fails on (μ, ξ) at n = {n}"));
    }
    Ok(v)
}

fn random_multiplicative(rng: &mut ChaCha8Rng) -> ArithFn {
    match rng.gen_range(0..8) {
        0 => builtins::one(),
        1 => builtins::liouville(),
        2 => builtins::moebius(),
        3 => builtins::xi(),
        4 => builtins::tau(),
        5 => builtins::mu_squared(),
        6 => builtins::r_omega(random_rational(rng)),
        _ => {
            let mut rule = vec![q(1)];
            rule.extend((0..16).map(|_| random_rational(rng)));
            class_s_function(
                "h",
                std::sync::Arc::new(move |a| {
                    rule.get(a as usize)
                        .cloned()
                        .ok_or_else(|| invalid("exponent too large"))
                }),
            )
        }
    }
}

fn random_semimult(rng: &mut ChaCha8Rng) -> Result<SemimultDecomposition> {
    let mut c = random_rational(rng);
    if c.is_zero() {
        c = q(1);
    }
    SemimultDecomposition::new(rng.gen_range(1..=6), c, random_multiplicative(rng))
}

fn same_decomposition(
    predicted: &SemimultDecomposition,
    direct: &SemimultDecomposition,
    bound: u64,
) -> Result<bool> {
    if predicted.a != direct.a || predicted.c != direct.c {
        return Ok(false);
    }
    Ok(first_mismatch(&predicted.f_prime, &direct.f_prime, bound / predicted.a)?.is_none())
}

fn thm4_1(p: &CheckParams) -> Result<Verdict> {
    let bound = p.bound(300);
    let samples = p.samples(50);
    let mut rng = p.rng();
    let mut v = Verdict::default();
    for i in 0..samples {
        let (f, g) = (random_semimult(&mut rng)?, random_semimult(&mut rng)?);
        let (ff, gf) = (f.to_fn(), g.to_fn());
        let predicted = binomial_convolve_semimult_params(&f, &g)?;
        let direct = decompose(&binomial_convolve(&ff, &gf), bound)?;
        v.expect(same_decomposition(&predicted, &direct, bound)?, || {
            format!(
                "∘ parameters differ for pair {i} ({} and {})",
                ff.name(),
                gf.name()
            )
        });
        let predicted = dirichlet_convolve_semimult_params(&f, &g)?;
        let direct = decompose(&dirichlet_convolve(&ff, &gf), bound)?;
        v.expect(same_decomposition(&predicted, &direct, bound)?, || {
            format!(
                "* parameters differ for pair {i} ({} and {})",
                ff.name(),
                gf.name()
            )
        });
    }
    v.note(format!("{samples} pairs on 1..={bound}"));
    Ok(v)
}

fn thm5_1(p: &CheckParams) -> Result<Verdict> {
    let s = p.s(2.0);
    let terms = p.terms(1_000_000);
    let mut v = Verdict::default();
    let cases = [
        (SeriesFn::one(), SeriesFn::liouville(), SeriesFn::delta()),
        (SeriesFn::moebius(), SeriesFn::xi(), SeriesFn::delta()),
        (SeriesFn::one(), SeriesFn::one(), SeriesFn::r_omega(2.0)),
    ];
    for (f, g, fg) in &cases {
        let c = exp_dirichlet_product_check(f, g, fg, s, terms)?;
        v.expect(c.holds, || {
            format!(
                "{}·{} vs {}: difference {:e}",
                f.name(),
                g.name(),
                fg.name(),
                c.difference()
            )
        });
    }
    let c = mangoldt_factorization_check(s, terms)?;
    v.expect(c.holds, || {
        format!("Λ̃ = λ∘log: difference {:e}", c.difference())
    });
    v.note(format!("s = {s}, {terms} terms"));
    Ok(v)
}

fn thm5_2(p: &CheckParams) -> Result<Verdict> {
    let s = p.s(2.0);
    let terms = p.terms(1_000_000);
    let mut v = Verdict::default();
    let pz = prime_zeta(s)?;
    for (f, c) in [
        (SeriesFn::one(), 1.0),
        (SeriesFn::liouville(), -1.0),
        (SeriesFn::r_omega(0.5), 0.5),
    ] {
        let lhs = exp_dirichlet_partial(&f, s, terms)?;
        let rhs = crate::series::SeriesApprox {
            value: c * pz.value,
            error_bound: c.abs() * pz.error_bound,
            terms_used: pz.terms_used,
        }
        .exp();
        v.expect(lhs.overlaps(&rhs), || {
            format!("{}: {} vs {}", f.name(), lhs.value, rhs.value)
        });
    }
    v.note(format!("s = {s}, {terms} terms"));
    Ok(v)
}

fn cor5_1(p: &CheckParams) -> Result<Verdict> {
    let s = p.s(2.0);
    let tol = p.tol(1e-8);
    let mut v = Verdict::default();
    let routes = zeta_tilde_routes(s, p.terms(100_000_000))?;
    v.expect(
        routes.consistent() && routes.max_discrepancy() <= tol,
        || format!("ζ̃({s}) routes disagree by {:e}", routes.max_discrepancy()),
    );
    let r = 1.0;
    let lhs = exp_dirichlet_partial(&SeriesFn::power(r), s + r, 1_000_000)?;
    let rhs = zeta_tilde(s)?;
    v.expect(lhs.overlaps(&rhs), || {
        format!(
            "D̃(n^{r},{}) = {} vs ζ̃({s}) = {}",
            s + r,
            lhs.value,
            rhs.value
        )
    });
    v.note(format!(
        "ζ̃({s}) = {} ± {:e}, routes within {:e}",
        routes.via_prime_zeta.value,
        routes.via_prime_zeta.error_bound,
        routes.max_discrepancy()
    ));
    Ok(v)
}

fn cor5_2(p: &CheckParams) -> Result<Verdict> {
    let s = p.s(2.0);
    let tol = p.tol(1e-8);
    let mut v = Verdict::default();
    let pz = prime_zeta(s)?;
    for r in [2.0, -1.0] {
        let e = euler_product_exp_dirichlet(
            &SeriesFn::r_omega(r),
            s,
            p.sieve_bound.unwrap_or(DEFAULT_PRIME_CUTOFF),
            DEFAULT_EXPONENT_CUTOFF,
        )?;
        let target = (r * pz.value).exp();
        let diff = (e.value - target).abs();
        v.expect(
            diff <= tol && diff <= e.error_bound + r.abs() * pz.error_bound * target * 1.01,
            || format!("r = {r}: Euler product {} vs exp(r ζ_P) {target}", e.value),
        );
    }
    v.note(format!("s = {s}"));
    Ok(v)
}

fn mangoldt_ids(p: &CheckParams) -> Result<Verdict> {
    let n = p.n.or(p.bound).unwrap_or(2000);
    let mut v = Verdict::default();
    for m in 1..=n {
        let r = verify_log_identities(m)?;
        v.expect(r.holds(), || format!("identity fails at n = {m}"));
    }
    let (mut theta, mut psi) = (
        crate::numeric::LogLinear::zero(),
        crate::numeric::LogLinear::zero(),
    );
    for x in 1..=n {
        theta += &mangoldt_tilde(x)?;
        psi += &mangoldt(x)?;
        v.expect(theta == chebyshev_theta_direct(x)?, || {
            format!("θ({x}) differs")
        });
        v.expect(psi == chebyshev_psi_direct(x)?, || {
            format!("ψ({x}) differs")
        });
    }
    v.note(format!("exact for n <= {n}"));
    if let Some(s) = p.s {
        let c = log_derivative_check(s, 1e-5, p.terms(10_000_000))?;
        v.expect(c.difference() <= p.tol(1e-5), || {
            format!("D̃(Λ̃,{s}) vs -ζ̃'/ζ̃ differ by {:e}", c.difference())
        });
        v.note(format!("D̃(Λ̃,{s}) - (-ζ̃'/ζ̃) = {:e}", c.difference()));
    }
    Ok(v)
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn thm6_1(p: &CheckParams) -> Result<Verdict> {
    let zs =
        p.z.map_or(vec![re(0.3), Complex64::new(0.1, 0.5)], |z| vec![re(z)]);
    let terms = p.terms(200);
    let mut v = Verdict::default();
    let cases = [
        (SeriesFn::one(), SeriesFn::one()),
        (SeriesFn::liouville(), SeriesFn::one()),
        (SeriesFn::moebius(), SeriesFn::xi()),
        (SeriesFn::r_omega(2.0), SeriesFn::one()),
    ];
    for z in &zs {
        for (f, g) in &cases {
            let r = egf_convolution_check(f, g, *z, 60, terms)?;
            v.expect(r.agree, || format!("{}, {} at z = {z}", f.name(), g.name()));
        }
    }
    Ok(v)
}

fn cor6_1(p: &CheckParams) -> Result<Verdict> {
    let terms = p.terms(200);
    let mut v = Verdict::default();
    let zs = p.z.map_or(vec![0.2, 0.3, 0.5], |z| vec![z]);
    for &z in &zs {
        let xi1 = egf_outer_sum(&SeriesFn::liouville(), &SeriesFn::one(), re(z), 60, terms)?;
        v.expect(xi1.contains(re(z)), || {
            format!("Σ λ/ξ Ξ(z^n) ≠ z at z = {z}")
        });
        let xi2 = egf_outer_sum(&SeriesFn::one(), &SeriesFn::one(), re(z), 60, terms)?;
        let two = egf_partial(&SeriesFn::r_omega(2.0), re(z), terms)?;
        v.expect(xi2.overlaps(&two), || {
            format!("2^Ω identity fails at z = {z}")
        });
        let xir = egf_outer_sum(&SeriesFn::r_omega(2.0), &SeriesFn::one(), re(z), 60, terms)?;
        let three = egf_partial(&SeriesFn::r_omega(3.0), re(z), terms)?;
        v.expect(xir.overlaps(&three), || {
            format!("r^Ω identity (r = 2) fails at z = {z}")
        });
    }
    for i in 1..=9 {
        let x = i as f64 / 10.0;
        let xi = capital_xi(re(x), 2000)?.re();
        v.expect(
            xi.lower() > x + x * x + x * x * x && xi.upper() <= x / (1.0 - x),
            || {
                format!(
                    "Ξ({x}) = {} ± {:e} outside the bounds",
                    xi.value, xi.error_bound
                )
            },
        );
    }
    Ok(v)
}

fn thm7_1(p: &CheckParams) -> Result<Verdict> {
    let mut v = Verdict::default();
    let flows = [Flow::power(), Flow::divide(), Flow::multiply()];
    for flow in &flows {
        let ok = flow.check_axioms();
        v.expect(ok.is_ok(), || format!("flow {}: {:?}", flow.name(), ok));
    }
    let mut rng = p.rng();
    let samples = p.samples(5);
    for i in 0..samples {
        let f = random_table(&mut rng, 40, false)?;
        let g = random_table(&mut rng, 40, false)?;
        let (a, b) = (random_rational(&mut rng), random_rational(&mut rng));
        let alpha = move |y: &Rational| -> Result<Rational> { Ok(y * y * &a + q(1)) };
        let beta = move |y: &Rational| -> Result<Rational> { Ok(y * &b) };
        for flow in &flows {
            let x = if flow.name() == "power" {
                ratio(2, 7)
            } else {
                ratio(9, 2)
            };
            let r = boxdot_linearity_exact(&f, &g, &alpha, &beta, flow, &x, 40)?;
            v.expect(r.holds(), || {
                format!("linearity fails for sample {i} on flow {}", flow.name())
            });
        }
    }
    let lam = SeriesFn::liouville();
    for (f, g) in [(&lam, &lam), (&SeriesFn::one(), &lam)] {
        let r = boxdot_compose_check(f, g, &DomainFn::identity(), 1.0, &[0.2, 0.4, 0.6], 200)?;
        v.expect(r.iter().all(|s| s.agree), || {
            format!("f ⊡ (g ⊡ α) ≠ (f∘g) ⊡ α for {}, {}", f.name(), g.name())
        });
    }
    Ok(v)
}

fn thm7_2(p: &CheckParams) -> Result<Verdict> {
    let samples = p.samples(20);
    let mut rng = p.rng();
    let mut v = Verdict::default();
    let flow = Flow::power();
    let mut worst = 0.0f64;
    for i in 0..samples {
        let mut vals = vec![q(1)];
        vals.extend((0..7).map(|_| random_rational(&mut rng)));
        let f = ArithFn::finite_support("f", vals);
        let k = rng.gen_range(1..=3);
        let x = rng.gen_range(0.05..0.6);
        // random values are at most 9 in absolute value
        let fs = SeriesFn::from_arith(&f, GrowthCertificate::new(9.0, 0.0)?, 8)?;
        let a_const: f64 = (1..=8)
            .map(|n| fs.weight(n).map(f64::abs))
            .sum::<Result<f64>>()?;
        let alpha = boxdot_fn(
            &fs,
            &DomainFn::monomial(k),
            &flow,
            |y| OrbitDecay::power_flow(y, 1.0),
            8,
        );
        let cert = inverse_certificate(&f, 8)?;
        let back = invert_boxdot(
            &f,
            cert,
            &alpha,
            &flow,
            x,
            OrbitDecay::power_flow(x, a_const),
            400,
        )?;
        let truth = x.powi(k);
        worst = worst.max((back.value - truth).abs());
        v.expect(back.contains(truth), || {
            format!(
                "sample {i}: recovered {} ± {:e}, expected {truth}",
                back.value, back.error_bound
            )
        });
    }
    v.note(format!("{samples} samples, max error {worst:e}"));
    Ok(v)
}

fn thm7_3(p: &CheckParams) -> Result<Verdict> {
    let samples = p.samples(20);
    let mut rng = p.rng();
    let mut v = Verdict::default();
    for i in 0..samples {
        let mut vals = vec![random_rational(&mut rng)];
        if vals[0].is_zero() {
            vals[0] = q(1);
        }
        vals.extend((0..rng.gen_range(0..12)).map(|_| random_rational(&mut rng)));
        let f = ArithFn::finite_support("f", vals);
        let coeffs: Vec<Rational> = (0..3).map(|_| random_rational(&mut rng)).collect();
        let beta = DownwardFn::new("β", move |x: &Rational| {
            Ok(coeffs
                .iter()
                .rev()
                .fold(Rational::zero(), |acc, c| acc * x + c))
        });
        let alpha = downward_transform_fn(&f, &beta);
        let x = ratio(rng.gen_range(1..=400), rng.gen_range(1..=7));
        let back = finite_downward_invert(&f, &alpha, &x)?;
        v.expect(back == beta.eval(&x)?, || format!("sample {i} at x = {x}"));
    }
    v.note(format!("{samples} random f, β"));
    Ok(v)
}

fn thm7_4(p: &CheckParams) -> Result<Verdict> {
    let m_max = p.terms(1000);
    let mut v = Verdict::default();
    let unit = GrowthCertificate::new(1.0, 0.0)?;
    let cases = [
        (builtins::liouville(), SeriesFn::liouville(), 3.0),
        (builtins::moebius(), SeriesFn::moebius(), 3.0),
        (builtins::one(), SeriesFn::one(), 2.5),
    ];
    for (h, hs, qd) in &cases {
        let g = DecayingFn::power(*qd);
        let f = arithmetic_transform_fn(hs, &g, m_max)?;
        for n in [1u64, 2, 3, 6] {
            let back = arithmetic_invert(h, unit, &f, n, m_max)?;
            let truth = (n as f64).powf(-qd);
            v.expect(back.contains(truth), || {
                format!(
                    "h = {}, g = n^-{qd}, n = {n}: {} ± {:e}",
                    h.name(),
                    back.value,
                    back.error_bound
                )
            });
        }
    }
    Ok(v)
}

fn cor7_1(p: &CheckParams) -> Result<Verdict> {
    let m_max = p.terms(2000);
    let tol = p.tol(1e-8);
    let mut v = Verdict::default();
    let g = DecayingFn::power(4.0);
    let side = summability_side_condition(&g)?;
    v.note(format!(
        "ε = {}, Σ n^ε |g(n)| <= {:.6}, τ(n) <= {:.3} n^ε",
        side.epsilon, side.weighted_sum_bound, side.divisor_constant
    ));
    let f = arithmetic_transform_fn(&SeriesFn::one(), &g, m_max)?;
    let unit = GrowthCertificate::new(1.0, 0.0)?;
    for n in [1u64, 2] {
        let back = arithmetic_invert(&builtins::one(), unit, &f, n, m_max)?;
        let truth = (n as f64).powi(-4);
        v.expect(
            back.contains(truth) && (back.value - truth).abs() <= tol,
            || {
                format!(
                    "g({n}) recovered as {} ± {:e}",
                    back.value, back.error_bound
                )
            },
        );
    }
    let f1 = f.eval(1)?;
    // f(1) = Σ m^-4/ξ(m) = ζ̃(4)
    let zt4 = zeta_tilde(4.0)?;
    v.expect(f1.overlaps(&zt4), || {
        format!("f(1) = {} but ζ̃(4) = {}", f1.value, zt4.value)
    });
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(name: &str, p: CheckParams) -> CheckReport {
        run(name, &p).unwrap()
    }

    #[test]
    fn unknown_name_lists_registry() {
        let e = run("nope", &CheckParams::default())
            .unwrap_err()
            .to_string();
        assert!(e.contains("thm3_1") && e.contains("cor7_1"));
        assert_eq!(names().len(), 19);
    }

    #[test]
    fn algebra_checks_pass_small() {
        let p = CheckParams {
            bound: Some(60),
            samples: Some(3),
            ..Default::default()
        };
        for name in ["isom", "bininv", "thm2_3", "thm3_2", "thm3_3", "thm4_1"] {
            let r = quick(name, p.clone());
            assert!(r.pass, "{name}: {r:?}");
        }
        let r = quick(
            "thm3_1",
            CheckParams {
                bound: Some(500),
                samples: Some(10),
                ..Default::default()
            },
        );
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn inversion_checks_pass() {
        let p = CheckParams {
            samples: Some(3),
            ..Default::default()
        };
        for name in ["thm7_1", "thm7_2", "thm7_3", "thm7_4", "cor7_1"] {
            let r = quick(name, p.clone());
            assert!(r.pass, "{name}: {r:?}");
        }
    }

    #[test]
    fn mangoldt_small() {
        let r = quick(
            "mangoldt_ids",
            CheckParams {
                n: Some(12),
                ..Default::default()
            },
        );
        assert!(r.pass && r.witness.is_none());
    }

    #[test]
    fn same_seed_same_report() {
        let p = CheckParams {
            bound: Some(40),
            samples: Some(2),
            seed: 9,
            ..Default::default()
        };
        assert_eq!(quick("isom", p.clone()), quick("isom", p));
    }
}
