//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p pascal-rays-cli --test system_acceptance`.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use pascal_rays::Complex64;
use pascal_rays::attractor::{
    branch_images, convergence_report, distance_to_locus, pplane_locus, region_b, trace_attractor, LambdaBranch,
    LocusSpec, PPlanePoint, Window,
};
use pascal_rays::contour::{contour_tau, contour_term, widest_radius, ContourSpec};
use pascal_rays::cubic::{asym_factor, chain_params, depress, family_cubic, p_cubic, solve_chain, tau_explicit, Cubic};
use pascal_rays::exact::{rational_from_int, rational_to_f64};
use pascal_rays::rootfinder::{durand_kerner_roots, multiset_distance, NumericUniPoly};
use pascal_rays::sequence::{build_recurrence, tau_exact, term_by_binomial_sum, terms_by_recurrence, terms_by_series};
use pascal_rays::{BivariatePolynomial, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex64;

const BIN: &str = env!("CARGO_BIN_EXE_pascal-rays");

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn one() -> C {
    C::new(1.0, 0.0)
}

fn rel_err(got: C, want: C) -> f64 {
    if want.norm() > 0.0 {
        (got - want).norm() / want.norm()
    } else {
        got.norm()
    }
}

/// `c x^i y^j`
fn m(c: i64, i: u32, j: u32) -> BivariatePolynomial {
    BivariatePolynomial::monomial(rational_from_int(c), i, j)
}

fn sum(parts: &[BivariatePolynomial]) -> BivariatePolynomial {
    parts.iter().fold(BivariatePolynomial::zero(), |a, b| &a + b)
}

fn golden_terms() -> Verdict {
    // The printed table, transcribed in its factored form.
    let table = [
        BivariatePolynomial::zero(),
        BivariatePolynomial::zero(),
        m(1, 0, 1),
        m(2, 1, 1),
        m(3, 2, 1),
        &m(1, 0, 1) * &sum(&[m(4, 3, 0), m(1, 0, 2)]),
        &m(1, 1, 1) * &sum(&[m(5, 3, 0), m(4, 0, 2)]),
        &m(2, 2, 1) * &sum(&[m(3, 3, 0), m(5, 0, 2)]),
        &m(1, 0, 1) * &sum(&[m(7, 6, 0), m(20, 3, 2), m(1, 0, 4)]),
        &m(1, 1, 1) * &sum(&[m(8, 6, 0), m(35, 3, 2), m(6, 0, 4)]),
        &m(1, 2, 1) * &sum(&[m(9, 6, 0), m(56, 3, 2), m(21, 0, 4)]),
    ];
    let want: String = table.iter().enumerate().map(|(k, t)| format!("T_{k} = {t}\n")).collect();
    let start = Instant::now();
    let out = Command::new(BIN).args(["terms", "--n", "10"]).output().unwrap();
    let secs = start.elapsed().as_secs_f64();
    let got = String::from_utf8_lossy(&out.stdout);
    let same = got == want && out.status.success();
    verdict(same && secs < 1.0, format!("11 entries {}, {secs:.3}s", if same { "identical" } else { "differ" }))
}

fn triple_oracle() -> Verdict {
    let start = Instant::now();
    let mut bad = None;
    for (r, q, p, n_max) in [(2, 1, 1, 200), (1, 1, 0, 50), (3, 1, 0, 50), (2, 1, 0, 50), (3, 2, 1, 50)] {
        let rec = terms_by_recurrence(&build_recurrence(r, q, p).unwrap(), n_max);
        let ser = terms_by_series(r, q, p, n_max - 1).unwrap();
        for n in 1..=n_max {
            let direct = term_by_binomial_sum(r, q, p, n as i64 - 1).unwrap();
            if rec[n] != direct || ser[n - 1] != direct {
                bad.get_or_insert(format!("({r},{q},{p}) T_{n}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    match bad {
        None => verdict(secs < 30.0, format!("exact on 5 triples, {secs:.2}s")),
        Some(b) => verdict(false, format!("mismatch at {b}")),
    }
}

fn fibonacci() -> Verdict {
    let t = terms_by_recurrence(&build_recurrence(1, 1, 0).unwrap(), 51);
    let (mut a, mut b) = (rational_from_int(0), rational_from_int(1));
    for n in 0..=50 {
        let next = &a + &b;
        a = b;
        b = next;
        let v: Rational = t[n + 1].terms().fold(rational_from_int(0), |acc, (_, c)| acc + c);
        if v != a {
            return verdict(false, format!("T_{}(1,1) != F_{}", n + 1, n + 1));
        }
    }
    verdict(true, "F_1..F_51 exact")
}

fn contour() -> Verdict {
    let start = Instant::now();
    let pts: Vec<C> = [(0.4, 0.3), (0.9, 2.0), (1.3, -2.6), (1.7, PI), (2.0, -0.9)]
        .iter()
        .map(|&(r, a)| C::from_polar(r, a))
        .collect();
    let terms = terms_by_recurrence(&build_recurrence(2, 1, 1).unwrap(), 30);
    let mut worst = 0.0f64;
    for &x in &pts {
        for &y in &pts {
            let spec = widest_radius(x, y).unwrap();
            for (n, t) in terms.iter().enumerate() {
                worst = worst.max(rel_err(contour_term(x, y, n, &spec).unwrap(), t.eval(x, y)));
            }
        }
    }
    let spec = ContourSpec::new(0.5);
    let mut tau_worst = 0.0f64;
    for (k, v) in [1.0, 2.0, 3.0, 5.0, 9.0, 16.0, 28.0, 49.0, 86.0].iter().enumerate() {
        tau_worst = tau_worst.max(rel_err(contour_tau(k + 2, &spec).unwrap(), C::new(*v, 0.0)));
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        worst <= 1e-8 && tau_worst <= 1e-8 && secs < 60.0,
        format!("grid max rel err {worst:.2e}, tau max rel err {tau_worst:.2e}, {secs:.2}s"),
    )
}

fn conformal_chain() -> Verdict {
    let start = Instant::now();
    let d = depress(&p_cubic());
    let (lambda, beta) = chain_params(d.pcoef, d.qcoef).unwrap();
    let s5 = 5f64.sqrt();
    let exact_err = [
        (d.pcoef - C::new(5.0 / 3.0, 0.0)).norm(),
        (d.qcoef - C::new(-11.0 / 27.0, 0.0)).norm(),
        (lambda - C::new(0.0, s5 / 3.0)).norm(),
        (beta - C::new(0.0, -11.0 * s5 / 25.0)).norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut worst, mut worst_res) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let mut coef = || C::from_polar(rng.gen_range(0.0..10.0), rng.gen_range(-PI..PI));
        let c = Cubic::new(coef(), coef(), coef());
        let (roots, trace) = solve_chain(&c);
        worst_res = worst_res.max(trace.max_residual / c.scale());
        let p = NumericUniPoly::new(vec![c.c0, c.c1, c.c2, one()]).unwrap();
        let dk = durand_kerner_roots(&p, 1e-14, 500);
        worst = worst.max(multiset_distance(&roots.as_array(), &dk.roots));
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        exact_err <= 1e-14 && worst <= 1e-9 && worst_res <= 1e-10 && secs < 10.0,
        format!("instance err {exact_err:.1e}, chain vs DK {worst:.1e}, residual/scale {worst_res:.1e}, {secs:.2}s"),
    )
}

fn residue_formula() -> Verdict {
    let p = p_cubic();
    let (roots, _) = solve_chain(&p);
    let mut worst = 0.0f64;
    for n in 2..=60 {
        let want = rational_to_f64(&tau_exact(n).unwrap().value);
        worst = worst.max(rel_err(tau_explicit(n, &roots, &p).unwrap(), C::new(want, 0.0)));
    }
    verdict(worst <= 1e-9, format!("tau_n = +sum t_k^(1-n)/P'(t_k), n=2..60, max rel err {worst:.2e}"))
}

fn lemma4_loci() -> Verdict {
    let b = LambdaBranch::Conjugate;
    let loci = pplane_locus(b);
    let on: Vec<PPlanePoint> = loci.iter().flat_map(|l| l.sample(67, 5.0)).take(200).collect();
    let worst_on = on
        .iter()
        .map(|&pt| {
            let t = branch_images(pt, b);
            (t[0].norm() - t[1].norm()).abs() / (1.0 + t[0].norm())
        })
        .fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut off_min = f64::INFINITY;
    let mut off = 0;
    while off < 200 {
        let pt = PPlanePoint::new(rng.gen_range(1.0..5.0), rng.gen_range(-PI..PI));
        if distance_to_locus(pt.to_complex(), b) < 0.05 {
            continue;
        }
        let t = branch_images(pt, b);
        off_min = off_min.min((t[0].norm() - t[1].norm()).abs());
        off += 1;
    }
    let circle_ok = loci.iter().any(|l| {
        matches!(l, LocusSpec::Arc { center, radius, .. }
            if *center == (-(15f64.sqrt()) / 2.0, 5f64.sqrt() / 2.0) && *radius == 6f64.sqrt())
    });
    verdict(
        on.len() == 200 && worst_on <= 1e-9 && off_min > 1e-4 && circle_ok,
        format!("on-locus max gap {worst_on:.1e}, off-locus min gap {off_min:.1e}, circle exact {circle_ok}"),
    )
}

fn attractor_convergence() -> Verdict {
    let start = Instant::now();
    let curve = trace_attractor(&Window::square(2.0), (256, 256), 1e-9, one()).unwrap();
    let rep = convergence_report(&[50, 100, 200, 400], &curve, one()).unwrap();
    let eps: Vec<f64> = rep.rows.iter().map(|r| r.eps_out).collect();
    let non_increasing = eps.windows(2).all(|w| w[1] <= w[0]);
    let halved = eps[3] < eps[0] / 2.0;
    let cauchy = rep.rows.iter().all(|r| r.max_zero_modulus <= r.rho_cauchy);
    let region_b_hits = rep.rows.iter().find(|r| r.n == 200).unwrap().region_b_hits;
    let secs = start.elapsed().as_secs_f64();
    let pass = non_increasing && halved && cauchy && region_b_hits == 0 && secs < 300.0;
    let eps_txt: Vec<String> = eps.iter().map(|e| format!("{e:.2e}")).collect();
    verdict(
        pass,
        format!(
            "eps_out(50,100,200,400) = [{}]: non-increasing {non_increasing}, halved {halved}; \
             zeros inside Cauchy disc {cauchy}; region-B hits at n=200: {region_b_hits}; {secs:.1}s",
            eps_txt.join(", ")
        ),
    )
}

fn asymptotics() -> Verdict {
    let pts = [C::new(1.0, 0.0), C::new(0.8, 0.0), C::new(1.2, 0.2), C::new(1.0, -0.3), C::new(0.6, 0.1)];
    let mut worst_ratio = 0.0f64;
    for x in pts {
        if !region_b(x, one(), 0.2).unwrap() {
            return verdict(false, format!("{x} is not in region B"));
        }
        let c = family_cubic(x, one()).unwrap();
        let (roots, _) = solve_chain(&c);
        let err = |n: usize| (asym_factor(n, &roots, &c, tau_explicit(n, &roots, &c).unwrap()).unwrap() - 1.0).norm();
        worst_ratio = worst_ratio.max(err(60) / err(20));
    }
    verdict(worst_ratio <= 0.1, format!("max |f(60)-1|/|f(20)-1| = {worst_ratio:.2e} over 5 points"))
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 6] = [
        &["terms", "--n", "40"],
        &["verify", "--n", "40"],
        &["roots", "--n", "200"],
        &["attractor"],
        &["report", "--n-list", "50,100"],
        &["plot", "--n", "200"],
    ];
    for (k, args) in runs.iter().enumerate() {
        let mut bytes = Vec::new();
        for pass in 0..2 {
            let path = dir.path().join(format!("out{k}_{pass}"));
            let st = Command::new(BIN).args(*args).arg("-o").arg(&path).status().unwrap();
            if !st.success() {
                return verdict(false, format!("{args:?} exited with {st}"));
            }
            bytes.push(std::fs::read(&path).unwrap());
        }
        if bytes[0] != bytes[1] {
            return verdict(false, format!("{args:?} differs between runs"));
        }
    }
    verdict(true, "6 subcommands, byte-identical across two runs")
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 10] = [
        ("golden term table", golden_terms),
        ("triple-oracle identity", triple_oracle),
        ("fibonacci recovery", fibonacci),
        ("contour oracle", contour),
        ("conformal chain", conformal_chain),
        ("residue formula", residue_formula),
        ("equal-modulus loci", lemma4_loci),
        ("attractor convergence", attractor_convergence),
        ("dominant-root asymptotics", asymptotics),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let v = f();
        if !v.pass {
            failed += 1;
        }
        println!("[{}] criterion {:>2} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, k + 1, v.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
