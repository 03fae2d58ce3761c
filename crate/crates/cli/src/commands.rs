//! One function per subcommand, each producing the full output text.

use std::fmt::Write;

use pascal_rays::Complex64;
use pascal_rays::attractor::{convergence_report, trace_attractor, AttractorCurve};
use pascal_rays::contour::{contour_tau, contour_term, widest_radius, ContourSpec};
use pascal_rays::cubic::{family_cubic, solve_chain, tau_explicit, Cubic};
use pascal_rays::rootfinder::{aberth_roots, FamilyMember};
use pascal_rays::sequence::{
    build_recurrence, periodic_factor, tau_exact, term_by_binomial_sum, terms_by_recurrence, terms_by_series,
};
use pascal_rays::{Rational, BivariatePolynomial};
use serde::Serialize;

use crate::config::{Command, Format, RunConfig};
use crate::{svg, CliError};

type C = Complex64;

pub struct Outcome {
    pub text: String,
    /// False when a check failed.
    pub ok: bool,
}

impl Outcome {
    fn done(text: String) -> Self {
        Self { text, ok: true }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        Command::Terms => terms(cfg),
        Command::Verify => verify(cfg),
        Command::Solve => solve(cfg),
        Command::Roots => roots(cfg),
        Command::Attractor => attractor(cfg),
        Command::Report => report(cfg),
        Command::Plot => plot(cfg),
    }
}

fn num(v: f64) -> String {
    format!("{v:?}")
}

fn json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Usage(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn terms(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let spec = build_recurrence(cfg.r, cfg.q, cfg.p)?;
    let mut s = String::new();
    for (k, t) in terms_by_recurrence(&spec, cfg.n).iter().enumerate() {
        writeln!(s, "T_{k} = {t}").unwrap();
    }
    Ok(Outcome::done(s))
}

#[derive(Serialize)]
pub struct CheckRow {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

fn row(check: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckRow {
    CheckRow { check: check.into(), passed, detail: detail.into() }
}

fn triple_check(r: i64, q: i64, p: i64, n: usize) -> Result<CheckRow, CliError> {
    let name = format!("generators agree ({r},{q},{p}) n<={n}");
    let rec = terms_by_recurrence(&build_recurrence(r, q, p)?, n);
    let ser = terms_by_series(r, q, p, n.saturating_sub(1))?;
    for k in 1..=n {
        let direct = term_by_binomial_sum(r, q, p, k as i64 - 1)?;
        if rec[k] != direct || ser[k - 1] != direct {
            return Ok(row(name, false, format!("first mismatch at T_{k}")));
        }
    }
    Ok(row(name, true, "exact"))
}

fn coefficient_sum(t: &BivariatePolynomial) -> Rational {
    t.terms().fold(Rational::from_integer(0.into()), |a, (_, c)| a + c)
}

fn rel_err(got: C, want: C) -> f64 {
    if want.norm() > 0.0 {
        (got - want).norm() / want.norm()
    } else {
        got.norm()
    }
}

fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let n = cfg.n.max(2);
    let mut rows = vec![triple_check(cfg.r, cfg.q, cfg.p, n)?];
    for (r, q, p) in [(1, 1, 0), (3, 1, 0), (2, 1, 0), (3, 2, 1)] {
        if (r, q, p) != (cfg.r, cfg.q, cfg.p) {
            rows.push(triple_check(r, q, p, n.min(50))?);
        }
    }

    let fib_n = n.min(50);
    let fib_terms = terms_by_recurrence(&build_recurrence(1, 1, 0)?, fib_n + 1);
    let (mut a, mut b) = (Rational::from_integer(0.into()), Rational::from_integer(1.into()));
    let mut fib_ok = true;
    for k in 0..=fib_n {
        // a = F_(k+1) after this step
        let c = &a + &b;
        a = b;
        b = c;
        fib_ok &= coefficient_sum(&fib_terms[k + 1]) == a;
    }
    rows.push(row(format!("fibonacci from (1,1,0) n<={fib_n}"), fib_ok, "exact"));

    let main = terms_by_recurrence(&build_recurrence(2, 1, 1)?, n);
    let mut factor_ok = true;
    for (i, t) in main.iter().enumerate().skip(2) {
        factor_ok &= periodic_factor(t, i).map(|f| &f.reconstruct() == t).unwrap_or(false);
    }
    rows.push(row(format!("periodic factorization n<={n}"), factor_ok, "exact"));

    let cn = n.min(30);
    let mut worst = 0.0f64;
    for (x, y) in [(C::new(1.0, 0.0), C::new(1.0, 0.0)), (C::new(0.4, 0.3), C::new(-0.9, 1.1)), (C::new(-1.7, 0.2), C::new(0.5, -2.0))] {
        let spec = widest_radius(x, y)?;
        for (k, t) in main.iter().enumerate().take(cn + 1) {
            worst = worst.max(rel_err(contour_term(x, y, k, &spec)?, t.eval(x, y)));
        }
    }
    rows.push(row(format!("contour terms n<={cn}"), worst <= 1e-8, format!("max rel err {worst:.3e}")));

    let spec = ContourSpec::new(0.5);
    let mut worst = 0.0f64;
    for k in 2..=10 {
        let want = pascal_rays::exact::rational_to_f64(&tau_exact(k)?.value);
        worst = worst.max(rel_err(contour_tau(k, &spec)?, C::new(want, 0.0)));
    }
    rows.push(row("contour tau n=2..10", worst <= 1e-8, format!("max rel err {worst:.3e}")));

    let rn = n.min(60);
    let p = Cubic::new(C::new(-1.0, 0.0), C::new(2.0, 0.0), C::new(-1.0, 0.0));
    let (rts, _) = solve_chain(&p);
    let mut worst = 0.0f64;
    for k in 2..=rn {
        let want = pascal_rays::exact::rational_to_f64(&tau_exact(k)?.value);
        worst = worst.max(rel_err(tau_explicit(k, &rts, &p)?, C::new(want, 0.0)));
    }
    rows.push(row(format!("residue sum tau n=2..{rn}"), worst <= 1e-9, format!("max rel err {worst:.3e}")));

    let ok = rows.iter().all(|r| r.passed);
    let text = match cfg.format {
        Format::Json => json(&rows)?,
        _ => {
            let mut s = format!("{:<40} {:<6} {}\n", "check", "result", "detail");
            for r in &rows {
                writeln!(s, "{:<40} {:<6} {}", r.check, if r.passed { "pass" } else { "FAIL" }, r.detail).unwrap();
            }
            writeln!(s, "{}", if ok { "all checks passed" } else { "some checks failed" }).unwrap();
            s
        }
    };
    Ok(Outcome { text, ok })
}

#[derive(Serialize)]
struct SolveOutput {
    cubic: Cubic,
    roots: pascal_rays::cubic::SortedRoots,
    trace: pascal_rays::cubic::ConformalTrace,
}

fn solve(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let cubic = match cfg.cubic {
        Some([c2, c1, c0]) => Cubic::new(c2, c1, c0),
        None => family_cubic(cfg.x, cfg.y0)?,
    };
    let (roots, trace) = solve_chain(&cubic);
    Ok(Outcome::done(json(&SolveOutput { cubic, roots, trace })?))
}

fn family_zero_set(n: usize, cfg: &RunConfig) -> Result<pascal_rays::rootfinder::ZeroSet, CliError> {
    let fm = FamilyMember::new(n, cfg.y0)?;
    Ok(aberth_roots(&fm, cfg.tol, 5000))
}

fn roots(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let zs = family_zero_set(cfg.n, cfg)?;
    let text = match cfg.format {
        Format::Json => json(&zs)?,
        _ => {
            let mut s = String::from("n,re,im,residual\n");
            for _ in 0..zs.deflated_zeros {
                writeln!(s, "{},{},{},{}", cfg.n, num(0.0), num(0.0), num(0.0)).unwrap();
            }
            for (z, r) in zs.roots.iter().zip(&zs.residuals) {
                writeln!(s, "{},{},{},{}", cfg.n, num(z.re), num(z.im), num(*r)).unwrap();
            }
            s
        }
    };
    Ok(Outcome { text, ok: zs.converged })
}

fn trace(cfg: &RunConfig) -> Result<AttractorCurve, CliError> {
    Ok(trace_attractor(&cfg.window, cfg.grid, cfg.tol, cfg.y0)?)
}

fn attractor(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let curve = trace(cfg)?;
    let text = match cfg.format {
        Format::Json => json(&curve)?,
        _ => {
            let mut s = String::from("re,im,residual,branch\n");
            for p in &curve.samples {
                writeln!(s, "{},{},{},{}", num(p.x.re), num(p.x.im), num(p.residual), p.branch).unwrap();
            }
            s
        }
    };
    Ok(Outcome::done(text))
}

fn report(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let curve = trace(cfg)?;
    let rep = convergence_report(&cfg.n_list, &curve, cfg.y0)?;
    Ok(Outcome::done(json(&rep)?))
}

fn plot(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let curve = trace(cfg)?;
    let zeros = family_zero_set(cfg.n, cfg)?.all_roots();
    let title = format!("tie locus and zeros of T_{}(x, {})", cfg.n, cfg.y0);
    Ok(Outcome::done(svg::render(&curve, &zeros, &title)))
}
