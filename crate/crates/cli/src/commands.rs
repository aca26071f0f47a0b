//! One function per subcommand. Each returns the JSON document, a human
//! summary and the exit code; `main` does the printing.

use std::path::Path;

use kprabhakar::green::GreenFunction;
use kprabhakar::inequality::default_rule;
use kprabhakar::kspecial::{ml_k_with_budget, SeriesIndex};
use kprabhakar::{
    build_operator, cabrera_rhs, classical_bounds, critical_lambda, hw_check_with, hw_lhs,
    kernel_eval, kernel_jet, ml_k, prabhakar_derivative, prabhakar_integral, BVPConfig,
    ConfigWarning, MLParams, PotentialSpec, QuadratureRule, Scheme, Verdict,
};

use crate::args::{
    CriticalArgs, DerivativeArgs, FArgs, GreenArgs, HwArgs, IntegralArgs, KernelArgs, MlArgs,
    ParamArgs, QArgs, RuleArgs, SchemeArg,
};
use crate::config::ConfigFile;
use crate::error::{exit, CliError};
use crate::io;
use crate::json::{Json, Object};

/// What a command produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: Json,
    pub summary: String,
    pub code: u8,
}

impl Outcome {
    fn ok(json: Json, summary: String) -> Self {
        Outcome { json, summary, code: exit::OK }
    }
}

/// Relative tolerance of the `green` property battery.
pub const GREEN_REL_TOL: f64 = 1e-12;

fn params(p: &ParamArgs) -> Result<MLParams, CliError> {
    Ok(MLParams::new(p.k, p.rho, p.beta, p.gamma, p.omega)?)
}

fn rule(r: &RuleArgs) -> QuadratureRule {
    let base = QuadratureRule::default();
    QuadratureRule {
        scheme: match r.scheme {
            SchemeArg::Jacobi => Scheme::JacobiEndpoint,
            SchemeArg::Graded => Scheme::GradedComposite,
        },
        tol: r.tol.unwrap_or(base.tol),
        ..base
    }
}

/// Parses `"c0,c1,..."`.
pub fn parse_poly(text: &str) -> Result<Vec<f64>, CliError> {
    let coeffs = text
        .split(',')
        .map(|c| c.trim().parse::<f64>().map_err(|e| CliError::Usage(format!("bad coefficient {c:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(CliError::Usage("polynomial coefficients must be finite".into()));
    }
    Ok(coeffs)
}

fn function_source(c: Option<f64>, poly: Option<&str>, csv: Option<&Path>) -> Result<PotentialSpec, CliError> {
    match (c, poly, csv) {
        (Some(c), None, None) => Ok(PotentialSpec::Constant(c)),
        (None, Some(p), None) => Ok(PotentialSpec::Polynomial(parse_poly(p)?)),
        (None, None, Some(path)) => Ok(PotentialSpec::Samples(io::read_grid_function(path)?)),
        _ => Err(CliError::Usage("exactly one function source is required".into())),
    }
}

fn f_spec(f: &FArgs) -> Result<PotentialSpec, CliError> {
    function_source(f.f_const, f.f_poly.as_deref(), f.f_csv.as_deref())
}

fn q_spec(q: &QArgs) -> Result<PotentialSpec, CliError> {
    function_source(q.q_const, q.q_poly.as_deref(), q.q_csv.as_deref())
}

fn load_config(path: &Path) -> Result<BVPConfig, CliError> {
    ConfigFile::load(path)?.to_bvp()
}

fn params_json(p: &MLParams) -> Json {
    Object::new()
        .num("k", p.k)
        .num("rho", p.rho)
        .num("beta", p.beta)
        .num("gamma", p.gamma)
        .num("omega", p.omega)
        .build()
}

fn warning_json(w: &ConfigWarning) -> Json {
    match *w {
        ConfigWarning::BetaOutsideWindow { beta } => {
            Object::new().str("kind", "beta_outside_window").num("beta", beta).build()
        }
        ConfigWarning::IntegerOrder { order } => {
            Object::new().str("kind", "integer_order").num("order", order).build()
        }
    }
}

fn warning_text(w: &ConfigWarning) -> String {
    match *w {
        ConfigWarning::BetaOutsideWindow { beta } => format!("warning: beta = {beta} lies outside (2, 3]"),
        ConfigWarning::IntegerOrder { order } => {
            format!("warning: beta/k = {order} is an integer, the derivative uses m = {}", order + 1.0)
        }
    }
}

pub fn ml(args: &MlArgs) -> Result<Outcome, CliError> {
    let index = SeriesIndex::new(args.k, args.rho, args.beta, args.gamma);
    let r = ml_k_with_budget(args.z, &index, args.tol, args.max_terms)?;
    let json = Object::new()
        .num("value", r.value)
        .int("terms_used", r.terms_used)
        .num("truncation_estimate", r.truncation_estimate)
        .build();
    let summary = format!(
        "E = {:.15e} ({} terms, tail estimate {:.1e})",
        r.value, r.terms_used, r.truncation_estimate
    );
    Ok(Outcome::ok(json, summary))
}

pub fn kernel(args: &KernelArgs) -> Result<Outcome, CliError> {
    let p = params(&args.params)?;
    let (kind, order, value) = match args.jet {
        Some(j) => ("jet", j, kernel_jet(args.t, &p, j)?),
        None => ("kernel", args.shift, kernel_eval(args.t, &p, args.shift)?),
    };
    let json = Object::new()
        .str("kind", kind)
        .num("t", args.t)
        .int(if kind == "jet" { "j" } else { "shift" }, order as usize)
        .num("value", value)
        .build();
    Ok(Outcome::ok(json, format!("{kind}({}) = {value:.15e}", args.t)))
}

pub fn integral(args: &IntegralArgs) -> Result<Outcome, CliError> {
    let p = params(&args.params)?;
    let f = f_spec(&args.f)?;
    let value = prabhakar_integral(&f, args.x, args.a, &p, &rule(&args.rule))?;
    let json = Object::new()
        .num("x", args.x)
        .num("a", args.a)
        .field("params", params_json(&p))
        .num("value", value)
        .build();
    Ok(Outcome::ok(json, format!("P f({}) = {value:.15e}", args.x)))
}

pub fn derivative(args: &DerivativeArgs) -> Result<Outcome, CliError> {
    let p = params(&args.params)?;
    let f = f_spec(&args.f)?;
    let h = args.h.unwrap_or((args.b - args.a) * 1e-3);
    let value = prabhakar_derivative(&f, args.x, args.a, args.b, &p, h, &rule(&args.rule))?;
    let m = p.order().floor() as usize + 1;
    let json = Object::new()
        .num("x", args.x)
        .num("a", args.a)
        .num("b", args.b)
        .num("h", h)
        .int("m", m)
        .field("params", params_json(&p))
        .num("value", value)
        .build();
    Ok(Outcome::ok(json, format!("D f({}) = {value:.15e} (m = {m}, h = {h:e})", args.x)))
}

pub fn green(args: &GreenArgs) -> Result<Outcome, CliError> {
    let config = load_config(&args.config)?;
    let g = GreenFunction::new(&config)?;
    let grid = g.grid(args.grid)?;
    let report = grid.report(GREEN_REL_TOL);
    if let Some(out) = &args.out {
        io::write_green_grid(out, &grid)?;
    }
    let warnings = config.warnings();

    let mut obj = Object::new()
        .int("n", report.n)
        .num("denominator", g.denominator())
        .num("amplification", g.amplification())
        .num("min", report.min)
        .num("max", report.max)
        .num("scale", report.scale)
        .num("diagonal_gap", grid.diagonal_gap)
        .field(
            "checks",
            Object::new()
                .num("rel_tol", GREEN_REL_TOL)
                .int("nonnegativity_violations", report.nonnegativity_violations)
                .int("monotonicity_violations", report.monotonicity_violations)
                .int("bracketing_violations", report.bracketing_violations)
                .int("diagonal_violations", report.diagonal_violations)
                .bool("passed", report.passed())
                .build(),
        )
        .field("warnings", Json::array(warnings.iter().map(warning_json)));
    if let (Some(t), Some(s)) = (args.t, args.s) {
        let value = g.eval(t, s)?;
        obj = obj.field("point", Object::new().num("t", t).num("s", s).num("G", value).build());
    }

    let mut summary = format!(
        "G on {n1}x{n1} grid: min {:.6e}, max {:.6e}; property checks {}",
        report.min,
        report.max,
        if report.passed() { "passed" } else { "FAILED" },
        n1 = report.n + 1,
    );
    if !report.passed() {
        summary.push_str(&format!(
            " (nonnegativity {}, monotonicity {}, bracketing {}, diagonal {})",
            report.nonnegativity_violations,
            report.monotonicity_violations,
            report.bracketing_violations,
            report.diagonal_violations
        ));
    }
    for w in &warnings {
        summary.push('\n');
        summary.push_str(&warning_text(w));
    }
    if let Some(out) = &args.out {
        summary.push_str(&format!("\nwrote {}", out.display()));
    }
    Ok(Outcome::ok(obj.build(), summary))
}

pub fn hw(args: &HwArgs) -> Result<Outcome, CliError> {
    let config = load_config(&args.config)?;
    let q = q_spec(&args.q)?;
    let mut r = default_rule();
    if let Some(tol) = args.tol {
        r.tol = tol;
    }
    let report = hw_check_with(&q, &config, &r)?;
    let (verdict, code) = match report.verdict {
        Verdict::NecessaryConditionHolds => ("necessary_condition_holds", exit::OK),
        Verdict::NoNontrivialSolutionCertified => ("no_nontrivial_solution_certified", exit::CERTIFIED),
    };
    let json = Object::new()
        .num("lhs", report.lhs)
        .num("rhs", report.rhs)
        .num("margin", report.margin)
        .str("verdict", verdict)
        .build();
    let summary = format!(
        "lhs {:.10e}, rhs {:.10e}, margin {:.3e}: {}",
        report.lhs,
        report.rhs,
        report.margin,
        verdict.replace('_', " ")
    );
    Ok(Outcome { json, summary, code })
}

pub fn critical(args: &CriticalArgs) -> Result<Outcome, CliError> {
    let config = load_config(&args.config)?;
    let c = critical_lambda(&config, args.n)?;
    if let Some(path) = &args.matrix_out {
        let op = build_operator(&config, &PotentialSpec::Constant(1.0), args.n)?;
        io::write_matrix(path, &op.matrix)?;
    }
    let json = Object::new()
        .num("lambda_star", c.lambda_star)
        .num("mu_max", c.mu_max)
        .num("residual", c.residual)
        .int("n", c.n)
        .int("iterations", c.iterations)
        .build();
    let summary = format!(
        "lambda* = {:.10e} (mu_max {:.10e}, residual {:.1e}, n = {})",
        c.lambda_star, c.mu_max, c.residual, c.n
    );
    Ok(Outcome::ok(json, summary))
}

// Independent reference values for the reduction suite.
const GAMMA_1_5: f64 = 0.886_226_925_452_758;
const GAMMA_2_5: f64 = 1.329_340_388_179_137;
const GAMMA_3_5: f64 = 3.323_350_970_447_843;
const SQRT_PI: f64 = 1.772_453_850_905_516;

struct Check {
    name: &'static str,
    got: f64,
    expected: f64,
    tol: f64,
}

impl Check {
    fn error(&self) -> f64 {
        let e = (self.got - self.expected).abs();
        if self.expected == 0.0 { e } else { e / self.expected.abs() }
    }

    fn passed(&self) -> bool {
        self.error() <= self.tol
    }
}

fn reduction_checks() -> Result<Vec<Check>, CliError> {
    let beta = 2.5;
    let p = MLParams::new(1.0, 1.0, beta, 0.7, 0.0)?;
    let config = |eta: f64| BVPConfig { a: 0.0, b: 1.0, xi: 0.5, eta, params: p };
    let rule = QuadratureRule::default();
    let mut out = Vec::new();
    let mut push = |name, got, expected, tol| out.push(Check { name, got, expected, tol });

    let exp = ml_k(1.0, &SeriesIndex::new(1.0, 1.0, 1.0, 1.0), 1e-15)?.value;
    push("ml_exponential", exp, std::f64::consts::E, 1e-13);
    let at0 = ml_k(0.0, &SeriesIndex::new(1.0, 1.0, beta, 0.7), 1e-15)?.value;
    push("ml_at_zero", at0, 1.0 / GAMMA_2_5, 1e-13);

    // ε(t) = t^{β-1}/Γ(β) and its shifted and differentiated forms.
    let t: f64 = 0.64;
    push("kernel", kernel_eval(t, &p, 0)?, t.powf(1.5) / GAMMA_2_5, 1e-13);
    push("kernel_shift", kernel_eval(t, &p, 1)?, t.sqrt() / GAMMA_1_5, 1e-13);
    push("kernel_jet", kernel_jet(1.0, &p, 1)?, 1.0 / GAMMA_1_5, 1e-13);

    // Riemann-Liouville integral and derivative of power functions.
    let one = PotentialSpec::Constant(1.0);
    push("integral_of_one", prabhakar_integral(&one, 1.0, 0.0, &p, &rule)?, 1.0 / GAMMA_3_5, 1e-9);
    let sq = PotentialSpec::Polynomial(vec![0.0, 0.0, 1.0]);
    let x: f64 = 0.6;
    let d = prabhakar_derivative(&sq, x, 0.0, 1.0, &p, 1e-3, &rule)?;
    push("derivative_of_square", d, 2.0 / SQRT_PI / x.sqrt(), 1e-4);

    // η = 0: G(t,s) = (t^{β-1}(1-s)^{β-2} - [s≤t](t-s)^{β-1}) / Γ(β).
    let g = GreenFunction::new(&config(0.0))?;
    let s: f64 = 0.3;
    let g_b = ((1.0 - s).sqrt() - (1.0 - s).powf(1.5)) / GAMMA_2_5;
    push("green_at_b", g.eval(1.0, s)?, g_b, 1e-12);
    let tt: f64 = 0.7;
    let g_mid = (tt.powf(1.5) * (1.0 - s).sqrt() - (tt - s).powf(1.5)) / GAMMA_2_5;
    push("green_interior", g.eval(tt, s)?, g_mid, 1e-12);

    // Hartman-Wintner quantities against the Beta integral and Cabrera's bound.
    let lhs = hw_lhs(&one, &config(0.3), &default_rule())?;
    push("hw_lhs_beta_integral", lhs, 4.0 / 15.0 / GAMMA_2_5, 1e-10);
    let report = hw_check_with(&one, &config(0.3), &default_rule())?;
    let den = 1.5 - 0.3 * 0.5_f64.powf(1.5);
    let cabrera = GAMMA_2_5 / (1.0 + 0.3 / den);
    push("hw_rhs_cabrera", report.rhs * GAMMA_2_5, cabrera, 1e-12);
    push("cabrera_rhs", cabrera_rhs(beta, 0.0, 1.0, 0.5, 0.3)?, cabrera, 1e-12);

    let cb = classical_bounds(0.0, 1.0, &PotentialSpec::Constant(2.0))?;
    push("hartman_wintner_integral", cb.hartman_wintner, 2.0 / 6.0, 1e-12);
    push("lyapunov_integral", cb.lyapunov, 2.0, 1e-12);
    Ok(out)
}

pub fn reduce_check() -> Result<Outcome, CliError> {
    let checks = reduction_checks()?;
    let failed = checks.iter().filter(|c| !c.passed()).count();
    let rows = checks.iter().map(|c| {
        Object::new()
            .str("name", c.name)
            .num("value", c.got)
            .num("expected", c.expected)
            .num("error", c.error())
            .num("tol", c.tol)
            .bool("passed", c.passed())
            .build()
    });
    let json = Object::new()
        .int("total", checks.len())
        .int("failed", failed)
        .field("checks", Json::array(rows))
        .build();
    let mut summary = String::new();
    for c in &checks {
        summary.push_str(&format!(
            "{:<26} {}  error {:.1e} (tol {:.0e})\n",
            c.name,
            if c.passed() { "PASS" } else { "FAIL" },
            c.error(),
            c.tol
        ));
    }
    summary.push_str(&format!("{}/{} checks passed", checks.len() - failed, checks.len()));
    let code = if failed == 0 { exit::OK } else { exit::REDUCE_CHECK };
    Ok(Outcome { json, summary, code })
}
