//! Command-line front end. Every command produces one [`Report`]; text output
//! and JSON are both rendered from it.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use num_bigint::BigInt;
use num_traits::Signed;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::budget::{Budget, BUDGET_ENV};
use crate::certify::{
    certify_lower, even_construction, involution_coefficients, odd_4m3_construction, solve_b7, Certificate,
};
use crate::dynamics::{
    count_2periodic, geometric_grid, staircase, ConcreteMap, HalfReturnProbe, ScanOptions, StaircaseOptions,
    Window,
};
use crate::error::{Error, Result};
use crate::ideals::{
    check_lrad, check_upper_hypotheses, groebner_with, io::read_polys, power_member_with, GbOptions, GroebnerBasis,
    Weighting,
};
use crate::polyalg::rat::format_rat;
use crate::polyalg::text::parse_rational_expr;
use crate::polyalg::{parse_point, parse_poly, MultiPoly, Rat, Ring, TruncSeries};
use crate::realroots::{
    isolate_roots, p16, refine, resultant, resultant_in, sturm_count, IntervalReport, RootInterval, UniPoly,
};
use crate::stability::{generic_reduced, stability_constants_to, Reducer};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SCHEMA_ID: &str = "cyclicity-report/1";

/// Largest degree handled without `--extended` for table and certificate commands.
pub const CORE_MAX_DEGREE: usize = 7;
/// Largest reduced constant computed without `--extended`.
pub const CORE_MAX_REDUCED: usize = 15;
/// Ideal-chain checks (`upper`, `lrad`) from this degree on need `--extended`.
pub const CHAIN_EXTENDED_DEGREE: usize = 6;

pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const INCONCLUSIVE: i32 = 2;
    pub const VIOLATION: i32 = 3;
}

#[derive(Parser, Debug)]
#[command(name = "cyclicity", version, about = "Stability constants and 2-cyclicity of orientation-reversing polynomial maps")]
pub struct Cli {
    /// Write the JSON report to stdout instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Wall-clock budget in seconds (overrides the environment variable).
    #[arg(long, global = true, value_name = "SECS")]
    pub budget: Option<f64>,
    /// Allow computations that can take hours.
    #[arg(long, global = true)]
    pub extended: bool,
    /// Re-run the command stored in a JSON report and compare results.
    #[arg(long, value_name = "REPORT", conflicts_with = "output")]
    pub verify: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Stability constants W_j and reduced constants V_k.
    Constants {
        #[arg(long)]
        d: usize,
        /// Largest reduced constant (default 2d-1).
        #[arg(long)]
        kmax: Option<usize>,
        /// Highest W_j to print (default d^2 up to degree 7, else kmax).
        #[arg(long)]
        order: Option<usize>,
        /// Express each W_j through the reduced constants.
        #[arg(long)]
        relations: bool,
    },
    /// Normal form of a polynomial modulo an ideal.
    Reduce {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        poly: String,
    },
    /// Reduced Gröbner basis (grevlex).
    Groebner {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Stop after all pairs of this weight (weighted runs only).
        #[arg(long)]
        weight_bound: Option<u64>,
    },
    /// Ideal membership, or radical membership with --power.
    Member {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        poly: String,
        /// Search p^n for n up to this bound.
        #[arg(long)]
        power: Option<u32>,
    },
    /// Upper-bound hypotheses on the chain of reduced-constant ideals.
    Upper {
        #[arg(long)]
        d: usize,
    },
    /// Radical-membership profile of the W_j.
    Lrad {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 4)]
        nmax: u32,
    },
    /// Gradient certificate at a weak point.
    Certify {
        #[arg(long)]
        d: usize,
        /// Coordinates a_2..a_d, e.g. "1,-1,(9+sqrt(55))/2,-(23+3*sqrt(55))/2".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Even degree d = 2n construction at (0, .., 0, 1).
    EvenConstruct {
        #[arg(long)]
        n: usize,
    },
    /// Degree 4m+3 construction -x + x^(2m+2) - (m+1) x^(4m+3).
    OddConstruct {
        #[arg(long)]
        m: usize,
    },
    /// Coefficients of g(-g^{-1}) and the linear solution for b7.
    Involution {
        #[arg(long, default_value_t = 5)]
        d: usize,
        /// Solve W_11 = 0 for b7 on the degree-9 involution family.
        #[arg(long)]
        b7: bool,
        /// Fix parameters before solving, e.g. "b8=0,b9=0".
        #[arg(long, allow_hyphen_values = true)]
        fix: Option<String>,
    },
    /// Count and isolate the distinct real roots of a univariate polynomial.
    Sturm {
        /// Coefficient file (ascending, '#' comments) or symbolic polynomial in x.
        #[arg(long, conflicts_with_all = ["poly", "builtin"])]
        file: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        /// Bundled polynomial ("p16").
        #[arg(long)]
        builtin: Option<String>,
        /// Restrict to (lo, hi].
        #[arg(long, allow_hyphen_values = true)]
        interval: Option<String>,
    },
    /// Resultant of two polynomials.
    Resultant {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Ring variables, comma separated (default "x").
        #[arg(long, default_value = "x")]
        vars: String,
        /// Variable eliminated (default: the first).
        #[arg(long)]
        var: Option<String>,
    },
    /// 2-periodic orbits of a concrete map.
    Orbits {
        #[command(flatten)]
        map: MapArgs,
        /// Window "lo,hi"; omit for all real orbits.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write (x, h(x)) samples for plotting.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Realize the orbits of a certified weak point by successive perturbations.
    Staircase {
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
    /// Half-return map of the polar model and its Taylor fit.
    HalfReturn {
        #[arg(long)]
        ell: u32,
        #[arg(long, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        /// Sample points, comma separated (default: 60 points in [0.03, 0.2]).
        #[arg(long)]
        x0: Option<String>,
        #[arg(long, default_value_t = 9)]
        terms: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct IdealArgs {
    /// Generators file ('# ring: x,y' header, one polynomial per line).
    #[arg(long, conflicts_with = "d")]
    pub basis: Option<PathBuf>,
    /// Use V_3..V_kmax of the degree-d family as generators.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub kmax: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct MapArgs {
    /// a_2,..,a_d of f(x) = -x + sum a_j x^j.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: String,
    /// Linear coefficient (default -1).
    #[arg(long, allow_hyphen_values = true)]
    pub linear: Option<String>,
}

/// Status of a finished command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Inconclusive,
    Violation,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => exit::OK,
            Status::Inconclusive => exit::INCONCLUSIVE,
            Status::Violation => exit::VIOLATION,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Inconclusive => "inconclusive",
            Status::Violation => "violation",
        }
    }
}

/// One command's result, before wrapping.
pub struct Outcome {
    pub status: Status,
    pub result: Value,
    pub text: String,
}

impl Outcome {
    fn ok(result: Value, text: String) -> Self {
        Outcome { status: Status::Ok, result, text }
    }

    fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }
}

/// Build the JSON report around an outcome.
pub fn report(args: &[String], command: &str, budget: &Budget, outcome: &Outcome) -> Value {
    json!({
        "schema": SCHEMA_ID,
        "command": command,
        "version": VERSION,
        "inputs": { "args": args },
        "budget_secs": budget.limit().map(|d| d.as_secs_f64()),
        "status": outcome.status.name(),
        "exit_code": outcome.status.exit_code(),
        "elapsed_secs": budget.elapsed().as_secs_f64(),
        "result": outcome.result,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Constants { .. } => "constants",
        Command::Reduce { .. } => "reduce",
        Command::Groebner { .. } => "groebner",
        Command::Member { .. } => "member",
        Command::Upper { .. } => "upper",
        Command::Lrad { .. } => "lrad",
        Command::Certify { .. } => "certify",
        Command::EvenConstruct { .. } => "even-construct",
        Command::OddConstruct { .. } => "odd-construct",
        Command::Involution { .. } => "involution",
        Command::Sturm { .. } => "sturm",
        Command::Resultant { .. } => "resultant",
        Command::Orbits { .. } => "orbits",
        Command::Staircase { .. } => "staircase",
        Command::HalfReturn { .. } => "half-return",
    }
}

fn budget_for(cli: &Cli) -> Budget {
    match cli.budget {
        Some(s) if s > 0.0 => Budget::new(Duration::from_secs_f64(s)),
        _ => Budget::from_env(),
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn need_extended(extended: bool, what: &str) -> Result<()> {
    if extended {
        Ok(())
    } else {
        Err(usage(format!("{what} is an extended computation; rerun with --extended")))
    }
}

fn parse_list(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(|t| parse_rational_expr(t.trim())).collect()
}

fn parse_pair(s: &str) -> Result<(f64, f64)> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number {t:?}"))))
        .collect::<Result<_>>()?;
    match v[..] {
        [a, b] => Ok((a, b)),
        _ => Err(Error::Parse(format!("expected \"lo,hi\", got {s:?}"))),
    }
}

fn poly_json(p: &MultiPoly) -> Value {
    Value::String(p.to_string())
}

/// Generators and ring of an ideal argument, plus the family weights if any.
fn ideal_generators(args: &IdealArgs, budget: &Budget) -> Result<(Arc<Ring>, Vec<MultiPoly>, Value)> {
    match (&args.basis, args.d) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)?;
            let (ring, gens) = read_polys(&text)?;
            Ok((ring, gens, json!({ "basis_file": path.display().to_string() })))
        }
        (None, Some(d)) => {
            if d < 2 {
                return Err(usage("degree must be at least 2"));
            }
            let kmax = args.kmax.unwrap_or(2 * d - 1);
            let vs = generic_reduced(d, kmax, budget)?;
            let ring = Ring::a_family(d);
            let gens: Vec<MultiPoly> = vs.values().cloned().collect();
            Ok((ring, gens, json!({ "family_degree": d, "generators": format!("V3..V{kmax}") })))
        }
        _ => Err(usage("give either --basis FILE or --d D")),
    }
}

fn basis_for(ring: &Arc<Ring>, gens: &[MultiPoly], bound: Option<u64>, budget: &Budget) -> Result<GroebnerBasis> {
    let weighting = if bound.is_some() && ring.family_weights().is_some() {
        Weighting::Weights(ring.family_weights().expect("family"))
    } else {
        Weighting::Auto
    };
    let opts = GbOptions { weighting, weight_bound: bound, budget: budget.clone() };
    if gens.is_empty() {
        return Ok(crate::ideals::empty_basis(ring));
    }
    groebner_with(gens, &opts)
}

/// Weight bound needed to reduce `p` in a family ring (`None` elsewhere).
fn family_bound(p: &MultiPoly, power: u32) -> Option<u64> {
    let w = p.ring().family_weights()?;
    let top = p.terms().iter().map(|(m, _)| m.weighted_degree(&w)).max().unwrap_or(0);
    Some(top * power as u64)
}

fn certificate_outcome(cert: &Certificate) -> Outcome {
    let mut text = format!("{}\n", cert.verdict);
    text.push_str(&format!(
        "order {}, witness {} = {}\n",
        cert.order,
        if cert.constants.first().is_some_and(|c| c.starts_with('W')) || cert.constants.is_empty() {
            format!("x^{} coefficient", cert.witness_index)
        } else {
            format!("V{}", cert.witness_index)
        },
        cert.witness_value
    ));
    if !cert.matrix.is_empty() {
        text.push_str(&format!("columns: {}\n", cert.constants.join(" ")));
        for (v, row) in cert.variables.iter().zip(&cert.matrix) {
            let cells: Vec<String> = row.iter().map(|q| q.to_string()).collect();
            text.push_str(&format!("  d/d{v}: [{}]\n", cells.join(", ")));
        }
        text.push_str(&format!("determinant {}\n", cert.determinant));
    }
    for (name, ok) in &cert.checks {
        text.push_str(&format!("  [{}] {name}\n", if *ok { "ok" } else { "FAILED" }));
    }
    let status = if !cert.checks.iter().all(|(_, ok)| *ok) {
        Status::Violation
    } else if cert.determinant.is_zero() {
        Status::Inconclusive
    } else {
        Status::Ok
    };
    Outcome::ok(cert.to_json(), text).with_status(status)
}

/// Isolating interval with the approximation taken from a refined bracket.
fn located(p: &UniPoly, iv: &RootInterval) -> IntervalReport {
    let mut r = iv.report();
    let width = Rat::new(1.into(), BigInt::from(1u8) << 60) * (iv.hi.abs().max(iv.lo.abs()) + Rat::new(1.into(), BigInt::from(1u8) << 200));
    r.approx = refine(p, iv, &width).to_f64();
    r
}

fn sturm_input(file: &Option<PathBuf>, poly: &Option<String>, builtin: &Option<String>) -> Result<(UniPoly, String)> {
    match (file, poly, builtin) {
        (Some(f), None, None) => Ok((UniPoly::parse(&std::fs::read_to_string(f)?)?, f.display().to_string())),
        (None, Some(p), None) => Ok((UniPoly::parse(p)?, p.clone())),
        (None, None, Some(b)) if b == "p16" => Ok((p16(), "p16".into())),
        (None, None, Some(b)) => Err(usage(format!("unknown builtin polynomial {b:?}"))),
        _ => Err(usage("give exactly one of --file, --poly, --builtin")),
    }
}

/// Run one command.
pub fn run(command: &Command, extended: bool, budget: &Budget) -> Result<Outcome> {
    match command {
        Command::Constants { d, kmax, order, relations } => {
            let d = *d;
            if d < 2 {
                return Err(usage("degree must be at least 2"));
            }
            let kmax = kmax.unwrap_or(2 * d - 1).max(3);
            let order = order.unwrap_or(if d <= CORE_MAX_DEGREE { d * d } else { kmax }).max(kmax);
            if order > CORE_MAX_DEGREE * CORE_MAX_DEGREE || kmax > CORE_MAX_REDUCED {
                need_extended(extended, &format!("constants up to W{order} / V{kmax}"))?;
            }
            let table = stability_constants_to(d, order)?;
            let mut reducer = Reducer::new(&table);
            let mut partial = None;
            for k in 4..=kmax {
                if let Err(e) = reducer.extend_to(k, budget) {
                    if e.is_inconclusive() {
                        partial = Some(e.to_string());
                        break;
                    }
                    return Err(e);
                }
            }
            let t = reducer.table();
            let mut text = String::new();
            for (j, w) in t.ws() {
                text.push_str(&format!("W{j} = {w}\n"));
            }
            for (k, v) in t.vs() {
                text.push_str(&format!("V{k} = {v}\n"));
            }
            let bad_even: Vec<usize> =
                t.even_normal_forms().iter().filter(|(_, p)| !p.is_zero()).map(|(k, _)| *k).collect();
            let mut rel_json = Vec::new();
            if *relations && partial.is_none() {
                for j in 4..=kmax {
                    match t.relation(j)? {
                        Some(parts) => {
                            let mut rhs: Vec<String> = Vec::new();
                            if j % 2 == 1 {
                                rhs.push(format!("V{j}"));
                            }
                            for (k, q) in &parts {
                                if !q.is_zero() {
                                    rhs.push(format!("({q})*V{k}"));
                                }
                            }
                            let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join(" + ") };
                            text.push_str(&format!("W{j} = {rhs}\n"));
                            rel_json.push(json!({
                                "j": j,
                                "terms": parts.iter().map(|(k, q)| json!({"k": k, "coefficient": q.to_string()})).collect::<Vec<_>>(),
                            }));
                        }
                        None => {
                            text.push_str(&format!("W{j}: no quasi-homogeneous relation found\n"));
                            rel_json.push(json!({ "j": j, "terms": Value::Null }));
                        }
                    }
                }
            }
            if let Some(p) = &partial {
                text.push_str(&format!("partial table: {p}\n"));
            }
            let result = json!({
                "d": d,
                "kmax": kmax,
                "order": order,
                "w": t.ws().iter().map(|(j, p)| (format!("W{j}"), poly_json(p))).collect::<serde_json::Map<_, _>>(),
                "v": t.vs().iter().map(|(k, p)| (format!("V{k}"), poly_json(p))).collect::<serde_json::Map<_, _>>(),
                "even_normal_forms_vanish": bad_even.is_empty(),
                "relations": rel_json,
                "partial": partial,
            });
            let status = if !bad_even.is_empty() {
                Status::Violation
            } else if partial.is_some() {
                Status::Inconclusive
            } else {
                Status::Ok
            };
            Ok(Outcome::ok(result, text).with_status(status))
        }
        Command::Reduce { ideal, poly } => {
            let (ring, gens, source) = ideal_generators(ideal, budget)?;
            let p = parse_poly(&ring, poly)?;
            let gb = basis_for(&ring, &gens, family_bound(&p, 1), budget)?;
            let nf = gb.normal_form_with(&p, budget)?;
            let text = format!("{nf}\n");
            Ok(Outcome::ok(json!({ "ideal": source, "poly": p.to_string(), "normal_form": nf.to_string() }), text))
        }
        Command::Groebner { ideal, weight_bound } => {
            let (ring, gens, source) = ideal_generators(ideal, budget)?;
            let gb = basis_for(&ring, &gens, *weight_bound, budget)?;
            let text = crate::ideals::io::write_basis(&gb);
            Ok(Outcome::ok(
                json!({
                    "ideal": source,
                    "ring": ring.vars(),
                    "order": "grevlex",
                    "weight_bound": weight_bound,
                    "basis": gb.generators().iter().map(poly_json).collect::<Vec<_>>(),
                }),
                text,
            ))
        }
        Command::Member { ideal, poly, power } => {
            let (ring, gens, source) = ideal_generators(ideal, budget)?;
            let p = parse_poly(&ring, poly)?;
            let n = power.unwrap_or(1);
            if n == 0 {
                return Err(usage("--power must be at least 1"));
            }
            let gb = basis_for(&ring, &gens, family_bound(&p, n), budget)?;
            let found = power_member_with(&p, &gb, n, budget)?;
            let text = match found {
                Some(1) => "member\n".to_string(),
                Some(k) => format!("member with exponent {k}\n"),
                None if n == 1 => "not a member\n".to_string(),
                None => format!("no power up to {n} is a member\n"),
            };
            Ok(Outcome::ok(
                json!({ "ideal": source, "poly": p.to_string(), "max_power": n, "member": found.is_some(), "exponent": found }),
                text,
            ))
        }
        Command::Upper { d } => {
            if *d >= CHAIN_EXTENDED_DEGREE {
                need_extended(extended, &format!("upper for d = {d}"))?;
            }
            let r = check_upper_hypotheses(*d, budget)?;
            let text = match r.m {
                Some(m) => format!("m = {m}, cyclicity <= {}\n", m - 1),
                None => format!("hypotheses fail (chain broken at k = {:?}, outside {:?})\n", r.failed_at, r.outside),
            };
            let status = if r.m.is_some() { Status::Ok } else { Status::Inconclusive };
            Ok(Outcome::ok(serde_json::to_value(&r).expect("serializable"), text).with_status(status))
        }
        Command::Lrad { d, nmax } => {
            if *d >= CHAIN_EXTENDED_DEGREE {
                need_extended(extended, &format!("lrad for d = {d}"))?;
            }
            let r = check_lrad(*d, *nmax, budget)?;
            let mut text = match r.ell {
                Some(l) => format!("ell = {l}\n"),
                None => format!("no ell with exponents up to {nmax}\n"),
            };
            for (j, n) in &r.exponents {
                if *n > 1 {
                    text.push_str(&format!("  W{j} needs exponent {n}\n"));
                }
            }
            let status = if r.ell.is_some() { Status::Ok } else { Status::Inconclusive };
            Ok(Outcome::ok(serde_json::to_value(&r).expect("serializable"), text).with_status(status))
        }
        Command::Certify { d, point } => {
            if *d > CORE_MAX_DEGREE {
                need_extended(extended, &format!("certificates for d = {d}"))?;
            }
            let pt = parse_point(point)?;
            Ok(certificate_outcome(&certify_lower(&pt, *d, budget)?))
        }
        Command::EvenConstruct { n } => {
            if 2 * n > CORE_MAX_DEGREE {
                need_extended(extended, &format!("even construction for n = {n}"))?;
            }
            Ok(certificate_outcome(&even_construction(*n)?))
        }
        Command::OddConstruct { m } => Ok(certificate_outcome(&odd_4m3_construction(*m)?)),
        Command::Involution { d, b7, fix } => {
            let cs = involution_coefficients(*d)?;
            let mut text = String::new();
            for (j, c) in cs.iter().enumerate() {
                text.push_str(&format!("B{} = {c}\n", j + 2));
            }
            let ring = Ring::family("b", *d);
            let g = TruncSeries::from_terms(
                &ring,
                *d,
                std::iter::once((1, MultiPoly::one(&ring))).chain((2..=*d).map(|j| (j, MultiPoly::var(&ring, j - 2)))),
            )?;
            let inv = g.reverse(*d)?;
            let inv_terms: Vec<String> = (1..=*d).map(|j| inv.coeff(j).to_string()).collect();
            for (j, c) in inv_terms.iter().enumerate() {
                text.push_str(&format!("ginv[x^{}] = {c}\n", j + 1));
            }
            let mut result = json!({
                "d": d,
                "coefficients": cs.iter().enumerate().map(|(j, c)| (format!("B{}", j + 2), poly_json(c))).collect::<serde_json::Map<_, _>>(),
                "inverse": inv_terms,
            });
            if *b7 {
                let fixed: Vec<(String, Rat)> = match fix {
                    None => Vec::new(),
                    Some(s) => s
                        .split(',')
                        .filter(|t| !t.trim().is_empty())
                        .map(|t| {
                            let (k, v) = t.split_once('=').ok_or_else(|| usage(format!("bad assignment {t:?}")))?;
                            Ok((k.trim().to_string(), parse_rational_expr(v.trim())?))
                        })
                        .collect::<Result<_>>()?,
                };
                let refs: Vec<(&str, Rat)> = fixed.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
                let (w11, sol) = solve_b7(&refs)?;
                let residual_zero = sol.residual(&w11)?.is_zero();
                text.push_str(&format!("b7 = ({}) / ({})\n", sol.numerator, sol.denominator));
                result["b7"] = json!({
                    "numerator": sol.numerator.to_string(),
                    "denominator": sol.denominator.to_string(),
                    "fixed": fixed.iter().map(|(k, v)| (k.clone(), Value::String(format_rat(v)))).collect::<serde_json::Map<_, _>>(),
                    "substitution_checked": residual_zero,
                });
                if !residual_zero {
                    return Ok(Outcome::ok(result, text).with_status(Status::Violation));
                }
            }
            Ok(Outcome::ok(result, text))
        }
        Command::Sturm { file, poly, builtin, interval } => {
            let (p, source) = sturm_input(file, poly, builtin)?;
            if p.is_zero() {
                return Err(usage("zero polynomial"));
            }
            let (count, roots) = match interval {
                Some(s) => {
                    let (lo, hi) = s
                        .split_once(',')
                        .ok_or_else(|| Error::Parse(format!("expected \"lo,hi\", got {s:?}")))?;
                    let (lo, hi) = (parse_rational_expr(lo.trim())?, parse_rational_expr(hi.trim())?);
                    let n = sturm_count(&p, Some((&lo, &hi)));
                    let roots: Vec<_> = isolate_roots(&p)
                        .into_iter()
                        .filter(|iv| iv.hi > lo && iv.lo < hi)
                        .map(|iv| located(&p, &iv))
                        .collect();
                    (n, roots)
                }
                None => (sturm_count(&p, None), isolate_roots(&p).iter().map(|iv| located(&p, iv)).collect()),
            };
            let mut text = format!("{count} distinct real roots\n");
            for r in &roots {
                text.push_str(&format!("  ({}, {}]  ~ {:.12e}\n", r.lo, r.hi, r.approx));
            }
            Ok(Outcome::ok(
                json!({ "source": source, "degree": p.degree(), "count": count, "roots": roots }),
                text,
            ))
        }
        Command::Resultant { p, q, vars, var } => {
            let names: Vec<&str> = vars.split(',').map(str::trim).filter(|v| !v.is_empty()).collect();
            let ring = Ring::new(names.clone())?;
            let idx = match var {
                Some(v) => ring.index_of(v).ok_or_else(|| usage(format!("unknown variable {v}")))?,
                None => 0,
            };
            let (pp, qq) = (parse_poly(&ring, p)?, parse_poly(&ring, q)?);
            let r = if ring.nvars() == 1 {
                let (up, uq) = (UniPoly::from_multipoly(&pp, 0)?, UniPoly::from_multipoly(&qq, 0)?);
                MultiPoly::constant(&ring, resultant(&up, &uq)?)
            } else {
                resultant_in(&pp, &qq, idx)?
            };
            Ok(Outcome::ok(
                json!({ "p": pp.to_string(), "q": qq.to_string(), "variable": ring.var_name(idx), "resultant": r.to_string() }),
                format!("{r}\n"),
            ))
        }
        Command::Orbits { map, window, grid, tol, csv } => {
            let a = parse_list(&map.coeffs)?;
            let m = match &map.linear {
                Some(l) => ConcreteMap::with_linear(parse_rational_expr(l)?, &a),
                None => ConcreteMap::reversing(&a),
            };
            let w = match window {
                Some(s) => {
                    let (lo, hi) = parse_pair(s)?;
                    Window::Interval(lo, hi)
                }
                None => Window::Global,
            };
            let opts = ScanOptions { grid: *grid, tol: *tol, ..Default::default() };
            let r = count_2periodic(&m, w, &opts)?;
            if let Some(path) = csv {
                write_csv(path, &m, r.window)?;
            }
            let mut text = if r.non_isolated {
                "f∘f = id: every point is periodic, no isolated orbits\n".to_string()
            } else {
                format!("{} two-periodic orbits, {} fixed points in {:?}\n", r.count(), r.fixed_points.len(), r.window)
            };
            for o in &r.orbits {
                text.push_str(&format!("  {{{:.15e}, {:.15e}}}  residual {:.1e}\n", o.x, o.y, o.residual));
            }
            let status = if r.complete() { Status::Ok } else { Status::Inconclusive };
            let mut result = serde_json::to_value(&r).expect("serializable");
            result["map"] = json!(m.poly().to_string());
            result["count"] = json!(r.count());
            Ok(Outcome::ok(result, text).with_status(status))
        }
        Command::Staircase { d, point, grid } => {
            if *d > CORE_MAX_DEGREE {
                need_extended(extended, &format!("staircase for d = {d}"))?;
            }
            let cert = certify_lower(&parse_point(point)?, *d, budget)?;
            let mut opts = StaircaseOptions::default();
            opts.scan.grid = *grid;
            let r = staircase(&cert, &opts, budget)?;
            let mut text = format!("base order {} ({}), witness {}\n", r.order, cert.verdict, r.witness);
            for s in &r.steps {
                text.push_str(&format!(
                    "  step {}: {} orbits at {:?}\n",
                    s.roots,
                    s.orbits.count(),
                    s.orbits.orbits.iter().map(|o| format!("{:.3e}", o.x)).collect::<Vec<_>>()
                ));
            }
            let status = if r.final_count() == r.order { Status::Ok } else { Status::Inconclusive };
            Ok(Outcome::ok(serde_json::to_value(&r).expect("serializable"), text).with_status(status))
        }
        Command::HalfReturn { ell, sigma, c, x0, terms } => {
            let probe = HalfReturnProbe::new(*ell, *sigma, *c)?;
            let xs: Vec<f64> = match x0 {
                Some(s) => s
                    .split(',')
                    .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad number {t:?}"))))
                    .collect::<Result<_>>()?,
                None => geometric_grid(0.03, 0.2, 60),
            };
            let mut rows = Vec::new();
            let mut text = String::new();
            for &x in &xs {
                let h = probe.half_return(x)?;
                let z = probe.deviation(x.abs(), std::f64::consts::PI)?;
                let zc = probe.deviation_closed_form(x.abs(), std::f64::consts::PI)?;
                text.push_str(&format!("  x = {x:.6e}  Π₊(x) = {h:.15e}\n"));
                rows.push(json!({ "x": x, "half_return": h, "deviation": z, "deviation_closed_form": zc }));
            }
            let gap = probe.crosscheck(&xs.iter().map(|x| x.abs()).filter(|x| *x > 0.0).collect::<Vec<_>>())?;
            let fit = if xs.len() >= *terms { Some(probe.fit(&xs, *terms)?) } else { None };
            if let Some(f) = &fit {
                text.push_str(&format!(
                    "fit: -1 -> {:.12}, sigma -> {:.12}, c -> {:.12} (max error {:.1e})\n",
                    f.coefficients[0],
                    f.coefficients[1],
                    f.coefficients[2],
                    f.max_error()
                ));
            }
            text.push_str(&format!("closed-form cross-check: max relative gap {gap:.1e}\n"));
            let status = if gap <= 1e-10 { Status::Ok } else { Status::Violation };
            Ok(Outcome::ok(json!({ "probe": probe, "samples": rows, "crosscheck_gap": gap, "fit": fit }), text)
                .with_status(status))
        }
    }
}

fn write_csv(path: &PathBuf, m: &ConcreteMap, window: (f64, f64)) -> Result<()> {
    let h = m.two_step();
    let (k, g) = h.strip_x_power();
    let mut s = format!("x,h(x)  # h = (f(f(x)) - x) / x^{k}\n");
    let n = 2000;
    for i in 0..=n {
        let x = window.0 + (window.1 - window.0) * i as f64 / n as f64;
        s.push_str(&format!("{x:.17e},{:.17e}\n", g.eval_f64(x)));
    }
    std::fs::write(path, s)?;
    Ok(())
}

fn error_status(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::Parse(_) | Error::Io(_) | Error::RingMismatch(..) | Error::MixedRadicals(..) => {
            exit::USAGE
        }
        Error::BudgetExceeded { .. } | Error::Inconclusive(_) | Error::Numerical(_) => exit::INCONCLUSIVE,
        Error::Invariant(_) | Error::Truncation { .. } | Error::TruncatedBasis(_) => exit::VIOLATION,
    }
}

fn emit(cli: &Cli, report: &Value, text: &str) -> Result<()> {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(report).expect("json"));
    } else {
        print!("{text}");
    }
    if let Some(path) = &cli.output {
        std::fs::write(path, serde_json::to_string_pretty(report).expect("json") + "\n")?;
    }
    Ok(())
}

fn verify(path: &PathBuf, extended: bool) -> i32 {
    let stored: Value = match std::fs::read_to_string(path)
        .map_err(Error::from)
        .and_then(|s| serde_json::from_str(&s).map_err(|e| Error::Parse(e.to_string())))
    {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return exit::USAGE;
        }
    };
    let args: Vec<String> = match stored["inputs"]["args"].as_array() {
        Some(a) => a.iter().filter_map(|v| v.as_str().map(String::from)).collect(),
        None => {
            eprintln!("error: report has no inputs.args");
            return exit::USAGE;
        }
    };
    let cli = match Cli::try_parse_from(std::iter::once("cyclicity".to_string()).chain(args.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: stored arguments do not parse: {e}");
            return exit::USAGE;
        }
    };
    let Some(command) = &cli.command else {
        eprintln!("error: stored report has no command");
        return exit::USAGE;
    };
    let budget = budget_for(&cli);
    match run(command, extended || cli.extended, &budget) {
        Ok(outcome) => {
            let same_result = outcome.result == stored["result"];
            let same_status = stored["status"].as_str() == Some(outcome.status.name());
            if same_result && same_status {
                println!("verified: {} reproduces the stored result", command_name(command));
                exit::OK
            } else {
                println!("mismatch: {} result differs from the stored report", command_name(command));
                exit::VIOLATION
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_status(&e)
        }
    }
}

/// Entry point; returns the process exit code.
pub fn main_with_args(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => exit::OK,
                _ => exit::USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    if let Some(path) = &cli.verify {
        return verify(path, cli.extended);
    }
    let Some(command) = &cli.command else {
        eprintln!("error: a subcommand or --verify is required (see --help)");
        return exit::USAGE;
    };
    let budget = budget_for(&cli);
    // stored arguments exclude output-only flags so reports re-run identically
    let mut stored = Vec::new();
    let mut skip = false;
    for a in argv.iter().skip(1) {
        if skip {
            skip = false;
            continue;
        }
        if a == "--json" {
            continue;
        }
        if a == "--output" {
            skip = true;
            continue;
        }
        if a.starts_with("--output=") {
            continue;
        }
        stored.push(a.clone());
    }
    match run(command, cli.extended, &budget) {
        Ok(outcome) => {
            let rep = report(&stored, command_name(command), &budget, &outcome);
            if let Err(e) = emit(&cli, &rep, &outcome.text) {
                eprintln!("error: {e}");
                return exit::USAGE;
            }
            outcome.status.exit_code()
        }
        Err(e) => {
            let code = error_status(&e);
            eprintln!("error: {e}");
            if code != exit::USAGE {
                let outcome = Outcome {
                    status: if code == exit::INCONCLUSIVE { Status::Inconclusive } else { Status::Violation },
                    result: json!({ "error": e.to_string() }),
                    text: String::new(),
                };
                let rep = report(&stored, command_name(command), &budget, &outcome);
                if cli.json {
                    println!("{}", serde_json::to_string_pretty(&rep).expect("json"));
                }
                if let Some(path) = &cli.output {
                    let _ = std::fs::write(path, serde_json::to_string_pretty(&rep).expect("json") + "\n");
                }
            }
            code
        }
    }
}

/// Budget environment variable, re-exported for documentation.
pub const BUDGET_VARIABLE: &str = BUDGET_ENV;
