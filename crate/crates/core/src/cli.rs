//! Command-line front end. [`run`] is the whole program minus process
//! plumbing, so it can be driven from tests.
//!
//! Exit codes: 0 success (criterion and count agree), 1 usage or construction
//! error, 2 a criterion contradicted by an exhaustive count.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith;
use crate::bounds;
use crate::covering::{verify_covering, CoveringMap, CoveringReport};
use crate::criteria;
use crate::curves::{CurveError, CurveSpec};
use crate::field::{Field, DEFAULT_FIELD_BUDGET};
use crate::point_count::{self, MaximalityVerdict, DEFAULT_POINT_BUDGET};
use crate::semigroup::{self, NumericalSemigroup, SemigroupReport};

pub const BUDGET_ENV: &str = "MAXCURVE_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Hermitian,
    Hurwitz,
    Generalized,
    Fermat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Table {
    Residues,
    Bounds,
    Semigroup,
}

#[derive(Debug, Parser)]
#[command(
    name = "maxcurve",
    version,
    about = "Maximal plane curves over F_{q^2}: criteria, point counts, bounds"
)]
pub struct Cli {
    /// Cap on q^4 point evaluations (overrides MAXCURVE_BUDGET).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Output format [default: csv for bounds-table, json otherwise].
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CurveParams {
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub l: Option<u64>,
    #[arg(long)]
    pub m: Option<u64>,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Count points on one curve and compare with the criterion.
    Verify {
        #[arg(value_enum)]
        family: Family,
        #[command(flatten)]
        #[serde(flatten)]
        params: CurveParams,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Criterion over a range of (p, k), with exhaustive counts where the budget allows.
    Search {
        #[arg(long, value_enum)]
        family: Family,
        #[command(flatten)]
        #[serde(flatten)]
        params: CurveParams,
        #[arg(long, default_value_t = 2)]
        p_min: u64,
        #[arg(long)]
        p_max: u64,
        #[arg(long, default_value_t = 1)]
        k_min: u32,
        #[arg(long)]
        k_max: u32,
    },
    /// Regenerate one of the reference tables.
    Tables {
        #[arg(value_enum)]
        which: Table,
    },
    /// The degree-bound ladder for every prime power in a range, as CSV.
    BoundsTable {
        #[arg(long, default_value_t = 8)]
        q_min: u64,
        #[arg(long, default_value_t = 64)]
        q_max: u64,
    },
    /// Check a covering map pointwise. Curves as `family:params:p:k`.
    CoveringCheck {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        target: String,
    },
    /// Weierstrass semigroup of a Hurwitz-type curve, or closure of generators.
    Semigroup {
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        l: Option<u64>,
        /// Comma-separated generators, instead of --n.
        #[arg(long, value_delimiter = ',')]
        generators: Vec<u64>,
    },
}

/// Everything that determines a run's output.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub budget: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli, env_budget: Option<&str>) -> Result<Self> {
        let budget = match (cli.budget, env_budget) {
            (Some(b), _) => b,
            (None, Some(s)) => s
                .trim()
                .parse()
                .with_context(|| format!("{BUDGET_ENV}={s:?} is not a positive integer"))?,
            (None, None) => DEFAULT_POINT_BUDGET,
        };
        if budget == 0 {
            bail!("budget must be positive");
        }
        match &cli.command {
            Command::Search {
                p_min,
                p_max,
                k_min,
                k_max,
                ..
            } => {
                if p_min > p_max || k_min > k_max || *k_min == 0 {
                    bail!("empty search range");
                }
            }
            Command::BoundsTable { q_min, q_max } if q_min > q_max || *q_max < 2 => {
                bail!("empty q range")
            }
            _ => {}
        }
        let format = cli.format.unwrap_or(match cli.command {
            Command::BoundsTable { .. } => Format::Csv,
            _ => Format::Json,
        });
        Ok(Self {
            command: cli.command,
            budget,
            format,
            out: cli.out,
        })
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(
    args: I,
    env_budget: Option<&str>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(stdout, "{}", e.render())
            } else {
                write!(stderr, "{}", e.render())
            };
            return code;
        }
    };
    let outcome = RunConfig::from_cli(cli, env_budget).and_then(|cfg| {
        let (text, code) = execute(&cfg)?;
        match &cfg.out {
            Some(path) => std::fs::write(path, &text)
                .with_context(|| format!("writing {}", path.display()))?,
            None => stdout.write_all(text.as_bytes())?,
        }
        Ok(code)
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

/// Output text and exit code for a configured run.
pub fn execute(cfg: &RunConfig) -> Result<(String, i32)> {
    match &cfg.command {
        Command::Verify {
            family,
            params,
            p,
            k,
        } => {
            let spec = curve_spec(*family, params, *p, *k)?;
            let v = verify_spec(&spec, cfg.budget)?;
            let code = if verdict_consistent(&v) {
                EXIT_OK
            } else {
                EXIT_DISAGREE
            };
            Ok((render_verdict(&v, cfg.format)?, code))
        }
        Command::Search {
            family,
            params,
            p_min,
            p_max,
            k_min,
            k_max,
        } => {
            let rows = search(
                *family,
                params,
                (*p_min, *p_max),
                (*k_min, *k_max),
                cfg.budget,
            )?;
            let code = if rows.iter().any(|r| r.status == "disagree") {
                EXIT_DISAGREE
            } else {
                EXIT_OK
            };
            Ok((render_search(&rows, cfg.format)?, code))
        }
        Command::Tables { which } => Ok((render_table(*which, cfg.format)?, EXIT_OK)),
        Command::BoundsTable { q_min, q_max } => {
            Ok((render_bounds(*q_min, *q_max, cfg.format)?, EXIT_OK))
        }
        Command::CoveringCheck { domain, target } => {
            let report = covering_check(domain, target, cfg.budget)?;
            let code = if report.ok { EXIT_OK } else { EXIT_DISAGREE };
            Ok((render_covering(&report, cfg.format)?, code))
        }
        Command::Semigroup { n, l, generators } => {
            let sg = match (n, generators.is_empty()) {
                (Some(n), true) => match l {
                    None | Some(1) => {
                        NumericalSemigroup::from_generators(&semigroup::hurwitz_generators(*n))?
                    }
                    Some(l) => semigroup::generalized_semigroup(*n, *l)?,
                },
                (None, false) => NumericalSemigroup::from_generators(generators)?,
                _ => bail!("give either --n (with optional --l) or --generators"),
            };
            Ok((render_semigroups(&[sg.report()], cfg.format)?, EXIT_OK))
        }
    }
}

fn curve_spec(family: Family, params: &CurveParams, p: u64, k: u32) -> Result<CurveSpec> {
    let need = |x: Option<u64>, name: &str| x.with_context(|| format!("{family:?} needs --{name}"));
    Ok(match family {
        Family::Hermitian => CurveSpec::Hermitian { p, k },
        Family::Hurwitz => CurveSpec::Hurwitz {
            n: need(params.n, "n")?,
            p,
            k,
        },
        Family::Generalized => CurveSpec::Generalized {
            n: need(params.n, "n")?,
            l: need(params.l, "l")?,
            p,
            k,
        },
        Family::Fermat => CurveSpec::Fermat {
            m: need(params.m, "m")?,
            p,
            k,
        },
    })
}

fn verify_spec(spec: &CurveSpec, budget: u64) -> Result<MaximalityVerdict> {
    let curve = spec.build(DEFAULT_FIELD_BUDGET)?;
    Ok(point_count::verdict(&curve, budget)?)
}

/// Criterion agrees with the count and the count respects Hasse-Weil.
pub fn verdict_consistent(v: &MaximalityVerdict) -> bool {
    v.agrees() != Some(false) && v.respects_hasse_weil()
}

fn csv_string<S: Serialize>(rows: &[S]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn json_string<S: Serialize + ?Sized>(value: &S) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref()
        .map(|x| x.to_string())
        .unwrap_or_else(|| "-".into())
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

#[derive(Serialize)]
struct VerdictRow<'a> {
    family: &'a str,
    params: String,
    p: u32,
    k: u32,
    q: u64,
    degree: u32,
    genus: u64,
    observed: u64,
    expected: u128,
    maximal: bool,
    criterion: String,
}

fn render_verdict(v: &MaximalityVerdict, format: Format) -> Result<String> {
    match format {
        Format::Json => json_string(v),
        Format::Csv => csv_string(&[VerdictRow {
            family: &v.family,
            params: join(&v.params, " "),
            p: v.p,
            k: v.k,
            q: v.q,
            degree: v.degree,
            genus: v.genus_used,
            observed: v.observed_count,
            expected: v.expected_maximal,
            maximal: v.is_maximal,
            criterion: opt(&v.criterion_prediction),
        }]),
        Format::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "curve      {} {:?} over F_{{{}^2}} (p={}, k={})",
                v.family, v.params, v.q, v.p, v.k
            )?;
            writeln!(s, "degree     {}", v.degree)?;
            writeln!(s, "genus      {}", v.genus_used)?;
            writeln!(
                s,
                "points     {} (maximal count {})",
                v.observed_count, v.expected_maximal
            )?;
            writeln!(s, "maximal    {}", v.is_maximal)?;
            writeln!(s, "criterion  {}", opt(&v.criterion_prediction))?;
            writeln!(
                s,
                "agreement  {}",
                match v.agrees() {
                    Some(true) => "agree",
                    Some(false) => "DISAGREE",
                    None => "no criterion",
                }
            )?;
            writeln!(s, "model      {}", v.model_note)?;
            Ok(s)
        }
    }
}

/// One `(p, k)` row of a search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchRow {
    pub family: String,
    pub params: String,
    pub p: u64,
    pub k: u32,
    pub q: String,
    /// The criterion's decision; `None` when the curve is not defined.
    pub criterion: Option<bool>,
    /// `"iff"` or `"sufficient"`.
    pub criterion_kind: String,
    pub observed: Option<u64>,
    pub expected: Option<u128>,
    pub brute_force: Option<bool>,
    /// `agree`, `disagree`, `unverified` (over budget) or `excluded`.
    pub status: String,
    pub note: String,
}

fn family_params(family: Family, params: &CurveParams) -> Result<(String, Vec<u64>)> {
    let spec = curve_spec(family, params, 2, 1)?;
    let v = match spec {
        CurveSpec::Hermitian { .. } => vec![],
        CurveSpec::Hurwitz { n, .. } => vec![n],
        CurveSpec::Generalized { n, l, .. } => vec![n, l],
        CurveSpec::Fermat { m, .. } => vec![m],
        CurveSpec::Custom { .. } => unreachable!(),
    };
    Ok((format!("{family:?}").to_lowercase(), v))
}

/// `(decision, is_iff)` for the family at `(p, k)`.
fn search_criterion(
    family: Family,
    params: &CurveParams,
    p: u64,
    k: u32,
) -> Result<(bool, bool), String> {
    let e = |e: criteria::CriteriaError| e.to_string();
    match family {
        Family::Hermitian => Ok((true, true)),
        Family::Hurwitz => Ok((
            criteria::hurwitz_criterion(params.n.unwrap_or(0), p, k).map_err(e)?,
            true,
        )),
        Family::Generalized => {
            let (n, l) = (params.n.unwrap_or(0), params.l.unwrap_or(0));
            if l == 1 {
                return Ok((criteria::hurwitz_criterion(n, p, k).map_err(e)?, true));
            }
            let c = criteria::generalized_criterion(n, l, p, k).map_err(e)?;
            Ok((c.maximal, c.is_iff()))
        }
        Family::Fermat => Ok((
            criteria::fermat_criterion(params.m.unwrap_or(0), p, k).map_err(e)?,
            true,
        )),
    }
}

pub fn search(
    family: Family,
    params: &CurveParams,
    p_range: (u64, u64),
    k_range: (u32, u32),
    budget: u64,
) -> Result<Vec<SearchRow>> {
    let (name, plist) = family_params(family, params)?;
    let params_str = join(&plist, " ");
    let mut rows = Vec::new();
    for p in (p_range.0..=p_range.1).filter(|&p| arith::is_prime(p)) {
        for k in k_range.0..=k_range.1 {
            let q = criteria::prime_power(p, k);
            let mut row = SearchRow {
                family: name.clone(),
                params: params_str.clone(),
                p,
                k,
                q: q.to_string(),
                criterion: None,
                criterion_kind: String::new(),
                observed: None,
                expected: None,
                brute_force: None,
                status: "excluded".into(),
                note: String::new(),
            };
            match search_criterion(family, params, p, k) {
                Err(why) => row.note = why,
                Ok((c, iff)) => {
                    row.criterion = Some(c);
                    row.criterion_kind = if iff { "iff" } else { "sufficient" }.into();
                    row.status = "unverified".into();
                    if let Some(v) = brute_force(family, params, p, k, budget, &mut row.note)? {
                        row.observed = Some(v.observed_count);
                        row.expected = Some(v.expected_maximal);
                        row.brute_force = Some(v.is_maximal);
                        let consistent = v.respects_hasse_weil()
                            && if iff {
                                c == v.is_maximal
                            } else {
                                !c || v.is_maximal
                            };
                        row.status = if consistent { "agree" } else { "disagree" }.into();
                    }
                }
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Exhaustive verdict when `q^4` fits both budgets; otherwise records why not.
fn brute_force(
    family: Family,
    params: &CurveParams,
    p: u64,
    k: u32,
    budget: u64,
    note: &mut String,
) -> Result<Option<MaximalityVerdict>> {
    let q = criteria::prime_power(p, k);
    let q4 = q.pow(4u32);
    if q4 > budget.into() {
        *note = format!("q^4 = {q4} exceeds budget {budget}");
        return Ok(None);
    }
    let spec = curve_spec(family, params, p, k)?;
    match spec.build(DEFAULT_FIELD_BUDGET) {
        Ok(curve) => Ok(Some(point_count::verdict(&curve, budget)?)),
        Err(CurveError::Field(e)) => {
            *note = e.to_string();
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn render_search(rows: &[SearchRow], format: Format) -> Result<String> {
    match format {
        Format::Json => json_string(rows),
        Format::Csv => csv_string(rows),
        Format::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "{:>4} {:>3} {:>12} {:>9} {:>10} {:>10} {:>10}  status",
                "p", "k", "q", "criterion", "observed", "expected", "maximal"
            )?;
            for r in rows {
                writeln!(
                    s,
                    "{:>4} {:>3} {:>12} {:>9} {:>10} {:>10} {:>10}  {}{}",
                    r.p,
                    r.k,
                    r.q,
                    opt(&r.criterion),
                    opt(&r.observed),
                    opt(&r.expected),
                    opt(&r.brute_force),
                    r.status,
                    if r.note.is_empty() {
                        String::new()
                    } else {
                        format!(" ({})", r.note)
                    }
                )?;
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct ResidueRow {
    m: u64,
    w: u64,
    residues: String,
}

fn render_table(which: Table, format: Format) -> Result<String> {
    match which {
        Table::Residues => {
            let sols: Vec<_> = [3u64, 7, 13]
                .into_iter()
                .flat_map(criteria::admissible_exponent_residues)
                .collect();
            match format {
                Format::Json => json_string(&sols),
                Format::Csv => csv_string(
                    &sols
                        .iter()
                        .map(|s| ResidueRow {
                            m: s.m,
                            w: s.w,
                            residues: join(&s.residues, " "),
                        })
                        .collect::<Vec<_>>(),
                ),
                Format::Text => {
                    let mut s = String::new();
                    for c in &sols {
                        writeln!(
                            s,
                            "m={:<3} w={:<3} p mod m in {{{}}}",
                            c.m,
                            c.w,
                            join(&c.residues, ", ")
                        )?;
                    }
                    Ok(s)
                }
            }
        }
        Table::Bounds => render_bounds(8, 64, format),
        Table::Semigroup => {
            let reps = (2..=10)
                .map(|n| {
                    NumericalSemigroup::from_generators(&semigroup::hurwitz_generators(n))
                        .map(|s| s.report())
                })
                .collect::<Result<Vec<_>, _>>()?;
            render_semigroups(&reps, format)
        }
    }
}

fn render_bounds(q_min: u64, q_max: u64, format: Format) -> Result<String> {
    match format {
        Format::Csv => Ok(bounds::ladder_csv(q_min, q_max)?),
        Format::Json => {
            let rows = arith::prime_powers_in(q_min, q_max)
                .into_iter()
                .map(bounds::ladder_row)
                .collect::<Result<Vec<_>, _>>()?;
            json_string(&rows)
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "approximate values (exact forms in csv/json)")?;
            writeln!(
                s,
                "{:>6} {:>12} {:>10} {:>4} {:>6} {:>12} {:>12}",
                "q", "d1", "F", "d2", "d3", "d5", "G"
            )?;
            for q in arith::prime_powers_in(q_min, q_max) {
                let r = bounds::ladder_row(q)?;
                let approx = |s: &Option<crate::surd::QuadraticSurd>| {
                    s.as_ref().map(|s| s.to_decimal(4)).unwrap_or("-".into())
                };
                writeln!(
                    s,
                    "{:>6} {:>12} {:>10} {:>4} {:>6} {:>12} {:>12}",
                    q,
                    r.d1.to_decimal(4),
                    r.f,
                    opt(&r.d2),
                    opt(&r.d3),
                    approx(&r.d5),
                    approx(&r.g)
                )?;
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct SemigroupRow {
    generators: String,
    genus: u64,
    frobenius: String,
    gaps: String,
}

fn render_semigroups(reps: &[SemigroupReport], format: Format) -> Result<String> {
    match format {
        Format::Json => json_string(reps),
        Format::Csv => csv_string(
            &reps
                .iter()
                .map(|r| SemigroupRow {
                    generators: join(&r.generators, " "),
                    genus: r.genus,
                    frobenius: opt(&r.frobenius),
                    gaps: join(&r.gaps, " "),
                })
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut s = String::new();
            for r in reps {
                writeln!(s, "generators <{}>", join(&r.generators, ", "))?;
                writeln!(s, "  genus {}, frobenius {}", r.genus, opt(&r.frobenius))?;
                writeln!(s, "  gaps {}", join(&r.gaps, " "))?;
            }
            Ok(s)
        }
    }
}

fn covering_check(domain: &str, target: &str, budget: u64) -> Result<CoveringReport> {
    let d: CurveSpec = domain.parse()?;
    let t: CurveSpec = target.parse()?;
    if d.p_k() != t.p_k() {
        bail!("domain and target must share (p, k)");
    }
    let (p, k) = d.p_k();
    let field = Field::create(p, k)?;
    let dc = d.build_over(&field)?;
    let tc = t.build_over(&field)?;
    let map = CoveringMap::infer(&dc, &tc)?;
    Ok(verify_covering(&dc, map, &tc, budget)?)
}

fn render_covering(r: &CoveringReport, format: Format) -> Result<String> {
    #[derive(Serialize)]
    struct Row<'a> {
        domain: &'a str,
        target: &'a str,
        points_checked: u64,
        points_on_target: u64,
        excluded: u64,
        image_points: u64,
        ok: bool,
    }
    match format {
        Format::Json => json_string(r),
        Format::Csv => csv_string(&[Row {
            domain: &r.domain,
            target: &r.target,
            points_checked: r.points_checked,
            points_on_target: r.points_on_target,
            excluded: r.excluded,
            image_points: r.image_points,
            ok: r.ok,
        }]),
        Format::Text => Ok(format!(
            "{} -> {}: {} of {} mapped points on target, {} excluded, {} distinct images: {}\n",
            r.domain,
            r.target,
            r.points_on_target,
            r.points_checked,
            r.excluded,
            r.image_points,
            if r.ok { "ok" } else { "FAILED" }
        )),
    }
}
