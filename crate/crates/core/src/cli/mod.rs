//! Command-line front end.
//!
//! Every command writes either human-readable text or machine records. A
//! machine record is one line of space-separated `key=value` fields whose
//! values never contain spaces.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use crate::algebra::coh::monomials;
use crate::algebra::{BaseElem, Rat, Scalar};
use crate::asympt::{gamma_hat_series, gamma_vs_stationary_phase, stationary_phase, PhaseData, XSeries};
use crate::error::{Error, Result};
use crate::hypergeom::{build_equivariant, classical_i, ClassicalRing, EquivariantI};
use crate::quantum::{j_shape_check, quantum_table, shape_mode};
use crate::recursion::{pole_inventory, verify_recursion, RecursionReport};
use crate::toric::spec::{check_line, parse_rat, parse_rats};
use crate::toric::{FiberPoly, Geometry, ToricFibrationSpec};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "toric-gw", version, about = "Exact I-functions, recursion checks and quantum products for toric fibrations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Geometry description file.
    #[arg(long, global = true)]
    pub geometry: Option<PathBuf>,
    /// Novikov cutoff, a nonnegative rational.
    #[arg(long, global = true)]
    pub cutoff: Option<String>,
    #[arg(long, global = true)]
    pub t_order: Option<u32>,
    #[arg(long, global = true)]
    pub z_order: Option<u32>,
    #[arg(long, global = true)]
    pub kmax: Option<u32>,
    /// Comma-separated ratios `c_j` of `lambda_j = c_j s`. Repeatable.
    #[arg(long = "lambda-line", global = true)]
    pub lambda_line: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// List fixed points with their restricted classes.
    FixedPoints,
    /// List oriented edges with chi and degree.
    Edges,
    /// Dump the restricted I-functions on each lambda line.
    IFunction,
    /// Check the fixed-point residue recursion.
    VerifyRecursion,
    /// Integrate monomials by fixed points and by residues.
    Pushforward,
    /// Print the asymptotic series of the Gamma function.
    Gamma {
        #[arg(long, default_value_t = 4)]
        terms: usize,
    },
    /// Stationary phase expansion of a phase and amplitude read from a file.
    StationaryPhase {
        #[arg(long)]
        input: PathBuf,
    },
    /// Small quantum product table at the origin.
    Quantum,
    /// Expansion of the non-equivariant I-function at z = infinity.
    MirrorMap,
    /// Run every check.
    All,
}

/// Resolved settings for one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub geometry: Option<PathBuf>,
    pub command: Command,
    pub cutoff: Option<Rat>,
    pub t_order: Option<u32>,
    pub z_order: Option<u32>,
    pub kmax: Option<u32>,
    pub lambda_lines: Vec<Vec<Rat>>,
    pub format: Format,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<(RunConfig, Option<PathBuf>)> {
        let cutoff = cli.cutoff.as_deref().map(parse_rat).transpose().map_err(Error::Spec)?;
        if cutoff.as_ref().is_some_and(|c| c < &Rat::zero()) {
            return Err(Error::Spec("cutoff must be nonnegative".into()));
        }
        if cli.kmax == Some(0) {
            return Err(Error::Spec("kmax must be at least 1".into()));
        }
        let lambda_lines = cli
            .lambda_line
            .iter()
            .map(|s| parse_rats(s).map_err(|e| Error::Spec(format!("lambda line: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        let cfg = RunConfig {
            geometry: cli.geometry,
            command: cli.command,
            cutoff,
            t_order: cli.t_order,
            z_order: cli.z_order,
            kmax: cli.kmax,
            lambda_lines,
            format: cli.format,
        };
        Ok((cfg, cli.out))
    }

    /// The geometry with command-line overrides applied.
    pub fn load(&self) -> Result<Geometry> {
        let path = self
            .geometry
            .as_ref()
            .ok_or_else(|| Error::Spec("this command needs --geometry".into()))?;
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut spec = ToricFibrationSpec::parse(&text)?;
        if let Some(c) = &self.cutoff {
            spec.cutoff = c.clone();
        }
        if let Some(t) = self.t_order {
            spec.t_order = t;
        }
        if let Some(z) = self.z_order {
            spec.z_order = z;
        }
        if let Some(k) = self.kmax {
            spec.kmax = k;
        }
        if !self.lambda_lines.is_empty() {
            for l in &self.lambda_lines {
                check_line(l, spec.n)?;
            }
            spec.lambda_lines = self.lambda_lines.clone();
        }
        Geometry::new(spec)
    }
}

/// Output of a command and whether every check in it passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn record(fields: &[(&str, String)]) -> String {
    let parts: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={}", v.replace(' ', ""))).collect();
    parts.join(" ") + "\n"
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

/// Parses arguments, runs the command and writes the report. Returns the
/// process exit code: 0 on success, 1 when a check fails, 2 on usage,
/// parse or validation errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let (cfg, path) = match RunConfig::from_cli(cli) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    match execute(&cfg) {
        Ok(o) => {
            let written = match &path {
                Some(p) => std::fs::write(p, &o.text),
                None => out.write_all(o.text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            i32::from(!o.ok)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Spec(_) | Error::Io(_) | Error::NonGenericLine(_) => 2,
        Error::NonRegularChamber(_) | Error::SingularFixedPoint(_) => 2,
        _ => 1,
    }
}

fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let f = cfg.format;
    match &cfg.command {
        Command::Gamma { terms } => Ok(Outcome::ok(gamma(*terms, f))),
        Command::StationaryPhase { input } => stationary(input, cfg.z_order, f),
        cmd => {
            let g = cfg.load()?;
            match cmd {
                Command::FixedPoints => Ok(Outcome::ok(fixed_points(&g, f))),
                Command::Edges => Ok(Outcome::ok(edges(&g, f))),
                Command::IFunction => Ok(Outcome::ok(i_function(&g, f))),
                Command::VerifyRecursion => recursion(&g, f),
                Command::Pushforward => pushforward(&g, f),
                Command::Quantum => quantum(&g, f),
                Command::MirrorMap => mirror_map(&g, f),
                Command::All => all(&g, f),
                Command::Gamma { .. } | Command::StationaryPhase { .. } => unreachable!(),
            }
        }
    }
}

fn fixed_points(g: &Geometry, f: Format) -> String {
    match f {
        Format::Text => g.dump().lines().filter(|l| l.starts_with("point")).map(|l| format!("{l}\n")).collect(),
        Format::Machine => g
            .points
            .iter()
            .map(|p| {
                let ps: Vec<String> = p.p.iter().map(ToString::to_string).collect();
                let us: Vec<String> = p.normal_indices().map(|j| format!("U{}:{}", j + 1, p.u[j])).collect();
                record(&[
                    ("point", p.label()),
                    ("det", p.det.to_string()),
                    ("P", ps.join(";")),
                    ("normal", us.join(";")),
                ])
            })
            .collect(),
    }
}

fn edges(g: &Geometry, f: Format) -> String {
    match f {
        Format::Text => g.dump().lines().filter(|l| l.starts_with("edge")).map(|l| format!("{l}\n")).collect(),
        Format::Machine => g
            .edges
            .iter()
            .map(|e| {
                let d: Vec<String> = e.d.iter().map(i64::to_string).collect();
                record(&[
                    ("from", g.points[e.alpha].label()),
                    ("to", g.points[e.beta].label()),
                    ("j_plus", (e.j_plus + 1).to_string()),
                    ("j_minus", (e.j_minus + 1).to_string()),
                    ("chi", e.chi.to_string()),
                    ("d", d.join(",")),
                ])
            })
            .collect(),
    }
}

fn line_label(line: &[Rat]) -> String {
    line.iter().map(Rat::to_string).collect::<Vec<_>>().join(",")
}

fn equivariant(g: &Geometry, line: &[Rat]) -> EquivariantI {
    build_equivariant(g, line, &g.spec.cutoff, g.spec.t_order, false)
}

fn i_function(g: &Geometry, f: Format) -> String {
    let mut s = String::new();
    for line in &g.spec.lambda_lines {
        let eq = equivariant(g, line);
        if f == Format::Text {
            let _ = writeln!(s, "lambda line ({})", line_label(line));
        }
        for (a, series) in eq.series.iter().enumerate() {
            let label = g.points[a].label();
            match f {
                Format::Text => {
                    let _ = writeln!(s, "point {label}");
                    s.push_str(&series.dump());
                }
                Format::Machine => {
                    for ((d, t), c) in series.iter() {
                        s.push_str(&record(&[
                            ("line", line_label(line)),
                            ("point", label.clone()),
                            ("degree", d.to_string()),
                            ("t", t.to_string()),
                            ("coeff", c.to_string()),
                        ]));
                    }
                }
            }
        }
    }
    s
}

fn recursion_reports(g: &Geometry) -> Result<Vec<(Vec<Rat>, RecursionReport, usize)>> {
    let bound = g.generic_bound(&g.spec.cutoff, g.spec.kmax);
    let mut out = Vec::new();
    for line in &g.spec.lambda_lines {
        g.check_generic(line, bound)?;
        let eq = equivariant(g, line);
        let rep = verify_recursion(g, &eq, g.spec.kmax)?;
        let poles = pole_inventory(g, &eq)?;
        out.push((line.clone(), rep, poles));
    }
    Ok(out)
}

fn recursion(g: &Geometry, f: Format) -> Result<Outcome> {
    let reports = recursion_reports(g)?;
    let mut total = RecursionReport::default();
    let mut s = String::new();
    for (line, rep, poles) in reports {
        match f {
            Format::Text => {
                let _ = writeln!(s, "lambda line ({}): {}", line_label(&line), rep.summary());
                s.push_str(&rep.details());
            }
            Format::Machine => s.push_str(&record(&[
                ("line", line_label(&line)),
                ("checked", rep.checked().to_string()),
                ("passed", rep.passed().to_string()),
                ("failed", rep.failed().to_string()),
                ("skipped", rep.skipped.len().to_string()),
                ("poles", poles.to_string()),
            ])),
        }
        total.merge(rep);
    }
    match f {
        Format::Text => {
            let _ = writeln!(s, "total: {}", total.summary());
        }
        Format::Machine => s.push_str(&record(&[
            ("total_checked", total.checked().to_string()),
            ("total_passed", total.passed().to_string()),
            ("total_skipped", total.skipped.len().to_string()),
            ("status", status(total.ok()).into()),
        ])),
    }
    Ok(Outcome { text: s, ok: total.ok() })
}

/// Monomials in `P_1..P_K` (and `h`) of degree at most the dimension.
fn integrands(g: &Geometry) -> Vec<Vec<u32>> {
    let nv = g.k() + usize::from(g.r() > 0);
    let dim = (g.n() - g.k() + g.r()) as u32;
    (0..=dim)
        .flat_map(|k| monomials(nv, k))
        .filter(|m| g.r() == 0 || m[g.k()] as usize <= g.r())
        .collect()
}

fn monomial_name(m: &[u32], k: usize) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        let v = if i < k { format!("p{}", i + 1) } else { "h".into() };
        match e {
            0 => {}
            1 => parts.push(v),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn pushforward(g: &Geometry, f: Format) -> Result<Outcome> {
    let (k, r) = (g.k(), g.r());
    let mut s = String::new();
    let mut ok = true;
    for line in &g.spec.lambda_lines {
        for m in integrands(g) {
            let coeff = if r > 0 { BaseElem::h(r).pow(m[k]) } else { BaseElem::one(r) };
            let poly = FiberPoly::monomial(m[..k].to_vec(), coeff);
            let by_points = g.pushforward(&poly, line)?;
            let by_residues = g.pushforward_residues(&poly, line)?;
            let agree = by_points == by_residues;
            ok &= agree;
            let integral = by_points.at_zero()?[r].clone();
            let name = monomial_name(&m, k);
            match f {
                Format::Text => {
                    let _ = writeln!(
                        s,
                        "({}) int {name} = {integral}  equivariant: {by_points}  residues: {}",
                        line_label(line),
                        status(agree)
                    );
                }
                Format::Machine => s.push_str(&record(&[
                    ("line", line_label(line)),
                    ("integrand", name),
                    ("integral", integral.to_string()),
                    ("equivariant", by_points.to_string()),
                    ("routes_agree", agree.to_string()),
                ])),
            }
        }
    }
    Ok(Outcome { text: s, ok })
}

fn gamma(terms: usize, f: Format) -> String {
    let series = gamma_hat_series(terms);
    match f {
        Format::Text => format!("{series}\n"),
        Format::Machine => series
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| record(&[("k", k.to_string()), ("coeff", c.to_string())]))
            .collect(),
    }
}

/// Reads `sigma_sq`, `phase` (`c_3 c_4 ...`), `amplitude` (`a_0 a_1 ...`),
/// optional `order` and `complete` from a `key = value` file.
fn read_phase_file(text: &str) -> Result<(PhaseData, XSeries, Option<i64>)> {
    let mut sigma_sq = None;
    let mut phase = Vec::new();
    let mut amp = vec![Rat::from_integer(1.into())];
    let mut order = None;
    let mut complete = true;
    for (ln, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let perr = |column: usize, message: String| Error::Parse {
            line: ln + 1,
            column,
            message,
        };
        let (key, value) = content.split_once('=').ok_or_else(|| perr(1, "expected `key = value`".into()))?;
        let col = raw.find('=').unwrap_or(0) + 2;
        match key.trim() {
            "sigma_sq" => sigma_sq = Some(parse_rat(value).map_err(|e| perr(col, e))?),
            "phase" => phase = parse_rats(value).map_err(|e| perr(col, e))?,
            "amplitude" => amp = parse_rats(value).map_err(|e| perr(col, e))?,
            "order" => order = Some(value.trim().parse::<i64>().map_err(|e| perr(col, e.to_string()))?),
            "complete" => {
                complete = match value.trim() {
                    "true" => true,
                    "false" => false,
                    v => return Err(perr(col, format!("expected true or false, got `{v}`"))),
                }
            }
            other => return Err(perr(1, format!("unknown key `{other}`"))),
        }
    }
    let sigma_sq = sigma_sq.ok_or_else(|| Error::Spec("missing sigma_sq".into()))?;
    let to_scalars = |v: Vec<Rat>| v.into_iter().map(Scalar::from_rat).collect::<Vec<_>>();
    Ok((
        PhaseData::new(Scalar::from_rat(sigma_sq), to_scalars(phase), complete),
        XSeries::from_scalars(to_scalars(amp), complete),
        order,
    ))
}

fn stationary(input: &PathBuf, z_order: Option<u32>, f: Format) -> Result<Outcome> {
    let text = std::fs::read_to_string(input).map_err(|e| Error::Io(format!("{}: {e}", input.display())))?;
    let (phase, amp, order) = read_phase_file(&text)?;
    let n = z_order.map(i64::from).or(order).unwrap_or(3);
    let ex = stationary_phase(&phase, &amp, n)?;
    let mut s = String::new();
    for k in 0..=n {
        let a = ex.a(k);
        match f {
            Format::Text => {
                let _ = writeln!(s, "A{k} = {a}");
            }
            Format::Machine => s.push_str(&record(&[("k", k.to_string()), ("A", a.to_string())])),
        }
    }
    Ok(Outcome::ok(s))
}

fn mirror_map(g: &Geometry, f: Format) -> Result<Outcome> {
    let ring = ClassicalRing::from_pairing(g, None)?;
    let series = classical_i(g, &ring, &g.spec.cutoff, g.spec.t_order.max(1));
    let rep = j_shape_check(g, &ring, &series, shape_mode(g));
    // Unmet conditions are reported, not failed.
    let ok = !rep.conditions_met || rep.passes();
    let text = match f {
        Format::Text => format!("{rep}\n"),
        Format::Machine => {
            let mut s = record(&[
                ("mode", format!("{:?}", rep.mode)),
                ("conditions_met", rep.conditions_met.to_string()),
                ("leading_ok", rep.leading_ok.to_string()),
                ("trivial", rep.trivial.to_string()),
            ]);
            for (d, t, v) in &rep.z0 {
                s.push_str(&record(&[
                    ("degree", d.to_string()),
                    ("t", t.to_string()),
                    ("z0", v.iter().map(Rat::to_string).collect::<Vec<_>>().join(",")),
                ]));
            }
            s
        }
    };
    Ok(Outcome { text, ok })
}

fn quantum(g: &Geometry, f: Format) -> Result<Outcome> {
    let ring = ClassicalRing::from_pairing(g, None)?;
    let table = quantum_table(g, &ring, &g.spec.cutoff)?;
    let ok = table.is_commutative() && table.is_associative() && table.has_unit() && table.classical_limit_ok();
    let text = match f {
        Format::Text => {
            let mut s = format!("basis: {}\n", table.labels.join(" "));
            s.push_str(&table.to_text());
            let _ = writeln!(s, "checks: {}", status(ok));
            s
        }
        Format::Machine => {
            let mut s = record(&[("basis", table.labels.join(",")), ("status", status(ok).into())]);
            for l in table.to_machine().lines() {
                let v: Vec<&str> = l.split(' ').collect();
                let (a, b, c) = (v[0], v[1], v[2]);
                let coeff = v[v.len() - 1];
                let d = v[3..v.len() - 2].join(",");
                s.push_str(&record(&[
                    ("a", a.into()),
                    ("b", b.into()),
                    ("c", c.into()),
                    ("d", d),
                    ("D", v[v.len() - 2].into()),
                    ("coeff", coeff.into()),
                ]));
            }
            s
        }
    };
    Ok(Outcome { text, ok })
}

/// Mori support: every term of every restriction has an effective degree.
fn support_ok(g: &Geometry, eq: &EquivariantI) -> bool {
    eq.series.iter().enumerate().all(|(a, s)| {
        let range = g.effective_range(&g.points[a], &g.spec.cutoff);
        s.support().all(|d| range.contains(d))
    })
}

fn all(g: &Geometry, f: Format) -> Result<Outcome> {
    let mut results: Vec<(&str, String)> = Vec::new();
    let edge_failures = g.edge_identity_failures();
    results.push(("edges", if edge_failures.is_empty() { "ok".into() } else { edge_failures.join("; ") }));

    let pf = pushforward(g, Format::Machine)?;
    results.push(("pushforward", status(pf.ok).into()));

    let support = g.spec.lambda_lines.iter().all(|l| support_ok(g, &equivariant(g, l)));
    results.push(("mori_support", status(support).into()));

    let rec = recursion(g, Format::Machine)?;
    let totals = rec.text.lines().last().unwrap_or_default().to_string();
    results.push(("recursion", format!("{} {totals}", status(rec.ok))));

    results.push(("gamma", status(gamma_vs_stationary_phase(4)?).into()));

    let ring = ClassicalRing::from_pairing(g, None)?;
    let series = classical_i(g, &ring, &g.spec.cutoff, 1);
    let rep = j_shape_check(g, &ring, &series, shape_mode(g));
    if rep.conditions_met {
        results.push(("mirror_map", status(rep.passes()).into()));
        let q = quantum(g, Format::Machine)?;
        results.push(("quantum", status(q.ok).into()));
    } else {
        results.push(("mirror_map", format!("skipped ({})", rep.conditions)));
        results.push(("quantum", "skipped".into()));
    }

    let failed = |v: &str| v != "ok" && !v.starts_with("ok ") && !v.starts_with("skipped");
    let ok = results.iter().all(|(_, v)| !failed(v));
    let mut s = String::new();
    for (k, v) in &results {
        match f {
            Format::Text => {
                let _ = writeln!(s, "{k}: {v}");
            }
            Format::Machine => s.push_str(&record(&[("check", (*k).into()), ("result", v.clone())])),
        }
    }
    match f {
        Format::Text => {
            let _ = writeln!(s, "overall: {}", status(ok));
        }
        Format::Machine => s.push_str(&record(&[("overall", status(ok).into())])),
    }
    Ok(Outcome { text: s, ok })
}
