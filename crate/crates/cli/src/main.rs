//! `qlh`: exact verification runs for q-Laguerre–Hahn forms.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical failure
//! (nonzero residual, class mismatch, singular form), 2 on bad input.

mod fixture;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use qlh_core::fixtures::brenke_fixture;
use qlh_core::structure::{band_holds, structure_coeffs};
use qlh_core::transforms::{
    associated_moments, associated_triplet, corecursive_moments, corecursive_triplet,
    inverse_moments, inverse_recurrence, inverse_triplet,
};
use qlh_core::{
    cd_from_triplet, compute_class, full_residual, parse_scalar, pearson_solve,
    recurrence_from_moments, riccati_class, shift_triplet, ClassReport, MomentForm, Poly, QParam,
    QlhError, RiccatiData, Scalar, Triplet,
};

use fixture::{parse_fixture, recurrence_order, to_json};
use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(
    name = "qlh",
    version,
    about = "Exact checks for q-Laguerre-Hahn forms, their equations and transforms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that the form satisfies the equation (Phi, Psi, B).
    Residual,
    /// Compute the class by reducing the equation at rational roots of Phi.
    Class,
    /// Build (Phi, B, C, D), check the Riccati equation and compare classes.
    Riccati,
    /// Structure-relation coefficients lambda_{n,nu} and their band.
    Structure,
    /// Equation of a transformed form, checked against its moments.
    Transform {
        #[arg(value_enum)]
        kind: TransformKind,
    },
    /// Every check above, including all three transforms.
    Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TransformKind {
    CoRecursive,
    Associated,
    Inverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FixtureKind {
    /// Brenke-type form with parameters --b and --q.
    Brenke,
    /// Moments solved from --phi, --psi, --bb, --q and --seeds.
    Pearson,
    /// Form (and optionally the equation) from a JSON document in --data.
    Free,
}

#[derive(Args, Debug)]
struct Opts {
    /// Which form to load.
    #[arg(long, value_enum, global = true)]
    fixture: Option<FixtureKind>,
    /// JSON fixture text, or @PATH to read it from a file (free fixture).
    #[arg(long, global = true)]
    data: Option<String>,
    /// Brenke parameter b (default 3).
    #[arg(long, global = true, allow_hyphen_values = true)]
    b: Option<String>,
    /// The dilation parameter q (Brenke default 2).
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<String>,
    /// Co-recursive parameter mu (default 1/2).
    #[arg(long, global = true, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Replace the form u by h_{1/a} u and its equation accordingly.
    #[arg(long, global = true, allow_hyphen_values = true)]
    a: Option<String>,
    /// Highest moment index (default 40; at least 4).
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Phi as ascending coefficients, e.g. "0,1" for x.
    #[arg(long, global = true, allow_hyphen_values = true)]
    phi: Option<String>,
    /// Psi as ascending coefficients.
    #[arg(long, global = true, allow_hyphen_values = true)]
    psi: Option<String>,
    /// B as ascending coefficients (default 0).
    #[arg(long, global = true, allow_hyphen_values = true)]
    bb: Option<String>,
    /// Moments (u)_1, (u)_2, ... not determined by the equation.
    #[arg(long, global = true, allow_hyphen_values = true)]
    seeds: Option<String>,
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

enum CliError {
    Input(String),
    Math(String),
}

impl From<QlhError> for CliError {
    fn from(e: QlhError) -> Self {
        match e {
            QlhError::NotSatisfied { .. }
            | QlhError::NotRegular(_)
            | QlhError::NonInvertible
            | QlhError::DegenerateLeading
            | QlhError::EmptyOverlap
            | QlhError::DivisionByZeroPoly
            | QlhError::NotARoot(_) => CliError::Math(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

type Res<T> = Result<T, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn scalar_flag(v: &Option<String>, name: &str) -> Res<Option<Scalar>> {
    v.as_deref()
        .map(|s| parse_scalar(s).map_err(|e| input(format!("--{name}: {e}"))))
        .transpose()
}

fn list_flag(v: &str, name: &str) -> Res<Vec<Scalar>> {
    if v.trim().is_empty() {
        return Ok(Vec::new());
    }
    v.split(',')
        .map(|s| parse_scalar(s).map_err(|e| input(format!("--{name}: {e}"))))
        .collect()
}

fn poly_flag(v: &Option<String>, name: &str) -> Res<Option<Poly>> {
    v.as_deref()
        .map(|s| list_flag(s, name).map(Poly::new))
        .transpose()
}

fn q_flag(v: &Option<String>) -> Res<Option<QParam>> {
    scalar_flag(v, "q")?
        .map(|q| QParam::new(q).map_err(|e| input(format!("--q: {e}"))))
        .transpose()
}

struct Problem {
    label: String,
    u: MomentForm,
    t: Option<Triplet>,
}

impl Problem {
    fn triplet(&self) -> Res<&Triplet> {
        self.t
            .as_ref()
            .ok_or_else(|| input("this command needs an equation: give --phi and --psi (and --q)"))
    }
}

fn load(o: &Opts) -> Res<Problem> {
    let kind = o
        .fixture
        .ok_or_else(|| input("--fixture is required (brenke, pearson or free)"))?;
    let mut p = match kind {
        FixtureKind::Brenke => {
            for (flag, v) in [
                ("phi", &o.phi),
                ("psi", &o.psi),
                ("bb", &o.bb),
                ("seeds", &o.seeds),
                ("data", &o.data),
            ] {
                if v.is_some() {
                    return Err(input(format!("--{flag} is not used by the brenke fixture")));
                }
            }
            let b = scalar_flag(&o.b, "b")?.unwrap_or_else(|| qlh_core::int(3));
            let q = q_flag(&o.q)?.unwrap_or_else(|| QParam::new(qlh_core::int(2)).unwrap());
            let order = o.order.unwrap_or(40);
            let (u, t, _) = brenke_fixture(&b, &q, order)?;
            Problem {
                label: format!("Brenke form, b = {b}, q = {q}, order {order}"),
                u,
                t: Some(t),
            }
        }
        FixtureKind::Pearson => {
            let phi =
                poly_flag(&o.phi, "phi")?.ok_or_else(|| input("pearson fixture needs --phi"))?;
            let psi =
                poly_flag(&o.psi, "psi")?.ok_or_else(|| input("pearson fixture needs --psi"))?;
            let bb = poly_flag(&o.bb, "bb")?.unwrap_or_else(Poly::zero);
            let q = q_flag(&o.q)?.ok_or_else(|| input("pearson fixture needs --q"))?;
            let seeds = o
                .seeds
                .as_deref()
                .map(|s| list_flag(s, "seeds"))
                .transpose()?
                .unwrap_or_default();
            let order = o.order.unwrap_or(40);
            let t = Triplet::new(phi, psi, bb, q)?;
            let u = pearson_solve(&t, &seeds, order)?;
            Problem {
                label: format!("form solved from the equation, order {order}"),
                u,
                t: Some(t),
            }
        }
        FixtureKind::Free => {
            let data = o
                .data
                .as_deref()
                .ok_or_else(|| input("free fixture needs --data"))?;
            let text = match data.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(path)
                    .map_err(|e| input(format!("--data {path}: {e}")))?,
                None => data.to_string(),
            };
            let spec = parse_fixture(&text).map_err(|e| input(e.to_string()))?;
            let u = spec.form(o.order).map_err(input)?;
            let phi = poly_flag(&o.phi, "phi")?.or(spec.phi.clone());
            let psi = poly_flag(&o.psi, "psi")?.or(spec.psi.clone());
            let bb = poly_flag(&o.bb, "bb")?
                .or(spec.b.clone())
                .unwrap_or_else(Poly::zero);
            let q = q_flag(&o.q)?.or(spec.q.clone());
            let t = match (phi, psi, q) {
                (Some(phi), Some(psi), Some(q)) => Some(Triplet::new(phi, psi, bb, q)?),
                (None, None, _) => None,
                _ => return Err(input("an equation needs phi, psi and q together")),
            };
            Problem {
                label: format!(
                    "free form, order {}, document {}",
                    u.order(),
                    to_json(&spec)
                ),
                u,
                t,
            }
        }
    };
    if let Some(a) = scalar_flag(&o.a, "a")? {
        if a.is_zero() {
            return Err(input("--a must be nonzero"));
        }
        p.u = p.u.ha(&a.recip())?;
        p.t = p.t.map(|t| shift_triplet(&t, &a)).transpose()?;
        p.label = format!("{} (dilated by 1/{a})", p.label);
    }
    if p.u.order() < 4 {
        return Err(input(format!(
            "order must be at least 4, got {}",
            p.u.order()
        )));
    }
    Ok(p)
}

fn triplet_lines(rep: &mut Report, t: &Triplet) {
    rep.line(format!("phi = {}", t.phi));
    rep.line(format!("psi = {}", t.psi));
    rep.line(format!("B = {}", t.b));
    rep.line(format!("q = {}", t.q));
}

fn data_lines(rep: &mut Report, r: &RiccatiData) {
    rep.line(format!("Phi = {}", r.phi));
    rep.line(format!("B = {}", r.b));
    rep.line(format!("C = {}", r.c));
    rep.line(format!("D = {}", r.d));
}

/// Residual check over the whole computable range.
fn check_equation(rep: &mut Report, u: &MomentForm, t: &Triplet, what: &str) -> Res<()> {
    let res = full_residual(u, t)?;
    match res.iter().enumerate().find(|(_, v)| !v.is_zero()) {
        None => rep.check(
            true,
            format!("{what}: residual zero for n = 0..={}", res.len() - 1),
        ),
        Some((n, v)) => rep.fail(format!("{what}: residual entry n = {n} is {v}")),
    }
    if rep.format() == Format::Csv {
        let rows: Vec<_> = res
            .iter()
            .enumerate()
            .map(|(n, v)| (vec![n as i64], v.clone()))
            .collect();
        rep.table(&format!("{what}: residual"), &["n"], &rows);
    }
    Ok(())
}

fn class_lines(rep: &mut Report, c: &ClassReport) {
    rep.line(format!("class {}", c.class_value));
    for r in &c.reductions {
        rep.line(format!("reduced at x = {}", r.root));
    }
    for r in &c.final_attempts {
        rep.line(format!(
            "no reduction at x = {} (r = {}, b = {})",
            r.root, r.r, r.b
        ));
    }
    for f in &c.unreduced_nonrational_factors {
        rep.line(format!(
            "factor of phi without rational roots, not tested: {f}"
        ));
    }
    rep.line("minimal equation:");
    triplet_lines(rep, &c.minimal_triplet);
    rep.line(format!(
        "verified: residual zero for n <= {}, Hankel determinants nonzero for n <= {}",
        c.verified_residual_to, c.verified_hankel_to
    ));
}

fn residual_section(p: &Problem, rep: &mut Report) -> Res<()> {
    rep.section("residual");
    let t = p.triplet()?;
    triplet_lines(rep, t);
    check_equation(rep, &p.u, t, "equation")
}

fn class_section(p: &Problem, rep: &mut Report) -> Res<()> {
    rep.section("class");
    let c = compute_class(&p.u, p.triplet()?)?;
    class_lines(rep, &c);
    check_equation(rep, &p.u, &c.minimal_triplet, "minimal equation")
}

fn riccati_section(p: &Problem, rep: &mut Report) -> Res<()> {
    rep.section("riccati");
    let t = p.triplet()?;
    let data = cd_from_triplet(t, &p.u)?;
    data_lines(rep, &data);
    let res = qlh_core::riccati::riccati_residual_full(&p.u, &data)?;
    match (res.first_nonzero(), res.floor()) {
        (None, Some(f)) => rep.check(
            true,
            format!(
                "Riccati residual zero on powers z^{} down to z^{f}",
                res.top()
            ),
        ),
        (None, None) => rep.check(true, "Riccati residual identically zero"),
        (Some((k, v)), _) => rep.fail(format!("Riccati residual: coefficient of z^{k} is {v}")),
    }
    let rc = riccati_class(&data, &p.u)?;
    let cc = compute_class(&p.u, t)?.class_value;
    rep.check(
        rc == cc,
        format!("class from the Riccati equation {rc}, from the difference equation {cc}"),
    );
    Ok(())
}

fn structure_section(p: &Problem, rep: &mut Report) -> Res<()> {
    rep.section("structure");
    let c = compute_class(&p.u, p.triplet()?)?;
    let s = c.class_value.max(0) as usize;
    let t = &c.minimal_triplet;
    rep.line(format!("class {s}; coefficients of the minimal equation"));
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    let mut top = None;
    for n in s.max(1)..=20 {
        let lambda = match structure_coeffs(&p.u, t, n) {
            Ok(l) => l,
            Err(QlhError::InsufficientCoefficients(_) | QlhError::InsufficientOrder { .. }) => {
                break
            }
            Err(e) => return Err(e.into()),
        };
        if !band_holds(&lambda, n, s) {
            bad.push(n);
        }
        rows.extend(
            lambda
                .into_iter()
                .enumerate()
                .map(|(nu, v)| (vec![n as i64, nu as i64], v)),
        );
        top = Some(n);
    }
    let Some(top) = top else {
        return Err(input("order too small for any structure coefficient"));
    };
    rep.table("lambda_{n,nu}", &["n", "nu"], &rows);
    rep.check(
        bad.is_empty(),
        format!(
            "lambda_(n,nu) = 0 for nu < n - {s} and lambda_(n,n-{s}) != 0, {} <= n <= {top}{}",
            s.max(1),
            if bad.is_empty() {
                String::new()
            } else {
                format!(" (fails at n = {bad:?})")
            }
        ),
    );
    Ok(())
}

fn corecursive_section(p: &Problem, rep: &mut Report, mu: &Scalar) -> Res<()> {
    rep.section(&format!("co-recursive, mu = {mu}"));
    let t = p.triplet()?;
    let base = compute_class(&p.u, t)?.class_value;
    let data = cd_from_triplet(t, &p.u)?;
    let (tm, rm) = corecursive_triplet(t, &data, mu)?;
    let um = corecursive_moments(&p.u, mu)?;
    triplet_lines(rep, &tm);
    data_lines(rep, &rm);
    check_equation(rep, &um, &tm, "co-recursive equation")?;
    let c = compute_class(&um, &tm)?;
    rep.check(
        c.class_value == base,
        format!(
            "co-recursive class {} equals the class {base} of u",
            c.class_value
        ),
    );
    Ok(())
}

fn associated_section(p: &Problem, rep: &mut Report) -> Res<()> {
    rep.section("associated");
    let t = p.triplet()?;
    let base = compute_class(&p.u, t)?.class_value;
    let rec = recurrence_from_moments(&p.u)?;
    let data = cd_from_triplet(t, &p.u)?;
    let (t1, r1) = associated_triplet(&data, rec.beta(0)?, rec.gamma(1)?)?;
    let u1 = associated_moments(&rec, recurrence_order(&rec.shifted()))?;
    triplet_lines(rep, &t1);
    data_lines(rep, &r1);
    check_equation(rep, &u1, &t1, "associated equation")?;
    let c = compute_class(&u1, &t1)?;
    rep.check(
        c.class_value == base,
        format!(
            "associated class {} equals the class {base} of u",
            c.class_value
        ),
    );
    Ok(())
}

fn inverse_section(p: &Problem, rep: &mut Report) -> Res<()> {
    rep.section("inverse");
    let t = p.triplet()?;
    let base = compute_class(&p.u, t)?.class_value;
    let rec = recurrence_from_moments(&p.u)?;
    let (beta0, gamma1) = (rec.beta(0)?.clone(), rec.gamma(1)?.clone());
    let data = cd_from_triplet(t, &p.u)?;
    let (_, r1) = associated_triplet(&data, &beta0, &gamma1)?;
    let (tinv, _) = inverse_triplet(&r1, &gamma1, &beta0)?;
    let uinv = inverse_moments(&p.u)?;
    triplet_lines(rep, &tinv);
    check_equation(rep, &uinv, &tinv, "inverse equation")?;
    rep.line(format!(
        "class bound before reduction {}",
        tinv.class_bound()
    ));
    let c = compute_class(&uinv, &tinv)?;
    class_lines(rep, &c);
    check_equation(rep, &uinv, &c.minimal_triplet, "minimal inverse equation")?;
    rep.check(
        c.class_value <= base + 2,
        format!("inverse class {} is at most {base} + 2", c.class_value),
    );

    let u1 = associated_moments(&rec, recurrence_order(&rec.shifted()))?;
    let top = (uinv.order() - 2).min(u1.order());
    let ok = (0..=top).all(|n| uinv.moments()[n + 2] == -(&gamma1 * &u1.moments()[n]));
    rep.check(
        ok,
        format!("(u^-1)_(n+2) = -gamma_1 (u^(1))_n for n <= {top}"),
    );

    let cheb = recurrence_from_moments(&uinv)?;
    let general = inverse_recurrence(&p.u, false)?;
    let nb = cheb.betas.len().min(general.betas.len());
    let ng = cheb.gammas.len().min(general.gammas.len());
    rep.check(
        cheb.betas[..nb] == general.betas[..nb] && cheb.gammas[..ng] == general.gammas[..ng],
        format!(
            "connection formulas agree with the recovered recurrence ({nb} betas, {ng} gammas)"
        ),
    );
    if rec.betas.iter().all(Zero::is_zero) {
        let sym = inverse_recurrence(&p.u, true)?;
        let n = ng.min(sym.gammas.len());
        rep.check(
            cheb.gammas[..n] == sym.gammas[..n],
            format!("symmetric closed form agrees for {n} gammas"),
        );
    }
    let shown = 12.min(ng);
    let rows: Vec<_> = (0..shown.min(nb))
        .map(|k| (vec![k as i64], cheb.betas[k].clone()))
        .collect();
    rep.table("beta^(-)_n", &["n"], &rows);
    let rows: Vec<_> = (0..shown)
        .map(|k| (vec![k as i64 + 1], cheb.gammas[k].clone()))
        .collect();
    rep.table("gamma^(-)_n", &["n"], &rows);
    Ok(())
}

/// Runs a section; mathematical failures become FAIL lines, input errors
/// abort.
fn guarded(rep: &mut Report, f: impl FnOnce(&mut Report) -> Res<()>) -> Res<()> {
    match f(rep) {
        Err(CliError::Math(m)) => {
            rep.fail(m);
            Ok(())
        }
        other => other,
    }
}

fn run(cli: &Cli) -> Res<Report> {
    let p = load(&cli.opts)?;
    let mu = scalar_flag(&cli.opts.mu, "mu")?.unwrap_or_else(|| qlh_core::frac(1, 2));
    let mut rep = Report::new(cli.opts.format);
    rep.line(format!("fixture: {}", p.label));
    match &cli.command {
        Command::Residual => guarded(&mut rep, |r| residual_section(&p, r))?,
        Command::Class => guarded(&mut rep, |r| class_section(&p, r))?,
        Command::Riccati => guarded(&mut rep, |r| riccati_section(&p, r))?,
        Command::Structure => guarded(&mut rep, |r| structure_section(&p, r))?,
        Command::Transform { kind } => match kind {
            TransformKind::CoRecursive => guarded(&mut rep, |r| corecursive_section(&p, r, &mu))?,
            TransformKind::Associated => guarded(&mut rep, |r| associated_section(&p, r))?,
            TransformKind::Inverse => guarded(&mut rep, |r| inverse_section(&p, r))?,
        },
        Command::Report => {
            guarded(&mut rep, |r| residual_section(&p, r))?;
            guarded(&mut rep, |r| class_section(&p, r))?;
            guarded(&mut rep, |r| riccati_section(&p, r))?;
            guarded(&mut rep, |r| structure_section(&p, r))?;
            guarded(&mut rep, |r| corecursive_section(&p, r, &mu))?;
            guarded(&mut rep, |r| associated_section(&p, r))?;
            guarded(&mut rep, |r| inverse_section(&p, r))?;
        }
    }
    Ok(rep)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let rep = match run(&cli) {
        Ok(rep) => rep,
        Err(CliError::Input(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(CliError::Math(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(1);
        }
    };
    let failed = rep.failed();
    let text = rep.into_string();
    match &cli.opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
