use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use zerohecke::charmap::{characteristic, Mode, NBasis, NSymElement, QBasis, QSymElement, SBasis};
use zerohecke::coinvariant::{coinvariant_module, springer_module, AtomBasisModule};
use zerohecke::combinat::{Composition, Partition};
use zerohecke::flagvar::{flag_characteristic, flag_composition_factors, FlagFactorRow};
use zerohecke::hecke0::{projective_module, regular_module, simple_module};
use zerohecke::qtarith::{q_multinomial, ribbon_number_q, ribbon_number_t, BiPoly, QtContext};
use zerohecke::verify::{run_suite, Suite};
use zerohecke::{Error, Limits};

#[derive(Parser, Debug)]
#[command(name = "zerohecke", version, about = "Exact computations with the 0-Hecke algebra H_n(0)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,
    /// Largest n accepted by enumerations over S_n.
    #[arg(long, default_value_t = 12, global = true)]
    max_n: usize,
    /// Largest number of complete flags over F_q that may be enumerated.
    #[arg(long, default_value_t = 1000, global = true)]
    max_flags: u64,
    /// Seed for randomized searches and property checks.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ribbon numbers r_α, r_α(q), r_α(t) and r_α(q,t), with multinomials.
    Ribbon(RibbonArgs),
    /// Quasisymmetric characteristic of a module.
    Char(CharArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct RibbonArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Composition as comma-separated parts.
    #[arg(long)]
    alpha: String,
    /// Prime power for the (q,t) layer.
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Print only r_α(q,t) at the given q.
    #[arg(long)]
    qt: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModuleKind {
    Regular,
    Coinvariant,
    Projective,
    Simple,
    Springer,
    Flag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    #[value(name = "F")]
    F,
    #[value(name = "M")]
    M,
    #[value(name = "schur")]
    Schur,
    #[value(name = "m")]
    SymM,
    #[value(name = "s")]
    RibbonS,
    #[value(name = "h")]
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Plain,
    Q,
    T,
    Qt,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Plain => Mode::Plain,
            ModeArg::Q => Mode::Q,
            ModeArg::T => Mode::T,
            ModeArg::Qt => Mode::Qt,
        }
    }
}

#[derive(Args, Debug)]
struct CharArgs {
    #[arg(long, value_enum)]
    module: ModuleKind,
    #[arg(long)]
    n: Option<usize>,
    /// Composition for projective and simple modules.
    #[arg(long)]
    alpha: Option<String>,
    /// Hook partition for the Springer module.
    #[arg(long)]
    mu: Option<String>,
    /// Field size for the flag module.
    #[arg(long, default_value_t = 2)]
    q: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Plain)]
    mode: ModeArg,
    /// F, M (QSym); schur, m (Sym, symmetric results only); s, h (NSym, projective modules only).
    #[arg(long, value_enum, default_value_t = BasisArg::F)]
    basis: BasisArg,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Field size for the flag and chain-complex suites.
    #[arg(long, default_value_t = 2)]
    q: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Csv,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|_| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

/// Failure of a command, carrying its exit code.
enum Failure {
    Lib(Error),
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Lib(Error::Consistency(_)) => 1,
            Failure::Lib(Error::SizeLimit { .. }) => 2,
            Failure::Lib(Error::ModeUnavailable(_) | Error::Unsupported(_)) => 3,
            Failure::Lib(Error::InvalidArgument(_)) | Failure::Usage(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Usage(m) => format!("usage: {m}"),
            Failure::Verification(m) => m.clone(),
        }
    }
}

type CmdResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(4) } else { ExitCode::SUCCESS };
        }
    };
    let limits = Limits {
        max_n: cli.max_n,
        max_flags: cli.max_flags,
    };
    let out = match &cli.command {
        Command::Ribbon(a) => cmd_ribbon(a, cli.format, &limits),
        Command::Char(a) => cmd_char(a, cli.format, &limits),
        Command::Verify(a) => cmd_verify(a, cli.format, cli.seed, &limits),
    };
    match out {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(s)) => {
            print!("{s}");
            ExitCode::from(1)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn composition_arg(s: &str, n: Option<usize>) -> Result<Composition, Failure> {
    let a = Composition::parse(s).map_err(|e| Failure::Usage(e.to_string()))?;
    if let Some(n) = n {
        if a.size() != n {
            return Err(Failure::Usage(format!("{a} is not a composition of {n}")));
        }
    }
    Ok(a)
}

fn required_n(n: Option<usize>, module: &str) -> Result<usize, Failure> {
    n.ok_or_else(|| Failure::Usage(format!("--n is required for the {module} module")))
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> CmdResult {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn parts_of(p: &[usize]) -> String {
    p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parts(a: &Composition) -> String {
    parts_of(a.parts())
}

fn json_string(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json values serialize");
    s.push('\n');
    s
}

fn cmd_ribbon(a: &RibbonArgs, format: Format, limits: &Limits) -> CmdResult {
    let alpha = composition_arg(&a.alpha, a.n)?;
    let n = alpha.size();
    let ctx = QtContext::new(a.q)?;
    let rqt = ctx.ribbon_number_qt(&alpha, limits)?;
    // (json key, pretty label, value)
    let mut rows: Vec<(&str, &str, BiPoly)> = Vec::new();
    let mut count = None;
    if !a.qt {
        let rq = ribbon_number_q(&alpha, limits)?;
        let rt = ribbon_number_t(&alpha, limits)?;
        if rq.swap_variables() != rt {
            return Err(Error::Consistency(format!("r_{alpha}(q) and r_{alpha}(t) differ")).into());
        }
        count = Some(rq.eval(&1.into(), &1.into()));
        rows.push(("r_alpha_q", "r_alpha(q)", rq));
        rows.push(("r_alpha_t", "r_alpha(t)", rt));
        rows.push(("multinomial_q", "[n;alpha]_q", q_multinomial(n, &alpha)?));
        rows.push(("multinomial_qt", "(n;alpha)_{q,t}", ctx.qt_multinomial(n, &alpha)?));
    }
    rows.push(("r_alpha_qt", "r_alpha(q,t)", rqt));
    match format {
        Format::Pretty => {
            let mut s = String::new();
            writeln!(s, "alpha = {alpha}, n = {n}, q = {} for the (q,t) layer", a.q).unwrap();
            let width = rows.iter().map(|(_, k, _)| k.len()).max().unwrap_or(0);
            if let Some(c) = &count {
                writeln!(s, "{:<width$}  {c}", "r_alpha").unwrap();
            }
            for (_, k, v) in &rows {
                writeln!(s, "{k:<width$}  {v}").unwrap();
            }
            Ok(s)
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("alpha".into(), json!(alpha));
            obj.insert("n".into(), json!(n));
            obj.insert("q".into(), json!(a.q));
            if let Some(c) = &count {
                obj.insert("r_alpha".into(), json!(u64::try_from(c.clone()).expect("r_alpha fits in u64")));
            }
            for (k, _, v) in &rows {
                obj.insert((*k).into(), json!(v));
            }
            Ok(json_string(&Value::Object(obj)))
        }
        Format::Csv => {
            let mut out: Vec<Vec<String>> = Vec::new();
            if let Some(c) = &count {
                out.push(vec!["r_alpha".into(), c.to_string()]);
            }
            out.extend(rows.iter().map(|(k, _, v)| vec![k.to_string(), v.to_string()]));
            csv_string(&["quantity", "value"], out)
        }
    }
}

enum CharOutput {
    Q(QSymElement),
    N(NSymElement),
    S(zerohecke::charmap::SymElement),
}

impl CharOutput {
    fn to_json(&self) -> Value {
        match self {
            CharOutput::Q(e) => e.to_json(),
            CharOutput::N(e) => e.to_json(),
            CharOutput::S(e) => e.to_json(),
        }
    }

    fn pretty(&self) -> String {
        match self {
            CharOutput::Q(e) => e.to_string(),
            CharOutput::N(e) => e.to_string(),
            CharOutput::S(e) => e.to_string(),
        }
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let row = |k: String, c: &BiPoly| vec![k, c.to_string()];
        match self {
            CharOutput::Q(e) => e.terms().map(|(k, c)| row(parts(k), c)).collect(),
            CharOutput::N(e) => e.terms().map(|(k, c)| row(parts(k), c)).collect(),
            CharOutput::S(e) => e.terms().map(|(k, c)| row(parts_of(k.parts()), c)).collect(),
        }
    }
}

/// Specializes a bigraded characteristic to the requested mode.
fn specialize(ch: QSymElement, mode: Mode) -> QSymElement {
    match mode {
        Mode::Qt => ch,
        Mode::Q => ch.at_t_one(),
        Mode::T => ch.at_q_one(),
        Mode::Plain => ch.at_q_one().at_t_one(),
    }
}

fn atom_characteristic(m: &AtomBasisModule, mode: Mode, basis: BasisArg) -> Result<CharOutput, Failure> {
    match basis {
        BasisArg::RibbonS | BasisArg::H => {
            let ch = m.noncommutative_characteristic()?;
            let ch = match mode {
                Mode::T => ch,
                Mode::Plain => ch.map_coeffs(|c| c.subs_t(&1.into())),
                _ => return Err(Error::ModeUnavailable("ch is only t-graded".into()).into()),
            };
            let b = if basis == BasisArg::H { NBasis::H } else { NBasis::S };
            Ok(CharOutput::N(ch.in_basis(b)))
        }
        _ => Ok(CharOutput::Q(specialize(m.bigraded_characteristic()?, mode))),
    }
}

fn cmd_char(a: &CharArgs, format: Format, limits: &Limits) -> CmdResult {
    let mode: Mode = a.mode.into();
    let mut flag_rows: Option<Vec<FlagFactorRow>> = None;
    let out = match a.module {
        ModuleKind::Regular => {
            let n = required_n(a.n, "regular")?;
            limits_n(n, limits)?;
            if a.mode == ModeArg::T || a.mode == ModeArg::Qt {
                return Err(Error::ModeUnavailable("the regular module has no degree grading".into()).into());
            }
            CharOutput::Q(characteristic(&regular_module(n, limits)?, mode)?)
        }
        ModuleKind::Coinvariant => {
            let n = required_n(a.n, "coinvariant")?;
            limits_n(n, limits)?;
            atom_characteristic(&coinvariant_module(n)?, mode, a.basis)?
        }
        ModuleKind::Springer => {
            let mu = a
                .mu
                .as_deref()
                .ok_or_else(|| Failure::Usage("--mu is required for the springer module".into()))?;
            let mu = Partition::parse(mu).map_err(|e| Failure::Usage(e.to_string()))?;
            if a.n.is_some_and(|n| n != mu.size()) {
                return Err(Failure::Usage(format!("{mu} is not a partition of {}", a.n.unwrap())));
            }
            limits_n(mu.size(), limits)?;
            atom_characteristic(&springer_module(&mu)?, mode, a.basis)?
        }
        ModuleKind::Projective | ModuleKind::Simple => {
            let alpha = a
                .alpha
                .as_deref()
                .ok_or_else(|| Failure::Usage("--alpha is required for projective and simple modules".into()))?;
            let alpha = composition_arg(alpha, a.n)?;
            limits_n(alpha.size(), limits)?;
            let projective = a.module == ModuleKind::Projective;
            if matches!(a.basis, BasisArg::RibbonS | BasisArg::H) {
                if !projective {
                    return Err(Error::ModeUnavailable("ch is defined for projective modules only".into()).into());
                }
                if a.mode != ModeArg::Plain {
                    return Err(Error::ModeUnavailable("ch of P_alpha is ungraded".into()).into());
                }
                let s = NSymElement::basis_element(NBasis::S, alpha.clone());
                let b = if a.basis == BasisArg::H { NBasis::H } else { NBasis::S };
                CharOutput::N(s.in_basis(b))
            } else {
                let m = if projective { projective_module(&alpha, limits)? } else { simple_module(&alpha)? };
                CharOutput::Q(characteristic(&m, mode)?)
            }
        }
        ModuleKind::Flag => {
            let n = required_n(a.n, "flag")?;
            limits_n(n, limits)?;
            if a.mode != ModeArg::Plain {
                return Err(Error::ModeUnavailable("the flag module is ungraded".into()).into());
            }
            let ch = flag_characteristic(n, a.q, limits)?;
            flag_rows = Some(flag_composition_factors(n, a.q, limits)?);
            CharOutput::Q(ch)
        }
    };
    let out = match (out, a.basis) {
        (CharOutput::Q(e), BasisArg::F) => CharOutput::Q(e.in_basis(QBasis::F)),
        (CharOutput::Q(e), BasisArg::M) => CharOutput::Q(e.in_basis(QBasis::M)),
        (CharOutput::Q(e), BasisArg::Schur | BasisArg::SymM) => {
            if !e.is_symmetric() {
                return Err(Error::ModeUnavailable("the characteristic is not symmetric".into()).into());
            }
            let b = if a.basis == BasisArg::Schur { SBasis::Schur } else { SBasis::M };
            CharOutput::S(e.to_sym()?.in_basis(b)?)
        }
        (CharOutput::Q(_), _) => {
            return Err(Error::ModeUnavailable("ch is available for projective and atom-basis modules only".into()).into())
        }
        (other, _) => other,
    };
    match format {
        Format::Pretty => {
            let mut s = String::new();
            writeln!(s, "{}", out.pretty()).unwrap();
            if let Some(rows) = &flag_rows {
                writeln!(s).unwrap();
                writeln!(s, "{:<12} {:>12} {:>12} {:>20}", "alpha", "dim_Q_alpha", "multiplicity", "predicted_r_alpha_q")
                    .unwrap();
                for r in rows {
                    writeln!(
                        s,
                        "{:<12} {:>12} {:>12} {:>20}",
                        r.alpha.to_string(),
                        r.dim_q_alpha,
                        r.multiplicity,
                        r.predicted_r_alpha_q
                    )
                    .unwrap();
                }
            }
            Ok(s)
        }
        Format::Json => Ok(json_string(&out.to_json())),
        Format::Csv => match &flag_rows {
            Some(rows) => csv_string(
                &["alpha", "dim_Q_alpha", "multiplicity", "predicted_r_alpha_q"],
                rows.iter().map(|r| {
                    vec![
                        parts(&r.alpha),
                        r.dim_q_alpha.to_string(),
                        r.multiplicity.to_string(),
                        r.predicted_r_alpha_q.to_string(),
                    ]
                }),
            ),
            None => csv_string(&["index", "coeff"], out.rows()),
        },
    }
}

fn limits_n(n: usize, limits: &Limits) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    if n > limits.max_n {
        return Err(Error::SizeLimit {
            what: "n",
            value: n as u64,
            cap: limits.max_n as u64,
        }
        .into());
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, format: Format, seed: u64, limits: &Limits) -> CmdResult {
    limits_n(a.n, limits)?;
    let r = run_suite(a.suite, a.n, a.q, seed, limits)?;
    let s = match format {
        Format::Json => json_string(&serde_json::to_value(&r).expect("reports serialize")),
        Format::Csv => csv_string(
            &["suite", "n", "q", "passed", "checks", "failures"],
            [vec![
                r.suite.name().to_string(),
                r.n.to_string(),
                r.q.map(|q| q.to_string()).unwrap_or_default(),
                r.passed.to_string(),
                r.checks.to_string(),
                r.failures.len().to_string(),
            ]],
        )?,
        Format::Pretty => {
            let mut s = String::new();
            let q = r.q.map(|q| format!(", q = {q}")).unwrap_or_default();
            writeln!(
                s,
                "{} {} (n = {}{q}): {} checks, {} failures",
                if r.passed { "PASS" } else { "FAIL" },
                r.suite.name(),
                r.n,
                r.checks,
                r.failures.len()
            )
            .unwrap();
            for f in &r.failures {
                writeln!(s, "  failure: {f}").unwrap();
            }
            for d in &r.details {
                writeln!(s, "  {d}").unwrap();
            }
            s
        }
    };
    if r.passed {
        Ok(s)
    } else {
        Err(Failure::Verification(s))
    }
}
