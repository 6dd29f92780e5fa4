//! charkit: construct formal characters, apply spectral-flow and coset
//! transforms, and run the exact verification suites.
//!
//! Exit codes: 0 when every requested check passes, 1 when a comparison
//! reports a first difference (or a computation fails), 2 on usage
//! errors.

mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use charkit_core::admissible::{bgg_terms, malikov_terms, AdmissibleLabel};
use charkit_core::charlib::{
    character_from_json, character_to_json, chiral_verma, eta, fock_char, lattice_char,
    relaxed_verma, theta, verma_affine, verma_n2, Character, LevelContext, Side, Sign, ThetaForm,
};
use charkit_core::flow::{omega_minus, omega_plus, spectral_flow};
use charkit_core::numeric::{stabilization, EvalPoint, StabilizationReport};
use charkit_core::rat::Rat;
use charkit_core::series::{Rect, Window};
use charkit_core::suites;

#[derive(Parser)]
#[command(name = "charkit", version, about = "exact q-series characters for affine sl2 and the N=2 algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a character or special series and emit it as JSON
    Char(CharArgs),
    /// Spectral flow of a character read from a file
    Flow(FlowArgs),
    /// Coset transform of a character read from a file
    Coset(CosetArgs),
    /// Run a verification suite; exit 0 iff it passes
    Verify(VerifyArgs),
    /// Admissible-level resolution data
    Admissible(AdmissibleArgs),
    /// Floating evaluation of a truncated character at a complex point
    Eval(EvalArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Eta,
    Theta,
    AffineVerma,
    RelaxedVerma,
    N2Verma,
    ChiralVerma,
    AntichiralVerma,
    FockPlus,
    FockMinus,
    LatticePlus,
    LatticeMinus,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Affine,
    N2,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThetaFormArg {
    Sum,
    Product,
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    Rat::parse(s).map_err(|e| e.to_string())
}

#[derive(Args)]
struct CharArgs {
    /// Which character or series to construct
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Conformal weight h (exact rational, e.g. 1/2)
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    h: Option<Rat>,
    /// x-weight j (exact rational)
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    j: Option<Rat>,
    /// Level k (exact rational, k != -2)
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    k: Option<Rat>,
    /// Central charge c (alternative to --k on the N=2 side)
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    c: Option<Rat>,
    /// Reduced Fock charge w (exact rational)
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    w: Option<Rat>,
    /// Expansion form for theta
    #[arg(long, value_enum, default_value = "sum")]
    theta_form: ThetaFormArg,
    #[command(flatten)]
    rect: RectArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct RectArgs {
    /// Truncation order in q
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true, default_value = "6")]
    qmax: Rat,
    /// Lower q bound of the requested rectangle
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    qmin: Option<Rat>,
    /// Symmetric window half-width in each variable
    #[arg(long, default_value_t = 4)]
    window: i64,
}

impl RectArgs {
    fn rect(&self) -> Rect {
        let q_min = self.qmin.clone().unwrap_or_else(Rat::zero);
        Rect::new(
            q_min.min(self.qmax.clone()),
            self.qmax.clone(),
            vec![Window::symmetric(self.window)],
        )
    }
}

#[derive(Args)]
struct OutArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

impl OutArgs {
    fn emit(&self, json: String, text: String) -> Result<(), String> {
        let payload = match self.format {
            FormatArg::Json => json,
            FormatArg::Text => text,
        };
        match &self.out {
            None => {
                println!("{payload}");
                Ok(())
            }
            Some(path) => std::fs::write(path, payload + "\n").map_err(|e| e.to_string()),
        }
    }
}

#[derive(Args)]
struct FlowArgs {
    /// Algebra side of the character
    #[arg(long, value_enum)]
    side: SideArg,
    /// Flow amount (integer)
    #[arg(long, allow_hyphen_values = true)]
    theta: i64,
    /// Character JSON file
    #[arg(long = "in")]
    input: std::path::PathBuf,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct CosetArgs {
    /// plus: affine -> N=2; minus: N=2 -> affine
    #[arg(long, value_enum)]
    dir: DirArg,
    /// Character JSON file
    #[arg(long = "in")]
    input: std::path::PathBuf,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name
    #[arg(long)]
    suite: String,
    #[arg(long)]
    p: Option<i64>,
    #[arg(long)]
    pp: Option<i64>,
    #[arg(long)]
    r: Option<i64>,
    #[arg(long)]
    s: Option<i64>,
    #[arg(long, default_value_t = 6)]
    qmax: i64,
    #[arg(long, default_value_t = 4)]
    window: i64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct AdmissibleArgs {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    pp: i64,
    #[arg(long)]
    r: i64,
    #[arg(long)]
    s: i64,
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true, default_value = "6")]
    qmax: Rat,
    /// Which resolution to list
    #[arg(long, value_enum, default_value = "affine")]
    side: SideArg,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct EvalArgs {
    /// Character JSON file to evaluate
    #[arg(long = "in")]
    input: Option<std::path::PathBuf>,
    /// Construct the family by kind instead of reading a file
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    h: Option<Rat>,
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    j: Option<Rat>,
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    k: Option<Rat>,
    /// Evaluation point, q coordinate
    #[arg(long, allow_hyphen_values = true)]
    q: f64,
    /// Evaluation point, x coordinate
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    /// Comma-separated truncation orders, e.g. 20,30,40
    #[arg(long, value_delimiter = ',')]
    orders: Option<Vec<i64>>,
    #[command(flatten)]
    out: OutArgs,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("CHARKIT_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Char(args) => cmd_char(args).map(|_| true),
        Command::Flow(args) => cmd_flow(args).map(|_| true),
        Command::Coset(args) => cmd_coset(args).map(|_| true),
        Command::Verify(args) => cmd_verify(args),
        Command::Admissible(args) => cmd_admissible(args).map(|_| true),
        Command::Eval(args) => cmd_eval(args).map(|_| true),
    }
}

fn require<T>(v: Option<T>, flag: &str) -> Result<T, String> {
    v.ok_or_else(|| format!("missing required flag {flag}"))
}

fn level_context(k: Option<Rat>, c: Option<Rat>) -> Result<LevelContext, String> {
    match (k, c) {
        (Some(k), _) => LevelContext::new(k).map_err(|e| e.to_string()),
        (None, Some(c)) => LevelContext::from_central_charge(c).map_err(|e| e.to_string()),
        (None, None) => Err("missing required flag --k (or --c)".to_string()),
    }
}

fn build_character(
    kind: KindArg,
    h: Option<Rat>,
    j: Option<Rat>,
    k: Option<Rat>,
    c: Option<Rat>,
    w: Option<Rat>,
    rect: &Rect,
) -> Result<Character, String> {
    let err = |e: charkit_core::Error| e.to_string();
    match kind {
        KindArg::AffineVerma => {
            verma_affine(&level_context(k, c)?, &require(j, "--j")?, rect).map_err(err)
        }
        KindArg::RelaxedVerma => relaxed_verma(
            &level_context(k, c)?,
            &require(h, "--h")?,
            &require(j, "--j")?,
            rect,
        )
        .map_err(err),
        KindArg::N2Verma => verma_n2(
            &level_context(k, c)?,
            &require(h, "--h")?,
            &require(j, "--j")?,
            rect,
        )
        .map_err(err),
        KindArg::ChiralVerma => {
            chiral_verma(&level_context(k, c)?, &require(j, "--j")?, Sign::Plus, rect).map_err(err)
        }
        KindArg::AntichiralVerma => {
            chiral_verma(&level_context(k, c)?, &require(j, "--j")?, Sign::Minus, rect)
                .map_err(err)
        }
        KindArg::FockPlus => fock_char(Sign::Plus, &require(w, "--w")?, rect).map_err(err),
        KindArg::FockMinus => fock_char(Sign::Minus, &require(w, "--w")?, rect).map_err(err),
        KindArg::LatticePlus => lattice_char(Sign::Plus, rect).map_err(err),
        KindArg::LatticeMinus => lattice_char(Sign::Minus, rect).map_err(err),
        KindArg::Eta | KindArg::Theta => Err("eta and theta are plain series".to_string()),
    }
}

fn cmd_char(args: CharArgs) -> Result<(), String> {
    let rect = args.rect.rect();
    match args.kind {
        KindArg::Eta => {
            let s = eta(&rect).map_err(|e| e.to_string())?;
            args.out.emit(s.to_json(), render::series_text(&s))
        }
        KindArg::Theta => {
            let form = match args.theta_form {
                ThetaFormArg::Sum => ThetaForm::Sum,
                ThetaFormArg::Product => ThetaForm::Product,
            };
            let s = theta(&rect, form).map_err(|e| e.to_string())?;
            args.out.emit(s.to_json(), render::series_text(&s))
        }
        kind => {
            // lattice-minus needs the sunken rows inside the rectangle
            let rect = if matches!(kind, KindArg::LatticeMinus) && args.rect.qmin.is_none() {
                let w = args.rect.window;
                Rect::new(
                    -(&Rat::from_int(w * w) / &Rat::from_int(2)),
                    args.rect.qmax.clone(),
                    vec![Window::symmetric(w)],
                )
            } else {
                rect
            };
            let chr = build_character(kind, args.h, args.j, args.k, args.c, args.w, &rect)?;
            args.out
                .emit(character_to_json(&chr), render::character_text(&chr))
        }
    }
}

fn read_character(path: &std::path::Path) -> Result<Character, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    character_from_json(&text).map_err(|e| e.to_string())
}

fn cmd_flow(args: FlowArgs) -> Result<(), String> {
    let mut chr = read_character(&args.input)?;
    chr.side = match args.side {
        SideArg::Affine => Side::Affine,
        SideArg::N2 => Side::N2,
    };
    let flowed = spectral_flow(&chr, args.theta).map_err(|e| e.to_string())?;
    args.out
        .emit(character_to_json(&flowed), render::character_text(&flowed))
}

fn cmd_coset(args: CosetArgs) -> Result<(), String> {
    let chr = read_character(&args.input)?;
    let image = match args.dir {
        DirArg::Plus => omega_plus(&chr),
        DirArg::Minus => omega_minus(&chr),
    }
    .map_err(|e| e.to_string())?;
    args.out
        .emit(character_to_json(&image), render::character_text(&image))
}

fn cmd_verify(args: VerifyArgs) -> Result<bool, String> {
    let report = match args.suite.as_str() {
        "triple-product" => suites::triple_product(args.qmax, args.window),
        "roundtrip" => suites::roundtrip(args.qmax, args.window),
        "branching" => suites::branching(args.qmax, args.window),
        "flow-equivariance" => suites::flow_equivariance(args.qmax, args.window),
        "crosscheck" => {
            let label = AdmissibleLabel::new(
                require(args.p, "--p")?,
                require(args.pp, "--pp")?,
                require(args.r, "--r")?,
                require(args.s, "--s")?,
            )
            .map_err(|e| e.to_string())?;
            suites::crosscheck(&label, args.qmax, args.window)
        }
        other => return Err(format!("unknown suite `{other}`")),
    }
    .map_err(|e| e.to_string())?;
    args.out
        .emit(report.to_json(), render::suite_text(&report))?;
    Ok(report.pass())
}

fn cmd_admissible(args: AdmissibleArgs) -> Result<(), String> {
    let label = AdmissibleLabel::new(args.p, args.pp, args.r, args.s).map_err(|e| e.to_string())?;
    let terms = match args.side {
        SideArg::Affine => malikov_terms(&label, &args.qmax),
        SideArg::N2 => bgg_terms(&label, &args.qmax),
    };
    let mut json = format!(
        "{{\"label\":{{\"p\":{},\"pp\":{},\"r\":{},\"s\":{}}},\"k\":\"{}\",\"terms\":[",
        label.p,
        label.pp,
        label.r,
        label.s,
        label.level()
    );
    for (i, t) in terms.iter().enumerate() {
        if i > 0 {
            json.push(',');
        }
        json.push_str(&t.to_json());
    }
    json.push_str("]}");
    args.out.emit(json, render::terms_text(&terms))
}

fn cmd_eval(args: EvalArgs) -> Result<(), String> {
    let point = EvalPoint::real(args.q, args.x);
    let report: StabilizationReport = match (&args.input, args.kind) {
        (Some(path), None) => {
            let chr = read_character(path)?;
            let orders = args
                .orders
                .clone()
                .unwrap_or_else(|| vec![chr.body().validity().q_max.floor_i64().unwrap_or(0)]);
            let family = |o: i64| -> Result<Character, charkit_core::Error> {
                let v = chr.body().validity().clone();
                let rect = Rect::new(
                    v.q_min.clone(),
                    Rat::from_int(o).min(v.q_max.clone()),
                    v.windows.clone(),
                );
                chr.restrict_body(&rect)
            };
            stabilization(family, &point, &orders).map_err(|e| e.to_string())?
        }
        (None, Some(kind)) => {
            let orders = args.orders.clone().unwrap_or_else(|| vec![20, 30, 40]);
            let family = |o: i64| -> Result<Character, charkit_core::Error> {
                // divergent families get the window coupled to the order
                let w = match kind {
                    KindArg::RelaxedVerma | KindArg::LatticeMinus => 2 * o,
                    _ => (1..).find(|v| (v + 1) * (v + 1) > 2 * o).unwrap() + 1,
                };
                let rect = Rect::new(Rat::zero(), Rat::from_int(o), vec![Window::symmetric(w)]);
                build_character(
                    kind,
                    args.h.clone(),
                    args.j.clone(),
                    args.k.clone(),
                    None,
                    None,
                    &rect,
                )
                .map_err(charkit_core::Error::Msg)
            };
            stabilization(family, &point, &orders).map_err(|e| e.to_string())?
        }
        _ => return Err("eval needs exactly one of --in or --kind".to_string()),
    };
    let csv = report.to_csv();
    match &args.out.out {
        None => print!("{csv}"),
        Some(path) => std::fs::write(path, csv).map_err(|e| e.to_string())?,
    }
    Ok(())
}
