use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use zcc::census::{run_census, unordered_tally, CensusSpec, Guards, Mode, WeightedCensus, Weighting};
use zcc::charpoly::{parse_charpoly, CharPolynomial, DegreeVector};
use zcc::ffield::FieldSpec;
use zcc::homology::{complement_betti, IntervalContribution};
use zcc::lattice::{build_lattice_with_limit, format_element, LatticeExport, NEqualsLattice, DEFAULT_LATTICE_LIMIT};
use zcc::rational::{self, Rational};
use zcc::stabkit::{first_prime_powers, interpolate_in_q, lefschetz_report, DegreeEntry, SweepConfig};
use zcc::verify::{verify_grid, VerifyGrid};

use crate::config::{pick, pick_num, FileConfig};
use crate::{Cli, Command, Format, GlobalOpts, SpaceArgs, EXIT_GUARD, EXIT_INVALID, EXIT_OK};

#[derive(Debug)]
pub enum CliError {
    Core(zcc::Error),
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_guard_or_inconsistency() => EXIT_GUARD,
            _ => EXIT_INVALID,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl From<zcc::Error> for CliError {
    fn from(e: zcc::Error) -> Self {
        CliError::Core(e)
    }
}

pub struct Outcome {
    pub body: String,
    pub stderr: Option<String>,
    pub code: u8,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, stderr: None, code: EXIT_OK }
    }
}

struct Ctx {
    format: Format,
    guards: Guards,
    lattice_limit: u32,
    timing: bool,
    file: FileConfig,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let file = FileConfig::load(cli.global.config.as_deref())?;
    setup_threads(&cli.global, &file)?;
    let format = match cli.global.format {
        Some(f) => f,
        None => match file.text("format").as_deref() {
            None | Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            Some(other) => return Err(CliError::Invalid(format!("unknown format {other:?}"))),
        },
    };
    let ctx = Ctx {
        format,
        guards: if cli.global.unsafe_guard { Guards::relaxed() } else { Guards::default() },
        lattice_limit: if cli.global.unsafe_guard { 63 } else { DEFAULT_LATTICE_LIMIT },
        timing: cli.global.timing,
        file,
    };
    match &cli.command {
        Command::Count { space, q, mode } => count(&ctx, space, q, mode),
        Command::Weighted { space, q, poly, mode, weighting } => weighted(&ctx, space, q, poly, mode, weighting),
        Command::Lattice { space, dim } => lattice(&ctx, space, *dim),
        Command::Betti { space, dim } => betti(&ctx, space, *dim),
        Command::Interpolate { samples, degree, space, poly, q_list } => {
            interpolate(&ctx, samples, *degree, space, poly, q_list)
        }
        Command::Report { m, n, d_list, q_list, polys, truncation } => {
            report(&ctx, *m, *n, d_list, q_list, polys, *truncation)
        }
        Command::Verify { max_m, max_total, n_list, q_list } => verify(&ctx, *max_m, *max_total, n_list, q_list),
    }
}

fn setup_threads(global: &GlobalOpts, file: &FileConfig) -> Result<(), CliError> {
    let threads = pick_num(global.threads, file, "threads")?;
    if let Some(t) = threads {
        if t == 0 {
            return Err(CliError::Invalid("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Invalid(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Invalid(format!("serializing output: {e}")))
}

fn require(value: Option<String>, flag: &str) -> Result<String, CliError> {
    value.ok_or_else(|| CliError::Invalid(format!("missing --{flag}")))
}

fn space(ctx: &Ctx, args: &SpaceArgs) -> Result<(DegreeVector, u32), CliError> {
    let d = DegreeVector::parse(&require(pick(&args.d, &ctx.file, "d"), "d")?)?;
    let n = pick_num(args.n, &ctx.file, "n")?.ok_or_else(|| CliError::Invalid("missing --n".into()))?;
    if n == 0 {
        return Err(CliError::Invalid("--n must be at least 1".into()));
    }
    Ok((d, n))
}

fn field(ctx: &Ctx, q: &Option<String>) -> Result<Arc<FieldSpec>, CliError> {
    let text = require(pick(q, &ctx.file, "q"), "q")?;
    Ok(Arc::new(FieldSpec::parse(&text, ctx.guards.field)?))
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Invalid(format!("{what}: cannot parse {s:?}")))
        })
        .collect()
}

fn census_output(ctx: &Ctx, mut census: WeightedCensus) -> Result<Outcome, CliError> {
    if !ctx.timing {
        census.elapsed_ms = None;
    }
    Ok(Outcome::ok(match ctx.format {
        Format::Json => json(&census)?,
        Format::Csv => {
            let mut header = WeightedCensus::csv_header().to_string();
            let mut row = census.csv_row();
            if let Some(ms) = census.elapsed_ms {
                header.push_str(",elapsed_ms");
                row.push_str(&format!(",{ms}"));
            }
            format!("{header}\n{row}\n")
        }
    }))
}

fn count(ctx: &Ctx, args: &SpaceArgs, q: &Option<String>, mode: &Option<String>) -> Result<Outcome, CliError> {
    let (d, n) = space(ctx, args)?;
    let field = field(ctx, q)?;
    let mode: Mode = pick(mode, &ctx.file, "mode").as_deref().unwrap_or("unordered").parse()?;
    let spec = CensusSpec::new(d, n, field, CharPolynomial::one(), mode)?;
    census_output(ctx, run_census(&spec, &ctx.guards)?)
}

fn weighted(
    ctx: &Ctx,
    args: &SpaceArgs,
    q: &Option<String>,
    poly: &Option<String>,
    mode: &Option<String>,
    weighting: &Option<String>,
) -> Result<Outcome, CliError> {
    let (d, n) = space(ctx, args)?;
    let field = field(ctx, q)?;
    let poly = parse_charpoly(&require(pick(poly, &ctx.file, "poly"), "poly")?, Some(d.m()))?;
    let mode: Mode = pick(mode, &ctx.file, "mode").as_deref().unwrap_or("unordered").parse()?;
    let weighting: Weighting = pick(weighting, &ctx.file, "weighting").as_deref().unwrap_or("coset").parse()?;
    if weighting == Weighting::Multiplicity && mode != Mode::Unordered {
        return Err(CliError::Invalid("--weighting applies to --mode unordered only".into()));
    }
    let spec = CensusSpec::new(d, n, field, poly, mode)?.with_weighting(weighting);
    census_output(ctx, run_census(&spec, &ctx.guards)?)
}

fn build(ctx: &Ctx, args: &SpaceArgs) -> Result<NEqualsLattice, CliError> {
    let (d, n) = space(ctx, args)?;
    Ok(build_lattice_with_limit(&d, n, ctx.lattice_limit)?)
}

fn dimension(ctx: &Ctx, dim: Option<u32>) -> Result<u32, CliError> {
    let dim = pick_num(dim, &ctx.file, "dim")?.unwrap_or(1);
    if dim == 0 {
        return Err(CliError::Invalid("--dim must be at least 1".into()));
    }
    Ok(dim)
}

fn lattice(ctx: &Ctx, args: &SpaceArgs, dim: Option<u32>) -> Result<Outcome, CliError> {
    let lattice = build(ctx, args)?;
    let export = LatticeExport::new(&lattice, dimension(ctx, dim)?)?;
    Ok(Outcome::ok(match ctx.format {
        Format::Json => json(&export)?,
        Format::Csv => {
            let mut out = String::from("index,blocks,block_count,mobius\n");
            for i in 0..lattice.len() {
                out.push_str(&format!(
                    "{i},\"{}\",{},{}\n",
                    format_element(&lattice, i),
                    lattice.element(i).block_count(),
                    export.mobius[i]
                ));
            }
            out
        }
    }))
}

#[derive(Serialize)]
struct BettiOutput {
    d: DegreeVector,
    n: u32,
    dim: u32,
    betti: Vec<usize>,
    contributions: Vec<IntervalContribution>,
}

fn betti(ctx: &Ctx, args: &SpaceArgs, dim: Option<u32>) -> Result<Outcome, CliError> {
    let lattice = build(ctx, args)?;
    let dim = dimension(ctx, dim)?;
    let result = complement_betti(&lattice, dim)?;
    let out = BettiOutput {
        d: lattice.degrees().clone(),
        n: lattice.threshold(),
        dim,
        betti: result.betti.ranks,
        contributions: result.contributions,
    };
    Ok(Outcome::ok(match ctx.format {
        Format::Json => json(&out)?,
        Format::Csv => {
            let mut s = String::from("degree,rank\n");
            for (i, b) in out.betti.iter().enumerate() {
                s.push_str(&format!("{i},{b}\n"));
            }
            s
        }
    }))
}

fn interpolate(
    ctx: &Ctx,
    samples: &Option<String>,
    degree: Option<usize>,
    args: &SpaceArgs,
    poly: &Option<String>,
    q_list: &Option<String>,
) -> Result<Outcome, CliError> {
    let degree = pick_num(degree, &ctx.file, "degree")?;
    let (points, degree) = match pick(samples, &ctx.file, "samples") {
        Some(text) => {
            let points = text
                .split(',')
                .map(|pair| {
                    let (q, v) = pair
                        .split_once(':')
                        .ok_or_else(|| CliError::Invalid(format!("sample {pair:?} is not q:value")))?;
                    let q: u64 = q
                        .trim()
                        .parse()
                        .map_err(|_| CliError::Invalid(format!("sample {pair:?}: bad q")))?;
                    Ok((q, rational::parse(v)?))
                })
                .collect::<Result<Vec<(u64, Rational)>, CliError>>()?;
            (points, degree)
        }
        None => {
            let (d, n) = space(ctx, args)?;
            let poly = parse_charpoly(pick(poly, &ctx.file, "poly").as_deref().unwrap_or("1"), Some(d.m()))?;
            let qs: Vec<u64> = match pick(q_list, &ctx.file, "q_list") {
                Some(t) => parse_list(&t, "--q-list")?,
                None => first_prime_powers(d.total() as usize + 2),
            };
            let mut points = Vec::new();
            for q in qs {
                let field = Arc::new(FieldSpec::parse(&q.to_string(), ctx.guards.field)?);
                let tally = unordered_tally(&d, n, &field, Weighting::Coset, &ctx.guards)?;
                points.push((q, tally.total(&poly)?));
            }
            (points, Some(degree.unwrap_or(d.total() as usize)))
        }
    };
    let fit = interpolate_in_q(&points, degree)?;
    Ok(Outcome::ok(match ctx.format {
        Format::Json => json(&fit)?,
        Format::Csv => {
            let mut s = String::from("power,coefficient\n");
            for (i, c) in fit.polynomial.coeffs().iter().enumerate() {
                s.push_str(&format!("{i},{}\n", rational::to_text(c)));
            }
            s
        }
    }))
}

fn report(
    ctx: &Ctx,
    m: Option<usize>,
    n: Option<u32>,
    d_list: &Option<String>,
    q_list: &Option<String>,
    polys: &Option<String>,
    truncation: Option<usize>,
) -> Result<Outcome, CliError> {
    let mut config: SweepConfig = match ctx.file.value() {
        Some(v) => serde_json::from_value(v.clone())
            .map_err(|e| CliError::Invalid(format!("sweep config: {e}")))?,
        None => SweepConfig {
            m: m.ok_or_else(|| CliError::Invalid("missing --m".into()))?,
            n: n.ok_or_else(|| CliError::Invalid("missing --n".into()))?,
            d_list: Vec::new(),
            q_list: Vec::new(),
            polys: vec!["1".into()],
            truncation: None,
        },
    };
    if let Some(m) = m {
        config.m = m;
    }
    if let Some(n) = n {
        config.n = n;
    }
    if let Some(text) = d_list {
        config.d_list = text
            .split(';')
            .map(|entry| {
                let v: Vec<u32> = parse_list(entry, "--d-list")?;
                Ok(if v.len() == 1 { DegreeEntry::Diagonal(v[0]) } else { DegreeEntry::Vector(v) })
            })
            .collect::<Result<_, CliError>>()?;
    }
    if let Some(text) = q_list {
        config.q_list = parse_list(text, "--q-list")?;
    }
    if let Some(text) = polys {
        config.polys = text.split(';').map(|s| s.trim().to_string()).collect();
    }
    if truncation.is_some() {
        config.truncation = truncation;
    }
    let report = lefschetz_report(&config, &ctx.guards)?;
    Ok(Outcome::ok(match ctx.format {
        Format::Json => json(&report)?,
        Format::Csv => report.coefficients_csv(),
    }))
}

fn verify(
    ctx: &Ctx,
    max_m: Option<usize>,
    max_total: Option<u32>,
    n_list: &Option<String>,
    q_list: &Option<String>,
) -> Result<Outcome, CliError> {
    let mut grid = VerifyGrid::default();
    if let Some(m) = pick_num(max_m, &ctx.file, "max_m")? {
        grid.max_m = m;
    }
    if let Some(t) = pick_num(max_total, &ctx.file, "max_total")? {
        grid.max_total = t;
    }
    if let Some(t) = pick(n_list, &ctx.file, "n_list") {
        grid.ns = parse_list(&t, "--n-list")?;
    }
    if let Some(t) = pick(q_list, &ctx.file, "q_list") {
        grid.qs = parse_list(&t, "--q-list")?;
    }
    let report = verify_grid(&grid, &ctx.guards)?;
    let body = match ctx.format {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut s = String::from("d,n,q,ordered,lattice,poly,unordered,burnside,pass\n");
            for c in &report.cases {
                let d: Vec<String> = c.d.entries().iter().map(u32::to_string).collect();
                for w in &c.weighted {
                    s.push_str(&format!(
                        "\"{}\",{},{},{},{},\"{}\",{},{},{}\n",
                        d.join(","),
                        c.n,
                        c.q,
                        c.ordered,
                        rational::to_text(&c.lattice),
                        w.poly,
                        rational::to_text(&w.unordered),
                        rational::to_text(&w.burnside),
                        c.ordered_pass && w.pass
                    ));
                }
            }
            s
        }
    };
    Ok(Outcome {
        body,
        stderr: Some(report.table()),
        code: if report.all_passed() { EXIT_OK } else { EXIT_GUARD },
    })
}
