//! `gwitt`: Witt vectors for finite groups and Tambara bispans from the shell.
//!
//! Exit status is 0 on success, 1 when a `verify` suite has a failing check
//! and 2 for usage or input errors. Errors are a single line on stderr that
//! starts with a code such as `E_PARSE`.

mod cache;
mod formats;
mod render;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::builder::PossibleValuesParser;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use gwitt_core::bispan::{compose, evaluate, VirtualBispan};
use gwitt_core::error::{Error, Result};
use gwitt_core::group::make_group;
use gwitt_core::gset::GSet;
use gwitt_core::poly::{IntPoly, PolyJson};
use gwitt_core::ring::{Integers, IntegersMod, PolyRing};
use gwitt_core::subgroups::SubgroupTable;
use gwitt_core::teichmuller::{rho, teichmuller_t};
use gwitt_core::verify::{run_suite, SUITES};
use gwitt_core::witt::WittVector;
use serde::{Deserialize, Serialize};

use formats::{
    check_group, emit_all, load_bispan, parse_all, read_json, AssignmentJson, GhostJson, JsonGRing, JsonRing, RingSpec,
    TeichmullerJson, WittVectorJson,
};

const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser)]
#[command(name = "gwitt", version, about = "Witt vectors for finite groups and Tambara's bispan category")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Group spec: C<n>, D<n> (order 2n), S<n>, products `A x B`, `perm:...` or `cayley:<file>`
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Unary {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args)]
struct Binary {
    #[command(flatten)]
    common: Common,
    /// Give exactly twice; the first file is the left operand
    #[arg(long = "input", required = true)]
    inputs: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Table of marks
    Marks(Common),
    /// Conjugacy classes of subgroups
    Subgroups(Common),
    /// Universal sum, product and negation polynomials
    WittPolys(Common),
    /// Witt vector arithmetic
    #[command(subcommand)]
    Witt(WittCmd),
    /// Arithmetic in the bispan category
    #[command(subcommand)]
    Bispan(BispanCmd),
    /// The Teichmüller map into U(X, G/G) and its inverse
    #[command(subcommand)]
    Teichmuller(TeichmullerCmd),
    /// Run a verification suite; exits 1 if any check fails
    Verify {
        #[arg(value_parser = PossibleValuesParser::new(SUITES))]
        suite: String,
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum WittCmd {
    Add(Binary),
    Mul(Binary),
    Neg(Unary),
    Ghost(Unary),
}

#[derive(Subcommand)]
enum BispanCmd {
    /// `left ∘ right`: apply the second input first
    Compose(Binary),
    Add(Binary),
    Mul(Binary),
    /// Canonical form of a bispan or of a combination of bispans
    Canon(Unary),
    /// Evaluate on an equivariant assignment; defaults to the generic one in Z[X]
    Eval {
        #[command(flatten)]
        args: Unary,
        #[arg(long)]
        values: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TeichmullerCmd {
    T(Unary),
    Rho(Unary),
}

/// Why a run stopped short.
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Output {
    text: String,
    status: u8,
}

fn render<T: Serialize>(format: Format, json: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(json).expect("output serializes") + "\n",
        Format::Text => text(),
    }
}

fn ok(text: String) -> std::result::Result<Output, Failure> {
    Ok(Output { text, status: 0 })
}

fn load_table(spec: &str) -> Result<Arc<SubgroupTable>> {
    Ok(Arc::new(SubgroupTable::new(make_group(spec)?)?))
}

fn two(inputs: &[PathBuf]) -> std::result::Result<(&Path, &Path), Failure> {
    match inputs {
        [a, b] => Ok((a, b)),
        _ => Err(Failure::Usage(format!("expected exactly two --input files, got {}", inputs.len()))),
    }
}

#[derive(Serialize, Deserialize)]
struct MarksJson {
    group_spec: String,
    labels: Vec<String>,
    marks: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct SubgroupsJson {
    group_spec: String,
    labels: Vec<String>,
    #[serde(flatten)]
    table: gwitt_core::subgroups::SubgroupTableJson,
}

#[derive(Clone, Copy)]
enum WittOp {
    Add,
    Mul,
    Neg,
    Ghost,
}

fn witt_in<R: JsonRing>(
    ring: &R,
    spec: RingSpec,
    table: &Arc<SubgroupTable>,
    op: WittOp,
    inputs: &[WittVectorJson],
    format: Format,
) -> Result<String> {
    let vecs = inputs
        .iter()
        .map(|v| WittVector::new(table.clone(), parse_all(ring, &v.coords)?))
        .collect::<Result<Vec<_>>>()?;
    if !matches!(op, WittOp::Ghost) {
        cache::polys(table)?;
    }
    let values = match op {
        WittOp::Add => vecs[0].add(&vecs[1], ring)?.into_coords(),
        WittOp::Mul => vecs[0].mul(&vecs[1], ring)?.into_coords(),
        WittOp::Neg => vecs[0].neg(ring)?.into_coords(),
        WittOp::Ghost => {
            let ghost = vecs[0].ghost(ring);
            let json = GhostJson {
                group_spec: table.group().spec().into(),
                ring: spec.to_string(),
                ghost: emit_all(ring, &ghost),
            };
            let shown: Vec<String> = ghost.iter().map(|e| ring.show(e)).collect();
            return Ok(render(format, &json, || render::labelled(table, &shown)));
        }
    };
    let json = WittVectorJson {
        group_spec: table.group().spec().into(),
        ring: spec.to_string(),
        coords: emit_all(ring, &values),
    };
    let shown: Vec<String> = values.iter().map(|e| ring.show(e)).collect();
    Ok(render(format, &json, || render::labelled(table, &shown)))
}

fn witt(op: WittOp, common: &Common, paths: &[&Path]) -> std::result::Result<Output, Failure> {
    let table = load_table(&common.group)?;
    let inputs = paths.iter().map(|p| read_json::<WittVectorJson>(p)).collect::<Result<Vec<_>>>()?;
    for v in &inputs {
        check_group(&table, &v.group_spec)?;
    }
    let spec: RingSpec = inputs[0].ring.parse()?;
    for v in &inputs[1..] {
        if v.ring.parse::<RingSpec>()? != spec {
            return Err(Error::ObjectMismatch(format!("rings {} and {} differ", inputs[0].ring, v.ring)).into());
        }
    }
    let text = match spec {
        RingSpec::Z => witt_in(&Integers, spec, &table, op, &inputs, common.format)?,
        RingSpec::ZMod(n) => witt_in(&IntegersMod::new(n), spec, &table, op, &inputs, common.format)?,
        RingSpec::Poly => witt_in(&PolyRing::new(), spec, &table, op, &inputs, common.format)?,
    };
    ok(text)
}

fn show_bispan(u: &VirtualBispan, format: Format) -> Result<String> {
    let json = u.to_json()?;
    Ok(render(format, &json, || render::bispan(u)))
}

fn eval_in<R: JsonGRing>(
    ring: &R,
    spec: RingSpec,
    u: &VirtualBispan,
    phi: &[R::Elem],
    format: Format,
) -> Result<String> {
    let out = evaluate(u, ring, phi)?;
    let json = AssignmentJson { ring: spec.to_string(), values: emit_all(ring, &out) };
    let text = || out.iter().enumerate().map(|(y, v)| format!("{y}  {}\n", ring.show(v))).collect();
    Ok(render(format, &json, text))
}

fn bispan(cmd: &BispanCmd) -> std::result::Result<Output, Failure> {
    match cmd {
        BispanCmd::Compose(b) | BispanCmd::Add(b) | BispanCmd::Mul(b) => {
            let (l, r) = two(&b.inputs)?;
            let table = load_table(&b.common.group)?;
            let (lu, ru) = (load_bispan(l, &table)?, load_bispan(r, &table)?);
            let out = match cmd {
                BispanCmd::Compose(_) => compose(&lu, &ru)?,
                BispanCmd::Add(_) => lu.add(&ru)?,
                _ => lu.mul(&ru)?,
            };
            ok(show_bispan(&out, b.common.format)?)
        }
        BispanCmd::Canon(a) => {
            let table = load_table(&a.common.group)?;
            ok(show_bispan(&load_bispan(&a.input, &table)?, a.common.format)?)
        }
        BispanCmd::Eval { args, values } => {
            let table = load_table(&args.common.group)?;
            let u = load_bispan(&args.input, &table)?;
            let format = args.common.format;
            let text = match values {
                None => {
                    let phi: Vec<IntPoly> = (0..u.source().size()).map(IntPoly::var).collect();
                    eval_in(&PolyRing::over_gset(u.source().clone()), RingSpec::Poly, &u, &phi, format)?
                }
                Some(path) => {
                    let a: AssignmentJson = read_json(path)?;
                    match a.ring.parse()? {
                        RingSpec::Z => eval_in(&Integers, RingSpec::Z, &u, &parse_all(&Integers, &a.values)?, format)?,
                        RingSpec::ZMod(n) => {
                            let ring = IntegersMod::new(n);
                            eval_in(&ring, RingSpec::ZMod(n), &u, &parse_all(&ring, &a.values)?, format)?
                        }
                        RingSpec::Poly => {
                            let ring = PolyRing::over_gset(u.source().clone());
                            eval_in(&ring, RingSpec::Poly, &u, &parse_all(&ring, &a.values)?, format)?
                        }
                    }
                }
            };
            ok(text)
        }
    }
}

fn teichmuller(cmd: &TeichmullerCmd) -> std::result::Result<Output, Failure> {
    match cmd {
        TeichmullerCmd::T(a) => {
            let table = load_table(&a.common.group)?;
            let input: TeichmullerJson = read_json(&a.input)?;
            check_group(&table, &input.group_spec)?;
            let x = Arc::new(GSet::from_json(&input.x, &table)?);
            let coords = input.coords.iter().map(IntPoly::try_from).collect::<Result<Vec<_>>>()?;
            ok(show_bispan(&teichmuller_t(&table, &x, &coords)?, a.common.format)?)
        }
        TeichmullerCmd::Rho(a) => {
            let table = load_table(&a.common.group)?;
            let u = load_bispan(&a.input, &table)?;
            let coords = rho(&u)?;
            let json = TeichmullerJson {
                group_spec: table.group().spec().into(),
                x: u.source().to_json(&table),
                coords: coords.iter().map(PolyJson::from).collect(),
            };
            let shown: Vec<String> = coords.iter().map(ToString::to_string).collect();
            ok(render(a.common.format, &json, || render::labelled(&table, &shown)))
        }
    }
}

/// Runs the parsed command and returns what to print plus the exit status.
fn run(cli: &Cli) -> std::result::Result<(Output, Option<&Path>), Failure> {
    Ok(match &cli.cmd {
        Cmd::Marks(c) => {
            let table = load_table(&c.group)?;
            let json = MarksJson {
                group_spec: table.group().spec().into(),
                labels: table.labels().to_vec(),
                marks: table.marks().to_vec(),
            };
            (ok(render(c.format, &json, || render::marks(&table)))?, common_out(c))
        }
        Cmd::Subgroups(c) => {
            let table = load_table(&c.group)?;
            let json = SubgroupsJson {
                group_spec: table.group().spec().into(),
                labels: table.labels().to_vec(),
                table: table.to_json(),
            };
            (ok(render(c.format, &json, || render::subgroups(&table)))?, common_out(c))
        }
        Cmd::WittPolys(c) => {
            let table = load_table(&c.group)?;
            let polys = cache::polys(&table)?;
            (ok(render(c.format, &polys.to_json(&table), || render::witt_polys(&table, &polys)))?, common_out(c))
        }
        Cmd::Witt(w) => match w {
            WittCmd::Add(b) | WittCmd::Mul(b) => {
                let (l, r) = two(&b.inputs)?;
                let op = if matches!(w, WittCmd::Add(_)) { WittOp::Add } else { WittOp::Mul };
                (witt(op, &b.common, &[l, r])?, common_out(&b.common))
            }
            WittCmd::Neg(a) | WittCmd::Ghost(a) => {
                let op = if matches!(w, WittCmd::Neg(_)) { WittOp::Neg } else { WittOp::Ghost };
                (witt(op, &a.common, &[&a.input])?, common_out(&a.common))
            }
        },
        Cmd::Bispan(b) => {
            let c = match b {
                BispanCmd::Compose(x) | BispanCmd::Add(x) | BispanCmd::Mul(x) => &x.common,
                BispanCmd::Canon(x) | BispanCmd::Eval { args: x, .. } => &x.common,
            };
            (bispan(b)?, common_out(c))
        }
        Cmd::Teichmuller(t) => {
            let (TeichmullerCmd::T(a) | TeichmullerCmd::Rho(a)) = t;
            (teichmuller(t)?, common_out(&a.common))
        }
        Cmd::Verify { suite, group, seed, format, output } => {
            let report = run_suite(suite, group.as_deref(), *seed)?;
            let status = if report.passed { 0 } else { 1 };
            let text = render(*format, &report, || format!("{report}\n"));
            (Output { text, status }, output.as_deref())
        }
    })
}

fn common_out(c: &Common) -> Option<&Path> {
    c.output.as_deref()
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e)
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) =>
        {
            let _ = e.print();
            return ExitCode::from(if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 });
        }
        Err(e) => {
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("E_USAGE: {}", one_line(first));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok((out, path)) => {
            let written = match path {
                Some(p) => std::fs::write(p, &out.text).map_err(|e| format!("{}: {e}", p.display())),
                None => std::io::stdout().write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("E_IO: {}", one_line(&e));
                return ExitCode::from(2);
            }
            ExitCode::from(out.status)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("E_USAGE: {}", one_line(&msg));
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("{}: {}", e.code(), one_line(&e.to_string()));
            ExitCode::from(2)
        }
    }
}
