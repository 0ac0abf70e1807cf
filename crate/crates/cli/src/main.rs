//! `thicklat`: noncrossing partitions, thick subcategories, function lattices
//! on finite spectra and Koszul homology, from the command line.
//!
//! Exit status is 0 on success, 1 when a requested verification fails and 2
//! on invalid input.

mod render;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use thicklat::koszul;
use thicklat::poly::PolyRing;
use thicklat::rep::TreeModule;
use thicklat::spec_model::{self, FunctionLattice};
use thicklat::{
    with_prime_field, DynkinType, FieldKind, FiniteField, FinitePoset, NcLattice, Quiver,
    ThickContext,
};

use render::{to_json, Echo, LatticeView};

#[derive(Parser)]
#[command(
    name = "thicklat",
    version,
    about = "Thick subcategories and noncrossing partitions of Dynkin quivers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Count,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Count => "count",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    All,
    Monotone,
}

#[derive(clap::Args)]
struct QuiverArgs {
    /// Dynkin type such as A3, D4 or E6.
    #[arg(long = "type", value_parser = parse_type)]
    dynkin: DynkinType,
    /// Arrows as `1>2,2>3` (1-based). Defaults to lower-to-higher.
    #[arg(long, default_value = "")]
    orientation: String,
}

impl QuiverArgs {
    fn quiver(&self) -> Result<Quiver> {
        Ok(Quiver::parse(self.dynkin, &self.orientation)?)
    }
}

#[derive(clap::Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Shorthand for `--format count`.
    #[arg(long)]
    count: bool,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn format(&self) -> Format {
        if self.count {
            Format::Count
        } else {
            self.format
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// The noncrossing-partition lattice NC(W, c) of a quiver.
    Nc {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Thick subcategories of the bounded derived category over GF(p).
    Thick {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// Prime field size, e.g. 2 or GF(5).
        #[arg(long, default_value = "2", value_parser = parse_field)]
        field: FieldKind,
        /// Check the bijection with NC(Q) and its order compatibility.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Functions from a finite spectrum into NC(Q).
    Specfn {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// point, chainN, antichainN, diamond, or @FILE.
        #[arg(long, default_value = "point")]
        poset: String,
        #[arg(long, value_enum, default_value = "monotone")]
        mode: Mode,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Writes figure1.{dot,json} and figure2.{dot,json}.
    Figures {
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Homology of a Koszul complex over ℚ[vars] at a rational point.
    Koszul {
        /// Comma-separated variable names.
        #[arg(long)]
        vars: String,
        /// Comma-separated generators, e.g. `x,y` or `x-1,y^2`.
        #[arg(long)]
        gens: String,
        /// Comma-separated coordinates, e.g. `0,1/2`.
        #[arg(long)]
        at: String,
        /// Tensor with a tree module, e.g. `A2:(1,1)`.
        #[arg(long)]
        module: Option<String>,
        /// Orientation for the module's quiver.
        #[arg(long, default_value = "")]
        orientation: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_type(s: &str) -> std::result::Result<DynkinType, String> {
    s.parse().map_err(|e: thicklat::Error| e.to_string())
}

fn parse_field(s: &str) -> std::result::Result<FieldKind, String> {
    FieldKind::parse(s)
        .ok_or_else(|| format!("'{s}' is not a supported field (a prime up to 97, or Q)"))
}

/// Text produced by a command and whether its verifications passed.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, result) = match &cli.command {
        Command::Nc { quiver, output } => (output.out.clone(), cmd_nc(quiver, output.format())),
        Command::Thick {
            quiver,
            field,
            verify,
            output,
        } => (
            output.out.clone(),
            cmd_thick(quiver, *field, *verify, output.format()),
        ),
        Command::Specfn {
            quiver,
            poset,
            mode,
            output,
        } => (
            output.out.clone(),
            cmd_specfn(quiver, poset, *mode, output.format()),
        ),
        Command::Figures { out } => (None, cmd_figures(out)),
        Command::Koszul {
            vars,
            gens,
            at,
            module,
            orientation,
            format,
            out,
        } => (
            out.clone(),
            cmd_koszul(vars, gens, at, module.as_deref(), orientation, *format),
        ),
    };
    match result.and_then(|o| emit(out.as_deref(), &o.text).map(|_| o.ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn quiver_echo(name: &str, q: &Quiver, format: Format) -> Echo {
    Echo::new(name)
        .arg("type", q.dynkin())
        .arg("orientation", q)
        .arg("format", format.name())
}

fn nc_view(nc: &NcLattice) -> LatticeView {
    let ids = (0..nc.len()).map(|i| nc.label(i)).collect();
    let ranks = (0..nc.len()).map(|i| nc.length(i)).collect();
    LatticeView::new(ids, ranks, nc.covers())
}

#[derive(Serialize)]
struct NcPayload {
    dynkin: String,
    orientation: String,
    coxeter: String,
    count: usize,
    catalan: u64,
    lattice: LatticeView,
}

fn nc_payload(q: &Quiver) -> Result<(NcPayload, String)> {
    let nc = NcLattice::for_quiver(q)?;
    let payload = NcPayload {
        dynkin: q.dynkin().to_string(),
        orientation: q.to_string(),
        coxeter: nc.label(nc.top()),
        count: nc.len(),
        catalan: thicklat::nc::w_catalan(q.dynkin()),
        lattice: nc_view(&nc),
    };
    let dot = payload.lattice.to_dot(&format!("NC_{}", q.dynkin()));
    Ok((payload, dot))
}

fn cmd_nc(args: &QuiverArgs, format: Format) -> Result<Outcome> {
    let q = args.quiver()?;
    let (payload, dot) = nc_payload(&q)?;
    Ok(Outcome::ok(match format {
        Format::Count => format!("{}\n", payload.count),
        Format::Dot => dot,
        Format::Json => to_json(&quiver_echo("nc", &q, format), payload),
    }))
}

#[derive(Serialize)]
struct Subcategory {
    id: String,
    objects: Vec<Vec<i64>>,
    simples: Vec<Vec<i64>>,
    noncrossing: String,
}

#[derive(Serialize)]
struct Verification {
    thick_count: usize,
    nc_count: usize,
    injective: bool,
    surjective: bool,
    order_preserving: bool,
    order_reflecting: bool,
    ok: bool,
    violations: Vec<String>,
}

#[derive(Serialize)]
struct ThickPayload {
    dynkin: String,
    orientation: String,
    field: String,
    count: usize,
    lattice: LatticeView,
    subcategories: Vec<Subcategory>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<Verification>,
}

fn dims_id(ds: &[Vec<i64>]) -> String {
    let parts: Vec<String> = ds
        .iter()
        .map(|d| {
            format!(
                "({})",
                d.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    format!("{{{}}}", parts.join(","))
}

fn thick_payload<F: FiniteField>(q: &Quiver, verify: bool) -> Result<ThickPayload> {
    let ctx = ThickContext::<F>::new(q)?;
    let nc = NcLattice::for_quiver(q)?;
    let (subcats, covers) = ctx.enumerate_with_covers();
    let mut items = Vec::with_capacity(subcats.len());
    for w in &subcats {
        let objects: Vec<Vec<i64>> = w.objects().iter().cloned().collect();
        let simples = ctx.simples_of(w);
        let image = ctx.it_map(nc.root_system(), w);
        let noncrossing = nc
            .index_of(&image)
            .map(|i| nc.label(i))
            .unwrap_or_else(|| "not noncrossing".into());
        items.push(Subcategory {
            id: dims_id(&objects),
            objects,
            simples,
            noncrossing,
        });
    }
    let lattice = LatticeView::new(
        items.iter().map(|s| s.id.clone()).collect(),
        items.iter().map(|s| s.simples.len()).collect(),
        &covers,
    );
    let verification = if verify {
        let r = ctx.verify_bijection()?;
        Some(Verification {
            thick_count: r.thick_count,
            nc_count: r.nc_count,
            injective: r.injective,
            surjective: r.surjective,
            order_preserving: r.order_preserving,
            order_reflecting: r.order_reflecting,
            ok: r.ok(),
            violations: r.violations,
        })
    } else {
        None
    };
    Ok(ThickPayload {
        dynkin: q.dynkin().to_string(),
        orientation: q.to_string(),
        field: ctx.field().to_string(),
        count: items.len(),
        lattice,
        subcategories: items,
        verification,
    })
}

fn cmd_thick(args: &QuiverArgs, field: FieldKind, verify: bool, format: Format) -> Result<Outcome> {
    let q = args.quiver()?;
    let p = match field {
        FieldKind::Prime(p) => p,
        FieldKind::Rationals => {
            bail!("thick subcategories are enumerated over finite fields only; pass --field p")
        }
    };
    let payload = with_prime_field!(p, F => thick_payload::<F>(&q, verify))
        .ok_or_else(|| anyhow!("unsupported field GF({p})"))??;
    let ok = payload.verification.as_ref().is_none_or(|v| v.ok);
    let text = match format {
        Format::Count => {
            let mut s = format!("{}\n", payload.count);
            if let Some(v) = &payload.verification {
                s.push_str(&format!(
                    "{} = {}, bijection {}\n",
                    v.thick_count,
                    v.nc_count,
                    if v.ok { "OK" } else { "FAILED" }
                ));
            }
            s
        }
        Format::Dot => payload.lattice.to_dot(&format!("thick_{}", q.dynkin())),
        Format::Json => to_json(
            &quiver_echo("thick", &q, format)
                .arg("field", field)
                .arg("verify", verify),
            payload,
        ),
    };
    Ok(Outcome { text, ok })
}

fn load_poset(spec: &str) -> Result<FinitePoset> {
    match spec.strip_prefix('@') {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading poset file {path}"))?;
            Ok(FinitePoset::parse(&text).with_context(|| format!("in poset file {path}"))?)
        }
        None => Ok(FinitePoset::builtin(spec)?),
    }
}

#[derive(Serialize)]
struct PosetView {
    points: Vec<String>,
    relations: Vec<[String; 2]>,
}

impl PosetView {
    fn new(p: &FinitePoset) -> Self {
        PosetView {
            points: p.names().to_vec(),
            relations: p
                .covers()
                .into_iter()
                .map(|(a, b)| [p.names()[a].clone(), p.names()[b].clone()])
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct SpecPayload {
    dynkin: String,
    orientation: String,
    poset: PosetView,
    mode: &'static str,
    count: usize,
    lattice: LatticeView,
}

fn function_view(l: &FunctionLattice) -> LatticeView {
    let ids = (0..l.len()).map(|i| l.label(i)).collect();
    let ranks = l
        .members()
        .iter()
        .map(|f| f.values().iter().map(|&v| l.nc().length(v)).sum())
        .collect();
    LatticeView::new(ids, ranks, l.covers())
}

fn spec_payload(q: &Quiver, poset: &FinitePoset, mode: Mode) -> Result<SpecPayload> {
    let nc = NcLattice::for_quiver(q)?;
    let l = match mode {
        Mode::All => spec_model::all_functions(poset, &nc)?,
        Mode::Monotone => spec_model::monotone_functions(poset, &nc)?,
    };
    Ok(SpecPayload {
        dynkin: q.dynkin().to_string(),
        orientation: q.to_string(),
        poset: PosetView::new(poset),
        mode: match mode {
            Mode::All => "all",
            Mode::Monotone => "monotone",
        },
        count: l.len(),
        lattice: function_view(&l),
    })
}

fn cmd_specfn(args: &QuiverArgs, poset_spec: &str, mode: Mode, format: Format) -> Result<Outcome> {
    let q = args.quiver()?;
    let poset = load_poset(poset_spec)?;
    if format == Format::Count {
        let nc = NcLattice::for_quiver(&q)?;
        let n = match mode {
            Mode::All => (nc.len() as u128)
                .checked_pow(poset.len() as u32)
                .ok_or_else(|| anyhow!("count overflows"))?,
            Mode::Monotone => spec_model::smashing_count(&poset, &nc),
        };
        return Ok(Outcome::ok(format!("{n}\n")));
    }
    let payload = spec_payload(&q, &poset, mode)?;
    Ok(Outcome::ok(match format {
        Format::Dot => {
            payload
                .lattice
                .to_dot(&format!("{}_{}_{}", payload.mode, q.dynkin(), poset_spec))
        }
        _ => to_json(
            &quiver_echo("specfn", &q, format)
                .arg("poset", poset_spec)
                .arg("mode", payload.mode),
            payload,
        ),
    }))
}

#[derive(Serialize)]
struct Figure2Payload {
    #[serde(flatten)]
    spec: SpecPayload,
    matches_reference: bool,
}

fn cmd_figures(dir: &Path) -> Result<Outcome> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let q = Quiver::standard(DynkinType::a(2));
    let (nc1, dot1) = nc_payload(&q)?;
    let echo1 = quiver_echo("figures", &q, Format::Json).arg("figure", 1);
    let spectrum = FinitePoset::parse("point eta\npoint x\neta<x\n")?;
    let nc = NcLattice::for_quiver(&q)?;
    let lattice = spec_model::monotone_functions(&spectrum, &nc)?;
    let matches =
        thicklat::poset::order_isomorphic(&lattice.hasse(), &spec_model::reference_two_point_a2());
    let spec = spec_payload(&q, &spectrum, Mode::Monotone)?;
    let dot2 = spec.lattice.to_dot("specialization_closed_A2");
    let echo2 = quiver_echo("figures", &q, Format::Json)
        .arg("figure", 2)
        .arg("poset", "eta<x")
        .arg("mode", "monotone");
    let files: BTreeMap<&str, String> = [
        ("figure1.dot", dot1),
        ("figure1.json", to_json(&echo1, &nc1)),
        ("figure2.dot", dot2),
        (
            "figure2.json",
            to_json(
                &echo2,
                Figure2Payload {
                    spec,
                    matches_reference: matches,
                },
            ),
        ),
    ]
    .into();
    let mut report = String::new();
    for (name, text) in &files {
        let path = dir.join(name);
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        report.push_str(&format!("wrote {}\n", path.display()));
    }
    report.push_str(&format!(
        "figure 1: {} elements, {} covers\n",
        nc1.count,
        nc1.lattice.edges.len()
    ));
    report.push_str(&format!(
        "figure 2: {} elements, {} covers, isomorphic to reference: {}\n",
        lattice.len(),
        lattice.covers().len(),
        if matches { "yes" } else { "no" }
    ));
    Ok(Outcome {
        text: report,
        ok: matches,
    })
}

/// Splits on commas outside parentheses, keeping each piece's byte offset.
fn split_top_level(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// `A2:(1,1)` or `A2:1,1`.
fn parse_module(spec: &str, orientation: &str) -> Result<TreeModule> {
    let (t, dims) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("--module expects TYPE:(d1,...,dn), got '{spec}'"))?;
    let dynkin: DynkinType = t.parse()?;
    let dims = dims.trim().trim_start_matches('(').trim_end_matches(')');
    let alpha: Vec<i64> = dims
        .split(',')
        .map(|d| d.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .with_context(|| format!("bad dimension vector in '{spec}'"))?;
    let q = Quiver::parse(dynkin, orientation)?;
    Ok(TreeModule::new(&q, &alpha)?)
}

#[derive(Serialize)]
struct DegreeDims {
    degree: i64,
    dim: usize,
}

#[derive(Serialize)]
struct DegreeVector {
    degree: i64,
    dims: Vec<i64>,
}

#[derive(Serialize)]
struct ModuleHomology {
    dynkin: String,
    orientation: String,
    dim: Vec<i64>,
    homology: Vec<DegreeVector>,
}

#[derive(Serialize)]
struct KoszulPayload {
    vars: Vec<String>,
    generators: Vec<String>,
    point: Vec<String>,
    vanishes_at_point: bool,
    ranks: Vec<DegreeDims>,
    homology: Vec<DegreeDims>,
    #[serde(skip_serializing_if = "Option::is_none")]
    module: Option<ModuleHomology>,
}

fn cmd_koszul(
    vars: &str,
    gens: &str,
    at: &str,
    module: Option<&str>,
    orientation: &str,
    format: Format,
) -> Result<Outcome> {
    let names: Vec<&str> = vars
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let ring = PolyRing::new(&names)?;
    let mut generators = Vec::new();
    for (offset, piece) in split_top_level(gens) {
        let f = ring.parse(piece).map_err(|e| match e {
            thicklat::Error::Parse { pos, msg } => {
                anyhow!("--gens: parse error at position {}: {msg}", offset + pos)
            }
            other => other.into(),
        })?;
        generators.push(f);
    }
    let point = koszul::parse_point(at).map_err(|e| anyhow!("--at: {e}"))?;
    let k = koszul::koszul_complex(&ring, &generators)?;
    let h = koszul::homology_dims(&koszul::evaluate(&k, &point)?)?;
    let degrees: Vec<i64> = k.degrees().collect();
    let module_h = match module {
        Some(spec) => {
            let m = parse_module(spec, orientation)?;
            let hs = koszul::koszul_tensor_module(&k, &m, &point)?;
            Some(ModuleHomology {
                dynkin: m.quiver().dynkin().to_string(),
                orientation: m.quiver().to_string(),
                dim: m.dim().clone(),
                homology: degrees
                    .iter()
                    .zip(hs)
                    .map(|(&degree, dims)| DegreeVector { degree, dims })
                    .collect(),
            })
        }
        None => None,
    };
    let payload = KoszulPayload {
        vars: ring.vars().to_vec(),
        generators: generators.iter().map(|f| ring.format(f)).collect(),
        point: point.iter().map(thicklat::field::format_rational).collect(),
        vanishes_at_point: koszul::vanishes_at(&generators, &point)?,
        ranks: degrees
            .iter()
            .map(|&degree| DegreeDims {
                degree,
                dim: k.rank(degree),
            })
            .collect(),
        homology: degrees
            .iter()
            .zip(&h)
            .map(|(&degree, &dim)| DegreeDims { degree, dim })
            .collect(),
        module: module_h,
    };
    let text = match format {
        Format::Count => {
            let join = |v: Vec<String>| v.join(",");
            let mut s = join(h.iter().map(usize::to_string).collect());
            s.push('\n');
            if let Some(m) = &payload.module {
                s.push_str(&join(
                    m.homology
                        .iter()
                        .map(|d| format!("({})", join(d.dims.iter().map(i64::to_string).collect())))
                        .collect(),
                ));
                s.push('\n');
            }
            s
        }
        Format::Dot => bail!("koszul has no DOT output; use --format json or count"),
        Format::Json => {
            let mut echo = Echo::new("koszul")
                .arg("vars", vars)
                .arg("gens", gens)
                .arg("at", at)
                .arg("format", format.name());
            if let Some(m) = module {
                echo = echo.arg("module", m).arg("orientation", orientation);
            }
            to_json(&echo, payload)
        }
    };
    Ok(Outcome::ok(text))
}
