//! `lcolor`: generate instances, 3-color them, verify colorings and print
//! benchmark tables.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use layered_coloring::generators::{
    add_apex, apexed_decomposition, gen_grid, gen_kst_instance, gen_path, Instance,
};
use layered_coloring::pace::{
    parse_coloring, parse_gr, parse_layering, parse_lists, parse_td, write_coloring, write_gr,
    write_layering, write_td,
};
use layered_coloring::three_coloring::{three_color_with, ThreeColorConfig, ThreeColoring};
use layered_coloring::verification::{check_list_coloring, monochromatic_components};
use layered_coloring::{Graph, LayeredTreeDecomposition, Layering};

#[derive(Parser, Debug)]
#[command(
    name = "lcolor",
    version,
    about = "Clustered colorings of layered graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a generated instance as `.gr`, `.td` and `.layers` files.
    Gen(GenArgs),
    /// Run the 3-coloring pipeline and print a report.
    Color3(Color3Args),
    /// Print a CSV of clustering, bound and runtime over instance sizes.
    Bench(BenchArgs),
    /// Check a coloring against a clustering bound and optional lists.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Grid,
    Trigrid,
    Kst,
    ApexedGrid,
    Path,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct GenParams {
    /// Side length for grids, vertex count for paths.
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    s: usize,
    #[arg(long, default_value_t = 3)]
    t: usize,
    /// Number of apex vertices for `apexed-grid`.
    #[arg(long, default_value_t = 1)]
    apex: usize,
}

#[derive(Args, Debug)]
struct GenArgs {
    family: Family,
    #[command(flatten)]
    params: GenParams,
    /// Output path prefix; `.gr`, `.td`, `.layers` (and `.apex`) are appended.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["graph", "family"])))]
struct Color3Args {
    #[arg(long, requires_all = ["td", "layers"])]
    graph: Option<PathBuf>,
    #[arg(long)]
    td: Option<PathBuf>,
    #[arg(long)]
    layers: Option<PathBuf>,
    /// Generate the input instead of reading files.
    #[arg(long, conflicts_with_all = ["td", "layers"])]
    family: Option<Family>,
    #[command(flatten)]
    params: GenParams,
    /// Declared maximum degree; defaults to the measured one.
    #[arg(long)]
    delta: Option<usize>,
    /// Override of the constant in the 2-coloring bound.
    #[arg(long = "c-b")]
    c_b: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Report destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the coloring as `vertex color` lines.
    #[arg(long)]
    coloring_out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct BenchArgs {
    family: Family,
    /// Comma-separated sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[arg(long = "c-b")]
    c_b: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    coloring: PathBuf,
    #[arg(long)]
    lists: Option<PathBuf>,
    /// Maximum allowed clustering.
    #[arg(long)]
    k: usize,
}

fn generate(family: Family, p: &GenParams) -> Result<(Instance, Vec<usize>)> {
    let inst = match family {
        Family::Grid => gen_grid(p.n, false)?,
        Family::Trigrid => gen_grid(p.n, true)?,
        Family::Path => gen_path(p.n)?,
        Family::Kst => gen_kst_instance(p.s, p.t)?,
        Family::ApexedGrid => {
            let base = gen_grid(p.n, false)?;
            let (graph, z) = add_apex(&base.graph, p.apex)?;
            let td = apexed_decomposition(&base.ltd.td, &z);
            // apices stay unlayered
            let layering = Layering::new(graph.n(), base.ltd.layering.layers().to_vec())?;
            let max_degree = graph.max_degree();
            let inst = Instance {
                graph,
                ltd: LayeredTreeDecomposition::new(td, layering),
                max_degree,
            };
            return Ok((inst, z));
        }
    };
    Ok((inst, Vec::new()))
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn cmd_gen(a: &GenArgs) -> Result<()> {
    let (inst, z) = generate(a.family, &a.params)?;
    let n = inst.graph.n();
    write_file(&with_ext(&a.out, "gr"), &write_gr(&inst.graph))?;
    write_file(&with_ext(&a.out, "td"), &write_td(&inst.ltd.td, n))?;
    write_file(
        &with_ext(&a.out, "layers"),
        &write_layering(&inst.ltd.layering),
    )?;
    if !z.is_empty() {
        let ids: String = z.iter().map(|v| format!("{}\n", v + 1)).collect();
        write_file(&with_ext(&a.out, "apex"), &ids)?;
    }
    eprintln!(
        "wrote {} vertices, {} edges, {} bags (seed {})",
        n,
        inst.graph.num_edges(),
        inst.ltd.td.num_nodes(),
        a.seed
    );
    Ok(())
}

fn load_instance(
    graph: &Path,
    td: &Path,
    layers: &Path,
) -> Result<(Graph, LayeredTreeDecomposition)> {
    let g = parse_gr(&read_file(graph)?).with_context(|| graph.display().to_string())?;
    let (td, n) = parse_td(&read_file(td)?).with_context(|| td.display().to_string())?;
    if n != g.n() {
        bail!("decomposition declares {n} vertices, graph has {}", g.n());
    }
    let ly =
        parse_layering(&read_file(layers)?, g.n()).with_context(|| layers.display().to_string())?;
    Ok((g, LayeredTreeDecomposition::new(td, ly)))
}

#[derive(Serialize)]
struct Color3Report<'a> {
    vertices: usize,
    edges: usize,
    delta: usize,
    seed: u64,
    g: String,
    #[serde(flatten)]
    result: &'a ThreeColoring,
}

fn cmd_color3(a: &Color3Args) -> Result<()> {
    let (g, ltd) = match (&a.graph, a.family) {
        (Some(gr), None) => load_instance(gr, a.td.as_ref().unwrap(), a.layers.as_ref().unwrap())?,
        (None, Some(f)) => {
            let (inst, _) = generate(f, &a.params)?;
            (inst.graph, inst.ltd)
        }
        _ => bail!("give either --graph/--td/--layers or --family"),
    };
    let delta = a.delta.unwrap_or_else(|| g.max_degree());
    let cfg = ThreeColorConfig {
        c_b: a.c_b,
        ..Default::default()
    };
    let res = three_color_with(&g, &ltd, delta, &cfg)?;
    let report = Color3Report {
        vertices: g.n(),
        edges: g.num_edges(),
        delta,
        seed: a.seed,
        g: res.constants.g.to_string(),
        result: &res,
    };
    let text = match a.format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "vertices {} edges {} delta {} seed {}",
                g.n(),
                g.num_edges(),
                delta,
                a.seed
            )?;
            writeln!(s, "clustering {}", res.clustering)?;
            writeln!(s, "bound g {}", res.constants.g)?;
            for st in &res.stages {
                writeln!(
                    s,
                    "stage {}: layers {} groups {} fake_edges {} width {} degree {} clustering {} bound {}",
                    st.stage, st.layers, st.groups, st.fake_edges, st.max_width, st.max_degree,
                    st.clustering, st.bound
                )?;
            }
            s
        }
    };
    match &a.out {
        Some(p) => write_file(p, &text)?,
        None => print!("{text}"),
    }
    if let Some(p) = &a.coloring_out {
        write_file(p, &write_coloring(&res.coloring))?;
    }
    Ok(())
}

fn cmd_bench(a: &BenchArgs) -> Result<()> {
    if matches!(a.family, Family::Kst | Family::ApexedGrid) {
        bail!("family {:?} does not scale by size", a.family);
    }
    let rows: Vec<Result<String>> = a
        .sizes
        .par_iter()
        .map(|&size| {
            let params = GenParams {
                n: size,
                s: 2,
                t: 3,
                apex: 1,
            };
            let (inst, _) = generate(a.family, &params)?;
            let cfg = ThreeColorConfig {
                c_b: a.c_b,
                ..Default::default()
            };
            let start = Instant::now();
            let res = three_color_with(&inst.graph, &inst.ltd, inst.max_degree, &cfg)?;
            let secs = start.elapsed().as_secs_f64();
            Ok(format!(
                "{size},{},{},{secs:.6}\n",
                res.clustering, res.constants.g
            ))
        })
        .collect();
    let mut csv = String::from("size,clustering,bound,runtime_s\n");
    for row in rows {
        csv.push_str(&row?);
    }
    match &a.out {
        Some(p) => write_file(p, &csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    ok: bool,
    clustering: usize,
    k: usize,
    within_k: bool,
    list_conformant: Option<bool>,
    list_witness: Option<usize>,
    per_color_max: std::collections::BTreeMap<usize, usize>,
}

fn cmd_verify(a: &VerifyArgs) -> Result<bool> {
    let g = parse_gr(&read_file(&a.graph)?).with_context(|| a.graph.display().to_string())?;
    let coloring = parse_coloring(&read_file(&a.coloring)?, g.n())
        .with_context(|| a.coloring.display().to_string())?;
    let lists = match &a.lists {
        Some(p) => {
            Some(parse_lists(&read_file(p)?, g.n()).with_context(|| p.display().to_string())?)
        }
        None => None,
    };
    let rep = monochromatic_components(&g, &coloring)?;
    let conf = lists.as_ref().map(|l| check_list_coloring(&coloring, l));
    let within_k = rep.max_size <= a.k;
    let ok = within_k && conf.as_ref().is_none_or(|c| c.ok);
    let out = VerifyReport {
        ok,
        clustering: rep.max_size,
        k: a.k,
        within_k,
        list_conformant: conf.as_ref().map(|c| c.ok),
        list_witness: conf.and_then(|c| c.witness.map(|v| v + 1)),
        per_color_max: rep.per_color_max,
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Gen(a) => cmd_gen(a).map(|()| true),
        Command::Color3(a) => cmd_color3(a).map(|()| true),
        Command::Bench(a) => cmd_bench(a).map(|()| true),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
