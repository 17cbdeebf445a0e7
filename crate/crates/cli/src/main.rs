use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use matchstick::assemble::{
    adapter_mirror, chain_assemble, make_adapter, ring_arc, ring_assemble, SeamOrientation,
};
use matchstick::fixtures::{fixture_names, load_fixture, raw_fixture};
use matchstick::graph::meta_keys;
use matchstick::io::{graph_to_string, read_graph, stored_precision, write_graph};
use matchstick::linkage::{
    build_template, continue_in_n, graph_angles, solve, solved_base, AngleReadout, RingSpec,
    SolveResult,
};
use matchstick::reference::{reference, ReferenceColumn};
use matchstick::scalar::{precision_from_env, set_precision, DEFAULT_PRECISION, MIN_PRECISION};
use matchstick::search::{format_table, minimal_n_search, SearchCriteria};
use matchstick::svg::{export_svg, SvgOptions};
use matchstick::verify::{verify, ToleranceProfile};
use matchstick::{Error, Scalar, UnitGraph};

const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

/// Build and certify 4-regular matchstick graphs.
///
/// Inputs named FILE accept a graph file path or `fixture:NAME`.
#[derive(Parser, Debug)]
#[command(name = "msf", version)]
struct Cli {
    /// Significant decimal digits (overrides MSF_PRECISION and the input file's precision).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(MIN_PRECISION as i64..))]
    precision: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Built-in figure tables.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
    /// Solve a template's closure at n and write the solved subgraph.
    Solve {
        #[arg(long, value_enum)]
        template: Template,
        #[arg(long)]
        n: u32,
        /// Max-norm residual target (default 10^(10-p)).
        #[arg(long)]
        tol: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Angle readout with deltas against the reference values.
    Angles {
        file: String,
        /// Reference column (default: the file's template).
        #[arg(long, value_enum)]
        template: Option<Template>,
    },
    /// Build a ring from a solved subgraph, or a chain of pieces.
    Assemble {
        /// Number of copies around the apex.
        #[arg(long, conflicts_with = "chain", requires = "file")]
        ring: Option<u32>,
        /// Comma-separated pieces: `[g4:|g5:|arcK:]SOURCE[@rev]`.
        #[arg(long, required_unless_present = "ring")]
        chain: Option<String>,
        file: Option<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Certify a graph; the exit code names the first failing verdict.
    Verify {
        file: String,
        #[arg(long, value_enum)]
        profile: Option<Profile>,
        /// Write the full report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Find the smallest n whose ring passes certification.
    Search {
        #[arg(long, value_enum)]
        template: Template,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long, value_enum, default_value = "solved")]
        profile: Profile,
        /// Ignore the planarity verdict.
        #[arg(long)]
        no_planarity: bool,
    },
    /// Draw a graph as SVG with magnified insets.
    Svg {
        file: String,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 4)]
        insets: usize,
        /// Pixels per unit length.
        #[arg(long, default_value_t = 40.0)]
        scale: f64,
    },
}

#[derive(Subcommand, Debug)]
enum FixtureAction {
    List,
    /// Print the merged fixture in graph file format.
    Show {
        name: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Template {
    G1,
    G2,
}

impl Template {
    fn name(self) -> &'static str {
        match self {
            Template::G1 => "g1",
            Template::G2 => "g2",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Profile {
    Solved,
    Fixture,
    Sketch,
}

impl Profile {
    fn tolerances(self) -> ToleranceProfile {
        match self {
            Profile::Solved => ToleranceProfile::solved(),
            Profile::Fixture => ToleranceProfile::fixture(),
            Profile::Sketch => ToleranceProfile::sketch(),
        }
    }
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Version { .. }
            | Error::UnknownFixture(_)
            | Error::Precision(_)
            | Error::MissingLabels(_)
            | Error::Io(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let code = match run(cli) {
        Ok(c) => c,
        Err(Failure::Usage(m)) => {
            eprintln!("msf: {m}");
            EXIT_USAGE
        }
        Err(Failure::Internal(m)) => {
            eprintln!("msf: internal error: {m}");
            EXIT_INTERNAL
        }
    };
    ExitCode::from(code)
}

fn input_file(cmd: &Command) -> Option<&str> {
    match cmd {
        Command::Angles { file, .. } | Command::Verify { file, .. } | Command::Svg { file, .. } => {
            Some(file)
        }
        Command::Assemble { file, .. } => file.as_deref(),
        _ => None,
    }
}

/// Flag, then MSF_PRECISION, then the input file's stored precision.
fn choose_precision(cli: &Cli) -> Result<u32, Failure> {
    if let Some(p) = cli.precision {
        return Ok(p);
    }
    if let Some(p) = precision_from_env()? {
        return Ok(p);
    }
    let stored = input_file(&cli.command)
        .filter(|f| !f.starts_with("fixture:"))
        .and_then(|f| std::fs::read_to_string(f).ok())
        .and_then(|text| stored_precision(&text));
    Ok(stored.unwrap_or(DEFAULT_PRECISION).max(MIN_PRECISION))
}

fn run(cli: Cli) -> CmdResult {
    set_precision(choose_precision(&cli)?)?;
    match cli.command {
        Command::Fixtures { action } => fixtures(action),
        Command::Solve {
            template,
            n,
            tol,
            output,
        } => solve_cmd(template, n, tol.as_deref(), &output),
        Command::Angles { file, template } => angles_cmd(&file, template),
        Command::Assemble {
            ring,
            chain,
            file,
            output,
        } => assemble_cmd(ring, chain.as_deref(), file.as_deref(), &output),
        Command::Verify {
            file,
            profile,
            report,
        } => verify_cmd(&file, profile, report.as_deref()),
        Command::Search {
            template,
            from,
            to,
            profile,
            no_planarity,
        } => search_cmd(template, from, to, profile, no_planarity),
        Command::Svg {
            file,
            output,
            insets,
            scale,
        } => {
            let g = load(&file)?;
            let opts = SvgOptions {
                scale,
                insets,
                ..SvgOptions::default()
            };
            std::fs::write(&output, export_svg(&g, &opts)).map_err(Error::from)?;
            Ok(0)
        }
    }
}

fn load(source: &str) -> Result<UnitGraph, Failure> {
    Ok(match source.strip_prefix("fixture:") {
        Some(name) => load_fixture(name)?,
        None => read_graph(source)?,
    })
}

fn fixtures(action: FixtureAction) -> CmdResult {
    match action {
        FixtureAction::List => {
            for name in fixture_names() {
                let raw = raw_fixture(name)?;
                println!(
                    "{name:<11} {:<7} {:>3} vertices {:>3} edges {:>3} triangles  {}",
                    raw.precision.as_str(),
                    raw.vertices.len(),
                    raw.edges.len(),
                    raw.declared_triangles,
                    raw.title
                );
            }
        }
        FixtureAction::Show { name } => print!("{}", graph_to_string(&load_fixture(&name)?)?),
    }
    Ok(0)
}

fn solve_template(
    template: Template,
    n: u32,
    tol: Option<&Scalar>,
) -> Result<(UnitGraph, SolveResult), Failure> {
    let g = load_fixture(template.name())?;
    let t = build_template(&g)?;
    let anchor = g
        .meta_value(meta_keys::ANCHOR_N)
        .and_then(|s| s.parse().ok())
        .unwrap_or(n);
    let spec = RingSpec::new(anchor)?;
    let mut r = solve(&t, &spec, &t.initial_state(&spec), tol)?;
    if anchor != n {
        r = continue_in_n(&t, &r, n)?;
        if let Some(tol) = tol {
            r = solve(&t, &RingSpec::new(n)?, &r.state, Some(tol))?;
        }
    }
    Ok((solved_base(&t, &r)?, r))
}

fn solve_cmd(template: Template, n: u32, tol: Option<&str>, output: &Path) -> CmdResult {
    let tol = tol.map(Scalar::parse).transpose()?;
    let (base, r) = solve_template(template, n, tol.as_ref())?;
    write_graph(&base, output)?;
    println!(
        "solved {} at n = {}: residual {}, {} iterations, sigma_min {:e}{}",
        template.name(),
        n,
        r.residual_norm.to_digits(3),
        r.iterations,
        r.sigma_min,
        if r.rank_deficient {
            " (rank deficient)"
        } else {
            ""
        }
    );
    print_readout(
        &graph_angles(&base)?,
        reference(template.name()).filter(|c| c.n == n),
    );
    Ok(0)
}

fn print_readout(a: &AngleReadout, reference: Option<&ReferenceColumn>) {
    let refs = reference.and_then(|c| c.values().ok()).unwrap_or_default();
    let row = |name: &str, v: &Scalar| match refs.iter().find(|(k, _)| *k == name) {
        Some((_, r)) => println!(
            "{name:<6} {:>24}  ref {:>20}  delta {:+.2e}",
            v.to_digits(20),
            r.to_digits(17),
            (v - r).to_f64()
        ),
        None => println!("{name:<6} {:>24}", v.to_digits(20)),
    };
    for (name, v) in [
        ("alpha", &a.alpha),
        ("beta", &a.beta),
        ("gamma", &a.gamma),
        ("delta", &a.delta),
    ] {
        if let Some(v) = v {
            row(name, v);
        }
    }
    row("GH", &a.gh);
    row("omega", &a.omega_check);
    if let Some(s) = a.spread("gamma") {
        println!(
            "gamma spread over {} probes: {}",
            a.probes.iter().filter(|p| p.name == "gamma").count(),
            s.to_digits(3)
        );
    }
}

fn angles_cmd(file: &str, template: Option<Template>) -> CmdResult {
    let g = load(file)?;
    let a = graph_angles(&g)?;
    let name = template.map(Template::name).or_else(|| {
        g.meta_value(meta_keys::TEMPLATE)
            .or(g.meta_value(meta_keys::FIXTURE))
    });
    print_readout(&a, name.and_then(reference));
    Ok(0)
}

fn piece(item: &str) -> Result<(UnitGraph, SeamOrientation), Failure> {
    let (item, dir) = match item.strip_suffix("@rev") {
        Some(s) => (s, SeamOrientation::Reversed),
        None => (item, SeamOrientation::Forward),
    };
    let g = if let Some(src) = item.strip_prefix("g4:") {
        make_adapter(&load(src)?)?
    } else if let Some(src) = item.strip_prefix("g5:") {
        adapter_mirror(&make_adapter(&load(src)?)?)?
    } else if let Some(rest) = item.strip_prefix("arc") {
        let (k, src) = rest
            .split_once(':')
            .and_then(|(k, s)| Some((k.parse::<u32>().ok()?, s)))
            .ok_or_else(|| {
                Failure::Usage(format!("bad chain item {item:?}: expected arcK:SOURCE"))
            })?;
        let base = load(src)?;
        let n = base
            .meta_value(meta_keys::N)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Failure::Usage(format!("{src} has no ring size")))?;
        ring_arc(&base, &RingSpec::new(n)?, k)?
    } else {
        load(item)?
    };
    Ok((g, dir))
}

fn assemble_cmd(
    ring: Option<u32>,
    chain: Option<&str>,
    file: Option<&str>,
    output: &Path,
) -> CmdResult {
    let g = match (ring, chain) {
        (Some(n), _) => {
            let file = file.ok_or_else(|| Failure::Usage("--ring needs an input FILE".into()))?;
            let g = ring_assemble(&load(file)?, &RingSpec::new(n)?)?;
            println!(
                "ring n = {n}: {} vertices, {} edges, {} triangles",
                g.num_vertices(),
                g.num_edges(),
                g.triangles().len()
            );
            g
        }
        (None, Some(spec)) => {
            let pieces = spec
                .split(',')
                .map(|s| piece(s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let g = chain_assemble(&pieces)?;
            println!(
                "chain of {}: {} vertices, {} edges, {} triangles",
                pieces.len(),
                g.num_vertices(),
                g.num_edges(),
                g.triangles().len()
            );
            g
        }
        (None, None) => return Err(Failure::Usage("give --ring N FILE or --chain SPEC".into())),
    };
    write_graph(&g, output)?;
    Ok(0)
}

fn default_profile(g: &UnitGraph) -> Profile {
    match g.meta_value(meta_keys::PRECISION_CLASS) {
        Some("sketch") => Profile::Sketch,
        Some(_) => Profile::Fixture,
        None => Profile::Solved,
    }
}

fn verify_cmd(file: &str, profile: Option<Profile>, report_path: Option<&Path>) -> CmdResult {
    let g = load(file)?;
    let profile = profile.unwrap_or_else(|| default_profile(&g));
    let report = verify(&g, &profile.tolerances());
    print!("{}", report.summary());
    if let Some(path) = report_path {
        std::fs::write(path, report.to_json()?).map_err(Error::from)?;
    }
    Ok(report.exit_code() as u8)
}

fn search_cmd(
    template: Template,
    from: u32,
    to: u32,
    profile: Profile,
    no_planarity: bool,
) -> CmdResult {
    let g = load_fixture(template.name())?;
    let t = build_template(&g)?;
    let anchor = g
        .meta_value(meta_keys::ANCHOR_N)
        .and_then(|s| s.parse().ok())
        .unwrap_or(from);
    let spec = RingSpec::new(anchor)?;
    let r = solve(&t, &spec, &t.initial_state(&spec), None)?;
    let criteria = if no_planarity {
        SearchCriteria::without_planarity()
    } else {
        SearchCriteria::full()
    };
    match minimal_n_search(&t, &r, from, to, &profile.tolerances(), &criteria) {
        Ok(out) => {
            print!("{}", format_table(&out.table));
            println!("{}", out.minimal_n);
            Ok(0)
        }
        Err(Error::NoPassingN { table, .. }) => {
            print!("{}", format_table(&table));
            println!("none");
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}
