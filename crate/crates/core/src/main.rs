use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use diagset::bench::{self, Family};
use diagset::dsl::{self, DrawOptions, DslError, Elaborated};
use diagset::kernel::{encode, Diagram};
use diagset::molecule::{isomorphism, Molecule, ShapeError};
use diagset::ogposet::{OgError, OgPoset};
use diagset::render::{emit, hasse_layout, string_layout, Format, Layout, View};

#[derive(Parser)]
#[command(name = "diagset", version, about = "Molecules, diagrammatic complexes and their pictures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and elaborate a script, printing its generators.
    Check { file: PathBuf },
    /// Print the canonical face data of a shape.
    Canon {
        /// A shape expression such as "paste(binary, arrow, 0)".
        #[arg(short = 'e', long = "expr", conflicts_with = "json", required_unless_present = "json")]
        expr: Option<String>,
        /// A file of face data in any representation.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Succeed iff the two shapes are isomorphic, printing the isomorphism.
    Iso { left: String, right: String },
    /// Draw a named diagram, or every draw statement of the script.
    Render(RenderArgs),
    /// Print the complex defined by a script as JSON.
    Encode { file: PathBuf },
    /// Time canonicalization on a family of growing shapes.
    Bench {
        #[arg(long)]
        family: Family,
        /// Chain lengths, or grid sides.
        #[arg(long, value_delimiter = ',', default_value = "100,200,400,800,1600,2500")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RenderArgs {
    file: PathBuf,
    #[arg(long)]
    cell: Option<String>,
    #[arg(long, value_parser = parse_view)]
    view: Option<View>,
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
    /// Output file, or a directory when rendering every draw statement.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    #[arg(long)]
    bg: Option<String>,
    #[arg(long)]
    input_color: Option<String>,
    #[arg(long)]
    output_color: Option<String>,
    #[arg(long)]
    xscale: Option<f64>,
    #[arg(long)]
    yscale: Option<f64>,
}

fn parse_view(s: &str) -> Result<View, String> {
    match s {
        "hasse" => Ok(View::Hasse),
        "string" => Ok(View::String),
        _ => Err(format!("unknown view {s}; expected hasse or string")),
    }
}

fn parse_format(s: &str) -> Result<Format, String> {
    match s {
        "tikz" => Ok(Format::Tikz),
        "svg" => Ok(Format::Svg),
        _ => Err(format!("unknown format {s}; expected tikz or svg")),
    }
}

/// A failure with its exit status: 1 for domain failures, 2 for usage and parse errors.
struct Failure {
    code: u8,
    kind: &'static str,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 2, kind: "usage", msg: msg.into() }
    }

    fn domain(kind: &'static str, msg: impl Into<String>) -> Self {
        Failure { code: 1, kind, msg: msg.into() }
    }
}

impl From<DslError> for Failure {
    fn from(e: DslError) -> Self {
        match e {
            DslError::Parse { .. } => Failure { code: 2, kind: "parse", msg: e.to_string() },
            _ => Failure::domain("elaboration", e.to_string()),
        }
    }
}

impl From<ShapeError> for Failure {
    fn from(e: ShapeError) -> Self {
        match e {
            ShapeError::Parse { .. } | ShapeError::Og(OgError::Json(_)) => {
                Failure { code: 2, kind: "parse", msg: e.to_string() }
            }
            _ => Failure::domain("shape", e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<Elaborated, Failure> {
    Ok(dsl::load(&read(path)?)?)
}

fn shape(src: &str) -> Result<Molecule, Failure> {
    Ok(src.parse::<Molecule>()?)
}

fn check(file: &Path) -> Result<(), Failure> {
    let out = load(file)?;
    println!(
        "ok: {} generators, {} bindings, {} draws",
        out.diagset.len(),
        out.bindings().len(),
        out.draws.len()
    );
    for g in out.diagset.generators() {
        println!("{} dim {} shape {:?}", g.name(), g.dim(), g.shape().size());
    }
    Ok(())
}

fn canon(expr: Option<&str>, json: Option<&Path>) -> Result<(), Failure> {
    let m = match (expr, json) {
        (Some(e), _) => shape(e)?,
        (None, Some(path)) => {
            let poset = OgPoset::from_json(&read(path)?).map_err(ShapeError::from)?;
            Molecule::from_poset(&poset)?.0
        }
        (None, None) => return Err(Failure::usage("expected -e EXPR or --json FILE")),
    };
    println!("{}", m.to_json());
    Ok(())
}

fn iso(left: &str, right: &str) -> Result<(), Failure> {
    let (l, r) = (shape(left)?, shape(right)?);
    match isomorphism(l.poset(), r.poset())? {
        Some(map) => {
            for el in l.poset().elements() {
                println!("{el} -> {}", map.apply(el));
            }
            Ok(())
        }
        None => Err(Failure::domain("iso", "not isomorphic")),
    }
}

fn layout(d: &Diagram, view: View, args: &RenderArgs) -> Result<Layout, Failure> {
    let mut l = match view {
        View::Hasse => hasse_layout(d),
        View::String => string_layout(d).map_err(|e| Failure::domain("render", e.to_string()))?,
    };
    let style = &mut l.style;
    if let Some(c) = &args.input_color {
        style.input_color.clone_from(c);
    }
    if let Some(c) = &args.output_color {
        style.output_color.clone_from(c);
    }
    if let Some(x) = args.xscale {
        style.xscale = x;
    }
    if let Some(y) = args.yscale {
        style.yscale = y;
    }
    Ok(l)
}

fn draw(d: &Diagram, options: &DrawOptions, args: &RenderArgs) -> Result<(String, View, Format), Failure> {
    let view = args.view.or(options.view).unwrap_or(View::Hasse);
    let format = args.format.or(options.format).unwrap_or(Format::Tikz);
    let mut l = layout(d, view, args)?;
    l.style.bg = args.bg.clone().or_else(|| options.bg.clone());
    Ok((emit(&l, format), view, format))
}

fn render(args: &RenderArgs) -> Result<(), Failure> {
    let out = load(&args.file)?;
    if let Some(name) = &args.cell {
        let d = out.get(name).ok_or_else(|| Failure::domain("render", format!("no diagram named {name}")))?;
        let (text, ..) = draw(d, &DrawOptions::default(), args)?;
        return write(args.output.as_deref(), &text);
    }
    if out.draws.is_empty() {
        return Err(Failure::usage("the script has no draw statements; pass --cell NAME"));
    }
    for req in &out.draws {
        let (text, view, format) = draw(&req.diagram, &req.options, args)?;
        match &args.output {
            Some(dir) => {
                std::fs::create_dir_all(dir)
                    .map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))?;
                write(Some(&dir.join(format!("{}_{view}.{format}", req.name))), &text)?;
            }
            None => print!("{text}"),
        }
    }
    Ok(())
}

fn run_bench(family: Family, sizes: &[usize], seed: u64, output: Option<&Path>) -> Result<(), Failure> {
    let ms = bench::run(family, sizes, seed)?;
    write(output, &bench::to_csv(&ms))?;
    match bench::fit_exponent(&ms) {
        Some(e) if output.is_some() => println!("fit_exponent={e:.3}"),
        Some(e) => eprintln!("fit_exponent={e:.3}"),
        None => {}
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { file } => check(&file),
        Command::Canon { expr, json } => canon(expr.as_deref(), json.as_deref()),
        Command::Iso { left, right } => iso(&left, &right),
        Command::Render(args) => render(&args),
        Command::Encode { file } => {
            print!("{}", encode(&load(&file)?.diagset));
            Ok(())
        }
        Command::Bench { family, sizes, seed, output } => run_bench(family, &sizes, seed, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let color = std::env::var_os("NO_COLOR").is_none() && std::io::stderr().is_terminal();
            if color {
                eprintln!("\x1b[31merror[{}]\x1b[0m: {}", f.kind, f.msg);
            } else {
                eprintln!("error[{}]: {}", f.kind, f.msg);
            }
            ExitCode::from(f.code)
        }
    }
}
