use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rdc::acyclicity::classify;
use rdc::chain::{compare_molec_nu, is_steiner, is_strong_steiner, is_unital_basis, linearize};
use rdc::constructions::{dual, gray, join, suspension};
use rdc::flow::{extended_flow_graph, flow_graph, layerings, max_flow_graph, orderings};
use rdc::graph::hasse_dot;
use rdc::molecule::{first_non_atom, recognize};
use rdc::omega::MolecOver;
use rdc::{ClosedSubset, ElemRef, Molecule, OgPoset, Sign};

#[derive(Parser)]
#[command(
    name = "rdc",
    version,
    about = "Regular directed complexes: molecules, acyclicity, chain complexes"
)]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    #[value(name = "-")]
    Minus,
    #[value(name = "+")]
    Plus,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Check the diagram, regularity and oriented thinness.
    Validate { file: PathBuf },
    /// Evaluate the four acyclicity conditions.
    Classify { file: PathBuf },
    /// The n-boundary of the whole diagram.
    Boundary {
        file: PathBuf,
        #[arg(long)]
        dim: isize,
        #[arg(long, value_enum, allow_hyphen_values = true)]
        sign: SignArg,
    },
    /// All k-layerings of a molecule.
    Layerings {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: isize,
    },
    /// All k-orderings of a molecule.
    Orderings {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        k: isize,
    },
    /// Recognize a molecule and print its construction.
    Molecule { file: PathBuf },
    /// Paste two molecules along the k-boundary.
    Paste {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Gray product.
    Gray {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Join.
    Join {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Suspension.
    Susp {
        a: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Reverse orientations in the listed dimensions.
    Dual {
        a: PathBuf,
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Enumerate cells of the ω-category of molecules over the diagram.
    Cells {
        file: PathBuf,
        #[arg(long)]
        max_dim: usize,
        /// Also search composites of up to this many maximal elements.
        #[arg(long, default_value_t = 0)]
        bound: usize,
        /// Print each cell's shape and image.
        #[arg(long)]
        shapes: bool,
    },
    /// Linearize to an augmented directed chain complex.
    Chain { file: PathBuf },
    /// Compare cells with globular tables of the linearization.
    CompareNu {
        file: PathBuf,
        #[arg(long)]
        max_dim: usize,
        #[arg(long, default_value_t = 0)]
        bound: usize,
    },
    /// Emit a graph in DOT format.
    Dot {
        file: PathBuf,
        /// hasse, flow:K, maxflow:K or extflow:K.
        #[arg(long)]
        graph: String,
    },
}

enum Failure {
    /// Unreadable or malformed input: exit code 2.
    Input(String),
    /// Well-formed input with a negative verdict: exit code 1.
    Semantic(String),
}

type Outcome = Result<Output, Failure>;

enum Output {
    Json(Value),
    Text(String),
    /// Printed, then reported as a semantic failure.
    Negative(Value, String),
}

fn read(path: &Path) -> Result<OgPoset, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    OgPoset::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_molecule(path: &Path) -> Result<Molecule, Failure> {
    Molecule::new(read(path)?).map_err(|_| Failure::Semantic(format!("{} is not a molecule", path.display())))
}

fn refs(p: &OgPoset, u: &ClosedSubset) -> Vec<String> {
    u.iter(p).map(|x| x.to_string()).collect()
}

fn diagram(p: &OgPoset) -> Value {
    serde_json::from_str(&p.to_json()).expect("diagram JSON is valid")
}

fn emit(p: &OgPoset, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => {
            fs::write(path, p.to_json() + "\n").map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(Output::Json(
                json!({ "written": path.display().to_string(), "size": p.len(), "dim": p.dim() }),
            ))
        }
        None => Ok(Output::Json(diagram(p))),
    }
}

fn parse_graph(arg: &str) -> Result<(&str, isize), Failure> {
    if arg == "hasse" {
        return Ok(("hasse", 0));
    }
    let bad = || {
        Failure::Input(format!(
            "unknown graph '{arg}'; expected hasse, flow:K, maxflow:K or extflow:K"
        ))
    };
    let (kind, k) = arg.split_once(':').ok_or_else(bad)?;
    let k: isize = k.parse().map_err(|_| bad())?;
    match kind {
        "flow" | "maxflow" | "extflow" => Ok((kind, k)),
        _ => Err(bad()),
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { file } => {
            let p = read(&file)?;
            let non_atom = first_non_atom(&p);
            let thin = p.augment().is_oriented_thin();
            let report = json!({
                "size": p.len(),
                "dim": p.dim(),
                "rdc": non_atom.is_none(),
                "non_atom": non_atom.map(|x| x.to_string()),
                "oriented_thin": thin,
                "molecule": recognize(&p).is_some(),
            });
            if non_atom.is_none() && thin {
                Ok(Output::Json(report))
            } else {
                Ok(Output::Negative(report, "not a thin regular directed complex".into()))
            }
        }
        Command::Classify { file } => {
            let c = classify(&read(&file)?);
            Ok(Output::Json(
                serde_json::to_value(&c).expect("classification serializes"),
            ))
        }
        Command::Boundary { file, dim, sign } => {
            let p = read(&file)?;
            let u = p.full_subset();
            let b = match sign {
                SignArg::Minus => p.boundary(&u, dim, Sign::Minus),
                SignArg::Plus => p.boundary(&u, dim, Sign::Plus),
                SignArg::Both => p.boundary_both(&u, dim),
            };
            let (sub, _) = p.restrict(&b);
            Ok(Output::Json(
                json!({ "elements": refs(&p, &b), "diagram": diagram(&sub) }),
            ))
        }
        Command::Layerings { file, k } => {
            let m = read_molecule(&file)?;
            let p = m.poset();
            let ls = layerings(p, &p.full_subset(), k);
            Ok(Output::Json(json!({
                "k": k,
                "count": ls.len(),
                "layerings": ls.iter().map(|l| l.layers.iter().map(|v| refs(p, v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })))
        }
        Command::Orderings { file, k } => {
            let m = read_molecule(&file)?;
            let p = m.poset();
            let os = orderings(p, &p.full_subset(), k);
            let os: Vec<Vec<String>> = os.iter().map(|o| o.iter().map(ElemRef::to_string).collect()).collect();
            Ok(Output::Json(json!({ "k": k, "count": os.len(), "orderings": os })))
        }
        Command::Molecule { file } => {
            let p = read(&file)?;
            match recognize(&p) {
                Some(w) => Ok(Output::Json(json!({
                    "molecule": true,
                    "atom": w.is_atom(),
                    "dim": w.dim(),
                    "witness": serde_json::to_value(&w).expect("witness serializes"),
                }))),
                None => Ok(Output::Negative(
                    json!({ "molecule": false, "witness": null }),
                    "not a molecule".into(),
                )),
            }
        }
        Command::Paste { a, b, k, out } => {
            let (a, b) = (read_molecule(&a)?, read_molecule(&b)?);
            let m = a.paste(&b, k).map_err(|e| Failure::Semantic(e.to_string()))?;
            emit(m.poset(), out.as_deref())
        }
        Command::Gray { a, b, out } => emit(&gray(&read(&a)?, &read(&b)?).poset, out.as_deref()),
        Command::Join { a, b, out } => emit(&join(&read(&a)?, &read(&b)?).poset, out.as_deref()),
        Command::Susp { a, out } => emit(&suspension(&read(&a)?), out.as_deref()),
        Command::Dual { a, dims, out } => {
            let dims: BTreeSet<usize> = dims.into_iter().collect();
            emit(&dual(&read(&a)?, &dims), out.as_deref())
        }
        Command::Cells {
            file,
            max_dim,
            bound,
            shapes,
        } => {
            let p = read(&file)?;
            let m = MolecOver::new(&p);
            let e = m.enumerate_cells(max_dim, bound);
            let mut report = json!({
                "counts": e.count_by_dim(),
                "complete": e.complete,
                "truncated": e.truncated,
            });
            if shapes {
                report["cells"] = e
                    .cells
                    .iter()
                    .map(|c| {
                        json!({
                            "dim": c.dim(),
                            "image": c.image().iter().map(ElemRef::to_string).collect::<Vec<_>>(),
                            "injective": c.is_injective(),
                            "shape": serde_json::to_value(c.shape().witness()).expect("witness serializes"),
                        })
                    })
                    .collect();
            }
            Ok(Output::Json(report))
        }
        Command::Chain { file } => {
            let p = read(&file)?;
            let c = linearize(&p).map_err(|e| Failure::Semantic(e.to_string()))?;
            let complex: Value = serde_json::from_str(&c.to_json()).expect("complex JSON is valid");
            Ok(Output::Json(json!({
                "complex": complex,
                "unital": is_unital_basis(&c),
                "steiner": is_steiner(&c),
                "strong_steiner": is_strong_steiner(&c),
            })))
        }
        Command::CompareNu { file, max_dim, bound } => {
            let p = read(&file)?;
            let report = compare_molec_nu(&p, max_dim, bound).map_err(|e| Failure::Semantic(e.to_string()))?;
            Ok(Output::Json(serde_json::to_value(&report).expect("report serializes")))
        }
        Command::Dot { file, graph } => {
            let p = read(&file)?;
            let (kind, k) = parse_graph(&graph)?;
            let u = p.full_subset();
            let dot = match kind {
                "hasse" => hasse_dot(&p, "hasse"),
                "flow" => flow_graph(&p, &u, k).to_dot(&graph),
                "maxflow" => max_flow_graph(&p, &u, k).to_dot(&graph),
                _ => extended_flow_graph(&p, &u, k).to_dot(&graph),
            };
            Ok(Output::Text(dot))
        }
    }
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("JSON values serialize")
    } else {
        v.to_string()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Output::Json(v)) => {
            println!("{}", render(&v, cli.pretty));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Output::Negative(v, why)) => {
            println!("{}", render(&v, cli.pretty));
            eprintln!("rdc: {why}");
            ExitCode::from(1)
        }
        Err(Failure::Semantic(why)) => {
            eprintln!("rdc: {why}");
            ExitCode::from(1)
        }
        Err(Failure::Input(why)) => {
            eprintln!("rdc: {why}");
            ExitCode::from(2)
        }
    }
}
