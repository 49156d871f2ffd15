use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use nekra_core::abelian::{abelianize_group, abelianize_v, duplicate, find_even_m};
use nekra_core::embed::BhPipeline;
use nekra_core::format;
use nekra_core::ssgroup::{Budget, SSPresentation, Triviality};
use nekra_core::tree::Vertex;
use nekra_core::virtend::{
    affine_act, affine_state, crosscheck_symbolic, faithfulness_search, properness_valuation, relator_verify,
    AffineElem, Faithfulness, RelatorAssignment, VirtEndSpec,
};
use nekra_core::Error;

#[derive(Parser)]
#[command(name = "nekra", version, about = "Self-similar groups and their Röver–Nekrashevych groups")]
struct Cli {
    /// Pretty-print JSON output
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Image of a vertex under a word
    Act {
        #[arg(short, long)]
        group: PathBuf,
        #[arg(short, long)]
        word: String,
        /// Comma-separated letters, e.g. 2,2,1
        #[arg(short, long, allow_hyphen_values = true)]
        vertex: String,
    },
    /// Free product of words, left to right
    Mul {
        #[arg(short, long)]
        group: PathBuf,
        #[arg(short, long, required = true)]
        word: Vec<String>,
    },
    /// Portrait of a word to a given depth
    Portrait {
        #[arg(short, long)]
        group: PathBuf,
        #[arg(short, long)]
        word: String,
        #[arg(short, long, default_value_t = 3)]
        depth: usize,
    },
    /// Bounded word problem
    Istrivial {
        #[arg(short, long)]
        group: PathBuf,
        #[arg(short, long)]
        word: String,
    },
    /// Abelianization of the group from its relators
    Abelianize {
        #[arg(short, long)]
        group: PathBuf,
    },
    /// Abelianization of the Röver–Nekrashevych group
    AbelianizeV {
        #[arg(short, long)]
        group: PathBuf,
    },
    /// Even duplication factor making the V-abelianization finite
    FindM {
        #[arg(short, long)]
        group: PathBuf,
    },
    /// The group acting on the (m·d)-ary tree
    Duplicate {
        #[arg(short, long)]
        group: PathBuf,
        #[arg(short, long)]
        m: usize,
    },
    /// Composition p∘q of two V elements (q applied first)
    VCompose {
        #[arg(short, long)]
        group: PathBuf,
        #[arg(short)]
        p: PathBuf,
        #[arg(short)]
        q: PathBuf,
    },
    /// Abelianization class of a V element
    VClass {
        #[arg(short, long)]
        group: PathBuf,
        #[arg(short, long)]
        element: PathBuf,
    },
    /// Embedding into the commutator subgroup of a V group
    EmbedBh {
        #[arg(short, long)]
        group: PathBuf,
        /// Words to embed
        #[arg(short, long)]
        word: Vec<String>,
    },
    /// First-level state of an affine element at a transversal element
    VirtendState {
        #[arg(short, long)]
        spec: PathBuf,
        #[arg(short, long)]
        element: PathBuf,
        /// Comma-separated coordinates in 0..p, e.g. 1,0
        #[arg(short, long)]
        transversal: Option<String>,
        /// Comma-separated letters; reports the image vertex instead
        #[arg(short, long)]
        vertex: Option<String>,
    },
    /// Cross-check named affine generators against a group file, or search
    /// for a moved vertex of a single element
    VirtendCheck {
        #[arg(short, long)]
        spec: PathBuf,
        /// Group file to compare against
        #[arg(short, long, requires = "generators")]
        group: Option<PathBuf>,
        /// Object mapping generator names to affine elements
        #[arg(short = 'G', long)]
        generators: Option<PathBuf>,
        /// Single affine element for the faithfulness search
        #[arg(short, long, conflicts_with = "group")]
        element: Option<PathBuf>,
        #[arg(short, long, default_value_t = 6)]
        depth: usize,
    },
    /// Verify the relator families of ℤ[1/m]^n ⋊ GL_n(ℤ[1/m])
    Relators {
        #[arg(short, long)]
        spec: PathBuf,
        /// Object mapping names to further GL_n generators
        #[arg(short = 'G', long)]
        generators: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String, String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Schema { .. } => CliError::Usage(e.kind().into(), e.to_string()),
            e => CliError::Domain(e),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage("IoError".into(), format!("{}: {e}", path.display())))
}

fn load_group(path: &Path) -> CliResult<SSPresentation> {
    Ok(format::parse_group(&read(path)?)?)
}

fn load_spec(path: &Path) -> CliResult<VirtEndSpec> {
    Ok(format::parse_virtend_spec(&read(path)?)?)
}

fn load_affine(spec: &VirtEndSpec, path: &Path) -> CliResult<AffineElem> {
    let v = format::parse_json(&read(path)?)?;
    let e = format::affine_from_value(&spec.ring, &v, "")?;
    if e.dim() != spec.n {
        return Err(Error::MalformedElement(format!("element of dimension {} for n = {}", e.dim(), spec.n)).into());
    }
    Ok(e)
}

fn load_named_affine(spec: &VirtEndSpec, path: &Path) -> CliResult<Vec<(String, AffineElem)>> {
    let v = format::parse_json(&read(path)?)?;
    let obj = v.as_object().ok_or_else(|| CliError::from(Error::Schema { path: "$".into(), message: "expected an object".into() }))?;
    obj.iter()
        .map(|(name, e)| Ok((name.clone(), format::affine_from_value(&spec.ring, e, name)?)))
        .collect()
}

fn parse_list(text: &str, what: &str) -> CliResult<Vec<u64>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| CliError::Usage("ParseError".into(), format!("bad {what} entry {t:?}"))))
        .collect()
}

fn parse_vertex(text: &str) -> CliResult<Vertex> {
    let letters = parse_list(text, "vertex")?;
    letters
        .into_iter()
        .map(|l| u32::try_from(l).map_err(|_| CliError::Usage("ParseError".into(), format!("letter {l} too large"))))
        .collect::<CliResult<Vec<_>>>()
        .map(Vertex::from_letters)
}

fn budget_from_env() -> CliResult<Budget> {
    let Ok(text) = std::env::var("NEKRA_BUDGET") else {
        return Ok(Budget::default());
    };
    let bad = || CliError::Usage("ParseError".into(), format!("NEKRA_BUDGET must be max_words[,max_len], got {text:?}"));
    let mut budget = Budget::default();
    let mut parts = text.split(',').map(str::trim);
    budget.max_words = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    if let Some(len) = parts.next() {
        budget.max_len = len.parse().map_err(|_| bad())?;
    }
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(budget)
}

fn triviality_name(t: Triviality) -> &'static str {
    match t {
        Triviality::Trivial => "Trivial",
        Triviality::Nontrivial => "Nontrivial",
        Triviality::Unknown => "Unknown",
    }
}

fn vertex_text(v: &Vertex) -> String {
    v.letters().iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

enum Output {
    Text(String),
    Json(Value),
}

fn run(cmd: Command) -> CliResult<Output> {
    let out = match cmd {
        Command::Act { group, word, vertex } => {
            let g = load_group(&group)?;
            let w = g.parse_word(&word)?;
            let v = parse_vertex(&vertex)?;
            Output::Text(vertex_text(&g.act(&w, &v)?))
        }
        Command::Mul { group, word } => {
            let g = load_group(&group)?;
            let mut product = nekra_core::word::GroupWord::identity();
            for w in &word {
                product = product.mul(&g.parse_word(w)?);
            }
            Output::Json(json!({ "product": format::word_value(&g, &product), "text": g.format_word(&product) }))
        }
        Command::Portrait { group, word, depth } => {
            let g = load_group(&group)?;
            let w = g.parse_word(&word)?;
            Output::Json(json!({ "depth": depth, "portrait": format::portrait_value(&g.portrait(&w, depth)?) }))
        }
        Command::Istrivial { group, word } => {
            let g = load_group(&group)?;
            let w = g.parse_word(&word)?;
            let budget = budget_from_env()?;
            Output::Json(json!({ "result": triviality_name(g.is_trivial_bounded(&w, budget)) }))
        }
        Command::Abelianize { group } => Output::Json(format::fin_ab_value(&abelianize_group(&load_group(&group)?))),
        Command::AbelianizeV { group } => Output::Json(format::fin_ab_value(&abelianize_v(&load_group(&group)?))),
        Command::FindM { group } => Output::Json(json!({ "m": find_even_m(&load_group(&group)?) })),
        Command::Duplicate { group, m } => {
            if m == 0 {
                return Err(Error::BadDegree(0).into());
            }
            Output::Json(format::group_value(&duplicate(&load_group(&group)?, m)))
        }
        Command::VCompose { group, p, q } => {
            let g = Arc::new(load_group(&group)?);
            let p = format::parse_velement(&read(&p)?, g.clone())?;
            let q = format::parse_velement(&read(&q)?, g)?;
            Output::Json(format::velement_value(&p.compose(&q)?))
        }
        Command::VClass { group, element } => {
            let g = Arc::new(load_group(&group)?);
            let e = format::parse_velement(&read(&element)?, g.clone())?;
            let q = abelianize_v(&g);
            let class = e.ab_class(&q);
            Output::Json(json!({
                "class": format::class_value(&class),
                "in_commutator": class.is_zero(),
                "Q": format::fin_ab_value(&q),
            }))
        }
        Command::EmbedBh { group, word } => {
            let g = load_group(&group)?;
            let words = word.iter().map(|w| g.parse_word(w)).collect::<Result<Vec<_>, _>>()?;
            let pipeline = BhPipeline::new(&g)?;
            let mut report = format::pipeline_report_value(&pipeline.report(), &pipeline.group);
            if !words.is_empty() {
                let images = words
                    .iter()
                    .map(|w| {
                        Ok(json!({
                            "word": format::word_value(&g, w),
                            "image": format::velement_value(&pipeline.embed(w)?),
                        }))
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                report["images"] = Value::Array(images);
            }
            Output::Json(report)
        }
        Command::VirtendState { spec, element, transversal, vertex } => {
            let spec = load_spec(&spec)?;
            let e = load_affine(&spec, &element)?;
            match (transversal, vertex) {
                (Some(t), None) => {
                    let t = parse_list(&t, "transversal")?;
                    if t.len() != spec.n || t.iter().any(|&x| x >= spec.p) {
                        return Err(CliError::Usage(
                            "ParseError".into(),
                            format!("transversal element needs {} coordinates in 0..{}", spec.n, spec.p),
                        ));
                    }
                    let (image, state) = affine_state(&spec, &e, &t);
                    Output::Json(json!({ "image": image, "state": format::affine_value(&state) }))
                }
                (None, Some(v)) => {
                    let v = parse_vertex(&v)?;
                    Output::Json(json!({ "image": format::vertex_value(&affine_act(&spec, &e, &v)?) }))
                }
                _ => {
                    return Err(CliError::Usage("ParseError".into(), "give exactly one of --transversal, --vertex".into()))
                }
            }
        }
        Command::VirtendCheck { spec, group, generators, element, depth } => {
            let spec = load_spec(&spec)?;
            match (group, generators, element) {
                (Some(group), Some(gens), None) => {
                    let g = load_group(&group)?;
                    let gens = load_named_affine(&spec, &gens)?;
                    Output::Json(format::crosscheck_value(&crosscheck_symbolic(&spec, &gens, &g, depth)?))
                }
                (None, None, Some(element)) => {
                    let e = load_affine(&spec, &element)?;
                    let moved = match faithfulness_search(&spec, &e, depth)? {
                        Faithfulness::Moved(v) => json!({ "moved": format::vertex_value(&v) }),
                        Faithfulness::Unknown => json!("Unknown"),
                    };
                    let valuation = properness_valuation(&spec, &e.a);
                    Output::Json(json!({ "faithfulness": moved, "translation_valuation": valuation }))
                }
                _ => {
                    return Err(CliError::Usage(
                        "ParseError".into(),
                        "give --group with --generators, or --element".into(),
                    ))
                }
            }
        }
        Command::Relators { spec, generators } => {
            let spec = load_spec(&spec)?;
            let gl = match generators {
                Some(path) => load_named_affine(&spec, &path)?,
                None => Vec::new(),
            };
            let asg = RelatorAssignment::standard(&spec, gl)?;
            Output::Json(format::relator_report_value(&relator_verify(&spec, &asg)?))
        }
    };
    Ok(out)
}

fn error_json(kind: &str, message: &str) -> String {
    let mut err = Map::new();
    err.insert("kind".into(), json!(kind));
    err.insert("message".into(), json!(message));
    json!({ "error": err }).to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Output::Text(t)) => {
            println!("{t}");
            ExitCode::SUCCESS
        }
        Ok(Output::Json(v)) => {
            let text = if cli.pretty { serde_json::to_string_pretty(&v) } else { serde_json::to_string(&v) };
            println!("{}", text.expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(e)) => {
            eprintln!("{}", error_json(e.kind(), &e.to_string()));
            ExitCode::from(1)
        }
        Err(CliError::Usage(kind, message)) => {
            eprintln!("{}", error_json(&kind, &message));
            ExitCode::from(2)
        }
    }
}
