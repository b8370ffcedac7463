//! Command-line front end. Every invocation produces one JSON document.
//!
//! Exit codes: 0 success, 1 invalid input or failed domain check, 2 usage.

use std::fs;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use thinloop::format::{complex_to_json, parse_complex, parse_word, points_to_json, word_to_json};
use thinloop::random::{random_bounded, random_loop, WordRng};
use thinloop::thin::{self, reduce_all_orders, Rule};
use thinloop::{
    core, cyclic_core, make_word, path_core, uniform_breakpoints, Error, PlWord, SimplicialComplex,
    WordKind,
};

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<String>,
    pub result: Value,
    pub exit_code: i32,
}

impl RunReport {
    /// The document written to standard output.
    pub fn render(&self) -> String {
        match &self.result {
            Value::String(text) if self.command == "help" => text.clone(),
            value => serde_json::to_string(value).expect("json values serialize"),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "thinloop", version, about = "Exact thin loop group calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a complex file.
    Validate { complex: String },
    /// Thin core of a loop (or of a path with --path).
    Core {
        complex: String,
        word: String,
        /// Reduce as a path with both ends pinned.
        #[arg(long)]
        path: bool,
        /// Include the sequence of deletions.
        #[arg(long)]
        trace: bool,
    },
    /// Thin equality of two words.
    Eq {
        complex: String,
        a: String,
        b: String,
    },
    /// Product of two loop classes.
    Mul {
        complex: String,
        a: String,
        b: String,
    },
    /// Inverse of a loop class.
    Inv { complex: String, a: String },
    /// Integer power of a loop class.
    Pow {
        complex: String,
        a: String,
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Euclidean length of a word.
    Len { complex: String, word: String },
    /// Constant-speed breakpoints of a word.
    Uniform { complex: String, word: String },
    /// Free (unbased) thin class of a loop.
    Cyclic { complex: String, word: String },
    /// Seeded random loop.
    Rand {
        complex: String,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        denom: u32,
    },
    /// Compare greedy reduction against exhaustive search on random loops.
    FuzzConfluence {
        complex: String,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        denom: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Core { .. } => "core",
            Command::Eq { .. } => "eq",
            Command::Mul { .. } => "mul",
            Command::Inv { .. } => "inv",
            Command::Pow { .. } => "pow",
            Command::Len { .. } => "len",
            Command::Uniform { .. } => "uniform",
            Command::Cyclic { .. } => "cyclic",
            Command::Rand { .. } => "rand",
            Command::FuzzConfluence { .. } => "fuzz-confluence",
        }
    }

    fn inputs(&self) -> Vec<String> {
        let files: Vec<&String> = match self {
            Command::Validate { complex }
            | Command::Rand { complex, .. }
            | Command::FuzzConfluence { complex, .. } => vec![complex],
            Command::Core { complex, word, .. }
            | Command::Len { complex, word }
            | Command::Uniform { complex, word }
            | Command::Cyclic { complex, word } => vec![complex, word],
            Command::Inv { complex, a } | Command::Pow { complex, a, .. } => vec![complex, a],
            Command::Eq { complex, a, b } | Command::Mul { complex, a, b } => vec![complex, a, b],
        };
        files.into_iter().cloned().collect()
    }
}

/// Failure of a command before or during evaluation.
enum Failure {
    Io { file: String, message: String },
    Domain { file: Option<String>, error: Error },
}

impl Failure {
    fn in_file(file: &str) -> impl FnOnce(Error) -> Failure + '_ {
        move |error| Failure::Domain {
            file: Some(file.to_owned()),
            error,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Failure::Io { file, message } => json!({
                "error": {"kind": "Io", "file": file, "message": message}
            }),
            Failure::Domain { file, error } => {
                let mut doc = json!({"kind": error_kind(error), "message": error.to_string()});
                if let Some(file) = file {
                    doc["file"] = json!(file);
                }
                match error {
                    Error::PointNotInComplex { index: Some(i) } | Error::NoCommonSimplex(i) => {
                        doc["index"] = json!(i);
                    }
                    Error::Parse { line, column, .. } => {
                        doc["line"] = json!(line);
                        doc["column"] = json!(column);
                    }
                    _ => {}
                }
                json!({ "error": doc })
            }
        }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure::Domain { file: None, error }
    }
}

fn error_kind(error: &Error) -> &'static str {
    match error {
        Error::DuplicateVertexId(_) => "DuplicateVertexId",
        Error::UnknownVertexInSimplex(_) => "UnknownVertexInSimplex",
        Error::AffinelyDependentSimplex(_) => "AffinelyDependentSimplex",
        Error::DisconnectedComplex => "DisconnectedComplex",
        Error::MissingBasepoint(_) => "MissingBasepoint",
        Error::DimensionMismatch { .. } => "DimensionMismatch",
        Error::ZeroAmbientDimension => "ZeroAmbientDimension",
        Error::EmptySimplex => "EmptySimplex",
        Error::PointNotInComplex { .. } => "PointNotInComplex",
        Error::EmptyWord => "EmptyWord",
        Error::NotBased => "NotBased",
        Error::NotClosed => "NotClosed",
        Error::NoCommonSimplex(_) => "NoCommonSimplex",
        Error::WrongKind { .. } => "WrongKind",
        Error::OutOfRange(_) => "OutOfRange",
        Error::SubdivisionLength { .. } => "SubdivisionLength",
        Error::InvalidSubdivision(_) => "InvalidSubdivision",
        Error::ComplexMismatch => "ComplexMismatch",
        Error::TooLong { .. } => "TooLong",
        Error::RefEndpointMismatch => "RefEndpointMismatch",
        Error::PointNotInStar => "PointNotInStar",
        Error::PointNotInSimplex => "PointNotInSimplex",
        Error::InvalidRational(_) => "InvalidRational",
        Error::Parse { .. } => "Parse",
    }
}

fn read(file: &str) -> Result<String, Failure> {
    fs::read_to_string(file).map_err(|e| Failure::Io {
        file: file.to_owned(),
        message: e.to_string(),
    })
}

fn load_complex(file: &str) -> Result<Arc<SimplicialComplex>, Failure> {
    let text = read(file)?;
    parse_complex(&text)
        .map(Arc::new)
        .map_err(Failure::in_file(file))
}

fn load_word(complex: &Arc<SimplicialComplex>, file: &str) -> Result<PlWord, Failure> {
    let text = read(file)?;
    parse_word(complex, &text).map_err(Failure::in_file(file))
}

fn load_class(complex: &Arc<SimplicialComplex>, file: &str) -> Result<thin::ThinClass, Failure> {
    let word = load_word(complex, file)?;
    core(&word).map_err(Failure::in_file(file))
}

/// Parses `argv` (program name first) and executes the command.
pub fn run<I, T>(argv: I) -> RunReport
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => RunReport {
                    command: "help".into(),
                    inputs: Vec::new(),
                    result: Value::String(e.to_string()),
                    exit_code: 0,
                },
                _ => RunReport {
                    command: "usage".into(),
                    inputs: Vec::new(),
                    result: json!({"error": {"kind": "Usage", "message": e.to_string()}}),
                    exit_code: 2,
                },
            };
        }
    };
    let command = cli.command.name().to_owned();
    let inputs = cli.command.inputs();
    let (result, exit_code) = match execute(cli.command) {
        Ok(value) => (value, 0),
        Err(failure) => (failure.to_json(), 1),
    };
    RunReport {
        command,
        inputs,
        result,
        exit_code,
    }
}

fn execute(command: Command) -> Result<Value, Failure> {
    match command {
        Command::Validate { complex } => {
            let c = load_complex(&complex)?;
            let dimension = c.simplices().iter().map(|s| s.dim()).max().unwrap_or(0);
            Ok(json!({
                "valid": true,
                "vertices": c.vertex_count(),
                "simplices": c.simplices().len(),
                "dimension": dimension,
                "complex": complex_to_json(&c),
            }))
        }
        Command::Core {
            complex,
            word,
            path,
            trace,
        } => {
            let c = load_complex(&complex)?;
            let w = load_word(&c, &word)?;
            let (reduced, steps) = if path {
                let as_path = make_word(&c, w.points().to_vec(), WordKind::Path)?;
                let (_, steps) = thin::reduce(&as_path, Rule::ThinRemove);
                (path_core(&as_path)?.word().clone(), steps)
            } else {
                let (class, steps) = thin::core_traced(&w).map_err(Failure::in_file(&word))?;
                (class.into_word(), steps)
            };
            let mut doc = json!({
                "core": points_to_json(reduced.points()),
                "trivial": reduced.len() == 1,
            });
            if trace {
                doc["trace"] = serde_json::to_value(&steps).expect("trace serializes");
            }
            Ok(doc)
        }
        Command::Eq { complex, a, b } => {
            let c = load_complex(&complex)?;
            let wa = load_word(&c, &a)?;
            let wb = load_word(&c, &b)?;
            Ok(json!({ "equal": thin::eq(&wa, &wb)? }))
        }
        Command::Mul { complex, a, b } => {
            let c = load_complex(&complex)?;
            let ga = load_class(&c, &a)?;
            let gb = load_class(&c, &b)?;
            let product = ga.mul(&gb)?;
            Ok(json!({
                "product": points_to_json(product.points()),
                "trivial": product.is_identity(),
            }))
        }
        Command::Inv { complex, a } => {
            let c = load_complex(&complex)?;
            let g = load_class(&c, &a)?.inv();
            Ok(json!({ "inverse": points_to_json(g.points()) }))
        }
        Command::Pow { complex, a, n } => {
            let c = load_complex(&complex)?;
            let g = load_class(&c, &a)?.pow(n);
            Ok(json!({
                "power": points_to_json(g.points()),
                "n": n,
                "trivial": g.is_identity(),
            }))
        }
        Command::Len { complex, word } => {
            let c = load_complex(&complex)?;
            let w = load_word(&c, &word)?;
            Ok(json!({
                "length": w.length(),
                "chords": w.chord_lengths(),
                "points": w.len(),
            }))
        }
        Command::Uniform { complex, word } => {
            let c = load_complex(&complex)?;
            let w = load_word(&c, &word)?;
            let param = uniform_breakpoints(&w);
            Ok(json!({
                "breakpoints": param.breakpoints.breakpoints(),
                "total_length": param.total_length,
            }))
        }
        Command::Cyclic { complex, word } => {
            let c = load_complex(&complex)?;
            let w = load_word(&c, &word)?;
            let free = cyclic_core(&w).map_err(Failure::in_file(&word))?;
            Ok(json!({
                "cycle": points_to_json(free.cycle()),
                "trivial": free.is_trivial(),
            }))
        }
        Command::Rand {
            complex,
            steps,
            seed,
            denom,
        } => {
            let c = load_complex(&complex)?;
            Ok(word_to_json(&random_loop(&c, steps, seed, denom)))
        }
        Command::FuzzConfluence {
            complex,
            max_len,
            trials,
            seed,
            denom,
        } => {
            let c = load_complex(&complex)?;
            let mut rng = WordRng::new(seed);
            let mut counterexamples = Vec::new();
            for _ in 0..trials {
                let w = random_bounded(&c, WordKind::Loop, max_len.max(1), denom, &mut rng);
                let greedy = core(&w)?;
                let all = reduce_all_orders(&w, max_len.max(1))?;
                if all.len() != 1 || all.first().map(Vec::as_slice) != Some(greedy.points()) {
                    counterexamples.push(word_to_json(&w));
                }
            }
            let mut doc = json!({
                "trials": trials,
                "non_confluent": counterexamples.len(),
            });
            if !counterexamples.is_empty() {
                doc["counterexamples"] = Value::Array(counterexamples);
            }
            Ok(doc)
        }
    }
}
