//! Command-line interface.

use {
    crate::{
        oracle::{check_correspondence, instantiate_constant, Domain, GroundAtom, Interpretation},
        pipeline::{parse_sources, translate, Options},
        program::Program,
        translation::Value,
    },
    clap::{error::ErrorKind, Args, Parser, Subcommand},
    std::{io::Write, path::PathBuf},
};

#[derive(Debug, Parser)]
#[command(
    name = "anthem",
    version,
    about = "Translate logic programs into first-order completions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the completed, simplified definitions of a program.
    Translate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        switches: Switches,
    },
    /// Compare stable models with models of the translation over a finite domain.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Symbolic constants of the domain, comma separated.
        #[arg(long, value_delimiter = ',')]
        domain: Vec<String>,
        /// Integers of the domain, as LO..HI.
        #[arg(long, value_parser = parse_window)]
        int_window: (i64, i64),
        /// Extent of an external predicate, as NAME=TUPLE;TUPLE;... with
        /// comma-separated arguments. Repeatable.
        #[arg(long, value_parser = parse_external)]
        external: Vec<(String, Vec<Vec<Value>>)>,
        /// Value of a symbolic constant, as NAME=INTEGER. Repeatable.
        #[arg(long = "const", value_parser = parse_constant)]
        constants: Vec<(String, i64)>,
        #[command(flatten)]
        switches: Switches,
    },
}

#[derive(Debug, Args)]
struct Switches {
    /// Print one formula per rule instead of completed definitions.
    #[arg(long)]
    no_complete: bool,
    /// Leave the formulas as produced by completion and hiding.
    #[arg(long)]
    no_simplify: bool,
    /// Keep all variables general; print no integer annotations.
    #[arg(long)]
    no_detect_integers: bool,
}

impl Switches {
    fn options(&self) -> Options {
        Options {
            complete: !self.no_complete,
            simplify: !self.no_simplify,
            detect_integers: !self.no_detect_integers,
        }
    }
}

fn parse_value(text: &str) -> Value {
    let text = text.trim();
    match text.parse() {
        Ok(n) => Value::Integer(n),
        Err(_) => Value::Symbol(text.to_string()),
    }
}

fn parse_window(text: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, found `{text}`"))?;
    let bound = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| format!("`{s}` is not an integer"))
    };
    Ok((bound(lo)?, bound(hi)?))
}

fn parse_external(text: &str) -> Result<(String, Vec<Vec<Value>>), String> {
    let (name, tuples) = text.split_once('=').unwrap_or((text, ""));
    if name.is_empty() {
        return Err(format!("expected NAME=TUPLES, found `{text}`"));
    }
    let tuples = if tuples.trim().is_empty() {
        Vec::new()
    } else {
        tuples
            .split(';')
            .map(|t| {
                let t = t.trim().trim_start_matches('(').trim_end_matches(')');
                if t.is_empty() {
                    Vec::new()
                } else {
                    t.split(',').map(parse_value).collect()
                }
            })
            .collect()
    };
    Ok((name.to_string(), tuples))
}

fn parse_constant(text: &str) -> Result<(String, i64), String> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=INTEGER, found `{text}`"))?;
    let value = value
        .trim()
        .parse()
        .map_err(|_| format!("`{value}` is not an integer"))?;
    Ok((name.trim().to_string(), value))
}

fn read_program(files: &[PathBuf]) -> Result<Program, String> {
    let mut sources = Vec::new();
    for file in files {
        let text = std::fs::read_to_string(file)
            .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
        sources.push((file.display().to_string(), text));
    }
    parse_sources(sources.iter().map(|(p, t)| (p.as_str(), t.as_str()))).map_err(|e| e.to_string())
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    1
                }
            };
            return code;
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(stderr, "error: {message}");
            1
        }
    }
}

fn execute(
    command: Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match command {
        Command::Translate { files, switches } => {
            let program = read_program(&files)?;
            let output = translate(&program, switches.options()).map_err(|e| e.to_string())?;
            for warning in &output.warnings {
                writeln!(stderr, "warning: {warning}").map_err(io)?;
            }
            write!(stdout, "{}", output.render()).map_err(io)?;
            Ok(0)
        }
        Command::Verify {
            files,
            domain,
            int_window,
            external,
            constants,
            switches,
        } => {
            let mut program = read_program(&files)?;
            let output = translate(&program, switches.options()).map_err(|e| e.to_string())?;
            let mut formulas = output.formulas();
            for (name, value) in &constants {
                program.instantiate_constant(name, *value);
                formulas = formulas
                    .iter()
                    .map(|f| instantiate_constant(f, name, *value))
                    .collect();
            }
            let input: Interpretation = external
                .iter()
                .flat_map(|(name, tuples)| {
                    tuples
                        .iter()
                        .map(move |t| GroundAtom::new(name.clone(), t.clone()))
                })
                .collect();
            let values = domain.iter().map(|s| parse_value(s));
            let domain = Domain::new(values, int_window);
            let verdict =
                check_correspondence(&program, &formulas, &output.annotations, &domain, &input)
                    .map_err(|e| e.to_string())?;
            writeln!(stdout, "{verdict}").map_err(io)?;
            Ok(if verdict.holds() { 0 } else { 2 })
        }
    }
}
