use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use lefschetz_core::fibration::{EpsChoice, FibrationSpec};
use lefschetz_core::ringfile::{parse_element, parse_ring, parse_ring_unchecked, Ring};
use lefschetz_core::{fixtures, report, EpsFraction, LieGroup, PDAlgebra, Rational, Report};

/// Exact checks of Poincaré duality, hard Lefschetz and the moment-map zero
/// level for graded rings given as files or built-in fixtures.
#[derive(Parser)]
#[command(name = "lefschetz", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Both, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Brute-force scan of the algebra axioms.
    Axioms {
        /// Ring file path or fixture name.
        ring: String,
    },
    /// Nondegeneracy of every Poincaré pairing.
    Duality { ring: String },
    /// Ranks and kernels of the Lefschetz maps of a degree-2 class.
    Lefschetz {
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
    },
    /// Cohomology ring of the CP^n-bundle over a 4-dimensional base.
    Build {
        #[arg(long)]
        base: String,
        #[arg(long, allow_hyphen_values = true)]
        chern: String,
        #[arg(long)]
        fiber_dim: usize,
        /// `sym` or a positive rational such as `1/2`.
        #[arg(long, allow_hyphen_values = true)]
        epsilon: String,
        /// Also write the ring file here.
        #[arg(long)]
        emit: Option<String>,
    },
    /// Symbolic builds and the rational roots of badEps.
    Genericity {
        #[arg(long, default_value = "gompfFormal")]
        base: String,
        #[arg(long, default_value = "c", allow_hyphen_values = true)]
        chern: String,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        fiber_dims: Vec<usize>,
    },
    /// Seeded probe of the moment-map zero level.
    Moment {
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Base not Lefschetz, total spaces strong Lefschetz, over Q(ε) and at ε = 1.
    #[command(name = "reproduce-theorem1")]
    ReproduceTheorem1 {
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        fiber_dims: Vec<usize>,
    },
    /// Prints the ring file of a ring or fixture.
    Emit { ring: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Axioms { .. } => "axioms",
            Command::Duality { .. } => "duality",
            Command::Lefschetz { .. } => "lefschetz",
            Command::Build { .. } => "build",
            Command::Genericity { .. } => "genericity",
            Command::Moment { .. } => "moment",
            Command::ReproduceTheorem1 { .. } => "reproduce-theorem1",
            Command::Emit { .. } => "emit",
        }
    }
}

/// A file path if one exists, otherwise a fixture name.
fn load_ring(arg: &str, check_axioms: bool) -> Result<Ring> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        let parsed = if check_axioms { parse_ring(&text) } else { parse_ring_unchecked(&text) };
        return parsed.with_context(|| format!("parsing {arg}"));
    }
    fixtures::by_name(arg).map(Ring::Rational).ok_or_else(|| {
        anyhow!("`{arg}` is neither a ring file nor a fixture (known: {})", fixtures::FIXTURE_NAMES.join(", "))
    })
}

fn rational_ring(arg: &str) -> Result<PDAlgebra<Rational>> {
    match load_ring(arg, true)? {
        Ring::Rational(a) => Ok(a),
        Ring::Symbolic(_) => bail!("`{arg}` must have rational scalars"),
    }
}

fn parse_epsilon(s: &str) -> Result<EpsChoice> {
    if s == "sym" {
        return Ok(EpsChoice::Symbolic);
    }
    let r: Rational = s.parse().with_context(|| format!("invalid epsilon `{s}`"))?;
    Ok(EpsChoice::Value(r))
}

fn run(command: &Command) -> Result<Report> {
    Ok(match command {
        Command::Axioms { ring } => match load_ring(ring, false)? {
            Ring::Rational(a) => report::axioms(&a),
            Ring::Symbolic(a) => report::axioms(&a),
        },
        Command::Duality { ring } => match load_ring(ring, true)? {
            Ring::Rational(a) => report::duality(&a),
            Ring::Symbolic(a) => report::duality(&a),
        },
        Command::Lefschetz { ring, omega } => match load_ring(ring, true)? {
            Ring::Rational(a) => report::lefschetz(&a, &parse_element::<Rational>(a.basis(), omega, 1, 1)?)?,
            Ring::Symbolic(a) => report::lefschetz(&a, &parse_element::<EpsFraction>(a.basis(), omega, 1, 1)?)?,
        },
        Command::Build { base, chern, fiber_dim, epsilon, emit } => {
            let base = rational_ring(base)?;
            let chern = parse_element(base.basis(), chern, 1, 1)?;
            let spec = FibrationSpec::new(base, chern, *fiber_dim, parse_epsilon(epsilon)?)?;
            let r = report::build(&spec)?;
            if let Some(path) = emit {
                let text = r.details["ring"].as_str().unwrap_or_default();
                std::fs::write(path, text).with_context(|| format!("writing {path}"))?;
            }
            r
        }
        Command::Genericity { base, chern, fiber_dims } => {
            let base = rational_ring(base)?;
            let chern = parse_element(base.basis(), chern, 1, 1)?;
            report::genericity(&base, &chern, fiber_dims)?
        }
        Command::Moment { group, n, samples, seed } => {
            let group: LieGroup = group.parse()?;
            report::moment(group, *n, *samples, *seed)?
        }
        Command::ReproduceTheorem1 { fiber_dims } => report::reproduce_theorem1(fiber_dims)?,
        Command::Emit { .. } => unreachable!("handled before dispatch"),
    })
}

fn print_report(r: &Report, format: Format) {
    if format != Format::Json {
        print!("{}", r.to_text());
    }
    if format != Format::Text {
        println!("{}", r.to_json());
    }
}

fn input_error(command: &str, err: &anyhow::Error, format: Format) -> ExitCode {
    eprintln!("error: {err:#}");
    if format != Format::Text {
        let doc = serde_json::json!({
            "command": command,
            "verdict": { "holds": false, "summary": "input error", "failures": [format!("{err:#}")] },
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
    }
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Emit { ring } = &cli.command {
        return match load_ring(ring, false) {
            Ok(r) => {
                print!("{}", r.emit());
                ExitCode::SUCCESS
            }
            Err(e) => input_error("emit", &e, Format::Text),
        };
    }
    match run(&cli.command) {
        Ok(r) => {
            print_report(&r, cli.format);
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => input_error(cli.command.name(), &e, cli.format),
    }
}
