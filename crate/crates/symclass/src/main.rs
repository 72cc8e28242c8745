//! Command-line front end: classify operators, canonicalize and transform
//! symbols, and emit reproducible test corpora.
//!
//! Verdicts live in the report, never in the exit code: exit 0 means the
//! command ran, exit 2 means the input could not be processed. Output is
//! byte-identical across runs for identical arguments and seed.

use std::fmt::Display;
use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use symclass::classify::{
    classify_operator_with, Space, SymmetryVerdict, DEFAULT_WITNESS_BUDGET,
};
use symclass::gen::{gen_instances, InstanceKind};
use symclass::group::{
    negate_var, pullback_symbol, rational_boost, rational_rotation, swap_vars, GroupElement,
};
use symclass::parse::{operator_to_expr, parse_operator, parse_symbol};
use symclass::poly::SymbolPolynomial;
use symclass::scalar::Rational;

#[derive(Parser)]
#[command(name = "symclass", version, about = "Exact symmetry classification of constant-coefficient operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    Euclidean,
    Minkowski,
}

impl SpaceArg {
    fn space(self) -> Space {
        match self {
            SpaceArg::Euclidean => Space::Euclidean,
            SpaceArg::Minkowski => Space::Minkowski,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Human,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Invariant,
    Perturbed,
}

#[derive(Args)]
struct OperatorInput {
    /// Spatial dimension n.
    #[arg(long)]
    dim: usize,
    /// Operator expression, e.g. "dt^2 - dx1^2".
    #[arg(long, conflicts_with = "file")]
    expr: Option<String>,
    /// Read the operator expression from a file instead.
    #[arg(long)]
    file: Option<String>,
}

impl OperatorInput {
    fn text(&self) -> Result<String, String> {
        match (&self.expr, &self.file) {
            (Some(e), None) => Ok(e.clone()),
            (None, Some(path)) => {
                fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
            }
            _ => Err("provide exactly one of --expr or --file".to_string()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full invariance classification of an operator.
    Classify {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[command(flatten)]
        input: OperatorInput,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Witness enumeration budget.
        #[arg(long, default_value_t = DEFAULT_WITNESS_BUDGET)]
        budget: usize,
    },
    /// Canonical coefficient vector of an invariant operator symbol.
    Canonicalize {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[command(flatten)]
        input: OperatorInput,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[arg(long, default_value_t = DEFAULT_WITNESS_BUDGET)]
        budget: usize,
    },
    /// Witness (or confirmation of invariance) for an operator symbol.
    Witness {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[command(flatten)]
        input: OperatorInput,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[arg(long, default_value_t = DEFAULT_WITNESS_BUDGET)]
        budget: usize,
    },
    /// Apply a group element to a symbol and print the pull-back.
    Act {
        #[arg(long, value_enum, default_value = "minkowski")]
        space: SpaceArg,
        #[arg(long)]
        dim: usize,
        /// Symbol expression over tau/xiK (Minkowski) or xiK (Euclidean).
        #[arg(long)]
        symbol: String,
        /// Boost in the (tau, xi_I) plane with rational parameter T.
        #[arg(long, num_args = 2, value_names = ["I", "T"])]
        boost: Option<Vec<String>>,
        /// Rotation in the (xi_I, xi_J) plane with rational parameter T.
        #[arg(long, num_args = 3, value_names = ["I", "J", "T"])]
        rotate: Option<Vec<String>>,
        /// Reflection negating variable K (0 = tau in Minkowski mode).
        #[arg(long, value_name = "K")]
        negate: Option<usize>,
        /// Swap of spatial variables K and L.
        #[arg(long, num_args = 2, value_names = ["K", "L"])]
        swap: Option<Vec<usize>>,
    },
    /// Emit reproducible random operator instances.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long)]
        dim: usize,
        /// Operator order m.
        #[arg(long)]
        order: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Parse an operator expression and echo the lowered JSON.
    Parse {
        #[command(flatten)]
        input: OperatorInput,
    },
}

fn input_error(message: impl Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    Rational::from_str(text).map_err(|e| format!("invalid rational `{text}`: {e}"))
}

fn parse_index(text: &str) -> Result<usize, String> {
    text.parse().map_err(|_| format!("invalid index `{text}`"))
}

fn build_act_element(
    space: Space,
    dim: usize,
    boost: &Option<Vec<String>>,
    rotate: &Option<Vec<String>>,
    negate: &Option<usize>,
    swap: &Option<Vec<usize>>,
) -> Result<GroupElement, String> {
    let chosen =
        [boost.is_some(), rotate.is_some(), negate.is_some(), swap.is_some()]
            .iter()
            .filter(|&&b| b)
            .count();
    if chosen != 1 {
        return Err("provide exactly one of --boost, --rotate, --negate, --swap".to_string());
    }
    let vars = match space {
        Space::Euclidean => dim,
        Space::Minkowski => dim + 1,
    };
    let tag = space.metric_tag();
    if let Some(args) = boost {
        if space == Space::Euclidean {
            return Err("--boost needs --space minkowski".to_string());
        }
        let i = parse_index(&args[0])?;
        let t = parse_rational(&args[1])?;
        return rational_boost(dim, i, &t).map_err(|e| e.to_string());
    }
    if let Some(args) = rotate {
        let i = parse_index(&args[0])?;
        let j = parse_index(&args[1])?;
        let t = parse_rational(&args[2])?;
        let spatial = rational_rotation(dim, i, j, &t).map_err(|e| e.to_string())?;
        return Ok(match space {
            Space::Euclidean => spatial,
            Space::Minkowski => symclass::group::embed_spatial(&spatial),
        });
    }
    if let Some(k) = negate {
        return negate_var(vars, *k, tag).map_err(|e| e.to_string());
    }
    let args = swap.as_ref().expect("one flag chosen");
    let (k, l) = (args[0], args[1]);
    let (k, l) = match space {
        // Surface indices are 1-based spatial; Minkowski matrices carry tau
        // at position 0 already.
        Space::Euclidean => (k - 1, l - 1),
        Space::Minkowski => (k, l),
    };
    swap_vars(vars, k, l, tag).map_err(|e| e.to_string())
}

fn display_symbol(p: &SymbolPolynomial, space: Space) -> String {
    match space {
        Space::Euclidean => p.display_spatial(),
        Space::Minkowski => p.display_spacetime(),
    }
}

fn run() -> Result<(), String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify {
            space,
            input,
            format,
            budget,
        } => {
            let space = space.space();
            let text = input.text()?;
            let op = parse_operator(&text, input.dim).map_err(|e| e.to_string())?;
            let mut report =
                classify_operator_with(&op, space, budget).map_err(|e| e.to_string())?;
            report.input = Some(text.trim().to_string());
            match format {
                FormatArg::Json => println!("{}", report.to_json()),
                FormatArg::Human => print!("{}", report.to_human()),
            }
        }
        Command::Canonicalize {
            space,
            input,
            format,
            budget,
        } => {
            let space = space.space();
            let text = input.text()?;
            let op = parse_operator(&text, input.dim).map_err(|e| e.to_string())?;
            let report = classify_operator_with(&op, space, budget).map_err(|e| e.to_string())?;
            if !report.translation.is_invariant() {
                return Err("operator is not translation invariant; no constant symbol".into());
            }
            match report.symmetry.as_ref().expect("translation passed") {
                SymmetryVerdict::Invariant(cf) => match format {
                    FormatArg::Json => {
                        println!("{}", json!({"invariant": true, "b": cf.to_json()}))
                    }
                    FormatArg::Human => {
                        let bs: Vec<String> =
                            cf.coeffs.iter().map(|b| b.to_string()).collect();
                        println!("invariant: b = [{}]", bs.join(", "));
                    }
                },
                SymmetryVerdict::NotInvariant(w) => match format {
                    FormatArg::Json => {
                        println!("{}", json!({"invariant": false, "witness": w.to_json()}))
                    }
                    FormatArg::Human => println!("not invariant; run `witness` for details"),
                },
            }
        }
        Command::Witness {
            space,
            input,
            format,
            budget,
        } => {
            let space = space.space();
            let text = input.text()?;
            let op = parse_operator(&text, input.dim).map_err(|e| e.to_string())?;
            let report = classify_operator_with(&op, space, budget).map_err(|e| e.to_string())?;
            match &report.symmetry {
                None => return Err("operator is not translation invariant".into()),
                Some(SymmetryVerdict::Invariant(_)) => match format {
                    FormatArg::Json => println!("{}", json!({"invariant": true})),
                    FormatArg::Human => println!("invariant; no witness exists"),
                },
                Some(SymmetryVerdict::NotInvariant(w)) => match format {
                    FormatArg::Json => {
                        println!("{}", json!({"invariant": false, "witness": w.to_json()}))
                    }
                    FormatArg::Human => println!("{:#?}", w),
                },
            }
        }
        Command::Act {
            space,
            dim,
            symbol,
            boost,
            rotate,
            negate,
            swap,
        } => {
            let space = space.space();
            let p = parse_symbol(&symbol, dim, space).map_err(|e| e.to_string())?;
            let elem = build_act_element(space, dim, &boost, &rotate, &negate, &swap)?;
            let pulled = pullback_symbol(&p, &elem).map_err(|e| e.to_string())?;
            println!("{}", display_symbol(&pulled, space));
        }
        Command::Gen {
            seed,
            space,
            dim,
            order,
            count,
            kind,
            format,
        } => {
            let space = space.space();
            let kind = match kind {
                KindArg::Invariant => InstanceKind::Invariant,
                KindArg::Perturbed => InstanceKind::Perturbed,
            };
            let instances = gen_instances(seed, space, dim, order, count, kind)
                .map_err(|e| e.to_string())?;
            for inst in &instances {
                match format {
                    FormatArg::Json => println!(
                        "{}",
                        json!({
                            "kind": inst.kind.as_str(),
                            "expr": operator_to_expr(&inst.operator),
                            "operator": inst.operator.to_json(),
                        })
                    ),
                    FormatArg::Human => println!("{}", operator_to_expr(&inst.operator)),
                }
            }
        }
        Command::Parse { input } => {
            let text = input.text()?;
            let op = parse_operator(&text, input.dim).map_err(|e| e.to_string())?;
            println!("{}", op.to_json());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => input_error(message),
    }
}
