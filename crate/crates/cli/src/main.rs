//! `hassett` command-line front end.
//!
//! Exit codes: 0 evaluated, 1 verification or admissibility failure, 2 usage
//! or parse error.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::render::Format;

#[derive(Parser, Debug)]
#[command(
    name = "hassett",
    version,
    about = "Discriminant arithmetic for special cubic fourfolds"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GlobalOpts {
    /// Emit a single JSON document.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit CSV (row-shaped output only).
    #[arg(long, global = true)]
    csv: bool,

    /// Suppress stdout; the exit code carries the result.
    #[arg(long, short, global = true)]
    quiet: bool,
}

impl GlobalOpts {
    fn format(self) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            Format::Text
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate conditions (*), (**), (***) for one discriminant.
    Check {
        #[arg(allow_hyphen_values = true)]
        d: BigInt,
    },
    /// List discriminants up to a bound satisfying the selected conditions.
    Enumerate {
        #[arg(long = "max")]
        max: BigInt,
        /// Comma-separated subset of star, double_star, triple_star.
        #[arg(long, value_delimiter = ',', default_value = "star")]
        filter: Vec<Condition>,
        /// Override the ceiling on --max (also HASSETT_ENUMERATE_CEILING).
        #[arg(long)]
        ceiling: Option<u64>,
    },
    /// Witness families for the rational cubic fourfolds.
    Family {
        #[command(subcommand)]
        action: FamilyAction,
    },
    /// Reduce (H2.Sigma, Q.Sigma or S.Sigma, Sigma^2) to its normal form.
    Normalize {
        #[arg(long, value_enum)]
        geometry: GeometryArg,
        #[arg(long, allow_hyphen_values = true)]
        m: BigInt,
        /// Q.Sigma (plane, must be 1) or S.Sigma (dp6, 0..=2).
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        c: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        s: BigInt,
    },
    /// Solve x^2 - D y^2 = N for |N| < sqrt(D) or square D.
    Pell {
        #[arg(long = "d", allow_hyphen_values = true)]
        radicand: BigInt,
        #[arg(long = "n", allow_hyphen_values = true, default_value = "-3")]
        norm: BigInt,
    },
    /// Determinant of a Gram matrix given as rows "3,2;2,4".
    Disc {
        #[arg(allow_hyphen_values = true)]
        gram: String,
    },
}

#[derive(Subcommand, Debug)]
enum FamilyAction {
    /// Print all eight families.
    List,
    /// Verify a family symbolically and/or over a range of k.
    Verify {
        id: String,
        /// Check the polynomial identity in k (default when no range is given).
        #[arg(long)]
        symbolic: bool,
        #[arg(long, allow_hyphen_values = true)]
        k_min: Option<BigInt>,
        #[arg(long, allow_hyphen_values = true)]
        k_max: Option<BigInt>,
        /// Test against the printed quadratic form instead of the derived one.
        #[arg(long)]
        use_printed_form: bool,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Star,
    #[value(name = "double_star", alias = "double-star")]
    DoubleStar,
    #[value(name = "triple_star", alias = "triple-star")]
    TripleStar,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum GeometryArg {
    Plane,
    Dp6,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = commands::Output::new(cli.global.format(), cli.global.quiet);
    let result = match cli.command {
        Command::Check { d } => commands::check(&out, &d),
        Command::Enumerate {
            max,
            filter,
            ceiling,
        } => commands::enumerate(&out, &max, &filter, ceiling),
        Command::Family { action } => match action {
            FamilyAction::List => commands::family_list(&out),
            FamilyAction::Verify {
                id,
                symbolic,
                k_min,
                k_max,
                use_printed_form,
            } => commands::family_verify(&out, &id, symbolic, k_min, k_max, use_printed_form),
        },
        Command::Normalize { geometry, m, c, s } => {
            let geometry = match geometry {
                GeometryArg::Plane => hassett::Geometry::Plane,
                GeometryArg::Dp6 => hassett::Geometry::Dp6,
            };
            commands::normalize(&out, geometry, m, c, s)
        }
        Command::Pell { radicand, norm } => commands::pell(&out, &radicand, &norm),
        Command::Disc { gram } => commands::disc(&out, &gram),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("hassett: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
