//! `froblift`: command-line front end for the froblift toolkit.

mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "froblift", version, about = "Frobenius liftings mod p^2: exact computations")]
struct Cli {
    /// Print a JSON report instead of the human-readable summary
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// Polynomial ring F_q[vars].
#[derive(Args, Debug, Clone)]
pub struct Ring {
    /// Field size (defaults to the characteristic given by --p)
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub p: Option<u32>,
    /// Comma-separated variable names
    #[arg(long, default_value = "x,y")]
    pub vars: String,
}

/// A fan: a catalog name or fan JSON (inline or @file).
#[derive(Args, Debug, Clone)]
pub struct FanSource {
    #[arg(long, conflicts_with = "fan")]
    pub catalog: Option<String>,
    #[arg(long)]
    pub fan: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Arithmetic in W_2(F_q)
    Witt {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: Option<u32>,
        /// a0,a1 b0,b1
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        add: Option<Vec<String>>,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        mul: Option<Vec<String>>,
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        sub: Option<Vec<String>>,
        /// Check W_2(F_p) against Z/p^2 on the full table
        #[arg(long)]
        table: bool,
    },
    /// The map ξ of a lifting chart x_i ↦ x_i^p + p·f_i
    Xi {
        #[command(flatten)]
        ring: Ring,
        /// f_i, one per variable
        #[arg(long = "image", allow_hyphen_values = true)]
        images: Vec<String>,
        /// coefficients of a 1-form, one per variable
        #[arg(long = "coeff", allow_hyphen_values = true)]
        coeffs: Vec<String>,
        /// indices of coordinates carrying a log pole
        #[arg(long, value_delimiter = ',')]
        marked: Vec<usize>,
        /// print δ(g) for the Teichmüller lift of g
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
        /// print θ*∘ν* and ν*∘θ* checks on g
        #[arg(long, allow_hyphen_values = true)]
        roundtrip: Option<String>,
    },
    /// det ξ as a section of ω^{1−p} on P^n
    DeltaDivisor {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        n: usize,
        /// n+1 homogeneous degree-p polynomials in x0..xn (default: all zero)
        #[arg(long = "lift", allow_hyphen_values = true)]
        lifts: Vec<String>,
    },
    /// Compatibility of a lifting chart with a divisor or coordinate blow-up center
    Compat {
        #[command(flatten)]
        ring: Ring,
        #[arg(long = "image", allow_hyphen_values = true)]
        images: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        divisor: Option<String>,
        /// generators of the center, each a coordinate
        #[arg(long, value_delimiter = ',')]
        center: Vec<String>,
    },
    /// Fedder's criterion for a hypersurface at a point
    Fedder {
        #[command(flatten)]
        ring: Ring,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// field element codes; defaults to the origin
        #[arg(long, value_delimiter = ',')]
        at: Vec<u32>,
    },
    /// Cartier operator C or its inverse on a 1-form
    Cartier {
        #[command(flatten)]
        ring: Ring,
        #[arg(long = "coeff", allow_hyphen_values = true)]
        coeffs: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        marked: Vec<usize>,
        #[arg(long)]
        inverse: bool,
    },
    /// Splitting test for a section of ω^{1−p} on P^n, or the invariant search on P^1
    SplitCheck {
        #[command(flatten)]
        ring: Ring,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        section: Option<String>,
        #[arg(long)]
        search_p1: bool,
    },
    /// Fan properties, star subdivision and the multiplication-by-p witness
    Fan {
        #[command(flatten)]
        src: FanSource,
        #[arg(long)]
        star: Option<usize>,
        #[arg(long)]
        mult_p: Option<u32>,
        /// list the bundled catalog
        #[arg(long)]
        list: bool,
    },
    /// Global sections of O(D)
    H0 {
        #[command(flatten)]
        src: FanSource,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// All cohomology of O(D)
    Hi {
        #[command(flatten)]
        src: FanSource,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Bott vanishing for Ω^i(log ∂) ⊗ L with L ample
    Bott {
        #[command(flatten)]
        src: FanSource,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// h^1 over a box of multidegrees
    Flatness {
        #[command(flatten)]
        src: FanSource,
        #[arg(long = "bundle", allow_hyphen_values = true)]
        bundles: Vec<String>,
        /// lo:hi, one per bundle
        #[arg(long = "window", allow_hyphen_values = true)]
        windows: Vec<String>,
    },
    /// Splitting type of a Laurent transition matrix (JSON, inline or @file)
    SplitType {
        #[arg(long)]
        matrix: String,
    },
    /// Restriction of Ω¹_{P²}(log D) to a rational curve
    Restrict {
        #[arg(long)]
        q: u32,
        /// components of D in x,y,z
        #[arg(long = "component", allow_hyphen_values = true)]
        components: Vec<String>,
        /// three polynomials in t separated by ';'
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
    },
    /// Fixed points of v ↦ A·v^{[p]} over F_{q^m}
    FixedPoints {
        #[arg(long)]
        q: u32,
        /// rows separated by ';', entries by ','
        #[arg(long)]
        matrix: String,
        /// extension degree; defaults to the stabilization degree
        #[arg(long)]
        degree: Option<u64>,
    },
    /// Marked Dynkin diagrams, e.g. A3:1 or A2:1,2
    Dynkin { diagram: String },
    /// χ(T_X) screen over a Fano threefold table
    FanoScreen {
        /// CSV with columns id,rho,minusK3,b3[,category]; defaults to the bundled table
        #[arg(long)]
        table: Option<String>,
    },
    /// Blow-ups of a toric surface with Δ the boundary, or the Hirzebruch ledger
    SurfaceDescent {
        #[command(flatten)]
        src: FanSource,
        /// fixed:K, ray:R or interior
        #[arg(long = "center")]
        centers: Vec<String>,
        #[arg(long)]
        hirzebruch: Option<i64>,
        #[arg(long, default_value_t = 2)]
        dv: i64,
    },
    /// Reproduce an acceptance criterion (or `all`)
    Repro {
        target: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// What a command hands back for printing.
pub struct Outcome {
    pub verdict: String,
    pub payload: Value,
    pub human: String,
    /// false on a reproduction mismatch
    pub pass: bool,
}

impl Outcome {
    pub fn ok(verdict: impl Into<String>, payload: Value, human: impl Into<String>) -> Self {
        Outcome { verdict: verdict.into(), payload, human: human.into(), pass: true }
    }
}

fn dispatch(c: Command) -> froblift::Result<Outcome> {
    use commands as k;
    match c {
        Command::Witt { p, q, add, mul, sub, table } => k::witt(p, q, add, mul, sub, table),
        Command::Xi { ring, images, coeffs, marked, delta, roundtrip } => k::xi(&ring, &images, &coeffs, &marked, delta, roundtrip),
        Command::DeltaDivisor { p, q, n, lifts } => k::delta_divisor(p, q, n, &lifts),
        Command::Compat { ring, images, divisor, center } => k::compat(&ring, &images, divisor, &center),
        Command::Fedder { ring, poly, at } => k::fedder(&ring, &poly, &at),
        Command::Cartier { ring, coeffs, marked, inverse } => k::cartier(&ring, &coeffs, &marked, inverse),
        Command::SplitCheck { ring, n, section, search_p1 } => k::split_check(&ring, n, section, search_p1),
        Command::Fan { src, star, mult_p, list } => k::fan(&src, star, mult_p, list),
        Command::H0 { src, divisor } => k::h0(&src, &divisor),
        Command::Hi { src, divisor } => k::hi(&src, &divisor),
        Command::Bott { src, divisor } => k::bott(&src, &divisor),
        Command::Flatness { src, bundles, windows } => k::flatness(&src, &bundles, &windows),
        Command::SplitType { matrix } => k::split_type(&matrix),
        Command::Restrict { q, components, curve } => k::restrict(q, &components, &curve),
        Command::FixedPoints { q, matrix, degree } => k::fixed_points(q, &matrix, degree),
        Command::Dynkin { diagram } => k::dynkin(&diagram),
        Command::FanoScreen { table } => k::fano_screen(table),
        Command::SurfaceDescent { src, centers, hirzebruch, dv } => k::surface_descent(&src, &centers, hirzebruch, dv),
        Command::Repro { target, p, seed } => k::repro(&target, p, seed),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    let start = Instant::now();
    let result = dispatch(cli.command);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let command = argv[1..].join(" ");
    match result {
        Ok(o) => {
            if json {
                let report = json!({
                    "command": command,
                    "verdict": o.verdict,
                    "result": o.payload,
                    "elapsed_ms": elapsed_ms,
                });
                emit(&serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                emit(o.human.trim_end());
            }
            if o.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if json {
                emit(&json!({ "command": command, "verdict": "error", "error": e.to_string() }).to_string());
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
