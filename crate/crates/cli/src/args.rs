use clap::{ArgGroup, Args, Parser, Subcommand};
use num_rational::Ratio;

#[derive(Debug, Parser)]
#[command(
    name = "fatpoints",
    version,
    about = "Hilbert functions, resolutions and degree bounds for fat points in the plane"
)]
pub struct Cli {
    /// Emit structured JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expected Hilbert function of the ideal.
    Hilb(TableArgs),
    /// alpha, or one lower bound on it with --method.
    Alpha(BoundArgs),
    /// tau, or one upper bound on it with --method.
    Tau(BoundArgs),
    /// Least degree with zero-dimensional base locus.
    Beta(InputArgs),
    /// Graded Betti numbers; the quasi-uniform prediction when it applies.
    Res(TableArgs),
    /// Every applicable bound on alpha and tau.
    Bounds(InputArgs),
    /// Reduce a class to the fundamental domain by Cremona moves.
    Decomp(ClassArgs),
    /// H+N decomposition of a class.
    Psi(ClassArgs),
    /// Hilbert function and generator counts at random points mod a prime.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["mults", "uniform"])))]
pub struct InputArgs {
    /// Comma-separated multiplicities, e.g. 90,80,70.
    #[arg(long, value_parser = parse_mults, allow_hyphen_values = true)]
    pub mults: Option<Mults>,

    /// N points of multiplicity M, written N:M.
    #[arg(long, value_parser = parse_uniform)]
    pub uniform: Option<(usize, i64)>,
}

impl InputArgs {
    pub fn values(&self) -> Vec<i64> {
        match (&self.mults, self.uniform) {
            (Some(m), _) => m.0.clone(),
            (None, Some((n, m))) => vec![m; n],
            (None, None) => unreachable!("clap requires one of --mults, --uniform"),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Degree range lo:hi.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<(i64, i64)>,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Bound to compute, e.g. unloading, cor-d, hirschowitz.
    #[arg(long)]
    pub method: Option<String>,

    #[arg(long)]
    pub r: Option<i64>,

    #[arg(long)]
    pub d: Option<i64>,

    #[arg(long)]
    pub j: Option<i64>,

    /// Comma-separated rational weights a0,a1,... for nef-test.
    #[arg(long, value_parser = parse_weights)]
    pub weights: Option<Weights>,

    /// Constant c with alpha >= c m, for ran.
    #[arg(long, value_parser = parse_ratio)]
    pub c: Option<Ratio<i64>>,
}

#[derive(Debug, Clone, Args)]
pub struct ClassArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Degree of the class d E0 - sum m_i E_i.
    #[arg(long, allow_hyphen_values = true)]
    pub degree: i64,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, default_value_t = fatpoints::DEFAULT_PRIME)]
    pub prime: u64,

    /// A single degree; otherwise the window, by default alpha-1 to tau+1.
    #[arg(long, conflicts_with = "window")]
    pub degree: Option<i64>,

    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<(i64, i64)>,
}

#[derive(Debug, Clone)]
pub struct Mults(pub Vec<i64>);

#[derive(Debug, Clone)]
pub struct Weights(pub Vec<Ratio<i64>>);

fn parse_mults(s: &str) -> Result<Mults, String> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad multiplicity {part:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Mults)
}

fn parse_pair<A: std::str::FromStr, B: std::str::FromStr>(
    s: &str,
    what: &str,
) -> Result<(A, B), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected {what}, got {s:?}"))?;
    match (a.trim().parse(), b.trim().parse()) {
        (Ok(a), Ok(b)) => Ok((a, b)),
        _ => Err(format!("expected {what}, got {s:?}")),
    }
}

fn parse_uniform(s: &str) -> Result<(usize, i64), String> {
    parse_pair(s, "N:M with integers N, M")
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    parse_pair(s, "lo:hi with integers lo, hi")
}

fn parse_ratio(s: &str) -> Result<Ratio<i64>, String> {
    let r: Ratio<i64> = s
        .trim()
        .parse()
        .map_err(|_| format!("expected an integer or p/q, got {s:?}"))?;
    Ok(r)
}

fn parse_weights(s: &str) -> Result<Weights, String> {
    s.split(',')
        .map(parse_ratio)
        .collect::<Result<Vec<_>, _>>()
        .map(Weights)
}
