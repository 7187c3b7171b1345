use clap::{Args, Parser, Subcommand};

/// Ramanujan and Shanks cubics, Gaussian periods, cube-root identities and
/// trace sequences at arbitrary precision.
///
/// Numeric parameters accept expressions such as `-3/2`, `3*sqrt(2)` or
/// `pi^3`.
#[derive(Debug, Parser)]
#[command(name = "cubicfields", version)]
pub struct Cli {
    /// Decimal digits to verify and print.
    #[arg(long, global = true, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..=2000))]
    pub digits: u32,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zeros of a cubic in closed trigonometric form.
    #[command(subcommand)]
    Roots(RootsCommand),
    /// Cubic Gaussian periods of a prime p = 1 (mod 3).
    Periods { p: u64 },
    /// Shanks primes tau(h) = h^2 + 3h + 9 up to a limit.
    ShanksPrimes {
        #[arg(long, default_value_t = 1000)]
        limit: u64,
    },
    /// Minimal polynomial of the Gaussian periods of tau(h).
    Minpoly {
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
    },
    /// Oriented differences of the Gaussian periods of a Shanks prime.
    Deltas { p: u64 },
    /// Verify a cube-root or catalog identity.
    #[command(subcommand)]
    Identity(IdentityCommand),
    /// Verify `<lhs> == <rhs>` numerically.
    Verify {
        #[arg(allow_hyphen_values = true)]
        equation: String,
    },
    /// Exact integer sequences.
    #[command(subcommand)]
    Seq(SeqCommand),
    /// Compare locally computed terms with an OEIS b-file.
    OeisCheck(OeisArgs),
}

#[derive(Debug, Subcommand)]
pub enum RootsCommand {
    /// a3 x^3 + a2 x^2 + a1 x + a0 with three real zeros.
    Cubic {
        #[arg(allow_hyphen_values = true)]
        a3: String,
        #[arg(allow_hyphen_values = true)]
        a2: String,
        #[arg(allow_hyphen_values = true)]
        a1: String,
        #[arg(allow_hyphen_values = true)]
        a0: String,
    },
    /// Shanks cubic x^3 - h x^2 - (h+3) x - 1.
    Scp {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// Ramanujan cubic x^3 + h s x^2 - (h+3) s^2 x + s^3.
    Rcp {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Show the resolvent, the sign branch and both scalings of the Shanks zeros.
        #[arg(long)]
        explain: bool,
    },
    /// Ramanujan cubic from gamma and r: zeros r^(1/3)/(2-g), (g-1) r^(1/3), (2-g)/(1-g) r^(1/3).
    Witula {
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum IdentityCommand {
    /// Sum of cube roots of the zeros of rho(h, s, x).
    Ramanujan {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// The cube-root identity for the cubic through alpha.
    Extended {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Cube roots of shifted Gaussian periods of tau(h).
    Gauss {
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
    },
    /// A catalog identity by name.
    Named {
        /// One of cos2pi7, sqrt2, pi_cos, pi_cbrt.
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        /// List the catalog instead.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum SeqCommand {
    /// 3, 5, 13, 38, ...: halved closed walks of even length on the path P_6.
    A198636(TermArgs),
    /// A(k, n) = Tr(M^(kn)) for the Shanks companion matrix M.
    Trace {
        #[arg(long, allow_hyphen_values = true)]
        h: i64,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[command(flatten)]
        terms: TermArgs,
    },
    /// Closed walks of length l = 0, 1, ... on the path with N vertices.
    Walks {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=500))]
        n: u64,
        #[command(flatten)]
        terms: TermArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct TermArgs {
    /// Number of terms, starting from index 0.
    #[arg(long, default_value_t = 10)]
    pub terms: usize,
    /// Print as b-file rows.
    #[arg(long)]
    pub bfile: bool,
}

#[derive(Debug, Args)]
pub struct OeisArgs {
    /// A005471 or A198636.
    pub id: String,
    /// Terms to compare for A198636.
    #[arg(long, default_value_t = 30)]
    pub terms: usize,
    /// Largest prime to compare for A005471.
    #[arg(long, default_value_t = 100_000)]
    pub limit: u64,
    /// Do not contact the OEIS server (also CUBICFIELDS_OFFLINE=1).
    #[arg(long)]
    pub offline: bool,
}
