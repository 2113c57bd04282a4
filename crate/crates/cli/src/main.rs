mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use tensorcat::Error;

#[derive(Parser)]
#[command(name = "tensorcat", version, about = "Exact computations in finitely presented tensor categories")]
struct Cli {
    /// Print only the JSON report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct ModuleArgs {
    /// Ring literal, e.g. `QQ`, `ZZ`, `ZZ/6`, `QQ[x]/(x^2)`.
    #[arg(long, default_value = "QQ")]
    ring: String,
    /// Rank of the free module over `--ring`.
    #[arg(long, default_value_t = 2)]
    rank: usize,
    /// JSON module literal `{"ring": .., "gens": n, "rels": [[..], ..]}`; overrides `--ring`/`--rank`.
    #[arg(long)]
    module: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Tensor, symmetric or antisymmetric powers of a module.
    Sympow {
        #[command(flatten)]
        m: ModuleArgs,
        /// Highest degree.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// tensor | sym | asym
        #[arg(long, default_value = "sym")]
        kind: String,
    },
    /// Exterior powers Λ^0 .. Λ^n.
    Extpow {
        #[command(flatten)]
        m: ModuleArgs,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// auto | asym | alternating
        #[arg(long, default_value = "auto")]
        mode: String,
    },
    /// Local freeness of rank d: Λ^d invertible, ω = 0, and the duality triangles.
    LocallyFree {
        #[command(flatten)]
        m: ModuleArgs,
        #[arg(long)]
        d: usize,
    },
    /// Inverse of a square matrix through exterior powers.
    Cramer {
        /// Rows separated by `;`, entries by `,`, e.g. `1,2;3,4`.
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value = "QQ")]
        ring: String,
    },
    /// Certificate for the bracket antisymmetry identity.
    BracketCert,
    /// Algebraic de Rham complex of a finite-dimensional algebra.
    Derham {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 3)]
        pmax: usize,
    },
    /// Koszul complex of a covector s : Q^n → Q.
    Koszul {
        /// Comma-separated rationals.
        #[arg(long)]
        s: String,
        /// Vector with s(e) ≠ 0 for the contraction check.
        #[arg(long)]
        e: Option<String>,
        #[arg(long)]
        pmax: Option<usize>,
    },
    /// Quadrics cutting out the Segre image.
    Segre {
        #[arg(long, num_args = 2, value_names = ["N1", "N2"])]
        dims: Vec<usize>,
    },
    /// Quadrics cutting out the Veronese image.
    Veronese {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Plücker quadrics of the Grassmannian of rank-d quotients of Q^n.
    Plucker {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Rees presentation of the blow-up algebra.
    Rees {
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Tensor product of two finite algebras of a theory.
    MonadTensor {
        /// pointed | supl | slat | mod<n> | mset-c<n> | mset-lz
        #[arg(long)]
        theory: String,
        /// Number of free generators, or a JSON algebra literal.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Monad, strength and commutativity laws of a theory on small sets.
    MonadLaws {
        #[arg(long)]
        theory: String,
        #[arg(long, default_value_t = 2)]
        max_size: usize,
    },
    /// Ideals of Z and the dyadic localization.
    Quantale {
        #[command(subcommand)]
        cmd: QuantaleCmd,
    },
    /// Reflections into torsion-free groups and localizations.
    Reflect {
        #[command(subcommand)]
        cmd: ReflectCmd,
    },
    /// The free symmetric monoidal category on a finite category.
    Freesym {
        #[command(subcommand)]
        cmd: FreesymCmd,
    },
    /// Run a property suite.
    Check {
        /// A module name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
}

#[derive(Subcommand)]
enum QuantaleCmd {
    /// Prime ideals (n) for n up to a bound.
    SpecZ {
        #[arg(long, default_value_t = 30)]
        max_prime: u128,
    },
    /// Zariski laws on random ideals.
    Zariski {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        count: usize,
        #[arg(long, default_value_t = 100)]
        max_prime: u128,
    },
    /// Localize a sequence at multiplication by 1/2.
    LocalizeHalf {
        /// `degree:value,...`, e.g. `3:1,4:1`.
        #[arg(long)]
        window: String,
        /// Law below the window: geometric | constant
        #[arg(long, default_value = "geometric")]
        head: String,
        /// Law above the window: geometric | constant
        #[arg(long, default_value = "constant")]
        tail: String,
    },
    /// Product, sup and unit under the localization value map.
    LocalizeIso {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum ReflectCmd {
    /// Reflection onto groups on which multiplication by a is injective.
    Torsion {
        /// Invariant factors, 0 for a free summand, e.g. `0,12`.
        #[arg(long)]
        group: String,
        #[arg(long)]
        a: u64,
        /// Also verify the universal property against all finite targets up to this order.
        #[arg(long)]
        targets_up_to: Option<u64>,
    },
    /// Tensor product in torsion-free groups.
    TfTensor {
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
    },
    /// Localization of a graded Q[t]-module at t.
    Section {
        /// Cyclic summands: `free`, `free@2`, `t^3`, `t^3@1`, comma-separated.
        #[arg(long)]
        summands: String,
        #[arg(long, default_value_t = 8)]
        top: usize,
    },
}

#[derive(Subcommand)]
enum FreesymCmd {
    /// Composite g ∘ f (or tensor f ⊗ g) of morphisms `σ|f_1,..,f_n`.
    Compose {
        /// point | idem | discrete:N | cyclic:K | JSON literal
        #[arg(long, default_value = "idem")]
        cat: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        tensor: bool,
    },
    /// Image of a morphism under the extension of a matrix-valued functor.
    Extend {
        #[arg(long, default_value = "idem")]
        cat: String,
        /// JSON functor literal; defaults to the built-in example on `idem`.
        #[arg(long)]
        functor: Option<String>,
        #[arg(long)]
        morphism: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        pairs: usize,
    },
}

/// Result of a successful run: pass/fail with witnesses.
pub struct Outcome {
    pub passed: bool,
    pub payload: Value,
    pub witnesses: Vec<String>,
    pub summary: Vec<String>,
}

impl Outcome {
    pub fn new(passed: bool, payload: Value) -> Self {
        Outcome { passed, payload, witnesses: Vec::new(), summary: Vec::new() }
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witnesses.push(w.into());
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }
}

fn dispatch(cmd: Command) -> tensorcat::Result<Outcome> {
    use commands::*;
    match cmd {
        Command::Sympow { m, n, kind } => sympow(&m, n, &kind),
        Command::Extpow { m, n, mode } => extpow(&m, n, &mode),
        Command::LocallyFree { m, d } => locally_free(&m, d),
        Command::Cramer { matrix, ring } => cramer(&matrix, &ring),
        Command::BracketCert => bracket_cert(),
        Command::Derham { algebra, pmax } => derham(&algebra, pmax),
        Command::Koszul { s, e, pmax } => koszul(&s, e.as_deref(), pmax),
        Command::Segre { dims } => segre(dims[0], dims[1]),
        Command::Veronese { n, d } => veronese(n, d),
        Command::Plucker { n, d } => plucker(n, d),
        Command::Rees { bound } => rees(bound),
        Command::MonadTensor { theory, a, b } => monad_tensor(&theory, &a, &b),
        Command::MonadLaws { theory, max_size } => monad_laws(&theory, max_size),
        Command::Quantale { cmd } => match cmd {
            QuantaleCmd::SpecZ { max_prime } => spec_z(max_prime),
            QuantaleCmd::Zariski { seed, count, max_prime } => zariski(seed, count, max_prime),
            QuantaleCmd::LocalizeHalf { window, head, tail } => localize_half(&window, &head, &tail),
            QuantaleCmd::LocalizeIso { seed, count } => localize_iso(seed, count),
        },
        Command::Reflect { cmd } => match cmd {
            ReflectCmd::Torsion { group, a, targets_up_to } => reflect_torsion(&group, a, targets_up_to),
            ReflectCmd::TfTensor { m, n } => tf_tensor(&m, &n),
            ReflectCmd::Section { summands, top } => section(&summands, top),
        },
        Command::Freesym { cmd } => match cmd {
            FreesymCmd::Compose { cat, f, g, tensor } => freesym_compose(&cat, &f, &g, tensor),
            FreesymCmd::Extend { cat, functor, morphism, seed, pairs } => freesym_extend(&cat, functor.as_deref(), &morphism, seed, pairs),
        },
        Command::Check { suite, seed, max_size } => check(&suite, seed, max_size),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::RingMismatch(_) => "ring_mismatch",
        Error::Unsupported(_) => "unsupported",
        Error::Invalid(_) => "invalid",
        Error::NotInvertible(_) => "not_invertible",
        Error::Internal(_) => "internal",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let (status, code, payload, witnesses, summary) = match dispatch(cli.command) {
        Ok(mut o) => {
            if !o.passed && o.witnesses.is_empty() {
                o.witnesses.push("check failed".into());
            }
            let (status, code) = if o.passed { ("pass", 0) } else { ("fail", 1) };
            (status, code, o.payload, o.witnesses, o.summary)
        }
        Err(e) => ("error", 2, json!({ "error": error_kind(&e), "message": e.to_string() }), vec![e.to_string()], vec![]),
    };
    let report = json!({ "command": echo, "status": status, "payload": payload, "witnesses": witnesses });
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    if !cli.json {
        for line in &summary {
            eprintln!("{line}");
        }
        for w in &witnesses {
            eprintln!("witness: {w}");
        }
        eprintln!("status: {status}");
    }
    ExitCode::from(code)
}
