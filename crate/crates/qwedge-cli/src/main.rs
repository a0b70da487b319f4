//! Command-line front end: exact level-1 Fock-space computations with
//! reproducible, bit-exact textual output. Every command prints in a
//! canonical form that its own parsers accept back, so outputs can be fed
//! into further invocations or kept as golden files.

// The doc comments on the clap derive double as `--help` text, where grammar
// samples like "v[2]" and "vacuum<k>" must stay unquoted; rustdoc would read
// them as links and tags.
#![allow(rustdoc::broken_intra_doc_links, rustdoc::invalid_html_tags)]

use std::process::ExitCode;

use qwedge_cli::expr;

use anyhow::{anyhow, bail, Result};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use qwedge_core::hecke::antisymmetrize;
use qwedge_core::{
    act_on_wedge, class_charge, compose, finite_wedge_poly, kz_residual, matrix_coefficient,
    selftest, split_first, stability_probe, straighten, wedge_from_young, weight, young_from_wedge,
    Algebra, FlatIndex, FockError, LaurentQ, TensorVector, WedgeError, WedgeVector,
};

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AlgebraChoice {
    /// The affine algebra of the configured rank.
    Affine,
    /// The rank-free algebra (flat indices are the letters themselves).
    SlInf,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatChoice {
    /// Human-readable lines and tables.
    Text,
    /// Tab-separated records, one per line.
    Structured,
}

/// Exact q-wedge computations: straightening, quantum-group actions,
/// vertex splittings, exchange-system residues, partition bookkeeping.
#[derive(Parser)]
#[command(name = "qwedge", version, max_term_width = 100)]
struct Cli {
    /// Rank of the affine algebra (ignored by --algebra sl-inf).
    #[arg(long, global = true, env = "QWEDGE_N", default_value_t = 2)]
    n: usize,

    /// Working truncation depth for semi-infinite labels.
    #[arg(long, global = true, env = "QWEDGE_DEPTH", default_value_t = 8)]
    depth: usize,

    /// Which algebra the session speaks.
    #[arg(
        long,
        global = true,
        env = "QWEDGE_ALGEBRA",
        value_enum,
        default_value_t = AlgebraChoice::Affine
    )]
    algebra: AlgebraChoice,

    /// Evaluate all coefficients at q = 1 before printing.
    #[arg(long, global = true, env = "QWEDGE_CLASSICAL")]
    classical: bool,

    /// Output format.
    #[arg(
        long,
        global = true,
        env = "QWEDGE_FORMAT",
        value_enum,
        default_value_t = FormatChoice::Text
    )]
    format: FormatChoice,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normally order a word: express its q-wedge in strictly decreasing wedges.
    Straighten {
        /// Word to straighten, e.g. "v1 ^ v2" or "z^1*v[2] ^ v[1] | vac(-2)".
        expr: String,
    },

    /// Apply a generator to a wedge expression.
    Act {
        /// Generator, e.g. "e[3]", "K[0]", "E[0;-2]".
        gen: String,
        /// Target wedge: a word, a combination, or "vacuum<k>".
        target: String,
    },

    /// Fully q-antisymmetrize a word (semi-infinite words truncate at --depth).
    Antisym {
        /// Word to antisymmetrize, e.g. "v1 (x) v3 (x) v2".
        expr: String,
    },

    /// Split leading factors off a semi-infinite wedge and tabulate the expansion.
    Vertex {
        /// Input wedge (default: the class/charge 0 vacuum).
        #[arg(long, default_value = "vacuum0")]
        input: String,
        /// How many leading factors to split off.
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Only print rows up to this index.
        #[arg(long)]
        max_j: Option<i64>,
        /// Print only the matrix coefficient of this target wedge.
        #[arg(long)]
        target: Option<String>,
    },

    /// Verify the cleared exchange-system residuals slot by slot.
    #[command(alias = "kz-check")]
    Kz {
        /// Number of vacuum copies (the polynomial has n*N variables).
        #[arg(long = "N")]
        copies: usize,
    },

    /// Convert between wedges and partitions.
    #[command(group(ArgGroup::new("source").required(true).args(["from_wedge", "from_partition"])))]
    Young {
        /// Read a wedge expression and print its partition.
        #[arg(long)]
        from_wedge: Option<String>,
        /// Read a partition like [3,2] and print its wedge.
        #[arg(long)]
        from_partition: Option<String>,
        /// Sector: the class (affine) or charge (rank-free) of the wedge.
        #[arg(long)]
        class: Option<i64>,
    },

    /// Weight data of a wedge: eigenvalues, graded pieces, level.
    Weight {
        /// Wedge expression.
        expr: String,
    },

    /// Compare truncated expansions at two depths (stability evidence).
    Probe {
        /// Input wedge (default: the class/charge 0 vacuum).
        #[arg(long, default_value = "vacuum0")]
        input: String,
        /// Shallower depth.
        #[arg(long, default_value_t = 4)]
        shallow: usize,
        /// Deeper depth.
        #[arg(long, default_value_t = 6)]
        deep: usize,
    },

    /// Run the acceptance suite and print one verdict per criterion.
    Selftest,
}

#[derive(Copy, Clone)]
struct Session {
    alg: Algebra,
    n: usize,
    depth: usize,
    classical: bool,
    format: FormatChoice,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    if cli.n < 2 {
        bail!("rank must be at least 2 (got {})", cli.n);
    }
    if cli.n > 4096 {
        bail!("rank must be at most 4096 (got {})", cli.n);
    }
    if cli.depth < cli.n + 2 {
        bail!(
            "depth must be at least rank + 2 = {} (got {})",
            cli.n + 2,
            cli.depth
        );
    }
    if cli.depth > 8192 {
        bail!("depth must be at most 8192 (got {})", cli.depth);
    }
    let session = Session {
        alg: match cli.algebra {
            AlgebraChoice::Affine => Algebra::Affine { n: cli.n },
            AlgebraChoice::SlInf => Algebra::SlInf,
        },
        n: cli.n,
        depth: cli.depth,
        classical: cli.classical,
        format: cli.format,
    };
    match cli.command {
        Command::Straighten { expr } => cmd_straighten(session, &expr),
        Command::Act { gen, target } => cmd_act(session, &gen, &target),
        Command::Antisym { expr } => cmd_antisym(session, &expr),
        Command::Vertex {
            input,
            steps,
            max_j,
            target,
        } => cmd_vertex(session, &input, steps, max_j, target.as_deref()),
        Command::Kz { copies } => cmd_kz(session, copies),
        Command::Young {
            from_wedge,
            from_partition,
            class,
        } => cmd_young(
            session,
            from_wedge.as_deref(),
            from_partition.as_deref(),
            class,
        ),
        Command::Weight { expr } => cmd_weight(session, &expr),
        Command::Probe {
            input,
            shallow,
            deep,
        } => cmd_probe(session, &input, shallow, deep),
        Command::Selftest => cmd_selftest(session),
    }
}

/// Rewraps depth-related failures with the flag that fixes them.
fn with_depth_hint(e: WedgeError, session: Session) -> anyhow::Error {
    let hint = match &e {
        WedgeError::Fock(FockError::BoundaryViolation { slot, .. }) => {
            Some((*slot).max(session.n + 2))
        }
        WedgeError::Fock(FockError::TruncationTooShallow { minimal, .. }) => {
            Some((*minimal).max(session.n + 2))
        }
        WedgeError::RecognitionFailure(_) => Some(session.depth + 2),
        _ => None,
    };
    match hint {
        Some(depth) => anyhow!("{e}; rerun with --depth {depth}"),
        None => anyhow!(e),
    }
}

/// Parses a target as a combination of ordered wedges, falling back to
/// straightening a single non-ordered word.
fn parse_target(session: Session, src: &str) -> Result<WedgeVector> {
    match expr::parse_wedge_vector(src, session.alg) {
        Ok(v) => Ok(v),
        Err(first) => {
            let t = expr::parse_word(src, session.alg).map_err(|_| first)?;
            straighten(session.alg, &TensorVector::unit(t)).map_err(|e| with_depth_hint(e, session))
        }
    }
}

fn print_wedge_result(session: Session, v: &WedgeVector) {
    let v = if session.classical {
        v.eval_q1()
    } else {
        v.clone()
    };
    match session.format {
        FormatChoice::Text => println!("{}", expr::render_wedge_vector(&v)),
        FormatChoice::Structured => {
            println!("terms\t{}", v.iter().count());
            for (w, c) in v.iter() {
                println!("term\t{c}\t{}", expr::render_wedge_term(w));
            }
        }
    }
}

fn print_tensor_result(session: Session, v: &TensorVector) {
    let v = if session.classical {
        v.eval_q1()
    } else {
        v.clone()
    };
    match session.format {
        FormatChoice::Text => println!("{}", expr::render_tensor_vector(&v)),
        FormatChoice::Structured => {
            println!("terms\t{}", v.iter().count());
            for (t, c) in v.iter() {
                println!("term\t{c}\t{}", expr::render_tensor(t));
            }
        }
    }
}

fn cmd_straighten(session: Session, src: &str) -> Result<bool> {
    let t = expr::parse_word(src, session.alg)?;
    let v =
        straighten(session.alg, &TensorVector::unit(t)).map_err(|e| with_depth_hint(e, session))?;
    print_wedge_result(session, &v);
    Ok(true)
}

fn cmd_act(session: Session, gen: &str, target: &str) -> Result<bool> {
    let label = expr::parse_generator(gen, session.n)?;
    match (label.algebra(), session.alg) {
        (Algebra::SlInf, Algebra::SlInf) | (Algebra::Affine { .. }, Algebra::Affine { .. }) => {}
        (Algebra::SlInf, _) => {
            bail!("generator {gen} belongs to the rank-free algebra; rerun with --algebra sl-inf")
        }
        (Algebra::Affine { .. }, _) => {
            bail!("generator {gen} belongs to the affine algebra; rerun with --algebra affine")
        }
    }
    let v = parse_target(session, target)?;
    let image = act_on_wedge(&label, &v).map_err(|e| with_depth_hint(e, session))?;
    print_wedge_result(session, &image);
    Ok(true)
}

fn cmd_antisym(session: Session, src: &str) -> Result<bool> {
    let t = expr::parse_word(src, session.alg)?;
    let (input, width) = if t.is_semi_infinite() {
        let truncated = t
            .truncate(session.depth)
            .map_err(|e| with_depth_hint(WedgeError::Fock(e), session))?;
        (truncated, session.depth)
    } else {
        let width = t.len();
        (t, width)
    };
    let v = antisymmetrize(session.alg, &TensorVector::unit(input), width)
        .map_err(|e| with_depth_hint(WedgeError::Fock(e), session))?;
    print_tensor_result(session, &v);
    Ok(true)
}

/// Row index of a split entry: the spectral exponent of the first factor
/// (affine), or its descent offset from the input charge (rank-free).
fn row_index(alg: Algebra, charge: i64, first: FlatIndex) -> i64 {
    match alg {
        Algebra::SlInf => charge - first,
        Algebra::Affine { n } => (alg.class_letter(first) - first) / n as i64,
    }
}

fn cmd_vertex(
    session: Session,
    input: &str,
    steps: usize,
    max_j: Option<i64>,
    target: Option<&str>,
) -> Result<bool> {
    let v = parse_target(session, input)?;
    let charge = v
        .iter()
        .next()
        .and_then(|(w, _)| w.charge())
        .ok_or_else(|| anyhow!("vertex input must be a nonzero semi-infinite wedge"))?;

    if let Some(target) = target {
        let expansion = compose(session.alg, &v, steps, session.depth)
            .map_err(|e| with_depth_hint(e, session))?;
        let target = expr::parse_wedge_term(target, session.alg)?;
        let coefficient =
            matrix_coefficient(&expansion, &target).map_err(|e| with_depth_hint(e, session))?;
        print_tensor_result(session, &coefficient);
        return Ok(true);
    }

    if steps == 1 {
        let expansion =
            split_first(session.alg, &v, session.depth).map_err(|e| with_depth_hint(e, session))?;
        if session.format == FormatChoice::Text {
            println!("j  first  coefficient  rest");
        }
        for entry in expansion.entries() {
            let j = row_index(session.alg, charge, entry.first);
            if max_j.is_some_and(|cap| j > cap) {
                continue;
            }
            let (coeff, rest) = if session.classical {
                (
                    LaurentQ::int(entry.coefficient.eval_q1()),
                    entry.rest.eval_q1(),
                )
            } else {
                (entry.coefficient.clone(), entry.rest.clone())
            };
            let first = expr::render_flat(entry.first);
            let rest = expr::render_wedge_vector(&rest);
            match session.format {
                FormatChoice::Text => println!("{j}  {first}  {coeff}  {rest}"),
                FormatChoice::Structured => println!("entry\t{j}\t{first}\t{coeff}\t{rest}"),
            }
        }
        return Ok(true);
    }

    let expansion =
        compose(session.alg, &v, steps, session.depth).map_err(|e| with_depth_hint(e, session))?;
    if session.format == FormatChoice::Text {
        println!("firsts  coefficient  rest");
    }
    for (tuple, (coefficient, rest)) in expansion.entries() {
        let (coeff, rest) = if session.classical {
            (LaurentQ::int(coefficient.eval_q1()), rest.eval_q1())
        } else {
            (coefficient.clone(), rest.clone())
        };
        let firsts: Vec<String> = tuple.iter().copied().map(expr::render_flat).collect();
        let firsts = firsts.join(" (x) ");
        let rest = expr::render_wedge_vector(&rest);
        match session.format {
            FormatChoice::Text => println!("{firsts}  {coeff}  {rest}"),
            FormatChoice::Structured => println!("entry\t{firsts}\t{coeff}\t{rest}"),
        }
    }
    Ok(true)
}

fn cmd_kz(session: Session, copies: usize) -> Result<bool> {
    if copies == 0 {
        bail!("--N must be at least 1");
    }
    let n = session.n;
    let w = finite_wedge_poly(n, copies)?;
    let slots = n * copies;
    let mut all_pass = true;
    for slot in 1..=slots {
        let residual = kz_residual(&w, n, slot)?;
        let bad = residual.iter().find(|(_, p)| !p.is_zero());
        match (session.format, bad) {
            (FormatChoice::Text, None) => println!("slot {slot}: PASS"),
            (FormatChoice::Structured, None) => println!("slot\t{slot}\tPASS"),
            (FormatChoice::Text, Some((tuple, poly))) => {
                println!("slot {slot}: FAIL at tuple {tuple:?}: {poly}");
                all_pass = false;
            }
            (FormatChoice::Structured, Some((tuple, poly))) => {
                let tuple: Vec<String> = tuple.iter().map(|l| l.to_string()).collect();
                println!("slot\t{slot}\tFAIL\t{}\t{poly}", tuple.join(","));
                all_pass = false;
            }
        }
    }
    Ok(all_pass)
}

fn cmd_young(
    session: Session,
    from_wedge: Option<&str>,
    from_partition: Option<&str>,
    class: Option<i64>,
) -> Result<bool> {
    if let Some(src) = from_wedge {
        let w = expr::parse_wedge_term(src, session.alg)?;
        let (p, charge) = young_from_wedge(&w);
        if let Some(class) = class {
            let expected = class_charge(session.alg, class);
            if charge != expected {
                bail!("wedge lies at charge {charge}, but class {class} means charge {expected}");
            }
        }
        match session.format {
            FormatChoice::Text => println!("{}", expr::render_partition(&p)),
            FormatChoice::Structured => {
                println!("partition\t{}", expr::render_partition(&p));
                println!("charge\t{charge}");
            }
        }
        return Ok(true);
    }
    let src = from_partition.expect("clap guarantees one source");
    let p = expr::parse_partition(src)?;
    let class = class.unwrap_or(0);
    let w = wedge_from_young(session.alg, &p, class, session.depth)
        .map_err(|e| with_depth_hint(e, session))?;
    match session.format {
        FormatChoice::Text => println!("{}", expr::render_wedge_term(&w)),
        FormatChoice::Structured => {
            println!("wedge\t{}", expr::render_wedge_term(&w));
            println!("charge\t{}", class_charge(session.alg, class));
        }
    }
    Ok(true)
}

fn cmd_weight(session: Session, src: &str) -> Result<bool> {
    let w = expr::parse_wedge_term(src, session.alg)?;
    let report = weight(session.alg, &w);
    let aggregate_indices: Vec<i64> = match session.alg {
        Algebra::Affine { n } => (0..n as i64).collect(),
        Algebra::SlInf => report.aggregate.keys().copied().collect(),
    };
    match session.format {
        FormatChoice::Text => {
            println!("charge = {}", report.charge);
            println!("class = {}", report.class);
            for i in aggregate_indices {
                println!("H[{i}] = {}", report.h(i));
            }
            for (&(i, d), &c) in report.graded.iter() {
                println!("H[{i};{d}] = {c}");
            }
            println!("level = {}", report.level());
        }
        FormatChoice::Structured => {
            println!("charge\t{}", report.charge);
            println!("class\t{}", report.class);
            for i in aggregate_indices {
                println!("h\t{i}\t{}", report.h(i));
            }
            for (&(i, d), &c) in report.graded.iter() {
                println!("graded\t{i}\t{d}\t{c}");
            }
            println!("level\t{}", report.level());
        }
    }
    Ok(true)
}

fn cmd_probe(session: Session, input: &str, shallow: usize, deep: usize) -> Result<bool> {
    let w = expr::parse_wedge_term(input, session.alg)?;
    let report = stability_probe(session.alg, &w, shallow, deep, session.classical)
        .map_err(|e| with_depth_hint(WedgeError::Fock(e), session))?;
    match session.format {
        FormatChoice::Text => print!("{report}"),
        FormatChoice::Structured => {
            println!("depths\t{}\t{}", report.depths.0, report.depths.1);
            println!("window\t{}", report.window);
            println!("classical\t{}", report.classical);
            println!("compared\t{}", report.compared);
            println!("stable\t{}", report.stable);
            println!("unstable\t{}", report.discrepancies.len());
            match report.min_unstable_degree {
                None => println!("min-unstable-degree\t-"),
                Some(d) => println!("min-unstable-degree\t{d}"),
            }
            for disc in &report.discrepancies {
                let window: Vec<String> =
                    disc.window.iter().copied().map(expr::render_flat).collect();
                println!(
                    "discrepancy\t{}\t{}\t{}",
                    window.join(" ^ "),
                    disc.shallow,
                    disc.deep
                );
            }
        }
    }
    Ok(true)
}

fn cmd_selftest(session: Session) -> Result<bool> {
    let reports = selftest::run_all();
    let mut all_pass = true;
    for report in &reports {
        let word = if report.passed { "PASS" } else { "FAIL" };
        all_pass &= report.passed;
        match session.format {
            FormatChoice::Text => println!(
                "{word} criterion {:2} ({}): {}",
                report.number, report.name, report.detail
            ),
            FormatChoice::Structured => println!(
                "criterion\t{}\t{word}\t{}\t{}",
                report.number, report.name, report.detail
            ),
        }
    }
    Ok(all_pass)
}
