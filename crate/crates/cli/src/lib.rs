//! The `knot` command line, as a library so it can be driven in-process.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use knot_core::curve_search::{default_bound, explicit_certificate, find_genus1_certificate, verify_certificate};
use knot_core::lattice::{find_embedding_with, min_embedding_dim_with, EmbeddingOutcome, MinDimOutcome, SearchLimits};
use knot_core::pipeline::{genus_bounds, verify_theorem, Budgets, Embeddable};
use knot_core::seifert::{alexander, knot_determinant, seifert_signature};
use knot_core::two_bridge::{fraction_to_cf, qmn_gram, seifert_matrix};
use knot_core::{GramLattice, IntMatrix, KnotParams, SliceReport};

const EXIT_INCONCLUSIVE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "knot", version, about = "Slice-genus certificates for the 2-bridge knots K(m,n)")]
struct Cli {
    /// Worker threads for the searches (default: available parallelism)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants and standing genus bounds of K(m,n), without searches
    Info {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Run both searches for every K(m,n) with m <= m_max, n <= n_max
    Verify {
        #[arg(long, allow_negative_numbers = true)]
        m_max: i64,
        #[arg(long, allow_negative_numbers = true)]
        n_max: i64,
        /// Coordinate bound for the curve search (default depends on m, n)
        #[arg(long, allow_negative_numbers = true)]
        curve_bound: Option<i64>,
        /// Largest ambient dimension the embedding search may use (default rank + 6)
        #[arg(long)]
        embed_cap: Option<usize>,
        /// Time budget per embedding search
        #[arg(long, default_value_t = 600.0)]
        embed_cap_seconds: f64,
        /// Node budget per embedding search (default unlimited)
        #[arg(long)]
        embed_max_nodes: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Embed a Gram lattice into Z^M, or find the smallest such M
    Lattice {
        gram_path: PathBuf,
        #[arg(long, required_unless_present = "mindim", conflicts_with = "mindim")]
        dim: Option<usize>,
        #[arg(long)]
        mindim: bool,
        /// Largest dimension tried by --mindim (default rank + 6)
        #[arg(long, requires = "mindim")]
        cap: Option<usize>,
        /// Time budget per dimension
        #[arg(long)]
        seconds: Option<f64>,
    },
    /// Signature, determinant or Alexander polynomial of a Seifert matrix file
    Seifert {
        matrix_path: PathBuf,
        #[arg(long)]
        sig: bool,
        #[arg(long)]
        det: bool,
        #[arg(long)]
        alex: bool,
    },
    /// Genus-one Alexander-trivial certificate for a Seifert matrix
    Curve {
        #[arg(long, conflicts_with_all = ["m", "n"])]
        matrix: Option<PathBuf>,
        #[arg(long, allow_negative_numbers = true, requires = "n")]
        m: Option<i64>,
        #[arg(long, allow_negative_numbers = true, requires = "m")]
        n: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        bound: Option<i64>,
        /// Skip the closed-form certificates and run the lexicographic search
        #[arg(long)]
        search: bool,
    },
    /// Print the Goeritz or Seifert matrix of K(m,n) in the matrix file format
    Matrix {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long, value_enum, default_value_t = MatrixKind::Goeritz)]
        kind: MatrixKind,
    },
}

#[derive(Args, Debug)]
struct KnotArgs {
    #[arg(long, allow_negative_numbers = true)]
    m: i64,
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
}

impl KnotArgs {
    fn params(&self) -> Result<KnotParams> {
        Ok(KnotParams::new(nonneg("m", self.m)?, nonneg("n", self.n)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    Goeritz,
    Seifert,
}

fn positive_seconds(name: &str, s: f64) -> Result<Duration> {
    match Duration::try_from_secs_f64(s) {
        Ok(d) if !d.is_zero() => Ok(d),
        _ => bail!("{name} must be a positive number of seconds"),
    }
}

fn nonneg(name: &str, v: i64) -> Result<u64> {
    if v < 0 {
        bail!("{name} must be >= 0");
    }
    Ok(v as u64)
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code: 0 on
/// success, 1 for usage or input errors, 2 when a search ran out of budget.
pub fn run_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return 1;
            }
            let _ = write!(out, "{rendered}");
            return 0;
        }
    };
    match run(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}

fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            bail!("jobs must be >= 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    match cli.command {
        Command::Info { knot, format } => cmd_info(knot.params()?, format, out),
        Command::Verify { m_max, n_max, curve_bound, embed_cap, embed_cap_seconds, embed_max_nodes, format } => {
            let m_max = nonneg("m-max", m_max)?;
            let n_max = nonneg("n-max", n_max)?;
            if curve_bound.is_some_and(|b| b < 1) {
                bail!("curve-bound must be >= 1");
            }
            let budgets = Budgets {
                curve_bound,
                embed_cap,
                embed_time: Some(positive_seconds("embed-cap-seconds", embed_cap_seconds)?),
                embed_nodes: embed_max_nodes,
            };
            cmd_verify(m_max, n_max, &budgets, format, out, err)
        }
        Command::Lattice { gram_path, dim, mindim, cap, seconds } => {
            cmd_lattice(&gram_path, dim, mindim, cap, seconds, out)
        }
        Command::Seifert { matrix_path, sig, det, alex } => cmd_seifert(&matrix_path, sig, det, alex, out),
        Command::Curve { matrix, m, n, bound, search } => cmd_curve(matrix.as_deref(), m, n, bound, search, out),
        Command::Matrix { knot, kind } => {
            let k = knot.params()?;
            let text = match kind {
                MatrixKind::Goeritz => qmn_gram(k).to_text(),
                MatrixKind::Seifert => seifert_matrix(k).to_text(),
            };
            write!(out, "# {kind:?} matrix of {k}\n{text}")?;
            Ok(0)
        }
    }
}

fn cmd_info(k: KnotParams, format: Format, out: &mut dyn Write) -> Result<u8> {
    let report = genus_bounds(k)?;
    match format {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => write!(out, "{}", to_csv(std::slice::from_ref(&report))?)?,
        Format::Human => {
            let name = k.table_name().map(|n| format!(" = {n}")).unwrap_or_default();
            writeln!(out, "{k}{name}")?;
            writeln!(out, "fraction = {}", report.fraction)?;
            writeln!(out, "cf = {}", fraction_to_cf(&report.fraction)?)?;
            writeln!(out, "sigma = {}", report.signature)?;
            writeln!(out, "det = {}", report.determinant)?;
            writeln!(out, "alexander = {}", report.alexander)?;
            writeln!(out, "g_top in [{}, {}]", report.gtop_lower, report.gtop_upper)?;
            writeln!(out, "g_sm in [{}, {}]", report.gsm_lower, report.gsm_upper)?;
            for note in &report.notes {
                writeln!(out, "# {note}")?;
            }
        }
    }
    Ok(0)
}

fn cmd_verify(
    m_max: u64,
    n_max: u64,
    budgets: &Budgets,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<u8> {
    let rows = verify_theorem(m_max, n_max, budgets)?;
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
        Format::Csv => write!(out, "{}", to_csv(&rows)?)?,
        Format::Human => print_table(&rows, out)?,
    }
    let inconclusive = rows.iter().filter(|r| !r.is_conclusive()).count();
    if inconclusive > 0 {
        writeln!(err, "{inconclusive} row(s) inconclusive")?;
        return Ok(EXIT_INCONCLUSIVE);
    }
    Ok(0)
}

fn embeddable_label(r: &SliceReport) -> (String, String) {
    match &r.embedding_verdict {
        None => (String::new(), "not run".into()),
        Some(v) => (
            v.tested_dim.to_string(),
            match v.embeddable {
                Embeddable::Yes => "yes",
                Embeddable::No => "no",
                Embeddable::Inconclusive => "inconclusive",
            }
            .into(),
        ),
    }
}

fn print_table(rows: &[SliceReport], out: &mut dyn Write) -> Result<()> {
    writeln!(
        out,
        "{:>3} {:>3} {:>8} {:>12} {:>5} {:>6} {:>6} {:>6} {:>13}  certificate",
        "m", "n", "knot", "p/q", "sigma", "det", "g_top", "g_sm", "Z^M embeds"
    )?;
    for r in rows {
        let (dim, emb) = embeddable_label(r);
        let cert = r.curve_certificate.as_ref().map_or("-".to_string(), |c| c.to_string());
        writeln!(
            out,
            "{:>3} {:>3} {:>8} {:>12} {:>5} {:>6} {:>6} {:>6} {:>13}  {}",
            r.params.m,
            r.params.n,
            r.params.table_name().unwrap_or("-"),
            r.fraction.to_string(),
            r.signature,
            r.determinant.to_string(),
            r.gtop_display(),
            r.gsm_display(),
            format!("{emb} (M={dim})"),
            cert
        )?;
    }
    Ok(())
}

fn to_csv(rows: &[SliceReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "m",
        "n",
        "knot",
        "fraction",
        "signature",
        "determinant",
        "alexander",
        "gtop",
        "gsm",
        "tested_dim",
        "embeddable",
        "certificate",
    ])?;
    for r in rows {
        let (dim, emb) = embeddable_label(r);
        w.write_record([
            r.params.m.to_string(),
            r.params.n.to_string(),
            r.params.table_name().unwrap_or("").to_string(),
            r.fraction.to_string(),
            r.signature.to_string(),
            r.determinant.to_string(),
            r.alexander.to_text(),
            r.gtop_display(),
            r.gsm_display(),
            dim,
            emb,
            r.curve_certificate.as_ref().map_or(String::new(), |c| c.to_string()),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn cmd_lattice(
    path: &Path,
    dim: Option<usize>,
    mindim: bool,
    cap: Option<usize>,
    seconds: Option<f64>,
    out: &mut dyn Write,
) -> Result<u8> {
    let g = GramLattice::parse_text(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    if let Some((index, value)) = g.first_nonpositive_minor() {
        bail!("not positive definite: leading principal minor {index} equals {value}");
    }
    let time = seconds.map(|s| positive_seconds("seconds", s)).transpose()?;
    let limits = SearchLimits { time, max_nodes: None };
    if mindim {
        let cap = cap.unwrap_or(g.rank() + 6);
        if cap < g.rank() {
            bail!("cap must be at least the rank {}", g.rank());
        }
        return Ok(match min_embedding_dim_with(&g, cap, &limits)? {
            MinDimOutcome::Found(d, e) => {
                writeln!(out, "MINDIM={d}")?;
                write!(out, "{}", e.to_text())?;
                0
            }
            MinDimOutcome::NoneUpTo(cap) => {
                writeln!(out, "NOT EMBEDDABLE dim<={cap}")?;
                0
            }
            MinDimOutcome::Inconclusive(d) => {
                writeln!(out, "INCONCLUSIVE dim={d}")?;
                EXIT_INCONCLUSIVE
            }
        });
    }
    let dim = dim.expect("clap requires --dim or --mindim");
    if dim == 0 {
        bail!("dim must be >= 1");
    }
    info!("searching for an embedding of a rank {} lattice into Z^{dim}", g.rank());
    Ok(match find_embedding_with(&g, dim, &limits)? {
        EmbeddingOutcome::Found(e) => {
            writeln!(out, "EMBEDDABLE dim={dim}")?;
            write!(out, "{}", e.to_text())?;
            0
        }
        EmbeddingOutcome::Absent => {
            writeln!(out, "NOT EMBEDDABLE dim={dim}")?;
            0
        }
        EmbeddingOutcome::Inconclusive => {
            writeln!(out, "INCONCLUSIVE dim={dim}")?;
            EXIT_INCONCLUSIVE
        }
    })
}

fn cmd_seifert(path: &Path, sig: bool, det: bool, alex: bool, out: &mut dyn Write) -> Result<u8> {
    let m = IntMatrix::parse_text(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let all = !(sig || det || alex);
    let label = |name: &str| if all { format!("{name} = ") } else { String::new() };
    if sig || all {
        writeln!(out, "{}{}", label("sigma"), seifert_signature(&m)?)?;
    }
    if det || all {
        writeln!(out, "{}{}", label("det"), knot_determinant(&m)?)?;
    }
    if alex || all {
        writeln!(out, "{}{}", label("alexander"), alexander(&m)?)?;
    }
    Ok(0)
}

fn cmd_curve(
    path: Option<&Path>,
    m: Option<i64>,
    n: Option<i64>,
    bound: Option<i64>,
    search: bool,
    out: &mut dyn Write,
) -> Result<u8> {
    if bound.is_some_and(|b| b < 1) {
        bail!("bound must be >= 1");
    }
    let (matrix, family) = match (path, m, n) {
        (Some(p), _, _) => {
            (IntMatrix::parse_text(&read(p)?).with_context(|| format!("parsing {}", p.display()))?, None)
        }
        (None, Some(m), Some(n)) => {
            let k = KnotParams::new(nonneg("m", m)?, nonneg("n", n)?);
            (seifert_matrix(k).matrix().clone(), Some(k))
        }
        _ => bail!("give either --matrix or both --m and --n"),
    };
    matrix.ensure_square()?;
    let bound = bound.unwrap_or_else(|| family.map_or(3, default_bound));

    if let Some(k) = family.filter(|_| !search) {
        if let Some((case, c)) = explicit_certificate(k) {
            if c.max_coord() <= bound && verify_certificate(&matrix, &c) {
                writeln!(out, "{c}")?;
                writeln!(out, "# case {case}")?;
                return Ok(0);
            }
        }
    }
    match find_genus1_certificate(&matrix, bound)? {
        Some(c) => {
            writeln!(out, "{c}")?;
            writeln!(out, "# lexicographic search, bound {bound}")?;
        }
        None => writeln!(out, "NONE within bound {bound}")?,
    }
    Ok(0)
}
