//! `xorsig`: enumerate signatures of XOR-CNF formulas from the command line.
//!
//! Exit codes: 0 success, 1 usage, 2 parse error, 3 engine refusal,
//! 4 internal invariant breach.

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::ops::ControlFlow;
use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use xorsig::flashlight::{enumerate_all, FlashlightOptions};
use xorsig::formula::{parse_xnf, Assignment, Signature, XorCnf};
use xorsig::gen;
use xorsig::gf2;
use xorsig::hardness::{brute_extension, decode_witness, parse_dimacs, reduce_3sat, DEFAULT_FREE_CAP};
use xorsig::maxgen::{self, MaxEngine, MaxSigRecord, DEFAULT_RANK_CAP};
use xorsig::oracle;
use xorsig::rb2xor;

#[derive(Parser, Debug)]
#[command(name = "xorsig", version, about = "Enumerate signatures of XOR-CNF formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every signature, by flashlight search.
    All {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: OutputOpts,
        /// Also compute a witness assignment for each signature.
        #[arg(long)]
        witness: bool,
    },
    /// Maximal signatures.
    Max(ExtremeArgs),
    /// Minimal signatures.
    Min(ExtremeArgs),
    /// Whether a bit string is a signature, and whether it is maximal or minimal.
    Check {
        #[command(flatten)]
        input: Input,
        /// Candidate signature, one bit per clause.
        #[arg(long)]
        sig: String,
    },
    /// Reduce a DIMACS CNF (clauses of at most 3 literals) to a maximal
    /// bipartite subgraph extension instance.
    Reduce3sat {
        /// DIMACS CNF file, or `-` for standard input.
        cnf: PathBuf,
        /// What to print for the graph.
        #[arg(long, value_enum, default_value_t = Emit::Dump)]
        emit: Emit,
        /// Also search for an extension witness and decode it.
        #[arg(long)]
        solve: bool,
    },
    /// Size, rank and component count of a formula.
    Stats {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Time every engine on seeded random instances.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct Input {
    /// XNF formula file, or `-` for standard input.
    file: PathBuf,
}

#[derive(Args, Debug, Clone, Copy)]
struct OutputOpts {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Stop after this many outputs.
    #[arg(long)]
    limit: Option<u64>,
    /// Print only the number of outputs.
    #[arg(long)]
    count_only: bool,
}

#[derive(Args, Debug)]
struct ExtremeArgs {
    #[command(flatten)]
    input: Input,
    #[command(flatten)]
    out: OutputOpts,
    #[arg(long, value_enum, default_value_t = EngineChoice::Exact)]
    engine: EngineChoice,
    /// Largest rank the exact engine accepts.
    #[arg(long, default_value_t = DEFAULT_RANK_CAP)]
    rank_cap: usize,
    /// Largest variable count the brute-force engine accepts.
    #[arg(long, default_value_t = oracle::DEFAULT_VAR_CAP)]
    var_cap: usize,
    /// Skip witness assignments.
    #[arg(long)]
    no_witness: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    instances: usize,
    /// Variables per general instance.
    #[arg(long, default_value_t = 10)]
    vars: usize,
    /// Clauses per instance.
    #[arg(long, default_value_t = 18)]
    clauses: usize,
    /// Maximum clause width of general instances.
    #[arg(long, default_value_t = 4)]
    width: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Ndjson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EngineChoice {
    Exact,
    Supergraph,
    Proximity,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    /// `edge <id> <u> <v> blue` lines, with A and B as comments.
    Dump,
    /// The disequality formula of the graph in XNF.
    Xnf,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(String),
    Refused(String),
    Internal(String),
    Io(io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Refused(_) => 3,
            Failure::Internal(_) => 4,
            Failure::Io(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Refused(m) | Failure::Internal(m) => f.write_str(m),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load(input: &Input) -> Result<XorCnf, Failure> {
    let text = read_input(&input.file)?;
    parse_xnf(&text).map_err(|e| Failure::Parse(format!("{}: {e}", input.file.display())))
}

/// Streams results to stdout, one flushed line per output, and checks that
/// each witness really produces its signature.
struct Emitter<'a> {
    phi: &'a XorCnf,
    opts: OutputOpts,
    out: io::StdoutLock<'static>,
    seq: u64,
    last: Instant,
    failure: Option<Failure>,
}

impl<'a> Emitter<'a> {
    fn new(phi: &'a XorCnf, opts: OutputOpts) -> Self {
        Self { phi, opts, out: io::stdout().lock(), seq: 0, last: Instant::now(), failure: None }
    }

    fn emit(&mut self, sig: &Signature, witness: Option<&Assignment>) -> ControlFlow<()> {
        if self.opts.limit.is_some_and(|l| self.seq >= l) {
            return ControlFlow::Break(());
        }
        if let Some(w) = witness {
            if self.phi.evaluate(w).as_ref() != Ok(sig) {
                self.failure = Some(Failure::Internal(format!("witness {w} does not produce signature {sig}")));
                return ControlFlow::Break(());
            }
        }
        self.seq += 1;
        let now = Instant::now();
        let delay = now.duration_since(self.last);
        self.last = now;
        if !self.opts.count_only {
            if let Err(e) = self.write_line(sig, witness, delay) {
                self.failure = Some(e.into());
                return ControlFlow::Break(());
            }
        }
        if self.opts.limit.is_some_and(|l| self.seq >= l) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    }

    fn write_line(&mut self, sig: &Signature, witness: Option<&Assignment>, delay: Duration) -> io::Result<()> {
        match self.opts.format {
            Format::Text => writeln!(self.out, "{sig}")?,
            Format::Ndjson => {
                let mut obj = json!({
                    "seq": self.seq,
                    "signature": sig.to_string(),
                    "delay": delay.as_micros() as u64,
                });
                if let Some(w) = witness {
                    obj["witness"] = json!(w.to_string());
                }
                writeln!(self.out, "{obj}")?;
            }
        }
        self.out.flush()
    }

    fn finish(mut self) -> Result<(), Failure> {
        if let Some(f) = self.failure.take() {
            return Err(f);
        }
        if self.opts.count_only {
            match self.opts.format {
                Format::Text => writeln!(self.out, "{}", self.seq)?,
                Format::Ndjson => writeln!(self.out, "{}", json!({ "count": self.seq }))?,
            }
        }
        self.out.flush()?;
        Ok(())
    }
}

fn cmd_all(input: &Input, opts: OutputOpts, witness: bool) -> Result<(), Failure> {
    let phi = load(input)?;
    let mut em = Emitter::new(&phi, opts);
    enumerate_all(&phi, FlashlightOptions { witness }, |s, w| em.emit(s, w));
    em.finish()
}

fn cmd_extreme(args: &ExtremeArgs, minimal: bool) -> Result<(), Failure> {
    let phi = load(&args.input)?;
    let mut em = Emitter::new(&phi, args.out);
    let with_witness = !args.no_witness;
    let mut sink = |r: &MaxSigRecord| em.emit(&r.signature, with_witness.then_some(&r.witness));
    match args.engine {
        EngineChoice::Exact | EngineChoice::Supergraph => {
            let engine = if args.engine == EngineChoice::Exact {
                MaxEngine::Exact { rank_cap: args.rank_cap }
            } else {
                MaxEngine::Supergraph
            };
            let run = if minimal {
                maxgen::enumerate_min(&phi, engine, &mut sink)
            } else {
                maxgen::enumerate_max(&phi, engine, &mut sink)
            };
            run.map_err(|e| Failure::Refused(e.to_string()))?;
        }
        EngineChoice::Proximity => {
            let run = if minimal {
                rb2xor::enumerate_min_2xor(&phi, &mut sink)
            } else {
                rb2xor::enumerate_max_2xor(&phi, &mut sink)
            };
            run.map_err(|e| Failure::Refused(format!("proximity engine: {e}")))?;
        }
        EngineChoice::Brute => {
            let all = oracle::brute_all_capped(&phi, args.var_cap).map_err(|e| Failure::Refused(e.to_string()))?;
            let picked = if minimal {
                let flipped: Vec<Signature> = all.iter().map(Signature::complement).collect();
                oracle::maximal_filter(&flipped).iter().map(Signature::complement).collect()
            } else {
                oracle::maximal_filter(&all)
            };
            for sig in picked {
                let restricted = phi.restrict(&sig.one(), &sig.zero()).expect("indices in range");
                let witness = gf2::solve(&restricted)
                    .ok_or_else(|| Failure::Internal(format!("brute-force signature {sig} has no witness")))?;
                if sink(&MaxSigRecord { signature: sig, witness }).is_break() {
                    break;
                }
            }
        }
    }
    em.finish()
}

fn cmd_check(input: &Input, sig: &str) -> Result<(), Failure> {
    let phi = load(input)?;
    let sigma: Signature = sig.parse().map_err(|e| Failure::Usage(format!("--sig: {e}")))?;
    if sigma.len() != phi.num_clauses() {
        return Err(Failure::Usage(format!(
            "--sig has {} bits but the formula has {} clauses",
            sigma.len(),
            phi.num_clauses()
        )));
    }
    let verdict = |r: Result<bool, _>| r.map_err(|e: xorsig::formula::FormulaError| Failure::Internal(e.to_string()));
    let s = verdict(maxgen::is_signature(&phi, &sigma))?;
    let mx = verdict(maxgen::is_maximal(&phi, &sigma))?;
    let mn = verdict(maxgen::is_minimal(&phi, &sigma))?;
    println!("signature={s} maximal={mx} minimal={mn}");
    Ok(())
}

fn cmd_reduce(path: &PathBuf, emit: Emit, solve: bool) -> Result<(), Failure> {
    let text = read_input(path)?;
    let cnf = parse_dimacs(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    let inst = reduce_3sat(&cnf).map_err(|e| Failure::Refused(e.to_string()))?;
    let ids = |v: &[usize]| v.iter().map(|e| (e + 1).to_string()).collect::<Vec<_>>().join(" ");
    let mut out = io::stdout().lock();
    let comment = if emit == Emit::Dump { "#" } else { "c" };
    writeln!(out, "{comment} A: {}", ids(&inst.a))?;
    writeln!(out, "{comment} B: {}", ids(&inst.b))?;
    if solve {
        match brute_extension(&inst.graph, &inst.a, &inst.b, DEFAULT_FREE_CAP)
            .map_err(|e| Failure::Refused(e.to_string()))?
        {
            Some(h) => {
                let alpha = decode_witness(&inst, &h).map_err(|e| Failure::Internal(e.to_string()))?;
                if !cnf.satisfied_by(&alpha) {
                    return Err(Failure::Internal("decoded witness does not satisfy the input".into()));
                }
                let bits: String = alpha.iter().map(|&b| if b { '1' } else { '0' }).collect();
                writeln!(out, "{comment} witness: {}", ids(&h))?;
                writeln!(out, "{comment} assignment: {bits}")?;
            }
            None => writeln!(out, "{comment} no extension: input is unsatisfiable")?,
        }
    }
    match emit {
        Emit::Dump => write!(out, "{}", inst.graph.dump())?,
        Emit::Xnf => write!(out, "{}", xorsig::formula::emit_xnf(&inst.graph.to_disequalities()))?,
    }
    Ok(())
}

fn cmd_stats(input: &Input, format: Format) -> Result<(), Failure> {
    let phi = load(input)?;
    let (n, m, rank, comps) = (phi.num_vars(), phi.num_clauses(), gf2::rank(&phi), phi.component_count());
    match format {
        Format::Text => println!("n={n} m={m} rank={rank} components={comps} max_width={}", phi.max_width()),
        Format::Ndjson => {
            println!("{}", json!({ "n": n, "m": m, "rank": rank, "components": comps, "max_width": phi.max_width() }))
        }
    }
    Ok(())
}

#[derive(Default)]
struct BenchRow {
    outputs: u64,
    total: Duration,
    max_delay: Duration,
}

fn timed<F>(row: &mut BenchRow, run: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn FnMut()) -> Result<(), Failure>,
{
    let start = Instant::now();
    let mut last = start;
    let mut tick = || {
        let now = Instant::now();
        row.max_delay = row.max_delay.max(now - last);
        last = now;
        row.outputs += 1;
    };
    run(&mut tick)?;
    row.total += start.elapsed();
    Ok(())
}

fn cmd_bench(a: &BenchArgs) -> Result<(), Failure> {
    if a.vars == 0 || a.width == 0 {
        return Err(Failure::Usage("--vars and --width must be positive".into()));
    }
    let mut rng = gen::rng(a.seed);
    let general: Vec<XorCnf> =
        (0..a.instances).map(|_| gen::random_xor_cnf(&mut rng, a.vars, a.clauses, a.width)).collect();
    let shape = gen::TwoXorShape {
        n: a.vars.max(2),
        m: a.clauses,
        groups: if a.vars >= 4 { 2 } else { 1 },
        unit_prob: 0.15,
        parallel_prob: 0.2,
    };
    let two_xor: Vec<XorCnf> = (0..a.instances).map(|_| gen::random_2xor(&mut rng, shape)).collect();

    let mut rows: Vec<(&str, BenchRow)> = Vec::new();
    let refused = |e: &dyn fmt::Display| Failure::Refused(e.to_string());

    let mut row = BenchRow::default();
    for phi in &general {
        timed(&mut row, |tick| {
            enumerate_all(phi, FlashlightOptions::default(), |_, _| {
                tick();
                ControlFlow::Continue(())
            });
            Ok(())
        })?;
    }
    rows.push(("all/flashlight", row));

    for (name, engine) in [("max/exact", MaxEngine::default()), ("max/supergraph", MaxEngine::Supergraph)] {
        let mut row = BenchRow::default();
        for phi in &general {
            timed(&mut row, |tick| {
                maxgen::enumerate_max(phi, engine, |_| {
                    tick();
                    ControlFlow::Continue(())
                })
                .map(drop)
                .map_err(|e| refused(&e))
            })?;
        }
        rows.push((name, row));
    }

    for (name, engine) in [("2xor-max/exact", Some(MaxEngine::default())), ("2xor-max/proximity", None)] {
        let mut row = BenchRow::default();
        for phi in &two_xor {
            timed(&mut row, |tick| {
                let sink = |_: &MaxSigRecord| {
                    tick();
                    ControlFlow::Continue(())
                };
                match engine {
                    Some(engine) => maxgen::enumerate_max(phi, engine, sink).map(drop).map_err(|e| refused(&e)),
                    None => rb2xor::enumerate_max_2xor(phi, sink).map(drop).map_err(|e| refused(&e)),
                }
            })?;
        }
        rows.push((name, row));
    }

    let mut out = io::stdout().lock();
    if a.format == Format::Text {
        writeln!(out, "{} instances, seed {}, n={} m={} width<={}", a.instances, a.seed, a.vars, a.clauses, a.width)?;
        writeln!(out, "{:<20} {:>10} {:>12} {:>14}", "engine", "outputs", "total_ms", "max_delay_us")?;
    }
    for (name, r) in rows {
        match a.format {
            Format::Text => writeln!(
                out,
                "{:<20} {:>10} {:>12.3} {:>14}",
                name,
                r.outputs,
                r.total.as_secs_f64() * 1e3,
                r.max_delay.as_micros()
            )?,
            Format::Ndjson => writeln!(
                out,
                "{}",
                json!({
                    "engine": name,
                    "outputs": r.outputs,
                    "total_us": r.total.as_micros() as u64,
                    "max_delay_us": r.max_delay.as_micros() as u64,
                })
            )?,
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::All { input, out, witness } => cmd_all(input, *out, *witness),
        Command::Max(args) => cmd_extreme(args, false),
        Command::Min(args) => cmd_extreme(args, true),
        Command::Check { input, sig } => cmd_check(input, sig),
        Command::Reduce3sat { cnf, emit, solve } => cmd_reduce(cnf, *emit, *solve),
        Command::Stats { input, format } => cmd_stats(input, *format),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    panic::set_hook(Box::new(|info| eprintln!("xorsig: internal error: {info}")));
    match panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        // Downstream closed the pipe (e.g. `| head`): not an error.
        Ok(Err(Failure::Io(e))) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Ok(Err(f)) => {
            eprintln!("xorsig: {f}");
            ExitCode::from(f.code())
        }
        Err(_) => ExitCode::from(4),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn exit_codes_by_failure_kind() {
        assert_eq!(Failure::Usage(String::new()).code(), 1);
        assert_eq!(Failure::Parse(String::new()).code(), 2);
        assert_eq!(Failure::Refused(String::new()).code(), 3);
        assert_eq!(Failure::Internal(String::new()).code(), 4);
    }

    #[test]
    fn engine_defaults() {
        let cli = Cli::try_parse_from(["xorsig", "max", "f.xnf"]).unwrap();
        let Command::Max(args) = cli.command else { panic!("parsed as max") };
        assert_eq!(args.engine, EngineChoice::Exact);
        assert_eq!(args.rank_cap, DEFAULT_RANK_CAP);
        assert!(!args.no_witness);
        assert_eq!(args.out.format, Format::Text);
        assert!(Cli::try_parse_from(["xorsig", "max", "--engine", "magic", "f.xnf"]).is_err());
    }
}
