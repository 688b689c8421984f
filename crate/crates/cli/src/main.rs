use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use tilesep_core::analysis::{lint_assembly, verdict_diagnostic, Diagnostic};
use tilesep_core::format::{self, ParseError};
use tilesep_core::sim::{self, ClosureOptions, NotUmftaReason};
use tilesep_core::transform::{self, EdgePolicy};
use tilesep_core::verify::{self, Outcome};
use tilesep_core::{Assembly, Caps, Error, TileSystem, UmftaVerdict};

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_COUNT_CAP: u8 = 3;
const EXIT_PARSE: u8 = 64;
const EXIT_TRIVIAL: u8 = 65;
const EXIT_NO_INPUT: u8 = 66;
const EXIT_CANT_CREATE: u8 = 73;

#[derive(Parser)]
#[command(name = "tilesep", version, about = "Two-handed tile assembly: simulate, lint and compile to factor-2 size-separable systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct CapArgs {
    /// Largest assembly the closure will build.
    #[arg(long, default_value_t = 64)]
    max_size: usize,
    /// Most distinct producibles the closure will hold.
    #[arg(long, default_value_t = 100_000)]
    max_count: usize,
}

impl From<CapArgs> for Caps {
    fn from(c: CapArgs) -> Caps {
        Caps::new(c.max_size, c.max_count)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Balanced,
    Canonical,
}

impl From<Policy> for EdgePolicy {
    fn from(p: Policy) -> EdgePolicy {
        match p {
            Policy::Balanced => EdgePolicy::Balanced,
            Policy::Canonical => EdgePolicy::Canonical,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the necessary conditions for a unique mismatch-free terminal assembly.
    Lint {
        system: PathBuf,
        /// Claimed terminal assembly; defaults to the one the closure finds.
        #[arg(long)]
        assembly: Option<PathBuf>,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Enumerate producible assemblies.
    Simulate {
        system: PathBuf,
        /// Only attach single tiles.
        #[arg(long)]
        seeded: bool,
        #[command(flatten)]
        caps: CapArgs,
        /// Write each producible as an assembly file named by its hash.
        #[arg(long)]
        dump_producibles: Option<PathBuf>,
        /// Rerun the closure K times in shuffled order and compare.
        #[arg(long, value_name = "K")]
        shuffle_check: Option<u64>,
        /// First shuffle seed for --shuffle-check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Remove glue-side pairs on cycles until the bond graph is a tree.
    Treeify {
        system: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Compile to a scale-2 temperature-2 size-separable system.
    Compile {
        system: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Policy::Balanced)]
        policy: Policy,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Check a compiled system against its original.
    Verify {
        original: PathBuf,
        compiled: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Draw an assembly as SVG.
    Render {
        assembly: PathBuf,
        #[arg(long)]
        system: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Double ticks for strength-2 bonds.
        #[arg(long)]
        show_strengths: bool,
    },
}

/// Failure carrying its exit code; the message goes to stderr.
struct Fail(u8, String);

type CmdResult = Result<u8, Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail(EXIT_NO_INPUT, format!("{}: {e}", path.display())))
}

fn parse_fail(path: &Path, e: ParseError) -> Fail {
    Fail(EXIT_PARSE, format!("{}: {e}", path.display()))
}

fn load_system(path: &Path) -> Result<TileSystem, Fail> {
    let parsed = format::parse_system(&read(path)?).map_err(|e| parse_fail(path, e))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.system)
}

fn load_assembly(path: &Path, system: &TileSystem) -> Result<Assembly, Fail> {
    format::parse_assembly(&read(path)?, system).map_err(|e| parse_fail(path, e))
}

fn write_all(files: &[(&Path, &str)]) -> Result<(), Fail> {
    for (path, text) in files {
        fs::write(path, text).map_err(|e| Fail(EXIT_CANT_CREATE, format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn print_diagnostics(diags: &[Diagnostic]) {
    for d in diags {
        println!("{d}");
    }
}

fn verdict_line(v: &UmftaVerdict) -> String {
    format!("UMFTA: {}", v.describe())
}

fn verdict_exit(v: &UmftaVerdict) -> u8 {
    match v {
        UmftaVerdict::Yes { .. } => EXIT_OK,
        UmftaVerdict::No { .. } => EXIT_VIOLATION,
        UmftaVerdict::Unknown { .. } => EXIT_UNKNOWN,
    }
}

fn hash_name(a: &Assembly, s: &TileSystem) -> String {
    let digest = Sha256::digest(format::write_assembly(a, s).as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

fn lint(system: &Path, assembly: Option<&Path>, caps: Caps) -> CmdResult {
    let sys = load_system(system)?;
    let claimed = assembly.map(|p| load_assembly(p, &sys)).transpose()?;
    let (verdict, _) = sim::is_umfta(&sys, caps);
    let target = claimed.or_else(|| match &verdict {
        UmftaVerdict::Yes { terminal } => Some(terminal.clone()),
        UmftaVerdict::No {
            reason: NotUmftaReason::MultipleTerminals(ts),
        } => ts.last().cloned(),
        UmftaVerdict::No {
            reason: NotUmftaReason::Mismatch(a),
        } => Some(a.clone()),
        _ => None,
    });
    let mut diags = target.map_or_else(Vec::new, |a| lint_assembly(&sys, &a));
    let structural = !diags.is_empty();
    diags.extend(verdict_diagnostic(&sys, &verdict));
    print_diagnostics(&diags);
    println!("{}", verdict_line(&verdict));
    Ok(if structural { EXIT_VIOLATION } else { verdict_exit(&verdict) })
}

fn simulate(
    system: &Path,
    seeded: bool,
    caps: Caps,
    dump: Option<&Path>,
    shuffle_check: Option<u64>,
    seed: u64,
) -> CmdResult {
    let sys = load_system(system)?;
    let closure = sim::enumerate_producibles(&sys, caps, seeded);
    println!("producibles: {}", closure.producibles.len());
    println!("terminals: {}", closure.terminals.len());
    for (size, count) in closure.size_histogram() {
        println!("size {size}: {count}");
    }
    let set: Vec<String> = closure.terminals.iter().map(|t| hash_name(t, &sys)).collect();
    println!("terminal_set: {}", set.join(" "));
    println!("factor: {}", verify::separability_factor(&closure));
    println!("saturated: {}", closure.saturated);
    if let Some(dir) = dump {
        fs::create_dir_all(dir).map_err(|e| Fail(EXIT_CANT_CREATE, format!("{}: {e}", dir.display())))?;
        for p in &closure.producibles {
            let path = dir.join(format!("{}.asm", hash_name(p, &sys)));
            write_all(&[(&path, &format::write_assembly(p, &sys))])?;
        }
    }
    let mut code = match closure.first_cap() {
        None => EXIT_OK,
        Some(sim::CapKind::Count) => EXIT_COUNT_CAP,
        Some(sim::CapKind::Size) => EXIT_UNKNOWN,
    };
    if let Some(k) = shuffle_check {
        let mut identical = true;
        for s in seed..seed + k {
            let other = sim::closure(
                &sys,
                caps,
                ClosureOptions {
                    seeded,
                    shuffle_seed: Some(s),
                },
            );
            identical &= other.producibles == closure.producibles && other.terminals == closure.terminals;
        }
        println!("shuffle_check: {k} runs {}", if identical { "identical" } else { "DIFFER" });
        if !identical {
            code = EXIT_VIOLATION;
        }
    }
    Ok(code)
}

/// The unique terminal, or the exit the caller should take.
fn require_terminal(sys: &TileSystem, caps: Caps) -> Result<Assembly, Fail> {
    let (verdict, _) = sim::is_umfta(sys, caps);
    match verdict {
        UmftaVerdict::Yes { terminal } => Ok(terminal),
        v => {
            let mut diags: Vec<Diagnostic> = Vec::new();
            if let UmftaVerdict::No {
                reason: NotUmftaReason::MultipleTerminals(ts),
            } = &v
            {
                if let Some(a) = ts.last() {
                    diags = lint_assembly(sys, a);
                }
            }
            diags.extend(verdict_diagnostic(sys, &v));
            print_diagnostics(&diags);
            Err(Fail(verdict_exit(&v), verdict_line(&v)))
        }
    }
}

fn error_fail(e: Error) -> Fail {
    match e {
        Error::Lint(diags) => {
            print_diagnostics(&diags);
            Fail(EXIT_VIOLATION, format!("{} lint violation(s)", diags.len()))
        }
        Error::TrivialAssembly => Fail(EXIT_TRIVIAL, e.to_string()),
        Error::UnknownUnderCaps(_) => Fail(EXIT_UNKNOWN, e.to_string()),
        e => Fail(EXIT_VIOLATION, e.to_string()),
    }
}

fn treeify(system: &Path, output: &Path, caps: Caps) -> CmdResult {
    let sys = load_system(system)?;
    let terminal = require_terminal(&sys, caps)?;
    if terminal.len() == 1 {
        return Err(error_fail(Error::TrivialAssembly));
    }
    let diags = lint_assembly(&sys, &terminal);
    if !diags.is_empty() {
        return Err(error_fail(Error::Lint(diags)));
    }
    let (tsys, tasm) = transform::treeify(&sys, &terminal).map_err(error_fail)?;
    write_all(&[(output, &format::write_system(&tsys))])?;
    println!("tiles: {} -> {}", sys.size(), tsys.size());
    println!("cells: {}", tasm.len());
    Ok(EXIT_OK)
}

fn compile(system: &Path, output: &Path, trace_path: Option<&Path>, policy: EdgePolicy, caps: Caps) -> CmdResult {
    let sys = load_system(system)?;
    let (out, trace) = transform::size_separable_compile(&sys, caps, policy).map_err(error_fail)?;
    let sys_text = format::write_system(&out);
    let trace_text = format::write_trace(&trace);
    let mut files: Vec<(&Path, &str)> = vec![(output, &sys_text)];
    if let Some(t) = trace_path {
        files.push((t, &trace_text));
    }
    write_all(&files)?;
    println!("policy: {}", policy.name());
    println!("e_prime: {} {}", trace.e_prime.0, trace.e_prime.1);
    println!("e: {} {}", trace.e.0, trace.e.1);
    println!("imbalance: {}", trace.imbalance);
    println!("halves: {} {}", trace.halves.0, trace.halves.1);
    println!("cut_glues: {} {}", trace.cut_glues[0], trace.cut_glues[1]);
    println!("tiles: {} <= {}", out.size(), 8 * sys.size());
    Ok(EXIT_OK)
}

fn verify_cmd(original: &Path, compiled: &Path, trace_path: &Path, caps: Caps) -> CmdResult {
    let orig = load_system(original)?;
    let comp = load_system(compiled)?;
    let trace = format::parse_trace(&read(trace_path)?).map_err(|e| parse_fail(trace_path, e))?;
    let report = verify::verify_pipeline(&orig, &comp, &trace, caps);
    print!("{report}");
    Ok(match report.outcome() {
        Outcome::Pass => EXIT_OK,
        Outcome::Fail => EXIT_VIOLATION,
        Outcome::Unknown => EXIT_UNKNOWN,
    })
}

fn render(assembly: &Path, system: &Path, output: &Path, show_strengths: bool) -> CmdResult {
    let sys = load_system(system)?;
    let asm = load_assembly(assembly, &sys)?;
    let svg = tilesep_core::render::render_svg(&asm, &sys, show_strengths);
    write_all(&[(output, &svg)])?;
    Ok(EXIT_OK)
}

fn configure_threads() {
    if let Some(n) = std::env::var("TILESEP_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Lint { system, assembly, caps } => lint(&system, assembly.as_deref(), caps.into()),
        Command::Simulate {
            system,
            seeded,
            caps,
            dump_producibles,
            shuffle_check,
            seed,
        } => simulate(&system, seeded, caps.into(), dump_producibles.as_deref(), shuffle_check, seed),
        Command::Treeify { system, output, caps } => treeify(&system, &output, caps.into()),
        Command::Compile {
            system,
            output,
            trace,
            policy,
            caps,
        } => compile(&system, &output, trace.as_deref(), policy.into(), caps.into()),
        Command::Verify {
            original,
            compiled,
            trace,
            caps,
        } => verify_cmd(&original, &compiled, &trace, caps.into()),
        Command::Render {
            assembly,
            system,
            output,
            show_strengths,
        } => render(&assembly, &system, &output, show_strengths),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
