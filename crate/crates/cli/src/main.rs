use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use moduli_core::fock::{self, Normalization, SurfaceDatum};
use moduli_core::par::Mode;
use moduli_core::poly::LaurentT;
use moduli_core::quotlab;
use moduli_core::rational::fmt_q;
use moduli_core::series::{self, HodgeTable, SurfaceBetti, THETA_DENOM};
use moduli_core::verify::{self, Bounds, Check, VerificationReport, DEFAULT_SEED};
use moduli_core::Error;
use serde_json::{json, Value};

/// Exact verification runs for generating functions, the Fock space,
/// Schubert calculus and commuting nilpotent matrices.
#[derive(Parser, Debug)]
#[command(name = "moduli", version)]
struct Cli {
    /// Run every data-parallel loop on the current thread.
    #[arg(long, global = true)]
    sequential: bool,

    /// Report `elapsed_ms` as 0 so reports are byte-identical across runs.
    #[arg(long, global = true)]
    omit_timing: bool,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generating-function identities in q.
    Series(SeriesArgs),
    /// Oscillator relations, character and constants on the Fock space.
    Fock(FockArgs),
    /// Excess-bundle Chern classes on Gr(n of r).
    Schubert(SchubertArgs),
    /// Seeded commuting-nilpotent instances.
    Quot(QuotArgs),
    /// Every suite at the default bounds.
    VerifyAll(VerifyAllArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SeriesKind {
    Goettsche,
    Macdonald,
    /// Strata sum against the product.
    #[value(name = "ratio-3-7")]
    Ratio37,
    /// Hodge product at x = y = t against the product.
    #[value(name = "hodge-3-8")]
    Hodge38,
    Theta,
    Yoshioka,
    #[value(name = "uhlenbeck-p2")]
    UhlenbeckP2,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    kind: SeriesKind,

    /// Highest power of q compared (inclusive).
    #[arg(long, default_value_t = 6)]
    order: u32,

    /// Betti numbers b0,b1,b2,b3,b4.
    #[arg(long, value_name = "B0,B1,B2,B3,B4")]
    betti: Option<String>,

    /// Hodge table, rows separated by ';'.
    #[arg(long, value_name = "H00,H01,H02;H10,...")]
    hodge: Option<String>,

    /// Write the computed series as JSON.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SurfaceName {
    P2,
    K3,
    Abelian,
}

#[derive(Args, Debug)]
struct FockArgs {
    /// Betti numbers; the pairing is the standard one with a diagonal H^2.
    #[arg(long, conflicts_with_all = ["surface", "pairing_matrix"])]
    betti: Option<String>,

    /// Built-in surface datum with its intersection lattice.
    #[arg(long, value_enum, conflicts_with = "pairing_matrix")]
    surface: Option<SurfaceName>,

    /// JSON file {"degrees": [..], "pairing": [[..]], "names": [..]}.
    #[arg(long, value_name = "PATH")]
    pairing_matrix: Option<PathBuf>,

    #[arg(long, default_value_t = 4)]
    max_energy: u32,

    /// Also check the rank-r normalization and use r for the constants.
    #[arg(long)]
    rank: Option<u32>,

    /// Recover c_1..c_N from the intersection series.
    #[arg(long, value_name = "N")]
    recover_constants: Option<u32>,

    /// Highest power of q in the character comparison (inclusive).
    #[arg(long, default_value_t = 6)]
    character_order: u32,
}

#[derive(Args, Debug)]
struct SchubertArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    n: u32,
    /// Highest pairing for the intersection series.
    #[arg(long, default_value_t = 1)]
    pairing: u32,
}

#[derive(Args, Debug)]
struct QuotArgs {
    #[arg(long, default_value_t = 50)]
    instances: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    max_dim: u32,
    /// Number of vectors; random in 1..=3 per instance when absent.
    #[arg(long)]
    rank: Option<u32>,
    /// Instances on which the stabilizer is computed.
    #[arg(long, default_value_t = 20)]
    stabilizer_checks: usize,
    /// Write the generated instances as JSON.
    #[arg(long, value_name = "PATH")]
    dump_instances: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyAllArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Contract(_) | Error::Invalid(_) => Failure::Usage(e.to_string()),
            _ => Failure::Run(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mode = if cli.sequential { Mode::Sequential } else { Mode::Parallel };
    let result = match &cli.command {
        Command::Series(a) => cmd_series(a),
        Command::Fock(a) => cmd_fock(a, mode),
        Command::Schubert(a) => cmd_schubert(a),
        Command::Quot(a) => cmd_quot(a, mode),
        Command::VerifyAll(a) => verify::verify_all(&Bounds::default(), a.seed, mode).map_err(Failure::from),
    };
    match result {
        Ok(mut report) => {
            if cli.omit_timing {
                report.elapsed_ms = 0;
            }
            let text = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
            if let Err(e) = emit(cli.report.as_ref(), &text) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            for c in report.failures() {
                eprintln!("FAIL {}: {}", c.id, c.anchor);
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Run(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn emit(path: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n")),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => other,
            }
        }
    }
}

fn write_json(path: &PathBuf, v: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("json serializes");
    std::fs::write(path, format!("{text}\n")).map_err(|e| Failure::Run(format!("{}: {e}", path.display())))
}

fn parse_ints(s: &str, what: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| Failure::Usage(format!("{what}: '{x}' is not a nonnegative integer"))))
        .collect()
}

fn parse_betti(s: &str) -> Result<SurfaceBetti, Failure> {
    let v = parse_ints(s, "--betti")?;
    let arr: [u32; 5] = v.try_into().map_err(|_| Failure::Usage("--betti needs exactly five numbers b0,b1,b2,b3,b4".into()))?;
    Ok(SurfaceBetti::new(arr)?)
}

fn parse_hodge(s: &str) -> Result<HodgeTable, Failure> {
    let rows: Vec<Vec<u32>> = s.split(';').map(|r| parse_ints(r, "--hodge")).collect::<Result<_, _>>()?;
    let bad = || Failure::Usage("--hodge needs a 3x3 table with rows separated by ';'".into());
    if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
        return Err(bad());
    }
    let mut h = [[0u32; 3]; 3];
    for (p, row) in rows.iter().enumerate() {
        h[p].copy_from_slice(row);
    }
    Ok(HodgeTable::new(h)?)
}

fn laurent_json(s: &series::Series<LaurentT>) -> Value {
    s.to_json_with(|c| c.to_string())
}

fn cmd_series(a: &SeriesArgs) -> Result<VerificationReport, Failure> {
    let started = Instant::now();
    let betti = a.betti.as_deref().map(parse_betti).transpose()?.unwrap_or(SurfaceBetti::P2);
    let hodge = a.hodge.as_deref().map(parse_hodge).transpose()?;
    let order = a.order + 1;
    let (checks, out): (Vec<Check>, Value) = match a.kind {
        SeriesKind::Goettsche => (verify::check_goettsche(&betti, order), laurent_json(&series::goettsche_product(&betti, order))),
        SeriesKind::Macdonald => (verify::check_macdonald(&betti, order), laurent_json(&series::macdonald_sym_power(&betti, order))),
        SeriesKind::Ratio37 => (vec![verify::check_strata_sum(&betti, order)], laurent_json(&series::strata_sum(&betti, order))),
        SeriesKind::Hodge38 => {
            let h = hodge.unwrap_or(HodgeTable::P2);
            (vec![verify::check_hodge(&h, order)], series::hodge_product(&h, order).to_json_with(|c| c.to_string()))
        }
        SeriesKind::Theta => {
            let eighths = a.order as i64 * THETA_DENOM as i64 + 2;
            let check = verify::check_theta(eighths)?;
            let th = series::theta(1, 1, &moduli_core::rational::qf(eighths, THETA_DENOM as i64))?;
            (vec![check], th.to_json_with(|c| c.render_var("u")))
        }
        SeriesKind::Yoshioka => (verify::check_yoshioka(order)?, series::yoshioka_series(order)?.to_json_with(|c| c.render_var("t"))),
        SeriesKind::UhlenbeckP2 => (verify::check_uhlenbeck(order)?, series::uhlenbeck_series_p2(order)?.to_json_with(|c| c.render_var("t"))),
    };
    if let Some(p) = &a.out {
        write_json(p, &out)?;
    }
    let params = json!({"kind": format!("{:?}", a.kind), "through_q": a.order, "betti": betti.0, "hodge": hodge.map(|h| h.0)});
    Ok(VerificationReport::new("series", None, params, checks, started))
}

fn fock_datum(a: &FockArgs) -> Result<(String, SurfaceDatum), Failure> {
    if let Some(p) = &a.pairing_matrix {
        let text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
        return Ok(("custom".into(), SurfaceDatum::from_json(&v)?));
    }
    if let Some(b) = &a.betti {
        let betti = parse_betti(b)?;
        return Ok((b.replace(' ', ""), SurfaceDatum::from_betti(&betti)?));
    }
    Ok(match a.surface.unwrap_or(SurfaceName::P2) {
        SurfaceName::P2 => ("p2".into(), SurfaceDatum::p2()),
        SurfaceName::K3 => ("k3".into(), SurfaceDatum::k3()),
        SurfaceName::Abelian => ("abelian".into(), SurfaceDatum::abelian()),
    })
}

fn cmd_fock(a: &FockArgs, mode: Mode) -> Result<VerificationReport, Failure> {
    let started = Instant::now();
    if a.max_energy == 0 {
        return Err(Failure::Usage("--max-energy must be at least 1".into()));
    }
    let (label, s) = fock_datum(a)?;
    let mut checks = vec![
        verify::check_fock_relations(&label, &s, a.max_energy, Normalization::Standard, mode)?,
        verify::check_character(&label, &s, a.character_order + 1),
    ];
    if let Some(r) = a.rank {
        if r == 0 {
            return Err(Failure::Usage("--rank must be positive".into()));
        }
        checks.push(verify::check_fock_relations(&label, &s, a.max_energy, Normalization::Rank(r), mode)?);
    }
    if let Some(n) = a.recover_constants {
        let r = a.rank.unwrap_or(1);
        let mut bad = Vec::new();
        let mut values = Vec::new();
        for pairing in 1..=3 {
            let cs = fock::recover_constants(r, pairing, n)?;
            for (k, c) in cs.iter().enumerate() {
                if *c != fock::expected_constant(r, k as u32 + 1) {
                    bad.push(json!({"pairing": pairing, "n": k + 1, "got": fmt_q(c)}));
                }
            }
            if pairing == 1 {
                values = cs.iter().map(fmt_q).collect();
            }
        }
        checks.push(Check::new(
            format!("fock.constants[r={r}]"),
            "c_n = (-1)^(rn-1) r n, independent of the pairing",
            bad.is_empty(),
            json!({"c": values, "failures": bad}),
        ));
    }
    let params = json!({
        "surface": label,
        "betti": s.betti().0,
        "max_energy": a.max_energy,
        "rank": a.rank,
        "degenerate_pairing": fock::pairing_is_degenerate(&s),
    });
    Ok(VerificationReport::new("fock", None, params, checks, started))
}

fn cmd_schubert(a: &SchubertArgs) -> Result<VerificationReport, Failure> {
    let started = Instant::now();
    if a.n == 0 || a.n > a.r {
        return Err(Failure::Usage(format!("need 1 <= n <= r, got r = {}, n = {}", a.r, a.n)));
    }
    let mut checks = verify::check_excess(a.r, a.n)?;
    for pairing in 1..=a.pairing.max(1) {
        checks.push(verify::check_intersection_series(a.r, pairing)?);
    }
    let params = json!({"r": a.r, "n": a.n, "pairing": a.pairing});
    Ok(VerificationReport::new("schubert", None, params, checks, started))
}

fn cmd_quot(a: &QuotArgs, mode: Mode) -> Result<VerificationReport, Failure> {
    if a.max_dim == 0 {
        return Err(Failure::Usage("--max-dim must be positive".into()));
    }
    if a.rank == Some(0) {
        return Err(Failure::Usage("--rank must be positive".into()));
    }
    if let Some(p) = &a.dump_instances {
        let mut items = Vec::new();
        for k in 0..a.instances {
            let r = a.rank.unwrap_or_else(|| 1 + (quotlab::instance_seed(a.seed, k) % 3) as u32);
            let inst = quotlab::random_instance(k, a.seed, a.max_dim, r)?;
            items.push(inst.point.to_json());
        }
        write_json(p, &Value::Array(items))?;
    }
    Ok(verify::quot_suite(a.instances, a.seed, a.max_dim, a.rank, a.stabilizer_checks, mode)?)
}
