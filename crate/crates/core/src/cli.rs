//! Command-line front end. Every subcommand writes to a caller-supplied sink
//! and reports whether its checks passed; the binary maps that to the exit
//! code.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cache::{Cache, CachePolicy};
use crate::chars::lift::LiftContext;
use crate::chars::matching::{match_tables, rows_with_multiset};
use crate::chars::{
    assemble_with, corollary_suite, dixon_table, fischer_check, CharacterTable, CliffordContext, Provenance,
    TableRow,
};
use crate::clifford::clifford_order;
use crate::error::{Error, Result};
use crate::inertia::enumerate_affine;
use crate::pauli::{PauliCharacter, PauliTable, PAULI_TABLE_MAX_QUBITS};
use crate::reference;
use crate::render::{render_table, write_pauli_table, Format};
use crate::symplectic::{enumerate_sp, sp_order};

#[derive(Parser, Debug)]
#[command(name = "cliffchar", version, about = "Exact character tables of the n-qubit Clifford group")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,

    /// Cache directory (overrides CLIFFCHAR_CACHE).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Cache policy.
    #[arg(long, global = true, value_enum, default_value_t = CacheArg::ReadWrite)]
    pub cache: CacheArg,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Memory budget in MiB for group enumerations.
    #[arg(long, global = true, default_value_t = 4096)]
    pub memory_budget: u64,

    /// Permit work beyond two qubits.
    #[arg(long, global = true)]
    pub allow_large: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// The 4^n x 4^n character table of the projective Pauli group.
    Paulichar {
        #[arg(long)]
        n: usize,
    },
    /// The irreducible character table of the n-qubit Clifford group.
    Chartable {
        #[arg(long)]
        n: usize,
    },
    /// Lift every irreducible character of the n-qubit group to n+1 qubits.
    Lift {
        #[arg(long)]
        n: usize,
    },
    /// Run the invariant suite.
    Verify {
        #[arg(long)]
        n: usize,
    },
    /// Run the Dixon engine on a built-in group.
    Dixon {
        #[arg(long, value_enum)]
        group: NamedGroup,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CacheArg {
    #[value(name = "rw")]
    ReadWrite,
    #[value(name = "ro")]
    ReadOnly,
    Off,
}

impl From<CacheArg> for CachePolicy {
    fn from(c: CacheArg) -> Self {
        match c {
            CacheArg::ReadWrite => CachePolicy::ReadWrite,
            CacheArg::ReadOnly => CachePolicy::ReadOnly,
            CacheArg::Off => CachePolicy::Off,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NamedGroup {
    Sp2,
    Sp4,
    C1,
    C2,
    In2,
    #[value(name = "in2-quotient")]
    In2Quotient,
    #[value(name = "affine-sp2")]
    AffineSp2,
    #[value(name = "affine-sp4")]
    AffineSp4,
}

/// Everything a run needs besides the command itself.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub format: Format,
    pub cache: Cache,
    pub memory_budget_mib: u64,
    pub allow_large: bool,
}

impl JobSpec {
    pub fn from_cli(cli: &Cli) -> Self {
        JobSpec {
            format: cli.format.into(),
            cache: Cache::resolve(cli.cache_dir.clone(), cli.cache.into()),
            memory_budget_mib: cli.memory_budget,
            allow_large: cli.allow_large,
        }
    }

    /// Defaults with caching off.
    pub fn ephemeral(format: Format) -> Self {
        JobSpec {
            format,
            cache: Cache::disabled(),
            memory_budget_mib: 4096,
            allow_large: false,
        }
    }

    fn context(&self, n: usize) -> Result<CliffordContext> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if n > 2 {
            let bytes = clifford_order(n).saturating_mul(48);
            return Err(Error::SizeCap(format!(
                "the character table pipeline stops at n = 2; 𝒞_{n} has {} elements (~{} MiB to enumerate, budget {} MiB) and its Sp(2n,2) quotient is beyond the Dixon budget",
                clifford_order(n),
                bytes >> 20,
                self.memory_budget_mib
            )));
        }
        self.cache.context(n)
    }
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            log::warn!("thread pool already initialised: {e}");
        }
    }
    let job = JobSpec::from_cli(&cli);
    match run(&cli.command, &job, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Runs one command; `Ok(false)` means a check failed.
pub fn run(command: &Command, job: &JobSpec, out: &mut dyn Write) -> Result<bool> {
    match *command {
        Command::Paulichar { n } => {
            cmd_paulichar(n, job, out)?;
            Ok(true)
        }
        Command::Chartable { n } => {
            out.write_all(cmd_chartable(n, job)?.as_bytes())?;
            Ok(true)
        }
        Command::Lift { n } => {
            let (text, report) = cmd_lift(n, job)?;
            out.write_all(text.as_bytes())?;
            Ok(report.passed())
        }
        Command::Verify { n } => {
            let report = cmd_verify(n, job)?;
            out.write_all(report.render(job.format)?.as_bytes())?;
            Ok(report.passed())
        }
        Command::Dixon { group } => {
            out.write_all(cmd_dixon(group, job)?.as_bytes())?;
            Ok(true)
        }
    }
}

pub fn cmd_paulichar(n: usize, job: &JobSpec, out: &mut dyn Write) -> Result<()> {
    if n > 6 && !job.allow_large {
        return Err(Error::SizeCap(format!(
            "the {n}-qubit Pauli table has {} entries; pass --allow-large (n <= {PAULI_TABLE_MAX_QUBITS})",
            1u128 << (4 * n)
        )));
    }
    let t = PauliTable::new(n)?;
    let mut w = std::io::BufWriter::new(out);
    write_pauli_table(&t, job.format, &mut w)?;
    w.flush()?;
    Ok(())
}

pub fn cmd_chartable(n: usize, job: &JobSpec) -> Result<String> {
    let ctx = job.context(n)?;
    render_table(&assemble_with(&ctx)?.table, job.format)
}

/// One lifted row and where it landed.
#[derive(Clone, Debug, Serialize)]
pub struct LiftEntry {
    pub source: String,
    pub degree: String,
    pub norm: String,
    /// Label of the equal row of the (n+1)-qubit table, if any.
    pub matches: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub n: usize,
    pub entries: Vec<LiftEntry>,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.norm == "1" && e.matches.is_some())
    }
}

/// The lifted rows as a table on 𝒞_{n+1}, plus their norms and matches.
pub fn lift_table(n: usize, job: &JobSpec) -> Result<(CharacterTable, LiftReport)> {
    if n != 1 {
        let gate = if job.allow_large {
            "the 2 -> 3 lift needs the 3-qubit Clifford group (92897280 elements) and is not implemented"
        } else {
            "lift --n 2 needs --allow-large"
        };
        return Err(Error::SizeCap(format!("{gate}; lift supports n = 1")));
    }
    let source = job.context(1)?;
    let target = job.context(2)?;
    let lc = LiftContext::new(&source, &target)?;
    let src_table = assemble_with(&source)?.table;
    let tgt_table = assemble_with(&target)?.table;
    let lifted = lc.lift_table(&src_table)?;
    let mut rows = Vec::with_capacity(lifted.len());
    let mut entries = Vec::with_capacity(lifted.len());
    for l in &lifted {
        let matches = tgt_table.find_row(&l.character).map(|i| tgt_table.rows()[i].label.clone());
        entries.push(LiftEntry {
            source: l.source_label.clone(),
            degree: l.character.degree().to_string(),
            norm: l.norm.to_string(),
            matches,
        });
        rows.push(TableRow {
            provenance: Provenance::Lifted,
            label: format!("Lift({})", l.source_label),
            character: l.character.clone(),
        });
    }
    let table = CharacterTable::from_rows(target.info().clone(), rows)?;
    Ok((table, LiftReport { n, entries }))
}

pub fn cmd_lift(n: usize, job: &JobSpec) -> Result<(String, LiftReport)> {
    let (table, report) = lift_table(n, job)?;
    let text = match job.format {
        Format::Json => {
            let mut v: serde_json::Value = serde_json::from_str(&render_table(&table, Format::Json)?)?;
            v["lifts"] = serde_json::to_value(&report.entries)?;
            let mut s = serde_json::to_string_pretty(&v)?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = render_table(&table, Format::Csv)?;
            s.push_str("\nsource,degree,norm,matches\n");
            for e in &report.entries {
                s.push_str(&format!("{},{},{},{}\n", e.source, e.degree, e.norm, e.matches.as_deref().unwrap_or("")));
            }
            s
        }
        Format::Text => {
            let mut s = render_table(&table, Format::Text)?;
            s.push('\n');
            for e in &report.entries {
                s.push_str(&format!(
                    "Lift({}): degree {}, <χ,χ> = {}, equals {}\n",
                    e.source,
                    e.degree,
                    e.norm,
                    e.matches.as_deref().unwrap_or("no row of the target table")
                ));
            }
            s
        }
    };
    Ok((text, report))
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub items: Vec<CheckItem>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self)?;
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::from("check,status,millis,detail\n");
                for i in &self.items {
                    s.push_str(&format!(
                        "{},{},{},\"{}\"\n",
                        i.name,
                        if i.passed { "pass" } else { "FAIL" },
                        i.millis,
                        i.detail.replace('"', "\"\"")
                    ));
                }
                s
            }
            Format::Text => {
                let w = self.items.iter().map(|i| i.name.chars().count()).max().unwrap_or(0);
                let mut s = String::new();
                for i in &self.items {
                    let pad = w - i.name.chars().count();
                    s.push_str(&format!(
                        "[{}] {}{} {:>6} ms  {}\n",
                        if i.passed { "pass" } else { "FAIL" },
                        i.name,
                        " ".repeat(pad),
                        i.millis,
                        i.detail
                    ));
                }
                let failed = self.items.iter().filter(|i| !i.passed).count();
                s.push_str(&format!("{} checks, {failed} failed\n", self.items.len()));
                s
            }
        })
    }
}

struct Checks {
    items: Vec<CheckItem>,
}

impl Checks {
    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let start = Instant::now();
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.items.push(CheckItem {
            name: name.into(),
            passed,
            detail,
            millis: start.elapsed().as_millis(),
        });
    }
}

pub fn cmd_verify(n: usize, job: &JobSpec) -> Result<VerifyReport> {
    let ctx = job.context(n)?;
    let mut c = Checks { items: Vec::new() };
    let four_n = 1u64 << (2 * n);
    c.run("clifford order", || {
        let want = clifford_order(n);
        let got = ctx.clifford().order() as u128;
        Ok((got == want, format!("|C{n}| = {got}, formula {want}")))
    });
    c.run("symplectic order", || {
        let got = ctx.sp().order() as u128;
        Ok((got == sp_order(n), format!("|Sp({},2)| = {got}", 2 * n)))
    });
    c.run("inertia order and index", || {
        let i = ctx.inertia().group().order() as u64;
        let idx = ctx.clifford().order() as u64 / i;
        let ok = idx == four_n - 1 && idx * i == ctx.clifford().order() as u64;
        Ok((ok, format!("|IN{n}| = {i}, index {idx}")))
    });
    c.run("inertia quotient order", || {
        let q = ctx.quotient().order() as u128;
        Ok((q * (four_n as u128 - 1) == sp_order(n), format!("|IN{n}/Z2^{}| = {q}", 2 * n)))
    });
    c.run("Pauli character orbit", || {
        let a = PauliCharacter::sigma1(n);
        let mut orbit = std::collections::BTreeSet::new();
        for g in ctx.clifford().elements() {
            orbit.insert(g.act_on_character(&a)?.label().bits());
        }
        Ok((orbit.len() as u64 == four_n - 1, format!("single orbit of size {}", orbit.len())))
    });
    c.run("inertia generators = stabiliser", || {
        ctx.inertia().verify_against_stabilizer(ctx.clifford())?;
        Ok((true, "exhaustive".into()))
    });
    c.run("σ1′ consistency", || {
        ctx.inertia().sigma_class_function()?;
        let g = ctx.inertia().group();
        let mut rng = ChaCha8Rng::seed_from_u64(0x51);
        let pairs = if g.order() <= 100 { g.order() * g.order() } else { 10_000 };
        for k in 0..pairs {
            let (a, b) = if g.order() <= 100 {
                (g.element(k / g.order()), g.element(k % g.order()))
            } else {
                (g.element(rng.gen_range(0..g.order())), g.element(rng.gen_range(0..g.order())))
            };
            let s = ctx.inertia();
            if s.sigma1_prime(&a.mul(b)?)? != s.sigma1_prime(a)? * s.sigma1_prime(b)? {
                return Ok((false, "σ1′ is not multiplicative".into()));
            }
        }
        Ok((true, format!("class function, multiplicative on {pairs} pairs")))
    });
    let assembled = assemble_with(&ctx);
    c.run("character table", || {
        let t = &assembled.as_ref().map_err(|e| Error::Internal(e.to_string()))?.table;
        t.validate()?;
        let degrees = t.degree_multiset();
        Ok((true, format!("{} rows, orthonormal, degrees {degrees:?}", t.len())))
    });
    c.run("printed table", || {
        let t = &assembled.as_ref().map_err(|e| Error::Internal(e.to_string()))?.table;
        let printed = if n == 1 { reference::c1() } else { reference::c2() };
        let m = match_tables(t, &printed)?;
        Ok((m.is_some(), "equal up to row and column permutation".into()))
    });
    c.run("Fischer identity", || {
        let r = fischer_check(&ctx)?;
        Ok((true, format!("A{n} table carried row by row onto C{n}, section shifts {:?}", r.shifts)))
    });
    c.run("corollary suite", || {
        let t = &assembled.as_ref().map_err(|e| Error::Internal(e.to_string()))?.table;
        let r = corollary_suite(&ctx, t)?;
        let bad: Vec<String> = r.failures().iter().map(|f| f.label.clone()).collect();
        Ok((r.passed(), if bad.is_empty() { format!("{} rows", r.rows.len()) } else { format!("failing rows {bad:?}") }))
    });
    if n == 2 {
        c.run("induced rows against printed multisets", || {
            let t = &assembled.as_ref().map_err(|e| Error::Internal(e.to_string()))?.table;
            let printed = reference::c2();
            let sizes = printed.implied_class_sizes()?;
            let mut missing = Vec::new();
            for p in printed.rows.iter().filter(|p| p.label.starts_with("Ind")) {
                if rows_with_multiset(t, &p.values, &sizes)?.is_empty() {
                    missing.push(p.label.to_string());
                }
            }
            Ok((missing.is_empty(), if missing.is_empty() { "10 rows".into() } else { format!("unmatched {missing:?}") }))
        });
    }
    Ok(VerifyReport { n, items: c.items })
}

pub fn cmd_dixon(group: NamedGroup, job: &JobSpec) -> Result<String> {
    let table = match group {
        NamedGroup::Sp2 => dixon_table(&enumerate_sp(1)?)?,
        NamedGroup::Sp4 => dixon_table(&enumerate_sp(2)?)?,
        NamedGroup::C1 => dixon_table(&job.cache.clifford(1, false)?)?,
        NamedGroup::C2 => dixon_table(&job.cache.clifford(2, false)?)?,
        NamedGroup::In2 => dixon_table(job.cache.inertia(2, false)?.group())?,
        NamedGroup::In2Quotient => dixon_table(&job.cache.inertia(2, false)?.symplectic_quotient()?)?,
        NamedGroup::AffineSp2 => dixon_table(&enumerate_affine(1)?)?,
        NamedGroup::AffineSp4 => dixon_table(&enumerate_affine(2)?)?,
    };
    render_table(&table, job.format)
}
