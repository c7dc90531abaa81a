use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use levelwise::{
    assign_ids, brute_force_candidates, colex_family, kk_bound, load_transactions, maxsize, mine, mu,
    write_stats, BoundKind, Count, ItemId, ItemSet, MinerConfig, PatternTrie,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXIT_USAGE: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_FELL_BACK: u8 = 4;

#[derive(Parser)]
#[command(name = "levelwise", version, about = "Levelwise frequent-itemset mining with candidate bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine all frequent itemsets of a transaction file.
    Mine(MineArgs),
    /// Evaluate the candidate bounds of a family of equal-size itemsets.
    Bounds(BoundsArgs),
    /// Check the bounds against brute-force enumeration.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Kk,
    KkStar,
    Gkk,
    GkkStar,
}

impl From<KindArg> for BoundKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Kk => BoundKind::Kk,
            KindArg::KkStar => BoundKind::KkStar,
            KindArg::Gkk => BoundKind::Gkk,
            KindArg::GkkStar => BoundKind::GkkStar,
        }
    }
}

#[derive(Args)]
struct MineArgs {
    /// Transaction file: one transaction per line, whitespace-separated labels.
    #[arg(long)]
    input: PathBuf,
    /// Absolute support threshold.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    minsup: u64,
    /// Count a pattern frequent only when its support exceeds minsup.
    #[arg(long)]
    strict: bool,
    /// Number items by increasing frequency before mining.
    #[arg(long)]
    reorder: bool,
    /// Bound driving termination and pass merging.
    #[arg(long, value_enum, default_value = "gkk-star")]
    bound_kind: KindArg,
    /// Merge the remaining passes once the total bound is at most this.
    #[arg(long)]
    combine_limit: Option<u64>,
    /// Most candidates a merged pass may hold before falling back.
    #[arg(long)]
    memory_budget: Option<usize>,
    /// Write the per-level bound report as CSV.
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Write patterns here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundsKindArg {
    Kk,
    KkStar,
    All,
}

#[derive(Args)]
struct BoundsArgs {
    /// One itemset per line; all of the same size.
    #[arg(long)]
    input: PathBuf,
    /// Report only level k+p.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), conflicts_with = "all")]
    p: Option<u64>,
    /// Report every nonzero level (the default).
    #[arg(long)]
    all: bool,
    #[arg(long, value_enum, default_value = "all")]
    kind: BoundsKindArg,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 200)]
    max_n: u64,
    #[arg(long, default_value_t = 5)]
    max_k: usize,
    #[arg(long, default_value_t = 4)]
    max_p: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random families for the sandwich check.
    #[arg(long, default_value_t = 1000)]
    families: usize,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure { code: EXIT_IO, error }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Mine(args) => cmd_mine(args),
        Command::Bounds(args) => cmd_bounds(args).map_err(Failure::from),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(BufReader::new(file))
}

fn cmd_mine(args: MineArgs) -> Result<u8, Failure> {
    let db = load_transactions(open(&args.input)?).with_context(|| format!("reading {}", args.input.display()))?;
    let db = assign_ids(db, args.reorder);
    let config = MinerConfig {
        minsup: args.minsup,
        strict: args.strict,
        reorder: args.reorder,
        bound_kind: args.bound_kind.into(),
        combine_limit: args.combine_limit.map(Count::from),
        memory_budget: args.memory_budget,
    };
    let outcome = mine(&db, &config).map_err(|e| Failure {
        code: EXIT_USAGE,
        error: e.into(),
    })?;
    match &args.output {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            outcome.write_patterns(BufWriter::new(file)).context("writing patterns")?;
        }
        None => outcome.write_patterns(io::stdout().lock()).context("writing patterns")?,
    }
    if let Some(path) = &args.stats {
        write_stats(&outcome.reports, path).map_err(anyhow::Error::from)?;
    }
    eprintln!(
        "{} frequent patterns, {} passes{}",
        outcome.patterns.len(),
        outcome.passes,
        outcome
            .combined_after
            .map(|k| format!(", passes merged after level {k}"))
            .unwrap_or_default()
    );
    if outcome.fell_back {
        eprintln!("note: merging exceeded the memory budget; continued level by level");
        return Ok(EXIT_FELL_BACK);
    }
    Ok(0)
}

fn read_family(path: &Path) -> Result<Vec<ItemSet>> {
    let mut family = Vec::new();
    let mut size = None;
    for (index, line) in open(path)?.lines().enumerate() {
        let line = line.with_context(|| format!("reading {}", path.display()))?;
        let items = line
            .split_whitespace()
            .map(|t| t.parse::<ItemId>().with_context(|| format!("line {}: bad item `{t}`", index + 1)))
            .collect::<Result<Vec<_>>>()?;
        if items.is_empty() {
            continue;
        }
        let set = ItemSet::new(items);
        match size {
            None => size = Some(set.len()),
            Some(k) if k != set.len() => {
                bail!("line {}: itemset has {} items, expected {k}", index + 1, set.len())
            }
            _ => {}
        }
        family.push(set);
    }
    if family.is_empty() {
        bail!("{} holds no itemsets", path.display());
    }
    Ok(family)
}

fn join(values: &[Count]) -> String {
    if values.is_empty() {
        return "0".into();
    }
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_bounds(args: BoundsArgs) -> Result<u8> {
    let family = read_family(&args.input)?;
    let k = family[0].len();
    let trie = PatternTrie::from_family(&family);
    let b = trie.view().bounds(k);
    let show = |profile: &[Count]| match args.p {
        Some(p) => profile.get(p as usize - 1).cloned().unwrap_or_default().to_string(),
        None => join(profile),
    };
    let mut out = io::stdout().lock();
    writeln!(out, "k: {k}")?;
    writeln!(out, "size: {}", b.family_size)?;
    if !matches!(args.kind, BoundsKindArg::KkStar) {
        writeln!(out, "kk: {}", show(&b.kk))?;
        writeln!(out, "mu: {}", b.mu)?;
        writeln!(out, "kk_total: {}", b.kk_total)?;
    }
    if !matches!(args.kind, BoundsKindArg::Kk) {
        writeln!(out, "kk_star: {}", show(&b.kk_star))?;
        writeln!(out, "mu_star: {}", b.mu_star)?;
        writeln!(out, "kk_star_total: {}", b.kk_star_total)?;
        writeln!(out, "obvious: {}", trie.view().obvious_bound(k))?;
    }
    Ok(0)
}

/// A random family of `k`-sets over at most 12 items, at most 80 sets.
fn random_family(rng: &mut ChaCha8Rng) -> (usize, Vec<ItemSet>) {
    let k = rng.random_range(2..=4);
    let universe = rng.random_range(k + 1..=12) as ItemId;
    let target = rng.random_range(1..=80);
    let mut family = Vec::with_capacity(target);
    for _ in 0..target {
        let mut items: Vec<ItemId> = Vec::with_capacity(k);
        while items.len() < k {
            let x = rng.random_range(1..=universe);
            if !items.contains(&x) {
                items.push(x);
            }
        }
        family.push(ItemSet::new(items));
    }
    family.sort();
    family.dedup();
    (k, family)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let (mut passed, mut failed) = (0u64, 0u64);
    for k in 2..=args.max_k {
        for n in 1..=args.max_n {
            let family = colex_family(n, k);
            let count = Count::from(n);
            for p in 1..=args.max_p {
                let actual = brute_force_candidates(&family, p).len() as u64;
                if Count::from(actual) == kk_bound(&count, k, p) {
                    passed += 1;
                } else {
                    failed += 1;
                    eprintln!("tightness violated: n={n} k={k} p={p}");
                }
            }
            if maxsize(&family) == mu(&count, k) {
                passed += 1;
            } else {
                failed += 1;
                eprintln!("maxsize differs from mu: n={n} k={k}");
            }
        }
    }
    println!("tightness: {passed} passed, {failed} failed");

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (mut s_passed, mut s_failed) = (0u64, 0u64);
    for _ in 0..args.families {
        let (k, family) = random_family(&mut rng);
        let b = PatternTrie::from_family(&family).view().bounds(k);
        for p in 1..=args.max_p {
            let actual = Count::from(brute_force_candidates(&family, p).len());
            let (star, kk) = (b.kk_star_at(p), b.kk_at(p));
            if actual <= star && star <= kk {
                s_passed += 1;
            } else {
                s_failed += 1;
                eprintln!("sandwich violated: k={k} p={p} actual={actual} kk*={star} kk={kk}");
            }
        }
    }
    println!("sandwich: {s_passed} passed, {s_failed} failed");
    if failed + s_failed > 0 {
        return Err(Failure {
            code: EXIT_VERIFY,
            error: anyhow::anyhow!("{} violations", failed + s_failed),
        });
    }
    Ok(0)
}
