//! Command-line front end: configuration, dispatch, report emission and the
//! on-disk cache.

mod cache;
mod commands;


use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub use cache::{cached, Cache, CacheKey, FIELD_CONVENTION};
pub use commands::{
    BlockRow, BlocksTable, BuildingSummary, HomologyEntry, HomologyTable, PosetListing,
};

use crate::error::{Error, Result};
use crate::groups::{GroupSpec, DEFAULT_GROUP_CAP};
use crate::pairs::Flavor;
use crate::topo::HOMOLOGY_CHECK_LIMIT;
use crate::verify::{BlockSelector, Task};

pub const CACHE_DIR_ENV: &str = "BRAUER_CACHE_DIR";
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser, Debug)]
#[command(
    name = "brauer",
    version,
    about = "Brauer-pair posets and their homotopy certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Blocks of the group with principal flag and defect order
    Blocks,
    /// The poset of Brauer pairs of a block
    BrauerPoset,
    /// The poset of e-split Levi pairs of a block
    EsplitPoset,
    /// Homology of the Brauer-pair complex of a block
    Homology,
    /// The Tits building of GL_n(q) or SL_n(q)
    Building,
    /// Run a verification harness
    Verify {
        /// axioms, lemma-ab, prop-ac, defining, theorem-a or brown
        task: Task,
    },
}

#[derive(Args, Debug, Default, Clone)]
pub struct Options {
    /// Group spec, e.g. "kind=GL,n=2,q=4"
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Take the group (and centric control) from a registry instance
    #[arg(long, global = true)]
    pub instance: Option<String>,
    /// The prime ell
    #[arg(long, global = true)]
    pub ell: Option<u64>,
    /// principal, all, or a block index
    #[arg(long, global = true)]
    pub block: Option<String>,
    /// full, abelian, elementary-abelian, almost-centric, centric or abelian-almost-centric
    #[arg(long, global = true)]
    pub flavor: Option<String>,
    /// json or text
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// File of `key = value` lines; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Result cache directory (default $BRAUER_CACHE_DIR)
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads for the per-block and per-fiber loops
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Record wall-clock time in reports
    #[arg(long, global = true)]
    pub timing: bool,
    /// Refuse groups with more elements than this
    #[arg(long, global = true)]
    pub max_group_order: Option<usize>,
    /// Largest fiber complex whose homology is recomputed as a cross-check
    #[arg(long, global = true)]
    pub max_fiber_simplices: Option<usize>,
    /// Seed for the sampled checks
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Also run the centric analogue of prop-ac, expected to fail
    #[arg(long, global = true)]
    pub centric_control: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::Usage(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_group_order: usize,
    pub max_fiber_simplices: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            max_group_order: DEFAULT_GROUP_CAP,
            max_fiber_simplices: HOMOLOGY_CHECK_LIMIT,
        }
    }
}

/// A validated command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub group: GroupSpec,
    pub instance: Option<String>,
    pub ell: Option<u64>,
    pub block: Option<BlockSelector>,
    pub flavor: Flavor,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub timing: bool,
    pub caps: Caps,
    pub seed: u64,
    pub centric_control: bool,
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn read_config_file(path: &Path) -> Result<Vec<(String, String)>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            Error::Usage(format!(
                "{}:{}: expected key = value",
                path.display(),
                n + 1
            ))
        })?;
        out.push((
            k.trim().replace('_', "-"),
            v.trim().trim_matches('"').to_string(),
        ));
    }
    Ok(out)
}

fn parse_value<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Usage(format!("invalid value {v:?} for {key}")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::Usage(format!("invalid value {v:?} for {key}"))),
    }
}

/// Fills options the command line left unset from a config file.
fn merge_file(opts: &mut Options, entries: Vec<(String, String)>) -> Result<()> {
    for (k, v) in entries {
        match k.as_str() {
            "group" => opts.group = opts.group.take().or(Some(v)),
            "instance" => opts.instance = opts.instance.take().or(Some(v)),
            "ell" => opts.ell = opts.ell.or(Some(parse_value(&k, &v)?)),
            "block" => opts.block = opts.block.take().or(Some(v)),
            "flavor" => opts.flavor = opts.flavor.take().or(Some(v)),
            "format" => opts.format = opts.format.take().or(Some(v)),
            "cache-dir" => opts.cache_dir = opts.cache_dir.take().or(Some(PathBuf::from(v))),
            "threads" => opts.threads = opts.threads.or(Some(parse_value(&k, &v)?)),
            "max-group-order" => {
                opts.max_group_order = opts.max_group_order.or(Some(parse_value(&k, &v)?))
            }
            "max-fiber-simplices" => {
                opts.max_fiber_simplices = opts.max_fiber_simplices.or(Some(parse_value(&k, &v)?))
            }
            "seed" => opts.seed = opts.seed.or(Some(parse_value(&k, &v)?)),
            "timing" => opts.timing |= parse_bool(&k, &v)?,
            "no-cache" => opts.no_cache |= parse_bool(&k, &v)?,
            "centric-control" => opts.centric_control |= parse_bool(&k, &v)?,
            _ => return Err(Error::Usage(format!("unknown config key {k:?}"))),
        }
    }
    Ok(())
}

fn validate(command: Command, mut opts: Options, env_cache: Option<PathBuf>) -> Result<RunConfig> {
    if let Some(path) = opts.config.clone() {
        merge_file(&mut opts, read_config_file(&path)?)?;
    }
    let instance = match &opts.instance {
        Some(name) => Some(
            crate::verify::find_instance(name)
                .ok_or_else(|| Error::Usage(format!("no registry instance named {name:?}")))?,
        ),
        None => None,
    };
    let group = match (&opts.group, &instance) {
        (Some(g), _) => GroupSpec::parse(g)?,
        (None, Some(i)) => i.spec()?,
        (None, None) => return Err(Error::Usage("--group is required".into())),
    };
    let ell = opts
        .ell
        .or_else(|| instance.as_ref().and_then(|i| i.ell.first().copied()));
    if let Some(ell) = ell {
        crate::groups::check_prime(ell)?;
    } else if command != Command::Building {
        return Err(Error::Usage("--ell is required".into()));
    }
    let caps = Caps {
        max_group_order: opts.max_group_order.unwrap_or(DEFAULT_GROUP_CAP),
        max_fiber_simplices: opts.max_fiber_simplices.unwrap_or(HOMOLOGY_CHECK_LIMIT),
    };
    if caps.max_group_order == 0 || caps.max_fiber_simplices == 0 {
        return Err(Error::Usage("caps must be positive".into()));
    }
    if opts.threads == Some(0) {
        return Err(Error::Usage("--threads must be positive".into()));
    }
    let centric_control = opts.centric_control
        || instance
            .as_ref()
            .is_some_and(|i| ell.is_some_and(|l| i.centric_control.contains(&l)));
    let cache_dir = if opts.no_cache {
        None
    } else {
        opts.cache_dir.or(env_cache)
    };
    Ok(RunConfig {
        command,
        group,
        instance: opts.instance,
        ell,
        block: opts.block.as_deref().map(str::parse).transpose()?,
        flavor: opts
            .flavor
            .as_deref()
            .map_or(Ok(Flavor::Full), str::parse)?,
        format: opts
            .format
            .as_deref()
            .map_or(Ok(Format::Json), str::parse)?,
        cache_dir,
        threads: opts.threads,
        timing: opts.timing,
        caps,
        seed: opts.seed.unwrap_or(DEFAULT_SEED),
        centric_control,
    })
}

/// Parses a full argument vector (program name first). The cache
/// directory falls back to `BRAUER_CACHE_DIR`, and a config file fills
/// in whatever the flags leave unset.
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)
        .map_err(|e| Error::Usage(e.to_string().trim_end().to_string()))?;
    let env_cache = std::env::var_os(CACHE_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from);
    validate(cli.command, cli.opts, env_cache)
}

/// Rendered output and whether it counts as a pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub pass: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

pub(crate) fn render<T: Serialize>(
    format: Format,
    value: &T,
    text: impl FnOnce(&T) -> String,
) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Text => text(value),
    })
}

/// Runs a validated configuration.
pub fn run_command(cfg: &RunConfig) -> Result<Outcome> {
    if let Some(n) = cfg.threads {
        // fails only when a global pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    crate::topo::set_homology_check_limit(cfg.caps.max_fiber_simplices);
    let cache = cfg.cache_dir.as_ref().map(Cache::open).transpose()?;
    let start = Instant::now();
    match &cfg.command {
        Command::Blocks => commands::blocks(cfg, cache.as_ref()),
        Command::BrauerPoset => commands::brauer_poset(cfg, cache.as_ref()),
        Command::EsplitPoset => commands::esplit_poset(cfg, cache.as_ref()),
        Command::Homology => commands::homology(cfg, cache.as_ref()),
        Command::Building => commands::building(cfg, cache.as_ref()),
        Command::Verify { task } => {
            let mut report = commands::verify(cfg, *task, cache.as_ref())?;
            if cfg.timing {
                report.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            let output = match cfg.format {
                Format::Json => report.to_json()?,
                Format::Text => report.to_text(),
            };
            Ok(Outcome {
                output,
                pass: report.pass,
            })
        }
    }
}

/// The whole program: parses `argv`, runs, writes output and returns the
/// exit code (0 pass, 1 verified failure, 2 usage or precondition error).
pub fn main_with_args<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    if let Err(e) = Cli::try_parse_from(&argv) {
        use clap::error::ErrorKind;
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
            let _ = write!(out, "{e}");
            return 0;
        }
    }
    let outcome = parse_config(argv).and_then(|cfg| run_command(&cfg));
    match outcome {
        Ok(o) => {
            if out
                .write_all(o.output.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return 2;
            }
            o.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
