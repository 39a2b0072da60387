//! Front end for the `besselmap` library: run configurations, report
//! formats and the five subcommands.

pub mod commands;
pub mod config;
pub mod csv;
pub mod output;
pub mod params;
pub mod svg;

pub use commands::Command;
pub use config::{Config, ConfigError};

/// Loads `config` (if any) and applies `--key value` overrides.
pub fn load_config(config: Option<&std::path::Path>, overrides: &[String]) -> anyhow::Result<Config> {
    let mut cfg = match config {
        Some(p) => {
            let text =
                std::fs::read_to_string(p).map_err(|e| anyhow::anyhow!("cannot read config {}: {e}", p.display()))?;
            Config::parse(&text).map_err(|e| anyhow::anyhow!("{}: {e}", p.display()))?
        }
        None => Config::default(),
    };
    cfg.apply_overrides(overrides)?;
    Ok(cfg)
}

/// Sizes the global rayon pool from `BESSELMAP_THREADS` when it is set.
pub fn init_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("BESSELMAP_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| anyhow::anyhow!("BESSELMAP_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}
