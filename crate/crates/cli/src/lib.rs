//! Library side of the `bfclab` command: configuration loading, the claim
//! suite catalog, and report export.

pub mod report;
pub mod suites;

use std::path::{Path, PathBuf};

use anyhow::Context;

use bfc_core::Config;

/// Environment variable overriding the configuration file path.
pub const CONFIG_ENV: &str = "BFCLAB_CONFIG";

/// Loads the effective configuration: an explicit path wins over the
/// `BFCLAB_CONFIG` environment variable, which wins over built-in defaults.
/// Missing keys take their default values.
pub fn load_config(path: Option<&Path>) -> anyhow::Result<Config> {
    let chosen: Option<PathBuf> = match path {
        Some(p) => Some(p.to_path_buf()),
        None => std::env::var_os(CONFIG_ENV).map(PathBuf::from),
    };
    let cfg = match chosen {
        Some(p) => {
            let text = std::fs::read_to_string(&p)
                .with_context(|| format!("reading config {}", p.display()))?;
            toml::from_str::<Config>(&text)
                .with_context(|| format!("parsing config {}", p.display()))?
        }
        None => Config::default(),
    };
    cfg.validate()?;
    Ok(cfg)
}
