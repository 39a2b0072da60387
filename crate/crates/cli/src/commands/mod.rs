//! One module per subcommand. Each checks its key set, validates every field
//! and returns the full report text; writing it out is left to the caller.

pub mod calibrate;
pub mod eval;
pub mod map_grid;
pub mod sweep;
pub mod verify;

use crate::config::Config;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Eval,
    Verify,
    Sweep,
    MapGrid,
    Calibrate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Eval => "eval",
            Command::Verify => "verify",
            Command::Sweep => "sweep",
            Command::MapGrid => "map-grid",
            Command::Calibrate => "calibrate",
        }
    }

    pub fn allowed_keys(self) -> Vec<&'static str> {
        match self {
            Command::Eval => eval::allowed_keys(),
            Command::Verify => verify::allowed_keys(),
            Command::Sweep => sweep::allowed_keys(),
            Command::MapGrid => map_grid::allowed_keys(),
            Command::Calibrate => calibrate::allowed_keys(),
        }
    }

    pub fn run(self, cfg: &Config) -> anyhow::Result<String> {
        cfg.check_keys(&self.allowed_keys(), self.name())?;
        match self {
            Command::Eval => eval::run(cfg),
            Command::Verify => verify::run(cfg),
            Command::Sweep => sweep::run(cfg),
            Command::MapGrid => map_grid::run(cfg),
            Command::Calibrate => calibrate::run(cfg),
        }
    }
}
