//! Configuration, persistence and preset experiments: the front door the CLI
//! drives.

mod checkpoint;
mod config;
mod manifest;
mod presets;
mod report;

pub use checkpoint::{
    read_checkpoint_2d, read_checkpoint_axi, write_checkpoint_2d, write_checkpoint_axi,
};
pub use config::{canonical_2d, canonical_axi, parse_axi_config, parse_config};
pub use manifest::RunManifest;
pub use presets::{preset_names, run_preset, ExperimentPreset, PresetOutcome, CRITERIA_REGISTRY, PRESETS};
pub use report::{CriterionResult, Report};

/// Environment variable naming the default output root.
pub const OUTPUT_ENV: &str = "LERAYLAB_OUTPUT";
