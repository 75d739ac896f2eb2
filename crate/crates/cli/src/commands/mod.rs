mod cutoff;
mod exhaustion;
mod measure;

use crate::config::{Command, RunConfig};
use crate::error::CliError;
use crate::report::Report;

pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    match config.command {
        Command::FactorNorms => measure::factor_norms(config),
        Command::ProductMeasure => measure::product_measure(config),
        Command::SeriesSweep => measure::series_sweep(config),
        Command::CircleMeasure => measure::circle_measure(config),
        Command::Saeki => measure::saeki(config),
        Command::Cutoffs => cutoff::cutoffs(config),
        Command::Symbol => cutoff::symbol(config),
        Command::Certify => exhaustion::certify(config),
        Command::Induce => exhaustion::induce(config),
    }
}
