//! Decide equivariant unirationality for every built-in surface and preset group.
//!
//! Run with `cargo run --example decide_presets`.

use std::time::Instant;

use delpezzo::classify::decide;
use delpezzo::families::{family, FamilyParams, FAMILY_NAMES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in FAMILY_NAMES {
        let spec = family(name, &FamilyParams::default())?;
        for preset in spec.presets.keys() {
            let start = Instant::now();
            let gens = spec.preset_generators(preset)?;
            let report = decide(&spec.surface, &gens)?;
            let labels: Vec<String> = report.obstructions().iter().map(|o| o.to_string()).collect();
            println!(
                "{name:>16} {preset:<13} |G| = {:<4} unirational = {:<5} obstructions = [{}]  ({:.2?})",
                report.group_order,
                report.unirational,
                labels.join(", "),
                start.elapsed()
            );
        }
    }
    Ok(())
}
