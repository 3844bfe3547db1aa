//! Invariant and semi-invariant forms via the Reynolds operator.

use delpezzo::families::{family, FamilyParams};
use delpezzo::geometry::reynolds_invariants;
use delpezzo::groups::DEFAULT_CAP;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fermat = family("fermat", &FamilyParams::default())?;
    for preset in ["typeI", "typeII", "typeIII"] {
        let g = fermat.preset_group(preset, DEFAULT_CAP)?;
        let basis = reynolds_invariants(&g, 3, None)?;
        let shown: Vec<String> = basis.iter().map(|f| f.to_string()).collect();
        println!("{preset}: {} cubic invariants: {}", basis.len(), shown.join(", "));
    }

    let a4 = family("a4_cubic", &FamilyParams::default())?;
    let g = a4.preset_group("A4", DEFAULT_CAP)?;
    let basis = reynolds_invariants(&g, 3, None)?;
    println!("A4 cubics:");
    for f in &basis {
        println!("  {f}");
    }

    Ok(())
}
