//! The 27 lines of the Fermat cubic and invariant Picard ranks.

use delpezzo::families::{family, FamilyParams};
use delpezzo::groups::DEFAULT_CAP;
use delpezzo::lines::{fermat_lines, invariant_picard_rank, invariant_picard_rank_echelon, line_permutation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lines = fermat_lines();
    println!("{} lines, intersection matrix of rank {}", lines.len(), lines.picard_rank());
    let spec = family("fermat", &FamilyParams::default())?;
    let s12 = spec.evaluate_word("s12")?;
    println!("s12 permutes the lines as {:?}", line_permutation(&s12, &lines)?);
    for preset in spec.presets.keys() {
        let g = spec.preset_group(preset, DEFAULT_CAP)?;
        println!(
            "{preset:<8} |G| = {:<4} rank (trace) = {} rank (echelon) = {}",
            g.order(),
            invariant_picard_rank(&g, &lines)?,
            invariant_picard_rank_echelon(&g, &lines)?
        );
    }
    Ok(())
}
