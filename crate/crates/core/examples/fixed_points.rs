//! Fixed loci of abelian groups and how they meet the surface.

use delpezzo::families::{family, FamilyParams};
use delpezzo::fixedlocus::{eigen_decompose, fixed_points_on_surface};
use delpezzo::groups::DEFAULT_CAP;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("fermat", "typeI"),
        ("fermat", "typeII"),
        ("diagonal_quartic", "iota45"),
        ("diagonal_quartic", "obstructionC"),
        ("p2", "obstructionB"),
    ];
    for (name, preset) in cases {
        let spec = family(name, &FamilyParams::default())?;
        let g = spec.preset_group(preset, DEFAULT_CAP)?;
        println!("{name} / {preset}: {} of order {}", g.tag(), g.order());
        for e in g.generators() {
            let eig = eigen_decompose(&e)?;
            println!("  generator of order {} with eigenspaces {:?}", eig.normalized_lift_order, eig.profile());
        }
        let report = fixed_points_on_surface(&g, &spec.surface)?;
        for c in &report.components {
            println!("  fixed P^{} meets the surface in {} points", c.subspace.dim() - 1, c.meet.count);
        }
        println!("  has fixed point: {}", report.has_fixed_point);
    }
    Ok(())
}
