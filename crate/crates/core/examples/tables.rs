//! Classify the C2^2 subgroups of the quartic's sign changes and the diagonal
//! C3^2 subgroups acting on the Fermat cubic.

use delpezzo::classify::{reproduce_table, TABLE_NAMES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in TABLE_NAMES {
        let t = reproduce_table(name)?;
        println!("{} ({} subgroups, counts by {})", t.table, t.rows.len(), t.count_labels.join("/"));
        for (kind, n) in &t.totals {
            println!(
                "  type {kind:<3} x{n:<3} counts {:?} orbits {:?}",
                t.type_counts[kind], t.orbit_sizes[kind]
            );
        }
        println!("  type I exactly when fixed points exist: {}", t.cross_check);
    }
    Ok(())
}
