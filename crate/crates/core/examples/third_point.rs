//! The third intersection map on the Clebsch cubic and its S5-equivariance.

use delpezzo::families::{family, FamilyParams};
use delpezzo::geometry::{third_point, ProjPoint};
use delpezzo::groups::DEFAULT_CAP;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let clebsch = family("clebsch", &FamilyParams::default())?;
    let x = &clebsch.surface;
    let s5 = clebsch.preset_group("S5", DEFAULT_CAP)?;
    // (a, -a, b, -b, 0) lies on the Clebsch surface; drop x5.
    let p = ProjPoint::from_ints(&[1, -1, 2, -2])?;
    let q = ProjPoint::from_ints(&[3, 0, -3, 1])?;
    let r = third_point(x, &p, &q)?;
    println!("omega({p}, {q}) = {} ({:?})", r.point, r.contact);
    for i in [1, 17, 64, 119] {
        let g = s5.element(i);
        let lhs = third_point(x, &p.apply(g)?, &q.apply(g)?)?.point;
        let rhs = r.point.apply(g)?;
        println!("  element {i:>3}: omega(gp, gq) = {lhs}, g omega(p, q) = {rhs}, equal = {}", lhs == rhs);
    }
    match third_point(x, &p, &p) {
        Err(e) => println!("omega(p, p): {e}"),
        Ok(t) => println!("omega(p, p) = {}", t.point),
    }
    Ok(())
}
