//! Exact arithmetic in cyclotomic fields.

use delpezzo::cyclo::{parse_rational, zeta, CycNum};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = zeta(3, 1);
    let i = zeta(4, 1);
    println!("e = {e}, i = {i}");
    println!("1 + e + e^2 = {}", &(&CycNum::from_int(1) + &e) + &e.pow(2)?);
    let sum = &e + &i;
    println!("e + i = {sum} in Q(zeta_{})", sum.order());
    println!("(e + i)^-1 = {}", sum.inverse()?);
    println!("(e + i) * (e + i)^-1 = {}", &sum * &sum.inverse()?);
    let z = zeta(12, 5);
    println!("zeta_12^5 as a root of unity: {:?}", z.as_root_of_unity());
    let half = CycNum::from_rational(parse_rational("-1/2")?, 1);
    println!("-1/2 rational: {:?}", half.to_rational().map(|r| r.to_string()));
    Ok(())
}
