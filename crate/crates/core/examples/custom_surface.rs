//! Build a surface input document by hand, validate it and decide.

use delpezzo::classify::decide;
use delpezzo::cli::SurfaceInput;
use delpezzo::families::evaluate_word;

const INPUT: &str = r#"{
  "cyclotomic_order": 3,
  "model": "P2",
  "equations": [],
  "generators": {
    "cycle": {"rows": 3, "cols": 3, "entries": [
      [{"order": 1, "coeffs": ["0"]}, {"order": 1, "coeffs": ["0"]}, {"order": 1, "coeffs": ["1"]}],
      [{"order": 1, "coeffs": ["1"]}, {"order": 1, "coeffs": ["0"]}, {"order": 1, "coeffs": ["0"]}],
      [{"order": 1, "coeffs": ["0"]}, {"order": 1, "coeffs": ["1"]}, {"order": 1, "coeffs": ["0"]}]]},
    "twist": {"rows": 3, "cols": 3, "entries": [
      [{"order": 1, "coeffs": ["1"]}, {"order": 1, "coeffs": ["0"]}, {"order": 1, "coeffs": ["0"]}],
      [{"order": 1, "coeffs": ["0"]}, {"order": 3, "coeffs": ["0", "1"]}, {"order": 1, "coeffs": ["0"]}],
      [{"order": 1, "coeffs": ["0"]}, {"order": 1, "coeffs": ["0"]}, {"order": 3, "coeffs": ["-1", "-1"]}]]}
  }
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let input = SurfaceInput::parse(INPUT)?;
    let resolved = input.resolve()?;
    for words in [vec!["cycle"], vec!["twist"], vec!["cycle", "twist"], vec!["cycle*twist^2"]] {
        let gens = words
            .iter()
            .map(|w| evaluate_word(&resolved.generators, 3, w))
            .collect::<Result<Vec<_>, _>>()?;
        let r = decide(&resolved.surface, &gens)?;
        println!("{:<24} |G| = {:<3} unirational = {} {:?}", words.join(", "), r.group_order, r.unirational, r.obstructions());
    }

    let broken = INPUT.replacen('{', "{\"colour\": 1, ", 1);
    if let Err(e) = SurfaceInput::parse(&broken) {
        println!("rejected: {e}");
    }
    Ok(())
}
