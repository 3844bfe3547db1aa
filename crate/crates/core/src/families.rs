//! Built-in surfaces with named generators and preset groups.
//!
//! Preset groups are lists of words in the named generators, such as
//! `"d1^2*d2^2*d3^2"`; a word is a `*`-separated product of `name` or
//! `name^k` factors with `k` possibly negative.

use indexmap::IndexMap;
use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{zeta, CycNum};
use crate::geometry::{preserves_surface, GeometryError, SparsePoly, SurfaceKind, SurfaceModel};
use crate::groups::{generate_in, GroupError, ProjElement, ProjGroup};
use crate::linalg::{LinalgError, Matrix};

pub const FAMILY_NAMES: [&str; 7] = [
    "clebsch",
    "fermat",
    "cyclic_cubic",
    "diagonal_quartic",
    "p2",
    "p1xp1_quadric",
    "a4_cubic",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("unknown preset group {0:?}")]
    UnknownPreset(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("cannot parse word {0:?}")]
    BadWord(String),
    #[error("generator {0} does not preserve the surface")]
    ActionDoesNotPreserveSurface(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Optional family parameters; missing values take the family defaults.
#[derive(Clone, Debug, Default)]
pub struct FamilyParams {
    /// Coefficient of `x1*x2*x3` for `cyclic_cubic`.
    pub alpha: Option<CycNum>,
    /// The five `a_i` of `diagonal_quartic`.
    pub a: Option<Vec<CycNum>>,
    /// The coefficients `(a, b, c)` of `a4_cubic`.
    pub abc: Option<Vec<CycNum>>,
}

/// A surface with its named generators and preset groups.
#[derive(Clone, Debug, Serialize)]
pub struct FamilySpec {
    pub name: String,
    pub parameters: IndexMap<String, Vec<CycNum>>,
    pub surface: SurfaceModel,
    #[serde(serialize_with = "serialize_generators")]
    pub named_generators: IndexMap<String, ProjElement>,
    pub presets: IndexMap<String, Vec<String>>,
}

fn serialize_generators<S: serde::Serializer>(
    gens: &IndexMap<String, ProjElement>,
    s: S,
) -> Result<S::Ok, S::Error> {
    let lifts: IndexMap<&String, &Matrix> = gens.iter().map(|(k, v)| (k, v.lift())).collect();
    lifts.serialize(s)
}

impl FamilySpec {
    fn new(
        name: &str,
        parameters: IndexMap<String, Vec<CycNum>>,
        surface: SurfaceModel,
        gens: Vec<(&str, ProjElement)>,
        presets: Vec<(&str, Vec<&str>)>,
    ) -> Result<Self, FamilyError> {
        let mut named_generators = IndexMap::new();
        for (k, g) in gens {
            if !preserves_surface(&g, &surface)? {
                return Err(FamilyError::ActionDoesNotPreserveSurface(k.to_string()));
            }
            named_generators.insert(k.to_string(), g);
        }
        let spec = FamilySpec {
            name: name.to_string(),
            parameters,
            surface,
            named_generators,
            presets: presets
                .into_iter()
                .map(|(k, v)| (k.to_string(), v.into_iter().map(String::from).collect()))
                .collect(),
        };
        for words in spec.presets.values() {
            for w in words {
                spec.evaluate_word(w)?;
            }
        }
        Ok(spec)
    }

    /// Evaluate a word such as `"d1*d2^2"` in the named generators.
    pub fn evaluate_word(&self, word: &str) -> Result<ProjElement, FamilyError> {
        evaluate_word(&self.named_generators, self.surface.nvars(), word)
    }

    pub fn preset_generators(&self, preset: &str) -> Result<Vec<ProjElement>, FamilyError> {
        let words = self
            .presets
            .get(preset)
            .ok_or_else(|| FamilyError::UnknownPreset(preset.to_string()))?;
        words.iter().map(|w| self.evaluate_word(w)).collect()
    }

    pub fn preset_group(&self, preset: &str, cap: usize) -> Result<ProjGroup, FamilyError> {
        let gens = self.preset_generators(preset)?;
        Ok(generate_in(self.surface.nvars(), &gens, cap)?)
    }
}

/// Evaluate a `*`-separated word of `name` or `name^k` factors.
pub fn evaluate_word(
    gens: &IndexMap<String, ProjElement>,
    n: usize,
    word: &str,
) -> Result<ProjElement, FamilyError> {
    let bad = || FamilyError::BadWord(word.to_string());
    let mut acc = ProjElement::identity(n);
    let word = word.trim();
    if word.is_empty() {
        return Err(bad());
    }
    for factor in word.split('*') {
        let factor = factor.trim();
        let (name, k) = match factor.split_once('^') {
            Some((name, k)) => (name.trim(), k.trim().parse::<i64>().map_err(|_| bad())?),
            None => (factor, 1),
        };
        if name.is_empty() {
            return Err(bad());
        }
        let g = gens
            .get(name)
            .ok_or_else(|| FamilyError::UnknownGenerator(name.to_string()))?;
        acc = acc.compose(&g.pow(k));
    }
    Ok(acc)
}

fn c(v: i64) -> CycNum {
    CycNum::from_int(v)
}

fn eps(k: i64) -> CycNum {
    zeta(3, k)
}

fn x(n: usize, i: usize) -> SparsePoly {
    SparsePoly::var(n, i)
}

fn sum(polys: impl IntoIterator<Item = SparsePoly>) -> SparsePoly {
    polys
        .into_iter()
        .reduce(|a, b| a.add(&b).expect("same nvars"))
        .expect("nonempty")
}

fn diag(entries: Vec<CycNum>) -> ProjElement {
    ProjElement::diagonal(entries).expect("nonsingular diagonal")
}

fn perm(p: &[usize]) -> ProjElement {
    ProjElement::permutation(p).expect("permutation")
}

fn rows(r: &[&[i64]]) -> ProjElement {
    ProjElement::from_ints(r).expect("nonsingular")
}

fn cubic(eq: SparsePoly) -> Result<SurfaceModel, FamilyError> {
    Ok(SurfaceModel::new(SurfaceKind::CubicP3, vec![eq])?)
}

fn fermat_equation() -> SparsePoly {
    sum((0..4).map(|i| x(4, i).pow(3)))
}

/// Construct a built-in family.
pub fn family(name: &str, params: &FamilyParams) -> Result<FamilySpec, FamilyError> {
    match name {
        "clebsch" => clebsch(),
        "fermat" => fermat(),
        "cyclic_cubic" => cyclic_cubic(params.alpha.clone().unwrap_or_else(|| c(1))),
        "diagonal_quartic" => {
            diagonal_quartic(params.a.clone().unwrap_or_else(|| (0..5).map(c).collect()))
        }
        "p2" => p2(),
        "p1xp1_quadric" => p1xp1_quadric(),
        "a4_cubic" => a4_cubic(params.abc.clone().unwrap_or_else(|| vec![c(1), c(1), c(1)])),
        other => Err(FamilyError::UnknownFamily(other.to_string())),
    }
}

fn clebsch() -> Result<FamilySpec, FamilyError> {
    // x5 = -(x1 + x2 + x3 + x4) substituted into the sum of fifth-coordinate cubes.
    let s = sum((0..4).map(|i| x(4, i)));
    let eq = fermat_equation().sub(&s.pow(3))?;
    FamilySpec::new(
        "clebsch",
        IndexMap::new(),
        cubic(eq)?,
        vec![
            ("t12", perm(&[1, 0, 2, 3])),
            ("t23", perm(&[0, 2, 1, 3])),
            ("t34", perm(&[0, 1, 3, 2])),
            ("t45", rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[-1, -1, -1, -1]])),
        ],
        vec![
            ("S5", vec!["t12", "t23", "t34", "t45"]),
            ("A5", vec!["t12*t23", "t23*t34", "t34*t45"]),
            ("C5", vec!["t12*t23*t34*t45"]),
        ],
    )
}

fn fermat() -> Result<FamilySpec, FamilyError> {
    FamilySpec::new(
        "fermat",
        IndexMap::new(),
        cubic(fermat_equation())?,
        vec![
            ("d1", diag(vec![eps(1), c(1), c(1), c(1)])),
            ("d2", diag(vec![c(1), eps(1), c(1), c(1)])),
            ("d3", diag(vec![c(1), c(1), eps(1), c(1)])),
            ("s12", perm(&[1, 0, 2, 3])),
            ("c1234", perm(&[1, 2, 3, 0])),
        ],
        vec![
            ("full", vec!["d1", "d2", "d3", "s12", "c1234"]),
            ("C33", vec!["d1", "d2", "d3"]),
            ("S4", vec!["s12", "c1234"]),
            ("A4_lift", vec!["s12*c1234", "c1234^2"]),
            ("typeI", vec!["d1^2*d2^2*d3^2", "d3"]),
            ("typeII", vec!["d1*d2*d3", "d2*d3^2"]),
            ("typeIII", vec!["d1*d2^2", "d1*d2*d3^2"]),
        ],
    )
}

fn cyclic_cubic(alpha: CycNum) -> Result<FamilySpec, FamilyError> {
    if (&(&alpha * &alpha) * &alpha) == c(-27) {
        return Err(FamilyError::BadParameters(format!(
            "alpha = {alpha} gives a singular cubic (alpha^3 = -27)"
        )));
    }
    let xyz = x(4, 0).mul(&x(4, 1))?.mul(&x(4, 2))?;
    let eq = fermat_equation().add(&xyz.scale(&alpha))?;
    let mut parameters = IndexMap::new();
    parameters.insert("alpha".to_string(), vec![alpha]);
    FamilySpec::new(
        "cyclic_cubic",
        parameters,
        cubic(eq)?,
        vec![
            ("h", rows(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 0, 0, 0], &[0, 0, 0, 1]])),
            ("g", diag(vec![c(1), eps(1), eps(2), c(1)])),
            ("z", diag(vec![c(1), c(1), c(1), eps(1)])),
            ("s12", perm(&[1, 0, 2, 3])),
        ],
        vec![
            ("H33", vec!["h", "g"]),
            ("H33_C2", vec!["h", "g", "s12"]),
            ("typeII", vec!["z", "h^-1"]),
            ("obstructionD", vec!["z", "h^-1"]),
        ],
    )
}

fn diagonal_quartic(a: Vec<CycNum>) -> Result<FamilySpec, FamilyError> {
    if a.len() != 5 {
        return Err(FamilyError::BadParameters(format!("need 5 values of a, got {}", a.len())));
    }
    for i in 0..5 {
        for j in i + 1..5 {
            if a[i] == a[j] {
                return Err(FamilyError::BadParameters(format!(
                    "a{} = a{} = {}; the a_i must be distinct",
                    i + 1,
                    j + 1,
                    a[i]
                )));
            }
        }
    }
    let q1 = sum((0..5).map(|i| x(5, i).pow(2)));
    let q2 = sum((0..5).map(|i| x(5, i).pow(2).scale(&a[i])));
    let surface = SurfaceModel::new(SurfaceKind::QuadricPairP4, vec![q1, q2])?;
    let flip = |j: usize| {
        let mut d = vec![c(1); 5];
        d[0] = c(-1);
        d[j] = c(-1);
        diag(d)
    };
    let mut parameters = IndexMap::new();
    parameters.insert("a".to_string(), a);
    FamilySpec::new(
        "diagonal_quartic",
        parameters,
        surface,
        vec![("i12", flip(1)), ("i13", flip(2)), ("i14", flip(3)), ("i15", flip(4))],
        vec![
            ("N", vec!["i12", "i13", "i14", "i15"]),
            ("iota45", vec!["i12*i13*i15", "i12*i13*i14"]),
            ("typeI", vec!["i12*i13*i15", "i12*i13*i14"]),
            ("obstructionC", vec!["i12*i13*i14", "i12"]),
            ("typeII", vec!["i12*i13*i14", "i12"]),
            ("typeIII", vec!["i12", "i13"]),
        ],
    )
}

fn p2() -> Result<FamilySpec, FamilyError> {
    FamilySpec::new(
        "p2",
        IndexMap::new(),
        SurfaceModel::plane(),
        vec![
            ("g1", rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]])),
            ("g2", diag(vec![c(1), eps(1), eps(2)])),
        ],
        vec![("obstructionB", vec!["g1", "g2"])],
    )
}

fn p1xp1_quadric() -> Result<FamilySpec, FamilyError> {
    // Segre coordinates z1 = x1 y1, z2 = x1 y2, z3 = x2 y1, z4 = x2 y2.
    let eq = x(4, 0).mul(&x(4, 3))?.sub(&x(4, 1).mul(&x(4, 2))?)?;
    FamilySpec::new(
        "p1xp1_quadric",
        IndexMap::new(),
        SurfaceModel::new(SurfaceKind::QuadricP3, vec![eq])?,
        vec![
            ("g1", perm(&[2, 3, 0, 1])),
            ("g2", diag(vec![c(1), c(1), c(-1), c(-1)])),
        ],
        vec![("obstructionA", vec!["g1", "g2"])],
    )
}

fn a4_cubic(abc: Vec<CycNum>) -> Result<FamilySpec, FamilyError> {
    let [a, b, cc] = <[CycNum; 3]>::try_from(abc)
        .map_err(|v| FamilyError::BadParameters(format!("need 3 values (a, b, c), got {}", v.len())))?;
    // Singular exactly when a*b*c = 0 or a*c^2 + 4*b^3 = 0.
    let disc = &(&a * &(&cc * &cc)) + &(&c(4) * &(&b * &(&b * &b)));
    if a.is_zero() || b.is_zero() || cc.is_zero() || disc.is_zero() {
        return Err(FamilyError::BadParameters(
            "a4_cubic is singular when a*b*c = 0 or a*c^2 + 4*b^3 = 0".into(),
        ));
    }
    let q = sum((0..3).map(|i| x(4, i).pow(2)));
    let eq = sum([
        x(4, 3).pow(3).scale(&a),
        x(4, 3).mul(&q)?.scale(&b),
        x(4, 0).mul(&x(4, 1))?.mul(&x(4, 2))?.scale(&cc),
    ]);
    let mut parameters = IndexMap::new();
    parameters.insert("abc".to_string(), vec![a, b, cc]);
    FamilySpec::new(
        "a4_cubic",
        parameters,
        cubic(eq)?,
        vec![
            ("g", diag(vec![c(-1), c(-1), c(1), c(1)])),
            ("h", rows(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 0, 0, 0], &[0, 0, 0, 1]])),
        ],
        vec![("A4", vec!["g", "h"])],
    )
}

/// The surface and preset of one of the four obstruction examples.
pub fn obstruction_example(letter: char) -> Result<(FamilySpec, &'static str), FamilyError> {
    let defaults = FamilyParams::default();
    match letter.to_ascii_uppercase() {
        'A' => Ok((family("p1xp1_quadric", &defaults)?, "obstructionA")),
        'B' => Ok((family("p2", &defaults)?, "obstructionB")),
        'C' => Ok((family("diagonal_quartic", &defaults)?, "obstructionC")),
        'D' => Ok((family("cyclic_cubic", &defaults)?, "obstructionD")),
        other => Err(FamilyError::UnknownFamily(format!("obstruction {other}"))),
    }
}

impl From<LinalgError> for FamilyError {
    fn from(e: LinalgError) -> Self {
        FamilyError::Geometry(GeometryError::Linalg(e))
    }
}
