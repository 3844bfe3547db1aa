//! Surface models, polynomial actions and intersections with linear subspaces.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cyclo::{lcm, CycNum};
use crate::groups::{linear_closure, GroupError, ProjElement, ProjGroup, DEFAULT_CAP};
use crate::linalg::{squarefree_degree, form_gcd, BinaryForm, LinalgError, LinearSubspace, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid surface model: {0}")]
    InvalidModel(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("operation needs a cubic surface")]
    NotACubic,
    #[error("point {0} is not on the surface")]
    NotOnSurface(String),
    #[error("the two points coincide")]
    CoincidentPoints,
    #[error("the line through the two points lies on the surface")]
    LineOnSurface,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn mismatch(expected: usize, got: usize) -> GeometryError {
    GeometryError::DimensionMismatch { expected, got }
}

/// A homogeneous polynomial with cyclotomic coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, CycNum>,
}

impl SparsePoly {
    pub fn new(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, CycNum)>,
    ) -> Result<Self, GeometryError> {
        let mut map: BTreeMap<Vec<u32>, CycNum> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(mismatch(nvars, exps.len()));
            }
            let entry = map.entry(exps).or_insert_with(|| CycNum::from_int(0));
            *entry = &*entry + &c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut degrees = map.keys().map(|e| e.iter().sum::<u32>());
        if let Some(d) = degrees.next() {
            if degrees.any(|e| e != d) {
                return Err(GeometryError::NotHomogeneous);
            }
        }
        Ok(Self { nvars, terms: map })
    }

    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CycNum) -> Self {
        Self::new(nvars, [(vec![0; nvars], c)]).expect("constant")
    }

    pub fn monomial(exps: Vec<u32>, c: CycNum) -> Self {
        let n = exps.len();
        Self::new(n, [(exps, c)]).expect("single term")
    }

    /// The coordinate `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, CycNum::from_int(1))
    }

    pub fn linear_form(coeffs: &[CycNum]) -> Self {
        let n = coeffs.len();
        let terms = coeffs.iter().enumerate().map(|(i, c)| {
            let mut e = vec![0; n];
            e[i] = 1;
            (e, c.clone())
        });
        Self::new(n, terms).expect("linear")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, CycNum> {
        &self.terms
    }

    pub fn coeff(&self, exps: &[u32]) -> CycNum {
        self.terms.get(exps).cloned().unwrap_or_else(|| CycNum::from_int(0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|e| e.iter().sum())
    }

    pub fn order(&self) -> u32 {
        self.terms.values().fold(1, |acc, c| lcm(acc, c.order()))
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly, GeometryError> {
        if self.nvars != other.nvars {
            return Err(mismatch(self.nvars, other.nvars));
        }
        let terms = self.terms.iter().chain(other.terms.iter());
        SparsePoly::new(self.nvars, terms.map(|(e, c)| (e.clone(), c.clone())))
    }

    pub fn sub(&self, other: &SparsePoly) -> Result<SparsePoly, GeometryError> {
        self.add(&other.scale(&CycNum::from_int(-1)))
    }

    pub fn scale(&self, c: &CycNum) -> SparsePoly {
        let terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c));
        SparsePoly::new(self.nvars, terms).expect("same shape")
    }

    pub fn mul(&self, other: &SparsePoly) -> Result<SparsePoly, GeometryError> {
        if self.nvars != other.nvars {
            return Err(mismatch(self.nvars, other.nvars));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                terms.push((e, ca * cb));
            }
        }
        SparsePoly::new(self.nvars, terms)
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut acc = SparsePoly::constant(self.nvars, CycNum::from_int(1));
        for _ in 0..k {
            acc = acc.mul(self).expect("same shape");
        }
        acc
    }

    pub fn eval(&self, point: &[CycNum]) -> Result<CycNum, GeometryError> {
        if point.len() != self.nvars {
            return Err(mismatch(self.nvars, point.len()));
        }
        let mut total = CycNum::from_int(0);
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term = &term * x;
                }
            }
            total = &total + &term;
        }
        Ok(total)
    }

    /// Replace `x_i` by `forms[i]`, all forms sharing one variable count.
    pub fn substitute(&self, forms: &[SparsePoly]) -> Result<SparsePoly, GeometryError> {
        if forms.len() != self.nvars {
            return Err(mismatch(self.nvars, forms.len()));
        }
        let target = forms.first().map_or(0, |f| f.nvars);
        if forms.iter().any(|f| f.nvars != target) {
            return Err(mismatch(target, forms.iter().map(|f| f.nvars).max().unwrap_or(0)));
        }
        let max_deg = self.degree().unwrap_or(0) as usize;
        let powers: Vec<Vec<SparsePoly>> = forms
            .iter()
            .map(|f| {
                let mut list = vec![SparsePoly::constant(target, CycNum::from_int(1))];
                for k in 0..max_deg {
                    let next = list[k].mul(f).expect("same shape");
                    list.push(next);
                }
                list
            })
            .collect();
        let mut out = SparsePoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = SparsePoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&powers[i][k as usize])?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// View a polynomial in two variables as a binary form of the given degree.
    pub fn to_binary_form(&self, degree: usize) -> Result<BinaryForm, GeometryError> {
        if self.nvars != 2 {
            return Err(mismatch(2, self.nvars));
        }
        if self.is_zero() {
            return Ok(BinaryForm::zero(degree));
        }
        let mut coeffs = vec![CycNum::from_int(0); degree + 1];
        for (e, c) in &self.terms {
            if (e[0] + e[1]) as usize != degree {
                return Err(GeometryError::NotHomogeneous);
            }
            coeffs[e[1] as usize] = c.clone();
        }
        Ok(BinaryForm::new(coeffs))
    }
}

/// Exponent vectors of all monomials of a degree, `x_1^d` first.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    if nvars == 1 {
        return vec![vec![degree]];
    }
    let mut out = Vec::new();
    for k in (0..=degree).rev() {
        for mut rest in monomials(nvars - 1, degree - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                .collect();
            let mono = mono.join("*");
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c.is_one(), mono.is_empty()) {
                (true, false) => write!(f, "{mono}")?,
                (_, true) => write!(f, "{c}")?,
                (false, false) if c.is_rational() => write!(f, "{c}*{mono}")?,
                (false, false) => write!(f, "({c})*{mono}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: Vec<u32>,
    coeff: CycNum,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for SparsePoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    exps: e.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        SparsePoly::new(repr.nvars, repr.terms.into_iter().map(|t| (t.exps, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}

/// The four anticanonical models handled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurfaceKind {
    P2,
    QuadricP3,
    CubicP3,
    QuadricPairP4,
}

impl SurfaceKind {
    pub fn ambient_dim(self) -> usize {
        match self {
            SurfaceKind::P2 => 2,
            SurfaceKind::QuadricP3 | SurfaceKind::CubicP3 => 3,
            SurfaceKind::QuadricPairP4 => 4,
        }
    }

    fn equation_degrees(self) -> &'static [u32] {
        match self {
            SurfaceKind::P2 => &[],
            SurfaceKind::QuadricP3 => &[2],
            SurfaceKind::CubicP3 => &[3],
            SurfaceKind::QuadricPairP4 => &[2, 2],
        }
    }

    /// Anticanonical degree of the del Pezzo surface.
    pub fn del_pezzo_degree(self) -> u32 {
        match self {
            SurfaceKind::P2 => 9,
            SurfaceKind::QuadricP3 => 8,
            SurfaceKind::CubicP3 => 3,
            SurfaceKind::QuadricPairP4 => 4,
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A projective surface given by its equations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceModel {
    kind: SurfaceKind,
    equations: Vec<SparsePoly>,
}

impl SurfaceModel {
    pub fn new(kind: SurfaceKind, equations: Vec<SparsePoly>) -> Result<Self, GeometryError> {
        let degrees = kind.equation_degrees();
        if equations.len() != degrees.len() {
            return Err(GeometryError::InvalidModel(format!(
                "{kind} needs {} equations, got {}",
                degrees.len(),
                equations.len()
            )));
        }
        let nvars = kind.ambient_dim() + 1;
        for (eq, &d) in equations.iter().zip(degrees) {
            if eq.nvars() != nvars {
                return Err(mismatch(nvars, eq.nvars()));
            }
            match eq.degree() {
                None => return Err(GeometryError::InvalidModel("zero equation".into())),
                Some(e) if e != d => {
                    return Err(GeometryError::InvalidModel(format!("equation of degree {e}, expected {d}")))
                }
                _ => {}
            }
        }
        if kind == SurfaceKind::QuadricPairP4 {
            let m = coefficient_matrix(&equations)?;
            if m.rank() < 2 {
                return Err(GeometryError::InvalidModel("the two quadrics are proportional".into()));
            }
        }
        Ok(Self { kind, equations })
    }

    pub fn plane() -> Self {
        Self {
            kind: SurfaceKind::P2,
            equations: vec![],
        }
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn ambient_dim(&self) -> usize {
        self.kind.ambient_dim()
    }

    pub fn nvars(&self) -> usize {
        self.ambient_dim() + 1
    }

    pub fn equations(&self) -> &[SparsePoly] {
        &self.equations
    }

    pub fn order(&self) -> u32 {
        self.equations.iter().fold(1, |acc, e| lcm(acc, e.order()))
    }
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in P^{}", self.kind, self.ambient_dim())?;
        for eq in &self.equations {
            write!(f, "\n  {eq} = 0")?;
        }
        Ok(())
    }
}

/// Rows are coefficient vectors over the union of monomials.
fn coefficient_matrix(polys: &[SparsePoly]) -> Result<Matrix, GeometryError> {
    let mut monos: Vec<&Vec<u32>> = polys.iter().flat_map(|p| p.terms.keys()).collect();
    monos.sort();
    monos.dedup();
    let rows = polys
        .iter()
        .map(|p| monos.iter().map(|m| p.coeff(m)).collect())
        .collect();
    Ok(Matrix::from_rows(rows)?)
}

/// A point of projective space, scaled so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    coords: Vec<CycNum>,
}

impl ProjPoint {
    pub fn new(coords: Vec<CycNum>) -> Result<Self, GeometryError> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(GeometryError::ZeroPoint)?
            .inverse()
            .expect("nonzero");
        Ok(Self {
            coords: coords.iter().map(|c| c * &lead).collect(),
        })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, GeometryError> {
        Self::new(coords.iter().map(|&c| CycNum::from_int(c)).collect())
    }

    pub fn coords(&self) -> &[CycNum] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// Image under a group element.
    pub fn apply(&self, g: &ProjElement) -> Result<ProjPoint, GeometryError> {
        if g.n() != self.n() {
            return Err(mismatch(g.n(), self.n()));
        }
        ProjPoint::new(g.lift().apply(&self.coords)?)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// `f ∘ g⁻¹`, computed with the lift of `g`.
pub fn act_on_poly(g: &ProjElement, f: &SparsePoly) -> Result<SparsePoly, GeometryError> {
    act_with_matrix(g.lift(), f)
}

fn act_with_matrix(m: &Matrix, f: &SparsePoly) -> Result<SparsePoly, GeometryError> {
    if m.rows() != f.nvars() {
        return Err(mismatch(f.nvars(), m.rows()));
    }
    let inv = m.inverse()?;
    let forms: Vec<SparsePoly> = (0..inv.rows()).map(|i| SparsePoly::linear_form(inv.row(i))).collect();
    f.substitute(&forms)
}

pub fn preserves_surface(g: &ProjElement, x: &SurfaceModel) -> Result<bool, GeometryError> {
    if g.n() != x.nvars() {
        return Err(mismatch(x.nvars(), g.n()));
    }
    if x.equations.is_empty() {
        return Ok(true);
    }
    let moved = x
        .equations
        .iter()
        .map(|f| act_on_poly(g, f))
        .collect::<Result<Vec<_>, _>>()?;
    let mut both = x.equations.clone();
    both.extend(moved.iter().cloned());
    let r_orig = coefficient_matrix(&x.equations)?.rank();
    let r_moved = coefficient_matrix(&moved)?.rank();
    let r_both = coefficient_matrix(&both)?.rank();
    Ok(r_orig == r_both && r_moved == r_both)
}

pub fn point_on_surface(p: &ProjPoint, x: &SurfaceModel) -> Result<bool, GeometryError> {
    if p.n() != x.nvars() {
        return Err(mismatch(x.nvars(), p.n()));
    }
    for eq in &x.equations {
        if !eq.eval(&p.coords)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pull the equations back along the echelon basis of `l`; the result has `dim l` variables.
pub fn restrict_to_subspace(x: &SurfaceModel, l: &LinearSubspace) -> Result<Vec<SparsePoly>, GeometryError> {
    if l.ambient_dim() != x.nvars() {
        return Err(mismatch(x.nvars(), l.ambient_dim()));
    }
    if l.dim() == 0 {
        return Err(mismatch(1, 0));
    }
    let basis = l.basis();
    let k = l.dim();
    let forms: Vec<SparsePoly> = (0..x.nvars())
        .map(|i| {
            let coeffs: Vec<CycNum> = (0..k).map(|j| basis.get(j, i).clone()).collect();
            SparsePoly::linear_form(&coeffs)
        })
        .collect();
    x.equations.iter().map(|f| f.substitute(&forms)).collect()
}

/// Restriction to a projective line, as binary forms in `(s, t)`.
pub fn restrict_to_line(x: &SurfaceModel, l: &LinearSubspace) -> Result<Vec<BinaryForm>, GeometryError> {
    if l.dim() != 2 {
        return Err(mismatch(2, l.dim()));
    }
    let polys = restrict_to_subspace(x, l)?;
    polys
        .iter()
        .zip(x.kind.equation_degrees())
        .map(|(p, &d)| p.to_binary_form(d as usize))
        .collect()
}

/// Number of distinct points in an intersection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointCount {
    Finite(usize),
    Infinite,
    AtLeastOne,
}

impl fmt::Display for PointCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointCount::Finite(k) => write!(f, "{k}"),
            PointCount::Infinite => write!(f, "infinite"),
            PointCount::AtLeastOne => write!(f, "at_least_one"),
        }
    }
}

impl Serialize for PointCount {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PointCount::Finite(k) => s.serialize_u64(*k as u64),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Meet {
    pub nonempty: bool,
    pub count: PointCount,
}

impl Meet {
    fn finite(k: usize) -> Meet {
        Meet {
            nonempty: k > 0,
            count: PointCount::Finite(k),
        }
    }

    fn infinite() -> Meet {
        Meet {
            nonempty: true,
            count: PointCount::Infinite,
        }
    }
}

/// Whether the projectivization of `l` meets `x`, with the number of points.
pub fn meets_surface(l: &LinearSubspace, x: &SurfaceModel) -> Result<Meet, GeometryError> {
    if l.ambient_dim() != x.nvars() {
        return Err(mismatch(x.nvars(), l.ambient_dim()));
    }
    match l.dim() {
        0 => Ok(Meet::finite(0)),
        1 => {
            let p = ProjPoint::new(l.basis().row(0).to_vec())?;
            Ok(Meet::finite(usize::from(point_on_surface(&p, x)?)))
        }
        2 => {
            let forms = restrict_to_line(x, l)?;
            let nonzero: Vec<&BinaryForm> = forms.iter().filter(|f| !f.is_zero()).collect();
            match nonzero.as_slice() {
                [] => Ok(Meet::infinite()),
                [f] => Ok(Meet::finite(squarefree_degree(f)?)),
                [f, g] => Ok(Meet::finite(squarefree_degree(&form_gcd(f, g))?)),
                _ => unreachable!("at most two equations"),
            }
        }
        3 if x.kind == SurfaceKind::QuadricPairP4 => {
            let conics = restrict_to_subspace(x, l)?;
            let count = conic_pair_count(&conics[0], &conics[1])?;
            Ok(Meet { nonempty: true, count })
        }
        _ => Ok(Meet::infinite()),
    }
}

/// Common zeros of two plane conics (polynomials in three variables).
///
/// Projects from points of an auxiliary conic and takes the largest number of
/// distinct roots of the resultant; 13 admissible centers guarantee one that
/// separates all of at most four common points.
pub fn conic_pair_count(q1: &SparsePoly, q2: &SparsePoly) -> Result<PointCount, GeometryError> {
    if q1.is_zero() || q2.is_zero() {
        return Ok(PointCount::Infinite);
    }
    let rank = coefficient_matrix(&[q1.clone(), q2.clone()])?.rank();
    if rank < 2 {
        return Ok(PointCount::Infinite);
    }
    let families: [fn(i64) -> [i64; 3]; 2] = [|t| [1, t, t * t], |t| [1, t, t * t + t + 1]];
    for center in families {
        let mut best = 0;
        let mut used = 0;
        for t in 0..24 {
            let c: Vec<CycNum> = center(t).iter().map(|&v| CycNum::from_int(v)).collect();
            if q1.eval(&c)?.is_zero() || q2.eval(&c)?.is_zero() {
                continue;
            }
            // u = z*c + x*e1 + y*e2 in variables (z, x, y).
            let forms = [
                SparsePoly::linear_form(&[c[0].clone(), CycNum::from_int(0), CycNum::from_int(0)]),
                SparsePoly::linear_form(&[c[1].clone(), CycNum::from_int(1), CycNum::from_int(0)]),
                SparsePoly::linear_form(&[c[2].clone(), CycNum::from_int(0), CycNum::from_int(1)]),
            ];
            let p = z_coefficients(&q1.substitute(&forms)?);
            let q = z_coefficients(&q2.substitute(&forms)?);
            let res = quadratic_resultant(&p, &q);
            if res.is_zero() {
                return Ok(PointCount::Infinite);
            }
            best = best.max(squarefree_degree(&res)?);
            used += 1;
            if used == 13 || best == 4 {
                return Ok(PointCount::Finite(best));
            }
        }
    }
    Ok(PointCount::AtLeastOne)
}

// Coefficients of z^2, z, 1 as binary forms in (x, y) of degrees 0, 1, 2.
fn z_coefficients(f: &SparsePoly) -> [BinaryForm; 3] {
    let mut out = [BinaryForm::zero(0), BinaryForm::zero(1), BinaryForm::zero(2)];
    for (i, slot) in out.iter_mut().enumerate() {
        let zdeg = 2 - i as u32;
        let mut coeffs = vec![CycNum::from_int(0); i + 1];
        for (e, c) in f.terms() {
            if e[0] == zdeg {
                coeffs[e[2] as usize] = c.clone();
            }
        }
        *slot = BinaryForm::new(coeffs);
    }
    out
}

fn quadratic_resultant(p: &[BinaryForm; 3], q: &[BinaryForm; 3]) -> BinaryForm {
    let [a2, a1, a0] = p;
    let [c2, c1, c0] = q;
    let u = a2.mul(c0).sub(&c2.mul(a0));
    let v = a2.mul(c1).sub(&c2.mul(a1));
    let w = a1.mul(c0).sub(&a0.mul(c1));
    u.mul(&u).sub(&v.mul(&w))
}

/// Character used to select semi-invariants; evaluated on matrices of the lifted group.
pub type Character<'a> = &'a dyn Fn(&Matrix) -> CycNum;

/// Basis of the forms of a degree with `ĝ·f = χ(ĝ) f` for all lifts `ĝ`.
pub fn reynolds_invariants(
    g: &ProjGroup,
    degree: u32,
    character: Option<Character<'_>>,
) -> Result<Vec<SparsePoly>, GeometryError> {
    let n = g.n();
    let lifts: Vec<Matrix> = g.generators().iter().map(|e| e.lift().clone()).collect();
    let closure = if lifts.is_empty() {
        vec![Matrix::identity(n, 1)]
    } else {
        linear_closure(&lifts, DEFAULT_CAP)?
    };
    let monos = monomials(n, degree);
    let index: BTreeMap<&Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let k = monos.len();
    let mut sum = vec![vec![CycNum::from_int(0); k]; k];
    for m in &closure {
        let weight = match character {
            Some(chi) => chi(m).inverse().map_err(LinalgError::from)?,
            None => CycNum::from_int(1),
        };
        for (j, mono) in monos.iter().enumerate() {
            let image = act_with_matrix(m, &SparsePoly::monomial(mono.clone(), weight.clone()))?;
            for (e, c) in image.terms() {
                let i = index[e];
                sum[j][i] = &sum[j][i] + c;
            }
        }
    }
    // Row j of `sum` is the image of monomial j, so the row space is the invariant space.
    let image = LinearSubspace::from_spanning(k, &Matrix::from_rows(sum)?);
    Ok((0..image.dim())
        .map(|r| {
            let row = image.basis().row(r);
            SparsePoly::new(n, monos.iter().cloned().zip(row.iter().cloned())).expect("homogeneous")
        })
        .collect())
}

/// How the line through two points meets the cubic at the returned point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Contact {
    Transversal,
    /// The residual root coincides with one of the input points.
    Tangent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThirdPoint {
    pub point: ProjPoint,
    pub contact: Contact,
}

/// The residual intersection of the line `pq` with a cubic surface.
pub fn third_point(x: &SurfaceModel, p: &ProjPoint, q: &ProjPoint) -> Result<ThirdPoint, GeometryError> {
    if x.kind != SurfaceKind::CubicP3 {
        return Err(GeometryError::NotACubic);
    }
    for pt in [p, q] {
        if pt.n() != x.nvars() {
            return Err(mismatch(x.nvars(), pt.n()));
        }
        if !point_on_surface(pt, x)? {
            return Err(GeometryError::NotOnSurface(pt.to_string()));
        }
    }
    if p == q {
        return Err(GeometryError::CoincidentPoints);
    }
    let forms: Vec<SparsePoly> = p
        .coords
        .iter()
        .zip(&q.coords)
        .map(|(a, b)| SparsePoly::linear_form(&[a.clone(), b.clone()]))
        .collect();
    let cubic = x.equations[0].substitute(&forms)?.to_binary_form(3)?;
    // s t (alpha s + beta t), root (s : t) = (beta : -alpha).
    let alpha = &cubic.coeffs()[1];
    let beta = &cubic.coeffs()[2];
    if alpha.is_zero() && beta.is_zero() {
        return Err(GeometryError::LineOnSurface);
    }
    let coords: Vec<CycNum> = p
        .coords
        .iter()
        .zip(&q.coords)
        .map(|(a, b)| &(beta * a) - &(alpha * b))
        .collect();
    let contact = if alpha.is_zero() || beta.is_zero() {
        Contact::Tangent
    } else {
        Contact::Transversal
    };
    Ok(ThirdPoint {
        point: ProjPoint::new(coords)?,
        contact,
    })
}
