//! Classification of elementary abelian subgroups, obstruction labels and the
//! unirationality decision.
//!
//! A del Pezzo surface of degree at least 3 is `G`-unirational exactly when
//! every abelian subgroup of `G` has a fixed point on it. Since fixed points of
//! a group are fixed by its subgroups, it suffices to check the maximal abelian
//! subgroups, one per conjugacy class.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::families::{family, FamilyError, FamilyParams};
use crate::fixedlocus::{eigen_decompose, fixed_points_unchecked, FixedLocusError};
use crate::geometry::{preserves_surface, GeometryError, SurfaceKind, SurfaceModel};
use crate::groups::{
    generate, maximal_abelian_subgroup_sets, projective_order, subgroup_sets_isomorphic_to, GroupError, GroupTag,
    ProjElement, ProjGroup, DEFAULT_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("element is not an involution")]
    NotAnInvolution,
    #[error("unexpected eigenspace profile {0:?}")]
    UnexpectedProfile(Vec<usize>),
    #[error("element has projective order {0}, expected 3")]
    WrongOrder(usize),
    #[error("unexpected class counts {0:?}")]
    UnexpectedCounts(Vec<usize>),
    #[error("group is not isomorphic to {0}")]
    WrongGroup(String),
    #[error("group has a fixed point on the surface")]
    HasFixedPoint,
    #[error("generator {0} does not preserve the surface")]
    ActionDoesNotPreserveSurface(usize),
    #[error("generator {0} acts on the wrong number of coordinates")]
    DimensionMismatch(usize),
    #[error("unknown table {0:?}")]
    UnknownTable(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    FixedLocus(#[from] FixedLocusError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Conjugacy class of an order-3 element of `PGL_4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CarterClass {
    ThreeA2,
    A2,
    TwoA2,
}

impl fmt::Display for CarterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CarterClass::ThreeA2 => "3A2",
            CarterClass::A2 => "A2",
            CarterClass::TwoA2 => "2A2",
        })
    }
}

/// Sign-change involutions on the quartic: four or two coordinates flipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum InvolutionKind {
    FirstKind,
    SecondKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SubgroupType {
    TypeI,
    TypeII,
    TypeIII,
}

impl fmt::Display for SubgroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubgroupType::TypeI => "I",
            SubgroupType::TypeII => "II",
            SubgroupType::TypeIII => "III",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Obstruction {
    A,
    B,
    C,
    D,
    #[serde(rename = "unlabeled")]
    Unlabeled,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Obstruction::A => "A",
            Obstruction::B => "B",
            Obstruction::C => "C",
            Obstruction::D => "D",
            Obstruction::Unlabeled => "unlabeled",
        })
    }
}

pub fn involution_kind(g: &ProjElement) -> Result<InvolutionKind, ClassifyError> {
    let eig = eigen_decompose(g)?;
    if eig.normalized_lift_order != 2 {
        return Err(ClassifyError::NotAnInvolution);
    }
    match eig.profile().as_slice() {
        [4, 1] => Ok(InvolutionKind::FirstKind),
        [3, 2] => Ok(InvolutionKind::SecondKind),
        other => Err(ClassifyError::UnexpectedProfile(other.to_vec())),
    }
}

pub fn carter_class(g: &ProjElement) -> Result<CarterClass, ClassifyError> {
    let eig = eigen_decompose(g)?;
    if eig.normalized_lift_order != 3 {
        return Err(ClassifyError::WrongOrder(eig.normalized_lift_order));
    }
    match eig.profile().as_slice() {
        [3, 1] => Ok(CarterClass::ThreeA2),
        [2, 2] => Ok(CarterClass::A2),
        [2, 1, 1] => Ok(CarterClass::TwoA2),
        other => Err(ClassifyError::UnexpectedProfile(other.to_vec())),
    }
}

fn nontrivial(a: &ProjGroup) -> impl Iterator<Item = &ProjElement> {
    let id = a.identity_index();
    a.elements()
        .iter()
        .enumerate()
        .filter(move |(i, _)| *i != id)
        .map(|(_, e)| e)
}

/// Type of a `C2^2` of sign-change involutions, with its (first, second) kind counts.
pub fn c22_type(a: &ProjGroup) -> Result<(SubgroupType, [usize; 2]), ClassifyError> {
    if a.tag() != GroupTag::ElementaryAbelian(2, 2) {
        return Err(ClassifyError::WrongGroup("C2^2".into()));
    }
    let mut counts = [0usize; 2];
    for g in nontrivial(a) {
        match involution_kind(g)? {
            InvolutionKind::FirstKind => counts[0] += 1,
            InvolutionKind::SecondKind => counts[1] += 1,
        }
    }
    let t = match counts {
        [2, 1] => SubgroupType::TypeI,
        [1, 2] => SubgroupType::TypeII,
        [0, 3] => SubgroupType::TypeIII,
        _ => return Err(ClassifyError::UnexpectedCounts(counts.to_vec())),
    };
    Ok((t, counts))
}

/// Type of a `C3^2` in `PGL_4`, with its (3A2, 2A2, A2) counts.
pub fn c32_type(a: &ProjGroup) -> Result<(SubgroupType, [usize; 3]), ClassifyError> {
    if a.tag() != GroupTag::ElementaryAbelian(3, 2) || a.n() != 4 {
        return Err(ClassifyError::WrongGroup("C3^2 in PGL_4".into()));
    }
    let mut counts = [0usize; 3];
    for g in nontrivial(a) {
        match carter_class(g)? {
            CarterClass::ThreeA2 => counts[0] += 1,
            CarterClass::TwoA2 => counts[1] += 1,
            CarterClass::A2 => counts[2] += 1,
        }
    }
    let t = match counts {
        [4, 2, 2] => SubgroupType::TypeI,
        [2, 6, 0] => SubgroupType::TypeII,
        [0, 4, 4] => SubgroupType::TypeIII,
        _ => return Err(ClassifyError::UnexpectedCounts(counts.to_vec())),
    };
    Ok((t, counts))
}

/// Label an abelian group without fixed points on `x`.
pub fn label_obstruction(a: &ProjGroup, x: &SurfaceModel) -> Result<Obstruction, ClassifyError> {
    if fixed_points_unchecked(a, x)?.has_fixed_point {
        return Err(ClassifyError::HasFixedPoint);
    }
    label_fixed_point_free(a, x)
}

fn label_fixed_point_free(a: &ProjGroup, x: &SurfaceModel) -> Result<Obstruction, ClassifyError> {
    let c22 = GroupTag::ElementaryAbelian(2, 2);
    let c32 = GroupTag::ElementaryAbelian(3, 2);
    if a.n() == 5 {
        for set in subgroup_sets_isomorphic_to(a, &c22)? {
            match c22_type(&a.subgroup(&set)) {
                Ok((SubgroupType::TypeII, _)) => return Ok(Obstruction::C),
                Ok((SubgroupType::TypeIII, _)) => return Ok(Obstruction::A),
                _ => {}
            }
        }
    }
    if a.n() == 4 {
        for set in subgroup_sets_isomorphic_to(a, &c32)? {
            match c32_type(&a.subgroup(&set)) {
                Ok((SubgroupType::TypeII, _)) => return Ok(Obstruction::D),
                Ok((SubgroupType::TypeIII, _)) => return Ok(Obstruction::B),
                _ => {}
            }
        }
    }
    let tag = a.tag();
    if x.kind() == SurfaceKind::P2 && tag == c32 {
        return Ok(Obstruction::B);
    }
    if x.kind() == SurfaceKind::QuadricP3 && tag == c22 {
        return Ok(Obstruction::A);
    }
    Ok(Obstruction::Unlabeled)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckedSubgroup {
    /// Sorted element indices into the full group.
    pub subgroup: Vec<usize>,
    pub order: usize,
    pub structure: String,
    pub has_fixed_point: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub subgroup: Vec<usize>,
    pub order: usize,
    pub structure: String,
    pub obstruction: Obstruction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecisionReport {
    pub unirational: bool,
    pub group_order: usize,
    pub witnesses: Vec<Witness>,
    pub checked: Vec<CheckedSubgroup>,
}

impl DecisionReport {
    pub fn obstructions(&self) -> Vec<Obstruction> {
        let mut v: Vec<Obstruction> = self.witnesses.iter().map(|w| w.obstruction).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Check every generator acts on `x`.
pub fn validate_action(x: &SurfaceModel, gens: &[ProjElement]) -> Result<(), ClassifyError> {
    for (i, g) in gens.iter().enumerate() {
        if g.n() != x.nvars() {
            return Err(ClassifyError::DimensionMismatch(i));
        }
        if !preserves_surface(g, x)? {
            return Err(ClassifyError::ActionDoesNotPreserveSurface(i));
        }
    }
    Ok(())
}

pub fn decide(x: &SurfaceModel, gens: &[ProjElement]) -> Result<DecisionReport, ClassifyError> {
    decide_with_cap(x, gens, DEFAULT_CAP)
}

pub fn decide_with_cap(x: &SurfaceModel, gens: &[ProjElement], cap: usize) -> Result<DecisionReport, ClassifyError> {
    validate_action(x, gens)?;
    let g = if gens.is_empty() {
        ProjGroup::trivial(x.nvars())
    } else {
        generate(gens, cap)?
    };
    decide_group(x, &g)
}

/// Decision for an already generated group acting on `x`.
pub fn decide_group(x: &SurfaceModel, g: &ProjGroup) -> Result<DecisionReport, ClassifyError> {
    let reps = maximal_abelian_subgroup_sets(g);
    let verdicts: Vec<bool> = reps
        .par_iter()
        .map(|set| Ok(fixed_points_unchecked(&g.subgroup(set), x)?.has_fixed_point))
        .collect::<Result<_, ClassifyError>>()?;
    let checked: Vec<CheckedSubgroup> = reps
        .iter()
        .zip(&verdicts)
        .map(|(set, &has_fixed_point)| CheckedSubgroup {
            subgroup: set.clone(),
            order: set.len(),
            structure: g.subgroup(set).tag().to_string(),
            has_fixed_point,
        })
        .collect();
    let failing: Vec<&Vec<usize>> = reps.iter().zip(&verdicts).filter(|(_, &ok)| !ok).map(|(s, _)| s).collect();
    let minimal: Vec<Vec<Vec<usize>>> = failing
        .par_iter()
        .map(|set| minimal_failing_subgroups(g, set, x))
        .collect::<Result<_, ClassifyError>>()?;
    let mut keyed: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
    for set in minimal.into_iter().flatten() {
        keyed.insert(g.conjugacy_key(&set), ());
    }
    let keys: Vec<Vec<usize>> = keyed.into_keys().collect();
    let mut witnesses: Vec<Witness> = keys
        .par_iter()
        .map(|set| {
            let sub = g.subgroup(set);
            Ok(Witness {
                subgroup: set.clone(),
                order: set.len(),
                structure: sub.tag().to_string(),
                obstruction: label_fixed_point_free(&sub, x)?,
            })
        })
        .collect::<Result<_, ClassifyError>>()?;
    witnesses.sort_by(|a, b| (a.order, &a.subgroup).cmp(&(b.order, &b.subgroup)));
    Ok(DecisionReport {
        unirational: witnesses.is_empty(),
        group_order: g.order(),
        witnesses,
        checked,
    })
}

/// All subgroups of the abelian subgroup `set`, ordered by size.
fn abelian_subgroup_lattice(g: &ProjGroup, set: &[usize]) -> Vec<Vec<usize>> {
    let mut found: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut frontier: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![g.identity_index()], vec![])];
    found.insert(vec![g.identity_index()], vec![]);
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (h, gens) in &frontier {
            for &x in set {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                let mut ng = gens.clone();
                ng.push(x);
                let j = g.closure(&ng);
                if !found.contains_key(&j) {
                    found.insert(j.clone(), ng.clone());
                    next.push((j, ng));
                }
            }
        }
        frontier = next;
    }
    let mut all: Vec<Vec<usize>> = found.into_keys().collect();
    all.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    all
}

/// Subgroups without fixed points all of whose proper subgroups have fixed points.
fn minimal_failing_subgroups(g: &ProjGroup, set: &[usize], x: &SurfaceModel) -> Result<Vec<Vec<usize>>, ClassifyError> {
    let lattice = abelian_subgroup_lattice(g, set);
    let mut failing: Vec<Vec<usize>> = Vec::new();
    let mut minimal = Vec::new();
    for h in lattice {
        // Cyclic groups are never witnesses, but they are checked like any other.
        if failing.iter().any(|f| is_subset(f, &h)) {
            failing.push(h);
            continue;
        }
        if !fixed_points_unchecked(&g.subgroup(&h), x)?.has_fixed_point {
            minimal.push(h.clone());
            failing.push(h);
        }
    }
    Ok(minimal)
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.len() < big.len() && small.iter().all(|s| big.binary_search(s).is_ok())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub subgroup: Vec<usize>,
    pub generators: Vec<String>,
    #[serde(rename = "type")]
    pub kind: SubgroupType,
    pub counts: Vec<usize>,
    pub has_fixed_point: bool,
    pub orbit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub table: String,
    /// Names of the class counts in `TableRow::counts`.
    pub count_labels: Vec<String>,
    pub rows: Vec<TableRow>,
    pub totals: BTreeMap<SubgroupType, usize>,
    /// Sizes of the conjugacy orbits, by type.
    pub orbit_sizes: BTreeMap<SubgroupType, Vec<usize>>,
    /// Class counts observed for each type.
    pub type_counts: BTreeMap<SubgroupType, Vec<usize>>,
    /// Type I holds exactly for the rows with fixed points.
    pub cross_check: bool,
}

pub const TABLE_NAMES: [&str; 2] = ["dp4_c22", "dp3_c32"];

/// Reproduce the classification tables of `C2^2` subgroups of the quartic and
/// diagonal `C3^2` subgroups of the cubic.
pub fn reproduce_table(which: &str) -> Result<TableReport, ClassifyError> {
    let key = which.replace('-', "_");
    let (family_name, preset, ambient, tag, labels): (_, _, _, _, &[&str]) = match key.as_str() {
        "dp4_c22" => ("diagonal_quartic", "N", "N", GroupTag::ElementaryAbelian(2, 2), &["first", "second"]),
        "dp3_c32" => ("fermat", "C33", "full", GroupTag::ElementaryAbelian(3, 2), &["3A2", "2A2", "A2"]),
        _ => return Err(ClassifyError::UnknownTable(which.to_string())),
    };
    let spec = family(family_name, &FamilyParams::default())?;
    let x = &spec.surface;
    let big = spec.preset_group(ambient, DEFAULT_CAP)?;
    let base = spec.preset_group(preset, DEFAULT_CAP)?;
    let sets = subgroup_sets_isomorphic_to(&base, &tag)?;
    let mut orbit_ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let rows: Vec<TableRow> = sets
        .iter()
        .map(|set| {
            let sub = base.subgroup(set);
            let (kind, counts) = if key == "dp4_c22" {
                let (t, c) = c22_type(&sub)?;
                (t, c.to_vec())
            } else {
                let (t, c) = c32_type(&sub)?;
                (t, c.to_vec())
            };
            let has_fixed_point = fixed_points_unchecked(&sub, x)?.has_fixed_point;
            let in_big = sub.indices_in(&big).expect("subgroup of the ambient group");
            let next = orbit_ids.len();
            let orbit = *orbit_ids.entry(big.conjugacy_key(&in_big)).or_insert(next);
            Ok(TableRow {
                subgroup: set.clone(),
                generators: sub.generators().iter().map(describe).collect(),
                kind,
                counts,
                has_fixed_point,
                orbit,
            })
        })
        .collect::<Result<_, ClassifyError>>()?;
    let mut totals = BTreeMap::new();
    let mut orbit_members: BTreeMap<usize, (SubgroupType, usize)> = BTreeMap::new();
    let mut type_counts = BTreeMap::new();
    for r in &rows {
        *totals.entry(r.kind).or_insert(0) += 1;
        orbit_members.entry(r.orbit).or_insert((r.kind, 0)).1 += 1;
        type_counts.insert(r.kind, r.counts.clone());
    }
    let mut orbit_sizes: BTreeMap<SubgroupType, Vec<usize>> = BTreeMap::new();
    for (kind, size) in orbit_members.values() {
        orbit_sizes.entry(*kind).or_default().push(*size);
    }
    let cross_check = rows.iter().all(|r| (r.kind == SubgroupType::TypeI) == r.has_fixed_point)
        && rows.iter().all(|r| type_counts[&r.kind] == r.counts);
    Ok(TableReport {
        table: key,
        count_labels: labels.iter().map(|s| s.to_string()).collect(),
        rows,
        totals,
        orbit_sizes,
        type_counts,
        cross_check,
    })
}

/// Short text form of a diagonal or general element.
pub fn describe(g: &ProjElement) -> String {
    let m = g.matrix();
    let n = m.rows();
    let is_diag = (0..n).all(|i| (0..n).all(|j| i == j || m.get(i, j).is_zero()));
    if is_diag {
        let d: Vec<String> = (0..n).map(|i| m.get(i, i).to_string()).collect();
        format!("diag({})", d.join(", "))
    } else {
        m.to_string().replace('\n', " ")
    }
}

/// Projective order of an element, for reports.
pub fn element_order(g: &ProjElement) -> Result<usize, ClassifyError> {
    Ok(projective_order(g, DEFAULT_CAP)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{zeta, CycNum};
    use crate::families::obstruction_example;

    fn c(v: i64) -> CycNum {
        CycNum::from_int(v)
    }

    fn diag(v: Vec<CycNum>) -> ProjElement {
        ProjElement::diagonal(v).unwrap()
    }

    fn flips(idx: &[usize]) -> ProjElement {
        let mut d = vec![c(1); 5];
        for &i in idx {
            d[i] = c(-1);
        }
        diag(d)
    }

    #[test]
    fn involution_kinds() {
        assert_eq!(involution_kind(&flips(&[4])).unwrap(), InvolutionKind::FirstKind);
        assert_eq!(involution_kind(&flips(&[0, 1])).unwrap(), InvolutionKind::SecondKind);
        assert_eq!(involution_kind(&ProjElement::identity(5)).unwrap_err(), ClassifyError::NotAnInvolution);
    }

    #[test]
    fn carter_classes() {
        let e = |k| zeta(3, k);
        assert_eq!(carter_class(&diag(vec![c(1), c(1), c(1), e(1)])).unwrap(), CarterClass::ThreeA2);
        assert_eq!(carter_class(&diag(vec![e(1), e(2), c(1), c(1)])).unwrap(), CarterClass::TwoA2);
        assert_eq!(carter_class(&diag(vec![e(1), e(2), e(1), e(2)])).unwrap(), CarterClass::A2);
        assert_eq!(
            carter_class(&diag(vec![c(1), c(1), c(1), c(-1)])).unwrap_err(),
            ClassifyError::WrongOrder(2)
        );
    }

    #[test]
    fn c22_types() {
        let g = |a: &[&[usize]]| generate(&a.iter().map(|i| flips(i)).collect::<Vec<_>>(), DEFAULT_CAP).unwrap();
        assert_eq!(c22_type(&g(&[&[3], &[4]])).unwrap(), (SubgroupType::TypeI, [2, 1]));
        assert_eq!(c22_type(&g(&[&[4], &[0, 1]])).unwrap(), (SubgroupType::TypeII, [1, 2]));
        assert_eq!(c22_type(&g(&[&[0, 1], &[0, 2]])).unwrap(), (SubgroupType::TypeIII, [0, 3]));
    }

    #[test]
    fn c32_types() {
        let spec = family("fermat", &FamilyParams::default()).unwrap();
        let t = |p| c32_type(&spec.preset_group(p, DEFAULT_CAP).unwrap()).unwrap();
        assert_eq!(t("typeI"), (SubgroupType::TypeI, [4, 2, 2]));
        assert_eq!(t("typeII"), (SubgroupType::TypeII, [2, 6, 0]));
        assert_eq!(t("typeIII"), (SubgroupType::TypeIII, [0, 4, 4]));
    }

    #[test]
    fn obstruction_examples_are_labeled() {
        for letter in ['A', 'B', 'C', 'D'] {
            let (spec, preset) = obstruction_example(letter).unwrap();
            let g = spec.preset_group(preset, DEFAULT_CAP).unwrap();
            let label = label_obstruction(&g, &spec.surface).unwrap();
            assert_eq!(label.to_string(), letter.to_string());
        }
        let spec = family("fermat", &FamilyParams::default()).unwrap();
        let g = spec.preset_group("typeI", DEFAULT_CAP).unwrap();
        assert_eq!(label_obstruction(&g, &spec.surface).unwrap_err(), ClassifyError::HasFixedPoint);
    }

    #[test]
    fn small_decisions() {
        let (spec, preset) = obstruction_example('B').unwrap();
        let gens = spec.preset_generators(preset).unwrap();
        let report = decide(&spec.surface, &gens).unwrap();
        assert!(!report.unirational);
        assert_eq!(report.obstructions(), vec![Obstruction::B]);
        let cyclic = decide(&spec.surface, &gens[..1]).unwrap();
        assert!(cyclic.unirational);
        let trivial = decide(&spec.surface, &[]).unwrap();
        assert!(trivial.unirational);
        assert_eq!(trivial.group_order, 1);
    }

    #[test]
    fn non_preserving_generator_is_reported() {
        let spec = family("fermat", &FamilyParams::default()).unwrap();
        let bad = diag(vec![c(2), c(1), c(1), c(1)]);
        let gens = vec![spec.evaluate_word("d1").unwrap(), bad];
        assert_eq!(
            decide(&spec.surface, &gens).unwrap_err(),
            ClassifyError::ActionDoesNotPreserveSurface(1)
        );
    }
}
