//! Eigenspaces of finite-order projective transformations and fixed loci of
//! projectively abelian groups.

use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{lcm, try_zeta, CycError, CycNum};
use crate::geometry::{meets_surface, preserves_surface, GeometryError, Meet, SurfaceModel};
use crate::groups::{projective_order, GroupError, ProjElement, ProjGroup};
use crate::linalg::{LinalgError, LinearSubspace, Matrix};

// Bound on projective orders searched; far above any element of a group under the closure cap.
const ORDER_SEARCH: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixedLocusError {
    #[error("group is not projectively abelian")]
    NotAbelian,
    #[error("lift power is a scalar that is not a root of unity of the working field")]
    ScalarNotRootOfUnity,
    #[error("eigenvalues need the cyclotomic field of order {0}, above the cap")]
    CapExceeded(u32),
    #[error("generator {0} does not preserve the surface")]
    ActionDoesNotPreserveSurface(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn cap_error(e: CycError) -> FixedLocusError {
    match e {
        CycError::OrderCap { order, .. } => FixedLocusError::CapExceeded(order),
        other => FixedLocusError::Linalg(LinalgError::Cyc(other)),
    }
}

/// Eigenvalues and eigenspaces of the lift of a finite-order element.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub element: ProjElement,
    /// Least `m` with `lift^m` scalar.
    pub normalized_lift_order: usize,
    pub pairs: Vec<(CycNum, LinearSubspace)>,
}

impl EigenDecomposition {
    /// Eigenspace dimensions, largest first.
    pub fn profile(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = self.pairs.iter().map(|(_, e)| e.dim()).collect();
        dims.sort_unstable_by(|a, b| b.cmp(a));
        dims
    }
}

pub fn eigen_decompose(g: &ProjElement) -> Result<EigenDecomposition, FixedLocusError> {
    let (m, gamma) = projective_order(g, ORDER_SEARCH)?;
    let (r, u) = gamma.as_root_of_unity().ok_or(FixedLocusError::ScalarNotRootOfUnity)?;
    let lift = g.lift();
    let big = (m as u32).checked_mul(r).ok_or(FixedLocusError::CapExceeded(u32::MAX))?;
    let field = lcm(lift.order(), big);
    try_zeta(field, 1).map_err(cap_error)?;
    let lift = lift.promote(field)?;
    let n = lift.rows();
    let mut pairs = Vec::new();
    let mut total = 0;
    for i in 0..m as i64 {
        // lambda^m = zeta_r^u for lambda = zeta_{mr}^{u + r i}.
        let lambda = try_zeta(big, u as i64 + r as i64 * i).map_err(cap_error)?;
        let shifted = lift.try_sub(&Matrix::identity(n, field).scale(&lambda)?)?;
        let space = shifted.kernel();
        if !space.is_zero() {
            total += space.dim();
            pairs.push((lambda, space));
            if total == n {
                break;
            }
        }
    }
    debug_assert_eq!(total, n, "finite-order lifts are diagonalizable");
    Ok(EigenDecomposition {
        element: g.clone(),
        normalized_lift_order: m,
        pairs,
    })
}

/// Maximal linear subspaces of points fixed by a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedLocus {
    pub components: Vec<LinearSubspace>,
}

impl FixedLocus {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

pub fn fixed_locus(a: &ProjGroup) -> Result<FixedLocus, FixedLocusError> {
    if !a.is_abelian() {
        return Err(FixedLocusError::NotAbelian);
    }
    fixed_locus_of(a.n(), &a.generators())
}

/// Common fixed locus of a list of pairwise projectively commuting elements.
pub fn fixed_locus_of(n: usize, gens: &[ProjElement]) -> Result<FixedLocus, FixedLocusError> {
    let mut comps = vec![LinearSubspace::full(n, 1)];
    for g in gens {
        let eig = eigen_decompose(g)?;
        let mut next = Vec::new();
        for c in &comps {
            for (_, e) in &eig.pairs {
                let meet = c.intersect(e)?;
                if !meet.is_zero() {
                    next.push(meet);
                }
            }
        }
        comps = next;
        if comps.is_empty() {
            break;
        }
    }
    let mut maximal: Vec<LinearSubspace> = Vec::new();
    for c in &comps {
        let mut dominated = false;
        for d in &comps {
            if std::ptr::eq(c, d) {
                continue;
            }
            if d.contains(c)? && (d.dim() > c.dim() || maximal.contains(d)) {
                dominated = true;
                break;
            }
        }
        if !dominated && !maximal.contains(c) {
            maximal.push(c.clone());
        }
    }
    maximal.sort_by(|a, b| a.canonical_cmp(b));
    Ok(FixedLocus { components: maximal })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedComponent {
    pub subspace: LinearSubspace,
    pub meet: Meet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointReport {
    pub has_fixed_point: bool,
    pub components: Vec<FixedComponent>,
}

pub fn fixed_points_on_surface(a: &ProjGroup, x: &SurfaceModel) -> Result<FixedPointReport, FixedLocusError> {
    if !a.is_abelian() {
        return Err(FixedLocusError::NotAbelian);
    }
    for (i, g) in a.generators().iter().enumerate() {
        if !preserves_surface(g, x)? {
            return Err(FixedLocusError::ActionDoesNotPreserveSurface(i));
        }
    }
    fixed_points_unchecked(a, x)
}

/// As [`fixed_points_on_surface`] without re-validating the action.
pub(crate) fn fixed_points_unchecked(a: &ProjGroup, x: &SurfaceModel) -> Result<FixedPointReport, FixedLocusError> {
    let locus = fixed_locus(a)?;
    let mut components = Vec::with_capacity(locus.components.len());
    for subspace in locus.components {
        let meet = meets_surface(&subspace, x)?;
        components.push(FixedComponent { subspace, meet });
    }
    Ok(FixedPointReport {
        has_fixed_point: components.iter().any(|c| c.meet.nonempty),
        components,
    })
}
