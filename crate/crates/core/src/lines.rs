//! Lines on cubic surfaces, the induced permutation action and invariant
//! Picard ranks.
//!
//! `Pic(X) ⊗ Q` is modelled as `Q^27` modulo the kernel of the intersection
//! matrix of the lines, which is the same as the image of that matrix.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::cyclo::{zeta, CycNum};
use crate::geometry::{restrict_to_line, GeometryError, SurfaceKind, SurfaceModel};
use crate::groups::{ProjElement, ProjGroup};
use crate::linalg::{LinalgError, LinearSubspace, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinesError {
    #[error("line sets are only defined on cubic surfaces")]
    NotACubic,
    #[error("subspace {0} is not a projective line")]
    NotALine(usize),
    #[error("line {0} does not lie on the surface")]
    NotOnSurface(usize),
    #[error("the image of line {0} is not in the line set")]
    LineNotMapped(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Lines on a cubic surface with their intersection matrix.
#[derive(Clone, Debug)]
pub struct LineSet {
    surface: SurfaceModel,
    lines: Vec<LinearSubspace>,
    gram: Vec<Vec<i64>>,
    // Orthogonal projector of Q^n onto the image of the Gram matrix.
    projector: Matrix,
    image: LinearSubspace,
}

impl LineSet {
    /// Verify each line lies on the surface and compute intersections.
    pub fn new(surface: SurfaceModel, lines: Vec<LinearSubspace>) -> Result<Self, LinesError> {
        if surface.kind() != SurfaceKind::CubicP3 {
            return Err(LinesError::NotACubic);
        }
        for (i, l) in lines.iter().enumerate() {
            if l.dim() != 2 || l.ambient_dim() != 4 {
                return Err(LinesError::NotALine(i));
            }
            if !restrict_to_line(&surface, l)?[0].is_zero() {
                return Err(LinesError::NotOnSurface(i));
            }
        }
        let n = lines.len();
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            gram[i][i] = -1;
            for j in i + 1..n {
                let meet = i64::from(lines[i].sum(&lines[j])?.dim() == 3);
                gram[i][j] = meet;
                gram[j][i] = meet;
            }
        }
        let rows: Vec<&[i64]> = gram.iter().map(Vec::as_slice).collect();
        let g = Matrix::from_ints(&rows);
        let image = LinearSubspace::from_spanning(n, &g);
        let bt = image.basis().clone();
        let b = bt.transpose();
        let projector = if image.is_zero() {
            Matrix::zeros(n, n, 1)
        } else {
            b.try_mul(&bt.try_mul(&b)?.inverse()?)?.try_mul(&bt)?
        };
        Ok(Self {
            surface,
            lines,
            gram,
            projector,
            image,
        })
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    pub fn lines(&self) -> &[LinearSubspace] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Rank of the intersection matrix, the Picard rank when the lines span `Pic`.
    pub fn picard_rank(&self) -> usize {
        self.image.dim()
    }

    pub fn index_of(&self, l: &LinearSubspace) -> Option<usize> {
        self.lines.iter().position(|m| m == l)
    }
}

impl Serialize for LineSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LineSet", 2)?;
        let bases: Vec<&Matrix> = self.lines.iter().map(LinearSubspace::basis).collect();
        st.serialize_field("lines", &bases)?;
        st.serialize_field("gram", &self.gram)?;
        st.end()
    }
}

/// The 27 lines `x_i + w x_j = x_k + w' x_l = 0` of the Fermat cubic.
pub fn fermat_lines() -> LineSet {
    let eq = (0..4)
        .map(|i| crate::geometry::SparsePoly::var(4, i).pow(3))
        .reduce(|a, b| a.add(&b).expect("same nvars"))
        .expect("four terms");
    let surface = SurfaceModel::new(SurfaceKind::CubicP3, vec![eq]).expect("Fermat cubic");
    let pairings = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
    let mut lines = Vec::with_capacity(27);
    for [(i, j), (k, l)] in pairings {
        for a in 0..3 {
            for b in 0..3 {
                let mut rows = vec![vec![CycNum::from_int(0); 4]; 2];
                rows[0][i] = CycNum::from_int(1);
                rows[0][j] = zeta(3, a);
                rows[1][k] = CycNum::from_int(1);
                rows[1][l] = zeta(3, b);
                lines.push(Matrix::from_rows(rows).expect("2x4").kernel());
            }
        }
    }
    LineSet::new(surface, lines).expect("lines of the Fermat cubic")
}

/// Permutation of line indices induced by `g`: `perm[i]` is the index of `g(line i)`.
pub fn line_permutation(g: &ProjElement, lines: &LineSet) -> Result<Vec<usize>, LinesError> {
    lines
        .lines
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let image = l.image(g.lift())?;
            lines.index_of(&image).ok_or(LinesError::LineNotMapped(i))
        })
        .collect()
}

/// Line permutations for every element of `g`, in element order.
pub fn line_permutations(g: &ProjGroup, lines: &LineSet) -> Result<Vec<Vec<usize>>, LinesError> {
    g.elements().iter().map(|e| line_permutation(e, lines)).collect()
}

/// Rank of the invariant part of `Pic ⊗ Q`, as the average trace of the group on it.
pub fn invariant_picard_rank(g: &ProjGroup, lines: &LineSet) -> Result<usize, LinesError> {
    let mut total = CycNum::from_int(0);
    for perm in line_permutations(g, lines)? {
        for (j, &pj) in perm.iter().enumerate() {
            total = &total + lines.projector.get(j, pj);
        }
    }
    let avg = &total * &CycNum::from_int(g.order() as i64).inverse().expect("nonzero");
    let r = avg.to_rational().expect("rational trace");
    assert!(r.is_integer(), "average trace {r} is not an integer");
    Ok(r.to_integer().try_into().expect("nonnegative rank"))
}

/// The same rank via the common fixed space of the generators inside the Gram image.
pub fn invariant_picard_rank_echelon(g: &ProjGroup, lines: &LineSet) -> Result<usize, LinesError> {
    let n = lines.len();
    let mut fixed = LinearSubspace::full(n, 1);
    for s in g.generators() {
        let perm = line_permutation(&s, lines)?;
        // (P - I) v = 0 with (P v)_{perm[j]} = v_j.
        let mut rows = vec![vec![CycNum::from_int(0); n]; n];
        for (j, &pj) in perm.iter().enumerate() {
            rows[pj][j] = &rows[pj][j] + &CycNum::from_int(1);
            rows[j][j] = &rows[j][j] - &CycNum::from_int(1);
        }
        fixed = fixed.intersect(&Matrix::from_rows(rows)?.kernel())?;
    }
    Ok(fixed.intersect(&lines.image)?.dim())
}
