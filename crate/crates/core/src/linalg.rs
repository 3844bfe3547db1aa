//! Exact linear algebra over cyclotomic fields: dense matrices, reduced row
//! echelon forms, kernels, canonical subspaces, and binary forms.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cyclo::{lcm, CycError, CycNum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("binary form is identically zero")]
    ZeroForm,
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Cyc(#[from] CycError),
}

/// Dense row-major matrix whose entries all live in `Q(zeta_order)`.
///
/// Equality compares values, so matrices stored over different fields can be equal.
#[derive(Clone, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    order: u32,
    data: Vec<CycNum>,
}

impl Matrix {
    /// Build from row-major entries, promoting everything to a common field.
    pub fn new(rows: usize, cols: usize, entries: Vec<CycNum>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let order = entries.iter().fold(1, |acc, e| lcm(acc, e.order()));
        let data = entries
            .into_iter()
            .map(|e| e.promote(order))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            rows,
            cols,
            order,
            data,
        })
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let vals = rows
            .iter()
            .map(|r| r.iter().map(|&x| CycNum::from_int(x)).collect())
            .collect();
        Self::from_rows(vals).expect("integer matrix")
    }

    pub fn zeros(rows: usize, cols: usize, order: u32) -> Self {
        Self {
            rows,
            cols,
            order,
            data: vec![CycNum::zero(order); rows * cols],
        }
    }

    pub fn identity(n: usize, order: u32) -> Self {
        let mut m = Self::zeros(n, n, order);
        for i in 0..n {
            m.data[i * n + i] = CycNum::one(order);
        }
        m
    }

    pub fn diagonal(entries: Vec<CycNum>) -> Result<Self, LinalgError> {
        let n = entries.len();
        let mut all = Vec::with_capacity(n * n);
        for (i, e) in entries.into_iter().enumerate() {
            for j in 0..n {
                all.push(if i == j { e.clone() } else { CycNum::from_int(0) });
            }
        }
        Self::new(n, n, all)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<CycNum>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn promote(&self, order: u32) -> Result<Self, LinalgError> {
        if order == self.order {
            return Ok(self.clone());
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            order,
            data: self
                .data
                .iter()
                .map(|e| e.promote(order))
                .collect::<Result<_, _>>()?,
        })
    }

    fn common(a: &Matrix, b: &Matrix) -> Result<(Matrix, Matrix), LinalgError> {
        let m = lcm(a.order, b.order);
        Ok((a.promote(m)?, b.promote(m)?))
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (a, b) = Self::common(self, other)?;
        let mut data = Vec::with_capacity(a.rows * b.cols);
        for i in 0..a.rows {
            for j in 0..b.cols {
                let mut acc = CycNum::zero(a.order);
                for k in 0..a.cols {
                    let x = a.get(i, k);
                    if x.is_zero() {
                        continue;
                    }
                    let y = b.get(k, j);
                    if y.is_zero() {
                        continue;
                    }
                    acc = &acc + &(x * y);
                }
                data.push(acc);
            }
        }
        Ok(Matrix {
            rows: a.rows,
            cols: b.cols,
            order: a.order,
            data,
        })
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch("matrix subtraction".into()));
        }
        let (a, b) = Self::common(self, other)?;
        Ok(Matrix {
            data: a.data.iter().zip(&b.data).map(|(x, y)| x - y).collect(),
            ..a
        })
    }

    pub fn scale(&self, c: &CycNum) -> Result<Matrix, LinalgError> {
        let order = lcm(self.order, c.order());
        let c = c.promote(order)?;
        let base = self.promote(order)?;
        Ok(Matrix {
            data: base.data.iter().map(|x| x * &c).collect(),
            ..base
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            order: self.order,
            data,
        }
    }

    /// Matrix times a column vector.
    pub fn apply(&self, v: &[CycNum]) -> Result<Vec<CycNum>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch("vector length".into()));
        }
        let col = Matrix::new(v.len(), 1, v.to_vec())?;
        Ok(self.try_mul(&col)?.data)
    }

    /// Stack the rows of `other` under `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch("vstack".into()));
        }
        let (a, b) = Self::common(self, other)?;
        let mut data = a.data;
        data.extend(b.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            order: a.order,
            data,
        })
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inverse().expect("nonzero pivot");
            for j in c..m.cols {
                let idx = r * m.cols + j;
                if !m.data[idx].is_zero() {
                    m.data[idx] = &m.data[idx] * &inv;
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pr = m.data[r * m.cols + j].clone();
                    if pr.is_zero() {
                        continue;
                    }
                    let idx = i * m.cols + j;
                    m.data[idx] = &m.data[idx] - &(&f * &pr);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Matrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Right kernel `{v : M v = 0}` as a canonical subspace.
    pub fn kernel(&self) -> LinearSubspace {
        let (r, pivots) = self.rref_with_pivots();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len() * n);
        for &f in &free {
            let mut v = vec![CycNum::zero(self.order); n];
            v[f] = CycNum::one(self.order);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f);
            }
            basis.extend(v);
        }
        let m = Matrix {
            rows: free.len(),
            cols: n,
            order: self.order,
            data: basis,
        };
        LinearSubspace::from_spanning(n, &m)
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::DimensionMismatch("inverse of non-square".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n, self.order);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j).clone();
            }
            aug.data[i * 2 * n + n + i] = CycNum::one(self.order);
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            data.extend_from_slice(&r.row(i)[n..]);
        }
        Ok(Matrix {
            rows: n,
            cols: n,
            order: self.order,
            data,
        })
    }

    /// If the matrix is `c * I`, return `c`.
    pub fn scalar_value(&self) -> Option<CycNum> {
        if !self.is_square() {
            return None;
        }
        let c = self.get(0, 0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if i == j {
                    if e != c {
                        return None;
                    }
                } else if !e.is_zero() {
                    return None;
                }
            }
        }
        (!c.is_zero()).then(|| c.clone())
    }

    pub fn is_scalar(&self) -> bool {
        self.scalar_value().is_some()
    }

    pub fn trace(&self) -> CycNum {
        (0..self.rows.min(self.cols)).fold(CycNum::zero(self.order), |acc, i| &acc + self.get(i, i))
    }

    /// Lexicographic comparison of entries, used for canonical orderings.
    pub fn canonical_cmp(&self, other: &Matrix) -> Ordering {
        (self.rows, self.cols, self.order)
            .cmp(&(other.rows, other.cols, other.order))
            .then_with(|| {
                for (a, b) in self.data.iter().zip(&other.data) {
                    let c = a.canonical_cmp(b);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Matrix {}

impl Matrix {
    /// Hash of the stored coefficients; only meaningful between matrices of the same order.
    pub fn hash_key(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        (self.rows, self.cols, self.order).hash(&mut h);
        for e in &self.data {
            e.coeffs().hash(&mut h);
        }
        h.finish()
    }
}

impl std::ops::Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<CycNum>>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.row_vecs(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|r| r.len() != repr.cols) {
            return Err(D::Error::custom(format!(
                "entries do not match declared shape {}x{}",
                repr.rows, repr.cols
            )));
        }
        Matrix::new(repr.rows, repr.cols, repr.entries.into_iter().flatten().collect())
            .map_err(D::Error::custom)
    }
}

/// A linear subspace of `K^n`, stored by its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl LinearSubspace {
    /// Span of the rows of `m`.
    pub fn from_spanning(ambient_dim: usize, m: &Matrix) -> Self {
        let (r, pivots) = m.rref_with_pivots();
        let k = pivots.len();
        let basis = Matrix {
            rows: k,
            cols: ambient_dim,
            order: r.order,
            data: r.data[..k * ambient_dim].to_vec(),
        };
        Self { ambient_dim, basis }
    }

    pub fn span(ambient_dim: usize, vectors: &[Vec<CycNum>]) -> Result<Self, LinalgError> {
        if vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(LinalgError::DimensionMismatch("vector length".into()));
        }
        let m = Matrix::new(vectors.len(), ambient_dim, vectors.iter().flatten().cloned().collect())?;
        Ok(Self::from_spanning(ambient_dim, &m))
    }

    pub fn full(n: usize, order: u32) -> Self {
        Self {
            ambient_dim: n,
            basis: Matrix::identity(n, order),
        }
    }

    pub fn zero(n: usize, order: u32) -> Self {
        Self {
            ambient_dim: n,
            basis: Matrix::zeros(0, n, order),
        }
    }

    /// Span of the standard basis vectors with the given (0-based) indices.
    pub fn coordinate(n: usize, indices: &[usize]) -> Self {
        let vecs: Vec<Vec<CycNum>> = indices
            .iter()
            .map(|&i| (0..n).map(|j| CycNum::from_int((i == j) as i64)).collect())
            .collect();
        Self::span(n, &vecs).expect("coordinate subspace")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn order(&self) -> u32 {
        self.basis.order
    }

    pub fn promote(&self, order: u32) -> Result<Self, LinalgError> {
        Ok(Self {
            ambient_dim: self.ambient_dim,
            basis: self.basis.promote(order)?,
        })
    }

    /// Linear forms vanishing on the subspace, as rows of a matrix.
    pub fn equations(&self) -> Matrix {
        if self.dim() == 0 {
            return Matrix::identity(self.ambient_dim, self.order());
        }
        self.basis.kernel().basis
    }

    pub fn intersect(&self, other: &LinearSubspace) -> Result<LinearSubspace, LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        let eqs = self.equations().vstack(&other.equations())?;
        if eqs.rows == 0 {
            let order = lcm(self.order(), other.order());
            return Ok(LinearSubspace::full(self.ambient_dim, order));
        }
        Ok(eqs.kernel())
    }

    pub fn sum(&self, other: &LinearSubspace) -> Result<LinearSubspace, LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        let m = self.basis.vstack(&other.basis)?;
        Ok(Self::from_spanning(self.ambient_dim, &m))
    }

    pub fn contains(&self, other: &LinearSubspace) -> Result<bool, LinalgError> {
        Ok(self.sum(other)?.dim() == self.dim())
    }

    /// Image of the subspace under a square matrix acting on column vectors.
    pub fn image(&self, g: &Matrix) -> Result<LinearSubspace, LinalgError> {
        if !g.is_square() || g.rows != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch("image under matrix".into()));
        }
        if self.dim() == 0 {
            return Ok(self.clone());
        }
        // Rows of B * g^T are the images g v of the basis rows v.
        let m = self.basis.try_mul(&g.transpose())?;
        Ok(Self::from_spanning(self.ambient_dim, &m))
    }

    /// Canonical ordering: larger subspaces first, then basis entries.
    pub fn canonical_cmp(&self, other: &LinearSubspace) -> Ordering {
        other
            .dim()
            .cmp(&self.dim())
            .then_with(|| self.basis.canonical_cmp(&other.basis))
    }
}

impl Serialize for LinearSubspace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.basis.serialize(s)
    }
}

impl fmt::Display for LinearSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 0 {
            return write!(f, "{{0}}");
        }
        write!(f, "span{}", self.basis)
    }
}

// Univariate polynomials over a single cyclotomic field, lowest degree first,
// with no trailing zeros.
pub(crate) mod upoly {
    use crate::cyclo::CycNum;

    pub fn trim(mut p: Vec<CycNum>) -> Vec<CycNum> {
        while p.last().is_some_and(CycNum::is_zero) {
            p.pop();
        }
        p
    }

    pub fn degree(p: &[CycNum]) -> Option<usize> {
        (!p.is_empty()).then(|| p.len() - 1)
    }

    pub fn monic(p: Vec<CycNum>) -> Vec<CycNum> {
        match p.last() {
            None => p,
            Some(lead) => {
                let inv = lead.inverse().expect("nonzero lead");
                p.iter().map(|c| c * &inv).collect()
            }
        }
    }

    pub fn rem(a: &[CycNum], b: &[CycNum]) -> Vec<CycNum> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lead_inv = b[db].inverse().expect("nonzero lead");
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() * &lead_inv;
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] = &r[shift + j] - &(&c * bj);
            }
            r.pop();
            r = trim(r);
        }
        r
    }

    pub fn div_exact(a: &[CycNum], b: &[CycNum]) -> Vec<CycNum> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lead_inv = b[db].inverse().expect("nonzero lead");
        let mut q = vec![CycNum::from_int(0); a.len().saturating_sub(db)];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() * &lead_inv;
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] = &r[shift + j] - &(&c * bj);
            }
            q[shift] = c;
            r.pop();
            r = trim(r);
        }
        debug_assert!(r.is_empty(), "inexact polynomial division");
        trim(q)
    }

    /// Monic gcd by the classical Euclidean algorithm.
    pub fn gcd(a: &[CycNum], b: &[CycNum]) -> Vec<CycNum> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let r = rem(&x, &y);
            x = std::mem::replace(&mut y, r);
        }
        monic(x)
    }

    pub fn derivative(p: &[CycNum]) -> Vec<CycNum> {
        trim(
            p.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &CycNum::from_int(i as i64))
                .collect(),
        )
    }
}

/// A binary form `sum_k c_k s^(d-k) t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<CycNum>,
}

impl BinaryForm {
    /// Coefficients of `s^d, s^(d-1) t, .., t^d`.
    pub fn new(coeffs: Vec<CycNum>) -> Self {
        assert!(!coeffs.is_empty(), "binary form needs at least one coefficient");
        Self {
            degree: coeffs.len() - 1,
            coeffs,
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| CycNum::from_int(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        Self::new(vec![CycNum::from_int(0); degree + 1])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycNum::is_zero)
    }

    /// Multiplicity of the root `(1:0)`, i.e. the power of `t` dividing the form.
    fn t_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `f(s, 1)` as a univariate polynomial, lowest degree first.
    fn dehomogenize(&self) -> Vec<CycNum> {
        upoly::trim(self.coeffs.iter().rev().cloned().collect())
    }

    fn homogenize(p: &[CycNum], t_power: usize) -> BinaryForm {
        let dp = p.len().saturating_sub(1);
        let d = dp + t_power;
        let mut coeffs = vec![CycNum::from_int(0); d + 1];
        for (j, c) in p.iter().enumerate() {
            coeffs[dp - j + t_power] = c.clone();
        }
        BinaryForm::new(coeffs)
    }

    pub fn eval(&self, s: &CycNum, t: &CycNum) -> CycNum {
        let mut acc = CycNum::from_int(0);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = c * &(&s.pow((self.degree - k) as i64).unwrap() * &t.pow(k as i64).unwrap());
            acc = &acc + &term;
        }
        acc
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut coeffs = vec![CycNum::from_int(0); self.degree + other.degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        BinaryForm::new(coeffs)
    }

    pub fn sub(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree, other.degree, "degree mismatch in form subtraction");
        BinaryForm::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }

    /// Check whether the two forms agree up to a nonzero scalar.
    pub fn proportional(&self, other: &BinaryForm) -> bool {
        if self.degree != other.degree {
            return false;
        }
        let m = Matrix::from_rows(vec![self.coeffs.clone(), other.coeffs.clone()]).expect("rows");
        m.rank() <= 1 && self.is_zero() == other.is_zero()
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (es, et) = (self.degree - k, k);
            let mono = match (es, et) {
                (0, 0) => String::new(),
                (a, 0) => pow_str("s", a),
                (0, b) => pow_str("t", b),
                (a, b) => format!("{}*{}", pow_str("s", a), pow_str("t", b)),
            };
            parts.push(if mono.is_empty() {
                format!("({c})")
            } else {
                format!("({c})*{mono}")
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn pow_str(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

/// Greatest common divisor of two binary forms, monic after setting `t = 1`.
pub fn form_gcd(f: &BinaryForm, g: &BinaryForm) -> BinaryForm {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return BinaryForm::zero(0),
        (true, false) => return normalize(g),
        (false, true) => return normalize(f),
        _ => {}
    }
    let e = f.t_valuation().min(g.t_valuation());
    let h = upoly::gcd(&f.dehomogenize(), &g.dehomogenize());
    BinaryForm::homogenize(&h, e)
}

fn normalize(f: &BinaryForm) -> BinaryForm {
    let v = f.t_valuation();
    BinaryForm::homogenize(&upoly::monic(f.dehomogenize()), v)
}

/// Number of distinct projective roots over `C`.
pub fn squarefree_degree(f: &BinaryForm) -> Result<usize, LinalgError> {
    if f.is_zero() {
        return Err(LinalgError::ZeroForm);
    }
    let p = f.dehomogenize();
    let finite = match upoly::degree(&p) {
        Some(0) | None => 0,
        Some(_) => {
            let g = upoly::gcd(&p, &upoly::derivative(&p));
            upoly::degree(&upoly::div_exact(&p, &g)).unwrap_or(0)
        }
    };
    Ok(finite + usize::from(f.t_valuation() > 0))
}
