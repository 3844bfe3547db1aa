//! Exact arithmetic in `Q` and in cyclotomic fields `Q(zeta_N)`.
//!
//! An element of `Q(zeta_N)` is stored in the power basis `1, z, .., z^(phi(N)-1)`
//! reduced modulo the cyclotomic polynomial `Phi_N`. Values of different orders
//! combine in `Q(zeta_lcm)`, using the compatible embedding `zeta_M^(M/N) = zeta_N`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = BigRational;

/// Default upper bound on the cyclotomic order of any value.
pub const DEFAULT_ORDER_CAP: u32 = 360;

static ORDER_CAP: AtomicU32 = AtomicU32::new(DEFAULT_ORDER_CAP);

/// Current cap on cyclotomic orders.
pub fn order_cap() -> u32 {
    ORDER_CAP.load(AtomicOrdering::Relaxed)
}

/// Change the global cap on cyclotomic orders. Values below 1 are clamped to 1.
pub fn set_order_cap(cap: u32) {
    ORDER_CAP.store(cap.max(1), AtomicOrdering::Relaxed);
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("Q(zeta_{from}) is not a subfield of Q(zeta_{to})")]
    NotASubfield { from: u32, to: u32 },
    #[error("cyclotomic order {order} exceeds the cap {cap}")]
    OrderCap { order: u32, cap: u32 },
    #[error("invalid cyclotomic order 0")]
    ZeroOrder,
    #[error("malformed value: {0}")]
    Parse(String),
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational, CycError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| CycError::Parse(format!("not a rational number: {s:?}")))
}

pub fn euler_phi(n: u32) -> usize {
    let mut result = n as u64;
    let mut m = n as u64;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

fn check_order(order: u32) -> Result<(), CycError> {
    if order == 0 {
        return Err(CycError::ZeroOrder);
    }
    let cap = order_cap();
    if order > cap {
        return Err(CycError::OrderCap { order, cap });
    }
    Ok(())
}

type PolyCache = Mutex<HashMap<u32, Arc<Vec<i64>>>>;

fn poly_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of `Phi_n`, lowest degree first.
///
/// Computed as `(x^n - 1) / prod_{d | n, d < n} Phi_d`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = exact_int_div(&num, &den);
        }
    }
    let p = Arc::new(num);
    poly_cache().lock().unwrap().insert(n, p.clone());
    p
}

// Division of integer polynomials by a monic divisor, assumed exact.
fn exact_int_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Reduce a polynomial in `z` modulo `z^n - 1` and then modulo `Phi_n`.
fn reduce(poly: Vec<Rational>, n: u32) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    let n = n as usize;
    let mut folded: Vec<Rational> = if poly.len() > n {
        let mut f = vec![Rational::zero(); n];
        for (i, c) in poly.into_iter().enumerate() {
            if !c.is_zero() {
                f[i % n] += c;
            }
        }
        f
    } else {
        poly
    };
    for i in (deg..folded.len()).rev() {
        if folded[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut folded[i]);
        for (j, &pj) in phi.iter().enumerate().take(deg) {
            if pj != 0 {
                folded[i - deg + j] -= &c * BigInt::from(pj);
            }
        }
    }
    folded.truncate(deg);
    folded.resize(deg, Rational::zero());
    folded
}

/// An element of `Q(zeta_N)`.
#[derive(Clone, Debug)]
pub struct CycNum {
    order: u32,
    coeffs: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl CycNum {
    pub fn zero(order: u32) -> Self {
        Self {
            order,
            coeffs: vec![Rational::zero(); euler_phi(order)],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(Rational::one(), order)
    }

    pub fn from_rational(r: Rational, order: u32) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)), 1)
    }

    /// Build from power-basis coefficients; the vector must have length `phi(order)`.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Result<Self, CycError> {
        check_order(order)?;
        if coeffs.len() != euler_phi(order) {
            return Err(CycError::Parse(format!(
                "order {order} needs {} coefficients, got {}",
                euler_phi(order),
                coeffs.len()
            )));
        }
        Ok(Self { order, coeffs })
    }

    /// Build from coefficients of an arbitrary polynomial in `zeta_order`.
    pub fn from_poly(order: u32, poly: Vec<Rational>) -> Result<Self, CycError> {
        check_order(order)?;
        Ok(Self {
            order,
            coeffs: reduce(poly, order),
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Image in `Q(zeta_m)`; requires `order | m`.
    pub fn promote(&self, m: u32) -> Result<CycNum, CycError> {
        if m == 0 || !m.is_multiple_of(self.order) {
            return Err(CycError::NotASubfield {
                from: self.order,
                to: m,
            });
        }
        if m == self.order {
            return Ok(self.clone());
        }
        check_order(m)?;
        if self.is_rational() {
            return Ok(Self::from_rational(self.coeffs[0].clone(), m));
        }
        let step = (m / self.order) as usize;
        let mut poly = vec![Rational::zero(); step * (self.coeffs.len() - 1) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::from_poly(m, poly)
    }

    pub fn arith(&self, other: &CycNum, op: ArithOp) -> Result<CycNum, CycError> {
        let m = lcm(self.order, other.order);
        let (a, b) = if self.order == m && other.order == m {
            (std::borrow::Cow::Borrowed(self), std::borrow::Cow::Borrowed(other))
        } else {
            (
                std::borrow::Cow::Owned(self.promote(m)?),
                std::borrow::Cow::Owned(other.promote(m)?),
            )
        };
        match op {
            ArithOp::Add => Ok(Self {
                order: m,
                coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
            }),
            ArithOp::Sub => Ok(Self {
                order: m,
                coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
            }),
            ArithOp::Mul => Ok(a.mul_same(&b)),
            ArithOp::Div => {
                let inv = b.inverse()?;
                Ok(a.mul_same(&inv))
            }
        }
    }

    fn mul_same(&self, other: &CycNum) -> CycNum {
        if let Some(r) = other.to_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.to_rational() {
            return other.scale(&r);
        }
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        CycNum {
            order: self.order,
            coeffs: reduce(prod, self.order),
        }
    }

    pub fn scale(&self, r: &Rational) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Phi_N`.
    pub fn inverse(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(r.recip(), self.order));
        }
        let phi: Vec<Rational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        // Invariant: s * self == r0 (mod phi).
        let mut r0 = trim(phi);
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant since Phi_N is irreducible.
        let c = r1[0].recip();
        let inv: Vec<Rational> = s1.into_iter().map(|x| x * &c).collect();
        Ok(CycNum {
            order: self.order,
            coeffs: reduce(inv, self.order),
        })
    }

    pub fn pow(&self, k: i64) -> Result<CycNum, CycError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycNum::one(self.order);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_same(&b);
            }
        }
        Ok(acc)
    }

    /// Total order used for canonical sorting: order first, then coefficients.
    pub fn canonical_cmp(&self, other: &CycNum) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// If `self` is a root of unity, return `(r, u)` with `self = zeta_r^u`, `gcd(u, r) = 1`.
    pub fn as_root_of_unity(&self) -> Option<(u32, u32)> {
        let n = self.order;
        // Q(zeta_n) contains exactly mu_n for even n and mu_2n for odd n.
        let big = if n.is_multiple_of(2) { n } else { 2 * n };
        let mut ok = None;
        for j in 0..big {
            let cand = root_of_unity_in(big, j, n);
            if &cand == self {
                ok = Some(j);
                break;
            }
        }
        let j = ok?;
        let g = j.gcd(&big);
        Some((big / g, j / g))
    }
}

// zeta_big^j written in Q(zeta_n), where big is n or 2n.
fn root_of_unity_in(big: u32, j: u32, n: u32) -> CycNum {
    if big == n {
        zeta(n, j as i64)
    } else if j.is_multiple_of(2) {
        zeta(n, (j / 2) as i64)
    } else {
        // zeta_2n = -zeta_n^((n+1)/2) for odd n.
        let k = j as i64 * (n as i64 + 1) / 2;
        -zeta(n, k)
    }
}

/// `zeta_N^k` in `Q(zeta_N)`.
pub fn zeta(n: u32, k: i64) -> CycNum {
    assert!(n > 0, "zeta of order 0");
    let e = k.rem_euclid(n as i64) as usize;
    let mut poly = vec![Rational::zero(); e + 1];
    poly[e] = Rational::one();
    CycNum {
        order: n,
        coeffs: reduce(poly, n),
    }
}

/// `zeta_N^k`, failing when `N` exceeds the order cap.
pub fn try_zeta(n: u32, k: i64) -> Result<CycNum, CycError> {
    check_order(n)?;
    Ok(zeta(n, k))
}

/// Apply a binary field operation, promoting both operands to a common field.
pub fn arith(a: &CycNum, b: &CycNum, op: ArithOp) -> Result<CycNum, CycError> {
    a.arith(b, op)
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], trim(rem));
    }
    let lead_inv = b[db].recip();
    let mut q = vec![Rational::zero(); rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = &rem[i + db] * &lead_inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    rem.truncate(db);
    (trim(q), trim(rem))
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let m = lcm(self.order, other.order);
        // Promotion to the lcm cannot fail the subfield check; an order-cap
        // failure falls back to comparing in the exact lcm without the cap.
        let a = promote_uncapped(self, m);
        let b = promote_uncapped(other, m);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

fn promote_uncapped(x: &CycNum, m: u32) -> CycNum {
    if m == x.order {
        return x.clone();
    }
    let step = (m / x.order) as usize;
    let mut poly = vec![Rational::zero(); step * (x.coeffs.len() - 1) + 1];
    for (i, c) in x.coeffs.iter().enumerate() {
        poly[i * step] = c.clone();
    }
    CycNum {
        order: m,
        coeffs: reduce(poly, m),
    }
}

fn expect_arith(a: &CycNum, b: &CycNum, op: ArithOp) -> CycNum {
    match a.arith(b, op) {
        Ok(v) => v,
        Err(e) => panic!("cyclotomic {op:?} failed: {e}"),
    }
}

macro_rules! impl_binop {
    ($tr:ident, $m:ident, $op:expr) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                expect_arith(self, rhs, $op)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                expect_arith(&self, &rhs, $op)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                expect_arith(&self, rhs, $op)
            }
        }
    };
}

impl_binop!(Add, add, ArithOp::Add);
impl_binop!(Sub, sub, ArithOp::Sub);
impl_binop!(Mul, mul, ArithOp::Mul);
impl_binop!(Div, div, ArithOp::Div);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -(self.clone())
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_int(n)
    }
}

impl From<Rational> for CycNum {
    fn from(r: Rational) -> Self {
        CycNum::from_rational(r, 1)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "z{}", self.order)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycNumRepr {
            order: self.order,
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = CycNumRepr::deserialize(d)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        CycNum::from_coeffs(repr.order, coeffs).map_err(serde::de::Error::custom)
    }
}

/// Best-effort conversion to a complex floating-point value (for diagnostics and numeric oracles).
pub fn to_complex(x: &CycNum) -> (f64, f64) {
    let n = x.order as f64;
    let mut re = 0.0;
    let mut im = 0.0;
    for (i, c) in x.coeffs.iter().enumerate() {
        let v = c.to_f64().unwrap_or(f64::NAN);
        let ang = 2.0 * std::f64::consts::PI * i as f64 / n;
        re += v * ang.cos();
        im += v * ang.sin();
    }
    (re, im)
}
