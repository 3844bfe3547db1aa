//! Independent oracles shared by the integration tests. Nothing here calls the
//! library's linear algebra, closure or intersection code.
#![allow(dead_code)]

pub mod checks;

use std::ops::{Add, Div, Mul, Sub};

use delpezzo::cyclo::{to_complex, CycNum};
use delpezzo::geometry::SparsePoly;
use twofloat::TwoFloat;

/// Complex number in double-double precision.
#[derive(Clone, Copy, Debug)]
pub struct Cx {
    pub re: TwoFloat,
    pub im: TwoFloat,
}

impl Cx {
    pub fn new(re: f64, im: f64) -> Self {
        Cx {
            re: TwoFloat::from(re),
            im: TwoFloat::from(im),
        }
    }

    pub fn zero() -> Self {
        Cx::new(0.0, 0.0)
    }

    pub fn one() -> Self {
        Cx::new(1.0, 0.0)
    }

    /// `e^{2 pi i k / n}` evaluated in double-double precision.
    pub fn root_of_unity(k: i64, n: i64) -> Self {
        let angle = twofloat::consts::TAU * TwoFloat::from(k.rem_euclid(n) as f64) / TwoFloat::from(n as f64);
        let (s, c) = angle.sin_cos();
        Cx { re: c, im: s }
    }

    /// Exact value of `x` rounded through its power-basis expansion.
    pub fn of(x: &CycNum) -> Self {
        let n = x.order() as i64;
        let mut acc = Cx::zero();
        for (k, c) in x.coeffs().iter().enumerate() {
            let num = c.numer().to_string().parse::<f64>().unwrap();
            let den = c.denom().to_string().parse::<f64>().unwrap();
            let scale = Cx {
                re: TwoFloat::from(num) / TwoFloat::from(den),
                im: TwoFloat::from(0.0),
            };
            acc = acc + scale * Cx::root_of_unity(k as i64, n.max(1));
        }
        acc
    }

    pub fn norm(self) -> f64 {
        (self.re * self.re + self.im * self.im).sqrt().hi()
    }

    pub fn powu(self, k: u32) -> Self {
        (0..k).fold(Cx::one(), |acc, _| acc * self)
    }
}

impl Add for Cx {
    type Output = Cx;
    fn add(self, o: Cx) -> Cx {
        Cx {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for Cx {
    type Output = Cx;
    fn sub(self, o: Cx) -> Cx {
        Cx {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Mul for Cx {
    type Output = Cx;
    fn mul(self, o: Cx) -> Cx {
        Cx {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl Div for Cx {
    type Output = Cx;
    fn div(self, o: Cx) -> Cx {
        let d = o.re * o.re + o.im * o.im;
        Cx {
            re: (self.re * o.re + self.im * o.im) / d,
            im: (self.im * o.re - self.re * o.im) / d,
        }
    }
}

/// Evaluate a polynomial at a complex point.
pub fn eval(f: &SparsePoly, x: &[Cx]) -> Cx {
    let mut acc = Cx::zero();
    for (exps, c) in f.terms() {
        let mut t = Cx::of(c);
        for (xi, &e) in x.iter().zip(exps) {
            t = t * xi.powu(e);
        }
        acc = acc + t;
    }
    acc
}

/// Coefficients `c_0..c_d` of `s -> F(s u + v)` recovered by a discrete Fourier transform.
pub fn line_polynomial(f: &SparsePoly, u: &[Cx], v: &[Cx], d: usize) -> Vec<Cx> {
    let m = d as i64 + 1;
    let samples: Vec<Cx> = (0..m)
        .map(|j| {
            let s = Cx::root_of_unity(j, m);
            let p: Vec<Cx> = u.iter().zip(v).map(|(a, b)| s * *a + *b).collect();
            eval(f, &p)
        })
        .collect();
    let inv = Cx::new(1.0 / m as f64, 0.0);
    (0..m)
        .map(|k| {
            let mut acc = Cx::zero();
            for (j, sj) in samples.iter().enumerate() {
                acc = acc + *sj * Cx::root_of_unity(-(j as i64) * k, m);
            }
            acc * inv
        })
        .collect()
}

/// Durand-Kerner roots of `c_0 + c_1 s + ... + c_d s^d` with `c_d != 0`.
pub fn roots(coeffs: &[Cx]) -> Vec<Cx> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let lead = coeffs[d];
    let monic: Vec<Cx> = coeffs.iter().map(|c| *c / lead).collect();
    let p = |z: Cx| monic.iter().rev().fold(Cx::zero(), |acc, c| acc * z + *c);
    let seed = Cx::new(0.4, 0.9);
    let mut zs: Vec<Cx> = (0..d).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let prev = zs.clone();
        for i in 0..d {
            let mut den = Cx::one();
            for (j, zj) in prev.iter().enumerate() {
                if j != i {
                    den = den * (zs[i] - *zj);
                }
            }
            zs[i] = zs[i] - p(zs[i]) / den;
        }
    }
    zs
}

/// Number of distinct values among `zs`, clustering within `tol`.
pub fn distinct(zs: &[Cx], tol: f64) -> usize {
    let mut reps: Vec<Cx> = Vec::new();
    for z in zs {
        if reps.iter().all(|r| (*r - *z).norm() > tol) {
            reps.push(*z);
        }
    }
    reps.len()
}

/// Distinct zeros of a homogeneous polynomial of degree `d` on the line through `u` and `v`.
pub fn points_on_line(f: &SparsePoly, u: &[CycNum], v: &[CycNum], d: usize) -> usize {
    let u: Vec<Cx> = u.iter().map(Cx::of).collect();
    let v: Vec<Cx> = v.iter().map(Cx::of).collect();
    let c = line_polynomial(f, &u, &v, d);
    let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(scale > 1e-20, "form vanishes on the line");
    let mut top = d;
    while c[top].norm() < 1e-24 * scale.max(1.0) {
        top -= 1;
    }
    // A degree drop means the point u (s = infinity) is a zero.
    let at_infinity = usize::from(top < d);
    let finite = roots(&c[..=top]);
    distinct(&finite, 1e-9) + at_infinity
}

/// Points of `sum x_i^2 = sum a_i x_i^2 = 0` in the plane of three coordinates,
/// counted through the squares: the linear system for `x_i^2` has a one
/// dimensional solution space and each nonzero square doubles the count.
pub fn diagonal_conic_pair_points(a: [i64; 3]) -> usize {
    // (y0, y1, y2) in the kernel of [[1,1,1],[a0,a1,a2]] is the cross product.
    let y = [a[2] - a[1], a[0] - a[2], a[1] - a[0]];
    let nonzero = y.iter().filter(|&&v| v != 0).count();
    if nonzero == 0 {
        return usize::MAX;
    }
    1 << (nonzero - 1)
}

/// Nonzero vectors of `F_p^n`.
pub fn nonzero_vectors(p: u8, n: usize) -> Vec<Vec<u8>> {
    let total = (p as usize).pow(n as u32);
    (1..total)
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = (k % p as usize) as u8;
                    k /= p as usize;
                    d
                })
                .collect()
        })
        .collect()
}

/// Two-dimensional subspaces of `F_p^n`, each as its sorted list of nonzero vectors.
pub fn planes(p: u8, n: usize) -> Vec<Vec<Vec<u8>>> {
    let vs = nonzero_vectors(p, n);
    let mut out: Vec<Vec<Vec<u8>>> = Vec::new();
    for a in &vs {
        for b in &vs {
            let mut span = Vec::new();
            for i in 0..p {
                for j in 0..p {
                    if i == 0 && j == 0 {
                        continue;
                    }
                    let v: Vec<u8> = a.iter().zip(b).map(|(x, y)| (i * x + j * y) % p).collect();
                    span.push(v);
                }
            }
            span.sort();
            span.dedup();
            if span.len() == (p as usize).pow(2) - 1 && !out.contains(&span) {
                out.push(span);
            }
        }
    }
    out
}

/// Number of degree-`d` monomials fixed by every diagonal matrix in `diags`
/// (entries given as exponents `k` of `zeta_n^k`).
pub fn stable_monomials(nvars: usize, d: u32, n: u32, diags: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut e = vec![0u32; nvars];
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, n: u32, diags: &[Vec<u32>]) {
        if i + 1 == e.len() {
            e[i] = left;
            if diags
                .iter()
                .all(|dg| dg.iter().zip(e.iter()).map(|(k, x)| k * x).sum::<u32>() % n == 0)
            {
                out.push(e.clone());
            }
            return;
        }
        for x in 0..=left {
            e[i] = x;
            rec(i + 1, left - x, e, out, n, diags);
        }
    }
    rec(0, d, &mut e, &mut out, n, diags);
    out
}

pub fn approx_eq(a: &CycNum, b: &CycNum) -> bool {
    let (ar, ai) = to_complex(a);
    let (br, bi) = to_complex(b);
    (ar - br).abs() < 1e-9 && (ai - bi).abs() < 1e-9
}
