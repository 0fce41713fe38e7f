//! Small dense complex matrices: LU, Schur/eigen decomposition, expm.

use crate::quad::{OscValue, QuadValue};
use crate::scalar::{c, cr, fmax, C, Real};
use std::ops::{Add, Index, IndexMut, Mul, Sub};

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat<T: Real> {
    n: usize,
    data: Vec<C<T>>,
}

impl<T: Real> CMat<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![cr(T::zero()); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = cr(T::one());
        }
        m
    }

    pub fn diag(d: &[C<T>]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    /// Builds from rows; returns `None` when the rows are ragged.
    pub fn from_rows(rows: &[Vec<C<T>>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self { n, data: rows.iter().flatten().copied().collect() })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Option<Self> {
        let rows: Vec<Vec<C<T>>> = rows.iter().map(|r| r.iter().map(|&x| cr(T::lit(x))).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<C<T>>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn scale(&self, z: C<T>) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| *x * z).collect() }
    }

    pub fn scale_re(&self, s: T) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x.scale(s)).collect() }
    }

    /// `self + z I`
    pub fn shift(&self, z: C<T>) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m[(i, i)] += z;
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = self[(j, i)].conj();
            }
        }
        m
    }

    pub fn matvec(&self, x: &[C<T>]) -> Vec<C<T>> {
        (0..self.n).map(|i| (0..self.n).fold(cr(T::zero()), |s, j| s + self[(i, j)] * x[j])).collect()
    }

    pub fn trace(&self) -> C<T> {
        (0..self.n).fold(cr(T::zero()), |s, i| s + self[(i, i)])
    }

    pub fn norm_fro(&self) -> T {
        self.data.iter().map(|x| x.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn norm_one(&self) -> T {
        (0..self.n).map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<T>()).fold(T::zero(), fmax)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|x| x.norm()).fold(T::zero(), fmax)
    }

    /// Spectral norm (largest singular value).
    pub fn norm2(&self) -> T {
        if self.n == 0 {
            return T::zero();
        }
        let g = &self.adjoint() * self;
        let (t, _) = schur(&g);
        let lmax = (0..self.n).map(|i| t[(i, i)].re).fold(T::zero(), fmax);
        lmax.max(T::zero()).sqrt()
    }

    /// Whether `A A* = A* A` up to a relative tolerance.
    pub fn is_normal(&self, tol: T) -> bool {
        let a = self.adjoint();
        let d = &(&a * self) - &(self * &a);
        d.norm_fro() <= tol * fmax(self.norm_fro().powi(2), T::min_positive_value())
    }

    /// LU factorization with partial pivoting.
    pub fn lu(&self) -> Option<Lu<T>> {
        let n = self.n;
        let mut a = self.clone();
        let mut piv: Vec<usize> = (0..n).collect();
        let scale = fmax(self.max_abs(), T::min_positive_value());
        for k in 0..n {
            let (p, pv) = (k..n).map(|i| (i, a[(i, k)].norm())).fold((k, -T::one()), |b, x| if x.1 > b.1 { x } else { b });
            if !(pv > scale * T::epsilon() * T::lit(4.0)) {
                return None;
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                piv.swap(k, p);
            }
            let d = a[(k, k)];
            for i in k + 1..n {
                let l = a[(i, k)] / d;
                a[(i, k)] = l;
                for j in k + 1..n {
                    let u = a[(k, j)];
                    a[(i, j)] -= l * u;
                }
            }
        }
        Some(Lu { lu: a, piv })
    }

    pub fn inverse(&self) -> Option<Self> {
        let lu = self.lu()?;
        Some(lu.solve_mat(&Self::identity(self.n)))
    }

    /// Matrix exponential by Padé(13) scaling and squaring.
    pub fn expm(&self) -> Self {
        expm(self)
    }

    /// Eigenvalues (diagonal of the complex Schur form).
    pub fn eigenvalues(&self) -> Vec<C<T>> {
        let (t, _) = schur(self);
        (0..self.n).map(|i| t[(i, i)]).collect()
    }

    /// Eigenvalues and unit-norm eigenvectors (columns of `V`).
    pub fn eigen(&self) -> (Vec<C<T>>, CMat<T>) {
        let n = self.n;
        let (t, z) = schur(self);
        let lam: Vec<C<T>> = (0..n).map(|i| t[(i, i)]).collect();
        let small = fmax(t.max_abs(), T::min_positive_value()) * T::epsilon();
        let mut y = CMat::zeros(n);
        for k in 0..n {
            y[(k, k)] = cr(T::one());
            for j in (0..k).rev() {
                let mut s = cr(T::zero());
                for l in j + 1..=k {
                    s += t[(j, l)] * y[(l, k)];
                }
                let mut d = t[(j, j)] - lam[k];
                if d.norm() < small {
                    d = cr(small);
                }
                y[(j, k)] = -s / d;
            }
        }
        let mut v = &z * &y;
        for k in 0..n {
            let nrm = (0..n).map(|i| v[(i, k)].norm_sqr()).sum::<T>().sqrt();
            if nrm > T::zero() {
                for i in 0..n {
                    v[(i, k)] = v[(i, k)] / nrm;
                }
            }
        }
        (lam, v)
    }
}

impl<T: Real> Index<(usize, usize)> for CMat<T> {
    type Output = C<T>;
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.n + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for CMat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Real> Add for &CMat<T> {
    type Output = CMat<T>;
    fn add(self, o: &CMat<T>) -> CMat<T> {
        CMat { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| *a + *b).collect() }
    }
}

impl<T: Real> Sub for &CMat<T> {
    type Output = CMat<T>;
    fn sub(self, o: &CMat<T>) -> CMat<T> {
        CMat { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| *a - *b).collect() }
    }
}

impl<T: Real> Mul for &CMat<T> {
    type Output = CMat<T>;
    fn mul(self, o: &CMat<T>) -> CMat<T> {
        let n = self.n;
        let mut m = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..n {
                    m.data[i * n + j] += a * o.data[k * n + j];
                }
            }
        }
        m
    }
}

impl<T: Real> QuadValue<T> for CMat<T> {
    fn zeroed(&self) -> Self {
        CMat::zeros(self.n)
    }
    fn axpy(&mut self, w: T, x: &Self) {
        for (a, b) in self.data.iter_mut().zip(&x.data) {
            *a += b.scale(w);
        }
    }
    fn norm(&self) -> T {
        self.norm_fro()
    }
}

impl<T: Real> OscValue<T> for CMat<T> {
    fn cmul(&self, z: C<T>) -> Self {
        self.scale(z)
    }
}

/// LU factors with the row permutation.
#[derive(Debug, Clone)]
pub struct Lu<T: Real> {
    lu: CMat<T>,
    piv: Vec<usize>,
}

impl<T: Real> Lu<T> {
    pub fn solve(&self, b: &[C<T>]) -> Vec<C<T>> {
        let n = self.lu.n;
        let mut x: Vec<C<T>> = self.piv.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[(i, j)];
                x[i] = x[i] - l * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[(i, j)];
                x[i] = x[i] - u * x[j];
            }
            x[i] = x[i] / self.lu[(i, i)];
        }
        x
    }

    pub fn solve_mat(&self, b: &CMat<T>) -> CMat<T> {
        let n = b.n;
        let mut out = CMat::zeros(n);
        for j in 0..n {
            let col: Vec<C<T>> = (0..n).map(|i| b[(i, j)]).collect();
            let x = self.solve(&col);
            for i in 0..n {
                out[(i, j)] = x[i];
            }
        }
        out
    }
}

fn givens<T: Real>(a: C<T>, b: C<T>) -> (C<T>, C<T>) {
    let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if r == T::zero() {
        (cr(T::one()), cr(T::zero()))
    } else {
        (a / r, b / r)
    }
}

/// Complex Schur decomposition `A = Z T Z*` (T upper triangular).
pub fn schur<T: Real>(a: &CMat<T>) -> (CMat<T>, CMat<T>) {
    let n = a.n;
    let mut h = a.clone();
    let mut z = CMat::identity(n);
    // Householder reduction to Hessenberg form
    for k in 0..n.saturating_sub(2) {
        let xnorm = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<T>().sqrt();
        if xnorm == T::zero() {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let ph = if x0.norm() > T::zero() { x0 / x0.norm() } else { cr(T::one()) };
        let alpha = -ph * xnorm;
        let mut v: Vec<C<T>> = vec![cr(T::zero()); n];
        for i in k + 1..n {
            v[i] = h[(i, k)];
        }
        v[k + 1] -= alpha;
        let vn = v.iter().map(|x| x.norm_sqr()).sum::<T>().sqrt();
        if vn == T::zero() {
            continue;
        }
        for x in v.iter_mut() {
            *x = *x / vn;
        }
        let two = T::lit(2.0);
        // H = P H
        for j in 0..n {
            let s = (k + 1..n).fold(cr(T::zero()), |s, i| s + v[i].conj() * h[(i, j)]);
            for i in k + 1..n {
                let vi = v[i];
                h[(i, j)] -= vi * s.scale(two);
            }
        }
        // H = H P, Z = Z P
        for m in [&mut h, &mut z] {
            for i in 0..n {
                let s = (k + 1..n).fold(cr(T::zero()), |s, j| s + m[(i, j)] * v[j]);
                for j in k + 1..n {
                    let vj = v[j];
                    m[(i, j)] -= s.scale(two) * vj.conj();
                }
            }
        }
    }
    let eps = T::epsilon();
    let mut hi = n.saturating_sub(1);
    let mut iter = 0usize;
    while hi > 0 && iter < 100 * n.max(1) * 30 {
        let mut l = hi;
        while l > 0 {
            let s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            let s = if s == T::zero() { h.max_abs() } else { s };
            if h[(l, l - 1)].norm() <= eps * s {
                h[(l, l - 1)] = cr(T::zero());
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        let a11 = h[(hi - 1, hi - 1)];
        let a12 = h[(hi - 1, hi)];
        let a21 = h[(hi, hi - 1)];
        let a22 = h[(hi, hi)];
        let mut mu = if iter % 11 == 10 {
            a22 + cr(h[(hi, hi - 1)].norm() * T::lit(0.75))
        } else {
            let tr = a11 + a22;
            let det = a11 * a22 - a12 * a21;
            let disc = (tr * tr * T::lit(0.25) - det).sqrt();
            let e1 = tr * T::lit(0.5) + disc;
            let e2 = tr * T::lit(0.5) - disc;
            if (e1 - a22).norm() < (e2 - a22).norm() {
                e1
            } else {
                e2
            }
        };
        if !mu.re.is_finite() || !mu.im.is_finite() {
            mu = a22;
        }
        for i in l..=hi {
            h[(i, i)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for k in l..hi {
            let (cc, ss) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..n {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = cc.conj() * x + ss.conj() * y;
                h[(k + 1, j)] = -ss * x + cc * y;
            }
            rots.push((k, cc, ss));
        }
        for &(k, cc, ss) in &rots {
            let top = (k + 2).min(hi);
            for i in 0..=top {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * cc + y * ss;
                h[(i, k + 1)] = -x * ss.conj() + y * cc.conj();
            }
            for i in 0..n {
                let x = z[(i, k)];
                let y = z[(i, k + 1)];
                z[(i, k)] = x * cc + y * ss;
                z[(i, k + 1)] = -x * ss.conj() + y * cc.conj();
            }
        }
        for i in l..=hi {
            h[(i, i)] += mu;
        }
    }
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = cr(T::zero());
        }
    }
    (h, z)
}

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

fn expm<T: Real>(a: &CMat<T>) -> CMat<T> {
    let n = a.n;
    let theta = T::lit(5.371_920_351_148_152);
    let nrm = a.norm_one();
    let s = if nrm > theta { ((nrm / theta).log2().ceil()).to_i32().unwrap_or(0).max(0) } else { 0 };
    let a = a.scale_re(T::lit(2f64.powi(-s)));
    let b = |k: usize| cr(T::lit(PADE13[k]));
    let id = CMat::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let lin = |c6: usize, c4: usize, c2: usize| &(&a6.scale(b(c6)) + &a4.scale(b(c4))) + &a2.scale(b(c2));
    let u_in = &(&a6 * &lin(13, 11, 9)) + &(&lin(7, 5, 3) + &id.scale(b(1)));
    let u = &a * &u_in;
    let v = &(&a6 * &lin(12, 10, 8)) + &(&lin(6, 4, 2) + &id.scale(b(0)));
    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.lu().map(|lu| lu.solve_mat(&p)).unwrap_or(id);
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// Condition number of `V` in the spectral norm.
pub fn cond2<T: Real>(v: &CMat<T>) -> T {
    match v.inverse() {
        Some(vi) => v.norm2() * vi.norm2(),
        None => T::infinity(),
    }
}

/// Matches two multisets of complex numbers greedily; returns the largest
/// distance between matched pairs.
pub fn multiset_distance<T: Real>(a: &[C<T>], b: &[C<T>]) -> T {
    if a.len() != b.len() {
        return T::infinity();
    }
    let mut used = vec![false; b.len()];
    let mut worst = T::zero();
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by(|&i, &j| a[j].norm().partial_cmp(&a[i].norm()).unwrap());
    for i in order {
        let mut best: Option<(usize, T)> = None;
        for (j, y) in b.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (a[i] - *y).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        let (j, d) = best.unwrap();
        used[j] = true;
        worst = fmax(worst, d);
    }
    worst
}

/// Complex unit vector helpers.
pub fn vec_norm<T: Real>(x: &[C<T>]) -> T {
    x.iter().map(|v| v.norm_sqr()).sum::<T>().sqrt()
}

pub fn dot<T: Real>(x: &[C<T>], y: &[C<T>]) -> C<T> {
    x.iter().zip(y).fold(cr(T::zero()), |s, (a, b)| s + *a * *b)
}

#[allow(dead_code)]
pub(crate) fn cplx<T: Real>(re: f64, im: f64) -> C<T> {
    c(T::lit(re), T::lit(im))
}
