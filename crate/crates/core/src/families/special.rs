//! Bessel functions of the first kind and generalized Laguerre polynomials.

use crate::scalar::Real;

const SERIES_TERMS: usize = 30;
const SWITCH: f64 = 12.0;

/// `J_n(x)` for `x ≥ 0`: power series below `x = 12`, Hankel asymptotics
/// (orders 0 and 1) plus upward recurrence above.
pub fn bessel_j<T: Real>(n: u32, x: T) -> T {
    let x = x.abs();
    if x < T::lit(SWITCH) {
        return bessel_series(n, x);
    }
    let j0 = hankel(0, x);
    if n == 0 {
        return j0;
    }
    let j1 = hankel(1, x);
    let (mut a, mut b) = (j0, j1);
    for k in 1..n {
        let next = T::lit(2.0 * k as f64) / x * b - a;
        a = b;
        b = next;
    }
    b
}

fn bessel_series<T: Real>(n: u32, x: T) -> T {
    let h = x * T::lit(0.5);
    let mut term = T::one();
    for k in 1..=n {
        term = term * h / T::lit(k as f64);
    }
    let h2 = h * h;
    let mut sum = term;
    for k in 1..SERIES_TERMS {
        term = -term * h2 / T::lit((k * (k + n as usize)) as f64);
        sum += term;
    }
    sum
}

fn hankel<T: Real>(n: u32, x: T) -> T {
    let mu = T::lit(4.0 * (n * n) as f64);
    let mut p = T::one();
    let mut q = T::zero();
    let mut a = T::one();
    let eight_x = T::lit(8.0) * x;
    let mut last = T::infinity();
    for k in 1..60usize {
        let odd = T::lit(((2 * k - 1) * (2 * k - 1)) as f64);
        a = a * (mu - odd) / (T::lit(k as f64) * eight_x);
        if a.abs() >= last || a == T::zero() {
            break;
        }
        last = a.abs();
        match k % 4 {
            1 => q += a,
            2 => p -= a,
            3 => q -= a,
            _ => p += a,
        }
        if a.abs() < T::epsilon() * T::lit(1e-2) {
            break;
        }
    }
    let chi = x - (T::lit(n as f64) * T::lit(0.5) + T::lit(0.25)) * T::PI();
    (T::lit(2.0) / (T::PI() * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Generalized Laguerre polynomial `L_n^{(α)}(t)` by the three-term recurrence.
pub fn laguerre<T: Real>(n: usize, alpha: T, t: T) -> T {
    laguerre_scaled(n, alpha, t, T::one())
}

/// `e^{-t/2} L_n^{(1)}(t)`, with the weight folded into the recurrence.
pub fn laguerre_weighted<T: Real>(n: usize, t: T) -> T {
    laguerre_scaled(n, T::one(), t, (-t * T::lit(0.5)).exp())
}

fn laguerre_scaled<T: Real>(n: usize, alpha: T, t: T, w: T) -> T {
    let mut l0 = w;
    if n == 0 {
        return l0;
    }
    let mut l1 = w * (T::one() + alpha - t);
    for k in 1..n {
        let kf = T::lit(k as f64);
        let l2 = ((T::lit(2.0) * kf + T::one() + alpha - t) * l1 - (kf + alpha) * l0) / (kf + T::one());
        l0 = l1;
        l1 = l2;
    }
    l1
}

/// `G′(s)` for `G(s) = J₁(2√s)/√s`, i.e. `−J₂(2√s)/s` (limit −1/2 at 0).
pub fn g_prime<T: Real>(s: T) -> T {
    g_deriv(1, s)
}

/// `G^{(m)}(s) = (−1)^m J_{m+1}(2√s) / s^{(m+1)/2}`.
pub fn g_deriv<T: Real>(m: u32, s: T) -> T {
    let sign = if m % 2 == 0 { T::one() } else { -T::one() };
    if s < T::lit(SWITCH * SWITCH / 4.0) {
        // Σ_k (−s)^k / (k! (k+m+1)!)
        let mut fact = T::one();
        for k in 1..=(m + 1) {
            fact = fact * T::lit(k as f64);
        }
        let mut term = T::one() / fact;
        let mut sum = term;
        for k in 1..40usize {
            term = -term * s / T::lit((k * (k + m as usize + 1)) as f64);
            sum += term;
            if term.abs() < T::epsilon() * sum.abs() * T::lit(1e-3) {
                break;
            }
        }
        sign * sum
    } else {
        let r = s.sqrt();
        sign * bessel_j(m + 1, T::lit(2.0) * r) / r.powi(m as i32 + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bessel_reference_values() {
        // J0(1), J1(1), J1(5), J2(10), J1(12.5), J1(50), J0(100)
        let cases: [(u32, f64, f64); 7] = [
            (0, 1.0, 0.765_197_686_557_966_6),
            (1, 1.0, 0.440_050_585_744_933_5),
            (1, 5.0, -0.327_579_137_591_465_2),
            (2, 10.0, 0.254_630_313_685_120_6),
            (1, 12.5, -0.165_483_804_614_759_73),
            (1, 50.0, -0.097_511_828_125_175_14),
            (0, 100.0, 0.019_985_850_304_223_122),
        ];
        for (n, x, want) in cases {
            let got: f64 = bessel_j(n, x);
            assert!((got - want).abs() < 1e-10, "J{n}({x}) = {got}, want {want}");
        }
        assert_eq!(bessel_j::<f64>(1, 0.0), 0.0);
    }

    #[test]
    fn bessel_continuity_at_switch() {
        for n in 0..4 {
            let a: f64 = bessel_series(n, 12.0);
            let b: f64 = bessel_j(n, 12.0);
            assert!((a - b).abs() < 1e-10, "n = {n}: {a} vs {b}");
        }
    }

    #[test]
    fn laguerre_base_cases() {
        assert_eq!(laguerre(0, 1.0, 3.7), 1.0);
        assert!((laguerre(1, 1.0f64, 3.7) - (2.0 - 3.7)).abs() < 1e-15);
        // L_2^{(1)}(t) = 3 − 3t + t²/2
        let t = 1.3;
        assert!((laguerre(2, 1.0f64, t) - (3.0 - 3.0 * t + t * t / 2.0)).abs() < 1e-14);
        assert!((laguerre_weighted(5, 2.0) - (-1.0f64).exp() * laguerre(5, 1.0, 2.0)).abs() < 1e-14);
    }

    #[test]
    fn g_prime_limits() {
        assert!((g_prime(0.0f64) + 0.5).abs() < 1e-15);
        let s = 40.0f64;
        let direct = -bessel_j(2, 2.0 * s.sqrt()) / s;
        let series = {
            let mut sum = 0.0;
            let mut term = 0.5;
            for k in 0..80 {
                if k > 0 {
                    term *= -s / (k as f64 * (k + 2) as f64);
                }
                sum += term;
            }
            -sum
        };
        assert!((direct - series).abs() < 1e-10);
        assert!((g_prime(s) - direct).abs() < 1e-15);
    }
}

/// `[J_0(x), …, J_n(x)]` by upward recurrence from the asymptotic `J_0, J_1`
/// (requires `x ≥ 12` and `n < x`).
pub fn bessel_j_seq_large<T: Real>(n: usize, x: T) -> Vec<T> {
    debug_assert!(x >= T::lit(SWITCH));
    let mut out = Vec::with_capacity(n + 1);
    out.push(hankel(0, x));
    if n >= 1 {
        out.push(hankel(1, x));
    }
    for k in 1..n {
        let next = T::lit(2.0 * k as f64) / x * out[k] - out[k - 1];
        out.push(next);
    }
    out
}
