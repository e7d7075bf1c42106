//! Scaled generalised exponential integral `e^x E_n(x)` for complex `x` with `Re x ≥ 0`.

use num_complex::Complex64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const MAX_ITER: usize = 100_000;

/// Returns `e^x E_n(x) = ∫_1^∞ e^{-x(t-1)} t^{-n} dt` for `n ≥ 2`.
pub fn scaled_expint(n: u32, x: Complex64) -> Complex64 {
    debug_assert!(n >= 2);
    if x == Complex64::new(0.0, 0.0) {
        return Complex64::new(1.0 / (n - 1) as f64, 0.0);
    }
    if x.norm() < 1.0 {
        series(n, x) * x.exp()
    } else {
        continued_fraction(n, x)
    }
}

fn series(n: u32, x: Complex64) -> Complex64 {
    let nm1 = (n - 1) as i64;
    let mut ans = Complex64::new(1.0 / nm1 as f64, 0.0);
    let mut fact = Complex64::new(1.0, 0.0);
    for i in 1..MAX_ITER as i64 {
        fact *= -x / i as f64;
        let del = if i != nm1 {
            -fact / (i - nm1) as f64
        } else {
            let psi = -EULER_GAMMA + (1..=nm1).map(|k| 1.0 / k as f64).sum::<f64>();
            fact * (-x.ln() + psi)
        };
        ans += del;
        if i > nm1 && del.norm() < ans.norm() * 1e-17 {
            break;
        }
    }
    ans
}

// modified Lentz
fn continued_fraction(n: u32, x: Complex64) -> Complex64 {
    let tiny = 1e-300;
    let n = n as f64;
    let mut b = x + n;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (n - 1.0 + i as f64);
        b += 2.0;
        d = 1.0 / (d * an + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    // Composite Simpson on ∫_1^T e^{-x(t-1)} t^{-n} dt plus a crude tail; only
    // used at arguments where the integrand decays fast.
    fn brute(n: u32, x: Complex64) -> Complex64 {
        let upper = 1.0 + 60.0 / x.re.max(1e-3);
        let steps = 400_000;
        let h = (upper - 1.0) / steps as f64;
        let f = |t: f64| (-x * (t - 1.0)).exp() * t.powi(-(n as i32));
        let mut acc = f(1.0) + f(upper);
        for k in 1..steps {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            acc += f(1.0 + k as f64 * h) * w;
        }
        acc * h / 3.0
    }

    #[test]
    fn zero_argument() {
        assert_eq!(scaled_expint(3, Complex64::new(0.0, 0.0)).re, 0.5);
    }

    #[test]
    fn matches_quadrature_on_both_branches() {
        for &(n, x) in &[
            (2u32, Complex64::new(0.5, 0.0)),
            (3, Complex64::new(0.3, 0.2)),
            (5, Complex64::new(2.5, 0.0)),
            (4, Complex64::new(3.0, -1.5)),
        ] {
            let got = scaled_expint(n, x);
            let want = brute(n, x);
            assert!((got - want).norm() < 1e-10, "n={n} x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn recurrence_holds_on_imaginary_axis() {
        // E_{n+1}(x) = (e^{-x} - x E_n(x)) / n, scaled: U_{n+1} = (1 - x U_n) / n
        for &x in &[Complex64::new(0.0, 0.4), Complex64::new(0.0, 7.0), Complex64::new(0.0, -30.0)] {
            for n in 2..5u32 {
                let lhs = scaled_expint(n + 1, x);
                let rhs = (1.0 - x * scaled_expint(n, x)) / n as f64;
                assert!((lhs - rhs).norm() < 1e-13, "n={n} x={x}");
            }
        }
    }
}
