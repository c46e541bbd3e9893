//! One-dimensional extremum location and root bracketing.

/// Golden-section ratio `(3 − √5) / 2`.
const CGOLD: f64 = 0.381_966_011_250_105_1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Minimizes `f` on `[lo, hi]` by golden-section search with parabolic
/// interpolation steps (Brent's scheme). Stops when the bracket half-width
/// drops below `tol`.
pub fn minimize<F>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Minimum
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut x = a + CGOLD * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x);
    let (mut fw, mut fv) = (fx, fx);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    let mut iterations = 0;

    while iterations < max_iter {
        iterations += 1;
        let mid = 0.5 * (a + b);
        let tol1 = tol + f64::EPSILON * x.abs();
        let tol2 = 2.0 * tol1;
        if (x - mid).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            } else {
                q = -q;
            }
            let e_prev = e;
            if p.abs() < (0.5 * q * e_prev).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(mid - x);
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= mid { a - x } else { b - x };
            d = CGOLD * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else {
            x + tol1.copysign(d)
        };
        let fu = f(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Minimum {
        x,
        value: fx,
        iterations,
    }
}

/// Maximizes `f` on `[lo, hi]`; see [`minimize`].
pub fn maximize<F>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Minimum
where
    F: FnMut(f64) -> f64,
{
    let m = minimize(|x| -f(x), lo, hi, tol, max_iter);
    Minimum {
        value: -m.value,
        ..m
    }
}

/// Bisection for `f(x) = 0` on a bracket with a sign change.
///
/// Returns `None` when `f(lo)` and `f(hi)` have the same strict sign. Stops as
/// soon as `|f(x)| <= ftol` or the bracket collapses to adjacent floats.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, ftol: f64, max_iter: usize) -> Option<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    let mut mid = 0.5 * (a + b);
    for _ in 0..max_iter {
        mid = 0.5 * (a + b);
        if mid <= a.min(b) || mid >= a.max(b) {
            break;
        }
        let fm = f(mid);
        if fm.abs() <= ftol {
            return Some(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Some(mid)
}

/// Central finite-difference derivative with step `h`.
pub fn central_difference<F>(mut f: F, x: f64, h: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    (f(x + h) - f(x - h)) / (2.0 * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn finds_quadratic_minimum() {
        let m = minimize(|x| (x - 0.3).powi(2) + 1.0, -2.0, 5.0, 1e-10, 200);
        assert!((m.x - 0.3).abs() < 1e-8);
        assert_relative_eq!(m.value, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn finds_non_smooth_minimum() {
        let m = minimize(|x: f64| (x - 1.25).abs(), 0.0, 4.0, 1e-11, 500);
        assert!((m.x - 1.25).abs() < 1e-9);
    }

    #[test]
    fn maximizes_cosine() {
        let m = maximize(f64::cos, -1.0, 2.0, 1e-10, 200);
        assert!(m.x.abs() < 1e-8);
        assert_relative_eq!(m.value, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn bisection_root() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14, 200).unwrap();
        assert_relative_eq!(r, 2f64.sqrt(), epsilon = 1e-14);
        assert!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 100).is_none());
        // Decreasing function works too.
        let r = bisect(|x| 1.0 - x, 0.0, 3.0, 0.0, 200).unwrap();
        assert_relative_eq!(r, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn difference_of_cubic() {
        let d = central_difference(|x| x * x * x, 2.0, 1e-5);
        assert_relative_eq!(d, 12.0, epsilon = 1e-8);
    }
}
