//! Derivative-free scalar minimization (Brent's method: golden-section steps
//! with parabolic interpolation when it is safe).

const GOLDEN: f64 = 0.381_966_011_250_105_1; // (3 - sqrt 5) / 2

/// Result of a bracketed scalar minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
}

/// Minimizes `f` on `[a, b]`. Stops when the bracket around the best point is
/// narrower than `2 (sqrt(eps) |x| + tol)` or after `max_iter` iterations.
/// NaN evaluations are treated as `+inf`.
pub fn brent_minimize<F>(mut f: F, a: f64, b: f64, tol: f64, max_iter: usize) -> Minimum
where
    F: FnMut(f64) -> f64,
{
    let mut eval = |x: f64| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let sqrt_eps = f64::EPSILON.sqrt();
    let (mut a, mut b) = if a <= b { (a, b) } else { (b, a) };

    let mut x = a + GOLDEN * (b - a);
    let mut w = x;
    let mut v = x;
    let mut fx = eval(x);
    let mut fw = fx;
    let mut fv = fx;
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;

    for iteration in 0..max_iter {
        let mid = 0.5 * (a + b);
        let tol1 = sqrt_eps * x.abs() + tol / 3.0;
        let tol2 = 2.0 * tol1;
        if (x - mid).abs() <= tol2 - 0.5 * (b - a) {
            return Minimum {
                x,
                fx,
                iterations: iteration,
            };
        }

        let mut golden_step = true;
        if e.abs() > tol1 {
            // trial parabola through x, w, v
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_prev = e;
            e = d;
            if p.abs() < (0.5 * q * e_prev).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if x < mid { tol1 } else { -tol1 };
                }
                golden_step = false;
            }
        }
        if golden_step {
            e = if x < mid { b - x } else { a - x };
            d = GOLDEN * e;
        }

        let u = if d.abs() >= tol1 {
            x + d
        } else if d > 0.0 {
            x + tol1
        } else {
            x - tol1
        };
        let fu = eval(u);

        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
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
        fx,
        iterations: max_iter,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic() {
        let m = brent_minimize(|x| (x - 1.234).powi(2) + 3.0, -10.0, 10.0, 1e-12, 200);
        assert!((m.x - 1.234).abs() < 1e-7);
        assert!((m.fx - 3.0).abs() < 1e-14);
    }

    #[test]
    fn asymmetric_unimodal() {
        // minimum of x - ln x at x = 1
        let m = brent_minimize(|x| x - x.ln(), 1e-3, 50.0, 1e-12, 200);
        assert!((m.x - 1.0).abs() < 1e-7);
    }

    #[test]
    fn monotone_function_runs_to_the_edge() {
        let m = brent_minimize(|x| x, 2.0, 5.0, 1e-10, 200);
        assert!(m.x - 2.0 < 1e-6);
    }

    #[test]
    fn nan_is_avoided() {
        let m = brent_minimize(
            |x| if x < 0.5 { f64::NAN } else { (x - 1.0).powi(2) },
            0.0,
            3.0,
            1e-10,
            200,
        );
        assert!((m.x - 1.0).abs() < 1e-6);
    }
}
