//! Small numerical kernels: bracketed root finding, one-dimensional
//! maximization, and adaptive quadrature.
//!
//! Everything here operates on plain closures over `f64`. The functions we
//! feed in are smooth per branch/segment, so the textbook methods converge
//! without safeguards beyond an iteration cap.

/// Bisect `f` on `[a, b]` down to a relative interval width of `rel_tol`.
///
/// `f(a)` and `f(b)` must have opposite signs (a zero value on either end is
/// accepted as a root). Returns the interval midpoint.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, rel_tol: f64) -> f64 {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    debug_assert!(
        fa.signum() != fb.signum(),
        "bisect requires a sign change: f({a}) = {fa}, f({b}) = {fb}"
    );
    // 200 halvings are enough to exhaust f64 resolution on any bracket.
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if (b - a).abs() <= rel_tol * mid.abs() {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Golden-section search for the maximum of `f` on `[a, b]`.
///
/// Returns `(x_max, f(x_max))`. The interval is shrunk until its width drops
/// below `tol` (absolute, in parameter units).
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(f, a, b, fa, fm, fb, whole, tol, 50)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
}

/// Chebyshev (cosine-clustered) nodes on `[a, b]`, endpoints included,
/// ordered from `a` to `b`. Clusters points near both interval ends.
pub fn chebyshev_nodes(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|i| {
            let u = i as f64 / (n - 1) as f64;
            let w = 0.5 * (1.0 - (std::f64::consts::PI * u).cos());
            a + (b - a) * w
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bisect_finds_sqrt2() {
        let root = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14);
        assert_relative_eq!(root, 2.0_f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn golden_max_quadratic() {
        let (x, fx) = golden_max(|x| -(x - 0.3) * (x - 0.3) + 2.0, -1.0, 1.0, 1e-12);
        assert_relative_eq!(x, 0.3, epsilon = 1e-10);
        assert_relative_eq!(fx, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn integrate_exp() {
        let v = integrate(&|x: f64| x.exp(), 0.0, 1.0, 1e-12);
        assert_relative_eq!(v, 1.0_f64.exp() - 1.0, epsilon = 1e-11);
    }

    #[test]
    fn integrate_handles_reversed_interval() {
        let fwd = integrate(&|x: f64| x.sin(), 0.0, 2.0, 1e-12);
        let bwd = integrate(&|x: f64| x.sin(), 2.0, 0.0, 1e-12);
        assert_relative_eq!(fwd, -bwd, epsilon = 1e-12);
    }

    #[test]
    fn chebyshev_nodes_cluster_at_ends() {
        let nodes = chebyshev_nodes(0.0, 1.0, 64);
        assert_eq!(nodes.len(), 64);
        assert_eq!(nodes[0], 0.0);
        assert_eq!(*nodes.last().unwrap(), 1.0);
        assert!(nodes.windows(2).all(|w| w[1] > w[0]));
        // end spacing much finer than mid spacing
        let end = nodes[1] - nodes[0];
        let mid = nodes[32] - nodes[31];
        assert!(end < 0.2 * mid);
    }
}
