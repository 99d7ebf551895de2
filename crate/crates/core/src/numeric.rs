//! Small numerical routines: stabilized log-sum-exp, adaptive trapezoidal
//! integration, and Gauss-Hermite rules for the scalar oracles.

/// log(sum(exp(x_i))) with max subtraction.
///
/// Returns `-inf` for an empty slice.
pub fn logsumexp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    let s: f64 = xs.iter().map(|&x| (x - m).exp()).sum();
    m + s.ln()
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    /// Accumulated refinement residual; a (usually conservative) estimate of
    /// the truncation error.
    pub error_estimate: f64,
    /// Number of integrand evaluations spent.
    pub nodes: usize,
}

/// Adaptive trapezoidal integration of `f` over `[a, b]`.
///
/// Each panel carries its one- and two-interval trapezoid sums; their
/// Richardson combination is the panel value, and a panel is bisected until
/// splitting no longer moves that combination by more than the panel's share
/// of `tol`. Refinement therefore concentrates where the integrand curves,
/// and stops hard at `node_cap` evaluations (a blown cap is reported through
/// a loud `error_estimate`).
pub fn trapezoid_refined<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    node_cap: usize,
) -> QuadResult {
    assert!(a <= b && a.is_finite() && b.is_finite());
    if a == b {
        return QuadResult { value: 0.0, error_estimate: 0.0, nodes: 0 };
    }
    let span = b - a;

    struct Panel {
        a: f64,
        fa: f64,
        m: f64,
        fm: f64,
        b: f64,
        fb: f64,
        // Richardson-corrected two-interval value for [a, b]
        refined: f64,
    }

    // trapezoid at one and two intervals, plus the corrected combination
    fn refine(fa: f64, fm: f64, fb: f64, len: f64) -> f64 {
        let t1 = 0.5 * (fa + fb) * len;
        let t2 = 0.25 * (fa + 2.0 * fm + fb) * len;
        t2 + (t2 - t1) / 3.0
    }

    let (fa, fb) = (f(a), f(b));
    let m = 0.5 * (a + b);
    let fm = f(m);
    let mut nodes = 3usize;
    let mut stack = vec![Panel { a, fa, m, fm, b, fb, refined: refine(fa, fm, fb, span) }];
    let mut value = 0.0;
    let mut err = 0.0;
    while let Some(p) = stack.pop() {
        if nodes + 2 > node_cap {
            value += p.refined;
            err += p.refined.abs().max(1.0); // budget blown; flag loudly
            continue;
        }
        let lm = 0.5 * (p.a + p.m);
        let rm = 0.5 * (p.m + p.b);
        let (flm, frm) = (f(lm), f(rm));
        nodes += 2;
        let left = refine(p.fa, flm, p.fm, p.m - p.a);
        let right = refine(p.fm, frm, p.fb, p.b - p.m);
        let disc = left + right - p.refined;
        let local_tol = tol * (p.b - p.a) / span;
        if disc.abs() <= local_tol || (p.b - p.a) < 1e-14 * span {
            value += left + right + disc / 15.0;
            err += disc.abs() / 15.0;
        } else {
            stack.push(Panel { a: p.a, fa: p.fa, m: lm, fm: flm, b: p.m, fb: p.fm, refined: left });
            stack.push(Panel { a: p.m, fa: p.fm, m: rm, fm: frm, b: p.b, fb: p.fb, refined: right });
        }
    }
    QuadResult { value, error_estimate: err, nodes }
}

/// Nodes and weights of the `order`-point Gauss-Hermite rule, physicists'
/// convention: `int e^{-t^2} g(t) dt ~ sum w_k g(t_k)`.
///
/// Roots are found by Newton iteration on the normalized Hermite recurrence,
/// which is well-conditioned for the orders used here (<= a few hundred).
pub fn gauss_hermite(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1, "quadrature order must be positive");
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    let mut z = 0.0f64;
    for i in 0..m {
        // initial guesses, largest root first
        z = match i {
            0 => (2.0 * n as f64 + 1.0).sqrt() - 1.85575 * (2.0 * n as f64 + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * (n as f64).powf(0.426) / z,
            2 => 1.86 * z - 0.86 * nodes[0],
            3 => 1.91 * z - 0.91 * nodes[1],
            _ => 2.0 * z - nodes[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..200 {
            // normalized Hermite polynomials: H~_0 = pi^{-1/4}
            let mut p1 = std::f64::consts::PI.powf(-0.25);
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = z * (2.0 / (j as f64 + 1.0)).sqrt() * p2
                    - (j as f64 / (j as f64 + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * n as f64).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * (1.0 + z.abs()) {
                break;
            }
        }
        nodes[i] = z;
        nodes[n - 1 - i] = -z;
        weights[i] = 2.0 / (pp * pp);
        weights[n - 1 - i] = weights[i];
    }
    // largest-first above; flip to ascending
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}
