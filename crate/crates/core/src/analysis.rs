//! Curve geometry and verification: convexity verdicts with curvature-event
//! location, critical and sonic points, endpoint slope, and pointwise
//! jump-condition residuals.

use crate::curve::{sample_family, PlaneCurve, PolarCurve, PolarFamily, PolarPoint};
use crate::error::PolarError;
use crate::numerics::golden_max;
use crate::polar_euler::{j_polar, polar_polytropic, xi_bounds};

/// Which plane a polar is analyzed in. Convexity does not transfer between
/// planes, so every verdict is tied to one of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    /// Velocity plane `(xi, eta)`.
    U,
    /// Mass-flux plane `j/(rho0 |u0|)`.
    J,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    StrictlyConvex,
    NonConvex,
    Indeterminate,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::StrictlyConvex => "strictly-convex",
            Verdict::NonConvex => "non-convex",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

/// A located change of discrete-curvature sign along a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureEvent {
    /// Curve parameter at the sign change (midpoint of the two vertices).
    pub param: f64,
    pub before: f64,
    pub after: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityReport {
    pub verdict: Verdict,
    pub events: Vec<CurvatureEvent>,
    pub min_abs_curvature: f64,
}

/// Decide convexity of a sampled planar curve.
///
/// Three-point discrete curvatures are computed at every interior vertex. A
/// curvature only counts when it exceeds a rounding-noise floor of
/// `1e3 * eps * scale / chord^2`; a sign change between consecutive
/// significant curvatures is an event. With no events, the verdict is
/// strictly-convex when the turning direction is consistently significant
/// and (for an `x`-monotone curve) the chord slopes are strictly monotone.
pub fn convexity(curve: &PlaneCurve) -> Result<ConvexityReport, PolarError> {
    let pts = &curve.points;
    let n = pts.len();
    if n < 16 {
        return Err(PolarError::TooFewSamples { min: 16, got: n });
    }

    let mut kappas = Vec::with_capacity(n - 2);
    for i in 1..n - 1 {
        let d1 = [pts[i][0] - pts[i - 1][0], pts[i][1] - pts[i - 1][1]];
        let d2 = [pts[i + 1][0] - pts[i][0], pts[i + 1][1] - pts[i][1]];
        let l1 = d1[0].hypot(d1[1]);
        let l2 = d2[0].hypot(d2[1]);
        let chord = (d1[0] + d2[0]).hypot(d1[1] + d2[1]);
        let cross = d1[0] * d2[1] - d1[1] * d2[0];
        let kappa = 2.0 * cross / (l1 * l2 * chord);
        let scale = pts[i][0].abs().max(pts[i][1].abs()).max(1.0);
        let floor = 1e3 * f64::EPSILON * scale / (l1.min(l2)).powi(2);
        kappas.push((i, kappa, floor));
    }

    let min_abs_curvature = kappas
        .iter()
        .map(|&(_, k, _)| k.abs())
        .fold(f64::INFINITY, f64::min);

    let significant: Vec<(usize, f64)> = kappas
        .iter()
        .filter(|&&(_, k, floor)| k.abs() > floor)
        .map(|&(i, k, _)| (i, k))
        .collect();

    let mut events = Vec::new();
    for w in significant.windows(2) {
        let (i, ka) = w[0];
        let (j, kb) = w[1];
        if ka.signum() != kb.signum() {
            events.push(CurvatureEvent {
                param: 0.5 * (curve.params[i] + curve.params[j]),
                before: ka,
                after: kb,
            });
        }
    }

    let verdict = if !events.is_empty() {
        Verdict::NonConvex
    } else if significant.is_empty() {
        Verdict::Indeterminate
    } else if x_monotone(pts) {
        if slopes_strictly_monotone(pts) {
            Verdict::StrictlyConvex
        } else {
            Verdict::Indeterminate
        }
    } else {
        // closed-loop plane (mass flux): consistent turning is the criterion
        Verdict::StrictlyConvex
    };

    Ok(ConvexityReport { verdict, events, min_abs_curvature })
}

fn x_monotone(pts: &[[f64; 2]]) -> bool {
    pts.windows(2).all(|w| w[1][0] > w[0][0]) || pts.windows(2).all(|w| w[1][0] < w[0][0])
}

fn slopes_strictly_monotone(pts: &[[f64; 2]]) -> bool {
    let slopes: Vec<f64> = pts
        .windows(2)
        .map(|w| (w[1][1] - w[0][1]) / (w[1][0] - w[0][0]))
        .collect();
    slopes.windows(2).all(|w| w[1] < w[0]) || slopes.windows(2).all(|w| w[1] > w[0])
}

/// Sample a family and return the requested plane's polyline.
pub fn plane_curve<F: PolarFamily>(
    family: &F,
    n: usize,
    plane: Plane,
) -> Result<PlaneCurve, PolarError> {
    let curve = sample_family(family, n)?;
    match plane {
        Plane::U => Ok(curve.u_plane()),
        Plane::J => j_polar(&curve),
    }
}

/// Convexity with the grid-refinement persistence check: the curve is
/// analyzed at `n` and at `2n` points and an event only survives when both
/// grids place one at (nearly) the same parameter. A non-convex verdict
/// requires at least one surviving event.
pub fn convexity_with_refinement<F: PolarFamily>(
    family: &F,
    n: usize,
    plane: Plane,
) -> Result<ConvexityReport, PolarError> {
    let coarse = convexity(&plane_curve(family, n, plane)?)?;
    let fine_curve = plane_curve(family, 2 * n, plane)?;
    let fine = convexity(&fine_curve)?;

    let span = (fine_curve.params.last().unwrap() - fine_curve.params.first().unwrap()).abs();
    let window = 0.05 * span;
    let events: Vec<CurvatureEvent> = fine
        .events
        .iter()
        .filter(|e| coarse.events.iter().any(|c| (c.param - e.param).abs() <= window))
        .copied()
        .collect();

    let verdict = if !events.is_empty() {
        Verdict::NonConvex
    } else if coarse.verdict == Verdict::StrictlyConvex && fine.verdict == Verdict::StrictlyConvex {
        Verdict::StrictlyConvex
    } else {
        Verdict::Indeterminate
    };
    Ok(ConvexityReport { verdict, events, min_abs_curvature: fine.min_abs_curvature })
}

/// Closed-form `eta_xixi` of the polytropic Euler polar at an interior `xi`,
/// via the partial-fraction form `eta (n+m)(-4U - n + 3m)/4` with
/// `U = 1/(1-xi)`, `n = 1/(xi - xi_n)`, `m = 1/(xi_M - xi)`.
pub fn polytropic_eta_curvature(m0: f64, gamma: f64, xi: f64) -> Result<f64, PolarError> {
    let (xi_n, xi_m) = xi_bounds(m0, gamma)?;
    if !(xi > xi_n && xi < 1.0) {
        return Err(PolarError::ParamOutOfRange { param: xi, lo: xi_n, hi: 1.0 });
    }
    let u = 1.0 / (1.0 - xi);
    let nn = 1.0 / (xi - xi_n);
    let mm = 1.0 / (xi_m - xi);
    let bracket = (nn + mm) * 0.25 * (-4.0 * u - nn + 3.0 * mm);
    let eta = polar_polytropic(m0, gamma, xi)?;
    Ok(eta * bracket)
}

/// A located maximum of the turning angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub param: f64,
    pub xi: f64,
    pub eta: f64,
    /// Maximum turning angle, radians.
    pub theta: f64,
    /// Downstream Mach number, when the model defines one at this point.
    pub downstream_mach: Option<f64>,
}

/// All local turning-angle maxima of a polar, refined by golden section.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalReport {
    pub maxima: Vec<CriticalPoint>,
}

impl CriticalReport {
    /// The global maximum.
    pub fn best(&self) -> &CriticalPoint {
        self.maxima
            .iter()
            .max_by(|a, b| a.theta.partial_cmp(&b.theta).unwrap())
            .unwrap()
    }

    pub fn is_unique(&self) -> bool {
        self.maxima.len() == 1
    }
}

/// Locate the critical point(s): coarse scan over `scan_n` samples, then
/// golden-section refinement of `theta(parameter)` between the scan
/// neighbors of each discrete local maximum.
pub fn critical_point<F: PolarFamily>(family: &F, scan_n: usize) -> Result<CriticalReport, PolarError> {
    let curve = sample_family(family, scan_n)?;
    let pts = curve.points();
    let params = curve.params();
    let theta_at = |p: f64| family.point_at(p).map_or(f64::NEG_INFINITY, |pt| pt.theta);

    let mut maxima: Vec<CriticalPoint> = Vec::new();
    for i in 1..pts.len() - 1 {
        if !(pts[i].theta > pts[i - 1].theta && pts[i].theta >= pts[i + 1].theta) {
            continue;
        }
        let (a, b) = if params[i - 1] <= params[i + 1] {
            (params[i - 1], params[i + 1])
        } else {
            (params[i + 1], params[i - 1])
        };
        let tol = 1e-10 * a.abs().max(b.abs()).max(1.0);
        let (p_star, _) = golden_max(theta_at, a, b, tol);
        let point = family.point_at(p_star)?;
        let downstream_mach = family
            .sound_speed_ratio_sq(&point)
            .ok()
            .map(|c2r| ((point.xi * point.xi + point.eta * point.eta) * family.mach().powi(2) / c2r).sqrt());
        // discard duplicates from plateau-straddling scan maxima
        if maxima.iter().any(|m: &CriticalPoint| (m.param - p_star).abs() <= 1e-8 * p_star.abs().max(1.0)) {
            continue;
        }
        maxima.push(CriticalPoint {
            param: p_star,
            xi: point.xi,
            eta: point.eta,
            theta: point.theta,
            downstream_mach,
        });
    }
    Ok(CriticalReport { maxima })
}

/// Where the downstream flow crosses Mach 1 along a polar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SonicResult {
    Crossing { param: f64, xi: f64, eta: f64 },
    AllSupersonic,
    AllSubsonic,
}

/// Locate the sonic point: the zero of `|u|^2 - c^2` along the curve, by
/// bisection between the bracketing samples. With no sign change the polar
/// is reported as entirely sub- or supersonic.
pub fn sonic_point<F: PolarFamily>(family: &F, scan_n: usize) -> Result<SonicResult, PolarError> {
    let curve = sample_family(family, scan_n)?;
    let m0_sq = family.mach() * family.mach();
    let excess = |pt: &PolarPoint| -> Result<f64, PolarError> {
        let c2r = family.sound_speed_ratio_sq(pt)?;
        Ok((pt.xi * pt.xi + pt.eta * pt.eta) * m0_sq - c2r)
    };
    let mut prev = excess(&curve.points()[0])?;
    for i in 1..curve.len() {
        let here = excess(&curve.points()[i])?;
        if prev == 0.0 || prev.signum() != here.signum() {
            let (a, b) = (curve.params()[i - 1], curve.params()[i]);
            let f = |p: f64| {
                family
                    .point_at(p)
                    .and_then(|pt| excess(&pt))
                    .unwrap_or(f64::NAN)
            };
            let root = crate::numerics::bisect(f, a, b, 1e-12);
            let pt = family.point_at(root)?;
            return Ok(SonicResult::Crossing { param: root, xi: pt.xi, eta: pt.eta });
        }
        prev = here;
    }
    Ok(if prev > 0.0 { SonicResult::AllSupersonic } else { SonicResult::AllSubsonic })
}

/// Slope of the polar at the vanishing endpoint: `-tan(arcsin(1/M0))`, the
/// Mach-angle direction of acoustic fronts.
pub fn vanishing_slope(m0: f64) -> Result<f64, PolarError> {
    if !(m0 > 1.0) {
        return Err(PolarError::SubsonicUpstream(m0));
    }
    Ok(-(1.0 / m0).asin().tan())
}

/// One-sided chord slope of a sampled curve at its vanishing endpoint.
pub fn vanishing_chord_slope(curve: &PolarCurve) -> f64 {
    let pts = curve.points();
    let last = &pts[pts.len() - 1];
    let prev = &pts[pts.len() - 2];
    (last.eta - prev.eta) / (last.xi - prev.xi)
}

/// Normalized residuals of the four full Euler jump conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerResiduals {
    /// Mass flux: `[j^n]` relative to the upstream normal flux.
    pub mass: f64,
    /// Tangential velocity: `[u.t]/|u0|`.
    pub tangential: f64,
    /// Normal momentum: `([P] + (j^n)^2 [V])/(rho0 |u0|^2)`.
    pub momentum: f64,
    /// Total enthalpy: `[H]/|u0|^2`.
    pub energy: f64,
}

impl EulerResiduals {
    pub fn max_abs(&self) -> f64 {
        self.mass
            .abs()
            .max(self.tangential.abs())
            .max(self.momentum.abs())
            .max(self.energy.abs())
    }
}

/// Evaluate the Euler jump conditions at a polar point, with the downstream
/// normal taken along the velocity jump. Returns `None` at the vanishing
/// endpoint, where the normal is undefined, or when the point lacks a
/// pressure ratio.
pub fn shock_residuals_euler(
    pt: &PolarPoint,
    p0_norm: f64,
    h_jump_norm: f64,
) -> Option<EulerResiduals> {
    let p_ratio = pt.p_ratio?;
    let dx = 1.0 - pt.xi;
    let l_sq = dx * dx + pt.eta * pt.eta;
    if l_sq < 1e-28 {
        return None;
    }
    let l = l_sq.sqrt();
    // n = (u0 - u)/|u0 - u|, t is its 90-degree counterclockwise rotation
    let (nx, ny) = (dx / l, -pt.eta / l);
    let (tx, ty) = (-ny, nx);
    let mass = (pt.xi * dx - pt.eta * pt.eta) / (pt.v_ratio * dx) - 1.0;
    let tangential = (pt.xi - 1.0) * tx + pt.eta * ty;
    let jn = nx; // (u0, 0).n / |u0|
    let momentum = p0_norm * (p_ratio - 1.0) + jn * jn * (pt.v_ratio - 1.0);
    let energy = h_jump_norm + 0.5 * (pt.xi * pt.xi + pt.eta * pt.eta - 1.0);
    Some(EulerResiduals { mass, tangential, momentum, energy })
}

/// Hugoniot residual in the `[e] + <P>[V] = 0` form, normalized by `|u0|^2`.
pub fn hugoniot_residual(pt: &PolarPoint, p0_norm: f64, e_jump_norm: f64) -> Option<f64> {
    let p_ratio = pt.p_ratio?;
    Some(e_jump_norm + 0.5 * p0_norm * (p_ratio + 1.0) * (pt.v_ratio - 1.0))
}

/// Normalized residuals of the three potential-flow jump conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialResiduals {
    pub mass: f64,
    pub tangential: f64,
    /// Bernoulli form `-2[h]/|u0|^2 - (xi^2 + eta^2 - 1)`.
    pub bernoulli: f64,
}

impl PotentialResiduals {
    pub fn max_abs(&self) -> f64 {
        self.mass.abs().max(self.tangential.abs()).max(self.bernoulli.abs())
    }
}

/// Evaluate the potential-flow jump conditions at a polar point. Returns
/// `None` at the vanishing endpoint.
pub fn shock_residuals_potential(pt: &PolarPoint, h_jump_norm: f64) -> Option<PotentialResiduals> {
    let dx = 1.0 - pt.xi;
    let l_sq = dx * dx + pt.eta * pt.eta;
    if l_sq < 1e-28 {
        return None;
    }
    let l = l_sq.sqrt();
    let (nx, ny) = (dx / l, -pt.eta / l);
    let (tx, ty) = (-ny, nx);
    let mass = (pt.xi * dx - pt.eta * pt.eta) / (pt.v_ratio * dx) - 1.0;
    let tangential = (pt.xi - 1.0) * tx + pt.eta * ty;
    let bernoulli = -2.0 * h_jump_norm - (pt.xi * pt.xi + pt.eta * pt.eta - 1.0);
    Some(PotentialResiduals { mass, tangential, bernoulli })
}

/// Residual of the density circle relation at a point.
pub fn circle_check(pt: &PolarPoint) -> f64 {
    pt.circle_residual()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar_euler::{IdealPolar, PolytropicPolar};
    use crate::polar_potential::PotentialPolar;
    use crate::{eos_barotropic::BarotropicEos, eos_ideal::PiecewiseIdealEos};
    use approx::assert_relative_eq;

    #[test]
    fn vanishing_slope_values() {
        assert_relative_eq!(vanishing_slope(1.3).unwrap(), -1.203859, max_relative = 1e-6);
        assert_relative_eq!(vanishing_slope(2.0_f64.sqrt()).unwrap(), -1.0, epsilon = 1e-12);
        let far = vanishing_slope(1e9).unwrap();
        assert!(far < 0.0 && far > -1e-8);
        assert!(vanishing_slope(0.8).is_err());
    }

    #[test]
    fn polytropic_curvature_is_negative_and_matches_fd() {
        for &m0 in &[1.05, 1.3, 2.0, 5.0, 45.0] {
            for &gamma in &[-0.9, -0.5, 0.1, 1.0, 1.4, 5.0 / 3.0, 3.0] {
                let (xi_n, _) = xi_bounds(m0, gamma).unwrap();
                let xi = 0.5 * (xi_n + 1.0);
                let val = polytropic_eta_curvature(m0, gamma, xi).unwrap();
                assert!(val < 0.0, "M0 = {m0}, gamma = {gamma}: eta_xixi = {val}");
            }
        }
        // finite-difference cross-check at mid-polar
        let (m0, gamma) = (1.3, 1.4);
        let (xi_n, _) = xi_bounds(m0, gamma).unwrap();
        let xi = 0.5 * (xi_n + 1.0);
        let h = 1e-5;
        let fd = (polar_polytropic(m0, gamma, xi + h).unwrap()
            - 2.0 * polar_polytropic(m0, gamma, xi).unwrap()
            + polar_polytropic(m0, gamma, xi - h).unwrap())
            / (h * h);
        assert_relative_eq!(polytropic_eta_curvature(m0, gamma, xi).unwrap(), fd, max_relative = 1e-6);
    }

    #[test]
    fn polytropic_curvature_partial_fraction_identity() {
        let (m0, gamma) = (1.3, 1.4);
        let (xi_n, xi_m) = xi_bounds(m0, gamma).unwrap();
        for i in 1..64 {
            let xi = xi_n + (1.0 - xi_n) * i as f64 / 64.0;
            let u = 1.0 / (1.0 - xi);
            let nn = 1.0 / (xi - xi_n);
            let mm = 1.0 / (xi_m - xi);
            let bracket = (nn + mm) * 0.25 * (-4.0 * u - nn + 3.0 * mm);
            let l = -u + 0.5 * nn + 0.5 * mm;
            let l_xi = -u * u - 0.5 * nn * nn + 0.5 * mm * mm;
            assert_relative_eq!(bracket, l * l + l_xi, max_relative = 1e-12);
        }
    }

    #[test]
    fn convexity_of_baseline_polar() {
        let polar = PolytropicPolar::new(1.3, 1.4).unwrap();
        let report = convexity(&plane_curve(&polar, 512, Plane::U).unwrap()).unwrap();
        assert_eq!(report.verdict, Verdict::StrictlyConvex);
        assert!(report.events.is_empty());
        let refined = convexity_with_refinement(&polar, 512, Plane::U).unwrap();
        assert_eq!(refined.verdict, Verdict::StrictlyConvex);
        let j = convexity_with_refinement(&polar, 512, Plane::J).unwrap();
        assert_eq!(j.verdict, Verdict::StrictlyConvex);
    }

    #[test]
    fn convexity_straight_line_is_indeterminate() {
        let pts: Vec<[f64; 2]> = (0..32).map(|i| [i as f64, 2.0 * i as f64]).collect();
        let params: Vec<f64> = (0..32).map(|i| i as f64).collect();
        let report = convexity(&PlaneCurve { points: pts, params }).unwrap();
        assert_eq!(report.verdict, Verdict::Indeterminate);
        assert_eq!(report.min_abs_curvature, 0.0);
    }

    #[test]
    fn convexity_detects_synthetic_inflection() {
        // y = x^3 on [-1, 1] has a genuine inflection at 0
        let pts: Vec<[f64; 2]> = (0..101)
            .map(|i| {
                let x = -1.0 + 2.0 * i as f64 / 100.0;
                [x, x * x * x]
            })
            .collect();
        let params: Vec<f64> = pts.iter().map(|p| p[0]).collect();
        let report = convexity(&PlaneCurve { points: pts, params }).unwrap();
        assert_eq!(report.verdict, Verdict::NonConvex);
        assert_eq!(report.events.len(), 1);
        assert!(report.events[0].param.abs() < 0.05);
    }

    #[test]
    fn too_few_points_rejected() {
        let pts: Vec<[f64; 2]> = (0..8).map(|i| [i as f64, 0.0]).collect();
        let params: Vec<f64> = (0..8).map(|i| i as f64).collect();
        assert!(convexity(&PlaneCurve { points: pts, params }).is_err());
    }

    #[test]
    fn critical_point_against_brute_force() {
        let polar = PolytropicPolar::new(1.3, 1.4).unwrap();
        let report = critical_point(&polar, 1024).unwrap();
        assert!(report.is_unique(), "maxima: {:?}", report.maxima);
        let best = report.best();

        // brute force over 1e6 xi values
        let (xi_n, _) = xi_bounds(1.3, 1.4).unwrap();
        let mut theta_max = 0.0_f64;
        for i in 0..1_000_000 {
            let xi = xi_n + (1.0 - xi_n) * i as f64 / 999_999.0;
            let eta = polar_polytropic(1.3, 1.4, xi).unwrap();
            theta_max = theta_max.max(eta.atan2(xi));
        }
        assert!((best.theta - theta_max).abs() <= 1e-6);
        let deg = best.theta.to_degrees();
        assert!((deg - 6.66).abs() <= 0.05, "theta_max = {deg} deg");
        // critical shock is subsonic
        assert!(best.downstream_mach.unwrap() < 1.0);
    }

    #[test]
    fn critical_angle_vanishes_at_mach_one() {
        let polar = PolytropicPolar::new(1.0 + 1e-5, 1.4).unwrap();
        let report = critical_point(&polar, 256).unwrap();
        assert!(report.best().theta < 1e-2);
    }

    #[test]
    fn sonic_point_lies_weak_side_of_critical() {
        let polar = PolytropicPolar::new(1.3, 1.4).unwrap();
        let critical = critical_point(&polar, 1024).unwrap();
        match sonic_point(&polar, 1024).unwrap() {
            SonicResult::Crossing { param, .. } => {
                assert!(param > critical.best().param, "sonic at xi = {param}");
            }
            other => panic!("expected a sonic crossing, got {other:?}"),
        }
        // normal shock is subsonic, vanishing limit is supersonic
        let curve = polar.sample_polar(64).unwrap();
        let normal = curve.normal_endpoint();
        let c2r = polar.sound_speed_ratio_sq(normal).unwrap();
        let mach_sq = (normal.xi * normal.xi) * 1.3 * 1.3 / c2r;
        assert!(mach_sq < 1.0);
        let vanish = curve.vanishing_endpoint();
        let c2r_v = polar.sound_speed_ratio_sq(vanish).unwrap();
        assert_relative_eq!((vanish.xi * 1.3 / c2r_v.sqrt()), 1.3, epsilon = 1e-12);
    }

    #[test]
    fn euler_residuals_vanish_on_ideal_chain() {
        let eos = PiecewiseIdealEos::polytropic(1.0, 1.4, 0.5, 40.0, 1.0).unwrap();
        let polar = IdealPolar::new(&eos, 1.3, 1.0).unwrap();
        let curve = polar.sample_polar(128).unwrap();
        let mut checked = 0;
        for pt in curve.points() {
            let h_jump = polar.h_jump_norm(pt).unwrap();
            let e_jump = polar.e_jump_norm(pt).unwrap();
            if let Some(res) = shock_residuals_euler(pt, polar.p0_norm(), h_jump) {
                assert!(res.max_abs() <= 1e-10, "residuals {res:?}");
                let hug = hugoniot_residual(pt, polar.p0_norm(), e_jump).unwrap();
                assert!(hug.abs() <= 1e-10, "hugoniot {hug:e}");
                checked += 1;
            }
        }
        assert!(checked >= 127); // only the vanishing endpoint is skipped
    }

    #[test]
    fn vanishing_point_is_skipped() {
        let polar = PolytropicPolar::new(1.3, 1.4).unwrap();
        let curve = polar.sample_polar(64).unwrap();
        let vanish = curve.vanishing_endpoint();
        assert!(shock_residuals_euler(vanish, polar.p0_norm().unwrap(), 0.0).is_none());
    }

    #[test]
    fn perturbed_state_trips_the_residuals() {
        let eos = PiecewiseIdealEos::polytropic(1.0, 1.4, 0.5, 40.0, 1.0).unwrap();
        let polar = IdealPolar::new(&eos, 1.3, 1.0).unwrap();
        let good = polar.point(1.1).unwrap();
        let mut bad = good;
        bad.v_ratio *= 1.01;
        let res = shock_residuals_euler(&bad, polar.p0_norm(), polar.h_jump_norm(&bad).unwrap()).unwrap();
        assert!(res.mass.abs() > 1e-4, "negative control too small: {:?}", res);
    }

    #[test]
    fn potential_residuals_vanish_on_chain() {
        let eos = BarotropicEos::gamma_law(1.4, 1e-3, 1.5).unwrap();
        let polar = PotentialPolar::new(&eos, 1.3).unwrap();
        let curve = polar.sample_polar(128).unwrap();
        for pt in curve.points() {
            let h_jump = polar.h_jump_norm(pt).unwrap();
            if let Some(res) = shock_residuals_potential(pt, h_jump) {
                assert!(res.mass.abs() <= 1e-10, "mass {:e}", res.mass);
                assert!(res.tangential.abs() <= 1e-15);
                assert!(res.bernoulli.abs() <= 1e-12, "bernoulli {:e}", res.bernoulli);
            }
            assert!(circle_check(pt) <= 1e-12);
        }
    }
}
