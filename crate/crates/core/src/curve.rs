//! Shared polar-curve types and the sampling driver.
//!
//! A sampled polar is stored from the normal-shock endpoint (`eta = 0`,
//! `V < V0`) to the vanishing endpoint (`xi = 1`, `eta = 0`), with `xi`
//! strictly increasing. Only the upper halfpolar is stored; the lower half
//! is its mirror image.

use crate::error::PolarError;
use crate::numerics::chebyshev_nodes;

/// Which polar chain produced a curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelKind {
    EulerPolytropic { gamma: f64 },
    EulerIdeal,
    Potential,
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::EulerPolytropic { .. } => "euler-polytropic",
            ModelKind::EulerIdeal => "euler-ideal",
            ModelKind::Potential => "potential",
        }
    }

    /// Name of the curve parameter for this model.
    pub fn param_kind(&self) -> &'static str {
        match self {
            ModelKind::EulerPolytropic { .. } => "xi",
            ModelKind::EulerIdeal => "t_ratio",
            ModelKind::Potential => "v_ratio",
        }
    }
}

/// One downstream state on a polar, in upstream-normalized coordinates
/// `(xi, eta) = u / |u0|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub xi: f64,
    pub eta: f64,
    pub v_ratio: f64,
    /// `P/P0`; absent for potential flow (no pressure in the model) and for
    /// the pressure-scale-free `gamma = 0` polytropic polar.
    pub p_ratio: Option<f64>,
    /// `T/T0`; absent where no temperature is defined.
    pub t_ratio: Option<f64>,
    /// Turning angle `atan2(eta, xi)` in radians.
    pub theta: f64,
}

impl PolarPoint {
    pub fn new(xi: f64, eta: f64, v_ratio: f64, p_ratio: Option<f64>, t_ratio: Option<f64>) -> Self {
        PolarPoint { xi, eta, v_ratio, p_ratio, t_ratio, theta: eta.atan2(xi) }
    }

    /// Residual of the density circle relation for this point's own `V/V0`:
    /// `(xi - (1+Vr)/2)^2 + eta^2 - ((1-Vr)/2)^2`.
    pub fn circle_residual(&self) -> f64 {
        let mid = 0.5 * (1.0 + self.v_ratio);
        let rad = 0.5 * (1.0 - self.v_ratio);
        ((self.xi - mid).powi(2) + self.eta * self.eta - rad * rad).abs()
    }
}

/// A planar polyline with the polar parameter attached to each vertex.
/// Convexity analysis consumes this form for both the velocity plane and
/// the mass-flux plane.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneCurve {
    pub points: Vec<[f64; 2]>,
    pub params: Vec<f64>,
}

/// An evaluable one-parameter polar family. Implemented by the polytropic
/// Euler polar (parameter `xi`), the ideal-gas Euler polar (parameter
/// `T/T0`) and the potential-flow polar (parameter `V/V0`).
pub trait PolarFamily {
    fn model(&self) -> ModelKind;
    fn mach(&self) -> f64;

    /// Parameter at the normal-shock endpoint.
    fn normal_param(&self) -> f64;
    /// Parameter at the vanishing endpoint (degenerate; never evaluated).
    fn vanish_param(&self) -> f64;
    /// Parameter of the last regular sample next to the vanishing endpoint.
    fn vanish_param_inset(&self) -> f64;
    /// The exact vanishing endpoint `(1, 0)`.
    fn vanishing_point(&self) -> PolarPoint {
        PolarPoint::new(1.0, 0.0, 1.0, self.unit_ratios().0, self.unit_ratios().1)
    }
    /// `(p_ratio, t_ratio)` values at the vanishing endpoint.
    fn unit_ratios(&self) -> (Option<f64>, Option<f64>);

    /// Evaluate the downstream state at a parameter value.
    fn point_at(&self, param: f64) -> Result<PolarPoint, PolarError>;

    /// Downstream `(c/c0)^2` for a computed point.
    fn sound_speed_ratio_sq(&self, point: &PolarPoint) -> Result<f64, PolarError>;

    /// Eos knot locations, in parameter units, strictly between the normal
    /// and vanishing parameters. Used to cluster samples around the knots.
    fn interior_knots(&self) -> Vec<f64>;

    /// Extra zeros of `eta^2` beyond the normal shock, if any were detected
    /// inside the eos domain (parameter units).
    fn extra_normal_roots(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// Sampled polar curve with model and upstream metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarCurve {
    model: ModelKind,
    m0: f64,
    points: Vec<PolarPoint>,
    params: Vec<f64>,
    extra_normal_roots: Vec<f64>,
}

impl PolarCurve {
    pub fn model(&self) -> ModelKind {
        self.model
    }

    pub fn mach(&self) -> f64 {
        self.m0
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[PolarPoint] {
        &self.points
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    /// The normal-shock endpoint (first stored point).
    pub fn normal_endpoint(&self) -> &PolarPoint {
        self.points.first().unwrap()
    }

    /// The vanishing endpoint (last stored point, exactly `(1, 0)`).
    pub fn vanishing_endpoint(&self) -> &PolarPoint {
        self.points.last().unwrap()
    }

    /// Parameters of additional `eta^2` zeros found past the normal shock.
    pub fn extra_normal_roots(&self) -> &[f64] {
        &self.extra_normal_roots
    }

    /// The curve in the velocity plane.
    pub fn u_plane(&self) -> PlaneCurve {
        PlaneCurve {
            points: self.points.iter().map(|p| [p.xi, p.eta]).collect(),
            params: self.params.clone(),
        }
    }
}

/// Sample `n` points of a polar family, from the normal endpoint to the
/// vanishing endpoint.
///
/// The grid is cosine-clustered toward both endpoints and toward every eos
/// knot crossed by the polar, so curvature analysis has resolution where the
/// curve can kink. The exact vanishing endpoint is appended analytically.
pub fn sample_family<F: PolarFamily>(family: &F, n: usize) -> Result<PolarCurve, PolarError> {
    if n < 16 {
        return Err(PolarError::TooFewSamples { min: 16, got: n });
    }
    let p_normal = family.normal_param();
    let p_inset = family.vanish_param_inset();

    // Orient so that y increases along the storage order.
    let sign = if p_inset >= p_normal { 1.0 } else { -1.0 };
    let y_lo = sign * p_normal;
    let y_hi = sign * p_inset;
    let mut cuts: Vec<f64> = vec![y_lo];
    let mut knots: Vec<f64> = family
        .interior_knots()
        .into_iter()
        .map(|k| sign * k)
        .filter(|&y| y > y_lo && y < y_hi)
        .collect();
    knots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.extend(knots);
    cuts.push(y_hi);

    let lens: Vec<f64> = cuts.windows(2).map(|w| w[1] - w[0]).collect();
    let counts = allocate_counts(n - 1, &lens, 24);

    let mut params = Vec::with_capacity(n);
    let mut points = Vec::with_capacity(n);
    for (seg, &count) in counts.iter().enumerate() {
        let nodes = chebyshev_nodes(cuts[seg], cuts[seg + 1], count);
        let skip = usize::from(seg > 0);
        for &y in &nodes[skip..] {
            let param = sign * y;
            let point = family.point_at(param)?;
            params.push(param);
            points.push(point);
        }
    }
    // Snap the normal endpoint: eta = 0 and V/V0 = xi exactly.
    if let Some(first) = points.first_mut() {
        debug_assert!(first.eta.abs() < 1e-5, "normal endpoint eta = {}", first.eta);
        first.eta = 0.0;
        first.v_ratio = first.xi;
        first.theta = 0.0;
    }
    params.push(family.vanish_param());
    points.push(family.vanishing_point());

    for i in 1..points.len() {
        if !(points[i].xi > points[i - 1].xi) {
            return Err(PolarError::NonMonotoneXi(i));
        }
    }

    Ok(PolarCurve {
        model: family.model(),
        m0: family.mach(),
        points,
        params,
        extra_normal_roots: family.extra_normal_roots(),
    })
}

/// Distribute Chebyshev node counts over contiguous segments so that the
/// concatenation (sharing knot nodes) has exactly `total` points, each
/// segment keeping at least `min_per` nodes where possible.
fn allocate_counts(total: usize, lens: &[f64], min_per: usize) -> Vec<usize> {
    let k = lens.len();
    let sum_target = total + (k - 1);
    let min_eff = min_per.min(sum_target / k).max(2);
    let total_len: f64 = lens.iter().sum();
    let quotas: Vec<f64> = lens.iter().map(|l| sum_target as f64 * l / total_len).collect();
    let mut counts: Vec<usize> = quotas.iter().map(|q| (q.floor() as usize).max(min_eff)).collect();
    // Fix the sum by moving nodes between the most over/under-quota segments.
    loop {
        let sum: usize = counts.iter().sum();
        if sum == sum_target {
            break;
        }
        if sum < sum_target {
            let i = (0..k)
                .max_by(|&a, &b| {
                    let da = quotas[a] - counts[a] as f64;
                    let db = quotas[b] - counts[b] as f64;
                    da.partial_cmp(&db).unwrap()
                })
                .unwrap();
            counts[i] += 1;
        } else {
            let i = (0..k)
                .filter(|&i| counts[i] > min_eff)
                .min_by(|&a, &b| {
                    let da = quotas[a] - counts[a] as f64;
                    let db = quotas[b] - counts[b] as f64;
                    da.partial_cmp(&db).unwrap()
                })
                .unwrap_or(0);
            if counts[i] <= 2 {
                break;
            }
            counts[i] -= 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allocate_counts_single_segment() {
        assert_eq!(allocate_counts(511, &[1.0], 24), vec![511]);
    }

    #[test]
    fn allocate_counts_with_tiny_segment() {
        let counts = allocate_counts(511, &[9.3, 0.515, 590.0], 24);
        assert_eq!(counts.iter().sum::<usize>(), 511 + 2);
        assert!(counts.iter().all(|&c| c >= 24), "{counts:?}");
    }

    #[test]
    fn allocate_counts_small_total() {
        let counts = allocate_counts(15, &[1.0, 1.0, 1.0], 24);
        assert_eq!(counts.iter().sum::<usize>(), 17);
        assert!(counts.iter().all(|&c| c >= 2));
    }

    #[test]
    fn circle_residual_zero_at_endpoints() {
        let normal = PolarPoint::new(0.66, 0.0, 0.66, None, None);
        assert!(normal.circle_residual() <= 1e-16);
        let vanish = PolarPoint::new(1.0, 0.0, 1.0, None, None);
        assert_eq!(vanish.circle_residual(), 0.0);
    }
}
