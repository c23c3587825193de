//! Full Euler shock polars.
//!
//! Two routes produce the same geometry:
//!
//! * [`PolytropicPolar`] — the classical closed form
//!   `eta^2 = (1-xi)^2 (xi - xi_n)/(xi_M - xi)`, parametrized by `xi`. Valid
//!   for any `gamma > -1`, `M0 > 1`.
//! * [`IdealPolar`] — the explicit chain for a piecewise ideal eos: given
//!   `T`, the Hugoniot relation fixes `P/P0` (positive root of a quadratic),
//!   the pressure line fixes `xi`, the ideal-gas law fixes `V`, and mass
//!   conservation fixes `eta^2`. Parametrized by `T/T0`.
//!
//! Velocities are normalized by `|u0|`, densities by `rho0`, so a point is
//! `(xi, eta)` plus thermodynamic ratios.

use crate::curve::{sample_family, ModelKind, PlaneCurve, PolarCurve, PolarFamily, PolarPoint};
use crate::eos_ideal::PiecewiseIdealEos;
use crate::error::PolarError;
use crate::numerics::bisect;

/// Slack used when deciding that a slightly negative `eta^2` is roundoff at
/// the normal-shock endpoint rather than a parameter past it.
const ETA_SQ_SLACK: f64 = 1e-10;

/// Normal-shock and far-intercept abscissae `(xi_n, xi_M)` of the polytropic
/// polar: `xi_n = (2 M0^-2 + gamma - 1)/(gamma + 1)`,
/// `xi_M = 1 + 2 M0^-2/(gamma + 1)`.
pub fn xi_bounds(m0: f64, gamma: f64) -> Result<(f64, f64), PolarError> {
    if !(m0 > 1.0) {
        return Err(PolarError::SubsonicUpstream(m0));
    }
    if !(gamma > -1.0) {
        return Err(PolarError::GammaOutOfRange(gamma));
    }
    let inv_m2 = m0.powi(-2);
    let xi_n = (2.0 * inv_m2 + gamma - 1.0) / (gamma + 1.0);
    let xi_m = 1.0 + 2.0 * inv_m2 / (gamma + 1.0);
    Ok((xi_n, xi_m))
}

/// Upper-halfpolar ordinate of the closed-form polytropic polar at `xi`.
pub fn polar_polytropic(m0: f64, gamma: f64, xi: f64) -> Result<f64, PolarError> {
    let (xi_n, xi_m) = xi_bounds(m0, gamma)?;
    if !(xi >= xi_n && xi <= 1.0) {
        return Err(PolarError::ParamOutOfRange { param: xi, lo: xi_n, hi: 1.0 });
    }
    let one_m = 1.0 - xi;
    Ok((one_m * one_m * (xi - xi_n) / (xi_m - xi)).max(0.0).sqrt())
}

/// Closed-form polytropic Euler polar for one upstream state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolytropicPolar {
    m0: f64,
    gamma: f64,
    xi_n: f64,
    xi_m: f64,
}

impl PolytropicPolar {
    pub fn new(m0: f64, gamma: f64) -> Result<Self, PolarError> {
        let (xi_n, xi_m) = xi_bounds(m0, gamma)?;
        Ok(PolytropicPolar { m0, gamma, xi_n, xi_m })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn xi_normal(&self) -> f64 {
        self.xi_n
    }

    pub fn xi_far(&self) -> f64 {
        self.xi_m
    }

    /// `P0/(rho0 |u0|^2) = 1/(gamma M0^2)`; the pressure scale is undefined
    /// at `gamma = 0`.
    pub fn p0_norm(&self) -> Option<f64> {
        (self.gamma != 0.0).then(|| 1.0 / (self.gamma * self.m0 * self.m0))
    }

    /// Enthalpy jump `[h]/|u0|^2`, via `h = gamma/(gamma-1) PV`.
    pub fn h_jump_norm(&self, pt: &PolarPoint) -> Result<f64, PolarError> {
        if self.gamma == 0.0 || self.gamma == 1.0 {
            return Err(PolarError::ThermoUndefined(self.gamma));
        }
        let p0n = self.p0_norm().unwrap();
        let pr = pt.p_ratio.ok_or(PolarError::ThermoUndefined(self.gamma))?;
        Ok(self.gamma / (self.gamma - 1.0) * p0n * (pr * pt.v_ratio - 1.0))
    }

    /// Energy jump `[e]/|u0|^2 = [h]/|u0|^2 - [PV]/|u0|^2`.
    pub fn e_jump_norm(&self, pt: &PolarPoint) -> Result<f64, PolarError> {
        let p0n = self.p0_norm().ok_or(PolarError::ThermoUndefined(self.gamma))?;
        let pr = pt.p_ratio.ok_or(PolarError::ThermoUndefined(self.gamma))?;
        Ok(self.h_jump_norm(pt)? - p0n * (pr * pt.v_ratio - 1.0))
    }

    /// Sample the polar from the normal to the vanishing endpoint.
    pub fn sample_polar(&self, n: usize) -> Result<PolarCurve, PolarError> {
        sample_family(self, n)
    }
}

impl PolarFamily for PolytropicPolar {
    fn model(&self) -> ModelKind {
        ModelKind::EulerPolytropic { gamma: self.gamma }
    }

    fn mach(&self) -> f64 {
        self.m0
    }

    fn normal_param(&self) -> f64 {
        self.xi_n
    }

    fn vanish_param(&self) -> f64 {
        1.0
    }

    fn vanish_param_inset(&self) -> f64 {
        1.0 - 1e-9 * (1.0 - self.xi_n)
    }

    fn unit_ratios(&self) -> (Option<f64>, Option<f64>) {
        let pr = (self.gamma != 0.0).then_some(1.0);
        (pr, pr)
    }

    fn point_at(&self, xi: f64) -> Result<PolarPoint, PolarError> {
        if !(xi >= self.xi_n && xi <= 1.0) {
            return Err(PolarError::ParamOutOfRange { param: xi, lo: self.xi_n, hi: 1.0 });
        }
        if xi == 1.0 {
            return Ok(self.vanishing_point());
        }
        let one_m = 1.0 - xi;
        let eta_sq = (one_m * one_m * (xi - self.xi_n) / (self.xi_m - xi)).max(0.0);
        let eta = eta_sq.sqrt();
        let v_ratio = xi - eta_sq / one_m;
        let p_ratio = self
            .p0_norm()
            .map(|p0n| 1.0 + one_m / p0n);
        let t_ratio = p_ratio.map(|pr| pr * v_ratio);
        Ok(PolarPoint::new(xi, eta, v_ratio, p_ratio, t_ratio))
    }

    fn sound_speed_ratio_sq(&self, point: &PolarPoint) -> Result<f64, PolarError> {
        // c^2 = gamma R T, so (c/c0)^2 = T/T0.
        match point.t_ratio {
            Some(tr) if tr > 0.0 && self.gamma > 0.0 => Ok(tr),
            _ => Err(PolarError::ThermoUndefined(self.gamma)),
        }
    }

    fn interior_knots(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// Temperature-parametrized Euler polar for a piecewise ideal eosology.
///
/// Construction locates the normal-shock temperature (the first zero of
/// `eta^2(T)` above `T0`) by geometric bracketing and bisection, and scans
/// the rest of the eos domain for further zeros, which are reported on the
/// sampled curve rather than assumed absent.
#[derive(Debug, Clone)]
pub struct IdealPolar<'a> {
    eos: &'a PiecewiseIdealEos,
    m0: f64,
    t0: f64,
    c0_sq: f64,
    u0_sq: f64,
    e0: f64,
    t_n_ratio: f64,
    extra_roots: Vec<f64>,
}

impl<'a> IdealPolar<'a> {
    pub fn new(eos: &'a PiecewiseIdealEos, m0: f64, t0: f64) -> Result<Self, PolarError> {
        if !(m0 > 1.0) {
            return Err(PolarError::SubsonicUpstream(m0));
        }
        let c0_sq = eos.sound_speed_sq(t0)?;
        let u0_sq = m0 * m0 * c0_sq;
        let e0 = eos.energy(t0)?;
        let mut polar = IdealPolar {
            eos,
            m0,
            t0,
            c0_sq,
            u0_sq,
            e0,
            t_n_ratio: f64::NAN,
            extra_roots: Vec::new(),
        };
        polar.t_n_ratio = polar.find_normal_shock()?;
        polar.extra_roots = polar.scan_extra_roots();
        Ok(polar)
    }

    pub fn eos(&self) -> &PiecewiseIdealEos {
        self.eos
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn c0_sq(&self) -> f64 {
        self.c0_sq
    }

    pub fn u0_sq(&self) -> f64 {
        self.u0_sq
    }

    /// `T_n/T0` at the normal-shock endpoint.
    pub fn normal_shock_t_ratio(&self) -> f64 {
        self.t_n_ratio
    }

    /// `P0/(rho0 |u0|^2) = R T0/|u0|^2`.
    pub fn p0_norm(&self) -> f64 {
        self.eos.r() * self.t0 / self.u0_sq
    }

    /// `[h]/|u0|^2` with `h = e + RT`.
    pub fn h_jump_norm(&self, pt: &PolarPoint) -> Result<f64, PolarError> {
        let t = pt.t_ratio.expect("ideal polar points carry T/T0") * self.t0;
        let e = self.eos.energy(t)?;
        Ok((e - self.e0 + self.eos.r() * (t - self.t0)) / self.u0_sq)
    }

    /// `[e]/|u0|^2`.
    pub fn e_jump_norm(&self, pt: &PolarPoint) -> Result<f64, PolarError> {
        let t = pt.t_ratio.expect("ideal polar points carry T/T0") * self.t0;
        Ok((self.eos.energy(t)? - self.e0) / self.u0_sq)
    }

    /// Entropy jump `[S]/R` from the upstream state to this point.
    pub fn entropy_jump(&self, pt: &PolarPoint) -> Result<f64, PolarError> {
        let t = pt.t_ratio.expect("ideal polar points carry T/T0") * self.t0;
        Ok(self.eos.entropy_jump(self.t0, 1.0, t, pt.v_ratio)?)
    }

    fn eta_sq_at(&self, t_ratio: f64) -> Result<f64, PolarError> {
        let (_, _, xi, v_ratio) = self.chain(t_ratio)?;
        Ok((xi - v_ratio) * (1.0 - xi))
    }

    /// The explicit chain `T -> P -> xi -> V`.
    fn chain(&self, t_ratio: f64) -> Result<(f64, f64, f64, f64), PolarError> {
        let t = t_ratio * self.t0;
        let r = self.eos.r();
        let e = self.eos.energy(t)?;
        let a = ((e - self.e0) / r + 0.5 * (t - self.t0)) / self.t0;
        let p_ratio = a + (a * a + t_ratio).sqrt();
        if !(p_ratio > 0.0) {
            return Err(PolarError::NonPositivePressure(p_ratio));
        }
        let xi = 1.0 - (p_ratio - 1.0) * r * self.t0 / self.u0_sq;
        let v_ratio = t_ratio / p_ratio;
        Ok((t, p_ratio, xi, v_ratio))
    }

    /// One polar point from the Hugoniot chain at `T/T0 >= 1`.
    pub fn point(&self, t_ratio: f64) -> Result<PolarPoint, PolarError> {
        if !(t_ratio >= 1.0) {
            return Err(PolarError::ParamOutOfRange {
                param: t_ratio,
                lo: 1.0,
                hi: self.t_n_ratio,
            });
        }
        let (_, p_ratio, xi, v_ratio) = self.chain(t_ratio)?;
        let eta_sq = (xi - v_ratio) * (1.0 - xi);
        if eta_sq < -ETA_SQ_SLACK {
            return Err(PolarError::BeyondNormalShock(t_ratio));
        }
        let eta = eta_sq.max(0.0).sqrt();
        Ok(PolarPoint::new(xi, eta, v_ratio, Some(p_ratio), Some(t_ratio)))
    }

    /// Sample the polar from the normal to the vanishing endpoint.
    pub fn sample_polar(&self, n: usize) -> Result<PolarCurve, PolarError> {
        sample_family(self, n)
    }

    fn find_normal_shock(&self) -> Result<f64, PolarError> {
        let (_, t_max) = self.eos.domain();
        let t_max_ratio = t_max / self.t0;
        let mut lo = 1.0 + 1e-9;
        if self.eta_sq_at(lo)? <= 0.0 {
            // Vanishingly weak polar; the endpoint is at T0 itself.
            return Ok(lo);
        }
        let mut hi = lo;
        loop {
            let next = (hi * 1.5).min(t_max_ratio);
            if self.eta_sq_at(next)? < 0.0 {
                hi = next;
                break;
            }
            if next >= t_max_ratio {
                return Err(PolarError::EosDomainTooShort { limit: t_max });
            }
            lo = next;
            hi = next;
        }
        let f = |t_ratio: f64| self.eta_sq_at(t_ratio).unwrap_or(-1.0);
        Ok(bisect(f, lo, hi, 1e-13))
    }

    /// Coarse scan past the normal shock for further zeros of `eta^2`.
    fn scan_extra_roots(&self) -> Vec<f64> {
        let (_, t_max) = self.eos.domain();
        let t_max_ratio = t_max / self.t0;
        let mut roots = Vec::new();
        if self.t_n_ratio >= t_max_ratio {
            return roots;
        }
        let n = 256;
        let mut prev_t = self.t_n_ratio;
        let mut prev_f = -1.0_f64;
        for i in 1..=n {
            let t = self.t_n_ratio + (t_max_ratio - self.t_n_ratio) * i as f64 / n as f64;
            let f = match self.eta_sq_at(t) {
                Ok(v) => v,
                Err(_) => break,
            };
            if prev_f < 0.0 && f >= 0.0 {
                roots.push(0.5 * (prev_t + t));
            }
            prev_t = t;
            prev_f = f;
        }
        roots
    }
}

impl PolarFamily for IdealPolar<'_> {
    fn model(&self) -> ModelKind {
        ModelKind::EulerIdeal
    }

    fn mach(&self) -> f64 {
        self.m0
    }

    fn normal_param(&self) -> f64 {
        self.t_n_ratio
    }

    fn vanish_param(&self) -> f64 {
        1.0
    }

    fn vanish_param_inset(&self) -> f64 {
        1.0 + 1e-9
    }

    fn unit_ratios(&self) -> (Option<f64>, Option<f64>) {
        (Some(1.0), Some(1.0))
    }

    fn point_at(&self, t_ratio: f64) -> Result<PolarPoint, PolarError> {
        self.point(t_ratio)
    }

    fn sound_speed_ratio_sq(&self, point: &PolarPoint) -> Result<f64, PolarError> {
        let t = point.t_ratio.expect("ideal polar points carry T/T0") * self.t0;
        Ok(self.eos.sound_speed_sq(t)? / self.c0_sq)
    }

    fn interior_knots(&self) -> Vec<f64> {
        self.eos
            .knots()
            .into_iter()
            .map(|t| t / self.t0)
            .filter(|&tr| tr > 1.0 && tr < self.t_n_ratio)
            .collect()
    }

    fn extra_normal_roots(&self) -> Vec<f64> {
        self.extra_roots.clone()
    }
}

/// Map a sampled polar into the mass-flux plane `j/(rho0 |u0|)`.
///
/// Uses `rho/rho0 = (1 - xi)/(xi(1 - xi) - eta^2)`; the vanishing endpoint
/// goes to `(1, 0)` analytically. Errors on non-compressive points, whose
/// denominator is not positive.
pub fn j_polar(curve: &PolarCurve) -> Result<PlaneCurve, PolarError> {
    let mut points = Vec::with_capacity(curve.len());
    let last = curve.len() - 1;
    for (i, pt) in curve.points().iter().enumerate() {
        if i == last {
            points.push([1.0, 0.0]);
            continue;
        }
        let denom = pt.xi * (1.0 - pt.xi) - pt.eta * pt.eta;
        if !(denom > 0.0) {
            return Err(PolarError::NonCompressive(denom));
        }
        let rho_ratio = (1.0 - pt.xi) / denom;
        points.push([rho_ratio * pt.xi, rho_ratio * pt.eta]);
    }
    Ok(PlaneCurve { points, params: curve.params().to_vec() })
}
