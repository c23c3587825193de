//! Full potential flow shock polars, parametrized by downstream volume.
//!
//! The Bernoulli relation fixes `xi` explicitly as a function of `V`:
//! `xi = 1 + (-2 [h]/|u0|^2)/(1 + V/V0)`, and mass conservation gives
//! `eta^2 = (xi - V/V0)(1 - xi)`. The map `xi -> V` is strictly increasing
//! on the compressive side, so the curve is stored against `V` and never
//! inverted.
//!
//! The analytic second derivative `eta_xixi` follows the same chain:
//! `V_xi = (1 + V/V0)/D` and `V_xixi = (2 h_VV V_xi^2/|u0|^2 + 2 V_xi)/D`
//! with `D = 1 - xi - 2 h_V V0/|u0|^2 > 0`, so `eta` is strictly concave
//! whenever `h_VV >= 0`.

use crate::curve::{sample_family, ModelKind, PolarCurve, PolarFamily, PolarPoint};
use crate::eos_barotropic::BarotropicEos;
use crate::error::PolarError;
use crate::numerics::bisect;

const ETA_SQ_SLACK: f64 = 1e-10;

/// `eta^2 = (xi - V/V0)(1 - xi)`, the circle relation solved for `eta`.
pub fn eta_of(xi: f64, v_ratio: f64) -> Result<f64, PolarError> {
    let eta_sq = (xi - v_ratio) * (1.0 - xi);
    if eta_sq < -ETA_SQ_SLACK {
        return Err(PolarError::InconsistentState(eta_sq));
    }
    Ok(eta_sq.max(0.0).sqrt())
}

/// Potential-flow polar for one upstream state (`V0 = 1`, `|u0| = M0 c0`).
#[derive(Debug, Clone)]
pub struct PotentialPolar<'a> {
    eos: &'a BarotropicEos,
    m0: f64,
    c0_sq: f64,
    u0_sq: f64,
    v_n: f64,
}

impl<'a> PotentialPolar<'a> {
    pub fn new(eos: &'a BarotropicEos, m0: f64) -> Result<Self, PolarError> {
        if !(m0 > 1.0) {
            return Err(PolarError::SubsonicUpstream(m0));
        }
        let c0_sq = eos.sound_speed_sq(1.0)?;
        let u0_sq = m0 * m0 * c0_sq;
        let mut polar = PotentialPolar { eos, m0, c0_sq, u0_sq, v_n: f64::NAN };
        polar.v_n = polar.find_normal_shock()?;
        Ok(polar)
    }

    pub fn eos(&self) -> &BarotropicEos {
        self.eos
    }

    pub fn c0_sq(&self) -> f64 {
        self.c0_sq
    }

    pub fn u0_sq(&self) -> f64 {
        self.u0_sq
    }

    /// `V_n/V0` at the normal-shock endpoint.
    pub fn normal_shock_v(&self) -> f64 {
        self.v_n
    }

    /// `xi(V)` from the Bernoulli relation.
    pub fn xi_of_v(&self, v: f64) -> Result<f64, PolarError> {
        let h = self.eos.enthalpy(v)?;
        Ok(1.0 + (-2.0 * h / self.u0_sq) / (1.0 + v))
    }

    /// `[h]/|u0|^2` at a point.
    pub fn h_jump_norm(&self, pt: &PolarPoint) -> Result<f64, PolarError> {
        Ok(self.eos.enthalpy(pt.v_ratio)? / self.u0_sq)
    }

    /// Bernoulli residual `-2[h]/|u0|^2 - (xi^2 + eta^2 - 1)`.
    pub fn bernoulli_residual(&self, pt: &PolarPoint) -> Result<f64, PolarError> {
        let h = self.eos.enthalpy(pt.v_ratio)?;
        Ok(-2.0 * h / self.u0_sq - (pt.xi * pt.xi + pt.eta * pt.eta - 1.0))
    }

    /// Sample the polar from the normal to the vanishing endpoint.
    pub fn sample_polar(&self, n: usize) -> Result<PolarCurve, PolarError> {
        sample_family(self, n)
    }

    /// Analytic `eta_xixi` strictly inside the compressive polar.
    pub fn eta_second_derivative(&self, v: f64) -> Result<f64, PolarError> {
        let h_vv = self.eos.enthalpy_curvature(v)?;
        self.eta_curvature_with_hvv(v, h_vv)
    }

    /// `eta_xixi` at an eos knot, one-sided: only `h_VV` differs between the
    /// sides because `h` and `c^2` are knot-continuous.
    pub fn eta_second_derivative_one_sided(&self, knot: f64, below: bool) -> Result<f64, PolarError> {
        let seg = self
            .eos
            .segments()
            .iter()
            .find(|s| if below { s.v_hi() == knot } else { s.v_lo() == knot })
            .ok_or(PolarError::ParamOutOfRange { param: knot, lo: self.v_n, hi: 1.0 })?;
        self.eta_curvature_with_hvv(knot, seg.enthalpy_curvature(knot))
    }

    /// Knots strictly inside the compressive range where the one-sided
    /// curvatures disagree in sign; each entry is `(V, below, above)`.
    pub fn knot_curvature_events(&self) -> Result<Vec<(f64, f64, f64)>, PolarError> {
        let mut events = Vec::new();
        for knot in self.eos.knots() {
            if knot <= self.v_n || knot >= 1.0 {
                continue;
            }
            let below = self.eta_second_derivative_one_sided(knot, true)?;
            let above = self.eta_second_derivative_one_sided(knot, false)?;
            if below.signum() != above.signum() {
                events.push((knot, below, above));
            }
        }
        Ok(events)
    }

    fn eta_curvature_with_hvv(&self, v: f64, h_vv: f64) -> Result<f64, PolarError> {
        let xi = self.xi_of_v(v)?;
        let a = xi - v;
        let b = 1.0 - xi;
        let eta_sq = a * b;
        if !(eta_sq > 0.0) {
            return Err(PolarError::EndpointDegenerate(v));
        }
        let h_v = self.eos.enthalpy_slope(v)?;
        let d = 1.0 - xi - 2.0 * h_v / self.u0_sq;
        let v_xi = (1.0 + v) / d;
        let v_xixi = (2.0 * h_vv * v_xi * v_xi / self.u0_sq + 2.0 * v_xi) / d;
        let a_xi = 1.0 - v_xi;
        let b_xi = -1.0;
        let num = -2.0 * v_xixi * a * b * b - (b * a_xi - a * b_xi).powi(2);
        Ok(num / (4.0 * eta_sq.powf(1.5)))
    }

    /// `V_xi/V0`, positive along the whole compressive polar.
    pub fn v_slope(&self, v: f64) -> Result<f64, PolarError> {
        let xi = self.xi_of_v(v)?;
        let h_v = self.eos.enthalpy_slope(v)?;
        Ok((1.0 + v) / (1.0 - xi - 2.0 * h_v / self.u0_sq))
    }

    fn find_normal_shock(&self) -> Result<f64, PolarError> {
        let (v_min, _) = self.eos.domain();
        let g = |v: f64| self.xi_of_v(v).map(|xi| xi - v);
        let mut prev = 1.0 - 1e-9;
        if v_min >= prev {
            return Err(PolarError::EosDomainTooShort { limit: v_min });
        }
        let mut v = 0.5_f64.max(v_min);
        loop {
            let gv = g(v)?;
            if gv < 0.0 {
                let f = |x: f64| g(x).unwrap_or(-1.0);
                return Ok(bisect(f, prev, v, 1e-13));
            }
            if v <= v_min {
                return Err(PolarError::EosDomainTooShort { limit: v_min });
            }
            prev = v;
            v = (0.5 * v).max(v_min);
        }
    }
}

impl PolarFamily for PotentialPolar<'_> {
    fn model(&self) -> ModelKind {
        ModelKind::Potential
    }

    fn mach(&self) -> f64 {
        self.m0
    }

    fn normal_param(&self) -> f64 {
        self.v_n
    }

    fn vanish_param(&self) -> f64 {
        1.0
    }

    fn vanish_param_inset(&self) -> f64 {
        1.0 - 1e-9
    }

    fn unit_ratios(&self) -> (Option<f64>, Option<f64>) {
        (None, None)
    }

    fn point_at(&self, v: f64) -> Result<PolarPoint, PolarError> {
        if !(v > 0.0 && v <= 1.0) {
            return Err(PolarError::ParamOutOfRange { param: v, lo: self.v_n, hi: 1.0 });
        }
        if v == 1.0 {
            return Ok(self.vanishing_point());
        }
        let xi = self.xi_of_v(v)?;
        let eta_sq = (xi - v) * (1.0 - xi);
        if eta_sq < -ETA_SQ_SLACK {
            return Err(PolarError::BeyondNormalShock(v));
        }
        let eta = eta_sq.max(0.0).sqrt();
        Ok(PolarPoint::new(xi, eta, v, None, None))
    }

    fn sound_speed_ratio_sq(&self, point: &PolarPoint) -> Result<f64, PolarError> {
        Ok(self.eos.sound_speed_sq(point.v_ratio)? / self.c0_sq)
    }

    fn interior_knots(&self) -> Vec<f64> {
        self.eos
            .knots()
            .into_iter()
            .filter(|&v| v > self.v_n && v < 1.0)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eos_barotropic::BarotropicEos;
    use approx::assert_relative_eq;

    fn air_like() -> BarotropicEos {
        BarotropicEos::gamma_law(1.4, 1e-3, 1.5).unwrap()
    }

    fn fig8_eos() -> BarotropicEos {
        BarotropicEos::new(1e-14, &[(5.0 / 3.0, 0.019), (-0.75, 1.2)], 1.0).unwrap()
    }

    #[test]
    fn xi_of_v_spot_value() {
        let eos = air_like();
        let polar = PotentialPolar::new(&eos, 1.3).unwrap();
        // -2[h]/|u0|^2 = -(2/((gamma-1) M0^2)) ((V/V0)^{1-gamma} - 1)
        let jump = -(2.0 / (0.4 * 1.69)) * (0.8f64.powf(-0.4) - 1.0);
        assert_relative_eq!(jump, -0.276224, max_relative = 1e-5);
        let xi = polar.xi_of_v(0.8).unwrap();
        assert_relative_eq!(xi, 1.0 + jump / 1.8, epsilon = 1e-12);
        assert_relative_eq!(xi, 0.846542, max_relative = 1e-5);
        assert_eq!(polar.xi_of_v(1.0).unwrap(), 1.0);
    }

    #[test]
    fn eta_of_spot_and_endpoints() {
        assert_eq!(eta_of(1.0, 0.7).unwrap(), 0.0);
        assert_eq!(eta_of(0.8, 0.8).unwrap(), 0.0);
        assert_relative_eq!(eta_of(0.846542, 0.8).unwrap(), 0.084512, max_relative = 1e-4);
        assert!(eta_of(0.5, 0.9).is_err());
    }

    #[test]
    fn xi_strictly_increasing_in_v() {
        let eos = air_like();
        let polar = PotentialPolar::new(&eos, 1.3).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..64 {
            let v = polar.normal_shock_v() + (1.0 - polar.normal_shock_v()) * i as f64 / 63.0;
            let xi = polar.xi_of_v(v).unwrap();
            assert!(xi > prev);
            prev = xi;
        }
        // V_xi > 0 along the polar
        for i in 1..32 {
            let v = polar.normal_shock_v() + (1.0 - polar.normal_shock_v()) * i as f64 / 33.0;
            assert!(polar.v_slope(v).unwrap() > 0.0);
        }
    }

    #[test]
    fn normal_shock_self_consistency() {
        let eos = air_like();
        let polar = PotentialPolar::new(&eos, 1.3).unwrap();
        let v_n = polar.normal_shock_v();
        assert!((polar.xi_of_v(v_n).unwrap() - v_n).abs() <= 1e-12);
        let near_one = PotentialPolar::new(&eos, 1.0 + 1e-6).unwrap();
        assert!(1.0 - near_one.normal_shock_v() < 1e-5);
    }

    #[test]
    fn fig8_normal_shock_below_knot_for_large_mach() {
        let eos = fig8_eos();
        for &m0 in &[1.5, 5.0, 50.0] {
            let polar = PotentialPolar::new(&eos, m0).unwrap();
            assert!(
                polar.normal_shock_v() < 0.019,
                "M0 = {m0}: V_n = {}",
                polar.normal_shock_v()
            );
        }
    }

    #[test]
    fn sampled_curve_satisfies_bernoulli_everywhere() {
        let eos = air_like();
        let polar = PotentialPolar::new(&eos, 1.3).unwrap();
        let curve = polar.sample_polar(512).unwrap();
        assert_eq!(curve.len(), 512);
        for pt in curve.points() {
            let res = polar.bernoulli_residual(pt).unwrap().abs();
            assert!(res <= 1e-12, "Bernoulli residual {res:e} at V = {}", pt.v_ratio);
        }
        assert_eq!(curve.normal_endpoint().eta, 0.0);
        assert_eq!(curve.vanishing_endpoint().xi, 1.0);
    }

    #[test]
    fn chain_matches_independent_transcription() {
        let eos = air_like();
        let polar = PotentialPolar::new(&eos, 2.0).unwrap();
        let gamma = 1.4;
        let u0_sq = 4.0; // M0^2 c0^2 with c0^2 = 1
        for i in 1..100 {
            let v = polar.normal_shock_v() + (1.0 - polar.normal_shock_v()) * i as f64 / 100.0;
            let h = (v.powf(1.0 - gamma) - 1.0) / (gamma - 1.0);
            let xi = 1.0 + (-2.0 * h / u0_sq) / (1.0 + v);
            let eta = ((xi - v) * (1.0 - xi)).sqrt();
            let pt = polar.point_at(v).unwrap();
            assert_relative_eq!(pt.xi, xi, epsilon = 1e-13);
            assert_relative_eq!(pt.eta, eta, epsilon = 1e-13);
        }
    }

    #[test]
    fn analytic_curvature_negative_and_matches_finite_differences() {
        let eos = air_like();
        let polar = PotentialPolar::new(&eos, 1.3).unwrap();
        let curvature = polar.eta_second_derivative(0.8).unwrap();
        assert!(curvature < 0.0);

        // second difference of a dense sampled curve at mid-polar
        let curve = polar.sample_polar(4096).unwrap();
        let mid = curve.len() / 2;
        let p = curve.points();
        let (x0, x1, x2) = (p[mid - 1].xi, p[mid].xi, p[mid + 1].xi);
        let (y0, y1, y2) = (p[mid - 1].eta, p[mid].eta, p[mid + 1].eta);
        let fd = 2.0
            * (y0 / ((x1 - x0) * (x2 - x0)) - y1 / ((x1 - x0) * (x2 - x1))
                + y2 / ((x2 - x1) * (x2 - x0)));
        let analytic = polar.eta_second_derivative(p[mid].v_ratio).unwrap();
        assert_relative_eq!(fd, analytic, max_relative = 1e-4);
    }

    #[test]
    fn curvature_formula_total_on_negative_gamma_segment() {
        let eos = fig8_eos();
        let polar = PotentialPolar::new(&eos, 1.5).unwrap();
        // evaluates on the gamma = -0.75 segment without error
        let value = polar.eta_second_derivative(0.1).unwrap();
        assert!(value.is_finite());
    }

    #[test]
    fn endpoint_curvature_is_rejected() {
        let eos = air_like();
        let polar = PotentialPolar::new(&eos, 1.3).unwrap();
        assert!(matches!(
            polar.eta_second_derivative(polar.normal_shock_v()),
            Err(PolarError::EndpointDegenerate(_))
        ));
    }

    #[test]
    fn domain_too_short_for_normal_shock() {
        let eos = BarotropicEos::gamma_law(1.4, 0.95, 1.1).unwrap();
        match PotentialPolar::new(&eos, 5.0) {
            Err(PolarError::EosDomainTooShort { limit }) => assert_eq!(limit, 0.95),
            other => panic!("expected domain-too-short, got {other:?}"),
        }
    }
}
