//! Scalar (barotropic) equations of state for full potential flow, given as
//! piecewise gamma-law segments in specific volume `V`.
//!
//! Potential flow shocks never see the pressure, only the enthalpy `h(V)`
//! and the squared sound speed `c^2(V) = -V h_V`. Each segment carries
//! `c^2(V) = K (V/V0)^{1-gamma}` with `K > 0` (hyperbolicity); the
//! corresponding enthalpy is the gamma-law form, with the logarithmic
//! special case at `gamma = 1`. Segment coefficients are derived internally
//! so that both `h` and `c^2` are continuous at every knot, normalized to
//! `V0 = 1`, `h(V0) = 0`, `c^2(V0) = c0^2`.

use crate::error::EosError;

const V0: f64 = 1.0;

/// Strongest satisfied condition of the nested chain
/// monotone sound speed => convex enthalpy => convex eos.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainClass {
    /// `c` nondecreasing in density (`gamma >= 1`).
    MonotoneSoundSpeed,
    /// `h_VV >= 0` (`gamma > 0`).
    ConvexEnthalpy,
    /// `rho (c^2)_rho > -2 c^2` (`gamma > -1`).
    ConvexEos,
    None,
}

/// One gamma-law segment on `[v_lo, v_hi]` with resolved coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    gamma: f64,
    v_lo: f64,
    v_hi: f64,
    /// Sound-speed scale: `c^2(V) = c2_scale * (V/V0)^{1-gamma}`.
    c2_scale: f64,
    /// Additive enthalpy constant.
    offset: f64,
}

impl Segment {
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn v_lo(&self) -> f64 {
        self.v_lo
    }

    pub fn v_hi(&self) -> f64 {
        self.v_hi
    }

    /// Enthalpy on this segment. No domain check.
    pub fn enthalpy(&self, v: f64) -> f64 {
        if self.gamma == 1.0 {
            -self.c2_scale * (v / V0).ln() + self.offset
        } else {
            self.c2_scale / (self.gamma - 1.0) * (v / V0).powf(1.0 - self.gamma) + self.offset
        }
    }

    /// `h_V = -c^2 / V`. No domain check.
    pub fn enthalpy_slope(&self, v: f64) -> f64 {
        -self.sound_speed_sq(v) / v
    }

    /// `h_VV = gamma * c^2 / V^2`. No domain check.
    pub fn enthalpy_curvature(&self, v: f64) -> f64 {
        self.gamma * self.sound_speed_sq(v) / (v * v)
    }

    /// Squared sound speed on this segment. No domain check.
    pub fn sound_speed_sq(&self, v: f64) -> f64 {
        self.c2_scale * (v / V0).powf(1.0 - self.gamma)
    }

    fn enthalpy_primitive(&self, v: f64) -> f64 {
        self.enthalpy(v) - self.offset
    }
}

/// Piecewise gamma-law barotropic eos `h = h(V)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BarotropicEos {
    segments: Vec<Segment>,
    c0_sq: f64,
}

impl BarotropicEos {
    /// Build from ordered `(gamma, v_hi)` pairs covering `[v_min, last v_hi]`.
    ///
    /// The domain must contain `V0 = 1`; the segment containing it is scaled
    /// to `c^2(V0) = c0_sq`, and the other coefficients follow from
    /// continuity of `c^2` (and of `h`) at the knots.
    pub fn new(v_min: f64, specs: &[(f64, f64)], c0_sq: f64) -> Result<Self, EosError> {
        if specs.is_empty() {
            return Err(EosError::Empty);
        }
        if !(c0_sq > 0.0) {
            return Err(EosError::InvalidSegment {
                index: 0,
                reason: format!("reference sound speed c0^2 = {c0_sq} must be positive"),
            });
        }
        let mut v_lo = v_min;
        let mut segments = Vec::with_capacity(specs.len());
        for (index, &(gamma, v_hi)) in specs.iter().enumerate() {
            if !(v_lo > 0.0 && v_hi > v_lo) {
                return Err(EosError::InvalidSegment {
                    index,
                    reason: format!("V-interval [{v_lo}, {v_hi}] must satisfy 0 < v_lo < v_hi"),
                });
            }
            if gamma == 0.0 {
                return Err(EosError::InvalidSegment {
                    index,
                    reason: "gamma = 0 is not hyperbolic as a gamma-law".to_string(),
                });
            }
            segments.push(Segment { gamma, v_lo, v_hi, c2_scale: 0.0, offset: 0.0 });
            v_lo = v_hi;
        }
        let v_max = v_lo;
        if !(v_min <= V0 && V0 <= v_max) {
            return Err(EosError::ReferenceOutsideDomain(V0));
        }

        // Scale the segment containing V0, then propagate c^2 continuity
        // outward in both directions.
        let i0 = segments.iter().position(|s| V0 <= s.v_hi).unwrap();
        segments[i0].c2_scale = c0_sq;
        for i in (i0 + 1)..segments.len() {
            let knot = segments[i].v_lo;
            let c2 = segments[i - 1].sound_speed_sq(knot);
            segments[i].c2_scale = c2 / (knot / V0).powf(1.0 - segments[i].gamma);
        }
        for i in (0..i0).rev() {
            let knot = segments[i].v_hi;
            let c2 = segments[i + 1].sound_speed_sq(knot);
            segments[i].c2_scale = c2 / (knot / V0).powf(1.0 - segments[i].gamma);
        }

        // h continuity with h(V0) = 0, outward from the reference segment.
        segments[i0].offset = -segments[i0].enthalpy_primitive(V0);
        for i in (i0 + 1)..segments.len() {
            let knot = segments[i].v_lo;
            segments[i].offset = segments[i - 1].enthalpy(knot) - segments[i].enthalpy_primitive(knot);
        }
        for i in (0..i0).rev() {
            let knot = segments[i].v_hi;
            segments[i].offset = segments[i + 1].enthalpy(knot) - segments[i].enthalpy_primitive(knot);
        }

        Ok(BarotropicEos { segments, c0_sq })
    }

    /// Single gamma-law segment on `[v_min, v_max]` with `c^2(V0) = 1`.
    pub fn gamma_law(gamma: f64, v_min: f64, v_max: f64) -> Result<Self, EosError> {
        Self::new(v_min, &[(gamma, v_max)], 1.0)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn c0_sq(&self) -> f64 {
        self.c0_sq
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.segments[0].v_lo, self.segments.last().unwrap().v_hi)
    }

    /// Interior knot volumes (empty for a single segment).
    pub fn knots(&self) -> Vec<f64> {
        self.segments.iter().skip(1).map(|s| s.v_lo).collect()
    }

    fn segment_at(&self, v: f64) -> Result<&Segment, EosError> {
        let (lo, hi) = self.domain();
        if !(v >= lo && v <= hi) {
            return Err(EosError::VolumeOutOfDomain { v, lo, hi });
        }
        Ok(self
            .segments
            .iter()
            .find(|s| v <= s.v_hi)
            .unwrap_or_else(|| self.segments.last().unwrap()))
    }

    /// Enthalpy `h(V)`, normalized so `h(V0) = 0`.
    pub fn enthalpy(&self, v: f64) -> Result<f64, EosError> {
        Ok(self.segment_at(v)?.enthalpy(v))
    }

    /// `h_V(V) = -c^2/V < 0`.
    pub fn enthalpy_slope(&self, v: f64) -> Result<f64, EosError> {
        Ok(self.segment_at(v)?.enthalpy_slope(v))
    }

    /// Analytic `h_VV(V)`.
    pub fn enthalpy_curvature(&self, v: f64) -> Result<f64, EosError> {
        Ok(self.segment_at(v)?.enthalpy_curvature(v))
    }

    /// Squared sound speed `c^2(V) = -V h_V(V)`.
    pub fn sound_speed_sq(&self, v: f64) -> Result<f64, EosError> {
        Ok(self.segment_at(v)?.sound_speed_sq(v))
    }

    /// Strongest satisfied condition of the chain at `v`.
    pub fn classify(&self, v: f64) -> Result<ChainClass, EosError> {
        let gamma = self.segment_at(v)?.gamma;
        Ok(if gamma >= 1.0 {
            ChainClass::MonotoneSoundSpeed
        } else if gamma > 0.0 {
            ChainClass::ConvexEnthalpy
        } else if gamma > -1.0 {
            ChainClass::ConvexEos
        } else {
            ChainClass::None
        })
    }
}
