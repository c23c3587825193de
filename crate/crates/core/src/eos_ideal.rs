//! Ideal-gas equations of state `e = e(T)` built from piecewise branches.
//!
//! Three branch families are supported, each with a closed-form energy
//! antiderivative:
//!
//! * `Polytropic` — constant heat capacity `e_T = cv`.
//! * `ConstantSoundSpeed` — `e_T = R / (C/(RT) - 1)`, the exact borderline of
//!   the monotone-sound-speed condition; the constant `C` equals the squared
//!   sound speed on the whole branch.
//! * `BorderlineConvex` — `e_T = R ((1 - 4CRT)^{-1/2} - 1) / 2`, the exact
//!   borderline of the convex-eos condition.
//!
//! Branches are stitched left to right: integration constants are solved so
//! that `e` is continuous at every knot, and construction rejects parameter
//! sets whose `e_T` is discontinuous or non-positive anywhere.

use crate::error::EosError;
use crate::numerics::integrate;

/// Relative tolerance for accepting an explicitly given branch parameter as
/// `e_T`-continuous at its left knot.
const KNOT_MATCH_RTOL: f64 = 1e-9;

/// Branch parameter: an explicit value, or "derive from `e_T` continuity at
/// the left knot".
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Param {
    Value(f64),
    Match,
}

/// Branch family tag, used when describing an eos to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchKind {
    Polytropic,
    ConstantSoundSpeed,
    BorderlineConvex,
}

/// One branch of an eos under construction. `t_hi` is the branch's upper
/// temperature; its lower end is the previous branch's `t_hi` (or the eos
/// `t_min` for the first branch).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchSpec {
    pub kind: BranchKind,
    pub t_hi: f64,
    pub param: Param,
}

impl BranchSpec {
    pub fn polytropic(cv: f64, t_hi: f64) -> Self {
        BranchSpec { kind: BranchKind::Polytropic, t_hi, param: Param::Value(cv) }
    }

    pub fn constant_sound_speed(c: f64, t_hi: f64) -> Self {
        BranchSpec { kind: BranchKind::ConstantSoundSpeed, t_hi, param: Param::Value(c) }
    }

    pub fn borderline_convex(c: f64, t_hi: f64) -> Self {
        BranchSpec { kind: BranchKind::BorderlineConvex, t_hi, param: Param::Value(c) }
    }

    /// Same kind, but with the parameter derived from `e_T` continuity.
    pub fn matched(kind: BranchKind, t_hi: f64) -> Self {
        BranchSpec { kind, t_hi, param: Param::Match }
    }
}

/// Resolved branch form with its parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BranchForm {
    /// Constant heat capacity `cv`.
    Polytropic { cv: f64 },
    /// Constant `C` of the monotone-c borderline ODE; equals `c^2`.
    ConstantSoundSpeed { c: f64 },
    /// Constant `C` of the convex-eos borderline ODE (scale `1/(energy*temperature)`).
    BorderlineConvex { c: f64 },
}

/// A fully resolved eos branch on `[t_lo, t_hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EosBranch {
    form: BranchForm,
    t_lo: f64,
    t_hi: f64,
    offset: f64,
}

impl EosBranch {
    pub fn form(&self) -> BranchForm {
        self.form
    }

    pub fn t_lo(&self) -> f64 {
        self.t_lo
    }

    pub fn t_hi(&self) -> f64 {
        self.t_hi
    }

    /// Kind-specific antiderivative of `e_T`, without the integration constant.
    fn primitive(&self, r: f64, t: f64) -> f64 {
        match self.form {
            BranchForm::Polytropic { cv } => cv * t,
            BranchForm::ConstantSoundSpeed { c } => -r * t - c * (c - r * t).ln(),
            BranchForm::BorderlineConvex { c } => {
                0.5 * r * (-(1.0 - 4.0 * c * r * t).sqrt() / (2.0 * c * r) - t)
            }
        }
    }

    /// Specific energy on this branch. No domain check.
    pub fn energy(&self, r: f64, t: f64) -> f64 {
        self.primitive(r, t) + self.offset
    }

    /// Heat capacity `e_T` on this branch. No domain check.
    pub fn e_t(&self, r: f64, t: f64) -> f64 {
        match self.form {
            BranchForm::Polytropic { cv } => cv,
            BranchForm::ConstantSoundSpeed { c } => r / (c / (r * t) - 1.0),
            BranchForm::BorderlineConvex { c } => {
                0.5 * r * ((1.0 - 4.0 * c * r * t).powf(-0.5) - 1.0)
            }
        }
    }

    /// Second derivative `e_TT` on this branch. No domain check.
    pub fn e_tt(&self, r: f64, t: f64) -> f64 {
        match self.form {
            BranchForm::Polytropic { .. } => 0.0,
            BranchForm::ConstantSoundSpeed { c } => {
                let d = c - r * t;
                r * r * c / (d * d)
            }
            BranchForm::BorderlineConvex { c } => {
                r * r * c * (1.0 - 4.0 * c * r * t).powf(-1.5)
            }
        }
    }

    fn validate(&self, index: usize, r: f64) -> Result<(), EosError> {
        let reject = |reason: String| Err(EosError::InvalidBranch { index, reason });
        if !(self.t_lo > 0.0 && self.t_hi > self.t_lo) {
            return reject(format!(
                "temperature interval [{}, {}] must satisfy 0 < t_lo < t_hi",
                self.t_lo, self.t_hi
            ));
        }
        match self.form {
            BranchForm::Polytropic { cv } => {
                if !(cv > 0.0) {
                    return reject(format!("heat capacity cv = {cv} must be positive"));
                }
            }
            BranchForm::ConstantSoundSpeed { c } => {
                // e_T > 0 needs C/(RT) > 1 on the whole branch.
                if !(c > r * self.t_hi) {
                    return reject(format!(
                        "constant C = {c} must exceed R*t_hi = {} for positive heat capacity",
                        r * self.t_hi
                    ));
                }
            }
            BranchForm::BorderlineConvex { c } => {
                if !(c > 0.0) {
                    return reject(format!("constant C = {c} must be positive"));
                }
                if !(4.0 * c * r * self.t_hi < 1.0) {
                    return reject(format!(
                        "branch must satisfy 4CRT < 1 on its domain; 4CR*t_hi = {}",
                        4.0 * c * r * self.t_hi
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Convexity class of the eos at one temperature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EosConvexityClass {
    StrictlyConvex,
    Borderline,
    NonConvex,
}

/// Result of [`PiecewiseIdealEos::classify_convexity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EosConvexity {
    pub class: EosConvexityClass,
    /// Whether the sound speed is (locally) nondecreasing in temperature.
    pub monotone_sound_speed: bool,
}

/// An ideal-gas eos `e = e(T)` as ordered, contiguous branches.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseIdealEos {
    r: f64,
    branches: Vec<EosBranch>,
    t_ref: f64,
    e_ref: f64,
}

impl PiecewiseIdealEos {
    /// Build an eos from ordered branch specs covering `[t_min, last t_hi]`.
    ///
    /// Integration constants are solved left to right so `e` is continuous;
    /// `Param::Match` derives a branch's parameter from `e_T` continuity at
    /// its left knot, while explicit parameters are verified to be
    /// continuous there. The final energies are shifted so `e(t_ref) = e_ref`.
    pub fn new(
        r: f64,
        t_min: f64,
        specs: &[BranchSpec],
        t_ref: f64,
        e_ref: f64,
    ) -> Result<Self, EosError> {
        if specs.is_empty() {
            return Err(EosError::Empty);
        }
        if !(r > 0.0) {
            return Err(EosError::InvalidBranch {
                index: 0,
                reason: format!("gas constant R = {r} must be positive"),
            });
        }

        let mut branches: Vec<EosBranch> = Vec::with_capacity(specs.len());
        let mut t_lo = t_min;
        for (index, spec) in specs.iter().enumerate() {
            let left_e_t = branches.last().map(|b: &EosBranch| b.e_t(r, t_lo));
            let param = match (spec.param, left_e_t) {
                (Param::Value(v), _) => v,
                (Param::Match, None) => return Err(EosError::FirstParameterUnderdetermined),
                (Param::Match, Some(target)) => match spec.kind {
                    BranchKind::Polytropic => target,
                    // C = RT (R/e_T + 1): the incoming squared sound speed.
                    BranchKind::ConstantSoundSpeed => r * t_lo * (r / target + 1.0),
                    BranchKind::BorderlineConvex => {
                        let s = 1.0 + 2.0 * target / r;
                        (1.0 - 1.0 / (s * s)) / (4.0 * r * t_lo)
                    }
                },
            };
            let form = match spec.kind {
                BranchKind::Polytropic => BranchForm::Polytropic { cv: param },
                BranchKind::ConstantSoundSpeed => BranchForm::ConstantSoundSpeed { c: param },
                BranchKind::BorderlineConvex => BranchForm::BorderlineConvex { c: param },
            };
            let mut branch = EosBranch { form, t_lo, t_hi: spec.t_hi, offset: 0.0 };
            branch.validate(index, r)?;

            if let Some(target) = left_e_t {
                let here = branch.e_t(r, t_lo);
                if (here - target).abs() > KNOT_MATCH_RTOL * target.abs().max(f64::MIN_POSITIVE) {
                    return Err(EosError::DerivativeMismatchAtKnot {
                        t: t_lo,
                        left: target,
                        right: here,
                    });
                }
            }

            // Continuity of e at the left knot.
            let left_e = branches.last().map_or(0.0, |b| b.energy(r, t_lo));
            branch.offset = left_e - branch.primitive(r, t_lo);
            t_lo = spec.t_hi;
            branches.push(branch);
        }

        let mut eos = PiecewiseIdealEos { r, branches, t_ref, e_ref };
        let (lo, hi) = eos.domain();
        if !(t_ref >= lo && t_ref <= hi) {
            return Err(EosError::ReferenceOutsideDomain(t_ref));
        }
        let shift = e_ref - eos.energy(t_ref)?;
        for b in &mut eos.branches {
            b.offset += shift;
        }
        Ok(eos)
    }

    /// Single polytropic branch with ratio of heats `gamma`, anchored at
    /// `e(t_ref) = 0`. Requires `gamma > 1` so `cv = R/(gamma-1)` is positive.
    pub fn polytropic(r: f64, gamma: f64, t_min: f64, t_max: f64, t_ref: f64) -> Result<Self, EosError> {
        if !(gamma > 1.0) {
            return Err(EosError::InvalidBranch {
                index: 0,
                reason: format!("polytropic ideal eos needs gamma > 1, got {gamma}"),
            });
        }
        let cv = r / (gamma - 1.0);
        Self::new(r, t_min, &[BranchSpec::polytropic(cv, t_max)], t_ref, 0.0)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn t_ref(&self) -> f64 {
        self.t_ref
    }

    pub fn branches(&self) -> &[EosBranch] {
        &self.branches
    }

    /// Full temperature domain `[t_min, t_max]`.
    pub fn domain(&self) -> (f64, f64) {
        (self.branches[0].t_lo, self.branches.last().unwrap().t_hi)
    }

    /// Interior knot temperatures (empty for a single branch).
    pub fn knots(&self) -> Vec<f64> {
        self.branches.iter().skip(1).map(|b| b.t_lo).collect()
    }

    fn branch_at(&self, t: f64) -> Result<&EosBranch, EosError> {
        let (lo, hi) = self.domain();
        if !(t >= lo && t <= hi) {
            return Err(EosError::TemperatureOutOfDomain { t, lo, hi });
        }
        Ok(self
            .branches
            .iter()
            .find(|b| t <= b.t_hi)
            .unwrap_or_else(|| self.branches.last().unwrap()))
    }

    /// Specific energy `e(T)`.
    pub fn energy(&self, t: f64) -> Result<f64, EosError> {
        Ok(self.branch_at(t)?.energy(self.r, t))
    }

    /// Heat capacity `cv = e_T(T)`.
    pub fn heat_capacity(&self, t: f64) -> Result<f64, EosError> {
        Ok(self.branch_at(t)?.e_t(self.r, t))
    }

    /// Analytic second derivative `e_TT(T)`.
    pub fn energy_second_derivative(&self, t: f64) -> Result<f64, EosError> {
        Ok(self.branch_at(t)?.e_tt(self.r, t))
    }

    /// Squared sound speed `c^2 = RT (R/e_T + 1)`.
    pub fn sound_speed_sq(&self, t: f64) -> Result<f64, EosError> {
        let e_t = self.heat_capacity(t)?;
        Ok(self.r * t * (self.r / e_t + 1.0))
    }

    /// Enthalpy `h = e + RT`.
    pub fn enthalpy(&self, t: f64) -> Result<f64, EosError> {
        Ok(self.energy(t)? + self.r * t)
    }

    /// Classify the eos at `t` against the convex-eos and monotone-sound-speed
    /// conditions, using analytic derivatives.
    ///
    /// `Borderline` is declared when the convex-eos inequality holds with
    /// equality to within `1e-9` relative; the monotone flag tolerates the
    /// same slack on its (non-strict) inequality.
    pub fn classify_convexity(&self, t: f64) -> Result<EosConvexity, EosError> {
        let b = self.branch_at(t)?;
        let r = self.r;
        let e_t = b.e_t(r, t);
        let e_tt = b.e_tt(r, t);
        let rhs_convex = e_t * (e_t + r) * (2.0 * e_t + r) / (r * r * t);
        let rhs_monotone = e_t * (e_t + r) / (r * t);
        let class = if (e_tt - rhs_convex).abs() <= 1e-9 * rhs_convex {
            EosConvexityClass::Borderline
        } else if e_tt < rhs_convex {
            EosConvexityClass::StrictlyConvex
        } else {
            EosConvexityClass::NonConvex
        };
        let monotone_sound_speed = e_tt <= rhs_monotone * (1.0 + 1e-9);
        Ok(EosConvexity { class, monotone_sound_speed })
    }

    /// Entropy jump `(S_b - S_a)/R = ln(V_b/V_a) + \int_{T_a}^{T_b} e_T/(RT) dT`.
    ///
    /// The integral is evaluated by adaptive quadrature (absolute tolerance
    /// `1e-10`) split at branch knots.
    pub fn entropy_jump(&self, t_a: f64, v_a: f64, t_b: f64, v_b: f64) -> Result<f64, EosError> {
        self.branch_at(t_a)?;
        self.branch_at(t_b)?;
        if !(v_a > 0.0) {
            return Err(EosError::NonPositiveVolume(v_a));
        }
        if !(v_b > 0.0) {
            return Err(EosError::NonPositiveVolume(v_b));
        }
        let r = self.r;
        let mut total = 0.0;
        let (lo, hi) = if t_a <= t_b { (t_a, t_b) } else { (t_b, t_a) };
        let mut cuts = vec![lo];
        cuts.extend(self.knots().into_iter().filter(|&k| k > lo && k < hi));
        cuts.push(hi);
        for pair in cuts.windows(2) {
            let b = self.branch_at(0.5 * (pair[0] + pair[1]))?;
            total += integrate(&|t| b.e_t(r, t) / (r * t), pair[0], pair[1], 1e-12);
        }
        if t_a > t_b {
            total = -total;
        }
        Ok((v_b / v_a).ln() + total)
    }
}
