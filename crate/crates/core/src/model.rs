//! Physical model: solitonic mass profile, ordering-ambiguity shift of the
//! effective potential, and the two channel geometries.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::specfun::hyperbolic::{cosh_sq, csch_sq, sech};

/// von Roos ordering parameters. `γ` is always derived from `α + β + γ = −1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmbiguityParams {
    pub alpha: f64,
    pub beta: f64,
}

impl AmbiguityParams {
    /// The BenDaniel–Duke ordering `(α, β, γ) = (0, −1, 0)`.
    pub const BEN_DANIEL_DUKE: Self = Self { alpha: 0.0, beta: -1.0 };

    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    pub fn gamma(&self) -> f64 {
        -1.0 - self.alpha - self.beta
    }

    /// Coefficient of `−2q² cosh²(qx)` in the shift.
    pub fn cosh_coefficient(&self) -> f64 {
        let (a, b) = (self.alpha, self.beta);
        2.0 * a * (a + b + 1.0) + b + 1.0
    }

    /// Coefficient of the constant `q²` term in the shift.
    pub fn constant_coefficient(&self) -> f64 {
        let (a, b) = (self.alpha, self.beta);
        4.0 * a * (a + b + 1.0) + b + 1.0
    }

    /// True when both shift coefficients vanish exactly, so that the effective
    /// potential coincides with the bare one.
    pub fn shift_vanishes(&self) -> bool {
        self.cosh_coefficient() == 0.0 && self.constant_coefficient() == 0.0
    }
}

impl Default for AmbiguityParams {
    fn default() -> Self {
        Self::BEN_DANIEL_DUKE
    }
}

/// `M(x) = sech²(qx)`, the dimensionless mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassProfile {
    q: f64,
}

impl MassProfile {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0) || !q.is_finite() {
            return Err(Error::InvalidParameter(format!("q must be finite and > 0, got {q}")));
        }
        Ok(Self { q })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn mass(&self, x: f64) -> f64 {
        let s = sech(self.q * x);
        s * s
    }

    /// `1 / M(x) = cosh²(qx)`, the coefficient of the kinetic operator.
    pub fn inverse_mass(&self, x: f64) -> f64 {
        cosh_sq(self.q * x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    /// Square cross-section `|y|, |z| < π/(2q)`.
    Parallelepipedal,
    /// Disk cross-section `ρ < radius`.
    Cylindrical { radius: f64 },
}

impl Geometry {
    pub fn name(&self) -> &'static str {
        match self {
            Geometry::Parallelepipedal => "parallel",
            Geometry::Cylindrical { .. } => "cylinder",
        }
    }
}

/// A semi-infinite channel `x > 0` with Dirichlet walls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelModel {
    geometry: Geometry,
    profile: MassProfile,
    k: f64,
    ambiguity: AmbiguityParams,
}

impl ChannelModel {
    pub fn new(geometry: Geometry, q: f64, k: f64, ambiguity: AmbiguityParams) -> Result<Self> {
        let profile = MassProfile::new(q)?;
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::InvalidParameter(format!("k must be finite and > 0, got {k}")));
        }
        if let Geometry::Cylindrical { radius } = geometry {
            if !(radius > 0.0) || !radius.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "cylinder radius must be finite and > 0, got {radius}"
                )));
            }
        }
        if !ambiguity.alpha.is_finite() || !ambiguity.beta.is_finite() {
            return Err(Error::InvalidParameter("ambiguity parameters must be finite".into()));
        }
        Ok(Self {
            geometry,
            profile,
            k,
            ambiguity,
        })
    }

    pub fn parallelepipedal(q: f64, k: f64) -> Result<Self> {
        Self::new(Geometry::Parallelepipedal, q, k, AmbiguityParams::default())
    }

    pub fn cylindrical(q: f64, k: f64, radius: f64) -> Result<Self> {
        Self::new(Geometry::Cylindrical { radius }, q, k, AmbiguityParams::default())
    }

    pub fn with_ambiguity(mut self, ambiguity: AmbiguityParams) -> Self {
        self.ambiguity = ambiguity;
        self
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn q(&self) -> f64 {
        self.profile.q
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn ambiguity(&self) -> AmbiguityParams {
        self.ambiguity
    }

    pub fn profile(&self) -> MassProfile {
        self.profile
    }

    /// Cylinder radius, `None` for the parallelepipedal channel.
    pub fn radius(&self) -> Option<f64> {
        match self.geometry {
            Geometry::Cylindrical { radius } => Some(radius),
            Geometry::Parallelepipedal => None,
        }
    }

    /// Half-width `π/(2q)` of the square cross-section.
    pub fn half_width(&self) -> f64 {
        FRAC_PI_2 / self.q()
    }

    pub fn mass(&self, x: f64) -> f64 {
        self.profile.mass(x)
    }

    /// Ordering-dependent part of the effective potential:
    /// `−2q²[2α(α+β+1)+β+1] cosh²(qx) + q²[4α(α+β+1)+β+1]`.
    pub fn effective_potential_shift(&self, x: f64) -> f64 {
        let q2 = self.q() * self.q();
        -2.0 * q2 * self.ambiguity.cosh_coefficient() * cosh_sq(self.q() * x)
            + q2 * self.ambiguity.constant_coefficient()
    }

    /// `V_eff,1(x) = −q² cosh²(qx) + q² k(k−1) csch²(qx)` on `x > 0`.
    pub fn potential_x(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("potential is infinite for x <= 0 (x = {x})")));
        }
        let q = self.q();
        Ok(-q * q * cosh_sq(q * x) + q * q * self.k * (self.k - 1.0) * csch_sq(q * x))
    }

    /// Scalar potential of the separated x-problem
    /// `−(cosh²(qx) φ')' + W(x) φ = E φ`, i.e.
    /// `W(x) = q²(δ²−1) cosh²(qx) + q² k(k−1) csch²(qx)`.
    pub fn reduced_x_potential(&self, delta: f64, x: f64) -> Result<f64> {
        if !(delta > 0.0) {
            return Err(Error::InvalidParameter(format!("delta must be > 0, got {delta}")));
        }
        if !(x > 0.0) {
            return Err(Error::Domain(format!("reduced potential needs x > 0 (x = {x})")));
        }
        let q = self.q();
        Ok(q * q * (delta * delta - 1.0) * cosh_sq(q * x) + q * q * self.k * (self.k - 1.0) * csch_sq(q * x))
    }

    /// Advisory notes about the parameter set.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.k < 0.5 {
            out.push(format!(
                "k = {} < 1/2: the csch² term is strongly attractive near x = 0; \
                 wavefunctions behave as x^k and finite-difference results converge slowly",
                self.k
            ));
        } else if self.k < 1.0 {
            out.push(format!("k = {} < 1: the csch² term is attractive near x = 0", self.k));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn par(q: f64, k: f64) -> ChannelModel {
        ChannelModel::parallelepipedal(q, k).unwrap()
    }

    #[test]
    fn mass_values() {
        assert_eq!(par(1.0, 1.0).mass(0.0), 1.0);
        assert!((par(1.0, 1.0).mass(1.0) - 0.419_974_341_614_026_07).abs() < 1e-15);
        let m = par(2.0, 1.0);
        assert!((m.mass(-1.0) - 0.070_650_824_853_164_466).abs() < 1e-15);
        assert_eq!(m.mass(-1.0), m.mass(1.0));
    }

    #[test]
    fn mass_is_even_and_decreasing() {
        let m = par(0.7, 1.0);
        let mut last = m.mass(0.0);
        for i in 1..200 {
            let x = 0.05 * i as f64;
            let v = m.mass(x);
            assert!(v > 0.0 && v <= 1.0);
            assert_eq!(v, m.mass(-x));
            assert!(v < last);
            last = v;
        }
    }

    #[test]
    fn gamma_is_derived() {
        let a = AmbiguityParams::new(0.3, -0.8);
        assert!((a.alpha + a.beta + a.gamma() + 1.0).abs() < 1e-15);
        assert_eq!(AmbiguityParams::BEN_DANIEL_DUKE.gamma(), 0.0);
    }

    #[test]
    fn shift_examples() {
        let bdd = par(1.3, 1.0);
        for i in 0..50 {
            let x = -5.0 + 0.2 * i as f64;
            assert_eq!(bdd.effective_potential_shift(x), 0.0);
        }
        let zero = par(1.0, 1.0).with_ambiguity(AmbiguityParams::new(0.0, 0.0));
        assert!((zero.effective_potential_shift(0.0) + 1.0).abs() < 1e-15);
        let other = par(1.0, 1.0).with_ambiguity(AmbiguityParams::new(-1.0, 1.0));
        assert!((other.effective_potential_shift(0.0) + 2.0).abs() < 1e-15);
        assert!((other.effective_potential_shift(3.0) + 2.0).abs() < 1e-15);
    }

    #[test]
    fn shift_vanishing_condition() {
        assert!(AmbiguityParams::BEN_DANIEL_DUKE.shift_vanishes());
        assert!(!AmbiguityParams::new(0.0, 0.0).shift_vanishes());
        // the cosh² coefficient alone may vanish: α = −1, β = 1
        let a = AmbiguityParams::new(-1.0, 1.0);
        assert_eq!(a.cosh_coefficient(), 0.0);
        assert!(!a.shift_vanishes());
    }

    #[test]
    fn potential_examples() {
        let v = par(1.0, 1.0).potential_x(0.5).unwrap();
        assert!((v + 1.271_540_317_407_621_9).abs() < 1e-14);
        let v = par(1.0, 0.5).potential_x(0.1).unwrap();
        assert!((v + 25.926_866_446_962_497).abs() < 1e-11);
        let m = par(1.0, 2.0);
        let ratio = m.potential_x(20.0).unwrap() / -cosh_sq(20.0);
        assert!((ratio - 1.0).abs() < 1e-15);
        assert!(matches!(m.potential_x(0.0), Err(Error::Domain(_))));
        assert!(matches!(m.potential_x(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn reduced_potential_examples() {
        let s2 = 2f64.sqrt();
        assert_eq!(par(1.0, 1.0).reduced_x_potential(1.0, 2.0).unwrap(), 0.0);
        let w = par(1.0, 1.0).reduced_x_potential(s2, 1.0).unwrap();
        assert!((w - 2.381_097_845_541_815_7).abs() < 1e-13);
        let w = par(1.0, 2.0).reduced_x_potential(s2, 0.5).unwrap();
        assert!((w - 8.636_929_071_069_960_4).abs() < 1e-13);
        assert!(par(1.0, 2.0).reduced_x_potential(s2, 0.0).is_err());
        assert!(par(1.0, 2.0).reduced_x_potential(0.0, 1.0).is_err());
    }

    #[test]
    fn reduced_potential_confines() {
        let m = par(1.0, 2.0);
        let d = 1.5;
        let near: Vec<f64> = [1e-1, 1e-2, 1e-3]
            .iter()
            .map(|&x| m.reduced_x_potential(d, x).unwrap())
            .collect();
        assert!(near[0] < near[1] && near[1] < near[2] && near[2] > 1e5);
        let far: Vec<f64> = [5.0, 10.0, 20.0]
            .iter()
            .map(|&x| m.reduced_x_potential(d, x).unwrap())
            .collect();
        assert!(far[0] < far[1] && far[1] < far[2] && far[2] > 1e15);
    }

    #[test]
    fn invalid_models_rejected() {
        assert!(ChannelModel::parallelepipedal(0.0, 1.0).is_err());
        assert!(ChannelModel::parallelepipedal(1.0, 0.0).is_err());
        assert!(ChannelModel::parallelepipedal(1.0, -2.0).is_err());
        assert!(ChannelModel::cylindrical(1.0, 1.0, 0.0).is_err());
        assert!(ChannelModel::cylindrical(1.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn small_k_is_flagged() {
        assert!(par(1.0, 1.0).warnings().is_empty());
        assert_eq!(par(1.0, 0.3).warnings().len(), 1);
        assert!(par(1.0, 0.3).warnings()[0].contains("1/2"));
    }
}
