//! Physical parameters of the closed-loop Λ atom.
//!
//! Level |1⟩ is the excited state, |2⟩ and |3⟩ the metastable ground states.
//! Field 1 drives |1⟩↔|3⟩ (the detected transition), field 2 drives
//! |1⟩↔|2⟩, and field 3 couples |2⟩↔|3⟩. All frequencies and rates are in
//! units of γ₂, which is fixed to one. The three-photon detuning
//! Δ₄ = Δ₁ − Δ₂ − Δ₃ is held at zero, so Δ₃ is derived rather than free.
//!
//! The detection prefactor |μ₁₃|²f(r)² is taken as one and the propagation
//! phase factor e^{2i(−φ₁+ω₁r/c)} as unity; neither appears as a parameter.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Wraps an angle into (−π, π].
///
/// Angles already inside the interval are returned bit-for-bit, so the
/// operation is idempotent.
pub fn wrap_phase(angle: f64) -> f64 {
    if angle > -PI && angle <= PI {
        return angle;
    }
    let r = angle.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Unvalidated parameter set, as read from a config or written by hand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawParams {
    pub gamma1: f64,
    pub gamma2: f64,
    pub delta1: f64,
    pub delta2: f64,
    /// Optional; when given it must equal `delta1 - delta2`.
    pub delta3: Option<f64>,
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
    pub phi: f64,
}

impl Default for RawParams {
    fn default() -> Self {
        Self {
            gamma1: 1.0,
            gamma2: 1.0,
            delta1: 0.0,
            delta2: 0.0,
            delta3: None,
            omega1: 0.0,
            omega2: 0.0,
            omega3: 0.0,
            phi: 0.0,
        }
    }
}

/// Validated physical parameters in units of γ₂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    gamma1: f64,
    gamma2: f64,
    delta1: f64,
    delta2: f64,
    delta3: f64,
    omega1: f64,
    omega2: f64,
    omega3: f64,
    phi: f64,
}

/// Tolerance on a user-supplied Δ₃ before it is treated as Δ₄ ≠ 0.
const DELTA4_TOLERANCE: f64 = 1e-12;

fn finite(name: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidParams {
            name,
            reason: format!("must be finite, got {v}"),
        })
    }
}

fn non_negative(name: &'static str, v: f64) -> Result<f64> {
    finite(name, v)?;
    if v < 0.0 {
        return Err(Error::InvalidParams {
            name,
            reason: format!("Rabi frequency must be non-negative, got {v}"),
        });
    }
    Ok(v)
}

/// Validates raw values into a [`SystemParams`].
pub fn make_params(raw: RawParams) -> Result<SystemParams> {
    let gamma1 = finite("gamma1", raw.gamma1)?;
    if gamma1 <= 0.0 {
        return Err(Error::InvalidParams {
            name: "gamma1",
            reason: format!("decay rate must be positive, got {gamma1}"),
        });
    }
    let gamma2 = finite("gamma2", raw.gamma2)?;
    if gamma2 <= 0.0 {
        return Err(Error::InvalidParams {
            name: "gamma2",
            reason: format!("decay rate must be positive, got {gamma2}"),
        });
    }
    if gamma2 != 1.0 {
        return Err(Error::InvalidParams {
            name: "gamma2",
            reason: format!("gamma2 is the frequency unit and must be 1, got {gamma2}"),
        });
    }
    let delta1 = finite("delta1", raw.delta1)?;
    let delta2 = finite("delta2", raw.delta2)?;
    let delta3 = delta1 - delta2;
    if let Some(d3) = raw.delta3 {
        let d3 = finite("delta3", d3)?;
        let delta4 = delta1 - delta2 - d3;
        if delta4.abs() > DELTA4_TOLERANCE * (1.0 + delta1.abs() + delta2.abs()) {
            return Err(Error::InvalidParams {
                name: "delta3",
                reason: format!(
                    "relative detuning delta1 - delta2 - delta3 = {delta4} must vanish"
                ),
            });
        }
    }
    Ok(SystemParams {
        gamma1,
        gamma2,
        delta1,
        delta2,
        delta3,
        omega1: non_negative("omega1", raw.omega1)?,
        omega2: non_negative("omega2", raw.omega2)?,
        omega3: non_negative("omega3", raw.omega3)?,
        phi: wrap_phase(finite("phi", raw.phi)?),
    })
}

impl SystemParams {
    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }
    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }
    pub fn delta1(&self) -> f64 {
        self.delta1
    }
    pub fn delta2(&self) -> f64 {
        self.delta2
    }
    /// Always `delta1 - delta2`.
    pub fn delta3(&self) -> f64 {
        self.delta3
    }
    pub fn omega1(&self) -> f64 {
        self.omega1
    }
    pub fn omega2(&self) -> f64 {
        self.omega2
    }
    pub fn omega3(&self) -> f64 {
        self.omega3
    }
    /// Relative phase Φ = φ₁ − φ₂ − φ₃ in (−π, π].
    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn to_raw(&self) -> RawParams {
        RawParams {
            gamma1: self.gamma1,
            gamma2: self.gamma2,
            delta1: self.delta1,
            delta2: self.delta2,
            delta3: Some(self.delta3),
            omega1: self.omega1,
            omega2: self.omega2,
            omega3: self.omega3,
            phi: self.phi,
        }
    }

    pub fn with_omega3(&self, omega3: f64) -> Result<Self> {
        make_params(RawParams {
            omega3,
            ..self.to_raw()
        })
    }

    pub fn with_phi(&self, phi: f64) -> Result<Self> {
        make_params(RawParams {
            phi,
            ..self.to_raw()
        })
    }

    /// True in the resonant equal-Rabi regime (Δ₁ = Δ₂ = 0, Ω₁ = Ω₂) where
    /// the squeezing parameter has a closed form.
    pub fn is_resonant_equal_rabi(&self) -> bool {
        self.delta1 == 0.0 && self.delta2 == 0.0 && self.omega1 == self.omega2
    }
}

/// Quadrature selection angle θ, stored in (−π, π].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraturePhase(f64);

impl QuadraturePhase {
    pub fn new(theta: f64) -> Result<Self> {
        Ok(Self(wrap_phase(finite("theta", theta)?)))
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

impl Default for QuadraturePhase {
    fn default() -> Self {
        Self(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fig2a() -> RawParams {
        RawParams {
            gamma1: 0.1,
            gamma2: 1.0,
            delta1: 15.0,
            delta2: -15.0,
            delta3: None,
            omega1: 30.0,
            omega2: 30.0,
            omega3: 10.0,
            phi: 0.0,
        }
    }

    #[test]
    fn accepts_fig2_parameters() {
        let p = make_params(fig2a()).unwrap();
        assert_eq!(p.delta3(), 30.0);
        assert_eq!(p.omega3(), 10.0);
    }

    #[test]
    fn accepts_fig5_parameters() {
        let p = make_params(RawParams {
            gamma1: 20.0,
            omega1: 8.0,
            omega2: 8.0,
            omega3: 3.0,
            phi: -PI / 2.0,
            ..Default::default()
        })
        .unwrap();
        assert!(p.is_resonant_equal_rabi());
        assert_eq!(p.phi(), -PI / 2.0);
    }

    #[test]
    fn rejects_bad_values() {
        let bad = [
            RawParams {
                gamma2: -1.0,
                ..fig2a()
            },
            RawParams {
                gamma1: 0.0,
                ..fig2a()
            },
            RawParams {
                omega2: -0.5,
                ..fig2a()
            },
            RawParams {
                delta1: f64::NAN,
                ..fig2a()
            },
            RawParams {
                phi: f64::INFINITY,
                ..fig2a()
            },
            RawParams {
                gamma2: 2.0,
                ..fig2a()
            },
            RawParams {
                delta3: Some(29.0),
                ..fig2a()
            },
        ];
        for raw in bad {
            assert!(make_params(raw).is_err(), "{raw:?}");
        }
        assert!(make_params(RawParams {
            delta3: Some(30.0),
            ..fig2a()
        })
        .is_ok());
    }

    #[test]
    fn phase_is_wrapped() {
        assert_eq!(wrap_phase(PI), PI);
        assert_eq!(wrap_phase(-PI), PI);
        assert!((wrap_phase(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        let p = make_params(RawParams {
            phi: 2.0 * PI + 0.25,
            ..fig2a()
        })
        .unwrap();
        assert!((p.phi() - 0.25).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn wrap_is_idempotent(x in -1e3f64..1e3) {
            let once = wrap_phase(x);
            prop_assert!(once > -PI && once <= PI);
            prop_assert_eq!(wrap_phase(once), once);
        }

        #[test]
        fn delta4_vanishes(d1 in -100f64..100.0, d2 in -100f64..100.0) {
            let p = make_params(RawParams { delta1: d1, delta2: d2, ..fig2a() }).unwrap();
            prop_assert_eq!(p.delta1() - p.delta2() - p.delta3(), 0.0);
        }
    }
}
