//! Named parameter sets, one per stored figure table.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::model::{make_params, RawParams, SystemParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    /// Spectrum at θ = 0, Φ = 0, Ω₃ = 10 (and the Ω₃ = 0 reference).
    Fig2a,
    /// As [`Preset::Fig2a`] with Φ = π.
    Fig2b,
    /// F versus Ω₃ for Φ = −π/2 and Φ = +π/2.
    Fig3,
    /// Populations and coherences versus Ω₃ at Φ = −π/2.
    Fig4,
    /// F versus Φ at Ω₃ = 3.
    Fig5,
}

pub const ALL: [Preset; 5] = [
    Preset::Fig2a,
    Preset::Fig2b,
    Preset::Fig3,
    Preset::Fig4,
    Preset::Fig5,
];

/// Ω₃ axis of the Ω₃ sweeps.
pub const OMEGA3_AXIS: (f64, f64, usize) = (0.0, 10.0, 201);

/// Φ axis of the phase sweep, one-degree spacing.
pub const PHI_AXIS: (f64, f64, usize) = (-PI, PI, 361);

const FIG2: RawParams = RawParams {
    gamma1: 0.1,
    gamma2: 1.0,
    delta1: 15.0,
    delta2: -15.0,
    delta3: None,
    omega1: 30.0,
    omega2: 30.0,
    omega3: 10.0,
    phi: 0.0,
};

const FIG3: RawParams = RawParams {
    gamma1: 20.0,
    gamma2: 1.0,
    delta1: 0.0,
    delta2: 0.0,
    delta3: None,
    omega1: 8.0,
    omega2: 8.0,
    omega3: 0.0,
    phi: -PI / 2.0,
};

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2a => "fig2a",
            Preset::Fig2b => "fig2b",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
        }
    }

    pub fn raw(self) -> RawParams {
        match self {
            Preset::Fig2a => FIG2,
            Preset::Fig2b => RawParams { phi: PI, ..FIG2 },
            Preset::Fig3 | Preset::Fig4 => FIG3,
            Preset::Fig5 => RawParams {
                omega3: 3.0,
                ..FIG3
            },
        }
    }

    /// Base parameters; sweeps vary Ω₃ or Φ around these.
    pub fn params(self) -> SystemParams {
        make_params(self.raw()).expect("preset parameters are valid")
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
            format!("unknown preset `{s}` (expected fig2a, fig2b, fig3, fig4 or fig5)")
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn captions() {
        let p = Preset::Fig2a.params();
        assert_eq!(
            (p.gamma1(), p.gamma2(), p.delta1(), p.delta2()),
            (0.1, 1.0, 15.0, -15.0)
        );
        assert_eq!(
            (p.omega1(), p.omega2(), p.omega3(), p.phi()),
            (30.0, 30.0, 10.0, 0.0)
        );
        assert_eq!(Preset::Fig2b.params().phi(), PI);

        for preset in [Preset::Fig3, Preset::Fig4, Preset::Fig5] {
            let p = preset.params();
            assert_eq!(
                (
                    p.gamma1(),
                    p.gamma2(),
                    p.delta1(),
                    p.delta2(),
                    p.omega1(),
                    p.omega2()
                ),
                (20.0, 1.0, 0.0, 0.0, 8.0, 8.0)
            );
        }
        assert_eq!(Preset::Fig4.params().phi(), -PI / 2.0);
        assert_eq!(Preset::Fig5.params().omega3(), 3.0);
    }

    #[test]
    fn names_round_trip() {
        for p in ALL {
            assert_eq!(p.name().parse::<Preset>(), Ok(p));
        }
        assert!("fig6".parse::<Preset>().is_err());
    }
}
