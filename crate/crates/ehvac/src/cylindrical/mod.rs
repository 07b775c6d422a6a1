//! Cylindrically symmetric fields A_θ = u(t, r), A_z = v(t, r): effective
//! metric, radial null velocities, Maxwellian Bessel waves, geodesic
//! integration, horizons and the nonlinear field-equation operators.

mod ansatz;
mod geodesic;
mod maxwellian;
mod operators;

pub use ansatz::*;
pub use geodesic::*;
pub use maxwellian::*;
pub use operators::*;

/// Radial propagation direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Ingoing,
    Outgoing,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Ingoing => "ingoing",
            Direction::Outgoing => "outgoing",
        }
    }
}

/// Polarization choice for velocity laws, including the birefringence average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeChoice {
    Plus,
    Minus,
    Averaged,
}

impl ModeChoice {
    /// Second-order coefficient c in c·α²/45.
    pub fn coefficient(self) -> f64 {
        match self {
            ModeChoice::Plus => 14.0,
            ModeChoice::Minus => 8.0,
            ModeChoice::Averaged => 11.0,
        }
    }

    pub fn polarization(self) -> Option<crate::lfg::PolarizationMode> {
        match self {
            ModeChoice::Plus => Some(crate::lfg::PolarizationMode::Plus),
            ModeChoice::Minus => Some(crate::lfg::PolarizationMode::Minus),
            ModeChoice::Averaged => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModeChoice::Plus => "plus",
            ModeChoice::Minus => "minus",
            ModeChoice::Averaged => "averaged",
        }
    }
}
