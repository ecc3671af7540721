use crate::context::{classify_speed, InvariantSpeedContext, RegimeTag, DEFAULT_LUMINAL_TOL};
use crate::error::{Error, Result};
use crate::vector::{Vec3, Velocity3};

/// A point particle: characteristic mass `m_c = m(c)`, position, velocity and
/// the regime implied by its speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleState {
    m_c: f64,
    position: Vec3,
    velocity: Velocity3,
    regime: RegimeTag,
}

impl ParticleState {
    pub fn new(
        ctx: &InvariantSpeedContext,
        m_c: f64,
        position: Vec3,
        velocity: Velocity3,
    ) -> Result<Self> {
        if !(m_c.is_finite() && m_c >= 0.0) {
            return Err(Error::InvalidMass { m_c, requirement: "non-negative" });
        }
        if !position.is_finite() {
            return Err(Error::InvalidParameter("position must be finite".into()));
        }
        let regime = classify_speed(ctx, velocity.speed(), DEFAULT_LUMINAL_TOL)?;
        Ok(ParticleState { m_c, position, velocity, regime })
    }

    pub fn m_c(&self) -> f64 {
        self.m_c
    }

    pub fn position(&self) -> Vec3 {
        self.position
    }

    pub fn velocity(&self) -> Velocity3 {
        self.velocity
    }

    pub fn regime(&self) -> RegimeTag {
        self.regime
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::make_context;

    #[test]
    fn regime_follows_speed() {
        let ctx = make_context(1.0, 2.0, 1.0).unwrap();
        let p = |v| {
            ParticleState::new(&ctx, 1.0, Vec3::ZERO, Velocity3::along_x(&ctx, v).unwrap())
                .unwrap()
                .regime()
        };
        assert_eq!(p(0.3), RegimeTag::Subluminal);
        assert_eq!(p(1.0), RegimeTag::Luminal);
        assert_eq!(p(1.7), RegimeTag::Superluminal);
    }

    #[test]
    fn negative_mass_rejected() {
        let ctx = make_context(1.0, 2.0, 1.0).unwrap();
        assert!(ParticleState::new(&ctx, -1.0, Vec3::ZERO, Velocity3::zero()).is_err());
    }
}
