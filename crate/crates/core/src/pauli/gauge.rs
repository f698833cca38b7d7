use serde::{Deserialize, Serialize};

use super::op::PauliOp;
use super::point::{PauliPoint, Space};
use crate::error::{contract, Error, Result};
use crate::modlinalg::inverse_mod;

/// Largest `|E|` for which a gauge table is materialised.
pub const MAX_GAUGE_POINTS: usize = 1 << 22;

/// A phase convention `gamma: E -> Z_{scale*d}` fixing `T_a = mu^gamma(a) Z(a_Z) X(a_X)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gauge {
    space: Space,
    gamma: Vec<u32>,
}

impl Gauge {
    /// Gross convention `-2^{-1} a_Z.a_X` for odd `d`; `a_Z.a_X mod 2d` for even `d`.
    pub fn standard(d: u32, n: usize) -> Result<Self> {
        let space = Space::new(d, n)?;
        Self::guard_size(space)?;
        let pm = space.phase_modulus() as u64;
        let factor = if d % 2 == 1 {
            let half = inverse_mod(2, d as u64).expect("2 is a unit for odd d");
            (d as u64 - half) % d as u64
        } else {
            1
        };
        let gamma = space
            .points()
            .map(|a| ((a.z_dot_x() % pm) * factor % pm) as u32)
            .collect();
        Ok(Self { space, gamma })
    }

    /// A gauge from explicit values indexed like [`Space::points`]; invariants are checked.
    pub fn from_values(space: Space, gamma: Vec<u32>) -> Result<Self> {
        Self::guard_size(space)?;
        if gamma.len() != space.size() {
            return contract(format!(
                "gauge table has {} entries, expected {}",
                gamma.len(),
                space.size()
            ));
        }
        let pm = space.phase_modulus();
        let gamma: Vec<u32> = gamma.into_iter().map(|g| g % pm).collect();
        let g = Self { space, gamma };
        g.validate()?;
        Ok(g)
    }

    fn guard_size(space: Space) -> Result<()> {
        if space.size() > MAX_GAUGE_POINTS {
            return Err(Error::Resource(format!(
                "|E| = {} exceeds the gauge table limit {MAX_GAUGE_POINTS}",
                space.size()
            )));
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        if self.gamma[0] != 0 {
            return contract("gamma(0) must be 0");
        }
        if self.space.scale() == 2 {
            for (i, a) in self.space.points().enumerate() {
                if !(self.gamma[i] as u64 + a.z_dot_x()).is_multiple_of(2) {
                    return contract(format!(
                        "gamma({a}) = {} has the wrong parity for even d",
                        self.gamma[i]
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn d(&self) -> u32 {
        self.space.d()
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn gamma(&self, a: &PauliPoint) -> u32 {
        self.gamma[self.space.index(a)]
    }

    pub fn values(&self) -> &[u32] {
        &self.gamma
    }

    /// `T_a` in this gauge.
    pub fn op(&self, a: &PauliPoint) -> PauliOp {
        PauliOp::new(self.gamma(a), a.clone())
    }

    /// `gamma + scale * nu`, with `nu` indexed like the points and `nu(0) = 0`.
    pub fn shifted(&self, nu: &[u32]) -> Result<Self> {
        if nu.len() != self.gamma.len() {
            return contract("shift vector length differs from |E|");
        }
        if !nu[0].is_multiple_of(self.d()) {
            return contract("a gauge shift must vanish at 0");
        }
        let pm = self.space.phase_modulus() as u64;
        let scale = self.space.scale() as u64;
        let d = self.d() as u64;
        let gamma = self
            .gamma
            .iter()
            .zip(nu)
            .map(|(&g, &v)| ((g as u64 + scale * (v as u64 % d)) % pm) as u32)
            .collect();
        Ok(Self {
            space: self.space,
            gamma,
        })
    }

    /// Sets a single value, re-checking the invariants.
    pub fn with_value(&self, a: &PauliPoint, gamma: u32) -> Result<Self> {
        self.space.check(a)?;
        let mut g = self.clone();
        g.gamma[self.space.index(a)] = gamma % self.space.phase_modulus();
        g.validate()?;
        Ok(g)
    }
}

/// Free-function form of [`Gauge::standard`].
pub fn standard_gauge(d: u32, n: usize) -> Result<Gauge> {
    Gauge::standard(d, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_examples() {
        let g = Gauge::standard(3, 1).unwrap();
        assert_eq!(g.gamma(&PauliPoint::new(3, &[1], &[1])), 1);
        let g = Gauge::standard(2, 1).unwrap();
        assert_eq!(g.gamma(&PauliPoint::new(2, &[1], &[1])), 1);
        for d in 2..9 {
            let g = Gauge::standard(d, 2).unwrap();
            assert_eq!(g.gamma(&PauliPoint::zero(d, 2)), 0);
        }
    }

    #[test]
    fn d_below_two_is_rejected() {
        assert!(matches!(Gauge::standard(1, 1), Err(Error::Contract(_))));
        assert!(matches!(Gauge::standard(0, 1), Err(Error::Contract(_))));
    }

    #[test]
    fn parity_is_enforced_for_even_d() {
        let s = Space::new(2, 1).unwrap();
        assert!(Gauge::from_values(s, vec![0, 0, 0, 1]).is_ok());
        assert!(Gauge::from_values(s, vec![0, 0, 0, 2]).is_err());
        assert!(Gauge::from_values(s, vec![2, 0, 0, 1]).is_err());
        assert!(Gauge::from_values(s, vec![0, 0]).is_err());
    }
}
