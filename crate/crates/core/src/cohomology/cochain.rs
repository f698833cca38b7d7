use serde::{Deserialize, Serialize};

use super::chain::{Chain, Tuple};
use crate::error::{contract, Result};
use crate::pauli::{beta, Gauge, PauliPoint, Space};

/// A `Z_d`-valued functional on basis tuples of one degree, extended linearly.
pub trait Cochain {
    fn degree(&self) -> usize;
    fn modulus(&self) -> u32;
    fn value(&self, t: &Tuple) -> Result<u32>;
}

/// A 1-cochain given by its table of values on `E` (indexed like [`Space::points`]).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneCochain {
    space: Space,
    values: Vec<u32>,
}

impl OneCochain {
    pub fn new(space: Space, values: Vec<u32>) -> Result<Self> {
        if values.len() != space.size() {
            return contract(format!(
                "1-cochain table has {} entries, expected {}",
                values.len(),
                space.size()
            ));
        }
        let d = space.d();
        Ok(Self {
            space,
            values: values.into_iter().map(|v| v % d).collect(),
        })
    }

    pub fn zero(space: Space) -> Self {
        Self {
            space,
            values: vec![0; space.size()],
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn at(&self, a: &PauliPoint) -> u32 {
        self.values[self.space.index(a)]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// `nu(a) + nu(b) - nu(a+b)`
    pub fn coboundary_at(&self, a: &PauliPoint, b: &PauliPoint) -> u32 {
        let d = self.space.d();
        (self.at(a) + self.at(b) + d - self.at(&(a + b))) % d
    }
}

impl Cochain for OneCochain {
    fn degree(&self) -> usize {
        1
    }

    fn modulus(&self) -> u32 {
        self.space.d()
    }

    fn value(&self, t: &Tuple) -> Result<u32> {
        match t.entries() {
            [a] if self.space.contains(a) => Ok(self.at(a)),
            _ => contract(format!("{t} is not a degree-1 tuple of this space")),
        }
    }
}

/// The 2-cochain `beta` of a gauge, defined on commuting pairs.
#[derive(Clone, Copy, Debug)]
pub struct BetaCochain<'a>(pub &'a Gauge);

impl Cochain for BetaCochain<'_> {
    fn degree(&self) -> usize {
        2
    }

    fn modulus(&self) -> u32 {
        self.0.d()
    }

    fn value(&self, t: &Tuple) -> Result<u32> {
        match t.entries() {
            [a, b] => beta(self.0, a, b),
            _ => contract(format!("{t} is not a degree-2 tuple")),
        }
    }
}

/// Linear extension of `f` to the chain `c`.
pub fn evaluate(f: &dyn Cochain, c: &Chain) -> Result<u32> {
    if f.degree() != c.degree() {
        return contract(format!(
            "cochain of degree {} evaluated on a chain of degree {}",
            f.degree(),
            c.degree()
        ));
    }
    let d = f.modulus() as u64;
    let mut acc = 0u64;
    for (t, k) in c.terms() {
        acc = (acc + k as u64 * f.value(t)? as u64) % d;
    }
    Ok(acc as u32)
}

/// `(delta f)(c) = f(boundary c)`.
pub fn coboundary_eval(f: &dyn Cochain, c: &Chain) -> Result<u32> {
    if f.degree() + 1 != c.degree() {
        return contract(format!(
            "coboundary of a degree-{} cochain needs a degree-{} chain, got {}",
            f.degree(),
            f.degree() + 1,
            c.degree()
        ));
    }
    evaluate(f, &c.boundary()?)
}
