use serde::{Deserialize, Serialize};

use crate::cohomology::OneCochain;
use crate::error::{contract, Error, Result};
use crate::modlinalg::ModMatrix;
use crate::pauli::{symplectic, PauliPoint, Space};

/// The pair `(S_g, Phi~_g)` with `g T_a g^dagger = omega^{Phi~_g(a)} T_{S_g a}` in a fixed gauge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordAction {
    space: Space,
    symplectic: ModMatrix,
    perm: Vec<u32>,
    phases: OneCochain,
}

/// `S c` on flat coordinates `[z..., x...]`.
pub(crate) fn apply_matrix(s: &ModMatrix, a: &PauliPoint) -> PauliPoint {
    let coords: Vec<u64> = a.coords().into_iter().map(u64::from).collect();
    let image = s.mul_vec(&coords).expect("matrix matches the label length");
    let flat: Vec<i64> = image.into_iter().map(|v| v as i64).collect();
    PauliPoint::from_coords(a.d(), &flat).expect("well-formed coordinates")
}

impl CliffordAction {
    pub fn identity(space: Space) -> Self {
        let m = 2 * space.n();
        Self {
            space,
            symplectic: ModMatrix::identity(m, space.d() as u64),
            perm: (0..space.size() as u32).collect(),
            phases: OneCochain::zero(space),
        }
    }

    /// Checks that `s` is symplectic and tabulates its permutation of `E`.
    pub fn new(space: Space, s: ModMatrix, phases: OneCochain) -> Result<Self> {
        let m = 2 * space.n();
        if s.rows() != m || s.cols() != m || s.modulus() != space.d() as u64 {
            return contract(format!(
                "symplectic part must be {m}x{m} over Z_{}",
                space.d()
            ));
        }
        if phases.space() != space {
            return contract("phase cochain lives on a different space");
        }
        let units = space.units();
        let images: Vec<PauliPoint> = units.iter().map(|u| apply_matrix(&s, u)).collect();
        for i in 0..m {
            for j in 0..m {
                if symplectic(&images[i], &images[j]) != symplectic(&units[i], &units[j]) {
                    return Err(Error::NotClifford(format!(
                        "S does not preserve the symplectic form on {} and {}",
                        units[i], units[j]
                    )));
                }
            }
        }
        let perm = space
            .points()
            .map(|a| space.index(&apply_matrix(&s, &a)) as u32)
            .collect();
        Ok(Self {
            space,
            symplectic: s,
            perm,
            phases,
        })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn symplectic(&self) -> &ModMatrix {
        &self.symplectic
    }

    pub fn phases(&self) -> &OneCochain {
        &self.phases
    }

    pub fn apply(&self, a: &PauliPoint) -> PauliPoint {
        self.space.point(self.apply_index(self.space.index(a)))
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.perm[i] as usize
    }

    /// `Phi~(a)`
    pub fn phase(&self, a: &PauliPoint) -> u32 {
        self.phases.at(a)
    }

    pub fn phase_index(&self, i: usize) -> u32 {
        self.phases.values()[i]
    }

    /// Action of `g h` (apply `h` first): `S_gh = S_g S_h`, `Phi~_gh(a) = Phi~_h(a) + Phi~_g(S_h a)`.
    pub fn compose(g: &Self, h: &Self) -> Result<Self> {
        if g.space != h.space {
            return contract("composing actions on different spaces");
        }
        let d = g.space.d();
        let s = g.symplectic.mul(&h.symplectic)?;
        let values: Vec<u32> = (0..g.space.size())
            .map(|i| (h.phase_index(i) + g.phase_index(h.apply_index(i))) % d)
            .collect();
        let perm = (0..g.space.size())
            .map(|i| g.perm[h.apply_index(i)])
            .collect();
        Ok(Self {
            space: g.space,
            symplectic: s,
            perm,
            phases: OneCochain::new(g.space, values)?,
        })
    }

    /// Action of `g^{-1}`: `S^{-1}` and `Phi~(a) = -Phi~_g(S^{-1} a)`.
    pub fn inverse(&self) -> Self {
        let size = self.space.size();
        let d = self.space.d();
        let mut inv = vec![0u32; size];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        let values: Vec<u32> = (0..size)
            .map(|i| (d - self.phase_index(inv[i] as usize)) % d)
            .collect();
        let m = 2 * self.space.n();
        let mut s = ModMatrix::zeros(m, m, d as u64);
        for (j, u) in self.space.units().iter().enumerate() {
            let image = self.space.point(inv[self.space.index(u)] as usize);
            for (i, c) in image.coords().into_iter().enumerate() {
                s.set(i, j, c as u64);
            }
        }
        Self {
            space: self.space,
            symplectic: s,
            perm: inv,
            phases: OneCochain::new(self.space, values).expect("sized table"),
        }
    }

    /// The same gate seen in the gauge `gamma + scale*nu`: `Phi~'(a) = Phi~(a) + nu(a) - nu(S a)`.
    pub fn regauged(&self, nu: &OneCochain) -> Result<Self> {
        if nu.space() != self.space {
            return contract("gauge shift lives on a different space");
        }
        let d = self.space.d();
        let values = (0..self.space.size())
            .map(|i| {
                (self.phase_index(i) + nu.values()[i] + d - nu.values()[self.apply_index(i)]) % d
            })
            .collect();
        Ok(Self {
            phases: OneCochain::new(self.space, values)?,
            ..self.clone()
        })
    }

    /// `Phi~(a) + Phi~(b) - Phi~(a+b)`, the value on `boundary [a|b]`.
    pub fn phi_cov(&self, a: &PauliPoint, b: &PauliPoint) -> u32 {
        self.phases.coboundary_at(a, b)
    }

    /// Whether `S` maps the chain `[b] - [a+b] + [a]` onto itself.
    pub fn fixes_boundary(&self, a: &PauliPoint, b: &PauliPoint) -> bool {
        let s = self.space;
        let (i, j, k) = (s.index(a), s.index(b), s.index(&(a + b)));
        boundary_key(i, j, k, s.d())
            == boundary_key(
                self.apply_index(i),
                self.apply_index(j),
                self.apply_index(k),
                s.d(),
            )
    }
}

/// Normalised form of `[j] - [k] + [i]` as sorted `(index, coefficient)` pairs.
fn boundary_key(i: usize, j: usize, k: usize, d: u32) -> Vec<(usize, u32)> {
    let mut terms: Vec<(usize, i64)> = vec![(i, 1), (j, 1), (k, -1)];
    terms.sort_unstable();
    let mut out: Vec<(usize, u32)> = Vec::with_capacity(3);
    for (idx, c) in terms {
        match out.last_mut() {
            Some((last, acc)) if *last == idx => {
                *acc = ((*acc as i64 + c).rem_euclid(d as i64)) as u32;
            }
            _ => out.push((idx, c.rem_euclid(d as i64) as u32)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    out
}
