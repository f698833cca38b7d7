use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{contract, Result};

/// A label `a = (a_Z, a_X)` in `E = Z_d^n x Z_d^n`. Also used for phase-space points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PauliPoint {
    d: u32,
    z: Vec<u32>,
    x: Vec<u32>,
}

impl PauliPoint {
    pub fn new(d: u32, z: &[i64], x: &[i64]) -> Self {
        assert!(d >= 2, "local dimension must be at least 2");
        assert_eq!(z.len(), x.len(), "Z and X parts differ in length");
        let r = |v: &i64| v.rem_euclid(d as i64) as u32;
        Self {
            d,
            z: z.iter().map(r).collect(),
            x: x.iter().map(r).collect(),
        }
    }

    pub fn zero(d: u32, n: usize) -> Self {
        Self {
            d,
            z: vec![0; n],
            x: vec![0; n],
        }
    }

    /// Builds a point from the flat coordinate list `[z_1..z_n, x_1..x_n]`.
    pub fn from_coords(d: u32, coords: &[i64]) -> Result<Self> {
        if d < 2 || !coords.len().is_multiple_of(2) || coords.is_empty() {
            return contract(format!(
                "coordinate list of length {} is not [z..., x...] for d = {d}",
                coords.len()
            ));
        }
        let n = coords.len() / 2;
        Ok(Self::new(d, &coords[..n], &coords[n..]))
    }

    /// Unit vector: the Z label (`x_part = false`) or X label on qudit `q`.
    pub fn unit(d: u32, n: usize, q: usize, x_part: bool) -> Self {
        let mut p = Self::zero(d, n);
        if x_part {
            p.x[q] = 1;
        } else {
            p.z[q] = 1;
        }
        p
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn z(&self) -> &[u32] {
        &self.z
    }

    pub fn x(&self) -> &[u32] {
        &self.x
    }

    pub fn is_zero(&self) -> bool {
        self.z.iter().chain(&self.x).all(|&v| v == 0)
    }

    /// `[z_1..z_n, x_1..x_n]`
    pub fn coords(&self) -> Vec<u32> {
        self.z.iter().chain(&self.x).copied().collect()
    }

    pub fn scaled(&self, k: i64) -> Self {
        let d = self.d as i64;
        let k = k.rem_euclid(d);
        let f = |v: &u32| ((*v as i64 * k) % d) as u32;
        Self {
            d: self.d,
            z: self.z.iter().map(f).collect(),
            x: self.x.iter().map(f).collect(),
        }
    }

    pub fn same_space(&self, other: &Self) -> bool {
        self.d == other.d && self.n() == other.n()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u32, u32) -> u32) -> Self {
        assert!(
            self.same_space(other),
            "points from different spaces: (d={}, n={}) vs (d={}, n={})",
            self.d,
            self.n(),
            other.d,
            other.n()
        );
        Self {
            d: self.d,
            z: self
                .z
                .iter()
                .zip(&other.z)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            x: self
                .x
                .iter()
                .zip(&other.x)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// `a_X . b_Z` over the integers, not reduced.
    pub(crate) fn x_dot_z(&self, other: &Self) -> u64 {
        self.x
            .iter()
            .zip(&other.z)
            .map(|(&a, &b)| a as u64 * b as u64)
            .sum()
    }

    /// `a_Z . a_X` over the integers, not reduced.
    pub(crate) fn z_dot_x(&self) -> u64 {
        self.z
            .iter()
            .zip(&self.x)
            .map(|(&a, &b)| a as u64 * b as u64)
            .sum()
    }
}

impl Add for &PauliPoint {
    type Output = PauliPoint;
    fn add(self, rhs: &PauliPoint) -> PauliPoint {
        let d = self.d;
        self.zip_with(rhs, |a, b| (a + b) % d)
    }
}

impl Sub for &PauliPoint {
    type Output = PauliPoint;
    fn sub(self, rhs: &PauliPoint) -> PauliPoint {
        let d = self.d;
        self.zip_with(rhs, |a, b| (a + d - b) % d)
    }
}

impl Neg for &PauliPoint {
    type Output = PauliPoint;
    fn neg(self) -> PauliPoint {
        self.scaled(-1)
    }
}

impl fmt::Display for PauliPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "(z={};x={})", join(&self.z), join(&self.x))
    }
}

/// `[a,b] = a_Z . b_X - a_X . b_Z mod d`.
pub fn symplectic_form(a: &PauliPoint, b: &PauliPoint) -> Result<u32> {
    if !a.same_space(b) {
        return contract(format!(
            "symplectic form of points from different spaces: {a} and {b}"
        ));
    }
    Ok(symplectic(a, b))
}

/// Unchecked variant of [`symplectic_form`] for points known to share a space.
pub(crate) fn symplectic(a: &PauliPoint, b: &PauliPoint) -> u32 {
    let d = a.d as u64;
    let zx: u64 =
        a.z.iter()
            .zip(&b.x)
            .map(|(&p, &q)| p as u64 * q as u64)
            .sum();
    let xz = a.x_dot_z(b);
    ((zx % d + d - xz % d) % d) as u32
}

/// The finite set `E` for fixed `(d, n)`, with a dense index.
///
/// Points are ordered lexicographically on `(x_1..x_n, z_1..z_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Space {
    d: u32,
    n: usize,
}

impl Space {
    pub fn new(d: u32, n: usize) -> Result<Self> {
        if d < 2 {
            return contract(format!("local dimension d = {d} must be at least 2"));
        }
        if n == 0 {
            return contract("at least one qudit is required");
        }
        if (d as f64).powi(2 * n as i32) > u32::MAX as f64 {
            return contract(format!("d = {d}, n = {n} overflows the label index"));
        }
        Ok(Self { d, n })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1 for odd `d`, 2 for even `d`: phases live in `Z_{scale*d}`.
    pub fn scale(&self) -> u32 {
        if self.d.is_multiple_of(2) {
            2
        } else {
            1
        }
    }

    pub fn phase_modulus(&self) -> u32 {
        self.scale() * self.d
    }

    /// `|E| = d^(2n)`
    pub fn size(&self) -> usize {
        (self.d as usize).pow(2 * self.n as u32)
    }

    /// Hilbert space dimension `d^n`.
    pub fn dim(&self) -> usize {
        (self.d as usize).pow(self.n as u32)
    }

    pub fn contains(&self, a: &PauliPoint) -> bool {
        a.d == self.d && a.n() == self.n
    }

    pub fn index(&self, a: &PauliPoint) -> usize {
        debug_assert!(self.contains(a));
        let d = self.d as usize;
        a.x.iter()
            .chain(&a.z)
            .fold(0usize, |acc, &v| acc * d + v as usize)
    }

    pub fn point(&self, mut idx: usize) -> PauliPoint {
        let d = self.d as usize;
        let mut flat = vec![0u32; 2 * self.n];
        for slot in flat.iter_mut().rev() {
            *slot = (idx % d) as u32;
            idx /= d;
        }
        PauliPoint {
            d: self.d,
            x: flat[..self.n].to_vec(),
            z: flat[self.n..].to_vec(),
        }
    }

    pub fn zero(&self) -> PauliPoint {
        PauliPoint::zero(self.d, self.n)
    }

    pub fn points(&self) -> impl Iterator<Item = PauliPoint> + '_ {
        (0..self.size()).map(move |i| self.point(i))
    }

    /// The `2n` unit vectors: Z labels of every qudit, then X labels.
    pub fn units(&self) -> Vec<PauliPoint> {
        let z = (0..self.n).map(|q| PauliPoint::unit(self.d, self.n, q, false));
        let x = (0..self.n).map(|q| PauliPoint::unit(self.d, self.n, q, true));
        z.chain(x).collect()
    }

    pub fn check(&self, a: &PauliPoint) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            contract(format!(
                "point {a} is not in E for d = {}, n = {}",
                self.d, self.n
            ))
        }
    }
}
