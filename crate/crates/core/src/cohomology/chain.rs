use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Result};
use crate::pauli::{symplectic, PauliPoint, Space};

/// Highest degree of the complexes.
pub const MAX_DEGREE: usize = 3;

/// A basis element `[v_1|...|v_k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tuple(pub Vec<PauliPoint>);

impl Tuple {
    pub fn new(entries: Vec<PauliPoint>) -> Self {
        Self(entries)
    }

    pub fn pair(a: &PauliPoint, b: &PauliPoint) -> Self {
        Self(vec![a.clone(), b.clone()])
    }

    pub fn single(a: &PauliPoint) -> Self {
        Self(vec![a.clone()])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[PauliPoint] {
        &self.0
    }

    pub fn is_commuting(&self) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, a)| self.0[i + 1..].iter().all(|b| symplectic(a, b) == 0))
    }

    /// Applies a map to every entry.
    pub fn map(&self, f: impl Fn(&PauliPoint) -> PauliPoint) -> Tuple {
        Tuple(self.0.iter().map(f).collect())
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join("|"))
    }
}

/// A finite `Z_d`-linear combination of tuples of a fixed degree.
///
/// `restricted` chains live in the commuting complex; the others in the unrestricted one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    space: Space,
    degree: usize,
    restricted: bool,
    terms: BTreeMap<Tuple, u32>,
}

impl Chain {
    pub fn zero(space: Space, degree: usize, restricted: bool) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} above {MAX_DEGREE}");
        Self {
            space,
            degree,
            restricted,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        space: Space,
        degree: usize,
        restricted: bool,
        terms: impl IntoIterator<Item = (i64, Tuple)>,
    ) -> Result<Self> {
        let mut c = Self::zero(space, degree, restricted);
        for (k, t) in terms {
            c.add_term(k, t)?;
        }
        Ok(c)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_restricted(&self) -> bool {
        self.restricted
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tuple, u32)> {
        self.terms.iter().map(|(t, &k)| (t, k))
    }

    pub fn coefficient(&self, t: &Tuple) -> u32 {
        self.terms.get(t).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: i64, t: Tuple) -> Result<()> {
        if t.degree() != self.degree {
            return contract(format!(
                "tuple {t} has degree {}, chain has degree {}",
                t.degree(),
                self.degree
            ));
        }
        if let Some(p) = t.entries().iter().find(|p| !self.space.contains(p)) {
            return contract(format!("entry {p} lies outside the chain's space"));
        }
        if self.restricted && !t.is_commuting() {
            return contract(format!("tuple {t} is not pairwise commuting"));
        }
        self.add_unchecked(k, t);
        Ok(())
    }

    fn add_unchecked(&mut self, k: i64, t: Tuple) {
        let d = self.space.d() as i64;
        let k = k.rem_euclid(d) as u32;
        if k == 0 {
            return;
        }
        let d = d as u32;
        let entry = self.terms.entry(t).or_insert(0);
        *entry = (*entry + k) % d;
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn plus(&self, other: &Chain) -> Result<Chain> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (t, k) in other.terms() {
            out.add_unchecked(k as i64, t.clone());
        }
        Ok(out)
    }

    pub fn scaled(&self, k: i64) -> Chain {
        let mut out = Chain::zero(self.space, self.degree, self.restricted);
        for (t, c) in self.terms() {
            out.add_unchecked(k * c as i64, t.clone());
        }
        out
    }

    fn compatible(&self, other: &Chain) -> Result<()> {
        if self.space != other.space
            || self.degree != other.degree
            || self.restricted != other.restricted
        {
            return contract("chains differ in space, degree or complex");
        }
        Ok(())
    }

    /// Applies a map to every entry of every tuple, keeping coefficients.
    pub fn map_points(&self, f: impl Fn(&PauliPoint) -> PauliPoint) -> Result<Chain> {
        let mut out = Chain::zero(self.space, self.degree, self.restricted);
        for (t, k) in self.terms() {
            out.add_term(k as i64, t.map(&f))?;
        }
        Ok(out)
    }

    /// The boundary map of the bar complex.
    pub fn boundary(&self) -> Result<Chain> {
        if self.degree == 0 {
            return contract("boundary of a degree-0 chain");
        }
        let k = self.degree;
        let mut out = Chain::zero(self.space, k - 1, self.restricted);
        for (t, c) in self.terms() {
            let c = c as i64;
            let v = t.entries();
            out.add_unchecked(c, Tuple(v[1..].to_vec()));
            for i in 1..k {
                let mut merged = v[..i - 1].to_vec();
                merged.push(&v[i - 1] + &v[i]);
                merged.extend_from_slice(&v[i + 1..]);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                out.add_unchecked(sign * c, Tuple(merged));
            }
            let sign = if k.is_multiple_of(2) { 1 } else { -1 };
            out.add_unchecked(sign * c, Tuple(v[..k - 1].to_vec()));
        }
        Ok(out)
    }
}

/// Serializable form of a chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub d: u32,
    pub n: usize,
    pub degree: usize,
    pub restricted: bool,
    /// `(coefficient, [[z..., x...], ...])`
    pub terms: Vec<(u32, Vec<Vec<u32>>)>,
}

impl From<&Chain> for ChainRecord {
    fn from(c: &Chain) -> Self {
        Self {
            d: c.space.d(),
            n: c.space.n(),
            degree: c.degree,
            restricted: c.restricted,
            terms: c
                .terms()
                .map(|(t, k)| (k, t.entries().iter().map(|p| p.coords()).collect()))
                .collect(),
        }
    }
}

impl TryFrom<&ChainRecord> for Chain {
    type Error = crate::Error;
    fn try_from(r: &ChainRecord) -> Result<Chain> {
        let space = Space::new(r.d, r.n)?;
        if r.degree > MAX_DEGREE {
            return contract(format!("degree {} above {MAX_DEGREE}", r.degree));
        }
        let mut c = Chain::zero(space, r.degree, r.restricted);
        for (k, entries) in &r.terms {
            let pts = entries
                .iter()
                .map(|e| {
                    let coords: Vec<i64> = e.iter().map(|&v| v as i64).collect();
                    let p = PauliPoint::from_coords(r.d, &coords)?;
                    space.check(&p)?;
                    Ok(p)
                })
                .collect::<Result<Vec<_>>>()?;
            c.add_term(*k as i64, Tuple(pts))?;
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(d: u32, z: i64, x: i64) -> PauliPoint {
        PauliPoint::new(d, &[z], &[x])
    }

    #[test]
    fn boundary_of_a_face() {
        let s = Space::new(3, 1).unwrap();
        let (a, b) = (pt(3, 1, 0), pt(3, 0, 1));
        let f = Chain::from_terms(s, 2, false, [(1, Tuple::pair(&a, &b))]).unwrap();
        let expected = Chain::from_terms(
            s,
            1,
            false,
            [
                (1, Tuple::single(&b)),
                (-1, Tuple::single(&(&a + &b))),
                (1, Tuple::single(&a)),
            ],
        )
        .unwrap();
        assert_eq!(f.boundary().unwrap(), expected);
    }

    #[test]
    fn boundary_of_a_volume() {
        let s = Space::new(5, 1).unwrap();
        let (a, b, c) = (pt(5, 1, 0), pt(5, 2, 0), pt(5, 3, 0));
        let v = Chain::from_terms(
            s,
            3,
            true,
            [(1, Tuple(vec![a.clone(), b.clone(), c.clone()]))],
        )
        .unwrap();
        let expected = Chain::from_terms(
            s,
            2,
            true,
            [
                (1, Tuple::pair(&b, &c)),
                (-1, Tuple::pair(&(&a + &b), &c)),
                (1, Tuple::pair(&a, &(&b + &c))),
                (-1, Tuple::pair(&a, &b)),
            ],
        )
        .unwrap();
        assert_eq!(v.boundary().unwrap(), expected);
    }

    #[test]
    fn boundary_of_zero_pair() {
        let s = Space::new(2, 1).unwrap();
        let z = s.zero();
        let f = Chain::from_terms(s, 2, true, [(1, Tuple::pair(&z, &z))]).unwrap();
        let expected = Chain::from_terms(s, 1, true, [(1, Tuple::single(&z))]).unwrap();
        assert_eq!(f.boundary().unwrap(), expected);
    }

    #[test]
    fn degree_zero_boundary_is_an_error() {
        let s = Space::new(2, 1).unwrap();
        assert!(Chain::zero(s, 0, true).boundary().is_err());
    }

    #[test]
    fn restricted_chains_reject_noncommuting_tuples() {
        let s = Space::new(2, 1).unwrap();
        let mut c = Chain::zero(s, 2, true);
        assert!(c
            .add_term(1, Tuple::pair(&pt(2, 1, 0), &pt(2, 0, 1)))
            .is_err());
        let mut c = Chain::zero(s, 2, false);
        assert!(c
            .add_term(1, Tuple::pair(&pt(2, 1, 0), &pt(2, 0, 1)))
            .is_ok());
    }

    #[test]
    fn record_round_trip() {
        let s = Space::new(4, 1).unwrap();
        let c =
            Chain::from_terms(s, 2, false, [(3, Tuple::pair(&pt(4, 1, 2), &pt(4, 3, 3)))]).unwrap();
        let r = ChainRecord::from(&c);
        let json = serde_json::to_string(&r).unwrap();
        let back: ChainRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(Chain::try_from(&back).unwrap(), c);
    }

    proptest! {
        #[test]
        fn boundary_squares_to_zero(
            d in 2u32..7,
            coords in proptest::collection::vec((-9i64..9, proptest::collection::vec(0i64..7, 12)), 1..5),
        ) {
            let s = Space::new(d, 2).unwrap();
            let mut c = Chain::zero(s, 3, false);
            let mut r = Chain::zero(s, 3, true);
            for (k, v) in &coords {
                let p = |i: usize| PauliPoint::new(d, &v[i..i + 2], &v[i + 2..i + 4]);
                let t = Tuple(vec![p(0), p(4), p(8)]);
                c.add_term(*k, t.clone()).unwrap();
                // restricted triples: multiples of one label commute pairwise
                let base = p(0);
                let tr = Tuple(vec![base.scaled(v[4]), base.scaled(v[5]), base.scaled(v[6])]);
                r.add_term(*k, tr).unwrap();
            }
            prop_assert!(c.boundary().unwrap().boundary().unwrap().is_zero());
            prop_assert!(r.boundary().unwrap().boundary().unwrap().is_zero());
        }
    }
}
