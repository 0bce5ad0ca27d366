//! Arithmetic in `Z_v`, the order-`t` subgroup `J`, and supports.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::sample_rng;

/// The cyclic ring `Z_v` together with the size `t` of the forbidden subgroup `J`.
///
/// Elements are always canonical residues in `0..v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    v: usize,
    t: usize,
}

impl Ring {
    pub fn new(v: usize, t: usize) -> Result<Self> {
        if t == 0 || v < 3 || v % t != 0 {
            return Err(Error::InvalidRing { v, t });
        }
        // J must have at least two cosets, otherwise K_{(v/t)×t} has no edges.
        if v / t < 2 {
            return Err(Error::InvalidRing { v, t });
        }
        let ring = Ring { v, t };
        // An involution x = -x outside J would make supports impossible.
        if v % 2 == 0 && !ring.in_j(v / 2) {
            return Err(Error::InvalidRing { v, t });
        }
        Ok(ring)
    }

    /// The ring `Z_{2nk+t}` used by an `n`-column array with `k` entries per column.
    pub fn for_array(n: usize, k: usize, t: usize) -> Result<Self> {
        let two_nk = 2 * n * k;
        if t == 0 || two_nk % t != 0 {
            return Err(Error::InvalidRing { v: two_nk + t, t });
        }
        Ring::new(two_nk + t, t)
    }

    #[inline]
    pub fn v(&self) -> usize {
        self.v
    }

    #[inline]
    pub fn t(&self) -> usize {
        self.t
    }

    /// Index of `J`, i.e. the number of parts `v/t` of the multipartite graph.
    #[inline]
    pub fn parts(&self) -> usize {
        self.v / self.t
    }

    /// Size of every neighbourhood in `K_{(v/t)×t}`.
    #[inline]
    pub fn degree(&self) -> usize {
        self.v - self.t
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> usize {
        x.rem_euclid(self.v as i64) as usize
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        let s = a + b;
        if s >= self.v {
            s - self.v
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        if a >= b {
            a - b
        } else {
            a + self.v - b
        }
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        if a == 0 {
            0
        } else {
            self.v - a
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        ((a as u128 * b as u128) % self.v as u128) as usize
    }

    #[inline]
    pub fn in_j(&self, x: usize) -> bool {
        x % self.parts() == 0
    }

    /// The subgroup `J` of order `t`: `{0, v/t, 2v/t, …}`.
    pub fn subgroup_j(&self) -> Vec<usize> {
        let step = self.parts();
        (0..self.t).map(|i| i * step).collect()
    }

    /// `Z_v \ J`, in increasing order. This is also `N(0)` in `K_{(v/t)×t}`.
    pub fn non_j(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.v).filter(move |&x| !self.in_j(x))
    }

    pub fn is_unit(&self, u: usize) -> bool {
        num_integer::gcd(u % self.v, self.v) == 1
    }

    pub fn units(&self) -> Vec<usize> {
        (1..self.v).filter(|&u| self.is_unit(u)).collect()
    }

    pub fn inverse(&self, u: usize) -> Option<usize> {
        let (mut r0, mut r1) = (self.v as i64, (u % self.v) as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        (r0 == 1).then(|| self.reduce(s0))
    }

    /// Additive order of `x`: the least `λ > 0` with `λx = 0`.
    pub fn additive_order(&self, x: usize) -> usize {
        lambda_of(x, self.v)
    }
}

/// Least positive `λ` with `λ·sum ≡ 0 (mod v)`, i.e. `v / gcd(sum, v)`.
pub fn lambda_of(sum: usize, v: usize) -> usize {
    v / num_integer::gcd(sum % v, v)
}

/// A set `Ω` with `Ω ∪ −Ω = Z_v \ J` and `Ω ∩ −Ω = ∅`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Support {
    ring: Ring,
    elements: Vec<usize>,
}

impl Support {
    /// Checks every support invariant.
    pub fn new(ring: Ring, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut seen = vec![false; ring.v()];
        let mut sorted = BTreeSet::new();
        for x in elements {
            if x >= ring.v() {
                return Err(Error::InvalidSupport(format!("{x} is not a residue mod {}", ring.v())));
            }
            if ring.in_j(x) {
                return Err(Error::InvalidSupport(format!("{x} lies in J")));
            }
            if seen[x] || seen[ring.neg(x)] {
                return Err(Error::InvalidSupport(format!("±{x} covered twice")));
            }
            seen[x] = true;
            sorted.insert(x);
        }
        let expected = ring.degree() / 2;
        if sorted.len() != expected {
            return Err(Error::InvalidSupport(format!(
                "support has {} elements, expected (v-t)/2 = {expected}",
                sorted.len()
            )));
        }
        Ok(Support { ring, elements: sorted.into_iter().collect() })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// `Ω = {x : 1 ≤ x ≤ ⌈v/2⌉ − 1, x ∉ J}`.
pub fn default_support(ring: Ring) -> Support {
    let upper = ring.v().div_ceil(2) - 1;
    let elements = (1..=upper).filter(|&x| !ring.in_j(x));
    Support::new(ring, elements).expect("lower half of Z_v \\ J is a support")
}

/// Flips each element of the default support to its negative with probability 1/2.
///
/// Elements are visited in increasing order and each consumes one `gen_bool(0.5)`
/// draw from the ChaCha8 stream seeded by `seed` (see [`crate::rng`]).
pub fn random_support(ring: Ring, seed: u64) -> Support {
    let mut rng = sample_rng(seed);
    random_support_with(ring, &mut rng)
}

pub(crate) fn random_support_with<R: Rng>(ring: Ring, rng: &mut R) -> Support {
    let base = default_support(ring);
    let flipped: Vec<usize> = base
        .elements()
        .iter()
        .map(|&x| if rng.gen_bool(0.5) { ring.neg(x) } else { x })
        .collect();
    Support::new(ring, flipped).expect("sign flips preserve the support property")
}
