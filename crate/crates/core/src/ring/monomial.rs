use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial `x1^a1 * ... * xn^an`.
///
/// `Ord` is the degree reverse lexicographic order with `x1 > x2 > ... > xn`.
/// Every polynomial and module element in the crate is stored in this order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 4]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| b - a).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// Exponent of variable `i` lowered by one, with the old exponent; `None` if it was zero.
    pub fn differentiate(&self, i: usize) -> Option<(u16, Monomial)> {
        let e = self.exps[i];
        if e == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[i] -= 1;
        Some((e, m))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable wins
                ord => return ord.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}
