//! Machine-word subsets of an indexed universe of at most 64 elements.
//!
//! Every combinatorial object in this crate (downsets, lattice elements,
//! covering families, cell sets) is a subset of a fixed, ordered carrier,
//! so a single `u64` is enough and set algebra is one instruction.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

/// Maximum carrier size supported by [`Bits`].
pub const MAX_UNIVERSE: usize = 64;

/// A subset of `{0, .., n-1}` for some carrier size `n <= 64`.
///
/// The numeric value of the word doubles as the canonical total order on
/// subsets used everywhere for deterministic output.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bits(pub u64);

impl Bits {
    pub const EMPTY: Bits = Bits(0);

    pub fn singleton(i: usize) -> Bits {
        debug_assert!(i < MAX_UNIVERSE);
        Bits(1u64 << i)
    }

    /// The full subset `{0, .., n-1}`.
    pub fn full(n: usize) -> Bits {
        debug_assert!(n <= MAX_UNIVERSE);
        if n == MAX_UNIVERSE {
            Bits(u64::MAX)
        } else {
            Bits((1u64 << n) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_UNIVERSE && self.0 & (1u64 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < MAX_UNIVERSE);
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: Bits) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement inside the universe `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Bits {
        Bits(!self.0 & Bits::full(n).0)
    }

    /// Iterate members in increasing index order.
    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }

    /// Smallest member, if any.
    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }
}

impl BitOr for Bits {
    type Output = Bits;
    fn bitor(self, rhs: Bits) -> Bits {
        Bits(self.0 | rhs.0)
    }
}

impl BitAnd for Bits {
    type Output = Bits;
    fn bitand(self, rhs: Bits) -> Bits {
        Bits(self.0 & rhs.0)
    }
}

impl Sub for Bits {
    type Output = Bits;
    fn sub(self, rhs: Bits) -> Bits {
        Bits(self.0 & !rhs.0)
    }
}

impl FromIterator<usize> for Bits {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Bits {
        let mut b = Bits::EMPTY;
        for i in iter {
            b.insert(i);
        }
        b
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits{{")?;
        let mut first = true;
        for i in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

pub struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}
