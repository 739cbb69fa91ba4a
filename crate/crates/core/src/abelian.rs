//! Finitely generated abelian groups in invariant-factor normal form.
//!
//! A group is a free rank plus a chain of torsion invariant factors
//! `d1 | d2 | ...`, each at least 2. Elements are integer coordinate
//! vectors, free coordinates first, torsion coordinates reduced modulo
//! their factor. Equality of groups is equality of normal forms, which
//! makes every group comparison in this crate canonical and decidable.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::Mat;
use crate::snf::{smith_normal_form_flags, SNF_DIAG_ONLY};
use crate::Int;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("torsion factors {0:?} are not an invariant-factor chain")]
    NotNormalForm(Vec<u64>),
    #[error("element has {found} coordinates, the group needs {expected}")]
    BadElement { found: usize, expected: usize },
}

/// A finitely generated abelian group `Z^rank + Z/d1 + Z/d2 + ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbGroup {
    pub rank: usize,
    /// Invariant factors, each >= 2, each dividing the next.
    #[serde(default)]
    pub torsion: Vec<u64>,
}

impl FgAbGroup {
    pub fn new(rank: usize, torsion: Vec<u64>) -> Result<FgAbGroup, AbelianError> {
        let chain = torsion.iter().all(|&d| d >= 2) && torsion.windows(2).all(|w| w[1] % w[0] == 0);
        if !chain {
            return Err(AbelianError::NotNormalForm(torsion));
        }
        Ok(FgAbGroup { rank, torsion })
    }

    pub fn zero() -> FgAbGroup {
        FgAbGroup {
            rank: 0,
            torsion: vec![],
        }
    }

    pub fn free(rank: usize) -> FgAbGroup {
        FgAbGroup {
            rank,
            torsion: vec![],
        }
    }

    pub fn cyclic(d: u64) -> FgAbGroup {
        assert!(d >= 2);
        FgAbGroup {
            rank: 0,
            torsion: vec![d],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Renormalize an arbitrary list of cyclic orders into an invariant
    /// factor chain, by Smith normal form of the diagonal matrix they span.
    pub fn from_cyclic_orders(rank: usize, orders: &[u64]) -> FgAbGroup {
        let nontrivial: Vec<u64> = orders.iter().copied().filter(|&d| d != 1).collect();
        let n = nontrivial.len();
        if n == 0 {
            return FgAbGroup {
                rank,
                torsion: vec![],
            };
        }
        let mut diag: Mat<Int> = Mat::zero(n, n);
        for (i, &d) in nontrivial.iter().enumerate() {
            diag[(i, i)] = Int::from(d);
        }
        let snf = smith_normal_form_flags(&diag, SNF_DIAG_ONLY);
        let torsion = snf
            .invariant_factors()
            .iter()
            .map(|d| u64::try_from(d).expect("desk-scale torsion fits in u64"))
            .collect();
        FgAbGroup { rank, torsion }
    }

    /// Direct sum, renormalized through Smith normal form.
    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut orders = self.torsion.clone();
        orders.extend_from_slice(&other.torsion);
        FgAbGroup::from_cyclic_orders(self.rank + other.rank, &orders)
    }

    /// The sum of `copies` copies of `self`, built directly: repeating each
    /// invariant factor preserves the chain.
    pub fn power(&self, copies: usize) -> FgAbGroup {
        let torsion = self
            .torsion
            .iter()
            .flat_map(|&d| std::iter::repeat_n(d, copies))
            .collect();
        FgAbGroup {
            rank: self.rank * copies,
            torsion,
        }
    }

    /// Number of coordinates of an element.
    pub fn dims(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn zero_element(&self) -> Vec<Int> {
        vec![Int::zero(); self.dims()]
    }

    /// Reduce torsion coordinates into `[0, d)`.
    pub fn reduce(&self, mut coords: Vec<Int>) -> Vec<Int> {
        assert_eq!(coords.len(), self.dims());
        for (i, &d) in self.torsion.iter().enumerate() {
            let j = self.rank + i;
            coords[j] = coords[j].mod_floor(&Int::from(d));
        }
        coords
    }

    pub fn add(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn scale(&self, k: &Int, a: &[Int]) -> Vec<Int> {
        self.reduce(a.iter().map(|x| k * x).collect())
    }

    pub fn is_zero_element(&self, a: &[Int]) -> bool {
        self.reduce(a.to_vec()).iter().all(|x| x.is_zero())
    }

    pub fn eq_elements(&self, a: &[Int], b: &[Int]) -> bool {
        self.reduce(a.to_vec()) == self.reduce(b.to_vec())
    }

    /// Validate that coordinates have the right length and are reduced.
    pub fn check_element(&self, a: &[Int]) -> Result<(), AbelianError> {
        if a.len() != self.dims() {
            return Err(AbelianError::BadElement {
                found: a.len(),
                expected: self.dims(),
            });
        }
        for (i, &d) in self.torsion.iter().enumerate() {
            let x = &a[self.rank + i];
            if x.is_negative() || *x >= Int::from(d) {
                return Err(AbelianError::BadElement {
                    found: a.len(),
                    expected: self.dims(),
                });
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for &d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_is_enforced() {
        assert!(FgAbGroup::new(1, vec![2, 6]).is_ok());
        assert!(FgAbGroup::new(0, vec![2, 3]).is_err());
        assert!(FgAbGroup::new(0, vec![1]).is_err());
    }

    #[test]
    fn renormalization_merges_coprime_factors() {
        // Z/2 + Z/3 = Z/6
        let g = FgAbGroup::from_cyclic_orders(0, &[2, 3]);
        assert_eq!(g, FgAbGroup::cyclic(6));
        // Z/4 + Z/6 = Z/2 + Z/12
        let g = FgAbGroup::from_cyclic_orders(1, &[4, 6]);
        assert_eq!(g, FgAbGroup::new(1, vec![2, 12]).unwrap());
    }

    #[test]
    fn direct_sum_and_power_agree() {
        let a = FgAbGroup::new(1, vec![2, 6]).unwrap();
        let doubled = a.direct_sum(&a);
        assert_eq!(doubled, a.power(2));
        assert_eq!(doubled.rank, 2);
        assert_eq!(doubled.torsion, vec![2, 2, 6, 6]);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_group() -> impl Strategy<Value = FgAbGroup> {
            (0usize..3, proptest::collection::vec(1u64..30, 0..4))
                .prop_map(|(rank, orders)| FgAbGroup::from_cyclic_orders(rank, &orders))
        }

        proptest! {
            #[test]
            fn renormalization_preserves_total_order(orders in proptest::collection::vec(1u64..50, 0..5)) {
                let g = FgAbGroup::from_cyclic_orders(0, &orders);
                let before: u64 = orders.iter().product();
                let after: u64 = g.torsion.iter().product();
                prop_assert_eq!(before, after, "the group order is invariant");
                prop_assert!(g.torsion.windows(2).all(|w| w[1] % w[0] == 0));
            }

            #[test]
            fn direct_sum_is_commutative_and_associative(a in arb_group(), b in arb_group(), c in arb_group()) {
                prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
                prop_assert_eq!(a.direct_sum(&b).direct_sum(&c), a.direct_sum(&b.direct_sum(&c)));
                prop_assert_eq!(a.direct_sum(&FgAbGroup::zero()), a.clone());
            }

            #[test]
            fn power_is_iterated_direct_sum(a in arb_group(), copies in 0usize..4) {
                let mut folded = FgAbGroup::zero();
                for _ in 0..copies {
                    folded = folded.direct_sum(&a);
                }
                prop_assert_eq!(a.power(copies), folded);
            }
        }
    }

    #[test]
    fn element_arithmetic_mod_torsion() {
        let g = FgAbGroup::new(1, vec![3]).unwrap();
        let a = vec![Int::from(2), Int::from(2)];
        let b = vec![Int::from(-1), Int::from(2)];
        assert_eq!(g.add(&a, &b), vec![Int::from(1), Int::from(1)]);
        assert!(g.is_zero_element(&g.scale(&Int::from(3), &[Int::from(0), Int::from(1)])));
        assert!(g.check_element(&a).is_ok());
        assert!(g.check_element(&[Int::from(0)]).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(FgAbGroup::zero().to_string(), "0");
        assert_eq!(FgAbGroup::free(2).to_string(), "Z^2");
        assert_eq!(FgAbGroup::new(1, vec![2]).unwrap().to_string(), "Z + Z/2");
    }
}
