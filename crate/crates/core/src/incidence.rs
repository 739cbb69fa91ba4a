//! Incidence algebras of finite posets.
//!
//! Elements are integer-valued functions on the order pairs
//! `{(p, q) | p <= q}`; multiplication is convolution over intermediate
//! chains. Coefficients are generic over the integer scalar: convolution
//! products grow quickly, so concrete use sites pick [`crate::Int`].

use std::collections::HashMap;

use crate::matrix::Scalar;
use crate::order::Poset;

/// The incidence algebra of a poset, with its basis of order pairs fixed
/// once at construction.
#[derive(Debug, Clone)]
pub struct IncidenceAlgebra<I> {
    poset: Poset,
    pairs: Vec<(usize, usize)>,
    pair_index: HashMap<(usize, usize), usize>,
    /// For each basis pair `(p, r)`, the q with `p <= q <= r`.
    chains: Vec<Vec<usize>>,
    _marker: std::marker::PhantomData<I>,
}

/// An element, stored by its coefficients on the basis pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceElement<I> {
    pub coeffs: Vec<I>,
}

impl<I: Scalar> IncidenceAlgebra<I> {
    pub fn new(poset: Poset) -> Self {
        let mut pairs = Vec::new();
        for p in 0..poset.len() {
            for q in 0..poset.len() {
                if poset.leq(p, q) {
                    pairs.push((p, q));
                }
            }
        }
        let pair_index: HashMap<_, _> = pairs
            .iter()
            .copied()
            .enumerate()
            .map(|(i, pq)| (pq, i))
            .collect();
        let chains = pairs
            .iter()
            .map(|&(p, r)| {
                (0..poset.len())
                    .filter(|&q| poset.leq(p, q) && poset.leq(q, r))
                    .collect()
            })
            .collect();
        IncidenceAlgebra {
            poset,
            pairs,
            pair_index,
            chains,
            _marker: std::marker::PhantomData,
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// The module rank: the number of order pairs.
    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn zero(&self) -> IncidenceElement<I> {
        IncidenceElement {
            coeffs: (0..self.rank()).map(|_| I::zero()).collect(),
        }
    }

    /// The two-sided unit: indicator of the diagonal pairs.
    pub fn delta(&self) -> IncidenceElement<I> {
        let mut e = self.zero();
        for (i, &(p, q)) in self.pairs.iter().enumerate() {
            if p == q {
                e.coeffs[i] = I::one();
            }
        }
        e
    }

    /// The constant-one function.
    pub fn zeta(&self) -> IncidenceElement<I> {
        IncidenceElement {
            coeffs: (0..self.rank()).map(|_| I::one()).collect(),
        }
    }

    /// The Moebius function, by the interval recursion
    /// `mu(p, p) = 1`, `mu(p, r) = -sum_{p <= q < r} mu(p, q)`.
    pub fn moebius(&self) -> IncidenceElement<I> {
        let mut e = self.zero();
        // order pairs by interval size so dependencies resolve first
        let mut order: Vec<usize> = (0..self.rank()).collect();
        order.sort_by_key(|&i| self.chains[i].len());
        for i in order {
            let (p, r) = self.pairs[i];
            if p == r {
                e.coeffs[i] = I::one();
            } else {
                let mut acc = I::zero();
                for &q in &self.chains[i] {
                    if q != r {
                        acc = acc + e.coeffs[self.pair_index[&(p, q)]].clone();
                    }
                }
                e.coeffs[i] = -acc;
            }
        }
        e
    }

    pub fn get<'a>(&self, e: &'a IncidenceElement<I>, p: usize, q: usize) -> Option<&'a I> {
        self.pair_index.get(&(p, q)).map(|&i| &e.coeffs[i])
    }

    /// Convolution `(f * g)(p, r) = sum_{p <= q <= r} f(p, q) g(q, r)`.
    pub fn mul(&self, f: &IncidenceElement<I>, g: &IncidenceElement<I>) -> IncidenceElement<I> {
        let mut out = self.zero();
        for (i, &(p, r)) in self.pairs.iter().enumerate() {
            let mut acc = I::zero();
            for &q in &self.chains[i] {
                let a = &f.coeffs[self.pair_index[&(p, q)]];
                let b = &g.coeffs[self.pair_index[&(q, r)]];
                acc = acc + a.clone() * b.clone();
            }
            out.coeffs[i] = acc;
        }
        out
    }

    pub fn add(&self, f: &IncidenceElement<I>, g: &IncidenceElement<I>) -> IncidenceElement<I> {
        IncidenceElement {
            coeffs: f
                .coeffs
                .iter()
                .zip(&g.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

/// Moebius function values of a poset, as a lookup on pairs.
pub fn moebius_table(poset: &Poset) -> HashMap<(usize, usize), crate::Int> {
    let alg: IncidenceAlgebra<crate::Int> = IncidenceAlgebra::new(poset.clone());
    let mu = alg.moebius();
    alg.pairs()
        .iter()
        .enumerate()
        .map(|(i, &pq)| (pq, mu.coeffs[i].clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Int;
    use rand::{Rng, SeedableRng};

    fn diamond() -> Poset {
        Poset::from_leq(
            vec!["0".into(), "u".into(), "v".into(), "1".into()],
            |p, q| p == q || p == 0 || q == 3,
        )
    }

    #[test]
    fn two_chain_rank_is_three() {
        let alg: IncidenceAlgebra<Int> = IncidenceAlgebra::new(Poset::chain(2));
        assert_eq!(alg.rank(), 3);
    }

    #[test]
    fn one_point_moebius_is_delta() {
        let alg: IncidenceAlgebra<Int> = IncidenceAlgebra::new(Poset::chain(1));
        assert_eq!(alg.rank(), 1);
        assert_eq!(alg.moebius(), alg.delta());
    }

    #[test]
    fn two_chain_moebius() {
        // solving the interval recursion by hand: mu(a,a)=mu(b,b)=1, mu(a,b)=-1
        let alg: IncidenceAlgebra<Int> = IncidenceAlgebra::new(Poset::chain(2));
        let mu = alg.moebius();
        assert_eq!(alg.get(&mu, 0, 1), Some(&Int::from(-1)));
        assert_eq!(alg.get(&mu, 0, 0), Some(&Int::from(1)));
        assert_eq!(alg.mul(&mu, &alg.zeta()), alg.delta());
    }

    #[test]
    fn moebius_inverts_zeta_both_sides() {
        for poset in [Poset::chain(4), Poset::antichain(3), diamond()] {
            let alg: IncidenceAlgebra<Int> = IncidenceAlgebra::new(poset);
            let mu = alg.moebius();
            let zeta = alg.zeta();
            assert_eq!(alg.mul(&mu, &zeta), alg.delta());
            assert_eq!(alg.mul(&zeta, &mu), alg.delta());
        }
    }

    #[test]
    fn moebius_inverts_zeta_over_the_small_corpus() {
        for poset in crate::corpus::exhaustive_posets(4) {
            let alg: IncidenceAlgebra<Int> = IncidenceAlgebra::new(poset);
            let mu = alg.moebius();
            let zeta = alg.zeta();
            assert_eq!(alg.mul(&mu, &zeta), alg.delta());
            assert_eq!(alg.mul(&zeta, &mu), alg.delta());
        }
    }

    #[test]
    fn convolution_is_associative_over_the_small_corpus() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for poset in crate::corpus::exhaustive_posets(3) {
            let alg: IncidenceAlgebra<Int> = IncidenceAlgebra::new(poset);
            for _ in 0..100 {
                let mut draw = || IncidenceElement {
                    coeffs: (0..alg.rank())
                        .map(|_| Int::from(rng.gen_range(-3i64..=3)))
                        .collect(),
                };
                let (f, g, h) = (draw(), draw(), draw());
                assert_eq!(alg.mul(&alg.mul(&f, &g), &h), alg.mul(&f, &alg.mul(&g, &h)));
            }
        }
    }

    #[test]
    fn delta_is_two_sided_unit_and_mul_associative() {
        let alg: IncidenceAlgebra<Int> = IncidenceAlgebra::new(diamond());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let rand_elt = |rng: &mut rand_chacha::ChaCha8Rng| IncidenceElement {
            coeffs: (0..alg.rank())
                .map(|_| Int::from(rng.gen_range(-4i64..=4)))
                .collect(),
        };
        for _ in 0..100 {
            let f = rand_elt(&mut rng);
            let g = rand_elt(&mut rng);
            let h = rand_elt(&mut rng);
            assert_eq!(alg.mul(&alg.delta(), &f), f);
            assert_eq!(alg.mul(&f, &alg.delta()), f);
            assert_eq!(alg.mul(&alg.mul(&f, &g), &h), alg.mul(&f, &alg.mul(&g, &h)));
        }
    }
}
