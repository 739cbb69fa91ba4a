//! Test-corpus generation: exhaustive and seeded-random posets, lattices,
//! sites and inverse systems.
//!
//! Exhaustive enumeration produces every poset whose element order is a
//! linear extension; since every finite poset can be relabeled that way,
//! this covers all isomorphism classes, which is what the isomorphism-
//! invariant properties quantify over. Random generation is seeded
//! ChaCha throughout so failures reproduce byte for byte.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::bits::Bits;
use crate::budget::Budget;
use crate::lattice::FinDistLattice;
use crate::motives::{MotiveError, MotiveModule};
use crate::order::{DownSet, Poset};
use crate::profinite::InverseSystem;
use crate::sites::{fin_coverage, Covering, FinSite};

/// All posets on `0..=max` elements whose identity ordering is a linear
/// extension, in a deterministic order.
pub fn exhaustive_posets(max: usize) -> Vec<Poset> {
    let mut out = Vec::new();
    for n in 0..=max {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        for mask in 0u64..(1 << pairs.len()) {
            let mut leq = vec![false; n * n];
            for i in 0..n {
                leq[i * n + i] = true;
            }
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    leq[i * n + j] = true;
                }
            }
            let transitive = (0..n).all(|i| {
                (0..n).all(|j| !leq[i * n + j] || (0..n).all(|k| !leq[j * n + k] || leq[i * n + k]))
            });
            if transitive {
                out.push(Poset::from_leq(
                    (0..n).map(|i| format!("e{i}")).collect(),
                    |p, q| leq[p * n + q],
                ));
            }
        }
    }
    out
}

/// A random poset on `n` elements: random strict pairs compatible with
/// the identity linear extension, transitively closed.
pub fn random_poset(rng: &mut ChaCha8Rng, n: usize) -> Poset {
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
        for j in i + 1..n {
            if rng.gen_bool(0.4) {
                leq[i * n + j] = true;
            }
        }
    }
    // Warshall closure
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
    Poset::from_leq((0..n).map(|i| format!("e{i}")).collect(), |p, q| {
        leq[p * n + q]
    })
}

pub fn random_lattice(rng: &mut ChaCha8Rng, max_poset: usize) -> FinDistLattice {
    let n = rng.gen_range(0..=max_poset);
    let poset = random_poset(rng, n);
    FinDistLattice::birkhoff_opens(&poset, &Budget::default()).expect("small poset")
}

/// A random downset of a poset: downward closure of a random subset.
pub fn random_downset(rng: &mut ChaCha8Rng, poset: &Poset) -> DownSet {
    let bits: Bits = (0..poset.len()).filter(|_| rng.gen_bool(0.4)).collect();
    poset
        .downset(poset.down_closure(bits))
        .expect("closure is a downset")
}

/// A random valid site: the fin coverage of a lattice plus a few extra
/// join families. Extras keep validity: any family joining to its target
/// is covered by the generated coverage once the pair coverings are
/// present.
pub fn random_site(rng: &mut ChaCha8Rng, lattice: &FinDistLattice) -> FinSite {
    let base = fin_coverage(lattice);
    let mut coverings: Vec<Covering> = base.coverings().to_vec();
    let extras = rng.gen_range(0..3);
    for _ in 0..extras {
        let mut family: Vec<usize> = (0..lattice.len()).filter(|_| rng.gen_bool(0.3)).collect();
        if family.is_empty() {
            continue;
        }
        family.shuffle(rng);
        family.truncate(3);
        let target = family
            .iter()
            .fold(lattice.bottom(), |acc, &e| lattice.join(acc, e));
        coverings.push(Covering { target, family });
    }
    FinSite::new(base.carrier().clone(), coverings).expect("carrier unchanged")
}

/// A random monotone map between posets, by rejection; falls back to the
/// constant map onto the chosen minimum when rejection runs long.
pub fn random_monotone_map(rng: &mut ChaCha8Rng, from: &Poset, to: &Poset) -> Vec<usize> {
    assert!(!to.is_empty(), "target poset must be nonempty");
    for _ in 0..200 {
        let map: Vec<usize> = (0..from.len())
            .map(|_| rng.gen_range(0..to.len()))
            .collect();
        let monotone = (0..from.len())
            .all(|a| (0..from.len()).all(|b| !from.leq(a, b) || to.leq(map[a], map[b])));
        if monotone {
            return map;
        }
    }
    let bottom = (0..to.len())
        .find(|&m| (0..to.len()).all(|x| to.leq(m, x)))
        .unwrap_or(0);
    vec![bottom; from.len()]
}

/// The lattice homomorphism dual to a monotone map: preimage on downsets.
/// Monotone `g : Q -> P` induces the bounded hom
/// `O(P) -> O(Q), U -> g^{-1}(U)`.
pub fn hom_from_monotone_map(
    source_poset: &Poset,
    target_poset: &Poset,
    g: &[usize],
) -> crate::lattice::LatticeHom {
    let source = FinDistLattice::birkhoff_opens(source_poset, &Budget::default()).expect("small");
    let target = FinDistLattice::birkhoff_opens(target_poset, &Budget::default()).expect("small");
    let map = source
        .elements()
        .iter()
        .map(|&u| {
            let preimage: Bits = (0..target_poset.len())
                .filter(|&q| u.contains(g[q]))
                .collect();
            target
                .index_of_bits(preimage)
                .expect("preimages of downsets are downsets")
        })
        .collect();
    crate::lattice::LatticeHom::new(source, target, map, true)
}

/// A random chain of finite sets with surjective transitions: stage sizes
/// non-decreasing, capped so the deepest powerset stays desk-scale.
pub fn random_system(rng: &mut ChaCha8Rng, max_stage: usize) -> InverseSystem {
    let depth = rng.gen_range(1..=2);
    let mut sizes = vec![rng.gen_range(1..=3)];
    for _ in 0..depth {
        let last = *sizes.last().expect("nonempty");
        sizes.push(rng.gen_range(last..=max_stage.max(last)));
    }
    let stages: Vec<Vec<String>> = sizes
        .iter()
        .enumerate()
        .map(|(i, &n)| (0..n).map(|x| format!("s{i}_{x}")).collect())
        .collect();
    let transitions = (0..depth)
        .map(|i| {
            let from = sizes[i + 1];
            let to = sizes[i];
            // hit every image once, then fill randomly
            let mut table: Vec<usize> = (0..to).collect();
            while table.len() < from {
                table.push(rng.gen_range(0..to));
            }
            table.shuffle(rng);
            table
        })
        .collect();
    InverseSystem::new(stages, transitions).expect("constructed surjective")
}

/// The standard verification corpus: exhaustive posets, extra random
/// posets for round trips, and the lattice pool with lazily computed
/// motive modules.
pub struct Corpus {
    pub posets: Vec<Poset>,
    /// How many of `posets` come from exhaustive enumeration.
    pub exhaustive_count: usize,
    /// Random posets used only for the Birkhoff round trip (larger cap).
    pub roundtrip_posets: Vec<Poset>,
    pub lattices: Vec<FinDistLattice>,
    modules: std::sync::OnceLock<Vec<Result<MotiveModule, MotiveError>>>,
    boolean_modules: std::sync::OnceLock<Vec<Result<MotiveModule, MotiveError>>>,
}

impl Corpus {
    /// `max_exhaustive` caps the exhaustive poset size; `random` posets of
    /// up to `max_exhaustive` elements extend the lattice pool, and the
    /// same number of posets of up to `roundtrip_cap` elements feed the
    /// round-trip suite.
    pub fn new(seed: u64, max_exhaustive: usize, random: usize, roundtrip_cap: usize) -> Corpus {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut posets = exhaustive_posets(max_exhaustive);
        let exhaustive_count = posets.len();
        for _ in 0..random {
            let n = rng.gen_range(0..=max_exhaustive);
            posets.push(random_poset(&mut rng, n));
        }
        let roundtrip_posets = (0..random)
            .map(|_| {
                let n = rng.gen_range(0..=roundtrip_cap);
                random_poset(&mut rng, n)
            })
            .collect();
        let lattices = posets
            .iter()
            .map(|p| FinDistLattice::birkhoff_opens(p, &Budget::default()).expect("small"))
            .collect();
        Corpus {
            posets,
            exhaustive_count,
            roundtrip_posets,
            lattices,
            modules: std::sync::OnceLock::new(),
            boolean_modules: std::sync::OnceLock::new(),
        }
    }

    pub fn standard(seed: u64) -> Corpus {
        Corpus::new(seed, 5, 200, 7)
    }

    /// Motive modules of the lattice pool, computed once, in parallel.
    pub fn modules(&self) -> &[Result<MotiveModule, MotiveError>] {
        self.modules.get_or_init(|| {
            use rayon::prelude::*;
            self.lattices.par_iter().map(MotiveModule::new).collect()
        })
    }

    /// Motive modules of the Booleanizations, aligned with the pool.
    pub fn boolean_modules(&self) -> &[Result<MotiveModule, MotiveError>] {
        self.boolean_modules.get_or_init(|| {
            use rayon::prelude::*;
            self.lattices
                .par_iter()
                .map(|lattice| {
                    let (algebra, _) = lattice.booleanize()?;
                    MotiveModule::new(algebra.lattice())
                })
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn exhaustive_counts_are_stable() {
        // posets with identity linear extension per size
        assert_eq!(exhaustive_posets(0).len(), 1);
        assert_eq!(exhaustive_posets(1).len(), 2);
        assert_eq!(exhaustive_posets(2).len(), 4);
        assert_eq!(exhaustive_posets(3).len(), 11);
        // every unlabeled poset on <= 3 elements (5 of them) appears
        let sizes: Vec<usize> = exhaustive_posets(3)
            .iter()
            .filter(|p| p.len() == 3)
            .map(|p| p.strict_pairs().len())
            .collect();
        assert_eq!(sizes.len(), 7);
    }

    #[test]
    fn random_posets_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let p = random_poset(&mut rng, 7);
            // Poset::from_leq validates internally; spot-check transitivity
            for a in 0..p.len() {
                for b in 0..p.len() {
                    for c in 0..p.len() {
                        if p.leq(a, b) && p.leq(b, c) {
                            assert!(p.leq(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn random_sites_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let lattice = random_lattice(&mut rng, 4);
            let site = random_site(&mut rng, &lattice);
            assert!(site.validate().is_ok());
        }
    }

    #[test]
    fn random_systems_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let sys = random_system(&mut rng, 5);
            assert!(sys.depth() >= 1);
        }
    }

    #[test]
    fn corpus_is_deterministic() {
        let a = Corpus::new(11, 3, 10, 5);
        let b = Corpus::new(11, 3, 10, 5);
        assert_eq!(a.posets.len(), b.posets.len());
        for (x, y) in a.posets.iter().zip(&b.posets) {
            assert_eq!(x, y);
        }
        for (x, y) in a.roundtrip_posets.iter().zip(&b.roundtrip_posets) {
            assert_eq!(x, y);
        }
    }
}
