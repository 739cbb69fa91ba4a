//! Finitary coverages on posets with meets, and propositional sheaves.
//!
//! A site stores its coverings by generators; identity coverings are
//! implicit. Base change and locality are enforced against the coverage
//! the generators generate, not against the listing itself: the membership
//! test "family F covers p" is `p ∈ (F↓)^sh`, where `(-)^sh` is closure
//! under the listed coverings. Once a site validates, that closure is the
//! sheafification for the generated coverage, so every downstream
//! operation can work with the listed generators alone.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Bits;
use crate::budget::Budget;
use crate::doc::{default_schema_version, validate_schema_version, DocError};
use crate::lattice::FinDistLattice;
use crate::order::{DownSet, OrderError, Poset, PosetDoc};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SiteError {
    #[error("carrier has no meet for ({0}, {1})")]
    NoMeet(String, String),
    #[error("covering #{covering} violates base change at {at}")]
    BaseChangeViolation { covering: usize, at: String },
    #[error("covering #{covering} violates locality")]
    LocalityViolation { covering: usize },
    #[error("covering #{covering} lists {member} outside the downset of its target")]
    BadCovering { covering: usize, member: String },
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A covering family, by element indices of the carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    pub target: usize,
    /// Sorted, deduplicated, every member below the target.
    pub family: Vec<usize>,
}

/// A poset with all binary meets plus finitary covering generators.
#[derive(Debug, Clone)]
pub struct FinSite {
    carrier: Poset,
    coverings: Vec<Covering>,
    /// meet[p * n + q] = the meet of p and q
    meets: Vec<usize>,
}

impl FinSite {
    /// Assemble a site, checking that the carrier has all binary meets and
    /// that every covering stays below its target. The coverage axioms are
    /// validated separately, on demand, by [`FinSite::validate`].
    pub fn new(carrier: Poset, coverings: Vec<Covering>) -> Result<FinSite, SiteError> {
        let n = carrier.len();
        let mut meets = vec![0usize; n * n];
        for p in 0..n {
            for q in 0..n {
                let lower = carrier.down_bits(p) & carrier.down_bits(q);
                let maximal = carrier.maximal_in(lower);
                if maximal.len() != 1 {
                    return Err(SiteError::NoMeet(
                        carrier.name(p).to_string(),
                        carrier.name(q).to_string(),
                    ));
                }
                meets[p * n + q] = maximal.min().expect("nonempty");
            }
        }
        let mut coverings = coverings;
        for (i, cov) in coverings.iter_mut().enumerate() {
            cov.family.sort_unstable();
            cov.family.dedup();
            if let Some(&member) = cov.family.iter().find(|&&m| !carrier.leq(m, cov.target)) {
                return Err(SiteError::BadCovering {
                    covering: i,
                    member: carrier.name(member).to_string(),
                });
            }
        }
        Ok(FinSite {
            carrier,
            coverings,
            meets,
        })
    }

    pub fn carrier(&self) -> &Poset {
        &self.carrier
    }

    pub fn coverings(&self) -> &[Covering] {
        &self.coverings
    }

    pub fn meet(&self, p: usize, q: usize) -> usize {
        self.meets[p * self.carrier.len() + q]
    }

    /// Closure of an arbitrary subset under the listed coverings: the
    /// least fixed point of "add every target whose whole family is
    /// already present".
    fn close(&self, mut bits: Bits) -> Bits {
        loop {
            let mut grew = false;
            for cov in &self.coverings {
                if !bits.contains(cov.target) && cov.family.iter().all(|&m| bits.contains(m)) {
                    bits.insert(cov.target);
                    grew = true;
                }
            }
            if !grew {
                return bits;
            }
        }
    }

    /// Does `family` cover `target` in the generated coverage?
    pub fn covers(&self, target: usize, family: &[usize]) -> bool {
        let seed = family
            .iter()
            .fold(Bits::EMPTY, |acc, &m| acc | self.carrier.down_bits(m));
        self.close(seed).contains(target)
    }

    /// Check stability under base change and one round of locality against
    /// the generated coverage.
    pub fn validate(&self) -> Result<(), SiteError> {
        for (i, cov) in self.coverings.iter().enumerate() {
            for q in self.carrier.down_bits(cov.target).iter() {
                let translated: Vec<usize> = cov.family.iter().map(|&m| self.meet(m, q)).collect();
                if !self.covers(q, &translated) {
                    return Err(SiteError::BaseChangeViolation {
                        covering: i,
                        at: self.carrier.name(q).to_string(),
                    });
                }
            }
        }
        for (i, cov) in self.coverings.iter().enumerate() {
            for (slot, &member) in cov.family.iter().enumerate() {
                for sub in self.coverings.iter().filter(|c| c.target == member) {
                    let mut composite: Vec<usize> = cov.family.clone();
                    composite.remove(slot);
                    composite.extend_from_slice(&sub.family);
                    if !self.covers(cov.target, &composite) {
                        return Err(SiteError::LocalityViolation { covering: i });
                    }
                }
            }
        }
        Ok(())
    }

    /// Is the downset closed under every covering?
    pub fn is_sheaf(&self, downset: &DownSet) -> bool {
        self.coverings.iter().all(|cov| {
            !cov.family.iter().all(|&m| downset.contains(m)) || downset.contains(cov.target)
        })
    }

    /// The smallest propositional sheaf containing the downset: the least
    /// fixed point of the one-step closure under coverings. Extensive,
    /// monotone, idempotent.
    pub fn sheafify(&self, downset: &DownSet) -> PropSheaf {
        let bits = self.close(downset.bits());
        let closed = self
            .carrier
            .downset(bits)
            .expect("sheafification of a downset over a validated site is downward closed");
        PropSheaf { downset: closed }
    }

    /// All propositional sheaves in canonical order.
    ///
    /// For the fin coverage of a finite distributive lattice the result is
    /// exactly the principal downsets, one per element; when that holds
    /// the element-to-sheaf bijection is returned alongside.
    pub fn enumerate_sheaves(&self, budget: &Budget) -> Result<SheafEnumeration, SiteError> {
        let all = self.carrier.downsets_dfs(budget)?;
        let sheaves: Vec<PropSheaf> = all
            .into_iter()
            .filter(|d| self.is_sheaf(d))
            .map(|downset| PropSheaf { downset })
            .collect();
        let mut principal_index = Vec::with_capacity(self.carrier.len());
        for e in 0..self.carrier.len() {
            let bits = self.carrier.down_bits(e);
            match sheaves.binary_search_by_key(&bits, |s| s.bits()) {
                Ok(i) => principal_index.push(i),
                Err(_) => break,
            }
        }
        let every_sheaf_principal = sheaves.iter().all(|s| {
            s.bits()
                .iter()
                .any(|e| self.carrier.down_bits(e) == s.bits())
        });
        let basis = (principal_index.len() == self.carrier.len()
            && sheaves.len() == self.carrier.len()
            && every_sheaf_principal)
            .then_some(principal_index);
        Ok(SheafEnumeration { sheaves, basis })
    }
}

/// A downset of the carrier closed under all coverings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PropSheaf {
    downset: DownSet,
}

impl PropSheaf {
    pub fn downset(&self) -> DownSet {
        self.downset
    }

    pub fn bits(&self) -> Bits {
        self.downset.bits()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.downset.contains(e)
    }
}

/// Result of [`FinSite::enumerate_sheaves`].
#[derive(Debug, Clone)]
pub struct SheafEnumeration {
    /// Canonical order: ascending bitset value.
    pub sheaves: Vec<PropSheaf>,
    /// When every sheaf is a principal downset and the count matches the
    /// carrier: for each carrier element, the index of its sheaf.
    pub basis: Option<Vec<usize>>,
}

/// The fin coverage of a finite distributive lattice: the empty family
/// covers the bottom, and every pair covers its join. Equivalent to the
/// full finite-join coverage, since a downset closed under the empty cover
/// of 0 and binary joins is closed under all finite joins.
pub fn fin_coverage(lattice: &FinDistLattice) -> FinSite {
    let carrier = lattice.element_poset();
    let mut coverings = vec![Covering {
        target: lattice.bottom(),
        family: vec![],
    }];
    for a in 0..lattice.len() {
        for b in a + 1..lattice.len() {
            coverings.push(Covering {
                target: lattice.join(a, b),
                family: vec![a, b],
            });
        }
    }
    FinSite::new(carrier, coverings).expect("a lattice carrier has all meets")
}

/// JSON document for a site.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SiteDoc {
    #[serde(rename = "schemaVersion", default = "default_schema_version")]
    pub schema_version: u32,
    pub poset: PosetDoc,
    pub coverings: Vec<CoveringDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoveringDoc {
    pub target: String,
    pub family: Vec<String>,
}

impl SiteDoc {
    pub fn from_site(site: &FinSite) -> SiteDoc {
        SiteDoc {
            schema_version: default_schema_version(),
            poset: PosetDoc::from_poset(site.carrier()),
            coverings: site
                .coverings()
                .iter()
                .map(|c| CoveringDoc {
                    target: site.carrier().name(c.target).to_string(),
                    family: c
                        .family
                        .iter()
                        .map(|&m| site.carrier().name(m).to_string())
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn into_site(self) -> Result<FinSite, DocError> {
        validate_schema_version(self.schema_version)?;
        let poset = self.poset.into_poset()?;
        let index = |name: &String| -> Result<usize, DocError> {
            poset
                .index_of(name)
                .ok_or_else(|| DocError::Invalid(format!("unknown element {name:?}")))
        };
        let coverings = self
            .coverings
            .iter()
            .map(|c| {
                Ok(Covering {
                    target: index(&c.target)?,
                    family: c.family.iter().map(index).collect::<Result<_, _>>()?,
                })
            })
            .collect::<Result<Vec<_>, DocError>>()?;
        FinSite::new(poset, coverings).map_err(|e| DocError::Invalid(e.to_string()))
    }
}

/// JSON document for a downset of a site carrier (the input to
/// sheafification).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DownSetDoc {
    #[serde(rename = "schemaVersion", default = "default_schema_version")]
    pub schema_version: u32,
    pub members: Vec<String>,
}

impl DownSetDoc {
    pub fn resolve(&self, carrier: &Poset) -> Result<DownSet, DocError> {
        validate_schema_version(self.schema_version)?;
        let mut bits = Bits::EMPTY;
        for name in &self.members {
            let i = carrier
                .index_of(name)
                .ok_or_else(|| DocError::Invalid(format!("unknown element {name:?}")))?;
            bits.insert(i);
        }
        carrier
            .downset(bits)
            .map_err(|e| DocError::Invalid(e.to_string()))
    }
}
