//! Finite posets and their downsets.
//!
//! A [`Poset`] is a validated partial order on an ordered list of named
//! elements. Elements are addressed by their position in that list, and all
//! subsets are [`Bits`] over this fixed indexing, which makes identity
//! serialization-stable. Validation rejects rather than repairs: an input
//! relation that is not already reflexive, antisymmetric and transitive is
//! an error naming a witness, since silently closing it would mask data
//! errors in user files.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{Bits, MAX_UNIVERSE};
use crate::budget::Budget;
use crate::doc::{default_schema_version, validate_schema_version, DocError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("duplicate element identifier {0:?}")]
    DuplicateElement(String),
    #[error("unknown element identifier {0:?}")]
    UnknownElement(String),
    #[error("relation is not reflexive: missing {0:?} <= {0:?}")]
    NotReflexive(String),
    #[error("relation is not antisymmetric: {0:?} <= {1:?} and {1:?} <= {0:?}")]
    NotAntisymmetric(String, String),
    #[error("relation is not transitive: {0:?} <= {1:?} <= {2:?} but not {0:?} <= {2:?}")]
    NotTransitive(String, String, String),
    #[error("poset has {n} elements, more than the supported {MAX_UNIVERSE}")]
    TooManyElements { n: usize },
    #[error("subset is not downward closed below {0:?}")]
    NotDownwardClosed(String),
    #[error("enumeration needs {needed} candidates, over the budget of {budget}")]
    TooLarge { needed: u128, budget: u64 },
}

/// A finite poset on named elements, addressed by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    /// `down[p]` = all q with q <= p, including p.
    down: Vec<Bits>,
    /// `up[p]` = all q with p <= q, including p.
    up: Vec<Bits>,
}

impl Poset {
    /// Validate a raw relation into a poset.
    ///
    /// `pairs` must list the full order relation including reflexive pairs;
    /// the JSON layer adds those before calling in. All three axioms are
    /// checked and the first violation is reported with its witness.
    pub fn validate(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset, OrderError> {
        let n = names.len();
        if n > MAX_UNIVERSE {
            return Err(OrderError::TooManyElements { n });
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.clone()) {
                return Err(OrderError::DuplicateElement(name.clone()));
            }
        }
        let mut up = vec![Bits::EMPTY; n];
        for &(p, q) in pairs {
            assert!(p < n && q < n, "relation pair out of range");
            up[p].insert(q);
        }
        for p in 0..n {
            if !up[p].contains(p) {
                return Err(OrderError::NotReflexive(names[p].clone()));
            }
        }
        for p in 0..n {
            for q in up[p].iter() {
                if p != q && up[q].contains(p) {
                    return Err(OrderError::NotAntisymmetric(
                        names[p].clone(),
                        names[q].clone(),
                    ));
                }
            }
        }
        for p in 0..n {
            for q in up[p].iter() {
                if !up[q].is_subset(up[p]) {
                    let r = (up[q] - up[p]).min().expect("non-subset has a witness");
                    return Err(OrderError::NotTransitive(
                        names[p].clone(),
                        names[q].clone(),
                        names[r].clone(),
                    ));
                }
            }
        }
        let mut down = vec![Bits::EMPTY; n];
        for p in 0..n {
            for q in up[p].iter() {
                down[q].insert(p);
            }
        }
        Ok(Poset { names, down, up })
    }

    /// Poset from an explicit `leq` predicate, assumed to be a partial order.
    pub fn from_leq<F: Fn(usize, usize) -> bool>(names: Vec<String>, leq: F) -> Poset {
        let n = names.len();
        assert!(n <= MAX_UNIVERSE);
        let mut pairs = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if leq(p, q) {
                    pairs.push((p, q));
                }
            }
        }
        Poset::validate(names, &pairs).expect("leq predicate is not a partial order")
    }

    /// A chain `e0 < e1 < .. < e{n-1}`.
    pub fn chain(n: usize) -> Poset {
        Poset::from_leq(default_names(n), |p, q| p <= q)
    }

    /// An antichain on `n` elements.
    pub fn antichain(n: usize) -> Poset {
        Poset::from_leq(default_names(n), |p, q| p == q)
    }

    /// Antichain reusing the given element names.
    pub fn antichain_named(names: Vec<String>) -> Poset {
        Poset::from_leq(names, |p, q| p == q)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, p: usize) -> &str {
        &self.names[p]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.up[p].contains(q)
    }

    pub fn lt(&self, p: usize, q: usize) -> bool {
        p != q && self.leq(p, q)
    }

    /// `{q : q <= p}` as raw bits.
    pub fn down_bits(&self, p: usize) -> Bits {
        self.down[p]
    }

    /// `{q : p <= q}` as raw bits.
    pub fn up_bits(&self, p: usize) -> Bits {
        self.up[p]
    }

    pub fn is_downward_closed(&self, bits: Bits) -> bool {
        bits.iter().all(|p| self.down[p].is_subset(bits))
    }

    /// Downward closure of an arbitrary subset.
    pub fn down_closure(&self, bits: Bits) -> Bits {
        bits.iter().fold(Bits::EMPTY, |acc, p| acc | self.down[p])
    }

    pub fn downset(&self, bits: Bits) -> Result<DownSet, OrderError> {
        if self.is_downward_closed(bits) {
            Ok(DownSet { bits })
        } else {
            let p = bits
                .iter()
                .find(|&p| !self.down[p].is_subset(bits))
                .expect("violation exists");
            Err(OrderError::NotDownwardClosed(self.names[p].clone()))
        }
    }

    /// The principal downset `p↓ = {q : q <= p}`.
    pub fn principal_downset(&self, p: usize) -> Result<DownSet, OrderError> {
        if p < self.len() {
            Ok(DownSet { bits: self.down[p] })
        } else {
            Err(OrderError::UnknownElement(format!("element index {p}")))
        }
    }

    pub fn principal_downset_named(&self, name: &str) -> Result<DownSet, OrderError> {
        let p = self
            .index_of(name)
            .ok_or_else(|| OrderError::UnknownElement(name.to_string()))?;
        self.principal_downset(p)
    }

    /// All downsets in canonical order (ascending bitset value).
    ///
    /// Iterates every subset in that order with an early-exit closure test;
    /// the budget caps the `2^n` candidate count.
    pub fn downsets(&self, budget: &Budget) -> Result<Vec<DownSet>, OrderError> {
        let n = self.len();
        if !budget.allows_power_of_two(n) {
            return Err(OrderError::TooLarge {
                needed: 1u128 << n,
                budget: budget.max_candidates,
            });
        }
        let mut out = Vec::new();
        for raw in 0..(1u64 << n) {
            let bits = Bits(raw);
            if self.is_downward_closed(bits) {
                out.push(DownSet { bits });
            }
        }
        Ok(out)
    }

    /// All downsets by depth-first extension along a linear extension.
    ///
    /// Output-sensitive: visits O(#downsets * n) states, so it stays usable
    /// on carriers with 20..64 elements where the subset scan cannot run.
    /// The budget caps the number of results. Returns the same canonical
    /// order as [`Poset::downsets`].
    pub fn downsets_dfs(&self, budget: &Budget) -> Result<Vec<DownSet>, OrderError> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&p| (self.down[p].len(), p));
        let mut out = Vec::new();
        let mut stack = vec![(0usize, Bits::EMPTY)];
        while let Some((k, bits)) = stack.pop() {
            if k == n {
                if out.len() as u64 >= budget.max_candidates {
                    return Err(OrderError::TooLarge {
                        needed: budget.max_candidates as u128 + 1,
                        budget: budget.max_candidates,
                    });
                }
                out.push(DownSet { bits });
                continue;
            }
            let p = order[k];
            // include p only if everything strictly below is already in
            if (self.down[p] - Bits::singleton(p)).is_subset(bits) {
                let mut with = bits;
                with.insert(p);
                stack.push((k + 1, with));
            }
            stack.push((k + 1, bits));
        }
        out.sort();
        Ok(out)
    }

    /// Height of each element: the length of the longest strictly
    /// increasing chain ending there. Strictly increasing along `<`.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&p| (self.down[p].len(), p));
        let mut ht = vec![0usize; n];
        for &p in &order {
            let below = self.down[p] - Bits::singleton(p);
            ht[p] = below.iter().map(|q| ht[q] + 1).max().unwrap_or(0);
        }
        ht
    }

    /// Maximal elements of a subset.
    pub fn maximal_in(&self, bits: Bits) -> Bits {
        bits.iter()
            .filter(|&p| (self.up[p] & bits) == Bits::singleton(p))
            .collect()
    }

    /// Non-reflexive related pairs in canonical order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.len() {
            for q in self.up[p].iter() {
                if p != q {
                    out.push((p, q));
                }
            }
        }
        out
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

/// A downward closed subset of a parent poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DownSet {
    bits: Bits,
}

impl DownSet {
    pub fn bits(self) -> Bits {
        self.bits
    }

    pub fn contains(self, p: usize) -> bool {
        self.bits.contains(p)
    }

    pub fn len(self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(self) -> bool {
        self.bits.is_empty()
    }
}

/// JSON document for a poset. `leq` lists the non-reflexive related pairs;
/// reflexive pairs are implicit.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    #[serde(rename = "schemaVersion", default = "default_schema_version")]
    pub schema_version: u32,
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

impl PosetDoc {
    pub fn from_poset(p: &Poset) -> PosetDoc {
        PosetDoc {
            schema_version: default_schema_version(),
            elements: p.names().to_vec(),
            leq: p
                .strict_pairs()
                .into_iter()
                .map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string()))
                .collect(),
        }
    }

    pub fn into_poset(self) -> Result<Poset, DocError> {
        validate_schema_version(self.schema_version)?;
        let index = |name: &str| -> Result<usize, DocError> {
            self.elements.iter().position(|e| e == name).ok_or_else(|| {
                DocError::Invalid(OrderError::UnknownElement(name.to_string()).to_string())
            })
        };
        let mut pairs: Vec<(usize, usize)> = (0..self.elements.len()).map(|p| (p, p)).collect();
        for (a, b) in &self.leq {
            pairs.push((index(a)?, index(b)?));
        }
        Poset::validate(self.elements, &pairs).map_err(|e| DocError::Invalid(e.to_string()))
    }
}
