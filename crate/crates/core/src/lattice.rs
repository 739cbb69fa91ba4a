//! Finite distributive lattices and Birkhoff duality.
//!
//! The canonical internal representation of a lattice is "all downsets of
//! the poset of its join-irreducibles", computed once at validation. Joins
//! and meets are then single-word bitset union and intersection, and
//! distributivity holds structurally. Elements are indexed by their
//! position in the canonical order (ascending bitset value), so the bottom
//! is always index 0 and the maximal element always comes last.
//!
//! A lattice carries a `has_top` flag: every finite lattice has a maximal
//! element, but only when the flag is set is that element part of the
//! structure (preserved by bounded homomorphisms, used by Booleanization).
//! A cleared flag is the "lower bounded" view consumed by the top
//! adjunction.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Bits;
use crate::budget::Budget;
use crate::doc::{default_schema_version, validate_schema_version, DocError};
use crate::order::{OrderError, Poset, PosetDoc};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("{law} fails at ({})", witnesses.join(", "))]
    NotLattice { law: String, witnesses: Vec<String> },
    #[error("distributive law fails at ({0}, {1}, {2})")]
    NotDistributive(String, String, String),
    #[error("bottom law fails at {0}")]
    BottomViolation(String),
    #[error("top law fails at {0}")]
    TopViolation(String),
    #[error("operation requires a bounded lattice, but the top is not part of the structure")]
    TopRequired,
    #[error("malformed lattice table: {0}")]
    BadTable(String),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A finite distributive lattice in canonical Birkhoff representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinDistLattice {
    irr: Poset,
    /// All downsets of `irr`, ascending. Index 0 is the bottom.
    elements: Vec<Bits>,
    labels: Vec<String>,
    has_top: bool,
}

impl FinDistLattice {
    /// The lattice of all downsets of a poset, i.e. the frame of opens of
    /// the finite Alexandroff space on it. Always bounded.
    pub fn birkhoff_opens(poset: &Poset, budget: &Budget) -> Result<FinDistLattice, LatticeError> {
        let elements: Vec<Bits> = poset.downsets(budget)?.iter().map(|d| d.bits()).collect();
        let labels = elements.iter().map(|&b| brace_label(poset, b)).collect();
        Ok(FinDistLattice {
            irr: poset.clone(),
            elements,
            labels,
            has_top: true,
        })
    }

    /// The one-element lattice `{0}`.
    pub fn trivial() -> FinDistLattice {
        FinDistLattice::birkhoff_opens(&Poset::antichain(0), &Budget::default()).expect("tiny")
    }

    /// The two-element lattice `0 <= 1`.
    pub fn two() -> FinDistLattice {
        FinDistLattice::birkhoff_opens(
            &Poset::antichain_named(vec!["p".into()]),
            &Budget::default(),
        )
        .expect("tiny")
    }

    /// Mark the top as formal/absent, yielding the lower bounded view of
    /// the same carrier.
    pub fn lower_bounded_view(mut self) -> FinDistLattice {
        self.has_top = false;
        self
    }

    /// Validate join/meet tables and re-represent canonically.
    ///
    /// Checks commutativity, associativity, absorption, distributivity and
    /// the bottom/top laws on all pairs and triples, then rebuilds the
    /// lattice as downsets of its join-irreducible poset. Returns the
    /// canonical lattice together with the renaming from input element
    /// index to canonical element index.
    pub fn from_tables(
        elements: Vec<String>,
        join: Vec<Vec<usize>>,
        meet: Vec<Vec<usize>>,
        bottom: usize,
        top: Option<usize>,
    ) -> Result<(FinDistLattice, Vec<usize>), LatticeError> {
        let n = elements.len();
        if n == 0 {
            return Err(LatticeError::BadTable(
                "a lattice needs at least a bottom element".into(),
            ));
        }
        let mut names = elements.clone();
        names.sort();
        names.dedup();
        if names.len() != n {
            return Err(LatticeError::BadTable("element names repeat".into()));
        }
        let table_ok = |t: &Vec<Vec<usize>>| {
            t.len() == n
                && t.iter()
                    .all(|row| row.len() == n && row.iter().all(|&x| x < n))
        };
        if !table_ok(&join) || !table_ok(&meet) || bottom >= n || top.is_some_and(|t| t >= n) {
            return Err(LatticeError::BadTable(
                "table is not total on the element list".into(),
            ));
        }
        let name = |i: usize| elements[i].clone();
        let law = |law: &str, witnesses: &[usize]| LatticeError::NotLattice {
            law: law.into(),
            witnesses: witnesses.iter().map(|&w| name(w)).collect(),
        };
        for a in 0..n {
            for b in 0..n {
                if join[a][b] != join[b][a] {
                    return Err(law("join commutativity", &[a, b]));
                }
                if meet[a][b] != meet[b][a] {
                    return Err(law("meet commutativity", &[a, b]));
                }
                if join[a][meet[a][b]] != a {
                    return Err(law("absorption a v (a ^ b) = a", &[a, b]));
                }
                if meet[a][join[a][b]] != a {
                    return Err(law("absorption a ^ (a v b) = a", &[a, b]));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if join[join[a][b]][c] != join[a][join[b][c]] {
                        return Err(law("join associativity", &[a, b, c]));
                    }
                    if meet[meet[a][b]][c] != meet[a][meet[b][c]] {
                        return Err(law("meet associativity", &[a, b, c]));
                    }
                    if meet[a][join[b][c]] != join[meet[a][b]][meet[a][c]] {
                        return Err(LatticeError::NotDistributive(name(a), name(b), name(c)));
                    }
                }
            }
        }
        for a in 0..n {
            if join[bottom][a] != a || meet[bottom][a] != bottom {
                return Err(LatticeError::BottomViolation(name(a)));
            }
            if let Some(t) = top {
                if meet[t][a] != a || join[t][a] != t {
                    return Err(LatticeError::TopViolation(name(a)));
                }
            }
        }
        let leq = |a: usize, b: usize| join[a][b] == b;
        canonicalize(
            &elements,
            leq,
            |a, b| join[a][b],
            |a, b| meet[a][b],
            bottom,
            top.is_some(),
        )
    }

    /// Canonicalize a family of subsets of an ambient universe that is
    /// closed under union and intersection and contains the empty set,
    /// sorted ascending. Joins and meets in the result are union and
    /// intersection of the original subsets. `label` names each member.
    pub fn from_closed_family<F: Fn(Bits) -> String>(
        family: &[Bits],
        label: F,
        has_top: bool,
    ) -> Result<(FinDistLattice, Vec<usize>), LatticeError> {
        let mut sorted = family.to_vec();
        sorted.dedup();
        if sorted != family || !family.windows(2).all(|w| w[0] < w[1]) {
            return Err(LatticeError::BadTable(
                "family must be sorted ascending without duplicates".into(),
            ));
        }
        if family.first() != Some(&Bits::EMPTY) {
            return Err(LatticeError::BadTable(
                "family must contain the empty set".into(),
            ));
        }
        for (i, &a) in family.iter().enumerate() {
            for &b in &family[i + 1..] {
                if family.binary_search(&(a | b)).is_err()
                    || family.binary_search(&(a & b)).is_err()
                {
                    return Err(LatticeError::BadTable(
                        "family is not closed under union and intersection".into(),
                    ));
                }
            }
        }
        let labels: Vec<String> = family.iter().map(|&b| label(b)).collect();
        canonicalize(
            &labels,
            |a, b| family[a].is_subset(family[b]),
            |a, b| {
                family
                    .binary_search(&(family[a] | family[b]))
                    .expect("closed")
            },
            |a, b| {
                family
                    .binary_search(&(family[a] & family[b]))
                    .expect("closed")
            },
            0,
            has_top,
        )
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The poset of join-irreducibles underlying the canonical
    /// representation.
    pub fn irr(&self) -> &Poset {
        &self.irr
    }

    pub fn element_bits(&self, i: usize) -> Bits {
        self.elements[i]
    }

    pub fn elements(&self) -> &[Bits] {
        &self.elements
    }

    pub fn index_of_bits(&self, bits: Bits) -> Option<usize> {
        self.elements.binary_search(&bits).ok()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    /// The distinguished top element, present iff the lattice is bounded.
    pub fn top(&self) -> Option<usize> {
        self.has_top.then(|| self.elements.len() - 1)
    }

    pub fn has_top(&self) -> bool {
        self.has_top
    }

    /// The maximal element of the carrier, regardless of the `has_top`
    /// flag.
    pub fn max_element(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a].is_subset(self.elements[b])
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.index_of_bits(self.elements[a] | self.elements[b])
            .expect("closed under join")
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.index_of_bits(self.elements[a] & self.elements[b])
            .expect("closed under meet")
    }

    /// The element realizing the irreducible `p`, i.e. the principal
    /// downset `p↓` of the irreducible poset.
    pub fn point_element(&self, p: usize) -> usize {
        self.index_of_bits(self.irr.down_bits(p))
            .expect("principal downsets are elements")
    }

    /// Element indices of all points, in irreducible-poset order.
    pub fn point_elements(&self) -> Vec<usize> {
        (0..self.irr.len()).map(|p| self.point_element(p)).collect()
    }

    /// Whether every element has a complement, i.e. the irreducible poset
    /// is an antichain.
    pub fn is_boolean(&self) -> bool {
        let n = self.irr.len();
        (0..n).all(|p| self.irr.down_bits(p) == Bits::singleton(p))
    }

    /// The element poset of the whole carrier (used as a site carrier).
    pub fn element_poset(&self) -> Poset {
        let elements = self.elements.clone();
        Poset::from_leq(self.labels.clone(), |a, b| {
            elements[a].is_subset(elements[b])
        })
    }

    /// The join-irreducible elements recomputed from the lattice order
    /// alone: nonzero elements whose set of strictly smaller elements has
    /// a unique maximal element. Returned as a poset under the induced
    /// order, named by element labels.
    pub fn birkhoff_points(&self) -> Poset {
        let mut points = Vec::new();
        for e in 0..self.len() {
            if e == self.bottom() {
                continue;
            }
            let below: Vec<usize> = (0..self.len())
                .filter(|&f| f != e && self.leq(f, e))
                .collect();
            let maximal: Vec<usize> = below
                .iter()
                .copied()
                .filter(|&f| !below.iter().any(|&g| g != f && self.leq(f, g)))
                .collect();
            if maximal.len() == 1 {
                points.push(e);
            }
        }
        let names = points.iter().map(|&e| self.labels[e].clone()).collect();
        Poset::from_leq(names, |a, b| self.leq(points[a], points[b]))
    }

    /// Adjoin a new strict top above everything, even if the lattice
    /// already had one. Returns the extension with the canonical inclusion
    /// and the homs realizing the retract through the two-element lattice.
    pub fn add_top(&self) -> AddTop {
        let k = self.irr.len();
        let top_name = unique_name("∞", self.irr.names());
        let mut names: Vec<String> = self.irr.names().to_vec();
        names.push(top_name);
        let old = self.irr.clone();
        let irr = Poset::from_leq(names, |p, q| {
            if q == k {
                true
            } else if p == k {
                false
            } else {
                old.leq(p, q)
            }
        });
        let mut elements = self.elements.clone();
        let mut labels = self.labels.clone();
        elements.push(Bits::full(k + 1));
        labels.push(unique_name("⊤", &labels));
        let extended = FinDistLattice {
            irr,
            elements,
            labels,
            has_top: true,
        };

        let inclusion = LatticeHom::new(
            self.clone(),
            extended.clone(),
            (0..self.len()).collect(),
            false,
        );
        let two = FinDistLattice::two();
        let retraction = LatticeHom::new(
            extended.clone(),
            two.clone(),
            (0..extended.len())
                .map(|e| usize::from(e == extended.max_element()))
                .collect(),
            true,
        );
        let section = LatticeHom::new(two, extended.clone(), vec![0, extended.max_element()], true);
        AddTop {
            extended,
            inclusion,
            retraction,
            section,
        }
    }

    /// Drop the maximal element; inverse to [`FinDistLattice::add_top`] on
    /// its image.
    pub fn remove_top(&self) -> Option<FinDistLattice> {
        let k = self.irr.len();
        if k == 0 {
            return None;
        }
        // the last irreducible must sit above every other one
        let t = k - 1;
        if self.irr.down_bits(t) != Bits::full(k) {
            return None;
        }
        let names: Vec<String> = self.irr.names()[..t].to_vec();
        let old = self.irr.clone();
        let irr = Poset::from_leq(names, |p, q| old.leq(p, q));
        let elements: Vec<Bits> = self.elements[..self.len() - 1].to_vec();
        let labels = self.labels[..self.len() - 1].to_vec();
        Some(FinDistLattice {
            irr,
            elements,
            labels,
            has_top: true,
        })
    }

    /// The Booleanization: the powerset algebra on the points, together
    /// with the canonical homomorphism into it.
    ///
    /// The hom sends an element to the set of points below it, which in
    /// the canonical representation is its own bitset re-read inside the
    /// powerset of the irreducible antichain.
    pub fn booleanize(&self) -> Result<(BooleanAlg, LatticeHom), LatticeError> {
        if !self.has_top {
            return Err(LatticeError::TopRequired);
        }
        let points = Poset::antichain_named(self.irr.names().to_vec());
        let algebra = FinDistLattice::birkhoff_opens(&points, &Budget::default())?;
        let map = self
            .elements
            .iter()
            .map(|&b| {
                algebra
                    .index_of_bits(b)
                    .expect("powerset contains every subset")
            })
            .collect();
        let hom = LatticeHom::new(self.clone(), algebra.clone(), map, true);
        Ok((BooleanAlg::new(algebra)?, hom))
    }

    /// All prime filters: upward closed, meet closed, proper, nonempty
    /// subsets F with `U v V in F => U in F or V in F`.
    ///
    /// In a finite lattice every such filter is the up-set of its minimum,
    /// so the scan is over candidate minima; the budget guards the carrier
    /// size. Filters are listed by ascending minimum, each as its sorted
    /// member list.
    pub fn prime_filters(&self, budget: &Budget) -> Result<Vec<Vec<usize>>, LatticeError> {
        if self.len() as u64 > budget.max_candidates {
            return Err(LatticeError::Order(OrderError::TooLarge {
                needed: self.len() as u128,
                budget: budget.max_candidates,
            }));
        }
        let mut out = Vec::new();
        for m in 0..self.len() {
            if m == self.bottom() {
                continue;
            }
            let prime = (0..self.len()).all(|u| {
                (u..self.len())
                    .all(|v| !self.leq(m, self.join(u, v)) || self.leq(m, u) || self.leq(m, v))
            });
            if prime {
                out.push((0..self.len()).filter(|&u| self.leq(m, u)).collect());
            }
        }
        Ok(out)
    }
}

/// Result of adjoining a top element.
#[derive(Debug, Clone)]
pub struct AddTop {
    pub extended: FinDistLattice,
    /// `D -> D∞`, identity on indices. Not bounded: an existing top is no
    /// longer the top of the extension.
    pub inclusion: LatticeHom,
    /// `D∞ -> 2`, sending the new top to 1 and everything else to 0.
    pub retraction: LatticeHom,
    /// `2 -> D∞`, sending 1 to the new top.
    pub section: LatticeHom,
}

/// A lattice whose irreducible poset is an antichain; equivalently, every
/// element has a complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanAlg(FinDistLattice);

impl BooleanAlg {
    pub fn new(lattice: FinDistLattice) -> Result<BooleanAlg, LatticeError> {
        if !lattice.is_boolean() || !lattice.has_top() {
            return Err(LatticeError::BadTable(
                "lattice is not a Boolean algebra".into(),
            ));
        }
        Ok(BooleanAlg(lattice))
    }

    pub fn lattice(&self) -> &FinDistLattice {
        &self.0
    }

    pub fn into_lattice(self) -> FinDistLattice {
        self.0
    }

    pub fn complement(&self, e: usize) -> usize {
        let bits = self.0.element_bits(e).complement(self.0.irr().len());
        self.0
            .index_of_bits(bits)
            .expect("powerset is complement-closed")
    }
}

/// A total map between lattices, given on element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeHom {
    source: FinDistLattice,
    target: FinDistLattice,
    map: Vec<usize>,
    /// When set, the hom claims to preserve the top as well; checked only
    /// if both sides are bounded.
    bounded: bool,
}

/// One reported homomorphism-law violation, naming the witnessing pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomViolation {
    Join(usize, usize),
    Meet(usize, usize),
    Bottom,
    Top,
}

/// Outcome of [`LatticeHom::check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomReport {
    pub first_violation: Option<HomViolation>,
}

impl HomReport {
    pub fn ok(&self) -> bool {
        self.first_violation.is_none()
    }
}

impl LatticeHom {
    pub fn new(
        source: FinDistLattice,
        target: FinDistLattice,
        map: Vec<usize>,
        bounded: bool,
    ) -> LatticeHom {
        assert_eq!(map.len(), source.len(), "map must be total");
        assert!(
            map.iter().all(|&e| e < target.len()),
            "map image out of range"
        );
        LatticeHom {
            source,
            target,
            map,
            bounded,
        }
    }

    pub fn identity(lattice: &FinDistLattice) -> LatticeHom {
        LatticeHom::new(
            lattice.clone(),
            lattice.clone(),
            (0..lattice.len()).collect(),
            lattice.has_top(),
        )
    }

    pub fn source(&self) -> &FinDistLattice {
        &self.source
    }

    pub fn target(&self) -> &FinDistLattice {
        &self.target
    }

    pub fn apply(&self, e: usize) -> usize {
        self.map[e]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn bounded(&self) -> bool {
        self.bounded
    }

    /// `g . f`, with `f` applied first.
    pub fn compose(g: &LatticeHom, f: &LatticeHom) -> LatticeHom {
        assert_eq!(f.target, g.source, "homs do not compose");
        LatticeHom::new(
            f.source.clone(),
            g.target.clone(),
            f.map.iter().map(|&e| g.map[e]).collect(),
            f.bounded && g.bounded,
        )
    }

    /// Verify preservation of joins, meets and the bottom on all pairs,
    /// and of the top when the hom is flagged bounded and both sides are.
    /// Reports the first violation in scan order, or success.
    pub fn check(&self) -> HomReport {
        if self.map[self.source.bottom()] != self.target.bottom() {
            return HomReport {
                first_violation: Some(HomViolation::Bottom),
            };
        }
        if self.bounded {
            if let (Some(st), Some(tt)) = (self.source.top(), self.target.top()) {
                if self.map[st] != tt {
                    return HomReport {
                        first_violation: Some(HomViolation::Top),
                    };
                }
            }
        }
        for a in 0..self.source.len() {
            for b in a..self.source.len() {
                if self.map[self.source.join(a, b)] != self.target.join(self.map[a], self.map[b]) {
                    return HomReport {
                        first_violation: Some(HomViolation::Join(a, b)),
                    };
                }
                if self.map[self.source.meet(a, b)] != self.target.meet(self.map[a], self.map[b]) {
                    return HomReport {
                        first_violation: Some(HomViolation::Meet(a, b)),
                    };
                }
            }
        }
        HomReport {
            first_violation: None,
        }
    }
}

/// Shared canonicalization: given an abstract lattice presented by order
/// and operation callbacks, rebuild it as downsets of its irreducible
/// poset and certify the rebuild is an isomorphism.
fn canonicalize<L, J, M>(
    labels: &[String],
    leq: L,
    join: J,
    meet: M,
    bottom: usize,
    has_top: bool,
) -> Result<(FinDistLattice, Vec<usize>), LatticeError>
where
    L: Fn(usize, usize) -> bool,
    J: Fn(usize, usize) -> usize,
    M: Fn(usize, usize) -> usize,
{
    let n = labels.len();
    let mut irr_elems = Vec::new();
    for e in 0..n {
        if e == bottom {
            continue;
        }
        let below: Vec<usize> = (0..n).filter(|&f| f != e && leq(f, e)).collect();
        let maximal: Vec<usize> = below
            .iter()
            .copied()
            .filter(|&f| !below.iter().any(|&g| g != f && leq(f, g)))
            .collect();
        if maximal.len() == 1 {
            irr_elems.push(e);
        }
    }
    if irr_elems.len() > crate::bits::MAX_UNIVERSE {
        return Err(LatticeError::Order(OrderError::TooManyElements {
            n: irr_elems.len(),
        }));
    }
    let irr_names: Vec<String> = irr_elems.iter().map(|&e| labels[e].clone()).collect();
    let irr = Poset::from_leq(irr_names, |a, b| leq(irr_elems[a], irr_elems[b]));

    let rep = |e: usize| -> Bits {
        (0..irr_elems.len())
            .filter(|&p| leq(irr_elems[p], e))
            .collect()
    };
    let reps: Vec<Bits> = (0..n).map(rep).collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&e| reps[e]);
    let elements: Vec<Bits> = order.iter().map(|&e| reps[e]).collect();
    let canonical_labels: Vec<String> = order.iter().map(|&e| labels[e].clone()).collect();
    let mut renaming = vec![0usize; n];
    for (idx, &e) in order.iter().enumerate() {
        renaming[e] = idx;
    }

    // Birkhoff: for a validated distributive lattice the representation is
    // bijective onto all downsets of the irreducible poset and turns the
    // given operations into bitset union/intersection. Certify all of it
    // instead of trusting the theorem.
    let distinct = elements.windows(2).all(|w| w[0] != w[1]);
    let complete = elements.iter().all(|&b| irr.is_downward_closed(b))
        && elements.len()
            == irr
                .downsets_dfs(&Budget::with_candidates(u64::MAX))
                .map_err(LatticeError::Order)?
                .len();
    if !distinct || !complete {
        return Err(LatticeError::BadTable(
            "operation tables do not present a distributive lattice".into(),
        ));
    }
    for a in 0..n {
        for b in 0..n {
            if reps[join(a, b)] != (reps[a] | reps[b]) || reps[meet(a, b)] != (reps[a] & reps[b]) {
                return Err(LatticeError::BadTable(
                    "operation tables disagree with the canonical representation".into(),
                ));
            }
        }
    }
    let lattice = FinDistLattice {
        irr,
        elements,
        labels: canonical_labels,
        has_top,
    };
    Ok((lattice, renaming))
}

fn brace_label(poset: &Poset, bits: Bits) -> String {
    let names: Vec<&str> = bits.iter().map(|p| poset.name(p)).collect();
    format!("{{{}}}", names.join(","))
}

fn unique_name(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.iter().any(|t| t == &name) {
        name.push('\'');
    }
    name
}

/// JSON document for a lattice: canonical form or validated table form.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeDoc {
    Canonical {
        #[serde(rename = "schemaVersion", default = "default_schema_version")]
        schema_version: u32,
        #[serde(rename = "posetOfIrreducibles")]
        poset_of_irreducibles: PosetDoc,
        #[serde(rename = "hasTop", default = "default_true")]
        has_top: bool,
    },
    Tables {
        #[serde(rename = "schemaVersion", default = "default_schema_version")]
        schema_version: u32,
        elements: Vec<String>,
        join: Vec<Vec<String>>,
        meet: Vec<Vec<String>>,
        bottom: String,
        #[serde(default)]
        top: Option<String>,
    },
}

fn default_true() -> bool {
    true
}

impl LatticeDoc {
    pub fn from_lattice(lattice: &FinDistLattice) -> LatticeDoc {
        LatticeDoc::Canonical {
            schema_version: default_schema_version(),
            poset_of_irreducibles: PosetDoc::from_poset(lattice.irr()),
            has_top: lattice.has_top(),
        }
    }

    pub fn into_lattice(self) -> Result<FinDistLattice, DocError> {
        match self {
            LatticeDoc::Canonical {
                schema_version,
                poset_of_irreducibles,
                has_top,
            } => {
                validate_schema_version(schema_version)?;
                let poset = poset_of_irreducibles.into_poset()?;
                let mut lattice = FinDistLattice::birkhoff_opens(&poset, &Budget::default())
                    .map_err(|e| DocError::Invalid(e.to_string()))?;
                lattice.has_top = has_top;
                Ok(lattice)
            }
            LatticeDoc::Tables {
                schema_version,
                elements,
                join,
                meet,
                bottom,
                top,
            } => {
                validate_schema_version(schema_version)?;
                let index = |name: &String| -> Result<usize, DocError> {
                    elements
                        .iter()
                        .position(|e| e == name)
                        .ok_or_else(|| DocError::Invalid(format!("unknown element {name:?}")))
                };
                let to_table = |t: Vec<Vec<String>>| -> Result<Vec<Vec<usize>>, DocError> {
                    t.iter()
                        .map(|row| row.iter().map(index).collect())
                        .collect()
                };
                let join = to_table(join)?;
                let meet = to_table(meet)?;
                let bottom = index(&bottom)?;
                let top = top.as_ref().map(index).transpose()?;
                FinDistLattice::from_tables(elements, join, meet, bottom, top)
                    .map(|(lattice, _)| lattice)
                    .map_err(|e| DocError::Invalid(e.to_string()))
            }
        }
    }
}

/// JSON document for a lattice homomorphism.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomDoc {
    #[serde(rename = "schemaVersion", default = "default_schema_version")]
    pub schema_version: u32,
    pub source: LatticeDoc,
    pub target: LatticeDoc,
    /// Element label in the source to element label in the target.
    pub map: BTreeMap<String, String>,
    #[serde(default)]
    pub bounded: Option<bool>,
}

impl HomDoc {
    pub fn into_hom(self) -> Result<LatticeHom, DocError> {
        validate_schema_version(self.schema_version)?;
        let source = self.source.into_lattice()?;
        let target = self.target.into_lattice()?;
        let mut map = Vec::with_capacity(source.len());
        for e in 0..source.len() {
            let from = source.label(e);
            let to = self
                .map
                .get(from)
                .ok_or_else(|| DocError::Invalid(format!("map is missing element {from:?}")))?;
            let t = target
                .index_of_label(to)
                .ok_or_else(|| DocError::Invalid(format!("unknown target element {to:?}")))?;
            map.push(t);
        }
        let bounded = self.bounded.unwrap_or(source.has_top() && target.has_top());
        Ok(LatticeHom::new(source, target, map, bounded))
    }
}
