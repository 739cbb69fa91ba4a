//! Chain-indexed inverse systems of finite sets: desk-scale profinite
//! spaces.
//!
//! A system is a chain `X_0 <- X_1 <- .. <- X_k` of finite sets with
//! surjective transitions. Surjectivity makes the dual Boolean maps
//! (preimages) injective, so the colimit of the powerset algebras is a
//! union with a well-defined earliest-stage normal form: a payload at
//! stage i normalizes to stage i-1 exactly when it is saturated for the
//! fibers of the transition.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::FgAbGroup;
use crate::bits::{Bits, MAX_UNIVERSE};
use crate::budget::Budget;
use crate::doc::{default_schema_version, validate_schema_version, DocError};
use crate::lattice::{FinDistLattice, LatticeError, LatticeHom};
use crate::matrix::Mat;
use crate::motives::{motive_hom, MotiveError, MotiveModule};
use crate::order::Poset;
use crate::snf::{smith_normal_form_flags, SNF_DIAG_ONLY};
use crate::Int;

#[derive(Debug, Error, Clone)]
pub enum ProfiniteError {
    #[error("transition {0} is not surjective")]
    NotSurjective(usize),
    #[error("system is malformed: {0}")]
    Malformed(String),
    #[error("ground set has {n} elements, over the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Motive(#[from] MotiveError),
}

/// A chain of finite sets `X_0, .., X_k` with surjections
/// `X_{i+1} -> X_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSystem {
    stages: Vec<Vec<String>>,
    /// `transitions[i][x]` is the image in `X_i` of `x` in `X_{i+1}`.
    transitions: Vec<Vec<usize>>,
}

impl InverseSystem {
    pub fn new(
        stages: Vec<Vec<String>>,
        transitions: Vec<Vec<usize>>,
    ) -> Result<InverseSystem, ProfiniteError> {
        if stages.is_empty() {
            return Err(ProfiniteError::Malformed(
                "a system needs at least one stage".into(),
            ));
        }
        if transitions.len() + 1 != stages.len() {
            return Err(ProfiniteError::Malformed(
                "a chain of k+1 stages needs exactly k transitions".into(),
            ));
        }
        for (i, stage) in stages.iter().enumerate() {
            if stage.is_empty() {
                return Err(ProfiniteError::Malformed(format!("stage {i} is empty")));
            }
            if stage.len() > MAX_UNIVERSE {
                return Err(ProfiniteError::Malformed(format!(
                    "stage {i} exceeds {MAX_UNIVERSE}"
                )));
            }
            let mut names = stage.clone();
            names.sort();
            names.dedup();
            if names.len() != stage.len() {
                return Err(ProfiniteError::Malformed(format!(
                    "stage {i} repeats a name"
                )));
            }
        }
        for (i, t) in transitions.iter().enumerate() {
            if t.len() != stages[i + 1].len() {
                return Err(ProfiniteError::Malformed(format!(
                    "transition {i} is not total"
                )));
            }
            if t.iter().any(|&y| y >= stages[i].len()) {
                return Err(ProfiniteError::Malformed(format!(
                    "transition {i} is out of range"
                )));
            }
            let mut hit = vec![false; stages[i].len()];
            for &y in t {
                hit[y] = true;
            }
            if hit.iter().any(|&h| !h) {
                return Err(ProfiniteError::NotSurjective(i));
            }
        }
        Ok(InverseSystem {
            stages,
            transitions,
        })
    }

    pub fn depth(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn stage(&self, i: usize) -> &[String] {
        &self.stages[i]
    }

    pub fn stages(&self) -> &[Vec<String>] {
        &self.stages
    }

    pub fn transition(&self, i: usize) -> &[usize] {
        &self.transitions[i]
    }

    /// Preimage of a stage-`i` subset along the transition into stage
    /// `i+1`.
    pub fn preimage(&self, i: usize, bits: Bits) -> Bits {
        self.transitions[i]
            .iter()
            .enumerate()
            .filter(|&(_, &y)| bits.contains(y))
            .map(|(x, _)| x)
            .collect()
    }

    /// Is a stage-`i+1` subset a union of transition fibers?
    pub fn saturated(&self, i: usize, bits: Bits) -> bool {
        let image: Bits = bits.iter().map(|x| self.transitions[i][x]).collect();
        self.preimage(i, image) == bits
    }

    /// The 0/1 matrix of precomposition `Z^{X_i} -> Z^{X_{i+1}}`.
    pub fn transition_matrix(&self, i: usize) -> Mat<Int> {
        let rows = self.stages[i + 1].len();
        let cols = self.stages[i].len();
        Mat::from_fn(rows, cols, |x, y| {
            Int::from(u8::from(self.transitions[i][x] == y))
        })
    }

    /// The powerset lattice of a stage.
    pub fn stage_lattice(&self, i: usize) -> Result<FinDistLattice, ProfiniteError> {
        let poset = Poset::antichain_named(self.stages[i].to_vec());
        Ok(FinDistLattice::birkhoff_opens(&poset, &Budget::default())?)
    }

    /// The preimage homomorphism between consecutive stage powersets.
    pub fn stage_hom(&self, i: usize) -> Result<LatticeHom, ProfiniteError> {
        let source = self.stage_lattice(i)?;
        let target = self.stage_lattice(i + 1)?;
        let map = source
            .elements()
            .iter()
            .map(|&b| {
                target
                    .index_of_bits(self.preimage(i, b))
                    .expect("powerset is closed")
            })
            .collect();
        Ok(LatticeHom::new(source, target, map, true))
    }
}

/// An element of the Boolean colimit: a subset payload at some stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ColimSubset {
    pub stage: usize,
    pub bits: Bits,
}

/// The colimit of the stage powerset algebras, with earliest-stage normal
/// forms.
#[derive(Debug, Clone)]
pub struct ColimBoolean<'a> {
    system: &'a InverseSystem,
}

impl<'a> ColimBoolean<'a> {
    pub fn system(&self) -> &InverseSystem {
        self.system
    }

    /// Earliest-stage representative: push the payload down while it is a
    /// pullback from the previous stage. Idempotent.
    pub fn normalize(&self, e: ColimSubset) -> ColimSubset {
        let mut stage = e.stage;
        let mut bits = e.bits;
        while stage > 0 && self.system.saturated(stage - 1, bits) {
            bits = bits
                .iter()
                .map(|x| self.system.transitions[stage - 1][x])
                .collect();
            stage -= 1;
        }
        ColimSubset { stage, bits }
    }

    /// Lift a payload to a not-earlier stage along preimages.
    pub fn lift(&self, e: ColimSubset, stage: usize) -> ColimSubset {
        assert!(stage >= e.stage && stage <= self.system.depth());
        let mut bits = e.bits;
        for i in e.stage..stage {
            bits = self.system.preimage(i, bits);
        }
        ColimSubset { stage, bits }
    }

    fn common(&self, a: ColimSubset, b: ColimSubset) -> (Bits, Bits, usize) {
        let stage = a.stage.max(b.stage);
        (self.lift(a, stage).bits, self.lift(b, stage).bits, stage)
    }

    pub fn join(&self, a: ColimSubset, b: ColimSubset) -> ColimSubset {
        let (x, y, stage) = self.common(a, b);
        self.normalize(ColimSubset { stage, bits: x | y })
    }

    pub fn meet(&self, a: ColimSubset, b: ColimSubset) -> ColimSubset {
        let (x, y, stage) = self.common(a, b);
        self.normalize(ColimSubset { stage, bits: x & y })
    }

    pub fn complement(&self, a: ColimSubset) -> ColimSubset {
        let n = self.system.stages[a.stage].len();
        self.normalize(ColimSubset {
            stage: a.stage,
            bits: a.bits.complement(n),
        })
    }

    pub fn eq(&self, a: ColimSubset, b: ColimSubset) -> bool {
        self.normalize(a) == self.normalize(b)
    }

    pub fn bottom(&self) -> ColimSubset {
        ColimSubset {
            stage: 0,
            bits: Bits::EMPTY,
        }
    }

    pub fn top(&self) -> ColimSubset {
        ColimSubset {
            stage: 0,
            bits: Bits::full(self.system.stages[0].len()),
        }
    }
}

/// Boolean-algebra view of the colimit of stage powersets.
pub fn colimit_boolean(system: &InverseSystem) -> ColimBoolean<'_> {
    ColimBoolean { system }
}

/// A function element: one target coordinate vector per point of its
/// stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColimFunction {
    pub stage: usize,
    pub values: Vec<Vec<Int>>,
}

/// The group of locally constant functions into a fixed finitely
/// generated abelian group, presented as the colimit of the stagewise
/// function groups along precomposition.
#[derive(Debug, Clone)]
pub struct ColimFunctions<'a> {
    system: &'a InverseSystem,
    target: FgAbGroup,
}

impl<'a> ColimFunctions<'a> {
    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    /// Functions representable at stage `i` form the full product, one
    /// target copy per point.
    pub fn stage_group(&self, i: usize) -> FgAbGroup {
        self.target.power(self.system.stages[i].len())
    }

    pub fn zero(&self) -> ColimFunction {
        ColimFunction {
            stage: 0,
            values: vec![self.target.zero_element(); self.system.stages[0].len()],
        }
    }

    pub fn constant(&self, value: Vec<Int>) -> ColimFunction {
        let value = self.target.reduce(value);
        ColimFunction {
            stage: 0,
            values: vec![value; self.system.stages[0].len()],
        }
    }

    /// Precompose with transitions up to the requested stage.
    pub fn lift(&self, f: &ColimFunction, stage: usize) -> ColimFunction {
        assert!(stage >= f.stage && stage <= self.system.depth());
        let mut values = f.values.clone();
        for i in f.stage..stage {
            values = self.system.transitions[i]
                .iter()
                .map(|&y| values[y].clone())
                .collect();
        }
        ColimFunction { stage, values }
    }

    /// Earliest-stage representative: constant on fibers pushes down.
    pub fn normalize(&self, f: &ColimFunction) -> ColimFunction {
        let mut stage = f.stage;
        let mut values = f.values.clone();
        'outer: while stage > 0 {
            let t = &self.system.transitions[stage - 1];
            let mut pushed: Vec<Option<Vec<Int>>> = vec![None; self.system.stages[stage - 1].len()];
            for (x, v) in values.iter().enumerate() {
                match &pushed[t[x]] {
                    None => pushed[t[x]] = Some(v.clone()),
                    Some(w) if w == v => {}
                    Some(_) => break 'outer,
                }
            }
            values = pushed
                .into_iter()
                .map(|v| v.expect("transition is surjective"))
                .collect();
            stage -= 1;
        }
        ColimFunction { stage, values }
    }

    pub fn add(&self, f: &ColimFunction, g: &ColimFunction) -> ColimFunction {
        let stage = f.stage.max(g.stage);
        let f = self.lift(f, stage);
        let g = self.lift(g, stage);
        let values = f
            .values
            .iter()
            .zip(&g.values)
            .map(|(a, b)| self.target.add(a, b))
            .collect();
        self.normalize(&ColimFunction { stage, values })
    }

    pub fn eq(&self, f: &ColimFunction, g: &ColimFunction) -> bool {
        self.normalize(f) == self.normalize(g)
    }

    /// The indicator function of a colimit subset.
    pub fn indicator(&self, e: ColimSubset, one: &[Int]) -> ColimFunction {
        let one = self.target.reduce(one.to_vec());
        let values = (0..self.system.stages[e.stage].len())
            .map(|x| {
                if e.bits.contains(x) {
                    one.clone()
                } else {
                    self.target.zero_element()
                }
            })
            .collect();
        self.normalize(&ColimFunction {
            stage: e.stage,
            values,
        })
    }
}

/// The group of continuous (= locally constant) functions into `target`.
pub fn continuous_functions<'a>(
    system: &'a InverseSystem,
    target: FgAbGroup,
) -> ColimFunctions<'a> {
    ColimFunctions { system, target }
}

/// Comparison of the motive module of the deepest-stage powerset with the
/// integer-valued function group on that stage.
#[derive(Debug, Clone)]
pub struct MotivesContinuousReport {
    /// `|X_i|` per stage: the rank of the stage function group.
    pub stage_ranks: Vec<usize>,
    pub motive_rank: usize,
    pub indicator_unimodular: bool,
    /// Rank of the precomposition matrix along the last transition, when
    /// the chain has one; full rank means injective.
    pub transition_injective: Option<bool>,
    /// The motive map induced by the preimage hom along the last
    /// transition agrees with the precomposition matrix.
    pub transition_compatible: Option<bool>,
}

impl MotivesContinuousReport {
    pub fn ok(&self) -> bool {
        self.indicator_unimodular
            && self.motive_rank == *self.stage_ranks.last().expect("nonempty")
            && self.transition_injective.unwrap_or(true)
            && self.transition_compatible.unwrap_or(true)
    }
}

/// Verify that the indicator map identifies the motive module of the
/// deepest-stage powerset with the function group on that stage, and that
/// the last transition acts compatibly and injectively.
pub fn motives_vs_continuous(
    system: &InverseSystem,
) -> Result<MotivesContinuousReport, ProfiniteError> {
    let k = system.depth();
    let deepest = system.stage_lattice(k)?;
    let module = MotiveModule::new(&deepest)?;
    let stage_ranks: Vec<usize> = system.stages().iter().map(|s| s.len()).collect();

    // points of a powerset are the singletons, so the point-basis map of
    // the module is exactly "element to indicator vector on the stage"
    let indicator_unimodular =
        module.point_iso().is_unimodular() && module.rank() == system.stage(k).len();

    let (transition_injective, transition_compatible) = if k > 0 {
        let hom = system.stage_hom(k - 1)?;
        let source = MotiveModule::new(hom.source())?;
        let induced = motive_hom(&source, &module, &hom)?;
        let precompose = system.transition_matrix(k - 1);
        let compatible = induced == precompose;
        let injective = smith_normal_form_flags(&induced, SNF_DIAG_ONLY).rank() == source.rank();
        (Some(injective), Some(compatible))
    } else {
        (None, None)
    };

    Ok(MotivesContinuousReport {
        stage_ranks,
        motive_rank: module.rank(),
        indicator_unimodular,
        transition_injective,
        transition_compatible,
    })
}

/// A set partition, blocks sorted by least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub blocks: Vec<Bits>,
}

impl Partition {
    pub fn block_of(&self, x: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(x))
            .expect("partitions are total")
    }
}

/// All partitions of a finite set ordered by refinement.
#[derive(Debug, Clone)]
pub struct PartitionLattice {
    pub ground: Vec<String>,
    /// Canonical order: lexicographic restricted-growth strings.
    pub partitions: Vec<Partition>,
}

impl PartitionLattice {
    /// Coarser-or-equal: every block of `self[a]` is a union of blocks of
    /// `self[b]`.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.partitions[b].blocks.iter().all(|&fine| {
            self.partitions[a]
                .blocks
                .iter()
                .any(|&coarse| fine.is_subset(coarse))
        })
    }

    pub fn index_of(&self, blocks: &[Bits]) -> Option<usize> {
        let mut wanted = blocks.to_vec();
        wanted.sort();
        self.partitions.iter().position(|p| {
            let mut candidate = p.blocks.clone();
            candidate.sort();
            candidate == wanted
        })
    }
}

/// Verification record for the partition colimit and the finite
/// Stone-Čech stage.
#[derive(Debug, Clone)]
pub struct PartitionReport {
    pub partition_count: usize,
    /// Every subset of the ground set is hit by the two-block recipe and
    /// evaluates back to itself.
    pub powerset_recovered: bool,
    /// Size of the inverse limit over the partition diagram; for a finite
    /// set this is the set itself.
    pub limit_size: usize,
}

const PARTITION_CAP: usize = 8;

/// Enumerate all partitions of the named ground set, verify the powerset
/// colimit recipe and compute the inverse limit over the refinement
/// diagram.
pub fn finite_partitions(
    ground: &[String],
) -> Result<(PartitionLattice, PartitionReport), ProfiniteError> {
    let n = ground.len();
    if n > PARTITION_CAP {
        return Err(ProfiniteError::TooLarge {
            n,
            cap: PARTITION_CAP,
        });
    }
    let mut partitions = Vec::new();
    if n == 0 {
        partitions.push(Partition { blocks: vec![] });
    } else {
        let mut assignment = vec![0usize; n];
        enumerate_growth_strings(&mut assignment, 1, &mut partitions);
    }
    let lattice = PartitionLattice {
        ground: ground.to_vec(),
        partitions,
    };

    // recipe: a subset corresponds to the singleton block {U} of the
    // partition {U, U^c}; evaluation by union recovers it
    let mut powerset_recovered = true;
    for raw in 0..(1u64 << n) {
        let u = Bits(raw);
        let mut blocks = Vec::new();
        if !u.is_empty() {
            blocks.push(u);
        }
        if !u.complement(n).is_empty() {
            blocks.push(u.complement(n));
        }
        if n == 0 {
            break;
        }
        let Some(idx) = lattice.index_of(&blocks) else {
            powerset_recovered = false;
            break;
        };
        let chosen: Bits = lattice.partitions[idx]
            .blocks
            .iter()
            .copied()
            .filter(|&b| b.is_subset(u))
            .fold(Bits::EMPTY, |acc, b| acc | b);
        if chosen != u {
            powerset_recovered = false;
            break;
        }
    }

    // inverse limit over the refinement diagram: families of blocks, one
    // per partition, compatible under coarsening. Each ground element
    // induces one, all distinct; compatibility with the finest partition
    // pins a family to an element, so these are all of them.
    let mut limit_size = 0;
    if n > 0 {
        let finest = lattice
            .index_of(&(0..n).map(Bits::singleton).collect::<Vec<_>>())
            .expect("finest partition enumerated");
        let mut families_ok = true;
        let mut seen = Vec::new();
        for s in 0..n {
            let family: Vec<usize> = lattice.partitions.iter().map(|p| p.block_of(s)).collect();
            for a in 0..lattice.partitions.len() {
                for b in 0..lattice.partitions.len() {
                    if lattice.leq(a, b) {
                        let fine = lattice.partitions[b].blocks[family[b]];
                        let coarse = lattice.partitions[a].blocks[family[a]];
                        if !fine.is_subset(coarse) {
                            families_ok = false;
                        }
                    }
                }
            }
            if seen.contains(&family[finest]) {
                families_ok = false;
            }
            seen.push(family[finest]);
        }
        if families_ok {
            limit_size = n;
        }
    }

    let report = PartitionReport {
        partition_count: lattice.partitions.len(),
        powerset_recovered,
        limit_size,
    };
    Ok((lattice, report))
}

fn enumerate_growth_strings(assignment: &mut Vec<usize>, pos: usize, out: &mut Vec<Partition>) {
    let n = assignment.len();
    if pos >= n {
        let block_count = assignment.iter().copied().max().unwrap_or(0) + 1;
        let mut blocks = vec![Bits::EMPTY; block_count];
        for (x, &b) in assignment.iter().enumerate() {
            blocks[b].insert(x);
        }
        out.push(Partition { blocks });
        return;
    }
    let ceiling = assignment[..pos].iter().copied().max().unwrap_or(0) + 1;
    for b in 0..=ceiling {
        assignment[pos] = b;
        enumerate_growth_strings(assignment, pos + 1, out);
    }
    assignment[pos] = 0;
}

/// The finite-stage constructible topology: the Booleanization presented
/// as a one-stage system on the points, with the hom into it.
#[derive(Debug, Clone)]
pub struct ConstructibleStage {
    pub system: InverseSystem,
    pub hom: LatticeHom,
}

pub fn constructible_stage(lattice: &FinDistLattice) -> Result<ConstructibleStage, ProfiniteError> {
    let (_, hom) = lattice.booleanize()?;
    let names: Vec<String> = lattice.irr().names().to_vec();
    if names.is_empty() {
        return Err(ProfiniteError::Malformed(
            "one-element lattice has no points; there is no discrete stage to present".into(),
        ));
    }
    let system = InverseSystem::new(vec![names], vec![])?;
    Ok(ConstructibleStage { system, hom })
}

/// JSON document for an inverse system.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemDoc {
    #[serde(rename = "schemaVersion", default = "default_schema_version")]
    pub schema_version: u32,
    pub stages: Vec<Vec<String>>,
    /// One map per transition, deeper stage to shallower: name -> name.
    pub transitions: Vec<BTreeMap<String, String>>,
}

impl SystemDoc {
    pub fn from_system(system: &InverseSystem) -> SystemDoc {
        SystemDoc {
            schema_version: default_schema_version(),
            stages: system.stages().to_vec(),
            transitions: (0..system.depth())
                .map(|i| {
                    system
                        .transition(i)
                        .iter()
                        .enumerate()
                        .map(|(x, &y)| (system.stage(i + 1)[x].clone(), system.stage(i)[y].clone()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn into_system(self) -> Result<InverseSystem, DocError> {
        validate_schema_version(self.schema_version)?;
        if self.transitions.len() + 1 != self.stages.len() {
            return Err(DocError::Invalid(
                "one transition per consecutive stage pair".into(),
            ));
        }
        let mut transitions = Vec::new();
        for (i, t) in self.transitions.iter().enumerate() {
            let from_stage = &self.stages[i + 1];
            let to_stage = &self.stages[i];
            let mut table = Vec::with_capacity(from_stage.len());
            for x in from_stage {
                let y = t
                    .get(x)
                    .ok_or_else(|| DocError::Invalid(format!("transition {i} misses {x:?}")))?;
                let idx = to_stage
                    .iter()
                    .position(|n| n == y)
                    .ok_or_else(|| DocError::Invalid(format!("unknown image {y:?}")))?;
                table.push(idx);
            }
            transitions.push(table);
        }
        InverseSystem::new(self.stages, transitions).map_err(|e| DocError::Invalid(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    fn constant_system(n: usize, depth: usize) -> InverseSystem {
        let stages = vec![names("x", n); depth + 1];
        let transitions = vec![(0..n).collect(); depth];
        InverseSystem::new(stages, transitions).unwrap()
    }

    /// stages {y1,y2} <- {x1,x2,x3,x4}, with x1,x2 -> y1 and x3,x4 -> y2
    fn merge_system() -> InverseSystem {
        InverseSystem::new(vec![names("y", 2), names("x", 4)], vec![vec![0, 0, 1, 1]]).unwrap()
    }

    #[test]
    fn validation_catches_non_surjections() {
        let err =
            InverseSystem::new(vec![names("y", 2), names("x", 2)], vec![vec![0, 0]]).unwrap_err();
        assert!(matches!(err, ProfiniteError::NotSurjective(0)));
    }

    #[test]
    fn constant_system_colimit_is_the_powerset() {
        let sys = constant_system(2, 1);
        let colim = colimit_boolean(&sys);
        // every deep payload normalizes to stage 0
        for raw in 0..4u64 {
            let e = colim.normalize(ColimSubset {
                stage: 1,
                bits: Bits(raw),
            });
            assert_eq!(e.stage, 0);
            assert_eq!(e.bits, Bits(raw));
        }
    }

    #[test]
    fn merge_system_normal_forms() {
        let sys = merge_system();
        let colim = colimit_boolean(&sys);
        // {x3} is not saturated, so it stays at stage 1
        let e = colim.normalize(ColimSubset {
            stage: 1,
            bits: Bits::singleton(2),
        });
        assert_eq!(e.stage, 1);
        // {x3, x4} is the preimage of {y2}: normal form at stage 0
        let e = colim.normalize(ColimSubset {
            stage: 1,
            bits: Bits(0b1100),
        });
        assert_eq!(
            e,
            ColimSubset {
                stage: 0,
                bits: Bits::singleton(1)
            }
        );
    }

    #[test]
    fn single_stage_singleton_is_two() {
        let sys = InverseSystem::new(vec![vec!["a".into()]], vec![]).unwrap();
        let colim = colimit_boolean(&sys);
        assert!(colim.eq(
            colim.top(),
            ColimSubset {
                stage: 0,
                bits: Bits(1)
            }
        ));
        assert!(!colim.eq(colim.bottom(), colim.top()));
    }

    #[test]
    fn normalize_is_idempotent_and_boolean_laws_hold() {
        let sys = merge_system();
        let colim = colimit_boolean(&sys);
        for raw_a in 0..16u64 {
            for raw_b in 0..16u64 {
                let a = ColimSubset {
                    stage: 1,
                    bits: Bits(raw_a),
                };
                let b = ColimSubset {
                    stage: 1,
                    bits: Bits(raw_b),
                };
                assert_eq!(colim.normalize(colim.normalize(a)), colim.normalize(a));
                // De Morgan
                let lhs = colim.complement(colim.join(a, b));
                let rhs = colim.meet(colim.complement(a), colim.complement(b));
                assert!(colim.eq(lhs, rhs));
                // complementation
                assert!(colim.eq(colim.meet(a, colim.complement(a)), colim.bottom()));
                assert!(colim.eq(colim.join(a, colim.complement(a)), colim.top()));
            }
        }
    }

    #[test]
    fn functions_on_constant_system() {
        let sys = constant_system(2, 1);
        let funcs = continuous_functions(&sys, FgAbGroup::free(1));
        assert_eq!(funcs.stage_group(1), FgAbGroup::free(2));
        let f = ColimFunction {
            stage: 1,
            values: vec![vec![Int::from(3)], vec![Int::from(5)]],
        };
        let n = funcs.normalize(&f);
        assert_eq!(n.stage, 0, "identities push everything to stage 0");
    }

    #[test]
    fn functions_on_merge_system() {
        let sys = merge_system();
        let funcs = continuous_functions(&sys, FgAbGroup::free(1));
        assert_eq!(funcs.stage_group(1), FgAbGroup::free(4));
        // stage-0 functions embed as fiberwise-constant vectors
        let f = ColimFunction {
            stage: 0,
            values: vec![vec![Int::from(7)], vec![Int::from(9)]],
        };
        let lifted = funcs.lift(&f, 1);
        assert_eq!(
            lifted.values,
            vec![
                vec![Int::from(7)],
                vec![Int::from(7)],
                vec![Int::from(9)],
                vec![Int::from(9)]
            ]
        );
        assert!(funcs.eq(&f, &lifted));
        // a fiber-inconstant function does not push down
        let g = ColimFunction {
            stage: 1,
            values: vec![
                vec![Int::from(1)],
                vec![Int::from(2)],
                vec![Int::from(0)],
                vec![Int::from(0)],
            ],
        };
        assert_eq!(funcs.normalize(&g).stage, 1);
    }

    #[test]
    fn trivial_target_gives_trivial_group() {
        let sys = merge_system();
        let funcs = continuous_functions(&sys, FgAbGroup::zero());
        let f = ColimFunction {
            stage: 1,
            values: vec![vec![]; 4],
        };
        assert!(funcs.eq(&f, &funcs.zero()));
    }

    #[test]
    fn motives_vs_continuous_reports() {
        let sys = constant_system(3, 0);
        let report = motives_vs_continuous(&sys).unwrap();
        assert_eq!(report.motive_rank, 3);
        assert_eq!(report.stage_ranks, vec![3]);
        assert!(report.ok());

        let sys = InverseSystem::new(vec![vec!["pt".into()]], vec![]).unwrap();
        let report = motives_vs_continuous(&sys).unwrap();
        assert_eq!(report.motive_rank, 1);

        let report = motives_vs_continuous(&merge_system()).unwrap();
        assert_eq!(report.stage_ranks, vec![2, 4]);
        assert_eq!(report.motive_rank, 4);
        assert_eq!(report.transition_injective, Some(true));
        assert_eq!(report.transition_compatible, Some(true));
        assert!(report.ok());
    }

    #[test]
    fn partition_counts_match_bell_numbers() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203];
        for (n, &expected) in bell.iter().enumerate() {
            let ground = names("s", n);
            let (lattice, report) = finite_partitions(&ground).unwrap();
            assert_eq!(lattice.partitions.len(), expected, "Bell({n})");
            assert_eq!(report.partition_count, expected);
            assert!(report.powerset_recovered, "n = {n}");
            assert_eq!(report.limit_size, n);
        }
    }

    #[test]
    fn partition_cap_is_enforced() {
        let err = finite_partitions(&names("s", 9)).unwrap_err();
        assert!(matches!(err, ProfiniteError::TooLarge { .. }));
    }

    #[test]
    fn beta_of_a_two_set_has_two_points() {
        let (_, report) = finite_partitions(&names("s", 2)).unwrap();
        assert_eq!(report.limit_size, 2);
    }

    #[test]
    fn constructible_stage_of_chain() {
        let chain3 = crate::lattice::tests::three_chain();
        let stage = constructible_stage(&chain3).unwrap();
        assert_eq!(stage.system.stage(0).len(), 2, "two points");
        assert!(stage.hom.check().ok());
        // Boolean lattice maps to an identical stage
        let d = crate::lattice::tests::diamond();
        let stage = constructible_stage(&d).unwrap();
        assert_eq!(stage.system.stage(0).len(), 2);
        assert!(
            (0..d.len()).all(|e| stage.hom.apply(e) == e),
            "identity on a Boolean algebra"
        );
    }

    #[test]
    fn system_doc_round_trip() {
        let sys = merge_system();
        let doc = SystemDoc::from_system(&sys);
        let text = serde_json::to_string(&doc).unwrap();
        let back: SystemDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_system().unwrap(), sys);
    }
}
