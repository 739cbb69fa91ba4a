//! The module of motives of a finite distributive lattice.
//!
//! `M(D)` is the free abelian group on the nonzero elements of `D` modulo
//! one modularity relation `[U] + [V] - [U v V] - [U ^ V]` per unordered
//! incomparable pair (comparable pairs give the trivial relation and are
//! omitted). Smith normal form of the relation matrix certifies that the
//! presentation is torsion-free and computes the rank.
//!
//! Two independent routes pin the structure down:
//!
//! - the SNF route: rank and freeness from the elimination certificate;
//! - the point route: sending a class to the 0/1 indicator vector of the
//!   irreducibles below it kills every relation, and the resulting map is
//!   checked to be unimodular against the SNF basis.
//!
//! The chosen free basis is the preimage of the standard point basis,
//! obtained by Moebius inversion over the irreducible poset: the basis
//! vector of a point p is `sum_{q <= p} mu(q, p) [q↓]`. On that basis the
//! universal valuation of an element is simply its indicator vector, and
//! the product transported from `[U] . [V] = [U ^ V]` is the pointwise
//! product of coordinate vectors.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::FgAbGroup;
use crate::doc::default_schema_version;
use crate::incidence::moebius_table;
use crate::lattice::{FinDistLattice, LatticeError, LatticeHom};
use crate::matrix::Mat;
use crate::snf::{smith_normal_form_flags, SnfResult, SNF_LEFT};
use crate::Int;

#[derive(Debug, Error, Clone)]
pub enum MotiveError {
    #[error("presentation has torsion, SNF diagonal {0:?}")]
    TorsionFound(Vec<String>),
    #[error("SNF rank {rank} disagrees with the point count {points}")]
    PointCountMismatch { rank: usize, points: usize },
    #[error("point matrix is not unimodular, determinant {det}")]
    NotUnimodular { det: String },
    #[error("map is not a lattice homomorphism")]
    NotAHom,
    #[error("values are not a valuation: {0}")]
    NotAValuation(String),
    #[error("induced matrix is not an isomorphism, determinant {det}")]
    NotIso { det: String },
    #[error("product is not well defined: {0}")]
    IllDefinedProduct(String),
    #[error("top splitting failed: {0}")]
    SplitFailure(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A finitely presented abelian group: generator count plus integer
/// relation rows.
#[derive(Debug, Clone)]
pub struct FPAbGroup {
    pub generators: usize,
    /// rows = relations, columns = generators
    pub relations: Mat<Int>,
}

/// The presentation of `M(D)`: one generator per nonzero element, one
/// modularity relation per unordered incomparable pair.
pub fn motives_presentation(lattice: &FinDistLattice) -> FPAbGroup {
    let generators = lattice.len() - 1;
    let generator_of =
        |element: usize| -> Option<usize> { (element != lattice.bottom()).then(|| element - 1) };
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for a in 1..lattice.len() {
        for b in a + 1..lattice.len() {
            if lattice.leq(a, b) || lattice.leq(b, a) {
                continue;
            }
            let mut row = vec![Int::zero(); generators];
            row[a - 1] += 1;
            row[b - 1] += 1;
            row[lattice.join(a, b) - 1] -= 1;
            if let Some(g) = generator_of(lattice.meet(a, b)) {
                row[g] -= 1;
            }
            rows.push(row);
        }
    }
    let relations = if rows.is_empty() {
        Mat::zero(0, generators)
    } else {
        Mat::from_rows(rows)
    };
    FPAbGroup {
        generators,
        relations,
    }
}

/// `M(D)` with its certified free basis, universal valuation and ring
/// structure.
#[derive(Debug, Clone)]
pub struct MotiveModule {
    lattice: FinDistLattice,
    presentation: FPAbGroup,
    snf: SnfResult<Int>,
    rank: usize,
    /// Element indices realizing the points, in irreducible order.
    point_elements: Vec<usize>,
    /// Basis vector of each point, in generator coordinates.
    basis: Vec<Vec<Int>>,
    /// The point basis expressed in SNF free coordinates; unimodular.
    point_iso: Mat<Int>,
    /// Universal valuation: per element, coordinates on the point basis.
    mu: Vec<Vec<Int>>,
}

impl MotiveModule {
    pub fn new(lattice: &FinDistLattice) -> Result<MotiveModule, MotiveError> {
        let presentation = motives_presentation(lattice);
        let generators = presentation.generators;
        // cokernel convention: columns of the transpose span the relations
        let snf = smith_normal_form_flags(&presentation.relations.transpose(), SNF_LEFT);
        if snf.diag.iter().any(|d| *d > Int::one()) {
            return Err(MotiveError::TorsionFound(
                snf.diag.iter().map(|d| d.to_string()).collect(),
            ));
        }
        let rank = generators - snf.rank();

        let points = lattice.point_elements();
        if rank != points.len() {
            return Err(MotiveError::PointCountMismatch {
                rank,
                points: points.len(),
            });
        }
        let mu_irr = moebius_table(lattice.irr());

        // basis vector of p: Moebius inversion of the principal downsets
        let mut basis = Vec::with_capacity(points.len());
        for p in 0..points.len() {
            let mut vec = vec![Int::zero(); generators];
            for q in lattice.irr().down_bits(p).iter() {
                let coeff = mu_irr[&(q, p)].clone();
                vec[points[q] - 1] += coeff;
            }
            basis.push(vec);
        }

        // indicator of a generator: which points sit below the element
        let indicator = |generator: usize| -> Vec<Int> {
            let bits = lattice.element_bits(generator + 1);
            (0..points.len())
                .map(|p| Int::from(u8::from(bits.contains(p))))
                .collect()
        };

        // the indicator map kills every relation row
        for r in 0..presentation.relations.nrows() {
            let mut acc = vec![Int::zero(); points.len()];
            for g in 0..generators {
                let c = &presentation.relations[(r, g)];
                if c.is_zero() {
                    continue;
                }
                for (slot, x) in indicator(g).into_iter().enumerate() {
                    acc[slot] += c * x;
                }
            }
            if acc.iter().any(|x| !x.is_zero()) {
                return Err(MotiveError::IllDefinedProduct(format!(
                    "indicator map does not kill relation row {r}"
                )));
            }
        }

        // Moebius inversion sanity: basis p maps to the standard vector
        for (p, vec) in basis.iter().enumerate() {
            let mut acc = vec![Int::zero(); points.len()];
            for (g, c) in vec.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (slot, x) in indicator(g).into_iter().enumerate() {
                    acc[slot] += c * x;
                }
            }
            let expected: Vec<Int> = (0..points.len())
                .map(|i| Int::from(u8::from(i == p)))
                .collect();
            assert_eq!(acc, expected, "Moebius inversion must invert the indicator");
        }

        // express the point basis in the SNF free coordinates and certify
        // unimodularity: the independent oracle against the SNF rank
        let torsion_rows = snf.rank();
        let mut point_iso: Mat<Int> = Mat::zero(rank, points.len());
        for (p, vec) in basis.iter().enumerate() {
            let y = snf
                .left
                .as_ref()
                .expect("left transform tracked")
                .mul_vec(vec);
            for i in 0..rank {
                point_iso[(i, p)] = y[torsion_rows + i].clone();
            }
        }
        let det = point_iso.det();
        if !det.abs().is_one() {
            return Err(MotiveError::NotUnimodular {
                det: det.to_string(),
            });
        }

        let mu = (0..lattice.len())
            .map(|e| {
                let bits = lattice.element_bits(e);
                (0..points.len())
                    .map(|p| Int::from(u8::from(bits.contains(p))))
                    .collect()
            })
            .collect();

        let module = MotiveModule {
            lattice: lattice.clone(),
            presentation,
            snf,
            rank,
            point_elements: points,
            basis,
            point_iso,
            mu,
        };
        module.check_pointwise_product()?;
        Ok(module)
    }

    /// In point coordinates the product must implement `[U][V] = [U^V]`.
    fn check_pointwise_product(&self) -> Result<(), MotiveError> {
        for a in 0..self.lattice.len() {
            for b in a..self.lattice.len() {
                let lhs = self.product(&self.mu[a], &self.mu[b]);
                if lhs != self.mu[self.lattice.meet(a, b)] {
                    return Err(MotiveError::IllDefinedProduct(format!(
                        "[{}] . [{}] differs from the meet class",
                        self.lattice.label(a),
                        self.lattice.label(b)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn lattice(&self) -> &FinDistLattice {
        &self.lattice
    }

    pub fn presentation(&self) -> &FPAbGroup {
        &self.presentation
    }

    pub fn snf(&self) -> &SnfResult<Int> {
        &self.snf
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn point_count(&self) -> usize {
        self.point_elements.len()
    }

    /// Element indices of the lattice realizing the points.
    pub fn point_elements(&self) -> &[usize] {
        &self.point_elements
    }

    /// Universal valuation of an element, in point-basis coordinates.
    pub fn mu(&self, element: usize) -> &[Int] {
        &self.mu[element]
    }

    /// Basis vector of a point in generator coordinates.
    pub fn basis_vector(&self, p: usize) -> &[Int] {
        &self.basis[p]
    }

    /// The unimodular change of basis between the point basis and the SNF
    /// basis.
    pub fn point_iso(&self) -> &Mat<Int> {
        &self.point_iso
    }

    /// Freeness certificate: the SNF diagonal has no entry above one.
    pub fn certify_free(&self) -> FreenessReport {
        FreenessReport {
            rank: self.rank,
            snf_diag: self.snf.diag.clone(),
            torsion_free: self.snf.diag.iter().all(|d| *d <= Int::one()),
        }
    }

    /// Product in point coordinates: componentwise.
    pub fn product(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        a.iter().zip(b).map(|(x, y)| x * y).collect()
    }

    /// Multiplication table on the point basis.
    pub fn ring_table(&self) -> Vec<Vec<Vec<Int>>> {
        let n = self.point_count();
        let unit_vec =
            |p: usize| -> Vec<Int> { (0..n).map(|i| Int::from(u8::from(i == p))).collect() };
        (0..n)
            .map(|p| {
                (0..n)
                    .map(|q| self.product(&unit_vec(p), &unit_vec(q)))
                    .collect()
            })
            .collect()
    }

    /// Verify the ring structure: the bilinear extension respects every
    /// relation, is commutative and associative on all basis triples,
    /// every universal-valuation image is idempotent, and the class of the
    /// top is a unit when the lattice is bounded.
    pub fn ring_report(&self) -> Result<RingReport, MotiveError> {
        // respects relations: for every relation row and every generator W,
        // the contracted row of meet classes must vanish
        for r in 0..self.presentation.relations.nrows() {
            for w in 1..self.lattice.len() {
                let mut acc = vec![Int::zero(); self.point_count()];
                for g in 0..self.presentation.generators {
                    let c = &self.presentation.relations[(r, g)];
                    if c.is_zero() {
                        continue;
                    }
                    let meet = self.lattice.meet(g + 1, w);
                    for (slot, x) in self.mu[meet].iter().enumerate() {
                        acc[slot] += c * x;
                    }
                }
                if acc.iter().any(|x| !x.is_zero()) {
                    return Err(MotiveError::IllDefinedProduct(format!(
                        "relation row {r} multiplied by [{}] does not vanish",
                        self.lattice.label(w)
                    )));
                }
            }
        }
        let table = self.ring_table();
        let n = self.point_count();
        for p in 0..n {
            for q in 0..n {
                if table[p][q] != table[q][p] {
                    return Err(MotiveError::IllDefinedProduct("not commutative".into()));
                }
                for r in 0..n {
                    let left = self.product(&table[p][q], &self.mu_unit_vec(r));
                    let right = self.product(&self.mu_unit_vec(p), &table[q][r]);
                    if left != right {
                        return Err(MotiveError::IllDefinedProduct("not associative".into()));
                    }
                }
            }
        }
        for e in 0..self.lattice.len() {
            let image = &self.mu[e];
            if self.product(image, image) != *image {
                return Err(MotiveError::IllDefinedProduct(format!(
                    "universal valuation image of [{}] is not idempotent",
                    self.lattice.label(e)
                )));
            }
        }
        let mut unit = None;
        if let Some(top) = self.lattice.top() {
            let one = &self.mu[top];
            for p in 0..n {
                let unit_vec = self.mu_unit_vec(p);
                if self.product(one, &unit_vec) != unit_vec {
                    return Err(MotiveError::IllDefinedProduct(
                        "top class is not a two-sided unit".into(),
                    ));
                }
            }
            unit = Some(one.clone());
        }
        Ok(RingReport { table, unit })
    }

    fn mu_unit_vec(&self, p: usize) -> Vec<Int> {
        (0..self.point_count())
            .map(|i| Int::from(u8::from(i == p)))
            .collect()
    }

    /// Human-readable signed combination of element classes for a basis
    /// vector.
    pub fn basis_combo_string(&self, p: usize) -> String {
        let mut out = String::new();
        for (g, c) in self.basis[p].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let label = self.lattice.label(g + 1);
            if c.is_one() {
                if out.is_empty() {
                    out.push_str(&format!("[{label}]"));
                } else {
                    out.push_str(&format!(" + [{label}]"));
                }
            } else if *c == -Int::one() {
                if out.is_empty() {
                    out.push_str(&format!("-[{label}]"));
                } else {
                    out.push_str(&format!(" - [{label}]"));
                }
            } else if c.is_positive() {
                out.push_str(&format!(" + {c}·[{label}]"));
            } else {
                out.push_str(&format!(" - {}·[{label}]", c.abs()));
            }
        }
        out
    }
}

/// Freeness certificate for a motive module.
#[derive(Debug, Clone)]
pub struct FreenessReport {
    pub rank: usize,
    pub snf_diag: Vec<Int>,
    pub torsion_free: bool,
}

/// Ring certificate: the table on the point basis plus the unit, if any.
#[derive(Debug, Clone)]
pub struct RingReport {
    pub table: Vec<Vec<Vec<Int>>>,
    pub unit: Option<Vec<Int>>,
}

/// A candidate valuation into a finitely generated abelian group: one
/// coordinate vector per lattice element.
#[derive(Debug, Clone)]
pub struct ValuationData {
    pub target: FgAbGroup,
    pub values: Vec<Vec<Int>>,
}

/// Check `v(0) = 0` and modularity on all pairs.
pub fn is_valuation(lattice: &FinDistLattice, v: &ValuationData) -> bool {
    if v.values.len() != lattice.len() {
        return false;
    }
    if v.values
        .iter()
        .any(|coords| coords.len() != v.target.dims())
    {
        return false;
    }
    if !v.target.is_zero_element(&v.values[lattice.bottom()]) {
        return false;
    }
    for a in 0..lattice.len() {
        for b in a..lattice.len() {
            let lhs = v.target.add(&v.values[a], &v.values[b]);
            let rhs = v
                .target
                .add(&v.values[lattice.join(a, b)], &v.values[lattice.meet(a, b)]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// The unique homomorphism `h` with `h . mu_univ = v`, as a matrix from
/// point-basis coordinates to target coordinates. Solved on the free
/// basis by Moebius inversion and certified by reproducing `v` on every
/// element.
pub fn factor_valuation(
    module: &MotiveModule,
    v: &ValuationData,
) -> Result<Vec<Vec<Int>>, MotiveError> {
    let lattice = module.lattice();
    if !is_valuation(lattice, v) {
        return Err(MotiveError::NotAValuation(
            "modularity or v(0) = 0 fails".into(),
        ));
    }
    let mu_irr = moebius_table(lattice.irr());
    // h(b_p) = sum_{q <= p} mu(q, p) v(q↓)
    let mut columns: Vec<Vec<Int>> = Vec::with_capacity(module.point_count());
    for p in 0..module.point_count() {
        let mut acc = v.target.zero_element();
        for q in lattice.irr().down_bits(p).iter() {
            let coeff = &mu_irr[&(q, p)];
            let term = v.target.scale(coeff, &v.values[module.point_elements()[q]]);
            acc = v.target.add(&acc, &term);
        }
        columns.push(acc);
    }
    // certificate: h reproduces v on every element
    for e in 0..lattice.len() {
        let mut acc = v.target.zero_element();
        for (p, coeff) in module.mu(e).iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let term = v.target.scale(coeff, &columns[p]);
            acc = v.target.add(&acc, &term);
        }
        if !v.target.eq_elements(&acc, &v.values[e]) {
            return Err(MotiveError::NotAValuation(format!(
                "factored homomorphism does not reproduce the value at [{}]",
                lattice.label(e)
            )));
        }
    }
    Ok(columns)
}

/// The matrix of `M(f)` on the chosen point bases, induced by
/// `[U] -> [f(U)]`.
pub fn motive_hom(
    source: &MotiveModule,
    target: &MotiveModule,
    f: &LatticeHom,
) -> Result<Mat<Int>, MotiveError> {
    assert_eq!(
        f.source().elements(),
        source.lattice().elements(),
        "module/hom source mismatch"
    );
    assert_eq!(
        f.target().elements(),
        target.lattice().elements(),
        "module/hom target mismatch"
    );
    if !f.check().ok() {
        return Err(MotiveError::NotAHom);
    }
    let mu_irr = moebius_table(source.lattice().irr());
    let mut out: Mat<Int> = Mat::zero(target.point_count(), source.point_count());
    for p in 0..source.point_count() {
        for q in source.lattice().irr().down_bits(p).iter() {
            let coeff = &mu_irr[&(q, p)];
            if coeff.is_zero() {
                continue;
            }
            let image = f.apply(source.point_elements()[q]);
            for (slot, x) in target.mu(image).iter().enumerate() {
                out[(slot, p)] += coeff * x;
            }
        }
    }
    Ok(out)
}

/// Splitting certificate for adjoining a top element.
#[derive(Debug, Clone)]
pub struct SplitReport {
    pub rank_base: usize,
    pub rank_extended: usize,
    /// `M(inclusion)`, a (rank+1) x rank matrix.
    pub inclusion: Mat<Int>,
    /// `M(section)`: the new summand.
    pub section: Mat<Int>,
    /// `M(retraction)`.
    pub retraction: Mat<Int>,
}

/// Verify `M(D∞) = M(D) + Z` through explicit matrices: the retraction
/// composed with the section is the identity, the retraction kills the
/// included summand, and inclusion and section together form a unimodular
/// square matrix.
pub fn split_top(lattice: &FinDistLattice) -> Result<SplitReport, MotiveError> {
    let ext = lattice.add_top();
    let base = MotiveModule::new(lattice)?;
    let extended = MotiveModule::new(&ext.extended)?;
    let two = MotiveModule::new(&FinDistLattice::two())?;

    if extended.rank() != base.rank() + 1 {
        return Err(MotiveError::SplitFailure(format!(
            "rank {} does not exceed rank {} by one",
            extended.rank(),
            base.rank()
        )));
    }
    let inclusion = motive_hom(&base, &extended, &ext.inclusion)?;
    let section = motive_hom(&two, &extended, &ext.section)?;
    let retraction = motive_hom(&extended, &two, &ext.retraction)?;

    let composite = retraction.mul(&section);
    if composite != Mat::identity(1) {
        return Err(MotiveError::SplitFailure(
            "retraction . section is not the identity".into(),
        ));
    }
    let killed = retraction.mul(&inclusion);
    if !killed.is_zero() {
        return Err(MotiveError::SplitFailure(
            "retraction does not kill the included summand".into(),
        ));
    }
    let n = extended.rank();
    let glued: Mat<Int> = Mat::from_fn(n, n, |i, j| {
        if j < base.rank() {
            inclusion[(i, j)].clone()
        } else {
            section[(i, 0)].clone()
        }
    });
    if !glued.is_unimodular() {
        return Err(MotiveError::SplitFailure(
            "inclusion and section do not span unimodularly".into(),
        ));
    }
    Ok(SplitReport {
        rank_base: base.rank(),
        rank_extended: extended.rank(),
        inclusion,
        section,
        retraction,
    })
}

/// Booleanization certificate.
#[derive(Debug, Clone)]
pub struct BooleanizationReport {
    pub matrix: Mat<Int>,
    pub det: Int,
    pub boolean_module: MotiveModule,
}

/// Verify that the canonical hom into the Booleanization induces an
/// integral isomorphism of motive modules.
pub fn booleanization_iso(lattice: &FinDistLattice) -> Result<BooleanizationReport, MotiveError> {
    let (algebra, hom) = lattice.booleanize()?;
    let source = MotiveModule::new(lattice)?;
    let target = MotiveModule::new(algebra.lattice())?;
    let matrix = motive_hom(&source, &target, &hom)?;
    if matrix.nrows() != matrix.ncols() {
        return Err(MotiveError::NotIso {
            det: "non-square".into(),
        });
    }
    let det = matrix.det();
    if !det.abs().is_one() {
        return Err(MotiveError::NotIso {
            det: det.to_string(),
        });
    }
    Ok(BooleanizationReport {
        matrix,
        det,
        boolean_module: target,
    })
}

/// JSON report for a motive module.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MotiveReportDoc {
    #[serde(rename = "schemaVersion", default = "default_schema_version")]
    pub schema_version: u32,
    pub rank: usize,
    /// Signed combinations of element classes, one per basis vector.
    pub basis: Vec<String>,
    #[serde(rename = "muUniv")]
    pub mu_univ: BTreeMap<String, Vec<i64>>,
    #[serde(rename = "ringTable")]
    pub ring_table: Vec<Vec<Vec<i64>>>,
    #[serde(rename = "snfDiag")]
    pub snf_diag: Vec<i64>,
}

impl MotiveReportDoc {
    pub fn from_module(m: &MotiveModule) -> MotiveReportDoc {
        let small = |x: &Int| -> i64 { i64::try_from(x).expect("report coordinate fits in i64") };
        MotiveReportDoc {
            schema_version: default_schema_version(),
            rank: m.rank(),
            basis: (0..m.point_count())
                .map(|p| m.basis_combo_string(p))
                .collect(),
            mu_univ: (0..m.lattice().len())
                .map(|e| {
                    (
                        m.lattice().label(e).to_string(),
                        m.mu(e).iter().map(small).collect(),
                    )
                })
                .collect(),
            ring_table: m
                .ring_table()
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(small).collect()).collect())
                .collect(),
            snf_diag: m.snf().diag.iter().map(small).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::tests::{diamond, three_chain};
    use crate::{Budget, Poset};

    fn module(lattice: &FinDistLattice) -> MotiveModule {
        MotiveModule::new(lattice).unwrap()
    }

    #[test]
    fn presentation_of_two_has_no_relations() {
        let p = motives_presentation(&FinDistLattice::two());
        assert_eq!(p.generators, 1);
        assert_eq!(p.relations.nrows(), 0);
        assert_eq!(module(&FinDistLattice::two()).rank(), 1);
    }

    #[test]
    fn presentation_of_diamond() {
        let d = diamond();
        let p = motives_presentation(&d);
        assert_eq!(p.generators, 3);
        assert_eq!(p.relations.nrows(), 1, "one incomparable pair");
        let m = module(&d);
        assert_eq!(m.rank(), 2);
        // [1] = [u] + [v] on the point basis
        assert_eq!(m.mu(3), &[Int::from(1), Int::from(1)]);
        assert_eq!(m.mu(1), &[Int::from(1), Int::from(0)]);
        assert_eq!(m.mu(2), &[Int::from(0), Int::from(1)]);
    }

    #[test]
    fn three_chain_is_free_on_both_generators() {
        let c = three_chain();
        let p = motives_presentation(&c);
        assert_eq!(p.generators, 2);
        assert_eq!(p.relations.nrows(), 0, "no incomparable pairs");
        let m = module(&c);
        assert_eq!(m.rank(), 2);
        // [a] -> (1,0), [1] -> (1,1)
        assert_eq!(m.mu(1), &[Int::from(1), Int::from(0)]);
        assert_eq!(m.mu(2), &[Int::from(1), Int::from(1)]);
        // basis: [a] and [1] - [a]
        assert_eq!(m.basis_vector(0), &[Int::from(1), Int::from(0)]);
        assert_eq!(m.basis_vector(1), &[Int::from(-1), Int::from(1)]);
    }

    #[test]
    fn certify_free_examples() {
        for (lattice, rank) in [
            (diamond(), 2),
            (FinDistLattice::two(), 1),
            // 2-antichain plus an isolated point: three points in total
            (
                FinDistLattice::birkhoff_opens(&Poset::antichain(3), &Budget::default()).unwrap(),
                3,
            ),
        ] {
            let m = module(&lattice);
            let report = m.certify_free();
            assert!(report.torsion_free);
            assert_eq!(report.rank, rank);
        }
    }

    #[test]
    fn point_iso_is_unimodular() {
        for lattice in [FinDistLattice::two(), three_chain(), diamond()] {
            let m = module(&lattice);
            assert!(m.point_iso().is_unimodular());
        }
    }

    #[test]
    fn split_top_examples() {
        let r = split_top(&FinDistLattice::two()).unwrap();
        assert_eq!((r.rank_base, r.rank_extended), (1, 2));
        let r = split_top(&FinDistLattice::trivial()).unwrap();
        assert_eq!((r.rank_base, r.rank_extended), (0, 1));
        let r = split_top(&diamond()).unwrap();
        assert_eq!((r.rank_base, r.rank_extended), (2, 3));
    }

    #[test]
    fn motive_hom_identity_and_collapse() {
        let d = diamond();
        let m = module(&d);
        let id = motive_hom(&m, &m, &LatticeHom::identity(&d)).unwrap();
        assert_eq!(id, Mat::identity(2));

        // collapse v to 0, u to 1, 1 to 1
        let two = FinDistLattice::two();
        let m2 = module(&two);
        let collapse = LatticeHom::new(d.clone(), two, vec![0, 1, 0, 1], true);
        let mat = motive_hom(&m, &m2, &collapse).unwrap();
        assert_eq!(mat, Mat::from_rows(vec![vec![Int::from(1), Int::from(0)]]));
    }

    #[test]
    fn motive_hom_requires_a_hom() {
        let d = diamond();
        let two = FinDistLattice::two();
        let broken = LatticeHom::new(d.clone(), two.clone(), vec![0, 1, 1, 0], false);
        let err = motive_hom(&module(&d), &module(&two), &broken).unwrap_err();
        assert!(matches!(err, MotiveError::NotAHom));
    }

    #[test]
    fn motive_hom_is_functorial_on_a_composite() {
        let d = diamond();
        let two = FinDistLattice::two();
        let md = module(&d);
        let m2 = module(&two);
        let collapse = LatticeHom::new(d.clone(), two.clone(), vec![0, 1, 0, 1], true);
        // embed 2 into the diamond along v
        let embed = LatticeHom::new(two.clone(), d.clone(), vec![0, 2], false);
        let composite = LatticeHom::compose(&collapse, &embed);
        let lhs = motive_hom(&m2, &m2, &composite).unwrap();
        let rhs = motive_hom(&md, &m2, &collapse)
            .unwrap()
            .mul(&motive_hom(&m2, &md, &embed).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn booleanization_iso_examples() {
        let r = booleanization_iso(&three_chain()).unwrap();
        assert_eq!(r.matrix.nrows(), 2);
        assert!(r.det.abs().is_one());

        // Boolean input: the induced matrix is the identity on the nose
        let r = booleanization_iso(&diamond()).unwrap();
        assert_eq!(r.matrix, Mat::identity(2));

        let big = FinDistLattice::birkhoff_opens(&Poset::chain(3), &Budget::default()).unwrap();
        let r = booleanization_iso(&big).unwrap();
        assert_eq!(r.matrix.nrows(), 3);
    }

    #[test]
    fn valuation_checks() {
        let d = diamond();
        let m = module(&d);
        // mu_univ itself is a valuation into Z^2
        let v = ValuationData {
            target: FgAbGroup::free(2),
            values: (0..d.len()).map(|e| m.mu(e).to_vec()).collect(),
        };
        assert!(is_valuation(&d, &v));

        // counting valuation: u, v -> 1, 1 -> 2
        let counting = ValuationData {
            target: FgAbGroup::free(1),
            values: vec![
                vec![Int::zero()],
                vec![Int::one()],
                vec![Int::one()],
                vec![Int::from(2)],
            ],
        };
        assert!(is_valuation(&d, &counting));

        // constant 1 on nonzero elements is not modular
        let broken = ValuationData {
            target: FgAbGroup::free(1),
            values: vec![
                vec![Int::zero()],
                vec![Int::one()],
                vec![Int::one()],
                vec![Int::one()],
            ],
        };
        assert!(!is_valuation(&d, &broken));
    }

    #[test]
    fn factor_valuation_examples() {
        let d = diamond();
        let m = module(&d);
        let counting = ValuationData {
            target: FgAbGroup::free(1),
            values: vec![
                vec![Int::zero()],
                vec![Int::one()],
                vec![Int::one()],
                vec![Int::from(2)],
            ],
        };
        let h = factor_valuation(&m, &counting).unwrap();
        assert_eq!(
            h,
            vec![vec![Int::one()], vec![Int::one()]],
            "h = (1, 1) on the point basis"
        );

        let zero = ValuationData {
            target: FgAbGroup::free(1),
            values: vec![vec![Int::zero()]; d.len()],
        };
        assert_eq!(
            factor_valuation(&m, &zero).unwrap(),
            vec![vec![Int::zero()]; 2]
        );

        // factoring mu_univ itself gives the identity matrix
        let v = ValuationData {
            target: FgAbGroup::free(2),
            values: (0..d.len()).map(|e| m.mu(e).to_vec()).collect(),
        };
        let h = factor_valuation(&m, &v).unwrap();
        assert_eq!(h[0], vec![Int::from(1), Int::from(0)]);
        assert_eq!(h[1], vec![Int::from(0), Int::from(1)]);
    }

    #[test]
    fn factor_valuation_rejects_non_valuations() {
        let d = diamond();
        let m = module(&d);
        let broken = ValuationData {
            target: FgAbGroup::free(1),
            values: vec![
                vec![Int::zero()],
                vec![Int::one()],
                vec![Int::one()],
                vec![Int::one()],
            ],
        };
        assert!(matches!(
            factor_valuation(&m, &broken),
            Err(MotiveError::NotAValuation(_))
        ));
    }

    #[test]
    fn ring_structure_examples() {
        let d = diamond();
        let m = module(&d);
        let report = m.ring_report().unwrap();
        // u.u = u, v.v = v, u.v = 0
        assert_eq!(report.table[0][0], vec![Int::from(1), Int::from(0)]);
        assert_eq!(report.table[1][1], vec![Int::from(0), Int::from(1)]);
        assert_eq!(report.table[0][1], vec![Int::from(0), Int::from(0)]);
        assert_eq!(report.unit, Some(vec![Int::from(1), Int::from(1)]));

        // two: M = Z with [1] the unit
        let m = module(&FinDistLattice::two());
        let report = m.ring_report().unwrap();
        assert_eq!(report.unit, Some(vec![Int::from(1)]));

        // three-chain: [a] . [1] = [a]
        let c = three_chain();
        let m = module(&c);
        assert_eq!(m.product(m.mu(1), m.mu(2)), m.mu(1).to_vec());
        m.ring_report().unwrap();
    }

    #[test]
    fn report_doc_serializes() {
        let m = module(&diamond());
        let doc = MotiveReportDoc::from_module(&m);
        assert_eq!(doc.rank, 2);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        assert!(text.contains("\"rank\": 2"));
    }
}
