//! Rectilinear grid polytopes and their scissors-congruence modules.
//!
//! Geometry is restricted to axis-aligned boxes between exact rational
//! cuts, so that "intersection up to measure zero" is literally cell-set
//! intersection: two polytopes that share only faces have disjoint cell
//! sets. No floating point appears anywhere; cuts are arbitrary-precision
//! rationals.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{Bits, MAX_UNIVERSE};
use crate::budget::Budget;
use crate::doc::{default_schema_version, validate_schema_version, DocError};
use crate::lattice::{FinDistLattice, LatticeError};
use crate::motives::{MotiveError, MotiveModule};
use crate::order::Poset;
use crate::Rat;

#[derive(Debug, Error, Clone)]
pub enum ScissorsError {
    #[error("{cells} cells exceed the cap of {cap} for full lattice materialization")]
    TooLarge { cells: usize, cap: usize },
    #[error("bad cut coordinates: {0}")]
    BadCuts(String),
    #[error("cell index {index} out of range for {count} cells")]
    BadCell { index: usize, count: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Motive(#[from] MotiveError),
}

/// Cap on cells for materializing the full Boolean lattice of cell sets.
pub const FULL_LATTICE_CELL_CAP: usize = 16;

/// A one- or two-dimensional rectilinear grid: sorted exact cuts per
/// axis; the cells are the boxes between consecutive cuts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridGeometry {
    dimension: usize,
    cuts: Vec<Vec<Rat>>,
}

impl GridGeometry {
    pub fn new(dimension: usize, cuts: Vec<Vec<Rat>>) -> Result<GridGeometry, ScissorsError> {
        if dimension != 1 && dimension != 2 {
            return Err(ScissorsError::BadCuts(format!(
                "dimension {dimension} is not 1 or 2"
            )));
        }
        if cuts.len() != dimension {
            return Err(ScissorsError::BadCuts(format!(
                "{} cut lists for dimension {dimension}",
                cuts.len()
            )));
        }
        for axis in &cuts {
            if axis.len() < 2 {
                return Err(ScissorsError::BadCuts(
                    "each axis needs at least two cuts".into(),
                ));
            }
            if !axis.windows(2).all(|w| w[0] < w[1]) {
                return Err(ScissorsError::BadCuts(
                    "cuts must be strictly increasing".into(),
                ));
            }
        }
        let geometry = GridGeometry { dimension, cuts };
        if geometry.cell_count() > MAX_UNIVERSE {
            return Err(ScissorsError::TooLarge {
                cells: geometry.cell_count(),
                cap: MAX_UNIVERSE,
            });
        }
        Ok(geometry)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn cuts(&self) -> &[Vec<Rat>] {
        &self.cuts
    }

    pub fn cells_per_axis(&self, axis: usize) -> usize {
        self.cuts[axis].len() - 1
    }

    pub fn cell_count(&self) -> usize {
        (0..self.dimension)
            .map(|a| self.cells_per_axis(a))
            .product()
    }

    /// Cells are indexed row-major over axis indices.
    pub fn cell_label(&self, index: usize) -> String {
        match self.dimension {
            1 => format!("c{index}"),
            _ => {
                let per_row = self.cells_per_axis(1);
                format!("c{}_{}", index / per_row, index % per_row)
            }
        }
    }

    pub fn cell_labels(&self) -> Vec<String> {
        (0..self.cell_count()).map(|i| self.cell_label(i)).collect()
    }

    /// The box of a cell: per axis, the closed interval between its cuts.
    pub fn cell_box(&self, index: usize) -> Vec<(Rat, Rat)> {
        match self.dimension {
            1 => vec![(self.cuts[0][index].clone(), self.cuts[0][index + 1].clone())],
            _ => {
                let per_row = self.cells_per_axis(1);
                let (i, j) = (index / per_row, index % per_row);
                vec![
                    (self.cuts[0][i].clone(), self.cuts[0][i + 1].clone()),
                    (self.cuts[1][j].clone(), self.cuts[1][j + 1].clone()),
                ]
            }
        }
    }

    pub fn polytope(&self, cells: &[usize]) -> Result<GridPolytope, ScissorsError> {
        let count = self.cell_count();
        let mut bits = Bits::EMPTY;
        for &index in cells {
            if index >= count {
                return Err(ScissorsError::BadCell { index, count });
            }
            bits.insert(index);
        }
        Ok(GridPolytope { cells: bits })
    }

    /// Label of a cell set in brace notation.
    pub fn set_label(&self, bits: Bits) -> String {
        let names: Vec<String> = bits.iter().map(|i| self.cell_label(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// A union of grid cells. Join is union and meet is intersection of cell
/// sets, which realizes intersection up to measure zero exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GridPolytope {
    pub cells: Bits,
}

impl GridPolytope {
    pub fn is_disjoint(self, other: GridPolytope) -> bool {
        (self.cells & other.cells).is_empty()
    }

    pub fn union(self, other: GridPolytope) -> GridPolytope {
        GridPolytope {
            cells: self.cells | other.cells,
        }
    }
}

/// The Boolean lattice of all cell sets of a grid.
pub fn grid_lattice(geometry: &GridGeometry) -> Result<FinDistLattice, ScissorsError> {
    let cells = geometry.cell_count();
    if cells > FULL_LATTICE_CELL_CAP {
        return Err(ScissorsError::TooLarge {
            cells,
            cap: FULL_LATTICE_CELL_CAP,
        });
    }
    let poset = Poset::antichain_named(geometry.cell_labels());
    Ok(FinDistLattice::birkhoff_opens(&poset, &Budget::default())?)
}

/// The sublattice generated by the given polytopes: closure of the
/// generators and the empty polytope under union and intersection,
/// returned in canonical representation with cell-set labels. Lower
/// bounded: the top is not part of the structure.
pub fn generated_sublattice(
    geometry: &GridGeometry,
    generators: &[GridPolytope],
) -> Result<FinDistLattice, ScissorsError> {
    let mut family: Vec<Bits> = vec![Bits::EMPTY];
    for g in generators {
        if !family.contains(&g.cells) {
            family.push(g.cells);
        }
    }
    loop {
        let mut grew = false;
        let snapshot = family.clone();
        for (i, &a) in snapshot.iter().enumerate() {
            for &b in &snapshot[i + 1..] {
                for candidate in [a | b, a & b] {
                    if !family.contains(&candidate) {
                        family.push(candidate);
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    family.sort();
    let (lattice, _) =
        FinDistLattice::from_closed_family(&family, |b| geometry.set_label(b), false)?;
    Ok(lattice)
}

/// Number of atoms of the cell partition generated by the polytopes: two
/// cells are equivalent when they lie in exactly the same generators, and
/// only cells covered by some generator count. An independent oracle for
/// the rank of the generated sublattice's module.
pub fn generated_atoms(generators: &[GridPolytope]) -> usize {
    let covered = generators.iter().fold(Bits::EMPTY, |acc, g| acc | g.cells);
    let mut types: Vec<Vec<bool>> = Vec::new();
    for cell in covered.iter() {
        let ty: Vec<bool> = generators.iter().map(|g| g.cells.contains(cell)).collect();
        if !types.contains(&ty) {
            types.push(ty);
        }
    }
    types.len()
}

/// Rank report for the motive module of a grid lattice: the number of
/// wedge summands at the finite stage, with the basis printed as signed
/// cell-set combinations.
#[derive(Debug, Clone)]
pub struct PolytopeReport {
    pub rank: usize,
    pub basis: Vec<String>,
}

/// The motive module of a grid-polytope lattice with its rank report.
pub fn polytope_module(
    lattice: &FinDistLattice,
) -> Result<(MotiveModule, PolytopeReport), ScissorsError> {
    let module = MotiveModule::new(lattice)?;
    let report = PolytopeReport {
        rank: module.rank(),
        basis: (0..module.point_count())
            .map(|p| module.basis_combo_string(p))
            .collect(),
    };
    Ok((module, report))
}

/// JSON document for a grid geometry, with optional generator polytopes
/// given as cell-index lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeometryDoc {
    #[serde(rename = "schemaVersion", default = "default_schema_version")]
    pub schema_version: u32,
    pub dimension: usize,
    /// Rationals as "p/q" or integer strings.
    pub cuts: Vec<Vec<String>>,
    #[serde(default)]
    pub generators: Option<Vec<Vec<usize>>>,
}

impl GeometryDoc {
    pub fn into_geometry(self) -> Result<(GridGeometry, Vec<GridPolytope>), DocError> {
        validate_schema_version(self.schema_version)?;
        let cuts = self
            .cuts
            .iter()
            .map(|axis| {
                axis.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let geometry = GridGeometry::new(self.dimension, cuts)
            .map_err(|e| DocError::Invalid(e.to_string()))?;
        let generators = self
            .generators
            .unwrap_or_default()
            .iter()
            .map(|cells| {
                geometry
                    .polytope(cells)
                    .map_err(|e| DocError::Invalid(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((geometry, generators))
    }
}

pub fn parse_rational(text: &str) -> Result<Rat, DocError> {
    text.trim()
        .parse::<Rat>()
        .map_err(|e| DocError::Invalid(format!("bad rational {text:?}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn interval_grid(cells: usize) -> GridGeometry {
        GridGeometry::new(1, vec![(0..=cells as i64).map(rat).collect()]).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(GridGeometry::new(3, vec![]).is_err());
        assert!(GridGeometry::new(1, vec![vec![rat(0)]]).is_err());
        assert!(GridGeometry::new(1, vec![vec![rat(1), rat(0)]]).is_err());
        let g =
            GridGeometry::new(2, vec![vec![rat(0), rat(1), rat(2)], vec![rat(0), rat(1)]]).unwrap();
        assert_eq!(g.cell_count(), 2);
        assert_eq!(g.cell_label(1), "c1_0");
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/4").unwrap(), Rat::new(3.into(), 4.into()));
        assert_eq!(parse_rational("2").unwrap(), rat(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn full_grid_lattices() {
        // two cells make a diamond
        let two_cells = interval_grid(2);
        let lattice = grid_lattice(&two_cells).unwrap();
        assert_eq!(lattice.len(), 4);

        // one cell makes the two-element lattice
        let one_cell = interval_grid(1);
        assert_eq!(grid_lattice(&one_cell).unwrap().len(), 2);

        // a 2x1 plane grid also has two cells
        let plane =
            GridGeometry::new(2, vec![vec![rat(0), rat(1), rat(2)], vec![rat(0), rat(1)]]).unwrap();
        assert_eq!(grid_lattice(&plane).unwrap().len(), 4);
    }

    #[test]
    fn full_lattice_cap() {
        let wide = GridGeometry::new(1, vec![(0..=17).map(rat).collect()]).unwrap();
        assert!(matches!(
            grid_lattice(&wide),
            Err(ScissorsError::TooLarge { .. })
        ));
    }

    #[test]
    fn generated_sublattice_examples() {
        let g = interval_grid(3);
        // one cell: a two-element lattice
        let single = generated_sublattice(&g, &[g.polytope(&[0]).unwrap()]).unwrap();
        assert_eq!(single.len(), 2);

        // overlapping intervals c0c1 and c1c2
        let a = g.polytope(&[0, 1]).unwrap();
        let b = g.polytope(&[1, 2]).unwrap();
        let overlap = generated_sublattice(&g, &[a, b]).unwrap();
        assert_eq!(overlap.len(), 5, "empty, c1, c0c1, c1c2, c0c1c2");
        let labels: Vec<&str> = overlap.labels().iter().map(|s| s.as_str()).collect();
        assert!(labels.contains(&"{c1}"));
        assert!(labels.contains(&"{c0,c1,c2}"));

        // disjoint generators
        let disjoint =
            generated_sublattice(&g, &[g.polytope(&[0]).unwrap(), g.polytope(&[2]).unwrap()])
                .unwrap();
        assert_eq!(disjoint.len(), 4);
    }

    #[test]
    fn polytope_module_ranks() {
        let g = interval_grid(3);
        let a = g.polytope(&[0, 1]).unwrap();
        let b = g.polytope(&[1, 2]).unwrap();
        let overlap = generated_sublattice(&g, &[a, b]).unwrap();
        let (module, report) = polytope_module(&overlap).unwrap();
        assert_eq!(report.rank, 3);
        assert_eq!(generated_atoms(&[a, b]), 3);
        // basis is the point basis: [{c1}], [{c0,c1}] - [{c1}], [{c1,c2}] - [{c1}]
        assert!(report.basis.contains(&"[{c1}]".to_string()));
        assert!(report
            .basis
            .iter()
            .any(|s| s.contains("[{c0,c1}]") && s.contains("-[{c1}]")));
        assert_eq!(module.rank(), 3);

        let single = generated_sublattice(&g, &[g.polytope(&[1]).unwrap()]).unwrap();
        assert_eq!(polytope_module(&single).unwrap().1.rank, 1);

        let full = grid_lattice(&interval_grid(3)).unwrap();
        assert_eq!(polytope_module(&full).unwrap().1.rank, 3);
    }

    #[test]
    fn rank_matches_generated_atoms() {
        let g = interval_grid(4);
        let cases: Vec<Vec<GridPolytope>> = vec![
            vec![g.polytope(&[0, 1]).unwrap(), g.polytope(&[1, 2]).unwrap()],
            vec![g.polytope(&[0]).unwrap(), g.polytope(&[2, 3]).unwrap()],
            vec![
                g.polytope(&[0, 1, 2]).unwrap(),
                g.polytope(&[1, 2, 3]).unwrap(),
                g.polytope(&[2]).unwrap(),
            ],
        ];
        for gens in cases {
            let lattice = generated_sublattice(&g, &gens).unwrap();
            let (module, _) = polytope_module(&lattice).unwrap();
            assert_eq!(module.rank(), generated_atoms(&gens));
            assert_eq!(module.rank(), lattice.irr().len());
        }
    }

    #[test]
    fn disjoint_union_relation_holds() {
        let g = interval_grid(4);
        let lattice = grid_lattice(&g).unwrap();
        let module = MotiveModule::new(&lattice).unwrap();
        let p = g.polytope(&[0, 2]).unwrap();
        let q = g.polytope(&[1, 3]).unwrap();
        assert!(p.is_disjoint(q));
        let union = p.union(q);
        let index = |poly: GridPolytope| lattice.index_of_bits(poly.cells).unwrap();
        let lhs = module.mu(index(union)).to_vec();
        let sum: Vec<crate::Int> = module
            .mu(index(p))
            .iter()
            .zip(module.mu(index(q)))
            .map(|(a, b)| a + b)
            .collect();
        assert_eq!(lhs, sum);
    }

    #[test]
    fn generated_sublattice_is_monotone_and_idempotent() {
        let g = interval_grid(3);
        let a = g.polytope(&[0, 1]).unwrap();
        let b = g.polytope(&[1, 2]).unwrap();
        let small = generated_sublattice(&g, &[a]).unwrap();
        let large = generated_sublattice(&g, &[a, b]).unwrap();
        assert!(small.len() <= large.len());
        // regenerating from all elements of the closure changes nothing
        let elements: Vec<GridPolytope> = (0..large.len())
            .map(|e| {
                // rebuild the cell set from the label structure: elements of
                // a generated sublattice are unions of irreducible cell sets
                let bits = large.element_bits(e);
                let cells =
                    bits.iter()
                        .map(|p| large.irr().name(p))
                        .fold(Bits::EMPTY, |acc, name| {
                            let text = name.trim_matches(['{', '}']);
                            let mut bits = Bits::EMPTY;
                            if !text.is_empty() {
                                for part in text.split(',') {
                                    let idx = (0..g.cell_count())
                                        .find(|&i| g.cell_label(i) == part)
                                        .unwrap();
                                    bits.insert(idx);
                                }
                            }
                            acc | bits
                        });
                GridPolytope { cells }
            })
            .collect();
        let regenerated = generated_sublattice(&g, &elements).unwrap();
        assert_eq!(regenerated.len(), large.len());
    }

    #[test]
    fn geometry_doc_parses() {
        let text = r#"{
            "dimension": 1,
            "cuts": [["0", "1/2", "1", "2"]],
            "generators": [[0, 1], [1, 2]]
        }"#;
        let doc: GeometryDoc = serde_json::from_str(text).unwrap();
        let (geometry, gens) = doc.into_geometry().unwrap();
        assert_eq!(geometry.cell_count(), 3);
        assert_eq!(gens.len(), 2);
        assert!(!geometry.cell_box(0).first().unwrap().0.is_zero() || true);
    }
}
