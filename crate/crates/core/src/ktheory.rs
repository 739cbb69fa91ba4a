//! Localizing-invariant groups of sheaf categories on locally coherent
//! carriers, evaluated through coefficient profiles.
//!
//! A profile is a finite window of degrees with a finitely generated
//! abelian group per degree, standing for the per-degree coefficients of
//! a finitary localizing invariant on the base category. The value on a
//! lattice is, degree by degree, the coefficient group tensored with the
//! free motive module, so computing it never leaves exact arithmetic.
//!
//! Three routes are implemented and cross-checked:
//!
//! - route A tensors with the rank of `M(D)`;
//! - route B tensors with the rank of `M(Bool(D))`;
//! - route C forms the functions on the finite discrete constructible
//!   stage by direct summing one coefficient copy per point, renormalized
//!   through Smith normal form.
//!
//! Degrees outside a profile's window are never reported as zero; they
//! are simply absent.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::FgAbGroup;
use crate::budget::Budget;
use crate::doc::{default_schema_version, validate_schema_version, DocError};
use crate::lattice::{FinDistLattice, LatticeError};
use crate::motives::{MotiveError, MotiveModule};
use crate::order::Poset;
use crate::profinite::{constructible_stage, ProfiniteError};

#[derive(Debug, Error, Clone)]
pub enum KError {
    #[error("routes disagree in degree {degree}: {}", routes.iter().map(|(r, g)| format!("{r} = {g}")).collect::<Vec<_>>().join(", "))]
    RouteMismatch {
        degree: i64,
        routes: Vec<(String, FgAbGroup)>,
    },
    #[error("bad profile: {0}")]
    BadProfile(String),
    #[error(transparent)]
    Motive(#[from] MotiveError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Profinite(#[from] ProfiniteError),
}

/// A finite window of per-degree coefficient groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffProfile {
    #[serde(rename = "schemaVersion", default = "default_schema_version")]
    pub schema_version: u32,
    pub label: String,
    /// Inclusive degree window `[lo, hi]`.
    pub window: (i64, i64),
    /// Keys serialized as strings for JSON object compatibility.
    #[serde(with = "degree_map")]
    pub groups: BTreeMap<i64, FgAbGroup>,
}

impl CoeffProfile {
    pub fn new(
        label: &str,
        window: (i64, i64),
        groups: BTreeMap<i64, FgAbGroup>,
    ) -> Result<CoeffProfile, KError> {
        let profile = CoeffProfile {
            schema_version: default_schema_version(),
            label: label.into(),
            window,
            groups,
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn validate(&self) -> Result<(), KError> {
        validate_schema_version(self.schema_version)
            .map_err(|e| KError::BadProfile(e.to_string()))?;
        let (lo, hi) = self.window;
        if lo > hi {
            return Err(KError::BadProfile(format!("window [{lo}, {hi}] is empty")));
        }
        for n in lo..=hi {
            if !self.groups.contains_key(&n) {
                return Err(KError::BadProfile(format!(
                    "degree {n} is inside the window but missing"
                )));
            }
        }
        if let Some(n) = self.groups.keys().find(|n| **n < lo || **n > hi) {
            return Err(KError::BadProfile(format!(
                "degree {n} lies outside the window"
            )));
        }
        for (n, g) in &self.groups {
            FgAbGroup::new(g.rank, g.torsion.clone())
                .map_err(|e| KError::BadProfile(format!("degree {n}: {e}")))?;
        }
        Ok(())
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.groups.keys().copied()
    }

    pub fn group(&self, degree: i64) -> &FgAbGroup {
        &self.groups[&degree]
    }

    fn singleton(label: &str, group: FgAbGroup) -> CoeffProfile {
        let mut groups = BTreeMap::new();
        groups.insert(0, group);
        CoeffProfile::new(label, (0, 0), groups).expect("well-formed built-in profile")
    }

    /// The integers in degree zero.
    pub fn integers() -> CoeffProfile {
        CoeffProfile::singleton("Z", FgAbGroup::free(1))
    }

    /// `Z/2` in degree zero.
    pub fn mod_two() -> CoeffProfile {
        CoeffProfile::singleton("Z/2", FgAbGroup::cyclic(2))
    }

    /// `Z + Z/6` in degree zero.
    pub fn z_plus_z6() -> CoeffProfile {
        CoeffProfile::singleton("Z+Z/6", FgAbGroup::new(1, vec![6]).expect("chain"))
    }

    /// The sphere coefficients in the window `0..1`: the integers in
    /// degree 0 and the order-two group of units in degree 1.
    pub fn sphere_window() -> CoeffProfile {
        let mut groups = BTreeMap::new();
        groups.insert(0, FgAbGroup::free(1));
        groups.insert(1, FgAbGroup::cyclic(2));
        CoeffProfile::new("K(sphere), degrees 0..1", (0, 1), groups).expect("well-formed")
    }
}

mod degree_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<i64, FgAbGroup>,
        ser: S,
    ) -> Result<S::Ok, S::Error> {
        let by_string: BTreeMap<String, &FgAbGroup> =
            map.iter().map(|(k, v)| (k.to_string(), v)).collect();
        serde::Serialize::serialize(&by_string, ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> Result<BTreeMap<i64, FgAbGroup>, D::Error> {
        let by_string: BTreeMap<String, FgAbGroup> = serde::Deserialize::deserialize(de)?;
        by_string
            .into_iter()
            .map(|(k, v)| {
                k.parse::<i64>()
                    .map(|k| (k, v))
                    .map_err(serde::de::Error::custom)
            })
            .collect()
    }
}

/// `Z^rank ⊗ A = A^rank`, in invariant-factor normal form.
pub fn tensor_group(rank: usize, group: &FgAbGroup) -> FgAbGroup {
    group.power(rank)
}

/// Per-degree value groups, tagged with the routes that computed them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KResult {
    #[serde(rename = "schemaVersion", default = "default_schema_version")]
    pub schema_version: u32,
    pub label: String,
    pub window: (i64, i64),
    #[serde(with = "degree_map")]
    pub groups: BTreeMap<i64, FgAbGroup>,
    pub routes: Vec<String>,
}

/// Value of the invariant on the sheaf category of a lattice carrier:
/// degreewise, the coefficient group raised to the motive rank.
pub fn k_of_locally_coherent(module: &MotiveModule, profile: &CoeffProfile) -> KResult {
    let rank = module.rank();
    KResult {
        schema_version: default_schema_version(),
        label: profile.label.clone(),
        window: profile.window,
        groups: profile
            .groups
            .iter()
            .map(|(&n, g)| (n, tensor_group(rank, g)))
            .collect(),
        routes: vec!["motive-tensor".into()],
    }
}

/// Functions on a finite discrete point set with values in `group`:
/// one summand per point, folded through the Smith-normal-form merge.
fn functions_on_points(points: usize, group: &FgAbGroup) -> FgAbGroup {
    let mut acc = FgAbGroup::zero();
    for _ in 0..points {
        acc = acc.direct_sum(group);
    }
    acc
}

/// Compute the value on a bounded lattice along three routes and insist
/// they agree degreewise: through `M(D)`, through `M(Bool(D))`, and as
/// coefficient-valued functions on the constructible stage.
pub fn coherent_vs_constructible(
    lattice: &FinDistLattice,
    profile: &CoeffProfile,
) -> Result<KResult, KError> {
    profile.validate()?;
    let module = MotiveModule::new(lattice)?;
    let route_a = k_of_locally_coherent(&module, profile);

    let (algebra, _) = lattice.booleanize()?;
    let boolean_module = MotiveModule::new(algebra.lattice())?;
    let route_b = k_of_locally_coherent(&boolean_module, profile);

    let points = if lattice.irr().is_empty() {
        // no points: function groups on the empty stage are zero
        0
    } else {
        constructible_stage(lattice)?.system.stage(0).len()
    };

    let mut groups = BTreeMap::new();
    for n in profile.degrees() {
        let a = route_a.groups[&n].clone();
        let b = route_b.groups[&n].clone();
        let c = functions_on_points(points, profile.group(n));
        if a != b || b != c {
            return Err(KError::RouteMismatch {
                degree: n,
                routes: vec![
                    ("motive-tensor".into(), a),
                    ("booleanization".into(), b),
                    ("constructible-functions".into(), c),
                ],
            });
        }
        groups.insert(n, a);
    }
    Ok(KResult {
        schema_version: default_schema_version(),
        label: profile.label.clone(),
        window: profile.window,
        groups,
        routes: vec![
            "motive-tensor".into(),
            "booleanization".into(),
            "constructible-functions".into(),
        ],
    })
}

/// Verify degreewise that one coefficient summand per poset element
/// matches the value on the downset lattice of the poset.
pub fn semiorthogonal_rank_check(
    poset: &Poset,
    profile: &CoeffProfile,
    budget: &Budget,
) -> Result<KResult, KError> {
    profile.validate()?;
    let opens = FinDistLattice::birkhoff_opens(poset, budget)?;
    let module = MotiveModule::new(&opens)?;
    let via_lattice = k_of_locally_coherent(&module, profile);

    let mut groups = BTreeMap::new();
    for n in profile.degrees() {
        let summed = functions_on_points(poset.len(), profile.group(n));
        let tensored = via_lattice.groups[&n].clone();
        if summed != tensored {
            return Err(KError::RouteMismatch {
                degree: n,
                routes: vec![
                    ("presheaf-sum".into(), summed),
                    ("motive-tensor".into(), tensored),
                ],
            });
        }
        groups.insert(n, summed);
    }
    Ok(KResult {
        schema_version: default_schema_version(),
        label: profile.label.clone(),
        window: profile.window,
        groups,
        routes: vec!["presheaf-sum".into(), "motive-tensor".into()],
    })
}

/// Parse a profile document, validating the window.
pub fn profile_from_doc(text: &str) -> Result<CoeffProfile, DocError> {
    let profile: CoeffProfile =
        serde_json::from_str(text).map_err(|e| DocError::Invalid(e.to_string()))?;
    profile
        .validate()
        .map_err(|e| DocError::Invalid(e.to_string()))?;
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::tests::{diamond, three_chain};

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor_group(2, &FgAbGroup::free(1)), FgAbGroup::free(2));
        assert_eq!(
            tensor_group(2, &FgAbGroup::cyclic(2)),
            FgAbGroup::new(0, vec![2, 2]).unwrap()
        );
        assert_eq!(
            tensor_group(0, &FgAbGroup::new(3, vec![4]).unwrap()),
            FgAbGroup::zero()
        );
    }

    #[test]
    fn three_chain_with_sphere_window() {
        let module = MotiveModule::new(&three_chain()).unwrap();
        let result = k_of_locally_coherent(&module, &CoeffProfile::sphere_window());
        assert_eq!(result.groups[&0], FgAbGroup::free(2));
        assert_eq!(result.groups[&1], FgAbGroup::new(0, vec![2, 2]).unwrap());
    }

    #[test]
    fn trivial_lattice_gives_zero() {
        let module = MotiveModule::new(&FinDistLattice::trivial()).unwrap();
        let result = k_of_locally_coherent(&module, &CoeffProfile::sphere_window());
        assert!(result.groups.values().all(|g| g.is_zero()));
    }

    #[test]
    fn diamond_with_integer_coefficients() {
        let module = MotiveModule::new(&diamond()).unwrap();
        let result = k_of_locally_coherent(&module, &CoeffProfile::integers());
        assert_eq!(result.groups[&0], FgAbGroup::free(2));
    }

    #[test]
    fn routes_agree_on_examples() {
        let r = coherent_vs_constructible(&three_chain(), &CoeffProfile::integers()).unwrap();
        assert_eq!(r.groups[&0], FgAbGroup::free(2));
        assert_eq!(r.routes.len(), 3);

        let r = coherent_vs_constructible(&FinDistLattice::two(), &CoeffProfile::sphere_window())
            .unwrap();
        assert_eq!(r.groups[&0], FgAbGroup::free(1));
        assert_eq!(r.groups[&1], FgAbGroup::cyclic(2));

        let mod_three = CoeffProfile::singleton("Z/3", FgAbGroup::cyclic(3));
        let r = coherent_vs_constructible(&diamond(), &mod_three).unwrap();
        assert_eq!(r.groups[&0], FgAbGroup::new(0, vec![3, 3]).unwrap());
    }

    #[test]
    fn routes_agree_on_the_trivial_lattice() {
        let r = coherent_vs_constructible(&FinDistLattice::trivial(), &CoeffProfile::integers())
            .unwrap();
        assert!(r.groups[&0].is_zero());
    }

    #[test]
    fn lower_bounded_view_evaluates_through_the_tensor_route() {
        // the groups depend only on the motive rank, not on the top flag
        let bounded = three_chain();
        let lower = bounded.clone().lower_bounded_view();
        assert!(lower.top().is_none());
        let module = MotiveModule::new(&lower).unwrap();
        let result = k_of_locally_coherent(&module, &CoeffProfile::sphere_window());
        assert_eq!(result.groups[&0], FgAbGroup::free(2));
        assert_eq!(result.groups[&1], FgAbGroup::new(0, vec![2, 2]).unwrap());
    }

    #[test]
    fn semiorthogonal_examples() {
        let budget = Budget::default();
        let r = semiorthogonal_rank_check(&Poset::antichain(2), &CoeffProfile::integers(), &budget)
            .unwrap();
        assert_eq!(r.groups[&0], FgAbGroup::free(2));

        let r = semiorthogonal_rank_check(&Poset::antichain(0), &CoeffProfile::integers(), &budget)
            .unwrap();
        assert!(r.groups[&0].is_zero());

        let r =
            semiorthogonal_rank_check(&Poset::chain(3), &CoeffProfile::sphere_window(), &budget)
                .unwrap();
        assert_eq!(r.groups[&0], FgAbGroup::free(3));
        assert_eq!(r.groups[&1], FgAbGroup::new(0, vec![2, 2, 2]).unwrap());
    }

    #[test]
    fn adding_a_top_adds_one_summand_per_degree() {
        let profile = CoeffProfile::sphere_window();
        for lattice in [FinDistLattice::two(), three_chain(), diamond()] {
            let base = k_of_locally_coherent(&MotiveModule::new(&lattice).unwrap(), &profile);
            let ext = lattice.add_top().extended;
            let extended = k_of_locally_coherent(&MotiveModule::new(&ext).unwrap(), &profile);
            for n in profile.degrees() {
                assert_eq!(
                    extended.groups[&n],
                    base.groups[&n].direct_sum(profile.group(n))
                );
            }
        }
    }

    #[test]
    fn profile_validation() {
        let mut groups = BTreeMap::new();
        groups.insert(0, FgAbGroup::free(1));
        assert!(CoeffProfile::new("gap", (0, 1), groups.clone()).is_err());
        groups.insert(2, FgAbGroup::free(1));
        assert!(CoeffProfile::new("outside", (0, 0), groups).is_err());
    }

    #[test]
    fn profile_doc_round_trip() {
        let text = r#"{
            "label": "K(sphere), degrees 0..1",
            "window": [0, 1],
            "groups": { "0": { "rank": 1, "torsion": [] }, "1": { "rank": 0, "torsion": [2] } }
        }"#;
        let profile = profile_from_doc(text).unwrap();
        assert_eq!(profile, CoeffProfile::sphere_window());
        let out = serde_json::to_string(&profile).unwrap();
        let back: CoeffProfile = serde_json::from_str(&out).unwrap();
        assert_eq!(back, profile);
    }
}
