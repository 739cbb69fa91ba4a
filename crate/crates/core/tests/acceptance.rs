//! Acceptance suite: every structural guarantee of the workbench, checked
//! exactly (no tolerances) over the standard seeded corpus.
//!
//! One test per criterion; each prints a single PASS line on success and
//! panics with the first counterexample otherwise.

use std::sync::OnceLock;

use stonework::abelian::FgAbGroup;
use stonework::corpus::Corpus;
use stonework::ktheory::{k_of_locally_coherent, CoeffProfile};
use stonework::motives::MotiveModule;
use stonework::verify::{self, SuiteReport, VerifyConfig};
use stonework::{Budget, FinDistLattice, Poset};

fn config() -> VerifyConfig {
    VerifyConfig::default()
}

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let c = config();
        Corpus::new(c.seed, c.max_exhaustive, c.random, c.roundtrip_cap)
    })
}

fn assert_pass(criterion: &str, report: &SuiteReport) {
    assert!(
        report.passed(),
        "{criterion}: {} of {} cases failed; first: {:?}",
        report.failures.len(),
        report.checked,
        report.failures.first()
    );
    println!("{criterion}: PASS ({} cases)", report.checked);
}

#[test]
fn criterion_01_birkhoff_duality() {
    let report = verify::birkhoff_roundtrips(corpus());
    assert_pass("criterion 1 (Birkhoff duality round trips)", &report);
}

#[test]
fn criterion_02_freeness() {
    let report = verify::freeness(corpus());
    assert_pass(
        "criterion 2 (motive presentations are torsion-free)",
        &report,
    );
}

#[test]
fn criterion_03_rank_oracle() {
    let report = verify::rank_oracle(corpus());
    assert_pass(
        "criterion 3 (rank equals point count, point matrix unimodular)",
        &report,
    );
}

#[test]
fn criterion_04_top_splitting() {
    let report = verify::top_splitting(corpus());
    assert_pass(
        "criterion 4 (adjoining a top splits off one free summand)",
        &report,
    );
}

#[test]
fn criterion_05_booleanization() {
    let report = verify::booleanization(corpus());
    assert_pass(
        "criterion 5 (Booleanization induces a unimodular matrix)",
        &report,
    );
}

#[test]
fn criterion_06_basis_theorem() {
    let report = verify::basis_theorem(corpus());
    assert_pass(
        "criterion 6 (fin-coverage sheaves are exactly the principal downsets)",
        &report,
    );
}

#[test]
fn criterion_07_sheafification() {
    let report = verify::sheafification_laws(&config());
    assert_pass(
        "criterion 7 (sheafification closure laws and meet preservation)",
        &report,
    );
}

#[test]
fn criterion_08_valuation_universality() {
    let report = verify::valuation_universality(corpus(), &config());
    assert_pass(
        "criterion 8 (valuations factor uniquely through the universal one)",
        &report,
    );
}

#[test]
fn criterion_09_ring_laws() {
    let report = verify::ring_laws(corpus());
    assert_pass(
        "criterion 9 (ring laws and idempotency of valuation images)",
        &report,
    );
}

#[test]
fn criterion_10_ktheory_routes() {
    let report = verify::ktheory_routes(corpus());
    assert_pass(
        "criterion 10 (three computation routes agree degreewise)",
        &report,
    );

    // pin the sphere-window groups on the three-element chain explicitly
    let chain = FinDistLattice::birkhoff_opens(&Poset::chain(2), &Budget::default()).unwrap();
    let module = MotiveModule::new(&chain).unwrap();
    let result = k_of_locally_coherent(&module, &CoeffProfile::sphere_window());
    assert_eq!(
        result.groups[&0],
        FgAbGroup::free(2),
        "degree 0 on the three-chain"
    );
    assert_eq!(
        result.groups[&1],
        FgAbGroup::new(0, vec![2, 2]).unwrap(),
        "degree 1 on the three-chain"
    );
    println!("criterion 10 (sphere-window pin on the three-chain): PASS");
}

#[test]
fn criterion_11_semiorthogonal() {
    let report = verify::semiorthogonal(corpus());
    assert_pass(
        "criterion 11 (one summand per poset element, exhaustively)",
        &report,
    );
}

#[test]
fn criterion_12_profinite() {
    let report = verify::profinite_checks(&config());
    assert_pass(
        "criterion 12 (profinite stages, transitions, Bell counts)",
        &report,
    );
}

#[test]
fn criterion_13_scissors() {
    let report = verify::scissors_checks(&config());
    assert_pass(
        "criterion 13 (polytope module ranks and disjoint additivity)",
        &report,
    );
}
