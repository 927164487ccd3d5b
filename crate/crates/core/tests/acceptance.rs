//! Acceptance suite: one test per criterion, each asserting exact values
//! (equality everywhere; the arithmetic is exact, so there are no
//! tolerances). Expected numbers are frozen from independent confirmation
//! runs: brute-force counting here, plus an external re-implementation
//! for the contested rows.

mod common;

use common::{random_entry_matrix, SplitMix64};

use minor_designs::constructions::{
    self, bgw_block, bgw_from_conference, graphical_hadamard, hadamard_bordered,
    paley_conference, paley_tournament, signed_hypercube, skew_bush_search, sylvester_hadamard,
    SrgName,
};
use minor_designs::designs::{
    blocks_by_minor, extract_blocks, five_subset_property, inclusion_exclusion_holds,
    verify_pbibd, verify_t_design, BlockSet, Degeneracy, DesignKind,
};
use minor_designs::matrix::ExactMatrix;
use minor_designs::par::with_workers;
use minor_designs::predictor::{identity_checks, IdentityDepth};
use minor_designs::scalar::Scalar;
use minor_designs::schemes;
use minor_designs::spectrum::minor_spectrum;
use minor_designs::tables::{self, RowResult};

fn int(x: i64) -> Scalar {
    Scalar::from_int(x)
}

fn assert_rows_pass(criterion: &str, rows: &[RowResult]) {
    for row in rows {
        if let Some(reason) = &row.skipped {
            println!("[{criterion}] SKIP {}: {reason}", row.label);
            continue;
        }
        assert!(row.passed, "[{criterion}] {}: {}", row.label, row.detail);
    }
}

/// Brute verify that the (k, a) blocks of `matrix` form a t-design with
/// exactly the frozen lambda.
fn assert_t_design(
    criterion: &str,
    matrix: &ExactMatrix,
    k: usize,
    a: &Scalar,
    t: usize,
    lambda: u64,
) -> BlockSet {
    let blocks = extract_blocks(matrix, k, a).unwrap();
    let report = verify_t_design(&blocks, t).unwrap();
    assert_eq!(
        report.kind,
        DesignKind::TDesign,
        "[{criterion}] (k={k}, a={a}) witness {:?}",
        report.witness
    );
    assert_eq!(
        report.lambda,
        Some(lambda),
        "[{criterion}] (k={k}, a={a}) lambda"
    );
    blocks
}

fn assert_pbibd(
    criterion: &str,
    matrix: &ExactMatrix,
    scheme: &schemes::AssociationScheme,
    k: usize,
    a: &Scalar,
    lambdas: &[u64],
) {
    let blocks = extract_blocks(matrix, k, a).unwrap();
    let report = verify_pbibd(&blocks, scheme).unwrap();
    assert_ne!(
        report.kind,
        DesignKind::NotADesign,
        "[{criterion}] (k={k}, a={a}) witness {:?}",
        report.witness
    );
    let observed: Vec<u64> = report
        .lambda_classes
        .unwrap()
        .into_iter()
        .map(|(_, l)| l)
        .collect();
    assert_eq!(observed, lambdas, "[{criterion}] (k={k}, a={a})");
}

#[test]
fn c01_conference_three_designs() {
    // Symmetric: B(q+1,4,5) is 3-(q+1,4,3n), B(q+1,4,-3) is 3-(q+1,4,n-1).
    for (q, l5, lm3) in [(5u64, 3u64, 0u64), (9, 6, 1), (13, 9, 2)] {
        let s = paley_conference(q).unwrap();
        assert_t_design("c01", &s, 4, &int(5), 3, l5);
        assert_t_design("c01", &s, 4, &int(-3), 3, lm3);
    }
    // Skew: B(q+1,4,9) is 3-(q+1,4,n), B(q+1,4,1) is 3-(q+1,4,3(n-1)),
    // and the S +- I block sets at k=5.
    for (q, l9, l1, l16, l32) in [
        (7u64, 2u64, 3u64, 0u64, 10u64),
        (11, 3, 6, 6, 30),
        (19, 5, 12, 36, 100),
        (23, 6, 15, 60, 150),
    ] {
        let s = paley_conference(q).unwrap();
        assert_t_design("c01", &s, 4, &int(9), 3, l9);
        assert_t_design("c01", &s, 4, &int(1), 3, l1);
        let plus = s.add_scalar_diag(&int(1));
        let minus = s.add_scalar_diag(&int(-1));
        assert_t_design("c01", &plus, 5, &int(16), 3, l16);
        assert_t_design("c01", &plus, 5, &int(32), 3, l32);
        assert_t_design("c01", &minus, 5, &int(-16), 3, l16);
        assert_t_design("c01", &minus, 5, &int(-32), 3, l32);
    }
    println!("[criterion 01] PASS conference-matrix 3-designs at q in {{5,9,13,7,11,19,23}}");
}

#[test]
fn c02_five_subset_property() {
    for q in [7u64, 11, 19, 23] {
        let s = paley_conference(q).unwrap();
        let blocks = extract_blocks(&s, 4, &int(9)).unwrap();
        assert!(
            five_subset_property(&blocks).unwrap().is_none(),
            "[c02] q={q}"
        );
        assert_rows_pass("c02", &tables::gs_table(q).unwrap());
    }
    println!("[criterion 02] PASS 0-or-2 five-subset property at q in {{7,11,19,23}}");
}

#[test]
fn c03_prediction_reconciliation() {
    // Conference rows (prediction reconciled inside every table row).
    for q in [5u64, 9, 13] {
        assert_rows_pass("c03", &tables::conference_sym_table(q).unwrap());
    }
    for q in [7u64, 11, 19, 23] {
        assert_rows_pass("c03", &tables::conference_skew_table(q).unwrap());
    }
    // Graphical Hadamard orders 16 and 64. The frozen numbers below are
    // forced by the coefficient c_3 = eps n^2 (n-1)/3 through the
    // two-minor formula and were confirmed by exhaustive counts.
    let h16 = graphical_hadamard(2).unwrap();
    assert_t_design("c03", &h16, 3, &int(0), 2, 6);
    assert_t_design("c03", &h16, 3, &int(-4), 2, 8);
    assert_t_design("c03", &h16, 4, &int(0), 2, 75);
    assert_t_design("c03", &h16, 4, &int(-16), 2, 16);
    let h64 = graphical_hadamard(3).unwrap();
    assert_t_design("c03", &h64, 3, &int(0), 2, 30);
    assert_t_design("c03", &h64, 3, &int(4), 2, 32);
    assert_t_design("c03", &h64, 4, &int(0), 2, 1635);
    assert_t_design("c03", &h64, 4, &int(-16), 2, 256);
    for m in [2u32, 3] {
        assert_rows_pass("c03", &tables::graphical_hadamard_table(m).unwrap());
    }
    // Hermitian Butson order 9: 2-(9,3,6), 2-(9,3,1), 2-(9,4,9),
    // 2-(9,4,12), conditional on the validator (construction errors
    // would have failed already).
    let h9 = constructions::hermitian_bh9().unwrap();
    assert_t_design("c03", &h9, 3, &int(-3), 2, 6);
    assert_t_design("c03", &h9, 3, &int(0), 2, 1);
    assert_t_design("c03", &h9, 4, &int(-9), 2, 9);
    assert_t_design("c03", &h9, 4, &int(0), 2, 12);
    assert_rows_pass("c03", &tables::hermitian_bh9_table().unwrap());
    println!("[criterion 03] PASS two-minor formula reconciles with counting everywhere");
}

#[test]
fn c04_doubly_regular_tournaments() {
    for (q, lambdas) in [
        (7u64, [3u64, 2, 6, 4, 0, 10]),
        (11, [6, 3, 18, 18, 6, 30]),
    ] {
        let a = paley_tournament(q).unwrap();
        let plus = a.add_scalar_diag(&int(1));
        assert_t_design("c04", &a, 3, &int(0), 2, lambdas[0]);
        assert_t_design("c04", &a, 3, &int(1), 2, lambdas[1]);
        assert_t_design("c04", &a, 4, &int(-1), 2, lambdas[2]);
        assert_t_design("c04", &a, 4, &int(0), 2, lambdas[3]);
        assert_t_design("c04", &plus, 4, &int(1), 2, lambdas[4]);
        assert_t_design("c04", &plus, 4, &int(2), 2, lambdas[5]);
        assert_rows_pass("c04", &tables::doubly_table(q).unwrap());
    }
    println!("[criterion 04] PASS tournament 2-design rows at q = 7 and q = 11");
}

#[test]
fn c05_walk_regular_one_designs() {
    let paley9 = constructions::srg_catalog(&SrgName::Paley { q: 9 }).unwrap();
    assert_eq!(
        minor_designs::predictor::triangle_count(&paley9).unwrap(),
        6
    );
    assert_t_design("c05", &paley9, 3, &int(0), 1, 26);
    assert_t_design("c05", &paley9, 3, &int(2), 1, 2);
    // Petersen: the degenerate split 120 / 0.
    let petersen = constructions::srg_catalog(&SrgName::Petersen).unwrap();
    assert_eq!(
        minor_designs::predictor::triangle_count(&petersen).unwrap(),
        0
    );
    let full = extract_blocks(&petersen, 3, &int(0)).unwrap();
    assert_eq!(full.len(), 120);
    let report = verify_t_design(&full, 1).unwrap();
    assert_eq!(report.degenerate, Some(Degeneracy::Trivial));
    let empty = extract_blocks(&petersen, 3, &int(2)).unwrap();
    assert!(empty.is_empty());
    let report = verify_t_design(&empty, 1).unwrap();
    assert_eq!(report.degenerate, Some(Degeneracy::Empty));
    assert_rows_pass("c05", &tables::walk_regular_table().unwrap());
    println!("[criterion 05] PASS walk-regular 1-designs (triangle counts 6 and 0)");
}

#[test]
fn c06_signed_hypercubes() {
    let s3 = signed_hypercube(3).unwrap();
    let h3 = schemes::hamming(3).unwrap();
    assert_pbibd("c06", &s3, &h3, 4, &int(4), &[2, 1, 0]);
    assert_pbibd("c06", &s3, &h3, 4, &int(1), &[7, 5, 9]);
    let s4 = signed_hypercube(4).unwrap();
    let h4 = schemes::hamming(4).unwrap();
    assert_pbibd("c06", &s4, &h4, 4, &int(4), &[3, 1, 0, 0]);
    assert_pbibd("c06", &s4, &h4, 4, &int(1), &[28, 12, 16, 16]);
    for d in [3u32, 4] {
        assert_rows_pass("c06", &tables::signed_hypercube_table(d).unwrap());
    }
    println!("[criterion 06] PASS signed-hypercube class vectors at d = 3 and d = 4");
}

#[test]
fn c07_weighing_matrix_blocks() {
    // Conference BGW(6,5,4): closed forms and counts agree.
    let w5 = bgw_from_conference(5).unwrap();
    let a5 = bgw_block(&w5).unwrap();
    let scheme5 = schemes::bgw_3class(&w5).unwrap();
    assert_pbibd("c07", &a5, &scheme5, 4, &int(4), &[8, 4, 0]);
    assert_pbibd("c07", &a5, &scheme5, 4, &int(1), &[13, 9, 25]);
    // Conference BGW(10,9,8): lambda(d-1)/2 = 8*8/2 = 32, confirmed by
    // brute force and by an independent implementation, and the
    // three-minor formula gives (25, 17, 81) — reconciliation is the
    // criterion.
    let w9 = bgw_from_conference(9).unwrap();
    let a9 = bgw_block(&w9).unwrap();
    let scheme9 = schemes::bgw_3class(&w9).unwrap();
    assert_pbibd("c07", &a9, &scheme9, 4, &int(4), &[32, 16, 0]);
    assert_pbibd("c07", &a9, &scheme9, 4, &int(1), &[25, 17, 81]);
    for q in [5u64, 9] {
        assert_rows_pass("c07", &tables::bgw_table(q).unwrap());
    }
    println!("[criterion 07] PASS weighing-block class vectors, formulas reconciled");
}

#[test]
fn c08_skew_bush_group_divisible() {
    match skew_bush_search(4) {
        Err(minor_designs::error::Error::SearchExhausted(why)) => {
            // Contingency allowed by the criterion: report and pass.
            println!("[criterion 08] SKIP search did not certify a matrix: {why}");
        }
        Err(e) => panic!("[c08] unexpected error: {e}"),
        Ok(h) => {
            let half = Scalar::rational(1, 2);
            let a = ExactMatrix::from_fn(16, |i, j| &(&Scalar::one() - h.at(i, j)) * &half);
            let scheme = schemes::group_divisible(4).unwrap();
            assert_pbibd("c08", &a, &scheme, 3, &int(0), &[14, 12]);
            assert_pbibd("c08", &a, &scheme, 3, &int(1), &[0, 2]);
            // k=4 vectors: the two class values must complement each
            // other to C(14,2) = 91 per class; the verified vectors
            // below do, matching the closed forms n^4/16 and
            // (n-2)(5n^3+20n^2-12n-24)/16.
            assert_pbibd("c08", &a, &scheme, 4, &int(-1), &[16, 20]);
            assert_pbibd("c08", &a, &scheme, 4, &int(0), &[75, 71]);
            assert_rows_pass("c08", &tables::gdd_table().unwrap());
            println!("[criterion 08] PASS skew-Bush group divisible rows at n = 4");
        }
    }
}

#[test]
fn c09_hadamard_pairwise_balanced() {
    // v = 4: component class vectors (4,6) and (8,6), union balances at
    // v^2 - v = 12.
    let bordered4 = hadamard_bordered(&sylvester_hadamard(4).unwrap()).unwrap();
    let scheme4 = schemes::hadamard_3class(4).unwrap();
    assert_pbibd("c09", &bordered4, &scheme4, 3, &int(-1), &[4, 6]);
    assert_pbibd("c09", &bordered4, &scheme4, 4, &int(-2), &[8, 6]);
    let b3 = extract_blocks(&bordered4, 3, &int(-1)).unwrap();
    let b4 = extract_blocks(&bordered4, 4, &int(-2)).unwrap();
    let union = minor_designs::designs::verify_regular_pbd(&[&b3, &b4]).unwrap();
    assert_eq!(union.kind, DesignKind::RegularPbd);
    assert_eq!(union.lambda, Some(12));
    assert_eq!(union.block_sizes, vec![3, 4]);
    // v = 8: union balances at 56.
    let bordered8 = hadamard_bordered(&sylvester_hadamard(8).unwrap()).unwrap();
    let b3 = extract_blocks(&bordered8, 3, &int(-1)).unwrap();
    let b4 = extract_blocks(&bordered8, 4, &int(-2)).unwrap();
    let union = minor_designs::designs::verify_regular_pbd(&[&b3, &b4]).unwrap();
    assert_eq!(union.kind, DesignKind::RegularPbd);
    assert_eq!(union.lambda, Some(56));
    for v in [4u64, 8] {
        assert_rows_pass("c09", &tables::hadamard_pbd_table(v).unwrap());
    }
    println!("[criterion 09] PASS bordered-Hadamard pairwise balanced designs at v = 4, 8");
}

#[test]
fn c10_sporadic_tables() {
    let e7 = tables::root_system_table(7).unwrap();
    assert_eq!(e7.len(), 4);
    assert_rows_pass("c10", &e7);
    let e8 = tables::root_system_table(8).unwrap();
    assert_eq!(e8.len(), 4);
    assert_rows_pass("c10", &e8);
    let mub = tables::mub_table().unwrap();
    assert_eq!(mub.len(), 4);
    assert_rows_pass("c10", &mub);
    let bh9 = tables::bh9_table().unwrap();
    // 11 value rows plus the two key-set rows.
    assert_eq!(bh9.len(), 13);
    assert_rows_pass("c10", &bh9);
    println!("[criterion 10] PASS sporadic class vectors (roots, unbiased bases, Butson 9)");
}

#[test]
fn c11_srg_pairwise_balanced_catalog() {
    let rows = tables::srg_pbd_table().unwrap();
    assert_eq!(rows.len(), 22, "[c11] expected the full 22-row catalog");
    assert_rows_pass("c11", &rows);
    // The two trivial rows carry the degenerate flag (asserted inside the
    // table); spot-check one directly.
    let petersen = constructions::srg_catalog(&SrgName::Petersen).unwrap();
    let triples = extract_blocks(&petersen, 3, &int(0)).unwrap();
    let report = verify_t_design(&triples, 2).unwrap();
    assert_eq!(report.degenerate, Some(Degeneracy::Trivial));
    assert_eq!(report.lambda, Some(8));
    println!("[criterion 11] PASS all 22 strongly-regular-graph PBD rows");
}

#[test]
fn c12_hoggar_two_designs() {
    let rows = tables::hoggar_table().unwrap();
    assert_eq!(rows.len(), 9);
    assert_rows_pass("c12", &rows);
    println!("[criterion 12] PASS all seven 2-(64,k,lambda) rows of the Hoggar matrix");
}

#[test]
fn c13_tournament_probes() {
    for q in [7u64, 11, 19, 23] {
        let rows = tables::tournament_probe_table(q).unwrap();
        assert_rows_pass("c13", &rows);
        // The a = 0 class verifies as a 2-design (vacuously at q = 7).
        let a = paley_tournament(q).unwrap();
        let zeros = extract_blocks(&a, 5, &int(0)).unwrap();
        let report = verify_t_design(&zeros, 2).unwrap();
        assert_eq!(report.kind, DesignKind::TDesign, "[c13] q={q} a=0");
    }
    println!("[criterion 13] PASS k=5 tournament probes at q in {{7,11,19,23}}");
}

#[test]
fn c14_property_suites() {
    // Identity suite on 20 deterministic random matrices of orders 5-8.
    let mut rng = SplitMix64(0xacce97);
    for round in 0..20 {
        let n = 5 + round % 4;
        let m = random_entry_matrix(&mut rng, n);
        identity_checks(&m, IdentityDepth::for_order(n))
            .unwrap_or_else(|e| panic!("[c14] random matrix {round}: {e}"));
    }
    // Identity suite on a representative of every construction family.
    let family_instances: Vec<(&str, ExactMatrix)> = vec![
        ("conference 6", paley_conference(5).unwrap()),
        ("conference 8", paley_conference(7).unwrap()),
        ("conference 10", paley_conference(9).unwrap()),
        ("conference 28", paley_conference(27).unwrap()),
        ("tournament 7", paley_tournament(7).unwrap()),
        ("tournament 11", paley_tournament(11).unwrap()),
        ("graphical 16", graphical_hadamard(2).unwrap()),
        ("signed cube 8", signed_hypercube(3).unwrap()),
        ("signed cube 16", signed_hypercube(4).unwrap()),
        ("bgw block 12", bgw_block(&bgw_from_conference(5).unwrap()).unwrap()),
        ("bordered 8", hadamard_bordered(&sylvester_hadamard(4).unwrap()).unwrap()),
        ("rook 16", constructions::srg_catalog(&SrgName::Rook { n: 4 }).unwrap()),
        ("clebsch 16", constructions::srg_catalog(&SrgName::Clebsch).unwrap()),
        ("schlafli 27", constructions::srg_catalog(&SrgName::Schlafli).unwrap()),
        ("skew bush 16", skew_bush_search(4).unwrap()),
        ("butson figure 9", constructions::bh9_figure1().unwrap()),
        ("hermitian butson 9", constructions::hermitian_bh9().unwrap()),
        ("unbiased gram 80", constructions::mub_gram().unwrap()),
        ("hoggar 64", constructions::hoggar_seidel().unwrap()),
        ("roots 126", constructions::e7_gram().unwrap()),
        ("roots 240", constructions::e8_gram().unwrap()),
    ];
    for (name, matrix) in &family_instances {
        identity_checks(matrix, IdentityDepth::for_order(matrix.order()))
            .unwrap_or_else(|e| panic!("[c14] {name}: {e}"));
    }
    // Scheme axioms on every catalog scheme.
    let gram_e7 = constructions::e7_gram().unwrap();
    let classes: Vec<Vec<Scalar>> = [1i64, 0, -1, -2]
        .iter()
        .map(|&x| vec![int(x)])
        .collect();
    let schemes_list: Vec<(&str, schemes::AssociationScheme)> = vec![
        ("hamming 3", schemes::hamming(3).unwrap()),
        ("hamming 4", schemes::hamming(4).unwrap()),
        ("group divisible 4", schemes::group_divisible(4).unwrap()),
        (
            "weighing 3-class 12",
            schemes::bgw_3class(&bgw_from_conference(5).unwrap()).unwrap(),
        ),
        ("bordered halves 8", schemes::hadamard_3class(4).unwrap()),
        (
            "srg 2-class rook",
            schemes::srg_2class(&constructions::srg_catalog(&SrgName::Rook { n: 4 }).unwrap())
                .unwrap(),
        ),
        (
            "roots 126 values",
            schemes::gram_value(
                &gram_e7,
                &classes,
                vec!["p1".into(), "p0".into(), "p-1".into(), "p-2".into()],
            )
            .unwrap(),
        ),
        (
            "butson 9 classes",
            schemes::bh9_scheme(&constructions::bh9_figure1().unwrap()).unwrap(),
        ),
    ];
    for (name, scheme) in &schemes_list {
        assert!(scheme.validate().ok(), "[c14] scheme axioms: {name}");
    }
    // Double count and inclusion-exclusion run inside every verified
    // table row; re-check inclusion-exclusion exhaustively on one small
    // verified design here.
    let s = paley_conference(7).unwrap();
    let blocks = extract_blocks(&s, 4, &int(9)).unwrap();
    assert!(inclusion_exclusion_holds(&blocks, 3));
    // Parallel determinism: identical reports for 1 and N workers.
    let s19 = paley_conference(19).unwrap();
    let spectrum1 = with_workers(1, || minor_spectrum(&s19, 4).unwrap());
    let blocks1 = with_workers(1, || blocks_by_minor(&s19, 4).unwrap());
    for workers in [2usize, 5] {
        assert_eq!(
            with_workers(workers, || minor_spectrum(&s19, 4).unwrap()),
            spectrum1
        );
        assert_eq!(
            with_workers(workers, || blocks_by_minor(&s19, 4).unwrap()),
            blocks1
        );
    }
    let report1 = with_workers(1, || {
        let blocks = extract_blocks(&s19, 4, &int(9)).unwrap();
        verify_t_design(&blocks, 3).unwrap()
    });
    let report4 = with_workers(4, || {
        let blocks = extract_blocks(&s19, 4, &int(9)).unwrap();
        verify_t_design(&blocks, 3).unwrap()
    });
    assert_eq!(report1, report4);
    println!("[criterion 14] PASS identity, scheme, counting, and determinism suites");
}
