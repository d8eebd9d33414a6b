use super::*;
use crate::matrix::{IndexSet, IndexedMatrix};
use crate::oracle::verify_certificate;
use crate::rings::Ring;
use crate::transversal::{ColumnPartition, Instance};

fn set(v: &[usize]) -> IndexSet {
    IndexSet::new(v.iter().copied()).unwrap()
}

fn instance(ring: Ring, rows: &[&[i64]], blocks: &[&[usize]]) -> Instance {
    let m = IndexedMatrix::from_ints(ring, rows).unwrap();
    let pi = ColumnPartition::new(blocks.iter().map(|b| set(b)).collect(), m.cols()).unwrap();
    Instance::new(m, pi).unwrap()
}

fn admissible(inst: &Instance, cols: &[usize]) -> AdmissibleSet {
    AdmissibleSet::new(inst, set(cols)).unwrap().unwrap()
}

fn gf2() -> Ring {
    Ring::prime_field(2).unwrap()
}

/// Unit columns 1, 2 in a weight-2 block, 3 alone, and (0,1,0) in a third block.
fn weight_zero_arrow() -> Instance {
    instance(
        Ring::INTEGERS,
        &[&[1, 0, 0, 0], &[0, 1, 0, 1], &[0, 0, 1, 0]],
        &[&[1, 2], &[3], &[4]],
    )
}

#[test]
fn empty_target_pool_is_first_kind() {
    let inst = instance(Ring::INTEGERS, &[&[1, 0, 1], &[0, 1, 1]], &[&[1], &[2], &[3]]);
    let p = admissible(&inst, &[1, 2]);
    let g = ConnectionGraph::build(&inst, &p);
    assert!(g.targets().is_empty());
    assert!(g.layers().is_empty());
    assert_eq!(g.arrows().count(), 0);
    assert_eq!(g.kind(), Kind::First);
}

#[test]
fn arrow_from_origin_through_weight_zero_block() {
    let inst = weight_zero_arrow();
    let p = admissible(&inst, &[1, 2, 3]);
    let g = ConnectionGraph::build(&inst, &p);
    assert_eq!(g.hat_rows(), &set(&[1, 2, 3]));
    assert_eq!(g.hat_cols(), &set(&[3, 4]));
    assert_eq!(g.targets(), &set(&[1, 2]));
    assert_eq!(g.base_arrows(), &[Arrow::new(ORIGIN, 4, 2)]);
    assert_eq!(g.layers(), &[vec![Arrow::new(ORIGIN, 4, 2)]]);
    assert_eq!(g.kind(), Kind::Second { distance: 1 });
    assert_eq!(g.shortest_path(), Some(&[Arrow::new(ORIGIN, 4, 2)][..]));
}

#[test]
fn gap_violation_and_swap() {
    let inst = weight_zero_arrow();
    let p = admissible(&inst, &[1, 2, 3]);
    let v = gap_violations(&inst, &p);
    assert_eq!(
        v,
        vec![GapViolation {
            row: 2,
            column: 4,
            row_block: 1,
            column_block: 3,
            pivot_column: 2,
        }]
    );
    let q = gap_swap(&inst, &p, &v[0]).unwrap();
    assert_eq!(q.columns(), &set(&[1, 3, 4]));
    assert_eq!(q.weights(), &[1, 1, 1]);
    assert_eq!(q.spread(), vec![1, 2, 3]);
    assert_eq!(p.spread(), vec![1, 2]);
    assert!(gap_violations(&inst, &q).is_empty());

    let bogus = GapViolation { row: 1, ..v[0].clone() };
    assert!(matches!(gap_swap(&inst, &p, &bogus), Err(Error::Internal(_))));
}

#[test]
fn no_units_no_gap_violations() {
    let z4 = Ring::integers_mod(4).unwrap();
    let inst = instance(z4, &[&[1, 0, 2, 2], &[0, 1, 2, 0]], &[&[1, 2], &[3], &[4]]);
    assert!(gap_violations(&inst, &admissible(&inst, &[1, 2])).is_empty());
}

#[test]
fn zero_column_gives_no_arrows() {
    let inst = instance(gf2(), &[&[1, 0, 0], &[0, 1, 0]], &[&[1, 2], &[3]]);
    let g = ConnectionGraph::build(&inst, &admissible(&inst, &[1, 2]));
    assert!(g.base_arrows().is_empty());
    assert_eq!(g.kind(), Kind::First);
}

#[test]
fn swap_on_first_kind_set_is_an_error() {
    let inst = instance(gf2(), &[&[1, 0, 0], &[0, 1, 0]], &[&[1, 2], &[3]]);
    let p = admissible(&inst, &[1, 2]);
    let g = ConnectionGraph::build(&inst, &p);
    assert!(matches!(distance_reducing_swap(&inst, &p, &g), Err(Error::FirstKind)));
}

#[test]
fn clear_paths() {
    let z = Ring::INTEGERS;
    let qm = IndexedMatrix::from_ints(z, &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]).unwrap();
    let a = Arrow::new(ORIGIN, 1, 1);
    let b = Arrow::new(1, 2, 2);
    let c = Arrow::new(1, 3, 2);
    assert!(is_clear_path(&qm, &[a, b]));
    // Column 1 must vanish at the later target 2: it does.
    assert!(is_clear_path(&qm, &[a, c]));
    // Not connected.
    assert!(!is_clear_path(&qm, &[b, a]));
    // Column 2 is non-zero at row 2, the target of the following arrow.
    assert!(!is_clear_path(&qm, &[Arrow::new(ORIGIN, 2, 1), b]));
}

#[test]
fn measure_order() {
    let m = |spread, profile: &[usize], distance| Measure {
        spread,
        profile: profile.to_vec(),
        distance,
    };
    assert!(m(3, &[1, 1, 1], Some(5)).improves_on(&m(2, &[1, 2], None)));
    assert!(m(2, &[2, 2], Some(3)).improves_on(&m(2, &[1, 3], Some(2))));
    assert!(m(2, &[1, 2], Some(2)).improves_on(&m(2, &[1, 2], Some(3))));
    assert!(m(2, &[1, 2], None).improves_on(&m(2, &[1, 2], Some(2))));
    assert!(!m(2, &[1, 2], None).improves_on(&m(2, &[1, 2], None)));
    assert!(!m(2, &[1, 2], Some(2)).improves_on(&m(2, &[1, 2], Some(2))));
    assert!(!m(2, &[1, 3], Some(1)).improves_on(&m(2, &[2, 2], Some(9))));
}

#[test]
fn certify_all_ones_over_gf2() {
    let inst = instance(gf2(), &[&[1, 1, 1, 1], &[1, 1, 1, 1]], &[&[1, 2], &[3, 4]]);
    let cert = certify(&inst).unwrap();
    assert_eq!(cert.branch, Branch::NoAdmissible);
    assert_eq!(cert.m, 1);
    assert_eq!(cert.rows, set(&[2]));
    assert!(cert.possibly_bad_blocks.is_empty());
    let qm = cert.q.matmul(inst.matrix()).unwrap();
    assert!(qm.row(2).iter().all(|e| e.is_zero()));
    assert!(verify_certificate(&inst, &cert).is_valid());
}

#[test]
fn certify_first_kind_over_gf2() {
    let inst = instance(gf2(), &[&[1, 0, 0], &[0, 1, 0]], &[&[1, 2], &[3]]);
    let cert = certify(&inst).unwrap();
    assert_eq!(cert.branch, Branch::FirstKind);
    assert_eq!(cert.audit.final_set, Some(set(&[1, 2])));
    assert_eq!(cert.audit.final_weights, vec![2, 0]);
    assert_eq!(cert.possibly_bad_blocks, vec![1, 2]);
    assert_eq!(cert.rows, set(&[1, 2]));
    assert_eq!(cert.m, 2);
    let qm = cert.q.matmul(inst.matrix()).unwrap();
    assert_eq!(crate::oracle::bad_blocks(&inst, &qm, cert.rows.as_slice()), vec![1]);
    assert!(cert.audit.swaps.is_empty());
    assert!(verify_certificate(&inst, &cert).is_valid());
}

#[test]
fn certify_single_row_without_units() {
    let inst = instance(Ring::INTEGERS, &[&[2, 2]], &[&[1], &[2]]);
    let cert = certify(&inst).unwrap();
    assert_eq!(cert.branch, Branch::NoAdmissible);
    assert_eq!(cert.audit.echelon_rank, Some(0));
    assert_eq!(cert.rows, set(&[1]));
    assert_eq!(cert.m, 1);
    let qm = cert.q.matmul(inst.matrix()).unwrap();
    assert!(crate::oracle::bad_blocks(&inst, &qm, cert.rows.as_slice()).is_empty());
}

#[test]
fn certify_few_blocks() {
    let inst = instance(Ring::INTEGERS, &[&[2, 3], &[4, 6]], &[&[1, 2]]);
    let cert = certify(&inst).unwrap();
    assert_eq!(cert.branch, Branch::FewBlocks);
    assert_eq!(cert.rows, set(&[1, 2]));
    assert_eq!(cert.possibly_bad_blocks, vec![1]);
    assert!(verify_certificate(&inst, &cert).is_valid());
}

#[test]
fn certify_no_weight_two() {
    // Three rows, two blocks: fewer blocks than rows.
    let inst = instance(
        Ring::INTEGERS,
        &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]],
        &[&[1, 2, 3], &[4]],
    );
    assert_eq!(certify(&inst).unwrap().branch, Branch::FewBlocks);

    // Everything lives in one block of weight 3.
    let inst = instance(
        Ring::INTEGERS,
        &[&[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0], &[0, 0, 1, 0, 0]],
        &[&[1, 2, 3], &[4], &[5]],
    );
    let cert = certify(&inst).unwrap();
    assert_eq!(cert.branch, Branch::NoWeightTwo);
    assert_eq!(cert.possibly_bad_blocks, vec![1]);
    assert_eq!(cert.rows, set(&[1, 2, 3]));
}

#[test]
fn certify_reports_the_witness() {
    let inst = instance(Ring::INTEGERS, &[&[1, 0], &[0, 1]], &[&[1], &[2]]);
    match certify(&inst) {
        Err(Error::HypothesisFails { columns, determinant }) => {
            assert_eq!(columns, set(&[1, 2]));
            assert!(determinant.is_one());
        }
        other => panic!("expected a witness, got {other:?}"),
    }
}

#[test]
fn theorem_form_moves_rows_last() {
    let z = Ring::INTEGERS;
    let q = IndexedMatrix::from_ints(z, &[&[1, 2], &[3, 5]]).unwrap();
    let cert = |rows: &[usize]| TheoremCertificate {
        q: q.clone(),
        rows: set(rows),
        m: rows.len(),
        possibly_bad_blocks: vec![],
        branch: Branch::FirstKind,
        audit: Audit::default(),
    };
    let (q1, m) = to_theorem_form(&cert(&[2])).unwrap();
    assert_eq!((q1, m), (q.clone(), 1));
    let (q2, m) = to_theorem_form(&cert(&[1])).unwrap();
    assert_eq!(m, 1);
    assert_eq!(q2, IndexedMatrix::from_ints(z, &[&[3, 5], &[1, 2]]).unwrap());
    assert!(q2.is_invertible().unwrap());
    assert!(to_theorem_form(&cert(&[3])).is_err());
}

#[test]
fn branch_names_round_trip() {
    for b in [Branch::FewBlocks, Branch::NoAdmissible, Branch::NoWeightTwo, Branch::FirstKind] {
        assert_eq!(b.to_string().parse::<Branch>().unwrap(), b);
    }
    assert!("Other".parse::<Branch>().is_err());
}
