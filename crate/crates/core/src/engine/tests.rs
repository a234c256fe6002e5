use super::*;
use crate::lifting::diff_trees;

fn ord2() -> VarOrder {
    VarOrder::new(vec!["x1", "x2"]).unwrap()
}

fn p2(s: &str) -> Polynomial {
    parse_poly(s, &ord2()).unwrap()
}

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn f1() -> Polynomial {
    p2("x1^2 + x2^2 - 1")
}
fn f2() -> Polynomial {
    p2("x1^3 - x2^2")
}
fn f3() -> Polynomial {
    p2("x2 - x1")
}
fn f4() -> Polynomial {
    p2("x1^3 + x2^2")
}

fn state_f1() -> CadState {
    CadState::build(&[f1(), f2()], &ord2()).unwrap()
}

#[test]
fn build_f1_counts() {
    let s = state_f1();
    let counts = s.cell_counts();
    assert_eq!(counts, vec![(1, 9, 5), (2, 17, 17)]);
    assert_eq!(s.meta().last_op, "build");
    assert_eq!(s.meta().cells_total, 26);
}

#[test]
fn build_univariate() {
    let o1 = VarOrder::new(vec!["x1"]).unwrap();
    let p = parse_poly("x1 - 1", &o1).unwrap();
    let s = CadState::build(&[p], &o1).unwrap();
    assert_eq!(s.cell_counts(), vec![(1, 3, 2)]);
}

#[test]
fn build_f2_base_points() {
    let s = CadState::build(&[f1(), f2(), f3()], &ord2()).unwrap();
    let sections: Vec<_> = s
        .tree()
        .level(1)
        .iter()
        .filter(|c| c.kind == crate::lifting::CellKind::Section)
        .collect();
    assert_eq!(sections.len(), 6);
    // Rational sections at −1, 0, 1; algebraic at ±1/√2 and α1.
    let rationals: Vec<_> = sections
        .iter()
        .filter_map(|c| c.own_coordinate())
        .collect();
    assert_eq!(rationals, vec![&q("-1"), &q("0"), &q("1")]);
}

#[test]
fn build_rejects_bad_inputs() {
    assert!(matches!(
        CadState::build(&[], &ord2()),
        Err(CadError::EmptyInput(_))
    ));
    assert!(matches!(
        CadState::build(&[Polynomial::zero(2)], &ord2()),
        Err(CadError::ZeroPolynomial)
    ));
}

#[test]
fn add_f3_matches_scratch_build() {
    let incr = state_f1().add(&f3()).unwrap();
    let scratch = CadState::build(&[f1(), f2(), f3()], &ord2()).unwrap();
    let diffs = diff_trees(incr.tree(), scratch.tree());
    assert!(diffs.is_empty(), "diffs: {diffs:?}");
    assert!(incr.recompute_oracle().unwrap().is_empty());
    assert_eq!(incr.meta().last_op, "add");
    assert!(incr.meta().projection_polys_added <= incr.meta().projection_polys_total);
}

#[test]
fn add_f4_matches_scratch_build() {
    let incr = state_f1().add(&f4()).unwrap();
    let scratch = CadState::build(&[f1(), f2(), f4()], &ord2()).unwrap();
    assert!(diff_trees(incr.tree(), scratch.tree()).is_empty());
    // One new base point −α1: 11 base cells.
    assert_eq!(incr.cell_counts()[0], (1, 11, 6));
    assert!(incr.recompute_oracle().unwrap().is_empty());
}

#[test]
fn add_duplicate_is_identity() {
    let s = state_f1();
    let dup = s.add(&f1()).unwrap();
    assert_eq!(dup.meta().last_op, "add-duplicate");
    assert_eq!(dup.inputs().len(), 2);
    assert!(diff_trees(s.tree(), dup.tree()).is_empty());
    // Also under a positive rescaling of an existing input.
    let dup2 = s.add(&p2("2*x1^2 + 2*x2^2 - 2")).unwrap();
    assert_eq!(dup2.meta().last_op, "add-duplicate");
}

#[test]
fn add_order_is_path_independent() {
    let a = state_f1().add(&f3()).unwrap().add(&f4()).unwrap();
    let b = state_f1().add(&f4()).unwrap().add(&f3()).unwrap();
    let scratch = CadState::build(&[f1(), f2(), f3(), f4()], &ord2()).unwrap();
    assert!(diff_trees(a.tree(), b.tree()).is_empty());
    assert!(diff_trees(a.tree(), scratch.tree()).is_empty());
}

#[test]
fn locate_examples() {
    let s = state_f1();
    // x1 = 0 is a base section.
    assert_eq!(s.locate(&[q("0"), q("0")]).unwrap(), Located::Boundary);
    // (−2, 0): the single cell above the leftmost base cell.
    assert_eq!(
        s.locate(&[q("-2"), q("0")]).unwrap(),
        Located::Cell(vec![1, 1])
    );
    // (1/2, 0): the middle cell of the 5-cell stack above (0, α1).
    assert_eq!(
        s.locate(&[q("1/2"), q("0")]).unwrap(),
        Located::Cell(vec![5, 3])
    );
    // A point on the circle is a wall at level 2.
    assert_eq!(s.locate(&[q("0"), q("1")]).unwrap(), Located::Boundary);
    assert!(s.locate(&[q("0")]).is_err());
}

#[test]
fn sign_vector_examples() {
    let s = state_f1();
    // Above a1, sample (−2, 0): f1 = 3 > 0, f2 = −8 < 0.
    assert_eq!(s.sign_vector(&[1, 1]).unwrap(), vec![1, -1]);
    // Middle cell over (1/2, 0): f1 = −3/4 < 0, f2 = 1/8 > 0.
    assert_eq!(s.sign_vector(&[5, 3]).unwrap(), vec![-1, 1]);
    // Base cells are not full-dimension in a 2-variable state.
    assert!(s.sign_vector(&[1]).is_err());
    assert!(s.sign_vector(&[99, 1]).is_err());
}

#[test]
fn sign_vector_univariate_section() {
    let o1 = VarOrder::new(vec!["x1"]).unwrap();
    let p = parse_poly("x1^2 - 2", &o1).unwrap();
    let s = CadState::build(&[p], &o1).unwrap();
    // Cells: (−∞,−√2), [−√2], (−√2,√2), [√2], (√2,∞).
    assert_eq!(s.sign_vector(&[1]).unwrap(), vec![1]);
    assert_eq!(s.sign_vector(&[2]).unwrap(), vec![0]);
    assert_eq!(s.sign_vector(&[3]).unwrap(), vec![-1]);
}

#[test]
fn save_load_round_trip_byte_identical() {
    let s = state_f1();
    let text1 = s.save();
    let loaded = CadState::load(&text1).unwrap();
    let text2 = loaded.save();
    assert_eq!(text1, text2);
    // And across an incremental add.
    let s2 = s.add(&f4()).unwrap();
    let t1 = s2.save();
    let t2 = CadState::load(&t1).unwrap().save();
    assert_eq!(t1, t2);
}

#[test]
fn load_rejects_truncated_document() {
    let s = state_f1();
    let text = s.save();
    let truncated = &text[..text.len() / 2];
    assert!(matches!(
        CadState::load(truncated),
        Err(CadError::Schema { .. })
    ));
}

#[test]
fn load_rejects_zero_denominator() {
    let s = state_f1();
    let text = s.save().replace("\"-2/1\"", "\"-2/0\"");
    assert!(matches!(
        CadState::load(&text),
        Err(CadError::Schema { .. })
    ));
}

#[test]
fn recompute_oracle_detects_tampering() {
    let s = state_f1();
    assert!(s.recompute_oracle().unwrap().is_empty());
    // Push the sample of the middle cell over (0, α1) outside its stack
    // interval (its x2 bounds are roughly ±0.354).
    let mut levels: Vec<Vec<crate::lifting::Cell>> = s.tree().levels().to_vec();
    let cell = levels[1]
        .iter_mut()
        .find(|c| c.index == vec![5, 3])
        .unwrap();
    cell.sample = Some(vec![q("1/2"), q("100")]);
    let mut tampered = s.clone();
    tampered.tree = crate::lifting::CadTree::from_parts(2, levels).unwrap();
    let diff = tampered.recompute_oracle().unwrap();
    assert!(!diff.is_empty());
}

#[test]
fn sign_invariance_probes_pass() {
    let s = state_f1();
    let violations = s.sign_invariance_violations(10).unwrap();
    assert!(violations.is_empty(), "{violations:?}");
    let s3 = s.add(&f4()).unwrap();
    let violations3 = s3.sign_invariance_violations(10).unwrap();
    assert!(violations3.is_empty(), "{violations3:?}");
}
