use super::*;
use crate::cfrac::LabelList;

fn setup(r: u64, a: u64) -> (Quiver, Vec<Relation>) {
    let q = Quiver::from_group(r, a).unwrap();
    let rels = generate_relations(&q);
    (q, rels)
}

fn names(q: &Quiver, terms: &[Term]) -> Vec<(i64, String)> {
    terms.iter().map(|t| (t.coeff, q.path_name(&t.path))).collect()
}

#[test]
fn seven_two_shapes() {
    let (q, rels) = setup(7, 2);
    let cx = resolution_of_simple(&q, &rels, 2);
    assert_eq!(cx.ranks(), vec![1, 2, 1]);
    assert_eq!(cx.terms[1].multiplicities(), BTreeMap::from([(0, 1), (1, 1)]));
    assert_eq!(cx.terms[2].multiplicities(), BTreeMap::from([(2, 1)]));
    // d_2 = (a_{1,2}, −c_{0,2}) up to the orientation of the relation
    let mut col: Vec<(i64, String)> = (0..2).flat_map(|row| names(&q, cx.maps[1].entry(row, 0))).collect();
    if col.iter().any(|(c, n)| n == "a_{1,2}" && *c < 0) {
        col.iter_mut().for_each(|t| t.0 = -t.0);
    }
    col.sort();
    assert_eq!(col, vec![(-1, "c_{0,2}".to_string()), (1, "a_{1,2}".to_string())]);

    let cx = resolution_of_simple(&q, &rels, 1);
    assert_eq!(cx.ranks(), vec![1, 4, 3]);
    assert_eq!(cx.terms[1].multiplicities(), BTreeMap::from([(0, 3), (2, 1)]));
    assert_eq!(cx.terms[2].multiplicities(), BTreeMap::from([(1, 3)]));

    let cx = resolution_of_simple(&q, &rels, 0);
    assert_eq!(cx.ranks(), vec![1, 2, 3, 2]);
    assert_eq!(cx.terms[1].multiplicities(), BTreeMap::from([(1, 1), (2, 1)]));
    assert_eq!(cx.terms[2].multiplicities(), BTreeMap::from([(0, 3)]));
    assert_eq!(cx.terms[3].multiplicities(), BTreeMap::from([(1, 2)]));
}

#[test]
fn big_label_second_differential_shape() {
    // vertex 2 of [4,3,4]: ∂ of c_{2,1}a_{1,2} = k_3c_{0,3}c_{3,2} and k_3a_{0,1}a_{1,2} = a_{2,3}c_{3,2}
    let q = build_quiver(&LabelList::new(vec![4, 3, 4]).unwrap()).unwrap();
    let rels = generate_relations(&q);
    let cx = resolution_of_simple(&q, &rels, 2);
    assert_eq!(cx.ranks(), vec![1, 3, 2]);
    assert_eq!(cx.terms[1].multiplicities(), BTreeMap::from([(0, 1), (1, 1), (3, 1)]));
    let mut all: Vec<(i64, String)> = cx.maps[1].entries.iter().flat_map(|e| names(&q, &e.terms)).collect();
    all.iter_mut().for_each(|t| t.0 = t.0.abs());
    all.sort();
    let want: Vec<(i64, String)> = ["a_{0,1}a_{1,2}", "a_{1,2}", "c_{0,3}c_{3,2}", "c_{3,2}"]
        .iter()
        .map(|s| (1, s.to_string()))
        .collect();
    assert_eq!(all, want);
}

#[test]
fn shapes_follow_the_labels() {
    for labels in [&[4, 3, 4][..], &[2, 5], &[3], &[2, 2, 2], &[6, 2, 3]] {
        let labels = LabelList::new(labels.to_vec()).unwrap();
        let q = build_quiver(&labels).unwrap();
        let rels = generate_relations(&q);
        for t in 1..=q.n() {
            let alpha = labels.alpha(t) as usize;
            assert_eq!(resolution_of_simple(&q, &rels, t).ranks(), vec![1, alpha, alpha - 1], "{labels} t={t}");
        }
        let gamma = labels.gamma();
        let r0 = resolution_of_simple(&q, &rels, 0).ranks();
        if gamma == 0 {
            assert_eq!(r0, vec![1, 2, 1]);
        } else {
            assert_eq!(r0, vec![1, 2, gamma + 1, gamma]);
        }
    }
}

#[test]
fn resolutions_are_exact() {
    for (r, a) in [(4, 3), (7, 2), (11, 3), (3, 1), (2, 1), (5, 3)] {
        let (q, rels) = setup(r, a);
        let d = default_degree(r);
        let auto = QuotientAutomaton::build(&q, &rels, d, Schedule::Forward, &Limits::default()).unwrap();
        for t in 0..q.vertex_count() {
            let cx = resolution_of_simple(&q, &rels, t);
            let rep = verify_exactness(&q, &cx, &auto).unwrap();
            assert!(rep.passed, "({r},{a}) t={t}: {:?}", rep.failures);
            assert!(rep.bidegrees_checked > 0);
            let expect = if t == 0 && a != r - 1 { 3 } else { 2 };
            assert_eq!(rep.projective_dimension, expect);
        }
    }
}

#[test]
fn broken_differential_is_caught() {
    let (q, rels) = setup(7, 2);
    let auto = QuotientAutomaton::build(&q, &rels, 16, Schedule::Forward, &Limits::default()).unwrap();
    let mut cx = resolution_of_simple(&q, &rels, 0);
    cx.maps[2].entries[0].terms[0].coeff *= -1;
    let rep = verify_exactness(&q, &cx, &auto).unwrap();
    assert!(!rep.passed);
    assert!(rep.failures.iter().any(|f| matches!(f, ExactnessFailure::NonzeroComposite { .. })));

    let mut cx = resolution_of_simple(&q, &rels, 1);
    cx.terms.pop();
    cx.maps.pop();
    let rep = verify_exactness(&q, &cx, &auto).unwrap();
    assert!(!rep.passed);
    assert!(matches!(rep.failures[0], ExactnessFailure::Euler { .. } | ExactnessFailure::Homology { .. }));
}

#[test]
fn global_dimension_examples() {
    assert_eq!(global_dimension(5, 4).unwrap().value, 2);
    let g = global_dimension(7, 2).unwrap();
    assert_eq!((g.value, g.verified), (3, true));
    assert_eq!(g.projective_dimensions, vec![3, 2, 2]);
    assert_eq!(global_dimension(3, 1).unwrap().value, 3);
}

#[test]
fn simple_counts() {
    assert_eq!(simple_count(40, 11).unwrap(), 4);
    assert_eq!(simple_count(2, 1).unwrap(), 2);
    assert_eq!(simple_count(693, 256).unwrap(), 8);
}
