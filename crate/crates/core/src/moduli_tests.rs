use num_bigint::BigInt;
use rand::{Rng, SeedableRng};

use super::*;
use crate::cfrac::hj_value;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn random_rat(rng: &mut impl Rng) -> BigRational {
    let n = rng.gen_range(-9..=9);
    rat(if rng.gen_bool(0.2) { 0 } else { n }, rng.gen_range(1..=7))
}

fn setup(r: u64, a: u64) -> (Quiver, Vec<Relation>) {
    let q = build_quiver(&hj_expand(r, a).unwrap()).unwrap();
    let rels = generate_relations(&q);
    (q, rels)
}

fn value(q: &Quiver, rep: &Representation, name: &str) -> BigRational {
    rep.values[q.arrows().iter().find(|a| a.name == name).unwrap().id].clone()
}

#[test]
fn chart_examples() {
    let cs = charts(7, 2).unwrap();
    assert_eq!((cs[0].coord_c, cs[0].coord_d), ((7, 0), (-2, 1)));
    let cs = charts(40, 11).unwrap();
    assert_eq!((cs[2].coord_c, cs[2].coord_d), ((4, -4), (-1, 11)));
    assert_eq!(cs.len(), 4);
    assert_eq!(cs[3].coord_d, (0, 40));
    for r in 2..=60u64 {
        for a in 1..r {
            if crate::cfrac::gcd(r, a) == 1 {
                assert!(charts(r, a).unwrap().iter().all(|c| c.determinant() == r as i128));
            }
        }
    }
}

#[test]
fn transitions() {
    let tc = transition_check(40, 11, 1).unwrap();
    assert!(tc.passed && tc.alpha == 4);
    assert!(transition_check(9, 1, 1).unwrap().passed);
    assert!(matches!(transition_check(9, 1, 2), Err(Error::InvalidChart { .. })));
    assert!(matches!(transition_check(9, 1, 0), Err(Error::InvalidChart { .. })));
}

#[test]
fn seven_two_chart_zero() {
    let (q, rels) = setup(7, 2);
    let zero = chart_representation_on(&q, &rels, 0, (&rat(0, 1), &rat(0, 1))).unwrap();
    for name in ["k_{1}", "k_{2}", "a_{1,2}"] {
        assert!(value(&q, &zero, name).is_zero());
    }
    assert!(stability_check(&q, &zero));
    let (p, s) = (rat(3, 2), rat(-5, 7));
    let rep = chart_representation_on(&q, &rels, 0, (&p, &s)).unwrap();
    assert_eq!(value(&q, &rep, "k_{1}"), &p * &s);
    assert_eq!(value(&q, &rep, "k_{2}"), &p * &s * &s);
    assert_eq!(value(&q, &rep, "a_{1,2}"), &p * &s * &s * &s);
}

#[test]
fn every_chart_propagates() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    for r in 2..=24u64 {
        for a in 1..r {
            if crate::cfrac::gcd(r, a) != 1 {
                continue;
            }
            let (q, rels) = setup(r, a);
            for t in 0..=q.n() {
                for point in [(rat(0, 1), rat(0, 1)), (random_rat(&mut rng), random_rat(&mut rng))] {
                    let rep = chart_representation_on(&q, &rels, t, (&point.0, &point.1))
                        .unwrap_or_else(|e| panic!("({r},{a}) chart {t}: {e}"));
                    assert!(rep.satisfies(&rels));
                    assert!(stability_check(&q, &rep));
                }
            }
        }
    }
}

#[test]
fn eleven_three_chart_one() {
    let (q, rels) = setup(11, 3);
    assert_eq!(rels.len(), 9);
    let rep = chart_representation(11, 3, 1, &rat(2, 3), &rat(-4, 5)).unwrap();
    assert!(rep.satisfies(&rels));
    assert!(stability_check(&q, &rep));
}

#[test]
fn unstable_representations() {
    let (q, _) = setup(7, 2);
    let zero = Representation::zero(&q);
    assert!(!stability_check(&q, &zero));
    let mut one = Representation::zero(&q);
    one.values[q.acw(0)] = rat(1, 1);
    assert!(!stability_check(&q, &one));
}

#[test]
fn overlaps() {
    let iso = chart_overlap_iso(7, 2, 1, &rat(1, 1), &rat(1, 1)).unwrap();
    assert_eq!(iso.target_point, (rat(1, 1), rat(1, 1)));
    let iso = chart_overlap_iso(5, 4, 2, &rat(3, 1), &rat(1, 1)).unwrap();
    assert_eq!(iso.target_point, (rat(1, 1), rat(3, 1)));
    let iso = chart_overlap_iso(7, 2, 1, &rat(0, 1), &rat(1, 1)).unwrap();
    assert_eq!(iso.target_point, (rat(1, 1), rat(0, 1)));
    let iso = chart_overlap_iso(11, 3, 2, &rat(2, 5), &rat(-3, 2)).unwrap();
    let mut want = vec![rat(1, 1); 3];
    want[2] = rat(-2, 3);
    assert_eq!(iso.lambda, want);
    assert_eq!(chart_overlap_iso(7, 2, 1, &rat(1, 1), &rat(0, 1)).unwrap_err(), Error::NotInOverlap { t: 1 });
    assert!(matches!(chart_overlap_iso(7, 2, 0, &rat(1, 1), &rat(1, 1)), Err(Error::InvalidChart { .. })));
}

#[test]
fn overlap_sweep() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    for (r, a) in [(2, 1), (3, 1), (5, 2), (7, 2), (7, 3), (11, 3), (13, 8), (40, 11)] {
        let (q, rels) = setup(r, a);
        for t in 1..=q.n() {
            for _ in 0..5 {
                let p = random_rat(&mut rng);
                let mut s = random_rat(&mut rng);
                if s.is_zero() {
                    s = rat(1, 3);
                }
                chart_overlap_iso_on(&q, &rels, t, &p, &s).unwrap_or_else(|e| panic!("({r},{a}) t={t}: {e}"));
            }
        }
    }
}

#[test]
fn dual_graphs() {
    assert_eq!(dual_graph(40, 11).unwrap().labels, vec![-4, -3, -4]);
    assert_eq!(dual_graph(7, 2).unwrap().labels, vec![-4, -2]);
    assert_eq!(dual_graph(6, 5).unwrap().labels, vec![-2; 5]);
    let g = dual_graph(73, 27).unwrap();
    let params = hj_value(&g.to_labels().unwrap()).unwrap();
    assert_eq!((params.r(), params.a()), (73, 27));
    assert_eq!(g.to_dot().matches("--").count(), 4);
}
