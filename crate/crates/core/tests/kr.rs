mod common;

use common::{in_hull, q};
use krcyclo_core::exactgeom::lattice::FaceLattice;
use krcyclo_core::exactgeom::{QVector, QQ};
use krcyclo_core::kr::{
    combinatorial_structure, generator, is_generic, kr_polytope, lipschitz_polytope, metric_from_heights,
    sample_generic_metric, verify_cyclohedral_type, MetricJson, QuasiMetric,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn matrix(rows: &[&[(i64, i64)]]) -> QuasiMetric {
    QuasiMetric::from_matrix(rows.iter().map(|r| r.iter().map(|&(a, b)| q(a, b)).collect()).collect()).unwrap()
}

fn from_ints(n: usize, xs: &[i64]) -> QuasiMetric {
    let rho = (0..n)
        .map(|i| (0..n).map(|j| if i == j { QQ::zero() } else { q(xs[i * n + j], 1) }).collect())
        .collect();
    QuasiMetric::from_matrix(rho).unwrap()
}

/// Shortest-path closure, which turns any positive matrix into a quasi-metric.
fn closure(m: &QuasiMetric) -> QuasiMetric {
    let n = m.n();
    let mut d: Vec<QVector> = m.matrix().to_vec();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &d[i][k] + &d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    QuasiMetric::from_matrix(d).unwrap()
}

fn positive_matrix() -> impl Strategy<Value = QuasiMetric> {
    (3usize..=5).prop_flat_map(|n| prop::collection::vec(1i64..=6, n * n).prop_map(move |xs| from_ints(n, &xs)))
}

fn symmetric_matrix() -> impl Strategy<Value = QuasiMetric> {
    (3usize..=5).prop_flat_map(|n| {
        prop::collection::vec(1i64..=6, n * n).prop_map(move |xs| {
            let sym: Vec<i64> = (0..n * n).map(|k| xs[(k / n).min(k % n) * n + (k / n).max(k % n)]).collect();
            from_ints(n, &sym)
        })
    })
}

#[test]
fn validation_examples() {
    let u = QuasiMetric::uniform(4).validate();
    assert!(u.is_quasi && u.is_strict && u.is_symmetric);
    let c = QuasiMetric::clock(4).validate();
    assert!(c.is_quasi && !c.is_strict && !c.is_symmetric);
    let r = QuasiMetric::cyclohedral(4).validate();
    assert!(r.is_quasi && r.is_strict && !r.is_symmetric);

    let mut bad = QuasiMetric::uniform(3).matrix().to_vec();
    bad[0][0] = q(1, 1);
    bad[1][2] = q(-1, 1);
    let v = QuasiMetric::from_matrix(bad).unwrap().validate();
    assert!(!v.is_quasi);
    assert!(v.violations.iter().any(|s| s.contains("ρ(1,1)")));
    assert!(v.violations.iter().any(|s| s.contains("ρ(2,3)")));
}

#[test]
fn clock_metric() {
    let d = QuasiMetric::clock(4);
    assert_eq!(d.rho(1, 2), &q(1, 1));
    assert_eq!(d.rho(2, 1), &q(3, 1));
    for n in 3..=7 {
        let d = QuasiMetric::clock(n);
        for i in 1..=n {
            assert!(d.rho(i, i).is_zero());
            for j in (1..=n).filter(|&j| j != i) {
                assert_eq!(d.rho(i, j) + d.rho(j, i), q(n as i64, 1));
            }
        }
    }
}

#[test]
fn cyclohedral_metric_values() {
    let m3 = QuasiMetric::cyclohedral(3);
    assert_eq!((m3.rho(1, 2), m3.rho(1, 3)), (&q(4, 3), &q(5, 3)));
    let m4 = QuasiMetric::cyclohedral(4);
    assert_eq!((m4.rho(1, 2), m4.rho(1, 3), m4.rho(1, 4)), (&q(9, 4), &q(7, 2), &q(15, 4)));
    assert!(m4.rho(1, 3) < &(m4.rho(1, 2) + m4.rho(2, 3)));
    for n in 3..=12 {
        assert_eq!(metric_from_heights(n).unwrap(), QuasiMetric::cyclohedral(n), "n = {n}");
    }
}

#[test]
fn metric_json() {
    let j = QuasiMetric::cyclohedral(4).to_json();
    assert_eq!(j.rho[0], vec!["0", "9/4", "7/2", "15/4"]);
    let text = serde_json::to_string(&j).unwrap();
    let back: MetricJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_metric().unwrap(), QuasiMetric::cyclohedral(4));
    let bad = MetricJson { n: 3, rho: vec![vec!["0".into(), "1".into()]] };
    assert!(bad.to_metric().is_err());
}

#[test]
fn epsilon_metric() {
    let m = QuasiMetric::epsilon(4, &q(1, 8)).unwrap();
    assert_eq!((m.rho(1, 2), m.rho(1, 3), m.rho(1, 4)), (&q(7, 8), &q(3, 2), &q(15, 8)));
    assert!(QuasiMetric::epsilon(4, &q(2, 1)).is_err());
    let zero = QuasiMetric::epsilon(4, &QQ::zero()).unwrap();
    assert_eq!(zero, QuasiMetric::clock(4));
    assert!(!zero.validate().is_strict);
    // Conjecture check: reported, not asserted.
    let rep = verify_cyclohedral_type(&m).unwrap();
    eprintln!("epsilon metric n = 4, ε = 1/8: cyclohedral type {}", if rep.pass { "holds" } else { "fails" });
}

#[test]
fn kr_examples() {
    for n in 3..=5 {
        let kr = kr_polytope(&QuasiMetric::uniform(n)).unwrap();
        let root: Vec<QVector> = (1..=n)
            .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| {
                let mut v = vec![QQ::zero(); n];
                v[i - 1] = QQ::one();
                v[j - 1] = -QQ::one();
                v
            })
            .collect();
        let expected = krcyclo_core::exactgeom::VPolytope::hull(&root).unwrap();
        assert!(kr.polytope.same_vertex_set(&expected));
    }
    let kr = kr_polytope(&QuasiMetric::cyclohedral(4)).unwrap();
    assert_eq!(kr.polytope.vertices().len(), 12);
    assert_eq!(FaceLattice::of_polytope(&kr.polytope).f_vector(), vec![12, 30, 20, 1]);

    let bad = matrix(&[&[(0, 1), (1, 1), (10, 1)], &[(1, 1), (0, 1), (1, 1)], &[(1, 1), (1, 1), (0, 1)]]);
    let kr = kr_polytope(&bad).unwrap();
    assert_eq!(kr.interior_generators, vec![(1, 3)]);
}

#[test]
fn clock_generators_sit_on_edges() {
    let kr = kr_polytope(&QuasiMetric::clock(4)).unwrap();
    assert!(kr.interior_generators.is_empty());
    assert!(kr.non_vertex_generators.contains(&(1, 3)));
}

#[test]
fn lipschitz_examples() {
    let hex = lipschitz_polytope(&QuasiMetric::uniform(3)).vertices_h0().unwrap();
    assert_eq!(FaceLattice::of_polytope(&hex).f_vector(), vec![6, 6, 1]);
    let w4 = lipschitz_polytope(&QuasiMetric::cyclohedral(4)).vertices_h0().unwrap();
    assert_eq!(FaceLattice::of_polytope(&w4).f_vector(), vec![20, 30, 12, 1]);
    let pinned = lipschitz_polytope(&QuasiMetric::cyclohedral(4)).vertices_pinned().unwrap();
    assert_eq!(pinned.vertices().len(), 20);
    assert!(pinned.vertices().iter().all(|v| v[3].is_zero()));
}

#[test]
fn lipschitz_is_polar_of_kr() {
    for n in 3..=5 {
        let mut metrics = vec![QuasiMetric::uniform(n), QuasiMetric::cyclohedral(n)];
        let seeds = if n == 5 { 1 } else { 5 };
        metrics.extend((0..seeds).map(|s| sample_generic_metric(n, s).unwrap()));
        for m in metrics {
            let kr = kr_polytope(&m).unwrap();
            let lip = lipschitz_polytope(&m).vertices_h0().unwrap();
            assert!(kr.polytope.polar_dual().unwrap().same_vertex_set(&lip), "n = {n}");
        }
    }
}

#[test]
fn cyclohedral_type() {
    for n in 3..=6 {
        let rep = verify_cyclohedral_type(&QuasiMetric::cyclohedral(n)).unwrap();
        assert!(rep.pass, "n = {n}: {:?}", rep.mismatch);
        assert_eq!(rep.kr_f_vector, rep.arcs_f_vector);
    }
    assert!(!verify_cyclohedral_type(&QuasiMetric::uniform(4)).unwrap().pass);
    for n in 4..=5 {
        let alpha: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
        let m = QuasiMetric::cyclohedral(n).relabel(&alpha);
        assert!(verify_cyclohedral_type(&m).unwrap().pass);
    }
}

#[test]
fn face_digraphs() {
    let kr = kr_polytope(&QuasiMetric::cyclohedral(4)).unwrap();
    let faces = combinatorial_structure(&kr);
    for f in &faces {
        assert!(f.is_forest && f.degree_dichotomy);
        assert_eq!(f.edges.len() as isize, f.dim + 1);
        if f.dim == 0 {
            assert_eq!(f.edges.len(), 1);
        }
    }
    assert_eq!(faces.iter().filter(|f| f.dim == 2).count(), 20);

    let root = kr_polytope(&QuasiMetric::uniform(4)).unwrap();
    let squares: Vec<_> = combinatorial_structure(&root).into_iter().filter(|f| f.face.len() == 4).collect();
    assert_eq!(squares.len(), 6);
    assert!(squares.iter().all(|f| f.edges.len() == 4 && !f.is_forest));

    let g = sample_generic_metric(4, 11).unwrap();
    assert!(combinatorial_structure(&kr_polytope(&g).unwrap()).iter().all(|f| f.is_forest && f.degree_dichotomy));
}

#[test]
fn genericity() {
    assert!(is_generic(&QuasiMetric::cyclohedral(4)).unwrap());
    assert!(!is_generic(&QuasiMetric::uniform(4)).unwrap());
    assert!(!is_generic(&QuasiMetric::clock(4)).unwrap());
}

#[test]
fn generic_samples_share_an_f_vector() {
    let m = sample_generic_metric(3, 7).unwrap();
    assert_eq!(FaceLattice::of_polytope(&kr_polytope(&m).unwrap().polytope).f_vector(), vec![6, 6, 1]);
    for seed in 1..=20 {
        let m = sample_generic_metric(4, seed).unwrap();
        assert!(m.validate().is_symmetric);
        assert!(is_generic(&m).unwrap());
        let f = FaceLattice::of_polytope(&kr_polytope(&m).unwrap().polytope).f_vector();
        assert_eq!(f, vec![12, 30, 20, 1], "seed {seed}");
    }
    assert_eq!(sample_generic_metric(4, 3).unwrap(), sample_generic_metric(4, 3).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn interior_generator_iff_triangle_violation(m in positive_matrix()) {
        let v = m.validate();
        let kr = kr_polytope(&m).unwrap();
        prop_assert_eq!(v.is_quasi, kr.interior_generators.is_empty());
        if v.is_strict {
            prop_assert_eq!(kr.polytope.vertices().len(), m.n() * (m.n() - 1));
        }
        // Membership by LP agrees with the hull engine.
        let n = m.n();
        for &(i, j) in &kr.non_vertex_generators {
            let others: Vec<QVector> = (1..=n)
                .flat_map(|a| (1..=n).map(move |b| (a, b)))
                .filter(|&(a, b)| a != b && (a, b) != (i, j))
                .map(|(a, b)| generator(&m, a, b))
                .collect();
            prop_assert!(in_hull(&generator(&m, i, j), &others));
        }
    }

    #[test]
    fn quasi_metrics_have_no_interior_generators(m in positive_matrix()) {
        let c = closure(&m);
        prop_assert!(c.validate().is_quasi);
        prop_assert!(kr_polytope(&c).unwrap().interior_generators.is_empty());
    }

    #[test]
    fn scaling(m in positive_matrix(), num in 1i64..=5, den in 1i64..=5) {
        let m = closure(&m);
        let c = q(num, den);
        let a = kr_polytope(&m.scaled(&c)).unwrap().polytope;
        let b = kr_polytope(&m).unwrap().polytope.scaled(&(QQ::one() / &c)).unwrap();
        prop_assert!(a.same_vertex_set(&b));
    }

    #[test]
    fn symmetric_iff_centrally_symmetric(m in symmetric_matrix(), a in positive_matrix()) {
        let s = closure(&m);
        prop_assert!(s.validate().is_symmetric);
        prop_assert!(kr_polytope(&s).unwrap().polytope.is_centrally_symmetric());
        let a = closure(&a);
        prop_assert_eq!(a.validate().is_symmetric, kr_polytope(&a).unwrap().polytope.is_centrally_symmetric());
    }
}
