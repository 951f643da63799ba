mod common;

use common::{oracle_transport, q};
use krcyclo_core::exactgeom::{QVector, QQ};
use krcyclo_core::kr::{sample_generic_metric, QuasiMetric};
use krcyclo_core::transport::network::solve_transportation;
use krcyclo_core::transport::{
    duality_check, kr_gauge, lipschitz_sup, random_pair, random_probability, transport_cost, MeasureJson, PlanJson,
    SignedMeasure, MEASURE_DENOMINATOR,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn measure(xs: &[(i64, i64)]) -> SignedMeasure {
    SignedMeasure::new(xs.iter().map(|&(a, b)| q(a, b)).collect())
}

fn delta(n: usize, i: usize) -> SignedMeasure {
    SignedMeasure::new((1..=n).map(|k| if k == i { q(1, 1) } else { q(0, 1) }).collect())
}

fn metrics(n: usize) -> Vec<QuasiMetric> {
    vec![QuasiMetric::uniform(n), QuasiMetric::clock(n), QuasiMetric::cyclohedral(n)]
}

/// Measures with masses in `ℤ/k`, as integer numerators summing to `k`.
fn numerators(n: usize, k: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0..=k, n - 1).prop_map(move |mut cuts| {
        cuts.sort_unstable();
        let mut out = Vec::with_capacity(n);
        let mut prev = 0;
        for c in cuts {
            out.push(c - prev);
            prev = c;
        }
        out.push(k - prev);
        out
    })
}

#[test]
fn examples() {
    let p = transport_cost(&QuasiMetric::uniform(3), &delta(3, 1), &delta(3, 2)).unwrap();
    assert_eq!(p.cost, q(1, 1));
    assert_eq!(p.flows, vec![(1, 2, q(1, 1))]);

    let p = transport_cost(&QuasiMetric::cyclohedral(3), &delta(3, 1), &delta(3, 2)).unwrap();
    assert_eq!(p.cost, q(4, 3));

    let mu = measure(&[(1, 2), (1, 2), (0, 1)]);
    let nu = measure(&[(0, 1), (1, 2), (1, 2)]);
    let m = QuasiMetric::uniform(3);
    assert_eq!(transport_cost(&m, &mu, &nu).unwrap().cost, q(1, 2));
    assert_eq!(kr_gauge(&m, mu.minus(&nu).mass()).unwrap(), q(1, 2));
    assert_eq!(oracle_transport(&[1, 1, 0], &[0, 1, 1], &vec![vec![q(0, 1), q(1, 1), q(1, 1)], vec![q(1, 1), q(0, 1), q(1, 1)], vec![q(1, 1), q(1, 1), q(0, 1)]], 2), q(1, 2));

    let same = transport_cost(&m, &mu, &mu).unwrap();
    assert!(same.cost.is_zero() && same.flows.is_empty());
    assert!(transport_cost(&m, &mu, &measure(&[(1, 1), (1, 1), (0, 1)])).is_err());
}

#[test]
fn gauge_of_root_directions() {
    for m in metrics(4) {
        for i in 1..=4 {
            for j in (1..=4).filter(|&j| j != i) {
                let mut z = vec![QQ::zero(); 4];
                z[i - 1] = q(1, 1);
                z[j - 1] = q(-1, 1);
                assert_eq!(&kr_gauge(&m, &z).unwrap(), m.rho(i, j));
            }
        }
        assert!(kr_gauge(&m, &[QQ::zero(), QQ::zero(), QQ::zero(), QQ::zero()]).unwrap().is_zero());
        assert!(kr_gauge(&m, &[q(1, 1), QQ::zero(), QQ::zero(), QQ::zero()]).is_err());
    }
}

#[test]
fn duality_on_named_metrics() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in metrics(4) {
        for _ in 0..50 {
            let (mu, nu) = random_pair(4, &mut rng);
            let r = duality_check(&m, &mu, &nu).unwrap();
            assert!(r.agree && r.certified, "{r:?}");
        }
    }
}

#[test]
fn gauge_is_asymmetric_for_the_cyclohedral_metric() {
    for n in 3..=6 {
        let m = QuasiMetric::cyclohedral(n);
        let mut z = vec![QQ::zero(); n];
        z[0] = q(1, 1);
        z[1] = q(-1, 1);
        let back: QVector = z.iter().map(|x| -x).collect();
        assert_ne!(kr_gauge(&m, &z).unwrap(), kr_gauge(&m, &back).unwrap(), "n = {n}");
    }
}

#[test]
fn random_measures() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 3..=6 {
        for _ in 0..20 {
            let mu = random_probability(n, &mut rng);
            assert!(mu.is_probability());
            let den = QQ::from_integer(MEASURE_DENOMINATOR.into());
            assert!(mu.mass().iter().all(|x| (x * &den).is_integer()));
        }
    }
    let a: Vec<_> = (0..5).map(|_| random_pair(4, &mut ChaCha8Rng::seed_from_u64(9))).collect();
    assert!(a.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn json_round_trips() {
    let mu = measure(&[(1, 2), (1, 2), (0, 1), (0, 1)]);
    let j = mu.to_json();
    assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"n":4,"mass":["1/2","1/2","0","0"]}"#);
    let back: MeasureJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
    assert_eq!(back.to_measure().unwrap(), mu);

    let m = QuasiMetric::cyclohedral(4);
    let plan = transport_cost(&m, &mu, &delta(4, 3)).unwrap();
    let text = serde_json::to_string(&plan.to_json()).unwrap();
    let pj: PlanJson = serde_json::from_str(&text).unwrap();
    assert_eq!(pj, plan.to_json());
    assert_eq!(pj.cost, "23/8");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn network_simplex_matches_enumeration(
        supply in numerators(3, 4),
        demand in numerators(3, 4),
        costs in prop::collection::vec(0i64..=9, 9),
    ) {
        let cost: Vec<Vec<QQ>> = (0..3).map(|i| (0..3).map(|j| q(costs[i * 3 + j], 1)).collect()).collect();
        let s: Vec<QQ> = supply.iter().map(|&x| q(x, 4)).collect();
        let d: Vec<QQ> = demand.iter().map(|&x| q(x, 4)).collect();
        // Zero rows and columns are legal inputs to the solver.
        let sol = solve_transportation(&s, &d, &cost);
        prop_assert_eq!(&sol.cost, &oracle_transport(&supply, &demand, &cost, 4));
        for i in 0..3 {
            for j in 0..3 {
                prop_assert!(&sol.u[i] + &sol.v[j] <= cost[i][j]);
            }
        }
    }

    #[test]
    fn transport_matches_enumeration(n in 3usize..=4, a in numerators(4, 4), b in numerators(4, 4), which in 0usize..3) {
        let (a, b) = (&a[..n - 1], &b[..n - 1]);
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        a.push(4 - a.iter().sum::<i64>());
        b.push(4 - b.iter().sum::<i64>());
        prop_assume!(a.iter().chain(&b).all(|&x| x >= 0));
        let m = &metrics(n)[which];
        let mu = SignedMeasure::new(a.iter().map(|&x| q(x, 4)).collect());
        let nu = SignedMeasure::new(b.iter().map(|&x| q(x, 4)).collect());
        let plan = transport_cost(m, &mu, &nu).unwrap();
        prop_assert!(plan.certify(m, &mu, &nu));
        prop_assert_eq!(plan.cost, oracle_transport(&a, &b, m.matrix(), 4));
    }

    #[test]
    fn gauge_properties(seed in 0u64..1000, num in 1i64..=7, den in 1i64..=7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = QuasiMetric::cyclohedral(4);
        let (a, b) = random_pair(4, &mut rng);
        let (c, d) = random_pair(4, &mut rng);
        let x = a.minus(&b);
        let y = c.minus(&d);
        let sum: QVector = x.mass().iter().zip(y.mass()).map(|(p, r)| p + r).collect();
        let gx = kr_gauge(&m, x.mass()).unwrap();
        let gy = kr_gauge(&m, y.mass()).unwrap();
        prop_assert!(kr_gauge(&m, &sum).unwrap() <= &gx + &gy);
        let k = q(num, den);
        let scaled: QVector = x.mass().iter().map(|p| p * &k).collect();
        prop_assert_eq!(kr_gauge(&m, &scaled).unwrap(), &gx * &k);
        prop_assert_eq!(lipschitz_sup(&m, x.mass()).unwrap(), gx.clone());
        // Sanity bound.
        let max = m.matrix().iter().flatten().max().unwrap().clone();
        let l1: QQ = x.mass().iter().map(|p| p.abs()).sum();
        prop_assert!(gx <= l1 * max);
    }

    #[test]
    fn duality_on_generic_metrics(seed in 0u64..50, pair_seed in 0u64..1000, n in 3usize..=5) {
        let m = sample_generic_metric(n, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(pair_seed);
        let (mu, nu) = random_pair(n, &mut rng);
        let r = duality_check(&m, &mu, &nu).unwrap();
        prop_assert!(r.agree && r.certified);
        // Complementary slackness on the support of the plan.
        let plan = transport_cost(&m, &mu, &nu).unwrap();
        for (i, j, _) in &plan.flows {
            prop_assert_eq!(&plan.potential[i - 1] - &plan.potential[j - 1], m.rho(*i, *j).clone());
        }
        prop_assert!(plan.flows.iter().all(|(_, _, x)| x.is_positive()));
    }
}
