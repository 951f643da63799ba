mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{in_hull, oracle_facets, q};
use itertools::Itertools;
use krcyclo_core::arcs::{self, all_arcs, enumerate_admissible, AdmissibleFamily, Arc, Dihedral};
use krcyclo_core::cyclo::{
    boundary_triangulation_via_phi, build_root_polytope, cyclohedron_closed_form, cyclohedron_f_vector,
    dihedral_coordinate_image, dihedral_equivariance, interiors_intersect, lattice_basis_check, phi_image,
    pulling_triangulation, root_basis_matrix, unimodularity, verify_triangulation, TriangulationJson,
};
use krcyclo_core::exactgeom::lattice::FaceLattice;
use krcyclo_core::exactgeom::triangulate::complex_f_vector;
use krcyclo_core::exactgeom::{linalg, QVector, QQ};
use num_traits::{One, Signed};

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Coordinates in the basis `eₖ − eₖ₊₁` are partial sums.
fn partial_sums(v: &[QQ]) -> QVector {
    v.iter()
        .take(v.len() - 1)
        .scan(QQ::from_integer(0.into()), |acc, x| {
            *acc += x;
            Some(acc.clone())
        })
        .collect()
}

#[test]
fn phi_is_injective() {
    assert_eq!(phi_image(&Arc::new(3, 1, 2).unwrap()), vec![q(1, 1), q(-1, 1), q(0, 1)]);
    for n in 3..=7 {
        let images: BTreeSet<QVector> = all_arcs(n).iter().map(phi_image).collect();
        assert_eq!(images.len(), n * (n - 1));
    }
}

#[test]
fn root_polytopes() {
    let r3 = build_root_polytope(3).unwrap();
    assert_eq!(r3.lattice.f_vector(), vec![6, 6, 1]);
    let r4 = build_root_polytope(4).unwrap();
    assert_eq!(r4.lattice.f_vector(), vec![12, 24, 14, 1]);
    for n in 3..=6 {
        let r = build_root_polytope(n).unwrap();
        assert!(r.minkowski_ok);
        assert!(r.polytope.vertices().iter().all(|v| {
            let neg: QVector = v.iter().map(|x| -x).collect();
            r.polytope.vertex_index(&neg).is_some()
        }));
        for f in 0..r.polytope.facets().len() {
            let (p, q) = r.facet_product(f).expect("facet is a product of simplices");
            let expected: BTreeSet<(usize, usize)> = p.iter().cartesian_product(&q).map(|(&i, &j)| (i, j)).collect();
            let got: BTreeSet<(usize, usize)> =
                r.polytope.facets()[f].vertices.iter().map(|&v| r.labels[v]).collect();
            assert_eq!(got, expected);
        }
    }
    assert!(build_root_polytope(7).is_err());
}

#[test]
fn root_facets_match_brute_force() {
    // Brute force runs in a full-dimensional chart: drop the last coordinate.
    for n in 3..=4 {
        let r = build_root_polytope(n).unwrap();
        let chart: Vec<QVector> = r.polytope.vertices().iter().map(|v| v[..n - 1].to_vec()).collect();
        let oracle = oracle_facets(&chart);
        let ours: BTreeSet<BTreeSet<QVector>> = r
            .polytope
            .facets()
            .iter()
            .map(|f| f.vertices.iter().map(|&v| chart[v].clone()).collect())
            .collect();
        assert_eq!(ours, oracle, "n = {n}");
    }
}

#[test]
fn triangulation_small_cases() {
    let r3 = build_root_polytope(3).unwrap();
    let t3 = boundary_triangulation_via_phi(&r3).unwrap();
    assert_eq!(t3.cells.len(), 6);
    assert!(t3.by_facet.values().all(|c| c.len() == 1));

    let r4 = build_root_polytope(4).unwrap();
    let t4 = boundary_triangulation_via_phi(&r4).unwrap();
    assert_eq!(t4.cells.len(), 20);
    assert_eq!(t4.f_vector(), vec![12, 30, 20]);
    let mut per_facet: Vec<usize> = t4.by_facet.values().map(Vec::len).collect();
    per_facet.sort_unstable();
    assert_eq!(per_facet, [vec![1; 8], vec![2; 6]].concat());
    for (f, cells) in &t4.by_facet {
        let facet = &r4.polytope.facets()[*f];
        for &c in cells {
            assert!(t4.cells[c].vertices.iter().all(|v| facet.vertices.contains(v)));
        }
    }
}

#[test]
fn triangulation_verifies() {
    for n in 3..=5 {
        let root = build_root_polytope(n).unwrap();
        let t = boundary_triangulation_via_phi(&root).unwrap();
        let rep = verify_triangulation(&t, &root).unwrap();
        assert!(rep.pass(), "n = {n}: {:?}", rep.witnesses);
        assert_eq!(rep.expected_euler, if n % 2 == 0 { 2 } else { 0 });

        // Reversed proper-face f-vector of the cyclohedron.
        let counts = arcs::family_counts(n).unwrap();
        assert_eq!(t.f_vector(), counts[1..].to_vec());

        // Ridges, counted directly.
        let mut ridges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for c in t.vertex_cells() {
            for r in c.iter().copied().combinations(c.len() - 1) {
                *ridges.entry(r.into_iter().sorted().collect()).or_default() += 1;
            }
        }
        assert!(ridges.values().all(|&m| m == 2));

        // No cell centroid lies in another cell.
        if n <= 4 {
            for (a, b) in t.cells.iter().tuple_combinations() {
                let k = QQ::from_integer((a.points.len() as i64).into());
                let centroid: QVector =
                    (0..n).map(|c| a.points.iter().map(|p| &p[c]).sum::<QQ>() / &k).collect();
                assert!(!in_hull(&centroid, &b.points));
            }
        }
    }
}

#[test]
fn overlapping_cells_are_detected() {
    let tri = |pts: &[[i64; 3]]| -> Vec<QVector> { pts.iter().map(|p| p.iter().map(|&x| q(x, 1)).collect()).collect() };
    let a = tri(&[[0, 0, 0], [2, 0, -2], [0, 2, -2]]);
    let b = tri(&[[1, 1, -2], [2, 2, -4], [1, 0, -1]]);
    let c = tri(&[[2, 0, -2], [0, 2, -2], [2, 2, -4]]);
    assert!(interiors_intersect(&a, &b));
    assert!(!interiors_intersect(&a, &c));
}

#[test]
fn pulling_matches_phi() {
    for n in 3..=5 {
        let root = build_root_polytope(n).unwrap();
        let phi = boundary_triangulation_via_phi(&root).unwrap();
        let pull = pulling_triangulation(&root).unwrap();
        assert_eq!(complex_f_vector(&pull), phi.f_vector(), "n = {n}");
        if n == 3 {
            assert_eq!(pull.len(), 6);
        }
    }
}

#[test]
fn cyclohedron_counts() {
    assert_eq!(cyclohedron_f_vector(3).unwrap().enumerated, vec![6, 6, 1]);
    assert_eq!(cyclohedron_f_vector(4).unwrap().enumerated, vec![20, 30, 12, 1]);
    for n in 3..=7 {
        let f = cyclohedron_f_vector(n).unwrap();
        assert!(f.agree);
        for k in 0..n {
            let direct = factorial(2 * n - 2 - k) / (factorial(n - 1 - k).pow(2) * factorial(k));
            assert_eq!(f.enumerated[k] as u128, direct);
            assert_eq!(cyclohedron_closed_form(n, k) as u128, direct);
        }
        assert_eq!(f.enumerated[0], [6, 20, 70, 252, 924][n - 3]);
        // Simion's product indexes faces by codimension.
        assert_eq!(f.simion.iter().rev().copied().collect::<Vec<_>>(), f.enumerated);
    }
}

#[test]
fn lattice_basis() {
    let t1 = AdmissibleFamily::new(4, vec![Arc::new(4, 3, 2).unwrap(), Arc::new(4, 4, 2).unwrap(), Arc::new(4, 4, 1).unwrap()])
        .unwrap();
    assert_eq!(linalg::determinant(&root_basis_matrix(&t1)).abs(), QQ::one());
    let rows: Vec<QVector> = [(3, 2), (4, 2), (4, 1)].iter().map(|&(s, t)| partial_sums(&phi_image(&Arc::new(4, s, t).unwrap()))).collect();
    assert_eq!(rows, vec![vec![q(0, 1), q(-1, 1), q(0, 1)], vec![q(0, 1), q(-1, 1), q(-1, 1)], vec![q(-1, 1), q(-1, 1), q(-1, 1)]]);
    assert_eq!(linalg::determinant(&rows), q(-1, 1));

    for n in 3..=7 {
        let rep = lattice_basis_check(n).unwrap();
        assert!(rep.all_unimodular, "n = {n}: {:?}", rep.first_failure);
        assert_eq!(rep.families, cyclohedron_closed_form(n, 0));
    }
    // Independent recomputation with partial sums.
    for n in 3..=5 {
        for f in enumerate_admissible(n, Some(n - 1)).unwrap() {
            let m: Vec<QVector> = f.arcs().iter().map(|a| partial_sums(&phi_image(a))).collect();
            assert_eq!(linalg::determinant(&m).abs(), QQ::one());
        }
    }
}

#[test]
fn spanning_simplex_volumes() {
    let r3 = build_root_polytope(3).unwrap();
    let u = unimodularity(&r3).unwrap();
    assert_eq!(u.volumes, vec!["1", "2", "3"]);
    assert!(u.facetwise_unimodular);
    assert!(!u.equal_volumes());

    // Recount in lattice coordinates over all vertex triples.
    let verts: Vec<QVector> = r3.polytope.vertices().iter().map(|v| partial_sums(v)).collect();
    let mut vols = BTreeSet::new();
    for s in (0..verts.len()).combinations(3) {
        let rows: Vec<QVector> = s[1..]
            .iter()
            .map(|&k| verts[k].iter().zip(&verts[s[0]]).map(|(a, b)| a - b).collect())
            .collect();
        let d = linalg::determinant(&rows).abs();
        if d.is_positive() {
            vols.insert(d);
        }
    }
    assert_eq!(vols, BTreeSet::from([q(1, 1), q(2, 1), q(3, 1)]));

    let u4 = unimodularity(&build_root_polytope(4).unwrap()).unwrap();
    assert!(u4.facetwise_unimodular);
    assert!(!u4.equal_volumes());
}

#[test]
fn dihedral_symmetry() {
    for n in 3..=6 {
        assert!(dihedral_equivariance(n));
        let root = build_root_polytope(n).unwrap();
        let lattice = FaceLattice::of_polytope(&root.polytope);
        for g in Dihedral::elements(n) {
            for v in root.polytope.vertices() {
                assert!(root.polytope.vertex_index(&dihedral_coordinate_image(&g, v)).is_some());
            }
        }
        assert_eq!(lattice.f_vector(), root.lattice.f_vector());
    }
}

#[test]
fn triangulation_json() {
    let root = build_root_polytope(4).unwrap();
    let t = boundary_triangulation_via_phi(&root).unwrap();
    let j = t.to_json(&root);
    let text = serde_json::to_string(&j).unwrap();
    let back: TriangulationJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back, j);
    assert_eq!(back.cells.len(), 20);
    assert_eq!(back.facets.len(), 14);
}
