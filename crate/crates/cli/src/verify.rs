//! One orchestrator per theorem check.

use krcyclo_core::cyclo::{self, build_root_polytope, cyclohedron_closed_form};
use krcyclo_core::exactgeom::io::PolytopeJson;
use krcyclo_core::exactgeom::lattice::FaceLattice;
use krcyclo_core::exactgeom::triangulate::complex_f_vector;
use krcyclo_core::exactgeom::{qq, zono_delta, QQ, QVector};
use krcyclo_core::kr::{self, QuasiMetric};
use krcyclo_core::nestohedra::{self, Hypergraph};
use krcyclo_core::transport::{self, random_pair};
use krcyclo_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Theorem;
use crate::{CliError, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Number of sampled metrics for `gp`.
    pub seeds: usize,
    /// Measure pairs per metric for `duality`.
    pub pairs: usize,
    /// Generic metrics sampled for `duality`.
    pub generic_metrics: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: 0, seeds: 20, pairs: 50, generic_metrics: 5 }
    }
}

pub fn verify(theorem: Theorem, n: usize, opts: &VerifyOptions) -> Result<VerificationReport, CliError> {
    match theorem {
        Theorem::A => verify_a(n),
        Theorem::B => verify_b(n),
        Theorem::Gp => verify_gp(n, opts),
        Theorem::Tight => verify_tight(n),
        Theorem::Duality => verify_duality(n, opts),
        Theorem::Unimodular => verify_unimodular(n),
        Theorem::Quasitoric => verify_quasitoric(n),
    }
}

/// Proper-face f-vector of the boundary of the dual cyclohedron, i.e.
/// `f_k = f_{n−2−k}(Wₙ)` for `k = 0..n−2`.
pub fn dual_cyclohedron_f_vector(n: usize) -> Vec<usize> {
    (0..n - 1).map(|k| cyclohedron_closed_form(n, n - 2 - k)).collect()
}

fn proper_f_vector(lattice: &FaceLattice) -> Vec<usize> {
    let mut f = lattice.f_vector();
    f.pop();
    f
}

fn verify_a(n: usize) -> Result<VerificationReport, CliError> {
    let mut r = VerificationReport::new("A", n);
    let root = build_root_polytope(n)?;
    r.hash_input("root", &PolytopeJson::from_polytope(&root.polytope));
    r.check("root_minkowski", root.minkowski_ok);
    let t = match cyclo::boundary_triangulation_via_phi(&root) {
        Ok(t) => t,
        Err(Error::Degenerate(msg)) => {
            r.check("non_degenerate", false).witness(msg);
            return Ok(r);
        }
        Err(e) => return Err(e.into()),
    };
    r.check("non_degenerate", true);
    let rep = cyclo::verify_triangulation(&t, &root)?;
    r.check("volume_cover", rep.volume_cover)
        .check("interiors_disjoint", rep.interiors_disjoint)
        .check("pseudomanifold", rep.pseudomanifold)
        .check("euler_characteristic", rep.euler_characteristic == rep.expected_euler)
        .check("f_vector", rep.f_vector == dual_cyclohedron_f_vector(n));
    for w in &rep.witnesses {
        r.witness(w.clone());
    }
    let mut per_facet: Vec<usize> = t.by_facet.values().map(Vec::len).collect();
    per_facet.sort_unstable();
    r.detail("cells", rep.cells)
        .detail("f_vector", &rep.f_vector)
        .detail("euler_characteristic", rep.euler_characteristic)
        .detail("pairs_checked", rep.pairs_checked)
        .detail("facets", root.polytope.facets().len())
        .detail("cells_per_facet", per_facet);
    Ok(r)
}

fn verify_b(n: usize) -> Result<VerificationReport, CliError> {
    let mut r = VerificationReport::new("B", n);
    let m = QuasiMetric::cyclohedral(n);
    r.hash_input("metric", &m.to_json());
    let v = m.validate();
    r.check("strict_quasi_metric", v.is_quasi && v.is_strict);
    for w in v.violations.iter().take(3) {
        r.witness(w.clone());
    }
    let from_heights = kr::metric_from_heights(n)?;
    r.check("height_ratio", from_heights == m);
    let rep = kr::verify_cyclohedral_type(&m)?;
    r.check("lattice_isomorphic", rep.pass);
    if let Some(face) = &rep.mismatch {
        r.witness(format!("face {{{}}} has no counterpart", face.join(",")));
    }
    if let Some(note) = &rep.note {
        r.witness(note.clone());
    }
    r.detail("kr_f_vector", &rep.kr_f_vector).detail("arcs_f_vector", &rep.arcs_f_vector);
    Ok(r)
}

fn verify_gp(n: usize, opts: &VerifyOptions) -> Result<VerificationReport, CliError> {
    let mut r = VerificationReport::new("gp", n);
    let expected = dual_cyclohedron_f_vector(n);
    let mut all_match = true;
    let mut all_generic = true;
    for s in opts.seed..opts.seed + opts.seeds as u64 {
        let m = kr::sample_generic_metric(n, s)?;
        r.hash_input(&format!("metric_seed_{s}"), &m.to_json());
        let kr = kr::kr_polytope(&m)?;
        all_generic &= kr.non_vertex_generators.is_empty() && kr::is_generic(&m)?;
        let f = proper_f_vector(&FaceLattice::of_polytope(&kr.polytope));
        if f != expected {
            all_match = false;
            r.witness(format!("seed {s}: f-vector {f:?}"));
        }
    }
    r.check("generic", all_generic).check("f_vector", all_match);
    r.detail("expected_f_vector", &expected).detail("seeds", opts.seeds);
    Ok(r)
}

fn tightness_rows(r: &mut VerificationReport, label: &str, f: &Hypergraph, n: usize, expect_tight: bool) {
    let rep = nestohedra::is_tight(f);
    r.hash_input(label, &f.to_json());
    r.check(format!("{label}_tight"), rep.tight == expect_tight);
    if rep.tight != expect_tight {
        r.witness(format!("{label}: witnesses {:?}", rep.witnesses));
    }
    if n <= 5 {
        let cc = nestohedra::tightness_cross_check(f);
        r.check(format!("{label}_lp_agrees"), cc.agree);
    }
}

fn verify_tight(n: usize) -> Result<VerificationReport, CliError> {
    let mut r = VerificationReport::new("tight", n);
    tightness_rows(&mut r, "cyclic", &nestohedra::cyclic_edges(n), n, true);
    if n <= 7 {
        for k in 2..n {
            tightness_rows(&mut r, &format!("bc{k}"), &nestohedra::bc_family(n, k)?, n, true);
        }
    }
    if n == 4 {
        let path = nestohedra::path_edges(4);
        tightness_rows(&mut r, "path", &path, n, false);
        let rep = nestohedra::is_tight(&path);
        r.check("path_witness_23", rep.witnesses.contains(&vec![2, 3]));
        r.detail("path_witnesses", &rep.witnesses);
    }
    let closure = nestohedra::building_closure(&nestohedra::cyclic_edges(n));
    r.detail("cyclic_closure_size", closure.len());
    Ok(r)
}

fn metrics_for_duality(n: usize, opts: &VerifyOptions) -> Result<Vec<(String, QuasiMetric)>, CliError> {
    let mut ms = vec![
        ("uniform".to_string(), QuasiMetric::uniform(n)),
        ("clock".to_string(), QuasiMetric::clock(n)),
        ("cyclohedral".to_string(), QuasiMetric::cyclohedral(n)),
    ];
    for s in opts.seed..opts.seed + opts.generic_metrics as u64 {
        ms.push((format!("generic_{s}"), kr::sample_generic_metric(n, s)?));
    }
    Ok(ms)
}

/// `Zono(Δₙ⁰)` for the standard simplex moved to its centroid.
pub fn centered_simplex_zonotope(n: usize) -> Result<krcyclo_core::exactgeom::VPolytope, CliError> {
    let c = QQ::new(1.into(), (n as i64).into());
    let pts: Vec<QVector> = (0..n)
        .map(|i| (0..n).map(|k| if k == i { QQ::from_integer(1.into()) - &c } else { -c.clone() }).collect())
        .collect();
    Ok(zono_delta(&pts)?)
}

fn verify_duality(n: usize, opts: &VerifyOptions) -> Result<VerificationReport, CliError> {
    let mut r = VerificationReport::new("duality", n);
    if n == 4 {
        let root = build_root_polytope(4)?;
        let polar = root.polytope.polar_dual()?;
        r.check("root_polar_is_zonotope", polar.same_vertex_set(&centered_simplex_zonotope(4)?));
    }
    let mut pair_total = 0;
    for (idx, (name, m)) in metrics_for_duality(n, opts)?.into_iter().enumerate() {
        r.hash_input(&name, &m.to_json());
        let kr = kr::kr_polytope(&m)?;
        let lip = kr::lipschitz_polytope(&m).vertices_h0()?;
        r.check(format!("{name}_lip_is_polar"), kr.polytope.polar_dual()?.same_vertex_set(&lip));
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_mul(1000).wrapping_add(idx as u64));
        let mut ok = true;
        for _ in 0..opts.pairs {
            let (mu, nu) = random_pair(n, &mut rng);
            let d = transport::duality_check(&m, &mu, &nu)?;
            if !(d.agree && d.certified) {
                ok = false;
                r.witness(format!(
                    "{name}: μ = {:?}, ν = {:?}: transport {}, gauge {}, sup {}",
                    qq::format_vec(mu.mass()),
                    qq::format_vec(nu.mass()),
                    d.transport,
                    d.gauge,
                    d.lipschitz_sup
                ));
            }
            pair_total += 1;
        }
        r.check(format!("{name}_transport_duality"), ok);
    }
    r.detail("pairs", pair_total);
    Ok(r)
}

fn verify_unimodular(n: usize) -> Result<VerificationReport, CliError> {
    let mut r = VerificationReport::new("unimodular", n);
    let root = build_root_polytope(n)?;
    r.hash_input("root", &PolytopeJson::from_polytope(&root.polytope));
    let u = cyclo::unimodularity(&root)?;
    r.check("equal_spanning_volumes", u.equal_volumes());
    if !u.equal_volumes() {
        r.witness(format!("spanning simplices have normalized volumes {}", u.volumes.join(", ")));
        for (v, ex) in u.volumes.iter().zip(&u.examples) {
            let labels: Vec<String> = ex.iter().map(|(i, j)| format!("e{i}-e{j}")).collect();
            r.witness(format!("normalized volume {v}: {{{}}}", labels.join(", ")));
        }
    }
    let phi = cyclo::boundary_triangulation_via_phi(&root)?;
    let pulling = cyclo::pulling_triangulation(&root)?;
    let f_phi = phi.f_vector();
    let f_pull = complex_f_vector(&pulling);
    r.check("pulling_matches_phi", f_phi == f_pull);
    r.detail("volumes", &u.volumes)
        .detail("simplices", u.simplices)
        .detail("facetwise_unimodular", u.facetwise_unimodular)
        .detail("phi_f_vector", &f_phi)
        .detail("pulling_f_vector", &f_pull);
    Ok(r)
}

fn verify_quasitoric(n: usize) -> Result<VerificationReport, CliError> {
    let mut r = VerificationReport::new("quasitoric", n);
    let rep = cyclo::lattice_basis_check(n)?;
    let vertices = cyclohedron_closed_form(n, 0);
    r.check("families_are_vertices", rep.families == vertices)
        .check("unimodular_at_every_vertex", rep.all_unimodular);
    if let Some(f) = &rep.first_failure {
        r.witness(format!("family {f} does not give a lattice basis"));
    }
    r.detail("families", rep.families);
    Ok(r)
}
