//! Acceptance suite: one PASS/FAIL line per criterion, with the measured
//! values and the pinned tolerances.

use std::collections::VecDeque;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vtg_core::catalog;
use vtg_core::discretize::{discretize, verify_qi};
use vtg_core::family::FamilySpec;
use vtg_core::gh::{
    certify_family, circle_bound, circle_certificate, gh_bruteforce, gh_estimate, gh_lower_bounds, map_distortion, CircleOptions,
};
use vtg_core::graph::LabeledGraph;
use vtg_core::groups::{
    build_cayley, commutator_width_check, normal_closure_bounded_check, GenSet, GroupElement, GroupSpec, DEFAULT_BUDGET,
};
use vtg_core::limits::{convergence_table, sumset_convexity_gap, LimitModel};
use vtg_core::metric::{bfs, diameter, greedy_cover, multi_source, radius_of_freedom, weighted_word_length, FiniteMetricSpace, PointMetric};
use vtg_core::structure::{find_fat_triangle, max_caret_branch, verify_geodesic_cycle, GeodesicTriangle};

/// Criteria that fail as specified; see the README. The binary still exits
/// with failure if one of them starts passing or any other criterion fails.
const KNOWN_RED: &[u32] = &[11];

/// Float slack for comparisons between independently computed quantities.
const EPS: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn run(id: u32, name: &str, limit: Duration, check: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = check();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let pass = o.pass && in_time;
    println!(
        "{} [{id:>2}] {name}: {} ({:.2}s of {}s{})",
        if pass { "PASS" } else { "FAIL" },
        o.detail,
        elapsed.as_secs_f64(),
        limit.as_secs(),
        if in_time { "" } else { ", over time" }
    );
    pass
}

fn all_pairs(g: &LabeledGraph) -> Vec<Vec<u32>> {
    (0..g.num_vertices()).map(|v| bfs(g, v).into_raw()).collect()
}

// 1

fn heisenberg_sizes() -> Outcome {
    let spec: FamilySpec = "heisenberg".parse().unwrap();
    let bad: Vec<usize> = (3..=16)
        .filter(|&n| spec.build(n, DEFAULT_BUDGET).unwrap().graph.num_vertices() != n * n * n)
        .collect();
    outcome(bad.is_empty(), format!("n = 3..16 give n^3 vertices; mismatches {bad:?}"))
}

// 2

/// Largest distance from the identity to an element of the center.
fn central_fiber_diameter(n: i64) -> u32 {
    let spec = GroupSpec::heisenberg(n).unwrap();
    let cay = build_cayley(&spec, &GenSet::standard(&spec), DEFAULT_BUDGET).unwrap();
    let from_id = bfs(&cay.graph, cay.vertex_of(&spec.identity()).unwrap());
    (0..n).map(|c| from_id.raw()[cay.vertex_of(&GroupElement::Unipotent { a: 0, b: 0, c }).unwrap()]).max().unwrap()
}

fn heisenberg_diameters() -> Outcome {
    let spec: FamilySpec = "heisenberg".parse().unwrap();
    let mut ratios = Vec::new();
    let mut fibers = Vec::new();
    for n in 4..=16 {
        let d = diameter(&spec.build(n, DEFAULT_BUDGET).unwrap().graph).unwrap();
        ratios.push(d as f64 / n as f64);
        fibers.push(central_fiber_diameter(n as i64) as f64 / (n as f64).sqrt());
    }
    let spread = |v: &[f64]| v.iter().cloned().fold(f64::MIN, f64::max) / v.iter().cloned().fold(f64::MAX, f64::min);
    let (dr, fr) = (spread(&ratios), spread(&fibers));
    outcome(dr <= 2.0 && fr <= 3.0, format!("diameter/n spread {dr:.3} <= 2, fiber/sqrt(n) spread {fr:.3} <= 3"))
}

// 3

fn circle_certification() -> Outcome {
    let ns = [50, 100, 200, 400];
    let c = certify_family(&"cyclic".parse().unwrap(), &LimitModel::Circle, &ns, 0.1, 200, 1, DEFAULT_BUDGET).unwrap();
    let bounds: Vec<f64> = c.report.rows.iter().map(|r| r.gh_upper).collect();
    let within = c.report.rows.iter().all(|r| r.gh_upper <= 4.0 / r.n as f64 + EPS);
    let decreasing = bounds.windows(2).all(|w| w[1] < w[0]);
    outcome(c.pass && within && decreasing, format!("bounds {bounds:.4?} <= 4/n, strictly decreasing"))
}

// 4

fn torus_certification() -> Outcome {
    let torus: FamilySpec = "torus-2".parse().unwrap();
    let model: LimitModel = "l1-torus-2".parse().unwrap();
    let table = convergence_table(&torus, &model, &[20, 40, 80], 2000, 3, DEFAULT_BUDGET).unwrap();
    let errors: Vec<f64> = table.rows.iter().map(|r| r.max_error).collect();
    let within = table.rows.iter().all(|r| r.max_error <= 5.0 / r.n as f64);
    let shifted = certify_family(&"shifted-base-2".parse().unwrap(), &model, &[10, 20, 40], 0.1, 400, 3, DEFAULT_BUDGET).unwrap();
    let last = shifted.report.rows.last().unwrap().gh_upper;
    outcome(
        within && shifted.pass,
        format!("torus errors {errors:?} <= 5/n; shifted-base certifies with final bound {last:.3} <= 0.1"),
    )
}

// 5

/// Fatness recomputed from all-pairs distances.
fn fatness_oracle(rows: &[Vec<u32>], t: &GeodesicTriangle) -> u32 {
    (0..rows.len())
        .map(|v| t.sides.iter().map(|s| s.iter().map(|&u| rows[v][u]).min().unwrap()).sum::<u32>())
        .min()
        .unwrap()
}

fn sides_are_geodesics(g: &LabeledGraph, rows: &[Vec<u32>], t: &GeodesicTriangle) -> bool {
    let closed = (0..3).all(|i| t.sides[i].last() == t.sides[(i + 1) % 3].first());
    let geodesic = t.sides.iter().all(|s| {
        s.windows(2).all(|w| g.has_edge(w[0], w[1])) && rows[s[0]][*s.last().unwrap()] as usize == s.len() - 1
    });
    closed && geodesic
}

fn fat_triangles() -> Outcome {
    let mut graphs: Vec<(String, LabeledGraph)> = vec![
        ("C12".into(), catalog::cycle(12)),
        ("C31".into(), catalog::cycle(31)),
        ("C64".into(), catalog::cycle(64)),
        ("prism6".into(), catalog::prism(6)),
        ("prism15".into(), catalog::prism(15)),
        ("torus4x4".into(), catalog::grid_torus(4, 4)),
        ("torus6x9".into(), catalog::grid_torus(6, 9)),
        ("torus12x12".into(), catalog::grid_torus(12, 12)),
        ("petersen".into(), catalog::petersen()),
        ("K5".into(), catalog::complete(5)),
    ];
    for n in 3..=5 {
        let h = GroupSpec::heisenberg(n).unwrap();
        graphs.push((format!("heisenberg{n}"), build_cayley(&h, &GenSet::standard(&h), DEFAULT_BUDGET).unwrap().graph));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    for (name, g) in &graphs {
        let rows = all_pairs(g);
        let d = diameter(g).unwrap();
        let delta = d as f64 / 8.0;
        match find_fat_triangle(g, delta, 5000, &mut rng) {
            Ok(t) if sides_are_geodesics(g, &rows, &t) && fatness_oracle(&rows, &t) as f64 >= delta => {}
            other => failures.push(format!("{name}: {:?}", other.map(|t| t.fatness))),
        }
    }
    outcome(failures.is_empty(), format!("{} catalog graphs, D/8-fat triangle in each; failures {failures:?}", graphs.len()))
}

// 6

fn caret_bound() -> Outcome {
    let lambda = 4f64.ln() / 3f64.ln();
    let graphs = [
        ("tree(3,5)", catalog::regular_tree_ball(3, 5)),
        ("tree(3,6)", catalog::regular_tree_ball(3, 6)),
        ("torus10x10", catalog::grid_torus(10, 10)),
        ("torus8x16", catalog::grid_torus(8, 16)),
        ("torus16x16", catalog::grid_torus(16, 16)),
    ];
    let mut checked = 0;
    let mut bad = Vec::new();
    for (name, g) in &graphs {
        let rows = all_pairs(g);
        let ecc = rows[0].iter().copied().max().unwrap();
        for r_max in 1..=ecc {
            let Some(caret) = max_caret_branch(g, 0, r_max).caret else { continue };
            let ball = rows[caret.center].iter().filter(|&&d| d <= caret.r).count() as f64;
            checked += 1;
            if !caret.verify(g) || ball < (caret.r as f64).powf(lambda) {
                bad.push(format!("{name} R={}", caret.r));
            }
        }
    }
    let cycles_zero = (3..=100).all(|n| max_caret_branch(&catalog::cycle(n), 0, n as u32 / 2).r == 0);
    outcome(
        bad.is_empty() && checked > 0 && cycles_zero,
        format!("{checked} carets with |B(R)| >= R^log3(4), violations {bad:?}; C_n carets all 0 for n <= 100: {cycles_zero}"),
    )
}

// 7

fn euclidean(pts: Vec<Vec<f64>>) -> FiniteMetricSpace {
    FiniteMetricSpace::from_points(pts, PointMetric::Euclidean).unwrap()
}

fn random_planar(rng: &mut ChaCha8Rng, k: usize, spread: f64) -> FiniteMetricSpace {
    euclidean((0..k).map(|_| vec![rng.gen::<f64>() * spread, rng.gen::<f64>() * spread]).collect())
}

fn circle_sample(m: usize, circumference: f64) -> FiniteMetricSpace {
    let pts = (0..m).map(|i| vec![circumference * i as f64 / m as f64]).collect();
    FiniteMetricSpace::from_points(pts, PointMetric::Circle { circumference }).unwrap()
}

fn graph_space(g: LabeledGraph) -> FiniteMetricSpace {
    FiniteMetricSpace::from_graph(g).unwrap()
}

fn fixture_pairs(rng: &mut ChaCha8Rng) -> Vec<(FiniteMetricSpace, FiniteMetricSpace)> {
    let mut pairs = Vec::new();
    for _ in 0..30 {
        let (a, b) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
        let (sa, sb) = (rng.gen_range(0.5..3.0), rng.gen_range(0.5..3.0));
        pairs.push((random_planar(rng, a, sa), random_planar(rng, b, sb)));
    }
    for n in 3..=7 {
        pairs.push((graph_space(catalog::cycle(n)), circle_sample(14 - n, n as f64)));
        pairs.push((graph_space(catalog::cycle(n)), graph_space(catalog::complete(n))));
    }
    for k in 2..=6 {
        pairs.push((graph_space(catalog::star(k)), graph_space(catalog::cycle(k + 1))));
        pairs.push((graph_space(catalog::star(k)).normalized(), circle_sample(6, 2.0)));
    }
    pairs.push((graph_space(catalog::petersen()), graph_space(catalog::complete(4))));
    pairs.push((graph_space(catalog::prism(3)), graph_space(catalog::cycle(6))));
    pairs.push((graph_space(catalog::prism(4)), circle_sample(6, 4.0)));
    pairs.push((graph_space(catalog::grid_torus(3, 3)), graph_space(catalog::cycle(5))));
    pairs.push((euclidean(vec![vec![0.0]]), graph_space(catalog::complete(6))));
    pairs
}

fn gh_oracle_sandwich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pairs = fixture_pairs(&mut rng);
    let mut bad = Vec::new();
    for (i, (x, y)) in pairs.iter().enumerate() {
        let exact = gh_bruteforce(x, y).unwrap();
        let lower = gh_lower_bounds(x, y).value;
        let mut uppers = vec![gh_estimate(x, y, None).unwrap().upper];
        for _ in 0..4 {
            let f: Vec<usize> = (0..x.len()).map(|_| rng.gen_range(0..y.len())).collect();
            uppers.push(map_distortion(x, y, &f).unwrap().gh_upper);
        }
        let f: Vec<usize> = (0..x.len()).map(|j| j % y.len()).collect();
        uppers.push(map_distortion(x, y, &f).unwrap().gh_upper);
        if lower > exact + EPS || uppers.iter().any(|&u| u < exact - EPS) {
            bad.push(i);
        }
    }

    // circle formula against a fine circle sample, on certified geodesic
    // cycles and on whatever the full certificate finds itself
    let mut certified = 0;
    let cases: Vec<(LabeledGraph, Vec<usize>)> = vec![
        (catalog::cycle(5), (0..5).collect()),
        (catalog::cycle(6), (0..6).collect()),
        (catalog::cycle(7), (0..7).collect()),
        (catalog::cycle(8), (0..8).collect()),
        (catalog::prism(3), (0..3).collect()),
        (catalog::prism(4), (0..4).collect()),
        (catalog::prism(5), (0..5).collect()),
        (catalog::grid_torus(3, 3), vec![0, 1, 2]),
    ];
    for (g, cycle) in cases {
        let m = 14 - g.num_vertices();
        let exact = gh_bruteforce(&graph_space(g.clone()).normalized(), &circle_sample(m, 2.0)).unwrap();
        let d = diameter(&g).unwrap();
        let mut bounds = Vec::new();
        if verify_geodesic_cycle(&g, &cycle).unwrap() {
            let h = multi_source(&g, &cycle).into_iter().max().unwrap();
            bounds.push(circle_bound(cycle.len(), h, d));
        }
        for params in [(1, 1), (2, 1), (2, 2)] {
            let opts = CircleOptions { c: 0.5, net_params: Some(params), ..Default::default() };
            if let Ok(cert) = circle_certificate(&g, &opts) {
                bounds.push(cert.bound);
            }
        }
        certified += bounds.len();
        if bounds.iter().any(|b| b + 1.0 / m as f64 + EPS < exact) {
            bad.push(1000 + g.num_vertices());
        }
    }

    // metric properties on small spaces
    let mut pool: Vec<FiniteMetricSpace> = (1..=6).map(|k| random_planar(&mut rng, k, 2.0)).collect();
    pool.push(graph_space(catalog::cycle(5)));
    pool.push(graph_space(catalog::star(3)));
    pool.push(circle_sample(4, 3.0));
    let n = pool.len();
    let table: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| gh_bruteforce(&pool[i], &pool[j]).unwrap()).collect()).collect();
    let mut prop_bad = 0;
    for i in 0..n {
        prop_bad += usize::from(table[i][i] > EPS);
        for j in 0..n {
            prop_bad += usize::from((table[i][j] - table[j][i]).abs() > EPS);
            for k in 0..n {
                prop_bad += usize::from(table[i][k] > table[i][j] + table[j][k] + EPS);
            }
        }
    }
    outcome(
        bad.is_empty() && prop_bad == 0 && pairs.len() >= 50 && certified >= 8,
        format!(
            "{} pairs, sandwich violations {bad:?}; {certified} circle bounds dominate; {} triples, property violations {prop_bad}",
            pairs.len(),
            n * n * n
        ),
    )
}

// 8

/// Least `l1` length of a nonzero relation `sum n_i e_i = 0`, by enumerating
/// every integer vector up to `max_len`.
fn shortest_relation(spec: &GroupSpec, e: &[GroupElement], max_len: i64) -> Option<i64> {
    let k = e.len();
    let mut best: Option<i64> = None;
    let mut coeffs = vec![-max_len; k];
    loop {
        let len: i64 = coeffs.iter().map(|c| c.abs()).sum();
        if len > 0 && len <= max_len && best.is_none_or(|b| len < b) {
            let mut acc = spec.identity();
            for (c, g) in coeffs.iter().zip(e) {
                let base = if *c < 0 { spec.inverse(g) } else { g.clone() };
                acc = spec.multiply(&acc, &spec.power(&base, c.unsigned_abs()));
            }
            if acc == spec.identity() {
                best = Some(len);
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return best;
            }
            coeffs[i] += 1;
            if coeffs[i] <= max_len {
                break;
            }
            coeffs[i] = -max_len;
            i += 1;
        }
    }
}

fn radius_of_freedom_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut tested = 0;
    let mut bad = Vec::new();
    while tested < 24 {
        let m = rng.gen_range(1..=3);
        let basis: Vec<Vec<i64>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { rng.gen_range(2..=7) } else { rng.gen_range(-2..=2) }).collect())
            .collect();
        let Ok(spec) = GroupSpec::abelian_quotient(basis.clone()) else { continue };
        let k = rng.gen_range(1..=3);
        let e: Vec<GroupElement> =
            (0..k).map(|_| GroupElement::Lattice((0..m).map(|_| rng.gen_range(-3..=3)).collect())).collect();
        let Ok(e) = e.into_iter().map(|g| spec.canonical(g)).collect::<Result<Vec<_>, _>>() else { continue };
        if e.iter().all(|g| *g == spec.identity()) {
            continue;
        }
        // relations of length <= 20 only
        let Some(len) = shortest_relation(&spec, &e, 20) else { continue };
        let expected = ((len + 1) / 2 - 1) as u32;
        let got = radius_of_freedom(&spec, &e).unwrap();
        tested += 1;
        if got != expected {
            bad.push(format!("basis {basis:?}: {got} vs {expected}"));
        }
    }
    outcome(bad.is_empty(), format!("{tested} random lattice quotients match the relation oracle; mismatches {bad:?}"))
}

// 9

fn algebraic_checks() -> Outcome {
    let mut notes = Vec::new();
    let sandwich_ok = (10..=50).all(|n| {
        let d = GroupSpec::dihedral(n).unwrap();
        let r = GroupElement::Dihedral { rot: 1, flip: false };
        let s = GroupElement::Dihedral { rot: 0, flip: true };
        let u = GenSet::symmetric(&d, vec![r.clone(), s]).unwrap();
        weighted_word_length(&d, &u, &[r], DEFAULT_BUDGET).unwrap().holds
    });
    notes.push(format!("dihedral sandwich n=10..50 {sandwich_ok}"));

    let width_ok = (3..=7).all(|n| {
        let h = GroupSpec::heisenberg(n).unwrap();
        commutator_width_check(&h, 2, DEFAULT_BUDGET).unwrap().holds
    });
    notes.push(format!("two commutators cover [G,G] for heisenberg 3..7 {width_ok}"));

    let mut closure_ok = true;
    for n in 3..=4 {
        let h = GroupSpec::heisenberg(n).unwrap();
        let gens = GenSet::standard(&h);
        for g in h.elements(DEFAULT_BUDGET).unwrap() {
            closure_ok &= normal_closure_bounded_check(&h, &gens, &g, 2, DEFAULT_BUDGET).unwrap().holds;
        }
    }
    notes.push(format!("bounded conjugate closure on every element of heisenberg 3..4 {closure_ok}"));

    let sets: Vec<Vec<Vec<f64>>> = vec![
        vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]],
        vec![vec![0.0, 0.0], vec![2.0, 1.0], vec![-2.0, -1.0], vec![1.0, 2.0], vec![-1.0, -2.0]],
        vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![-1.0, -1.0]],
        vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.5, 0.8], vec![-0.5, -0.8], vec![0.5, -0.8], vec![-0.5, 0.8]],
        vec![vec![0.0, 0.0], vec![3.0, 0.0], vec![-3.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0], vec![1.0, 1.0], vec![-1.0, -1.0]],
        vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 2.0], vec![0.0, -2.0]],
    ];
    let mut gaps_ok = true;
    let mut worst: f64 = 0.0;
    for k in &sets {
        for n in 1..=5 {
            let g = sumset_convexity_gap(k, n, 1_000_000).unwrap();
            gaps_ok &= g.holds && g.gap <= 3.0 * g.diameter + EPS;
            worst = worst.max(g.gap / g.diameter);
        }
    }
    notes.push(format!("{} planar sets n<=5 gap <= 3 diam {gaps_ok} (worst gap/diam {worst:.3})", sets.len()));
    outcome(sandwich_ok && width_ok && closure_ok && gaps_ok, notes.join("; "))
}

// 10

fn discretizer() -> Outcome {
    let circle = circle_sample(400, 1.0);
    let side = 40;
    let torus = FiniteMetricSpace::from_points(
        (0..side * side).map(|i| vec![(i % side) as f64 / side as f64, (i / side) as f64 / side as f64]).collect(),
        PointMetric::L1Torus,
    )
    .unwrap();
    // normalized covering radius of each sample in its model
    let cases = [("circle", circle, (1.0 / 800.0) / 0.5), ("l1-torus", torus, (1.0 / side as f64) / 1.0)];
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, sample, cov) in cases {
        let mut bounds = Vec::new();
        let mut worst_mult: f64 = 0.0;
        for t in [0.2, 0.1, 0.05] {
            match discretize(&sample, t, None) {
                Ok((net, report)) => {
                    let qi = verify_qi(&net, &sample).unwrap();
                    ok &= net.graph.is_connected() && qi.multiplicative <= 4.0;
                    worst_mult = worst_mult.max(qi.multiplicative);
                    bounds.push(report.gh_upper + cov);
                }
                Err(e) => {
                    ok = false;
                    notes.push(format!("{name} t={t}: {e}"));
                }
            }
        }
        ok &= bounds.len() == 3 && bounds.windows(2).all(|w| w[1] < w[0]);
        notes.push(format!("{name} multiplicative <= {worst_mult:.3}, GH bounds {bounds:.4?}"));
    }
    outcome(ok, notes.join("; "))
}

// 11

fn covering_at_tenth_diameter(g: LabeledGraph) -> usize {
    let space = graph_space(g);
    let eps = space.diameter() / 10.0;
    greedy_cover(&space, eps).len()
}

/// Independent check that `centers` cover the graph at radius `eps`.
fn covers(g: &LabeledGraph, centers: &[usize], eps: f64) -> bool {
    let mut dist = vec![u32::MAX; g.num_vertices()];
    let mut queue: VecDeque<usize> = centers.iter().copied().collect();
    for &c in centers {
        dist[c] = 0;
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = dist[v] + 1;
                queue.push_back(w as usize);
            }
        }
    }
    dist.iter().all(|&d| d as f64 <= eps)
}

fn non_convergence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sizes: Vec<usize> = (7..=12).map(|e| 1usize << e).collect();
    let mut random = Vec::new();
    let mut diameters = Vec::new();
    let mut cover_ok = true;
    for &n in &sizes {
        let g = catalog::random_regular(n, 3, &mut rng);
        let space = graph_space(g.clone());
        let eps = space.diameter() / 10.0;
        diameters.push(space.diameter() as u32);
        let centers = greedy_cover(&space, eps);
        cover_ok &= covers(&g, &centers, eps);
        random.push(centers.len());
    }
    let cyclic: Vec<usize> = sizes.iter().map(|&n| covering_at_tenth_diameter(catalog::cycle(n))).collect();
    let increasing = random.windows(2).all(|w| w[1] > w[0]);
    // eps = D/10 is rounded down to an integer radius, which moves the cycle count by one
    let spread = cyclic.iter().max().unwrap() - cyclic.iter().min().unwrap();
    outcome(
        increasing && spread <= 1 && cover_ok,
        format!(
            "random 3-regular diameters {diameters:?}, covers {random:?} strictly increasing; cyclic {cyclic:?} within 1 of constant"
        ),
    )
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let results = [
        run(1, "heisenberg sizes", s(10), heisenberg_sizes),
        run(2, "heisenberg diameters", s(30), heisenberg_diameters),
        run(3, "circle certification", s(10), circle_certification),
        run(4, "l1-torus certification", s(60), torus_certification),
        run(5, "fat triangles", s(120), fat_triangles),
        run(6, "caret bound", s(10), caret_bound),
        run(7, "GH oracle sandwich", s(120), gh_oracle_sandwich),
        run(8, "radius of freedom", s(30), radius_of_freedom_oracle),
        run(9, "algebraic checks", s(120), algebraic_checks),
        run(10, "discretizer", s(60), discretizer),
        run(11, "non-convergence diagnostic", s(60), non_convergence),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    let unexpected: Vec<usize> =
        (1..=results.len()).filter(|i| results[i - 1] == KNOWN_RED.contains(&(*i as u32))).collect();
    if !KNOWN_RED.is_empty() {
        println!("known red: {KNOWN_RED:?}; unexpected outcomes: {unexpected:?}");
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
