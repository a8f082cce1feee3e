//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qwalk_cli::bundled::bundled;
use qwalk_cli::commands::{lift_group, minpoly_summary, random_arc_matrix};
use qwalk_cli::examples::k3_lifted;
use qwalk_cli::graph_spec::parse_graph_spec;
use qwalk_cli::instance::parse_instance;
use qwalk_core::linalg::eigenvalues;
use qwalk_core::minpoly::is_direct_sum;
use qwalk_core::qmatrix::right_proportional;
use qwalk_core::szegedy::{compare_multisets, full_spectrum_with, lift_family, perturb_vertex, random_ab, Branch};
use qwalk_core::zeta::default_samples;
use qwalk_core::{
    build_walk, check_unitary_condition, ihara_identity, is_unitary, minimal_polynomial, quaternionic_identity,
    random_instance, right_eigenvalues, root_subspaces, second_weighted_identity, sylvester_det_property,
    verify_structure, CMatrix, Graph, QMatrix, Quaternion, RightEigenvalue, WeightMap,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

const FAMILIES: [&str; 5] = ["K3+loops", "K4", "P3", "star3+loop@1", "C5"];

fn families() -> Vec<(&'static str, Graph)> {
    FAMILIES.iter().map(|s| (*s, parse_graph_spec(s).unwrap())).collect()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn bundled_instance(name: &str) -> (Graph, WeightMap) {
    let inst = parse_instance(bundled(name).unwrap(), name).unwrap();
    (inst.graph, inst.weights)
}

fn classes_match(got: &[RightEigenvalue], want: &[(Complex64, usize)], tol: f64) -> bool {
    got.len() == want.len()
        && want.iter().all(|(z, m)| got.iter().any(|g| (g.class.rep - z).norm() <= tol && g.multiplicity == *m))
}

fn factors_match(m: &QMatrix, want: &[Vec<f64>], tol: f64) -> Result<bool, String> {
    let mp = minimal_polynomial(m).map_err(|e| e.to_string())?;
    Ok(mp.factors.len() == want.len()
        && mp.factors.iter().all(|f| f.exponent == 1)
        && want.iter().all(|w| {
            mp.factors.iter().any(|f| {
                f.poly.coeffs.len() == w.len() && f.poly.coeffs.iter().zip(w).all(|(a, b)| (a - b).abs() <= tol)
            })
        }))
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let (g, w) = bundled_instance("k3_loops");
    let ops = build_walk(&g, &w).map_err(|e| e.to_string())?;
    let sr = full_spectrum_with(&g, &ops, false).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let mu = [-2.0 / 3.0, -2.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0];
    let mu_err = sr.mu_spectrum.iter().zip(&mu).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if sr.mu_spectrum.len() != 6 || mu_err > 1e-9 {
        return Err(format!("Spec(psi(W~)) = {:?}", sr.mu_spectrum));
    }
    let la = c(-1.0 / 3.0, 2.0 * 2f64.sqrt() / 3.0);
    let lb = c(2.0 / 3.0, 5f64.sqrt() / 3.0);
    let mut expected = Vec::new();
    for (z, k) in [(la, 2), (la.conj(), 2), (lb, 4), (lb.conj(), 4), (c(-1.0, 0.0), 6)] {
        expected.extend(std::iter::repeat_n(z, k));
    }
    let diff = compare_multisets(&sr.psi_spectrum, &expected, 1e-9);
    if !diff.is_empty() {
        return Err(format!("Spec(psi(U)) differs: {diff:?}"));
    }
    let sigma = sr.right_spectrum();
    let want = [c(-1.0, 0.0), la, lb];
    if sigma.len() != 3 || !want.iter().all(|z| sigma.iter().any(|s| (s.rep - z).norm() <= 1e-9)) {
        return Err(format!("sigma_r = {sigma:?}"));
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("18 values within 1e-9 (max distance {:.1e}), spectrum in {elapsed:.2?}", diff.max_distance))
}

fn ac2() -> Outcome {
    let e = |r: qwalk_core::Result<QMatrix>| r.map_err(|e| e.to_string());
    let d = QMatrix::diagonal(&[Quaternion::ONE, Quaternion::K]);
    let dc = right_eigenvalues(&d).map_err(|e| e.to_string())?;
    if !classes_match(&dc, &[(c(1.0, 0.0), 1), (c(0.0, 1.0), 1)], 1e-9) {
        return Err(format!("diag(1,k) classes {dc:?}"));
    }
    if !factors_match(&d, &[vec![-1.0, 1.0], vec![1.0, 0.0, 1.0]], 1e-9)? {
        return Err("diag(1,k) minimal polynomial".into());
    }
    let a = e(QMatrix::from_rows(&[vec![Quaternion::ZERO, Quaternion::I], vec![Quaternion::J, Quaternion::ZERO]]))?;
    let ac = right_eigenvalues(&a).map_err(|e| e.to_string())?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    if !classes_match(&ac, &[(c(h, h), 1), (c(-h, h), 1)], 1e-9) {
        return Err(format!("[[0,i],[j,0]] classes {ac:?}"));
    }
    let r2 = std::f64::consts::SQRT_2;
    if !factors_match(&a, &[vec![1.0, -r2, 1.0], vec![1.0, r2, 1.0]], 1e-9)? {
        return Err("[[0,i],[j,0]] minimal polynomial".into());
    }
    Ok("both examples match classes and minimal polynomials within 1e-9".into())
}

fn ac3() -> Outcome {
    let start = Instant::now();
    let mut branches = Vec::new();
    let mut worst = 0.0f64;
    let mut total = 0;
    for (name, g) in families() {
        for seed in 0..50 {
            let w = random_instance(&g, seed).map_err(|e| e.to_string())?;
            let ops = build_walk(&g, &w).map_err(|e| e.to_string())?;
            let sr = full_spectrum_with(&g, &ops, true).map_err(|e| format!("{name} seed {seed}: {e}"))?;
            let diff = sr.oracle_diff.as_ref().unwrap();
            if !diff.is_empty() || diff.tolerance > 1e-8 {
                return Err(format!("{name} seed {seed}: {diff:?}"));
            }
            worst = worst.max(diff.max_distance);
            if !branches.contains(&sr.branch) {
                branches.push(sr.branch);
            }
            total += 1;
        }
    }
    let elapsed = start.elapsed();
    for b in [Branch::NonTree, Branch::TreeNoLoops, Branch::TreeWithLoops] {
        if !branches.contains(&b) {
            return Err(format!("branch {} not exercised", b.label()));
        }
    }
    if elapsed >= Duration::from_secs(30) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{total}/250 agree, max distance {worst:.1e}, three branches, {elapsed:.2?}"))
}

fn random_cmatrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

fn ac4() -> Outcome {
    let samples = default_samples();
    let mut worst_q = 0.0f64;
    let fams = families();
    for k in 0..100u64 {
        let (name, g) = &fams[k as usize % fams.len()];
        let (a, b) = random_ab(g, 1000 + k);
        let chk = quaternionic_identity(g, &a, &b, &samples, false).map_err(|e| e.to_string())?;
        if !chk.pass || chk.tolerance > 1e-8 {
            return Err(format!("quaternionic identity on {name} seed {}: {:.3e}", 1000 + k, chk.max_rel_error));
        }
        worst_q = worst_q.max(chk.max_rel_error);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_s = 0.0f64;
    for k in 0..100 {
        let m = rng.random_range(1..=7);
        let n = rng.random_range(1..=7);
        let a = random_cmatrix(&mut rng, m, n);
        let b = random_cmatrix(&mut rng, n, m);
        let alpha = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let chk = sylvester_det_property(&a, &b, alpha).map_err(|e| e.to_string())?;
        if !chk.pass || chk.tolerance > 1e-10 {
            return Err(format!("sylvester pair {k} ({m}x{n}): {:.3e}", chk.max_rel_error));
        }
        worst_s = worst_s.max(chk.max_rel_error);
    }
    let mut loopless = Vec::new();
    for name in qwalk_cli::bundled::names() {
        let (g, _) = bundled_instance(name);
        if g.m1() != 0 {
            continue;
        }
        let ih = ihara_identity(&g, &samples, true).map_err(|e| e.to_string())?;
        let w = random_arc_matrix(&g, 11);
        let sw = second_weighted_identity(&g, &w, &samples, false, true).map_err(|e| e.to_string())?;
        let st = second_weighted_identity(&g, &w, &samples, true, true).map_err(|e| e.to_string())?;
        for chk in [ih, sw, st] {
            if !chk.pass {
                return Err(format!("{} on {name}: {:.3e}", chk.name, chk.max_rel_error));
            }
        }
        loopless.push(name);
    }
    Ok(format!(
        "quaternionic 100/100 (max {worst_q:.1e}), sylvester 100/100 (max {worst_s:.1e}), ihara and weighted on {}",
        loopless.join(", ")
    ))
}

fn ac5() -> Outcome {
    let mut worst = 0.0f64;
    let mut lifted = 0;
    for (name, g) in families() {
        for seed in 0..10 {
            let w = random_instance(&g, seed).map_err(|e| e.to_string())?;
            let ops = build_walk(&g, &w).map_err(|e| e.to_string())?;
            let sr = full_spectrum_with(&g, &ops, false).map_err(|e| e.to_string())?;
            let mut mus: Vec<f64> = Vec::new();
            for &m in &sr.mu_spectrum {
                if m.abs() < 2.0 - 1e-6 && mus.last().is_none_or(|&l| (m - l).abs() > 1e-6) {
                    mus.push(m);
                }
            }
            for mu in mus {
                for l in lift_family(&ops, mu).map_err(|e| format!("{name} seed {seed} mu {mu}: {e}"))? {
                    if l.residual > 1e-8 || l.companion_residual > 1e-8 {
                        return Err(format!("{name} seed {seed} mu {mu}: residual {:.3e}", l.residual));
                    }
                    worst = worst.max(l.residual);
                    lifted += 1;
                }
            }
        }
    }
    let (g, w) = bundled_instance("k3_loops");
    let ops = build_walk(&g, &w).map_err(|e| e.to_string())?;
    let golden = k3_lifted();
    for (mu, range) in [(-2.0 / 3.0, 0..2), (4.0 / 3.0, 2..6)] {
        let grp = lift_group(&ops, mu, range.len()).map_err(|e| e.to_string())?;
        if !grp.independent {
            return Err(format!("K3 lifts for mu = {mu} are dependent"));
        }
        let mut used = vec![false; range.len()];
        for e in &grp.vectors {
            worst = worst.max(e.residual);
            let hit = golden[range.clone()]
                .iter()
                .enumerate()
                .position(|(k, u)| !used[k] && right_proportional(&e.vector, u).unwrap_or(false));
            match hit {
                Some(k) => used[k] = true,
                None => return Err(format!("K3 lift for mu = {mu} matches no golden vector")),
            }
        }
        if used.iter().any(|u| !u) || grp.vectors.len() != range.len() {
            return Err(format!("K3 lifts for mu = {mu} do not cover the golden family"));
        }
    }
    let mp = minpoly_summary(&ops.u, "x").map_err(|e| e.to_string())?;
    let dim_of = |root: Complex64| mp.factors.iter().find(|f| (f.root - root).norm() < 1e-9).map(|f| f.root_subspace_dim);
    let dims = (
        dim_of(c(-1.0 / 3.0, 2.0 * 2f64.sqrt() / 3.0)),
        dim_of(c(2.0 / 3.0, 5f64.sqrt() / 3.0)),
        dim_of(c(-1.0, 0.0)),
    );
    if dims != (Some(2), Some(4), Some(3)) || !mp.direct_sum {
        return Err(format!("root subspace dimensions {dims:?}, direct sum {}", mp.direct_sum));
    }
    let spaces = root_subspaces(&ops.u, &minimal_polynomial(&ops.u).unwrap()).unwrap();
    if !is_direct_sum(9, &spaces).unwrap() {
        return Err("root subspaces are not a direct sum".into());
    }
    Ok(format!(
        "{lifted} random lifts plus K3 families, max residual {worst:.1e}; K3 root subspaces (2,4,3) sum to 9"
    ))
}

fn ac6() -> Outcome {
    let mut instances: Vec<(String, Graph, WeightMap)> = Vec::new();
    for name in qwalk_cli::bundled::names() {
        let (g, w) = bundled_instance(name);
        instances.push((name.to_string(), g, w));
    }
    for (name, g) in families() {
        for seed in 0..20 {
            instances.push((format!("{name} seed {seed}"), g.clone(), random_instance(&g, seed).unwrap()));
        }
    }
    let mut worst = 0.0f64;
    for (name, g, w) in &instances {
        if !check_unitary_condition(g, w).unwrap().pass {
            continue;
        }
        let ops = build_walk(g, w).map_err(|e| e.to_string())?;
        let st = verify_structure(&ops).map_err(|e| e.to_string())?;
        for chk in &st.checks {
            if chk.residual > 1e-10 {
                return Err(format!("{name}: {} residual {:.3e}", chk.name, chk.residual));
            }
            worst = worst.max(chk.residual);
        }
    }
    Ok(format!("{} instances, max entry residual {worst:.1e}", instances.len()))
}

fn ac7() -> Outcome {
    let mut agree = 0;
    let mut total = 0;
    for (name, g) in families() {
        for seed in 0..100u64 {
            let base = random_instance(&g, 7000 + seed).unwrap();
            let (w, bad_vertex) = if seed < 50 {
                (base, None)
            } else {
                let v = (seed as usize) % g.n();
                (perturb_vertex(&g, &base, v, 1.5).unwrap(), Some(v))
            };
            let cond = check_unitary_condition(&g, &w).unwrap();
            let ops = build_walk(&g, &w).map_err(|e| e.to_string())?;
            let unitary = is_unitary(&ops.u, 1e-10).map_err(|e| e.to_string())?;
            let expected_failing: Vec<usize> = bad_vertex.into_iter().collect();
            total += 1;
            if unitary == cond.pass && cond.failing() == expected_failing {
                agree += 1;
            } else {
                return Err(format!(
                    "{name} seed {seed}: is_unitary {unitary}, condition {} failing {:?}",
                    cond.pass,
                    cond.failing()
                ));
            }
        }
    }
    Ok(format!("{agree}/{total} agree (100 per family, 50 perturbed at a known vertex)"))
}

fn random_qmatrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| {
        Quaternion::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        )
    })
}

fn ac8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let fams = families();
    for trial in 0..200u64 {
        let (m, n, p) = (rng.random_range(1..=5), rng.random_range(1..=5), rng.random_range(1..=5));
        let a = random_qmatrix(&mut rng, m, n);
        let b = random_qmatrix(&mut rng, n, p);
        let lhs = a.matmul(&b).unwrap().psi();
        let rhs = a.psi().matmul(&b.psi()).unwrap();
        let gap = (&lhs - &rhs).max_abs();
        if gap > 1e-12 * (1.0 + lhs.max_abs()) {
            return Err(format!("trial {trial}: psi(MN) differs from psi(M)psi(N) by {gap:.3e}"));
        }

        let s = random_qmatrix(&mut rng, m, m);
        let vals = eigenvalues(&s.psi()).map_err(|e| e.to_string())?;
        let conj: Vec<Complex64> = vals.iter().map(|z| z.conj()).collect();
        let diff = compare_multisets(&vals, &conj, 1e-8 * (1.0 + s.psi().frobenius()));
        if !diff.is_empty() {
            return Err(format!("trial {trial}: psi spectrum not closed under conjugation {diff:?}"));
        }

        let (name, g) = &fams[trial as usize % fams.len()];
        let w = random_instance(g, 8000 + trial).unwrap();
        let ops = build_walk(g, &w).map_err(|e| e.to_string())?;
        let pw = ops.w_tilde.psi();
        if !pw.is_hermitian(1e-12) {
            return Err(format!("trial {trial}: psi(W~) on {name} is not Hermitian"));
        }
        let mu = eigenvalues(&pw).map_err(|e| e.to_string())?;
        for z in &mu {
            if z.im.abs() > 1e-10 {
                return Err(format!("trial {trial}: psi(W~) eigenvalue {z} on {name} is not real"));
            }
            if z.re.abs() > 2.0 + 1e-10 {
                return Err(format!("trial {trial}: psi(W~) eigenvalue {z} on {name} outside [-2, 2]"));
            }
        }
    }
    Ok("200 trials: psi multiplicativity, conjugate pairs, Hermitian real spectra in [-2, 2]".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("AC1", "golden K3 spectrum", ac1),
        ("AC2", "golden right-eigenvalue examples", ac2),
        ("AC3", "spectral mapping matches direct diagonalization", ac3),
        ("AC4", "determinant identity fuzzing", ac4),
        ("AC5", "eigenvector lifting", ac5),
        ("AC6", "structural identities", ac6),
        ("AC7", "unitarity iff the vertex condition", ac7),
        ("AC8", "property suite", ac8),
    ];
    let mut failed = 0;
    for (id, title, f) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("{id} PASS {title}: {detail} [{elapsed:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL {title}: {detail} [{elapsed:.2?}]");
            }
        }
    }
    println!("{}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
