//! The work behind each subcommand. Every function returns report data; the
//! binary renders it and picks the exit code.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;

use qwalk_core::minpoly::is_direct_sum;
use qwalk_core::qmatrix::{self, classes_from_psi_spectrum, eigen_residual, quaternionic_kernel};
use qwalk_core::szegedy::{
    compare_multisets, direct_spectrum, full_spectrum_with, lift_family, random_ab, ClassSource, SpectrumReport,
    UnitarityReport,
};
use qwalk_core::zeta::{sample_points, walk_arc_data, IdentityCheck};
use qwalk_core::{
    build_walk, check_unitary_condition, h_linear_independent, ihara_identity, minimal_polynomial,
    quaternionic_identity, random_instance, root_subspaces, second_weighted_identity, sylvester_det_property,
    verify_structure, CMatrix, Error, Graph, QMatrix, QVector, Quaternion, WalkOperators, WeightMap,
};

use crate::bundled;
use crate::error::{CliError, CliResult};
use crate::graph_spec::parse_graph_spec;
use crate::instance::{parse_instance, sha256_hex, to_json, Instance};
use crate::report::{
    EigenvectorEntry, EigenvectorGroup, EigenvectorMethod, FactorSummary, InstanceReport, MinimalPolynomialSummary,
    Report,
};

pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct Settings {
    /// Identity checks, oracle matching and eigenvector residuals.
    pub tol: f64,
    /// Sample points on `|t| = 1/4` (the origin is always added).
    pub samples: usize,
    /// Phase seed for the sample points.
    pub sample_seed: Option<u64>,
    pub oracle: bool,
    pub eigenvectors: bool,
    pub force: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { tol: DEFAULT_TOL, samples: 8, sample_seed: None, oracle: false, eigenvectors: false, force: false }
    }
}

/// Reads an instance from a path, falling back to the bundled instance of that name.
pub fn load_instance(arg: &str) -> CliResult<Instance> {
    let path = Path::new(arg);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
        return parse_instance(&text, arg);
    }
    match bundled::bundled(arg) {
        Some(text) => parse_instance(text, arg),
        None => Err(CliError::Input(format!(
            "{arg}: no such file or bundled instance (bundled: {})",
            bundled::names().join(", ")
        ))),
    }
}

fn describe_failing(u: &UnitarityReport) -> String {
    u.vertices
        .iter()
        .filter(|v| !v.pass)
        .map(|v| format!("vertex {} (sum {:.6})", v.vertex, v.sum))
        .collect::<Vec<_>>()
        .join(", ")
}

fn unitarity(r: &mut InstanceReport, g: &Graph, w: &WeightMap) -> CliResult<bool> {
    let u = check_unitary_condition(g, w)?;
    let pass = u.pass;
    if !pass {
        r.fail(format!("unitarity condition fails at {}", describe_failing(&u)));
    }
    r.unitarity = Some(u);
    Ok(pass)
}

/// Minimal polynomial of `m` in `x` with its root subspace dimensions.
pub fn minpoly_summary(m: &QMatrix, var: &str) -> CliResult<MinimalPolynomialSummary> {
    let mp = minimal_polynomial(m)?;
    let spaces = root_subspaces(m, &mp)?;
    let direct_sum = is_direct_sum(m.rows(), &spaces)?;
    let factors = mp
        .factors
        .iter()
        .enumerate()
        .map(|(i, f)| FactorSummary {
            poly: f.poly.format_with(var),
            coeffs: f.poly.coeffs.clone(),
            exponent: f.exponent,
            root: f.root,
            root_subspace_dim: spaces.iter().filter(|s| s.factor_index == i).map(|s| s.dim()).sum(),
        })
        .collect();
    Ok(MinimalPolynomialSummary {
        text: mp.format_with(var),
        factors,
        residual: mp.residual,
        direct_sum,
        warnings: mp.warnings.clone(),
    })
}

/// Lifts of the canonical W̃-eigenvectors for `μ`.
pub fn lift_group(ops: &WalkOperators, mu: f64, expected: usize) -> CliResult<EigenvectorGroup> {
    let lifts = lift_family(ops, mu)?;
    let vectors: Vec<EigenvectorEntry> = lifts
        .iter()
        .map(|l| EigenvectorEntry {
            source: Some(l.source.clone()),
            vector: l.vector.clone(),
            normalized: l.normalized.clone(),
            residual: l.residual,
        })
        .collect();
    let raw: Vec<QVector> = vectors.iter().map(|e| e.vector.clone()).collect();
    Ok(EigenvectorGroup {
        lambda: lifts[0].lambda,
        mu: Some(lifts[0].mu),
        method: EigenvectorMethod::Lift,
        independent: h_linear_independent(&raw)?,
        vectors,
        expected,
    })
}

/// Eigenvectors of `U` for the real eigenvalue `sign` from the kernel of `U - sign I`.
pub fn direct_group(ops: &WalkOperators, sign: f64, expected: usize) -> CliResult<EigenvectorGroup> {
    let basis = quaternionic_kernel(&ops.u.shift(sign))?;
    let mut vectors = Vec::with_capacity(basis.len());
    for v in basis {
        let norm = qmatrix::vec_norm(&v);
        vectors.push(EigenvectorEntry {
            source: None,
            residual: eigen_residual(&ops.u, &v, Quaternion::real(sign))?,
            normalized: qmatrix::vec_scale(&v, 1.0 / norm),
            vector: v,
        });
    }
    let raw: Vec<QVector> = vectors.iter().map(|e| e.vector.clone()).collect();
    let independent = raw.is_empty() || h_linear_independent(&raw)?;
    Ok(EigenvectorGroup {
        lambda: Complex64::new(sign, 0.0),
        mu: None,
        method: EigenvectorMethod::Direct,
        independent,
        vectors,
        expected,
    })
}

fn check_group(r: &mut InstanceReport, g: &EigenvectorGroup, tol: f64) {
    let label = format!("eigenvectors for λ = {}", qwalk_core::quaternion::format_complex(g.lambda, 6));
    if let Some(worst) = g.vectors.iter().map(|e| e.residual).reduce(f64::max) {
        if worst > tol {
            r.fail(format!("{label}: residual {worst:.3e} exceeds {tol:.1e}"));
        }
    }
    if !g.independent {
        r.fail(format!("{label}: vectors are not linearly independent over H"));
    }
    if g.vectors.len() != g.expected {
        r.fail(format!("{label}: found {} vectors, class multiplicity is {}", g.vectors.len(), g.expected));
    }
}

/// Total multiplicity of the real class `sign` across all sources.
fn real_multiplicity(sr: &SpectrumReport, sign: f64) -> usize {
    sr.classes
        .iter()
        .filter(|c| c.class.is_real_within(1e-9) && (c.class.rep.re - sign).abs() < 1e-6)
        .map(|c| c.multiplicity)
        .sum()
}

fn mapped_multiplicity(sr: &SpectrumReport, mu: f64) -> usize {
    sr.classes
        .iter()
        .filter(|c| c.source == ClassSource::Mapped && c.mu.is_some_and(|m| (m - mu).abs() <= 1e-6 * mu.abs().max(1.0)))
        .map(|c| c.multiplicity)
        .sum()
}

/// Distinct eigenvalues of ψ(W̃), ascending.
pub fn distinct_mu(sr: &SpectrumReport) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &m in &sr.mu_spectrum {
        if out.last().is_none_or(|&l| (m - l).abs() > 1e-6 * m.abs().max(1.0)) {
            out.push(m);
        }
    }
    out
}

fn is_interior(mu: f64) -> bool {
    mu.abs() < 2.0 - 1e-9
}

/// Every eigenvector group of `U`: lifts for interior `μ`, direct kernels for ±1.
fn all_groups(ops: &WalkOperators, sr: &SpectrumReport) -> CliResult<Vec<EigenvectorGroup>> {
    let mut groups = Vec::new();
    for mu in distinct_mu(sr).into_iter().filter(|&m| is_interior(m)) {
        groups.push(lift_group(ops, mu, mapped_multiplicity(sr, mu))?);
    }
    for sign in [-1.0, 1.0] {
        let expected = real_multiplicity(sr, sign);
        if expected > 0 {
            groups.push(direct_group(ops, sign, expected)?);
        }
    }
    Ok(groups)
}

pub fn spectrum(inst: &Instance, s: &Settings) -> CliResult<InstanceReport> {
    let (g, w) = (&inst.graph, &inst.weights);
    let mut r = InstanceReport::new(&inst.name, &inst.sha256, inst.seed, g);
    let unitary = unitarity(&mut r, g, w)?;
    let ops = build_walk(g, w)?;
    if !unitary {
        if s.force {
            r.forced_spectrum = Some(classes_from_psi_spectrum(&direct_spectrum(&ops)?)?);
        }
        return Ok(r);
    }
    let mut sr = full_spectrum_with(g, &ops, false)?;
    if s.oracle {
        let direct = direct_spectrum(&ops)?;
        let diff = compare_multisets(&sr.psi_spectrum, &direct, s.tol);
        if !diff.is_empty() {
            r.fail(format!(
                "direct diagonalization disagrees: {} mapped and {} direct values unmatched",
                diff.only_left.len(),
                diff.only_right.len()
            ));
        }
        sr.direct = Some(direct);
        sr.oracle_diff = Some(diff);
    }
    r.minimal_polynomial = Some(minpoly_summary(&ops.u, "x")?);
    if s.eigenvectors {
        r.eigenvectors = all_groups(&ops, &sr)?;
        for grp in r.eigenvectors.clone() {
            check_group(&mut r, &grp, s.tol);
        }
    }
    r.spectrum = Some(sr);
    Ok(r)
}

/// Which eigenvalues of ψ(W̃) to lift.
#[derive(Clone, Copy, Debug)]
pub enum LiftTarget {
    Mu(f64),
    All,
}

pub fn lift(inst: &Instance, target: LiftTarget, s: &Settings) -> CliResult<InstanceReport> {
    let (g, w) = (&inst.graph, &inst.weights);
    let mut r = InstanceReport::new(&inst.name, &inst.sha256, inst.seed, g);
    if !unitarity(&mut r, g, w)? {
        return Ok(r);
    }
    let ops = build_walk(g, w)?;
    let sr = full_spectrum_with(g, &ops, false)?;
    r.eigenvectors = match target {
        LiftTarget::All => all_groups(&ops, &sr)?,
        LiftTarget::Mu(x) => {
            let available = distinct_mu(&sr);
            let mu = available
                .iter()
                .copied()
                .filter(|m| (m - x).abs() <= 1e-3 * x.abs().max(1.0))
                .min_by(|a, b| (a - x).abs().total_cmp(&(b - x).abs()))
                .ok_or_else(|| {
                    let list = available.iter().map(|m| format!("{m:.6}")).collect::<Vec<_>>().join(", ");
                    CliError::Core(Error::Domain(format!("μ = {x} is not an eigenvalue of ψ(W~); available: {list}")))
                })?;
            if is_interior(mu) {
                vec![lift_group(&ops, mu, mapped_multiplicity(&sr, mu))?]
            } else {
                let sign = mu.signum();
                vec![direct_group(&ops, sign, real_multiplicity(&sr, sign))?]
            }
        }
    };
    for grp in r.eigenvectors.clone() {
        check_group(&mut r, &grp, s.tol);
    }
    r.spectrum = Some(sr);
    Ok(r)
}

fn retol(mut c: IdentityCheck, tol: f64) -> IdentityCheck {
    c.tolerance = tol;
    c.pass = c.max_rel_error <= tol;
    c
}

/// `det(αI - ψ(K)ψ(L*))αⁿ = α^m det(αI - ψ(L*)ψ(K))` at `α = 1/t` for each nonzero sample.
fn sylvester_walk(ops: &WalkOperators, samples: &[Complex64]) -> CliResult<IdentityCheck> {
    let a = ops.k.psi();
    let b = ops.l.adjoint().psi();
    let mut merged: Option<IdentityCheck> = None;
    for t in samples.iter().filter(|t| t.norm() > 0.0) {
        let c = sylvester_det_property(&a, &b, t.inv())?;
        merged = Some(match merged {
            None => c,
            Some(mut m) => {
                m.samples.extend(c.samples);
                m.max_rel_error = m.max_rel_error.max(c.max_rel_error);
                m.pass &= c.pass;
                m
            }
        });
    }
    merged.ok_or_else(|| CliError::Input("no nonzero sample points for the Sylvester check".into()))
}

/// Complex arc weights for the weighted identity, seeded.
pub fn random_arc_matrix(g: &Graph, seed: u64) -> CMatrix {
    let (a, _) = random_ab(g, seed);
    let mut w = CMatrix::zeros(g.n(), g.n());
    for arc in g.arcs() {
        w[(arc.origin, arc.terminus)] = a[arc.index].simplex();
    }
    w
}

fn record(r: &mut InstanceReport, c: IdentityCheck) {
    if !c.pass {
        r.fail(format!("{} identity: max relative error {:.3e} exceeds {:.1e}", c.name, c.max_rel_error, c.tolerance));
    }
    r.identities.push(c);
}

pub fn verify_weights(
    name: &str,
    sha256: &str,
    seed: Option<u64>,
    g: &Graph,
    w: &WeightMap,
    s: &Settings,
) -> CliResult<InstanceReport> {
    let mut r = InstanceReport::new(name, sha256, seed, g);
    unitarity(&mut r, g, w)?;
    let ops = build_walk(g, w)?;
    let st = verify_structure(&ops)?;
    for c in st.checks.iter().filter(|c| !c.pass) {
        r.fail(format!("{}: residual {:.3e} exceeds {:.1e}", c.name, c.residual, c.tolerance));
    }
    r.structure = Some(st);
    let samples = sample_points(s.samples, 0.25, s.sample_seed);
    let (a, b) = walk_arc_data(g, w);
    record(&mut r, retol(quaternionic_identity(g, &a, &b, &samples, false)?, s.tol));
    record(&mut r, sylvester_walk(&ops, &samples)?);
    if g.m1() == 0 && g.is_connected() {
        record(&mut r, retol(ihara_identity(g, &samples, false)?, s.tol));
        let wm = random_arc_matrix(g, seed.unwrap_or(0));
        for transposed in [false, true] {
            record(&mut r, retol(second_weighted_identity(g, &wm, &samples, transposed, false)?, s.tol));
        }
    }
    Ok(r)
}

pub fn verify(inst: &Instance, s: &Settings) -> CliResult<InstanceReport> {
    verify_weights(&inst.name, &inst.sha256, inst.seed, &inst.graph, &inst.weights, s)
}

/// A seeded random instance on the graph named by `spec`, as instance JSON.
pub fn generate(spec: &str, seed: u64) -> CliResult<(Graph, WeightMap, String)> {
    let g = parse_graph_spec(spec)?;
    let w = random_instance(&g, seed)?;
    let text = to_json(&format!("{spec} seed {seed}"), Some(seed), &g, &w);
    Ok((g, w, text))
}

/// `verify` over `count` random instances with seeds `seed, seed+1, …`.
pub fn verify_random(spec: &str, seed: u64, count: usize, s: &Settings) -> CliResult<Report> {
    parse_graph_spec(spec)?;
    let seeds: Vec<u64> = (0..count as u64).map(|k| seed + k).collect();
    let instances: Vec<InstanceReport> = seeds
        .par_iter()
        .map(|&sd| {
            let (g, w, text) = generate(spec, sd)?;
            verify_weights(&format!("{spec} seed {sd}"), &sha256_hex(text.as_bytes()), Some(sd), &g, &w, s)
        })
        .collect::<CliResult<_>>()?;
    let mut report = Report::new("verify", s.tol);
    report.seeds = seeds;
    report.instances = instances;
    report.finish();
    Ok(report)
}
