//! Human-readable tables for reports.

use std::fmt::Write;

use num_complex::Complex64;

use qwalk_core::quaternion::{format_complex, format_quaternion};
use qwalk_core::zeta::IdentityCheck;
use qwalk_core::ConjugacyClass;

use crate::report::{EigenvectorGroup, EigenvectorMethod, InstanceReport, Report};

fn real(x: f64) -> String {
    format_complex(Complex64::new(x, 0.0), 6)
}

fn vector(v: &[qwalk_core::Quaternion]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format_quaternion(*x, 6)).collect();
    format!("[{}]", parts.join(", "))
}

/// Groups nearly equal values, keeping first-seen order.
fn tally<T: Copy>(values: &[T], close: impl Fn(T, T) -> bool) -> Vec<(T, usize)> {
    let mut out: Vec<(T, usize)> = Vec::new();
    for &v in values {
        match out.iter_mut().find(|(g, _)| close(*g, v)) {
            Some(g) => g.1 += 1,
            None => out.push((v, 1)),
        }
    }
    out
}

fn header(out: &mut String, r: &InstanceReport) {
    let g = &r.graph;
    let _ = write!(out, "instance {} (sha256 {})", r.name, &r.sha256[..16.min(r.sha256.len())]);
    if let Some(s) = r.seed {
        let _ = write!(out, ", seed {s}");
    }
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "graph: n={} m0={} m1={} m'={}{}{}",
        g.n,
        g.m0,
        g.m1,
        g.m_prime,
        if g.connected { "" } else { ", disconnected" },
        if g.tree_core { ", tree core" } else { "" }
    );
    if let Some(u) = &r.unitarity {
        let worst = u.vertices.iter().map(|v| (v.sum - 1.0).abs()).fold(0.0, f64::max);
        let _ = writeln!(out, "unitarity condition: {} (max |sum - 1| {worst:.1e})", if u.pass { "pass" } else { "FAIL" });
        for v in u.vertices.iter().filter(|v| !v.pass) {
            let _ = writeln!(out, "  vertex {}: sum {:.9}", v.vertex, v.sum);
        }
    }
}

fn spectrum_section(out: &mut String, r: &InstanceReport) {
    if let Some(classes) = &r.forced_spectrum {
        let _ = writeln!(out, "forced: right spectrum of U from direct diagonalization only");
        for c in classes {
            let _ = writeln!(out, "  {:<32} x{}", c.class.to_string(), c.multiplicity);
        }
    }
    let Some(sr) = &r.spectrum else { return };
    let _ = writeln!(out, "branch: {}", sr.branch.label());
    let mus = tally(&sr.mu_spectrum, |a, b| (a - b).abs() <= 1e-9);
    let text: Vec<String> = mus.iter().map(|(m, k)| format!("{} x{k}", real(*m))).collect();
    let _ = writeln!(out, "Spec(psi(W~)) ({} values): {}", sr.mu_spectrum.len(), text.join(", "));
    let _ = writeln!(out, "Spec(psi(U)) ({} values):", sr.psi_spectrum.len());
    for (z, k) in tally(&sr.psi_spectrum, |a, b| (a - b).norm() <= 1e-9) {
        let _ = writeln!(out, "  {:<32} x{k}", format_complex(z, 6));
    }
    let _ = writeln!(out, "right spectrum of U:");
    let _ = writeln!(out, "  {:<32} {:>4}  {:<11} mu", "class", "mult", "source");
    for c in &sr.classes {
        let mu = c.mu.map(real).unwrap_or_else(|| "-".into());
        let _ = writeln!(out, "  {:<32} {:>4}  {:<11} {mu}", c.class.to_string(), c.multiplicity, c.source.label());
    }
    let sigma: Vec<String> = sr.right_spectrum().iter().map(ConjugacyClass::to_string).collect();
    let _ = writeln!(out, "sigma_r(U) = {}", sigma.join(" ∪ "));
    let _ = writeln!(
        out,
        "trivial multiplicity adjustments: +1 by {}, -1 by {}",
        sr.plus_one_adjustment, sr.minus_one_adjustment
    );
    for w in &sr.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    if let Some(diff) = &sr.oracle_diff {
        if diff.is_empty() {
            let _ = writeln!(out, "oracle: direct diagonalization agrees (max distance {:.1e})", diff.max_distance);
        } else {
            let _ = writeln!(out, "oracle: DISAGREES within {:.1e}", diff.tolerance);
            for z in &diff.only_left {
                let _ = writeln!(out, "  mapped only: {}", format_complex(*z, 6));
            }
            for z in &diff.only_right {
                let _ = writeln!(out, "  direct only: {}", format_complex(*z, 6));
            }
        }
    }
}

fn minpoly_section(out: &mut String, r: &InstanceReport) {
    let Some(mp) = &r.minimal_polynomial else { return };
    let _ = writeln!(out, "minimal polynomial: {} (residual {:.1e})", mp.text, mp.residual);
    for f in &mp.factors {
        let _ = writeln!(out, "  root subspace of ({}): dim {}", f.poly, f.root_subspace_dim);
    }
    if !mp.direct_sum {
        let _ = writeln!(out, "  root subspaces do not form a direct sum");
    }
    for w in &mp.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
}

fn group_section(out: &mut String, g: &EigenvectorGroup) {
    let how = match g.method {
        EigenvectorMethod::Lift => "lifted",
        EigenvectorMethod::Direct => "kernel of U - lambda I",
    };
    let _ = write!(out, "eigenvectors for lambda = {} ({how}", format_complex(g.lambda, 6));
    if let Some(mu) = g.mu {
        let _ = write!(out, ", mu = {}", real(mu));
    }
    let _ = writeln!(
        out,
        "): {} of {}, {}",
        g.vectors.len(),
        g.expected,
        if g.independent { "H-independent" } else { "H-DEPENDENT" }
    );
    for (k, e) in g.vectors.iter().enumerate() {
        if let Some(src) = &e.source {
            let _ = writeln!(out, "  v{}  = {}", k + 1, vector(src));
        }
        let _ = writeln!(out, "  e{}  = {}", k + 1, vector(&e.vector));
        let _ = writeln!(out, "  residual {:.1e}", e.residual);
    }
}

fn identity_line(out: &mut String, c: &IdentityCheck) {
    let _ = writeln!(
        out,
        "  {:<30} {}  max rel error {:.1e} (tol {:.0e}, {} samples)",
        c.name,
        if c.pass { "pass" } else { "FAIL" },
        c.max_rel_error,
        c.tolerance,
        c.samples.len()
    );
}

pub fn instance(r: &InstanceReport) -> String {
    let mut out = String::new();
    header(&mut out, r);
    spectrum_section(&mut out, r);
    minpoly_section(&mut out, r);
    for g in &r.eigenvectors {
        group_section(&mut out, g);
    }
    if let Some(st) = &r.structure {
        let _ = writeln!(out, "structure:");
        for c in &st.checks {
            let _ = writeln!(
                out,
                "  {:<30} {}  residual {:.1e} (tol {:.0e})",
                c.name,
                if c.pass { "pass" } else { "FAIL" },
                c.residual,
                c.tolerance
            );
        }
    }
    if !r.identities.is_empty() {
        let _ = writeln!(out, "identities:");
        for c in &r.identities {
            identity_line(&mut out, c);
        }
    }
    for f in &r.failures {
        let _ = writeln!(out, "FAIL: {f}");
    }
    out
}

pub fn report(r: &Report) -> String {
    let mut out = format!("{} {} {}\n", r.tool, r.version, r.command);
    if !r.seeds.is_empty() && r.instances.len() > 1 {
        let pass = r.instances.iter().filter(|i| i.pass).count();
        let _ = writeln!(out, "{pass}/{} instances pass", r.instances.len());
        for i in r.instances.iter().filter(|i| !i.pass) {
            let _ = writeln!(out);
            out.push_str(&instance(i));
        }
        return out;
    }
    for i in &r.instances {
        out.push_str(&instance(i));
    }
    if !r.examples.is_empty() {
        let w = r.examples.iter().map(|e| e.name.len()).max().unwrap_or(0);
        for e in &r.examples {
            let _ = writeln!(out, "{}  {:<w$}", if e.pass { "ok  " } else { "FAIL" }, e.name);
            let _ = writeln!(out, "      expected: {}", e.expected);
            let _ = writeln!(out, "      computed: {}", e.computed);
        }
        let pass = r.examples.iter().filter(|e| e.pass).count();
        let _ = writeln!(out, "{pass}/{} golden checks match", r.examples.len());
    }
    out
}
