use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmatrix::C64;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg;
use crate::qmatrix::cluster_classes;
use crate::quaternion::ConjugacyClass;
use crate::tol;

use super::walk::{build_walk, WalkOperators};
use super::weights::{check_unitary_condition, WeightMap};

/// The two unit-circle preimages of `μ` under `λ ↦ λ + 1/λ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralImage {
    pub mu: f64,
    /// `μ` after clamping into `[-2, 2]`.
    pub mu_used: f64,
    pub plus: Complex64,
    pub minus: Complex64,
    pub warning: Option<String>,
}

/// `λ± = μ/2 ± i√(1 - (μ/2)²)`.
///
/// Values within `MU_SNAP` of ±2 are snapped onto ±2; values further outside
/// but within `MU_DOMAIN` are clamped with a warning; anything beyond is a
/// domain error.
pub fn spectral_map(mu: f64) -> Result<SpectralImage> {
    if !mu.is_finite() {
        return Err(Error::Domain(format!("μ = {mu} is not finite")));
    }
    let excess = mu.abs() - 2.0;
    let mut warning = None;
    let mu_used = if excess.abs() <= tol::MU_SNAP {
        2.0f64.copysign(mu)
    } else if excess <= 0.0 {
        mu
    } else if excess <= tol::MU_DOMAIN {
        warning = Some(format!("μ = {mu:.12} lies {excess:.3e} outside [-2, 2]; clamped"));
        2.0f64.copysign(mu)
    } else {
        return Err(Error::Domain(format!("μ = {mu} lies outside [-2, 2] by {excess:.3e}; the walk is not unitary")));
    };
    let re = mu_used / 2.0;
    let im = (1.0 - re * re).max(0.0).sqrt();
    Ok(SpectralImage { mu, mu_used, plus: C64::new(re, im), minus: C64::new(re, -im), warning })
}

/// Which case of the spectral mapping applies, decided by the loopless core `G′`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `G′` connected and not a tree.
    NonTree,
    /// `G′` a tree and `G` has no loops.
    TreeNoLoops,
    /// `G′` a tree and `G` has loops.
    TreeWithLoops,
    /// `G′` disconnected; the same multiplicity bookkeeping applies.
    Disconnected,
}

impl Branch {
    pub fn of(g: &Graph) -> Branch {
        if g.is_tree_core() {
            if g.m1() == 0 {
                Branch::TreeNoLoops
            } else {
                Branch::TreeWithLoops
            }
        } else if g.is_connected() {
            Branch::NonTree
        } else {
            Branch::Disconnected
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Branch::NonTree => "non-tree",
            Branch::TreeNoLoops => "tree, no loops",
            Branch::TreeWithLoops => "tree with loops",
            Branch::Disconnected => "disconnected core",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassSource {
    Mapped,
    TrivialPlusOne,
    TrivialMinusOne,
}

impl ClassSource {
    pub fn label(&self) -> &'static str {
        match self {
            ClassSource::Mapped => "mapped",
            ClassSource::TrivialPlusOne => "trivial +1",
            ClassSource::TrivialMinusOne => "trivial -1",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumClass {
    pub class: ConjugacyClass,
    pub multiplicity: usize,
    pub source: ClassSource,
    /// The `μ` a mapped class comes from.
    pub mu: Option<f64>,
}

/// Multiset comparison of two spectra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultisetDiff {
    pub tolerance: f64,
    /// Largest distance among matched pairs.
    pub max_distance: f64,
    pub only_left: Vec<Complex64>,
    pub only_right: Vec<Complex64>,
}

impl MultisetDiff {
    pub fn is_empty(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }
}

/// Greedy nearest matching: repeatedly pairs the globally closest remaining
/// elements while they are within `tolerance`.
pub fn compare_multisets(left: &[Complex64], right: &[Complex64], tolerance: f64) -> MultisetDiff {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, a) in left.iter().enumerate() {
        for (j, b) in right.iter().enumerate() {
            let d = (a - b).norm();
            if d <= tolerance {
                pairs.push((d, i, j));
            }
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut used_l = vec![false; left.len()];
    let mut used_r = vec![false; right.len()];
    let mut max_distance = 0.0f64;
    for (d, i, j) in pairs {
        if !used_l[i] && !used_r[j] {
            used_l[i] = true;
            used_r[j] = true;
            max_distance = max_distance.max(d);
        }
    }
    let only_left = left.iter().zip(&used_l).filter(|(_, u)| !**u).map(|(z, _)| *z).collect();
    let only_right = right.iter().zip(&used_r).filter(|(_, u)| !**u).map(|(z, _)| *z).collect();
    MultisetDiff { tolerance, max_distance, only_left, only_right }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub branch: Branch,
    /// Eigenvalues of ψ(W̃), ascending, `2n` values.
    pub mu_spectrum: Vec<f64>,
    /// Eigenvalues of ψ(U) from the spectral mapping, `2m′` values, canonical order.
    pub psi_spectrum: Vec<Complex64>,
    /// Right spectrum of `U` as classes, ordered by ascending real part then source.
    pub classes: Vec<SpectrumClass>,
    /// Signed multiplicities `2m0 - 2n` of +1 and `2m0 + 2m1 - 2n` of -1.
    pub plus_one_adjustment: i64,
    pub minus_one_adjustment: i64,
    pub warnings: Vec<String>,
    /// Direct diagonalization of ψ(U) and its diff against `psi_spectrum`, if requested.
    pub direct: Option<Vec<Complex64>>,
    pub oracle_diff: Option<MultisetDiff>,
}

impl SpectrumReport {
    /// The distinct classes making up `σ_r(U)`.
    pub fn right_spectrum(&self) -> Vec<ConjugacyClass> {
        let mut out: Vec<ConjugacyClass> = Vec::new();
        for c in &self.classes {
            if !out.iter().any(|o| o.same_as(&c.class, tol::CLASS)) {
                out.push(c.class);
            }
        }
        out.sort_by(|a, b| a.rep.re.total_cmp(&b.rep.re).then(a.rep.im.total_cmp(&b.rep.im)));
        out
    }

    pub fn oracle_agrees(&self) -> Option<bool> {
        self.oracle_diff.as_ref().map(MultisetDiff::is_empty)
    }
}

/// Eigenvalues of ψ(U) by direct diagonalization.
pub fn direct_spectrum(ops: &WalkOperators) -> Result<Vec<Complex64>> {
    linalg::eigenvalues(&ops.u.psi())
}

/// Right spectrum of `U` by the spectral mapping; the unitarity condition
/// must hold.
pub fn full_spectrum(g: &Graph, q: &WeightMap, oracle: bool) -> Result<SpectrumReport> {
    let report = check_unitary_condition(g, q)?;
    if !report.pass {
        let bad: Vec<String> = report
            .vertices
            .iter()
            .filter(|v| !v.pass)
            .map(|v| format!("vertex {} (sum {:.12})", v.vertex, v.sum))
            .collect();
        return Err(Error::Precondition(format!("unitarity condition fails at {}", bad.join(", "))));
    }
    let ops = build_walk(g, q)?;
    full_spectrum_with(g, &ops, oracle)
}

/// As [`full_spectrum`], for operators already built.
pub fn full_spectrum_with(g: &Graph, ops: &WalkOperators, oracle: bool) -> Result<SpectrumReport> {
    let n = g.n() as i64;
    let (m0, m1) = (g.m0() as i64, g.m1() as i64);
    let plus_adj = 2 * m0 - 2 * n;
    let minus_adj = 2 * m0 + 2 * m1 - 2 * n;
    let mut warnings = Vec::new();

    let psi_w = ops.w_tilde.psi();
    let raw = linalg::eigenvalues(&psi_w)?;
    let scale = psi_w.frobenius().max(1.0);
    let worst_im = raw.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
    if worst_im > tol::HERMITIAN_PAIRING * scale {
        warnings.push(format!("ψ(W̃) eigenvalues carry imaginary parts up to {worst_im:.3e}"));
    }
    let mut mu_spectrum: Vec<f64> = raw.iter().map(|z| z.re).collect();
    mu_spectrum.sort_by(f64::total_cmp);

    // (value, μ) for each mapped ψ(U) eigenvalue
    let mut mapped: Vec<(C64, f64)> = Vec::with_capacity(2 * mu_spectrum.len());
    for &mu in &mu_spectrum {
        let img = spectral_map(mu)?;
        if let Some(w) = &img.warning {
            warnings.push(w.clone());
        }
        mapped.push((img.plus, img.mu_used));
        mapped.push((img.minus, img.mu_used));
    }

    let values: Vec<C64> = mapped.iter().map(|p| p.0).collect();
    let (clusters, _) = cluster_classes(&values, tol::CLASS);
    let mut classes = Vec::new();
    let mut seen_plus = false;
    let mut seen_minus = false;
    for c in &clusters {
        if c.count % 2 != 0 {
            return Err(Error::Internal(format!("odd ψ-count {} in class {}", c.count, c.rep)));
        }
        let mu = mapped
            .iter()
            .find(|(z, _)| (C64::new(z.re, z.im.abs()) - c.rep).norm() <= tol::SPECTRUM_MATCH.max(tol::CLASS))
            .map(|p| p.1);
        let mut count = c.count as i64;
        let is_one = c.rep.im == 0.0 && (c.rep.re - 1.0).abs() <= tol::SPECTRUM_MATCH;
        let is_minus_one = c.rep.im == 0.0 && (c.rep.re + 1.0).abs() <= tol::SPECTRUM_MATCH;
        let rep = if is_one {
            C64::new(1.0, 0.0)
        } else if is_minus_one {
            C64::new(-1.0, 0.0)
        } else {
            c.rep
        };
        if is_one {
            seen_plus = true;
            if plus_adj < 0 {
                count += plus_adj;
            }
        }
        if is_minus_one {
            seen_minus = true;
            if minus_adj < 0 {
                count += minus_adj;
            }
        }
        if count < 0 {
            return Err(Error::Internal(format!("cannot remove {} copies of {}", -count + c.count as i64, rep)));
        }
        if count > 0 {
            classes.push(SpectrumClass {
                class: ConjugacyClass { rep },
                multiplicity: (count / 2) as usize,
                source: ClassSource::Mapped,
                mu,
            });
        }
        if is_one && plus_adj > 0 {
            classes.push(trivial(1.0, plus_adj, ClassSource::TrivialPlusOne));
        }
        if is_minus_one && minus_adj > 0 {
            classes.push(trivial(-1.0, minus_adj, ClassSource::TrivialMinusOne));
        }
    }
    if !seen_plus {
        if plus_adj < 0 {
            return Err(Error::Internal(format!("no mapped +1 to remove {} copies from", -plus_adj)));
        }
        if plus_adj > 0 {
            classes.push(trivial(1.0, plus_adj, ClassSource::TrivialPlusOne));
        }
    }
    if !seen_minus {
        if minus_adj < 0 {
            return Err(Error::Internal(format!("no mapped -1 to remove {} copies from", -minus_adj)));
        }
        if minus_adj > 0 {
            classes.push(trivial(-1.0, minus_adj, ClassSource::TrivialMinusOne));
        }
    }
    classes.sort_by(|a, b| {
        a.class
            .rep
            .re
            .total_cmp(&b.class.rep.re)
            .then(a.class.rep.im.total_cmp(&b.class.rep.im))
            .then((a.source as u8).cmp(&(b.source as u8)))
    });

    let mut psi_spectrum = Vec::with_capacity(2 * g.m_prime());
    for c in &classes {
        for _ in 0..c.multiplicity {
            psi_spectrum.push(c.class.rep);
            psi_spectrum.push(c.class.rep.conj());
        }
    }
    linalg::sort_canonical(&mut psi_spectrum, |z| *z);
    if psi_spectrum.len() != 2 * g.m_prime() {
        return Err(Error::Internal(format!(
            "spectral mapping produced {} values for {} arcs",
            psi_spectrum.len(),
            g.m_prime()
        )));
    }
    let (direct, oracle_diff) = if oracle {
        let d = direct_spectrum(ops)?;
        let diff = compare_multisets(&psi_spectrum, &d, tol::SPECTRUM_MATCH);
        (Some(d), Some(diff))
    } else {
        (None, None)
    };
    Ok(SpectrumReport {
        branch: Branch::of(g),
        mu_spectrum,
        psi_spectrum,
        classes,
        plus_one_adjustment: plus_adj,
        minus_one_adjustment: minus_adj,
        warnings,
        direct,
        oracle_diff,
    })
}

fn trivial(value: f64, count: i64, source: ClassSource) -> SpectrumClass {
    SpectrumClass {
        class: ConjugacyClass { rep: C64::new(value, 0.0) },
        multiplicity: (count / 2) as usize,
        source,
        mu: None,
    }
}
