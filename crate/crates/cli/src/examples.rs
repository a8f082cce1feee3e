//! Golden suite: the two small right-eigenvalue examples and the K3 walk
//! worked end to end against hard-coded values.

use num_complex::Complex64;

use qwalk_core::quaternion::format_complex;
use qwalk_core::qmatrix::{right_proportional, QMatrix};
use qwalk_core::minpoly::span_residual;
use qwalk_core::szegedy::{compare_multisets, full_spectrum_with};
use qwalk_core::{build_walk, right_eigenvalues, verify_structure, QVector, Quaternion, RightEigenvalue};

use crate::bundled;
use crate::commands::{direct_group, lift_group, minpoly_summary};
use crate::error::CliResult;
use crate::instance::parse_instance;
use crate::report::{GoldenCheck, MinimalPolynomialSummary};

const TOL: f64 = 1e-9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn q(x0: f64, x1: f64, x2: f64, x3: f64) -> Quaternion {
    Quaternion::new(x0, x1, x2, x3)
}

fn check(name: &str, expected: String, computed: String, pass: bool) -> GoldenCheck {
    GoldenCheck { name: name.to_string(), expected, computed, pass }
}

fn fmt_classes(classes: &[(Complex64, usize)]) -> String {
    classes
        .iter()
        .map(|(z, m)| format!("{} x{m}", qwalk_core::ConjugacyClass::of_complex(*z)))
        .collect::<Vec<_>>()
        .join(" ∪ ")
}

fn classes_check(name: &str, computed: &[RightEigenvalue], expected: &[(Complex64, usize)]) -> GoldenCheck {
    let got: Vec<(Complex64, usize)> = computed.iter().map(|e| (e.class.rep, e.multiplicity)).collect();
    let pass = got.len() == expected.len()
        && expected.iter().all(|(z, m)| got.iter().any(|(g, gm)| (g - z).norm() <= TOL && gm == m));
    check(name, fmt_classes(expected), fmt_classes(&got), pass)
}

/// Expected factors as (ascending coefficients, exponent, root subspace dim).
type FactorGolden = (Vec<f64>, usize, Option<usize>);

fn minpoly_check(name: &str, mp: &MinimalPolynomialSummary, expected: &[FactorGolden], var: &str) -> GoldenCheck {
    let matches = |coeffs: &[f64], want: &[f64]| {
        coeffs.len() == want.len() && coeffs.iter().zip(want).all(|(a, b)| (a - b).abs() <= TOL)
    };
    let pass = mp.factors.len() == expected.len()
        && expected.iter().all(|(want, e, _)| mp.factors.iter().any(|f| matches(&f.coeffs, want) && f.exponent == *e));
    let text = expected
        .iter()
        .map(|(co, e, _)| {
            let body = format!("({})", qwalk_core::RealPoly::new(co.clone()).format_with(var));
            if *e == 1 { body } else { format!("{body}^{e}") }
        })
        .collect::<String>();
    check(name, text, mp.text.clone(), pass)
}

fn dims_check(name: &str, mp: &MinimalPolynomialSummary, expected: &[FactorGolden]) -> GoldenCheck {
    let mut exp_text = Vec::new();
    let mut pass = mp.direct_sum;
    for (want, _, dim) in expected {
        let dim = dim.expect("dimension given");
        exp_text.push(format!("{}: {dim}", qwalk_core::RealPoly::new(want.clone()).format_with("x")));
        let found = mp.factors.iter().find(|f| {
            f.coeffs.len() == want.len() && f.coeffs.iter().zip(want).all(|(a, b)| (a - b).abs() <= TOL)
        });
        pass &= found.is_some_and(|f| f.root_subspace_dim == dim);
    }
    let got = mp.factors.iter().map(|f| format!("{}: {}", f.poly, f.root_subspace_dim)).collect::<Vec<_>>();
    let total: usize = mp.factors.iter().map(|f| f.root_subspace_dim).sum();
    check(
        name,
        format!("{} (direct sum)", exp_text.join(", ")),
        format!("{} ({})", got.join(", "), if mp.direct_sum { "direct sum".to_string() } else { format!("not a direct sum, total {total}") }),
        pass,
    )
}

fn diag_1_k() -> CliResult<Vec<GoldenCheck>> {
    let m = QMatrix::diagonal(&[Quaternion::ONE, Quaternion::K]);
    let classes = right_eigenvalues(&m)?;
    let mp = minpoly_summary(&m, "y")?;
    Ok(vec![
        classes_check("diag(1,k) right spectrum", &classes, &[(c(1.0, 0.0), 1), (c(0.0, 1.0), 1)]),
        minpoly_check("diag(1,k) minimal polynomial", &mp, &[(vec![-1.0, 1.0], 1, None), (vec![1.0, 0.0, 1.0], 1, None)], "y"),
    ])
}

fn antidiagonal() -> CliResult<Vec<GoldenCheck>> {
    let m = QMatrix::from_rows(&[vec![Quaternion::ZERO, Quaternion::I], vec![Quaternion::J, Quaternion::ZERO]])?;
    let classes = right_eigenvalues(&m)?;
    let mp = minpoly_summary(&m, "y")?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let r2 = std::f64::consts::SQRT_2;
    Ok(vec![
        classes_check("[[0,i],[j,0]] right spectrum", &classes, &[(c(-h, h), 1), (c(h, h), 1)]),
        minpoly_check(
            "[[0,i],[j,0]] minimal polynomial",
            &mp,
            &[(vec![1.0, r2, 1.0], 1, None), (vec![1.0, -r2, 1.0], 1, None)],
            "y",
        ),
    ])
}

/// Lifted eigenvectors u1+ .. u6+ of the K3 walk.
pub fn k3_lifted() -> Vec<QVector> {
    let s2 = 2f64.sqrt();
    let s5 = 5f64.sqrt();
    let z = Quaternion::ZERO;
    vec![
        vec![
            q(s2, 1.0, 0.0, 0.0),
            q(-s2, -1.0, 0.0, 0.0),
            q(0.0, 0.0, 1.0, s2),
            q(0.0, 0.0, -1.0, -s2),
            q(0.0, 0.0, -s2, 1.0),
            q(0.0, 0.0, s2, -1.0),
            q(2.0, s2, 0.0, 0.0),
            q(2.0, s2, 0.0, 0.0),
            q(2.0, s2, 0.0, 0.0),
        ],
        vec![
            q(0.0, 0.0, -s2, 1.0),
            q(0.0, 0.0, s2, -1.0),
            q(-1.0, s2, 0.0, 0.0),
            q(1.0, -s2, 0.0, 0.0),
            q(-s2, -1.0, 0.0, 0.0),
            q(s2, 1.0, 0.0, 0.0),
            q(0.0, 0.0, 2.0, -s2),
            q(0.0, 0.0, 2.0, -s2),
            q(0.0, 0.0, 2.0, -s2),
        ],
        vec![
            q(0.0, 3.0, 0.0, 0.0),
            q(-s5, -2.0, 0.0, 0.0),
            q(0.0, 0.0, -2.0, -s5),
            q(0.0, 0.0, 3.0, 0.0),
            q(0.0, 0.0, -s5, -1.0),
            q(0.0, 0.0, -s5, -1.0),
            q(1.0, s5, 0.0, 0.0),
            z,
            q(-1.0, -s5, 0.0, 0.0),
        ],
        vec![
            q(s5, 2.0, 0.0, 0.0),
            q(0.0, -3.0, 0.0, 0.0),
            q(0.0, 0.0, 1.0, -s5),
            q(0.0, 0.0, 1.0, -s5),
            q(0.0, 0.0, 0.0, -3.0),
            q(0.0, 0.0, -s5, 2.0),
            z,
            q(1.0, s5, 0.0, 0.0),
            q(-1.0, -s5, 0.0, 0.0),
        ],
        vec![
            q(0.0, 0.0, 0.0, 3.0),
            q(0.0, 0.0, s5, -2.0),
            q(2.0, -s5, 0.0, 0.0),
            q(-3.0, 0.0, 0.0, 0.0),
            q(-s5, 1.0, 0.0, 0.0),
            q(-s5, 1.0, 0.0, 0.0),
            q(0.0, 0.0, 1.0, -s5),
            z,
            q(0.0, 0.0, -1.0, s5),
        ],
        vec![
            q(0.0, 0.0, -s5, 2.0),
            q(0.0, 0.0, 0.0, -3.0),
            q(-1.0, -s5, 0.0, 0.0),
            q(-1.0, -s5, 0.0, 0.0),
            q(0.0, 3.0, 0.0, 0.0),
            q(-s5, -2.0, 0.0, 0.0),
            z,
            q(0.0, 0.0, 1.0, -s5),
            q(0.0, 0.0, -1.0, s5),
        ],
    ]
}

/// u7, u8, u9: eigenvectors for -1.
pub fn k3_minus_one() -> Vec<QVector> {
    let (z, o, i, j) = (Quaternion::ZERO, Quaternion::ONE, Quaternion::I, Quaternion::J);
    vec![
        vec![i, i, z, z, z, z, -o, o, z],
        vec![j, j, -i, -i, o, o, z, z, z],
        vec![i, i, j, j, z, z, -o, z, o],
    ]
}

/// Each computed vector is a right multiple of a distinct golden vector.
fn proportional_match(computed: &[QVector], golden: &[QVector]) -> CliResult<bool> {
    if computed.len() != golden.len() {
        return Ok(false);
    }
    let mut used = vec![false; golden.len()];
    for v in computed {
        let mut hit = None;
        for (k, u) in golden.iter().enumerate() {
            if !used[k] && right_proportional(v, u)? {
                hit = Some(k);
                break;
            }
        }
        match hit {
            Some(k) => used[k] = true,
            None => return Ok(false),
        }
    }
    Ok(true)
}

fn k3() -> CliResult<Vec<GoldenCheck>> {
    let inst = parse_instance(bundled::bundled("k3_loops").expect("bundled k3_loops"), "k3_loops")?;
    let ops = build_walk(&inst.graph, &inst.weights)?;
    let sr = full_spectrum_with(&inst.graph, &ops, false)?;
    let mut out = Vec::new();

    let mu_expected = [-2.0 / 3.0, -2.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0];
    let mu_pass = sr.mu_spectrum.len() == mu_expected.len()
        && sr.mu_spectrum.iter().zip(&mu_expected).all(|(a, b)| (a - b).abs() <= TOL);
    let fmt_mu = |v: &[f64]| v.iter().map(|m| format_complex(c(*m, 0.0), 6)).collect::<Vec<_>>().join(", ");
    out.push(check("K3 Spec(psi(W~))", fmt_mu(&mu_expected), fmt_mu(&sr.mu_spectrum), mu_pass));

    let la = c(-1.0 / 3.0, 2.0 * 2f64.sqrt() / 3.0);
    let lb = c(2.0 / 3.0, 5f64.sqrt() / 3.0);
    let mut psi_expected = Vec::new();
    for (z, k) in [(la, 2), (la.conj(), 2), (lb, 4), (lb.conj(), 4), (c(-1.0, 0.0), 6)] {
        psi_expected.extend(std::iter::repeat_n(z, k));
    }
    let diff = compare_multisets(&sr.psi_spectrum, &psi_expected, TOL);
    let summarize = |v: &[Complex64]| {
        let mut groups: Vec<(Complex64, usize)> = Vec::new();
        for z in v {
            match groups.iter_mut().find(|(g, _)| (g - z).norm() <= 1e-6) {
                Some(g) => g.1 += 1,
                None => groups.push((*z, 1)),
            }
        }
        groups.iter().map(|(z, k)| format!("{} x{k}", format_complex(*z, 6))).collect::<Vec<_>>().join(", ")
    };
    out.push(check("K3 Spec(psi(U))", summarize(&psi_expected), summarize(&sr.psi_spectrum), diff.is_empty()));

    let classes: Vec<RightEigenvalue> = {
        let mut v: Vec<RightEigenvalue> = Vec::new();
        for cl in &sr.classes {
            match v.iter_mut().find(|e| e.class.same_as(&cl.class, 1e-8)) {
                Some(e) => e.multiplicity += cl.multiplicity,
                None => v.push(RightEigenvalue { class: cl.class, multiplicity: cl.multiplicity }),
            }
        }
        v
    };
    out.push(classes_check("K3 right spectrum", &classes, &[(c(-1.0, 0.0), 3), (la, 2), (lb, 4)]));

    let mp = minpoly_summary(&ops.u, "x")?;
    let factors: Vec<FactorGolden> = vec![
        (vec![1.0, 1.0], 1, Some(3)),
        (vec![1.0, 2.0 / 3.0, 1.0], 1, Some(2)),
        (vec![1.0, -4.0 / 3.0, 1.0], 1, Some(4)),
    ];
    out.push(minpoly_check("K3 minimal polynomial", &mp, &factors, "x"));
    out.push(dims_check("K3 root subspace dimensions", &mp, &factors));

    let golden = k3_lifted();
    for (mu, range, label) in [(-2.0 / 3.0, 0..2, "u1+, u2+"), (4.0 / 3.0, 2..6, "u3+ .. u6+")] {
        let grp = lift_group(&ops, mu, range.len())?;
        let vectors: Vec<QVector> = grp.vectors.iter().map(|e| e.vector.clone()).collect();
        let worst = grp.vectors.iter().map(|e| e.residual).fold(0.0, f64::max);
        let prop = proportional_match(&vectors, &golden[range])?;
        let pass = prop && grp.independent && worst <= 1e-8;
        out.push(check(
            &format!("K3 lifts for mu = {}", format_complex(c(mu, 0.0), 6)),
            format!("right multiples of {label}, independent, residual <= 1e-8"),
            format!(
                "{}, {}, residual {worst:.1e}",
                if prop { "right multiples" } else { "not proportional" },
                if grp.independent { "independent" } else { "dependent" }
            ),
            pass,
        ));
    }

    let grp = direct_group(&ops, -1.0, 3)?;
    let basis: Vec<QVector> = grp.vectors.iter().map(|e| e.vector.clone()).collect();
    let mut span = 0.0f64;
    for u in k3_minus_one() {
        span = span.max(span_residual(&basis, &u)?);
    }
    let worst = grp.vectors.iter().map(|e| e.residual).fold(0.0, f64::max);
    let pass = basis.len() == 3 && grp.independent && span <= 1e-8 && worst <= 1e-8;
    out.push(check(
        "K3 eigenvectors for -1",
        "3 independent vectors spanning u7, u8, u9".to_string(),
        format!(
            "{} {} vectors, span residual {span:.1e}, eigen residual {worst:.1e}",
            basis.len(),
            if grp.independent { "independent" } else { "dependent" }
        ),
        pass,
    ));

    let st = verify_structure(&ops)?;
    let worst = st.checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    out.push(check(
        "K3 structural identities",
        format!("{} identities hold", st.checks.len()),
        format!("{} of {} hold, max residual {worst:.1e}", st.checks.iter().filter(|c| c.pass).count(), st.checks.len()),
        st.pass,
    ));
    Ok(out)
}

/// Every golden check, in a fixed order.
pub fn run() -> CliResult<Vec<GoldenCheck>> {
    let mut out = diag_1_k()?;
    out.extend(antidiagonal()?);
    out.extend(k3()?);
    Ok(out)
}
