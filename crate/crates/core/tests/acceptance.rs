//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits non-zero on any FAIL.

use std::f64::consts::{FRAC_PI_4, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use foldmaps_core::halfangle::{build_halfangle, pythagorean_residual, trig_residuals};
use foldmaps_core::linalg::{haar_orthogonal_real, haar_special_unitary, uniform_cpm_point};
use foldmaps_core::numtopo::{
    degree_estimate, CpmModel, EstimateConfig, SphereModel, Su3Model, DEFAULT_STEP,
};
use foldmaps_core::sphere_cpm::{cpm_fold, cpm_geodesic, projective_distance, sphere_power};
use foldmaps_core::su3::{normal_geodesic, power_map, psi, realize_degree, trace_based_x, PsiMap};
use foldmaps_core::weyl::{
    catalog, degree_discrepancy, degree_formula, degree_oracle_auto, grid_data,
    homology_sphere_chi, lefschetz_formula, lefschetz_oracle, lookup, parity_grid,
    product_spheres_chi, realizable_su3_degree, CohomologyRing, HomologySphereChi, Parity,
    Su3Realizability,
};
use foldmaps_core::{
    Complex64, ComplexMatrix, ComplexVector, DegreeEstimate, RandomSource, RealVector, Realization,
};

const SAMPLES: usize = 200_000;
const SEED: u64 = 42;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn estimate_line(
    label: &str,
    target: i64,
    est: &Result<DegreeEstimate, foldmaps_core::Error>,
) -> (bool, String) {
    match est {
        Ok(e) => {
            let ok = e.agrees_with(target as f64);
            (
                ok,
                format!(
                    "{label}: mean {:.4} ± {:.4} (target {target})",
                    e.mean, e.standard_error
                ),
            )
        }
        Err(err) => (false, format!("{label}: error {err}")),
    }
}

fn config(stream: u64) -> EstimateConfig {
    EstimateConfig {
        stream,
        step: DEFAULT_STEP,
        ..EstimateConfig::new(SAMPLES, SEED)
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = RandomSource::new(SEED, 1);
    let (mut id, mut tr) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let b = haar_special_unitary(3, &mut rng).unwrap();
        id = id.max(psi(1, &b).map_or(f64::INFINITY, |x| x.max_abs_diff(&b)));
        tr = tr.max(psi(-1, &b).map_or(f64::INFINITY, |x| x.max_abs_diff(&b.transpose())));
    }
    let elapsed = start.elapsed();
    outcome(
        id <= 1e-13 && tr <= 1e-13 && elapsed < Duration::from_secs(5),
        format!("psi_1 residual {id:.2e}, psi_-1 residual {tr:.2e}, {elapsed:.2?}"),
    )
}

fn criterion_2() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let t = TAU * (i as f64 + 0.5) / 1000.0 - std::f64::consts::PI;
        for k in [-7i64, -5, -3, -1, 1, 3, 5, 7, 9] {
            let d = psi(k, &normal_geodesic(t)).map_or(f64::INFINITY, |x| {
                x.distance(&normal_geodesic(k as f64 * t))
            });
            worst = worst.max(d);
        }
    }
    outcome(
        worst <= 1e-9,
        format!("max |psi_k(gamma(t)) - gamma(kt)| = {worst:.2e}"),
    )
}

fn criterion_3() -> Outcome {
    let mut rng = RandomSource::new(SEED, 3);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let a = haar_special_unitary(3, &mut rng).unwrap();
        let b = haar_special_unitary(3, &mut rng).unwrap();
        let conj = |m: &ComplexMatrix| &(&a * m) * &a.transpose();
        for k in [-7i64, -3, 3, 5] {
            let d = match (psi(k, &conj(&b)), psi(k, &b)) {
                (Ok(l), Ok(r)) => l.distance(&conj(&r)),
                _ => f64::INFINITY,
            };
            worst = worst.max(d);
        }
    }
    let a = ComplexMatrix::from_fn(3, |i, j| match (i, j) {
        (0, 0) => Complex64::from_polar(1.0, FRAC_PI_4),
        (1, 1) => Complex64::from_polar(1.0, -FRAC_PI_4),
        (2, 2) => Complex64::new(1.0, 0.0),
        _ => Complex64::new(0.0, 0.0),
    });
    let b = &(&a * &normal_geodesic(FRAC_PI_4)) * &a.transpose();
    let want = &(&a * &normal_geodesic(3.0 * FRAC_PI_4)) * &a.transpose();
    let pinned = psi(3, &b).map_or(f64::INFINITY, |x| x.distance(&want));
    let printed = PsiMap::new(3).unwrap().apply_at(&b, trace_based_x(&b).re);
    let printed_defect = printed.special_unitary_defect();
    outcome(
        worst <= 1e-8 && pinned <= 1e-10 && printed_defect > 0.1,
        format!(
            "equivariance {worst:.2e}, pinned input {pinned:.2e}, trace-based x defect {printed_defect:.2e}"
        ),
    )
}

fn criterion_4() -> Outcome {
    let su3 = Su3Model::new();
    let mut lines = Vec::new();
    let mut all = true;
    let mut record =
        |label: &str, target: i64, est: Result<DegreeEstimate, foldmaps_core::Error>| {
            let (ok, line) = estimate_line(label, target, &est);
            all &= ok;
            lines.push(line);
        };
    for (stream, k, target) in [(40u64, 3i64, 3i64), (41, -3, -3), (42, 5, 5)] {
        let map = PsiMap::new(k).unwrap();
        let f = |b: &ComplexMatrix| map.apply(b);
        record(
            &format!("psi_{k}"),
            target,
            degree_estimate(&f, &su3, &config(stream), None),
        );
    }
    for (stream, k, target) in [(43u64, 2i64, 4i64), (44, 3, 9)] {
        let f = |b: &ComplexMatrix| power_map(k, b);
        record(
            &format!("rho_{k}"),
            target,
            degree_estimate(&f, &su3, &config(stream), None),
        );
    }
    for (stream, n, k, target) in [(45u64, 3usize, 3i64, 3i64), (46, 2, 2, 0), (47, 2, 3, 1)] {
        let model = SphereModel::new(n).unwrap();
        let f = |p: &RealVector| sphere_power(k, p);
        record(
            &format!("S{n} power {k}"),
            target,
            degree_estimate(&f, &model, &config(stream), None),
        );
    }
    let cp3 = CpmModel::new(3).unwrap();
    for (stream, k, target) in [(48u64, 3i64, -1i64), (49, 5, 1)] {
        let f = |z: &ComplexVector| cpm_fold(k, z);
        record(
            &format!("CP3 fold {k}"),
            target,
            degree_estimate(&f, &cp3, &config(stream), None),
        );
    }
    outcome(all, lines.join("; "))
}

fn criterion_5() -> Outcome {
    let mut rng = RandomSource::new(SEED, 5);
    let mut exact = true;
    let (mut trig, mut pyth) = (0.0f64, 0.0f64);
    for j in 0..=25u32 {
        let p = build_halfangle(j).unwrap();
        exact &= p.exact_identity_residual().is_zero();
        for _ in 0..100 {
            let (a, b) = trig_residuals(&p, std::f64::consts::PI * rng.uniform());
            trig = trig.max(a).max(b);
            pyth = pyth.max(pythagorean_residual(&p, rng.uniform()));
        }
    }
    outcome(
        exact && trig <= 1e-9 && pyth <= 1e-9,
        format!(
            "exact identity {}, trig {trig:.2e}, pythagorean {pyth:.2e}",
            if exact { "zero" } else { "NONZERO" }
        ),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut mismatches = 0;
    let mut cases = 0;
    for w in (2..=12u32).step_by(2) {
        for (p0, p1) in parity_grid(w) {
            let d = grid_data(w, p0, p1);
            let mut js = vec![-6i64, -4, -2, 2, 4, 6];
            if p0 == p1 {
                js.extend([-5, -3, -1, 1, 3, 5]);
            }
            for j in js {
                cases += 1;
                if degree_oracle_auto(&d, j).ok() != degree_formula(&d, j).ok() {
                    mismatches += 1;
                }
            }
        }
    }
    let mixed = grid_data(4, Parity::Odd, Parity::Even);
    let oracle = degree_oracle_auto(&mixed, 1);
    let flagged = degree_discrepancy(&mixed, 1) == Ok(Some((1, -1)));
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && oracle == Ok(-1) && flagged && elapsed < Duration::from_secs(1),
        format!(
            "{mismatches}/{cases} mismatches, mixed |W|=4 j=1 oracle {oracle:?}, discrepancy flagged {flagged}, {elapsed:.2?}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let check = |name: &str, want: &dyn Fn(i64, i64) -> i64| -> bool {
        let d = lookup(name).unwrap().data;
        (-6i64..=6).filter(|&j| j != 0).all(|j| {
            let w = want(j, d.fold(j).k());
            lefschetz_oracle(&d, j) == Ok(w) && lefschetz_formula(&d, j) == Ok(w)
        })
    };
    let results = [
        ("SU3 0", check("SU3", &|_, _| 0)),
        ("M7_1 2(1-k)", check("M7_1", &|_, k| 2 * (1 - k))),
        ("M7_2 3(1-k)", check("M7_2", &|_, k| 3 * (1 - k))),
        (
            "S^odd 1-k",
            ["S3", "S5", "S7"].iter().all(|n| check(n, &|_, k| 1 - k)),
        ),
        (
            "S2 {1,2}",
            check("S2", &|_, k| if k % 2 == 0 { 1 } else { 2 }),
        ),
        (
            "CP^odd {0,m+1}",
            [1i64, 3, 5].iter().all(|&m| {
                check(&format!("CP{m}"), &|j, _| {
                    if j % 2 == 0 {
                        m + 1
                    } else {
                        0
                    }
                })
            }),
        ),
    ];
    let whole_catalog = catalog().iter().all(|e| {
        (-6i64..=6)
            .filter(|&j| j != 0)
            .all(|j| lefschetz_oracle(&e.data, j) == lefschetz_formula(&e.data, j))
    });
    let failed: Vec<&str> = results
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| *n)
        .collect();
    outcome(
        failed.is_empty() && whole_catalog,
        if failed.is_empty() {
            format!("all six families exact; oracle = formula on whole catalog: {whole_catalog}")
        } else {
            format!("failed: {}", failed.join(", "))
        },
    )
}

fn criterion_8() -> Outcome {
    let mut ok = true;
    for k in [-7i64, -3, -1, 1, 3, 5, 9] {
        let a = CohomologyRing::exterior(vec![3, 5], vec![k, 1]).unwrap();
        ok &= (a.degree(), a.lefschetz()) == (k, 0);
        let b = CohomologyRing::exterior(vec![3, 5], vec![k, k]).unwrap();
        ok &= (b.degree(), b.lefschetz()) == (k * k, (1 - k) * (1 - k));
    }
    let t = CohomologyRing::truncated(2, 3, -1).unwrap();
    let trunc = (t.degree(), t.lefschetz());
    ok &= trunc == (-1, 0);
    let ps = product_spheres_chi(&[3, 4], 2).unwrap();
    ok &= ps.chi == 4 && ps.is_feasible() && ps.chi == lookup("CP3").unwrap().data.chi_m();
    let hs = (1..=6u32)
        .all(|h| homology_sphere_chi(2 * h, None) == Ok(HomologySphereChi::Derived(2 * h as i64)));
    ok &= hs;
    outcome(
        ok,
        format!("truncated (d=-1, m=3) -> {trunc:?}; chi(G/H) for S3xS4, |W|=2: {}; homology sphere chi = |W|: {hs}", ps.chi),
    )
}

fn criterion_9() -> Outcome {
    let agree = (-100i64..=100).all(|d| {
        let want = d != 0 && d.trailing_zeros() % 2 == 0;
        match realizable_su3_degree(d) {
            Su3Realizability::Yes => want,
            Su3Realizability::No => !want && d != 0,
            Su3Realizability::ZeroCaveat => d == 0,
        }
    });
    let Realization::Plan(plan) = realize_degree(12) else {
        return outcome(false, "realize_degree(12) produced no plan");
    };
    let composed = plan.map().unwrap();
    let f = |b: &ComplexMatrix| composed.apply(b);
    let est = degree_estimate(&f, &Su3Model::new(), &config(50), None);
    let (ok, line) = estimate_line(
        &format!("rho_{} o psi_{}", plan.power(), plan.psi_k()),
        12,
        &est,
    );
    let shape = plan.power() == 2 && plan.psi_k() == 3;
    outcome(
        agree && ok && shape,
        format!("|d| <= 100 realizability agrees: {agree}; {line}"),
    )
}

fn criterion_10() -> Outcome {
    let mut rng = RandomSource::new(SEED, 10);
    let m = 3;
    let mut worst = 0.0f64;
    let mut smallest_zeta = f64::INFINITY;
    for i in 0..1000 {
        let z = if i < 100 {
            // Straddle the |zᵀz| = 0 locus at scales from 1e-4 down to exact.
            let eps = if i % 10 == 0 {
                0.0
            } else {
                10f64.powi(-(4 + i % 10))
            };
            let g = haar_orthogonal_real(m + 1, &mut rng).unwrap();
            let gc = g.map(|a| Complex64::new(a, 0.0));
            let p = &gc * cpm_geodesic(m, FRAC_PI_4 - eps);
            let phase = Complex64::from_polar(1.0, TAU * rng.uniform());
            p * phase
        } else {
            uniform_cpm_point(m, &mut rng).unwrap()
        };
        let zeta = z.iter().map(|a| a * a).sum::<Complex64>().norm();
        smallest_zeta = smallest_zeta.min(zeta);
        let rotated = &z * Complex64::from_polar(1.0, TAU * rng.uniform());
        for k in [-5i64, -3, -1, 1, 3, 5, 7] {
            let d = match (cpm_fold(k, &z), cpm_fold(k, &rotated)) {
                (Ok(a), Ok(b)) => projective_distance(&a, &b),
                _ => f64::INFINITY,
            };
            worst = worst.max(d);
        }
    }
    outcome(
        worst <= 1e-9,
        format!("max representative dependence {worst:.2e} (smallest |zT z| sampled {smallest_zeta:.1e})"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "exact identities psi_1 = id, psi_-1 = transpose",
            criterion_1,
        ),
        ("geodesic folding on SU(3)", criterion_2),
        ("equivariance and pinned input", criterion_3),
        ("numerical degrees", criterion_4),
        ("half-angle identities", criterion_5),
        ("degree oracle/formula reconciliation", criterion_6),
        ("Lefschetz catalog", criterion_7),
        ("cohomology ring calculators", criterion_8),
        ("SU(3) degree realization", criterion_9),
        ("CP^m fold well-defined", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let status = if out.passed { "PASS" } else { "FAIL" };
        if !out.passed {
            failures += 1;
        }
        println!(
            "{status} criterion {:>2} ({name}) [{:.1?}]: {}",
            i + 1,
            start.elapsed(),
            out.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
