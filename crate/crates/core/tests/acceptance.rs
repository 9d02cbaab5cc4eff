//! Acceptance suite: every criterion runs, prints one line, and the process
//! fails if any criterion fails.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::Rng;
use specball::bounds::{check_theorem2, theorem1_terms, theorem2_bound, CheckOptions};
use specball::campaign::{run_campaign, CampaignConfig, CampaignKind, CampaignReport};
use specball::extremal::{disc_sharpness, example_fd, naive_bound_counterexample, sample_jordan_matrix, sample_sn_with, self_sharpness};
use specball::hyperbolic::{pseudo_hyperbolic, BlaschkeProduct, Mobius};
use specball::linalg::svd::singular_values;
use specball::maps::sampling::{complex_gaussian, disc_point, matrix_with_radius, random_similarity, trial_rng};
use specball::maps::{sample_disc_map_with, sample_self_map_with, SelfMapSpec};
use specball::spectrum::{annihilation_norm, jordan_radius, krylov_minpoly_oracle, minimal_polynomial, DEFAULT_MINPOLY_TOL};
use specball::{bounds::pullback_to_origin, CMatrix, Complex64, Error};

struct Verdict {
    pass: bool,
    detail: String,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn radius(a: &CMatrix) -> f64 {
    jordan_radius(a, DEFAULT_MINPOLY_TOL).unwrap()
}

fn within(limit: Duration, t: Duration) -> bool {
    t < limit
}

/// 21 points: the origin and five radii on four rays.
fn key_grid() -> Vec<Complex64> {
    let mut pts = vec![c(0.0, 0.0)];
    for r in [0.05, 0.1, 0.4, 0.75, 0.95] {
        for phi in [0.0, 1.9, 3.6, 5.1] {
            pts.push(Complex64::from_polar(r, phi));
        }
    }
    pts
}

fn criterion_1() -> Verdict {
    let t = Instant::now();
    let (mut worst_err, mut worst_margin, mut count) = (0.0f64, f64::INFINITY, 0);
    let mut strict = true;
    for n in 3..=5 {
        for d in 2..n {
            for &z in &key_grid() {
                let r = radius(&example_fd(n, d, z).unwrap().matrix);
                worst_err = worst_err.max((r - z.norm().powf(1.0 / d as f64)).abs());
                if z.norm() > 0.0 {
                    let rho = pseudo_hyperbolic(c(0.0, 0.0), z).unwrap();
                    for q in 1..d {
                        let margin = r.powi(q as i32) - rho;
                        strict &= margin > 0.0;
                        if z.norm() >= 0.1 {
                            worst_margin = worst_margin.min(margin);
                        }
                    }
                }
                count += 1;
            }
        }
    }
    let el = t.elapsed();
    Verdict {
        pass: worst_err <= 1e-10 && strict && worst_margin >= 1e-12 && within(Duration::from_secs(5), el),
        detail: format!(
            "{count} matrices, max |r - |z|^(1/d)| = {worst_err:.2e}, min margin (|z|>=0.1) = {worst_margin:.3e}, {el:.2?}"
        ),
    }
}

fn campaign_verdict(report: &CampaignReport, limit: Duration, el: Duration) -> Verdict {
    let min = report.min_slack.unwrap_or(f64::NAN);
    Verdict {
        pass: report.passed()
            && report.skipped.is_empty()
            && report.rows.len() == report.trials
            && min >= -report.config.tol_check.max(if report.config.theorem == CampaignKind::Subharmonic { report.config.tol_quad } else { 0.0 })
            && within(limit, el),
        detail: format!(
            "{} trials, min slack {:.3e}, {} violations, {} generator failures, {} skipped, {el:.2?}",
            report.trials,
            min,
            report.violations.len(),
            report.generator_failures,
            report.skipped.len()
        ),
    }
}

fn criterion_2() -> Verdict {
    let t = Instant::now();
    let mut cfg = CampaignConfig::new(CampaignKind::Thm1);
    cfg.trials = 1000;
    cfg.degree = 3;
    cfg.seed = 20240501;
    let report = run_campaign(&cfg).unwrap();
    campaign_verdict(&report, Duration::from_secs(60), t.elapsed())
}

fn criterion_3() -> Verdict {
    let t = Instant::now();
    let zs = [c(0.0, 0.0), c(0.5, 0.0), c(-0.3, 0.4), c(0.0, 0.7), c(-0.6, -0.2)];
    let ws = [c(0.25, 0.0), c(0.0, -0.5), c(0.8, 0.0), c(0.1, 0.1), c(-0.45, 0.6)];
    let opts = CheckOptions::default();
    let (mut worst, mut worst_sec, mut cases, mut secondary, mut flagged) = (0.0f64, 0.0f64, 0, 0, 0);
    for &z in &zs {
        for &w in &ws {
            for n in 2..=5 {
                for d in 1..=n {
                    let s = disc_sharpness(z, w, n, d, &opts).unwrap();
                    worst = worst.max(s.report.slack.abs());
                    if s.secondary_applies {
                        worst_sec = worst_sec.max((s.secondary - s.expected_secondary).abs());
                        secondary += 1;
                    } else if n > d && d >= 2 {
                        flagged += 1;
                    }
                    cases += 1;
                }
            }
        }
    }
    let el = t.elapsed();
    Verdict {
        pass: worst <= 1e-9 && worst_sec <= 1e-9 && within(Duration::from_secs(30), el),
        detail: format!(
            "{cases} cases, max |slack| {worst:.2e}; secondary equality on {secondary} cases, max dev {worst_sec:.2e}, {flagged} flagged; {el:.2?}"
        ),
    }
}

fn criterion_4() -> Verdict {
    let t = Instant::now();
    let mut cfg = CampaignConfig::new(CampaignKind::Thm2);
    cfg.trials = 1000;
    cfg.depth = 3;
    cfg.seed = 20240502;
    let report = run_campaign(&cfg).unwrap();
    campaign_verdict(&report, Duration::from_secs(120), t.elapsed())
}

fn criterion_5() -> Verdict {
    let t = Instant::now();
    let opts = CheckOptions::default();
    let mut rng = trial_rng(5, 0);
    let (mut worst, mut checks, mut degree_ok) = (0.0f64, 0, true);
    for n in 2..=5 {
        for d in 1..=n {
            let g0 = SelfMapSpec::extremal(n, d).unwrap().eval(&CMatrix::zeros(n)).unwrap();
            degree_ok &= minimal_polynomial(&g0, DEFAULT_MINPOLY_TOL).unwrap().degree == d;
        }
        for _ in 0..100 {
            let a = sample_sn_with(n, &mut rng).unwrap();
            for d in 1..=n {
                let r = self_sharpness(&a, d, &opts).unwrap();
                worst = worst.max(r.slack.abs());
                degree_ok &= r.context["d_g"].as_u64() == Some(d as u64);
                checks += 1;
            }
        }
    }
    let el = t.elapsed();
    Verdict {
        pass: worst <= 1e-9 && degree_ok && within(Duration::from_secs(20), el),
        detail: format!("{checks} checks, max |slack| {worst:.2e}, d_G = d: {degree_ok}, {el:.2?}"),
    }
}

fn criterion_6() -> Verdict {
    let mut rng = trial_rng(6, 0);
    // Disc maps vanishing at zeta1.
    let mut exact = true;
    for i in 0..200 {
        let n = 2 + i % 4;
        let z1 = disc_point(0.9, &mut rng);
        let f = sample_disc_map_with(n, 1 + i % 3, 0.9, &mut rng).unwrap().vanishing_at(z1).unwrap();
        let w2 = f.eval(disc_point(0.95, &mut rng)).unwrap();
        let t1 = theorem1_terms(&f.eval(z1).unwrap(), &w2, DEFAULT_MINPOLY_TOL).unwrap();
        let t0 = theorem1_terms(&CMatrix::zeros(n), &w2, DEFAULT_MINPOLY_TOL).unwrap();
        exact &= t1.lhs == radius(&w2) && t0.lhs == radius(&w2);
    }
    // Bound formula with r(G(0)) = 0, d_G = 1.
    let formula = (0..=1000).all(|k| {
        let r = 0.999 * k as f64 / 1000.0;
        theorem2_bound(r, 0.0, 1).unwrap() == r
    });
    // Through the pipeline, maps fixing the origin.
    let mut worst = 0.0f64;
    for i in 0..100 {
        let n = 2 + i % 4;
        let (s, s_inv) = random_similarity(n, 100.0, &mut rng);
        let square = SelfMapSpec::functional_calculus(BlaschkeProduct::from_pairs(&[(c(0.0, 0.0), 2)]).unwrap(), c(1.0, 0.0)).unwrap();
        let maps = [
            SelfMapSpec::identity(),
            SelfMapSpec::Similarity { s, s_inv },
            square,
            pullback_to_origin(&SelfMapSpec::extremal(n, 1 + i % n).unwrap(), n).unwrap(),
            pullback_to_origin(&sample_self_map_with(n, 3, &mut rng).unwrap(), n).unwrap(),
        ];
        let x = matrix_with_radius(n, 0.95 * rng.random::<f64>(), &mut rng).unwrap();
        for g in &maps {
            let r = check_theorem2(g, &x).unwrap();
            worst = worst.max((r.rhs - radius(&x)).abs());
        }
    }
    Verdict {
        pass: exact && formula && worst <= 1e-12,
        detail: format!("lhs = r(F(z2)) bitwise: {exact}; bound(r,0,1) = r bitwise: {formula}; pipeline max |rhs - r(X)| {worst:.2e}"),
    }
}

fn criterion_7() -> Verdict {
    let ce = naive_bound_counterexample(2).unwrap();
    Verdict {
        pass: ce.naive.slack <= -0.089 && ce.theorem2.slack.abs() <= 1e-9,
        detail: format!(
            "naive: lhs {:.6} rhs {:.6} slack {:.6}; growth bound slack {:.2e}",
            ce.naive.lhs, ce.naive.rhs, ce.naive.slack, ce.theorem2.slack
        ),
    }
}

fn criterion_8() -> Verdict {
    let mut rng = trial_rng(8, 0);
    let (mut agree, mut flagged, mut known, mut worst_ratio) = (0, 0, 0, 0.0f64);
    let total = 500;
    for i in 0..total {
        let n = 1 + i % 6;
        let s = sample_jordan_matrix(n, &mut rng).unwrap();
        let a = &s.matrix;
        match minimal_polynomial(a, DEFAULT_MINPOLY_TOL) {
            Err(Error::IllConditionedStructure { .. }) => flagged += 1,
            Err(e) => panic!("unexpected error {e}"),
            Ok(p) => {
                let q = krylov_minpoly_oracle(a).unwrap();
                if p.degree == q.degree {
                    agree += 1;
                }
                if p.degree == s.tag.known_minpoly().degree {
                    known += 1;
                }
                let norm = singular_values(a)[0];
                worst_ratio = worst_ratio.max(annihilation_norm(a, &p) / (1e-8 * norm.powi(p.degree as i32)));
            }
        }
    }
    let checked = total - flagged;
    Verdict {
        pass: agree == checked && worst_ratio <= 1.0,
        detail: format!(
            "{checked}/{total} unflagged, probe/Krylov agree on {agree}, match known Jordan data on {known}; max annihilation / (1e-8 ||A||^deg) = {worst_ratio:.2e}"
        ),
    }
}

fn criterion_9() -> Verdict {
    let mut rng = trial_rng(9, 0);
    let mut worst_dev = 0.0f64;
    let mut tried = 0;
    while tried < 200 {
        let (a, b, cc, d) = (complex_gaussian(&mut rng), complex_gaussian(&mut rng), complex_gaussian(&mut rng), complex_gaussian(&mut rng));
        let gap = (d.norm_sqr() - cc.norm_sqr()).abs();
        // keep well-conditioned transforms only
        if gap < 0.1 * (d.norm_sqr() + cc.norm_sqr()) || (a * d - b * cc).norm() < 0.1 {
            continue;
        }
        let t = Mobius::new(a, b, cc, d).unwrap();
        let circ = t.image_circle().unwrap();
        for k in 0..4096 {
            let p = t.eval(Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 4096.0));
            worst_dev = worst_dev.max(((p - circ.center).norm() - circ.radius).abs() / circ.radius.max(1.0));
        }
        tried += 1;
    }
    let mut worst_min = 0.0f64;
    for _ in 0..200 {
        let mu = 0.999 * rng.random::<f64>();
        let lambda = disc_point(0.999, &mut rng);
        let t = Mobius::new(c(mu, 0.0), -lambda, -lambda.conj() * mu, c(1.0, 0.0)).unwrap();
        let want = (mu - lambda.norm()).abs() / (1.0 - mu * lambda.norm());
        worst_min = worst_min.max((t.circle_min_modulus().unwrap() - want).abs());
    }
    Verdict {
        pass: worst_dev <= 1e-10 && worst_min <= 1e-10,
        detail: format!("200 transforms, max circle deviation {worst_dev:.2e}; proof family max |min-modulus error| {worst_min:.2e}"),
    }
}

fn criterion_10() -> Verdict {
    let t = Instant::now();
    let mut cfg = CampaignConfig::new(CampaignKind::Subharmonic);
    cfg.trials = 200;
    cfg.seed = 20240510;
    let report = run_campaign(&cfg).unwrap();
    campaign_verdict(&report, Duration::MAX, t.elapsed())
}

fn criterion_11() -> Verdict {
    let mut same = true;
    for kind in CampaignKind::ALL {
        let mut cfg = CampaignConfig::new(kind);
        cfg.trials = 15;
        cfg.seed = 11;
        let mut a = run_campaign(&cfg).unwrap();
        let mut b = run_campaign(&cfg).unwrap();
        a.wall_time_s = 0.0;
        b.wall_time_s = 0.0;
        same &= a.to_json() == b.to_json() && a.to_csv() == b.to_csv();
    }
    Verdict { pass: same, detail: format!("{} campaign kinds, JSON and CSV identical across runs: {same}", CampaignKind::ALL.len()) }
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("key example radii and strict gaps", criterion_1),
        ("two-point bound, 1000 random disc maps", criterion_2),
        ("two-point bound sharpness grid", criterion_3),
        ("growth bound, 1000 random self-maps", criterion_4),
        ("growth bound sharpness on S_n", criterion_5),
        ("special-case recovery", criterion_6),
        ("naive bound counterexample", criterion_7),
        ("minimal polynomial oracle agreement", criterion_8),
        ("Mobius circle image", criterion_9),
        ("sub-mean-value property", criterion_10),
        ("campaign determinism", criterion_11),
    ];
    let mut failed = 0;
    let mut err = std::io::stderr();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let v = f();
        if !v.pass {
            failed += 1;
        }
        writeln!(err, "criterion {:>2} {}: {} ({})", i + 1, if v.pass { "PASS" } else { "FAIL" }, name, v.detail).unwrap();
    }
    writeln!(err, "acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len()).unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
