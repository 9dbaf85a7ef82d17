//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use knitcoral::cli::run;
use knitcoral::crochet::{
    distribute_multipliers, parse_pattern, plan_rows, render_pattern, PatternMode,
};
use knitcoral::diffgeo::{
    coral_area_factor, coral_curvature_paper, deviation_report, forms_at, gaussian_curvature,
};
use knitcoral::mesh::{read_obj_counts, read_ply_counts, tessellate, write_obj_to, write_ply_to};
use knitcoral::oracle::{
    canonical_grid, fd_gaussian_curvature, fd_jet, random_points, validate_all,
    FiniteDifferenceConfig, ValidationConfig,
};
use knitcoral::{DomainPoint, SurfaceFamily};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type Transition = (u64, u64, Vec<(u32, usize)>);

fn cli(args: &[&str]) -> Result<String, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("knitcoral").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    if code != 0 {
        return Err(format!("exit {code}: {}", String::from_utf8_lossy(&err)));
    }
    String::from_utf8(out).map_err(|e| e.to_string())
}

/// Two-decimal text as an integer number of hundredths.
fn hundredths(s: &str) -> Result<i64, String> {
    let x: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("not a number: '{s}'"))?;
    Ok((x * 100.0).round() as i64)
}

fn curvature_table() -> Outcome {
    let expected = [-9.89, -2.50, -0.88, -0.39];
    let start = Instant::now();
    let csv = cli(&[
        "table",
        "-n",
        "4",
        "--u",
        "0.5,1,1.5,2",
        "--v",
        "2pi,pi/2",
        "--format",
        "csv",
    ])?;
    let elapsed = start.elapsed();
    let rows: Vec<Vec<&str>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    if rows.len() != 8 {
        return Err(format!("expected 8 cells, got {}", rows.len()));
    }
    let mut worst_raw = 0.0f64;
    for (i, row) in rows.iter().enumerate() {
        let want = expected[i / 2];
        let got = hundredths(row[2])?;
        let want_h = (want * 100.0f64).round() as i64;
        if (got - want_h).abs() > 1 {
            return Err(format!("cell {i}: {} vs {want}", row[2]));
        }
        let u: f64 = row[0].parse().unwrap();
        let v = if i % 2 == 0 { TAU } else { FRAC_PI_2 };
        let raw = coral_curvature_paper(4, DomainPoint::new(u, v));
        worst_raw = worst_raw.max((raw - want).abs());
    }
    if worst_raw > 0.01 {
        return Err(format!("unrounded value off by {worst_raw:.4}"));
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "8 cells within 0.01, unrounded worst {worst_raw:.4}, {elapsed:?}"
    ))
}

fn chain_table() -> Outcome {
    let plan = plan_rows(14, 4).map_err(|e| e.to_string())?;
    if plan.chain_counts() != [14, 43, 119, 325] {
        return Err(format!("chains {:?}", plan.chain_counts()));
    }
    let lengths = [7.38, 22.78, 62.94, 171.46];
    let worst = plan
        .rows
        .iter()
        .zip(lengths)
        .map(|(r, l)| (r.length - l).abs())
        .fold(0.0, f64::max);
    if worst > 0.01 {
        return Err(format!("length off by {worst:.4}"));
    }
    Ok(format!("chains exact, lengths within {worst:.4}"))
}

fn pattern_fidelity() -> Outcome {
    let expected: [Transition; 3] = [
        (14, 43, vec![(3, 13), (4, 1)]),
        (43, 119, vec![(2, 10), (3, 33)]),
        (119, 325, vec![(2, 32), (3, 87)]),
    ];
    for mode in [PatternMode::Even, PatternMode::Block] {
        for (p, t, ms) in &expected {
            let got = distribute_multipliers(*p, *t, mode)
                .map_err(|e| e.to_string())?
                .multiset();
            if &got != ms {
                return Err(format!("{p}->{t} ({mode}): {got:?}"));
            }
        }
    }
    let text = render_pattern(&plan_rows(14, 4).unwrap(), PatternMode::Block)
        .map_err(|e| e.to_string())?;
    let line = text
        .lines()
        .find(|l| l.starts_with("Row 3 "))
        .ok_or("no row 3 in rendered pattern")?;
    let blocks = line
        .split(", ")
        .find_map(|c| c.split_once("[3332]×").map(|(_, n)| n.trim().to_string()))
        .and_then(|n| {
            n.split_whitespace()
                .next()
                .and_then(|n| n.parse::<usize>().ok())
        })
        .ok_or_else(|| format!("no [3332] block in '{line}'"))?;
    if blocks != 29 {
        return Err(format!("{blocks} blocks in '{line}'"));
    }
    let parsed = parse_pattern(&text).map_err(|e| e.to_string())?;
    if parsed.last().map(|r| r.total) != Some(325) {
        return Err("rendered pattern does not parse back".into());
    }
    Ok("multisets match in both modes, row 3 has 29 × 3332".into())
}

fn oracle_equivalence() -> Outcome {
    let cfg = FiniteDifferenceConfig::new(1e-5).map_err(|e| e.to_string())?;
    let (mut jet_worst, mut k_worst) = (0.0f64, 0.0f64);
    for n in 2..=5 {
        let s = SurfaceFamily::coral(n).unwrap();
        for q in canonical_grid(21) {
            jet_worst = jet_worst.max(s.jet(q).max_partial_diff(&fd_jet(&s, q, &cfg)));
            if let Ok(k) = gaussian_curvature(&s, q) {
                let k_fd = fd_gaussian_curvature(&s, q, &cfg).map_err(|e| e.to_string())?;
                k_worst = k_worst.max((k - k_fd).abs());
            }
        }
    }
    if jet_worst > 1e-6 || k_worst > 1e-6 || jet_worst.is_nan() || k_worst.is_nan() {
        return Err(format!("jet {jet_worst:e}, K {k_worst:e}"));
    }
    Ok(format!("jet {jet_worst:.2e}, K {k_worst:.2e}"))
}

fn monge() -> Outcome {
    let s = SurfaceFamily::coral(2).unwrap();
    let (mut worst, mut spread) = (0.0f64, 0.0f64);
    for i in 1..=100 {
        let u = 0.02 * f64::from(i);
        let exact = -4.0 / (1.0 + 4.0 * u * u).powi(2);
        let ks = (0..16)
            .map(|k| gaussian_curvature(&s, DomainPoint::new(u, TAU * f64::from(k) / 16.0)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        for &k in &ks {
            worst = worst.max((k - exact).abs());
            spread = spread.max((k - ks[0]).abs());
        }
    }
    if worst.is_nan() || spread.is_nan() || worst > 1e-9 || spread > 1e-12 {
        return Err(format!("Monge {worst:e}, v-spread {spread:e}"));
    }
    Ok(format!("Monge {worst:.2e}, v-spread {spread:.2e}"))
}

fn structural() -> Outcome {
    let mut worst = 0.0f64;
    for (n, q) in (2..=5u32)
        .cycle()
        .zip(random_points(20_240_101, 1000, 1e-3))
    {
        let k =
            gaussian_curvature(&SurfaceFamily::coral(n).unwrap(), q).map_err(|e| e.to_string())?;
        worst = worst.max((coral_curvature_paper(n, q) - coral_area_factor(n, q) * k).abs());
    }
    if worst.is_nan() || worst >= 1e-9 {
        return Err(format!("residual {worst:e}"));
    }
    let report = validate_all(&ValidationConfig {
        grid: 5,
        ..ValidationConfig::default()
    })
    .map_err(|e| e.to_string())?;
    let text = report.to_text();
    let listed = text
        .split_once("known discrepancies")
        .is_some_and(|(_, rest)| rest.contains("paper_K_equals_forms_K"));
    if !listed || report.known_discrepancies.is_empty() {
        return Err("report does not list the exponent mismatch".into());
    }
    Ok(format!(
        "1000 points, residual {worst:.2e}, mismatch listed"
    ))
}

fn metric_identity() -> Outcome {
    let mut worst = 0.0f64;
    for n in 2..=5 {
        let s = SurfaceFamily::coral(n).unwrap();
        for q in canonical_grid(21).into_iter().filter(|q| q.u >= 0.05) {
            let (_, _, f) = forms_at(&s, q).map_err(|e| e.to_string())?;
            let a = coral_area_factor(n, q);
            let target = q.u * q.u * a * a;
            worst = worst.max((f.first().det() - target).abs() / target);
        }
    }
    if worst.is_nan() || worst >= 1e-9 {
        return Err(format!("relative residual {worst:e}"));
    }
    Ok(format!("relative residual {worst:.2e}"))
}

fn negativity() -> Outcome {
    let d4 = deviation_report(&SurfaceFamily::coral(4).unwrap(), 40, 128, 0.05)
        .map_err(|e| e.to_string())?;
    let d2 = deviation_report(&SurfaceFamily::coral(2).unwrap(), 40, 128, 0.05)
        .map_err(|e| e.to_string())?;
    if !(d4.max < 0.0 && d4.std > 0.0) {
        return Err(format!("n=4 max {} std {}", d4.max, d4.std));
    }
    if d2.max_circle_std.is_nan() || d2.max_circle_std > 1e-12 {
        return Err(format!("n=2 circle std {:e}", d2.max_circle_std));
    }
    Ok(format!(
        "n=4 max {:.3e} std {:.3}, n=2 circle std {:.1e}",
        d4.max, d4.std, d2.max_circle_std
    ))
}

fn mesh_integrity() -> Outcome {
    let s = SurfaceFamily::coral(4).unwrap();
    let build = || tessellate(&s, (0.0, 2.0), (0.0, TAU), 64, 256, true).map_err(|e| e.to_string());
    let (a, b) = (build()?, build()?);
    if a.vertex_count() != 65 * 256 || a.triangle_count() != 32768 {
        return Err(format!(
            "{} vertices, {} triangles",
            a.vertex_count(),
            a.triangle_count()
        ));
    }
    let export = |m: &knitcoral::mesh::Mesh| {
        let (mut obj, mut ply) = (Vec::new(), Vec::new());
        write_obj_to(m, &mut obj).unwrap();
        write_ply_to(m, &mut ply).unwrap();
        (obj, ply)
    };
    let (obj_a, ply_a) = export(&a);
    let (obj_b, ply_b) = export(&b);
    if obj_a != obj_b || ply_a != ply_b {
        return Err("exports differ between runs".into());
    }
    let obj_counts = read_obj_counts(&String::from_utf8(obj_a).unwrap());
    let ply_counts =
        read_ply_counts(&String::from_utf8(ply_a).unwrap()).map_err(|e| e.to_string())?;
    if obj_counts != (16640, 32768) || ply_counts != (16640, 32768) {
        return Err(format!("re-parsed OBJ {obj_counts:?}, PLY {ply_counts:?}"));
    }

    // Same through the CLI and real files.
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for ext in ["obj", "ply"] {
        let p1 = dir.path().join(format!("a.{ext}"));
        let p2 = dir.path().join(format!("b.{ext}"));
        for p in [&p1, &p2] {
            cli(&[
                "mesh",
                "-n",
                "4",
                "--nu",
                "64",
                "--nv",
                "256",
                "-o",
                p.to_str().unwrap(),
            ])?;
        }
        if std::fs::read(&p1).unwrap() != std::fs::read(&p2).unwrap() {
            return Err(format!("CLI {ext} files differ"));
        }
    }
    Ok("16640 vertices, 32768 triangles, OBJ/PLY deterministic".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("coral curvature table", curvature_table),
        ("chain count table", chain_table),
        ("pattern fidelity", pattern_fidelity),
        ("oracle equivalence", oracle_equivalence),
        ("monge check", monge),
        ("structural discrepancy", structural),
        ("metric identity", metric_identity),
        ("negativity and non-constancy", negativity),
        ("mesh integrity", mesh_integrity),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS  {name:<30} {detail} [{secs:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name:<30} {detail} [{secs:.2}s]");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
