//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use homquad::generator::{
    generate_quadrangle, generate_with_diagonals, DiagonalFamily, GeneratorConfig,
};
use homquad::geom::{dot, Point};
use homquad::homothety::{closed_form_vertices, construct, construction_lines, HomotheticResult};
use homquad::render::{render_svg, RenderOptions, Scene};
use homquad::theorems::{
    squared_sides, verify_area_decomposition, verify_area_formula, verify_perimeter_ratio,
    verify_perspective, verify_shape_criteria, verify_varignon_area, verify_wittenbauer_area,
    VerificationReport,
};
use homquad::{ratio, QuadClass, RatQuadrangle, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type Polygon = (String, Vec<(f64, f64)>);

fn quads(seed: u64, count: usize, classes: &[QuadClass]) -> Vec<RatQuadrangle> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let class = classes[i % classes.len()];
            let cfg = GeneratorConfig::new(seed, 10, Some(class)).for_trial(i);
            generate_quadrangle(&cfg).expect("generation converges")
        })
        .collect()
}

fn failures(reports: &[VerificationReport]) -> usize {
    reports.iter().filter(|r| !r.passed || !r.recheck()).count()
}

fn tally(what: &str, reports: &[VerificationReport]) -> Outcome {
    match failures(reports) {
        0 => Ok(format!("{} {what} checks exact", reports.len())),
        n => Err(format!("{n} of {} {what} checks failed", reports.len())),
    }
}

fn simple_campaign() -> Vec<RatQuadrangle> {
    quads(1001, 1000, &[QuadClass::Convex, QuadClass::ReEntrant])
}

fn all_class_campaign() -> Vec<RatQuadrangle> {
    quads(
        3003,
        1000,
        &[QuadClass::Convex, QuadClass::ReEntrant, QuadClass::Crossed],
    )
}

fn grid() -> Vec<Rational> {
    [
        (-2, 1),
        (-1, 3),
        (0, 1),
        (1, 4),
        (1, 2),
        (2, 3),
        (1, 1),
        (4, 3),
        (3, 1),
    ]
    .iter()
    .map(|&(n, d)| ratio(n, d))
    .collect()
}

fn all_pairs(ls: &[Rational]) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for i in 0..ls.len() {
        for j in i + 1..ls.len() {
            out.push((ls[i].clone(), ls[j].clone()));
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let qs = simple_campaign();
    let start = Instant::now();
    let reports: Vec<_> = qs.par_iter().map(verify_varignon_area).collect();
    let elapsed = start.elapsed();
    tally("λ=1/2 area", &reports)?;
    if elapsed >= Duration::from_secs(5) {
        return Err(format!("took {elapsed:?}, limit 5 s"));
    }
    Ok(format!(
        "{} quadrangles exact in {elapsed:.2?}",
        reports.len()
    ))
}

fn criterion_2() -> Outcome {
    let qs = simple_campaign();
    let reports: Vec<_> = qs.par_iter().map(verify_wittenbauer_area).collect();
    tally("λ=1/3 area", &reports)
}

fn criterion_3() -> Outcome {
    let qs = all_class_campaign();
    let lambdas = grid();
    let reports: Vec<_> = qs
        .par_iter()
        .flat_map_iter(|q| lambdas.iter().map(move |l| verify_area_formula(q, l)))
        .collect();
    tally("area formula", &reports)
}

fn criterion_4() -> Outcome {
    let qs = all_class_campaign();
    let pairs = all_pairs(&grid());
    let reports: Vec<_> = qs
        .par_iter()
        .flat_map_iter(|q| {
            pairs
                .iter()
                .flat_map(move |(a, b)| verify_perspective(q, a, b))
        })
        .collect();
    tally("perspectivity", &reports)
}

fn criterion_5() -> Outcome {
    let qs = all_class_campaign();
    let pairs = all_pairs(&grid());
    let reports: Vec<_> = qs
        .par_iter()
        .flat_map_iter(|q| {
            pairs
                .iter()
                .map(move |(a, b)| verify_perimeter_ratio(q, a, b))
        })
        .collect();
    let summary = tally("perimeter ratio", &reports)?;
    let congruent = qs
        .iter()
        .filter(|q| {
            squared_sides(&construct(q, &ratio(2, 3))) != squared_sides(&construct(q, &ratio(4, 3)))
        })
        .count();
    if congruent > 0 {
        return Err(format!(
            "{congruent} quadrangles with λ=2/3 and λ=4/3 sides unequal"
        ));
    }
    Ok(format!("{summary}; λ=2/3 and λ=4/3 congruent on all"))
}

fn criterion_6() -> Outcome {
    let lambdas = [ratio(1, 2), ratio(1, 3), ratio(-1, 3), ratio(2, 1)];
    let mut reports = Vec::new();
    let (mut rect, mut rhomb, mut plain) = (0, 0, 0);
    let build = |seed: u64, family: Option<DiagonalFamily>| {
        let cfg = GeneratorConfig::new(seed, 10, None);
        match family {
            Some(f) => generate_with_diagonals(&cfg, f),
            None => generate_quadrangle(&cfg),
        }
        .expect("generation converges")
    };
    for i in 0..200u64 {
        let family = [
            (build(6000 + i, Some(DiagonalFamily::Perpendicular)), 0),
            (build(7000 + i, Some(DiagonalFamily::EqualLength)), 1),
            (build(8000 + i, None), 2),
        ];
        for (q, kind) in family {
            let ac = q.c() - q.a();
            let bd = q.d() - q.b();
            let perpendicular = dot(&ac, &bd) == ratio(0, 1);
            let equal = ac.norm_sq() == bd.norm_sq();
            match kind {
                0 if !perpendicular => return Err("perpendicular family not perpendicular".into()),
                1 if !equal => return Err("equal-diagonal family not equal".into()),
                _ => {}
            }
            for l in &lambdas {
                let [r1, r2] = verify_shape_criteria(&q, l).map_err(|e| e.to_string())?;
                let [k, lv, m, _] = construct(&q, l).vertices();
                let (kl, lm) = (&lv - &k, &m - &lv);
                if perpendicular {
                    rect += usize::from(dot(&kl, &lm) == ratio(0, 1));
                } else if kind == 2 {
                    plain += usize::from(dot(&kl, &lm) != ratio(0, 1));
                }
                if equal {
                    rhomb += usize::from(kl.norm_sq() == lm.norm_sq());
                } else if kind == 2 {
                    plain += usize::from(kl.norm_sq() != lm.norm_sq());
                }
                reports.push(r1);
                reports.push(r2);
            }
        }
    }
    let summary = tally("shape", &reports)?;
    if rect < 800 || rhomb < 800 {
        return Err(format!(
            "only {rect} rectangles and {rhomb} rhombi out of 800 each"
        ));
    }
    Ok(format!(
        "{summary}; {rect} rectangles, {rhomb} rhombi, {plain} generic negatives"
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut random_lambda = move || {
        let n: i64 = rng.random_range(-40..=40);
        let d: i64 = rng.random_range(1..=12);
        ratio(n, d)
    };
    let all = [QuadClass::Convex, QuadClass::ReEntrant, QuadClass::Crossed];
    let qs = quads(7007, 10_000, &all);
    let lambdas: Vec<Rational> = (0..qs.len()).map(|_| random_lambda()).collect();

    for (q, l) in qs.iter().zip(&lambdas).take(100) {
        let lines = construction_lines(q, l);
        for (i, v) in closed_form_vertices(q, l).iter().enumerate() {
            if !lines[i].contains(v) || !lines[(i + 1) % 4].contains(v) {
                return Err(format!("closed form off its lines at λ={l}"));
            }
        }
    }
    let mismatched = qs
        .par_iter()
        .zip(lambdas.par_iter())
        .filter(|(q, l)| construct(q, l).vertices() != closed_form_vertices(q, l))
        .count();
    match mismatched {
        0 => Ok("100 substitutions, 10000 pairs identical".into()),
        n => Err(format!("{n} of 10000 pairs differ")),
    }
}

fn criterion_8() -> Outcome {
    let all = [QuadClass::Convex, QuadClass::ReEntrant, QuadClass::Crossed];
    let qs = quads(8008, 300, &all);
    for q in &qs {
        let o = q.diagonal_intersection();
        match construct(q, &ratio(1, 1)) {
            HomotheticResult::DegeneratePoint { o: p } if p == o => {}
            other => return Err(format!("λ=1 gave {other:?}")),
        }
        let v = construct(q, &ratio(0, 1)).vertices();
        let [a, b, c, d] = q.vertices();
        let expect = |x: &Point<Rational>, y: &Point<Rational>| {
            Point::new(&x.x + &y.x - &o.x, &x.y + &y.y - &o.y)
        };
        let limit = [expect(a, b), expect(b, c), expect(c, d), expect(d, a)];
        if v != limit {
            return Err("λ=0 vertices differ from A+B-O and analogues".into());
        }
    }
    Ok(format!("{} quadrangles, both limits exact", qs.len()))
}

fn criterion_9() -> Outcome {
    let qs = quads(9009, 200, &[QuadClass::Convex]);
    let lambdas = [ratio(-1, 3), ratio(-1, 1), ratio(-5, 2)];
    let mut reports = Vec::new();
    for q in &qs {
        for l in &lambdas {
            reports.push(verify_area_decomposition(q, l).map_err(|e| e.to_string())?);
        }
    }
    tally("decomposition", &reports)
}

fn polygon_points(svg: &str) -> Vec<Polygon> {
    svg.lines()
        .filter(|l| l.starts_with("<polygon"))
        .map(|l| {
            let attr = |name: &str| {
                let start = l.find(&format!(" {name}=\"")).map(|i| i + name.len() + 3)?;
                let end = l[start..].find('"')? + start;
                Some(l[start..end].to_string())
            };
            let pts = attr("points")
                .unwrap()
                .split_whitespace()
                .map(|p| {
                    let (x, y) = p.split_once(',').unwrap();
                    (x.parse().unwrap(), y.parse().unwrap())
                })
                .collect();
            (attr("data-lambda").unwrap_or_default(), pts)
        })
        .collect()
}

fn criterion_10() -> Outcome {
    let p = |x: i64, y: i64| Point::new(ratio(x, 1), ratio(y, 1));
    let q = RatQuadrangle::new(p(0, 0), p(6, 0), p(5, 4), p(1, 3)).unwrap();
    let lambdas = [ratio(1, 2), ratio(1, 3)];
    let scene = Scene::new(q.clone(), &lambdas)
        .unwrap()
        .with_construction_lines(true)
        .with_perspective_rays(true)
        .with_labels(true);
    let opts = RenderOptions::default();
    let first = render_svg(&scene, &opts);
    if first != render_svg(&scene, &opts) {
        return Err("two renders differ".into());
    }
    let polys = polygon_points(&first);
    let mut worst = 0.0f64;
    let mut seen = 0;
    for (label, pts) in &polys {
        let exact: Vec<Point<f64>> = if label.is_empty() {
            q.vertices().iter().map(|v| v.to_f64()).collect()
        } else {
            let l: Rational = homquad::Scalar::parse_text(label).map_err(|e| format!("{e}"))?;
            construct(&q, &l)
                .vertices()
                .iter()
                .map(|v| v.to_f64())
                .collect()
        };
        for ((x, y), e) in pts.iter().zip(&exact) {
            worst = worst.max((x - e.x).abs()).max((y - e.y).abs());
            seen += 1;
        }
    }
    if polys.len() != 3 || seen != 12 {
        return Err(format!("expected 3 polygons, found {}", polys.len()));
    }
    if worst > 5e-7 {
        return Err(format!("coordinate error {worst:e}"));
    }
    Ok(format!("byte-identical, max coordinate error {worst:.1e}"))
}

fn criterion_11() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_homquad");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for seed in 1..=100 {
        let path = dir.path().join(format!("q{seed}.json"));
        let path = path.to_str().unwrap();
        let seed = seed.to_string();
        let gen = Command::new(bin)
            .args(["generate", "--seed", &seed, "--output", path])
            .output()
            .map_err(|e| e.to_string())?;
        if !gen.status.success() {
            return Err(format!(
                "generate seed {seed} exited {:?}",
                gen.status.code()
            ));
        }
        let ver = Command::new(bin)
            .args(["verify", "--input", path])
            .env("HOMQUAD_COLOR", "never")
            .output()
            .map_err(|e| e.to_string())?;
        if ver.status.code() != Some(0) {
            return Err(format!("verify seed {seed} exited {:?}", ver.status.code()));
        }
    }
    let parallel = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/quad_parallel.json");
    let out = Command::new(bin)
        .args(["verify", "--input", parallel.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    let want = i32::from(homquad::cli::EXIT_INVALID_QUADRANGLE);
    if out.status.code() != Some(want) {
        return Err(format!(
            "parallel input exited {:?}, want {want}",
            out.status.code()
        ));
    }
    Ok(format!(
        "seeds 1..=100 exit 0; parallel diagonals exit {want}"
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Varignon area 1/2 on 1000 simple quadrangles", criterion_1),
        (
            "Wittenbauer area 8/9 on 1000 simple quadrangles",
            criterion_2,
        ),
        ("area formula over all classes and nine ratios", criterion_3),
        ("perspectivity for every ratio pair", criterion_4),
        ("perimeter ratio for every ratio pair", criterion_5),
        ("shape biconditionals on built families", criterion_6),
        ("construction equals closed form", criterion_7),
        ("limits at ratio 1 and 0", criterion_8),
        ("triangle decomposition on convex quadrangles", criterion_9),
        ("renderer determinism and accuracy", criterion_10),
        ("CLI generate/verify round trip", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} [{took:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail} [{took:.2?}]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
