//! Figure-level acceptance: the emitted ellipse trace, together with the two
//! trivial correlations, must contain every correlation a random physical
//! test can produce for a pair of states.

use std::io::Write;
use std::process::Command;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Point = (f64, f64);

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Monotone-chain convex hull, counter-clockwise.
fn convex_hull(mut points: Vec<Point>) -> Vec<Point> {
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    points.dedup();
    let n = points.len();
    let mut hull: Vec<Point> = Vec::with_capacity(2 * n);
    for &p in &points {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in points.iter().rev() {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

fn inside_hull(hull: &[Point], p: Point, eps: f64) -> bool {
    hull.iter()
        .zip(hull.iter().cycle().skip(1))
        .all(|(&a, &b)| cross(a, b, p) >= -eps)
}

#[test]
fn criterion_11_figure_reproduction() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let family_path = dir.path().join("family.json");
    let mut f = std::fs::File::create(&family_path).unwrap();
    f.write_all(br#"{"states": [{"bloch": [0, 0, 1]}, {"bloch": [1, 0, 0]}]}"#)
        .unwrap();
    drop(f);

    let output = Command::new(env!("CARGO_BIN_EXE_qcorr"))
        .arg("boundary")
        .arg(&family_path)
        .args(["--samples", "64", "--seed", "7"])
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    let trace = doc["trace"].as_array().unwrap();
    assert_eq!(trace.len(), 256);

    let family = qcorr::StateFamily::new(vec![
        qcorr::QubitState::from_bloch([0.0, 0.0, 1.0]).unwrap(),
        qcorr::QubitState::from_bloch([1.0, 0.0, 0.0]).unwrap(),
    ])
    .unwrap();
    let spec = family.ellipsoid_spec();

    let mut points: Vec<Point> = Vec::with_capacity(trace.len() + 2);
    for row in trace {
        let p = row["correlation"].as_array().unwrap();
        let point = (p[0].as_f64().unwrap(), p[1].as_f64().unwrap());
        // every trace point sits on the ellipse
        let qf = spec.quadratic_form(&[point.0, point.1]);
        assert!((qf - 1.0).abs() < 1e-9);
        points.push(point);
    }
    points.push((0.0, 0.0));
    points.push((1.0, 1.0));
    let hull = convex_hull(points);

    // a 256-gon inscribed in the ellipse undershoots it by at most the
    // sagitta ~ sigma (pi/256)^2 / 2 ~ 5e-5, so containment is checked at 1e-4
    let eps = 1e-4;
    let mut rng = ChaCha8Rng::seed_from_u64(1107);
    for _ in 0..10_000 {
        let test = qcorr::oracle::random_test(&mut rng);
        let p = family.correlation(&test);
        let point = (p.values()[0], p.values()[1]);
        assert!(
            inside_hull(&hull, point, eps),
            "sampled correlation {point:?} escaped the traced hull"
        );
    }

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 5.0, "took {elapsed:.3} s, budget 5 s");
    println!("criterion 11 figure reproduction: PASS ({elapsed:.3} s)");
}
