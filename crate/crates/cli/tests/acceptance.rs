//! Acceptance suite. Runs every criterion, prints one `PASS`/`FAIL` line per
//! criterion and exits non-zero when any of them fails.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use flipmap::builder::{initial_triangulation, PointSet};
use flipmap::delaunay::{delaunay_with, no_dart_illegal, total_lifted_volume, DelaunayOptions, TriMap};
use flipmap::exec::Execution;
use flipmap::fixtures;
use flipmap::geometry::{axioms, lift, tetra_det, Coord, Point};
use flipmap::hypermap::{DartId, Dim, Direction, Hypermap};
use flipmap::io::{parse_map, parse_map_parts, parse_points, parse_trace, write_map, write_points};
use flipmap::verify;
use rand::seq::IndexedRandom;
use rand::Rng;
use support::NaiveMap;
use tempfile::TempDir;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = flipmap_cli::run(std::iter::once("flipmap").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&err).into_owned())
}

fn quad(m: &Hypermap, d: DartId) -> [Point; 4] {
    let b = m.alpha(Dim::Zero, d, Direction::Forward).unwrap();
    let far = |x| m.face_succ(m.face_succ(x, Direction::Forward).unwrap(), Direction::Forward).unwrap();
    [d, b, far(d), far(b)].map(|x| m.location(x).unwrap().clone())
}

fn expected_drop(q: &[Point; 4]) -> Coord {
    let det = tetra_det(&lift(&q[0]), &lift(&q[1]), &lift(&q[2]), &lift(&q[3]));
    &(&det * &Coord::from_int(3)) / &Coord::from_int(6)
}

fn euler_ok(m: &Hypermap) -> bool {
    let c = m.census();
    c.satisfies_euler_formula() && c.is_planar() && c.chi == 2 * c.components as i64
}

/// One end-to-end run through the command line, with everything the
/// later criteria need.
struct Run {
    n: usize,
    points: PointSet,
    start: TriMap,
    map_text: String,
    trace_text: String,
    elapsed: Duration,
}

const SIZES: [usize; 5] = [4, 10, 25, 50, 100];
const SETS_PER_SIZE: usize = 20;

fn end_to_end_runs(dir: &Path) -> Result<Vec<Run>, String> {
    let mut runs = Vec::new();
    for (si, &n) in SIZES.iter().enumerate() {
        for k in 0..SETS_PER_SIZE {
            let seed = 1000 * si as u64 + k as u64;
            let mut rng = support::rng(seed);
            let ps = support::general_position_set(&mut rng, n, 100_000);
            let input = dir.join(format!("pts_{n}_{k}.txt"));
            let output = dir.join(format!("out_{n}_{k}.hmap"));
            let trace = dir.join(format!("trace_{n}_{k}.txt"));
            fs::write(&input, write_points(&ps)).unwrap();
            let started = Instant::now();
            let (code, err) = cli(&[
                "delaunay",
                input.to_str().unwrap(),
                "-o",
                output.to_str().unwrap(),
                "--trace",
                trace.to_str().unwrap(),
                "--check",
            ]);
            let elapsed = started.elapsed();
            ensure(code == 0, || format!("n={n} set {k}: exit {code}: {err}"))?;
            let points = parse_points(&fs::read_to_string(&input).unwrap()).map_err(|e| e.to_string())?;
            runs.push(Run {
                n,
                start: initial_triangulation(&points).map_err(|e| e.to_string())?,
                points,
                map_text: fs::read_to_string(&output).unwrap(),
                trace_text: fs::read_to_string(&trace).unwrap(),
                elapsed,
            });
        }
    }
    Ok(runs)
}

fn criterion_1(runs: &[Run]) -> Outcome {
    let mut maps = 0usize;
    for run in runs {
        ensure(euler_ok(run.start.map()), || format!("initial map for n={} breaks Euler", run.n))?;
        let mut bad = None;
        let opts = DelaunayOptions { recheck: false, ..DelaunayOptions::default() };
        let (done, _) = delaunay_with(&run.start, &opts, |t, d| {
            maps += 1;
            if bad.is_none() && !euler_ok(t.map()) {
                bad = Some(d);
            }
        })
        .map_err(|e| e.to_string())?;
        ensure(bad.is_none(), || format!("n={}: Euler broken before flipping {:?}", run.n, bad))?;
        ensure(euler_ok(done.map()), || format!("n={}: Euler broken on the final map", run.n))?;
        maps += 2;
    }
    let mut rng = support::rng(7);
    let big =
        initial_triangulation(&support::points_inside(&mut rng, 197, 1_000_000, false)).map_err(|e| e.to_string())?;
    let started = Instant::now();
    let c = big.map().census();
    let census_time = started.elapsed();
    ensure(c.satisfies_euler_formula() && c.is_planar(), || format!("n=200 map: {c}"))?;
    ensure(census_time < Duration::from_secs(1), || format!("census at n=200 took {census_time:?}"))?;
    Ok(format!("{maps} maps with chi = 2c and genus 0; census at n=200 in {census_time:?}"))
}

fn criterion_2() -> Outcome {
    const SAMPLES: usize = 10_000;
    let mut rng = support::rng(2);
    let mut cyclic_tested = 0;
    while cyclic_tested < SAMPLES {
        let p = support::rational_point(&mut rng, 50);
        let q = support::rational_point(&mut rng, 50);
        let r = support::rational_point(&mut rng, 50);
        if !flipmap::geometry::ccw(&p, &q, &r).is_positive() {
            continue;
        }
        cyclic_tested += 1;
        ensure(axioms::cyclic(&p, &q, &r), || format!("axiom 1 fails on {p} {q} {r}"))?;
    }
    let mut fifth_tested = 0;
    let mut draws = 0usize;
    while fifth_tested < SAMPLES {
        draws += 1;
        let [p, q, r, s, t] = [(); 5].map(|_| support::rational_point(&mut rng, 50));
        if !axioms::fifth_hypotheses(&p, &q, &r, &s, &t) {
            continue;
        }
        fifth_tested += 1;
        ensure(axioms::fifth(&p, &q, &r, &s, &t), || format!("axiom 5 fails on {p} {q} {r} {s} {t}"))?;
    }
    Ok(format!("axiom 1 on {cyclic_tested} samples, axiom 5 on {fifth_tested} samples ({draws} draws)"))
}

fn criterion_3() -> Outcome {
    const SAMPLES: usize = 10_000;
    let mut rng = support::rng(3);
    let mut tested = 0;
    let mut draws = 0usize;
    while tested < SAMPLES {
        draws += 1;
        let [p, q, r, s] = [(); 4].map(|_| support::rational_point(&mut rng, 50));
        if !axioms::exchange_hypotheses(&p, &q, &r, &s) {
            continue;
        }
        tested += 1;
        let ok = flipmap::geometry::ccw(&r, &s, &q).is_positive() && flipmap::geometry::ccw(&s, &r, &p).is_positive();
        ensure(ok, || format!("exchange fails on {p} {q} {r} {s}"))?;
    }
    Ok(format!("{tested} quadruples ({draws} draws), zero failures"))
}

fn criterion_4() -> Outcome {
    const FLIPS: usize = 1000;
    let mut rng = support::rng(4);
    let mut flips = 0;
    let mut maps = 0;
    while flips < FLIPS {
        let n = rng.random_range(3..40);
        let ps = support::general_position_set(&mut rng, n, 10_000);
        let mut m = initial_triangulation(&ps).map_err(|e| e.to_string())?.into_map();
        maps += 1;
        let census = m.census();
        let points = m.darts_and_points().1;
        for _ in 0..25 {
            let candidates: Vec<DartId> =
                m.darts().iter().copied().filter(|&d| m.flip_preconditions(d).unwrap().embedding_ok).collect();
            let Some(&d) = candidates.choose(&mut rng) else { break };
            let next = m.flip(d).map_err(|e| e.to_string())?;
            let mut report = verify::check_triangulation(&next);
            report.extend(verify::check_wellembedded(&next));
            ensure(report.passed(), || format!("flip of {d} broke the map: {report}"))?;
            ensure(next.census() == census, || format!("flip of {d} changed the census to {}", next.census()))?;
            ensure(next.darts_and_points().1 == points, || format!("flip of {d} changed the point set"))?;
            m = next;
            flips += 1;
        }
    }
    Ok(format!("{flips} flips on {maps} maps preserve d, e, v, f, c and the point set"))
}

fn criterion_5(runs: &[Run]) -> Outcome {
    let (t, _) = fixtures::running_example();
    let before = total_lifted_volume(&t);
    let (done, trace) = delaunay_with(&t, &DelaunayOptions::default(), |_, _| {}).map_err(|e| e.to_string())?;
    let drop = &before - &total_lifted_volume(&done);
    ensure(trace.flip_count() == 1 && drop == Coord::from_int(8), || format!("running example drop {drop}"))?;

    let mut events = 0;
    for run in runs {
        let trace = parse_trace(&run.trace_text).map_err(|e| e.to_string())?;
        let mut m = run.start.map().clone();
        let mut measure = total_lifted_volume(&run.start);
        for e in &trace.events {
            ensure(e.measure_after < e.measure_before, || format!("n={}: {e} does not decrease", run.n))?;
            ensure(e.measure_before == measure, || format!("n={}: {e} does not continue from {measure}", run.n))?;
            let want = expected_drop(&quad(&m, e.dart));
            let got = &e.measure_before - &e.measure_after;
            ensure(got == want, || format!("n={}: {e} drops by {got}, lifted tetrahedron gives {want}", run.n))?;
            m = m.flip(e.dart).map_err(|err| err.to_string())?;
            let t = TriMap::new(m.clone()).map_err(|err| err.to_string())?;
            measure = total_lifted_volume(&t);
            ensure(measure == e.measure_after, || format!("n={}: replayed measure {measure} differs from {e}", run.n))?;
            events += 1;
        }
        ensure(write_map(&m) == run.map_text, || {
            format!("n={}: replaying the trace does not give the output map", run.n)
        })?;
    }
    Ok(format!("running example drop = 8; {events} replayed flips drop by exactly 3·tetra_det/6"))
}

fn criterion_6(runs: &[Run]) -> Outcome {
    let mut slowest: BTreeMap<usize, Duration> = BTreeMap::new();
    for run in runs {
        let t = TriMap::new(parse_map(&run.map_text).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(no_dart_illegal(&t), || format!("n={}: an illegal edge remains", run.n))?;
        let report = verify::delaunay_oracle(&t, Execution::default());
        ensure(report.passed(), || format!("n={}: oracle: {report}", run.n))?;
        let e = slowest.entry(run.n).or_default();
        *e = (*e).max(run.elapsed);
    }
    let worst = slowest[&100];
    ensure(worst < Duration::from_secs(10), || format!("slowest n=100 run took {worst:?}"))?;
    Ok(format!("{} sets exit 0, no illegal dart, oracle passes; slowest n=100 run {worst:?}", runs.len()))
}

fn criterion_7(runs: &[Run]) -> Outcome {
    let mut max_by_n: BTreeMap<usize, usize> = BTreeMap::new();
    for run in runs {
        let trace = parse_trace(&run.trace_text).map_err(|e| e.to_string())?;
        let cap = 10 * run.n * run.n;
        ensure(trace.flip_count() <= cap, || format!("n={}: {} flips exceed {cap}", run.n, trace.flip_count()))?;
        ensure(trace.is_strictly_decreasing(), || format!("n={}: trace is not monotone", run.n))?;
        let e = max_by_n.entry(run.n).or_default();
        *e = (*e).max(trace.flip_count());
    }
    let summary: Vec<String> = max_by_n.iter().map(|(n, f)| format!("n={n}:{f}")).collect();
    Ok(format!("max flips {} all within 10·n²; traces monotone", summary.join(" ")))
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut entries: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    entries.sort();
    entries
}

fn criterion_8(runs: &[Run], dir: &Path) -> Outcome {
    let mut compared = 0;
    for (i, run) in runs.iter().enumerate().filter(|(i, _)| i % 10 == 0) {
        let input = dir.join(format!("det_{i}.txt"));
        fs::write(&input, write_points(&run.points)).unwrap();
        let mut outputs = Vec::new();
        for (j, extra) in [None, None, Some("--sequential")].into_iter().enumerate() {
            let out = dir.join(format!("det_{i}_{j}.hmap"));
            let trace = dir.join(format!("det_{i}_{j}.trace"));
            let svg = dir.join(format!("det_{i}_{j}_svg"));
            let mut args = vec![
                "delaunay",
                input.to_str().unwrap(),
                "-o",
                out.to_str().unwrap(),
                "--trace",
                trace.to_str().unwrap(),
                "--svg",
                svg.to_str().unwrap(),
            ];
            args.extend(extra);
            let (code, err) = cli(&args);
            ensure(code == 0, || format!("determinism run {i}/{j}: exit {code}: {err}"))?;
            outputs.push((fs::read(&out).unwrap(), fs::read(&trace).unwrap(), read_dir_sorted(&svg)));
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("set {i}: outputs differ between runs"))?;
        ensure(outputs[0].1 == run.trace_text.as_bytes(), || format!("set {i}: trace differs from the first run"))?;
        compared += 1;

        let text = String::from_utf8(outputs[0].0.clone()).unwrap();
        let parsed = parse_map(&text).map_err(|e| e.to_string())?;
        ensure(write_map(&parsed) == text, || format!("set {i}: map file does not round-trip byte for byte"))?;
    }

    let mut rng = support::rng(8);
    for _ in 0..200 {
        let n = rng.random_range(1..40);
        let fm = support::random_free_map(&mut rng, n, 3 * n as usize);
        let m = Hypermap::build(&fm).map_err(|e| e.to_string())?;
        let text = write_map(&m);
        let back = parse_map_parts(&text).map_err(|e| e.to_string())?.constructors;
        ensure(back == m.free_map(), || "constructor sequence changed by a round trip".to_string())?;
        let again = write_map(&parse_map(&text).map_err(|e| e.to_string())?);
        ensure(again == text, || "map file changed by a round trip".to_string())?;
    }
    Ok(format!("{compared} inputs give byte-identical maps, traces and SVGs across 3 runs; 200 random maps round-trip"))
}

fn criterion_9() -> Outcome {
    let mut rng = support::rng(9);
    let mut checked = 0;
    const MAPS: usize = 150;
    for _ in 0..MAPS {
        let n = rng.random_range(1..60);
        let fm = support::random_free_map(&mut rng, n, 3 * n as usize);
        let m = Hypermap::build(&fm).map_err(|e| e.to_string())?;
        let naive = NaiveMap::new(&fm);
        for &d in m.darts() {
            for k in Dim::ALL {
                let fast = (m.alpha(k, d, Direction::Forward).unwrap(), m.alpha(k, d, Direction::Inverse).unwrap());
                let slow = (naive.alpha(k, d), naive.alpha_inv(k, d));
                ensure(fast == slow, || format!("dart {d}, dimension {k}: tables give {fast:?}, traversal {slow:?}"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} darts over {MAPS} random maps agree with the naive traversal"))
}

fn main() {
    let dir = TempDir::new().expect("temporary directory");
    let started = Instant::now();
    let runs = end_to_end_runs(dir.path());
    println!("end-to-end runs prepared in {:.2?}", started.elapsed());

    let needs_runs = |f: &dyn Fn(&[Run]) -> Outcome| match &runs {
        Ok(r) => f(r),
        Err(e) => Err(format!("end-to-end runs failed: {e}")),
    };
    let criteria: Vec<Criterion<'_>> = vec![
        ("1 euler formula", Box::new(|| needs_runs(&criterion_1))),
        ("2 orientation axioms", Box::new(criterion_2)),
        ("3 exchange property", Box::new(criterion_3)),
        ("4 flip preservation", Box::new(criterion_4)),
        ("5 measure decrease", Box::new(|| needs_runs(&criterion_5))),
        ("6 end-to-end delaunay", Box::new(|| needs_runs(&criterion_6))),
        ("7 termination safety", Box::new(|| needs_runs(&criterion_7))),
        ("8 determinism and round-trip", Box::new(|| needs_runs(&|r| criterion_8(r, dir.path())))),
        ("9 closure oracle", Box::new(criterion_9)),
    ];

    let mut failed = 0;
    for (name, check) in &criteria {
        let t0 = Instant::now();
        let outcome = check();
        let took = t0.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail}) [{took:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail}) [{took:.2?}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed in {:.2?}", criteria.len() - failed, started.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
