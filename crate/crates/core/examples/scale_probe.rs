//! Timing probe for larger symbolic solves.

use std::time::Instant;

use skit_core::algebra::rat;
use skit_core::combinatorics::{SchubertCondition, SchubertProblem};
use skit_core::geometry::OsculationPoint;
use skit_core::solver::{solve_instance, SolveBudget};
use skit_core::systems::{CoordChoice, InstanceSpec};

fn run(label: &str, problem: SchubertProblem, points: Vec<OsculationPoint>) {
    let spec = InstanceSpec::new(problem, points).unwrap();
    let budget = SolveBudget { max_pairs: 5_000_000, wall_secs: Some(600.0) };
    let t0 = Instant::now();
    match solve_instance(&spec, CoordChoice::Pair, &budget) {
        Ok(res) => println!(
            "{label}: complex {} real {} in {:?}",
            res.complex_count,
            res.real_count,
            t0.elapsed()
        ),
        Err(e) => println!("{label}: {e} after {:?}", t0.elapsed()),
    }
}

fn main() {
    let which = std::env::args().nth(1).unwrap_or_default();
    let pts = |v: &[(i64, i64)]| -> Vec<OsculationPoint> {
        v.iter().map(|&(a, b)| OsculationPoint::rational(rat(a, b))).collect()
    };
    if which.is_empty() || which == "gr28" {
        // omega family in Gr(2,8): omega = (2,8), seven hypersurfaces, r = 7
        let omega = SchubertCondition::new(2, 8, vec![2, 8]).unwrap();
        let hyp = SchubertCondition::hypersurface(2, 8);
        let problem = SchubertProblem::new(
            std::iter::once(omega).chain(vec![hyp; 7]).collect(),
        )
        .unwrap();
        let mut points = vec![OsculationPoint::rational(rat(0, 1)), OsculationPoint::Infinity];
        points.extend(pts(&[(1, 1), (5, 2), (-7, 3), (11, 4), (-2, 5), (9, 7)]));
        run("Gr(2,8) omega r=7", problem, points);
    }
    if which.is_empty() || which == "gr48" {
        // omega family in Gr(4,8): omega = (2,3,4,8), seven hypersurfaces
        let omega = SchubertCondition::new(4, 8, vec![2, 3, 4, 8]).unwrap();
        let hyp = SchubertCondition::hypersurface(4, 8);
        let problem = SchubertProblem::new(
            std::iter::once(omega).chain(vec![hyp; 7]).collect(),
        )
        .unwrap();
        let mut points = vec![OsculationPoint::rational(rat(0, 1)), OsculationPoint::Infinity];
        points.extend(pts(&[(1, 1), (5, 2), (-7, 3), (11, 4), (-2, 5), (9, 7)]));
        run("Gr(4,8) omega r=7", problem, points);
    }
    if which.is_empty() || which == "box9" {
        // nine hypersurfaces in Gr(3,6), degree 42
        let hyp = SchubertCondition::hypersurface(3, 6);
        let problem = SchubertProblem::new(vec![hyp; 9]).unwrap();
        let mut points = vec![OsculationPoint::rational(rat(0, 1)), OsculationPoint::Infinity];
        points.extend(pts(&[(1, 1), (5, 2), (-7, 3), (11, 4), (-2, 5), (9, 7), (-13, 8)]));
        run("Gr(3,6) box^9 r=9", problem, points);
    }
}
