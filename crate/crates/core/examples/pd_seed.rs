//! Prints a perturbed primal-dual seed (points JSON) for the four-lines
//! instance, derived from the symbolic solutions; input for `skit certify`.

use skit_core::algebra::rat_int;
use skit_core::certify::{embed_numeric, instantiate_pattern, shape_solutions};
use skit_core::combinatorics::{SchubertCondition, SchubertProblem};
use skit_core::geometry::OsculationPoint;
use skit_core::solver::{solve_system, SolveBudget};
use skit_core::systems::{
    determinantal_chart, determinantal_instance, primal_dual_instance, CoordChoice, InstanceSpec,
};

fn main() {
    let problem = SchubertProblem::new(vec![SchubertCondition::hypersurface(2, 4); 4]).unwrap();
    let spec = InstanceSpec::new(
        problem,
        vec![
            OsculationPoint::Infinity,
            OsculationPoint::rational(rat_int(0)),
            OsculationPoint::rational(rat_int(1)),
            OsculationPoint::rational(rat_int(2)),
        ],
    )
    .unwrap();
    let det = determinantal_instance(&spec, CoordChoice::Pair).unwrap();
    let res = solve_system(&det, &SolveBudget::default()).unwrap();
    let chart = determinantal_chart(&spec, CoordChoice::Pair).unwrap();
    let pd = primal_dual_instance(&spec).unwrap();
    let mut pts = Vec::new();
    for sol in shape_solutions(&res.shape).unwrap() {
        let h = instantiate_pattern(&chart.pattern, &sol.0);
        let seed = embed_numeric(&pd, &h).unwrap();
        // perturb within the certification basin
        let coords: Vec<[f64; 2]> =
            seed.0.iter().map(|z| [z.re + 1e-6, z.im + 1e-6]).collect();
        pts.push(coords);
    }
    println!("{}", serde_json::to_string(&pts).unwrap());
}
