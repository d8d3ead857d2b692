//! Exact solution counting: lexicographic Groebner bases, eliminants,
//! Shape-Lemma validation, and Sturm-based real-root counting.

mod groebner;
mod sturm;
mod wronskian;

pub use groebner::{buchberger, normal_form, GroebnerBasis};
pub use sturm::{
    count_real_roots, sturm as sturm_sequence, sylvester, variation, variation_at_infinity,
    RootRange,
};
pub use wronskian::{
    annihilator_wronskian, castelnuovo_check, castelnuovo_check_with, rows_as_polys, vanish_order,
    wronskian,
};

use thiserror::Error;

use crate::algebra::{MultiPoly, Rational, UniPoly};
use crate::systems::{determinantal_instance, CoordChoice, InstanceSpec, PolySystem, SystemsError};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("compute budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("basis is not in shape position after all fallbacks")]
    NotInShape,
    #[error("interval endpoint is a root")]
    EndpointIsRoot,
    #[error("empty or reversed interval")]
    BadInterval,
    #[error("zero polynomial has no root count")]
    ZeroPolynomial,
    #[error("matrix is rank deficient")]
    RankDeficient,
    #[error(transparent)]
    Systems(#[from] SystemsError),
}

/// Pair limit and wall-clock limit for a Groebner computation. Exceeding
/// either is a clean error, never a wrong answer.
#[derive(Debug, Clone)]
pub struct SolveBudget {
    pub max_pairs: usize,
    pub wall_secs: Option<f64>,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget { max_pairs: 200_000, wall_secs: Some(300.0) }
    }
}

/// Verdict of the Shape-Lemma test on a reduced lexicographic basis.
#[derive(Debug, Clone)]
pub struct ShapeReport {
    /// Basis has the form (g(x1), x2 - g2(x1), ..., xq - gq(x1)).
    pub in_shape: bool,
    pub eliminant: UniPoly<Rational>,
    /// Ideal degree: standard monomial count of the initial ideal.
    pub degree: usize,
    pub square_free: bool,
    /// Variable order used, when a fallback reordering was needed:
    /// `perm[i]` is the original index of working variable i.
    pub permutation_used: Option<Vec<usize>>,
    /// The coordinate functions x_j = g_j(x1) for j = 2..q in the working
    /// variable order, when the basis is in shape.
    pub coordinates: Option<Vec<UniPoly<Rational>>>,
    /// Shear coefficients c_j when the first variable was replaced by
    /// x1 + sum c_j x_j as a last fallback.
    pub linear_change: Option<Vec<Rational>>,
}

/// Symbolic solve outcome for one instance.
#[derive(Debug, Clone)]
pub struct SolveResult {
    /// Complex count with multiplicity (the ideal degree).
    pub complex_count: usize,
    /// Distinct real points.
    pub real_count: usize,
    pub multiplicity_detected: bool,
    pub shape: ShapeReport,
}

/// The generator of I intersect Q[x1] present in a reduced lexicographic
/// basis (x1 minimal).
pub fn eliminant(gb: &GroebnerBasis) -> Result<UniPoly<Rational>, SolverError> {
    if !gb.is_zero_dimensional() {
        return Err(SolverError::NotZeroDimensional);
    }
    let candidates: Vec<&MultiPoly<Rational>> = gb
        .generators
        .iter()
        .filter(|g| g.support().iter().all(|&v| v == 0))
        .collect();
    let g = candidates.first().ok_or(SolverError::NotInShape)?;
    Ok(g.as_unipoly_in(0).expect("support checked"))
}

/// Test whether a reduced basis has shape form: one univariate generator in
/// x1 and, for each other variable, a generator x_j - g_j(x1).
pub fn shape_check(gb: &GroebnerBasis) -> Result<ShapeReport, SolverError> {
    let degree = gb.ideal_degree()?;
    let elim = eliminant(gb)?;
    let q = gb.arity;
    let mut covered = vec![false; q];
    covered[0] = true;
    let mut in_shape = true;
    for g in &gb.generators {
        let (m, _) = g.leading_term().expect("nonzero generator");
        if let Some((var, 1)) = m.as_pure_power() {
            if var != 0 {
                // the tail must involve only x1
                let tail_ok = g
                    .terms()
                    .all(|(mm, _)| mm == m || mm.as_pure_power().map_or(mm.is_one(), |(v, _)| v == 0));
                if tail_ok {
                    covered[var] = true;
                }
            }
        }
    }
    if covered.iter().any(|&c| !c) {
        in_shape = false;
    }
    if elim.degree() != Some(degree) {
        in_shape = false;
    }
    let square_free = elim.is_square_free();
    let coordinates = if in_shape { shape_coordinate_polys(gb) } else { None };
    Ok(ShapeReport {
        in_shape,
        eliminant: elim,
        degree,
        square_free,
        permutation_used: None,
        coordinates,
        linear_change: None,
    })
}

/// For a shape basis, the coordinate functions x_j = g_j(x1) for j = 2..q,
/// read off the generators.
pub fn shape_coordinate_polys(gb: &GroebnerBasis) -> Option<Vec<UniPoly<Rational>>> {
    let q = gb.arity;
    let mut coords: Vec<Option<UniPoly<Rational>>> = vec![None; q];
    for g in &gb.generators {
        let (m, lc) = g.leading_term()?;
        if let Some((var, 1)) = m.as_pure_power() {
            if var == 0 {
                continue;
            }
            // g = lc*x_var + tail(x1)  =>  x_var = -tail/lc
            let mut tail = g.clone();
            tail.add_term(m.clone(), -lc.clone());
            let tail_uni = tail.as_unipoly_in(0)?;
            let scale = -(Rational::from(num_bigint::BigInt::from(1)) / lc.clone());
            coords[var] = Some(tail_uni.scale(&scale));
        }
    }
    let out: Option<Vec<UniPoly<Rational>>> =
        coords.into_iter().skip(1).collect();
    out
}

/// Apply the variable permutation and recompute the basis, looking for the
/// shape form. `perm[i]` is the old index of new variable `i`.
fn retry_with_permutation(
    system_eqs: &[MultiPoly<Rational>],
    perm: &[usize],
    budget: &SolveBudget,
) -> Result<(GroebnerBasis, ShapeReport), SolverError> {
    // permute_vars wants new->old: build the inverse map for substitution
    let permuted: Vec<MultiPoly<Rational>> = system_eqs
        .iter()
        .map(|e| {
            let mut inv = vec![0; perm.len()];
            for (new, &old) in perm.iter().enumerate() {
                inv[old] = new;
            }
            e.permute_vars(&inv_perm_as_old_of_new(&inv))
        })
        .collect();
    let gb = buchberger(&permuted, budget)?;
    let mut report = shape_check(&gb)?;
    report.permutation_used = Some(perm.to_vec());
    Ok((gb, report))
}

fn inv_perm_as_old_of_new(inv: &[usize]) -> Vec<usize> {
    // inv maps old -> new; permute_vars wants new -> old
    let mut out = vec![0; inv.len()];
    for (old, &new) in inv.iter().enumerate() {
        out[new] = old;
    }
    out
}

/// Full symbolic pipeline: reduced lexicographic basis, eliminant, shape
/// validation with fallbacks (variable reorderings, then one small-integer
/// linear change of the first variable), and Sturm count of distinct real
/// roots.
pub fn solve_system(
    system: &PolySystem<Rational>,
    budget: &SolveBudget,
) -> Result<SolveResult, SolverError> {
    let gb = buchberger(&system.equations, budget)?;
    if gb.is_trivial() {
        let report = ShapeReport {
            in_shape: true,
            eliminant: UniPoly::one(),
            degree: 0,
            square_free: true,
            permutation_used: None,
            coordinates: Some(vec![]),
            linear_change: None,
        };
        return Ok(SolveResult {
            complex_count: 0,
            real_count: 0,
            multiplicity_detected: false,
            shape: report,
        });
    }
    let degree = gb.ideal_degree()?;
    let mut chosen: Option<ShapeReport> = None;

    let first = shape_check(&gb)?;
    if first.in_shape {
        chosen = Some(first);
    } else {
        // fallback: swap each other variable into the eliminant position
        let q = gb.arity;
        for j in 1..q {
            let mut perm: Vec<usize> = (0..q).collect();
            perm.swap(0, j);
            if let Ok((_, report)) = retry_with_permutation(&system.equations, &perm, budget) {
                if report.in_shape {
                    chosen = Some(report);
                    break;
                }
            }
        }
        if chosen.is_none() {
            // one random small-integer linear change of the first variable:
            // x1 -> x1 - sum c_j x_j with small fixed coefficients
            let q = system.num_vars();
            let mut shift = MultiPoly::var(q, 0);
            let mut shears = Vec::with_capacity(q.saturating_sub(1));
            for (idx, j) in (1..q).enumerate() {
                let c = crate::algebra::rat_int(((idx as i64) % 3) + 1);
                shift = shift - MultiPoly::var(q, j).scale(&c);
                shears.push(c);
            }
            let changed: Vec<MultiPoly<Rational>> =
                system.equations.iter().map(|e| e.substitute(0, &shift)).collect();
            let gb2 = buchberger(&changed, budget)?;
            let mut report = shape_check(&gb2)?;
            if report.in_shape {
                report.linear_change = Some(shears);
                chosen = Some(report);
            }
        }
    }
    let report = chosen.ok_or(SolverError::NotInShape)?;

    let square_free_part = report.eliminant.square_free_part();
    let real_count = count_real_roots(&square_free_part, &RootRange::WholeLine)?;
    Ok(SolveResult {
        complex_count: degree,
        real_count,
        multiplicity_detected: !report.square_free,
        shape: report,
    })
}

/// Build the determinantal system for a conjugation-stable instance and
/// count its complex and real solutions symbolically.
pub fn solve_instance(
    spec: &InstanceSpec,
    coords: CoordChoice,
    budget: &SolveBudget,
) -> Result<SolveResult, SolverError> {
    let system = determinantal_instance(spec, coords)?;
    solve_system(&system, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{gaussian, parse_poly, rat_int};
    use crate::combinatorics::{SchubertCondition, SchubertProblem};
    use crate::geometry::OsculationPoint;

    fn budget() -> SolveBudget {
        SolveBudget::default()
    }

    fn four_lines_at(points: Vec<OsculationPoint>) -> InstanceSpec {
        let problem =
            SchubertProblem::new(vec![SchubertCondition::hypersurface(2, 4); 4]).unwrap();
        InstanceSpec::new(problem, points).unwrap()
    }

    #[test]
    fn shape_basis_report() {
        let f = parse_poly("x1^2 - 1", 2).unwrap();
        let g = parse_poly("x2 - x1", 2).unwrap();
        let gb = buchberger(&[f, g], &budget()).unwrap();
        let report = shape_check(&gb).unwrap();
        assert!(report.in_shape);
        assert!(report.square_free);
        assert_eq!(report.degree, 2);
        assert_eq!(
            report.eliminant,
            UniPoly::from_coeffs(vec![rat_int(-1), rat_int(0), rat_int(1)])
        );
    }

    #[test]
    fn multiple_root_detected() {
        let f = parse_poly("x1^2", 1).unwrap();
        let gb = buchberger(&[f], &budget()).unwrap();
        let report = shape_check(&gb).unwrap();
        assert!(!report.square_free);
        let sys = PolySystem::new(
            1,
            vec![parse_poly("x1^2", 1).unwrap()],
            crate::systems::FormulationTag::Determinantal,
        );
        let res = solve_system(&sys, &budget()).unwrap();
        assert!(res.multiplicity_detected);
        assert_eq!(res.complex_count, 2);
        assert_eq!(res.real_count, 1);
    }

    #[test]
    fn four_lines_real_points() {
        let spec = four_lines_at(vec![
            OsculationPoint::Infinity,
            OsculationPoint::rational(rat_int(0)),
            OsculationPoint::rational(rat_int(1)),
            OsculationPoint::rational(rat_int(2)),
        ]);
        let res = solve_instance(&spec, CoordChoice::Pair, &budget()).unwrap();
        assert_eq!(res.complex_count, 2);
        assert_eq!(res.real_count, 2);
        assert!(res.shape.in_shape);
        // eliminant proportional to a b x^2 - 2(a+b) x + 3 at a=1, b=2
        let expect = UniPoly::from_coeffs(vec![rat_int(3), rat_int(-6), rat_int(2)]);
        let elim = &res.shape.eliminant;
        let lhs = elim.scale(expect.leading_coeff().unwrap());
        let rhs = expect.scale(elim.leading_coeff().unwrap());
        assert_eq!(lhs, rhs, "eliminant {elim} not proportional to {expect}");
    }

    #[test]
    fn four_lines_conjugate_points() {
        let spec = four_lines_at(vec![
            OsculationPoint::Infinity,
            OsculationPoint::rational(rat_int(0)),
            OsculationPoint::Finite(gaussian(0, 1, 1, 1)),
            OsculationPoint::Finite(gaussian(0, 1, -1, 1)),
        ]);
        let res = solve_instance(&spec, CoordChoice::Pair, &budget()).unwrap();
        assert_eq!(res.complex_count, 2);
        // the discriminant route: a = i, b = -i gives eliminant x^2 + 3
        assert_eq!(res.real_count, 0);
    }

    #[test]
    fn wrapped_toy_system() {
        let sys = PolySystem::new(
            2,
            vec![
                parse_poly("x1^2 - 1", 2).unwrap(),
                parse_poly("x2 - x1", 2).unwrap(),
            ],
            crate::systems::FormulationTag::Determinantal,
        );
        let res = solve_system(&sys, &budget()).unwrap();
        assert_eq!(res.complex_count, 2);
        assert_eq!(res.real_count, 2);
    }

    #[test]
    fn parity_invariant_on_four_lines_family() {
        for (a_num, b_num) in [(1i64, 2i64), (3, 8), (-2, 5), (7, -4)] {
            let spec = four_lines_at(vec![
                OsculationPoint::Infinity,
                OsculationPoint::rational(rat_int(0)),
                OsculationPoint::rational(rat_int(a_num)),
                OsculationPoint::rational(rat_int(b_num)),
            ]);
            let res = solve_instance(&spec, CoordChoice::Pair, &budget()).unwrap();
            if res.shape.square_free {
                assert_eq!(res.real_count % 2, res.complex_count % 2);
            }
        }
    }

    #[test]
    fn grassmannian_coords_route() {
        // same instance through the big chart: degree stays 2
        let spec = four_lines_at(vec![
            OsculationPoint::rational(rat_int(5)),
            OsculationPoint::rational(rat_int(0)),
            OsculationPoint::rational(rat_int(1)),
            OsculationPoint::rational(rat_int(2)),
        ]);
        let res = solve_instance(&spec, CoordChoice::Grassmannian, &budget()).unwrap();
        assert_eq!(res.complex_count, 2);
        assert_eq!(res.real_count, 2);
    }

    #[test]
    fn schubert_coords_route() {
        let spec = four_lines_at(vec![
            OsculationPoint::rational(rat_int(0)),
            OsculationPoint::Infinity,
            OsculationPoint::rational(rat_int(1)),
            OsculationPoint::rational(rat_int(2)),
        ]);
        let res = solve_instance(&spec, CoordChoice::Schubert, &budget()).unwrap();
        assert_eq!(res.complex_count, 2);
        assert_eq!(res.real_count, 2);
    }
}
