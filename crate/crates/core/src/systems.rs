//! Polynomial system builders: the classical determinantal formulation with
//! real-generator splitting, and the primal-dual bilinear formulations
//! whose equation count equals the codimension (square for Schubert
//! problems).

use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Coeff, GaussianRational, Matrix, MultiPoly, Rational};
use crate::combinatorics::{SchubertCondition, SchubertProblem};
use crate::geometry::{
    osculating_basis, pattern_dual, pattern_dual_pair, pattern_pair, pattern_schubert,
    CoordPattern, FlagBasis, GeometryError, Moebius, OsculationPoint,
};

#[derive(Debug, Error)]
pub enum SystemsError {
    #[error("points must be pairwise distinct")]
    PointsNotDistinct,
    #[error("need one osculation point per condition")]
    LengthMismatch,
    #[error("instance is not conjugation-stable")]
    NotConjugateStable,
    #[error("chart condition {0} needs a real osculation point")]
    ChartPointNotReal(usize),
    #[error("formulation needs at least {0} conditions")]
    TooFewConditions(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Combinatorics(#[from] crate::combinatorics::CombinatoricsError),
}

/// A Schubert problem instance: one osculation point per condition.
#[derive(Debug, Clone)]
pub struct InstanceSpec {
    pub problem: SchubertProblem,
    pub points: Vec<OsculationPoint>,
}

impl InstanceSpec {
    pub fn new(
        problem: SchubertProblem,
        points: Vec<OsculationPoint>,
    ) -> Result<Self, SystemsError> {
        if problem.len() != points.len() {
            return Err(SystemsError::LengthMismatch);
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(SystemsError::PointsNotDistinct);
                }
            }
        }
        Ok(InstanceSpec { problem, points })
    }

    /// The multiset {(condition, point)} is closed under conjugation.
    pub fn is_conjugate_stable(&self) -> bool {
        (0..self.points.len()).all(|i| {
            let conj = self.points[i].conjugate();
            (0..self.points.len())
                .any(|j| self.points[j] == conj && self.problem.conditions[i] == self.problem.conditions[j])
        })
    }
}

/// How the chart for the determinantal formulation is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordChoice {
    /// Stiefel coordinates S(1..k) on the Grassmannian; all conditions are
    /// imposed by minors.
    Grassmannian,
    /// Coordinates on the first condition's Schubert cell; its condition
    /// comes for free.
    Schubert,
    /// Coordinates on the intersection of the first two Schubert varieties.
    Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FormulationTag {
    Determinantal,
    PrimalDual,
    PrimalDualHalf,
}

/// A polynomial system with a named, ordered variable list. The first
/// variable is the designated eliminant variable (minimal in the lex
/// order).
#[derive(Debug, Clone)]
pub struct PolySystem<C: Coeff = Rational> {
    pub variables: Vec<String>,
    pub equations: Vec<MultiPoly<C>>,
    pub formulation: FormulationTag,
}

impl<C: Coeff> PolySystem<C> {
    pub fn new(
        num_vars: usize,
        equations: Vec<MultiPoly<C>>,
        formulation: FormulationTag,
    ) -> Self {
        let variables = (1..=num_vars).map(|i| format!("x{i}")).collect();
        // identically-zero equations are never stored
        let equations = equations.into_iter().filter(|e| !e.is_zero()).collect();
        PolySystem { variables, equations, formulation }
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn stats(&self) -> SystemStats {
        let mut degrees: Vec<u32> =
            self.equations.iter().map(|e| e.total_degree().unwrap_or(0)).collect();
        degrees.sort_unstable();
        SystemStats {
            num_equations: self.equations.len(),
            num_variables: self.num_vars(),
            degrees,
            is_square: self.equations.len() == self.num_vars(),
        }
    }

    /// Text dump: a "vars:" header then one polynomial per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("vars: {}\n", self.variables.join(" "));
        for e in &self.equations {
            let _ = writeln!(out, "{}", e.to_text());
        }
        out
    }

    /// JSON mirror of the text dump.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vars": self.variables,
            "equations": self.equations.iter().map(|e| e.to_text()).collect::<Vec<_>>(),
            "formulation": format!("{:?}", self.formulation),
        })
    }
}

/// Counts and squareness of a system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemStats {
    pub num_equations: usize,
    pub num_variables: usize,
    pub degrees: Vec<u32>,
    pub is_square: bool,
}

/// Indices (0-based) of the relevant incidence conditions: drop i when
/// alpha_{i+1} = alpha_i + 1 and drop the last when alpha_k = n.
pub fn relevant_conditions(alpha: &SchubertCondition) -> Vec<usize> {
    let k = alpha.k;
    (0..k)
        .filter(|&i| {
            if i + 1 < k && alpha.entries[i + 1] == alpha.entries[i] + 1 {
                return false;
            }
            if i == k - 1 && alpha.entries[i] == alpha.n {
                return false;
            }
            true
        })
        .collect()
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        let need = r - cur.len();
        for v in start..=(n - need) {
            cur.push(v);
            rec(v + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= n {
        rec(0, n, r, &mut Vec::new(), &mut out);
    }
    out
}

fn poly_mat_mul<C: Coeff>(
    a: &Matrix<MultiPoly<C>>,
    b: &Matrix<MultiPoly<C>>,
) -> Matrix<MultiPoly<C>> {
    assert_eq!(a.cols(), b.rows());
    let arity = a.at(0, 0).arity();
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        let mut acc = MultiPoly::zero(arity);
        for l in 0..a.cols() {
            if a.at(i, l).is_zero() || b.at(l, j).is_zero() {
                continue;
            }
            acc = acc + a.at(i, l).clone() * b.at(l, j).clone();
        }
        acc
    })
}

fn const_mat<C: Coeff>(m: &Matrix<C>, arity: usize) -> Matrix<MultiPoly<C>> {
    m.map(|z| MultiPoly::constant(arity, z.clone()))
}

/// All r x r minors of the stack [chart; flag-slice] imposing one relevant
/// incidence condition.
fn condition_minors(
    chart: &Matrix<MultiPoly<GaussianRational>>,
    alpha: &SchubertCondition,
    basis: &FlagBasis,
) -> Result<Vec<MultiPoly<GaussianRational>>, SystemsError> {
    let arity = chart.at(0, 0).arity();
    let k = chart.rows();
    let n = chart.cols();
    let mut out = Vec::new();
    for i in relevant_conditions(alpha) {
        let a_i = alpha.entries[i];
        let r = k + a_i - i;
        let slice = basis.slice(a_i)?;
        let stack = chart.stack(&const_mat(&slice, arity));
        for rows in combinations(k + a_i, r) {
            for cols in combinations(n, r) {
                let m =
                    crate::algebra::minor(&stack, &rows, &cols).expect("square by construction");
                if !m.is_zero() {
                    out.push(m);
                }
            }
        }
    }
    Ok(out)
}

/// Chart data for the determinantal builder: the parametrizing matrix,
/// which conditions it absorbs, and the reparametrization applied to the
/// osculation points.
pub struct Chart {
    matrix: Matrix<MultiPoly<GaussianRational>>,
    pub pattern: CoordPattern,
    pub absorbed: Vec<usize>,
    pub moebius: Moebius,
}

/// The chart the determinantal builder would use, for converting chart
/// solutions back to k-planes. A chart value vector instantiates
/// `chart.pattern` directly; the rows are standard coordinates for the
/// instance with points moved by `chart.moebius`.
pub fn determinantal_chart(spec: &InstanceSpec, coords: CoordChoice) -> Result<Chart, SystemsError> {
    build_chart(spec, coords)
}

fn build_chart(spec: &InstanceSpec, coords: CoordChoice) -> Result<Chart, SystemsError> {
    let k = spec.problem.k;
    let n = spec.problem.n;
    match coords {
        CoordChoice::Grassmannian => {
            let alpha = SchubertCondition::new(k, n, (1..=k).collect())?;
            let pattern = crate::geometry::pattern_grassmannian(&alpha);
            let arity = pattern.num_vars();
            Ok(Chart {
                matrix: pattern.to_poly_matrix(arity, 0),
                pattern,
                absorbed: vec![],
                moebius: Moebius::identity(),
            })
        }
        CoordChoice::Schubert => {
            if !spec.points[0].is_real() {
                return Err(SystemsError::ChartPointNotReal(0));
            }
            let zero = OsculationPoint::rational(Rational::zero());
            let moebius = if spec.points[0] == zero {
                Moebius::identity()
            } else if spec.points[0] == OsculationPoint::Infinity {
                // t -> 1/t moves infinity to 0
                Moebius {
                    a: Rational::zero(),
                    b: Rational::one(),
                    c: Rational::one(),
                    d: Rational::zero(),
                }
            } else {
                Moebius::sending_to_zero_infinity(&spec.points[0], &OsculationPoint::Infinity)
            };
            let pattern = pattern_schubert(&spec.problem.condition(0));
            let arity = pattern.num_vars();
            Ok(Chart {
                matrix: pattern.to_poly_matrix(arity, 0),
                pattern,
                absorbed: vec![0],
                moebius,
            })
        }
        CoordChoice::Pair => {
            if spec.problem.len() < 2 {
                return Err(SystemsError::TooFewConditions(2));
            }
            for idx in [0, 1] {
                if !spec.points[idx].is_real() {
                    return Err(SystemsError::ChartPointNotReal(idx));
                }
            }
            // The pattern puts its first condition on the standard flag
            // (point 0) and its second on the opposite flag (point inf).
            // When condition 1 already sits at infinity, swap roles so no
            // reparametrization is needed.
            let (at_zero, at_inf) =
                if spec.points[0] == OsculationPoint::Infinity { (1, 0) } else { (0, 1) };
            let moebius =
                Moebius::sending_to_zero_infinity(&spec.points[at_zero], &spec.points[at_inf]);
            let pattern = pattern_pair(
                &spec.problem.condition(at_zero),
                &spec.problem.condition(at_inf),
            )?;
            let arity = pattern.num_vars();
            Ok(Chart {
                matrix: pattern.to_poly_matrix(arity, 0),
                pattern,
                absorbed: vec![0, 1],
                moebius,
            })
        }
    }
}

/// The classical determinantal formulation of a real osculating instance,
/// with Gaussian minors split into real and imaginary parts so that the
/// emitted system is rational.
pub fn determinantal_instance(
    spec: &InstanceSpec,
    coords: CoordChoice,
) -> Result<PolySystem<Rational>, SystemsError> {
    if !spec.is_conjugate_stable() {
        return Err(SystemsError::NotConjugateStable);
    }
    let chart = build_chart(spec, coords)?;
    let n = spec.problem.n;
    let moved: Vec<OsculationPoint> =
        spec.points.iter().map(|t| chart.moebius.apply(t)).collect();

    let mut equations: Vec<MultiPoly<Rational>> = Vec::new();
    let mut skip = vec![false; spec.problem.len()];
    for &i in &chart.absorbed {
        skip[i] = true;
    }
    for j in 0..spec.problem.len() {
        if skip[j] {
            continue;
        }
        let alpha = spec.problem.condition(j);
        let t = &moved[j];
        if !t.is_real() {
            // pair with the conjugate slot carrying the same condition and
            // split the minors into real and imaginary parts
            let partner = (0..spec.problem.len()).find(|&l| {
                l != j
                    && !skip[l]
                    && spec.problem.conditions[l] == spec.problem.conditions[j]
                    && moved[l] == t.conjugate()
            });
            let Some(partner) = partner else {
                return Err(SystemsError::NotConjugateStable);
            };
            skip[partner] = true;
        }
        skip[j] = true;
        let basis = osculating_basis(t, n);
        for m in condition_minors(&chart.matrix, &alpha, &basis)? {
            let (re, im) = m.split_real_imag();
            if !re.is_zero() {
                equations.push(re);
            }
            if !im.is_zero() {
                equations.push(im);
            }
        }
    }
    Ok(PolySystem::new(chart.pattern.num_vars(), equations, FormulationTag::Determinantal))
}

/// One variable block of a primal-dual system, with the data needed to
/// convert a k-plane into block coordinates.
#[derive(Debug, Clone)]
pub struct PdBlock {
    /// Condition in the block's own Grassmannian (primal: alpha^1 or a pair;
    /// dual: the associated conditions).
    pub pattern: CoordPattern,
    /// Primal block: parametrization is row-space of (pattern * basis).
    /// Dual block: the point is (basis * pattern) read as columns.
    pub basis: Matrix<GaussianRational>,
    pub var_start: usize,
    pub num_vars: usize,
    pub is_primal: bool,
}

/// A primal-dual system together with its block structure and the variable
/// permutation realizing complex conjugation on solutions (identity when
/// all points are real; swaps paired dual blocks otherwise).
#[derive(Debug, Clone)]
pub struct PdSystem {
    pub system: PolySystem<GaussianRational>,
    pub blocks: Vec<PdBlock>,
    pub conj_swap: Option<Vec<usize>>,
}

/// Basis adapting dual-pattern coordinates to the flag osculating at `t`:
/// the annihilator construction F(t)^{-1}, whose last j columns span the
/// annihilator of F_{n-j}(t). The dual pattern's pivot rows n+1-alpha_j
/// already carry the reversal, so the identity is correct for the standard
/// flag.
fn dual_flag_basis(t: &OsculationPoint, n: usize) -> Matrix<GaussianRational> {
    let f = osculating_basis(t, n);
    f.matrix.inverse().expect("osculating basis is invertible")
}

/// The full primal-dual formulation: coordinates on the first condition's
/// Schubert cell paired bilinearly with dual coordinates for every other
/// condition, giving k(n-k)(m-1) bilinear equations.
pub fn primal_dual_instance(spec: &InstanceSpec) -> Result<PdSystem, SystemsError> {
    let m = spec.problem.len();
    if m < 2 {
        return Err(SystemsError::TooFewConditions(2));
    }
    let k = spec.problem.k;
    let n = spec.problem.n;

    let primal_pattern = pattern_schubert(&spec.problem.condition(0));
    let dual_patterns: Vec<CoordPattern> =
        (1..m).map(|i| pattern_dual(&spec.problem.condition(i).dual())).collect();

    let mut blocks = Vec::with_capacity(m);
    let mut offset = primal_pattern.num_vars();
    let primal_basis = osculating_basis(&spec.points[0], n).matrix;
    blocks.push(PdBlock {
        pattern: primal_pattern.clone(),
        basis: primal_basis.clone(),
        var_start: 0,
        num_vars: primal_pattern.num_vars(),
        is_primal: true,
    });
    for (idx, pat) in dual_patterns.iter().enumerate() {
        let basis = dual_flag_basis(&spec.points[idx + 1], n);
        blocks.push(PdBlock {
            pattern: pat.clone(),
            basis,
            var_start: offset,
            num_vars: pat.num_vars(),
            is_primal: false,
        });
        offset += pat.num_vars();
    }
    let arity = offset;

    // primal parametrization in the standard basis
    let p = poly_mat_mul(
        &primal_pattern.to_poly_matrix::<GaussianRational>(arity, 0),
        &const_mat(&primal_basis, arity),
    );
    let mut equations = Vec::with_capacity(k * (n - k) * (m - 1));
    for b in blocks.iter().skip(1) {
        let d = poly_mat_mul(
            &const_mat(&b.basis, arity),
            &b.pattern.to_poly_matrix::<GaussianRational>(arity, b.var_start),
        );
        let prod = poly_mat_mul(&p, &d);
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                equations.push(prod.at(i, j).clone());
            }
        }
    }

    let conj_swap = conjugation_permutation(spec, &blocks);
    Ok(PdSystem {
        system: PolySystem::new(arity, equations, FormulationTag::PrimalDual),
        blocks,
        conj_swap,
    })
}

/// Variable permutation mirroring conjugation: identity on blocks at real
/// points, swapping blocks whose points are conjugate with equal
/// conditions. None when the primal point is complex.
fn conjugation_permutation(spec: &InstanceSpec, blocks: &[PdBlock]) -> Option<Vec<usize>> {
    if !spec.points[0].is_real() {
        return None;
    }
    let m = blocks.len();
    let mut perm: Vec<usize> = (0..blocks.last().map_or(0, |b| b.var_start + b.num_vars)).collect();
    let mut paired = vec![false; m];
    for i in 1..m {
        if paired[i] || spec.points[i].is_real() {
            continue;
        }
        let conj = spec.points[i].conjugate();
        let j = (1..m).find(|&j| {
            j != i
                && !paired[j]
                && spec.points[j] == conj
                && spec.problem.conditions[j] == spec.problem.conditions[i]
        })?;
        paired[i] = true;
        paired[j] = true;
        for v in 0..blocks[i].num_vars {
            perm[blocks[i].var_start + v] = blocks[j].var_start + v;
            perm[blocks[j].var_start + v] = blocks[i].var_start + v;
        }
    }
    Some(perm)
}

/// Basis adapting dual-pair coordinates to flags osculating at `s` (the
/// pivot side) and `t` (the window side): column r spans the annihilator of
/// F_{r-1}(s) meeting the annihilator of F_{n-r}(t), scaled so its first
/// nonzero coordinate is one. For (0, inf) this is the identity, matching
/// the raw pattern.
fn dual_pair_adapted_basis(
    s: &OsculationPoint,
    t: &OsculationPoint,
    n: usize,
) -> Matrix<GaussianRational> {
    let fs = osculating_basis(s, n);
    let ft = osculating_basis(t, n);
    let mut cols: Vec<Vec<GaussianRational>> = Vec::with_capacity(n);
    for r in 1..=n {
        let mut rows: Vec<Vec<GaussianRational>> = Vec::new();
        if r > 1 {
            let a = fs.slice(r - 1).expect("slice in range");
            for i in 0..a.rows() {
                rows.push(a.row(i).to_vec());
            }
        }
        if n - r > 0 {
            let b = ft.slice(n - r).expect("slice in range");
            for i in 0..b.rows() {
                rows.push(b.row(i).to_vec());
            }
        }
        let stacked = Matrix::from_rows(rows);
        let null = stacked.null_space();
        assert_eq!(null.len(), 1, "flags are not in linear general position");
        let mut v = null[0].clone();
        let lead = v.iter().find(|z| !z.is_zero()).unwrap().clone();
        let inv = lead.inverse().unwrap();
        for z in v.iter_mut() {
            *z = z.clone() * inv.clone();
        }
        cols.push(v);
    }
    Matrix::from_fn(n, n, |i, j| cols[j][i].clone())
}

/// The condensed primal-dual formulation on pair charts: conditions are
/// consumed two at a time, giving k(n-k)(m/2 - 1) bilinear equations. With
/// `hybrid`, leftover hypersurface conditions are imposed as determinants
/// in the primal factor instead of consuming dual blocks.
pub fn primal_dual_half_instance(
    spec: &InstanceSpec,
    hybrid: bool,
) -> Result<PdSystem, SystemsError> {
    if spec.problem.len() < 2 {
        return Err(SystemsError::TooFewConditions(2));
    }
    let k = spec.problem.k;
    let n = spec.problem.n;

    // append a trivial condition at a fresh real point if needed to pair up
    let mut conditions: Vec<SchubertCondition> =
        (0..spec.problem.len()).map(|i| spec.problem.condition(i)).collect();
    let mut points = spec.points.clone();
    let needs_pad = |conds: &[SchubertCondition], hybrid: bool| {
        if hybrid {
            let non_hyp =
                conds.iter().skip(2).filter(|c| c.codim() != 1).count();
            non_hyp % 2 == 1 && conds.iter().skip(2).all(|c| c.codim() != 1)
        } else {
            conds.len() % 2 == 1
        }
    };
    if needs_pad(&conditions, hybrid) {
        conditions.push(SchubertCondition::trivial(k, n));
        points.push(fresh_real_point(&points));
    }

    for idx in [0, 1] {
        if !points[idx].is_real() {
            return Err(SystemsError::ChartPointNotReal(idx));
        }
    }
    let (at_zero, at_inf) =
        if points[0] == OsculationPoint::Infinity { (1, 0) } else { (0, 1) };
    let moebius = Moebius::sending_to_zero_infinity(&points[at_zero], &points[at_inf]);
    let moved: Vec<OsculationPoint> = points.iter().map(|t| moebius.apply(t)).collect();

    let primal_pattern = pattern_pair(&conditions[at_zero], &conditions[at_inf])?;

    // split the remaining conditions into dual-chart pairs and (in hybrid
    // mode) hypersurface determinants in the primal factor
    let rest: Vec<usize> = (2..conditions.len()).collect();
    let (pair_idx, det_idx): (Vec<usize>, Vec<usize>) = if hybrid {
        let (non_hyp, hyp): (Vec<usize>, Vec<usize>) =
            rest.iter().partition(|&&j| conditions[j].codim() != 1);
        let mut pair = non_hyp;
        let mut dets = hyp;
        if pair.len() % 2 == 1 {
            // complete the last dual pair with one hypersurface
            assert!(!dets.is_empty(), "padding ensures a partner exists");
            pair.push(dets.remove(0));
        }
        (pair, dets)
    } else {
        (rest, Vec::new())
    };
    debug_assert!(pair_idx.len() % 2 == 0);

    let mut blocks = Vec::new();
    let mut offset = primal_pattern.num_vars();
    blocks.push(PdBlock {
        pattern: primal_pattern.clone(),
        basis: Matrix::identity(n),
        var_start: 0,
        num_vars: primal_pattern.num_vars(),
        is_primal: true,
    });
    for pair in pair_idx.chunks(2) {
        let (a, b) = (pair[0], pair[1]);
        let pat = pattern_dual_pair(&conditions[a].dual(), &conditions[b].dual())?;
        let basis = dual_pair_adapted_basis(&moved[a], &moved[b], n);
        let num_vars = pat.num_vars();
        blocks.push(PdBlock {
            pattern: pat,
            basis,
            var_start: offset,
            num_vars,
            is_primal: false,
        });
        offset += num_vars;
    }
    let arity = offset;

    let p = primal_pattern.to_poly_matrix::<GaussianRational>(arity, 0);
    let mut equations = Vec::new();
    for b in blocks.iter().skip(1) {
        let d = poly_mat_mul(
            &const_mat(&b.basis, arity),
            &b.pattern.to_poly_matrix::<GaussianRational>(arity, b.var_start),
        );
        let prod = poly_mat_mul(&p, &d);
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                equations.push(prod.at(i, j).clone());
            }
        }
    }
    // hypersurface determinants in the primal factor
    for &h in &det_idx {
        let basis = osculating_basis(&moved[h], n);
        let slice = basis.slice(n - k)?;
        let stack = p.stack(&const_mat(&slice, arity));
        equations.push(stack.det_cofactor().expect("square stack"));
    }

    let all_real = points.iter().all(|t| t.is_real());
    let conj_swap = all_real.then(|| (0..arity).collect());
    Ok(PdSystem {
        system: PolySystem::new(arity, equations, FormulationTag::PrimalDualHalf),
        blocks,
        conj_swap,
    })
}

/// Express a k-plane (rows of `h`, standard coordinates) in a primal
/// block's chart: normalize h * basis^{-1} to the pattern's pivot
/// structure and read off the variables.
pub fn fit_primal_block(
    block: &PdBlock,
    h: &Matrix<GaussianRational>,
) -> Result<Vec<GaussianRational>, GeometryError> {
    let inv = block.basis.inverse().expect("block basis is invertible");
    let m0 = h.mul(&inv);
    let piv = block.pattern.pivot_col_by_row();
    let rows: Vec<usize> = (0..m0.rows()).collect();
    let p = m0.submatrix(&rows, &piv);
    let p_inv = p.inverse().map_err(|_| GeometryError::NotInChart)?;
    let normalized = p_inv.mul(&m0);
    block.pattern.read_values(&normalized)
}

/// Express the annihilator of a k-plane in a dual block's chart: columns of
/// `d` span the dual point in standard dual coordinates.
pub fn fit_dual_block(
    block: &PdBlock,
    d: &Matrix<GaussianRational>,
) -> Result<Vec<GaussianRational>, GeometryError> {
    let inv = block.basis.inverse().expect("block basis is invertible");
    let w = inv.mul(d);
    let piv = block.pattern.pivot_row_by_col();
    let cols: Vec<usize> = (0..w.cols()).collect();
    let r = w.submatrix(&piv, &cols);
    let r_inv = r.inverse().map_err(|_| GeometryError::NotInChart)?;
    let normalized = w.mul(&r_inv);
    block.pattern.read_values(&normalized)
}

/// Coordinates of the full primal-dual point lying over the k-plane `h`
/// (given by k rows in standard coordinates). Fails when `h` or its
/// annihilator misses one of the charts.
pub fn embed_solution(
    pd: &PdSystem,
    h: &Matrix<GaussianRational>,
) -> Result<Vec<GaussianRational>, GeometryError> {
    let n = h.cols();
    let null = h.null_space();
    let d = Matrix::from_fn(n, null.len(), |i, j| null[j][i].clone());
    let mut out = vec![GaussianRational::zero(); pd.system.num_vars()];
    for block in &pd.blocks {
        let vals = if block.is_primal {
            fit_primal_block(block, h)?
        } else {
            fit_dual_block(block, &d)?
        };
        for (v, value) in vals.into_iter().enumerate() {
            out[block.var_start + v] = value;
        }
    }
    Ok(out)
}

/// Smallest nonnegative integer point distinct from all existing points.
fn fresh_real_point(points: &[OsculationPoint]) -> OsculationPoint {
    let mut c: i64 = 0;
    loop {
        let cand = OsculationPoint::rational(crate::algebra::rat_int(c));
        if points.iter().all(|p| p != &cand) {
            return cand;
        }
        c += 1;
    }
}
