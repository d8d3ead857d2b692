//! Floating-point Newton iteration and alpha-number certification for
//! square systems, plus realness and distinctness classification of
//! approximate solutions.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{GaussianRational, MultiPoly, UniPoly};
use crate::systems::{PdSystem, PolySystem};

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("system is not square ({eqs} equations, {vars} variables)")]
    NotSquare { eqs: usize, vars: usize },
    #[error("Jacobian is singular at the point")]
    SingularJacobian,
    #[error("point dimension does not match the system")]
    DimensionMismatch,
    #[error("classification requires certified points")]
    Uncertified,
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
}

/// Certification threshold (13 - 3 sqrt(17)) / 4.
pub fn alpha_threshold() -> f64 {
    (13.0 - 3.0 * 17f64.sqrt()) / 4.0
}

/// Complex double constructor, re-exported so downstream crates need not
/// depend on the complex-number crate directly.
pub fn complex(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A point of complex affine space aligned with a system's variable order.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericPoint(pub Vec<Complex64>);

impl NumericPoint {
    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn dist(&self, other: &NumericPoint) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Result of the alpha test at a point.
#[derive(Debug, Clone, Serialize)]
pub struct CertifyReport {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub certified: bool,
    /// Residual norms along the Newton refinement.
    pub iterations: Vec<f64>,
    /// Residuals roughly square each step.
    pub quadratic: bool,
}

fn to_c64(z: &GaussianRational) -> Complex64 {
    let (re, im) = z.to_f64_pair();
    Complex64::new(re, im)
}

fn eval_poly(p: &MultiPoly<GaussianRational>, x: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, c) in p.terms() {
        let mut t = to_c64(c);
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                t *= x[i];
            }
        }
        acc += t;
    }
    acc
}

/// A square system prepared for numeric work: equations and all their first
/// partials.
pub struct NumericSystem {
    pub equations: Vec<MultiPoly<GaussianRational>>,
    pub jacobian: Vec<Vec<MultiPoly<GaussianRational>>>,
    pub num_vars: usize,
    pub max_degree: u32,
}

impl NumericSystem {
    pub fn new(system: &PolySystem<GaussianRational>) -> Result<Self, CertifyError> {
        let num_vars = system.num_vars();
        if system.equations.len() != num_vars {
            return Err(CertifyError::NotSquare {
                eqs: system.equations.len(),
                vars: num_vars,
            });
        }
        let jacobian = system
            .equations
            .iter()
            .map(|e| (0..num_vars).map(|v| e.derivative(v)).collect())
            .collect();
        let max_degree =
            system.equations.iter().filter_map(|e| e.total_degree()).max().unwrap_or(0);
        Ok(NumericSystem { equations: system.equations.clone(), jacobian, num_vars, max_degree })
    }

    pub fn residual(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.equations.iter().map(|e| eval_poly(e, x)).collect()
    }

    pub fn residual_norm(&self, x: &[Complex64]) -> f64 {
        self.residual(x).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Jacobian matrix evaluated entrywise at `x`.
    pub fn jacobian_at(&self, x: &[Complex64]) -> Vec<Vec<Complex64>> {
        self.jacobian
            .iter()
            .map(|row| row.iter().map(|p| eval_poly(p, x)).collect())
            .collect()
    }
}

/// Solve A z = b by LU with partial pivoting; None when A is singular to
/// working precision.
fn solve_linear(a: &[Vec<Complex64>], b: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = b.len();
    let mut m: Vec<Vec<Complex64>> = a.to_vec();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                m[i][col].norm().partial_cmp(&m[j][col].norm()).unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap();
        if m[pivot][col].norm() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in (col + 1)..n {
            let factor = m[row][col] / m[col][col];
            for j in col..n {
                let delta = factor * m[col][j];
                m[row][j] -= delta;
            }
            let delta = factor * rhs[col];
            rhs[row] -= delta;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for j in (row + 1)..n {
            acc -= m[row][j] * x[j];
        }
        x[row] = acc / m[row][row];
    }
    Some(x)
}

/// Full inverse via LU solves against the identity.
fn invert(a: &[Vec<Complex64>]) -> Option<Vec<Vec<Complex64>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[j] = Complex64::new(1.0, 0.0);
        cols.push(solve_linear(a, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
}

fn frobenius(m: &[Vec<Complex64>]) -> f64 {
    m.iter().flat_map(|r| r.iter()).map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Newton refinement: returns the iterates (including the start) and the
/// residual norms at each.
pub fn newton_iterate(
    sys: &NumericSystem,
    start: &NumericPoint,
    steps: usize,
) -> Result<(Vec<NumericPoint>, Vec<f64>), CertifyError> {
    if start.0.len() != sys.num_vars {
        return Err(CertifyError::DimensionMismatch);
    }
    let mut points = vec![start.clone()];
    let mut residuals = vec![sys.residual_norm(&start.0)];
    let mut x = start.0.clone();
    for _ in 0..steps {
        let jac = sys.jacobian_at(&x);
        let res = sys.residual(&x);
        let delta = solve_linear(&jac, &res).ok_or(CertifyError::SingularJacobian)?;
        for i in 0..x.len() {
            x[i] -= delta[i];
        }
        points.push(NumericPoint(x.clone()));
        residuals.push(sys.residual_norm(&x));
    }
    Ok((points, residuals))
}

/// Frobenius norm of the order-l derivative tensor of the system at x,
/// divided by l!. Mixed partials commute, so only non-decreasing index
/// tuples are computed, each weighted by its number of orderings.
fn derivative_tensor_norm(sys: &NumericSystem, x: &[Complex64], order: u32) -> f64 {
    fn rec(
        polys: &[MultiPoly<GaussianRational>],
        x: &[Complex64],
        remaining: u32,
        start: usize,
        counts: &mut Vec<(usize, usize)>,
        acc: &mut f64,
    ) {
        if remaining == 0 {
            let total: usize = counts.iter().map(|&(_, c)| c).sum();
            let mut orderings = 1.0;
            for i in 2..=total {
                orderings *= i as f64;
            }
            for &(_, c) in counts.iter() {
                for i in 2..=c {
                    orderings /= i as f64;
                }
            }
            for p in polys {
                *acc += orderings * eval_poly(p, x).norm_sqr();
            }
            return;
        }
        for var in start..x.len() {
            let derived: Vec<MultiPoly<GaussianRational>> =
                polys.iter().map(|p| p.derivative(var)).collect();
            if derived.iter().all(|p| p.is_zero()) {
                continue;
            }
            match counts.last_mut() {
                Some((v, c)) if *v == var => *c += 1,
                _ => counts.push((var, 1)),
            }
            rec(&derived, x, remaining - 1, var, counts, acc);
            match counts.last_mut() {
                Some((v, c)) if *v == var && *c > 1 => *c -= 1,
                _ => {
                    counts.pop();
                }
            }
        }
    }
    let mut sum = 0.0;
    rec(&sys.equations, x, order, 0, &mut Vec::new(), &mut sum);
    let mut fact = 1.0;
    for l in 2..=order {
        fact *= l as f64;
    }
    sum.sqrt() / fact
}

/// The alpha test at a point: beta = |J^{-1} E(x)|, gamma bounded through
/// Frobenius norms of J^{-1} and the higher derivative tensors (exact for
/// bilinear systems, an upper bound beyond), alpha = beta * gamma.
pub fn alpha_number(sys: &NumericSystem, x: &NumericPoint) -> Result<CertifyReport, CertifyError> {
    if x.0.len() != sys.num_vars {
        return Err(CertifyError::DimensionMismatch);
    }
    let jac = sys.jacobian_at(&x.0);
    let res = sys.residual(&x.0);
    let newton_step = solve_linear(&jac, &res).ok_or(CertifyError::SingularJacobian)?;
    let beta = newton_step.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let jinv = invert(&jac).ok_or(CertifyError::SingularJacobian)?;
    let jinv_norm = frobenius(&jinv);
    let mut gamma: f64 = 0.0;
    for order in 2..=sys.max_degree.max(2) {
        let tensor = derivative_tensor_norm(sys, &x.0, order);
        if tensor == 0.0 {
            continue;
        }
        let bound = (jinv_norm * tensor).powf(1.0 / (order as f64 - 1.0));
        gamma = gamma.max(bound);
    }
    let alpha = beta * gamma;
    let certified = alpha < alpha_threshold();
    Ok(CertifyReport {
        alpha,
        beta,
        gamma,
        certified,
        iterations: vec![sys.residual_norm(&x.0)],
        quadratic: false,
    })
}

/// Certify and then watch the Newton residuals for the doubling behavior.
pub fn certify_with_refinement(
    sys: &NumericSystem,
    x: &NumericPoint,
    steps: usize,
) -> Result<CertifyReport, CertifyError> {
    let mut report = alpha_number(sys, x)?;
    let (_, residuals) = newton_iterate(sys, x, steps)?;
    // quadratic convergence surrogate: log residual at least doubles per
    // step (with one decade of slack) until roundoff
    let mut quadratic = true;
    for w in residuals.windows(2) {
        let (r0, r1) = (w[0], w[1]);
        if r0 < 1e-13 || r1 < 1e-13 {
            break;
        }
        if r1.log10() > 2.0 * r0.log10() + 1.0 {
            quadratic = false;
        }
    }
    report.iterations = residuals;
    report.quadratic = quadratic;
    Ok(report)
}

/// Realness and distinctness of a batch of certified points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub real_count: usize,
    pub distinct_count: usize,
}

/// Classify certified points. `conj_perm` is the variable permutation
/// realizing the system's real structure (identity for a real-coefficient
/// system): a point is real when conjugating coordinatewise and permuting
/// lands back on the same associated solution (within touching 2-beta
/// balls). Distinctness separates points by more than 4 max(beta).
pub fn classify(
    sys: &NumericSystem,
    points: &[(NumericPoint, CertifyReport)],
    conj_perm: &[usize],
) -> Result<Classification, CertifyError> {
    if points.iter().any(|(_, r)| !r.certified) {
        return Err(CertifyError::Uncertified);
    }
    // refine everything a few steps so the 2-beta balls are tight
    let refined: Vec<(NumericPoint, f64)> = points
        .iter()
        .map(|(p, r)| {
            let (pts, _) = newton_iterate(sys, p, 4)?;
            Ok((pts.last().unwrap().clone(), r.beta))
        })
        .collect::<Result<_, CertifyError>>()?;
    // distinctness
    let mut representatives: Vec<usize> = Vec::new();
    for i in 0..refined.len() {
        let dup = representatives.iter().any(|&j| {
            let sep = refined[i].0.dist(&refined[j].0);
            sep <= 4.0 * refined[i].1.max(refined[j].1).max(1e-12)
        });
        if !dup {
            representatives.push(i);
        }
    }
    // realness via the conjugation structure
    let mut real_count = 0;
    for &i in &representatives {
        let (p, beta) = &refined[i];
        let conj = NumericPoint(
            (0..p.0.len()).map(|v| p.0[conj_perm[v]].conj()).collect(),
        );
        let (pts, _) = newton_iterate(sys, &conj, 4)?;
        let limit = pts.last().unwrap();
        if limit.dist(p) <= 4.0 * beta.max(1e-9) {
            real_count += 1;
        }
    }
    Ok(Classification { real_count, distinct_count: representatives.len() })
}

/// Numeric solution points of a system solved into shape form: roots of
/// the eliminant with the coordinate functions evaluated at each, mapped
/// back to the original variable order (undoing any fallback permutation
/// or shear of the first variable).
pub fn shape_solutions(report: &crate::solver::ShapeReport) -> Option<Vec<NumericPoint>> {
    if !report.in_shape {
        return None;
    }
    let coords = report.coordinates.as_ref()?;
    let q = coords.len() + 1;
    let roots = unipoly_roots(&report.eliminant);
    let mut out = Vec::with_capacity(roots.len());
    for r in roots {
        let mut working = vec![r];
        for g in coords {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in g.coeffs().iter().rev() {
                acc = acc * r + Complex64::new(c.to_f64().unwrap_or(0.0), 0.0);
            }
            working.push(acc);
        }
        // undo the shear x1 -> x1 + sum c_j x_j
        if let Some(shears) = &report.linear_change {
            let mut x1 = working[0];
            for (j, c) in shears.iter().enumerate() {
                x1 -= Complex64::new(c.to_f64().unwrap_or(0.0), 0.0) * working[j + 1];
            }
            working[0] = x1;
        }
        // undo the variable permutation
        let point = match &report.permutation_used {
            None => working,
            Some(perm) => {
                let mut original = vec![Complex64::new(0.0, 0.0); q];
                for (new, &old) in perm.iter().enumerate() {
                    original[old] = working[new];
                }
                original
            }
        };
        out.push(NumericPoint(point));
    }
    Some(out)
}

/// Instantiate a coordinate pattern numerically at the given variable
/// values, producing the chart matrix rows.
pub fn instantiate_pattern(
    pattern: &crate::geometry::CoordPattern,
    values: &[Complex64],
) -> Vec<Vec<Complex64>> {
    use crate::geometry::Entry;
    (0..pattern.rows)
        .map(|i| {
            (0..pattern.cols)
                .map(|j| match pattern.at(i, j) {
                    Entry::Zero => Complex64::new(0.0, 0.0),
                    Entry::One => Complex64::new(1.0, 0.0),
                    Entry::Var(v) => values[v],
                })
                .collect()
        })
        .collect()
}

/// All complex roots of a univariate polynomial by Durand-Kerner iteration
/// (degrees here are small).
pub fn unipoly_roots(f: &UniPoly<crate::algebra::Rational>) -> Vec<Complex64> {
    let deg = match f.degree() {
        None | Some(0) => return vec![],
        Some(d) => d,
    };
    let lc = f.leading_coeff().unwrap().to_f64().unwrap_or(1.0);
    let coeffs: Vec<Complex64> = f
        .coeffs()
        .iter()
        .map(|c| Complex64::new(c.to_f64().unwrap_or(0.0) / lc, 0.0))
        .collect();
    let eval = |z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    // starting points on a slightly irrational spiral
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|i| Complex64::from_polar(1.0 + 0.3 * i as f64 / deg as f64, 0.97 + 2.4 * i as f64))
        .collect();
    for _ in 0..200 {
        let mut max_step: f64 = 0.0;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 {
            break;
        }
    }
    roots
}

/// Numeric chart fitting: express the k-plane spanned by the rows of `h`
/// in each block of a primal-dual system, mirroring the exact
/// `systems::embed_solution` in floating point.
pub fn embed_numeric(pd: &PdSystem, h: &[Vec<Complex64>]) -> Result<NumericPoint, CertifyError> {
    let n = h.first().map(|r| r.len()).ok_or(CertifyError::DimensionMismatch)?;
    let k = h.len();
    // complex null space of h via column-pivoted elimination
    let d = numeric_null_space(h, n, k);
    let mut coords = vec![Complex64::new(0.0, 0.0); pd.system.num_vars()];
    for block in &pd.blocks {
        let basis_c: Vec<Vec<Complex64>> = (0..block.basis.rows())
            .map(|i| (0..block.basis.cols()).map(|j| to_c64(block.basis.at(i, j))).collect())
            .collect();
        if block.is_primal {
            // m0 = h * basis^{-1}, then normalize on the pivot columns
            let binv = invert(&basis_c).ok_or(CertifyError::SingularJacobian)?;
            let m0 = mat_mul(h, &binv);
            let piv = block.pattern.pivot_col_by_row();
            let p: Vec<Vec<Complex64>> =
                (0..k).map(|i| piv.iter().map(|&j| m0[i][j]).collect()).collect();
            let pinv = invert(&p).ok_or(CertifyError::SingularJacobian)?;
            let normalized = mat_mul(&pinv, &m0);
            read_numeric(block, &normalized, &mut coords);
        } else {
            let binv = invert(&basis_c).ok_or(CertifyError::SingularJacobian)?;
            let w = mat_mul(&binv, &d);
            let piv = block.pattern.pivot_row_by_col();
            let r: Vec<Vec<Complex64>> =
                piv.iter().map(|&i| w[i].clone()).collect();
            let rinv = invert(&r).ok_or(CertifyError::SingularJacobian)?;
            let normalized = mat_mul(&w, &rinv);
            read_numeric(block, &normalized, &mut coords);
        }
    }
    Ok(NumericPoint(coords))
}

fn mat_mul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let rows = a.len();
    let inner = b.len();
    let cols = b[0].len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); cols]; rows];
    for i in 0..rows {
        for l in 0..inner {
            for j in 0..cols {
                out[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    out
}

fn read_numeric(
    block: &crate::systems::PdBlock,
    normalized: &[Vec<Complex64>],
    coords: &mut [Complex64],
) {
    for (v, (i, j)) in block.pattern.var_positions().into_iter().enumerate() {
        coords[block.var_start + v] = normalized[i][j];
    }
}

/// Orthonormal-ish basis of the right null space of a k x n complex matrix,
/// returned as an n x (n-k) column matrix.
fn numeric_null_space(h: &[Vec<Complex64>], n: usize, k: usize) -> Vec<Vec<Complex64>> {
    // Gaussian elimination with column pivoting
    let mut m: Vec<Vec<Complex64>> = h.to_vec();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for _ in 0..n {
        if row >= k {
            break;
        }
        // choose the largest entry among unused columns in this row block
        let mut best: Option<(usize, f64)> = None;
        for col in 0..n {
            if pivot_cols.contains(&col) {
                continue;
            }
            let mag = (row..k).map(|r| m[r][col].norm()).fold(0.0, f64::max);
            if best.map_or(true, |(_, bm)| mag > bm) {
                best = Some((col, mag));
            }
        }
        let (col, mag) = best.unwrap();
        if mag < 1e-12 {
            break;
        }
        let prow = (row..k).max_by(|&a, &b| {
            m[a][col].norm().partial_cmp(&m[b][col].norm()).unwrap()
        })
        .unwrap();
        m.swap(row, prow);
        let inv = Complex64::new(1.0, 0.0) / m[row][col];
        for j in 0..n {
            m[row][j] *= inv;
        }
        for r in 0..k {
            if r != row {
                let factor = m[r][col];
                for j in 0..n {
                    let delta = factor * m[row][j];
                    m[r][j] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    for &fc in &free {
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[fc] = Complex64::new(1.0, 0.0);
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[r][fc];
        }
        cols.push(v);
    }
    // transpose into an n x (n-k) column-matrix layout
    (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat_int};
    use crate::systems::FormulationTag;

    fn simple_system(texts: &[&str], arity: usize) -> NumericSystem {
        let eqs = texts
            .iter()
            .map(|t| parse_poly(t, arity).unwrap().to_gaussian())
            .collect();
        NumericSystem::new(&PolySystem::new(arity, eqs, FormulationTag::Determinantal)).unwrap()
    }

    #[test]
    fn jacobian_matches_example() {
        // E = (x^2 - 2) at x = 1.5: J = [3.0]
        let sys = simple_system(&["x1^2 - 2"], 1);
        let j = sys.jacobian_at(&[Complex64::new(1.5, 0.0)]);
        assert!((j[0][0] - Complex64::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let mut state: u64 = 7;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64 / 2f64.powi(31)) - 1.0
        };
        for _ in 0..50 {
            // random bilinear system in 3 variables
            let a: Vec<i64> = (0..9).map(|_| (next() * 5.0) as i64).collect();
            let eqs: Vec<String> = (0..3)
                .map(|e| {
                    format!(
                        "{}*x1*x2 + {}*x2*x3 + {}*x1 - 1",
                        a[3 * e] + 2,
                        a[3 * e + 1] + 1,
                        a[3 * e + 2] + 3
                    )
                })
                .collect();
            let texts: Vec<&str> = eqs.iter().map(|s| s.as_str()).collect();
            let sys = simple_system(&texts, 3);
            let x: Vec<Complex64> =
                (0..3).map(|_| Complex64::new(next(), next())).collect();
            let jac = sys.jacobian_at(&x);
            let h = 1e-6;
            for v in 0..3 {
                let mut xp = x.clone();
                xp[v] += Complex64::new(h, 0.0);
                let mut xm = x.clone();
                xm[v] -= Complex64::new(h, 0.0);
                let fp = sys.residual(&xp);
                let fm = sys.residual(&xm);
                for e in 0..3 {
                    let fd = (fp[e] - fm[e]) / Complex64::new(2.0 * h, 0.0);
                    let denom = jac[e][v].norm().max(1.0);
                    assert!(
                        (fd - jac[e][v]).norm() / denom < 1e-5,
                        "entry ({e},{v}): {fd} vs {}",
                        jac[e][v]
                    );
                }
            }
        }
    }

    #[test]
    fn newton_on_square_root_of_two() {
        let sys = simple_system(&["x1^2 - 2"], 1);
        let start = NumericPoint(vec![Complex64::new(1.5, 0.0)]);
        let (points, residuals) = newton_iterate(&sys, &start, 3).unwrap();
        // first iterate is 17/12
        assert!((points[1].0[0].re - 17.0 / 12.0).abs() < 1e-12);
        assert!(residuals.last().unwrap() < &1e-10);
        // a fixed point stays fixed
        let root = NumericPoint(vec![Complex64::new(2f64.sqrt(), 0.0)]);
        let (pts, _) = newton_iterate(&sys, &root, 2).unwrap();
        assert!(pts[2].dist(&root) < 1e-12);
    }

    #[test]
    fn alpha_certifies_near_roots_and_rejects_far_points() {
        let sys = simple_system(&["x1^2 - 2"], 1);
        let near = NumericPoint(vec![Complex64::new(2f64.sqrt() + 1e-8, 0.0)]);
        let report = alpha_number(&sys, &near).unwrap();
        assert!(report.certified);
        assert!(report.alpha < alpha_threshold());
        // exact root: beta = 0
        let exact = NumericPoint(vec![Complex64::new(2f64.sqrt(), 0.0)]);
        let report = alpha_number(&sys, &exact).unwrap();
        assert!(report.beta < 1e-14);
        assert!(report.certified);
        // far-off points mostly fail (reported, not a theorem)
        let mut rejected = 0;
        for i in 0..20 {
            let p = NumericPoint(vec![Complex64::new(5.0 + i as f64, 3.0)]);
            if !alpha_number(&sys, &p).unwrap().certified {
                rejected += 1;
            }
        }
        assert!(rejected >= 18);
    }

    #[test]
    fn durand_kerner_roots() {
        let f = UniPoly::from_coeffs(vec![rat_int(-2), rat_int(0), rat_int(1)]);
        let mut roots = unipoly_roots(&f);
        roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((roots[0].re + 2f64.sqrt()).abs() < 1e-10);
        assert!((roots[1].re - 2f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn classify_deduplicates() {
        let sys = simple_system(&["x1^2 - 2"], 1);
        let p = NumericPoint(vec![Complex64::new(2f64.sqrt() + 1e-9, 0.0)]);
        let r = alpha_number(&sys, &p).unwrap();
        let pts = vec![(p.clone(), r.clone()), (p, r)];
        let c = classify(&sys, &pts, &[0]).unwrap();
        assert_eq!(c.distinct_count, 1);
        assert_eq!(c.real_count, 1);
    }

    /// Full pipeline on the problem of four lines: symbolic solutions seed
    /// Newton on the 12-equation primal-dual system, certify, and classify.
    fn four_lines_pipeline(points: Vec<crate::geometry::OsculationPoint>) -> (usize, usize) {
        use crate::combinatorics::{SchubertCondition, SchubertProblem};
        use crate::solver::{solve_system, SolveBudget};
        use crate::systems::{
            determinantal_chart, determinantal_instance, primal_dual_instance, CoordChoice,
            InstanceSpec,
        };
        let problem =
            SchubertProblem::new(vec![SchubertCondition::hypersurface(2, 4); 4]).unwrap();
        let spec = InstanceSpec::new(problem, points).unwrap();
        let det_sys = determinantal_instance(&spec, CoordChoice::Pair).unwrap();
        let res = solve_system(&det_sys, &SolveBudget::default()).unwrap();
        let chart = determinantal_chart(&spec, CoordChoice::Pair).unwrap();
        assert_eq!(chart.moebius, crate::geometry::Moebius::identity());
        let pd = primal_dual_instance(&spec).unwrap();
        let nsys = NumericSystem::new(&pd.system).unwrap();
        let mut certified = Vec::new();
        for sol in shape_solutions(&res.shape).unwrap() {
            let h = instantiate_pattern(&chart.pattern, &sol.0);
            let seed = embed_numeric(&pd, &h).unwrap();
            let report = certify_with_refinement(&nsys, &seed, 3).unwrap();
            assert!(report.certified, "alpha = {}", report.alpha);
            // primal coordinates of the refined point match the seed
            let (pts, _) = newton_iterate(&nsys, &seed, 3).unwrap();
            let refined = pts.last().unwrap();
            let primal = &pd.blocks[0];
            for v in primal.var_start..primal.var_start + primal.num_vars {
                assert!((refined.0[v] - seed.0[v]).norm() < 1e-8);
            }
            certified.push((seed, report));
        }
        let perm = pd.conj_swap.clone().unwrap();
        let c = classify(&nsys, &certified, &perm).unwrap();
        (res.real_count, c.real_count)
    }

    #[test]
    fn four_lines_all_real_certification() {
        use crate::algebra::rat_int;
        use crate::geometry::OsculationPoint;
        let (symbolic, numeric) = four_lines_pipeline(vec![
            OsculationPoint::Infinity,
            OsculationPoint::rational(rat_int(0)),
            OsculationPoint::rational(rat_int(1)),
            OsculationPoint::rational(rat_int(2)),
        ]);
        assert_eq!(symbolic, 2);
        assert_eq!(numeric, 2);
    }

    #[test]
    fn four_lines_conjugate_pair_certification() {
        use crate::algebra::{gaussian, rat_int};
        use crate::geometry::OsculationPoint;
        let (symbolic, numeric) = four_lines_pipeline(vec![
            OsculationPoint::Infinity,
            OsculationPoint::rational(rat_int(0)),
            OsculationPoint::Finite(gaussian(0, 1, 1, 1)),
            OsculationPoint::Finite(gaussian(0, 1, -1, 1)),
        ]);
        assert_eq!(symbolic, 0);
        assert_eq!(numeric, 0);
    }
}
