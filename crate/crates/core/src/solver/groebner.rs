//! Buchberger's algorithm for reduced lexicographic Groebner bases over the
//! rationals, with the normal selection strategy and both skip criteria.

use std::time::Instant;


use crate::algebra::{Monomial, MultiPoly, Rational};

use super::{SolveBudget, SolverError};

/// A reduced lexicographic Groebner basis (variable order of the source
/// system; the first variable is minimal). Generators are primitive over
/// the integers and sorted by increasing initial term.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub generators: Vec<MultiPoly<Rational>>,
    pub arity: usize,
}

/// Fully reduce `p` modulo `basis`: no term of the result is divisible by
/// any initial term of the basis.
pub fn normal_form(p: &MultiPoly<Rational>, basis: &[MultiPoly<Rational>]) -> MultiPoly<Rational> {
    let arity = p.arity();
    let mut rest = p.clone();
    let mut result = MultiPoly::zero(arity);
    'outer: while let Some((lm, lc)) = rest.leading_term() {
        let lm = lm.clone();
        let lc = lc.clone();
        for g in basis {
            let (gm, gc) = g.leading_term().expect("basis polynomials are nonzero");
            if gm.divides(&lm) {
                let q = gm.quotient(&lm);
                let factor = lc.clone() / gc.clone();
                rest = rest - g.mul_monomial(&q, &factor);
                continue 'outer;
            }
        }
        // leading term is irreducible; move it to the result
        result.add_term(lm.clone(), lc.clone());
        rest.add_term(lm, -lc);
    }
    result
}

fn s_polynomial(f: &MultiPoly<Rational>, g: &MultiPoly<Rational>) -> MultiPoly<Rational> {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let lcm = fm.lcm(gm);
    let qf = fm.quotient(&lcm);
    let qg = gm.quotient(&lcm);
    f.mul_monomial(&qf, &(Rational::from(num_bigint::BigInt::from(1)) / fc.clone()))
        - g.mul_monomial(&qg, &(Rational::from(num_bigint::BigInt::from(1)) / gc.clone()))
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// first), the coprimality criterion, and the chain criterion. Generators
/// are normalized to integer-primitive form after each reduction.
pub fn buchberger(
    input: &[MultiPoly<Rational>],
    budget: &SolveBudget,
) -> Result<GroebnerBasis, SolverError> {
    let arity = input.first().map_or(0, |p| p.arity());
    let start = Instant::now();
    let mut basis: Vec<MultiPoly<Rational>> = input
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.integer_primitive())
        .collect();
    if basis.is_empty() {
        return Ok(GroebnerBasis { generators: vec![], arity });
    }

    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();
    let mut dead: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push(pair_entry(&basis, i, j));
        }
    }
    let mut processed: usize = 0;
    while !pairs.is_empty() {
        processed += 1;
        if processed > budget.max_pairs {
            return Err(SolverError::BudgetExceeded("generator-pair limit".into()));
        }
        if let Some(limit) = budget.wall_secs {
            if start.elapsed().as_secs_f64() > limit {
                return Err(SolverError::BudgetExceeded("wall-clock limit".into()));
            }
        }
        // normal strategy: smallest lcm in the term order
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.2.cmp(&b.2))
            .map(|(idx, _)| idx)
            .unwrap();
        let (i, j, lcm) = pairs.swap_remove(best);
        dead.push((i.min(j), i.max(j)));

        let (fm, _) = basis[i].leading_term().unwrap();
        let (gm, _) = basis[j].leading_term().unwrap();
        // coprimality criterion
        if fm.is_coprime_with(gm) {
            continue;
        }
        // chain criterion: some other initial term divides the lcm and both
        // companion pairs were already treated
        let chain = (0..basis.len()).any(|l| {
            if l == i || l == j {
                return false;
            }
            let (lm, _) = basis[l].leading_term().unwrap();
            lm.divides(&lcm)
                && dead.contains(&(i.min(l), i.max(l)))
                && dead.contains(&(j.min(l), j.max(l)))
        });
        if chain {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j]);
        let r = normal_form(&s, &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.integer_primitive();
        let new_idx = basis.len();
        basis.push(r);
        for l in 0..new_idx {
            pairs.push(pair_entry(&basis, l, new_idx));
        }
    }

    Ok(GroebnerBasis { generators: reduce_basis(basis), arity })
}

fn pair_entry(basis: &[MultiPoly<Rational>], i: usize, j: usize) -> (usize, usize, Monomial) {
    let (fm, _) = basis[i].leading_term().unwrap();
    let (gm, _) = basis[j].leading_term().unwrap();
    (i, j, fm.lcm(gm))
}

/// Minimize (drop generators whose initial term is divisible by another's)
/// then tail-reduce each generator against the rest.
fn reduce_basis(mut basis: Vec<MultiPoly<Rational>>) -> Vec<MultiPoly<Rational>> {
    // minimize
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (mi, _) = basis[i].leading_term().unwrap();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (mj, _) = basis[j].leading_term().unwrap();
            if mj.divides(mi) && (mi != mj || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<MultiPoly<Rational>> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    // tail-reduce
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MultiPoly<Rational>> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        let r = normal_form(&minimal[i], &others);
        reduced.push(r.integer_primitive());
    }
    reduced.sort_by(|a, b| {
        a.leading_term().unwrap().0.cmp(b.leading_term().unwrap().0)
    });
    reduced
}

impl GroebnerBasis {
    pub fn is_trivial(&self) -> bool {
        self.generators.iter().any(|g| g.total_degree() == Some(0))
    }

    /// All S-polynomials reduce to zero (the Buchberger criterion).
    pub fn verify(&self) -> bool {
        for i in 0..self.generators.len() {
            for j in (i + 1)..self.generators.len() {
                let s = s_polynomial(&self.generators[i], &self.generators[j]);
                if !normal_form(&s, &self.generators).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced basis check: no initial term divides any term of another
    /// generator.
    pub fn is_reduced(&self) -> bool {
        for (i, g) in self.generators.iter().enumerate() {
            for (j, h) in self.generators.iter().enumerate() {
                if i == j {
                    continue;
                }
                let (hm, _) = h.leading_term().unwrap();
                if g.terms().any(|(m, _)| hm.divides(m)) {
                    return false;
                }
            }
        }
        true
    }

    /// Pure-power degree bound per variable when the ideal is
    /// zero-dimensional; None if some variable has no pure-power initial
    /// term.
    fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        let mut bounds = vec![None; self.arity];
        if self.is_trivial() {
            return Some(vec![0; self.arity]);
        }
        for g in &self.generators {
            let (m, _) = g.leading_term().unwrap();
            if let Some((var, exp)) = m.as_pure_power() {
                let slot: &mut Option<u32> = &mut bounds[var];
                *slot = Some(slot.map_or(exp, |e: u32| e.min(exp)));
            }
        }
        bounds.into_iter().collect()
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.pure_power_bounds().is_some()
    }

    /// Number of standard monomials of the initial ideal: the degree of a
    /// zero-dimensional ideal (complex count with multiplicity).
    pub fn ideal_degree(&self) -> Result<usize, SolverError> {
        let bounds = self.pure_power_bounds().ok_or(SolverError::NotZeroDimensional)?;
        if self.is_trivial() {
            return Ok(0);
        }
        let initials: Vec<Monomial> = self
            .generators
            .iter()
            .map(|g| g.leading_term().unwrap().0.clone())
            .collect();
        // enumerate exponent tuples below the pure-power box
        let mut count = 0usize;
        let mut exp = vec![0u32; self.arity];
        loop {
            let standard = !initials.iter().any(|m| m.divides(&Monomial(exp.clone())));
            if standard {
                count += 1;
            }
            // increment odometer
            let mut i = 0;
            loop {
                if i == self.arity {
                    return Ok(count);
                }
                exp[i] += 1;
                if exp[i] < bounds[i] {
                    break;
                }
                exp[i] = 0;
                i += 1;
            }
        }
    }
}
