//! Schubert conditions, duality, Young diagrams, tableaux, and the purely
//! combinatorial counts attached to them.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("invalid Schubert condition {entries:?} for Gr({k},{n})")]
    InvalidCondition { k: usize, n: usize, entries: Vec<usize> },
    #[error("conditions live on different Grassmannians")]
    DimensionMismatch,
    #[error("skew shape undefined: inner diagram does not fit inside outer")]
    ShapeUndefined,
    #[error("operation requires a straight (non-skew) shape")]
    SkewInput,
    #[error("operation requires n = 2k")]
    NotMiddleDimensional,
    #[error("condition is not symmetric")]
    NotSymmetric,
}

/// A Schubert condition: a strictly increasing k-subset of [1, n].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SchubertCondition {
    pub n: usize,
    pub k: usize,
    pub entries: Vec<usize>,
}

impl SchubertCondition {
    pub fn new(k: usize, n: usize, entries: Vec<usize>) -> Result<Self, CombinatoricsError> {
        let ok = entries.len() == k
            && k <= n
            && entries.windows(2).all(|w| w[0] < w[1])
            && entries.first().map_or(k == 0, |&a| a >= 1)
            && entries.last().map_or(true, |&a| a <= n);
        if !ok {
            return Err(CombinatoricsError::InvalidCondition { k, n, entries });
        }
        Ok(SchubertCondition { n, k, entries })
    }

    /// The trivial (codimension-zero) condition (n-k+1, ..., n).
    pub fn trivial(k: usize, n: usize) -> Self {
        SchubertCondition { n, k, entries: (n - k + 1..=n).collect() }
    }

    /// The unique codimension-one condition (n-k, n-k+2, n-k+3, ..., n).
    pub fn hypersurface(k: usize, n: usize) -> Self {
        let mut entries = vec![n - k];
        entries.extend(n - k + 2..=n);
        SchubertCondition { n, k, entries }
    }

    /// Condition with the given Young diagram rows (weakly decreasing,
    /// at most k rows, entries at most n-k).
    pub fn from_diagram(k: usize, n: usize, rows: &[usize]) -> Result<Self, CombinatoricsError> {
        let mut padded = rows.to_vec();
        padded.resize(k, 0);
        let entries: Vec<usize> =
            padded.iter().enumerate().map(|(i, r)| n - k + i + 1 - r).collect();
        Self::new(k, n, entries)
    }

    pub fn is_trivial(&self) -> bool {
        self.codim() == 0
    }

    /// Codimension |alpha| = k(n-k) - sum(alpha_i - i); equals the box count
    /// of the Young diagram.
    pub fn codim(&self) -> usize {
        let shift: usize = self.entries.iter().enumerate().map(|(i, &a)| a - (i + 1)).sum();
        self.k * (self.n - self.k) - shift
    }

    /// Young diagram row lengths: row i has n-k+i-alpha_i boxes.
    pub fn diagram(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &a)| self.n - self.k + i + 1 - a)
            .collect()
    }

    /// The associated condition in the dual Grassmannian: sorted
    /// {n+1-c : c not in alpha}. Its diagram is the conjugate of ours.
    pub fn dual(&self) -> SchubertCondition {
        let mut entries: Vec<usize> = (1..=self.n)
            .filter(|c| !self.entries.contains(c))
            .map(|c| self.n + 1 - c)
            .collect();
        entries.sort_unstable();
        SchubertCondition { n: self.n, k: self.n - self.k, entries }
    }

    /// Complementary condition alpha'_i = n+1-alpha_{k+1-i}.
    pub fn complement(&self) -> SchubertCondition {
        let entries = (0..self.k).map(|i| self.n + 1 - self.entries[self.k - 1 - i]).collect();
        SchubertCondition { n: self.n, k: self.k, entries }
    }

    /// Bruhat order: alpha <= beta componentwise.
    pub fn bruhat_leq(&self, other: &SchubertCondition) -> Result<bool, CombinatoricsError> {
        if self.k != other.k || self.n != other.n {
            return Err(CombinatoricsError::DimensionMismatch);
        }
        Ok(self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b))
    }

    /// Number of Plucker coordinates p_beta with beta not <= self; the count
    /// of linearly independent determinantal equations cutting out the
    /// Schubert variety.
    pub fn count_not_leq(&self) -> usize {
        all_conditions(self.k, self.n)
            .into_iter()
            .filter(|b| !b.bruhat_leq(self).unwrap())
            .count()
    }

    /// Number of entries no greater than k (diagonal length of the diagram).
    pub fn length(&self) -> usize {
        self.entries.iter().filter(|&&a| a <= self.k).count()
    }

    /// Symmetric means alpha equals its dual; requires n = 2k.
    pub fn is_symmetric(&self) -> Result<bool, CombinatoricsError> {
        if self.n != 2 * self.k {
            return Err(CombinatoricsError::NotMiddleDimensional);
        }
        Ok(self.entries == self.dual().entries)
    }

    /// Lagrangian codimension ||alpha|| = (|alpha| + l(alpha))/2 of a
    /// symmetric condition.
    pub fn sym_norm(&self) -> Result<usize, CombinatoricsError> {
        if !self.is_symmetric()? {
            return Err(CombinatoricsError::NotSymmetric);
        }
        Ok((self.codim() + self.length()) / 2)
    }

    /// ASCII rendering of the Young diagram.
    pub fn render_diagram(&self) -> String {
        let rows = self.diagram();
        let mut out = String::new();
        for r in rows {
            if r == 0 {
                break;
            }
            out.push_str(&"[]".repeat(r));
            out.push('\n');
        }
        if out.is_empty() {
            out.push_str("(empty)\n");
        }
        out
    }
}

impl fmt::Display for SchubertCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.entries.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

/// All conditions in binom([n], k), lexicographic.
pub fn all_conditions(k: usize, n: usize) -> Vec<SchubertCondition> {
    fn rec(
        k: usize,
        n: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<SchubertCondition>,
    ) {
        if current.len() == k {
            out.push(SchubertCondition { n, k, entries: current.clone() });
            return;
        }
        let remaining = k - current.len();
        for v in start..=(n - remaining + 1) {
            current.push(v);
            rec(k, n, v + 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, n, 1, &mut Vec::with_capacity(k), &mut out);
    out
}

/// A skew Young diagram given by outer and inner row lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewDiagram {
    pub outer: Vec<usize>,
    pub inner: Vec<usize>,
}

impl SkewDiagram {
    pub fn new(outer: Vec<usize>, inner: Vec<usize>) -> Result<Self, CombinatoricsError> {
        let mut inner_padded = inner;
        if inner_padded.len() > outer.len() {
            if inner_padded[outer.len()..].iter().any(|&r| r > 0) {
                return Err(CombinatoricsError::ShapeUndefined);
            }
            inner_padded.truncate(outer.len());
        }
        inner_padded.resize(outer.len(), 0);
        let weakly_decreasing = |v: &[usize]| v.windows(2).all(|w| w[0] >= w[1]);
        if !weakly_decreasing(&outer) || !weakly_decreasing(&inner_padded) {
            return Err(CombinatoricsError::ShapeUndefined);
        }
        if outer.iter().zip(&inner_padded).any(|(o, i)| i > o) {
            return Err(CombinatoricsError::ShapeUndefined);
        }
        Ok(SkewDiagram { outer, inner: inner_padded })
    }

    pub fn straight(rows: Vec<usize>) -> Result<Self, CombinatoricsError> {
        let inner = vec![0; rows.len()];
        Self::new(rows, inner)
    }

    /// The skew shape d(alpha)/d(beta); requires alpha <= beta in the Bruhat
    /// order so that d(beta) fits inside d(alpha).
    pub fn from_conditions(
        alpha: &SchubertCondition,
        beta: &SchubertCondition,
    ) -> Result<Self, CombinatoricsError> {
        if !alpha.bruhat_leq(beta)? {
            return Err(CombinatoricsError::ShapeUndefined);
        }
        Self::new(alpha.diagram(), beta.diagram())
    }

    /// The disconnected shape with `p` boxes in the rightmost column and
    /// `q` boxes in the bottom row.
    pub fn column_row(p: usize, q: usize) -> Self {
        if p == 0 {
            return SkewDiagram { outer: vec![q], inner: vec![0] };
        }
        if q == 0 {
            return SkewDiagram { outer: vec![1; p], inner: vec![0; p] };
        }
        let mut outer = vec![q + 1; p];
        outer.push(q);
        let mut inner = vec![q; p];
        inner.push(0);
        SkewDiagram { outer, inner }
    }

    pub fn num_boxes(&self) -> usize {
        self.outer.iter().zip(&self.inner).map(|(o, i)| o - i).sum()
    }

    pub fn is_straight(&self) -> bool {
        self.inner.iter().all(|&i| i == 0)
    }

    /// Boxes in reading order (row-major), as (row, col) pairs.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (r, (&o, &i)) in self.outer.iter().zip(&self.inner).enumerate() {
            for c in i..o {
                out.push((r, c));
            }
        }
        out
    }

    fn contains(&self, r: usize, c: usize) -> bool {
        r < self.outer.len() && c >= self.inner[r] && c < self.outer[r]
    }
}

/// A filling of a skew diagram; entries are exactly 1..=N in standard
/// tableaux, strictly increasing along rows and columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    pub diagram: SkewDiagram,
    /// Entry per box, aligned with `diagram.boxes()` reading order.
    pub filling: Vec<usize>,
}

impl Tableau {
    /// Sign: parity of the permutation mapping the standard (reading-order)
    /// filling to this one, computed as inversions of the reading word.
    pub fn sign(&self) -> i64 {
        let mut inversions = 0usize;
        for i in 0..self.filling.len() {
            for j in (i + 1)..self.filling.len() {
                if self.filling[i] > self.filling[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Enumerate all standard Young tableaux of a (possibly skew) shape by
/// backtracking over boxes in reading order.
pub fn enumerate_syt(diagram: &SkewDiagram) -> Vec<Tableau> {
    fn rec(
        v: usize,
        n: usize,
        boxes: &[(usize, usize)],
        index_of: &std::collections::HashMap<(usize, usize), usize>,
        diagram: &SkewDiagram,
        filling: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Tableau>,
    ) {
        if v > n {
            out.push(Tableau { diagram: diagram.clone(), filling: filling.clone() });
            return;
        }
        for (i, &(r, c)) in boxes.iter().enumerate() {
            if used[i] {
                continue;
            }
            let above_ok = r == 0
                || !diagram.contains(r - 1, c)
                || index_of.get(&(r - 1, c)).map_or(true, |&j| used[j]);
            let left_ok = c == 0
                || !diagram.contains(r, c - 1)
                || index_of.get(&(r, c - 1)).map_or(true, |&j| used[j]);
            if above_ok && left_ok {
                used[i] = true;
                filling[i] = v;
                rec(v + 1, n, boxes, index_of, diagram, filling, used, out);
                used[i] = false;
            }
        }
    }
    let boxes = diagram.boxes();
    let n = boxes.len();
    let index_of: std::collections::HashMap<(usize, usize), usize> =
        boxes.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let mut out = Vec::new();
    rec(1, n, &boxes, &index_of, diagram, &mut vec![0; n], &mut vec![false; n], &mut out);
    out
}

/// Signed count over all standard Young tableaux of the shape.
pub fn signed_syt_sum(diagram: &SkewDiagram) -> i64 {
    enumerate_syt(diagram).iter().map(|t| t.sign()).sum()
}

/// Sign imbalance |sum of signs over SYT(alpha'/beta)|; defined when
/// alpha' <= beta in the Bruhat order.
pub fn sign_imbalance(
    alpha: &SchubertCondition,
    beta: &SchubertCondition,
) -> Result<u64, CombinatoricsError> {
    let shape = SkewDiagram::from_conditions(&alpha.complement(), beta)?;
    Ok(signed_syt_sum(&shape).unsigned_abs())
}

fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Number of standard Young tableaux of a straight shape via the hook
/// length formula.
pub fn hook_count(shape: &SkewDiagram) -> Result<u64, CombinatoricsError> {
    if !shape.is_straight() {
        return Err(CombinatoricsError::SkewInput);
    }
    let rows = &shape.outer;
    let col_len = |c: usize| rows.iter().filter(|&&r| r > c).count();
    let mut hooks = BigUint::one();
    for (r, &len) in rows.iter().enumerate() {
        for c in 0..len {
            let hook = (len - c) + (col_len(c) - r) - 1;
            hooks *= BigUint::from(hook);
        }
    }
    let n: usize = rows.iter().sum();
    let count = factorial(n) / hooks;
    Ok(count.to_u64().expect("tableau count overflows u64"))
}

/// Number of complex solutions to the all-hypersurface problem on the
/// middle Grassmannian: (k^2)! 1! ... (k-1)! / (k! (k+1)! ... (2k-1)!).
pub fn schubert_number(k: usize) -> u64 {
    let mut num = factorial(k * k);
    for i in 1..k {
        num *= factorial(i);
    }
    let mut den = BigUint::one();
    for i in k..2 * k {
        den *= factorial(i);
    }
    (num / den).to_u64().expect("Schubert number overflows u64")
}

/// A list of Schubert conditions on a common Grassmannian.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchubertProblem {
    pub k: usize,
    pub n: usize,
    pub conditions: Vec<Vec<usize>>,
}

impl SchubertProblem {
    pub fn new(conditions: Vec<SchubertCondition>) -> Result<Self, CombinatoricsError> {
        let first = conditions.first().ok_or(CombinatoricsError::DimensionMismatch)?;
        let (k, n) = (first.k, first.n);
        if conditions.iter().any(|c| c.k != k || c.n != n) {
            return Err(CombinatoricsError::DimensionMismatch);
        }
        Ok(SchubertProblem {
            k,
            n,
            conditions: conditions.into_iter().map(|c| c.entries).collect(),
        })
    }

    pub fn condition(&self, i: usize) -> SchubertCondition {
        SchubertCondition { n: self.n, k: self.k, entries: self.conditions[i].clone() }
    }

    pub fn len(&self) -> usize {
        self.conditions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conditions.is_empty()
    }

    pub fn validate(&self) -> Result<(), CombinatoricsError> {
        for c in &self.conditions {
            SchubertCondition::new(self.k, self.n, c.clone())?;
        }
        Ok(())
    }

    /// Total codimension |bold alpha|.
    pub fn sum_codim(&self) -> usize {
        (0..self.len()).map(|i| self.condition(i).codim()).sum()
    }

    /// A Schubert problem proper has total codimension k(n-k).
    pub fn is_problem(&self) -> bool {
        self.sum_codim() == self.k * (self.n - self.k)
    }

    /// Distinct conditions in order of first appearance, with multiplicities
    /// (the exponent-vector compression).
    pub fn compressed(&self) -> Vec<(SchubertCondition, usize)> {
        let mut out: Vec<(SchubertCondition, usize)> = Vec::new();
        for i in 0..self.len() {
            let c = self.condition(i);
            match out.iter_mut().find(|(d, _)| *d == c) {
                Some((_, m)) => *m += 1,
                None => out.push((c, 1)),
            }
        }
        out
    }
}

/// Per distinct condition, the number of real osculation points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OsculationType(pub Vec<usize>);

impl OsculationType {
    /// Validity: r_alpha has the parity of alpha's multiplicity and does not
    /// exceed it.
    pub fn is_valid_for(&self, problem: &SchubertProblem) -> bool {
        let compressed = problem.compressed();
        self.0.len() == compressed.len()
            && self.0.iter().zip(&compressed).all(|(&r, (_, m))| r <= *m && r % 2 == *m % 2)
    }
}

impl fmt::Display for OsculationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r=({})", self.0.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(","))
    }
}
