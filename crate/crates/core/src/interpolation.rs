//! Weighted-degree minimal interpolation through points with multiplicities.
//!
//! [`compute_q`] returns the minimal nonzero polynomial, under the
//! (1, k-1)-weighted order, that vanishes to order at least `m` at every
//! point `(a_i, beta)` with multiplicity `m` in the matrix. It keeps one
//! candidate per leading y-degree and folds the vanishing conditions in one
//! at a time (Koetter's incremental reduction).

use crate::error::{usage, Result};
use crate::galois::{Elem, Field};
use crate::polynomial::{binomial_mod, BiPoly, Monomial, UniPoly, WeightedOrder};
use crate::rscode::RSCode;

/// Map (position, field value) -> required multiplicity. Positions are 0-based.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiplicityMatrix {
    // Per position: nonzero entries sorted by field value.
    columns: Vec<Vec<(Elem, u32)>>,
}

impl MultiplicityMatrix {
    pub fn new(n: usize) -> Self {
        Self { columns: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn set(&mut self, position: usize, value: Elem, m: u32) -> Result<()> {
        let Some(col) = self.columns.get_mut(position) else {
            return usage(format!("position {position} out of range"));
        };
        match col.binary_search_by_key(&value, |e| e.0) {
            Ok(idx) if m == 0 => {
                col.remove(idx);
            }
            Ok(idx) => col[idx].1 = m,
            Err(_) if m == 0 => {}
            Err(idx) => col.insert(idx, (value, m)),
        }
        Ok(())
    }

    pub fn get(&self, position: usize, value: Elem) -> u32 {
        self.columns
            .get(position)
            .and_then(|col| col.binary_search_by_key(&value, |e| e.0).ok().map(|i| col[i].1))
            .unwrap_or(0)
    }

    /// Nonzero entries of one position, ascending by field value.
    pub fn column(&self, position: usize) -> &[(Elem, u32)] {
        &self.columns[position]
    }

    /// All nonzero entries `(position, value, m)` in position-then-value order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, Elem, u32)> + '_ {
        self.columns.iter().enumerate().flat_map(|(i, col)| col.iter().map(move |&(b, m)| (i, b, m)))
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.entries().map(|e| e.2).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    /// Positions with no nonzero entry.
    pub fn erasures(&self) -> usize {
        self.columns.iter().filter(|c| c.is_empty()).count()
    }

    /// sum_i m_{i, word_i}
    pub fn score(&self, word: &[Elem]) -> u64 {
        word.iter().enumerate().map(|(i, &b)| self.get(i, b) as u64).sum()
    }
}

/// Number of linear conditions: sum of C(m + 1, 2) over all entries.
pub fn condition_count(matrix: &MultiplicityMatrix) -> u64 {
    matrix.entries().map(|(_, _, m)| m as u64 * (m as u64 + 1) / 2).sum()
}

/// N = 1 + condition_count.
pub fn monomial_budget(matrix: &MultiplicityMatrix) -> u64 {
    1 + condition_count(matrix)
}

/// Caps implied by a monomial budget N.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct DegreeBound {
    /// Least weighted degree C with at least N monomials of weighted degree <= C.
    pub weighted: u64,
    /// floor(C / w): no monomial within the cap has a larger y-degree.
    pub y_degree: u32,
}

/// Number of monomials x^i y^j with i + j*w <= cap.
pub fn monomials_within(order: &WeightedOrder, cap: u64) -> u64 {
    let w = order.weight() as u64;
    (0..=cap / w).map(|j| cap - j * w + 1).sum()
}

pub fn degree_bound(order: &WeightedOrder, budget: u64) -> DegreeBound {
    // The count grows at least by one per unit of C, so C < N.
    let (mut lo, mut hi) = (0u64, budget.max(1) - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if monomials_within(order, mid) >= budget {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    DegreeBound { weighted: lo, y_degree: (lo / order.weight() as u64) as u32 }
}

/// The (1, k-1)-weighted order; constant messages (k = 1) use weight 1,
/// which still bounds deg Q(x, h(x)) by the weighted degree of Q.
pub fn interpolation_order(k: usize) -> WeightedOrder {
    WeightedOrder::new((k.max(2) - 1) as u32).expect("weight is positive")
}

#[derive(Clone, Debug)]
pub struct InterpolationResult {
    pub q: BiPoly,
    pub leading_monomial: Monomial,
    pub weighted_degree: u64,
    pub bound: DegreeBound,
    pub conditions: u64,
    pub budget: u64,
}

/// One candidate of the running basis: dense rows indexed by y-power.
struct Candidate {
    rows: Vec<Vec<Elem>>,
    /// x-degree of the leading monomial; its y-degree is the candidate's slot.
    lead_x: u64,
}

pub fn compute_q(code: &RSCode, matrix: &MultiplicityMatrix) -> Result<InterpolationResult> {
    if matrix.n() != code.n() {
        return usage(format!("multiplicity matrix has {} positions, code has {}", matrix.n(), code.n()));
    }
    let field = &**code.field();
    let order = interpolation_order(code.k());
    let w = order.weight() as u64;
    let conditions = condition_count(matrix);
    let budget = conditions + 1;
    let bound = degree_bound(&order, budget);
    let slots = bound.y_degree as usize + 1;

    let mut cands: Vec<Option<Candidate>> = (0..slots)
        .map(|j| {
            let mut rows = vec![Vec::new(); slots];
            rows[j] = vec![Elem::ONE];
            Some(Candidate { rows, lead_x: 0 })
        })
        .collect();

    let p = field.characteristic() as u64;
    let mut discrepancies = vec![Elem::ZERO; slots];
    let mut alpha_pows: Vec<u32> = Vec::new();
    let mut beta_pows: Vec<Elem> = Vec::new();
    let mut row_vals: Vec<Elem> = Vec::new();

    for (pos, &alpha) in code.points().iter().enumerate() {
        let column = matrix.column(pos);
        if column.is_empty() {
            continue;
        }
        // log(alpha^e); entries are usize::MAX-free because alpha == 0 is handled separately.
        let alpha_log = field.log(alpha);
        alpha_pows.clear();
        for &(beta, mult) in column {
            for total in 0..mult {
                for r in 0..=total {
                    let s = total - r;
                    // Discrepancy of every live candidate for the shift (r, s) at (alpha, beta).
                    let mut best: Option<usize> = None;
                    for (j, slot) in cands.iter().enumerate() {
                        let Some(c) = slot else {
                            discrepancies[j] = Elem::ZERO;
                            continue;
                        };
                        let d = shifted_coefficient(
                            field,
                            p,
                            &c.rows,
                            alpha,
                            alpha_log,
                            beta,
                            r,
                            s,
                            &mut alpha_pows,
                            &mut beta_pows,
                            &mut row_vals,
                        );
                        discrepancies[j] = d;
                        if !d.is_zero() {
                            let better = match best {
                                None => true,
                                Some(b) => {
                                    let cb = cands[b].as_ref().unwrap();
                                    (c.lead_x + j as u64 * w, j) < (cb.lead_x + b as u64 * w, b)
                                }
                            };
                            if better {
                                best = Some(j);
                            }
                        }
                    }
                    let Some(star) = best else { continue };
                    let d_star_inv = field.inv(discrepancies[star])?;
                    let pivot = cands[star].take().unwrap();
                    for (j, slot) in cands.iter_mut().enumerate() {
                        let Some(c) = slot else { continue };
                        let d = discrepancies[j];
                        if d.is_zero() {
                            continue;
                        }
                        let factor = field.mul(d, d_star_inv);
                        let factor_log = field.log(factor).unwrap();
                        for (row, prow) in c.rows.iter_mut().zip(&pivot.rows) {
                            if row.len() < prow.len() {
                                row.resize(prow.len(), Elem::ZERO);
                            }
                            for (a, &b) in row.iter_mut().zip(prow) {
                                *a = field.sub(*a, field.mul_by_log(b, factor_log));
                            }
                        }
                    }
                    let mut pivot = pivot;
                    multiply_by_linear(field, &mut pivot.rows, alpha);
                    pivot.lead_x += 1;
                    // A candidate past the cap can never be the minimum.
                    if pivot.lead_x + star as u64 * w <= bound.weighted {
                        cands[star] = Some(pivot);
                    }
                }
            }
        }
    }

    let (slot, best) = cands
        .iter()
        .enumerate()
        .filter_map(|(j, c)| c.as_ref().map(|c| (j, c)))
        .min_by_key(|(j, c)| (c.lead_x + *j as u64 * w, *j))
        .expect("a nonzero interpolant exists within the degree cap");
    let rows: Vec<UniPoly> = best.rows.iter().map(|r| UniPoly::from_coeffs(r.clone())).collect();
    let q = BiPoly::from_rows(&rows);
    let leading_monomial = (best.lead_x as u32, slot as u32);
    debug_assert_eq!(q.leading_monomial(&order), Some(leading_monomial));

    let result = InterpolationResult {
        weighted_degree: order.weighted_degree(leading_monomial),
        q,
        leading_monomial,
        bound,
        conditions,
        budget,
    };
    #[cfg(debug_assertions)]
    if conditions <= 200 {
        for (i, b, m) in matrix.entries() {
            let got = result.q.multiplicity_at(field, (code.points()[i], b)).unwrap();
            debug_assert!(got >= m, "interpolant misses multiplicity {m} at position {i}");
        }
    }
    Ok(result)
}

/// Coefficient of x^r y^s in g(x + alpha, y + beta) for g given by y-rows.
#[allow(clippy::too_many_arguments)]
#[inline]
fn shifted_coefficient(
    field: &Field,
    p: u64,
    rows: &[Vec<Elem>],
    alpha: Elem,
    alpha_log: Option<u32>,
    beta: Elem,
    r: u32,
    s: u32,
    alpha_pows: &mut Vec<u32>,
    beta_pows: &mut Vec<Elem>,
    row_vals: &mut Vec<Elem>,
) -> Elem {
    let r = r as usize;
    let s = s as usize;
    row_vals.clear();
    for row in rows.iter().skip(s) {
        let v = if r == 0 {
            // Horner
            row.iter().rev().fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, alpha), c))
        } else if row.len() <= r {
            Elem::ZERO
        } else {
            match alpha_log {
                None => {
                    // alpha = 0: only the i = r term survives.
                    row[r]
                }
                Some(al) => {
                    let order = field.order() - 1;
                    if alpha_pows.len() < row.len() {
                        alpha_pows.clear();
                        alpha_pows.extend((0..row.len() as u64).map(|e| ((e * al as u64) % order as u64) as u32));
                    }
                    let mut acc = Elem::ZERO;
                    for (i, &c) in row.iter().enumerate().skip(r) {
                        if c.is_zero() {
                            continue;
                        }
                        let b = binomial_mod(i as u64, r as u64, p);
                        if b == 0 {
                            continue;
                        }
                        let t = field.mul_by_log(c, alpha_pows[i - r]);
                        acc = field.add(acc, if b == 1 { t } else { field.mul(t, field.from_int(b)) });
                    }
                    acc
                }
            }
        };
        row_vals.push(v);
    }
    if s == 0 {
        return row_vals.iter().rev().fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, beta), c));
    }
    beta_pows.clear();
    let mut cur = Elem::ONE;
    for _ in 0..row_vals.len() {
        beta_pows.push(cur);
        cur = field.mul(cur, beta);
    }
    let mut acc = Elem::ZERO;
    for (t, &v) in row_vals.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let b = binomial_mod((t + s) as u64, s as u64, p);
        if b == 0 {
            continue;
        }
        acc = field.add(acc, field.mul(field.mul(v, beta_pows[t]), field.from_int(b)));
    }
    acc
}

/// rows <- (x - alpha) * rows
fn multiply_by_linear(field: &Field, rows: &mut [Vec<Elem>], alpha: Elem) {
    for row in rows.iter_mut() {
        if row.is_empty() {
            continue;
        }
        row.push(Elem::ZERO);
        for i in (0..row.len()).rev() {
            let lower = if i > 0 { row[i - 1] } else { Elem::ZERO };
            row[i] = field.sub(lower, field.mul(alpha, row[i]));
        }
    }
}
