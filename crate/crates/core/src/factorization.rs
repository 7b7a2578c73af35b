//! Roots in y of a bivariate polynomial: every h with deg h < k and (y - h) | Q.

use std::collections::BTreeSet;

use crate::error::{domain, Result};
use crate::galois::{Elem, Field};
use crate::polynomial::{binomial_mod, BiPoly, UniPoly};

/// All h with `deg h < max_len` such that `Q(x, h(x)) = 0`, deduplicated and sorted.
///
/// Coefficients are recovered one power of x at a time: with the x-content
/// of the current transform removed, every root's next coefficient is a
/// root of the transform at x = 0; the transform then moves to
/// `Q(x, x*y + gamma)`. Candidates are filtered by direct substitution.
pub fn y_roots(q: &BiPoly, max_len: usize, field: &Field) -> Result<Vec<UniPoly>> {
    if q.is_zero() {
        return domain("every polynomial is a root of the zero polynomial");
    }
    let rows: Vec<Vec<Elem>> = q.rows().into_iter().map(|r| r.coeffs().to_vec()).collect();
    let mut prefix = vec![Elem::ZERO; max_len];
    let mut found = BTreeSet::new();
    search(field, rows, 0, max_len, &mut prefix, &mut found);
    Ok(found.into_iter().filter(|h: &UniPoly| q.evaluate_y(h, field).is_zero()).collect())
}

fn search(
    field: &Field,
    mut rows: Vec<Vec<Elem>>,
    depth: usize,
    max_len: usize,
    prefix: &mut Vec<Elem>,
    found: &mut BTreeSet<UniPoly>,
) {
    // Strip x-content.
    let content = rows.iter().filter_map(|r| r.iter().position(|c| !c.is_zero())).min();
    let Some(content) = content else { return };
    if content > 0 {
        for r in rows.iter_mut() {
            let cut = content.min(r.len());
            r.drain(..cut);
        }
    }
    if depth == max_len {
        found.insert(UniPoly::from_coeffs(prefix.clone()));
        return;
    }
    let at_zero: Vec<Elem> = rows.iter().map(|r| r.first().copied().unwrap_or(Elem::ZERO)).collect();
    for gamma in field.elements() {
        let v = at_zero.iter().rev().fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, gamma), c));
        if !v.is_zero() {
            continue;
        }
        prefix[depth] = gamma;
        let next = substitute(field, &rows, gamma);
        search(field, next, depth + 1, max_len, prefix, found);
    }
    prefix[depth] = Elem::ZERO;
}

/// Rows of Q(x, x*y + gamma).
fn substitute(field: &Field, rows: &[Vec<Elem>], gamma: Elem) -> Vec<Vec<Elem>> {
    let p = field.characteristic() as u64;
    let ny = rows.len();
    let mut gamma_pows = Vec::with_capacity(ny);
    let mut cur = Elem::ONE;
    for _ in 0..ny {
        gamma_pows.push(cur);
        cur = field.mul(cur, gamma);
    }
    let mut out = Vec::with_capacity(ny);
    for t in 0..ny {
        // Coefficient of y^t in Q(x, y + gamma), then times x^t.
        let width = rows[t..].iter().map(|r| r.len()).max().unwrap_or(0);
        let mut row = vec![Elem::ZERO; t + width];
        for (j, src) in rows.iter().enumerate().skip(t) {
            let b = binomial_mod(j as u64, t as u64, p);
            if b == 0 {
                continue;
            }
            let factor = field.mul(field.from_int(b), gamma_pows[j - t]);
            if factor.is_zero() {
                continue;
            }
            for (i, &c) in src.iter().enumerate() {
                row[t + i] = field.add(row[t + i], field.mul(c, factor));
            }
        }
        out.push(row);
    }
    out
}
