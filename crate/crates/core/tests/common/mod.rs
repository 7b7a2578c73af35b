//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use repcode::factorization::y_roots;
use repcode::interpolation::{condition_count, degree_bound, interpolation_order, MultiplicityMatrix};
use repcode::polynomial::{binomial_mod, Monomial};
use repcode::{
    assign_multiplicities, compute_q, decode_with, AssignmentStrategy, Elem, Field, RSCode, ReceivedWord, RepeatedCode,
    UniPoly, WeightedOrder,
};

/// Least monomial (weighted order) that leads some nonzero polynomial meeting
/// every vanishing condition, found by column-wise Gaussian elimination over
/// the monomials up to the degree cap.
pub fn echelon_leading_monomial(
    field: &Field,
    points: &[Elem],
    matrix: &MultiplicityMatrix,
    order: &WeightedOrder,
) -> Monomial {
    let p = field.characteristic() as u64;
    let mut conditions = Vec::new();
    for (i, beta, m) in matrix.entries() {
        for r in 0..m {
            for s in 0..m - r {
                conditions.push((points[i], beta, r, s));
            }
        }
    }
    let budget = conditions.len() as u64 + 1;
    let cap = degree_bound(order, budget).weighted;
    let mut monomials = order.monomials_up_to(cap);
    monomials.sort_by(|a, b| order.compare(*a, *b));
    let mut basis: Vec<(usize, Vec<Elem>)> = Vec::new();
    for &(i, j) in &monomials {
        // Column of x^i y^j: its (r, s) shifted coefficient at each point.
        let mut v: Vec<Elem> = conditions
            .iter()
            .map(|&(a, b, r, s)| {
                if r > i || s > j {
                    return Elem::default();
                }
                let c = binomial_mod(i as u64, r as u64, p) * binomial_mod(j as u64, s as u64, p) % p;
                field.mul(field.from_int(c), field.mul(field.pow(a, (i - r) as u64), field.pow(b, (j - s) as u64)))
            })
            .collect();
        for (pivot, row) in &basis {
            let c = v[*pivot];
            if c.is_zero() {
                continue;
            }
            let f = field.div(c, row[*pivot]).unwrap();
            for (x, &y) in v.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(f, y));
            }
        }
        match v.iter().position(|e| !e.is_zero()) {
            None => return (i, j),
            Some(pivot) => basis.push((pivot, v)),
        }
    }
    panic!("no dependency among {} monomials for {} conditions", monomials.len(), conditions.len());
}

/// Every polynomial of degree < k over the field, in index order.
pub fn all_messages(field: &Field, k: usize) -> Vec<UniPoly> {
    let q = field.order() as u64;
    (0..q.pow(k as u32))
        .map(|mut idx| {
            UniPoly::from_coeffs(
                (0..k)
                    .map(|_| {
                        let d = (idx % q) as u32;
                        idx /= q;
                        field.elem(d).unwrap()
                    })
                    .collect(),
            )
        })
        .collect()
}

/// A corrupted copy of `sent` (l blocks of n symbols) with exactly `tau`
/// errors in which no nonzero error value occurs `b` or more times within a
/// column. Values repeat as often as allowed, and half the patterns first
/// saturate up to `saturate` columns.
pub fn adversarial_word<R: Rng>(
    field: &Field,
    sent: &[Elem],
    l: usize,
    b: usize,
    tau: usize,
    saturate: usize,
    rng: &mut R,
) -> Vec<Elem> {
    use rand::seq::SliceRandom;
    let n = sent.len() / l;
    assert!(b >= 2 && tau <= n * l);
    let mut counts = vec![0usize; n];
    let mut left = tau;
    if rng.gen_bool(0.5) {
        let mut cols: Vec<usize> = (0..n).collect();
        cols.shuffle(rng);
        for &c in cols.iter().take(saturate) {
            let t = rng.gen_range(0..=l).min(left);
            counts[c] = t;
            left -= t;
        }
    }
    while left > 0 {
        let c = rng.gen_range(0..n);
        if counts[c] < l {
            counts[c] += 1;
            left -= 1;
        }
    }
    let q = field.order();
    let mut word = sent.to_vec();
    for (i, &t) in counts.iter().enumerate() {
        let mut blocks: Vec<usize> = (0..l).collect();
        blocks.shuffle(rng);
        let mut values: Vec<u32> = (1..q).collect();
        values.shuffle(rng);
        let mut next_value = values.into_iter();
        let mut placed = 0;
        while placed < t {
            let delta = field.elem(next_value.next().expect("enough nonzero values")).unwrap();
            let group = rng.gen_range(1..b).max(if rng.gen_bool(0.7) { b - 1 } else { 1 }).min(t - placed);
            for &j in &blocks[placed..placed + group] {
                word[j * n + i] = field.add(word[j * n + i], delta);
            }
            placed += group;
        }
    }
    word
}

pub type Rational = num::rational::Ratio<i128>;

/// Consecutive grid points ell-2 < a1 < a2 where H(a1) < H(a2), over
/// l in 3..=7, n in 4..=64, 2 <= k <= n and a on a quarter-step grid up to
/// max(Delta, 3l).
pub fn h_monotonicity_violations() -> Vec<(u64, u64, u64, Rational, Rational)> {
    use repcode::bounds::h_function;
    let mut bad = Vec::new();
    for l in 3u64..=7 {
        for n in 4u64..=64 {
            for k in 2..=n {
                let delta = Rational::new((l * n - 1) as i128, (k - 1) as i128);
                let top = delta.max(Rational::from_integer(3 * l as i128));
                let mut a = Rational::new(4 * (l as i128 - 2) + 1, 4);
                let mut prev: Option<(Rational, Rational)> = None;
                while a <= top {
                    let h = h_function(n, k, l, a).unwrap();
                    if let Some((pa, ph)) = prev {
                        if h > ph {
                            bad.push((n, k, l, pa, a));
                        }
                    }
                    prev = Some((a, h));
                    a += Rational::new(1, 4);
                }
            }
        }
    }
    bad
}

/// (n, k, l, tau, a) with tau >= (l d - 1)/2 and n/(k-1) <= 2 but
/// a = floor((l n - 1 - tau)/(k-1)) > l, over n <= 40, l <= 7.
pub fn a_bound_violations() -> Vec<(u64, u64, u64, u64, u64)> {
    use repcode::bounds::weighted_split;
    let mut bad = Vec::new();
    for n in 2u64..=40 {
        for k in 2..=n {
            if n > 2 * (k - 1) {
                continue;
            }
            let d = n - k + 1;
            for l in 1u64..=7 {
                for tau in 0..l * n {
                    if 2 * tau + 1 < l * d {
                        continue;
                    }
                    let (a, _) = weighted_split(n, k, l, tau).unwrap();
                    if a > l {
                        bad.push((n, k, l, tau, a));
                    }
                }
            }
        }
    }
    bad
}

// Brute-force equivalence on small codes.

struct Instance {
    code: RepeatedCode,
    word: ReceivedWord,
    strategy: AssignmentStrategy,
}

pub fn random_word(code: &RepeatedCode, rng: &mut ChaCha8Rng) -> ReceivedWord {
    let field = code.field();
    let q = field.order();
    let message =
        UniPoly::from_coeffs((0..code.dimension()).map(|_| field.elem(rng.gen_range(0..q)).unwrap()).collect());
    let sent = code.encode(&message).unwrap();
    let mut symbols = sent.symbols().to_vec();
    let errors = rng.gen_range(0..=symbols.len());
    for _ in 0..errors {
        let at = rng.gen_range(0..symbols.len());
        symbols[at] = field.elem(rng.gen_range(0..q)).unwrap();
    }
    ReceivedWord::new(code.repetitions(), code.inner().n(), symbols).unwrap()
}

fn random_instance(rng: &mut ChaCha8Rng) -> Instance {
    let (m, n, k, l) = match rng.gen_range(0..5) {
        0 => (3, 7, 2, 1),
        1 => (3, 7, 2, 2),
        2 => (3, 7, 2, 3),
        3 => (4, 15, 3, 1),
        _ => (4, 15, 3, 2),
    };
    let field = Arc::new(Field::binary(m).unwrap());
    let code = RepeatedCode::new(RSCode::new(field, n, k).unwrap(), l).unwrap();
    let strategy = match rng.gen_range(0..=l) {
        0 => AssignmentStrategy::Count,
        b => AssignmentStrategy::Threshold { b },
    };
    let word = random_word(&code, rng);
    Instance { code, word, strategy }
}

pub fn messages_with_score_above(
    code: &RepeatedCode,
    matrix: &repcode::MultiplicityMatrix,
    messages: &[UniPoly],
    wdeg: u64,
) -> BTreeSet<UniPoly> {
    messages.iter().filter(|h| matrix.score(code.inner().encode(h).unwrap().symbols()) > wdeg).cloned().collect()
}

/// Checks `instances` random small-code instances with at most 60 unknowns:
/// leading monomial against [`echelon_leading_monomial`], y-roots against a
/// scan of all messages, and the decode list against the high-score set.
pub fn oracle_sweep(seed: u64, instances: usize) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < instances {
        let inst = random_instance(&mut rng);
        let matrix = assign_multiplicities(&inst.word, inst.strategy).unwrap();
        if matrix.is_zero() || condition_count(&matrix) + 1 > 60 {
            continue;
        }
        let inner = inst.code.inner();
        let field = &**inner.field();
        let order = interpolation_order(inner.k());
        let interp = compute_q(inner, &matrix).unwrap();

        let want_lm = echelon_leading_monomial(field, inner.points(), &matrix, &order);
        if interp.leading_monomial != want_lm {
            return Err(format!(
                "instance {checked}: leading monomial {:?}, echelon {want_lm:?}",
                interp.leading_monomial
            ));
        }

        let messages = all_messages(field, inner.k());
        let roots: BTreeSet<UniPoly> = y_roots(&interp.q, inner.k(), field).unwrap().into_iter().collect();
        let scanned: BTreeSet<UniPoly> =
            messages.iter().filter(|h| interp.q.evaluate_y(h, field).is_zero()).cloned().collect();
        if roots != scanned {
            return Err(format!("instance {checked}: y-roots differ from the exhaustive scan"));
        }

        let out = decode_with(&inst.code, &inst.word, matrix.clone()).unwrap();
        let listed: BTreeSet<UniPoly> = out.candidates.iter().map(|c| c.message.clone()).collect();
        let high = messages_with_score_above(&inst.code, &matrix, &messages, interp.weighted_degree);
        if listed != roots || !high.is_subset(&listed) {
            return Err(format!("instance {checked}: decode list misses a high-score codeword"));
        }
        checked += 1;
    }
    Ok(checked)
}

/// Decodes `patterns` adversarial words at exactly the threshold bound.
pub fn capability_run(
    m: u32,
    n: usize,
    k: usize,
    l: usize,
    b: usize,
    patterns: usize,
    seed: u64,
) -> Result<usize, String> {
    use repcode::bounds::bound_assignment2;
    use repcode::decode;
    let field = Arc::new(Field::binary(m).unwrap());
    let code = RepeatedCode::new(RSCode::new(field.clone(), n, k).unwrap(), l).unwrap();
    let tau = bound_assignment2(n as u64, k as u64, l as u64, b as u64).unwrap() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for p in 0..patterns {
        let message =
            UniPoly::from_coeffs((0..k).map(|_| field.elem(rng.gen_range(0..field.order())).unwrap()).collect());
        let inner = code.inner().encode(&message).unwrap();
        let sent = code.lift(&inner).unwrap();
        let symbols = adversarial_word(&field, sent.symbols(), l, b, tau, n - k, &mut rng);
        let word = ReceivedWord::new(l, n, symbols).unwrap();
        assert_eq!(word.distance_to_repeated(inner.symbols()), tau);
        let out = decode(&code, &word, AssignmentStrategy::Threshold { b }).unwrap();
        if !out.contains_inner(&inner) {
            return Err(format!("({n},{k},{l},b={b}) pattern {p} at tau {tau} not decoded"));
        }
    }
    Ok(patterns)
}
