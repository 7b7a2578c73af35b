//! List decoding of the repeated code C^l = {(c, ..., c) : c in C}.
//!
//! A received word is viewed as an l x n matrix (row = block, column =
//! position). Agreement between blocks at each position is turned into a
//! multiplicity matrix, and the interpolation decoder of the constituent
//! code does the rest.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::factorization::y_roots;
use crate::galois::{Elem, Field};
use crate::interpolation::{compute_q, MultiplicityMatrix};
use crate::polynomial::{Monomial, UniPoly};
use crate::rscode::{Codeword, RSCode};

/// The l-fold repetition of a Reed-Solomon code, parameters [l*n, k, l*d].
#[derive(Clone, Debug)]
pub struct RepeatedCode {
    inner: RSCode,
    l: usize,
}

impl RepeatedCode {
    pub fn new(inner: RSCode, l: usize) -> Result<Self> {
        if l == 0 {
            return usage("repetition count must be at least 1");
        }
        Ok(Self { inner, l })
    }

    pub fn inner(&self) -> &RSCode {
        &self.inner
    }

    pub fn field(&self) -> &Field {
        self.inner.field()
    }

    pub fn repetitions(&self) -> usize {
        self.l
    }

    pub fn length(&self) -> usize {
        self.l * self.inner.n()
    }

    pub fn dimension(&self) -> usize {
        self.inner.k()
    }

    pub fn distance(&self) -> usize {
        self.l * self.inner.d()
    }

    /// (c, ..., c), l copies.
    pub fn lift(&self, c: &Codeword) -> Result<Codeword> {
        if c.len() != self.inner.n() {
            return usage(format!("codeword length {} != n = {}", c.len(), self.inner.n()));
        }
        Ok(Codeword(std::iter::repeat_n(c.symbols(), self.l).flatten().copied().collect()))
    }

    pub fn encode(&self, message: &UniPoly) -> Result<Codeword> {
        self.lift(&self.inner.encode(message)?)
    }
}

/// l x n matrix of received symbols, stored row-major (block by block).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReceivedWord {
    l: usize,
    n: usize,
    symbols: Vec<Elem>,
}

impl ReceivedWord {
    pub fn new(l: usize, n: usize, symbols: Vec<Elem>) -> Result<Self> {
        if symbols.len() != l * n {
            return usage(format!("expected {l}x{n} = {} symbols, got {}", l * n, symbols.len()));
        }
        Ok(Self { l, n, symbols })
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) {
            return usage("rows of a received word must have equal length");
        }
        Self::new(rows.len(), n, rows.concat())
    }

    pub fn from_indices(field: &Field, l: usize, n: usize, indices: &[u32]) -> Result<Self> {
        let symbols = indices.iter().map(|&i| field.elem(i)).collect::<Result<Vec<_>>>()?;
        Self::new(l, n, symbols)
    }

    /// Whitespace-separated symbol indices, row-major: l rows of n entries.
    pub fn parse(text: &str, field: &Field, l: usize, n: usize) -> Result<Self> {
        let indices = text
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad symbol '{t}'"))))
            .collect::<Result<Vec<_>>>()?;
        if indices.len() != l * n {
            return Err(Error::Parse(format!(
                "expected {l} rows of {n} symbols ({} total), found {}",
                l * n,
                indices.len()
            )));
        }
        Self::from_indices(field, l, n, &indices)
    }

    pub fn blocks(&self) -> usize {
        self.l
    }

    pub fn positions(&self) -> usize {
        self.n
    }

    pub fn symbols(&self) -> &[Elem] {
        &self.symbols
    }

    /// Entry of block `j`, position `i` (both 0-based).
    pub fn get(&self, block: usize, position: usize) -> Elem {
        self.symbols[block * self.n + position]
    }

    pub fn row(&self, block: usize) -> &[Elem] {
        &self.symbols[block * self.n..(block + 1) * self.n]
    }

    pub fn column(&self, position: usize) -> impl Iterator<Item = Elem> + '_ {
        (0..self.l).map(move |j| self.get(j, position))
    }

    pub fn as_codeword(&self) -> Codeword {
        Codeword(self.symbols.clone())
    }

    /// Hamming distance to (c, ..., c).
    pub fn distance_to_repeated(&self, c: &[Elem]) -> usize {
        (0..self.l).map(|j| self.row(j).iter().zip(c).filter(|(a, b)| a != b).count()).sum()
    }
}

impl fmt::Display for ReceivedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.l {
            let row: Vec<String> = self.row(j).iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// How agreement between blocks becomes multiplicities.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AssignmentStrategy {
    /// m_{i,beta} = number of blocks showing beta at position i.
    Count,
    /// m_{i,beta} = 1 if at least `b` blocks show beta at position i, else 0.
    Threshold { b: usize },
}

impl AssignmentStrategy {
    pub fn validate(&self, l: usize) -> Result<()> {
        match *self {
            AssignmentStrategy::Threshold { b } if b < 1 || b > l => {
                usage(format!("threshold b = {b} must lie in 1..={l}"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for AssignmentStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AssignmentStrategy::Count => write!(f, "count"),
            AssignmentStrategy::Threshold { b } => write!(f, "threshold(b={b})"),
        }
    }
}

pub fn assign_multiplicities(word: &ReceivedWord, strategy: AssignmentStrategy) -> Result<MultiplicityMatrix> {
    strategy.validate(word.blocks())?;
    let mut matrix = MultiplicityMatrix::new(word.positions());
    let mut column: Vec<Elem> = Vec::with_capacity(word.blocks());
    for i in 0..word.positions() {
        column.clear();
        column.extend(word.column(i));
        column.sort_unstable();
        for run in column.chunk_by(|a, b| a == b) {
            let count = run.len() as u32;
            let m = match strategy {
                AssignmentStrategy::Count => count,
                AssignmentStrategy::Threshold { b } => (count as usize >= b) as u32,
            };
            matrix.set(i, run[0], m)?;
        }
    }
    Ok(matrix)
}

/// sum_i m_{i, c_i}
pub fn score(matrix: &MultiplicityMatrix, candidate: &Codeword) -> u64 {
    matrix.score(candidate.symbols())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub message: UniPoly,
    /// Codeword of the constituent code.
    pub inner: Codeword,
    /// The repeated codeword (inner, ..., inner).
    pub word: Codeword,
    /// Hamming distance to the received word.
    pub distance: usize,
    pub score: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub conditions: u64,
    pub budget: u64,
    pub weighted_cap: u64,
    pub y_cap: u32,
    pub weighted_degree: u64,
    pub leading_monomial: Monomial,
    pub erasures: usize,
    pub max_multiplicity: u32,
}

#[derive(Clone, Debug)]
pub struct DecodeOutput {
    pub candidates: Vec<Candidate>,
    pub diagnostics: Diagnostics,
    pub multiplicities: MultiplicityMatrix,
}

impl DecodeOutput {
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn contains_inner(&self, c: &Codeword) -> bool {
        self.candidates.iter().any(|cand| cand.inner == *c)
    }
}

/// Assign multiplicities, interpolate, find y-roots, and return the lifted
/// candidates sorted by distance to `word`. An empty list is a decoding failure.
pub fn decode(code: &RepeatedCode, word: &ReceivedWord, strategy: AssignmentStrategy) -> Result<DecodeOutput> {
    if word.blocks() != code.repetitions() || word.positions() != code.inner().n() {
        return usage(format!(
            "received word is {}x{}, code expects {}x{}",
            word.blocks(),
            word.positions(),
            code.repetitions(),
            code.inner().n()
        ));
    }
    let matrix = assign_multiplicities(word, strategy)?;
    decode_with(code, word, matrix)
}

/// Decoding with a caller-supplied multiplicity matrix.
pub fn decode_with(code: &RepeatedCode, word: &ReceivedWord, matrix: MultiplicityMatrix) -> Result<DecodeOutput> {
    let inner = code.inner();
    let field = &**inner.field();
    let interp = compute_q(inner, &matrix)?;
    let roots = y_roots(&interp.q, inner.k(), field)?;
    let mut candidates = roots
        .into_iter()
        .map(|message| {
            let c = inner.encode(&message)?;
            Ok(Candidate {
                distance: word.distance_to_repeated(c.symbols()),
                score: score(&matrix, &c),
                word: code.lift(&c)?,
                inner: c,
                message,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let k = inner.k();
    let key = |c: &Candidate| -> Vec<u32> { (0..k).map(|i| c.message.coeff(i).index()).collect() };
    candidates.sort_by(|a, b| a.distance.cmp(&b.distance).then_with(|| key(a).cmp(&key(b))));
    Ok(DecodeOutput {
        candidates,
        diagnostics: Diagnostics {
            conditions: interp.conditions,
            budget: interp.budget,
            weighted_cap: interp.bound.weighted,
            y_cap: interp.bound.y_degree,
            weighted_degree: interp.weighted_degree,
            leading_monomial: interp.leading_monomial,
            erasures: matrix.erasures(),
            max_multiplicity: matrix.max_multiplicity(),
        },
        multiplicities: matrix,
    })
}
