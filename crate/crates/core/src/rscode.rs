//! Reed-Solomon codes as evaluation codes.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::galois::{Elem, Field, FieldDescriptor};
use crate::polynomial::UniPoly;

/// A word of the code (or of the ambient space), one symbol per position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword(pub Vec<Elem>);

impl Codeword {
    pub fn symbols(&self) -> &[Elem] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn distance(&self, other: &Self) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }
}

/// The code {(h(a_1), ..., h(a_n)) : deg h <= k - 1}.
#[derive(Clone, Debug)]
pub struct RSCode {
    field: Arc<Field>,
    k: usize,
    points: Vec<Elem>,
}

impl RSCode {
    /// Evaluation points g^0, ..., g^(n-1) for the field's primitive element g.
    pub fn new(field: Arc<Field>, n: usize, k: usize) -> Result<Self> {
        if n as u64 >= field.order() as u64 {
            return usage(format!(
                "n = {n} needs more than the {} nonzero powers of the primitive element of {field}",
                field.order() - 1
            ));
        }
        let points = (0..n).map(|i| field.exp(i as u64)).collect();
        Self::with_points(field, k, points)
    }

    pub fn with_points(field: Arc<Field>, k: usize, points: Vec<Elem>) -> Result<Self> {
        let n = points.len();
        if k < 1 || k > n || n > field.order() as usize {
            return usage(format!("need 1 <= k <= n <= q, got k={k} n={n} q={}", field.order()));
        }
        if points.iter().any(|p| p.index() >= field.order()) {
            return usage("evaluation point outside the field");
        }
        let mut sorted = points.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return usage("evaluation points must be distinct");
        }
        Ok(Self { field, k, points })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Minimum distance n - k + 1.
    pub fn d(&self) -> usize {
        self.n() - self.k + 1
    }

    pub fn points(&self) -> &[Elem] {
        &self.points
    }

    pub fn encode(&self, message: &UniPoly) -> Result<Codeword> {
        if message.degree().is_some_and(|d| d >= self.k) {
            return usage(format!("message degree {} exceeds k - 1 = {}", message.degree().unwrap(), self.k - 1));
        }
        Ok(Codeword(self.points.iter().map(|&a| message.eval(&self.field, a)).collect()))
    }

    /// Rows are the encodings of 1, x, ..., x^(k-1).
    pub fn generator_matrix(&self) -> Vec<Vec<Elem>> {
        let f = &self.field;
        (0..self.k).map(|i| self.points.iter().map(|&a| f.pow(a, i as u64)).collect()).collect()
    }

    /// The unique polynomial of degree <= n - 1 through (a_i, values_i).
    pub fn lagrange_interpolate(&self, values: &[Elem]) -> Result<UniPoly> {
        if values.len() != self.n() {
            return usage(format!("expected {} values, got {}", self.n(), values.len()));
        }
        let f = &*self.field;
        // Newton divided differences, then expand the Newton form.
        let n = self.n();
        let mut coef = values.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = f.sub(coef[i], coef[i - 1]);
                let den = f.sub(self.points[i], self.points[i - level]);
                coef[i] = f.div(num, den)?;
            }
        }
        let mut acc = UniPoly::zero();
        for i in (0..n).rev() {
            let shift = UniPoly::from_coeffs(vec![f.neg(self.points[i]), Elem::ONE]);
            acc = acc.mul(&shift, f).add(&UniPoly::constant(coef[i]), f);
        }
        Ok(acc)
    }

    pub fn is_codeword(&self, word: &Codeword) -> bool {
        word.len() == self.n()
            && self.lagrange_interpolate(&word.0).map(|h| h.degree().is_none_or(|d| d < self.k)).unwrap_or(false)
    }

    pub fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            field: self.field.descriptor(),
            n: self.n(),
            k: self.k,
            eval_points: EvalPoints::Explicit(self.points.iter().map(|p| p.index()).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EvalPoints {
    /// `"powers"`: the first n powers of the primitive element.
    Named(String),
    Explicit(Vec<u32>),
}

impl Default for EvalPoints {
    fn default() -> Self {
        EvalPoints::Named("powers".into())
    }
}

/// Serializable code description `{field, n, k, eval_points}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub field: FieldDescriptor,
    pub n: usize,
    pub k: usize,
    #[serde(default)]
    pub eval_points: EvalPoints,
}

impl CodeDescriptor {
    pub fn build(&self) -> Result<RSCode> {
        let field = self.field.build()?.shared();
        self.build_in(field)
    }

    pub fn build_in(&self, field: Arc<Field>) -> Result<RSCode> {
        match &self.eval_points {
            EvalPoints::Named(name) if name == "powers" => RSCode::new(field, self.n, self.k),
            EvalPoints::Named(other) => {
                Err(Error::Parse(format!("unknown eval_points '{other}' (expected \"powers\" or a list)")))
            }
            EvalPoints::Explicit(list) => {
                if list.len() != self.n {
                    return usage(format!("{} evaluation points given for n = {}", list.len(), self.n));
                }
                let points = list.iter().map(|&i| field.elem(i)).collect::<Result<Vec<_>>>()?;
                RSCode::with_points(field, self.k, points)
            }
        }
    }
}
