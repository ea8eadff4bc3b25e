//! Polynomial differential forms with logarithmic poles along marked coordinates.
//!
//! The basis 1-form for coordinate i is `η_i = dx_i/x_i` when i is marked and
//! `dx_i` otherwise; j-forms use `η_I = η_{i_1} ∧ … ∧ η_{i_j}` for sorted I.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::poly::FqPoly;

#[derive(Clone, PartialEq)]
pub struct LogForm {
    field: &'static FiniteField,
    vars: Arc<[String]>,
    marked: Arc<[bool]>,
    degree: usize,
    terms: BTreeMap<Vec<usize>, FqPoly>,
}

// sign of the shuffle merging sorted a and b, or None if they meet
fn merge_sign(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut inversions = 0usize;
    for x in a {
        for y in b {
            if x == y {
                return None;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    Some((out, inversions % 2 == 1))
}

impl LogForm {
    pub fn zero(field: &'static FiniteField, vars: Arc<[String]>, marked: Arc<[bool]>, degree: usize) -> Self {
        assert_eq!(vars.len(), marked.len(), "marking arity");
        LogForm { field, vars, marked, degree, terms: BTreeMap::new() }
    }

    pub fn unmarked(n: usize) -> Arc<[bool]> {
        vec![false; n].into()
    }

    /// `coef · η_idx`; `idx` need not be sorted.
    pub fn basis(marked: Arc<[bool]>, idx: &[usize], coef: FqPoly) -> Result<Self> {
        let mut sorted = idx.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(Self::zero(coef.field(), coef.vars().clone(), marked, idx.len()));
        }
        if sorted.last().is_some_and(|&i| i >= coef.nvars()) {
            return Err(Error::Invalid(format!("basis index out of range: {idx:?}")));
        }
        // parity of the sorting permutation
        let mut inv = 0;
        for i in 0..idx.len() {
            for j in i + 1..idx.len() {
                if idx[i] > idx[j] {
                    inv += 1;
                }
            }
        }
        let coef = if inv % 2 == 1 { -coef } else { coef };
        let mut out = Self::zero(coef.field(), coef.vars().clone(), marked, idx.len());
        out.add_term(sorted, coef);
        Ok(out)
    }

    /// Σ g_i η_i
    pub fn one_form(marked: Arc<[bool]>, coeffs: Vec<FqPoly>) -> Result<Self> {
        let first = coeffs.first().ok_or_else(|| Error::Invalid("empty coefficient list".into()))?;
        if coeffs.len() != first.nvars() {
            return Err(Error::Invalid("one coefficient per coordinate expected".into()));
        }
        let mut out = Self::zero(first.field(), first.vars().clone(), marked, 1);
        for (i, g) in coeffs.into_iter().enumerate() {
            out.add_term(vec![i], g);
        }
        Ok(out)
    }

    /// The function g as a 0-form.
    pub fn function(marked: Arc<[bool]>, g: FqPoly) -> Self {
        let mut out = Self::zero(g.field(), g.vars().clone(), marked, 0);
        out.add_term(vec![], g);
        out
    }

    pub fn add_term(&mut self, idx: Vec<usize>, coef: FqPoly) {
        debug_assert_eq!(idx.len(), self.degree);
        if coef.is_zero() {
            return;
        }
        let next = match self.terms.remove(&idx) {
            Some(c) => c + coef,
            None => coef,
        };
        if !next.is_zero() {
            self.terms.insert(idx, next);
        }
    }

    pub fn field(&self) -> &'static FiniteField {
        self.field
    }
    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }
    pub fn marked(&self) -> &Arc<[bool]> {
        &self.marked
    }
    pub fn n(&self) -> usize {
        self.vars.len()
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &FqPoly)> {
        self.terms.iter()
    }
    pub fn coeff(&self, idx: &[usize]) -> FqPoly {
        self.terms.get(idx).cloned().unwrap_or_else(|| FqPoly::zero(self.field, self.vars.clone()))
    }
    pub fn zero_like(&self, degree: usize) -> Self {
        Self::zero(self.field, self.vars.clone(), self.marked.clone(), degree)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.vars != o.vars {
            return Err(Error::VariableMismatch(self.vars.to_vec(), o.vars.to_vec()));
        }
        if self.marked != o.marked {
            return Err(Error::Invalid("forms use different markings".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if self.degree != o.degree {
            return Err(Error::Invalid("adding forms of different degree".into()));
        }
        let mut out = self.clone();
        for (i, c) in &o.terms {
            out.add_term(i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-FqPoly::one(self.field, self.vars.clone())))
    }

    pub fn scale(&self, g: &FqPoly) -> Self {
        let mut out = self.zero_like(self.degree);
        for (i, c) in &self.terms {
            out.add_term(i.clone(), c * g);
        }
        out
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.zero_like(self.degree + o.degree);
        for (i, a) in &self.terms {
            for (j, b) in &o.terms {
                if let Some((k, neg)) = merge_sign(i, j) {
                    let c = a.checked_mul(b)?;
                    out.add_term(k, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative; on marked k it uses `dg = Σ x_k ∂_k g · dx_k/x_k`.
    pub fn d(&self) -> Self {
        let mut out = self.zero_like(self.degree + 1);
        for (idx, g) in &self.terms {
            for k in 0..self.n() {
                if idx.contains(&k) {
                    continue;
                }
                let mut c = g.derivative(k);
                if self.marked[k] {
                    c = c * FqPoly::var(self.field, self.vars.clone(), k);
                }
                if c.is_zero() {
                    continue;
                }
                let (merged, neg) = merge_sign(&[k], idx).unwrap();
                out.add_term(merged, if neg { -c } else { c });
            }
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.d().is_zero()
    }

    pub fn basis_name(&self, i: usize) -> String {
        if self.marked[i] {
            format!("d{0}/{0}", self.vars[i])
        } else {
            format!("d{}", self.vars[i])
        }
    }
}

impl fmt::Display for LogForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (idx, g)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let wedge: Vec<String> = idx.iter().map(|&i| self.basis_name(i)).collect();
            if wedge.is_empty() {
                write!(f, "{g}")?;
            } else {
                write!(f, "({g}) {}", wedge.join("^"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LogForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
