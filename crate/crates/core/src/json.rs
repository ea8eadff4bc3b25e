//! JSON interchange for polynomials, Laurent matrices and divisors.
//!
//! Polynomials: `{"p":3,"q":3,"vars":["x","y"],"terms":[{"e":[2,0],"c":[1,0]}]}`.
//! A coefficient is either a field element code or a Witt pair `[a0, a1]`.
//! Laurent matrices: `{"q":5,"entries":[[{"num":[{"e":0,"c":1}],"tval":-2}, ...], ...]}`.

use serde::{Deserialize, Serialize};

use crate::curve_restriction::{Laurent, LaurentMatrix};
use crate::error::{Error, Result};
use crate::field::{FiniteField, Fq};
use crate::poly::{var_names, FqPoly};
use crate::upoly::UPoly;
use crate::witt::{W2Poly, WittScalar2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Element(u32),
    Witt([u32; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: CoeffJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub p: u32,
    #[serde(default)]
    pub q: Option<u32>,
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UTermJson {
    pub e: usize,
    pub c: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub num: Vec<UTermJson>,
    pub tval: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentMatrixJson {
    pub q: u32,
    pub entries: Vec<Vec<LaurentJson>>,
}

/// Parses JSON, reporting syntax and schema errors with line and column.
pub fn from_str<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Json { line: e.line(), column: e.column(), msg: e.to_string() })
}

impl PolyJson {
    fn field(&self) -> Result<&'static FiniteField> {
        let q = self.q.unwrap_or(self.p);
        let f = FiniteField::get(q)?;
        if f.p() != self.p {
            return Err(Error::Invalid(format!("q = {q} is not a power of p = {}", self.p)));
        }
        Ok(f)
    }

    fn check_arity(&self) -> Result<()> {
        match self.terms.iter().find(|t| t.e.len() != self.vars.len()) {
            Some(t) => Err(Error::Invalid(format!("exponent {:?} does not match {} variables", t.e, self.vars.len()))),
            None => Ok(()),
        }
    }

    pub fn to_fq(&self) -> Result<FqPoly> {
        let f = self.field()?;
        self.check_arity()?;
        let vars = var_names(&self.vars.iter().map(String::as_str).collect::<Vec<_>>());
        let mut g = FqPoly::zero(f, vars);
        for t in &self.terms {
            let c = match t.c {
                CoeffJson::Element(v) => f.elem(v)?,
                CoeffJson::Witt([a0, 0]) => f.elem(a0)?,
                CoeffJson::Witt(_) => return Err(Error::Invalid("Witt coefficient with nonzero a1 in an F_q polynomial".into())),
            };
            g.add_term(t.e.clone(), c);
        }
        Ok(g)
    }

    pub fn to_w2(&self) -> Result<W2Poly> {
        let f = self.field()?;
        self.check_arity()?;
        let vars = var_names(&self.vars.iter().map(String::as_str).collect::<Vec<_>>());
        let mut g = W2Poly::zero(f, vars);
        for t in &self.terms {
            let (a0, a1) = match t.c {
                CoeffJson::Element(v) => (v, 0),
                CoeffJson::Witt([a0, a1]) => (a0, a1),
            };
            g.add_term(t.e.clone(), WittScalar2::new(f.elem(a0)?, f.elem(a1)?)?);
        }
        Ok(g)
    }

    pub fn from_fq(g: &FqPoly) -> Self {
        let f = g.field();
        PolyJson {
            p: f.p(),
            q: Some(f.order()),
            vars: g.vars().to_vec(),
            terms: g.terms().map(|(e, c)| TermJson { e: e.clone(), c: CoeffJson::Element(c.value()) }).collect(),
        }
    }

    pub fn from_w2(g: &W2Poly) -> Self {
        let f = g.field();
        PolyJson {
            p: f.p(),
            q: Some(f.order()),
            vars: g.vars().to_vec(),
            terms: g.terms().map(|(e, c)| TermJson { e: e.clone(), c: CoeffJson::Witt([c.a0.value(), c.a1.value()]) }).collect(),
        }
    }
}

fn upoly_from(f: &'static FiniteField, terms: &[UTermJson]) -> Result<UPoly> {
    let len = terms.iter().map(|t| t.e + 1).max().unwrap_or(0);
    let mut c: Vec<Fq> = vec![f.zero(); len];
    for t in terms {
        c[t.e] += f.elem(t.c)?;
    }
    Ok(UPoly::new(f, c))
}

impl LaurentMatrixJson {
    pub fn to_matrix(&self) -> Result<LaurentMatrix> {
        let f = FiniteField::get(self.q)?;
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|l| Ok(Laurent::new(upoly_from(f, &l.num)?, l.tval))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        LaurentMatrix::new(entries)
    }

    pub fn from_matrix(m: &LaurentMatrix) -> Self {
        let entries = m
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|l| LaurentJson {
                        num: l.num().coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(e, c)| UTermJson { e, c: c.value() }).collect(),
                        tval: l.valuation().unwrap_or(0),
                    })
                    .collect()
            })
            .collect();
        LaurentMatrixJson { q: m.field().order(), entries }
    }
}
