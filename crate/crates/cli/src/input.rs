//! Argument decoding shared by the subcommands.

use std::sync::Arc;

use froblift::fan::{self, Fan, FanData};
use froblift::json::{self, PolyJson};
use froblift::poly::var_names;
use froblift::{Error, FiniteField, FqPoly, Result};

use crate::{FanSource, Ring};

/// Inline text, or the contents of a file for `@path`.
pub fn text(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

pub fn field(q: Option<u32>, p: Option<u32>) -> Result<&'static FiniteField> {
    let q = q.or(p).ok_or_else(|| Error::Invalid("give --q or --p".into()))?;
    let f = FiniteField::get(q)?;
    if let Some(p) = p {
        if f.p() != p {
            return Err(Error::Invalid(format!("F_{q} does not have characteristic {p}")));
        }
    }
    Ok(f)
}

pub fn ring(r: &Ring) -> Result<(&'static FiniteField, Arc<[String]>)> {
    let names: Vec<&str> = r.vars.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if names.is_empty() {
        return Err(Error::Invalid("no variables".into()));
    }
    Ok((field(r.q, r.p)?, var_names(&names)))
}

/// A polynomial given as an expression, inline JSON, or @file holding either.
pub fn poly(f: &'static FiniteField, vars: &Arc<[String]>, arg: &str) -> Result<FqPoly> {
    let s = text(arg)?;
    if s.trim_start().starts_with('{') {
        let g = json::from_str::<PolyJson>(&s)?.to_fq()?;
        if g.field().order() != f.order() {
            return Err(Error::FieldMismatch(g.field().order(), f.order()));
        }
        return Ok(g);
    }
    FqPoly::parse(f, vars.clone(), &s)
}

pub fn polys(f: &'static FiniteField, vars: &Arc<[String]>, args: &[String]) -> Result<Vec<FqPoly>> {
    args.iter().map(|a| poly(f, vars, a)).collect()
}

pub fn ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Invalid(format!("{t:?} is not an integer"))))
        .collect()
}

pub fn fan(src: &FanSource) -> Result<Fan> {
    match (&src.catalog, &src.fan) {
        (Some(name), _) => fan::catalog_fan(name),
        (None, Some(arg)) => Fan::from_data(&json::from_str::<FanData>(&text(arg)?)?),
        (None, None) => Err(Error::Invalid("give --catalog NAME or --fan JSON".into())),
    }
}
