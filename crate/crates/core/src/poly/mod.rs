//! Sparse multivariate polynomials over an exact field.

mod gcd;
mod monomial;
mod multipoly;
mod parse;
mod ratfun;

use std::fmt;
use std::sync::Arc;

pub use gcd::{gcd, strip_factor};
pub use monomial::{Monomial, MonomialOrder, OrderKey, OrderKind, MAX_VARS};
pub use multipoly::{MultiPoly, PolyDisplay};
pub use parse::{parse_expr, parse_expr_at, parse_expr_lines, parse_poly, parse_poly_list, Expr};
pub use ratfun::RationalFunction;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// A polynomial ring `F[v1, ..., vn]` with a fixed monomial order.
///
/// Variables are addressed by index internally; names only matter for
/// parsing, printing and conversions between rings.
#[derive(Clone, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new<S: AsRef<str>>(field: F, vars: &[S], kind: OrderKind) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        validate_vars(&vars)?;
        let order = MonomialOrder::new(kind, vars.len());
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    pub fn with_order<S: AsRef<str>>(field: F, vars: &[S], order: MonomialOrder) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        validate_vars(&vars)?;
        if order.nvars() != vars.len() {
            return Err(Error::Structural("order and variable count disagree".into()));
        }
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    /// Same variables and field, different order.
    pub fn reordered(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::with_order(self.field.clone(), &self.vars, order)
    }

    /// Same variables and order over another field.
    pub fn over<G: Field>(&self, field: G) -> Arc<PolyRing<G>> {
        Arc::new(PolyRing { field, vars: self.vars.clone(), order: self.order })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

impl<F: Field> fmt::Debug for PolyRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] {:?}", self.field.name(), self.vars.join(","), self.order)
    }
}

fn validate_vars(vars: &[String]) -> Result<()> {
    if vars.len() > MAX_VARS {
        return Err(Error::Structural(format!(
            "{} variables exceed the supported maximum of {MAX_VARS}",
            vars.len()
        )));
    }
    for (i, v) in vars.iter().enumerate() {
        let mut chars = v.chars();
        let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok || v == "w" {
            return Err(Error::Structural(format!("invalid variable name `{v}`")));
        }
        if vars[..i].contains(v) {
            return Err(Error::Structural(format!("duplicate variable `{v}`")));
        }
    }
    Ok(())
}

/// Checks that two rings are the same ring (pointer or structural equality).
pub(crate) fn same_ring<F: Field>(a: &Arc<PolyRing<F>>, b: &Arc<PolyRing<F>>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}
