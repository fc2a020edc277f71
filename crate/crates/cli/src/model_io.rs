//! JSON form of a constraint model.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "variables": [{ "name": "X11", "domain": [0, 1] }, ...],
//!   "constraints": [
//!     { "kind": "eq", "var": "X11", "value": 0 },
//!     { "kind": "leq", "left": "X11", "right": "X12" },
//!     { "kind": "lex_leq", "left": ["X11", "X12"], "right": ["X21", 0] },
//!     { "kind": "lex_lt", "left": [...], "right": [...] },
//!     { "kind": "value_lexleader", "vars": ["X1", "X2"], "theta": "perm[2,1]" },
//!     { "kind": "lexchain", "vectors": [[...], [...]], "order": "lex" },
//!     { "kind": "doublelex", "cells": [["X11", "X12"], ["X21", 0]],
//!       "row_order": "lex", "col_order": "lex" }
//!   ]
//! }
//! ```
//!
//! A term is a variable name or an integer constant. Matrix cells are names or the
//! constants 0 and 1. Orders are `lex` (the default) or `reverse_lex`. Writing a model
//! back sorts domains and prints `theta` as an image list, so a written document reads
//! back to itself.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use symbreak::{
    ChainOrder, Constraint, Domain, LexChain, LexConstraint, MatrixCell, MatrixModel, Model, Permutation, Term, Value,
    ValueLexLeader,
};

pub const SCHEMA_VERSION: u32 = 1;

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub variables: Vec<VariableDoc>,
    #[serde(default)]
    pub constraints: Vec<ConstraintDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableDoc {
    pub name: String,
    pub domain: Vec<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TermDoc {
    Const(Value),
    Var(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderDoc {
    #[default]
    Lex,
    ReverseLex,
}

impl From<OrderDoc> for ChainOrder {
    fn from(o: OrderDoc) -> Self {
        match o {
            OrderDoc::Lex => ChainOrder::Lex,
            OrderDoc::ReverseLex => ChainOrder::ReverseLex,
        }
    }
}

impl From<ChainOrder> for OrderDoc {
    fn from(o: ChainOrder) -> Self {
        match o {
            ChainOrder::Lex => OrderDoc::Lex,
            ChainOrder::ReverseLex => OrderDoc::ReverseLex,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConstraintDoc {
    Eq {
        var: String,
        value: Value,
    },
    Leq {
        left: String,
        right: String,
    },
    LexLeq {
        left: Vec<TermDoc>,
        right: Vec<TermDoc>,
    },
    LexLt {
        left: Vec<TermDoc>,
        right: Vec<TermDoc>,
    },
    ValueLexleader {
        vars: Vec<String>,
        theta: String,
    },
    Lexchain {
        vectors: Vec<Vec<TermDoc>>,
        #[serde(default)]
        order: OrderDoc,
    },
    Doublelex {
        cells: Vec<Vec<TermDoc>>,
        #[serde(default)]
        row_order: OrderDoc,
        #[serde(default)]
        col_order: OrderDoc,
    },
}

impl ModelDoc {
    pub fn parse(text: &str) -> Result<ModelDoc, String> {
        let doc: ModelDoc = serde_json::from_str(text).map_err(|e| format!("model JSON: {e}"))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "model JSON: schema_version {} is not supported (expected {SCHEMA_VERSION})",
                doc.schema_version
            ));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model documents serialize")
    }

    pub fn to_model(&self) -> Result<Model, String> {
        let mut model = Model::new();
        let mut index = HashMap::new();
        for v in &self.variables {
            let domain = Domain::from_values(v.domain.iter().copied())
                .ok_or_else(|| format!("variable `{}`: domain values must lie in 0..=63", v.name))?;
            let id = model.add_var(v.name.clone(), domain).map_err(|e| e.to_string())?;
            if index.insert(v.name.as_str(), id).is_some() {
                return Err(format!("variable `{}` is declared twice", v.name));
            }
        }
        let var = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| format!("unknown variable `{name}`"))
        };
        let term = |t: &TermDoc| match t {
            TermDoc::Const(c) => Ok(Term::Const(*c)),
            TermDoc::Var(name) => var(name).map(Term::Var),
        };
        let terms = |ts: &[TermDoc]| ts.iter().map(term).collect::<Result<Vec<_>, _>>();
        for (k, c) in self.constraints.iter().enumerate() {
            let built = match c {
                ConstraintDoc::Eq { var: v, value } => Constraint::Eq {
                    var: var(v)?,
                    value: *value,
                },
                ConstraintDoc::Leq { left, right } => Constraint::Leq {
                    left: var(left)?,
                    right: var(right)?,
                },
                ConstraintDoc::LexLeq { left, right } => LexConstraint::leq(terms(left)?, terms(right)?).into(),
                ConstraintDoc::LexLt { left, right } => LexConstraint::lt(terms(left)?, terms(right)?).into(),
                ConstraintDoc::ValueLexleader { vars, theta } => {
                    let vars = vars.iter().map(|v| var(v)).collect::<Result<Vec<_>, _>>()?;
                    let theta = Permutation::parse_with_degree(theta, None).map_err(|e| format!("theta: {e}"))?;
                    ValueLexLeader::new(vars, theta).into()
                }
                ConstraintDoc::Lexchain { vectors, order } => {
                    let vectors = vectors.iter().map(|v| terms(v)).collect::<Result<Vec<_>, _>>()?;
                    LexChain::new(vectors, (*order).into()).into()
                }
                ConstraintDoc::Doublelex {
                    cells,
                    row_order,
                    col_order,
                } => {
                    let rows = cells.len();
                    let cols = cells.first().map_or(0, Vec::len);
                    if cells.iter().any(|r| r.len() != cols) {
                        return Err(format!("constraint {}: matrix rows differ in length", k + 1));
                    }
                    let flat = cells
                        .iter()
                        .flatten()
                        .map(|t| match t {
                            TermDoc::Const(0) => Ok(MatrixCell::Zero),
                            TermDoc::Const(1) => Ok(MatrixCell::One),
                            TermDoc::Const(c) => Err(format!("matrix constant {c} is not 0 or 1")),
                            TermDoc::Var(name) => var(name).map(MatrixCell::Free),
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    MatrixModel::new(rows, cols, flat, (*row_order).into(), (*col_order).into())
                        .map_err(|e| e.to_string())?
                        .into()
                }
            };
            model.post(built).map_err(|e| format!("constraint {}: {e}", k + 1))?;
        }
        Ok(model)
    }

    pub fn from_model(model: &Model) -> ModelDoc {
        let names = model.names();
        let term = |t: &Term| match *t {
            Term::Var(v) => TermDoc::Var(names[v].clone()),
            Term::Const(c) => TermDoc::Const(c),
        };
        let terms = |ts: &[Term]| ts.iter().map(term).collect::<Vec<_>>();
        let constraints = model
            .constraints()
            .iter()
            .map(|c| match c {
                Constraint::Eq { var, value } => ConstraintDoc::Eq {
                    var: names[*var].clone(),
                    value: *value,
                },
                Constraint::Leq { left, right } => ConstraintDoc::Leq {
                    left: names[*left].clone(),
                    right: names[*right].clone(),
                },
                Constraint::Lex(l) if l.strict => ConstraintDoc::LexLt {
                    left: terms(&l.left),
                    right: terms(&l.right),
                },
                Constraint::Lex(l) => ConstraintDoc::LexLeq {
                    left: terms(&l.left),
                    right: terms(&l.right),
                },
                Constraint::ValueLexLeader(v) => ConstraintDoc::ValueLexleader {
                    vars: v.vars.iter().map(|&i| names[i].clone()).collect(),
                    theta: v.theta.to_image_list(),
                },
                Constraint::LexChain(ch) => ConstraintDoc::Lexchain {
                    vectors: ch.vectors.iter().map(|v| terms(v)).collect(),
                    order: ch.order.into(),
                },
                Constraint::DoubleLex(m) => ConstraintDoc::Doublelex {
                    cells: m.row_terms().iter().map(|r| terms(r)).collect(),
                    row_order: m.row_order().into(),
                    col_order: m.col_order().into(),
                },
            })
            .collect();
        ModelDoc {
            schema_version: SCHEMA_VERSION,
            variables: names
                .iter()
                .zip(model.domains())
                .map(|(name, d)| VariableDoc {
                    name: name.clone(),
                    domain: d.to_vec(),
                })
                .collect(),
            constraints,
        }
    }
}

/// `{0,1}`-style rendering of a value set.
pub fn value_set(values: &[Value]) -> String {
    let body: Vec<String> = values.iter().map(Value::to_string).collect();
    format!("{{{}}}", body.join(","))
}
