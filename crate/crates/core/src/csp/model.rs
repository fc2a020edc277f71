use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{CspError, Domain, Value, VarId, Wipeout};
use crate::lex::{self, LexChain, LexConstraint, MatrixModel, ValueLexLeader};

/// An entry of a lex vector: a variable or a constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(VarId),
    Const(Value),
}

impl Term {
    pub fn domain(self, domains: &[Domain]) -> Domain {
        match self {
            Term::Var(v) => domains[v],
            Term::Const(c) => Domain::singleton(c),
        }
    }

    pub fn value(self, assignment: &[Value]) -> Value {
        match self {
            Term::Var(v) => assignment[v],
            Term::Const(c) => c,
        }
    }

    pub fn var(self) -> Option<VarId> {
        match self {
            Term::Var(v) => Some(v),
            Term::Const(_) => None,
        }
    }
}

impl From<VarId> for Term {
    fn from(v: VarId) -> Term {
        Term::Var(v)
    }
}

/// The constraint kinds the engine understands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    /// `var = value`
    Eq {
        var: VarId,
        value: Value,
    },
    /// `left <= right`
    Leq {
        left: VarId,
        right: VarId,
    },
    Lex(LexConstraint),
    ValueLexLeader(ValueLexLeader),
    LexChain(LexChain),
    DoubleLex(MatrixModel),
}

impl Constraint {
    /// Short tag used by serialized models.
    pub fn kind(&self) -> &'static str {
        match self {
            Constraint::Eq { .. } => "eq",
            Constraint::Leq { .. } => "leq",
            Constraint::Lex(c) if c.strict => "lex_lt",
            Constraint::Lex(_) => "lex_leq",
            Constraint::ValueLexLeader(_) => "value_lexleader",
            Constraint::LexChain(_) => "lexchain",
            Constraint::DoubleLex(_) => "doublelex",
        }
    }

    /// Variables in scope, sorted and deduplicated.
    pub fn scope(&self) -> Vec<VarId> {
        let mut vars: Vec<VarId> = match self {
            Constraint::Eq { var, .. } => alloc::vec![*var],
            Constraint::Leq { left, right } => alloc::vec![*left, *right],
            Constraint::Lex(c) => c.left.iter().chain(&c.right).filter_map(|t| t.var()).collect(),
            Constraint::ValueLexLeader(c) => c.vars.clone(),
            Constraint::LexChain(c) => c.vectors.iter().flatten().filter_map(|t| t.var()).collect(),
            Constraint::DoubleLex(m) => m.free_vars(),
        };
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// Removes unsupported values. Returns whether any domain changed.
    pub fn propagate(&self, domains: &mut [Domain]) -> Result<bool, Wipeout> {
        match self {
            Constraint::Eq { var, value } => {
                let before = domains[*var];
                let after = before.intersect(Domain::singleton(*value));
                if after.is_empty() {
                    return Err(Wipeout);
                }
                domains[*var] = after;
                Ok(after != before)
            }
            Constraint::Leq { left, right } => {
                if left == right {
                    return Ok(false);
                }
                let (l, r) = (domains[*left], domains[*right]);
                let (Some(rmax), Some(lmin)) = (r.max(), l.min()) else {
                    return Err(Wipeout);
                };
                let nl = l.without(l.above(rmax));
                let nr = r.without(r.below(lmin));
                if nl.is_empty() || nr.is_empty() {
                    return Err(Wipeout);
                }
                domains[*left] = nl;
                domains[*right] = nr;
                Ok(nl != l || nr != r)
            }
            Constraint::Lex(c) => lex::propagate_lex(c, domains),
            Constraint::ValueLexLeader(c) => lex::propagate_value_leader(c, domains),
            Constraint::LexChain(c) => lex::propagate_chain(&c.vectors, c.order, domains),
            Constraint::DoubleLex(m) => lex::propagate_doublelex(m, domains),
        }
    }

    /// Decides a full assignment (indexed by variable id).
    pub fn check(&self, assignment: &[Value]) -> bool {
        match self {
            Constraint::Eq { var, value } => assignment[*var] == *value,
            Constraint::Leq { left, right } => assignment[*left] <= assignment[*right],
            Constraint::Lex(c) => c.check(assignment),
            Constraint::ValueLexLeader(c) => c.check(assignment),
            Constraint::LexChain(c) => c.check(assignment),
            Constraint::DoubleLex(m) => m.check(assignment),
        }
    }

    fn validate(&self, num_vars: usize) -> Result<(), CspError> {
        if let Some(&var) = self.scope().iter().find(|&&v| v >= num_vars) {
            return Err(CspError::UnknownVariable { var, num_vars });
        }
        let invalid = |message: String| Err(CspError::InvalidConstraint { message });
        match self {
            Constraint::Lex(c) if c.left.len() != c.right.len() => invalid(format!(
                "lex vectors differ in length ({} vs {})",
                c.left.len(),
                c.right.len()
            )),
            Constraint::LexChain(c) => c.validate().or_else(invalid),
            _ => Ok(()),
        }
    }
}

impl From<LexConstraint> for Constraint {
    fn from(c: LexConstraint) -> Self {
        Constraint::Lex(c)
    }
}

impl From<ValueLexLeader> for Constraint {
    fn from(c: ValueLexLeader) -> Self {
        Constraint::ValueLexLeader(c)
    }
}

impl From<LexChain> for Constraint {
    fn from(c: LexChain) -> Self {
        Constraint::LexChain(c)
    }
}

impl From<MatrixModel> for Constraint {
    fn from(m: MatrixModel) -> Self {
        Constraint::DoubleLex(m)
    }
}

/// Variables with finite domains plus constraints over them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Model {
    names: Vec<String>,
    domains: Vec<Domain>,
    constraints: Vec<Constraint>,
}

impl Model {
    pub fn new() -> Self {
        Model::default()
    }

    /// A model with anonymous variables `X1, X2, ...` over the given domains.
    pub fn from_domains(domains: &[Domain]) -> Result<Self, CspError> {
        let mut m = Model::new();
        for (i, &d) in domains.iter().enumerate() {
            m.add_var(format!("X{}", i + 1), d)?;
        }
        Ok(m)
    }

    pub fn add_var(&mut self, name: impl Into<String>, domain: Domain) -> Result<VarId, CspError> {
        let name = name.into();
        if domain.is_empty() {
            return Err(CspError::EmptyDomain { name });
        }
        self.names.push(name);
        self.domains.push(domain);
        Ok(self.domains.len() - 1)
    }

    pub fn post(&mut self, c: impl Into<Constraint>) -> Result<(), CspError> {
        let c = c.into();
        c.validate(self.num_vars())?;
        self.constraints.push(c);
        Ok(())
    }

    pub fn post_all<I: IntoIterator<Item = Constraint>>(&mut self, cs: I) -> Result<(), CspError> {
        cs.into_iter().try_for_each(|c| self.post(c))
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Same variables and constraints, different domains (same length, none empty).
    pub fn with_domains(&self, domains: &[Domain]) -> Result<Model, CspError> {
        assert_eq!(domains.len(), self.num_vars());
        if let Some(i) = domains.iter().position(|d| d.is_empty()) {
            return Err(CspError::EmptyDomain {
                name: self.names[i].clone(),
            });
        }
        let mut m = self.clone();
        m.domains = domains.to_vec();
        Ok(m)
    }

    /// Whether a full assignment lies in the domains and satisfies every constraint.
    pub fn is_solution(&self, assignment: &[Value]) -> bool {
        assignment.len() == self.num_vars()
            && assignment.iter().zip(&self.domains).all(|(&v, d)| d.contains(v))
            && self.constraints.iter().all(|c| c.check(assignment))
    }
}
