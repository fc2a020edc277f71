use alloc::vec::Vec;

use super::{LexConstraint, LexError, ValueLexLeader};
use crate::csp::{Constraint, Term, VarId};
use crate::perm::{GeneratingSet, SymmetryKind};

/// One lex-leader constraint per non-identity generator.
///
/// For a variable symmetry σ the constraint is `X <=lex X∘σ`, i.e. the right vector has
/// `vars[σ(i)]` at position `i`; the rotation `perm[2,3,4,1]` gives
/// `X1X2X3X4 <=lex X2X3X4X1`. For a value symmetry θ it is `X <=lex θ(X)`.
pub fn lex_leader_from_generators(
    g: &GeneratingSet,
    kind: SymmetryKind,
    vars: &[VarId],
) -> Result<Vec<Constraint>, LexError> {
    if kind == SymmetryKind::Variable && !g.is_empty() && g.degree() != vars.len() {
        return Err(LexError::DegreeMismatch {
            expected: vars.len(),
            found: g.degree(),
        });
    }
    let out = g
        .non_identity()
        .map(|s| match kind {
            SymmetryKind::Variable => {
                let left: Vec<Term> = vars.iter().map(|&v| Term::Var(v)).collect();
                let right = (1..=vars.len()).map(|i| Term::Var(vars[s.image(i) - 1])).collect();
                Constraint::Lex(LexConstraint::leq(left, right))
            }
            SymmetryKind::Value => Constraint::ValueLexLeader(ValueLexLeader::new(vars.to_vec(), s.clone())),
        })
        .collect();
    Ok(out)
}
