use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::LexError;
use crate::csp::{solve, Constraint, Model, SearchConfig, Value};
use crate::perm::{orbit_of_assignment, GeneratingSet, SymmetryKind};

/// Default cap on the number of solutions [`audit_completeness`] enumerates.
pub const DEFAULT_AUDIT_CAP: usize = 1_000_000;

/// An orbit (of model solutions) and its members that survive symmetry breaking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitWitness {
    /// Lexicographically least solution of the orbit.
    pub leader: Vec<Value>,
    pub size: usize,
    pub survivors: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    /// Solutions of the model without the breaking constraints.
    pub total_solutions: usize,
    /// Solutions that also satisfy the breaking constraints.
    pub surviving_solutions: usize,
    pub orbit_count: usize,
    /// Orbits keeping two or more solutions.
    pub orbits_with_multiple_survivors: Vec<OrbitWitness>,
    /// Orbits losing every solution; non-empty means the breaking is unsound.
    pub orbits_without_survivor: Vec<OrbitWitness>,
    /// Every orbit keeps exactly one solution.
    pub complete: bool,
}

/// Groups the solutions of `model` into orbits of `<g>` and counts, per orbit, the
/// solutions that satisfy every constraint of `breaking`.
pub fn audit_completeness(
    model: &Model,
    g: &GeneratingSet,
    kind: SymmetryKind,
    breaking: &[Constraint],
    cap: usize,
) -> Result<AuditReport, LexError> {
    let result = solve(model, &SearchConfig::all().with_limit(cap.saturating_add(1)));
    if result.solutions.len() > cap {
        return Err(LexError::SolutionCap { cap });
    }
    let solutions: BTreeSet<Vec<Value>> = result.solutions.into_iter().collect();
    let mut orbits: BTreeMap<Vec<Value>, Vec<Vec<Value>>> = BTreeMap::new();
    let mut assigned: BTreeSet<&Vec<Value>> = BTreeSet::new();
    for s in &solutions {
        if assigned.contains(s) {
            continue;
        }
        let orbit = orbit_of_assignment(g, kind, s)?;
        let members: Vec<Vec<Value>> = orbit.into_iter().filter(|t| solutions.contains(t)).collect();
        for m in &members {
            assigned.insert(solutions.get(m).unwrap());
        }
        orbits.insert(members[0].clone(), members);
    }
    let mut report = AuditReport {
        total_solutions: solutions.len(),
        surviving_solutions: 0,
        orbit_count: orbits.len(),
        orbits_with_multiple_survivors: Vec::new(),
        orbits_without_survivor: Vec::new(),
        complete: false,
    };
    for (leader, members) in orbits {
        let survivors: Vec<Vec<Value>> = members
            .iter()
            .filter(|t| breaking.iter().all(|c| c.check(t)))
            .cloned()
            .collect();
        report.surviving_solutions += survivors.len();
        let witness = OrbitWitness {
            leader,
            size: members.len(),
            survivors,
        };
        match witness.survivors.len() {
            0 => report.orbits_without_survivor.push(witness),
            1 => {}
            _ => report.orbits_with_multiple_survivors.push(witness),
        }
    }
    report.complete = report.orbits_with_multiple_survivors.is_empty() && report.orbits_without_survivor.is_empty();
    Ok(report)
}
