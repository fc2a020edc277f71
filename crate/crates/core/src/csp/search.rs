use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{Domain, Model, Outcome, Value, VarId, Wipeout};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Stop after this many solutions; `None` enumerates all.
    pub limit: Option<usize>,
    /// Give up after visiting this many nodes.
    pub node_budget: Option<u64>,
}

impl SearchConfig {
    pub fn all() -> Self {
        SearchConfig {
            limit: None,
            node_budget: None,
        }
    }

    pub fn first() -> Self {
        SearchConfig {
            limit: Some(1),
            node_budget: None,
        }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Satisfiable,
    Unsatisfiable,
    /// Node budget ran out before any solution was found.
    Unknown,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub nodes: u64,
    pub propagations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub status: Status,
    pub solutions: Vec<Vec<Value>>,
    pub stats: Stats,
    /// True when the node budget stopped the search early; the solution list may then
    /// be incomplete even if `status` is `Satisfiable`.
    pub budget_exhausted: bool,
}

struct Engine<'m> {
    model: &'m Model,
    scopes: Vec<Vec<VarId>>,
    watchers: Vec<Vec<usize>>,
}

impl<'m> Engine<'m> {
    fn new(model: &'m Model) -> Self {
        let scopes: Vec<Vec<VarId>> = model.constraints().iter().map(|c| c.scope()).collect();
        let mut watchers = vec![Vec::new(); model.num_vars()];
        for (ci, scope) in scopes.iter().enumerate() {
            for &v in scope {
                watchers[v].push(ci);
            }
        }
        Engine {
            model,
            scopes,
            watchers,
        }
    }

    fn fixpoint(
        &self,
        domains: &mut [Domain],
        seeds: impl IntoIterator<Item = usize>,
        stats: &mut Stats,
    ) -> Result<(), Wipeout> {
        let constraints = self.model.constraints();
        let mut queued = vec![false; constraints.len()];
        let mut queue = VecDeque::new();
        for c in seeds {
            if !queued[c] {
                queued[c] = true;
                queue.push_back(c);
            }
        }
        let mut before = Vec::new();
        while let Some(ci) = queue.pop_front() {
            queued[ci] = false;
            stats.propagations += 1;
            before.clear();
            before.extend(self.scopes[ci].iter().map(|&v| domains[v]));
            if !constraints[ci].propagate(domains)? {
                continue;
            }
            for (&v, &old) in self.scopes[ci].iter().zip(&before) {
                if domains[v] == old {
                    continue;
                }
                if domains[v].is_empty() {
                    return Err(Wipeout);
                }
                for &other in &self.watchers[v] {
                    if other != ci && !queued[other] {
                        queued[other] = true;
                        queue.push_back(other);
                    }
                }
            }
        }
        Ok(())
    }
}

/// Runs every constraint's filter until no domain changes.
pub fn propagate_fixpoint(model: &Model) -> Outcome {
    let mut domains = model.domains().to_vec();
    let mut stats = Stats::default();
    propagate_from(model, &mut domains, &mut stats).map(|_| domains).into()
}

/// Fixpoint propagation starting from explicit domains.
pub fn propagate_from(model: &Model, domains: &mut [Domain], stats: &mut Stats) -> Result<(), Wipeout> {
    if domains.iter().any(|d| d.is_empty()) {
        return Err(Wipeout);
    }
    let engine = Engine::new(model);
    engine.fixpoint(domains, 0..model.constraints().len(), stats)
}

struct Search<'e, 'm> {
    engine: &'e Engine<'m>,
    config: SearchConfig,
    stats: Stats,
    solutions: Vec<Vec<Value>>,
    out_of_budget: bool,
}

impl Search<'_, '_> {
    fn done(&self) -> bool {
        self.out_of_budget || self.config.limit.is_some_and(|l| self.solutions.len() >= l)
    }

    fn dfs(&mut self, domains: Vec<Domain>) {
        if self.config.node_budget.is_some_and(|b| self.stats.nodes >= b) {
            self.out_of_budget = true;
            return;
        }
        self.stats.nodes += 1;
        let Some(var) = domains.iter().position(|d| d.len() > 1) else {
            let assignment: Vec<Value> = domains.iter().map(|d| d.min().unwrap()).collect();
            // every propagator is sound and complete on fixed scopes, this is a safety net
            if self.engine.model.constraints().iter().all(|c| c.check(&assignment)) {
                self.solutions.push(assignment);
            }
            return;
        };
        for value in domains[var] {
            if self.done() {
                return;
            }
            let mut child = domains.clone();
            child[var] = Domain::singleton(value);
            let seeds = self.engine.watchers[var].iter().copied();
            if self.engine.fixpoint(&mut child, seeds, &mut self.stats).is_ok() {
                self.dfs(child);
            }
        }
    }
}

/// Depth-first search with propagation at every node.
pub fn solve(model: &Model, config: &SearchConfig) -> SearchResult {
    let engine = Engine::new(model);
    let mut search = Search {
        engine: &engine,
        config: *config,
        stats: Stats::default(),
        solutions: Vec::new(),
        out_of_budget: false,
    };
    let mut root = model.domains().to_vec();
    if config.limit != Some(0)
        && engine
            .fixpoint(&mut root, 0..model.constraints().len(), &mut search.stats)
            .is_ok()
    {
        search.dfs(root);
    }
    let status = if !search.solutions.is_empty() {
        Status::Satisfiable
    } else if search.out_of_budget {
        Status::Unknown
    } else {
        Status::Unsatisfiable
    };
    SearchResult {
        status,
        solutions: search.solutions,
        stats: search.stats,
        budget_exhausted: search.out_of_budget,
    }
}
