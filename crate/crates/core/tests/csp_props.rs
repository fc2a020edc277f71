use proptest::prelude::*;
use symbreak::csp::{oracle_dc, propagate_fixpoint, solve, DEFAULT_ORACLE_CAP};
use symbreak::{
    ChainOrder, Constraint, Domain, LexChain, LexConstraint, Model, Outcome, SearchConfig, Status, Term, Value,
};

#[derive(Debug, Clone)]
enum Rule {
    Eq(usize, Value),
    Leq(usize, usize),
    Lex(Vec<usize>, Vec<usize>, bool),
    Chain(Vec<Vec<usize>>),
}

fn rule(n: usize) -> impl Strategy<Value = Rule> {
    let var = 0..n;
    prop_oneof![
        (var.clone(), 0u32..=1).prop_map(|(v, x)| Rule::Eq(v, x)),
        (var.clone(), var.clone()).prop_map(|(a, b)| Rule::Leq(a, b)),
        (1usize..=3)
            .prop_flat_map(move |len| (
                proptest::collection::vec(0..n, len),
                proptest::collection::vec(0..n, len),
                any::<bool>()
            ))
            .prop_map(|(l, r, s)| Rule::Lex(l, r, s)),
        // chains need distinct variables: carve them out of a shuffled prefix
        (2usize..=3)
            .prop_flat_map(move |rows| {
                let rows = rows.min(n);
                (1..=(n / rows).min(2), Just(rows))
            })
            .prop_flat_map(move |(len, rows)| {
                Just((0..n).collect::<Vec<_>>())
                    .prop_shuffle()
                    .prop_map(move |vs| Rule::Chain(vs[..len * rows].chunks(len).map(<[usize]>::to_vec).collect()))
            }),
    ]
}

fn to_constraint(s: &Rule) -> Constraint {
    let terms = |vs: &[usize]| vs.iter().map(|&v| Term::Var(v)).collect::<Vec<_>>();
    match s {
        Rule::Eq(v, x) => Constraint::Eq { var: *v, value: *x },
        Rule::Leq(a, b) => Constraint::Leq { left: *a, right: *b },
        Rule::Lex(l, r, false) => LexConstraint::leq(terms(l), terms(r)).into(),
        Rule::Lex(l, r, true) => LexConstraint::lt(terms(l), terms(r)).into(),
        Rule::Chain(rows) => LexChain::new(rows.iter().map(|r| terms(r)).collect(), ChainOrder::Lex).into(),
    }
}

/// Direct evaluation of a constraint rule on a full assignment.
fn holds(s: &Rule, t: &[Value]) -> bool {
    let pick = |vs: &[usize]| vs.iter().map(|&v| t[v]).collect::<Vec<_>>();
    match s {
        Rule::Eq(v, x) => t[*v] == *x,
        Rule::Leq(a, b) => t[*a] <= t[*b],
        Rule::Lex(l, r, strict) => {
            if *strict {
                pick(l) < pick(r)
            } else {
                pick(l) <= pick(r)
            }
        }
        Rule::Chain(rows) => rows.windows(2).all(|w| pick(&w[0]) <= pick(&w[1])),
    }
}

fn model_case(max_vars: usize) -> impl Strategy<Value = (usize, Vec<Rule>)> {
    (1..=max_vars).prop_flat_map(|n| (Just(n), proptest::collection::vec(rule(n), 0..=5)))
}

fn build(n: usize, specs: &[Rule]) -> Model {
    let mut m = Model::from_domains(&vec![Domain::BOOL; n]).unwrap();
    m.post_all(specs.iter().map(to_constraint)).unwrap();
    m
}

fn enumerate(n: usize, specs: &[Rule]) -> Vec<Vec<Value>> {
    (0u32..1 << n)
        .map(|b| (0..n).map(|i| b >> i & 1).collect::<Vec<Value>>())
        .filter(|t| specs.iter().all(|s| holds(s, t)))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn search_finds_exactly_the_enumerated_solutions((n, specs) in model_case(12)) {
        let m = build(n, &specs);
        let r = solve(&m, &SearchConfig::all());
        let mut got = r.solutions.clone();
        got.sort();
        let mut want = enumerate(n, &specs);
        want.sort();
        prop_assert_eq!(r.status == Status::Satisfiable, !want.is_empty());
        prop_assert_eq!(got, want);
    }

    #[test]
    fn oracle_refines_fixpoint_and_is_idempotent((n, specs) in model_case(8)) {
        let m = build(n, &specs);
        let weak = propagate_fixpoint(&m);
        let strong = oracle_dc(&m, DEFAULT_ORACLE_CAP).unwrap();
        match (&weak, &strong) {
            (Outcome::Consistent(w), Outcome::Consistent(s)) => {
                for (a, b) in s.iter().zip(w) {
                    prop_assert!(a.is_subset(*b));
                }
                let again = oracle_dc(&m.with_domains(s).unwrap(), DEFAULT_ORACLE_CAP).unwrap();
                prop_assert_eq!(&again, &strong);
            }
            (Outcome::Wipeout, s) => prop_assert!(s.is_wipeout()),
            (Outcome::Consistent(_), Outcome::Wipeout) => {}
        }
    }

    #[test]
    fn fixpoint_ignores_constraint_order((n, specs) in model_case(8), seed in any::<u64>()) {
        let mut shuffled = specs.clone();
        let len = shuffled.len();
        if len > 1 {
            for i in 0..len {
                shuffled.swap(i, (seed as usize).wrapping_mul(i + 7) % len);
            }
        }
        prop_assert_eq!(propagate_fixpoint(&build(n, &specs)), propagate_fixpoint(&build(n, &shuffled)));
    }
}

#[test]
fn completeness_at_sixteen_variables() {
    // X1 <= X2 <= ... <= X16 has 17 solutions
    let n = 16;
    let specs: Vec<Rule> = (0..n - 1).map(|i| Rule::Leq(i, i + 1)).collect();
    let m = build(n, &specs);
    let r = solve(&m, &SearchConfig::all());
    assert_eq!(r.solutions, enumerate(n, &specs));
    assert_eq!(r.solutions.len(), 17);
    let free = solve(&build(n, &[]), &SearchConfig::all());
    assert_eq!(free.solutions.len(), 1 << 16);
}

#[test]
fn four_boolean_models() {
    // X1 <= X2 plus the rotation constraint admits a pattern and its rotation
    let x = |i| Term::Var(i);
    let mut m = Model::from_domains(&[Domain::BOOL; 4]).unwrap();
    m.post(Constraint::Leq { left: 0, right: 1 }).unwrap();
    m.post(LexConstraint::leq(
        vec![x(0), x(1), x(2), x(3)],
        vec![x(1), x(2), x(3), x(0)],
    ))
    .unwrap();
    let sols = solve(&m, &SearchConfig::all()).solutions;
    assert!(sols.contains(&vec![0, 1, 0, 1]));
    assert!(sols.contains(&vec![0, 0, 1, 1]));

    let mut m = Model::from_domains(&[Domain::BOOL; 4]).unwrap();
    for i in 0..3 {
        m.post(Constraint::Leq { left: i, right: i + 1 }).unwrap();
    }
    let sols = solve(&m, &SearchConfig::all()).solutions;
    assert_eq!(
        sols,
        vec![
            vec![0, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 1],
            vec![0, 1, 1, 1],
            vec![1, 1, 1, 1]
        ]
    );
}

#[test]
fn oracle_cap_is_enforced() {
    let m = Model::from_domains(&[Domain::BOOL; 10]).unwrap();
    assert!(oracle_dc(&m, 1 << 9).is_err());
    assert!(oracle_dc(&m, 1 << 10).is_ok());
}
