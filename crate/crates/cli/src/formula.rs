//! Text format for positive 1-in-3 SAT formulas.
//!
//! ```text
//! c comment lines start with c
//! p one3 4 2
//! 1 2 3
//! 1 2 4
//! ```
//!
//! The header gives the number of variables and clauses. Each clause line holds three
//! positive variable indices; a trailing `0` terminator is accepted.

use symbreak::reduction::Formula;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for FormulaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            write!(f, "formula: {}", self.message)
        } else {
            write!(f, "formula line {}: {}", self.line, self.message)
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> FormulaError {
    FormulaError {
        line,
        message: message.into(),
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, FormulaError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens[0] == "p" {
            if header.is_some() {
                return Err(err(line, "second header line"));
            }
            let [_, "one3", n, m] = tokens[..] else {
                return Err(err(line, "header must read `p one3 <n> <m>`"));
            };
            let n = n.parse().map_err(|_| err(line, format!("bad variable count `{n}`")))?;
            let m = m.parse().map_err(|_| err(line, format!("bad clause count `{m}`")))?;
            header = Some((n, m));
            continue;
        }
        if header.is_none() {
            return Err(err(line, "clause before the `p one3` header"));
        }
        let mut vars = tokens
            .iter()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| err(line, format!("`{t}` is not a positive integer")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if vars.len() == 4 && vars[3] == 0 {
            vars.pop();
        }
        let [a, b, c] = vars[..] else {
            return Err(err(line, format!("expected three variables, found {}", vars.len())));
        };
        clauses.push((line, [a, b, c]));
    }
    let (n, m) = header.ok_or_else(|| err(0, "missing `p one3 <n> <m>` header"))?;
    if clauses.len() != m {
        return Err(err(0, format!("header announces {m} clauses, found {}", clauses.len())));
    }
    for &(line, clause) in &clauses {
        if let Some(v) = clause.iter().find(|&&v| v == 0 || v > n) {
            return Err(err(line, format!("variable {v} outside 1..={n}")));
        }
        if clause[0] == clause[1] || clause[0] == clause[2] || clause[1] == clause[2] {
            return Err(err(line, "clause repeats a variable"));
        }
    }
    Formula::new(n, clauses.into_iter().map(|(_, c)| c).collect()).map_err(|e| err(0, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_running_example() {
        let f = parse_formula("c two clauses\np one3 4 2\n1 2 3\n1 2 4 0\n").unwrap();
        assert_eq!((f.n(), f.m()), (4, 2));
        assert_eq!(f.clauses(), [[1, 2, 3], [1, 2, 4]]);
    }

    #[test]
    fn reports_the_offending_line() {
        let cases = [
            ("p one3 3 1\n1 2\n", 2),
            ("p one3 3 1\n1 2 x\n", 2),
            ("1 2 3\n", 1),
            ("p cnf 3 1\n1 2 3\n", 1),
            ("p one3 3 1\n1 2 4\n", 2),
            ("p one3 3 1\n1 1 2\n", 2),
            ("p one3 3 2\n1 2 3\n", 0),
            ("", 0),
        ];
        for (text, line) in cases {
            assert_eq!(parse_formula(text).unwrap_err().line, line, "{text:?}");
        }
    }
}
