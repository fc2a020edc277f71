use alloc::vec;
use alloc::vec::Vec;

use super::{CspError, Domain, Model, Outcome, Value};

/// Default cap on the number of assignments [`oracle_dc`] may enumerate.
pub const DEFAULT_ORACLE_CAP: u128 = 1 << 24;

/// Exhaustive domain consistency for the whole model: a value survives iff some full
/// solution of every constraint at once uses it.
pub fn oracle_dc(model: &Model, cap: u128) -> Result<Outcome, CspError> {
    let domains = model.domains();
    let size = domains
        .iter()
        .try_fold(1u128, |acc, d| acc.checked_mul(d.len() as u128))
        .unwrap_or(u128::MAX);
    if size > cap {
        return Err(CspError::OracleCap { size, cap });
    }
    let values: Vec<Vec<Value>> = domains.iter().map(|d| d.to_vec()).collect();
    let n = values.len();
    let mut supported = vec![Domain::EMPTY; n];
    let mut found = false;
    let mut idx = vec![0usize; n];
    let mut assignment: Vec<Value> = values.iter().map(|v| v[0]).collect();
    loop {
        if model.constraints().iter().all(|c| c.check(&assignment)) {
            found = true;
            for (s, &v) in supported.iter_mut().zip(&assignment) {
                s.insert(v);
            }
        }
        // odometer, last variable fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(if found {
                    Outcome::Consistent(supported)
                } else {
                    Outcome::Wipeout
                });
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < values[pos].len() {
                assignment[pos] = values[pos][idx[pos]];
                break;
            }
            idx[pos] = 0;
            assignment[pos] = values[pos][0];
        }
    }
}
