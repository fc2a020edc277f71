//! Permutation groups acting on the points `1..=n`.
//!
//! Points are 1-based at every public boundary (constructors, [`Permutation::image`],
//! text forms). Internally images are stored 0-based; the conversion happens in the
//! constructors and accessors only.
//!
//! Two text forms are supported:
//!
//! - image lists, `perm[2,3,4,1]`, where the k-th entry is the image of point k;
//! - cycle notation, `(1 2)(3 4)`. Entries inside a cycle may be separated by spaces
//!   or commas, so `(1,2)` is the transposition of 1 and 2. Note that the 4-cycle
//!   `(2,3,4,1)` read as a cycle maps 1→2, 2→3, 3→4, 4→1, which is the same
//!   permutation as the image list `perm[2,3,4,1]`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::csp::Value;

/// Default element cap for [`closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// Groups up to this order are enumerated when picking canonical strong generators.
const SGS_ENUMERATION_CAP: u128 = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image list is not a bijection on 1..={degree}")]
    NotBijection { degree: usize },
    #[error("point {point} outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureCap { cap: usize },
    #[error("base must be a permutation of 1..={degree}")]
    MalformedBase { degree: usize },
    #[error("value {value} outside the permuted values 1..={degree}")]
    ValueOutOfRange { value: Value, degree: usize },
    #[error("tuple has length {found}, group degree is {expected}")]
    TupleLength { expected: usize, found: usize },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// A bijection on `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // images[i] is the 0-based image of 0-based point i
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its 1-based image list.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        let mut out = Vec::with_capacity(degree);
        for &img in images {
            if img == 0 || img > degree || seen[img - 1] {
                return Err(PermError::NotBijection { degree });
            }
            seen[img - 1] = true;
            out.push((img - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    /// Builds a permutation of the given degree from disjoint 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (idx, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if touched[p - 1] {
                    return Err(PermError::NotBijection { degree });
                }
                touched[p - 1] = true;
                images[p - 1] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images)
    }

    /// Transposition of two distinct points.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self, PermError> {
        Permutation::from_cycles(degree, &[vec![a, b]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    ///
    /// Panics if the point is outside `1..=degree`.
    pub fn image(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub(crate) fn apply0(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as u32 == img)
    }

    /// The product `self ∘ other`, mapping `i` to `self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// Pads with fixed points up to `degree`.
    pub fn extended(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree.max(self.degree()) as u32);
        Permutation { images }
    }

    /// Non-trivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Image-list text form, `perm[2,3,4,1]`.
    pub fn to_image_list(&self) -> String {
        let body: Vec<String> = self.images().iter().map(|i| format!("{i}")).collect();
        format!("perm[{}]", body.join(","))
    }

    /// Parses either text form; cycle notation takes its degree from `degree` if given,
    /// otherwise from the largest point mentioned.
    pub fn parse_with_degree(text: &str, degree: Option<usize>) -> Result<Permutation, PermError> {
        let parsed = parse_permutation(text, 0)?;
        let natural = parsed.degree();
        match (parsed, degree) {
            (Parsed::Images(images), Some(d)) if images.len() != d => Err(PermError::DegreeMismatch {
                left: images.len(),
                right: d,
            }),
            (Parsed::Images(images), _) => Permutation::from_images(&images),
            (Parsed::Cycles(cycles), d) => {
                let d = d.unwrap_or(natural);
                if natural > d {
                    return Err(PermError::PointOutOfRange {
                        point: natural,
                        degree: d,
                    });
                }
                Permutation::from_cycles(d, &cycles)
            }
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_image_list())
    }
}

/// Cycle notation; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Permutation::parse_with_degree(s, None)
    }
}

enum Parsed {
    Images(Vec<usize>),
    Cycles(Vec<Vec<usize>>),
}

impl Parsed {
    fn degree(&self) -> usize {
        match self {
            Parsed::Images(images) => images.len(),
            Parsed::Cycles(cycles) => cycles.iter().flatten().copied().max().unwrap_or(0),
        }
    }
}

fn parse_error(column: usize, message: &str) -> PermError {
    PermError::Parse {
        column: column + 1,
        message: String::from(message),
    }
}

/// `offset` is the column of `text` inside a larger line, for error reporting.
fn parse_permutation(text: &str, offset: usize) -> Result<Parsed, PermError> {
    let lead = text.len() - text.trim_start().len();
    let trimmed = text.trim();
    let base = offset + lead;
    if let Some(rest) = trimmed.strip_prefix("perm[") {
        let body = rest
            .strip_suffix(']')
            .ok_or_else(|| parse_error(base + trimmed.len(), "expected `]`"))?;
        let mut images = Vec::new();
        let mut col = base + 5;
        for item in body.split(',') {
            let item_trim = item.trim();
            let value = item_trim
                .parse::<usize>()
                .map_err(|_| parse_error(col, "expected a positive integer"))?;
            images.push(value);
            col += item.len() + 1;
        }
        return Ok(Parsed::Images(images));
    }
    if trimmed.eq_ignore_ascii_case("id") || trimmed.eq_ignore_ascii_case("identity") {
        return Ok(Parsed::Cycles(Vec::new()));
    }
    let bytes = trimmed.as_bytes();
    let mut cycles = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' => i += 1,
            b'(' => {
                let close = trimmed[i..]
                    .find(')')
                    .map(|c| c + i)
                    .ok_or_else(|| parse_error(base + i, "unclosed `(`"))?;
                let inner = &trimmed[i + 1..close];
                let mut cycle = Vec::new();
                let mut col = base + i + 1;
                for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
                    if !tok.is_empty() {
                        let value = tok
                            .parse::<usize>()
                            .map_err(|_| parse_error(col, "expected a positive integer"))?;
                        if value == 0 {
                            return Err(parse_error(col, "points are 1-based"));
                        }
                        cycle.push(value);
                    }
                    col += tok.len() + 1;
                }
                if cycle.len() > 1 {
                    cycles.push(cycle);
                }
                i = close + 1;
            }
            _ => return Err(parse_error(base + i, "expected `(` or `perm[`")),
        }
    }
    Ok(Parsed::Cycles(cycles))
}

/// Whether a symmetry permutes variable positions or domain values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryKind {
    Variable,
    Value,
}

/// A list of generators of a common degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    degree: usize,
    generators: Vec<Permutation>,
}

impl GeneratingSet {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch {
                left: bad.degree(),
                right: degree,
            });
        }
        Ok(GeneratingSet { degree, generators })
    }

    /// Parses a `;`-separated list such as `(1 2);perm[2,3,4,1]`. The degree is the
    /// largest degree among image lists and points mentioned in cycles, raised to
    /// `min_degree` if given; shorter generators are padded with fixed points.
    pub fn parse(text: &str, min_degree: Option<usize>) -> Result<Self, PermError> {
        let mut parsed = Vec::new();
        let mut offset = 0;
        for part in text.split(';') {
            if !part.trim().is_empty() {
                parsed.push(parse_permutation(part, offset)?);
            }
            offset += part.len() + 1;
        }
        let degree = parsed.iter().map(Parsed::degree).chain(min_degree).max().unwrap_or(0);
        let generators = parsed
            .into_iter()
            .map(|p| match p {
                Parsed::Images(images) => Permutation::from_images(&images).map(|g| g.extended(degree)),
                Parsed::Cycles(cycles) => Permutation::from_cycles(degree, &cycles),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GeneratingSet { degree, generators })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Generators other than the identity.
    pub fn non_identity(&self) -> impl Iterator<Item = &Permutation> {
        self.generators.iter().filter(|g| !g.is_identity())
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

impl fmt::Display for GeneratingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Every element of `<g>`, by breadth-first right multiplication, sorted.
pub fn closure(g: &GeneratingSet, cap: usize) -> Result<Vec<Permutation>, PermError> {
    let id = Permutation::identity(g.degree());
    let mut seen = BTreeSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in g.non_identity() {
            let y = x.compose_unchecked(s);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(PermError::ClosureCap { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// One level of a stabilizer chain: the subgroup fixing the earlier base points,
/// acting on this level's base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    base_point: usize,
    generators: Vec<Permutation>,
    // orbit point (0-based) -> element mapping the base point onto it
    transversal: BTreeMap<u32, Permutation>,
}

impl Level {
    pub fn base_point(&self) -> usize {
        self.base_point
    }

    /// Strong generators lying in this level's subgroup.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Orbit of the base point, 1-based and sorted.
    pub fn orbit(&self) -> Vec<usize> {
        self.transversal.keys().map(|&p| p as usize + 1).collect()
    }

    /// Coset representative mapping the base point to `point` (1-based).
    pub fn representative(&self, point: usize) -> Option<&Permutation> {
        self.transversal.get(&(point as u32 - 1))
    }
}

/// Base, strong generating set and transversals for a permutation group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerChain {
    degree: usize,
    base: Vec<usize>,
    levels: Vec<Level>,
    order: u128,
}

impl StabilizerChain {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Group order (product of the orbit lengths).
    pub fn order(&self) -> u128 {
        self.order
    }

    /// The strong generating set: generators of the top level, which contain those of
    /// every deeper level.
    pub fn strong_generators(&self) -> &[Permutation] {
        self.levels.first().map(|l| l.generators.as_slice()).unwrap_or(&[])
    }

    /// Sifts `p` through the chain; returns the residue and the level where sifting
    /// stopped (`levels().len()` when it went all the way through).
    pub fn sift(&self, p: &Permutation) -> (Permutation, usize) {
        let mut h = p.clone();
        for (idx, level) in self.levels.iter().enumerate() {
            let beta = h.apply0(level.base_point as u32 - 1);
            match level.transversal.get(&beta) {
                Some(u) => h = u.inverse().compose_unchecked(&h),
                None => return (h, idx),
            }
        }
        (h, self.levels.len())
    }
}

fn orbit_transversal(base_point: u32, gens: &[Permutation], degree: usize) -> BTreeMap<u32, Permutation> {
    let mut trans = BTreeMap::new();
    trans.insert(base_point, Permutation::identity(degree));
    let mut queue = VecDeque::from([base_point]);
    while let Some(beta) = queue.pop_front() {
        let u_beta = trans[&beta].clone();
        for s in gens {
            let gamma = s.apply0(beta);
            if let alloc::collections::btree_map::Entry::Vacant(e) = trans.entry(gamma) {
                e.insert(s.compose_unchecked(&u_beta));
                queue.push_back(gamma);
            }
        }
    }
    trans
}

fn strip(g: &Permutation, from: usize, base: &[u32], trans: &[BTreeMap<u32, Permutation>]) -> (Permutation, usize) {
    let mut h = g.clone();
    for l in from..base.len() {
        let beta = h.apply0(base[l]);
        match trans[l].get(&beta) {
            Some(u) => h = u.inverse().compose_unchecked(&h),
            None => return (h, l),
        }
    }
    (h, base.len())
}

/// Deterministic Schreier–Sims for a full base (a permutation of all points).
///
/// The returned chain carries a canonical strong generating set: built from the
/// deepest level upwards, each level adds the lexicographically least (by image list)
/// group element that extends the orbit of its base point, until the orbit is complete.
pub fn schreier_sims(g: &GeneratingSet, base: &[usize]) -> Result<StabilizerChain, PermError> {
    let degree = g.degree();
    let mut seen = vec![false; degree];
    if base.len() != degree {
        return Err(PermError::MalformedBase { degree });
    }
    for &b in base {
        if b == 0 || b > degree || seen[b - 1] {
            return Err(PermError::MalformedBase { degree });
        }
        seen[b - 1] = true;
    }
    let base0: Vec<u32> = base.iter().map(|&b| b as u32 - 1).collect();
    let k = base0.len();

    let mut gens: Vec<Vec<Permutation>> = vec![Vec::new(); k];
    for s in g.non_identity() {
        for (l, &b) in base0.iter().enumerate() {
            gens[l].push(s.clone());
            if s.apply0(b) != b {
                break;
            }
        }
    }
    let mut trans: Vec<BTreeMap<u32, Permutation>> = vec![BTreeMap::new(); k];
    for l in 0..k {
        trans[l] = orbit_transversal(base0[l], &gens[l], degree);
    }

    let mut i = k as isize - 1;
    while i >= 0 {
        let lvl = i as usize;
        trans[lvl] = orbit_transversal(base0[lvl], &gens[lvl], degree);
        let mut restart = None;
        'scan: for (&beta, u_beta) in trans[lvl].iter() {
            for s in &gens[lvl] {
                let gamma = s.apply0(beta);
                let u_gamma = &trans[lvl][&gamma];
                let schreier = u_gamma.inverse().compose_unchecked(&s.compose_unchecked(u_beta));
                let (h, j) = strip(&schreier, lvl + 1, &base0, &trans);
                if !h.is_identity() {
                    // a full base means a non-identity residue always stops at some level
                    debug_assert!(j < k);
                    restart = Some((h, j));
                    break 'scan;
                }
            }
        }
        match restart {
            Some((h, j)) => {
                for level_gens in gens.iter_mut().take(j + 1).skip(lvl + 1) {
                    level_gens.push(h.clone());
                }
                i = j as isize;
            }
            None => i -= 1,
        }
    }

    let order = trans.iter().map(|t| t.len() as u128).product();
    let canonical = canonical_strong_generators(degree, &base0, &trans);

    let levels = (0..k)
        .map(|l| Level {
            base_point: base[l],
            transversal: orbit_transversal(base0[l], &canonical[l], degree),
            generators: canonical[l].clone(),
        })
        .collect();
    Ok(StabilizerChain {
        degree,
        base: base.to_vec(),
        levels,
        order,
    })
}

fn canonical_strong_generators(
    degree: usize,
    base0: &[u32],
    trans: &[BTreeMap<u32, Permutation>],
) -> Vec<Vec<Permutation>> {
    let k = base0.len();
    let mut per_level: Vec<Vec<Permutation>> = vec![Vec::new(); k];
    let mut current: Vec<Permutation> = Vec::new();
    // elements of the subgroup below the level being processed, while small enough
    let mut below: Option<Vec<Permutation>> = Some(vec![Permutation::identity(degree)]);
    let mut below_order: u128 = 1;

    for l in (0..k).rev() {
        let level_order = below_order * trans[l].len() as u128;
        let elements = match &below {
            Some(sub) if level_order <= SGS_ENUMERATION_CAP => {
                let mut all: Vec<Permutation> = trans[l]
                    .values()
                    .flat_map(|u| sub.iter().map(move |h| u.compose_unchecked(h)))
                    .collect();
                all.sort();
                Some(all)
            }
            _ => None,
        };
        let target: BTreeSet<u32> = trans[l].keys().copied().collect();
        loop {
            let orbit: BTreeSet<u32> = orbit_transversal(base0[l], &current, degree).into_keys().collect();
            if orbit == target {
                break;
            }
            let pick = match &elements {
                Some(all) => all
                    .iter()
                    .find(|g| !orbit.contains(&g.apply0(base0[l])))
                    .cloned()
                    .expect("orbit incomplete, so some element leaves it"),
                None => trans[l]
                    .iter()
                    .filter(|(p, _)| !orbit.contains(p))
                    .map(|(_, u)| u.clone())
                    .min()
                    .expect("orbit incomplete"),
            };
            current.push(pick);
        }
        per_level[l] = current.clone();
        below = elements;
        below_order = level_order;
    }
    per_level
}

/// Sifting membership test.
pub fn is_member(chain: &StabilizerChain, p: &Permutation) -> bool {
    if p.degree() != chain.degree {
        return false;
    }
    let (residue, _) = chain.sift(p);
    residue.is_identity()
}

fn group_order(degree: usize, gens: Vec<Permutation>) -> u128 {
    let set = GeneratingSet {
        degree,
        generators: gens,
    };
    let base: Vec<usize> = (1..=degree).collect();
    schreier_sims(&set, &base).map(|c| c.order()).unwrap_or(1)
}

/// True iff dropping any single non-identity generator strictly shrinks the group.
///
/// Group orders come from Schreier–Sims, so no closure cap applies.
pub fn is_irredundant(g: &GeneratingSet) -> bool {
    let gens: Vec<Permutation> = g.non_identity().cloned().collect();
    let full = group_order(g.degree(), gens.clone());
    (0..gens.len()).all(|skip| {
        let rest: Vec<Permutation> = gens
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, p)| p.clone())
            .collect();
        group_order(g.degree(), rest) < full
    })
}

/// Applies one symmetry to a full assignment.
///
/// A variable symmetry sends `X_i = d_i` to `X_{σ(i)} = d_i`; a value symmetry sends
/// every `X_i = d_i` to `X_i = θ(d_i)`, with values read as 1-based points.
pub fn act(kind: SymmetryKind, p: &Permutation, tuple: &[Value]) -> Result<Vec<Value>, PermError> {
    match kind {
        SymmetryKind::Variable => {
            if tuple.len() != p.degree() {
                return Err(PermError::TupleLength {
                    expected: p.degree(),
                    found: tuple.len(),
                });
            }
            let mut out = vec![0; tuple.len()];
            for (i, &d) in tuple.iter().enumerate() {
                out[p.apply0(i as u32) as usize] = d;
            }
            Ok(out)
        }
        SymmetryKind::Value => tuple
            .iter()
            .map(|&v| {
                if v == 0 || v as usize > p.degree() {
                    Err(PermError::ValueOutOfRange {
                        value: v,
                        degree: p.degree(),
                    })
                } else {
                    Ok(p.image(v as usize) as Value)
                }
            })
            .collect(),
    }
}

/// The orbit of an assignment under `<g>`, sorted (the first entry is the lex leader).
pub fn orbit_of_assignment(
    g: &GeneratingSet,
    kind: SymmetryKind,
    tuple: &[Value],
) -> Result<BTreeSet<Vec<Value>>, PermError> {
    if kind == SymmetryKind::Variable && tuple.len() != g.degree() {
        return Err(PermError::TupleLength {
            expected: g.degree(),
            found: tuple.len(),
        });
    }
    if kind == SymmetryKind::Value {
        if let Some(&v) = tuple.iter().find(|&&v| v == 0 || v as usize > g.degree()) {
            return Err(PermError::ValueOutOfRange {
                value: v,
                degree: g.degree(),
            });
        }
    }
    let mut orbit = BTreeSet::new();
    orbit.insert(tuple.to_vec());
    let mut queue = VecDeque::from([tuple.to_vec()]);
    while let Some(t) = queue.pop_front() {
        for s in g.non_identity() {
            let image = act(kind, s, &t)?;
            if orbit.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    Ok(orbit)
}
