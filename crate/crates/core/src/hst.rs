//! Complexity bookkeeping for generalised Heegaard splittings.
//!
//! Surfaces are multisets of components `(closed_chi, punctures)`. A splitting is an
//! alternating sequence of thin (even index) and thick (odd index) levels. The
//! complexity of a surface is `sum (2 - chi)^2` over its components, with punctures
//! subtracted from `chi` in the relative version; a splitting's complexity is the
//! non-increasing list of its thick levels' complexities, compared lexicographically.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(i64, u64)", into = "(i64, u64)")]
pub struct Component {
    pub closed_chi: i64,
    pub punctures: u64,
}

impl Component {
    pub fn new(closed_chi: i64, punctures: u64) -> Result<Component> {
        if closed_chi > 2 || closed_chi % 2 != 0 {
            return Err(Error::Invalid(format!(
                "closed Euler characteristic must be even and at most 2, got {closed_chi}"
            )));
        }
        Ok(Component { closed_chi, punctures })
    }

    pub fn sphere(punctures: u64) -> Component {
        Component { closed_chi: 2, punctures }
    }

    pub fn punctured_chi(&self) -> i64 {
        self.closed_chi - self.punctures as i64
    }

    pub fn complexity(&self, relative: bool) -> u64 {
        let chi = if relative { self.punctured_chi() } else { self.closed_chi };
        let d = (2 - chi) as u64;
        d * d
    }
}

impl TryFrom<(i64, u64)> for Component {
    type Error = Error;
    fn try_from((chi, p): (i64, u64)) -> Result<Component> {
        Component::new(chi, p)
    }
}

impl From<Component> for (i64, u64) {
    fn from(c: Component) -> Self {
        (c.closed_chi, c.punctures)
    }
}

/// A multiset of components. Component order is kept so moves can address them, but
/// equality ignores it.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbstractSurface {
    pub components: Vec<Component>,
}

impl AbstractSurface {
    pub fn new(components: Vec<Component>) -> AbstractSurface {
        AbstractSurface { components }
    }

    pub fn empty() -> AbstractSurface {
        AbstractSurface::default()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    fn sorted(&self) -> Vec<Component> {
        let mut v = self.components.clone();
        v.sort();
        v
    }

    pub fn canonical(&self) -> AbstractSurface {
        AbstractSurface { components: self.sorted() }
    }
}

impl PartialEq for AbstractSurface {
    fn eq(&self, other: &Self) -> bool {
        self.sorted() == other.sorted()
    }
}

impl Eq for AbstractSurface {}

impl std::hash::Hash for AbstractSurface {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.sorted().hash(state)
    }
}

pub fn c_surface(f: &AbstractSurface, relative: bool) -> u64 {
    f.components.iter().map(|c| c.complexity(relative)).sum()
}

/// Thick-level complexities, non-increasing. Ordered lexicographically, with a proper
/// prefix smaller than its extensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexityVector(pub Vec<u64>);

impl ComplexityVector {
    pub fn new(mut entries: Vec<u64>) -> ComplexityVector {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        ComplexityVector(entries)
    }
}

impl fmt::Display for ComplexityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn compare_complexity(a: &ComplexityVector, b: &ComplexityVector) -> Ordering {
    a.cmp(b)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbstractSplitting {
    pub levels: Vec<AbstractSurface>,
}

impl AbstractSplitting {
    pub fn new(levels: Vec<AbstractSurface>) -> Result<AbstractSplitting> {
        let s = AbstractSplitting { levels };
        s.validate()?;
        Ok(s)
    }

    /// Checks the alternation invariants: odd length and nonempty thick levels.
    pub fn validate(&self) -> Result<()> {
        if self.levels.len().is_multiple_of(2) {
            return Err(Error::Invalid(format!(
                "a splitting alternates thin and thick levels and has odd length, got {}",
                self.levels.len()
            )));
        }
        if let Some(p) = (1..self.levels.len()).step_by(2).find(|&p| self.levels[p].is_empty()) {
            return Err(Error::Invalid(format!("thick level {p} is empty")));
        }
        Ok(())
    }

    pub fn thick_indices(&self) -> impl Iterator<Item = usize> {
        (1..self.levels.len()).step_by(2)
    }

    fn canonical(&self) -> AbstractSplitting {
        AbstractSplitting { levels: self.levels.iter().map(AbstractSurface::canonical).collect() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("splittings always serialise")
    }

    pub fn from_json(text: &str) -> Result<AbstractSplitting> {
        let s: AbstractSplitting =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("splitting JSON: {e}")))?;
        s.validate()?;
        Ok(s)
    }
}

pub fn splitting_complexity(s: &AbstractSplitting, relative: bool) -> ComplexityVector {
    ComplexityVector::new(s.thick_indices().map(|p| c_surface(&s.levels[p], relative)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CompressKind {
    Nonseparating,
    /// Cuts the component in two; the punctures are split as given.
    Separating { chi1: i64, chi2: i64, punctures1: u64, punctures2: u64 },
    Relative,
}

/// A compression of one component of a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Compression {
    pub component: usize,
    #[serde(flatten)]
    pub kind: CompressKind,
}

/// Compresses one component in place. A separating compression puts the first piece in
/// place and appends the second.
pub fn compress(f: &AbstractSurface, component: usize, kind: CompressKind) -> Result<AbstractSurface> {
    let c = *f
        .components
        .get(component)
        .ok_or_else(|| Error::Precondition(format!("component {component} does not exist")))?;
    let mut out = f.clone();
    match kind {
        CompressKind::Nonseparating => {
            if c.closed_chi > 0 {
                return Err(Error::Precondition("a sphere has no essential compression".into()));
            }
            out.components[component].closed_chi += 2;
        }
        CompressKind::Separating { chi1, chi2, punctures1, punctures2 } => {
            if chi1 + chi2 != c.closed_chi + 2 {
                return Err(Error::Precondition(format!(
                    "separating pieces must have chi summing to {}, got {chi1} + {chi2}",
                    c.closed_chi + 2
                )));
            }
            if chi1 > 0 || chi2 > 0 {
                return Err(Error::Precondition("essentiality: a separating compression may not cut off a sphere".into()));
            }
            if punctures1 + punctures2 != c.punctures {
                return Err(Error::Precondition(format!(
                    "punctures must split {} as {punctures1} + {punctures2}",
                    c.punctures
                )));
            }
            out.components[component] = Component::new(chi1, punctures1)?;
            out.components.push(Component::new(chi2, punctures2)?);
        }
        CompressKind::Relative => {
            if c.punctures < 2 {
                return Err(Error::Precondition("a relative compression needs at least two punctures".into()));
            }
            if c.punctured_chi() > 0 {
                return Err(Error::Precondition("essentiality: punctured chi must be at most 0".into()));
            }
            out.components[component].punctures -= 2;
        }
    }
    Ok(out)
}

/// Every legal compression of `f`, in a fixed order. Relative compressions are included
/// only when `relative` is set.
pub fn legal_compressions(f: &AbstractSurface, relative: bool) -> Vec<Compression> {
    let mut out = Vec::new();
    for (i, c) in f.components.iter().enumerate() {
        if c.closed_chi <= 0 {
            out.push(Compression { component: i, kind: CompressKind::Nonseparating });
        }
        // chi1 + chi2 = chi + 2 with both at most 0 and even.
        let total = c.closed_chi + 2;
        let mut chi1 = 0;
        while chi1 >= total {
            let chi2 = total - chi1;
            if chi2 <= 0 && chi1 >= chi2 {
                for p1 in 0..=c.punctures {
                    let kind = CompressKind::Separating { chi1, chi2, punctures1: p1, punctures2: c.punctures - p1 };
                    out.push(Compression { component: i, kind });
                }
            }
            chi1 -= 2;
        }
        if relative && c.punctures >= 2 && c.punctured_chi() <= 0 {
            out.push(Compression { component: i, kind: CompressKind::Relative });
        }
    }
    out
}

/// Which of the four untangling cases applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UntangleCase {
    Neither,
    DMatchesBelow,
    EMatchesAbove,
    Both,
}

/// Replaces thick level `p` using a compression `d` on one side and `e` on the other.
///
/// `e` addresses components of the surface obtained after `d`, which keeps every index
/// but appends a second piece for separating moves. The flags must agree with the
/// surfaces actually produced.
pub fn untangle_step(
    s: &AbstractSplitting,
    p: usize,
    d: Compression,
    e: Compression,
    d_equals_below: bool,
    e_equals_above: bool,
) -> Result<AbstractSplitting> {
    s.validate()?;
    if p.is_multiple_of(2) || p + 1 >= s.levels.len() {
        return Err(Error::Precondition(format!("level {p} is not an interior thick level")));
    }
    let gp = &s.levels[p];
    let gd = compress(gp, d.component, d.kind)?;
    let ge = compress(gp, e.component, e.kind)?;
    let gde = compress(&gd, e.component, e.kind)?;
    if (gd == s.levels[p - 1]) != d_equals_below {
        return Err(Error::Precondition(format!(
            "flag says G_D {} the level below, but it {}",
            if d_equals_below { "equals" } else { "differs from" },
            if d_equals_below { "differs" } else { "is equal" }
        )));
    }
    if (ge == s.levels[p + 1]) != e_equals_above {
        return Err(Error::Precondition(format!(
            "flag says G_E {} the level above, but it {}",
            if e_equals_above { "equals" } else { "differs from" },
            if e_equals_above { "differs" } else { "is equal" }
        )));
    }
    let l = &s.levels;
    let levels: Vec<AbstractSurface> = match (d_equals_below, e_equals_above) {
        (false, false) => [&l[..p], &[gd, gde, ge][..], &l[p + 1..]].concat(),
        (true, false) => [&l[..p - 1], &[gde, ge][..], &l[p + 1..]].concat(),
        (false, true) => [&l[..p], &[gd, gde][..], &l[p + 2..]].concat(),
        (true, true) => [&l[..p - 1], &[gde][..], &l[p + 2..]].concat(),
    };
    AbstractSplitting::new(levels)
}

pub fn untangle_case(d_equals_below: bool, e_equals_above: bool) -> UntangleCase {
    match (d_equals_below, e_equals_above) {
        (false, false) => UntangleCase::Neither,
        (true, false) => UntangleCase::DMatchesBelow,
        (false, true) => UntangleCase::EMatchesAbove,
        (true, true) => UntangleCase::Both,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Underlying {
    pub splitting: AbstractSplitting,
    /// No thick level survived.
    pub degenerate: bool,
}

/// Drops sphere components, merges runs of equal levels and keeps the longest
/// alternating subsequence that still starts and ends at the original ends.
pub fn underlying_splitting(s: &AbstractSplitting) -> Underlying {
    let mut current = s.levels.clone();
    loop {
        let next = underlying_pass(&current);
        if next == current {
            break;
        }
        current = next;
    }
    let degenerate = current.len() < 3;
    Underlying { splitting: AbstractSplitting { levels: current }, degenerate }
}

fn underlying_pass(levels: &[AbstractSurface]) -> Vec<AbstractSurface> {
    let stripped: Vec<AbstractSurface> = levels
        .iter()
        .map(|l| AbstractSurface::new(l.components.iter().copied().filter(|c| c.closed_chi != 2).collect()))
        .collect();
    let mut merged: Vec<AbstractSurface> = Vec::new();
    for l in stripped {
        if merged.last() != Some(&l) {
            merged.push(l);
        }
    }
    longest_alternating(&merged)
}

/// Longest subsequence from the first level to the last of odd length, with nonempty
/// odd positions and no two equal neighbours. Ties go to the earliest indices. Falls
/// back to the first level alone when the ends cannot be joined.
fn longest_alternating(levels: &[AbstractSurface]) -> Vec<AbstractSurface> {
    let m = levels.len();
    if m == 0 {
        return vec![AbstractSurface::empty()];
    }
    // best[i][parity]: longest valid chain from i to the end, where i sits at a
    // position of that parity; stored as (length, next index).
    let mut best: Vec<[Option<(usize, usize)>; 2]> = vec![[None, None]; m];
    for i in (0..m).rev() {
        for parity in 0..2 {
            if parity == 1 && levels[i].is_empty() {
                continue;
            }
            if i == m - 1 {
                // The chain must end on an even position.
                if parity == 0 {
                    best[i][parity] = Some((1, usize::MAX));
                }
                continue;
            }
            let mut choice: Option<(usize, usize)> = None;
            for j in i + 1..m {
                if levels[j] == levels[i] {
                    continue;
                }
                if let Some((len, _)) = best[j][1 - parity] {
                    if choice.is_none_or(|(l, _)| len + 1 > l) {
                        choice = Some((len + 1, j));
                    }
                }
            }
            best[i][parity] = choice;
        }
    }
    match best[0][0] {
        Some(_) => {
            let mut out = Vec::new();
            let (mut i, mut parity) = (0, 0);
            loop {
                out.push(levels[i].clone());
                let (_, next) = best[i][parity].unwrap();
                if next == usize::MAX {
                    break;
                }
                i = next;
                parity = 1 - parity;
            }
            out
        }
        None => vec![levels[0].clone()],
    }
}

/// Which rewrite families a search may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveFamilies {
    pub compress: bool,
    pub untangle: bool,
}

impl Default for MoveFamilies {
    fn default() -> Self {
        MoveFamilies { compress: true, untangle: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    Compress { level: usize, compression: Compression },
    Untangle { level: usize, d: Compression, e: Compression, case: UntangleCase },
}

/// Every legal move from `s`, with its result, in a fixed order.
pub fn legal_moves(s: &AbstractSplitting, relative: bool, families: MoveFamilies) -> Vec<(Move, AbstractSplitting)> {
    let mut out = Vec::new();
    for p in s.thick_indices() {
        let gp = &s.levels[p];
        let options = legal_compressions(gp, relative);
        if families.compress {
            for &c in &options {
                let mut levels = s.levels.clone();
                levels[p] = compress(gp, c.component, c.kind).expect("legal compression");
                out.push((Move::Compress { level: p, compression: c }, AbstractSplitting { levels }));
            }
        }
        if families.untangle && p + 1 < s.levels.len() {
            for &d in &options {
                let gd = compress(gp, d.component, d.kind).expect("legal compression");
                let below = gd == s.levels[p - 1];
                for &e in &options {
                    let ge = compress(gp, e.component, e.kind).expect("legal compression");
                    if compress(&gd, e.component, e.kind).is_err() {
                        continue;
                    }
                    let above = ge == s.levels[p + 1];
                    if let Ok(next) = untangle_step(s, p, d, e, below, above) {
                        let case = untangle_case(below, above);
                        out.push((Move::Untangle { level: p, d, e, case }, next));
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Certified,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub complexity: ComplexityVector,
    pub splitting: AbstractSplitting,
    pub trace: Vec<Move>,
    pub states_expanded: u64,
}

/// Breadth-first search over compressions and untangling steps for the smallest
/// complexity reachable. Every move strictly lowers the complexity, so the search
/// space is finite; the budget caps the number of states expanded.
pub fn is_minimal_reachable(
    s: &AbstractSplitting,
    budget: u64,
    relative: bool,
    families: MoveFamilies,
) -> Result<SearchOutcome> {
    s.validate()?;
    let start = s.canonical();
    let mut parent: HashMap<AbstractSplitting, Option<(AbstractSplitting, Move)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start.clone()]);
    let mut best = (splitting_complexity(&start, relative), start.clone());
    let mut expanded = 0u64;
    let mut status = SearchStatus::Certified;
    while let Some(state) = queue.pop_front() {
        if expanded >= budget {
            status = SearchStatus::BudgetExhausted;
            break;
        }
        expanded += 1;
        for (mv, next) in legal_moves(&state, relative, families) {
            let next = next.canonical();
            if parent.contains_key(&next) {
                continue;
            }
            let c = splitting_complexity(&next, relative);
            if c < best.0 {
                best = (c, next.clone());
            }
            parent.insert(next.clone(), Some((state.clone(), mv)));
            queue.push_back(next);
        }
    }
    let mut trace = Vec::new();
    let mut cur = best.1.clone();
    while let Some(Some((prev, mv))) = parent.get(&cur) {
        trace.push(mv.clone());
        cur = prev.clone();
    }
    trace.reverse();
    Ok(SearchOutcome { status, complexity: best.0, splitting: best.1, trace, states_expanded: expanded })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn surf(cs: &[(i64, u64)]) -> AbstractSurface {
        AbstractSurface::new(cs.iter().map(|&(c, p)| Component::new(c, p).unwrap()).collect())
    }

    fn split(levels: &[&[(i64, u64)]]) -> AbstractSplitting {
        AbstractSplitting::new(levels.iter().map(|l| surf(l)).collect()).unwrap()
    }

    fn cv(v: &[u64]) -> ComplexityVector {
        ComplexityVector(v.to_vec())
    }

    #[test]
    fn surface_complexity() {
        assert_eq!(c_surface(&surf(&[(2, 0)]), false), 0);
        assert_eq!(c_surface(&surf(&[(0, 0)]), false), 4);
        assert_eq!(c_surface(&surf(&[(-2, 0)]), false), 16);
        assert_eq!(c_surface(&surf(&[(0, 3)]), true), 25);
        assert_eq!(c_surface(&surf(&[(0, 3)]), false), 4);
        assert!(Component::new(1, 0).is_err());
        assert!(Component::new(4, 0).is_err());
    }

    #[test]
    fn comparison() {
        assert_eq!(compare_complexity(&cv(&[4]), &cv(&[4, 0])), Ordering::Less);
        assert_eq!(compare_complexity(&cv(&[16, 4]), &cv(&[16, 3, 3])), Ordering::Greater);
        assert_eq!(compare_complexity(&cv(&[4, 4]), &cv(&[4, 4])), Ordering::Equal);
    }

    #[test]
    fn splitting_complexities() {
        assert_eq!(splitting_complexity(&split(&[&[], &[(-2, 0)], &[]]), false), cv(&[16]));
        let t: &[(i64, u64)] = &[(0, 0)];
        assert_eq!(splitting_complexity(&split(&[t, t, t]), false), cv(&[4]));
        let two = split(&[&[], &[(2, 0)], &[], &[(0, 0)], &[]]);
        assert_eq!(splitting_complexity(&two, false), cv(&[4, 0]));
    }

    #[test]
    fn compressions() {
        let torus = surf(&[(0, 0)]);
        let s = compress(&torus, 0, CompressKind::Nonseparating).unwrap();
        assert_eq!(s, surf(&[(2, 0)]));
        let g2 = surf(&[(-2, 0)]);
        let sep = CompressKind::Separating { chi1: 0, chi2: 0, punctures1: 0, punctures2: 0 };
        let two = compress(&g2, 0, sep).unwrap();
        assert_eq!((two.clone(), c_surface(&two, false)), (surf(&[(0, 0), (0, 0)]), 8));
        let punctured = surf(&[(0, 2)]);
        let r = compress(&punctured, 0, CompressKind::Relative).unwrap();
        assert_eq!((c_surface(&punctured, true), c_surface(&r, true)), (16, 4));
        assert!(compress(&surf(&[(2, 0)]), 0, CompressKind::Nonseparating).is_err());
        let cuts_sphere = CompressKind::Separating { chi1: 2, chi2: -2, punctures1: 0, punctures2: 0 };
        let err = compress(&g2, 0, cuts_sphere).unwrap_err();
        assert!(err.to_string().contains("essentiality"));
        assert!(compress(&surf(&[(2, 1)]), 0, CompressKind::Relative).is_err());
    }

    #[test]
    fn untangle_collapses_in_case_four() {
        let t: &[(i64, u64)] = &[(0, 0)];
        let s = split(&[&[], t, &[(-2, 0)], t, &[]]);
        let s2 = split(&[t, &[(-2, 0)], t]);
        let d = Compression { component: 0, kind: CompressKind::Nonseparating };
        let out = untangle_step(&s2, 1, d, d, true, true).unwrap();
        assert_eq!(out.levels, vec![surf(&[(2, 0)])]);
        assert!(splitting_complexity(&out, false) < splitting_complexity(&s2, false));
        assert!(untangle_step(&s, 2, d, d, false, false).is_err());
        assert!(untangle_step(&s2, 1, d, d, false, true).is_err());
    }

    #[test]
    fn untangle_case_one_splits() {
        let s = split(&[&[], &[(-2, 0)], &[]]);
        let d = Compression { component: 0, kind: CompressKind::Nonseparating };
        let out = untangle_step(&s, 1, d, d, false, false).unwrap();
        assert_eq!(out.levels.len(), 5);
        assert_eq!(splitting_complexity(&out, false), cv(&[4, 4]));
    }

    #[test]
    fn underlying_examples() {
        let spheres = split(&[&[(2, 0)], &[(2, 0)], &[(2, 0)]]);
        let u = underlying_splitting(&spheres);
        assert!(u.degenerate);
        assert_eq!(u.splitting.levels, vec![AbstractSurface::empty()]);
        let s = split(&[&[], &[(0, 0), (2, 0)], &[(0, 0)], &[(0, 0), (2, 0)], &[]]);
        let u = underlying_splitting(&s);
        assert_eq!(u.splitting, split(&[&[], &[(0, 0)], &[]]));
        assert!(!u.degenerate);
        let plain = split(&[&[], &[(-2, 0)], &[(0, 0)], &[(-4, 0)], &[]]);
        assert_eq!(underlying_splitting(&plain).splitting, plain);
    }

    #[test]
    fn search_examples() {
        let s = split(&[&[], &[(0, 0)], &[]]);
        let out = is_minimal_reachable(&s, 1000, false, MoveFamilies::default()).unwrap();
        assert_eq!(out.complexity, cv(&[0]));
        assert_eq!(out.status, SearchStatus::Certified);
        assert_eq!(out.trace.len(), 1);
        let sphere = split(&[&[], &[(2, 0)], &[]]);
        let out = is_minimal_reachable(&sphere, 1000, false, MoveFamilies::default()).unwrap();
        assert_eq!(out.splitting, sphere);
        assert!(out.trace.is_empty());
        let out = is_minimal_reachable(&s, 0, false, MoveFamilies::default()).unwrap();
        assert_eq!(out.status, SearchStatus::BudgetExhausted);
    }

    #[test]
    fn json_shape() {
        let s = split(&[&[], &[(-2, 0), (2, 1)], &[]]);
        assert_eq!(s.to_json(), "[[],[[-2,0],[2,1]],[]]");
        assert_eq!(AbstractSplitting::from_json("[[],[[-2,0],[2,1]],[]]").unwrap(), s);
        assert!(AbstractSplitting::from_json("[[],[],[]]").is_err());
        assert!(AbstractSplitting::from_json("[[[3,0]]]").is_err());
    }

    fn component() -> impl Strategy<Value = Component> {
        ((-4i64..=1).prop_map(|k| 2 * k), 0u64..4).prop_map(|(c, p)| Component::new(c, p).unwrap())
    }

    fn surface(min: usize) -> impl Strategy<Value = AbstractSurface> {
        proptest::collection::vec(component(), min..3).prop_map(AbstractSurface::new)
    }

    fn splitting() -> impl Strategy<Value = AbstractSplitting> {
        (0usize..3)
            .prop_flat_map(|n| {
                (surface(0), proptest::collection::vec((surface(1), surface(0)), n + 1))
            })
            .prop_map(|(first, rest)| {
                let mut levels = vec![first];
                for (thick, thin) in rest {
                    levels.push(thick);
                    levels.push(thin);
                }
                AbstractSplitting { levels }
            })
    }

    proptest! {
        #[test]
        fn order_is_total(a in proptest::collection::vec(0u64..5, 0..4), b in proptest::collection::vec(0u64..5, 0..4), c in proptest::collection::vec(0u64..5, 0..4)) {
            let (a, b, c) = (ComplexityVector::new(a), ComplexityVector::new(b), ComplexityVector::new(c));
            prop_assert_eq!(compare_complexity(&a, &b), compare_complexity(&b, &a).reverse());
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
        }

        #[test]
        fn underlying_is_idempotent(s in splitting()) {
            let once = underlying_splitting(&s).splitting;
            prop_assert_eq!(underlying_splitting(&once).splitting, once);
        }

        #[test]
        fn relative_matches_absolute_without_punctures(s in splitting()) {
            let mut closed = s.clone();
            for l in &mut closed.levels {
                for c in &mut l.components {
                    c.punctures = 0;
                }
            }
            prop_assert_eq!(splitting_complexity(&closed, true), splitting_complexity(&closed, false));
        }

        #[test]
        fn moves_descend(s in splitting(), relative in any::<bool>()) {
            let before = splitting_complexity(&s, relative);
            for (_, next) in legal_moves(&s, relative, MoveFamilies::default()) {
                prop_assert!(next.validate().is_ok());
                prop_assert!(splitting_complexity(&next, relative) < before);
            }
        }
    }
}
