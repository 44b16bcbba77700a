//! Morse presentations of links and their width.
//!
//! A presentation lists critical events from bottom to top. `Birth(i)` creates two new
//! strands in slots `i, i + 1`; `Death(i)` joins strands `i, i + 1`. Between consecutive
//! events sits a regular level, and the profile records how many strands cross each.

use crate::error::{Error, Result};
use crate::hst::{AbstractSplitting, AbstractSurface, Component};
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "event", content = "slot")]
pub enum Event {
    Birth(usize),
    Death(usize),
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Birth(i) => write!(f, "B {i}"),
            Event::Death(i) => write!(f, "D {i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MorsePresentation {
    pub events: Vec<Event>,
}

impl MorsePresentation {
    pub fn new(events: Vec<Event>) -> Result<MorsePresentation> {
        let p = MorsePresentation { events };
        p.strand_counts()?;
        Ok(p)
    }

    /// Strand counts after each event, validating slots along the way.
    pub fn strand_counts(&self) -> Result<Vec<usize>> {
        let mut count = 0usize;
        let mut out = Vec::with_capacity(self.events.len());
        for (k, e) in self.events.iter().enumerate() {
            match *e {
                Event::Birth(i) => {
                    if i > count {
                        return Err(Error::Invalid(format!("event {k}: birth at slot {i} with only {count} strands")));
                    }
                    count += 2;
                }
                Event::Death(i) => {
                    if i + 1 >= count {
                        return Err(Error::Invalid(format!("event {k}: death at slot {i} with only {count} strands")));
                    }
                    count -= 2;
                }
            }
            out.push(count);
        }
        if count != 0 {
            return Err(Error::Invalid(format!("presentation ends with {count} strands")));
        }
        Ok(out)
    }

    /// Parses one event per line, `B i` or `D i`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<MorsePresentation> {
        let mut events = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |column: usize, message: String| Error::Syntax { line: n + 1, column, message };
            let mut parts = line.split_whitespace();
            let kind = parts.next().unwrap();
            let slot = parts
                .next()
                .ok_or_else(|| syntax(line.len() + 1, "missing slot".into()))?
                .parse::<usize>()
                .map_err(|_| syntax(kind.len() + 2, "slot must be a nonnegative integer".into()))?;
            if parts.next().is_some() {
                return Err(syntax(1, "expected `B i` or `D i`".into()));
            }
            events.push(match kind {
                "B" | "b" => Event::Birth(slot),
                "D" | "d" => Event::Death(slot),
                other => return Err(syntax(1, format!("unknown event `{other}`"))),
            });
        }
        MorsePresentation::new(events)
    }

    pub fn to_text(&self) -> String {
        self.events.iter().map(|e| format!("{e}\n")).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthProfile {
    /// Strand counts at the regular levels between consecutive events.
    pub profile: Vec<usize>,
    pub width: usize,
    pub thick: Vec<usize>,
    pub thin: Vec<usize>,
    /// The count drops to zero between two events: the presentation is split.
    pub interior_zero: bool,
}

pub fn width(p: &MorsePresentation) -> Result<WidthProfile> {
    let counts = p.strand_counts()?;
    let profile: Vec<usize> = counts[..counts.len().saturating_sub(1)].to_vec();
    let at = |j: isize| if j < 0 || j as usize >= profile.len() { 0 } else { profile[j as usize] };
    let mut thick = Vec::new();
    let mut thin = Vec::new();
    for j in 0..profile.len() {
        let (l, c, r) = (at(j as isize - 1), profile[j], at(j as isize + 1));
        if c > l && c > r {
            thick.push(j);
        } else if c < l && c < r {
            thin.push(j);
        }
    }
    Ok(WidthProfile {
        width: profile.iter().sum(),
        interior_zero: profile.contains(&0),
        profile,
        thick,
        thin,
    })
}

/// The splitting of `(S^3, K)` by level spheres: empty ends, then the thick and thin
/// levels in order, each a sphere punctured by the strands crossing it.
pub fn induced_splitting(p: &MorsePresentation) -> Result<AbstractSplitting> {
    let w = width(p)?;
    if w.thick.is_empty() {
        return Err(Error::Invalid("presentation has no thick level".into()));
    }
    let mut extrema: Vec<usize> = w.thick.iter().chain(&w.thin).copied().collect();
    extrema.sort_unstable();
    let mut levels = vec![AbstractSurface::empty()];
    levels.extend(
        extrema
            .into_iter()
            .map(|j| AbstractSurface::new(vec![Component::sphere(w.profile[j] as u64)])),
    );
    levels.push(AbstractSurface::empty());
    AbstractSplitting::new(levels)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exchange {
    pub presentation: MorsePresentation,
    pub width_before: usize,
    pub width_after: usize,
}

/// Moves a death below the birth immediately preceding it.
///
/// The birth at `birth` creates slots `i, i + 1`, and the death at `birth + 1` joins
/// slots `j, j + 1` in the numbering just after the birth. The two are independent when
/// these slot pairs are disjoint; then the death can happen first, and the level between
/// them loses four crossings.
pub fn exchange_move(p: &MorsePresentation, birth: usize, death: usize) -> Result<Exchange> {
    let before = width(p)?;
    if death != birth + 1 {
        return Err(Error::Precondition(format!("events {birth} and {death} are not adjacent")));
    }
    let (Some(&Event::Birth(i)), Some(&Event::Death(j))) = (p.events.get(birth), p.events.get(death)) else {
        return Err(Error::Precondition(format!("events {birth}, {death} are not a birth followed by a death")));
    };
    let swapped = if j > i + 1 {
        [Event::Death(j - 2), Event::Birth(i)]
    } else if j + 1 < i {
        [Event::Death(j), Event::Birth(i - 2)]
    } else {
        return Err(Error::Precondition(format!(
            "death at slot {j} shares a strand with the birth at slot {i}"
        )));
    };
    let mut events = p.events.clone();
    events[birth] = swapped[0];
    events[death] = swapped[1];
    let presentation = MorsePresentation::new(events)?;
    let after = width(&presentation)?;
    debug_assert!(after.width < before.width);
    Ok(Exchange { presentation, width_before: before.width, width_after: after.width })
}

/// Every legal exchange, as `(birth index, result)`.
pub fn legal_exchanges(p: &MorsePresentation) -> Vec<(usize, Exchange)> {
    (0..p.events.len().saturating_sub(1))
        .filter_map(|b| exchange_move(p, b, b + 1).ok().map(|x| (b, x)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchSpace {
    /// Presentations reachable by exchange moves.
    Exchanges,
    /// Every valid ordering of the same events, slots included.
    Reorderings,
    /// Every valid presentation with the same number of births.
    AllPresentations,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinSearch {
    pub space: SearchSpace,
    /// Only count presentations whose strand count never drops to zero in between.
    pub single_component: bool,
    pub budget: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinResult {
    pub min_width: Option<usize>,
    pub witness: Option<MorsePresentation>,
    pub certified: bool,
    pub states: u64,
}

/// Finds the narrowest presentation in the chosen space.
pub fn thin_position_search(p: &MorsePresentation, config: &ThinSearch) -> Result<ThinResult> {
    width(p)?;
    let admissible = |q: &MorsePresentation| {
        let w = width(q).expect("searched presentations are valid");
        (!config.single_component || !w.interior_zero).then_some(w.width)
    };
    let mut best: Option<(usize, MorsePresentation)> = None;
    let mut consider = |q: &MorsePresentation| {
        if let Some(w) = admissible(q) {
            if best.as_ref().is_none_or(|(b, bq)| (w, q) < (*b, bq)) {
                best = Some((w, q.clone()));
            }
        }
    };
    let mut states = 0u64;
    let mut certified = true;
    match config.space {
        SearchSpace::Exchanges => {
            let mut seen = HashSet::from([p.clone()]);
            let mut queue = VecDeque::from([p.clone()]);
            while let Some(q) = queue.pop_front() {
                if states >= config.budget {
                    certified = false;
                    break;
                }
                states += 1;
                consider(&q);
                for (_, x) in legal_exchanges(&q) {
                    if seen.insert(x.presentation.clone()) {
                        queue.push_back(x.presentation);
                    }
                }
            }
        }
        SearchSpace::Reorderings | SearchSpace::AllPresentations => {
            let births = p.events.iter().filter(|e| matches!(e, Event::Birth(_))).count();
            let mut pool: Vec<Event> = p.events.clone();
            pool.sort();
            let mut buf = Vec::new();
            let mut used = vec![false; pool.len()];
            let exhausted = enumerate(&mut Enumeration {
                pool: &pool,
                all: config.space == SearchSpace::AllPresentations,
                births,
                buf: &mut buf,
                used: &mut used,
                states: &mut states,
                budget: config.budget,
                visit: &mut consider,
            }, 0, 0);
            certified = exhausted;
        }
    }
    let (min_width, witness) = match best {
        Some((w, q)) => (Some(w), Some(q)),
        None => (None, None),
    };
    Ok(ThinResult { min_width, witness, certified, states })
}

struct Enumeration<'a, F: FnMut(&MorsePresentation)> {
    pool: &'a [Event],
    all: bool,
    births: usize,
    buf: &'a mut Vec<Event>,
    used: &'a mut Vec<bool>,
    states: &'a mut u64,
    budget: u64,
    visit: &'a mut F,
}

/// Depth-first generation of valid sequences; false once the budget runs out.
fn enumerate<F: FnMut(&MorsePresentation)>(e: &mut Enumeration<'_, F>, count: usize, born: usize) -> bool {
    let len = if e.all { 2 * e.births } else { e.pool.len() };
    if e.buf.len() == len {
        if *e.states >= e.budget {
            return false;
        }
        *e.states += 1;
        (e.visit)(&MorsePresentation { events: e.buf.clone() });
        return true;
    }
    let mut candidates: Vec<(Option<usize>, Event)> = Vec::new();
    if e.all {
        if born < e.births {
            candidates.extend((0..=count).map(|i| (None, Event::Birth(i))));
        }
        candidates.extend((0..count.saturating_sub(1)).map(|i| (None, Event::Death(i))));
    } else {
        for k in 0..e.pool.len() {
            if !e.used[k] && (k == 0 || e.pool[k] != e.pool[k - 1] || e.used[k - 1]) {
                candidates.push((Some(k), e.pool[k]));
            }
        }
    }
    for (k, ev) in candidates {
        let (next, b) = match ev {
            Event::Birth(i) if i <= count => (count + 2, born + 1),
            Event::Death(i) if i + 1 < count => (count - 2, born),
            _ => continue,
        };
        if let Some(k) = k {
            e.used[k] = true;
        }
        e.buf.push(ev);
        let ok = enumerate(e, next, b);
        e.buf.pop();
        if let Some(k) = k {
            e.used[k] = false;
        }
        if !ok {
            return false;
        }
    }
    true
}
