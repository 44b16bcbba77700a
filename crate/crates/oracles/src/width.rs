//! Exhaustive enumeration of Morse presentations.

use normalhst::thin::{Event, MorsePresentation};

/// Every valid presentation with exactly `events` events, in lexicographic order.
pub fn all_presentations(events: usize) -> Vec<MorsePresentation> {
    fn go(left: usize, strands: usize, buf: &mut Vec<Event>, out: &mut Vec<MorsePresentation>) {
        if left == 0 {
            if strands == 0 {
                out.push(MorsePresentation { events: buf.clone() });
            }
            return;
        }
        // Strands still open need `strands / 2` deaths.
        if strands / 2 > left {
            return;
        }
        for i in 0..=strands {
            buf.push(Event::Birth(i));
            go(left - 1, strands + 2, buf, out);
            buf.pop();
        }
        for i in 0..strands.saturating_sub(1) {
            buf.push(Event::Death(i));
            go(left - 1, strands - 2, buf, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    go(events, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Strand counts strictly between consecutive events.
pub fn levels(p: &MorsePresentation) -> Vec<usize> {
    let mut n = 0i64;
    let mut out = Vec::new();
    for e in &p.events {
        n += match e {
            Event::Birth(_) => 2,
            Event::Death(_) => -2,
        };
        out.push(n as usize);
    }
    out.pop();
    out
}

pub fn width(p: &MorsePresentation) -> usize {
    levels(p).iter().sum()
}

/// Minimum width over all presentations with `events` events, optionally only those
/// that never drop to zero strands in between.
pub fn minimum_width(events: usize, single_component: bool) -> Option<usize> {
    all_presentations(events)
        .iter()
        .filter(|p| !single_component || !levels(p).contains(&0))
        .map(width)
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(all_presentations(2).len(), 1);
        // B0 then B0, B1 or B2, then two deaths: 3 * 3 + the split one.
        assert_eq!(all_presentations(4).len(), 10);
        assert_eq!(minimum_width(4, false), Some(4));
        assert_eq!(minimum_width(4, true), Some(8));
    }
}
