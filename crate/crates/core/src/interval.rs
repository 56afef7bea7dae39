//! Interval-graph helpers.

use alloc::vec::Vec;

use crate::model::{Interval, Time};

/// Largest number of intervals sharing a common time step.
///
/// Sorts the `2N` endpoints and sweeps them once; a closing endpoint at `t`
/// is processed after every opening endpoint at `t` because intervals are
/// closed. Empty intervals are ignored.
pub fn max_simultaneous(intervals: &[Interval]) -> usize {
    let mut events: Vec<(Time, i32)> = Vec::with_capacity(intervals.len() * 2);
    for iv in intervals.iter().filter(|iv| !iv.is_empty()) {
        events.push((iv.lo, 1));
        events.push((iv.hi + 1, -1));
    }
    // At equal times closings (-1) sort before openings, and a closing at
    // `hi + 1` never overlaps an opening at `hi + 1`.
    events.sort_unstable();
    let mut current = 0i32;
    let mut best = 0i32;
    for (_, delta) in events {
        current += delta;
        best = best.max(current);
    }
    best as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn small_cases() {
        let ivs = [Interval::new(1, 3), Interval::new(2, 4), Interval::new(5, 5)];
        assert_eq!(max_simultaneous(&ivs), 2);
        assert_eq!(max_simultaneous(&[]), 0);
        assert_eq!(max_simultaneous(&vec![Interval::point(1); 7]), 7);
        assert_eq!(max_simultaneous(&[Interval::new(1, 2), Interval::new(3, 4)]), 1);
        assert_eq!(max_simultaneous(&[Interval::new(1, 2), Interval::new(2, 4)]), 2);
        assert_eq!(max_simultaneous(&[Interval::new(3, 2)]), 0);
    }
}
