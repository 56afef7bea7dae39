//! Big-M from a greedy path coloring, and start schedules.

use alloc::vec;
use alloc::vec::Vec;

use crate::model::{Instance, Temporalization, Time};

/// First-fit coloring in path order such that routes of one color share no
/// vertex. Returns the color of every route.
pub fn greedy_coloring(instance: &Instance) -> Vec<usize> {
    let n = instance.graph().vertex_count();
    // Per color, the vertices already used.
    let mut used: Vec<Vec<bool>> = Vec::new();
    let mut colors = Vec::with_capacity(instance.paths().len());
    for path in instance.paths() {
        let color = used
            .iter()
            .position(|taken| path.vertices().iter().all(|v| !taken[v.0]))
            .unwrap_or_else(|| {
                used.push(vec![false; n]);
                used.len() - 1
            });
        for v in path.vertices() {
            used[color][v.0] = true;
        }
        colors.push(color);
    }
    colors
}

/// `1 + total traversal time` of every route.
fn spans(instance: &Instance) -> Vec<Time> {
    instance
        .paths()
        .iter()
        .map(|p| 1 + p.travel_time(instance.graph()))
        .collect()
}

/// Sum over colors of the longest `1 + travel time` within the color.
pub fn compute_big_m(instance: &Instance) -> Time {
    let colors = greedy_coloring(instance);
    let spans = spans(instance);
    let chi = colors.iter().copied().max().map_or(0, |c| c + 1);
    let mut longest = vec![0; chi];
    for (p, &c) in colors.iter().enumerate() {
        longest[c] = longest[c].max(spans[p]);
    }
    longest.iter().sum()
}

/// The schedule behind [`compute_big_m`]: colors run one after another, all
/// routes of a color start together once the slowest route of the previous
/// color has finished, and nobody waits.
pub fn color_schedule(instance: &Instance) -> Temporalization {
    let colors = greedy_coloring(instance);
    let spans = spans(instance);
    let chi = colors.iter().copied().max().map_or(0, |c| c + 1);
    let mut longest = vec![0; chi];
    for (p, &c) in colors.iter().enumerate() {
        longest[c] = longest[c].max(spans[p]);
    }
    let mut start = vec![1; chi];
    for c in 1..chi {
        start[c] = start[c - 1] + longest[c - 1];
    }
    let g = instance.graph();
    let departures = instance
        .paths()
        .iter()
        .zip(&colors)
        .map(|(p, &c)| {
            let mut t = start[c];
            p.hops()
                .iter()
                .map(|&h| {
                    let dep = t;
                    t += g.connection(h).theta;
                    dep
                })
                .collect()
        })
        .collect();
    let makespan = longest.iter().sum::<Time>();
    Temporalization::new(makespan.max(instance.tau()), departures)
}

/// No-wait schedule from step 1 and its largest deadline violation.
pub fn warm_start_no_wait(instance: &Instance) -> (Temporalization, Time) {
    let schedule = Temporalization::no_wait(instance);
    let g = instance.graph();
    let mut worst = 0;
    for (p, path) in instance.paths().iter().enumerate() {
        for (h, &c) in path.hops().iter().enumerate() {
            let conn = g.connection(c);
            worst = worst.max(schedule.departures[p][h] + conn.theta - conn.deadline);
        }
    }
    (schedule, worst)
}
