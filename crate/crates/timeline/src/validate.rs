//! Structural validity rules for timelines.
//!
//! Timestamps live on a 0.25 s grid, events last at least 1 s, an event
//! ends strictly after it starts, events stay inside the clip, and two
//! events on the same action track of the same participant never overlap.
//! Violations are data, not errors: the validator reports all of them.

use std::collections::BTreeMap;
use std::fmt;

use crate::event::Timeline;

pub const GRID_STEP: f64 = 0.25;
pub const MIN_DURATION: f64 = 1.0;
/// Absorbs decimal representation error in grid membership checks.
pub const GRID_EPS: f64 = 1e-6;
/// Slack for duration/bounds comparisons on f64 timestamps.
const TIME_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rule {
    /// start_time or end_time is not a multiple of 0.25 s.
    GridAlignment,
    /// end_time does not strictly follow start_time.
    PositiveSpan,
    /// The event lasts less than 1.0 s.
    MinimumDuration,
    /// Two events share a positive-length stretch of one action track.
    TrackOverlap,
    /// The event leaves `[0, clip_duration]`.
    OutOfBounds,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::GridAlignment => "grid-alignment",
            Rule::PositiveSpan => "positive-span",
            Rule::MinimumDuration => "minimum-duration",
            Rule::TrackOverlap => "track-overlap",
            Rule::OutOfBounds => "out-of-bounds",
        };
        f.write_str(name)
    }
}

/// One broken rule on one event (for pair rules, the lexicographically
/// first event of the pair).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub event_id: String,
    pub rule: Rule,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.event_id, self.rule, self.detail)
    }
}

fn on_grid(t: f64) -> bool {
    let steps = t / GRID_STEP;
    (steps - steps.round()).abs() <= GRID_EPS
}

/// Check every rule on every event; an empty result means the timeline is
/// valid. The output is sorted, so it is invariant under permutation of
/// the input events.
pub fn validate_timeline(timeline: &Timeline) -> Vec<Violation> {
    let mut violations = Vec::new();

    for event in timeline.events() {
        let (start, end) = (event.interval.start(), event.interval.end());
        for (field, value) in [("start_time", start), ("end_time", end)] {
            if !on_grid(value) {
                violations.push(Violation {
                    event_id: event.id.clone(),
                    rule: Rule::GridAlignment,
                    detail: format!("{field} {value} is not a multiple of {GRID_STEP} s"),
                });
            }
        }
        if end <= start {
            violations.push(Violation {
                event_id: event.id.clone(),
                rule: Rule::PositiveSpan,
                detail: format!("end_time {end} does not strictly follow start_time {start}"),
            });
        } else if event.interval.duration() < MIN_DURATION - TIME_EPS {
            violations.push(Violation {
                event_id: event.id.clone(),
                rule: Rule::MinimumDuration,
                detail: format!(
                    "duration {} s is below the {MIN_DURATION} s minimum",
                    event.interval.duration()
                ),
            });
        }
        if start < -TIME_EPS || end > timeline.clip_duration() + TIME_EPS {
            violations.push(Violation {
                event_id: event.id.clone(),
                rule: Rule::OutOfBounds,
                detail: format!(
                    "[{start}, {end}] leaves the clip [0, {}]",
                    timeline.clip_duration()
                ),
            });
        }
    }

    // same participant, same track: no positive-length overlap
    let mut tracks: BTreeMap<(&str, &str), Vec<&crate::event::Event>> = BTreeMap::new();
    for event in timeline.events() {
        tracks
            .entry((event.actor.as_str(), event.track.as_str()))
            .or_default()
            .push(event);
    }
    for ((actor, track), mut events) in tracks {
        events.sort_by(|a, b| a.id.cmp(&b.id));
        for i in 0..events.len() {
            for j in i + 1..events.len() {
                let (a, b) = (events[i], events[j]);
                let lo = a.interval.start().max(b.interval.start());
                let hi = a.interval.end().min(b.interval.end());
                if hi > lo {
                    violations.push(Violation {
                        event_id: a.id.clone(),
                        rule: Rule::TrackOverlap,
                        detail: format!(
                            "overlaps `{}` on track {actor}/{track} over [{lo}, {hi}]",
                            b.id
                        ),
                    });
                }
            }
        }
    }

    violations.sort();
    violations
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::Event;
    use tie_core::TimeInterval;

    fn event(id: &str, track: &str, start: f64, end: f64) -> Event {
        Event {
            id: id.into(),
            actor: "p1".into(),
            track: track.into(),
            description: String::new(),
            interval: TimeInterval::new(start, end).unwrap(),
        }
    }

    #[test]
    fn conformant_timeline_is_clean() {
        let t = Timeline::new(
            10.0,
            vec![
                event("a", "arm", 0.0, 2.0),
                event("b", "arm", 2.0, 3.5),
                event("c", "head", 1.25, 4.0),
            ],
        )
        .unwrap();
        assert!(validate_timeline(&t).is_empty());
    }

    #[test]
    fn off_grid_start_is_flagged() {
        let t = Timeline::new(10.0, vec![event("a", "arm", 0.10, 1.35)]).unwrap();
        let v = validate_timeline(&t);
        assert!(v
            .iter()
            .any(|x| x.rule == Rule::GridAlignment && x.detail.contains("start_time")));
        // 1.35 is off-grid too
        assert_eq!(v.iter().filter(|x| x.rule == Rule::GridAlignment).count(), 2);
    }

    #[test]
    fn crafted_fixture_yields_exactly_two_violations() {
        let t = Timeline::new(
            10.0,
            vec![
                event("a", "arm", 0.0, 2.0),
                event("b", "arm", 1.5, 3.0),
                event("c", "head", 4.0, 4.5),
            ],
        )
        .unwrap();
        let v = validate_timeline(&t);
        assert_eq!(v.len(), 2, "{v:?}");
        assert!(v.iter().any(|x| x.rule == Rule::TrackOverlap));
        assert!(v
            .iter()
            .any(|x| x.rule == Rule::MinimumDuration && x.event_id == "c"));
    }

    #[test]
    fn zero_length_event_breaks_positive_span() {
        let t = Timeline::new(10.0, vec![event("a", "arm", 2.0, 2.0)]).unwrap();
        let v = validate_timeline(&t);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, Rule::PositiveSpan);
    }

    #[test]
    fn out_of_bounds_event_is_flagged() {
        let t = Timeline::new(10.0, vec![event("a", "arm", 8.0, 10.5)]).unwrap();
        let v = validate_timeline(&t);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].rule, Rule::OutOfBounds);
    }

    #[test]
    fn validation_is_permutation_invariant() {
        let events = vec![
            event("a", "arm", 0.0, 2.0),
            event("b", "arm", 1.5, 3.0),
            event("c", "head", 4.1, 4.5),
            event("d", "leg", 8.0, 11.0),
        ];
        let forward = validate_timeline(&Timeline::new(10.0, events.clone()).unwrap());
        let mut reversed_events = events;
        reversed_events.reverse();
        let reversed = validate_timeline(&Timeline::new(10.0, reversed_events).unwrap());
        assert_eq!(forward, reversed);
        assert!(!forward.is_empty());
    }

    #[test]
    fn same_track_name_on_different_actors_does_not_conflict() {
        let mut e1 = event("a", "arm", 0.0, 2.0);
        let mut e2 = event("b", "arm", 1.0, 3.0);
        e1.actor = "p1".into();
        e2.actor = "p2".into();
        let t = Timeline::new(10.0, vec![e1, e2]).unwrap();
        assert!(validate_timeline(&t).is_empty());
    }
}
