//! Events, timelines, and human annotation records.

use tie_core::Interval64;

use crate::error::{Error, Result};

/// Occurrence values at or above this threshold count as "the event
/// happened" for pair and constraint eligibility.
pub const OCCURRENCE_THRESHOLD: f64 = 0.5;

/// Target centers closer than this have no requested ordering and drop out
/// of order-pair denominators.
pub const CENTER_TIE_EPS: f64 = 1e-9;

/// A requested event on a clip timeline.
#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    pub id: String,
    /// Participant the event belongs to.
    pub actor: String,
    /// Action track within the participant; events on one track must not
    /// overlap.
    pub track: String,
    pub description: String,
    pub interval: Interval64,
}

/// A clip's duration and requested events. Ids are unique; intervals that
/// stray outside `[0, clip_duration]` are reported by the validator rather
/// than rejected here.
#[derive(Debug, Clone, PartialEq)]
pub struct Timeline {
    clip_duration: f64,
    events: Vec<Event>,
}

impl Timeline {
    pub fn new(clip_duration: f64, events: Vec<Event>) -> Result<Self> {
        if !clip_duration.is_finite() || clip_duration <= 0.0 {
            return Err(Error::BadClipDuration(clip_duration));
        }
        let mut ids: Vec<&str> = events.iter().map(|e| e.id.as_str()).collect();
        ids.sort_unstable();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEventId(w[0].to_string()));
            }
        }
        Ok(Self {
            clip_duration,
            events,
        })
    }

    pub fn clip_duration(&self) -> f64 {
        self.clip_duration
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }
}

/// Human annotation for one requested event.
///
/// `occurred` is the annotator-averaged occurrence in `[0, 1]`. Boundary
/// biases (observed minus requested, in seconds) are present exactly when
/// the event was seen at all.
#[derive(Debug, Clone, PartialEq)]
pub struct EventAnnotation {
    pub event: Event,
    occurred: f64,
    start_bias: Option<f64>,
    end_bias: Option<f64>,
}

impl EventAnnotation {
    pub fn new(event: Event, occurred: f64, biases: Option<(f64, f64)>) -> Result<Self> {
        if !(0.0..=1.0).contains(&occurred) || !occurred.is_finite() {
            return Err(Error::BadOccurrence {
                id: event.id,
                value: occurred,
            });
        }
        match biases {
            None if occurred > 0.0 => Err(Error::MissingBias { id: event.id }),
            Some(_) if occurred == 0.0 => Err(Error::UnexpectedBias { id: event.id }),
            Some((bs, bt)) if !bs.is_finite() || !bt.is_finite() => {
                Err(Error::MissingBias { id: event.id })
            }
            _ => Ok(Self {
                event,
                occurred,
                start_bias: biases.map(|b| b.0),
                end_bias: biases.map(|b| b.1),
            }),
        }
    }

    /// An event the annotators did not see.
    pub fn missing(event: Event) -> Self {
        Self {
            event,
            occurred: 0.0,
            start_bias: None,
            end_bias: None,
        }
    }

    pub fn occurred(&self) -> f64 {
        self.occurred
    }

    /// Thresholded occurrence used for pair and constraint eligibility.
    pub fn counted_as_occurred(&self) -> bool {
        self.occurred >= OCCURRENCE_THRESHOLD
    }

    pub fn start_bias(&self) -> Option<f64> {
        self.start_bias
    }

    pub fn end_bias(&self) -> Option<f64> {
        self.end_bias
    }

    /// Observed `(start, end)` under the recorded biases. The pair can be
    /// reversed when the biases are extreme; pair predicates work on the
    /// raw values.
    pub fn observed_span(&self) -> Option<(f64, f64)> {
        match (self.start_bias, self.end_bias) {
            (Some(bs), Some(bt)) => Some((
                self.event.interval.start() + bs,
                self.event.interval.end() + bt,
            )),
            _ => None,
        }
    }

    /// Observed center, `target center + (bias_s + bias_t)/2`.
    pub fn observed_center(&self) -> Option<f64> {
        self.observed_span().map(|(s, t)| (s + t) / 2.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tie_core::TimeInterval;

    fn event(id: &str, start: f64, end: f64) -> Event {
        Event {
            id: id.into(),
            actor: "p1".into(),
            track: "main".into(),
            description: "does something".into(),
            interval: TimeInterval::new(start, end).unwrap(),
        }
    }

    #[test]
    fn timeline_rejects_duplicate_ids() {
        let err = Timeline::new(10.0, vec![event("a", 0.0, 1.0), event("a", 2.0, 3.0)]);
        assert!(matches!(err, Err(Error::DuplicateEventId(_))));
        assert!(Timeline::new(0.0, vec![]).is_err());
        assert!(Timeline::new(10.0, vec![event("a", 0.0, 1.0)]).is_ok());
    }

    #[test]
    fn annotation_bias_rules() {
        assert!(EventAnnotation::new(event("a", 0.0, 1.0), 1.0, None).is_err());
        assert!(EventAnnotation::new(event("a", 0.0, 1.0), 0.0, Some((0.1, 0.1))).is_err());
        assert!(EventAnnotation::new(event("a", 0.0, 1.0), 1.5, Some((0.0, 0.0))).is_err());
        let ann = EventAnnotation::new(event("a", 1.0, 3.0), 0.8, Some((0.2, -0.2))).unwrap();
        assert_eq!(ann.observed_span(), Some((1.2, 2.8)));
        assert_eq!(ann.observed_center(), Some(2.0));
        assert!(ann.counted_as_occurred());
        let missing = EventAnnotation::missing(event("b", 0.0, 1.0));
        assert!(!missing.counted_as_occurred());
        assert_eq!(missing.observed_span(), None);
    }
}
