//! JSON file formats for timelines and annotation overlays.
//!
//! A timeline file (schema id `tie-timeline/1`) carries the clip duration
//! and per-participant event entries:
//!
//! ```json
//! {
//!   "schema": "tie-timeline/1",
//!   "clip_duration": 10.0,
//!   "participants": {
//!     "p1": {
//!       "timeline": [
//!         { "id": "p1-walk", "track": "locomotion",
//!           "start_time": 0.0, "end_time": 2.0,
//!           "short_caption": "walks toward the bench" }
//!       ]
//!     }
//!   }
//! }
//! ```
//!
//! `id` is optional; a missing id defaults to `<participant>:<index>` with
//! the entry's position in that participant's timeline. An annotation
//! overlay (schema id `tie-annotations/1`) grades those events by id:
//!
//! ```json
//! {
//!   "schema": "tie-annotations/1",
//!   "annotations": [
//!     { "event_id": "p1-walk", "occurred": 1.0,
//!       "start_bias": 0.25, "end_bias": -0.5 },
//!     { "event_id": "p2:0", "occurred": 0.0 }
//!   ]
//! }
//! ```
//!
//! `occurred` is the annotator-averaged occurrence in `[0, 1]`; biases are
//! required exactly when it is positive. Every event in the timeline must
//! be annotated exactly once.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use tie_core::Interval64;

use crate::error::{Error, Result, SchemaIssue};
use crate::event::{Event, EventAnnotation, Timeline};

pub const TIMELINE_SCHEMA: &str = "tie-timeline/1";
pub const ANNOTATION_SCHEMA: &str = "tie-annotations/1";

#[derive(Debug, Serialize, Deserialize)]
struct TimelineFile {
    schema: String,
    clip_duration: f64,
    participants: BTreeMap<String, ParticipantEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ParticipantEntry {
    timeline: Vec<TimelineEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TimelineEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    track: String,
    start_time: f64,
    end_time: f64,
    short_caption: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct AnnotationFile {
    schema: String,
    annotations: Vec<AnnotationEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct AnnotationEntry {
    event_id: String,
    occurred: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    start_bias: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    end_bias: Option<f64>,
}

fn schema_err(path: &str, issues: Vec<SchemaIssue>) -> Error {
    Error::Schema {
        path: path.to_string(),
        issues,
    }
}

/// Parse a timeline document. Events come out ordered by participant id,
/// then file order within a participant.
pub fn parse_timeline_str(text: &str, origin: &str) -> Result<Timeline> {
    let file: TimelineFile = serde_json::from_str(text)?;
    let mut issues = Vec::new();
    if file.schema != TIMELINE_SCHEMA {
        issues.push(SchemaIssue {
            path: "schema".into(),
            message: format!("expected `{TIMELINE_SCHEMA}`, got `{}`", file.schema),
        });
    }
    if !file.clip_duration.is_finite() || file.clip_duration <= 0.0 {
        issues.push(SchemaIssue {
            path: "clip_duration".into(),
            message: format!("must be positive and finite, got {}", file.clip_duration),
        });
    }

    let mut events = Vec::new();
    let mut seen_ids = BTreeSet::new();
    for (participant, entry) in &file.participants {
        for (index, item) in entry.timeline.iter().enumerate() {
            let path = format!("participants.{participant}.timeline[{index}]");
            let id = item
                .id
                .clone()
                .unwrap_or_else(|| format!("{participant}:{index}"));
            if !seen_ids.insert(id.clone()) {
                issues.push(SchemaIssue {
                    path: path.clone(),
                    message: format!("duplicate event id `{id}`"),
                });
                continue;
            }
            match Interval64::new(item.start_time, item.end_time) {
                Ok(interval) => events.push(Event {
                    id,
                    actor: participant.clone(),
                    track: item.track.clone(),
                    description: item.short_caption.clone(),
                    interval,
                }),
                Err(e) => issues.push(SchemaIssue {
                    path: format!("{path}.start_time"),
                    message: e.to_string(),
                }),
            }
        }
    }

    if !issues.is_empty() {
        return Err(schema_err(origin, issues));
    }
    Timeline::new(file.clip_duration, events)
}

/// Parse an annotation overlay against its timeline. Every event must be
/// annotated exactly once; annotations come out in timeline event order.
pub fn parse_annotations_str(
    text: &str,
    timeline: &Timeline,
    origin: &str,
) -> Result<Vec<EventAnnotation>> {
    let file: AnnotationFile = serde_json::from_str(text)?;
    let mut issues = Vec::new();
    if file.schema != ANNOTATION_SCHEMA {
        issues.push(SchemaIssue {
            path: "schema".into(),
            message: format!("expected `{ANNOTATION_SCHEMA}`, got `{}`", file.schema),
        });
    }

    let mut by_id: BTreeMap<&str, &AnnotationEntry> = BTreeMap::new();
    for (index, ann) in file.annotations.iter().enumerate() {
        let path = format!("annotations[{index}]");
        if timeline.events().iter().all(|e| e.id != ann.event_id) {
            issues.push(SchemaIssue {
                path: format!("{path}.event_id"),
                message: format!("unknown event id `{}`", ann.event_id),
            });
            continue;
        }
        if by_id.insert(ann.event_id.as_str(), ann).is_some() {
            issues.push(SchemaIssue {
                path: format!("{path}.event_id"),
                message: format!("event `{}` annotated twice", ann.event_id),
            });
        }
    }

    let mut annotations = Vec::new();
    for event in timeline.events() {
        let Some(entry) = by_id.get(event.id.as_str()) else {
            issues.push(SchemaIssue {
                path: "annotations".into(),
                message: format!("event `{}` has no annotation", event.id),
            });
            continue;
        };
        let biases = match (entry.start_bias, entry.end_bias) {
            (Some(bs), Some(bt)) => Some((bs, bt)),
            (None, None) => None,
            _ => {
                issues.push(SchemaIssue {
                    path: format!("annotations (event `{}`)", event.id),
                    message: "start_bias and end_bias must come together".into(),
                });
                continue;
            }
        };
        match EventAnnotation::new(event.clone(), entry.occurred, biases) {
            Ok(ann) => annotations.push(ann),
            Err(e) => issues.push(SchemaIssue {
                path: format!("annotations (event `{}`)", event.id),
                message: e.to_string(),
            }),
        }
    }

    if !issues.is_empty() {
        return Err(schema_err(origin, issues));
    }
    Ok(annotations)
}

pub fn load_timeline(path: &Path) -> Result<Timeline> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_timeline_str(&text, &path.display().to_string())
}

pub fn load_annotations(path: &Path, timeline: &Timeline) -> Result<Vec<EventAnnotation>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_annotations_str(&text, timeline, &path.display().to_string())
}

/// Serialize a timeline back into the v1 document shape (explicit ids).
pub fn timeline_to_json(timeline: &Timeline) -> String {
    let mut participants: BTreeMap<String, ParticipantEntry> = BTreeMap::new();
    for event in timeline.events() {
        participants
            .entry(event.actor.clone())
            .or_insert_with(|| ParticipantEntry {
                timeline: Vec::new(),
            })
            .timeline
            .push(TimelineEntry {
                id: Some(event.id.clone()),
                track: event.track.clone(),
                start_time: event.interval.start(),
                end_time: event.interval.end(),
                short_caption: event.description.clone(),
            });
    }
    let file = TimelineFile {
        schema: TIMELINE_SCHEMA.to_string(),
        clip_duration: timeline.clip_duration(),
        participants,
    };
    serde_json::to_string_pretty(&file).expect("timeline serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    const TIMELINE: &str = r#"{
        "schema": "tie-timeline/1",
        "clip_duration": 10.0,
        "participants": {
            "p1": { "timeline": [
                { "id": "walk", "track": "legs", "start_time": 0.0, "end_time": 2.0,
                  "short_caption": "walks in" },
                { "track": "arms", "start_time": 1.0, "end_time": 3.0,
                  "short_caption": "waves" }
            ]},
            "p2": { "timeline": [
                { "track": "legs", "start_time": 4.0, "end_time": 6.0,
                  "short_caption": "runs off" }
            ]}
        }
    }"#;

    #[test]
    fn parses_and_synthesizes_ids() {
        let t = parse_timeline_str(TIMELINE, "inline").unwrap();
        assert_eq!(t.clip_duration(), 10.0);
        let ids: Vec<&str> = t.events().iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, vec!["walk", "p1:1", "p2:0"]);
        assert_eq!(t.events()[2].actor, "p2");
        assert_eq!(t.events()[1].track, "arms");
    }

    #[test]
    fn wrong_schema_id_is_an_issue() {
        let bad = TIMELINE.replace("tie-timeline/1", "tie-timeline/9");
        match parse_timeline_str(&bad, "inline") {
            Err(Error::Schema { issues, .. }) => {
                assert_eq!(issues[0].path, "schema");
            }
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn reversed_interval_reports_its_path() {
        let bad = TIMELINE.replace(
            "\"start_time\": 4.0, \"end_time\": 6.0",
            "\"start_time\": 6.0, \"end_time\": 4.0",
        );
        match parse_timeline_str(&bad, "inline") {
            Err(Error::Schema { issues, .. }) => {
                assert!(issues[0].path.contains("participants.p2.timeline[0]"));
            }
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn annotations_join_by_id() {
        let t = parse_timeline_str(TIMELINE, "inline").unwrap();
        let ann_text = r#"{
            "schema": "tie-annotations/1",
            "annotations": [
                { "event_id": "walk", "occurred": 1.0, "start_bias": 0.25, "end_bias": -0.25 },
                { "event_id": "p1:1", "occurred": 0.0 },
                { "event_id": "p2:0", "occurred": 0.7, "start_bias": 1.0, "end_bias": 0.5 }
            ]
        }"#;
        let anns = parse_annotations_str(ann_text, &t, "inline").unwrap();
        assert_eq!(anns.len(), 3);
        assert_eq!(anns[0].event.id, "walk");
        assert_eq!(anns[1].occurred(), 0.0);
        assert_eq!(anns[2].observed_span(), Some((5.0, 6.5)));
    }

    #[test]
    fn unknown_and_missing_annotations_are_issues() {
        let t = parse_timeline_str(TIMELINE, "inline").unwrap();
        let ann_text = r#"{
            "schema": "tie-annotations/1",
            "annotations": [
                { "event_id": "nope", "occurred": 1.0, "start_bias": 0.0, "end_bias": 0.0 }
            ]
        }"#;
        match parse_annotations_str(ann_text, &t, "inline") {
            Err(Error::Schema { issues, .. }) => {
                assert!(issues.iter().any(|i| i.message.contains("unknown event id")));
                assert!(issues.iter().any(|i| i.message.contains("has no annotation")));
            }
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn timeline_round_trips_through_json() {
        let t = parse_timeline_str(TIMELINE, "inline").unwrap();
        let again = parse_timeline_str(&timeline_to_json(&t), "inline").unwrap();
        assert_eq!(t, again);
    }
}
