//! Corpus-level statistics over a collection of timelines.

use crate::error::{Error, Result};
use crate::event::Timeline;

/// Aggregate row over a corpus of clips.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusStats {
    pub clip_count: usize,
    /// Mean events per clip.
    pub events_per_clip: f64,
    /// Mean event duration, seconds.
    pub mean_event_duration: f64,
    pub total_events: usize,
    /// Sum of all event durations, seconds.
    pub total_duration: f64,
    /// Sum of description lengths, in characters.
    pub total_caption_chars: usize,
    /// Fraction of events sharing a positive-length intersection with at
    /// least one other event of the same clip.
    pub overlap_prob: f64,
}

pub fn corpus_stats(timelines: &[Timeline]) -> Result<CorpusStats> {
    if timelines.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut total_events = 0usize;
    let mut total_duration = 0.0f64;
    let mut total_caption_chars = 0usize;
    let mut overlapping = 0usize;

    for clip in timelines {
        let events = clip.events();
        total_events += events.len();
        for (i, event) in events.iter().enumerate() {
            total_duration += event.interval.duration();
            total_caption_chars += event.description.chars().count();
            let overlaps_any = events.iter().enumerate().any(|(j, other)| {
                i != j
                    && event.interval.end().min(other.interval.end())
                        > event.interval.start().max(other.interval.start())
            });
            if overlaps_any {
                overlapping += 1;
            }
        }
    }

    Ok(CorpusStats {
        clip_count: timelines.len(),
        events_per_clip: total_events as f64 / timelines.len() as f64,
        mean_event_duration: if total_events == 0 {
            0.0
        } else {
            total_duration / total_events as f64
        },
        total_events,
        total_duration,
        total_caption_chars,
        overlap_prob: if total_events == 0 {
            0.0
        } else {
            overlapping as f64 / total_events as f64
        },
    })
}
