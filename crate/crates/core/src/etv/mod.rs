//! Event takeover values.
//!
//! Every offspring is an event with a unique serial. Each individual carries
//! a bounded history list of event serials inherited from its genetically
//! dominant parent, oldest first and ending with its own serial. Once per
//! generation the archive counts, for every tracked event, how many members
//! of the population carry it. An ancestor whose count equals that of its
//! immediate descendant in some list is a hitchhiker and is finalized. An
//! event also finalizes when its count reaches zero. The finalized size is
//! the largest count seen while the event was still active.

pub mod oracle;

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genome::{normalized_euclidean, GeneSpec};
use crate::operators::OperatorKind;

pub type EventId = u64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EtvConfig {
    /// Capacity of each history list.
    pub t_obs: usize,
    /// Probability that an offspring starts a fresh history.
    pub p_new: f64,
}

impl Default for EtvConfig {
    fn default() -> Self {
        EtvConfig { t_obs: 20, p_new: 0.0 }
    }
}

impl EtvConfig {
    pub fn validate(&self) -> Result<()> {
        if self.t_obs == 0 {
            return Err(Error::Etv("t_obs must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.p_new) {
            return Err(Error::Etv(format!("p_new {} outside [0, 1]", self.p_new)));
        }
        Ok(())
    }
}

/// A finalized event.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtvResult {
    pub serial: EventId,
    pub operator: Option<OperatorKind>,
    pub size: u32,
    pub age: u64,
    pub birth_gen: u64,
    /// The run ended before the event finalized.
    pub censored: bool,
}

#[derive(Debug, Clone)]
struct Entry {
    operator: Option<OperatorKind>,
    birth_gen: u64,
    peak: u32,
    deepest: usize,
}

/// Statistics of one generation pass.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PassStats {
    /// Distinct event serials present in the population's history lists.
    pub tracked: usize,
    /// Events still awaiting finalization after the pass.
    pub active: usize,
}

#[derive(Debug, Clone)]
pub struct EtvArchive {
    config: EtvConfig,
    next_serial: EventId,
    active: HashMap<EventId, Entry>,
    counts: HashMap<EventId, u32>,
    hitchhikers: Vec<EventId>,
    deepest_finalized: Vec<(EventId, usize)>,
}

impl EtvArchive {
    pub fn new(config: EtvConfig) -> Result<Self> {
        config.validate()?;
        Ok(EtvArchive {
            config,
            next_serial: 0,
            active: HashMap::new(),
            counts: HashMap::new(),
            hitchhikers: Vec::new(),
            deepest_finalized: Vec::new(),
        })
    }

    pub fn config(&self) -> &EtvConfig {
        &self.config
    }

    pub fn active_len(&self) -> usize {
        self.active.len()
    }

    /// Registers a new event and returns the offspring's history list.
    ///
    /// `parent_history` is the list of the dominant parent (`None` for an
    /// offspring without ancestry, which always starts fresh).
    pub fn record_birth<R: Rng + ?Sized>(
        &mut self,
        operator: Option<OperatorKind>,
        parent_history: Option<&[EventId]>,
        birth_gen: u64,
        rng: &mut R,
    ) -> (EventId, Vec<EventId>) {
        let id = self.next_serial;
        self.next_serial += 1;
        let uncouple = self.config.p_new > 0.0 && rng.random::<f64>() < self.config.p_new;
        let mut list = match parent_history {
            Some(parent) if !uncouple => {
                let keep = self.config.t_obs - 1;
                parent[parent.len().saturating_sub(keep)..].to_vec()
            }
            _ => Vec::with_capacity(1),
        };
        list.push(id);
        self.active.insert(id, Entry { operator, birth_gen, peak: 1, deepest: 0 });
        (id, list)
    }

    /// Counts, detects hitchhikers and finalizes. `lists` are the history
    /// lists of the current population.
    pub fn generation_pass<L: AsRef<[EventId]>>(&mut self, lists: &[L], current_gen: u64) -> (Vec<EtvResult>, PassStats) {
        self.counts.clear();
        for list in lists {
            let list = list.as_ref();
            let len = list.len();
            for (pos, &id) in list.iter().enumerate() {
                *self.counts.entry(id).or_insert(0) += 1;
                if let Some(e) = self.active.get_mut(&id) {
                    e.deepest = e.deepest.max(len - 1 - pos);
                }
            }
        }
        self.hitchhikers.clear();
        for list in lists {
            for w in list.as_ref().windows(2) {
                if self.counts[&w[0]] == self.counts[&w[1]] {
                    self.hitchhikers.push(w[0]);
                }
            }
        }
        self.hitchhikers.sort_unstable();
        self.hitchhikers.dedup();
        let mut done = Vec::new();
        for (&id, e) in self.active.iter_mut() {
            let c = if self.hitchhikers.binary_search(&id).is_ok() {
                0
            } else {
                self.counts.get(&id).copied().unwrap_or(0)
            };
            if c > 0 {
                e.peak = e.peak.max(c);
            } else {
                done.push(id);
            }
        }
        done.sort_unstable();
        let results: Vec<EtvResult> = done
            .iter()
            .map(|id| {
                let e = self.active.remove(id).expect("active entry");
                self.deepest_finalized.push((*id, e.deepest));
                EtvResult {
                    serial: *id,
                    operator: e.operator,
                    size: e.peak,
                    age: current_gen.saturating_sub(e.birth_gen).max(1),
                    birth_gen: e.birth_gen,
                    censored: false,
                }
            })
            .collect();
        let stats = PassStats { tracked: self.counts.len(), active: self.active.len() };
        (results, stats)
    }

    /// Closes every remaining event as censored.
    pub fn finalize_all(&mut self, current_gen: u64) -> Vec<EtvResult> {
        let mut ids: Vec<EventId> = self.active.keys().copied().collect();
        ids.sort_unstable();
        ids.into_iter()
            .map(|id| {
                let e = self.active.remove(&id).expect("active entry");
                self.deepest_finalized.push((id, e.deepest));
                EtvResult {
                    serial: id,
                    operator: e.operator,
                    size: e.peak,
                    age: current_gen.saturating_sub(e.birth_gen).max(1),
                    birth_gen: e.birth_gen,
                    censored: true,
                }
            })
            .collect()
    }

    /// For each finalized event, the smallest list capacity under which
    /// every observation of it would have been retained.
    pub fn required_capacities(&self) -> impl Iterator<Item = (EventId, usize)> + '_ {
        self.deepest_finalized.iter().map(|&(id, d)| (id, d + 1))
    }
}

/// Index of the parent closest to the offspring; ties go to the lowest index.
pub fn dominant_parent(offspring: &[f64], parents: &[&[f64]], specs: &[GeneSpec]) -> Result<usize> {
    if parents.is_empty() {
        return Err(Error::Etv("no parents".into()));
    }
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, p) in parents.iter().enumerate() {
        let d = normalized_euclidean(offspring, p, specs)?;
        if d < best_d {
            best = i;
            best_d = d;
        }
    }
    Ok(best)
}
