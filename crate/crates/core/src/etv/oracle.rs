//! Brute-force ETV reference built on an explicit genealogy graph.
//!
//! The oracle never looks at history lists. It stores, for every event, the
//! event of its dominant parent, and recomputes each member's ancestry chain
//! from scratch every generation by walking parent links. It exists to
//! cross-check [`super::EtvArchive`] on small runs.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::operators::OperatorKind;

use super::{EtvConfig, EtvResult, EventId};

/// Maximum number of events the oracle accepts.
pub const ORACLE_EVENT_LIMIT: usize = 200_000;

#[derive(Debug, Clone)]
struct Node {
    parent: Option<EventId>,
    operator: Option<OperatorKind>,
    birth_gen: u64,
}

#[derive(Debug, Clone)]
pub struct GenealogyOracle {
    t_obs: usize,
    nodes: BTreeMap<EventId, Node>,
    open: BTreeMap<EventId, u32>,
    results: Vec<EtvResult>,
}

impl GenealogyOracle {
    pub fn new(config: &EtvConfig) -> Result<Self> {
        config.validate()?;
        Ok(GenealogyOracle { t_obs: config.t_obs, nodes: BTreeMap::new(), open: BTreeMap::new(), results: Vec::new() })
    }

    /// Adds an event. `parent` is the dominant parent's own event, or `None`
    /// when the offspring starts a fresh history.
    pub fn record_birth(
        &mut self,
        id: EventId,
        parent: Option<EventId>,
        operator: Option<OperatorKind>,
        birth_gen: u64,
    ) -> Result<()> {
        if self.nodes.len() >= ORACLE_EVENT_LIMIT {
            return Err(Error::OracleLimit(format!("more than {ORACLE_EVENT_LIMIT} events")));
        }
        if self.nodes.contains_key(&id) {
            return Err(Error::Etv(format!("event {id} recorded twice")));
        }
        self.nodes.insert(id, Node { parent, operator, birth_gen });
        self.open.insert(id, 1);
        Ok(())
    }

    fn chain(&self, own: EventId) -> Vec<EventId> {
        let mut chain = Vec::with_capacity(self.t_obs);
        let mut cur = Some(own);
        while let Some(id) = cur {
            if chain.len() == self.t_obs {
                break;
            }
            chain.push(id);
            cur = self.nodes.get(&id).and_then(|n| n.parent);
        }
        chain
    }

    /// Observes the population at the end of generation `gen`. Each member
    /// is identified by its own event (`None` for founders).
    pub fn observe(&mut self, members: &[Option<EventId>], gen: u64) -> Vec<EtvResult> {
        let chains: Vec<Vec<EventId>> = members.iter().map(|m| m.map(|id| self.chain(id)).unwrap_or_default()).collect();
        let mut holders: BTreeMap<EventId, u32> = BTreeMap::new();
        for chain in &chains {
            let distinct: BTreeSet<EventId> = chain.iter().copied().collect();
            for id in distinct {
                *holders.entry(id).or_insert(0) += 1;
            }
        }
        let mut zeroed: BTreeSet<EventId> = BTreeSet::new();
        for chain in &chains {
            for pair in chain.windows(2) {
                let (child, ancestor) = (pair[0], pair[1]);
                if holders[&child] == holders[&ancestor] {
                    zeroed.insert(ancestor);
                }
            }
        }
        let mut finished = Vec::new();
        let ids: Vec<EventId> = self.open.keys().copied().collect();
        for id in ids {
            let count = if zeroed.contains(&id) { 0 } else { holders.get(&id).copied().unwrap_or(0) };
            if count == 0 {
                let peak = self.open.remove(&id).unwrap_or(1);
                let node = &self.nodes[&id];
                finished.push(EtvResult {
                    serial: id,
                    operator: node.operator,
                    size: peak,
                    age: gen.saturating_sub(node.birth_gen).max(1),
                    birth_gen: node.birth_gen,
                    censored: false,
                });
            } else if let Some(p) = self.open.get_mut(&id) {
                *p = (*p).max(count);
            }
        }
        self.results.extend(finished.iter().cloned());
        finished
    }

    /// Closes all open events as censored and returns every result, ordered by serial.
    pub fn finish(mut self, gen: u64) -> Vec<EtvResult> {
        let open: Vec<(EventId, u32)> = self.open.iter().map(|(k, v)| (*k, *v)).collect();
        for (id, peak) in open {
            let node = &self.nodes[&id];
            self.results.push(EtvResult {
                serial: id,
                operator: node.operator,
                size: peak,
                age: gen.saturating_sub(node.birth_gen).max(1),
                birth_gen: node.birth_gen,
                censored: true,
            });
        }
        self.results.sort_by_key(|r| r.serial);
        self.results
    }
}
