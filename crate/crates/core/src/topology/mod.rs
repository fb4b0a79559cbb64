//! Population interaction networks.
//!
//! A [`Network`] is an undirected simple graph over individual slots. Slots
//! can be added and removed while a generation runs, and [`Network::compact`]
//! relabels the survivors to `0..n` afterwards.

pub mod baselines;
pub mod rules;

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genome::{hamming, GeneSpec};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Network {
    adj: Vec<BTreeSet<usize>>,
    alive: Vec<bool>,
}

impl Network {
    /// `n` isolated nodes.
    pub fn empty(n: usize) -> Self {
        Network { adj: vec![BTreeSet::new(); n], alive: vec![true; n] }
    }

    /// Ring where each node links to its two neighbours. Needs `n >= 3`.
    pub fn ring(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Topology(format!("a ring needs at least 3 nodes, got {n}")));
        }
        let mut g = Network::empty(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Network::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        g
    }

    /// Builds a graph on `n` nodes from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Network::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::Topology(format!("invalid edge ({u}, {v})")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Number of slots, dead or alive.
    pub fn capacity(&self) -> usize {
        self.adj.len()
    }

    pub fn node_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.adj.len()).filter(|&v| self.alive[v])
    }

    pub fn add_node(&mut self) -> usize {
        self.adj.push(BTreeSet::new());
        self.alive.push(true);
        self.adj.len() - 1
    }

    /// Detaches and kills `v`.
    pub fn remove_node(&mut self, v: usize) {
        let nbrs = std::mem::take(&mut self.adj[v]);
        for u in nbrs {
            self.adj[u].remove(&v);
        }
        self.alive[v] = false;
    }

    /// Returns false when the edge already existed or would be a self-loop.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        let fresh = self.adj[u].insert(v);
        self.adj[v].insert(u);
        fresh
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        let had = self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        had
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    /// One line per edge, `"u v"`, sorted.
    pub fn edge_list(&self) -> String {
        self.edges().iter().map(|(u, v)| format!("{u} {v}\n")).collect()
    }

    /// Relabels live nodes to `0..n` in slot order. Returns the new graph
    /// and, for each new label, the old slot.
    pub fn compact(&self) -> (Network, Vec<usize>) {
        let old: Vec<usize> = self.nodes().collect();
        let mut map = vec![usize::MAX; self.adj.len()];
        for (new, &o) in old.iter().enumerate() {
            map[o] = new;
        }
        let mut g = Network::empty(old.len());
        for (new, &o) in old.iter().enumerate() {
            g.adj[new] = self.adj[o].iter().map(|&u| map[u]).collect();
        }
        (g, old)
    }

    /// Hop distances from `src`; unreachable nodes are `None`.
    pub fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adj.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        match self.nodes().next() {
            None => true,
            Some(s) => {
                let d = self.bfs(s);
                self.nodes().all(|v| d[v].is_some())
            }
        }
    }

    /// Symmetry, no self-loops, no edges to dead slots.
    pub fn check_invariants(&self) -> Result<()> {
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if v == u {
                    return Err(Error::Topology(format!("self-loop at {u}")));
                }
                if !self.alive[u] || !self.alive[v] {
                    return Err(Error::Topology(format!("edge ({u}, {v}) touches a dead node")));
                }
                if !self.adj[v].contains(&u) {
                    return Err(Error::Topology(format!("edge ({u}, {v}) is not symmetric")));
                }
            }
        }
        Ok(())
    }

    /// Number of links among the neighbours of `i`.
    pub fn neighbor_links(&self, i: usize) -> usize {
        let nb = &self.adj[i];
        nb.iter().map(|&j| self.adj[j].range(j + 1..).filter(|k| nb.contains(k)).count()).sum()
    }

    /// Clustering coefficient; 0 when the degree is below 2.
    pub fn clustering(&self, i: usize) -> f64 {
        let k = self.degree(i);
        if k < 2 {
            return 0.0;
        }
        2.0 * self.neighbor_links(i) as f64 / (k * (k - 1)) as f64
    }

    /// Clustering where each link `(j, k)` among neighbours counts
    /// `rank_j * rank_k / n^2`. `ranks` are indexed by slot, 1 = best.
    pub fn weighted_clustering(&self, i: usize, ranks: &[usize], n: usize) -> f64 {
        let k = self.degree(i);
        if k < 2 {
            return 0.0;
        }
        let nb = &self.adj[i];
        let n2 = (n * n) as f64;
        let mut e = 0.0;
        for &j in nb {
            for &l in self.adj[j].range(j + 1..) {
                if nb.contains(&l) {
                    e += (ranks[j] * ranks[l]) as f64 / n2;
                }
            }
        }
        2.0 * e / (k * (k - 1)) as f64
    }

    /// Mean degree of the neighbours of `i`; `None` for isolated nodes.
    pub fn mean_neighbor_degree(&self, i: usize) -> Option<f64> {
        let k = self.degree(i);
        (k > 0).then(|| self.adj[i].iter().map(|&j| self.degree(j) as f64).sum::<f64>() / k as f64)
    }
}

/// Structural summary of a network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologyMetrics {
    pub nodes: usize,
    pub edges: usize,
    pub connected: bool,
    /// Mean shortest path over reachable unordered pairs.
    pub path_length: f64,
    pub k_ave: f64,
    pub c_ave: f64,
    /// Least squares slope of clustering against degree.
    pub ck_slope: Option<f64>,
    /// Least squares slope of mean neighbour degree against degree.
    pub nu: Option<f64>,
    pub l_rand: Option<f64>,
    pub c_rand: f64,
    /// `degree_hist[k]` nodes have degree `k`.
    pub degree_hist: Vec<usize>,
}

/// Ordinary least squares slope; `None` when `x` is constant.
pub fn ls_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len();
    if n < 2 || n != y.len() {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    if sxx <= 0.0 {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    Some(sxy / sxx)
}

pub fn topology_metrics(g: &Network) -> Result<TopologyMetrics> {
    let nodes: Vec<usize> = g.nodes().collect();
    let n = nodes.len();
    if n == 0 {
        return Err(Error::EmptyPopulation);
    }
    let mut total = 0usize;
    let mut pairs = 0usize;
    let mut connected = true;
    for &s in &nodes {
        let d = g.bfs(s);
        for &t in &nodes {
            if t > s {
                match d[t] {
                    Some(v) => {
                        total += v;
                        pairs += 1;
                    }
                    None => connected = false,
                }
            }
        }
    }
    let path_length = if pairs > 0 { total as f64 / pairs as f64 } else { 0.0 };
    let ks: Vec<f64> = nodes.iter().map(|&v| g.degree(v) as f64).collect();
    let cs: Vec<f64> = nodes.iter().map(|&v| g.clustering(v)).collect();
    let k_ave = ks.iter().sum::<f64>() / n as f64;
    let c_ave = cs.iter().sum::<f64>() / n as f64;
    let (kx, knn): (Vec<f64>, Vec<f64>) =
        nodes.iter().filter_map(|&v| g.mean_neighbor_degree(v).map(|m| (g.degree(v) as f64, m))).unzip();
    let max_k = ks.iter().fold(0.0f64, |a, &b| a.max(b)) as usize;
    let mut degree_hist = vec![0; max_k + 1];
    for &k in &ks {
        degree_hist[k as usize] += 1;
    }
    Ok(TopologyMetrics {
        nodes: n,
        edges: g.edge_count(),
        connected,
        path_length,
        k_ave,
        c_ave,
        ck_slope: ls_slope(&ks, &cs),
        nu: ls_slope(&kx, &knn),
        l_rand: (k_ave > 1.0).then(|| (n as f64).ln() / k_ave.ln()),
        c_rand: k_ave / n as f64,
        degree_hist,
    })
}

/// Rank of `i` within itself plus its neighbours (1 = best) and the
/// resulting epistatic fitness `(k - rank + 1) / k`. `keys` are indexed by
/// slot with lower meaning better; ties go to the lower slot.
pub fn epistatic_fitness(g: &Network, keys: &[f64], i: usize) -> Result<f64> {
    let k = g.degree(i);
    if k == 0 {
        return Err(Error::Topology(format!("node {i} is isolated")));
    }
    let better = g.neighbors(i).iter().filter(|&&j| keys[j] < keys[i] || (keys[j] == keys[i] && j < i)).count();
    let rank = better + 1;
    Ok((k + 1 - rank) as f64 / k as f64)
}

/// Mean pairwise Hamming distance over `members` divided by `L / 2`.
pub fn diversity(genomes: &[&[f64]], specs: &[GeneSpec]) -> Result<f64> {
    let n = genomes.len();
    if n < 2 {
        return Err(Error::InsufficientData(format!("diversity needs 2 individuals, got {n}")));
    }
    let mut sum = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            sum += hamming(genomes[i], genomes[j], specs)?;
        }
    }
    let pairs = (n * (n - 1) / 2) as f64;
    Ok(sum as f64 / pairs / (specs.len() as f64 / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clustering_examples() {
        let k4 = Network::complete(4);
        assert_eq!(k4.clustering(0), 1.0);
        let ring = Network::ring(6).unwrap();
        assert_eq!(ring.clustering(2), 0.0);
        let g = Network::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        assert!((g.clustering(0) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn path_lengths() {
        let m = topology_metrics(&Network::ring(8).unwrap()).unwrap();
        assert!((m.path_length - 16.0 / 7.0).abs() < 1e-12);
        let m = topology_metrics(&Network::complete(6)).unwrap();
        assert_eq!(m.path_length, 1.0);
        let star = Network::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let m = topology_metrics(&star).unwrap();
        assert!(m.nu.unwrap() < 0.0);
        assert_eq!(star.mean_neighbor_degree(0), Some(1.0));
        assert_eq!(star.mean_neighbor_degree(3), Some(4.0));
    }

    #[test]
    fn epistatic_examples() {
        let star = Network::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(epistatic_fitness(&star, &[0.0, 1.0, 2.0, 3.0], 0).unwrap(), 1.0);
        assert!((epistatic_fitness(&star, &[1.5, 1.0, 2.0, 3.0], 0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(epistatic_fitness(&star, &[9.0, 1.0, 2.0, 3.0], 0).unwrap(), 0.0);
        assert!(epistatic_fitness(&Network::empty(2), &[0.0, 0.0], 0).is_err());
    }

    #[test]
    fn weighted_clustering_example() {
        let g = Network::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap();
        let n = 10;
        assert!((g.weighted_clustering(0, &[1, n, n, 3], n) - 1.0 / 3.0).abs() < 1e-15);
        let k4 = Network::complete(4);
        assert_eq!(k4.weighted_clustering(0, &[4, 4, 4, 4], 4), k4.clustering(0));
    }

    #[test]
    fn diversity_examples() {
        let specs = vec![GeneSpec::binary(); 4];
        let a = [0.0, 1.0, 0.0, 1.0];
        let b = [1.0, 0.0, 1.0, 0.0];
        assert_eq!(diversity(&[&a, &a], &specs).unwrap(), 0.0);
        assert_eq!(diversity(&[&a, &b], &specs).unwrap(), 2.0);
        assert!(diversity(&[&a], &specs).is_err());
    }

    #[test]
    fn compaction_relabels() {
        let mut g = Network::ring(4).unwrap();
        g.remove_node(1);
        let (c, old) = g.compact();
        assert_eq!(old, vec![0, 2, 3]);
        assert_eq!(c.edges(), vec![(0, 2), (1, 2)]);
    }
}
