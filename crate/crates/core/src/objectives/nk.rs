//! NK fitness landscapes with random epistatic links.

use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::seeded;

pub const MAX_K: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct NkLandscape {
    n: usize,
    k: usize,
    seed: u64,
    links: Vec<Vec<usize>>,
    tables: Vec<Vec<f64>>,
}

impl NkLandscape {
    pub fn generate(n: usize, k: usize, seed: u64) -> Result<Self> {
        if n == 0 || k >= n {
            return Err(Error::InvalidProblemParameter(format!("nk needs 0 <= K < N, got N={n}, K={k}")));
        }
        if k > MAX_K {
            return Err(Error::InvalidProblemParameter(format!("nk K={k} exceeds the cap of {MAX_K}")));
        }
        let mut rng = seeded(seed);
        let mut links = Vec::with_capacity(n);
        for i in 0..n {
            let picks = sample(&mut rng, n - 1, k);
            links.push(picks.iter().map(|p| if p >= i { p + 1 } else { p }).collect());
        }
        let size = 1usize << (k + 1);
        let tables = (0..n).map(|_| (0..size).map(|_| rng.random::<f64>()).collect()).collect();
        Ok(NkLandscape { n, k, seed, links, tables })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn links(&self) -> &[Vec<usize>] {
        &self.links
    }

    pub fn tables(&self) -> &[Vec<f64>] {
        &self.tables
    }

    /// Table index for bit `i`: the bit itself is the most significant,
    /// followed by its partners in link order.
    pub fn index(&self, x: &[f64], i: usize) -> usize {
        let mut idx = usize::from(x[i] == 1.0);
        for &z in &self.links[i] {
            idx = (idx << 1) | usize::from(x[z] == 1.0);
        }
        idx
    }

    /// Mean per-bit contribution, in `[0, 1]`, maximized.
    pub fn fitness(&self, x: &[f64]) -> f64 {
        let total: f64 = (0..self.n).map(|i| self.tables[i][self.index(x, i)]).sum();
        total / self.n as f64
    }

    /// Deterministic text dump. Table values are stored as exact bit patterns.
    pub fn dump(&self) -> String {
        let mut out = format!("nk {} {} {}\n", self.n, self.k, self.seed);
        for (links, table) in self.links.iter().zip(&self.tables) {
            let l: Vec<String> = links.iter().map(|v| v.to_string()).collect();
            let _ = write!(out, "{}", l.join(" "));
            out.push_str(" |");
            for v in table {
                let _ = write!(out, " {:016x}", v.to_bits());
            }
            out.push('\n');
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidProblemParameter(format!("nk dump: {m}"));
        let mut lines = text.lines();
        let head: Vec<&str> = lines.next().ok_or_else(|| bad("empty"))?.split_whitespace().collect();
        if head.len() != 4 || head[0] != "nk" {
            return Err(bad("bad header"));
        }
        let n: usize = head[1].parse().map_err(|_| bad("bad N"))?;
        let k: usize = head[2].parse().map_err(|_| bad("bad K"))?;
        let seed: u64 = head[3].parse().map_err(|_| bad("bad seed"))?;
        if k >= n || k > MAX_K {
            return Err(bad("bad K"));
        }
        let mut links = Vec::with_capacity(n);
        let mut tables = Vec::with_capacity(n);
        for (i, line) in lines.enumerate().take(n) {
            let (l, t) = line.split_once('|').ok_or_else(|| bad("missing separator"))?;
            let l: Vec<usize> = l
                .split_whitespace()
                .map(|v| v.parse().map_err(|_| bad("bad link")))
                .collect::<Result<_>>()?;
            let t: Vec<f64> = t
                .split_whitespace()
                .map(|v| u64::from_str_radix(v, 16).map(f64::from_bits).map_err(|_| bad("bad value")))
                .collect::<Result<_>>()?;
            if l.len() != k || l.iter().any(|&z| z == i || z >= n) || t.len() != 1 << (k + 1) {
                return Err(bad("inconsistent row"));
            }
            links.push(l);
            tables.push(t);
        }
        if links.len() != n {
            return Err(bad("truncated"));
        }
        Ok(NkLandscape { n, k, seed, links, tables })
    }
}
