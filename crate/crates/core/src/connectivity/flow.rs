//! Dinic max-flow on undirected integer-capacity networks.
//!
//! Augmentation order is fixed by arc insertion order, so results (including
//! the returned minimum cut side) are deterministic.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    /// Adds an undirected edge: two opposite arcs, each with capacity `c`.
    pub fn add_undirected(&mut self, a: usize, b: usize, c: u64) {
        if a == b || c == 0 {
            return;
        }
        self.adj[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.adj[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(c);
    }

    fn levels(&self, s: usize) -> Vec<u32> {
        let mut level = vec![u32::MAX; self.adj.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &arc in &self.adj[v] {
                let w = self.to[arc];
                if self.cap[arc] > 0 && level[w] == u32::MAX {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        level
    }

    fn push(&mut self, v: usize, t: usize, limit: u64, level: &[u32], iter: &mut [usize]) -> u64 {
        if v == t {
            return limit;
        }
        while iter[v] < self.adj[v].len() {
            let arc = self.adj[v][iter[v]];
            let w = self.to[arc];
            if self.cap[arc] > 0 && level[w] == level[v] + 1 {
                let got = self.push(w, t, limit.min(self.cap[arc]), level, iter);
                if got > 0 {
                    self.cap[arc] -= got;
                    self.cap[arc ^ 1] += got;
                    return got;
                }
            }
            iter[v] += 1;
        }
        0
    }

    /// Maximum `s`–`t` flow value. Consumes residual capacity; call
    /// [`FlowNetwork::source_side`] afterwards for a minimum cut.
    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        self.max_flow_capped(s, t, u64::MAX)
    }

    /// Like [`FlowNetwork::max_flow`] but stops once the flow reaches `cap`.
    pub fn max_flow_capped(&mut self, s: usize, t: usize, cap: u64) -> u64 {
        assert_ne!(s, t);
        let mut total = 0u64;
        while total < cap {
            let level = self.levels(s);
            if level[t] == u32::MAX {
                break;
            }
            let mut iter = vec![0; self.adj.len()];
            loop {
                let got = self.push(s, t, cap - total, &level, &mut iter);
                if got == 0 {
                    break;
                }
                total += got;
                if total >= cap {
                    break;
                }
            }
        }
        total
    }

    /// Vertices reachable from `s` in the residual network.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &arc in &self.adj[v] {
                let w = self.to[arc];
                if self.cap[arc] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}
