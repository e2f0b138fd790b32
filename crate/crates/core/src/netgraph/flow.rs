//! Integral max-flow by shortest augmenting paths.
//!
//! Arcs are scanned in insertion order, so callers that insert arcs in
//! canonical channel order get reproducible flows and decompositions.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u32,
    rev: usize,
    /// Caller-supplied tag; `None` marks a residual back-arc.
    label: Option<usize>,
    original: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowGraph {
    adj: Vec<Vec<Arc>>,
}

impl FlowGraph {
    pub(crate) fn new(nodes: usize) -> Self {
        FlowGraph {
            adj: vec![Vec::new(); nodes],
        }
    }

    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: u32, label: usize) {
        let rf = self.adj[to].len() + usize::from(from == to);
        let rt = self.adj[from].len();
        self.adj[from].push(Arc {
            to,
            cap,
            rev: rf,
            label: Some(label),
            original: cap,
        });
        self.adj[to].push(Arc {
            to: from,
            cap: 0,
            rev: rt,
            label: None,
            original: 0,
        });
    }

    /// Pushes flow from `s` to `t` until saturated or `limit` is reached.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        if s == t {
            return 0;
        }
        let mut total = 0;
        while total < limit {
            let Some(path) = self.augmenting_path(s, t) else {
                break;
            };
            let bottleneck = path
                .iter()
                .map(|&(u, i)| self.adj[u][i].cap)
                .min()
                .unwrap_or(0)
                .min(limit - total);
            for &(u, i) in &path {
                self.adj[u][i].cap -= bottleneck;
                let (v, r) = (self.adj[u][i].to, self.adj[u][i].rev);
                self.adj[v][r].cap += bottleneck;
            }
            total += bottleneck;
        }
        total
    }

    fn augmenting_path(&self, s: usize, t: usize) -> Option<Vec<(usize, usize)>> {
        let n = self.adj.len();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for (i, arc) in self.adj[u].iter().enumerate() {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    prev[arc.to] = Some((u, i));
                    if arc.to == t {
                        let mut path = Vec::new();
                        let mut cur = t;
                        while let Some((p, i)) = prev[cur] {
                            path.push((p, i));
                            cur = p;
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(arc.to);
                }
            }
        }
        None
    }

    /// Nodes reachable from `s` in the residual graph.
    pub(crate) fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for arc in &self.adj[u] {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }

    /// Labels of forward arcs leaving the residual-reachable side of `s`.
    pub(crate) fn min_cut_labels(&self, s: usize) -> Vec<usize> {
        let reach = self.residual_reachable(s);
        let mut cut: Vec<usize> = self
            .adj
            .iter()
            .enumerate()
            .filter(|(u, _)| reach[*u])
            .flat_map(|(_, arcs)| arcs.iter())
            .filter(|a| a.label.is_some() && a.original > 0 && !reach[a.to])
            .filter_map(|a| a.label)
            .collect();
        cut.sort_unstable();
        cut
    }

    /// Splits the current flow into `s -> t` walks, each a list of arc labels.
    /// At every node the unused flow-carrying arc with the smallest label is
    /// taken first.
    pub(crate) fn decompose(&self, s: usize, t: usize) -> Vec<Vec<usize>> {
        let mut used: Vec<Vec<u32>> = self
            .adj
            .iter()
            .map(|arcs| {
                arcs.iter()
                    .map(|a| {
                        if a.label.is_some() {
                            a.original - a.cap.min(a.original)
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        let mut paths = Vec::new();
        loop {
            let mut u = s;
            let mut walk = Vec::new();
            loop {
                if u == t {
                    break;
                }
                let next = self.adj[u]
                    .iter()
                    .enumerate()
                    .filter(|(i, a)| a.label.is_some() && used[u][*i] > 0)
                    .min_by_key(|(_, a)| a.label);
                let Some((i, arc)) = next else {
                    break;
                };
                used[u][i] -= 1;
                walk.push(arc.label.expect("forward arc"));
                u = arc.to;
            }
            if u != t || walk.is_empty() {
                break;
            }
            paths.push(walk);
        }
        paths
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_series() {
        // 0 -> 1 (x2), 1 -> 2 (x1), 0 -> 2
        let mut g = FlowGraph::new(3);
        g.add_arc(0, 1, 1, 0);
        g.add_arc(0, 1, 1, 1);
        g.add_arc(1, 2, 1, 2);
        g.add_arc(0, 2, 1, 3);
        assert_eq!(g.max_flow(0, 2, u32::MAX), 2);
        let mut paths = g.decompose(0, 2);
        paths.sort();
        assert_eq!(paths, vec![vec![0, 2], vec![3]]);
        assert_eq!(g.min_cut_labels(0), vec![2, 3]);
    }

    #[test]
    fn limit_and_disconnected() {
        let mut g = FlowGraph::new(4);
        g.add_arc(0, 1, 5, 0);
        g.add_arc(1, 2, 5, 1);
        assert_eq!(g.max_flow(0, 3, u32::MAX), 0);
        let mut g2 = g.clone();
        assert_eq!(g2.max_flow(0, 2, 3), 3);
    }
}
