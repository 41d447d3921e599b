//! Integer maximum flow (Dinic) and bounded transportation feasibility.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
}

/// A residual network with integer capacities.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    level: Vec<i32>,
    cursor: Vec<usize>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        Self {
            arcs: Vec::new(),
            adj: vec![Vec::new(); nodes],
            level: vec![0; nodes],
            cursor: vec![0; nodes],
        }
    }

    /// Adds `from → to` with capacity `cap`; returns the arc id.
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) -> usize {
        debug_assert!(cap >= 0);
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.adj[from].push(id);
        self.arcs.push(Arc { to: from, cap: 0 });
        self.adj[to].push(id + 1);
        id
    }

    /// Flow currently pushed through arc `id`.
    pub fn flow(&self, id: usize) -> i64 {
        self.arcs[id ^ 1].cap
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &id in &self.adj[u] {
                let a = &self.arcs[id];
                if a.cap > 0 && self.level[a.to] < 0 {
                    self.level[a.to] = self.level[u] + 1;
                    queue.push_back(a.to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, limit: i64) -> i64 {
        if u == t {
            return limit;
        }
        while self.cursor[u] < self.adj[u].len() {
            let id = self.adj[u][self.cursor[u]];
            let (to, cap) = (self.arcs[id].to, self.arcs[id].cap);
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let pushed = self.dfs(to, t, limit.min(cap));
                if pushed > 0 {
                    self.arcs[id].cap -= pushed;
                    self.arcs[id ^ 1].cap += pushed;
                    return pushed;
                }
            }
            self.cursor[u] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                let pushed = self.dfs(s, t, i64::MAX);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }
}

/// Finds an integer matrix `z` (stages × players) with
///
/// * column sums `Σ_r z[r][j] = supply[j]`,
/// * entries `0 ≤ z[r][j] ≤ cap[r][j]`,
/// * row sums within `[row_lower[r], row_upper[r]]`,
///
/// or `None` if none exists. Lower bounds are handled by the usual
/// circulation reduction.
pub fn bounded_transportation(
    supply: &[i64],
    cap: &[Vec<i64>],
    row_lower: &[i64],
    row_upper: &[i64],
) -> Option<Vec<Vec<i64>>> {
    let n = supply.len();
    let l = cap.len();
    // nodes: source, players, stages, sink, super source, super sink
    let src = 0;
    let player = |j: usize| 1 + j;
    let stage = |r: usize| 1 + n + r;
    let sink = 1 + n + l;
    let (ss, tt) = (sink + 1, sink + 2);
    let mut net = FlowNetwork::new(sink + 3);
    let mut excess = vec![0i64; sink + 3];

    // source → player with lower = upper = supply: only the forced part
    for (j, &x) in supply.iter().enumerate() {
        excess[player(j)] += x;
        excess[src] -= x;
    }
    let mut cells = vec![vec![usize::MAX; n]; l];
    for r in 0..l {
        for j in 0..n {
            if cap[r][j] > 0 {
                cells[r][j] = net.add_arc(player(j), stage(r), cap[r][j]);
            }
        }
        let lo = row_lower[r].max(0);
        let hi = row_upper[r];
        if hi < lo {
            return None;
        }
        net.add_arc(stage(r), sink, hi - lo);
        excess[sink] += lo;
        excess[stage(r)] -= lo;
    }
    let total: i64 = supply.iter().sum();
    net.add_arc(sink, src, total.max(0) + row_upper.iter().copied().map(|u| u.max(0)).sum::<i64>());

    let mut demand = 0;
    for (v, &e) in excess.iter().enumerate() {
        if e > 0 {
            net.add_arc(ss, v, e);
            demand += e;
        } else if e < 0 {
            net.add_arc(v, tt, -e);
        }
    }
    if net.max_flow(ss, tt) != demand {
        return None;
    }
    Some(
        cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&id| if id == usize::MAX { 0 } else { net.flow(id) })
                    .collect()
            })
            .collect(),
    )
}
