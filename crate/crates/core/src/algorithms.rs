//! Constructive procedures: ReverseGreedy on convex games, greedy and biased
//! orientations of IS games, impact coefficients and the Z-decomposition of a
//! cover along a greedy run.
//!
//! Ties are always broken toward the lowest player index.

use crate::games::{Coalition, Cover, Game, IsGame};
use crate::{Error, Result};

/// The record of one ReverseGreedy (or greedy orientation) run.
///
/// `sets[0] = N`, `sets[r] = sets[r-1] ∖ {order[r-1]}` and
/// `deltas[r-1] = f(sets[r-1]) - f(sets[r]) > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyTrace {
    pub order: Vec<usize>,
    pub deltas: Vec<i64>,
    pub sets: Vec<Coalition>,
}

impl GreedyTrace {
    /// Number of stages `l`.
    pub fn stages(&self) -> usize {
        self.order.len()
    }
}

/// Grants each chosen player its marginal contribution to the current
/// coalition, then removes it, while some marginal is positive.
///
/// Players never chosen receive 0.
pub fn reverse_greedy<G: Game + ?Sized>(g: &G) -> (Cover, GreedyTrace) {
    let n = g.players();
    let mut current = Coalition::full(n);
    let mut alloc = vec![0i64; n];
    let mut trace = GreedyTrace {
        order: Vec::new(),
        deltas: Vec::new(),
        sets: vec![current],
    };
    let mut base_value = g.value(current);
    loop {
        let mut best: Option<(usize, i64)> = None;
        for i in current.members() {
            let m = base_value - g.value(current.without(i));
            if best.is_none_or(|(_, b)| m > b) {
                best = Some((i, m));
            }
        }
        match best {
            Some((i, delta)) if delta > 0 => {
                alloc[i] = delta;
                current = current.without(i);
                base_value -= delta;
                trace.order.push(i);
                trace.deltas.push(delta);
                trace.sets.push(current);
            }
            _ => break,
        }
    }
    (Cover::new(alloc).expect("positive marginals"), trace)
}

/// The standard greedy: starting from `∅`, add the player maximizing
/// `f(A ∪ {e}) - f(A)` while that gain is positive. Returns the allocation of
/// gains and the selection order.
pub fn forward_greedy<G: Game + ?Sized>(g: &G) -> (Cover, Vec<usize>) {
    let n = g.players();
    let full = Coalition::full(n);
    let mut current = Coalition::EMPTY;
    let mut alloc = vec![0i64; n];
    let mut order = Vec::new();
    loop {
        let base = g.value(current);
        let mut best: Option<(usize, i64)> = None;
        for i in Coalition(full.0 & !current.0).members() {
            let m = g.value(current.with(i)) - base;
            if best.is_none_or(|(_, b)| m > b) {
                best = Some((i, m));
            }
        }
        match best {
            Some((i, gain)) if gain > 0 => {
                alloc[i] = gain;
                current = current.with(i);
                order.push(i);
            }
            _ => break,
        }
    }
    (Cover::new(alloc).expect("positive gains"), order)
}

/// Each edge (by its index in [`IsGame::edges`]) mapped to one of its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    heads: Vec<usize>,
}

impl Orientation {
    pub fn new(g: &IsGame, heads: Vec<usize>) -> Result<Self> {
        let o = Self { heads };
        o.validate(g)?;
        Ok(o)
    }

    pub fn heads(&self) -> &[usize] {
        &self.heads
    }

    pub fn head(&self, edge: usize) -> usize {
        self.heads[edge]
    }

    fn validate(&self, g: &IsGame) -> Result<()> {
        if self.heads.len() != g.edges().len() {
            return Err(Error::InvalidOrientation(format!(
                "{} assignments for {} edges",
                self.heads.len(),
                g.edges().len()
            )));
        }
        for (k, (e, &h)) in g.edges().iter().zip(&self.heads).enumerate() {
            if !e.touches(h) {
                return Err(Error::InvalidOrientation(format!(
                    "edge {k} ({}, {}) assigned to non-endpoint {h}",
                    e.u, e.v
                )));
            }
        }
        Ok(())
    }
}

/// Repeatedly picks the vertex with the largest remaining adjacent weight,
/// orients its remaining edges toward it and deletes it.
///
/// Edges left over when every remaining weight is zero (zero-weight edges)
/// go to their lower-index endpoint.
pub fn greedy_orientation(g: &IsGame) -> (Orientation, GreedyTrace) {
    let n = g.players();
    let edges = g.edges();
    let mut heads: Vec<Option<usize>> = vec![None; edges.len()];
    let mut remaining: Vec<i64> = g.vertex_weights().to_vec();
    let mut alive = Coalition::full(n);
    let mut trace = GreedyTrace {
        order: Vec::new(),
        deltas: Vec::new(),
        sets: vec![alive],
    };
    loop {
        let mut best: Option<(usize, i64)> = None;
        for i in alive.members() {
            if best.is_none_or(|(_, b)| remaining[i] > b) {
                best = Some((i, remaining[i]));
            }
        }
        let Some((i, delta)) = best.filter(|&(_, d)| d > 0) else {
            break;
        };
        for (k, e) in edges.iter().enumerate() {
            if heads[k].is_none() && e.touches(i) {
                heads[k] = Some(i);
                remaining[e.other(i)] -= e.weight;
            }
        }
        remaining[i] = 0;
        alive = alive.without(i);
        trace.order.push(i);
        trace.deltas.push(delta);
        trace.sets.push(alive);
    }
    let heads = heads
        .iter()
        .zip(edges)
        .map(|(h, e)| h.unwrap_or(e.u.min(e.v)))
        .collect();
    (Orientation { heads }, trace)
}

/// Orients each edge toward the endpoint with the larger adjacent weight sum;
/// ties go to the lower-index endpoint.
pub fn biased_orientation(g: &IsGame) -> Orientation {
    let w = g.vertex_weights();
    let heads = g
        .edges()
        .iter()
        .map(|e| {
            let (lo, hi) = (e.u.min(e.v), e.u.max(e.v));
            if w[hi] > w[lo] {
                hi
            } else {
                lo
            }
        })
        .collect();
    Orientation { heads }
}

/// Player `i` receives the weight of the edges oriented toward it.
pub fn cover_of_orientation(g: &IsGame, o: &Orientation) -> Result<Cover> {
    o.validate(g)?;
    let mut alloc = vec![0i64; g.players()];
    for (e, &h) in g.edges().iter().zip(&o.heads) {
        alloc[h] += e.weight;
    }
    Cover::new(alloc)
}

/// `l × n` table of impact coefficients `a_r^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpactMatrix {
    pub rows: Vec<Vec<i64>>,
}

impl ImpactMatrix {
    pub fn get(&self, r: usize, j: usize) -> i64 {
        self.rows[r][j]
    }
}

/// Checks that `t` is a genuine run on `g`: the set chain and the increments.
pub fn validate_trace<G: Game + ?Sized>(g: &G, t: &GreedyTrace) -> Result<()> {
    let n = g.players();
    let l = t.order.len();
    if t.deltas.len() != l || t.sets.len() != l + 1 {
        return Err(Error::TraceMismatch("inconsistent trace lengths".into()));
    }
    if t.sets[0] != Coalition::full(n) {
        return Err(Error::TraceMismatch("A_0 is not the grand coalition".into()));
    }
    for r in 0..l {
        let i = t.order[r];
        if i >= n || !t.sets[r].contains(i) || t.sets[r + 1] != t.sets[r].without(i) {
            return Err(Error::TraceMismatch(format!("stage {} set chain", r + 1)));
        }
        let d = g.value(t.sets[r]) - g.value(t.sets[r + 1]);
        if d != t.deltas[r] || d <= 0 {
            return Err(Error::TraceMismatch(format!(
                "stage {} increment {} but game gives {d}",
                r + 1,
                t.deltas[r]
            )));
        }
    }
    Ok(())
}

/// `a_r^j = [f(A_{r-1}) - f(A_r)] - [f(A_{r-1} ∖ {j}) - f(A_r ∖ {j})]`.
pub fn impact_matrix<G: Game + ?Sized>(g: &G, t: &GreedyTrace) -> Result<ImpactMatrix> {
    validate_trace(g, t)?;
    let n = g.players();
    let rows = (0..t.stages())
        .map(|r| {
            let (prev, next) = (t.sets[r], t.sets[r + 1]);
            let delta = t.deltas[r];
            (0..n)
                .map(|j| delta - (g.value(prev.without(j)) - g.value(next.without(j))))
                .collect()
        })
        .collect();
    Ok(ImpactMatrix { rows })
}

/// Closed form of the impact coefficients for IS games: `w(i_r, j)` for a
/// neighbour `j ∈ A_r`, `Δ_r` on the diagonal, 0 elsewhere.
pub fn impact_matrix_is(g: &IsGame, t: &GreedyTrace) -> Result<ImpactMatrix> {
    validate_trace(g, t)?;
    let n = g.players();
    let rows = (0..t.stages())
        .map(|r| {
            let i = t.order[r];
            let mut row = vec![0i64; n];
            for e in g.edges().iter().filter(|e| e.touches(i)) {
                let j = e.other(i);
                if t.sets[r + 1].contains(j) {
                    row[j] += e.weight;
                }
            }
            row[i] = t.deltas[r];
            row
        })
        .collect();
    Ok(ImpactMatrix { rows })
}

/// `X_j = Σ_r Z_r^j` with `0 ≤ Z_r^j ≤ a_r^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZDecomposition {
    pub z: Vec<Vec<i64>>,
    pub cover: Cover,
}

impl ZDecomposition {
    /// `Σ_j Z_r^j` for every stage.
    pub fn stage_sums(&self) -> Vec<i64> {
        self.z.iter().map(|row| row.iter().sum()).collect()
    }

    /// Column sums reproduce the cover and every entry lies in `[0, a_r^j]`.
    pub fn is_consistent(&self, a: &ImpactMatrix) -> bool {
        let x = self.cover.as_slice();
        if self.z.len() != a.rows.len() {
            return false;
        }
        let columns_ok = (0..x.len()).all(|j| self.z.iter().map(|row| row[j]).sum::<i64>() == x[j]);
        let bounds_ok = self
            .z
            .iter()
            .zip(&a.rows)
            .all(|(zr, ar)| zr.len() == ar.len() && zr.iter().zip(ar).all(|(&z, &a)| 0 <= z && z <= a));
        columns_ok && bounds_ok
    }
}

/// Replays the greedy stages of `rg`, splitting each stage's edges between
/// the chosen vertex (when `opt` agrees with `rg`) and the other endpoint
/// (when it does not). Every stage total equals `Δ_r`.
pub fn z_decomposition(
    g: &IsGame,
    opt: &Orientation,
    rg: &Orientation,
    trace: &GreedyTrace,
) -> Result<ZDecomposition> {
    opt.validate(g)?;
    rg.validate(g)?;
    validate_trace(g, trace)?;
    let n = g.players();
    let mut z = vec![vec![0i64; n]; trace.stages()];
    for (r, row) in z.iter_mut().enumerate() {
        let i = trace.order[r];
        let later = trace.sets[r + 1];
        for (k, e) in g.edges().iter().enumerate() {
            if !e.touches(i) || !later.contains(e.other(i)) {
                continue;
            }
            if rg.head(k) != i {
                return Err(Error::InvalidOrientation(format!(
                    "edge {k} is not oriented toward stage-{} vertex {i}",
                    r + 1
                )));
            }
            if opt.head(k) == i {
                row[i] += e.weight;
            } else {
                row[e.other(i)] += e.weight;
            }
        }
    }
    Ok(ZDecomposition {
        z,
        cover: cover_of_orientation(g, opt)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{check_cover, ExplicitGame};

    fn triangle() -> IsGame {
        IsGame::from_named(&["A", "B", "C"], &[("A", "B", 2), ("A", "C", 4), ("B", "C", 6)])
            .unwrap()
    }

    #[test]
    fn reverse_greedy_on_triangle() {
        let (cover, trace) = reverse_greedy(&triangle().to_explicit().unwrap());
        assert_eq!(cover.as_slice(), &[2, 0, 10]);
        assert_eq!(trace.order, vec![2, 0]);
        assert_eq!(trace.deltas, vec![10, 2]);
        assert_eq!(
            trace.sets,
            vec![
                Coalition::full(3),
                Coalition::from_members([0, 1]),
                Coalition::singleton(1)
            ]
        );
    }

    #[test]
    fn reverse_greedy_small_cases() {
        let edge = IsGame::from_edges(2, &[(0, 1, 5)]).unwrap();
        let (cover, trace) = reverse_greedy(&edge);
        assert_eq!(cover.as_slice(), &[5, 0]);
        assert_eq!(trace.order, vec![0]);
        let add = ExplicitGame::additive(&[3, 0, 4]).unwrap();
        assert_eq!(reverse_greedy(&add).0.as_slice(), &[3, 0, 4]);
    }

    #[test]
    fn greedy_orientation_examples() {
        let g = triangle();
        let (o, trace) = greedy_orientation(&g);
        assert_eq!(cover_of_orientation(&g, &o).unwrap().as_slice(), &[2, 0, 10]);
        assert_eq!(trace.order, vec![2, 0]);
        let edge = IsGame::from_edges(2, &[(0, 1, 5)]).unwrap();
        let (o, _) = greedy_orientation(&edge);
        assert_eq!(o.heads(), &[0]);
        let path = IsGame::from_edges(3, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let (o, trace) = greedy_orientation(&path);
        assert_eq!(o.heads(), &[1, 1]);
        assert_eq!(trace.order, vec![1]);
        assert_eq!(cover_of_orientation(&path, &o).unwrap().as_slice(), &[0, 2, 0]);
    }

    #[test]
    fn zero_weight_edges_are_oriented() {
        let g = IsGame::from_edges(3, &[(0, 1, 0), (1, 2, 1), (0, 2, 1)]).unwrap();
        let (o, _) = greedy_orientation(&g);
        let c = cover_of_orientation(&g, &o).unwrap();
        assert_eq!(c, reverse_greedy(&g).0);
        assert!(check_cover(&g, &c).unwrap().is_cover());
    }

    #[test]
    fn biased_examples() {
        let g = triangle();
        let o = biased_orientation(&g);
        assert_eq!(o.heads(), &[1, 2, 2]);
        assert_eq!(cover_of_orientation(&g, &o).unwrap().as_slice(), &[0, 2, 10]);
        let edge = IsGame::from_edges(2, &[(1, 0, 5)]).unwrap();
        assert_eq!(biased_orientation(&edge).heads(), &[0]);
        let star = IsGame::from_edges(4, &[(1, 0, 1), (0, 2, 2), (3, 0, 3)]).unwrap();
        assert_eq!(biased_orientation(&star).heads(), &[0, 0, 0]);
    }

    #[test]
    fn orientation_covers() {
        let g = triangle();
        let to_c = Orientation::new(&g, vec![0, 2, 2]).unwrap();
        assert_eq!(cover_of_orientation(&g, &to_c).unwrap().as_slice(), &[2, 0, 10]);
        assert!(Orientation::new(&g, vec![0, 2]).is_err());
        assert!(Orientation::new(&g, vec![2, 2, 2]).is_err());
        let edge = IsGame::from_edges(2, &[(0, 1, 5)]).unwrap();
        for h in [0, 1] {
            let c = cover_of_orientation(&edge, &Orientation::new(&edge, vec![h]).unwrap()).unwrap();
            assert_eq!(c.total(), 5);
            assert!(c.as_slice().contains(&0));
        }
    }

    #[test]
    fn impact_on_triangle() {
        let g = triangle();
        let t = g.to_explicit().unwrap();
        let (_, trace) = reverse_greedy(&t);
        let a = impact_matrix(&t, &trace).unwrap();
        assert_eq!(a.rows[0], vec![4, 6, 10]);
        assert_eq!(a.rows[1], vec![2, 2, 0]);
        assert_eq!(a, impact_matrix_is(&g, &trace).unwrap());
        for (r, &i) in trace.order.iter().enumerate() {
            assert_eq!(a.get(r, i), trace.deltas[r]);
        }
    }

    #[test]
    fn trace_mismatch_is_rejected() {
        let t = triangle().to_explicit().unwrap();
        let (_, mut trace) = reverse_greedy(&t);
        trace.deltas[0] = 9;
        assert!(matches!(impact_matrix(&t, &trace), Err(Error::TraceMismatch(_))));
        let other = ExplicitGame::additive(&[1, 1]).unwrap();
        let (_, trace) = reverse_greedy(&t);
        assert!(impact_matrix(&other, &trace).is_err());
    }

    #[test]
    fn z_decomposition_on_triangle() {
        let g = triangle();
        let (rg, trace) = greedy_orientation(&g);
        let a = impact_matrix_is(&g, &trace).unwrap();

        let same = z_decomposition(&g, &rg, &rg, &trace).unwrap();
        assert_eq!(same.z, vec![vec![0, 0, 10], vec![2, 0, 0]]);
        assert_eq!(same.stage_sums(), trace.deltas);
        assert!(same.is_consistent(&a));

        // opt orients AB toward B instead of A
        let opt = Orientation::new(&g, vec![1, 2, 2]).unwrap();
        let z = z_decomposition(&g, &opt, &rg, &trace).unwrap();
        assert_eq!(z.z, vec![vec![0, 0, 10], vec![0, 2, 0]]);
        assert_eq!(z.stage_sums(), trace.deltas);
        assert!(z.is_consistent(&a));

        let wrong = Orientation::new(&g, vec![0, 0, 2]).unwrap();
        assert!(z_decomposition(&g, &opt, &wrong, &trace).is_err());
    }

    #[test]
    fn forward_greedy_on_dual_matches() {
        let t = triangle().to_explicit().unwrap();
        let (c1, tr) = reverse_greedy(&t);
        let (c2, order) = forward_greedy(&crate::games::dual_game(&t));
        assert_eq!(c1, c2);
        assert_eq!(tr.order, order);
    }
}
