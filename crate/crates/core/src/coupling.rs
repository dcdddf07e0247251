//! Couplings of two marginals, the minimum-entropy coupling on small
//! supports, and the coupling divergence `D(p, q) = 2 W(p, q) - H(p) - H(q)`.
//!
//! Orientation is fixed throughout: rows index `q`, columns index `p`.

use serde::{Deserialize, Serialize};

use crate::aggregation::{aggregate, huffman_max_aggregation, Partition};
use crate::dist::{entropy_of, Dist, Entropy, EPS_SUM};
use crate::error::{Error, Result};

/// Default cap on `rows + cols` (after dropping zero-mass rows and columns)
/// for exact vertex enumeration.
pub const DEFAULT_COUPLING_CAP: usize = 10;

/// A joint distribution with rows summing to `q` and columns summing to `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coupling {
    pub matrix: Vec<Vec<f64>>,
    /// Column marginal.
    pub p: Vec<f64>,
    /// Row marginal.
    pub q: Vec<f64>,
}

impl Coupling {
    pub fn entropy(&self) -> Entropy {
        let h: f64 = self.matrix.iter().map(|row| entropy_of(row)).sum();
        Entropy(h.max(0.0))
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.p.len()
    }

    /// Largest deviation of a row or column sum from its marginal.
    pub fn marginal_error(&self) -> f64 {
        let mut err: f64 = 0.0;
        for (row, &qi) in self.matrix.iter().zip(&self.q) {
            err = err.max((row.iter().sum::<f64>() - qi).abs());
        }
        for (j, &pj) in self.p.iter().enumerate() {
            let col: f64 = self.matrix.iter().map(|row| row[j]).sum();
            err = err.max((col - pj).abs());
        }
        err
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivergenceReport {
    /// Entropy of the coupling used; the minimum `W(p, q)` when `exact`.
    pub w: Entropy,
    /// `2 w - H(p) - H(q)`; an upper bound on `D(p, q)` when not `exact`.
    pub d: f64,
    pub exact: bool,
}

impl DivergenceReport {
    fn new(w: Entropy, hp: f64, hq: f64, exact: bool) -> Self {
        DivergenceReport {
            w,
            d: 2.0 * w.bits() - hp - hq,
            exact,
        }
    }
}

/// The coupling placing `p_j` in row `i` for every column `j` of block `i`.
///
/// Columns are in the input order of `p`; rows follow the block order.
pub fn build_mq(p: &Dist, partition: &Partition) -> Result<Coupling> {
    let q = partition.block_sums(p)?;
    let cols = p.original_probs();
    let matrix = partition
        .blocks()
        .iter()
        .map(|block| {
            let mut row = vec![0.0; cols.len()];
            for &j in block {
                row[j] = cols[j];
            }
            row
        })
        .collect();
    Ok(Coupling { matrix, p: cols, q })
}

/// `H(p) - H(aggregate(p, partition))`, which bounds `D(p, q)` from above
/// because the block coupling has entropy `H(p)`.
pub fn d_upper_via_mq(p: &Dist, partition: &Partition) -> Result<f64> {
    let q = aggregate(p, partition)?;
    Ok(p.entropy().bits() - q.entropy().bits())
}

/// Visits every basic feasible solution of the transportation polytope with
/// row sums `rows` and column sums `cols` (all entries positive).
///
/// Each spanning tree of the complete bipartite graph determines one basic
/// solution; the callback receives the nonzero-pattern values as
/// `(row, col, value)` triples and is only called for feasible trees.
/// Degenerate vertices are visited once per tree that produces them.
pub fn for_each_transport_vertex<F: FnMut(&[(usize, usize, f64)])>(
    rows: &[f64],
    cols: &[f64],
    mut visit: F,
) {
    let (r, c) = (rows.len(), cols.len());
    if r == 0 || c == 0 {
        return;
    }
    let edges: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..c).map(move |j| (i, j))).collect();
    let need = r + c - 1;
    let supply: Vec<f64> = rows.iter().chain(cols).copied().collect();
    let mut chosen = Vec::with_capacity(need);
    let parent: Vec<usize> = (0..r + c).collect();
    let mut ctx = TreeSearch {
        r,
        edges: &edges,
        need,
        supply: &supply,
        values: Vec::with_capacity(need),
        visit: &mut visit,
    };
    ctx.extend(0, &mut chosen, parent);
}

struct TreeSearch<'a, F> {
    r: usize,
    edges: &'a [(usize, usize)],
    need: usize,
    supply: &'a [f64],
    values: Vec<(usize, usize, f64)>,
    visit: &'a mut F,
}

fn find(parent: &[usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

impl<F: FnMut(&[(usize, usize, f64)])> TreeSearch<'_, F> {
    fn extend(&mut self, start: usize, chosen: &mut Vec<usize>, parent: Vec<usize>) {
        if chosen.len() == self.need {
            self.solve(chosen);
            return;
        }
        let missing = self.need - chosen.len();
        for e in start..self.edges.len() {
            if self.edges.len() - e < missing {
                break;
            }
            let (i, j) = self.edges[e];
            let (a, b) = (find(&parent, i), find(&parent, self.r + j));
            if a == b {
                continue;
            }
            let mut next = parent.clone();
            next[a] = b;
            chosen.push(e);
            self.extend(e + 1, chosen, next);
            chosen.pop();
        }
    }

    /// Leaf-peels the tree: a leaf's only edge must carry its whole supply.
    fn solve(&mut self, chosen: &[usize]) {
        let nodes = self.supply.len();
        let mut residual = self.supply.to_vec();
        let mut degree = vec![0usize; nodes];
        let mut live = vec![true; chosen.len()];
        for &e in chosen {
            let (i, j) = self.edges[e];
            degree[i] += 1;
            degree[self.r + j] += 1;
        }
        self.values.clear();
        let mut left = chosen.len();
        while left > 0 {
            let Some(leaf) = (0..nodes).find(|&v| degree[v] == 1) else {
                return;
            };
            let k = (0..chosen.len())
                .find(|&k| {
                    live[k] && {
                        let (i, j) = self.edges[chosen[k]];
                        i == leaf || self.r + j == leaf
                    }
                })
                .expect("leaf has a live edge");
            let (i, j) = self.edges[chosen[k]];
            let other = if i == leaf { self.r + j } else { i };
            let value = residual[leaf];
            if value < -EPS_SUM * 1e-3 {
                return;
            }
            residual[leaf] = 0.0;
            residual[other] -= value;
            degree[leaf] -= 1;
            degree[other] -= 1;
            live[k] = false;
            left -= 1;
            self.values.push((i, j, value.max(0.0)));
        }
        if residual.iter().any(|x| x.abs() > EPS_SUM) {
            return;
        }
        (self.visit)(&self.values);
    }
}

/// Distinct vertices of the transportation polytope as dense matrices,
/// deduplicated to within `1e-12`.
pub fn transport_vertices(rows: &[f64], cols: &[f64]) -> Vec<Vec<Vec<f64>>> {
    let mut out: Vec<Vec<Vec<f64>>> = Vec::new();
    for_each_transport_vertex(rows, cols, |vals| {
        let mut m = vec![vec![0.0; cols.len()]; rows.len()];
        for &(i, j, v) in vals {
            m[i][j] = v;
        }
        let dup = out.iter().any(|o| {
            o.iter()
                .flatten()
                .zip(m.iter().flatten())
                .all(|(a, b)| (a - b).abs() <= 1e-12)
        });
        if !dup {
            out.push(m);
        }
    });
    out
}

fn lex_greater(a: &[(usize, usize, f64)], b: &[Vec<f64>]) -> bool {
    // Ties between vertices go to the lexicographically largest matrix, which
    // puts mass on the diagonal when p = q.
    let c = b.first().map_or(0, Vec::len);
    let mut dense = vec![vec![0.0; c]; b.len()];
    for &(i, j, v) in a {
        dense[i][j] = v;
    }
    for (x, y) in dense.iter().flatten().zip(b.iter().flatten()) {
        if x != y {
            return x > y;
        }
    }
    false
}

/// Exact minimum-entropy coupling with the default size cap.
pub fn min_entropy_coupling_exact(p: &Dist, q: &Dist) -> Result<(Coupling, DivergenceReport)> {
    min_entropy_coupling_exact_capped(p, q, DEFAULT_COUPLING_CAP)
}

/// Exact minimum-entropy coupling of `p` (columns) and `q` (rows).
///
/// Entropy is concave, so its minimum over the transportation polytope sits
/// at a vertex; all vertices are enumerated through spanning trees. Both
/// marginals are taken in sorted order. Zero-mass rows and columns are
/// dropped before enumeration and restored as zeros; `cap` bounds the
/// remaining `rows + cols`.
pub fn min_entropy_coupling_exact_capped(
    p: &Dist,
    q: &Dist,
    cap: usize,
) -> Result<(Coupling, DivergenceReport)> {
    let col_idx: Vec<usize> = (0..p.len()).filter(|&j| p.probs()[j] > 0.0).collect();
    let row_idx: Vec<usize> = (0..q.len()).filter(|&i| q.probs()[i] > 0.0).collect();
    if col_idx.is_empty() || row_idx.is_empty() {
        return Err(Error::MarginalMismatch(
            "marginal has no positive mass".into(),
        ));
    }
    let size = col_idx.len() + row_idx.len();
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    let cols: Vec<f64> = col_idx.iter().map(|&j| p.probs()[j]).collect();
    let rows: Vec<f64> = row_idx.iter().map(|&i| q.probs()[i]).collect();

    let mut best_h = f64::INFINITY;
    let mut best = vec![vec![0.0; cols.len()]; rows.len()];
    let mut found = false;
    for_each_transport_vertex(&rows, &cols, |vals| {
        let h: f64 = vals.iter().map(|&(_, _, v)| entropy_of(&[v])).sum();
        let better = h < best_h - 1e-12 || (h <= best_h + 1e-12 && lex_greater(vals, &best));
        if !found || better {
            found = true;
            best_h = h;
            for row in best.iter_mut() {
                row.iter_mut().for_each(|x| *x = 0.0);
            }
            for &(i, j, v) in vals {
                best[i][j] = v;
            }
        }
    });
    if !found {
        return Err(Error::MarginalMismatch(
            "no feasible coupling; marginals disagree".into(),
        ));
    }

    let mut matrix = vec![vec![0.0; p.len()]; q.len()];
    for (bi, &i) in row_idx.iter().enumerate() {
        for (bj, &j) in col_idx.iter().enumerate() {
            matrix[i][j] = best[bi][bj];
        }
    }
    let coupling = Coupling {
        matrix,
        p: p.probs().to_vec(),
        q: q.probs().to_vec(),
    };
    let report = DivergenceReport::new(
        coupling.entropy(),
        p.entropy().bits(),
        q.entropy().bits(),
        true,
    );
    Ok((coupling, report))
}

/// `D(p, q)` when `q = aggregate(p, partition)`: exact if the supports fit
/// under `cap`, otherwise the block-coupling upper bound, flagged inexact.
pub fn divergence_for_partition(
    p: &Dist,
    partition: &Partition,
    cap: usize,
) -> Result<(Coupling, DivergenceReport)> {
    let q = aggregate(p, partition)?;
    match min_entropy_coupling_exact_capped(p, &q, cap) {
        Err(Error::TooLarge { .. }) => {
            let mq = build_mq(p, partition)?;
            let report =
                DivergenceReport::new(mq.entropy(), p.entropy().bits(), q.entropy().bits(), false);
            Ok((mq, report))
        }
        other => other,
    }
}

/// Aggregation of `p` into `m` symbols whose divergence from `p` is within
/// `alpha()` of the best `m`-symbol approximation, with its certified
/// upper bound on `D(p, q)`.
pub fn approx_best_approximation(p: &Dist, m: usize) -> Result<(Dist, f64)> {
    let (result, _) = huffman_max_aggregation(p, m)?;
    let bound = d_upper_via_mq(p, &result.partition)?;
    Ok((result.dist, bound))
}
