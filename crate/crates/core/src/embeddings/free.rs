use std::collections::VecDeque;

use super::phase::{fold_angle, PhaseAssignment};
use crate::probdist::{connected_components, JointDistribution};
use crate::{Error, Result};

/// Gauge-fixed parametrization of phase functions.
///
/// Multiplying amplitudes by `e^{iα(x)} e^{iβ(y)}` is a local diagonal
/// unitary and leaves every leakage unchanged, so `θ` can be set to zero on a
/// spanning forest of the support graph. The remaining (non-tree) edges carry
/// the free coordinates.
#[derive(Debug, Clone)]
pub struct FreePhases {
    source: JointDistribution,
    support: Vec<(usize, usize)>,
    is_tree: Vec<bool>,
    coordinate_edges: Vec<usize>,
}

/// Builds the spanning forest by scanning support edges in row-major order.
pub fn free_phase_coordinates(p: &JointDistribution) -> FreePhases {
    let support = p.support();
    let nx = p.nx();
    let mut parent: Vec<usize> = (0..nx + p.ny()).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    let mut is_tree = Vec::with_capacity(support.len());
    for &(x, y) in &support {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, nx + y));
        if rx != ry {
            parent[rx.max(ry)] = rx.min(ry);
            is_tree.push(true);
        } else {
            is_tree.push(false);
        }
    }
    let coordinate_edges = (0..support.len()).filter(|&i| !is_tree[i]).collect();
    FreePhases {
        source: p.clone(),
        support,
        is_tree,
        coordinate_edges,
    }
}

impl FreePhases {
    /// `|support| − |X| − |Y| + #components`.
    pub fn count(&self) -> usize {
        self.coordinate_edges.len()
    }

    pub fn source(&self) -> &JointDistribution {
        &self.source
    }

    /// Support pairs that carry the coordinates, in order.
    pub fn coordinate_pairs(&self) -> Vec<(usize, usize)> {
        self.coordinate_edges.iter().map(|&i| self.support[i]).collect()
    }

    /// `θ = 0` on the forest and `coords` on the remaining edges.
    pub fn embed(&self, coords: &[f64]) -> Result<PhaseAssignment> {
        if coords.len() != self.count() {
            return Err(Error::CoordinateCount {
                expected: self.count(),
                found: coords.len(),
            });
        }
        let mut theta = vec![0.0; self.support.len()];
        for (&edge, &c) in self.coordinate_edges.iter().zip(coords) {
            theta[edge] = c;
        }
        PhaseAssignment::from_vec(&self.source, theta)
    }

    /// Coordinates of the gauge-equivalent representative of `theta`.
    pub fn gauge_reduce(&self, theta: &PhaseAssignment) -> Result<Vec<f64>> {
        theta.matches(&self.source)?;
        let (alpha, beta) = self.gauge(theta.values());
        Ok(self
            .coordinate_edges
            .iter()
            .map(|&i| {
                let (x, y) = self.support[i];
                fold_angle(theta.values()[i] + alpha[x] + beta[y])
            })
            .collect())
    }

    /// Solves `θ(x,y) + α(x) + β(y) = 0` on every tree edge.
    fn gauge(&self, theta: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let (nx, ny) = (self.source.nx(), self.source.ny());
        let mut x_edges = vec![Vec::new(); nx];
        let mut y_edges = vec![Vec::new(); ny];
        for (i, &(x, y)) in self.support.iter().enumerate() {
            if self.is_tree[i] {
                x_edges[x].push(i);
                y_edges[y].push(i);
            }
        }
        let mut alpha: Vec<Option<f64>> = vec![None; nx];
        let mut beta: Vec<Option<f64>> = vec![None; ny];
        // Nodes: x as (true, x), y as (false, y).
        let mut queue = VecDeque::new();
        for root in 0..nx {
            if alpha[root].is_some() {
                continue;
            }
            alpha[root] = Some(0.0);
            queue.push_back((true, root));
            while let Some((is_x, v)) = queue.pop_front() {
                let edges = if is_x { &x_edges[v] } else { &y_edges[v] };
                for &i in edges {
                    let (x, y) = self.support[i];
                    if is_x && beta[y].is_none() {
                        beta[y] = Some(-theta[i] - alpha[x].unwrap());
                        queue.push_back((false, y));
                    } else if !is_x && alpha[x].is_none() {
                        alpha[x] = Some(-theta[i] - beta[y].unwrap());
                        queue.push_back((true, x));
                    }
                }
            }
        }
        (
            alpha.into_iter().map(|a| a.unwrap_or(0.0)).collect(),
            beta.into_iter().map(|b| b.unwrap_or(0.0)).collect(),
        )
    }

    /// The closed-form count, independent of the forest construction.
    pub fn cycle_rank(p: &JointDistribution) -> usize {
        let components = connected_components(p).count();
        p.support().len() + components - p.nx() - p.ny()
    }
}
