use serde::Serialize;

use super::info::mutual_information;
use super::joint::JointDistribution;

/// Connected components of the bipartite support graph of `P_{XY}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentPartition {
    /// Component of every support pair `(x, y)`, row-major.
    pub edge_components: Vec<((usize, usize), usize)>,
    pub x_component: Vec<usize>,
    pub y_component: Vec<usize>,
    /// `P_C(j)`.
    pub weights: Vec<f64>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.weights.len()
    }

    pub fn x_members(&self, j: usize) -> Vec<usize> {
        members(&self.x_component, j)
    }

    pub fn y_members(&self, j: usize) -> Vec<usize> {
        members(&self.y_component, j)
    }

    /// `P_{X_j, Y_j}`: the distribution restricted to component `j` and renormalized.
    pub fn component_distribution(&self, p: &JointDistribution, j: usize) -> JointDistribution {
        let xs = self.x_members(j);
        let ys = self.y_members(j);
        let w = self.weights[j];
        let table = xs
            .iter()
            .map(|&x| ys.iter().map(|&y| p.p(x, y) / w).collect())
            .collect();
        JointDistribution::new(
            p.x_alphabet().subset(&xs),
            p.y_alphabet().subset(&ys),
            renormalize(table),
        )
        .expect("component restriction is a distribution")
    }

    /// `I(X;Y|C) = Σ_j P_C(j) I(X_j;Y_j)`.
    pub fn conditional_mutual_information(&self, p: &JointDistribution) -> f64 {
        (0..self.count())
            .map(|j| self.weights[j] * mutual_information(&self.component_distribution(p, j)))
            .sum()
    }
}

fn members(assignment: &[usize], j: usize) -> Vec<usize> {
    assignment
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == j)
        .map(|(i, _)| i)
        .collect()
}

// Division by the component weight can leave the sum a few ulps from 1.
fn renormalize(mut table: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let sum: f64 = table.iter().flatten().sum();
    for v in table.iter_mut().flatten() {
        *v /= sum;
    }
    table
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Splits the support graph into connected components. Components are
/// numbered by their first x-symbol.
pub fn connected_components(p: &JointDistribution) -> ComponentPartition {
    let (nx, ny) = (p.nx(), p.ny());
    let support = p.support();
    let mut sets = DisjointSets::new(nx + ny);
    for &(x, y) in &support {
        sets.union(x, nx + y);
    }

    let mut root_to_component = vec![usize::MAX; nx + ny];
    let mut next = 0;
    let mut component_of = |sets: &mut DisjointSets, node: usize| {
        let root = sets.find(node);
        if root_to_component[root] == usize::MAX {
            root_to_component[root] = next;
            next += 1;
        }
        root_to_component[root]
    };
    let x_component: Vec<usize> = (0..nx).map(|x| component_of(&mut sets, x)).collect();
    // Every y has positive marginal, so it already shares a root with some x.
    let y_component: Vec<usize> = (0..ny).map(|y| component_of(&mut sets, nx + y)).collect();

    let mut weights = vec![0.0; next];
    let edge_components = support
        .iter()
        .map(|&(x, y)| {
            let c = x_component[x];
            weights[c] += p.p(x, y);
            ((x, y), c)
        })
        .collect();

    ComponentPartition {
        edge_components,
        x_component,
        y_component,
        weights,
    }
}
