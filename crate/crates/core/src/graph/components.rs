use serde::{Deserialize, Serialize};

use super::{Graph, NodeId};

/// Connected-component partition. Directed graphs use weak connectivity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentInfo {
    /// Per-node label; labels are numbered in order of each component's
    /// smallest node id.
    pub component_id: Vec<usize>,
    pub component_sizes: Vec<usize>,
    /// Label of the largest component; ties go to the smallest label.
    pub largest_label: usize,
    pub largest_size: usize,
    pub largest_fraction: f64,
}

impl ComponentInfo {
    pub fn num_components(&self) -> usize {
        self.component_sizes.len()
    }

    /// Members of the largest component in increasing order.
    pub fn largest_members(&self) -> Vec<NodeId> {
        (0..self.component_id.len()).filter(|&v| self.component_id[v] == self.largest_label).collect()
    }
}

pub fn largest_component(g: &Graph) -> ComponentInfo {
    let n = g.num_nodes();
    let mut label = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        label[start] = id;
        stack.push(start);
        while let Some(u) = stack.pop() {
            size += 1;
            let both = g.out_neighbors(u).iter().chain(if g.is_directed() { g.in_neighbors(u) } else { &[] });
            for &v in both {
                if label[v] == usize::MAX {
                    label[v] = id;
                    stack.push(v);
                }
            }
        }
        sizes.push(size);
    }
    let (largest_label, largest_size) = sizes
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0), |best, (i, s)| if s > best.1 { (i, s) } else { best });
    ComponentInfo {
        component_id: label,
        component_sizes: sizes,
        largest_label,
        largest_size,
        largest_fraction: if n == 0 { 0.0 } else { largest_size as f64 / n as f64 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn two_triangles() {
        let g = build_graph(6, false, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)], false).unwrap();
        let c = largest_component(&g);
        assert_eq!(c.largest_size, 3);
        assert_eq!(c.largest_fraction, 0.5);
        assert_eq!(c.largest_label, 0);
        assert_eq!(c.largest_members(), vec![0, 1, 2]);
        assert_eq!(c.num_components(), 2);
    }

    #[test]
    fn edgeless() {
        let g = build_graph(5, false, [], false).unwrap();
        let c = largest_component(&g);
        assert_eq!(c.largest_size, 1);
        assert_eq!(c.num_components(), 5);
    }

    #[test]
    fn tie_goes_to_lowest_node() {
        let g = build_graph(5, false, [(3, 4), (1, 2)], false).unwrap();
        let c = largest_component(&g);
        assert_eq!(c.largest_members(), vec![1, 2]);
    }

    #[test]
    fn directed_uses_weak_components() {
        let g = build_graph(4, true, [(1, 0), (2, 1)], false).unwrap();
        let c = largest_component(&g);
        assert_eq!(c.largest_size, 3);
        assert_eq!(c.component_id[3], 1);
    }
}
