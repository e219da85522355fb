use crate::graph::{Graph, NodeId};

/// A selected seed set together with the method that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedSet {
    nodes: Vec<NodeId>,
    method: String,
    params: String,
}

impl SeedSet {
    pub fn new(nodes: Vec<NodeId>, method: impl Into<String>, params: impl Into<String>) -> Self {
        Self {
            nodes,
            method: method.into(),
            params: params.into(),
        }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn method(&self) -> &str {
        &self.method
    }

    pub fn params(&self) -> &str {
        &self.params
    }

    /// Node ids in ascending order.
    pub fn sorted(&self) -> Vec<NodeId> {
        let mut v = self.nodes.clone();
        v.sort_unstable();
        v
    }

    /// Original labels of the seeds, in selection order.
    pub fn labels<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        self.nodes.iter().map(|&v| g.label(v)).collect()
    }
}

impl AsRef<[NodeId]> for SeedSet {
    fn as_ref(&self) -> &[NodeId] {
        &self.nodes
    }
}
