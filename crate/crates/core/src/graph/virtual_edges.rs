use thiserror::Error;

use super::{Color, EdgeId, EdgeType, HalfEdge, Labeling, NodeId};

/// Virtual edge `{u, w}` standing for two edges `{v, u}` and `{v, w}` of the finer graph.
///
/// `first` and `second` are the half-edges of the two child edges that sit at the
/// middle node `v`. The virtual edge's endpoint0 is the far end of `first`, its
/// endpoint1 the far end of `second`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VirtualEdge {
    pub first: HalfEdge,
    pub second: HalfEdge,
    pub middle: NodeId,
    pub first_kind: EdgeType,
    pub second_kind: EdgeType,
}

impl VirtualEdge {
    pub fn kind(&self) -> EdgeType {
        EdgeType::combine(self.first_kind, self.second_kind)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrigin {
    /// Copied from the finer graph with the same endpoint order.
    Kept(EdgeId),
    Virtual(VirtualEdge),
}

/// How each edge of a coarser graph arises from the finer graph one level down.
///
/// `fixed` lists finer edges that were colored outright while building the
/// coarser graph and have no coarse counterpart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualEdgeMap {
    pub finer_edge_count: usize,
    pub origins: Vec<EdgeOrigin>,
    pub fixed: Vec<(EdgeId, [Color; 2])>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("labeling on coarse edge {edge} violates its type {kind}")]
pub struct InconsistentInput {
    pub edge: EdgeId,
    pub kind: EdgeType,
}

impl VirtualEdgeMap {
    pub fn virtual_count(&self) -> usize {
        self.origins
            .iter()
            .filter(|o| matches!(o, EdgeOrigin::Virtual(_)))
            .count()
    }

    /// Translates a total labeling of the coarse graph into a labeling of the finer graph.
    ///
    /// Finer edges that are neither fixed nor referred to by a coarse edge stay unset.
    pub fn unfold(&self, coarse: &Labeling) -> Result<Labeling, InconsistentInput> {
        assert_eq!(coarse.len(), self.origins.len(), "labeling does not match map");
        let mut fine = Labeling::unset(self.finer_edge_count);
        for &(e, [a, b]) in &self.fixed {
            fine.set(HalfEdge::new(e, 0), a);
            fine.set(HalfEdge::new(e, 1), b);
        }
        for (id, origin) in self.origins.iter().enumerate() {
            let at_u = coarse.get(HalfEdge::new(id, 0)).expect("total coarse labeling");
            let at_w = coarse.get(HalfEdge::new(id, 1)).expect("total coarse labeling");
            match *origin {
                EdgeOrigin::Kept(e) => {
                    fine.set(HalfEdge::new(e, 0), at_u);
                    fine.set(HalfEdge::new(e, 1), at_w);
                }
                EdgeOrigin::Virtual(ve) => {
                    if at_u.across(ve.kind()) != at_w {
                        return Err(InconsistentInput {
                            edge: id,
                            kind: ve.kind(),
                        });
                    }
                    let mid_first = at_u.across(ve.first_kind);
                    let mid_second = mid_first.flip();
                    fine.set(ve.first.twin(), at_u);
                    fine.set(ve.first, mid_first);
                    fine.set(ve.second, mid_second);
                    let far = mid_second.across(ve.second_kind);
                    debug_assert_eq!(far, at_w);
                    fine.set(ve.second.twin(), far);
                }
            }
        }
        Ok(fine)
    }
}

/// Colors forced at the middle node by a virtual edge label; used in tests.
#[cfg(test)]
pub(crate) fn middle_colors(fine: &Labeling, ve: &VirtualEdge) -> [Color; 2] {
    [fine.get(ve.first).unwrap(), fine.get(ve.second).unwrap()]
}
