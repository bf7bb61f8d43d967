//! Constructive reductions and their witness maps.
//!
//! * [`build_gadget`]: pendant gadget over a bipartite graph. Each vertex of
//!   `G` gets a copy `x_a` (the copies induce `G`) and a pendant `x_b` hanging
//!   off it by a "matching" edge. Contractions of the gadget map back to
//!   bicliques of `G` and vice versa.
//! * [`build_tensor_square`]: the bipartite part of `G x G` between `L x R`
//!   and `R x L`, with lift/projection maps for bicliques.

mod gadget;
mod tensor;

use thiserror::Error;

use crate::contraction::{ContractionError, Violation};
use crate::graph::{GraphError, Rational};

pub(crate) use gadget::shape_of;
pub use gadget::{
    biclique_to_contraction, build_gadget, build_gadget_unchecked, contraction_to_biclique, BicliqueContraction,
    ContractionShape, EdgeKind, GadgetGraph, GadgetVertex, Layer,
};
pub use tensor::{build_tensor_square, lift_biclique, project_biclique, TensorGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("input graph is disconnected; the gadget construction needs a connected graph")]
    Disconnected,
    #[error("gadget weight must be positive, got {0}")]
    NonPositiveWeight(Rational),
    #[error("biclique is not complete in the host graph")]
    InvalidBiclique,
    #[error("contraction is not a valid weak contraction of the gadget: {0}")]
    NotValidContraction(Box<Violation>),
    #[error(transparent)]
    Contraction(#[from] ContractionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which side of a bipartite graph a vertex is on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}
