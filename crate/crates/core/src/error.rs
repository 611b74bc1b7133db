use thiserror::Error;

use crate::group::{GroupKind, GroupParams};
use crate::lattice::{Cell, ScaledPoint};

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {0} is not a lattice vertex")]
    NotAVertex(ScaledPoint),

    #[error("cell set is empty or not edge-connected")]
    Disconnected,

    #[error("invalid parameters {params} for {kind}: {reason}")]
    InvalidParams { kind: GroupKind, params: GroupParams, reason: &'static str },

    #[error("{0} is not constructed directly; see the special-case tiles")]
    NotConstructible(GroupKind),

    #[error("n = {n} is not an admissible fundamental-domain size for {kind}")]
    NotAdmissible { kind: GroupKind, n: u64 },

    #[error("image of {cell} is not a lattice cell")]
    NotACell { cell: Cell },

    #[error("group construction inconsistent: {0}")]
    Inconsistent(String),

    #[error("tiling partition failed: {0}")]
    Partition(String),

    #[error("theorem check failed: {0}")]
    Theorem(String),

    #[error("unknown group name {0:?}")]
    UnknownGroup(String),

    #[error("malformed tile record: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
