//! Weakly separated collections, positroids, plabic graphs and plabic tilings.
//!
//! Subsets of the cyclically ordered ground set `[n]` are `u64` bitmasks, so
//! every algorithm here works for `n <= 64`; exhaustive routines are guarded
//! by a configurable [`budget`].

pub mod budget;
pub mod collection;
pub mod cyclic;
pub mod error;
pub mod geometry;
pub mod io;
pub mod lz;
pub mod plabic;
pub mod positroid;
pub mod svg;
pub mod tiling;
pub mod verify;

pub use budget::Budget;
pub use collection::{
    enumerate_maximal, positroid_hull, validate, EnumerationMode, MutationSite, ValidationReport, WSCollection,
};
pub use cyclic::{CyclicInterval, Ground, Openness, Subset};
pub use error::{Error, Result};
pub use geometry::{Point, Rational};
pub use io::{parse, serialize, Document};
pub use lz::{ChamberContext, LzReport};
pub use plabic::{Color, Move, MoveKind, PlabicGraph, Verdict, Vertex};
pub use positroid::{DecoratedPermutation, DirectSum, FixedColor, GrassmannNecklace, NoncrossingComponents, Positroid};
pub use svg::{render_graph, render_tiling, SvgOptions};
pub use tiling::{
    build_tiling, embed_tiling, inside_necklace_curve, plabic_to_tiling, tiling_to_plabic, EmbeddedTiling,
    PlabicTiling, TileFace,
};
pub use verify::SuiteReport;
