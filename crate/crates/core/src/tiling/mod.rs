//! Planar octagonal tilings by cut and project: the window, patches, tile
//! frequencies and r-atlases.
//!
//! A lattice point `z ∈ Z⁴` is a vertex of the tiling `E + offset` when
//! `π^⊥(z − offset)` lies in the window. Faces are the unit 2-faces of Z⁴
//! whose four corners are vertices; drawn in `E` they are the rhombus tiles.

mod atlas;
mod geometry;
mod patch;

pub use atlas::{r_atlas, Pattern};
pub use geometry::{Frame, Tube, Vec2, Window};
pub use patch::{
    generate_patch, generate_patch_with, generate_rect_patch, patch_from_vertices, seed_vertex, tile_frequencies, Face,
    PatchOptions, TilingPatch,
};

pub(crate) use atlas::r_atlas_with_frame;
pub(crate) use geometry::{cross, sub2};
pub(crate) use patch::select_vertices;

/// Builds the window of a nondegenerate slope.
pub fn build_window(s: &crate::slope::Slope) -> crate::Result<Window> {
    Ok(Window::new(&Frame::new(s)?))
}
