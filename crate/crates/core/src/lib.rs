//! Lower, Hausdorff, box and Assouad dimensions of self-similar sets and
//! self-affine carpets, computed exactly from their defining patterns and
//! estimated empirically from covering counts.

pub mod attractor;
pub mod estimate;
pub mod exact;
pub mod fixtures;
pub mod model;
pub mod moran;
pub mod sample;
