//! Connections on gerbes, curvature and surface holonomy.

mod connection;
mod surface;

pub use connection::{canonical_connection, curvature, holonomy_cocycle, GerbeConnection, HolonomyCocycle};
pub use surface::{bounding_chain, loop_holonomy, surface_holonomy, surface_holonomy_of, LoopHolonomy, Surface};
