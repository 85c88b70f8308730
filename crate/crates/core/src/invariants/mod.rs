//! Exact invariants: chromatic number, essentiality, and triviality of the
//! parity double cover over balls.

pub mod chromatic;
pub mod cover;
pub mod essentiality;

pub use chromatic::{
    chromatic_number, is_m_colorable, is_m_colorable_cancellable, optimal_coloring, verify_coloring, Cancelled,
    Coloring,
};
pub use cover::{max_ball_size, pi_inessential, triviality_radius};
pub use essentiality::{essentiality, forest_essentiality, EssentialityResult, PartMode};
