//! Gauss–Legendre quadrature on `[0, 1]` and the segment integration driver.

mod gauss;
mod segment;

pub use gauss::{gauss_legendre, QuadratureRule};
pub use segment::{integrate_adaptive, integrate_segment, integrate_segment_multi, AdaptiveIntegral, MAX_DEGREE};

/// Starting degree for a level-`N` segment integral: `64·⌈√N⌉`, capped at
/// 4096.
pub fn initial_degree(level: u64) -> usize {
    let r = (level as f64).sqrt().ceil() as usize;
    (64 * r).min(4096)
}
