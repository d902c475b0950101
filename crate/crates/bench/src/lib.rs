//! Shared fixtures for the criterion benches.

pub use uhecke;

use uhecke::doubling::SatakeParams;

/// σ = (½, 0, 1, …) truncated to rank `r`, the usual almost-unramified probe.
pub fn half_sigma(r: usize) -> SatakeParams {
    let ks: Vec<i32> = [1, 0, 2, -2].iter().copied().cycle().take(r).collect();
    SatakeParams::from_twice_sigma(&ks)
}
