//! Desk-scale ceilings for the brute-force routines.
//!
//! Every exhaustive oracle refuses inputs above its ceiling with
//! [`Error::GroundTooLarge`](crate::Error::GroundTooLarge). The environment
//! variable `FLAGPATH_LIMIT` overrides all ceilings at once.

/// Subset enumeration over the ground set (flats, cyclic flats, exchange checks).
pub const BRUTE_FORCE_GROUND: usize = 16;
/// Breadth-first replay of the ball process.
pub const REACHABLE_BALLS: usize = 12;
/// Feasibility DP behind the brute-force height matrix.
pub const DIAGRAM_BALLS: usize = 21;
/// Exhaustive path enumeration inside a diagram.
pub const DIAGRAM_PATH_BALLS: usize = 15;
/// Explicit enumeration of flag bases or filter counting.
pub const EXPLICIT_BALLS: usize = 16;

pub const ENV_VAR: &str = "FLAGPATH_LIMIT";

/// Returns the `FLAGPATH_LIMIT` override if it is set to a valid integer.
pub fn env_override() -> Option<usize> {
    std::env::var(ENV_VAR).ok()?.trim().parse().ok()
}

/// `default`, unless the environment overrides it.
pub fn resolve(default: usize) -> usize {
    env_override().unwrap_or(default)
}

pub(crate) fn check(size: usize, limit: usize) -> crate::Result<()> {
    if size > limit {
        Err(crate::Error::GroundTooLarge { size, limit })
    } else {
        Ok(())
    }
}
