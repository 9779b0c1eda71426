use std::time::{Duration, Instant};

use serde::Serialize;

use crate::eisenstein::{build_context, g_p_modp, DEFAULT_N_MAX};
use crate::error::Result;
use crate::modsym::{build_space, Sign};

/// `(N, p, g_p, large)`.
pub const FIXTURES: [(u64, u64, u64, bool); 6] = [
    (11, 5, 1, false),
    (31, 5, 2, false),
    (211, 5, 2, false),
    (1871, 5, 2, true),
    (4621, 5, 2, true),
    (9931, 5, 2, true),
];

#[derive(Clone, Debug, Serialize)]
pub struct FixtureResult {
    #[serde(rename = "N")]
    pub n: u64,
    pub p: u64,
    pub expected: u64,
    pub found: u64,
    pub elapsed: Duration,
    /// `integral` or `modp`.
    pub method: &'static str,
}

impl FixtureResult {
    pub fn passed(&self) -> bool {
        self.expected == self.found
    }
}

/// Computes `g_p` for every fixture pair. Small levels go through the
/// integral context, large ones through the `F_p` space.
pub fn check_fixtures(large: bool) -> Result<Vec<FixtureResult>> {
    let mut out = Vec::new();
    for (n, p, expected, is_large) in FIXTURES {
        if is_large && !large {
            continue;
        }
        let start = Instant::now();
        let (found, method) = if is_large {
            (g_p_modp(n, p)?, "modp")
        } else {
            let space = build_space(n)?;
            let ctx = build_context(&space, p, Sign::Plus, DEFAULT_N_MAX)?;
            (ctx.g_p_dimension()?, "integral")
        };
        out.push(FixtureResult {
            n,
            p,
            expected,
            found,
            elapsed: start.elapsed(),
            method,
        });
    }
    Ok(out)
}
