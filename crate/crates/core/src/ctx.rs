use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_ENUM_VAR: &str = "TCRCALC_MAX_ENUM";
pub const DEFAULT_MAX_ENUM: u64 = 1 << 16;

/// Cooperative cancellation flag shared between a driver and running computations.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

/// Enumeration limits and cancellation for one computation.
#[derive(Clone, Debug)]
pub struct Ctx {
    /// Largest set of elements any routine will enumerate.
    pub max_enum: u64,
    /// Largest number of element pairs an exhaustive check will visit.
    pub max_pairs: u64,
    /// Largest Witt length for which structure polynomials are built.
    pub max_witt_len: usize,
    /// Maximal number of tower levels used in stabilization searches.
    pub depth: usize,
    cancel: CancelToken,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx::with_max_enum(DEFAULT_MAX_ENUM)
    }
}

impl Ctx {
    pub fn with_max_enum(max_enum: u64) -> Self {
        Ctx {
            max_enum,
            max_pairs: max_enum.saturating_mul(512),
            max_witt_len: 6,
            depth: 8,
            cancel: CancelToken::new(),
        }
    }

    /// Reads `TCRCALC_MAX_ENUM` if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_ENUM_VAR) {
            Ok(v) => {
                let n: u64 = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{MAX_ENUM_VAR}={v} is not an integer")))?;
                Ok(Ctx::with_max_enum(n))
            }
            Err(_) => Ok(Ctx::default()),
        }
    }

    pub fn with_cancel(mut self, token: CancelToken) -> Self {
        self.cancel = token;
        self
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn token(&self) -> &CancelToken {
        &self.cancel
    }

    #[inline]
    pub fn checkpoint(&self) -> Result<()> {
        if self.cancel.is_cancelled() {
            Err(Error::Cancelled)
        } else {
            Ok(())
        }
    }

    pub fn check_size(&self, what: &str, n: u64) -> Result<()> {
        if n > self.max_enum {
            Err(Error::Bound(format!(
                "{what} has {n} elements, bound is {} (set {MAX_ENUM_VAR})",
                self.max_enum
            )))
        } else {
            Ok(())
        }
    }

    pub fn check_pairs(&self, what: &str, n: u64) -> Result<()> {
        if n > self.max_pairs {
            Err(Error::Bound(format!(
                "{what} needs {n} pair checks, bound is {}",
                self.max_pairs
            )))
        } else {
            Ok(())
        }
    }
}
