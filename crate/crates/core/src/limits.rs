//! Process-wide size cap for face enumeration.
//!
//! Every enumeration that can blow up (all faces of a complex, maximal forests,
//! maximal independent sets) refuses with [`Error::SizeLimit`] once it would
//! produce more than [`face_cap`] items.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::Error;

pub const DEFAULT_FACE_CAP: usize = 1 << 20;

/// Environment variable read by the CLI to override the cap.
pub const SIZE_CAP_ENV: &str = "GCTK_SIZE_CAP";

static FACE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_FACE_CAP);

pub fn face_cap() -> usize {
    FACE_CAP.load(Ordering::Relaxed)
}

pub fn set_face_cap(cap: usize) {
    FACE_CAP.store(cap.max(1), Ordering::Relaxed);
}

pub(crate) fn check(count: usize, what: &str) -> Result<(), Error> {
    let cap = face_cap();
    if count > cap {
        Err(Error::SizeLimit { what: what.to_string(), cap })
    } else {
        Ok(())
    }
}
