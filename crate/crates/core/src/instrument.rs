//! Per-thread log of calls into the unified spectral routines.
//!
//! Only the public `spectral_*` entry points record themselves; the
//! machinery they share does not, so the log shows how many times a caller
//! asked for a diagonalisation.

use std::cell::RefCell;

thread_local! {
    static CALLS: RefCell<Vec<&'static str>> = const { RefCell::new(Vec::new()) };
}

pub(crate) fn record(name: &'static str) {
    CALLS.with(|c| c.borrow_mut().push(name));
}

/// Clears this thread's log.
pub fn reset() {
    CALLS.with(|c| c.borrow_mut().clear());
}

/// Returns and clears this thread's log.
pub fn take() -> Vec<&'static str> {
    CALLS.with(|c| std::mem::take(&mut *c.borrow_mut()))
}

/// Runs `f` and returns its result with the calls it made.
pub fn capture<T>(f: impl FnOnce() -> T) -> (T, Vec<&'static str>) {
    let saved = take();
    let out = f();
    let calls = take();
    CALLS.with(|c| *c.borrow_mut() = saved);
    (out, calls)
}
