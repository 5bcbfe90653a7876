//! Pluggable execution of independent, indexed work items.

use alloc::vec::Vec;

/// Runs `count` independent jobs and returns their results in index order.
///
/// Implementations may run jobs concurrently; callers reduce the returned
/// vector in index order, which keeps every result schedule-independent.
pub trait Executor: Sync {
    fn map_indexed<T, F>(&self, count: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs jobs one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map_indexed<T, F>(&self, count: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).map(job).collect()
    }
}
