use rayon::prelude::*;
use randproj_core::Executor;

/// Runs indexed jobs on the global rayon pool. Results come back in index
/// order, so reductions over them do not depend on the thread count.
#[derive(Debug, Clone, Copy, Default)]
pub struct RayonExecutor;

impl Executor for RayonExecutor {
    fn map_indexed<T, F>(&self, count: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..count).into_par_iter().map(job).collect()
    }
}
