//! Degree-zero bundles given as direct sums, kernels or monads, and the
//! sections of their twists.

mod presentation;
mod sections;

pub use presentation::{subsets, DirectSumPresentation, KernelPresentation, MonadPresentation};
pub use sections::{
    evaluate, local_matrix, sections_direct_sum, sections_kernel, sections_monad, sections_monad_random, Evaluation,
    LocalMatrix, SectionSystem,
};
