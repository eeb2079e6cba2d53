//! Benchmark fixtures for the nkoszul engine.

use std::sync::Arc;

use nkoszul_core::{Chain, Cochain, NSymAlgebra};

/// A context with its degree cache warmed up to `degree`.
pub fn warm_context(n: usize, big_n: usize, degree: usize) -> Arc<NSymAlgebra> {
    let ctx = NSymAlgebra::new(n, big_n).expect("valid parameters");
    ctx.hilbert_dims(degree);
    ctx
}

/// Random cochain with linear values.
pub fn cochain(ctx: &Arc<NSymAlgebra>, p: usize, seed: u64) -> Cochain {
    Cochain::random(ctx, p, 1, seed).expect("degree within range")
}

pub fn chain(ctx: &Arc<NSymAlgebra>, q: usize, seed: u64) -> Chain {
    Chain::random(ctx, q, 1, seed).expect("degree within range")
}
