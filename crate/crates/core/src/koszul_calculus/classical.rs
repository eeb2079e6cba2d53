//! The classical Cartan operations on `S(V)`-valued forms, used as the
//! `N = 2` reference for the Koszul products.

use super::{Chain, Cochain};
use crate::error::{Error, Result};
use crate::ratlin::int;
use crate::shuffle::shuffles;
use crate::tensorspace::{increasing_tuples, IncreasingTuple};

fn require_quadratic(f: &Cochain) -> Result<()> {
    match f.context().big_n() {
        2 => Ok(()),
        other => Err(Error::RequiresQuadratic(other)),
    }
}

fn block(x: &IncreasingTuple, sigma: &crate::tensorspace::Perm, range: std::ops::Range<usize>) -> IncreasingTuple {
    let w = x.pick(&range.map(|k| sigma.apply(k)).collect::<Vec<_>>());
    IncreasingTuple::new(w.letters().to_vec()).expect("shuffle blocks are increasing")
}

/// `(f ∧ g)(x) = Σ_{σ∈Sh(p,q)} sgn(σ) f(x_σ(1..p)) g(x_σ(p+1..p+q))`.
pub fn cartan_wedge(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    require_quadratic(f)?;
    f.context().same_context(g.context())?;
    let ctx = f.context();
    let (p, q) = (f.degree(), g.degree());
    let mut out = Cochain::zero(ctx, p + q);
    let sh = shuffles(p, q);
    for x in increasing_tuples(ctx.n(), p + q) {
        for sigma in &sh {
            let fv = f.value(&block(&x, sigma, 0..p));
            if fv.is_zero() {
                continue;
            }
            let gv = g.value(&block(&x, sigma, p..p + q));
            out.accumulate(x.clone(), &fv.mul(&gv), &int(sigma.sign()));
        }
    }
    Ok(out)
}

/// Interior product `i_f`:
/// `i_f(m ⊗ x) = Σ_{σ∈Sh(p,q-p)} sgn(σ) f(x_σ(1..p)) m ⊗ x_σ(p+1..q)`.
pub fn contraction(f: &Cochain, z: &Chain) -> Result<Chain> {
    require_quadratic(f)?;
    f.context().same_context(z.context())?;
    let ctx = f.context();
    let (p, q) = (f.degree(), z.degree());
    if q < p {
        return Ok(Chain::zero(ctx, 0));
    }
    let mut out = Chain::zero(ctx, q - p);
    let sh = shuffles(p, q - p);
    for (x, m) in z.terms() {
        for sigma in &sh {
            let fv = f.value(&block(x, sigma, 0..p));
            if fv.is_zero() {
                continue;
            }
            out.accumulate(block(x, sigma, p..q), &fv.mul(m), &int(sigma.sign()));
        }
    }
    Ok(out)
}
