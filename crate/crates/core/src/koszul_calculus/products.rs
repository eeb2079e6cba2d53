use std::ops::Range;
use std::sync::Arc;

use super::{sign_of, Chain, Cochain, ParityCase};
use crate::error::{Error, Result};
use crate::nsym_algebra::{AlgebraElement, NSymAlgebra};
use crate::ratlin::int;
use crate::shuffle::{block_shuffles, shuffles, BlockShuffleSpec};
use crate::tensorspace::{increasing_tuples, IncreasingTuple, Perm, Word};

/// Letters `x_{σ(k)}` for `k` in `range`.
fn picked(x: &IncreasingTuple, sigma: &Perm, range: Range<usize>) -> Word {
    x.pick(&range.map(|k| sigma.apply(k)).collect::<Vec<_>>())
}

fn picked_tuple(x: &IncreasingTuple, sigma: &Perm, range: Range<usize>) -> IncreasingTuple {
    IncreasingTuple::new(picked(x, sigma, range).letters().to_vec()).expect("shuffles keep blocks increasing")
}

/// Product of words and algebra elements, left to right.
enum Factor<'a> {
    Letters(Word),
    Value(&'a AlgebraElement),
}

fn product(ctx: &Arc<NSymAlgebra>, factors: &[Factor<'_>]) -> AlgebraElement {
    let mut acc = AlgebraElement::one(ctx);
    for factor in factors {
        acc = match factor {
            Factor::Letters(w) if w.is_empty() => acc,
            Factor::Letters(w) => acc.mul(&AlgebraElement::from_word(ctx, w)),
            Factor::Value(v) => acc.mul(v),
        };
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// Block layouts `i | first | N-2-i-j | second | j` for all `i + j ≤ N - 2`.
fn spread_layouts(big_n: usize, first: usize, second: usize) -> Vec<(BlockShuffleSpec, Vec<Perm>)> {
    let mut out = Vec::new();
    for i in 0..=big_n - 2 {
        for j in 0..=big_n - 2 - i {
            let spec = BlockShuffleSpec::layout(i, first, big_n - 2 - i - j, second, j);
            let perms = block_shuffles(&spec);
            out.push((spec, perms));
        }
    }
    out
}

fn check_cochains(f: &Cochain, g: &Cochain) -> Result<()> {
    f.context().same_context(g.context())
}

/// The Koszul cup product `f ⌣ g`, dispatched on the parity of `p` and `q`.
pub fn cup(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    cup_with_case(f, g, ParityCase::for_cup(f.degree(), g.degree()))
}

/// Cup product evaluated with an explicitly chosen formula.
///
/// The concatenation formula needs `ν(p+q) = ν(p) + ν(q)`; the spread formula
/// applies whenever `ν(p+q) = ν(p) + ν(q) + N - 2`. At `N = 2` both apply to
/// every pair of degrees.
pub fn cup_with_case(f: &Cochain, g: &Cochain, case: ParityCase) -> Result<Cochain> {
    check_cochains(f, g)?;
    let ctx = f.context();
    let (p, q) = (f.degree(), g.degree());
    let (np, nq, target) = (ctx.nu(p), ctx.nu(q), ctx.nu(p + q));
    let shift = match case {
        ParityCase::Concatenation => 0,
        ParityCase::Spread => ctx.big_n() - 2,
    };
    if np + nq + shift != target {
        return Err(Error::InvalidParameters(format!("{case:?} formula does not apply to degrees ({p}, {q})")));
    }
    let mut out = Cochain::zero(ctx, p + q);
    if target > ctx.n() || f.is_zero() || g.is_zero() {
        return Ok(out);
    }
    match case {
        ParityCase::Concatenation => {
            let outer = sign_of(p * q);
            let sh = shuffles(np, nq);
            for x in increasing_tuples(ctx.n(), target) {
                for sigma in &sh {
                    let fv = f.value(&picked_tuple(&x, sigma, 0..np));
                    if fv.is_zero() {
                        continue;
                    }
                    let gv = g.value(&picked_tuple(&x, sigma, np..target));
                    out.accumulate(x.clone(), &fv.mul(&gv), &(&outer * int(sigma.sign())));
                }
            }
        }
        ParityCase::Spread => {
            let layouts = spread_layouts(ctx.big_n(), np, nq);
            for x in increasing_tuples(ctx.n(), target) {
                for (spec, perms) in &layouts {
                    let (b1, b2) = (spec.first(), spec.second());
                    for sigma in perms {
                        let fv = f.value(&picked_tuple(&x, sigma, b1.clone()));
                        if fv.is_zero() {
                            continue;
                        }
                        let gv = g.value(&picked_tuple(&x, sigma, b2.clone()));
                        if gv.is_zero() {
                            continue;
                        }
                        let term = product(
                            ctx,
                            &[
                                Factor::Letters(picked(&x, sigma, 0..b1.start)),
                                Factor::Value(&fv),
                                Factor::Letters(picked(&x, sigma, b1.end..b2.start)),
                                Factor::Value(&gv),
                                Factor::Letters(picked(&x, sigma, b2.end..target)),
                            ],
                        );
                        out.accumulate(x.clone(), &term, &int(-sigma.sign()));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn check_cap(f: &Cochain, z: &Chain) -> Result<()> {
    f.context().same_context(z.context())
}

/// Left cap product `f ⌢ z`, a chain of degree `q - p` (zero when `q < p`).
pub fn cap_left(f: &Cochain, z: &Chain) -> Result<Chain> {
    check_cap(f, z)?;
    let ctx = f.context();
    let (p, q) = (f.degree(), z.degree());
    if q < p {
        return Ok(Chain::zero(ctx, 0));
    }
    let (np, nq, nr) = (ctx.nu(p), ctx.nu(q), ctx.nu(q - p));
    let mut out = Chain::zero(ctx, q - p);
    match ParityCase::for_cap(p, q) {
        ParityCase::Concatenation => {
            let outer = sign_of((q - p) * p);
            let sh = shuffles(nr, np);
            for (x, m) in z.terms() {
                for sigma in &sh {
                    let fv = f.value(&picked_tuple(x, sigma, nr..nq));
                    if fv.is_zero() {
                        continue;
                    }
                    out.accumulate(picked_tuple(x, sigma, 0..nr), &fv.mul(m), &(&outer * int(sigma.sign())));
                }
            }
        }
        ParityCase::Spread => {
            let layouts = spread_layouts(ctx.big_n(), nr, np);
            for (x, m) in z.terms() {
                for (spec, perms) in &layouts {
                    let (b1, b2) = (spec.first(), spec.second());
                    for sigma in perms {
                        let fv = f.value(&picked_tuple(x, sigma, b2.clone()));
                        if fv.is_zero() {
                            continue;
                        }
                        let coeff = product(
                            ctx,
                            &[
                                Factor::Letters(picked(x, sigma, b1.end..b2.start)),
                                Factor::Value(&fv),
                                Factor::Letters(picked(x, sigma, b2.end..nq)),
                                Factor::Value(m),
                                Factor::Letters(picked(x, sigma, 0..b1.start)),
                            ],
                        );
                        out.accumulate(picked_tuple(x, sigma, b1.clone()), &coeff, &int(-sigma.sign()));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Right cap product `z ⌢ f`, a chain of degree `q - p` (zero when `q < p`).
pub fn cap_right(z: &Chain, f: &Cochain) -> Result<Chain> {
    check_cap(f, z)?;
    let ctx = f.context();
    let (p, q) = (f.degree(), z.degree());
    if q < p {
        return Ok(Chain::zero(ctx, 0));
    }
    let (np, nq, nr) = (ctx.nu(p), ctx.nu(q), ctx.nu(q - p));
    let mut out = Chain::zero(ctx, q - p);
    match ParityCase::for_cap(p, q) {
        ParityCase::Concatenation => {
            let outer = sign_of(q * p);
            let sh = shuffles(np, nr);
            for (x, m) in z.terms() {
                for sigma in &sh {
                    let fv = f.value(&picked_tuple(x, sigma, 0..np));
                    if fv.is_zero() {
                        continue;
                    }
                    out.accumulate(picked_tuple(x, sigma, np..nq), &m.mul(&fv), &(&outer * int(sigma.sign())));
                }
            }
        }
        ParityCase::Spread => {
            let layouts = spread_layouts(ctx.big_n(), np, nr);
            for (x, m) in z.terms() {
                for (spec, perms) in &layouts {
                    let (b1, b2) = (spec.first(), spec.second());
                    for sigma in perms {
                        let fv = f.value(&picked_tuple(x, sigma, b1.clone()));
                        if fv.is_zero() {
                            continue;
                        }
                        let coeff = product(
                            ctx,
                            &[
                                Factor::Letters(picked(x, sigma, b2.end..nq)),
                                Factor::Value(m),
                                Factor::Letters(picked(x, sigma, 0..b1.start)),
                                Factor::Value(&fv),
                                Factor::Letters(picked(x, sigma, b1.end..b2.start)),
                            ],
                        );
                        out.accumulate(picked_tuple(x, sigma, b2.clone()), &coeff, &int(sigma.sign()));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `(f ⌣ g) ⌣ h − f ⌣ (g ⌣ h)`
pub fn assoc_defect(f: &Cochain, g: &Cochain, h: &Cochain) -> Result<Cochain> {
    let left = cup(&cup(f, g)?, h)?;
    let right = cup(f, &cup(g, h)?)?;
    left.sub(&right)
}

/// `f ⌣ g − (−1)^{pq} g ⌣ f`
pub fn graded_comm_defect(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let forward = cup(f, g)?;
    let mut out = forward.clone();
    out.add_scaled(&cup(g, f)?, &-sign_of(f.degree() * g.degree()))?;
    Ok(out)
}
