//! Cup and cap products from their tensor-level definitions on the spaces
//! `W_{ν(p)} ⊆ V^{⊗ν(p)}`, transported through `Λ^p V ≅ Ant_p(V^{⊗p})`.
//!
//! A wedge-form cochain `f` becomes the map `F(Ant(e_I)) = f(e_I)` on
//! `W_{ν(p)}`. The tensor formulas evaluate `F` on single words, so `F` is
//! extended to all of `V^{⊗ν(p)}`; the products only see arguments lying in
//! `W`, so the result must not depend on which [`Extension`] is used.
//!
//! Everything here walks words of the antisymmetrized arguments directly and
//! shares no shuffle machinery with the wedge-form products.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{Chain, Cochain};
use crate::error::Result;
use crate::nsym_algebra::{AlgebraElement, NSymAlgebra};
use crate::ratlin::Scalar;
use crate::tensorspace::{ant_word, factorial, increasing_tuples, IncreasingTuple, Word};

/// How a cochain on `W_{ν(p)}` is extended to arbitrary words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    /// `F(e_I) = f(e_I)` on increasing words, zero on every other word.
    IncreasingWord,
    /// `F = f ∘ (Ant / k!)`: the antisymmetric multilinear extension.
    Antisymmetric,
}

fn extended(f: &Cochain, w: &Word, ext: Extension) -> AlgebraElement {
    match ext {
        Extension::IncreasingWord => match IncreasingTuple::new(w.letters().to_vec()) {
            Ok(t) => f.value(&t),
            Err(_) => AlgebraElement::zero(f.context()),
        },
        Extension::Antisymmetric => {
            let k = Scalar::from_integer(factorial(w.len()).into());
            f.value_on_word(w).scaled(&(Scalar::one() / k))
        }
    }
}

fn word_elem(ctx: &Arc<NSymAlgebra>, w: &Word, range: std::ops::Range<usize>) -> AlgebraElement {
    AlgebraElement::from_word(ctx, &w.slice(range))
}

fn mul_all(ctx: &Arc<NSymAlgebra>, factors: &[AlgebraElement]) -> AlgebraElement {
    factors.iter().fold(AlgebraElement::one(ctx), |acc, x| acc.mul(x))
}

/// An element of `A ⊗ V^{⊗k}`, keyed by word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorChain {
    len: usize,
    terms: BTreeMap<Word, AlgebraElement>,
}

impl TensorChain {
    pub fn zero(len: usize) -> Self {
        Self { len, terms: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &AlgebraElement)> + '_ {
        self.terms.iter()
    }

    fn add(&mut self, w: Word, value: &AlgebraElement, c: &Scalar) {
        if value.is_zero() || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(|| AlgebraElement::zero(value.context()));
        entry.add_scaled(value, c);
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// `Σ a_I ⊗ e_I ↦ Σ a_I ⊗ Ant(e_I)`
    pub fn from_chain(z: &Chain) -> Self {
        let n = z.context().n();
        let mut out = Self::zero(z.arity());
        for (t, a) in z.terms() {
            for (w, c) in ant_word(n, &t.as_word()).terms() {
                out.add(w.clone(), a, c);
            }
        }
        out
    }
}

/// `(F ⌣ G)(Ant(e_X))` for every increasing `X` of length `ν(p+q)`.
pub fn cup_tensor(f: &Cochain, g: &Cochain, ext: Extension) -> Result<Cochain> {
    f.context().same_context(g.context())?;
    let ctx = f.context();
    let big_n = ctx.big_n();
    let (p, q) = (f.degree(), g.degree());
    let (np, nq, m) = (ctx.nu(p), ctx.nu(q), ctx.nu(p + q));
    let mut out = Cochain::zero(ctx, p + q);
    if m > ctx.n() {
        return Ok(out);
    }
    let both_odd = p % 2 == 1 && q % 2 == 1;
    for x in increasing_tuples(ctx.n(), m) {
        let arg = ant_word(ctx.n(), &x.as_word());
        let mut value = AlgebraElement::zero(ctx);
        for (u, c) in arg.terms() {
            if !both_odd {
                let fv = extended(f, &u.slice(0..np), ext);
                let gv = extended(g, &u.slice(np..np + nq), ext);
                value.add_scaled(&fv.mul(&gv), c);
                continue;
            }
            for i in 0..=big_n - 2 {
                for j in 0..=big_n - 2 - i {
                    let term = mul_all(
                        ctx,
                        &[
                            word_elem(ctx, u, 0..i),
                            extended(f, &u.slice(i..i + np), ext),
                            word_elem(ctx, u, i + np..np + big_n - j - 2),
                            extended(g, &u.slice(np + big_n - j - 2..np + nq + big_n - j - 2), ext),
                            word_elem(ctx, u, np + nq + big_n - j - 2..m),
                        ],
                    );
                    value.add_scaled(&term, &-c);
                }
            }
        }
        out.accumulate(x, &value, &Scalar::one());
    }
    Ok(out)
}

/// Tensor-level `f ⌢ z` applied to `z` transported into `A ⊗ W_{ν(q)}`.
pub fn cap_left_tensor(f: &Cochain, z: &Chain, ext: Extension) -> Result<TensorChain> {
    f.context().same_context(z.context())?;
    let ctx = f.context();
    let big_n = ctx.big_n();
    let (p, q) = (f.degree(), z.degree());
    if q < p {
        return Ok(TensorChain::zero(0));
    }
    let (np, nq, nr) = (ctx.nu(p), ctx.nu(q), ctx.nu(q - p));
    let mut out = TensorChain::zero(nr);
    let spread = p % 2 == 1 && (q - p) % 2 == 1;
    for (u, m) in TensorChain::from_chain(z).terms() {
        if !spread {
            let coeff = extended(f, &u.slice(nr..nq), ext).mul(m);
            out.add(u.slice(0..nr), &coeff, &Scalar::one());
            continue;
        }
        for i in 0..=big_n - 2 {
            for j in 0..=big_n - 2 - i {
                let coeff = mul_all(
                    ctx,
                    &[
                        word_elem(ctx, u, nr + i..nq - np - j),
                        extended(f, &u.slice(nq - np - j..nq - j), ext),
                        word_elem(ctx, u, nq - j..nq),
                        m.clone(),
                        word_elem(ctx, u, 0..i),
                    ],
                );
                out.add(u.slice(i..nr + i), &coeff, &-Scalar::one());
            }
        }
    }
    Ok(out)
}

/// Tensor-level `z ⌢ f` applied to `z` transported into `A ⊗ W_{ν(q)}`.
pub fn cap_right_tensor(z: &Chain, f: &Cochain, ext: Extension) -> Result<TensorChain> {
    f.context().same_context(z.context())?;
    let ctx = f.context();
    let big_n = ctx.big_n();
    let (p, q) = (f.degree(), z.degree());
    if q < p {
        return Ok(TensorChain::zero(0));
    }
    let (np, nq, nr) = (ctx.nu(p), ctx.nu(q), ctx.nu(q - p));
    let mut out = TensorChain::zero(nr);
    let spread = p % 2 == 1 && (q - p) % 2 == 1;
    let sign = if (p * q) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
    for (u, m) in TensorChain::from_chain(z).terms() {
        if !spread {
            let coeff = m.mul(&extended(f, &u.slice(0..np), ext));
            out.add(u.slice(np..nq), &coeff, &sign);
            continue;
        }
        for i in 0..=big_n - 2 {
            for j in 0..=big_n - 2 - i {
                let coeff = mul_all(
                    ctx,
                    &[
                        word_elem(ctx, u, nq - j..nq),
                        m.clone(),
                        word_elem(ctx, u, 0..i),
                        extended(f, &u.slice(i..i + np), ext),
                        word_elem(ctx, u, i + np..np + big_n - j - 2),
                    ],
                );
                out.add(u.slice(np + big_n - j - 2..nq - j), &coeff, &Scalar::one());
            }
        }
    }
    Ok(out)
}
