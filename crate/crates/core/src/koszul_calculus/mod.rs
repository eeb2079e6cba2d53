//! Koszul cochains and chains with coefficients in `A = S(V, N)`, and the
//! cup and cap products written in wedge form.
//!
//! A degree-`p` cochain is a linear map `Λ^{ν(p)} V → A`, stored as a table
//! on increasing tuples. A degree-`q` chain is an element of
//! `A ⊗ Λ^{ν(q)} V`. Every `⊗_A` in the product formulas collapses to
//! multiplication in `A`, taken in the displayed left-to-right order.

mod classical;
mod products;
pub mod tensor_form;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::nsym_algebra::{AlgebraElement, NSymAlgebra};
use crate::ratlin::Scalar;
use crate::tensorspace::{increasing_tuples, sort_with_sign, IncreasingTuple, Word};

pub use classical::{cartan_wedge, contraction};
pub use products::{assoc_defect, cap_left, cap_right, cup, cup_with_case, graded_comm_defect};

/// Which family of formulas a product uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParityCase {
    /// `ν` is additive on the degrees: a plain (signed) shuffle sum.
    Concatenation,
    /// Both relevant degrees are odd: block shuffles with `N - 2` spectators.
    Spread,
}

impl ParityCase {
    pub fn for_cup(p: usize, q: usize) -> Self {
        if p % 2 == 1 && q % 2 == 1 {
            ParityCase::Spread
        } else {
            ParityCase::Concatenation
        }
    }

    /// Case of `f ⌢ z` / `z ⌢ f` for `deg f = p ≤ q = deg z`.
    pub fn for_cap(p: usize, q: usize) -> Self {
        Self::for_cup(p, q - p)
    }
}

fn sign_of(exponent: usize) -> Scalar {
    if exponent.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

fn check_tuple(ctx: &NSymAlgebra, expected_len: usize, tuple: &IncreasingTuple) -> Result<()> {
    if tuple.len() != expected_len {
        return Err(Error::DegreeMismatch { expected: expected_len, found: tuple.len() });
    }
    if let Some(&bad) = tuple.indices().iter().find(|&&i| i >= ctx.n()) {
        return Err(Error::LetterOutOfRange { letter: bad + 1, n: ctx.n() });
    }
    Ok(())
}

/// A Koszul `p`-cochain `f : Λ^{ν(p)} V → A`.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    ctx: Arc<NSymAlgebra>,
    p: usize,
    table: BTreeMap<IncreasingTuple, AlgebraElement>,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain(p={}; {self})", self.p)
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.table.iter().map(|(t, v)| format!("{t} ↦ {v}")).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl Cochain {
    pub fn zero(ctx: &Arc<NSymAlgebra>, p: usize) -> Self {
        Self { ctx: Arc::clone(ctx), p, table: BTreeMap::new() }
    }

    /// The dual-basis cochain sending `e_I` to `1` and every other basis
    /// element to `0`.
    pub fn dual_basis(ctx: &Arc<NSymAlgebra>, p: usize, tuple: IncreasingTuple) -> Result<Self> {
        let mut f = Self::zero(ctx, p);
        f.set(tuple, AlgebraElement::one(ctx))?;
        Ok(f)
    }

    /// All dual-basis cochains of degree `p`, in tuple order.
    pub fn dual_basis_all(ctx: &Arc<NSymAlgebra>, p: usize) -> Vec<Self> {
        increasing_tuples(ctx.n(), ctx.nu(p))
            .into_iter()
            .map(|t| Self::dual_basis(ctx, p, t).expect("valid tuple"))
            .collect()
    }

    /// Deterministic pseudo-random cochain with values of degree `≤ value_degree`.
    pub fn random(ctx: &Arc<NSymAlgebra>, p: usize, value_degree: usize, seed: u64) -> Result<Self> {
        let len = ctx.nu(p);
        if len > ctx.n() {
            return Err(Error::InvalidParameters(format!("ν({p}) = {len} exceeds n = {}", ctx.n())));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = Self::zero(ctx, p);
        for t in increasing_tuples(ctx.n(), len) {
            let value = AlgebraElement::random(ctx, value_degree, &mut rng);
            f.set(t, value)?;
        }
        Ok(f)
    }

    pub fn context(&self) -> &Arc<NSymAlgebra> {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    /// Length `ν(p)` of the argument tuples.
    pub fn arity(&self) -> usize {
        self.ctx.nu(self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&IncreasingTuple, &AlgebraElement)> + '_ {
        self.table.iter()
    }

    pub fn set(&mut self, tuple: IncreasingTuple, value: AlgebraElement) -> Result<()> {
        check_tuple(&self.ctx, self.arity(), &tuple)?;
        self.ctx.same_context(value.context())?;
        if value.is_zero() {
            self.table.remove(&tuple);
        } else {
            self.table.insert(tuple, value);
        }
        Ok(())
    }

    pub(crate) fn accumulate(&mut self, tuple: IncreasingTuple, value: &AlgebraElement, c: &Scalar) {
        let slot = self.table.entry(tuple.clone()).or_insert_with(|| AlgebraElement::zero(&self.ctx));
        slot.add_scaled(value, c);
        if slot.is_zero() {
            self.table.remove(&tuple);
        }
    }

    /// Value on a basis element `e_I`.
    pub fn value(&self, tuple: &IncreasingTuple) -> AlgebraElement {
        self.table.get(tuple).cloned().unwrap_or_else(|| AlgebraElement::zero(&self.ctx))
    }

    /// Value on `e_{w_1} ∧ … ∧ e_{w_k}` for an arbitrary word: zero on repeated
    /// letters, otherwise the signed value on the sorted tuple.
    pub fn value_on_word(&self, w: &Word) -> AlgebraElement {
        match sort_with_sign(w) {
            None => AlgebraElement::zero(&self.ctx),
            Some((t, sign)) => match self.table.get(&t) {
                None => AlgebraElement::zero(&self.ctx),
                Some(v) if sign > 0 => v.clone(),
                Some(v) => v.scaled(&-Scalar::one()),
            },
        }
    }

    pub fn add_scaled(&mut self, other: &Cochain, c: &Scalar) -> Result<()> {
        self.ctx.same_context(&other.ctx)?;
        if self.p != other.p {
            return Err(Error::DegreeMismatch { expected: self.p, found: other.p });
        }
        for (t, v) in other.entries() {
            self.accumulate(t.clone(), v, c);
        }
        Ok(())
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one())?;
        Ok(out)
    }

    pub fn scaled(&self, c: &Scalar) -> Cochain {
        let mut out = Cochain::zero(&self.ctx, self.p);
        out.add_scaled(self, c).expect("same context and degree");
        out
    }
}

/// A Koszul `q`-chain `Σ a_I ⊗ e_I` in `A ⊗ Λ^{ν(q)} V`.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain {
    ctx: Arc<NSymAlgebra>,
    q: usize,
    terms: BTreeMap<IncreasingTuple, AlgebraElement>,
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain(q={}; {self})", self.q)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(t, v)| format!("({v}) ⊗ {t}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Chain {
    pub fn zero(ctx: &Arc<NSymAlgebra>, q: usize) -> Self {
        Self { ctx: Arc::clone(ctx), q, terms: BTreeMap::new() }
    }

    /// `coefficient ⊗ e_I`
    pub fn basis(
        ctx: &Arc<NSymAlgebra>,
        q: usize,
        coefficient: AlgebraElement,
        tuple: IncreasingTuple,
    ) -> Result<Self> {
        let mut z = Self::zero(ctx, q);
        z.add_term(coefficient, tuple)?;
        Ok(z)
    }

    pub fn random(ctx: &Arc<NSymAlgebra>, q: usize, value_degree: usize, seed: u64) -> Result<Self> {
        let len = ctx.nu(q);
        if len > ctx.n() {
            return Err(Error::InvalidParameters(format!("ν({q}) = {len} exceeds n = {}", ctx.n())));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut z = Self::zero(ctx, q);
        for t in increasing_tuples(ctx.n(), len) {
            z.add_term(AlgebraElement::random(ctx, value_degree, &mut rng), t)?;
        }
        Ok(z)
    }

    pub fn context(&self) -> &Arc<NSymAlgebra> {
        &self.ctx
    }

    pub fn degree(&self) -> usize {
        self.q
    }

    pub fn arity(&self) -> usize {
        self.ctx.nu(self.q)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IncreasingTuple, &AlgebraElement)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, tuple: &IncreasingTuple) -> AlgebraElement {
        self.terms.get(tuple).cloned().unwrap_or_else(|| AlgebraElement::zero(&self.ctx))
    }

    pub fn add_term(&mut self, coefficient: AlgebraElement, tuple: IncreasingTuple) -> Result<()> {
        check_tuple(&self.ctx, self.arity(), &tuple)?;
        self.ctx.same_context(coefficient.context())?;
        self.accumulate(tuple, &coefficient, &Scalar::one());
        Ok(())
    }

    pub(crate) fn accumulate(&mut self, tuple: IncreasingTuple, value: &AlgebraElement, c: &Scalar) {
        let slot = self.terms.entry(tuple.clone()).or_insert_with(|| AlgebraElement::zero(&self.ctx));
        slot.add_scaled(value, c);
        if slot.is_zero() {
            self.terms.remove(&tuple);
        }
    }

    pub fn add_scaled(&mut self, other: &Chain, c: &Scalar) -> Result<()> {
        self.ctx.same_context(&other.ctx)?;
        if self.q != other.q {
            return Err(Error::DegreeMismatch { expected: self.q, found: other.q });
        }
        for (t, v) in other.terms() {
            self.accumulate(t.clone(), v, c);
        }
        Ok(())
    }

    pub fn sub(&self, other: &Chain) -> Result<Chain> {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one())?;
        Ok(out)
    }

    pub fn scaled(&self, c: &Scalar) -> Chain {
        let mut out = Chain::zero(&self.ctx, self.q);
        out.add_scaled(self, c).expect("same context and degree");
        out
    }
}
