//! Shuffles, block shuffles, and the antisymmetrizer decompositions they
//! produce.
//!
//! A block shuffle of length `m` designates two contiguous position blocks;
//! the permutation must be increasing on each block, while the remaining
//! (spectator) positions are unconstrained. With no spectators this is an
//! ordinary `(a, b)`-shuffle.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::ratlin::int;
use crate::tensorspace::{ant_word, increasing_tuples, IncreasingTuple, Perm, TensorElement, Word};

/// All `σ ∈ Σ_{a+b}` with `σ(0) < … < σ(a-1)` and `σ(a) < … < σ(a+b-1)`,
/// in lexicographic order of their images.
pub fn shuffles(a: usize, b: usize) -> Vec<Perm> {
    let total = a + b;
    increasing_tuples(total, a)
        .into_iter()
        .map(|first| {
            let mut images = first.indices().to_vec();
            images.extend((0..total).filter(|x| !first.indices().contains(x)));
            Perm::new(images).expect("shuffle is a permutation")
        })
        .collect()
}

/// Two disjoint contiguous blocks of positions inside `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockShuffleSpec {
    m: usize,
    first: Range<usize>,
    second: Range<usize>,
}

impl BlockShuffleSpec {
    pub fn new(m: usize, first: Range<usize>, second: Range<usize>) -> Result<Self> {
        let valid = |r: &Range<usize>| r.start <= r.end && r.end <= m;
        let disjoint = first.is_empty() || second.is_empty() || first.end <= second.start || second.end <= first.start;
        if !valid(&first) || !valid(&second) || !disjoint {
            return Err(Error::InvalidParameters(format!(
                "blocks {first:?} and {second:?} must be disjoint intervals inside 0..{m}"
            )));
        }
        Ok(Self { m, first, second })
    }

    /// Layout `prefix | first block | mid | second block | suffix`.
    pub fn layout(prefix: usize, a: usize, mid: usize, b: usize, suffix: usize) -> Self {
        let first = prefix..prefix + a;
        let second = first.end + mid..first.end + mid + b;
        Self { m: second.end + suffix, first, second }
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn first(&self) -> Range<usize> {
        self.first.clone()
    }

    pub fn second(&self) -> Range<usize> {
        self.second.clone()
    }

    fn accepts(&self, sigma: &Perm) -> bool {
        let increasing = |r: &Range<usize>| r.clone().skip(1).all(|k| sigma.apply(k - 1) < sigma.apply(k));
        increasing(&self.first) && increasing(&self.second)
    }
}

/// All `σ ∈ Σ_m` increasing along both blocks, in lexicographic order.
pub fn block_shuffles(spec: &BlockShuffleSpec) -> Vec<Perm> {
    Perm::all(spec.m).into_iter().filter(|s| spec.accepts(s)).collect()
}

fn pick(x: &[usize], sigma: &Perm, range: Range<usize>) -> Word {
    Word::new(range.map(|k| x[sigma.apply(k)]).collect())
}

/// Checks, for every increasing word `x` of length `a+b` over `n` letters,
/// `Ant_{a+b}(x) = Σ_{σ∈Sh(a,b)} sgn(σ) Ant_a(x_{σ(1..a)}) ⊗ Ant_b(x_{σ(a+1..a+b)})`.
///
/// Vacuously true when `a + b > n`.
pub fn check_pqant1(a: usize, b: usize, n: usize) -> bool {
    let sh = shuffles(a, b);
    increasing_tuples(n, a + b).iter().all(|x| {
        let lhs = ant_word(n, &x.as_word());
        let mut rhs = TensorElement::zero(n, a + b);
        for sigma in &sh {
            let left = ant_word(n, &pick(x.indices(), sigma, 0..a));
            let right = ant_word(n, &pick(x.indices(), sigma, a..a + b));
            rhs.add_scaled(&left.tensor(&right), &int(sigma.sign()));
        }
        lhs == rhs
    })
}

/// Block-shuffle decomposition with `i` prefix letters, an antisymmetrized
/// block of `a`, `mid` spectators, a block of `b`, and `j` suffix letters.
///
/// Vacuously true when `i + a + mid + b + j > n`.
pub fn check_pqant2(i: usize, a: usize, mid: usize, b: usize, j: usize, n: usize) -> bool {
    let spec = BlockShuffleSpec::layout(i, a, mid, b, j);
    let m = spec.len();
    let perms = block_shuffles(&spec);
    increasing_tuples(n, m).iter().all(|x| decomposition_holds(x, &spec, &perms, n))
}

fn decomposition_holds(x: &IncreasingTuple, spec: &BlockShuffleSpec, perms: &[Perm], n: usize) -> bool {
    let m = spec.len();
    let lhs = ant_word(n, &x.as_word());
    let mut rhs = TensorElement::zero(n, m);
    let (first, second) = (spec.first(), spec.second());
    for sigma in perms {
        let piece = |r: Range<usize>| TensorElement::from_word(n, pick(x.indices(), sigma, r));
        let term = piece(0..first.start)
            .tensor(&ant_word(n, &pick(x.indices(), sigma, first.clone())))
            .tensor(&piece(first.end..second.start))
            .tensor(&ant_word(n, &pick(x.indices(), sigma, second.clone())))
            .tensor(&piece(second.end..m));
        rhs.add_scaled(&term, &int(sigma.sign()));
    }
    lhs == rhs
}
