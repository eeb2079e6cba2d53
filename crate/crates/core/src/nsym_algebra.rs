//! The N-symmetric algebra `A = T(V)/(R)` with `R = Ant_N(V^{⊗N})`.
//!
//! Each graded piece `A_m` gets a basis of normal words: the words that are
//! not leading words of the degree-`m` part of the ideal `(R)`, where the
//! leading word of a tensor is its lexicographically greatest word. For
//! `N = 2` these are exactly the sorted words, the usual monomial basis of
//! `S(V)`.
//!
//! Degrees are built one at a time. Since `(R)_m = V ⊗ (R)_{m-1} + R ⊗ V^{⊗(m-N)}`,
//! `A_m` is the quotient of `V ⊗ A_{m-1}` by the image of `R ⊗ A_{m-N}`, and
//! the normal words of degree `m` are `e_a · w` (with `w` normal of degree
//! `m-1`) minus the leading words of that image. Every degree stores, for each
//! `e_a · w`, its normal form, so projecting a word is a right-to-left fold
//! over its letters.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, RwLock};

use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::ratlin::{self, int, Echelon, Scalar, SparseVector};
use crate::tensorspace::{all_words, ant_image_basis, binomial, slot_intersection, word_count, TensorElement, Word};

/// `ν(2p') = Np'`, `ν(2p'+1) = Np'+1`.
pub fn nu(p: usize, big_n: usize) -> usize {
    big_n * (p / 2) + p % 2
}

/// Global dimension of `S(V,N)`: `2⌊n/N⌋`, plus one when `N ∤ n`.
pub fn global_dimension(n: usize, big_n: usize) -> Result<usize> {
    check_params(n, big_n)?;
    let m = n / big_n;
    Ok(if n.is_multiple_of(big_n) { 2 * m } else { 2 * m + 1 })
}

pub fn check_params(n: usize, big_n: usize) -> Result<()> {
    if big_n < 2 || big_n > n {
        return Err(Error::InvalidParameters(format!("need 2 <= N <= n, got n={n}, N={big_n}")));
    }
    Ok(())
}

struct DegreeData {
    normal: Vec<Word>,
    index: HashMap<Word, usize>,
    /// Normal form of `e_a · w_k` at slot `a * dim(m-1) + k`; empty in degree 0.
    extend: Vec<SparseVector>,
}

impl DegreeData {
    fn dim(&self) -> usize {
        self.normal.len()
    }
}

/// The algebra `S(V, N)` for `dim V = n`, with lazily built degree caches.
pub struct NSymAlgebra {
    n: usize,
    big_n: usize,
    relations: Vec<TensorElement>,
    degrees: RwLock<Vec<Arc<DegreeData>>>,
    build_lock: Mutex<()>,
}

impl fmt::Debug for NSymAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NSymAlgebra").field("n", &self.n).field("N", &self.big_n).finish()
    }
}

/// Two contexts are interchangeable when `(n, N)` agree: the normal bases are
/// deterministic functions of these.
impl PartialEq for NSymAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.big_n == other.big_n
    }
}

impl Eq for NSymAlgebra {}

impl NSymAlgebra {
    pub fn new(n: usize, big_n: usize) -> Result<Arc<Self>> {
        check_params(n, big_n)?;
        let unit =
            DegreeData { normal: vec![Word::empty()], index: HashMap::from([(Word::empty(), 0)]), extend: Vec::new() };
        Ok(Arc::new(Self {
            n,
            big_n,
            relations: ant_image_basis(big_n, n),
            degrees: RwLock::new(vec![Arc::new(unit)]),
            build_lock: Mutex::new(()),
        }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The homogeneity degree `N`.
    pub fn big_n(&self) -> usize {
        self.big_n
    }

    pub fn nu(&self, p: usize) -> usize {
        nu(p, self.big_n)
    }

    pub fn global_dimension(&self) -> usize {
        global_dimension(self.n, self.big_n).expect("validated at construction")
    }

    pub(crate) fn same_context(&self, other: &NSymAlgebra) -> Result<()> {
        if self.n == other.n && self.big_n == other.big_n {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left_n: self.n,
                left_big_n: self.big_n,
                right_n: other.n,
                right_big_n: other.big_n,
            })
        }
    }

    /// Basis `{Ant_N(e_I)}` of the relation space `R`.
    pub fn relations(&self) -> &[TensorElement] {
        &self.relations
    }

    /// Spanning set `{u ⊗ r ⊗ v}` of the degree-`m` part of the ideal `(R)`.
    pub fn relation_space(&self, m: usize) -> Vec<TensorElement> {
        let mut out = Vec::new();
        if m < self.big_n {
            return out;
        }
        let free = m - self.big_n;
        for i in 0..=free {
            for u in all_words(self.n, i) {
                let left = TensorElement::from_word(self.n, u);
                for r in &self.relations {
                    let lr = left.tensor(r);
                    for v in all_words(self.n, free - i) {
                        out.push(lr.tensor(&TensorElement::from_word(self.n, v)));
                    }
                }
            }
        }
        out
    }

    fn degree(&self, m: usize) -> Arc<DegreeData> {
        if let Some(d) = self.degrees.read().expect("degree cache poisoned").get(m) {
            return Arc::clone(d);
        }
        let _guard = self.build_lock.lock().expect("degree cache poisoned");
        loop {
            let built = self.degrees.read().expect("degree cache poisoned").len();
            if built > m {
                break;
            }
            let next = self.build_degree(built);
            self.degrees.write().expect("degree cache poisoned").push(Arc::new(next));
        }
        Arc::clone(&self.degrees.read().expect("degree cache poisoned")[m])
    }

    fn build_degree(&self, m: usize) -> DegreeData {
        let n = self.n;
        let prev = self.degree(m - 1);
        let prev_dim = prev.dim();
        let ncols = n * prev_dim;
        // Pivots are the smallest key, so keys run in reverse word order to
        // make the greatest word lead.
        let key = |col: usize| ncols - 1 - col;

        let mut ech = Echelon::new();
        if m >= self.big_n {
            let base = self.degree(m - self.big_n);
            for r in &self.relations {
                for t in 0..base.dim() {
                    let mut image = SparseVector::new();
                    for (word, c) in r.terms() {
                        let letters = word.letters();
                        let tail = self.lift(&letters[1..], &SparseVector::unit(t), m - self.big_n);
                        for (k, x) in tail.iter() {
                            image.add_at(key(letters[0] * prev_dim + k), &(c * x));
                        }
                    }
                    ech.insert(&image);
                }
            }
        }

        let mut normal = Vec::new();
        let mut new_index = vec![usize::MAX; ncols];
        for (col, slot) in new_index.iter_mut().enumerate() {
            if !ech.is_pivot(key(col)) {
                *slot = normal.len();
                normal.push(Word::letter(col / prev_dim).concat(&prev.normal[col % prev_dim]));
            }
        }
        let extend = (0..ncols)
            .map(|col| match ech.row(key(col)) {
                None => SparseVector::unit(new_index[col]),
                Some(row) => SparseVector::from_entries(
                    row.iter().filter(|&(k, _)| k != key(col)).map(|(k, x)| (new_index[ncols - 1 - k], -x.clone())),
                ),
            })
            .collect();
        let index = normal.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        DegreeData { normal, index, extend }
    }

    /// Left-multiplies a degree-`deg` coordinate vector by the word `letters`.
    fn lift(&self, letters: &[usize], v: &SparseVector, deg: usize) -> SparseVector {
        let mut cur = v.clone();
        for (d, &a) in (deg..).zip(letters.iter().rev()) {
            let prev_dim = self.degree(d).dim();
            let table = self.degree(d + 1);
            let mut next = SparseVector::new();
            for (k, x) in cur.iter() {
                next.add_scaled(&table.extend[a * prev_dim + k], x);
            }
            cur = next;
        }
        cur
    }

    pub fn dim(&self, m: usize) -> usize {
        self.degree(m).dim()
    }

    /// Normal words of `A_m`, in increasing lexicographic order.
    pub fn normal_words(&self, m: usize) -> Vec<Word> {
        self.degree(m).normal.clone()
    }

    pub fn normal_index(&self, w: &Word) -> Option<usize> {
        self.degree(w.len()).index.get(w).copied()
    }

    /// Coordinates of a basis tensor in the normal basis of `A_{|w|}`.
    pub fn project_word(&self, w: &Word) -> SparseVector {
        self.lift(w.letters(), &SparseVector::unit(0), 0)
    }

    pub fn project(&self, t: &TensorElement) -> SparseVector {
        let mut out = SparseVector::new();
        for (w, c) in t.terms() {
            out.add_scaled(&self.project_word(w), c);
        }
        out
    }

    /// `dim A_m` for `0 ≤ m ≤ max_m`.
    pub fn hilbert_dims(&self, max_m: usize) -> Vec<usize> {
        (0..=max_m).map(|m| self.dim(m)).collect()
    }

    /// `Σ_p (-1)^p dim A_{m-ν(p)} · C(n, ν(p))` for each `0 ≤ m ≤ max_m`.
    pub fn euler_sums(&self, max_m: usize) -> Vec<i128> {
        let dims = self.hilbert_dims(max_m);
        (0..=max_m)
            .map(|m| {
                (0..)
                    .map(|p| (p, self.nu(p)))
                    .take_while(|&(_, v)| v <= m)
                    .map(|(p, v)| {
                        let term = dims[m - v] as i128 * binomial(self.n, v) as i128;
                        if p % 2 == 0 {
                            term
                        } else {
                            -term
                        }
                    })
                    .sum()
            })
            .collect()
    }

    /// The alternating sums vanish in positive degrees and equal 1 in degree 0.
    pub fn euler_check(&self, max_m: usize) -> bool {
        self.euler_sums(max_m).iter().enumerate().all(|(m, &s)| s == i128::from(m == 0))
    }

    /// `W_p` from its closed form: all of `V^{⊗p}` below `N`, the
    /// antisymmetrizer image up to `n`, and zero beyond.
    pub fn w_space(&self, p: usize) -> Vec<TensorElement> {
        if p < self.big_n {
            all_words(self.n, p).map(|w| TensorElement::from_word(self.n, w)).collect()
        } else if p <= self.n {
            ant_image_basis(p, self.n)
        } else {
            Vec::new()
        }
    }

    /// `W_p = ⋂_{i+N+j=p} V^{⊗i} ⊗ R ⊗ V^{⊗j}` computed as an intersection.
    pub fn w_space_by_intersection(&self, p: usize) -> Vec<TensorElement> {
        let r: Vec<SparseVector> = self.relations.iter().map(TensorElement::to_sparse).collect();
        slot_intersection(&r, self.big_n, p, self.n).iter().map(|v| TensorElement::from_sparse(self.n, p, v)).collect()
    }

    pub fn w_dim(&self, p: usize) -> usize {
        if p < self.big_n {
            word_count(self.n, p)
        } else {
            binomial(self.n, p)
        }
    }
}

/// An element of `A`, stored degree by degree in normal coordinates.
#[derive(Clone)]
pub struct AlgebraElement {
    ctx: Arc<NSymAlgebra>,
    parts: BTreeMap<usize, SparseVector>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_context(&other.ctx).is_ok() && self.parts == other.parts
    }
}

impl Eq for AlgebraElement {}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({self})")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}) {w}", ratlin::format_scalar(&c))?;
        }
        Ok(())
    }
}

impl AlgebraElement {
    pub fn zero(ctx: &Arc<NSymAlgebra>) -> Self {
        Self { ctx: Arc::clone(ctx), parts: BTreeMap::new() }
    }

    pub fn scalar(ctx: &Arc<NSymAlgebra>, c: Scalar) -> Self {
        let mut out = Self::zero(ctx);
        out.add_part(0, &SparseVector::from_entries([(0, c)]));
        out
    }

    pub fn one(ctx: &Arc<NSymAlgebra>) -> Self {
        Self::scalar(ctx, Scalar::one())
    }

    /// The class of `e_a` (0-based letter).
    pub fn generator(ctx: &Arc<NSymAlgebra>, a: usize) -> Self {
        Self::from_word(ctx, &Word::letter(a))
    }

    pub fn from_word(ctx: &Arc<NSymAlgebra>, w: &Word) -> Self {
        let mut out = Self::zero(ctx);
        out.add_part(w.len(), &ctx.project_word(w));
        out
    }

    /// Class of a homogeneous tensor.
    pub fn normal_form(ctx: &Arc<NSymAlgebra>, t: &TensorElement) -> Self {
        let mut out = Self::zero(ctx);
        out.add_part(t.degree(), &ctx.project(t));
        out
    }

    /// Builds an element from arbitrary `(word, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(ctx: &Arc<NSymAlgebra>, terms: I) -> Self {
        let mut out = Self::zero(ctx);
        for (w, c) in terms {
            out.add_part(w.len(), &ctx.project_word(&w).scaled(&c));
        }
        out
    }

    /// Draws an element with up to two random normal monomials per degree
    /// `0..=max_degree` and small integer coefficients.
    pub fn random<R: Rng>(ctx: &Arc<NSymAlgebra>, max_degree: usize, rng: &mut R) -> Self {
        let mut out = Self::zero(ctx);
        for m in 0..=max_degree {
            let dim = ctx.dim(m);
            for _ in 0..rng.random_range(0..=2usize) {
                let k = rng.random_range(0..dim);
                let mut c = rng.random_range(-2i64..=2);
                if c == 0 {
                    c = 1;
                }
                out.add_part(m, &SparseVector::from_entries([(k, int(c))]));
            }
        }
        out
    }

    pub fn context(&self) -> &Arc<NSymAlgebra> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, m: usize) -> Option<&SparseVector> {
        self.parts.get(&m)
    }

    pub fn parts(&self) -> impl Iterator<Item = (usize, &SparseVector)> + '_ {
        self.parts.iter().map(|(&m, v)| (m, v))
    }

    /// `(normal word, coefficient)` pairs in degree-lexicographic order.
    pub fn terms(&self) -> Vec<(Word, Scalar)> {
        self.parts
            .iter()
            .flat_map(|(&m, v)| {
                let basis = self.ctx.degree(m);
                v.iter().map(move |(k, c)| (basis.normal[k].clone(), c.clone())).collect::<Vec<_>>()
            })
            .collect()
    }

    fn add_part(&mut self, m: usize, v: &SparseVector) {
        if v.is_zero() {
            return;
        }
        let slot = self.parts.entry(m).or_default();
        slot.add_scaled(v, &Scalar::one());
        if slot.is_zero() {
            self.parts.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, c: &Scalar) {
        debug_assert!(self.ctx.same_context(&other.ctx).is_ok());
        for (m, v) in other.parts() {
            self.add_part(m, &v.scaled(c));
        }
    }

    pub fn add_assign(&mut self, other: &AlgebraElement) {
        self.add_scaled(other, &Scalar::one());
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    pub fn scaled(&self, c: &Scalar) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.ctx);
        out.add_scaled(self, c);
        out
    }

    /// Product in `A`; both factors must live in the same algebra.
    pub fn multiply(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.ctx.same_context(&other.ctx)?;
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(&self.ctx);
        for (da, va) in self.parts() {
            let basis = self.ctx.degree(da);
            for (k, x) in va.iter() {
                let letters = basis.normal[k].letters();
                for (db, vb) in other.parts() {
                    out.add_part(da + db, &self.ctx.lift(letters, vb, db).scaled(x));
                }
            }
        }
        out
    }
}
