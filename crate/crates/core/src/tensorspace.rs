//! Words, tensors and wedge elements over `V = k^n`, the left permutation
//! action, the antisymmetrizer, and the isomorphism between `Λ^p V` and the
//! antisymmetrizer image inside `V^{⊗p}`.
//!
//! Letters are stored 0-based (`0` stands for `e_1`); serialized forms and
//! `Display` use the 1-based convention.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratlin::{self, int, Echelon, Scalar, SparseMatrix, SparseVector};

/// A basis tensor `e_{w_1} ⊗ … ⊗ e_{w_p}`.
///
/// Ordered degree-lexicographically: shorter words first, then letter by letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(a: usize) -> Self {
        Word(vec![a])
    }

    /// Builds a word from 1-based letters, validating against `n`.
    pub fn from_one_based(letters: &[usize], n: usize) -> Result<Self> {
        letters
            .iter()
            .map(|&l| if (1..=n).contains(&l) { Ok(l - 1) } else { Err(Error::LetterOutOfRange { letter: l, n }) })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|l| l + 1).collect()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn has_repeated_letter(&self) -> bool {
        let mut seen = self.0.clone();
        seen.sort_unstable();
        seen.windows(2).any(|w| w[0] == w[1])
    }

    /// Position in the lexicographic enumeration of all words of this length.
    pub fn index(&self, n: usize) -> usize {
        self.0.iter().fold(0, |acc, &l| acc * n + l)
    }

    pub fn from_index(mut index: usize, len: usize, n: usize) -> Word {
        let mut letters = vec![0; len];
        for slot in letters.iter_mut().rev() {
            *slot = index % n;
            index /= n;
        }
        Word(letters)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "e{}", l + 1)?;
        }
        Ok(())
    }
}

/// Number of words of length `len` over `n` letters.
pub fn word_count(n: usize, len: usize) -> usize {
    n.checked_pow(len as u32).expect("tensor dimension overflows usize")
}

/// All words of length `len` in lexicographic order.
pub fn all_words(n: usize, len: usize) -> impl Iterator<Item = Word> {
    (0..word_count(n, len)).map(move |i| Word::from_index(i, len, n))
}

/// All strictly increasing tuples of length `len` from `0..n`, lexicographically.
pub fn increasing_tuples(n: usize, len: usize) -> Vec<IncreasingTuple> {
    fn rec(n: usize, len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<IncreasingTuple>) {
        if cur.len() == len {
            out.push(IncreasingTuple(cur.clone()));
            return;
        }
        for a in start..n {
            if n - a < len - cur.len() {
                break;
            }
            cur.push(a);
            rec(n, len, a + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if len <= n {
        rec(n, len, 0, &mut Vec::with_capacity(len), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(p: usize) -> usize {
    (1..=p).product()
}

/// A permutation of `{0..p}`, stored as its list of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidParameters(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm(images))
    }

    pub fn identity(p: usize) -> Self {
        Perm((0..p).collect())
    }

    pub fn transposition(p: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..p).collect();
        images.swap(a, b);
        Perm(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    /// `(self ∘ other)(x) = self(other(x))`
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn sign(&self) -> i64 {
        let inversions: usize =
            (0..self.0.len()).map(|i| (i + 1..self.0.len()).filter(|&j| self.0[i] > self.0[j]).count()).sum();
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All permutations of `{0..p}` in lexicographic order of their images.
    pub fn all(p: usize) -> Vec<Perm> {
        let mut cur: Vec<usize> = (0..p).collect();
        let mut out = vec![Perm(cur.clone())];
        loop {
            let Some(i) = (1..p).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..p).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Perm(cur.clone()));
        }
    }

    /// Left action on words: the letter at position `t` of the result is the
    /// letter of `w` at position `σ^{-1}(t)`.
    pub fn act(&self, w: &Word) -> Result<Word> {
        if w.len() != self.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: w.len() });
        }
        Ok(self.act_unchecked(w))
    }

    fn act_unchecked(&self, w: &Word) -> Word {
        let mut out = vec![0; w.len()];
        for (s, &letter) in w.0.iter().enumerate() {
            out[self.0[s]] = letter;
        }
        Word(out)
    }
}

/// Permutations of `{0..p}` paired with their signs.
pub fn signed_permutations(p: usize) -> Vec<(Perm, i64)> {
    Perm::all(p)
        .into_iter()
        .map(|s| {
            let sign = s.sign();
            (s, sign)
        })
        .collect()
}

pub(crate) fn add_entry<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, c: &Scalar) {
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            *slot.get_mut() += c;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// An element of `V^{⊗p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    n: usize,
    degree: usize,
    terms: BTreeMap<Word, Scalar>,
}

impl TensorElement {
    pub fn zero(n: usize, degree: usize) -> Self {
        Self { n, degree, terms: BTreeMap::new() }
    }

    pub fn unit(n: usize) -> Self {
        Self::from_word(n, Word::empty())
    }

    pub fn from_word(n: usize, w: Word) -> Self {
        let mut t = Self::zero(n, w.len());
        t.terms.insert(w, Scalar::one());
        t
    }

    /// Builds a tensor from `(coefficient, 1-based letters)` pairs.
    pub fn from_terms(n: usize, degree: usize, terms: &[(i64, &[usize])]) -> Result<Self> {
        let mut t = Self::zero(n, degree);
        for &(c, letters) in terms {
            let w = Word::from_one_based(letters, n)?;
            if w.len() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: w.len() });
            }
            t.add_term(w, &int(c));
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        debug_assert_eq!(w.len(), self.degree);
        if c.is_zero() {
            return;
        }
        add_entry(&mut self.terms, w, c);
    }

    pub fn add_scaled(&mut self, other: &TensorElement, c: &Scalar) {
        for (w, x) in other.terms() {
            self.add_term(w.clone(), &(x * c));
        }
    }

    pub fn scaled(&self, c: &Scalar) -> TensorElement {
        let mut out = Self::zero(self.n, self.degree);
        out.add_scaled(self, c);
        out
    }

    /// `self ⊗ other`
    pub fn tensor(&self, other: &TensorElement) -> TensorElement {
        let mut out = Self::zero(self.n, self.degree + other.degree);
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }

    pub fn permuted(&self, sigma: &Perm) -> Result<TensorElement> {
        let mut out = Self::zero(self.n, self.degree);
        for (w, c) in self.terms() {
            out.add_term(sigma.act(w)?, c);
        }
        Ok(out)
    }

    /// Coordinates in the lexicographic word basis of `V^{⊗p}`.
    pub fn to_sparse(&self) -> SparseVector {
        SparseVector::from_entries(self.terms().map(|(w, c)| (w.index(self.n), c.clone())))
    }

    pub fn from_sparse(n: usize, degree: usize, v: &SparseVector) -> Self {
        let mut t = Self::zero(n, degree);
        for (i, c) in v.iter() {
            t.add_term(Word::from_index(i, degree, n), c);
        }
        t
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}) {w}", ratlin::format_scalar(c))?;
        }
        Ok(())
    }
}

/// Strictly increasing index tuple `i_1 < … < i_p` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IncreasingTuple(Vec<usize>);

impl IncreasingTuple {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameters(format!("{indices:?} is not strictly increasing")));
        }
        Ok(IncreasingTuple(indices))
    }

    pub fn empty() -> Self {
        IncreasingTuple(Vec::new())
    }

    pub fn from_one_based(indices: &[usize], n: usize) -> Result<Self> {
        let w = Word::from_one_based(indices, n)?;
        Self::new(w.0)
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_word(&self) -> Word {
        Word(self.0.clone())
    }

    /// Entries at the given positions (0-based), in the given order.
    pub fn pick(&self, positions: &[usize]) -> Word {
        Word(positions.iter().map(|&p| self.0[p]).collect())
    }
}

impl fmt::Display for IncreasingTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|i| format!("e{}", i + 1)).collect();
        write!(f, "{}", parts.join("∧"))
    }
}

/// Sorts a word into an increasing tuple with the sign of the sorting
/// permutation; `None` when a letter repeats.
pub fn sort_with_sign(w: &Word) -> Option<(IncreasingTuple, i64)> {
    let letters = w.letters();
    let mut inversions = 0usize;
    for i in 0..letters.len() {
        for j in i + 1..letters.len() {
            match letters[i].cmp(&letters[j]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    Some((IncreasingTuple(sorted), if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

/// An element of `Λ^p V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeElement {
    n: usize,
    degree: usize,
    terms: BTreeMap<IncreasingTuple, Scalar>,
}

impl WedgeElement {
    pub fn zero(n: usize, degree: usize) -> Self {
        Self { n, degree, terms: BTreeMap::new() }
    }

    pub fn basis(n: usize, tuple: IncreasingTuple) -> Self {
        let mut w = Self::zero(n, tuple.len());
        w.terms.insert(tuple, Scalar::one());
        w
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IncreasingTuple, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &IncreasingTuple) -> Scalar {
        self.terms.get(t).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, t: IncreasingTuple, c: &Scalar) {
        debug_assert_eq!(t.len(), self.degree);
        if c.is_zero() {
            return;
        }
        add_entry(&mut self.terms, t, c);
    }

    pub fn add_scaled(&mut self, other: &WedgeElement, c: &Scalar) {
        for (t, x) in other.terms() {
            self.add_term(t.clone(), &(x * c));
        }
    }
}

impl fmt::Display for WedgeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}) {t}", ratlin::format_scalar(c))?;
        }
        Ok(())
    }
}

/// `Σ_{σ∈Σ_p} sgn(σ) σ·t`; the identity in degree 0.
pub fn ant(t: &TensorElement) -> TensorElement {
    let perms = signed_permutations(t.degree());
    let mut out = TensorElement::zero(t.n(), t.degree());
    for (w, c) in t.terms() {
        for (sigma, sign) in &perms {
            out.add_term(sigma.act_unchecked(w), &(c * int(*sign)));
        }
    }
    out
}

/// Antisymmetrizer of a single basis tensor.
pub fn ant_word(n: usize, w: &Word) -> TensorElement {
    ant(&TensorElement::from_word(n, w.clone()))
}

/// `e_{i_1} ∧ … ∧ e_{i_p} ↦ Ant_p(e_{i_1} … e_{i_p})`, extended linearly.
pub fn wedge_to_tensor(w: &WedgeElement) -> TensorElement {
    let mut out = TensorElement::zero(w.n(), w.degree());
    for (tuple, c) in w.terms() {
        out.add_scaled(&ant_word(w.n(), &tuple.as_word()), c);
    }
    out
}

/// Inverse of [`wedge_to_tensor`] on the antisymmetrizer image.
pub fn tensor_to_wedge(t: &TensorElement) -> Result<WedgeElement> {
    let mut w = WedgeElement::zero(t.n(), t.degree());
    for (word, c) in t.terms() {
        if let Ok(tuple) = IncreasingTuple::new(word.letters().to_vec()) {
            w.add_term(tuple, c);
        }
    }
    if wedge_to_tensor(&w) != *t {
        return Err(Error::NotInAntImage);
    }
    Ok(w)
}

/// Multilinear antisymmetric extension of a basis tensor into `Λ^p V`.
pub fn antisymmetrize_word_to_wedge(n: usize, w: &Word) -> WedgeElement {
    match sort_with_sign(w) {
        None => WedgeElement::zero(n, w.len()),
        Some((tuple, sign)) => {
            let mut out = WedgeElement::zero(n, w.len());
            out.add_term(tuple, &int(sign));
            out
        }
    }
}

/// `{Ant_p(e_I) : I increasing}`, a basis of `Ant_p(V^{⊗p})`.
pub fn ant_image_basis(p: usize, n: usize) -> Vec<TensorElement> {
    increasing_tuples(n, p).iter().map(|t| ant_word(n, &t.as_word())).collect()
}

/// Spanning set of `Σ V^{⊗i} ⊗ E ⊗ V^{⊗j}` with `E` spanned by `e_a e_a` and
/// `e_a e_b + e_b e_a`.
pub fn ant_kernel_generators(p: usize, n: usize) -> Vec<TensorElement> {
    let mut out = Vec::new();
    if p < 2 {
        return out;
    }
    let e_gens = symmetric_square_generators(n);
    for i in 0..=p - 2 {
        let j = p - 2 - i;
        for u in all_words(n, i) {
            for v in all_words(n, j) {
                for e in &e_gens {
                    out.push(
                        TensorElement::from_word(n, u.clone())
                            .tensor(e)
                            .tensor(&TensorElement::from_word(n, v.clone())),
                    );
                }
            }
        }
    }
    out
}

fn symmetric_square_generators(n: usize) -> Vec<TensorElement> {
    let mut gens = Vec::new();
    for a in 0..n {
        for b in a..n {
            let mut t = TensorElement::from_word(n, Word(vec![a, b]));
            if a != b {
                t.add_term(Word(vec![b, a]), &Scalar::one());
            }
            gens.push(t);
        }
    }
    gens
}

/// Matrix of `Ant_p` on `V^{⊗p}`: row `u`, column `w` holds the coefficient of
/// `u` in `Ant_p(w)`.
pub fn ant_matrix(p: usize, n: usize) -> SparseMatrix {
    let perms = signed_permutations(p);
    let size = word_count(n, p);
    let mut rows: Vec<SparseVector> = vec![SparseVector::new(); size];
    for w in all_words(n, p) {
        let col = w.index(n);
        for (sigma, sign) in &perms {
            rows[sigma.act_unchecked(&w).index(n)].add_at(col, &int(*sign));
        }
    }
    SparseMatrix::new(rows, size).expect("columns in range")
}

/// Basis of `ker(Ant_p)` computed from the matrix of `Ant_p`.
pub fn ant_kernel_basis(p: usize, n: usize) -> Vec<SparseVector> {
    ratlin::kernel_basis(&ant_matrix(p, n))
}

/// Words `w_1 ≤ … ≤ w_len`, one per `Σ_len`-orbit of words.
pub fn nondecreasing_words(n: usize, len: usize) -> Vec<Word> {
    fn rec(n: usize, len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Word>) {
        if cur.len() == len {
            out.push(Word(cur.clone()));
            return;
        }
        for a in start..n {
            cur.push(a);
            rec(n, len, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, len, 0, &mut Vec::with_capacity(len), &mut out);
    out
}

/// `dim Ant_p(V^{⊗p})`, as the rank of `Ant_p` applied to one word per orbit.
///
/// `Ant_p(σ·w) = sgn(σ) Ant_p(w)`, so these images span the whole image.
pub fn ant_rank(p: usize, n: usize) -> usize {
    let images: Vec<SparseVector> = nondecreasing_words(n, p).iter().map(|w| ant_word(n, w).to_sparse()).collect();
    ratlin::rank_of(&images)
}

/// Annihilator of a subspace of `V^{⊗k}` under the standard pairing of word
/// coordinates.
pub fn annihilator(basis: &[SparseVector], ncols: usize) -> Vec<SparseVector> {
    let m = SparseMatrix::new(basis.to_vec(), ncols).expect("columns in range");
    ratlin::kernel_basis(&m)
}

/// Intersects `span(basis)` (inside `V^{⊗len}`) with `V^{⊗i} ⊗ S ⊗ V^{⊗j}`,
/// where `S ⊆ V^{⊗k}` is given by its annihilator `perp`.
///
/// Returns a reduced basis of the intersection.
pub fn intersect_with_slot_subspace(
    basis: &[SparseVector],
    len: usize,
    i: usize,
    k: usize,
    perp: &[SparseVector],
    n: usize,
) -> Vec<SparseVector> {
    assert!(i + k <= len);
    let j = len - i - k;
    let block = word_count(n, k);
    let tail = word_count(n, j);
    // perp entries by block coordinate: s -> [(constraint id, y_s)]
    let mut by_slot: HashMap<usize, Vec<(usize, &Scalar)>> = HashMap::new();
    for (y_id, y) in perp.iter().enumerate() {
        for (s, ys) in y.iter() {
            by_slot.entry(s).or_default().push((y_id, ys));
        }
    }
    let mut rows: HashMap<(usize, usize, usize), SparseVector> = HashMap::new();
    for (b_id, b) in basis.iter().enumerate() {
        for (w, x) in b.iter() {
            let v = w % tail;
            let s = (w / tail) % block;
            let u = w / (tail * block);
            if let Some(hits) = by_slot.get(&s) {
                for &(y_id, ys) in hits {
                    rows.entry((u, v, y_id)).or_default().add_at(b_id, &(x * ys));
                }
            }
        }
    }
    let mut keys: Vec<_> = rows.keys().copied().collect();
    keys.sort_unstable();
    let rows: Vec<SparseVector> = keys.into_iter().map(|key| rows.remove(&key).unwrap()).collect();
    let m = SparseMatrix::new(rows, basis.len()).expect("columns in range");
    let combos = ratlin::kernel_basis(&m);
    let mut ech = Echelon::new();
    for c in &combos {
        let mut v = SparseVector::new();
        for (b_id, coeff) in c.iter() {
            v.add_scaled(&basis[b_id], coeff);
        }
        ech.insert(&v);
    }
    ech.rows().map(|(_, r)| r.clone()).collect()
}

/// `⋂_{i+k+j=len} V^{⊗i} ⊗ S ⊗ V^{⊗j}` for `S ⊆ V^{⊗k}` with basis `s_basis`.
///
/// Built by appending one slot at a time:
/// `I_len = (I_{len-1} ⊗ V) ∩ (V^{⊗(len-k)} ⊗ S)`.
pub fn slot_intersection(s_basis: &[SparseVector], k: usize, len: usize, n: usize) -> Vec<SparseVector> {
    if len < k {
        return (0..word_count(n, len)).map(SparseVector::unit).collect();
    }
    let perp = annihilator(s_basis, word_count(n, k));
    let mut ech = Echelon::new();
    ech.extend(s_basis);
    let mut current: Vec<SparseVector> = ech.rows().map(|(_, r)| r.clone()).collect();
    for cur_len in k + 1..=len {
        if current.is_empty() {
            break;
        }
        let extended: Vec<SparseVector> = current
            .iter()
            .flat_map(|b| {
                (0..n).map(move |a| SparseVector::from_entries(b.iter().map(|(w, x)| (w * n + a, x.clone()))))
            })
            .collect();
        current = intersect_with_slot_subspace(&extended, cur_len, cur_len - k, k, &perp, n);
    }
    current
}

/// Same intersection as [`slot_intersection`], computed as the kernel of one
/// stacked constraint matrix over all of `V^{⊗len}`. Only practical for small
/// `n^len`.
pub fn slot_intersection_direct(s_basis: &[SparseVector], k: usize, len: usize, n: usize) -> Vec<SparseVector> {
    let size = word_count(n, len);
    if len < k {
        return (0..size).map(SparseVector::unit).collect();
    }
    let perp = annihilator(s_basis, word_count(n, k));
    let mut rows = Vec::new();
    for i in 0..=len - k {
        let j = len - k - i;
        for u in all_words(n, i) {
            for v in all_words(n, j) {
                for y in &perp {
                    rows.push(SparseVector::from_entries(y.iter().map(|(s, ys)| {
                        let w = Word::new(u.letters().to_vec()).concat(&Word::from_index(s, k, n)).concat(&v);
                        (w.index(n), ys.clone())
                    })));
                }
            }
        }
    }
    ratlin::kernel_basis(&SparseMatrix::new(rows, size).expect("columns in range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(letters: &[usize]) -> Word {
        Word::new(letters.iter().map(|l| l - 1).collect())
    }

    fn tuple(letters: &[usize]) -> IncreasingTuple {
        IncreasingTuple::from_one_based(letters, 9).unwrap()
    }

    #[test]
    fn perm_action_examples() {
        let abc = Word::new(vec![10, 20, 30]);
        assert_eq!(Perm::identity(3).act(&abc).unwrap(), abc);
        assert_eq!(Perm::transposition(2, 0, 1).act(&Word::new(vec![10, 20])).unwrap(), Word::new(vec![20, 10]));
        // 1→2→3→1 sends the letter at slot 1 to slot 2, and so on.
        let cycle = Perm::new(vec![1, 2, 0]).unwrap();
        assert_eq!(cycle.act(&abc).unwrap(), Word::new(vec![30, 10, 20]));
        assert!(cycle.act(&Word::new(vec![1, 2])).is_err());
    }

    #[test]
    fn perm_action_is_a_left_action() {
        let word = Word::new(vec![7, 8, 9]);
        for s in Perm::all(3) {
            for t in Perm::all(3) {
                let lhs = s.compose(&t).act(&word).unwrap();
                let rhs = s.act(&t.act(&word).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn all_perms_and_signs() {
        let perms = Perm::all(4);
        assert_eq!(perms.len(), 24);
        assert!(perms.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(perms.iter().map(Perm::sign).sum::<i64>(), 0);
        assert_eq!(Perm::transposition(4, 1, 3).sign(), -1);
        assert_eq!(Perm::all(0), vec![Perm::identity(0)]);
    }

    #[test]
    fn ant_examples() {
        let n = 3;
        let e12 = TensorElement::from_terms(n, 2, &[(1, &[1, 2])]).unwrap();
        assert_eq!(ant(&e12), TensorElement::from_terms(n, 2, &[(1, &[1, 2]), (-1, &[2, 1])]).unwrap());
        let e11 = TensorElement::from_terms(n, 2, &[(1, &[1, 1])]).unwrap();
        assert!(ant(&e11).is_zero());

        // Σ_3 by hand: even permutations of 123 carry +, odd carry −.
        let e123 = TensorElement::from_terms(n, 3, &[(1, &[1, 2, 3])]).unwrap();
        let expected = TensorElement::from_terms(
            n,
            3,
            &[(1, &[1, 2, 3]), (1, &[2, 3, 1]), (1, &[3, 1, 2]), (-1, &[1, 3, 2]), (-1, &[2, 1, 3]), (-1, &[3, 2, 1])],
        )
        .unwrap();
        assert_eq!(ant(&e123), expected);

        let scalar = TensorElement::unit(n).scaled(&int(5));
        assert_eq!(ant(&scalar), scalar);
    }

    #[test]
    fn ant_squared_is_factorial_multiple() {
        let n = 3;
        for p in 0..=4 {
            for word in all_words(n, p) {
                let t = TensorElement::from_word(n, word);
                let once = ant(&t);
                assert_eq!(ant(&once), once.scaled(&int(factorial(p) as i64)));
            }
        }
    }

    #[test]
    fn wedge_tensor_examples() {
        let n = 3;
        let e12 = WedgeElement::basis(n, tuple(&[1, 2]));
        let t = wedge_to_tensor(&e12);
        assert_eq!(t, TensorElement::from_terms(n, 2, &[(1, &[1, 2]), (-1, &[2, 1])]).unwrap());
        assert_eq!(tensor_to_wedge(&t).unwrap(), e12);

        assert!(wedge_to_tensor(&WedgeElement::zero(n, 2)).is_zero());
        assert!(tensor_to_wedge(&TensorElement::zero(n, 2)).unwrap().is_zero());

        let mut combo = WedgeElement::basis(n, tuple(&[1, 3]));
        combo.add_term(tuple(&[2, 3]), &int(2));
        let mut expected = ant_word(n, &w(&[1, 3]));
        expected.add_scaled(&ant_word(n, &w(&[2, 3])), &int(2));
        assert_eq!(wedge_to_tensor(&combo), expected);

        let ant3 = ant_word(n, &w(&[1, 2, 3]));
        assert_eq!(tensor_to_wedge(&ant3).unwrap(), WedgeElement::basis(n, tuple(&[1, 2, 3])));
    }

    #[test]
    fn tensor_to_wedge_rejects_non_image() {
        let t = TensorElement::from_terms(3, 2, &[(1, &[1, 2])]).unwrap();
        assert_eq!(tensor_to_wedge(&t), Err(Error::NotInAntImage));
        let sym = TensorElement::from_terms(3, 2, &[(1, &[2, 1]), (1, &[1, 2])]).unwrap();
        assert_eq!(tensor_to_wedge(&sym), Err(Error::NotInAntImage));
    }

    #[test]
    fn antisymmetrize_word_examples() {
        let n = 3;
        let mut neg = WedgeElement::zero(n, 2);
        neg.add_term(tuple(&[1, 2]), &int(-1));
        assert_eq!(antisymmetrize_word_to_wedge(n, &w(&[2, 1])), neg);
        assert!(antisymmetrize_word_to_wedge(n, &w(&[1, 1])).is_zero());
        assert_eq!(antisymmetrize_word_to_wedge(n, &w(&[3, 1, 2])), WedgeElement::basis(n, tuple(&[1, 2, 3])));
    }

    #[test]
    fn ant_image_and_kernel_small_cases() {
        let dim =
            |gens: &[TensorElement]| ratlin::rank_of(gens.iter().map(|t| t.to_sparse()).collect::<Vec<_>>().iter());
        assert_eq!(dim(&ant_image_basis(2, 2)), 1);
        assert_eq!(dim(&ant_kernel_generators(2, 2)), 3);
        assert_eq!(dim(&ant_image_basis(3, 2)), 0);
        assert_eq!(dim(&ant_image_basis(2, 3)), 3);
        assert_eq!(dim(&ant_kernel_generators(2, 3)), 6);
    }

    #[test]
    fn word_index_round_trip_and_order() {
        let n = 3;
        let words: Vec<Word> = all_words(n, 3).collect();
        assert!(words.windows(2).all(|p| p[0] < p[1]));
        for (i, word) in words.iter().enumerate() {
            assert_eq!(word.index(n), i);
        }
        assert!(Word::new(vec![2]) < Word::new(vec![0, 0]));
    }

    #[test]
    fn increasing_tuple_enumeration() {
        assert_eq!(increasing_tuples(4, 2).len(), 6);
        assert_eq!(increasing_tuples(3, 4).len(), 0);
        assert_eq!(increasing_tuples(3, 0), vec![IncreasingTuple::empty()]);
        assert!(IncreasingTuple::new(vec![1, 1]).is_err());
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(2, 3), 0);
    }

    #[test]
    fn orbit_rank_matches_full_matrix_rank() {
        assert_eq!(nondecreasing_words(3, 2).len(), 6);
        for n in 1..=4 {
            for p in 0..=5 {
                if word_count(n, p) > 1024 {
                    continue;
                }
                assert_eq!(ant_rank(p, n), ratlin::rank(&ant_matrix(p, n)), "n={n} p={p}");
                assert_eq!(ant_rank(p, n), binomial(n, p));
            }
        }
    }

    #[test]
    fn recursive_and_direct_intersections_agree() {
        for n in 2..=3 {
            let ant2: Vec<SparseVector> = ant_image_basis(2, n).iter().map(TensorElement::to_sparse).collect();
            for len in 0..=4 {
                let a = slot_intersection(&ant2, 2, len, n);
                let b = slot_intersection_direct(&ant2, 2, len, n);
                assert!(ratlin::subspace_equal(&a, &b, word_count(n, len)), "n={n} len={len}");
            }
        }
    }

    proptest! {
        #[test]
        fn wedge_round_trip(coeffs in prop::collection::vec(-4i64..=4, 6)) {
            let n = 4;
            let mut wedge = WedgeElement::zero(n, 2);
            for (t, c) in increasing_tuples(n, 2).into_iter().zip(coeffs) {
                wedge.add_term(t, &int(c));
            }
            prop_assert_eq!(tensor_to_wedge(&wedge_to_tensor(&wedge)).unwrap(), wedge);
        }

        #[test]
        fn ant_is_alternating_under_the_action(letters in prop::collection::vec(0usize..4, 0..5), pick in 0usize..120) {
            let n = 4;
            let word = Word::new(letters);
            let perms = Perm::all(word.len());
            let sigma = &perms[pick % perms.len()];
            let moved = ant_word(n, &sigma.act(&word).unwrap());
            prop_assert_eq!(moved, ant_word(n, &word).scaled(&int(sigma.sign())));
        }
    }
}
