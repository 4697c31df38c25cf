//! Free Hom-magmas, free non-associative Hom-algebras and degree-truncated free Hom-Lie
//! algebras over a finite Hom-set.
//!
//! The free objects are graded by word length and every construction here is bounded by
//! a maximal length. Degree `n` of the free Hom-Lie algebra is `span(X_n) / R_n`, where
//! `R_n` is the degree-`n` piece of the ideal generated by `ab + ba` and
//! `α(a)(bc) + α(c)(ab) + α(b)(ca)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::action::HomAction;
use crate::algebra::{morphism_report, HomLie};
use crate::cohomology::Cochain;
use crate::error::{Error, Result};
use crate::exactla::{axpy, is_zero_vector, unit_vector, zero_vector, Matrix, SparseEchelon};
use crate::extension::extension_from_cocycle;
use crate::scalar::Field;

/// A finite set with a self-map. The map may send an element to the base point `0`,
/// which the linear constructions read as the zero vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSet {
    names: Vec<String>,
    alpha: Vec<Option<usize>>,
}

impl HomSet {
    pub fn new(names: Vec<String>, alpha: Vec<Option<usize>>) -> Result<Self> {
        if names.len() != alpha.len() {
            return Err(Error::dims("Hom-set map", names.len(), alpha.len()));
        }
        if let Some(bad) = alpha.iter().flatten().find(|&&a| a >= names.len()) {
            return Err(Error::NotHomSetMorphism(format!("image {bad} is not an element")));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Invalid(format!("duplicate element {n}")));
            }
        }
        Ok(HomSet { names, alpha })
    }

    pub fn identity(names: Vec<String>) -> Result<Self> {
        let alpha = (0..names.len()).map(Some).collect();
        Self::new(names, alpha)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn twist(&self, i: usize) -> Option<usize> {
        self.alpha[i]
    }
}

/// A non-associative word: a planar binary tree with labelled leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Word {
    Leaf(usize),
    Node(Box<Word>, Box<Word>),
}

impl Word {
    pub fn graft(a: Word, b: Word) -> Word {
        Word::Node(Box::new(a), Box::new(b))
    }

    pub fn len(&self) -> usize {
        match self {
            Word::Leaf(_) => 1,
            Word::Node(a, b) => a.len() + b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Word::Leaf(i) => out.push(*i),
            Word::Node(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    fn relabel(&self, labels: &mut impl Iterator<Item = usize>) -> Word {
        match self {
            Word::Leaf(_) => Word::Leaf(labels.next().expect("one label per leaf")),
            Word::Node(a, b) => Word::graft(a.relabel(labels), b.relabel(labels)),
        }
    }

    /// Leaf-wise action of `α_X`; `None` when some leaf is sent to the base point.
    pub fn twist(&self, x: &HomSet) -> Option<Word> {
        match self {
            Word::Leaf(i) => x.twist(*i).map(Word::Leaf),
            Word::Node(a, b) => Some(Word::graft(a.twist(x)?, b.twist(x)?)),
        }
    }

    pub fn display<'a>(&'a self, x: &'a HomSet) -> impl fmt::Display + 'a {
        WordDisplay { word: self, set: x }
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    set: &'a HomSet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.word {
            Word::Leaf(i) => write!(f, "{}", self.set.names[*i]),
            Word::Node(a, b) => write!(f, "({} {})", a.display(self.set), b.display(self.set)),
        }
    }
}

pub fn catalan(n: usize) -> usize {
    let mut c = 1usize;
    for k in 0..n {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

/// Unlabelled shapes of every size up to `max`, ordered by the size of the left factor,
/// then left shape, then right shape.
fn shapes(max: usize) -> Vec<Vec<Word>> {
    let mut out: Vec<Vec<Word>> = vec![Vec::new(), vec![Word::Leaf(0)]];
    for n in 2..=max {
        let mut level = Vec::new();
        for p in 1..n {
            for a in &out[p] {
                for b in &out[n - p] {
                    level.push(Word::graft(a.clone(), b.clone()));
                }
            }
        }
        out.push(level);
    }
    out
}

/// The free Hom-magma over `X`, enumerated up to a maximal length.
#[derive(Clone, Debug)]
pub struct FreeWords {
    set: HomSet,
    by_length: Vec<Vec<Word>>,
    index: Vec<HashMap<Word, usize>>,
}

/// `X_1, …, X_max` in deterministic order: by shape, then leaf labels lexicographically.
pub fn free_words(x: &HomSet, max_len: usize) -> Result<FreeWords> {
    if max_len == 0 {
        return Err(Error::Invalid("maximal word length must be at least 1".into()));
    }
    let k = x.len();
    let all_shapes = shapes(max_len);
    let mut by_length = Vec::with_capacity(max_len);
    for (n, level) in all_shapes.iter().enumerate().skip(1) {
        let mut words = Vec::new();
        if k > 0 {
            for shape in level {
                let mut labels = vec![0usize; n];
                loop {
                    words.push(shape.relabel(&mut labels.iter().copied()));
                    let Some(pos) = (0..n).rev().find(|&i| labels[i] + 1 < k) else {
                        break;
                    };
                    labels[pos] += 1;
                    labels[pos + 1..].iter_mut().for_each(|l| *l = 0);
                }
            }
        }
        by_length.push(words);
    }
    let index = by_length
        .iter()
        .map(|ws| ws.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect())
        .collect();
    Ok(FreeWords {
        set: x.clone(),
        by_length,
        index,
    })
}

impl FreeWords {
    pub fn set(&self) -> &HomSet {
        &self.set
    }

    pub fn max_len(&self) -> usize {
        self.by_length.len()
    }

    /// Words of length `n`.
    pub fn words(&self, n: usize) -> &[Word] {
        &self.by_length[n - 1]
    }

    pub fn count(&self, n: usize) -> usize {
        self.words(n).len()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w.len() - 1)?.get(w).copied()
    }

    /// Index of `α(X_n[i])` in `X_n`.
    pub fn twist_index(&self, n: usize, i: usize) -> Option<usize> {
        let w = self.words(n)[i].twist(&self.set)?;
        self.index_of(&w)
    }
}

/// A set with a binary product and a compatible self-map; `zero` is the base point the
/// twist may hit.
pub trait HomMagma {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn twist(&self, a: &Self::Elem) -> Self::Elem;

    fn zero(&self) -> Self::Elem;
}

/// The free Hom-magma itself, with `None` as the base point.
impl HomMagma for FreeWords {
    type Elem = Option<Word>;

    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Some(Word::graft(a.clone()?, b.clone()?))
    }

    fn twist(&self, a: &Self::Elem) -> Self::Elem {
        a.as_ref()?.twist(&self.set)
    }

    fn zero(&self) -> Self::Elem {
        None
    }
}

impl<F: Field> HomMagma for HomLie<F> {
    type Elem = Vec<F>;

    fn product(&self, a: &Vec<F>, b: &Vec<F>) -> Vec<F> {
        self.bracket(a, b)
    }

    fn twist(&self, a: &Vec<F>) -> Vec<F> {
        HomLie::twist(self, a)
    }

    fn zero(&self) -> Vec<F> {
        zero_vector(self.dim())
    }
}

/// Values of the unique magma morphism extending a Hom-set map, indexed like
/// [`FreeWords::words`].
#[derive(Clone, Debug, PartialEq)]
pub struct MagmaExtension<E> {
    pub values: Vec<Vec<E>>,
    /// `F ∘ α = α_N ∘ F` on every enumerated word.
    pub intertwines: bool,
}

impl<E> MagmaExtension<E> {
    pub fn value(&self, n: usize, i: usize) -> &E {
        &self.values[n - 1][i]
    }
}

/// Extends `f: X → N` to words by `F(γδ) = F(γ) F(δ)`.
pub fn magma_univ_extend<N: HomMagma>(words: &FreeWords, target: &N, f: &[N::Elem]) -> Result<MagmaExtension<N::Elem>> {
    let x = words.set();
    if f.len() != x.len() {
        return Err(Error::dims("generator images", x.len(), f.len()));
    }
    for (i, image) in f.iter().enumerate() {
        let expected = x.twist(i).map_or_else(|| target.zero(), |j| f[j].clone());
        if target.twist(image) != expected {
            return Err(Error::NotHomSetMorphism(format!(
                "generator {} does not intertwine α",
                x.names()[i]
            )));
        }
    }
    let mut values: Vec<Vec<N::Elem>> = Vec::with_capacity(words.max_len());
    for n in 1..=words.max_len() {
        let level = words
            .words(n)
            .iter()
            .map(|w| match w {
                Word::Leaf(i) => f[*i].clone(),
                Word::Node(a, b) => {
                    let va = &values[a.len() - 1][words.index_of(a).expect("enumerated")];
                    let vb = &values[b.len() - 1][words.index_of(b).expect("enumerated")];
                    target.product(va, vb)
                }
            })
            .collect();
        values.push(level);
    }
    let intertwines = (1..=words.max_len()).all(|n| {
        (0..words.count(n)).all(|i| {
            let lhs = words
                .twist_index(n, i)
                .map_or_else(|| target.zero(), |j| values[n - 1][j].clone());
            lhs == target.twist(&values[n - 1][i])
        })
    });
    Ok(MagmaExtension { values, intertwines })
}

type Sparse<F> = BTreeMap<usize, F>;

fn add_term<F: Field>(v: &mut Sparse<F>, i: usize, c: F) {
    let e = v.entry(i).or_insert_with(F::zero);
    *e = e.add_ref(&c);
    if e.is_zero() {
        v.remove(&i);
    }
}

/// The free Hom-Lie algebra over `X`, one graded piece at a time up to `max_len`.
#[derive(Clone, Debug)]
pub struct FreeHomLie<F> {
    words: FreeWords,
    relations: Vec<SparseEchelon<F>>,
}

/// A graded piece: coset representatives of `span(X_n) / R_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBasis {
    pub degree: usize,
    pub word_count: usize,
    pub relation_rank: usize,
    pub representatives: Vec<Word>,
}

impl DegreeBasis {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }
}

impl<F: Field> FreeHomLie<F> {
    pub fn new(x: &HomSet, max_len: usize) -> Result<Self> {
        let words = free_words(x, max_len)?;
        let mut relations: Vec<SparseEchelon<F>> = Vec::with_capacity(max_len);
        for n in 1..=max_len {
            let mut r = SparseEchelon::new(words.count(n));
            for g in Self::generators(&words, n) {
                r.insert(&g);
            }
            for k in 1..n {
                let lower: Vec<Sparse<F>> = relations[n - k - 1].rows().cloned().collect();
                for u in words.words(k) {
                    for row in &lower {
                        let (mut left, mut right) = (Sparse::new(), Sparse::new());
                        for (&j, c) in row {
                            let w = &words.words(n - k)[j];
                            add_term(
                                &mut left,
                                words.index_of(&Word::graft(u.clone(), w.clone())).expect("length n"),
                                c.clone(),
                            );
                            add_term(
                                &mut right,
                                words.index_of(&Word::graft(w.clone(), u.clone())).expect("length n"),
                                c.clone(),
                            );
                        }
                        r.insert(&left);
                        r.insert(&right);
                    }
                }
            }
            relations.push(r);
        }
        Ok(FreeHomLie { words, relations })
    }

    /// Instances of `ab + ba` and `α(a)(bc) + α(c)(ab) + α(b)(ca)` of total length `n`.
    fn generators(words: &FreeWords, n: usize) -> Vec<Sparse<F>> {
        let x = words.set();
        let idx = |w: Word| words.index_of(&w).expect("length n");
        let mut out = Vec::new();
        for p in 1..n {
            for a in words.words(p) {
                for b in words.words(n - p) {
                    let mut v = Sparse::new();
                    add_term(&mut v, idx(Word::graft(a.clone(), b.clone())), F::one());
                    add_term(&mut v, idx(Word::graft(b.clone(), a.clone())), F::one());
                    out.push(v);
                }
            }
        }
        for p in 1..n {
            for q in 1..n - p {
                let r = n - p - q;
                for a in words.words(p) {
                    for b in words.words(q) {
                        for c in words.words(r) {
                            let mut v = Sparse::new();
                            for (s, t, u) in [(a, b, c), (c, a, b), (b, c, a)] {
                                if let Some(ts) = s.twist(x) {
                                    add_term(
                                        &mut v,
                                        idx(Word::graft(ts, Word::graft(t.clone(), u.clone()))),
                                        F::one(),
                                    );
                                }
                            }
                            out.push(v);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn words(&self) -> &FreeWords {
        &self.words
    }

    pub fn max_len(&self) -> usize {
        self.words.max_len()
    }

    pub fn relation_rank(&self, n: usize) -> usize {
        self.relations[n - 1].rank()
    }

    pub fn degree_dim(&self, n: usize) -> usize {
        self.words.count(n) - self.relation_rank(n)
    }

    /// Indices in `X_n` of the coset representatives.
    pub fn representative_indices(&self, n: usize) -> Vec<usize> {
        self.relations[n - 1].non_pivots()
    }

    pub fn degree_basis(&self, n: usize) -> DegreeBasis {
        let reps = self
            .representative_indices(n)
            .into_iter()
            .map(|i| self.words.words(n)[i].clone())
            .collect();
        DegreeBasis {
            degree: n,
            word_count: self.words.count(n),
            relation_rank: self.relation_rank(n),
            representatives: reps,
        }
    }

    /// Whether a combination of length-`n` words lies in `R_n`.
    pub fn in_relations(&self, n: usize, v: &BTreeMap<usize, F>) -> bool {
        self.relations[n - 1].contains(v)
    }

    /// Spanning rows of `R_n` in word coordinates.
    pub fn relation_rows(&self, n: usize) -> impl Iterator<Item = &BTreeMap<usize, F>> {
        self.relations[n - 1].rows()
    }

    /// `(A_X / I)_{≤ bound}` with brackets of total degree above `bound` set to zero.
    pub fn truncation(&self, bound: usize) -> Result<Truncation<F>> {
        if bound == 0 || bound > self.max_len() {
            return Err(Error::Invalid(format!(
                "truncation bound {bound} outside 1..={}",
                self.max_len()
            )));
        }
        let mut basis = Vec::new();
        let mut position: Vec<HashMap<usize, usize>> = Vec::new();
        for n in 1..=bound {
            let mut at = HashMap::new();
            for i in self.representative_indices(n) {
                at.insert(i, basis.len());
                basis.push((n, i));
            }
            position.push(at);
        }
        let dim = basis.len();
        let coords = |n: usize, v: &Sparse<F>| -> Vec<F> {
            let mut out = zero_vector(dim);
            for (j, c) in self.relations[n - 1].reduce(v) {
                out[position[n - 1][&j]] = c;
            }
            out
        };
        let word = |n: usize, i: usize| &self.words.words(n)[i];
        let brackets = |a: usize, b: usize| -> Vec<F> {
            let ((p, i), (q, j)) = (basis[a], basis[b]);
            if p + q > bound {
                return zero_vector(dim);
            }
            let w = Word::graft(word(p, i).clone(), word(q, j).clone());
            coords(
                p + q,
                &Sparse::from([(self.words.index_of(&w).expect("enumerated"), F::one())]),
            )
        };
        let alpha = Matrix::from_columns(
            dim,
            &basis
                .iter()
                .map(|&(n, i)| match self.words.twist_index(n, i) {
                    Some(j) => coords(n, &Sparse::from([(j, F::one())])),
                    None => zero_vector(dim),
                })
                .collect::<Vec<_>>(),
        )?;
        let algebra = HomLie::from_fn(dim, alpha, brackets)?;
        let words = basis.iter().map(|&(n, i)| word(n, i).clone()).collect();
        let degrees = basis.iter().map(|&(n, _)| n).collect();
        Ok(Truncation {
            algebra,
            words,
            degrees,
            bound,
        })
    }
}

/// `free_homlie_degree_basis` as a single call.
pub fn free_homlie_degree_basis<F: Field>(x: &HomSet, n: usize) -> Result<DegreeBasis> {
    Ok(FreeHomLie::<F>::new(x, n)?.degree_basis(n))
}

/// A finite-dimensional truncation of the free Hom-Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation<F> {
    pub algebra: HomLie<F>,
    /// Representative word of each basis vector.
    pub words: Vec<Word>,
    pub degrees: Vec<usize>,
    pub bound: usize,
}

impl<F: Field> Truncation<F> {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Basis index of the generator `x`, if it survives in degree one.
    pub fn generator_index(&self, x: usize) -> Option<usize> {
        self.words.iter().position(|w| *w == Word::Leaf(x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeExtension<F> {
    /// `dim B × dim F_{≤ bound}`, the images of the basis words.
    pub map: Matrix<F>,
    /// Every spanning relation of `R_n`, `n ≤ bound`, evaluates to zero in `B`.
    pub relations_vanish: bool,
    /// `Φ[u, v] = [Φu, Φv]` for basis words with `|u| + |v| ≤ bound`.
    pub preserves_brackets: bool,
    pub intertwines_alpha: bool,
    /// `Φ` is a Hom-Lie morphism of the truncation (brackets above the bound included).
    pub is_morphism: bool,
}

/// The morphism `F_{≤ bound} → B` extending a Hom-set map `f: X → B`.
pub fn free_univ_extend<F: Field>(
    free: &FreeHomLie<F>,
    target: &HomLie<F>,
    f: &[Vec<F>],
    bound: usize,
) -> Result<FreeExtension<F>> {
    let trunc = free.truncation(bound)?;
    let words = free_words(free.words().set(), bound)?;
    let values = magma_univ_extend(&words, target, f)?;
    let d = target.dim();
    let combine = |n: usize, v: &BTreeMap<usize, F>| {
        let mut acc = zero_vector(d);
        for (&i, c) in v {
            axpy(&mut acc, c, values.value(n, i));
        }
        acc
    };
    let relations_vanish = (1..=bound).all(|n| free.relation_rows(n).all(|r| is_zero_vector(&combine(n, r))));
    let cols: Vec<Vec<F>> = trunc
        .words
        .iter()
        .map(|w| values.value(w.len(), words.index_of(w).expect("enumerated")).clone())
        .collect();
    let map = Matrix::from_columns(d, &cols)?;
    let n = trunc.dim();
    let mut preserves_brackets = true;
    for a in 0..n {
        for b in 0..n {
            if trunc.degrees[a] + trunc.degrees[b] > bound {
                continue;
            }
            let lhs = map.apply(trunc.algebra.basis_bracket(a, b));
            if lhs != target.bracket(&cols[a], &cols[b]) {
                preserves_brackets = false;
            }
        }
    }
    let intertwines_alpha = target.alpha().mul(&map) == map.mul(trunc.algebra.alpha());
    let is_morphism = morphism_report(&map, &trunc.algebra, target)?.holds();
    Ok(FreeExtension {
        map,
        relations_vanish,
        preserves_brackets,
        intertwines_alpha,
        is_morphism,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2Probe<F> {
    /// The extension `M ⊕_w F_{≤ bound}` in normal form.
    pub extension: HomLie<F>,
    /// The morphism `F_{≤ bound} → M ⊕_w F_{≤ bound}` extending `x ↦ (0, x)`.
    pub splitting: Matrix<F>,
    pub is_section: bool,
    pub is_morphism: bool,
}

impl<F> H2Probe<F> {
    pub fn splits(&self) -> bool {
        self.is_section && self.is_morphism
    }
}

/// Builds the α-extension of the truncation by `module` presented by the 2-cocycle `w`,
/// lifts the generators by the normal-form section and extends through the universal
/// property. The extension splits when the extended map is a morphism.
pub fn free_h2_probe<F: Field>(trunc: &Truncation<F>, module: &HomAction<F>, w: &Cochain<F>) -> Result<H2Probe<F>> {
    if module.algebra() != &trunc.algebra {
        return Err(Error::InvalidAction("module is not over the truncation".into()));
    }
    let ext = extension_from_cocycle(module, w)?;
    let (m, n) = (module.dim_m(), trunc.dim());
    let e = m + n;
    let lift = |basis: usize| ext.section.apply(&unit_vector(n, basis));
    let mut cols: Vec<Vec<F>> = Vec::with_capacity(n);
    for word in &trunc.words {
        cols.push(evaluate(word, &ext.algebra, &|x| match trunc.generator_index(x) {
            Some(i) => lift(i),
            None => zero_vector(e),
        }));
    }
    let splitting = Matrix::from_columns(e, &cols)?;
    let is_section = ext.projection.mul(&splitting).is_identity();
    let is_morphism = morphism_report(&splitting, &trunc.algebra, &ext.algebra)?.holds();
    Ok(H2Probe {
        extension: ext.algebra,
        splitting,
        is_section,
        is_morphism,
    })
}

fn evaluate<F: Field>(w: &Word, target: &HomLie<F>, leaf: &dyn Fn(usize) -> Vec<F>) -> Vec<F> {
    match w {
        Word::Leaf(x) => leaf(*x),
        Word::Node(a, b) => target.bracket(&evaluate(a, target, leaf), &evaluate(b, target, leaf)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn set(k: usize) -> HomSet {
        HomSet::identity((0..k).map(|i| format!("x{i}")).collect()).unwrap()
    }

    #[test]
    fn catalan_numbers() {
        assert_eq!((0..7).map(catalan).collect::<Vec<_>>(), vec![1, 1, 2, 5, 14, 42, 132]);
    }

    #[test]
    fn one_letter_length_three() {
        let x = set(1);
        let w = free_words(&x, 3).unwrap();
        let shown: Vec<String> = w.words(3).iter().map(|w| w.display(&x).to_string()).collect();
        assert_eq!(shown, vec!["(x0 (x0 x0))", "((x0 x0) x0)"]);
    }

    #[test]
    fn two_letters_length_two() {
        assert_eq!(free_words(&set(2), 2).unwrap().count(2), 4);
    }

    #[test]
    fn zero_length_is_rejected() {
        assert!(free_words(&set(1), 0).is_err());
    }

    #[test]
    fn twist_commutes_with_grafting() {
        let x = HomSet::new(vec!["a".into(), "b".into()], vec![Some(1), Some(0)]).unwrap();
        let w = free_words(&x, 4).unwrap();
        for n in 2..=4 {
            for word in w.words(n) {
                if let Word::Node(a, b) = word {
                    assert_eq!(
                        word.twist(&x),
                        Some(Word::graft(a.twist(&x).unwrap(), b.twist(&x).unwrap()))
                    );
                }
            }
        }
    }

    #[test]
    fn magma_identity_extension() {
        let x = set(2);
        let w = free_words(&x, 3).unwrap();
        let gens: Vec<Option<Word>> = (0..2).map(|i| Some(Word::Leaf(i))).collect();
        let ext = magma_univ_extend(&w, &w, &gens).unwrap();
        assert!(ext.intertwines);
        for n in 1..=3 {
            for (i, word) in w.words(n).iter().enumerate() {
                assert_eq!(ext.value(n, i), &Some(word.clone()));
            }
        }
    }

    #[test]
    fn zero_product_kills_long_words() {
        let x = set(2);
        let w = free_words(&x, 3).unwrap();
        let b = HomLie::<Rational>::abelian(2, Matrix::identity(2)).unwrap();
        let gens = vec![unit_vector(2, 0), unit_vector(2, 1)];
        let ext = magma_univ_extend(&w, &b, &gens).unwrap();
        assert!(ext.values[1..].iter().flatten().all(|v| is_zero_vector(v)));
    }

    #[test]
    fn non_intertwining_generator_map_is_rejected() {
        let x = HomSet::new(vec!["a".into()], vec![None]).unwrap();
        let w = free_words(&x, 2).unwrap();
        let b = HomLie::<Rational>::abelian(1, Matrix::identity(1)).unwrap();
        assert!(matches!(
            magma_univ_extend(&w, &b, &[unit_vector(1, 0)]),
            Err(Error::NotHomSetMorphism(_))
        ));
    }

    #[test]
    fn skew_kills_the_square() {
        let d = free_homlie_degree_basis::<Rational>(&set(1), 2).unwrap();
        assert_eq!(d.dim(), 0);
    }

    #[test]
    fn one_letter_with_zero_twist() {
        let x = HomSet::new(vec!["a".into()], vec![None]).unwrap();
        let free = FreeHomLie::<Rational>::new(&x, 3).unwrap();
        assert_eq!((free.degree_dim(1), free.degree_dim(2), free.degree_dim(3)), (1, 0, 0));
    }

    #[test]
    fn truncation_is_a_hom_lie_algebra() {
        let x = HomSet::new(vec!["a".into(), "b".into()], vec![Some(1), Some(0)]).unwrap();
        let free = FreeHomLie::<Rational>::new(&x, 3).unwrap();
        let t = free.truncation(3).unwrap();
        assert_eq!(t.dim(), 2 + 1 + 2);
        assert!(t.algebra.is_valid());
    }
}
