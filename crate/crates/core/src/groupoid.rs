//! Morphisms of the Weyl groupoid: words, lengths, contents, longest
//! words, parabolic decompositions and the longest-word involutions.
//!
//! A morphism is identified by its endpoints and its integer matrix acting
//! on `Z^I`; words are only representations of it.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::cartan::CartanScheme;
use crate::index_set::IndexSet;
use crate::linalg::{IntMatrix, IntVector};
use crate::roots::{self, check_axioms, generate_roots, AxiomReport, NotFinite, RootSystemData};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error(transparent)]
    NotFinite(#[from] NotFinite),
    #[error("root system axioms fail ({} failures)", .0.failures.len())]
    Axioms(AxiomReport),
    #[error("cannot compose: source of the left factor is object #{left_source}, target of the right factor is #{right_target}")]
    ObjectMismatch { left_source: usize, right_target: usize },
    #[error("index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("object #{0} is out of range")]
    ObjectOutOfRange(usize),
    #[error("content {content} is not contained in {subset}")]
    ContentNotInSubset { content: IndexSet, subset: IndexSet },
}

/// An element of `Hom(source, target)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    source: usize,
    target: usize,
    action: IntMatrix,
    length: usize,
}

impl Morphism {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn action(&self) -> &IntMatrix {
        &self.action
    }

    /// Number of positive roots at the source sent to negative roots.
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.action.is_identity()
    }

    /// `w(α_i)`.
    pub fn image_of_simple(&self, i: usize) -> IntVector {
        self.action.column(i)
    }

    pub fn apply(&self, v: &[i64]) -> IntVector {
        self.action.apply(v)
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Morphism(#{} -> #{}, len {}, {:?})",
            self.source, self.target, self.length, self.action
        )
    }
}

/// All morphisms with a fixed target, in length-lexicographic order of
/// their canonical words.
#[derive(Clone, Debug)]
pub struct HomSet {
    target: usize,
    elements: Vec<Morphism>,
    words: Vec<Vec<usize>>,
    index: HashMap<Morphism, usize>,
}

impl HomSet {
    pub fn target(&self) -> usize {
        self.target
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Morphism] {
        &self.elements
    }

    pub fn get(&self, k: usize) -> &Morphism {
        &self.elements[k]
    }

    /// The lexicographically smallest reduced word of element `k`.
    pub fn word(&self, k: usize) -> &[usize] {
        &self.words[k]
    }

    pub fn index_of(&self, w: &Morphism) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Number of elements of each length `0..=max`.
    pub fn level_sizes(&self) -> Vec<usize> {
        let top = self.elements.iter().map(Morphism::length).max().unwrap_or(0);
        let mut sizes = vec![0; top + 1];
        for w in &self.elements {
            sizes[w.length()] += 1;
        }
        sizes
    }
}

/// A Cartan scheme together with its (finite) real roots.
#[derive(Clone, Debug)]
pub struct WeylGroupoid {
    scheme: CartanScheme,
    roots: RootSystemData,
    /// Longest element of `Hom(→a)` for each object `a`.
    longest: Vec<Morphism>,
}

impl WeylGroupoid {
    /// Generates roots with the default cap and checks (R1)–(R4).
    pub fn new(scheme: CartanScheme) -> Result<Self, GroupoidError> {
        let cap = roots::default_cap(&scheme);
        Self::with_cap(scheme, cap)
    }

    pub fn with_cap(scheme: CartanScheme, cap: u64) -> Result<Self, GroupoidError> {
        let roots = generate_roots(&scheme, cap)?;
        let report = check_axioms(&scheme, &roots);
        if !report.is_empty() {
            return Err(GroupoidError::Axioms(report));
        }
        let mut g = WeylGroupoid { scheme, roots, longest: Vec::new() };
        let full = g.scheme.full_index_set();
        g.longest = (0..g.object_count()).map(|a| g.longest_word(a, full)).collect();
        Ok(g)
    }

    pub fn scheme(&self) -> &CartanScheme {
        &self.scheme
    }

    pub fn roots(&self) -> &RootSystemData {
        &self.roots
    }

    pub fn rank(&self) -> usize {
        self.scheme.rank()
    }

    pub fn object_count(&self) -> usize {
        self.scheme.object_count()
    }

    pub fn full_index_set(&self) -> IndexSet {
        self.scheme.full_index_set()
    }

    fn make(&self, source: usize, target: usize, action: IntMatrix) -> Morphism {
        let length = self.inversion_count(source, target, &action);
        Morphism { source, target, action, length }
    }

    /// `|{α ∈ R^source_+ : action·α ∈ −R^target_+}|`.
    pub fn inversion_count(&self, source: usize, target: usize, action: &IntMatrix) -> usize {
        self.roots
            .positive(source)
            .iter()
            .filter(|r| self.roots.is_negative_root(target, &action.apply(r)))
            .count()
    }

    /// Recomputes the length of `w` from the roots.
    pub fn length(&self, w: &Morphism) -> usize {
        self.inversion_count(w.source, w.target, &w.action)
    }

    pub fn identity(&self, a: usize) -> Morphism {
        Morphism { source: a, target: a, action: IntMatrix::identity(self.rank()), length: 0 }
    }

    /// `σ_i^a ∈ Hom(a, ρ_i(a))`.
    pub fn simple_from(&self, i: usize, a: usize) -> Morphism {
        let action = self.scheme.simple_reflection_matrix(i, a);
        self.make(a, self.scheme.reflect(i, a), action)
    }

    /// `id^a σ_i ∈ Hom(ρ_i(a), a)`.
    pub fn simple_into(&self, i: usize, a: usize) -> Morphism {
        self.simple_from(i, self.scheme.reflect(i, a))
    }

    fn check_index(&self, i: usize) -> Result<(), GroupoidError> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(GroupoidError::IndexOutOfRange(i))
        }
    }

    /// `σ_{i_1} ⋯ σ_{i_k}` applied to `source` (rightmost letter first).
    pub fn from_word(&self, word: &[usize], source: usize) -> Result<Morphism, GroupoidError> {
        if source >= self.object_count() {
            return Err(GroupoidError::ObjectOutOfRange(source));
        }
        let mut action = IntMatrix::identity(self.rank());
        let mut object = source;
        for &i in word.iter().rev() {
            self.check_index(i)?;
            action = self.scheme.simple_reflection_matrix(i, object).mul(&action);
            object = self.scheme.reflect(i, object);
        }
        Ok(self.make(source, object, action))
    }

    /// `u ∘ v`, defined when `source(u) = target(v)`.
    pub fn compose(&self, u: &Morphism, v: &Morphism) -> Result<Morphism, GroupoidError> {
        if u.source != v.target {
            return Err(GroupoidError::ObjectMismatch { left_source: u.source, right_target: v.target });
        }
        Ok(self.make(v.source, u.target, u.action.mul(&v.action)))
    }

    pub fn inverse(&self, w: &Morphism) -> Morphism {
        let action = w
            .action
            .inverse_unimodular()
            .expect("morphism actions are products of reflections");
        Morphism { source: w.target, target: w.source, action, length: w.length }
    }

    /// `w σ_i`, where `σ_i` ends at the source of `w`.
    pub fn times_simple(&self, w: &Morphism, i: usize) -> Morphism {
        let s = self.simple_into(i, w.source);
        self.compose(w, &s).expect("endpoints match by construction")
    }

    /// `σ_i w`, where `σ_i` starts at the target of `w`.
    pub fn simple_times(&self, i: usize, w: &Morphism) -> Morphism {
        let s = self.simple_from(i, w.target);
        self.compose(&s, w).expect("endpoints match by construction")
    }

    /// Indices `i` with `w(α_i)` negative, i.e. `ℓ(wσ_i) < ℓ(w)`.
    pub fn right_descents(&self, w: &Morphism) -> IndexSet {
        (0..self.rank())
            .filter(|&i| roots::is_negative(&w.image_of_simple(i)))
            .collect()
    }

    /// Indices `i` with `ℓ(σ_i w) < ℓ(w)`.
    pub fn left_descents(&self, w: &Morphism) -> IndexSet {
        self.right_descents(&self.inverse(w))
    }

    /// The lexicographically smallest reduced word of `w`.
    pub fn reduced_word(&self, w: &Morphism) -> Vec<usize> {
        let mut word = Vec::with_capacity(w.length);
        let mut rest = w.clone();
        while let Some(i) = self.left_descents(&rest).iter().next() {
            word.push(i);
            rest = self.simple_times(i, &rest);
        }
        debug_assert!(rest.is_identity());
        word
    }

    /// Every reduced word of `w`.
    pub fn reduced_words(&self, w: &Morphism) -> BTreeSet<Vec<usize>> {
        fn walk(g: &WeylGroupoid, w: &Morphism, suffix: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
            if w.length == 0 {
                out.insert(suffix.iter().rev().copied().collect());
                return;
            }
            for i in g.right_descents(w).iter() {
                suffix.push(i);
                walk(g, &g.times_simple(w, i), suffix, out);
                suffix.pop();
            }
        }
        let mut out = BTreeSet::new();
        walk(self, w, &mut Vec::new(), &mut out);
        out
    }

    /// `J(w)`: the letters of any reduced word.
    pub fn content(&self, w: &Morphism) -> IndexSet {
        self.reduced_word(w).into_iter().collect()
    }

    /// Breadth-first enumeration of `Hom(→a)` by right multiplication with
    /// simple reflections. Levels are expanded in lexicographic order so
    /// each element's recorded word is its smallest reduced word.
    pub fn enumerate_hom_to(&self, a: usize) -> HomSet {
        self.enumerate_parabolic(a, self.full_index_set())
    }

    /// `Hom_{W_J}(→a)`: morphisms into `a` generated by `σ_j`, `j ∈ J`.
    pub fn enumerate_parabolic(&self, a: usize, subset: IndexSet) -> HomSet {
        let id = self.identity(a);
        let mut elements = vec![id.clone()];
        let mut words = vec![Vec::new()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut level: Vec<usize> = vec![0];
        let mut depth = 0;
        while !level.is_empty() {
            depth += 1;
            let mut next: Vec<(Vec<usize>, Morphism)> = Vec::new();
            for &k in &level {
                for i in subset.iter() {
                    let x = self.times_simple(&elements[k], i);
                    if index.contains_key(&x) || next.iter().any(|(_, y)| *y == x) {
                        continue;
                    }
                    let mut word = words[k].clone();
                    word.push(i);
                    next.push((word, x));
                }
            }
            next.sort_by(|p, q| p.0.cmp(&q.0));
            level.clear();
            for (word, x) in next {
                assert_eq!(
                    x.length, depth,
                    "breadth-first depth disagrees with root inversion count"
                );
                index.insert(x.clone(), elements.len());
                level.push(elements.len());
                elements.push(x);
                words.push(word);
            }
        }
        if subset == self.full_index_set() {
            let top = elements.iter().map(Morphism::length).max().unwrap_or(0);
            assert_eq!(top, self.roots.positive(a).len(), "longest element length differs from |R^a_+|");
        }
        HomSet { target: a, elements, words, index }
    }

    /// `ℓ_J(w)`: shortest word over letters in `J` only.
    pub fn length_in(&self, w: &Morphism, subset: IndexSet) -> Result<usize, GroupoidError> {
        let content = self.content(w);
        if !content.is_subset(subset) {
            return Err(GroupoidError::ContentNotInSubset { content, subset });
        }
        let hom = self.enumerate_parabolic(w.target, subset);
        let k = hom.index_of(w).expect("w lies in the parabolic subgroupoid");
        let by_word = hom.word(k).len();
        assert_eq!(by_word, w.length, "parabolic length differs from length");
        Ok(by_word)
    }

    /// The longest word `w_J` of `Hom_{W_J}(→a)`, by greedy ascent.
    pub fn longest_word(&self, a: usize, subset: IndexSet) -> Morphism {
        let mut w = self.identity(a);
        while let Some(j) = subset.iter().find(|&j| roots::is_positive(&w.image_of_simple(j))) {
            w = self.times_simple(&w, j);
        }
        w
    }

    /// `w_I` of `Hom(→a)`, precomputed.
    pub fn longest(&self, a: usize) -> &Morphism {
        &self.longest[a]
    }

    /// `(u, v)` with `w = uv`, `u ∈ W^J` minimal in its coset, `v ∈ W_J`.
    pub fn parabolic_decompose(&self, w: &Morphism, subset: IndexSet) -> (Morphism, Morphism) {
        let mut u = w.clone();
        while let Some(j) = subset.iter().find(|&j| roots::is_negative(&u.image_of_simple(j))) {
            u = self.times_simple(&u, j);
        }
        let v = self.compose(&self.inverse(&u), w).expect("u and w share a target");
        (u, v)
    }

    /// `τ(a)`: the source of `w_I ∈ Hom(→a)`.
    pub fn tau(&self, a: usize) -> usize {
        self.longest[a].source
    }

    /// `τ_I^a` with `w_I(α_j) = −α_{τ_I^a(j)}` for `w_I` taken with source
    /// `a` (the inverse of the longest element of `Hom(→a)`).
    pub fn tau_permutation(&self, a: usize) -> Vec<usize> {
        let w = self.inverse(&self.longest[a]);
        (0..self.rank())
            .map(|j| {
                let col = w.image_of_simple(j);
                let k = col
                    .iter()
                    .position(|&x| x != 0)
                    .expect("image of a simple root is nonzero");
                debug_assert_eq!(col[k], -1);
                k
            })
            .collect()
    }

    /// `t^a(w) = w_I w w_I ∈ Hom(→τ(a))` for `w ∈ Hom(→a)`.
    pub fn t_map(&self, w: &Morphism) -> Morphism {
        let left = self.inverse(&self.longest[w.target]);
        let right = &self.longest[w.source];
        let lw = self.compose(&left, w).expect("left factor starts at target(w)");
        self.compose(&lw, right).expect("right factor ends at source(w)")
    }

    /// Figure-style label: canonical word then `^source`, e.g. `12^c`.
    pub fn label(&self, w: &Morphism) -> String {
        let word = self.reduced_word(w);
        let source = self.scheme.object_name(w.source);
        if word.is_empty() {
            return format!("id^{source}");
        }
        let labels: Vec<usize> = word.iter().map(|&i| self.scheme.label(i)).collect();
        let body = if labels.iter().all(|&l| l < 10) {
            labels.iter().map(|l| l.to_string()).collect::<String>()
        } else {
            labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
        };
        format!("{body}^{source}")
    }
}
