//! The weak order on `Hom(→a)`: `u ≤ uv` iff `ℓ(u) + ℓ(v) = ℓ(uv)`.
//!
//! [`WeakOrderPoset`] holds one target's poset with its order relation
//! and brute-force lattice operations. [`WeakOrders`] bundles the posets of
//! all objects and provides the constructive operations, which may pass
//! through other objects (meet recursion, interval translation).

use serde::Serialize;
use thiserror::Error;

use crate::groupoid::{HomSet, Morphism, WeylGroupoid};
use crate::index_set::IndexSet;
use crate::poincare::PoincarePolynomial;
use crate::simplicial::{alternating_sum, SimplicialComplex};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("interval of length {0} is too short to classify (need at least 2)")]
    Degenerate(usize),
    #[error("no unique extremal bound for elements {0} and {1}")]
    NotUnique(usize, usize),
    #[error("cover reachability disagrees with length additivity at ({0}, {1})")]
    CoverMismatch(usize, usize),
    #[error("translation of interval [{0}, {1}] is not an isomorphism")]
    TranslationMismatch(usize, usize),
    #[error("morphism is not an element of Hom(->{0})")]
    NotInPoset(usize),
}

/// `Hom(→a)` with the weak order.
#[derive(Clone, Debug)]
pub struct WeakOrderPoset {
    hom: HomSet,
    covers: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
}

impl WeakOrderPoset {
    /// Builds the poset and cross-checks that reachability along covers
    /// `u ⋖ uσ_i` agrees with length additivity for every pair.
    pub fn build(g: &WeylGroupoid, a: usize) -> Result<Self, OrderError> {
        let hom = g.enumerate_hom_to(a);
        let n = hom.len();
        let mut covers = vec![Vec::new(); n];
        for (k, u) in hom.elements().iter().enumerate() {
            for i in 0..g.rank() {
                let x = g.times_simple(u, i);
                if x.length() == u.length() + 1 {
                    covers[k].push(hom.index_of(&x).expect("hom set is complete"));
                }
            }
            covers[k].sort_unstable();
            covers[k].dedup();
        }
        let inverses: Vec<Morphism> = hom.elements().iter().map(|u| g.inverse(u)).collect();
        let mut leq = vec![vec![false; n]; n];
        for (ku, u) in hom.elements().iter().enumerate() {
            for (kv, v) in hom.elements().iter().enumerate() {
                if u.length() > v.length() {
                    continue;
                }
                let quotient = g.compose(&inverses[ku], v).expect("common target");
                leq[ku][kv] = u.length() + quotient.length() == v.length();
            }
        }
        // Elements are sorted by length, so a reverse sweep sees all covers
        // of an element before the element itself.
        let mut reach: Vec<Vec<bool>> = vec![vec![false; n]; n];
        for k in (0..n).rev() {
            reach[k][k] = true;
            for &c in &covers[k] {
                let (lo, hi) = reach.split_at_mut(c);
                let above = &hi[0];
                for (r, &x) in lo[k].iter_mut().zip(above.iter()) {
                    *r |= x;
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                if reach[u][v] != leq[u][v] {
                    return Err(OrderError::CoverMismatch(u, v));
                }
            }
        }
        Ok(WeakOrderPoset { hom, covers, leq })
    }

    pub fn target(&self) -> usize {
        self.hom.target()
    }

    pub fn hom(&self) -> &HomSet {
        &self.hom
    }

    pub fn len(&self) -> usize {
        self.hom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hom.is_empty()
    }

    pub fn element(&self, k: usize) -> &Morphism {
        self.hom.get(k)
    }

    pub fn index_of(&self, w: &Morphism) -> Result<usize, OrderError> {
        self.hom.index_of(w).ok_or(OrderError::NotInPoset(self.target()))
    }

    pub fn rank(&self, k: usize) -> usize {
        self.hom.get(k).length()
    }

    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.leq[u][v]
    }

    /// Upper covers of `k`.
    pub fn covers(&self, k: usize) -> &[usize] {
        &self.covers[k]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    /// Unique maximal element (the poset is graded with top `w_I`).
    pub fn top(&self) -> usize {
        self.len() - 1
    }

    /// Elements with no upper cover.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.covers[k].is_empty()).collect()
    }

    /// Elements with no lower cover.
    pub fn minimal_elements(&self) -> Vec<usize> {
        let mut has_lower = vec![false; self.len()];
        for c in &self.covers {
            for &x in c {
                has_lower[x] = true;
            }
        }
        (0..self.len()).filter(|&k| !has_lower[k]).collect()
    }

    /// Minimum and maximum number of elements over all maximal chains.
    pub fn maximal_chain_sizes(&self) -> (usize, usize) {
        let n = self.len();
        let mut shortest = vec![usize::MAX; n];
        let mut longest = vec![0usize; n];
        for k in (0..n).rev() {
            if self.covers[k].is_empty() {
                shortest[k] = 1;
                longest[k] = 1;
            } else {
                shortest[k] = 1 + self.covers[k].iter().map(|&c| shortest[c]).min().unwrap();
                longest[k] = 1 + self.covers[k].iter().map(|&c| longest[c]).max().unwrap();
            }
        }
        let starts = self.minimal_elements();
        (
            starts.iter().map(|&s| shortest[s]).min().unwrap_or(0),
            starts.iter().map(|&s| longest[s]).max().unwrap_or(0),
        )
    }

    pub fn rank_sizes(&self) -> Vec<usize> {
        self.hom.level_sizes()
    }

    pub fn poincare_polynomial(&self) -> PoincarePolynomial {
        PoincarePolynomial::new(self.rank_sizes().into_iter().map(|c| c as u64).collect())
    }

    pub fn down_set(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.leq[x][v]).collect()
    }

    pub fn up_set(&self, u: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.leq[u][x]).collect()
    }

    /// Meet by intersecting principal down-sets and taking the unique
    /// maximal element of the intersection.
    pub fn brute_force_meet(&self, u: usize, v: usize) -> Result<usize, OrderError> {
        let common: Vec<usize> = (0..self.len()).filter(|&x| self.leq[x][u] && self.leq[x][v]).collect();
        let maximal: Vec<usize> = common
            .iter()
            .copied()
            .filter(|&x| common.iter().all(|&y| y == x || !self.leq[x][y]))
            .collect();
        match maximal.as_slice() {
            [m] => Ok(*m),
            _ => Err(OrderError::NotUnique(u, v)),
        }
    }

    /// Join by intersecting principal up-sets.
    pub fn brute_force_join(&self, u: usize, v: usize) -> Result<usize, OrderError> {
        let common: Vec<usize> = (0..self.len()).filter(|&x| self.leq[u][x] && self.leq[v][x]).collect();
        let minimal: Vec<usize> = common
            .iter()
            .copied()
            .filter(|&x| common.iter().all(|&y| y == x || !self.leq[y][x]))
            .collect();
        match minimal.as_slice() {
            [m] => Ok(*m),
            _ => Err(OrderError::NotUnique(u, v)),
        }
    }

    /// `[u, v]` (closed) or `(u, v)` (open), in poset order.
    pub fn interval(&self, u: usize, v: usize, kind: IntervalKind) -> Result<Vec<usize>, OrderError> {
        if !self.leq[u][v] {
            return Err(OrderError::NotComparable(u, v));
        }
        Ok((0..self.len())
            .filter(|&x| self.leq[u][x] && self.leq[x][v])
            .filter(|&x| kind == IntervalKind::Closed || (x != u && x != v))
            .collect())
    }

    /// f-vector of the order complex of the given elements: entry `k`
    /// counts chains with `k + 1` elements. Elements must be in poset order.
    pub fn chain_counts(&self, elements: &[usize]) -> Vec<u64> {
        let n = elements.len();
        // ending[x][k]: chains with k+1 elements whose top is elements[x].
        let mut ending: Vec<Vec<u64>> = Vec::with_capacity(n);
        let mut total: Vec<u64> = Vec::new();
        for x in 0..n {
            let mut row = vec![1u64];
            for y in 0..x {
                if elements[y] != elements[x] && self.leq[elements[y]][elements[x]] {
                    for (k, &c) in ending[y].iter().enumerate() {
                        if row.len() <= k + 1 {
                            row.resize(k + 2, 0);
                        }
                        row[k + 1] += c;
                    }
                }
            }
            for (k, &c) in row.iter().enumerate() {
                if total.len() <= k {
                    total.resize(k + 1, 0);
                }
                total[k] += c;
            }
            ending.push(row);
        }
        total
    }

    /// The order complex of a subposet: vertices are positions in
    /// `elements`, faces are chains.
    pub fn order_complex(&self, elements: &[usize]) -> SimplicialComplex {
        let n = elements.len();
        let mut maximal_chains: Vec<Vec<usize>> = Vec::new();
        // Extend chains upward only; every chain sits inside a maximal one.
        fn extend(
            p: &WeakOrderPoset,
            elements: &[usize],
            chain: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let last = *chain.last().unwrap();
            let mut extended = false;
            for y in last + 1..elements.len() {
                if p.leq[elements[last]][elements[y]]
                    && !(last + 1..elements.len()).any(|z| {
                        z != y
                            && p.leq[elements[last]][elements[z]]
                            && p.leq[elements[z]][elements[y]]
                            && elements[z] != elements[y]
                    })
                {
                    extended = true;
                    chain.push(y);
                    extend(p, elements, chain, out);
                    chain.pop();
                }
            }
            if !extended {
                out.push(chain.clone());
            }
        }
        let has_lower: Vec<bool> = (0..n)
            .map(|x| (0..n).any(|y| y != x && self.leq[elements[y]][elements[x]]))
            .collect();
        for start in (0..n).filter(|&x| !has_lower[x]) {
            extend(self, elements, &mut vec![start], &mut maximal_chains);
        }
        SimplicialComplex::from_facets(n, &maximal_chains)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalKind {
    Open,
    Closed,
}

/// The three descent notions of an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descents {
    /// `I_L(w)`.
    pub indices: IndexSet,
    /// `D_L(w)`: poset indices of the length-one elements below `w`.
    pub simple: Vec<usize>,
    /// `D̄_L(w)`: `(J, index of w_J)` for every `J` with `w_J ≤ w`.
    pub extended: Vec<(IndexSet, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "dimension")]
pub enum IntervalType {
    Contractible,
    Sphere(usize),
}

#[derive(Clone, Copy, Debug)]
pub struct IntervalOptions {
    /// Homology is computed only when the order complex has at most this
    /// many chains; the Euler characteristic is always checked.
    pub homology_chain_limit: u64,
}

impl Default for IntervalOptions {
    fn default() -> Self {
        IntervalOptions { homology_chain_limit: 5000 }
    }
}

/// Classification of an open interval with its topological certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalReport {
    pub classification: IntervalType,
    /// `I_L(u^{-1}v)`.
    pub descent_set: IndexSet,
    pub f_vector: Vec<u64>,
    pub reduced_euler: i64,
    /// Reduced GF(2) Betti numbers, if under the size limit.
    pub reduced_betti: Option<Vec<usize>>,
    /// Whether χ̃ and (if computed) homology match the classification.
    pub consistent: bool,
}

/// Weak order posets for every object of a groupoid.
#[derive(Debug)]
pub struct WeakOrders<'g> {
    groupoid: &'g WeylGroupoid,
    posets: Vec<WeakOrderPoset>,
}

impl<'g> WeakOrders<'g> {
    pub fn build(groupoid: &'g WeylGroupoid) -> Result<Self, OrderError> {
        let posets = (0..groupoid.object_count())
            .map(|a| WeakOrderPoset::build(groupoid, a))
            .collect::<Result<_, _>>()?;
        Ok(WeakOrders { groupoid, posets })
    }

    pub fn groupoid(&self) -> &'g WeylGroupoid {
        self.groupoid
    }

    pub fn poset(&self, a: usize) -> &WeakOrderPoset {
        &self.posets[a]
    }

    pub fn posets(&self) -> &[WeakOrderPoset] {
        &self.posets
    }

    /// Poset index of `w` in `Hom(→target(w))`.
    pub fn index_of(&self, w: &Morphism) -> usize {
        self.posets[w.target()]
            .index_of(w)
            .expect("hom sets contain every morphism")
    }

    pub fn leq(&self, u: &Morphism, v: &Morphism) -> bool {
        u.target() == v.target() && self.posets[u.target()].leq(self.index_of(u), self.index_of(v))
    }

    /// `I_L(w)`, `D_L(w)` and `D̄_L(w)` read off the order relation.
    pub fn descents(&self, w: &Morphism) -> Descents {
        let g = self.groupoid;
        let a = w.target();
        let p = &self.posets[a];
        let kw = self.index_of(w);
        let mut indices = IndexSet::EMPTY;
        let mut simple = Vec::new();
        for i in 0..g.rank() {
            let s = p.index_of(&g.simple_into(i, a)).expect("simple element");
            if p.leq(s, kw) {
                indices.insert(i);
                simple.push(s);
            }
        }
        simple.sort_unstable();
        let extended = IndexSet::all_subsets(g.rank())
            .filter_map(|j| {
                let k = p.index_of(&g.longest_word(a, j)).expect("longest word");
                p.leq(k, kw).then_some((j, k))
            })
            .collect();
        Descents { indices, simple, extended }
    }

    /// Greatest lower bound by descent recursion: with `J = I_L(u) ∩ I_L(v)`,
    /// `u ∧ v = w_J (w_J^{-1}u ∧ w_J^{-1}v)`, and `id` when `J` is empty.
    pub fn meet(&self, u: &Morphism, v: &Morphism) -> Morphism {
        assert_eq!(u.target(), v.target(), "meet needs a common target");
        let g = self.groupoid;
        let shared = g.left_descents(u).intersection(g.left_descents(v));
        if shared.is_empty() {
            return g.identity(u.target());
        }
        let wj = g.longest_word(u.target(), shared);
        let back = g.inverse(&wj);
        let u1 = g.compose(&back, u).expect("common target");
        let v1 = g.compose(&back, v).expect("common target");
        debug_assert_eq!(u1.length() + wj.length(), u.length());
        debug_assert_eq!(v1.length() + wj.length(), v.length());
        let rest = self.meet(&u1, &v1);
        g.compose(&wj, &rest).expect("rest ends at the source of w_J")
    }

    /// `w^⊥ = w w_I`, with `w_I` the longest element into the source of `w`.
    pub fn ortho(&self, w: &Morphism) -> Morphism {
        let g = self.groupoid;
        g.compose(w, g.longest(w.source())).expect("w_I ends at source(w)")
    }

    /// Least upper bound `(u^⊥ ∧ v^⊥)^⊥`.
    pub fn join(&self, u: &Morphism, v: &Morphism) -> Morphism {
        self.ortho(&self.meet(&self.ortho(u), &self.ortho(v)))
    }

    /// Interval `[u, v]` or `(u, v)` (poset indices in `Hom(→a)`), after
    /// verifying that `x ↦ u^{-1}x` maps it isomorphically onto the
    /// corresponding interval above `id` at the source of `u`.
    pub fn interval(&self, u: &Morphism, v: &Morphism, kind: IntervalKind) -> Result<Vec<usize>, OrderError> {
        let g = self.groupoid;
        let a = u.target();
        if v.target() != a {
            return Err(OrderError::NotInPoset(a));
        }
        let p = &self.posets[a];
        let (ku, kv) = (self.index_of(u), self.index_of(v));
        let elements = p.interval(ku, kv, kind)?;
        let back = g.inverse(u);
        let base = &self.posets[u.source()];
        let translated: Vec<usize> = elements
            .iter()
            .map(|&x| base.index_of(&g.compose(&back, p.element(x)).expect("common target")))
            .collect::<Result<_, _>>()?;
        let top = base.index_of(&g.compose(&back, v).expect("common target"))?;
        let mut expected = base.interval(base.bottom(), top, kind)?;
        let mut got = translated.clone();
        expected.sort_unstable();
        got.sort_unstable();
        let order_kept = elements.iter().zip(&translated).all(|(&x1, &y1)| {
            elements
                .iter()
                .zip(&translated)
                .all(|(&x2, &y2)| p.leq(x1, x2) == base.leq(y1, y2))
        });
        if got != expected || !order_kept {
            return Err(OrderError::TranslationMismatch(ku, kv));
        }
        Ok(elements)
    }

    /// Topology of the open interval `(u, v)`: a sphere of dimension
    /// `|J| − 2` when `u^{-1}v = w_J` for `J = I_L(u^{-1}v)`, otherwise
    /// contractible. The verdict is checked against the reduced Euler
    /// characteristic and, for small intervals, GF(2) homology.
    pub fn classify_interval(
        &self,
        u: &Morphism,
        v: &Morphism,
        options: IntervalOptions,
    ) -> Result<IntervalReport, OrderError> {
        let g = self.groupoid;
        let a = u.target();
        let p = &self.posets[a];
        let (ku, kv) = (self.index_of(u), self.index_of(v));
        if !p.leq(ku, kv) {
            return Err(OrderError::NotComparable(ku, kv));
        }
        let gap = v.length() - u.length();
        if gap < 2 {
            return Err(OrderError::Degenerate(gap));
        }
        let open = self.interval(u, v, IntervalKind::Open)?;
        let quotient = g.compose(&g.inverse(u), v).expect("common target");
        let descent_set = g.left_descents(&quotient);
        let classification = if quotient == g.longest_word(quotient.target(), descent_set) {
            IntervalType::Sphere(descent_set.len() - 2)
        } else {
            IntervalType::Contractible
        };
        let f_vector = p.chain_counts(&open);
        let f_usize: Vec<usize> = f_vector.iter().map(|&c| c as usize).collect();
        let reduced_euler = alternating_sum(&f_usize) - 1;
        let chains: u64 = f_vector.iter().sum();
        let reduced_betti = (chains <= options.homology_chain_limit)
            .then(|| p.order_complex(&open).reduced_gf2_betti())
            .flatten();
        let (euler_ok, betti_ok) = match classification {
            IntervalType::Sphere(d) => (
                reduced_euler == if d % 2 == 0 { 1 } else { -1 },
                reduced_betti.as_ref().is_none_or(|b| {
                    b.iter().enumerate().all(|(k, &x)| x == usize::from(k == d))
                }),
            ),
            IntervalType::Contractible => (
                reduced_euler == 0,
                reduced_betti.as_ref().is_none_or(|b| b.iter().all(|&x| x == 0)),
            ),
        };
        Ok(IntervalReport {
            classification,
            descent_set,
            f_vector,
            reduced_euler,
            reduced_betti,
            consistent: euler_ok && betti_ok,
        })
    }
}
