//! Real roots by reflection closure, and the root system axioms.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::cartan::CartanScheme;
use crate::linalg::IntVector;

/// A root as an integer vector in `Z^I`.
pub type Root = IntVector;

/// Real roots did not stay within the coordinate cap.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("real roots exceed the cap {cap}: {root:?} at object `{object}`")]
pub struct NotFinite {
    pub object: String,
    pub root: Root,
    pub cap: u64,
}

/// Default cap on the coordinate sum of generated roots: `10 · rank · |A|`.
pub fn default_cap(scheme: &CartanScheme) -> u64 {
    10 * scheme.rank() as u64 * scheme.object_count() as u64
}

/// The sets `R^a` of real roots, one per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemData {
    rank: usize,
    all: Vec<BTreeSet<Root>>,
    positive: Vec<Vec<Root>>,
}

pub fn is_positive(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0) && v.iter().any(|&x| x > 0)
}

pub fn is_negative(v: &[i64]) -> bool {
    v.iter().all(|&x| x <= 0) && v.iter().any(|&x| x < 0)
}

fn coordinate_sum(v: &[i64]) -> u64 {
    v.iter().map(|x| x.unsigned_abs()).sum()
}

impl RootSystemData {
    /// Wraps explicit root sets (one per object). Used to feed hand-made or
    /// perturbed data to [`check_axioms`].
    pub fn from_sets(rank: usize, sets: Vec<BTreeSet<Root>>) -> Self {
        let positive = sets
            .iter()
            .map(|s| {
                let mut p: Vec<Root> = s.iter().filter(|r| is_positive(r)).cloned().collect();
                p.sort_by(|x, y| coordinate_sum(x).cmp(&coordinate_sum(y)).then_with(|| y.cmp(x)));
                p
            })
            .collect();
        RootSystemData { rank, all: sets, positive }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn object_count(&self) -> usize {
        self.all.len()
    }

    /// `R^a_+` by height, then with `α_1` before `α_2` and so on.
    pub fn positive(&self, a: usize) -> &[Root] {
        &self.positive[a]
    }

    /// All of `R^a`, sorted.
    pub fn all(&self, a: usize) -> &BTreeSet<Root> {
        &self.all[a]
    }

    pub fn contains(&self, a: usize, v: &[i64]) -> bool {
        self.all[a].contains(v)
    }

    pub fn is_positive_root(&self, a: usize, v: &[i64]) -> bool {
        is_positive(v) && self.contains(a, v)
    }

    pub fn is_negative_root(&self, a: usize, v: &[i64]) -> bool {
        is_negative(v) && self.contains(a, v)
    }

    /// `m^a_{ij} = |R^a ∩ (N_0 α_i + N_0 α_j)|`.
    pub fn m(&self, a: usize, i: usize, j: usize) -> usize {
        self.all[a]
            .iter()
            .filter(|r| {
                is_positive(r) && r.iter().enumerate().all(|(k, &x)| k == i || k == j || x == 0)
            })
            .count()
    }
}

/// Generates `R^a` for every object as the closure of the simple roots
/// under transport `β ∈ R^b ↦ σ_i^b(β) ∈ R^{ρ_i(b)}`.
///
/// Fails with [`NotFinite`] once any root's coordinate sum exceeds `cap`.
pub fn generate_roots(scheme: &CartanScheme, cap: u64) -> Result<RootSystemData, NotFinite> {
    let rank = scheme.rank();
    let objects = scheme.object_count();
    let mut sets: Vec<BTreeSet<Root>> = vec![BTreeSet::new(); objects];
    let mut worklist: Vec<(usize, Root)> = Vec::new();
    for (a, set) in sets.iter_mut().enumerate() {
        for j in 0..rank {
            let mut e = vec![0; rank];
            e[j] = 1;
            set.insert(e.clone());
            worklist.push((a, e));
        }
    }
    while let Some((b, root)) = worklist.pop() {
        for i in 0..rank {
            let target = scheme.reflect(i, b);
            let image = scheme.reflect_vector(i, b, &root);
            if coordinate_sum(&image) > cap {
                return Err(NotFinite {
                    object: scheme.object_name(target).to_string(),
                    root: image,
                    cap,
                });
            }
            if sets[target].insert(image.clone()) {
                worklist.push((target, image));
            }
        }
    }
    Ok(RootSystemData::from_sets(rank, sets))
}

/// A failed root system axiom with its witness. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AxiomFailure {
    /// (R1): a root that is neither positive nor negative, or whose
    /// negative is missing.
    R1 { object: usize, root: Root },
    /// (R2): `R^a ∩ Zα_i` differs from `{±α_i}`.
    R2 { object: usize, index: usize, root: Root },
    /// (R3): `σ_i^a(β) ∉ R^{ρ_i(a)}` or a root of `R^{ρ_i(a)}` is not hit.
    R3 { object: usize, index: usize, root: Root },
    /// (R4): `(ρ_i ρ_j)^m(a) != a` with `m = m^a_{ij}`.
    R4 { object: usize, i: usize, j: usize, m: usize, reached: usize },
}

impl AxiomFailure {
    pub fn axiom(&self) -> &'static str {
        match self {
            AxiomFailure::R1 { .. } => "R1",
            AxiomFailure::R2 { .. } => "R2",
            AxiomFailure::R3 { .. } => "R3",
            AxiomFailure::R4 { .. } => "R4",
        }
    }
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFailure::R1 { object, root } => {
                write!(f, "R1: root {root:?} at object #{object} is not sign-definite or lacks its negative")
            }
            AxiomFailure::R2 { object, index, root } => {
                write!(f, "R2: {root:?} is a multiple of alpha_{} at object #{object}", index + 1)
            }
            AxiomFailure::R3 { object, index, root } => {
                write!(f, "R3: sigma_{} at object #{object} does not match root {root:?}", index + 1)
            }
            AxiomFailure::R4 { object, i, j, m, reached } => write!(
                f,
                "R4: (rho_{}rho_{})^{m} sends object #{object} to #{reached}",
                i + 1,
                j + 1
            ),
        }
    }
}

/// Outcome of checking (R1)–(R4).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn is_empty(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn passes(&self, axiom: &str) -> bool {
        self.failures.iter().all(|f| f.axiom() != axiom)
    }
}

/// Checks the root system axioms (R1)–(R4) for the given root sets.
pub fn check_axioms(scheme: &CartanScheme, roots: &RootSystemData) -> AxiomReport {
    let rank = scheme.rank();
    let mut failures = Vec::new();
    for a in 0..scheme.object_count() {
        let set = roots.all(a);
        // (R1)
        for r in set {
            let neg: Root = r.iter().map(|x| -x).collect();
            if !(is_positive(r) || is_negative(r)) || !set.contains(&neg) {
                failures.push(AxiomFailure::R1 { object: a, root: r.clone() });
            }
        }
        // (R2)
        for i in 0..rank {
            let on_axis: Vec<&Root> = set
                .iter()
                .filter(|r| r.iter().enumerate().all(|(k, &x)| k == i || x == 0))
                .collect();
            let mut plus = vec![0; rank];
            plus[i] = 1;
            let minus: Root = plus.iter().map(|x| -x).collect();
            for r in &on_axis {
                if **r != plus && **r != minus {
                    failures.push(AxiomFailure::R2 { object: a, index: i, root: (*r).clone() });
                }
            }
            for needed in [plus, minus] {
                if !set.contains(&needed) {
                    failures.push(AxiomFailure::R2 { object: a, index: i, root: needed });
                }
            }
        }
        // (R3)
        for i in 0..rank {
            let b = scheme.reflect(i, a);
            let image: BTreeSet<Root> = set.iter().map(|r| scheme.reflect_vector(i, a, r)).collect();
            for r in image.symmetric_difference(roots.all(b)) {
                failures.push(AxiomFailure::R3 { object: a, index: i, root: r.clone() });
            }
        }
        // (R4)
        for i in 0..rank {
            for j in 0..rank {
                if i == j {
                    continue;
                }
                let m = roots.m(a, i, j);
                let mut x = a;
                for _ in 0..m {
                    x = scheme.reflect(i, scheme.reflect(j, x));
                }
                if x != a {
                    failures.push(AxiomFailure::R4 { object: a, i, j, m, reached: x });
                }
            }
        }
    }
    failures.sort();
    AxiomReport { failures }
}

/// Whether the off-diagonal nonzero pattern of a square matrix is a
/// connected graph on the indices.
pub fn is_indecomposable(matrix: &crate::linalg::IntMatrix) -> bool {
    let n = matrix.dim();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && (matrix.get(i, j) != 0 || matrix.get(j, i) != 0) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
