//! The Coxeter complex at an object, built twice: as the nerve of the
//! maximal proper parabolic cosets, and as the face poset of the
//! arrangement of hyperplanes orthogonal to the positive roots.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::groupoid::{Morphism, WeylGroupoid};
use crate::index_set::IndexSet;
use crate::linalg::{rank_of, IntVector};
use crate::roots::Root;
use crate::simplicial::{ridge_graph_connected, shelling_check, SimplicialComplex};

/// A left coset `uW_J` of morphisms into a fixed object, stored by its
/// minimal-length representative `u ∈ W^J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParabolicCoset {
    pub representative: Morphism,
    pub subset: IndexSet,
}

impl ParabolicCoset {
    pub fn target(&self) -> usize {
        self.representative.target()
    }

    /// All elements `uv` with `v ∈ W_J`.
    pub fn elements(&self, g: &WeylGroupoid) -> Vec<Morphism> {
        g.enumerate_parabolic(self.representative.source(), self.subset)
            .elements()
            .iter()
            .map(|v| g.compose(&self.representative, v).expect("v ends at the source of u"))
            .collect()
    }

    pub fn contains(&self, g: &WeylGroupoid, w: &Morphism) -> bool {
        w.target() == self.target() && canonical_coset(g, w, self.subset) == *self
    }

    /// `self ⊇ other` as sets of morphisms.
    pub fn contains_coset(&self, g: &WeylGroupoid, other: &ParabolicCoset) -> bool {
        other.subset.is_subset(self.subset) && self.contains(g, &other.representative)
    }
}

/// `wW_J` in canonical form.
pub fn canonical_coset(g: &WeylGroupoid, w: &Morphism, subset: IndexSet) -> ParabolicCoset {
    let (u, _) = g.parabolic_decompose(w, subset);
    ParabolicCoset { representative: u, subset }
}

/// `uW_J ∩ vW_K`, found by enumerating the first coset. A nonempty
/// intersection is asserted to be a single coset of `W_{J∩K}`.
pub fn coset_intersection(g: &WeylGroupoid, c1: &ParabolicCoset, c2: &ParabolicCoset) -> Option<ParabolicCoset> {
    if c1.target() != c2.target() {
        return None;
    }
    let common: Vec<Morphism> = c1.elements(g).into_iter().filter(|w| c2.contains(g, w)).collect();
    let first = common.first()?;
    let meet = canonical_coset(g, first, c1.subset.intersection(c2.subset));
    assert!(
        common.iter().all(|w| canonical_coset(g, w, meet.subset) == meet),
        "coset intersection splits into several cosets"
    );
    assert_eq!(
        common.len(),
        g.enumerate_parabolic(meet.representative.source(), meet.subset).len(),
        "coset intersection is not a full coset"
    );
    Some(meet)
}

/// Every coset `wW_J` with target `a`, for all `J ⊆ I`, sorted by `J`
/// and then by the position of the representative in `Hom(→a)`.
pub fn all_cosets(g: &WeylGroupoid, a: usize) -> Vec<ParabolicCoset> {
    let hom = g.enumerate_hom_to(a);
    let mut out = Vec::new();
    for subset in IndexSet::all_subsets(g.rank()) {
        let mut seen = HashSet::new();
        let mut reps: Vec<usize> = Vec::new();
        for w in hom.elements() {
            let c = canonical_coset(g, w, subset);
            if seen.insert(c.representative.clone()) {
                reps.push(hom.index_of(&c.representative).expect("representative lies in Hom(->a)"));
            }
        }
        reps.sort_unstable();
        out.extend(reps.into_iter().map(|k| ParabolicCoset { representative: hom.get(k).clone(), subset }));
    }
    out
}

/// The coset complex at one object.
#[derive(Clone, Debug)]
pub struct CoxeterComplexData {
    pub object: usize,
    /// Cosets `wW_J` with `|J| = |I| − 1`.
    pub vertices: Vec<ParabolicCoset>,
    pub complex: SimplicialComplex,
    /// Facet of each morphism, in the order of `Hom(→a)`.
    pub facets: Vec<Vec<usize>>,
    /// Each face (sorted vertex list) with the coset equal to the
    /// intersection of its vertices. The empty face realizes `W_I`.
    pub face_cosets: BTreeMap<Vec<usize>, ParabolicCoset>,
}

impl CoxeterComplexData {
    pub fn dimension(&self) -> Option<usize> {
        self.complex.dimension()
    }

    /// The facet order `Hom(→a)` is stored in: by length, then lexicographic
    /// in canonical words, hence a linear extension of the weak order.
    pub fn length_lex_shelling(&self) -> Result<(), crate::simplicial::ShellingViolation> {
        shelling_check(&self.facets)
    }

    pub fn facets_connected(&self) -> bool {
        ridge_graph_connected(&self.facets)
    }
}

pub fn coxeter_complex(g: &WeylGroupoid, a: usize) -> CoxeterComplexData {
    let hom = g.enumerate_hom_to(a);
    let full = g.full_index_set();
    let maximal: Vec<IndexSet> = full.iter().map(|i| full.without(i)).collect();
    let vertices: Vec<ParabolicCoset> = all_cosets(g, a)
        .into_iter()
        .filter(|c| c.subset.len() + 1 == g.rank())
        .collect();
    let vertex_index: HashMap<&ParabolicCoset, usize> = vertices.iter().enumerate().map(|(k, c)| (c, k)).collect();
    let facets: Vec<Vec<usize>> = hom
        .elements()
        .iter()
        .map(|w| {
            let mut f: Vec<usize> = maximal.iter().map(|&j| vertex_index[&canonical_coset(g, w, j)]).collect();
            f.sort_unstable();
            f
        })
        .collect();
    let complex = SimplicialComplex::from_facets(vertices.len(), &facets);

    let mut face_cosets: BTreeMap<Vec<usize>, ParabolicCoset> = BTreeMap::new();
    face_cosets.insert(Vec::new(), ParabolicCoset { representative: g.identity(a), subset: full });
    for (w, facet) in hom.elements().iter().zip(&facets) {
        for mask in 1u64..(1u64 << facet.len()) {
            let face: Vec<usize> = (0..facet.len()).filter(|b| mask & (1 << b) != 0).map(|b| facet[b]).collect();
            let subset = face
                .iter()
                .fold(full, |acc, &v| acc.intersection(vertices[v].subset));
            let tag = canonical_coset(g, w, subset);
            match face_cosets.get(&face) {
                Some(existing) => assert_eq!(*existing, tag, "face realized by two different cosets"),
                None => {
                    let folded = face[1..]
                        .iter()
                        .try_fold(vertices[face[0]].clone(), |acc, &v| coset_intersection(g, &acc, &vertices[v]))
                        .expect("vertices of a facet share a morphism");
                    assert_eq!(folded, tag, "intersection of vertex cosets differs from the face coset");
                    face_cosets.insert(face, tag);
                }
            }
        }
    }
    CoxeterComplexData { object: a, vertices, complex, facets, face_cosets }
}

/// The face `F^u_J` of the arrangement at an object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricFace {
    pub coset: ParabolicCoset,
    /// `Σ_{i∉J} μ_i` with `(μ_i, u(α_k)) = δ_ik`.
    pub witness: IntVector,
    /// Sign of `(witness, β)` for the positive roots `β` in sorted order.
    pub signs: Vec<i8>,
}

impl GeometricFace {
    /// Positions of the positive roots orthogonal to the witness.
    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.signs.len()).filter(|&k| self.signs[k] == 0).collect()
    }

    /// Whether this face lies in the closure of `other`: the sign vectors
    /// are conformal with this one's zeros containing the other's.
    pub fn in_closure_of(&self, other: &GeometricFace) -> bool {
        self.signs.iter().zip(&other.signs).all(|(&s, &t)| s == 0 || s == t)
    }
}

fn witness(g: &WeylGroupoid, coset: &ParabolicCoset) -> IntVector {
    let u = &coset.representative;
    let inverse = u
        .action()
        .inverse_unimodular()
        .expect("actions of morphisms are unimodular");
    let mut lambda = vec![0i64; g.rank()];
    for i in (0..g.rank()).filter(|&i| !coset.subset.contains(i)) {
        for (k, x) in lambda.iter_mut().enumerate() {
            *x += inverse.get(i, k);
        }
    }
    lambda
}

fn sign_vector(lambda: &[i64], roots: &[Root]) -> Vec<i8> {
    roots
        .iter()
        .map(|beta| {
            let d: i64 = lambda.iter().zip(beta).map(|(x, y)| x * y).sum();
            d.signum() as i8
        })
        .collect()
}

/// One face per coset, in the order of [`all_cosets`].
pub fn geometric_faces(g: &WeylGroupoid, a: usize) -> Vec<GeometricFace> {
    let positive = g.roots().positive(a);
    all_cosets(g, a)
        .into_iter()
        .map(|coset| {
            let witness = witness(g, &coset);
            let signs = sign_vector(&witness, positive);
            GeometricFace { coset, witness, signs }
        })
        .collect()
}

/// Outcome of matching the coset complex against the geometric faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsomorphismVerdict {
    Isomorphic,
    /// Some coset has no geometric face, or vice versa.
    NotBijective { detail: String },
    /// Two geometric faces share a sign vector.
    DuplicateSigns { first: usize, second: usize },
    /// A witness violates the defining equalities/inequalities of its face.
    BadWitness { face: usize },
    /// Closure inclusion and coset containment disagree on a pair of
    /// geometric faces (positions in the face list).
    InclusionMismatch { smaller: usize, larger: usize, geometric: bool, combinatorial: bool },
}

impl IsomorphismVerdict {
    pub fn holds(&self) -> bool {
        *self == IsomorphismVerdict::Isomorphic
    }
}

/// Checks that faces of the coset complex (with the empty face for `W_I`)
/// correspond bijectively to the geometric faces, and that `F ⊆ closure(G)`
/// holds exactly when the coset of `F` contains the coset of `G`, exactly
/// when the simplex of `F` is a face of the simplex of `G`.
pub fn verify_isomorphism(
    g: &WeylGroupoid,
    complex: &CoxeterComplexData,
    faces: &[GeometricFace],
) -> IsomorphismVerdict {
    let simplex_of: HashMap<&ParabolicCoset, &Vec<usize>> =
        complex.face_cosets.iter().map(|(f, c)| (c, f)).collect();
    if simplex_of.len() != complex.face_cosets.len() {
        return IsomorphismVerdict::NotBijective { detail: "two simplices realize the same coset".into() };
    }
    if faces.len() != simplex_of.len() {
        return IsomorphismVerdict::NotBijective {
            detail: format!("{} simplices but {} geometric faces", simplex_of.len(), faces.len()),
        };
    }
    for (k, face) in faces.iter().enumerate() {
        if !simplex_of.contains_key(&face.coset) {
            return IsomorphismVerdict::NotBijective {
                detail: format!("geometric face {k} has no simplex"),
            };
        }
        let u = &face.coset.representative;
        let ok = (0..g.rank()).all(|j| {
            let d: i64 = face.witness.iter().zip(u.image_of_simple(j)).map(|(x, y)| x * y).sum();
            if face.coset.subset.contains(j) {
                d == 0
            } else {
                d > 0
            }
        });
        if !ok {
            return IsomorphismVerdict::BadWitness { face: k };
        }
    }
    let mut by_signs: HashMap<&Vec<i8>, usize> = HashMap::new();
    for (k, face) in faces.iter().enumerate() {
        if let Some(&first) = by_signs.get(&face.signs) {
            return IsomorphismVerdict::DuplicateSigns { first, second: k };
        }
        by_signs.insert(&face.signs, k);
    }
    for (s, small) in faces.iter().enumerate() {
        let small_simplex = simplex_of[&small.coset];
        for (l, large) in faces.iter().enumerate() {
            let geometric = small.in_closure_of(large);
            let combinatorial = small.coset.contains_coset(g, &large.coset);
            let large_simplex = simplex_of[&large.coset];
            let simplicial = small_simplex.iter().all(|v| large_simplex.contains(v));
            if geometric != combinatorial || combinatorial != simplicial {
                return IsomorphismVerdict::InclusionMismatch { smaller: s, larger: l, geometric, combinatorial };
            }
        }
    }
    IsomorphismVerdict::Isomorphic
}

/// Faces whose closure contains no other faces than `{uW_L : L ⊇ J}` of
/// the given face `uW_J`: returns the positions where the closure computed
/// from sign vectors differs from that family.
pub fn closure_stratification_failures(g: &WeylGroupoid, faces: &[GeometricFace]) -> Vec<usize> {
    let position: HashMap<&ParabolicCoset, usize> = faces.iter().enumerate().map(|(k, f)| (&f.coset, k)).collect();
    let full = g.full_index_set();
    let mut failures = Vec::new();
    for (k, face) in faces.iter().enumerate() {
        let by_signs: HashSet<usize> = (0..faces.len()).filter(|&m| faces[m].in_closure_of(face)).collect();
        let by_cosets: Option<HashSet<usize>> = full
            .subsets()
            .filter(|l| face.coset.subset.is_subset(*l))
            .map(|l| position.get(&canonical_coset(g, &face.coset.representative, l)).copied())
            .collect();
        if by_cosets.as_ref() != Some(&by_signs) {
            failures.push(k);
        }
    }
    failures
}

/// Faces whose dimension, read as `|I| − rank` of the roots they are
/// orthogonal to, differs from `|I| − |J|`.
pub fn dimension_formula_failures(g: &WeylGroupoid, a: usize, faces: &[GeometricFace]) -> Vec<usize> {
    let positive = g.roots().positive(a);
    faces
        .iter()
        .enumerate()
        .filter(|(_, f)| {
            let normals: Vec<IntVector> = f.zero_set().into_iter().map(|k| positive[k].clone()).collect();
            rank_of(&normals) != f.coset.subset.len()
        })
        .map(|(k, _)| k)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chamber {
    /// Position in `Hom(→a)` of the morphism whose chamber this is.
    pub morphism: usize,
    pub signs: Vec<i8>,
    /// Hyperplanes (positions in the normal list) separating this chamber
    /// from an adjacent one.
    pub walls: Vec<usize>,
    /// Witnesses of the one-dimensional faces in the closure.
    pub rays: Vec<IntVector>,
    pub ray_rank: usize,
    pub simplicial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrangementReport {
    pub object: usize,
    pub normals: Vec<Root>,
    pub chambers: Vec<Chamber>,
    /// Every codimension-one face bounds exactly two chambers.
    pub walls_two_sided: bool,
    pub simplicial: bool,
}

/// The hyperplanes `β^⊥`, `β ∈ R^a_+`, with their chambers. Walls of a
/// chamber are found from adjacency (flipping one sign gives another
/// chamber) and compared with its codimension-one faces.
pub fn arrangement(g: &WeylGroupoid, a: usize, faces: &[GeometricFace]) -> ArrangementReport {
    let r = g.rank();
    let hom = g.enumerate_hom_to(a);
    let normals = g.roots().positive(a).to_vec();
    let chamber_faces: Vec<&GeometricFace> = faces.iter().filter(|f| f.coset.subset.is_empty()).collect();
    let chamber_signs: HashSet<&Vec<i8>> = chamber_faces.iter().map(|f| &f.signs).collect();
    let mut walls_two_sided = true;
    for wall in faces.iter().filter(|f| f.coset.subset.len() == 1) {
        let bounding = chamber_faces.iter().filter(|c| wall.in_closure_of(c)).count();
        walls_two_sided &= bounding == 2;
    }
    let chambers: Vec<Chamber> = chamber_faces
        .iter()
        .map(|c| {
            let walls: Vec<usize> = (0..normals.len())
                .filter(|&k| {
                    let mut flipped = c.signs.clone();
                    flipped[k] = -flipped[k];
                    chamber_signs.contains(&flipped)
                })
                .collect();
            let facet_walls: Vec<usize> = faces
                .iter()
                .filter(|f| f.coset.subset.len() == 1 && f.in_closure_of(c))
                .map(|f| f.zero_set())
                .filter(|z| z.len() == 1)
                .map(|z| z[0])
                .collect();
            let rays: Vec<IntVector> = faces
                .iter()
                .filter(|f| f.coset.subset.len() + 1 == r && f.in_closure_of(c))
                .map(|f| f.witness.clone())
                .collect();
            let ray_rank = rank_of(&rays);
            let mut sorted_facet_walls = facet_walls.clone();
            sorted_facet_walls.sort_unstable();
            let simplicial = walls.len() == r && sorted_facet_walls == walls && rays.len() == r && ray_rank == r;
            Chamber {
                morphism: hom.index_of(&c.coset.representative).expect("chamber of a morphism"),
                signs: c.signs.clone(),
                walls,
                rays,
                ray_rank,
                simplicial,
            }
        })
        .collect();
    let simplicial = chambers.iter().all(|c| c.simplicial) && walls_two_sided;
    ArrangementReport { object: a, normals, chambers, walls_two_sided, simplicial }
}
