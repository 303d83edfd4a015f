//! Cartan schemes: validation, restriction and simple reflections.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::index_set::{IndexSet, MAX_RANK};
use crate::linalg::IntMatrix;

/// Scheme data as read from a file, before any checking.
///
/// Indices are positional: `reflections[i]` is the table of the `i`-th
/// index (label `i + 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawScheme {
    pub rank: usize,
    pub objects: Vec<String>,
    /// Per index, a list of `(object, image)` pairs.
    pub reflections: Vec<Vec<(String, String)>>,
    /// Per object name, its Cartan matrix as rows.
    pub cartan: Vec<(String, Vec<Vec<i64>>)>,
}

/// Malformed input that cannot be interpreted as scheme data at all.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("rank must be at least 1")]
    RankZero,
    #[error("rank {0} exceeds the supported maximum of {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("the object list is empty")]
    NoObjects,
    #[error("object `{0}` is listed twice")]
    DuplicateObject(String),
    #[error("expected {expected} reflection tables, found {found}")]
    ReflectionCount { expected: usize, found: usize },
    #[error("reflection {label}: unknown object `{object}`")]
    UnknownReflectionObject { label: usize, object: String },
    #[error("reflection {label}: no image given for object `{object}`")]
    ReflectionMissing { label: usize, object: String },
    #[error("reflection {label}: object `{object}` mapped twice")]
    ReflectionDuplicate { label: usize, object: String },
    #[error("cartan matrix given for unknown object `{0}`")]
    UnknownMatrixObject(String),
    #[error("no cartan matrix for object `{0}`")]
    MissingMatrix(String),
    #[error("cartan matrix for object `{0}` given twice")]
    DuplicateMatrix(String),
    #[error("cartan matrix for object `{object}` is not {rank}x{rank} (row {row} has {len} entries, {rows} rows)")]
    MatrixShape { object: String, rank: usize, rows: usize, row: usize, len: usize },
    #[error("restriction to the empty index set")]
    EmptyRestriction,
    #[error("restriction set {0} is not a subset of the index set")]
    RestrictionOutOfRange(IndexSet),
}

/// One failed Cartan-scheme condition, with witnesses.
///
/// Indices are stored 0-based and displayed 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Violation {
    /// `c_ii != 2`.
    Diagonal { object: String, index: usize, value: i64 },
    /// Positive off-diagonal entry.
    PositiveOffDiagonal { object: String, row: usize, col: usize, value: i64 },
    /// `c_jk = 0` but `c_kj != 0`.
    ZeroPattern { object: String, row: usize, col: usize },
    /// (C1): `ρ_i(ρ_i(a)) != a`.
    NotInvolution { index: usize, object: String, image: String, back: String },
    /// (C2): `c^a_ij != c^{ρ_i(a)}_ij`.
    ReflectedEntry {
        object: String,
        index: usize,
        col: usize,
        value: i64,
        reflected_object: String,
        reflected_value: i64,
    },
}

impl Violation {
    /// Short tag of the failed condition.
    pub fn axiom(&self) -> &'static str {
        match self {
            Violation::Diagonal { .. }
            | Violation::PositiveOffDiagonal { .. }
            | Violation::ZeroPattern { .. } => "GCM",
            Violation::NotInvolution { .. } => "C1",
            Violation::ReflectedEntry { .. } => "C2",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Diagonal { object, index, value } => {
                write!(f, "GCM: c^{object}_{{{0}{0}}} = {value}, expected 2", index + 1)
            }
            Violation::PositiveOffDiagonal { object, row, col, value } => write!(
                f,
                "GCM: c^{object}_{{{}{}}} = {value} is positive",
                row + 1,
                col + 1
            ),
            Violation::ZeroPattern { object, row, col } => write!(
                f,
                "GCM: c^{object}_{{{0}{1}}} = 0 but c^{object}_{{{1}{0}}} != 0",
                row + 1,
                col + 1
            ),
            Violation::NotInvolution { index, object, image, back } => write!(
                f,
                "C1: rho_{i}({object}) = {image} but rho_{i}({image}) = {back}",
                i = index + 1
            ),
            Violation::ReflectedEntry { object, index, col, value, reflected_object, reflected_value } => {
                write!(
                    f,
                    "C2: c^{object}_{{{i}{j}}} = {value} but c^{reflected_object}_{{{i}{j}}} = {reflected_value} (rho_{i}({object}) = {reflected_object})",
                    i = index + 1,
                    j = col + 1
                )
            }
        }
    }
}

/// All violated conditions of a candidate scheme, canonically sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("not a Cartan scheme ({} violations)", .0.violations.len())]
    Axioms(ValidationReport),
}

/// A validated Cartan scheme `(I, A, (ρ_i), (C^a))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanScheme {
    objects: Vec<String>,
    /// External (1-based) label of each internal index.
    labels: Vec<usize>,
    /// `reflections[i][a] = ρ_i(a)`.
    reflections: Vec<Vec<usize>>,
    matrices: Vec<IntMatrix>,
}

struct Resolved {
    objects: Vec<String>,
    reflections: Vec<Vec<usize>>,
    matrices: Vec<IntMatrix>,
}

fn resolve(raw: &RawScheme) -> Result<Resolved, StructureError> {
    if raw.rank == 0 {
        return Err(StructureError::RankZero);
    }
    if raw.rank > MAX_RANK {
        return Err(StructureError::RankTooLarge(raw.rank));
    }
    if raw.objects.is_empty() {
        return Err(StructureError::NoObjects);
    }
    let mut position = HashMap::new();
    for (k, name) in raw.objects.iter().enumerate() {
        if position.insert(name.as_str(), k).is_some() {
            return Err(StructureError::DuplicateObject(name.clone()));
        }
    }
    if raw.reflections.len() != raw.rank {
        return Err(StructureError::ReflectionCount {
            expected: raw.rank,
            found: raw.reflections.len(),
        });
    }
    let mut reflections = Vec::with_capacity(raw.rank);
    for (i, table) in raw.reflections.iter().enumerate() {
        let label = i + 1;
        let mut image = vec![None; raw.objects.len()];
        for (from, to) in table {
            let unknown = |o: &String| StructureError::UnknownReflectionObject {
                label,
                object: o.clone(),
            };
            let &f = position.get(from.as_str()).ok_or_else(|| unknown(from))?;
            let &t = position.get(to.as_str()).ok_or_else(|| unknown(to))?;
            if image[f].replace(t).is_some() {
                return Err(StructureError::ReflectionDuplicate { label, object: from.clone() });
            }
        }
        let total = image
            .iter()
            .enumerate()
            .map(|(a, t)| {
                t.ok_or_else(|| StructureError::ReflectionMissing {
                    label,
                    object: raw.objects[a].clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        reflections.push(total);
    }
    let mut matrices = vec![None; raw.objects.len()];
    for (name, rows) in &raw.cartan {
        let &a = position
            .get(name.as_str())
            .ok_or_else(|| StructureError::UnknownMatrixObject(name.clone()))?;
        let shape_error = |row: usize, len: usize| StructureError::MatrixShape {
            object: name.clone(),
            rank: raw.rank,
            rows: rows.len(),
            row,
            len,
        };
        if rows.len() != raw.rank {
            return Err(shape_error(0, rows.first().map_or(0, Vec::len)));
        }
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != raw.rank) {
            return Err(shape_error(row + 1, r.len()));
        }
        let m = IntMatrix::from_rows(rows).expect("shape checked above");
        if matrices[a].replace(m).is_some() {
            return Err(StructureError::DuplicateMatrix(name.clone()));
        }
    }
    let matrices = matrices
        .into_iter()
        .enumerate()
        .map(|(a, m)| m.ok_or_else(|| StructureError::MissingMatrix(raw.objects[a].clone())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Resolved { objects: raw.objects.clone(), reflections, matrices })
}

fn check_axioms(r: &Resolved) -> ValidationReport {
    let rank = r.reflections.len();
    let mut violations = Vec::new();
    for (a, m) in r.matrices.iter().enumerate() {
        let object = &r.objects[a];
        for j in 0..rank {
            if m.get(j, j) != 2 {
                violations.push(Violation::Diagonal { object: object.clone(), index: j, value: m.get(j, j) });
            }
            for k in 0..rank {
                if j == k {
                    continue;
                }
                if m.get(j, k) > 0 {
                    violations.push(Violation::PositiveOffDiagonal {
                        object: object.clone(),
                        row: j,
                        col: k,
                        value: m.get(j, k),
                    });
                }
                if m.get(j, k) == 0 && m.get(k, j) != 0 {
                    violations.push(Violation::ZeroPattern { object: object.clone(), row: j, col: k });
                }
            }
        }
    }
    for (i, rho) in r.reflections.iter().enumerate() {
        for a in 0..r.objects.len() {
            let b = rho[a];
            if rho[b] != a {
                violations.push(Violation::NotInvolution {
                    index: i,
                    object: r.objects[a].clone(),
                    image: r.objects[b].clone(),
                    back: r.objects[rho[b]].clone(),
                });
            }
            for j in 0..rank {
                let (here, there) = (r.matrices[a].get(i, j), r.matrices[b].get(i, j));
                if here != there {
                    violations.push(Violation::ReflectedEntry {
                        object: r.objects[a].clone(),
                        index: i,
                        col: j,
                        value: here,
                        reflected_object: r.objects[b].clone(),
                        reflected_value: there,
                    });
                }
            }
        }
    }
    violations.sort();
    violations.dedup();
    ValidationReport { violations }
}

/// Checks raw data against the Cartan scheme conditions.
///
/// Structural problems (shapes, unknown names, partial maps) are returned
/// as `Err`; every violated condition of well-formed data is collected in
/// the report.
pub fn validate_scheme(raw: &RawScheme) -> Result<ValidationReport, StructureError> {
    resolve(raw).map(|r| check_axioms(&r))
}

impl CartanScheme {
    pub fn from_raw(raw: &RawScheme) -> Result<Self, SchemeError> {
        let resolved = resolve(raw)?;
        Self::from_resolved(resolved)
    }

    /// Builds a scheme from positional data: `reflections[i][a] = ρ_i(a)`.
    pub fn new(
        objects: Vec<String>,
        reflections: Vec<Vec<usize>>,
        matrices: Vec<IntMatrix>,
    ) -> Result<Self, SchemeError> {
        let rank = reflections.len();
        if rank == 0 {
            return Err(StructureError::RankZero.into());
        }
        let raw = RawScheme {
            rank,
            objects: objects.clone(),
            reflections: reflections
                .iter()
                .map(|t| {
                    t.iter()
                        .enumerate()
                        .map(|(a, &b)| {
                            let name = |k: usize| objects.get(k).cloned().unwrap_or_else(|| format!("#{k}"));
                            (name(a), name(b))
                        })
                        .collect()
                })
                .collect(),
            cartan: objects.iter().cloned().zip(matrices.iter().map(IntMatrix::rows)).collect(),
        };
        Self::from_raw(&raw)
    }

    fn from_resolved(r: Resolved) -> Result<Self, SchemeError> {
        let report = check_axioms(&r);
        if !report.is_empty() {
            return Err(SchemeError::Axioms(report));
        }
        let rank = r.reflections.len();
        Ok(CartanScheme {
            objects: r.objects,
            labels: (1..=rank).collect(),
            reflections: r.reflections,
            matrices: r.matrices,
        })
    }

    /// Inverse of [`CartanScheme::from_raw`].
    pub fn to_raw(&self) -> RawScheme {
        RawScheme {
            rank: self.rank(),
            objects: self.objects.clone(),
            reflections: self
                .reflections
                .iter()
                .map(|t| {
                    t.iter()
                        .enumerate()
                        .map(|(a, &b)| (self.objects[a].clone(), self.objects[b].clone()))
                        .collect()
                })
                .collect(),
            cartan: self
                .objects
                .iter()
                .cloned()
                .zip(self.matrices.iter().map(IntMatrix::rows))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.reflections.len()
    }

    pub fn full_index_set(&self) -> IndexSet {
        IndexSet::full(self.rank())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    /// External label of internal index `i` (1-based unless restricted).
    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Internal index carrying the given external label.
    pub fn index_of_label(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// `ρ_i(a)`.
    pub fn reflect(&self, i: usize, a: usize) -> usize {
        self.reflections[i][a]
    }

    pub fn cartan_matrix(&self, a: usize) -> &IntMatrix {
        &self.matrices[a]
    }

    /// The matrix of `σ_i^a ∈ Hom(a, ρ_i(a))` acting on `Z^I`:
    /// column `j` is `α_j − c^a_{ij} α_i`.
    pub fn simple_reflection_matrix(&self, i: usize, a: usize) -> IntMatrix {
        let n = self.rank();
        let c = &self.matrices[a];
        let mut m = IntMatrix::identity(n);
        for j in 0..n {
            m.set(i, j, m.get(i, j) - c.get(i, j));
        }
        m
    }

    /// Applies `σ_i^a` to a vector without building the matrix.
    pub fn reflect_vector(&self, i: usize, a: usize, v: &[i64]) -> Vec<i64> {
        let c = &self.matrices[a];
        let shift: i64 = (0..v.len()).map(|j| c.get(i, j) * v[j]).sum();
        let mut out = v.to_vec();
        out[i] -= shift;
        out
    }

    /// The restriction `C|_J`: same objects, indices `J` (in increasing
    /// order), principal submatrices.
    pub fn restrict(&self, subset: IndexSet) -> Result<CartanScheme, StructureError> {
        if subset.is_empty() {
            return Err(StructureError::EmptyRestriction);
        }
        if !subset.is_subset(self.full_index_set()) {
            return Err(StructureError::RestrictionOutOfRange(subset));
        }
        let kept: Vec<usize> = subset.iter().collect();
        Ok(CartanScheme {
            objects: self.objects.clone(),
            labels: kept.iter().map(|&i| self.labels[i]).collect(),
            reflections: kept.iter().map(|&i| self.reflections[i].clone()).collect(),
            matrices: self.matrices.iter().map(|m| m.submatrix(&kept)).collect(),
        })
    }

    /// Edges `(a, i, ρ_i(a))` of the object change diagram with `a < ρ_i(a)`.
    pub fn object_change_edges(&self) -> Vec<(usize, usize, usize)> {
        let mut edges = Vec::new();
        for (i, rho) in self.reflections.iter().enumerate() {
            for (a, &b) in rho.iter().enumerate() {
                if a < b {
                    edges.push((a, i, b));
                }
            }
        }
        edges.sort();
        edges
    }

    /// Component id of each object in the object change diagram
    /// (the smallest object index in the component).
    pub fn components(&self) -> Vec<usize> {
        let n = self.object_count();
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(comp: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while comp[r] != r {
                r = comp[r];
            }
            comp[x] = r;
            r
        }
        for (a, _, b) in self.object_change_edges() {
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            comp[hi] = lo;
        }
        (0..n).map(|a| find(&mut comp, a)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn bruhat_raw() -> RawScheme {
        fixtures::bruhat().to_raw()
    }

    fn set_reflection(raw: &mut RawScheme, index: usize, from: &str, to: &str) {
        for entry in raw.reflections[index].iter_mut() {
            if entry.0 == from {
                entry.1 = to.to_string();
            }
        }
    }

    fn set_entry(raw: &mut RawScheme, object: &str, row: usize, col: usize, value: i64) {
        let m = &mut raw.cartan.iter_mut().find(|(o, _)| o == object).unwrap().1;
        m[row][col] = value;
    }

    #[test]
    fn bruhat_is_a_cartan_scheme() {
        let report = validate_scheme(&bruhat_raw()).unwrap();
        assert!(report.is_empty(), "{:?}", report);
    }

    #[test]
    fn broken_involution_is_reported_at_b() {
        let mut raw = bruhat_raw();
        set_reflection(&mut raw, 0, "b", "c");
        let report = validate_scheme(&raw).unwrap();
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::NotInvolution { index: 0, object, .. } if object == "b"
        )));
    }

    #[test]
    fn asymmetric_entry_across_rho1_violates_c2() {
        let mut raw = bruhat_raw();
        set_entry(&mut raw, "b", 0, 1, -2);
        let report = validate_scheme(&raw).unwrap();
        assert!(report.violations.contains(&Violation::ReflectedEntry {
            object: "a".into(),
            index: 0,
            col: 1,
            value: -1,
            reflected_object: "b".into(),
            reflected_value: -2,
        }));
        assert!(report.violations.iter().all(|v| v.axiom() == "C2"));
    }

    #[test]
    fn entry_outside_row_i_passes_c2() {
        // c^a_{23} lives in row 2 and ρ_2(a) = a, so (C2) cannot see it.
        let mut raw = bruhat_raw();
        set_entry(&mut raw, "a", 1, 2, -1);
        assert!(validate_scheme(&raw).unwrap().is_empty());
    }

    #[test]
    fn gcm_shape_violations() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![0, 3]]).unwrap();
        let err = CartanScheme::new(vec!["x".into()], vec![vec![0], vec![0]], vec![m]).unwrap_err();
        let SchemeError::Axioms(report) = err else { panic!("expected axiom report") };
        let tags: Vec<_> = report.violations.iter().map(Violation::axiom).collect();
        assert_eq!(tags, vec!["GCM"; 3]);
    }

    #[test]
    fn validation_is_order_independent() {
        let mut raw = bruhat_raw();
        set_reflection(&mut raw, 0, "b", "c");
        set_entry(&mut raw, "e", 2, 2, 3);
        let first = validate_scheme(&raw).unwrap();
        raw.reflections[0].reverse();
        raw.cartan.reverse();
        assert_eq!(validate_scheme(&raw).unwrap(), first);
    }

    #[test]
    fn structural_errors_are_distinct() {
        let mut raw = bruhat_raw();
        raw.cartan[0].1[1].push(0);
        assert!(matches!(validate_scheme(&raw), Err(StructureError::MatrixShape { .. })));

        let mut raw = bruhat_raw();
        raw.reflections[1][0].1 = "zz".into();
        assert!(matches!(
            validate_scheme(&raw),
            Err(StructureError::UnknownReflectionObject { label: 2, .. })
        ));

        let mut raw = bruhat_raw();
        raw.reflections[2].pop();
        assert!(matches!(validate_scheme(&raw), Err(StructureError::ReflectionMissing { .. })));

        let mut raw = bruhat_raw();
        raw.rank = 0;
        assert_eq!(validate_scheme(&raw), Err(StructureError::RankZero));
    }

    #[test]
    fn restriction_examples() {
        let s = fixtures::bruhat();
        let r = s.restrict([0, 1].into_iter().collect()).unwrap();
        let a = r.object_index("a").unwrap();
        assert_eq!(r.cartan_matrix(a).rows(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(r.labels(), &[1, 2]);
        assert_eq!(s.restrict(s.full_index_set()).unwrap(), s);
        assert_eq!(s.restrict(IndexSet::EMPTY), Err(StructureError::EmptyRestriction));

        let a2 = fixtures::a2();
        let r1 = a2.restrict(IndexSet::singleton(0)).unwrap();
        assert_eq!(r1.rank(), 1);
        assert_eq!(r1.cartan_matrix(0).rows(), vec![vec![2]]);
    }

    #[test]
    fn simple_reflection_examples() {
        let a2 = fixtures::a2();
        let s1 = a2.simple_reflection_matrix(0, 0);
        assert_eq!(s1.column(0), vec![-1, 0]);
        assert_eq!(s1.column(1), vec![1, 1]);

        let b = fixtures::bruhat();
        let a = b.object_index("a").unwrap();
        assert_eq!(b.simple_reflection_matrix(1, a).column(2), vec![0, 2, 1]);
        for i in 0..b.rank() {
            for x in 0..b.object_count() {
                let m = b.simple_reflection_matrix(i, x);
                let mut e = vec![0; b.rank()];
                e[i] = 1;
                assert_eq!(m.apply(&e), e.iter().map(|v| -v).collect::<Vec<_>>());
                assert_eq!(m.determinant().abs(), 1);
                let back = b.simple_reflection_matrix(i, b.reflect(i, x));
                assert!(back.mul(&m).is_identity());
                assert_eq!(b.reflect_vector(i, x, &[1, 2, 3]), m.apply(&[1, 2, 3]));
            }
        }
    }

    #[test]
    fn bruhat_object_change_diagram() {
        let b = fixtures::bruhat();
        let named: Vec<_> = b
            .object_change_edges()
            .into_iter()
            .map(|(x, i, y)| (b.object_name(x).to_string(), i + 1, b.object_name(y).to_string()))
            .collect();
        let expected = [("a", 1, "b"), ("b", 2, "c"), ("c", 3, "d"), ("d", 1, "e")];
        assert_eq!(named.len(), 4);
        for (x, i, y) in expected {
            assert!(named.contains(&(x.to_string(), i, y.to_string())));
        }
        assert!(b.components().iter().all(|&c| c == 0));
    }

    #[test]
    fn raw_round_trip() {
        let s = fixtures::bruhat();
        assert_eq!(CartanScheme::from_raw(&s.to_raw()).unwrap(), s);
    }
}
