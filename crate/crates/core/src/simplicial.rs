//! Finite abstract simplicial complexes: f-vectors, Euler characteristic,
//! homology over GF(2), pseudomanifold and shelling checks.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

/// A simplicial complex on vertices `0..vertex_count`, faces stored by
/// dimension as sorted vertex lists. The empty face is not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    faces: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Downward closure of the given facets.
    pub fn from_facets(vertex_count: usize, facets: &[Vec<usize>]) -> Self {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            assert!(f.iter().all(|&v| v < vertex_count), "vertex out of range");
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|b| mask & (1 << b) != 0).map(|b| f[b]).collect();
                seen.insert(face);
            }
        }
        let top = seen.iter().map(Vec::len).max().unwrap_or(0);
        let mut faces = vec![Vec::new(); top];
        for face in seen {
            faces[face.len() - 1].push(face);
        }
        for level in &mut faces {
            level.sort();
        }
        SimplicialComplex { vertex_count, faces }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces_of_dim(&self, d: usize) -> &[Vec<usize>] {
        self.faces.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter().flatten()
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        face.len()
            .checked_sub(1)
            .and_then(|d| self.faces.get(d))
            .is_some_and(|level| level.binary_search(&face.to_vec()).is_ok())
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.f_vector())
    }

    /// `χ − 1`; equals −1 for the empty complex.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.euler_characteristic() - 1
    }

    /// Inclusion-maximal faces, sorted.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut covered: HashSet<&Vec<usize>> = HashSet::new();
        for level in self.faces.iter().skip(1) {
            for face in level {
                for skip in 0..face.len() {
                    let sub: Vec<usize> = face
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    if let Some(found) = self.faces[sub.len() - 1].iter().find(|f| **f == sub) {
                        covered.insert(found);
                    }
                }
            }
        }
        let mut out: Vec<Vec<usize>> = self.all_faces().filter(|f| !covered.contains(f)).cloned().collect();
        out.sort();
        out
    }

    pub fn is_pure(&self) -> bool {
        let d = self.faces.len();
        self.facets().iter().all(|f| f.len() == d)
    }

    /// Betti numbers over GF(2), indexed by dimension.
    pub fn gf2_betti(&self) -> Vec<usize> {
        let f = self.f_vector();
        // ranks[d] = rank of the boundary map from d-faces to (d-1)-faces.
        let ranks: Vec<usize> = (0..f.len())
            .map(|d| if d == 0 { 0 } else { self.boundary_rank(d) })
            .collect();
        (0..f.len())
            .map(|d| f[d] - ranks[d] - ranks.get(d + 1).copied().unwrap_or(0))
            .collect()
    }

    /// Reduced Betti numbers over GF(2); the empty complex has a single
    /// class in degree −1, reported as `None`.
    pub fn reduced_gf2_betti(&self) -> Option<Vec<usize>> {
        if self.is_empty() {
            return None;
        }
        let mut b = self.gf2_betti();
        b[0] -= 1;
        Some(b)
    }

    fn boundary_rank(&self, d: usize) -> usize {
        let lower: HashMap<&Vec<usize>, usize> =
            self.faces[d - 1].iter().enumerate().map(|(k, f)| (f, k)).collect();
        let columns: Vec<Vec<usize>> = self.faces[d]
            .iter()
            .map(|face| {
                let mut rows: Vec<usize> = (0..face.len())
                    .map(|skip| {
                        let sub: Vec<usize> = face
                            .iter()
                            .enumerate()
                            .filter(|&(k, _)| k != skip)
                            .map(|(_, &v)| v)
                            .collect();
                        lower[&sub]
                    })
                    .collect();
                rows.sort_unstable();
                rows
            })
            .collect();
        gf2_rank(self.faces[d - 1].len(), &columns)
    }
}

pub(crate) fn alternating_sum(f: &[usize]) -> i64 {
    f.iter()
        .enumerate()
        .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// Rank over GF(2) of a sparse 0/1 matrix given by the row indices of the
/// ones in each column.
pub fn gf2_rank(row_count: usize, columns: &[Vec<usize>]) -> usize {
    let words = row_count.div_ceil(64).max(1);
    let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
    let mut rank = 0;
    for col in columns {
        let mut bits = vec![0u64; words];
        for &r in col {
            bits[r / 64] ^= 1 << (r % 64);
        }
        loop {
            let Some(low) = highest_bit(&bits) else { break };
            match pivots.get(&low) {
                Some(p) => {
                    for (b, q) in bits.iter_mut().zip(p) {
                        *b ^= q;
                    }
                }
                None => {
                    pivots.insert(low, bits);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn highest_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .rev()
        .find(|(_, &w)| w != 0)
        .map(|(k, &w)| k * 64 + 63 - w.leading_zeros() as usize)
}

/// Purity and ridge-degree census of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudomanifoldReport {
    pub pure: bool,
    pub dimension: Option<usize>,
    /// Ridge degree -> number of ridges with that degree.
    pub ridge_degrees: BTreeMap<usize, usize>,
    /// Pure and every ridge lies in at most two facets.
    pub pseudomanifold: bool,
    /// Pure and every ridge lies in exactly two facets.
    pub closed: bool,
}

pub fn check_pseudomanifold(complex: &SimplicialComplex) -> PseudomanifoldReport {
    let pure = complex.is_pure();
    let dimension = complex.dimension();
    let mut ridge_degrees = BTreeMap::new();
    if let Some(d) = dimension.filter(|&d| d > 0) {
        let mut degree: HashMap<&Vec<usize>, usize> =
            complex.faces_of_dim(d - 1).iter().map(|f| (f, 0)).collect();
        for facet in complex.faces_of_dim(d) {
            for skip in 0..facet.len() {
                let ridge: Vec<usize> = facet
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                *degree.get_mut(&ridge).expect("complex is closed under faces") += 1;
            }
        }
        for (_, n) in degree {
            *ridge_degrees.entry(n).or_insert(0) += 1;
        }
    }
    let at_most_two = ridge_degrees.keys().all(|&k| k <= 2);
    let exactly_two = ridge_degrees.keys().all(|&k| k == 2);
    PseudomanifoldReport {
        pure,
        dimension,
        pseudomanifold: pure && at_most_two,
        closed: pure && exactly_two,
        ridge_degrees,
    }
}

/// A pair of facets (positions in the order) breaking the shelling
/// condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShellingViolation {
    pub earlier: usize,
    pub position: usize,
}

/// Checks that `facets` (in this order) is a shelling: for all `i < j`
/// there are `l < j` and `ω ∈ F_j` with `F_i ∩ F_j ⊆ F_l ∩ F_j = F_j ∖ {ω}`.
pub fn shelling_check(facets: &[Vec<usize>]) -> Result<(), ShellingViolation> {
    let sets: Vec<HashSet<usize>> = facets.iter().map(|f| f.iter().copied().collect()).collect();
    for j in 1..sets.len() {
        let fj = &sets[j];
        // Vertices ω such that F_j ∖ {ω} = F_l ∩ F_j for some earlier l.
        let removable: Vec<usize> = fj
            .iter()
            .copied()
            .filter(|&omega| {
                sets[..j].iter().any(|fl| {
                    let inter: HashSet<usize> = fl.intersection(fj).copied().collect();
                    inter.len() + 1 == fj.len() && !inter.contains(&omega)
                })
            })
            .collect();
        for (i, fi) in sets[..j].iter().enumerate() {
            if !removable.iter().any(|omega| !fi.contains(omega)) {
                return Err(ShellingViolation { earlier: i, position: j });
            }
        }
    }
    Ok(())
}

/// Whether the facets are connected through shared ridges.
pub fn ridge_graph_connected(facets: &[Vec<usize>]) -> bool {
    if facets.is_empty() {
        return true;
    }
    let mut owners: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (k, f) in facets.iter().enumerate() {
        let mut f = f.clone();
        f.sort_unstable();
        for skip in 0..f.len() {
            let mut ridge = f.clone();
            ridge.remove(skip);
            owners.entry(ridge).or_default().push(k);
        }
    }
    let mut adjacency = vec![Vec::new(); facets.len()];
    for ids in owners.values() {
        for &x in ids {
            for &y in ids {
                if x != y {
                    adjacency[x].push(y);
                }
            }
        }
    }
    let mut seen = vec![false; facets.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adjacency[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_boundary() -> SimplicialComplex {
        SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]])
    }

    #[test]
    fn triangle_boundary_is_a_circle() {
        let c = triangle_boundary();
        assert_eq!(c.f_vector(), vec![3, 3]);
        assert_eq!(c.euler_characteristic(), 0);
        assert_eq!(c.gf2_betti(), vec![1, 1]);
        let report = check_pseudomanifold(&c);
        assert!(report.closed && report.pseudomanifold);
    }

    #[test]
    fn glued_triangles_form_a_ball() {
        let c = SimplicialComplex::from_facets(4, &[vec![0, 1, 2], vec![1, 2, 3]]);
        let report = check_pseudomanifold(&c);
        assert!(report.pseudomanifold);
        assert!(!report.closed);
        assert_eq!(report.ridge_degrees, BTreeMap::from([(1, 4), (2, 1)]));
        assert_eq!(c.euler_characteristic(), 1);
        assert_eq!(c.reduced_gf2_betti(), Some(vec![0, 0, 0]));
        assert!(shelling_check(&c.facets()).is_ok());
    }

    #[test]
    fn octahedron_is_a_two_sphere() {
        // Vertices ±e1, ±e2, ±e3 as 0/1, 2/3, 4/5.
        let mut facets = Vec::new();
        for x in [0, 1] {
            for y in [2, 3] {
                for z in [4, 5] {
                    facets.push(vec![x, y, z]);
                }
            }
        }
        let c = SimplicialComplex::from_facets(6, &facets);
        assert_eq!(c.f_vector(), vec![6, 12, 8]);
        assert_eq!(c.euler_characteristic(), 2);
        assert_eq!(c.gf2_betti(), vec![1, 0, 1]);
        assert!(check_pseudomanifold(&c).closed);
        assert!(ridge_graph_connected(&facets));
    }

    #[test]
    fn shelling_examples() {
        let edges = [vec![0, 1], vec![1, 2], vec![0, 2]];
        for order in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
            let facets: Vec<_> = order.iter().map(|&k| edges[k].clone()).collect();
            assert!(shelling_check(&facets).is_ok());
        }
        let disjoint = vec![vec![0, 1], vec![2, 3]];
        assert_eq!(
            shelling_check(&disjoint),
            Err(ShellingViolation { earlier: 0, position: 1 })
        );
        assert!(!ridge_graph_connected(&disjoint));
    }

    #[test]
    fn non_shelling_order_of_a_path() {
        // Path 0-1-2-3 with the two end edges first.
        let facets = vec![vec![0, 1], vec![2, 3], vec![1, 2]];
        assert_eq!(
            shelling_check(&facets),
            Err(ShellingViolation { earlier: 0, position: 1 })
        );
    }

    #[test]
    fn empty_complex() {
        let c = SimplicialComplex::from_facets(0, &[]);
        assert_eq!(c.dimension(), None);
        assert_eq!(c.reduced_euler_characteristic(), -1);
        assert_eq!(c.reduced_gf2_betti(), None);
    }

    #[test]
    fn gf2_rank_cancels_pairs() {
        assert_eq!(gf2_rank(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]), 2);
        assert_eq!(gf2_rank(70, &[vec![65], vec![65, 3], vec![3]]), 2);
    }
}
