//! The full property suite: every structural invariant of the scheme, its
//! groupoid, the weak orders and the Coxeter complexes, each checked
//! exhaustively on a finite Weyl groupoid.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::cartan::validate_scheme;
use crate::complex::{
    all_cosets, arrangement, closure_stratification_failures, coset_intersection, coxeter_complex,
    dimension_formula_failures, geometric_faces, verify_isomorphism,
};
use crate::groupoid::{Morphism, WeylGroupoid};
use crate::index_set::IndexSet;
use crate::order::{IntervalKind, IntervalOptions, IntervalType, OrderError, WeakOrders};
use crate::roots::{check_axioms, is_positive};
use crate::simplicial::check_pseudomanifold;

/// Outcome of one named property over all of its cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// Object label, or `None` for properties of the whole scheme.
    pub object: Option<String>,
    pub cases: usize,
    pub failures: usize,
    /// Description of the first failing case.
    pub first_failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckSuite {
    pub results: Vec<CheckResult>,
}

impl CheckSuite {
    pub fn passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed())
    }

    pub fn get(&self, name: &str, object: Option<&str>) -> Option<&CheckResult> {
        self.results
            .iter()
            .find(|r| r.name == name && r.object.as_deref() == object)
    }

    /// All results named `name`, over every object.
    pub fn all_named<'s>(&'s self, name: &'s str) -> impl Iterator<Item = &'s CheckResult> + 's {
        self.results.iter().filter(move |r| r.name == name)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    /// Restrict per-object checks to this object.
    pub object: Option<usize>,
    pub interval: IntervalOptions,
}

/// Accumulates cases of one property.
struct Tally {
    result: CheckResult,
}

impl Tally {
    fn new(name: &str, object: Option<&str>) -> Self {
        Tally {
            result: CheckResult {
                name: name.to_string(),
                object: object.map(str::to_string),
                cases: 0,
                failures: 0,
                first_failure: None,
            },
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.result.cases += 1;
        if !ok {
            self.result.failures += 1;
            if self.result.first_failure.is_none() {
                self.result.first_failure = Some(describe());
            }
        }
    }

    fn finish(self, suite: &mut CheckSuite) {
        suite.results.push(self.result);
    }
}

/// Runs every check. The groupoid construction itself has already
/// established finiteness and the root system axioms.
pub fn run_checks(g: &WeylGroupoid, options: CheckOptions) -> CheckSuite {
    let mut suite = CheckSuite::default();
    scheme_checks(g, &mut suite);
    groupoid_checks(g, &mut suite);
    let orders = match WeakOrders::build(g) {
        Ok(o) => o,
        Err(e) => {
            let mut t = Tally::new("order.cover-reachability", None);
            t.case(false, || e.to_string());
            t.finish(&mut suite);
            return suite;
        }
    };
    let objects: Vec<usize> = match options.object {
        Some(a) => vec![a],
        None => (0..g.object_count()).collect(),
    };
    for &a in &objects {
        order_checks(&orders, a, options.interval, &mut suite);
        complex_checks(g, a, &mut suite);
    }
    suite
}

fn scheme_checks(g: &WeylGroupoid, suite: &mut CheckSuite) {
    let s = g.scheme();
    let mut t = Tally::new("scheme.cartan-axioms", None);
    match validate_scheme(&s.to_raw()) {
        Ok(report) => {
            for v in &report.violations {
                t.case(false, || v.to_string());
            }
            t.case(true, String::new);
        }
        Err(e) => t.case(false, || e.to_string()),
    }
    t.finish(suite);

    let report = check_axioms(s, g.roots());
    for axiom in ["R1", "R2", "R3", "R4"] {
        let mut t = Tally::new(&format!("roots.axiom-{axiom}"), None);
        for f in report.failures.iter().filter(|f| f.axiom() == axiom) {
            t.case(false, || f.to_string());
        }
        t.case(true, String::new);
        t.finish(suite);
    }

    let mut t = Tally::new("roots.longest-length", None);
    for a in 0..g.object_count() {
        let (l, n) = (g.longest(a).length(), g.roots().positive(a).len());
        t.case(l == n, || format!("at {}: length {l} but {n} positive roots", s.object_name(a)));
    }
    t.finish(suite);
}

fn name(g: &WeylGroupoid, a: usize) -> &str {
    g.scheme().object_name(a)
}

fn groupoid_checks(g: &WeylGroupoid, suite: &mut CheckSuite) {
    let homs: Vec<_> = (0..g.object_count()).map(|a| g.enumerate_hom_to(a)).collect();
    let all: Vec<&Morphism> = homs.iter().flat_map(|h| h.elements()).collect();

    let mut words = Tally::new("groupoid.reduced-words", None);
    let mut content = Tally::new("groupoid.content-independence", None);
    for w in &all {
        let word = g.reduced_word(w);
        let ok = word.len() == w.length() && g.from_word(&word, w.source()).as_ref() == Ok(*w);
        words.case(ok, || format!("{} does not evaluate back", g.label(w)));
        let sets: BTreeSet<IndexSet> = g
            .reduced_words(w)
            .iter()
            .map(|r| r.iter().copied().collect())
            .collect();
        content.case(sets.len() == 1, || format!("{} has reduced words of different contents", g.label(w)));
    }
    words.finish(suite);
    content.finish(suite);

    let mut invariants = Tally::new("groupoid.morphism-invariants", None);
    let mut law = Tally::new("groupoid.length-law", None);
    for w in &all {
        let det = w.action().determinant();
        let (src, tgt) = (g.roots().all(w.source()), g.roots().all(w.target()));
        let images: BTreeSet<Vec<i64>> = src.iter().map(|beta| w.apply(beta)).collect();
        let inversions = g
            .roots()
            .positive(w.source())
            .iter()
            .filter(|beta| !is_positive(&w.apply(beta)))
            .count();
        invariants.case(det.abs() == 1 && images == *tgt && inversions == w.length(), || {
            format!("{}: det {det}, {inversions} inversions", g.label(w))
        });
        for i in 0..g.rank() {
            let next = g.times_simple(w, i);
            let expected = if is_positive(&w.image_of_simple(i)) {
                w.length() + 1
            } else {
                w.length() - 1
            };
            law.case(next.length() == expected, || format!("{} times σ_{}", g.label(w), g.scheme().label(i)));
        }
    }
    invariants.finish(suite);
    law.finish(suite);

    let mut wellness = Tally::new("groupoid.wellness", None);
    for j in IndexSet::all_subsets(g.rank()).filter(|j| !j.is_empty()) {
        let kept: Vec<usize> = j.iter().collect();
        for a in 0..g.object_count() {
            for w in g.enumerate_parabolic(a, j).elements() {
                if w.action().submatrix(&kept).is_identity() {
                    wellness.case(w.is_identity(), || format!("{} acts trivially on Z^{j}", g.label(w)));
                }
            }
        }
    }
    wellness.finish(suite);

    let mut roots_char = Tally::new("groupoid.content-by-roots", None);
    for w in &all {
        let wc = g.content(w);
        for j in IndexSet::all_subsets(g.rank()) {
            let stays = g.roots().positive(w.source()).iter().all(|beta| {
                let image = w.apply(beta);
                is_positive(&image) || image.iter().enumerate().all(|(k, &x)| x == 0 || j.contains(k))
            });
            roots_char.case(wc.is_subset(j) == stays, || {
                format!("{} with J = {j}: content {wc}, root criterion {stays}", g.label(w))
            });
        }
    }
    roots_char.finish(suite);

    restriction_check(g, suite);

    let mut decomposition = Tally::new("groupoid.parabolic-decomposition", None);
    for w in &all {
        for j in IndexSet::all_subsets(g.rank()) {
            let (u, v) = g.parabolic_decompose(w, j);
            let minimal = |x: &Morphism| j.iter().all(|k| is_positive(&x.image_of_simple(k)));
            let ok = minimal(&u)
                && g.content(&v).is_subset(j)
                && u.length() + v.length() == w.length()
                && g.compose(&u, &v).as_ref() == Ok(*w);
            // Uniqueness by exhaustion: v' ranges over W_J with source(w).
            let candidates = g.enumerate_parabolic(w.source(), j);
            let count = candidates
                .elements()
                .iter()
                .filter(|x| {
                    let u2 = g.compose(w, x).expect("x ends at source(w)");
                    minimal(&u2)
                })
                .count();
            decomposition.case(ok && count == 1, || {
                format!("{} with J = {j}: {count} decompositions", g.label(w))
            });
        }
    }
    decomposition.finish(suite);

    let mut tau = Tally::new("groupoid.tau-involution", None);
    let components = g.scheme().components();
    for a in 0..g.object_count() {
        let p = g.tau_permutation(a);
        let involutive = g.tau(g.tau(a)) == a && (0..g.rank()).all(|i| p[p[i]] == i);
        let constant = (0..g.object_count())
            .filter(|&b| components[b] == components[a])
            .all(|b| g.tau_permutation(b) == p);
        let conjugation = (0..g.rank()).all(|i| {
            g.t_map(&g.simple_into(i, a)) == g.simple_into(p[i], g.tau(a))
        });
        tau.case(involutive && constant && conjugation, || {
            format!("at {}: involutive {involutive}, constant {constant}, conjugation {conjugation}", name(g, a))
        });
    }
    tau.finish(suite);
}

fn restriction_check(g: &WeylGroupoid, suite: &mut CheckSuite) {
    let mut t = Tally::new("groupoid.restriction-functor", None);
    let mut lengths = Tally::new("groupoid.parabolic-length", None);
    for j in IndexSet::all_subsets(g.rank()) {
        if j.is_empty() {
            for a in 0..g.object_count() {
                t.case(g.enumerate_parabolic(a, j).len() == 1, || "W_∅ is not trivial".into());
            }
            continue;
        }
        let kept: Vec<usize> = j.iter().collect();
        let restricted = match g.scheme().restrict(j).map(WeylGroupoid::new) {
            Ok(Ok(r)) => r,
            _ => {
                t.case(false, || format!("restriction to {j} is not finite"));
                continue;
            }
        };
        for a in 0..g.object_count() {
            let small = restricted.enumerate_hom_to(a);
            let big = g.enumerate_parabolic(a, j);
            let mut images = BTreeSet::new();
            let mut ok = small.len() == big.len();
            for (k, w) in small.elements().iter().enumerate() {
                let word: Vec<usize> = small.word(k).iter().map(|&i| kept[i]).collect();
                let Ok(image) = g.from_word(&word, w.source()) else {
                    ok = false;
                    continue;
                };
                // The image acts on Z^J as w does and fixes I∖J modulo Z^J.
                let agrees = kept.iter().enumerate().all(|(x, &jx)| {
                    let col = image.image_of_simple(jx);
                    let small_col = w.image_of_simple(x);
                    (0..g.rank()).all(|r| match kept.iter().position(|&y| y == r) {
                        Some(pos) => col[r] == small_col[pos],
                        None => col[r] == 0,
                    })
                });
                ok &= agrees && big.index_of(&image).is_some() && image.length() == w.length();
                lengths.case(
                    g.length_in(&image, j).ok() == Some(image.length()),
                    || format!("{} in {j}", g.label(&image)),
                );
                images.insert(image);
            }
            ok &= images.len() == big.len();
            t.case(ok, || format!("J = {j} at {}", name(g, a)));
        }
    }
    t.finish(suite);
    lengths.finish(suite);
}

fn order_checks(orders: &WeakOrders, a: usize, interval: IntervalOptions, suite: &mut CheckSuite) {
    let g = orders.groupoid();
    let obj = Some(name(g, a));
    let p = orders.poset(a);
    let n = p.len();
    let el = |k: usize| p.element(k);

    let mut t = Tally::new("order.graded", obj);
    let top_len = g.roots().positive(a).len();
    t.case(p.minimal_elements() == vec![p.bottom()] && el(p.bottom()).is_identity(), || "minimum".into());
    t.case(p.maximal_elements() == vec![p.top()] && el(p.top()) == g.longest(a), || "maximum".into());
    let (short, long) = p.maximal_chain_sizes();
    t.case(short == top_len + 1 && long == top_len + 1, || {
        format!("maximal chains have {short}..{long} elements, expected {}", top_len + 1)
    });
    let sizes = p.rank_sizes();
    let symmetric = sizes.iter().eq(sizes.iter().rev());
    t.case(symmetric, || format!("rank sizes {sizes:?} are not symmetric"));
    t.finish(suite);

    let mut meet_t = Tally::new("order.meet", obj);
    let mut join_t = Tally::new("order.join", obj);
    let mut ju = Tally::new("order.content-identity", obj);
    let mut meet_table = vec![vec![0usize; n]; n];
    let mut join_table = vec![vec![0usize; n]; n];
    for x in 0..n {
        for y in 0..n {
            let (u, v) = (el(x), el(y));
            let m = orders.meet(u, v);
            let km = orders.index_of(&m);
            let brute = p.brute_force_meet(x, y);
            meet_t.case(brute == Ok(km), || format!("{} ∧ {}", g.label(u), g.label(v)));
            meet_table[x][y] = km;
            let j = orders.join(u, v);
            let kj = orders.index_of(&j);
            join_t.case(p.brute_force_join(x, y) == Ok(kj), || format!("{} ∨ {}", g.label(u), g.label(v)));
            join_table[x][y] = kj;
            let quotient = g.compose(&g.inverse(u), v).expect("common target");
            let lhs = g.content(u).union(g.content(v));
            let rhs = g.content(&m).union(g.content(&quotient));
            ju.case(lhs == rhs, || format!("{} and {}: {lhs} vs {rhs}", g.label(u), g.label(v)));
        }
    }
    meet_t.finish(suite);
    join_t.finish(suite);
    ju.finish(suite);

    let mut laws = Tally::new("order.lattice-laws", obj);
    for x in 0..n {
        laws.case(meet_table[x][x] == x && join_table[x][x] == x, || format!("idempotence at {x}"));
        for y in 0..n {
            let comm = meet_table[x][y] == meet_table[y][x] && join_table[x][y] == join_table[y][x];
            let absorb = meet_table[x][join_table[x][y]] == x && join_table[x][meet_table[x][y]] == x;
            let order = p.leq(x, y) == (meet_table[x][y] == x);
            laws.case(comm && absorb && order, || format!("pair ({x}, {y})"));
            for z in 0..n {
                let m = meet_table[meet_table[x][y]][z] == meet_table[x][meet_table[y][z]];
                let j = join_table[join_table[x][y]][z] == join_table[x][join_table[y][z]];
                laws.case(m && j, || format!("associativity at ({x}, {y}, {z})"));
            }
        }
    }
    laws.finish(suite);

    let mut ortho = Tally::new("order.ortho-complement", obj);
    let mut complement = Tally::new("order.complement-descents", obj);
    let full = g.full_index_set();
    for x in 0..n {
        let w = el(x);
        let perp = orders.ortho(w);
        let kp = orders.index_of(&perp);
        let o1 = meet_table[x][kp] == p.bottom();
        let o2 = join_table[x][kp] == p.top();
        let o3 = orders.ortho(&perp) == *w;
        let o4 = (0..n).filter(|&y| p.leq(x, y)).all(|y| p.leq(orders.index_of(&orders.ortho(el(y))), kp));
        ortho.case(o1 && o2 && o3 && o4, || {
            format!("{}: O1 {o1}, O2 {o2}, O3 {o3}, O4 {o4}", g.label(w))
        });
        let lengths = w.length() + perp.length() == top_len;
        let (dw, dp) = (g.left_descents(w), g.left_descents(&perp));
        let disjoint = dw.intersection(dp).is_empty();
        let partition = dw.union(dp) == full;
        complement.case(lengths && disjoint && partition, || {
            format!("{}: descents {dw} and {dp}", g.label(w))
        });
    }
    ortho.finish(suite);
    complement.finish(suite);

    let mut desc = Tally::new("order.descents", obj);
    for x in 0..n {
        let w = el(x);
        let d = orders.descents(w);
        let wj = g.longest_word(a, d.indices);
        let below = p.leq(orders.index_of(&wj), x);
        let matches_groupoid = d.indices == g.left_descents(w);
        let boolean_sets: Vec<IndexSet> = d.extended.iter().map(|(j, _)| *j).collect();
        let all_subsets: Vec<IndexSet> = d.indices.subsets().collect();
        let mut sorted = boolean_sets.clone();
        sorted.sort();
        let mut expected = all_subsets.clone();
        expected.sort();
        let injective = d.extended.iter().map(|(_, k)| *k).collect::<BTreeSet<_>>().len() == d.extended.len();
        let order_iso = d.extended.iter().all(|(j1, k1)| {
            d.extended.iter().all(|(j2, k2)| j1.is_subset(*j2) == p.leq(*k1, *k2))
        });
        desc.case(
            below && matches_groupoid && sorted == expected && injective && order_iso && d.simple.len() == d.indices.len(),
            || g.label(w).to_string(),
        );
    }
    desc.finish(suite);

    let mut longest = Tally::new("order.longest-words", obj);
    let subsets: Vec<IndexSet> = IndexSet::all_subsets(g.rank()).collect();
    let wj: Vec<Morphism> = subsets.iter().map(|&j| g.longest_word(a, j)).collect();
    for (x, &j) in subsets.iter().enumerate() {
        longest.case(g.content(&wj[x]) == j, || format!("content of w_{j}"));
        let joined = j
            .iter()
            .map(|i| g.simple_into(i, a))
            .fold(g.identity(a), |acc, s| orders.join(&acc, &s));
        longest.case(joined == wj[x], || format!("join of simple reflections in {j}"));
        for (y, &k) in subsets.iter().enumerate() {
            let m = orders.meet(&wj[x], &wj[y]);
            let jn = orders.join(&wj[x], &wj[y]);
            longest.case(m == g.longest_word(a, j.intersection(k)), || format!("w_{j} ∧ w_{k}"));
            longest.case(jn == g.longest_word(a, j.union(k)), || format!("w_{j} ∨ w_{k}"));
        }
    }
    longest.finish(suite);

    let mut tmap = Tally::new("order.t-map", obj);
    let tau = g.tau(a);
    let perm = g.tau_permutation(a);
    let target = orders.poset(tau);
    let images: Vec<usize> = (0..n).map(|x| orders.index_of(&g.t_map(el(x)))).collect();
    for x in 0..n {
        let w = el(x);
        let image = target.element(images[x]);
        let by_word = p
            .hom()
            .word(x)
            .iter()
            .fold(g.identity(tau), |acc, &i| g.times_simple(&acc, perm[i]));
        let ok = image.target() == tau
            && image.length() == w.length()
            && by_word == *image
            && g.t_map(image) == *w
            && (0..n).all(|y| p.leq(x, y) == target.leq(images[x], images[y]));
        tmap.case(ok, || g.label(w).to_string());
    }
    tmap.case(images.iter().collect::<BTreeSet<_>>().len() == target.len(), || "not bijective".into());
    tmap.finish(suite);

    let mut translation = Tally::new("order.interval-translation", obj);
    let mut topology = Tally::new("order.interval-topology", obj);
    for x in 0..n {
        for y in 0..n {
            if !p.leq(x, y) {
                continue;
            }
            let (u, v) = (el(x), el(y));
            let closed = orders.interval(u, v, IntervalKind::Closed);
            translation.case(closed.is_ok(), || format!("[{}, {}]", g.label(u), g.label(v)));
            if v.length() - u.length() < 2 {
                continue;
            }
            let ok = match orders.classify_interval(u, v, interval) {
                Ok(report) => {
                    let open = orders.interval(u, v, IntervalKind::Open).map(|o| o.len()).unwrap_or(0);
                    let two_point = match report.classification {
                        IntervalType::Sphere(0) if v.length() - u.length() == 2 => open == 2,
                        _ => true,
                    };
                    report.consistent && two_point
                }
                Err(OrderError::Degenerate(_)) => false,
                Err(_) => false,
            };
            topology.case(ok, || format!("({}, {})", g.label(u), g.label(v)));
        }
    }
    translation.finish(suite);
    topology.finish(suite);
}

fn complex_checks(g: &WeylGroupoid, a: usize, suite: &mut CheckSuite) {
    let obj = Some(name(g, a));
    let r = g.rank();
    let data = coxeter_complex(g, a);
    let faces = geometric_faces(g, a);
    let hom_len = data.facets.len();

    let mut sphere = Tally::new("complex.sphere", obj);
    let report = check_pseudomanifold(&data.complex);
    sphere.case(report.pure && data.dimension() == Some(r - 1), || {
        format!("dimension {:?}, pure {}", data.dimension(), report.pure)
    });
    if r >= 2 {
        sphere.case(report.closed, || format!("ridge degrees {:?}", report.ridge_degrees));
    }
    let chi = data.complex.euler_characteristic();
    let expected_chi = if r % 2 == 1 { 2 } else { 0 };
    sphere.case(chi == expected_chi, || format!("χ = {chi}"));
    let mut betti = vec![0usize; r];
    betti[r - 1] += 1;
    betti[0] += 1;
    let got = data.complex.gf2_betti();
    sphere.case(got == betti, || format!("GF(2) Betti numbers {got:?}"));
    let distinct: BTreeSet<&Vec<usize>> = data.facets.iter().collect();
    sphere.case(distinct.len() == hom_len, || "facets of distinct morphisms coincide".into());
    sphere.case(data.facets_connected(), || "ridge graph is disconnected".into());
    sphere.finish(suite);

    let mut shelling = Tally::new("complex.shelling", obj);
    let verdict = data.length_lex_shelling();
    shelling.case(verdict.is_ok(), || format!("{verdict:?}"));
    shelling.finish(suite);

    let mut nerve = Tally::new("complex.nerve", obj);
    for (x, c1) in data.vertices.iter().enumerate() {
        for (y, c2) in data.vertices.iter().enumerate().skip(x + 1) {
            let meets = coset_intersection(g, c1, c2).is_some();
            nerve.case(meets == data.complex.contains(&[x, y]), || format!("vertices {x} and {y}"));
        }
    }
    nerve.finish(suite);

    let mut iso = Tally::new("complex.isomorphism", obj);
    let verdict = verify_isomorphism(g, &data, &faces);
    iso.case(verdict.holds(), || format!("{verdict:?}"));
    iso.finish(suite);

    let mut strata = Tally::new("complex.closure-stratification", obj);
    let failures = closure_stratification_failures(g, &faces);
    for f in &failures {
        strata.case(false, || format!("face {f}"));
    }
    strata.case(true, String::new);
    strata.finish(suite);

    let mut counts = Tally::new("complex.face-counts", obj);
    let cosets = all_cosets(g, a).len();
    counts.case(cosets == faces.len() && cosets == data.face_cosets.len(), || {
        format!("{cosets} cosets, {} geometric faces, {} simplices", faces.len(), data.face_cosets.len())
    });
    for f in dimension_formula_failures(g, a, &faces) {
        counts.case(false, || format!("dimension of face {f}"));
    }
    counts.finish(suite);

    let mut arr = Tally::new("complex.arrangement", obj);
    let report = arrangement(g, a, &faces);
    arr.case(report.normals.len() == g.roots().positive(a).len(), || "hyperplane count".into());
    arr.case(report.chambers.len() == hom_len, || format!("{} chambers", report.chambers.len()));
    arr.case(report.simplicial, || {
        let mut s = String::from("non-simplicial chambers:");
        for c in report.chambers.iter().filter(|c| !c.simplicial) {
            let _ = write!(s, " {}", c.morphism);
        }
        s
    });
    arr.finish(suite);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn a2_suite_passes() {
        let g = WeylGroupoid::new(fixtures::a2()).unwrap();
        let suite = run_checks(&g, CheckOptions::default());
        let failed: Vec<_> = suite.failed().collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn rank_one_suite_passes() {
        let g = WeylGroupoid::new(fixtures::rank_one()).unwrap();
        let suite = run_checks(&g, CheckOptions::default());
        let failed: Vec<_> = suite.failed().collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
