//! Finite groupoid kernel: dense-table representation, axiom verification,
//! the standard constructors and structural queries.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::config::Limits;
use crate::error::{GroupoidError, Result};
use crate::group::FiniteGroup;
use crate::report::{CheckOutcome, Report};

/// Index of an object in the owning groupoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ObjectId(pub usize);

/// Index of an arrow in the owning groupoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ArrowId(pub usize);

/// A finite groupoid with precomputed source/target/unit/composition/inverse tables.
///
/// Arrows and objects are dense 0-based indices. The composition table stores
/// `after ∘ first` for every ordered arrow pair, with `None` for non-composable
/// pairs. All downstream algorithms are exhaustive searches over these tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    n_objects: usize,
    source: Vec<ObjectId>,
    target: Vec<ObjectId>,
    unit: Vec<ArrowId>,
    compose: Vec<Option<ArrowId>>,
    inverse: Vec<ArrowId>,
    object_labels: Vec<String>,
    arrow_labels: Vec<String>,
}

impl FiniteGroupoid {
    /// Builds a groupoid from raw tables, checking only structural sanity
    /// (index ranges, composability pattern). Axioms are checked separately by
    /// [`verify_groupoid_axioms`].
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        n_objects: usize,
        source: Vec<usize>,
        target: Vec<usize>,
        unit: Vec<usize>,
        compose: Vec<Option<usize>>,
        inverse: Vec<usize>,
        object_labels: Option<Vec<String>>,
        arrow_labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if n_objects == 0 {
            return Err(GroupoidError::EmptyObjectSet);
        }
        let n_arrows = source.len();
        if target.len() != n_arrows || inverse.len() != n_arrows {
            return Err(GroupoidError::MalformedTable(
                "source/target/inverse tables have inconsistent lengths".into(),
            ));
        }
        if unit.len() != n_objects {
            return Err(GroupoidError::MalformedTable(
                "unit table length differs from object count".into(),
            ));
        }
        if compose.len() != n_arrows * n_arrows {
            return Err(GroupoidError::MalformedTable(
                "composition table is not n_arrows^2".into(),
            ));
        }
        for &x in source.iter().chain(target.iter()) {
            if x >= n_objects {
                return Err(GroupoidError::MalformedTable(format!(
                    "object index {x} out of range"
                )));
            }
        }
        for &a in unit.iter().chain(inverse.iter()) {
            if a >= n_arrows {
                return Err(GroupoidError::MalformedTable(format!(
                    "arrow index {a} out of range"
                )));
            }
        }
        for entry in compose.iter().flatten() {
            if *entry >= n_arrows {
                return Err(GroupoidError::MalformedTable(format!(
                    "arrow index {entry} out of range in composition table"
                )));
            }
        }
        // compose(after, first) must be defined exactly when s(after) = t(first)
        for after in 0..n_arrows {
            for first in 0..n_arrows {
                let defined = compose[after * n_arrows + first].is_some();
                let composable = source[after] == target[first];
                if defined != composable {
                    return Err(GroupoidError::MalformedTable(format!(
                        "composition definedness mismatch at ({after}, {first})"
                    )));
                }
            }
        }
        let object_labels =
            object_labels.unwrap_or_else(|| (0..n_objects).map(|i| format!("x{i}")).collect());
        let arrow_labels =
            arrow_labels.unwrap_or_else(|| (0..n_arrows).map(|i| format!("a{i}")).collect());
        if object_labels.len() != n_objects || arrow_labels.len() != n_arrows {
            return Err(GroupoidError::MalformedTable(
                "label table length mismatch".into(),
            ));
        }
        Ok(FiniteGroupoid {
            n_objects,
            source: source.into_iter().map(ObjectId).collect(),
            target: target.into_iter().map(ObjectId).collect(),
            unit: unit.into_iter().map(ArrowId).collect(),
            compose: compose.into_iter().map(|o| o.map(ArrowId)).collect(),
            inverse: inverse.into_iter().map(ArrowId).collect(),
            object_labels,
            arrow_labels,
        })
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_arrows(&self) -> usize {
        self.source.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> {
        (0..self.n_objects).map(ObjectId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.n_arrows()).map(ArrowId)
    }

    pub fn source(&self, a: ArrowId) -> ObjectId {
        self.source[a.0]
    }

    pub fn target(&self, a: ArrowId) -> ObjectId {
        self.target[a.0]
    }

    pub fn unit(&self, x: ObjectId) -> ArrowId {
        self.unit[x.0]
    }

    pub fn is_unit(&self, a: ArrowId) -> bool {
        self.unit[self.source(a).0] == a
    }

    /// `after ∘ first`, defined iff `s(after) = t(first)`.
    pub fn compose(&self, after: ArrowId, first: ArrowId) -> Option<ArrowId> {
        self.compose[after.0 * self.n_arrows() + first.0]
    }

    /// Composes a chain right-to-left: `chain(&[c, b, a]) = c ∘ b ∘ a`.
    pub fn chain(&self, arrows: &[ArrowId]) -> Option<ArrowId> {
        let (&last, rest) = arrows.split_last()?;
        let mut acc = last;
        for &a in rest.iter().rev() {
            acc = self.compose(a, acc)?;
        }
        Some(acc)
    }

    pub fn inverse(&self, a: ArrowId) -> ArrowId {
        self.inverse[a.0]
    }

    pub fn object_label(&self, x: ObjectId) -> &str {
        &self.object_labels[x.0]
    }

    pub fn arrow_label(&self, a: ArrowId) -> &str {
        &self.arrow_labels[a.0]
    }

    pub fn set_labels(&mut self, object_labels: Vec<String>, arrow_labels: Vec<String>) {
        assert_eq!(object_labels.len(), self.n_objects);
        assert_eq!(arrow_labels.len(), self.n_arrows());
        self.object_labels = object_labels;
        self.arrow_labels = arrow_labels;
    }

    pub fn object_by_label(&self, label: &str) -> Option<ObjectId> {
        self.object_labels
            .iter()
            .position(|l| l == label)
            .map(ObjectId)
    }

    pub fn arrow_by_label(&self, label: &str) -> Option<ArrowId> {
        self.arrow_labels
            .iter()
            .position(|l| l == label)
            .map(ArrowId)
    }

    /// All ordered composable pairs `(after, first)`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (ArrowId, ArrowId)> + '_ {
        self.arrows().flat_map(move |after| {
            self.arrows()
                .filter(move |&first| self.source(after) == self.target(first))
                .map(move |first| (after, first))
        })
    }

    /// The hom-set G(y, x): all arrows with source `x` and target `y`.
    pub fn hom_set(&self, y: ObjectId, x: ObjectId) -> Vec<ArrowId> {
        self.arrows()
            .filter(|&a| self.source(a) == x && self.target(a) == y)
            .collect()
    }

    /// Arrows with source `x`.
    pub fn out_arrows(&self, x: ObjectId) -> Vec<ArrowId> {
        self.arrows().filter(|&a| self.source(a) == x).collect()
    }

    /// The isotropy group G_x = G(x, x), together with its arrow carrier.
    pub fn isotropy_group(&self, x: ObjectId) -> (FiniteGroup, Vec<ArrowId>) {
        let loops = self.hom_set(x, x);
        let index: BTreeMap<ArrowId, usize> =
            loops.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let k = loops.len();
        let mut table = vec![vec![0; k]; k];
        for (i, &a) in loops.iter().enumerate() {
            for (j, &b) in loops.iter().enumerate() {
                let p = self.compose(a, b).expect("loops at x compose");
                table[i][j] = index[&p];
            }
        }
        let mut group = FiniteGroup::from_table(table).expect("isotropy is a group");
        group.set_labels(
            loops
                .iter()
                .map(|&a| self.arrow_label(a).to_string())
                .collect(),
        );
        (group, loops)
    }

    /// Partition of objects into connected components: x ~ y iff G(y,x) is nonempty.
    pub fn connected_components(&self) -> Vec<Vec<ObjectId>> {
        let mut comp = vec![usize::MAX; self.n_objects];
        let mut n_comp = 0;
        for x in 0..self.n_objects {
            if comp[x] != usize::MAX {
                continue;
            }
            let c = n_comp;
            n_comp += 1;
            let mut stack = vec![x];
            comp[x] = c;
            while let Some(v) = stack.pop() {
                for a in self.arrows() {
                    let (s, t) = (self.source(a).0, self.target(a).0);
                    for (from, to) in [(s, t), (t, s)] {
                        if from == v && comp[to] == usize::MAX {
                            comp[to] = c;
                            stack.push(to);
                        }
                    }
                }
            }
        }
        let mut blocks = vec![Vec::new(); n_comp];
        for x in 0..self.n_objects {
            blocks[comp[x]].push(ObjectId(x));
        }
        blocks
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// The full subgroupoid on a subset of objects, with the arrow embedding.
    pub fn restrict_to_objects(&self, objects: &[ObjectId]) -> (FiniteGroupoid, Vec<ArrowId>) {
        let obj_index: BTreeMap<ObjectId, usize> =
            objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let arrows: Vec<ArrowId> = self
            .arrows()
            .filter(|&a| {
                obj_index.contains_key(&self.source(a)) && obj_index.contains_key(&self.target(a))
            })
            .collect();
        let arr_index: BTreeMap<ArrowId, usize> =
            arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let n = arrows.len();
        let mut compose = vec![None; n * n];
        for (i, &after) in arrows.iter().enumerate() {
            for (j, &first) in arrows.iter().enumerate() {
                if let Some(c) = self.compose(after, first) {
                    compose[i * n + j] = Some(arr_index[&c]);
                }
            }
        }
        let g = FiniteGroupoid::from_tables(
            objects.len(),
            arrows.iter().map(|&a| obj_index[&self.source(a)]).collect(),
            arrows.iter().map(|&a| obj_index[&self.target(a)]).collect(),
            objects.iter().map(|&x| arr_index[&self.unit(x)]).collect(),
            compose,
            arrows
                .iter()
                .map(|&a| arr_index[&self.inverse(a)])
                .collect(),
            Some(
                objects
                    .iter()
                    .map(|&x| self.object_label(x).to_string())
                    .collect(),
            ),
            Some(
                arrows
                    .iter()
                    .map(|&a| self.arrow_label(a).to_string())
                    .collect(),
            ),
        )
        .expect("restriction of a valid groupoid");
        (g, arrows)
    }
}

/// Exhaustively verifies the groupoid axioms, one report entry per law.
///
/// Associativity iterates only over composable triples; if the triple count
/// exceeds `limits.max_triples` the law is reported as not verified.
pub fn verify_groupoid_axioms(g: &FiniteGroupoid, limits: &Limits) -> Report {
    let mut report = Report::new(format!(
        "groupoid axioms ({} objects, {} arrows)",
        g.n_objects(),
        g.n_arrows()
    ));

    // Source/target coherence of units.
    let unit_st = g.objects().find(|&x| {
        let u = g.unit(x);
        g.source(u) != x || g.target(u) != x
    });
    report.push(
        "unit source/target",
        match unit_st {
            None => CheckOutcome::Pass,
            Some(x) => CheckOutcome::fail(format!(
                "unit of object {} has wrong endpoints",
                g.object_label(x)
            )),
        },
    );

    // Composition endpoint coherence.
    let mut comp_st = CheckOutcome::Pass;
    'comp: for (after, first) in g.composable_pairs() {
        let c = g.compose(after, first).unwrap();
        if g.source(c) != g.source(first) || g.target(c) != g.target(after) {
            comp_st = CheckOutcome::fail(format!(
                "{} ∘ {} has wrong endpoints",
                g.arrow_label(after),
                g.arrow_label(first)
            ));
            break 'comp;
        }
    }
    report.push("composition source/target", comp_st);

    // Associativity over composable triples, capped.
    let mut count: usize = 0;
    let mut assoc = CheckOutcome::Pass;
    'assoc: for (b, a) in g.composable_pairs() {
        for c in g.arrows() {
            if g.source(c) != g.target(b) {
                continue;
            }
            count += 1;
            if count > limits.max_triples {
                assoc = CheckOutcome::NotVerified {
                    reason: format!("triple cap {} exceeded", limits.max_triples),
                };
                break 'assoc;
            }
            let ba = g.compose(b, a).unwrap();
            let cb = g.compose(c, b).unwrap();
            if g.compose(c, ba) != g.compose(cb, a) {
                assoc = CheckOutcome::fail(format!(
                    "({} ∘ {}) ∘ {} differs",
                    g.arrow_label(c),
                    g.arrow_label(b),
                    g.arrow_label(a)
                ));
                break 'assoc;
            }
        }
    }
    report.push("associativity", assoc);

    // Unit law.
    let unit_law = g.arrows().find(|&a| {
        let ls = g.compose(a, g.unit(g.source(a)));
        let lt = g.compose(g.unit(g.target(a)), a);
        ls != Some(a) || lt != Some(a)
    });
    report.push(
        "unit law",
        match unit_law {
            None => CheckOutcome::Pass,
            Some(a) => CheckOutcome::fail(format!("unit law fails for {}", g.arrow_label(a))),
        },
    );

    // Inverse law.
    let inv_law = g.arrows().find(|&a| {
        let i = g.inverse(a);
        g.compose(i, a) != Some(g.unit(g.source(a))) || g.compose(a, i) != Some(g.unit(g.target(a)))
    });
    report.push(
        "inverse law",
        match inv_law {
            None => CheckOutcome::Pass,
            Some(a) => CheckOutcome::fail(format!("inverse law fails for {}", g.arrow_label(a))),
        },
    );

    report
}

/// The pair groupoid G(Ω_n): one arrow (y, x) per ordered pair of objects.
pub fn pair_groupoid(n: usize) -> Result<FiniteGroupoid> {
    if n == 0 {
        return Err(GroupoidError::EmptyObjectSet);
    }
    // arrow (y, x) at index y * n + x
    let n_arrows = n * n;
    let mut source = vec![0; n_arrows];
    let mut target = vec![0; n_arrows];
    let mut labels = vec![String::new(); n_arrows];
    for y in 0..n {
        for x in 0..n {
            source[y * n + x] = x;
            target[y * n + x] = y;
            labels[y * n + x] = format!("({y},{x})");
        }
    }
    let unit = (0..n).map(|x| x * n + x).collect();
    let mut compose = vec![None; n_arrows * n_arrows];
    for z in 0..n {
        for y in 0..n {
            for x in 0..n {
                // (z,y) ∘ (y,x) = (z,x)
                compose[(z * n + y) * n_arrows + (y * n + x)] = Some(z * n + x);
            }
        }
    }
    let inverse = (0..n_arrows).map(|a| (a % n) * n + a / n).collect();
    FiniteGroupoid::from_tables(
        n,
        source,
        target,
        unit,
        compose,
        inverse,
        Some((0..n).map(|i| i.to_string()).collect()),
        Some(labels),
    )
}

/// A group viewed as a one-object groupoid.
pub fn group_groupoid(group: &FiniteGroup) -> FiniteGroupoid {
    let n = group.order();
    let mut compose = vec![None; n * n];
    for a in 0..n {
        for b in 0..n {
            compose[a * n + b] = Some(group.mul(a, b));
        }
    }
    FiniteGroupoid::from_tables(
        1,
        vec![0; n],
        vec![0; n],
        vec![group.identity()],
        compose,
        (0..n).map(|a| group.inv(a)).collect(),
        Some(vec!["*".into()]),
        Some(
            group
                .elements()
                .map(|a| group.label(a).to_string())
                .collect(),
        ),
    )
    .expect("group groupoid tables are well formed")
}

/// Componentwise direct product of two groupoids.
pub fn direct_product(g1: &FiniteGroupoid, g2: &FiniteGroupoid) -> FiniteGroupoid {
    let (n1, n2) = (g1.n_objects(), g2.n_objects());
    let (m1, m2) = (g1.n_arrows(), g2.n_arrows());
    let obj = |x1: usize, x2: usize| x1 * n2 + x2;
    let arr = |a1: usize, a2: usize| a1 * m2 + a2;
    let n_arrows = m1 * m2;
    let mut source = vec![0; n_arrows];
    let mut target = vec![0; n_arrows];
    let mut inverse = vec![0; n_arrows];
    let mut labels = vec![String::new(); n_arrows];
    for a1 in 0..m1 {
        for a2 in 0..m2 {
            let i = arr(a1, a2);
            source[i] = obj(g1.source(ArrowId(a1)).0, g2.source(ArrowId(a2)).0);
            target[i] = obj(g1.target(ArrowId(a1)).0, g2.target(ArrowId(a2)).0);
            inverse[i] = arr(g1.inverse(ArrowId(a1)).0, g2.inverse(ArrowId(a2)).0);
            labels[i] = format!(
                "({},{})",
                g1.arrow_label(ArrowId(a1)),
                g2.arrow_label(ArrowId(a2))
            );
        }
    }
    let mut unit = vec![0; n1 * n2];
    let mut obj_labels = vec![String::new(); n1 * n2];
    for x1 in 0..n1 {
        for x2 in 0..n2 {
            unit[obj(x1, x2)] = arr(g1.unit(ObjectId(x1)).0, g2.unit(ObjectId(x2)).0);
            obj_labels[obj(x1, x2)] = format!(
                "({},{})",
                g1.object_label(ObjectId(x1)),
                g2.object_label(ObjectId(x2))
            );
        }
    }
    let mut compose = vec![None; n_arrows * n_arrows];
    for b1 in 0..m1 {
        for b2 in 0..m2 {
            for a1 in 0..m1 {
                for a2 in 0..m2 {
                    if let (Some(c1), Some(c2)) = (
                        g1.compose(ArrowId(b1), ArrowId(a1)),
                        g2.compose(ArrowId(b2), ArrowId(a2)),
                    ) {
                        compose[arr(b1, b2) * n_arrows + arr(a1, a2)] = Some(arr(c1.0, c2.0));
                    }
                }
            }
        }
    }
    FiniteGroupoid::from_tables(
        n1 * n2,
        source,
        target,
        unit,
        compose,
        inverse,
        Some(obj_labels),
        Some(labels),
    )
    .expect("product tables are well formed")
}

/// The action groupoid Γ ⋉ Ω of a left group action.
///
/// `action[g][x]` is `g · x`; arrows are triples `(g·x, g, x)` and
/// `(h·y, h, y) ∘ (y, g, x) = (hg·x, hg, x)`.
pub fn action_groupoid(group: &FiniteGroup, action: &[Vec<usize>]) -> Result<FiniteGroupoid> {
    let n_objects = action
        .first()
        .map(|row| row.len())
        .ok_or_else(|| GroupoidError::InvalidAction("empty action table".into()))?;
    if n_objects == 0 {
        return Err(GroupoidError::EmptyObjectSet);
    }
    if action.len() != group.order() {
        return Err(GroupoidError::InvalidAction(
            "action table row count differs from group order".into(),
        ));
    }
    for (gi, row) in action.iter().enumerate() {
        if row.len() != n_objects {
            return Err(GroupoidError::InvalidAction(format!(
                "row {gi} has wrong length"
            )));
        }
        for &y in row {
            if y >= n_objects {
                return Err(GroupoidError::InvalidAction(format!(
                    "image {y} out of range in row {gi}"
                )));
            }
        }
    }
    // identity acts trivially
    for x in 0..n_objects {
        if action[group.identity()][x] != x {
            return Err(GroupoidError::InvalidAction(format!(
                "identity moves object {x}"
            )));
        }
    }
    // compatibility: (gh)·x = g·(h·x)
    for gi in group.elements() {
        for h in group.elements() {
            for x in 0..n_objects {
                if action[group.mul(gi, h)][x] != action[gi][action[h][x]] {
                    return Err(GroupoidError::InvalidAction(format!(
                        "compatibility fails at (g={gi}, h={h}, x={x})"
                    )));
                }
            }
        }
    }
    let k = group.order();
    let arr = |gi: usize, x: usize| gi * n_objects + x;
    let n_arrows = k * n_objects;
    let mut source = vec![0; n_arrows];
    let mut target = vec![0; n_arrows];
    let mut inverse = vec![0; n_arrows];
    let mut labels = vec![String::new(); n_arrows];
    for gi in 0..k {
        for x in 0..n_objects {
            let i = arr(gi, x);
            source[i] = x;
            target[i] = action[gi][x];
            inverse[i] = arr(group.inv(gi), action[gi][x]);
            labels[i] = format!("({},{},{})", action[gi][x], group.label(gi), x);
        }
    }
    let unit = (0..n_objects).map(|x| arr(group.identity(), x)).collect();
    let mut compose = vec![None; n_arrows * n_arrows];
    for gi in 0..k {
        for hi in 0..k {
            for x in 0..n_objects {
                let first = arr(hi, x);
                let after = arr(gi, action[hi][x]);
                compose[after * n_arrows + first] = Some(arr(group.mul(gi, hi), x));
            }
        }
    }
    FiniteGroupoid::from_tables(
        n_objects,
        source,
        target,
        unit,
        compose,
        inverse,
        None,
        Some(labels),
    )
}

/// Disjoint union of two groupoids (used for disconnected test cases).
pub fn disjoint_union(g1: &FiniteGroupoid, g2: &FiniteGroupoid) -> FiniteGroupoid {
    let (n1, m1) = (g1.n_objects(), g1.n_arrows());
    let n_objects = n1 + g2.n_objects();
    let n_arrows = m1 + g2.n_arrows();
    let mut source: Vec<usize> = g1.arrows().map(|a| g1.source(a).0).collect();
    source.extend(g2.arrows().map(|a| g2.source(a).0 + n1));
    let mut target: Vec<usize> = g1.arrows().map(|a| g1.target(a).0).collect();
    target.extend(g2.arrows().map(|a| g2.target(a).0 + n1));
    let mut unit: Vec<usize> = g1.objects().map(|x| g1.unit(x).0).collect();
    unit.extend(g2.objects().map(|x| g2.unit(x).0 + m1));
    let mut inverse: Vec<usize> = g1.arrows().map(|a| g1.inverse(a).0).collect();
    inverse.extend(g2.arrows().map(|a| g2.inverse(a).0 + m1));
    let mut compose = vec![None; n_arrows * n_arrows];
    for (b, a) in g1.composable_pairs() {
        compose[b.0 * n_arrows + a.0] = g1.compose(b, a).map(|c| c.0);
    }
    for b in g2.arrows() {
        for a in g2.arrows() {
            if let Some(c) = g2.compose(b, a) {
                compose[(b.0 + m1) * n_arrows + (a.0 + m1)] = Some(c.0 + m1);
            }
        }
    }
    let mut obj_labels: Vec<String> = g1
        .objects()
        .map(|x| format!("L:{}", g1.object_label(x)))
        .collect();
    obj_labels.extend(g2.objects().map(|x| format!("R:{}", g2.object_label(x))));
    let mut arrow_labels: Vec<String> = g1
        .arrows()
        .map(|a| format!("L:{}", g1.arrow_label(a)))
        .collect();
    arrow_labels.extend(g2.arrows().map(|a| format!("R:{}", g2.arrow_label(a))));
    FiniteGroupoid::from_tables(
        n_objects,
        source,
        target,
        unit,
        compose,
        inverse,
        Some(obj_labels),
        Some(arrow_labels),
    )
    .expect("disjoint union tables are well formed")
}

/// The cyclic groupoid C₂(4) over two objects {+, -}, with the conventional
/// transition labels α₁, α₂, β₁, β₂, 1_±, σ_±.
///
/// Structurally this is G(Ω₂) × Z₂; the named constructor fixes the
/// label-to-index mapping so golden tables are stable.
pub fn c2_4() -> FiniteGroupoid {
    // objects: 0 = "+", 1 = "-"
    // arrows:  0 = 1_+   (+,e,+)    1 = 1_-   (-,e,-)
    //          2 = σ_+   (+,σ,+)    3 = σ_-   (-,σ,-)
    //          4 = α_1   (+,σ,-)    5 = α_2   (+,e,-)
    //          6 = β_1   (-,σ,+)    7 = β_2   (-,e,+)
    // target object, group bit, source object per arrow:
    let data: [(usize, usize, usize); 8] = [
        (0, 0, 0),
        (1, 0, 1),
        (0, 1, 0),
        (1, 1, 1),
        (0, 1, 1),
        (0, 0, 1),
        (1, 1, 0),
        (1, 0, 0),
    ];
    let index: BTreeMap<(usize, usize, usize), usize> =
        data.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let source = data.iter().map(|&(_, _, x)| x).collect();
    let target = data.iter().map(|&(y, _, _)| y).collect();
    let unit = vec![0, 1];
    let inverse = data.iter().map(|&(y, s, x)| index[&(x, s, y)]).collect();
    let mut compose = vec![None; 64];
    for (i, &(y2, s2, x2)) in data.iter().enumerate() {
        for (j, &(y1, s1, x1)) in data.iter().enumerate() {
            if x2 == y1 {
                compose[i * 8 + j] = Some(index[&(y2, s2 ^ s1, x1)]);
            }
        }
    }
    FiniteGroupoid::from_tables(
        2,
        source,
        target,
        unit,
        compose,
        inverse,
        Some(vec!["+".into(), "-".into()]),
        Some(vec![
            "1_+".into(),
            "1_-".into(),
            "σ_+".into(),
            "σ_-".into(),
            "α_1".into(),
            "α_2".into(),
            "β_1".into(),
            "β_2".into(),
        ]),
    )
    .expect("C2(4) tables are well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn pair_groupoid_axioms() {
        for n in 1..=4 {
            let g = pair_groupoid(n).unwrap();
            assert_eq!(g.n_arrows(), n * n);
            assert!(verify_groupoid_axioms(&g, &limits()).all_pass());
        }
        assert!(pair_groupoid(0).is_err());
    }

    #[test]
    fn c2_4_axioms_and_counts() {
        let g = c2_4();
        assert_eq!(g.n_objects(), 2);
        assert_eq!(g.n_arrows(), 8);
        assert!(verify_groupoid_axioms(&g, &limits()).all_pass());
        // α_1 ∘ β_1 = (+,σ,-)∘(-,σ,+) = (+,e,+) = 1_+
        let a1 = g.arrow_by_label("α_1").unwrap();
        let b1 = g.arrow_by_label("β_1").unwrap();
        assert_eq!(g.compose(a1, b1), g.arrow_by_label("1_+"));
    }

    #[test]
    fn corrupted_inverse_table_fails_inverse_law() {
        let g = pair_groupoid(2).unwrap();
        let broken = FiniteGroupoid::from_tables(
            2,
            g.arrows().map(|a| g.source(a).0).collect(),
            g.arrows().map(|a| g.target(a).0).collect(),
            g.objects().map(|x| g.unit(x).0).collect(),
            (0..16)
                .map(|i| g.compose(ArrowId(i / 4), ArrowId(i % 4)).map(|c| c.0))
                .collect(),
            // corrupt: inverse = identity map
            (0..4).collect(),
            None,
            None,
        )
        .unwrap();
        let report = verify_groupoid_axioms(&broken, &limits());
        assert!(!report.all_pass());
        assert!(matches!(
            report.outcome("inverse law"),
            Some(CheckOutcome::Fail { .. })
        ));
    }

    #[test]
    fn group_groupoid_of_z3() {
        let g = group_groupoid(&FiniteGroup::cyclic(3));
        assert_eq!(g.n_objects(), 1);
        assert_eq!(g.n_arrows(), 3);
        assert!(verify_groupoid_axioms(&g, &limits()).all_pass());
    }

    #[test]
    fn product_counts_and_axioms() {
        let p2 = pair_groupoid(2).unwrap();
        let z2 = group_groupoid(&FiniteGroup::cyclic(2));
        let prod = direct_product(&p2, &z2);
        assert_eq!(prod.n_objects(), 2);
        assert_eq!(prod.n_arrows(), 8);
        assert!(verify_groupoid_axioms(&prod, &limits()).all_pass());

        let pp = direct_product(&p2, &p2);
        assert_eq!(pp.n_objects(), 4);
        assert_eq!(pp.n_arrows(), 16);
        assert!(verify_groupoid_axioms(&pp, &limits()).all_pass());
    }

    #[test]
    fn action_groupoid_cyclic_shift() {
        let z3 = FiniteGroup::cyclic(3);
        let action: Vec<Vec<usize>> = (0..3)
            .map(|g| (0..3).map(|x| (x + g) % 3).collect())
            .collect();
        let g = action_groupoid(&z3, &action).unwrap();
        assert_eq!(g.n_arrows(), 9);
        assert!(verify_groupoid_axioms(&g, &limits()).all_pass());
        // free transitive action: trivial isotropy everywhere
        for x in g.objects() {
            assert_eq!(g.isotropy_group(x).0.order(), 1);
        }
    }

    #[test]
    fn invalid_action_rejected() {
        let z2 = FiniteGroup::cyclic(2);
        // σ does not act as an involution compatible with the table
        let action = vec![vec![0, 1, 2], vec![1, 2, 0]];
        assert!(action_groupoid(&z2, &action).is_err());
    }

    #[test]
    fn isotropy_of_c2_4_is_z2() {
        let g = c2_4();
        let plus = g.object_by_label("+").unwrap();
        let (iso, loops) = g.isotropy_group(plus);
        assert_eq!(iso.order(), 2);
        assert!(iso.is_isomorphic_to(&FiniteGroup::cyclic(2)));
        let labels: Vec<&str> = loops.iter().map(|&a| g.arrow_label(a)).collect();
        assert_eq!(labels, vec!["1_+", "σ_+"]);
    }

    #[test]
    fn hom_sets() {
        let g = c2_4();
        let plus = g.object_by_label("+").unwrap();
        let minus = g.object_by_label("-").unwrap();
        let hom = g.hom_set(plus, minus);
        let labels: Vec<&str> = hom.iter().map(|&a| g.arrow_label(a)).collect();
        assert_eq!(labels, vec!["α_1", "α_2"]);
        let p2 = pair_groupoid(2).unwrap();
        assert_eq!(p2.hom_set(ObjectId(1), ObjectId(0)).len(), 1);
    }

    #[test]
    fn components() {
        let p3 = pair_groupoid(3).unwrap();
        assert_eq!(p3.connected_components().len(), 1);
        let two = disjoint_union(&pair_groupoid(2).unwrap(), &pair_groupoid(2).unwrap());
        assert_eq!(two.connected_components().len(), 2);
        assert!(verify_groupoid_axioms(&two, &limits()).all_pass());
        assert_eq!(c2_4().connected_components().len(), 1);
        // cross-component hom-sets are empty
        assert!(two.hom_set(ObjectId(0), ObjectId(2)).is_empty());
    }

    #[test]
    fn inverse_involution_and_units() {
        let g = c2_4();
        for a in g.arrows() {
            assert_eq!(g.inverse(g.inverse(a)), a);
        }
        for x in g.objects() {
            assert_eq!(g.inverse(g.unit(x)), g.unit(x));
        }
    }
}
