//! Groupoid morphisms: functors, kernels, normal subgroupoids, quotients,
//! isomorphism search, and the decomposition of a connected groupoid into a
//! pair groupoid times its isotropy group.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::config::Limits;
use crate::error::{GroupoidError, Result};
use crate::group::FiniteGroup;
use crate::groupoid::{
    direct_product, group_groupoid, pair_groupoid, ArrowId, FiniteGroupoid, ObjectId,
};
use crate::report::{CheckOutcome, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// A (co- or contravariant) functor between finite groupoids, stored as dense
/// object and arrow maps over the domain indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidFunctor {
    pub object_map: Vec<ObjectId>,
    pub arrow_map: Vec<ArrowId>,
    pub variance: Variance,
}

impl GroupoidFunctor {
    pub fn identity(g: &FiniteGroupoid) -> Self {
        GroupoidFunctor {
            object_map: g.objects().collect(),
            arrow_map: g.arrows().collect(),
            variance: Variance::Covariant,
        }
    }

    pub fn on_object(&self, x: ObjectId) -> ObjectId {
        self.object_map[x.0]
    }

    pub fn on_arrow(&self, a: ArrowId) -> ArrowId {
        self.arrow_map[a.0]
    }

    pub fn is_bijective(&self, cod: &FiniteGroupoid) -> bool {
        let obj: BTreeSet<ObjectId> = self.object_map.iter().copied().collect();
        let arr: BTreeSet<ArrowId> = self.arrow_map.iter().copied().collect();
        obj.len() == self.object_map.len()
            && arr.len() == self.arrow_map.len()
            && obj.len() == cod.n_objects()
            && arr.len() == cod.n_arrows()
    }

    /// Composes with another functor: `self` after `first`.
    pub fn after(&self, first: &GroupoidFunctor) -> GroupoidFunctor {
        GroupoidFunctor {
            object_map: first
                .object_map
                .iter()
                .map(|&x| self.on_object(x))
                .collect(),
            arrow_map: first.arrow_map.iter().map(|&a| self.on_arrow(a)).collect(),
            variance: if self.variance == first.variance {
                Variance::Covariant
            } else {
                Variance::Contravariant
            },
        }
    }
}

/// Exhaustively checks the functor laws of `f : dom -> cod`.
///
/// For a contravariant functor, sources and targets swap and composition
/// order reverses.
pub fn verify_functor(dom: &FiniteGroupoid, cod: &FiniteGroupoid, f: &GroupoidFunctor) -> Report {
    let mut report = Report::new("functor laws");
    if f.object_map.len() != dom.n_objects() || f.arrow_map.len() != dom.n_arrows() {
        report.push(
            "map shapes",
            CheckOutcome::fail("object/arrow map lengths do not match the domain"),
        );
        return report;
    }
    if f.object_map.iter().any(|x| x.0 >= cod.n_objects())
        || f.arrow_map.iter().any(|a| a.0 >= cod.n_arrows())
    {
        report.push(
            "map shapes",
            CheckOutcome::fail("image index out of range in the codomain"),
        );
        return report;
    }
    report.push("map shapes", CheckOutcome::Pass);

    let contra = f.variance == Variance::Contravariant;
    let endpoints = dom.arrows().find(|&a| {
        let fa = f.on_arrow(a);
        let (fs, ft) = (f.on_object(dom.source(a)), f.on_object(dom.target(a)));
        if contra {
            cod.source(fa) != ft || cod.target(fa) != fs
        } else {
            cod.source(fa) != fs || cod.target(fa) != ft
        }
    });
    report.push(
        "endpoint coherence",
        match endpoints {
            None => CheckOutcome::Pass,
            Some(a) => CheckOutcome::fail(format!(
                "image of {} has wrong endpoints",
                dom.arrow_label(a)
            )),
        },
    );

    let units = dom
        .objects()
        .find(|&x| f.on_arrow(dom.unit(x)) != cod.unit(f.on_object(x)));
    report.push(
        "units preserved",
        match units {
            None => CheckOutcome::Pass,
            Some(x) => CheckOutcome::fail(format!(
                "unit of {} is not sent to a unit",
                dom.object_label(x)
            )),
        },
    );

    let mut comp = CheckOutcome::Pass;
    'outer: for (b, a) in dom.composable_pairs() {
        let lhs = f.on_arrow(dom.compose(b, a).unwrap());
        let rhs = if contra {
            cod.compose(f.on_arrow(a), f.on_arrow(b))
        } else {
            cod.compose(f.on_arrow(b), f.on_arrow(a))
        };
        if rhs != Some(lhs) {
            comp = CheckOutcome::fail(format!(
                "composition not preserved at ({}, {})",
                dom.arrow_label(b),
                dom.arrow_label(a)
            ));
            break 'outer;
        }
    }
    report.push("composition preserved", comp);
    report
}

/// Arrows of `dom` sent to units by `f` — for a functor that is injective on
/// objects these are exactly the loops collapsing in the image.
pub fn kernel(dom: &FiniteGroupoid, cod: &FiniteGroupoid, f: &GroupoidFunctor) -> Vec<ArrowId> {
    dom.arrows()
        .filter(|&a| cod.is_unit(f.on_arrow(a)))
        .collect()
}

/// A wide, totally isotropic subgroupoid closed under conjugation, given by
/// its sorted arrow carrier inside a parent groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalSubgroupoid {
    arrows: Vec<ArrowId>,
}

impl NormalSubgroupoid {
    /// Validates the carrier with [`check_normal_subgroupoid`] before
    /// accepting it.
    pub fn new(parent: &FiniteGroupoid, mut arrows: Vec<ArrowId>) -> Result<Self> {
        arrows.sort();
        arrows.dedup();
        let report = check_normal_subgroupoid(parent, &arrows);
        if let Some(check) = report.first_failure() {
            return Err(GroupoidError::ValidationFailed(format!(
                "not a normal subgroupoid: {check}"
            )));
        }
        Ok(NormalSubgroupoid { arrows })
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn contains(&self, a: ArrowId) -> bool {
        self.arrows.binary_search(&a).is_ok()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Checks the normal-subgroupoid laws for an arrow subset: wide (contains all
/// units), totally isotropic (loops only), closed under composition, inverse,
/// and conjugation by arbitrary parent arrows.
pub fn check_normal_subgroupoid(g: &FiniteGroupoid, arrows: &[ArrowId]) -> Report {
    let set: BTreeSet<ArrowId> = arrows.iter().copied().collect();
    let mut report = Report::new("normal subgroupoid laws");

    let wide = g.objects().find(|&x| !set.contains(&g.unit(x)));
    report.push(
        "wide",
        match wide {
            None => CheckOutcome::Pass,
            Some(x) => CheckOutcome::fail(format!("missing unit of {}", g.object_label(x))),
        },
    );

    let isotropic = set.iter().find(|&&a| g.source(a) != g.target(a));
    report.push(
        "totally isotropic",
        match isotropic {
            None => CheckOutcome::Pass,
            Some(&a) => CheckOutcome::fail(format!("{} is not a loop", g.arrow_label(a))),
        },
    );

    let mut closed = CheckOutcome::Pass;
    'comp: for &b in &set {
        for &a in &set {
            if let Some(c) = g.compose(b, a) {
                if !set.contains(&c) {
                    closed = CheckOutcome::fail(format!(
                        "{} ∘ {} escapes the carrier",
                        g.arrow_label(b),
                        g.arrow_label(a)
                    ));
                    break 'comp;
                }
            }
        }
    }
    report.push("closed under composition", closed);

    let inv = set.iter().find(|&&a| !set.contains(&g.inverse(a)));
    report.push(
        "closed under inverse",
        match inv {
            None => CheckOutcome::Pass,
            Some(&a) => CheckOutcome::fail(format!("inverse of {} missing", g.arrow_label(a))),
        },
    );

    let mut conj = CheckOutcome::Pass;
    'conj: for &n in &set {
        for gamma in g.arrows() {
            if g.source(gamma) != g.source(n) {
                continue;
            }
            // undefined when n is not a loop; that is flagged by the isotropy law
            let Some(c) = g.chain(&[gamma, n, g.inverse(gamma)]) else {
                continue;
            };
            if !set.contains(&c) {
                conj = CheckOutcome::fail(format!(
                    "conjugate of {} by {} escapes the carrier",
                    g.arrow_label(n),
                    g.arrow_label(gamma)
                ));
                break 'conj;
            }
        }
    }
    report.push("closed under conjugation", conj);
    report
}

/// A quotient groupoid together with the class structure and projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub groupoid: FiniteGroupoid,
    /// Class index of each parent arrow.
    pub class_of: Vec<usize>,
    /// Parent arrows in each class, sorted.
    pub classes: Vec<Vec<ArrowId>>,
    /// Projection functor parent -> quotient.
    pub projection: GroupoidFunctor,
}

/// Quotients `g` by a normal subgroupoid: arrows are two-sided translation
/// classes β ~ α iff β = n₂ ∘ α ∘ n₁ with n₁, n₂ in the carrier; objects are
/// unchanged. Well-definedness of class composition is verified exhaustively.
pub fn quotient(g: &FiniteGroupoid, n: &NormalSubgroupoid) -> Result<Quotient> {
    let n_arrows = g.n_arrows();
    let mut class_of = vec![usize::MAX; n_arrows];
    let mut classes: Vec<Vec<ArrowId>> = Vec::new();
    for a in g.arrows() {
        if class_of[a.0] != usize::MAX {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for &n2 in n.arrows() {
            for &n1 in n.arrows() {
                if let Some(b) = g.chain(&[n2, a, n1]) {
                    orbit.insert(b);
                }
            }
        }
        if !orbit.contains(&a) {
            return Err(GroupoidError::ValidationFailed(format!(
                "translation orbit of {} does not contain it (carrier not wide?)",
                g.arrow_label(a)
            )));
        }
        let c = classes.len();
        for &b in &orbit {
            if class_of[b.0] != usize::MAX {
                return Err(GroupoidError::ValidationFailed(
                    "translation classes are not disjoint".into(),
                ));
            }
            class_of[b.0] = c;
        }
        classes.push(orbit.into_iter().collect());
    }

    // endpoints must be constant on each class
    for class in &classes {
        let (s0, t0) = (g.source(class[0]), g.target(class[0]));
        for &b in class {
            if g.source(b) != s0 || g.target(b) != t0 {
                return Err(GroupoidError::ValidationFailed(
                    "class endpoints are not constant".into(),
                ));
            }
        }
    }

    // well-definedness: [β] ∘ [α] is representative-independent
    for (b, a) in g.composable_pairs() {
        let expected = class_of[g.compose(b, a).unwrap().0];
        for &b2 in &classes[class_of[b.0]] {
            for &a2 in &classes[class_of[a.0]] {
                match g.compose(b2, a2) {
                    Some(c) if class_of[c.0] == expected => {}
                    _ => {
                        return Err(GroupoidError::ValidationFailed(format!(
                            "class composition ill-defined at ({}, {})",
                            g.arrow_label(b2),
                            g.arrow_label(a2)
                        )))
                    }
                }
            }
        }
    }

    let k = classes.len();
    let rep = |c: usize| classes[c][0];
    let mut compose = vec![None; k * k];
    for b in 0..k {
        for a in 0..k {
            if let Some(c) = g.compose(rep(b), rep(a)) {
                compose[b * k + a] = Some(class_of[c.0]);
            }
        }
    }
    let labels = classes
        .iter()
        .map(|class| format!("[{}]", g.arrow_label(class[0])))
        .collect();
    let groupoid = FiniteGroupoid::from_tables(
        g.n_objects(),
        (0..k).map(|c| g.source(rep(c)).0).collect(),
        (0..k).map(|c| g.target(rep(c)).0).collect(),
        g.objects().map(|x| class_of[g.unit(x).0]).collect(),
        compose,
        (0..k).map(|c| class_of[g.inverse(rep(c)).0]).collect(),
        Some(g.objects().map(|x| g.object_label(x).to_string()).collect()),
        Some(labels),
    )?;
    let projection = GroupoidFunctor {
        object_map: g.objects().collect(),
        arrow_map: class_of.iter().map(|&c| ArrowId(c)).collect(),
        variance: Variance::Covariant,
    };
    Ok(Quotient {
        groupoid,
        class_of,
        classes,
        projection,
    })
}

fn object_signature(g: &FiniteGroupoid, x: ObjectId) -> (usize, Vec<usize>) {
    let loops = g.hom_set(x, x).len();
    let mut homs: Vec<usize> = g.objects().map(|y| g.hom_set(y, x).len()).collect();
    homs.sort();
    (loops, homs)
}

/// Searches for a covariant isomorphism `g1 -> g2` by backtracking over
/// object bijections (pruned by hom-set signatures) and then arrow maps.
/// Returns the lexicographically first witness in domain index order, or
/// `None` if the groupoids are not isomorphic.
pub fn find_isomorphism(
    g1: &FiniteGroupoid,
    g2: &FiniteGroupoid,
    limits: &Limits,
) -> Result<Option<GroupoidFunctor>> {
    if g1.n_objects() != g2.n_objects() || g1.n_arrows() != g2.n_arrows() {
        return Ok(None);
    }
    if g1.n_objects() > limits.max_iso_objects || g1.n_arrows() > limits.max_iso_arrows {
        return Err(GroupoidError::CapExceeded(format!(
            "isomorphism search capped at {} objects / {} arrows",
            limits.max_iso_objects, limits.max_iso_arrows
        )));
    }
    let sig1: Vec<_> = g1.objects().map(|x| object_signature(g1, x)).collect();
    let sig2: Vec<_> = g2.objects().map(|x| object_signature(g2, x)).collect();
    {
        let mut s1 = sig1.clone();
        let mut s2 = sig2.clone();
        s1.sort();
        s2.sort();
        if s1 != s2 {
            return Ok(None);
        }
    }

    struct Search<'a> {
        g1: &'a FiniteGroupoid,
        g2: &'a FiniteGroupoid,
        sig1: &'a [(usize, Vec<usize>)],
        sig2: &'a [(usize, Vec<usize>)],
        obj_map: Vec<Option<ObjectId>>,
        obj_used: Vec<bool>,
        arr_map: Vec<Option<ArrowId>>,
        arr_used: Vec<bool>,
    }

    impl Search<'_> {
        fn assign_objects(&mut self, x: usize) -> bool {
            if x == self.g1.n_objects() {
                return self.assign_arrows(0);
            }
            for y in 0..self.g2.n_objects() {
                if self.obj_used[y] || self.sig1[x] != self.sig2[y] {
                    continue;
                }
                self.obj_map[x] = Some(ObjectId(y));
                self.obj_used[y] = true;
                if self.assign_objects(x + 1) {
                    return true;
                }
                self.obj_map[x] = None;
                self.obj_used[y] = false;
            }
            false
        }

        fn consistent(&self, a: usize, image: ArrowId) -> bool {
            let g1 = self.g1;
            let g2 = self.g2;
            let a = ArrowId(a);
            if g2.source(image) != self.obj_map[g1.source(a).0].unwrap()
                || g2.target(image) != self.obj_map[g1.target(a).0].unwrap()
            {
                return false;
            }
            if g1.is_unit(a) != g2.is_unit(image) {
                return false;
            }
            if let Some(inv_img) = self.arr_map[g1.inverse(a).0] {
                if g2.inverse(image) != inv_img {
                    return false;
                }
            }
            // composition constraints against already-assigned arrows
            for b in g1.arrows() {
                let Some(b_img) = self.arr_map[b.0] else {
                    continue;
                };
                for (p, q, p_img, q_img) in [(a, b, image, b_img), (b, a, b_img, image)] {
                    if let Some(c) = g1.compose(p, q) {
                        let c_img = g2.compose(p_img, q_img);
                        match self.arr_map[c.0] {
                            Some(m) => {
                                if c_img != Some(m) {
                                    return false;
                                }
                            }
                            None => {
                                if c_img.is_none() {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
            true
        }

        fn assign_arrows(&mut self, a: usize) -> bool {
            if a == self.g1.n_arrows() {
                return true;
            }
            for b in 0..self.g2.n_arrows() {
                if self.arr_used[b] || !self.consistent(a, ArrowId(b)) {
                    continue;
                }
                self.arr_map[a] = Some(ArrowId(b));
                self.arr_used[b] = true;
                if self.assign_arrows(a + 1) {
                    return true;
                }
                self.arr_map[a] = None;
                self.arr_used[b] = false;
            }
            false
        }
    }

    let mut search = Search {
        g1,
        g2,
        sig1: &sig1,
        sig2: &sig2,
        obj_map: vec![None; g1.n_objects()],
        obj_used: vec![false; g2.n_objects()],
        arr_map: vec![None; g1.n_arrows()],
        arr_used: vec![false; g2.n_arrows()],
    };
    if !search.assign_objects(0) {
        return Ok(None);
    }
    let f = GroupoidFunctor {
        object_map: search.obj_map.into_iter().map(Option::unwrap).collect(),
        arrow_map: search.arr_map.into_iter().map(Option::unwrap).collect(),
        variance: Variance::Covariant,
    };
    debug_assert!(verify_functor(g1, g2, &f).all_pass() && f.is_bijective(g2));
    Ok(Some(f))
}

pub fn is_isomorphic(g1: &FiniteGroupoid, g2: &FiniteGroupoid, limits: &Limits) -> Result<bool> {
    Ok(find_isomorphism(g1, g2, limits)?.is_some())
}

/// Decomposition of a connected groupoid as pair groupoid × isotropy group.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub base: ObjectId,
    /// `spanning[x]` is the chosen arrow base -> x (lowest arrow index).
    pub spanning: Vec<ArrowId>,
    pub isotropy: FiniteGroup,
    /// Arrow carrier of the isotropy group at the base object.
    pub isotropy_arrows: Vec<ArrowId>,
    /// The model G(Ω_n) × G_base the groupoid is identified with.
    pub model: FiniteGroupoid,
    /// Verified isomorphism from the groupoid onto the model.
    pub iso: GroupoidFunctor,
}

/// Decomposes a connected groupoid: fixes the lowest-index object as base,
/// picks the lowest-index spanning arrow base → x for every object, and maps
/// α : x → y to ((y, x), σ_y⁻¹ ∘ α ∘ σ_x) in G(Ω_n) × G_base.
pub fn decompose_connected(g: &FiniteGroupoid) -> Result<Decomposition> {
    if !g.is_connected() {
        return Err(GroupoidError::InvalidInput(
            "decomposition as a product requires a connected groupoid".into(),
        ));
    }
    let base = ObjectId(0);
    let spanning: Vec<ArrowId> = g
        .objects()
        .map(|x| {
            g.hom_set(x, base)
                .into_iter()
                .min()
                .expect("connected: hom(x, base) nonempty")
        })
        .collect();
    let (isotropy, isotropy_arrows) = g.isotropy_group(base);
    let loop_index: BTreeMap<ArrowId, usize> = isotropy_arrows
        .iter()
        .enumerate()
        .map(|(i, &a)| (a, i))
        .collect();

    let n = g.n_objects();
    let k = isotropy.order();
    let model = direct_product(&pair_groupoid(n)?, &group_groupoid(&isotropy));
    // model arrow index of (pair (y,x), loop gi): pair arrows are y*n+x, so
    // the product index is (y*n + x)*k + gi; model objects are (x, *) = x.
    let arrow_map = g
        .arrows()
        .map(|a| {
            let (x, y) = (g.source(a).0, g.target(a).0);
            let conjugate = g
                .chain(&[g.inverse(spanning[y]), a, spanning[x]])
                .expect("spanning arrows make the conjugate defined");
            ArrowId((y * n + x) * k + loop_index[&conjugate])
        })
        .collect();
    let iso = GroupoidFunctor {
        object_map: g.objects().collect(),
        arrow_map,
        variance: Variance::Covariant,
    };
    let report = verify_functor(g, &model, &iso);
    if !report.all_pass() || !iso.is_bijective(&model) {
        return Err(GroupoidError::ValidationFailed(format!(
            "decomposition map is not an isomorphism: {:?}",
            report.first_failure()
        )));
    }
    Ok(Decomposition {
        base,
        spanning,
        isotropy,
        isotropy_arrows,
        model,
        iso,
    })
}

/// Decomposes each connected component independently.
pub fn decompose(g: &FiniteGroupoid) -> Result<Vec<(Vec<ObjectId>, Decomposition)>> {
    g.connected_components()
        .into_iter()
        .map(|objs| {
            let (sub, _) = g.restrict_to_objects(&objs);
            Ok((objs, decompose_connected(&sub)?))
        })
        .collect()
}
