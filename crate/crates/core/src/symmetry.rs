//! Global symmetries of a symmetroid: bisections of the cell set under
//! vertical composition, flatness and its cocycle obstruction, the induced
//! (anti-)automorphisms, natural transformations, inner symmetries, and the
//! factorization of inner symmetries inside the canonical symmetroid.

use std::collections::BTreeSet;

use crate::bisections::Bisection;
use crate::config::Limits;
use crate::error::{GroupoidError, Result};
use crate::group::FiniteGroup;
use crate::groupoid::{ArrowId, FiniteGroupoid, ObjectId};
use crate::morphisms::{verify_functor, GroupoidFunctor, Variance};
use crate::report::{CheckOutcome, Report};
use crate::symmetroid::{canonical_symmetroid, Parity, TripleCell, TwoGroupoid};

/// A bisection of a symmetroid S ⇉ G: one cell per base arrow, sourced at
/// that arrow, whose target map `φ_b(α) = t(b_s(α))` permutes the arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetroidBisection {
    s_map: Vec<usize>,
}

impl SymmetroidBisection {
    pub fn new(s: &TwoGroupoid, s_map: Vec<usize>) -> Result<Self> {
        let g = &s.groupoid;
        if s_map.len() != g.n_arrows() {
            return Err(GroupoidError::InvalidInput(format!(
                "expected one cell per arrow ({}), got {}",
                g.n_arrows(),
                s_map.len()
            )));
        }
        let mut seen = vec![false; g.n_arrows()];
        for (a, &c) in s_map.iter().enumerate() {
            if c >= s.n_cells() {
                return Err(GroupoidError::InvalidInput(format!(
                    "cell index {c} out of range"
                )));
            }
            if s.source(c) != ArrowId(a) {
                return Err(GroupoidError::ValidationFailed(format!(
                    "cell {} is not sourced at arrow {}",
                    s.cell_label(c),
                    g.arrow_label(ArrowId(a))
                )));
            }
            let t = s.target(c).0;
            if seen[t] {
                return Err(GroupoidError::ValidationFailed(format!(
                    "target arrow {} hit twice: φ_b is not a bijection",
                    g.arrow_label(ArrowId(t))
                )));
            }
            seen[t] = true;
        }
        Ok(SymmetroidBisection { s_map })
    }

    /// The bisection whose cell at every arrow is the vertical unit.
    pub fn identity(s: &TwoGroupoid) -> Result<Self> {
        let s_map = s
            .groupoid
            .arrows()
            .map(|a| {
                s.v_unit(a).ok_or_else(|| {
                    GroupoidError::ValidationFailed(format!(
                        "no vertical unit over arrow {}",
                        s.groupoid.arrow_label(a)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SymmetroidBisection { s_map })
    }

    pub fn cell_at(&self, a: ArrowId) -> usize {
        self.s_map[a.0]
    }

    pub fn cells(&self) -> &[usize] {
        &self.s_map
    }

    /// The induced arrow permutation φ_b.
    pub fn phi(&self, s: &TwoGroupoid) -> Vec<ArrowId> {
        self.s_map.iter().map(|&c| s.target(c)).collect()
    }

    /// Vertical bisection product: `(self · other)_s(α) =
    /// self_s(φ_other(α)) ∘_V other_s(α)`.
    pub fn compose(&self, s: &TwoGroupoid, other: &SymmetroidBisection) -> Result<Self> {
        let s_map = s
            .groupoid
            .arrows()
            .map(|a| {
                let inner = other.cell_at(a);
                let outer = self.cell_at(s.target(inner));
                s.v_compose(outer, inner).ok_or_else(|| {
                    GroupoidError::UndefinedComposition(format!(
                        "vertical composite of {} and {} is not a cell of the set",
                        s.cell_label(outer),
                        s.cell_label(inner)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SymmetroidBisection::new(s, s_map)
    }

    pub fn inverse(&self, s: &TwoGroupoid) -> Result<Self> {
        let mut s_map = vec![usize::MAX; self.s_map.len()];
        for &c in &self.s_map {
            let inv = s.v_inverse(c).ok_or_else(|| {
                GroupoidError::UndefinedComposition(format!(
                    "cell {} has no vertical inverse in the set",
                    s.cell_label(c)
                ))
            })?;
            s_map[s.target(c).0] = inv;
        }
        SymmetroidBisection::new(s, s_map)
    }

    pub fn label(&self, s: &TwoGroupoid) -> String {
        let parts: Vec<String> = self.s_map.iter().map(|&c| s.cell_label(c)).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Verdict of the flatness check on a symmetroid bisection.
#[derive(Debug, Clone)]
pub struct FlatnessReport {
    pub flat: bool,
    /// Variance of the induced arrow map when flat: covariant when
    /// φ_b(α'∘α) = φ_b(α')∘φ_b(α), contravariant when the order reverses.
    pub variance: Option<Variance>,
    pub failure: Option<String>,
}

/// Checks `b_s(α') ∘_H b_s(α) = b_s(α'∘α)` (or `b_s(α∘α')`) for every
/// composable pair, and classifies the induced permutation as a homomorphism
/// or antihomomorphism of the arrow composition.
pub fn is_flat(s: &TwoGroupoid, b: &SymmetroidBisection) -> FlatnessReport {
    let g = &s.groupoid;
    for (after, first) in g.composable_pairs() {
        let comp = g.compose(after, first).expect("composable");
        let h = s.h_compose(b.cell_at(after), b.cell_at(first));
        let co = h == Some(b.cell_at(comp));
        let contra = match g.compose(first, after) {
            Some(rev) => h.is_some() && h == Some(b.cell_at(rev)),
            None => false,
        };
        if !co && !contra {
            return FlatnessReport {
                flat: false,
                variance: None,
                failure: Some(format!(
                    "pair ({}, {}): {} ∘_H {} does not reproduce the chosen cell over the composite",
                    g.arrow_label(after),
                    g.arrow_label(first),
                    s.cell_label(b.cell_at(after)),
                    s.cell_label(b.cell_at(first)),
                )),
            };
        }
    }
    let phi = b.phi(s);
    let mut co_ok = true;
    let mut anti_ok = true;
    for (after, first) in g.composable_pairs() {
        let comp = g.compose(after, first).expect("composable");
        co_ok &= g.compose(phi[after.0], phi[first.0]) == Some(phi[comp.0]);
        anti_ok &= g.compose(phi[first.0], phi[after.0]) == Some(phi[comp.0]);
    }
    let variance = if co_ok {
        Some(Variance::Covariant)
    } else if anti_ok {
        Some(Variance::Contravariant)
    } else {
        None
    };
    FlatnessReport {
        flat: variance.is_some(),
        variance,
        failure: if variance.is_some() {
            None
        } else {
            Some(
                "cell identities hold but φ_b is neither a homomorphism nor an antihomomorphism"
                    .into(),
            )
        },
    }
}

/// The vertical defect γ(α', α) = (b_s(α'∘α))⁻ᵛ ∘_V (b_s(α') ∘_H b_s(α)),
/// a vertical loop at α'∘α; trivial for every pair iff `b` is flat covariant.
pub fn compute_cocycle(
    s: &TwoGroupoid,
    b: &SymmetroidBisection,
    after: ArrowId,
    first: ArrowId,
) -> Result<usize> {
    let g = &s.groupoid;
    let comp = g.compose(after, first).ok_or_else(|| {
        GroupoidError::UndefinedComposition(format!(
            "{} and {} are not composable",
            g.arrow_label(after),
            g.arrow_label(first)
        ))
    })?;
    let h = s
        .h_compose(b.cell_at(after), b.cell_at(first))
        .ok_or_else(|| {
            GroupoidError::UndefinedComposition(
                "horizontal composite of the chosen cells is undefined".into(),
            )
        })?;
    let inv = s.v_inverse(b.cell_at(comp)).ok_or_else(|| {
        GroupoidError::UndefinedComposition(
            "cell over the composite has no vertical inverse".into(),
        )
    })?;
    let gamma = s.v_compose(inv, h).ok_or_else(|| {
        GroupoidError::UndefinedComposition("vertical composite defining γ is undefined".into())
    })?;
    debug_assert_eq!(s.source(gamma), comp);
    if s.target(gamma) != comp {
        return Err(GroupoidError::ValidationFailed(format!(
            "γ is not a vertical loop at {}",
            g.arrow_label(comp)
        )));
    }
    Ok(gamma)
}

/// The group 𝒮♭ of flat bisections of a symmetroid.
///
/// When the full set of cell-level flats is closed under the bisection
/// product it is the group carrier. Products of antihomomorphic flats can
/// pick up a vertical-loop defect over noncommutative isotropy, in which
/// case the carrier falls back to the homomorphic flats (always a subgroup)
/// and the antihomomorphic ones are reported in `excluded`.
#[derive(Debug, Clone)]
pub struct FlatBisectionGroup {
    pub elements: Vec<SymmetroidBisection>,
    pub variances: Vec<Variance>,
    pub group: FiniteGroup,
    pub excluded: Vec<SymmetroidBisection>,
}

impl FlatBisectionGroup {
    pub fn index_of(&self, b: &SymmetroidBisection) -> Option<usize> {
        self.elements.iter().position(|e| e == b)
    }

    pub fn identity_index(&self) -> usize {
        self.group.identity()
    }
}

/// Enumerates 𝒮♭ by backtracking over per-arrow cell choices with flatness
/// and injectivity pruning, then builds the group table under the vertical
/// bisection product. Closure (the product of flats being flat) is re-checked
/// on every table entry.
pub fn flat_bisection_group(s: &TwoGroupoid, limits: &Limits) -> Result<FlatBisectionGroup> {
    let g = &s.groupoid;
    let n = g.n_arrows();
    // constraints grouped by the largest arrow index they mention, so each is
    // checked exactly once, as soon as all three cells are assigned
    let mut pair_at: Vec<Vec<(ArrowId, ArrowId, ArrowId)>> = vec![Vec::new(); n.max(1)];
    for (after, first) in g.composable_pairs() {
        let comp = g.compose(after, first).expect("composable");
        let hi = after.0.max(first.0).max(comp.0);
        pair_at[hi].push((after, first, comp));
    }

    struct Search<'a> {
        s: &'a TwoGroupoid,
        g: &'a FiniteGroupoid,
        pair_at: &'a [Vec<(ArrowId, ArrowId, ArrowId)>],
        chosen: Vec<usize>,
        used_target: Vec<bool>,
        found: Vec<Vec<usize>>,
        nodes: usize,
        node_cap: usize,
        result_cap: usize,
    }

    impl Search<'_> {
        fn consistent(&self, k: usize) -> bool {
            for &(after, first, comp) in &self.pair_at[k] {
                let h = self.s.h_compose(self.chosen[after.0], self.chosen[first.0]);
                let co = h == Some(self.chosen[comp.0]);
                let contra = match self.g.compose(first, after) {
                    Some(rev) if rev.0 <= k => h.is_some() && h == Some(self.chosen[rev.0]),
                    // the reversed composite exists but is not assigned yet:
                    // keep the branch alive, the pair re-appears at rev's index
                    Some(_) => h.is_some(),
                    None => false,
                };
                if !co && !contra {
                    return false;
                }
            }
            true
        }

        fn grow(&mut self, k: usize) -> Result<()> {
            if k == self.chosen.len() {
                self.found.push(self.chosen.clone());
                if self.found.len() > self.result_cap {
                    return Err(GroupoidError::CapExceeded(format!(
                        "more than {} flat bisections",
                        self.result_cap
                    )));
                }
                return Ok(());
            }
            for &c in self.s.cells_with_source(ArrowId(k)) {
                let t = self.s.target(c).0;
                if self.used_target[t] {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.node_cap {
                    return Err(GroupoidError::CapExceeded(
                        "flat bisection search budget exhausted".into(),
                    ));
                }
                self.chosen[k] = c;
                self.used_target[t] = true;
                if self.consistent(k) {
                    self.grow(k + 1)?;
                }
                self.used_target[t] = false;
            }
            Ok(())
        }
    }

    let mut search = Search {
        s,
        g,
        pair_at: &pair_at,
        chosen: vec![usize::MAX; n],
        used_target: vec![false; n],
        found: Vec::new(),
        nodes: 0,
        node_cap: limits.max_quadruples,
        result_cap: limits.max_bisections,
    };
    search.grow(0)?;

    let mut all = Vec::new();
    let mut all_var = Vec::new();
    for s_map in search.found {
        let b = SymmetroidBisection::new(s, s_map)?;
        let verdict = is_flat(s, &b);
        if let Some(v) = verdict.variance {
            all.push(b);
            all_var.push(v);
        }
    }

    // product of flats i,j relative to a carrier; None when the product falls
    // outside the carrier or is itself not flat
    let table_over = |carrier: &[SymmetroidBisection]| -> Result<Option<Vec<Vec<usize>>>> {
        let k = carrier.len();
        let mut table = vec![vec![0usize; k]; k];
        for (i, b2) in carrier.iter().enumerate() {
            for (j, b1) in carrier.iter().enumerate() {
                let prod = b2.compose(s, b1)?;
                if !is_flat(s, &prod).flat {
                    return Ok(None);
                }
                match carrier.iter().position(|e| e == &prod) {
                    Some(p) => table[i][j] = p,
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(table))
    };

    if let Some(table) = table_over(&all)? {
        return Ok(FlatBisectionGroup {
            elements: all,
            variances: all_var,
            group: FiniteGroup::from_table(table)?,
            excluded: Vec::new(),
        });
    }
    let mut elements = Vec::new();
    let mut excluded = Vec::new();
    for (b, v) in all.into_iter().zip(all_var) {
        if v == Variance::Covariant {
            elements.push(b);
        } else {
            excluded.push(b);
        }
    }
    let table = table_over(&elements)?.ok_or_else(|| {
        GroupoidError::ValidationFailed(
            "homomorphic flat bisections are not closed under the product".into(),
        )
    })?;
    let variances = vec![Variance::Covariant; elements.len()];
    Ok(FlatBisectionGroup {
        elements,
        variances,
        group: FiniteGroup::from_table(table)?,
        excluded,
    })
}

/// Packages φ_b of a flat bisection as a verified (anti-)automorphism of the
/// base groupoid, with the object bijection read off the images of units.
pub fn induced_automorphism(s: &TwoGroupoid, b: &SymmetroidBisection) -> Result<GroupoidFunctor> {
    let g = &s.groupoid;
    let verdict = is_flat(s, b);
    let variance = verdict.variance.ok_or_else(|| {
        GroupoidError::ValidationFailed(format!(
            "bisection is not flat: {}",
            verdict.failure.unwrap_or_default()
        ))
    })?;
    let phi = b.phi(s);
    let object_map = g
        .objects()
        .map(|x| {
            let img = phi[g.unit(x).0];
            if g.is_unit(img) {
                Ok(g.source(img))
            } else {
                Err(GroupoidError::ValidationFailed(format!(
                    "φ_b sends the unit at {} to the non-unit {}",
                    g.object_label(x),
                    g.arrow_label(img)
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let f = GroupoidFunctor {
        object_map,
        arrow_map: phi,
        variance,
    };
    let report = verify_functor(g, g, &f);
    if !report.all_pass() {
        return Err(GroupoidError::ValidationFailed(format!(
            "induced map fails the functor laws: {}",
            report
                .first_failure()
                .map(|l| l.to_string())
                .unwrap_or_default()
        )));
    }
    Ok(f)
}

/// A natural transformation Φ: F₁ ⇒ F₂ between covariant endofunctors,
/// stored as its per-object components Φ(x): F₁(x) → F₂(x).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalTransformation {
    pub components: Vec<ArrowId>,
}

impl NaturalTransformation {
    pub fn component(&self, x: ObjectId) -> ArrowId {
        self.components[x.0]
    }

    /// The arrows {Φ(x)} as a bisection of the base groupoid, indexed by
    /// source object.
    pub fn graph_bisection(&self, g: &FiniteGroupoid) -> Result<Bisection> {
        let mut s_map = vec![ArrowId(usize::MAX); g.n_objects()];
        for &a in &self.components {
            let src = g.source(a).0;
            if s_map[src] != ArrowId(usize::MAX) {
                return Err(GroupoidError::ValidationFailed(format!(
                    "two components share the source object {}",
                    g.object_label(ObjectId(src))
                )));
            }
            s_map[src] = a;
        }
        Bisection::new(g, s_map)
    }
}

/// Searches for a natural transformation Φ: F₁ ⇒ F₂ by backtracking over the
/// hom-sets G(F₂(x), F₁(x)) in object order; returns the first witness in
/// lexicographic order together with its inverse Ψ(x) = Φ(x)⁻¹: F₂ ⇒ F₁.
/// Contravariant inputs are rejected: naturality is only defined here for
/// covariant functors.
pub fn find_natural_transformation(
    g: &FiniteGroupoid,
    f1: &GroupoidFunctor,
    f2: &GroupoidFunctor,
) -> Result<Option<(NaturalTransformation, NaturalTransformation)>> {
    if f1.variance != Variance::Covariant || f2.variance != Variance::Covariant {
        return Err(GroupoidError::InvalidInput(
            "natural transformations are only searched between covariant functors".into(),
        ));
    }
    fn grow(
        g: &FiniteGroupoid,
        f1: &GroupoidFunctor,
        f2: &GroupoidFunctor,
        components: &mut Vec<ArrowId>,
    ) -> bool {
        let x = ObjectId(components.len());
        if components.len() == g.n_objects() {
            return true;
        }
        for cand in g.hom_set(f2.on_object(x), f1.on_object(x)) {
            components.push(cand);
            let natural = g.arrows().all(|a| {
                let (sx, ty) = (g.source(a), g.target(a));
                if sx.0 >= components.len() || ty.0 >= components.len() {
                    return true;
                }
                g.compose(components[ty.0], f1.on_arrow(a))
                    == g.compose(f2.on_arrow(a), components[sx.0])
            });
            if natural && grow(g, f1, f2, components) {
                return true;
            }
            components.pop();
        }
        false
    }
    let mut components = Vec::with_capacity(g.n_objects());
    if !grow(g, f1, f2, &mut components) {
        return Ok(None);
    }
    let inverse = NaturalTransformation {
        components: components.iter().map(|&a| g.inverse(a)).collect(),
    };
    Ok(Some((NaturalTransformation { components }, inverse)))
}

/// The group 𝒮₀♭ of inner symmetries: flat covariant bisections whose induced
/// automorphism is naturally equivalent to the identity functor.
#[derive(Debug, Clone)]
pub struct InnerSymmetries {
    pub flats: FlatBisectionGroup,
    /// Indices into `flats.elements` of the inner bisections.
    pub inner: Vec<usize>,
    /// Naturality witnesses Φ: φ_b ⇒ id, parallel to `inner`.
    pub witnesses: Vec<NaturalTransformation>,
    pub group: FiniteGroup,
    pub report: Report,
}

pub fn inner_symmetry_group(s: &TwoGroupoid, limits: &Limits) -> Result<InnerSymmetries> {
    let g = &s.groupoid;
    let flats = flat_bisection_group(s, limits)?;
    let id = GroupoidFunctor::identity(g);
    let mut inner = Vec::new();
    let mut witnesses = Vec::new();
    let mut report = Report::new("inner symmetry group");
    for (i, b) in flats.elements.iter().enumerate() {
        if flats.variances[i] != Variance::Covariant {
            continue;
        }
        let phi = induced_automorphism(s, b)?;
        if let Some((w, _)) = find_natural_transformation(g, &phi, &id)? {
            inner.push(i);
            witnesses.push(w);
        }
    }

    let mut graphs_ok = CheckOutcome::Pass;
    for (k, w) in witnesses.iter().enumerate() {
        if let Err(e) = w.graph_bisection(g) {
            graphs_ok = CheckOutcome::fail(format!("witness of inner bisection {}: {e}", inner[k]));
            break;
        }
    }
    report.push("witness graphs are bisections of G", graphs_ok);

    let inner_set: BTreeSet<usize> = inner.iter().copied().collect();
    let mut closed = CheckOutcome::Pass;
    'outer: for &i in &inner {
        for &j in &inner {
            if !inner_set.contains(&flats.group.mul(i, j)) {
                closed = CheckOutcome::fail(format!(
                    "product of inner bisections {i} and {j} is not inner"
                ));
                break 'outer;
            }
        }
    }
    report.push("closed under the bisection product", closed);
    if !report.all_pass() {
        return Err(GroupoidError::ValidationFailed(format!(
            "inner symmetries are not a subgroup: {}",
            report
                .first_failure()
                .map(|l| l.to_string())
                .unwrap_or_default()
        )));
    }
    let (group, _) = flats.group.subgroup(&inner);
    Ok(InnerSymmetries {
        flats,
        inner,
        witnesses,
        group,
        report,
    })
}

/// The factorization b_Φ = b^L_Φ · b^R_Φ of an inner symmetry inside the
/// canonical symmetroid of the base groupoid, with the verification
/// transcript.
#[derive(Debug, Clone)]
pub struct WignerFactorization {
    pub canonical: TwoGroupoid,
    pub b_phi: SymmetroidBisection,
    pub left: SymmetroidBisection,
    pub right: SymmetroidBisection,
    pub report: Report,
}

/// Transports an inner flat bisection of `s` into the canonical symmetroid
/// S(G): with Φ: id ⇒ φ_b the naturality witness, the bisection
/// `(b_Φ)_s(α): α ⇒ Φ(y)∘α∘Φ(x)⁻¹` is flat and factors as b^L_Φ · b^R_Φ
/// where b^L applies Φ(y) on the left and b^R applies Φ(x)⁻¹ on the right.
pub fn wigner_embedding(
    s: &TwoGroupoid,
    b: &SymmetroidBisection,
    limits: &Limits,
) -> Result<WignerFactorization> {
    let g = &s.groupoid;
    let verdict = is_flat(s, b);
    if verdict.variance != Some(Variance::Covariant) {
        return Err(GroupoidError::InvalidInput(format!(
            "not a flat covariant bisection: {}",
            verdict
                .failure
                .unwrap_or_else(|| "antihomomorphic variance".into())
        )));
    }
    let phi = induced_automorphism(s, b)?;
    let id = GroupoidFunctor::identity(g);
    // Φ oriented id ⇒ φ_b, so Φ(x): x → φ(x) and conjugation by Φ recovers φ
    let (_, to_phi) = find_natural_transformation(g, &phi, &id)?.ok_or_else(|| {
        GroupoidError::InvalidInput(
            "bisection is not inner: no natural transformation to the identity".into(),
        )
    })?;
    let canonical = canonical_symmetroid(g, limits)?;

    let find = |t: TripleCell| -> Result<usize> {
        canonical.find_triple(&t).ok_or_else(|| {
            GroupoidError::ValidationFailed("expected triple missing from S(G)".into())
        })
    };
    let mut b_phi = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for a in g.arrows() {
        let (x, y) = (g.source(a), g.target(a));
        let (px, py) = (to_phi.component(x), to_phi.component(y));
        b_phi.push(find(TripleCell {
            base: a,
            left: py,
            right: g.inverse(px),
            parity: Parity::Plus,
        })?);
        left.push(find(TripleCell {
            base: a,
            left: py,
            right: g.unit(x),
            parity: Parity::Plus,
        })?);
        right.push(find(TripleCell {
            base: a,
            left: g.unit(y),
            right: g.inverse(px),
            parity: Parity::Plus,
        })?);
    }
    let b_phi = SymmetroidBisection::new(&canonical, b_phi)?;
    let left = SymmetroidBisection::new(&canonical, left)?;
    let right = SymmetroidBisection::new(&canonical, right)?;

    let mut report = Report::new("inner symmetry factorization");
    let targets_ok = g
        .arrows()
        .all(|a| canonical.target(b_phi.cell_at(a)) == phi.on_arrow(a));
    report.push(
        "b_Φ reproduces the induced automorphism",
        if targets_ok {
            CheckOutcome::Pass
        } else {
            CheckOutcome::fail("t(b_Φ) differs from φ_b on some arrow")
        },
    );
    let product = left.compose(&canonical, &right)?;
    report.push(
        "b_Φ = b^L_Φ · b^R_Φ",
        if product == b_phi {
            CheckOutcome::Pass
        } else {
            CheckOutcome::fail("factor product differs from b_Φ")
        },
    );
    let flat_in_canonical = is_flat(&canonical, &b_phi);
    report.push(
        "b_Φ ∈ 𝒮(G)♭",
        if flat_in_canonical.variance == Some(Variance::Covariant) {
            CheckOutcome::Pass
        } else {
            CheckOutcome::fail(
                flat_in_canonical
                    .failure
                    .unwrap_or_else(|| "b_Φ is not flat covariant in S(G)".into()),
            )
        },
    );
    Ok(WignerFactorization {
        canonical,
        b_phi,
        left,
        right,
        report,
    })
}
