//! Bisections of a finite groupoid, the group they form, the reconstruction
//! of the groupoid from that group action, and the vertical/horizontal
//! semidirect splitting.

use std::collections::BTreeMap;

use crate::config::Limits;
use crate::error::{GroupoidError, Result};
use crate::group::FiniteGroup;
use crate::groupoid::{action_groupoid, ArrowId, FiniteGroupoid, ObjectId};
use crate::morphisms::{
    find_isomorphism, kernel, quotient, verify_functor, GroupoidFunctor, NormalSubgroupoid,
    Quotient, Variance,
};
use crate::report::{CheckOutcome, Report};

/// A bisection: a choice of one arrow out of every object such that the
/// induced object map φ_b(x) = t(b_s(x)) is a bijection.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bisection {
    s_map: Vec<ArrowId>,
}

impl Bisection {
    pub fn new(g: &FiniteGroupoid, s_map: Vec<ArrowId>) -> Result<Self> {
        if s_map.len() != g.n_objects() {
            return Err(GroupoidError::InvalidInput(
                "bisection must pick one arrow per object".into(),
            ));
        }
        for (x, &a) in s_map.iter().enumerate() {
            if a.0 >= g.n_arrows() {
                return Err(GroupoidError::InvalidInput(format!(
                    "arrow index {} out of range",
                    a.0
                )));
            }
            if g.source(a) != ObjectId(x) {
                return Err(GroupoidError::InvalidInput(format!(
                    "arrow {} does not have source {}",
                    g.arrow_label(a),
                    g.object_label(ObjectId(x))
                )));
            }
        }
        let mut seen = vec![false; g.n_objects()];
        for &a in &s_map {
            let t = g.target(a).0;
            if seen[t] {
                return Err(GroupoidError::InvalidInput(
                    "induced object map is not a bijection".into(),
                ));
            }
            seen[t] = true;
        }
        Ok(Bisection { s_map })
    }

    pub fn identity(g: &FiniteGroupoid) -> Self {
        Bisection {
            s_map: g.objects().map(|x| g.unit(x)).collect(),
        }
    }

    /// The chosen arrow with source `x`.
    pub fn arrow_at(&self, x: ObjectId) -> ArrowId {
        self.s_map[x.0]
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.s_map
    }

    /// The induced object permutation φ_b.
    pub fn permutation(&self, g: &FiniteGroupoid) -> Vec<usize> {
        self.s_map.iter().map(|&a| g.target(a).0).collect()
    }

    /// `self ∘ other`: (b₂ ∘ b₁)_s(x) = (b₂)_s(φ_{b₁}(x)) ∘ (b₁)_s(x).
    pub fn compose(&self, g: &FiniteGroupoid, other: &Bisection) -> Bisection {
        let s_map = g
            .objects()
            .map(|x| {
                let first = other.arrow_at(x);
                let after = self.arrow_at(g.target(first));
                g.compose(after, first)
                    .expect("bisection factors are composable")
            })
            .collect();
        Bisection { s_map }
    }

    pub fn inverse(&self, g: &FiniteGroupoid) -> Bisection {
        let mut s_map = vec![ArrowId(0); g.n_objects()];
        for x in g.objects() {
            let a = self.arrow_at(x);
            s_map[g.target(a).0] = g.inverse(a);
        }
        Bisection { s_map }
    }

    pub fn label(&self, g: &FiniteGroupoid) -> String {
        let parts: Vec<&str> = self.s_map.iter().map(|&a| g.arrow_label(a)).collect();
        format!("({})", parts.join(","))
    }
}

/// Enumerates all bisections in lexicographic order of their arrow indices
/// (object 0 first). Errors if the count would exceed `limits.max_bisections`.
pub fn enumerate_bisections(g: &FiniteGroupoid, limits: &Limits) -> Result<Vec<Bisection>> {
    let out: Vec<Vec<ArrowId>> = g
        .objects()
        .map(|x| {
            let mut v = g.out_arrows(x);
            v.sort();
            v
        })
        .collect();
    let mut result = Vec::new();
    let mut picked: Vec<ArrowId> = Vec::new();
    let mut target_used = vec![false; g.n_objects()];
    fn rec(
        g: &FiniteGroupoid,
        out: &[Vec<ArrowId>],
        picked: &mut Vec<ArrowId>,
        target_used: &mut [bool],
        result: &mut Vec<Bisection>,
        cap: usize,
    ) -> Result<()> {
        let x = picked.len();
        if x == out.len() {
            if result.len() >= cap {
                return Err(GroupoidError::CapExceeded(format!(
                    "bisection cap {cap} exceeded"
                )));
            }
            result.push(Bisection {
                s_map: picked.clone(),
            });
            return Ok(());
        }
        for &a in &out[x] {
            let t = g.target(a).0;
            if target_used[t] {
                continue;
            }
            target_used[t] = true;
            picked.push(a);
            rec(g, out, picked, target_used, result, cap)?;
            picked.pop();
            target_used[t] = false;
        }
        Ok(())
    }
    rec(
        g,
        &out,
        &mut picked,
        &mut target_used,
        &mut result,
        limits.max_bisections,
    )?;
    Ok(result)
}

/// The group of bisections under composition, with its element list in
/// enumeration order.
#[derive(Debug, Clone)]
pub struct BisectionGroup {
    pub elements: Vec<Bisection>,
    pub group: FiniteGroup,
}

impl BisectionGroup {
    pub fn index_of(&self, b: &Bisection) -> Option<usize> {
        self.elements.iter().position(|e| e == b)
    }

    pub fn identity_index(&self) -> usize {
        self.group.identity()
    }
}

pub fn bisection_group(g: &FiniteGroupoid, limits: &Limits) -> Result<BisectionGroup> {
    let elements = enumerate_bisections(g, limits)?;
    let index: BTreeMap<&Bisection, usize> =
        elements.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let n = elements.len();
    let mut table = vec![vec![0; n]; n];
    for (i, b2) in elements.iter().enumerate() {
        for (j, b1) in elements.iter().enumerate() {
            let c = b2.compose(g, b1);
            table[i][j] = *index.get(&c).ok_or_else(|| {
                GroupoidError::ValidationFailed("bisections not closed under composition".into())
            })?;
        }
    }
    let mut group = FiniteGroup::from_table(table)?;
    group.set_labels(elements.iter().map(|b| b.label(g)).collect());
    Ok(BisectionGroup { elements, group })
}

/// Result of rebuilding a groupoid from the action of its bisection group on
/// the object set: the action groupoid, the evaluation functor onto the
/// original groupoid, its kernel, the quotient by the kernel, and a verified
/// isomorphism from the quotient back onto the original groupoid.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub bisections: BisectionGroup,
    pub action: FiniteGroupoid,
    pub evaluation: GroupoidFunctor,
    pub kernel: NormalSubgroupoid,
    pub quotient: Quotient,
    pub iso: Option<GroupoidFunctor>,
    pub report: Report,
}

pub fn reconstruct(g: &FiniteGroupoid, limits: &Limits) -> Result<Reconstruction> {
    let bisections = bisection_group(g, limits)?;
    let action_table: Vec<Vec<usize>> = bisections
        .elements
        .iter()
        .map(|b| b.permutation(g))
        .collect();
    let action = action_groupoid(&bisections.group, &action_table)?;

    // evaluation functor A(φ_b(x); b; x) -> b_s(x); action arrows are b*n+x
    let n = g.n_objects();
    let arrow_map = action
        .arrows()
        .map(|a| bisections.elements[a.0 / n].arrow_at(ObjectId(a.0 % n)))
        .collect();
    let evaluation = GroupoidFunctor {
        object_map: g.objects().collect(),
        arrow_map,
        variance: Variance::Covariant,
    };

    let mut report = Report::new("reconstruction from the bisection action");
    let functor_report = verify_functor(&action, g, &evaluation);
    report.push(
        "evaluation is a functor",
        match functor_report.first_failure() {
            None => CheckOutcome::Pass,
            Some(c) => CheckOutcome::fail(c.to_string()),
        },
    );

    let ker = kernel(&action, g, &evaluation);
    let kernel_sub = NormalSubgroupoid::new(&action, ker)?;
    report.push("kernel is a normal subgroupoid", CheckOutcome::Pass);

    let q = quotient(&action, &kernel_sub)?;
    report.push("quotient is well defined", CheckOutcome::Pass);

    let iso = find_isomorphism(&q.groupoid, g, limits)?;
    report.push(
        "quotient is isomorphic to the groupoid",
        match &iso {
            Some(f) => {
                if verify_functor(&q.groupoid, g, f).all_pass() && f.is_bijective(g) {
                    CheckOutcome::Pass
                } else {
                    CheckOutcome::fail("witness failed re-verification")
                }
            }
            None => CheckOutcome::fail("no isomorphism found"),
        },
    );

    Ok(Reconstruction {
        bisections,
        action,
        evaluation,
        kernel: kernel_sub,
        quotient: q,
        iso,
        report,
    })
}

/// The vertical/horizontal splitting of a bisection group: the normal
/// subgroup 𝒢₀ of bisections fixing every object, the quotient-like group ℋ
/// of induced object permutations, a homomorphic section ρ : ℋ → B when one
/// exists, and the conjugation action W^ρ of ℋ on 𝒢₀.
#[derive(Debug, Clone)]
pub struct SemidirectStructure {
    /// Indices (into the bisection list) of the object-fixing bisections.
    pub vertical: Vec<usize>,
    pub vertical_group: FiniteGroup,
    /// Distinct induced permutations, identity first.
    pub horizontal_perms: Vec<Vec<usize>>,
    pub horizontal_group: FiniteGroup,
    /// `section[h]` is the bisection index chosen for the h-th permutation.
    pub section: Option<Vec<usize>>,
    /// `twist[h][v]` = index in `vertical` of ρ(h) ∘ v ∘ ρ(h)⁻¹.
    pub twist: Option<Vec<Vec<usize>>>,
    pub report: Report,
}

pub fn semidirect_structure(
    g: &FiniteGroupoid,
    bg: &BisectionGroup,
) -> Result<SemidirectStructure> {
    let mut report = Report::new("vertical/horizontal splitting of the bisection group");

    let vertical: Vec<usize> = bg
        .elements
        .iter()
        .enumerate()
        .filter(|(_, b)| b.permutation(g).iter().enumerate().all(|(x, &y)| x == y))
        .map(|(i, _)| i)
        .collect();
    let (vertical_group, _) = bg.group.subgroup(&vertical);

    // 𝒢₀ is normal: conjugation by any bisection preserves being object-fixing
    let normal = vertical.iter().all(|&v| {
        bg.group.elements().all(|b| {
            let c = bg.group.mul(bg.group.mul(b, v), bg.group.inv(b));
            vertical.binary_search(&c).is_ok()
        })
    });
    report.push(
        "object-fixing bisections form a normal subgroup",
        if normal {
            CheckOutcome::Pass
        } else {
            CheckOutcome::fail("conjugation escapes the subgroup")
        },
    );

    // distinct induced permutations, with the projection b -> φ_b
    let mut horizontal_perms: Vec<Vec<usize>> = Vec::new();
    let mut proj = vec![0; bg.elements.len()];
    for (i, b) in bg.elements.iter().enumerate() {
        let p = b.permutation(g);
        match horizontal_perms.iter().position(|q| *q == p) {
            Some(h) => proj[i] = h,
            None => {
                proj[i] = horizontal_perms.len();
                horizontal_perms.push(p);
            }
        }
    }
    let k = horizontal_perms.len();
    let mut h_table = vec![vec![0; k]; k];
    for (i, p) in horizontal_perms.iter().enumerate() {
        for (j, q) in horizontal_perms.iter().enumerate() {
            // φ_{b₂∘b₁} = φ_{b₂} ∘ φ_{b₁}
            let comp: Vec<usize> = (0..p.len()).map(|x| p[q[x]]).collect();
            h_table[i][j] = horizontal_perms
                .iter()
                .position(|r| *r == comp)
                .ok_or_else(|| {
                    GroupoidError::ValidationFailed(
                        "induced permutations not closed under composition".into(),
                    )
                })?;
        }
    }
    let horizontal_group = FiniteGroup::from_table(h_table)?;
    let projection_hom = bg.group.elements().all(|i| {
        bg.group
            .elements()
            .all(|j| proj[bg.group.mul(i, j)] == horizontal_group.mul(proj[i], proj[j]))
    });
    report.push(
        "projection onto object permutations is a homomorphism",
        if projection_hom {
            CheckOutcome::Pass
        } else {
            CheckOutcome::fail("projection does not respect products")
        },
    );

    // index/order coherence: |B| = |𝒢₀| · |ℋ|
    report.push(
        "order factorisation |B| = |G₀|·|H|",
        if bg.group.order() == vertical.len() * k {
            CheckOutcome::Pass
        } else {
            CheckOutcome::fail(format!("{} ≠ {} · {}", bg.group.order(), vertical.len(), k))
        },
    );

    // homomorphic section search: pick ρ(h) with φ_{ρ(h)} = h for each h,
    // identity for the identity, lexicographically first full assignment
    let fibers: Vec<Vec<usize>> = (0..k)
        .map(|h| (0..bg.elements.len()).filter(|&i| proj[i] == h).collect())
        .collect();
    let mut section_map = vec![usize::MAX; k];
    section_map[horizontal_group.identity()] = bg.group.identity();
    let order: Vec<usize> = (0..k)
        .filter(|&h| h != horizontal_group.identity())
        .collect();
    fn search(
        pos: usize,
        order: &[usize],
        fibers: &[Vec<usize>],
        section: &mut Vec<usize>,
        bgroup: &FiniteGroup,
        hgroup: &FiniteGroup,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let h = order[pos];
        'cand: for &b in &fibers[h] {
            section[h] = b;
            for h1 in 0..section.len() {
                for h2 in 0..section.len() {
                    if section[h1] == usize::MAX || section[h2] == usize::MAX {
                        continue;
                    }
                    let prod_h = hgroup.mul(h1, h2);
                    if section[prod_h] != usize::MAX
                        && bgroup.mul(section[h1], section[h2]) != section[prod_h]
                    {
                        continue 'cand;
                    }
                }
            }
            if search(pos + 1, order, fibers, section, bgroup, hgroup) {
                return true;
            }
        }
        section[h] = usize::MAX;
        false
    }
    let found = search(
        0,
        &order,
        &fibers,
        &mut section_map,
        &bg.group,
        &horizontal_group,
    );
    let section = if found { Some(section_map) } else { None };
    report.push(
        "homomorphic section exists",
        if section.is_some() {
            CheckOutcome::Pass
        } else {
            CheckOutcome::fail("no homomorphic section of the projection")
        },
    );

    // twist action and the explicit semidirect-product law
    let mut twist = None;
    if let Some(rho) = &section {
        let mut t = vec![vec![0; vertical.len()]; k];
        let mut ok = true;
        for h in 0..k {
            for (vi, &v) in vertical.iter().enumerate() {
                let c = bg.group.mul(bg.group.mul(rho[h], v), bg.group.inv(rho[h]));
                match vertical.binary_search(&c) {
                    Ok(ci) => t[h][vi] = ci,
                    Err(_) => ok = false,
                }
            }
        }
        // (v, h) -> v ∘ ρ(h) is a bijection and products follow
        // (v₁, h₁)(v₂, h₂) = (v₁ ∘ W_{h₁}(v₂), h₁h₂)
        let mut seen = vec![false; bg.group.order()];
        for &v in &vertical {
            for h in 0..k {
                let b = bg.group.mul(v, rho[h]);
                if std::mem::replace(&mut seen[b], true) {
                    ok = false;
                }
            }
        }
        ok &= seen.iter().all(|&s| s);
        if ok {
            for (v1i, &v1) in vertical.iter().enumerate() {
                for h1 in 0..k {
                    for (v2i, &v2) in vertical.iter().enumerate() {
                        for h2 in 0..k {
                            let lhs = bg
                                .group
                                .mul(bg.group.mul(v1, rho[h1]), bg.group.mul(v2, rho[h2]));
                            let _ = v1i;
                            let rhs = bg.group.mul(
                                bg.group.mul(v1, vertical[t[h1][v2i]]),
                                rho[horizontal_group.mul(h1, h2)],
                            );
                            if lhs != rhs {
                                ok = false;
                            }
                        }
                    }
                }
            }
        }
        report.push(
            "semidirect product law holds",
            if ok {
                CheckOutcome::Pass
            } else {
                CheckOutcome::fail("twisted product does not match composition")
            },
        );
        if ok {
            twist = Some(t);
        }
    } else {
        report.push(
            "semidirect product law holds",
            CheckOutcome::NotVerified {
                reason: "no homomorphic section".into(),
            },
        );
    }

    Ok(SemidirectStructure {
        vertical,
        vertical_group,
        horizontal_perms,
        horizontal_group,
        section,
        twist,
        report,
    })
}
