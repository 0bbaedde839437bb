//! Finite 2-groupoids over a groupoid ("symmetroids"): 2-cells substituting
//! one arrow for another, with a vertical composition that is a groupoid over
//! the arrow set and a partial horizontal composition compatible with it
//! through the exchange identity.
//!
//! Two representations are supported. Canonical symmetroids carry cells as
//! triples (β, λ, ρ, ε) acting by β ↦ λ∘β^ε∘ρ, with closed-form composition;
//! these realize S(G), S₀(G) and 𝔗(G). Declared symmetroids carry opaque
//! named cells and resolve compositions through their endpoints, which covers
//! hand-listed examples such as the swap symmetroid.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::config::Limits;
use crate::error::{GroupoidError, Result};
use crate::groupoid::{ArrowId, FiniteGroupoid};
use crate::report::{CheckOutcome, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Plus => Parity::Minus,
            Parity::Minus => Parity::Plus,
        }
    }

    /// Group law on parities: the parity of a stacked pair of cells.
    pub fn compose(self, other: Parity) -> Parity {
        if self == other {
            Parity::Plus
        } else {
            Parity::Minus
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Plus => write!(f, "+"),
            Parity::Minus => write!(f, "-"),
        }
    }
}

/// A canonical cell: acts on its base arrow by β ↦ λ∘β^ε∘ρ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleCell {
    pub base: ArrowId,
    pub left: ArrowId,
    pub right: ArrowId,
    pub parity: Parity,
}

impl TripleCell {
    /// Validates the endpoint constraints and computes the target arrow.
    pub fn target(&self, g: &FiniteGroupoid) -> Result<ArrowId> {
        let mid = match self.parity {
            Parity::Plus => self.base,
            Parity::Minus => g.inverse(self.base),
        };
        g.chain(&[self.left, mid, self.right]).ok_or_else(|| {
            GroupoidError::InvalidInput(format!(
                "triple cell factors not composable (base {}, λ {}, ρ {}, {})",
                g.arrow_label(self.base),
                g.arrow_label(self.left),
                g.arrow_label(self.right),
                self.parity
            ))
        })
    }

    /// The vertical unit cell over an arrow.
    pub fn unit(g: &FiniteGroupoid, base: ArrowId) -> TripleCell {
        TripleCell {
            base,
            left: g.unit(g.target(base)),
            right: g.unit(g.source(base)),
            parity: Parity::Plus,
        }
    }

    /// Right translation ξ^R_γ : α ⇒ α∘γ⁻¹ for γ a loop at s(α).
    pub fn xi_r(g: &FiniteGroupoid, base: ArrowId, gamma: ArrowId) -> Result<TripleCell> {
        if g.source(gamma) != g.source(base) || g.target(gamma) != g.source(base) {
            return Err(GroupoidError::InvalidInput(format!(
                "{} is not a loop at the source of {}",
                g.arrow_label(gamma),
                g.arrow_label(base)
            )));
        }
        Ok(TripleCell {
            base,
            left: g.unit(g.target(base)),
            right: g.inverse(gamma),
            parity: Parity::Plus,
        })
    }

    /// Left translation ξ^L_δ : α ⇒ δ∘α for δ a loop at t(α).
    pub fn xi_l(g: &FiniteGroupoid, base: ArrowId, delta: ArrowId) -> Result<TripleCell> {
        if g.source(delta) != g.target(base) || g.target(delta) != g.target(base) {
            return Err(GroupoidError::InvalidInput(format!(
                "{} is not a loop at the target of {}",
                g.arrow_label(delta),
                g.arrow_label(base)
            )));
        }
        Ok(TripleCell {
            base,
            left: delta,
            right: g.unit(g.source(base)),
            parity: Parity::Plus,
        })
    }

    /// Natural inversion τ_α : α ⇒ α⁻¹.
    pub fn tau(g: &FiniteGroupoid, base: ArrowId) -> TripleCell {
        TripleCell {
            base,
            left: g.unit(g.source(base)),
            right: g.unit(g.target(base)),
            parity: Parity::Minus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellKind {
    Triple { left: ArrowId, right: ArrowId },
    Named(String),
}

/// One 2-cell: a substitution source ⇒ target with a parity recording whether
/// it acts homomorphically (+) or through arrow inversion (−).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub source: ArrowId,
    pub target: ArrowId,
    pub parity: Parity,
    pub kind: CellKind,
}

#[derive(Debug, Clone)]
enum Repr {
    Canonical {
        index: HashMap<TripleCell, usize>,
    },
    Declared {
        /// (source, target, parity) → cell; uniqueness enforced at build time.
        index: HashMap<(ArrowId, ArrowId, Parity), usize>,
    },
}

/// A finite 2-groupoid over a base groupoid.
#[derive(Debug, Clone)]
pub struct TwoGroupoid {
    pub groupoid: FiniteGroupoid,
    cells: Vec<Cell>,
    repr: Repr,
    by_source: Vec<Vec<usize>>,
    unit_of: Vec<Option<usize>>,
}

pub type CellId = usize;

impl TwoGroupoid {
    /// Builds a canonical symmetroid from an explicit set of triple cells.
    pub fn from_triples(
        g: FiniteGroupoid,
        triples: Vec<TripleCell>,
        limits: &Limits,
    ) -> Result<Self> {
        if triples.len() > limits.max_cells {
            return Err(GroupoidError::CapExceeded(format!(
                "cell cap {} exceeded",
                limits.max_cells
            )));
        }
        let mut cells = Vec::with_capacity(triples.len());
        let mut index = HashMap::new();
        for t in triples {
            let target = t.target(&g)?;
            if index.insert(t, cells.len()).is_some() {
                return Err(GroupoidError::InvalidInput("duplicate triple cell".into()));
            }
            cells.push(Cell {
                source: t.base,
                target,
                parity: t.parity,
                kind: CellKind::Triple {
                    left: t.left,
                    right: t.right,
                },
            });
        }
        let mut s = TwoGroupoid {
            by_source: vec![Vec::new(); g.n_arrows()],
            unit_of: vec![None; g.n_arrows()],
            groupoid: g,
            cells,
            repr: Repr::Canonical { index },
        };
        s.build_buckets();
        Ok(s)
    }

    /// Builds a declared symmetroid from named cells. Every (source, target,
    /// parity) combination must be unique so endpoint resolution of the
    /// compositions is unambiguous.
    pub fn from_named_cells(
        g: FiniteGroupoid,
        cells_in: Vec<(String, ArrowId, ArrowId, Parity)>,
        limits: &Limits,
    ) -> Result<Self> {
        if cells_in.len() > limits.max_cells {
            return Err(GroupoidError::CapExceeded(format!(
                "cell cap {} exceeded",
                limits.max_cells
            )));
        }
        let mut cells = Vec::with_capacity(cells_in.len());
        let mut index = HashMap::new();
        for (name, source, target, parity) in cells_in {
            if source.0 >= g.n_arrows() || target.0 >= g.n_arrows() {
                return Err(GroupoidError::InvalidInput(format!(
                    "cell {name} references an arrow out of range"
                )));
            }
            if index
                .insert((source, target, parity), cells.len())
                .is_some()
            {
                return Err(GroupoidError::InvalidInput(format!(
                    "cell {name} duplicates the endpoints of another cell; \
                     endpoint-resolved composition would be ambiguous"
                )));
            }
            cells.push(Cell {
                source,
                target,
                parity,
                kind: CellKind::Named(name),
            });
        }
        let mut s = TwoGroupoid {
            by_source: vec![Vec::new(); g.n_arrows()],
            unit_of: vec![None; g.n_arrows()],
            groupoid: g,
            cells,
            repr: Repr::Declared { index },
        };
        s.build_buckets();
        Ok(s)
    }

    fn build_buckets(&mut self) {
        for (i, c) in self.cells.iter().enumerate() {
            self.by_source[c.source.0].push(i);
            let is_unit = match (&self.repr, &c.kind) {
                (Repr::Canonical { .. }, CellKind::Triple { left, right }) => {
                    c.parity == Parity::Plus
                        && *left == self.groupoid.unit(self.groupoid.target(c.source))
                        && *right == self.groupoid.unit(self.groupoid.source(c.source))
                }
                (Repr::Declared { .. }, _) => c.parity == Parity::Plus && c.source == c.target,
                _ => false,
            };
            if is_unit && self.unit_of[c.source.0].is_none() {
                self.unit_of[c.source.0] = Some(i);
            }
        }
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id]
    }

    pub fn cell_ids(&self) -> impl Iterator<Item = CellId> {
        0..self.cells.len()
    }

    pub fn source(&self, id: CellId) -> ArrowId {
        self.cells[id].source
    }

    pub fn target(&self, id: CellId) -> ArrowId {
        self.cells[id].target
    }

    pub fn parity(&self, id: CellId) -> Parity {
        self.cells[id].parity
    }

    pub fn cells_with_source(&self, a: ArrowId) -> &[usize] {
        &self.by_source[a.0]
    }

    pub fn cell_label(&self, id: CellId) -> String {
        let g = &self.groupoid;
        let c = &self.cells[id];
        match &c.kind {
            CellKind::Named(name) => name.clone(),
            CellKind::Triple { left, right } => format!(
                "{} => {} [λ={}, ρ={}, {}]",
                g.arrow_label(c.source),
                g.arrow_label(c.target),
                g.arrow_label(*left),
                g.arrow_label(*right),
                c.parity
            ),
        }
    }

    pub fn find_triple(&self, t: &TripleCell) -> Option<CellId> {
        match &self.repr {
            Repr::Canonical { index } => index.get(t).copied(),
            Repr::Declared { .. } => None,
        }
    }

    pub fn find_by_endpoints(
        &self,
        source: ArrowId,
        target: ArrowId,
        parity: Parity,
    ) -> Option<CellId> {
        match &self.repr {
            Repr::Declared { index } => index.get(&(source, target, parity)).copied(),
            Repr::Canonical { .. } => self
                .cells_with_source(source)
                .iter()
                .copied()
                .find(|&i| self.cells[i].target == target && self.cells[i].parity == parity),
        }
    }

    pub fn is_canonical(&self) -> bool {
        matches!(self.repr, Repr::Canonical { .. })
    }

    fn triple_of(&self, id: CellId) -> TripleCell {
        let c = &self.cells[id];
        match c.kind {
            CellKind::Triple { left, right } => TripleCell {
                base: c.source,
                left,
                right,
                parity: c.parity,
            },
            CellKind::Named(_) => unreachable!("declared cells have no triple form"),
        }
    }

    /// Vertical unit cell over an arrow, when present in the cell set.
    pub fn v_unit(&self, a: ArrowId) -> Option<CellId> {
        self.unit_of[a.0]
    }

    /// Vertical composition `outer ∘_V inner`, defined when the source of
    /// `outer` is the target of `inner` and the composite cell is in the set.
    pub fn v_compose(&self, outer: CellId, inner: CellId) -> Option<CellId> {
        let (o, i) = (&self.cells[outer], &self.cells[inner]);
        if o.source != i.target {
            return None;
        }
        match &self.repr {
            Repr::Canonical { index } => {
                let g = &self.groupoid;
                let (ot, it) = (self.triple_of(outer), self.triple_of(inner));
                let composed = match ot.parity {
                    Parity::Plus => TripleCell {
                        base: it.base,
                        left: g.compose(ot.left, it.left)?,
                        right: g.compose(it.right, ot.right)?,
                        parity: it.parity,
                    },
                    Parity::Minus => TripleCell {
                        base: it.base,
                        left: g.compose(ot.left, g.inverse(it.right))?,
                        right: g.compose(g.inverse(it.left), ot.right)?,
                        parity: it.parity.flip(),
                    },
                };
                index.get(&composed).copied()
            }
            Repr::Declared { index } => index
                .get(&(i.source, o.target, o.parity.compose(i.parity)))
                .copied(),
        }
    }

    /// Vertical inverse cell, when present in the set.
    pub fn v_inverse(&self, id: CellId) -> Option<CellId> {
        match &self.repr {
            Repr::Canonical { index } => {
                let g = &self.groupoid;
                let t = self.triple_of(id);
                let inv = match t.parity {
                    Parity::Plus => TripleCell {
                        base: self.cells[id].target,
                        left: g.inverse(t.left),
                        right: g.inverse(t.right),
                        parity: Parity::Plus,
                    },
                    Parity::Minus => TripleCell {
                        base: self.cells[id].target,
                        left: t.right,
                        right: t.left,
                        parity: Parity::Minus,
                    },
                };
                index.get(&inv).copied()
            }
            Repr::Declared { index } => {
                let c = &self.cells[id];
                index.get(&(c.target, c.source, c.parity)).copied()
            }
        }
    }

    /// Horizontal composition `left ∘_H right`, with the left cell sitting
    /// over the later arrow: s(left) must compose with s(right). Defined only
    /// for equal parities. The source map is a homomorphism; on parity − the
    /// target map reverses order (antihomomorphism).
    pub fn h_compose(&self, left: CellId, right: CellId) -> Option<CellId> {
        let (l, r) = (&self.cells[left], &self.cells[right]);
        if l.parity != r.parity {
            return None;
        }
        let g = &self.groupoid;
        let source = g.compose(l.source, r.source)?;
        match &self.repr {
            Repr::Canonical { index } => {
                let (lt, rt) = (self.triple_of(left), self.triple_of(right));
                let composed = match l.parity {
                    Parity::Plus => {
                        // absorb everything but the right factor of the right
                        // cell into λ; target is t(left)∘t(right)
                        let target = g.compose(l.target, r.target)?;
                        let lam = g.chain(&[target, g.inverse(rt.right), g.inverse(source)])?;
                        TripleCell {
                            base: source,
                            left: lam,
                            right: rt.right,
                            parity: Parity::Plus,
                        }
                    }
                    Parity::Minus => {
                        // target is t(right)∘t(left): the target map reverses
                        let lam = g.chain(&[r.target, lt.left, r.source])?;
                        TripleCell {
                            base: source,
                            left: lam,
                            right: lt.right,
                            parity: Parity::Minus,
                        }
                    }
                };
                index.get(&composed).copied()
            }
            Repr::Declared { index } => {
                let target = match l.parity {
                    Parity::Plus => g.compose(l.target, r.target)?,
                    Parity::Minus => g.compose(r.target, l.target)?,
                };
                index.get(&(source, target, l.parity)).copied()
            }
        }
    }

    /// True when every cell of `other` (over the same base groupoid) is
    /// present here; canonical representations compare triples.
    pub fn contains_symmetroid(&self, other: &TwoGroupoid) -> bool {
        if self.groupoid != other.groupoid {
            return false;
        }
        other.cell_ids().all(|id| match &other.cells[id].kind {
            CellKind::Triple { left, right } => self
                .find_triple(&TripleCell {
                    base: other.cells[id].source,
                    left: *left,
                    right: *right,
                    parity: other.cells[id].parity,
                })
                .is_some(),
            CellKind::Named(_) => false,
        })
    }

    /// Orbits of the cell set on the base arrows: connected components of the
    /// source↔target relation.
    pub fn arrow_orbits(&self) -> Vec<Vec<ArrowId>> {
        let n = self.groupoid.n_arrows();
        let mut comp = vec![usize::MAX; n];
        let mut n_comp = 0;
        for a in 0..n {
            if comp[a] != usize::MAX {
                continue;
            }
            let c = n_comp;
            n_comp += 1;
            comp[a] = c;
            let mut stack = vec![a];
            while let Some(v) = stack.pop() {
                for cell in &self.cells {
                    let (s, t) = (cell.source.0, cell.target.0);
                    for (from, to) in [(s, t), (t, s)] {
                        if from == v && comp[to] == usize::MAX {
                            comp[to] = c;
                            stack.push(to);
                        }
                    }
                }
            }
        }
        let mut orbits = vec![Vec::new(); n_comp];
        for a in 0..n {
            orbits[comp[a]].push(ArrowId(a));
        }
        orbits
    }
}

/// All triple cells over `g`, both parities: the canonical symmetroid S(G).
pub fn canonical_symmetroid(g: &FiniteGroupoid, limits: &Limits) -> Result<TwoGroupoid> {
    let mut triples = Vec::new();
    for base in g.arrows() {
        for parity in [Parity::Plus, Parity::Minus] {
            let (mid_t, mid_s) = match parity {
                Parity::Plus => (g.target(base), g.source(base)),
                Parity::Minus => (g.source(base), g.target(base)),
            };
            for left in g.arrows().filter(|&l| g.source(l) == mid_t) {
                for right in g.arrows().filter(|&r| g.target(r) == mid_s) {
                    triples.push(TripleCell {
                        base,
                        left,
                        right,
                        parity,
                    });
                    if triples.len() > limits.max_cells {
                        return Err(GroupoidError::CapExceeded(format!(
                            "cell cap {} exceeded",
                            limits.max_cells
                        )));
                    }
                }
            }
        }
    }
    TwoGroupoid::from_triples(g.clone(), triples, limits)
}

/// The triple cells generating the little symmetroid: units, isotropy left
/// and right translations, and the inversions τ.
pub fn little_symmetroid_generators(g: &FiniteGroupoid) -> Vec<TripleCell> {
    let mut gens = Vec::new();
    for a in g.arrows() {
        gens.push(TripleCell::unit(g, a));
        gens.push(TripleCell::tau(g, a));
        for gamma in g.hom_set(g.source(a), g.source(a)) {
            gens.push(TripleCell::xi_r(g, a, gamma).expect("loop at source"));
        }
        for delta in g.hom_set(g.target(a), g.target(a)) {
            gens.push(TripleCell::xi_l(g, a, delta).expect("loop at target"));
        }
    }
    gens
}

/// S₀(G): the closure of the little-symmetroid generators under vertical
/// composition, vertical inversion and horizontal composition, computed as a
/// worklist fixed point on triples.
pub fn canonical_little_symmetroid(g: &FiniteGroupoid, limits: &Limits) -> Result<TwoGroupoid> {
    let mut set: BTreeSet<TripleCell> = little_symmetroid_generators(g).into_iter().collect();
    // closure formulas, working on raw triples (membership filled at the end)
    let v = |outer: &TripleCell, inner: &TripleCell| -> Option<TripleCell> {
        let inner_target = inner.target(g).ok()?;
        if outer.base != inner_target {
            return None;
        }
        Some(match outer.parity {
            Parity::Plus => TripleCell {
                base: inner.base,
                left: g.compose(outer.left, inner.left)?,
                right: g.compose(inner.right, outer.right)?,
                parity: inner.parity,
            },
            Parity::Minus => TripleCell {
                base: inner.base,
                left: g.compose(outer.left, g.inverse(inner.right))?,
                right: g.compose(g.inverse(inner.left), outer.right)?,
                parity: inner.parity.flip(),
            },
        })
    };
    let h = |left: &TripleCell, right: &TripleCell| -> Option<TripleCell> {
        if left.parity != right.parity {
            return None;
        }
        let source = g.compose(left.base, right.base)?;
        Some(match left.parity {
            Parity::Plus => {
                let target = g.compose(left.target(g).ok()?, right.target(g).ok()?)?;
                TripleCell {
                    base: source,
                    left: g.chain(&[target, g.inverse(right.right), g.inverse(source)])?,
                    right: right.right,
                    parity: Parity::Plus,
                }
            }
            Parity::Minus => TripleCell {
                base: source,
                left: g.chain(&[right.target(g).ok()?, left.left, right.base])?,
                right: left.right,
                parity: Parity::Minus,
            },
        })
    };
    let inv = |c: &TripleCell| -> Option<TripleCell> {
        let target = c.target(g).ok()?;
        Some(match c.parity {
            Parity::Plus => TripleCell {
                base: target,
                left: g.inverse(c.left),
                right: g.inverse(c.right),
                parity: Parity::Plus,
            },
            Parity::Minus => TripleCell {
                base: target,
                left: c.right,
                right: c.left,
                parity: Parity::Minus,
            },
        })
    };

    let mut work: Vec<TripleCell> = set.iter().copied().collect();
    while let Some(c) = work.pop() {
        let mut found: Vec<TripleCell> = Vec::new();
        if let Some(i) = inv(&c) {
            found.push(i);
        }
        for other in set.iter() {
            for n in [v(&c, other), v(other, &c), h(&c, other), h(other, &c)]
                .into_iter()
                .flatten()
            {
                found.push(n);
            }
        }
        for n in found {
            if set.insert(n) {
                if set.len() > limits.max_cells {
                    return Err(GroupoidError::CapExceeded(format!(
                        "closure cap {} exceeded",
                        limits.max_cells
                    )));
                }
                work.push(n);
            }
        }
    }
    TwoGroupoid::from_triples(g.clone(), set.into_iter().collect(), limits)
}

/// 𝔗(G): vertical units and inversions τ_α only — microscopic reversibility.
pub fn reversibility_symmetroid(g: &FiniteGroupoid, limits: &Limits) -> Result<TwoGroupoid> {
    let mut triples = Vec::new();
    for a in g.arrows() {
        triples.push(TripleCell::unit(g, a));
        triples.push(TripleCell::tau(g, a));
    }
    TwoGroupoid::from_triples(g.clone(), triples, limits)
}

/// Builds a declared symmetroid from named cells, automatically adding a unit
/// cell per arrow and checking the axioms before returning it.
pub fn user_symmetroid(
    g: FiniteGroupoid,
    named: Vec<(String, ArrowId, ArrowId, Parity)>,
    auto_units: bool,
    limits: &Limits,
) -> Result<TwoGroupoid> {
    let mut cells = Vec::new();
    if auto_units {
        for a in g.arrows() {
            cells.push((format!("1[{}]", g.arrow_label(a)), a, a, Parity::Plus));
        }
    }
    cells.extend(named);
    let s = TwoGroupoid::from_named_cells(g, cells, limits)?;
    let report = verify_two_groupoid(&s, limits);
    if let Some(failure) = report.first_failure() {
        return Err(GroupoidError::ValidationFailed(format!(
            "declared cells do not form a 2-groupoid: {failure}"
        )));
    }
    Ok(s)
}

/// The swap symmetroid over G(Ω₂)×G(Ω₂): six nontrivial substitutions that
/// exchange the two tensor factors, their inverses, and the unit cells.
pub fn swap_symmetroid(limits: &Limits) -> Result<TwoGroupoid> {
    let mut p2 = crate::groupoid::pair_groupoid(2)?;
    p2.set_labels(
        vec!["+".into(), "-".into()],
        // pair arrows (y,x) indexed y*2+x
        vec!["1_+".into(), "α".into(), "α^-1".into(), "1_-".into()],
    );
    let g = crate::groupoid::direct_product(&p2, &p2);
    let arrow = |label: &str| {
        g.arrow_by_label(label)
            .unwrap_or_else(|| panic!("missing arrow {label}"))
    };
    let pairs = [
        ("(α,1_+)", "(1_+,α)"),
        ("(α,1_-)", "(1_-,α)"),
        ("(α^-1,1_+)", "(1_+,α^-1)"),
        ("(α^-1,1_-)", "(1_-,α^-1)"),
        ("(α,α^-1)", "(α^-1,α)"),
        ("(1_+,1_-)", "(1_-,1_+)"),
    ];
    let mut named = Vec::new();
    for (src, tgt) in pairs {
        named.push((
            format!("σ[{src}=>{tgt}]"),
            arrow(src),
            arrow(tgt),
            Parity::Plus,
        ));
        named.push((
            format!("σ[{tgt}=>{src}]"),
            arrow(tgt),
            arrow(src),
            Parity::Plus,
        ));
    }
    user_symmetroid(g, named, true, limits)
}

/// Counters from the exchange-identity sweep. The identity is compared after
/// evaluating both sides as substitutions (source, target, parity); the count
/// of quadruples where the two sides are distinct representatives of the same
/// substitution is reported separately.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct ExchangeStats {
    pub quadruples: usize,
    pub substitution_failures: usize,
    pub representative_mismatches: usize,
    pub capped: bool,
}

/// Sweeps all quadruples (ζ over ξ) ∘_H (ζ' over ξ') where every composite on
/// both sides is defined, comparing (ζ∘_Vξ)∘_H(ζ'∘_Vξ') with
/// (ζ∘_Hζ')∘_V(ξ∘_Hξ') as substitutions.
pub fn exchange_check(s: &TwoGroupoid, limits: &Limits) -> (ExchangeStats, Option<String>) {
    let n = s.n_cells();
    let g = &s.groupoid;
    // dense composition tables when affordable
    let dense = n > 0 && n <= 4096;
    let (v_table, h_table) = if dense {
        let mut v = vec![-1i32; n * n];
        let mut h = vec![-1i32; n * n];
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = s.v_compose(a, b) {
                    v[a * n + b] = c as i32;
                }
                if let Some(c) = s.h_compose(a, b) {
                    h[a * n + b] = c as i32;
                }
            }
        }
        (v, h)
    } else {
        (Vec::new(), Vec::new())
    };
    let vc = |a: usize, b: usize| -> Option<usize> {
        if dense {
            let x = v_table[a * n + b];
            (x >= 0).then_some(x as usize)
        } else {
            s.v_compose(a, b)
        }
    };
    let hc = |a: usize, b: usize| -> Option<usize> {
        if dense {
            let x = h_table[a * n + b];
            (x >= 0).then_some(x as usize)
        } else {
            s.h_compose(a, b)
        }
    };

    // vertical pairs grouped by base arrow (source of the inner cell),
    // restricted to parity +: on inversion-type cells the target map is an
    // antihomomorphism, so any quadruple involving them composes targets in
    // opposite orders on the two sides and the identity is not expected
    let mut v_pairs: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); g.n_arrows()];
    for inner in 0..n {
        for outer in 0..n {
            if s.parity(outer) != Parity::Plus || s.parity(inner) != Parity::Plus {
                continue;
            }
            if let Some(c) = vc(outer, inner) {
                v_pairs[s.source(inner).0].push((outer, inner, c));
            }
        }
    }

    let mut stats = ExchangeStats::default();
    let mut first = None;
    'sweep: for left_base in g.arrows() {
        for right_base in g.arrows() {
            if g.compose(left_base, right_base).is_none() {
                continue;
            }
            for &(zeta, xi, left_v) in &v_pairs[left_base.0] {
                for &(zeta2, xi2, right_v) in &v_pairs[right_base.0] {
                    let lhs = hc(left_v, right_v);
                    let rhs = match (hc(zeta, zeta2), hc(xi, xi2)) {
                        (Some(top), Some(bottom)) => vc(top, bottom),
                        _ => None,
                    };
                    let (Some(lhs), Some(rhs)) = (lhs, rhs) else {
                        continue;
                    };
                    stats.quadruples += 1;
                    if stats.quadruples > limits.max_quadruples {
                        stats.capped = true;
                        break 'sweep;
                    }
                    if lhs != rhs {
                        let same_substitution = s.source(lhs) == s.source(rhs)
                            && s.target(lhs) == s.target(rhs)
                            && s.parity(lhs) == s.parity(rhs);
                        if same_substitution {
                            stats.representative_mismatches += 1;
                        } else {
                            stats.substitution_failures += 1;
                            if first.is_none() {
                                first = Some(format!(
                                    "quadruple (ζ={}, ξ={}, ζ'={}, ξ'={}): {} vs {}",
                                    s.cell_label(zeta),
                                    s.cell_label(xi),
                                    s.cell_label(zeta2),
                                    s.cell_label(xi2),
                                    s.cell_label(lhs),
                                    s.cell_label(rhs)
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    (stats, first)
}

/// Verifies the 2-groupoid axioms: the vertical groupoid laws, horizontal
/// endpoint compatibility and closure, horizontal units and inverses for
/// parity + cells, and the exchange identity.
pub fn verify_two_groupoid(s: &TwoGroupoid, limits: &Limits) -> Report {
    let g = &s.groupoid;
    let mut report = Report::new(format!(
        "2-groupoid axioms ({} cells over {} arrows)",
        s.n_cells(),
        g.n_arrows()
    ));

    // cell well-formedness
    let mut shape = CheckOutcome::Pass;
    for id in s.cell_ids() {
        let c = s.cell(id);
        if let CellKind::Triple { left, right } = c.kind {
            let t = TripleCell {
                base: c.source,
                left,
                right,
                parity: c.parity,
            };
            match t.target(g) {
                Ok(target) if target == c.target => {}
                _ => {
                    shape = CheckOutcome::fail(format!(
                        "cell {} has inconsistent endpoint data",
                        s.cell_label(id)
                    ));
                    break;
                }
            }
        }
    }
    report.push("cells well formed", shape);

    // vertical closure
    let mut v_closed = CheckOutcome::Pass;
    'vc: for a in s.cell_ids() {
        for b in s.cell_ids() {
            if s.target(b) == s.source(a) && s.v_compose(a, b).is_none() {
                v_closed = CheckOutcome::fail(format!(
                    "{} ∘_V {} undefined",
                    s.cell_label(a),
                    s.cell_label(b)
                ));
                break 'vc;
            }
        }
    }
    report.push("vertical composition closed", v_closed);

    // vertical associativity
    let mut count = 0usize;
    let mut v_assoc = CheckOutcome::Pass;
    'va: for a in s.cell_ids() {
        for b in s.cell_ids() {
            if s.target(b) != s.source(a) {
                continue;
            }
            for c in s.cell_ids() {
                if s.target(c) != s.source(b) {
                    continue;
                }
                count += 1;
                if count > limits.max_triples {
                    v_assoc = CheckOutcome::NotVerified {
                        reason: format!("triple cap {} exceeded", limits.max_triples),
                    };
                    break 'va;
                }
                let ab = s.v_compose(a, b);
                let bc = s.v_compose(b, c);
                let lhs = ab.and_then(|x| s.v_compose(x, c));
                let rhs = bc.and_then(|x| s.v_compose(a, x));
                if lhs != rhs || lhs.is_none() {
                    v_assoc = CheckOutcome::fail(format!(
                        "({} ∘ {}) ∘ {} differs",
                        s.cell_label(a),
                        s.cell_label(b),
                        s.cell_label(c)
                    ));
                    break 'va;
                }
            }
        }
    }
    report.push("vertical associativity", v_assoc);

    // vertical units
    let mut v_units = CheckOutcome::Pass;
    for id in s.cell_ids() {
        let su = s.v_unit(s.source(id));
        let tu = s.v_unit(s.target(id));
        let ok = matches!((su, tu), (Some(su), Some(tu))
            if s.v_compose(id, su) == Some(id) && s.v_compose(tu, id) == Some(id));
        if !ok {
            v_units = CheckOutcome::fail(format!("unit law fails for {}", s.cell_label(id)));
            break;
        }
    }
    report.push("vertical units", v_units);

    // vertical inverses
    let mut v_inv = CheckOutcome::Pass;
    for id in s.cell_ids() {
        let ok = match s.v_inverse(id) {
            Some(inv) => {
                s.v_compose(inv, id) == s.v_unit(s.source(id))
                    && s.v_compose(id, inv) == s.v_unit(s.target(id))
            }
            None => false,
        };
        if !ok {
            v_inv = CheckOutcome::fail(format!("no vertical inverse for {}", s.cell_label(id)));
            break;
        }
    }
    report.push("vertical inverses", v_inv);

    // horizontal closure (canonical representations only: the closed-form
    // composite of same-parity cells with composable sources must be a cell;
    // declared symmetroids keep horizontal composition partial)
    let mut h_closed = CheckOutcome::Pass;
    if s.is_canonical() {
        'hc: for l in s.cell_ids() {
            for r in s.cell_ids() {
                if s.parity(l) != s.parity(r) || g.compose(s.source(l), s.source(r)).is_none() {
                    continue;
                }
                // targets must also compose (in reversed order on parity −)
                let targets_ok = match s.parity(l) {
                    Parity::Plus => g.compose(s.target(l), s.target(r)).is_some(),
                    Parity::Minus => g.compose(s.target(r), s.target(l)).is_some(),
                };
                if targets_ok && s.h_compose(l, r).is_none() {
                    h_closed = CheckOutcome::fail(format!(
                        "{} ∘_H {} escapes the cell set",
                        s.cell_label(l),
                        s.cell_label(r)
                    ));
                    break 'hc;
                }
            }
        }
    }
    report.push("horizontal composition closed", h_closed);

    // horizontal endpoint compatibility: source homomorphic, target
    // homomorphic on parity + and antihomomorphic on parity −
    let mut h_endpoints = CheckOutcome::Pass;
    'he: for l in s.cell_ids() {
        for r in s.cell_ids() {
            let Some(c) = s.h_compose(l, r) else { continue };
            let src_ok = g.compose(s.source(l), s.source(r)) == Some(s.source(c));
            let tgt_ok = match s.parity(l) {
                Parity::Plus => g.compose(s.target(l), s.target(r)) == Some(s.target(c)),
                Parity::Minus => g.compose(s.target(r), s.target(l)) == Some(s.target(c)),
            };
            if !src_ok || !tgt_ok || s.parity(c) != s.parity(l) {
                h_endpoints = CheckOutcome::fail(format!(
                    "endpoints of {} ∘_H {} incompatible",
                    s.cell_label(l),
                    s.cell_label(r)
                ));
                break 'he;
            }
        }
    }
    report.push("horizontal endpoint compatibility", h_endpoints);

    // horizontal associativity over defined triples
    let mut h_assoc = CheckOutcome::Pass;
    let mut h_count = 0usize;
    'ha: for a in s.cell_ids() {
        for b in s.cell_ids() {
            let Some(ab) = s.h_compose(a, b) else {
                continue;
            };
            for c in s.cell_ids() {
                let Some(bc) = s.h_compose(b, c) else {
                    continue;
                };
                h_count += 1;
                if h_count > limits.max_triples {
                    h_assoc = CheckOutcome::NotVerified {
                        reason: format!("triple cap {} exceeded", limits.max_triples),
                    };
                    break 'ha;
                }
                // horizontal composition is partial: the two bracketings must
                // agree whenever either is defined, but both may be undefined
                let lhs = s.h_compose(ab, c);
                let rhs = s.h_compose(a, bc);
                if lhs != rhs {
                    h_assoc = CheckOutcome::fail(format!(
                        "({} ∘_H {}) ∘_H {} differs",
                        s.cell_label(a),
                        s.cell_label(b),
                        s.cell_label(c)
                    ));
                    break 'ha;
                }
            }
        }
    }
    report.push("horizontal associativity", h_assoc);

    // horizontal units: for every parity + cell there are unit-to-unit cells
    // acting as right and left horizontal identities
    let unit_cells: Vec<CellId> = s
        .cell_ids()
        .filter(|&id| {
            g.is_unit(s.source(id)) && g.is_unit(s.target(id)) && s.parity(id) == Parity::Plus
        })
        .collect();
    let mut h_units = CheckOutcome::Pass;
    for id in s.cell_ids() {
        if s.parity(id) != Parity::Plus {
            continue;
        }
        let right_ok = unit_cells.iter().any(|&u| s.h_compose(id, u) == Some(id));
        let left_ok = unit_cells.iter().any(|&u| s.h_compose(u, id) == Some(id));
        if !right_ok || !left_ok {
            h_units = CheckOutcome::fail(format!("no horizontal unit for {}", s.cell_label(id)));
            break;
        }
    }
    report.push("horizontal units", h_units);

    // horizontal inverses: for every parity + cell some cell over the inverse
    // source arrow composes to unit-to-unit cells on both sides
    let mut h_inv = CheckOutcome::Pass;
    for id in s.cell_ids() {
        if s.parity(id) != Parity::Plus {
            continue;
        }
        let inv_source = g.inverse(s.source(id));
        let ok = s.cells_with_source(inv_source).iter().any(|&cand| {
            let right = s.h_compose(id, cand);
            let left = s.h_compose(cand, id);
            matches!((right, left), (Some(rc), Some(lc))
                    if g.is_unit(s.source(rc)) && g.is_unit(s.target(rc))
                        && g.is_unit(s.source(lc)) && g.is_unit(s.target(lc)))
        });
        if !ok {
            h_inv = CheckOutcome::fail(format!("no horizontal inverse for {}", s.cell_label(id)));
            break;
        }
    }
    report.push("horizontal inverses", h_inv);

    // exchange identity
    let (stats, counterexample) = exchange_check(s, limits);
    report.push(
        "exchange identity",
        if stats.capped {
            CheckOutcome::NotVerified {
                reason: format!("quadruple cap {} exceeded", limits.max_quadruples),
            }
        } else if let Some(ce) = counterexample {
            CheckOutcome::fail(ce)
        } else {
            CheckOutcome::Pass
        },
    );

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{c2_4, pair_groupoid};

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn full_symmetroid_cell_counts() {
        let s2 = canonical_symmetroid(&pair_groupoid(2).unwrap(), &limits()).unwrap();
        // per arrow and parity: 2 choices of λ, 2 of ρ
        assert_eq!(s2.n_cells(), 4 * 4 * 2);
        let s3 = canonical_symmetroid(&pair_groupoid(3).unwrap(), &limits()).unwrap();
        assert_eq!(s3.n_cells(), 9 * 9 * 2);
        let sc = canonical_symmetroid(&c2_4(), &limits()).unwrap();
        assert_eq!(sc.n_cells(), 8 * 16 * 2);
    }

    #[test]
    fn little_symmetroid_matches_direct_formula() {
        // oracle: loop-triples, λ and ρ in the isotropy groups of the right
        // endpoints for each parity
        for g in [pair_groupoid(3).unwrap(), c2_4()] {
            let s = canonical_little_symmetroid(&g, &limits()).unwrap();
            let mut expected = BTreeSet::new();
            for base in g.arrows() {
                for parity in [Parity::Plus, Parity::Minus] {
                    let (lam_at, rho_at) = match parity {
                        Parity::Plus => (g.target(base), g.source(base)),
                        Parity::Minus => (g.source(base), g.target(base)),
                    };
                    for left in g.hom_set(lam_at, lam_at) {
                        for right in g.hom_set(rho_at, rho_at) {
                            expected.insert(TripleCell {
                                base,
                                left,
                                right,
                                parity,
                            });
                        }
                    }
                }
            }
            assert_eq!(s.n_cells(), expected.len());
            for t in &expected {
                assert!(s.find_triple(t).is_some());
            }
        }
    }

    #[test]
    fn pair_groupoid_little_symmetroid_is_units_and_inversions() {
        let g = pair_groupoid(3).unwrap();
        let s0 = canonical_little_symmetroid(&g, &limits()).unwrap();
        let t = reversibility_symmetroid(&g, &limits()).unwrap();
        assert_eq!(s0.n_cells(), 2 * g.n_arrows());
        assert!(s0.contains_symmetroid(&t));
        assert!(t.contains_symmetroid(&s0));
    }

    #[test]
    fn inclusion_chain() {
        let g = c2_4();
        let t = reversibility_symmetroid(&g, &limits()).unwrap();
        let s0 = canonical_little_symmetroid(&g, &limits()).unwrap();
        let s = canonical_symmetroid(&g, &limits()).unwrap();
        assert!(s0.contains_symmetroid(&t));
        assert!(s.contains_symmetroid(&s0));
        assert_eq!(t.n_cells(), 2 * g.n_arrows());
    }

    #[test]
    fn axioms_reversibility() {
        for g in [pair_groupoid(2).unwrap(), pair_groupoid(3).unwrap(), c2_4()] {
            let t = reversibility_symmetroid(&g, &limits()).unwrap();
            let report = verify_two_groupoid(&t, &limits());
            assert!(report.all_pass(), "{report}");
        }
    }

    #[test]
    fn axioms_little() {
        for g in [pair_groupoid(2).unwrap(), pair_groupoid(3).unwrap(), c2_4()] {
            let s0 = canonical_little_symmetroid(&g, &limits()).unwrap();
            let report = verify_two_groupoid(&s0, &limits());
            assert!(report.all_pass(), "{report}");
        }
    }

    #[test]
    fn axioms_full_pair_2() {
        let s = canonical_symmetroid(&pair_groupoid(2).unwrap(), &limits()).unwrap();
        let report = verify_two_groupoid(&s, &limits());
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn tau_squares_to_unit_and_h_multiplies() {
        let g = c2_4();
        let t = reversibility_symmetroid(&g, &limits()).unwrap();
        for a in g.arrows() {
            let tau = t.find_triple(&TripleCell::tau(&g, a)).unwrap();
            let tau_inv = t.find_triple(&TripleCell::tau(&g, g.inverse(a))).unwrap();
            assert_eq!(t.v_compose(tau_inv, tau), t.v_unit(a));
        }
        for (b, a) in g.composable_pairs() {
            let tb = t.find_triple(&TripleCell::tau(&g, b)).unwrap();
            let ta = t.find_triple(&TripleCell::tau(&g, a)).unwrap();
            let composite = g.compose(b, a).unwrap();
            let tc = t.find_triple(&TripleCell::tau(&g, composite)).unwrap();
            assert_eq!(t.h_compose(tb, ta), Some(tc));
        }
    }

    #[test]
    fn tau_on_units_distinct_from_vertical_units() {
        let g = c2_4();
        let t = reversibility_symmetroid(&g, &limits()).unwrap();
        for x in g.objects() {
            let u = g.unit(x);
            let tau = t.find_triple(&TripleCell::tau(&g, u)).unwrap();
            assert_ne!(Some(tau), t.v_unit(u));
            assert_eq!(t.source(tau), u);
            assert_eq!(t.target(tau), u);
        }
    }

    #[test]
    fn commutation_relations_on_pair_3_and_c2_4() {
        for g in [pair_groupoid(3).unwrap(), c2_4()] {
            let s = canonical_symmetroid(&g, &limits()).unwrap();
            for alpha in g.arrows() {
                let tau = s.find_triple(&TripleCell::tau(&g, alpha)).unwrap();
                // right/left translations commute vertically
                for gamma in g.hom_set(g.source(alpha), g.source(alpha)) {
                    let xr = s
                        .find_triple(&TripleCell::xi_r(&g, alpha, gamma).unwrap())
                        .unwrap();
                    let target_r = s.target(xr);
                    for delta in g.hom_set(g.target(alpha), g.target(alpha)) {
                        let xl_above = s
                            .find_triple(&TripleCell::xi_l(&g, target_r, delta).unwrap())
                            .unwrap();
                        let xl = s
                            .find_triple(&TripleCell::xi_l(&g, alpha, delta).unwrap())
                            .unwrap();
                        let xr_above = s
                            .find_triple(&TripleCell::xi_r(&g, s.target(xl), gamma).unwrap())
                            .unwrap();
                        assert_eq!(
                            s.v_compose(xl_above, xr).unwrap(),
                            s.v_compose(xr_above, xl).unwrap()
                        );
                    }
                    // ξ^L_γ ∘_V τ_α = τ_{α∘γ⁻¹} ∘_V ξ^R_γ
                    let alpha_inv = g.inverse(alpha);
                    let xl_after_tau = s
                        .find_triple(&TripleCell::xi_l(&g, alpha_inv, gamma).unwrap())
                        .unwrap();
                    let tau_above = s.find_triple(&TripleCell::tau(&g, s.target(xr))).unwrap();
                    assert_eq!(
                        s.v_compose(xl_after_tau, tau).unwrap(),
                        s.v_compose(tau_above, xr).unwrap()
                    );
                }
                // ξ^R_δ ∘_V τ_α = τ_{δ∘α} ∘_V ξ^L_δ
                for delta in g.hom_set(g.target(alpha), g.target(alpha)) {
                    let alpha_inv = g.inverse(alpha);
                    let xr_after_tau = s
                        .find_triple(&TripleCell::xi_r(&g, alpha_inv, delta).unwrap())
                        .unwrap();
                    let xl = s
                        .find_triple(&TripleCell::xi_l(&g, alpha, delta).unwrap())
                        .unwrap();
                    let tau_above = s.find_triple(&TripleCell::tau(&g, s.target(xl))).unwrap();
                    let tau = s.find_triple(&TripleCell::tau(&g, alpha)).unwrap();
                    assert_eq!(
                        s.v_compose(xr_after_tau, tau).unwrap(),
                        s.v_compose(tau_above, xl).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn orbit_law_on_c2_4() {
        let g = c2_4();
        let s0 = canonical_little_symmetroid(&g, &limits()).unwrap();
        let orbits = s0.arrow_orbits();
        for orbit in &orbits {
            let a = orbit[0];
            let (x, y) = (g.source(a), g.target(a));
            let mut expected: Vec<ArrowId> = g.hom_set(y, x);
            expected.extend(g.hom_set(x, y));
            expected.sort();
            expected.dedup();
            assert_eq!(orbit, &expected);
        }
        // two object-pair orbits: loops at +/- stay separate? no: G(+,+) and
        // G(-,-) are distinct orbits, G(+,-)∪G(-,+) is one
        assert_eq!(orbits.len(), 3);
    }

    #[test]
    fn swap_symmetroid_verifies() {
        let s = swap_symmetroid(&limits()).unwrap();
        assert_eq!(s.groupoid.n_arrows(), 16);
        assert_eq!(s.n_cells(), 16 + 12);
        let report = verify_two_groupoid(&s, &limits());
        assert!(report.all_pass(), "{report}");
    }

    #[test]
    fn swap_paper_exchange_instance() {
        // (ξ∘ξ⁻¹) ∘_H (ξ'∘ξ'⁻¹) = (ξ∘_Hξ') ∘_V (ξ⁻¹∘_Hξ'⁻¹) at (α,+), (α⁻¹,+)
        let s = swap_symmetroid(&limits()).unwrap();
        let g = &s.groupoid;
        let a_plus = g.arrow_by_label("(α,1_+)").unwrap();
        let ainv_plus = g.arrow_by_label("(α^-1,1_+)").unwrap();
        let xi = s
            .cells_with_source(a_plus)
            .iter()
            .copied()
            .find(|&c| s.target(c) != a_plus)
            .unwrap();
        let xi2 = s
            .cells_with_source(ainv_plus)
            .iter()
            .copied()
            .find(|&c| s.target(c) != ainv_plus)
            .unwrap();
        let xi_inv = s.v_inverse(xi).unwrap();
        let xi2_inv = s.v_inverse(xi2).unwrap();
        let lhs = s
            .h_compose(
                s.v_compose(xi, xi_inv).unwrap(),
                s.v_compose(xi2, xi2_inv).unwrap(),
            )
            .unwrap();
        let rhs = s
            .v_compose(
                s.h_compose(xi, xi2).unwrap(),
                s.h_compose(xi_inv, xi2_inv).unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, rhs);
        // both equal the trivial cell at the unit arrow over (+,+)
        assert!(g.is_unit(s.source(lhs)));
        assert_eq!(s.source(lhs), s.target(lhs));
    }

    #[test]
    fn broken_user_spec_rejected() {
        // swap cells with one inverse removed: vertical inverse axiom fails
        let s = swap_symmetroid(&limits()).unwrap();
        let g = s.groupoid.clone();
        let mut named = Vec::new();
        for id in s.cell_ids() {
            if let CellKind::Named(name) = &s.cell(id).kind {
                if name.starts_with("σ") {
                    named.push((name.clone(), s.source(id), s.target(id), s.parity(id)));
                }
            }
        }
        named.pop();
        assert!(user_symmetroid(g, named, true, &limits()).is_err());
    }

    #[test]
    fn exchange_full_canonical_c2_4_substitution_level() {
        let g = c2_4();
        let s = canonical_symmetroid(&g, &limits()).unwrap();
        let (stats, counterexample) = exchange_check(&s, &limits());
        assert!(counterexample.is_none(), "{counterexample:?}");
        assert!(!stats.capped);
        assert!(stats.quadruples > 0);
        assert_eq!(stats.substitution_failures, 0);
    }
}
