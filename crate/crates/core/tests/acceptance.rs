//! Acceptance suite: one test per criterion, each emitting a single
//! pass/fail line (visible with `--nocapture`; a failed assertion carries the
//! same criterion tag).

use std::collections::BTreeSet;
use std::time::Instant;

use groupoids::algebra::{
    characteristic_of_bisection, convolve, involution, is_positive_definite, unit_function,
    GroupoidFunction, TOLERANCE,
};
use groupoids::bisections::{
    bisection_group, enumerate_bisections, reconstruct, semidirect_structure, Bisection,
};
use groupoids::group::FiniteGroup;
use groupoids::groupoid::{
    action_groupoid, c2_4, direct_product, group_groupoid, pair_groupoid, ArrowId, FiniteGroupoid,
};
use groupoids::morphisms::GroupoidFunctor;
use groupoids::symmetroid::{
    canonical_little_symmetroid, canonical_symmetroid, reversibility_symmetroid, swap_symmetroid,
    verify_two_groupoid, TripleCell, TwoGroupoid,
};
use groupoids::symmetry::{
    find_natural_transformation, flat_bisection_group, induced_automorphism, inner_symmetry_group,
    wigner_embedding, SymmetroidBisection,
};
use groupoids::Limits;

fn limits() -> Limits {
    Limits::default()
}

/// Bisections of C₂(4) in the published order b_e, b₊, b₋, b_g, b₁…b₄,
/// resolved through their arrow labels, as indices into the enumerated group.
fn paper_order(g: &FiniteGroupoid, bg: &groupoids::bisections::BisectionGroup) -> Vec<usize> {
    let arrows = |plus: &str, minus: &str| {
        vec![
            g.arrow_by_label(plus).unwrap(),
            g.arrow_by_label(minus).unwrap(),
        ]
    };
    let named = [
        arrows("1_+", "1_-"), // b_e
        arrows("σ_+", "1_-"), // b_+
        arrows("1_+", "σ_-"), // b_-
        arrows("σ_+", "σ_-"), // b_g
        arrows("β_1", "α_1"), // b_1
        arrows("β_2", "α_1"), // b_2
        arrows("β_1", "α_2"), // b_3
        arrows("β_2", "α_2"), // b_4
    ];
    named
        .into_iter()
        .map(|s_map| {
            let b = Bisection::new(g, s_map).unwrap();
            bg.index_of(&b).unwrap()
        })
        .collect()
}

#[test]
fn criterion_1_bisection_multiplication_table() {
    let start = Instant::now();
    let g = c2_4();
    let bg = bisection_group(&g, &limits()).unwrap();
    assert_eq!(bg.elements.len(), 8, "[FAIL] criterion 1: |𝒢| ≠ 8");
    let p = paper_order(&g, &bg);
    #[rustfmt::skip]
    let golden: [[usize; 8]; 8] = [
        [0, 1, 2, 3, 4, 5, 6, 7],
        [1, 0, 3, 2, 6, 7, 4, 5],
        [2, 3, 0, 1, 5, 4, 7, 6],
        [3, 2, 1, 0, 7, 6, 5, 4],
        [4, 5, 6, 7, 0, 1, 2, 3],
        [5, 4, 7, 6, 2, 3, 0, 1],
        [6, 7, 4, 5, 1, 0, 3, 2],
        [7, 6, 5, 4, 3, 2, 1, 0],
    ];
    for (r, row) in golden.iter().enumerate() {
        for (c, &want) in row.iter().enumerate() {
            assert_eq!(
                bg.group.mul(p[r], p[c]),
                p[want],
                "[FAIL] criterion 1: table entry ({r},{c})"
            );
        }
    }
    assert!(start.elapsed().as_secs() < 1);
    println!("[PASS] criterion 1: C₂(4) bisection group matches the published 8×8 table");
}

#[test]
fn criterion_2_reconstruction_golden() {
    let start = Instant::now();
    let g = c2_4();
    let rec = reconstruct(&g, &limits()).unwrap();
    assert!(rec.report.all_pass(), "[FAIL] criterion 2: {}", rec.report);
    let p = paper_order(&g, &rec.bisections);
    let n = g.n_objects();
    // kernel: (x, b, x) for (b_e, +), (b_e, −), (b_-, +), (b_+, −)
    let expected: BTreeSet<ArrowId> = [(p[0], 0usize), (p[0], 1), (p[2], 0), (p[1], 1)]
        .iter()
        .map(|&(b, x)| ArrowId(b * n + x))
        .collect();
    let got: BTreeSet<ArrowId> = rec.kernel.arrows().iter().copied().collect();
    assert_eq!(got, expected, "[FAIL] criterion 2: kernel arrows");
    assert_eq!(
        rec.quotient.classes.len(),
        8,
        "[FAIL] criterion 2: class count"
    );
    for class in &rec.quotient.classes {
        assert_eq!(class.len(), 2, "[FAIL] criterion 2: class size");
    }
    // two action arrows are identified exactly when they evaluate to the
    // same transition of C₂(4): the published correspondence table
    for a1 in rec.action.arrows() {
        for a2 in rec.action.arrows() {
            let same_class = rec.quotient.class_of[a1.0] == rec.quotient.class_of[a2.0];
            let same_eval = rec.evaluation.on_arrow(a1) == rec.evaluation.on_arrow(a2);
            assert_eq!(same_class, same_eval, "[FAIL] criterion 2: correspondence");
        }
    }
    assert!(
        rec.iso.is_some(),
        "[FAIL] criterion 2: no isomorphism witness"
    );
    assert!(start.elapsed().as_secs() < 5);
    println!("[PASS] criterion 2: C₂(4) reconstruction kernel, classes, and witness check out");
}

fn theorem_corpus() -> Vec<(String, FiniteGroupoid)> {
    let z4_rotation: Vec<Vec<usize>> = (0..4)
        .map(|k| (0..4).map(|x| (x + k) % 4).collect())
        .collect();
    vec![
        ("G(Ω₁)".into(), pair_groupoid(1).unwrap()),
        ("G(Ω₂)".into(), pair_groupoid(2).unwrap()),
        ("G(Ω₃)".into(), pair_groupoid(3).unwrap()),
        (
            "G(Ω₂)×Z₂".into(),
            direct_product(
                &pair_groupoid(2).unwrap(),
                &group_groupoid(&FiniteGroup::cyclic(2)),
            ),
        ),
        (
            "G(Ω₂)×Z₃".into(),
            direct_product(
                &pair_groupoid(2).unwrap(),
                &group_groupoid(&FiniteGroup::cyclic(3)),
            ),
        ),
        (
            "Z₄ ⋉ Ω₄".into(),
            action_groupoid(&FiniteGroup::cyclic(4), &z4_rotation).unwrap(),
        ),
    ]
}

#[test]
fn criterion_3_reconstruction_property_suite() {
    let start = Instant::now();
    for (name, g) in theorem_corpus() {
        let rec = reconstruct(&g, &limits()).unwrap();
        assert!(
            rec.report.all_pass() && rec.iso.is_some(),
            "[FAIL] criterion 3: {name}: {}",
            rec.report
        );
    }
    assert!(start.elapsed().as_secs() < 60);
    println!("[PASS] criterion 3: quotient of the action groupoid recovers every corpus groupoid");
}

#[test]
fn criterion_4_semidirect_structure() {
    let g = c2_4();
    let bg = bisection_group(&g, &limits()).unwrap();
    let sd = semidirect_structure(&g, &bg).unwrap();
    assert!(sd.report.all_pass(), "[FAIL] criterion 4: {}", sd.report);
    assert!(
        sd.vertical_group.is_isomorphic_to(&FiniteGroup::klein()),
        "[FAIL] criterion 4: 𝒢₀ not Klein"
    );
    assert!(
        sd.horizontal_group
            .is_isomorphic_to(&FiniteGroup::cyclic(2)),
        "[FAIL] criterion 4: ℋ not Z₂"
    );
    let p = paper_order(&g, &bg);
    // ρ(σ) = b₄ is a homomorphic section: b₄ induces the object swap and
    // squares to b_e
    let b4 = p[7];
    assert_ne!(
        bg.elements[b4].permutation(&g),
        (0..g.n_objects()).collect::<Vec<_>>(),
        "[FAIL] criterion 4: b₄ fixes the objects"
    );
    assert_eq!(bg.group.mul(b4, b4), p[0], "[FAIL] criterion 4: b₄² ≠ b_e");
    // W^ρ_σ = conjugation by b₄ swaps b₊ ↔ b₋ and fixes b_e, b_g
    let conj = |v: usize| bg.group.mul(bg.group.mul(b4, v), bg.group.inv(b4));
    assert_eq!(conj(p[0]), p[0], "[FAIL] criterion 4: W moves b_e");
    assert_eq!(conj(p[3]), p[3], "[FAIL] criterion 4: W moves b_g");
    assert_eq!(conj(p[1]), p[2], "[FAIL] criterion 4: W(b₊) ≠ b₋");
    assert_eq!(conj(p[2]), p[1], "[FAIL] criterion 4: W(b₋) ≠ b₊");
    println!("[PASS] criterion 4: 𝒢 ≅ (Z₂×Z₂) ⋊ Z₂ with the published section and twist");
}

#[test]
fn criterion_5_two_groupoid_axiom_suite() {
    let start = Instant::now();
    let corpus = [
        ("G(Ω₂)", pair_groupoid(2).unwrap()),
        ("G(Ω₃)", pair_groupoid(3).unwrap()),
        ("C₂(4)", c2_4()),
    ];
    type Builder = fn(&FiniteGroupoid, &Limits) -> groupoids::Result<TwoGroupoid>;
    for (name, g) in &corpus {
        let builders: [(&str, Builder); 3] = [
            ("S₀", canonical_little_symmetroid),
            ("S", canonical_symmetroid),
            ("𝔗", reversibility_symmetroid),
        ];
        for (tag, build) in builders {
            let s = build(g, &limits()).unwrap();
            let report = verify_two_groupoid(&s, &limits());
            assert!(
                report.all_pass(),
                "[FAIL] criterion 5: {tag}({name}): {report}"
            );
        }
    }
    // the commutation relations between translations and inversions, as
    // exact cell identities over G(Ω₃)
    let g = pair_groupoid(3).unwrap();
    let s = canonical_symmetroid(&g, &limits()).unwrap();
    for alpha in g.arrows() {
        let alpha_inv = g.inverse(alpha);
        let tau = s.find_triple(&TripleCell::tau(&g, alpha)).unwrap();
        for gamma in g.hom_set(g.source(alpha), g.source(alpha)) {
            let xr = s
                .find_triple(&TripleCell::xi_r(&g, alpha, gamma).unwrap())
                .unwrap();
            for delta in g.hom_set(g.target(alpha), g.target(alpha)) {
                let xl = s
                    .find_triple(&TripleCell::xi_l(&g, alpha, delta).unwrap())
                    .unwrap();
                let xl_above = s
                    .find_triple(&TripleCell::xi_l(&g, s.target(xr), delta).unwrap())
                    .unwrap();
                let xr_above = s
                    .find_triple(&TripleCell::xi_r(&g, s.target(xl), gamma).unwrap())
                    .unwrap();
                assert_eq!(
                    s.v_compose(xl_above, xr),
                    s.v_compose(xr_above, xl),
                    "[FAIL] criterion 5: translations do not commute"
                );
            }
            let xl_after_tau = s
                .find_triple(&TripleCell::xi_l(&g, alpha_inv, gamma).unwrap())
                .unwrap();
            let tau_above = s.find_triple(&TripleCell::tau(&g, s.target(xr))).unwrap();
            assert_eq!(
                s.v_compose(xl_after_tau, tau),
                s.v_compose(tau_above, xr),
                "[FAIL] criterion 5: ξ^L/τ relation"
            );
        }
        for delta in g.hom_set(g.target(alpha), g.target(alpha)) {
            let xr_after_tau = s
                .find_triple(&TripleCell::xi_r(&g, alpha_inv, delta).unwrap())
                .unwrap();
            let xl = s
                .find_triple(&TripleCell::xi_l(&g, alpha, delta).unwrap())
                .unwrap();
            let tau_above = s.find_triple(&TripleCell::tau(&g, s.target(xl))).unwrap();
            assert_eq!(
                s.v_compose(xr_after_tau, tau),
                s.v_compose(tau_above, xl),
                "[FAIL] criterion 5: ξ^R/τ relation"
            );
        }
    }
    assert!(start.elapsed().as_secs() < 120);
    println!(
        "[PASS] criterion 5: axiom and exchange suite for S₀, S, 𝔗 plus commutation relations"
    );
}

#[test]
fn criterion_6_little_symmetroid_orbits() {
    let g = c2_4();
    let s0 = canonical_little_symmetroid(&g, &limits()).unwrap();
    let orbits: BTreeSet<Vec<ArrowId>> = s0
        .arrow_orbits()
        .into_iter()
        .map(|mut o| {
            o.sort();
            o
        })
        .collect();
    let mut expected = BTreeSet::new();
    for x in g.objects() {
        for y in g.objects() {
            if x > y {
                continue;
            }
            let mut arrows = g.hom_set(y, x);
            arrows.extend(g.hom_set(x, y));
            let set: BTreeSet<ArrowId> = arrows.into_iter().collect();
            expected.insert(set.into_iter().collect::<Vec<_>>());
        }
    }
    assert_eq!(
        orbits, expected,
        "[FAIL] criterion 6: orbits ≠ G(x,y)∪G(y,x)"
    );
    println!("[PASS] criterion 6: S₀(C₂(4)) orbits are exactly the sets G(x,y)∪G(y,x)");
}

#[test]
fn criterion_7_swap_symmetroid_flats_and_naturality() {
    let s = swap_symmetroid(&limits()).unwrap();
    let g = &s.groupoid;
    let flats = flat_bisection_group(&s, &limits()).unwrap();
    // 𝒮♭ = {b_e, b_σ} as a set
    let b_e = SymmetroidBisection::identity(&s).unwrap();
    let sigma_map: Vec<usize> = g
        .arrows()
        .map(|a| {
            s.cells_with_source(a)
                .iter()
                .copied()
                .find(|&c| s.target(c) != a)
                .unwrap_or_else(|| s.v_unit(a).unwrap())
        })
        .collect();
    let b_sigma = SymmetroidBisection::new(&s, sigma_map).unwrap();
    let got: BTreeSet<Vec<usize>> = flats.elements.iter().map(|b| b.cells().to_vec()).collect();
    let expected: BTreeSet<Vec<usize>> = [b_e.cells().to_vec(), b_sigma.cells().to_vec()].into();
    assert_eq!(got, expected, "[FAIL] criterion 7: 𝒮♭ ≠ {{b_e, b_σ}}");
    let ei = flats.index_of(&b_e).unwrap();
    let si = flats.index_of(&b_sigma).unwrap();
    assert_eq!(
        flats.group.mul(si, si),
        ei,
        "[FAIL] criterion 7: b_σ² ≠ b_e"
    );
    // the naturality witness for φ_σ against the identity: at the two fixed
    // objects any isotropy loop is allowed (here only units exist); at the
    // swapped objects the components are the unique connecting arrows
    let phi = induced_automorphism(&s, &b_sigma).unwrap();
    let id = GroupoidFunctor::identity(g);
    let (w, _) = find_natural_transformation(g, &phi, &id)
        .unwrap()
        .expect("[FAIL] criterion 7: no naturality witness");
    let component_set: BTreeSet<String> = g
        .objects()
        .map(|x| g.arrow_label(w.component(x)).to_string())
        .collect();
    let expected_components: BTreeSet<String> = [
        "(1_+,1_+)".to_string(),
        "(1_-,1_-)".to_string(),
        "(α^-1,α)".to_string(),
        "(α,α^-1)".to_string(),
    ]
    .into();
    assert_eq!(
        component_set, expected_components,
        "[FAIL] criterion 7: witness components"
    );
    println!(
        "[PASS] criterion 7: swap symmetroid has 𝒮♭ = {{b_e, b_σ}} with the published witness"
    );
}

#[test]
fn criterion_8_inner_symmetries_factor_in_the_canonical_symmetroid() {
    let symmetroids: Vec<(&str, TwoGroupoid)> = vec![
        ("swap", swap_symmetroid(&limits()).unwrap()),
        (
            "S(G(Ω₂))",
            canonical_symmetroid(&pair_groupoid(2).unwrap(), &limits()).unwrap(),
        ),
        (
            "S(C₂(4))",
            canonical_symmetroid(&c2_4(), &limits()).unwrap(),
        ),
    ];
    let mut nontrivial = 0;
    for (name, s) in &symmetroids {
        let inner = inner_symmetry_group(s, &limits()).unwrap();
        for &i in &inner.inner {
            let b = &inner.flats.elements[i];
            let fact = wigner_embedding(s, b, &limits()).unwrap();
            assert!(
                fact.report.all_pass(),
                "[FAIL] criterion 8: {name}: {}",
                fact.report
            );
            if i != inner.flats.identity_index() {
                nontrivial += 1;
            }
        }
    }
    assert!(
        nontrivial > 0,
        "[FAIL] criterion 8: only identity symmetries found"
    );
    println!("[PASS] criterion 8: every inner flat bisection factors as b^L_Φ·b^R_Φ inside 𝒮(G)♭");
}

#[test]
fn criterion_9_algebra_suite() {
    let g = c2_4();
    // associativity over all 512 delta triples, exact integer arithmetic
    let deltas: Vec<_> = g.arrows().map(|a| GroupoidFunction::delta(&g, a)).collect();
    for f in &deltas {
        for h in &deltas {
            for k in &deltas {
                let lhs = convolve(&g, &convolve(&g, f, h).unwrap(), k).unwrap();
                let rhs = convolve(&g, f, &convolve(&g, h, k).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "[FAIL] criterion 9: associativity");
            }
        }
    }
    // representation property and unitarity over all bisections
    let bg = bisection_group(&g, &limits()).unwrap();
    let chi: Vec<_> = bg
        .elements
        .iter()
        .map(|b| characteristic_of_bisection(&g, b))
        .collect();
    for i in 0..8 {
        for j in 0..8 {
            let prod = convolve(&g, &chi[i], &chi[j]).unwrap();
            assert_eq!(
                prod,
                chi[bg.group.mul(i, j)],
                "[FAIL] criterion 9: χ is not a representation"
            );
        }
    }
    let u = unit_function(&g);
    for x in &chi {
        assert_eq!(
            convolve(&g, &involution(&g, x), x).unwrap(),
            u,
            "[FAIL] criterion 9: χ_b*∗χ_b ≠ u"
        );
    }
    // states on the Z₂ group algebra
    let z2 = group_groupoid(&FiniteGroup::cyclic(2));
    let good = GroupoidFunction::from_real(&z2, &[1.0, -1.0]).unwrap();
    let bad = GroupoidFunction::from_real(&z2, &[1.0, 2.0]).unwrap();
    let good_report = is_positive_definite(&z2, &good);
    let bad_report = is_positive_definite(&z2, &bad);
    assert!(good_report.positive, "[FAIL] criterion 9: (1,−1) not PSD");
    assert!(
        good_report.per_object[0].min_eigenvalue.abs() <= TOLERANCE,
        "[FAIL] criterion 9: (1,−1) eigenvalues"
    );
    assert!(!bad_report.positive, "[FAIL] criterion 9: (1,2) accepted");
    println!("[PASS] criterion 9: convolution algebra, χ representation, and PSD checks");
}

/// Every subset of arrows that hits each object exactly once as source and
/// once as target, found by scanning all 2^|G| subsets.
fn brute_force_bisections(g: &FiniteGroupoid) -> BTreeSet<Vec<usize>> {
    let m = g.n_arrows();
    let n = g.n_objects();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1u32 << m) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let mut src = vec![0usize; n];
        let mut tgt = vec![0usize; n];
        for a in 0..m {
            if mask & (1 << a) != 0 {
                src[g.source(ArrowId(a)).0] += 1;
                tgt[g.target(ArrowId(a)).0] += 1;
            }
        }
        if src.iter().all(|&c| c == 1) && tgt.iter().all(|&c| c == 1) {
            out.insert((0..m).filter(|a| mask & (1 << a) != 0).collect());
        }
    }
    out
}

#[test]
fn criterion_10_bisection_enumeration_matches_subset_oracle() {
    let start = Instant::now();
    let mut corpus: Vec<(String, FiniteGroupoid)> = theorem_corpus();
    corpus.push(("C₂(4)".into(), c2_4()));
    corpus.push(("Z₂".into(), group_groupoid(&FiniteGroup::cyclic(2))));
    corpus.push(("Z₂×Z₂".into(), group_groupoid(&FiniteGroup::klein())));
    for (name, g) in corpus {
        if g.n_arrows() > 12 {
            continue;
        }
        let fast: BTreeSet<Vec<usize>> = enumerate_bisections(&g, &limits())
            .unwrap()
            .into_iter()
            .map(|b| {
                let mut arrows: Vec<usize> = b.arrows().iter().map(|a| a.0).collect();
                arrows.sort();
                arrows
            })
            .collect();
        assert_eq!(
            fast,
            brute_force_bisections(&g),
            "[FAIL] criterion 10: {name}"
        );
    }
    assert!(start.elapsed().as_secs() < 30);
    println!("[PASS] criterion 10: enumerate_bisections agrees with the 2^|G| subset oracle");
}
