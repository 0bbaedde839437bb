//! The convolution *-algebra of a finite groupoid: complex functions on
//! arrows with the convolution product, involution, characteristic functions
//! of bisections, positive-definite functions (states), and invariance of
//! functions under a set of substitutions.
//!
//! The algebra is finite-dimensional, so no completion is involved: the full
//! convolution algebra is already the C*-algebra of the groupoid.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::bisections::Bisection;
use crate::error::{GroupoidError, Result};
use crate::groupoid::{ArrowId, FiniteGroupoid, ObjectId};
use crate::report::{CheckOutcome, Report};
use crate::symmetroid::TwoGroupoid;

/// Coefficientwise comparison tolerance; integer-valued computations stay
/// exact because convolution only adds and multiplies.
pub const TOLERANCE: f64 = 1e-9;

/// A complex-valued function on the arrows of a groupoid, the generic element
/// of the groupoid algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupoidFunction {
    values: Vec<Complex64>,
}

impl GroupoidFunction {
    pub fn zero(g: &FiniteGroupoid) -> Self {
        GroupoidFunction {
            values: vec![Complex64::ZERO; g.n_arrows()],
        }
    }

    pub fn delta(g: &FiniteGroupoid, a: ArrowId) -> Self {
        let mut f = Self::zero(g);
        f.values[a.0] = Complex64::ONE;
        f
    }

    pub fn from_values(g: &FiniteGroupoid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != g.n_arrows() {
            return Err(GroupoidError::InvalidInput(format!(
                "expected {} coefficients, got {}",
                g.n_arrows(),
                values.len()
            )));
        }
        Ok(GroupoidFunction { values })
    }

    pub fn from_real(g: &FiniteGroupoid, values: &[f64]) -> Result<Self> {
        Self::from_values(g, values.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    pub fn value(&self, a: ArrowId) -> Complex64 {
        self.values[a.0]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn set(&mut self, a: ArrowId, v: Complex64) {
        self.values[a.0] = v;
    }

    pub fn scale(&self, c: Complex64) -> Self {
        GroupoidFunction {
            values: self.values.iter().map(|&v| c * v).collect(),
        }
    }

    pub fn add(&self, other: &GroupoidFunction) -> Self {
        GroupoidFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn approx_eq(&self, other: &GroupoidFunction) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(&a, &b)| (a - b).norm() <= TOLERANCE)
    }
}

/// The unit element u = Σ_x δ_{1_x}.
pub fn unit_function(g: &FiniteGroupoid) -> GroupoidFunction {
    let mut u = GroupoidFunction::zero(g);
    for x in g.objects() {
        u.set(g.unit(x), Complex64::ONE);
    }
    u
}

/// Convolution (f∗h)(α) = Σ over factorizations β∘γ = α of f(β)·h(γ).
/// Summation runs in ascending pair-index order for reproducibility.
pub fn convolve(
    g: &FiniteGroupoid,
    f: &GroupoidFunction,
    h: &GroupoidFunction,
) -> Result<GroupoidFunction> {
    if f.values.len() != g.n_arrows() || h.values.len() != g.n_arrows() {
        return Err(GroupoidError::InvalidInput(
            "functions live on a different groupoid".into(),
        ));
    }
    let mut out = GroupoidFunction::zero(g);
    for (beta, gamma) in g.composable_pairs() {
        let a = g.compose(beta, gamma).expect("composable");
        out.values[a.0] += f.value(beta) * h.value(gamma);
    }
    Ok(out)
}

/// Involution f*(α) = conj(f(α⁻¹)).
pub fn involution(g: &FiniteGroupoid, f: &GroupoidFunction) -> GroupoidFunction {
    let mut out = GroupoidFunction::zero(g);
    for a in g.arrows() {
        out.values[a.0] = f.value(g.inverse(a)).conj();
    }
    out
}

/// χ_b = Σ_x δ_{b_s(x)}, the characteristic function of a bisection. These
/// close on a unitary representation of the bisection group:
/// χ_{b₂}∗χ_{b₁} = χ_{b₂∘b₁} and χ_b*∗χ_b = u.
pub fn characteristic_of_bisection(g: &FiniteGroupoid, b: &Bisection) -> GroupoidFunction {
    let mut out = GroupoidFunction::zero(g);
    for x in g.objects() {
        out.set(b.arrow_at(x), Complex64::ONE);
    }
    out
}

/// Per-object verdict of the positive-definiteness check.
#[derive(Debug, Clone)]
pub struct GramVerdict {
    pub object: ObjectId,
    pub min_eigenvalue: f64,
    pub hermitian: bool,
    pub psd: bool,
}

#[derive(Debug, Clone)]
pub struct PositivityReport {
    pub per_object: Vec<GramVerdict>,
    pub positive: bool,
}

/// Checks the state condition: for each object x, the Gram matrix over the
/// source fiber s⁻¹(x) with entries M[α,β] = φ(α∘β⁻¹) is positive
/// semidefinite. Eigenvalues of the Hermitian matrix are computed through its
/// real 2n×2n embedding [[Re, −Im], [Im, Re]].
pub fn is_positive_definite(g: &FiniteGroupoid, phi: &GroupoidFunction) -> PositivityReport {
    let mut per_object = Vec::new();
    let mut positive = true;
    for x in g.objects() {
        let fiber = g.out_arrows(x);
        let n = fiber.len();
        let mut m = vec![vec![Complex64::ZERO; n]; n];
        for (i, &a) in fiber.iter().enumerate() {
            for (j, &b) in fiber.iter().enumerate() {
                let c = g.compose(a, g.inverse(b)).expect("same source fiber");
                m[i][j] = phi.value(c);
            }
        }
        let hermitian =
            (0..n).all(|i| (0..n).all(|j| (m[i][j] - m[j][i].conj()).norm() <= TOLERANCE));
        let min_eigenvalue = if hermitian {
            let mut real = DMatrix::<f64>::zeros(2 * n, 2 * n);
            for i in 0..n {
                for j in 0..n {
                    real[(i, j)] = m[i][j].re;
                    real[(i, j + n)] = -m[i][j].im;
                    real[(i + n, j)] = m[i][j].im;
                    real[(i + n, j + n)] = m[i][j].re;
                }
            }
            real.symmetric_eigen()
                .eigenvalues
                .iter()
                .copied()
                .fold(f64::INFINITY, f64::min)
        } else {
            f64::NAN
        };
        let psd = hermitian && min_eigenvalue >= -TOLERANCE;
        positive &= psd;
        per_object.push(GramVerdict {
            object: x,
            min_eigenvalue,
            hermitian,
            psd,
        });
    }
    PositivityReport {
        per_object,
        positive,
    }
}

/// The linear functional of a state evaluated on an algebra element:
/// ρ(f) = Σ_α f(α)·φ(α), so ρ(δ_α) = φ(α).
pub fn evaluate_state(
    g: &FiniteGroupoid,
    phi: &GroupoidFunction,
    f: &GroupoidFunction,
) -> Complex64 {
    g.arrows().map(|a| f.value(a) * phi.value(a)).sum()
}

/// Cells ξ: α ⇒ β of the symmetroid with f(α) ≠ f(β); the function is
/// invariant under the substitutions iff the list is empty.
pub fn invariance_under_substitution(
    g: &FiniteGroupoid,
    f: &GroupoidFunction,
    s: &TwoGroupoid,
) -> Result<Vec<usize>> {
    if s.groupoid != *g {
        return Err(GroupoidError::MismatchedParent(
            "symmetroid cells live over a different groupoid".into(),
        ));
    }
    Ok(s.cell_ids()
        .filter(|&c| (f.value(s.source(c)) - f.value(s.target(c))).norm() > TOLERANCE)
        .collect())
}

/// Report wrapper for the invariance check, with cell labels spelled out.
pub fn invariance_report(
    g: &FiniteGroupoid,
    f: &GroupoidFunction,
    s: &TwoGroupoid,
) -> Result<Report> {
    let mut report = Report::new("invariance under substitutions");
    let violations = invariance_under_substitution(g, f, s)?;
    report.push(
        "f(s(ξ)) = f(t(ξ)) for every cell",
        if violations.is_empty() {
            CheckOutcome::Pass
        } else {
            CheckOutcome::fail(format!(
                "{} violating cells, first: {}",
                violations.len(),
                s.cell_label(violations[0])
            ))
        },
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisections::bisection_group;
    use crate::config::Limits;
    use crate::group::FiniteGroup;
    use crate::groupoid::{c2_4, group_groupoid, pair_groupoid};
    use crate::symmetroid::canonical_little_symmetroid;

    fn z2_groupoid() -> FiniteGroupoid {
        group_groupoid(&FiniteGroup::cyclic(2))
    }

    #[test]
    fn delta_convolution_follows_composition() {
        let g = c2_4();
        for beta in g.arrows() {
            for gamma in g.arrows() {
                let prod = convolve(
                    &g,
                    &GroupoidFunction::delta(&g, beta),
                    &GroupoidFunction::delta(&g, gamma),
                )
                .unwrap();
                let expected = match g.compose(beta, gamma) {
                    Some(a) => GroupoidFunction::delta(&g, a),
                    None => GroupoidFunction::zero(&g),
                };
                assert_eq!(prod, expected);
            }
        }
    }

    #[test]
    fn unit_function_is_neutral() {
        let g = c2_4();
        let u = unit_function(&g);
        for a in g.arrows() {
            let d = GroupoidFunction::delta(&g, a);
            assert_eq!(convolve(&g, &u, &d).unwrap(), d);
            assert_eq!(convolve(&g, &d, &u).unwrap(), d);
        }
    }

    #[test]
    fn z2_group_algebra_square() {
        let g = z2_groupoid();
        let f = GroupoidFunction::from_real(&g, &[1.0, 1.0]).unwrap();
        let sq = convolve(&g, &f, &f).unwrap();
        let expected = GroupoidFunction::from_real(&g, &[2.0, 2.0]).unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn convolution_associative_on_all_basis_triples() {
        let g = c2_4();
        let deltas: Vec<_> = g.arrows().map(|a| GroupoidFunction::delta(&g, a)).collect();
        for f in &deltas {
            for h in &deltas {
                for k in &deltas {
                    let lhs = convolve(&g, &convolve(&g, f, h).unwrap(), k).unwrap();
                    let rhs = convolve(&g, f, &convolve(&g, h, k).unwrap()).unwrap();
                    // integer arithmetic: exact equality
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn involution_is_a_star_operation() {
        let g = c2_4();
        for a in g.arrows() {
            let d = GroupoidFunction::delta(&g, a);
            assert_eq!(
                involution(&g, &d),
                GroupoidFunction::delta(&g, g.inverse(a))
            );
            assert_eq!(involution(&g, &involution(&g, &d)), d);
        }
        for beta in g.arrows() {
            for alpha in g.arrows() {
                let db = GroupoidFunction::delta(&g, beta);
                let da = GroupoidFunction::delta(&g, alpha);
                let lhs = involution(&g, &convolve(&g, &db, &da).unwrap());
                let rhs = convolve(&g, &involution(&g, &da), &involution(&g, &db)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn characteristic_functions_represent_the_bisection_group() {
        let g = c2_4();
        let bg = bisection_group(&g, &Limits::default()).unwrap();
        let chi: Vec<_> = bg
            .elements
            .iter()
            .map(|b| characteristic_of_bisection(&g, b))
            .collect();
        for (i, b2) in bg.elements.iter().enumerate() {
            for (j, b1) in bg.elements.iter().enumerate() {
                let prod = convolve(&g, &chi[i], &chi[j]).unwrap();
                let comp = b2.compose(&g, b1);
                let k = bg.index_of(&comp).unwrap();
                assert_eq!(prod, chi[k]);
            }
        }
        let u = unit_function(&g);
        for (i, b) in bg.elements.iter().enumerate() {
            let _ = b;
            let adj = involution(&g, &chi[i]);
            assert_eq!(convolve(&g, &adj, &chi[i]).unwrap(), u);
        }
        // injectivity of b ↦ χ_b
        for i in 0..chi.len() {
            for j in (i + 1)..chi.len() {
                assert_ne!(chi[i], chi[j]);
            }
        }
    }

    #[test]
    fn pair_groupoid_3_characteristics_realize_sym3() {
        let g = pair_groupoid(3).unwrap();
        let bg = bisection_group(&g, &Limits::default()).unwrap();
        assert_eq!(bg.elements.len(), 6);
        for (i, b2) in bg.elements.iter().enumerate() {
            for (j, b1) in bg.elements.iter().enumerate() {
                let prod = convolve(
                    &g,
                    &characteristic_of_bisection(&g, b2),
                    &characteristic_of_bisection(&g, b1),
                )
                .unwrap();
                let comp = bg.elements[bg.group.mul(i, j)].clone();
                assert_eq!(prod, characteristic_of_bisection(&g, &comp));
            }
        }
    }

    #[test]
    fn psd_accepts_alternating_sign_on_z2() {
        let g = z2_groupoid();
        let phi = GroupoidFunction::from_real(&g, &[1.0, -1.0]).unwrap();
        let report = is_positive_definite(&g, &phi);
        assert!(report.positive);
        assert!(report.per_object[0].min_eigenvalue.abs() <= TOLERANCE);
    }

    #[test]
    fn psd_rejects_overweight_off_diagonal_on_z2() {
        let g = z2_groupoid();
        let phi = GroupoidFunction::from_real(&g, &[1.0, 2.0]).unwrap();
        let report = is_positive_definite(&g, &phi);
        assert!(!report.positive);
        assert!(report.per_object[0].min_eigenvalue < -TOLERANCE);
    }

    #[test]
    fn psd_accepts_unit_indicator() {
        let g = c2_4();
        let report = is_positive_definite(&g, &unit_function(&g));
        assert!(report.positive);
    }

    #[test]
    fn state_evaluates_deltas_to_its_values() {
        let g = c2_4();
        let phi =
            GroupoidFunction::from_real(&g, &[1.0, 1.0, 0.5, 0.5, 0.0, 0.25, 0.0, 0.25]).unwrap();
        for a in g.arrows() {
            assert_eq!(
                evaluate_state(&g, &phi, &GroupoidFunction::delta(&g, a)),
                phi.value(a)
            );
        }
    }

    #[test]
    fn constant_function_is_invariant() {
        let g = c2_4();
        let s = canonical_little_symmetroid(&g, &Limits::default()).unwrap();
        let f = GroupoidFunction::from_real(&g, &[1.0; 8]).unwrap();
        assert!(invariance_under_substitution(&g, &f, &s)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn asymmetric_hamiltonian_is_not_invariant() {
        let g = c2_4();
        let s = canonical_little_symmetroid(&g, &Limits::default()).unwrap();
        let a1 = g.arrow_by_label("α_1").unwrap();
        let a2 = g.arrow_by_label("α_2").unwrap();
        let mut h = GroupoidFunction::zero(&g);
        h.set(a1, Complex64::ONE);
        let violations = invariance_under_substitution(&g, &h, &s).unwrap();
        assert!(!violations.is_empty());
        assert!(violations.iter().any(|&c| {
            (s.source(c) == a1 && s.target(c) == a2) || (s.source(c) == a2 && s.target(c) == a1)
        }));
    }
}
