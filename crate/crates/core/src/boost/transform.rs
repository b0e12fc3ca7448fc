use std::fmt;

use crate::symbolic::{
    apply_operator, ExpLinearMultiplier, LinearPDE, MultiIndex, Scalar, BETA, GAMMA,
};

pub type Matrix4 = [[Scalar; 4]; 4];

fn identity4() -> Matrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Scalar::one() } else { Scalar::zero() }))
}

fn matmul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..4).fold(Scalar::zero(), |acc, k| {
                if a[i][k].is_zero() || b[k][j].is_zero() {
                    acc
                } else {
                    &acc + &(&a[i][k] * &b[k][j])
                }
            })
        })
    })
}

/// A change of inertial frame `x = J·x′` on `(x⁰, x¹, x², x³)`.
///
/// Galilean boosts use `x⁰ = t`; Lorentz boosts use `x⁰ = ct`.
#[derive(Clone, Debug, PartialEq)]
pub enum FrameTransform {
    Identity,
    /// Spatial rotation `r = M r′`; `matrix` is exactly orthogonal.
    Rotation { label: String, matrix: [[Scalar; 3]; 3] },
    /// `t = t′`, `r = r′ + v t′` along `axis` (1..=3).
    Galilean { v: Scalar, axis: usize },
    /// `x⁰ = γ(x⁰′ + βx^a′)`, `x^a = γ(x^a′ + βx⁰′)`.
    Lorentz { beta: Scalar, gamma: Scalar, axis: usize },
    /// Apply the first transform, then the second, and so on.
    Chain(Vec<FrameTransform>),
}

impl FrameTransform {
    pub fn galilean(v: Scalar, axis: usize) -> Self {
        assert!((1..4).contains(&axis), "boost axis must be spatial");
        FrameTransform::Galilean { v, axis }
    }

    /// Boost with symbolic `β`, `γ` tied by `(1 − β²)γ² = 1`.
    pub fn lorentz(axis: usize) -> Self {
        assert!((1..4).contains(&axis), "boost axis must be spatial");
        FrameTransform::Lorentz {
            beta: Scalar::sym(BETA),
            gamma: Scalar::sym(GAMMA),
            axis,
        }
    }

    /// Boost with explicit values; the caller vouches for `(1 − β²)γ² = 1`.
    pub fn lorentz_with(beta: Scalar, gamma: Scalar, axis: usize) -> Self {
        assert!((1..4).contains(&axis), "boost axis must be spatial");
        FrameTransform::Lorentz { beta, gamma, axis }
    }

    /// Rotation by `eighths · π/4` counterclockwise about spatial `axis`.
    pub fn rotation(axis: usize, eighths: i32) -> Self {
        assert!((1..4).contains(&axis), "rotation axis must be spatial");
        let k = eighths.rem_euclid(8);
        let h = &Scalar::sqrt2() * &Scalar::ratio(1, 2);
        let (c, s) = match k {
            0 => (Scalar::one(), Scalar::zero()),
            1 => (h.clone(), h.clone()),
            2 => (Scalar::zero(), Scalar::one()),
            3 => (-h.clone(), h.clone()),
            4 => (Scalar::int(-1), Scalar::zero()),
            5 => (-h.clone(), -h.clone()),
            6 => (Scalar::zero(), Scalar::int(-1)),
            _ => (h.clone(), -h.clone()),
        };
        let (p, q) = match axis {
            1 => (1, 2),
            2 => (2, 0),
            _ => (0, 1),
        };
        let a = axis - 1;
        let mut m: [[Scalar; 3]; 3] = Default::default();
        m[a][a] = Scalar::one();
        m[p][p] = c.clone();
        m[q][q] = c;
        m[p][q] = -s.clone();
        m[q][p] = s;
        let label = match k {
            4 => format!("pi about x{axis}"),
            2 => format!("pi/2 about x{axis}"),
            1 => format!("pi/4 about x{axis}"),
            _ => format!("{k}pi/4 about x{axis}"),
        };
        FrameTransform::Rotation { label, matrix: m }
    }

    pub fn then(self, next: FrameTransform) -> FrameTransform {
        let mut steps = match self {
            FrameTransform::Chain(v) => v,
            FrameTransform::Identity => Vec::new(),
            other => vec![other],
        };
        steps.push(next);
        FrameTransform::Chain(steps)
    }

    /// `J[μ][ν] = ∂x^μ/∂x′^ν`.
    pub fn jacobian(&self) -> Matrix4 {
        let mut j = identity4();
        match self {
            FrameTransform::Identity => {}
            FrameTransform::Rotation { matrix, .. } => {
                for a in 0..3 {
                    for b in 0..3 {
                        j[a + 1][b + 1] = matrix[a][b].clone();
                    }
                }
            }
            FrameTransform::Galilean { v, axis } => j[*axis][0] = v.clone(),
            FrameTransform::Lorentz { beta, gamma, axis } => {
                let gb = gamma * beta;
                j[0][0] = gamma.clone();
                j[*axis][*axis] = gamma.clone();
                j[0][*axis] = gb.clone();
                j[*axis][0] = gb;
            }
            FrameTransform::Chain(steps) => {
                for s in steps {
                    j = matmul(&j, &s.jacobian());
                }
            }
        }
        j
    }

    /// `T[μ][ν] = ∂x′^ν/∂x^μ`, so that `∂_μ = Σ_ν T[μ][ν] ∂_ν′`.
    pub fn derivative_matrix(&self) -> Matrix4 {
        let mut t = identity4();
        match self {
            FrameTransform::Identity => {}
            FrameTransform::Rotation { matrix, .. } => {
                for a in 0..3 {
                    for b in 0..3 {
                        t[a + 1][b + 1] = matrix[a][b].clone();
                    }
                }
            }
            FrameTransform::Galilean { v, axis } => t[0][*axis] = -v.clone(),
            FrameTransform::Lorentz { beta, gamma, axis } => {
                let gb = -(gamma * beta);
                t[0][0] = gamma.clone();
                t[*axis][*axis] = gamma.clone();
                t[0][*axis] = gb.clone();
                t[*axis][0] = gb;
            }
            FrameTransform::Chain(steps) => {
                for s in steps {
                    t = matmul(&t, &s.derivative_matrix());
                }
            }
        }
        t
    }

    pub fn label(&self) -> String {
        match self {
            FrameTransform::Identity => "identity".into(),
            FrameTransform::Rotation { label, .. } => format!("rotation {label}"),
            FrameTransform::Galilean { v, axis } => format!("galilean v={v} along x{axis}"),
            FrameTransform::Lorentz { beta, axis, .. } => format!("lorentz beta={beta} along x{axis}"),
            FrameTransform::Chain(v) => v.iter().map(|s| s.label()).collect::<Vec<_>>().join(" then "),
        }
    }
}

impl fmt::Display for FrameTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// First-order substitution rules `∂_μ ↦ Σ_ν T[μ][ν] ∂_ν′`.
pub fn transform_derivatives(t: &FrameTransform) -> Vec<(MultiIndex, LinearPDE)> {
    let m = t.derivative_matrix();
    (0..4)
        .map(|mu| {
            let rule = (0..4).fold(LinearPDE::new(), |op, nu| {
                op.with_term(MultiIndex::unit(nu), m[mu][nu].clone())
            });
            (MultiIndex::unit(mu), rule)
        })
        .collect()
}

type DerivPoly = std::collections::BTreeMap<MultiIndex, Scalar>;

fn deriv_mul(a: &DerivPoly, b: &DerivPoly) -> DerivPoly {
    let mut out = DerivPoly::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let k = ka.add(kb);
            let c = ca * cb;
            let e = out.entry(k).or_insert_with(Scalar::zero);
            *e = &*e + &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Rewrite `op` in the primed frame with `Ψ = g·Ψ′` and factor out `g`.
pub fn boost_operator(op: &LinearPDE, t: &FrameTransform, g: &ExpLinearMultiplier) -> LinearPDE {
    let m = t.derivative_matrix();
    let rules: Vec<DerivPoly> = (0..4)
        .map(|mu| {
            (0..4)
                .filter(|&nu| !m[mu][nu].is_zero())
                .map(|nu| (MultiIndex::unit(nu), m[mu][nu].clone()))
                .collect()
        })
        .collect();
    let mut primed = LinearPDE::new().with_potential(op.potential().clone());
    for (alpha, c) in op.terms() {
        let mut acc: DerivPoly = [(MultiIndex::ZERO, c.clone())].into_iter().collect();
        for mu in alpha.coords() {
            acc = deriv_mul(&acc, &rules[mu]);
        }
        for (k, v) in acc {
            primed.add_term(k, &v);
        }
    }
    apply_operator(&primed, g)
}

/// Express a multiplier written in `x′` in the coordinates `x″` of the next
/// frame, where `t` maps `x′ = J·x″`: `λ″_ν = Σ_μ λ′_μ J[μ][ν]`.
pub fn pullback_multiplier(g: &ExpLinearMultiplier, t: &FrameTransform) -> ExpLinearMultiplier {
    let j = t.jacobian();
    let exponent = std::array::from_fn(|nu| {
        (0..4).fold(Scalar::zero(), |acc, mu| &acc + &(&g.exponent[mu] * &j[mu][nu]))
    });
    ExpLinearMultiplier::new(g.prefactor.clone(), exponent)
}
