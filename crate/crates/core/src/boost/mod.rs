//! Frame changes applied to linear operators, and the equations that
//! express covariance of an operator under them.

mod constraints;
mod rotation;
mod transform;

pub use constraints::{covariance_constraints, normalize_equation, Constraint, ConstraintSystem};
pub use rotation::{
    generic_operator, rotation_constraints, rotation_constraints_with, standard_rotations,
    RotationConstraints,
};
pub use transform::{
    boost_operator, pullback_multiplier, transform_derivatives, FrameTransform, Matrix4,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BoostError {
    #[error("transformed operator is identically zero")]
    ZeroOperator,
    #[error("rotation constraints are only available for orders 2, 3 and 4, not {0}")]
    UnsupportedOrder(u32),
    #[error("constraint is not linear in the tensor symbols")]
    NonLinear,
}
