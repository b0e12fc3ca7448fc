use crate::boost::{rotation_constraints, rotation_constraints_with, standard_rotations};
use crate::symbolic::{LinearPDE, MultiIndex, Scalar};

use super::pipeline::{s, Derivation, SolverError};
use super::report::{gid, DerivationReport};

fn spatial_part(op: &LinearPDE) -> LinearPDE {
    LinearPDE::from_terms(
        op.terms().filter(|(k, _)| k.get(0) == 0).map(|(k, c)| (*k, c.clone())),
        Scalar::zero(),
    )
}

/// Rotation covariance of the generic operator of a given order.
pub fn derive_rotation(order: u32) -> Result<Derivation, SolverError> {
    let rot = rotation_constraints(order).map_err(|e| match e {
        crate::boost::BoostError::UnsupportedOrder(order) => SolverError::UnsupportedOrder {
            pipeline: "rotation",
            order,
        },
        other => other.into(),
    })?;
    let mut rep = DerivationReport::new(&format!("rotation-{order}"));
    rep.record("R", &rot.system);
    let all: Vec<String> = rot.system.equations.iter().map(|c| gid("R", &c.id)).collect();
    for (sym, v) in &rot.solution {
        if v.is_zero() {
            rep.forced(format!("{sym} = 0"), all.clone());
        } else {
            rep.ratio(format!("{sym} = {v}"), all.clone());
        }
    }
    rep.note(format!("rank {}, free {:?}", rot.rank, rot.free));
    let spatial = spatial_part(&rot.reduced);
    let mut der = Derivation::new(rep.clone());
    match order {
        2 => {
            let expected = LinearPDE::new()
                .with_term(MultiIndex::from_coords(&[0, 0]), s("a00"))
                .with_laplacian(s("a11"))
                .with_term(MultiIndex::unit(0), s("b0"))
                .with_potential(s("f"));
            rep.check_flag("reduced operator a00∂0² + a11∇² + b0∂0 + f", rot.reduced == expected);
            rep.theorem("rotation-second-order", "only ∂0², ∇², ∂0 and f survive", rot.reduced == expected, all.clone());
        }
        3 => {
            rep.check_flag("a^{ijk} = 0", spatial.is_zero());
            for name in ["a111", "a112", "a123"] {
                rep.check(name, &Scalar::zero(), rot.value_of(name).unwrap_or(&s(name)));
            }
            rep.check("a022", &s("a011"), rot.value_of("a022").unwrap_or(&s("a022")));
            rep.theorem("rotation-third-order", "no purely spatial third-order term survives", spatial.is_zero(), all.clone());
        }
        _ => {
            let a1122 = rot.value_of("a1122").cloned().unwrap_or_else(|| s("a1122"));
            rep.check("a1122", &s("2*a1111"), &a1122);
            let mut lap2 = LinearPDE::new();
            for a in 1..4 {
                for b in 1..4 {
                    lap2.add_term(MultiIndex::from_coords(&[a, a, b, b]), &s("a1111"));
                }
            }
            rep.check_flag("spatial part a1111·(∇²)²", spatial == lap2);
            let without: Vec<_> = standard_rotations().into_iter().take(6).collect();
            let partial = rotation_constraints_with(4, &without)?;
            let needs = partial.value_of("a1122").is_none();
            rep.check_flag("a1122 free without the π/4 rotation", needs);
            rep.theorem(
                "rotation-fourth-order",
                "the spatial fourth-order part is a multiple of the squared Laplacian",
                spatial == lap2 && a1122 == s("2*a1111"),
                all.clone(),
            );
        }
    }
    rep.final_equation = Some(format!("{}", rot.reduced));
    rep.verdict = if rep.reproduced() {
        format!("rotation-covariant order-{order} operator")
    } else {
        "derivation did not close".into()
    };
    der.report = rep;
    for (sym, v) in &rot.solution {
        der.set(sym.name(), v);
    }
    der.operator = Some(rot.reduced);
    Ok(der)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_orders() {
        for order in 2..=4 {
            let der = derive_rotation(order).unwrap();
            assert!(der.report.reproduced(), "{}", der.report.to_text());
            assert!(der.report.dangling_citations().is_empty());
        }
        assert!(derive_rotation(5).is_err());
    }
}
