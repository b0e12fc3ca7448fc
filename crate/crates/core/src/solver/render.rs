//! Human-readable rendering of scalars and operators for reports.

use crate::symbolic::{LinearPDE, MultiIndex, Scalar};

const NAMES: [(&str, &str); 9] = [
    ("Abar", "Ā"),
    ("Bbar", "B̄"),
    ("Cbar", "C̄"),
    ("bbar", "b̄"),
    ("Atil", "Ã"),
    ("Btil", "B̃"),
    ("Ctil", "C̃"),
    ("atil", "ã"),
    ("sqrt2", "√2"),
];

fn superscript(d: char) -> char {
    match d {
        '0' => '⁰',
        '1' => '¹',
        '2' => '²',
        '3' => '³',
        '4' => '⁴',
        '5' => '⁵',
        '6' => '⁶',
        '7' => '⁷',
        '8' => '⁸',
        _ => '⁹',
    }
}

/// Compact text: implicit products, superscript powers, `−` for minus.
pub fn pretty(s: &Scalar) -> String {
    let mut t = s.to_string();
    for (a, b) in NAMES {
        t = t.replace(a, b);
    }
    let mut out = String::new();
    let mut chars = t.chars().peekable();
    while let Some(ch) = chars.next() {
        match ch {
            '*' => {}
            '-' => out.push('−'),
            '^' => {
                while let Some(d) = chars.peek().copied().filter(char::is_ascii_digit) {
                    out.push(superscript(d));
                    chars.next();
                }
            }
            _ => out.push(ch),
        }
    }
    strip_product_parens(&out)
}

/// `a/(2m)` → `a/2m` when the parenthesized denominator is a bare product.
fn strip_product_parens(s: &str) -> String {
    let mut out = String::new();
    let mut rest = s;
    while let Some(pos) = rest.find("/(") {
        out.push_str(&rest[..pos + 1]);
        let after = &rest[pos + 2..];
        match after.find(')') {
            Some(end) if !after[..end].contains(' ') && !after[..end].contains('(') => {
                out.push_str(&after[..end]);
                rest = &after[end + 1..];
            }
            _ => {
                out.push('(');
                rest = after;
            }
        }
    }
    out.push_str(rest);
    out
}

fn all_imaginary(s: &Scalar) -> bool {
    !s.is_zero()
        && s.numerator().terms().all(|(_, c)| c.is_pure_imaginary())
        && s.denominator().terms().all(|(_, c)| c.is_real())
}

/// Coefficient text in front of an operator symbol, with its sign split off.
fn coefficient(c: &Scalar) -> (bool, String) {
    if all_imaginary(c) {
        let inner = c.checked_div(&Scalar::i()).expect("i is invertible");
        let (neg, body) = coefficient(&inner);
        let body = if body.is_empty() { String::new() } else { body };
        return (neg, format!("i{body}"));
    }
    let t = pretty(c);
    let (neg, mag) = match t.strip_prefix('−') {
        Some(m) if !m.contains(' ') => (true, m.to_string()),
        _ => (false, t),
    };
    if mag == "1" {
        return (neg, String::new());
    }
    if mag.contains('/') || mag.contains(' ') {
        (neg, format!("({mag})"))
    } else {
        (neg, mag)
    }
}

fn join(terms: &[(bool, String)]) -> String {
    let mut s = String::new();
    for (k, (neg, body)) in terms.iter().enumerate() {
        match (k, neg) {
            (0, true) => s.push('−'),
            (0, false) => {}
            (_, true) => s.push_str(" − "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(body);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn laplacian_coefficient(op: &LinearPDE) -> Option<Scalar> {
    let c = op.coefficient(&MultiIndex::from_coords(&[1, 1]));
    let same = (2..4).all(|j| op.coefficient(&MultiIndex::from_coords(&[j, j])) == c);
    (!c.is_zero() && same).then_some(c)
}

fn derivative_name(idx: &MultiIndex, time: &str) -> String {
    let mut s = String::new();
    for mu in 0..4 {
        let e = idx.get(mu);
        if e == 0 {
            continue;
        }
        if mu == 0 {
            s.push_str(&format!("∂_{time}"));
        } else {
            s.push_str(&format!("∂_{mu}"));
        }
        if e > 1 {
            s.push(superscript(char::from(b'0' + e)));
        }
    }
    s
}

struct Term {
    time_only: bool,
    coeff: Scalar,
    symbol: String,
}

fn terms(op: &LinearPDE, time: &str, box_op: bool) -> Vec<Term> {
    let mut out = Vec::new();
    let lap = laplacian_coefficient(op);
    let d00 = MultiIndex::from_coords(&[0, 0]);
    let boxed = box_op
        && lap
            .as_ref()
            .map(|l| op.coefficient(&d00) == -l.clone())
            .unwrap_or(false);
    let mut lap_done = false;
    for (idx, c) in op.terms() {
        let is_lap = lap.is_some() && idx.order() == 2 && idx.is_spatial() && idx.0.contains(&2);
        if boxed && *idx == d00 {
            out.push(Term {
                time_only: false,
                coeff: c.clone(),
                symbol: "∂_μ∂^μ".into(),
            });
            continue;
        }
        if is_lap {
            if !lap_done && !boxed {
                out.push(Term {
                    time_only: false,
                    coeff: c.clone(),
                    symbol: "∇²".into(),
                });
            }
            lap_done = true;
            continue;
        }
        out.push(Term {
            time_only: idx.get(0) as u32 == idx.order(),
            coeff: c.clone(),
            symbol: derivative_name(idx, time),
        });
    }
    if !op.potential().is_zero() {
        out.push(Term {
            time_only: false,
            coeff: op.potential().clone(),
            symbol: String::new(),
        });
    }
    out
}

fn term_text(t: &Term, negate: bool) -> (bool, String) {
    let c = if negate { -t.coeff.clone() } else { t.coeff.clone() };
    let (neg, body) = coefficient(&c);
    (neg, format!("{body}{}Ψ", t.symbol))
}

/// `time-derivative terms = −(everything else)`, e.g. `iħ∂_tΨ = −(ħ²/2m)∇²Ψ + VΨ`.
pub fn evolution_form(op: &LinearPDE) -> String {
    let ts = terms(op, "t", false);
    let lhs: Vec<_> = ts.iter().filter(|t| t.time_only).map(|t| term_text(t, false)).collect();
    let rhs: Vec<_> = ts.iter().filter(|t| !t.time_only).map(|t| term_text(t, true)).collect();
    format!("{} = {}", join(&lhs), join(&rhs))
}

/// `… = 0` with `∂_μ∂^μ` recognised, e.g. for operators in `x⁰ = ct`.
pub fn covariant_form(op: &LinearPDE) -> String {
    let ts = terms(op, "0", true);
    let all: Vec<_> = ts.iter().map(|t| term_text(t, false)).collect();
    format!("{} = 0", join(&all))
}

/// `exp[(i/ħ)(a·t′ + b·x′)]` for exponents `λ_t`, `λ_x` in `(t, x)`.
pub fn multiplier_form(lambda_t: &Scalar, lambda_x: &Scalar, along: &str) -> String {
    let scale = Scalar::sym("ħ").checked_div(&Scalar::i()).expect("nonzero");
    let a = lambda_t * &scale;
    let b = lambda_x * &scale;
    if a.is_zero() && b.is_zero() {
        return "1".into();
    }
    let part = |c: &Scalar, coord: &str| -> Option<(bool, String)> {
        if c.is_zero() {
            return None;
        }
        let (neg, body) = coefficient(c);
        Some((neg, format!("{body}{coord}")))
    };
    let parts: Vec<_> = [part(&a, "t′"), part(&b, &format!("{along}′"))].into_iter().flatten().collect();
    format!("exp[(i/ħ)({})]", join(&parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse_scalar;

    fn s(x: &str) -> Scalar {
        parse_scalar(x).unwrap()
    }

    #[test]
    fn scalar_text() {
        assert_eq!(pretty(&s("ħ^2/(2*m)")), "ħ²/2m");
        assert_eq!(pretty(&s("-Abar*v")), "−Āv");
        assert_eq!(pretty(&s("(a + b)/(c + 1)")), "(a + b)/(c + 1)");
    }

    #[test]
    fn schrodinger_text() {
        let op = LinearPDE::new()
            .with_laplacian(s("ħ^2/(2*m)"))
            .with_term(MultiIndex::unit(0), s("i*ħ"))
            .with_potential(s("-V"));
        assert_eq!(evolution_form(&op), "iħ∂_tΨ = −(ħ²/2m)∇²Ψ + VΨ");
    }

    #[test]
    fn covariant_text() {
        let op = LinearPDE::new()
            .with_term(MultiIndex::from_coords(&[0, 0]), Scalar::one())
            .with_laplacian(Scalar::int(-1))
            .with_term(MultiIndex::unit(0), s("-2*i*m*c/ħ"))
            .with_potential(s("2*m*V/ħ^2"));
        assert_eq!(covariant_form(&op), "∂_μ∂^μΨ − i(2cm/ħ)∂_0Ψ + (2Vm/ħ²)Ψ = 0");
    }

    #[test]
    fn multiplier_text() {
        let g = multiplier_form(&s("i*m*v^2/(2*ħ)"), &s("i*m*v/ħ"), "x");
        assert_eq!(g, "exp[(i/ħ)((mv²/2)t′ + mvx′)]");
        assert_eq!(multiplier_form(&Scalar::zero(), &Scalar::zero(), "x"), "1");
    }
}
