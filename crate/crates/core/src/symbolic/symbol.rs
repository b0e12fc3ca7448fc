use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// Rough role of a symbol. Informational; identity is the name alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Parameter,
    Coordinate,
    MassLike,
    VelocityLike,
}

/// A named indeterminate.
///
/// Two symbols are equal iff their names are equal. The names `β` and `γ`
/// are reserved for a Lorentz boost: wherever both occur, arithmetic reduces
/// modulo `(1 − β²)γ² = 1`.
#[derive(Clone)]
pub struct Symbol {
    name: Arc<str>,
    kind: SymbolKind,
}

pub const BETA: &str = "β";
pub const GAMMA: &str = "γ";

impl Symbol {
    pub fn new(name: &str) -> Self {
        let kind = match name {
            "x0" | "x1" | "x2" | "x3" | "t" | "x" | "y" | "z" => SymbolKind::Coordinate,
            "m" => SymbolKind::MassLike,
            "v" | BETA => SymbolKind::VelocityLike,
            _ => SymbolKind::Parameter,
        };
        Symbol {
            name: Arc::from(name),
            kind,
        }
    }

    pub fn with_kind(name: &str, kind: SymbolKind) -> Self {
        Symbol {
            name: Arc::from(name),
            kind,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    /// Derivative of a coordinate-dependent field: `V` → `V_1`, `V_1` → `V_12`.
    ///
    /// Returns `None` when this symbol is not `base` or one of its derivatives.
    pub fn field_derivative(&self, base: &str, coord: usize) -> Option<Symbol> {
        let rest = self.name.strip_prefix(base)?;
        let mut digits: Vec<u8> = if rest.is_empty() {
            Vec::new()
        } else {
            let d = rest.strip_prefix('_')?;
            if d.is_empty() || !d.bytes().all(|b| (b'0'..=b'3').contains(&b)) {
                return None;
            }
            d.bytes().map(|b| b - b'0').collect()
        };
        digits.push(coord as u8);
        digits.sort_unstable();
        let suffix: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
        Some(Symbol::new(&format!("{base}_{suffix}")))
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for Symbol {}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state)
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        self.name.cmp(&other.name)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_derivative_names() {
        let v = Symbol::new("V");
        let v1 = v.field_derivative("V", 1).unwrap();
        assert_eq!(v1.name(), "V_1");
        assert_eq!(v1.field_derivative("V", 0).unwrap().name(), "V_01");
        assert!(Symbol::new("Vx").field_derivative("V", 1).is_none());
        assert!(Symbol::new("m").field_derivative("V", 1).is_none());
    }

    #[test]
    fn identity_is_name() {
        assert_eq!(
            Symbol::with_kind("m", SymbolKind::Parameter),
            Symbol::new("m")
        );
        assert_eq!(Symbol::new("m").kind(), SymbolKind::MassLike);
    }
}
