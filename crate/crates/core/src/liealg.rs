//! The two graded Lie algebras of modes: Heisenberg `H_n` (central element
//! fixed to 1) and Virasoro `L_n` (central element acting by the formal
//! central charge `c`).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeffs::{rat, Coefficient};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Heisenberg,
    Virasoro,
}

impl AlgebraKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Heisenberg => "heisenberg",
            AlgebraKind::Virasoro => "virasoro",
        }
    }

    fn letter(self) -> char {
        match self {
            AlgebraKind::Heisenberg => 'H',
            AlgebraKind::Virasoro => 'L',
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unknown algebra `{0}` (expected heisenberg or virasoro)")]
    UnknownAlgebra(String),
    #[error("malformed mode `{0}` (expected H(n) or L(n))")]
    MalformedMode(String),
    #[error("mode `{found}` does not belong to the {algebra} algebra")]
    WrongAlgebra { found: String, algebra: AlgebraKind },
}

impl FromStr for AlgebraKind {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "heisenberg" | "h" => Ok(AlgebraKind::Heisenberg),
            "virasoro" | "vir" | "l" => Ok(AlgebraKind::Virasoro),
            _ => Err(ParseError::UnknownAlgebra(s.to_string())),
        }
    }
}

/// A presented algebra. The kind fixes the bracket table completely.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub kind: AlgebraKind,
}

impl AlgebraSpec {
    pub const HEISENBERG: AlgebraSpec = AlgebraSpec {
        kind: AlgebraKind::Heisenberg,
    };
    pub const VIRASORO: AlgebraSpec = AlgebraSpec {
        kind: AlgebraKind::Virasoro,
    };

    pub fn new(kind: AlgebraKind) -> Self {
        AlgebraSpec { kind }
    }

    /// The scalar by which the central element acts.
    pub fn central_value(&self) -> Coefficient {
        match self.kind {
            AlgebraKind::Heisenberg => Coefficient::one(),
            AlgebraKind::Virasoro => Coefficient::c(),
        }
    }

    /// `[a, b]` for two modes.
    pub fn bracket(&self, a: Mode, b: Mode) -> LieElement {
        let (p, q) = (a.index, b.index);
        let mut out = LieElement::zero();
        match self.kind {
            AlgebraKind::Heisenberg => {
                if p + q == 0 {
                    out.central = Coefficient::from_int(p.into());
                }
            }
            AlgebraKind::Virasoro => {
                if p != q {
                    out.modes.insert(p + q, Coefficient::from_int((p - q).into()));
                }
                if p + q == 0 {
                    let p = i64::from(p);
                    let k = p * p * p - p;
                    if k != 0 {
                        out.central = Coefficient::c().scale(&rat(k, 12));
                    }
                }
            }
        }
        out
    }

    /// The anti-involution on modes: `theta(H_n) = -H_{-n}` (the generator
    /// has degree one) and `theta(L_n) = L_{-n}` (the conformal vector has
    /// degree two and is killed by `L_1`).
    pub fn theta(&self, a: Mode) -> (i64, Mode) {
        let sign = match self.kind {
            AlgebraKind::Heisenberg => -1,
            AlgebraKind::Virasoro => 1,
        };
        (sign, Mode::new(-a.index))
    }

    pub fn format_mode(&self, m: Mode) -> String {
        format!("{}({})", self.kind.letter(), m.index)
    }

    pub fn parse_mode(&self, s: &str) -> Result<Mode, ParseError> {
        let t = s.trim();
        let malformed = || ParseError::MalformedMode(s.to_string());
        let mut chars = t.chars();
        let letter = chars.next().ok_or_else(malformed)?;
        let rest = chars.as_str();
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(malformed)?;
        let index: i32 = inner.trim().parse().map_err(|_| malformed())?;
        if letter.to_ascii_uppercase() != self.kind.letter() {
            return Err(ParseError::WrongAlgebra {
                found: s.to_string(),
                algebra: self.kind,
            });
        }
        Ok(Mode::new(index))
    }
}

/// A mode `H_n` / `L_n`, identified by its subscript. Degree is `-n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub index: i32,
}

impl Mode {
    pub fn new(index: i32) -> Self {
        Mode { index }
    }

    pub fn degree(&self) -> i32 {
        -self.index
    }
}

/// A finite linear combination of modes plus a multiple of the central
/// element.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LieElement {
    pub modes: BTreeMap<i32, Coefficient>,
    pub central: Coefficient,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn mode(m: Mode) -> Self {
        let mut modes = BTreeMap::new();
        modes.insert(m.index, Coefficient::one());
        LieElement {
            modes,
            central: Coefficient::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty() && self.central.is_zero()
    }

    pub fn add_scaled(&mut self, other: &LieElement, s: &Coefficient) {
        for (i, v) in &other.modes {
            let e = self.modes.entry(*i).or_default();
            *e += &(v * s);
            if e.is_zero() {
                self.modes.remove(i);
            }
        }
        self.central += &(&other.central * s);
    }

    pub fn scaled(&self, s: &Coefficient) -> LieElement {
        let mut out = LieElement::zero();
        out.add_scaled(self, s);
        out
    }

    /// Bilinear extension of the mode bracket; the central element is
    /// bracket-trivial.
    pub fn bracket(alg: &AlgebraSpec, a: &LieElement, b: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (i, va) in &a.modes {
            for (j, vb) in &b.modes {
                out.add_scaled(&alg.bracket(Mode::new(*i), Mode::new(*j)), &(va * vb));
            }
        }
        out
    }

    /// Linear extension of theta; fixes the central element.
    pub fn theta(alg: &AlgebraSpec, a: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (i, v) in &a.modes {
            let (sign, m) = alg.theta(Mode::new(*i));
            out.add_scaled(&LieElement::mode(m), &v.scale(&rat(sign, 1)));
        }
        out.central = a.central.clone();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const H: AlgebraSpec = AlgebraSpec::HEISENBERG;
    const V: AlgebraSpec = AlgebraSpec::VIRASORO;

    fn m(i: i32) -> Mode {
        Mode::new(i)
    }

    #[test]
    fn heisenberg_unit_bracket() {
        let b = H.bracket(m(1), m(-1));
        assert!(b.modes.is_empty());
        assert_eq!(b.central, Coefficient::one());
    }

    #[test]
    fn virasoro_one_minus_one() {
        let b = V.bracket(m(1), m(-1));
        assert_eq!(b.modes.get(&0), Some(&Coefficient::from_int(2)));
        assert!(b.central.is_zero());
    }

    #[test]
    fn virasoro_two_minus_two_has_central_term() {
        let b = V.bracket(m(2), m(-2));
        assert_eq!(b.modes.get(&0), Some(&Coefficient::from_int(4)));
        assert_eq!(b.central, Coefficient::c().scale(&rat(1, 2)));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(H.theta(m(3)), (-1, m(-3)));
        assert_eq!(V.theta(m(2)), (1, m(-2)));
        for alg in [H, V] {
            for n in -5..=5 {
                let (s1, a) = alg.theta(m(n));
                let (s2, b) = alg.theta(a);
                assert_eq!((s1 * s2, b), (1, m(n)));
            }
        }
    }

    #[test]
    fn mode_text_roundtrip() {
        assert_eq!(H.format_mode(m(-2)), "H(-2)");
        assert_eq!(V.parse_mode("L(3)"), Ok(m(3)));
        assert!(matches!(H.parse_mode("L(3)"), Err(ParseError::WrongAlgebra { .. })));
        assert!(matches!(H.parse_mode("H3"), Err(ParseError::MalformedMode(_))));
        assert!("affine".parse::<AlgebraKind>().is_err());
    }

    fn jacobi(alg: &AlgebraSpec, a: i32, b: i32, c: i32) -> LieElement {
        let (la, lb, lc) = (LieElement::mode(m(a)), LieElement::mode(m(b)), LieElement::mode(m(c)));
        let mut sum = LieElement::bracket(alg, &la, &LieElement::bracket(alg, &lb, &lc));
        sum.add_scaled(
            &LieElement::bracket(alg, &lb, &LieElement::bracket(alg, &lc, &la)),
            &Coefficient::one(),
        );
        sum.add_scaled(
            &LieElement::bracket(alg, &lc, &LieElement::bracket(alg, &la, &lb)),
            &Coefficient::one(),
        );
        sum
    }

    #[test]
    fn jacobi_exhaustive_small_window() {
        for alg in [H, V] {
            for a in -8..=8 {
                for b in -8..=8 {
                    for c in -8..=8 {
                        assert!(jacobi(&alg, a, b, c).is_zero(), "{alg:?} {a} {b} {c}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn antisymmetry(a in -20i32..=20, b in -20i32..=20, vir in any::<bool>()) {
            let alg = if vir { V } else { H };
            let mut sum = alg.bracket(m(a), m(b));
            sum.add_scaled(&alg.bracket(m(b), m(a)), &Coefficient::one());
            prop_assert!(sum.is_zero());
        }

        #[test]
        fn degree_additivity(a in -20i32..=20, b in -20i32..=20, vir in any::<bool>()) {
            let alg = if vir { V } else { H };
            let br = alg.bracket(m(a), m(b));
            for i in br.modes.keys() {
                prop_assert_eq!(m(*i).degree(), m(a).degree() + m(b).degree());
            }
            if a + b != 0 {
                prop_assert!(br.central.is_zero());
            }
        }

        #[test]
        fn theta_is_anti_homomorphism(a in -12i32..=12, b in -12i32..=12, vir in any::<bool>()) {
            let alg = if vir { V } else { H };
            let la = LieElement::mode(m(a));
            let lb = LieElement::mode(m(b));
            let lhs = LieElement::theta(&alg, &LieElement::bracket(&alg, &la, &lb));
            let rhs = LieElement::bracket(&alg, &LieElement::theta(&alg, &la), &LieElement::theta(&alg, &lb))
                .scaled(&Coefficient::from_int(-1));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
