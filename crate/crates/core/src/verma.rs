//! Generalized Verma modules induced from a one-dimensional module over
//! `A_0 = C[x]`.
//!
//! The degree-`d` component has basis `u_r w0` for partitions `r` of `d`,
//! where `u_r` is the creation word of `r`. The zero mode acts on `w0` by the
//! eigenvalue, which may be a rational or the formal variable `x`; for
//! Virasoro the central charge is a rational or the formal variable `c`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::coeffs::{nullspace, Coefficient, Rational};
use crate::error::{Error, Result};
use crate::liealg::{AlgebraKind, AlgebraSpec};
use crate::mta::{contract, MtaElement};
use crate::partition::partitions;
use crate::pbw::{EnvElement, ModeWord, Pbw};

/// A parameter value: a rational number or a formal variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Rational(Rational),
    Formal,
}

impl FromStr for Param {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("formal") {
            return Ok(Param::Formal);
        }
        t.parse::<Rational>()
            .map(Param::Rational)
            .map_err(|_| format!("`{s}` is neither a rational number nor `formal`"))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Rational(q) => write!(f, "{q}"),
            Param::Formal => f.write_str("formal"),
        }
    }
}

impl Serialize for Param {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub struct VermaModule {
    pbw: Pbw,
    eigen: Param,
    central: Param,
    eigen_value: Coefficient,
    central_value: Coefficient,
}

impl VermaModule {
    /// The Fock-type module with `H_0 w0 = lambda w0`.
    pub fn heisenberg(lambda: Param) -> Self {
        Self::build(
            Pbw::new(AlgebraSpec::HEISENBERG),
            lambda,
            Param::Rational(Rational::from_integer(1.into())),
        )
    }

    /// The Virasoro Verma module with `L_0 w0 = h w0` and central charge `c`.
    pub fn virasoro(h: Param, c: Param) -> Self {
        Self::build(Pbw::new(AlgebraSpec::VIRASORO), h, c)
    }

    /// Uses `pbw` (its window and term limit) for all normal ordering.
    pub fn with_engine(pbw: Pbw, eigen: Param, central: Param) -> Self {
        Self::build(pbw, eigen, central)
    }

    fn build(pbw: Pbw, eigen: Param, central: Param) -> Self {
        let eigen_value = match &eigen {
            Param::Rational(q) => Coefficient::constant(q.clone()),
            Param::Formal => Coefficient::x(),
        };
        let central_value = match (&central, pbw.algebra().kind) {
            (_, AlgebraKind::Heisenberg) => Coefficient::one(),
            (Param::Rational(q), _) => Coefficient::constant(q.clone()),
            (Param::Formal, _) => Coefficient::c(),
        };
        VermaModule {
            pbw,
            eigen,
            central,
            eigen_value,
            central_value,
        }
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.pbw.algebra()
    }

    pub fn eigenvalue(&self) -> &Param {
        &self.eigen
    }

    pub fn central_charge(&self) -> &Param {
        &self.central
    }

    pub fn engine(&self) -> &Pbw {
        &self.pbw
    }

    /// Creation words of the partitions of `d`, in lexicographic order.
    pub fn basis(&self, d: u32) -> Vec<ModeWord> {
        partitions(d).iter().map(|p| p.creation_word()).collect()
    }

    pub fn dimension(&self, d: u32) -> usize {
        self.basis(d).len()
    }

    pub fn highest_weight_vector(&self) -> VermaVector {
        self.basis_vector(ModeWord::empty())
    }

    /// `u w0`; panics unless `u` is a canonical creation word.
    pub fn basis_vector(&self, u: ModeWord) -> VermaVector {
        assert!(
            u.is_canonical() && u.indices().iter().all(|&i| i < 0),
            "not a creation word: {u:?}"
        );
        let mut terms = BTreeMap::new();
        terms.insert(u, Coefficient::one());
        VermaVector {
            algebra: self.algebra(),
            terms,
        }
    }

    /// Evaluate a coefficient produced by the engine: `c` becomes the
    /// central charge; `x` is left alone.
    fn evaluate(&self, q: &Coefficient) -> Coefficient {
        q.substitute(None, Some(&self.central_value))
    }

    /// The value of `f` in `A_0` on `w0`.
    fn on_w0(&self, f: &Coefficient) -> Coefficient {
        f.substitute(Some(&self.eigen_value), Some(&self.central_value))
    }

    pub fn act(&self, u: &EnvElement, v: &VermaVector) -> Result<VermaVector> {
        if u.algebra() != self.algebra() {
            return Err(Error::AlgebraMismatch(u.algebra().kind, self.algebra().kind));
        }
        if v.algebra != self.algebra() {
            return Err(Error::AlgebraMismatch(v.algebra.kind, self.algebra().kind));
        }
        let mut out = VermaVector::zero(self.algebra());
        for (w, a) in v.terms() {
            let prod = self.pbw.multiply(
                u,
                &EnvElement::from_canonical(self.algebra(), w.clone(), Coefficient::one()),
            )?;
            for (word, q) in prod.terms() {
                let (cre, zeros, ann) = word.split();
                if !ann.is_empty() {
                    continue;
                }
                let value = &(&self.evaluate(q) * &self.eigen_value.pow(zeros)) * a;
                out.add(cre, value);
            }
        }
        Ok(out)
    }

    /// `(u ⊗ f ⊗ v) ⋆ (w w0) = u (f (v ⊛ w))(eigen) w0` for `a` of bidegree
    /// `(d, -d)` and `v` of degree `d`.
    pub fn mta_act(&self, a: &MtaElement, v: &VermaVector) -> Result<VermaVector> {
        if a.algebra() != self.algebra() {
            return Err(Error::AlgebraMismatch(a.algebra().kind, self.algebra().kind));
        }
        let mut out = VermaVector::zero(self.algebra());
        if a.is_zero() || v.is_zero() {
            return Ok(out);
        }
        let (d, neg) = a.bidegree().ok_or(Error::DegreeMismatch { expected: 0, found: -1 })?;
        let vd = v.degree().ok_or(Error::DegreeMismatch { expected: d, found: -1 })?;
        if d != -neg {
            return Err(Error::DegreeMismatch {
                expected: d,
                found: -neg,
            });
        }
        if vd != d {
            return Err(Error::DegreeMismatch { expected: d, found: vd });
        }
        for (key, f) in a.terms() {
            for (w, b) in v.terms() {
                let k = contract(&self.pbw, &key.annihilation, w)?;
                if k.is_zero() {
                    continue;
                }
                let value = &self.on_w0(&(f * &k)) * b;
                out.add(key.creation.clone(), value);
            }
        }
        Ok(out)
    }

    /// A polynomial basis of `{v in W_d : J_n v = 0 for 1 <= n <= d}`.
    pub fn singular_vectors(&self, d: u32) -> Result<Vec<VermaVector>> {
        if d == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        let basis = self.basis(d);
        let images: Vec<Vec<VermaVector>> = (1..=d as i32)
            .map(|n| {
                let mode = EnvElement::mode(self.algebra(), n);
                basis
                    .iter()
                    .map(|w| self.act(&mode, &self.basis_vector(w.clone())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mut matrix = Vec::new();
        for (n, cols) in (1..=d).zip(&images) {
            for target in self.basis(d - n) {
                matrix.push(cols.iter().map(|v| v.coeff(&target)).collect());
            }
        }
        let kernel = nullspace(&matrix, basis.len())?;
        Ok(kernel
            .into_iter()
            .map(|vec| {
                let mut out = VermaVector::zero(self.algebra());
                for (w, c) in basis.iter().zip(vec) {
                    out.add(w.clone(), c);
                }
                out
            })
            .collect())
    }
}

/// A finite combination of basis vectors `u w0`, keyed by creation word.
#[derive(Clone, PartialEq, Eq)]
pub struct VermaVector {
    algebra: AlgebraSpec,
    terms: BTreeMap<ModeWord, Coefficient>,
}

impl VermaVector {
    pub fn zero(algebra: AlgebraSpec) -> Self {
        VermaVector {
            algebra,
            terms: BTreeMap::new(),
        }
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.algebra
    }

    pub fn terms(&self) -> &BTreeMap<ModeWord, Coefficient> {
        &self.terms
    }

    pub fn coeff(&self, w: &ModeWord) -> Coefficient {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms.
    pub fn degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(ModeWord::degree);
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    /// The component of degree `d`.
    pub fn component(&self, d: i32) -> VermaVector {
        VermaVector {
            algebra: self.algebra,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    fn add(&mut self, w: ModeWord, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &VermaVector, s: &Coefficient) {
        assert_eq!(self.algebra, other.algebra, "algebra mismatch");
        for (w, c) in &other.terms {
            self.add(w.clone(), c * s);
        }
    }

    pub fn scale(&self, s: &Coefficient) -> VermaVector {
        let mut out = VermaVector::zero(self.algebra);
        out.add_scaled(self, s);
        out
    }
}

impl fmt::Display for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for m in w.format(&self.algebra) {
                write!(f, " {m}")?;
            }
            f.write_str(" w0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize)]
struct VermaTermJson {
    word: Vec<String>,
    coeff: String,
}

impl Serialize for VermaVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<VermaTermJson> = self
            .terms
            .iter()
            .map(|(w, c)| VermaTermJson {
                word: w.format(&self.algebra),
                coeff: c.to_string(),
            })
            .collect();
        terms.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rat;
    use crate::partition::Partition;

    fn q(n: i64) -> Param {
        Param::Rational(rat(n, 1))
    }

    #[test]
    fn param_parsing() {
        assert_eq!("formal".parse::<Param>(), Ok(Param::Formal));
        assert_eq!("3/2".parse::<Param>(), Ok(Param::Rational(rat(3, 2))));
        assert_eq!("-1".parse::<Param>(), Ok(q(-1)));
        assert!("x".parse::<Param>().is_err());
    }

    #[test]
    fn act_examples() {
        let m = VermaModule::heisenberg(Param::Formal);
        let h = |i| EnvElement::mode(AlgebraSpec::HEISENBERG, i);
        let v = m.basis_vector(ModeWord::new(vec![-1]));
        assert_eq!(m.act(&h(1), &v).unwrap(), m.highest_weight_vector());
        let w0 = m.highest_weight_vector();
        assert_eq!(m.act(&h(0), &w0).unwrap(), w0.scale(&Coefficient::x()));
        assert!(m.act(&h(2), &w0).unwrap().is_zero());

        let vir = VermaModule::virasoro(Param::Formal, Param::Formal);
        let l = |i| EnvElement::mode(AlgebraSpec::VIRASORO, i);
        let v = vir.basis_vector(ModeWord::new(vec![-1]));
        assert_eq!(
            vir.act(&l(1), &v).unwrap(),
            vir.highest_weight_vector().scale(&Coefficient::x().scale(&rat(2, 1)))
        );
        // L_2 L_{-2} w0 = (4h + c/2) w0
        let v = vir.basis_vector(ModeWord::new(vec![-2]));
        let want = &Coefficient::x().scale(&rat(4, 1)) + &Coefficient::c().scale(&rat(1, 2));
        assert_eq!(vir.act(&l(2), &v).unwrap(), vir.highest_weight_vector().scale(&want));
        let vir_c = VermaModule::virasoro(q(0), q(2));
        assert_eq!(vir_c.act(&l(2), &v).unwrap(), vir_c.highest_weight_vector());
    }

    #[test]
    fn dimensions() {
        let m = VermaModule::virasoro(Param::Formal, Param::Formal);
        let dims: Vec<usize> = (0..=6).map(|d| m.dimension(d)).collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn mta_action_examples() {
        let m = VermaModule::heisenberg(Param::Formal);
        let alg = AlgebraSpec::HEISENBERG;
        let p = |v: &[u32]| Partition::new(v.to_vec());
        let e = MtaElement::epsilon(alg, &p(&[1, 1]), &p(&[2]));
        let v2 = m.basis_vector(p(&[2]).creation_word());
        let v11 = m.basis_vector(p(&[1, 1]).creation_word());
        assert_eq!(m.mta_act(&e, &v2).unwrap(), v11.scale(&Coefficient::from_int(2)));
        assert!(m.mta_act(&e, &v11).unwrap().is_zero());
        assert!(m.mta_act(&MtaElement::zero(alg), &v11).unwrap().is_zero());
        assert!(matches!(
            m.mta_act(&e, &m.highest_weight_vector()),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn singular_vector_examples() {
        let vir0 = VermaModule::virasoro(q(0), Param::Formal);
        let k = vir0.singular_vectors(1).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].terms().keys().collect::<Vec<_>>(), vec![&ModeWord::new(vec![-1])]);
        let generic = VermaModule::virasoro(Param::Formal, Param::Formal);
        assert!(generic.singular_vectors(1).unwrap().is_empty());
        let heis = VermaModule::heisenberg(Param::Formal);
        for d in 1..=4 {
            assert!(heis.singular_vectors(d).unwrap().is_empty());
        }
        // h = c = 0: only L_1 imposes a condition at degree 2, 2a + 3b = 0
        let triv = VermaModule::virasoro(q(0), q(0));
        let k = triv.singular_vectors(2).unwrap();
        assert_eq!(k.len(), 1);
        let (a, b) = (
            k[0].coeff(&ModeWord::new(vec![-1, -1])),
            k[0].coeff(&ModeWord::new(vec![-2])),
        );
        assert_eq!(&a.scale(&rat(2, 1)) + &b.scale(&rat(3, 1)), Coefficient::zero());
    }
}
