//! Higher level Zhu algebras `A_d = U_0 / N^{d+1} U_0`.
//!
//! A class is stored through its canonical representative: a combination of
//! words `u 0^m v` with `u` a creation word, `v` an annihilation word of equal
//! weight at most `d`. The zero-mode power `m` is recorded as `x^m` in the
//! coefficient, so `x` always means "zero modes in the middle slot". For the
//! Heisenberg algebra `H_0` is central and this agrees with multiplication by
//! the class of `H_0`; for Virasoro it does not (`L_0 L_{-1} L_1` and
//! `L_{-1} L_0 L_1` differ by `L_{-1} L_1`), and products always go through
//! [`zhu_multiply`].

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffs::{rat, Coefficient, Monomial};
use crate::error::{Error, Result};
use crate::liealg::{AlgebraKind, AlgebraSpec};
use crate::mta::{self, IdentityOutcome};
use crate::partition::{norm_coefficient, partition_count, partitions, Partition};
use crate::pbw::{EnvElement, ModeWord, Pbw, Window};

/// A pair (creation word, annihilation word) standing for `u [middle] v`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sandwich {
    pub creation: ModeWord,
    pub annihilation: ModeWord,
}

impl Sandwich {
    pub fn new(creation: ModeWord, annihilation: ModeWord) -> Self {
        Sandwich { creation, annihilation }
    }

    pub fn from_partitions(r: &Partition, s: &Partition) -> Self {
        Sandwich::new(r.creation_word(), s.annihilation_word())
    }

    pub fn unit() -> Self {
        Sandwich::new(ModeWord::empty(), ModeWord::empty())
    }

    /// Annihilation weight, which equals the creation weight in degree 0.
    pub fn weight(&self) -> u32 {
        self.annihilation.annihilation_weight()
    }

    pub fn partitions(&self) -> Option<(Partition, Partition)> {
        Some((
            Partition::from_creation_word(&self.creation)?,
            Partition::from_annihilation_word(&self.annihilation)?,
        ))
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct SandwichTermJson {
    pub creation: Vec<String>,
    pub annihilation: Vec<String>,
    pub coeff: Coefficient,
}

pub(crate) type SandwichTerms = BTreeMap<Sandwich, Coefficient>;

pub(crate) fn add_sandwich(terms: &mut SandwichTerms, key: Sandwich, c: Coefficient) {
    if c.is_zero() {
        return;
    }
    let e = terms.entry(key.clone()).or_default();
    *e += &c;
    if e.is_zero() {
        terms.remove(&key);
    }
}

pub(crate) fn sandwich_json(alg: &AlgebraSpec, terms: &SandwichTerms) -> Vec<SandwichTermJson> {
    terms
        .iter()
        .map(|(k, v)| SandwichTermJson {
            creation: k.creation.format(alg),
            annihilation: k.annihilation.format(alg),
            coeff: v.clone(),
        })
        .collect()
}

pub(crate) fn fmt_sandwiches(
    f: &mut fmt::Formatter<'_>,
    alg: &AlgebraSpec,
    terms: &SandwichTerms,
    sep: &str,
) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (k, v)) in terms.iter().enumerate() {
        if i > 0 {
            f.write_str(" + ")?;
        }
        write!(
            f,
            "({v})[{}{sep}{}]",
            k.creation.format(alg).join(""),
            k.annihilation.format(alg).join("")
        )?;
    }
    Ok(())
}

/// The class `[a]_d` of a degree-0 element.
#[derive(Clone, PartialEq, Eq)]
pub struct ZhuElement {
    algebra: AlgebraSpec,
    level: u32,
    terms: SandwichTerms,
}

impl ZhuElement {
    pub fn zero(algebra: AlgebraSpec, level: u32) -> Self {
        ZhuElement {
            algebra,
            level,
            terms: SandwichTerms::new(),
        }
    }

    pub fn one(algebra: AlgebraSpec, level: u32) -> Self {
        Self::sandwich(algebra, level, Sandwich::unit(), Coefficient::one())
    }

    /// The class of the zero mode.
    pub fn x(algebra: AlgebraSpec, level: u32) -> Self {
        Self::sandwich(algebra, level, Sandwich::unit(), Coefficient::x())
    }

    /// `coeff * [u v]_d`, with `x` in `coeff` placed in the middle. Zero if
    /// the weight exceeds the level. Panics if the key is not degree 0.
    pub fn sandwich(algebra: AlgebraSpec, level: u32, key: Sandwich, coeff: Coefficient) -> Self {
        assert_eq!(
            key.creation.creation_weight(),
            key.annihilation.annihilation_weight(),
            "sandwich must have degree 0"
        );
        let mut terms = SandwichTerms::new();
        if key.weight() <= level {
            add_sandwich(&mut terms, key, coeff);
        }
        ZhuElement { algebra, level, terms }
    }

    /// `[u_r v_s]_d`.
    pub fn basis_element(algebra: AlgebraSpec, level: u32, r: &Partition, s: &Partition) -> Self {
        Self::sandwich(algebra, level, Sandwich::from_partitions(r, s), Coefficient::one())
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.algebra
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn terms(&self) -> &BTreeMap<Sandwich, Coefficient> {
        &self.terms
    }

    pub fn coeff(&self, key: &Sandwich) -> Coefficient {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Module scaling; `x` in `s` acts in the middle slot.
    pub fn scale(&self, s: &Coefficient) -> ZhuElement {
        let mut out = ZhuElement::zero(self.algebra, self.level);
        out.add_scaled(self, s);
        out
    }

    pub fn add_scaled(&mut self, other: &ZhuElement, s: &Coefficient) {
        assert_eq!(self.algebra, other.algebra, "algebra mismatch");
        assert_eq!(self.level, other.level, "level mismatch");
        for (k, v) in &other.terms {
            add_sandwich(&mut self.terms, k.clone(), v * s);
        }
    }

    /// The representative `sum coeff * u 0^m v` in the enveloping algebra.
    pub fn lift(&self) -> EnvElement {
        let mut out = EnvElement::zero(self.algebra);
        for (k, v) in &self.terms {
            for (m, q) in v.terms() {
                let word = ModeWord::join(&k.creation, m.x, &k.annihilation);
                let coeff = Coefficient::monomial(Monomial::new(0, m.c), q.clone());
                out.add_scaled(
                    &EnvElement::from_canonical(self.algebra, word, Coefficient::one()),
                    &coeff,
                );
            }
        }
        out
    }

    /// The same representative read at another level. Terms of weight above
    /// the new level are dropped.
    pub fn at_level(&self, level: u32) -> ZhuElement {
        ZhuElement {
            algebra: self.algebra,
            level,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.weight() <= level)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}

impl std::ops::Add<&ZhuElement> for &ZhuElement {
    type Output = ZhuElement;
    fn add(self, rhs: &ZhuElement) -> ZhuElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Coefficient::one());
        out
    }
}

impl std::ops::Sub<&ZhuElement> for &ZhuElement {
    type Output = ZhuElement;
    fn sub(self, rhs: &ZhuElement) -> ZhuElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Coefficient::from_int(-1));
        out
    }
}

impl fmt::Display for ZhuElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sandwiches(f, &self.algebra, &self.terms, " | ")?;
        write!(f, " @ level {}", self.level)
    }
}

impl fmt::Debug for ZhuElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ZhuElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ZhuElement", 3)?;
        st.serialize_field("algebra", &self.algebra.kind)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("terms", &sandwich_json(&self.algebra, &self.terms))?;
        st.end()
    }
}

/// `[a]_d`: drop words of annihilation weight above `d`, fold zero modes
/// into `x`.
pub fn zhu_class(a: &EnvElement, level: u32) -> Result<ZhuElement> {
    let mut out = ZhuElement::zero(a.algebra(), level);
    for (w, v) in a.terms() {
        if w.degree() != 0 {
            return Err(Error::NonzeroDegree(w.degree()));
        }
        if w.annihilation_weight() > level {
            continue;
        }
        let (u, m, s) = w.split();
        add_sandwich(&mut out.terms, Sandwich::new(u, s), v.shift(m, 0));
    }
    Ok(out)
}

pub fn zhu_multiply(pbw: &Pbw, a: &ZhuElement, b: &ZhuElement) -> Result<ZhuElement> {
    if a.algebra != b.algebra {
        return Err(Error::AlgebraMismatch(a.algebra.kind, b.algebra.kind));
    }
    if a.level != b.level {
        return Err(Error::LevelMismatch(a.level, b.level));
    }
    let prod = pbw.multiply(&a.lift(), &b.lift())?;
    zhu_class(&prod, a.level)
}

/// `pi_d : A_d -> A_{d-1}`.
pub fn pi_map(a: &ZhuElement) -> Result<ZhuElement> {
    if a.level == 0 {
        return Err(Error::ProjectBelowZero);
    }
    Ok(a.at_level(a.level - 1))
}

/// Partition pairs `(r, s)` with `|r| = |s| <= d`, layer by layer; these
/// index a `C[x]`-basis of `A_d`.
pub fn zhu_basis(level: u32) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for j in 0..=level {
        let ps = partitions(j);
        for r in &ps {
            for s in &ps {
                out.push((r.clone(), s.clone()));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisLabel {
    pub creation: Partition,
    pub annihilation: Partition,
}

/// Products of all basis pairs of `A_d`.
#[derive(Clone, Debug, Serialize)]
pub struct ZhuTable {
    pub level: u32,
    pub basis: Vec<BasisLabel>,
    pub table: Vec<Vec<ZhuElement>>,
}

pub fn multiplication_table(pbw: &Pbw, level: u32) -> Result<ZhuTable> {
    let alg = pbw.algebra();
    let basis = zhu_basis(level);
    let elems: Vec<ZhuElement> = basis
        .iter()
        .map(|(r, s)| ZhuElement::basis_element(alg, level, r, s))
        .collect();
    let table = elems
        .par_iter()
        .map_init(pbw.spawner(), |engine, a| {
            elems
                .iter()
                .map(|b| zhu_multiply(engine, a, b))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ZhuTable {
        level,
        basis: basis
            .into_iter()
            .map(|(creation, annihilation)| BasisLabel { creation, annihilation })
            .collect(),
        table,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LayerReport {
    pub weight: u32,
    pub size: u64,
    pub central_idempotent: ZhuElement,
    pub matrix_units_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeisenbergStructureReport {
    pub level: u32,
    pub rank: usize,
    pub expected_rank: u64,
    pub layers: Vec<LayerReport>,
    pub idempotents_orthogonal: bool,
    pub idempotents_central: bool,
    pub idempotents_sum_to_one: bool,
    pub cross_layer_products_vanish: bool,
    pub triangular_basis_change: bool,
    pub ok: bool,
}

fn par_all<T: Sync>(pbw: &Pbw, items: &[T], check: impl Fn(&Pbw, &T) -> Result<bool> + Sync + Send) -> Result<bool> {
    let results = items
        .par_iter()
        .map_init(pbw.spawner(), |engine, item| check(engine, item))
        .collect::<Result<Vec<bool>>>()?;
    Ok(results.into_iter().all(|b| b))
}

/// Certify `A_d ≅ prod_{j<=d} Mat_{p(j)}(C[x])` for the Heisenberg algebra.
///
/// The central idempotents are built from the layer identities:
/// `F_d = [I_d]` and `F_j = [I_j] * prod_{k>j} (1 - F_k)`. Matrix units are
/// `e_rs = [u_r v_s] F_j / ||s||`; they agree with `[u_r v_s] / ||s||` up to
/// terms of higher weight, so they form a `C[x]`-basis.
pub fn verify_heisenberg_structure(pbw: &Pbw, level: u32) -> Result<HeisenbergStructureReport> {
    let alg = pbw.algebra();
    if alg.kind != AlgebraKind::Heisenberg {
        return Err(Error::HeisenbergOnly("verify_heisenberg_structure"));
    }
    let d = level;
    let basis = zhu_basis(d);
    let expected_rank: u64 = (0..=d).map(|j| partition_count(j).pow(2)).sum();
    let one = ZhuElement::one(alg, d);

    let mut raw = Vec::new();
    for j in 0..=d {
        let ident = match mta::find_identity(pbw, j)? {
            IdentityOutcome::Identity { element, .. } => element,
            _ => return Err(Error::MissingIdentity(j)),
        };
        raw.push(mta::mu(&ident, j)?.at_level(d));
    }
    let mut f: Vec<ZhuElement> = vec![ZhuElement::zero(alg, d); d as usize + 1];
    for j in (0..=d as usize).rev() {
        let mut acc = raw[j].clone();
        for fk in &f[j + 1..] {
            acc = zhu_multiply(pbw, &acc, &(&one - fk))?;
        }
        f[j] = acc;
    }

    let mut sum = ZhuElement::zero(alg, d);
    for fj in &f {
        sum = &sum + fj;
    }
    let idempotents_sum_to_one = sum == one;

    let pairs: Vec<(usize, usize)> = (0..f.len()).flat_map(|j| (0..f.len()).map(move |k| (j, k))).collect();
    let idempotents_orthogonal = par_all(pbw, &pairs, |e, &(j, k)| {
        let p = zhu_multiply(e, &f[j], &f[k])?;
        Ok(if j == k { p == f[j] } else { p.is_zero() })
    })?;

    let basis_elems: Vec<ZhuElement> = basis
        .iter()
        .map(|(r, s)| ZhuElement::basis_element(alg, d, r, s))
        .collect();
    let central_items: Vec<(usize, usize)> = (0..f.len())
        .flat_map(|j| (0..basis_elems.len()).map(move |b| (j, b)))
        .collect();
    let idempotents_central = par_all(pbw, &central_items, |e, &(j, b)| {
        Ok(zhu_multiply(e, &f[j], &basis_elems[b])? == zhu_multiply(e, &basis_elems[b], &f[j])?)
    })?;

    // matrix units, indexed like `basis`
    let units: Vec<(u32, Partition, Partition, ZhuElement)> = basis
        .par_iter()
        .map_init(pbw.spawner(), |e, (r, s)| {
            let j = r.size();
            let b = ZhuElement::basis_element(alg, d, r, s);
            let inv = Coefficient::constant(rat(1, 1) / crate::coeffs::Rational::from(norm_coefficient(s)));
            let unit = zhu_multiply(e, &b, &f[j as usize])?.scale(&inv);
            Ok((j, r.clone(), s.clone(), unit))
        })
        .collect::<Result<Vec<_>>>()?;

    let triangular_basis_change = units.iter().all(|(j, r, s, unit)| {
        let key = Sandwich::from_partitions(r, s);
        let lead = Coefficient::constant(rat(1, 1) / crate::coeffs::Rational::from(norm_coefficient(s)));
        unit.terms()
            .iter()
            .filter(|(k, _)| k.weight() <= *j)
            .all(|(k, v)| if *k == key { *v == lead } else { false })
            && unit.coeff(&key) == lead
    });

    let unit_pairs: Vec<(usize, usize)> = (0..units.len())
        .flat_map(|a| (0..units.len()).map(move |b| (a, b)))
        .collect();
    let checks = unit_pairs
        .par_iter()
        .map_init(pbw.spawner(), |e, &(a, b)| -> Result<(u32, bool, bool)> {
            let (ja, r, s, ua) = &units[a];
            let (jb, t, v, ub) = &units[b];
            let prod = zhu_multiply(e, ua, ub)?;
            if ja != jb {
                return Ok((*ja, true, prod.is_zero()));
            }
            let expected = if s == t {
                units
                    .iter()
                    .find(|(j, rr, vv, _)| j == ja && rr == r && vv == v)
                    .map(|(_, _, _, u)| u.clone())
                    .expect("unit exists")
            } else {
                ZhuElement::zero(alg, d)
            };
            Ok((*ja, prod == expected, true))
        })
        .collect::<Result<Vec<_>>>()?;
    let cross_layer_products_vanish = checks.iter().all(|c| c.2);
    let layers: Vec<LayerReport> = (0..=d)
        .map(|j| LayerReport {
            weight: j,
            size: partition_count(j),
            central_idempotent: f[j as usize].clone(),
            matrix_units_ok: checks.iter().filter(|c| c.0 == j).all(|c| c.1),
        })
        .collect();

    let rank = basis.len();
    let ok = rank as u64 == expected_rank
        && idempotents_sum_to_one
        && idempotents_orthogonal
        && idempotents_central
        && triangular_basis_change
        && cross_layer_products_vanish
        && layers.iter().all(|l| l.matrix_units_ok);
    Ok(HeisenbergStructureReport {
        level: d,
        rank,
        expected_rank,
        layers,
        idempotents_orthogonal,
        idempotents_central,
        idempotents_sum_to_one,
        cross_layer_products_vanish,
        triangular_basis_change,
        ok,
    })
}

/// `(L_{-2}L_{-2}1)_{[3]}` truncated to modes `|n| <= window`:
/// `2 sum_{n=2}^{D} L_{-n} L_n + L_{-1} L_1 + L_1 L_{-1} + L_0 L_0`.
pub fn virasoro_iterate_mode(pbw: &Pbw, window: u32) -> Result<EnvElement> {
    let alg = AlgebraSpec::VIRASORO;
    let mut out = EnvElement::zero(alg);
    for n in 2..=window as i32 {
        out.add_scaled(&pbw.normal_order(&[-n, n])?, &Coefficient::from_int(2));
    }
    for raw in [[-1, 1], [1, -1], [0, 0]] {
        out.add_scaled(&pbw.normal_order(&raw)?, &Coefficient::one());
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductLawCheck {
    pub i: u32,
    pub j: u32,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VirasoroLevel1Report {
    pub window: u32,
    /// `[L_1, L_{-1}] = 2 L_0`.
    pub bracket_ok: bool,
    /// Coefficient of `L_{-1} L_1` in the normal-ordered iterate mode.
    pub iterate_coefficient: Coefficient,
    /// `Y~ - 2 L_{-1} L_1` lies in `N^2 U_0`.
    pub ytilde_membership_ok: bool,
    /// The class of `2 L_{-1} L_1` is nonzero in `A_1` and dies in `A_0`.
    pub kernel_generator_ok: bool,
    /// `[L_{-1} x^i L_1] [L_{-1} x^j L_1] = 2 [L_{-1} x^{i+j+1} L_1]`.
    pub product_law: Vec<ProductLawCheck>,
    /// `X Y = 0` in `A_1` with `X = Y~ - 4x + 4`, `Y = Y~`, both nonzero.
    pub presentation_ok: bool,
    pub ok: bool,
}

/// Level-1 checks for Virasoro inside the mode window `|n| <= window`.
pub fn verify_virasoro_level1(window: u32) -> Result<VirasoroLevel1Report> {
    if window < 4 {
        return Err(Error::WindowTooSmall { needed: 4, got: window });
    }
    let alg = AlgebraSpec::VIRASORO;
    let pbw = Pbw::new(alg).with_window(Some(Window {
        max_index: window,
        max_len: 16,
    }));
    let br = alg.bracket(crate::liealg::Mode::new(1), crate::liealg::Mode::new(-1));
    let bracket_ok = br.central.is_zero() && br.modes.len() == 1 && br.modes.get(&0) == Some(&Coefficient::from_int(2));

    let iterate = virasoro_iterate_mode(&pbw, window)?;
    let e_word = ModeWord::new(vec![-1, 1]);
    let iterate_coefficient = iterate.coeff(&e_word);
    let mut ytilde = iterate.clone();
    ytilde.add_scaled(&pbw.normal_order(&[0, 0])?, &Coefficient::from_int(-1));
    ytilde.add_scaled(&EnvElement::mode(alg, 0), &Coefficient::from_int(-2));
    let two_e = EnvElement::from_canonical(alg, e_word.clone(), Coefficient::from_int(2));
    let diff = &ytilde - &two_e;
    let ytilde_membership_ok = !diff.is_zero() && zhu_class(&diff, 1)?.is_zero();

    let gen = zhu_class(&two_e, 1)?;
    let kernel_generator_ok = !gen.is_zero() && pi_map(&gen)?.is_zero();

    let key = Sandwich::new(ModeWord::new(vec![-1]), ModeWord::new(vec![1]));
    let mut product_law = Vec::new();
    for total in 0..=6u32 {
        for i in 0..=total {
            let j = total - i;
            let a = ZhuElement::sandwich(alg, 1, key.clone(), Coefficient::x_pow(i));
            let b = ZhuElement::sandwich(alg, 1, key.clone(), Coefficient::x_pow(j));
            let expected = ZhuElement::sandwich(alg, 1, key.clone(), Coefficient::x_pow(i + j + 1).scale(&rat(2, 1)));
            let ok = zhu_multiply(&pbw, &a, &b)? == expected;
            product_law.push(ProductLawCheck { i, j, ok });
        }
    }

    let y = zhu_class(&ytilde, 1)?;
    let mut x_el = y.clone();
    x_el.add_scaled(&ZhuElement::x(alg, 1), &Coefficient::from_int(-4));
    x_el.add_scaled(&ZhuElement::one(alg, 1), &Coefficient::from_int(4));
    let presentation_ok = !y.is_zero()
        && !x_el.is_zero()
        && zhu_multiply(&pbw, &x_el, &y)?.is_zero()
        && zhu_multiply(&pbw, &y, &x_el)?.is_zero()
        && zhu_class(&ytilde, 0)?.is_zero();

    let ok = bracket_ok
        && iterate_coefficient == Coefficient::from_int(2)
        && ytilde_membership_ok
        && kernel_generator_ok
        && product_law.iter().all(|c| c.ok)
        && presentation_ok;
    Ok(VirasoroLevel1Report {
        window,
        bracket_ok,
        iterate_coefficient,
        ytilde_membership_ok,
        kernel_generator_ok,
        product_law,
        presentation_ok,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: AlgebraSpec = AlgebraSpec::HEISENBERG;
    const V: AlgebraSpec = AlgebraSpec::VIRASORO;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn class_examples() {
        let pbw = Pbw::new(H);
        let e = pbw.normal_order(&[-1, 1]).unwrap();
        assert!(zhu_class(&e, 0).unwrap().is_zero());
        assert_eq!(
            zhu_class(&e, 1).unwrap(),
            ZhuElement::basis_element(H, 1, &p(&[1]), &p(&[1]))
        );
        let h00 = pbw.normal_order(&[0, 0]).unwrap();
        assert_eq!(
            zhu_class(&h00, 0).unwrap(),
            ZhuElement::one(H, 0).scale(&Coefficient::x_pow(2))
        );
        assert_eq!(zhu_class(&EnvElement::mode(H, 1), 3), Err(Error::NonzeroDegree(-1)));
    }

    #[test]
    fn product_examples() {
        let pbw = Pbw::new(H);
        let e = ZhuElement::basis_element(H, 1, &p(&[1]), &p(&[1]));
        assert_eq!(zhu_multiply(&pbw, &e, &e).unwrap(), e);
        assert_eq!(zhu_multiply(&pbw, &ZhuElement::one(H, 1), &e).unwrap(), e);
        let vp = Pbw::new(V);
        let l = zhu_class(&vp.normal_order(&[-1, 1]).unwrap(), 0).unwrap();
        assert!(l.is_zero());
        assert!(matches!(
            zhu_multiply(&pbw, &e, &ZhuElement::one(H, 2)),
            Err(Error::LevelMismatch(1, 2))
        ));
    }

    #[test]
    fn projection_examples() {
        let e = ZhuElement::basis_element(H, 1, &p(&[1]), &p(&[1]));
        assert!(pi_map(&e).unwrap().is_zero());
        assert_eq!(pi_map(&ZhuElement::one(H, 3)).unwrap(), ZhuElement::one(H, 2));
        assert_eq!(pi_map(&ZhuElement::x(H, 1)).unwrap(), ZhuElement::x(H, 0));
        assert_eq!(pi_map(&ZhuElement::one(H, 0)), Err(Error::ProjectBelowZero));
    }

    #[test]
    fn virasoro_middle_x_is_not_central_multiplication() {
        let pbw = Pbw::new(V);
        let key = Sandwich::new(ModeWord::new(vec![-1]), ModeWord::new(vec![1]));
        let e = ZhuElement::sandwich(V, 1, key.clone(), Coefficient::one());
        let xe = zhu_multiply(&pbw, &ZhuElement::x(V, 1), &e).unwrap();
        let ex = zhu_multiply(&pbw, &e, &ZhuElement::x(V, 1)).unwrap();
        assert_eq!(xe, ex);
        let expected = ZhuElement::sandwich(V, 1, key, &Coefficient::x() + &Coefficient::one());
        assert_eq!(xe, expected);
    }

    #[test]
    fn ranks_match_partition_sums() {
        let expected = [1usize, 2, 6, 15, 40, 89];
        for (d, want) in expected.iter().enumerate() {
            assert_eq!(zhu_basis(d as u32).len(), *want);
        }
    }

    #[test]
    fn heisenberg_structure_small_levels() {
        for d in 0..=2 {
            let rep = verify_heisenberg_structure(&Pbw::new(H), d).unwrap();
            assert!(rep.ok, "{rep:#?}");
        }
        let rep = verify_heisenberg_structure(&Pbw::new(H), 2).unwrap();
        assert_eq!(rep.rank, 6);
        assert!(matches!(
            verify_heisenberg_structure(&Pbw::new(V), 1),
            Err(Error::HeisenbergOnly(_))
        ));
    }

    #[test]
    fn virasoro_level1_window_eight() {
        let rep = verify_virasoro_level1(8).unwrap();
        assert!(rep.ok, "{rep:#?}");
        assert_eq!(rep.product_law.len(), 28);
        assert!(matches!(verify_virasoro_level1(3), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn table_shape() {
        let t = multiplication_table(&Pbw::new(H), 2).unwrap();
        assert_eq!(t.basis.len(), 6);
        assert_eq!(t.table.len(), 6);
        assert!(t.table.iter().all(|row| row.len() == 6));
        let json = serde_json::to_value(&t).unwrap();
        assert_eq!(json["level"], 2);
    }
}
