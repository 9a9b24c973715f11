//! PBW normal ordering in the enveloping algebra of a mode algebra.
//!
//! A canonical word lists mode indices in weakly increasing order, so
//! creation modes (negative index) sit on the left, zero modes in the middle
//! and annihilation modes (positive index) on the right.
//!
//! Rewriting is driven by `left_mul(l, w)`, the normal form of `l * w` for a
//! single mode `l` and a canonical word `w`. If `l` does not exceed the first
//! letter `m` of `w` the product is already canonical; otherwise
//! `l * m * t = m * (l * t) + [l, m] * t`. Results are memoized per engine.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeffs::{rat, Coefficient};
use crate::error::{Error, Result};
use crate::liealg::{AlgebraKind, AlgebraSpec, Mode};

/// A word in modes, stored by index.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ModeWord(Vec<i32>);

impl ModeWord {
    pub fn new(indices: Vec<i32>) -> Self {
        ModeWord(indices)
    }

    pub fn empty() -> Self {
        ModeWord(Vec::new())
    }

    pub fn indices(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn degree(&self) -> i32 {
        -self.0.iter().sum::<i32>()
    }

    /// Sum of `-n` over creation modes.
    pub fn creation_weight(&self) -> u32 {
        self.0.iter().filter(|&&i| i < 0).map(|&i| i.unsigned_abs()).sum()
    }

    /// Sum of `n` over annihilation modes.
    pub fn annihilation_weight(&self) -> u32 {
        self.0.iter().filter(|&&i| i > 0).map(|&i| i.unsigned_abs()).sum()
    }

    pub fn zero_count(&self) -> u32 {
        self.0.iter().filter(|&&i| i == 0).count() as u32
    }

    /// `(creation part, number of zero modes, annihilation part)` of a
    /// canonical word.
    pub fn split(&self) -> (ModeWord, u32, ModeWord) {
        debug_assert!(self.is_canonical());
        let neg = self.0.iter().take_while(|&&i| i < 0).count();
        let zeros = self.0[neg..].iter().take_while(|&&i| i == 0).count();
        (
            ModeWord(self.0[..neg].to_vec()),
            zeros as u32,
            ModeWord(self.0[neg + zeros..].to_vec()),
        )
    }

    /// `u 0^m v` for a creation word `u` and an annihilation word `v`.
    pub fn join(creation: &ModeWord, zeros: u32, annihilation: &ModeWord) -> ModeWord {
        let mut v = Vec::with_capacity(creation.len() + zeros as usize + annihilation.len());
        v.extend_from_slice(&creation.0);
        v.extend(std::iter::repeat_n(0, zeros as usize));
        v.extend_from_slice(&annihilation.0);
        ModeWord(v)
    }

    pub fn format(&self, alg: &AlgebraSpec) -> Vec<String> {
        self.0.iter().map(|&i| alg.format_mode(Mode::new(i))).collect()
    }

    pub fn parse(alg: &AlgebraSpec, modes: &[String]) -> Result<ModeWord> {
        let idx = modes
            .iter()
            .map(|s| alg.parse_mode(s).map(|m| m.index))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ModeWord(idx))
    }
}

impl fmt::Debug for ModeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub(crate) type Terms = BTreeMap<ModeWord, Coefficient>;

pub(crate) fn add_term(terms: &mut Terms, word: ModeWord, coeff: Coefficient) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(word) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn add_scaled(out: &mut Terms, src: &Terms, s: &Coefficient) {
    for (w, v) in src {
        add_term(out, w.clone(), v * s);
    }
}

/// A finite `Q[c]`-combination of canonical words.
#[derive(Clone, PartialEq, Eq)]
pub struct EnvElement {
    algebra: AlgebraSpec,
    terms: Terms,
}

impl EnvElement {
    pub fn zero(algebra: AlgebraSpec) -> Self {
        EnvElement {
            algebra,
            terms: Terms::new(),
        }
    }

    pub fn one(algebra: AlgebraSpec) -> Self {
        Self::scalar(algebra, Coefficient::one())
    }

    pub fn scalar(algebra: AlgebraSpec, c: Coefficient) -> Self {
        let mut terms = Terms::new();
        add_term(&mut terms, ModeWord::empty(), c);
        EnvElement { algebra, terms }
    }

    pub fn mode(algebra: AlgebraSpec, index: i32) -> Self {
        Self::from_canonical(algebra, ModeWord(vec![index]), Coefficient::one())
    }

    /// A single canonical word. Panics on a non-canonical word.
    pub fn from_canonical(algebra: AlgebraSpec, word: ModeWord, coeff: Coefficient) -> Self {
        assert!(word.is_canonical(), "word {word:?} is not canonical");
        let mut terms = Terms::new();
        add_term(&mut terms, word, coeff);
        EnvElement { algebra, terms }
    }

    pub(crate) fn from_terms(algebra: AlgebraSpec, terms: Terms) -> Self {
        debug_assert!(terms.keys().all(ModeWord::is_canonical));
        debug_assert!(terms.values().all(|v| !v.is_zero()));
        EnvElement { algebra, terms }
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.algebra
    }

    pub fn terms(&self) -> &BTreeMap<ModeWord, Coefficient> {
        &self.terms
    }

    pub fn coeff(&self, word: &ModeWord) -> Coefficient {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous
    /// elements.
    pub fn degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(ModeWord::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn scale(&self, s: &Coefficient) -> EnvElement {
        let mut terms = Terms::new();
        add_scaled(&mut terms, &self.terms, s);
        EnvElement {
            algebra: self.algebra,
            terms,
        }
    }

    pub fn add_scaled(&mut self, other: &EnvElement, s: &Coefficient) {
        assert_eq!(self.algebra, other.algebra, "algebra mismatch");
        add_scaled(&mut self.terms, &other.terms, s);
    }

    pub fn map_coefficients(&self, f: impl Fn(&Coefficient) -> Coefficient) -> EnvElement {
        let mut terms = Terms::new();
        for (w, v) in &self.terms {
            add_term(&mut terms, w.clone(), f(v));
        }
        EnvElement {
            algebra: self.algebra,
            terms,
        }
    }

    /// Canonical representative modulo the left ideal generated by modes of
    /// degree `<= -n`: drop words with annihilation weight `>= n`.
    pub fn truncate_left(&self, n: i64) -> Result<EnvElement> {
        self.truncate_by(n, ModeWord::annihilation_weight)
    }

    /// Mirror of [`truncate_left`](Self::truncate_left) using creation weight.
    pub fn truncate_right(&self, n: i64) -> Result<EnvElement> {
        self.truncate_by(n, ModeWord::creation_weight)
    }

    fn truncate_by(&self, n: i64, weight: fn(&ModeWord) -> u32) -> Result<EnvElement> {
        if n <= 0 {
            return Err(Error::NonPositiveTruncation(n));
        }
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| i64::from(weight(w)) < n)
            .map(|(w, v)| (w.clone(), v.clone()))
            .collect();
        Ok(EnvElement {
            algebra: self.algebra,
            terms,
        })
    }
}

impl std::ops::Add<&EnvElement> for &EnvElement {
    type Output = EnvElement;
    fn add(self, rhs: &EnvElement) -> EnvElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Coefficient::one());
        out
    }
}

impl std::ops::Sub<&EnvElement> for &EnvElement {
    type Output = EnvElement;
    fn sub(self, rhs: &EnvElement) -> EnvElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Coefficient::from_int(-1));
        out
    }
}

impl fmt::Debug for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let word = w.format(&self.algebra).join("");
            match (v.is_one(), word.is_empty()) {
                (_, true) => write!(f, "{v}")?,
                (true, false) => f.write_str(&word)?,
                (false, false) => write!(f, "({v})*{word}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: Vec<String>,
    coeff: Coefficient,
}

impl Serialize for EnvElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(w, v)| TermJson {
                word: w.format(&self.algebra),
                coeff: v.clone(),
            })
            .collect();
        let mut st = s.serialize_struct("EnvElement", 2)?;
        st.serialize_field("algebra", &self.algebra.kind)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for EnvElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            algebra: AlgebraKind,
            terms: Vec<TermJson>,
        }
        let raw = Raw::deserialize(d)?;
        let alg = AlgebraSpec::new(raw.algebra);
        let mut terms = Terms::new();
        for t in raw.terms {
            let w = ModeWord::parse(&alg, &t.word).map_err(D::Error::custom)?;
            if !w.is_canonical() {
                return Err(D::Error::custom(Error::NonCanonicalWord(t.word.join(" "))));
            }
            add_term(&mut terms, w, t.coeff);
        }
        Ok(EnvElement::from_terms(alg, terms))
    }
}

/// Bounds on the modes and word lengths an engine may produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub max_index: u32,
    pub max_len: usize,
}

impl Window {
    pub const VIRASORO_DEFAULT: Window = Window {
        max_index: 16,
        max_len: 16,
    };
}

/// Normal-ordering engine for one algebra. Holds a memo table, so an engine
/// is cheap to clone configuration from but is not shared across threads;
/// see [`Pbw::fresh`].
pub struct Pbw {
    alg: AlgebraSpec,
    window: Option<Window>,
    max_terms: Option<usize>,
    cache: RefCell<HashMap<(i32, ModeWord), Rc<Terms>>>,
}

impl Pbw {
    /// Heisenberg engines are unbounded; Virasoro engines start with
    /// [`Window::VIRASORO_DEFAULT`].
    pub fn new(alg: AlgebraSpec) -> Self {
        let window = match alg.kind {
            AlgebraKind::Heisenberg => None,
            AlgebraKind::Virasoro => Some(Window::VIRASORO_DEFAULT),
        };
        Pbw {
            alg,
            window,
            max_terms: None,
            cache: RefCell::default(),
        }
    }

    pub fn with_window(mut self, window: Option<Window>) -> Self {
        self.window = window;
        self.cache.borrow_mut().clear();
        self
    }

    pub fn with_max_terms(mut self, max_terms: Option<usize>) -> Self {
        self.max_terms = max_terms;
        self
    }

    /// Same configuration, empty memo table.
    /// A thread-safe constructor of empty-cache copies, for `map_init`.
    pub fn spawner(&self) -> impl Fn() -> Pbw + Send + Sync {
        let (alg, window, max_terms) = (self.alg, self.window, self.max_terms);
        move || Pbw {
            alg,
            window,
            max_terms,
            cache: RefCell::default(),
        }
    }

    pub fn fresh(&self) -> Pbw {
        Pbw {
            alg: self.alg,
            window: self.window,
            max_terms: self.max_terms,
            cache: RefCell::default(),
        }
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.alg
    }

    pub fn window(&self) -> Option<Window> {
        self.window
    }

    pub fn max_terms(&self) -> Option<usize> {
        self.max_terms
    }

    fn check_mode(&self, index: i32) -> Result<()> {
        match self.window {
            Some(w) if index.unsigned_abs() > w.max_index => Err(Error::WindowIndex {
                index,
                max_index: w.max_index,
            }),
            _ => Ok(()),
        }
    }

    fn check_terms(&self, n: usize) -> Result<()> {
        match self.max_terms {
            Some(limit) if n > limit => Err(Error::TermLimit(limit)),
            _ => Ok(()),
        }
    }

    fn left_mul(&self, l: i32, w: &ModeWord) -> Result<Rc<Terms>> {
        if w.0.first().is_none_or(|&m| l <= m) {
            self.check_mode(l)?;
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(l);
            v.extend_from_slice(&w.0);
            if let Some(win) = self.window {
                if v.len() > win.max_len {
                    return Err(Error::WindowLength {
                        len: v.len(),
                        max_len: win.max_len,
                    });
                }
            }
            let mut t = Terms::new();
            t.insert(ModeWord(v), Coefficient::one());
            return Ok(Rc::new(t));
        }
        let key = (l, w.clone());
        if let Some(hit) = self.cache.borrow().get(&key) {
            return Ok(Rc::clone(hit));
        }
        let m1 = w.0[0];
        let tail = ModeWord(w.0[1..].to_vec());
        let mut out = Terms::new();
        let inner = self.left_mul(l, &tail)?;
        for (t, v) in inner.iter() {
            add_scaled(&mut out, &*self.left_mul(m1, t)?, v);
        }
        let br = self.alg.bracket(Mode::new(l), Mode::new(m1));
        for (k, v) in &br.modes {
            add_scaled(&mut out, &*self.left_mul(*k, &tail)?, v);
        }
        add_term(&mut out, tail, br.central);
        self.check_terms(out.len())?;
        let out = Rc::new(out);
        self.cache.borrow_mut().insert(key, Rc::clone(&out));
        Ok(out)
    }

    /// `mode_{a_1} ... mode_{a_k} * rhs` for a raw word `a` and a normal form.
    fn apply_word(&self, raw: &[i32], rhs: Terms) -> Result<Terms> {
        let mut acc = rhs;
        for &l in raw.iter().rev() {
            let mut next = Terms::new();
            for (w, v) in &acc {
                add_scaled(&mut next, &*self.left_mul(l, w)?, v);
            }
            self.check_terms(next.len())?;
            acc = next;
        }
        Ok(acc)
    }

    /// Normal form of an arbitrary product of modes.
    pub fn normal_order(&self, raw: &[i32]) -> Result<EnvElement> {
        let mut one = Terms::new();
        one.insert(ModeWord::empty(), Coefficient::one());
        let terms = self.apply_word(raw, one)?;
        Ok(EnvElement::from_terms(self.alg, terms))
    }

    pub fn multiply(&self, a: &EnvElement, b: &EnvElement) -> Result<EnvElement> {
        for e in [a, b] {
            if e.algebra != self.alg {
                return Err(Error::AlgebraMismatch(self.alg.kind, e.algebra.kind));
            }
        }
        let mut out = Terms::new();
        for (wa, va) in &a.terms {
            let prod = self.apply_word(&wa.0, b.terms.clone())?;
            add_scaled(&mut out, &prod, va);
            self.check_terms(out.len())?;
        }
        Ok(EnvElement::from_terms(self.alg, out))
    }

    /// Product of several elements, left to right.
    pub fn product(&self, factors: &[&EnvElement]) -> Result<EnvElement> {
        let mut acc = EnvElement::one(self.alg);
        for f in factors.iter().rev() {
            acc = self.multiply(f, &acc)?;
        }
        Ok(acc)
    }

    /// The anti-involution extended to the enveloping algebra: reverse each
    /// word, apply theta letterwise, and normal order.
    pub fn theta(&self, a: &EnvElement) -> Result<EnvElement> {
        let mut out = EnvElement::zero(self.alg);
        for (w, v) in &a.terms {
            let mut sign = 1i64;
            let raw: Vec<i32> =
                w.0.iter()
                    .rev()
                    .map(|&i| {
                        let (s, m) = self.alg.theta(Mode::new(i));
                        sign *= s;
                        m.index
                    })
                    .collect();
            let t = self.normal_order(&raw)?;
            out.add_scaled(&t, &v.scale(&rat(sign, 1)));
        }
        Ok(out)
    }
}
