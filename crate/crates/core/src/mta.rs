//! Mode transition algebras.
//!
//! An element of `A_{d1,-d2}` is a combination of `u ⊗ f ⊗ v` with `u` a
//! creation word of weight `d1`, `v` an annihilation word of weight `d2` and
//! `f` in `A_0 = C[x]`. Terms are stored as [`Sandwich`] keys with `f` as the
//! coefficient. The product is
//! `(u ⊗ f ⊗ v) ⋆ (u' ⊗ g ⊗ v') = u ⊗ f (v ⊛ u') g ⊗ v'`,
//! where `v ⊛ u'` is the level-0 class of `v u'` when the degrees cancel and
//! zero otherwise.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::coeffs::{rank, solve_sparse_rows, Coefficient, Rational, SolveOutcome};
use crate::error::{Error, Result};
use crate::liealg::{AlgebraKind, AlgebraSpec};
use crate::partition::{norm_coefficient, partitions, Partition};
use crate::pbw::{EnvElement, ModeWord, Pbw};
use crate::zhu::{
    add_sandwich, fmt_sandwiches, sandwich_json, zhu_basis, zhu_class, zhu_multiply, BasisLabel, Sandwich,
    SandwichTerms, ZhuElement,
};

#[derive(Clone, PartialEq, Eq)]
pub struct MtaElement {
    algebra: AlgebraSpec,
    terms: SandwichTerms,
}

impl MtaElement {
    pub fn zero(algebra: AlgebraSpec) -> Self {
        MtaElement {
            algebra,
            terms: SandwichTerms::new(),
        }
    }

    /// `coeff * (u ⊗ 1 ⊗ v)`. Panics unless `u` is pure creation and `v`
    /// pure annihilation.
    pub fn sandwich(algebra: AlgebraSpec, key: Sandwich, coeff: Coefficient) -> Self {
        assert!(
            key.creation.indices().iter().all(|&i| i < 0) && key.annihilation.indices().iter().all(|&i| i > 0),
            "malformed sandwich {key:?}"
        );
        let mut terms = SandwichTerms::new();
        add_sandwich(&mut terms, key, coeff);
        MtaElement { algebra, terms }
    }

    /// `ε_{r,s} = u_r ⊗ 1 ⊗ v_s`.
    pub fn epsilon(algebra: AlgebraSpec, r: &Partition, s: &Partition) -> Self {
        Self::sandwich(algebra, Sandwich::from_partitions(r, s), Coefficient::one())
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.algebra
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

    /// Common `(deg u, deg v)` of all terms.
    pub fn bidegree(&self) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|k| {
            (
                k.creation.creation_weight() as i32,
                -(k.annihilation.annihilation_weight() as i32),
            )
        });
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn scale(&self, s: &Coefficient) -> MtaElement {
        let mut out = MtaElement::zero(self.algebra);
        out.add_scaled(self, s);
        out
    }

    pub fn add_scaled(&mut self, other: &MtaElement, s: &Coefficient) {
        assert_eq!(self.algebra, other.algebra, "algebra mismatch");
        for (k, v) in &other.terms {
            add_sandwich(&mut self.terms, k.clone(), v * s);
        }
    }
}

impl std::ops::Add<&MtaElement> for &MtaElement {
    type Output = MtaElement;
    fn add(self, rhs: &MtaElement) -> MtaElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Coefficient::one());
        out
    }
}

impl fmt::Display for MtaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sandwiches(f, &self.algebra, &self.terms, " ⊗ ")
    }
}

impl fmt::Debug for MtaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for MtaElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MtaElement", 2)?;
        st.serialize_field("algebra", &self.algebra.kind)?;
        st.serialize_field("terms", &sandwich_json(&self.algebra, &self.terms))?;
        st.end()
    }
}

/// `v ⊛ u` for single words, as a polynomial in `x`.
pub fn contract(pbw: &Pbw, v: &ModeWord, u: &ModeWord) -> Result<Coefficient> {
    if v.degree() + u.degree() != 0 {
        return Ok(Coefficient::zero());
    }
    let mut raw = v.indices().to_vec();
    raw.extend_from_slice(u.indices());
    let prod = pbw.normal_order(&raw)?;
    Ok(zhu_class(&prod, 0)?.coeff(&Sandwich::unit()))
}

/// `α ⊛ β`, extended bilinearly; pairs whose degrees do not cancel vanish.
pub fn ostar(pbw: &Pbw, alpha: &EnvElement, beta: &EnvElement) -> Result<Coefficient> {
    let mut out = Coefficient::zero();
    for (wa, va) in alpha.terms() {
        for (wb, vb) in beta.terms() {
            let k = contract(pbw, wa, wb)?;
            if !k.is_zero() {
                out += &(&(va * vb) * &k);
            }
        }
    }
    Ok(out)
}

pub fn star(pbw: &Pbw, a: &MtaElement, b: &MtaElement) -> Result<MtaElement> {
    if a.algebra != b.algebra {
        return Err(Error::AlgebraMismatch(a.algebra.kind, b.algebra.kind));
    }
    let mut cache: HashMap<(&ModeWord, &ModeWord), Coefficient> = HashMap::new();
    let mut out = MtaElement::zero(a.algebra);
    for (ka, fa) in &a.terms {
        for (kb, fb) in &b.terms {
            let key = (&ka.annihilation, &kb.creation);
            let k = match cache.get(&key) {
                Some(k) => k.clone(),
                None => {
                    let k = contract(pbw, key.0, key.1)?;
                    cache.insert(key, k.clone());
                    k
                }
            };
            if k.is_zero() {
                continue;
            }
            let coeff = &(fa * &k) * fb;
            add_sandwich(
                &mut out.terms,
                Sandwich::new(ka.creation.clone(), kb.annihilation.clone()),
                coeff,
            );
        }
    }
    Ok(out)
}

/// `ε_{r,s}` for `|r| = d1`, `|s| = d2`, ordered by `r` then `s`, each in
/// lexicographic partition order.
pub fn mta_basis(algebra: AlgebraSpec, d1: u32, d2: u32) -> Vec<MtaElement> {
    let (rs, ss) = (partitions(d1), partitions(d2));
    rs.iter()
        .flat_map(|r| ss.iter().map(move |s| MtaElement::epsilon(algebra, r, s)))
        .collect()
}

/// `G[s][t] = v_s ⊛ u_t` over partitions of `d`.
pub fn gram_matrix(pbw: &Pbw, d: u32) -> Result<Vec<Vec<Coefficient>>> {
    let ps = partitions(d);
    ps.par_iter()
        .map_init(pbw.spawner(), |e, s| {
            ps.iter()
                .map(|t| contract(e, &s.annihilation_word(), &t.creation_word()))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IdentityOutcome {
    /// A two-sided identity with polynomial coefficients; `verified` records
    /// the direct check `e ⋆ b = b = b ⋆ e` on the whole basis.
    Identity { element: MtaElement, verified: bool },
    /// The identity equations are solvable only over `C(x)`. When `unique`
    /// the coefficient of `obstruction` is forced to be
    /// `numerator / denominator`, so no identity exists in `A_d`.
    NotPolynomial {
        obstruction: BasisLabel,
        numerator: Coefficient,
        denominator: Coefficient,
        unique: bool,
    },
    /// The identity equations are inconsistent even over `C(x)`.
    Inconsistent { residual: Coefficient },
}

impl IdentityOutcome {
    pub fn element(&self) -> Option<&MtaElement> {
        match self {
            IdentityOutcome::Identity { element, .. } => Some(element),
            _ => None,
        }
    }
}

/// Solve `e ⋆ b = b = b ⋆ e` for `e = sum y_{rs} ε_{rs}` in `A_d`.
///
/// With `G[s][t] = v_s ⊛ u_t` the conditions read `Y G = 1` and `G Y = 1`;
/// middle coefficients commute so basis elements with middle 1 suffice.
pub fn find_identity(pbw: &Pbw, d: u32) -> Result<IdentityOutcome> {
    let alg = pbw.algebra();
    let ps = partitions(d);
    let n = ps.len();
    let g = gram_matrix(pbw, d)?;
    let var = |r: usize, s: usize| r * n + s;
    let ncols = n * n;
    let mut rows: Vec<BTreeMap<usize, Coefficient>> = Vec::new();
    for r in 0..n {
        for t in 0..n {
            // sum_s y_{rs} G[s][t] = δ_{rt}
            let mut row = BTreeMap::new();
            for (s, gs) in g.iter().enumerate() {
                if !gs[t].is_zero() {
                    row.insert(var(r, s), gs[t].clone());
                }
            }
            if r == t {
                row.insert(ncols, Coefficient::one());
            }
            rows.push(row);
            // sum_s G[r][s] y_{st} = δ_{rt}
            let mut row = BTreeMap::new();
            for (s, grs) in g[r].iter().enumerate() {
                if !grs.is_zero() {
                    row.insert(var(s, t), grs.clone());
                }
            }
            if r == t {
                row.insert(ncols, Coefficient::one());
            }
            rows.push(row);
        }
    }
    let mut seen = std::collections::HashSet::new();
    rows.retain(|r| seen.insert(r.clone()));
    let label = |i: usize| BasisLabel {
        creation: ps[i / n].clone(),
        annihilation: ps[i % n].clone(),
    };
    match solve_sparse_rows(rows, ncols) {
        SolveOutcome::Polynomial { solution, .. } => {
            let mut e = MtaElement::zero(alg);
            for (i, y) in solution.iter().enumerate() {
                if !y.is_zero() {
                    e.add_scaled(&MtaElement::epsilon(alg, &ps[i / n], &ps[i % n]), y);
                }
            }
            let basis = mta_basis(alg, d, d);
            let verified = basis
                .par_iter()
                .map_init(pbw.spawner(), |eng, b| -> Result<bool> {
                    Ok(star(eng, &e, b)? == *b && star(eng, b, &e)? == *b)
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .all(|ok| ok);
            Ok(IdentityOutcome::Identity { element: e, verified })
        }
        SolveOutcome::NonPolynomial {
            solution,
            unique,
            obstruction,
        } => Ok(IdentityOutcome::NotPolynomial {
            obstruction: label(obstruction),
            numerator: solution[obstruction].numerator.clone(),
            denominator: solution[obstruction].denominator.clone(),
            unique,
        }),
        SolveOutcome::Inconsistent { residual, .. } => Ok(IdentityOutcome::Inconsistent { residual }),
    }
}

/// `ℓ · a`: normal order `ℓ u`, drop words ending in annihilation modes and
/// move zero modes into the middle.
pub fn act_left(pbw: &Pbw, l: &EnvElement, a: &MtaElement) -> Result<MtaElement> {
    let mut out = MtaElement::zero(a.algebra);
    for (k, f) in &a.terms {
        let u = EnvElement::from_canonical(a.algebra, k.creation.clone(), Coefficient::one());
        let prod = pbw.multiply(l, &u)?;
        for (w, q) in prod.terms() {
            let (cre, m, ann) = w.split();
            if !ann.is_empty() {
                continue;
            }
            add_sandwich(
                &mut out.terms,
                Sandwich::new(cre, k.annihilation.clone()),
                &q.shift(m, 0) * f,
            );
        }
    }
    Ok(out)
}

/// `a · ℓ`: normal order `v ℓ`, drop words starting with creation modes and
/// move zero modes into the middle.
pub fn act_right(pbw: &Pbw, a: &MtaElement, l: &EnvElement) -> Result<MtaElement> {
    let mut out = MtaElement::zero(a.algebra);
    for (k, f) in &a.terms {
        let v = EnvElement::from_canonical(a.algebra, k.annihilation.clone(), Coefficient::one());
        let prod = pbw.multiply(&v, l)?;
        for (w, q) in prod.terms() {
            let (cre, m, ann) = w.split();
            if !cre.is_empty() {
                continue;
            }
            add_sandwich(
                &mut out.terms,
                Sandwich::new(k.creation.clone(), ann),
                &q.shift(m, 0) * f,
            );
        }
    }
    Ok(out)
}

/// `μ_d(u ⊗ f ⊗ v) = [u f(0) v]_d`.
pub fn mu(a: &MtaElement, d: u32) -> Result<ZhuElement> {
    let mut lifted = EnvElement::zero(a.algebra);
    for (k, f) in &a.terms {
        let (l, r) = (k.creation.creation_weight(), k.annihilation.annihilation_weight());
        if l != d || r != d {
            return Err(Error::WrongBidegree {
                expected: d,
                found_left: l as i32,
                found_right: -(r as i32),
            });
        }
        for (m, q) in f.terms() {
            let word = ModeWord::join(&k.creation, m.x, &k.annihilation);
            let c = Coefficient::monomial(crate::coeffs::Monomial::new(0, m.c), q.clone());
            lifted.add_scaled(&EnvElement::from_canonical(a.algebra, word, Coefficient::one()), &c);
        }
    }
    zhu_class(&lifted, d)
}

fn require_identity(pbw: &Pbw, d: u32) -> Result<MtaElement> {
    match find_identity(pbw, d)? {
        IdentityOutcome::Identity {
            element,
            verified: true,
        } => Ok(element),
        _ => Err(Error::MissingIdentity(d)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StrongIdentityCheck {
    pub n: i32,
    pub d: u32,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitCheck {
    pub n: u32,
    pub m: u32,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrongIdentityReport {
    pub d_max: u32,
    pub n_window: u32,
    pub checks: Vec<StrongIdentityCheck>,
    pub unit_checks: Vec<UnitCheck>,
    pub ok: bool,
}

/// `J_n · I_d = I_{d-n} · J_n` for `-n_window <= n <= n_window`,
/// `max(n, 0) <= d <= d_max`, where `J_n` is the mode of index `n`; and
/// `I_n ⋆ a = a = a ⋆ I_m` on every basis element of `A_{n,-m}`,
/// `n, m <= d_max`.
pub fn verify_strong_identity(pbw: &Pbw, d_max: u32, n_window: u32) -> Result<StrongIdentityReport> {
    let alg = pbw.algebra();
    let top = d_max + n_window;
    let identities: Vec<MtaElement> = (0..=top)
        .into_par_iter()
        .map_init(pbw.spawner(), |e, d| require_identity(e, d))
        .collect::<Result<Vec<_>>>()?;

    let w = n_window as i32;
    let pairs: Vec<(i32, u32)> = (-w..=w)
        .flat_map(|n| (n.max(0) as u32..=d_max).map(move |d| (n, d)))
        .collect();
    let checks = pairs
        .par_iter()
        .map_init(pbw.spawner(), |e, &(n, d)| -> Result<StrongIdentityCheck> {
            let j = EnvElement::mode(alg, n);
            let lhs = act_left(e, &j, &identities[d as usize])?;
            let rhs = act_right(e, &identities[(d as i32 - n) as usize], &j)?;
            Ok(StrongIdentityCheck { n, d, ok: lhs == rhs })
        })
        .collect::<Result<Vec<_>>>()?;

    let degs: Vec<(u32, u32)> = (0..=d_max).flat_map(|n| (0..=d_max).map(move |m| (n, m))).collect();
    let unit_checks = degs
        .par_iter()
        .map_init(pbw.spawner(), |e, &(n, m)| -> Result<UnitCheck> {
            let mut ok = true;
            for a in mta_basis(alg, n, m) {
                ok &= star(e, &identities[n as usize], &a)? == a;
                ok &= star(e, &a, &identities[m as usize])? == a;
            }
            Ok(UnitCheck { n, m, ok })
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = checks.iter().all(|c| c.ok) && unit_checks.iter().all(|c| c.ok);
    Ok(StrongIdentityReport {
        d_max,
        n_window,
        checks,
        unit_checks,
        ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitChecks {
    /// `e = μ_d(I_d)` satisfies `e² = e`.
    pub idempotent: bool,
    /// `e` commutes with the basis of `A_d`.
    pub central: bool,
    /// `μ_d(a ⋆ b) = μ_d(a) μ_d(b)` on basis pairs.
    pub mu_multiplicative: bool,
    /// `μ_d : A_d → A_d e` with inverse read off the weight-`d` part.
    pub ideal_isomorphism: bool,
    /// `π_d : A_d (1 - e) → A_{d-1}` with inverse `y ↦ y (1 - e)`.
    pub quotient_isomorphism: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingReport {
    pub algebra: AlgebraKind,
    pub level: u32,
    pub mu_injective: bool,
    pub image_in_kernel: bool,
    pub kernel_in_image: bool,
    pub kernel_rank: usize,
    pub exact: bool,
    pub split: Option<SplitChecks>,
    pub ok: bool,
}

fn vector_over(keys: &[Sandwich], z: &ZhuElement) -> Vec<Coefficient> {
    keys.iter().map(|k| z.coeff(k)).collect()
}

/// Express `z` in the span of `gens` over `C[x]` (middle slot).
fn solve_in_span(keys: &[Sandwich], gens: &[ZhuElement], z: &ZhuElement) -> Option<Vec<Coefficient>> {
    if z.terms().keys().any(|k| !keys.contains(k)) {
        return None;
    }
    let ncols = gens.len();
    let rows = keys
        .iter()
        .map(|k| {
            let mut row: BTreeMap<usize, Coefficient> = gens
                .iter()
                .enumerate()
                .map(|(i, g)| (i, g.coeff(k)))
                .filter(|(_, v)| !v.is_zero())
                .collect();
            let b = z.coeff(k);
            if !b.is_zero() {
                row.insert(ncols, b);
            }
            row
        })
        .collect();
    match solve_sparse_rows(rows, ncols) {
        SolveOutcome::Polynomial { solution, .. } => Some(solution),
        _ => None,
    }
}

/// Exactness of `0 → A_d → A_d → A_{d-1} → 0` through `μ_d` and `π_d`, and
/// the ring splitting `A_d ≅ A_d e × A_d (1 - e)` when `A_d` has an
/// identity. Without an identity only exactness is reported.
pub fn verify_splitting(pbw: &Pbw, d: u32) -> Result<SplittingReport> {
    let alg = pbw.algebra();
    let ps = partitions(d);
    let eps: Vec<MtaElement> = mta_basis(alg, d, d);
    let images: Vec<ZhuElement> = eps.iter().map(|a| mu(a, d)).collect::<Result<_>>()?;

    let basis_d = zhu_basis(d);
    let keys_d: Vec<Sandwich> = basis_d.iter().map(|(r, s)| Sandwich::from_partitions(r, s)).collect();
    let elems_d: Vec<ZhuElement> = basis_d
        .iter()
        .map(|(r, s)| ZhuElement::basis_element(alg, d, r, s))
        .collect();
    let keys_lower: Vec<Sandwich> = if d == 0 {
        Vec::new()
    } else {
        zhu_basis(d - 1)
            .iter()
            .map(|(r, s)| Sandwich::from_partitions(r, s))
            .collect()
    };
    let project = |z: &ZhuElement| -> ZhuElement {
        if d == 0 {
            ZhuElement::zero(alg, 0)
        } else {
            z.at_level(d - 1)
        }
    };

    let image_matrix: Vec<Vec<Coefficient>> = images.iter().map(|z| vector_over(&keys_d, z)).collect();
    let mu_injective = rank(&image_matrix) == ps.len() * ps.len();
    let image_in_kernel = images.iter().all(|z| project(z).is_zero());

    // ker π_d as a nullspace over the C[x]-basis of A_d
    let pi_matrix: Vec<Vec<Coefficient>> = keys_lower
        .iter()
        .map(|k| elems_d.iter().map(|b| project(b).coeff(k)).collect())
        .collect();
    let kernel = crate::coeffs::nullspace(&pi_matrix, elems_d.len())?;
    let kernel_rank = kernel.len();
    let kernel_in_image = kernel.iter().all(|v| {
        let mut z = ZhuElement::zero(alg, d);
        for (c, b) in v.iter().zip(&elems_d) {
            z.add_scaled(b, c);
        }
        solve_in_span(&keys_d, &images, &z).is_some()
    });
    let exact = mu_injective && image_in_kernel && kernel_in_image && kernel_rank == images.len();

    let split = match find_identity(pbw, d)? {
        IdentityOutcome::Identity {
            element,
            verified: true,
        } => Some(split_checks(pbw, d, &element, &eps, &images, &keys_d, &elems_d)?),
        _ => None,
    };
    let ok = exact
        && split.as_ref().is_none_or(|s| {
            s.idempotent && s.central && s.mu_multiplicative && s.ideal_isomorphism && s.quotient_isomorphism
        });
    Ok(SplittingReport {
        algebra: alg.kind,
        level: d,
        mu_injective,
        image_in_kernel,
        kernel_in_image,
        kernel_rank,
        exact,
        split,
        ok,
    })
}

fn split_checks(
    pbw: &Pbw,
    d: u32,
    identity: &MtaElement,
    eps: &[MtaElement],
    images: &[ZhuElement],
    keys_d: &[Sandwich],
    elems_d: &[ZhuElement],
) -> Result<SplitChecks> {
    let alg = pbw.algebra();
    let e = mu(identity, d)?;
    let one = ZhuElement::one(alg, d);
    let not_e = &one - &e;
    let idempotent = zhu_multiply(pbw, &e, &e)? == e;

    let all = |items: Vec<Result<bool>>| -> Result<bool> {
        Ok(items.into_iter().collect::<Result<Vec<_>>>()?.into_iter().all(|b| b))
    };

    let central = all(elems_d
        .par_iter()
        .map_init(pbw.spawner(), |p, b| {
            Ok(zhu_multiply(p, &e, b)? == zhu_multiply(p, b, &e)?)
        })
        .collect())?;

    let pairs: Vec<(usize, usize)> = (0..eps.len())
        .flat_map(|a| (0..eps.len()).map(move |b| (a, b)))
        .collect();
    let mu_multiplicative = all(pairs
        .par_iter()
        .map_init(pbw.spawner(), |p, &(a, b)| {
            let lhs = mu(&star(p, &eps[a], &eps[b])?, d)?;
            Ok(lhs == zhu_multiply(p, &images[a], &images[b])?)
        })
        .collect())?;

    // μ_d lands in A_d e and every b e is hit
    let absorbs = all(images
        .par_iter()
        .map_init(pbw.spawner(), |p, z| Ok(zhu_multiply(p, z, &e)? == *z))
        .collect())?;
    let hits = all(elems_d
        .par_iter()
        .map_init(pbw.spawner(), |p, b| {
            let be = zhu_multiply(p, b, &e)?;
            Ok(match solve_in_span(keys_d, images, &be) {
                Some(c) => {
                    let mut back = MtaElement::zero(alg);
                    for (ci, a) in c.iter().zip(eps) {
                        back.add_scaled(a, ci);
                    }
                    mu(&back, d)? == be
                }
                None => false,
            })
        })
        .collect())?;
    let ideal_isomorphism = absorbs && hits && mu(identity, d)? == e;

    let quotient_isomorphism = if d == 0 {
        not_e.is_zero()
    } else {
        let lower: Vec<ZhuElement> = zhu_basis(d - 1)
            .iter()
            .map(|(r, s)| ZhuElement::basis_element(alg, d - 1, r, s))
            .collect();
        let lam = |p: &Pbw, y: &ZhuElement| zhu_multiply(p, &y.at_level(d), &not_e);
        let sections = all(lower
            .par_iter()
            .map_init(pbw.spawner(), |p, y| Ok(lam(p, y)?.at_level(d - 1) == *y))
            .collect())?;
        let retractions = all(elems_d
            .par_iter()
            .map_init(pbw.spawner(), |p, b| {
                let w = zhu_multiply(p, b, &not_e)?;
                Ok(lam(p, &w.at_level(d - 1))? == w)
            })
            .collect())?;
        let lower_pairs: Vec<(usize, usize)> = (0..lower.len())
            .flat_map(|a| (0..lower.len()).map(move |b| (a, b)))
            .collect();
        let multiplicative = all(lower_pairs
            .par_iter()
            .map_init(pbw.spawner(), |p, &(a, b)| {
                let prod = zhu_multiply(p, &lower[a], &lower[b])?;
                Ok(lam(p, &prod)? == zhu_multiply(p, &lam(p, &lower[a])?, &lam(p, &lower[b])?)?)
            })
            .collect())?;
        sections && retractions && multiplicative
    };

    Ok(SplitChecks {
        idempotent,
        central,
        mu_multiplicative,
        ideal_isomorphism,
        quotient_isomorphism,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixUnitReport {
    pub degree: u32,
    pub size: usize,
    /// `ε_{r',s} ⋆ ε_{r,s'} = ||r|| δ_{s,r} ε_{r',s'}` on all basis pairs.
    pub closed_form_ok: bool,
    /// `e_{rs} = ε_{rs} / ||s||` satisfy `e_{rs} e_{uv} = δ_{su} e_{rv}`.
    pub matrix_units_ok: bool,
    /// The identity found by the solver is `sum_r e_{rr}`.
    pub identity_ok: bool,
    pub ok: bool,
}

/// Certify `A_d ≅ Mat_{p(d)}(C[x])` for the Heisenberg algebra.
pub fn verify_matrix_units(pbw: &Pbw, d: u32) -> Result<MatrixUnitReport> {
    let alg = pbw.algebra();
    if alg.kind != AlgebraKind::Heisenberg {
        return Err(Error::HeisenbergOnly("matrix units"));
    }
    let ps = partitions(d);
    let inv_norm = |p: &Partition| Coefficient::constant(Rational::from(norm_coefficient(p)).recip());
    let unit = |r: &Partition, s: &Partition| MtaElement::epsilon(alg, r, s).scale(&inv_norm(s));
    let n = ps.len();
    let quads: Vec<(usize, usize, usize, usize)> = (0..n * n * n * n)
        .map(|i| (i / (n * n * n), i / (n * n) % n, i / n % n, i % n))
        .collect();
    let results = quads
        .par_iter()
        .map_init(pbw.spawner(), |p, &(a, b, c, e)| -> Result<(bool, bool)> {
            let (r1, s, r, s1) = (&ps[a], &ps[b], &ps[c], &ps[e]);
            let got = star(p, &MtaElement::epsilon(alg, r1, s), &MtaElement::epsilon(alg, r, s1))?;
            let want = if s == r {
                MtaElement::epsilon(alg, r1, s1).scale(&norm_as_coefficient(r))
            } else {
                MtaElement::zero(alg)
            };
            let got_unit = star(p, &unit(r1, s), &unit(r, s1))?;
            let want_unit = if s == r { unit(r1, s1) } else { MtaElement::zero(alg) };
            Ok((got == want, got_unit == want_unit))
        })
        .collect::<Result<Vec<_>>>()?;
    let closed_form_ok = results.iter().all(|r| r.0);
    let matrix_units_ok = results.iter().all(|r| r.1);
    let mut diag = MtaElement::zero(alg);
    for r in &ps {
        diag.add_scaled(&unit(r, r), &Coefficient::one());
    }
    let identity_ok = find_identity(pbw, d)?.element() == Some(&diag);
    Ok(MatrixUnitReport {
        degree: d,
        size: ps.len(),
        closed_form_ok,
        matrix_units_ok,
        identity_ok,
        ok: closed_form_ok && matrix_units_ok && identity_ok,
    })
}

/// The scalar `v_r ⊛ u_r` for every partition of `n`.
pub fn contraction_norms(pbw: &Pbw, n: u32) -> Result<Vec<(Partition, Coefficient)>> {
    partitions(n)
        .into_iter()
        .map(|r| {
            let k = contract(pbw, &r.annihilation_word(), &r.creation_word())?;
            Ok((r, k))
        })
        .collect()
}

/// `||r||` as a coefficient.
pub fn norm_as_coefficient(r: &Partition) -> Coefficient {
    Coefficient::constant(Rational::from(norm_coefficient(r)))
}
