//! Quasisymmetric, noncommutative and symmetric function values of fixed degree,
//! and the characteristic maps of `H_n(0)`-modules.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::combinat::{
    compositions_of, descent_class, kostka, partitions_of, standard_tableaux, Composition, Partition, Shape,
};
use crate::error::{invalid, inconsistent, Error, Limits, Result};
use crate::hecke0::{
    composition_factors, composition_multiplicities, coordinate_length_filtration, cyclic_length_filtration,
    filtered_factors, FiniteModule,
};
use crate::linalg::Field;
use crate::qtarith::{q_factorial, q_integer, BiPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QBasis {
    M,
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NBasis {
    #[serde(rename = "h")]
    H,
    #[serde(rename = "s")]
    S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SBasis {
    #[serde(rename = "m")]
    M,
    #[serde(rename = "schur")]
    Schur,
}

/// Homogeneous quasisymmetric function of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSymElement {
    pub n: usize,
    pub basis: QBasis,
    coeffs: BTreeMap<Composition, BiPoly>,
}

/// Homogeneous noncommutative symmetric function of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NSymElement {
    pub n: usize,
    pub basis: NBasis,
    coeffs: BTreeMap<Composition, BiPoly>,
}

/// Homogeneous symmetric function of degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymElement {
    pub n: usize,
    pub basis: SBasis,
    coeffs: BTreeMap<Partition, BiPoly>,
}

fn add_into<K: Ord + Clone>(map: &mut BTreeMap<K, BiPoly>, k: &K, c: &BiPoly) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(k.clone()).or_default();
    *slot = &*slot + c;
    if slot.is_zero() {
        map.remove(k);
    }
}

fn check_sizes<'a>(n: usize, keys: impl Iterator<Item = usize> + 'a) -> Result<()> {
    for s in keys {
        if s != n {
            return invalid(format!("index of size {s} in an element of degree {n}"));
        }
    }
    Ok(())
}

macro_rules! common_methods {
    ($ty:ident, $key:ty, $basis:ty) => {
        impl $ty {
            pub fn zero(n: usize, basis: $basis) -> Self {
                $ty {
                    n,
                    basis,
                    coeffs: BTreeMap::new(),
                }
            }

            pub fn from_terms(
                n: usize,
                basis: $basis,
                terms: impl IntoIterator<Item = ($key, BiPoly)>,
            ) -> Result<Self> {
                let mut coeffs = BTreeMap::new();
                for (k, c) in terms {
                    check_sizes(n, std::iter::once(k.size()))?;
                    add_into(&mut coeffs, &k, &c);
                }
                Ok($ty { n, basis, coeffs })
            }

            pub fn basis_element(basis: $basis, k: $key) -> Self {
                let n = k.size();
                let mut coeffs = BTreeMap::new();
                coeffs.insert(k, BiPoly::one());
                $ty { n, basis, coeffs }
            }

            pub fn terms(&self) -> impl Iterator<Item = (&$key, &BiPoly)> {
                self.coeffs.iter()
            }

            pub fn coeff(&self, k: &$key) -> BiPoly {
                self.coeffs.get(k).cloned().unwrap_or_default()
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.is_empty()
            }

            pub fn num_terms(&self) -> usize {
                self.coeffs.len()
            }

            pub fn map_coeffs(&self, f: impl Fn(&BiPoly) -> BiPoly) -> Self {
                let mut coeffs = BTreeMap::new();
                for (k, c) in &self.coeffs {
                    add_into(&mut coeffs, k, &f(c));
                }
                $ty {
                    n: self.n,
                    basis: self.basis,
                    coeffs,
                }
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                if self.n != other.n || self.basis != other.basis {
                    return invalid("adding elements of different degree or basis");
                }
                let mut coeffs = self.coeffs.clone();
                for (k, c) in &other.coeffs {
                    add_into(&mut coeffs, k, c);
                }
                Ok($ty {
                    n: self.n,
                    basis: self.basis,
                    coeffs,
                })
            }

            pub fn scale(&self, c: &BiPoly) -> Self {
                self.map_coeffs(|x| x * c)
            }

            pub fn to_json(&self) -> serde_json::Value {
                serde_json::json!({
                    "basis": self.basis,
                    "degree": self.n,
                    "terms": self.coeffs.iter().map(|(k, c)| serde_json::json!({
                        "index": k,
                        "coeff": c,
                    })).collect::<Vec<_>>(),
                })
            }

            pub fn from_json(v: &serde_json::Value) -> Result<Self> {
                #[derive(Deserialize)]
                struct Term {
                    index: $key,
                    coeff: BiPoly,
                }
                #[derive(Deserialize)]
                struct Raw {
                    basis: $basis,
                    degree: usize,
                    terms: Vec<Term>,
                }
                let raw: Raw = serde_json::from_value(v.clone())
                    .map_err(|e| Error::InvalidArgument(format!("malformed element: {e}")))?;
                $ty::from_terms(raw.degree, raw.basis, raw.terms.into_iter().map(|t| (t.index, t.coeff)))
            }
        }
    };
}

common_methods!(QSymElement, Composition, QBasis);
common_methods!(NSymElement, Composition, NBasis);
common_methods!(SymElement, Partition, SBasis);

fn sign(k: usize) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

impl QSymElement {
    /// `F_α = Σ_{α ≼ β} M_β`.
    pub fn to_m(&self) -> QSymElement {
        match self.basis {
            QBasis::M => self.clone(),
            QBasis::F => {
                let mut out = QSymElement::zero(self.n, QBasis::M);
                for (a, c) in &self.coeffs {
                    for b in a.refinements() {
                        add_into(&mut out.coeffs, &b, c);
                    }
                }
                out
            }
        }
    }

    /// `M_α = Σ_{α ≼ β} (-1)^{ℓ(β)-ℓ(α)} F_β`.
    pub fn to_f(&self) -> QSymElement {
        match self.basis {
            QBasis::F => self.clone(),
            QBasis::M => {
                let mut out = QSymElement::zero(self.n, QBasis::F);
                for (a, c) in &self.coeffs {
                    for b in a.refinements() {
                        add_into(&mut out.coeffs, &b, &c.scale(&sign(b.len() - a.len())));
                    }
                }
                out
            }
        }
    }

    pub fn in_basis(&self, basis: QBasis) -> QSymElement {
        match basis {
            QBasis::M => self.to_m(),
            QBasis::F => self.to_f(),
        }
    }

    /// Whether the `M`-coefficients are constant on rearrangement classes.
    pub fn is_symmetric(&self) -> bool {
        let m = self.to_m();
        let mut class: BTreeMap<Partition, BiPoly> = BTreeMap::new();
        let limits = Limits {
            max_n: self.n.max(1),
            ..Limits::default()
        };
        let Ok(comps) = compositions_of(self.n.max(1), &limits) else {
            return false;
        };
        for a in comps {
            let c = m.coeff(&a);
            match class.get(&a.sorted_partition()) {
                None => {
                    class.insert(a.sorted_partition(), c);
                }
                Some(prev) if *prev != c => return false,
                Some(_) => {}
            }
        }
        true
    }

    /// The symmetric function with the same `M`-expansion, in the `m` basis.
    pub fn to_sym(&self) -> Result<SymElement> {
        if !self.is_symmetric() {
            return Err(Error::InvalidArgument("quasisymmetric function is not symmetric".into()));
        }
        let m = self.to_m();
        let mut out = SymElement::zero(self.n, SBasis::M);
        for lam in partitions_of(self.n) {
            add_into(&mut out.coeffs, &lam, &m.coeff(&lam.as_composition()));
        }
        Ok(out)
    }

    /// Specializes `q ↦ 1`.
    pub fn at_q_one(&self) -> QSymElement {
        self.map_coeffs(|c| c.subs_q(&BigInt::one()))
    }

    /// Specializes `t ↦ 1`.
    pub fn at_t_one(&self) -> QSymElement {
        self.map_coeffs(|c| c.subs_t(&BigInt::one()))
    }
}

impl NSymElement {
    /// `s_α = Σ_{β ≼ α} (-1)^{ℓ(α)-ℓ(β)} h_β`.
    pub fn to_h(&self) -> NSymElement {
        match self.basis {
            NBasis::H => self.clone(),
            NBasis::S => {
                let mut out = NSymElement::zero(self.n, NBasis::H);
                for (a, c) in &self.coeffs {
                    for b in a.coarsenings() {
                        add_into(&mut out.coeffs, &b, &c.scale(&sign(a.len() - b.len())));
                    }
                }
                out
            }
        }
    }

    /// `h_α = Σ_{β ≼ α} s_β`.
    pub fn to_s(&self) -> NSymElement {
        match self.basis {
            NBasis::S => self.clone(),
            NBasis::H => {
                let mut out = NSymElement::zero(self.n, NBasis::S);
                for (a, c) in &self.coeffs {
                    for b in a.coarsenings() {
                        add_into(&mut out.coeffs, &b, c);
                    }
                }
                out
            }
        }
    }

    pub fn in_basis(&self, basis: NBasis) -> NSymElement {
        match basis {
            NBasis::H => self.to_h(),
            NBasis::S => self.to_s(),
        }
    }

    /// Image in `QSym` (`F` basis): `s_α ↦` the ribbon Schur function.
    pub fn commutative_image(&self, limits: &Limits) -> Result<QSymElement> {
        let mut out = QSymElement::zero(self.n, QBasis::F);
        for (a, c) in &self.to_s().coeffs {
            let r = schur_in_f(&Shape::Ribbon(a.clone()), limits)?;
            for (b, d) in &r.coeffs {
                add_into(&mut out.coeffs, b, &(c * d));
            }
        }
        Ok(out)
    }
}

/// `⟨f, g⟩` from `⟨M_α, h_β⟩ = δ_{αβ}`.
pub fn pairing(f: &QSymElement, g: &NSymElement) -> Result<BiPoly> {
    if f.n != g.n {
        return invalid("pairing elements of different degree");
    }
    let (m, h) = (f.to_m(), g.to_h());
    Ok(m.coeffs
        .iter()
        .map(|(a, c)| c * &h.coeff(a))
        .sum())
}

impl SymElement {
    /// `s_λ = Σ_μ K_{λμ} m_μ`.
    pub fn to_m(&self) -> Result<SymElement> {
        match self.basis {
            SBasis::M => Ok(self.clone()),
            SBasis::Schur => {
                let mut out = SymElement::zero(self.n, SBasis::M);
                for (lam, c) in &self.coeffs {
                    for mu in partitions_of(self.n) {
                        let k = kostka(lam, mu.parts())?;
                        if k > 0 {
                            add_into(&mut out.coeffs, &mu, &c.scale(&BigInt::from(k)));
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// Back-substitution through the unitriangular Kostka matrix, largest `λ` first.
    pub fn to_schur(&self) -> Result<SymElement> {
        match self.basis {
            SBasis::Schur => Ok(self.clone()),
            SBasis::M => {
                let mut rest = self.coeffs.clone();
                let mut out = SymElement::zero(self.n, SBasis::Schur);
                for lam in partitions_of(self.n) {
                    let Some(c) = rest.get(&lam).cloned() else {
                        continue;
                    };
                    for mu in partitions_of(self.n) {
                        let k = kostka(&lam, mu.parts())?;
                        if k > 0 {
                            add_into(&mut rest, &mu, &c.scale(&-BigInt::from(k)));
                        }
                    }
                    add_into(&mut out.coeffs, &lam, &c);
                }
                if !rest.is_empty() {
                    return inconsistent("Kostka back-substitution left a remainder");
                }
                Ok(out)
            }
        }
    }

    pub fn in_basis(&self, basis: SBasis) -> Result<SymElement> {
        match basis {
            SBasis::M => self.to_m(),
            SBasis::Schur => self.to_schur(),
        }
    }

    /// As a quasisymmetric function in the `M` basis.
    pub fn to_qsym(&self) -> Result<QSymElement> {
        let m = self.to_m()?;
        let limits = Limits {
            max_n: self.n.max(1),
            ..Limits::default()
        };
        let mut out = QSymElement::zero(self.n, QBasis::M);
        for a in compositions_of(self.n.max(1), &limits)? {
            add_into(&mut out.coeffs, &a, &m.coeff(&a.sorted_partition()));
        }
        Ok(out)
    }
}

impl fmt::Display for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.basis {
            QBasis::M => "M",
            QBasis::F => "F",
        };
        write_terms(f, label, self.coeffs.iter().map(|(k, c)| (k.to_string(), c)))
    }
}

impl fmt::Display for NSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.basis {
            NBasis::H => "h",
            NBasis::S => "s",
        };
        write_terms(f, label, self.coeffs.iter().map(|(k, c)| (k.to_string(), c)))
    }
}

impl fmt::Display for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.basis {
            SBasis::M => "m",
            SBasis::Schur => "s",
        };
        write_terms(f, label, self.coeffs.iter().map(|(k, c)| (k.to_string(), c)))
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    label: &str,
    terms: impl Iterator<Item = (String, &'a BiPoly)>,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        if *c == BiPoly::one() {
            write!(f, "{label}{k}")?;
        } else {
            write!(f, "({c}){label}{k}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// `Σ_{τ ∈ SYT(shape)} F_{D(τ)}`.
pub fn schur_in_f(shape: &Shape, limits: &Limits) -> Result<QSymElement> {
    let n = shape.size();
    let mut out = QSymElement::zero(n, QBasis::F);
    for t in standard_tableaux(shape, limits)? {
        add_into(&mut out.coeffs, &t.descent_composition(), &BiPoly::one());
    }
    Ok(out)
}

/// Which characteristic to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Plain,
    Q,
    T,
    Qt,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Mode::Plain),
            "q" => Ok(Mode::Q),
            "t" => Ok(Mode::T),
            "qt" => Ok(Mode::Qt),
            _ => invalid(format!("unknown mode {s:?}")),
        }
    }
}

/// `Ch`, `Ch_q`, `Ch_t` or `Ch_{q,t}` in the `F` basis.
pub fn characteristic<F: Field>(m: &FiniteModule<F>, mode: Mode) -> Result<QSymElement> {
    characteristic_with_offset(m, mode, 0)
}

/// As [`characteristic`], with every `q`-exponent raised by `offset`.
pub fn characteristic_with_offset<F: Field>(m: &FiniteModule<F>, mode: Mode, offset: u64) -> Result<QSymElement> {
    let needs_q = matches!(mode, Mode::Q | Mode::Qt);
    let needs_t = matches!(mode, Mode::T | Mode::Qt);
    if needs_t && m.degree.is_none() {
        return Err(Error::ModeUnavailable("module has no degree grading".into()));
    }
    let levels = if needs_q {
        if m.cyclic.is_some() {
            Some(cyclic_length_filtration(m)?)
        } else if m.length.is_some() {
            Some(coordinate_length_filtration(m)?)
        } else {
            return Err(Error::ModeUnavailable(
                "module has neither a cyclic vector nor a length grading".into(),
            ));
        }
    } else {
        None
    };
    let factors = match (levels, needs_t) {
        (Some(levels), _) => filtered_factors(m, &levels, needs_t, offset)?,
        (None, true) => composition_factors(m)?,
        (None, false) => composition_multiplicities(m)?
            .into_iter()
            .map(|(a, c)| (a, BiPoly::constant(c)))
            .collect(),
    };
    QSymElement::from_terms(m.n, QBasis::F, factors)
}

/// `ch_t = Σ t^{d_i} s_{α^{(i)}}` for a projective decomposition.
pub fn noncommutative_characteristic(n: usize, decomposition: &[(Composition, u64)]) -> Result<NSymElement> {
    NSymElement::from_terms(
        n,
        NBasis::S,
        decomposition
            .iter()
            .map(|(a, d)| (a.clone(), BiPoly::t_pow(*d))),
    )
}

/// `Σ_{w ∈ S_n} t^{maj w} q^{inv w} F_{D(w⁻¹)}`.
pub fn bigraded_closed_form(n: usize, limits: &Limits) -> Result<QSymElement> {
    let mut out = QSymElement::zero(n, QBasis::F);
    for w in crate::combinat::permutations(n, limits)? {
        add_into(
            &mut out.coeffs,
            &w.inverse().descent_composition(),
            &BiPoly::monomial(w.inv() as u64, w.maj() as u64, 1),
        );
    }
    Ok(out)
}

/// `H̃_μ(x; t)` in the Schur basis, for `μ = 1^n` or a hook.
pub fn hall_littlewood(mu: &Partition, limits: &Limits) -> Result<SymElement> {
    let n = mu.size();
    if mu.parts().iter().all(|&p| p == 1) {
        let mut by_tableaux = SymElement::zero(n, SBasis::Schur);
        let mut by_hooks = SymElement::zero(n, SBasis::Schur);
        for lam in partitions_of(n) {
            let mut c = BiPoly::zero();
            for t in standard_tableaux(&Shape::Straight(lam.clone()), limits)? {
                c = &c + &BiPoly::t_pow(t.maj() as u64);
            }
            add_into(&mut by_tableaux.coeffs, &lam, &c);
            add_into(&mut by_hooks.coeffs, &lam, &q_hook_length(&lam)?);
        }
        if by_tableaux != by_hooks {
            return inconsistent("maj generating function differs from the hook-length formula");
        }
        return Ok(by_tableaux);
    }
    let Some(hook) = mu.hook_composition() else {
        return Err(Error::Unsupported(format!("{mu} is not a hook")));
    };
    let mut nsym = NSymElement::zero(n, NBasis::S);
    for a in hook.coarsenings() {
        add_into(&mut nsym.coeffs, &a, &BiPoly::t_pow(a.maj() as u64));
    }
    nsym.commutative_image(limits)?.to_sym()?.to_schur()
}

/// `t^{n(λ)} [n]!_t / ∏_u [h_u]_t`.
pub fn q_hook_length(lam: &Partition) -> Result<BiPoly> {
    let mut den = BiPoly::one();
    for row in lam.hook_lengths() {
        for h in row {
            den = &den * &q_integer(h as u64);
        }
    }
    Ok(q_factorial(lam.size() as u64)
        .div_exact(&den)?
        .swap_variables()
        .shift(0, lam.n_lambda() as u64))
}

/// `Σ_α c_α F_α` where `c_α` counts `w ∈ S_n` with `D(w) = D(α)` weighted by `weight(w)`.
pub fn descent_class_sum(n: usize, limits: &Limits, weight: impl Fn(&crate::combinat::Permutation) -> BiPoly) -> Result<QSymElement> {
    let mut out = QSymElement::zero(n, QBasis::F);
    for a in compositions_of(n, limits)? {
        for w in descent_class(&a, limits)? {
            add_into(&mut out.coeffs, &a, &weight(&w));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::permutations;
    use crate::hecke0::{projective_module, regular_module, simple_module};
    use crate::qtarith::q_multinomial;
    use proptest::prelude::*;

    fn c(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn schur_examples() {
        assert_eq!(
            schur_in_f(&Shape::Straight(p(&[3])), &l()).unwrap(),
            QSymElement::basis_element(QBasis::F, c(&[3]))
        );
        let s21 = schur_in_f(&Shape::Straight(p(&[2, 1])), &l()).unwrap();
        let expected = QSymElement::from_terms(3, QBasis::F, [(c(&[1, 2]), BiPoly::one()), (c(&[2, 1]), BiPoly::one())]).unwrap();
        assert_eq!(s21, expected);
        let r = schur_in_f(&Shape::Ribbon(c(&[1, 2, 1])), &l()).unwrap();
        let count: BigInt = r.terms().map(|(_, v)| v.eval(&BigInt::one(), &BigInt::one())).sum();
        assert_eq!(count, BigInt::from(5));
    }

    #[test]
    fn ribbon_schur_is_descent_class_sum() {
        for n in 1..=5 {
            for a in compositions_of(n, &l()).unwrap() {
                let r = schur_in_f(&Shape::Ribbon(a.clone()), &l()).unwrap();
                let mut direct = QSymElement::zero(n, QBasis::F);
                for w in descent_class(&a, &l()).unwrap() {
                    add_into(&mut direct.coeffs, &w.inverse().descent_composition(), &BiPoly::one());
                }
                assert_eq!(r, direct, "{a}");
                assert!(r.is_symmetric());
            }
        }
    }

    #[test]
    fn duality() {
        for n in 1..=6 {
            let comps = compositions_of(n, &l()).unwrap();
            for a in &comps {
                let f = QSymElement::basis_element(QBasis::F, a.clone());
                for b in &comps {
                    let s = NSymElement::basis_element(NBasis::S, b.clone());
                    let v = pairing(&f, &s).unwrap();
                    assert_eq!(v, if a == b { BiPoly::one() } else { BiPoly::zero() });
                }
            }
        }
    }

    #[test]
    fn characteristic_examples() {
        for a in compositions_of(4, &l()).unwrap() {
            let s = simple_module(&a).unwrap();
            assert_eq!(characteristic(&s, Mode::Plain).unwrap(), QSymElement::basis_element(QBasis::F, a.clone()));
            let pm = projective_module(&a, &l()).unwrap();
            assert_eq!(
                characteristic(&pm, Mode::Plain).unwrap(),
                schur_in_f(&Shape::Ribbon(a.clone()), &l()).unwrap()
            );
        }
        let reg = regular_module(3, &l()).unwrap();
        let chq = characteristic(&reg, Mode::Q).unwrap();
        let mut direct = QSymElement::zero(3, QBasis::F);
        for w in permutations(3, &l()).unwrap() {
            add_into(&mut direct.coeffs, &w.inverse().descent_composition(), &BiPoly::q_pow(w.inv() as u64));
        }
        assert_eq!(chq, direct);
        assert!(matches!(characteristic(&reg, Mode::T), Err(Error::ModeUnavailable(_))));
    }

    #[test]
    fn symmetry_without_projectivity() {
        let m = simple_module(&c(&[1, 2])).unwrap().direct_sum(&simple_module(&c(&[2, 1])).unwrap()).unwrap();
        let ch = characteristic(&m, Mode::Plain).unwrap();
        assert!(ch.is_symmetric());
        let s = ch.to_sym().unwrap().to_schur().unwrap();
        assert_eq!(s, SymElement::basis_element(SBasis::Schur, p(&[2, 1])));
        assert!(!QSymElement::basis_element(QBasis::F, c(&[1, 2])).is_symmetric());
    }

    #[test]
    fn hall_littlewood_examples() {
        assert_eq!(hall_littlewood(&p(&[1]), &l()).unwrap(), SymElement::basis_element(SBasis::Schur, p(&[1])));
        let h = hall_littlewood(&p(&[1, 1, 1]), &l()).unwrap();
        let expected = SymElement::from_terms(
            3,
            SBasis::Schur,
            [
                (p(&[3]), BiPoly::one()),
                (p(&[2, 1]), &BiPoly::t() + &BiPoly::t_pow(2)),
                (p(&[1, 1, 1]), BiPoly::t_pow(3)),
            ],
        )
        .unwrap();
        assert_eq!(h, expected);
        let hook = hall_littlewood(&p(&[2, 1]), &l()).unwrap();
        // s_3 + t·(ribbon (1,2)) and the ribbon (1,2) equals s_{21}
        let expected = SymElement::from_terms(3, SBasis::Schur, [(p(&[3]), BiPoly::one()), (p(&[2, 1]), BiPoly::t())]).unwrap();
        assert_eq!(hook, expected);
        assert!(matches!(hall_littlewood(&p(&[2, 2]), &l()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn hall_littlewood_m_expansion() {
        for n in 1..=5 {
            let h = hall_littlewood(&p(&vec![1; n]), &l()).unwrap().to_m().unwrap();
            for lam in partitions_of(n) {
                let expected = q_multinomial(n, &lam.as_composition()).unwrap().swap_variables();
                assert_eq!(h.coeff(&lam), expected);
            }
        }
    }

    #[test]
    fn noncommutative_image() {
        let comps = compositions_of(3, &l()).unwrap();
        let dec: Vec<(Composition, u64)> = comps.iter().map(|a| (a.clone(), a.maj() as u64)).collect();
        let ch = noncommutative_characteristic(3, &dec).unwrap();
        assert_eq!(ch.num_terms(), 4);
        let single = noncommutative_characteristic(3, &[(c(&[1, 2]), 0)]).unwrap();
        assert_eq!(single, NSymElement::basis_element(NBasis::S, c(&[1, 2])));
        let image = ch.commutative_image(&l()).unwrap();
        let hl = hall_littlewood(&p(&[1, 1, 1]), &l()).unwrap().to_qsym().unwrap().to_f();
        assert_eq!(image, hl);
    }

    #[test]
    fn json_round_trip() {
        let e = bigraded_closed_form(3, &l()).unwrap();
        let v = e.to_json();
        assert_eq!(v["basis"], "F");
        assert_eq!(QSymElement::from_json(&v).unwrap(), e);
        let s = hall_littlewood(&p(&[1, 1, 1]), &l()).unwrap();
        assert_eq!(SymElement::from_json(&s.to_json()).unwrap(), s);
        let ns = NSymElement::basis_element(NBasis::S, c(&[2, 1]));
        assert_eq!(ns.to_json()["basis"], "s");
        assert_eq!(NSymElement::from_json(&ns.to_json()).unwrap(), ns);
    }

    fn arb_element(n: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-5i64..=5, 1 << (n - 1))
    }

    proptest! {
        #[test]
        fn basis_changes_round_trip(coeffs in arb_element(4)) {
            let comps = compositions_of(4, &l()).unwrap();
            let terms: Vec<(Composition, BiPoly)> = comps.iter().cloned().zip(coeffs.iter().map(|&x| BiPoly::constant(x))).collect();
            let f = QSymElement::from_terms(4, QBasis::F, terms.clone()).unwrap();
            prop_assert_eq!(f.to_m().to_f(), f);
            let s = NSymElement::from_terms(4, NBasis::S, terms).unwrap();
            prop_assert_eq!(s.to_h().to_s(), s);
        }

        #[test]
        fn schur_m_round_trip(coeffs in proptest::collection::vec(-5i64..=5, 7)) {
            let parts = partitions_of(5);
            let s = SymElement::from_terms(5, SBasis::Schur, parts.into_iter().zip(coeffs.iter().map(|&x| BiPoly::constant(x)))).unwrap();
            prop_assert_eq!(s.to_m().unwrap().to_schur().unwrap(), s);
        }
    }
}
