//! Verification suites: each recomputes a decomposition by independent routes and
//! reports every mismatch.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::charmap::{bigraded_closed_form, characteristic, hall_littlewood, q_hook_length, Mode, QBasis, QSymElement, SBasis, SymElement};
use crate::coinvariant::{
    check_block_vanishing, coinvariant_module, demazure_preserves_ideal, springer_module, AtomBasisModule, QuotientRing,
};
use crate::combinat::{compositions_of, partitions_of, Composition, Partition, Shape};
use crate::error::{Error, Limits, Result};
use crate::flagvar::{flag_characteristic, hecke_action_flags, flag_factor_table, tits_chain_complex};
use crate::hecke0::{
    composition_multiplicities, module_isomorphic, norton_summand, projective_module, random_extension_module,
    regular_module, socle_series_multiplicities, verify_intertwiner,
};
use crate::linalg::{Matrix, Rationals, Subspace};
use crate::polyring::MultiPoly;
use crate::qtarith::{q_factorial, q_multinomial, ribbon_number_q, ribbon_number_t_inverse_maj, BiPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    DemazureRelations,
    Norton,
    CoinvariantRegular,
    Foata,
    FlagMultiplicity,
    HookSpringer,
    ChainComplex,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::DemazureRelations,
        Suite::Norton,
        Suite::CoinvariantRegular,
        Suite::Foata,
        Suite::FlagMultiplicity,
        Suite::HookSpringer,
        Suite::ChainComplex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DemazureRelations => "demazure-relations",
            Suite::Norton => "norton",
            Suite::CoinvariantRegular => "coinvariant-regular",
            Suite::Foata => "foata",
            Suite::FlagMultiplicity => "flag-multiplicity",
            Suite::HookSpringer => "hook-springer",
            Suite::ChainComplex => "chain-complex",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub q: Option<u64>,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<Value>,
    pub details: Vec<Value>,
}

impl SuiteReport {
    fn new(suite: Suite, n: usize, q: Option<u64>) -> Self {
        SuiteReport {
            suite,
            n,
            q,
            passed: true,
            checks: 0,
            failures: Vec::new(),
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, failure: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.passed = false;
            self.failures.push(failure());
        }
    }

    /// Records a consistency error as a failure; other errors propagate.
    fn absorb<T>(&mut self, what: &str, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::Consistency(msg)) => {
                self.check(false, || json!({"check": what, "error": msg}));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }
}

/// Runs a suite. `n` is the size, `q` the field size for the flag suites.
pub fn run_suite(suite: Suite, n: usize, q: u64, seed: u64, limits: &Limits) -> Result<SuiteReport> {
    limits.check_n(n)?;
    match suite {
        Suite::DemazureRelations => demazure_relations(n, 200, seed),
        Suite::Norton => norton(n, seed, limits),
        Suite::CoinvariantRegular => coinvariant_regular(n, seed, limits),
        Suite::Foata => foata(n, limits),
        Suite::FlagMultiplicity => flag_multiplicity(n, q, limits),
        Suite::HookSpringer => hook_springer(n, seed, limits),
        Suite::ChainComplex => chain_complex(n, q, limits),
    }
}

/// A random polynomial with at most 6 terms, total degree at most `max_degree`.
pub fn random_polynomial(n: usize, max_degree: u32, rng: &mut ChaCha8Rng) -> MultiPoly {
    let mut p = MultiPoly::zero(n);
    for _ in 0..rng.random_range(1..=6) {
        let mut e = vec![0u32; n];
        let deg = rng.random_range(0..=max_degree);
        for _ in 0..deg {
            e[rng.random_range(0..n)] += 1;
        }
        p.add_term(e, &BigInt::from(rng.random_range(-9i64..=9)));
    }
    p
}

/// `π_i² = π_i`, braid and commutation relations, and the same for `π̄_i`, on random polynomials.
pub fn demazure_relations(n: usize, count: usize, seed: u64) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::DemazureRelations, n, None);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let f = random_polynomial(n, 6, &mut rng);
        for i in 1..n {
            let pi = f.demazure(i);
            r.check(pi.demazure(i) == pi, || json!({"relation": "pi_i^2 = pi_i", "i": i, "f": f}));
            let bar = f.demazure_bar(i);
            r.check(bar.demazure_bar(i) == -&bar, || json!({"relation": "pibar_i^2 = -pibar_i", "i": i, "f": f}));
            if i + 1 < n {
                let lhs = f.demazure(i + 1).demazure(i).demazure(i + 1);
                let rhs = f.demazure(i).demazure(i + 1).demazure(i);
                r.check(lhs == rhs, || json!({"relation": "braid", "i": i, "f": f}));
                let lhs = f.demazure_bar(i + 1).demazure_bar(i).demazure_bar(i + 1);
                let rhs = f.demazure_bar(i).demazure_bar(i + 1).demazure_bar(i);
                r.check(lhs == rhs, || json!({"relation": "braid (bar)", "i": i, "f": f}));
            }
            for j in i + 2..n {
                let lhs = f.demazure(j).demazure(i);
                let rhs = f.demazure(i).demazure(j);
                r.check(lhs == rhs, || json!({"relation": "commutation", "i": i, "j": j, "f": f}));
            }
        }
    }
    r.details.push(json!({"polynomials": count, "max_degree": 6, "seed": seed}));
    Ok(r)
}

/// Norton summands of the regular module: dimensions, directness, and witnesses to `P_α`.
pub fn norton(n: usize, seed: u64, limits: &Limits) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Norton, n, None);
    let size: usize = (1..=n).product();
    let mut total = Subspace::zero(&Rationals, size);
    let mut dim_sum = 0;
    for a in compositions_of(n, limits)? {
        let s = norton_summand(&a, limits)?;
        let p = projective_module(&a, limits)?;
        r.check(s.module.dim == p.dim, || json!({"alpha": a, "dimension": s.module.dim, "r_alpha": p.dim}));
        let x = module_isomorphic(&p, &s.module, seed);
        let ok = x.as_ref().is_some_and(|x| verify_intertwiner(&p, &s.module, x));
        r.check(ok, || json!({"alpha": a, "error": "no isomorphism to the ribbon-tableau module"}));
        dim_sum += s.module.dim;
        total = total.sum(&s.span);
        r.details.push(json!({"alpha": a, "dimension": s.module.dim, "witness": x.as_ref().map(crate::hecke0::matrix_checksum)}));
    }
    r.check(dim_sum == size, || json!({"error": "dimensions do not sum to n!", "sum": dim_sum}));
    r.check(total.dim() == size, || json!({"error": "summands are not independent", "rank": total.dim()}));
    Ok(r)
}

/// Block-diagonal matrix from square blocks.
fn block_diagonal(blocks: &[Matrix<BigRational>]) -> Matrix<BigRational> {
    let f = Rationals;
    let d: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut m = Matrix::zeros(&f, d, d);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.nrows() {
            for j in 0..b.ncols() {
                m.set(off + i, off + j, b.get(i, j).clone());
            }
        }
        off += b.nrows();
    }
    m
}

/// An explicit isomorphism from the regular module to the coinvariant module, assembled from
/// Norton witnesses `P_α → H e_α` and block witnesses `P_α → block_α`.
pub fn regular_to_coinvariant(m: &AtomBasisModule, seed: u64, limits: &Limits) -> Result<Option<Matrix<BigRational>>> {
    let f = Rationals;
    let n = m.n;
    let size: usize = (1..=n).product();
    let (_, block_witnesses) = m.decomposition(seed)?;
    let mut to_coinv = Vec::new();
    let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(size);
    for (blk, w) in m.blocks.iter().zip(block_witnesses) {
        let Some(w) = w else { return Ok(None) };
        to_coinv.push(w);
        let s = norton_summand(&blk.alpha, limits)?;
        let p = projective_module(&blk.alpha, limits)?;
        let Some(x) = module_isomorphic(&p, &s.module, seed) else {
            return Ok(None);
        };
        // regular coordinates of the image of each basis vector of P_α
        for j in 0..x.ncols() {
            let coords = x.column(j);
            cols.push(crate::linalg::combine(&f, s.span.basis(), &coords, size));
        }
    }
    let y = Matrix::from_columns(&cols, size);
    let Some(yinv) = y.inverse(&f) else { return Ok(None) };
    Ok(Some(block_diagonal(&to_coinv).mul(&f, &yinv)))
}

/// The coinvariant algebra: dimension, Hilbert series, atom blocks `≅ P_α`,
/// an explicit isomorphism with the regular module, and its characteristics.
pub fn coinvariant_regular(n: usize, seed: u64, limits: &Limits) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::CoinvariantRegular, n, None);
    if n > 5 {
        return Err(Error::SizeLimit {
            what: "n for coinvariant-regular",
            value: n as u64,
            cap: 5,
        });
    }
    let ring = QuotientRing::coinvariant(n)?;
    let dim = ring.dimension()?;
    let size: usize = (1..=n).product();
    r.check(dim == size, || json!({"error": "quotient dimension", "dimension": dim}));
    let hilb = ring.hilbert_series()?;
    let expected = q_factorial(n as u64).swap_variables();
    r.check(hilb == expected, || json!({"error": "Hilbert series", "found": hilb, "expected": expected}));
    if let Some(k) = r.absorb("block vanishing", check_block_vanishing(n))? {
        r.details.push(json!({"vanishing_checks": k}));
    }
    let Some(m) = r.absorb("atom module", coinvariant_module(n))? else {
        return Ok(r);
    };
    let (reports, witnesses) = m.decomposition(seed)?;
    for ((rep, w), b) in reports.iter().zip(&witnesses).zip(0..) {
        let p = projective_module(&rep.alpha, limits)?;
        let block = m.block_module(b)?;
        let ok = w.as_ref().is_some_and(|x| verify_intertwiner(&p, &block, x));
        r.check(ok, || json!({"alpha": rep.alpha, "error": "block is not isomorphic to P_alpha"}));
        r.check(rep.dimension == p.dim, || json!({"alpha": rep.alpha, "error": "block dimension"}));
        r.details.push(serde_json::to_value(rep).unwrap());
    }
    let reg = regular_module(n, limits)?;
    let iso = regular_to_coinvariant(&m, seed, limits)?;
    let ok = iso.as_ref().is_some_and(|x| verify_intertwiner(&reg, &m.module, x));
    r.check(ok, || json!({"error": "no isomorphism with the regular module"}));
    if let Some(x) = &iso {
        r.details.push(json!({"regular_isomorphism_checksum": crate::hecke0::matrix_checksum(x)}));
    }
    if let Some(ch) = r.absorb("bigraded characteristic", m.bigraded_characteristic())? {
        let closed = bigraded_closed_form(n, limits)?;
        r.check(ch == closed, || json!({"error": "Ch_qt differs from the closed form", "found": ch.to_json()}));
        for v in specialization_checks(n, &ch, limits)? {
            r.check(false, || v);
        }
        r.checks += 3;
    }
    Ok(r)
}

/// The `q → 1` image of `Ch_{q,t}` in the `M` basis has coefficients `[n; α]_t`, and its Schur
/// expansion equals both the hook-length formula and `H̃_{1^n}(x; t)`. Returns the failures.
pub fn specialization_checks(n: usize, ch: &QSymElement, limits: &Limits) -> Result<Vec<Value>> {
    let mut failures = Vec::new();
    let cht = ch.at_q_one();
    let m = cht.to_m();
    for a in compositions_of(n, limits)? {
        let expected = q_multinomial(n, &a)?.swap_variables();
        if m.coeff(&a) != expected {
            failures.push(json!({"error": "M coefficient", "alpha": a, "found": m.coeff(&a), "expected": expected}));
        }
    }
    let schur = cht.to_sym()?.to_schur()?;
    let hooks = SymElement::from_terms(
        n,
        SBasis::Schur,
        partitions_of(n)
            .into_iter()
            .map(|l| q_hook_length(&l).map(|c| (l, c)))
            .collect::<Result<Vec<_>>>()?,
    )?;
    if schur != hooks {
        failures.push(json!({"error": "Schur expansion differs from the hook-length formula", "found": schur.to_json()}));
    }
    let hl = hall_littlewood(&Partition::new(vec![1; n])?, limits)?;
    if schur != hl {
        failures.push(json!({"error": "Schur expansion differs from H~_(1^n)", "found": schur.to_json()}));
    }
    Ok(failures)
}

/// Ribbon numbers by three routes, and `r_α(q)` at `q = t` against the inverse major index.
pub fn foata(n: usize, limits: &Limits) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::Foata, n, None);
    let mut total = BiPoly::zero();
    for a in compositions_of(n, limits)? {
        let Some(rq) = r.absorb("ribbon number", ribbon_number_q(&a, limits))? else {
            continue;
        };
        let imaj = ribbon_number_t_inverse_maj(&a, limits)?;
        let swapped = rq.swap_variables();
        r.check(swapped == imaj, || json!({"alpha": a, "r_alpha_q": rq, "inverse_maj": imaj}));
        total = &total + &rq;
    }
    let fact = q_factorial(n as u64);
    r.check(total == fact, || json!({"error": "sum of r_alpha(q) is not [n]!_q"}));
    Ok(r)
}

/// Factor multiplicities of the flag module and its characteristic.
pub fn flag_multiplicity(n: usize, q: u64, limits: &Limits) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::FlagMultiplicity, n, Some(q));
    let Some(m) = r.absorb("flag module", hecke_action_flags(n, q, limits))? else {
        return Ok(r);
    };
    r.check(true, || Value::Null);
    if let Some(rows) = r.absorb("factor table", flag_factor_table(&m, limits))? {
        for row in rows {
            r.checks += 2;
            r.details.push(serde_json::to_value(row).unwrap());
        }
    }
    if r.absorb("flag characteristic", flag_characteristic(n, q, limits))?.is_some() {
        r.checks += 1;
    }
    Ok(r)
}

/// Hooks: ideal preservation, `R_μ ≅ ⊕_{α ≼ μ} P_α` and its characteristics; non-hooks: a witness.
pub fn hook_springer(n: usize, seed: u64, limits: &Limits) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::HookSpringer, n, None);
    for mu in partitions_of(n) {
        let rep = demazure_preserves_ideal(&mu)?;
        if mu.is_hook() {
            r.check(rep.preserved, || json!({"mu": mu, "error": "hook ideal not preserved", "witness": rep.witness}));
            let Some(m) = r.absorb("springer module", springer_module(&mu))? else {
                continue;
            };
            let hook = mu.hook_composition().unwrap();
            let expected: Vec<Composition> = hook.coarsenings();
            let found: Vec<Composition> = m.blocks.iter().map(|b| b.alpha.clone()).collect();
            r.check(found == expected, || json!({"mu": mu, "error": "blocks", "found": found}));
            let (reports, witnesses) = m.decomposition(seed)?;
            for ((rep, w), b) in reports.iter().zip(&witnesses).zip(0..) {
                let p = projective_module(&rep.alpha, limits)?;
                let ok = w.as_ref().is_some_and(|x| verify_intertwiner(&p, &m.block_module(b).unwrap(), x));
                r.check(ok, || json!({"mu": mu, "alpha": rep.alpha, "error": "no witness"}));
            }
            let cht = characteristic(&m.module, Mode::T)?;
            let mut ribbon_sum = QSymElement::zero(n, QBasis::F);
            for a in &expected {
                let s = crate::charmap::schur_in_f(&Shape::Ribbon(a.clone()), limits)?;
                ribbon_sum = ribbon_sum.add(&s.scale(&BiPoly::t_pow(a.maj() as u64)))?;
            }
            r.check(cht == ribbon_sum, || json!({"mu": mu, "error": "Ch_t differs from the ribbon sum", "found": cht.to_json()}));
            let image = m.noncommutative_characteristic()?.commutative_image(limits)?;
            r.check(image == cht, || json!({"mu": mu, "error": "commutative image of ch_t differs from Ch_t"}));
            r.check(cht.is_symmetric(), || json!({"mu": mu, "error": "Ch_t is not symmetric"}));
            let hl = hall_littlewood(&mu, limits)?.to_qsym()?.to_f();
            r.check(cht == hl, || json!({"mu": mu, "error": "Ch_t differs from H~_mu"}));
            r.details.push(json!({"mu": mu, "preserved": true, "blocks": reports}));
        } else {
            r.check(!rep.preserved && rep.witness.is_some(), || json!({"mu": mu, "error": "no non-preservation witness"}));
            if mu == Partition::new(vec![2, 2])? {
                r.check(!rep.chain_end_in_ideal, || json!({"mu": mu, "error": "x_1 x_2 lies in the ideal"}));
            }
            r.details.push(json!({
                "mu": mu,
                "preserved": rep.preserved,
                "witness": rep.witness,
                "chain": rep.chain,
                "chain_end": rep.chain_end,
                "chain_end_in_ideal": rep.chain_end_in_ideal,
            }));
        }
    }
    Ok(r)
}

/// Tits chain complexes for every `α ⊨ n`: `∂² = 0`, exactness, and `dim χ = r_α(q)` at `q`.
pub fn chain_complex(n: usize, q: u64, limits: &Limits) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(Suite::ChainComplex, n, Some(q));
    for a in compositions_of(n, limits)? {
        let Some(t) = r.absorb("chain complex", tits_chain_complex(n, q, &a, limits))? else {
            continue;
        };
        let predicted = ribbon_number_q(&a, limits)?.eval(&BigInt::from(q), &BigInt::one());
        r.check(BigInt::from(t.chi_dimension) == predicted, || {
            json!({"alpha": a, "chi": t.chi_dimension, "r_alpha_q": predicted.to_string()})
        });
        r.check(t.alternating_sum == t.chi_dimension as i64, || json!({"alpha": a, "error": "alternating sum"}));
        r.details.push(serde_json::to_value(&t).unwrap());
    }
    Ok(r)
}

/// Inclusion–exclusion multiplicities against composition series built from socles,
/// on random iterated extensions of simples.
pub fn factor_counts_random(n: usize, count: usize, seed: u64) -> Result<(usize, Vec<Value>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for k in 0..count {
        let steps = rng.random_range(2..=5);
        let m = random_extension_module(n, steps, &mut rng)?;
        let fast = composition_multiplicities(&m)?;
        let slow = socle_series_multiplicities(&m)?;
        if fast != slow {
            failures.push(json!({"module": k, "dimension": m.dim}));
        }
    }
    Ok((count, failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let limits = Limits::default();
        for s in Suite::ALL {
            let r = run_suite(s, 3, 2, 7, &limits).unwrap();
            assert!(r.passed, "{}: {:?}", s.name(), r.failures);
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn random_factor_counts() {
        let (count, failures) = factor_counts_random(3, 5, 11).unwrap();
        assert_eq!(count, 5);
        assert!(failures.is_empty(), "{failures:?}");
    }
}
