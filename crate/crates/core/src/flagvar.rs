//! Complete and partial flags in `F_q^n`, the `H_n(0)`-action on the span of complete
//! flags over `F_p`, and the chain complexes of type-selected Tits buildings.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::charmap::{hall_littlewood, QBasis, QSymElement};
use crate::combinat::{compositions_of, Composition, Partition};
use crate::error::{inconsistent, invalid, Error, Limits, Result};
use crate::hecke0::{composition_multiplicities, FiniteModule};
use crate::linalg::{Field, Matrix, PrimeField, Rationals};
use crate::qtarith::{prime_power, q_factorial, q_multinomial, ribbon_number_q, BiPoly};

/// `F_q` for `q = p^k`, elements encoded as base-`p` digit strings of polynomial residues.
#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u64,
    q: u64,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

fn poly_mod(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap();
        if lead != 0 {
            let shift = a.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - lead * c % p) % p;
            }
        }
    }
    a
}

fn digits(x: u64, p: u64, k: usize) -> Vec<u64> {
    (0..k).scan(x, |r, _| {
        let d = *r % p;
        *r /= p;
        Some(d)
    })
    .collect()
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

impl GaloisField {
    pub fn new(q: u64) -> Result<Self> {
        let Some((p, k)) = prime_power(q) else {
            return invalid(format!("{q} is not a prime power"));
        };
        if q > 256 {
            return Err(Error::SizeLimit {
                what: "field size q",
                value: q,
                cap: 256,
            });
        }
        let k = k as usize;
        // smallest monic irreducible of degree k: no monic factor of degree 1..=k/2
        let modulus: Vec<u64> = (0..p.pow(k as u32))
            .map(|low| {
                let mut m = digits(low, p, k);
                m.push(1);
                m
            })
            .find(|m| {
                (1..=k / 2).all(|d| {
                    (0..p.pow(d as u32)).all(|low| {
                        let mut f = digits(low, p, d);
                        f.push(1);
                        poly_mod(m.clone(), &f, p).iter().any(|&c| c != 0)
                    })
                })
            })
            .expect("irreducible polynomials exist in every degree");
        let qq = q as usize;
        let mut add = vec![0; qq * qq];
        let mut mul = vec![0; qq * qq];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s, p) as u32;
                let mut prod = vec![0; 2 * k];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_mod(prod, &modulus, p);
                r.resize(k, 0);
                mul[(a * q + b) as usize] = undigits(&r, p) as u32;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as u32)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap() as u32
                }
            })
            .collect();
        Ok(GaloisField { p, q, add, mul, neg, inv })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a as u64 * self.q + b as u64) as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a as u64 * self.q + b as u64) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// Reduced row echelon form, zero rows dropped.
    pub fn rref(&self, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let mut m: Vec<Vec<u32>> = rows.to_vec();
        let cols = m.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, piv);
            let s = self.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = self.mul(*x, s);
            }
            for i in 0..m.len() {
                if i != r && m[i][c] != 0 {
                    let f = self.neg(m[i][c]);
                    for j in 0..cols {
                        let v = self.mul(f, m[r][j]);
                        m[i][j] = self.add(m[i][j], v);
                    }
                }
            }
            r += 1;
        }
        m.truncate(r);
        m
    }

    /// All vectors in the span of `basis`.
    fn span_vectors(&self, basis: &[Vec<u32>], n: usize) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0; n]];
        for b in basis {
            let mut next = Vec::with_capacity(out.len() * self.q as usize);
            for v in &out {
                for c in 0..self.q as u32 {
                    next.push(v.iter().zip(b).map(|(&x, &y)| self.add(x, self.mul(c, y))).collect());
                }
            }
            out = next;
        }
        out
    }
}

/// Subspace of `F_q^n` as its reduced echelon basis.
pub type SubspaceKey = Vec<Vec<u32>>;

/// `V_1 ⊂ ⋯ ⊂ V_{n-1}` with `dim V_i = i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Flag {
    pub spaces: Vec<SubspaceKey>,
}

fn flag_count(n: usize, q: u64) -> Option<u64> {
    let mut total: u64 = 1;
    for m in 1..=n as u32 {
        let qm = q.checked_pow(m)?;
        total = total.checked_mul((qm - 1) / (q - 1))?;
    }
    Some(total)
}

fn check_flag_cap(n: usize, q: u64, limits: &Limits) -> Result<()> {
    limits.check_n(n)?;
    let count = flag_count(n, q).unwrap_or(u64::MAX);
    if count > limits.max_flags {
        return Err(Error::SizeLimit {
            what: "number of complete flags",
            value: count,
            cap: limits.max_flags,
        });
    }
    Ok(())
}

/// All complete flags, sorted.
pub fn enumerate_flags(n: usize, q: u64, limits: &Limits) -> Result<Vec<Flag>> {
    check_flag_cap(n, q, limits)?;
    let gf = GaloisField::new(q)?;
    let all = gf.span_vectors(&identity_rows(n), n);
    let mut out = Vec::new();
    let mut stack: Vec<Vec<SubspaceKey>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() + 1 >= n {
            out.push(Flag { spaces: prefix });
            continue;
        }
        let current: SubspaceKey = prefix.last().cloned().unwrap_or_default();
        let mut children = BTreeSet::new();
        for v in &all {
            let mut rows = current.clone();
            rows.push(v.clone());
            let r = gf.rref(&rows);
            if r.len() == current.len() + 1 {
                children.insert(r);
            }
        }
        for c in children {
            let mut next = prefix.clone();
            next.push(c);
            stack.push(next);
        }
    }
    out.sort();
    let expected = flag_count(n, q).unwrap();
    if out.len() as u64 != expected {
        return inconsistent(format!("found {} flags, expected [n]!_q = {expected}", out.len()));
    }
    Ok(out)
}

fn identity_rows(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect()
}

/// The span of complete flags over `F_p` with `T_i F = Σ F'` over the `q` flags that
/// differ from `F` exactly in `V_i`.
#[derive(Clone, Debug)]
pub struct FlagSpaceModule {
    pub q: u64,
    pub flags: Vec<Flag>,
    pub module: FiniteModule<PrimeField>,
}

/// Subspaces `W` with `below ⊂ W ⊂ above` and `dim W = dim below + 1`.
fn intermediate(gf: &GaloisField, below: &SubspaceKey, above: &SubspaceKey, n: usize) -> BTreeSet<SubspaceKey> {
    let mut out = BTreeSet::new();
    for v in gf.span_vectors(above, n) {
        let mut rows = below.clone();
        rows.push(v);
        let r = gf.rref(&rows);
        if r.len() == below.len() + 1 {
            out.insert(r);
        }
    }
    out
}

pub fn hecke_action_flags(n: usize, q: u64, limits: &Limits) -> Result<FlagSpaceModule> {
    let flags = enumerate_flags(n, q, limits)?;
    let gf = GaloisField::new(q)?;
    let field = PrimeField::new(gf.p()).expect("characteristic is prime");
    let index: BTreeMap<&Flag, usize> = flags.iter().enumerate().map(|(k, f)| (f, k)).collect();
    let d = flags.len();
    let whole = identity_rows(n);
    let mut gens = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let mut a = Matrix::zeros(&field, d, d);
        for (c, f) in flags.iter().enumerate() {
            let below = if i >= 2 { f.spaces[i - 2].clone() } else { Vec::new() };
            let above = if i < n - 1 { f.spaces[i].clone() } else { whole.clone() };
            let mut count = 0;
            for w in intermediate(&gf, &below, &above, n) {
                if w == f.spaces[i - 1] {
                    continue;
                }
                let mut g = f.clone();
                g.spaces[i - 1] = w;
                let r = index[&g];
                a.set(r, c, field.add(a.get(r, c), &1));
                count += 1;
            }
            if count != q {
                return inconsistent(format!("flag has {count} i-neighbours instead of q = {q}"));
            }
        }
        gens.push(a);
    }
    let module = if n == 1 {
        FiniteModule {
            field,
            n,
            dim: d,
            generators: Vec::new(),
            degree: None,
            length: None,
            cyclic: None,
        }
    } else {
        FiniteModule::new(field, n, gens)?
    };
    Ok(FlagSpaceModule { q, flags, module })
}

/// One row of the factor table.
#[derive(Clone, Debug, Serialize)]
pub struct FlagFactorRow {
    pub alpha: Composition,
    #[serde(rename = "dim_Q_alpha")]
    pub dim_q_alpha: usize,
    pub multiplicity: u64,
    pub predicted_r_alpha_q: u64,
}

fn eval_at(p: &BiPoly, q: u64) -> Result<u64> {
    let v = p.eval(&BigInt::from(q), &BigInt::from(1));
    u64::try_from(v).map_err(|_| Error::Consistency("evaluation out of range".into()))
}

/// Factor multiplicities of the flag module, checked against `[n; α]_q` and `r_α(q)` at `q`.
pub fn flag_composition_factors(n: usize, q: u64, limits: &Limits) -> Result<Vec<FlagFactorRow>> {
    let m = hecke_action_flags(n, q, limits)?;
    flag_factor_table(&m, limits)
}

pub fn flag_factor_table(m: &FlagSpaceModule, limits: &Limits) -> Result<Vec<FlagFactorRow>> {
    let n = m.module.n;
    let q = m.q;
    let mults = composition_multiplicities(&m.module)?;
    let mut rows = Vec::new();
    for a in compositions_of(n, limits)? {
        let dim = m.module.q_space(&a).dim();
        let expected_dim = eval_at(&q_multinomial(n, &a)?, q)?;
        if dim as u64 != expected_dim {
            return inconsistent(format!("dim Q_{a} = {dim}, but [n; α]_q = {expected_dim}"));
        }
        let predicted = eval_at(&ribbon_number_q(&a, limits)?, q)?;
        let c = mults[&a];
        if c != predicted {
            return inconsistent(format!("multiplicity of C_{a} is {c}, but r_α(q) = {predicted}"));
        }
        rows.push(FlagFactorRow {
            alpha: a,
            dim_q_alpha: dim,
            multiplicity: c,
            predicted_r_alpha_q: predicted,
        });
    }
    let total: u64 = rows.iter().map(|r| r.multiplicity).sum();
    if total != eval_at(&q_factorial(n as u64), q)? {
        return inconsistent("multiplicities do not add up to [n]!_q");
    }
    Ok(rows)
}

/// `Ch(1_B^G)`, checked against `H̃_{1^n}(x; t)` at `t = q`.
pub fn flag_characteristic(n: usize, q: u64, limits: &Limits) -> Result<QSymElement> {
    let rows = flag_composition_factors(n, q, limits)?;
    let ch = QSymElement::from_terms(
        n,
        QBasis::F,
        rows.iter().map(|r| (r.alpha.clone(), BiPoly::constant(r.multiplicity))),
    )?;
    let hl = hall_littlewood(&Partition::new(vec![1; n])?, limits)?
        .to_qsym()?
        .to_f()
        .map_coeffs(|c| c.subs_t(&BigInt::from(q)));
    if ch != hl {
        return inconsistent(format!("Ch(1_B^G) = {ch} but H̃_(1^n) at q gives {hl}"));
    }
    Ok(ch)
}

/// Chain complex of the type-selected building: degree `k` spans the partial flags whose
/// type is a `k`-subset of `D(α)`; `∂` deletes `V_i` with sign `(-1)^{position of i}`.
#[derive(Clone, Debug, Serialize)]
pub struct TitsComplex {
    pub alpha: Composition,
    /// `dims[k]` = dimension of the degree-`k` chain group.
    pub dims: Vec<usize>,
    /// `ranks[k]` = rank of `∂: C_k → C_{k-1}` (`ranks[0] = 0`).
    pub ranks: Vec<usize>,
    pub boundary_squares_vanish: bool,
    /// Whether `ker ∂_k = im ∂_{k+1}` for every `k` below the top.
    pub exact_below_top: bool,
    pub chi_dimension: usize,
    pub alternating_sum: i64,
}

pub fn tits_chain_complex(n: usize, q: u64, alpha: &Composition, limits: &Limits) -> Result<TitsComplex> {
    if alpha.size() != n {
        return invalid(format!("{alpha} is not a composition of {n}"));
    }
    if n > 4 || (n == 4 && q != 2) {
        return Err(Error::SizeLimit {
            what: "n for the chain complex",
            value: n as u64,
            cap: if q == 2 { 4 } else { 3 },
        });
    }
    let flags = enumerate_flags(n, q, limits)?;
    let d = alpha.descents();
    let top = d.len();
    let f = Rationals;
    // cells[k]: partial flags keyed by (type, subspaces)
    let mut cells: Vec<Vec<(Vec<usize>, Vec<SubspaceKey>)>> = vec![Vec::new(); top + 1];
    for k in 0..=top {
        let mut set = BTreeSet::new();
        for s in itertools::Itertools::combinations(d.iter().copied(), k) {
            for fl in &flags {
                let spaces: Vec<SubspaceKey> = s.iter().map(|&i| fl.spaces[i - 1].clone()).collect();
                set.insert((s.clone(), spaces));
            }
        }
        cells[k] = set.into_iter().collect();
    }
    let index: Vec<BTreeMap<&(Vec<usize>, Vec<SubspaceKey>), usize>> = cells
        .iter()
        .map(|c| c.iter().enumerate().map(|(i, x)| (x, i)).collect())
        .collect();
    let mut boundaries: Vec<Matrix<BigRational>> = vec![Matrix::zeros(&f, 0, cells[0].len())];
    for k in 1..=top {
        let mut b = Matrix::zeros(&f, cells[k - 1].len(), cells[k].len());
        for (c, (ty, spaces)) in cells[k].iter().enumerate() {
            for pos in 0..ty.len() {
                let mut t2 = ty.clone();
                t2.remove(pos);
                let mut s2 = spaces.clone();
                s2.remove(pos);
                let r = index[k - 1][&(t2, s2)];
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                b.set(r, c, f.from_i64(sign));
            }
        }
        boundaries.push(b);
    }
    let mut squares = true;
    for k in 2..=top {
        if !boundaries[k - 1].mul(&f, &boundaries[k]).is_zero(&f) {
            squares = false;
        }
    }
    let ranks: Vec<usize> = (0..=top)
        .map(|k| if k == 0 { 0 } else { boundaries[k].rank(&f) })
        .collect();
    let dims: Vec<usize> = cells.iter().map(|c| c.len()).collect();
    let exact = (0..top).all(|k| dims[k] - ranks[k] == ranks[k + 1]);
    let chi = dims[top] - ranks[top];
    let alternating: i64 = (0..=top)
        .map(|k| {
            let sgn = if (top - k) % 2 == 0 { 1 } else { -1 };
            sgn * dims[k] as i64
        })
        .sum();
    if !squares {
        return inconsistent("∂² ≠ 0: sign convention fails");
    }
    if !exact {
        return inconsistent("chain complex is not exact below the top: sign convention fails");
    }
    Ok(TitsComplex {
        alpha: alpha.clone(),
        dims,
        ranks,
        boundary_squares_vanish: squares,
        exact_below_top: exact,
        chi_dimension: chi,
        alternating_sum: alternating,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[usize]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn fields() {
        for q in [2, 3, 4, 5, 8, 9] {
            let gf = GaloisField::new(q).unwrap();
            for a in 1..q as u32 {
                assert_eq!(gf.mul(a, gf.inv(a)), 1);
                for b in 0..q as u32 {
                    for c in 0..q as u32 {
                        let lhs = gf.mul(a, gf.add(b, c));
                        let rhs = gf.add(gf.mul(a, b), gf.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
        assert!(GaloisField::new(6).is_err());
    }

    #[test]
    fn flag_counts() {
        assert_eq!(enumerate_flags(2, 2, &l()).unwrap().len(), 3);
        assert_eq!(enumerate_flags(3, 2, &l()).unwrap().len(), 21);
        assert_eq!(enumerate_flags(3, 3, &l()).unwrap().len(), 52);
        assert_eq!(enumerate_flags(2, 4, &l()).unwrap().len(), 5);
        assert!(matches!(enumerate_flags(5, 2, &l()), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn action_examples() {
        let m = hecke_action_flags(2, 2, &l()).unwrap();
        let f = &m.module.field;
        let a = &m.module.generators[0];
        for col in 0..3 {
            for row in 0..3 {
                assert_eq!(*a.get(row, col), u64::from(row != col));
            }
        }
        let sq = a.mul(f, a);
        assert!(sq.add(f, a).is_zero(f));
        assert!(hecke_action_flags(3, 2, &l()).is_ok());
    }

    #[test]
    fn factor_tables() {
        let rows = flag_composition_factors(2, 2, &l()).unwrap();
        let m: BTreeMap<Composition, u64> = rows.iter().map(|r| (r.alpha.clone(), r.multiplicity)).collect();
        assert_eq!(m[&c(&[2])], 1);
        assert_eq!(m[&c(&[1, 1])], 2);
        let rows = flag_composition_factors(3, 2, &l()).unwrap();
        let top = rows.iter().find(|r| r.alpha == c(&[1, 1, 1])).unwrap();
        assert_eq!(top.multiplicity, 8);
        for (n, q) in [(2, 3), (3, 3), (2, 4)] {
            assert!(flag_characteristic(n, q, &l()).is_ok());
        }
    }

    #[test]
    fn chain_complexes() {
        let t = tits_chain_complex(2, 2, &c(&[2]), &l()).unwrap();
        assert_eq!(t.chi_dimension, 1);
        let t = tits_chain_complex(2, 2, &c(&[1, 1]), &l()).unwrap();
        assert_eq!(t.chi_dimension, 2);
        let t = tits_chain_complex(3, 2, &c(&[1, 1, 1]), &l()).unwrap();
        assert_eq!(t.chi_dimension, 8);
        assert_eq!(t.alternating_sum, 8);
        assert_eq!(t.dims, vec![1, 14, 21]);
    }
}
