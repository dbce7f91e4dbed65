//! Sparse polynomials in `x_1, ..., x_n` over the integers, with the symmetric
//! group action and Demazure operators.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinat::{Partition, Permutation};
use crate::error::{inconsistent, invalid, Result};

pub type Exponent = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        MultiPoly::monomial(vec![0; n], 1)
    }

    pub fn monomial(e: Exponent, c: impl Into<BigInt>) -> Self {
        let n = e.len();
        let mut p = MultiPoly::zero(n);
        p.add_term(e, &c.into());
        p
    }

    /// `x_i`, 1-indexed.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i - 1] = 1;
        MultiPoly::monomial(e, 1)
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, e: Exponent, c: &BigInt) {
        assert_eq!(e.len(), self.n, "exponent length differs from the variable count");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().is_one()
    }

    /// Total degree of the highest term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).all_equal()
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        let mut out = MultiPoly::zero(self.n);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        out
    }

    pub fn mul_monomial(&self, m: &[u32]) -> MultiPoly {
        MultiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), v.clone()))
                .collect(),
        }
    }

    /// `s_i f`: exchanges `x_i` and `x_{i+1}`.
    pub fn s(&self, i: usize) -> MultiPoly {
        MultiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| {
                    let mut e = e.clone();
                    e.swap(i - 1, i);
                    (e, v.clone())
                })
                .collect(),
        }
    }

    /// `w f` with `w x_i = x_{w(i)}`.
    pub fn permute(&self, w: &Permutation) -> MultiPoly {
        assert_eq!(w.n(), self.n);
        MultiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (w.act_on_exponents(e), v.clone()))
                .collect(),
        }
    }

    pub fn is_symmetric_in(&self, i: usize) -> bool {
        self.s(i) == *self
    }

    /// `π̄_i`, applied monomial by monomial through the closed three-case formula.
    pub fn demazure_bar(&self, i: usize) -> MultiPoly {
        assert!(i >= 1 && i < self.n, "Demazure index out of range");
        let mut out = MultiPoly::zero(self.n);
        for (e, c) in &self.terms {
            let (a, b) = (e[i - 1], e[i]);
            let mut f = e.clone();
            match a.cmp(&b) {
                Ordering::Equal => {}
                Ordering::Greater => {
                    for k in 1..=a - b {
                        f[i - 1] = a - k;
                        f[i] = b + k;
                        out.add_term(f.clone(), c);
                    }
                }
                Ordering::Less => {
                    let neg = -c;
                    for k in 0..b - a {
                        f[i - 1] = a + k;
                        f[i] = b - k;
                        out.add_term(f.clone(), &neg);
                    }
                }
            }
        }
        out
    }

    /// `π_i = π̄_i + 1`.
    pub fn demazure(&self, i: usize) -> MultiPoly {
        &self.demazure_bar(i) + self
    }

    /// `π̄_{i_1} ⋯ π̄_{i_k} f` for a word `[i_1, ..., i_k]`.
    pub fn demazure_bar_word(&self, word: &[usize]) -> MultiPoly {
        word.iter().rev().fold(self.clone(), |f, &i| f.demazure_bar(i))
    }

    /// `π̄_w f` along the reduced word of [`Permutation::reduced_word`].
    pub fn demazure_bar_perm(&self, w: &Permutation) -> MultiPoly {
        self.demazure_bar_word(&w.reduced_word())
    }

    /// `π_w f` along the same reduced word.
    pub fn demazure_perm(&self, w: &Permutation) -> MultiPoly {
        w.reduced_word()
            .iter()
            .rev()
            .fold(self.clone(), |f, &i| f.demazure(i))
    }

    /// Exact quotient by leading-term elimination (lexicographic order on exponents).
    pub fn div_exact(&self, d: &MultiPoly) -> Result<MultiPoly> {
        let Some((de, dc)) = d.terms.iter().next_back() else {
            return invalid("division by the zero polynomial");
        };
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.n);
        while let Some((re, rc)) = rem.terms.iter().next_back() {
            if re.iter().zip(de).any(|(a, b)| a < b) {
                return inconsistent("polynomial division leaves a remainder");
            }
            let (c, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return inconsistent("polynomial division is not integral");
            }
            let shift: Exponent = re.iter().zip(de).map(|(a, b)| a - b).collect();
            quot.add_term(shift.clone(), &c);
            rem = &rem - &d.mul_monomial(&shift).scale(&c);
        }
        Ok(quot)
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> MultiPoly {
        MultiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, v)| (e.clone(), v.clone()))
                .collect(),
        }
    }

    /// Leading monomial under `<_ts`.
    pub fn leading_ts(&self) -> Option<&Exponent> {
        self.terms.keys().max_by(|a, b| cmp_ts(a, b))
    }

    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| {
                    if a == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, a)
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigInt::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n);
        let mut out = MultiPoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), &(c1 * c2));
            }
        }
        out
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<(&Exponent, String)> = self.terms.iter().map(|(e, c)| (e, c.to_string())).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<(Exponent, String)> = Vec::deserialize(d)?;
        let Some(n) = v.first().map(|(e, _)| e.len()) else {
            return Err(D::Error::custom("the zero polynomial carries no variable count"));
        };
        let mut p = MultiPoly::zero(n);
        for (e, c) in v {
            if e.len() != n {
                return Err(D::Error::custom("exponent vectors of different lengths"));
            }
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            p.add_term(e, &c);
        }
        Ok(p)
    }
}

/// Weakly decreasing rearrangement `λ(d)`.
pub fn lambda_of(d: &[u32]) -> Vec<u32> {
    let mut v = d.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// `d ≺ e` order: lexicographic comparison of `λ(d)` and `λ(e)`.
pub fn cmp_prec(d: &[u32], e: &[u32]) -> Ordering {
    lambda_of(d).cmp(&lambda_of(e))
}

/// `<_ts`: `λ` first, then lexicographic on the exponent vectors.
pub fn cmp_ts(d: &[u32], e: &[u32]) -> Ordering {
    cmp_prec(d, e).then_with(|| d.cmp(e))
}

/// `x_I = ∏_{i ∈ I} x_1 ⋯ x_i`.
pub fn x_subset(descents: &[usize], n: usize) -> MultiPoly {
    let mut e = vec![0u32; n];
    for &i in descents {
        for x in e.iter_mut().take(i) {
            *x += 1;
        }
    }
    MultiPoly::monomial(e, 1)
}

/// Descent monomial `w x_{D(w)} = ∏_{i ∈ D(w)} x_{w(1)} ⋯ x_{w(i)}`.
pub fn descent_monomial(w: &Permutation) -> MultiPoly {
    x_subset(&w.descents(), w.n()).permute(w)
}

/// Demazure atom `π̄_w x_{D(w)}`.
pub fn demazure_atom(w: &Permutation) -> MultiPoly {
    x_subset(&w.descents(), w.n()).demazure_bar_perm(w)
}

/// `e_r` in the variables listed in `subset` (1-indexed).
pub fn elementary_symmetric(n: usize, r: usize, subset: &[usize]) -> MultiPoly {
    let mut out = MultiPoly::zero(n);
    if r > subset.len() {
        return out;
    }
    for combo in subset.iter().combinations(r) {
        let mut e = vec![0; n];
        for &&i in &combo {
            e[i - 1] += 1;
        }
        out.add_term(e, &BigInt::one());
    }
    out
}

/// `m_λ` in `n` variables (zero if `λ` has more than `n` parts).
pub fn monomial_symmetric(n: usize, lambda: &[u32]) -> MultiPoly {
    let mut out = MultiPoly::zero(n);
    let mut parts: Vec<u32> = lambda.iter().copied().filter(|&p| p > 0).collect();
    if parts.len() > n {
        return out;
    }
    parts.resize(n, 0);
    parts.sort_unstable();
    // distinct rearrangements in lexicographic order
    loop {
        out.add_term(parts.clone(), &BigInt::one());
        if !next_permutation(&mut parts) {
            break;
        }
    }
    out
}

pub fn monomial_symmetric_partition(n: usize, lambda: &Partition) -> MultiPoly {
    let v: Vec<u32> = lambda.parts().iter().map(|&p| p as u32).collect();
    monomial_symmetric(n, &v)
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `d = γ(d) + μ(d)` with the labelling permutation `σ(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PPartitionEncoding {
    pub d: Vec<u32>,
    pub sigma: Permutation,
    pub gamma: Vec<u32>,
    pub mu: Vec<u32>,
}

pub fn p_partition_encode(d: &[u32]) -> Result<PPartitionEncoding> {
    let n = d.len();
    if n == 0 {
        return invalid("empty exponent vector");
    }
    // label positions from the largest entry to the smallest, ties left to right
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[b].cmp(&d[a]).then(a.cmp(&b)));
    let mut label = vec![0; n];
    for (k, &pos) in order.iter().enumerate() {
        label[pos] = k + 1;
    }
    let sigma = Permutation::new(label)?;
    // position of each label
    let pos_of = sigma.inverse();
    let mut gamma = vec![0u32; n];
    let mut s = 0u32;
    gamma[pos_of.at(n) - 1] = 0;
    for t in (1..n).rev() {
        if pos_of.at(t) > pos_of.at(t + 1) {
            s += 1;
        }
        gamma[pos_of.at(t) - 1] = s;
    }
    let mu: Vec<u32> = d.iter().zip(&gamma).map(|(a, b)| a - b).collect();
    Ok(PPartitionEncoding {
        d: d.to_vec(),
        sigma,
        gamma,
        mu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{compositions_of, permutations};
    use crate::Limits;
    use proptest::prelude::*;

    fn x(n: usize, e: &[u32]) -> MultiPoly {
        assert_eq!(e.len(), n);
        MultiPoly::monomial(e.to_vec(), 1)
    }

    /// `π̄_i f = x_{i+1}(f - s_i f)/(x_i - x_{i+1})`, by actual division.
    fn divided_difference_bar(f: &MultiPoly, i: usize) -> MultiPoly {
        let n = f.nvars();
        let num = &MultiPoly::var(n, i + 1) * &(f - &f.s(i));
        let den = &MultiPoly::var(n, i) - &MultiPoly::var(n, i + 1);
        num.div_exact(&den).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let g = &x(2, &[1, 1]) * &(&x(2, &[2, 0]) + &x(2, &[0, 2]));
        assert!(g.demazure_bar(1).is_zero());
        assert_eq!(MultiPoly::var(2, 1).demazure(1), &x(2, &[1, 0]) + &x(2, &[0, 1]));
        let x2sq = x(2, &[0, 2]);
        assert_eq!(x2sq.demazure(1), -&x(2, &[1, 1]));
        assert_eq!(x2sq.demazure_bar(1), &(-&x(2, &[1, 1])) - &x2sq);
    }

    #[test]
    fn closed_form_matches_division() {
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..3 {
                    let m = x(3, &[a, b, c]);
                    assert_eq!(m.demazure_bar(1), divided_difference_bar(&m, 1));
                    assert_eq!(m.demazure_bar(2), divided_difference_bar(&m, 2));
                }
            }
        }
    }

    #[test]
    fn reduced_words_of_longest_agree() {
        let f = x(3, &[2, 1, 0]);
        assert_eq!(f.demazure_bar_word(&[1, 2, 1]), f.demazure_bar_word(&[2, 1, 2]));
        let w0 = Permutation::longest(3);
        assert_eq!(f.demazure_bar_perm(&w0), f.demazure_bar_word(&[2, 1, 2]));
        assert_eq!(f.demazure_bar_perm(&Permutation::identity(3)), f);
    }

    #[test]
    fn descent_monomials() {
        assert_eq!(descent_monomial(&Permutation::identity(3)), MultiPoly::one(3));
        assert_eq!(descent_monomial(&Permutation::new(vec![2, 1]).unwrap()), x(2, &[0, 1]));
        for w in permutations(5, &Limits::default()).unwrap() {
            assert_eq!(descent_monomial(&w).degree(), Some(w.maj() as u32));
        }
    }

    #[test]
    fn atoms_at_class_endpoints() {
        let l = Limits::default();
        for n in 1..=5 {
            for a in compositions_of(n, &l).unwrap() {
                for w in [a.w0(), a.w1()] {
                    assert_eq!(demazure_atom(&w), descent_monomial(&w), "{a} {w}");
                }
            }
        }
    }

    #[test]
    fn atom_triangularity() {
        // π̄_w x_{D(α)} = w x_{D(α)} + lower terms under ≺ whenever D(w) ⊆ D(α)
        let l = Limits::default();
        for n in 2..=4 {
            for a in compositions_of(n, &l).unwrap() {
                let xa = x_subset(&a.descents(), n);
                let lead: Exponent = xa.terms().next().unwrap().0.clone();
                let d = a.descent_set();
                for w in permutations(n, &l).unwrap() {
                    if !w.descents().iter().all(|i| d.contains(i)) {
                        continue;
                    }
                    let atom = xa.demazure_bar_perm(&w);
                    let wx = xa.permute(&w);
                    let rest = &atom - &wx;
                    assert!(rest.terms().all(|(e, _)| cmp_prec(e, &lead) == Ordering::Less));
                    assert_eq!(atom.coeff(wx.terms().next().unwrap().0), BigInt::one());
                }
            }
        }
    }

    #[test]
    fn p_partition_example() {
        let enc = p_partition_encode(&[3, 1, 3, 0, 2, 0]).unwrap();
        assert_eq!(enc.sigma.images(), &[1, 4, 2, 5, 3, 6]);
        assert_eq!(enc.gamma, vec![1, 0, 1, 0, 1, 0]);
        assert_eq!(enc.mu, vec![2, 1, 2, 0, 1, 0]);
        let zero = p_partition_encode(&[0, 0, 0]).unwrap();
        assert!(zero.sigma.is_identity());
        assert_eq!(zero.gamma, vec![0, 0, 0]);
    }

    #[test]
    fn symmetric_polynomials() {
        assert_eq!(
            elementary_symmetric(2, 1, &[1, 2]),
            &MultiPoly::var(2, 1) + &MultiPoly::var(2, 2)
        );
        assert_eq!(elementary_symmetric(3, 2, &[1, 2, 3]).num_terms(), 3);
        assert!(elementary_symmetric(3, 4, &[1, 2, 3]).is_zero());
        assert_eq!(elementary_symmetric(3, 0, &[1, 2]), MultiPoly::one(3));
        assert_eq!(monomial_symmetric(3, &[2, 1]).num_terms(), 6);
        assert!(monomial_symmetric(2, &[1, 1, 1]).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let p = &x(2, &[1, 0]) - &x(2, &[0, 3]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[[0,3],"-1"],[[1,0],"1"]]"#);
        assert_eq!(serde_json::from_str::<MultiPoly>(&s).unwrap(), p);
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..4, n), -3i64..4), 1..6).prop_map(
            move |v| {
                let mut p = MultiPoly::zero(n);
                for (e, c) in v {
                    p.add_term(e, &BigInt::from(c));
                }
                p
            },
        )
    }

    proptest! {
        #[test]
        fn relations_hold(f in arb_poly(4)) {
            for i in 1..4 {
                prop_assert_eq!(f.demazure(i).demazure(i), f.demazure(i));
                prop_assert_eq!(f.demazure_bar(i).demazure_bar(i), -&f.demazure_bar(i));
            }
            prop_assert_eq!(f.demazure_bar_word(&[1, 2, 1]), f.demazure_bar_word(&[2, 1, 2]));
            prop_assert_eq!(f.demazure_bar_word(&[1, 3]), f.demazure_bar_word(&[3, 1]));
        }

        #[test]
        fn fixed_points_are_symmetric(f in arb_poly(3)) {
            let g = &f + &f.s(1);
            prop_assert_eq!(g.demazure(1), g.clone());
            prop_assert_eq!(f.demazure(1) == f, f.is_symmetric_in(1));
        }

        #[test]
        fn invariant_factors_pass_through(f in arb_poly(3), g in arb_poly(3)) {
            let sym = &f + &f.s(2);
            prop_assert_eq!((&sym * &g).demazure(2), &sym * &g.demazure(2));
        }

        #[test]
        fn degree_is_preserved(e in prop::collection::vec(0u32..5, 4), i in 1usize..4) {
            let m = MultiPoly::monomial(e, 1);
            let p = m.demazure(i);
            prop_assert!(p.is_homogeneous());
            prop_assert!(p.is_zero() || p.degree() == m.degree());
        }

        #[test]
        fn p_partition_properties(d in prop::collection::vec(0u32..5, 5)) {
            let enc = p_partition_encode(&d).unwrap();
            let sum: Vec<u32> = enc.gamma.iter().zip(&enc.mu).map(|(a, b)| a + b).collect();
            prop_assert_eq!(&sum, &d);
            let dm = descent_monomial(&enc.sigma.inverse());
            prop_assert_eq!(dm.terms().next().unwrap().0, &enc.gamma);
            // m_μ x^γ = x^d + terms below x^d in <_ts
            let prod = &monomial_symmetric(5, &enc.mu) * &MultiPoly::monomial(enc.gamma.clone(), 1);
            let rest = &prod - &MultiPoly::monomial(d.clone(), 1);
            prop_assert!(rest.terms().all(|(e, _)| cmp_ts(e, &d) == Ordering::Less));
        }
    }
}
