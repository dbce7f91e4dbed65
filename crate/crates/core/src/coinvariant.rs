//! Quotients of `F[x_1, ..., x_n]` by homogeneous ideals, the coinvariant algebra on
//! the Demazure-atom basis, and the hook quotients `R_μ`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::charmap::{bigraded_closed_form, characteristic, noncommutative_characteristic, Mode, NSymElement, QSymElement};
use crate::combinat::{compositions_of, descent_class, Composition, Partition, Permutation};
use crate::error::{inconsistent, invalid, Error, Limits, Result};
use crate::hecke0::{coordinate_restriction, matrix_checksum, module_isomorphic, projective_module, FiniteModule};
use crate::linalg::{Field, Matrix, Rationals};
use crate::polyring::{demazure_atom, elementary_symmetric, x_subset, Exponent, MultiPoly};
use crate::qtarith::BiPoly;

type Row = BTreeMap<usize, BigRational>;

/// Monomials of degree `d` in `n` variables, largest first for lex with `x_n` most significant.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(prefix.iter().rev().copied().collect());
            prefix.pop();
            return;
        }
        for a in (0..=left).rev() {
            prefix.push(a);
            rec(n, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    // prefix lists exponents from x_n down to x_1
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

#[derive(Clone, Debug)]
struct DegreePiece {
    monomials: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
    /// Fully reduced rows keyed by pivot column; other entries sit in non-pivot columns.
    rows: BTreeMap<usize, Row>,
    occurs: HashMap<usize, BTreeSet<usize>>,
    full: bool,
}

impl DegreePiece {
    fn new(n: usize, d: u32) -> Self {
        let monomials = monomials_of_degree(n, d);
        let index = monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        DegreePiece {
            monomials,
            index,
            rows: BTreeMap::new(),
            occurs: HashMap::new(),
            full: false,
        }
    }

    fn full_marker() -> Self {
        DegreePiece {
            monomials: Vec::new(),
            index: HashMap::new(),
            rows: BTreeMap::new(),
            occurs: HashMap::new(),
            full: true,
        }
    }

    fn reduce(&self, row: &Row) -> Row {
        let mut out = row.clone();
        for (c, v) in row {
            if let Some(pr) = self.rows.get(c) {
                for (k, x) in pr {
                    let e = out.entry(*k).or_insert_with(BigRational::zero);
                    *e -= v * x;
                    if e.is_zero() {
                        out.remove(k);
                    }
                }
            }
        }
        out
    }

    fn insert(&mut self, row: &Row) -> bool {
        let mut r = self.reduce(row);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        for v in r.values_mut() {
            *v *= &inv;
        }
        if let Some(users) = self.occurs.remove(&p) {
            for u in users {
                let target = self.rows.get_mut(&u).unwrap();
                let coef = target.remove(&p).unwrap();
                for (k, x) in r.iter().skip(1) {
                    let e = target.entry(*k).or_insert_with(BigRational::zero);
                    *e -= &coef * x;
                    if e.is_zero() {
                        target.remove(k);
                        if let Some(s) = self.occurs.get_mut(k) {
                            s.remove(&u);
                        }
                    } else {
                        self.occurs.entry(*k).or_default().insert(u);
                    }
                }
            }
        }
        for k in r.keys().skip(1) {
            self.occurs.entry(*k).or_default().insert(p);
        }
        self.rows.insert(p, r);
        true
    }

    fn row_of(&self, f: &MultiPoly) -> Row {
        f.terms()
            .map(|(e, c)| (self.index[e], BigRational::from_integer(c.clone())))
            .collect()
    }

    fn standard(&self) -> Vec<usize> {
        (0..self.monomials.len()).filter(|c| !self.rows.contains_key(c)).collect()
    }
}

/// `F[x] / I` for a homogeneous ideal `I`, by per-degree exact echelon forms.
/// Pivots are the largest monomials for lex with `x_n` most significant, so the
/// standard monomials of the coinvariant ideal are the divisors of `x_1^{n-1} ⋯ x_{n-1}`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    n: usize,
    generators: Vec<MultiPoly>,
    cap: u32,
    pieces: Vec<DegreePiece>,
}

impl QuotientRing {
    pub fn new(n: usize, generators: Vec<MultiPoly>, cap: u32) -> Result<Self> {
        if n == 0 {
            return invalid("polynomial ring needs at least one variable");
        }
        let mut by_degree: BTreeMap<u32, Vec<&MultiPoly>> = BTreeMap::new();
        for g in &generators {
            if g.nvars() != n {
                return invalid("generator in the wrong number of variables");
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return invalid(format!("generator {g} is not homogeneous"));
            }
            by_degree.entry(g.degree().unwrap()).or_default().push(g);
        }
        let mut pieces: Vec<DegreePiece> = Vec::with_capacity(cap as usize + 1);
        for d in 0..=cap {
            if pieces.last().is_some_and(|p| p.full) {
                pieces.push(DegreePiece::full_marker());
                continue;
            }
            let mut piece = DegreePiece::new(n, d);
            if let Some(prev) = pieces.last() {
                for row in prev.rows.values() {
                    for j in 0..n {
                        let shifted: Row = row
                            .iter()
                            .map(|(c, v)| {
                                let mut e = prev.monomials[*c].clone();
                                e[j] += 1;
                                (piece.index[&e], v.clone())
                            })
                            .collect();
                        piece.insert(&shifted);
                    }
                }
            }
            for g in by_degree.get(&d).into_iter().flatten() {
                let row = piece.row_of(g);
                piece.insert(&row);
            }
            piece.full = piece.rows.len() == piece.monomials.len();
            pieces.push(piece);
        }
        Ok(QuotientRing {
            n,
            generators,
            cap,
            pieces,
        })
    }

    /// `F[x] / (e_1, ..., e_n)`.
    pub fn coinvariant(n: usize) -> Result<Self> {
        let all: Vec<usize> = (1..=n).collect();
        let gens = (1..=n).map(|r| elementary_symmetric(n, r, &all)).collect();
        QuotientRing::new(n, gens, top_degree(n) + 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    fn piece(&self, d: u32) -> Result<&DegreePiece> {
        self.pieces.get(d as usize).ok_or(Error::SizeLimit {
            what: "polynomial degree",
            value: d as u64,
            cap: self.cap as u64,
        })
    }

    /// Whether every monomial of degree `d` lies in the ideal (then so does every higher degree).
    pub fn is_full(&self, d: u32) -> Result<bool> {
        if d > self.cap && self.pieces.last().is_some_and(|p| p.full) {
            return Ok(true);
        }
        Ok(self.piece(d)?.full)
    }

    pub fn ideal_dimension(&self, d: u32) -> Result<usize> {
        let p = self.piece(d)?;
        if p.full {
            return Ok(monomials_of_degree(self.n, d).len());
        }
        Ok(p.rows.len())
    }

    /// Fully reduced echelon basis of the degree-`d` part of the ideal.
    pub fn ideal_basis(&self, d: u32) -> Result<Vec<BTreeMap<Exponent, BigRational>>> {
        let p = self.piece(d)?;
        if p.full {
            return invalid(format!("degree {d} is entirely inside the ideal"));
        }
        Ok(p.rows
            .values()
            .map(|r| r.iter().map(|(c, v)| (p.monomials[*c].clone(), v.clone())).collect())
            .collect())
    }

    pub fn standard_monomials(&self, d: u32) -> Result<Vec<Exponent>> {
        if self.is_full(d)? {
            return Ok(Vec::new());
        }
        let p = self.piece(d)?;
        Ok(p.standard().into_iter().map(|c| p.monomials[c].clone()).collect())
    }

    /// Dimensions of the graded pieces of the quotient; errors if not finite within the cap.
    pub fn hilbert_dimensions(&self) -> Result<Vec<usize>> {
        if !self.pieces.last().is_some_and(|p| p.full) {
            return Err(Error::SizeLimit {
                what: "quotient top degree",
                value: self.cap as u64 + 1,
                cap: self.cap as u64,
            });
        }
        let mut dims: Vec<usize> = (0..=self.cap)
            .map(|d| self.standard_monomials(d).map(|s| s.len()))
            .collect::<Result<_>>()?;
        while dims.last() == Some(&0) {
            dims.pop();
        }
        Ok(dims)
    }

    pub fn hilbert_series(&self) -> Result<BiPoly> {
        Ok(self
            .hilbert_dimensions()?
            .iter()
            .enumerate()
            .map(|(d, &k)| BiPoly::monomial(0, d as u64, k as u64))
            .sum())
    }

    pub fn dimension(&self) -> Result<usize> {
        Ok(self.hilbert_dimensions()?.iter().sum())
    }

    /// Coordinates of a homogeneous polynomial of degree `d` on the standard monomials of degree `d`.
    pub fn coordinates(&self, f: &MultiPoly, d: u32) -> Result<Vec<BigRational>> {
        if f.nvars() != self.n {
            return invalid("polynomial in the wrong number of variables");
        }
        if !f.is_zero() && (f.degree() != Some(d) || !f.is_homogeneous()) {
            return invalid(format!("polynomial is not homogeneous of degree {d}"));
        }
        if self.is_full(d)? {
            return Ok(Vec::new());
        }
        let p = self.piece(d)?;
        let reduced = p.reduce(&p.row_of(f));
        Ok(p.standard()
            .into_iter()
            .map(|c| reduced.get(&c).cloned().unwrap_or_else(BigRational::zero))
            .collect())
    }

    /// Unique representative supported on standard monomials.
    pub fn normal_form(&self, f: &MultiPoly) -> Result<BTreeMap<Exponent, BigRational>> {
        let mut out = BTreeMap::new();
        let degrees: BTreeSet<u32> = f.terms().map(|(e, _)| e.iter().sum()).collect();
        for d in degrees {
            let part = f.component(d);
            let std = self.standard_monomials(d)?;
            for (m, c) in std.into_iter().zip(self.coordinates(&part, d)?) {
                if !c.is_zero() {
                    out.insert(m, c);
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, f: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_empty())
    }
}

/// `n(n-1)/2`, the top degree of the coinvariant algebra.
pub fn top_degree(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

/// `d_k(μ) = μ'_1 + ⋯ + μ'_k` with `μ'` written increasingly and padded to `n` parts.
pub fn tanisaki_d(mu: &Partition) -> Vec<usize> {
    let n = mu.size();
    let mut conj: Vec<usize> = mu.conjugate().parts().to_vec();
    conj.reverse();
    let mut padded = vec![0; n - conj.len()];
    padded.extend(conj);
    padded
        .iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// `{e_r(S) : k ≥ r > k - d_k(μ), |S| = k}`, without repeats.
pub fn tanisaki_generators(mu: &Partition) -> Vec<MultiPoly> {
    let n = mu.size();
    let d = tanisaki_d(mu);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for k in 1..=n {
        let low = k.saturating_sub(d[k - 1]);
        for s in (1..=n).combinations(k) {
            for r in low + 1..=k {
                let g = elementary_symmetric(n, r, &s);
                if seen.insert(g.clone()) {
                    out.push(g);
                }
            }
        }
    }
    out
}

/// For a hook of height `h`: `e_1, ..., e_n` and the square-free monomials of degree `h`.
pub fn hook_generators(mu: &Partition) -> Result<Vec<MultiPoly>> {
    if !mu.is_hook() {
        return Err(Error::Unsupported(format!("{mu} is not a hook")));
    }
    let n = mu.size();
    let h = mu.height();
    let all: Vec<usize> = (1..=n).collect();
    let mut out: Vec<MultiPoly> = (1..=n).map(|r| elementary_symmetric(n, r, &all)).collect();
    for s in (1..=n).combinations(h) {
        let mut e = vec![0; n];
        for i in s {
            e[i - 1] = 1;
        }
        out.push(MultiPoly::monomial(e, 1));
    }
    Ok(out)
}

/// `I_μ` with its quotient; hooks use the reduced generating set.
#[derive(Clone, Debug)]
pub struct TanisakiIdeal {
    pub mu: Partition,
    pub generators: Vec<MultiPoly>,
    pub ring: QuotientRing,
}

pub fn tanisaki_ideal(mu: &Partition, cap: u32) -> Result<TanisakiIdeal> {
    let n = mu.size();
    if n > 6 {
        return Err(Error::SizeLimit {
            what: "n",
            value: n as u64,
            cap: 6,
        });
    }
    let generators = if mu.is_hook() {
        hook_generators(mu)?
    } else {
        tanisaki_generators(mu)
    };
    let ring = QuotientRing::new(n, generators.clone(), cap)?;
    Ok(TanisakiIdeal {
        mu: mu.clone(),
        generators,
        ring,
    })
}

/// A triple `(g, i, m)` with `π̄_i(g m) ∉ I`.
#[derive(Clone, Debug, Serialize)]
pub struct PreservationWitness {
    pub generator: MultiPoly,
    pub i: usize,
    pub monomial: MultiPoly,
    pub image: MultiPoly,
}

/// One step `f_k = e_h(x_1..x_k)`, `π̄_k f_k`, and `f_{k-1} = s_k f_k - π̄_k f_k`.
#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub k: usize,
    pub f: MultiPoly,
    pub f_in_ideal: bool,
    pub pi_bar_f: MultiPoly,
    pub pi_bar_f_in_ideal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PreservationReport {
    pub mu: Partition,
    pub is_hook: bool,
    pub preserved: bool,
    pub degree_cap: u32,
    pub checked_rows: usize,
    pub witness: Option<PreservationWitness>,
    pub chain: Vec<ChainStep>,
    /// `x_1 ⋯ x_h` and whether it lies in `I_μ`.
    pub chain_end: MultiPoly,
    pub chain_end_in_ideal: bool,
}

fn clear_denominators(n: usize, row: &BTreeMap<Exponent, BigRational>) -> MultiPoly {
    let l = row.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut p = MultiPoly::zero(n);
    for (e, v) in row {
        p.add_term(e.clone(), &(v * BigRational::from_integer(l.clone())).to_integer());
    }
    p
}

/// Checks `π̄_i(I_d) ⊆ I_d` on an echelon basis of every degree below the cap that is
/// not entirely inside the ideal; on failure, searches the products `g m` in that degree.
pub fn demazure_preserves_ideal(mu: &Partition) -> Result<PreservationReport> {
    let n = mu.size();
    if n > 5 {
        return Err(Error::SizeLimit {
            what: "n",
            value: n as u64,
            cap: 5,
        });
    }
    let h = mu.height();
    let cap = top_degree(n) + h as u32;
    let ideal = tanisaki_ideal(mu, cap)?;
    let ring = &ideal.ring;
    let mut checked = 0;
    let mut witness = None;
    'degrees: for d in 0..=cap {
        if ring.is_full(d)? {
            continue;
        }
        for row in ring.ideal_basis(d)? {
            let p = clear_denominators(n, &row);
            checked += 1;
            for i in 1..n {
                if !ring.contains(&p.demazure_bar(i))? {
                    witness = Some(find_triple(&ideal, d)?);
                    break 'degrees;
                }
            }
        }
    }
    let mut chain = Vec::new();
    let all: Vec<usize> = (1..=n).collect();
    for k in (h..n).rev() {
        let f = elementary_symmetric(n, h, &all[..k]);
        let pi = f.demazure_bar(k);
        chain.push(ChainStep {
            k,
            f_in_ideal: ring.contains(&f)?,
            pi_bar_f_in_ideal: ring.contains(&pi)?,
            pi_bar_f: pi.clone(),
            f,
        });
        let next = &chain.last().unwrap().f.s(k) - &pi;
        if next != elementary_symmetric(n, h, &all[..k - 1]) {
            return inconsistent(format!("chain step at k = {k} does not drop x_k"));
        }
    }
    let end = elementary_symmetric(n, h, &all[..h]);
    Ok(PreservationReport {
        mu: mu.clone(),
        is_hook: mu.is_hook(),
        preserved: witness.is_none(),
        degree_cap: cap,
        checked_rows: checked,
        witness,
        chain,
        chain_end_in_ideal: ring.contains(&end)?,
        chain_end: end,
    })
}

fn find_triple(ideal: &TanisakiIdeal, d: u32) -> Result<PreservationWitness> {
    let n = ideal.mu.size();
    for g in &ideal.generators {
        let Some(dg) = g.degree() else { continue };
        if dg > d {
            continue;
        }
        for m in monomials_of_degree(n, d - dg).into_iter().rev() {
            let gm = g.mul_monomial(&m);
            for i in 1..n {
                let image = gm.demazure_bar(i);
                if !ideal.ring.contains(&image)? {
                    return Ok(PreservationWitness {
                        generator: g.clone(),
                        i,
                        monomial: MultiPoly::monomial(m, 1),
                        image,
                    });
                }
            }
        }
    }
    inconsistent(format!("degree {d} fails on a basis but no generator product fails"))
}

#[derive(Clone, Debug)]
pub struct AtomBlock {
    pub alpha: Composition,
    pub start: usize,
    pub perms: Vec<Permutation>,
}

/// The quotient on the basis `π̄_w x_{D(w)}`, grouped into one block per descent class.
#[derive(Clone, Debug)]
pub struct AtomBasisModule {
    pub n: usize,
    pub module: FiniteModule<Rationals>,
    pub blocks: Vec<AtomBlock>,
    pub atoms: Vec<MultiPoly>,
}

fn atom_module(ring: &QuotientRing, alphas: &[Composition]) -> Result<AtomBasisModule> {
    let n = ring.n();
    let f = Rationals;
    let limits = Limits::default();
    let mut blocks = Vec::new();
    let mut perms_all = Vec::new();
    for a in alphas {
        let perms = descent_class(a, &limits)?;
        blocks.push(AtomBlock {
            alpha: a.clone(),
            start: perms_all.len(),
            perms: perms.clone(),
        });
        perms_all.extend(perms);
    }
    let atoms: Vec<MultiPoly> = perms_all.iter().map(demazure_atom).collect();
    let degree: Vec<u32> = perms_all.iter().map(|w| w.maj() as u32).collect();
    let dim = atoms.len();
    if dim != ring.dimension()? {
        return inconsistent(format!(
            "{dim} atoms for a quotient of dimension {}",
            ring.dimension()?
        ));
    }
    let mut by_degree: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (k, &d) in degree.iter().enumerate() {
        by_degree.entry(d).or_default().push(k);
    }
    let mut inverses: BTreeMap<u32, Matrix<BigRational>> = BTreeMap::new();
    for (&d, idx) in &by_degree {
        let cols: Vec<Vec<BigRational>> = idx
            .iter()
            .map(|&k| ring.coordinates(&atoms[k], d))
            .collect::<Result<_>>()?;
        if cols.iter().any(|c| c.len() != idx.len()) {
            return inconsistent(format!("degree {d}: atom count differs from the quotient dimension"));
        }
        let m = Matrix::from_columns(&cols, idx.len());
        let Some(inv) = m.inverse(&f) else {
            return inconsistent(format!("atoms of degree {d} are linearly dependent"));
        };
        inverses.insert(d, inv);
    }
    let block_of: Vec<usize> = blocks
        .iter()
        .enumerate()
        .flat_map(|(b, blk)| std::iter::repeat_n(b, blk.perms.len()))
        .collect();
    let mut gens = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let mut a = Matrix::zeros(&f, dim, dim);
        for k in 0..dim {
            let d = degree[k];
            let image = atoms[k].demazure_bar(i);
            let coords = inverses[&d].mul_vec(&f, &ring.coordinates(&image, d)?);
            for (pos, c) in by_degree[&d].iter().zip(coords) {
                if c.is_zero() {
                    continue;
                }
                if block_of[*pos] != block_of[k] {
                    return inconsistent(format!(
                        "π̄_{i} of the atom of {:?} leaves its block",
                        perms_all[k]
                    ));
                }
                a.set(*pos, k, c);
            }
        }
        gens.push(a);
    }
    let length: Vec<u32> = blocks
        .iter()
        .flat_map(|b| {
            let base = b.perms[0].inv();
            b.perms.iter().map(move |w| (w.inv() - base) as u32)
        })
        .collect();
    let mut module = FiniteModule::new(f, n, gens)?;
    module.dim = dim;
    let module = module.with_degree(degree)?.with_length(length)?;
    Ok(AtomBasisModule {
        n,
        module,
        blocks,
        atoms,
    })
}

/// The coinvariant algebra as an `H_n(0)`-module under `T_i ↦ π̄_i`.
pub fn coinvariant_module(n: usize) -> Result<AtomBasisModule> {
    if n > 6 {
        return Err(Error::SizeLimit {
            what: "n",
            value: n as u64,
            cap: 6,
        });
    }
    let limits = Limits::default();
    let ring = QuotientRing::coinvariant(n)?;
    atom_module(&ring, &compositions_of(n, &limits)?)
}

/// `R_μ` for a hook `μ`, on the atoms with `D(w) ⊆ D(μ)`.
pub fn springer_module(mu: &Partition) -> Result<AtomBasisModule> {
    let Some(hook) = mu.hook_composition() else {
        return Err(Error::Unsupported(format!("{mu} is not a hook; I_μ is not Demazure-stable")));
    };
    let n = mu.size();
    let ideal = tanisaki_ideal(mu, top_degree(n) + 1)?;
    atom_module(&ideal.ring, &hook.coarsenings())
}

/// `π̄_w x_{D(α)} = 0` whenever `w` has a descent outside `D(α)`.
pub fn check_block_vanishing(n: usize) -> Result<usize> {
    let limits = Limits::default();
    let mut checked = 0;
    for a in compositions_of(n, &limits)? {
        let x = x_subset(&a.descents(), n);
        let d = a.descent_set();
        for w in crate::combinat::permutations(n, &limits)? {
            if w.descents().iter().all(|j| d.contains(j)) {
                continue;
            }
            checked += 1;
            if !x.demazure_bar_perm(&w).is_zero() {
                return inconsistent(format!("π̄_{w:?} x_D({a}) is nonzero"));
            }
        }
    }
    Ok(checked)
}

/// One row of a decomposition report.
#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub alpha: Composition,
    pub degree_offset: u32,
    pub dimension: usize,
    pub isomorphism_witness_checksum: Option<String>,
}

impl AtomBasisModule {
    pub fn block_module(&self, b: usize) -> Result<FiniteModule<Rationals>> {
        let blk = &self.blocks[b];
        let idx: Vec<usize> = (blk.start..blk.start + blk.perms.len()).collect();
        let f = Rationals;
        let mut m = coordinate_restriction(&self.module, &idx);
        let deg = self.module.degree.as_ref().unwrap();
        let len = self.module.length.as_ref().unwrap();
        let mut e = vec![f.zero(); idx.len()];
        e[0] = f.one();
        m = m
            .with_degree(idx.iter().map(|&k| deg[k]).collect())?
            .with_length(idx.iter().map(|&k| len[k]).collect())?
            .with_cyclic(e)?;
        Ok(m)
    }

    /// Witnesses `P_α ≅ block` for every block, with their reports.
    pub fn decomposition(&self, seed: u64) -> Result<(Vec<BlockReport>, Vec<Option<Matrix<BigRational>>>)> {
        let limits = Limits::default();
        let mut reports = Vec::new();
        let mut witnesses = Vec::new();
        for (b, blk) in self.blocks.iter().enumerate() {
            let block = self.block_module(b)?;
            let p = projective_module(&blk.alpha, &limits)?;
            let x = module_isomorphic(&p, &block, seed);
            reports.push(BlockReport {
                alpha: blk.alpha.clone(),
                degree_offset: blk.alpha.maj() as u32,
                dimension: blk.perms.len(),
                isomorphism_witness_checksum: x.as_ref().map(matrix_checksum),
            });
            witnesses.push(x);
        }
        Ok((reports, witnesses))
    }

    /// `Ch_{q,t}`, summing the blocks; the cyclic filtration of each block starts at `inv(w_0(α))`.
    pub fn bigraded_characteristic(&self) -> Result<QSymElement> {
        let mut total = QSymElement::zero(self.n, crate::charmap::QBasis::F);
        for b in 0..self.blocks.len() {
            total = total.add(&characteristic(&self.block_module(b)?, Mode::Qt)?)?;
        }
        Ok(total)
    }

    /// As [`Self::bigraded_characteristic`] but from the stored relative lengths plus `inv(w_0(α))`.
    pub fn bigraded_characteristic_from_lengths(&self) -> Result<QSymElement> {
        let mut total = QSymElement::zero(self.n, crate::charmap::QBasis::F);
        for (b, blk) in self.blocks.iter().enumerate() {
            let mut m = self.block_module(b)?;
            m.cyclic = None;
            let offset = blk.perms[0].inv() as u64;
            total = total.add(&crate::charmap::characteristic_with_offset(&m, Mode::Qt, offset)?)?;
        }
        Ok(total)
    }

    /// `ch_t = Σ t^{maj α} s_α` over the blocks.
    pub fn noncommutative_characteristic(&self) -> Result<NSymElement> {
        let dec: Vec<(Composition, u64)> = self
            .blocks
            .iter()
            .map(|b| (b.alpha.clone(), b.alpha.maj() as u64))
            .collect();
        noncommutative_characteristic(self.n, &dec)
    }
}

/// `Ch_{q,t}` of the coinvariant algebra, checked against `Σ_w t^{maj w} q^{inv w} F_{D(w⁻¹)}`.
pub fn bigraded_characteristic_coinvariant(n: usize) -> Result<QSymElement> {
    let m = coinvariant_module(n)?;
    let computed = m.bigraded_characteristic()?;
    let closed = bigraded_closed_form(n, &Limits::default())?;
    if computed != closed {
        return inconsistent(format!("module gives {computed}, closed form gives {closed}"));
    }
    Ok(computed)
}
