//! The 0-Hecke algebra, its matrix-presented modules and composition factors.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinat::{
    compositions_of, descent_class, permutations, Composition, Permutation, Tableau,
};
use crate::error::{inconsistent, invalid, Limits, Result};
use crate::linalg::{combine, common_kernel, rref_rows, Field, Matrix, Rationals, Subspace};
use crate::qtarith::BiPoly;

/// `Σ c_w T_w` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    terms: BTreeMap<Permutation, BigRational>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        HeckeElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn t(w: &Permutation) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w.clone(), BigRational::one());
        HeckeElement { n: w.n(), terms }
    }

    pub fn identity(n: usize) -> Self {
        HeckeElement::t(&Permutation::identity(n))
    }

    pub fn generator(n: usize, i: usize) -> Self {
        HeckeElement::t(&Permutation::identity(n).left_mul_s(i))
    }

    /// `T'_i = T_i + 1`.
    pub fn generator_prime(n: usize, i: usize) -> Self {
        &HeckeElement::generator(n, i) + &HeckeElement::identity(n)
    }

    /// `T_w` rebuilt as a product of generators along a reduced word.
    pub fn t_word(n: usize, word: &[usize]) -> Self {
        word.iter()
            .fold(HeckeElement::identity(n), |acc, &i| &acc * &HeckeElement::generator(n, i))
    }

    /// `T'_w = T'_{i_1} ⋯ T'_{i_k}`.
    pub fn t_prime(w: &Permutation) -> Self {
        let n = w.n();
        w.reduced_word()
            .iter()
            .fold(HeckeElement::identity(n), |acc, &i| &acc * &HeckeElement::generator_prime(n, i))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Permutation) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Permutation, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    /// `T_i · self`.
    pub fn left_mul_generator(&self, i: usize) -> Self {
        let mut out = HeckeElement::zero(self.n);
        for (w, c) in &self.terms {
            if w.has_left_descent(i) {
                out.add_term(w.clone(), -c.clone());
            } else {
                out.add_term(w.left_mul_s(i), c.clone());
            }
        }
        out
    }

    /// Coordinates in the `T_w` basis, indexed by `basis`.
    pub fn to_vector(&self, index: &HashMap<Permutation, usize>) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); index.len()];
        for (w, c) in &self.terms {
            v[index[w]] = c.clone();
        }
        v
    }
}

impl std::ops::Add for &HeckeElement {
    type Output = HeckeElement;
    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Mul for &HeckeElement {
    type Output = HeckeElement;
    fn mul(self, rhs: &HeckeElement) -> HeckeElement {
        assert_eq!(self.n, rhs.n);
        let mut out = HeckeElement::zero(self.n);
        for (u, c) in &self.terms {
            // T_u · rhs = T_{i_1}(⋯(T_{i_k} rhs))
            let mut acc = rhs.clone();
            for &i in u.reduced_word().iter().rev() {
                acc = acc.left_mul_generator(i);
            }
            for (w, d) in acc.terms {
                out.add_term(w, c * d);
            }
        }
        out
    }
}

/// A finite-dimensional `H_n(0)`-module given by the matrices of `T_1, ..., T_{n-1}`.
#[derive(Clone, Debug)]
pub struct FiniteModule<F: Field> {
    pub field: F,
    pub n: usize,
    pub dim: usize,
    pub generators: Vec<Matrix<F::Elem>>,
    /// Degree of each basis vector; the generators preserve it.
    pub degree: Option<Vec<u32>>,
    /// Length of each basis vector; each span of the vectors of length `≥ ℓ` is a submodule.
    pub length: Option<Vec<u32>>,
    pub cyclic: Option<Vec<F::Elem>>,
}

impl<F: Field> FiniteModule<F> {
    /// Checks `T_i² = -T_i`, the braid relations and the commutations.
    pub fn new(field: F, n: usize, generators: Vec<Matrix<F::Elem>>) -> Result<Self> {
        let dim = generators.first().map_or(0, |g| g.nrows());
        let m = FiniteModule {
            field,
            n,
            dim,
            generators,
            degree: None,
            length: None,
            cyclic: None,
        };
        m.check_relations()?;
        Ok(m)
    }

    pub fn with_degree(mut self, degree: Vec<u32>) -> Result<Self> {
        if degree.len() != self.dim {
            return invalid("degree vector has the wrong length");
        }
        for (k, a) in self.generators.iter().enumerate() {
            for r in 0..self.dim {
                for c in 0..self.dim {
                    if degree[r] != degree[c] && !self.field.is_zero(a.get(r, c)) {
                        return invalid(format!("T_{} does not preserve the degree grading", k + 1));
                    }
                }
            }
        }
        self.degree = Some(degree);
        Ok(self)
    }

    pub fn with_length(mut self, length: Vec<u32>) -> Result<Self> {
        if length.len() != self.dim {
            return invalid("length vector has the wrong length");
        }
        for (k, a) in self.generators.iter().enumerate() {
            for r in 0..self.dim {
                for c in 0..self.dim {
                    if length[r] < length[c] && !self.field.is_zero(a.get(r, c)) {
                        return invalid(format!("T_{} lowers the length filtration", k + 1));
                    }
                }
            }
        }
        self.length = Some(length);
        Ok(self)
    }

    pub fn with_cyclic(mut self, v: Vec<F::Elem>) -> Result<Self> {
        if v.len() != self.dim {
            return invalid("cyclic vector has the wrong length");
        }
        let span = orbit_span(&self, &v);
        if span.dim() != self.dim {
            return invalid(format!(
                "vector generates a submodule of dimension {} < {}",
                span.dim(),
                self.dim
            ));
        }
        self.cyclic = Some(v);
        Ok(self)
    }

    pub fn check_relations(&self) -> Result<()> {
        let f = &self.field;
        if self.generators.len() != self.n.saturating_sub(1) {
            return invalid(format!(
                "expected {} generator matrices, found {}",
                self.n.saturating_sub(1),
                self.generators.len()
            ));
        }
        for a in &self.generators {
            if a.nrows() != self.dim || a.ncols() != self.dim {
                return invalid("generator matrices must be square of the module dimension");
            }
        }
        let g = &self.generators;
        for i in 0..g.len() {
            let sq = g[i].mul(f, &g[i]);
            if sq.add(f, &g[i]) != Matrix::zeros(f, self.dim, self.dim) {
                return inconsistent(format!("T_{}^2 != -T_{}", i + 1, i + 1));
            }
            if i + 1 < g.len() {
                let lhs = g[i].mul(f, &g[i + 1]).mul(f, &g[i]);
                let rhs = g[i + 1].mul(f, &g[i]).mul(f, &g[i + 1]);
                if lhs != rhs {
                    return inconsistent(format!("braid relation fails at i = {}", i + 1));
                }
            }
            for j in i + 2..g.len() {
                if g[i].mul(f, &g[j]) != g[j].mul(f, &g[i]) {
                    return inconsistent(format!("T_{} and T_{} do not commute", i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    pub fn act(&self, i: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        self.generators[i - 1].mul_vec(&self.field, v)
    }

    /// `T_w v` for every `w ∈ S_n`.
    pub fn orbit(&self, v: &[F::Elem]) -> BTreeMap<Permutation, Vec<F::Elem>> {
        let mut out: BTreeMap<Permutation, Vec<F::Elem>> = BTreeMap::new();
        let mut perms = permutations(self.n, &Limits { max_n: 20, ..Limits::default() })
            .expect("n within the permutation cap");
        perms.sort_by_key(|w| w.inv());
        for w in perms {
            let image = match w.reduced_word().first() {
                None => v.to_vec(),
                Some(&i) => {
                    let rest: &Vec<F::Elem> = &out[&w.left_mul_s(i)];
                    self.act(i, rest)
                }
            };
            out.insert(w, image);
        }
        out
    }

    /// Module structure on an invariant subspace, in its echelon basis.
    pub fn restrict(&self, sub: &Subspace<F>) -> Result<FiniteModule<F>> {
        let basis = sub.basis().to_vec();
        let mut gens = Vec::with_capacity(self.generators.len());
        for a in &self.generators {
            let images: Vec<Vec<F::Elem>> = basis.iter().map(|b| a.mul_vec(&self.field, b)).collect();
            let Some(coords) = coordinates_in_basis(&self.field, &basis, &images, self.dim) else {
                return invalid("subspace is not invariant");
            };
            gens.push(Matrix::from_columns(&coords, basis.len()));
        }
        let mut m = FiniteModule::new(self.field.clone(), self.n, gens)?;
        m.dim = basis.len();
        if let Some(deg) = &self.degree {
            if let Some(d) = homogeneous_degrees(&self.field, &basis, deg) {
                m = m.with_degree(d)?;
            }
        }
        Ok(m)
    }

    /// The action on `upper / lower` for invariant subspaces `lower ⊆ upper`.
    pub fn subquotient(&self, upper: &Subspace<F>, lower: &Subspace<F>) -> Result<FiniteModule<F>> {
        let f = &self.field;
        let mut span = lower.clone();
        let mut complement = Vec::new();
        for v in upper.basis() {
            if span.insert(v) {
                complement.push(v.clone());
            }
        }
        let k = lower.dim();
        let mut basis: Vec<Vec<F::Elem>> = lower.basis().to_vec();
        basis.extend(complement.iter().cloned());
        let mut gens = Vec::with_capacity(self.generators.len());
        for a in &self.generators {
            let images: Vec<Vec<F::Elem>> = complement.iter().map(|b| a.mul_vec(f, b)).collect();
            let Some(coords) = coordinates_in_basis(f, &basis, &images, self.dim) else {
                return invalid("upper subspace is not invariant");
            };
            let cols: Vec<Vec<F::Elem>> = coords.into_iter().map(|c| c[k..].to_vec()).collect();
            gens.push(Matrix::from_columns(&cols, complement.len()));
        }
        let mut m = if complement.is_empty() {
            FiniteModule {
                field: f.clone(),
                n: self.n,
                dim: 0,
                generators: vec![Matrix::zeros(f, 0, 0); self.n.saturating_sub(1)],
                degree: None,
                length: None,
                cyclic: None,
            }
        } else {
            FiniteModule::new(f.clone(), self.n, gens)?
        };
        m.dim = complement.len();
        if let Some(deg) = &self.degree {
            if let Some(d) = homogeneous_degrees(f, &complement, deg) {
                m = m.with_degree(d)?;
            }
        }
        Ok(m)
    }

    /// The dual module on row vectors, `f ↦ f ∘ T_i`.
    pub fn dual(&self) -> FiniteModule<F> {
        FiniteModule {
            field: self.field.clone(),
            n: self.n,
            dim: self.dim,
            generators: self.generators.iter().map(|a| a.transpose()).collect(),
            degree: self.degree.clone(),
            length: None,
            cyclic: None,
        }
    }

    /// Direct sum with block-diagonal generators.
    pub fn direct_sum(&self, other: &FiniteModule<F>) -> Result<FiniteModule<F>> {
        if self.n != other.n {
            return invalid("direct sum of modules for different n");
        }
        let f = &self.field;
        let d = self.dim + other.dim;
        let gens = self
            .generators
            .iter()
            .zip(&other.generators)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(f, d, d);
                for r in 0..self.dim {
                    for c in 0..self.dim {
                        m.set(r, c, a.get(r, c).clone());
                    }
                }
                for r in 0..other.dim {
                    for c in 0..other.dim {
                        m.set(self.dim + r, self.dim + c, b.get(r, c).clone());
                    }
                }
                m
            })
            .collect();
        let mut m = FiniteModule::new(f.clone(), self.n, gens)?;
        if let (Some(a), Some(b)) = (&self.degree, &other.degree) {
            m = m.with_degree(a.iter().chain(b).copied().collect())?;
        }
        Ok(m)
    }

    fn kernel_of(&self, indices: &[usize], shift: Option<usize>) -> Subspace<F> {
        let f = &self.field;
        let mats: Vec<Matrix<F::Elem>> = indices
            .iter()
            .map(|&i| {
                let a = self.generators[i - 1].clone();
                if shift.is_some() {
                    a.add(f, &Matrix::identity(f, self.dim))
                } else {
                    a
                }
            })
            .collect();
        let refs: Vec<&Matrix<F::Elem>> = mats.iter().collect();
        common_kernel(f, self.dim, &refs)
    }

    /// `Q_β = ⋂_{j ∉ D(β)} ker T_j`.
    pub fn q_space(&self, beta: &Composition) -> Subspace<F> {
        let d = beta.descent_set();
        let outside: Vec<usize> = (1..self.n).filter(|j| !d.contains(j)).collect();
        self.kernel_of(&outside, None)
    }

    /// Vectors spanning copies of `C_γ`: `T_i v = -v` for `i ∈ D(γ)`, `T_i v = 0` otherwise.
    pub fn simple_eigenspace(&self, gamma: &Composition) -> Subspace<F> {
        let d = gamma.descent_set();
        let inside: Vec<usize> = (1..self.n).filter(|j| d.contains(j)).collect();
        let outside: Vec<usize> = (1..self.n).filter(|j| !d.contains(j)).collect();
        self.kernel_of(&inside, Some(1))
            .intersect(&self.kernel_of(&outside, None))
    }
}

fn homogeneous_degrees<F: Field>(f: &F, vectors: &[Vec<F::Elem>], deg: &[u32]) -> Option<Vec<u32>> {
    vectors
        .iter()
        .map(|v| {
            let mut ds = v
                .iter()
                .zip(deg)
                .filter(|(x, _)| !f.is_zero(x))
                .map(|(_, &d)| d);
            let first = ds.next()?;
            ds.all(|d| d == first).then_some(first)
        })
        .collect()
}

/// Solves `basis · c = target` for each target; `None` if some target is outside the span.
pub fn coordinates_in_basis<F: Field>(
    f: &F,
    basis: &[Vec<F::Elem>],
    targets: &[Vec<F::Elem>],
    dim: usize,
) -> Option<Vec<Vec<F::Elem>>> {
    let k = basis.len();
    let m = targets.len();
    let mut rows: Vec<Vec<F::Elem>> = (0..dim)
        .map(|r| {
            basis
                .iter()
                .map(|b| b[r].clone())
                .chain(targets.iter().map(|t| t[r].clone()))
                .collect()
        })
        .collect();
    let pivots = rref_rows(f, &mut rows, k + m);
    if pivots.iter().any(|&p| p >= k) {
        return None;
    }
    if pivots.len() < k {
        panic!("basis vectors are linearly dependent");
    }
    Some(
        (0..m)
            .map(|j| (0..k).map(|i| rows[i][k + j].clone()).collect())
            .collect(),
    )
}

/// Span of `{T_w v}`.
pub fn orbit_span<F: Field>(m: &FiniteModule<F>, v: &[F::Elem]) -> Subspace<F> {
    let mut span = Subspace::zero(&m.field, m.dim);
    let mut frontier = vec![v.to_vec()];
    span.insert(v);
    while let Some(u) = frontier.pop() {
        for i in 1..m.n {
            let w = m.act(i, &u);
            if span.insert(&w) {
                frontier.push(w);
            }
        }
    }
    span
}

fn rational_module(n: usize, gens: Vec<Matrix<BigRational>>, dim: usize) -> Result<FiniteModule<Rationals>> {
    let mut m = FiniteModule::new(Rationals, n, gens)?;
    m.dim = dim;
    Ok(m)
}

/// The ribbon tableaux of `α`, in descent-class order (column filling first).
pub fn ribbon_basis(alpha: &Composition, limits: &Limits) -> Result<Vec<Tableau>> {
    descent_class(alpha, limits)?
        .iter()
        .map(|w| Tableau::from_reading_word(alpha, w.images()))
        .collect()
}

/// `P_α` on standard ribbon tableaux: `T_i τ = -τ` if `i` sits in a higher row than
/// `i+1`, `0` if in the same row, and `s_i τ` if in a lower row.
pub fn projective_module(alpha: &Composition, limits: &Limits) -> Result<FiniteModule<Rationals>> {
    let n = alpha.size();
    let basis = ribbon_basis(alpha, limits)?;
    let index: HashMap<Vec<Vec<usize>>, usize> =
        basis.iter().enumerate().map(|(k, t)| (t.rows.clone(), k)).collect();
    let d = basis.len();
    let f = Rationals;
    let mut gens = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let mut a = Matrix::zeros(&f, d, d);
        for (c, t) in basis.iter().enumerate() {
            let (ri, rj) = (t.row_index(i), t.row_index(i + 1));
            if ri < rj {
                a.set(c, c, f.from_i64(-1));
            } else if ri > rj {
                let s = t.swap_entries(i);
                let Some(&r) = index.get(&s.rows) else {
                    return inconsistent(format!("s_{i} applied to {:?} leaves the ribbon basis", t.rows));
                };
                a.set(r, c, f.one());
            }
        }
        gens.push(a);
    }
    let mut e0 = vec![f.zero(); d];
    e0[0] = f.one();
    rational_module(n, gens, d)?.with_cyclic(e0)
}

/// The one-dimensional `C_α`: `T_i = -1` for `i ∈ D(α)`, else `0`.
pub fn simple_module(alpha: &Composition) -> Result<FiniteModule<Rationals>> {
    simple_module_over(&Rationals, alpha)
}

pub fn simple_module_over<F: Field>(f: &F, alpha: &Composition) -> Result<FiniteModule<F>> {
    let n = alpha.size();
    let d = alpha.descent_set();
    let gens = (1..n)
        .map(|i| Matrix::from_rows(vec![vec![if d.contains(&i) { f.from_i64(-1) } else { f.zero() }]], 1))
        .collect();
    let mut m = FiniteModule::new(f.clone(), n, gens)?;
    m.dim = 1;
    m.with_cyclic(vec![f.one()])
}

/// `H_n(0)` acting on itself by left multiplication, basis `T_w` in lexicographic order.
pub fn regular_module(n: usize, limits: &Limits) -> Result<FiniteModule<Rationals>> {
    let perms = permutations(n, limits)?;
    let index: HashMap<Permutation, usize> =
        perms.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
    let d = perms.len();
    let f = Rationals;
    let mut gens = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let mut a = Matrix::zeros(&f, d, d);
        for (c, w) in perms.iter().enumerate() {
            if w.has_left_descent(i) {
                a.set(c, c, f.from_i64(-1));
            } else {
                a.set(index[&w.left_mul_s(i)], c, f.one());
            }
        }
        gens.push(a);
    }
    let lengths = perms.iter().map(|w| w.inv() as u32).collect();
    let mut e = vec![f.zero(); d];
    e[0] = f.one();
    rational_module(n, gens, d)?.with_length(lengths)?.with_cyclic(e)
}

pub fn regular_index(n: usize, limits: &Limits) -> Result<HashMap<Permutation, usize>> {
    Ok(permutations(n, limits)?
        .into_iter()
        .enumerate()
        .map(|(k, w)| (w, k))
        .collect())
}

/// The submodule `H_n(0) T_{w_0(α)} T'_{w_0(α^c)}` of the regular module.
#[derive(Clone, Debug)]
pub struct NortonSummand {
    pub alpha: Composition,
    pub generator: Vec<BigRational>,
    pub span: Subspace<Rationals>,
    pub module: FiniteModule<Rationals>,
}

pub fn norton_summand(alpha: &Composition, limits: &Limits) -> Result<NortonSummand> {
    let n = alpha.size();
    let regular = regular_module(n, limits)?;
    let index = regular_index(n, limits)?;
    let g = &HeckeElement::t(&alpha.w0()) * &HeckeElement::t_prime(&alpha.complement().w0());
    let gv = g.to_vector(&index);
    let span = orbit_span(&regular, &gv);
    let mut module = regular.restrict(&span)?;
    let coords = coordinates_in_basis(&Rationals, span.basis(), std::slice::from_ref(&gv), regular.dim)
        .expect("generator lies in its own span");
    module = module.with_cyclic(coords.into_iter().next().unwrap())?;
    Ok(NortonSummand {
        alpha: alpha.clone(),
        generator: gv,
        span,
        module,
    })
}

/// Graded multiplicities `c_α = Σ_{β ≼ α} (-1)^{ℓ(α)-ℓ(β)} Hilb(Q_β, t)`, for every `α ⊨ n`.
pub fn composition_factors<F: Field>(m: &FiniteModule<F>) -> Result<BTreeMap<Composition, BiPoly>> {
    let limits = Limits {
        max_n: m.n.max(1),
        ..Limits::default()
    };
    let comps = compositions_of(m.n.max(1), &limits)?;
    let mut hilb: BTreeMap<Composition, BiPoly> = BTreeMap::new();
    let degree_blocks: Vec<(u32, Vec<usize>)> = match &m.degree {
        None => vec![(0, (0..m.dim).collect())],
        Some(deg) => {
            let mut blocks: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
            for (k, &d) in deg.iter().enumerate() {
                blocks.entry(d).or_default().push(k);
            }
            blocks.into_iter().collect()
        }
    };
    let pieces: Vec<(u32, FiniteModule<F>)> = degree_blocks
        .into_iter()
        .map(|(d, idx)| (d, coordinate_restriction(m, &idx)))
        .collect();
    for beta in &comps {
        let mut h = BiPoly::zero();
        for (d, piece) in &pieces {
            let dim = piece.q_space(beta).dim();
            h = &h + &BiPoly::monomial(0, *d as u64, dim as u64);
        }
        hilb.insert(beta.clone(), h);
    }
    let mut out = BTreeMap::new();
    for alpha in &comps {
        let mut c = BiPoly::zero();
        for beta in alpha.coarsenings() {
            let h = &hilb[&beta];
            c = if (alpha.len() - beta.len()) % 2 == 1 { &c - h } else { &c + h };
        }
        if c.terms().any(|(_, v)| v < &BigInt::zero()) {
            return inconsistent(format!("negative multiplicity {c} for {alpha}"));
        }
        out.insert(alpha.clone(), c);
    }
    Ok(out)
}

/// Ungraded multiplicities as integers.
pub fn composition_multiplicities<F: Field>(m: &FiniteModule<F>) -> Result<BTreeMap<Composition, u64>> {
    let mut ungraded = m.clone();
    ungraded.degree = None;
    Ok(composition_factors(&ungraded)?
        .into_iter()
        .map(|(a, p)| {
            let v = p.eval(&BigInt::one(), &BigInt::one());
            (a, u64::try_from(v).unwrap_or(0))
        })
        .collect())
}

/// Restriction to a set of coordinates whose span is invariant, or more generally the
/// action on `span(keep)` modulo the remaining coordinates when that span is invariant.
pub fn coordinate_restriction<F: Field>(m: &FiniteModule<F>, idx: &[usize]) -> FiniteModule<F> {
    let gens = m
        .generators
        .iter()
        .map(|a| {
            Matrix::from_rows(
                idx.iter()
                    .map(|&r| idx.iter().map(|&c| a.get(r, c).clone()).collect())
                    .collect(),
                idx.len(),
            )
        })
        .collect();
    FiniteModule {
        field: m.field.clone(),
        n: m.n,
        dim: idx.len(),
        generators: gens,
        degree: None,
        length: None,
        cyclic: None,
    }
}

/// Composition factors by repeatedly splitting off the socle.
pub fn socle_series_multiplicities<F: Field>(
    m: &FiniteModule<F>,
) -> Result<BTreeMap<Composition, u64>> {
    let limits = Limits {
        max_n: m.n.max(1),
        ..Limits::default()
    };
    let comps = compositions_of(m.n.max(1), &limits)?;
    let mut out: BTreeMap<Composition, u64> = comps.iter().map(|a| (a.clone(), 0)).collect();
    let mut current = m.clone();
    current.degree = None;
    while current.dim > 0 {
        let mut socle = Subspace::zero(&current.field, current.dim);
        for g in &comps {
            let s = current.simple_eigenspace(g);
            *out.get_mut(g).unwrap() += s.dim() as u64;
            socle = socle.sum(&s);
        }
        if socle.dim() == 0 {
            return inconsistent("nonzero module with zero socle");
        }
        let full = Subspace::full(&current.field, current.dim);
        current = current.subquotient(&full, &socle)?;
    }
    Ok(out)
}

/// Multiplicities of the simple summands of the socle.
pub fn socle_multiplicities<F: Field>(m: &FiniteModule<F>) -> Result<BTreeMap<Composition, u64>> {
    let comps = compositions_of(m.n.max(1), &Limits { max_n: m.n.max(1), ..Limits::default() })?;
    Ok(comps
        .into_iter()
        .map(|g| {
            let d = m.simple_eigenspace(&g).dim() as u64;
            (g, d)
        })
        .filter(|(_, d)| *d > 0)
        .collect())
}

/// Multiplicities of the simple summands of the top `M / rad M`, via the dual.
pub fn top_multiplicities<F: Field>(m: &FiniteModule<F>) -> Result<BTreeMap<Composition, u64>> {
    socle_multiplicities(&m.dual())
}

/// Length filtration `M^{(ℓ)} = span{T_w v : ℓ(w) ≥ ℓ}` of a cyclic module.
pub fn cyclic_length_filtration<F: Field>(m: &FiniteModule<F>) -> Result<Vec<Subspace<F>>> {
    let Some(v) = &m.cyclic else {
        return invalid("module has no distinguished cyclic vector");
    };
    let orbit = m.orbit(v);
    let max = orbit.keys().map(|w| w.inv()).max().unwrap_or(0);
    let mut levels = Vec::with_capacity(max + 2);
    for l in 0..=max + 1 {
        let vecs: Vec<Vec<F::Elem>> = orbit
            .iter()
            .filter(|(w, _)| w.inv() >= l)
            .map(|(_, x)| x.clone())
            .collect();
        levels.push(Subspace::span(&m.field, m.dim, &vecs));
    }
    if levels[0].dim() != m.dim {
        return invalid("distinguished vector does not generate the module");
    }
    Ok(levels)
}

/// Filtration by the declared length grading.
pub fn coordinate_length_filtration<F: Field>(m: &FiniteModule<F>) -> Result<Vec<Subspace<F>>> {
    let Some(len) = &m.length else {
        return invalid("module has no length grading");
    };
    let max = len.iter().copied().max().unwrap_or(0);
    Ok((0..=max + 1)
        .map(|l| coordinate_span(&m.field, m.dim, |k| len[k] >= l))
        .collect())
}

fn coordinate_span<F: Field>(f: &F, dim: usize, keep: impl Fn(usize) -> bool) -> Subspace<F> {
    let vecs: Vec<Vec<F::Elem>> = (0..dim)
        .filter(|&k| keep(k))
        .map(|k| {
            let mut v = vec![f.zero(); dim];
            v[k] = f.one();
            v
        })
        .collect();
    Subspace::span(f, dim, &vecs)
}

/// `Σ_ℓ q^ℓ · factors(M^{(ℓ)} / M^{(ℓ+1)})`, optionally refined by the degree
/// filtration into `q^ℓ t^d` pieces `M^{(ℓ,d)} / (M^{(ℓ+1,d)} + M^{(ℓ,d+1)})`.
pub fn filtered_factors<F: Field>(
    m: &FiniteModule<F>,
    levels: &[Subspace<F>],
    with_degree: bool,
    length_offset: u64,
) -> Result<BTreeMap<Composition, BiPoly>> {
    let f = &m.field;
    let degree_levels: Vec<(u32, Subspace<F>)> = match (&m.degree, with_degree) {
        (Some(deg), true) => {
            let max = deg.iter().copied().max().unwrap_or(0);
            (0..=max + 1)
                .map(|d| (d, coordinate_span(f, m.dim, |k| deg[k] >= d)))
                .collect()
        }
        (None, true) => return invalid("module has no degree grading"),
        (_, false) => vec![
            (0, Subspace::full(f, m.dim)),
            (1, Subspace::zero(f, m.dim)),
        ],
    };
    let mut out: BTreeMap<Composition, BiPoly> = BTreeMap::new();
    for l in 0..levels.len() - 1 {
        for k in 0..degree_levels.len() - 1 {
            let (d, md) = &degree_levels[k];
            let (_, md1) = &degree_levels[k + 1];
            let upper = levels[l].intersect(md);
            if upper.dim() == 0 {
                continue;
            }
            let lower = levels[l + 1].intersect(md).sum(&levels[l].intersect(md1));
            if upper.dim() == lower.dim() {
                continue;
            }
            let mut piece = m.subquotient(&upper, &lower)?;
            piece.degree = None;
            for (alpha, c) in composition_multiplicities(&piece)? {
                if c == 0 {
                    continue;
                }
                let term = BiPoly::monomial(l as u64 + length_offset, *d as u64, c);
                let slot = out.entry(alpha).or_default();
                *slot = &*slot + &term;
            }
        }
    }
    Ok(out)
}

/// Searches for an invertible `X` with `X A_i = B_i X`, i.e. an isomorphism `M → N`.
pub fn module_isomorphic(
    m: &FiniteModule<Rationals>,
    n: &FiniteModule<Rationals>,
    seed: u64,
) -> Option<Matrix<BigRational>> {
    if m.n != n.n || m.dim != n.dim {
        return None;
    }
    let f = Rationals;
    let d = m.dim;
    if d == 0 {
        return Some(Matrix::zeros(&f, 0, 0));
    }
    let candidates: Vec<Matrix<BigRational>> = match (&m.cyclic, &n.cyclic) {
        (Some(_), _) => cyclic_homs(m, n),
        (None, Some(_)) => {
            // invert an isomorphism N → M
            let x = pick_invertible(&cyclic_homs(n, m), seed)?.inverse(&f)?;
            return verify_intertwiner(m, n, &x).then_some(x);
        }
        (None, None) => general_homs(m, n),
    };
    pick_invertible(&candidates, seed).filter(|x| verify_intertwiner(m, n, x))
}

/// `X A_i = B_i X` for all `i` and `X` invertible.
pub fn verify_intertwiner(
    m: &FiniteModule<Rationals>,
    n: &FiniteModule<Rationals>,
    x: &Matrix<BigRational>,
) -> bool {
    let f = Rationals;
    x.nrows() == n.dim
        && x.ncols() == m.dim
        && m.generators
            .iter()
            .zip(&n.generators)
            .all(|(a, b)| x.mul(&f, a) == b.mul(&f, x))
        && x.inverse(&f).is_some()
}

fn pick_invertible(basis: &[Matrix<BigRational>], seed: u64) -> Option<Matrix<BigRational>> {
    let f = Rationals;
    if basis.is_empty() {
        return None;
    }
    if basis.len() == 1 {
        return basis[0].inverse(&f).map(|_| basis[0].clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..32 {
        let mut x = Matrix::zeros(&f, basis[0].nrows(), basis[0].ncols());
        for b in basis {
            let c: i64 = rng.random_range(-50..=50);
            x = x.add(&f, &b.scale(&f, &f.from_i64(c)));
        }
        if x.inverse(&f).is_some() {
            return Some(x);
        }
    }
    None
}

/// Basis of `Hom(M, N)` for cyclic `M = H v`, via `u = φ(v)` killed by the annihilator of `v`.
fn cyclic_homs(m: &FiniteModule<Rationals>, n: &FiniteModule<Rationals>) -> Vec<Matrix<BigRational>> {
    let f = Rationals;
    let v = m.cyclic.as_ref().unwrap();
    let orbit: Vec<(Permutation, Vec<BigRational>)> = m.orbit(v).into_iter().collect();
    // annihilator: coefficient vectors c with Σ c_w T_w v = 0
    let cols: Vec<Vec<BigRational>> = orbit.iter().map(|(_, x)| x.clone()).collect();
    let ann = Matrix::from_columns(&cols, m.dim).nullspace(&f);
    // images T_w e_k in N for each coordinate vector e_k, as a linear map in u
    let unit_orbits: Vec<BTreeMap<Permutation, Vec<BigRational>>> = (0..n.dim)
        .map(|k| {
            let mut e = vec![f.zero(); n.dim];
            e[k] = f.one();
            n.orbit(&e)
        })
        .collect();
    let perms: Vec<&Permutation> = orbit.iter().map(|(w, _)| w).collect();
    // T_w as a matrix on N: column k is T_w e_k
    let tw: Vec<Matrix<BigRational>> = perms
        .iter()
        .map(|w| {
            let columns: Vec<Vec<BigRational>> = unit_orbits.iter().map(|o| o[*w].clone()).collect();
            Matrix::from_columns(&columns, n.dim)
        })
        .collect();
    let mut eqs: Vec<Vec<BigRational>> = Vec::new();
    for c in &ann {
        let mut acc = Matrix::zeros(&f, n.dim, n.dim);
        for (coef, t) in c.iter().zip(&tw) {
            if !coef.is_zero() {
                acc = acc.add(&f, &t.scale(&f, coef));
            }
        }
        eqs.extend(acc.to_rows());
    }
    let sols = if eqs.is_empty() {
        Subspace::full(&f, n.dim).basis().to_vec()
    } else {
        Matrix::from_rows(eqs, n.dim).nullspace(&f)
    };
    // choose w's whose T_w v form a basis of M
    let mut chosen = Vec::new();
    let mut span = Subspace::zero(&f, m.dim);
    for (k, (_, x)) in orbit.iter().enumerate() {
        if span.insert(x) {
            chosen.push(k);
        }
    }
    let vmat = Matrix::from_columns(&chosen.iter().map(|&k| orbit[k].1.clone()).collect::<Vec<_>>(), m.dim);
    let vinv = vmat.inverse(&f).expect("orbit basis is invertible");
    sols.iter()
        .map(|u| {
            let cols: Vec<Vec<BigRational>> = chosen.iter().map(|&k| tw[k].mul_vec(&f, u)).collect();
            Matrix::from_columns(&cols, n.dim).mul(&f, &vinv)
        })
        .collect()
}

/// Basis of `Hom(M, N)` by solving `X A_i = B_i X` directly.
fn general_homs(m: &FiniteModule<Rationals>, n: &FiniteModule<Rationals>) -> Vec<Matrix<BigRational>> {
    let f = Rationals;
    let (dm, dn) = (m.dim, n.dim);
    let var = |r: usize, k: usize| r * dm + k;
    let mut eqs = Vec::new();
    for (a, b) in m.generators.iter().zip(&n.generators) {
        for r in 0..dn {
            for c in 0..dm {
                let mut row = vec![f.zero(); dn * dm];
                for k in 0..dm {
                    row[var(r, k)] = f.add(&row[var(r, k)], a.get(k, c));
                }
                for k in 0..dn {
                    row[var(k, c)] = f.sub(&row[var(k, c)], b.get(r, k));
                }
                eqs.push(row);
            }
        }
    }
    Matrix::from_rows(eqs, dn * dm)
        .nullspace(&f)
        .into_iter()
        .map(|v| Matrix::from_rows(v.chunks(dm).map(|c| c.to_vec()).collect(), dm))
        .collect()
}

/// Random module built as an iterated extension of simples, with a random change of basis.
pub fn random_extension_module(n: usize, steps: usize, rng: &mut ChaCha8Rng) -> Result<FiniteModule<Rationals>> {
    let f = Rationals;
    let limits = Limits::default();
    let comps = compositions_of(n, &limits)?;
    let pick = |rng: &mut ChaCha8Rng| comps[rng.random_range(0..comps.len())].clone();
    let mut m = simple_module(&pick(rng))?;
    for _ in 1..steps {
        let s = simple_module(&pick(rng))?;
        m = if rng.random_bool(0.5) {
            random_extension(&m, &s, rng)?
        } else {
            random_extension(&s, &m, rng)?
        };
    }
    // hide the triangular shape
    let d = m.dim;
    let p = loop {
        let rows = (0..d)
            .map(|_| (0..d).map(|_| f.from_i64(rng.random_range(-3..=3))).collect())
            .collect();
        let p = Matrix::from_rows(rows, d);
        if p.inverse(&f).is_some() {
            break p;
        }
    };
    let pinv = p.inverse(&f).unwrap();
    let gens = m.generators.iter().map(|a| p.mul(&f, a).mul(&f, &pinv)).collect();
    rational_module(n, gens, d)
}

/// A random element of the space of extensions `0 → L → E → N → 0` with
/// `E` block upper triangular; the relations are linear in the corner blocks.
pub fn random_extension(
    l: &FiniteModule<Rationals>,
    nmod: &FiniteModule<Rationals>,
    rng: &mut ChaCha8Rng,
) -> Result<FiniteModule<Rationals>> {
    let f = Rationals;
    let n = l.n;
    let (dl, dn) = (l.dim, nmod.dim);
    let g = n - 1;
    let nv = g * dl * dn;
    let var = |i: usize, r: usize, c: usize| i * dl * dn + r * dn + c;
    let zero_row = || vec![f.zero(); nv];
    let a = &l.generators;
    let b = &nmod.generators;
    // corner of a product of block-triangular matrices as a linear form in X
    // (corner of M1 M2 ⋯ Mk = Σ_j L1⋯L_{j-1} X_j N_{j+1}⋯N_k)
    let corner_forms = |word: &[usize]| -> Vec<Vec<BigRational>> {
        let mut forms = vec![zero_row(); dl * dn];
        for j in 0..word.len() {
            let left = word[..j]
                .iter()
                .fold(Matrix::identity(&f, dl), |acc, &i| acc.mul(&f, &a[i]));
            let right = word[j + 1..]
                .iter()
                .fold(Matrix::identity(&f, dn), |acc, &i| acc.mul(&f, &b[i]));
            let i = word[j];
            // (left X_i right)_{rc} = Σ_{s,t} left_{rs} X_i{st} right_{tc}
            for r in 0..dl {
                for c in 0..dn {
                    let form = &mut forms[r * dn + c];
                    for s in 0..dl {
                        if left.get(r, s).is_zero() {
                            continue;
                        }
                        for t in 0..dn {
                            if right.get(t, c).is_zero() {
                                continue;
                            }
                            let v = var(i, s, t);
                            form[v] = &form[v] + left.get(r, s) * right.get(t, c);
                        }
                    }
                }
            }
        }
        forms
    };
    let mut eqs: Vec<Vec<BigRational>> = Vec::new();
    let sub = |x: Vec<Vec<BigRational>>, y: Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
        x.into_iter()
            .zip(y)
            .map(|(p, q)| p.iter().zip(&q).map(|(u, v)| u - v).collect())
            .collect()
    };
    for i in 0..g {
        // T_i^2 + T_i = 0
        let mut sq = corner_forms(&[i, i]);
        for r in 0..dl {
            for c in 0..dn {
                let v = var(i, r, c);
                sq[r * dn + c][v] = &sq[r * dn + c][v] + BigRational::one();
            }
        }
        eqs.extend(sq);
        if i + 1 < g {
            eqs.extend(sub(corner_forms(&[i, i + 1, i]), corner_forms(&[i + 1, i, i + 1])));
        }
        for j in i + 2..g {
            eqs.extend(sub(corner_forms(&[i, j]), corner_forms(&[j, i])));
        }
    }
    let sols = if eqs.is_empty() {
        Subspace::full(&f, nv).basis().to_vec()
    } else {
        Matrix::from_rows(eqs, nv).nullspace(&f)
    };
    let coef: Vec<BigRational> = sols
        .iter()
        .map(|_| f.from_i64(rng.random_range(-3..=3)))
        .collect();
    let x = combine(&f, &sols, &coef, nv);
    let d = dl + dn;
    let gens = (0..g)
        .map(|i| {
            let mut m = Matrix::zeros(&f, d, d);
            for r in 0..dl {
                for c in 0..dl {
                    m.set(r, c, a[i].get(r, c).clone());
                }
                for c in 0..dn {
                    m.set(r, dl + c, x[var(i, r, c)].clone());
                }
            }
            for r in 0..dn {
                for c in 0..dn {
                    m.set(dl + r, dl + c, b[i].get(r, c).clone());
                }
            }
            m
        })
        .collect();
    rational_module(n, gens, d)
}

/// One row of a factor report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub composition: Composition,
    pub multiplicity: BiPoly,
}

pub fn factor_entries(factors: &BTreeMap<Composition, BiPoly>) -> Vec<FactorEntry> {
    factors
        .iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(a, p)| FactorEntry {
            composition: a.clone(),
            multiplicity: p.clone(),
        })
        .collect()
}

/// Checksum of an exact matrix for reports.
pub fn matrix_checksum(x: &Matrix<BigRational>) -> String {
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    h.update(format!("{}x{}", x.nrows(), x.ncols()).as_bytes());
    for r in 0..x.nrows() {
        for c in 0..x.ncols() {
            h.update(crate::linalg::rational_string(x.get(r, c)).as_bytes());
            h.update(b",");
        }
    }
    let digest = h.finalize();
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtarith::{ribbon_number_q, q_factorial};

    fn c(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn hecke_multiplication() {
        let n = 3;
        for i in 1..n {
            let t = HeckeElement::generator(n, i);
            let sq = &t * &t;
            let mut neg = HeckeElement::zero(n);
            neg.add_term(Permutation::identity(n).left_mul_s(i), -BigRational::one());
            assert_eq!(sq, neg);
        }
        let (t1, t2) = (HeckeElement::generator(3, 1), HeckeElement::generator(3, 2));
        assert_eq!(&(&t1 * &t2) * &t1, &(&t2 * &t1) * &t2);
        // T_w = T_{i_1} ⋯ T_{i_k}
        for w in permutations(4, &l()).unwrap() {
            assert_eq!(HeckeElement::t_word(4, &w.reduced_word()), HeckeElement::t(&w));
        }
        let tp = HeckeElement::generator_prime(2, 1);
        assert_eq!(&tp * &tp, tp);
    }

    #[test]
    fn small_modules() {
        let p = projective_module(&c(&[3]), &l()).unwrap();
        assert_eq!(p.dim, 1);
        assert!(p.generators.iter().all(|a| a.is_zero(&Rationals)));
        let p = projective_module(&c(&[1, 1]), &l()).unwrap();
        assert_eq!(p.generators[0], Matrix::from_rows(vec![vec![Rationals.from_i64(-1)]], 1));
        let s = simple_module(&c(&[1, 1, 1])).unwrap();
        assert!(s.generators.iter().all(|a| a.get(0, 0) == &Rationals.from_i64(-1)));
        let r = regular_module(2, &l()).unwrap();
        let f = Rationals;
        let expected = Matrix::from_rows(vec![vec![f.zero(), f.zero()], vec![f.one(), f.from_i64(-1)]], 2);
        assert_eq!(r.generators[0], expected);
        assert!(regular_module(4, &l()).is_ok());
    }

    #[test]
    fn p121_diagram() {
        let a = c(&[1, 2, 1]);
        let p = projective_module(&a, &l()).unwrap();
        assert_eq!(p.dim, 5);
        let basis = ribbon_basis(&a, &l()).unwrap();
        // T_2 sends the column filling to the tableau with 2 and 3 exchanged
        let t2 = p.act(2, &[1, 0, 0, 0, 0].map(|x| Rationals.from_i64(x)));
        let target = basis.iter().position(|t| *t == basis[0].swap_entries(2)).unwrap();
        assert!(t2.iter().enumerate().all(|(k, x)| (k == target) == !x.is_zero()));
        let levels = cyclic_length_filtration(&p).unwrap();
        let dims: Vec<usize> = levels.windows(2).map(|w| w[0].dim() - w[1].dim()).collect();
        assert_eq!(dims, vec![0, 0, 1, 1, 2, 1, 0]);
    }

    #[test]
    fn tops_and_socles() {
        for n in 1..=4 {
            for a in compositions_of(n, &l()).unwrap() {
                let p = projective_module(&a, &l()).unwrap();
                let top = top_multiplicities(&p).unwrap();
                assert_eq!(top, BTreeMap::from([(a.clone(), 1)]), "top of P_{a}");
                let soc = socle_multiplicities(&p).unwrap();
                assert_eq!(soc.values().sum::<u64>(), 1);
                let mults = composition_multiplicities(&p).unwrap();
                assert_eq!(mults.values().sum::<u64>() as usize, p.dim);
                let s = soc.keys().next().unwrap();
                assert!(mults[s] >= 1);
            }
        }
    }

    #[test]
    fn simple_factors() {
        for a in compositions_of(4, &l()).unwrap() {
            let m = composition_multiplicities(&simple_module(&a).unwrap()).unwrap();
            for (b, v) in m {
                assert_eq!(v, u64::from(a == b));
            }
        }
    }

    #[test]
    fn regular_factors_are_ribbon_numbers() {
        for n in 1..=4 {
            let reg = regular_module(n, &l()).unwrap();
            let m = composition_multiplicities(&reg).unwrap();
            for (a, v) in &m {
                assert_eq!(*v as usize, descent_class(a, &l()).unwrap().len());
            }
            let chq = filtered_factors(&reg, &cyclic_length_filtration(&reg).unwrap(), false, 0).unwrap();
            let coord = filtered_factors(&reg, &coordinate_length_filtration(&reg).unwrap(), false, 0).unwrap();
            assert_eq!(chq, coord);
            let mut total = BiPoly::zero();
            for a in compositions_of(n, &l()).unwrap() {
                let r = ribbon_number_q(&a, &l()).unwrap();
                assert_eq!(chq.get(&a).cloned().unwrap_or_default(), r);
                total = &total + &r;
            }
            assert_eq!(total, q_factorial(n as u64));
        }
    }

    #[test]
    fn norton_summands() {
        for n in 1..=4 {
            let mut all = Subspace::zero(&Rationals, (1..=n).product());
            for a in compositions_of(n, &l()).unwrap() {
                let s = norton_summand(&a, &l()).unwrap();
                let p = projective_module(&a, &l()).unwrap();
                assert_eq!(s.module.dim, p.dim);
                let x = module_isomorphic(&p, &s.module, 7).expect("witness");
                assert!(verify_intertwiner(&p, &s.module, &x));
                all = all.sum(&s.span);
            }
            assert_eq!(all.dim(), (1..=n).product::<usize>());
        }
    }

    #[test]
    fn isomorphism_examples() {
        let p = projective_module(&c(&[1, 2, 1]), &l()).unwrap();
        assert!(module_isomorphic(&p, &p, 1).is_some());
        // basis-permuted copy without a cyclic vector
        let f = Rationals;
        let d = p.dim;
        let mut perm = Matrix::zeros(&f, d, d);
        for k in 0..d {
            perm.set(k, (k + 2) % d, f.one());
        }
        let pinv = perm.inverse(&f).unwrap();
        let gens = p.generators.iter().map(|a| perm.mul(&f, a).mul(&f, &pinv)).collect();
        let q = rational_module(4, gens, d).unwrap();
        assert!(module_isomorphic(&p, &q, 3).is_some());
        assert!(module_isomorphic(&q, &p, 3).is_some());
        let plain_p = FiniteModule { cyclic: None, ..p.clone() };
        assert!(module_isomorphic(&plain_p, &q, 3).is_some());
        let s2 = simple_module(&c(&[2])).unwrap();
        let s11 = simple_module(&c(&[1, 1])).unwrap();
        assert!(module_isomorphic(&s2, &s11, 0).is_none());
    }

    #[test]
    fn extension_modules_agree_with_socle_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let m = random_extension_module(3, 4, &mut rng).unwrap();
            assert_eq!(
                composition_multiplicities(&m).unwrap(),
                socle_series_multiplicities(&m).unwrap()
            );
        }
    }

    #[test]
    fn bad_relations_are_rejected() {
        let f = Rationals;
        let gens = vec![Matrix::from_rows(vec![vec![f.from_i64(2)]], 1)];
        assert!(FiniteModule::new(f, 2, gens).is_err());
    }
}
