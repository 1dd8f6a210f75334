//! Lie algebras over a finite field given by structure constants.
//!
//! `c[i][j]` holds the coordinates of `[e_i, e_j]`. All subspace-valued
//! answers (center, derived algebra, centralizers, …) are canonical
//! [`Subspace`]s, so structural identities are checked by equality.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gf::{Elem, FieldTower, Gf};
use crate::linalg::{rref_in_place, shape, LinalgError, Matrix, Subspace};

/// Default cap on the number of coset representatives any enumeration visits.
pub const DEFAULT_BUDGET: u128 = 78_125; // 5^7

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("enumeration needs {required} representatives, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("not a Lie algebra: {0}")]
    Invalid(Violation),
}

/// First failure found by [`LieAlgebra::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// `[e_i, e_i] ≠ 0`
    Diagonal { i: usize },
    /// `[e_i, e_j] ≠ -[e_j, e_i]`
    Antisymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Diagonal { i } => write!(f, "[e{i}, e{i}] is nonzero"),
            Violation::Antisymmetry { i, j } => write!(f, "antisymmetry fails for ({i}, {j})"),
            Violation::Jacobi { i, j, k } => write!(f, "Jacobi identity fails for ({i}, {j}, {k})"),
        }
    }
}

/// Knobs for exhaustive enumerations over coset representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Enumeration {
    pub budget: u128,
    pub workers: usize,
    /// Visit one representative per line `{λx}`; counts are reconstituted.
    pub scalar_orbits: bool,
}

impl Default for Enumeration {
    fn default() -> Self {
        Enumeration { budget: DEFAULT_BUDGET, workers: 1, scalar_orbits: false }
    }
}

impl Enumeration {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }
}

pub(crate) fn in_pool<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    tower: FieldTower,
    dim: usize,
    c: Vec<Elem>,
    labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub gamma_dims: Vec<usize>,
    pub derived_dim: usize,
    pub center_dim: usize,
    /// `None` when the lower central series stabilizes at a nonzero term.
    pub nilpotency_class: Option<usize>,
    pub is_stem: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BreadthReport {
    pub histogram: BTreeMap<usize, u128>,
    pub type_set: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaminaReport {
    pub is_camina: bool,
    /// `L' = 0`, where the condition holds vacuously.
    pub degenerate: bool,
    pub witness: Option<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub nilpotency_class: Option<usize>,
    pub gamma_dims: Vec<usize>,
    pub center_dim: usize,
    pub derived_dim: usize,
    pub is_stem: bool,
    pub breadth_histogram: BTreeMap<usize, u128>,
    pub type_set: Vec<usize>,
    pub all_noncentral_centralizers_abelian: bool,
    pub is_camina: bool,
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    /// Maps coordinates in the parent to coordinates in the quotient.
    pub projection: Matrix,
    /// Standard basis indices of the parent that become the quotient basis.
    pub complement: Vec<usize>,
}

/// One bracket relation `[g_left, g_right] = Σ coeff · g_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub left: usize,
    pub right: usize,
    pub rhs: Vec<(usize, Elem)>,
}

/// A presentation by a basis and its nonzero brackets. Every bracket of two
/// generators not listed among the relations is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationData {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
}

impl PresentationData {
    /// Lookup of the right-hand side of `[g_i, g_j]` (antisymmetric completion).
    fn bracket_rhs(&self, f: &Gf, i: usize, j: usize) -> Vec<(usize, Elem)> {
        for r in &self.relations {
            if r.left == i && r.right == j {
                return r.rhs.clone();
            }
            if r.left == j && r.right == i {
                return r.rhs.iter().map(|&(k, c)| (k, f.neg(c))).collect();
            }
        }
        Vec::new()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub relations_hold: bool,
    pub images_generate: bool,
    pub dims_match: bool,
    pub is_isomorphism_evidence: bool,
    pub failed_relations: Vec<String>,
}

/// Enumerates one representative per coset of a subspace: vectors supported
/// off its pivot columns, in mixed-radix order with the lowest free index
/// least significant.
pub(crate) struct Cosets {
    free: Vec<usize>,
    dim: usize,
    q: u32,
}

impl Cosets {
    pub(crate) fn of(sub: &Subspace) -> Self {
        let free = (0..sub.ambient()).filter(|c| !sub.pivots().contains(c)).collect();
        Cosets { free, dim: sub.ambient(), q: sub.field().size() }
    }

    pub(crate) fn count(&self) -> u128 {
        (self.q as u128).checked_pow(self.free.len() as u32).unwrap_or(u128::MAX)
    }

    pub(crate) fn check_budget(&self, budget: u128) -> Result<usize, LieError> {
        let required = self.count();
        if required > budget || required > usize::MAX as u128 {
            return Err(LieError::BudgetExceeded { required, budget });
        }
        Ok(required as usize)
    }

    pub(crate) fn rep(&self, mut idx: usize) -> Vec<Elem> {
        let mut v = vec![0; self.dim];
        for &c in &self.free {
            v[c] = (idx % self.q as usize) as Elem;
            idx /= self.q as usize;
        }
        v
    }

    /// Whether `rep(idx)` has first nonzero free coordinate equal to 1.
    pub(crate) fn is_normalized(&self, idx: usize) -> bool {
        let mut idx = idx;
        for _ in &self.free {
            let d = idx % self.q as usize;
            if d != 0 {
                return d == 1;
            }
            idx /= self.q as usize;
        }
        true
    }
}

fn is_zero(v: &[Elem]) -> bool {
    v.iter().all(|&x| x == 0)
}

impl LieAlgebra {
    /// Builds and validates an algebra. `c` is indexed `(i * dim + j) * dim + k`.
    pub fn new(tower: FieldTower, dim: usize, c: Vec<Elem>, labels: Vec<String>) -> Result<Self, LieError> {
        let l = Self::unchecked(tower, dim, c, labels)?;
        l.validate().map_err(LieError::Invalid)?;
        Ok(l)
    }

    /// Shape-checked but not validated; for inspecting candidate tensors.
    pub fn unchecked(tower: FieldTower, dim: usize, c: Vec<Elem>, labels: Vec<String>) -> Result<Self, LieError> {
        if c.len() != dim * dim * dim {
            return Err(shape(format!("tensor of length {} for dimension {dim}", c.len())).into());
        }
        if let Some(&e) = c.iter().find(|&&e| e >= tower.top().size()) {
            return Err(shape(format!("coefficient {e} outside the field")).into());
        }
        let labels = if labels.is_empty() {
            (0..dim).map(|i| format!("e{i}")).collect()
        } else if labels.len() == dim {
            labels
        } else {
            return Err(shape(format!("{} labels for dimension {dim}", labels.len())).into());
        };
        Ok(LieAlgebra { tower, dim, c, labels })
    }

    pub fn abelian(tower: FieldTower, dim: usize) -> Self {
        Self::unchecked(tower, dim, vec![0; dim * dim * dim], Vec::new()).expect("zero tensor")
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn field(&self) -> &Gf {
        self.tower.top()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn tensor(&self) -> &[Elem] {
        &self.c
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn structure(&self, i: usize, j: usize) -> &[Elem] {
        let d = self.dim;
        &self.c[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.field(), self.dim)
    }

    pub fn zero_subspace(&self) -> Subspace {
        Subspace::zero(self.field(), self.dim)
    }

    pub fn span(&self, vectors: &[Vec<Elem>]) -> Result<Subspace, LieError> {
        Ok(Subspace::span(self.field(), self.dim, vectors)?)
    }

    fn check_vec(&self, v: &[Elem]) -> Result<(), LieError> {
        if v.len() != self.dim {
            return Err(shape(format!("vector of length {} in dimension {}", v.len(), self.dim)).into());
        }
        Ok(())
    }

    /// Antisymmetry, then Jacobi over all basis triples.
    pub fn validate(&self) -> Result<(), Violation> {
        let f = self.field();
        let d = self.dim;
        for i in 0..d {
            if !is_zero(self.structure(i, i)) {
                return Err(Violation::Diagonal { i });
            }
            for j in 0..d {
                let a = self.structure(i, j);
                let b = self.structure(j, i);
                if a.iter().zip(b).any(|(&x, &y)| f.add(x, y) != 0) {
                    return Err(Violation::Antisymmetry { i, j });
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let ei = self.basis_vector(i);
                    let ej = self.basis_vector(j);
                    let ek = self.basis_vector(k);
                    let t1 = self.bracket_raw(self.structure(i, j), &ek);
                    let t2 = self.bracket_raw(self.structure(j, k), &ei);
                    let t3 = self.bracket_raw(self.structure(k, i), &ej);
                    if (0..d).any(|l| f.add(f.add(t1[l], t2[l]), t3[l]) != 0) {
                        return Err(Violation::Jacobi { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn bracket_raw(&self, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let d = self.dim;
        let mut out = vec![0; d];
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                if vj == 0 {
                    continue;
                }
                let s = f.mul(ui, vj);
                let row = &self.c[(i * d + j) * d..(i * d + j + 1) * d];
                for (o, &r) in out.iter_mut().zip(row) {
                    if r != 0 {
                        *o = f.add(*o, f.mul(s, r));
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, u: &[Elem], v: &[Elem]) -> Result<Vec<Elem>, LieError> {
        self.check_vec(u)?;
        self.check_vec(v)?;
        Ok(self.bracket_raw(u, v))
    }

    /// Row-major `ad(x)`: column `j` is `[x, e_j]`.
    fn ad_raw(&self, x: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let d = self.dim;
        let mut m = vec![0; d * d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for j in 0..d {
                let row = &self.c[(i * d + j) * d..(i * d + j + 1) * d];
                for (k, &r) in row.iter().enumerate() {
                    if r != 0 {
                        m[k * d + j] = f.add(m[k * d + j], f.mul(xi, r));
                    }
                }
            }
        }
        m
    }

    pub fn ad(&self, x: &[Elem]) -> Result<Matrix, LieError> {
        self.check_vec(x)?;
        Ok(Matrix::from_data(self.field(), self.dim, self.dim, self.ad_raw(x))?)
    }

    fn breadth_raw(&self, x: &[Elem]) -> usize {
        let mut m = self.ad_raw(x);
        rref_in_place(self.field(), &mut m, self.dim, self.dim).len()
    }

    /// `(ad x, rank ad x)`.
    pub fn ad_and_breadth(&self, x: &[Elem]) -> Result<(Matrix, usize), LieError> {
        let m = self.ad(x)?;
        let b = m.rank();
        Ok((m, b))
    }

    pub fn breadth(&self, x: &[Elem]) -> Result<usize, LieError> {
        self.check_vec(x)?;
        Ok(self.breadth_raw(x))
    }

    /// `dim [x, I]`.
    pub fn relative_breadth(&self, ideal: &Subspace, x: &[Elem]) -> Result<usize, LieError> {
        self.check_vec(x)?;
        if ideal.ambient() != self.dim {
            return Err(shape("subspace ambient differs from algebra dimension").into());
        }
        let images: Vec<Vec<Elem>> = ideal
            .basis_vectors()
            .iter()
            .map(|b| self.bracket_raw(x, b))
            .collect();
        Ok(self.span(&images)?.dim())
    }

    /// `[x, L]`.
    pub fn image_of_ad(&self, x: &[Elem]) -> Result<Subspace, LieError> {
        Ok(Subspace::from_matrix_rows(&self.ad(x)?.transpose()))
    }

    pub fn centralizer(&self, x: &[Elem]) -> Result<Subspace, LieError> {
        Ok(self.ad(x)?.kernel())
    }

    pub fn centralizer_of_subspace(&self, u: &Subspace) -> Result<Subspace, LieError> {
        if u.ambient() != self.dim {
            return Err(shape("subspace ambient differs from algebra dimension").into());
        }
        let mut stacked = Matrix::zeros(self.field(), 0, self.dim);
        for b in u.basis_vectors() {
            stacked = stacked.vstack(&self.ad(&b)?)?;
        }
        Ok(stacked.kernel())
    }

    pub fn center(&self) -> Subspace {
        self.centralizer_of_subspace(&self.full()).expect("full space has the right ambient")
    }

    /// `span{[u, v] : u ∈ basis U, v ∈ basis V}`.
    pub fn subspace_bracket(&self, u: &Subspace, v: &Subspace) -> Result<Subspace, LieError> {
        if u.ambient() != self.dim || v.ambient() != self.dim {
            return Err(shape("subspace ambient differs from algebra dimension").into());
        }
        let ub = u.basis_vectors();
        let vb = v.basis_vectors();
        let mut vs = Vec::with_capacity(ub.len() * vb.len());
        for a in &ub {
            for b in &vb {
                let w = self.bracket_raw(a, b);
                if !is_zero(&w) {
                    vs.push(w);
                }
            }
        }
        self.span(&vs)
    }

    pub fn derived(&self) -> Subspace {
        self.subspace_bracket(&self.full(), &self.full()).expect("shapes agree")
    }

    pub fn is_abelian_subspace(&self, u: &Subspace) -> bool {
        let b = u.basis_vectors();
        (0..b.len()).all(|i| (i + 1..b.len()).all(|j| is_zero(&self.bracket_raw(&b[i], &b[j]))))
    }

    /// `γ₁ ⊇ γ₂ ⊇ …` up to the first zero term or stabilization.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = self.full();
        let mut out = vec![full.clone()];
        loop {
            let last = out.last().unwrap();
            if last.dim() == 0 {
                break;
            }
            let next = self.subspace_bracket(&full, last).expect("shapes agree");
            if &next == last {
                break;
            }
            out.push(next);
        }
        out
    }

    pub fn series(&self) -> SeriesReport {
        let gamma = self.lower_central_series();
        let center = self.center();
        let derived = gamma.get(1).cloned().unwrap_or_else(|| {
            // series stabilized immediately: L' = L
            if self.dim == 0 { self.zero_subspace() } else { self.full() }
        });
        let last = gamma.last().unwrap();
        let nilpotency_class = if last.dim() == 0 { Some(gamma.len() - 1) } else { None };
        SeriesReport {
            gamma_dims: gamma.iter().map(Subspace::dim).collect(),
            derived_dim: derived.dim(),
            center_dim: center.dim(),
            nilpotency_class,
            is_stem: derived.contains(&center).expect("shapes agree"),
        }
    }

    pub fn is_ideal(&self, ideal: &Subspace) -> Result<bool, LieError> {
        let img = self.subspace_bracket(&self.full(), ideal)?;
        Ok(ideal.contains(&img)?)
    }

    /// `L / I` with basis the standard vectors off the pivots of `I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient, LieError> {
        if !self.is_ideal(ideal)? {
            return Err(LieError::NotAnIdeal);
        }
        let f = self.field();
        let complement: Vec<usize> = (0..self.dim).filter(|c| !ideal.pivots().contains(c)).collect();
        let qd = complement.len();
        let project = |v: &[Elem]| -> Vec<Elem> {
            let r = ideal.reduce(v);
            complement.iter().map(|&c| r[c]).collect()
        };
        let mut projection = Matrix::zeros(f, qd, self.dim);
        for j in 0..self.dim {
            for (i, x) in project(&self.basis_vector(j)).into_iter().enumerate() {
                projection.set(i, j, x);
            }
        }
        let mut c = vec![0; qd * qd * qd];
        for (a, &ia) in complement.iter().enumerate() {
            for (b, &ib) in complement.iter().enumerate() {
                let img = project(self.structure(ia, ib));
                c[(a * qd + b) * qd..(a * qd + b + 1) * qd].copy_from_slice(&img);
            }
        }
        let labels = complement.iter().map(|&i| self.labels[i].clone()).collect();
        let algebra = LieAlgebra::new(self.tower.clone(), qd, c, labels)?;
        Ok(Quotient { algebra, projection, complement })
    }

    /// Smallest subalgebra containing the vectors.
    pub fn generated(&self, vectors: &[Vec<Elem>]) -> Result<Subspace, LieError> {
        for v in vectors {
            self.check_vec(v)?;
        }
        let mut w = self.span(vectors)?;
        loop {
            let next = w.sum(&self.subspace_bracket(&w, &w)?)?;
            if next == w {
                return Ok(w);
            }
            w = next;
        }
    }

    /// Exact breadth histogram over representatives of `L / Z(L)`.
    pub fn breadth_report(&self, opts: &Enumeration) -> Result<BreadthReport, LieError> {
        let center = self.center();
        let cosets = Cosets::of(&center);
        let count = cosets.check_budget(opts.budget)?;
        let zsize = center.cardinality();
        let q1 = (self.field().size() - 1) as u128;
        let orbits = opts.scalar_orbits;
        let histogram = in_pool(opts.workers, || {
            (0..count)
                .into_par_iter()
                .filter(|&idx| !orbits || cosets.is_normalized(idx))
                .map(|idx| {
                    let weight = if orbits && idx != 0 { q1 } else { 1 };
                    (self.breadth_raw(&cosets.rep(idx)), weight * zsize)
                })
                .fold(BTreeMap::new, |mut m: BTreeMap<usize, u128>, (b, w)| {
                    *m.entry(b).or_default() += w;
                    m
                })
                .reduce(BTreeMap::new, |mut a, b| {
                    for (k, v) in b {
                        *a.entry(k).or_default() += v;
                    }
                    a
                })
        });
        let type_set = histogram.keys().copied().collect();
        Ok(BreadthReport { histogram, type_set })
    }

    /// `[x, L] = L'` for every `x ∉ L'`, checked over `Z(L)`-coset representatives.
    pub fn is_camina(&self, opts: &Enumeration) -> Result<CaminaReport, LieError> {
        let derived = self.derived();
        let center = self.center();
        let cosets = Cosets::of(&center);
        let count = cosets.check_budget(opts.budget)?;
        let z_in_derived = derived.contains(&center)?;
        let witness = in_pool(opts.workers, || {
            (0..count).into_par_iter().find_first(|&idx| {
                if !cosets.is_normalized(idx) {
                    return false;
                }
                let x = cosets.rep(idx);
                // the coset x + Z lies inside L' only if both x and Z do
                if z_in_derived && derived.contains_vector(&x).expect("shape") {
                    return false;
                }
                let img = Subspace::from_matrix_rows(
                    &Matrix::from_data(self.field(), self.dim, self.dim, self.ad_raw(&x))
                        .expect("square")
                        .transpose(),
                );
                img != derived
            })
        });
        Ok(CaminaReport {
            is_camina: witness.is_none(),
            degenerate: derived.dim() == 0,
            witness: witness.map(|idx| cosets.rep(idx)),
        })
    }

    /// First noncentral representative (canonical order) whose centralizer is not abelian.
    pub fn nonabelian_centralizer_witness(&self, opts: &Enumeration) -> Result<Option<Vec<Elem>>, LieError> {
        let cosets = Cosets::of(&self.center());
        let count = cosets.check_budget(opts.budget)?;
        let found = in_pool(opts.workers, || {
            (1..count).into_par_iter().find_first(|&idx| {
                if !cosets.is_normalized(idx) {
                    return false;
                }
                let x = cosets.rep(idx);
                let cent = Matrix::from_data(self.field(), self.dim, self.dim, self.ad_raw(&x))
                    .expect("square")
                    .kernel();
                !self.is_abelian_subspace(&cent)
            })
        });
        Ok(found.map(|idx| cosets.rep(idx)))
    }

    pub fn fingerprint(&self, opts: &Enumeration) -> Result<Fingerprint, LieError> {
        let s = self.series();
        let b = self.breadth_report(opts)?;
        let camina = self.is_camina(opts)?;
        let abelian = self.nonabelian_centralizer_witness(opts)?.is_none();
        Ok(Fingerprint {
            dim: self.dim,
            nilpotency_class: s.nilpotency_class,
            gamma_dims: s.gamma_dims,
            center_dim: s.center_dim,
            derived_dim: s.derived_dim,
            is_stem: s.is_stem,
            breadth_histogram: b.histogram,
            type_set: b.type_set,
            all_noncentral_centralizers_abelian: abelian,
            is_camina: camina.is_camina,
        })
    }
}

/// Checks that sending presentation generators to `images` defines a
/// homomorphism onto `target`, and whether that is evidence of isomorphism.
pub fn check_hom(
    presentation: &PresentationData,
    target: &LieAlgebra,
    images: &[Vec<Elem>],
) -> Result<HomReport, LieError> {
    let n = presentation.generators.len();
    if images.len() != n {
        return Err(shape(format!("{} images for {n} generators", images.len())).into());
    }
    for v in images {
        target.check_vec(v)?;
    }
    let f = target.field();
    let mut failed = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = target.bracket_raw(&images[i], &images[j]);
            let mut rhs = vec![0; target.dim()];
            for (k, c) in presentation.bracket_rhs(f, i, j) {
                for (o, &x) in rhs.iter_mut().zip(&images[k]) {
                    *o = f.add(*o, f.mul(c, x));
                }
            }
            if lhs != rhs {
                failed.push(format!(
                    "[{}, {}]",
                    presentation.generators[i], presentation.generators[j]
                ));
            }
        }
    }
    let images_generate = target.generated(images)? == target.full();
    let dims_match = target.dim() == n;
    let relations_hold = failed.is_empty();
    Ok(HomReport {
        relations_hold,
        images_generate,
        dims_match,
        is_isomorphism_evidence: relations_hold && images_generate && dims_match,
        failed_relations: failed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldTower {
        FieldTower::prime(3).unwrap()
    }

    /// Heisenberg algebra over F_3: [e0, e1] = e2.
    fn heis() -> LieAlgebra {
        let mut c = vec![0; 27];
        c[(0 * 3 + 1) * 3 + 2] = 1;
        c[(1 * 3 + 0) * 3 + 2] = 2;
        LieAlgebra::new(f3(), 3, c, vec![]).unwrap()
    }

    #[test]
    fn abelian_is_valid() {
        let a = LieAlgebra::abelian(f3(), 4);
        assert_eq!(a.validate(), Ok(()));
        let s = a.series();
        assert_eq!(s.gamma_dims, vec![4, 0]);
        assert_eq!(s.nilpotency_class, Some(1));
        assert!(!s.is_stem);
        let b = a.breadth_report(&Enumeration::default()).unwrap();
        assert_eq!(b.histogram, BTreeMap::from([(0, 81)]));
        let cam = a.is_camina(&Enumeration::default()).unwrap();
        assert!(cam.is_camina && cam.degenerate);
    }

    #[test]
    fn symmetric_tensor_is_rejected() {
        let mut c = vec![0; 27];
        c[(0 * 3 + 1) * 3 + 2] = 1;
        c[(1 * 3 + 0) * 3 + 2] = 1;
        let l = LieAlgebra::unchecked(f3(), 3, c.clone(), vec![]).unwrap();
        assert_eq!(l.validate(), Err(Violation::Antisymmetry { i: 0, j: 1 }));
        assert!(matches!(
            LieAlgebra::new(f3(), 3, c, vec![]),
            Err(LieError::Invalid(Violation::Antisymmetry { .. }))
        ));
    }

    #[test]
    fn heisenberg_basics() {
        let h = heis();
        assert_eq!(h.bracket(&[1, 0, 0], &[0, 1, 0]).unwrap(), vec![0, 0, 1]);
        assert_eq!(h.breadth(&[0, 0, 0]).unwrap(), 0);
        assert_eq!(h.breadth(&[1, 2, 0]).unwrap(), 1);
        assert_eq!(h.center(), Subspace::coordinate(h.field(), 3, [2]));
        let s = h.series();
        assert_eq!(s.nilpotency_class, Some(2));
        assert!(s.is_stem);
        let cam = h.is_camina(&Enumeration::default()).unwrap();
        assert!(cam.is_camina && !cam.degenerate);
        assert!(matches!(h.bracket(&[1, 0], &[0, 1, 0]), Err(LieError::Linalg(_))));
    }

    #[test]
    fn quotient_requires_ideal() {
        let h = heis();
        let line = Subspace::coordinate(h.field(), 3, [0]);
        assert_eq!(h.quotient(&line).unwrap_err(), LieError::NotAnIdeal);
        let q = h.quotient(&h.zero_subspace()).unwrap();
        assert_eq!(q.algebra.tensor(), h.tensor());
        let q = h.quotient(&h.center()).unwrap();
        assert_eq!(q.algebra.dim(), 2);
        assert_eq!(q.algebra.series().nilpotency_class, Some(1));
    }

    #[test]
    fn abelian_needs_a_single_coset() {
        let a = LieAlgebra::abelian(f3(), 5);
        let b = a.breadth_report(&Enumeration::default().with_budget(1)).unwrap();
        assert_eq!(b.histogram, BTreeMap::from([(0, 243)]));
    }

    #[test]
    fn budget_exceeded_reports_requirement() {
        let h = heis();
        let err = h.breadth_report(&Enumeration::default().with_budget(8)).unwrap_err();
        assert_eq!(err, LieError::BudgetExceeded { required: 9, budget: 8 });
    }

    #[test]
    fn hom_check_on_heisenberg() {
        let h = heis();
        let pres = PresentationData {
            generators: vec!["x".into(), "y".into(), "z".into()],
            relations: vec![Relation { left: 0, right: 1, rhs: vec![(2, 1)] }],
        };
        let ok = check_hom(&pres, &h, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(ok.is_isomorphism_evidence);
        let bad = check_hom(&pres, &h, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]]).unwrap();
        assert!(!bad.relations_hold);
        let zero = check_hom(&pres, &h, &[vec![0; 3], vec![0; 3], vec![0; 3]]).unwrap();
        assert!(!zero.images_generate);
    }
}
