//! Finite (pre)semifields as bilinear products on `F^n`, the class-2 Lie
//! algebra `L(F)` they define, isotopisms, and recovery of a presemifield
//! from a Lie algebra with a pair of abelian ideals.

use serde::Serialize;
use thiserror::Error;

use crate::constructions::ScalarExtension;
use crate::gf::{Elem, FieldTower, Gf, GfError};
use crate::liealg::{Enumeration, LieAlgebra, LieError};
use crate::linalg::{LinalgError, Matrix, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemifieldError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("product has zero divisors: {a:?} * {b:?} = 0")]
    ZeroDivisor { a: Vec<Elem>, b: Vec<Elem> },
    #[error("presemifield has not been certified free of zero divisors")]
    NotCertified,
    #[error("no two-sided identity")]
    NoIdentity,
    #[error("isotopism component is singular")]
    SingularMap,
    #[error("maps are not an isotopism between the given products")]
    IsotopismInvalid,
    #[error("hypothesis failed: {0}")]
    HypothesisFailure(HypothesisFailure),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum HypothesisFailure {
    NotClassTwo,
    DimensionNotMultipleOfThree,
    DerivedDimension,
    CenterNotDerived,
    NotCamina,
    StarDimension,
    StarMissesDerived,
    StarNotAbelian,
    StarsMeetBeyondDerived,
    NotPresemifield,
}

impl std::fmt::Display for HypothesisFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            HypothesisFailure::NotClassTwo => "algebra is not nilpotent of class 2",
            HypothesisFailure::DimensionNotMultipleOfThree => "dimension is not 3n",
            HypothesisFailure::DerivedDimension => "derived algebra does not have dimension n",
            HypothesisFailure::CenterNotDerived => "center differs from the derived algebra",
            HypothesisFailure::NotCamina => "algebra is not Camina",
            HypothesisFailure::StarDimension => "an ideal does not have dimension 2n",
            HypothesisFailure::StarMissesDerived => "an ideal does not contain the derived algebra",
            HypothesisFailure::StarNotAbelian => "an ideal is not abelian",
            HypothesisFailure::StarsMeetBeyondDerived => "the ideals intersect in more than the derived algebra",
            HypothesisFailure::NotPresemifield => "recovered product has zero divisors",
        };
        f.write_str(s)
    }
}

type Result<T> = std::result::Result<T, SemifieldError>;

/// A bilinear product `F^n x F^n → F^n`: `mult[(i*n + j)*n + k]` is the
/// `e_k`-coefficient of `e_i * e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreSemifield {
    tower: FieldTower,
    n: usize,
    mult: Vec<Elem>,
    certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct F3Report {
    pub no_zero_divisors: bool,
    /// First `a` (canonical order) with a singular left multiplication, with a kernel vector.
    pub witness: Option<(Vec<Elem>, Vec<Elem>)>,
    /// The same check run on right multiplications agrees.
    pub right_agrees: bool,
}

impl PreSemifield {
    /// Wraps a tensor without checking for zero divisors.
    pub fn new(tower: FieldTower, n: usize, mult: Vec<Elem>) -> Result<Self> {
        if n == 0 || mult.len() != n * n * n {
            return Err(LinalgError::Shape(format!("tensor of length {} for n = {n}", mult.len())).into());
        }
        let q = tower.top().size();
        if let Some(&x) = mult.iter().find(|&&x| x >= q) {
            return Err(GfError::BadCoefficient(x as u64).into());
        }
        Ok(PreSemifield { tower, n, mult, certified: false })
    }

    /// Checks for zero divisors and marks the product certified.
    pub fn certify(mut self, opts: &Enumeration) -> Result<Self> {
        let r = certify_f3(&self, opts)?;
        match r.witness {
            Some((a, b)) => Err(SemifieldError::ZeroDivisor { a, b }),
            None => {
                self.certified = true;
                Ok(self)
            }
        }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn field(&self) -> &Gf {
        self.tower.top()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tensor(&self) -> &[Elem] {
        &self.mult
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// `e_i * e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Elem] {
        let n = self.n;
        &self.mult[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let n = self.n;
        let mut out = vec![0; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let s = f.mul(x, y);
                for (o, &c) in out.iter_mut().zip(self.product(i, j)) {
                    *o = f.add(*o, f.mul(s, c));
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ a * x`.
    pub fn left_matrix(&self, a: &[Elem]) -> Matrix {
        let cols: Vec<Vec<Elem>> = (0..self.n).map(|j| self.mul(a, &self.unit(j))).collect();
        Matrix::from_columns(self.field(), self.n, &cols).expect("square")
    }

    /// Matrix of `x ↦ x * a`.
    pub fn right_matrix(&self, a: &[Elem]) -> Matrix {
        let cols: Vec<Vec<Elem>> = (0..self.n).map(|j| self.mul(&self.unit(j), a)).collect();
        Matrix::from_columns(self.field(), self.n, &cols).expect("square")
    }

    pub fn unit(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![0; self.n];
        v[i] = 1;
        v
    }

    fn all_vectors(&self) -> Subspace {
        Subspace::full(self.field(), self.n)
    }
}

/// Exhaustive zero-divisor check: every nonzero `a` must have invertible `L_a` and `R_a`.
pub fn certify_f3(pre: &PreSemifield, opts: &Enumeration) -> Result<F3Report> {
    let total = pre.all_vectors().cardinality();
    if total > opts.budget {
        return Err(LieError::BudgetExceeded { required: total, budget: opts.budget }.into());
    }
    let full = pre.all_vectors();
    let mut left_bad = None;
    let mut right_bad = None;
    for a in full.elements().skip(1) {
        if left_bad.is_none() {
            let ker = pre.left_matrix(&a).kernel();
            if ker.dim() > 0 {
                left_bad = Some((a.clone(), ker.basis_vectors()[0].clone()));
            }
        }
        if right_bad.is_none() && pre.right_matrix(&a).rank() < pre.n {
            right_bad = Some(a.clone());
        }
        if left_bad.is_some() && right_bad.is_some() {
            break;
        }
    }
    Ok(F3Report {
        no_zero_divisors: left_bad.is_none(),
        right_agrees: left_bad.is_none() == right_bad.is_none(),
        witness: left_bad,
    })
}

/// A presemifield with a two-sided identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semifield {
    pre: PreSemifield,
    identity: Vec<Elem>,
}

impl Semifield {
    /// Solves for a two-sided identity.
    pub fn from_pre(pre: PreSemifield) -> Result<Self> {
        let identity = find_identity(&pre).ok_or(SemifieldError::NoIdentity)?;
        Ok(Semifield { pre, identity })
    }

    pub fn pre(&self) -> &PreSemifield {
        &self.pre
    }

    pub fn identity(&self) -> &[Elem] {
        &self.identity
    }

    pub fn into_pre(self) -> PreSemifield {
        self.pre
    }
}

pub fn find_identity(pre: &PreSemifield) -> Option<Vec<Elem>> {
    let n = pre.n;
    let f = pre.field();
    // unknown e: Σ_i e_i (e_i * e_j) = e_j and Σ_i e_i (e_j * e_i) = e_j
    let mut rows = Vec::with_capacity(2 * n * n);
    let mut rhs = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for k in 0..n {
            rows.push((0..n).map(|i| pre.product(i, j)[k]).collect::<Vec<_>>());
            rhs.push(if j == k { 1 } else { 0 });
            rows.push((0..n).map(|i| pre.product(j, i)[k]).collect());
            rhs.push(if j == k { 1 } else { 0 });
        }
    }
    let m = Matrix::from_rows(f, n, &rows).expect("shape");
    m.solve(&rhs).expect("shape")
}

/// Dickson's commutative semifield on `F_q x F_q`:
/// `(a, b)(c, d) = (ac + k σ(b) σ(d), ad + bc)` with `σ = Frob^sigma_index`
/// and `k` a nonsquare. Bilinear only over the prime field, so it is stored
/// over `F_p` with `n = 2s`; coordinates are the `F_p` digits of `a` then `b`.
#[derive(Clone, Debug)]
pub struct Dickson {
    semifield: Semifield,
    big: Gf,
    k: Elem,
    sigma_index: u32,
}

pub fn dickson(q_tower: &FieldTower, sigma_index: u32, k: Option<Elem>) -> Result<Dickson> {
    let big = q_tower.top().clone();
    let p = big.p();
    let s = big.prime_degree();
    if p == 2 {
        return Err(SemifieldError::UnsupportedParameters("characteristic 2".into()));
    }
    if s < 2 {
        return Err(SemifieldError::UnsupportedParameters("F_q must be a proper extension of F_p".into()));
    }
    if sigma_index == 0 || sigma_index as usize >= s {
        return Err(SemifieldError::UnsupportedParameters(format!(
            "sigma index {sigma_index} must lie in 1..{s}"
        )));
    }
    let k = match k {
        None => big.find_nonsquare()?,
        Some(k) if k >= big.size() => return Err(GfError::BadCoefficient(k as u64).into()),
        Some(k) if big.is_square(k) => {
            return Err(SemifieldError::BadParameter(format!("{k} is a square in F_{}", big.size())))
        }
        Some(k) => k,
    };
    let n = 2 * s;
    let prime = FieldTower::prime(p)?;
    let mut d = Dickson {
        semifield: Semifield { pre: PreSemifield { tower: prime.clone(), n, mult: vec![], certified: false }, identity: vec![] },
        big,
        k,
        sigma_index,
    };
    let basis: Vec<(Elem, Elem)> = (0..n).map(|i| d.vector_to_pair(&unit(n, i))).collect();
    let mut mult = Vec::with_capacity(n * n * n);
    for &x in &basis {
        for &y in &basis {
            mult.extend(d.pair_to_vector(d.mul_pairs(x, y)));
        }
    }
    let pre = PreSemifield::new(prime, n, mult)?.certify(&Enumeration::default())?;
    let identity = d.pair_to_vector((1, 0));
    d.semifield = Semifield { pre, identity };
    Ok(d)
}

fn unit(n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

impl Dickson {
    pub fn semifield(&self) -> &Semifield {
        &self.semifield
    }

    pub fn big_field(&self) -> &Gf {
        &self.big
    }

    pub fn k(&self) -> Elem {
        self.k
    }

    pub fn sigma_index(&self) -> u32 {
        self.sigma_index
    }

    pub fn mul_pairs(&self, (a, b): (Elem, Elem), (c, d): (Elem, Elem)) -> (Elem, Elem) {
        let f = &self.big;
        let sb = f.frob(b, self.sigma_index);
        let sd = f.frob(d, self.sigma_index);
        (
            f.add(f.mul(a, c), f.mul(self.k, f.mul(sb, sd))),
            f.add(f.mul(a, d), f.mul(b, c)),
        )
    }

    pub fn pair_to_vector(&self, (a, b): (Elem, Elem)) -> Vec<Elem> {
        let mut v = self.big.prime_coordinates(a);
        v.extend(self.big.prime_coordinates(b));
        v
    }

    pub fn vector_to_pair(&self, v: &[Elem]) -> (Elem, Elem) {
        let s = v.len() / 2;
        let conv = |c: &[Elem]| {
            let c: Vec<u64> = c.iter().map(|&x| x as u64).collect();
            self.big.from_prime_coordinates(&c).expect("digits in range")
        };
        (conv(&v[..s]), conv(&v[s..]))
    }
}

/// `F_{q^n}` as an `n`-dimensional algebra over `F_q` in the power basis.
pub fn field_semifield(base: &FieldTower, n: usize) -> Result<Semifield> {
    let ext = ScalarExtension::over(base.clone(), n, None)
        .map_err(|e| SemifieldError::UnsupportedParameters(e.to_string()))?;
    let k = crate::constructions::kappa(&ext);
    let mut mult = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            mult.extend_from_slice(k.row(i, j));
        }
    }
    let mut pre = PreSemifield::new(base.clone(), n, mult)?;
    pre.certified = true;
    Ok(Semifield { pre, identity: unit(n, 0) })
}

/// `(A, B, C)` with `C(x * y) = A(x) ∘ B(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isotopism {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
}

impl Isotopism {
    pub fn identity(f: &Gf, n: usize) -> Self {
        let i = Matrix::identity(f, n);
        Isotopism { a: i.clone(), b: i.clone(), c: i }
    }

    fn check(&self, n: usize) -> Result<()> {
        for m in [&self.a, &self.b, &self.c] {
            if m.rows() != n || m.cols() != n {
                return Err(LinalgError::Shape(format!("isotopism component is {}x{}, expected {n}x{n}", m.rows(), m.cols())).into());
            }
        }
        Ok(())
    }
}

/// The product `x ∘ y = C(A⁻¹x * B⁻¹y)` that `iso` carries `pre` onto.
pub fn apply_isotopism(pre: &PreSemifield, iso: &Isotopism) -> Result<PreSemifield> {
    iso.check(pre.n)?;
    let ai = iso.a.inverse().ok_or(SemifieldError::SingularMap)?;
    let bi = iso.b.inverse().ok_or(SemifieldError::SingularMap)?;
    if !iso.c.is_invertible() {
        return Err(SemifieldError::SingularMap);
    }
    let n = pre.n;
    let mut mult = Vec::with_capacity(n * n * n);
    for i in 0..n {
        let x = ai.column(i);
        for j in 0..n {
            let y = bi.column(j);
            mult.extend(iso.c.mul_vec(&pre.mul(&x, &y))?);
        }
    }
    Ok(PreSemifield { tower: pre.tower.clone(), n, mult, certified: pre.certified })
}

/// `C(e_i * e_j) = A(e_i) ∘ B(e_j)` on all basis pairs, with all maps invertible.
pub fn verify_isotopism(from: &PreSemifield, to: &PreSemifield, iso: &Isotopism) -> bool {
    if from.n != to.n || from.field() != to.field() || iso.check(from.n).is_err() {
        return false;
    }
    if !(iso.a.is_invertible() && iso.b.is_invertible() && iso.c.is_invertible()) {
        return false;
    }
    (0..from.n).all(|i| {
        (0..from.n).all(|j| {
            iso.c.mul_vec(from.product(i, j)).expect("shape")
                == to.mul(&iso.a.column(i), &iso.b.column(j))
        })
    })
}

/// Replaces `*` by `x ∘ y = R_e⁻¹(x) * L_e⁻¹(y)` where `e` is the first basis
/// vector; `e * e` is the identity of `∘`. The returned isotopism
/// `(R_e, L_e, I)` carries `*` onto `∘`.
pub fn normalize_to_semifield(pre: &PreSemifield) -> Result<(Semifield, Isotopism)> {
    if !pre.certified {
        return Err(SemifieldError::NotCertified);
    }
    let e = pre.unit(0);
    let iso = Isotopism {
        a: pre.right_matrix(&e),
        b: pre.left_matrix(&e),
        c: Matrix::identity(pre.field(), pre.n),
    };
    let out = apply_isotopism(pre, &iso)?;
    let identity = pre.mul(&e, &e);
    Ok((Semifield { pre: out, identity }, iso))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nucleus {
    pub subspace: Subspace,
    pub size: u128,
    pub is_field: bool,
}

/// `{z : (x*z)*y = x*(z*y) for all x, y}`.
pub fn middle_nucleus(sf: &Semifield) -> Result<Nucleus> {
    let pre = &sf.pre;
    let n = pre.n;
    let f = pre.field();
    let mut cols = Vec::with_capacity(n);
    for l in 0..n {
        let z = pre.unit(l);
        let mut col = Vec::with_capacity(n * n * n);
        for i in 0..n {
            let x = pre.unit(i);
            let xz = pre.mul(&x, &z);
            for j in 0..n {
                let y = pre.unit(j);
                let lhs = pre.mul(&xz, &y);
                let rhs = pre.mul(&x, &pre.mul(&z, &y));
                col.extend(lhs.iter().zip(&rhs).map(|(&a, &b)| f.sub(a, b)));
            }
        }
        cols.push(col);
    }
    let subspace = Matrix::from_columns(f, n * n * n, &cols)?.kernel();
    let size = subspace.cardinality();
    let is_field = nucleus_is_field(sf, &subspace);
    Ok(Nucleus { subspace, size, is_field })
}

fn nucleus_is_field(sf: &Semifield, mid: &Subspace) -> bool {
    let pre = &sf.pre;
    if !mid.contains_vector(&sf.identity).unwrap_or(false) {
        return false;
    }
    let basis = mid.basis_vectors();
    let closed = basis
        .iter()
        .all(|u| basis.iter().all(|v| mid.contains_vector(&pre.mul(u, v)).unwrap_or(false)));
    if !closed {
        return false;
    }
    let elems: Vec<Vec<Elem>> = mid.elements().collect();
    elems
        .iter()
        .filter(|z| z.iter().any(|&x| x != 0))
        .all(|z| elems.iter().any(|w| pre.mul(z, w) == sf.identity))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssocComm {
    pub is_commutative: bool,
    pub is_associative: bool,
    pub commutativity_witness: Option<(usize, usize)>,
    pub associativity_witness: Option<(usize, usize, usize)>,
}

pub fn assoc_comm(pre: &PreSemifield) -> AssocComm {
    let n = pre.n;
    let commutativity_witness = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| pre.product(i, j) != pre.product(j, i));
    let associativity_witness = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
        .find(|&(i, j, k)| {
            let (x, y, z) = (pre.unit(i), pre.unit(j), pre.unit(k));
            pre.mul(&pre.mul(&x, &y), &z) != pre.mul(&x, &pre.mul(&y, &z))
        });
    AssocComm {
        is_commutative: commutativity_witness.is_none(),
        is_associative: associativity_witness.is_none(),
        commutativity_witness,
        associativity_witness,
    }
}

/// `L(F)` on `A ⊕ B ⊕ C` (each a copy of `F^n`) with `[a, b] = a * b ∈ C`.
pub fn lie_of(pre: &PreSemifield) -> LieAlgebra {
    let n = pre.n;
    let d = 3 * n;
    let f = pre.field();
    let mut c = vec![0; d * d * d];
    for i in 0..n {
        for j in 0..n {
            for (k, &x) in pre.product(i, j).iter().enumerate() {
                c[(i * d + n + j) * d + 2 * n + k] = x;
                c[((n + j) * d + i) * d + 2 * n + k] = f.neg(x);
            }
        }
    }
    let labels = ["A", "B", "C"]
        .iter()
        .flat_map(|b| (0..n).map(move |i| format!("{b}{i}")))
        .collect();
    LieAlgebra::unchecked(pre.tower.clone(), d, c, labels).expect("consistent shape")
}

/// Block-diagonal map `A ⊕ B ⊕ C` on `L(F)`.
pub fn block_map(iso: &Isotopism) -> Matrix {
    let n = iso.a.rows();
    let f = iso.a.field();
    let mut m = Matrix::zeros(f, 3 * n, 3 * n);
    for (blk, comp) in [&iso.a, &iso.b, &iso.c].into_iter().enumerate() {
        for r in 0..n {
            for c in 0..n {
                m.set(blk * n + r, blk * n + c, comp.get(r, c));
            }
        }
    }
    m
}

/// Whether `map` (columns are images of basis vectors) is a bijective bracket-preserving map.
pub fn is_lie_isomorphism(src: &LieAlgebra, dst: &LieAlgebra, map: &Matrix) -> bool {
    if map.rows() != dst.dim() || map.cols() != src.dim() || !map.is_invertible() {
        return false;
    }
    let d = src.dim();
    (0..d).all(|i| {
        (i + 1..d).all(|j| {
            let lhs = map.mul_vec(src.structure(i, j)).expect("shape");
            lhs == dst.bracket_raw(&map.column(i), &map.column(j))
        })
    })
}

/// Checks the block map of `iso` against `L(from)` and `L(to)` with no
/// precondition on `iso`.
pub fn block_map_preserves_brackets(from: &PreSemifield, to: &PreSemifield, iso: &Isotopism) -> bool {
    if iso.check(from.n).is_err() || from.n != to.n {
        return false;
    }
    is_lie_isomorphism(&lie_of(from), &lie_of(to), &block_map(iso))
}

/// The Lie isomorphism `L(from) → L(to)` induced by a valid isotopism.
pub fn lie_iso_from_isotopism(from: &PreSemifield, to: &PreSemifield, iso: &Isotopism) -> Result<(Matrix, bool)> {
    if !verify_isotopism(from, to, iso) {
        return Err(SemifieldError::IsotopismInvalid);
    }
    let m = block_map(iso);
    let ok = is_lie_isomorphism(&lie_of(from), &lie_of(to), &m);
    Ok((m, ok))
}

/// The pairs `(x, y)` with `a * y = x * b`, i.e. the `A ⊕ B` part of the
/// centralizer of `(a, b, c)` in `L(F)`, and whether it is abelian there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerPair {
    pub subspace: Subspace,
    pub abelian: bool,
    /// Two basis vectors of the centralizer whose bracket is nonzero.
    pub witness: Option<(Vec<Elem>, Vec<Elem>)>,
}

pub fn centralizer_pair(pre: &PreSemifield, a: &[Elem], b: &[Elem]) -> Result<CentralizerPair> {
    let n = pre.n;
    let f = pre.field();
    if a.len() != n || b.len() != n {
        return Err(LinalgError::Shape("pair components must have length n".into()).into());
    }
    // (x, y) commutes with (a, b) iff a*y - x*b = 0
    let bracket = |u: &[Elem], v: &[Elem]| -> Vec<Elem> {
        let p = pre.mul(&u[..n], &v[n..]);
        let q = pre.mul(&v[..n], &u[n..]);
        p.iter().zip(&q).map(|(&s, &t)| f.sub(s, t)).collect()
    };
    let mut ab = a.to_vec();
    ab.extend_from_slice(b);
    let cols: Vec<Vec<Elem>> = (0..2 * n).map(|j| bracket(&ab, &unit(2 * n, j))).collect();
    let subspace = Matrix::from_columns(f, n, &cols)?.kernel();
    let basis = subspace.basis_vectors();
    let witness = basis.iter().enumerate().find_map(|(i, u)| {
        basis[i + 1..]
            .iter()
            .find(|v| bracket(u, v).iter().any(|&x| x != 0))
            .map(|v| (u.clone(), v.clone()))
    });
    Ok(CentralizerPair { subspace, abelian: witness.is_none(), witness })
}

fn fail(h: HypothesisFailure) -> SemifieldError {
    SemifieldError::HypothesisFailure(h)
}

/// Recovers a presemifield from a class-2 Camina algebra of dimension `3n`
/// with abelian ideals `A*`, `B*` of dimension `2n` meeting in `L'`.
pub fn extract(l: &LieAlgebra, astar: &Subspace, bstar: &Subspace, opts: &Enumeration) -> Result<PreSemifield> {
    if l.dim() % 3 != 0 || l.dim() == 0 {
        return Err(fail(HypothesisFailure::DimensionNotMultipleOfThree));
    }
    let n = l.dim() / 3;
    let s = l.series();
    if s.nilpotency_class != Some(2) {
        return Err(fail(HypothesisFailure::NotClassTwo));
    }
    let derived = l.derived();
    if derived.dim() != n {
        return Err(fail(HypothesisFailure::DerivedDimension));
    }
    if l.center() != derived {
        return Err(fail(HypothesisFailure::CenterNotDerived));
    }
    for star in [astar, bstar] {
        if star.ambient() != l.dim() || star.dim() != 2 * n {
            return Err(fail(HypothesisFailure::StarDimension));
        }
        if !star.contains(&derived)? {
            return Err(fail(HypothesisFailure::StarMissesDerived));
        }
        if !l.is_abelian_subspace(star) {
            return Err(fail(HypothesisFailure::StarNotAbelian));
        }
    }
    if astar.intersect(bstar)? != derived {
        return Err(fail(HypothesisFailure::StarsMeetBeyondDerived));
    }
    if !l.is_camina(opts)?.is_camina {
        return Err(fail(HypothesisFailure::NotCamina));
    }
    let complement = |star: &Subspace| -> Result<Vec<Vec<Elem>>> {
        let mut acc = derived.clone();
        let mut out = Vec::with_capacity(n);
        for v in star.basis_vectors() {
            if !acc.contains_vector(&v)? {
                acc = acc.sum(&Subspace::span(l.field(), l.dim(), &[v.clone()])?)?;
                out.push(v);
            }
        }
        Ok(out)
    };
    let a = complement(astar)?;
    let b = complement(bstar)?;
    let mut mult = Vec::with_capacity(n * n * n);
    for x in &a {
        for y in &b {
            let w = l.bracket(x, y)?;
            mult.extend(derived.coordinates_of(&w).expect("bracket lies in the derived algebra"));
        }
    }
    PreSemifield::new(l.tower().clone(), n, mult)?
        .certify(opts)
        .map_err(|e| match e {
            SemifieldError::ZeroDivisor { .. } => fail(HypothesisFailure::NotPresemifield),
            e => e,
        })
}

/// The `A ⊕ C` and `B ⊕ C` ideals of `L(F)`.
pub fn standard_stars(pre: &PreSemifield) -> (Subspace, Subspace) {
    let n = pre.n;
    let f = pre.field();
    (
        Subspace::coordinate(f, 3 * n, (0..n).chain(2 * n..3 * n)),
        Subspace::coordinate(f, 3 * n, (n..3 * n).collect::<Vec<_>>()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FieldTower {
        FieldTower::for_order(9).unwrap()
    }

    #[test]
    fn dickson_over_f9() {
        let d = dickson(&f9(), 1, None).unwrap();
        let sf = d.semifield();
        assert_eq!(sf.pre().n(), 4);
        assert_eq!(sf.pre().field().size(), 3);
        assert!(sf.pre().is_certified());
        let ac = assoc_comm(sf.pre());
        assert!(ac.is_commutative);
        assert!(!ac.is_associative);
        assert_eq!(find_identity(sf.pre()), Some(sf.identity().to_vec()));
        let mid = middle_nucleus(sf).unwrap();
        assert_eq!(mid.size, 9);
        assert!(mid.is_field);
    }

    #[test]
    fn dickson_rejects_bad_input() {
        assert!(matches!(dickson(&FieldTower::for_order(3).unwrap(), 1, None), Err(SemifieldError::UnsupportedParameters(_))));
        assert!(matches!(dickson(&f9(), 0, None), Err(SemifieldError::UnsupportedParameters(_))));
        assert!(matches!(dickson(&f9(), 1, Some(1)), Err(SemifieldError::BadParameter(_))));
        assert!(matches!(dickson(&FieldTower::for_order(4).unwrap(), 1, None), Err(SemifieldError::UnsupportedParameters(_))));
    }

    #[test]
    fn pair_roundtrip() {
        let d = dickson(&f9(), 1, None).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(d.vector_to_pair(&d.pair_to_vector((a, b))), (a, b));
            }
        }
    }

    #[test]
    fn field_semifield_is_associative() {
        let sf = field_semifield(&FieldTower::prime(3).unwrap(), 2).unwrap();
        let ac = assoc_comm(sf.pre());
        assert!(ac.is_associative && ac.is_commutative);
        assert_eq!(middle_nucleus(&sf).unwrap().size, 9);
        assert_eq!(sf.pre().product(1, 1), &[2, 0]);
    }

    #[test]
    fn zero_divisors_are_reported() {
        // F_3[x]/(x^2 - 1) has (1 + x)(1 - x) = 0
        let mult = vec![1, 0, 0, 1, 0, 1, 1, 0];
        let pre = PreSemifield::new(FieldTower::prime(3).unwrap(), 2, mult).unwrap();
        let r = certify_f3(&pre, &Enumeration::default()).unwrap();
        assert!(!r.no_zero_divisors && r.right_agrees);
        let (a, b) = r.witness.unwrap();
        assert!(pre.mul(&a, &b).iter().all(|&x| x == 0));
        assert_eq!(normalize_to_semifield(&pre).unwrap_err(), SemifieldError::NotCertified);
    }

    #[test]
    fn normalize_gives_identity() {
        let base = field_semifield(&FieldTower::prime(3).unwrap(), 2).unwrap();
        let iso = Isotopism {
            a: Matrix::random_invertible(base.pre().field(), 2, 1),
            b: Matrix::random_invertible(base.pre().field(), 2, 2),
            c: Matrix::random_invertible(base.pre().field(), 2, 3),
        };
        let pre = apply_isotopism(base.pre(), &iso).unwrap();
        assert!(verify_isotopism(base.pre(), &pre, &iso));
        let (sf, back) = normalize_to_semifield(&pre).unwrap();
        assert_eq!(find_identity(sf.pre()), Some(sf.identity().to_vec()));
        assert!(verify_isotopism(&pre, sf.pre(), &back));
    }

    #[test]
    fn extract_inverts_lie_of() {
        let d = dickson(&f9(), 1, None).unwrap();
        let pre = d.semifield().pre();
        let l = lie_of(pre);
        assert_eq!(l.validate(), Ok(()));
        let (a, b) = standard_stars(pre);
        let back = extract(&l, &a, &b, &Enumeration::default()).unwrap();
        assert_eq!(back.tensor(), pre.tensor());
    }
}
