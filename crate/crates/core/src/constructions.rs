//! Builders for the named algebras: `U_n(q^m)` by restriction of scalars, the
//! six-slot matrix family `𝔏_m`, the five-slot algebra `𝔤_m` (directly and as
//! `𝔏_m / Z(𝔏_m)`), the structure constants `κ`, and the presented algebra `𝒱`.
//!
//! Restriction of scalars uses the power basis `1, α, …, α^{m-1}` of
//! `F_{q^m}` over `F_q`; basis vector `slot * m + t` is `α^t` placed in `slot`.

use thiserror::Error;

use crate::gf::{factor_prime_power, Elem, FieldTower, Gf, GfError};
use crate::liealg::{LieAlgebra, LieError, PresentationData, Relation};
use crate::semifield::{self, SemifieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Semifield(#[from] Box<SemifieldError>),
    #[error("characteristic {0} is not supported (the bracket needs an invertible 2)")]
    UnsupportedCharacteristic(u32),
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
}

impl From<SemifieldError> for ConstructionError {
    fn from(e: SemifieldError) -> Self {
        ConstructionError::Semifield(Box::new(e))
    }
}

/// `F_q ⊂ F_{q^m}` with the power basis of the defining polynomial's root `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarExtension {
    base: FieldTower,
    ext: FieldTower,
    m: usize,
}

impl ScalarExtension {
    pub fn new(q: u64, m: usize) -> Result<Self, ConstructionError> {
        Self::with_poly(q, m, None)
    }

    /// `poly` overrides the defining polynomial of `F_{q^m}` over `F_q`.
    pub fn with_poly(q: u64, m: usize, poly: Option<Vec<Elem>>) -> Result<Self, ConstructionError> {
        Self::over(FieldTower::for_order(q)?, m, poly)
    }

    pub fn over(base: FieldTower, m: usize, poly: Option<Vec<Elem>>) -> Result<Self, ConstructionError> {
        if m == 0 {
            return Err(ConstructionError::UnsupportedParameters("m must be at least 1".into()));
        }
        let ext = match (m, poly) {
            (1, None) => base.clone(),
            (1, Some(p)) if p.len() == 2 => base.clone(),
            (_, Some(p)) if p.len() != m + 1 => {
                return Err(ConstructionError::UnsupportedParameters(format!(
                    "polynomial of degree {} for an extension of degree {m}",
                    p.len().saturating_sub(1)
                )))
            }
            (_, Some(p)) => base.extend_with(p)?,
            (_, None) => base.extend(m)?,
        };
        Ok(ScalarExtension { base, ext, m })
    }

    pub fn base_tower(&self) -> &FieldTower {
        &self.base
    }

    pub fn ext_tower(&self) -> &FieldTower {
        &self.ext
    }

    pub fn base_field(&self) -> &Gf {
        self.base.top()
    }

    pub fn ext_field(&self) -> &Gf {
        self.ext.top()
    }

    pub fn q(&self) -> u32 {
        self.base_field().size()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `α^t` in `F_{q^m}`.
    pub fn alpha_pow(&self, t: usize) -> Elem {
        if self.m == 1 {
            return 1;
        }
        self.ext_field().pow(self.q(), t as u64)
    }

    /// Power-basis coordinates over `F_q`.
    pub fn coords(&self, x: Elem) -> Vec<Elem> {
        if self.m == 1 {
            vec![x]
        } else {
            self.ext_field().base_coordinates(x)
        }
    }

    /// An element of `F_q` viewed in `F_{q^m}`.
    pub fn embed(&self, c: Elem) -> Elem {
        c
    }

    /// `Σ c_t α^t` for coordinates over `F_q`.
    pub fn from_coords(&self, coords: &[Elem]) -> Elem {
        let f = self.ext_field();
        coords
            .iter()
            .enumerate()
            .fold(0, |acc, (t, &c)| f.add(acc, f.mul(self.embed(c), self.alpha_pow(t))))
    }

    fn require_odd(&self) -> Result<(), ConstructionError> {
        let p = self.base.p();
        if p == 2 {
            Err(ConstructionError::UnsupportedCharacteristic(p))
        } else {
            Ok(())
        }
    }
}

/// Expands an `F_{q^m}`-bilinear bracket on `slots`-tuples into `F_q` structure constants.
fn restrict_bilinear(
    ext: &ScalarExtension,
    slot_names: &[String],
    bracket: impl Fn(&Gf, &[Elem], &[Elem]) -> Vec<Elem>,
) -> Result<LieAlgebra, ConstructionError> {
    let m = ext.m();
    let slots = slot_names.len();
    let dim = slots * m;
    let big = ext.ext_field();
    let mut c = vec![0; dim * dim * dim];
    let unit = |idx: usize| {
        let mut v = vec![0; slots];
        v[idx / m] = ext.alpha_pow(idx % m);
        v
    };
    for i in 0..dim {
        let u = unit(i);
        for j in 0..dim {
            let v = unit(j);
            let w = bracket(big, &u, &v);
            for (s, &x) in w.iter().enumerate() {
                for (t, y) in ext.coords(x).into_iter().enumerate() {
                    c[(i * dim + j) * dim + s * m + t] = y;
                }
            }
        }
    }
    let labels = (0..dim)
        .map(|i| {
            if m == 1 {
                slot_names[i].clone()
            } else {
                format!("{}{}", slot_names[i / m], i % m)
            }
        })
        .collect();
    Ok(LieAlgebra::new(ext.base_tower().clone(), dim, c, labels)?)
}

/// Strictly upper triangular `n x n` matrices over `F_{q^m}`, as an `F_q`-algebra.
pub fn u_n_restricted(n: usize, ext: &ScalarExtension) -> Result<LieAlgebra, ConstructionError> {
    if n != 3 && n != 5 {
        return Err(ConstructionError::UnsupportedParameters(format!("U_n needs n in {{3, 5}}, got {n}")));
    }
    let positions: Vec<(usize, usize)> =
        (0..n).flat_map(|r| (r + 1..n).map(move |s| (r, s))).collect();
    let names: Vec<String> = positions.iter().map(|(r, s)| format!("E{}{}_", r + 1, s + 1)).collect();
    let names: Vec<String> = if ext.m() == 1 {
        names.iter().map(|s| s.trim_end_matches('_').to_string()).collect()
    } else {
        names
    };
    restrict_bilinear(ext, &names, |f, u, v| {
        let to_mat = |x: &[Elem]| {
            let mut mtx = vec![0; n * n];
            for (k, &(r, s)) in positions.iter().enumerate() {
                mtx[r * n + s] = x[k];
            }
            mtx
        };
        let comm = matrix_commutator(f, n, &to_mat(u), &to_mat(v));
        positions.iter().map(|&(r, s)| comm[r * n + s]).collect()
    })
}

fn matrix_commutator(f: &Gf, n: usize, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0;
            for k in 0..n {
                acc = f.add(acc, f.mul(a[i * n + k], b[k * n + j]));
                acc = f.sub(acc, f.mul(b[i * n + k], a[k * n + j]));
            }
            out[i * n + j] = acc;
        }
    }
    out
}

fn slot_names(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// The five-slot bracket on `F_{q^m}^5`.
pub fn gm_bracket(f: &Gf, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
    let (a, b, c) = (u[0], u[1], u[2]);
    let (x, y, z) = (v[0], v[1], v[2]);
    let two = f.from_int(2);
    let ay_bx = f.sub(f.mul(a, y), f.mul(b, x));
    let d = f.add(ay_bx, f.mul(two, f.sub(f.mul(c, x), f.mul(a, z))));
    let e = f.add(ay_bx, f.mul(two, f.sub(f.mul(b, z), f.mul(c, y))));
    vec![0, 0, ay_bx, d, e]
}

/// The six-slot bracket of `𝔏_m` as a closed formula.
pub fn lm_bracket(f: &Gf, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
    let mut out = gm_bracket(f, u, v);
    let (a, b, d, e) = (u[0], u[1], u[3], u[4]);
    let (x, y, uu, vv) = (v[0], v[1], v[3], v[4]);
    let last = f.sub(
        f.add(f.mul(a, vv), f.mul(d, y)),
        f.add(f.mul(b, uu), f.mul(e, x)),
    );
    out.push(last);
    out
}

/// The 5x5 matrix attached to `(a, b, c, d, e, f)`; row 5 is zero.
pub fn lm_matrix(f: &Gf, t: &[Elem]) -> Vec<Elem> {
    let (a, b, c, d, e, ff) = (t[0], t[1], t[2], t[3], t[4], t[5]);
    let mut m = vec![0; 25];
    m[1] = a;
    m[2] = c;
    m[3] = d;
    m[4] = ff;
    m[5 + 2] = b;
    m[5 + 3] = f.sub(f.add(a, b), c);
    m[5 + 4] = e;
    m[10 + 3] = a;
    m[10 + 4] = c;
    m[15 + 4] = b;
    m
}

/// Reads `(a, …, f)` back from a matrix, if it has the `𝔏_m` shape.
pub fn lm_tuple(f: &Gf, m: &[Elem]) -> Option<Vec<Elem>> {
    let t = vec![m[1], m[7], m[2], m[3], m[9], m[4]];
    (lm_matrix(f, &t) == m).then_some(t)
}

/// Whether the closed six-slot formula agrees with literal matrix commutators
/// (and stays inside the family) on every pair of `F_q`-basis elements.
pub fn lm_formula_matches_matrices(ext: &ScalarExtension) -> bool {
    let f = ext.ext_field();
    let m = ext.m();
    let unit = |idx: usize| {
        let mut v = vec![0; 6];
        v[idx / m] = ext.alpha_pow(idx % m);
        v
    };
    (0..6 * m).all(|i| {
        (0..6 * m).all(|j| {
            let (u, v) = (unit(i), unit(j));
            let comm = matrix_commutator(f, 5, &lm_matrix(f, &u), &lm_matrix(f, &v));
            lm_tuple(f, &comm) == Some(lm_bracket(f, &u, &v))
        })
    })
}

pub fn lm_matrix_algebra(ext: &ScalarExtension) -> Result<LieAlgebra, ConstructionError> {
    ext.require_odd()?;
    restrict_bilinear(ext, &slot_names(&["a", "b", "c", "d", "e", "f"]), lm_bracket)
}

pub fn gm_direct(ext: &ScalarExtension) -> Result<LieAlgebra, ConstructionError> {
    ext.require_odd()?;
    restrict_bilinear(ext, &slot_names(&["a", "b", "c", "d", "e"]), gm_bracket)
}

/// `𝔏_m / Z(𝔏_m)`; the quotient basis is the first five slots, matching [`gm_direct`].
pub fn gm_quotient(ext: &ScalarExtension) -> Result<LieAlgebra, ConstructionError> {
    let lm = lm_matrix_algebra(ext)?;
    let z = lm.center();
    Ok(lm.quotient(&z)?.algebra)
}

/// `κ[i][j][t]`: coordinates of `α^{i+j}` in the power basis (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaTensor {
    pub m: usize,
    pub field: Gf,
    pub alpha_poly: Vec<Elem>,
    kappa: Vec<Elem>,
}

impl KappaTensor {
    pub fn get(&self, i: usize, j: usize, t: usize) -> Elem {
        self.kappa[(i * self.m + j) * self.m + t]
    }

    pub fn row(&self, i: usize, j: usize) -> &[Elem] {
        let m = self.m;
        &self.kappa[(i * m + j) * m..(i * m + j + 1) * m]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.m).all(|i| (0..self.m).all(|j| self.row(i, j) == self.row(j, i)))
    }
}

pub fn kappa(ext: &ScalarExtension) -> KappaTensor {
    let m = ext.m();
    let f = ext.ext_field();
    let mut kappa = vec![0; m * m * m];
    for i in 0..m {
        for j in 0..m {
            let x = f.mul(ext.alpha_pow(i), ext.alpha_pow(j));
            kappa[(i * m + j) * m..(i * m + j + 1) * m].copy_from_slice(&ext.coords(x));
        }
    }
    let alpha_poly = if m == 1 { vec![0, 1] } else { f.poly().to_vec() };
    KappaTensor { m, field: ext.base_field().clone(), alpha_poly, kappa }
}

/// Algebra whose basis is the presentation's generators, with the listed brackets.
pub fn presentation_algebra(tower: &FieldTower, pres: &PresentationData) -> Result<LieAlgebra, LieError> {
    let f = tower.top();
    let d = pres.generators.len();
    let mut c = vec![0; d * d * d];
    for r in &pres.relations {
        for &(k, coeff) in &r.rhs {
            let fwd = (r.left * d + r.right) * d + k;
            let bwd = (r.right * d + r.left) * d + k;
            c[fwd] = f.add(c[fwd], coeff);
            c[bwd] = f.sub(c[bwd], coeff);
        }
    }
    LieAlgebra::new(tower.clone(), d, c, pres.generators.clone())
}

/// The presented algebra `𝒱` in basis order `x, y, h, z` (the five-generator
/// presentation when `m = 1`), validated.
pub fn v_presentation(ext: &ScalarExtension) -> Result<(LieAlgebra, PresentationData), ConstructionError> {
    let m = ext.m();
    let pres = if m == 1 {
        let g = slot_names(&["x1", "x2", "y", "z1", "z2"]);
        PresentationData {
            generators: g,
            relations: vec![
                Relation { left: 0, right: 1, rhs: vec![(2, 1)] },
                Relation { left: 0, right: 2, rhs: vec![(3, 1)] },
                Relation { left: 1, right: 2, rhs: vec![(4, 1)] },
            ],
        }
    } else {
        let k = kappa(ext);
        let (x, y, h, z) = (0, m, 2 * m, 3 * m);
        let mut generators = Vec::with_capacity(5 * m);
        for name in ["x", "y", "h"] {
            generators.extend((1..=m).map(|i| format!("{name}{i}")));
        }
        generators.extend((1..=2 * m).map(|i| format!("z{i}")));
        let combo = |i: usize, j: usize, offset: usize| -> Vec<(usize, Elem)> {
            k.row(i, j)
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(t, &c)| (offset + t, c))
                .collect()
        };
        let mut relations = Vec::new();
        for i in 0..m {
            for j in 0..m {
                relations.push(Relation { left: h + i, right: x + j, rhs: combo(i, j, z) });
                relations.push(Relation { left: h + i, right: y + j, rhs: combo(i, j, z + m) });
                relations.push(Relation { left: x + i, right: y + j, rhs: combo(i, j, h) });
            }
        }
        PresentationData { generators, relations }
    };
    let algebra = presentation_algebra(ext.base_tower(), &pres)?;
    Ok((algebra, pres))
}

/// Images of the generators of [`v_presentation`] inside [`gm_direct`].
pub fn v_images_in_gm(ext: &ScalarExtension) -> Vec<Vec<Elem>> {
    let m = ext.m();
    let f = ext.ext_field();
    let two = f.from_int(2);
    let vec_of = |slots: [Elem; 5]| -> Vec<Elem> {
        slots.iter().flat_map(|&x| ext.coords(x)).collect()
    };
    if m == 1 {
        let neg_two = f.neg(two);
        return vec![
            vec_of([1, 0, 0, 0, 0]),
            vec_of([0, 1, 0, 0, 0]),
            vec_of([0, 0, 1, 1, 1]),
            vec_of([0, 0, 0, neg_two, 0]),
            vec_of([0, 0, 0, 0, two]),
        ];
    }
    let mut out = Vec::with_capacity(5 * m);
    for i in 0..m {
        out.push(vec_of([ext.alpha_pow(i), 0, 0, 0, 0]));
    }
    for i in 0..m {
        out.push(vec_of([0, ext.alpha_pow(i), 0, 0, 0]));
    }
    for i in 0..m {
        let a = ext.alpha_pow(i);
        out.push(vec_of([0, 0, a, a, a]));
    }
    for i in 0..m {
        out.push(vec_of([0, 0, 0, f.mul(two, ext.alpha_pow(i)), 0]));
    }
    for i in 0..m {
        out.push(vec_of([0, 0, 0, 0, f.neg(f.mul(two, ext.alpha_pow(i)))]));
    }
    out
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra,
}

/// Named small algebras over `F_q` used for regression scans.
pub fn catalog(q: u64) -> Result<Vec<CatalogEntry>, ConstructionError> {
    let (p, s) = factor_prime_power(q)?;
    let e1 = ScalarExtension::new(q, 1)?;
    let e2 = ScalarExtension::new(q, 2)?;
    let mut out = vec![
        CatalogEntry { name: "abelian-3".into(), algebra: LieAlgebra::abelian(e1.base_tower().clone(), 3) },
        CatalogEntry { name: "heisenberg".into(), algebra: u_n_restricted(3, &e1)? },
        CatalogEntry { name: "u3-restricted-m2".into(), algebra: u_n_restricted(3, &e2)? },
        CatalogEntry { name: "u5".into(), algebra: u_n_restricted(5, &e1)? },
        CatalogEntry {
            name: "lf-field-2".into(),
            algebra: semifield::lie_of(semifield::field_semifield(e1.base_tower(), 2)?.pre()),
        },
    ];
    if p != 2 {
        out.push(CatalogEntry { name: "lm-1".into(), algebra: lm_matrix_algebra(&e1)? });
        out.push(CatalogEntry { name: "gm-1".into(), algebra: gm_direct(&e1)? });
        out.push(CatalogEntry { name: "gm-2".into(), algebra: gm_direct(&e2)? });
        out.push(CatalogEntry { name: "v-1".into(), algebra: v_presentation(&e1)?.0 });
        out.push(CatalogEntry { name: "v-2".into(), algebra: v_presentation(&e2)?.0 });
        // Dickson needs a proper extension of the prime field to twist by Frobenius
        let dq = if s > 1 { q } else { q * q };
        let d = semifield::dickson(&FieldTower::for_order(dq)?, 1, None)?;
        out.push(CatalogEntry { name: "lf-dickson".into(), algebra: semifield::lie_of(d.semifield().pre()) });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_examples() {
        let k1 = kappa(&ScalarExtension::new(3, 1).unwrap());
        assert_eq!(k1.get(0, 0, 0), 1);
        let k = kappa(&ScalarExtension::new(3, 2).unwrap());
        assert_eq!(k.row(1, 1), &[2, 0]);
        assert_eq!(k.row(0, 1), &[0, 1]);
        assert_eq!(k.row(1, 0), &[0, 1]);
        assert!(k.is_symmetric());
    }

    #[test]
    fn lm_formula_on_basis() {
        let ext = ScalarExtension::new(3, 1).unwrap();
        let l = lm_matrix_algebra(&ext).unwrap();
        assert_eq!(l.dim(), 6);
        let e = |i| l.basis_vector(i);
        assert_eq!(l.bracket(&e(0), &e(1)).unwrap(), vec![0, 0, 1, 1, 1, 0]);
        assert_eq!(l.center(), crate::Subspace::coordinate(l.field(), 6, [5]));
        assert!(lm_formula_matches_matrices(&ext));
    }

    #[test]
    fn gm_rejects_characteristic_two() {
        let ext = ScalarExtension::new(4, 1).unwrap();
        assert_eq!(gm_direct(&ext).unwrap_err(), ConstructionError::UnsupportedCharacteristic(2));
        assert!(lm_matrix_algebra(&ext).is_err());
    }

    #[test]
    fn gm1_brackets() {
        let g = gm_direct(&ScalarExtension::new(3, 1).unwrap()).unwrap();
        let x = [1, 0, 0, 0, 0];
        assert_eq!(g.bracket(&x, &[0, 1, 0, 0, 0]).unwrap(), vec![0, 0, 1, 1, 1]);
        assert_eq!(g.bracket(&x, &[0, 0, 1, 1, 1]).unwrap(), vec![0, 0, 0, 1, 0]);
        assert_eq!(g.bracket(&x, &x).unwrap(), vec![0; 5]);
    }

    #[test]
    fn u3_over_f3_is_heisenberg() {
        let u = u_n_restricted(3, &ScalarExtension::new(3, 1).unwrap()).unwrap();
        assert_eq!(u.dim(), 3);
        assert_eq!(u.series().nilpotency_class, Some(2));
        assert_eq!(u.bracket(&[1, 0, 0], &[0, 0, 1]).unwrap(), vec![0, 1, 0]);
        assert!(u_n_restricted(4, &ScalarExtension::new(3, 1).unwrap()).is_err());
    }

    #[test]
    fn polynomial_override() {
        let ext = ScalarExtension::with_poly(3, 2, Some(vec![2, 1, 1])).unwrap();
        assert_eq!(ext.ext_field().poly(), &[2, 1, 1]);
        assert!(ScalarExtension::with_poly(3, 2, Some(vec![2, 0, 1])).is_err());
        assert!(ScalarExtension::with_poly(3, 2, Some(vec![1, 1])).is_err());
    }
}
