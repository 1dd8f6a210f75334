//! JSON file formats. Field elements are written as their coordinate arrays
//! over the prime field (constant term first); polynomials and vectors are
//! arrays of such coordinate arrays.

use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Elem, FieldTower, Gf, GfError};
use crate::liealg::{LieAlgebra, LieError};
use crate::linalg::Matrix;
use crate::semifield::{Isotopism, PreSemifield, SemifieldError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Semifield(#[from] SemifieldError),
    #[error("invalid file: {0}")]
    Format(String),
}

type Result<T> = std::result::Result<T, IoError>;

pub type Coords = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerJson {
    pub p: u32,
    pub tower: Vec<Vec<Coords>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub p: u32,
    pub tower: Vec<Vec<Coords>>,
    pub dim: usize,
    pub labels: Vec<String>,
    pub brackets: Vec<(usize, usize, Vec<(usize, Coords)>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemifieldJson {
    pub p: u32,
    pub tower: Vec<Vec<Coords>>,
    pub n: usize,
    /// `mult[i][j]` is `e_i · e_j` as a vector of coordinate arrays.
    pub mult: Vec<Vec<Vec<Coords>>>,
    pub identity: Option<Vec<Coords>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotopismJson {
    pub p: u32,
    pub tower: Vec<Vec<Coords>>,
    pub a: Vec<Vec<Coords>>,
    pub b: Vec<Vec<Coords>>,
    pub c: Vec<Vec<Coords>>,
}

pub fn encode(f: &Gf, a: Elem) -> Coords {
    f.prime_coordinates(a)
}

pub fn decode(f: &Gf, c: &[u32]) -> Result<Elem> {
    if c.len() != f.prime_degree() {
        return Err(GfError::BadCoordinates { got: c.len(), expected: f.prime_degree() }.into());
    }
    let c: Vec<u64> = c.iter().map(|&x| x as u64).collect();
    Ok(f.from_prime_coordinates(&c)?)
}

fn encode_vec(f: &Gf, v: &[Elem]) -> Vec<Coords> {
    v.iter().map(|&a| encode(f, a)).collect()
}

fn decode_vec(f: &Gf, v: &[Coords], len: usize) -> Result<Vec<Elem>> {
    if v.len() != len {
        return Err(IoError::Format(format!("vector of length {}, expected {len}", v.len())));
    }
    v.iter().map(|c| decode(f, c)).collect()
}

pub fn tower_to_json(t: &FieldTower) -> TowerJson {
    let tower = t
        .levels()
        .iter()
        .skip(1)
        .map(|lvl| encode_vec(lvl.base().expect("extension level"), lvl.poly()))
        .collect();
    TowerJson { p: t.p(), tower }
}

pub fn tower_from_json(p: u32, polys: &[Vec<Coords>]) -> Result<FieldTower> {
    let mut t = FieldTower::prime(p)?;
    for poly in polys {
        let f = t.top().clone();
        let coeffs = poly.iter().map(|c| decode(&f, c)).collect::<Result<Vec<_>>>()?;
        t = t.extend_with(coeffs)?;
    }
    Ok(t)
}

pub fn matrix_to_json(m: &Matrix) -> Vec<Vec<Coords>> {
    (0..m.rows()).map(|i| encode_vec(m.field(), m.row(i))).collect()
}

pub fn matrix_from_json(f: &Gf, rows: &[Vec<Coords>]) -> Result<Matrix> {
    let cols = rows.first().map_or(0, |r| r.len());
    let data = rows.iter().map(|r| decode_vec(f, r, cols)).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(f, cols, &data).map_err(|e| IoError::Format(e.to_string()))
}

pub fn algebra_to_json(l: &LieAlgebra) -> AlgebraJson {
    let t = tower_to_json(l.tower());
    let f = l.field();
    let mut brackets = Vec::new();
    for i in 0..l.dim() {
        for j in i + 1..l.dim() {
            let terms: Vec<(usize, Coords)> = l
                .structure(i, j)
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(k, &c)| (k, encode(f, c)))
                .collect();
            if !terms.is_empty() {
                brackets.push((i, j, terms));
            }
        }
    }
    AlgebraJson { p: t.p, tower: t.tower, dim: l.dim(), labels: l.labels().to_vec(), brackets }
}

/// Rebuilds and validates the algebra.
pub fn algebra_from_json(j: &AlgebraJson) -> Result<LieAlgebra> {
    let tower = tower_from_json(j.p, &j.tower)?;
    let f = tower.top().clone();
    let d = j.dim;
    let mut c = vec![0; d * d * d];
    for (i, k, terms) in &j.brackets {
        let (i, k) = (*i, *k);
        if i >= k || k >= d {
            return Err(IoError::Format(format!("bracket index pair ({i}, {k}) must satisfy i < j < dim")));
        }
        for (t, coeff) in terms {
            if *t >= d {
                return Err(IoError::Format(format!("basis index {t} out of range")));
            }
            let x = decode(&f, coeff)?;
            c[(i * d + k) * d + t] = f.add(c[(i * d + k) * d + t], x);
            c[(k * d + i) * d + t] = f.sub(c[(k * d + i) * d + t], x);
        }
    }
    if !j.labels.is_empty() && j.labels.len() != d {
        return Err(IoError::Format(format!("{} labels for dimension {d}", j.labels.len())));
    }
    Ok(LieAlgebra::new(tower, d, c, j.labels.clone())?)
}

pub fn semifield_to_json(pre: &PreSemifield, identity: Option<&[Elem]>) -> SemifieldJson {
    let t = tower_to_json(pre.tower());
    let f = pre.field();
    let n = pre.n();
    let mult = (0..n)
        .map(|i| (0..n).map(|j| encode_vec(f, pre.product(i, j))).collect())
        .collect();
    SemifieldJson { p: t.p, tower: t.tower, n, mult, identity: identity.map(|e| encode_vec(f, e)) }
}

/// The product (uncertified) and the recorded identity, if any.
pub fn semifield_from_json(j: &SemifieldJson) -> Result<(PreSemifield, Option<Vec<Elem>>)> {
    let tower = tower_from_json(j.p, &j.tower)?;
    let f = tower.top().clone();
    let n = j.n;
    if j.mult.len() != n {
        return Err(IoError::Format(format!("mult has {} rows, expected {n}", j.mult.len())));
    }
    let mut mult = Vec::with_capacity(n * n * n);
    for row in &j.mult {
        if row.len() != n {
            return Err(IoError::Format(format!("mult row of length {}, expected {n}", row.len())));
        }
        for v in row {
            mult.extend(decode_vec(&f, v, n)?);
        }
    }
    let identity = j.identity.as_ref().map(|e| decode_vec(&f, e, n)).transpose()?;
    Ok((PreSemifield::new(tower, n, mult)?, identity))
}

pub fn isotopism_to_json(tower: &FieldTower, iso: &Isotopism) -> IsotopismJson {
    let t = tower_to_json(tower);
    IsotopismJson {
        p: t.p,
        tower: t.tower,
        a: matrix_to_json(&iso.a),
        b: matrix_to_json(&iso.b),
        c: matrix_to_json(&iso.c),
    }
}

pub fn isotopism_from_json(j: &IsotopismJson) -> Result<(FieldTower, Isotopism)> {
    let tower = tower_from_json(j.p, &j.tower)?;
    let f = tower.top().clone();
    let iso = Isotopism {
        a: matrix_from_json(&f, &j.a)?,
        b: matrix_from_json(&f, &j.b)?,
        c: matrix_from_json(&f, &j.c)?,
    };
    Ok((tower, iso))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let s = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&s)?)
}

pub fn to_json_string<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gm_direct, ScalarExtension};
    use crate::semifield::dickson;

    #[test]
    fn tower_roundtrip() {
        let t = FieldTower::for_order(9).unwrap().extend(2).unwrap();
        let j = tower_to_json(&t);
        assert_eq!(j.tower[0], vec![vec![1], vec![0], vec![1]]);
        assert_eq!(j.tower[1].len(), 3);
        assert_eq!(tower_from_json(j.p, &j.tower).unwrap(), t);
    }

    #[test]
    fn algebra_roundtrip() {
        let g = gm_direct(&ScalarExtension::new(3, 2).unwrap()).unwrap();
        let j = algebra_to_json(&g);
        assert!(j.brackets.iter().all(|(i, k, _)| i < k));
        let text = to_json_string(&j);
        let back = algebra_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn rejects_bad_brackets() {
        let g = gm_direct(&ScalarExtension::new(3, 1).unwrap()).unwrap();
        let mut j = algebra_to_json(&g);
        j.brackets[0].0 = j.brackets[0].1;
        assert!(matches!(algebra_from_json(&j), Err(IoError::Format(_))));
        let mut j = algebra_to_json(&g);
        j.brackets[0].2[0].1 = vec![1, 1];
        assert!(matches!(algebra_from_json(&j), Err(IoError::Gf(_))));
    }

    #[test]
    fn semifield_roundtrip() {
        let d = dickson(&FieldTower::for_order(9).unwrap(), 1, None).unwrap();
        let sf = d.semifield();
        let j = semifield_to_json(sf.pre(), Some(sf.identity()));
        let (pre, id) = semifield_from_json(&j).unwrap();
        assert_eq!(pre.tensor(), sf.pre().tensor());
        assert_eq!(id.as_deref(), Some(sf.identity()));
    }
}
