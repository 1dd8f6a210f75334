//! Finite fields built as explicit towers `F_p ⊂ F_{p^s} ⊂ …`.
//!
//! Every element of a level is identified with its *canonical index*: the
//! coordinate vector over the base level, read as a mixed-radix number with the
//! constant coefficient least significant. Recursively this is just the base-`p`
//! expansion of the flattened `F_p` coordinates, so the index order is the
//! canonical lexicographic element order (0 first) and a base element `c`
//! embeds into an extension as the index `c` itself.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Canonical index of a field element within its level.
pub type Elem = u32;

/// Largest level cardinality the tables are built for.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Levels at or below this size get full addition/multiplication tables.
const TABLE_LIMIT: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("field of characteristic 2 or order 2 has no nonsquare")]
    NoNonsquare,
    #[error("polynomial is not monic of degree >= 1")]
    NotMonic,
    #[error("polynomial is reducible over the base field")]
    Reducible,
    #[error("coefficient {0} out of range for the base field")]
    BadCoefficient(u64),
    #[error("field of order {0} exceeds the supported size")]
    TooLarge(u64),
    #[error("coordinate vector has length {got}, expected {expected}")]
    BadCoordinates { got: usize, expected: usize },
}

/// One level of a tower. Immutable after construction.
pub struct Level {
    p: u32,
    size: u32,
    degree: usize,
    prime_degree: usize,
    base: Option<Gf>,
    poly: Vec<Elem>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    add_tab: Vec<Elem>,
    mul_tab: Vec<Elem>,
}

/// Cheap-to-clone handle to a field level.
#[derive(Clone)]
pub struct Gf(Arc<Level>);

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.size)?;
        if !self.0.poly.is_empty() {
            write!(f, "[{:?}]", self.0.poly)?;
        }
        Ok(())
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.size == other.0.size
                && self.0.poly == other.0.poly
                && self.0.base == other.0.base)
    }
}

impl Eq for Gf {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q = p^s`.
pub fn factor_prime_power(q: u64) -> Result<(u32, usize), GfError> {
    if q < 2 {
        return Err(GfError::NotPrimePower(q));
    }
    let p = prime_factors(q)[0];
    let mut s = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        s += 1;
    }
    if r != 1 {
        return Err(GfError::NotPrimePower(q));
    }
    if p > u32::MAX as u64 {
        return Err(GfError::TooLarge(q));
    }
    Ok((p as u32, s))
}

impl Gf {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Gf, GfError> {
        if !is_prime(p as u64) {
            return Err(GfError::NotPrime(p as u64));
        }
        if p as u64 > MAX_FIELD_SIZE {
            return Err(GfError::TooLarge(p as u64));
        }
        let mul = |a: Elem, b: Elem| ((a as u64 * b as u64) % p as u64) as Elem;
        let gen = (1..p)
            .find(|&g| is_generator(g, p as u64, &mul))
            .unwrap_or(1);
        Ok(Gf(Arc::new(Level::assemble(p, p, 1, 1, None, Vec::new(), gen, &mul))))
    }

    /// Extension of `self` by a monic irreducible polynomial (constant term first).
    pub fn extend_with(&self, poly: Vec<Elem>) -> Result<Gf, GfError> {
        let d = poly.len().saturating_sub(1);
        if d == 0 || poly[d] != 1 {
            return Err(GfError::NotMonic);
        }
        if let Some(&c) = poly.iter().find(|&&c| c >= self.size()) {
            return Err(GfError::BadCoefficient(c as u64));
        }
        let size = (self.size() as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
        if size > MAX_FIELD_SIZE {
            return Err(GfError::TooLarge(size));
        }
        if !is_irreducible(self, &poly) {
            return Err(GfError::Reducible);
        }
        let size = size as u32;
        let base = self.clone();
        let bq = self.size();
        let mul = |a: Elem, b: Elem| -> Elem {
            let av = digits(a, bq, d);
            let bv = digits(b, bq, d);
            undigits(&poly_mul_mod(&base, &av, &bv, &poly), bq)
        };
        let gen = (1..size)
            .find(|&g| is_generator(g, size as u64, &mul))
            .expect("multiplicative group of a finite field is cyclic");
        let level = Level::assemble(
            self.p(),
            size,
            d,
            self.0.prime_degree * d,
            Some(self.clone()),
            poly.clone(),
            gen,
            &mul,
        );
        Ok(Gf(Arc::new(level)))
    }

    /// Extension by the lexicographically smallest monic irreducible of degree `d`.
    pub fn extend(&self, d: usize) -> Result<Gf, GfError> {
        let size = (self.size() as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
        if size > MAX_FIELD_SIZE {
            return Err(GfError::TooLarge(size));
        }
        self.extend_with(find_irreducible(self, d))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Cardinality `q` of this level.
    pub fn size(&self) -> u32 {
        self.0.size
    }

    /// Degree over the immediate base (1 for a prime field).
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Degree over the prime field.
    pub fn prime_degree(&self) -> usize {
        self.0.prime_degree
    }

    pub fn base(&self) -> Option<&Gf> {
        self.0.base.as_ref()
    }

    /// Defining polynomial over the base, constant term first (empty for `F_p`).
    pub fn poly(&self) -> &[Elem] {
        &self.0.poly
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.base.is_none()
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn one(&self) -> Elem {
        1
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let l = &*self.0;
        if !l.add_tab.is_empty() {
            return l.add_tab[(a * l.size + b) as usize];
        }
        if l.base.is_none() {
            let s = a + b;
            return if s >= l.p { s - l.p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut w) = (0, 1);
        for _ in 0..l.prime_degree {
            let s = (a % l.p + b % l.p) % l.p;
            out += s * w;
            w *= l.p;
            a /= l.p;
            b /= l.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let l = &*self.0;
        if l.base.is_none() {
            return if a == 0 { 0 } else { l.p - a };
        }
        let mut a = a;
        let (mut out, mut w) = (0, 1);
        for _ in 0..l.prime_degree {
            let d = a % l.p;
            out += ((l.p - d) % l.p) * w;
            w *= l.p;
            a /= l.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let l = &*self.0;
        if !l.mul_tab.is_empty() {
            return l.mul_tab[(a * l.size + b) as usize];
        }
        if a == 0 || b == 0 {
            return 0;
        }
        l.exp[(l.log[a as usize] + l.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        let l = &*self.0;
        let order = l.size - 1;
        Ok(l.exp[((order - l.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = &*self.0;
        let order = (l.size - 1) as u64;
        let k = (l.log[a as usize] as u64 * (e % order)) % order;
        l.exp[k as usize]
    }

    /// `a^(p^i)`.
    pub fn frob(&self, a: Elem, i: u32) -> Elem {
        if a == 0 {
            return 0;
        }
        let order = (self.size() - 1) as u64;
        if order == 0 {
            return a;
        }
        let mut e = 1u64;
        for _ in 0..i {
            e = e * self.p() as u64 % order;
        }
        // exponent p^i ≡ e (mod q-1); e = 0 only when q - 1 | p^i, impossible for a ≠ 0 here
        self.pow(a, if e == 0 { order } else { e })
    }

    /// Coordinates over the immediate base level (`[a]` for a prime field).
    pub fn base_coordinates(&self, a: Elem) -> Vec<Elem> {
        match &self.0.base {
            None => vec![a],
            Some(b) => digits(a, b.size(), self.0.degree),
        }
    }

    pub fn from_base_coordinates(&self, coords: &[Elem]) -> Result<Elem, GfError> {
        match &self.0.base {
            None => {
                if coords.len() != 1 {
                    return Err(GfError::BadCoordinates { got: coords.len(), expected: 1 });
                }
                if coords[0] >= self.size() {
                    return Err(GfError::BadCoefficient(coords[0] as u64));
                }
                Ok(coords[0])
            }
            Some(b) => {
                if coords.len() != self.0.degree {
                    return Err(GfError::BadCoordinates {
                        got: coords.len(),
                        expected: self.0.degree,
                    });
                }
                if let Some(&c) = coords.iter().find(|&&c| c >= b.size()) {
                    return Err(GfError::BadCoefficient(c as u64));
                }
                Ok(undigits(coords, b.size()))
            }
        }
    }

    /// Flattened coordinates over `F_p`.
    pub fn prime_coordinates(&self, a: Elem) -> Vec<u32> {
        digits(a, self.p(), self.prime_degree())
    }

    pub fn from_prime_coordinates(&self, coords: &[u64]) -> Result<Elem, GfError> {
        if coords.len() != self.prime_degree() {
            return Err(GfError::BadCoordinates {
                got: coords.len(),
                expected: self.prime_degree(),
            });
        }
        let mut out = 0u32;
        for &c in coords.iter().rev() {
            if c >= self.p() as u64 {
                return Err(GfError::BadCoefficient(c));
            }
            out = out * self.p() + c as u32;
        }
        Ok(out)
    }

    pub fn is_square(&self, a: Elem) -> bool {
        if a == 0 || self.p() == 2 {
            return true;
        }
        self.0.log[a as usize] % 2 == 0
    }

    /// First element in canonical order that is not a square.
    pub fn find_nonsquare(&self) -> Result<Elem, GfError> {
        if self.p() == 2 {
            return Err(GfError::NoNonsquare);
        }
        let mut squares = vec![false; self.size() as usize];
        for y in self.elements() {
            squares[self.mul(y, y) as usize] = true;
        }
        self.elements()
            .find(|&x| !squares[x as usize])
            .ok_or(GfError::NoNonsquare)
    }

    /// Small integer as a field element.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p() as i64) as Elem
    }
}

impl Level {
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        p: u32,
        size: u32,
        degree: usize,
        prime_degree: usize,
        base: Option<Gf>,
        poly: Vec<Elem>,
        gen: Elem,
        mul: &dyn Fn(Elem, Elem) -> Elem,
    ) -> Level {
        let order = (size - 1) as usize;
        let mut exp = vec![0; 2 * order.max(1)];
        let mut log = vec![0; size as usize];
        let mut x: Elem = 1;
        for k in 0..order.max(1) {
            exp[k] = x;
            log[x as usize] = k as u32;
            x = mul(x, gen);
        }
        for k in order..exp.len() {
            exp[k] = exp[k - order.max(1)];
        }
        let mut level = Level {
            p,
            size,
            degree,
            prime_degree,
            base,
            poly,
            exp,
            log,
            add_tab: Vec::new(),
            mul_tab: Vec::new(),
        };
        if size <= TABLE_LIMIT {
            let gf = Gf(Arc::new(level));
            let n = size as usize;
            let mut add_tab = vec![0; n * n];
            let mut mul_tab = vec![0; n * n];
            for a in 0..size {
                for b in 0..size {
                    add_tab[(a * size + b) as usize] = gf.add(a, b);
                    mul_tab[(a * size + b) as usize] = gf.mul(a, b);
                }
            }
            level = Arc::try_unwrap(gf.0).ok().expect("sole owner");
            level.add_tab = add_tab;
            level.mul_tab = mul_tab;
        }
        level
    }
}

fn is_generator(g: Elem, size: u64, mul: &dyn Fn(Elem, Elem) -> Elem) -> bool {
    let order = size - 1;
    if order == 1 {
        return g == 1;
    }
    let pw = |mut e: u64| {
        let (mut acc, mut b) = (1, g);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    prime_factors(order).into_iter().all(|r| pw(order / r) != 1)
}

pub(crate) fn digits(mut a: Elem, radix: u32, len: usize) -> Vec<Elem> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(a % radix);
        a /= radix;
    }
    out
}

pub(crate) fn undigits(ds: &[Elem], radix: u32) -> Elem {
    ds.iter().rev().fold(0, |acc, &d| acc * radix + d)
}

fn trim(mut p: Vec<Elem>) -> Vec<Elem> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(f: &Gf, a: &[Elem], m: &[Elem]) -> Vec<Elem> {
    let dm = m.len() - 1;
    let mut r = trim(a.to_vec());
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (k, &c) in m.iter().enumerate() {
            let t = f.mul(lead, c);
            r[shift + k] = f.sub(r[shift + k], t);
        }
        r = trim(r);
    }
    r
}

fn poly_mul_mod(f: &Gf, a: &[Elem], b: &[Elem], m: &[Elem]) -> Vec<Elem> {
    let d = m.len() - 1;
    let mut prod = vec![0; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = f.add(prod[i + j], f.mul(x, y));
        }
    }
    let mut r = poly_rem(f, &prod, m);
    r.resize(d, 0);
    r
}

/// Irreducibility over `base` by trial division with every monic factor of
/// degree at most half.
pub fn is_irreducible(base: &Gf, poly: &[Elem]) -> bool {
    let d = poly.len() - 1;
    let bq = base.size() as u64;
    for k in 1..=d / 2 {
        let count = bq.pow(k as u32);
        for idx in 0..count {
            let mut g = digits(idx as Elem, base.size(), k);
            g.push(1);
            if poly_rem(base, poly, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `d` over
/// `base`, constant coefficient least significant.
pub fn find_irreducible(base: &Gf, d: usize) -> Vec<Elem> {
    assert!(d >= 1, "degree must be positive");
    let count = (base.size() as u64).pow(d as u32);
    (0..count)
        .map(|idx| {
            let mut f = digits(idx as Elem, base.size(), d);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(base, f))
        .expect("irreducible polynomials exist in every degree")
}

/// A chain of explicit extensions starting at `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTower {
    levels: Vec<Gf>,
}

impl FieldTower {
    pub fn prime(p: u32) -> Result<Self, GfError> {
        Ok(FieldTower { levels: vec![Gf::prime(p)?] })
    }

    /// `F_p ⊂ F_q` for a prime power `q = p^s` (a single level when `s = 1`).
    pub fn for_order(q: u64) -> Result<Self, GfError> {
        let (p, s) = factor_prime_power(q)?;
        let t = Self::prime(p)?;
        if s > 1 {
            t.extend(s)
        } else {
            Ok(t)
        }
    }

    /// Rebuilds a tower from its defining polynomials (validated).
    pub fn from_polys(p: u32, polys: &[Vec<Elem>]) -> Result<Self, GfError> {
        let mut t = Self::prime(p)?;
        for poly in polys {
            t = t.extend_with(poly.clone())?;
        }
        Ok(t)
    }

    pub fn extend(&self, d: usize) -> Result<Self, GfError> {
        let top = self.top().extend(d)?;
        let mut levels = self.levels.clone();
        levels.push(top);
        Ok(FieldTower { levels })
    }

    pub fn extend_with(&self, poly: Vec<Elem>) -> Result<Self, GfError> {
        let top = self.top().extend_with(poly)?;
        let mut levels = self.levels.clone();
        levels.push(top);
        Ok(FieldTower { levels })
    }

    pub fn p(&self) -> u32 {
        self.levels[0].p()
    }

    pub fn levels(&self) -> &[Gf] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> &Gf {
        &self.levels[k]
    }

    pub fn top(&self) -> &Gf {
        self.levels.last().expect("tower has a prime level")
    }

    /// Tower truncated to its first `k + 1` levels.
    pub fn truncate(&self, k: usize) -> FieldTower {
        FieldTower { levels: self.levels[..=k].to_vec() }
    }

    /// Defining polynomials of the extension levels, bottom up.
    pub fn polys(&self) -> Vec<Vec<Elem>> {
        self.levels[1..].iter().map(|l| l.poly().to_vec()).collect()
    }
}

/// An element tagged with its level, for checked arithmetic at API boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Gf,
    value: Elem,
}

impl FieldElement {
    pub fn new(field: &Gf, value: Elem) -> Result<Self, GfError> {
        if value >= field.size() {
            return Err(GfError::BadCoefficient(value as u64));
        }
        Ok(FieldElement { field: field.clone(), value })
    }

    pub fn from_coords(field: &Gf, coords: &[Elem]) -> Result<Self, GfError> {
        let value = field.from_base_coordinates(coords)?;
        Ok(FieldElement { field: field.clone(), value })
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coords(&self) -> Vec<Elem> {
        self.field.base_coordinates(self.value)
    }

    fn same(&self, other: &Self) -> Result<(), GfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    fn wrap(&self, value: Elem) -> Self {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GfError> {
        self.same(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GfError> {
        self.same(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GfError> {
        self.same(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self, GfError> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.wrap(self.field.pow(self.value, e))
    }

    pub fn frob(&self, i: u32) -> Self {
        self.wrap(self.field.frob(self.value, i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf9() -> Gf {
        Gf::prime(3).unwrap().extend(2).unwrap()
    }

    #[test]
    fn irreducible_examples() {
        let f5 = Gf::prime(5).unwrap();
        assert_eq!(find_irreducible(&f5, 1), vec![0, 1]);
        let f3 = Gf::prime(3).unwrap();
        assert_eq!(find_irreducible(&f3, 2), vec![1, 0, 1]);
        assert_eq!(find_irreducible(&f3, 3), vec![1, 2, 0, 1]);
    }

    #[test]
    fn small_arithmetic() {
        let f3 = Gf::prime(3).unwrap();
        assert_eq!(f3.inv(2).unwrap(), 2);
        assert_eq!(f3.inv(0), Err(GfError::DivisionByZero));
        let g = gf9();
        let i = 3; // residue of t
        assert_eq!(g.mul(i, i), 2);
        assert_eq!(g.frob(i, 1), 6); // 2i
    }

    #[test]
    fn enumeration_order() {
        let g = gf9();
        let coords: Vec<_> = g.elements().map(|x| g.base_coordinates(x)).collect();
        assert_eq!(coords[0], vec![0, 0]);
        assert_eq!(coords[3], vec![0, 1]);
        assert_eq!(coords[4], vec![1, 1]);
        assert_eq!(coords[8], vec![2, 2]);
        let g27 = Gf::prime(3).unwrap().extend(3).unwrap();
        assert_eq!(g27.elements().count(), 27);
    }

    #[test]
    fn nonsquares() {
        assert_eq!(Gf::prime(3).unwrap().find_nonsquare().unwrap(), 2);
        assert_eq!(Gf::prime(7).unwrap().find_nonsquare().unwrap(), 3);
        // (a + b i)^2 = (a^2 - b^2) + 2ab i in F_3[i]/(i^2 + 1), indices a + 3b
        let mut squares = [false; 9];
        for a in 0..3i64 {
            for b in 0..3i64 {
                let re = (a * a - b * b).rem_euclid(3);
                let im = (2 * a * b).rem_euclid(3);
                squares[(re + 3 * im) as usize] = true;
            }
        }
        let first = (0..9).find(|&x| !squares[x]).unwrap() as Elem;
        assert_eq!(first, 4); // 1 + i; i itself is (1 + 2i)^2
        assert_eq!(gf9().find_nonsquare().unwrap(), first);
        assert_eq!(Gf::prime(2).unwrap().find_nonsquare(), Err(GfError::NoNonsquare));
        let f4 = Gf::prime(2).unwrap().extend(2).unwrap();
        assert_eq!(f4.find_nonsquare(), Err(GfError::NoNonsquare));
    }

    #[test]
    fn base_coordinates_of_powers() {
        let g = gf9();
        let alpha = 3;
        assert_eq!(g.base_coordinates(1), vec![1, 0]);
        assert_eq!(g.base_coordinates(g.pow(alpha, 2)), vec![2, 0]);
        assert_eq!(g.base_coordinates(g.pow(alpha, 3)), vec![0, 2]);
    }

    #[test]
    fn explicit_polynomial_validation() {
        let f3 = Gf::prime(3).unwrap();
        assert_eq!(f3.extend_with(vec![2, 0, 1]).unwrap_err(), GfError::Reducible);
        assert_eq!(f3.extend_with(vec![1, 0, 2]).unwrap_err(), GfError::NotMonic);
        assert!(f3.extend_with(vec![2, 1, 1]).is_ok());
        assert_eq!(Gf::prime(9).unwrap_err(), GfError::NotPrime(9));
        assert_eq!(factor_prime_power(12), Err(GfError::NotPrimePower(12)));
        assert_eq!(factor_prime_power(49), Ok((7, 2)));
    }

    #[test]
    fn large_level_without_tables_agrees() {
        // GF(3^6) has no lookup tables; compare against GF(27) ⊂ GF(729) products
        let f = Gf::prime(3).unwrap().extend(6).unwrap();
        for a in (0..f.size()).step_by(37) {
            for b in (0..f.size()).step_by(41) {
                let s = f.add(a, b);
                assert_eq!(f.sub(s, b), a);
                if a != 0 {
                    assert_eq!(f.mul(f.mul(a, b), f.inv(a).unwrap()), b);
                }
            }
        }
    }

    #[test]
    fn element_wrapper_rejects_mixed_levels() {
        let f3 = Gf::prime(3).unwrap();
        let a = FieldElement::new(&f3, 1).unwrap();
        let b = FieldElement::new(&gf9(), 1).unwrap();
        assert_eq!(a.add(&b), Err(GfError::FieldMismatch));
        assert_eq!(a.add(&a).unwrap().value(), 2);
    }
}
