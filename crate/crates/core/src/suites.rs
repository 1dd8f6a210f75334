//! Named verification suites. Each suite builds its algebras, runs a fixed
//! list of checks and returns a [`SuiteReport`]; a check that would exceed
//! the enumeration budget is reported as skipped rather than failed.

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::constructions::{
    catalog, gm_direct, gm_quotient, kappa, lm_formula_matches_matrices, u_n_restricted,
    v_images_in_gm, v_presentation, ConstructionError, ScalarExtension,
};
use crate::gf::{Elem, FieldTower};
use crate::liealg::{check_hom, Cosets, Enumeration, LieAlgebra, LieError, DEFAULT_BUDGET};
use crate::linalg::{LinalgError, Matrix, Subspace};
use crate::semifield::{
    self, apply_isotopism, assoc_comm, centralizer_pair, certify_f3, extract, is_lie_isomorphism,
    lie_iso_from_isotopism, lie_of, middle_nucleus, normalize_to_semifield, standard_stars,
    verify_isotopism, Isotopism, PreSemifield, SemifieldError,
};

pub const SUITES: &[&str] =
    &["gm", "dimensions", "u3char", "uniqueness", "central_quotient", "semifield_roundtrip", "parity"];

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}` (known: {list})", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Semifield(#[from] SemifieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteParams {
    pub q: u64,
    pub m: usize,
    pub seed: u64,
    pub budget: u128,
    /// Not part of the report: results do not depend on it.
    #[serde(skip)]
    pub workers: usize,
}

impl SuiteParams {
    pub fn new(q: u64, m: usize) -> Self {
        SuiteParams { q, m, seed: DEFAULT_SEED, budget: DEFAULT_BUDGET, workers: 1 }
    }

    fn enumeration(&self) -> Enumeration {
        Enumeration::default().with_budget(self.budget).with_workers(self.workers)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: SuiteParams,
    pub checks: Vec<Check>,
    /// Wall-clock time; the only field that is not reproducible.
    pub elapsed_ms: u128,
    pub version: &'static str,
}

impl SuiteReport {
    /// Every non-skipped check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with `elapsed_ms` zeroed, for byte-level comparisons.
    pub fn to_canonical_json(&self) -> String {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        r.to_json()
    }
}

enum CheckError {
    Budget { required: u128, budget: u128 },
    Other(String),
}

trait BudgetSource: std::fmt::Display {
    fn budget(&self) -> Option<(u128, u128)>;
}

impl BudgetSource for LieError {
    fn budget(&self) -> Option<(u128, u128)> {
        match self {
            LieError::BudgetExceeded { required, budget } => Some((*required, *budget)),
            _ => None,
        }
    }
}

impl BudgetSource for SemifieldError {
    fn budget(&self) -> Option<(u128, u128)> {
        match self {
            SemifieldError::Lie(e) => e.budget(),
            _ => None,
        }
    }
}

impl BudgetSource for ConstructionError {
    fn budget(&self) -> Option<(u128, u128)> {
        match self {
            ConstructionError::Lie(e) => e.budget(),
            ConstructionError::Semifield(e) => e.budget(),
            _ => None,
        }
    }
}

impl BudgetSource for LinalgError {
    fn budget(&self) -> Option<(u128, u128)> {
        None
    }
}

impl<E: BudgetSource> From<E> for CheckError {
    fn from(e: E) -> Self {
        match e.budget() {
            Some((required, budget)) => CheckError::Budget { required, budget },
            None => CheckError::Other(e.to_string()),
        }
    }
}

type Outcome = Result<(bool, String), CheckError>;

struct Runner {
    checks: Vec<Check>,
}

impl Runner {
    fn check(&mut self, name: &str, f: impl FnOnce() -> Outcome) {
        let (status, details) = match f() {
            Ok((true, d)) => (Status::Pass, d),
            Ok((false, d)) => (Status::Fail, d),
            Err(CheckError::Budget { required, budget }) => {
                (Status::Skipped, format!("needs {required} representatives, budget is {budget}"))
            }
            Err(CheckError::Other(e)) => (Status::Fail, format!("error: {e}")),
        };
        self.checks.push(Check { name: name.to_string(), status, details });
    }
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport, SuiteError> {
    let start = Instant::now();
    let mut r = Runner { checks: Vec::new() };
    match name {
        "gm" => suite_gm(params, &mut r)?,
        "dimensions" => suite_dimensions(params, &mut r)?,
        "u3char" => suite_u3char(params, &mut r)?,
        "uniqueness" => suite_uniqueness(params, &mut r)?,
        "central_quotient" => suite_central_quotient(params, &mut r)?,
        "semifield_roundtrip" => suite_semifield_roundtrip(params, &mut r)?,
        "parity" => suite_parity(params, &mut r)?,
        other => return Err(SuiteError::UnknownSuite(other.to_string())),
    }
    Ok(SuiteReport {
        suite: name.to_string(),
        params: *params,
        checks: r.checks,
        elapsed_ms: start.elapsed().as_millis(),
        version: env!("CARGO_PKG_VERSION"),
    })
}

/// Which checks back each structural statement. Keys describe the statement.
pub const COVERAGE: &[(&str, &str, &[&str])] = &[
    ("three-step type (0,n) forces n even", "parity", &["two-breadth class-3 catalog algebras have even breadth"]),
    ("g_m has breadth type (0,2m)", "gm", &["breadth type is {0, 2m}", "exactly q^(2m) elements have breadth 0"]),
    ("g_m structure: derived dim 3m, gamma_3 = center, class 3", "gm", &[
        "derived algebra has dimension 3m",
        "third lower central term equals the center",
        "nilpotency class is 3",
        "algebra is stem",
    ]),
    ("c-slot unit has breadth 2m and centralizer g_m'", "gm", &[
        "c-slot unit has breadth 2m",
        "centralizer of the c-slot unit is the derived algebra",
    ]),
    ("g_m is the matrix algebra modulo its center", "uniqueness", &[
        "six-slot commutator formula matches matrix commutators",
        "quotient of the matrix algebra by its center equals the direct construction",
    ]),
    ("uniqueness of the class-3 stem algebra of type (0,2m)", "uniqueness", &[
        "presented algebra satisfies the Jacobi identity",
        "presentation maps onto g_m isomorphically",
    ]),
    ("elements of maximal relative breadth generate", "dimensions", &["elements with C_L'(x) = Z(L) span L"]),
    ("dim L/L' equals the breadth", "dimensions", &["dim L/L' equals the nonzero breadth"]),
    ("centralizers of x outside L' meet L' in the center", "dimensions", &[
        "C_L(x) meets L' in Z(L) for x outside L'",
        "dim C_L(x)/Z(L) equals dim L'/Z(L) for x outside L'",
    ]),
    ("dim L'/Z(L) = m", "dimensions", &["dim L'/Z(L) equals m"]),
    ("center equals gamma_3 of dimension 2m", "dimensions", &["center equals the third lower central term and has dimension 2m"]),
    ("class-2 Camina with abelian centralizers iff U_3(q^n)", "u3char", &[
        "U_3 is Camina of class 2 with derived dimension m",
        "U_3 has abelian noncentral centralizers",
        "Dickson Lie algebra is Camina",
        "Dickson Lie algebra has a non-abelian centralizer",
    ]),
    ("Dickson example: explicit centralizer and middle nucleus", "u3char", &[
        "Dickson centralizer matches the explicit parametrization",
        "Dickson middle nucleus is the 9-element field {(a, 0)}",
    ]),
    ("abelian pair centralizers and the middle nucleus", "u3char", &[
        "C_(1,x) is abelian for x in the middle nucleus",
        "abelian pair centralizers are graphs of multiplication",
    ]),
    ("Camina algebras with two abelian ideals come from semifields", "semifield_roundtrip", &[
        "dickson: extract inverts lie_of",
        "field: extract inverts lie_of",
    ]),
    ("isotopic semifields give isomorphic Lie algebras", "semifield_roundtrip", &[
        "dickson: seeded isotopisms induce Lie isomorphisms",
        "field: seeded isotopisms induce Lie isomorphisms",
    ]),
    ("pre-semifields are isotopic to semifields", "semifield_roundtrip", &[
        "dickson: normalization witness verifies",
        "field: normalization witness verifies",
    ]),
    ("central quotient is U_3(q^m)", "central_quotient", &[
        "quotient is Camina",
        "quotient has abelian noncentral centralizers",
        "semifield from two centralizers normalizes to a field",
    ]),
    ("[u,v] central implies [u,v+h] = 0 for some h in L'", "central_quotient", &["central brackets can be killed inside L'"]),
    ("[a,b] central implies [[a,t],b] = [[b,t],a]", "central_quotient", &["central brackets satisfy the swap identity"]),
];

fn ok(pass: bool, details: impl Into<String>) -> Outcome {
    Ok((pass, details.into()))
}

fn dims(s: &Subspace) -> String {
    format!("dim {}", s.dim())
}

/// Unit vector `α^0` in slot `slot` of a slot-major restricted algebra.
fn slot_unit(dim: usize, m: usize, slot: usize) -> Vec<Elem> {
    let mut v = vec![0; dim];
    v[slot * m] = 1;
    v
}

fn suite_gm(p: &SuiteParams, r: &mut Runner) -> Result<(), SuiteError> {
    let ext = ScalarExtension::new(p.q, p.m)?;
    let g = gm_direct(&ext)?;
    let m = p.m;
    let opts = p.enumeration();
    let report = g.breadth_report(&opts);
    let s = g.series();
    r.check("breadth type is {0, 2m}", || {
        let b = report.clone()?;
        ok(b.type_set == vec![0, 2 * m], format!("type set {:?}", b.type_set))
    });
    r.check("exactly q^(2m) elements have breadth 0", || {
        let b = report.clone()?;
        let want = (p.q as u128).pow(2 * m as u32);
        let got = b.histogram.get(&0).copied().unwrap_or(0);
        ok(got == want, format!("histogram {:?}, expected {want} at 0", b.histogram))
    });
    r.check("derived algebra has dimension 3m", || {
        ok(s.derived_dim == 3 * m, format!("gamma dims {:?}", s.gamma_dims))
    });
    r.check("third lower central term equals the center", || {
        let lcs = g.lower_central_series();
        let z = g.center();
        ok(lcs.len() > 2 && lcs[2] == z && z.dim() == 2 * m, format!("center {}", dims(&z)))
    });
    r.check("nilpotency class is 3", || ok(s.nilpotency_class == Some(3), format!("{:?}", s.nilpotency_class)));
    r.check("algebra is stem", || ok(s.is_stem, format!("center dim {}, derived dim {}", s.center_dim, s.derived_dim)));
    let c_unit = slot_unit(g.dim(), m, 2);
    r.check("c-slot unit has breadth 2m", || {
        let b = g.breadth(&c_unit)?;
        ok(b == 2 * m, format!("breadth {b}"))
    });
    r.check("centralizer of the c-slot unit is the derived algebra", || {
        let c = g.centralizer(&c_unit)?;
        ok(c == g.derived(), format!("centralizer {}", dims(&c)))
    });
    Ok(())
}

fn outside(sub: &Subspace, v: &[Elem]) -> bool {
    !sub.contains_vector(v).expect("shape")
}

fn suite_dimensions(p: &SuiteParams, r: &mut Runner) -> Result<(), SuiteError> {
    let ext = ScalarExtension::new(p.q, p.m)?;
    let g = gm_direct(&ext)?;
    let m = p.m;
    let opts = p.enumeration();
    let derived = g.derived();
    let center = g.center();
    let cosets = Cosets::of(&center);
    r.check("dim L/L' equals the nonzero breadth", || {
        let b = g.breadth_report(&opts)?;
        let n = b.type_set.iter().copied().max().unwrap_or(0);
        ok(g.dim() - derived.dim() == n && b.type_set.len() == 2, format!("dim L/L' = {}, breadths {:?}", g.dim() - derived.dim(), b.type_set))
    });
    r.check("C_L(x) meets L' in Z(L) for x outside L'", || {
        let count = cosets.check_budget(p.budget)?;
        for idx in 0..count {
            let x = cosets.rep(idx);
            if outside(&derived, &x) {
                let c = g.centralizer(&x)?;
                if c.intersect(&derived)? != center {
                    return ok(false, format!("fails at {x:?}"));
                }
            }
        }
        ok(true, format!("{count} representatives"))
    });
    r.check("dim C_L(x)/Z(L) equals dim L'/Z(L) for x outside L'", || {
        let count = cosets.check_budget(p.budget)?;
        let want = derived.dim() - center.dim();
        for idx in 0..count {
            let x = cosets.rep(idx);
            if outside(&derived, &x) {
                let c = g.centralizer(&x)?;
                if c.dim() - center.dim() != want {
                    return ok(false, format!("fails at {x:?}"));
                }
            }
        }
        ok(true, format!("{count} representatives, common value {want}"))
    });
    r.check("dim L'/Z(L) equals m", || {
        let d = derived.dim() - center.dim();
        ok(d == m, format!("dim L'/Z(L) = {d}"))
    });
    r.check("elements with C_L'(x) = Z(L) span L", || {
        let count = cosets.check_budget(p.budget)?;
        let mut members = Vec::new();
        for idx in 0..count {
            let x = cosets.rep(idx);
            if g.centralizer(&x)?.intersect(&derived)? == center {
                members.push(x);
            }
        }
        let found = members.len();
        // the set is a union of cosets of Z(L), so its span contains Z(L) once nonempty
        if found > 0 {
            members.extend(center.basis_vectors());
        }
        let span = g.span(&members)?;
        ok(span == g.full(), format!("{found} of {count} representatives qualify; span {}", dims(&span)))
    });
    r.check("center equals the third lower central term and has dimension 2m", || {
        let lcs = g.lower_central_series();
        ok(lcs.len() > 2 && lcs[2] == center && center.dim() == 2 * m, format!("center {}", dims(&center)))
    });
    Ok(())
}

fn dickson_f9() -> Result<semifield::Dickson, SuiteError> {
    Ok(semifield::dickson(&FieldTower::for_order(9).map_err(ConstructionError::from)?, 1, None)?)
}

fn suite_u3char(p: &SuiteParams, r: &mut Runner) -> Result<(), SuiteError> {
    let ext = ScalarExtension::new(p.q, p.m)?;
    let u = u_n_restricted(3, &ext)?;
    let opts = p.enumeration();
    r.check("U_3 is Camina of class 2 with derived dimension m", || {
        let c = u.is_camina(&opts)?;
        let s = u.series();
        let pass = c.is_camina && !c.degenerate && s.nilpotency_class == Some(2) && s.derived_dim == p.m && u.dim() == 3 * p.m;
        ok(pass, format!("camina {}, class {:?}, derived dim {}", c.is_camina, s.nilpotency_class, s.derived_dim))
    });
    r.check("U_3 has abelian noncentral centralizers", || {
        let w = u.nonabelian_centralizer_witness(&opts)?;
        ok(w.is_none(), format!("witness {w:?}"))
    });

    let d = dickson_f9()?;
    let sf = d.semifield();
    let pre = sf.pre();
    let l = lie_of(pre);
    r.check("Dickson Lie algebra is Camina", || {
        let c = l.is_camina(&opts)?;
        ok(c.is_camina && !c.degenerate, format!("witness {:?}", c.witness))
    });
    let a = d.pair_to_vector((1, 0));
    let b = d.pair_to_vector((0, 1));
    r.check("Dickson Lie algebra has a non-abelian centralizer", || {
        let c = centralizer_pair(pre, &a, &b)?;
        let detail = match &c.witness {
            Some((u, v)) => format!(
                "Gamma = ((1,0),(0,1),0); {:?} and {:?} do not commute",
                pair_of(&d, u),
                pair_of(&d, v)
            ),
            None => "centralizer is abelian".into(),
        };
        ok(!c.abelian, detail)
    });
    r.check("Dickson centralizer matches the explicit parametrization", || {
        let c = centralizer_pair(pre, &a, &b)?;
        let f = d.big_field();
        let p_char = f.p() as u64;
        let mut explicit = Vec::new();
        for x1 in f.elements() {
            for x2 in f.elements() {
                let mut v = d.pair_to_vector((x1, x2));
                v.extend(d.pair_to_vector((f.mul(d.k(), f.pow(x2, p_char)), x1)));
                explicit.push(v);
            }
        }
        let e = Subspace::span(pre.field(), 2 * pre.n(), &explicit)?;
        ok(e == c.subspace, format!("computed {}, explicit {}", dims(&c.subspace), dims(&e)))
    });
    r.check("Dickson middle nucleus is the 9-element field {(a, 0)}", || {
        let mid = middle_nucleus(sf)?;
        let f = d.big_field();
        let firsts: Vec<Vec<Elem>> = f.elements().map(|x| d.pair_to_vector((x, 0))).collect();
        let expected = Subspace::span(pre.field(), pre.n(), &firsts)?;
        ok(mid.size == 9 && mid.is_field && mid.subspace == expected, format!("|Mid| = {}, field {}", mid.size, mid.is_field))
    });
    r.check("C_(1,x) is abelian for x in the middle nucleus", || {
        let mid = middle_nucleus(sf)?;
        for x in mid.subspace.elements() {
            if !centralizer_pair(pre, sf.identity(), &x)?.abelian {
                return ok(false, format!("fails at x = {:?}", pair_of(&d, &x)));
            }
        }
        ok(true, format!("{} elements", mid.size))
    });
    r.check("abelian pair centralizers are graphs of multiplication", || {
        let all: Vec<Vec<Elem>> = Subspace::full(pre.field(), pre.n()).elements().collect();
        let mut tested = 0;
        for a1 in &all {
            let ra = pre.right_matrix(a1);
            for b1 in &all {
                if pre.mul(a1, b1).iter().all(|&c| c == 0) {
                    continue;
                }
                let c = centralizer_pair(pre, a1, b1)?;
                if !c.abelian {
                    continue;
                }
                tested += 1;
                // x * a1 = b1
                let x = ra.solve(b1)?.expect("right multiplication by a1 is invertible");
                let graph: Vec<Vec<Elem>> = (0..pre.n())
                    .map(|i| {
                        let r_i = pre.unit(i);
                        let mut v = r_i.clone();
                        v.extend(pre.mul(&r_i, &x));
                        v
                    })
                    .collect();
                if Subspace::span(pre.field(), 2 * pre.n(), &graph)? != c.subspace {
                    return ok(false, format!("fails at ({:?}, {:?})", pair_of(&d, a1), pair_of(&d, b1)));
                }
            }
        }
        ok(tested > 0, format!("{tested} abelian centralizers checked"))
    });
    Ok(())
}

fn pair_of(d: &semifield::Dickson, v: &[Elem]) -> ((Elem, Elem), (Elem, Elem)) {
    let n = v.len() / 2;
    (d.vector_to_pair(&v[..n]), d.vector_to_pair(&v[n..]))
}

fn suite_uniqueness(p: &SuiteParams, r: &mut Runner) -> Result<(), SuiteError> {
    let ext = ScalarExtension::new(p.q, p.m)?;
    let g = gm_direct(&ext)?;
    let opts = p.enumeration();
    r.check("six-slot commutator formula matches matrix commutators", || {
        ok(lm_formula_matches_matrices(&ext), format!("{} basis pairs", 36 * p.m * p.m))
    });
    r.check("quotient of the matrix algebra by its center equals the direct construction", || {
        let gq = gm_quotient(&ext)?;
        ok(gq.tensor() == g.tensor(), format!("dim {} vs {}", gq.dim(), g.dim()))
    });
    let v = v_presentation(&ext);
    r.check("presented algebra satisfies the Jacobi identity", || {
        let (alg, _) = v.clone()?;
        ok(alg.validate().is_ok(), format!("dim {}", alg.dim()))
    });
    r.check("presentation maps onto g_m isomorphically", || {
        let (_, pres) = v.clone()?;
        let h = check_hom(&pres, &g, &v_images_in_gm(&ext))?;
        ok(
            h.is_isomorphism_evidence,
            format!(
                "relations {}, generate {}, dims {}, failed {:?}",
                h.relations_hold, h.images_generate, h.dims_match, h.failed_relations
            ),
        )
    });
    r.check("fingerprints of the presented algebra and g_m agree", || {
        let (alg, _) = v.clone()?;
        let a = alg.fingerprint(&opts)?;
        let b = g.fingerprint(&opts)?;
        ok(a == b, "evidence only; isomorphism is certified by the homomorphism check")
    });
    r.check("kappa is symmetric with trivial first row", || {
        let k = kappa(&ext);
        let first = (0..p.m).all(|j| (0..p.m).all(|t| k.get(0, j, t) == if j == t { 1 } else { 0 }));
        ok(k.is_symmetric() && first, format!("m = {}", p.m))
    });
    Ok(())
}

fn suite_central_quotient(p: &SuiteParams, r: &mut Runner) -> Result<(), SuiteError> {
    let ext = ScalarExtension::new(p.q, p.m)?;
    let g = gm_direct(&ext)?;
    let opts = p.enumeration();
    let quot = g.quotient(&g.center()).map_err(ConstructionError::from)?.algebra;
    let m = p.m;
    r.check("quotient has dimension 3m with derived dimension m", || {
        let s = quot.series();
        ok(quot.dim() == 3 * m && s.derived_dim == m && s.nilpotency_class == Some(2), format!("dim {}, derived {}", quot.dim(), s.derived_dim))
    });
    r.check("quotient is Camina", || {
        let c = quot.is_camina(&opts)?;
        ok(c.is_camina && !c.degenerate, format!("witness {:?}", c.witness))
    });
    r.check("quotient has abelian noncentral centralizers", || {
        let w = quot.nonabelian_centralizer_witness(&opts)?;
        ok(w.is_none(), format!("witness {w:?}"))
    });
    r.check("semifield from two centralizers normalizes to a field", || {
        let (pre, map) = semifield_from_centralizers(&quot, &opts)?;
        if !is_lie_isomorphism(&lie_of(&pre), &quot, &map) {
            return ok(false, "extracted basis does not realize L(F)");
        }
        let (sf, _) = normalize_to_semifield(&pre)?;
        let ac = assoc_comm(sf.pre());
        let mid = middle_nucleus(&sf)?;
        let full = Subspace::full(sf.pre().field(), sf.pre().n()).cardinality();
        ok(
            ac.is_associative && ac.is_commutative && mid.size == full && mid.is_field,
            format!("associative {}, commutative {}, |Mid| = {} of {full}", ac.is_associative, ac.is_commutative, mid.size),
        )
    });
    r.check("quotient and U_3(q^m) have equal fingerprints", || {
        let u = u_n_restricted(3, &ext)?;
        ok(quot.fingerprint(&opts)? == u.fingerprint(&opts)?, "evidence only; the field test above certifies the isomorphism")
    });
    let center = g.center();
    let derived = g.derived();
    let cosets = Cosets::of(&center);
    // brackets only depend on classes modulo the center, so representatives suffice
    r.check("central brackets can be killed inside L'", || {
        let count = cosets.count();
        let pairs = count.saturating_mul(count);
        if pairs > p.budget {
            return Err(CheckError::Budget { required: pairs, budget: p.budget });
        }
        let count = count as usize;
        let hs: Vec<Vec<Elem>> = derived.elements().collect();
        let mut hits = 0u64;
        for i in 0..count {
            let u = cosets.rep(i);
            if !outside(&derived, &u) {
                continue;
            }
            for j in 0..count {
                let v = cosets.rep(j);
                if !outside(&derived, &v) || outside(&center, &g.bracket(&u, &v)?) {
                    continue;
                }
                hits += 1;
                let found = hs.iter().any(|h| {
                    let vh: Vec<Elem> = v.iter().zip(h).map(|(&a, &b)| g.field().add(a, b)).collect();
                    g.bracket(&u, &vh).map(|w| w.iter().all(|&x| x == 0)).unwrap_or(false)
                });
                if !found {
                    return ok(false, format!("no h for u = {u:?}, v = {v:?}"));
                }
            }
        }
        ok(true, format!("{hits} pairs with central bracket, {} choices of h", hs.len()))
    });
    r.check("central brackets satisfy the swap identity", || {
        let count = cosets.count();
        let pairs = count.saturating_mul(count);
        if pairs > p.budget {
            return Err(CheckError::Budget { required: pairs, budget: p.budget });
        }
        let count = count as usize;
        for i in 0..count {
            let a = cosets.rep(i);
            for j in 0..count {
                let b = cosets.rep(j);
                if outside(&center, &g.bracket(&a, &b)?) {
                    continue;
                }
                for t in 0..g.dim() {
                    let t = g.basis_vector(t);
                    if g.bracket(&g.bracket(&a, &t)?, &b)? != g.bracket(&g.bracket(&b, &t)?, &a)? {
                        return ok(false, format!("fails at a = {a:?}, b = {b:?}"));
                    }
                }
            }
        }
        ok(true, format!("{} pairs of representatives", pairs))
    });
    Ok(())
}

/// Extracts a presemifield from the centralizers of the first two
/// representatives `x ∉ L'` and `y ∉ C(x)`. Also returns the map
/// `L(F) → L` whose columns are the chosen basis.
pub fn semifield_from_centralizers(l: &LieAlgebra, opts: &Enumeration) -> Result<(PreSemifield, Matrix), SemifieldError> {
    let derived = l.derived();
    let cosets = Cosets::of(&l.center());
    let count = cosets.check_budget(opts.budget)?;
    let x = (0..count)
        .map(|i| cosets.rep(i))
        .find(|v| outside(&derived, v))
        .ok_or(SemifieldError::HypothesisFailure(semifield::HypothesisFailure::DerivedDimension))?;
    let c1 = l.centralizer(&x)?;
    let y = (0..count)
        .map(|i| cosets.rep(i))
        .find(|v| outside(&c1, v))
        .ok_or(SemifieldError::HypothesisFailure(semifield::HypothesisFailure::StarsMeetBeyondDerived))?;
    let c2 = l.centralizer(&y)?;
    let pre = extract(l, &c1, &c2, opts)?;
    let n = pre.n();
    let mut cols = Vec::with_capacity(3 * n);
    for star in [&c1, &c2] {
        let mut acc = derived.clone();
        for v in star.basis_vectors() {
            if outside(&acc, &v) {
                acc = acc.sum(&Subspace::span(l.field(), l.dim(), &[v.clone()])?)?;
                cols.push(v);
            }
        }
    }
    cols.extend(derived.basis_vectors());
    let map = Matrix::from_columns(l.field(), l.dim(), &cols)?;
    Ok((pre, map))
}

fn roundtrip_checks(r: &mut Runner, tag: &str, pre: &PreSemifield, seed: u64, opts: &Enumeration) {
    let l = lie_of(pre);
    let n = pre.n();
    r.check(&format!("{tag}: extract inverts lie_of"), || {
        let (a, b) = standard_stars(pre);
        let back = extract(&l, &a, &b, opts)?;
        ok(back.tensor() == pre.tensor(), format!("n = {n}"))
    });
    r.check(&format!("{tag}: L(F) is class-2 Camina with L' = Z(L) of dimension n"), || {
        let s = l.series();
        let c = l.is_camina(opts)?;
        let pass = l.validate().is_ok() && s.nilpotency_class == Some(2) && l.derived() == l.center() && s.derived_dim == n && c.is_camina;
        ok(pass, format!("class {:?}, derived dim {}", s.nilpotency_class, s.derived_dim))
    });
    r.check(&format!("{tag}: seeded isotopisms induce Lie isomorphisms"), || {
        let f = pre.field();
        for k in 0..10u64 {
            let s = seed.wrapping_mul(31).wrapping_add(3 * k);
            let iso = Isotopism {
                a: Matrix::random_invertible(f, n, s),
                b: Matrix::random_invertible(f, n, s + 1),
                c: Matrix::random_invertible(f, n, s + 2),
            };
            let image = apply_isotopism(pre, &iso)?;
            if !verify_isotopism(pre, &image, &iso) {
                return ok(false, format!("isotopism {k} does not verify"));
            }
            let (_, verified) = lie_iso_from_isotopism(pre, &image, &iso)?;
            if !verified {
                return ok(false, format!("isotopism {k} does not preserve brackets"));
            }
        }
        ok(true, "10 isotopisms")
    });
    r.check(&format!("{tag}: normalization witness verifies"), || {
        let (sf, iso) = normalize_to_semifield(pre)?;
        let comm_kept = !assoc_comm(pre).is_commutative || assoc_comm(sf.pre()).is_commutative;
        ok(verify_isotopism(pre, sf.pre(), &iso) && comm_kept, format!("identity {:?}", sf.identity()))
    });
    r.check(&format!("{tag}: left and right zero-divisor checks agree"), || {
        let c = certify_f3(pre, opts)?;
        ok(c.no_zero_divisors && c.right_agrees, "")
    });
}

fn suite_semifield_roundtrip(p: &SuiteParams, r: &mut Runner) -> Result<(), SuiteError> {
    let opts = p.enumeration();
    let d = dickson_f9()?;
    let base = FieldTower::for_order(p.q).map_err(ConstructionError::from)?;
    let field = semifield::field_semifield(&base, p.m.max(1))?;
    roundtrip_checks(r, "dickson", d.semifield().pre(), p.seed, &opts);
    roundtrip_checks(r, "field", field.pre(), p.seed, &opts);
    Ok(())
}

fn suite_parity(p: &SuiteParams, r: &mut Runner) -> Result<(), SuiteError> {
    let opts = p.enumeration();
    let entries = catalog(p.q)?;
    r.check("catalog algebras satisfy the Jacobi identity", || {
        let bad: Vec<&str> = entries.iter().filter(|e| e.algebra.validate().is_err()).map(|e| e.name.as_str()).collect();
        ok(bad.is_empty(), format!("{} entries, invalid: {bad:?}", entries.len()))
    });
    let mut scanned = Vec::new();
    let mut skipped = Vec::new();
    let mut relevant = Vec::new();
    let mut odd = Vec::new();
    for e in &entries {
        match e.algebra.breadth_report(&opts) {
            Ok(b) => {
                scanned.push(e.name.clone());
                let class_three = e.algebra.series().nilpotency_class == Some(3);
                if class_three && b.type_set.len() == 2 {
                    let n = *b.type_set.iter().max().unwrap();
                    relevant.push(format!("{}: (0,{n})", e.name));
                    if n == 0 || n % 2 == 1 {
                        odd.push(e.name.clone());
                    }
                }
            }
            Err(LieError::BudgetExceeded { .. }) => skipped.push(e.name.clone()),
            Err(err) => return Err(ConstructionError::from(err).into()),
        }
    }
    r.check("two-breadth class-3 catalog algebras have even breadth", || {
        ok(odd.is_empty(), format!("regression scan, not a proof; types {relevant:?}; over budget {skipped:?}"))
    });
    r.check("at least 6 catalog algebras scanned", || {
        ok(scanned.len() >= 6, format!("scanned {scanned:?}"))
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &SuiteParams::new(3, 1)), Err(SuiteError::UnknownSuite(_))));
    }

    #[test]
    fn gm_histogram_at_3_1() {
        let r = run_suite("gm", &SuiteParams::new(3, 1)).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        let d = &r.check("exactly q^(2m) elements have breadth 0").unwrap().details;
        assert!(d.contains("{0: 9, 2: 234}"), "{d}");
    }

    #[test]
    fn budget_becomes_skip() {
        let mut p = SuiteParams::new(3, 1);
        p.budget = 2;
        let r = run_suite("gm", &p).unwrap();
        assert_eq!(r.check("breadth type is {0, 2m}").unwrap().status, Status::Skipped);
        assert!(r.passed());
    }

    #[test]
    fn characteristic_two_is_a_parameter_error() {
        assert!(matches!(run_suite("gm", &SuiteParams::new(4, 1)), Err(SuiteError::Construction(_))));
    }

    #[test]
    fn every_coverage_key_has_a_registered_check() {
        for (key, suite, names) in COVERAGE {
            assert!(SUITES.contains(suite), "{key}");
            assert!(!names.is_empty(), "{key}");
            let r = run_suite(suite, &SuiteParams::new(3, 1)).unwrap();
            for n in *names {
                assert!(r.check(n).is_some(), "{key}: `{n}` missing from {suite}");
            }
        }
    }
}
