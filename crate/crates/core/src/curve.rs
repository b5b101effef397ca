//! Plane cubic algebras `R = k[X, Y, Z]/(F)` attached to the four tubular
//! weight sequences, their `Z × Z/p` refinement, and the map `θ: R → S`
//! onto the restriction of `S` to `H(p) = Z(3x_1) ⊕ Zω`.
//!
//! Elements of `R` are kept with the exponent of `X` at most 2 by rewriting
//! `X³` with the cubic solved for `X³`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde_json::json;

use crate::coordinate_algebra::{SElem, SPresentation};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::grading::{ActionCache, CyclicGrading, Deg, GradedAlgebra};
use crate::linalg::Matrix;
use crate::string_group::{parse_elem, StringElem, Subgroup, WeightSeq};
use crate::verification::Verification;

/// Exponents of `X^a Y^b Z^c`.
pub type RMonomial = [u32; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveTag {
    T2222,
    T333,
    T442,
    T632,
}

impl CurveTag {
    pub const ALL: [CurveTag; 4] = [CurveTag::T2222, CurveTag::T333, CurveTag::T442, CurveTag::T632];

    /// Accepts `2222`, `2,2,2,2`, `(2,2,2,2)` and so on.
    pub fn parse(text: &str) -> Result<CurveTag> {
        let digits: String = text.chars().filter(|c| c.is_ascii_digit()).collect();
        match digits.as_str() {
            "2222" => Ok(CurveTag::T2222),
            "333" => Ok(CurveTag::T333),
            "442" => Ok(CurveTag::T442),
            "632" => Ok(CurveTag::T632),
            _ => Err(Error::NotTubular(text.to_string())),
        }
    }

    pub fn from_weights(w: &WeightSeq) -> Result<CurveTag> {
        CurveTag::parse(&w.to_string())
    }

    pub fn weights(&self) -> Arc<WeightSeq> {
        let ws: &[i64] = match self {
            CurveTag::T2222 => &[2, 2, 2, 2],
            CurveTag::T333 => &[3, 3, 3],
            CurveTag::T442 => &[4, 4, 2],
            CurveTag::T632 => &[6, 3, 2],
        };
        WeightSeq::new(ws).expect("valid weights")
    }

    pub fn name(&self) -> &'static str {
        match self {
            CurveTag::T2222 => "2222",
            CurveTag::T333 => "333",
            CurveTag::T442 => "442",
            CurveTag::T632 => "632",
        }
    }

    /// `p = lcm(p)`, the order of `ω`.
    pub fn p(&self) -> i64 {
        self.weights().lcm()
    }

    /// Torsion parts of the refined degrees of `X, Y, Z`.
    pub fn extra_degrees(&self) -> [i64; 3] {
        match self {
            CurveTag::T2222 => [0, 1, 0],
            CurveTag::T333 => [2, 0, 0],
            CurveTag::T442 | CurveTag::T632 => [2, 3, 0],
        }
    }

    /// Exponent vectors in `S` of the images of `X, Y, Z`.
    fn theta_exponents(&self) -> [Vec<u32>; 3] {
        match self {
            CurveTag::T2222 => [vec![1, 2, 0, 0], vec![0, 1, 1, 1], vec![3, 0, 0, 0]],
            CurveTag::T333 => [vec![1, 1, 1], vec![0, 3, 0], vec![3, 0, 0]],
            CurveTag::T442 => [vec![1, 2, 0], vec![0, 1, 1], vec![3, 0, 0]],
            CurveTag::T632 => [vec![1, 1, 0], vec![0, 0, 1], vec![3, 0, 0]],
        }
    }

    /// The degrees of the images of `X, Y, Z` written as sums of generators.
    pub fn generator_degree_expressions(&self) -> [&'static str; 3] {
        match self {
            CurveTag::T2222 => ["3*x1", "x2 + x3 + x4", "3*x1"],
            CurveTag::T333 => ["x1 + x2 + x3", "3*x1", "3*x1"],
            CurveTag::T442 => ["x1 + 2*x2", "x2 + x3", "3*x1"],
            CurveTag::T632 => ["x1 + x2", "x3", "3*x1"],
        }
    }

    /// The positive elements of `3x_1 + Zω` written as sums of generators.
    pub fn coset_expressions(&self) -> &'static [&'static str] {
        match self {
            CurveTag::T2222 => &["3*x1", "x2 + x3 + x4"],
            CurveTag::T333 => &["3*x1", "x1 + x2 + x3"],
            CurveTag::T442 => &["3*x1", "x1 + 2*x2", "x2 + x3"],
            CurveTag::T632 => &["3*x1", "x1 + x2", "x3"],
        }
    }
}

impl fmt::Display for CurveTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One of the four cubic algebras over a chosen field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveType {
    tag: CurveTag,
    lambda: Option<Scalar>,
    field: Field,
    /// `X³ = Σ c·X^aY^bZ^c` with `a ≤ 2`.
    rule: Vec<(Scalar, RMonomial)>,
}

impl CurveType {
    /// `lambda` is required for the `(2,2,2,2)` family and rejected otherwise.
    pub fn new(tag: CurveTag, lambda: Option<Scalar>, field: Field) -> Result<Arc<CurveType>> {
        let f = |n: i64| field.from_i64(n);
        let rule = match (tag, &lambda) {
            (CurveTag::T2222, Some(l)) => {
                if !field.contains(l) {
                    return Err(Error::KindMismatch(field.to_string(), l.field().to_string()));
                }
                if l.is_zero() || l.is_one() {
                    return Err(Error::InvalidParameters(format!("parameter {l} must avoid 0 and 1")));
                }
                // Y²Z − X(X − Z)(X − λZ) = 0
                vec![
                    (f(1), [0, 2, 1]),
                    (&f(1) + l, [2, 0, 1]),
                    (-l, [1, 0, 2]),
                ]
            }
            (CurveTag::T2222, None) => {
                return Err(Error::InvalidParameters("the (2,2,2,2) family needs a parameter".into()))
            }
            (_, Some(_)) => {
                return Err(Error::InvalidParameters(format!("type {tag} takes no parameter")))
            }
            (CurveTag::T333, None) => vec![(f(1), [0, 2, 1]), (f(-1), [0, 1, 2])],
            (CurveTag::T442, None) => vec![(f(1), [0, 2, 1]), (f(1), [1, 0, 2])],
            (CurveTag::T632, None) => vec![(f(1), [0, 2, 1]), (f(1), [0, 0, 3])],
        };
        Ok(Arc::new(CurveType {
            tag,
            lambda,
            field,
            rule,
        }))
    }

    /// A copy whose rewriting rule for `X³` is replaced; used to check that
    /// the verification sweeps notice a wrong algebra.
    #[doc(hidden)]
    pub fn with_rewrite_rule(&self, rule: Vec<(Scalar, RMonomial)>) -> Arc<CurveType> {
        Arc::new(CurveType {
            rule,
            ..self.clone()
        })
    }

    pub fn tag(&self) -> CurveTag {
        self.tag
    }

    pub fn lambda(&self) -> Option<&Scalar> {
        self.lambda.as_ref()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn weights(&self) -> Arc<WeightSeq> {
        self.tag.weights()
    }

    pub fn p(&self) -> i64 {
        self.tag.p()
    }

    pub fn rewrite_rule(&self) -> &[(Scalar, RMonomial)] {
        &self.rule
    }

    /// The defining cubic `X³ − (rule)` as coefficient/monomial pairs.
    pub fn relation(&self) -> Vec<(Scalar, RMonomial)> {
        let mut out = vec![(self.field.one(), [3, 0, 0])];
        out.extend(self.rule.iter().map(|(c, m)| (-c, *m)));
        out
    }

    /// Canonical monomials of degree `n` (exponent of `X` at most 2).
    pub fn basis(&self, n: u32) -> Vec<RMonomial> {
        let mut out = Vec::new();
        for a in 0..=n.min(2) {
            for b in (0..=n - a).rev() {
                out.push([a, b, n - a - b]);
            }
        }
        out
    }

    pub fn r_dim(&self, n: u32) -> usize {
        self.basis(n).len()
    }

    pub fn refined_degree(&self, m: &RMonomial) -> Deg {
        let e = self.tag.extra_degrees();
        let a = (m[0] as i64 * e[0] + m[1] as i64 * e[1] + m[2] as i64 * e[2]).rem_euclid(self.p());
        Deg {
            n: (m[0] + m[1] + m[2]) as i64,
            a,
        }
    }

    /// Canonical monomials of refined degree `d`.
    pub fn refined_basis(&self, d: Deg) -> Vec<RMonomial> {
        if d.n < 0 {
            return Vec::new();
        }
        self.basis(d.n as u32)
            .into_iter()
            .filter(|m| self.refined_degree(m) == d)
            .collect()
    }

    /// Whether every term of the cubic has the same refined degree.
    pub fn is_refinement_consistent(&self) -> bool {
        let rel = self.relation();
        let d0 = self.refined_degree(&rel[0].1);
        rel.iter().all(|(_, m)| self.refined_degree(m) == d0)
    }

    /// The matching presentation of `S`.
    pub fn s_presentation(&self) -> Result<Arc<SPresentation>> {
        let extra: Vec<Scalar> = self.lambda.iter().cloned().collect();
        SPresentation::new(self.weights(), &extra, self.field)
    }
}

impl fmt::Display for CurveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lambda {
            Some(l) => write!(f, "R({};{})", self.tag, l),
            None => write!(f, "R({})", self.tag),
        }
    }
}

/// An element of `R` in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct RElem {
    ty: Arc<CurveType>,
    terms: BTreeMap<RMonomial, Scalar>,
}

fn add_term(map: &mut BTreeMap<RMonomial, Scalar>, key: RMonomial, value: Scalar) {
    if value.is_zero() {
        return;
    }
    let sum = match map.get(&key) {
        Some(old) => old + &value,
        None => value,
    };
    if sum.is_zero() {
        map.remove(&key);
    } else {
        map.insert(key, sum);
    }
}

impl RElem {
    pub fn zero(ty: &Arc<CurveType>) -> RElem {
        RElem {
            ty: Arc::clone(ty),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ty: &Arc<CurveType>) -> RElem {
        RElem::monomial(ty, [0, 0, 0])
    }

    /// `X^a Y^b Z^c`, rewritten into canonical form.
    pub fn monomial(ty: &Arc<CurveType>, m: RMonomial) -> RElem {
        let mut terms = BTreeMap::new();
        reduce_into(ty, m, ty.field.one(), &mut terms);
        RElem {
            ty: Arc::clone(ty),
            terms,
        }
    }

    /// Generator `k` (0 for `X`, 1 for `Y`, 2 for `Z`).
    pub fn generator(ty: &Arc<CurveType>, k: usize) -> RElem {
        let mut m = [0; 3];
        m[k] = 1;
        RElem::monomial(ty, m)
    }

    pub fn from_terms(ty: &Arc<CurveType>, terms: &[(Scalar, RMonomial)]) -> RElem {
        let mut out = BTreeMap::new();
        for (c, m) in terms {
            reduce_into(ty, *m, c.clone(), &mut out);
        }
        RElem {
            ty: Arc::clone(ty),
            terms: out,
        }
    }

    pub fn curve(&self) -> &Arc<CurveType> {
        &self.ty
    }

    pub fn terms(&self) -> &BTreeMap<RMonomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &RElem) -> Result<()> {
        if Arc::ptr_eq(&self.ty, &other.ty) || self.ty == other.ty {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn add(&self, other: &RElem) -> Result<RElem> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, *m, c.clone());
        }
        Ok(RElem {
            ty: Arc::clone(&self.ty),
            terms,
        })
    }

    pub fn scale(&self, s: &Scalar) -> RElem {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            add_term(&mut terms, *m, c * s);
        }
        RElem {
            ty: Arc::clone(&self.ty),
            terms,
        }
    }

    pub fn sub(&self, other: &RElem) -> Result<RElem> {
        self.add(&other.scale(&-self.ty.field.one()))
    }

    pub fn mul(&self, other: &RElem) -> Result<RElem> {
        self.check(other)?;
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                let e = [m[0] + n[0], m[1] + n[1], m[2] + n[2]];
                reduce_into(&self.ty, e, a * b, &mut terms);
            }
        }
        Ok(RElem {
            ty: Arc::clone(&self.ty),
            terms,
        })
    }

    /// Total degree, if homogeneous.
    pub fn degree(&self) -> Result<u32> {
        let mut it = self.terms.keys().map(|m| m[0] + m[1] + m[2]);
        let first = it.next().ok_or(Error::ZeroHasNoDegree)?;
        if it.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    pub fn refined_degree(&self) -> Result<Deg> {
        let mut it = self.terms.keys().map(|m| self.ty.refined_degree(m));
        let first = it.next().ok_or(Error::ZeroHasNoDegree)?;
        if it.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::NotHomogeneous)
        }
    }
}

fn reduce_into(ty: &CurveType, m: RMonomial, coeff: Scalar, out: &mut BTreeMap<RMonomial, Scalar>) {
    let mut work = vec![(m, coeff)];
    while let Some((m, c)) = work.pop() {
        if m[0] <= 2 {
            add_term(out, m, c);
            continue;
        }
        for (rc, r) in &ty.rule {
            work.push(([m[0] - 3 + r[0], m[1] + r[1], m[2] + r[2]], &c * rc));
        }
    }
}

/// Product in `R`.
pub fn r_multiply(a: &RElem, b: &RElem) -> Result<RElem> {
    a.mul(b)
}

impl fmt::Display for RElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})*X^{}Y^{}Z^{}", m[0], m[1], m[2]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for RElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `θ: R → S`, sending `X, Y, Z` to the monomials `x, y, z`.
pub struct ThetaMap {
    ty: Arc<CurveType>,
    pres: Arc<SPresentation>,
    exps: [Vec<u32>; 3],
}

pub fn theta(ty: &Arc<CurveType>) -> Result<ThetaMap> {
    ThetaMap::new(ty, ty.s_presentation()?)
}

impl ThetaMap {
    /// Uses an existing presentation of `S`, which must match the type.
    pub fn new(ty: &Arc<CurveType>, pres: Arc<SPresentation>) -> Result<ThetaMap> {
        if *pres.weights() != ty.weights() || pres.field() != ty.field() {
            return Err(Error::PresentationMismatch);
        }
        if ty.tag() == CurveTag::T2222 && Some(pres.lambda(4)?) != ty.lambda() {
            return Err(Error::PresentationMismatch);
        }
        Ok(ThetaMap {
            ty: Arc::clone(ty),
            pres,
            exps: ty.tag().theta_exponents(),
        })
    }

    pub fn curve(&self) -> &Arc<CurveType> {
        &self.ty
    }

    pub fn presentation(&self) -> &Arc<SPresentation> {
        &self.pres
    }

    /// Image of generator `k`.
    pub fn image(&self, k: usize) -> SElem {
        self.pres.from_exponents(&self.exps[k]).expect("arity matches")
    }

    /// Images of all three generators.
    pub fn images(&self) -> [SElem; 3] {
        [self.image(0), self.image(1), self.image(2)]
    }

    /// Image of `X^a Y^b Z^c`; the exponents need not be canonical.
    pub fn apply_monomial(&self, m: &RMonomial) -> SElem {
        let t = self.exps[0].len();
        let e: Vec<u32> = (0..t)
            .map(|i| m[0] * self.exps[0][i] + m[1] * self.exps[1][i] + m[2] * self.exps[2][i])
            .collect();
        self.pres.from_exponents(&e).expect("arity matches")
    }

    /// Image of a polynomial in the free algebra `k[X, Y, Z]`.
    pub fn apply_terms(&self, terms: &[(Scalar, RMonomial)]) -> SElem {
        let mut acc = self.pres.zero();
        for (c, m) in terms {
            acc = acc.add(&self.apply_monomial(m).scale(c)).expect("same presentation");
        }
        acc
    }

    pub fn apply(&self, r: &RElem) -> Result<SElem> {
        if *r.curve() != self.ty {
            return Err(Error::PresentationMismatch);
        }
        let terms: Vec<(Scalar, RMonomial)> = r.terms().iter().map(|(m, c)| (c.clone(), *m)).collect();
        Ok(self.apply_terms(&terms))
    }
}

/// `H(p) = Z(3x_1) ⊕ Zω`.
pub fn h_subgroup(weights: &Arc<WeightSeq>) -> Subgroup {
    Subgroup::tubular_h(weights)
}

fn require_tubular(weights: &Arc<WeightSeq>) -> Result<()> {
    if weights.is_tubular() {
        Ok(())
    } else {
        Err(Error::NotTubular(weights.to_string()))
    }
}

/// `ψ: H(p) → Z × Z/p`, with `ψ(3x_1) = (1, 0̄)` and `ψ(ω) = (0, 1̄)`.
pub fn psi(x: &StringElem) -> Result<Deg> {
    let w = x.weights().clone();
    require_tubular(&w)?;
    let three_x1 = w.x(1)?.smul(3);
    let step = three_x1.delta();
    let d = x.delta();
    if d % step != 0 {
        return Err(Error::NotInSubgroup(x.to_string()));
    }
    let n = d / step;
    let torsion = x - &three_x1.smul(n);
    let omega = w.dualizing();
    (0..w.lcm())
        .find(|&j| omega.smul(j) == torsion)
        .map(|a| Deg { n, a })
        .ok_or_else(|| Error::NotInSubgroup(x.to_string()))
}

/// `ψ^{-1}(n, ā) = n·3x_1 + a·ω`.
pub fn psi_inverse(weights: &Arc<WeightSeq>, d: Deg) -> StringElem {
    let three_x1 = weights.x(1).expect("t ≥ 1").smul(3);
    &three_x1.smul(d.n) + &weights.dualizing().smul(d.a)
}

/// The positive elements among `3x_1 + jω`, `0 ≤ j < p`, in order of `j`.
pub fn positive_coset_elements(weights: &Arc<WeightSeq>) -> Result<Vec<StringElem>> {
    require_tubular(weights)?;
    let three_x1 = weights.x(1)?.smul(3);
    let omega = weights.dualizing();
    Ok((0..weights.lcm())
        .map(|j| &three_x1 + &omega.smul(j))
        .filter(StringElem::is_positive)
        .collect())
}

/// `mult(n x_1 + j ω)` for `j = 0, …, p − 1`.
pub fn coset_mult_terms(weights: &Arc<WeightSeq>, n: i64) -> Result<Vec<u64>> {
    require_tubular(weights)?;
    let nx1 = weights.x(1)?.smul(n);
    let omega = weights.dualizing();
    Ok((0..weights.lcm()).map(|j| (&nx1 + &omega.smul(j)).mult()).collect())
}

/// Checks `Σ_j mult(n x_1 + j ω) = n` for `1 ≤ n ≤ n_max`.
pub fn verify_coset_mult_sum(weights: &Arc<WeightSeq>, n_max: i64) -> Result<Verification> {
    let mut v = Verification::new();
    for n in 1..=n_max {
        let terms = coset_mult_terms(weights, n)?;
        let sum: u64 = terms.iter().sum();
        v.record(sum == n as u64, || json!({ "n": n, "terms": terms, "sum": sum }));
    }
    v.detail("n_max", n_max);
    Ok(v)
}

/// Counts `c_k` with `x = Σ c_k g_k` for the positive coset elements `g_k`,
/// or `None` if `x` is not in the monoid they generate.
pub fn monoid_witness(x: &StringElem) -> Result<Option<Vec<u64>>> {
    let w = x.weights().clone();
    let gens = positive_coset_elements(&w)?;
    // every generator has δ = 3, so exactly m = δ(x)/3 of them are used
    let d = x.delta();
    if d < 0 || d % 3 != 0 {
        return Ok(None);
    }
    let m = (d / 3) as u64;
    let p = w.lcm() as u64;
    let mut counts = vec![0u64; gens.len()];
    // the first generator 3x_1 absorbs the remaining count; the others never
    // need more than p copies since p copies of a coset shift repeat 3x_1
    fn search(
        gens: &[StringElem],
        x: &StringElem,
        idx: usize,
        left: u64,
        cap: u64,
        counts: &mut Vec<u64>,
    ) -> bool {
        if idx == gens.len() {
            let mut acc = gens[0].smul(left as i64);
            for (g, &c) in gens.iter().zip(counts.iter()).skip(1) {
                acc = &acc + &g.smul(c as i64);
            }
            if acc == *x {
                counts[0] = left;
                return true;
            }
            return false;
        }
        for c in 0..=left.min(cap) {
            counts[idx] = c;
            if search(gens, x, idx + 1, left - c, cap, counts) {
                return true;
            }
        }
        counts[idx] = 0;
        false
    }
    if search(&gens, x, 1, m, p, &mut counts) {
        Ok(Some(counts))
    } else {
        Ok(None)
    }
}

/// Every positive element of `H(p)` with `φ ≤ phi_bound` is a nonnegative
/// combination of the positive coset elements.
pub fn verify_monoid_generation(weights: &Arc<WeightSeq>, phi_bound: i64) -> Result<Verification> {
    require_tubular(weights)?;
    let mut v = Verification::new();
    let p = weights.lcm();
    let mut examples = Vec::new();
    for a in 0..p {
        let mut n = 0;
        loop {
            let x = psi_inverse(weights, Deg { n, a });
            if x.phi() > phi_bound {
                break;
            }
            if x.is_positive() {
                let witness = monoid_witness(&x)?;
                let ok = witness.is_some();
                v.record(ok, || json!({ "element": x.to_string() }));
                if let Some(c) = witness {
                    if n <= 2 {
                        examples.push(json!({ "element": x.to_string(), "counts": c }));
                    }
                }
            }
            n += 1;
        }
    }
    v.detail("phi_bound", phi_bound);
    v.detail("examples", examples);
    Ok(v)
}

/// `dim π_*(S_H)_n = Σ_j dim S_{3n x_1 + j ω}`.
pub fn pushforward_dim(pres: &Arc<SPresentation>, n: i64) -> usize {
    let w = pres.weights().clone();
    (0..w.lcm())
        .map(|a| pres.dim_component(&psi_inverse(&w, Deg { n, a })))
        .sum()
}

/// Sweeps for the isomorphism `R ≅ π_*(S_H)` given by `θ`:
///
/// * `a`: `θ` kills the cubic;
/// * `b`: `dim π_*(S_H)_n = 3n = dim R_n` for `1 ≤ n ≤ n_dims`;
/// * `c`: `θ` has rank `3n` on `R_n` for `1 ≤ n ≤ n_rank`;
/// * `d`: `θ(ab) = θ(a)θ(b)` on pairs of canonical monomials of total degree
///   at most `n_mult`.
pub fn verify_curve_isomorphism(
    ty: &Arc<CurveType>,
    n_dims: u32,
    n_rank: u32,
    n_mult: u32,
) -> Result<Verification> {
    let th = theta(ty)?;
    let pres = th.presentation().clone();
    let w = ty.weights();
    let mut out = Verification::new();

    let mut a = Verification::new();
    let rel = th.apply_terms(&ty.relation());
    a.record(rel.is_zero(), || json!({ "n": 3, "image": rel.to_string() }));
    out.absorb("a", a);

    let mut b = Verification::new();
    for n in 1..=n_dims {
        let lhs = pushforward_dim(&pres, n as i64);
        let r = ty.r_dim(n);
        b.record(lhs == 3 * n as usize && r == lhs, || {
            json!({ "n": n, "pushforward": lhs, "r": r })
        });
    }
    out.absorb("b", b);

    let mut c = Verification::new();
    let mut ranks = Vec::new();
    for n in 1..=n_rank {
        let mut rank = 0usize;
        let mut misplaced = None;
        for j in 0..ty.p() {
            let d = Deg { n: n as i64, a: j };
            let target = psi_inverse(&w, d);
            let dim = pres.dim_component(&target);
            let mut cols = Vec::new();
            for m in ty.refined_basis(d) {
                match pres.coordinates(&th.apply_monomial(&m), &target) {
                    Ok(v) => cols.push(v),
                    Err(_) => misplaced = Some(m),
                }
            }
            rank += Matrix::from_columns(ty.field(), dim, &cols).rank();
        }
        ranks.push(rank);
        let ok = rank == 3 * n as usize && misplaced.is_none();
        c.record(ok, || json!({ "n": n, "rank": rank, "expected": 3 * n, "misplaced": misplaced }));
    }
    c.detail("ranks", &ranks);
    out.absorb("c", c);

    let mut d = Verification::new();
    for n in 0..=n_mult {
        for i in 0..=n {
            for m1 in ty.basis(i) {
                for m2 in ty.basis(n - i) {
                    let prod = RElem::monomial(ty, m1).mul(&RElem::monomial(ty, m2))?;
                    let lhs = th.apply(&prod)?;
                    let rhs = th.apply_monomial(&m1).mul(&th.apply_monomial(&m2))?;
                    d.record(lhs == rhs, || {
                        let rank = ranks.get(n as usize - 1).copied();
                        json!({ "n": n, "left": m1, "right": m2, "rank": rank })
                    });
                }
            }
        }
    }
    out.absorb("d", d);
    out.detail("type", ty.to_string());
    Ok(out)
}

/// `R` graded by `Z` (when `refined` is false) or by `Z × Z/p`.
pub struct CurveAlgebra {
    ty: Arc<CurveType>,
    grading: CyclicGrading,
    cache: ActionCache,
}

impl CurveAlgebra {
    pub fn new(ty: &Arc<CurveType>, refined: bool) -> CurveAlgebra {
        let m = if refined { ty.p() } else { 1 };
        CurveAlgebra {
            ty: Arc::clone(ty),
            grading: CyclicGrading::new(m).expect("positive modulus"),
            cache: ActionCache::default(),
        }
    }

    pub fn curve(&self) -> &Arc<CurveType> {
        &self.ty
    }

    pub fn component_basis(&self, d: Deg) -> Vec<RMonomial> {
        if self.grading.modulus() == 1 {
            if d.n < 0 {
                Vec::new()
            } else {
                self.ty.basis(d.n as u32)
            }
        } else {
            self.ty.refined_basis(d)
        }
    }

    fn degree_of(&self, m: &RMonomial) -> Deg {
        if self.grading.modulus() == 1 {
            Deg {
                n: (m[0] + m[1] + m[2]) as i64,
                a: 0,
            }
        } else {
            self.ty.refined_degree(m)
        }
    }

    /// Coordinates of a homogeneous element in the basis of its component.
    pub fn coordinates(&self, r: &RElem, d: Deg) -> Result<Vec<Scalar>> {
        let basis = self.component_basis(d);
        let mut v = vec![self.ty.field().zero(); basis.len()];
        for (m, c) in r.terms() {
            let i = basis.iter().position(|b| b == m).ok_or(Error::NotHomogeneous)?;
            v[i] = c.clone();
        }
        Ok(v)
    }
}

impl GradedAlgebra for CurveAlgebra {
    fn field(&self) -> Field {
        self.ty.field()
    }

    fn grading(&self) -> CyclicGrading {
        self.grading
    }

    fn generator_degrees(&self) -> Vec<Deg> {
        (0..3)
            .map(|k| {
                let mut m = [0; 3];
                m[k] = 1;
                self.degree_of(&m)
            })
            .collect()
    }

    fn dim(&self, d: Deg) -> usize {
        self.component_basis(d).len()
    }

    fn generator_action(&self, k: usize, d: Deg) -> Matrix {
        self.cache.get_or(k, d, || {
            let target = self.grading.add(d, self.generator_degrees()[k]);
            let g = RElem::generator(&self.ty, k);
            let cols: Vec<Vec<Scalar>> = self
                .component_basis(d)
                .into_iter()
                .map(|m| {
                    let prod = RElem::monomial(&self.ty, m).mul(&g).expect("same curve");
                    self.coordinates(&prod, target)
                        .expect("the cubic is homogeneous for this grading")
                })
                .collect();
            Matrix::from_columns(self.ty.field(), self.dim(target), &cols)
        })
    }
}

/// `S_H` for `H = H(p)`, graded by `Z × Z/p` through `ψ` and generated by the
/// images of `X, Y, Z`.
pub struct RestrictedCurveAlgebra {
    theta: ThetaMap,
    grading: CyclicGrading,
    gen_degrees: Vec<Deg>,
    cache: ActionCache,
    bases: Mutex<HashMap<Deg, usize>>,
}

impl RestrictedCurveAlgebra {
    pub fn new(ty: &Arc<CurveType>) -> Result<RestrictedCurveAlgebra> {
        let theta = theta(ty)?;
        let gen_degrees = theta
            .images()
            .iter()
            .map(|s| psi(&s.degree()?))
            .collect::<Result<Vec<_>>>()?;
        Ok(RestrictedCurveAlgebra {
            theta,
            grading: CyclicGrading::new(ty.p())?,
            gen_degrees,
            cache: ActionCache::default(),
            bases: Mutex::new(HashMap::new()),
        })
    }

    pub fn theta(&self) -> &ThetaMap {
        &self.theta
    }

    pub fn degree_in_l(&self, d: Deg) -> StringElem {
        psi_inverse(self.theta.presentation().weights(), d)
    }
}

impl GradedAlgebra for RestrictedCurveAlgebra {
    fn field(&self) -> Field {
        self.theta.presentation().field()
    }

    fn grading(&self) -> CyclicGrading {
        self.grading
    }

    fn generator_degrees(&self) -> Vec<Deg> {
        self.gen_degrees.clone()
    }

    fn dim(&self, d: Deg) -> usize {
        if let Some(&n) = self.bases.lock().expect("cache lock").get(&d) {
            return n;
        }
        let n = self.theta.presentation().dim_component(&self.degree_in_l(d));
        self.bases.lock().expect("cache lock").insert(d, n);
        n
    }

    fn generator_action(&self, k: usize, d: Deg) -> Matrix {
        self.cache.get_or(k, d, || {
            self.theta
                .presentation()
                .multiplication_matrix(&self.theta.image(k), &self.degree_in_l(d))
                .expect("generators are homogeneous")
        })
    }
}

/// Parses an element of `L(p)` for a curve's weights.
pub fn parse_degree(ty: &CurveType, text: &str) -> Result<StringElem> {
    parse_elem(&ty.weights(), text)
}
