//! The `L(p)`-graded algebra `S(p, λ) = k[x_1, …, x_t] / (x_i^{p_i} − x_2^{p_2} + λ_i x_1^{p_1})`.
//!
//! Elements are kept in canonical form: the exponents of `x_1` and `x_2` are
//! unbounded and every other exponent `e_i` satisfies `e_i < p_i`. Products
//! are brought back into canonical form by expanding `x_i^{q p_i}` as
//! `(x_2^{p_2} − λ_i x_1^{p_1})^q`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::string_group::{StringElem, Subgroup, WeightSeq};

/// A presentation of `S(p, λ)` over a fixed scalar field.
pub struct SPresentation {
    weights: Arc<WeightSeq>,
    /// `λ_3, …, λ_t`, with `λ_3 = 1`.
    lambdas: Vec<Scalar>,
    field: Field,
    bases: Mutex<HashMap<StringElem, Arc<Vec<SMonomial>>>>,
}

/// A canonical monomial `x_1^{e_1} ⋯ x_t^{e_t}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SMonomial {
    exps: Vec<u32>,
}

/// An element of `S(p, λ)` as a map from canonical monomials to nonzero
/// coefficients.
#[derive(Clone)]
pub struct SElem {
    pres: Arc<SPresentation>,
    terms: BTreeMap<SMonomial, Scalar>,
}

impl SPresentation {
    /// `extra` holds `λ_4, …, λ_t`; `λ_3 = 1` is implicit.
    pub fn new(weights: Arc<WeightSeq>, extra: &[Scalar], field: Field) -> Result<Arc<SPresentation>> {
        let t = weights.len();
        let expected = t.saturating_sub(3);
        if extra.len() != expected {
            return Err(Error::InvalidParameters(format!(
                "{} needs {expected} free parameter(s), got {}",
                weights,
                extra.len()
            )));
        }
        let mut lambdas = Vec::new();
        if t >= 3 {
            lambdas.push(field.one());
        }
        for l in extra {
            if !field.contains(l) {
                return Err(Error::KindMismatch(field.to_string(), l.field().to_string()));
            }
            if l.is_zero() || l.is_one() {
                return Err(Error::InvalidParameters(format!("parameter {l} must avoid 0 and 1")));
            }
            if lambdas.contains(l) {
                return Err(Error::InvalidParameters(format!("parameter {l} is repeated")));
            }
            lambdas.push(l.clone());
        }
        Ok(Arc::new(SPresentation {
            weights,
            lambdas,
            field,
            bases: Mutex::new(HashMap::new()),
        }))
    }

    pub fn weights(&self) -> &Arc<WeightSeq> {
        &self.weights
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `λ_i` for `i ≥ 3` (1-based).
    pub fn lambda(&self, i: usize) -> Result<&Scalar> {
        if i < 3 || i > self.weights.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.weights.len(),
            });
        }
        Ok(&self.lambdas[i - 3])
    }

    fn same(&self, other: &SPresentation) -> bool {
        std::ptr::eq(self, other)
            || (self.weights == other.weights
                && self.lambdas == other.lambdas
                && self.field == other.field)
    }

    pub fn zero(self: &Arc<Self>) -> SElem {
        SElem {
            pres: Arc::clone(self),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> SElem {
        self.monomial_elem(&SMonomial::one(self.weights.len()))
    }

    pub fn constant(self: &Arc<Self>, s: Scalar) -> SElem {
        self.one().scale(&s)
    }

    /// The generator `x_i` (1-based).
    pub fn x(self: &Arc<Self>, i: usize) -> Result<SElem> {
        let t = self.weights.len();
        if i == 0 || i > t {
            return Err(Error::IndexOutOfRange { index: i, max: t });
        }
        let mut exps = vec![0; t];
        exps[i - 1] = 1;
        self.from_exponents(&exps)
    }

    /// The product `Π x_i^{e_i}` in canonical form; exponents may be arbitrary.
    pub fn from_exponents(self: &Arc<Self>, exps: &[u32]) -> Result<SElem> {
        if exps.len() != self.weights.len() {
            return Err(Error::ArityError {
                expected: self.weights.len(),
                got: exps.len(),
            });
        }
        Ok(SElem {
            pres: Arc::clone(self),
            terms: self.reduce_monomial(exps, self.field.one()),
        })
    }

    fn monomial_elem(self: &Arc<Self>, m: &SMonomial) -> SElem {
        let mut terms = BTreeMap::new();
        terms.insert(m.clone(), self.field.one());
        SElem {
            pres: Arc::clone(self),
            terms,
        }
    }

    /// Rewrites `coeff · Π x_i^{e_i}` into canonical monomials.
    fn reduce_monomial(&self, exps: &[u32], coeff: Scalar) -> BTreeMap<SMonomial, Scalar> {
        let t = self.weights.len();
        let ws = self.weights.weights();
        let mut base = exps.to_vec();
        let mut quotients = Vec::new();
        for i in 2..t {
            let p = ws[i] as u32;
            quotients.push((i, base[i] / p));
            base[i] %= p;
        }
        // terms in (e_1, e_2) only, to be multiplied onto `base`
        let mut poly: BTreeMap<(u32, u32), Scalar> = BTreeMap::new();
        poly.insert((0, 0), coeff);
        let (p1, p2) = (ws[0] as u32, ws.get(1).copied().unwrap_or(0) as u32);
        for (i, q) in quotients {
            if q == 0 {
                continue;
            }
            let neg_lambda = -&self.lambdas[i - 2];
            let mut next = BTreeMap::new();
            for k in 0..=q {
                let c = binomial(q, k);
                let factor = &self.field.from_rational(&num_rational::BigRational::from_integer(c))
                    .expect("integers embed in every field")
                    * &neg_lambda.pow(k as u64);
                for (&(a, b), s) in &poly {
                    let key = (a + k * p1, b + (q - k) * p2);
                    let v = &factor * s;
                    add_term(&mut next, key, v);
                }
            }
            poly = next;
        }
        let mut out = BTreeMap::new();
        for ((a, b), s) in poly {
            let mut e = base.clone();
            e[0] += a;
            if t > 1 {
                e[1] += b;
            }
            add_term(&mut out, SMonomial { exps: e }, s);
        }
        out
    }

    /// Degree of a monomial.
    pub fn monomial_degree(self: &Arc<Self>, m: &SMonomial) -> StringElem {
        let coeffs: Vec<i64> = m.exps.iter().map(|&e| e as i64).collect();
        self.weights.normal_form(0, &coeffs).expect("arity matches")
    }

    /// Canonical monomials of degree `x`, found by searching exponent vectors;
    /// memoized per degree.
    pub fn component_basis(self: &Arc<Self>, x: &StringElem) -> Arc<Vec<SMonomial>> {
        if let Some(b) = self.bases.lock().expect("cache lock").get(x) {
            return Arc::clone(b);
        }
        let basis = Arc::new(self.search_component(x));
        self.bases
            .lock()
            .expect("cache lock")
            .entry(x.clone())
            .or_insert_with(|| Arc::clone(&basis));
        basis
    }

    fn search_component(self: &Arc<Self>, x: &StringElem) -> Vec<SMonomial> {
        let t = self.weights.len();
        let ws = self.weights.weights();
        // exponents of x_3, …, x_t are pinned by the torsion coefficients
        let mut rest = x.clone();
        let mut exps = vec![0u32; t];
        for i in 2..t {
            let e = x.coeffs()[i];
            exps[i] = e as u32;
            rest = &rest - &self.weights.x(i + 1).expect("index in range").smul(e);
        }
        let d = rest.delta();
        if d < 0 {
            return Vec::new();
        }
        let p = self.weights.lcm();
        let d1 = p / ws[0];
        let mut out = Vec::new();
        if t == 1 {
            if d % d1 == 0 {
                exps[0] = (d / d1) as u32;
                if self.monomial_degree(&SMonomial { exps: exps.clone() }) == *x {
                    out.push(SMonomial { exps });
                }
            }
            return out;
        }
        let d2 = p / ws[1];
        for e1 in 0..=d / d1 {
            let r = d - e1 * d1;
            if r % d2 != 0 {
                continue;
            }
            let mut e = exps.clone();
            e[0] = e1 as u32;
            e[1] = (r / d2) as u32;
            let m = SMonomial { exps: e };
            if self.monomial_degree(&m) == *x {
                out.push(m);
            }
        }
        out
    }

    pub fn dim_component(self: &Arc<Self>, x: &StringElem) -> usize {
        self.component_basis(x).len()
    }

    /// Coordinates of a homogeneous element of degree `x` in the basis of `S_x`.
    pub fn coordinates(self: &Arc<Self>, a: &SElem, x: &StringElem) -> Result<Vec<Scalar>> {
        let basis = self.component_basis(x);
        let index: HashMap<&SMonomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![self.field.zero(); basis.len()];
        for (m, s) in &a.terms {
            let &i = index.get(m).ok_or(Error::NotHomogeneous)?;
            v[i] = s.clone();
        }
        Ok(v)
    }

    /// The element with the given coordinates in the basis of `S_x`.
    pub fn from_coordinates(self: &Arc<Self>, x: &StringElem, v: &[Scalar]) -> SElem {
        let basis = self.component_basis(x);
        let mut terms = BTreeMap::new();
        for (m, s) in basis.iter().zip(v) {
            if !s.is_zero() {
                terms.insert(m.clone(), s.clone());
            }
        }
        SElem {
            pres: Arc::clone(self),
            terms,
        }
    }

    /// Matrix of multiplication by the homogeneous element `a` from `S_x` to
    /// `S_{x + deg a}`.
    pub fn multiplication_matrix(self: &Arc<Self>, a: &SElem, x: &StringElem) -> Result<Matrix> {
        let da = a.degree()?;
        let target = x + &da;
        let src = self.component_basis(x);
        let dst_dim = self.dim_component(&target);
        let mut cols = Vec::with_capacity(src.len());
        for m in src.iter() {
            let prod = a.mul(&self.monomial_elem(m))?;
            cols.push(self.coordinates(&prod, &target)?);
        }
        Ok(Matrix::from_columns(self.field, dst_dim, &cols))
    }

    /// Parses `"x1^2*x2 - 3/2*x3"`; scalars containing `+` must be
    /// parenthesized, as in `"(2+3z)*x1"`.
    pub fn parse_elem(self: &Arc<Self>, text: &str) -> Result<SElem> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut acc = self.zero();
        let mut depth = 0i32;
        let mut start = 0;
        let mut pieces = Vec::new();
        for (i, ch) in cleaned.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && i > start => {
                    let prev = cleaned[..i].chars().last();
                    if prev != Some('^') && prev != Some('*') && prev != Some('/') {
                        pieces.push(&cleaned[start..i]);
                        start = i;
                    }
                }
                _ => {}
            }
        }
        pieces.push(&cleaned[start..]);
        for piece in pieces {
            if piece.is_empty() {
                continue;
            }
            let (negate, body) = match piece.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, piece.strip_prefix('+').unwrap_or(piece)),
            };
            let mut term = self.one();
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{piece}`")));
                }
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, exp) = match rest.split_once('^') {
                        Some((i, e)) => (i, e),
                        None => (rest, "1"),
                    };
                    let i: usize = idx
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad generator `{factor}`")))?;
                    let e: u64 = exp
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent `{factor}`")))?;
                    term = term.mul(&self.x(i)?.pow(e))?;
                } else {
                    let inner = factor.trim_start_matches('(').trim_end_matches(')');
                    term = term.scale(&self.field.parse_scalar(inner)?);
                }
            }
            acc = acc.add(&if negate { term.neg() } else { term })?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for SPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls: Vec<String> = self.lambdas.iter().map(|l| l.to_string()).collect();
        write!(f, "S{}[{}] over {}", self.weights, ls.join(","), self.field)
    }
}

fn add_term<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, value: Scalar) {
    use std::collections::btree_map::Entry;
    if value.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(e) => {
            e.insert(value);
        }
        Entry::Occupied(mut e) => {
            let sum = e.get() + &value;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

impl SMonomial {
    pub fn one(t: usize) -> SMonomial {
        SMonomial { exps: vec![0; t] }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }
}

impl fmt::Display for SMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, e)
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl SElem {
    pub fn presentation(&self) -> &Arc<SPresentation> {
        &self.pres
    }

    pub fn terms(&self) -> &BTreeMap<SMonomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &SElem) -> Result<()> {
        if self.pres.same(&other.pres) {
            Ok(())
        } else {
            Err(Error::PresentationMismatch)
        }
    }

    pub fn add(&self, other: &SElem) -> Result<SElem> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, s) in &other.terms {
            add_term(&mut terms, m.clone(), s.clone());
        }
        Ok(SElem {
            pres: Arc::clone(&self.pres),
            terms,
        })
    }

    pub fn sub(&self, other: &SElem) -> Result<SElem> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SElem {
        self.scale(&-self.pres.field.one())
    }

    pub fn scale(&self, s: &Scalar) -> SElem {
        let terms = if s.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect()
        };
        SElem {
            pres: Arc::clone(&self.pres),
            terms,
        }
    }

    /// The product in canonical form.
    pub fn mul(&self, other: &SElem) -> Result<SElem> {
        self.check(other)?;
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                let exps: Vec<u32> = m.exps.iter().zip(&n.exps).map(|(x, y)| x + y).collect();
                for (k, v) in self.pres.reduce_monomial(&exps, a * b) {
                    add_term(&mut terms, k, v);
                }
            }
        }
        Ok(SElem {
            pres: Arc::clone(&self.pres),
            terms,
        })
    }

    pub fn pow(&self, e: u64) -> SElem {
        let mut acc = self.pres.one();
        for _ in 0..e {
            acc = acc.mul(self).expect("same presentation");
        }
        acc
    }

    /// The common degree of all monomials.
    pub fn degree(&self) -> Result<StringElem> {
        let mut degs = self.terms.keys().map(|m| self.pres.monomial_degree(m));
        let first = degs.next().ok_or(Error::ZeroHasNoDegree)?;
        if degs.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::NotHomogeneous)
        }
    }
}

/// Product of two elements of the same presentation.
pub fn s_multiply(a: &SElem, b: &SElem) -> Result<SElem> {
    a.mul(b)
}

/// Degree of a nonzero homogeneous element.
pub fn degree_of(a: &SElem) -> Result<StringElem> {
    a.degree()
}

impl PartialEq for SElem {
    fn eq(&self, other: &SElem) -> bool {
        self.pres.same(&other.pres) && self.terms == other.terms
    }
}

impl Eq for SElem {}

impl fmt::Display for SElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, s)| {
                if s.is_one() {
                    m.to_string()
                } else {
                    format!("({s})*{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A homogeneous prime of `S`, up to the data that determines its support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeKind {
    Zero,
    /// The prime generated by a homogeneous irreducible in `x_1^{p_1}, x_2^{p_2}`;
    /// the label is descriptive only.
    Curve(String),
    /// The prime `(x_i)`, 1-based.
    Axis(usize),
    Maximal,
}

/// The shifted cyclic module `S/𝔭(x)`.
#[derive(Debug, Clone)]
pub struct SupportDescriptor {
    pub kind: PrimeKind,
    pub shift: StringElem,
}

impl SupportDescriptor {
    pub fn new(kind: PrimeKind, shift: StringElem) -> Result<SupportDescriptor> {
        if let PrimeKind::Axis(i) = kind {
            shift.pi_proj(i)?;
        }
        Ok(SupportDescriptor { kind, shift })
    }

    /// Whether `(S/𝔭(x))_y ≠ 0`.
    pub fn contains(&self, y: &StringElem) -> bool {
        let z = y + &self.shift;
        match &self.kind {
            PrimeKind::Zero | PrimeKind::Curve(_) => z.phi() >= 0,
            PrimeKind::Axis(i) => {
                if z.weights().len() == 1 {
                    z.is_zero()
                } else {
                    z.coeffs()[i - 1] == 0 && z.phi() >= 0
                }
            }
            PrimeKind::Maximal => z.is_zero(),
        }
    }

    /// Whether the support meets the subgroup `H` in a finite set.
    pub fn restriction_is_finite(&self, h: &Subgroup) -> Result<bool> {
        if !h.is_infinite() {
            return Err(Error::NotInfinite);
        }
        Ok(match &self.kind {
            PrimeKind::Zero | PrimeKind::Curve(_) => false,
            PrimeKind::Axis(i) => {
                if self.shift.weights().len() == 1 {
                    true
                } else {
                    let li = self.shift.pi_proj(*i)?;
                    !h.pi_image_contains(*i, -li)?
                }
            }
            PrimeKind::Maximal => true,
        })
    }
}

/// Membership test for `gsupp(S/𝔭(x))`.
pub fn gsupp(desc: &SupportDescriptor) -> impl Fn(&StringElem) -> bool + '_ {
    move |y| desc.contains(y)
}

/// `dim (S/𝔭)_z` computed from the algebra itself: `dim S_z` minus the rank of
/// the part of `𝔭` in degree `z`. Defined for `𝔭 = (0)`, `(x_i)` and `𝔪`.
pub fn quotient_dim_direct(pres: &Arc<SPresentation>, kind: &PrimeKind, z: &StringElem) -> Result<usize> {
    let total = pres.dim_component(z);
    let gens: Vec<usize> = match kind {
        PrimeKind::Zero => return Ok(total),
        PrimeKind::Axis(i) => vec![*i],
        PrimeKind::Maximal => (1..=pres.weights().len()).collect(),
        PrimeKind::Curve(_) => {
            return Err(Error::InvalidParameters("curve primes carry no generator".into()))
        }
    };
    let mut cols = Vec::new();
    for i in gens {
        let xi = pres.x(i)?;
        let src = z - &xi.degree()?;
        for m in pres.component_basis(&src).iter() {
            let prod = xi.mul(&pres.monomial_elem(m))?;
            cols.push(pres.coordinates(&prod, z)?);
        }
    }
    let rank = Matrix::from_columns(pres.field(), total, &cols).rank();
    Ok(total - rank)
}

/// The restriction subalgebra `S_H = ⊕_{h ∈ H} S_h`.
pub struct RestrictedAlgebra {
    pres: Arc<SPresentation>,
    subgroup: Subgroup,
}

pub fn restrict_algebra(pres: &Arc<SPresentation>, h: &Subgroup) -> Result<RestrictedAlgebra> {
    if !h.is_infinite() {
        return Err(Error::NotInfinite);
    }
    Ok(RestrictedAlgebra {
        pres: Arc::clone(pres),
        subgroup: h.clone(),
    })
}

impl RestrictedAlgebra {
    pub fn presentation(&self) -> &Arc<SPresentation> {
        &self.pres
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    fn check(&self, h: &StringElem) -> Result<()> {
        if self.subgroup.contains(h) {
            Ok(())
        } else {
            Err(Error::NotInDomain(h.to_string()))
        }
    }

    pub fn component_basis(&self, h: &StringElem) -> Result<Arc<Vec<SMonomial>>> {
        self.check(h)?;
        Ok(self.pres.component_basis(h))
    }

    pub fn dim(&self, h: &StringElem) -> Result<usize> {
        Ok(self.component_basis(h)?.len())
    }

    pub fn multiply(&self, a: &SElem, b: &SElem) -> Result<SElem> {
        for e in [a, b] {
            if !e.is_zero() {
                self.check(&e.degree()?)?;
            }
        }
        a.mul(b)
    }
}

/// A basis of the span of all products of at most `cap` generators that land
/// in degree `target`, as coordinate vectors in the basis of `S_target`.
pub fn subalgebra_component_span(
    pres: &Arc<SPresentation>,
    gens: &[SElem],
    target: &StringElem,
    cap: usize,
) -> Result<Vec<Vec<Scalar>>> {
    let degs = gens.iter().map(SElem::degree).collect::<Result<Vec<_>>>()?;
    let mut vectors = Vec::new();
    let mut counts = vec![0u32; gens.len()];
    collect_products(pres, gens, &degs, target, cap, 0, &mut counts, &mut vectors)?;
    let dim = pres.dim_component(target);
    if vectors.is_empty() || dim == 0 {
        return Ok(Vec::new());
    }
    let m = Matrix::from_columns(pres.field(), dim, &vectors).transpose();
    let (r, pivots) = m.rref();
    Ok((0..pivots.len())
        .map(|i| (0..dim).map(|j| r.get(i, j).clone()).collect())
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn collect_products(
    pres: &Arc<SPresentation>,
    gens: &[SElem],
    degs: &[StringElem],
    target: &StringElem,
    cap: usize,
    idx: usize,
    counts: &mut Vec<u32>,
    out: &mut Vec<Vec<Scalar>>,
) -> Result<()> {
    if idx == gens.len() {
        let mut deg = pres.weights().zero();
        for (d, &c) in degs.iter().zip(counts.iter()) {
            deg = &deg + &d.smul(c as i64);
        }
        if deg == *target {
            let mut prod = pres.one();
            for (g, &c) in gens.iter().zip(counts.iter()) {
                prod = prod.mul(&g.pow(c as u64))?;
            }
            out.push(pres.coordinates(&prod, target)?);
        }
        return Ok(());
    }
    let used: u32 = counts.iter().sum();
    for c in 0..=(cap as u32 - used) {
        counts[idx] = c;
        collect_products(pres, gens, degs, target, cap, idx + 1, counts, out)?;
    }
    counts[idx] = 0;
    Ok(())
}

/// Dimension of `δ_*(S)_n = ⊕_{δ(x) = n} S_x`.
pub fn delta_pushforward_dim(pres: &Arc<SPresentation>, n: i64) -> usize {
    degree_fiber(pres.weights(), n)
        .iter()
        .map(|x| pres.dim_component(x))
        .sum()
}

/// All `x ∈ L(p)` with `δ(x) = n`; finite because the kernel of `δ` is torsion.
pub fn degree_fiber(weights: &Arc<WeightSeq>, n: i64) -> Vec<StringElem> {
    let p = weights.lcm();
    let ws = weights.weights().to_vec();
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; ws.len()];
    loop {
        let partial: i64 = coeffs.iter().zip(&ws).map(|(a, w)| a * (p / w)).sum();
        let rem = n - partial;
        if rem.mod_floor(&p) == 0 {
            out.push(weights.normal_form(rem / p, &coeffs).expect("arity matches"));
        }
        let mut i = 0;
        while i < ws.len() {
            coeffs[i] += 1;
            if coeffs[i] < ws[i] {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        if i == ws.len() {
            break;
        }
    }
    out
}
