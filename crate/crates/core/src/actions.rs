//! Character actions of `Â` for `A = Z/p`, the correspondence between
//! `A`-refinements and graded automorphisms, and the graded group ring
//! `R^gr[N]` over a refined curve algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::curve::{CurveTag, CurveType, RElem, RMonomial};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::grading::{CyclicGrading, Deg};
use crate::linalg::Matrix;
use crate::verification::Verification;

/// The character `χ_k` of `Z/p` with `χ_k(ā) = ζ^{ka}`; `ζ` is a fixed
/// primitive `p`-th root of unity and `χ_1` generates `Â`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    modulus: i64,
    exponent: i64,
    zeta: Scalar,
}

impl Character {
    pub fn new(field: Field, modulus: i64, exponent: i64) -> Result<Character> {
        if modulus < 1 {
            return Err(Error::InvalidParameters(format!("modulus {modulus} must be positive")));
        }
        let zeta = field.primitive_root(modulus as u64)?;
        Ok(Character {
            modulus,
            exponent: exponent.rem_euclid(modulus),
            zeta,
        })
    }

    /// All `p` characters, `χ_0, …, χ_{p−1}`.
    pub fn all(field: Field, modulus: i64) -> Result<Vec<Character>> {
        (0..modulus).map(|k| Character::new(field, modulus, k)).collect()
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn value(&self, a: i64) -> Scalar {
        self.zeta.pow((self.exponent * a).rem_euclid(self.modulus) as u64)
    }

    pub fn inverse(&self) -> Character {
        Character {
            exponent: (-self.exponent).rem_euclid(self.modulus),
            ..self.clone()
        }
    }

    pub fn compose(&self, other: &Character) -> Character {
        Character {
            exponent: (self.exponent + other.exponent).rem_euclid(self.modulus),
            ..self.clone()
        }
    }
}

/// An automorphism of `R` scaling each of `X, Y, Z` by a nonzero constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAutomorphism {
    ty: Arc<CurveType>,
    multipliers: [Scalar; 3],
}

impl GradedAutomorphism {
    pub fn new(ty: &Arc<CurveType>, multipliers: [Scalar; 3]) -> Result<GradedAutomorphism> {
        for m in &multipliers {
            if !ty.field().contains(m) {
                return Err(Error::KindMismatch(ty.field().to_string(), m.field().to_string()));
            }
            if m.is_zero() {
                return Err(Error::DivisionByZero);
            }
        }
        Ok(GradedAutomorphism {
            ty: Arc::clone(ty),
            multipliers,
        })
    }

    pub fn identity(ty: &Arc<CurveType>) -> GradedAutomorphism {
        let one = ty.field().one();
        GradedAutomorphism {
            ty: Arc::clone(ty),
            multipliers: [one.clone(), one.clone(), one],
        }
    }

    pub fn multipliers(&self) -> &[Scalar; 3] {
        &self.multipliers
    }

    pub fn monomial_factor(&self, m: &RMonomial) -> Scalar {
        let mut s = self.ty.field().one();
        for k in 0..3 {
            s = &s * &self.multipliers[k].pow(m[k] as u64);
        }
        s
    }

    /// Image of a polynomial in the free algebra, reduced into `R`.
    pub fn apply_terms(&self, terms: &[(Scalar, RMonomial)]) -> RElem {
        let scaled: Vec<(Scalar, RMonomial)> = terms
            .iter()
            .map(|(c, m)| (c * &self.monomial_factor(m), *m))
            .collect();
        RElem::from_terms(&self.ty, &scaled)
    }

    pub fn apply(&self, r: &RElem) -> RElem {
        let terms: Vec<(Scalar, RMonomial)> = r.terms().iter().map(|(m, c)| (c.clone(), *m)).collect();
        self.apply_terms(&terms)
    }

    pub fn compose(&self, other: &GradedAutomorphism) -> GradedAutomorphism {
        GradedAutomorphism {
            ty: Arc::clone(&self.ty),
            multipliers: [0, 1, 2].map(|k| &self.multipliers[k] * &other.multipliers[k]),
        }
    }

    pub fn pow(&self, e: u64) -> GradedAutomorphism {
        GradedAutomorphism {
            ty: Arc::clone(&self.ty),
            multipliers: [0, 1, 2].map(|k| self.multipliers[k].pow(e)),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.multipliers.iter().all(Scalar::is_one)
    }

    /// Smallest `k ≥ 1` with `σ^k = id`, searched up to `bound`.
    pub fn order(&self, bound: u64) -> Option<u64> {
        (1..=bound).find(|&k| self.pow(k).is_identity())
    }

    /// The matrix of `σ` on `R_n` in the canonical monomial basis.
    pub fn component_matrix(&self, n: u32) -> Matrix {
        let basis = self.ty.basis(n);
        let cols: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|m| {
                let img = self.apply(&RElem::monomial(&self.ty, *m));
                basis
                    .iter()
                    .map(|b| img.terms().get(b).cloned().unwrap_or_else(|| self.ty.field().zero()))
                    .collect()
            })
            .collect();
        Matrix::from_columns(self.ty.field(), basis.len(), &cols)
    }
}

impl fmt::Display for GradedAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.multipliers;
        write!(f, "X ↦ ({a})X, Y ↦ ({b})Y, Z ↦ ({c})Z")
    }
}

/// The listed action of the generator `g` of `C_p` on `R`, with `ζ = g(1̄)`.
pub fn cyclic_action(ty: &Arc<CurveType>) -> Result<GradedAutomorphism> {
    let zeta = ty.field().primitive_root(ty.p() as u64)?;
    let one = ty.field().one();
    let m = match ty.tag() {
        CurveTag::T2222 => [one.clone(), zeta, one],
        CurveTag::T333 => [zeta.pow(2), one.clone(), one],
        CurveTag::T442 | CurveTag::T632 => [zeta.pow(2), zeta.pow(3), one],
    };
    GradedAutomorphism::new(ty, m)
}

/// `χ.r = χ(a) r` for `r` of refined degree `(n, ā)`: one diagonal
/// automorphism per character, indexed by exponent.
pub fn gradation_to_action(ty: &Arc<CurveType>) -> Result<Vec<GradedAutomorphism>> {
    let extra = ty.tag().extra_degrees();
    Character::all(ty.field(), ty.p())?
        .iter()
        .map(|chi| GradedAutomorphism::new(ty, extra.map(|a| chi.value(a))))
        .collect()
}

/// Eigenprojections `e_a = |A|^{-1} Σ_k ζ^{-ka} ρ(χ_k)` of a representation
/// of `Â` given by the matrices `reps[k] = ρ(χ_k)`.
pub fn action_to_gradation(field: Field, modulus: i64, reps: &[Matrix]) -> Result<Vec<Matrix>> {
    if (modulus as u64).is_multiple_of(field.characteristic().max(1)) && field.characteristic() != 0 {
        return Err(Error::BadCharacteristic(field.characteristic()));
    }
    if reps.len() != modulus as usize {
        return Err(Error::ArityError {
            expected: modulus as usize,
            got: reps.len(),
        });
    }
    let chars = Character::all(field, modulus)?;
    let dim = reps.first().map(Matrix::rows).unwrap_or(0);
    let inv_order = field.from_i64(modulus).inv()?;
    (0..modulus)
        .map(|a| {
            let mut e = Matrix::zeros(field, dim, dim);
            for (chi, rho) in chars.iter().zip(reps) {
                e = e.add(&rho.scale(&chi.value(a).inv()?))?;
            }
            Ok(e.scale(&inv_order))
        })
        .collect()
}

/// Column space of `m` as an rref row basis, for comparing subspaces.
pub fn column_space(m: &Matrix) -> Matrix {
    let (r, pivots) = m.transpose().rref();
    r.sub_block(0, 0, pivots.len(), r.cols())
}

/// Checks that `σ` kills the cubic, is multiplicative on canonical monomial
/// pairs of total degree at most `n_max`, and preserves each `R_n`.
pub fn check_graded_automorphism(sigma: &GradedAutomorphism, n_max: u32) -> Verification {
    let ty = &sigma.ty;
    let mut v = Verification::new();
    let rel = sigma.apply_terms(&ty.relation());
    v.record(rel.is_zero(), || json!({ "law": "relation", "image": rel.to_string() }));
    for n in 0..=n_max {
        for i in 0..=n {
            for m1 in ty.basis(i) {
                for m2 in ty.basis(n - i) {
                    let a = RElem::monomial(ty, m1);
                    let b = RElem::monomial(ty, m2);
                    let lhs = sigma.apply(&a.mul(&b).expect("same curve"));
                    let rhs = sigma.apply(&a).mul(&sigma.apply(&b)).expect("same curve");
                    v.record(lhs == rhs, || json!({ "law": "multiplicative", "left": m1, "right": m2 }));
                }
            }
        }
        for m in ty.basis(n) {
            let img = sigma.apply(&RElem::monomial(ty, m));
            let ok = img.is_zero() || img.degree() == Ok(n);
            v.record(ok, || json!({ "law": "degree", "monomial": m }));
        }
    }
    v
}

/// The cyclic action on one curve: the listed action is an automorphism of order
/// exactly `p` and equals the action of `χ_1` induced by the refinement.
pub fn verify_cyclic_action(ty: &Arc<CurveType>, n_max: u32) -> Result<Verification> {
    let g = cyclic_action(ty)?;
    let mut v = Verification::new();
    v.absorb("automorphism", check_graded_automorphism(&g, n_max));
    let p = ty.p() as u64;
    let order = g.order(p);
    v.record(order == Some(p), || json!({ "law": "order", "found": order, "expected": p }));
    let induced = gradation_to_action(ty)?;
    let matches = induced.get(1).map(|s| s == &g).unwrap_or(p == 1 && g.is_identity());
    v.record(matches, || json!({ "law": "induced", "listed": g.to_string() }));
    v.detail("action", g.to_string());
    Ok(v)
}

/// Refined gradation → action → gradation on `R_n` for `n ≤ n_max`: the
/// eigenprojections must cut out exactly the refined components.
pub fn verify_refinement_round_trip(ty: &Arc<CurveType>, n_max: u32) -> Result<Verification> {
    let family = gradation_to_action(ty)?;
    let field = ty.field();
    let mut v = Verification::new();
    for n in 0..=n_max {
        let reps: Vec<Matrix> = family.iter().map(|s| s.component_matrix(n)).collect();
        let proj = action_to_gradation(field, ty.p(), &reps)?;
        let basis = ty.basis(n);
        for (a, e) in proj.iter().enumerate() {
            let want_cols: Vec<Vec<Scalar>> = basis
                .iter()
                .enumerate()
                .filter(|(_, m)| ty.refined_degree(m).a == a as i64)
                .map(|(i, _)| {
                    let mut c = vec![field.zero(); basis.len()];
                    c[i] = field.one();
                    c
                })
                .collect();
            let want = column_space(&Matrix::from_columns(field, basis.len(), &want_cols));
            let got = column_space(e);
            v.record(got == want, || json!({ "n": n, "a": a, "got_dim": got.rows(), "want_dim": want.rows() }));
        }
    }
    Ok(v)
}

/// Random diagonalizable representation `P diag(ζ^{k a_i}) P^{-1}` with a
/// hidden gradation `a`; checks the eigenprojections recover `P`'s columns.
pub fn verify_random_correspondence<R: rand::Rng>(
    field: Field,
    modulus: i64,
    dim: usize,
    rng: &mut R,
) -> Result<Verification> {
    let chars = Character::all(field, modulus)?;
    let grades: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..modulus)).collect();
    let p = loop {
        let rows: Vec<Vec<Scalar>> = (0..dim)
            .map(|_| (0..dim).map(|_| field.random(rng, 3)).collect())
            .collect();
        let m = Matrix::from_rows(field, rows)?;
        if m.inverse().is_some() {
            break m;
        }
    };
    let p_inv = p.inverse().expect("invertible");
    let reps: Vec<Matrix> = chars
        .iter()
        .map(|chi| {
            let d: Vec<Scalar> = grades.iter().map(|&a| chi.value(a)).collect();
            p.mul(&Matrix::diagonal(field, &d))?.mul(&p_inv)
        })
        .collect::<Result<_>>()?;
    let proj = action_to_gradation(field, modulus, &reps)?;
    let mut v = Verification::new();
    for (a, e) in proj.iter().enumerate() {
        let cols: Vec<Vec<Scalar>> = (0..dim)
            .filter(|&i| grades[i] == a as i64)
            .map(|i| p.column(i))
            .collect();
        let want = column_space(&Matrix::from_columns(field, dim, &cols));
        let got = column_space(e);
        v.record(got == want, || json!({ "a": a, "grades": grades }));
        // the action recovers each piece by the scalar χ(a)
        for (chi, rho) in chars.iter().zip(&reps) {
            let lhs = rho.mul(e)?;
            v.record(lhs == e.scale(&chi.value(a as i64)), || {
                json!({ "a": a, "character": chi.exponent() })
            });
        }
    }
    Ok(v)
}

/// An element of `R̄^gr[N]` for `N = {0} × Z/p` inside `Z × Z/p`, stored as
/// coefficients of `m·u_n` with `m` a canonical monomial.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElem {
    ty: Arc<CurveType>,
    terms: BTreeMap<(RMonomial, i64), Scalar>,
}

impl GroupRingElem {
    pub fn zero(ty: &Arc<CurveType>) -> GroupRingElem {
        GroupRingElem {
            ty: Arc::clone(ty),
            terms: BTreeMap::new(),
        }
    }

    /// `r·u_n`.
    pub fn new(r: &RElem, n: i64) -> GroupRingElem {
        let ty = r.curve();
        let n = n.rem_euclid(ty.p());
        GroupRingElem {
            ty: Arc::clone(ty),
            terms: r.terms().iter().map(|(m, c)| ((*m, n), c.clone())).collect(),
        }
    }

    /// `u_n`.
    pub fn unit_symbol(ty: &Arc<CurveType>, n: i64) -> GroupRingElem {
        GroupRingElem::new(&RElem::one(ty), n)
    }

    pub fn one(ty: &Arc<CurveType>) -> GroupRingElem {
        GroupRingElem::unit_symbol(ty, 0)
    }

    pub fn terms(&self) -> &BTreeMap<(RMonomial, i64), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn grading(&self) -> CyclicGrading {
        CyclicGrading::new(self.ty.p()).expect("positive modulus")
    }

    fn insert(&mut self, key: (RMonomial, i64), value: Scalar) {
        if value.is_zero() {
            return;
        }
        let sum = match self.terms.get(&key) {
            Some(old) => old + &value,
            None => value,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, other: &GroupRingElem) -> Result<GroupRingElem> {
        if self.ty != other.ty {
            return Err(Error::PresentationMismatch);
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(*k, c.clone());
        }
        Ok(out)
    }

    /// `|m u_n| = |m| + n`.
    pub fn term_degree(&self, m: &RMonomial, n: i64) -> Deg {
        self.grading().add(self.ty.refined_degree(m), Deg { n: 0, a: n })
    }

    pub fn degree(&self) -> Result<Deg> {
        let mut it = self.terms.keys().map(|(m, n)| self.term_degree(m, *n));
        let first = it.next().ok_or(Error::ZeroHasNoDegree)?;
        if it.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// `(r u_n)(r' u_{n'}) = r r' u_{(|r'|^{-1} n |r'|) n'}`, applied to each
    /// homogeneous part `r'` of the right factor.
    pub fn mul(&self, other: &GroupRingElem) -> Result<GroupRingElem> {
        if self.ty != other.ty {
            return Err(Error::PresentationMismatch);
        }
        let g = self.grading();
        let mut out = GroupRingElem::zero(&self.ty);
        for ((m, n), c) in &self.terms {
            let r = RElem::monomial(&self.ty, *m);
            for ((m2, n2), c2) in &other.terms {
                let deg = self.ty.refined_degree(m2);
                let conj = g.add(g.add(g.neg(deg), Deg { n: 0, a: *n }), deg);
                let idx = g.add(conj, Deg { n: 0, a: *n2 });
                debug_assert_eq!(idx.n, 0);
                let prod = r.mul(&RElem::monomial(&self.ty, *m2))?;
                let s = c * c2;
                for (pm, pc) in prod.terms() {
                    out.insert((*pm, idx.a), pc * &s);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((m, n), c)| format!("({c})*X^{}Y^{}Z^{}*u{n}", m[0], m[1], m[2]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Random element `Σ c·m·u_n` with monomials of degree `≤ max_deg`; with
/// `homogeneous` set, all terms share one refined degree.
pub fn random_group_ring_elem<R: rand::Rng>(
    ty: &Arc<CurveType>,
    max_deg: u32,
    homogeneous: bool,
    rng: &mut R,
) -> GroupRingElem {
    let p = ty.p();
    let field = ty.field();
    let mut out = GroupRingElem::zero(ty);
    let n = rng.gen_range(0..=max_deg);
    let basis = ty.basis(n);
    let target = {
        let m = basis[rng.gen_range(0..basis.len())];
        out.term_degree(&m, rng.gen_range(0..p))
    };
    for _ in 0..rng.gen_range(1..=3) {
        let (m, u) = if homogeneous {
            let m = basis[rng.gen_range(0..basis.len())];
            let u = (target.a - ty.refined_degree(&m).a).rem_euclid(p);
            (m, u)
        } else {
            let b = ty.basis(rng.gen_range(0..=max_deg));
            (b[rng.gen_range(0..b.len())], rng.gen_range(0..p))
        };
        out.insert((m, u), field.random_nonzero(rng, 4));
    }
    out
}

/// Associativity, unit, gradedness and `u_n u_{-n} = u_0` on `trials`
/// seeded random triples.
pub fn verify_group_ring<R: rand::Rng>(ty: &Arc<CurveType>, max_deg: u32, trials: u64, rng: &mut R) -> Result<Verification> {
    let mut v = Verification::new();
    let one = GroupRingElem::one(ty);
    for t in 0..trials {
        let a = random_group_ring_elem(ty, max_deg, true, rng);
        let b = random_group_ring_elem(ty, max_deg, true, rng);
        let c = random_group_ring_elem(ty, max_deg, false, rng);
        let left = a.mul(&b)?.mul(&c)?;
        let right = a.mul(&b.mul(&c)?)?;
        v.record(left == right, || json!({ "law": "associative", "trial": t }));
        v.record(one.mul(&c)? == c && c.mul(&one)? == c, || json!({ "law": "unit", "trial": t }));
        let ab = a.mul(&b)?;
        let graded = ab.is_zero() || {
            let g = CyclicGrading::new(ty.p())?;
            ab.degree() == Ok(g.add(a.degree()?, b.degree()?))
        };
        v.record(graded, || json!({ "law": "graded", "trial": t }));
        let n = rng.gen_range(0..ty.p());
        let inv = GroupRingElem::unit_symbol(ty, n).mul(&GroupRingElem::unit_symbol(ty, -n))?;
        v.record(inv == one, || json!({ "law": "inverse", "n": n }));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn curve(tag: CurveTag, field: Field) -> Arc<CurveType> {
        let lambda = (tag == CurveTag::T2222).then(|| field.parse_scalar("5/3").unwrap());
        CurveType::new(tag, lambda, field).unwrap()
    }

    fn split_field(tag: CurveTag) -> Field {
        Field::cyclotomic(tag.p() as u8).unwrap()
    }

    #[test]
    fn cyclic_actions_pass() {
        for tag in CurveTag::ALL {
            let ty = curve(tag, split_field(tag));
            let v = verify_cyclic_action(&ty, 4).unwrap();
            assert!(v.passed, "{tag}: {:?}", v.counterexample);
        }
    }

    #[test]
    fn cyclic_action_over_prime_field() {
        let ty = curve(CurveTag::T632, Field::prime(7).unwrap());
        assert!(verify_cyclic_action(&ty, 4).unwrap().passed);
    }

    #[test]
    fn scaling_z_is_not_an_automorphism() {
        let f = split_field(CurveTag::T632);
        let ty = curve(CurveTag::T632, f);
        let z = f.primitive_root(6).unwrap();
        let g = cyclic_action(&ty).unwrap();
        let [a, b, _] = g.multipliers().clone();
        let bad = GradedAutomorphism::new(&ty, [a, b, z]).unwrap();
        assert!(!check_graded_automorphism(&bad, 3).passed);
    }

    #[test]
    fn identity_is_automorphism() {
        let ty = curve(CurveTag::T333, Field::Rational);
        let id = GradedAutomorphism::identity(&ty);
        assert!(check_graded_automorphism(&id, 4).passed);
        assert_eq!(id.order(5), Some(1));
    }

    #[test]
    fn t2222_over_rationals() {
        let ty = curve(CurveTag::T2222, Field::Rational);
        let g = cyclic_action(&ty).unwrap();
        assert_eq!(g.multipliers()[1], Field::Rational.from_i64(-1));
        assert!(verify_refinement_round_trip(&ty, 5).unwrap().passed);
    }

    #[test]
    fn refinements_round_trip() {
        for tag in CurveTag::ALL {
            let ty = curve(tag, split_field(tag));
            assert!(verify_refinement_round_trip(&ty, 4).unwrap().passed, "{tag}");
        }
    }

    #[test]
    fn projections_on_degree_one() {
        let f = split_field(CurveTag::T632);
        let ty = curve(CurveTag::T632, f);
        let fam = gradation_to_action(&ty).unwrap();
        let reps: Vec<Matrix> = fam.iter().map(|s| s.component_matrix(1)).collect();
        let proj = action_to_gradation(f, 6, &reps).unwrap();
        let ranks: Vec<usize> = proj.iter().map(Matrix::rank).collect();
        assert_eq!(ranks, vec![1, 0, 1, 1, 0, 0]);
    }

    #[test]
    fn bad_characteristic() {
        let f = Field::prime(3).unwrap();
        let id = Matrix::identity(f, 2);
        assert!(matches!(
            action_to_gradation(f, 3, &[id.clone(), id.clone(), id]),
            Err(Error::BadCharacteristic(3)) | Err(Error::NoSuchRoot(..))
        ));
    }

    #[test]
    fn random_diagonal_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (f, p) in [
            (Field::cyclotomic(4).unwrap(), 4),
            (Field::cyclotomic(6).unwrap(), 6),
            (Field::prime(13).unwrap(), 6),
            (Field::prime(7).unwrap(), 3),
        ] {
            let v = verify_random_correspondence(f, p, 4, &mut rng).unwrap();
            assert!(v.passed, "{f}: {:?}", v.counterexample);
        }
    }

    #[test]
    fn group_ring_laws() {
        let ty = curve(CurveTag::T632, Field::Rational);
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let v = verify_group_ring(&ty, 3, 50, &mut rng).unwrap();
        assert!(v.passed, "{:?}", v.counterexample);
        let u2 = GroupRingElem::unit_symbol(&ty, 2);
        let u3 = GroupRingElem::unit_symbol(&ty, 3);
        assert_eq!(u2.mul(&u3).unwrap(), GroupRingElem::unit_symbol(&ty, 5));
        let x = GroupRingElem::new(&RElem::generator(&ty, 0), 1);
        assert_eq!(x.degree().unwrap(), Deg { n: 1, a: 3 });
    }

    #[test]
    fn characters() {
        let f = Field::cyclotomic(6).unwrap();
        let chi = Character::new(f, 6, 1).unwrap();
        assert!(chi.value(6).is_one());
        assert_eq!(chi.compose(&chi.inverse()).exponent(), 0);
        assert_eq!(chi.value(2), chi.value(1).pow(2));
    }
}
