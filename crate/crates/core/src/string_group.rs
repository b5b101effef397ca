//! The string group `L(p)` of a weight sequence.
//!
//! `L(p)` is generated by `x_1, …, x_t` subject to `p_1 x_1 = … = p_t x_t`,
//! the common value being the canonical element `c`. Every element has a
//! unique normal form `l·c + Σ l_i x_i` with `0 ≤ l_i < p_i`, which is the
//! representation used by [`StringElem`].
//!
//! Subgroups are handled through the presentation `Z^t / ⟨p_1 e_1 − p_i e_i⟩`
//! and the Smith normal form of generators stacked on relations.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lattice::SmithForm;

/// A weight sequence `p_1 ≥ p_2 ≥ … ≥ p_t ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightSeq {
    weights: Vec<i64>,
    lcm: i64,
}

/// An element of `L(p)` in normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StringElem {
    l: i64,
    coeffs: Vec<i64>,
    weights: Arc<WeightSeq>,
}

/// Order of an element of `L(p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl WeightSeq {
    /// Builds a weight sequence; the weights are sorted into descending order.
    pub fn new(weights: &[i64]) -> Result<Arc<WeightSeq>> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("need at least one weight".into()));
        }
        if let Some(w) = weights.iter().find(|&&w| w < 2) {
            return Err(Error::InvalidWeights(format!("weight {w} is below 2")));
        }
        let mut weights = weights.to_vec();
        weights.sort_unstable_by(|a, b| b.cmp(a));
        let lcm = weights.iter().fold(1i64, |acc, &w| acc.lcm(&w));
        Ok(Arc::new(WeightSeq { weights, lcm }))
    }

    /// Parses `6,3,2`.
    pub fn parse(text: &str) -> Result<Arc<WeightSeq>> {
        let weights = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad weight `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        WeightSeq::new(&weights)
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Number of weights `t`.
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `p = lcm(p_1, …, p_t)`.
    pub fn lcm(&self) -> i64 {
        self.lcm
    }

    pub fn weight(&self, i: usize) -> Result<i64> {
        self.check_index(i)?;
        Ok(self.weights[i - 1])
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            Err(Error::IndexOutOfRange {
                index: i,
                max: self.len(),
            })
        } else {
            Ok(())
        }
    }

    /// `|L(p)/Zc| = Π p_i`.
    pub fn torsion_box_size(&self) -> i64 {
        self.weights.iter().product()
    }

    /// Whether the dualizing element is torsion.
    pub fn is_tubular(self: &Arc<Self>) -> bool {
        self.dualizing().delta() == 0
    }

    pub fn zero(self: &Arc<Self>) -> StringElem {
        StringElem {
            l: 0,
            coeffs: vec![0; self.len()],
            weights: Arc::clone(self),
        }
    }

    pub fn canonical_c(self: &Arc<Self>) -> StringElem {
        StringElem {
            l: 1,
            ..self.zero()
        }
    }

    /// The generator `x_i` (1-based).
    pub fn x(self: &Arc<Self>, i: usize) -> Result<StringElem> {
        self.check_index(i)?;
        let mut coeffs = vec![0; self.len()];
        coeffs[i - 1] = 1;
        self.normal_form(0, &coeffs)
    }

    /// `ω = (t − 2)c − Σ x_i`.
    pub fn dualizing(self: &Arc<Self>) -> StringElem {
        let t = self.len() as i64;
        self.normal_form(t - 2, &vec![-1; self.len()])
            .expect("arity matches")
    }

    /// Reduces `l·c + Σ a_i x_i` using the carries `p_i x_i = c`.
    pub fn normal_form(self: &Arc<Self>, l: i64, coeffs: &[i64]) -> Result<StringElem> {
        if coeffs.len() != self.len() {
            return Err(Error::ArityError {
                expected: self.len(),
                got: coeffs.len(),
            });
        }
        let mut l = l;
        let coeffs = coeffs
            .iter()
            .zip(&self.weights)
            .map(|(&a, &p)| {
                l += a.div_euclid(p);
                a.rem_euclid(p)
            })
            .collect();
        Ok(StringElem {
            l,
            coeffs,
            weights: Arc::clone(self),
        })
    }

    /// Every element with `lo ≤ φ ≤ hi`, in (φ, coefficients) order.
    pub fn elements_in_band(self: &Arc<Self>, lo: i64, hi: i64) -> Vec<StringElem> {
        let mut out = Vec::new();
        for l in lo..=hi {
            let mut coeffs = vec![0i64; self.len()];
            loop {
                out.push(StringElem {
                    l,
                    coeffs: coeffs.clone(),
                    weights: Arc::clone(self),
                });
                let mut i = 0;
                loop {
                    if i == coeffs.len() {
                        break;
                    }
                    coeffs[i] += 1;
                    if coeffs[i] < self.weights[i] {
                        break;
                    }
                    coeffs[i] = 0;
                    i += 1;
                }
                if i == coeffs.len() {
                    break;
                }
            }
        }
        out
    }
}

impl fmt::Display for WeightSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl StringElem {
    pub fn weights(&self) -> &Arc<WeightSeq> {
        &self.weights
    }

    /// `φ(x)`, the `c`-coefficient of the normal form.
    pub fn phi(&self) -> i64 {
        self.l
    }

    /// Normal-form torsion coefficients `l_1, …, l_t`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `max(φ(x) + 1, 0)`.
    pub fn mult(&self) -> u64 {
        (self.l + 1).max(0) as u64
    }

    /// The degree map `δ`, with `δ(x_i) = p / p_i`.
    pub fn delta(&self) -> i64 {
        let p = self.weights.lcm;
        self.l * p
            + self
                .coeffs
                .iter()
                .zip(&self.weights.weights)
                .map(|(&a, &w)| a * (p / w))
                .sum::<i64>()
    }

    /// `π_i(x) ∈ Z/p_i`, returned as a residue in `[0, p_i)`.
    pub fn pi_proj(&self, i: usize) -> Result<i64> {
        self.weights.check_index(i)?;
        Ok(self.coeffs[i - 1])
    }

    fn same_group(&self, other: &StringElem) -> Result<()> {
        if Arc::ptr_eq(&self.weights, &other.weights) || self.weights == other.weights {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn checked_add(&self, other: &StringElem) -> Result<StringElem> {
        self.same_group(other)?;
        let coeffs: Vec<i64> = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        self.weights.normal_form(self.l + other.l, &coeffs)
    }

    pub fn checked_sub(&self, other: &StringElem) -> Result<StringElem> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> StringElem {
        let coeffs: Vec<i64> = self.coeffs.iter().map(|a| -a).collect();
        self.weights
            .normal_form(-self.l, &coeffs)
            .expect("arity matches")
    }

    pub fn smul(&self, n: i64) -> StringElem {
        let coeffs: Vec<i64> = self.coeffs.iter().map(|a| a * n).collect();
        self.weights
            .normal_form(self.l * n, &coeffs)
            .expect("arity matches")
    }

    pub fn is_zero(&self) -> bool {
        self.l == 0 && self.coeffs.iter().all(|&a| a == 0)
    }

    /// `x ≤ y` iff `φ(y − x) ≥ 0`.
    pub fn leq(&self, other: &StringElem) -> Result<bool> {
        Ok(other.checked_sub(self)?.phi() >= 0)
    }

    pub fn is_positive(&self) -> bool {
        self.l >= 0
    }

    pub fn torsion_order(&self) -> Order {
        if self.delta() != 0 {
            return Order::Infinite;
        }
        // torsion embeds into L/Zc, whose exponent is p
        (1..=self.weights.lcm)
            .find(|&n| self.smul(n).is_zero())
            .map(|n| Order::Finite(n as u64))
            .expect("torsion order divides lcm")
    }

    /// Coordinates in the presentation `Z^t`: `e_1 = l·p_1 + l_1`, `e_i = l_i`.
    pub(crate) fn lattice_coords(&self) -> Vec<i128> {
        let mut v: Vec<i128> = self.coeffs.iter().map(|&a| a as i128).collect();
        v[0] += self.l as i128 * self.weights.weights[0] as i128;
        v
    }
}

impl fmt::Debug for StringElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for StringElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.l != 0 {
            parts.push(format!("{}*c", self.l));
        }
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a != 0 {
                parts.push(format!("{}*x{}", a, i + 1));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl std::ops::Add for &StringElem {
    type Output = StringElem;
    fn add(self, rhs: &StringElem) -> StringElem {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl std::ops::Sub for &StringElem {
    type Output = StringElem;
    fn sub(self, rhs: &StringElem) -> StringElem {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl std::ops::Neg for &StringElem {
    type Output = StringElem;
    fn neg(self) -> StringElem {
        StringElem::neg(self)
    }
}

/// Parses `"l*c + a1*x1 + …"`; `w` denotes the dualizing element and `c` the
/// canonical element. Terms may omit the `n*` factor or carry a sign.
pub fn parse_elem(weights: &Arc<WeightSeq>, text: &str) -> Result<StringElem> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() || cleaned == "0" {
        return Ok(weights.zero());
    }
    let mut acc = weights.zero();
    let mut start = 0;
    let bytes = cleaned.as_bytes();
    let mut pieces = Vec::new();
    for i in 1..bytes.len() {
        if bytes[i] == b'+' || bytes[i] == b'-' {
            pieces.push(&cleaned[start..i]);
            start = i;
        }
    }
    pieces.push(&cleaned[start..]);
    for piece in pieces {
        let (sign, body) = match piece.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, piece.trim_start_matches('+')),
        };
        let (n, sym) = match body.split_once('*') {
            Some((n, sym)) => (
                n.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad multiplier in `{piece}`")))?,
                sym,
            ),
            None => {
                let digits: String = body.chars().take_while(|c| c.is_ascii_digit()).collect();
                if digits.len() == body.len() {
                    return Err(Error::Parse(format!("bare number `{piece}`")));
                }
                let n = if digits.is_empty() {
                    1
                } else {
                    digits.parse().expect("digits")
                };
                (n, &body[digits.len()..])
            }
        };
        let base = match sym {
            "c" => weights.canonical_c(),
            "w" => weights.dualizing(),
            s if s.starts_with('x') => {
                let i: usize = s[1..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad generator `{s}`")))?;
                weights.x(i)?
            }
            s => return Err(Error::Parse(format!("unknown symbol `{s}`"))),
        };
        acc = &acc + &base.smul(sign * n);
    }
    Ok(acc)
}

/// A finitely generated subgroup `H ⊆ L(p)`.
#[derive(Debug, Clone)]
pub struct Subgroup {
    weights: Arc<WeightSeq>,
    gens: Vec<StringElem>,
    smith: SmithForm,
}

impl Subgroup {
    pub fn new(gens: &[StringElem]) -> Result<Subgroup> {
        let first = gens
            .first()
            .ok_or_else(|| Error::InvalidParameters("a subgroup needs a generator".into()))?;
        let weights = Arc::clone(first.weights());
        for g in gens {
            first.same_group(g)?;
        }
        let t = weights.len();
        let mut rows: Vec<Vec<i128>> = gens.iter().map(|g| g.lattice_coords()).collect();
        for i in 1..t {
            let mut r = vec![0i128; t];
            r[0] = weights.weights[0] as i128;
            r[i] = -(weights.weights[i] as i128);
            rows.push(r);
        }
        let smith = SmithForm::compute(&rows, t);
        Ok(Subgroup {
            weights,
            gens: gens.to_vec(),
            smith,
        })
    }

    /// The whole group `L(p)`.
    pub fn full(weights: &Arc<WeightSeq>) -> Subgroup {
        let gens: Vec<StringElem> = (1..=weights.len())
            .map(|i| weights.x(i).expect("index in range"))
            .collect();
        Subgroup::new(&gens).expect("nonempty")
    }

    /// `H(p) = Z(3x_1) ⊕ Zω`.
    pub fn tubular_h(weights: &Arc<WeightSeq>) -> Subgroup {
        let x1 = weights.x(1).expect("t ≥ 1");
        Subgroup::new(&[x1.smul(3), weights.dualizing()]).expect("nonempty")
    }

    pub fn weights(&self) -> &Arc<WeightSeq> {
        &self.weights
    }

    pub fn generators(&self) -> &[StringElem] {
        &self.gens
    }

    pub fn contains(&self, x: &StringElem) -> bool {
        x.same_group(&self.gens[0]).is_ok()
            && self.smith.solve_left(&x.lattice_coords()).is_some()
    }

    /// Integer coefficients `n_j` with `x = Σ n_j g_j`, if `x ∈ H`.
    pub fn coordinates(&self, x: &StringElem) -> Option<Vec<i64>> {
        let y = self.smith.solve_left(&x.lattice_coords())?;
        Some(y[..self.gens.len()].iter().map(|&a| a as i64).collect())
    }

    /// Invariant factors of `L/H`; `0` marks a free summand.
    pub fn quotient_invariants(&self) -> Vec<i64> {
        self.smith
            .cokernel_invariants()
            .into_iter()
            .map(|d| d as i64)
            .collect()
    }

    pub fn is_infinite(&self) -> bool {
        self.gens.iter().any(|g| g.delta() != 0)
    }

    /// `|L/H|` when finite.
    pub fn index(&self) -> Option<i64> {
        let inv = self.quotient_invariants();
        if inv.contains(&0) {
            None
        } else {
            Some(inv.iter().product())
        }
    }

    /// The residues `π_i(g)` of the generators generate `Z/p_i` for every `i`.
    pub fn is_effective(&self) -> bool {
        self.is_infinite() && self.first_ineffective_index().is_none()
    }

    /// An index `i` with `π_i(H) ≠ Z/p_i`, if any.
    pub fn first_ineffective_index(&self) -> Option<usize> {
        (1..=self.weights.len()).find(|&i| {
            let p = self.weights.weights[i - 1];
            let g = self
                .gens
                .iter()
                .fold(p, |acc, x| acc.gcd(&x.pi_proj(i).expect("index in range")));
            g != 1
        })
    }

    /// Whether the residue `r` lies in `π_i(H)`.
    pub fn pi_image_contains(&self, i: usize, r: i64) -> Result<bool> {
        let p = self.weights.weight(i)?;
        let g = self
            .gens
            .iter()
            .fold(p, |acc, x| acc.gcd(&x.pi_proj(i).expect("index checked")));
        Ok(r.rem_euclid(p) % g == 0)
    }

    /// The least `m ≥ 1` with `H ∩ Zc = Z(mc)`: the order of `c` in `L/H`.
    pub fn intersect_with_c(&self) -> Result<u64> {
        if !self.is_infinite() {
            return Err(Error::NotInfinite);
        }
        let cv = self.smith.transform_row(&self.weights.canonical_c().lattice_coords());
        let mut order: i128 = 1;
        for (i, &d) in self.smith.diag.iter().enumerate() {
            let g = cv[i].gcd(&d);
            order = order.lcm(&(d / g));
        }
        Ok(order as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(ws: &[i64]) -> Arc<WeightSeq> {
        WeightSeq::new(ws).unwrap()
    }

    const TUBULAR: [&[i64]; 4] = [&[2, 2, 2, 2], &[3, 3, 3], &[4, 4, 2], &[6, 3, 2]];

    #[test]
    fn normal_form_examples() {
        let p = w(&[2, 2, 2, 2]);
        let omega = p.normal_form(2, &[-1, -1, -1, -1]).unwrap();
        assert_eq!(omega.phi(), -2);
        assert_eq!(omega.coeffs(), &[1, 1, 1, 1]);
        assert!(p.normal_form(0, &[0; 4]).unwrap().is_zero());

        let q = w(&[6, 3, 2]);
        let x = q.normal_form(0, &[10, 4, 2]).unwrap();
        assert_eq!((x.phi(), x.coeffs().to_vec()), (3, vec![4, 1, 0]));
        assert_eq!(
            q.normal_form(0, &[1, 2]),
            Err(Error::ArityError { expected: 3, got: 2 })
        );
    }

    #[test]
    fn dualizing_normal_form() {
        for ws in TUBULAR.iter().chain([&[7i64, 3, 2][..], &[5, 4], &[2]].iter()) {
            let p = w(ws);
            let om = p.dualizing();
            assert_eq!(om.phi(), -2);
            let want: Vec<i64> = p.weights().iter().map(|&q| q - 1).collect();
            assert_eq!(om.coeffs(), want.as_slice());
        }
    }

    #[test]
    fn group_examples_632() {
        let p = w(&[6, 3, 2]);
        let x1 = p.x(1).unwrap();
        let x2 = p.x(2).unwrap();
        let om = p.dualizing();
        assert_eq!(&x1.smul(3) + &om.smul(2), &x1 + &x2);
        assert_eq!(om.pi_proj(1).unwrap(), 5);
        assert!(p.x(4).is_err());
        let terms: Vec<u64> = (0..6).map(|j| (&x1.smul(4) + &om.smul(j)).mult()).collect();
        assert_eq!(terms, vec![1, 0, 1, 1, 1, 0]);
    }

    #[test]
    fn tubular_types() {
        for ws in TUBULAR {
            let p = w(ws);
            let om = p.dualizing();
            assert_eq!(om.delta(), 0);
            assert_eq!(om.torsion_order(), Order::Finite(p.lcm() as u64));
            assert!(om.smul(p.lcm()).is_zero());
        }
        let mut found = Vec::new();
        fn rec(prefix: &mut Vec<i64>, max: i64, found: &mut Vec<Vec<i64>>) {
            if !prefix.is_empty() && WeightSeq::new(prefix).unwrap().is_tubular() {
                found.push(prefix.clone());
            }
            if prefix.len() == 5 {
                return;
            }
            for q in 2..=max {
                prefix.push(q);
                rec(prefix, q, found);
                prefix.pop();
            }
        }
        rec(&mut Vec::new(), 8, &mut found);
        found.sort();
        let mut want: Vec<Vec<i64>> = TUBULAR.iter().map(|s| s.to_vec()).collect();
        want.sort();
        assert_eq!(found, want);
    }

    #[test]
    fn non_tubular_degrees() {
        assert_eq!(w(&[2, 3, 7]).dualizing().delta(), 1);
        let p = w(&[2]);
        let om = p.dualizing();
        assert_eq!(om, &p.x(1).unwrap() - &p.canonical_c().smul(2));
        assert_eq!(om.delta(), -3);
        assert!(!p.is_tubular());
    }

    #[test]
    fn orders() {
        let p = w(&[6, 3, 2]);
        assert_eq!(p.canonical_c().torsion_order(), Order::Infinite);
        assert_eq!(p.zero().torsion_order(), Order::Finite(1));
        assert_eq!(p.canonical_c().delta(), p.lcm());
    }

    #[test]
    fn partial_order_examples() {
        let p = w(&[6, 3, 2]);
        let zero = p.zero();
        let om = p.dualizing();
        assert!(zero.leq(&p.x(1).unwrap()).unwrap());
        assert!(!om.leq(&zero).unwrap());
        assert!(!zero.leq(&om).unwrap());
        assert!(om.leq(&om).unwrap());
        let other = w(&[3, 3, 3]);
        assert_eq!(zero.leq(&other.zero()), Err(Error::GroupMismatch));
    }

    #[test]
    fn subgroup_examples() {
        let p = w(&[6, 3, 2]);
        let h = Subgroup::tubular_h(&p);
        assert_eq!(h.quotient_invariants(), vec![3]);
        for g in h.generators() {
            assert!(h.contains(g));
        }
        assert_eq!(h.intersect_with_c().unwrap(), 1);
        assert!(h.is_effective());

        let zc = Subgroup::new(&[p.canonical_c()]).unwrap();
        assert!(!zc.contains(&p.x(1).unwrap()));
        assert_eq!(zc.intersect_with_c().unwrap(), 1);
        assert!(!zc.is_effective());
        assert_eq!(zc.first_ineffective_index(), Some(1));
        assert_eq!(zc.index(), Some(36));

        let z3c = Subgroup::new(&[p.canonical_c().smul(3)]).unwrap();
        assert_eq!(z3c.intersect_with_c().unwrap(), 3);

        let fin = Subgroup::new(&[p.dualizing()]).unwrap();
        assert_eq!(fin.intersect_with_c(), Err(Error::NotInfinite));
        assert!(!fin.is_effective());

        assert!(Subgroup::full(&p).is_effective());
        assert_eq!(Subgroup::full(&p).quotient_invariants(), Vec::<i64>::new());
    }

    #[test]
    fn quotient_by_c_has_order_product_of_weights() {
        for ws in [&[2i64, 2, 2, 2][..], &[3, 3, 3], &[4, 4, 2], &[6, 3, 2], &[7, 3, 2], &[5, 4]] {
            let p = w(ws);
            let zc = Subgroup::new(&[p.canonical_c()]).unwrap();
            assert_eq!(zc.index(), Some(p.torsion_box_size()));
        }
    }

    #[test]
    fn subgroups_containing_omega_are_effective() {
        for ws in TUBULAR {
            let p = w(ws);
            for k in 1..4 {
                let h = Subgroup::new(&[p.canonical_c().smul(k), p.dualizing()]).unwrap();
                assert!(h.is_effective());
            }
        }
    }

    #[test]
    fn parse_elements() {
        let p = w(&[6, 3, 2]);
        let e = parse_elem(&p, "3*x1 + 2*w").unwrap();
        assert_eq!(e, &p.x(1).unwrap() + &p.x(2).unwrap());
        assert_eq!(parse_elem(&p, "c").unwrap(), p.canonical_c());
        assert_eq!(parse_elem(&p, "-2*c + x1").unwrap().phi(), -2);
        let shown = e.to_string();
        assert_eq!(parse_elem(&p, &shown).unwrap(), e);
        assert!(parse_elem(&p, "3*y").is_err());
    }

    fn arb_weights() -> impl Strategy<Value = Arc<WeightSeq>> {
        prop::collection::vec(2i64..7, 1..5).prop_map(|ws| WeightSeq::new(&ws).unwrap())
    }

    fn arb_elem(p: Arc<WeightSeq>) -> impl Strategy<Value = StringElem> {
        let t = p.len();
        (-6i64..6, prop::collection::vec(-12i64..12, t))
            .prop_map(move |(l, cs)| p.normal_form(l, &cs).unwrap())
    }

    fn arb_pair() -> impl Strategy<Value = (StringElem, StringElem)> {
        arb_weights().prop_flat_map(|p| (arb_elem(p.clone()), arb_elem(p)))
    }

    /// Brute force: is `z` a nonnegative integer combination of x_1..x_t?
    fn in_positive_cone(z: &StringElem) -> bool {
        let p = z.weights().clone();
        let d = z.delta();
        if d < 0 {
            return false;
        }
        // δ(x_i) ≥ 1, so at most d generators are used.
        fn search(p: &Arc<WeightSeq>, i: usize, rem: &StringElem, budget: i64) -> bool {
            if rem.is_zero() {
                return true;
            }
            if i > p.len() || budget < 0 {
                return false;
            }
            let xi = p.x(i).unwrap();
            let step = xi.delta();
            let mut cur = rem.clone();
            let mut b = budget;
            loop {
                if search(p, i + 1, &cur, b) {
                    return true;
                }
                b -= step;
                if b < 0 {
                    return false;
                }
                cur = &cur - &xi;
            }
        }
        search(&p, 1, z, d)
    }

    proptest! {
        #[test]
        fn normal_form_is_idempotent((a, _b) in arb_pair()) {
            let again = a.weights().normal_form(a.phi(), a.coeffs()).unwrap();
            prop_assert_eq!(again, a);
        }

        #[test]
        fn group_laws((a, b) in arb_pair(), n in -5i64..5) {
            prop_assert!((&a + &a.neg()).is_zero());
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a.smul(n) + &b.smul(n), (&a + &b).smul(n));
            prop_assert_eq!((&a + &b).delta(), a.delta() + b.delta());
        }

        #[test]
        fn shifting_by_c((a, _b) in arb_pair()) {
            let c = a.weights().canonical_c();
            let shifted = &a + &c;
            prop_assert_eq!(shifted.phi(), a.phi() + 1);
            if a.phi() >= -1 {
                prop_assert_eq!(shifted.mult(), a.mult() + 1);
            }
        }

        #[test]
        fn order_agrees_with_cone_search(ws in prop::collection::vec(2i64..5, 1..4), l in -2i64..3, seed in any::<u64>()) {
            let p = WeightSeq::new(&ws).unwrap();
            let mut cs = Vec::new();
            let mut s = seed;
            for &q in p.weights() {
                cs.push((s % q as u64) as i64);
                s /= 7;
            }
            let x = p.normal_form(l, &cs).unwrap();
            prop_assert_eq!(p.zero().leq(&x).unwrap(), in_positive_cone(&x));
        }

        #[test]
        fn membership_matches_enumeration(ws in prop::collection::vec(2i64..5, 1..4), a in -3i64..4, b in 0i64..4, idx in 0usize..3) {
            let p = WeightSeq::new(&ws).unwrap();
            let t = p.len();
            let g1 = p.canonical_c().smul(a.abs().max(1));
            let g2 = p.x(1 + idx % t).unwrap().smul(b);
            let h = Subgroup::new(&[g1.clone(), g2.clone()]).unwrap();
            // enumerate combinations in a box; every element of the box of
            // L with small φ that is reachable must be reported as a member
            let mut reachable = std::collections::HashSet::new();
            for i in -12i64..=12 {
                for j in -12i64..=12 {
                    reachable.insert(&g1.smul(i) + &g2.smul(j));
                }
            }
            for x in p.elements_in_band(-1, 1) {
                let member = h.contains(&x);
                prop_assert_eq!(member, reachable.contains(&x), "element {}", x);
            }
        }
    }
}
