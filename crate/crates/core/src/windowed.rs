//! Graded modules truncated to a finite window of degrees, the regrading
//! functors on them, and the equivariant and monad-module structures for a
//! finite group `N` of degree shifts.
//!
//! Degree conventions, for `G` written additively: `X(s)_g = X_{g+s}`, an
//! equivariant structure has `(α_n)_g: X_g → X_{g−n}`, and the monad is
//! `M(X)_g = ⊕_{n ∈ N} X_{g−n}`. Every law is asserted only where all the
//! degrees it touches lie in the window; the rest are counted as skipped.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::json;

use crate::actions::{action_to_gradation, column_space, Character};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::grading::{CyclicGrading, Deg, GradedAlgebra, GroupHom};
use crate::linalg::Matrix;
use crate::verification::Verification;

/// A finite set of degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    grading: CyclicGrading,
    degrees: BTreeSet<Deg>,
}

impl Window {
    pub fn new(grading: CyclicGrading, degrees: impl IntoIterator<Item = Deg>) -> Window {
        Window {
            grading,
            degrees: degrees.into_iter().map(|d| grading.deg(d.n, d.a)).collect(),
        }
    }

    /// All degrees with `lo ≤ n ≤ hi`; closed under the torsion subgroup.
    pub fn band(grading: CyclicGrading, lo: i64, hi: i64) -> Window {
        Window::new(grading, grading.band(lo, hi))
    }

    pub fn grading(&self) -> CyclicGrading {
        self.grading
    }

    pub fn degrees(&self) -> impl Iterator<Item = Deg> + '_ {
        self.degrees.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn contains(&self, d: Deg) -> bool {
        self.degrees.contains(&d)
    }

    pub fn is_closed_under(&self, shifts: &[Deg]) -> bool {
        self.degrees
            .iter()
            .all(|&d| shifts.iter().all(|&s| self.contains(self.grading.add(d, s))))
    }

    pub fn require_closed(&self, shifts: &[Deg]) -> Result<()> {
        if self.is_closed_under(shifts) {
            Ok(())
        } else {
            Err(Error::BadWindow(format!("window is not closed under {shifts:?}")))
        }
    }

    /// Degrees whose translates by every shift stay in the window.
    pub fn interior(&self, shifts: &[Deg]) -> Vec<Deg> {
        self.degrees
            .iter()
            .copied()
            .filter(|&d| shifts.iter().all(|&s| self.contains(self.grading.add(d, s))))
            .collect()
    }

    pub fn translate(&self, g: Deg) -> Window {
        Window::new(self.grading, self.degrees.iter().map(|&d| self.grading.add(d, g)))
    }

    /// Target degrees whose whole fiber under `hom` lies in the window,
    /// among the images of window degrees and of `extra`.
    pub fn pushforward_window(&self, hom: &GroupHom, extra: &[Deg]) -> Window {
        let mut cands: BTreeSet<Deg> = self.degrees.iter().map(|&d| hom.apply(d)).collect();
        cands.extend(extra.iter().copied());
        Window::new(
            hom.target(),
            cands
                .into_iter()
                .filter(|&h| hom.fiber(h).into_iter().all(|g| self.contains(g))),
        )
    }
}

/// A degree-preserving family of linear maps `f_g`.
pub type GradedMap = BTreeMap<Deg, Matrix>;

/// A graded module over an algebra with homogeneous generators of the given
/// degrees, known on a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WModule {
    field: Field,
    gen_degrees: Vec<Deg>,
    window: Window,
    dims: BTreeMap<Deg, usize>,
    /// `(k, g)`: generator `k` acting `X_g → X_{g + deg_k}`, present when
    /// both degrees lie in the window.
    actions: BTreeMap<(usize, Deg), Matrix>,
}

impl WModule {
    pub fn from_parts(
        field: Field,
        gen_degrees: Vec<Deg>,
        window: Window,
        dims: BTreeMap<Deg, usize>,
        actions: BTreeMap<(usize, Deg), Matrix>,
    ) -> Result<WModule> {
        let g = window.grading();
        for d in window.degrees() {
            if !dims.contains_key(&d) {
                return Err(Error::BadWindow(format!("missing component at {d}")));
            }
        }
        for (k, dk) in gen_degrees.iter().enumerate() {
            for d in window.degrees() {
                let t = g.add(d, *dk);
                if !window.contains(t) {
                    continue;
                }
                let m = actions
                    .get(&(k, d))
                    .ok_or_else(|| Error::BadWindow(format!("missing action of generator {k} at {d}")))?;
                if m.rows() != dims[&t] || m.cols() != dims[&d] {
                    return Err(Error::BadWindow(format!("action of generator {k} at {d} has wrong shape")));
                }
            }
        }
        Ok(WModule {
            field,
            gen_degrees,
            window,
            dims,
            actions,
        })
    }

    /// The free module `A(s)`, with `A(s)_g = A_{g+s}`.
    pub fn free<A: GradedAlgebra + ?Sized>(alg: &A, shift: Deg, window: &Window) -> WModule {
        let g = alg.grading();
        let gens = alg.generator_degrees();
        let dims = window.degrees().map(|d| (d, alg.dim(g.add(d, shift)))).collect();
        let mut actions = BTreeMap::new();
        for (k, dk) in gens.iter().enumerate() {
            for d in window.degrees() {
                if window.contains(g.add(d, *dk)) {
                    actions.insert((k, d), alg.generator_action(k, g.add(d, shift)));
                }
            }
        }
        WModule {
            field: alg.field(),
            gen_degrees: gens,
            window: window.clone(),
            dims,
            actions,
        }
    }

    pub fn zero(field: Field, gen_degrees: Vec<Deg>, window: &Window) -> WModule {
        let g = window.grading();
        let dims = window.degrees().map(|d| (d, 0)).collect();
        let mut actions = BTreeMap::new();
        for (k, dk) in gen_degrees.iter().enumerate() {
            for d in window.degrees() {
                if window.contains(g.add(d, *dk)) {
                    actions.insert((k, d), Matrix::zeros(field, 0, 0));
                }
            }
        }
        WModule {
            field,
            gen_degrees,
            window: window.clone(),
            dims,
            actions,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn grading(&self) -> CyclicGrading {
        self.window.grading()
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn generator_degrees(&self) -> &[Deg] {
        &self.gen_degrees
    }

    pub fn dim(&self, d: Deg) -> Option<usize> {
        self.dims.get(&d).copied()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn action(&self, k: usize, d: Deg) -> Option<&Matrix> {
        self.actions.get(&(k, d))
    }

    /// `X(s)`, with `X(s)_g = X_{g+s}`.
    pub fn shift(&self, s: Deg) -> WModule {
        let g = self.grading();
        let window = self.window.translate(g.neg(s));
        let dims = window.degrees().map(|d| (d, self.dims[&g.add(d, s)])).collect();
        let actions = self
            .actions
            .iter()
            .map(|(&(k, d), m)| ((k, g.sub(d, s)), m.clone()))
            .collect();
        WModule {
            field: self.field,
            gen_degrees: self.gen_degrees.clone(),
            window,
            dims,
            actions,
        }
    }

    /// `⊕ X_i` on a common window; summands are stacked in order.
    pub fn direct_sum(parts: &[WModule]) -> Result<WModule> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidParameters("empty direct sum".into()))?;
        if parts.iter().any(|p| p.window != first.window || p.gen_degrees != first.gen_degrees) {
            return Err(Error::BadWindow("summands live on different windows".into()));
        }
        let dims: BTreeMap<Deg, usize> = first
            .window
            .degrees()
            .map(|d| (d, parts.iter().map(|p| p.dims[&d]).sum()))
            .collect();
        let mut actions = BTreeMap::new();
        for &(k, d) in first.actions.keys() {
            let blocks: Vec<&Matrix> = parts.iter().map(|p| &p.actions[&(k, d)]).collect();
            actions.insert((k, d), block_diagonal(first.field, &blocks));
        }
        Ok(WModule {
            field: first.field,
            gen_degrees: first.gen_degrees.clone(),
            window: first.window.clone(),
            dims,
            actions,
        })
    }

    /// `π_*(X)_h = ⊕_{g ∈ π^{-1}(h)} X_g` on `target`, in fiber order.
    pub fn pushforward(&self, hom: &GroupHom, target: &Window) -> Result<WModule> {
        if hom.source() != self.grading() || hom.target() != target.grading() {
            return Err(Error::InvalidParameters("homomorphism does not match the gradings".into()));
        }
        for h in target.degrees() {
            if let Some(g) = hom.fiber(h).into_iter().find(|&g| !self.window.contains(g)) {
                return Err(Error::BadWindow(format!("fiber over {h} leaves the window at {g}")));
            }
        }
        let src = self.grading();
        let gen_degrees: Vec<Deg> = self.gen_degrees.iter().map(|&d| hom.apply(d)).collect();
        let dims = target
            .degrees()
            .map(|h| (h, hom.fiber(h).iter().map(|g| self.dims[g]).sum()))
            .collect::<BTreeMap<_, _>>();
        let mut actions = BTreeMap::new();
        for (k, &dk) in self.gen_degrees.iter().enumerate() {
            for h in target.degrees() {
                let t = hom.target().add(h, gen_degrees[k]);
                if !target.contains(t) {
                    continue;
                }
                let src_fiber = hom.fiber(h);
                let dst_fiber = hom.fiber(t);
                let mut m = Matrix::zeros(self.field, dims[&t], dims[&h]);
                let mut c0 = 0;
                for &g in &src_fiber {
                    let y = src.add(g, dk);
                    let i = dst_fiber.iter().position(|&z| z == y).expect("fibers are translates");
                    let r0: usize = dst_fiber[..i].iter().map(|z| self.dims[z]).sum();
                    let a = self
                        .actions
                        .get(&(k, g))
                        .ok_or_else(|| Error::BadWindow(format!("action at {g} is not known")))?;
                    m.place(r0, c0, a);
                    c0 += self.dims[&g];
                }
                actions.insert((k, h), m);
            }
        }
        Ok(WModule {
            field: self.field,
            gen_degrees,
            window: target.clone(),
            dims,
            actions,
        })
    }

    /// `π^*(Y)_g = Y_{π(g)}` on `window`, as a module over an algebra whose
    /// generators have the degrees `src_gen_degrees` with `π(src_k) = deg_k`.
    pub fn pullback(&self, hom: &GroupHom, src_gen_degrees: &[Deg], window: &Window) -> Result<WModule> {
        if hom.target() != self.grading() || hom.source() != window.grading() {
            return Err(Error::InvalidParameters("homomorphism does not match the gradings".into()));
        }
        if src_gen_degrees.len() != self.gen_degrees.len()
            || src_gen_degrees.iter().zip(&self.gen_degrees).any(|(&s, &t)| hom.apply(s) != t)
        {
            return Err(Error::InvalidParameters("generator degrees do not map to the module's".into()));
        }
        if let Some(g) = window.degrees().find(|&g| !self.window.contains(hom.apply(g))) {
            return Err(Error::BadWindow(format!("{g} maps outside the window")));
        }
        let grading = window.grading();
        let dims = window.degrees().map(|g| (g, self.dims[&hom.apply(g)])).collect();
        let mut actions = BTreeMap::new();
        for (k, &dk) in src_gen_degrees.iter().enumerate() {
            for g in window.degrees() {
                if window.contains(grading.add(g, dk)) {
                    let a = self
                        .actions
                        .get(&(k, hom.apply(g)))
                        .ok_or_else(|| Error::BadWindow(format!("action at {} is not known", hom.apply(g))))?;
                    actions.insert((k, g), a.clone());
                }
            }
        }
        Ok(WModule {
            field: self.field,
            gen_degrees: src_gen_degrees.to_vec(),
            window: window.clone(),
            dims,
            actions,
        })
    }

    /// Generator actions commute wherever both composites are defined.
    pub fn check_commutation(&self) -> Verification {
        let g = self.grading();
        let mut v = Verification::new();
        let n = self.gen_degrees.len();
        for d in self.window.degrees() {
            for k in 0..n {
                for l in (k + 1)..n {
                    let dk = g.add(d, self.gen_degrees[k]);
                    let dl = g.add(d, self.gen_degrees[l]);
                    let paths = (
                        self.actions.get(&(k, d)).zip(self.actions.get(&(l, dk))),
                        self.actions.get(&(l, d)).zip(self.actions.get(&(k, dl))),
                    );
                    match paths {
                        (Some((a, b)), Some((c, e))) => {
                            let lhs = b.mul(a).expect("shapes match");
                            let rhs = e.mul(c).expect("shapes match");
                            v.record(lhs == rhs, || json!({ "degree": d, "generators": [k, l] }));
                        }
                        _ => v.skip(1),
                    }
                }
            }
        }
        v
    }
}

fn block_diagonal(field: Field, blocks: &[&Matrix]) -> Matrix {
    let rows = blocks.iter().map(|b| b.rows()).sum();
    let cols = blocks.iter().map(|b| b.cols()).sum();
    let mut m = Matrix::zeros(field, rows, cols);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        m.place(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    m
}

fn instances(m: &Matrix) -> u64 {
    m.cols() as u64
}

/// Records `lhs == rhs` as one instance per source basis vector.
fn record_equal(v: &mut Verification, lhs: &Matrix, rhs: &Matrix, witness: impl FnOnce() -> serde_json::Value) {
    let n = instances(lhs).max(1);
    let ok = lhs == rhs;
    v.record(ok, witness);
    v.checked += n - 1;
}

/// `f_{g + deg_k} ∘ act^X_{k,g} = act^Y_{k,g} ∘ f_g` wherever defined.
pub fn check_module_map(x: &WModule, y: &WModule, f: &GradedMap) -> Verification {
    let g = x.grading();
    let mut v = Verification::new();
    for (&(k, d), ax) in &x.actions {
        let t = g.add(d, x.gen_degrees[k]);
        match (f.get(&d), f.get(&t), y.actions.get(&(k, d))) {
            (Some(fd), Some(ft), Some(ay)) => {
                let lhs = ft.mul(ax).expect("shapes match");
                let rhs = ay.mul(fd).expect("shapes match");
                record_equal(&mut v, &lhs, &rhs, || json!({ "law": "linear", "degree": d, "generator": k }));
            }
            _ => v.skip(1),
        }
    }
    v
}

/// A finite group of degree shifts: `N ⊆ G`, listed with `0` first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftGroup {
    grading: CyclicGrading,
    elements: Vec<Deg>,
}

impl ShiftGroup {
    /// The torsion subgroup `{0} × Z/m`.
    pub fn torsion(grading: CyclicGrading) -> ShiftGroup {
        ShiftGroup {
            grading,
            elements: grading.torsion(),
        }
    }

    /// The kernel of a homomorphism.
    pub fn kernel(hom: &GroupHom) -> ShiftGroup {
        ShiftGroup {
            grading: hom.source(),
            elements: hom.kernel(),
        }
    }

    pub fn trivial(grading: CyclicGrading) -> ShiftGroup {
        ShiftGroup {
            grading,
            elements: vec![grading.zero()],
        }
    }

    pub fn elements(&self) -> &[Deg] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn grading(&self) -> CyclicGrading {
        self.grading
    }

    fn index(&self, n: Deg) -> usize {
        self.elements.iter().position(|&m| m == n).expect("closed under addition")
    }
}

/// The monad `M(X) = ⊕_{n ∈ N} X(−n)` of the degree-shift action.
#[derive(Debug, Clone)]
pub struct MonadData {
    group: ShiftGroup,
}

/// Block dimensions of `M(X)_g`, one per element of `N`.
fn monad_blocks(x: &WModule, group: &ShiftGroup, g: Deg) -> Option<Vec<usize>> {
    let gr = x.grading();
    group.elements.iter().map(|&n| x.dim(gr.sub(g, n))).collect()
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for d in dims {
        out.push(acc);
        acc += d;
    }
    out
}

pub fn monad_from_action(group: &ShiftGroup, window: &Window) -> Result<MonadData> {
    window.require_closed(group.elements())?;
    Ok(MonadData { group: group.clone() })
}

impl MonadData {
    pub fn group(&self) -> &ShiftGroup {
        &self.group
    }

    /// `M(X)` on the degrees where every summand is known.
    pub fn apply(&self, x: &WModule) -> WModule {
        let gr = x.grading();
        let window = Window::new(gr, x.window.interior(&self.neg_elements()));
        let dims = window
            .degrees()
            .map(|g| (g, monad_blocks(x, &self.group, g).expect("interior").iter().sum()))
            .collect();
        let mut actions = BTreeMap::new();
        for (k, &dk) in x.gen_degrees.iter().enumerate() {
            for g in window.degrees() {
                if !window.contains(gr.add(g, dk)) {
                    continue;
                }
                let blocks: Option<Vec<&Matrix>> = self
                    .group
                    .elements
                    .iter()
                    .map(|&n| x.actions.get(&(k, gr.sub(g, n))))
                    .collect();
                if let Some(b) = blocks {
                    actions.insert((k, g), block_diagonal(x.field, &b));
                }
            }
        }
        WModule {
            field: x.field,
            gen_degrees: x.gen_degrees.clone(),
            window,
            dims,
            actions,
        }
    }

    fn neg_elements(&self) -> Vec<Deg> {
        self.group.elements.iter().map(|&n| self.group.grading.neg(n)).collect()
    }

    /// `M(f)_g = ⊕_n f_{g−n}`.
    pub fn apply_map(&self, f: &GradedMap, g: Deg) -> Option<Matrix> {
        let gr = self.group.grading;
        let blocks: Option<Vec<&Matrix>> = self.group.elements.iter().map(|&n| f.get(&gr.sub(g, n))).collect();
        blocks.map(|b| {
            let field = b.first().map(|m| m.field()).unwrap_or(Field::Rational);
            block_diagonal(field, &b)
        })
    }

    /// `η_X`: inclusion of the summand `n = 0`.
    pub fn unit(&self, x: &WModule, g: Deg) -> Option<Matrix> {
        let blocks = monad_blocks(x, &self.group, g)?;
        let mut m = Matrix::zeros(x.field, blocks.iter().sum(), blocks[0]);
        m.place(0, 0, &Matrix::identity(x.field, blocks[0]));
        Some(m)
    }

    /// `μ_X: M(M(X))_g → M(X)_g`, sending the summand `(h, n)` identically
    /// onto the summand `h + n`.
    pub fn multiplication(&self, x: &WModule, g: Deg) -> Option<Matrix> {
        let gr = self.group.grading;
        let outer = monad_blocks(x, &self.group, g)?;
        let outer_off = offsets(&outer);
        let mut col = 0;
        let mut m_cols = Vec::new();
        for &h in &self.group.elements {
            let inner = monad_blocks(x, &self.group, gr.sub(g, h))?;
            for (j, &n) in self.group.elements.iter().enumerate() {
                let target = self.group.index(gr.add(h, n));
                m_cols.push((col, outer_off[target], inner[j]));
                col += inner[j];
            }
        }
        let mut m = Matrix::zeros(x.field, outer.iter().sum(), col);
        for (c0, r0, d) in m_cols {
            m.place(r0, c0, &Matrix::identity(x.field, d));
        }
        Some(m)
    }

    fn unit_map(&self, x: &WModule) -> GradedMap {
        x.window.degrees().filter_map(|g| self.unit(x, g).map(|m| (g, m))).collect()
    }

    fn multiplication_map(&self, x: &WModule) -> GradedMap {
        x.window
            .degrees()
            .filter_map(|g| self.multiplication(x, g).map(|m| (g, m)))
            .collect()
    }

    /// Associativity, both unit laws, and linearity of `η` and `μ`.
    pub fn check_laws(&self, x: &WModule) -> BTreeMap<&'static str, Verification> {
        let mx = self.apply(x);
        let mmx = self.apply(&mx);
        let mu = self.multiplication_map(x);
        let mu_m = self.multiplication_map(&mx);
        let eta = self.unit_map(x);
        let eta_m = self.unit_map(&mx);
        let mut assoc = Verification::new();
        let mut left_unit = Verification::new();
        let mut right_unit = Verification::new();
        for g in x.window.degrees() {
            let (Some(mu_g), Some(mu_m_g)) = (mu.get(&g), mu_m.get(&g)) else {
                assoc.skip(1);
                left_unit.skip(1);
                right_unit.skip(1);
                continue;
            };
            match self.apply_map(&mu, g) {
                Some(m_mu) => {
                    let lhs = mu_g.mul(&m_mu).expect("shapes match");
                    let rhs = mu_g.mul(mu_m_g).expect("shapes match");
                    record_equal(&mut assoc, &lhs, &rhs, || json!({ "degree": g }));
                }
                None => assoc.skip(1),
            }
            match self.apply_map(&eta, g) {
                Some(m_eta) => {
                    let lhs = mu_g.mul(&m_eta).expect("shapes match");
                    let ok = lhs.is_identity();
                    record_equal(&mut left_unit, &lhs, &Matrix::identity(x.field, lhs.rows()), || {
                        json!({ "degree": g, "identity": ok })
                    });
                }
                None => left_unit.skip(1),
            }
            match eta_m.get(&g) {
                Some(e) => {
                    let lhs = mu_g.mul(e).expect("shapes match");
                    record_equal(&mut right_unit, &lhs, &Matrix::identity(x.field, lhs.rows()), || {
                        json!({ "degree": g })
                    });
                }
                None => right_unit.skip(1),
            }
        }
        let mut linear = check_module_map(x, &mx, &eta);
        linear.absorb("mu", check_module_map(&mmx, &mx, &mu));
        BTreeMap::from([
            ("associativity", assoc),
            ("left_unit", left_unit),
            ("right_unit", right_unit),
            ("linearity", linear),
        ])
    }
}

/// `η_X: X_g → (π^*π_*X)_g = ⊕_{g' ∈ π^{-1}(π g)} X_{g'}`, the inclusion of
/// the summand at `g`.
pub fn adjunction_unit(x: &WModule, hom: &GroupHom, g: Deg) -> Option<Matrix> {
    let fiber = hom.fiber(hom.apply(g));
    let dims: Option<Vec<usize>> = fiber.iter().map(|&f| x.dim(f)).collect();
    let dims = dims?;
    let i = fiber.iter().position(|&f| f == g)?;
    let off = offsets(&dims);
    let mut m = Matrix::zeros(x.field, dims.iter().sum(), dims[i]);
    m.place(off[i], 0, &Matrix::identity(x.field, dims[i]));
    Some(m)
}

/// `ε_Y: (π_*π^*Y)_h = ⊕_{g ∈ π^{-1}(h)} Y_h → Y_h`, the sum of the
/// summands; zero when the fiber is empty.
pub fn adjunction_counit(y: &WModule, hom: &GroupHom, h: Deg) -> Option<Matrix> {
    let d = y.dim(h)?;
    let copies = hom.fiber(h).len();
    let mut m = Matrix::zeros(y.field, d, d * copies);
    for i in 0..copies {
        m.place(0, i * d, &Matrix::identity(y.field, d));
    }
    Some(m)
}

/// Triangle identities `ε_{π_*X} ∘ π_*(η_X) = id` and
/// `π^*(ε_Y) ∘ η_{π^*Y} = id`, plus linearity of `η` and `ε`, for the
/// `G`-module `x` and the target-graded module `y`.
pub fn check_triangle_identities(
    x: &WModule,
    y: &WModule,
    hom: &GroupHom,
    target: &Window,
) -> Result<BTreeMap<&'static str, Verification>> {
    let push = x.pushforward(hom, target)?;
    let mut first = Verification::new();
    for h in target.degrees() {
        let fiber = hom.fiber(h);
        let blocks: Option<Vec<Matrix>> = fiber.iter().map(|&g| adjunction_unit(x, hom, g)).collect();
        let (Some(blocks), Some(eps)) = (blocks, adjunction_counit(&push, hom, h)) else {
            first.skip(1);
            continue;
        };
        let refs: Vec<&Matrix> = blocks.iter().collect();
        let push_eta = block_diagonal(x.field, &refs);
        let lhs = eps.mul(&push_eta)?;
        record_equal(&mut first, &lhs, &Matrix::identity(x.field, lhs.rows()), || json!({ "degree": h }));
    }

    let src_window = Window::new(
        hom.source(),
        x.window.degrees().filter(|&g| y.window.contains(hom.apply(g))),
    );
    let pulled = y.pullback(hom, &x.gen_degrees, &src_window)?;
    let mut second = Verification::new();
    for g in src_window.degrees() {
        let (Some(eta), Some(eps)) = (adjunction_unit(&pulled, hom, g), adjunction_counit(y, hom, hom.apply(g)))
        else {
            second.skip(1);
            continue;
        };
        let lhs = eps.mul(&eta)?;
        record_equal(&mut second, &lhs, &Matrix::identity(x.field, lhs.rows()), || json!({ "degree": g }));
    }

    // π^*π_*X on the degrees whose fiber is known, and η into it
    let pp_window = Window::new(hom.source(), x.window.degrees().filter(|&g| target.contains(hom.apply(g))));
    let pp = push.pullback(hom, &x.gen_degrees, &pp_window)?;
    let x_restricted = restrict(x, &pp_window);
    let eta: GradedMap = pp_window
        .degrees()
        .filter_map(|g| adjunction_unit(x, hom, g).map(|m| (g, m)))
        .collect();
    let mut linear = check_module_map(&x_restricted, &pp, &eta);
    let pp_y = pulled.pushforward(hom, &Window::new(hom.target(), target.degrees().filter(|&h| y.window.contains(h) && hom.fiber(h).iter().all(|&g| src_window.contains(g)))))?;
    let eps: GradedMap = pp_y
        .window
        .degrees()
        .filter_map(|h| adjunction_counit(y, hom, h).map(|m| (h, m)))
        .collect();
    linear.absorb("counit", check_module_map(&pp_y, &restrict(y, &pp_y.window), &eps));
    Ok(BTreeMap::from([("counit_after_unit", first), ("unit_then_counit", second), ("linearity", linear)]))
}

/// The module restricted to a sub-window.
pub fn restrict(x: &WModule, window: &Window) -> WModule {
    let g = x.grading();
    let dims = window.degrees().map(|d| (d, x.dims[&d])).collect();
    let actions = x
        .actions
        .iter()
        .filter(|(&(k, d), _)| window.contains(d) && window.contains(g.add(d, x.gen_degrees[k])))
        .map(|(k, m)| (*k, m.clone()))
        .collect();
    WModule {
        field: x.field,
        gen_degrees: x.gen_degrees.clone(),
        window: window.clone(),
        dims,
        actions,
    }
}

/// Compares `M(X)` with `π^*π_*(X)` for a projection with kernel `N`: the
/// summand `n` of `M(X)_g` is matched with the fiber element `g − n`, and
/// the actions, units and multiplications must agree under this matching.
pub fn compare_monad_with_adjunction(x: &WModule, hom: &GroupHom) -> Result<Verification> {
    let group = ShiftGroup::kernel(hom);
    let monad = monad_from_action(&group, &x.window)?;
    let gr = x.grading();
    let target = x.window.pushforward_window(hom, &[]);
    let push = x.pushforward(hom, &target)?;
    let pp = push.pullback(hom, &x.gen_degrees, &x.window)?;
    let mx = monad.apply(x);
    let mut v = Verification::new();

    // P_g: M(X)_g → (π^*π_*X)_g
    let perm = |g: Deg| -> Option<Matrix> {
        let blocks = monad_blocks(x, &group, g)?;
        let fiber = hom.fiber(hom.apply(g));
        let fdims: Vec<usize> = fiber.iter().map(|&f| x.dim(f)).collect::<Option<_>>()?;
        let foff = offsets(&fdims);
        let boff = offsets(&blocks);
        let mut m = Matrix::zeros(x.field, fdims.iter().sum(), blocks.iter().sum());
        for (j, &n) in group.elements.iter().enumerate() {
            let i = fiber.iter().position(|&f| f == gr.sub(g, n))?;
            m.place(foff[i], boff[j], &Matrix::identity(x.field, blocks[j]));
        }
        Some(m)
    };

    for g in x.window.degrees() {
        let (Some(p), Some(dp)) = (perm(g), pp.dim(g)) else {
            v.skip(1);
            continue;
        };
        v.record(p.rows() == dp && p.inverse().is_some(), || json!({ "law": "dimension", "degree": g }));
        for k in 0..x.gen_degrees.len() {
            let t = gr.add(g, x.gen_degrees[k]);
            match (mx.action(k, g), pp.action(k, g), perm(t)) {
                (Some(am), Some(ap), Some(pt)) => {
                    let lhs = pt.mul(am)?;
                    let rhs = ap.mul(&p)?;
                    record_equal(&mut v, &lhs, &rhs, || json!({ "law": "action", "degree": g, "generator": k }));
                }
                _ => v.skip(1),
            }
        }
        if let (Some(em), Some(ea)) = (monad.unit(x, g), adjunction_unit(x, hom, g)) {
            let lhs = p.mul(&em)?;
            record_equal(&mut v, &lhs, &ea, || json!({ "law": "unit", "degree": g }));
        }
        // multiplication of π^*π_*: π^*(ε_{π_*X}) at g, against μ of M
        // transported along P on both sides
        if let (Some(mm), Some(eps)) = (monad.multiplication(x, g), adjunction_counit(&push, hom, hom.apply(g))) {
            // M(M(X))_g → (π^*π_*)²(X)_g: summand (h, n) goes to the copy
            // indexed by g − h, position g − h − n inside it
            let fiber = hom.fiber(hom.apply(g));
            let fdims: Vec<usize> = fiber.iter().map(|&f| x.dim(f).unwrap_or(0)).collect();
            let fsum: usize = fdims.iter().sum();
            let foff = offsets(&fdims);
            let mut q = Matrix::zeros(x.field, fsum * fiber.len(), mm.cols());
            let mut col = 0;
            for &h in &group.elements {
                let copy = fiber.iter().position(|&f| f == gr.sub(g, h)).expect("fiber is a coset");
                for &n in &group.elements {
                    let pos = fiber.iter().position(|&f| f == gr.sub(gr.sub(g, h), n)).expect("fiber is a coset");
                    m_place_identity(&mut q, copy * fsum + foff[pos], col, fdims[pos]);
                    col += fdims[pos];
                }
            }
            let lhs = p.mul(&mm)?;
            let rhs = eps.mul(&q)?;
            record_equal(&mut v, &lhs, &rhs, || json!({ "law": "multiplication", "degree": g }));
        }
    }
    Ok(v)
}

fn m_place_identity(m: &mut Matrix, r0: usize, c0: usize, d: usize) {
    let field = m.field();
    m.place(r0, c0, &Matrix::identity(field, d));
}

/// A module with isomorphisms `α_n: X → X(−n)` for the shift group `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantWModule {
    module: WModule,
    group: ShiftGroup,
    /// `(n, g)`: `(α_n)_g: X_g → X_{g−n}`.
    alpha: BTreeMap<(Deg, Deg), Matrix>,
}

impl EquivariantWModule {
    pub fn new(module: WModule, group: ShiftGroup, alpha: BTreeMap<(Deg, Deg), Matrix>) -> Result<Self> {
        module.window.require_closed(group.elements())?;
        let gr = module.grading();
        for &n in group.elements() {
            for g in module.window.degrees() {
                let m = alpha
                    .get(&(n, g))
                    .ok_or_else(|| Error::NotEquivariant(format!("missing α at ({n}, {g})")))?;
                if m.cols() != module.dims[&g] || m.rows() != module.dims[&gr.sub(g, n)] {
                    return Err(Error::NotEquivariant(format!("α at ({n}, {g}) has wrong shape")));
                }
            }
        }
        Ok(EquivariantWModule { module, group, alpha })
    }

    pub fn module(&self) -> &WModule {
        &self.module
    }

    pub fn group(&self) -> &ShiftGroup {
        &self.group
    }

    pub fn alpha(&self, n: Deg, g: Deg) -> &Matrix {
        &self.alpha[&(n, g)]
    }

    /// `α_0 = id`, `(α_{n+n'})_g = (α_{n'})_{g−n} ∘ (α_n)_g`, each `α_n`
    /// invertible and linear.
    pub fn check(&self) -> Verification {
        let gr = self.module.grading();
        let mut v = Verification::new();
        for g in self.module.window.degrees() {
            let id = &self.alpha[&(gr.zero(), g)];
            v.record(id.is_identity(), || json!({ "law": "identity", "degree": g }));
            for &n in self.group.elements() {
                let a = &self.alpha[&(n, g)];
                v.record(a.inverse().is_some(), || json!({ "law": "invertible", "n": n, "degree": g }));
                for &n2 in self.group.elements() {
                    let lhs = &self.alpha[&(gr.add(n, n2), g)];
                    let rhs = self.alpha[&(n2, gr.sub(g, n))].mul(a).expect("shapes match");
                    record_equal(&mut v, lhs, &rhs, || json!({ "law": "cocycle", "n": n, "n2": n2, "degree": g }));
                }
            }
        }
        for &n in self.group.elements() {
            let shifted = self.module.shift(gr.neg(n));
            let f: GradedMap = self
                .module
                .window
                .degrees()
                .map(|g| (g, self.alpha[&(n, g)].clone()))
                .collect();
            v.absorb("linear", check_module_map(&self.module, &restrict(&shifted, &self.module.window), &f));
        }
        v
    }

    /// `λ_g = ((λ_n)_g)_n` with `(λ_n)_g = ((α_n)_g)^{-1}: X_{g−n} → X_g`.
    pub fn to_monad_module(&self) -> Result<MonadModule> {
        let gr = self.module.grading();
        let mut lambda = BTreeMap::new();
        for g in self.module.window.degrees() {
            let mut blocks = Vec::new();
            for &n in self.group.elements() {
                let inv = self.alpha[&(n, g)]
                    .inverse()
                    .ok_or_else(|| Error::NotEquivariant(format!("α is singular at ({n}, {g})")))?;
                debug_assert_eq!(inv.cols(), self.module.dims[&gr.sub(g, n)]);
                blocks.push(inv);
            }
            lambda.insert(g, hstack(self.module.field, self.module.dims[&g], &blocks));
        }
        Ok(MonadModule {
            module: self.module.clone(),
            monad: MonadData { group: self.group.clone() },
            lambda,
        })
    }

    /// `x.u_n = ((α_n)_{g+n})^{-1}(x)` for `x ∈ X_g`.
    pub fn to_group_ring_module(&self) -> Result<GroupRingModule> {
        let gr = self.module.grading();
        let mut u = BTreeMap::new();
        for &n in self.group.elements() {
            for g in self.module.window.degrees() {
                let src = gr.add(g, n);
                let inv = self.alpha[&(n, src)]
                    .inverse()
                    .ok_or_else(|| Error::NotEquivariant(format!("α is singular at ({n}, {src})")))?;
                u.insert((n, g), inv);
            }
        }
        Ok(GroupRingModule {
            module: self.module.clone(),
            group: self.group.clone(),
            u,
        })
    }
}

fn hstack(field: Field, rows: usize, blocks: &[Matrix]) -> Matrix {
    let cols = blocks.iter().map(Matrix::cols).sum();
    let mut m = Matrix::zeros(field, rows, cols);
    let mut c = 0;
    for b in blocks {
        m.place(0, c, b);
        c += b.cols();
    }
    m
}

/// A module over the monad `M`: `λ: M(X) → X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonadModule {
    module: WModule,
    monad: MonadData,
    lambda: BTreeMap<Deg, Matrix>,
}

impl PartialEq for MonadData {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
    }
}

impl Eq for MonadData {}

impl MonadModule {
    pub fn lambda(&self, g: Deg) -> &Matrix {
        &self.lambda[&g]
    }

    /// `λ ∘ η = id`, `λ ∘ μ = λ ∘ M(λ)`, and linearity of `λ`.
    pub fn check(&self) -> Verification {
        let x = &self.module;
        let mut v = Verification::new();
        for g in x.window.degrees() {
            let l = &self.lambda[&g];
            if let Some(eta) = self.monad.unit(x, g) {
                let lhs = l.mul(&eta).expect("shapes match");
                record_equal(&mut v, &lhs, &Matrix::identity(x.field, lhs.rows()), || {
                    json!({ "law": "unit", "degree": g })
                });
            }
            match (self.monad.multiplication(x, g), self.monad.apply_map(&self.lambda, g)) {
                (Some(mu), Some(ml)) => {
                    let lhs = l.mul(&mu).expect("shapes match");
                    let rhs = l.mul(&ml).expect("shapes match");
                    record_equal(&mut v, &lhs, &rhs, || json!({ "law": "associative", "degree": g }));
                }
                _ => v.skip(1),
            }
        }
        let mx = self.monad.apply(x);
        v.absorb("linear", check_module_map(&mx, x, &self.lambda));
        v
    }

    /// `(α_n)_g = ((λ_n)_g)^{-1}`.
    pub fn to_equivariant(&self) -> Result<EquivariantWModule> {
        let x = &self.module;
        let gr = x.grading();
        let mut alpha = BTreeMap::new();
        for g in x.window.degrees() {
            let blocks = monad_blocks(x, &self.monad.group, g).expect("window is closed");
            let off = offsets(&blocks);
            for (j, &n) in self.monad.group.elements().iter().enumerate() {
                let block = self.lambda[&g].sub_block(0, off[j], x.dims[&g], blocks[j]);
                let inv = block
                    .inverse()
                    .ok_or_else(|| Error::NotEquivariant(format!("λ is singular at ({n}, {g})")))?;
                debug_assert_eq!(inv.rows(), x.dims[&gr.sub(g, n)]);
                alpha.insert((n, g), inv);
            }
        }
        EquivariantWModule::new(x.clone(), self.monad.group.clone(), alpha)
    }
}

/// A graded module over `R^gr[N]`: the `R`-module plus `u_n: X_g → X_{g+n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingModule {
    module: WModule,
    group: ShiftGroup,
    u: BTreeMap<(Deg, Deg), Matrix>,
}

impl GroupRingModule {
    pub fn u(&self, n: Deg, g: Deg) -> &Matrix {
        &self.u[&(n, g)]
    }

    /// `u_0 = id`, `(x.u_n).u_{n'} = x.(u_n u_{n'})`, and `(x.r).u_n = (x.u_n).r`.
    pub fn check(&self) -> Verification {
        let gr = self.module.grading();
        let x = &self.module;
        let mut v = Verification::new();
        for g in x.window.degrees() {
            let u0 = &self.u[&(gr.zero(), g)];
            v.record(u0.is_identity(), || json!({ "law": "unit", "degree": g }));
            for &n in self.group.elements() {
                for &n2 in self.group.elements() {
                    let lhs = self.u[&(n2, gr.add(g, n))].mul(&self.u[&(n, g)]).expect("shapes match");
                    let rhs = &self.u[&(gr.add(n, n2), g)];
                    record_equal(&mut v, &lhs, rhs, || json!({ "law": "associative", "n": n, "n2": n2, "degree": g }));
                }
                for (k, &dk) in x.gen_degrees.iter().enumerate() {
                    let t = gr.add(g, dk);
                    match (x.action(k, g), x.action(k, gr.add(g, n))) {
                        (Some(a), Some(b)) => {
                            let lhs = self.u[&(n, t)].mul(a).expect("shapes match");
                            let rhs = b.mul(&self.u[&(n, g)]).expect("shapes match");
                            record_equal(&mut v, &lhs, &rhs, || json!({ "law": "commute", "n": n, "degree": g, "generator": k }));
                        }
                        _ => v.skip(1),
                    }
                }
            }
        }
        v
    }

    /// `β_n(y) = y.u_{−n}`.
    pub fn to_equivariant(&self) -> Result<EquivariantWModule> {
        let gr = self.module.grading();
        let alpha = self
            .group
            .elements()
            .iter()
            .flat_map(|&n| {
                self.module
                    .window
                    .degrees()
                    .map(move |g| ((n, g), self.u[&(gr.neg(n), g)].clone()))
            })
            .collect();
        EquivariantWModule::new(self.module.clone(), self.group.clone(), alpha)
    }
}

/// `X = ⊕_{m ∈ N} A(s + m)^{⊕k}` with `α_n` sending the copy `(m, j)` to the
/// copies `(m + n, ·)` through `C_{m+n} C_m^{-1}`, for random invertible
/// `C_m`; the cocycle condition holds by construction.
pub fn random_equivariant<A: GradedAlgebra + ?Sized, R: rand::Rng>(
    alg: &A,
    shift: Deg,
    multiplicity: usize,
    window: &Window,
    rng: &mut R,
) -> Result<EquivariantWModule> {
    let gr = alg.grading();
    let group = ShiftGroup::torsion(gr);
    window.require_closed(group.elements())?;
    let field = alg.field();
    let k = multiplicity;
    let cs: Vec<Matrix> = group
        .elements()
        .iter()
        .map(|_| loop {
            let rows = (0..k).map(|_| (0..k).map(|_| field.random(rng, 3)).collect()).collect();
            let m = Matrix::from_rows(field, rows).expect("square");
            if m.inverse().is_some() {
                break m;
            }
        })
        .collect();
    let parts: Vec<WModule> = group
        .elements()
        .iter()
        .flat_map(|&m| std::iter::repeat_n(WModule::free(alg, gr.add(shift, m), window), k))
        .collect();
    let module = WModule::direct_sum(&parts)?;
    let mut alpha = BTreeMap::new();
    for &n in group.elements() {
        for g in window.degrees() {
            let src_dims: Vec<usize> = parts.iter().map(|p| p.dims[&g]).collect();
            let dst_dims: Vec<usize> = parts.iter().map(|p| p.dims[&gr.sub(g, n)]).collect();
            let (so, dof) = (offsets(&src_dims), offsets(&dst_dims));
            let mut a = Matrix::zeros(field, dst_dims.iter().sum(), src_dims.iter().sum());
            for (mi, &m) in group.elements().iter().enumerate() {
                let ti = group.index(gr.add(m, n));
                let coeff = cs[ti].mul(&cs[mi].inverse().expect("invertible"))?;
                for j in 0..k {
                    for j2 in 0..k {
                        let c = coeff.get(j2, j);
                        if c.is_zero() {
                            continue;
                        }
                        let (si, di) = (mi * k + j, ti * k + j2);
                        let d = src_dims[si];
                        debug_assert_eq!(d, dst_dims[di]);
                        a.place(dof[di], so[si], &Matrix::scalar(field, d, c));
                    }
                }
            }
            alpha.insert((n, g), a);
        }
    }
    EquivariantWModule::new(module, group, alpha)
}

/// The same module with `α_n` scaled by 2 for one `n ≠ 0`, which breaks the
/// cocycle condition while keeping every `α_n` linear and invertible.
pub fn break_cocycle(x: &EquivariantWModule) -> Result<EquivariantWModule> {
    let n = *x
        .group
        .elements()
        .get(1)
        .ok_or_else(|| Error::InvalidParameters("the trivial group has no cocycle to break".into()))?;
    let two = x.module.field.from_i64(2);
    let alpha = x
        .alpha
        .iter()
        .map(|(&(m, g), a)| ((m, g), if m == n { a.scale(&two) } else { a.clone() }))
        .collect();
    EquivariantWModule::new(x.module.clone(), x.group.clone(), alpha)
}

/// `Θ(Y) = (π^*(Y), id)` for a surjective `π` with kernel `N`.
pub fn theta_functor(
    y: &WModule,
    hom: &GroupHom,
    src_gen_degrees: &[Deg],
    window: &Window,
) -> Result<EquivariantWModule> {
    hom.require_surjective()?;
    let module = y.pullback(hom, src_gen_degrees, window)?;
    let group = ShiftGroup::kernel(hom);
    let alpha = group
        .elements()
        .iter()
        .flat_map(|&n| {
            let module = &module;
            window
                .degrees()
                .map(move |g| ((n, g), Matrix::identity(module.field, module.dims[&g])))
        })
        .collect();
    EquivariantWModule::new(module, group, alpha)
}

/// Checks that `Θ(Y)` is equivariant, that the `N`-invariants of `π_*Θ(Y)`
/// map isomorphically onto `Y` under the counit, and that the detour through
/// `R^gr[N]`-modules returns the same equivariant object.
pub fn verify_theta_round_trip(y: &WModule, hom: &GroupHom, src_gen_degrees: &[Deg], window: &Window) -> Result<Verification> {
    let theta = theta_functor(y, hom, src_gen_degrees, window)?;
    let mut v = Verification::new();
    v.absorb("equivariant", theta.check());
    let grm = theta.to_group_ring_module()?;
    v.absorb("group_ring", grm.check());
    let back = grm.to_equivariant()?;
    v.record(back == theta, || json!({ "law": "delta_beta" }));

    let target = window.pushforward_window(hom, &[]);
    let push = theta.module.pushforward(hom, &target)?;
    let gr = window.grading();
    let mut inv = Verification::new();
    for h in target.degrees() {
        let Some(dy) = y.dim(h) else {
            inv.skip(1);
            continue;
        };
        let fiber = hom.fiber(h);
        let dims: Vec<usize> = fiber.iter().map(|g| theta.module.dims[g]).collect();
        let off = offsets(&dims);
        let total: usize = dims.iter().sum();
        // stack (T_n − id) for all n, T_n moving the summand g to g − n by α_n
        let mut stacked = Matrix::zeros(y.field, total * theta.group.order(), total);
        for (r, &n) in theta.group.elements().iter().enumerate() {
            let mut t = Matrix::zeros(y.field, total, total);
            for (j, &g) in fiber.iter().enumerate() {
                let i = fiber.iter().position(|&f| f == gr.sub(g, n)).expect("fiber is a coset");
                t.place(off[i], off[j], &theta.alpha[&(n, g)]);
            }
            stacked.place(r * total, 0, &t.sub(&Matrix::identity(y.field, total))?);
        }
        let kernel = stacked.kernel();
        let k = Matrix::from_columns(y.field, total, &kernel);
        let eps = adjunction_counit(y, hom, h).expect("degree is in the window");
        let rank = eps.mul(&k)?.rank();
        inv.record(kernel.len() == dy && rank == dy, || {
            json!({ "degree": h, "invariants": kernel.len(), "rank": rank, "expected": dy })
        });
        debug_assert_eq!(push.dim(h), Some(total));
        inv.checked += dy.saturating_sub(1) as u64;
    }
    v.absorb("invariants", inv);
    Ok(v)
}

/// `Γ(X̄) = (π_*X̄, γ)` for the projection `Z × Z/p → Z`, with
/// `γ_χ(x) = χ^{-1}(a) x` on `X̄_{(h, a)}`.
#[derive(Debug, Clone)]
pub struct TwistedEquivariant {
    module: WModule,
    characters: Vec<Character>,
    /// Torsion parts of the generator degrees of the refined algebra.
    twist: Vec<i64>,
    /// `(k, h)`: `γ_{χ_k}` on component `h`.
    gamma: BTreeMap<(i64, Deg), Matrix>,
}

pub fn gamma_functor(xbar: &WModule) -> Result<TwistedEquivariant> {
    let m = xbar.grading().modulus();
    let hom = GroupHom::projection(m)?;
    let target = xbar.window.pushforward_window(&hom, &[]);
    let module = xbar.pushforward(&hom, &target)?;
    let field = xbar.field;
    let characters = Character::all(field, m)?;
    let mut gamma = BTreeMap::new();
    for chi in &characters {
        let inv = chi.inverse();
        for h in target.degrees() {
            let diag: Vec<Scalar> = hom
                .fiber(h)
                .iter()
                .flat_map(|g| std::iter::repeat_n(inv.value(g.a), xbar.dims[g]))
                .collect();
            gamma.insert((chi.exponent(), h), Matrix::diagonal(field, &diag));
        }
    }
    Ok(TwistedEquivariant {
        module,
        characters,
        twist: xbar.gen_degrees.iter().map(|d| d.a).collect(),
        gamma,
    })
}

impl TwistedEquivariant {
    pub fn module(&self) -> &WModule {
        &self.module
    }

    pub fn gamma(&self, k: i64, h: Deg) -> &Matrix {
        &self.gamma[&(k, h)]
    }

    /// `γ_χ(x.r) = γ_χ(x).(χ^{-1}.r)` on generators, `γ_{χχ'} = γ_{χ'} γ_χ`
    /// and `γ_1 = id`.
    pub fn check(&self) -> Verification {
        let mut v = Verification::new();
        let gr = self.module.grading();
        for chi in &self.characters {
            let inv = chi.inverse();
            for h in self.module.window.degrees() {
                let g = &self.gamma[&(chi.exponent(), h)];
                for (k, &dk) in self.module.gen_degrees.iter().enumerate() {
                    let t = gr.add(h, dk);
                    let Some(a) = self.module.action(k, h) else {
                        v.skip(1);
                        continue;
                    };
                    let lhs = self.gamma[&(chi.exponent(), t)].mul(a).expect("shapes match");
                    let rhs = a.mul(g).expect("shapes match").scale(&inv.value(self.twist[k]));
                    record_equal(&mut v, &lhs, &rhs, || json!({ "law": "twisted_linear", "character": chi.exponent(), "degree": h }));
                }
                for chi2 in &self.characters {
                    let lhs = &self.gamma[&(chi.compose(chi2).exponent(), h)];
                    let rhs = self.gamma[&(chi2.exponent(), h)].mul(g).expect("shapes match");
                    record_equal(&mut v, lhs, &rhs, || json!({ "law": "cocycle", "degree": h }));
                }
            }
        }
        v
    }

    /// Eigenspace regrading: on each `X_h`, the projections onto the pieces
    /// where `γ_{χ^{-1}}` acts by `χ(a)`.
    pub fn regrade(&self, h: Deg) -> Result<Vec<Matrix>> {
        let m = self.characters.len() as i64;
        let reps: Vec<Matrix> = self
            .characters
            .iter()
            .map(|chi| self.gamma[&(chi.inverse().exponent(), h)].clone())
            .collect();
        action_to_gradation(self.module.field, m, &reps)
    }
}

/// `Γ` followed by eigenspace regrading recovers the refined components of
/// `X̄`, and `Γ(X̄)` satisfies the equivariance conditions.
pub fn verify_gamma_round_trip(xbar: &WModule) -> Result<Verification> {
    let gam = gamma_functor(xbar)?;
    let mut v = Verification::new();
    v.absorb("equivariant", gam.check());
    let hom = GroupHom::projection(xbar.grading().modulus())?;
    let field = xbar.field;
    let mut rt = Verification::new();
    for h in gam.module.window.degrees() {
        let proj = gam.regrade(h)?;
        let fiber = hom.fiber(h);
        let dims: Vec<usize> = fiber.iter().map(|g| xbar.dims[g]).collect();
        let off = offsets(&dims);
        let total: usize = dims.iter().sum();
        for (j, g) in fiber.iter().enumerate() {
            let cols: Vec<Vec<Scalar>> = (0..dims[j])
                .map(|i| {
                    let mut c = vec![field.zero(); total];
                    c[off[j] + i] = field.one();
                    c
                })
                .collect();
            let want = column_space(&Matrix::from_columns(field, total, &cols));
            let got = column_space(&proj[g.a as usize]);
            rt.record(got == want, || json!({ "degree": g, "got": got.rows(), "want": dims[j] }));
            rt.checked += dims[j].saturating_sub(1) as u64;
        }
    }
    v.absorb("regrade", rt);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{CurveAlgebra, CurveTag, CurveType, RestrictedCurveAlgebra};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn curve(tag: CurveTag) -> Arc<CurveType> {
        let lambda = (tag == CurveTag::T2222).then(|| Field::Rational.parse_scalar("5/3").unwrap());
        CurveType::new(tag, lambda, Field::Rational).unwrap()
    }

    #[test]
    fn free_module_shift() {
        let r = curve(CurveTag::T632);
        let alg = CurveAlgebra::new(&r, false);
        let w = Window::band(CyclicGrading::integers(), 0, 5);
        let x = WModule::free(&alg, Deg { n: 2, a: 0 }, &w);
        for n in 0..=5 {
            assert_eq!(x.dim(Deg { n, a: 0 }), Some(r.r_dim((n + 2) as u32)));
        }
        let s = Deg { n: 1, a: 0 };
        let back = x.shift(s).shift(Deg { n: -1, a: 0 });
        assert_eq!(back, x);
        assert_eq!(x.shift(Deg { n: 0, a: 0 }), x);
        assert!(x.check_commutation().passed);
    }

    #[test]
    fn pushforward_of_free_module() {
        let r = curve(CurveTag::T442);
        let rbar = CurveAlgebra::new(&r, true);
        let gr = rbar.grading();
        let w = Window::band(gr, 0, 4);
        let g = Deg { n: 1, a: 3 };
        let x = WModule::free(&rbar, g, &w);
        let pi = GroupHom::projection(4).unwrap();
        let target = w.pushforward_window(&pi, &[]);
        let push = x.pushforward(&pi, &target).unwrap();
        let plain = CurveAlgebra::new(&r, false);
        let expected = WModule::free(&plain, pi.apply(g), &target);
        for h in target.degrees() {
            assert_eq!(push.dim(h), expected.dim(h));
        }
        assert!(push.check_commutation().passed);
        // identity pushforward
        let id = GroupHom::identity(gr);
        assert_eq!(x.pushforward(&id, &w).unwrap(), x);
    }

    #[test]
    fn pullback_of_pushforward_dims() {
        let r = curve(CurveTag::T333);
        let rbar = CurveAlgebra::new(&r, true);
        let gr = rbar.grading();
        let w = Window::band(gr, 0, 3);
        let x = WModule::free(&rbar, gr.zero(), &w);
        let pi = GroupHom::projection(3).unwrap();
        let target = w.pushforward_window(&pi, &[]);
        let pp = x.pushforward(&pi, &target).unwrap().pullback(&pi, &rbar.generator_degrees(), &w).unwrap();
        for g in w.degrees() {
            let sum: usize = (0..3).map(|a| x.dim(Deg { n: g.n, a }).unwrap()).sum();
            assert_eq!(pp.dim(g), Some(sum));
        }
    }

    #[test]
    fn monad_laws_and_comparison() {
        for tag in CurveTag::ALL {
            let r = curve(tag);
            let rbar = CurveAlgebra::new(&r, true);
            let gr = rbar.grading();
            let w = Window::band(gr, 0, 3);
            let x = WModule::free(&rbar, Deg { n: 1, a: 1 }, &w);
            let group = ShiftGroup::torsion(gr);
            let monad = monad_from_action(&group, &w).unwrap();
            for (law, v) in monad.check_laws(&x) {
                assert!(v.passed, "{tag} {law}: {:?}", v.counterexample);
                assert!(v.checked > 0, "{tag} {law}");
            }
            let pi = GroupHom::projection(r.p()).unwrap();
            let v = compare_monad_with_adjunction(&x, &pi).unwrap();
            assert!(v.passed, "{tag}: {:?}", v.counterexample);
        }
    }

    #[test]
    fn monad_on_restricted_s() {
        let r = curve(CurveTag::T632);
        let sh = RestrictedCurveAlgebra::new(&r).unwrap();
        let gr = sh.grading();
        let w = Window::band(gr, 0, 2);
        let x = WModule::free(&sh, gr.zero(), &w);
        let pi = GroupHom::projection(6).unwrap();
        assert!(compare_monad_with_adjunction(&x, &pi).unwrap().passed);
        let monad = monad_from_action(&ShiftGroup::torsion(gr), &w).unwrap();
        let mx = monad.apply(&x);
        for n in 0..=2 {
            let total: usize = (0..6).map(|a| x.dim(Deg { n, a }).unwrap()).sum();
            for a in 0..6 {
                assert_eq!(mx.dim(Deg { n, a }), Some(total));
            }
        }
    }

    #[test]
    fn trivial_group_monad_is_identity() {
        let r = curve(CurveTag::T632);
        let alg = CurveAlgebra::new(&r, false);
        let w = Window::band(CyclicGrading::integers(), 0, 3);
        let x = WModule::free(&alg, Deg { n: 0, a: 0 }, &w);
        let monad = monad_from_action(&ShiftGroup::trivial(w.grading()), &w).unwrap();
        assert_eq!(monad.apply(&x), x);
        assert!(monad.check_laws(&x).values().all(|v| v.passed));
    }

    #[test]
    fn window_closure() {
        let gr = CyclicGrading::new(3).unwrap();
        let w = Window::new(gr, [Deg { n: 0, a: 0 }, Deg { n: 0, a: 1 }]);
        assert!(monad_from_action(&ShiftGroup::torsion(gr), &w).is_err());
        assert_eq!(w.interior(&[Deg { n: 0, a: 1 }]), vec![Deg { n: 0, a: 0 }]);
    }

    #[test]
    fn triangles() {
        let r = curve(CurveTag::T2222);
        let rbar = CurveAlgebra::new(&r, true);
        let gr = rbar.grading();
        let w = Window::band(gr, 0, 3);
        let x = WModule::free(&rbar, Deg { n: 0, a: 1 }, &w);
        let pi = GroupHom::projection(2).unwrap();
        let target = w.pushforward_window(&pi, &[]);
        let plain = CurveAlgebra::new(&r, false);
        let y = WModule::free(&plain, Deg { n: 1, a: 0 }, &target);
        for (law, v) in check_triangle_identities(&x, &y, &pi, &target).unwrap() {
            assert!(v.passed, "{law}: {:?}", v.counterexample);
        }

        // non-surjective doubling on Z
        let double = GroupHom::scale(2).unwrap();
        let zw = Window::band(CyclicGrading::integers(), 0, 3);
        let x = WModule::free(&plain, Deg { n: 0, a: 0 }, &zw);
        let target = Window::band(CyclicGrading::integers(), 0, 6);
        let gens: Vec<Deg> = plain.generator_degrees().iter().map(|&d| double.apply(d)).collect();
        let y = WModule::zero(Field::Rational, gens, &target);
        let y = WModule::direct_sum(std::slice::from_ref(&y)).unwrap();
        for (law, v) in check_triangle_identities(&x, &y, &double, &target).unwrap() {
            assert!(v.passed, "{law}: {:?}", v.counterexample);
        }
        assert_eq!(adjunction_counit(&y, &double, Deg { n: 1, a: 0 }).unwrap().cols(), 0);
    }

    #[test]
    fn equivariant_conversions() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for tag in [CurveTag::T2222, CurveTag::T333] {
            let r = curve(tag);
            let rbar = CurveAlgebra::new(&r, true);
            let w = Window::band(rbar.grading(), 0, 3);
            let x = random_equivariant(&rbar, Deg { n: 0, a: 0 }, 2, &w, &mut rng).unwrap();
            assert!(x.check().passed, "{tag}: {:?}", x.check().counterexample);
            let lam = x.to_monad_module().unwrap();
            assert!(lam.check().passed);
            assert_eq!(lam.to_equivariant().unwrap(), x);
            let grm = x.to_group_ring_module().unwrap();
            assert!(grm.check().passed, "{:?}", grm.check().counterexample);
            assert_eq!(grm.to_equivariant().unwrap(), x);

            let bad = break_cocycle(&x).unwrap();
            assert!(!bad.check().passed);
            assert!(!bad.to_monad_module().unwrap().check().passed);
            assert_ne!(bad.to_group_ring_module().unwrap().to_equivariant().unwrap(), bad);
        }
    }

    #[test]
    fn theta_round_trip() {
        let r = curve(CurveTag::T442);
        let rbar = CurveAlgebra::new(&r, true);
        let plain = CurveAlgebra::new(&r, false);
        let pi = GroupHom::projection(4).unwrap();
        let w = Window::band(rbar.grading(), 0, 3);
        let target = w.pushforward_window(&pi, &[]);
        let y = WModule::free(&plain, Deg { n: 0, a: 0 }, &target);
        let v = verify_theta_round_trip(&y, &pi, &rbar.generator_degrees(), &w).unwrap();
        assert!(v.passed, "{:?}", v.counterexample);
        assert!(theta_functor(&y, &GroupHom::scale(2).unwrap(), &[], &w).is_err());
    }

    #[test]
    fn gamma_on_refined_algebra() {
        let f = Field::cyclotomic(6).unwrap();
        let r = CurveType::new(CurveTag::T632, None, f).unwrap();
        let rbar = CurveAlgebra::new(&r, true);
        let w = Window::band(rbar.grading(), 0, 2);
        let x = WModule::free(&rbar, Deg { n: 0, a: 0 }, &w);
        let v = verify_gamma_round_trip(&x).unwrap();
        assert!(v.passed, "{:?}", v.counterexample);
        // γ for g^{-1} on degree one, with basis ordered by residue: Z (0), X (2), Y (3)
        let gam = gamma_functor(&x).unwrap();
        let z = f.primitive_root(6).unwrap();
        let want = Matrix::diagonal(f, &[f.one(), z.pow(2), z.pow(3)]);
        assert_eq!(gam.gamma(5, Deg { n: 1, a: 0 }), &want);
    }
}
