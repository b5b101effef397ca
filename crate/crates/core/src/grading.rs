//! Grading groups of the form `Z × Z/m` (with `m = 1` standing for `Z`),
//! homomorphisms between them, and the graded-algebra interface used by the
//! module machinery.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{BlockMatrix, Matrix};

/// A degree `(n, ā)` in `Z × Z/m`; `a` is kept in `[0, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Deg {
    pub n: i64,
    pub a: i64,
}

impl fmt::Display for Deg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.a)
    }
}

/// The group `Z × Z/m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclicGrading {
    modulus: i64,
}

impl CyclicGrading {
    pub fn new(modulus: i64) -> Result<CyclicGrading> {
        if modulus < 1 {
            return Err(Error::InvalidParameters(format!("modulus {modulus} must be positive")));
        }
        Ok(CyclicGrading { modulus })
    }

    /// The integers.
    pub fn integers() -> CyclicGrading {
        CyclicGrading { modulus: 1 }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn deg(&self, n: i64, a: i64) -> Deg {
        Deg {
            n,
            a: a.rem_euclid(self.modulus),
        }
    }

    pub fn zero(&self) -> Deg {
        Deg { n: 0, a: 0 }
    }

    pub fn add(&self, x: Deg, y: Deg) -> Deg {
        self.deg(x.n + y.n, x.a + y.a)
    }

    pub fn neg(&self, x: Deg) -> Deg {
        self.deg(-x.n, -x.a)
    }

    pub fn sub(&self, x: Deg, y: Deg) -> Deg {
        self.deg(x.n - y.n, x.a - y.a)
    }

    /// The torsion subgroup `{0} × Z/m`, in increasing order.
    pub fn torsion(&self) -> Vec<Deg> {
        (0..self.modulus).map(|a| Deg { n: 0, a }).collect()
    }

    /// All degrees with `lo ≤ n ≤ hi`.
    pub fn band(&self, lo: i64, hi: i64) -> Vec<Deg> {
        (lo..=hi)
            .flat_map(|n| (0..self.modulus).map(move |a| Deg { n, a }))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum HomKind {
    Identity,
    /// `(n, ā) ↦ n`.
    Projection,
    /// `n ↦ k·n` on `Z`.
    Scale(i64),
}

/// A homomorphism between two grading groups with finite kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupHom {
    src: CyclicGrading,
    dst: CyclicGrading,
    kind: HomKind,
}

impl GroupHom {
    pub fn identity(g: CyclicGrading) -> GroupHom {
        GroupHom {
            src: g,
            dst: g,
            kind: HomKind::Identity,
        }
    }

    /// `Z × Z/m → Z`, forgetting the torsion coordinate.
    pub fn projection(m: i64) -> Result<GroupHom> {
        Ok(GroupHom {
            src: CyclicGrading::new(m)?,
            dst: CyclicGrading::integers(),
            kind: HomKind::Projection,
        })
    }

    /// `Z → Z`, `n ↦ k·n`.
    pub fn scale(k: i64) -> Result<GroupHom> {
        if k == 0 {
            return Err(Error::InvalidParameters("the zero map has infinite kernel".into()));
        }
        Ok(GroupHom {
            src: CyclicGrading::integers(),
            dst: CyclicGrading::integers(),
            kind: HomKind::Scale(k),
        })
    }

    pub fn source(&self) -> CyclicGrading {
        self.src
    }

    pub fn target(&self) -> CyclicGrading {
        self.dst
    }

    pub fn apply(&self, g: Deg) -> Deg {
        match self.kind {
            HomKind::Identity => g,
            HomKind::Projection => Deg { n: g.n, a: 0 },
            HomKind::Scale(k) => Deg { n: k * g.n, a: 0 },
        }
    }

    pub fn is_surjective(&self) -> bool {
        match self.kind {
            HomKind::Identity | HomKind::Projection => true,
            HomKind::Scale(k) => k.abs() == 1,
        }
    }

    pub fn require_surjective(&self) -> Result<()> {
        if self.is_surjective() {
            Ok(())
        } else {
            Err(Error::NotSurjective)
        }
    }

    /// The kernel, which is finite for every homomorphism of this type.
    pub fn kernel(&self) -> Vec<Deg> {
        match self.kind {
            HomKind::Identity | HomKind::Scale(_) => vec![self.src.zero()],
            HomKind::Projection => self.src.torsion(),
        }
    }

    /// `π^{-1}(h)` in a fixed order: a base point plus the kernel elements.
    pub fn fiber(&self, h: Deg) -> Vec<Deg> {
        match self.kind {
            HomKind::Identity => vec![h],
            HomKind::Projection => self.src.torsion().into_iter().map(|k| Deg { n: h.n, a: k.a }).collect(),
            HomKind::Scale(k) => {
                if h.n % k == 0 {
                    vec![Deg { n: h.n / k, a: 0 }]
                } else {
                    Vec::new()
                }
            }
        }
    }
}

/// A commutative algebra graded by `Z × Z/m`, presented by homogeneous
/// generators acting on finite-dimensional components.
pub trait GradedAlgebra: Send + Sync {
    fn field(&self) -> Field;
    fn grading(&self) -> CyclicGrading;
    fn generator_degrees(&self) -> Vec<Deg>;
    fn dim(&self, d: Deg) -> usize;
    /// Multiplication by generator `k` as a map `A_d → A_{d + deg g_k}`.
    fn generator_action(&self, k: usize, d: Deg) -> Matrix;
}

/// Memo table for generator actions.
#[derive(Default)]
pub(crate) struct ActionCache {
    inner: Mutex<HashMap<(usize, Deg), Matrix>>,
}

impl ActionCache {
    pub(crate) fn get_or(&self, k: usize, d: Deg, make: impl FnOnce() -> Matrix) -> Matrix {
        if let Some(m) = self.inner.lock().expect("cache lock").get(&(k, d)) {
            return m.clone();
        }
        let m = make();
        self.inner
            .lock()
            .expect("cache lock")
            .entry((k, d))
            .or_insert_with(|| m.clone());
        m
    }
}

/// `π_*(A)`: components `⊕_{g ∈ π^{-1}(h)} A_g`, generators regraded by `π`.
pub struct Pushforward<'a, A: GradedAlgebra + ?Sized> {
    source: &'a A,
    hom: GroupHom,
}

impl<'a, A: GradedAlgebra + ?Sized> Pushforward<'a, A> {
    pub fn new(source: &'a A, hom: GroupHom) -> Result<Self> {
        if hom.source() != source.grading() {
            return Err(Error::InvalidParameters("homomorphism does not start at the algebra's grading".into()));
        }
        Ok(Pushforward { source, hom })
    }

    /// Like [`Pushforward::new`] but rejects non-surjective homomorphisms.
    pub fn new_surjective(source: &'a A, hom: GroupHom) -> Result<Self> {
        hom.require_surjective()?;
        Pushforward::new(source, hom)
    }

    pub fn hom(&self) -> GroupHom {
        self.hom
    }

    /// Block form of a generator action, blocks indexed by fiber position.
    pub fn generator_action_blocks(&self, k: usize, h: Deg) -> BlockMatrix {
        let g = self.source.grading();
        let dk = self.source.generator_degrees()[k];
        let src_fiber = self.hom.fiber(h);
        let dst_fiber = self.hom.fiber(self.hom.target().add(h, self.hom.apply(dk)));
        let src_dims: Vec<usize> = src_fiber.iter().map(|&x| self.source.dim(x)).collect();
        let dst_dims: Vec<usize> = dst_fiber.iter().map(|&x| self.source.dim(x)).collect();
        let mut m = BlockMatrix::zeros(self.field(), dst_dims, src_dims);
        for (j, &x) in src_fiber.iter().enumerate() {
            let y = g.add(x, dk);
            let i = dst_fiber.iter().position(|&z| z == y).expect("fibers are translates");
            m.insert(i, j, self.source.generator_action(k, x));
        }
        m
    }
}

impl<A: GradedAlgebra + ?Sized> GradedAlgebra for Pushforward<'_, A> {
    fn field(&self) -> Field {
        self.source.field()
    }

    fn grading(&self) -> CyclicGrading {
        self.hom.target()
    }

    fn generator_degrees(&self) -> Vec<Deg> {
        self.source
            .generator_degrees()
            .into_iter()
            .map(|d| self.hom.apply(d))
            .collect()
    }

    fn dim(&self, h: Deg) -> usize {
        self.hom.fiber(h).into_iter().map(|g| self.source.dim(g)).sum()
    }

    fn generator_action(&self, k: usize, h: Deg) -> Matrix {
        self.generator_action_blocks(k, h).to_dense()
    }
}
