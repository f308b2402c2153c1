//! The incidence algebra `FI(X, K)` of a finite poset: convolution, units,
//! inner / multiplicative / induced automorphisms, the centre, and the first
//! cohomology machinery deciding whether every multiplicative automorphism is
//! inner.

mod cohomology;
mod linear;
mod smith;

pub use cohomology::{
    enumerate_cocycles, h1_presentation, h1_trivial, is_coboundary, non_coboundary_cocycle, CoboundaryVerdict,
    H1Presentation, H1Report,
};
pub use linear::{nullspace, rank};
pub use smith::smith_invariants;

use thiserror::Error;

use crate::field::InvolutiveField;
use crate::poset::{FinitePoset, MapKind, PosetMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("elements belong to different incidence algebras")]
    MismatchedCarrier,
    #[error("`{0}` and `{1}` are not comparable")]
    Incomparable(String, String),
    #[error("not invertible: diagonal entry at `{0}` is zero")]
    NotInvertible(String),
    #[error("cocycle value at ({0}, {1}) is zero")]
    ZeroCocycleValue(String, String),
    #[error("cocycle value at ({0}, {0}) is not 1")]
    NonUnitDiagonal(String),
    #[error("cocycle identity fails on {0} ≤ {1} ≤ {2}")]
    InvalidCocycle(String, String, String),
    #[error("poset is not connected")]
    Disconnected,
    #[error("map is not a poset automorphism")]
    NotAnAutomorphism,
}

/// An element of `FI(X, K)`: one coefficient per comparable pair, in the
/// algebra's pair order. Values on incomparable pairs are zero by construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AlgebraElement<E> {
    coeffs: Vec<E>,
}

impl<E> AlgebraElement<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }
}

/// `σ : {x ≤ y} → K^×` with `σ(x,x) = 1` and `σ(x,y)σ(y,z) = σ(x,z)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cocycle<E> {
    values: Vec<E>,
}

impl<E> Cocycle<E> {
    pub fn values(&self) -> &[E] {
        &self.values
    }
}

/// An automorphism of `FI(X, K)` in factored form.
#[derive(Clone, Debug)]
pub enum AlgebraAutomorphism<E> {
    Inner(AlgebraElement<E>),
    Multiplicative(Cocycle<E>),
    Induced(PosetMap),
    /// Applied right to left, like function composition.
    Composite(Vec<AlgebraAutomorphism<E>>),
}

/// The algebra context: poset, field, and the precomputed multiplication plan.
#[derive(Clone, Debug)]
pub struct IncidenceAlgebra<F: InvolutiveField> {
    poset: FinitePoset,
    field: F,
    pairs: Vec<(usize, usize)>,
    index: Vec<usize>,
    /// For each pair `(x, y)`: the index pairs `((x,z), (z,y))` for `x ≤ z ≤ y`.
    plan: Vec<Vec<(usize, usize)>>,
    diagonal: Vec<usize>,
    /// Pairs ordered so that `(x, z)` precedes `(x, y)` whenever `z < y`.
    interval_order: Vec<usize>,
}

const ABSENT: usize = usize::MAX;

impl<F: InvolutiveField> IncidenceAlgebra<F> {
    pub fn new(poset: FinitePoset, field: F) -> Self {
        let n = poset.len();
        let pairs = poset.comparable_pairs();
        let mut index = vec![ABSENT; n * n];
        for (k, &(x, y)) in pairs.iter().enumerate() {
            index[x * n + y] = k;
        }
        let plan = pairs
            .iter()
            .map(|&(x, y)| {
                poset
                    .interval(x, y)
                    .into_iter()
                    .map(|z| (index[x * n + z], index[z * n + y]))
                    .collect()
            })
            .collect();
        let diagonal = (0..n).map(|x| index[x * n + x]).collect();
        let mut interval_order: Vec<usize> = (0..pairs.len()).collect();
        interval_order.sort_by_key(|&k| {
            let (x, y) = pairs[k];
            (x, poset.down_degree(y), y)
        });
        IncidenceAlgebra { poset, field, pairs, index, plan, diagonal, interval_order }
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Comparable pairs `(x, y)`, `x ≤ y`, in lexicographic order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn dimension(&self) -> usize {
        self.pairs.len()
    }

    pub fn pair_index(&self, x: usize, y: usize) -> Option<usize> {
        let k = self.index[x * self.poset.len() + y];
        (k != ABSENT).then_some(k)
    }

    fn idx(&self, x: usize, y: usize) -> usize {
        self.index[x * self.poset.len() + y]
    }

    fn check(&self, f: &AlgebraElement<F::Elem>) -> Result<(), AlgebraError> {
        if f.coeffs.len() == self.pairs.len() {
            Ok(())
        } else {
            Err(AlgebraError::MismatchedCarrier)
        }
    }

    fn incomparable(&self, x: usize, y: usize) -> AlgebraError {
        AlgebraError::Incomparable(self.poset.label(x).to_string(), self.poset.label(y).to_string())
    }

    // ----- construction -------------------------------------------------

    pub fn from_coeffs(&self, coeffs: Vec<F::Elem>) -> Result<AlgebraElement<F::Elem>, AlgebraError> {
        let f = AlgebraElement { coeffs };
        self.check(&f)?;
        Ok(f)
    }

    pub fn from_fn(&self, mut value: impl FnMut(usize, usize) -> F::Elem) -> AlgebraElement<F::Elem> {
        AlgebraElement { coeffs: self.pairs.iter().map(|&(x, y)| value(x, y)).collect() }
    }

    /// Sums `c · e_xy` over the given entries.
    pub fn from_entries<I>(&self, entries: I) -> Result<AlgebraElement<F::Elem>, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize, F::Elem)>,
    {
        let mut f = self.zero();
        for (x, y, c) in entries {
            let k = self.pair_index(x, y).ok_or_else(|| self.incomparable(x, y))?;
            f.coeffs[k] = self.field.add(&f.coeffs[k], &c);
        }
        Ok(f)
    }

    pub fn zero(&self) -> AlgebraElement<F::Elem> {
        AlgebraElement { coeffs: vec![self.field.zero(); self.pairs.len()] }
    }

    /// The identity `δ`.
    pub fn delta(&self) -> AlgebraElement<F::Elem> {
        self.scalar(self.field.one())
    }

    /// `c · δ`.
    pub fn scalar(&self, c: F::Elem) -> AlgebraElement<F::Elem> {
        let mut f = self.zero();
        for &k in &self.diagonal {
            f.coeffs[k] = c.clone();
        }
        f
    }

    /// The basis element `e_xy`.
    pub fn basis(&self, x: usize, y: usize) -> Result<AlgebraElement<F::Elem>, AlgebraError> {
        let k = self.pair_index(x, y).ok_or_else(|| self.incomparable(x, y))?;
        Ok(self.basis_at(k))
    }

    /// The basis element for the pair with index `k`.
    pub fn basis_at(&self, k: usize) -> AlgebraElement<F::Elem> {
        let mut f = self.zero();
        f.coeffs[k] = self.field.one();
        f
    }

    /// The primitive idempotent `e_x = e_xx`.
    pub fn idempotent(&self, x: usize) -> AlgebraElement<F::Elem> {
        self.basis_at(self.diagonal[x])
    }

    /// Diagonal unit with entries `d(x, x) = values[x]`.
    pub fn diagonal_unit(&self, values: &[F::Elem]) -> AlgebraElement<F::Elem> {
        let mut f = self.zero();
        for (x, &k) in self.diagonal.iter().enumerate() {
            f.coeffs[k] = values[x].clone();
        }
        f
    }

    // ----- access -------------------------------------------------------

    /// `f(x, y)`, zero when `x ≰ y`.
    pub fn entry(&self, f: &AlgebraElement<F::Elem>, x: usize, y: usize) -> F::Elem {
        match self.pair_index(x, y) {
            Some(k) => f.coeffs[k].clone(),
            None => self.field.zero(),
        }
    }

    pub fn diagonal(&self, f: &AlgebraElement<F::Elem>) -> Vec<F::Elem> {
        self.diagonal.iter().map(|&k| f.coeffs[k].clone()).collect()
    }

    pub fn is_diagonal(&self, f: &AlgebraElement<F::Elem>) -> bool {
        self.pairs.iter().zip(&f.coeffs).all(|(&(x, y), c)| x == y || self.field.is_zero(c))
    }

    /// `Some(c)` when `f = c · δ`.
    pub fn as_scalar(&self, f: &AlgebraElement<F::Elem>) -> Option<F::Elem> {
        if !self.is_diagonal(f) {
            return None;
        }
        let d = self.diagonal(f);
        let c = d.first().cloned().unwrap_or_else(|| self.field.zero());
        d.iter().all(|v| *v == c).then_some(c)
    }

    // ----- vector-space operations --------------------------------------

    pub fn add(&self, f: &AlgebraElement<F::Elem>, g: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        self.zip(f, g, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, f: &AlgebraElement<F::Elem>, g: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        self.zip(f, g, |a, b| self.field.sub(a, b))
    }

    pub fn neg(&self, f: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        self.map(f, |a| self.field.neg(a))
    }

    pub fn scale(&self, c: &F::Elem, f: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        self.map(f, |a| self.field.mul(c, a))
    }

    /// Applies `*` to every coefficient.
    pub fn star_coeffs(&self, f: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        self.map(f, |a| self.field.star(a))
    }

    pub fn map(&self, f: &AlgebraElement<F::Elem>, op: impl Fn(&F::Elem) -> F::Elem) -> AlgebraElement<F::Elem> {
        AlgebraElement { coeffs: f.coeffs.iter().map(op).collect() }
    }

    fn zip(
        &self,
        f: &AlgebraElement<F::Elem>,
        g: &AlgebraElement<F::Elem>,
        op: impl Fn(&F::Elem, &F::Elem) -> F::Elem,
    ) -> AlgebraElement<F::Elem> {
        debug_assert_eq!(f.coeffs.len(), g.coeffs.len());
        AlgebraElement { coeffs: f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| op(a, b)).collect() }
    }

    // ----- multiplication and units -------------------------------------

    /// Convolution `(fg)(x,y) = Σ_{x≤z≤y} f(x,z) g(z,y)`.
    pub fn convolve(
        &self,
        f: &AlgebraElement<F::Elem>,
        g: &AlgebraElement<F::Elem>,
    ) -> Result<AlgebraElement<F::Elem>, AlgebraError> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.mul(f, g))
    }

    /// Convolution for elements already known to belong to this algebra.
    pub fn mul(&self, f: &AlgebraElement<F::Elem>, g: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        let field = &self.field;
        let coeffs = self
            .plan
            .iter()
            .map(|terms| {
                let mut acc = field.zero();
                for &(a, b) in terms {
                    if field.is_zero(&f.coeffs[a]) || field.is_zero(&g.coeffs[b]) {
                        continue;
                    }
                    acc = field.add(&acc, &field.mul(&f.coeffs[a], &g.coeffs[b]));
                }
                acc
            })
            .collect();
        AlgebraElement { coeffs }
    }

    pub fn mul3(
        &self,
        f: &AlgebraElement<F::Elem>,
        g: &AlgebraElement<F::Elem>,
        h: &AlgebraElement<F::Elem>,
    ) -> AlgebraElement<F::Elem> {
        self.mul(&self.mul(f, g), h)
    }

    pub fn is_unit(&self, f: &AlgebraElement<F::Elem>) -> bool {
        self.diagonal.iter().all(|&k| !self.field.is_zero(&f.coeffs[k]))
    }

    /// Two-sided inverse by interval recursion:
    /// `g(x,x) = f(x,x)⁻¹`, `g(x,y) = −(Σ_{x≤z<y} g(x,z) f(z,y)) · f(y,y)⁻¹`.
    pub fn invert(&self, f: &AlgebraElement<F::Elem>) -> Result<AlgebraElement<F::Elem>, AlgebraError> {
        self.check(f)?;
        let field = &self.field;
        let n = self.poset.len();
        let mut diag_inv = Vec::with_capacity(n);
        for x in 0..n {
            let d = &f.coeffs[self.diagonal[x]];
            diag_inv.push(field.inv(d).ok_or_else(|| AlgebraError::NotInvertible(self.poset.label(x).to_string()))?);
        }
        let mut g = self.zero();
        for &k in &self.interval_order {
            let (x, y) = self.pairs[k];
            if x == y {
                g.coeffs[k] = diag_inv[x].clone();
                continue;
            }
            let mut acc = field.zero();
            for &(a, b) in &self.plan[k] {
                if b == self.diagonal[y] {
                    continue; // z = y
                }
                acc = field.add(&acc, &field.mul(&g.coeffs[a], &f.coeffs[b]));
            }
            g.coeffs[k] = field.neg(&field.mul(&acc, &diag_inv[y]));
        }
        debug_assert!(self.mul(f, &g) == self.delta());
        Ok(g)
    }

    // ----- automorphisms ------------------------------------------------

    /// `Ψ_u(f) = u f u⁻¹`.
    pub fn inner(
        &self,
        u: &AlgebraElement<F::Elem>,
        f: &AlgebraElement<F::Elem>,
    ) -> Result<AlgebraElement<F::Elem>, AlgebraError> {
        self.check(f)?;
        let u_inv = self.invert(u)?;
        Ok(self.conjugate(u, &u_inv, f))
    }

    /// `u f u⁻¹` with a precomputed inverse.
    pub fn conjugate(
        &self,
        u: &AlgebraElement<F::Elem>,
        u_inv: &AlgebraElement<F::Elem>,
        f: &AlgebraElement<F::Elem>,
    ) -> AlgebraElement<F::Elem> {
        self.mul3(u, f, u_inv)
    }

    pub fn validate_cocycle(&self, values: Vec<F::Elem>) -> Result<Cocycle<F::Elem>, AlgebraError> {
        if values.len() != self.pairs.len() {
            return Err(AlgebraError::MismatchedCarrier);
        }
        let field = &self.field;
        let label = |x: usize| self.poset.label(x).to_string();
        for (k, &(x, y)) in self.pairs.iter().enumerate() {
            if field.is_zero(&values[k]) {
                return Err(AlgebraError::ZeroCocycleValue(label(x), label(y)));
            }
            if x == y && !field.is_one(&values[k]) {
                return Err(AlgebraError::NonUnitDiagonal(label(x)));
            }
        }
        for (k, &(x, z)) in self.pairs.iter().enumerate() {
            for &(a, b) in &self.plan[k] {
                if field.mul(&values[a], &values[b]) != values[k] {
                    let y = self.pairs[a].1;
                    return Err(AlgebraError::InvalidCocycle(label(x), label(y), label(z)));
                }
            }
        }
        Ok(Cocycle { values })
    }

    pub fn cocycle_from_fn(&self, value: impl FnMut(usize, usize) -> F::Elem) -> Result<Cocycle<F::Elem>, AlgebraError> {
        self.validate_cocycle(self.from_fn(value).coeffs)
    }

    pub fn trivial_cocycle(&self) -> Cocycle<F::Elem> {
        Cocycle { values: vec![self.field.one(); self.pairs.len()] }
    }

    /// Extends values on cover pairs multiplicatively along cover paths and
    /// validates the result (fails when parallel paths disagree).
    pub fn cocycle_from_covers(
        &self,
        cover_value: impl Fn(usize, usize) -> F::Elem,
    ) -> Result<Cocycle<F::Elem>, AlgebraError> {
        let field = &self.field;
        let covers = self.poset.cover_pairs();
        let mut values: Vec<Option<F::Elem>> = vec![None; self.pairs.len()];
        // Short intervals first, so σ(z, y) is known when σ(x, y) needs it.
        let mut order: Vec<usize> = (0..self.pairs.len()).collect();
        order.sort_by_key(|&k| self.plan[k].len());
        for k in order {
            let (x, y) = self.pairs[k];
            values[k] = Some(if x == y {
                field.one()
            } else {
                let &(_, z) = covers
                    .iter()
                    .find(|&&(a, z)| a == x && self.poset.leq(z, y))
                    .expect("x < y has a cover of x below y");
                let rest = values[self.idx(z, y)].as_ref().expect("shorter interval computed");
                field.mul(&cover_value(x, z), rest)
            });
        }
        self.validate_cocycle(values.into_iter().map(|v| v.expect("all pairs computed")).collect())
    }

    /// `M_σ(f)(x,y) = σ(x,y) f(x,y)`.
    pub fn multiplicative(&self, sigma: &Cocycle<F::Elem>, f: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        self.zip(&AlgebraElement { coeffs: sigma.values.clone() }, f, |s, a| self.field.mul(s, a))
    }

    /// `α̂(f)(x,y) = f(α⁻¹x, α⁻¹y)`.
    pub fn induced(&self, alpha: &PosetMap, f: &AlgebraElement<F::Elem>) -> AlgebraElement<F::Elem> {
        let mut g = self.zero();
        for (k, &(x, y)) in self.pairs.iter().enumerate() {
            g.coeffs[self.idx(alpha.apply(x), alpha.apply(y))] = f.coeffs[k].clone();
        }
        g
    }

    pub fn apply_automorphism(
        &self,
        phi: &AlgebraAutomorphism<F::Elem>,
        f: &AlgebraElement<F::Elem>,
    ) -> Result<AlgebraElement<F::Elem>, AlgebraError> {
        self.check(f)?;
        match phi {
            AlgebraAutomorphism::Inner(u) => self.inner(u, f),
            AlgebraAutomorphism::Multiplicative(sigma) => {
                if sigma.values.len() != self.pairs.len() {
                    return Err(AlgebraError::MismatchedCarrier);
                }
                Ok(self.multiplicative(sigma, f))
            }
            AlgebraAutomorphism::Induced(alpha) => {
                if alpha.len() != self.poset.len() || alpha.kind() != MapKind::Automorphism {
                    return Err(AlgebraError::NotAnAutomorphism);
                }
                Ok(self.induced(alpha, f))
            }
            AlgebraAutomorphism::Composite(parts) => {
                let mut g = f.clone();
                for part in parts.iter().rev() {
                    g = self.apply_automorphism(part, &g)?;
                }
                Ok(g)
            }
        }
    }

    // ----- centre -------------------------------------------------------

    pub fn is_central(&self, f: &AlgebraElement<F::Elem>) -> bool {
        (0..self.pairs.len()).all(|k| {
            let e = self.basis_at(k);
            self.mul(f, &e) == self.mul(&e, f)
        })
    }

    /// A basis of the centre, from the linear system `f·e_ab = e_ab·f` over
    /// every basis element.
    pub fn center(&self) -> Vec<AlgebraElement<F::Elem>> {
        let field = &self.field;
        let m = self.pairs.len();
        let mut rows = Vec::new();
        for &(a, b) in &self.pairs {
            // (f e_ab)(x, y) = [y = b] f(x, a);  (e_ab f)(x, y) = [x = a] f(b, y).
            for &(x, y) in &self.pairs {
                let mut row = vec![field.zero(); m];
                let mut nonzero = false;
                if y == b {
                    if let Some(k) = self.pair_index(x, a) {
                        row[k] = field.add(&row[k], &field.one());
                        nonzero = true;
                    }
                }
                if x == a {
                    if let Some(k) = self.pair_index(b, y) {
                        row[k] = field.sub(&row[k], &field.one());
                        nonzero = true;
                    }
                }
                if nonzero && row.iter().any(|c| !field.is_zero(c)) {
                    rows.push(row);
                }
            }
        }
        nullspace(field, rows, m).into_iter().map(|coeffs| AlgebraElement { coeffs }).collect()
    }

    pub fn center_dimension(&self) -> usize {
        self.center().len()
    }

    /// Uniformly random coefficients.
    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> AlgebraElement<F::Elem> {
        AlgebraElement { coeffs: self.pairs.iter().map(|_| self.field.random(rng)).collect() }
    }

    /// Random coefficients with a nonzero diagonal.
    pub fn random_unit<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> AlgebraElement<F::Elem> {
        self.from_fn(|x, y| if x == y { self.field.random_nonzero(rng) } else { self.field.random(rng) })
    }
}
