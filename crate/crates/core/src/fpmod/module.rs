use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactring::{Field, LinearKind, Rational, RingDescriptor, RingElem};
use crate::linalg::{int_kernel, FieldMatrix, IntQuotient, RowSpace};

/// `R^gens / (row span of rels)`.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    pub ring: RingDescriptor,
    pub gens: usize,
    pub rels: Vec<Vec<RingElem>>,
    lin: OnceLock<Arc<Linearized>>,
}

impl PartialEq for ModulePresentation {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.gens == other.gens && self.rels == other.rels
    }
}

/// A module turned into exact linear algebra over its base field or over ℤ.
#[derive(Clone, Debug)]
pub enum Linearized {
    /// `k^(gens·bdim) / W`.
    Field { field: Field, bdim: usize, space: RowSpace },
    /// `ℤ^gens / L`.
    Lattice { q: IntQuotient },
}

impl Linearized {
    pub fn ambient(&self) -> usize {
        match self {
            Linearized::Field { space, .. } => space.dim,
            Linearized::Lattice { q } => q.dim,
        }
    }

    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        match self {
            Linearized::Field { space, .. } => space.reduce(v),
            Linearized::Lattice { q } => {
                q.reduce(&to_ints(v)).into_iter().map(Rational::from_integer).collect()
            }
        }
    }

    pub fn is_zero(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Dimension over the base field (field case).
    pub fn quotient_dim(&self) -> Option<usize> {
        match self {
            Linearized::Field { space, .. } => Some(space.dim - space.rank()),
            Linearized::Lattice { .. } => None,
        }
    }

    /// Coordinates on the quotient basis (non-pivot columns) in the field case.
    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        match self {
            Linearized::Field { space, .. } => {
                let r = space.reduce(v);
                space.complement().iter().map(|&c| r[c].clone()).collect()
            }
            Linearized::Lattice { .. } => self.reduce(v),
        }
    }

    /// Some integer / field combination x with Σ x_i gens_i ≡ b modulo the relations.
    pub fn solve(&self, gens: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
        match self {
            Linearized::Field { field, space, .. } => {
                // unknowns: coefficients on gens, then on the relation basis
                let n = space.dim;
                let mut cols: Vec<Vec<Rational>> = gens.to_vec();
                for (_, row) in &space.rows {
                    cols.push(row.clone());
                }
                let a: Vec<Vec<Rational>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
                let m = FieldMatrix::with_shape(field, n, cols.len(), a);
                m.solve(b).map(|x| x[..gens.len()].to_vec())
            }
            Linearized::Lattice { q } => {
                let g: Vec<Vec<BigInt>> = gens.iter().map(|v| to_ints(v)).collect();
                q.solve(&g, &to_ints(b)).map(|x| x.into_iter().map(Rational::from_integer).collect())
            }
        }
    }

    /// Direct sum of linearizations of the same kind.
    pub fn direct_sum(parts: &[&Linearized]) -> Linearized {
        match parts.first() {
            Some(Linearized::Field { field, bdim, .. }) => {
                let dim: usize = parts.iter().map(|p| p.ambient()).sum();
                let mut space = RowSpace::new(field, dim);
                let mut off = 0;
                for p in parts {
                    if let Linearized::Field { space: s, .. } = p {
                        for (_, row) in &s.rows {
                            let mut v = vec![Rational::zero(); dim];
                            v[off..off + s.dim].clone_from_slice(row);
                            space.insert(&v);
                        }
                        off += s.dim;
                    }
                }
                Linearized::Field { field: field.clone(), bdim: *bdim, space }
            }
            Some(Linearized::Lattice { q }) => {
                let dim: usize = parts.iter().map(|p| p.ambient()).sum();
                let modulus = q.modulus.as_ref().map(|m| u64::try_from(m.clone()).unwrap());
                let mut out = IntQuotient::new(dim, modulus);
                let mut off = 0;
                for p in parts {
                    if let Linearized::Lattice { q } = p {
                        for row in q.basis_rows() {
                            let mut v = vec![BigInt::zero(); dim];
                            v[off..off + q.dim].clone_from_slice(&row);
                            out.insert(&v);
                        }
                        off += q.dim;
                    }
                }
                Linearized::Lattice { q: out }
            }
            None => Linearized::Field { field: Field::Rationals, bdim: 1, space: RowSpace::new(&Field::Rationals, 0) },
        }
    }
}

pub(crate) fn to_ints(v: &[Rational]) -> Vec<BigInt> {
    v.iter().map(|x| x.to_integer()).collect()
}

/// Human-readable isomorphism type of a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    /// Dimension over the base field.
    Dim(usize),
    /// Invariant factors over ℤ (0 = free summand).
    Factors(Vec<BigInt>),
}

impl ModulePresentation {
    pub fn new(ring: &RingDescriptor, gens: usize, rels: Vec<Vec<RingElem>>) -> Result<Self> {
        for r in &rels {
            if r.len() != gens {
                return Err(Error::Invalid(format!("relation of length {} for {} generators", r.len(), gens)));
            }
        }
        let rels = rels
            .into_iter()
            .map(|r| r.iter().map(|x| ring.normalize(x)).collect::<Vec<_>>())
            .filter(|r: &Vec<RingElem>| r.iter().any(|x| !ring.is_zero(x)))
            .collect();
        Ok(ModulePresentation { ring: ring.clone(), gens, rels, lin: OnceLock::new() })
    }

    pub fn free(ring: &RingDescriptor, n: usize) -> Self {
        ModulePresentation { ring: ring.clone(), gens: n, rels: Vec::new(), lin: OnceLock::new() }
    }

    pub fn zero(ring: &RingDescriptor) -> Self {
        Self::free(ring, 0)
    }

    /// `R / (a)`.
    pub fn cyclic(ring: &RingDescriptor, a: &RingElem) -> Self {
        Self::new(ring, 1, vec![vec![a.clone()]]).unwrap()
    }

    /// ⊕ ℤ/d_i over ℤ (d = 0 gives a free summand).
    pub fn abelian(factors: &[i64]) -> Self {
        let z = RingDescriptor::Integers;
        let n = factors.len();
        let rels = factors
            .iter()
            .enumerate()
            .map(|(i, &d)| (0..n).map(|j| z.from_int(if i == j { d } else { 0 })).collect())
            .collect();
        Self::new(&z, n, rels).unwrap()
    }

    pub fn is_free_presentation(&self) -> bool {
        self.rels.is_empty()
    }

    pub fn linearize(&self) -> Result<Arc<Linearized>> {
        if let Some(l) = self.lin.get() {
            return Ok(l.clone());
        }
        let l = Arc::new(self.compute_linearization()?);
        let _ = self.lin.set(l.clone());
        Ok(l)
    }

    fn compute_linearization(&self) -> Result<Linearized> {
        match self.ring.linear_kind()? {
            LinearKind::Field { field, dim: bdim } => {
                let basis = self.ring.basis_elems();
                let mut space = RowSpace::new(&field, self.gens * bdim);
                for r in &self.rels {
                    for b in &basis {
                        let v = self.elem_coords(&r.iter().map(|x| self.ring.mul(b, x)).collect::<Vec<_>>());
                        space.insert(&v);
                    }
                }
                Ok(Linearized::Field { field, bdim, space })
            }
            LinearKind::Lattice { modulus } => {
                let mut q = IntQuotient::new(self.gens, modulus);
                for r in &self.rels {
                    q.insert(&r.iter().map(|x| self.ring.int_value(x)).collect::<Vec<_>>());
                }
                Ok(Linearized::Lattice { q })
            }
        }
    }

    /// Linear coordinates of a vector of ring elements (one per generator).
    pub fn elem_coords(&self, x: &[RingElem]) -> Vec<Rational> {
        match self.ring.linear_kind() {
            Ok(LinearKind::Field { .. }) => x.iter().flat_map(|e| self.ring.coords(e)).collect(),
            _ => x.iter().map(|e| Rational::from_integer(self.ring.int_value(e))).collect(),
        }
    }

    /// Inverse of [`elem_coords`](Self::elem_coords).
    pub fn coords_elem(&self, v: &[Rational]) -> Vec<RingElem> {
        match self.ring.linear_kind() {
            Ok(LinearKind::Field { dim, .. }) => {
                (0..self.gens).map(|i| self.ring.from_coords(&v[i * dim..(i + 1) * dim])).collect()
            }
            _ => v.iter().map(|x| self.ring.from_bigint(&x.to_integer())).collect(),
        }
    }

    pub fn is_zero_elem(&self, x: &[RingElem]) -> Result<bool> {
        if self.rels.is_empty() {
            return Ok(x.iter().all(|e| self.ring.is_zero(e)));
        }
        Ok(self.linearize()?.is_zero(&self.elem_coords(x)))
    }

    pub fn generator(&self, i: usize) -> Vec<RingElem> {
        (0..self.gens).map(|j| if i == j { self.ring.one() } else { self.ring.zero() }).collect()
    }

    pub fn structure(&self) -> Result<Structure> {
        match &*self.linearize()? {
            Linearized::Field { space, .. } => Ok(Structure::Dim(space.dim - space.rank())),
            Linearized::Lattice { q } => Ok(Structure::Factors(q.invariant_factors())),
        }
    }

    pub fn is_zero_module(&self) -> Result<bool> {
        Ok(match self.structure()? {
            Structure::Dim(d) => d == 0,
            Structure::Factors(f) => f.is_empty(),
        })
    }

    /// Dimension over the base field, when the ring is finite-dimensional over one.
    pub fn dim(&self) -> Result<usize> {
        match self.structure()? {
            Structure::Dim(d) => Ok(d),
            Structure::Factors(_) => Err(Error::Unsupported("dimension requested over a lattice ring".into())),
        }
    }

    /// Tensor product over the ring with generators ordered lexicographically by (i, j).
    pub fn tensor(&self, other: &ModulePresentation) -> Result<ModulePresentation> {
        if !self.ring.same_ring(&other.ring) {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        let (n, m) = (self.gens, other.gens);
        let z = self.ring.zero();
        let mut rels = Vec::new();
        for r in &self.rels {
            for j in 0..m {
                let mut row = vec![z.clone(); n * m];
                for i in 0..n {
                    row[i * m + j] = r[i].clone();
                }
                rels.push(row);
            }
        }
        for i in 0..n {
            for r in &other.rels {
                let mut row = vec![z.clone(); n * m];
                for j in 0..m {
                    row[i * m + j] = r[j].clone();
                }
                rels.push(row);
            }
        }
        ModulePresentation::new(&self.ring, n * m, rels)
    }

    pub fn tensor_power(&self, n: usize) -> Result<ModulePresentation> {
        let mut out = ModulePresentation::free(&self.ring, 1);
        for _ in 0..n {
            out = out.tensor(self)?;
        }
        Ok(out)
    }

    pub fn direct_sum(&self, other: &ModulePresentation) -> Result<ModulePresentation> {
        if !self.ring.same_ring(&other.ring) {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        let z = self.ring.zero();
        let n = self.gens + other.gens;
        let mut rels = Vec::new();
        for r in &self.rels {
            let mut row = r.clone();
            row.extend(std::iter::repeat(z.clone()).take(other.gens));
            rels.push(row);
        }
        for r in &other.rels {
            let mut row = vec![z.clone(); self.gens];
            row.extend(r.iter().cloned());
            rels.push(row);
        }
        ModulePresentation::new(&self.ring, n, rels)
    }

    /// Adds relations (rows over the same generators).
    pub fn quotient(&self, extra: Vec<Vec<RingElem>>) -> Result<ModulePresentation> {
        let mut rels = self.rels.clone();
        rels.extend(extra);
        ModulePresentation::new(&self.ring, self.gens, rels)
    }

    /// Base change along a ring map given on scalars.
    pub fn base_change(&self, ring: &RingDescriptor, map: &dyn Fn(&RingElem) -> RingElem) -> Result<Self> {
        let rels = self.rels.iter().map(|r| r.iter().map(map).collect()).collect();
        ModulePresentation::new(ring, self.gens, rels)
    }

    pub fn describe(&self) -> String {
        match self.structure() {
            Ok(Structure::Dim(d)) => format!("dim {} over {}", d, self.ring.base_field().map(|f| f.name()).unwrap_or_default()),
            Ok(Structure::Factors(f)) => {
                if f.is_empty() {
                    "0".into()
                } else {
                    f.iter()
                        .map(|d| if d.is_zero() { "ZZ".to_string() } else { format!("ZZ/{d}") })
                        .collect::<Vec<_>>()
                        .join(" + ")
                }
            }
            Err(e) => e.to_string(),
        }
    }
}

/// A module homomorphism given by its matrix (target generators × source generators).
#[derive(Clone, Debug)]
pub struct ModMorphism {
    pub source: ModulePresentation,
    pub target: ModulePresentation,
    pub matrix: Vec<Vec<RingElem>>,
    /// Linear coordinates of the images of the source relations; each reduces to zero in the target.
    pub certificate: Vec<Vec<Rational>>,
}

impl ModMorphism {
    pub fn new(source: &ModulePresentation, target: &ModulePresentation, matrix: Vec<Vec<RingElem>>) -> Result<Self> {
        let f = Self::unchecked(source, target, matrix)?;
        let mut cert = Vec::new();
        for r in &source.rels {
            let img = f.apply(r);
            let v = target.elem_coords(&img);
            if !target.rels.is_empty() || img.iter().any(|x| !target.ring.is_zero(x)) {
                if !target.linearize()?.is_zero(&v) {
                    return Err(Error::Invalid("matrix does not respect the source relations".into()));
                }
            }
            cert.push(v);
        }
        Ok(ModMorphism { certificate: cert, ..f })
    }

    /// Builds without the well-definedness check (callers verify separately).
    pub fn unchecked(source: &ModulePresentation, target: &ModulePresentation, matrix: Vec<Vec<RingElem>>) -> Result<Self> {
        if !source.ring.same_ring(&target.ring) {
            return Err(Error::RingMismatch("morphism between modules over different rings".into()));
        }
        if matrix.len() != target.gens || matrix.iter().any(|r| r.len() != source.gens) {
            return Err(Error::Invalid("matrix shape does not match generators".into()));
        }
        let ring = &source.ring;
        let matrix = matrix.into_iter().map(|r| r.iter().map(|x| ring.normalize(x)).collect()).collect();
        Ok(ModMorphism { source: source.clone(), target: target.clone(), matrix, certificate: Vec::new() })
    }

    /// Re-verifies the stored certificate.
    pub fn recheck(&self) -> Result<bool> {
        if self.certificate.len() != self.source.rels.len() {
            return Ok(false);
        }
        for (r, c) in self.source.rels.iter().zip(&self.certificate) {
            if self.target.elem_coords(&self.apply(r)) != *c {
                return Ok(false);
            }
            if !self.target.rels.is_empty() && !self.target.linearize()?.is_zero(c) {
                return Ok(false);
            }
            if self.target.rels.is_empty() && c.iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.source.ring
    }

    pub fn identity(m: &ModulePresentation) -> Self {
        let r = &m.ring;
        let mat = (0..m.gens).map(|i| (0..m.gens).map(|j| if i == j { r.one() } else { r.zero() }).collect()).collect();
        ModMorphism::new(m, m, mat).unwrap()
    }

    pub fn zero(source: &ModulePresentation, target: &ModulePresentation) -> Self {
        let r = &source.ring;
        ModMorphism::new(source, target, vec![vec![r.zero(); source.gens]; target.gens]).unwrap()
    }

    pub fn scalar(m: &ModulePresentation, c: &RingElem) -> Self {
        let r = &m.ring;
        let mat = (0..m.gens).map(|i| (0..m.gens).map(|j| if i == j { c.clone() } else { r.zero() }).collect()).collect();
        ModMorphism::new(m, m, mat).unwrap()
    }

    /// Image of a source element given in generator coordinates.
    pub fn apply(&self, x: &[RingElem]) -> Vec<RingElem> {
        let r = self.ring();
        self.matrix
            .iter()
            .map(|row| {
                let mut acc = r.zero();
                for (a, b) in row.iter().zip(x) {
                    if !r.is_zero(a) && !r.is_zero(b) {
                        acc = r.add(&acc, &r.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModMorphism) -> Result<ModMorphism> {
        if self.source.gens != first.target.gens {
            return Err(Error::Invalid("composition of incompatible morphisms".into()));
        }
        let cols: Vec<Vec<RingElem>> = (0..first.source.gens)
            .map(|j| self.apply(&first.matrix.iter().map(|row| row[j].clone()).collect::<Vec<_>>()))
            .collect();
        let mat = (0..self.target.gens).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        ModMorphism::new(&first.source, &self.target, mat)
    }

    pub fn tensor(&self, other: &ModMorphism) -> Result<ModMorphism> {
        let r = self.ring();
        let src = self.source.tensor(&other.source)?;
        let tgt = self.target.tensor(&other.target)?;
        let (sn, sm) = (self.source.gens, other.source.gens);
        let (tn, tm) = (self.target.gens, other.target.gens);
        let mut mat = vec![vec![r.zero(); sn * sm]; tn * tm];
        for i in 0..tn {
            for k in 0..tm {
                for j in 0..sn {
                    if r.is_zero(&self.matrix[i][j]) {
                        continue;
                    }
                    for l in 0..sm {
                        mat[i * tm + k][j * sm + l] = r.mul(&self.matrix[i][j], &other.matrix[k][l]);
                    }
                }
            }
        }
        ModMorphism::new(&src, &tgt, mat)
    }

    pub fn add(&self, other: &ModMorphism) -> Result<ModMorphism> {
        let r = self.ring();
        let mat = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| r.add(x, y)).collect())
            .collect();
        ModMorphism::new(&self.source, &self.target, mat)
    }

    pub fn scale(&self, c: &RingElem) -> Result<ModMorphism> {
        let r = self.ring();
        let mat = self.matrix.iter().map(|a| a.iter().map(|x| r.mul(c, x)).collect()).collect();
        ModMorphism::new(&self.source, &self.target, mat)
    }

    pub fn sub(&self, other: &ModMorphism) -> Result<ModMorphism> {
        self.add(&other.scale(&self.ring().from_int(-1))?)
    }

    /// Every generator maps into the target's relation span.
    pub fn is_zero(&self) -> Result<bool> {
        for j in 0..self.source.gens {
            let col: Vec<RingElem> = self.matrix.iter().map(|row| row[j].clone()).collect();
            if !self.target.is_zero_elem(&col)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of morphisms: the difference lies in the relation span.
    pub fn equals(&self, other: &ModMorphism) -> Result<bool> {
        if self.source.gens != other.source.gens || self.target.gens != other.target.gens {
            return Ok(false);
        }
        self.sub(other)?.is_zero()
    }

    /// Matrix of the induced map between quotient bases over the base field.
    pub fn induced_matrix(&self) -> Result<FieldMatrix> {
        let sl = self.source.linearize()?;
        let tl = self.target.linearize()?;
        let (Linearized::Field { field, bdim, space: ss }, Linearized::Field { space: ts, .. }) = (&*sl, &*tl) else {
            return Err(Error::Unsupported("induced matrix needs a field-linear ring".into()));
        };
        let basis = self.ring().basis_elems();
        let tcomp = ts.complement();
        let scomp = ss.complement();
        let mut cols = Vec::new();
        for c in scomp {
            let (g, b) = (c / bdim, c % bdim);
            let mut x = vec![self.ring().zero(); self.source.gens];
            x[g] = basis[b].clone();
            let img = self.target.elem_coords(&self.apply(&x));
            let red = ts.reduce(&img);
            cols.push(tcomp.iter().map(|&t| red[t].clone()).collect::<Vec<_>>());
        }
        let rows = tcomp.len();
        let data = (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        Ok(FieldMatrix::with_shape(field, rows, cols.len(), data))
    }

    pub fn is_surjective(&self) -> Result<bool> {
        match &*self.target.linearize()? {
            Linearized::Field { .. } => {
                let m = self.induced_matrix()?;
                Ok(m.rank() == m.rows)
            }
            Linearized::Lattice { .. } => {
                let cols: Vec<Vec<RingElem>> =
                    (0..self.source.gens).map(|j| self.matrix.iter().map(|row| row[j].clone()).collect()).collect();
                Ok(self.target.quotient(cols)?.is_zero_module()?)
            }
        }
    }

    pub fn is_injective(&self) -> Result<bool> {
        match &*self.source.linearize()? {
            Linearized::Field { .. } => {
                let m = self.induced_matrix()?;
                Ok(m.rank() == m.cols)
            }
            Linearized::Lattice { q } => {
                for w in self.lattice_kernel_gens()? {
                    if !q.is_zero(&w) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Generators of `{x ∈ ℤ^n : f(x) ∈ L_target}`.
    fn lattice_kernel_gens(&self) -> Result<Vec<Vec<BigInt>>> {
        let tl = self.target.linearize()?;
        let Linearized::Lattice { q } = &*tl else {
            return Err(Error::Internal("lattice kernel on a field ring".into()));
        };
        let cols: Vec<Vec<BigInt>> = (0..self.source.gens)
            .map(|j| self.matrix.iter().map(|row| self.ring().int_value(&row[j])).collect())
            .collect();
        Ok(lattice_preimage(&cols, q))
    }

    /// Elements (in source generator coordinates) spanning the kernel.
    pub fn kernel_elements(&self) -> Result<Vec<Vec<RingElem>>> {
        match &*self.source.linearize()? {
            Linearized::Field { bdim, space, .. } => {
                let m = self.induced_matrix()?;
                let comp = space.complement();
                Ok(m.nullspace()
                    .into_iter()
                    .map(|v| {
                        let mut full = vec![Rational::zero(); self.source.gens * bdim];
                        for (c, x) in comp.iter().zip(v) {
                            full[*c] = x;
                        }
                        self.source.coords_elem(&full)
                    })
                    .collect())
            }
            Linearized::Lattice { .. } => Ok(self
                .lattice_kernel_gens()?
                .into_iter()
                .map(|w| w.iter().map(|x| self.ring().from_bigint(x)).collect())
                .collect()),
        }
    }

    /// Kernel as a module, with its inclusion into the source.
    pub fn kernel(&self) -> Result<(ModulePresentation, ModMorphism)> {
        let elems = self.kernel_elements()?;
        let k = present_submodule(&self.source, &elems)?;
        let mat = (0..self.source.gens).map(|i| elems.iter().map(|e| e[i].clone()).collect()).collect();
        let inc = ModMorphism::new(&k, &self.source, mat)?;
        Ok((k, inc))
    }

    pub fn is_iso(&self) -> Result<bool> {
        Ok(self.is_surjective()? && self.is_injective()?)
    }

    /// Cokernel presentation: the target modulo the images of the source generators.
    pub fn cokernel(&self) -> Result<ModulePresentation> {
        let cols: Vec<Vec<RingElem>> =
            (0..self.source.gens).map(|j| self.matrix.iter().map(|row| row[j].clone()).collect()).collect();
        self.target.quotient(cols)
    }
}

/// Generators of `{a ∈ ℤ^s : Σ a_i cols_i ∈ L}` for the lattice `L` of `q`.
pub fn lattice_preimage(cols: &[Vec<BigInt>], q: &IntQuotient) -> Vec<Vec<BigInt>> {
    let s = cols.len();
    let t = q.basis_rows();
    let width = s + t.len();
    let a: Vec<Vec<BigInt>> = (0..q.dim)
        .map(|c| {
            let mut row: Vec<BigInt> = cols.iter().map(|v| v[c].clone()).collect();
            row.extend(t.iter().map(|r| -r[c].clone()));
            row
        })
        .collect();
    if q.dim == 0 {
        return (0..s).map(|i| (0..s).map(|j| BigInt::from((i == j) as u8)).collect()).collect();
    }
    int_kernel(&a, q.dim, width)
        .into_iter()
        .map(|v| v[..s].to_vec())
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Presents the submodule generated by `elems` of `m`.
///
/// Field case: `elems` must be a base-field basis of a ring-stable subspace; relations express
/// each `b·e_i` as a constant combination. Lattice case: relations are all integer dependencies.
pub fn present_submodule(m: &ModulePresentation, elems: &[Vec<RingElem>]) -> Result<ModulePresentation> {
    let ring = &m.ring;
    let s = elems.len();
    let lin = m.linearize()?;
    match &*lin {
        Linearized::Field { field, .. } => {
            let gens: Vec<Vec<Rational>> = elems.iter().map(|e| m.elem_coords(e)).collect();
            let mut rels = Vec::new();
            for b in ring.basis_elems() {
                if ring.is_one(&b) {
                    continue;
                }
                for (i, e) in elems.iter().enumerate() {
                    let be: Vec<RingElem> = e.iter().map(|x| ring.mul(&b, x)).collect();
                    let c = lin
                        .solve(&gens, &m.elem_coords(&be))
                        .ok_or_else(|| Error::Invalid("subspace is not stable under the ring action".into()))?;
                    let mut row: Vec<RingElem> = c
                        .iter()
                        .map(|x| ring.from_rational(&field.neg(x)))
                        .collect::<Result<_>>()?;
                    row[i] = ring.add(&row[i], &b);
                    rels.push(row);
                }
            }
            ModulePresentation::new(ring, s, rels)
        }
        Linearized::Lattice { q } => {
            let cols: Vec<Vec<BigInt>> = elems.iter().map(|e| e.iter().map(|x| ring.int_value(x)).collect()).collect();
            let rels = lattice_preimage(&cols, q)
                .into_iter()
                .map(|v| v.iter().map(|x| ring.from_bigint(x)).collect())
                .collect();
            ModulePresentation::new(ring, s, rels)
        }
    }
}

/// The symmetry `M ⊗ N → N ⊗ M`, `e_i ⊗ f_j ↦ f_j ⊗ e_i`.
pub fn symmetry(m: &ModulePresentation, n: &ModulePresentation) -> Result<ModMorphism> {
    let r = &m.ring;
    let src = m.tensor(n)?;
    let tgt = n.tensor(m)?;
    let (a, b) = (m.gens, n.gens);
    let mut mat = vec![vec![r.zero(); a * b]; a * b];
    for i in 0..a {
        for j in 0..b {
            mat[j * a + i][i * b + j] = r.one();
        }
    }
    ModMorphism::new(&src, &tgt, mat)
}

/// Tensor product with its symmetry morphism.
pub fn tensor_modules(m: &ModulePresentation, n: &ModulePresentation) -> Result<(ModulePresentation, ModMorphism)> {
    let t = m.tensor(n)?;
    let s = symmetry(m, n)?;
    Ok((t, s))
}

/// `S_{M,M} = id` on `M ⊗ M`.
pub fn is_symtrivial(m: &ModulePresentation) -> Result<bool> {
    let s = symmetry(m, m)?;
    s.equals(&ModMorphism::identity(&s.source))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coprime_cyclic_groups_tensor_to_zero() {
        let t = ModulePresentation::abelian(&[2]).tensor(&ModulePresentation::abelian(&[3])).unwrap();
        assert!(t.is_zero_module().unwrap());
        let t = ModulePresentation::abelian(&[2]).tensor(&ModulePresentation::abelian(&[4])).unwrap();
        assert_eq!(t.structure().unwrap(), Structure::Factors(vec![BigInt::from(2)]));
    }

    #[test]
    fn free_ranks_multiply() {
        let q = RingDescriptor::Rationals;
        let t = ModulePresentation::free(&q, 2).tensor(&ModulePresentation::free(&q, 3)).unwrap();
        assert_eq!(t.dim().unwrap(), 6);
    }

    #[test]
    fn symtriviality_examples() {
        let q = RingDescriptor::Rationals;
        assert!(is_symtrivial(&ModulePresentation::free(&q, 1)).unwrap());
        assert!(!is_symtrivial(&ModulePresentation::free(&q, 2)).unwrap());
        assert!(is_symtrivial(&ModulePresentation::abelian(&[6])).unwrap());
        assert!(is_symtrivial(&ModulePresentation::zero(&q)).unwrap());
    }

    #[test]
    fn unit_tensor_is_identity_up_to_iso() {
        let m = ModulePresentation::abelian(&[4, 0]);
        let r = ModulePresentation::abelian(&[0]);
        let t = r.tensor(&m).unwrap();
        assert_eq!(t.structure().unwrap(), m.structure().unwrap());
        // R ⊗ M → M, 1 ⊗ x ↦ x is the identity matrix on generators
        let f = ModMorphism::new(&t, &m, ModMorphism::identity(&m).matrix).unwrap();
        assert!(f.is_iso().unwrap());
    }

    #[test]
    fn ill_defined_matrix_is_rejected() {
        let z2 = ModulePresentation::abelian(&[2]);
        let z = ModulePresentation::abelian(&[0]);
        let z_ring = RingDescriptor::Integers;
        assert!(ModMorphism::new(&z2, &z, vec![vec![z_ring.one()]]).is_err());
        let f = ModMorphism::new(&z, &z2, vec![vec![z_ring.one()]]).unwrap();
        assert!(f.recheck().unwrap());
    }
}
