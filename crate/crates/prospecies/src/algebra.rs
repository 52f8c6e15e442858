//! Finite dimensional algebras given by structure constants, built from bound
//! quiver presentations, with radicals, opposites and enveloping algebras.
//!
//! Every algebra carries a complete set of primitive orthogonal idempotents
//! whose images span the semisimple quotient (the algebras handled here are
//! basic and split), together with a set of generators that generate the
//! algebra once the idempotents are added.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, Weak};

use crate::error::{Error, Result};
use crate::exactla::{to_dense, Echelon, Field, Matrix, Scalar, SparseVec, Vector};
use crate::quiver::{Path, Quiver};

/// A linear combination of parallel paths.
pub type PathCombo = Vec<(Scalar, Path)>;

/// A quiver with relations, optionally graded by arrow weights and truncated
/// above a maximal weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundQuiver {
    pub quiver: Quiver,
    pub relations: Vec<PathCombo>,
    pub nilpotency_bound: usize,
    pub weights: Option<Vec<usize>>,
    pub max_weight: Option<usize>,
}

/// Default bound on the length of paths not lying in the relation ideal.
pub const DEFAULT_NILPOTENCY_BOUND: usize = 30;

impl BoundQuiver {
    pub fn new(quiver: Quiver, relations: Vec<PathCombo>) -> BoundQuiver {
        BoundQuiver { quiver, relations, nilpotency_bound: DEFAULT_NILPOTENCY_BOUND, weights: None, max_weight: None }
    }

    fn weight(&self, p: &Path) -> usize {
        match &self.weights {
            Some(w) => p.arrows.iter().map(|&a| w[a]).sum(),
            None => p.len(),
        }
    }

    fn admissible(&self, p: &Path) -> bool {
        self.max_weight.is_none_or(|n| self.weight(p) <= n)
    }
}

/// Normal forms of path combinations modulo the relation ideal.
#[derive(Clone, Debug)]
pub struct PathReducer {
    quiver: Quiver,
    columns: Vec<Path>,
    index: HashMap<Path, usize>,
    ideal: Echelon,
    basis_cols: Vec<usize>,
    basis_pos: HashMap<usize, usize>,
}

impl PathReducer {
    /// Coordinates of a path in the algebra basis.
    pub fn path_vector(&self, p: &Path) -> Vector {
        let f = self.ideal.field();
        match self.index.get(p) {
            None => vec![f.zero(); self.basis_cols.len()],
            Some(&c) => {
                let mut v = vec![f.zero(); self.columns.len()];
                v[c] = f.one();
                self.ideal.reduce(&mut v);
                self.basis_cols.iter().map(|&c| v[c].clone()).collect()
            }
        }
    }

    /// Coordinates of a path combination in the algebra basis.
    pub fn combo_vector(&self, combo: &PathCombo) -> Vector {
        let f = self.ideal.field();
        let mut out = vec![f.zero(); self.basis_cols.len()];
        for (c, p) in combo {
            for (o, x) in out.iter_mut().zip(self.path_vector(p)) {
                o.add_mul(c, &x);
            }
        }
        out
    }

    /// The path underlying basis element `i`.
    pub fn basis_path(&self, i: usize) -> &Path {
        &self.columns[self.basis_cols[i]]
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Whether a combination lies in the relation ideal.
    pub fn in_ideal(&self, combo: &PathCombo) -> bool {
        self.combo_vector(combo).iter().all(Scalar::is_zero)
    }

    /// Basis position of column `c`, when that column survives.
    fn position(&self, c: usize) -> Option<usize> {
        self.basis_pos.get(&c).copied()
    }
}

/// A finite dimensional associative unital algebra.
pub struct Algebra {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    mult: Vec<SparseVec>,
    unit: Vector,
    idempotents: Vec<Vector>,
    generators: Vec<Vector>,
    radical: Option<Vec<Vector>>,
    degrees: Option<Vec<usize>>,
    presentation: Option<(BoundQuiver, Arc<PathReducer>)>,
    opposite: OnceLock<OppositeRef>,
    radical_cache: OnceLock<Result<Vec<Vector>>>,
}

enum OppositeRef {
    Strong(Arc<Algebra>),
    Weak(Weak<Algebra>),
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra").field("field", &self.field).field("dim", &self.dim).field("labels", &self.labels).finish()
    }
}

impl PartialEq for Algebra {
    fn eq(&self, o: &Algebra) -> bool {
        std::ptr::eq(self, o) || (self.field == o.field && self.dim == o.dim && self.mult == o.mult && self.unit == o.unit)
    }
}

impl Eq for Algebra {}

impl Algebra {
    /// Builds an algebra from structure constants without checking the axioms.
    /// `mult[a*dim+b]` holds the product of basis elements `a` and `b`.
    pub fn from_structure(
        field: Field,
        labels: Vec<String>,
        mult: Vec<SparseVec>,
        unit: Vector,
        idempotents: Vec<Vector>,
        generators: Vec<Vector>,
    ) -> Algebra {
        let dim = labels.len();
        assert_eq!(mult.len(), dim * dim, "structure constants have wrong size");
        Algebra {
            field,
            dim,
            labels,
            mult,
            unit,
            idempotents,
            generators,
            radical: None,
            degrees: None,
            presentation: None,
            opposite: OnceLock::new(),
            radical_cache: OnceLock::new(),
        }
    }

    /// Like [`Algebra::from_structure`], then verifies associativity, the unit
    /// and the idempotent conditions.
    pub fn checked(
        field: Field,
        labels: Vec<String>,
        mult: Vec<SparseVec>,
        unit: Vector,
        idempotents: Vec<Vector>,
        generators: Vec<Vector>,
    ) -> Result<Algebra> {
        let a = Algebra::from_structure(field, labels, mult, unit, idempotents, generators);
        a.verify()?;
        Ok(a)
    }

    /// Records a known basis of the Jacobson radical.
    pub fn with_radical(mut self, radical: Vec<Vector>) -> Algebra {
        self.radical = Some(radical);
        self
    }

    /// Records a grading of the basis.
    pub fn with_degrees(mut self, degrees: Vec<usize>) -> Algebra {
        self.degrees = Some(degrees);
        self
    }

    /// The one-dimensional algebra `k`.
    pub fn ground(field: Field) -> Algebra {
        let one = vec![field.one()];
        Algebra::from_structure(field, vec!["1".into()], vec![vec![(0, field.one())]], one.clone(), vec![one], vec![])
            .with_radical(vec![])
    }

    /// The algebra `kQ/I` of a bound quiver. Paths of length below the
    /// nilpotency degree are reduced modulo the span of `l*r*m`; the surviving
    /// paths (shortest and lexicographically smallest first) form the basis.
    pub fn from_bound_quiver(field: Field, bq: &BoundQuiver) -> Result<Algebra> {
        let q = &bq.quiver;
        for r in &bq.relations {
            if let Some((_, p)) = r.iter().find(|(c, p)| p.len() < 2 && !c.is_zero()) {
                return Err(Error::NotAdmissible(format!("term {} has length < 2", p.display(q))));
            }
            if let Some((_, p0)) = r.first() {
                if r.iter().any(|(_, p)| p.source != p0.source || p.target != p0.target) {
                    return Err(Error::NotAdmissible("relation terms are not parallel".into()));
                }
            }
        }
        if let Some(w) = &bq.weights {
            if w.len() != q.num_arrows() {
                return Err(Error::ShapeMismatch("one weight per arrow required".into()));
            }
            if bq.max_weight.is_some() && w.iter().all(|&x| x == 0) && q.num_arrows() > 0 {
                return Err(Error::NotAdmissible("truncation needs a positive weight".into()));
            }
        }
        for d in 2..=bq.nilpotency_bound + 1 {
            let reducer = reduce_below(field, bq, d);
            let top_in_ideal = reducer.columns.iter().filter(|p| p.len() == d - 1).all(|p| {
                let mut v = vec![field.zero(); reducer.columns.len()];
                v[reducer.index[p]] = field.one();
                reducer.ideal.contains(&v)
            });
            if top_in_ideal {
                return Ok(Algebra::from_reducer(field, bq.clone(), reducer));
            }
        }
        Err(Error::NotNilpotent(bq.nilpotency_bound))
    }

    fn from_reducer(field: Field, bq: BoundQuiver, reducer: PathReducer) -> Algebra {
        let q = &bq.quiver;
        let dim = reducer.basis_cols.len();
        let paths: Vec<Path> = (0..dim).map(|i| reducer.basis_path(i).clone()).collect();
        let mut mult = Vec::with_capacity(dim * dim);
        for p in &paths {
            for r in &paths {
                let prod = match p.compose(r) {
                    Some(pr) if bq.admissible(&pr) => reducer.path_vector(&pr),
                    _ => vec![field.zero(); dim],
                };
                mult.push(crate::exactla::to_sparse(&prod));
            }
        }
        let basis_vec = |i: usize| {
            let mut v = vec![field.zero(); dim];
            v[i] = field.one();
            v
        };
        let idempotents: Vec<Vector> =
            (0..q.num_vertices()).map(|v| reducer.path_vector(&Path::trivial(v))).collect();
        let mut unit = vec![field.zero(); dim];
        for e in &idempotents {
            for (u, x) in unit.iter_mut().zip(e) {
                *u = &*u + x;
            }
        }
        let generators: Vec<Vector> = (0..q.num_arrows())
            .map(|a| reducer.path_vector(&Path::arrow(q, a)))
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let radical: Vec<Vector> = (0..dim).filter(|&i| !paths[i].is_trivial()).map(basis_vec).collect();
        let labels = paths.iter().map(|p| p.display(q).to_string()).collect();
        let degrees = bq.weights.as_ref().map(|_| paths.iter().map(|p| bq.weight(p)).collect());
        let mut alg = Algebra::from_structure(field, labels, mult, unit, idempotents, generators).with_radical(radical);
        alg.degrees = degrees;
        alg.presentation = Some((bq, Arc::new(reducer)));
        alg
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Vector] {
        &self.idempotents
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn degrees(&self) -> Option<&[usize]> {
        self.degrees.as_deref()
    }

    /// The bound quiver this algebra was built from, if any.
    pub fn bound_quiver(&self) -> Option<&BoundQuiver> {
        self.presentation.as_ref().map(|(b, _)| b)
    }

    /// Normal forms modulo the relations, for bound quiver algebras.
    pub fn reducer(&self) -> Option<&Arc<PathReducer>> {
        self.presentation.as_ref().map(|(_, r)| r)
    }

    /// The product of basis elements `a` and `b`.
    pub fn basis_product(&self, a: usize, b: usize) -> &SparseVec {
        &self.mult[a * self.dim + b]
    }

    /// The `i`-th standard basis vector.
    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn zero_vector(&self) -> Vector {
        vec![self.field.zero(); self.dim]
    }

    /// Product of two elements given in coordinates.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = self.zero_vector();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in &self.mult[i * self.dim + j] {
                    out[*k].add_mul(&xy, c);
                }
            }
        }
        out
    }

    /// Matrix of `x -> a x`.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in &self.mult[i * self.dim + j] {
                    m.get_mut(*k, j).add_mul(x, c);
                }
            }
        }
        m
    }

    /// Matrix of `x -> x a`.
    pub fn right_mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in &self.mult[j * self.dim + i] {
                    m.get_mut(*k, j).add_mul(x, c);
                }
            }
        }
        m
    }

    /// Checks associativity on basis triples, the unit law and the idempotent
    /// conditions.
    pub fn verify(&self) -> Result<()> {
        let d = self.dim;
        let mut lhs = self.zero_vector();
        let mut rhs = self.zero_vector();
        for a in 0..d {
            for b in 0..d {
                let ab = &self.mult[a * d + b];
                for c in 0..d {
                    let mut touched = Vec::new();
                    for (k, x) in ab {
                        for (l, y) in &self.mult[k * d + c] {
                            lhs[*l].add_mul(x, y);
                            touched.push(*l);
                        }
                    }
                    for (k, x) in &self.mult[b * d + c] {
                        for (l, y) in &self.mult[a * d + k] {
                            rhs[*l].add_mul(x, y);
                            touched.push(*l);
                        }
                    }
                    for &l in &touched {
                        if lhs[l] != rhs[l] {
                            return Err(Error::NotAnAlgebra(format!("associativity fails on ({a},{b},{c})")));
                        }
                    }
                    for &l in &touched {
                        lhs[l] = self.field.zero();
                        rhs[l] = self.field.zero();
                    }
                }
            }
            let e = self.basis_vector(a);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::NotAnAlgebra(format!("unit law fails on {a}")));
            }
        }
        let mut sum = self.zero_vector();
        for (i, e) in self.idempotents.iter().enumerate() {
            for (j, f) in self.idempotents.iter().enumerate() {
                let ef = self.mul(e, f);
                let expected = if i == j { e.clone() } else { self.zero_vector() };
                if ef != expected {
                    return Err(Error::NotAnAlgebra(format!("idempotents {i},{j} not orthogonal idempotents")));
                }
            }
            for (s, x) in sum.iter_mut().zip(e) {
                *s = &*s + x;
            }
        }
        if sum != self.unit {
            return Err(Error::NotAnAlgebra("idempotents do not sum to the unit".into()));
        }
        Ok(())
    }

    /// The opposite algebra, cached. The opposite of the opposite is `self`.
    pub fn opposite(self: &Arc<Self>) -> Arc<Algebra> {
        if let Some(r) = self.opposite.get() {
            match r {
                OppositeRef::Strong(a) => return a.clone(),
                OppositeRef::Weak(w) => {
                    if let Some(a) = w.upgrade() {
                        return a;
                    }
                }
            }
        }
        let d = self.dim;
        let mult = (0..d * d).map(|ab| self.mult[(ab % d) * d + ab / d].clone()).collect();
        let op = Algebra {
            field: self.field,
            dim: d,
            labels: self.labels.clone(),
            mult,
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            generators: self.generators.clone(),
            radical: self.radical.clone(),
            degrees: self.degrees.clone(),
            presentation: None,
            opposite: OnceLock::from(OppositeRef::Weak(Arc::downgrade(self))),
            radical_cache: OnceLock::new(),
        };
        let op = Arc::new(op);
        let _ = self.opposite.set(OppositeRef::Strong(op.clone()));
        match self.opposite.get() {
            Some(OppositeRef::Strong(a)) => a.clone(),
            _ => op,
        }
    }

    /// The enveloping algebra `A (x) B^op`: basis `(a, b)` has index
    /// `a * dim B + b` and `(a1,b1)(a2,b2) = (a1 a2, b2 b1)`.
    pub fn enveloping(a: &Algebra, b: &Algebra) -> Algebra {
        let f = a.field;
        let (da, db) = (a.dim, b.dim);
        let d = da * db;
        let mut mult = Vec::with_capacity(d * d);
        for x in 0..d {
            let (a1, b1) = (x / db, x % db);
            for y in 0..d {
                let (a2, b2) = (y / db, y % db);
                let mut v: SparseVec = Vec::new();
                for (i, c) in a.basis_product(a1, a2) {
                    for (j, e) in b.basis_product(b2, b1) {
                        v.push((i * db + j, c * e));
                    }
                }
                v.sort_by_key(|(k, _)| *k);
                mult.push(v);
            }
        }
        let tensor = |u: &[Scalar], w: &[Scalar]| -> Vector {
            let mut out = vec![f.zero(); d];
            for (i, x) in u.iter().enumerate() {
                for (j, y) in w.iter().enumerate() {
                    if !x.is_zero() && !y.is_zero() {
                        out[i * db + j] = x * y;
                    }
                }
            }
            out
        };
        let unit = tensor(&a.unit, &b.unit);
        let mut idempotents = Vec::new();
        for e in &a.idempotents {
            for g in &b.idempotents {
                idempotents.push(tensor(e, g));
            }
        }
        let mut generators: Vec<Vector> = a.generators.iter().map(|g| tensor(g, &b.unit)).collect();
        generators.extend(b.generators.iter().map(|g| tensor(&a.unit, g)));
        let labels = (0..d).map(|x| format!("{}|{}", a.labels[x / db], b.labels[x % db])).collect();
        let mut env = Algebra::from_structure(f, labels, mult, unit, idempotents, generators);
        if let (Ok(ra), Ok(rb)) = (a.jacobson_radical(), b.jacobson_radical()) {
            let mut ech = Echelon::new(f, d);
            let mut rad = Vec::new();
            for r in &ra {
                for j in 0..db {
                    let v = tensor(r, &b.basis_vector(j));
                    if ech.insert(v.clone()) {
                        rad.push(v);
                    }
                }
            }
            for r in &rb {
                for i in 0..da {
                    let v = tensor(&a.basis_vector(i), r);
                    if ech.insert(v.clone()) {
                        rad.push(v);
                    }
                }
            }
            env.radical = Some(rad);
        }
        env
    }

    /// Basis of the Jacobson radical. Uses the structurally known radical when
    /// the algebra was built from a bound quiver or a tensor construction, and
    /// the trace form otherwise.
    pub fn jacobson_radical(&self) -> Result<Vec<Vector>> {
        if let Some(r) = &self.radical {
            return Ok(r.clone());
        }
        self.radical_cache.get_or_init(|| self.trace_form_radical()).clone()
    }

    /// The radical as the kernel of the trace form `(x, y) -> tr(L_{xy})`.
    /// Needs characteristic zero or larger than the dimension.
    pub fn trace_form_radical(&self) -> Result<Vec<Vector>> {
        let p = self.field.characteristic();
        if p != 0 && p as usize <= self.dim {
            return Err(Error::CharTooSmall { p, dim: self.dim });
        }
        let d = self.dim;
        let traces: Vec<Scalar> = (0..d)
            .map(|k| {
                let mut t = self.field.zero();
                for j in 0..d {
                    if let Some((_, c)) = self.mult[k * d + j].iter().find(|(i, _)| *i == j) {
                        t = &t + c;
                    }
                }
                t
            })
            .collect();
        let mut g = Matrix::zeros(self.field, d, d);
        for i in 0..d {
            for j in 0..d {
                let mut s = self.field.zero();
                for (k, c) in &self.mult[i * d + j] {
                    s.add_mul(c, &traces[*k]);
                }
                g.set(i, j, s);
            }
        }
        Ok(g.kernel_basis())
    }

    /// The quotient by a two-sided ideal spanned by `ideal`. Returns the
    /// quotient, the projection matrix and the surviving basis indices.
    pub fn quotient(&self, ideal: &[Vector]) -> (Algebra, Matrix, Vec<usize>) {
        let f = self.field;
        let d = self.dim;
        let mut ech = Echelon::new(f, d);
        for v in ideal {
            ech.insert(v.clone());
        }
        let survivors: Vec<usize> = (0..d).filter(|&c| !ech.is_pivot(c)).collect();
        let project = |v: &[Scalar]| -> Vector {
            let mut w = v.to_vec();
            ech.reduce(&mut w);
            survivors.iter().map(|&c| w[c].clone()).collect()
        };
        let mut proj = Matrix::zeros(f, survivors.len(), d);
        for c in 0..d {
            for (r, x) in project(&self.basis_vector(c)).into_iter().enumerate() {
                proj.set(r, c, x);
            }
        }
        let mut mult = Vec::with_capacity(survivors.len() * survivors.len());
        for &a in &survivors {
            for &b in &survivors {
                mult.push(crate::exactla::to_sparse(&project(&to_dense(f, &self.mult[a * d + b], d))));
            }
        }
        let labels = survivors.iter().map(|&c| self.labels[c].clone()).collect();
        let idempotents = self.idempotents.iter().map(|e| project(e)).collect();
        let generators: Vec<Vector> =
            self.generators.iter().map(|g| project(g)).filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        let mut q = Algebra::from_structure(f, labels, mult, project(&self.unit), idempotents, generators);
        if let Some(rad) = &self.radical {
            let mut e = Echelon::new(f, survivors.len());
            q.radical = Some(rad.iter().map(|r| project(r)).filter(|v| e.insert(v.clone())).collect());
        }
        q.degrees = self.degrees.as_ref().map(|deg| survivors.iter().map(|&c| deg[c]).collect());
        (q, proj, survivors)
    }

    /// Basis of the two-sided ideal generated by `seeds`, closed under
    /// multiplication by the idempotents and generators on both sides.
    pub fn ideal_basis(&self, seeds: &[Vector]) -> Vec<Vector> {
        let mut ech = Echelon::new(self.field, self.dim);
        let mut basis = Vec::new();
        let mut queue: Vec<Vector> = seeds.to_vec();
        let mults: Vec<&Vector> = self.generators.iter().chain(&self.idempotents).collect();
        while let Some(v) = queue.pop() {
            if !ech.insert(v.clone()) {
                continue;
            }
            for g in &mults {
                queue.push(self.mul(g, &v));
                queue.push(self.mul(&v, g));
            }
            basis.push(v);
        }
        basis
    }

    /// Matrix of the left regular action of every basis element.
    pub fn left_regular_actions(&self) -> Vec<Matrix> {
        (0..self.dim).map(|b| self.left_mult_matrix(&self.basis_vector(b))).collect()
    }

    /// Matrix of the right regular action `x -> x b` of every basis element.
    pub fn right_regular_actions(&self) -> Vec<Matrix> {
        (0..self.dim).map(|b| self.right_mult_matrix(&self.basis_vector(b))).collect()
    }
}

/// Reduction of paths of length below `d` (and within the weight bound)
/// modulo the truncated relation ideal. Columns are ordered longest and
/// lexicographically largest first, so pivots fall on long paths.
fn reduce_below(field: Field, bq: &BoundQuiver, d: usize) -> PathReducer {
    let q = &bq.quiver;
    let mut columns: Vec<Path> = Vec::new();
    let mut layer: Vec<Path> = (0..q.num_vertices()).map(Path::trivial).collect();
    for len in 0..d {
        if len > 0 {
            let mut next = Vec::new();
            for p in &layer {
                for a in q.arrows_out_of(p.target) {
                    let np = Path::arrow(q, a).compose(p).unwrap();
                    if bq.admissible(&np) {
                        next.push(np);
                    }
                }
            }
            layer = next;
        }
        columns.extend(layer.iter().cloned());
        if layer.is_empty() {
            break;
        }
    }
    columns.sort_by(|a, b| q.compare_paths(b, a));
    let index: HashMap<Path, usize> = columns.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let n = columns.len();
    let to_vec = |combo: &[(Scalar, Path)]| -> Vector {
        let mut v = vec![field.zero(); n];
        for (c, p) in combo {
            if let Some(&i) = index.get(p) {
                v[i] = &v[i] + c;
            }
        }
        v
    };
    let mut ideal = Echelon::new(field, n);
    let mut queue: Vec<Vector> = bq.relations.iter().map(|r| to_vec(r)).collect();
    while let Some(v) = queue.pop() {
        if !ideal.insert(v.clone()) {
            continue;
        }
        for a in 0..q.num_arrows() {
            let ap = Path::arrow(q, a);
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (i, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                if let Some(p) = ap.compose(&columns[i]) {
                    left.push((x.clone(), p));
                }
                if let Some(p) = columns[i].compose(&ap) {
                    right.push((x.clone(), p));
                }
            }
            queue.push(to_vec(&left));
            queue.push(to_vec(&right));
        }
    }
    let mut basis_cols: Vec<usize> = (0..n).filter(|&c| !ideal.is_pivot(c)).collect();
    basis_cols.reverse();
    let basis_pos = basis_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    PathReducer { quiver: q.clone(), columns, index, ideal, basis_cols, basis_pos }
}

impl PathReducer {
    /// Basis index of a surviving path, if it survives as itself.
    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).and_then(|&c| self.position(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn truncated_poly(n: usize) -> Algebra {
        let quiver = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let rel = vec![(q().one(), Path::from_arrows(&quiver, &vec![0; n]).unwrap())];
        Algebra::from_bound_quiver(q(), &BoundQuiver::new(quiver, vec![rel])).unwrap()
    }

    fn path_algebra(quiver: Quiver) -> Algebra {
        Algebra::from_bound_quiver(q(), &BoundQuiver::new(quiver, vec![])).unwrap()
    }

    fn a2() -> Algebra {
        path_algebra(Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap())
    }

    #[test]
    fn bound_quiver_examples() {
        let k = path_algebra(Quiver::new::<&str>(&["1"], &[]).unwrap());
        assert_eq!(k.dim(), 1);
        let d = truncated_poly(2);
        assert_eq!(d.dim(), 2);
        assert_eq!(d.labels(), &["e(1)", "x"]);
        d.verify().unwrap();
        let a = a2();
        assert_eq!(a.dim(), 3);
        a.verify().unwrap();
    }

    #[test]
    fn non_admissible_and_infinite() {
        let quiver = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let bad = vec![(q().one(), Path::arrow(&quiver, 0))];
        let err = Algebra::from_bound_quiver(q(), &BoundQuiver::new(quiver.clone(), vec![bad]));
        assert!(matches!(err, Err(Error::NotAdmissible(_))));
        let mut bq = BoundQuiver::new(quiver, vec![]);
        bq.nilpotency_bound = 5;
        assert_eq!(Algebra::from_bound_quiver(q(), &bq).unwrap_err(), Error::NotNilpotent(5));
    }

    #[test]
    fn commutative_square() {
        let quiver =
            Quiver::new(&["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")]).unwrap();
        let ba = Path::from_arrows(&quiver, &[1, 0]).unwrap();
        let dc = Path::from_arrows(&quiver, &[3, 2]).unwrap();
        let rel = vec![(q().one(), ba.clone()), (q().from_i64(-1), dc.clone())];
        let alg = Algebra::from_bound_quiver(q(), &BoundQuiver::new(quiver, vec![rel])).unwrap();
        assert_eq!(alg.dim(), 9);
        alg.verify().unwrap();
        let r = alg.reducer().unwrap();
        assert_eq!(r.path_vector(&ba), r.path_vector(&dc));
        assert!(alg.labels().contains(&"b*a".to_string()));
    }

    #[test]
    fn radicals() {
        let d = truncated_poly(2);
        assert_eq!(d.trace_form_radical().unwrap(), vec![d.basis_vector(1)]);
        assert!(Algebra::ground(q()).trace_form_radical().unwrap().is_empty());
        let a = a2();
        let rad = a.trace_form_radical().unwrap();
        assert_eq!(rad.len(), 1);
        assert_eq!(Matrix::from_cols(q(), 3, &rad).rank(), 1);
        assert_eq!(a.jacobson_radical().unwrap(), vec![a.basis_vector(2)]);
        let f3 = Field::prime(3).unwrap();
        let quiver = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let rel = vec![(f3.one(), Path::from_arrows(&quiver, &[0, 0, 0]).unwrap())];
        let big = Algebra::from_bound_quiver(f3, &BoundQuiver::new(quiver, vec![rel])).unwrap();
        assert!(matches!(big.trace_form_radical(), Err(Error::CharTooSmall { .. })));
    }

    #[test]
    fn opposite_round_trip() {
        let a = Arc::new(a2());
        let op = a.opposite();
        assert!(Arc::ptr_eq(&op.opposite(), &a));
        op.verify().unwrap();
        let c = Arc::new(truncated_poly(3));
        assert_eq!(*c.opposite(), *c);
    }

    #[test]
    fn enveloping_is_an_algebra() {
        let a = a2();
        let d = truncated_poly(2);
        let env = Algebra::enveloping(&a, &d);
        assert_eq!(env.dim(), 6);
        env.verify().unwrap();
        assert_eq!(env.jacobson_radical().unwrap().len(), env.trace_form_radical().unwrap().len());
    }

    #[test]
    fn quotient_by_arrow_ideal() {
        let a = a2();
        let (qa, proj, surv) = a.quotient(&[a.basis_vector(2)]);
        assert_eq!(qa.dim(), 2);
        assert_eq!(surv, vec![0, 1]);
        assert_eq!(proj.rows(), 2);
        qa.verify().unwrap();
    }

    #[test]
    fn weighted_truncation() {
        let quiver = Quiver::new(&["1"], &[("x", "1", "1"), ("y", "1", "1")]).unwrap();
        let xy = Path::from_arrows(&quiver, &[0, 1]).unwrap();
        let yx = Path::from_arrows(&quiver, &[1, 0]).unwrap();
        let mut bq = BoundQuiver::new(quiver, vec![vec![(q().one(), xy), (q().from_i64(-1), yx)]]);
        bq.weights = Some(vec![1, 1]);
        bq.max_weight = Some(3);
        let alg = Algebra::from_bound_quiver(q(), &bq).unwrap();
        let degs = alg.degrees().unwrap();
        let graded: Vec<usize> = (0..=3).map(|d| degs.iter().filter(|&&x| x == d).count()).collect();
        assert_eq!(graded, vec![1, 2, 3, 4]);
    }
}
