//! Pro-species of algebras, their tensor algebras and representations.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{to_sparse, Field, Matrix, Scalar, Vector};
use crate::modules::{
    dual_basis, ext_dim, hom_space, is_isomorphic, is_selfinjective, same_algebra, tensor_over, Bimodule, Dimension, DualBasis,
    IsoResult, Module, TensorSpace,
};
use crate::quiver::{Path, Quiver};

/// A quiver with an algebra at every vertex and, on every arrow `a: i -> j`,
/// a `Lambda_j`-`Lambda_i`-bimodule that is finitely generated projective on
/// both sides.
#[derive(Clone, Debug)]
pub struct ProSpecies {
    quiver: Quiver,
    algebras: Vec<Arc<Algebra>>,
    bimodules: Vec<Bimodule>,
    left_bases: Vec<DualBasis>,
    right_bases: Vec<DualBasis>,
}

impl ProSpecies {
    /// Validates shapes and projectivity of every bimodule on both sides.
    pub fn new(quiver: Quiver, algebras: Vec<Arc<Algebra>>, bimodules: Vec<Bimodule>) -> Result<ProSpecies> {
        if algebras.len() != quiver.num_vertices() || bimodules.len() != quiver.num_arrows() {
            return Err(Error::ShapeMismatch("one algebra per vertex and one bimodule per arrow required".into()));
        }
        if algebras.windows(2).any(|w| w[0].field() != w[1].field()) {
            return Err(Error::ShapeMismatch("vertex algebras over different fields".into()));
        }
        let mut bims = Vec::new();
        let mut left_bases = Vec::new();
        let mut right_bases = Vec::new();
        for (a, b) in bimodules.into_iter().enumerate() {
            let arrow = quiver.arrow(a);
            let (lt, ls) = (&algebras[arrow.target], &algebras[arrow.source]);
            if !same_algebra(b.left_algebra(), lt) || !same_algebra(b.right_algebra(), ls) {
                return Err(Error::ShapeMismatch(format!("bimodule on {} is over the wrong algebras", arrow.label)));
            }
            let b = b.with_algebras(lt.clone(), ls.clone());
            let left = dual_basis(&b.as_left(), None).map_err(|_| Error::NotProjectiveLeft(arrow.label.clone()))?;
            let right = dual_basis(&b.as_right(), None).map_err(|_| Error::NotProjectiveRight(arrow.label.clone()))?;
            left_bases.push(left);
            right_bases.push(right);
            bims.push(b);
        }
        Ok(ProSpecies { quiver, algebras, bimodules: bims, left_bases, right_bases })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.algebras.first().map_or(Field::Rationals, |a| a.field())
    }

    pub fn algebra(&self, v: usize) -> &Arc<Algebra> {
        &self.algebras[v]
    }

    pub fn algebras(&self) -> &[Arc<Algebra>] {
        &self.algebras
    }

    pub fn bimodule(&self, a: usize) -> &Bimodule {
        &self.bimodules[a]
    }

    pub fn bimodules(&self) -> &[Bimodule] {
        &self.bimodules
    }

    /// Dual basis of the bimodule on `a` as a left module over the target algebra.
    pub fn left_dual_basis(&self, a: usize) -> &DualBasis {
        &self.left_bases[a]
    }

    /// Dual basis of the bimodule on `a` as a right module over the source algebra.
    pub fn right_dual_basis(&self, a: usize) -> &DualBasis {
        &self.right_bases[a]
    }

    /// Dimensions of the vertex algebras and the free ranks of the arrow
    /// bimodules on the right and on the left.
    pub fn valuation(&self) -> Result<Valuation> {
        let vertices: Vec<usize> = self.algebras.iter().map(|a| a.dim()).collect();
        let mut arrows = Vec::new();
        for (a, b) in self.bimodules.iter().enumerate() {
            let label = &self.quiver.arrow(a).label;
            let right = free_rank(&b.as_right()).ok_or_else(|| Error::NotLocallyFree(label.clone()))?;
            let left = free_rank(&b.as_left()).ok_or_else(|| Error::NotLocallyFree(label.clone()))?;
            arrows.push((right, left));
        }
        Ok(Valuation { vertices, arrows })
    }

    /// Whether every vertex algebra is selfinjective.
    pub fn is_locally_selfinjective(&self) -> Result<bool> {
        for a in &self.algebras {
            if !is_selfinjective(a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The first vertex whose algebra is not `n`-Iwanaga-Gorenstein, if any.
    pub fn first_non_gorenstein_vertex(&self, n: usize) -> Result<Option<usize>> {
        for (v, a) in self.algebras.iter().enumerate() {
            if !is_iwanaga_gorenstein(a, n)? {
                return Ok(Some(v));
            }
        }
        Ok(None)
    }
}

/// Whether `injdim A <= n` on both sides.
pub fn is_iwanaga_gorenstein(a: &Arc<Algebra>, n: usize) -> Result<bool> {
    let reg = Module::regular(a.clone());
    let reg_op = Module::regular(a.opposite());
    Ok(reg.inj_dim(n)?.is_at_most(n) && reg_op.inj_dim(n)?.is_at_most(n))
}

/// Vertex dimensions and `(right rank, left rank)` per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    pub vertices: Vec<usize>,
    pub arrows: Vec<(usize, usize)>,
}

fn free_rank(m: &Module) -> Option<usize> {
    let d = m.algebra().dim();
    if d == 0 || m.dim() % d != 0 {
        return None;
    }
    let r = m.dim() / d;
    is_isomorphic(m, &Module::free(m.algebra().clone(), r)).is_iso().then_some(r)
}

impl Bimodule {
    /// The same bimodule over equal algebra handles.
    pub fn with_algebras(&self, left: Arc<Algebra>, right: Arc<Algebra>) -> Bimodule {
        assert!(same_algebra(self.left_algebra(), &left) && same_algebra(self.right_algebra(), &right));
        let lact = (0..left.dim()).map(|a| self.left_action(a).clone()).collect();
        let ract = (0..right.dim()).map(|b| self.right_action(b).clone()).collect();
        Bimodule::new_unchecked(left, right, self.dim(), lact, ract)
    }
}

/// A quotient of a free bimodule `(+)_k Lambda_t e_k (x) f_k Lambda_s` by the
/// sub-bimodule generated by `kernel`. Summand `k` is the pair of idempotent
/// indices `(e_k, f_k)`; kernel elements are lists `(summand, left, right)` of
/// elements `left (x) right` in summand `summand`.
pub fn presented_bimodule(
    lt: &Arc<Algebra>,
    ls: &Arc<Algebra>,
    summands: &[(usize, usize)],
    kernel: &[Vec<(usize, Vector, Vector)>],
) -> Result<Bimodule> {
    let f = lt.field();
    let env = Arc::new(Algebra::enveloping(lt, ls));
    let d = env.dim();
    let n = summands.len();
    let free = Module::free(env.clone(), n);
    let mut gens = Vec::new();
    for (k, &(e, g)) in summands.iter().enumerate() {
        if e >= lt.idempotents().len() || g >= ls.idempotents().len() {
            return Err(Error::Semantic("summand idempotent out of range".into()));
        }
        let mut v = vec![f.zero(); d * n];
        let idem = crate::modules::tensor_vec(f, &lt.idempotents()[e], &ls.idempotents()[g]);
        v[k * d..(k + 1) * d].clone_from_slice(&idem);
        gens.push(v);
    }
    let mut rels = Vec::new();
    for combo in kernel {
        let mut v = vec![f.zero(); d * n];
        for (k, left, right) in combo {
            let (e, g) = summands[*k];
            let l = lt.mul(left, &lt.idempotents()[e]);
            let r = ls.mul(&ls.idempotents()[g], right);
            for (i, x) in crate::modules::tensor_vec(f, &l, &r).into_iter().enumerate() {
                v[k * d + i] = &v[k * d + i] + &x;
            }
        }
        rels.push(v);
    }
    let sub = free.generated_basis(&rels);
    let q = free.quotient(&sub);
    let images: Vec<Vector> = gens.iter().map(|g| q.proj.apply(g)).collect();
    let basis = q.module.generated_basis(&images);
    let m = q.module.submodule_from_basis(&basis);
    Ok(Bimodule::from_enveloping(lt.clone(), ls.clone(), &m))
}

/// The bimodule `(+)^g (k[x_t]/(x^c_t) (x) k[x_s]/(x^c_s)) / (x_t^f_st (x) 1 - 1 (x) x_s^f_ts)`
/// over truncated polynomial algebras.
pub fn gls_bimodule(lt: &Arc<Algebra>, ls: &Arc<Algebra>, f_st: usize, f_ts: usize, g: usize) -> Result<Bimodule> {
    let (ct, cs) = (lt.dim(), ls.dim());
    if ct * f_ts != cs * f_st || f_st == 0 || f_ts == 0 || g == 0 {
        return Err(Error::Semantic(format!("gls data c_s={cs} c_t={ct} f_st={f_st} f_ts={f_ts} g={g} is not symmetrizable")));
    }
    let xt = truncated_poly_power(lt, f_st)?;
    let xs = truncated_poly_power(ls, f_ts)?;
    let summands = vec![(0, 0); g];
    let neg_xs: Vector = xs.iter().map(|x| -x).collect();
    let kernel: Vec<Vec<(usize, Vector, Vector)>> =
        (0..g).map(|k| vec![(k, xt.clone(), ls.unit().clone()), (k, lt.unit().clone(), neg_xs.clone())]).collect();
    presented_bimodule(lt, ls, &summands, &kernel)
}

/// `x^f` in a truncated polynomial algebra `k[x]/(x^c)` presented by one loop.
fn truncated_poly_power(a: &Algebra, f: usize) -> Result<Vector> {
    if a.idempotents().len() != 1 {
        return Err(Error::Semantic("gls needs local truncated polynomial algebras".into()));
    }
    let x = a.generators().first().cloned().unwrap_or_else(|| a.zero_vector());
    if a.generators().len() > 1 {
        return Err(Error::Semantic("gls needs a single loop".into()));
    }
    let mut p = a.unit().clone();
    for _ in 0..f {
        p = a.mul(&p, &x);
    }
    Ok(p)
}

/// Tensor algebra of a pro-species, possibly truncated above a degree. Basis
/// elements are pairs of a path and a basis element of the iterated tensor
/// product along it.
#[derive(Clone, Debug)]
pub struct WordAlgebra {
    ps: Arc<ProSpecies>,
    alg: Arc<Algebra>,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    spaces: Vec<Bimodule>,
    tensors: Vec<Option<TensorSpace>>,
    offsets: Vec<usize>,
    max_degree: Option<usize>,
}

/// The tensor algebra of a pro-species on an acyclic quiver.
pub fn tensor_algebra(ps: &Arc<ProSpecies>) -> Result<WordAlgebra> {
    let longest = ps.quiver.longest_path().ok_or(Error::CyclicQuiver)?;
    WordAlgebra::build(ps, longest, None)
}

/// The tensor algebra modulo paths of length above `n`.
pub fn truncated_tensor_algebra(ps: &Arc<ProSpecies>, n: usize) -> Result<WordAlgebra> {
    WordAlgebra::build(ps, n, Some(n))
}

impl WordAlgebra {
    fn build(ps: &Arc<ProSpecies>, max_len: usize, max_degree: Option<usize>) -> Result<WordAlgebra> {
        let q = &ps.quiver;
        let f = ps.field();
        let paths = q.enumerate_paths(max_len);
        let index: HashMap<Path, usize> = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut spaces: Vec<Bimodule> = Vec::with_capacity(paths.len());
        let mut tensors = Vec::with_capacity(paths.len());
        for p in &paths {
            match p.len() {
                0 => {
                    spaces.push(Bimodule::regular(ps.algebras[p.source].clone()));
                    tensors.push(None);
                }
                1 => {
                    spaces.push(ps.bimodules[p.arrows[0]].clone());
                    tensors.push(None);
                }
                _ => {
                    let tail = index[&p.tail(q)];
                    let (b, ts) = ps.bimodules[p.arrows[0]].tensor(&spaces[tail])?;
                    spaces.push(b);
                    tensors.push(Some(ts));
                }
            }
        }
        let mut offsets = Vec::with_capacity(paths.len() + 1);
        let mut total = 0;
        for s in &spaces {
            offsets.push(total);
            total += s.dim();
        }
        offsets.push(total);
        let mut w = WordAlgebra {
            ps: ps.clone(),
            alg: Arc::new(Algebra::ground(f)),
            paths,
            index,
            spaces,
            tensors,
            offsets,
            max_degree,
        };
        w.alg = Arc::new(w.assemble(total));
        Ok(w)
    }

    fn assemble(&self, total: usize) -> Algebra {
        let f = self.ps.field();
        let q = &self.ps.quiver;
        let mut mult = vec![Vec::new(); total * total];
        for (pi, p) in self.paths.iter().enumerate() {
            for (qi, qq) in self.paths.iter().enumerate() {
                if p.source != qq.target {
                    continue;
                }
                for s in 0..self.spaces[pi].dim() {
                    let x = unit_vec(f, self.spaces[pi].dim(), s);
                    for t in 0..self.spaces[qi].dim() {
                        let y = unit_vec(f, self.spaces[qi].dim(), t);
                        if let Some((ri, z)) = self.mul_blocks(pi, &x, qi, &y) {
                            let off = self.offsets[ri];
                            let sparse = to_sparse(&z).into_iter().map(|(k, c)| (off + k, c)).collect();
                            mult[(self.offsets[pi] + s) * total + self.offsets[qi] + t] = sparse;
                        }
                    }
                }
            }
        }
        let mut labels = Vec::with_capacity(total);
        let mut degrees = Vec::with_capacity(total);
        for (pi, p) in self.paths.iter().enumerate() {
            for s in 0..self.spaces[pi].dim() {
                if p.is_trivial() {
                    labels.push(format!("{}:{}", q.vertices()[p.source], self.ps.algebras[p.source].labels()[s]));
                } else {
                    labels.push(format!("{}:{s}", p.display(q)));
                }
                degrees.push(p.len());
            }
        }
        let mut idempotents = Vec::new();
        let mut generators = Vec::new();
        let mut radical = Vec::new();
        let mut unit = vec![f.zero(); total];
        for (v, a) in self.ps.algebras.iter().enumerate() {
            let pi = self.index[&Path::trivial(v)];
            for e in a.idempotents() {
                idempotents.push(self.embed(pi, e));
            }
            for g in a.generators() {
                generators.push(self.embed(pi, g));
            }
            for r in a.jacobson_radical().unwrap_or_default() {
                radical.push(self.embed(pi, &r));
            }
            for (u, x) in unit.iter_mut().zip(self.embed(pi, a.unit())) {
                *u = &*u + &x;
            }
        }
        for (pi, p) in self.paths.iter().enumerate() {
            if p.is_trivial() {
                continue;
            }
            for s in 0..self.spaces[pi].dim() {
                let v = unit_vec(f, total, self.offsets[pi] + s);
                if p.len() == 1 {
                    generators.push(v.clone());
                }
                radical.push(v);
            }
        }
        Algebra::from_structure(f, labels, mult, unit, idempotents, generators).with_radical(radical).with_degrees(degrees)
    }

    /// Product of `x` in the block of path `pi` with `y` in the block of `qi`.
    fn mul_blocks(&self, pi: usize, x: &[Scalar], qi: usize, y: &[Scalar]) -> Option<(usize, Vector)> {
        let (p, qq) = (&self.paths[pi], &self.paths[qi]);
        if p.source != qq.target {
            return None;
        }
        if p.is_trivial() {
            return Some((qi, self.spaces[qi].left_act(x).apply(y)));
        }
        if qq.is_trivial() {
            return Some((pi, self.spaces[pi].right_act(y).apply(x)));
        }
        let r = p.compose(qq).unwrap();
        if self.max_degree.is_some_and(|n| r.len() > n) {
            return None;
        }
        let ri = *self.index.get(&r)?;
        let ts_r = self.tensors[ri].as_ref().unwrap();
        if p.len() == 1 {
            return Some((ri, ts_r.element(x, y)));
        }
        let f = self.ps.field();
        let ts_p = self.tensors[pi].as_ref().unwrap();
        let tail = self.index[&p.tail(&self.ps.quiver)];
        let dim_a = self.ps.bimodules[p.arrows[0]].dim();
        let mut out = vec![f.zero(); self.spaces[ri].dim()];
        for (s, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (i, j) = ts_p.pair(s);
            let (_, z) = self.mul_blocks(tail, &unit_vec(f, self.spaces[tail].dim(), j), qi, y)?;
            let e = ts_r.element(&unit_vec(f, dim_a, i), &z);
            for (o, v) in out.iter_mut().zip(e) {
                o.add_mul(c, &v);
            }
        }
        Some((ri, out))
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn prospecies(&self) -> &Arc<ProSpecies> {
        &self.ps
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.max_degree
    }

    /// Index of a path among the blocks.
    pub fn path_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Basis range of the block of path `pi`.
    pub fn block(&self, pi: usize) -> std::ops::Range<usize> {
        self.offsets[pi]..self.offsets[pi + 1]
    }

    /// The tensor space behind a block of path length at least two.
    pub fn tensor_space(&self, pi: usize) -> Option<&TensorSpace> {
        self.tensors[pi].as_ref()
    }

    /// The bimodule sitting on path `pi`.
    pub fn space(&self, pi: usize) -> &Bimodule {
        &self.spaces[pi]
    }

    /// Embeds an element of the block of path `pi`.
    pub fn embed(&self, pi: usize, x: &[Scalar]) -> Vector {
        let f = self.ps.field();
        let mut v = vec![f.zero(); *self.offsets.last().unwrap()];
        v[self.block(pi)].clone_from_slice(x);
        v
    }

    /// Embeds an element of a vertex algebra.
    pub fn embed_vertex(&self, v: usize, x: &[Scalar]) -> Vector {
        self.embed(self.index[&Path::trivial(v)], x)
    }

    /// Embeds an element of an arrow bimodule.
    pub fn embed_arrow(&self, a: usize, x: &[Scalar]) -> Vector {
        self.embed(self.index[&Path::arrow(&self.ps.quiver, a)], x)
    }

    /// The unit of the vertex algebra at `v`, embedded.
    pub fn vertex_unit(&self, v: usize) -> Vector {
        self.embed_vertex(v, self.ps.algebras[v].unit())
    }

    /// Dimension of every graded piece.
    pub fn graded_dims(&self) -> Vec<usize> {
        let top = self.paths.iter().map(Path::len).max().unwrap_or(0);
        let mut dims = vec![0; top + 1];
        for (pi, p) in self.paths.iter().enumerate() {
            dims[p.len()] += self.spaces[pi].dim();
        }
        dims
    }

    /// Basis indices of `T e_i`, the blocks of paths starting at `i`.
    pub fn column_indices(&self, i: usize) -> Vec<usize> {
        (0..self.paths.len()).filter(|&pi| self.paths[pi].source == i).flat_map(|pi| self.block(pi)).collect()
    }

    /// The element `x (x) m` of an arrow acting on a module, as a matrix.
    fn arrow_actions(&self, rep: &Representation) -> Vec<Vec<Matrix>> {
        let f = self.ps.field();
        let mut acts: Vec<Vec<Matrix>> = Vec::with_capacity(self.paths.len());
        for (pi, p) in self.paths.iter().enumerate() {
            let d = self.spaces[pi].dim();
            let mats = match p.len() {
                0 => (0..d).map(|s| rep.modules[p.source].action(s).clone()).collect(),
                1 => (0..d).map(|s| rep.arrow_action(p.arrows[0], &unit_vec(f, d, s))).collect(),
                _ => {
                    let ts = self.tensors[pi].as_ref().unwrap();
                    let tail = self.index[&p.tail(&self.ps.quiver)];
                    let a = p.arrows[0];
                    let da = self.ps.bimodules[a].dim();
                    let heads: Vec<Matrix> = (0..da).map(|i| rep.arrow_action(a, &unit_vec(f, da, i))).collect();
                    (0..d)
                        .map(|s| {
                            let (i, j) = ts.pair(s);
                            heads[i].mul(&acts[tail][j])
                        })
                        .collect()
                }
            };
            acts.push(mats);
        }
        acts
    }

    /// The module over the tensor algebra assembled from a representation.
    pub fn rep_to_module(&self, rep: &Representation) -> Result<Module> {
        let f = self.ps.field();
        let offs = rep.offsets();
        let dim = *offs.last().unwrap();
        let acts = self.arrow_actions(rep);
        let mut action = Vec::with_capacity(self.alg.dim());
        for (pi, p) in self.paths.iter().enumerate() {
            for m in &acts[pi] {
                let mut big = Matrix::zeros(f, dim, dim);
                big.set_block(offs[p.target], offs[p.source], m);
                action.push(big);
            }
        }
        let module = Module::new_unchecked(self.alg.clone(), dim, action);
        if self.max_degree.is_some() {
            module.verify()?;
        }
        Ok(module)
    }

    /// The representation of a module, with the basis of every `e_i V` used.
    pub fn module_to_rep(&self, v: &Module) -> Result<(Representation, Vec<Matrix>)> {
        let f = self.ps.field();
        let q = &self.ps.quiver;
        let mut frames = Vec::new();
        let mut modules = Vec::new();
        for i in 0..q.num_vertices() {
            let frame = Frame::new(v.act(&self.vertex_unit(i)).image_matrix());
            let a = &self.ps.algebras[i];
            let action = (0..a.dim())
                .map(|b| frame.restrict(&v.act(&self.embed_vertex(i, &a.basis_vector(b)))))
                .collect();
            modules.push(Module::new_unchecked(a.clone(), frame.dim(), action));
            frames.push(frame);
        }
        let mut maps = Vec::new();
        for a in 0..q.num_arrows() {
            let arrow = q.arrow(a);
            let b = &self.ps.bimodules[a];
            let ds = frames[arrow.source].dim();
            let mut cols = Vec::with_capacity(b.dim() * ds);
            for x in 0..b.dim() {
                let ax = v.act(&self.embed_arrow(a, &unit_vec(f, b.dim(), x)));
                for m in 0..ds {
                    cols.push(frames[arrow.target].coords(&ax.apply(&frames[arrow.source].basis.col(m))));
                }
            }
            let on_pairs = Matrix::from_cols(f, frames[arrow.target].dim(), &cols);
            let ts = tensor_over(&b.as_right(), &modules[arrow.source])?;
            maps.push(ts.descend(&on_pairs));
        }
        let rep = Representation::new_unchecked(self.ps.clone(), modules, maps)?;
        Ok((rep, frames.into_iter().map(|fr| fr.basis).collect()))
    }

    /// The two-term projective resolution of a locally projective module.
    pub fn standard_resolution(&self, rep: &Representation) -> Result<StandardResolution> {
        if !rep.is_locally_projective()? {
            return Err(Error::NotLocallyProjective);
        }
        let f = self.ps.field();
        let q = &self.ps.quiver;
        let t = &self.alg;
        let module = self.rep_to_module(rep)?;
        let m_offs = rep.offsets();
        let left_t = t.left_regular_actions();
        let cols_of: Vec<Vec<usize>> = (0..q.num_vertices()).map(|i| self.column_indices(i)).collect();
        let pos_in = |i: usize, g: usize| cols_of[i].iter().position(|&c| c == g);
        let t_eps = |i: usize| -> Bimodule {
            let idx = &cols_of[i];
            let a = &self.ps.algebras[i];
            let lact = left_t.iter().map(|m| m.select(idx, idx)).collect();
            let ract = (0..a.dim())
                .map(|b| t.right_mult_matrix(&self.embed_vertex(i, &a.basis_vector(b))).select(idx, idx))
                .collect();
            Bimodule::new_unchecked(t.clone(), a.clone(), idx.len(), lact, ract)
        };
        let teps: Vec<Bimodule> = (0..q.num_vertices()).map(t_eps).collect();
        let mut p0_parts = Vec::new();
        let mut p0_ts = Vec::new();
        for i in 0..q.num_vertices() {
            let ts = tensor_over(&teps[i].as_right(), &rep.modules[i])?;
            p0_parts.push(induced_module(t, &ts, &teps[i], rep.modules[i].dim()));
            p0_ts.push(ts);
        }
        let mut p1_parts = Vec::new();
        let mut p1_ts = Vec::new();
        for a in 0..q.num_arrows() {
            let arrow = q.arrow(a);
            let n_a = rep.tensor_module(a);
            let ts = tensor_over(&teps[arrow.target].as_right(), &n_a)?;
            p1_parts.push(induced_module(t, &ts, &teps[arrow.target], n_a.dim()));
            p1_ts.push(ts);
        }
        let p0_offs = prefix(&p0_parts.iter().map(Module::dim).collect::<Vec<_>>());
        let p1_offs = prefix(&p1_parts.iter().map(Module::dim).collect::<Vec<_>>());
        let (d0, d1) = (*p0_offs.last().unwrap(), *p1_offs.last().unwrap());
        let mut d = Matrix::zeros(f, d0, d1);
        for a in 0..q.num_arrows() {
            let arrow = q.arrow(a);
            let (s, tt) = (arrow.source, arrow.target);
            let ts = &p1_ts[a];
            let b = &self.ps.bimodules[a];
            for u in 0..ts.dim() {
                let (pl, n) = ts.pair(u);
                let (h, m) = rep.tensors[a].pair(n);
                let p_global = cols_of[tt][pl];
                let ph = t.mul(&unit_vec(f, t.dim(), p_global), &self.embed_arrow(a, &unit_vec(f, b.dim(), h)));
                let ph_local: Vector = cols_of[s].iter().map(|&c| ph[c].clone()).collect();
                debug_assert!(ph.iter().enumerate().all(|(c, x)| x.is_zero() || pos_in(s, c).is_some()));
                let first = p0_ts[s].element(&ph_local, &unit_vec(f, rep.modules[s].dim(), m));
                let hm = rep.maps[a].apply(&rep.tensors[a].element(&unit_vec(f, b.dim(), h), &unit_vec(f, rep.modules[s].dim(), m)));
                let second = p0_ts[tt].element(&unit_vec(f, cols_of[tt].len(), pl), &hm);
                for (k, x) in first.into_iter().enumerate() {
                    let e = d.get_mut(p0_offs[s] + k, p1_offs[a] + u);
                    *e = &*e + &x;
                }
                for (k, x) in second.into_iter().enumerate() {
                    let e = d.get_mut(p0_offs[tt] + k, p1_offs[a] + u);
                    *e = &*e - &x;
                }
            }
        }
        let mut eps = Matrix::zeros(f, module.dim(), d0);
        for i in 0..q.num_vertices() {
            let ts = &p0_ts[i];
            for u in 0..ts.dim() {
                let (pl, m) = ts.pair(u);
                let mut mv = vec![f.zero(); module.dim()];
                mv[m_offs[i] + m] = f.one();
                let img = module.action(cols_of[i][pl]).apply(&mv);
                for (k, x) in img.into_iter().enumerate() {
                    eps.set(k, p0_offs[i] + u, x);
                }
            }
        }
        let p0 = direct_sum_or_zero(t, &p0_parts);
        let p1 = direct_sum_or_zero(t, &p1_parts);
        let exact = eps.mul(&d).is_zero() && d.rank() == d1 && eps.rank() == module.dim() && d0 == d1 + module.dim();
        Ok(StandardResolution { p1, p0, d, eps, exact })
    }

    /// The six conditions relating homological dimensions over the tensor
    /// algebra to local ones, for vertex algebras that are `n`-Iwanaga-Gorenstein.
    pub fn gorenstein_conditions(&self, n: usize, u: &Module, bound: usize) -> Result<GorensteinReport> {
        if let Some(v) = self.ps.first_non_gorenstein_vertex(n)? {
            return Err(Error::NotLocallyGorenstein(self.ps.quiver.vertices()[v].clone(), n));
        }
        let (rep, _) = self.module_to_rep(u)?;
        let pd = u.proj_dim(bound.max(n + 1))?;
        let id = u.inj_dim(bound.max(n + 1))?;
        let mut local_pd = true;
        let mut local_id = true;
        for m in &rep.modules {
            local_pd &= m.proj_dim(n)?.is_at_most(n);
            local_id &= m.inj_dim(n)?.is_at_most(n);
        }
        Ok(GorensteinReport {
            values: [pd.is_at_most(n + 1), pd.is_finite(), id.is_at_most(n + 1), id.is_finite(), local_pd, local_id],
            bound: bound.max(n + 1),
            proj_dim: pd,
            inj_dim: id,
        })
    }

    /// Gorenstein projectivity through injective in-maps and a local test of
    /// their cokernels.
    pub fn is_gorenstein_projective(&self, x: &Module, bound: usize) -> Result<Tri> {
        let (rep, _) = self.module_to_rep(x)?;
        let mut result = Tri::True;
        for i in 0..self.ps.quiver.num_vertices() {
            let inmap = rep.in_map(i);
            if inmap.rank() < inmap.cols() {
                return Ok(Tri::False);
            }
            let m = &rep.modules[i];
            let image: Vec<Vector> = (0..inmap.cols()).map(|c| inmap.col(c)).collect();
            let coker = m.quotient(&image).module;
            match local_gorenstein_projective(&self.ps.algebras[i], &coker, bound)? {
                Tri::False => return Ok(Tri::False),
                Tri::Unknown => result = Tri::Unknown,
                Tri::True => {}
            }
        }
        Ok(result)
    }
}

/// Three-valued answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    True,
    False,
    Unknown,
}

/// Gorenstein projectivity over a single algebra: every module over a
/// selfinjective algebra qualifies; over an Iwanaga-Gorenstein algebra of
/// injective dimension `n` it amounts to `Ext^k(C, A) = 0` for `k = 1..n`.
pub fn local_gorenstein_projective(a: &Arc<Algebra>, c: &Module, bound: usize) -> Result<Tri> {
    let reg = Module::regular(a.clone());
    let id = reg.inj_dim(bound)?;
    if id == Dimension::Exact(0) {
        return Ok(Tri::True);
    }
    let top = match id {
        Dimension::Exact(n) => n,
        Dimension::AtLeast(_) => bound,
    };
    for k in 1..=top {
        if ext_dim(c, &reg, k)? != 0 {
            return Ok(Tri::False);
        }
    }
    Ok(if id.is_finite() { Tri::True } else { Tri::Unknown })
}

/// Values of the six conditions, in order: projdim at most `n+1`, finite
/// projdim, injdim at most `n+1`, finite injdim, local projdim at most `n`,
/// local injdim at most `n`. Finiteness is tested up to `bound`.
#[derive(Clone, Debug)]
pub struct GorensteinReport {
    pub values: [bool; 6],
    pub bound: usize,
    pub proj_dim: Dimension,
    pub inj_dim: Dimension,
}

impl GorensteinReport {
    pub fn all_agree(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }
}

/// `P1 -> P0 -> M` with the differential and augmentation.
#[derive(Clone, Debug)]
pub struct StandardResolution {
    pub p1: Module,
    pub p0: Module,
    pub d: Matrix,
    pub eps: Matrix,
    pub exact: bool,
}

fn induced_module(t: &Arc<Algebra>, ts: &TensorSpace, left: &Bimodule, right_dim: usize) -> Module {
    let f = t.field();
    let id = Matrix::identity(f, right_dim);
    let action = (0..t.dim()).map(|b| ts.induced(left.left_action(b), &id)).collect();
    Module::new_unchecked(t.clone(), ts.dim(), action)
}

fn direct_sum_or_zero(t: &Arc<Algebra>, parts: &[Module]) -> Module {
    if parts.is_empty() {
        Module::zero(t.clone())
    } else {
        Module::direct_sum(&parts.iter().collect::<Vec<_>>())
    }
}

fn prefix(dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0];
    for d in dims {
        out.push(out.last().unwrap() + d);
    }
    out
}

fn unit_vec(f: Field, n: usize, i: usize) -> Vector {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

/// A subspace with a fixed basis and a left inverse on chosen rows.
#[derive(Clone, Debug)]
pub struct Frame {
    pub basis: Matrix,
    rows: Vec<usize>,
    inv: Matrix,
}

impl Frame {
    pub fn new(basis: Matrix) -> Frame {
        let rows = basis.transpose().pivot_columns();
        let inv = basis.select_rows(&rows).inverse().expect("frame basis is independent");
        Frame { basis, rows, inv }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of a vector of the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Vector {
        let sel: Vector = self.rows.iter().map(|&r| v[r].clone()).collect();
        self.inv.apply(&sel)
    }

    /// The restriction of an operator preserving the subspace.
    pub fn restrict(&self, m: &Matrix) -> Matrix {
        self.inv.mul(&m.select_rows(&self.rows).mul(&self.basis))
    }

    /// Coordinates of every column of a map landing in the subspace.
    pub fn coords_matrix(&self, m: &Matrix) -> Matrix {
        self.inv.mul(&m.select_rows(&self.rows))
    }
}

/// A representation: a module at every vertex and, for every arrow, a map
/// `Lambda_a (x) M_s -> M_t` on the balanced tensor product.
#[derive(Clone, Debug)]
pub struct Representation {
    ps: Arc<ProSpecies>,
    modules: Vec<Module>,
    maps: Vec<Matrix>,
    tensors: Vec<TensorSpace>,
}

impl Representation {
    /// Builds a representation, checking that every arrow map is linear over
    /// the target algebra.
    pub fn new(ps: Arc<ProSpecies>, modules: Vec<Module>, maps: Vec<Matrix>) -> Result<Representation> {
        let rep = Representation::new_unchecked(ps, modules, maps)?;
        rep.verify()?;
        Ok(rep)
    }

    /// Builds a representation, checking shapes only.
    pub fn new_unchecked(ps: Arc<ProSpecies>, modules: Vec<Module>, maps: Vec<Matrix>) -> Result<Representation> {
        let q = ps.quiver.clone();
        if modules.len() != q.num_vertices() || maps.len() != q.num_arrows() {
            return Err(Error::ShapeMismatch("one module per vertex and one map per arrow required".into()));
        }
        let modules: Vec<Module> = modules.iter().enumerate().map(|(v, m)| m.over(&ps.algebras[v])).collect();
        let mut tensors = Vec::new();
        for a in 0..q.num_arrows() {
            let arrow = q.arrow(a);
            let ts = tensor_over(&ps.bimodules[a].as_right(), &modules[arrow.source])?;
            if maps[a].rows() != modules[arrow.target].dim() || maps[a].cols() != ts.dim() {
                return Err(Error::ShapeMismatch(format!("map on arrow {} has the wrong shape", arrow.label)));
            }
            tensors.push(ts);
        }
        Ok(Representation { ps, modules, maps, tensors })
    }

    fn verify(&self) -> Result<()> {
        let q = &self.ps.quiver;
        for a in 0..q.num_arrows() {
            let t = q.arrow(a).target;
            let n = self.tensor_module(a);
            let lt = &self.ps.algebras[t];
            for g in lt.generators().iter().chain(lt.idempotents()) {
                if self.maps[a].mul(&n.act(g)) != self.modules[t].act(g).mul(&self.maps[a]) {
                    return Err(Error::NotAModule(format!("map on arrow {} is not linear", q.arrow(a).label)));
                }
            }
        }
        Ok(())
    }

    /// The zero representation.
    pub fn zero(ps: Arc<ProSpecies>) -> Representation {
        let f = ps.field();
        let modules: Vec<Module> = ps.algebras.iter().map(|a| Module::zero(a.clone())).collect();
        let maps = (0..ps.quiver.num_arrows()).map(|_| Matrix::zeros(f, 0, 0)).collect();
        Representation::new_unchecked(ps, modules, maps).expect("zero representation")
    }

    /// The representation with `m` at vertex `v` and zero elsewhere.
    pub fn at_vertex(ps: Arc<ProSpecies>, v: usize, m: Module) -> Representation {
        let f = ps.field();
        let mut modules: Vec<Module> = ps.algebras.iter().map(|a| Module::zero(a.clone())).collect();
        modules[v] = m;
        let maps = (0..ps.quiver.num_arrows())
            .map(|a| {
                let arrow = ps.quiver.arrow(a);
                let ts = tensor_over(&ps.bimodules[a].as_right(), &modules[arrow.source]).expect("projective bimodule");
                Matrix::zeros(f, modules[arrow.target].dim(), ts.dim())
            })
            .collect();
        Representation::new_unchecked(ps, modules, maps).expect("vertex representation")
    }

    pub fn prospecies(&self) -> &Arc<ProSpecies> {
        &self.ps
    }

    pub fn module(&self, v: usize) -> &Module {
        &self.modules[v]
    }

    pub fn modules(&self) -> &[Module] {
        &self.modules
    }

    pub fn map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// `Lambda_a (x) M_s` for arrow `a`.
    pub fn tensor(&self, a: usize) -> &TensorSpace {
        &self.tensors[a]
    }

    /// `Lambda_a (x) M_s` as a module over the target algebra.
    pub fn tensor_module(&self, a: usize) -> Module {
        tensor_module(&self.ps.bimodules[a], &self.tensors[a])
    }

    /// Matrix of `m -> M_a(x (x) m)`.
    pub fn arrow_action(&self, a: usize, x: &[Scalar]) -> Matrix {
        let s = self.ps.quiver.arrow(a).source;
        let f = self.ps.field();
        let ds = self.modules[s].dim();
        let cols: Vec<Vector> = (0..ds).map(|m| self.maps[a].apply(&self.tensors[a].element(x, &unit_vec(f, ds, m)))).collect();
        Matrix::from_cols(f, self.modules[self.ps.quiver.arrow(a).target].dim(), &cols)
    }

    /// Offsets of the vertex modules in the total space.
    pub fn offsets(&self) -> Vec<usize> {
        prefix(&self.modules.iter().map(Module::dim).collect::<Vec<_>>())
    }

    pub fn dim(&self) -> usize {
        self.modules.iter().map(Module::dim).sum()
    }

    /// Whether every vertex module is projective over its algebra.
    pub fn is_locally_projective(&self) -> Result<bool> {
        for m in &self.modules {
            if !m.is_projective()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The unsigned in-map `(+)_{t(a)=i} Lambda_a (x) M_s(a) -> M_i`.
    pub fn in_map(&self, i: usize) -> Matrix {
        let f = self.ps.field();
        let arrows = self.ps.quiver.arrows_into(i);
        let blocks: Vec<&Matrix> = arrows.iter().map(|&a| &self.maps[a]).collect();
        if blocks.is_empty() {
            return Matrix::zeros(f, self.modules[i].dim(), 0);
        }
        Matrix::hstack(f, self.modules[i].dim(), &blocks)
    }
}

impl Representation {
    /// `id (x) f_s: Lambda_a (x) M_s -> Lambda_a (x) M'_s` for arrow `a`.
    pub fn tensor_map(&self, other: &Representation, a: usize, f_s: &Matrix) -> Matrix {
        map_between(&self.tensors[a], &other.tensors[a], &Matrix::identity(self.ps.field(), self.ps.bimodules[a].dim()), f_s)
    }

    /// Whether per-vertex maps form a morphism to `other`.
    pub fn is_morphism(&self, other: &Representation, fs: &[Matrix]) -> bool {
        let q = &self.ps.quiver;
        (0..q.num_arrows()).all(|a| {
            let arrow = q.arrow(a);
            fs[arrow.target].mul(&self.maps[a]) == other.maps[a].mul(&self.tensor_map(other, a, &fs[arrow.source]))
        })
    }

    /// Per-vertex blocks of a block diagonal map given in the coordinates
    /// used by [`WordAlgebra::rep_to_module`].
    pub fn split_map(&self, other: &Representation, total: &Matrix) -> Vec<Matrix> {
        let (ro, co) = (other.offsets(), self.offsets());
        (0..self.modules.len())
            .map(|v| total.select(&(ro[v]..ro[v + 1]).collect::<Vec<_>>(), &(co[v]..co[v + 1]).collect::<Vec<_>>()))
            .collect()
    }

    /// Block diagonal matrix of per-vertex maps, in the coordinates used by
    /// [`WordAlgebra::rep_to_module`].
    pub fn total_map(&self, other: &Representation, fs: &[Matrix]) -> Matrix {
        let (ro, co) = (other.offsets(), self.offsets());
        let mut m = Matrix::zeros(self.ps.field(), *ro.last().unwrap(), *co.last().unwrap());
        for (v, f) in fs.iter().enumerate() {
            m.set_block(ro[v], co[v], f);
        }
        m
    }
}

/// The map `M (x) N -> M' (x) N'` induced by `a (x) b` between tensor spaces.
pub fn map_between(from: &TensorSpace, to: &TensorSpace, a: &Matrix, b: &Matrix) -> Matrix {
    let cols: Vec<Vector> = (0..from.dim())
        .map(|s| {
            let (i, j) = from.pair(s);
            to.element(&a.col(i), &b.col(j))
        })
        .collect();
    Matrix::from_cols(a.field(), to.dim(), &cols)
}

/// The module over the left algebra of `b` given by `b (x) M`.
pub fn tensor_module(b: &Bimodule, ts: &TensorSpace) -> Module {
    let id = Matrix::identity(b.field(), ts.factor_dims().1);
    let action = (0..b.left_algebra().dim()).map(|x| ts.induced(b.left_action(x), &id)).collect();
    Module::new_unchecked(b.left_algebra().clone(), ts.dim(), action)
}

/// A basis of the morphisms between two representations, as per-vertex maps.
pub fn rep_hom_basis(t: &WordAlgebra, a: &Representation, b: &Representation) -> Result<Vec<Vec<Matrix>>> {
    let h = hom_space(&t.rep_to_module(a)?, &t.rep_to_module(b)?);
    Ok(h.basis().iter().map(|g| a.split_map(b, g)).collect())
}

/// Whether two representations of the same pro-species are isomorphic, through
/// their modules over the tensor algebra.
pub fn representations_isomorphic(t: &WordAlgebra, a: &Representation, b: &Representation) -> Result<IsoResult> {
    Ok(is_isomorphic(&t.rep_to_module(a)?, &t.rep_to_module(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn fixtures_are_valid() {
        let a = fixtures::fix_a(q());
        let b = fixtures::fix_b(q());
        let c = fixtures::fix_c(q());
        assert_eq!(a.valuation().unwrap(), Valuation { vertices: vec![1, 1], arrows: vec![(1, 1)] });
        assert_eq!(b.valuation().unwrap(), Valuation { vertices: vec![3, 3], arrows: vec![(1, 1)] });
        assert_eq!(c.valuation().unwrap(), Valuation { vertices: vec![2, 2], arrows: vec![(1, 1)] });
    }

    #[test]
    fn simple_bimodule_is_not_projective() {
        let d = fixtures::truncated_poly(q(), 2);
        let quiver = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let s = presented_bimodule(&d, &d, &[(0, 0)], &[vec![(0, d.basis_vector(1), d.unit().clone())], vec![(0, d.unit().clone(), d.basis_vector(1))]])
            .unwrap();
        assert_eq!(s.dim(), 1);
        let err = ProSpecies::new(quiver, vec![d.clone(), d.clone()], vec![s]).unwrap_err();
        assert!(matches!(err, Error::NotProjectiveLeft(_) | Error::NotProjectiveRight(_)));
    }

    #[test]
    fn gls_shapes() {
        let k = fixtures::truncated_poly(q(), 1);
        let d = fixtures::truncated_poly(q(), 2);
        assert_eq!(gls_bimodule(&d, &d, 1, 1, 1).unwrap().dim(), 2);
        assert_eq!(gls_bimodule(&d, &k, 2, 1, 1).unwrap().dim(), 2);
        assert_eq!(gls_bimodule(&k, &d, 1, 2, 1).unwrap().dim(), 2);
        assert_eq!(gls_bimodule(&d, &d, 1, 1, 2).unwrap().dim(), 4);
        assert!(gls_bimodule(&d, &k, 1, 1, 1).is_err());
    }

    #[test]
    fn tensor_algebra_dimensions() {
        for (ps, dim) in [(fixtures::fix_a(q()), 3), (fixtures::fix_b(q()), 9), (fixtures::fix_c(q()), 6)] {
            let t = tensor_algebra(&Arc::new(ps)).unwrap();
            assert_eq!(t.algebra().dim(), dim);
            t.algebra().verify().unwrap();
            assert_eq!(t.algebra().jacobson_radical().unwrap().len(), t.algebra().trace_form_radical().unwrap().len());
        }
    }

    #[test]
    fn cyclic_quiver_rejected() {
        let k = Arc::new(Algebra::ground(q()));
        let quiver = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let ps = Arc::new(ProSpecies::new(quiver, vec![k.clone()], vec![Bimodule::regular(k)]).unwrap());
        assert_eq!(tensor_algebra(&ps).unwrap_err(), Error::CyclicQuiver);
        assert_eq!(truncated_tensor_algebra(&ps, 3).unwrap().algebra().dim(), 4);
    }

    #[test]
    fn rep_module_round_trip() {
        let ps = Arc::new(fixtures::fix_b(q()));
        let t = tensor_algebra(&ps).unwrap();
        let reg = Module::regular(t.algebra().clone());
        let (rep, frames) = t.module_to_rep(&reg).unwrap();
        let back = t.rep_to_module(&rep).unwrap();
        back.verify().unwrap();
        let c = Matrix::hstack(q(), reg.dim(), &frames.iter().collect::<Vec<_>>());
        for b in 0..t.algebra().dim() {
            assert_eq!(reg.action(b).mul(&c), c.mul(back.action(b)));
        }
        let z = Representation::zero(ps.clone());
        assert_eq!(t.rep_to_module(&z).unwrap().dim(), 0);
    }

    #[test]
    fn fix_a_simple_rep() {
        let ps = Arc::new(fixtures::fix_a(q()));
        let t = tensor_algebra(&ps).unwrap();
        let k = ps.algebra(0).clone();
        let m = Module::regular(k.clone());
        let rep = Representation::new(ps.clone(), vec![m.clone(), m.over(ps.algebra(1))], vec![Matrix::identity(q(), 1)]).unwrap();
        let v = t.rep_to_module(&rep).unwrap();
        v.verify().unwrap();
        assert_eq!(v.dim(), 2);
        assert!(is_isomorphic(&v, &Module::projective(t.algebra().clone(), 0)).is_iso());
    }

    #[test]
    fn standard_resolutions_are_exact() {
        for ps in [fixtures::fix_a(q()), fixtures::fix_b(q()), fixtures::fix_c(q())] {
            let ps = Arc::new(ps);
            let t = tensor_algebra(&ps).unwrap();
            let reg = Module::regular(t.algebra().clone());
            let (rep, _) = t.module_to_rep(&reg).unwrap();
            let res = t.standard_resolution(&rep).unwrap();
            assert!(res.exact);
            assert!(res.p0.is_projective().unwrap() && res.p1.is_projective().unwrap());
            assert!(res.p0.is_homomorphism(&reg, &res.eps));
            assert!(res.p1.is_homomorphism(&res.p0, &res.d));
            for v in 0..ps.quiver().num_vertices() {
                let local = Representation::at_vertex(ps.clone(), v, Module::regular(ps.algebra(v).clone()));
                let r = t.standard_resolution(&local).unwrap();
                assert!(r.exact);
                assert!(t.rep_to_module(&local).unwrap().proj_dim(1).unwrap().is_at_most(1));
            }
        }
    }

    #[test]
    fn gorenstein_conditions_on_fix_c() {
        let ps = Arc::new(fixtures::fix_c(q()));
        let t = tensor_algebra(&ps).unwrap();
        let reg = Module::regular(t.algebra().clone());
        let rep = t.gorenstein_conditions(0, &reg, 8).unwrap();
        assert!(rep.values.iter().all(|&v| v));
        let s1 = Module::simple(t.algebra().clone(), 0).unwrap();
        let r = t.gorenstein_conditions(0, &s1, 8).unwrap();
        assert!(!r.values[4]);
        assert!(r.all_agree());
        assert_eq!(r.proj_dim, Dimension::AtLeast(9));
        let fa = Arc::new(fixtures::fix_b(q()));
        let tb = tensor_algebra(&fa).unwrap();
        assert!(matches!(tb.gorenstein_conditions(0, &Module::regular(tb.algebra().clone()), 8), Err(Error::NotLocallyGorenstein(_, 0))));
    }

    #[test]
    fn gorenstein_projectivity() {
        let ps = Arc::new(fixtures::fix_c(q()));
        let t = tensor_algebra(&ps).unwrap();
        let reg = Module::regular(t.algebra().clone());
        let d = ps.algebra(0).clone();
        let zero_map = Representation::new(
            ps.clone(),
            vec![Module::regular(d.clone()), Module::regular(ps.algebra(1).clone())],
            vec![Matrix::zeros(q(), 2, 2)],
        )
        .unwrap();
        let simple_in = Representation::new(
            ps.clone(),
            vec![Module::simple(d.clone(), 0).unwrap(), Module::regular(ps.algebra(1).clone())],
            vec![Matrix::from_i64(q(), &[&[0], &[1]])],
        )
        .unwrap();
        let cases = [
            (reg.clone(), Tri::True),
            (t.rep_to_module(&zero_map).unwrap(), Tri::False),
            (t.rep_to_module(&simple_in).unwrap(), Tri::True),
            (Module::simple(t.algebra().clone(), 0).unwrap(), Tri::False),
        ];
        for (x, expected) in cases {
            assert_eq!(t.is_gorenstein_projective(&x, 8).unwrap(), expected);
            assert_eq!(ext_dim(&x, &reg, 1).unwrap() == 0, expected == Tri::True);
        }
        assert!(!t.rep_to_module(&simple_in).unwrap().is_projective().unwrap());
    }
}
