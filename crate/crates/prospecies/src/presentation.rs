//! Quivers with relations for tensor and preprojective algebras, obtained from
//! projective covers of the arrow bimodules.

use std::sync::Arc;

use crate::algebra::{Algebra, BoundQuiver, PathCombo, PathReducer};
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Matrix, Scalar, Vector};
use crate::modules::Bimodule;
use crate::preprojective::{DoubleProSpecies, Preprojective};
use crate::prospecies::{tensor_algebra, truncated_tensor_algebra, ProSpecies, WordAlgebra};
use crate::quiver::{Arrow, Path, Quiver};

/// Where an arrow of a presentation comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArrowOrigin {
    /// Arrow `arrow` of the quiver of the algebra at `vertex`.
    Vertex { vertex: String, arrow: String },
    /// Top element `index` of the bimodule on `arrow`.
    Cover { arrow: String, index: usize },
}

/// Where a relation of a presentation comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationOrigin {
    /// A relation of the algebra at a vertex (`R_i`).
    Vertex(String),
    /// A generator of the kernel of the cover of an arrow bimodule (`R_a`).
    Arrow(String),
    /// The component of the preprojective relation at a vertex of the presentation.
    Casimir(String),
}

impl RelationOrigin {
    pub fn tag(&self) -> String {
        match self {
            RelationOrigin::Vertex(v) => format!("R_{v}"),
            RelationOrigin::Arrow(a) => format!("R_{a}"),
            RelationOrigin::Casimir(v) => format!("casimir_{v}"),
        }
    }
}

/// A quiver with relations together with the origin of every arrow and relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub bound: BoundQuiver,
    pub arrow_origins: Vec<ArrowOrigin>,
    pub relation_origins: Vec<RelationOrigin>,
}

impl Presentation {
    pub fn quiver(&self) -> &Quiver {
        &self.bound.quiver
    }

    pub fn relations(&self) -> &[PathCombo] {
        &self.bound.relations
    }

    /// Relations carrying the given origin kind.
    pub fn relations_where(&self, pred: impl Fn(&RelationOrigin) -> bool) -> Vec<&PathCombo> {
        self.bound.relations.iter().zip(&self.relation_origins).filter(|(_, o)| pred(o)).map(|(r, _)| r).collect()
    }

    /// Whether every relation term has length at least two.
    pub fn is_admissible(&self) -> bool {
        self.bound.relations.iter().all(|r| r.iter().all(|(c, p)| c.is_zero() || p.len() >= 2))
    }

    /// The algebra of the presentation.
    pub fn algebra(&self, field: crate::exactla::Field) -> Result<Algebra> {
        Algebra::from_bound_quiver(field, &self.bound)
    }

    /// The presentation truncated above tensor degree `n`: arrows from covers
    /// have weight one and vertex arrows weight zero.
    pub fn truncated(&self, n: usize) -> BoundQuiver {
        let weights = self.arrow_origins.iter().map(|o| usize::from(matches!(o, ArrowOrigin::Cover { .. }))).collect();
        BoundQuiver { weights: Some(weights), max_weight: Some(n), ..self.bound.clone() }
    }
}

/// A projective cover `P -> Lambda_a` of an arrow bimodule, with
/// `P = (+)_k Lambda_t e_b (x) e_a Lambda_s` and one summand per top element.
#[derive(Clone, Debug)]
pub struct BimoduleCover {
    /// `(b, a)` idempotent indices of each summand.
    pub summands: Vec<(usize, usize)>,
    /// The top element of each summand, in `e_b Lambda_a e_a`.
    pub tops: Vec<Vector>,
    /// Basis indices of `Lambda_t e_b` for each summand.
    pub left_bases: Vec<Vec<usize>>,
    /// Basis indices of `e_a Lambda_s` for each summand.
    pub right_bases: Vec<Vec<usize>>,
    pub offsets: Vec<usize>,
    pub cover: Bimodule,
    pub projection: Matrix,
    /// A minimal generating set of the kernel, in cover coordinates.
    pub kernel_generators: Vec<Vector>,
}

impl BimoduleCover {
    /// The summand and basis pair behind a cover coordinate.
    pub fn locate(&self, c: usize) -> (usize, usize, usize) {
        let k = self.offsets.partition_point(|&o| o <= c) - 1;
        let r = self.right_bases[k].len();
        let local = c - self.offsets[k];
        (k, self.left_bases[k][local / r], self.right_bases[k][local % r])
    }
}

/// Homogeneous elements of a bimodule spanning a complement of
/// `rad(L) B + B rad(R)`, with the idempotent pair of each.
fn bimodule_top(b: &Bimodule, elements: &[Vector]) -> Result<Vec<(usize, usize, Vector)>> {
    let f = b.field();
    let mut ech = Echelon::new(f, b.dim());
    let lrad = b.left_algebra().jacobson_radical()?;
    let rrad = b.right_algebra().jacobson_radical()?;
    for v in elements {
        for r in &lrad {
            ech.insert(b.left_act(r).apply(v));
        }
        for r in &rrad {
            ech.insert(b.right_act(r).apply(v));
        }
    }
    let mut out = Vec::new();
    for (bi, eb) in b.left_algebra().idempotents().iter().enumerate() {
        for (ai, ea) in b.right_algebra().idempotents().iter().enumerate() {
            let w = b.left_act(eb).mul(&b.right_act(ea));
            for v in elements {
                let c = normalise(w.apply(v));
                if c.iter().any(|x| !x.is_zero()) && ech.insert(c.clone()) {
                    out.push((bi, ai, c));
                }
            }
        }
    }
    Ok(out)
}

/// Scales a vector so that its first non-zero entry is one.
fn normalise(v: Vector) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = lead.inv();
            v.iter().map(|x| x * &inv).collect()
        }
        None => v,
    }
}

fn fixed_by(alg: &Algebra, e: &Vector, left: bool) -> Vec<usize> {
    (0..alg.dim())
        .filter(|&j| {
            let b = alg.basis_vector(j);
            let p = if left { alg.mul(e, &b) } else { alg.mul(&b, e) };
            p == b
        })
        .collect()
}

pub fn bimodule_projective_cover(ps: &ProSpecies, a: usize) -> Result<BimoduleCover> {
    let b = ps.bimodule(a);
    let f = ps.field();
    let (lt, ls) = (b.left_algebra().clone(), b.right_algebra().clone());
    let basis: Vec<Vector> = (0..b.dim()).map(|i| unit(f, b.dim(), i)).collect();
    let top = bimodule_top(b, &basis)?;
    let mut summands = Vec::new();
    let mut tops = Vec::new();
    let mut left_bases = Vec::new();
    let mut right_bases = Vec::new();
    let mut offsets = vec![0];
    for (bi, ai, v) in top {
        let lb = fixed_by(&lt, &lt.idempotents()[bi], false);
        let rb = fixed_by(&ls, &ls.idempotents()[ai], true);
        if lb.is_empty() || rb.is_empty() {
            return Err(Error::Unsupported("vertex algebra basis is not adapted to its idempotents".into()));
        }
        offsets.push(offsets.last().unwrap() + lb.len() * rb.len());
        summands.push((bi, ai));
        tops.push(v);
        left_bases.push(lb);
        right_bases.push(rb);
    }
    let dim = *offsets.last().unwrap();
    let mut proj_cols = Vec::with_capacity(dim);
    for k in 0..summands.len() {
        for &p in &left_bases[k] {
            for &q in &right_bases[k] {
                proj_cols.push(b.left_act(&lt.basis_vector(p)).mul(&b.right_act(&ls.basis_vector(q))).apply(&tops[k]));
            }
        }
    }
    let projection = Matrix::from_cols(f, b.dim(), &proj_cols);
    if projection.rank() != b.dim() {
        return Err(Error::NotAModule("top elements do not generate the bimodule".into()));
    }
    let action = |alg: &Arc<Algebra>, x: usize, left: bool| -> Matrix {
        let mut m = Matrix::zeros(f, dim, dim);
        for k in 0..summands.len() {
            let r = right_bases[k].len();
            for (ip, &p) in left_bases[k].iter().enumerate() {
                for (iq, &q) in right_bases[k].iter().enumerate() {
                    let col = offsets[k] + ip * r + iq;
                    if left {
                        let prod = alg.mul(&alg.basis_vector(x), &alg.basis_vector(p));
                        for (jp, &p2) in left_bases[k].iter().enumerate() {
                            m.set(offsets[k] + jp * r + iq, col, prod[p2].clone());
                        }
                    } else {
                        let prod = alg.mul(&alg.basis_vector(q), &alg.basis_vector(x));
                        for (jq, &q2) in right_bases[k].iter().enumerate() {
                            m.set(offsets[k] + ip * r + jq, col, prod[q2].clone());
                        }
                    }
                }
            }
        }
        m
    };
    let lact = (0..lt.dim()).map(|x| action(&lt, x, true)).collect();
    let ract = (0..ls.dim()).map(|x| action(&ls, x, false)).collect();
    let cover = Bimodule::new_unchecked(lt, ls, dim, lact, ract);
    let kernel = projection.kernel_basis();
    let kernel_generators = bimodule_top(&cover, &kernel)?.into_iter().map(|(_, _, v)| v).collect();
    Ok(BimoduleCover { summands, tops, left_bases, right_bases, offsets, cover, projection, kernel_generators })
}

fn unit(f: crate::exactla::Field, n: usize, i: usize) -> Vector {
    (0..n).map(|k| if k == i { f.one() } else { f.zero() }).collect()
}

/// The quiver of a presentation together with the maps from vertex quivers
/// and cover summands to its vertices and arrows.
struct Layout {
    quiver: Quiver,
    vertex_map: Vec<Vec<usize>>,
    vertex_arrow_map: Vec<Vec<usize>>,
    cover_arrow_map: Vec<Vec<usize>>,
    arrow_origins: Vec<ArrowOrigin>,
    covers: Vec<BimoduleCover>,
    reducers: Vec<Arc<PathReducer>>,
    arrow_endpoints: Vec<(usize, usize)>,
}

fn vertex_presentation(alg: &Algebra) -> Result<(&BoundQuiver, &Arc<PathReducer>)> {
    match (alg.bound_quiver(), alg.reducer()) {
        (Some(bq), Some(r)) => Ok((bq, r)),
        _ => Err(Error::Unsupported("vertex algebra without a quiver presentation".into())),
    }
}

fn layout(ps: &ProSpecies) -> Result<Layout> {
    let q = ps.quiver();
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    let mut arrow_origins = Vec::new();
    let mut vertex_map = Vec::new();
    let mut vertex_arrow_map = Vec::new();
    let mut reducers = Vec::new();
    for (i, label) in q.vertices().iter().enumerate() {
        let (bq, reducer) = vertex_presentation(ps.algebra(i))?;
        let inner = &bq.quiver;
        let base = vertices.len();
        vertices.extend(inner.vertices().iter().map(|v| format!("{label}.{v}")));
        vertex_map.push((base..vertices.len()).collect::<Vec<_>>());
        let mut amap = Vec::new();
        for x in inner.arrows() {
            amap.push(arrows.len());
            arrows.push(Arrow { label: format!("{label}.{}", x.label), source: base + x.source, target: base + x.target });
            arrow_origins.push(ArrowOrigin::Vertex { vertex: label.clone(), arrow: x.label.clone() });
        }
        vertex_arrow_map.push(amap);
        reducers.push(reducer.clone());
    }
    let mut covers = Vec::new();
    let mut cover_arrow_map = Vec::new();
    for a in 0..q.num_arrows() {
        let arrow = q.arrow(a);
        let cover = bimodule_projective_cover(ps, a)?;
        let mut amap = Vec::new();
        for (k, &(bi, ai)) in cover.summands.iter().enumerate() {
            amap.push(arrows.len());
            arrows.push(Arrow {
                label: format!("{}#{k}", arrow.label),
                source: vertex_map[arrow.source][ai],
                target: vertex_map[arrow.target][bi],
            });
            arrow_origins.push(ArrowOrigin::Cover { arrow: arrow.label.clone(), index: k });
        }
        cover_arrow_map.push(amap);
        covers.push(cover);
    }
    let quiver = Quiver::from_parts(vertices, arrows)?;
    let arrow_endpoints = q.arrows().iter().map(|x| (x.source, x.target)).collect();
    Ok(Layout { quiver, vertex_map, vertex_arrow_map, cover_arrow_map, arrow_origins, covers, reducers, arrow_endpoints })
}

impl Layout {
    /// A path of the vertex quiver at `i`, moved into the presentation quiver.
    fn lift_vertex_path(&self, i: usize, p: &Path) -> Path {
        if p.is_trivial() {
            Path::trivial(self.vertex_map[i][p.source])
        } else {
            let arrows: Vec<usize> = p.arrows.iter().map(|&x| self.vertex_arrow_map[i][x]).collect();
            Path::from_arrows(&self.quiver, &arrows).expect("vertex path stays composable")
        }
    }

    /// Basis element `j` of the algebra at vertex `i` as a path.
    fn vertex_basis_path(&self, i: usize, j: usize) -> Path {
        self.lift_vertex_path(i, self.reducers[i].basis_path(j))
    }

    /// An element of the algebra at `i` as a combination of paths.
    fn vertex_element(&self, i: usize, x: &[Scalar]) -> PathCombo {
        x.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (c.clone(), self.vertex_basis_path(i, j))).collect()
    }

    /// A cover coordinate of arrow `a` as the path `p a#k q`.
    fn cover_path(&self, a: usize, c: usize) -> Option<Path> {
        let cover = &self.covers[a];
        let (k, p, q) = cover.locate(c);
        let (s, t) = (self.source_of(a), self.target_of(a));
        let arrow = Path::arrow(&self.quiver, self.cover_arrow_map[a][k]);
        self.vertex_basis_path(t, p).compose(&arrow)?.compose(&self.vertex_basis_path(s, q))
    }

    fn source_of(&self, a: usize) -> usize {
        self.arrow_endpoints[a].0
    }

    fn target_of(&self, a: usize) -> usize {
        self.arrow_endpoints[a].1
    }

    /// An element of the cover of arrow `a` as a combination of paths.
    fn cover_element(&self, a: usize, y: &[Scalar]) -> PathCombo {
        y.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .filter_map(|(c, x)| self.cover_path(a, c).map(|p| (x.clone(), p)))
            .collect()
    }
}

/// Merges equal paths, drops zero terms and sorts terms deterministically.
fn simplify(q: &Quiver, combo: PathCombo) -> PathCombo {
    let mut out: PathCombo = Vec::new();
    for (c, p) in combo {
        match out.iter_mut().find(|(_, x)| *x == p) {
            Some((d, _)) => *d = &*d + &c,
            None => out.push((c, p)),
        }
    }
    out.retain(|(c, _)| !c.is_zero());
    out.sort_by(|(_, a), (_, b)| q.compare_paths(a, b));
    out
}

fn concat(q: &Quiver, left: &PathCombo, right: &PathCombo) -> PathCombo {
    let mut out = Vec::new();
    for (c, p) in left {
        for (d, r) in right {
            if let Some(pr) = p.compose(r) {
                out.push((c * d, pr));
            }
        }
    }
    simplify(q, out)
}

impl Layout {
    /// An element of block `pi` of a tensor algebra as a combination of paths.
    fn block_element(&self, t: &WordAlgebra, pi: usize, x: &[Scalar]) -> Result<PathCombo> {
        let path = &t.paths()[pi];
        if path.is_trivial() {
            return Ok(self.vertex_element(path.source, x));
        }
        let a0 = path.arrows[0];
        if path.len() == 1 {
            let cover = &self.covers[a0];
            let y = cover.projection.solve_vec(x).ok_or(Error::NoSolution)?;
            return Ok(simplify(&self.quiver, self.cover_element(a0, &y)));
        }
        let ts = t.tensor_space(pi).expect("long paths carry tensor spaces");
        let tail = t.path_index(&path.tail(t.prospecies().quiver())).expect("tail is enumerated");
        let arrow_block = t.path_index(&Path::arrow(t.prospecies().quiver(), a0)).expect("arrow is enumerated");
        let (dm, dn) = ts.factor_dims();
        let mut out = Vec::new();
        for (s, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (i, j) = ts.pair(s);
            let left = self.block_element(t, arrow_block, &unit(t.algebra().field(), dm, i))?;
            let right = self.block_element(t, tail, &unit(t.algebra().field(), dn, j))?;
            out.extend(concat(&self.quiver, &left, &right).into_iter().map(|(d, p)| (c * &d, p)));
        }
        Ok(simplify(&self.quiver, out))
    }

    /// An element of a tensor algebra as a combination of paths.
    fn element(&self, t: &WordAlgebra, v: &[Scalar]) -> Result<PathCombo> {
        let mut out = Vec::new();
        for pi in 0..t.paths().len() {
            let block = t.block(pi);
            let x = &v[block];
            if x.iter().any(|c| !c.is_zero()) {
                out.extend(self.block_element(t, pi, x)?);
            }
        }
        Ok(simplify(&self.quiver, out))
    }

    /// The image of each presentation arrow in a tensor algebra.
    fn arrow_images(&self, t: &WordAlgebra) -> Vec<Vector> {
        let mut images = vec![Vec::new(); self.quiver.num_arrows()];
        for (i, amap) in self.vertex_arrow_map.iter().enumerate() {
            for (x, &qa) in amap.iter().enumerate() {
                let inner = self.reducers[i].quiver();
                images[qa] = t.embed_vertex(i, &self.reducers[i].path_vector(&Path::arrow(inner, x)));
            }
        }
        for (a, amap) in self.cover_arrow_map.iter().enumerate() {
            for (k, &qa) in amap.iter().enumerate() {
                images[qa] = t.embed_arrow(a, &self.covers[a].tops[k]);
            }
        }
        images
    }

    fn vertex_images(&self, ps: &ProSpecies, t: &WordAlgebra) -> Vec<Vector> {
        let mut images = vec![Vec::new(); self.quiver.num_vertices()];
        for (i, vmap) in self.vertex_map.iter().enumerate() {
            for (a, &qv) in vmap.iter().enumerate() {
                images[qv] = t.embed_vertex(i, &ps.algebra(i).idempotents()[a]);
            }
        }
        images
    }
}

/// Evaluates a path given images of vertices and arrows.
fn evaluate(alg: &Algebra, vertices: &[Vector], arrows: &[Vector], p: &Path) -> Vector {
    if p.is_trivial() {
        return vertices[p.source].clone();
    }
    let mut acc = arrows[p.arrows[0]].clone();
    for &a in &p.arrows[1..] {
        acc = alg.mul(&acc, &arrows[a]);
    }
    acc
}

fn evaluate_combo(alg: &Algebra, vertices: &[Vector], arrows: &[Vector], combo: &PathCombo) -> Vector {
    let mut out = alg.zero_vector();
    for (c, p) in combo {
        for (o, x) in out.iter_mut().zip(evaluate(alg, vertices, arrows, p)) {
            o.add_mul(c, &x);
        }
    }
    out
}

fn tensor_presentation(ps: &ProSpecies) -> Result<(Presentation, Layout)> {
    let lay = layout(ps)?;
    let mut relations = Vec::new();
    let mut origins = Vec::new();
    for (i, label) in ps.quiver().vertices().iter().enumerate() {
        let (bq, _) = vertex_presentation(ps.algebra(i))?;
        for r in &bq.relations {
            let lifted: PathCombo = r.iter().map(|(c, p)| (c.clone(), lay.lift_vertex_path(i, p))).collect();
            relations.push(simplify(&lay.quiver, lifted));
            origins.push(RelationOrigin::Vertex(label.clone()));
        }
    }
    for (a, cover) in lay.covers.iter().enumerate() {
        for g in &cover.kernel_generators {
            let combo = simplify(&lay.quiver, lay.cover_element(a, g));
            if !combo.is_empty() {
                relations.push(combo);
                origins.push(RelationOrigin::Arrow(ps.quiver().arrow(a).label.clone()));
            }
        }
    }
    let bound = BoundQuiver::new(lay.quiver.clone(), relations);
    let p = Presentation { bound, arrow_origins: lay.arrow_origins.clone(), relation_origins: origins };
    Ok((p, lay))
}

/// The quiver with relations of the tensor algebra.
pub fn present_tensor_algebra(ps: &ProSpecies) -> Result<Presentation> {
    Ok(tensor_presentation(ps)?.0)
}

/// Outcome of rebuilding a presentation and comparing it with its source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationCheck {
    pub presented_dims: Vec<usize>,
    pub source_dims: Vec<usize>,
    /// Every relation maps to zero and the induced map on bases is invertible.
    pub iso_certified: bool,
}

impl PresentationCheck {
    pub fn passed(&self) -> bool {
        self.presented_dims == self.source_dims && self.iso_certified
    }
}

fn graded(alg: &Algebra, top: usize) -> Vec<usize> {
    let mut dims = vec![0; top + 1];
    if let Some(d) = alg.degrees() {
        for &x in d {
            if x <= top {
                dims[x] += 1;
            }
        }
    }
    dims
}

/// Rebuilds the algebra of a tensor algebra presentation and certifies an
/// isomorphism to the tensor algebra through the arrow images.
pub fn verify_tensor_presentation(ps: &Arc<ProSpecies>, p: &Presentation) -> Result<PresentationCheck> {
    let t = tensor_algebra(ps)?;
    let (_, lay) = tensor_presentation(ps)?;
    let source_dims = t.graded_dims();
    let top = source_dims.len().saturating_sub(1);
    let presented = Algebra::from_bound_quiver(ps.field(), &p.truncated(top))?;
    let arrows = lay.arrow_images(&t);
    let vertices = lay.vertex_images(ps, &t);
    let alg = t.algebra();
    let relations_vanish =
        p.relations().iter().all(|r| evaluate_combo(alg, &vertices, &arrows, r).iter().all(Scalar::is_zero));
    let reducer = presented.reducer().expect("built from a bound quiver");
    let cols: Vec<Vector> =
        (0..presented.dim()).map(|i| evaluate(alg, &vertices, &arrows, reducer.basis_path(i))).collect();
    let map = Matrix::from_cols(ps.field(), alg.dim(), &cols);
    let iso_certified = relations_vanish && map.is_square() && map.is_invertible();
    Ok(PresentationCheck { presented_dims: graded(&presented, top), source_dims, iso_certified })
}

/// The quiver with relations of the preprojective algebra: the presentation
/// of the tensor algebra of the double plus the components of the Casimir
/// relation at every vertex of the presentation quiver.
pub fn present_preprojective(ps: &Arc<ProSpecies>) -> Result<Presentation> {
    let dp = DoubleProSpecies::new(ps.clone())?;
    present_double(&dp)
}

fn present_double(dp: &DoubleProSpecies) -> Result<Presentation> {
    let double = dp.double();
    let (mut p, lay) = tensor_presentation(double)?;
    let tbar = truncated_tensor_algebra(double, 2)?;
    let relation = dp.relation(&tbar);
    let alg = tbar.algebra();
    for (i, c) in relation.iter().enumerate() {
        for (a, e) in double.algebra(i).idempotents().iter().enumerate() {
            let ex = tbar.embed_vertex(i, e);
            let component = alg.mul(&alg.mul(&ex, c), &ex);
            let combo = lay.element(&tbar, &component)?;
            if !combo.is_empty() {
                p.bound.relations.push(combo);
                p.relation_origins.push(RelationOrigin::Casimir(lay.quiver.vertices()[lay.vertex_map[i][a]].clone()));
            }
        }
    }
    Ok(p)
}

/// Rebuilds a preprojective presentation truncated at tensor degree `n` and
/// compares its graded dimensions with the preprojective algebra.
pub fn verify_preprojective_presentation(pi: &Preprojective, p: &Presentation) -> Result<PresentationCheck> {
    let n = pi.truncation();
    let presented = Algebra::from_bound_quiver(pi.field(), &p.truncated(n))?;
    let presented_dims = graded(&presented, n);
    let source_dims = pi.graded_dims().to_vec();
    let iso_certified = presented.dim() == pi.algebra().dim();
    Ok(PresentationCheck { presented_dims, source_dims, iso_certified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::fixtures;
    use crate::preprojective::preprojective_algebra;

    fn q() -> Field {
        Field::Rationals
    }

    fn labels(p: &Presentation, r: &PathCombo) -> Vec<(i64, String)> {
        r.iter().map(|(c, x)| (c.to_i64().unwrap(), x.display(p.quiver()).to_string())).collect()
    }

    #[test]
    fn cover_of_regular_path_algebra() {
        let ps = fixtures::fix_b(q());
        let cover = bimodule_projective_cover(&ps, 0).unwrap();
        assert_eq!(cover.summands.len(), 2);
        assert_eq!(cover.cover.dim(), 4);
        assert_eq!(cover.kernel_generators.len(), 1);
        let ps = fixtures::fix_a(q());
        assert!(bimodule_projective_cover(&ps, 0).unwrap().kernel_generators.is_empty());
    }

    #[test]
    fn fix_b_is_a_commutative_square() {
        let ps = Arc::new(fixtures::fix_b(q()));
        let p = present_tensor_algebra(&ps).unwrap();
        assert_eq!(p.quiver().num_vertices(), 4);
        assert_eq!(p.quiver().num_arrows(), 4);
        assert_eq!(p.relations().len(), 1);
        let r = &p.relations()[0];
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|(_, x)| x.len() == 2));
        assert_eq!(r[0].0.to_i64().unwrap(), -r[1].0.to_i64().unwrap());
        let check = verify_tensor_presentation(&ps, &p).unwrap();
        assert!(check.passed());
        assert_eq!(check.presented_dims.iter().sum::<usize>(), 9);
    }

    #[test]
    fn fix_a_is_a2() {
        let ps = Arc::new(fixtures::fix_a(q()));
        let p = present_tensor_algebra(&ps).unwrap();
        assert_eq!((p.quiver().num_vertices(), p.quiver().num_arrows(), p.relations().len()), (2, 1, 0));
        let check = verify_tensor_presentation(&ps, &p).unwrap();
        assert!(check.passed(), "{check:?}");
    }

    #[test]
    fn fix_c_has_gls_relations() {
        let ps = Arc::new(fixtures::fix_c(q()));
        let p = present_tensor_algebra(&ps).unwrap();
        assert_eq!(p.quiver().num_arrows(), 3);
        let vertex = p.relations_where(|o| matches!(o, RelationOrigin::Vertex(_)));
        assert_eq!(vertex.len(), 2);
        assert!(vertex.iter().all(|r| r.len() == 1 && r[0].1.len() == 2));
        let arrow = p.relations_where(|o| matches!(o, RelationOrigin::Arrow(_)));
        assert_eq!(arrow.len(), 1);
        let mut terms = labels(&p, arrow[0]);
        terms.sort();
        assert_eq!(terms, vec![(-1, "2.x*alpha#0".to_string()), (1, "alpha#0*1.x".to_string())]);
        assert!(verify_tensor_presentation(&ps, &p).unwrap().passed());
    }

    #[test]
    fn preprojective_presentations_match() {
        for ps in [fixtures::fix_a(q()), fixtures::fix_c(q()), fixtures::fix_b(q())] {
            let ps = Arc::new(ps);
            let p = present_preprojective(&ps).unwrap();
            let pi = preprojective_algebra(&ps, 4).unwrap();
            let check = verify_preprojective_presentation(&pi, &p).unwrap();
            assert_eq!(check.presented_dims, check.source_dims);
            assert!(p.is_admissible());
        }
    }

    #[test]
    fn fix_a_preprojective_relations() {
        let ps = Arc::new(fixtures::fix_a(q()));
        let p = present_preprojective(&ps).unwrap();
        let cas = p.relations_where(|o| matches!(o, RelationOrigin::Casimir(_)));
        assert_eq!(cas.len(), 2);
        assert!(cas.iter().all(|r| r.len() == 1 && r[0].1.len() == 2));
    }
}
