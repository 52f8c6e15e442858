//! Dualisable pro-species, their doubles and preprojective algebras.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Vector};
use crate::modules::{Bimodule, HomSpace, IsoResult, Module, TensorSpace};
use crate::prospecies::{truncated_tensor_algebra, ProSpecies, Representation, WordAlgebra};
use crate::quiver::Path;

/// Default truncation degree for preprojective algebras.
pub const DEFAULT_TRUNCATION: usize = 12;

/// `Hom` of right modules from the bimodule on `a` to the source algebra,
/// as a bimodule over the source and target algebras.
pub fn dual_bimodule(ps: &ProSpecies, a: usize) -> Bimodule {
    ps.bimodule(a).right_dual().0
}

/// Outcome of comparing the two duals of every arrow bimodule.
#[derive(Clone, Debug)]
pub enum Dualisability {
    /// Per arrow, an isomorphism from the left dual to the right dual.
    Certified(Vec<Matrix>),
    /// The duals of this arrow are certainly not isomorphic.
    NotDualisable(usize),
    /// The randomized isomorphism search failed on this arrow.
    ProbablyNot(usize),
}

impl Dualisability {
    pub fn is_certified(&self) -> bool {
        matches!(self, Dualisability::Certified(_))
    }
}

/// Compares `Hom` of left modules into the target algebra with `Hom` of right
/// modules into the source algebra, as bimodules.
pub fn is_dualisable(ps: &ProSpecies) -> Dualisability {
    let mut phis = Vec::new();
    for (a, b) in ps.bimodules().iter().enumerate() {
        let (rd, _) = b.right_dual();
        let (ld, _) = b.left_dual();
        match ld.is_isomorphic(&rd) {
            IsoResult::Iso(phi) => phis.push(phi),
            IsoResult::NotIso => return Dualisability::NotDualisable(a),
            IsoResult::ProbablyNot => return Dualisability::ProbablyNot(a),
        }
    }
    Dualisability::Certified(phis)
}

/// Data pairing the bimodule on a double arrow `b` with the one on `b*`:
/// elements `y_k` of the bimodule on `b*` and `z_k` of the bimodule on `b`,
/// together with the evaluation `ev[z][u]` of basis elements `z` on `b` and
/// `u` on `b*` in the algebra at the target of `b`. They satisfy
/// `sum_k ev(z, y_k) z_k = z` for every `z`.
#[derive(Clone, Debug)]
pub struct ArrowDuality {
    pub ys: Vec<Vector>,
    pub zs: Vec<Vector>,
    pub ev: Vec<Vec<Vector>>,
}

/// A dualisable pro-species together with its double.
#[derive(Clone, Debug)]
pub struct DoubleProSpecies {
    base: Arc<ProSpecies>,
    double: Arc<ProSpecies>,
    phis: Vec<Matrix>,
    duality: Vec<ArrowDuality>,
}

impl DoubleProSpecies {
    /// Builds the double, with the right dual on every starred arrow.
    pub fn new(base: Arc<ProSpecies>) -> Result<DoubleProSpecies> {
        let phis = match is_dualisable(&base) {
            Dualisability::Certified(p) => p,
            Dualisability::NotDualisable(a) | Dualisability::ProbablyNot(a) => {
                return Err(Error::NotDualisable(base.quiver().arrow(a).label.clone()))
            }
        };
        let q = base.quiver();
        let n1 = q.num_arrows();
        let mut bimodules: Vec<Bimodule> = base.bimodules().to_vec();
        let mut rights: Vec<HomSpace> = Vec::new();
        let mut lefts: Vec<HomSpace> = Vec::new();
        for b in base.bimodules() {
            let (rd, rh) = b.right_dual();
            let (_, lh) = b.left_dual();
            bimodules.push(rd);
            rights.push(rh);
            lefts.push(lh);
        }
        let algebras = base.algebras().to_vec();
        let double = Arc::new(ProSpecies::new(q.double()?, algebras, bimodules)?);
        let f = base.field();
        let mut duality = vec![
            ArrowDuality { ys: Vec::new(), zs: Vec::new(), ev: Vec::new() };
            2 * n1
        ];
        for a in 0..n1 {
            let b = base.bimodule(a);
            let phi = &phis[a];
            let phi_inv = phi.inverse().expect("certified isomorphism");
            let left = base.left_dual_basis(a);
            let right = base.right_dual_basis(a);
            let ys = left.fs.iter().map(|h| phi.apply(&lefts[a].coordinates(h).expect("left dual"))).collect();
            let ev = (0..b.dim())
                .map(|z| {
                    (0..rights[a].dim())
                        .map(|u| lefts[a].combine(&phi_inv.col(u)).col(z))
                        .collect()
                })
                .collect();
            duality[a] = ArrowDuality { ys, zs: left.xs.clone(), ev };
            let zs: Vec<Vector> = right.fs.iter().map(|g| rights[a].coordinates(g).expect("right dual")).collect();
            let ev = (0..rights[a].dim())
                .map(|z| {
                    let zm = rights[a].combine(&unit(f, rights[a].dim(), z));
                    (0..b.dim()).map(|u| zm.col(u)).collect()
                })
                .collect();
            duality[n1 + a] = ArrowDuality { ys: right.xs.clone(), zs, ev };
        }
        Ok(DoubleProSpecies { base, double, phis, duality })
    }

    pub fn base(&self) -> &Arc<ProSpecies> {
        &self.base
    }

    pub fn double(&self) -> &Arc<ProSpecies> {
        &self.double
    }

    /// Certified isomorphisms from the left to the right dual, per arrow.
    pub fn certificates(&self) -> &[Matrix] {
        &self.phis
    }

    /// Number of arrows of the original quiver.
    pub fn num_base_arrows(&self) -> usize {
        self.base.quiver().num_arrows()
    }

    /// The partner `b*` of a double arrow.
    pub fn star(&self, b: usize) -> usize {
        let n1 = self.num_base_arrows();
        if b < n1 {
            b + n1
        } else {
            b - n1
        }
    }

    /// `+1` on original arrows and `-1` on starred ones.
    pub fn sign(&self, b: usize) -> i64 {
        if b < self.num_base_arrows() {
            1
        } else {
            -1
        }
    }

    pub fn duality(&self, b: usize) -> &ArrowDuality {
        &self.duality[b]
    }

    /// `f: Lambda_b (x) M -> N` to `M -> Lambda_{b*} (x) N`, through
    /// `m -> sum_k y_k (x) f(z_k (x) m)`.
    pub fn vee(&self, b: usize, ts_in: &TensorSpace, ts_out: &TensorSpace, f: &Matrix) -> Matrix {
        let field = self.base.field();
        let dm = ts_in.factor_dims().1;
        let d = &self.duality[b];
        let cols: Vec<Vector> = (0..dm)
            .map(|m| {
                let em = unit(field, dm, m);
                let mut out = vec![field.zero(); ts_out.dim()];
                for (y, z) in d.ys.iter().zip(&d.zs) {
                    let n = f.apply(&ts_in.element(z, &em));
                    for (o, v) in out.iter_mut().zip(ts_out.element(y, &n)) {
                        *o = &*o + &v;
                    }
                }
                out
            })
            .collect();
        Matrix::from_cols(field, ts_out.dim(), &cols)
    }

    /// Inverse of [`DoubleProSpecies::vee`]: `g: M -> Lambda_{b*} (x) N` to
    /// `Lambda_b (x) M -> N` through `z (x) m -> sum ev(z, u) n` for
    /// `g(m) = sum u (x) n`.
    pub fn wedge(&self, b: usize, ts_in: &TensorSpace, ts_out: &TensorSpace, n: &Module, g: &Matrix) -> Matrix {
        let field = self.base.field();
        let (dz, dm) = ts_in.factor_dims();
        let d = &self.duality[b];
        let mut on_pairs = Matrix::zeros(field, n.dim(), dz * dm);
        for z in 0..dz {
            for m in 0..dm {
                let mut out = vec![field.zero(); n.dim()];
                for s in 0..ts_out.dim() {
                    let c = g.get(s, m);
                    if c.is_zero() {
                        continue;
                    }
                    let (u, nn) = ts_out.pair(s);
                    let col = n.act(&d.ev[z][u]).col(nn);
                    for (o, v) in out.iter_mut().zip(col) {
                        o.add_mul(c, &v);
                    }
                }
                for (r, v) in out.into_iter().enumerate() {
                    on_pairs.set(r, z * dm + m, v);
                }
            }
        }
        ts_in.descend(&on_pairs)
    }

    /// The vertex components of the preprojective relation in a truncated
    /// tensor algebra of the double.
    pub fn relation(&self, tbar: &WordAlgebra) -> Vec<Vector> {
        let q = self.double.quiver();
        let field = self.base.field();
        let dim = tbar.algebra().dim();
        let mut comps = vec![vec![field.zero(); dim]; q.num_vertices()];
        for b in 0..q.num_arrows() {
            let bs = self.star(b);
            let path = Path::from_arrows(q, &[bs, b]).expect("composable");
            let Some(pi) = tbar.path_index(&path) else { continue };
            let ts = tbar.tensor_space(pi).expect("length two block");
            let sign = field.from_i64(self.sign(bs));
            let d = &self.duality[b];
            let v = path.source;
            for (y, z) in d.ys.iter().zip(&d.zs) {
                let block = ts.element(y, z);
                for (o, x) in comps[v][tbar.block(pi)].iter_mut().zip(block) {
                    o.add_mul(&sign, &x);
                }
            }
        }
        comps
    }

    /// The in-map `(+) sgn(g) M_g` over arrows `g` of the double into `i`.
    pub fn in_map(&self, rep: &Representation, i: usize) -> Matrix {
        let field = self.base.field();
        let arrows = self.double.quiver().arrows_into(i);
        let blocks: Vec<Matrix> = arrows.iter().map(|&g| rep.map(g).scale(&field.from_i64(self.sign(g)))).collect();
        Matrix::hstack(field, rep.module(i).dim(), &blocks.iter().collect::<Vec<_>>())
    }

    /// The out-map `M_i -> (+) Lambda_g (x) M_s(g)` over the same arrows as
    /// the in-map, with components `vee(M_{g*})`.
    pub fn out_map(&self, rep: &Representation, i: usize) -> Matrix {
        let field = self.base.field();
        let arrows = self.double.quiver().arrows_into(i);
        let blocks: Vec<Matrix> =
            arrows.iter().map(|&g| self.vee(self.star(g), rep.tensor(self.star(g)), rep.tensor(g), rep.map(self.star(g)))).collect();
        Matrix::vstack(field, rep.module(i).dim(), &blocks.iter().collect::<Vec<_>>())
    }

    /// Whether the in-map after the out-map vanishes at every vertex.
    pub fn is_pi_rep(&self, rep: &Representation) -> bool {
        (0..self.double.quiver().num_vertices()).all(|i| self.in_map(rep, i).mul(&self.out_map(rep, i)).is_zero())
    }
}

/// A truncated graded quotient of the tensor algebra of the double by the
/// ideal of the preprojective relation.
#[derive(Clone, Debug)]
pub struct Preprojective {
    double: Arc<DoubleProSpecies>,
    tbar: WordAlgebra,
    relation: Vec<Vector>,
    algebra: Arc<Algebra>,
    proj: Matrix,
    survivors: Vec<usize>,
    graded_dims: Vec<usize>,
    finite_certified: bool,
    truncation: usize,
}

/// The preprojective algebra truncated above degree `n`.
pub fn preprojective_algebra(ps: &Arc<ProSpecies>, n: usize) -> Result<Preprojective> {
    Preprojective::new(Arc::new(DoubleProSpecies::new(ps.clone())?), n)
}

impl Preprojective {
    pub fn new(double: Arc<DoubleProSpecies>, n: usize) -> Result<Preprojective> {
        if n < 2 {
            return Err(Error::Unsupported("preprojective truncation below degree 2".into()));
        }
        let tbar = truncated_tensor_algebra(double.double(), n)?;
        let relation = double.relation(&tbar);
        let ideal = tbar.algebra().ideal_basis(&relation);
        let (quot, proj, survivors) = tbar.algebra().quotient(&ideal);
        let degrees = tbar.algebra().degrees().expect("graded").to_vec();
        let mut graded_dims = vec![0; n + 1];
        for &s in &survivors {
            graded_dims[degrees[s]] += 1;
        }
        let finite_certified = graded_dims.iter().skip(1).any(|&d| d == 0);
        Ok(Preprojective {
            double,
            tbar,
            relation,
            algebra: Arc::new(quot),
            proj,
            survivors,
            graded_dims,
            finite_certified,
            truncation: n,
        })
    }

    pub fn double(&self) -> &Arc<DoubleProSpecies> {
        &self.double
    }

    /// The truncated tensor algebra of the double.
    pub fn tensor_algebra(&self) -> &WordAlgebra {
        &self.tbar
    }

    /// Vertex components of the relation, in the tensor algebra of the double.
    pub fn relation(&self) -> &[Vector] {
        &self.relation
    }

    /// The sum of the vertex components of the relation.
    pub fn relation_total(&self) -> Vector {
        let f = self.field();
        let mut c = vec![f.zero(); self.tbar.algebra().dim()];
        for comp in &self.relation {
            for (o, x) in c.iter_mut().zip(comp) {
                *o = &*o + x;
            }
        }
        c
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.double.base().field()
    }

    /// Projection from the tensor algebra of the double.
    pub fn projection(&self) -> &Matrix {
        &self.proj
    }

    /// Basis elements of the tensor algebra of the double that survive.
    pub fn survivors(&self) -> &[usize] {
        &self.survivors
    }

    pub fn graded_dims(&self) -> &[usize] {
        &self.graded_dims
    }

    pub fn finite_certified(&self) -> bool {
        self.finite_certified
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Image of the unit of the vertex algebra at `v`.
    pub fn vertex_unit(&self, v: usize) -> Vector {
        self.proj.apply(&self.tbar.vertex_unit(v))
    }

    /// Basis of the ideal generated by `1 - e_i`.
    pub fn vertex_ideal(&self, i: usize) -> Result<Vec<Vector>> {
        if !self.finite_certified {
            return Err(Error::NotFiniteDimensional);
        }
        let e = self.vertex_unit(i);
        let seed: Vector = self.algebra.unit().iter().zip(&e).map(|(u, x)| u - x).collect();
        Ok(self.algebra.ideal_basis(&[seed]))
    }

    /// A module over the quotient viewed over the tensor algebra of the double.
    pub fn pull_back(&self, m: &Module) -> Module {
        let f = self.field();
        let action = (0..self.tbar.algebra().dim())
            .map(|b| {
                let mut a = Matrix::zeros(f, m.dim(), m.dim());
                for (s, c) in self.proj.col(b).iter().enumerate() {
                    if !c.is_zero() {
                        a.add_scaled(c, m.action(s));
                    }
                }
                a
            })
            .collect();
        Module::new_unchecked(self.tbar.algebra().clone(), m.dim(), action)
    }

    /// A module over the tensor algebra of the double annihilated by the
    /// relation, as a module over the quotient.
    pub fn push_down(&self, m: &Module) -> Result<Module> {
        if !self.annihilated_by_relation(m) {
            return Err(Error::NotPiModule);
        }
        let action = self.survivors.iter().map(|&s| m.action(s).clone()).collect();
        Ok(Module::new_unchecked(self.algebra.clone(), m.dim(), action))
    }

    /// Whether the relation acts by zero on a module over the tensor algebra
    /// of the double.
    pub fn annihilated_by_relation(&self, m: &Module) -> bool {
        self.relation.iter().all(|c| m.act(c).is_zero())
    }

    /// Whether a module over the tensor algebra of the double is a module
    /// over the quotient, through the in- and out-maps.
    pub fn is_pi_module(&self, m: &Module) -> Result<bool> {
        let (rep, _) = self.tbar.module_to_rep(m)?;
        Ok(self.double.is_pi_rep(&rep))
    }

    /// The representation of the double behind a module over the quotient.
    pub fn rep_of(&self, m: &Module) -> Result<(Representation, Vec<Matrix>)> {
        self.tbar.module_to_rep(&self.pull_back(m))
    }

    /// The module over the quotient of a representation satisfying the relation.
    pub fn module_of(&self, rep: &Representation) -> Result<Module> {
        if !self.double.is_pi_rep(rep) {
            return Err(Error::NotPiModule);
        }
        self.push_down(&self.tbar.rep_to_module(rep)?)
    }

    /// Simple module at vertex algebra idempotent `a`.
    pub fn simple(&self, a: usize) -> Result<Module> {
        Module::simple(self.algebra.clone(), a)
    }
}

/// Basis of `k^n` as a vector.
fn unit(f: Field, n: usize, i: usize) -> Vector {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Scalar;
    use crate::fixtures;
    use crate::modules::{random_module, tensor_vec};
    use crate::quiver::Quiver;
    use rand::SeedableRng;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn duals_of_fixtures() {
        let c = fixtures::fix_c(q());
        let d = dual_bimodule(&c, 0);
        assert_eq!(d.dim(), 2);
        assert_eq!(dual_bimodule(&fixtures::fix_a(q()), 0).dim(), 1);
        let b = fixtures::fix_b(q());
        assert!(dual_bimodule(&b, 0).is_isomorphic(b.bimodule(0)).is_iso());
        for ps in [fixtures::fix_a(q()), b, c] {
            assert!(is_dualisable(&ps).is_certified());
        }
    }

    #[test]
    fn mismatched_duals_are_not_dualisable() {
        let a = fixtures::path_a2(q());
        let k = fixtures::truncated_poly(q(), 1);
        let quiver = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let b = crate::prospecies::presented_bimodule(&a, &k, &[(0, 0)], &[]).unwrap();
        let ps = ProSpecies::new(quiver, vec![k, a], vec![b]).unwrap();
        assert!(matches!(is_dualisable(&ps), Dualisability::NotDualisable(0)));
        assert!(matches!(DoubleProSpecies::new(Arc::new(ps)), Err(Error::NotDualisable(_))));
    }

    #[test]
    fn fix_a_preprojective() {
        let ps = Arc::new(fixtures::fix_a(q()));
        let pi = preprojective_algebra(&ps, 3).unwrap();
        assert_eq!(pi.graded_dims(), &[2, 2, 0, 0]);
        assert!(pi.finite_certified());
        assert_eq!(pi.algebra().dim(), 4);
        pi.algebra().verify().unwrap();
        let c = pi.relation_total();
        let nonzero: Vec<usize> = (0..c.len()).filter(|&i| !c[i].is_zero()).collect();
        assert_eq!(nonzero.len(), 2);
        let mut coeffs: Vec<i64> = nonzero.iter().map(|&i| c[i].to_i64().unwrap()).collect();
        coeffs.sort();
        assert_eq!(coeffs, vec![-1, 1]);
        assert_eq!(pi.vertex_ideal(0).unwrap().len(), 3);
        assert_eq!(pi.vertex_ideal(1).unwrap().len(), 3);
    }

    #[test]
    fn edgeless_preprojective() {
        let k = fixtures::truncated_poly(q(), 2);
        let quiver = Quiver::new(&["1", "2"], &[]).unwrap();
        let ps = Arc::new(ProSpecies::new(quiver, vec![k.clone(), k], vec![]).unwrap());
        let pi = preprojective_algebra(&ps, 2).unwrap();
        assert_eq!(pi.graded_dims(), &[4, 0, 0]);
        assert!(pi.finite_certified());
        assert!(pi.relation_total().iter().all(Scalar::is_zero));
        let i1 = pi.vertex_ideal(0).unwrap();
        assert_eq!(i1.len(), 2);
    }

    #[test]
    fn orientation_independence() {
        for ps in [fixtures::fix_a(q()), fixtures::fix_c(q())] {
            let flipped = flip(&ps);
            let a = preprojective_algebra(&Arc::new(ps), 6).unwrap();
            let b = preprojective_algebra(&Arc::new(flipped), 6).unwrap();
            assert_eq!(a.graded_dims(), b.graded_dims());
        }
    }

    fn flip(ps: &ProSpecies) -> ProSpecies {
        let q = ps.quiver();
        let a = q.arrow(0);
        let quiver = Quiver::new(
            &q.vertices().iter().map(String::as_str).collect::<Vec<_>>(),
            &[(a.label.as_str(), q.vertices()[a.target].as_str(), q.vertices()[a.source].as_str())],
        )
        .unwrap();
        ProSpecies::new(quiver, ps.algebras().to_vec(), vec![dual_bimodule(ps, 0)]).unwrap()
    }

    #[test]
    fn vee_wedge_inverse() {
        let ps = Arc::new(fixtures::fix_c(q()));
        let dp = DoubleProSpecies::new(ps.clone()).unwrap();
        let pi = Preprojective::new(Arc::new(dp.clone()), 4).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..4 {
            let m = random_module(pi.algebra(), 4, &mut rng).unwrap();
            let (rep, _) = pi.rep_of(&m).unwrap();
            for b in 0..2 {
                let bs = dp.star(b);
                let g = dp.vee(b, rep.tensor(b), rep.tensor(bs), rep.map(b));
                let t = dp.double().quiver().arrow(b).target;
                let back = dp.wedge(b, rep.tensor(b), rep.tensor(bs), rep.module(t), &g);
                assert_eq!(&back, rep.map(b));
            }
        }
    }

    #[test]
    fn pi_module_tests_agree() {
        let ps = Arc::new(fixtures::fix_a(q()));
        let pi = preprojective_algebra(&ps, 3).unwrap();
        let reg = Module::regular(pi.algebra().clone());
        assert!(pi.is_pi_module(&pi.pull_back(&reg)).unwrap());
        let pi2 = preprojective_algebra(&ps, 2).unwrap();
        let treg = Module::regular(pi2.tensor_algebra().algebra().clone());
        assert_eq!(treg.dim(), 6);
        assert!(!pi2.is_pi_module(&treg).unwrap());
        assert!(!pi2.annihilated_by_relation(&treg));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for d in 1..6 {
            let m = random_module(pi.tensor_algebra().algebra(), d, &mut rng).unwrap();
            assert_eq!(pi.is_pi_module(&m).unwrap(), pi.annihilated_by_relation(&m));
        }
    }

    #[test]
    fn relation_independent_of_dual_basis_choice() {
        let ps = Arc::new(fixtures::fix_c(q()));
        let a = preprojective_algebra(&ps, 3).unwrap();
        let b = preprojective_algebra(&ps, 3).unwrap();
        assert_eq!(a.relation(), b.relation());
        let bim = ps.bimodule(0);
        let other: Vec<Vector> = vec![bim.left_act(&ps.algebra(1).unit().iter().map(|x| x + x).collect::<Vec<_>>()).col(0), vec![q().one(), q().one()]];
        let (ts1, c1) = crate::modules::casimir(&bim.as_right(), None).unwrap();
        let (_, c2) = crate::modules::casimir(&bim.as_right(), Some(&other)).unwrap();
        assert_eq!(ts1.dim(), 2);
        assert_eq!(c1, c2);
    }

    #[test]
    fn bimodule_complex_composite_vanishes() {
        let ps = Arc::new(fixtures::fix_c(q()));
        let pi = preprojective_algebra(&ps, 4).unwrap();
        let t = pi.tensor_algebra();
        let dp = pi.double();
        let d = pi.algebra().dim();
        let mut sum = vec![q().zero(); d * d];
        for b in 0..dp.double().quiver().num_arrows() {
            let bs = dp.star(b);
            let sign = q().from_i64(dp.sign(bs));
            let dual = dp.duality(b);
            for (y, z) in dual.ys.iter().zip(&dual.zs) {
                let prod = t.algebra().mul(&t.embed_arrow(bs, y), &t.embed_arrow(b, z));
                let p = pi.projection().apply(&prod);
                let one = pi.algebra().unit();
                for (o, x) in sum.iter_mut().zip(tensor_vec(q(), &p, one)) {
                    o.add_mul(&sign, &x);
                }
                for (o, x) in sum.iter_mut().zip(tensor_vec(q(), one, &p)) {
                    o.add_mul(&sign, &x);
                }
            }
        }
        assert!(sum.iter().all(Scalar::is_zero));
    }
}
