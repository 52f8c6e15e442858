//! The separated pro-species, the degree-one quotient of the tensor algebra
//! and the separation functor between their module categories.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Vector};
use crate::modules::{flatten, hom_space, is_selfinjective, tensor_over, Module, Quotient};
use crate::prospecies::{map_between, truncated_tensor_algebra, Frame, ProSpecies, Representation, WordAlgebra};

pub use crate::modules::stable_hom_dim;

/// The pro-species on the separated quiver: vertex `i` and `i_bar` both carry
/// `Lambda_i`, and `a_bar: i -> j_bar` carries `Lambda_a`.
pub fn separated_prospecies(ps: &ProSpecies) -> Result<ProSpecies> {
    let quiver = ps.quiver().separated()?;
    let mut algebras = ps.algebras().to_vec();
    algebras.extend(ps.algebras().iter().cloned());
    ProSpecies::new(quiver, algebras, ps.bimodules().to_vec())
}

/// The tensor algebra modulo its part of degree at least two.
#[derive(Clone, Debug)]
pub struct GammaAlgebra {
    word: WordAlgebra,
}

pub fn gamma_algebra(ps: &Arc<ProSpecies>) -> Result<GammaAlgebra> {
    Ok(GammaAlgebra { word: truncated_tensor_algebra(ps, 1)? })
}

impl GammaAlgebra {
    pub fn algebra(&self) -> &Arc<Algebra> {
        self.word.algebra()
    }

    pub fn word(&self) -> &WordAlgebra {
        &self.word
    }

    pub fn prospecies(&self) -> &Arc<ProSpecies> {
        self.word.prospecies()
    }

    /// Basis of the degree-one part `T_{>=1} / T_{>=2}`.
    pub fn r_basis(&self) -> Vec<Vector> {
        let alg = self.algebra();
        let degrees = alg.degrees().expect("graded");
        (0..alg.dim()).filter(|&b| degrees[b] == 1).map(|b| alg.basis_vector(b)).collect()
    }

    /// The graded projection from a (possibly truncated) tensor algebra of the
    /// same pro-species.
    pub fn projection_from(&self, t: &WordAlgebra) -> Matrix {
        let f = self.algebra().field();
        let mut m = Matrix::zeros(f, self.algebra().dim(), t.algebra().dim());
        for (pi, p) in t.paths().iter().enumerate() {
            if let Some(gi) = self.word.path_index(p) {
                let (src, dst) = (t.block(pi), self.word.block(gi));
                m.set_block(dst.start, src.start, &Matrix::identity(f, src.len()));
            }
        }
        m
    }

    /// The module of a representation whose composable arrow maps compose to zero.
    pub fn module_of(&self, rep: &Representation) -> Result<Module> {
        if !is_gamma_rep(rep) {
            return Err(Error::NotAModule("representation does not vanish in degree two".into()));
        }
        self.word.rep_to_module(rep)
    }

    pub fn rep_of(&self, m: &Module) -> Result<(Representation, Vec<Matrix>)> {
        self.word.module_to_rep(m)
    }
}

/// Whether `M_b(y (x) M_a(x (x) m)) = 0` for all composable arrows `a`, `b`.
pub fn is_gamma_rep(rep: &Representation) -> bool {
    let ps = rep.prospecies();
    let q = ps.quiver();
    for a in 0..q.num_arrows() {
        for b in q.arrows_out_of(q.arrow(a).target) {
            for x in 0..ps.bimodule(a).dim() {
                let first = rep.arrow_action(a, &unit(ps, a, x));
                for y in 0..ps.bimodule(b).dim() {
                    if !rep.arrow_action(b, &unit(ps, b, y)).mul(&first).is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn unit(ps: &ProSpecies, a: usize, x: usize) -> Vector {
    let f = ps.field();
    (0..ps.bimodule(a).dim()).map(|k| if k == x { f.one() } else { f.zero() }).collect()
}

/// The separation functor applied to a representation, with the image frames
/// and cokernel data needed to apply it to morphisms.
#[derive(Clone, Debug)]
pub struct Separation {
    pub rep: Representation,
    pub images: Vec<Frame>,
    pub quotients: Vec<Quotient>,
}

/// `F(M)_i = M_i / im M_in`, `F(M)_i_bar = im M_in`, with `F(M)_a_bar`
/// induced by `M_a`.
pub fn separation_functor(sep: &Arc<ProSpecies>, rep: &Representation) -> Result<Separation> {
    if !is_gamma_rep(rep) {
        return Err(Error::NotAModule("representation does not vanish in degree two".into()));
    }
    let ps = rep.prospecies();
    let q = ps.quiver();
    let n = q.num_vertices();
    let f = ps.field();
    let mut images = Vec::with_capacity(n);
    let mut quotients = Vec::with_capacity(n);
    for i in 0..n {
        let m_i = rep.module(i);
        let frame = Frame::new(rep.in_map(i).image_matrix());
        let image: Vec<Vector> = (0..frame.dim()).map(|c| frame.basis.col(c)).collect();
        quotients.push(m_i.quotient(&image));
        images.push(frame);
    }
    let mut modules: Vec<Module> = quotients.iter().map(|qt| qt.module.clone()).collect();
    for (i, frame) in images.iter().enumerate() {
        let m_i = rep.module(i);
        modules.push(Module::new_unchecked(m_i.algebra().clone(), frame.dim(), m_i.actions().iter().map(|x| frame.restrict(x)).collect()));
    }
    let mut maps = Vec::with_capacity(q.num_arrows());
    for a in 0..q.num_arrows() {
        let (s, t) = (q.arrow(a).source, q.arrow(a).target);
        let ts = tensor_over(&ps.bimodule(a).as_right(), &modules[s])?;
        let lift = map_between(&ts, rep.tensor(a), &Matrix::identity(f, ps.bimodule(a).dim()), &quotients[s].section);
        maps.push(images[t].coords_matrix(&rep.map(a).mul(&lift)));
    }
    let rep = Representation::new(sep.clone(), modules, maps)?;
    Ok(Separation { rep, images, quotients })
}

/// The separation functor on a morphism `fs: M -> M'`, as maps on the
/// unbarred vertices followed by the barred ones.
pub fn separation_on_hom(from: &Separation, to: &Separation, fs: &[Matrix]) -> Vec<Matrix> {
    let mut out: Vec<Matrix> =
        fs.iter().enumerate().map(|(i, g)| to.quotients[i].proj.mul(g).mul(&from.quotients[i].section)).collect();
    out.extend(fs.iter().enumerate().map(|(i, g)| to.images[i].coords_matrix(&g.mul(&from.images[i].basis))));
    out
}

/// Whether a representation is locally projective with surjective in-maps at
/// every vertex that is the target of an arrow.
pub fn is_in_rep_epi(rep: &Representation) -> Result<bool> {
    if !rep.is_locally_projective()? {
        return Ok(false);
    }
    let q = rep.prospecies().quiver();
    Ok((0..q.num_vertices()).all(|i| q.arrows_into(i).is_empty() || rep.in_map(i).rank() == rep.module(i).dim()))
}

/// A decomposition `M = X (+) N` with `X` having surjective in-maps and `N`
/// concentrated at targets of arrows with zero arrow maps.
#[derive(Clone, Debug)]
pub struct EpiSplit {
    pub x: Representation,
    pub n: Representation,
    pub x_inclusion: Vec<Matrix>,
    pub n_inclusion: Vec<Matrix>,
    /// Both inclusions are morphisms and jointly invertible at every vertex.
    pub certified: bool,
    /// Every vertex module of `N` is projective.
    pub n_projective: bool,
}

pub fn epi_projective_split(rep: &Representation) -> Result<EpiSplit> {
    let ps = rep.prospecies();
    let q = ps.quiver();
    let f = ps.field();
    for (v, a) in ps.algebras().iter().enumerate() {
        if !is_selfinjective(a)? {
            return Err(Error::NotLocallySelfinjective(q.vertices()[v].clone()));
        }
    }
    if !q.is_bipartite() {
        return Err(Error::NotBipartite);
    }
    if !rep.is_locally_projective()? {
        return Err(Error::NotLocallyProjective);
    }
    let n = q.num_vertices();
    let mut x_inclusion = Vec::with_capacity(n);
    let mut n_inclusion = Vec::with_capacity(n);
    let mut x_modules = Vec::with_capacity(n);
    let mut n_modules = Vec::with_capacity(n);
    for i in 0..n {
        let m_i = rep.module(i);
        let d = m_i.dim();
        if q.arrows_into(i).is_empty() {
            x_inclusion.push(Matrix::identity(f, d));
            n_inclusion.push(Matrix::zeros(f, d, 0));
            x_modules.push(m_i.clone());
            n_modules.push(Module::zero(m_i.algebra().clone()));
            continue;
        }
        let frame = Frame::new(rep.in_map(i).image_matrix());
        let x_i = Module::new_unchecked(m_i.algebra().clone(), frame.dim(), m_i.actions().iter().map(|a| frame.restrict(a)).collect());
        let retraction = retraction(m_i, &x_i, &frame.basis).ok_or_else(|| Error::NotSplit(q.vertices()[i].clone()))?;
        let kernel = retraction.kernel_matrix();
        let kvecs: Vec<Vector> = (0..kernel.cols()).map(|c| kernel.col(c)).collect();
        n_modules.push(m_i.submodule_from_basis(&kvecs));
        n_inclusion.push(kernel);
        x_inclusion.push(frame.basis.clone());
        x_modules.push(x_i);
    }
    let mut x_maps = Vec::with_capacity(q.num_arrows());
    let mut n_maps = Vec::with_capacity(q.num_arrows());
    for a in 0..q.num_arrows() {
        let (s, t) = (q.arrow(a).source, q.arrow(a).target);
        let ts = tensor_over(&ps.bimodule(a).as_right(), &x_modules[s])?;
        let lift = map_between(&ts, rep.tensor(a), &Matrix::identity(f, ps.bimodule(a).dim()), &x_inclusion[s]);
        let target = Frame::new(x_inclusion[t].clone());
        x_maps.push(target.coords_matrix(&rep.map(a).mul(&lift)));
        let nts = tensor_over(&ps.bimodule(a).as_right(), &n_modules[s])?;
        n_maps.push(Matrix::zeros(f, n_modules[t].dim(), nts.dim()));
    }
    let x = Representation::new(ps.clone(), x_modules, x_maps)?;
    let n_rep = Representation::new(ps.clone(), n_modules, n_maps)?;
    let jointly_invertible = (0..n).all(|i| {
        let both = Matrix::hstack(f, rep.module(i).dim(), &[&x_inclusion[i], &n_inclusion[i]]);
        both.is_square() && both.is_invertible()
    });
    let certified = jointly_invertible && x.is_morphism(rep, &x_inclusion) && n_rep.is_morphism(rep, &n_inclusion);
    let n_projective = n_rep.is_locally_projective()?;
    Ok(EpiSplit { x, n: n_rep, x_inclusion, n_inclusion, certified, n_projective })
}

/// A module map `r: M -> X` with `r . incl = id`, if one exists.
fn retraction(m: &Module, x: &Module, incl: &Matrix) -> Option<Matrix> {
    let f = m.field();
    let h = hom_space(m, x);
    if x.dim() == 0 {
        return Some(Matrix::zeros(f, 0, m.dim()));
    }
    let cols: Vec<Vector> = h.basis().iter().map(|g| flatten(&g.mul(incl))).collect();
    if cols.is_empty() {
        return None;
    }
    let sys = Matrix::from_cols(f, x.dim() * x.dim(), &cols);
    let c = sys.solve_vec(&flatten(&Matrix::identity(f, x.dim())))?;
    Some(h.combine(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::fixtures;
    use crate::modules::{is_indecomposable, is_isomorphic, Bimodule};
    use crate::prospecies::{rep_hom_basis, representations_isomorphic, tensor_algebra};
    use crate::quiver::Quiver;
    use rand::SeedableRng;

    fn q() -> Field {
        Field::Rationals
    }

    fn dims(rep: &Representation) -> Vec<usize> {
        rep.modules().iter().map(Module::dim).collect()
    }

    fn loop_instance() -> Arc<ProSpecies> {
        let d = fixtures::truncated_poly(q(), 2);
        let quiver = Quiver::new(&["1"], &[("a", "1", "1")]).unwrap();
        Arc::new(ProSpecies::new(quiver, vec![d.clone()], vec![Bimodule::regular(d)]).unwrap())
    }

    #[test]
    fn separated_instances() {
        let sep = Arc::new(separated_prospecies(&fixtures::fix_a(q())).unwrap());
        assert_eq!(sep.quiver().num_vertices(), 4);
        assert_eq!(sep.quiver().num_arrows(), 1);
        assert_eq!(tensor_algebra(&sep).unwrap().algebra().dim(), 5);
        let looped = Arc::new(separated_prospecies(&loop_instance()).unwrap());
        assert!(looped.quiver().is_acyclic());
        assert_eq!(tensor_algebra(&looped).unwrap().algebra().dim(), 6);
        let sep_c = separated_prospecies(&fixtures::fix_c(q())).unwrap();
        assert!(sep_c.algebras().iter().all(|a| a.dim() == 2));
    }

    #[test]
    fn gamma_dimensions() {
        let a = gamma_algebra(&Arc::new(fixtures::fix_a(q()))).unwrap();
        assert_eq!(a.algebra().dim(), 3);
        let b = gamma_algebra(&Arc::new(fixtures::fix_b(q()))).unwrap();
        assert_eq!(b.algebra().dim(), 9);
        let looped = gamma_algebra(&loop_instance()).unwrap();
        assert_eq!(looped.algebra().dim(), 4);
        assert_eq!(looped.r_basis().len(), 2);
        let alg = looped.algebra();
        let r = looped.r_basis();
        assert!(r.iter().all(|x| r.iter().all(|y| alg.mul(x, y).iter().all(|c| c.is_zero()))));
        let ps = Arc::new(fixtures::fix_c(q()));
        let t = tensor_algebra(&ps).unwrap();
        let g = gamma_algebra(&ps).unwrap();
        assert!(g.projection_from(&t).is_invertible());
    }

    #[test]
    fn separation_of_regular_fix_a() {
        let ps = Arc::new(fixtures::fix_a(q()));
        let sep = Arc::new(separated_prospecies(&ps).unwrap());
        let g = gamma_algebra(&ps).unwrap();
        let (rep, _) = g.rep_of(&Module::regular(g.algebra().clone())).unwrap();
        assert_eq!(dims(&rep), vec![1, 2]);
        let fm = separation_functor(&sep, &rep).unwrap();
        assert_eq!(dims(&fm.rep), vec![1, 1, 0, 1]);
        assert!(is_in_rep_epi(&fm.rep).unwrap());
        let zero_maps = Representation::at_vertex(ps.clone(), 1, Module::regular(ps.algebra(1).clone()));
        let fz = separation_functor(&sep, &zero_maps).unwrap();
        assert_eq!(dims(&fz.rep), vec![0, 1, 0, 0]);
    }

    #[test]
    fn separation_is_functorial() {
        let ps = Arc::new(fixtures::fix_c(q()));
        let sep = Arc::new(separated_prospecies(&ps).unwrap());
        let g = gamma_algebra(&ps).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let reps: Vec<Representation> = (0..3).map(|_| fixtures::random_locally_projective(&ps, 2, &mut rng)).collect();
        let fs: Vec<Separation> = reps.iter().map(|r| separation_functor(&sep, r).unwrap()).collect();
        let h01 = rep_hom_basis(g.word(), &reps[0], &reps[1]).unwrap();
        let h12 = rep_hom_basis(g.word(), &reps[1], &reps[2]).unwrap();
        for a in h01.iter().take(3) {
            for b in h12.iter().take(3) {
                let comp: Vec<Matrix> = b.iter().zip(a).map(|(y, x)| y.mul(x)).collect();
                let lhs = separation_on_hom(&fs[0], &fs[2], &comp);
                let fa = separation_on_hom(&fs[0], &fs[1], a);
                let fb = separation_on_hom(&fs[1], &fs[2], b);
                assert!(fs[0].rep.is_morphism(&fs[1].rep, &fa));
                let rhs: Vec<Matrix> = fb.iter().zip(&fa).map(|(y, x)| y.mul(x)).collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn separation_preserves_indecomposables() {
        let ps = Arc::new(fixtures::fix_c(q()));
        let sep = Arc::new(separated_prospecies(&ps).unwrap());
        let t_sep = tensor_algebra(&sep).unwrap();
        let g = gamma_algebra(&ps).unwrap();
        for a in 0..g.algebra().idempotents().len() {
            let p = Module::projective(g.algebra().clone(), a);
            let (rep, _) = g.rep_of(&p).unwrap();
            let fm = t_sep.rep_to_module(&separation_functor(&sep, &rep).unwrap().rep).unwrap();
            assert!(is_indecomposable(&p).unwrap() && is_indecomposable(&fm).unwrap());
            assert!(fm.is_projective().unwrap());
        }
    }

    #[test]
    fn split_on_separated_instances() {
        let ps = Arc::new(fixtures::fix_c(q()));
        let sep = Arc::new(separated_prospecies(&ps).unwrap());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..5 {
            let rep = fixtures::random_locally_projective(&sep, 2, &mut rng);
            let split = epi_projective_split(&rep).unwrap();
            assert!(split.certified && split.n_projective);
            assert!(is_in_rep_epi(&split.x).unwrap());
        }
        let all_zero = Representation::at_vertex(sep.clone(), 3, Module::regular(sep.algebra(3).clone()));
        let split = epi_projective_split(&all_zero).unwrap();
        assert_eq!((split.x.dim(), split.n.dim()), (0, 2));
    }

    #[test]
    fn non_split_image_is_reported() {
        // Multiplication by x on k[x]/(x^2) has image x k[x]/(x^2), which is
        // not a direct summand.
        let ps = Arc::new(fixtures::fix_c(q()));
        let modules = vec![Module::regular(ps.algebra(0).clone()), Module::regular(ps.algebra(1).clone())];
        let ts = tensor_over(&ps.bimodule(0).as_right(), &modules[0]).unwrap();
        let h = hom_space(&crate::prospecies::tensor_module(ps.bimodule(0), &ts), &modules[1]);
        let map = h.basis().iter().find(|b| b.rank() == 1).unwrap().clone();
        let rep = Representation::new(ps, modules, vec![map]).unwrap();
        assert!(matches!(epi_projective_split(&rep), Err(Error::NotSplit(_))));
    }

    #[test]
    fn split_needs_selfinjective_vertices() {
        let ps = Arc::new(fixtures::fix_b(q()));
        let rep = Representation::zero(ps);
        assert!(matches!(epi_projective_split(&rep), Err(Error::NotLocallySelfinjective(_))));
    }

    #[test]
    fn stable_hom_examples() {
        let d = fixtures::truncated_poly(q(), 2);
        let s = Module::simple(d.clone(), 0).unwrap();
        assert_eq!(stable_hom_dim(&s, &s).unwrap(), 1);
        let p = Module::regular(d);
        assert_eq!(stable_hom_dim(&p, &s).unwrap(), 0);
        assert_eq!(stable_hom_dim(&p, &p).unwrap(), 0);
    }

    #[test]
    fn stable_homs_match_under_separation() {
        let ps = Arc::new(fixtures::fix_c(q()));
        let sep = Arc::new(separated_prospecies(&ps).unwrap());
        let t_sep = tensor_algebra(&sep).unwrap();
        let g = gamma_algebra(&ps).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let corpus: Vec<Representation> = (0..4).map(|_| fixtures::random_locally_projective(&ps, 2, &mut rng)).collect();
        for a in &corpus {
            let fa = separation_functor(&sep, a).unwrap().rep;
            for b in &corpus {
                let fb = separation_functor(&sep, b).unwrap().rep;
                let lhs = stable_hom_dim(&g.module_of(a).unwrap(), &g.module_of(b).unwrap()).unwrap();
                let rhs = stable_hom_dim(&t_sep.rep_to_module(&fa).unwrap(), &t_sep.rep_to_module(&fb).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
                if representations_isomorphic(&t_sep, &fa, &fb).unwrap().is_iso() {
                    assert!(is_isomorphic(&g.module_of(a).unwrap(), &g.module_of(b).unwrap()).is_iso());
                }
            }
        }
    }
}
