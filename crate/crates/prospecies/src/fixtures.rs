//! Small standard instances used throughout tests and examples.

use std::sync::Arc;

use crate::algebra::{Algebra, BoundQuiver};
use crate::exactla::{Field, Scalar};
use crate::modules::{hom_space, tensor_over, Bimodule, Module};
use crate::prospecies::{gls_bimodule, tensor_module, ProSpecies, Representation};
use crate::quiver::{Path, Quiver};

/// `k[x]/(x^c)` presented by one loop, or the ground field when `c = 1`.
pub fn truncated_poly(field: Field, c: usize) -> Arc<Algebra> {
    assert!(c >= 1);
    if c == 1 {
        let q = Quiver::new(&["v"], &[]).unwrap();
        return Arc::new(Algebra::from_bound_quiver(field, &BoundQuiver::new(q, vec![])).unwrap());
    }
    let q = Quiver::new(&["v"], &[("x", "v", "v")]).unwrap();
    let rel = Path::from_arrows(&q, &vec![0; c]).unwrap();
    let bq = BoundQuiver::new(q, vec![vec![(field.one(), rel)]]);
    Arc::new(Algebra::from_bound_quiver(field, &bq).unwrap())
}

/// The path algebra of `1 -> 2`.
pub fn path_a2(field: Field) -> Arc<Algebra> {
    let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
    Arc::new(Algebra::from_bound_quiver(field, &BoundQuiver::new(q, vec![])).unwrap())
}

fn a2_quiver() -> Quiver {
    Quiver::new(&["1", "2"], &[("alpha", "1", "2")]).unwrap()
}

/// The ground field at both vertices of `1 -> 2` with the ground field on the arrow.
pub fn fix_a(field: Field) -> ProSpecies {
    let k = truncated_poly(field, 1);
    ProSpecies::new(a2_quiver(), vec![k.clone(), k.clone()], vec![Bimodule::regular(k)]).unwrap()
}

/// The path algebra of `1 -> 2` at both vertices with the regular bimodule on the arrow.
pub fn fix_b(field: Field) -> ProSpecies {
    let a = path_a2(field);
    ProSpecies::new(a2_quiver(), vec![a.clone(), a.clone()], vec![Bimodule::regular(a)]).unwrap()
}

/// `gls(c_s, c_t, f_st, f_ts, g)` on the quiver `1 -> 2`.
pub fn gls(field: Field, c_s: usize, c_t: usize, f_st: usize, f_ts: usize, g: usize) -> crate::Result<ProSpecies> {
    let ls = truncated_poly(field, c_s);
    let lt = truncated_poly(field, c_t);
    let b = gls_bimodule(&lt, &ls, f_st, f_ts, g)?;
    ProSpecies::new(a2_quiver(), vec![ls, lt], vec![b])
}

/// `k[x]/(x^2)` at both vertices of `1 -> 2` with the rank-one gls bimodule.
pub fn fix_c(field: Field) -> ProSpecies {
    gls(field, 2, 2, 1, 1, 1).unwrap()
}

/// Kind of vertex algebra in a generated instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum VertexKind {
    Field,
    Dual,
    PathA2,
}

impl VertexKind {
    fn build(self, field: Field) -> Arc<Algebra> {
        match self {
            VertexKind::Field => truncated_poly(field, 1),
            VertexKind::Dual => truncated_poly(field, 2),
            VertexKind::PathA2 => path_a2(field),
        }
    }

    fn poly_degree(self) -> Option<usize> {
        match self {
            VertexKind::Field => Some(1),
            VertexKind::Dual => Some(2),
            VertexKind::PathA2 => None,
        }
    }
}

/// A random pro-species on an acyclic quiver with at most four vertices.
/// Vertex algebras are `k`, `k[x]/(x^2)` or the path algebra of `1 -> 2`;
/// arrow bimodules are regular, gls or free presented bimodules.
pub fn random_instance(field: Field, seed: u64) -> ProSpecies {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=4);
    let kinds: Vec<VertexKind> = (0..n)
        .map(|_| [VertexKind::Field, VertexKind::Dual, VertexKind::PathA2][rng.gen_range(0..3)])
        .collect();
    let algebras: Vec<Arc<Algebra>> = kinds.iter().map(|k| k.build(field)).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                pairs.push((i, j));
            }
        }
    }
    if pairs.is_empty() {
        pairs.push((0, 1));
    }
    pairs.truncate(4);
    let names: Vec<String> = (1..=n).map(|v| v.to_string()).collect();
    let mut arrows = Vec::new();
    let mut bimodules = Vec::new();
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let (s, t) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
        arrows.push((format!("a{k}"), names[s].clone(), names[t].clone()));
        bimodules.push(random_bimodule(&mut rng, &kinds, &algebras, s, t));
    }
    let arrow_refs: Vec<(&str, &str, &str)> =
        arrows.iter().map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str())).collect();
    let names_ref: Vec<&str> = names.iter().map(String::as_str).collect();
    let quiver = Quiver::new(&names_ref, &arrow_refs).unwrap();
    ProSpecies::new(quiver, algebras, bimodules).unwrap()
}

fn random_bimodule(rng: &mut impl rand::Rng, kinds: &[VertexKind], algs: &[Arc<Algebra>], s: usize, t: usize) -> Bimodule {
    let (ls, lt) = (&algs[s], &algs[t]);
    let choice = rng.gen_range(0..3);
    if choice == 0 && kinds[s] == kinds[t] {
        return Bimodule::regular(lt.clone()).with_algebras(lt.clone(), ls.clone());
    }
    if choice == 1 {
        if let (Some(cs), Some(ct)) = (kinds[s].poly_degree(), kinds[t].poly_degree()) {
            let (f_st, f_ts) = (ct / cs.min(ct), cs / cs.min(ct));
            return gls_bimodule(lt, ls, f_st, f_ts, 1).unwrap();
        }
    }
    let count = rng.gen_range(1..=2);
    let summands: Vec<(usize, usize)> = (0..count)
        .map(|_| (rng.gen_range(0..lt.idempotents().len()), rng.gen_range(0..ls.idempotents().len())))
        .collect();
    crate::prospecies::presented_bimodule(lt, ls, &summands, &[]).unwrap()
}

/// A representation with `M_i` free of rank at most `max_rank` over `Lambda_i`
/// and arrow maps random small integer combinations of a Hom-space basis.
pub fn random_locally_projective(ps: &Arc<ProSpecies>, max_rank: usize, rng: &mut impl rand::Rng) -> Representation {
    let q = ps.quiver();
    let f = ps.field();
    let modules: Vec<Module> = (0..q.num_vertices()).map(|v| Module::free(ps.algebra(v).clone(), rng.gen_range(0..=max_rank))).collect();
    let mut maps = Vec::new();
    for a in 0..q.num_arrows() {
        let arrow = q.arrow(a);
        let ts = tensor_over(&ps.bimodule(a).as_right(), &modules[arrow.source]).expect("same algebra");
        let h = hom_space(&tensor_module(ps.bimodule(a), &ts), &modules[arrow.target]);
        let coeffs: Vec<Scalar> = (0..h.dim()).map(|_| f.from_i64(rng.gen_range(-2..=2))).collect();
        maps.push(h.combine(&coeffs));
    }
    Representation::new(ps.clone(), modules, maps).expect("maps are homomorphisms")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_instances_build() {
        for seed in 0..10 {
            let ps = random_instance(Field::Rationals, seed);
            assert!(ps.quiver().is_acyclic());
            assert!(ps.quiver().num_vertices() <= 4);
        }
    }
}
