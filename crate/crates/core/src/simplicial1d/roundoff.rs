//! Simplicial approximation of continuous interval maps and repair of
//! degenerate vertex maps.

use num_traits::{Signed, ToPrimitive, Zero};

use super::complex::IntervalComplex;
use super::system::{SimplicialMap1D, SimplicialSystem1D};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Default cap on the number of vertices of a roundoff subdivision.
pub const DEFAULT_VERTEX_CAP: u64 = 1 << 20;

#[derive(Debug, Clone)]
pub struct Roundoff {
    pub system: SimplicialSystem1D,
    /// The nearest-vertex map before repair.
    pub raw: SimplicialMap1D,
    pub repaired: bool,
}

/// Nearest `K` vertex, ties to the left.
fn nearest_vertex(k: &IntervalComplex, y: &Rational) -> usize {
    match k.vertices().binary_search(y) {
        Ok(v) => v,
        Err(0) => 0,
        Err(i) if i == k.vertex_count() => i - 1,
        Err(i) => {
            let (a, b) = (k.vertex(i - 1), k.vertex(i));
            if y - a <= b - y {
                i - 1
            } else {
                i
            }
        }
    }
}

/// Rounds `f` to a simplicial map with `sup |f − g| ≤ 2·mesh(K)`.
///
/// Each `K` edge is cut into pieces of length below `minlen(K)/lip`, so
/// nearest-vertex images of adjacent vertices are equal or adjacent; the
/// derived subdivision of that is the domain. Degenerate results are
/// repaired, which adds at most `mesh(K)` to the error.
pub fn roundoff<F>(f: F, lip: &Rational, k: &IntervalComplex) -> Result<Roundoff>
where
    F: Fn(&Rational) -> Rational,
{
    roundoff_with_cap(f, lip, k, crate::cell_cap_from_env(DEFAULT_VERTEX_CAP))
}

pub fn roundoff_with_cap<F>(f: F, lip: &Rational, k: &IntervalComplex, cap: u64) -> Result<Roundoff>
where
    F: Fn(&Rational) -> Rational,
{
    if !lip.is_positive() {
        return Err(Error::Precondition("Lipschitz bound must be positive".into()));
    }
    let step = k.min_edge_len() / lip;
    let mut parts = Vec::with_capacity(k.edge_count());
    let mut total: u128 = 1;
    for e in 0..k.edge_count() {
        let q = (k.edge_len(e) / &step).floor().to_u128().unwrap_or(u128::MAX).saturating_add(1);
        total = total.saturating_add(q.saturating_mul(2));
        if total > cap as u128 {
            return Err(Error::CapExceeded {
                required: total,
                allowed: cap as u128,
            });
        }
        parts.push(q as usize);
    }
    let domain = k.uniform_subdivision(&parts).derived();
    let mut vmap = Vec::with_capacity(domain.vertex_count());
    for x in domain.vertices() {
        let y = f(x);
        if !k.contains(&y) {
            return Err(Error::OutsidePolyhedron(format!(
                "f({}) = {}",
                rational::format(x),
                rational::format(&y)
            )));
        }
        vmap.push(nearest_vertex(k, &y));
    }
    let raw = SimplicialMap1D::new(k.clone(), domain, vmap)?;
    let repaired = raw.is_degenerate();
    let system = nondegenerate_repair(&raw)?;
    Ok(Roundoff {
        system,
        raw,
        repaired,
    })
}

/// Makes a simplicial map non-degenerate while moving `g` by at most `mesh(K)`.
///
/// In each maximal run of adjacent `K*` vertices with a common image `v`,
/// alternate vertices are sent to a neighbour of `v`. A run with an even
/// number of vertices first gets a midpoint in its last edge, so both ends
/// keep the image `v`.
pub fn nondegenerate_repair(map: &SimplicialMap1D) -> Result<SimplicialSystem1D> {
    if !map.is_degenerate() {
        return SimplicialSystem1D::new(map.clone());
    }
    let k = map.k();
    let kstar = map.kstar();
    let two = rational::int(2);
    let mut vertices: Vec<Rational> = Vec::with_capacity(kstar.vertex_count() * 2);
    let mut images: Vec<usize> = Vec::with_capacity(kstar.vertex_count() * 2);
    let n = kstar.vertex_count();
    let mut i = 0;
    while i < n {
        let v = map.vmap()[i];
        let mut j = i;
        while j + 1 < n && map.vmap()[j + 1] == v {
            j += 1;
        }
        let mut run: Vec<Rational> = kstar.vertices()[i..=j].to_vec();
        if run.len() > 1 && run.len().is_multiple_of(2) {
            let last = run.len() - 1;
            let mid = (&run[last - 1] + &run[last]) / &two;
            run.insert(last, mid);
        }
        let neighbour = if v + 1 < k.vertex_count() { v + 1 } else { v - 1 };
        for (pos, x) in run.into_iter().enumerate() {
            vertices.push(x);
            images.push(if pos % 2 == 0 { v } else { neighbour });
        }
        i = j + 1;
    }
    let kstar = IntervalComplex::new(vertices)?;
    SimplicialSystem1D::new(SimplicialMap1D::new(k.clone(), kstar, images)?)
}

/// `max |a(x) − b(x)|` over `samples` equally spaced points of `X(K)`.
pub fn sampled_sup_distance<A, B>(k: &IntervalComplex, samples: usize, a: A, b: B) -> Result<Rational>
where
    A: Fn(&Rational) -> Result<Rational>,
    B: Fn(&Rational) -> Result<Rational>,
{
    let width = k.right() - k.left();
    let mut sup = Rational::zero();
    for i in 0..=samples {
        let x = k.left() + &width * rational::ratio(i as i64, samples.max(1) as i64);
        sup = sup.max((a(&x)? - b(&x)?).abs());
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::simplicial1d::examples;

    fn k012() -> IntervalComplex {
        IntervalComplex::from_ints(&[0, 1, 2]).unwrap()
    }

    #[test]
    fn smallest_repair() {
        let k = IntervalComplex::from_ints(&[0, 1]).unwrap();
        let kstar = IntervalComplex::new(vec![int(0), ratio(1, 2), int(1)]).unwrap();
        // Run 1/2, 1 of length two at the end.
        let map = SimplicialMap1D::new(k, kstar, vec![1, 0, 0]).unwrap();
        let fixed = nondegenerate_repair(&map).unwrap();
        assert_eq!(
            fixed.kstar().vertices(),
            &[int(0), ratio(1, 2), ratio(3, 4), int(1)]
        );
        assert_eq!(fixed.vmap(), &[1, 0, 1, 0]);
    }

    #[test]
    fn repair_keeps_nondegenerate_input() {
        let sys = examples::example_a();
        assert_eq!(nondegenerate_repair(sys.map()).unwrap(), sys);
    }

    #[test]
    fn constant_map() {
        let k = k012();
        let r = roundoff(|_| int(1), &int(1), &k).unwrap();
        assert!(r.repaired);
        let g = &r.system;
        let err = sampled_sup_distance(&k, 1000, |_| Ok(int(1)), |x| g.pl_eval(x)).unwrap();
        assert!(err <= int(4) * k.mesh());
    }

    #[test]
    fn identity_map() {
        let k = k012();
        let r = roundoff(|x| x.clone(), &int(1), &k).unwrap();
        let g = &r.system;
        let err = sampled_sup_distance(&k, 100, |x| Ok(x.clone()), |x| g.pl_eval(x)).unwrap();
        assert!(err <= int(2) * k.mesh());
    }

    #[test]
    fn tent_map() {
        let k = k012();
        let f = |x: &Rational| int(1) - (x - int(1)).abs();
        let r = roundoff(f, &int(1), &k).unwrap();
        let raw_err = sampled_sup_distance(&k, 1000, |x| Ok(f(x)), |x| r.raw.eval(x)).unwrap();
        assert!(raw_err <= int(2) * k.mesh());
        let err = sampled_sup_distance(&k, 1000, |x| Ok(f(x)), |x| r.system.pl_eval(x)).unwrap();
        assert!(err <= int(4) * k.mesh());
    }

    #[test]
    fn roundoff_errors() {
        let k = k012();
        assert!(matches!(roundoff(|x| x.clone(), &int(0), &k), Err(Error::Precondition(_))));
        assert!(matches!(
            roundoff(|x| x + int(1), &int(1), &k),
            Err(Error::OutsidePolyhedron(_))
        ));
        assert!(matches!(
            roundoff_with_cap(|x| x.clone(), &int(1000), &k, 100),
            Err(Error::CapExceeded { .. })
        ));
    }
}
