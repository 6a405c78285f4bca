#![allow(dead_code)]

use ellbundle_core::bundles::{DirectSumPresentation, KernelPresentation, MonadPresentation};
use ellbundle_core::elliptic::{Curve, Divisor, MarkedCurve, Place, Point};
use ellbundle_core::funcspace::{linear_combination, rr_basis, CurveFunction};
use ellbundle_core::galois::{Fe, Field, Matrix};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_curve<R: Rng>(p: u64, rng: &mut R) -> Curve {
    let f = Field::prime(p).unwrap();
    loop {
        let a = f.random(rng);
        let b = f.random(rng);
        if let Ok(e) = Curve::new(&f, a, b) {
            if e.points().len() >= 4 {
                return e;
            }
        }
    }
}

pub fn random_marked<R: Rng>(p: u64, rng: &mut R) -> MarkedCurve {
    let e = random_curve(p, rng);
    let mark = if rng.gen_bool(0.5) { Point::Infinity } else { e.points().choose(rng).unwrap().clone() };
    MarkedCurve::new(e, mark).unwrap()
}

pub fn point_divisor(e: &Curve, q: &Point, n: i64) -> Divisor {
    Divisor::from_point(e, q, n)
}

/// A degree-zero divisor and the point `q` with `D ~ (q) - (p)`.
pub fn random_degree_zero<R: Rng>(mc: &MarkedCurve, rng: &mut R) -> (Divisor, Point) {
    let e = mc.curve();
    let pts = e.points();
    let d = if rng.gen_bool(0.5) {
        let q = pts.choose(rng).unwrap();
        point_divisor(e, q, 1).sub(&mc.mark_divisor())
    } else {
        let mut d = Divisor::zero();
        for sign in [1, 1, -1, -1] {
            d = d.add(&point_divisor(e, pts.choose(rng).unwrap(), sign));
        }
        d
    };
    let q = mc.divisor_class_point(&d).unwrap();
    (d, q)
}

pub fn random_direct_sum<R: Rng>(mc: &MarkedCurve, r: usize, rng: &mut R) -> (DirectSumPresentation, Vec<Point>) {
    let mut ds = Vec::new();
    let mut qs = Vec::new();
    for _ in 0..r {
        let (d, q) = random_degree_zero(mc, rng);
        ds.push(d);
        qs.push(q);
    }
    qs.sort();
    (DirectSumPresentation::new(mc.clone(), ds).unwrap(), qs)
}

/// `O(D) + O(-D) = ker( O(D) + O(-D) + O(D_3) -> O(D_3) )` with `deg D = 1`.
pub fn unstable_pair<R: Rng>(mc: &MarkedCurve, rng: &mut R) -> KernelPresentation {
    let e = mc.curve();
    let pts = e.points();
    let d = if rng.gen_bool(0.5) {
        point_divisor(e, pts.choose(rng).unwrap(), 1)
    } else {
        point_divisor(e, pts.choose(rng).unwrap(), 2).sub(&point_divisor(e, pts.choose(rng).unwrap(), 1))
    };
    let d3 = point_divisor(e, pts.choose(rng).unwrap(), 1);
    let z = CurveFunction::zero(e);
    KernelPresentation::new(mc.clone(), vec![d.clone(), d.neg(), d3.clone()], d3, vec![z.clone(), z, CurveFunction::one(e)])
        .unwrap()
}

fn random_in(e: &Curve, d: &Divisor, rng: &mut impl Rng) -> CurveFunction {
    let b = rr_basis(e, d).unwrap();
    let c: Vec<Fe> = (0..b.dim()).map(|_| e.field().random(rng)).collect();
    linear_combination(e, &c, b.basis())
}

/// `m` ambient summands at random points, target of degree `m`, random `g`.
pub fn random_kernel<R: Rng>(mc: &MarkedCurve, m: usize, rng: &mut R) -> Option<KernelPresentation> {
    let e = mc.curve();
    let pts = e.points();
    let ambient: Vec<Divisor> = (0..m).map(|_| point_divisor(e, pts.choose(rng).unwrap(), 1)).collect();
    let mut target = Divisor::zero();
    for _ in 0..m {
        target = target.add(&point_divisor(e, pts.choose(rng).unwrap(), 1));
    }
    let g: Vec<CurveFunction> = ambient.iter().map(|d| random_in(e, &target.sub(d), rng)).collect();
    KernelPresentation::new(mc.clone(), ambient, target, g).ok()
}

/// A monad with `s` trivial summands and cohomology of rank `r`.
pub fn random_monad<R: Rng>(mc: &MarkedCurve, s: usize, r: usize, rng: &mut R) -> Option<MonadPresentation> {
    let e = mc.curve();
    let f = e.field();
    let pts = e.points();
    let m = r + s + 1;
    let ambient: Vec<Divisor> = (0..m)
        .map(|_| {
            let k = rng.gen_range(1..=2);
            (0..k).fold(Divisor::zero(), |acc, _| acc.add(&point_divisor(e, pts.choose(rng).unwrap(), 1)))
        })
        .collect();
    let deg: i64 = ambient.iter().map(|d| d.degree()).sum();
    let mut target = Divisor::zero();
    for _ in 0..deg {
        target = target.add(&point_divisor(e, pts.choose(rng).unwrap(), 1));
    }
    let fm: Vec<Vec<CurveFunction>> =
        ambient.iter().map(|d| (0..s).map(|_| random_in(e, d, rng)).collect()).collect();
    // g ranges over the solutions of sum_a g_a f[a][j] = 0 in L(D_0)
    let gb: Vec<_> = ambient.iter().map(|d| rr_basis(e, &target.sub(d)).unwrap()).collect();
    let t = rr_basis(e, &target).unwrap();
    let mut rows: Vec<Vec<Fe>> = Vec::new();
    for j in 0..s {
        let mut cols = Vec::new();
        for (a, b) in gb.iter().enumerate() {
            for g in b.basis() {
                cols.push(t.coordinates(&g.mul(&fm[a][j])).unwrap());
            }
        }
        let mt = Matrix::from_cols(f, t.dim(), &cols);
        for i in 0..mt.rows() {
            rows.push(mt.row(i));
        }
    }
    let n: usize = gb.iter().map(|b| b.dim()).sum();
    let sol = if rows.is_empty() { Matrix::zeros(f, 0, n).nullspace() } else { Matrix::from_rows(f, rows).nullspace() };
    if sol.is_empty() {
        return None;
    }
    let mut c = vec![f.zero(); n];
    for v in &sol {
        let k = f.random(rng);
        for (ci, vi) in c.iter_mut().zip(v) {
            *ci = f.add(ci, &f.mul(&k, vi));
        }
    }
    let mut g = Vec::new();
    let mut off = 0;
    for b in &gb {
        g.push(linear_combination(e, &c[off..off + b.dim()], b.basis()));
        off += b.dim();
    }
    let kernel = KernelPresentation::new(mc.clone(), ambient, target, g).ok()?;
    MonadPresentation::new(kernel, fm).ok()
}

pub fn place_of(mc: &MarkedCurve, q: &Point) -> Place {
    Place::from_point(mc.curve(), q)
}
