//! Presentations of degree-zero bundles.

use crate::elliptic::{Divisor, MarkedCurve};
use crate::error::{Error, Result};
use crate::funcspace::{principal_divisor, CurveFunction};
use crate::stability::function_det;

/// `V = O(D_1) + ... + O(D_r)` with every `D_j` of degree zero.
#[derive(Clone, Debug)]
pub struct DirectSumPresentation {
    pub mc: MarkedCurve,
    pub summands: Vec<Divisor>,
}

impl DirectSumPresentation {
    pub fn new(mc: MarkedCurve, summands: Vec<Divisor>) -> Result<DirectSumPresentation> {
        if summands.is_empty() {
            return Err(Error::InvalidPresentation("a direct sum needs at least one summand".into()));
        }
        for d in &summands {
            if d.degree() != 0 {
                return Err(Error::NonZeroDegree(d.degree()));
            }
        }
        Ok(DirectSumPresentation { mc, summands })
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }
}

/// `V = ker( g : O(D_1) + ... + O(D_m) -> O(D_0) )` with `g` surjective on fibers.
#[derive(Clone, Debug)]
pub struct KernelPresentation {
    pub mc: MarkedCurve,
    pub ambient: Vec<Divisor>,
    pub target: Divisor,
    pub g: Vec<CurveFunction>,
}

/// `(f) + D` for a nonzero `f`, or `None` for `f = 0`.
fn effective_part(f: &CurveFunction, d: &Divisor) -> Result<Option<Divisor>> {
    if f.is_zero() {
        return Ok(None);
    }
    Ok(Some(principal_divisor(f)?.add(d)))
}

impl KernelPresentation {
    pub fn new(mc: MarkedCurve, ambient: Vec<Divisor>, target: Divisor, g: Vec<CurveFunction>) -> Result<KernelPresentation> {
        if ambient.is_empty() {
            return Err(Error::InvalidPresentation("no ambient summands".into()));
        }
        if g.len() != ambient.len() {
            return Err(Error::InvalidPresentation(format!(
                "g has {} entries but there are {} ambient summands",
                g.len(),
                ambient.len()
            )));
        }
        let deg: i64 = ambient.iter().map(|d| d.degree()).sum::<i64>() - target.degree();
        if deg != 0 {
            return Err(Error::NonZeroDegree(deg));
        }
        // E_a = (g_a) + D_0 - D_a must be effective, and the E_a have no common point
        let mut common: Option<Divisor> = None;
        for (a, (ga, da)) in g.iter().zip(&ambient).enumerate() {
            let Some(e) = effective_part(ga, &target.sub(da))? else { continue };
            if !(e.is_zero() || e.is_effective()) {
                return Err(Error::InvalidPresentation(format!(
                    "g_{} does not define a map O(D_{}) -> O(D_0)",
                    a + 1,
                    a + 1
                )));
            }
            common = Some(match common {
                None => e,
                Some(c) => c.min(&e),
            });
        }
        match common {
            None => return Err(Error::InvalidPresentation("g is identically zero".into())),
            Some(c) if !c.is_zero() => {
                return Err(Error::InvalidPresentation(format!(
                    "g is not surjective on fibers at {}",
                    c.fmt(mc.curve())
                )))
            }
            _ => {}
        }
        Ok(KernelPresentation { mc, ambient, target, g })
    }

    pub fn rank(&self) -> usize {
        self.ambient.len() - 1
    }
}

/// A monad `O^s -> O(D_1) + ... + O(D_m) -> O(D_0)` with cohomology `V`.
#[derive(Clone, Debug)]
pub struct MonadPresentation {
    pub kernel: KernelPresentation,
    /// `f[a][j]`, an `m x s` matrix.
    pub f: Vec<Vec<CurveFunction>>,
}

impl MonadPresentation {
    pub fn new(kernel: KernelPresentation, f: Vec<Vec<CurveFunction>>) -> Result<MonadPresentation> {
        let m = kernel.ambient.len();
        if f.len() != m {
            return Err(Error::InvalidPresentation(format!("f has {} rows, expected {m}", f.len())));
        }
        let s = f.first().map_or(0, |r| r.len());
        if f.iter().any(|r| r.len() != s) {
            return Err(Error::InvalidPresentation("f rows have different lengths".into()));
        }
        if s + 1 > m {
            return Err(Error::InvalidPresentation(format!("s = {s} is too large for m = {m}")));
        }
        let curve = kernel.mc.curve().clone();
        for j in 0..s {
            let mut acc = CurveFunction::zero(&curve);
            for a in 0..m {
                let Some(e) = effective_part(&f[a][j], &kernel.ambient[a])? else { continue };
                if !(e.is_zero() || e.is_effective()) {
                    return Err(Error::InvalidPresentation(format!(
                        "f[{}][{}] is not a section of O(D_{})",
                        a + 1,
                        j + 1,
                        a + 1
                    )));
                }
                acc = acc.add(&kernel.g[a].mul(&f[a][j]));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidPresentation(format!("monad condition fails: g * f[.][{}] != 0", j + 1)));
            }
        }
        if s > 0 {
            // f injective on fibers: the s x s minors have no common zero
            let mut common: Option<Divisor> = None;
            for rows in subsets(m, s) {
                let mat: Vec<Vec<CurveFunction>> = rows.iter().map(|&a| f[a].clone()).collect();
                let det = function_det(&curve, &mat);
                let d = rows.iter().fold(Divisor::zero(), |acc, &a| acc.add(&kernel.ambient[a]));
                let Some(e) = effective_part(&det, &d)? else { continue };
                common = Some(match common {
                    None => e,
                    Some(c) => c.min(&e),
                });
            }
            match common {
                None => return Err(Error::InvalidPresentation("f has rank below s".into())),
                Some(c) if !c.is_zero() => {
                    return Err(Error::InvalidPresentation(format!(
                        "f is not injective on fibers at {}",
                        c.fmt(&curve)
                    )))
                }
                _ => {}
            }
        }
        Ok(MonadPresentation { kernel, f })
    }

    pub fn s(&self) -> usize {
        self.f.first().map_or(0, |r| r.len())
    }

    pub fn rank(&self) -> usize {
        self.kernel.ambient.len() - self.s() - 1
    }

    pub fn mc(&self) -> &MarkedCurve {
        &self.kernel.mc
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
