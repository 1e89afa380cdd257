//! Power-law bounded (PLB-U) certification and the approximation constants
//! derived from it.
//!
//! A graph is power-law bounded with parameters `(beta, t, c1)` when, for
//! every `d >= 0`, the number of vertices whose degree lies in
//! `[2^d, 2^(d+1))` is at most
//! `c1 * n * (t+1)^(beta-1) * sum_{i=2^d}^{2^(d+1)-1} (i+t)^(-beta)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Solution};

/// Relative slack allowed when comparing a bucket count to its bound.
pub const BOUND_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlbParams {
    pub beta: f64,
    pub t: f64,
    pub c1: f64,
}

impl PlbParams {
    pub fn new(beta: f64, t: f64, c1: f64) -> Result<Self> {
        let p = PlbParams { beta, t, c1 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta.is_finite() && self.beta > 1.0) {
            return Err(Error::usage(format!("beta must be > 1, got {}", self.beta)));
        }
        if !(self.t.is_finite() && self.t >= 0.0) {
            return Err(Error::usage(format!("t must be >= 0, got {}", self.t)));
        }
        if !(self.c1.is_finite() && self.c1 >= 0.0) {
            return Err(Error::usage(format!("c1 must be >= 0, got {}", self.c1)));
        }
        Ok(())
    }

    fn require_heavy_tail(&self) -> Result<()> {
        self.validate()?;
        if self.beta > 2.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "approximation constants need beta > 2, got {}",
                self.beta
            )))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlbConstants {
    pub a: f64,
    pub b: f64,
}

/// Approximation factors guaranteed on a PLB-U graph, one per problem and
/// algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioBounds {
    pub mds_ea: f64,
    pub mds_gsemo: f64,
    pub mvc_ea: f64,
    pub mvc_gsemo: f64,
    pub cds_ea: f64,
    pub cds_gsemo: f64,
    pub mis_ea: f64,
    pub mis_gsemo: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bucket {
    pub d: u32,
    pub count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BucketReport {
    pub d: u32,
    pub count: usize,
    pub bound: f64,
    /// `bound - count`; negative where the bucket violates the bound.
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlbCheck {
    pub holds: bool,
    pub buckets: Vec<BucketReport>,
}

/// Vertex counts per degree bucket `[2^d, 2^(d+1))` for
/// `d = 0..=ceil(log2(max(Delta, 1)))`. Isolated vertices fall in no bucket.
pub fn bucket_counts(g: &Graph) -> Vec<Bucket> {
    let max_deg = g.max_degree().max(1);
    let top = ceil_log2(max_deg);
    let mut counts = vec![0usize; top as usize + 1];
    for deg in g.degrees().filter(|&d| d > 0) {
        counts[floor_log2(deg) as usize] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(d, count)| Bucket { d: d as u32, count })
        .collect()
}

fn floor_log2(x: usize) -> u32 {
    usize::BITS - 1 - x.leading_zeros()
}

fn ceil_log2(x: usize) -> u32 {
    if x <= 1 {
        0
    } else {
        floor_log2(x - 1) + 1
    }
}

/// `sum_{i=2^d}^{2^(d+1)-1} (i+t)^(-beta)`, accumulated in ascending `i`.
fn bucket_power_sum(d: u32, beta: f64, t: f64) -> f64 {
    let lo = 1u64 << d;
    let hi = (1u64 << (d + 1)) - 1;
    (lo..=hi).map(|i| (i as f64 + t).powf(-beta)).sum()
}

/// Bound per unit of `c1`.
fn unit_bucket_bound(d: u32, beta: f64, t: f64, n: usize) -> f64 {
    n as f64 * (t + 1.0).powf(beta - 1.0) * bucket_power_sum(d, beta, t)
}

pub fn plb_bucket_bound(d: u32, params: &PlbParams, n: usize) -> Result<f64> {
    params.validate()?;
    if n == 0 {
        return Err(Error::usage("bucket bound needs n >= 1"));
    }
    if d >= 40 {
        return Err(Error::usage(format!("bucket index {d} is out of range")));
    }
    Ok(params.c1 * unit_bucket_bound(d, params.beta, params.t, n))
}

pub fn check_plb(g: &Graph, params: &PlbParams) -> Result<PlbCheck> {
    params.validate()?;
    let n = g.n().max(1);
    let mut holds = true;
    let mut buckets = Vec::new();
    for Bucket { d, count } in bucket_counts(g) {
        let bound = plb_bucket_bound(d, params, n)?;
        if count as f64 > bound * (1.0 + BOUND_TOLERANCE) {
            holds = false;
        }
        buckets.push(BucketReport {
            d,
            count,
            bound,
            margin: bound - count as f64,
        });
    }
    Ok(PlbCheck { holds, buckets })
}

/// Smallest `c1` for which `g` is PLB-U with the given `beta` and `t`.
pub fn fit_c1(g: &Graph, beta: f64, t: f64) -> Result<f64> {
    PlbParams::new(beta, t, 1.0)?;
    if g.m() == 0 {
        return Err(Error::usage("cannot fit c1 on an edgeless graph"));
    }
    Ok(bucket_counts(g)
        .into_iter()
        .filter(|b| b.count > 0)
        .map(|b| b.count as f64 / unit_bucket_bound(b.d, beta, t, g.n()))
        .fold(0.0, f64::max))
}

pub fn constants_ab(params: &PlbParams) -> Result<PlbConstants> {
    params.require_heavy_tail()?;
    let PlbParams { beta, t, c1 } = *params;
    let a = (beta - 1.0) / (beta - 2.0) / (1.0 - ((t + 2.0) / (t + 1.0)).powf(1.0 - beta));
    let b = (4.0 * c1 * (t + 1.0).powf(beta - 1.0) / (beta - 1.0)).powf(1.0 / (beta - 2.0));
    Ok(PlbConstants { a, b })
}

/// Variant of `b` with `(beta - 2)` in the denominator, the form produced
/// by the integral estimate of the degree volume.
pub fn b_alt(params: &PlbParams) -> Result<f64> {
    params.require_heavy_tail()?;
    let PlbParams { beta, t, c1 } = *params;
    Ok((4.0 * c1 * (t + 1.0).powf(beta - 1.0) / (beta - 2.0)).powf(1.0 / (beta - 2.0)))
}

pub fn ratio_bounds(params: &PlbParams) -> Result<RatioBounds> {
    let PlbConstants { a, b } = constants_ab(params)?;
    let PlbParams { beta, t, c1 } = *params;
    let e = std::f64::consts::E;
    Ok(RatioBounds {
        mds_ea: 2.0 * a * b + 1.0,
        mds_gsemo: (2.0 * a * b + 1.0).ln(),
        mvc_ea: 2.0 * a * b,
        mvc_gsemo: (2.0 * a * b).ln() + 1.0,
        cds_ea: 2.0 * a * b,
        cds_gsemo: (2.0 * e * a * b + e).ln(),
        mis_ea: a * b + 0.5,
        mis_gsemo: 2.0 * c1 * (beta + t - 1.0) / ((beta - 1.0) * (beta - 2.0)) + 1.0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeSumBound {
    /// `2 c1 n (t+1)^(beta-1) sum_{i=1}^{Delta} i (i+t)^(-beta)`.
    pub finite_sum: f64,
    /// `2 c1 n (beta+t-1) / ((beta-1)(beta-2))`, present when `beta > 2`.
    pub integral_cap: Option<f64>,
}

pub fn degree_sum_bound(params: &PlbParams, n: usize, max_deg: usize) -> Result<DegreeSumBound> {
    params.validate()?;
    let PlbParams { beta, t, c1 } = *params;
    let partial: f64 = (1..=max_deg)
        .map(|i| i as f64 * (i as f64 + t).powf(-beta))
        .sum();
    let scale = 2.0 * c1 * n as f64;
    Ok(DegreeSumBound {
        finite_sum: scale * (t + 1.0).powf(beta - 1.0) * partial,
        integral_cap: (beta > 2.0)
            .then(|| scale * (beta + t - 1.0) / ((beta - 1.0) * (beta - 2.0))),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomsetRatio {
    /// `sum_{v in D} (deg(v) + 1) / |D|`.
    pub ratio: f64,
    pub bound: f64,
    pub within_bound: bool,
}

/// Degree volume of a dominating set relative to its size, compared with
/// `2ab + 1`.
pub fn verify_domset_ratio(g: &Graph, params: &PlbParams, d: &Solution) -> Result<DomsetRatio> {
    if !g.is_dominating(d)? {
        return Err(Error::usage("solution is not a dominating set"));
    }
    let size = d.count_ones();
    if size == 0 {
        return Err(Error::usage("dominating set is empty"));
    }
    let volume: usize = d.iter_ones().map(|v| g.neighbors(v).len() + 1).sum();
    let ratio = volume as f64 / size as f64;
    let bound = ratio_bounds(params)?.mds_ea;
    Ok(DomsetRatio {
        ratio,
        bound,
        within_bound: ratio <= bound,
    })
}

/// Full certification report for one `(beta, t)` choice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlbReport {
    pub beta: f64,
    pub t: f64,
    pub c1_fitted: f64,
    /// The `c1` the buckets were checked against (the fitted one unless
    /// overridden).
    pub c1: f64,
    pub holds: bool,
    pub buckets: Vec<BucketReport>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub b_alt: Option<f64>,
    pub ratio_bounds: Option<RatioBounds>,
}

pub fn plb_report(g: &Graph, beta: f64, t: f64, c1_override: Option<f64>) -> Result<PlbReport> {
    let c1_fitted = fit_c1(g, beta, t)?;
    let params = PlbParams::new(beta, t, c1_override.unwrap_or(c1_fitted))?;
    let check = check_plb(g, &params)?;
    let (a, b, b_alt, bounds) = if beta > 2.0 {
        let ab = constants_ab(&params)?;
        (
            Some(ab.a),
            Some(ab.b),
            Some(b_alt(&params)?),
            Some(ratio_bounds(&params)?),
        )
    } else {
        (None, None, None, None)
    };
    Ok(PlbReport {
        beta,
        t,
        c1_fitted,
        c1: params.c1,
        holds: check.holds,
        buckets: check.buckets,
        a,
        b,
        b_alt,
        ratio_bounds: bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(beta: f64, t: f64, c1: f64) -> PlbParams {
        PlbParams::new(beta, t, c1).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn buckets_of_named_graphs() {
        assert_eq!(
            bucket_counts(&Graph::star(4)),
            vec![
                Bucket { d: 0, count: 4 },
                Bucket { d: 1, count: 0 },
                Bucket { d: 2, count: 1 }
            ]
        );
        assert!(bucket_counts(&Graph::empty(5)).iter().all(|b| b.count == 0));
        assert_eq!(bucket_counts(&Graph::complete(3)), vec![
            Bucket { d: 0, count: 0 },
            Bucket { d: 1, count: 3 }
        ]);
    }

    #[test]
    fn bucket_bound_examples() {
        assert!(close(plb_bucket_bound(0, &params(3.0, 0.0, 1.0), 100).unwrap(), 100.0, 1e-12));
        let two_terms = 100.0 * (2f64.powi(-3) + 3f64.powi(-3));
        let got = plb_bucket_bound(1, &params(3.0, 0.0, 1.0), 100).unwrap();
        assert!(close(got, two_terms, 1e-9));
        assert!(close(got, 16.2037, 1e-4));
        assert_eq!(plb_bucket_bound(3, &params(3.0, 0.0, 0.0), 100).unwrap(), 0.0);
        assert!(plb_bucket_bound(0, &params(3.0, 0.0, 1.0), 0).is_err());
        assert!(PlbParams::new(1.0, 0.0, 1.0).is_err());
        assert!(PlbParams::new(3.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn fit_c1_examples() {
        let tri = fit_c1(&Graph::complete(3), 3.0, 0.0).unwrap();
        assert!(close(tri, 3.0 / (3.0 * (0.125 + 1.0 / 27.0)), 1e-12));
        assert!(close(tri, 6.1714, 1e-4));
        assert!(close(fit_c1(&Graph::complete(2), 3.0, 0.0).unwrap(), 1.0, 1e-12));
        assert!(fit_c1(&Graph::empty(3), 3.0, 0.0).is_err());
    }

    #[test]
    fn fitted_c1_is_tight() {
        let g = Graph::star(6);
        let c1 = fit_c1(&g, 2.5, 1.0).unwrap();
        assert!(check_plb(&g, &params(2.5, 1.0, c1)).unwrap().holds);
        assert!(!check_plb(&g, &params(2.5, 1.0, c1 * 0.99)).unwrap().holds);
        assert!(check_plb(&Graph::empty(4), &params(3.0, 0.0, 0.5)).unwrap().holds);
    }

    #[test]
    fn constants_examples() {
        let ab = constants_ab(&params(3.0, 0.0, 1.0)).unwrap();
        assert!(close(ab.a, 8.0 / 3.0, 1e-12));
        assert!(close(ab.b, 2.0, 1e-12));
        let ab4 = constants_ab(&params(3.0, 0.0, 4.0)).unwrap();
        assert!(close(ab4.b, 8.0, 1e-12));
        assert!(close(ab4.a, ab.a, 1e-15));
        assert!(close(b_alt(&params(3.0, 0.0, 1.0)).unwrap(), 4.0, 1e-12));
        assert!(matches!(constants_ab(&params(2.0, 0.0, 1.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn a_decreases_towards_one() {
        let a: Vec<f64> = [3.0, 5.0, 10.0, 100.0]
            .iter()
            .map(|&beta| constants_ab(&params(beta, 0.0, 1.0)).unwrap().a)
            .collect();
        assert!(a.windows(2).all(|w| w[0] > w[1]));
        assert!(a.iter().all(|&x| x > 1.0));
        assert!(a[3] - 1.0 < 0.011);
    }

    #[test]
    fn ratio_bound_examples() {
        let r = ratio_bounds(&params(3.0, 0.0, 1.0)).unwrap();
        assert!(close(r.mds_ea, 35.0 / 3.0, 1e-12));
        assert!(close(r.mds_gsemo, (35.0f64 / 3.0).ln(), 1e-12));
        assert!(close(r.mds_gsemo, 2.4567, 1e-4));
        assert!(close(r.mis_gsemo, 3.0, 1e-12));
        assert!(close(r.mvc_ea, 32.0 / 3.0, 1e-12));
        assert!(close(r.mis_ea, 16.0 / 3.0 + 0.5, 1e-12));
    }

    #[test]
    fn degree_sum_examples() {
        let b = degree_sum_bound(&params(3.0, 0.0, 1.0), 10, 1).unwrap();
        assert!(close(b.finite_sum, 20.0, 1e-12));
        assert!(close(b.integral_cap.unwrap(), 20.0, 1e-12));
        let p = params(2.5, 1.0, 2.0);
        let sums: Vec<f64> = (0..20)
            .map(|d| degree_sum_bound(&p, 50, d).unwrap().finite_sum)
            .collect();
        assert!(sums.windows(2).all(|w| w[0] <= w[1]));
        assert!(degree_sum_bound(&params(1.5, 0.0, 1.0), 5, 3).unwrap().integral_cap.is_none());
    }

    #[test]
    fn domset_ratio_examples() {
        let p = params(3.0, 0.0, 1.0);
        let star = verify_domset_ratio(&Graph::star(4), &p, &Solution::from_vertices(5, [0])).unwrap();
        assert!(close(star.ratio, 5.0, 1e-12));
        assert!(star.within_bound);
        let k2 = verify_domset_ratio(&Graph::complete(2), &p, &Solution::from_vertices(2, [1])).unwrap();
        assert!(close(k2.ratio, 2.0, 1e-12));
        let p3 = verify_domset_ratio(&Graph::path(3), &p, &Solution::ones(3)).unwrap();
        assert!(close(p3.ratio, 7.0 / 3.0, 1e-12));
        assert!(verify_domset_ratio(&Graph::path(3), &p, &Solution::from_vertices(3, [0])).is_err());
    }

    #[test]
    fn report_for_single_edge() {
        let r = plb_report(&Graph::complete(2), 3.0, 0.0, None).unwrap();
        assert!(close(r.c1_fitted, 1.0, 1e-12));
        assert!(r.holds);
        assert!(r.a.is_some() && r.b_alt.is_some());
        let low = plb_report(&Graph::complete(2), 1.5, 0.0, None).unwrap();
        assert!(low.ratio_bounds.is_none());
    }
}
