//! The Descartes subdivision solver on `(-1, 1)`.
//!
//! Starting from the full interval, each node's sign-variation count
//! `var(f, J)` bounds the number of roots in `J`: zero discards the
//! interval, one certifies it as isolating, and anything larger bisects.
//! A midpoint that happens to be an exact root is detected by exact
//! evaluation and reported separately.
//!
//! The solver keeps per-interval polynomials in the standard normalized
//! form (roots of `f` in `J` correspond to roots of `f_J` in `(0, 1)`), so
//! one bisection step costs one homothety plus one Taylor shift by one.
//! Power-of-two content is stripped after every transform and the removed
//! bits are reported in the statistics.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::{
    gcd_with_derivative_degree, is_squarefree, sign_variations, DyadicInterval, DyadicRational,
    IntPolynomial, PolyError, Rational,
};

/// Isolating intervals plus the exact rational roots found along the way.
///
/// Intervals are pairwise disjoint open intervals, each containing exactly
/// one real root; exact roots are true roots (exact evaluation gives zero)
/// and never lie inside a returned interval. Unit-interval isolation only
/// produces dyadic exact roots; the reciprocal pass of [`isolate_all`] can
/// produce general rationals (reciprocals of dyadic midpoints).
#[derive(Debug, Clone, Default)]
pub struct IsolationResult {
    pub intervals: Vec<DyadicInterval>,
    pub exact_roots: Vec<Rational>,
}

impl IsolationResult {
    pub fn root_count(&self) -> usize {
        self.intervals.len() + self.exact_roots.len()
    }

    /// True when `x` is one of the exact roots or lies in one of the
    /// isolating intervals.
    pub fn covers(&self, x: &Rational) -> bool {
        self.exact_roots.contains(x) || self.intervals.iter().any(|j| j.contains(x))
    }

    pub(crate) fn sort(&mut self) {
        self.intervals.sort_by(|a, b| a.low.cmp(&b.low));
        self.exact_roots.sort();
    }
}

/// What the solver did with a subdivision node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeAction {
    /// `var = 0`: no roots, interval dropped.
    Discarded,
    /// `var = 1`: isolating interval reported.
    Reported,
    /// `var > 1`: bisected; flag records whether the midpoint was a root.
    Split { midpoint_root: bool },
}

/// One processed subdivision node.
#[derive(Debug, Clone)]
pub struct NodeRecord {
    pub interval: DyadicInterval,
    pub depth: usize,
    /// Index of the parent node in the record list; `None` for the root.
    pub parent: Option<usize>,
    pub var: usize,
    pub action: NodeAction,
}

/// Shape and cost statistics of one subdivision run.
#[derive(Debug, Clone, Default)]
pub struct SubdivisionStats {
    /// Number of processed nodes (= subdivision steps).
    pub node_count: usize,
    pub max_depth: usize,
    /// Nodes per depth level; `node_count` is its sum and `max_depth` its
    /// length minus one.
    pub width_per_level: Vec<usize>,
    /// Variation count of every node, in processing (breadth-first) order.
    pub var_per_node: Vec<usize>,
    /// Largest coefficient bitsize seen in any transformed polynomial.
    pub max_intermediate_bitsize: u64,
    /// Total power-of-two content bits stripped after transforms.
    pub total_pow2_content_removed: u64,
    /// Full per-node records, in processing order.
    pub nodes: Vec<NodeRecord>,
}

impl SubdivisionStats {
    fn record(&mut self, node: NodeRecord) {
        self.node_count += 1;
        self.max_depth = self.max_depth.max(node.depth);
        if self.width_per_level.len() <= node.depth {
            self.width_per_level.resize(node.depth + 1, 0);
        }
        self.width_per_level[node.depth] += 1;
        self.var_per_node.push(node.var);
        self.nodes.push(node);
    }

    fn see_bitsize(&mut self, bits: u64) {
        self.max_intermediate_bitsize = self.max_intermediate_bitsize.max(bits);
    }

    /// Merge of two runs (used by [`isolate_all`] for its two passes).
    pub fn merged(mut self, other: &SubdivisionStats) -> SubdivisionStats {
        self.node_count += other.node_count;
        self.max_depth = self.max_depth.max(other.max_depth);
        if self.width_per_level.len() < other.width_per_level.len() {
            self.width_per_level.resize(other.width_per_level.len(), 0);
        }
        for (i, w) in other.width_per_level.iter().enumerate() {
            self.width_per_level[i] += w;
        }
        self.var_per_node.extend_from_slice(&other.var_per_node);
        self.max_intermediate_bitsize =
            self.max_intermediate_bitsize.max(other.max_intermediate_bitsize);
        self.total_pow2_content_removed += other.total_pow2_content_removed;
        let offset = self.nodes.len();
        self.nodes.extend(other.nodes.iter().cloned().map(|mut n| {
            n.parent = n.parent.map(|p| p + offset);
            n
        }));
        self
    }
}

fn require_squarefree(f: &IntPolynomial) -> Result<(), PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !is_squarefree(f) {
        return Err(PolyError::NotSquareFree {
            gcd_degree: gcd_with_derivative_degree(f),
        });
    }
    Ok(())
}

/// Isolates the real roots of a square-free `f` in the open interval
/// `(-1, 1)`.
///
/// Every real root of `f` in `(-1, 1)` ends up in exactly one returned
/// interval or as one exact root; every returned interval contains exactly
/// one real root (each carries a `var = 1` certificate).
pub fn isolate_in_unit_interval(
    f: &IntPolynomial,
) -> Result<(IsolationResult, SubdivisionStats), PolyError> {
    require_squarefree(f)?;
    let mut result = IsolationResult::default();
    let mut stats = SubdivisionStats::default();
    run_subdivision(f, &mut result, &mut stats);
    result.sort();
    Ok((result, stats))
}

struct QueueEntry {
    interval: DyadicInterval,
    poly: IntPolynomial,
    depth: usize,
    parent: Option<usize>,
}

fn run_subdivision(f: &IntPolynomial, result: &mut IsolationResult, stats: &mut SubdivisionStats) {
    let d = match f.degree() {
        None | Some(0) => {
            stats.record(NodeRecord {
                interval: DyadicInterval::unit(),
                depth: 0,
                parent: None,
                var: 0,
                action: NodeAction::Discarded,
            });
            return;
        }
        Some(d) => d,
    };

    // f_J with J = (-1, 1): f(2X - 1), roots in J mapped onto (0, 1).
    let f0 = f.taylor_shift(&BigInt::from(-1)).scale_arg_pow2(1);
    let (f0, s0) = f0.remove_pow2_content();
    stats.total_pow2_content_removed += s0;
    stats.see_bitsize(f0.bitsize());

    let mut queue = VecDeque::new();
    queue.push_back(QueueEntry {
        interval: DyadicInterval::unit(),
        poly: f0,
        depth: 0,
        parent: None,
    });

    let one = BigInt::one();
    while let Some(entry) = queue.pop_front() {
        let test = entry.poly.reciprocal_at(d).taylor_shift(&one);
        stats.see_bitsize(test.bitsize());
        let var = sign_variations(test.coeffs());

        let action = match var {
            0 => NodeAction::Discarded,
            1 => {
                result.intervals.push(entry.interval.clone());
                NodeAction::Reported
            }
            _ => {
                let left = entry.poly.homothety(1);
                stats.see_bitsize(left.bitsize());
                let (left, s_l) = left.remove_pow2_content();
                stats.total_pow2_content_removed += s_l;

                // f_J(1/2) = 0 iff the left child polynomial vanishes at 1.
                let midpoint_root = left.coeffs().iter().sum::<BigInt>().is_zero();
                if midpoint_root {
                    result.exact_roots.push(entry.interval.midpoint().to_rational());
                }

                let right = left.taylor_shift(&one);
                stats.see_bitsize(right.bitsize());
                let (right, s_r) = right.remove_pow2_content();
                stats.total_pow2_content_removed += s_r;

                let (jl, jr) = entry.interval.bisect();
                let parent = Some(stats.nodes.len());
                queue.push_back(QueueEntry {
                    interval: jl,
                    poly: left,
                    depth: entry.depth + 1,
                    parent,
                });
                queue.push_back(QueueEntry {
                    interval: jr,
                    poly: right,
                    depth: entry.depth + 1,
                    parent,
                });
                NodeAction::Split { midpoint_root }
            }
        };
        stats.record(NodeRecord {
            interval: entry.interval,
            depth: entry.depth,
            parent: entry.parent,
            var,
            action,
        });
    }
}

/// Isolates all real roots of a square-free `f`: the unit-interval pass,
/// exact evaluation at the endpoints `±1`, and a pass over the reciprocal
/// polynomial whose unit-interval roots map back through `x -> 1/x`.
pub fn isolate_all(f: &IntPolynomial) -> Result<(IsolationResult, SubdivisionStats), PolyError> {
    require_squarefree(f)?;
    let (mut result, stats) = isolate_in_unit_interval(f)?;

    for x in [-1i64, 1] {
        if f.evaluate_int(&BigInt::from(x)).is_zero() {
            result.exact_roots.push(Rational::from(BigInt::from(x)));
        }
    }

    // Strip any root at the origin before reversing; 0 (if a root) lies in
    // (-1, 1) and has already been isolated by the direct pass.
    let valuation = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    let reduced = IntPolynomial::new(f.coeffs()[valuation..].to_vec());
    let rec = reduced.reciprocal();

    let (rec_result, rec_stats) = if rec.degree().map_or(true, |d| d == 0) {
        (IsolationResult::default(), SubdivisionStats::default())
    } else {
        isolate_in_unit_interval(&rec)?
    };

    for m in &rec_result.exact_roots {
        result.exact_roots.push(m.recip());
    }
    for j in &rec_result.intervals {
        match invert_isolating_interval(f, &rec, j) {
            Inverted::Interval(ivl) => result.intervals.push(ivl),
            Inverted::ExactRoot(x) => result.exact_roots.push(x),
        }
    }

    result.sort();
    Ok((result, stats.merged(&rec_stats)))
}

enum Inverted {
    Interval(DyadicInterval),
    ExactRoot(Rational),
}

/// Maps an isolating interval of the reciprocal polynomial back to a dyadic
/// isolating interval (or exact root) of `f` under `x -> 1/x`.
fn invert_isolating_interval(
    f: &IntPolynomial,
    rec: &IntPolynomial,
    j: &DyadicInterval,
) -> Inverted {
    // First pin the interval to one side of zero; rec(0) = lc(f) != 0, so
    // bisection around zero terminates.
    let mut low = j.low.clone();
    let mut high = j.high.clone();
    let zero = DyadicRational::zero();
    while (low < zero && zero < high) || low == zero || high == zero {
        let m = DyadicRational::midpoint(&low, &high);
        let sm = rec.sign_at(&m.to_rational());
        if sm == 0 {
            return Inverted::ExactRoot(m.to_rational().recip());
        }
        let s_low = rec.sign_above(&low.to_rational());
        if s_low != sm {
            high = m;
        } else {
            low = m;
        }
    }

    // Invert: with 0 outside [a, b], (a, b) maps to (1/b, 1/a).
    let p = high.to_rational().recip();
    let q = low.to_rational().recip();
    debug_assert!(p < q);

    // Tighten to dyadic endpoints by probing a dyadic grid inside (p, q);
    // the enclosed root is simple, so limit signs at the two ends differ.
    let s_left = f.sign_above(&p);
    let mut step_bits: u32 = {
        let width = &q - &p;
        let mut k: u32 = 0;
        let four = Rational::from(BigInt::from(4));
        while &width * Rational::from(BigInt::one() << k) < four {
            k += 1;
        }
        k
    };
    loop {
        let scale = BigInt::one() << step_bits;
        let lo_idx = floor_times(&p, &scale) + 1u32;
        let hi_idx = floor_times(&q, &scale);
        if lo_idx <= hi_idx {
            let at = |i: &BigInt| Rational::new(i.clone(), scale.clone());
            let mut lo = lo_idx.clone();
            let mut hi = hi_idx.clone();
            let s_hi = f.sign_at(&at(&hi));
            if s_hi == 0 {
                return Inverted::ExactRoot(at(&hi));
            }
            if s_hi != s_left {
                while lo < hi {
                    let mid: BigInt = (&lo + &hi) / 2u32;
                    let s = f.sign_at(&at(&mid));
                    if s == 0 {
                        return Inverted::ExactRoot(at(&mid));
                    }
                    if s == s_left {
                        lo = mid + 1u32;
                    } else {
                        hi = mid;
                    }
                }
                // the sign flips between grid points lo-1 and lo
                let a = DyadicRational::new(&lo - 1u32, step_bits);
                let b = DyadicRational::new(lo, step_bits);
                let s_a = f.sign_at(&a.to_rational());
                if s_a == 0 {
                    return Inverted::ExactRoot(a.to_rational());
                }
                if s_a == s_left {
                    return Inverted::Interval(DyadicInterval::new(a, b));
                }
                // otherwise the root sits left of the first grid point
            }
        }
        // root lies between a rational endpoint and the grid; refine
        step_bits += 2;
    }
}

/// Largest integer `n` with `n <= x * scale`.
fn floor_times(x: &Rational, scale: &BigInt) -> BigInt {
    (x * Rational::from(scale.clone())).floor().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::var_on_interval;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64_coeffs(coeffs)
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn two_roots_in_unit_interval() {
        // roots 1/4 and 1/2; 1/2 is hit exactly as a bisection midpoint
        let f = p(&[1, -6, 8]);
        let (res, stats) = isolate_in_unit_interval(&f).unwrap();
        assert_eq!(res.root_count(), 2);
        assert!(res.covers(&rat(1, 4)));
        assert!(res.covers(&rat(1, 2)));
        assert!(stats.node_count >= 3);
        assert_eq!(stats.node_count, stats.width_per_level.iter().sum::<usize>());
        assert_eq!(stats.max_depth, stats.width_per_level.len() - 1);
    }

    #[test]
    fn no_real_roots() {
        let (res, stats) = isolate_in_unit_interval(&p(&[1, 0, 1])).unwrap();
        assert_eq!(res.root_count(), 0);
        assert_eq!(stats.node_count, 1);
    }

    #[test]
    fn root_at_origin() {
        // 2x: var(f, (-1,1)) = 1, so the whole interval isolates the root
        let (res, _) = isolate_in_unit_interval(&p(&[0, 2])).unwrap();
        assert_eq!(res.root_count(), 1);
        assert!(res.covers(&rat(0, 1)));
    }

    #[test]
    fn rejects_non_squarefree() {
        let err = isolate_in_unit_interval(&p(&[1, -2, 1])).unwrap_err();
        assert_eq!(err, PolyError::NotSquareFree { gcd_degree: 1 });
    }

    #[test]
    fn certificates_match_var_on_interval() {
        let f = p(&[3, -1, -14, 8, 8]);
        let (_, stats) = isolate_in_unit_interval(&f).unwrap();
        for node in &stats.nodes {
            let v = var_on_interval(&f, &node.interval).unwrap();
            assert_eq!(v, node.var);
            match node.action {
                NodeAction::Discarded => assert_eq!(v, 0),
                NodeAction::Reported => assert_eq!(v, 1),
                NodeAction::Split { .. } => assert!(v > 1),
            }
        }
    }

    #[test]
    fn isolate_all_reciprocal_pass() {
        // roots ±2, found through the reciprocal polynomial
        let f = p(&[-4, 0, 1]);
        let (res, _) = isolate_all(&f).unwrap();
        assert_eq!(res.root_count(), 2);
        assert!(res.covers(&rat(2, 1)));
        assert!(res.covers(&rat(-2, 1)));
    }

    #[test]
    fn isolate_all_endpoint_roots() {
        let f = p(&[-1, 0, 1]); // x^2 - 1
        let (res, _) = isolate_all(&f).unwrap();
        assert_eq!(res.root_count(), 2);
        assert!(res.exact_roots.contains(&rat(1, 1)));
        assert!(res.exact_roots.contains(&rat(-1, 1)));
    }

    #[test]
    fn isolate_all_interior_only() {
        // 2x^2 - 1: both roots ±1/√2 inside (-1,1); reciprocal pass adds none
        let f = p(&[-1, 0, 2]);
        let (res, _) = isolate_all(&f).unwrap();
        assert_eq!(res.root_count(), 2);
        let sqrt_half = std::f64::consts::FRAC_1_SQRT_2;
        let mut hit = 0;
        for j in &res.intervals {
            let lo = j.low.to_f64();
            let hi = j.high.to_f64();
            if lo < sqrt_half && sqrt_half < hi {
                hit += 1;
            }
            if lo < -sqrt_half && -sqrt_half < hi {
                hit += 1;
            }
        }
        assert_eq!(hit, 2);
    }

    #[test]
    fn isolate_all_rational_roots_outside_unit() {
        // (3x-4)(5x-8) = 15x^2 - 44x + 32, roots 4/3 and 8/5
        let f = p(&[32, -44, 15]);
        let (res, _) = isolate_all(&f).unwrap();
        assert_eq!(res.root_count(), 2);
        assert!(res.covers(&rat(4, 3)));
        assert!(res.covers(&rat(8, 5)));
    }

    #[test]
    fn subadditivity_at_every_split() {
        let f = p(&[1, -30, 70, -35, -10, 4]);
        let (_, stats) = isolate_in_unit_interval(&f).unwrap();
        for (idx, node) in stats.nodes.iter().enumerate() {
            let children: Vec<_> =
                stats.nodes.iter().filter(|n| n.parent == Some(idx)).collect();
            if !children.is_empty() {
                let child_sum: usize = children.iter().map(|n| n.var).sum();
                assert!(child_sum <= node.var);
            }
        }
    }
}
