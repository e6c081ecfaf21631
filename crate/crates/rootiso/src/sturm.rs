//! Sturm sequences and the exact root-counting solver built on them.
//!
//! The sequence is `F_0 = f`, `F_1 = f'`, and `F_i` a positive rational
//! multiple of `-rem(F_{i-2}, F_{i-1})`. We keep every `F_i` in `Z[X]` by
//! using primitive pseudo-remainders and explicitly tracking the positive
//! normalization factor of each step; a negative multiplier would silently
//! flip signs and corrupt the counts, which the positive-scaling property
//! test guards against.
//!
//! The difference `var(ST(f; a)) - var(ST(f; b))` counts the distinct real
//! roots in `(a, b)` exactly, without any square-freeness assumption. At
//! points where `f` itself vanishes (bisection midpoints that hit roots)
//! the solver works with one-sided variation counts, evaluating the sign
//! just left/right of the point through the first nonvanishing derivative —
//! exact evaluation logic, no numeric perturbation.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::Signed;

use crate::descartes::{IsolationResult, NodeAction, NodeRecord, SubdivisionStats};
use crate::poly::{DyadicInterval, DyadicRational, IntPolynomial, PolyError, Rational};

/// The signed (pseudo-)remainder sequence of `f` and `f'`.
#[derive(Debug, Clone)]
pub struct SturmSequence {
    polys: Vec<IntPolynomial>,
    scale_factors: Vec<Rational>,
}

impl SturmSequence {
    /// Builds the Sturm sequence of a nonconstant polynomial.
    pub fn new(f: &IntPolynomial) -> Result<SturmSequence, PolyError> {
        if f.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if f.degree() == Some(0) {
            return Err(PolyError::ConstantPolynomial);
        }
        let mut polys = vec![f.clone(), f.derivative()];
        let mut scale_factors = vec![Rational::from(BigInt::from(1)); 2];
        loop {
            let a = &polys[polys.len() - 2];
            let b = &polys[polys.len() - 1];
            let prem = a.pseudo_rem(b);
            if prem.is_zero() {
                break;
            }
            // prem = lc(b)^(δ+1) rem(a, b); fold the sign of that power into
            // the orientation so F_i is a *positive* multiple of -rem(a, b).
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let mut lc_pow = BigInt::from(1);
            for _ in 0..=delta {
                lc_pow *= b.leading_coeff().unwrap();
            }
            let oriented = if lc_pow.is_negative() { prem } else { prem.neg() };
            let content = oriented.content();
            let next =
                IntPolynomial::new(oriented.coeffs().iter().map(|c| c / &content).collect());
            scale_factors.push(Rational::new(lc_pow.abs(), content));
            polys.push(next);
        }
        Ok(SturmSequence { polys, scale_factors })
    }

    pub fn polys(&self) -> &[IntPolynomial] {
        &self.polys
    }

    /// Positive factor relating `polys[i]` to `-rem(F_{i-2}, F_{i-1})`
    /// (entries 0 and 1 are 1).
    pub fn scale_factors(&self) -> &[Rational] {
        &self.scale_factors
    }

    /// The original polynomial `F_0`.
    pub fn f(&self) -> &IntPolynomial {
        &self.polys[0]
    }

    /// True when the last element is a nonzero constant, which happens
    /// exactly for square-free `f`.
    pub fn input_was_squarefree(&self) -> bool {
        self.polys.last().map_or(false, |g| g.degree() == Some(0))
    }

    /// Sign variations (zeros excluded) of the exact evaluations at `x`.
    pub fn var_at(&self, x: &Rational) -> usize {
        count_variations(self.polys.iter().map(|g| g.sign_at(x)))
    }

    /// Sign variations just right of `x` (limit from above).
    pub fn var_above(&self, x: &Rational) -> usize {
        count_variations(self.polys.iter().map(|g| g.sign_above(x)))
    }

    /// Sign variations just left of `x` (limit from below).
    pub fn var_below(&self, x: &Rational) -> usize {
        count_variations(self.polys.iter().map(|g| g.sign_below(x)))
    }

    /// Exact number of distinct real roots in `(a, b)`, requiring that
    /// neither endpoint is a root.
    pub fn count_roots_in(&self, a: &Rational, b: &Rational) -> Result<usize, PolyError> {
        if a >= b {
            return Err(PolyError::EmptyInterval);
        }
        if self.f().sign_at(a) == 0 {
            return Err(PolyError::EndpointIsRoot(a.to_string()));
        }
        if self.f().sign_at(b) == 0 {
            return Err(PolyError::EndpointIsRoot(b.to_string()));
        }
        Ok(self.var_at(a) - self.var_at(b))
    }

    /// Exact number of distinct real roots in the open interval `(a, b)`,
    /// valid even when `f(a) = 0` or `f(b) = 0`.
    pub fn count_roots_open(&self, a: &Rational, b: &Rational) -> Result<usize, PolyError> {
        if a >= b {
            return Err(PolyError::EmptyInterval);
        }
        Ok(self.var_above(a) - self.var_below(b))
    }

    /// Sum over all coefficients of all sequence polynomials of their bit
    /// lengths — the measured cost of the standard representation.
    pub fn total_bitsize(&self) -> u64 {
        self.polys.iter().map(|g| g.total_coeff_bits()).sum()
    }

    /// Largest coefficient bitsize anywhere in the sequence.
    pub fn max_coeff_bitsize(&self) -> u64 {
        self.polys.iter().map(|g| g.bitsize()).max().unwrap_or(0)
    }
}

fn count_variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut count = 0;
    let mut last = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Convenience wrapper for [`SturmSequence::new`].
pub fn sturm_sequence(f: &IntPolynomial) -> Result<SturmSequence, PolyError> {
    SturmSequence::new(f)
}

/// Isolates the distinct real roots of `f` in `(-1, 1)` by bisection with
/// exact Sturm counts. Square-freeness is not required.
pub fn isolate_sturm(f: &IntPolynomial) -> Result<(IsolationResult, SubdivisionStats), PolyError> {
    let (result, stats, _) = isolate_sturm_with_sequence(f)?;
    Ok((result, stats))
}

/// Like [`isolate_sturm`], additionally returning the Sturm sequence so
/// callers can read off its total bitsize without recomputing it.
pub fn isolate_sturm_with_sequence(
    f: &IntPolynomial,
) -> Result<(IsolationResult, SubdivisionStats, SturmSequence), PolyError> {
    let seq = SturmSequence::new(f)?;
    let mut result = IsolationResult::default();
    let mut stats = SubdivisionStats {
        max_intermediate_bitsize: seq.max_coeff_bitsize(),
        ..SubdivisionStats::default()
    };

    // One-sided variation counts per endpoint, memoized: siblings share
    // endpoints, so this halves the evaluation work.
    let mut above: HashMap<DyadicRational, usize> = HashMap::new();
    let mut below: HashMap<DyadicRational, usize> = HashMap::new();

    struct Entry {
        interval: DyadicInterval,
        depth: usize,
        parent: Option<usize>,
    }

    let mut queue = VecDeque::new();
    queue.push_back(Entry { interval: DyadicInterval::unit(), depth: 0, parent: None });

    while let Some(entry) = queue.pop_front() {
        let va = *above
            .entry(entry.interval.low.clone())
            .or_insert_with(|| seq.var_above(&entry.interval.low.to_rational()));
        let vb = *below
            .entry(entry.interval.high.clone())
            .or_insert_with(|| seq.var_below(&entry.interval.high.to_rational()));
        let count = va - vb;

        let action = match count {
            0 => NodeAction::Discarded,
            1 => {
                result.intervals.push(entry.interval.clone());
                NodeAction::Reported
            }
            _ => {
                let m = entry.interval.midpoint();
                let midpoint_root = f.sign_at(&m.to_rational()) == 0;
                if midpoint_root {
                    result.exact_roots.push(m.to_rational());
                }
                let (jl, jr) = entry.interval.bisect();
                let parent = Some(stats.nodes.len());
                queue.push_back(Entry { interval: jl, depth: entry.depth + 1, parent });
                queue.push_back(Entry { interval: jr, depth: entry.depth + 1, parent });
                NodeAction::Split { midpoint_root }
            }
        };

        record(
            &mut stats,
            NodeRecord {
                interval: entry.interval,
                depth: entry.depth,
                parent: entry.parent,
                var: count,
                action,
            },
        );
    }

    result.sort();
    Ok((result, stats, seq))
}

fn record(stats: &mut SubdivisionStats, node: NodeRecord) {
    stats.node_count += 1;
    stats.max_depth = stats.max_depth.max(node.depth);
    if stats.width_per_level.len() <= node.depth {
        stats.width_per_level.resize(node.depth + 1, 0);
    }
    stats.width_per_level[node.depth] += 1;
    stats.var_per_node.push(node.var);
    stats.nodes.push(node);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64_coeffs(coeffs)
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sequence_of_quadratic() {
        // 2x^2 - 1: [2x^2 - 1, 4x, c] with c a positive constant
        let seq = SturmSequence::new(&p(&[-1, 0, 2])).unwrap();
        assert_eq!(seq.polys().len(), 3);
        assert_eq!(seq.polys()[1], p(&[0, 4]));
        let c = &seq.polys()[2];
        assert_eq!(c.degree(), Some(0));
        assert!(c.leading_coeff().unwrap().is_positive());
        assert!(seq.input_was_squarefree());
        // frozen regression value: coefficient bits of {-1, 2}, {4}, {1}
        assert_eq!(seq.total_bitsize(), 3 + 3 + 1);
    }

    #[test]
    fn sequence_detects_multiple_roots() {
        // (x-1)^2 terminates at the degree-1 gcd
        let seq = SturmSequence::new(&p(&[1, -2, 1])).unwrap();
        assert_eq!(seq.polys().last().unwrap().degree(), Some(1));
        assert!(!seq.input_was_squarefree());
    }

    #[test]
    fn sequence_of_x() {
        let seq = SturmSequence::new(&p(&[0, 1])).unwrap();
        assert_eq!(seq.polys().len(), 2);
        assert_eq!(seq.total_bitsize(), 2);
        // zero-exclusion at the root: values [0, 1] -> no variations
        assert_eq!(seq.var_at(&rat(0, 1)), 0);
    }

    #[test]
    fn constant_input_is_error() {
        assert!(matches!(SturmSequence::new(&p(&[3])), Err(PolyError::ConstantPolynomial)));
        assert!(matches!(isolate_sturm(&p(&[3])), Err(PolyError::ConstantPolynomial)));
    }

    #[test]
    fn var_at_examples() {
        let seq = SturmSequence::new(&p(&[-1, 0, 2])).unwrap();
        // hand evaluations at ∓1: [1, ∓4, 1]
        assert_eq!(seq.var_at(&rat(-1, 1)), 2);
        assert_eq!(seq.var_at(&rat(1, 1)), 0);
    }

    #[test]
    fn count_roots_examples() {
        let seq = SturmSequence::new(&p(&[-1, 0, 2])).unwrap();
        assert_eq!(seq.count_roots_in(&rat(-1, 1), &rat(1, 1)).unwrap(), 2);
        let no_roots = SturmSequence::new(&p(&[1, 0, 1])).unwrap();
        assert_eq!(no_roots.count_roots_in(&rat(-1, 1), &rat(1, 1)).unwrap(), 0);
        let outside = SturmSequence::new(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(outside.count_roots_in(&rat(-1, 1), &rat(1, 1)).unwrap(), 0);
    }

    #[test]
    fn count_roots_rejects_root_endpoints() {
        let seq = SturmSequence::new(&p(&[0, 1])).unwrap();
        assert!(matches!(
            seq.count_roots_in(&rat(0, 1), &rat(1, 1)),
            Err(PolyError::EndpointIsRoot(_))
        ));
    }

    #[test]
    fn open_count_handles_root_endpoints() {
        // x(x-1)^2: distinct roots 0 and 1
        let f = p(&[0, 1]).mul(&p(&[1, -2, 1]));
        let seq = SturmSequence::new(&f).unwrap();
        assert_eq!(seq.count_roots_open(&rat(-1, 1), &rat(1, 1)).unwrap(), 1);
        assert_eq!(seq.count_roots_open(&rat(-1, 1), &rat(0, 1)).unwrap(), 0);
        assert_eq!(seq.count_roots_open(&rat(0, 1), &rat(1, 1)).unwrap(), 0);
        assert_eq!(seq.count_roots_open(&rat(0, 1), &rat(2, 1)).unwrap(), 1);
    }

    #[test]
    fn isolates_same_roots_as_descartes() {
        let f = p(&[1, -6, 8]);
        let (res, stats) = isolate_sturm(&f).unwrap();
        assert_eq!(res.root_count(), 2);
        assert!(res.covers(&rat(1, 4)));
        assert!(res.covers(&rat(1, 2)));
        assert_eq!(stats.node_count, stats.width_per_level.iter().sum::<usize>());
    }

    #[test]
    fn isolates_non_squarefree_input() {
        // x(x-1)^2: only the distinct root 0 lies in (-1, 1)
        let f = p(&[0, 1, -2, 1]);
        let (res, _) = isolate_sturm(&f).unwrap();
        assert_eq!(res.root_count(), 1);
        assert!(res.covers(&rat(0, 1)));
    }

    #[test]
    fn positive_scaling_does_not_change_var() {
        let f = p(&[3, -9, -2, 6, 1]);
        let seq = SturmSequence::new(&f).unwrap();
        // scale each F_i (i >= 1) by an arbitrary positive integer
        let scaled = SturmSequence {
            polys: seq
                .polys()
                .iter()
                .enumerate()
                .map(|(i, g)| if i == 0 { g.clone() } else { g.scale(&BigInt::from(7 + i as i64)) })
                .collect(),
            scale_factors: seq.scale_factors().to_vec(),
        };
        for x in [rat(-1, 1), rat(-1, 3), rat(0, 1), rat(2, 5), rat(1, 1)] {
            assert_eq!(seq.var_at(&x), scaled.var_at(&x));
            assert_eq!(seq.var_above(&x), scaled.var_above(&x));
            assert_eq!(seq.var_below(&x), scaled.var_below(&x));
        }
    }

    #[test]
    fn degrees_strictly_decrease() {
        let f = p(&[5, 1, -4, -1, 2, 2, 1]);
        let seq = SturmSequence::new(&f).unwrap();
        for w in seq.polys().windows(2) {
            assert!(w[0].degree().unwrap() > w[1].degree().unwrap());
        }
    }
}
