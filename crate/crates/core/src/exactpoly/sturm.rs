use num_traits::{Signed, Zero};

use super::{rat_int, RatInterval, RatPoly, Rational};
use crate::error::{Error, Result};

/// Halvings allowed while deciding the sign at one critical point. The
/// loop provably terminates; the cap only guards against runaway inputs.
const MAX_REFINEMENTS: usize = 4096;

/// `p, p', -rem(p, p'), ...` down to the last nonzero remainder.
#[derive(Clone, Debug)]
pub struct SturmChain {
    pub polys: Vec<RatPoly>,
}

impl SturmChain {
    pub fn new(p: &RatPoly) -> Self {
        let mut polys = vec![p.clone()];
        if p.is_zero() {
            return SturmChain { polys };
        }
        let mut next = p.derivative();
        while !next.is_zero() {
            let prev = polys.last().unwrap();
            let (_, r) = prev.div_rem(&next);
            polys.push(next);
            next = -&r;
        }
        SturmChain { polys }
    }

    /// Sign variations of the chain evaluated at `x`, zeros skipped.
    pub fn variations(&self, x: &Rational) -> usize {
        let mut last: Option<bool> = None;
        let mut count = 0;
        for p in &self.polys {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let pos = v.is_positive();
            if last.is_some_and(|l| l != pos) {
                count += 1;
            }
            last = Some(pos);
        }
        count
    }

    /// Distinct roots in `(lo, hi]`. Only exact when the chain was built
    /// from a squarefree polynomial; [`count_real_roots`] takes care of that.
    pub fn count_in(&self, lo: &Rational, hi: &Rational) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations(lo) - self.variations(hi)
    }
}

/// Number of distinct real roots of `p` in the half-open interval
/// `(iv.lo, iv.hi]`.
pub fn count_real_roots(p: &RatPoly, iv: &RatInterval) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let chain = SturmChain::new(&p.squarefree_part());
    Ok(chain.count_in(&iv.lo, &iv.hi))
}

/// Outcome of [`certify_nonneg_on_interval`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonnegCertificate {
    pub nonneg: bool,
    /// A point of the interval where `p` is negative, when `nonneg` is false.
    pub witness: Option<Rational>,
}

impl NonnegCertificate {
    fn holds() -> Self {
        NonnegCertificate {
            nonneg: true,
            witness: None,
        }
    }

    fn fails_at(x: Rational) -> Self {
        NonnegCertificate {
            nonneg: false,
            witness: Some(x),
        }
    }
}

/// Decides exactly whether `p >= 0` on the closed interval `iv`.
///
/// The minimum over `[lo, hi]` is attained at an endpoint or at a root of
/// `p'`. Roots of `p'` are isolated with Sturm sequences and the sign of
/// `p` at each of them is decided either by an exact common root with `p`
/// (value zero) or by shrinking the isolating interval until `p` has no
/// root on it.
pub fn certify_nonneg_on_interval(p: &RatPoly, iv: &RatInterval) -> Result<NonnegCertificate> {
    if p.is_zero() {
        return Ok(NonnegCertificate::holds());
    }
    for end in [&iv.lo, &iv.hi] {
        if p.eval(end).is_negative() {
            return Ok(NonnegCertificate::fails_at(end.clone()));
        }
    }
    let dp = p.derivative();
    if dp.degree().unwrap_or(0) == 0 {
        // Monotone (or constant): the endpoints decide.
        return Ok(NonnegCertificate::holds());
    }
    let q = dp.squarefree_part();
    let q_chain = SturmChain::new(&q);
    let p_chain = SturmChain::new(&p.squarefree_part());
    let common = p.gcd(&q);
    let common_chain = (common.degree().unwrap_or(0) > 0).then(|| SturmChain::new(&common));

    for (a, b) in isolate_roots(&q_chain, &iv.lo, &iv.hi)? {
        if let Some(w) =
            sign_at_critical_point(p, &q, &q_chain, &p_chain, common_chain.as_ref(), a, b)?
        {
            return Ok(NonnegCertificate::fails_at(w));
        }
    }
    Ok(NonnegCertificate::holds())
}

/// Isolating intervals `(a, b]` inside `(lo, hi]`, one root of the chain's
/// polynomial in each.
fn isolate_roots(
    chain: &SturmChain,
    lo: &Rational,
    hi: &Rational,
) -> Result<Vec<(Rational, Rational)>> {
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), chain.count_in(lo, hi))];
    let mut steps = 0;
    while let Some((a, b, count)) = stack.pop() {
        match count {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                steps += 1;
                if steps > MAX_REFINEMENTS * 16 {
                    return Err(Error::PrecisionExhausted {
                        cap_bits: MAX_REFINEMENTS as u32,
                    });
                }
                let mid = (&a + &b) / rat_int(2);
                let left = chain.count_in(&a, &mid);
                stack.push((mid.clone(), b, count - left));
                stack.push((a, mid, left));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Returns a point with `p < 0` if the unique root `c` of `q` in `(a, b]`
/// has `p(c) < 0`, and `None` if `p(c) >= 0`.
fn sign_at_critical_point(
    p: &RatPoly,
    q: &RatPoly,
    q_chain: &SturmChain,
    p_chain: &SturmChain,
    common_chain: Option<&SturmChain>,
    mut a: Rational,
    mut b: Rational,
) -> Result<Option<Rational>> {
    let check_point = |x: Rational| -> Option<Rational> { p.eval(&x).is_negative().then_some(x) };
    if q.eval(&b).is_zero() {
        return Ok(check_point(b));
    }
    // The critical point is interior to (a, b); a common root with p means
    // p(c) = 0 exactly.
    if common_chain.is_some_and(|ch| ch.count_in(&a, &b) > 0) {
        return Ok(None);
    }
    for _ in 0..MAX_REFINEMENTS {
        if p_chain.count_in(&a, &b) == 0 {
            // p has constant sign on (a, b], and p(c) != 0.
            return Ok(check_point(b));
        }
        let mid = (&a + &b) / rat_int(2);
        if q.eval(&mid).is_zero() {
            return Ok(check_point(mid));
        }
        if q_chain.count_in(&a, &mid) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
    Err(Error::PrecisionExhausted {
        cap_bits: MAX_REFINEMENTS as u32,
    })
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;

    fn iv(lo: i64, hi: i64) -> RatInterval {
        RatInterval::new(rat_int(lo), rat_int(hi)).unwrap()
    }

    #[test]
    fn root_count_examples() {
        let p = RatPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(count_real_roots(&p, &iv(-2, 2)).unwrap(), 2);
        let p = RatPoly::from_ints(&[1, 0, 1]);
        assert_eq!(count_real_roots(&p, &iv(-10, 10)).unwrap(), 0);
        let g = RatPoly::new(vec![rat(0, 1), rat(-43, 60), rat(-3, 10), rat(1, 60)]);
        assert_eq!(count_real_roots(&g.derivative(), &iv(0, 21)).unwrap(), 1);
        // 6 + sqrt(151/3) = 13.0945...
        let near = RatInterval::new(rat(1309, 100), rat(1310, 100)).unwrap();
        assert_eq!(count_real_roots(&g.derivative(), &near).unwrap(), 1);
        assert_eq!(
            count_real_roots(&RatPoly::zero(), &iv(0, 1)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn half_open_convention() {
        // Roots at -1 and 1.
        let p = RatPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(count_real_roots(&p, &iv(-1, 1)).unwrap(), 1);
        assert_eq!(count_real_roots(&p, &iv(1, 3)).unwrap(), 0);
        // Double root at 1 sitting on the right endpoint still counts once.
        let p = RatPoly::from_ints(&[1, -2, 1]);
        assert_eq!(count_real_roots(&p, &iv(0, 1)).unwrap(), 1);
    }

    #[test]
    fn certify_examples() {
        let sq = RatPoly::from_ints(&[0, 0, 1]);
        assert!(certify_nonneg_on_interval(&sq, &iv(-1, 1)).unwrap().nonneg);

        let g = RatPoly::new(vec![rat(0, 1), rat(-43, 60), rat(-3, 10), rat(1, 60)]);
        let top = RatPoly::constant(g.eval(&rat_int(21)));
        let cert = certify_nonneg_on_interval(&(&top - &g), &iv(0, 21)).unwrap();
        assert_eq!(cert, NonnegCertificate::holds());

        let top = RatPoly::constant(g.eval(&rat_int(20)));
        let cert = certify_nonneg_on_interval(&(&top - &g), &iv(0, 20)).unwrap();
        assert!(!cert.nonneg);
        let w = cert.witness.unwrap();
        assert!((&top - &g).eval(&w).is_negative());
        assert_eq!(w, rat_int(0));

        assert!(certify_nonneg_on_interval(&RatPoly::zero(), &iv(0, 1)).unwrap().nonneg);
    }

    #[test]
    fn certify_interior_dip() {
        // (x - 1/2)^2 - 1/100 dips below zero only inside (0.4, 0.6).
        let p = RatPoly::new(vec![rat(6, 25), rat(-1, 1), rat(1, 1)]);
        let cert = certify_nonneg_on_interval(&p, &iv(0, 1)).unwrap();
        assert!(!cert.nonneg);
        let w = cert.witness.unwrap();
        assert!(p.eval(&w).is_negative());
        assert!(w > rat(2, 5) && w < rat(3, 5));
        // Touching zero at an irrational-free double root is still nonneg.
        let p = RatPoly::new(vec![rat(1, 4), rat(-1, 1), rat(1, 1)]);
        assert!(certify_nonneg_on_interval(&p, &iv(-3, 3)).unwrap().nonneg);
    }

    #[test]
    fn certify_touching_at_irrational_point() {
        // (x^2 - 2)^2 touches zero at sqrt(2); the common-root branch decides it.
        let p = RatPoly::from_ints(&[4, 0, -4, 0, 1]);
        assert!(certify_nonneg_on_interval(&p, &iv(0, 3)).unwrap().nonneg);
        let dipped = &p - &RatPoly::constant(rat(1, 1_000_000));
        assert!(!certify_nonneg_on_interval(&dipped, &iv(0, 3)).unwrap().nonneg);
    }
}
