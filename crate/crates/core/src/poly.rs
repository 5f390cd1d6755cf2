//! Real roots of low-degree real polynomials.
//!
//! Roots are isolated between consecutive critical points (the real roots of
//! the derivative, found recursively) and refined by bisection, so every
//! returned root is bracketed by a sign change or is a tangency at a
//! critical point.

use crate::scalar::Real;

/// Evaluates `sum coeffs[i] x^i` by Horner's rule.
pub fn eval<T: Real>(coeffs: &[T], x: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
}

/// `sum |coeffs[i]| |x|^i`, the magnitude scale of the rounding error of [`eval`].
fn eval_scale<T: Real>(coeffs: &[T], x: T) -> T {
    let ax = x.abs();
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * ax + c.abs())
}

fn derivative<T: Real>(coeffs: &[T]) -> Vec<T> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * T::lit(i as f64))
        .collect()
}

fn bisect<T: Real>(coeffs: &[T], mut a: T, mut b: T) -> T {
    let mut fa = eval(coeffs, a);
    for _ in 0..300 {
        let mid = (a + b) * T::lit(0.5);
        if mid <= a || mid >= b {
            break;
        }
        let fm = eval(coeffs, mid);
        if fm == T::zero() {
            return mid;
        }
        if (fm < T::zero()) == (fa < T::zero()) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    (a + b) * T::lit(0.5)
}

/// All real roots of `sum coeffs[i] x^i`, ascending. Multiple roots are
/// reported once.
pub fn real_roots<T: Real>(coeffs: &[T]) -> Vec<T> {
    let mut c: Vec<T> = coeffs.to_vec();
    while c.last().is_some_and(|v| *v == T::zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    if c.len() == 2 {
        return vec![-c[0] / c[1]];
    }
    let lead = c[c.len() - 1];
    // Cauchy bound on root magnitude
    let bound = T::one()
        + c[..c.len() - 1]
            .iter()
            .fold(T::zero(), |m, &v| m.max((v / lead).abs()));

    let crit = real_roots(&derivative(&c));
    let mut knots = Vec::with_capacity(crit.len() + 2);
    knots.push(-bound);
    knots.extend(crit.iter().copied().filter(|v| v.abs() < bound));
    knots.push(bound);

    let tangent_tol = T::default_epsilon() * T::lit(64.0);
    let mut roots = Vec::new();
    for w in knots.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (eval(&c, a), eval(&c, b));
        if fa == T::zero() {
            roots.push(a);
        } else if (fa < T::zero()) != (fb < T::zero()) && fb != T::zero() {
            roots.push(bisect(&c, a, b));
        }
    }
    // tangential (even-multiplicity) roots sit on critical points
    for &x in &crit {
        if eval(&c, x).abs() <= tangent_tol * eval_scale(&c, x) {
            roots.push(x);
        }
    }
    if eval(&c, bound) == T::zero() {
        roots.push(bound);
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let merge = T::lit(1e3) * T::default_epsilon();
    roots.dedup_by(|a, b| (*a - *b).abs() <= merge * (T::one() + b.abs()));
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_roots(roots: &[f64], lead: f64) -> Vec<f64> {
        let mut c = vec![lead];
        for &r in roots {
            let mut next = vec![0.0; c.len() + 1];
            for (i, &v) in c.iter().enumerate() {
                next[i + 1] += v;
                next[i] -= r * v;
            }
            c = next;
        }
        c
    }

    #[test]
    fn simple_cases() {
        assert!(real_roots::<f64>(&[1.0]).is_empty());
        assert_eq!(real_roots(&[-2.0, 1.0]), vec![2.0]);
        assert!(real_roots(&[1.0, 0.0, 1.0]).is_empty());
        let r = real_roots(&[-1.0f64, 0.0, 1.0]);
        assert_eq!(r.len(), 2);
        assert!((r[0] + 1.0).abs() < 1e-15 && (r[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn repeated_roots() {
        // 3N^3 (N + 2): triple root at zero
        let r = real_roots(&[0.0f64, 0.0, 0.0, 6.0, 3.0]);
        assert_eq!(r.len(), 2);
        assert!(r[0] + 2.0 < 1e-12 && r[1].abs() < 1e-12);
        // (x - 0.5)^2 (x + 1)(x - 3)
        let r = real_roots(&from_roots(&[0.5, 0.5, -1.0, 3.0], 2.0));
        assert_eq!(r.len(), 3);
        assert!((r[1] - 0.5).abs() < 1e-7);
    }

    proptest! {
        #[test]
        fn recovers_distinct_quartic_roots(
            mut rs in proptest::collection::vec(-3.0f64..3.0, 4),
            lead in prop_oneof![-5.0f64..-0.1, 0.1f64..5.0],
        ) {
            rs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            prop_assume!(rs.windows(2).all(|w| w[1] - w[0] > 1e-3));
            let found = real_roots(&from_roots(&rs, lead));
            prop_assert_eq!(found.len(), 4);
            for (f, r) in found.iter().zip(&rs) {
                prop_assert!((f - r).abs() < 1e-8, "{} vs {}", f, r);
            }
        }

        #[test]
        fn quadratic_factor_without_real_roots(a in -2.0f64..2.0, b in 0.1f64..2.0, r1 in -2.0f64..2.0) {
            // (x - r1)((x - a)^2 + b^2) has exactly one real root
            let cubic = {
                let q = [a * a + b * b, -2.0 * a, 1.0];
                [-r1 * q[0], q[0] - r1 * q[1], q[1] - r1 * q[2], q[2]]
            };
            let found = real_roots(&cubic);
            prop_assert_eq!(found.len(), 1);
            prop_assert!((found[0] - r1).abs() < 1e-9);
        }
    }
}
