//! Chromatic roots and the root-radius bounds `8 e t D` and `7.04 e t D`.
//!
//! Roots are found by Aberth's simultaneous iteration in double-double
//! arithmetic (about 106 significant bits) on the polynomial with its zero
//! roots removed exactly, then polished by Newton steps.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use serde::Serialize;
use twofloat::TwoFloat;

use crate::bounds::{decimal_string, scaled_e_power_bracket, RHS_DIGITS};
use crate::chromatic::chromatic_polynomial_auto;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::penrose::bound_edge_size;
use crate::poly::IntPolynomial;
use crate::Caps;

type C = Complex<TwoFloat>;

const MAX_ITERATIONS: usize = 2000;
const NEWTON_STEPS: usize = 30;
/// Slack applied on the bound side of root-radius comparisons.
pub const BOUND_SLACK: f64 = 1e-9;
/// Upper estimate of the constant in the bounded-exponential-type root bound.
pub const ROOT_RADIUS_CONSTANT: (i64, i64) = (704, 100);

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Root {
    pub re: f64,
    pub im: f64,
    /// `|P(z)|` divided by the largest coefficient magnitude of `P`.
    pub residual: f64,
}

impl Root {
    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

fn to_twofloat(c: &BigInt) -> TwoFloat {
    let hi = c.to_f64().unwrap_or(f64::INFINITY);
    let rest = c - BigInt::from_f64(hi).unwrap_or_default();
    TwoFloat::from_f64(hi) + TwoFloat::from_f64(rest.to_f64().unwrap_or(0.0))
}

fn tf(x: f64) -> TwoFloat {
    TwoFloat::from_f64(x)
}

fn horner(coeffs: &[TwoFloat], z: C) -> C {
    coeffs
        .iter()
        .rev()
        .fold(C::new(tf(0.0), tf(0.0)), |acc, &c| acc * z + C::new(c, tf(0.0)))
}

/// Value and derivative at `z`.
fn horner_with_derivative(coeffs: &[TwoFloat], z: C) -> (C, C) {
    let zero = C::new(tf(0.0), tf(0.0));
    coeffs.iter().rev().fold((zero, zero), |(p, dp), &c| {
        (p * z + C::new(c, tf(0.0)), dp * z + p)
    })
}

/// Quotient of `coeffs` (constant term first) by `x - k`, assuming `k` is a root.
fn divide_by_linear(coeffs: &[BigInt], k: i64) -> Vec<BigInt> {
    let d = coeffs.len() - 1;
    let mut out = vec![BigInt::zero(); d];
    let mut carry = BigInt::zero();
    for i in (1..=d).rev() {
        carry = &coeffs[i] + carry * k;
        out[i - 1] = carry.clone();
    }
    out
}

fn abs(z: C) -> TwoFloat {
    z.re.hypot(z.im)
}

/// Initial guesses on a circle whose radius comes from the Fujiwara bound.
fn initial_guesses(monic: &[f64]) -> Vec<C> {
    let d = monic.len() - 1;
    let radius = (1..=d)
        .map(|i| monic[d - i].abs().powf(1.0 / i as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    (0..d)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / d as f64 + 0.4;
            C::new(tf(radius * angle.cos()), tf(radius * angle.sin()))
        })
        .collect()
}

/// All complex roots of `p` with multiplicity, each with residual at most `tol`
/// relative to the largest coefficient magnitude.
pub fn find_roots(p: &IntPolynomial, tol: f64) -> Result<Vec<Root>> {
    if !p.degree().is_some_and(|d| d >= 1) {
        return Err(Error::InvalidParams(
            "root finding needs a polynomial of degree at least 1".into(),
        ));
    }
    let scale = to_twofloat(&p.max_abs_coefficient());
    let original: Vec<TwoFloat> = p.coefficients().iter().map(to_twofloat).collect();
    let residual_of = |z: C| (abs(horner(&original, z)) / scale).hi();
    let exact_root = |k: i64| Root {
        re: k as f64,
        im: 0.0,
        residual: 0.0,
    };

    // Zero roots and small positive integer roots are split off exactly.
    let zeros = p.zero_root_multiplicity();
    let mut roots = vec![exact_root(0); zeros];
    let mut rest: Vec<BigInt> = p.coefficients()[zeros..].to_vec();
    for k in 1..rest.len() as i64 {
        while rest.len() > 1 && IntPolynomial::new(rest.clone()).eval_i64(k).is_zero() {
            rest = divide_by_linear(&rest, k);
            roots.push(exact_root(k));
        }
    }
    let deflated: Vec<TwoFloat> = rest.iter().map(to_twofloat).collect();
    let d = deflated.len() - 1;
    if d == 0 {
        return Ok(roots);
    }
    let lead = deflated[d];
    let monic: Vec<TwoFloat> = deflated.iter().map(|&c| c / lead).collect();
    let monic_f64: Vec<f64> = monic.iter().map(|c| c.hi()).collect();

    let mut z = initial_guesses(&monic_f64);
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut max_step = 0.0f64;
        for k in 0..d {
            let (pv, dpv) = horner_with_derivative(&monic, z[k]);
            if pv.re.is_zero() && pv.im.is_zero() {
                continue;
            }
            let ratio = pv / dpv;
            let repulsion = (0..d)
                .filter(|&j| j != k)
                .fold(C::new(tf(0.0), tf(0.0)), |acc, j| {
                    acc + C::new(tf(1.0), tf(0.0)) / (z[k] - z[j])
                });
            let step = ratio / (C::new(tf(1.0), tf(0.0)) - ratio * repulsion);
            if !step.re.hi().is_finite() || !step.im.hi().is_finite() {
                continue;
            }
            z[k] = z[k] - step;
            let rel = (abs(step) / abs(z[k]).max(tf(1.0))).hi();
            max_step = max_step.max(rel);
        }
        if max_step < 1e-28
            || (iterations % 8 == 0 && z.iter().all(|&zk| residual_of(zk) <= tol * 1e-6))
        {
            break;
        }
    }

    for zk in z.iter_mut() {
        let mut best = residual_of(*zk);
        for _ in 0..NEWTON_STEPS {
            let (pv, dpv) = horner_with_derivative(&deflated, *zk);
            if dpv.re.is_zero() && dpv.im.is_zero() {
                break;
            }
            let candidate = *zk - pv / dpv;
            let r = residual_of(candidate);
            if !(r < best) {
                break;
            }
            best = r;
            *zk = candidate;
        }
    }

    let mut worst = 0.0f64;
    for zk in &z {
        let residual = residual_of(*zk);
        worst = worst.max(residual);
        roots.push(Root {
            re: zk.re.hi(),
            im: zk.im.hi(),
            residual,
        });
    }
    if !(worst <= tol) {
        return Err(Error::NonConvergence {
            iterations,
            residual: worst,
        });
    }
    Ok(roots)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootBoundReport {
    pub polynomial: IntPolynomial,
    pub roots: Vec<Root>,
    pub max_modulus: f64,
    /// Edge size `t` and maximum degree `D`.
    pub t: usize,
    pub d: usize,
    pub bound_8etd: f64,
    pub bound_cr: f64,
    /// The same bounds truncated to `rhs_digits` decimal places.
    pub bound_8etd_exact: String,
    pub bound_cr_exact: String,
    pub rhs_digits: usize,
    pub slack: f64,
    pub ok_8etd: bool,
    pub ok_cr: bool,
}

fn within(modulus: f64, bound_lo: &BigRational) -> bool {
    let slack = BigRational::from_float(1.0 + BOUND_SLACK).expect("finite");
    match BigRational::from_float(modulus) {
        Some(m) => m <= bound_lo * slack,
        None => false,
    }
}

/// Roots of `P_H` against `8 e t D` and `7.04 e t D`.
pub fn check_root_bound(h: &Hypergraph, tol: f64, caps: &Caps) -> Result<RootBoundReport> {
    let t = bound_edge_size(h)?;
    let d = h.max_degree();
    let p = chromatic_polynomial_auto(h, caps)?;
    let roots = if p.degree().unwrap_or(0) >= 1 {
        find_roots(&p, tol)?
    } else {
        Vec::new()
    };
    let max_modulus = roots.iter().map(Root::modulus).fold(0.0, f64::max);
    let etd = (t * d) as u64;
    let eight = BigRational::from_integer(BigInt::from(8));
    let (c_num, c_den) = ROOT_RADIUS_CONSTANT;
    let c = BigRational::new(BigInt::from(c_num), BigInt::from(c_den));
    let (eight_lo, _) = scaled_e_power_bracket(&eight, etd, 1);
    let (cr_lo, _) = scaled_e_power_bracket(&c, etd, 1);
    Ok(RootBoundReport {
        polynomial: p,
        ok_8etd: within(max_modulus, &eight_lo),
        ok_cr: within(max_modulus, &cr_lo),
        bound_8etd: eight_lo.to_f64().unwrap_or(f64::INFINITY),
        bound_cr: cr_lo.to_f64().unwrap_or(f64::INFINITY),
        bound_8etd_exact: decimal_string(&eight_lo, RHS_DIGITS),
        bound_cr_exact: decimal_string(&cr_lo, RHS_DIGITS),
        rhs_digits: RHS_DIGITS,
        slack: BOUND_SLACK,
        roots,
        max_modulus,
        t,
        d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};

    fn sorted_real_parts(roots: &[Root]) -> Vec<f64> {
        let mut v: Vec<f64> = roots.iter().map(|r| r.re).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    fn assert_close(actual: &[f64], expected: &[f64], eps: f64) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.iter().zip(expected) {
            assert!((a - e).abs() < eps, "{actual:?} vs {expected:?}");
        }
    }

    #[test]
    fn root_examples() {
        let r = find_roots(&IntPolynomial::from_i64(&[0, -1, 0, 1]), 1e-8).unwrap();
        assert_close(&sorted_real_parts(&r), &[-1.0, 0.0, 1.0], 1e-12);
        let r = find_roots(&IntPolynomial::from_i64(&[0, 2, -3, 1]), 1e-8).unwrap();
        assert_close(&sorted_real_parts(&r), &[0.0, 1.0, 2.0], 1e-12);
        // x (x^2 - 1)^2 has double roots, which converge to about half precision.
        let r = find_roots(&IntPolynomial::from_i64(&[0, 1, 0, -2, 0, 1]), 1e-8).unwrap();
        assert_close(&sorted_real_parts(&r), &[-1.0, -1.0, 0.0, 1.0, 1.0], 1e-7);
        assert!(r.iter().all(|x| x.im.abs() < 1e-7 && x.residual <= 1e-8));
    }

    #[test]
    fn complex_roots_and_constant_rejection() {
        // x^2 + 1
        let r = find_roots(&IntPolynomial::from_i64(&[1, 0, 1]), 1e-8).unwrap();
        let mut ims: Vec<f64> = r.iter().map(|x| x.im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_close(&ims, &[-1.0, 1.0], 1e-12);
        assert!(find_roots(&IntPolynomial::from_i64(&[5]), 1e-8).is_err());
        // x^4: all roots removed exactly.
        let r = find_roots(&IntPolynomial::monomial(4), 1e-8).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|x| x.re == 0.0 && x.im == 0.0));
    }

    #[test]
    fn bound_examples() {
        let c = Caps::default();
        let single = generate(&Family::SingleEdge { t: 3 }).unwrap();
        let rep = check_root_bound(&single, 1e-8, &c).unwrap();
        assert!((rep.max_modulus - 1.0).abs() < 1e-12);
        assert!(rep.bound_8etd_exact.starts_with("65.23876388"));
        assert!(rep.ok_8etd && rep.ok_cr);

        let k3 = generate(&Family::CompleteUniform { n: 3, t: 2 }).unwrap();
        let rep = check_root_bound(&k3, 1e-8, &c).unwrap();
        assert!((rep.max_modulus - 2.0).abs() < 1e-12);
        assert!((rep.bound_8etd - 86.985).abs() < 1e-3);
        assert!(rep.ok_8etd && rep.ok_cr);

        let k53 = generate(&Family::CompleteUniform { n: 5, t: 3 }).unwrap();
        let rep = check_root_bound(&k53, 1e-8, &c).unwrap();
        assert_eq!(rep.d, 6);
        assert!((rep.bound_8etd - 391.43).abs() < 1e-2);
        assert_eq!(rep.roots.len(), 5);
        assert!(rep.ok_8etd && rep.ok_cr);

        let edgeless = Hypergraph::empty(3);
        let rep = check_root_bound(&edgeless, 1e-8, &c).unwrap();
        assert_eq!(rep.max_modulus, 0.0);
        assert!(rep.ok_8etd && rep.ok_cr);
    }
}
