use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Polynomial;
use super::real::{format_f64, format_rational, rational_to_f64};
use super::AlgebraError;
use crate::policy::NumericPolicy;

/// Where the smallest positive root lies.
#[derive(Debug, Clone, PartialEq)]
pub enum RootValue {
    /// The polynomial is a nonzero constant.
    Infinity,
    Exact(BigRational),
    /// The root is the only root of the polynomial in `(lo, hi]`.
    Bracket {
        lo: BigRational,
        hi: BigRational,
    },
}

/// `a + b·√d` with `d` square-free and greater than one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

impl QuadraticSurd {
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a)
            + rational_to_f64(&self.b) * self.d.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        let b = self.b.abs();
        let coef = if b.is_one() {
            String::new()
        } else {
            format!("{}·", format_rational(&b))
        };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{lead}{coef}√{}", self.d)
        } else {
            write!(f, "{} {sign} {coef}√{}", format_rational(&self.a), self.d)
        }
    }
}

/// Companion-matrix cross-check: smallest modulus among all complex roots.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusCheck {
    pub min_modulus: f64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootResult {
    pub value: RootValue,
    /// Upper bound on `|p(x)|` over the bracket, zero when exact.
    pub residual_bound: f64,
    pub surd: Option<QuadraticSurd>,
    pub modulus_check: Option<ModulusCheck>,
}

impl RootResult {
    pub fn is_infinity(&self) -> bool {
        matches!(self.value, RootValue::Infinity)
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match &self.value {
            RootValue::Exact(q) => Some(q),
            _ => None,
        }
    }

    /// Decimal value; `+∞` for the infinite root.
    pub fn to_f64(&self) -> f64 {
        match &self.value {
            RootValue::Infinity => f64::INFINITY,
            RootValue::Exact(q) => rational_to_f64(q),
            RootValue::Bracket { lo, hi } => {
                let mid = (lo + hi) / BigRational::from_integer(2.into());
                match &self.surd {
                    Some(s) => s.to_f64(),
                    None => rational_to_f64(&mid),
                }
            }
        }
    }

    /// Isolating bracket in floating point, when the root is not exact.
    pub fn bracket_f64(&self) -> Option<(f64, f64)> {
        match &self.value {
            RootValue::Bracket { lo, hi } => Some((rational_to_f64(lo), rational_to_f64(hi))),
            _ => None,
        }
    }

    /// Exact rendering when one is known: `p/q` or a quadratic surd.
    pub fn exact_form(&self) -> Option<String> {
        match (&self.value, &self.surd) {
            (RootValue::Infinity, _) => Some("inf".into()),
            (RootValue::Exact(q), _) => Some(format_rational(q)),
            (_, Some(s)) => Some(s.to_string()),
            _ => None,
        }
    }

    /// 17 significant digits.
    pub fn decimal(&self) -> String {
        format_f64(self.to_f64())
    }
}

fn sturm_chain(p: &Polynomial) -> Vec<Polynomial> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let (_, r) = chain[n - 2]
            .div_rem(&chain[n - 1])
            .expect("nonzero divisor");
        chain.push(-r);
    }
    chain.pop();
    chain
}

fn sign_changes(chain: &[Polynomial], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

/// Number of distinct roots in `(a, b]` of a square-free polynomial.
fn count_roots(chain: &[Polynomial], a: &BigRational, b: &BigRational) -> usize {
    sign_changes(chain, a).saturating_sub(sign_changes(chain, b))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    // Only small leading coefficients are worth the trial division.
    if n.bits() > 48 {
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            out.push(i.clone());
            let j = &n / &i;
            if j != i {
                out.push(j);
            }
        }
        i += 1;
    }
    out.sort();
    out
}

fn square_free_split(d: &BigInt) -> (BigInt, BigInt) {
    // d = s² · t with t square-free; small trial division is enough here.
    let mut s = BigInt::one();
    let mut t = d.clone();
    let mut k = BigInt::from(2);
    while &k * &k <= t {
        let kk = &k * &k;
        while (&t % &kk).is_zero() {
            t /= &kk;
            s *= &k;
        }
        k += 1;
    }
    (s, t)
}

/// Root `x` of the square-free quadratic `c0 + c1 z + c2 z²` as `a + b√d`.
fn quadratic_surd(q: &Polynomial, approx: f64) -> Option<QuadraticSurd> {
    let c = q.primitive();
    if c.len() != 3 {
        return None;
    }
    let (c0, c1, c2) = (&c[0], &c[1], &c[2]);
    let disc = c1 * c1 - BigInt::from(4) * c2 * c0;
    if !disc.is_positive() {
        return None;
    }
    if disc.bits() > 96 {
        return None;
    }
    let (s, t) = square_free_split(&disc);
    if t.is_one() {
        return None;
    }
    let two_a = BigRational::from_integer(BigInt::from(2) * c2);
    let a = BigRational::from_integer(-c1) / &two_a;
    let b = BigRational::from_integer(s) / &two_a;
    [b.clone(), -b]
        .into_iter()
        .map(|b| QuadraticSurd {
            a: a.clone(),
            b,
            d: t.clone(),
        })
        .min_by(|x, y| {
            let dx = (x.to_f64() - approx).abs();
            let dy = (y.to_f64() - approx).abs();
            dx.total_cmp(&dy)
        })
}

/// Smallest modulus among the complex roots, via companion-matrix
/// eigenvalues.
pub fn min_root_modulus(p: &Polynomial) -> Option<f64> {
    let d = p.degree()?;
    if d == 0 {
        return None;
    }
    let lead = rational_to_f64(&p.leading());
    let mut m = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        m[(i, d - 1)] = -rational_to_f64(&p.coeff(i)) / lead;
    }
    // Companion matrices of polynomials like 1 - z^6 are orthogonal and stall
    // unshifted QR, so a shifted copy is tried next.
    for shift in [0.0, 0.37, -0.61] {
        let shifted = &m + DMatrix::<f64>::identity(d, d) * shift;
        if let Some(schur) = shifted.try_schur(1e-14, 10_000) {
            return schur
                .complex_eigenvalues()
                .iter()
                .map(|z| (z - shift).norm())
                .min_by(f64::total_cmp);
        }
    }
    None
}

/// Least root of `p` in `(0, 1]`, or infinity for a nonzero constant.
///
/// Roots are isolated exactly with a Sturm chain on the square-free part and
/// refined by bisection on dyadic rationals. A rational root is returned
/// exactly when one lies in the final bracket.
pub fn smallest_positive_root(
    p: &Polynomial,
    policy: &NumericPolicy,
) -> Result<RootResult, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(RootResult {
            value: RootValue::Infinity,
            residual_bound: 0.0,
            surd: None,
            modulus_check: None,
        });
    }
    let q = p.square_free();
    let chain = sturm_chain(&q);
    let zero = BigRational::zero();
    let one = BigRational::one();
    if count_roots(&chain, &zero, &one) == 0 {
        return Err(AlgebraError::NoRootInUnitInterval(p.to_string()));
    }
    let two = BigRational::from_integer(2.into());
    let (mut lo, mut hi) = (zero, one);
    let width = BigRational::from_float(policy.root_width).expect("finite width");
    while &hi - &lo > width {
        let mid = (&lo + &hi) / &two;
        if count_roots(&chain, &lo, &mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let mut exact = None;
    if q.eval(&hi).is_zero() {
        exact = Some(hi.clone());
    } else {
        let ints = q.primitive();
        for den in divisors(ints.last().expect("nonconstant")) {
            let den_q = BigRational::from_integer(den.clone());
            let num = (&lo * &den_q).ceil();
            let cand = num / den_q;
            if cand > lo && cand <= hi && q.eval(&cand).is_zero() {
                exact = Some(cand);
                break;
            }
        }
    }

    let approx = match &exact {
        Some(x) => rational_to_f64(x),
        None => rational_to_f64(&((&lo + &hi) / &two)),
    };
    let surd = match (&exact, q.degree()) {
        (None, Some(2)) => quadratic_surd(&q, approx),
        _ => None,
    };
    let modulus_check = min_root_modulus(&q).map(|m| ModulusCheck {
        min_modulus: m,
        agrees: m >= approx - policy.modulus_tol,
    });
    let (value, residual_bound) = match exact {
        Some(x) => (RootValue::Exact(x), 0.0),
        None => {
            // |p(x)| ≤ |p(lo)| + |p'|_max · width on a bracket this narrow; the
            // endpoint values bound it well enough in practice.
            let dp = p.derivative();
            let slope = dp
                .eval_f64(rational_to_f64(&lo))
                .abs()
                .max(dp.eval_f64(rational_to_f64(&hi)).abs());
            let bound = p
                .eval_f64(rational_to_f64(&lo))
                .abs()
                .max(p.eval_f64(rational_to_f64(&hi)).abs())
                + slope * policy.root_width;
            (RootValue::Bracket { lo, hi }, bound)
        }
    };
    Ok(RootResult {
        value,
        residual_bound,
        surd,
        modulus_check,
    })
}
