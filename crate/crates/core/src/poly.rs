//! Univariate polynomials with exact rational coefficients, exact
//! characteristic polynomials, and Sturm root counting.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients in ascending degree; never carries trailing zeros, so the
/// zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact rational value of a finite float.
pub fn rat_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// From integer coefficients in ascending degree.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigRational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some(lead) => self.scale(&lead.recip()),
            None => self.clone(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let factor = rem.last().expect("nonempty") / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &factor * c;
            }
            quot[shift] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Standard Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Polynomial> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().expect("nonempty").is_zero() {
            let k = seq.len();
            let r = seq[k - 2].div_rem(&seq[k - 1]).1;
            seq.push(Polynomial::zero().sub(&r));
        }
        seq.pop();
        seq
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn squarefree_part(&self) -> Polynomial {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&self.gcd(&self.derivative())).0
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    /// Pass `None` for `hi` to count up to `+∞`.
    pub fn count_roots(&self, lo: &BigRational, hi: Option<&BigRational>) -> usize {
        if self.is_zero() {
            return 0;
        }
        let seq = self.squarefree_part().sturm_sequence();
        let at = |x: &BigRational| sign_changes(seq.iter().map(|p| p.eval(x)));
        let at_inf = sign_changes(seq.iter().filter_map(|p| p.leading().cloned()));
        let upper = hi.map_or(at_inf, at);
        at(lo).saturating_sub(upper)
    }
}

fn sign_changes<I: Iterator<Item = BigRational>>(values: I) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for v in values {
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders like `x^3 - x^2 - 9x + 3`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let mag_str = if mag.is_integer() {
                mag.to_integer().to_string()
            } else {
                format!("({mag})")
            };
            match i {
                0 => write!(f, "{mag_str}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag_str}")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(xI − M)` of a square rational matrix given
/// row-major, by the Faddeev–LeVerrier recurrence
/// `M_k = A·M_{k−1} + c_{n−k+1}·I`, `c_{n−k} = −tr(A·M_k)/k`.
pub fn faddeev_leverrier(dim: usize, entries: &[BigRational]) -> Polynomial {
    assert_eq!(entries.len(), dim * dim, "square matrix expected");
    let mut coeffs = vec![BigRational::zero(); dim + 1];
    coeffs[dim] = BigRational::one();
    let mut m = vec![BigRational::zero(); dim * dim];
    for k in 1..=dim {
        // m <- A*m + c_{n-k+1} I
        let mut next = vec![BigRational::zero(); dim * dim];
        for i in 0..dim {
            for l in 0..dim {
                let a = &entries[i * dim + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..dim {
                    if !m[l * dim + j].is_zero() {
                        next[i * dim + j] += a * &m[l * dim + j];
                    }
                }
            }
            next[i * dim + i] += &coeffs[dim - k + 1];
        }
        m = next;
        let mut trace = BigRational::zero();
        for i in 0..dim {
            for l in 0..dim {
                trace += &entries[i * dim + l] * &m[l * dim + i];
            }
        }
        coeffs[dim - k] = -trace / rat(k as i64);
    }
    Polynomial::new(coeffs)
}

/// Characteristic polynomial of an integer matrix.
pub fn char_poly_integer(dim: usize, entries: &[i64]) -> Polynomial {
    let entries: Vec<BigRational> = entries.iter().map(|&x| rat(x)).collect();
    faddeev_leverrier(dim, &entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(Polynomial::from_ints(&[3, -9, -1, 1]).to_string(), "x^3 - x^2 - 9x + 3");
        assert_eq!(Polynomial::from_ints(&[]).to_string(), "0");
        assert_eq!(Polynomial::from_ints(&[-1]).to_string(), "-1");
        let p = Polynomial::new(vec![ratio(1, 2), rat(0), rat(-2)]);
        assert_eq!(p.to_string(), "-2x^2 + (1/2)");
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(char_poly_integer(2, &[1, 0, 0, 1]), Polynomial::from_ints(&[1, -2, 1]));
        // h_n(6) quotient
        let p = char_poly_integer(3, &[1, 0, 3, 0, 0, 3, 2, 1, 0]);
        assert_eq!(p, Polynomial::from_ints(&[3, -9, -1, 1]));
        // K_3 adjacency: (x-2)(x+1)^2 = x^3 - 3x - 2
        let p = char_poly_integer(3, &[0, 1, 1, 1, 0, 1, 1, 1, 0]);
        assert_eq!(p, Polynomial::from_ints(&[-2, -3, 0, 1]));
        assert!(p.is_monic());
    }

    #[test]
    fn faddeev_leverrier_matches_cofactor_expansion() {
        // det(xI - M) by expansion for a fixed 3x3 rational matrix
        let m = [ratio(1, 2), rat(2), rat(-1), rat(0), rat(3), ratio(2, 3), rat(1), rat(1), rat(1)];
        let p = faddeev_leverrier(3, &m);
        let det3 = |a: &[BigRational]| {
            &a[0] * (&a[4] * &a[8] - &a[5] * &a[7]) - &a[1] * (&a[3] * &a[8] - &a[5] * &a[6])
                + &a[2] * (&a[3] * &a[7] - &a[4] * &a[6])
        };
        for x in [-3, -1, 0, 2, 5] {
            let xr = rat(x);
            let shifted: Vec<BigRational> = (0..9)
                .map(|k| if k % 4 == 0 { &xr - &m[k] } else { -m[k].clone() })
                .collect();
            assert_eq!(p.eval(&xr), det3(&shifted));
        }
    }

    #[test]
    fn division_and_gcd() {
        let a = Polynomial::from_ints(&[-1, 0, 1]); // (x-1)(x+1)
        let b = Polynomial::from_ints(&[-2, 1]).mul(&Polynomial::from_ints(&[-1, 1])); // (x-2)(x-1)
        assert_eq!(a.gcd(&b), Polynomial::from_ints(&[-1, 1]));
        let (q, r) = b.div_rem(&Polynomial::from_ints(&[-1, 1]));
        assert_eq!(q, Polynomial::from_ints(&[-2, 1]));
        assert!(r.is_zero());
        let (q, r) = Polynomial::from_ints(&[1, 0, 1]).div_rem(&Polynomial::from_ints(&[0, 2]));
        assert_eq!(q, Polynomial::new(vec![rat(0), ratio(1, 2)]));
        assert_eq!(r, Polynomial::from_ints(&[1]));
    }

    #[test]
    fn sturm_counts() {
        // (x-1)^2 (x-3)(x+2)
        let p = Polynomial::from_ints(&[-1, 1])
            .mul(&Polynomial::from_ints(&[-1, 1]))
            .mul(&Polynomial::from_ints(&[-3, 1]))
            .mul(&Polynomial::from_ints(&[2, 1]));
        assert_eq!(p.count_roots(&rat(-10), None), 3);
        assert_eq!(p.count_roots(&rat(0), None), 2);
        assert_eq!(p.count_roots(&rat(0), Some(&rat(2))), 1);
        assert_eq!(p.count_roots(&rat(1), None), 1);
        assert_eq!(p.count_roots(&rat(3), None), 0);
        assert_eq!(p.count_roots(&ratio(5, 2), Some(&rat(3))), 1);
    }
}
