//! Integer Laurent polynomials and Alexander-polynomial formulas.
//!
//! Polynomials are stored sparsely as exponent → coefficient maps with no
//! zero coefficients. All arithmetic is exact; coefficients use `i64` with
//! checked operations since desk-scale degrees stay below 200.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::CfkError;

/// An integer-coefficient Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant 1.
    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    /// `c * t^e`.
    pub fn monomial(exponent: i64, c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(exponent, c);
        }
        LaurentPoly { coeffs }
    }

    /// Builds from (exponent, coefficient) pairs, summing duplicates.
    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut coeffs: BTreeMap<i64, i64> = BTreeMap::new();
        for &(e, c) in terms {
            let v = coeffs.entry(e).or_insert(0);
            *v = v.checked_add(c).expect("coefficient overflow");
            if *v == 0 {
                coeffs.remove(&e);
            }
        }
        LaurentPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^e`.
    pub fn coeff(&self, e: i64) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    /// Non-zero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (&e, &c) in &other.coeffs {
            let v = coeffs.entry(e).or_insert(0);
            *v = v.checked_add(c).expect("coefficient overflow");
            if *v == 0 {
                coeffs.remove(&e);
            }
        }
        LaurentPoly { coeffs }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> LaurentPoly {
        if k == 0 {
            return LaurentPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&e, &c)| (e, c.checked_mul(k).expect("coefficient overflow")))
            .collect();
        LaurentPoly { coeffs }
    }

    /// Multiplies by `t^s`.
    pub fn shift(&self, s: i64) -> LaurentPoly {
        let coeffs = self.coeffs.iter().map(|(&e, &c)| (e + s, c)).collect();
        LaurentPoly { coeffs }
    }

    /// Convolution product, exact integer arithmetic.
    pub fn multiply(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut coeffs: BTreeMap<i64, i64> = BTreeMap::new();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &other.coeffs {
                let e = e1 + e2;
                let c = c1.checked_mul(c2).expect("coefficient overflow");
                let v = coeffs.entry(e).or_insert(0);
                *v = v.checked_add(c).expect("coefficient overflow");
                if *v == 0 {
                    coeffs.remove(&e);
                }
            }
        }
        LaurentPoly { coeffs }
    }

    /// Substitutes `t -> t^p`.
    pub fn substitute_power(&self, p: i64) -> LaurentPoly {
        let coeffs = self.coeffs.iter().map(|(&e, &c)| (e * p, c)).collect();
        LaurentPoly { coeffs }
    }

    /// Evaluates at t = 1 (the coefficient sum).
    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Shifts so the minimum exponent is 0. Zero stays zero.
    pub fn normalized(&self) -> LaurentPoly {
        match self.min_exponent() {
            Some(m) => self.shift(-m),
            None => LaurentPoly::zero(),
        }
    }

    /// Exact division, or None when the remainder is nonzero.
    ///
    /// Both operands are treated as ordinary polynomials after shifting the
    /// minimum exponents to zero; the quotient keeps the exponent offset.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let offset = self.min_exponent().unwrap() - divisor.min_exponent().unwrap();
        let mut rem = self.normalized();
        let div = divisor.normalized();
        let dlead = div.max_exponent().unwrap();
        let dcoef = div.coeff(dlead);
        let mut quot = LaurentPoly::zero();
        while !rem.is_zero() {
            let rlead = rem.max_exponent().unwrap();
            if rlead < dlead {
                return None;
            }
            let rcoef = rem.coeff(rlead);
            if rcoef % dcoef != 0 {
                return None;
            }
            let q = LaurentPoly::monomial(rlead - dlead, rcoef / dcoef);
            rem = rem.sub(&q.multiply(&div));
            quot = quot.add(&q);
        }
        Some(quot.shift(offset))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in self.coeffs.iter().rev() {
            let mag = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "t")?,
                (1, m) => write!(f, "{m}*t")?,
                (e, 1) => write!(f, "t^{e}")?,
                (e, m) => write!(f, "{m}*t^{e}")?,
            }
        }
        Ok(())
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Alexander polynomial of the (p, q) torus knot, normalized so the minimum
/// exponent is 0.
///
/// Computed by exact division of `(t^{pq} - 1)(t - 1)` by
/// `(t^p - 1)(t^q - 1)`.
pub fn torus_alexander(p: i64, q: i64) -> Result<LaurentPoly, CfkError> {
    if p < 2 || q < 2 {
        return Err(CfkError::BadArgument(format!(
            "torus parameters must be >= 2, got ({p}, {q})"
        )));
    }
    if gcd(p, q) != 1 {
        return Err(CfkError::NonCoprime { p, q });
    }
    let tm1 = |k: i64| LaurentPoly::monomial(k, 1).sub(&LaurentPoly::one());
    let num = tm1(p * q).multiply(&tm1(1));
    let den = tm1(p).multiply(&tm1(q));
    let quot = num.div_exact(&den).expect("torus-knot division is exact");
    Ok(quot.normalized())
}

/// Alexander polynomial of the (p, q) cable with the given companion:
/// substitute `t -> t^p` in the companion and multiply by the torus
/// polynomial. Result normalized with minimum exponent 0.
pub fn cable_alexander(companion: &LaurentPoly, p: i64, q: i64) -> Result<LaurentPoly, CfkError> {
    let e = companion.eval_one();
    if e != 1 && e != -1 {
        return Err(CfkError::NotAlexander(companion.to_string()));
    }
    let torus = torus_alexander(p, q)?;
    Ok(companion.substitute_power(p).multiply(&torus).normalized())
}

/// Reads off the exponent list of a polynomial whose coefficients, from
/// highest to lowest exponent, are exactly +1, -1, +1, ..., +1.
///
/// Returns the exponents in decreasing order; rejects any other sign
/// pattern.
pub fn alternating_exponents(delta: &LaurentPoly) -> Result<Vec<i64>, CfkError> {
    let terms: Vec<(i64, i64)> = delta.terms().collect();
    if terms.is_empty() || terms.len().is_multiple_of(2) {
        return Err(CfkError::NotLSpaceShape(delta.to_string()));
    }
    let mut exps = Vec::with_capacity(terms.len());
    for (k, &(e, c)) in terms.iter().rev().enumerate() {
        let want = if k % 2 == 0 { 1 } else { -1 };
        if c != want {
            return Err(CfkError::NotLSpaceShape(delta.to_string()));
        }
        exps.push(e);
    }
    Ok(exps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms)
    }

    /// t^2 - t + 1
    fn trefoil() -> LaurentPoly {
        poly(&[(2, 1), (1, -1), (0, 1)])
    }

    #[test]
    fn multiply_identity() {
        assert_eq!(trefoil().multiply(&LaurentPoly::one()), trefoil());
    }

    #[test]
    fn multiply_t34_display() {
        // (t^4 - t^2 + 1)(t^2 - t + 1) = t^6 - t^5 + t^3 - t + 1
        let a = poly(&[(4, 1), (2, -1), (0, 1)]);
        let want = poly(&[(6, 1), (5, -1), (3, 1), (1, -1), (0, 1)]);
        assert_eq!(a.multiply(&trefoil()), want);
    }

    #[test]
    fn multiply_cable3_oracle() {
        // Hand convolution: (t^6 - t^3 + 1)(t^6 - t^5 + t^3 - t + 1).
        let a = poly(&[(6, 1), (3, -1), (0, 1)]);
        let b = poly(&[(6, 1), (5, -1), (3, 1), (1, -1), (0, 1)]);
        let want = poly(&[
            (12, 1),
            (11, -1),
            (8, 1),
            (7, -1),
            (6, 1),
            (5, -1),
            (4, 1),
            (1, -1),
            (0, 1),
        ]);
        assert_eq!(a.multiply(&b), want);
    }

    #[test]
    fn multiply_commutative_associative_small() {
        // Exhaustive over degree <= 2 with coefficients in {-1, 0, 1},
        // plus a deterministic sample of larger degree-<=4 pairs.
        let mut small = Vec::new();
        for c0 in -1..=1i64 {
            for c1 in -1..=1i64 {
                for c2 in -1..=1i64 {
                    small.push(poly(&[(0, c0), (1, c1), (2, c2)]));
                }
            }
        }
        for a in &small {
            for b in &small {
                assert_eq!(a.multiply(b), b.multiply(a));
            }
        }
        // xorshift-style deterministic sample for associativity.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut sample: Vec<LaurentPoly> = Vec::new();
        for _ in 0..24 {
            let mut terms = Vec::new();
            for e in 0..=4i64 {
                let c = (rnd() % 5) as i64 - 2;
                terms.push((e, c));
            }
            sample.push(poly(&terms));
        }
        for a in &sample {
            for b in &sample {
                assert_eq!(a.multiply(b), b.multiply(a));
            }
        }
        for chunk in sample.chunks(3) {
            if let [a, b, c] = chunk {
                assert_eq!(a.multiply(b).multiply(c), a.multiply(&b.multiply(c)));
            }
        }
    }

    /// The summation form: sum_{i=0}^{n-1} t^{ni} - t * sum_{i=0}^{n-2} t^{(n+1)i}.
    fn torus_summation(n: i64) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for i in 0..n {
            acc = acc.add(&LaurentPoly::monomial(n * i, 1));
        }
        for i in 0..n - 1 {
            acc = acc.sub(&LaurentPoly::monomial((n + 1) * i + 1, 1));
        }
        acc
    }

    #[test]
    fn torus_23() {
        assert_eq!(torus_alexander(2, 3).unwrap(), trefoil());
    }

    #[test]
    fn torus_34_matches_summation() {
        let want = poly(&[(6, 1), (5, -1), (3, 1), (1, -1), (0, 1)]);
        assert_eq!(torus_alexander(3, 4).unwrap(), want);
        assert_eq!(torus_summation(3), want);
    }

    #[test]
    fn torus_45_hand_evaluated() {
        // 1 + t^4 + t^8 + t^12 - (t + t^6 + t^11)
        let want = poly(&[(12, 1), (11, -1), (8, 1), (6, -1), (4, 1), (1, -1), (0, 1)]);
        assert_eq!(torus_alexander(4, 5).unwrap(), want);
    }

    #[test]
    fn torus_summation_agrees_2_to_8() {
        for n in 2..=8 {
            assert_eq!(
                torus_alexander(n, n + 1).unwrap(),
                torus_summation(n),
                "n = {n}"
            );
        }
    }

    #[test]
    fn torus_rejects_non_coprime() {
        assert!(matches!(
            torus_alexander(4, 6),
            Err(CfkError::NonCoprime { .. })
        ));
    }

    #[test]
    fn cable_23_of_trefoil() {
        let want = poly(&[(6, 1), (5, -1), (3, 1), (1, -1), (0, 1)]);
        assert_eq!(cable_alexander(&trefoil(), 2, 3).unwrap(), want);
    }

    #[test]
    fn cable_unknot_companion_is_torus() {
        let want = torus_alexander(3, 4).unwrap();
        assert_eq!(cable_alexander(&LaurentPoly::one(), 3, 4).unwrap(), want);
    }

    #[test]
    fn cable_34_of_trefoil() {
        let a = poly(&[(6, 1), (3, -1), (0, 1)]);
        let b = poly(&[(6, 1), (5, -1), (3, 1), (1, -1), (0, 1)]);
        assert_eq!(cable_alexander(&trefoil(), 3, 4).unwrap(), a.multiply(&b));
    }

    #[test]
    fn cable_rejects_bad_companion() {
        let bad = poly(&[(1, 1), (0, 1)]); // Δ(1) = 2
        assert!(matches!(
            cable_alexander(&bad, 2, 3),
            Err(CfkError::NotAlexander(_))
        ));
    }

    #[test]
    fn cable_eval_one_is_unit() {
        for (p, q) in [(2, 3), (3, 4), (4, 5), (5, 6)] {
            let d = cable_alexander(&trefoil(), p, q).unwrap();
            assert_eq!(d.eval_one().abs(), 1);
        }
    }

    #[test]
    fn exponents_t34() {
        let d = poly(&[(6, 1), (5, -1), (3, 1), (1, -1), (0, 1)]);
        assert_eq!(alternating_exponents(&d).unwrap(), vec![6, 5, 3, 1, 0]);
    }

    #[test]
    fn exponents_unknot() {
        assert_eq!(alternating_exponents(&LaurentPoly::one()).unwrap(), vec![0]);
    }

    #[test]
    fn exponents_t45() {
        let d = torus_alexander(4, 5).unwrap();
        assert_eq!(
            alternating_exponents(&d).unwrap(),
            vec![12, 11, 8, 6, 4, 1, 0]
        );
    }

    #[test]
    fn exponents_reject_wrong_shape() {
        assert!(alternating_exponents(&poly(&[(2, 1), (0, 1)])).is_err());
        assert!(alternating_exponents(&poly(&[(2, 1), (1, 1), (0, 1)])).is_err());
        assert!(alternating_exponents(&LaurentPoly::zero()).is_err());
    }

    #[test]
    fn accepted_polys_have_unit_sum_and_odd_length() {
        for (p, q) in [(2, 3), (3, 4), (4, 5), (5, 6), (2, 5), (3, 5)] {
            let d = torus_alexander(p, q).unwrap();
            let e = alternating_exponents(&d).unwrap();
            assert_eq!(d.eval_one(), 1);
            assert_eq!(e.len() % 2, 1);
        }
    }
}
