//! Exact bivariate polynomial arithmetic over the rationals.
//!
//! Polynomials are sparse term maps `(deg_x, deg_y) -> coefficient` with
//! arbitrary-precision rational coefficients. All operations are exact;
//! no floating point is involved anywhere.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Exact rational number, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `num/den`. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A polynomial in `x` and `y` with rational coefficients.
///
/// Invariant: the term map never stores a zero coefficient, so structural
/// equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::monomial(1, 0, int(1))
    }

    /// The variable `y`.
    pub fn y() -> Self {
        Self::monomial(0, 1, int(1))
    }

    pub fn monomial(dx: u32, dy: u32, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((dx, dy), coeff);
        }
        BivariatePolynomial { terms }
    }

    /// Build a polynomial from `(dx, dy, num, den)` tuples. Test convenience.
    pub fn from_terms(terms: &[(u32, u32, i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(dx, dy, num, den) in terms {
            p.add_term(dx, dy, frac(num, den));
        }
        p
    }

    /// Add `coeff * x^dx * y^dy`, dropping the term if it cancels to zero.
    pub fn add_term(&mut self, dx: u32, dy: u32, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((dx, dy)).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree in `x`; 0 for the zero polynomial.
    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|&(dx, _)| dx).max().unwrap_or(0)
    }

    /// Degree in `y`; 0 for the zero polynomial.
    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|&(_, dy)| dy).max().unwrap_or(0)
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> Rational {
        self.terms
            .get(&(dx, dy))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending `(dx, dy)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(dx, dy), c)| (dx, dy, c))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| (k, c * r))
            .collect();
        BivariatePolynomial { terms }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let max_dx = self.degree_x() as usize;
        let max_dy = self.degree_y() as usize;
        let x_pows = powers(x, max_dx);
        let y_pows = powers(y, max_dy);
        let mut acc = Rational::zero();
        for (&(dx, dy), c) in &self.terms {
            acc += c * &x_pows[dx as usize] * &y_pows[dy as usize];
        }
        acc
    }

    /// Evaluation at an integer point.
    pub fn eval_int(&self, x: i64, y: i64) -> Rational {
        self.eval(&int(x), &int(y))
    }

    /// Substitute `x -> -x`, `y -> -y`: each coefficient picks up
    /// `(-1)^(dx + dy)`.
    pub fn negate_vars(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(dx, dy), c)| {
                let c = if (dx + dy) % 2 == 1 { -c } else { c.clone() };
                ((dx, dy), c)
            })
            .collect();
        BivariatePolynomial { terms }
    }

    /// Substitute `y := x`, returning a polynomial of `y`-degree zero.
    pub fn substitute_y_equals_x(&self) -> Self {
        let mut p = Self::zero();
        for (&(dx, dy), c) in &self.terms {
            p.add_term(dx + dy, 0, c.clone());
        }
        p
    }

    /// Substitute `y := y + delta` by binomial expansion.
    pub fn shift_y(&self, delta: i64) -> Self {
        let d = int(delta);
        let mut p = Self::zero();
        for (&(dx, dy), c) in &self.terms {
            // (y + delta)^dy = sum_k C(dy, k) delta^(dy - k) y^k
            for k in 0..=dy {
                let bin = Rational::from_integer(binomial(dy as u64, k as u64));
                let shift_pow = pow_rational(&d, (dy - k) as usize);
                p.add_term(dx, k, c * bin * shift_pow);
            }
        }
        p
    }

    /// Substitute a constant for `y`, returning a polynomial of `y`-degree
    /// zero.
    pub fn substitute_y_const(&self, value: &Rational) -> Self {
        let mut p = Self::zero();
        for (&(dx, dy), c) in &self.terms {
            p.add_term(dx, 0, c * pow_rational(value, dy as usize));
        }
        p
    }

    /// Render with deterministic term order: `x`-degree descending, then
    /// `y`-degree descending.
    pub fn render_plain(&self) -> String {
        self.render(RenderStyle::Plain)
    }

    pub fn render_latex(&self) -> String {
        self.render(RenderStyle::Latex)
    }

    fn render(&self, style: RenderStyle) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&(dx, dy), c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&render_term(dx, dy, &c.abs(), style));
        }
        out
    }

    /// Serialize to the JSON polynomial schema.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson::from(self)).expect("polynomial serialization")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("polynomial serialization")
    }

    pub fn from_json_str(text: &str) -> Result<Self, Error> {
        let parsed: PolyJson =
            serde_json::from_str(text).map_err(|e| Error::PolyJson(e.to_string()))?;
        Self::try_from(parsed)
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<Self, Error> {
        let parsed: PolyJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::PolyJson(e.to_string()))?;
        Self::try_from(parsed)
    }
}

#[derive(Clone, Copy)]
enum RenderStyle {
    Plain,
    Latex,
}

fn render_term(dx: u32, dy: u32, magnitude: &Rational, style: RenderStyle) -> String {
    let coeff = match style {
        RenderStyle::Plain => {
            if magnitude.denom().is_one() {
                magnitude.numer().to_string()
            } else {
                format!("{}/{}", magnitude.numer(), magnitude.denom())
            }
        }
        RenderStyle::Latex => {
            if magnitude.denom().is_one() {
                magnitude.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", magnitude.numer(), magnitude.denom())
            }
        }
    };
    let mono = match style {
        RenderStyle::Plain => {
            let parts: Vec<String> = [(dx, "x"), (dy, "y")]
                .iter()
                .filter(|(d, _)| *d > 0)
                .map(|&(d, v)| if d == 1 { v.to_string() } else { format!("{v}^{d}") })
                .collect();
            parts.join(" ")
        }
        RenderStyle::Latex => {
            let mut s = String::new();
            for (d, v) in [(dx, "x"), (dy, "y")] {
                if d == 0 {
                    continue;
                }
                s.push_str(v);
                if d > 1 {
                    if d < 10 {
                        s.push_str(&format!("^{d}"));
                    } else {
                        s.push_str(&format!("^{{{d}}}"));
                    }
                }
            }
            s
        }
    };
    if mono.is_empty() {
        coeff
    } else if magnitude.is_one() {
        mono
    } else {
        match style {
            RenderStyle::Plain => format!("{coeff} {mono}"),
            RenderStyle::Latex => format!("{coeff}{mono}"),
        }
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_plain())
    }
}

impl Add for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn add(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(dx, dy), c) in &rhs.terms {
            out.add_term(dx, dy, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn sub(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = self.clone();
        for (&(dx, dy), c) in &rhs.terms {
            out.add_term(dx, dy, -c);
        }
        out
    }
}

impl Mul for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn mul(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
        let mut out = BivariatePolynomial::zero();
        for (&(ax, ay), ac) in &self.terms {
            for (&(bx, by), bc) in &rhs.terms {
                out.add_term(ax + bx, ay + by, ac * bc);
            }
        }
        out
    }
}

impl Neg for &BivariatePolynomial {
    type Output = BivariatePolynomial;
    fn neg(self) -> BivariatePolynomial {
        let terms = self.terms.iter().map(|(&k, c)| (k, -c)).collect();
        BivariatePolynomial { terms }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for BivariatePolynomial {
            type Output = BivariatePolynomial;
            fn $method(self, rhs: BivariatePolynomial) -> BivariatePolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&BivariatePolynomial> for BivariatePolynomial {
            type Output = BivariatePolynomial;
            fn $method(self, rhs: &BivariatePolynomial) -> BivariatePolynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

fn powers(base: &Rational, max: usize) -> Vec<Rational> {
    let mut v = Vec::with_capacity(max + 1);
    v.push(Rational::one());
    for i in 1..=max {
        let next = &v[i - 1] * base;
        v.push(next);
    }
    v
}

fn pow_rational(base: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact univariate Lagrange interpolation through points with distinct
/// abscissas, via Newton's divided differences. Returns coefficients by
/// ascending power; length equals the number of points.
pub fn interpolate_points(points: &[(Rational, Rational)]) -> Vec<Rational> {
    let n = points.len();
    assert!(n > 0, "interpolation needs at least one point");
    let xs: Vec<&Rational> = points.iter().map(|(x, _)| x).collect();
    let mut dd: Vec<Rational> = points.iter().map(|(_, v)| v.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = xs[i] - xs[i - level];
            dd[i] = num / den;
        }
    }
    // Expand sum_k dd[k] * prod_{i<k} (X - x_i).
    let mut coeffs = vec![Rational::zero(); n];
    let mut basis = vec![Rational::one()];
    for (k, c) in dd.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            coeffs[i] += c * b;
        }
        if k + 1 < n {
            // basis *= (X - x_k)
            let xk = xs[k];
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += b;
                next[i] -= b * xk;
            }
            basis = next;
        }
    }
    coeffs
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PolyJson {
    variables: Vec<String>,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TermJson {
    dx: u32,
    dy: u32,
    num: String,
    den: String,
}

impl From<&BivariatePolynomial> for PolyJson {
    fn from(p: &BivariatePolynomial) -> Self {
        // Terms sorted dx descending, then dy descending.
        let terms = p
            .terms
            .iter()
            .rev()
            .map(|(&(dx, dy), c)| TermJson {
                dx,
                dy,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        PolyJson {
            variables: vec!["x".to_string(), "y".to_string()],
            terms,
        }
    }
}

impl TryFrom<PolyJson> for BivariatePolynomial {
    type Error = Error;
    fn try_from(json: PolyJson) -> Result<Self, Error> {
        if json.variables != ["x", "y"] {
            return Err(Error::PolyJson(format!(
                "expected variables [\"x\", \"y\"], got {:?}",
                json.variables
            )));
        }
        let mut p = BivariatePolynomial::zero();
        for t in &json.terms {
            let num: BigInt = t
                .num
                .parse()
                .map_err(|_| Error::PolyJson(format!("bad numerator {:?}", t.num)))?;
            let den: BigInt = t
                .den
                .parse()
                .map_err(|_| Error::PolyJson(format!("bad denominator {:?}", t.den)))?;
            if den.is_zero() {
                return Err(Error::PolyJson("zero denominator".to_string()));
            }
            p.add_term(t.dx, t.dy, Rational::new(num, den));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> BivariatePolynomial {
        BivariatePolynomial::x()
    }

    fn y() -> BivariatePolynomial {
        BivariatePolynomial::y()
    }

    #[test]
    fn add_cancels() {
        let p = &x() + &(-&x());
        assert!(p.is_zero());
        assert_eq!(p.render_plain(), "0");
    }

    #[test]
    fn product_of_conjugates() {
        let p = &(&x() - &y()) * &(&x() + &y());
        let expected = BivariatePolynomial::from_terms(&[(2, 0, 1, 1), (0, 2, -1, 1)]);
        assert_eq!(p, expected);
    }

    #[test]
    fn scale_by_negative_half() {
        let p = x().pow(2).scale(&frac(-1, 2));
        assert_eq!(p, BivariatePolynomial::from_terms(&[(2, 0, -1, 2)]));
    }

    #[test]
    fn eval_single_arc_polynomial() {
        // (2x^2 - y^2 - y) / 2 at (2, 1) is 3.
        let p = BivariatePolynomial::from_terms(&[(2, 0, 1, 1), (0, 2, -1, 2), (0, 1, -1, 2)]);
        assert_eq!(p.eval_int(2, 1), int(3));
    }

    #[test]
    fn eval_mixed_triangle_polynomial() {
        let p = BivariatePolynomial::from_terms(&[
            (3, 0, 1, 1),
            (1, 2, -1, 2),
            (1, 1, -5, 2),
            (0, 2, 1, 1),
            (0, 1, 1, 1),
        ]);
        assert_eq!(p.eval_int(2, 1), int(4));
    }

    #[test]
    fn eval_at_origin_is_constant_term() {
        let p = BivariatePolynomial::from_terms(&[(2, 1, 5, 1), (0, 0, 7, 3)]);
        assert_eq!(p.eval_int(0, 0), frac(7, 3));
    }

    #[test]
    fn negate_vars_examples() {
        assert_eq!(x().negate_vars(), -&x());
        let p = BivariatePolynomial::from_terms(&[(2, 0, 1, 1), (0, 2, -1, 2), (0, 1, -1, 2)]);
        let expected =
            BivariatePolynomial::from_terms(&[(2, 0, 1, 1), (0, 2, -1, 2), (0, 1, 1, 2)]);
        assert_eq!(p.negate_vars(), expected);
        assert_eq!(
            BivariatePolynomial::one().negate_vars(),
            BivariatePolynomial::one()
        );
    }

    #[test]
    fn substitute_y_equals_x_single_arc() {
        // (2x^2 - y^2 - y)/2 becomes (x^2 - x)/2.
        let p = BivariatePolynomial::from_terms(&[(2, 0, 1, 1), (0, 2, -1, 2), (0, 1, -1, 2)]);
        let expected = BivariatePolynomial::from_terms(&[(2, 0, 1, 2), (1, 0, -1, 2)]);
        assert_eq!(p.substitute_y_equals_x(), expected);
    }

    #[test]
    fn substitute_y_equals_x_mixed_triangle() {
        let p = BivariatePolynomial::from_terms(&[
            (3, 0, 1, 1),
            (1, 2, -1, 2),
            (1, 1, -5, 2),
            (0, 2, 1, 1),
            (0, 1, 1, 1),
        ]);
        // x^3 - x^3/2 - 5x^2/2 + x^2 + x = x^3/2 - 3x^2/2 + x = x(x-1)(x-2)/2
        let expected =
            BivariatePolynomial::from_terms(&[(3, 0, 1, 2), (2, 0, -3, 2), (1, 0, 1, 1)]);
        assert_eq!(p.substitute_y_equals_x(), expected);
        assert_eq!(x().substitute_y_equals_x(), x());
    }

    #[test]
    fn shift_y_by_one() {
        // (y)^2 under y := y + 1 is y^2 + 2y + 1.
        let p = y().pow(2).shift_y(1);
        let expected =
            BivariatePolynomial::from_terms(&[(0, 2, 1, 1), (0, 1, 2, 1), (0, 0, 1, 1)]);
        assert_eq!(p, expected);
        assert_eq!(p.shift_y(-1), y().pow(2));
    }

    #[test]
    fn substitute_y_zero_drops_y_terms() {
        let p = BivariatePolynomial::from_terms(&[(2, 0, 1, 1), (1, 1, 4, 1), (0, 3, -2, 1)]);
        assert_eq!(
            p.substitute_y_const(&int(0)),
            BivariatePolynomial::from_terms(&[(2, 0, 1, 1)])
        );
    }

    #[test]
    fn render_plain_examples() {
        let p = BivariatePolynomial::from_terms(&[(2, 0, 1, 1), (0, 2, -1, 2), (0, 1, -1, 2)]);
        assert_eq!(p.render_plain(), "x^2 - 1/2 y^2 - 1/2 y");
        assert_eq!(BivariatePolynomial::zero().render_plain(), "0");
    }

    #[test]
    fn render_latex_mixed_triangle() {
        let p = BivariatePolynomial::from_terms(&[
            (3, 0, 1, 1),
            (1, 2, -1, 2),
            (1, 1, -5, 2),
            (0, 2, 1, 1),
            (0, 1, 1, 1),
        ]);
        assert_eq!(
            p.render_latex(),
            "x^3 - \\frac{1}{2}xy^2 - \\frac{5}{2}xy + y^2 + y"
        );
    }

    #[test]
    fn json_schema_example() {
        assert_eq!(
            x().to_json_string(),
            r#"{"variables":["x","y"],"terms":[{"dx":1,"dy":0,"num":"1","den":"1"}]}"#
        );
        let back = BivariatePolynomial::from_json_str(&x().to_json_string()).unwrap();
        assert_eq!(back, x());
    }

    #[test]
    fn json_rejects_bad_input() {
        assert!(BivariatePolynomial::from_json_str("{}").is_err());
        let wrong_vars = r#"{"variables":["a","b"],"terms":[]}"#;
        assert!(BivariatePolynomial::from_json_str(wrong_vars).is_err());
    }

    #[test]
    fn interpolation_recovers_quadratic() {
        // f(t) = (t^2 - t)/2 through t = 0, 1, 2.
        let pts: Vec<(Rational, Rational)> = (0..3)
            .map(|t| (int(t), frac(t * t - t, 2)))
            .collect();
        let coeffs = interpolate_points(&pts);
        assert_eq!(coeffs, vec![int(0), frac(-1, 2), frac(1, 2)]);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 0), BigInt::from(1));
        assert_eq!(binomial(2, 3), BigInt::from(0));
    }

    fn arb_poly() -> impl Strategy<Value = BivariatePolynomial> {
        proptest::collection::vec(
            ((0u32..4, 0u32..4), -6i64..=6, 1i64..=4),
            0..6,
        )
        .prop_map(|terms| {
            let mut p = BivariatePolynomial::zero();
            for ((dx, dy), num, den) in terms {
                p.add_term(dx, dy, frac(num, den));
            }
            p
        })
    }

    fn arb_point() -> impl Strategy<Value = (Rational, Rational)> {
        ((-9i64..=9, 1i64..=5), (-9i64..=9, 1i64..=5))
            .prop_map(|((xn, xd), (yn, yd))| (frac(xn, xd), frac(yn, yd)))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &(-&a), BivariatePolynomial::zero());
        }

        #[test]
        fn eval_is_ring_homomorphism(a in arb_poly(), b in arb_poly(), pt in arb_point()) {
            let (x0, y0) = pt;
            prop_assert_eq!(
                (&a * &b).eval(&x0, &y0),
                a.eval(&x0, &y0) * b.eval(&x0, &y0)
            );
            prop_assert_eq!(
                (&a + &b).eval(&x0, &y0),
                a.eval(&x0, &y0) + b.eval(&x0, &y0)
            );
        }

        #[test]
        fn negate_vars_is_involution(a in arb_poly()) {
            prop_assert_eq!(a.negate_vars().negate_vars(), a);
        }

        #[test]
        fn json_round_trip(a in arb_poly()) {
            let back = BivariatePolynomial::from_json_str(&a.to_json_string()).unwrap();
            prop_assert_eq!(back, a);
        }

        #[test]
        fn shift_y_inverts(a in arb_poly()) {
            prop_assert_eq!(a.shift_y(1).shift_y(-1), a);
        }
    }
}
