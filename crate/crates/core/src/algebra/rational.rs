use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`; panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders `p/q` in lowest terms, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `[-]int[/posint]`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    if num.is_empty() || !num.trim_start_matches(['-', '+']).chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) if !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()) => d.parse().ok()?,
        Some(_) => return None,
        None => BigInt::from(1),
    };
    if den == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Sum of products kept over a common denominator and reduced once at the end.
#[derive(Debug, Clone)]
pub(crate) struct DotAccumulator {
    num: BigInt,
    den: BigInt,
}

impl DotAccumulator {
    pub(crate) fn new() -> Self {
        Self { num: BigInt::from(0), den: BigInt::from(1) }
    }

    pub(crate) fn add_product(&mut self, a: &Rational, b: &Rational) {
        let n = a.numer() * b.numer();
        let d = a.denom() * b.denom();
        if d == self.den {
            self.num += n;
        } else {
            let g = self.den.gcd(&d);
            let (da, db) = (&self.den / &g, &d / &g);
            self.num = &self.num * &db + n * &da;
            self.den = da * d;
        }
    }

    pub(crate) fn finish(self) -> Rational {
        Rational::new(self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        assert_eq!(format_rational(&rat(4, -6)), "-2/3");
        assert_eq!(format_rational(&rat(6, 3)), "2");
    }

    #[test]
    fn parse() {
        assert_eq!(parse_rational("-1/6"), Some(rat(-1, 6)));
        assert_eq!(parse_rational(" 12 "), Some(int(12)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational(""), None);
    }
}
