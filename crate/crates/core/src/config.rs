//! Run configuration: a line-based `key = value` format.
//!
//! ```text
//! # two-block instance
//! s = 2
//! f1 = u^3
//! f2 = -1/6*u^4 + 2*u
//! seed = 7
//! point.1 = u:1,2 t:3,4 v:0,0
//! ```
//!
//! Keys: `s`, `f1`..`fs`, `seed`, `samples`, `bound`, `kmax`, `point.N`, and
//! `fault` (adds one to a closed-form entry, for fault-injection fixtures:
//! `fault = curvature 0,1,1,0`). Polynomials follow
//! `poly := term (('+'|'-') term)*`, `term := [coeff] ['*'] ['u' ['^' uint]]`,
//! `coeff := int ['/' posint]`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{parse_rational, Polynomial, Rational};
use crate::family::{FamilySpec, PointCoords};

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_BOUND: u32 = 10;
pub const DEFAULT_KMAX: usize = 2;
/// Random points drawn when the config lists none.
pub const DEFAULT_POINTS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ConfigError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self { line, column, message: message.into() }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ConfigError {}

/// Which closed-form object a fault perturbs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaultTarget {
    Christoffel,
    Curvature,
    Nabla,
}

impl FaultTarget {
    pub fn as_str(&self) -> &'static str {
        match self {
            FaultTarget::Christoffel => "christoffel",
            FaultTarget::Curvature => "curvature",
            FaultTarget::Nabla => "nabla",
        }
    }

    pub fn valence(&self) -> usize {
        match self {
            FaultTarget::Christoffel => 3,
            FaultTarget::Curvature => 4,
            FaultTarget::Nabla => 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fault {
    pub target: FaultTarget,
    pub index: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub s: usize,
    /// `f_1..f_s`, univariate; missing entries default to `u^3`.
    pub f: Vec<Polynomial>,
    pub seed: u64,
    /// Samples for vector scans; plane scans use half.
    pub samples: usize,
    pub bound: u32,
    pub kmax: usize,
    /// Explicit points; when empty, suites draw [`DEFAULT_POINTS`] seeded points.
    pub points: Vec<PointCoords>,
    pub faults: Vec<Fault>,
}

impl RunConfig {
    /// Defaults with `f_i = u^3`.
    pub fn new(s: usize) -> Self {
        Self {
            s,
            f: vec![Polynomial::monomial(1, 0, 3, Rational::one()); s],
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            bound: DEFAULT_BOUND,
            kmax: DEFAULT_KMAX,
            points: Vec::new(),
            faults: Vec::new(),
        }
    }

    pub fn spec(&self) -> crate::Result<FamilySpec> {
        FamilySpec::new(self.s, self.f.clone())
    }

    pub fn plane_samples(&self) -> usize {
        (self.samples / 2).max(2)
    }

    /// Renders the config so that [`parse_config`] returns an equal value.
    pub fn emit(&self) -> String {
        let u = ["u".to_string()];
        let mut out = format!("s = {}\n", self.s);
        for (i, f) in self.f.iter().enumerate() {
            out += &format!("f{} = {}\n", i + 1, f.display_with(&u));
        }
        out += &format!("seed = {}\nsamples = {}\nbound = {}\nkmax = {}\n", self.seed, self.samples, self.bound, self.kmax);
        let list = |xs: &[Rational]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        for (n, p) in self.points.iter().enumerate() {
            out += &format!("point.{} = u:{} t:{} v:{}\n", n + 1, list(&p.u), list(&p.t), list(&p.v));
        }
        for fault in &self.faults {
            let idx = fault.index.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
            out += &format!("fault = {} {}\n", fault.target.as_str(), idx);
        }
        out
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut s: Option<usize> = None;
    let mut f: BTreeMap<usize, (usize, Polynomial)> = BTreeMap::new();
    let mut points: BTreeMap<usize, (usize, usize, String)> = BTreeMap::new();
    let mut faults: Vec<(usize, usize, String)> = Vec::new();
    let mut cfg = RunConfig::new(2);

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            return Err(ConfigError::new(line_no, first_non_space(content) + 1, "expected `key = value`"));
        };
        let key = content[..eq].trim();
        let key_col = first_non_space(content) + 1;
        let value_raw = &content[eq + 1..];
        let value_col = eq + 2 + first_non_space(value_raw);
        let value = value_raw.trim();
        let int_value = |what: &str| -> Result<u64, ConfigError> {
            value.parse::<u64>().map_err(|_| ConfigError::new(line_no, value_col, format!("{what} must be a non-negative integer")))
        };
        match key {
            "s" => {
                let v = int_value("s")? as usize;
                if v < 2 {
                    return Err(ConfigError::new(line_no, value_col, format!("s must be ≥ 2 (got {v})")));
                }
                s = Some(v);
            }
            "seed" => cfg.seed = int_value("seed")?,
            "samples" => {
                let v = int_value("samples")? as usize;
                if v < 2 {
                    return Err(ConfigError::new(line_no, value_col, "samples must be at least 2"));
                }
                cfg.samples = v;
            }
            "bound" => {
                let v = int_value("bound")?;
                if v == 0 || v > u32::MAX as u64 {
                    return Err(ConfigError::new(line_no, value_col, "bound must be a positive 32-bit integer"));
                }
                cfg.bound = v as u32;
            }
            "kmax" => {
                let v = int_value("kmax")? as usize;
                if v == 0 || v > 3 {
                    return Err(ConfigError::new(line_no, value_col, "kmax must be 1, 2 or 3"));
                }
                cfg.kmax = v;
            }
            "fault" => faults.push((line_no, value_col, value.to_string())),
            _ if key.starts_with('f') && key[1..].parse::<usize>().is_ok() => {
                let n: usize = key[1..].parse().unwrap();
                if n == 0 {
                    return Err(ConfigError::new(line_no, key_col, "profile polynomials are numbered from f1"));
                }
                let poly = parse_polynomial(value).map_err(|(col, msg)| ConfigError::new(line_no, value_col + col, msg))?;
                f.insert(n, (line_no, poly));
            }
            _ if key.starts_with("point.") => {
                let n = key["point.".len()..]
                    .parse::<usize>()
                    .map_err(|_| ConfigError::new(line_no, key_col + 6, "point index must be a positive integer"))?;
                if n == 0 || points.contains_key(&n) {
                    return Err(ConfigError::new(line_no, key_col + 6, format!("invalid or duplicate point index {n}")));
                }
                points.insert(n, (line_no, value_col, value.to_string()));
            }
            _ => return Err(ConfigError::new(line_no, key_col, format!("unknown key `{key}`"))),
        }
    }

    let s = s.ok_or_else(|| ConfigError::new(1, 1, "missing required key `s`"))?;
    let mut profiles = vec![Polynomial::monomial(1, 0, 3, Rational::one()); s];
    for (n, (line_no, poly)) in f {
        if n > s {
            return Err(ConfigError::new(line_no, 1, format!("f{n} given but s = {s}")));
        }
        profiles[n - 1] = poly;
    }
    cfg.s = s;
    cfg.f = profiles;
    for (_, (line_no, col, text)) in points {
        cfg.points.push(parse_point(&text, s).map_err(|(c, msg)| ConfigError::new(line_no, col + c, msg))?);
    }
    for (line_no, col, text) in faults {
        cfg.faults.push(parse_fault(&text, 3 * s).map_err(|(c, msg)| ConfigError::new(line_no, col + c, msg))?);
    }
    Ok(cfg)
}

fn first_non_space(text: &str) -> usize {
    text.len() - text.trim_start().len()
}

type Located<T> = Result<T, (usize, String)>;

/// Parses a univariate polynomial in `u`; errors carry a 0-based column.
pub fn parse_polynomial(text: &str) -> Located<Polynomial> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let digits = |pos: &mut usize| -> Option<String> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (*pos > start).then(|| text[start..*pos].to_string())
    };
    let mut poly = Polynomial::zero(1);
    let mut first = true;
    skip(&mut pos);
    if pos == bytes.len() {
        return Err((pos, "empty polynomial".into()));
    }
    while pos < bytes.len() {
        let term_start = pos;
        let mut sign = Rational::one();
        if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
            if bytes[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
            skip(&mut pos);
        } else if !first {
            return Err((pos, "expected `+` or `-`".into()));
        }
        first = false;
        let mut coeff: Option<Rational> = None;
        if let Some(num) = digits(&mut pos) {
            let mut lit = num;
            if pos < bytes.len() && bytes[pos] == b'/' {
                pos += 1;
                let den = digits(&mut pos).ok_or((pos, "expected a positive denominator".to_string()))?;
                lit = format!("{lit}/{den}");
            }
            coeff = Some(parse_rational(&lit).ok_or((term_start, format!("malformed rational `{lit}`")))?);
            skip(&mut pos);
        }
        let mut star = false;
        if pos < bytes.len() && bytes[pos] == b'*' {
            if coeff.is_none() {
                return Err((pos, "`*` without a coefficient".into()));
            }
            star = true;
            pos += 1;
            skip(&mut pos);
        }
        let mut power = 0u32;
        if pos < bytes.len() && bytes[pos] == b'u' {
            pos += 1;
            power = 1;
            skip(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                skip(&mut pos);
                let e = digits(&mut pos).ok_or((pos, "expected an exponent".to_string()))?;
                power = e.parse().map_err(|_| (pos, "exponent too large".to_string()))?;
            }
            skip(&mut pos);
        } else if star || coeff.is_none() {
            return Err((pos, "expected `u` or a coefficient".into()));
        }
        let c = sign * coeff.unwrap_or_else(Rational::one);
        if !c.is_zero() {
            poly.add_scaled(&Polynomial::monomial(1, 0, power, Rational::one()), &c);
        }
    }
    Ok(poly)
}

fn parse_list(text: &str, s: usize, offset: usize) -> Located<Vec<Rational>> {
    let mut out = Vec::new();
    let mut col = offset;
    for item in text.split(',') {
        out.push(parse_rational(item).ok_or((col, format!("malformed rational `{}`", item.trim())))?);
        col += item.len() + 1;
    }
    if out.len() != s {
        return Err((offset, format!("expected {s} values, got {}", out.len())));
    }
    Ok(out)
}

fn parse_point(text: &str, s: usize) -> Located<PointCoords> {
    let mut parts: [Option<Vec<Rational>>; 3] = [None, None, None];
    let mut col = 0;
    for word in text.split(' ') {
        if word.is_empty() {
            col += 1;
            continue;
        }
        let (name, list) = word.split_once(':').ok_or((col, format!("expected `u:`, `t:` or `v:` in `{word}`")))?;
        let slot = match name {
            "u" => 0,
            "t" => 1,
            "v" => 2,
            _ => return Err((col, format!("unknown component `{name}`"))),
        };
        if parts[slot].is_some() {
            return Err((col, format!("component `{name}` given twice")));
        }
        parts[slot] = Some(parse_list(list, s, col + name.len() + 1)?);
        col += word.len() + 1;
    }
    let [u, t, v] = parts;
    let missing = |c: &str| (0, format!("point is missing component `{c}`"));
    PointCoords::new(u.ok_or_else(|| missing("u"))?, t.ok_or_else(|| missing("t"))?, v.ok_or_else(|| missing("v"))?)
        .map_err(|e| (0, e.to_string()))
}

fn parse_fault(text: &str, dim: usize) -> Located<Fault> {
    let (name, rest) = text.split_once(' ').ok_or((0, "expected `<object> <index list>`".to_string()))?;
    let target = match name {
        "christoffel" => FaultTarget::Christoffel,
        "curvature" => FaultTarget::Curvature,
        "nabla" => FaultTarget::Nabla,
        _ => return Err((0, format!("unknown fault object `{name}`"))),
    };
    let offset = name.len() + 1;
    let index: Vec<usize> = rest
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| (offset, "malformed index list".to_string()))?;
    if index.len() != target.valence() {
        return Err((offset, format!("{} needs {} indices, got {}", name, target.valence(), index.len())));
    }
    if index.iter().any(|&i| i >= dim) {
        return Err((offset, format!("index out of range for dimension {dim}")));
    }
    Ok(Fault { target, index })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn u_pow(c: Rational, p: u32) -> Polynomial {
        Polynomial::monomial(1, 0, p, c)
    }

    #[test]
    fn polynomial_grammar() {
        assert_eq!(parse_polynomial("u^3").unwrap(), u_pow(int(1), 3));
        assert_eq!(parse_polynomial("-1/6*u^4").unwrap(), u_pow(rat(-1, 6), 4));
        let p = parse_polynomial("-1/6*u^4 + 2*u").unwrap();
        assert_eq!(p, &u_pow(rat(-1, 6), 4) + &u_pow(int(2), 1));
        assert_eq!(parse_polynomial("3 - u + 2u^2").unwrap(), &(&u_pow(int(3), 0) - &u_pow(int(1), 1)) + &u_pow(int(2), 2));
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("u^").is_err());
        assert!(parse_polynomial("1/0*u").is_err());
        assert!(parse_polynomial("u u").is_err());
    }

    #[test]
    fn rejects_small_s() {
        let err = parse_config("s = 1\n").unwrap_err();
        assert!(err.message.contains("s must be ≥ 2"), "{err}");
        assert_eq!((err.line, err.column), (1, 5));
    }

    #[test]
    fn diagnostics_are_located() {
        let err = parse_config("s = 2\nfoo = 3\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 1));
        let err = parse_config("s = 2\npoint.1 = u:1,2 t:3 v:0,0\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("expected 2 values"), "{err}");
        let err = parse_config("s = 2\nf1 = 1/x\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_config("s = 2\nf3 = u\n").unwrap_err();
        assert!(err.message.contains("f3"), "{err}");
    }

    #[test]
    fn defaults_and_comments() {
        let cfg = parse_config("# comment\ns = 3 # trailing\nf2 = 0\n").unwrap();
        assert_eq!(cfg.s, 3);
        assert_eq!(cfg.f[0], u_pow(int(1), 3));
        assert!(cfg.f[1].is_zero());
        assert_eq!((cfg.seed, cfg.samples, cfg.bound, cfg.kmax), (1, 100, 10, 2));
        assert!(cfg.points.is_empty());
        assert_eq!(cfg.plane_samples(), 50);
    }

    #[test]
    fn round_trip() {
        let text = "s = 2\nf1 = -1/6*u^4 + 2*u\nf2 = u^5 - 3\nseed = 9\nsamples = 12\nbound = 4\nkmax = 1\n\
                    point.2 = u:0,0 t:0,0 v:0,0\npoint.1 = u:1,2 t:3/4,-4 v:0,1\nfault = curvature 0,1,1,0\n";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.points[0].t[0], rat(3, 4));
        let again = parse_config(&cfg.emit()).unwrap();
        assert_eq!(again, cfg);
        assert_eq!(again.emit(), cfg.emit());
    }
}
