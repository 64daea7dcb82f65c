use std::fmt;

use super::mul_mod;

/// A polynomial over `F_p`, coefficients from the constant term upwards.
///
/// The coefficient vector never ends in zero; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FpPoly(Vec<u64>);

impl FpPoly {
    pub fn zero() -> Self {
        FpPoly(Vec::new())
    }

    pub fn constant(c: u64, p: u64) -> Self {
        Self::from_coeffs(vec![c], p)
    }

    pub fn monomial(c: u64, degree: usize, p: u64) -> Self {
        let mut v = vec![0; degree + 1];
        v[degree] = c;
        Self::from_coeffs(v, p)
    }

    pub fn from_coeffs(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn term_count(&self) -> usize {
        self.0.iter().filter(|&&c| c != 0).count()
    }

    pub(crate) fn is_canonical(&self, p: u64) -> bool {
        self.0.iter().all(|&c| c < p) && self.0.last() != Some(&0)
    }

    pub fn add(&self, other: &Self, p: u64) -> Self {
        let n = self.0.len().max(other.0.len());
        let v = (0..n)
            .map(|i| {
                let a = self.0.get(i).copied().unwrap_or(0);
                let b = other.0.get(i).copied().unwrap_or(0);
                (a + b) % p
            })
            .collect();
        Self::from_coeffs(v, p)
    }

    pub fn neg(&self, p: u64) -> Self {
        FpPoly(self.0.iter().map(|&c| if c == 0 { 0 } else { p - c }).collect())
    }

    pub fn mul(&self, other: &Self, p: u64) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                v[i + j] = (v[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::from_coeffs(v, p)
    }

    /// Parse `2*t^3 + t - 1` style input. Coefficients are reduced modulo `p`.
    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Self, p: u64) -> Option<(Self, Self)> {
        let d = divisor.degree()?;
        let lead_inv = super::pow_mod(divisor.0[d], p - 2, p);
        let mut rem = self.0.clone();
        let mut quot = vec![0u64; rem.len().saturating_sub(d)];
        while rem.len() > d {
            let top = rem.len() - 1;
            let c = super::mul_mod(rem[top], lead_inv, p);
            if c != 0 {
                let shift = top - d;
                quot[shift] = c;
                for (i, &b) in divisor.0.iter().enumerate() {
                    let sub = super::mul_mod(c, b, p);
                    rem[shift + i] = (rem[shift + i] + p - sub) % p;
                }
            }
            rem.pop();
        }
        Some((FpPoly::from_coeffs(quot, p), FpPoly::from_coeffs(rem, p)))
    }

    pub fn parse(text: &str, p: u64) -> Result<Self, String> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty polynomial".into());
        }
        let mut coeffs: Vec<u64> = Vec::new();
        let bytes = s.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut negative = false;
            while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                negative ^= bytes[pos] == b'-';
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                pos += 1;
            }
            let term = &s[start..pos];
            if term.is_empty() {
                return Err("dangling sign".into());
            }
            let (coef, degree) = parse_term(term, p)?;
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, 0);
            }
            let c = if negative && coef != 0 { p - coef } else { coef };
            coeffs[degree] = (coeffs[degree] + c) % p;
        }
        Ok(Self::from_coeffs(coeffs, p))
    }
}

fn parse_term(term: &str, p: u64) -> Result<(u64, usize), String> {
    let (coef_part, var_part) = match term.find('t') {
        Some(idx) => (&term[..idx], Some(&term[idx + 1..])),
        None => (term, None),
    };
    let coef_part = coef_part.strip_suffix('*').unwrap_or(coef_part);
    let coef = if coef_part.is_empty() {
        1
    } else {
        let big: num_bigint::BigUint = coef_part
            .parse()
            .map_err(|_| format!("bad coefficient `{coef_part}`"))?;
        (big % p).iter_u64_digits().next().unwrap_or(0)
    };
    let degree = match var_part {
        None => 0,
        Some("") => 1,
        Some(rest) => {
            let e = rest
                .strip_prefix('^')
                .ok_or_else(|| format!("unexpected `{rest}` after t"))?;
            e.parse::<usize>().map_err(|_| format!("bad exponent `{e}`"))?
        }
    };
    Ok((coef, degree))
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (deg, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (d, 1) => write!(f, "t^{d}")?,
                (d, c) => write!(f, "{c}*t^{d}")?,
            }
        }
        Ok(())
    }
}
