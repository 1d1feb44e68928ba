//! Closed-form edge counts: Turán numbers, Moon's bound and the anti-Ramsey
//! value for independent triangles. All arithmetic is exact integer.

use serde::Serialize;

use crate::error::{Error, Result};

#[inline]
pub fn binom2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// `t_p(n)`, the number of edges of the Turán graph `T_p(n)`.
pub fn turan_edges(n: u64, p: u64) -> Result<u64> {
    if p == 0 {
        return Err(Error::invalid("Turán number needs p >= 1"));
    }
    let (q, rem) = (n / p, n % p);
    let squares = rem * (q + 1) * (q + 1) + (p - rem) * q * q;
    Ok((n * n - squares) / 2)
}

/// `C(t,2) + t(n-t) + ⌊(n-t)²/4⌋`, the edge count of `K_t ∨ T_2(n-t)` and
/// Moon's value of `ex(n, (t+1)K_3)`.
pub fn moon_ex(n: u64, t: u64) -> Result<u64> {
    if t > n {
        return Err(Error::invalid(format!("t = {t} exceeds n = {n}")));
    }
    let rest = n - t;
    Ok(binom2(t) + t * rest + rest * rest / 4)
}

/// Smallest `n` for which the anti-Ramsey formula is proven for `(t+2)K_3`.
pub fn proven_range_start(t: u64) -> u64 {
    15 * t + 57
}

/// `c(n,t) = moon_ex(n,t) + 2` together with whether `(n,t)` lies in the
/// range where it is known to equal `ar(n, (t+2)K_3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArFormula {
    pub value: u64,
    pub in_proven_range: bool,
}

pub fn ar_formula(n: u64, t: u64) -> Result<ArFormula> {
    Ok(ArFormula {
        value: moon_ex(n, t)? + 2,
        in_proven_range: n >= proven_range_start(t),
    })
}

/// Validated `(n, t)` pair for the formulas above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormulaParams {
    pub n: u64,
    pub t: u64,
}

impl FormulaParams {
    pub fn new(n: u64, t: u64) -> Result<Self> {
        if t > n {
            return Err(Error::invalid(format!("t = {t} exceeds n = {n}")));
        }
        Ok(FormulaParams { n, t })
    }

    /// `t_2(n - t)`.
    pub fn bipartite_part(&self) -> u64 {
        let r = self.n - self.t;
        r * r / 4
    }

    pub fn moon_ex(&self) -> u64 {
        moon_ex(self.n, self.t).expect("validated")
    }

    pub fn ar_formula(&self) -> ArFormula {
        ar_formula(self.n, self.t).expect("validated")
    }
}
