//! Closed-form predictors for the detectability phase transition.
//!
//! All predictors take the realized algebraic connectivities of the two
//! (noisy) community subgraphs. Bounds are returned as computed, including
//! negative values, which mean that no reliable regime exists at that noise
//! level.
//!
//! With `m = min(lambda_2(L_1), lambda_2(L_2))`:
//!
//! ```text
//! p_ub = 2m / (n - |n1 - n2|) - q
//! p_lb = 2m / (n + |n1 - n2|) - q
//! c*   = m / n
//! ```
//!
//! For equal sizes both bounds collapse to the critical value `p*`.

use crate::{Error, Result};

/// Realized algebraic connectivities of the two community subgraphs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommunitySpectra {
    pub lambda2_1: f64,
    pub lambda2_2: f64,
    pub n1: usize,
    pub n2: usize,
    /// Noise insertion probability.
    pub q: f64,
}

impl CommunitySpectra {
    pub fn new(lambda2_1: f64, lambda2_2: f64, n1: usize, n2: usize, q: f64) -> Self {
        Self {
            lambda2_1,
            lambda2_2,
            n1,
            n2,
            q,
        }
    }

    /// Asymptotic plug-in for Erdos-Renyi communities:
    /// `lambda_2(L_i) = n_i (p_i + q)`.
    pub fn sbm_plugin(n1: usize, n2: usize, p1: f64, p2: f64, q: f64) -> Self {
        Self::new(n1 as f64 * (p1 + q), n2 as f64 * (p2 + q), n1, n2, q)
    }

    pub fn n(&self) -> usize {
        self.n1 + self.n2
    }

    fn size_gap(&self) -> usize {
        self.n1.abs_diff(self.n2)
    }

    /// `lambda_1 + lambda_2 - |lambda_1 - lambda_2|`, i.e. twice the minimum.
    fn twice_min(&self) -> f64 {
        self.lambda2_1 + self.lambda2_2 - (self.lambda2_1 - self.lambda2_2).abs()
    }
}

/// Which asymptotic branch `lambda_2(L) / n` follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// Below the threshold: `lambda_2(L) / n -> t`.
    Detectable,
    /// Above the threshold: `lambda_2(L) / n -> t / 2 + c*` (equal sizes).
    Undetectable,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Asymptote {
    Exact(f64),
    /// Unequal sizes in the undetectable case only admit bounds.
    Envelope { lower: f64, upper: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdPrediction {
    pub p_lb: f64,
    pub p_ub: f64,
    /// Present only for equal community sizes.
    pub p_star: Option<f64>,
    pub c_star: f64,
}

pub fn p_upper_bound(s: &CommunitySpectra) -> Result<f64> {
    let denom = s.n() - s.size_gap();
    if denom == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(s.twice_min() / denom as f64 - s.q)
}

pub fn p_lower_bound(s: &CommunitySpectra) -> f64 {
    s.twice_min() / (s.n() + s.size_gap()) as f64 - s.q
}

pub fn p_star_equal_sizes(s: &CommunitySpectra) -> Result<f64> {
    if s.n1 != s.n2 {
        return Err(Error::UnequalSizes { n1: s.n1, n2: s.n2 });
    }
    if s.n1 == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(s.twice_min() / s.n() as f64 - s.q)
}

pub fn c_star(s: &CommunitySpectra) -> f64 {
    s.twice_min() / (2 * s.n()) as f64
}

/// Limit (or envelope) of `lambda_2(L) / n` at `t = p + q`.
pub fn lambda2_asymptote(t: f64, case: Case, s: &CommunitySpectra) -> Asymptote {
    match case {
        Case::Detectable => Asymptote::Exact(t),
        Case::Undetectable => {
            let mid = t / 2.0 + c_star(s);
            if s.n1 == s.n2 {
                Asymptote::Exact(mid)
            } else {
                let half_width = s.size_gap() as f64 * t / (2 * s.n()) as f64;
                Asymptote::Envelope {
                    lower: mid - half_width,
                    upper: mid + half_width,
                }
            }
        }
    }
}

pub fn predict(s: &CommunitySpectra) -> Result<ThresholdPrediction> {
    let p_ub = p_upper_bound(s)?;
    let p_lb = p_lower_bound(s);
    let p_star = (s.n1 == s.n2).then_some(p_ub);
    Ok(ThresholdPrediction {
        p_lb,
        p_ub,
        p_star,
        c_star: c_star(s),
    })
}

/// Bounds `(p_lb, p_ub)` for Erdos-Renyi communities with size ratio
/// `c = n1 / n2`, from the plug-in `lambda_2(L_i) = n_i (p_i + q)`.
///
/// With `N = c p1 + p2 - |c p1 - p2 + (c - 1) q|`:
///
/// ```text
/// p_ub = (N + |1 - c| q) / (1 + c - |1 - c|)
/// p_lb = (N - |1 - c| q) / (1 + c + |1 - c|)
/// ```
///
/// At `c = 1` both equal `min(p1, p2)` whatever the noise level.
pub fn sbm_bounds(p1: f64, p2: f64, c: f64, q: f64) -> Result<(f64, f64)> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidRatio(c));
    }
    for (name, v) in [("p1", p1), ("p2", p2), ("q", q)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidProbability { name, value: v });
        }
    }
    let base = c * p1 + p2 - (c * p1 - p2 + (c - 1.0) * q).abs();
    let gap = (1.0 - c).abs();
    let p_ub = (base + gap * q) / (1.0 + c - gap);
    let p_lb = (base - gap * q) / (1.0 + c + gap);
    Ok((p_lb, p_ub))
}
