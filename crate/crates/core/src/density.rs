//! Certified bounds on the maximum density of `{{a},{b,c}}`-multiplicative
//! sets.
//!
//! The density splits into three parts by component type:
//!
//! * complete components contribute the closed form
//!   `(a-1)(b-1)c³ / (ab(c-1)²(c+1))`;
//! * incomplete components of height at most `d` contribute
//!   `K · Σ_p Σ_r f(p,r) / (r(r+1))` with `K = (a-1)(b-1)(c-1)/(abc)`, which
//!   telescopes over the breakpoints of `f(p, ·)`;
//! * incomplete components above `d` contribute at most
//!   `K · Σ_{p>=d} p²/a^p`, summed in closed form.
//!
//! Everything is exact rational arithmetic.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::components::{f_table, TripleParams};
use crate::error::{Error, Result};
use crate::exact::{int, is_unit_interval_open, pow_rational, ratio, to_decimal, Rounding};

/// Cutoff floor used by the simplified tail estimate `β a^(-d/2)`.
pub const SIMPLIFIED_TAIL_MIN_CUTOFF: u32 = 22;

/// Largest `digits` accepted by [`convergence_estimate`].
pub const MAX_CONVERGENCE_DIGITS: u32 = 12;

/// Density of integers divisible by none of `a, b, c`.
pub fn admissible_fraction(t: &TripleParams) -> BigRational {
    let (a, b, c) = (t.a(), t.b(), t.c());
    ratio(
        BigInt::from(a - 1) * (b - 1) * (c - 1),
        BigInt::from(a) * b * c,
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailParams {
    /// `(b-1)(c-1)/(bc)`
    pub beta: BigRational,
}

impl TailParams {
    pub fn new(t: &TripleParams) -> Self {
        let (b, c) = (t.b(), t.c());
        TailParams {
            beta: ratio(BigInt::from(b - 1) * (c - 1), BigInt::from(b) * c),
        }
    }
}

pub fn delta_complete(t: &TripleParams) -> BigRational {
    let (a, b, c) = (t.a(), t.b(), t.c());
    let c = BigInt::from(c);
    let numer = BigInt::from(a - 1) * (b - 1) * &c * &c * &c;
    let denom = BigInt::from(a) * b * (&c - 1u32).pow(2u32) * (&c + 1u32);
    BigRational::new(numer, denom)
}

/// `Σ_k f_k (1/v_k - 1/v_{k+1})` over the breakpoints of `f(p, ·)`.
/// This is `Σ_{r=a^p}^{c^p-1} f(p,r)/(r(r+1))` without the factor `K`.
pub fn small_height_sum(t: &TripleParams, p: u32) -> BigRational {
    let table = f_table(t, p);
    let inv = |v: &BigUint| BigRational::new(BigInt::one(), BigInt::from(v.clone()));
    table
        .breakpoints
        .windows(2)
        .zip(&table.plateaus)
        .map(|(w, &f)| int(f) * (inv(&w[0]) - inv(&w[1])))
        .fold(BigRational::zero(), |acc, x| acc + x)
}

pub fn delta_small(t: &TripleParams, cutoff: u32) -> BigRational {
    let sum = (0..=cutoff)
        .map(|p| small_height_sum(t, p))
        .fold(BigRational::zero(), |acc, x| acc + x);
    admissible_fraction(t) * sum
}

/// `K · a^(1-d) ((a-1)²d² + 2(a-1)d + a + 1) / (a-1)³`, the exact value of
/// `K · Σ_{p>=d} p²/a^p`. Every incomplete component of height `p >= 1` has
/// independence number at most `p²`, so this bounds the large-component
/// contribution for every `d`.
pub fn tail_bound(t: &TripleParams, cutoff: u32) -> BigRational {
    let a = BigInt::from(t.a());
    let am1 = &a - 1u32;
    let d = BigInt::from(cutoff);
    let poly = &am1 * &am1 * &d * &d + 2u32 * &am1 * &d + &a + 1u32;
    let series = int(poly) * int(a.clone()) / (pow_rational(t.a(), cutoff) * int(am1.pow(3u32)));
    admissible_fraction(t) * series
}

/// `(β a^(-d/2))²`; squared so it stays rational for odd `d`.
pub fn simplified_tail_bound_squared(t: &TripleParams, cutoff: u32) -> BigRational {
    let beta = TailParams::new(t).beta;
    &beta * &beta / pow_rational(t.a(), cutoff)
}

/// `tail_bound(d) <= β a^(-d/2)`, compared exactly.
pub fn tail_within_simplified(t: &TripleParams, cutoff: u32) -> bool {
    let tail = tail_bound(t, cutoff);
    &tail * &tail <= simplified_tail_bound_squared(t, cutoff)
}

/// `max(ceil(2 log_a(β/ε)), 22)`: smallest `d >= 22` with `a^d >= (β/ε)²`.
pub fn seed_cutoff(t: &TripleParams, eps: &BigRational) -> u32 {
    let ratio_sq = {
        let r = TailParams::new(t).beta / eps;
        &r * &r
    };
    let a = int(t.a());
    let mut d = 0u32;
    let mut power = BigRational::one();
    while power < ratio_sq {
        power *= &a;
        d += 1;
    }
    d.max(SIMPLIFIED_TAIL_MIN_CUTOFF)
}

fn check_eps(eps: &BigRational) -> Result<()> {
    if is_unit_interval_open(eps) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "eps must lie in (0, 1), got {}",
            crate::exact::ratio_string(eps)
        )))
    }
}

/// Smallest `d` with `tail_bound(d) <= eps`. Starts from [`seed_cutoff`],
/// raises it if the exact tail is still too big there, then lowers it while
/// the tail stays within `eps`.
pub fn choose_cutoff(t: &TripleParams, eps: &BigRational) -> Result<u32> {
    check_eps(eps)?;
    let mut d = seed_cutoff(t, eps);
    while &tail_bound(t, d) > eps {
        d += 1;
    }
    while d > 0 && &tail_bound(t, d - 1) <= eps {
        d -= 1;
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityInterval {
    pub params: TripleParams,
    /// `None` when the cutoff was given directly.
    pub epsilon: Option<BigRational>,
    pub cutoff: u32,
    pub delta_complete: BigRational,
    pub delta_small: BigRational,
    pub tail_bound: BigRational,
    pub lower: BigRational,
    pub upper: BigRational,
}

impl DensityInterval {
    pub fn at_cutoff(t: &TripleParams, cutoff: u32) -> Self {
        let delta_complete = delta_complete(t);
        let delta_small = delta_small(t, cutoff);
        let tail_bound = tail_bound(t, cutoff);
        let lower = &delta_complete + &delta_small;
        let upper = &lower + &tail_bound;
        DensityInterval {
            params: *t,
            epsilon: None,
            cutoff,
            delta_complete,
            delta_small,
            tail_bound,
            lower,
            upper,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    /// Distance from `x` to the interval, zero inside it.
    pub fn distance(&self, x: &BigRational) -> BigRational {
        if x < &self.lower {
            &self.lower - x
        } else if x > &self.upper {
            x - &self.upper
        } else {
            BigRational::zero()
        }
    }
}

pub fn approximate_density(t: &TripleParams, eps: &BigRational) -> Result<DensityInterval> {
    let cutoff = choose_cutoff(t, eps)?;
    let mut interval = DensityInterval::at_cutoff(t, cutoff);
    interval.epsilon = Some(eps.clone());
    Ok(interval)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceEstimate {
    /// Rounded to nearest at `digits` decimals.
    pub decimal: String,
    pub digits: u32,
    pub cutoff: u32,
    /// `delta_complete + delta_small(cutoff)`.
    pub partial: BigRational,
}

/// Raises `d` until `delta_complete + delta_small(d)`, rounded to `digits`
/// decimals, agrees with the value at `d - 1`. Heuristic: unlike
/// [`approximate_density`] it carries no error guarantee.
pub fn convergence_estimate(t: &TripleParams, digits: u32) -> Result<ConvergenceEstimate> {
    if digits == 0 || digits > MAX_CONVERGENCE_DIGITS {
        return Err(Error::InvalidParams(format!(
            "digits must lie in [1, {MAX_CONVERGENCE_DIGITS}], got {digits}"
        )));
    }
    let k = admissible_fraction(t);
    let mut partial = delta_complete(t) + &k * small_height_sum(t, 0);
    let mut previous = to_decimal(&partial, digits, Rounding::Nearest);
    let mut cutoff = 0;
    loop {
        cutoff += 1;
        partial += &k * small_height_sum(t, cutoff);
        let current = to_decimal(&partial, digits, Rounding::Nearest);
        if current == previous {
            return Ok(ConvergenceEstimate {
                decimal: current,
                digits,
                cutoff,
                partial,
            });
        }
        previous = current;
    }
}
