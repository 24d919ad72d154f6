//! Closed forms for benzels and the conjectured tiling formulas, plus the
//! arithmetic used to analyze computed sequences.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::grid::canonical_params;

fn residue(a: u32, b: u32) -> u32 {
    (a + b) % 3
}

fn halve(twice: i64) -> i64 {
    assert!(twice % 2 == 0, "closed form is not integral");
    twice / 2
}

/// Number of cells of the `(a, b)`-benzel.
pub fn area(a: u32, b: u32) -> i64 {
    let (a, b) = canonical_params(a, b);
    let (x, y) = (a as i64, b as i64);
    let base = -x * x + 4 * x * y - y * y - x - y;
    halve(if residue(a, b) == 1 { base + 2 } else { base })
}

/// Number of trimers in any tiling of the `(a, b)`-benzel.
pub fn tile_count(a: u32, b: u32) -> i64 {
    let cells = area(a, b);
    assert!(cells % 3 == 0, "benzel area {cells} is not a multiple of 3");
    cells / 3
}

/// Right-stone area minus left-stone area (in cells), shared by every tiling.
pub fn cl_invariant(a: u32, b: u32) -> i64 {
    let (a, b) = canonical_params(a, b);
    let (x, y) = (a as i64, b as i64);
    let twice = match residue(a, b) {
        0 => 3 * x * x - 6 * x * y + 3 * y * y - x - y,
        1 => -x * x + 4 * x * y - y * y - x - y + 2,
        _ => 3 * x * x - 6 * x * y + 3 * y * y + x + y - 2,
    };
    halve(twice)
}

/// The only benzels that bones alone can tile: `(k(3k-1)/2, k(3k+1)/2)`.
pub fn bone_benzel_params(k: u32) -> (u32, u32) {
    (k * (3 * k - 1) / 2, k * (3 * k + 1) / 2)
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `2^n n!`, the conjectured value of `T_012(3n, 3n)`.
pub fn formula_p2(n: u64) -> BigUint {
    (BigUint::one() << n) * factorial(n)
}

/// `2^n n!`, the conjectured value of `T_012(3n+1, 3n+2)`.
pub fn formula_p3(n: u64) -> BigUint {
    formula_p2(n)
}

/// The conjectured product for `T_102(n+3k, 2n+3k-1)`.
pub fn formula_p5(k: u64, n: u64) -> BigUint {
    assert!(n >= 1, "n must be positive");
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..=k {
        num *= factorial(2 * i) * factorial(2 * i + 2 * n - 2);
        den *= factorial(i + n - 1) * factorial(i + n + k - 1);
    }
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "product is not integral at k={k}, n={n}");
    q
}

/// `(3n+3)(3n-7)! / ((n-5)!(2n-1)!)`, with `1/(-m)! = 0`; conjectured `T_103(n, 2n-3)`.
pub fn formula_p6(n: u64) -> BigUint {
    assert!(n >= 3, "formula starts at n = 3");
    if n < 5 {
        return BigUint::zero();
    }
    let num = BigUint::from(3 * n + 3) * factorial(3 * n - 7);
    let den = factorial(n - 5) * factorial(2 * n - 1);
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "ratio is not integral at n={n}");
    q
}

fn ratio(num: impl IntoIterator<Item = i64>, den: impl IntoIterator<Item = i64>) -> BigRational {
    let prod = |it: &mut dyn Iterator<Item = i64>| it.fold(BigInt::one(), |acc, f| acc * f);
    BigRational::new(prod(&mut num.into_iter()), prod(&mut den.into_iter()))
}

/// Conjectured `T(n)T(n+2)/T(n+1)^2` for `T(n) = T_112(3n, 3n)`.
pub fn quotient_p8(n: u64) -> BigRational {
    let n = n as i64;
    let sq = |x: i64| [x, x];
    ratio(
        [256, 4 * n + 1, 4 * n + 5]
            .into_iter()
            .chain(sq(2 * n + 3))
            .chain(sq(4 * n + 3)),
        [27, 3 * n + 1, 3 * n + 5]
            .into_iter()
            .chain(sq(3 * n + 2))
            .chain(sq(3 * n + 4)),
    )
}

/// Conjectured `T(n)T(n+3)/(T(n+1)T(n+2))` for `T(n) = T_112(3n+1, 3n+2)`.
pub fn quotient_p10(n: u64) -> BigRational {
    let n = n as i64;
    let pow = |x: i64, e: usize| std::iter::repeat_n(x, e);
    let num = [65536, 2 * n + 3, 2 * n + 7, 4 * n + 3, 4 * n + 11]
        .into_iter()
        .chain(pow(2 * n + 5, 2))
        .chain(pow(4 * n + 5, 2))
        .chain(pow(4 * n + 7, 2))
        .chain(pow(4 * n + 9, 2));
    let den = [729, 3 * n + 2, 3 * n + 10]
        .into_iter()
        .chain(pow(3 * n + 4, 3))
        .chain(pow(3 * n + 5, 2))
        .chain(pow(3 * n + 7, 2))
        .chain(pow(3 * n + 8, 3));
    ratio(num, den)
}

/// `T(n)T(n+2)/T(n+1)^2` evaluated on data.
pub fn second_quotient(t0: &BigUint, t1: &BigUint, t2: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(t0 * t2), BigInt::from(t1 * t1))
}

/// `T(n)T(n+3)/(T(n+1)T(n+2))` evaluated on data.
pub fn third_quotient(t0: &BigUint, t1: &BigUint, t2: &BigUint, t3: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(t0 * t3), BigInt::from(t1 * t2))
}

/// Large Schröder numbers `S(0) = 1, S(1) = 2, S(2) = 6, ...`
pub fn schroeder_sequence(len: usize) -> Vec<BigUint> {
    let mut s: Vec<BigUint> = Vec::with_capacity(len);
    for n in 0..len as u64 {
        let v = match n {
            0 => BigUint::one(),
            1 => BigUint::from(2u32),
            _ => {
                // (n+1) S(n) = 3(2n-1) S(n-1) - (n-2) S(n-2)
                let t = &s[n as usize - 1] * (3 * (2 * n - 1)) - &s[n as usize - 2] * (n - 2);
                let (q, r) = t.div_rem(&BigUint::from(n + 1));
                debug_assert!(r.is_zero());
                q
            }
        };
        s.push(v);
    }
    s
}

pub fn schroeder(n: usize) -> BigUint {
    schroeder_sequence(n + 1).pop().unwrap()
}

/// Royal paths of order `n ≥ 1`: successive differences of the Schröder numbers.
pub fn royal_paths(n: usize) -> BigUint {
    assert!(n >= 1);
    let s = schroeder_sequence(n + 1);
    &s[n] - &s[n - 1]
}

/// Residues of a sequence modulo a power of two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicReport {
    pub modulus: u32,
    pub residues: Vec<u32>,
    /// Least `p < residues.len()` with `residues[t] == residues[t + p]` throughout.
    pub detected_period: Option<usize>,
    /// Sequence index of `residues[0]`.
    pub offset: usize,
}

impl PadicReport {
    /// One period of residues, if a period was detected.
    pub fn pattern(&self) -> Option<&[u32]> {
        self.detected_period.map(|p| &self.residues[..p])
    }

    pub fn is_constant(&self) -> bool {
        self.detected_period == Some(1)
    }
}

pub fn padic_profile(values: &[BigUint], modulus: u32, offset: usize) -> PadicReport {
    assert!(
        modulus.is_power_of_two() && (2..=32).contains(&modulus),
        "modulus must be 2, 4, 8, 16 or 32"
    );
    assert!(!values.is_empty(), "no values to profile");
    let m = BigUint::from(modulus);
    let residues: Vec<u32> = values.iter().map(|v| (v % &m).to_u32().unwrap()).collect();
    let detected_period = (1..residues.len())
        .find(|&p| (0..residues.len() - p).all(|t| residues[t] == residues[t + p]));
    PadicReport {
        modulus,
        residues,
        detected_period,
        offset,
    }
}

pub fn two_adic_valuation(v: &BigUint) -> u64 {
    v.trailing_zeros().expect("valuation of zero is undefined")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub factors: BTreeMap<u64, u32>,
    /// Unfactored remainder, 1 when the factorization is complete.
    pub cofactor: BigUint,
    pub bound: u64,
}

impl FactorReport {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_one()
    }

    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(self.cofactor.clone(), |acc, (&p, &e)| {
                acc * BigUint::from(p).pow(e)
            })
    }
}

/// Primes up to and including `bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2;
    while p * p <= n {
        if sieve[p] {
            for m in (p * p..=n).step_by(p) {
                sieve[m] = false;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &s)| s.then_some(i as u64))
        .collect()
}

pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

/// Trial division by the primes `≤ bound`.
pub fn factorize(v: &BigUint, bound: u64) -> FactorReport {
    assert!(!v.is_zero(), "cannot factor zero");
    let mut rest = v.clone();
    let mut factors = BTreeMap::new();
    for p in primes_up_to(bound) {
        if rest.is_one() {
            break;
        }
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            // What remains is prime.
            if let Some(q) = rest.to_u64().filter(|q| *q <= bound) {
                factors.insert(q, 1);
                rest = BigUint::one();
            }
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            factors.insert(p, e);
        }
    }
    FactorReport {
        factors,
        cofactor: rest,
        bound,
    }
}

/// Whether every prime factor of `v` is below `4n`.
pub fn check_prime_bound(n: u64, v: &BigUint) -> bool {
    assert!(n >= 1);
    let mut rest = v.clone();
    for p in primes_up_to(4 * n - 1) {
        let bp = BigUint::from(p);
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
        }
    }
    rest.is_one()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prediction {
    /// No tiling: the invariant forces stones the tile set lacks.
    Zero(ZeroReason),
    /// Exactly one tiling, by right stones only.
    One,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroReason {
    NeedsRightStones,
    NeedsLeftStones,
}

/// What the invariant alone says about `T_ijk(a, b)`.
pub fn predict_zero_or_one(code: (u8, u8, u8), a: u32, b: u32) -> Option<Prediction> {
    let (a, b) = canonical_params(a, b);
    let cl = cl_invariant(a, b);
    let (i, j, k) = code;
    if i == 0 && cl > 0 {
        Some(Prediction::Zero(ZeroReason::NeedsRightStones))
    } else if j == 0 && cl < 0 {
        Some(Prediction::Zero(ZeroReason::NeedsLeftStones))
    } else if (i, j, k) == (1, 1, 3) && residue(a, b) == 1 {
        Some(Prediction::One)
    } else {
        None
    }
}
