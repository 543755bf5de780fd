use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

const MAX_INDEX: usize = 60;

fn table() -> &'static [BigRational] {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // sum_{k=0}^{n} C(n+1, k) B_k = 0
        let mut b: Vec<BigRational> = Vec::with_capacity(MAX_INDEX + 1);
        b.push(BigRational::one());
        for n in 1..=MAX_INDEX {
            let mut acc = BigRational::zero();
            let mut c = BigInt::one(); // C(n+1, k)
            for (k, bk) in b.iter().enumerate() {
                acc += BigRational::from_integer(c.clone()) * bk;
                c = c * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
            }
            // c now equals C(n+1, n) = n+1
            b.push(-acc / BigRational::from_integer(c));
        }
        b
    })
}

/// Exact Bernoulli number `B_m` with `B_1 = -1/2`.
pub fn bernoulli_number(m: usize) -> Result<BigRational> {
    if m > MAX_INDEX {
        return Err(Error::BernoulliRange(m));
    }
    Ok(table()[m].clone())
}

pub fn bernoulli_number_f64(m: usize) -> Result<f64> {
    bernoulli_number(m).map(|b| b.to_f64().unwrap_or(f64::NAN))
}

/// Binomial coefficient as a float; exact for the small arguments used here.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// `B_p(x) = sum_k C(p,k) B_k x^(p-k)`, evaluated by Horner's rule.
pub fn bernoulli_polynomial(p: u32, x: f64) -> f64 {
    let p_usize = p as usize;
    assert!(p_usize <= MAX_INDEX, "Bernoulli polynomial order {p} too large");
    let b = table();
    // coefficient of x^j is C(p, p-j) B_{p-j}
    let mut acc = 0.0;
    for j in (0..=p).rev() {
        let k = p - j;
        let coeff = binomial(p, k) * b[k as usize].to_f64().unwrap_or(f64::NAN);
        acc = acc * x + coeff;
    }
    acc
}

/// Periodic extension `B_p(x - floor(x))`.
pub fn periodized_bernoulli(p: u32, x: f64) -> f64 {
    bernoulli_polynomial(p, x - x.floor())
}
