//! Arithmetic in `Z/pZ` for word-sized primes, plus rank computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    add(a, p - b % p, p)
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    (a != 0).then(|| pow(a, p - 2, p))
}

pub fn reduce_int(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Image of a rational number in `Z/pZ`, or `None` if `p` divides the
/// denominator.
pub fn reduce_rational(x: &BigRational, p: u64) -> Option<u64> {
    let n = reduce_int(x.numer(), p);
    let d = reduce_int(x.denom(), p);
    inv(d, p).map(|di| mul(n, di, p))
}

/// Deterministic Miller-Rabin; the base set is exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Uniformly chosen prime in `[2^61, 2^62)`.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let c = rng.random_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime(c) {
            return c;
        }
    }
}

/// Rank of a dense matrix over `Z/pZ` (entries already reduced).
pub fn rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv_p = inv(rows[rank][col], p).expect("nonzero pivot");
        for r in (rank + 1)..rows.len() {
            let f = rows[r][col];
            if f == 0 {
                continue;
            }
            let factor = mul(f, inv_p, p);
            for c in col..ncols {
                let v = mul(factor, rows[rank][c], p);
                rows[r][c] = sub(rows[r][c], v, p);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// `true` when `x` is the zero residue.
pub fn is_zero(x: &BigRational, p: u64) -> bool {
    x.is_zero() || reduce_rational(x, p) == Some(0)
}
