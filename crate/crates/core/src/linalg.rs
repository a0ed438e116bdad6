//! Rank of integer matrices over the rationals or a prime field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficient field for homology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum FieldSpec {
    #[default]
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p > u64::from(u32::MAX) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FieldSpec::Rationals => s.serialize_str("q"),
            FieldSpec::Prime(p) => s.serialize_u32(*p),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank of a dense integer matrix given row by row.
pub fn rank(rows: Vec<Vec<i64>>, field: FieldSpec) -> usize {
    match field {
        FieldSpec::Rationals => rank_rational(rows),
        FieldSpec::Prime(p) => rank_mod_p(rows, p),
    }
}

fn rank_rational(rows: Vec<Vec<i64>>) -> usize {
    let wide: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    match eliminate_i128(wide) {
        Some(r) => r,
        None => eliminate_big(
            rows.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        ),
    }
}

/// Fraction-free elimination; `None` on overflow.
fn eliminate_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let piv = pivot_row[col];
        for row in tail.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let mut g = 0i128;
            for c in col..cols {
                let v = piv.checked_mul(row[c])?.checked_sub(f.checked_mul(pivot_row[c])?)?;
                row[c] = v;
                g = g.gcd(&v);
            }
            if g > 1 {
                row[col..].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    Some(rank)
}

fn eliminate_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let piv = pivot_row[col].clone();
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            let mut g = BigInt::zero();
            for c in col..cols {
                let v = &piv * &row[c] - &f * &pivot_row[c];
                g = g.gcd(&v);
                row[c] = v;
            }
            if g.abs() > BigInt::from(1) {
                row[col..].iter_mut().for_each(|x| *x = &*x / &g);
            }
        }
        rank += 1;
    }
    rank
}

fn rank_mod_p(rows: Vec<Vec<i64>>, p: u32) -> usize {
    let p = u64::from(p);
    let mut a: Vec<Vec<u64>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = pow_mod(a[rank][col], p - 2, p);
        a[rank][col..].iter_mut().for_each(|x| *x = *x * inv % p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for c in col..cols {
                row[c] = (row[c] + (p - f) * pivot_row[c]) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(7919).is_ok());
        assert_eq!(FieldSpec::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldSpec::prime(91), Err(Error::NotPrime(91)));
    }

    #[test]
    fn characteristic_matters() {
        let m = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        assert_eq!(rank(m.clone(), FieldSpec::Rationals), 3);
        assert_eq!(rank(m, FieldSpec::Prime(2)), 2);
    }

    #[test]
    fn big_fallback_agrees() {
        let m: Vec<Vec<i64>> = (0..6)
            .map(|i| (0..6).map(|j| ((i + 2) as i64).pow(j as u32) * 1_000_003).collect())
            .collect();
        let big = eliminate_big(m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
        assert_eq!(big, 6);
        assert_eq!(rank(m, FieldSpec::Rationals), 6);
    }

    #[test]
    fn empty_shapes() {
        assert_eq!(rank(vec![], FieldSpec::Rationals), 0);
        assert_eq!(rank(vec![vec![], vec![]], FieldSpec::Prime(3)), 0);
    }
}
