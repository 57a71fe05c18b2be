//! Reference implementations used only by the tests. Nothing here calls into
//! the library except to convert between index types.

#![allow(dead_code)]

use std::collections::BTreeMap;

pub fn modpow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * a as u128 % p as u128) as u64;
        }
        a = (a as u128 * a as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    modpow(a, p - 2, p)
}

pub fn reduce(x: i128, p: u64) -> u64 {
    x.rem_euclid(p as i128) as u64
}

/// `sgn(a)^m / m^{|a|}` mod p.
fn term(a: i32, m: u64, p: u64) -> u64 {
    let base = modpow(inv(m, p), a.unsigned_abs() as u64, p);
    if a < 0 && m % 2 == 1 {
        (p - base) % p
    } else {
        base
    }
}

/// The nested sum over `0 < m_1 < ... < m_r < p`, by plain recursion.
pub fn zeta(index: &[i32], p: u64) -> u64 {
    fn rec(index: &[i32], lo: u64, p: u64) -> u64 {
        let Some((&a, rest)) = index.split_first() else {
            return 1;
        };
        let mut total = 0u64;
        for m in lo..p {
            let t = term(a, m, p);
            if t == 0 {
                continue;
            }
            let inner = rec(rest, m + 1, p);
            total = (total + (t as u128 * inner as u128 % p as u128) as u64) % p;
        }
        total
    }
    rec(index, 1, p)
}

/// Coefficient of `z^M` in the polylogarithm series of `index`, for `M < p`.
pub fn li_coefficient(index: &[i32], big_m: u64, p: u64) -> u64 {
    let (last, head) = index.split_last().expect("nonempty");
    if big_m == 0 {
        return 0;
    }
    // all 0 < m_1 < .. < m_{r-1} < M
    fn rec(index: &[i32], lo: u64, hi: u64, p: u64) -> u64 {
        let Some((&a, rest)) = index.split_first() else {
            return 1;
        };
        let mut total = 0;
        for m in lo..hi {
            let inner = rec(rest, m + 1, hi, p);
            total = (total + (term(a, m, p) as u128 * inner as u128 % p as u128) as u64) % p;
        }
        total
    }
    let head_sum = rec(head, 1, big_m, p);
    (head_sum as u128 * term(*last, big_m, p) as u128 % p as u128) as u64
}

/// Every tuple of length `i + 1` with nonzero entries and absolute weight
/// `i + j + 1`, found by brute force.
pub fn s_set(i: u32, j: u32, signed: bool) -> Vec<Vec<i32>> {
    let len = (i + 1) as usize;
    let weight = (i + j + 1) as i32;
    let max = j as i32 + 1;
    let values: Vec<i32> = (1..=max)
        .flat_map(|v| if signed { vec![v, -v] } else { vec![v] })
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(len: usize, weight: i32, values: &[i32], cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == len {
            if cur.iter().map(|a| a.abs()).sum::<i32>() == weight {
                out.push(cur.clone());
            }
            return;
        }
        for &v in values {
            cur.push(v);
            rec(len, weight, values, cur, out);
            cur.pop();
        }
    }
    rec(len, weight, &values, &mut cur, &mut out);
    out
}

pub fn sign(index: &[i32]) -> i128 {
    if index.iter().filter(|a| **a < 0).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn cat(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().chain(b).copied().collect()
}

pub fn binom(n: u32, k: u32) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Exponents `(l1, l2, u1, u2)` to coefficient, reduced mod p.
pub type Poly4 = BTreeMap<[u32; 4], u64>;

fn add(poly: &mut Poly4, e: [u32; 4], c: i128, p: u64) {
    let slot = poly.entry(e).or_insert(0);
    *slot = reduce(*slot as i128 + c, p);
    if *slot == 0 {
        poly.remove(&e);
    }
}

/// The two halves of the four-parameter sum formula, expanded term by term.
pub fn main_terms(n: u32, m: u32, p: u64, signed: bool) -> (Poly4, Poly4) {
    let mut pure = Poly4::new();
    let mut mixed = Poly4::new();
    for r1 in 0..=n {
        for k1 in 0..=m {
            let (r2, k2) = (n - r1, m - k1);
            let mut s_signed = 0i128;
            let mut s_plain = 0i128;
            for a in s_set(r1, k1, signed) {
                for b in s_set(r2, k2, signed) {
                    let z = zeta(&cat(&a, &b), p) as i128;
                    s_plain += z;
                    s_signed += sign(&b) * z;
                }
            }
            let par = if (r2 + k2) % 2 == 0 { 1 } else { -1 };
            add(&mut pure, [r1, r2, k1, k2], par * s_signed, p);
            for x in 0..=r2 {
                for y in 0..=k2 {
                    let c = binom(r2, x) * binom(k2, y) * s_plain;
                    // (l1+l2)^r2 (u1+u2)^k2 = sum C l1^x l2^(r2-x) u1^y u2^(k2-y)
                    add(&mut mixed, [r1 + x, r2 - x, k1 + y, k2 - y], c, p);
                    add(&mut mixed, [x, r1 + r2 - x, y, k1 + k2 - y], c, p);
                }
            }
        }
    }
    (pure, mixed)
}

pub fn poly_add(a: &Poly4, b: &Poly4, p: u64) -> Poly4 {
    let mut out = a.clone();
    for (e, c) in b {
        add(&mut out, *e, *c as i128, p);
    }
    out
}
