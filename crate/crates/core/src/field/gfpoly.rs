//! Dense univariate polynomials over a prime field GF(p).
//!
//! Coefficient vectors are little-endian (index `i` holds the coefficient of
//! `t^i`) and always trimmed: no trailing zeros, the zero polynomial is empty.

pub(crate) type DensePoly = Vec<u64>;

pub(crate) fn trim(a: &mut DensePoly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a % p, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn sub(a: &DensePoly, b: &DensePoly, p: u64) -> DensePoly {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &DensePoly, b: &DensePoly, p: u64) -> DensePoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &DensePoly, m: &DensePoly, p: u64) -> DensePoly {
    assert!(!m.is_empty(), "division by the zero polynomial");
    let mut r = a.clone();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        let shift = dr - dm;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn gcd(a: &DensePoly, b: &DensePoly, p: u64) -> DensePoly {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let li = inv_mod(lead, p);
        for c in x.iter_mut() {
            *c = *c * li % p;
        }
    }
    x
}

pub(crate) fn mul_mod(a: &DensePoly, b: &DensePoly, m: &DensePoly, p: u64) -> DensePoly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn pow_poly_mod(base: &DensePoly, mut exp: u128, m: &DensePoly, p: u64) -> DensePoly {
    let mut acc = rem(&vec![1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo an irreducible `m`, by the extended Euclidean algorithm.
pub(crate) fn inv_poly_mod(a: &DensePoly, m: &DensePoly, p: u64) -> Option<DensePoly> {
    let mut r0 = m.clone();
    let mut r1 = rem(a, m, p);
    let mut s0: DensePoly = Vec::new();
    let mut s1: DensePoly = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], p);
    let mut out: DensePoly = s0.iter().map(|&x| x * c % p).collect();
    trim(&mut out);
    Some(rem(&out, m, p))
}

pub(crate) fn divrem(a: &DensePoly, m: &DensePoly, p: u64) -> (DensePoly, DensePoly) {
    let mut r = a.clone();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    let mut q = vec![0u64; r.len().saturating_sub(dm)];
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        let shift = dr - dm;
        q[shift] = c;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn has_root(m: &DensePoly, p: u64) -> bool {
    (0..p).any(|x| {
        let mut acc = 0u64;
        for &c in m.iter().rev() {
            acc = (acc * x + c) % p;
        }
        acc == 0
    })
}

pub(crate) fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rabin's irreducibility test for a monic `m` of degree `e` over GF(p):
/// `t^(p^e) = t mod m` and `gcd(t^(p^(e/r)) - t, m) = 1` for every prime `r | e`.
pub(crate) fn is_irreducible(m: &DensePoly, p: u64) -> bool {
    let e = m.len().saturating_sub(1);
    if e == 0 {
        return false;
    }
    if e == 1 {
        return true;
    }
    if e <= 3 {
        return !has_root(m, p);
    }
    let t: DensePoly = vec![0, 1];
    let frob = |k: u32| -> DensePoly { pow_poly_mod(&t, (p as u128).pow(k), m, p) };
    if sub(&frob(e as u32), &t, p) != DensePoly::new() {
        return false;
    }
    for r in prime_factors(e as u128) {
        let h = sub(&frob((e as u128 / r) as u32), &t, p);
        if gcd(&h, m, p).len() != 1 {
            return false;
        }
    }
    true
}

/// Whether the class of `t` generates the multiplicative group of GF(p)[t]/(m).
pub(crate) fn t_is_primitive(m: &DensePoly, p: u64) -> bool {
    let e = m.len() - 1;
    let order = (p as u128).pow(e as u32) - 1;
    let t: DensePoly = if e == 1 { vec![(p - m[0]) % p] } else { vec![0, 1] };
    is_primitive_element(&t, m, p, order)
}

pub(crate) fn is_primitive_element(g: &DensePoly, m: &DensePoly, p: u64, order: u128) -> bool {
    let g = rem(g, m, p);
    if g.is_empty() {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|r| pow_poly_mod(&g, order / r, m, p) != vec![1])
}
