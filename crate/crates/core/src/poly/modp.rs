//! Dense polynomials over a small prime field, and Berlekamp splitting.

/// Coefficients in `[0, p)`, lowest degree first, no trailing zeros.
pub type Fp = Vec<u64>;

pub fn normalize(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Fp {
    let n = a.len().max(b.len());
    normalize((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Fp {
    let n = a.len().max(b.len());
    normalize(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    normalize(out)
}

pub fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), normalize(rem));
    }
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut q = vec![0u64; rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = mulmod(rem[k + db], inv, p);
        if c == 0 {
            continue;
        }
        for (i, &bc) in b.iter().enumerate() {
            rem[k + i] = (rem[k + i] + p - mulmod(c, bc, p)) % p;
        }
        q[k] = c;
    }
    (normalize(q), normalize(rem))
}

pub fn monic(a: &[u64], p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = inv_mod(lc, p);
            a.iter().map(|&c| mulmod(c, inv, p)).collect()
        }
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Fp {
    let (mut x, mut y) = (normalize(a.to_vec()), normalize(b.to_vec()));
    while !y.is_empty() {
        let r = div_rem(&x, &y, p).1;
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
pub fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (normalize(a.to_vec()), normalize(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let lc = *r0.last().expect("ext_gcd of zero polynomials");
    let inv = inv_mod(lc, p);
    let scale = |v: &[u64]| normalize(v.iter().map(|&c| mulmod(c, inv, p)).collect());
    (scale(&r0), scale(&s0), scale(&t0))
}

pub fn derivative(a: &[u64], p: u64) -> Fp {
    normalize(a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

/// Irreducible monic factors of a squarefree monic polynomial of degree ≥ 1.
pub fn berlekamp(f: &[u64], p: u64) -> Vec<Fp> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // rows of Q: x^{ip} mod f
    let xp = powmod_x(p, f, p);
    let mut q_rows: Vec<Vec<u64>> = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        let mut row = cur.clone();
        row.resize(n, 0);
        q_rows.push(row);
        cur = div_rem(&mul(&cur, &xp, p), f, p).1;
    }
    // kernel of (Q - I)ᵗ acting on coefficient vectors: v with v·(Q - I) = 0
    let mut m: Vec<Vec<u64>> = (0..n)
        .map(|j| (0..n).map(|i| (q_rows[i][j] + p - u64::from(i == j)) % p).collect())
        .collect();
    let basis = nullspace_mod(&mut m, p);
    let k = basis.len();
    let mut factors = vec![f.to_vec()];
    for v in &basis {
        if factors.len() == k {
            break;
        }
        let v = normalize(v.clone());
        if v.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for g in factors {
            if g.len() <= 2 {
                next.push(g);
                continue;
            }
            let mut rest = g;
            for s in 0..p {
                if rest.len() <= 2 {
                    break;
                }
                let shifted = sub(&v, &[s], p);
                let h = gcd(&rest, &shifted, p);
                if h.len() > 1 && h.len() < rest.len() {
                    rest = monic(&div_rem(&rest, &h, p).0, p);
                    next.push(h);
                }
            }
            next.push(rest);
        }
        factors = next;
    }
    debug_assert_eq!(factors.len(), k);
    factors
}

fn powmod_x(e: u64, f: &[u64], p: u64) -> Fp {
    let mut base = div_rem(&[0, 1], f, p).1;
    let mut acc = vec![1u64];
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = div_rem(&mul(&acc, &base, p), f, p).1;
        }
        base = div_rem(&mul(&base, &base, p), f, p).1;
        e >>= 1;
    }
    acc
}

/// Right null space of `m` over F_p.
pub fn nullspace_mod(m: &mut [Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(pr, r);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = (*x + p - mulmod(f, *y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = (p - m[i][f]) % p;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_x4_minus_1_mod_5() {
        // x^4 - 1 = (x-1)(x-2)(x-3)(x-4) over F_5
        let f = vec![4, 0, 0, 0, 1];
        let mut fs = berlekamp(&f, 5);
        fs.sort();
        assert_eq!(fs, vec![vec![1, 1], vec![2, 1], vec![3, 1], vec![4, 1]]);
    }

    #[test]
    fn irreducible_stays_whole() {
        // x^2 + 1 is irreducible mod 3
        assert_eq!(berlekamp(&[1, 0, 1], 3), vec![vec![1, 0, 1]]);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = vec![1, 1]; // x+1
        let b = vec![2, 1]; // x+2 mod 7
        let (g, s, t) = ext_gcd(&a, &b, 7);
        assert_eq!(g, vec![1]);
        assert_eq!(add(&mul(&s, &a, 7), &mul(&t, &b, 7), 7), vec![1]);
    }
}
