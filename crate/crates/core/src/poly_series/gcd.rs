//! gcd in Z[X,Y] by primitive pseudo-remainder sequences over (Z[t])[s].

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{BivariatePoly, Monomial};

/// Dense univariate polynomial, index = degree, no trailing zeros.
type UPoly = Vec<BigInt>;
/// Dense polynomial in the main variable with `UPoly` coefficients.
type RPoly = Vec<UPoly>;

fn u_trim(a: &mut UPoly) {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
}

fn u_content(a: &UPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn u_scale(a: &UPoly, c: &BigInt) -> UPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|v| v * c).collect()
}

fn u_div_scalar(a: &UPoly, c: &BigInt) -> UPoly {
    a.iter().map(|v| v / c).collect()
}

fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    u_trim(&mut out);
    out
}

fn u_sub_shifted(a: &mut UPoly, b: &UPoly, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigInt::zero());
    }
    for (i, y) in b.iter().enumerate() {
        a[i + shift] -= y;
    }
    u_trim(a);
}

fn u_primitive(a: &UPoly) -> UPoly {
    let c = u_content(a);
    let mut p = if c.is_one() {
        a.clone()
    } else {
        u_div_scalar(a, &c)
    };
    if p.last().is_some_and(|c| c.is_negative()) {
        for v in p.iter_mut() {
            *v = -core::mem::take(v);
        }
    }
    p
}

/// Exact division in Z[t]; `None` if not exact.
fn u_exact_div(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if b.len() > a.len() {
        return None;
    }
    let lb = b.last()?;
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    while !r.is_empty() && r.len() >= b.len() {
        let shift = r.len() - b.len();
        let (qc, rem) = r.last().unwrap().div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let t = u_scale(b, &qc);
        u_sub_shifted(&mut r, &t, shift);
        q[shift] = qc;
    }
    if r.is_empty() {
        u_trim(&mut q);
        Some(q)
    } else {
        None
    }
}

fn u_prem(a: &UPoly, b: &UPoly) -> UPoly {
    let lb = b.last().unwrap();
    let mut r = a.clone();
    while !r.is_empty() && r.len() >= b.len() {
        let shift = r.len() - b.len();
        let lr = r.last().unwrap().clone();
        let g = lr.gcd(lb);
        let mb = lb / &g;
        let mr = lr / &g;
        r = u_scale(&r, &mb);
        let t = u_scale(b, &mr);
        u_sub_shifted(&mut r, &t, shift);
    }
    r
}

fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() {
        return u_primitive_with_content(b);
    }
    if b.is_empty() {
        return u_primitive_with_content(a);
    }
    let c = u_content(a).gcd(&u_content(b));
    let (mut a, mut b) = (u_primitive(a), u_primitive(b));
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    while b.len() > 1 {
        let r = u_prem(&a, &b);
        if r.is_empty() {
            break;
        }
        a = b;
        b = u_primitive(&r);
    }
    if b.len() == 1 {
        return vec![c];
    }
    u_scale(&b, &c)
}

fn u_primitive_with_content(a: &UPoly) -> UPoly {
    let c = u_content(a);
    if c.is_zero() {
        return Vec::new();
    }
    u_scale(&u_primitive(a), &c)
}

fn r_trim(a: &mut RPoly) {
    while a.last().is_some_and(|c| c.is_empty()) {
        a.pop();
    }
}

fn r_content(a: &RPoly) -> UPoly {
    let mut g: UPoly = Vec::new();
    for c in a {
        g = u_gcd(&g, c);
        if g.len() == 1 && g[0].is_one() {
            break;
        }
    }
    g
}

fn r_div_u(a: &RPoly, c: &UPoly) -> RPoly {
    a.iter()
        .map(|v| u_exact_div(v, c).expect("content divides"))
        .collect()
}

fn r_primitive(a: &RPoly) -> RPoly {
    let c = r_content(a);
    if c.len() == 1 && c[0].is_one() {
        a.clone()
    } else {
        r_div_u(a, &c)
    }
}

fn r_prem(a: &RPoly, b: &RPoly) -> RPoly {
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    while !r.is_empty() && r.len() >= b.len() {
        let shift = r.len() - b.len();
        let lr = r.last().unwrap().clone();
        let mut next: RPoly = r.iter().map(|c| u_mul(c, &lb)).collect();
        for (i, c) in b.iter().enumerate() {
            let t = u_mul(c, &lr);
            u_sub_shifted(&mut next[i + shift], &t, 0);
        }
        r_trim(&mut next);
        r = next;
    }
    r
}

fn r_gcd(a: &RPoly, b: &RPoly) -> RPoly {
    let ca = r_content(a);
    let cb = r_content(b);
    let c = u_gcd(&ca, &cb);
    let (mut a, mut b) = (r_div_u(a, &ca), r_div_u(b, &cb));
    if a.len() < b.len() {
        core::mem::swap(&mut a, &mut b);
    }
    while b.len() > 1 {
        let r = r_prem(&a, &b);
        if r.is_empty() {
            break;
        }
        a = b;
        b = r_primitive(&r);
    }
    if b.len() == 1 {
        return vec![c];
    }
    b.iter().map(|v| u_mul(v, &c)).collect()
}

/// Dense form with `main` as the outer variable. `main_is_y` selects Y.
fn to_dense(p: &BivariatePoly, main_is_y: bool) -> RPoly {
    let mut out: RPoly = Vec::new();
    for (m, c) in p.terms() {
        let (o, i) = if main_is_y { (m.y, m.x) } else { (m.x, m.y) };
        let (o, i) = (o as usize, i as usize);
        if out.len() <= o {
            out.resize(o + 1, Vec::new());
        }
        if out[o].len() <= i {
            out[o].resize(i + 1, BigInt::zero());
        }
        out[o][i] = c.clone();
    }
    out
}

fn from_dense(a: &RPoly, main_is_y: bool) -> BivariatePoly {
    let mut p = BivariatePoly::zero();
    for (o, row) in a.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            let m = if main_is_y {
                Monomial::new(i as u32, o as u32)
            } else {
                Monomial::new(o as u32, i as u32)
            };
            p.add_term(m, c.clone());
        }
    }
    p
}

/// gcd in Z[X,Y], unit-normalized (positive constant term when there is one,
/// else positive leading coefficient). `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &BivariatePoly, b: &BivariatePoly) -> BivariatePoly {
    let mut g = raw_gcd(a, b);
    g.unit_normalize();
    g
}

fn raw_gcd(a: &BivariatePoly, b: &BivariatePoly) -> BivariatePoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let (ax, ay) = a.monomial_order();
    let (bx, by) = b.monomial_order();
    let (mx, my) = (ax.min(bx), ay.min(by));
    let a1 = a.div_monomial(ax, ay).unwrap();
    let b1 = b.div_monomial(bx, by).unwrap();
    let core = if a1.num_terms() == 1 || b1.num_terms() == 1 {
        BivariatePoly::constant(a1.content().gcd(&b1.content()))
    } else if a1 == b1 {
        a1
    } else {
        let main_is_y = a1.degree_y().max(b1.degree_y()) <= a1.degree_x().max(b1.degree_x());
        let g = r_gcd(&to_dense(&a1, main_is_y), &to_dense(&b1, main_is_y));
        from_dense(&g, main_is_y)
    };
    core.mul_monomial(mx, my)
}

/// lcm in Z[X,Y], unit-normalized like [`poly_gcd`].
pub fn poly_lcm(a: &BivariatePoly, b: &BivariatePoly) -> BivariatePoly {
    if a.is_zero() || b.is_zero() {
        return BivariatePoly::zero();
    }
    let g = raw_gcd(a, b);
    let mut l = a * &b.exact_div(&g).expect("gcd divides");
    l.unit_normalize();
    l
}
