//! Finitary automorphisms of depth at most 7, stored as the flip bits of the
//! first levels of the tree in heap order (bit `2^l - 1 + j` is vertex `j` on level `l`,
//! with the first letter of the vertex as the most significant bit of `j`).

pub const MAX_FIN_DEPTH: u32 = 7;

fn mask(k: u32) -> u128 {
    if k >= 128 {
        u128::MAX
    } else {
        (1u128 << k) - 1
    }
}

/// Root flip and the two subtree portraits.
pub fn split(p: u128, d: u32) -> (bool, u128, u128) {
    let flip = p & 1 == 1;
    let (mut l, mut r) = (0u128, 0u128);
    for lvl in 1..d {
        let width = 1u32 << lvl;
        let half = width / 2;
        let chunk = (p >> (width - 1)) & mask(width);
        l |= (chunk & mask(half)) << (half - 1);
        r |= (chunk >> half) << (half - 1);
    }
    (flip, l, r)
}

pub fn join(flip: bool, l: u128, r: u128, d: u32) -> u128 {
    let mut p = flip as u128;
    for lvl in 1..d {
        let width = 1u32 << lvl;
        let half = width / 2;
        let lc = (l >> (half - 1)) & mask(half);
        let rc = (r >> (half - 1)) & mask(half);
        p |= (lc | (rc << half)) << (width - 1);
    }
    p
}

/// `p q`, acting with `q` first.
pub fn compose(p: u128, q: u128, d: u32) -> u128 {
    if p == 0 {
        return q;
    }
    if q == 0 || d == 0 {
        return p;
    }
    let (pf, pl, pr) = split(p, d);
    let (qf, ql, qr) = split(q, d);
    let (l, r) = if pf {
        (compose(pl, qr, d - 1), compose(pr, ql, d - 1))
    } else {
        (compose(pl, ql, d - 1), compose(pr, qr, d - 1))
    };
    join(pf ^ qf, l, r, d)
}

pub fn invert(p: u128, d: u32) -> u128 {
    if p == 0 || d == 0 {
        return p;
    }
    let (f, l, r) = split(p, d);
    let (il, ir) = (invert(l, d - 1), invert(r, d - 1));
    if f {
        join(true, ir, il, d)
    } else {
        join(false, il, ir, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_join_roundtrip() {
        for p in [0u128, 1, 0b110, 0x5a5a, (1u128 << 127) - 1] {
            let (f, l, r) = split(p, 7);
            assert_eq!(join(f, l, r, 7), p);
        }
    }

    #[test]
    fn group_laws() {
        let d = 3;
        for p in 0u128..128 {
            assert_eq!(compose(p, invert(p, d), d), 0);
            for q in [3u128, 17, 100] {
                let r = 45u128;
                assert_eq!(
                    compose(compose(p, q, d), r, d),
                    compose(p, compose(q, r, d), d)
                );
            }
        }
    }
}
