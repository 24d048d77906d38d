use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::rc::Rc;
use alloc::vec::Vec;

use super::lru::LruCache;
use super::system::RecursionSystem;
use super::word::Word;
use super::TreeError;

/// Default maximum level for explicit level permutations.
pub const DEFAULT_DEPTH_CAP: u32 = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EqualityBudget {
    /// Maximum number of word pairs explored by the bisimulation.
    pub max_pairs: usize,
    /// Level used by the fallback comparison of level permutations.
    pub max_depth: u32,
}

impl Default for EqualityBudget {
    fn default() -> Self {
        EqualityBudget {
            max_pairs: 4096,
            max_depth: 12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equality {
    Equal,
    /// The two elements act differently on this level and identically above it.
    NotEqual {
        level: u32,
    },
    /// Budget exhausted and no difference found up to the fallback depth.
    Unknown,
}

/// Memo tables for computations in one recursion system.
pub struct Engine<'s> {
    sys: &'s RecursionSystem,
    perms: LruCache<(Word, u32), Rc<Vec<u32>>>,
    conj: BTreeMap<(Word, Word, u32), bool>,
    pub depth_cap: u32,
    pub budget: EqualityBudget,
}

impl<'s> Engine<'s> {
    pub fn new(sys: &'s RecursionSystem) -> Self {
        Engine {
            sys,
            perms: LruCache::new(1 << 14),
            conj: BTreeMap::new(),
            depth_cap: DEFAULT_DEPTH_CAP,
            budget: EqualityBudget::default(),
        }
    }

    pub fn with_cache_cap(sys: &'s RecursionSystem, cap: usize) -> Self {
        let mut e = Self::new(sys);
        e.perms = LruCache::new(cap);
        e
    }

    pub fn system(&self) -> &'s RecursionSystem {
        self.sys
    }

    /// Permutation of the `2^n` vertices of level `n`. Vertex `t` is indexed with
    /// its first letter as the most significant bit.
    pub fn level_permutation(&mut self, w: &Word, n: u32) -> Result<Rc<Vec<u32>>, TreeError> {
        if n > self.depth_cap {
            return Err(TreeError::DepthBudgetExceeded {
                level: n,
                cap: self.depth_cap,
            });
        }
        let w = self.sys.normalize(w);
        Ok(self.perm_rec(&w, n))
    }

    fn perm_rec(&mut self, w: &Word, n: u32) -> Rc<Vec<u32>> {
        if w.is_empty() || n == 0 {
            return Rc::new((0..1u32 << n).collect());
        }
        let key = (w.clone(), n);
        if n >= 3 {
            if let Some(p) = self.perms.get(&key) {
                return p;
            }
        }
        let s = self.sys.section_of(w);
        let pl = self.perm_rec(&s.left, n - 1);
        let pr = self.perm_rec(&s.right, n - 1);
        let half = 1u32 << (n - 1);
        let mut out = Vec::with_capacity(2 * half as usize);
        if s.flip {
            out.extend(pr.iter().map(|&t| half + t));
            out.extend(pl.iter().copied());
        } else {
            out.extend(pl.iter().copied());
            out.extend(pr.iter().map(|&t| half + t));
        }
        let out = Rc::new(out);
        if n >= 3 {
            self.perms.insert(key, out.clone());
        }
        out
    }

    /// Sign of the action on level `n`, from the cycle decomposition.
    pub fn sign_parity(&mut self, w: &Word, n: u32) -> Result<i8, TreeError> {
        let p = self.level_permutation(w, n)?;
        let cycles = cycle_lengths(&p).len();
        Ok(if (p.len() - cycles).is_multiple_of(2) {
            1
        } else {
            -1
        })
    }

    /// Sign of the action on level `n`, from `sgn_n((u,v) sigma^f) = sgn_{n-1}(uv) * sgn_n(sigma)^f`.
    pub fn sign_recursive(&self, w: &Word, n: u32) -> i8 {
        let mut w = self.sys.normalize(w);
        let mut sign = 1i8;
        for k in (1..=n).rev() {
            if w.is_empty() {
                break;
            }
            let s = self.sys.section_of(&w);
            if s.flip && k == 1 {
                sign = -sign;
            }
            w = self.sys.product(&s.left, &s.right);
        }
        sign
    }

    /// Decide equality by exploring the states of `a^-1 b`: it is trivial iff
    /// no reachable state flips. Falls back to comparing level permutations
    /// once the state budget runs out.
    pub fn elements_equal(&mut self, a: &Word, b: &Word) -> Equality {
        let a = self.sys.normalize(a);
        let b = self.sys.normalize(b);
        if a == b {
            return Equality::Equal;
        }
        let z = self.sys.product(&self.sys.inverse(&a), &b);
        let mut queue = VecDeque::from([(z, 0u32)]);
        let mut seen = BTreeSet::new();
        while let Some((x, d)) = queue.pop_front() {
            if x.is_empty() || seen.contains(&x) {
                continue;
            }
            if seen.len() >= self.budget.max_pairs {
                return self.compare_by_levels(&a, &b);
            }
            let s = self.sys.section_of(&x);
            seen.insert(x);
            if s.flip {
                return Equality::NotEqual { level: d + 1 };
            }
            queue.push_back((s.left, d + 1));
            queue.push_back((s.right, d + 1));
        }
        Equality::Equal
    }

    fn compare_by_levels(&mut self, a: &Word, b: &Word) -> Equality {
        let top = self.budget.max_depth.min(self.depth_cap);
        let pa = self.perm_rec(a, top);
        let pb = self.perm_rec(b, top);
        if pa == pb {
            return Equality::Unknown;
        }
        for lvl in 1..=top {
            if truncate_perm(&pa, top, lvl) != truncate_perm(&pb, top, lvl) {
                return Equality::NotEqual { level: lvl };
            }
        }
        unreachable!("permutations differ on the top level")
    }

    /// Hash of the action on level `n`; equal elements have equal fingerprints.
    pub fn fingerprint(&mut self, w: &Word, n: u32) -> u64 {
        let p = self.perm_rec(w, n.min(self.depth_cap));
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &x in p.iter() {
            h ^= x as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        h
    }

    /// Image of the level-`depth` vertex `v` (first letter in the most
    /// significant of the `depth` low bits), `depth <= 64`.
    pub fn vertex_image(&self, w: &Word, v: u64, depth: u32) -> u64 {
        let mut cur = self.sys.normalize(w);
        let mut out = v;
        for k in (0..depth).rev() {
            if cur.is_empty() {
                break;
            }
            let s = self.sys.section_of(&cur);
            let bit = (v >> k) & 1;
            if s.flip {
                out ^= 1 << k;
            }
            cur = if bit == 0 { s.left } else { s.right };
        }
        out
    }

    /// Whether `a` and `b` are conjugate in the automorphism group of the first
    /// `n` levels.
    pub fn conjugate_in_level(&mut self, a: &Word, b: &Word, n: u32) -> Result<bool, TreeError> {
        if n > self.depth_cap {
            return Err(TreeError::DepthBudgetExceeded {
                level: n,
                cap: self.depth_cap,
            });
        }
        let a = self.sys.normalize(a);
        let b = self.sys.normalize(b);
        Ok(self.conj_rec(a, b, n))
    }

    fn conj_rec(&mut self, a: Word, b: Word, n: u32) -> bool {
        if n == 0 || a == b {
            return true;
        }
        let key = if a <= b { (a, b, n) } else { (b, a, n) };
        if let Some(&v) = self.conj.get(&key) {
            return v;
        }
        let (a, b, _) = key.clone();
        let sa = self.sys.section_of(&a);
        let sb = self.sys.section_of(&b);
        let res = if sa.flip != sb.flip
            || (n >= 2 && cycle_type(&self.perm_rec(&a, n)) != cycle_type(&self.perm_rec(&b, n)))
        {
            false
        } else if sa.flip {
            let ua = self.sys.product(&sa.left, &sa.right);
            let ub = self.sys.product(&sb.left, &sb.right);
            self.conj_rec(ua, ub, n - 1)
        } else {
            (self.conj_rec(sa.left.clone(), sb.left.clone(), n - 1)
                && self.conj_rec(sa.right.clone(), sb.right.clone(), n - 1))
                || (self.conj_rec(sa.left, sb.right, n - 1)
                    && self.conj_rec(sa.right, sb.left, n - 1))
        };
        self.conj.insert(key, res);
        res
    }

    pub fn clear_caches(&mut self) {
        self.perms.clear();
        self.conj.clear();
    }
}

/// Restrict a level-`top` permutation to level `lvl <= top`.
pub fn truncate_perm(p: &[u32], top: u32, lvl: u32) -> Vec<u32> {
    let shift = top - lvl;
    (0..1u32 << lvl)
        .map(|t| p[(t << shift) as usize] >> shift)
        .collect()
}

/// Cycle lengths of a permutation, in order of smallest element.
pub fn cycle_lengths(p: &[u32]) -> Vec<u32> {
    let mut seen = alloc::vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut t = start;
        while !seen[t] {
            seen[t] = true;
            t = p[t] as usize;
            len += 1;
        }
        out.push(len);
    }
    out
}

fn cycle_type(p: &[u32]) -> Vec<u32> {
    let mut c = cycle_lengths(p);
    c.sort_unstable();
    c
}
