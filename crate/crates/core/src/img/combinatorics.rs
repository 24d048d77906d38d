use alloc::vec;
use alloc::vec::Vec;

use super::{Case, ImgGroupSpec, SubsetJ};

/// The sets `S^x` and `I_i^x` for a periodic tuple `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatoricsTable {
    pub r: usize,
    /// `s_sets[x] = S^x`.
    pub s_sets: [SubsetJ; 2],
    /// `i_sets[i][x] = I_i^x` for `1 <= i <= r`; index 0 is unused.
    pub i_sets: Vec<[SubsetJ; 2]>,
}

impl CombinatoricsTable {
    pub fn new(spec: &ImgGroupSpec) -> Self {
        assert!(spec.case == Case::Periodic && spec.r >= 2);
        let r = spec.r;
        let mut s_sets = [SubsetJ::empty(); 2];
        for i in 2..=r {
            s_sets[spec.x_i(i) as usize].insert(i);
        }
        let mut i_sets = vec![[SubsetJ::empty(); 2]; r + 1];
        i_sets[r] = [spec.pi_set(s_sets[0]), spec.pi_set(s_sets[1])];
        for i in (2..=r).rev() {
            let xi = spec.x_i(i) as usize;
            for x in 0..2 {
                let cur = i_sets[i][x];
                i_sets[i - 1][x] = if cur.contains(1) {
                    spec.pi_set(cur.union(&s_sets[1 - xi]))
                } else {
                    spec.pi_set(SubsetJ(cur.0 & s_sets[xi].0))
                };
            }
        }
        CombinatoricsTable { r, s_sets, i_sets }
    }

    /// `{1..r} = {i} ⊔ I_i^0 ⊔ I_i^1` for every `i`.
    pub fn partition_holds(&self) -> bool {
        let full = SubsetJ::full(self.r);
        (1..=self.r).all(|i| {
            let [a, b] = self.i_sets[i];
            let single = SubsetJ::from_members(&[i]);
            a.0 & b.0 == 0
                && a.0 & single.0 == 0
                && b.0 & single.0 == 0
                && a.union(&b).union(&single) == full
        })
    }

    /// For distinct `i, j` some `I_i^x ∪ I_j^y` is everything.
    pub fn covering_pairs_exist(&self) -> bool {
        let full = SubsetJ::full(self.r);
        (1..=self.r).all(|i| {
            (1..=self.r).filter(|&j| j != i).all(|j| {
                (0..2).any(|x| (0..2).any(|y| self.i_sets[i][x].union(&self.i_sets[j][y]) == full))
            })
        })
    }

    pub fn some_empty(&self) -> bool {
        (1..=self.r).any(|i| self.i_sets[i].iter().any(|s| s.is_empty()))
    }

    pub fn some_first_empty(&self) -> bool {
        self.i_sets[1].iter().any(|s| s.is_empty())
    }

    /// The four lemma checks, in order.
    pub fn lemma_checks(&self) -> [bool; 4] {
        [
            self.partition_holds(),
            self.covering_pairs_exist(),
            self.some_empty(),
            self.some_first_empty(),
        ]
    }
}
