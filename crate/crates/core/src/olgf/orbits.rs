use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::OlgfError;
use crate::poly_series::TruncatedSeries;
use crate::tree_group::{cycle_lengths, truncate_perm, Engine, Word};

/// `counts[n][m] = o_{m,n}` for `0 <= m <= n <= n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitTable {
    pub n_max: u32,
    pub counts: Vec<Vec<BigInt>>,
}

impl OrbitTable {
    pub fn get(&self, m: u32, n: u32) -> BigInt {
        self.counts
            .get(n as usize)
            .and_then(|row| row.get(m as usize))
            .cloned()
            .unwrap_or_default()
    }

    /// `sum_m o_{m,n} 2^m == 2^n` on every level.
    pub fn covers_all_vertices(&self) -> bool {
        self.counts.iter().enumerate().all(|(n, row)| {
            let total: BigInt = row.iter().enumerate().map(|(m, c)| c << m).sum();
            total == BigInt::from(1) << n
        })
    }

    pub fn to_series(&self) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(self.n_max);
        for (n, row) in self.counts.iter().enumerate() {
            for (m, c) in row.iter().enumerate() {
                s.add_term(m as u32, n as u32, c.clone());
            }
        }
        s
    }
}

/// Orbit counts by cycle decomposition of the level permutations.
pub fn orbit_counts(eng: &mut Engine<'_>, w: &Word, n_max: u32) -> Result<OrbitTable, OlgfError> {
    let top = eng.level_permutation(w, n_max)?;
    let mut counts = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let p = if n == n_max {
            top.to_vec()
        } else {
            truncate_perm(&top, n_max, n)
        };
        let mut row = vec![BigInt::zero(); n as usize + 1];
        for len in cycle_lengths(&p) {
            debug_assert!(len.is_power_of_two());
            row[len.trailing_zeros() as usize] += 1;
        }
        counts.push(row);
    }
    Ok(OrbitTable { n_max, counts })
}

pub fn series_phi(
    eng: &mut Engine<'_>,
    w: &Word,
    n_max: u32,
) -> Result<TruncatedSeries, OlgfError> {
    Ok(orbit_counts(eng, w, n_max)?.to_series())
}

/// `Psi_w` from the orbit counts via `(X-2) Psi_n = Phi_n - 2 Phi_{n-1} - [n=0]`.
pub fn series_psi(
    eng: &mut Engine<'_>,
    w: &Word,
    n_max: u32,
) -> Result<TruncatedSeries, OlgfError> {
    let phi = series_phi(eng, w, n_max)?;
    psi_series_from_phi(&phi)
}

pub(crate) fn psi_series_from_phi(phi: &TruncatedSeries) -> Result<TruncatedSeries, OlgfError> {
    let n_max = phi.n_max();
    let mut shifted = TruncatedSeries::zero(n_max);
    for n in 1..=n_max {
        for (m, c) in phi.slice(n - 1).terms() {
            shifted.add_term(m.x, n, c * 2);
        }
    }
    let mut lhs = phi.sub(&shifted);
    lhs.add_term(0, 0, BigInt::from(-1));
    Ok(lhs.div_x_minus_2()?)
}

/// `Phi_{w^2}(X,Y) = Phi_w(0,Y) + 2 (Phi_w(X,Y) - Phi_w(0,Y)) / X` on truncations.
pub fn square_relation_check(
    eng: &mut Engine<'_>,
    w: &Word,
    n_max: u32,
) -> Result<bool, OlgfError> {
    let phi = series_phi(eng, w, n_max)?;
    let w2 = eng.system().product(w, w);
    let phi2 = series_phi(eng, &w2, n_max)?;
    let at0 = phi.at_x_zero();
    let rest = phi.sub(&at0).div_x()?.scale(&BigInt::from(2));
    Ok(phi2 == at0.add(&rest))
}
