//! Inner products between basis states.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::pairing::{glue_raw, Pairing};
use crate::poly::LoopPoly;

/// The metric `G_ij = <i|j>` on a list of basis states, together with its
/// derivative in `a` at `a = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricReport {
    pub states: Vec<Pairing>,
    /// `entries[i][j] = a^glue_cycles(states[i], states[j])`.
    pub entries: Vec<Vec<LoopPoly>>,
    /// `1` exactly where the gluing is a single loop.
    pub derivative_at_zero: Vec<Vec<u8>>,
}

impl MetricReport {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// `yᵀ G'|_{a=0} x`: the number of single-loop gluings between an upper
    /// state `x` and a lower state `y` given in the basis of this report.
    pub fn contract(&self, y: &[u128], x: &[u128]) -> Result<u128> {
        let n = self.states.len();
        if x.len() != n || y.len() != n {
            return Err(Error::SizeMismatch { left: n, right: x.len().max(y.len()) });
        }
        let mut total: u128 = 0;
        for (row, &yi) in self.derivative_at_zero.iter().zip(y) {
            for (&d, &xj) in row.iter().zip(x) {
                if d == 1 {
                    let term = yi.checked_mul(xj).ok_or(Error::Overflow)?;
                    total = total.checked_add(term).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(total)
    }
}

pub fn metric_report(states: &[Pairing]) -> Result<MetricReport> {
    let endpoints = states.first().map_or(0, Pairing::endpoints);
    if let Some(bad) = states.iter().find(|p| p.endpoints() != endpoints) {
        return Err(Error::SizeMismatch { left: endpoints, right: bad.endpoints() });
    }
    let n = states.len();
    let mut seen = vec![false; endpoints];
    let mut entries = vec![vec![LoopPoly::zero(); n]; n];
    let mut derivative_at_zero = vec![vec![0u8; n]; n];
    for i in 0..n {
        for j in i..n {
            let cycles = glue_raw(states[i].raw(), states[j].raw(), &mut seen);
            entries[i][j] = LoopPoly::a_pow(cycles);
            entries[j][i] = LoopPoly::a_pow(cycles);
            let d = u8::from(cycles == 1);
            derivative_at_zero[i][j] = d;
            derivative_at_zero[j][i] = d;
        }
    }
    Ok(MetricReport { states: states.to_vec(), entries, derivative_at_zero })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::glue_cycles;
    use proptest::prelude::*;

    #[test]
    fn single_state() {
        let m = metric_report(&[Pairing::top(3)]).unwrap();
        assert_eq!(m.entries, vec![vec![LoopPoly::a_pow(3)]]);
        assert_eq!(m.derivative_at_zero, vec![vec![0]]);
    }

    #[test]
    fn empty_list() {
        assert!(metric_report(&[]).unwrap().is_empty());
    }

    #[test]
    fn size_mismatch() {
        assert!(metric_report(&[Pairing::top(3), Pairing::top(2)]).is_err());
    }

    proptest! {
        #[test]
        fn four_endpoint_metric_is_symmetric(picks in proptest::collection::vec(0usize..3, 1..6)) {
            let all: Vec<Pairing> = crate::pairing::all_pairings(2, 8).unwrap().collect();
            let states: Vec<Pairing> = picks.iter().map(|&k| all[k].clone()).collect();
            let m = metric_report(&states).unwrap();
            for i in 0..states.len() {
                prop_assert_eq!(&m.entries[i][i], &LoopPoly::a_pow(2));
                for j in 0..states.len() {
                    prop_assert_eq!(&m.entries[i][j], &m.entries[j][i]);
                    let g = glue_cycles(&states[i], &states[j]).unwrap();
                    prop_assert_eq!(&m.entries[i][j], &LoopPoly::a_pow(g));
                    prop_assert_eq!(m.derivative_at_zero[i][j] == 1, g == 1);
                }
            }
        }
    }
}
