//! Sparse linear combinations of basis pairings.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::pairing::{cup_cap_in_place, glue_raw, sigma_in_place, Pairing};
use crate::poly::{Count, LoopPoly};

/// How loop factors are tracked during evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Mode {
    /// Keep the full polynomial in `a`.
    Exact,
    /// Set `a = 0` on the fly: any term that closes a loop is dropped.
    ///
    /// A loop closed before the final gluing always leaves at least one more
    /// component, so the dropped terms never contribute to the `a^1`
    /// coefficient.
    #[default]
    A0,
}

/// `Σ coeff(p) <p|` over basis pairings `p`, all on the same endpoints.
///
/// Zero coefficients are never stored. In [`Mode::A0`] every coefficient is
/// a constant.
#[derive(Clone, PartialEq, Eq)]
pub struct StateVector {
    mode: Mode,
    endpoints: usize,
    terms: BTreeMap<Pairing, LoopPoly>,
}

impl StateVector {
    pub fn new(mode: Mode, endpoints: usize) -> Self {
        Self { mode, endpoints, terms: BTreeMap::new() }
    }

    /// A single basis state with coefficient 1.
    pub fn basis(mode: Mode, pairing: Pairing) -> Self {
        let mut out = Self::new(mode, pairing.endpoints());
        out.terms.insert(pairing, LoopPoly::one());
        out
    }

    /// `<TOP|` on `2 * n_chords` endpoints.
    pub fn top(mode: Mode, n_chords: usize) -> Self {
        Self::basis(mode, Pairing::top(n_chords))
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn endpoints(&self) -> usize {
        self.endpoints
    }

    /// Number of distinct basis states with a nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, pairing: &Pairing) -> Option<&LoopPoly> {
        self.terms.get(pairing)
    }

    /// Terms in ascending pairing order.
    pub fn iter(&self) -> btree_map::Iter<'_, Pairing, LoopPoly> {
        self.terms.iter()
    }

    /// Adds `coeff <pairing|`, truncating to the constant term in a=0 mode.
    pub fn add_term(&mut self, pairing: Pairing, coeff: LoopPoly) -> Result<()> {
        if pairing.endpoints() != self.endpoints {
            return Err(Error::SizeMismatch { left: self.endpoints, right: pairing.endpoints() });
        }
        let coeff = match self.mode {
            Mode::Exact => coeff,
            Mode::A0 => coeff.truncate_a0(),
        };
        if coeff.is_zero() {
            return Ok(());
        }
        match self.terms.entry(pairing) {
            btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            btree_map::Entry::Occupied(mut slot) => slot.get_mut().add_assign(&coeff)?,
        }
        Ok(())
    }

    /// Sum of the `a^0` coefficients: the number of half diagrams that have
    /// not closed a loop.
    pub fn weight(&self) -> Result<Count> {
        self.terms.values().try_fold(0 as Count, |acc, c| acc.checked_add(c.coefficient(0)).ok_or(Error::Overflow))
    }

    /// The same state with `a = 0`.
    pub fn a0_part(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(_, c)| c.coefficient(0) != 0)
            .map(|(p, c)| (p.clone(), c.truncate_a0()))
            .collect();
        Self { mode: Mode::A0, endpoints: self.endpoints, terms }
    }

    /// Right action of `σ_i` alone.
    pub fn apply_sigma(&self, i: usize) -> Result<Self> {
        self.map_site(i, |partner, k, out, coeff| {
            sigma_in_place(partner, k);
            out.push_raw(partner, coeff.clone(), false)
        })
    }

    /// Right action of the black operator `σ_i + U_i`.
    pub fn apply_black(&self, i: usize) -> Result<Self> {
        self.map_site(i, |partner, k, out, coeff| {
            let mut crossed = partner.to_vec();
            sigma_in_place(&mut crossed, k);
            out.push_raw(&crossed, coeff.clone(), false)?;
            let closed = cup_cap_in_place(partner, k);
            out.push_raw(partner, coeff.clone(), closed)
        })
    }

    /// Right action of the white operator `1 + σ_i`.
    pub fn apply_white(&self, i: usize) -> Result<Self> {
        self.map_site(i, |partner, k, out, coeff| {
            out.push_raw(partner, coeff.clone(), false)?;
            sigma_in_place(partner, k);
            out.push_raw(partner, coeff.clone(), false)
        })
    }

    fn map_site<F>(&self, i: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&mut [u8], usize, &mut Self, &LoopPoly) -> Result<()>,
    {
        if i == 0 || i >= self.endpoints {
            return Err(Error::IndexOutOfRange { index: i, endpoints: self.endpoints });
        }
        let mut out = Self::new(self.mode, self.endpoints);
        let mut scratch = vec![0u8; self.endpoints];
        for (p, coeff) in &self.terms {
            scratch.copy_from_slice(p.raw());
            f(&mut scratch, i - 1, &mut out, coeff)?;
        }
        Ok(out)
    }

    fn push_raw(&mut self, partner: &[u8], coeff: LoopPoly, closed: bool) -> Result<()> {
        let coeff = match (closed, self.mode) {
            (false, _) => coeff,
            (true, Mode::Exact) => coeff.shift_by_a(),
            (true, Mode::A0) => return Ok(()),
        };
        self.add_term(Pairing::from_raw(partner.into()), coeff)
    }

    /// `<self|other>` where `other` is read as a lower half (its chords are
    /// cups): `Σ_{p,q} s(p) t(q) a^glue(p,q)`.
    pub fn pair_with(&self, other: &Self) -> Result<LoopPoly> {
        self.check_same(other)?;
        let mut seen = vec![false; self.endpoints];
        let mut total = LoopPoly::zero();
        for (p, s) in &self.terms {
            for (q, t) in &other.terms {
                let cycles = glue_raw(p.raw(), q.raw(), &mut seen);
                total.add_assign(&s.mul(t)?.shift_by(cycles))?;
            }
        }
        Ok(total)
    }

    /// Coefficient of `a^1` in [`pair_with`](Self::pair_with), computed from
    /// the `a^0` parts only.
    pub fn single_loop_pairing(&self, other: &Self) -> Result<Count> {
        self.check_same(other)?;
        let mut seen = vec![false; self.endpoints];
        let mut total: Count = 0;
        for (p, s) in &self.terms {
            let s0 = s.coefficient(0);
            if s0 == 0 {
                continue;
            }
            for (q, t) in &other.terms {
                let t0 = t.coefficient(0);
                if t0 == 0 || glue_raw(p.raw(), q.raw(), &mut seen) != 1 {
                    continue;
                }
                let term = s0.checked_mul(t0).ok_or(Error::Overflow)?;
                total = total.checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        Ok(total)
    }

    /// Glues against `|BOT>`, the adjacent-pairs cup state.
    pub fn close_with_bottom(&self) -> Result<LoopPoly> {
        let bottom = Self::top(Mode::Exact, self.endpoints / 2);
        self.pair_with(&bottom)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.endpoints != other.endpoints {
            return Err(Error::SizeMismatch { left: self.endpoints, right: other.endpoints });
        }
        Ok(())
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StateVector")
            .field("mode", &self.mode)
            .field("endpoints", &self.endpoints)
            .field("terms", &self.terms)
            .finish()
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (p, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}) <{p}|")?;
        }
        Ok(())
    }
}
