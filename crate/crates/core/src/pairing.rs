//! Perfect matchings of strand endpoints and the site operators acting on them.
//!
//! A [`Pairing`] is what remains of a half diagram once every closed loop
//! has been counted and every crossing has been forgotten: a set of chords
//! joining the `2n` loose ends in pairs. Chords may cross.
//!
//! Endpoints are numbered from 1 in the public API. Internally the partner
//! table is 0-based and stored as bytes, which keeps pairings cheap to hash,
//! compare and clone when they are used as map keys.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported number of endpoints.
pub const MAX_ENDPOINTS: usize = 250;

/// A fixed-point-free involution on endpoints `1..=2n`.
///
/// Ordering and equality compare the full partner table, so every matching
/// has exactly one encoding.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pairing {
    partner: Box<[u8]>,
}

impl Pairing {
    /// The adjacent-pairs matching `{(1,2), (3,4), ..., (2n-1,2n)}`.
    ///
    /// Read as caps this is the TOP state; read as cups it is the BOT state.
    pub fn top(n_chords: usize) -> Self {
        assert!(2 * n_chords <= MAX_ENDPOINTS, "too many endpoints");
        let partner = (0..2 * n_chords).map(|k| (k ^ 1) as u8).collect();
        Self { partner }
    }

    /// Builds a pairing from a 1-based partner table.
    pub fn from_partners(partners: &[usize]) -> Result<Self> {
        let m = partners.len();
        if m > MAX_ENDPOINTS {
            return Err(Error::TooManyEndpoints(m));
        }
        if !m.is_multiple_of(2) {
            return Err(Error::InvalidPairing("odd number of endpoints"));
        }
        let mut partner = vec![0u8; m];
        for (k, &j) in partners.iter().enumerate() {
            if j == 0 || j > m {
                return Err(Error::IndexOutOfRange { index: j, endpoints: m });
            }
            if j == k + 1 {
                return Err(Error::InvalidPairing("endpoint paired with itself"));
            }
            partner[k] = (j - 1) as u8;
        }
        for k in 0..m {
            if partner[partner[k] as usize] as usize != k {
                return Err(Error::InvalidPairing("partner table is not an involution"));
            }
        }
        Ok(Self { partner: partner.into_boxed_slice() })
    }

    /// Builds a pairing from 1-based chords; every endpoint must appear once.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let m = 2 * pairs.len();
        let mut partners = vec![0usize; m];
        for &(i, j) in pairs {
            for x in [i, j] {
                if x == 0 || x > m {
                    return Err(Error::IndexOutOfRange { index: x, endpoints: m });
                }
            }
            if i == j {
                return Err(Error::InvalidPairing("endpoint paired with itself"));
            }
            if partners[i - 1] != 0 || partners[j - 1] != 0 {
                return Err(Error::InvalidPairing("endpoint used twice"));
            }
            partners[i - 1] = j;
            partners[j - 1] = i;
        }
        Self::from_partners(&partners)
    }

    pub(crate) fn from_raw(partner: Box<[u8]>) -> Self {
        debug_assert!(is_matching(&partner));
        Self { partner }
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.partner
    }

    pub fn endpoints(&self) -> usize {
        self.partner.len()
    }

    pub fn chords(&self) -> usize {
        self.partner.len() / 2
    }

    /// Partner of endpoint `i` (both 1-based).
    pub fn partner(&self, i: usize) -> Result<usize> {
        self.check_endpoint(i)?;
        Ok(self.partner[i - 1] as usize + 1)
    }

    /// 1-based partner table.
    pub fn partners(&self) -> Vec<usize> {
        self.partner.iter().map(|&p| p as usize + 1).collect()
    }

    /// Chords as 1-based `(i, j)` with `i < j`, ordered by `i`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner.iter().enumerate().filter(|(k, &p)| *k < p as usize).map(|(k, &p)| (k + 1, p as usize + 1))
    }

    /// Crossing `σ_i`: exchanges the roles of endpoints `i` and `i+1`.
    ///
    /// A chord `(i, i+1)` absorbs the crossing and is returned unchanged.
    pub fn sigma(&self, i: usize) -> Result<Self> {
        self.check_site(i)?;
        let mut partner = self.partner.clone();
        sigma_in_place(&mut partner, i - 1);
        Ok(Self { partner })
    }

    /// Cup-and-cap `U_i`: joins the incoming ends at `i` and `i+1` and emits
    /// a fresh chord `(i, i+1)`.
    ///
    /// The flag is `true` when `i` and `i+1` were already partners, in which
    /// case a loop closes and the pairing is unchanged.
    pub fn cup_cap(&self, i: usize) -> Result<(Self, bool)> {
        self.check_site(i)?;
        let mut partner = self.partner.clone();
        let closed = cup_cap_in_place(&mut partner, i - 1);
        Ok((Self { partner }, closed))
    }

    /// Mirror image under `i ↦ 2n + 1 - i`.
    pub fn mirror(&self) -> Self {
        let m = self.partner.len();
        let mut partner = vec![0u8; m].into_boxed_slice();
        for (k, &p) in self.partner.iter().enumerate() {
            partner[m - 1 - k] = (m - 1 - p as usize) as u8;
        }
        Self { partner }
    }

    fn check_endpoint(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.partner.len() {
            return Err(Error::IndexOutOfRange { index: i, endpoints: self.partner.len() });
        }
        Ok(())
    }

    fn check_site(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.partner.len() {
            return Err(Error::IndexOutOfRange { index: i, endpoints: self.partner.len() });
        }
        Ok(())
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, (i, j)) in self.pairs().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "({i},{j})")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pairing{self}")
    }
}

pub(crate) fn is_matching(partner: &[u8]) -> bool {
    partner.iter().enumerate().all(|(k, &p)| {
        let p = p as usize;
        p < partner.len() && p != k && partner[p] as usize == k
    })
}

/// `σ` on the 0-based adjacent endpoints `k`, `k+1`.
#[inline]
pub(crate) fn sigma_in_place(partner: &mut [u8], k: usize) {
    let a = partner[k] as usize;
    if a == k + 1 {
        return;
    }
    let b = partner[k + 1] as usize;
    partner[k] = b as u8;
    partner[k + 1] = a as u8;
    partner[a] = (k + 1) as u8;
    partner[b] = k as u8;
}

/// `U` on the 0-based adjacent endpoints `k`, `k+1`; returns whether a loop closed.
#[inline]
pub(crate) fn cup_cap_in_place(partner: &mut [u8], k: usize) -> bool {
    let a = partner[k] as usize;
    if a == k + 1 {
        return true;
    }
    let b = partner[k + 1] as usize;
    partner[a] = b as u8;
    partner[b] = a as u8;
    partner[k] = (k + 1) as u8;
    partner[k + 1] = k as u8;
    false
}

/// Number of cycles in the union of two matchings on the same endpoints.
pub(crate) fn glue_raw(p: &[u8], q: &[u8], seen: &mut [bool]) -> usize {
    seen.iter_mut().for_each(|s| *s = false);
    let mut cycles = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        loop {
            seen[x] = true;
            let y = p[x] as usize;
            seen[y] = true;
            x = q[y] as usize;
            if x == start {
                break;
            }
        }
    }
    cycles
}

/// Number of closed loops formed by gluing the chords of `p` (as caps) to the
/// chords of `q` (as cups), so that `<p|q> = a^glue_cycles(p, q)`.
pub fn glue_cycles(p: &Pairing, q: &Pairing) -> Result<usize> {
    if p.endpoints() != q.endpoints() {
        return Err(Error::SizeMismatch { left: p.endpoints(), right: q.endpoints() });
    }
    let mut seen = vec![false; p.endpoints()];
    Ok(glue_raw(&p.partner, &q.partner, &mut seen))
}

/// `(2n - 1)!!`, the number of perfect matchings on `2n` endpoints.
pub fn double_factorial(n_chords: usize) -> Option<u128> {
    (1..=n_chords).try_fold(1u128, |acc, k| acc.checked_mul(2 * k as u128 - 1))
}

/// Enumerates every perfect matching on `2 * n_chords` endpoints exactly once.
///
/// Fails when `n_chords > limit`, since the count grows as `(2n - 1)!!`.
pub fn all_pairings(n_chords: usize, limit: usize) -> Result<AllPairings> {
    if n_chords > limit {
        return Err(Error::LimitExceeded { requested: n_chords, limit });
    }
    if 2 * n_chords > MAX_ENDPOINTS {
        return Err(Error::TooManyEndpoints(2 * n_chords));
    }
    Ok(AllPairings { choices: vec![0; n_chords], done: false })
}

/// Iterator returned by [`all_pairings`].
///
/// Matchings are indexed by a mixed-radix counter: step `j` joins the lowest
/// unmatched endpoint with the `choices[j]`-th of the `2(n-j) - 1` remaining.
#[derive(Debug, Clone)]
pub struct AllPairings {
    choices: Vec<usize>,
    done: bool,
}

impl AllPairings {
    fn decode(&self) -> Pairing {
        let n = self.choices.len();
        let mut free: Vec<u8> = (0..2 * n as u8).collect();
        let mut partner = vec![0u8; 2 * n];
        for &c in &self.choices {
            let x = free.remove(0);
            let y = free.remove(c);
            partner[x as usize] = y;
            partner[y as usize] = x;
        }
        Pairing::from_raw(partner.into_boxed_slice())
    }

    fn advance(&mut self) {
        let n = self.choices.len();
        for j in (0..n).rev() {
            let radix = 2 * (n - j) - 1;
            self.choices[j] += 1;
            if self.choices[j] < radix {
                return;
            }
            self.choices[j] = 0;
        }
        self.done = true;
    }
}

impl Iterator for AllPairings {
    type Item = Pairing;

    fn next(&mut self) -> Option<Pairing> {
        if self.done {
            return None;
        }
        let item = self.decode();
        self.advance();
        Some(item)
    }
}
