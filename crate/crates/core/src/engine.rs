//! Counting paths: algebraic evolution and exhaustive enumeration.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::morse::{boundary_reduce, Color, MorseProgram, Row, Site};
use crate::pairing::{cup_cap_in_place, glue_raw, sigma_in_place};
use crate::poly::{Count, LoopPoly};
use crate::state::{Mode, StateVector};

/// Default cap on `D` for the exhaustive paths.
pub const DEFAULT_BRUTE_LIMIT: usize = 24;

/// Default cap on the number of basis states held during evolution.
pub const DEFAULT_STATE_BUDGET: usize = 4_000_000;

/// One choice per site, in program order. `false` crosses; `true` takes the
/// alternative (cup-and-cap on black, recoil on white).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    choices: Vec<bool>,
}

impl Assignment {
    pub fn new(choices: Vec<bool>) -> Self {
        Self { choices }
    }

    /// Decodes an integer whose most significant of `sites` bits is the
    /// first site.
    pub fn from_index(index: u64, sites: usize) -> Self {
        let choices = (0..sites).map(|k| bit_of(index, sites, k)).collect();
        Self { choices }
    }

    pub fn index(&self) -> Option<u64> {
        if self.choices.len() > 64 {
            return None;
        }
        Some(self.choices.iter().fold(0u64, |acc, &c| (acc << 1) | u64::from(c)))
    }

    pub fn choices(&self) -> &[bool] {
        &self.choices
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    /// Lowercase hex of the choice bits read as one binary number (first
    /// site most significant), left-padded to `ceil(D / 4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.choices.len().div_ceil(4);
        let pad = 4 * digits - self.choices.len();
        let mut bits = vec![false; pad];
        bits.extend_from_slice(&self.choices);
        bits.chunks(4)
            .map(|nibble| {
                let v = nibble.iter().fold(0u32, |acc, &b| (acc << 1) | u32::from(b));
                char::from_digit(v, 16).unwrap_or('0')
            })
            .collect()
    }

    /// Inverse of [`to_hex`](Self::to_hex); case-insensitive.
    pub fn from_hex(hex: &str, sites: usize) -> Result<Self> {
        let hex = hex.trim();
        let hex = hex.strip_prefix("0x").unwrap_or(hex);
        if hex.is_empty() && sites > 0 {
            return Err(Error::InvalidAssignment("empty hex string"));
        }
        let mut bits = Vec::with_capacity(4 * hex.len());
        for ch in hex.chars() {
            let v = ch.to_digit(16).ok_or(Error::InvalidAssignment("not a hex digit"))?;
            bits.extend((0..4).rev().map(|k| (v >> k) & 1 == 1));
        }
        if bits.len() < sites {
            let mut padded = vec![false; sites - bits.len()];
            padded.extend(bits);
            bits = padded;
        }
        let excess = bits.len() - sites;
        if bits[..excess].iter().any(|&b| b) {
            return Err(Error::InvalidAssignment("value has more bits than the program has sites"));
        }
        Ok(Self { choices: bits[excess..].to_vec() })
    }
}

#[inline]
fn bit_of(index: u64, sites: usize, k: usize) -> bool {
    (index >> (sites - 1 - k)) & 1 == 1
}

/// Histogram of assignments by number of closed curves.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComponentDistribution {
    pub counts: BTreeMap<usize, Count>,
}

impl ComponentDistribution {
    pub fn total(&self) -> Count {
        self.counts.values().sum()
    }

    /// Number of single-curve drawings.
    pub fn single(&self) -> Count {
        self.counts.get(&1).copied().unwrap_or(0)
    }

    pub fn merge(&mut self, other: &Self) {
        for (k, v) in &other.counts {
            *self.counts.entry(*k).or_insert(0) += v;
        }
    }

    /// The distribution as a polynomial in `a`.
    pub fn to_poly(&self) -> LoopPoly {
        let degree = self.counts.keys().next_back().copied().unwrap_or(0);
        let mut coeffs = vec![0; degree + 1];
        for (k, v) in &self.counts {
            coeffs[*k] = *v;
        }
        LoopPoly::from_coeffs(coeffs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountOptions {
    /// Evolve only the upper half and glue it to its own transpose.
    pub split: bool,
    /// Apply [`boundary_reduce`] first.
    pub reduce: bool,
    pub mode: Mode,
    /// Maximum number of basis states held at once.
    pub state_budget: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self { split: false, reduce: false, mode: Mode::A0, state_budget: DEFAULT_STATE_BUDGET }
    }
}

impl CountOptions {
    /// Split, reduced, a=0: the cheapest route.
    pub fn fastest() -> Self {
        Self { split: true, reduce: true, ..Self::default() }
    }
}

/// Reduced upper-half statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvolutionStats {
    /// Sum of the `a^0` coefficients of the upper-half state.
    pub surviving_diagram_weight: Count,
    /// Number of basis states with a nonzero `a^0` coefficient.
    pub distinct_basis_states: usize,
    /// Basis states after the middle row has acted.
    pub middle_basis_states: usize,
    /// Endpoints tracked during evolution.
    pub tracked_endpoints: usize,
    /// State size after each upper row.
    pub row_state_sizes: Vec<usize>,
}

fn apply_site(state: &StateVector, site: Site) -> Result<StateVector> {
    match site.color {
        Color::Black => state.apply_black(site.pos),
        Color::White => state.apply_white(site.pos),
    }
}

/// Applies rows top to bottom: black sites as `σ + U`, white as `1 + σ`.
///
/// Terms with the same resulting pairing are merged after every site.
pub fn evolve(rows: &[Row], start: StateVector) -> Result<StateVector> {
    evolve_tracked(rows, start, usize::MAX, |_| {})
}

fn evolve_tracked(
    rows: &[Row],
    start: StateVector,
    budget: usize,
    mut after_row: impl FnMut(usize),
) -> Result<StateVector> {
    let mut state = start;
    for row in rows {
        for site in row.sites() {
            state = apply_site(&state, site)?;
            if state.len() > budget {
                return Err(Error::BudgetExceeded { size: state.len(), budget });
            }
        }
        after_row(state.len());
    }
    Ok(state)
}

/// `P(a) = Σ_assignments a^{components}`, by full exact evolution.
pub fn component_polynomial(program: &MorseProgram) -> Result<LoopPoly> {
    component_polynomial_with_budget(program, DEFAULT_STATE_BUDGET)
}

pub fn component_polynomial_with_budget(program: &MorseProgram, budget: usize) -> Result<LoopPoly> {
    program.checked()?;
    let start = StateVector::top(Mode::Exact, program.chords());
    let state = evolve_tracked(program.rows(), start, budget, |_| {})?;
    state.close_with_bottom()
}

/// Number of single-curve drawings.
///
/// Every combination of options gives the same answer; they only change how
/// much work is done.
pub fn count_infinite(program: &MorseProgram, options: &CountOptions) -> Result<Count> {
    count_infinite_with_peak(program, options).map(|(count, _)| count)
}

/// [`count_infinite`] together with the largest number of basis states held
/// after any row.
pub fn count_infinite_with_peak(program: &MorseProgram, options: &CountOptions) -> Result<(Count, usize)> {
    program.checked()?;
    let reduced;
    let (program, multiplicity) = if options.reduce {
        reduced = boundary_reduce(program)?;
        (&reduced.program, reduced.multiplicity)
    } else {
        (program, 1)
    };
    let budget = options.state_budget;
    let mut peak = 1;
    let mut track = |size: usize| peak = peak.max(size);
    let count = if options.split {
        let (upper, middle, _) = program.split_halves()?;
        let top = StateVector::top(options.mode, program.chords());
        let upper_state = evolve_tracked(upper, top, budget, &mut track)?;
        let middle_state = evolve_tracked(core::slice::from_ref(middle), upper_state.clone(), budget, &mut track)?;
        middle_state.single_loop_pairing(&upper_state)?
    } else {
        let top = StateVector::top(options.mode, program.chords());
        let state = evolve_tracked(program.rows(), top, budget, &mut track)?;
        let bottom = StateVector::top(Mode::A0, program.chords());
        state.single_loop_pairing(&bottom)?
    };
    Ok((count.checked_mul(multiplicity).ok_or(Error::Overflow)?, peak))
}

/// Upper-half statistics in a=0 mode.
pub fn evolution_stats(program: &MorseProgram, reduce: bool) -> Result<EvolutionStats> {
    program.checked()?;
    let reduced;
    let program = if reduce {
        reduced = boundary_reduce(program)?;
        &reduced.program
    } else {
        program
    };
    let (upper, middle, _) = program.split_halves()?;
    let mut row_state_sizes = Vec::new();
    let top = StateVector::top(Mode::A0, program.chords());
    let upper_state = evolve_tracked(upper, top, usize::MAX, |n| row_state_sizes.push(n))?;
    let middle_state = evolve(core::slice::from_ref(middle), upper_state.clone())?;
    Ok(EvolutionStats {
        surviving_diagram_weight: upper_state.weight()?,
        distinct_basis_states: upper_state.len(),
        middle_basis_states: middle_state.len(),
        tracked_endpoints: program.strands(),
        row_state_sizes,
    })
}

/// Flattened program used by the per-assignment paths.
struct Tracer {
    sites: Vec<Site>,
    partner: Vec<u8>,
    top: Vec<u8>,
    seen: Vec<bool>,
}

impl Tracer {
    fn new(program: &MorseProgram) -> Self {
        let top: Vec<u8> = (0..program.strands()).map(|k| (k ^ 1) as u8).collect();
        Self { sites: program.sites().collect(), partner: top.clone(), seen: vec![false; top.len()], top }
    }

    fn components(&mut self, choice: impl Fn(usize) -> bool) -> usize {
        self.partner.copy_from_slice(&self.top);
        let mut loops = 0;
        for (k, site) in self.sites.iter().enumerate() {
            let p = site.pos - 1;
            match (site.color, choice(k)) {
                (_, false) => sigma_in_place(&mut self.partner, p),
                (Color::Black, true) => loops += usize::from(cup_cap_in_place(&mut self.partner, p)),
                (Color::White, true) => {}
            }
        }
        loops + glue_raw(&self.partner, &self.top, &mut self.seen)
    }
}

/// Number of closed curves of one concrete drawing.
pub fn evaluate_assignment(program: &MorseProgram, assignment: &Assignment) -> Result<usize> {
    program.checked()?;
    let d = program.site_count();
    if assignment.len() != d {
        return Err(Error::AssignmentLength { expected: d, got: assignment.len() });
    }
    let mut tracer = Tracer::new(program);
    Ok(tracer.components(|k| assignment.choices[k]))
}

/// Validates `program` for exhaustive search and returns `D`.
///
/// The limit is capped at 63 so that assignment indices fit in a `u64`.
pub fn check_brute_limit(program: &MorseProgram, limit: usize) -> Result<usize> {
    program.checked()?;
    let d = program.site_count();
    if d > limit.min(63) {
        return Err(Error::LimitExceeded { requested: d, limit: limit.min(63) });
    }
    Ok(d)
}

/// Histogram over all `2^D` assignments.
pub fn brute_distribution(program: &MorseProgram, limit: usize) -> Result<ComponentDistribution> {
    let d = check_brute_limit(program, limit)?;
    brute_distribution_range(program, 0..1u64 << d)
}

/// Histogram over the assignments whose indices lie in `range`; partial
/// results over a partition of `0..2^D` merge to the full histogram.
pub fn brute_distribution_range(program: &MorseProgram, range: Range<u64>) -> Result<ComponentDistribution> {
    let d = check_brute_limit(program, 63)?;
    let end = range.end.min(1u64 << d);
    let mut tracer = Tracer::new(program);
    let mut counts = vec![0 as Count; program.chords() + program.site_count() + 2];
    for index in range.start..end {
        let c = tracer.components(|k| bit_of(index, d, k));
        counts[c] += 1;
    }
    let counts = counts.into_iter().enumerate().filter(|(_, v)| *v > 0).collect();
    Ok(ComponentDistribution { counts })
}

/// All single-curve assignments in ascending index order.
pub fn enumerate_solutions(program: &MorseProgram, limit: usize) -> Result<Solutions> {
    let d = check_brute_limit(program, limit)?;
    Ok(Solutions { tracer: Tracer::new(program), sites: d, next: 0, end: 1u64 << d })
}

/// Iterator returned by [`enumerate_solutions`].
pub struct Solutions {
    tracer: Tracer,
    sites: usize,
    next: u64,
    end: u64,
}

impl Solutions {
    /// Restricts the scan to indices in `range`.
    pub fn within(mut self, range: Range<u64>) -> Self {
        self.next = self.next.max(range.start);
        self.end = self.end.min(range.end);
        self
    }
}

impl Iterator for Solutions {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        let d = self.sites;
        while self.next < self.end {
            let index = self.next;
            self.next += 1;
            if self.tracer.components(|k| bit_of(index, d, k)) == 1 {
                return Some(Assignment::from_index(index, d));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::Pairing;

    #[test]
    fn hex_round_trip_and_padding() {
        let a = Assignment::new(vec![true, false, false, true]);
        assert_eq!(a.to_hex(), "9");
        assert_eq!(Assignment::from_hex("9", 4).unwrap(), a);
        let b = Assignment::from_index(0b1_0000_0001, 9);
        assert_eq!(b.to_hex(), "101");
        assert_eq!(Assignment::from_hex("0101", 9).unwrap(), b);
        assert_eq!(Assignment::from_hex("101", 9).unwrap().index(), Some(0x101));
        assert!(Assignment::from_hex("3ff", 9).is_err());
        assert!(Assignment::from_hex("xyz", 9).is_err());
        assert_eq!(Assignment::new(vec![]).to_hex(), "");
        assert_eq!(Assignment::from_index(0, 16).to_hex(), "0000");
    }

    #[test]
    fn single_and_three_loop_drawings() {
        let p = MorseProgram::diamond(1);
        // sites in order: B3, W2, W4, B3
        assert_eq!(evaluate_assignment(&p, &Assignment::new(vec![false; 4])).unwrap(), 1);
        let three = Assignment::new(vec![true, false, false, true]);
        assert_eq!(evaluate_assignment(&p, &three).unwrap(), 3);
        assert!(matches!(
            evaluate_assignment(&p, &Assignment::new(vec![false; 3])),
            Err(Error::AssignmentLength { expected: 4, got: 3 })
        ));
    }

    /// Hand expansion of `<∩1∩3∩5| B3`: σ3 on the cap (3,4) is absorbed and
    /// U3 closes a loop, so the a=0 state is just the top state.
    #[test]
    fn diamond_one_stats() {
        let stats = evolution_stats(&MorseProgram::diamond(1), false).unwrap();
        assert_eq!(stats.surviving_diagram_weight, 1);
        assert_eq!(stats.distinct_basis_states, 1);
        assert_eq!(stats.row_state_sizes, vec![1]);
        let exact = evolve(&[Row::black([3])], StateVector::top(Mode::Exact, 3)).unwrap();
        assert_eq!(exact.get(&Pairing::top(3)).unwrap().coeffs(), &[1, 1]);
        assert_eq!(exact.len(), 1);
    }

    #[test]
    fn empty_rows_leave_the_state_alone() {
        let s = StateVector::top(Mode::Exact, 3);
        assert_eq!(evolve(&[], s.clone()).unwrap(), s);
    }

    #[test]
    fn zero_row_program_is_top_glued_to_bottom() {
        let p = MorseProgram::new(8, vec![]);
        assert_eq!(component_polynomial(&p).unwrap(), LoopPoly::a_pow(4));
        assert_eq!(count_infinite(&p, &CountOptions::default()).unwrap(), 0);
        assert_eq!(count_infinite(&MorseProgram::new(2, vec![]), &CountOptions::default()).unwrap(), 1);
    }

    #[test]
    fn invalid_program_is_rejected() {
        let bad = MorseProgram::new(6, vec![Row::black([3, 4])]);
        assert!(matches!(component_polynomial(&bad), Err(Error::InvalidProgram(_))));
        assert!(matches!(count_infinite(&bad, &CountOptions::default()), Err(Error::InvalidProgram(_))));
        assert!(matches!(brute_distribution(&bad, 24), Err(Error::InvalidProgram(_))));
    }

    #[test]
    fn brute_limit() {
        let p = MorseProgram::diamond(3);
        assert_eq!(brute_distribution(&p, 24).unwrap_err(), Error::LimitExceeded { requested: 36, limit: 24 });
        assert!(enumerate_solutions(&p, 24).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let p = MorseProgram::diamond(2);
        assert!(matches!(component_polynomial_with_budget(&p, 3), Err(Error::BudgetExceeded { budget: 3, .. })));
        let opts = CountOptions { state_budget: 2, ..CountOptions::default() };
        assert!(matches!(count_infinite(&p, &opts), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn diamond_one_histogram_is_frozen() {
        // frozen from an independent trace of the dot-grid geometry over all 16 drawings
        let dist = brute_distribution(&MorseProgram::diamond(1), 24).unwrap();
        assert_eq!(dist.counts.into_iter().collect::<Vec<_>>(), vec![(1, 1), (2, 4), (3, 6), (4, 4), (5, 1)]);
    }

    #[test]
    fn split_requires_symmetry() {
        let p = MorseProgram::new(4, vec![Row::white([2]), Row::black([1])]);
        let opts = CountOptions { split: true, ..CountOptions::default() };
        assert_eq!(count_infinite(&p, &opts), Err(Error::NotPalindromic));
    }
}
