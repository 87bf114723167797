//! Morse link programs: strands closed by caps and cups, with rows of sites.
//!
//! Strands are numbered `1..=strand_count` from left to right. A site at
//! position `p` acts on strands `p` and `p + 1`. The top of the diagram is
//! the adjacent-pairs cap state and the bottom the matching cup state.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    /// Cross, or cup-and-cap.
    Black,
    /// Cross, or recoil (identity).
    White,
}

impl Color {
    pub fn letter(self) -> char {
        match self {
            Color::Black => 'B',
            Color::White => 'W',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub color: Color,
    pub pos: usize,
}

/// One horizontal layer of same-colored sites, kept in ascending position order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Row {
    color: Color,
    positions: Vec<usize>,
}

impl Row {
    pub fn new(color: Color, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut positions: Vec<usize> = positions.into_iter().collect();
        positions.sort_unstable();
        Self { color, positions }
    }

    pub fn black(positions: impl IntoIterator<Item = usize>) -> Self {
        Self::new(Color::Black, positions)
    }

    pub fn white(positions: impl IntoIterator<Item = usize>) -> Self {
        Self::new(Color::White, positions)
    }

    pub fn color(&self) -> Color {
        self.color
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        self.positions.iter().map(move |&pos| Site { color: self.color, pos })
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.color.letter())?;
        for (k, p) in self.positions.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// A reason a [`MorseProgram`] is malformed. Rows are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    NoStrands,
    OddStrandCount(usize),
    TooManyStrands(usize),
    OutOfRange { row: usize, pos: usize },
    OverlappingPair { row: usize, first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoStrands => f.write_str("strand count must be positive"),
            Violation::OddStrandCount(n) => write!(f, "strand count {n} is odd"),
            Violation::TooManyStrands(n) => write!(f, "strand count {n} is too large"),
            Violation::OutOfRange { row, pos } => write!(f, "row {row}: site {pos} out of range"),
            Violation::OverlappingPair { row, first, second } => {
                write!(f, "row {row}: overlapping pair at sites {first} and {second}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorseProgram {
    strands: usize,
    rows: Vec<Row>,
    diamond: Option<usize>,
}

impl MorseProgram {
    /// Builds a program without checking it; see [`validate`](Self::validate).
    pub fn new(strands: usize, rows: Vec<Row>) -> Self {
        Self { strands, rows, diamond: None }
    }

    /// Attaches the diamond parameter `N` as metadata.
    pub fn with_diamond(mut self, n: Option<usize>) -> Self {
        self.diamond = n;
        self
    }

    /// The program of the `(1-3-…-(2N+1)-…-3-1)` diamond grid.
    ///
    /// There are `4N + 2` strands and `4N - 1` rows of sizes
    /// `1, 2, …, 2N, …, 2, 1`, black on odd rows and white on even rows. Each
    /// row is centred on the midline: the row of size `s` has sites at
    /// `2N + 2 - s, 2N + 4 - s, …`.
    pub fn diamond(n: usize) -> Self {
        assert!(n >= 1, "diamond parameter must be positive");
        let sizes = (1..=2 * n).chain((1..2 * n).rev());
        let rows = sizes
            .map(|s| {
                let color = if s % 2 == 1 { Color::Black } else { Color::White };
                Row::new(color, (0..s).map(|j| 2 * n + 2 - s + 2 * j))
            })
            .collect();
        Self { strands: 4 * n + 2, rows, diamond: Some(n) }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn chords(&self) -> usize {
        self.strands / 2
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn diamond_parameter(&self) -> Option<usize> {
        self.diamond
    }

    /// `D`, the total number of sites.
    pub fn site_count(&self) -> usize {
        self.rows.iter().map(Row::len).sum()
    }

    /// Sites in program order: rows top to bottom, positions left to right.
    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        self.rows.iter().flat_map(Row::sites)
    }

    pub fn validate(&self) -> core::result::Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        if self.strands == 0 {
            violations.push(Violation::NoStrands);
        } else if !self.strands.is_multiple_of(2) {
            violations.push(Violation::OddStrandCount(self.strands));
        }
        if self.strands > crate::pairing::MAX_ENDPOINTS {
            violations.push(Violation::TooManyStrands(self.strands));
        }
        for (r, row) in self.rows.iter().enumerate() {
            for &pos in row.positions() {
                if pos == 0 || pos >= self.strands {
                    violations.push(Violation::OutOfRange { row: r + 1, pos });
                }
            }
            for w in row.positions().windows(2) {
                if w[1] < w[0] + 2 {
                    violations.push(Violation::OverlappingPair { row: r + 1, first: w[0], second: w[1] });
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    pub(crate) fn checked(&self) -> Result<()> {
        self.validate().map_err(Error::InvalidProgram)
    }

    /// Whether the row sequence reads the same upwards (odd length required).
    pub fn is_palindromic(&self) -> bool {
        self.rows.len() % 2 == 1 && self.rows.iter().eq(self.rows.iter().rev())
    }

    /// `(upper rows, middle row, lower rows)` of an up-down symmetric program.
    pub fn split_halves(&self) -> Result<(&[Row], &Row, &[Row])> {
        if !self.is_palindromic() {
            return Err(Error::NotPalindromic);
        }
        let mid = self.rows.len() / 2;
        Ok((&self.rows[..mid], &self.rows[mid], &self.rows[mid + 1..]))
    }

    /// Left-right reflection: a site at `p` moves to `strands - p`.
    pub fn mirror(&self) -> Self {
        let rows =
            self.rows.iter().map(|row| Row::new(row.color, row.positions.iter().map(|&p| self.strands - p))).collect();
        Self { strands: self.strands, rows, diamond: self.diamond }
    }

    /// Up-down reflection: the rows in reverse order.
    pub fn reversed(&self) -> Self {
        Self { strands: self.strands, rows: self.rows.iter().rev().cloned().collect(), diamond: self.diamond }
    }
}

impl fmt::Display for MorseProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "strands {}:", self.strands)?;
        for row in &self.rows {
            write!(f, " {row}")?;
        }
        Ok(())
    }
}

/// A site whose choice is fixed in every single-loop drawing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ForcedSite {
    /// 0-based index of the site in the original program order.
    pub index: usize,
    /// 1-based row in the original program.
    pub row: usize,
    pub site: Site,
    /// The forced choice; always `false` (cross) for the rules applied here.
    pub choice: bool,
}

/// A smaller program with the same number of single-loop drawings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedProgram {
    pub program: MorseProgram,
    /// Original strand numbers that were removed.
    pub removed_strands: Vec<usize>,
    pub forced_sites: Vec<ForcedSite>,
    /// For each site of `program` (in program order), its index in the
    /// original program order.
    pub site_origin: Vec<usize>,
    /// Original site count.
    pub original_sites: usize,
    /// Single-loop drawings of the original per single-loop drawing of the
    /// reduced program.
    pub multiplicity: u128,
}

impl ReducedProgram {
    /// Expands choices on the reduced sites into a full assignment of the
    /// original program, filling in the forced choices.
    pub fn expand_choices(&self, reduced: &[bool]) -> Result<Vec<bool>> {
        if reduced.len() != self.site_origin.len() {
            return Err(Error::AssignmentLength { expected: self.site_origin.len(), got: reduced.len() });
        }
        let mut full = vec![false; self.original_sites];
        for forced in &self.forced_sites {
            full[forced.index] = forced.choice;
        }
        for (&origin, &choice) in self.site_origin.iter().zip(reduced) {
            full[origin] = choice;
        }
        Ok(full)
    }
}

#[derive(Clone)]
struct WorkSite {
    pos: usize,
    origin: usize,
}

/// Removes choices that cannot appear in a single-loop drawing.
///
/// Two rules are applied one at a time until neither fires:
///
/// * apex: a black site sitting on a cap pair `(p, p+1)` (odd `p`) that no
///   earlier row touches closes a loop when it picks cup-and-cap, so it must
///   cross, and a crossing on a cap is a no-op. The same holds for a black
///   site on a cup pair that no later row touches.
/// * boundary pair: a strand pair `(2k-1, 2k)` where one strand is never
///   touched and the other only by a single white site isolates a loop when
///   that site recoils. Crossing instead just routes the neighbouring strand
///   around the pair, so the pair and the site are dropped and the strands to
///   the right renumbered.
///
/// Both rules keep the number of single-loop drawings; the polynomial in
/// `a` is otherwise not preserved. Empty rows are kept so that row indices
/// and up-down symmetry survive.
pub fn boundary_reduce(program: &MorseProgram) -> Result<ReducedProgram> {
    program.checked()?;
    let mut strands = program.strands();
    let mut strand_origin: Vec<usize> = (1..=strands).collect();
    let mut forced = Vec::new();
    let mut origin = 0;
    let mut rows: Vec<(Color, Vec<WorkSite>)> = program
        .rows()
        .iter()
        .map(|row| {
            let sites = row
                .positions()
                .iter()
                .map(|&pos| {
                    origin += 1;
                    WorkSite { pos, origin: origin - 1 }
                })
                .collect();
            (row.color(), sites)
        })
        .collect();
    let original_rows: Vec<usize> =
        program.rows().iter().enumerate().flat_map(|(r, row)| core::iter::repeat_n(r + 1, row.len())).collect();
    let original_sites: Vec<Site> = program.sites().collect();

    let touches = |rows: &[(Color, Vec<WorkSite>)], r: usize, s: usize| -> bool {
        rows[r].1.iter().any(|w| w.pos == s || w.pos + 1 == s)
    };

    loop {
        // apex rule
        let mut apex = None;
        'search: for r in 0..rows.len() {
            if rows[r].0 != Color::Black {
                continue;
            }
            for (k, w) in rows[r].1.iter().enumerate() {
                if w.pos % 2 == 0 {
                    continue;
                }
                let free_above = (0..r).all(|q| !touches(&rows, q, w.pos) && !touches(&rows, q, w.pos + 1));
                let free_below =
                    (r + 1..rows.len()).all(|q| !touches(&rows, q, w.pos) && !touches(&rows, q, w.pos + 1));
                if free_above || free_below {
                    apex = Some((r, k));
                    break 'search;
                }
            }
        }
        if let Some((r, k)) = apex {
            let w = rows[r].1.remove(k);
            forced.push(w.origin);
            continue;
        }

        // boundary pair rule
        let mut boundary = None;
        'pairs: for k in 1..=strands / 2 {
            let (left, right) = (2 * k - 1, 2 * k);
            let touching = |s: usize| -> Vec<(usize, usize)> {
                let mut out = Vec::new();
                for (r, (_, sites)) in rows.iter().enumerate() {
                    for (j, w) in sites.iter().enumerate() {
                        if w.pos == s || w.pos + 1 == s {
                            out.push((r, j));
                        }
                    }
                }
                out
            };
            let (tl, tr) = (touching(left), touching(right));
            for (idle, busy, site_pos) in [(&tl, &tr, right), (&tr, &tl, left.wrapping_sub(1))] {
                if !idle.is_empty() || busy.len() != 1 {
                    continue;
                }
                let (r, j) = busy[0];
                if rows[r].0 == Color::White && rows[r].1[j].pos == site_pos {
                    boundary = Some((left, r, j));
                    break 'pairs;
                }
            }
        }
        if let Some((left, r, j)) = boundary {
            let w = rows[r].1.remove(j);
            forced.push(w.origin);
            strand_origin.drain(left - 1..left + 1);
            strands -= 2;
            for (_, sites) in rows.iter_mut() {
                for w in sites.iter_mut() {
                    if w.pos > left {
                        w.pos -= 2;
                    }
                }
            }
            continue;
        }
        break;
    }

    let removed_strands: Vec<usize> = (1..=program.strands()).filter(|s| !strand_origin.contains(s)).collect();
    forced.sort_unstable();
    let forced_sites = forced
        .iter()
        .map(|&index| ForcedSite { index, row: original_rows[index], site: original_sites[index], choice: false })
        .collect();
    let site_origin = rows.iter().flat_map(|(_, sites)| sites.iter().map(|w| w.origin)).collect();
    let reduced_rows =
        rows.into_iter().map(|(color, sites)| Row::new(color, sites.into_iter().map(|w| w.pos))).collect();
    Ok(ReducedProgram {
        program: MorseProgram { strands, rows: reduced_rows, diamond: program.diamond },
        removed_strands,
        forced_sites,
        site_origin,
        original_sites: program.site_count(),
        multiplicity: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows_of(p: &MorseProgram) -> Vec<(Color, Vec<usize>)> {
        p.rows().iter().map(|r| (r.color(), r.positions().to_vec())).collect()
    }

    #[test]
    fn diamond_one() {
        let p = MorseProgram::diamond(1);
        assert_eq!(p.strands(), 6);
        assert_eq!(rows_of(&p), vec![(Color::Black, vec![3]), (Color::White, vec![2, 4]), (Color::Black, vec![3])]);
        assert_eq!(p.site_count(), 4);
    }

    #[test]
    fn diamond_two() {
        let p = MorseProgram::diamond(2);
        assert_eq!(p.strands(), 10);
        assert_eq!(
            rows_of(&p),
            vec![
                (Color::Black, vec![5]),
                (Color::White, vec![4, 6]),
                (Color::Black, vec![3, 5, 7]),
                (Color::White, vec![2, 4, 6, 8]),
                (Color::Black, vec![3, 5, 7]),
                (Color::White, vec![4, 6]),
                (Color::Black, vec![5]),
            ]
        );
        assert_eq!(p.site_count(), 16);
    }

    #[test]
    fn diamond_sizes() {
        for n in 1..=6 {
            let p = MorseProgram::diamond(n);
            assert_eq!(p.site_count(), 4 * n * n);
            assert_eq!(p.strands(), 4 * n + 2);
            assert_eq!(p.rows().len(), 4 * n - 1);
            assert!(p.is_palindromic());
            assert_eq!(p.validate(), Ok(()));
            assert_eq!(p.mirror(), p);
            let colors: Vec<Color> = p.rows().iter().map(Row::color).collect();
            assert_eq!(colors.first(), Some(&Color::Black));
            assert_eq!(colors.last(), Some(&Color::Black));
            assert!(colors.windows(2).all(|w| w[0] != w[1]));
        }
        assert_eq!(MorseProgram::diamond(3).strands(), 14);
        assert_eq!(MorseProgram::diamond(3).site_count(), 36);
    }

    #[test]
    fn validate_reports_violations() {
        let overlapping = MorseProgram::new(6, vec![Row::black([3, 4])]);
        let errs = overlapping.validate().unwrap_err();
        assert_eq!(errs, vec![Violation::OverlappingPair { row: 1, first: 3, second: 4 }]);
        assert!(alloc::format!("{}", errs[0]).contains("overlapping pair"));

        let out_of_range = MorseProgram::new(6, vec![Row::white([2]), Row::white([6])]);
        let errs = out_of_range.validate().unwrap_err();
        assert_eq!(errs, vec![Violation::OutOfRange { row: 2, pos: 6 }]);
        assert!(alloc::format!("{}", errs[0]).contains("out of range"));

        assert_eq!(MorseProgram::new(5, vec![]).validate(), Err(vec![Violation::OddStrandCount(5)]));
        assert_eq!(MorseProgram::new(0, vec![]).validate(), Err(vec![Violation::NoStrands]));
        assert_eq!(MorseProgram::new(4, vec![Row::black([0])]).validate().unwrap_err().len(), 1);
    }

    #[test]
    fn split() {
        let p = MorseProgram::diamond(2);
        let (upper, middle, lower) = p.split_halves().unwrap();
        assert_eq!(upper, &[Row::black([5]), Row::white([4, 6]), Row::black([3, 5, 7])]);
        assert_eq!(middle, &Row::white([2, 4, 6, 8]));
        assert!(lower.iter().eq(upper.iter().rev()));

        let p = MorseProgram::diamond(1);
        let (upper, middle, _) = p.split_halves().unwrap();
        assert_eq!(upper, &[Row::black([3])]);
        assert_eq!(middle, &Row::white([2, 4]));

        let lopsided = MorseProgram::new(6, vec![Row::black([3]), Row::white([2]), Row::black([1])]);
        assert_eq!(lopsided.split_halves().unwrap_err(), Error::NotPalindromic);
        let even = MorseProgram::new(6, vec![Row::black([3]), Row::black([3])]);
        assert_eq!(even.split_halves().unwrap_err(), Error::NotPalindromic);
    }

    #[test]
    fn mirror_single_row() {
        let p = MorseProgram::new(6, vec![Row::white([2])]);
        assert_eq!(p.mirror().rows(), &[Row::white([4])]);
    }

    #[test]
    fn reduce_diamond_two() {
        let reduced = boundary_reduce(&MorseProgram::diamond(2)).unwrap();
        let p = &reduced.program;
        assert_eq!(p.strands(), 6);
        assert_eq!(reduced.removed_strands, vec![1, 2, 9, 10]);
        assert_eq!(
            rows_of(p),
            vec![
                (Color::Black, vec![]),
                (Color::White, vec![2, 4]),
                (Color::Black, vec![1, 3, 5]),
                (Color::White, vec![2, 4]),
                (Color::Black, vec![1, 3, 5]),
                (Color::White, vec![2, 4]),
                (Color::Black, vec![]),
            ]
        );
        let (upper, _, _) = p.split_halves().unwrap();
        assert_eq!(upper.iter().map(Row::len).sum::<usize>(), 5);
        let forced: Vec<(usize, Site)> = reduced.forced_sites.iter().map(|f| (f.row, f.site)).collect();
        assert_eq!(
            forced,
            vec![
                (1, Site { color: Color::Black, pos: 5 }),
                (4, Site { color: Color::White, pos: 2 }),
                (4, Site { color: Color::White, pos: 8 }),
                (7, Site { color: Color::Black, pos: 5 }),
            ]
        );
        assert_eq!(reduced.site_origin.len(), 12);
        assert_eq!(reduced.multiplicity, 1);
    }

    #[test]
    fn reduce_diamond_one_keeps_the_rows() {
        let reduced = boundary_reduce(&MorseProgram::diamond(1)).unwrap();
        assert_eq!(reduced.program.strands(), 2);
        assert_eq!(reduced.program.rows().len(), 3);
        assert_eq!(reduced.program.site_count(), 0);
        assert_eq!(reduced.program.rows()[1].color(), Color::White);
        assert!(reduced.program.is_palindromic());
    }

    #[test]
    fn reduce_diamond_three() {
        let reduced = boundary_reduce(&MorseProgram::diamond(3)).unwrap();
        assert_eq!(reduced.program.strands(), 10);
        assert_eq!(reduced.removed_strands, vec![1, 2, 13, 14]);
        assert_eq!(reduced.program.site_count(), 36 - 4);
        assert!(reduced.program.is_palindromic());
    }

    #[test]
    fn expand_choices_fills_forced_sites() {
        let reduced = boundary_reduce(&MorseProgram::diamond(1)).unwrap();
        assert_eq!(reduced.expand_choices(&[]).unwrap(), vec![false; 4]);
        assert!(reduced.expand_choices(&[true]).is_err());
    }
}
