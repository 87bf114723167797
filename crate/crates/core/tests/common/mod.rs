#![allow(dead_code)]

use kolam_core::{Color, MorseProgram, Row};
use proptest::prelude::*;

/// A row of same-colored sites at pairwise disjoint positions.
fn arb_row(strands: usize) -> impl Strategy<Value = Row> {
    (any::<bool>(), proptest::collection::vec(any::<bool>(), strands - 1)).prop_map(|(black, picks)| {
        let mut positions = Vec::new();
        let mut next_free = 1;
        for (k, take) in picks.into_iter().enumerate() {
            let pos = k + 1;
            if take && pos >= next_free {
                positions.push(pos);
                next_free = pos + 2;
            }
        }
        Row::new(if black { Color::Black } else { Color::White }, positions)
    })
}

fn trim_to_sites(rows: Vec<Row>, max_sites: usize) -> Vec<Row> {
    let mut total = 0;
    rows.into_iter()
        .map(|row| {
            let keep = row.len().min(max_sites - total);
            total += keep;
            Row::new(row.color(), row.positions()[..keep].to_vec())
        })
        .collect()
}

/// Any valid program with at most `max_sites` sites.
pub fn arb_program(max_sites: usize) -> impl Strategy<Value = MorseProgram> {
    (1usize..=5).prop_flat_map(move |n| {
        let strands = 2 * n;
        proptest::collection::vec(arb_row(strands), 0..8)
            .prop_map(move |rows| MorseProgram::new(strands, trim_to_sites(rows, max_sites)))
    })
}

/// A valid up-down symmetric program with at most `max_sites` sites.
pub fn arb_symmetric_program(max_sites: usize) -> impl Strategy<Value = MorseProgram> {
    (1usize..=5).prop_flat_map(move |n| {
        let strands = 2 * n;
        (proptest::collection::vec(arb_row(strands), 0..4), arb_row(strands)).prop_map(move |(upper, middle)| {
            let middle = trim_to_sites(vec![middle], max_sites).pop().unwrap();
            let upper = trim_to_sites(upper, (max_sites - middle.len()) / 2);
            let mut rows = upper.clone();
            rows.push(middle);
            rows.extend(upper.into_iter().rev());
            MorseProgram::new(strands, rows)
        })
    })
}
