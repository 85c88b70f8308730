//! Winner matrices over a `(chi, k)` grid.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::bounds::{best_bound, BoundId, BoundParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSpec {
    pub chi: RangeInclusive<u64>,
    pub k: RangeInclusive<u64>,
    pub catalog: Vec<BoundId>,
}

pub const TABLE1_CATALOG: [BoundId; 4] = [BoundId::Sys, BoundId::Bb1, BoundId::Bb2, BoundId::Bb3];

pub const TABLE2_CATALOG: [BoundId; 7] = [
    BoundId::Sys,
    BoundId::Bb1,
    BoundId::Bb2,
    BoundId::Bb3,
    BoundId::Mix1,
    BoundId::Mix2,
    BoundId::Mix3Printed,
];

impl TableSpec {
    pub fn table1() -> Self {
        Self {
            chi: 3..=15,
            k: 2..=10,
            catalog: TABLE1_CATALOG.to_vec(),
        }
    }

    pub fn table2() -> Self {
        Self {
            catalog: TABLE2_CATALOG.to_vec(),
            ..Self::table1()
        }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "table1" => Some(Self::table1()),
            "table2" => Some(Self::table2()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub chi: u64,
    pub k: u64,
    pub winner: BoundId,
    pub label: &'static str,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WinnerTable {
    pub chis: Vec<u64>,
    pub ks: Vec<u64>,
    pub catalog: Vec<BoundId>,
    /// Row per `chi`, column per `k`; `None` where no bound applies.
    pub cells: Vec<Vec<Option<Cell>>>,
}

pub fn winner_table(spec: &TableSpec) -> WinnerTable {
    let chis: Vec<u64> = spec.chi.clone().collect();
    let ks: Vec<u64> = spec.k.clone().collect();
    let cells = chis
        .iter()
        .map(|&chi| {
            ks.iter()
                .map(|&k| {
                    best_bound(BoundParams::new(chi, k), &spec.catalog).map(|(id, v)| Cell {
                        chi,
                        k,
                        winner: id,
                        label: id.label(),
                        value: v.raw.to_string(),
                    })
                })
                .collect()
        })
        .collect();
    WinnerTable {
        chis,
        ks,
        catalog: spec.catalog.clone(),
        cells,
    }
}

impl WinnerTable {
    fn label(cell: &Option<Cell>) -> &'static str {
        cell.as_ref().map_or("-", |c| c.label)
    }

    /// Header `chi,k=2,...`, then one row per `chi` of winner labels.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("chi");
        for k in &self.ks {
            write!(out, ",k={k}").unwrap();
        }
        out.push('\n');
        for (chi, row) in self.chis.iter().zip(&self.cells) {
            write!(out, "{chi}").unwrap();
            for c in row {
                write!(out, ",{}", Self::label(c)).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::from("|        |");
        for k in &self.ks {
            write!(out, " k = {k} |").unwrap();
        }
        out.push_str("\n|---|");
        for _ in &self.ks {
            out.push_str("---|");
        }
        out.push('\n');
        for (chi, row) in self.chis.iter().zip(&self.cells) {
            write!(out, "| χ = {chi} |").unwrap();
            for c in row {
                write!(out, " {} |", Self::label(c)).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Space-aligned plain text.
    pub fn to_text(&self) -> String {
        let mut out = format!("{:>6}", "chi\\k");
        for k in &self.ks {
            write!(out, " {k:>6}").unwrap();
        }
        out.push('\n');
        for (chi, row) in self.chis.iter().zip(&self.cells) {
            write!(out, "{chi:>6}").unwrap();
            for c in row {
                write!(out, " {:>6}", Self::label(c)).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Parses a winner matrix in the CSV layout written by
/// [`WinnerTable::to_csv`] into `(chi, k, label)` triples.
pub fn parse_table_csv(text: &str) -> Result<Vec<(u64, u64, String)>, csv::Error> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let ks: Vec<u64> = reader
        .headers()?
        .iter()
        .skip(1)
        .map(|h| h.trim_start_matches("k=").parse().unwrap_or(0))
        .collect();
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record?;
        let chi: u64 = record.get(0).unwrap_or("0").parse().unwrap_or(0);
        for (k, label) in ks.iter().zip(record.iter().skip(1)) {
            out.push((chi, *k, label.to_string()));
        }
    }
    Ok(out)
}
